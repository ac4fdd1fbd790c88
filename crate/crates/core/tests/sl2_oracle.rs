use afk::matrix::Matrix;
use afk::qlaurent::LaurentPoly;
use afk::sl2check::{build_sl2, hopf_commutator_defect, rdc10_check, tensor_f_power};

fn at_one(m: &Matrix) -> Matrix {
    m.map(|x| LaurentPoly::constant(x.eval_at_one()))
}

/// Classical `F` on `V(n)`: `F v_k = (k+1) v_{k+1}`.
fn classical_f(n: usize) -> Matrix {
    let mut f = Matrix::zeros(n + 1, n + 1);
    for k in 0..n {
        f.set(k + 1, k, LaurentPoly::from_int(k as i64 + 1));
    }
    f
}

#[test]
fn hopf_compatibility() {
    for a in 0..=3 {
        for b in 0..=3 {
            assert!(hopf_commutator_defect(&build_sl2(a), &build_sl2(b)).is_zero(), "V({a}) (x) V({b})");
        }
    }
}

#[test]
fn coproduct_at_q_one_is_classical() {
    for a in 0..=3usize {
        for b in 0..=3usize {
            let classical = &classical_f(a).kron(&Matrix::identity(b + 1)) + &Matrix::identity(a + 1).kron(&classical_f(b));
            for p in 1..=4 {
                let q = tensor_f_power(&build_sl2(a as u32), &build_sl2(b as u32), p);
                assert_eq!(at_one(&q), classical.pow(p), "V({a}) (x) V({b}), p = {p}");
            }
        }
    }
}

fn image_of_top(m: &Matrix) -> Vec<(usize, LaurentPoly)> {
    (0..m.rows()).filter(|&r| !m.get(r, 0).is_zero()).map(|r| (r, m.get(r, 0).clone())).collect()
}

#[test]
fn small_tensor_powers() {
    let img = image_of_top(&tensor_f_power(&build_sl2(0), &build_sl2(1), 1));
    assert_eq!(img, vec![(1, LaurentPoly::one())]);
    let img = image_of_top(&tensor_f_power(&build_sl2(1), &build_sl2(1), 2));
    assert_eq!(img.len(), 1);
    assert_eq!(img[0].0, 3);
    let img = image_of_top(&tensor_f_power(&build_sl2(1), &build_sl2(2), 3));
    assert_eq!(img.len(), 1);
    assert_eq!(img[0].0, 5);
}

#[test]
fn coefficient_identity_sweep() {
    for n in 0..=6 {
        for s in [2, 3] {
            assert!(rdc10_check(n, s).verified, "n = {n}, string of length {s}");
        }
    }
}
