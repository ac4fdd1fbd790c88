//! Independent oracles: root data rebuilt from the Euclidean realizations of
//! the classical root systems, and the basis weights of the natural module
//! written out in epsilon coordinates.

use afk::natmod::build_natural;
use afk::rootdata::{make_cartan, Family, FiniteWeight, FIXTURE_TYPES};

type Vector = Vec<i64>;
/// family, rank, marks, comarks, d
type FixtureRow = (Family, usize, &'static [i64], &'static [i64], &'static [i64]);

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(n: usize, k: usize) -> Vector {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

fn lin(terms: &[(i64, &Vector)]) -> Vector {
    let n = terms[0].1.len();
    (0..n).map(|k| terms.iter().map(|(c, v)| c * v[k]).sum()).collect()
}

/// Ambient dimension, simple roots alpha_1..alpha_l, highest root.
fn euclidean(family: Family, l: usize) -> (usize, Vec<Vector>, Vector) {
    let n = if family == Family::A { l + 1 } else { l };
    let e = |k: usize| unit(n, k - 1);
    let mut simple: Vec<Vector> = (1..l).map(|i| lin(&[(1, &e(i)), (-1, &e(i + 1))])).collect();
    let theta = match family {
        Family::A => {
            simple.push(lin(&[(1, &e(l)), (-1, &e(l + 1))]));
            lin(&[(1, &e(1)), (-1, &e(l + 1))])
        }
        Family::B => {
            simple.push(e(l));
            lin(&[(1, &e(1)), (1, &e(2))])
        }
        Family::C => {
            simple.push(lin(&[(2, &e(l))]));
            lin(&[(2, &e(1))])
        }
        Family::D => {
            simple.push(lin(&[(1, &e(l - 1)), (1, &e(l))]));
            lin(&[(1, &e(1)), (1, &e(2))])
        }
    };
    (n, simple, theta)
}

/// `2 (x, a) / (a, a)`, asserted integral.
fn coroot_pairing(x: &[i64], a: &[i64]) -> i64 {
    let num = 2 * dot(x, a);
    let den = dot(a, a);
    assert_eq!(num % den, 0);
    num / den
}

#[test]
fn cartan_matrix_matches_euclidean_realization() {
    for (f, l) in FIXTURE_TYPES {
        let c = make_cartan(f, l).unwrap();
        let (_, simple, theta) = euclidean(f, l);
        // affine simple roots, finite parts: alpha_0 = -theta
        let neg_theta: Vector = theta.iter().map(|x| -x).collect();
        let roots: Vec<&Vector> = std::iter::once(&neg_theta).chain(simple.iter()).collect();
        for i in 0..=l {
            for j in 0..=l {
                assert_eq!(c.a(i, j), coroot_pairing(roots[j], roots[i]), "{f}{l} a[{i}][{j}]");
            }
            for j in 0..=l {
                // d proportional to squared lengths
                assert_eq!(c.d[i] * dot(roots[j], roots[j]), c.d[j] * dot(roots[i], roots[i]), "{f}{l} d");
            }
        }
        // theta = sum a_i alpha_i and theta^vee = sum a_i^vee alpha_i^vee
        let sum = (1..=l).fold(vec![0; theta.len()], |acc, i| lin(&[(1, &acc), (c.marks[i], &simple[i - 1])]));
        assert_eq!(sum, theta, "{f}{l} marks");
        let scale = |v: &Vector| dot(v, v);
        // coroot of a root a is 2a/(a,a); compare 2 theta/(theta,theta) * L with sum a_i^vee 2 alpha_i/(alpha_i,alpha_i) * L
        let big_l: i64 = simple.iter().map(scale).chain([scale(&theta)]).product();
        let lhs: Vector = theta.iter().map(|x| 2 * x * big_l / scale(&theta)).collect();
        let rhs = (1..=l).fold(vec![0; theta.len()], |acc, i| {
            let a = &simple[i - 1];
            let v: Vector = a.iter().map(|x| 2 * x * big_l / scale(a)).collect();
            lin(&[(1, &acc), (c.comarks[i], &v)])
        });
        assert_eq!(lhs, rhs, "{f}{l} comarks");
    }
}

#[test]
fn fixture_table() {
    let table: [FixtureRow; 11] = [
        (Family::A, 1, &[1, 1], &[1, 1], &[1, 1]),
        (Family::A, 2, &[1, 1, 1], &[1, 1, 1], &[1, 1, 1]),
        (Family::A, 3, &[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]),
        (Family::A, 4, &[1, 1, 1, 1, 1], &[1, 1, 1, 1, 1], &[1, 1, 1, 1, 1]),
        (Family::B, 3, &[1, 1, 2, 2], &[1, 1, 2, 1], &[2, 2, 2, 1]),
        (Family::B, 4, &[1, 1, 2, 2, 2], &[1, 1, 2, 2, 1], &[2, 2, 2, 2, 1]),
        (Family::C, 2, &[1, 2, 1], &[1, 1, 1], &[2, 1, 2]),
        (Family::C, 3, &[1, 2, 2, 1], &[1, 1, 1, 1], &[2, 1, 1, 2]),
        (Family::C, 4, &[1, 2, 2, 2, 1], &[1, 1, 1, 1, 1], &[2, 1, 1, 1, 2]),
        (Family::D, 4, &[1, 1, 2, 1, 1], &[1, 1, 2, 1, 1], &[1, 1, 1, 1, 1]),
        (Family::D, 5, &[1, 1, 2, 2, 1, 1], &[1, 1, 2, 2, 1, 1], &[1, 1, 1, 1, 1, 1]),
    ];
    for (f, l, marks, comarks, d) in table {
        let c = make_cartan(f, l).unwrap();
        assert_eq!(c.marks, marks, "{f}{l}");
        assert_eq!(c.comarks, comarks, "{f}{l}");
        assert_eq!(c.d, d, "{f}{l}");
    }
}

/// Signed epsilon index: `+k` is `eps_k`, `-k` is `-eps_k`, 0 is the zero weight.
fn natural_basis(f: Family, l: usize) -> Vec<i64> {
    let l = l as i64;
    match f {
        Family::A => std::iter::once(1).chain((1..=l).map(|j| l + 2 - j)).collect(),
        Family::C => std::iter::once(1).chain((1..=l).map(|j| -j)).chain((1..l).map(|j| l - j + 1)).collect(),
        Family::B => std::iter::once(1)
            .chain((1..l).map(|j| -(j + 1)))
            .chain([0])
            .chain((0..=l - 2).map(|j| l - j))
            .chain([-1])
            .collect(),
        Family::D => std::iter::once(1)
            .chain((1..l).map(|j| -(j + 1)))
            .chain([l])
            .chain((1..=l - 2).map(|j| l - j))
            .chain([-1])
            .collect(),
    }
}

fn eps_to_varpi(f: Family, l: usize, signed: i64) -> FiniteWeight {
    let (n, simple, _) = euclidean(f, l);
    let mut x = vec![0; n];
    if signed != 0 {
        x[signed.unsigned_abs() as usize - 1] = signed.signum();
    }
    FiniteWeight::new(simple.iter().map(|a| coroot_pairing(&x, a)).collect())
}

#[test]
fn natural_basis_weights() {
    for (f, l) in FIXTURE_TYPES {
        let m = build_natural(&make_cartan(f, l).unwrap()).unwrap();
        let expected: Vec<FiniteWeight> = natural_basis(f, l).into_iter().map(|s| eps_to_varpi(f, l, s)).collect();
        assert_eq!(m.weights, expected, "{f}{l}");
        assert_eq!(m.weights[0], FiniteWeight::fundamental(l, 1));
    }
}

#[test]
fn natural_dimension_and_edge_counts() {
    for (f, l) in FIXTURE_TYPES {
        let m = build_natural(&make_cartan(f, l).unwrap()).unwrap();
        let dim = match f {
            Family::A => l + 1,
            Family::B => 2 * l + 1,
            Family::C | Family::D => 2 * l,
        };
        let edges = match f {
            Family::A => l + 1,
            Family::C => 2 * l,
            Family::B | Family::D => 2 * l + 2,
        };
        assert_eq!(m.dim(), dim, "{f}{l}");
        let raising: usize = m.e.iter().map(|x| x.nonzero().count()).sum();
        let lowering: usize = m.f.iter().map(|x| x.nonzero().count()).sum();
        assert_eq!((raising, lowering), (edges, edges), "{f}{l}");
    }
}
