//! The aggregated self-test. The report is a deterministic function of the
//! configuration: no timings, fixed iteration order, one seeded generator.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::criteria::evaluate_natural;
use crate::crystal::{crystal_graph, lambda_dominant_count};
use crate::filtration::{chain, chain_summands, decompose_quotient, lambda_sweep, omega_lambda};
use crate::matrix::Matrix;
use crate::natmod::{
    affine_nilpotency_violations, build_natural, central_element_matrix, character_is_weyl_invariant,
    degree_bound_violations, double_definition_holds, k_of_natural, k_star_of_natural, n_closed_form, n_values,
    nilpotency_violations, verify_relations, NatModule,
};
use crate::qlaurent::{qbinom, LaurentPoly};
use crate::rootdata::{is_dominant, make_cartan, AffineWeight, CartanData, FiniteWeight, FIXTURE_TYPES};
use crate::sl2check::rdc10_check;

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub samples: usize,
    pub seed: u64,
    pub corrupt: bool,
}

#[derive(Clone, Debug)]
pub struct SelftestItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub items: Vec<SelftestItem>,
    pub passed: bool,
    pub text: String,
}

fn item(name: impl Into<String>, failures: Vec<String>, ok_detail: impl Into<String>) -> SelftestItem {
    let passed = failures.is_empty();
    let detail = if passed {
        ok_detail.into()
    } else {
        let shown: Vec<_> = failures.iter().take(3).cloned().collect();
        format!("{} failure(s): {}", failures.len(), shown.join("; "))
    };
    SelftestItem { name: name.into(), passed, detail }
}

pub fn random_laurent<R: Rng>(rng: &mut R) -> LaurentPoly {
    let terms = rng.gen_range(0..=4);
    LaurentPoly::from_terms((0..terms).map(|_| {
        let e = rng.gen_range(-6..=6);
        let num = rng.gen_range(-20..=20);
        let den = rng.gen_range(1..=20) * if rng.gen_bool(0.5) { 1 } else { -1 };
        (e, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }))
}

fn qcombinatorics(samples: usize, rng: &mut ChaCha8Rng) -> Vec<SelftestItem> {
    let mut out = Vec::new();

    let mut fails = Vec::new();
    for d in 1..=3 {
        for m in 0..=8 {
            for r in 0..=m {
                let b = qbinom(m, r, d).expect("r <= m");
                if b.bar() != b {
                    fails.push(format!("[{m} {r}]_q^{d}"));
                }
            }
        }
    }
    out.push(item("q-binomial palindromic", fails, "0<=r<=m<=8, d in 1..=3"));

    let mut fails = Vec::new();
    for m in 0..=10u32 {
        let mut classical = BigInt::from(1);
        for r in 0..=m {
            let at_one = qbinom(m, r, 1).expect("r <= m").eval_at_one();
            if at_one != BigRational::from_integer(classical.clone()) {
                fails.push(format!("[{m} {r}] at q=1"));
            }
            classical = classical * BigInt::from(m - r) / BigInt::from(r + 1);
        }
    }
    out.push(item("q-binomial at q=1", fails, "0<=r<=m<=10"));

    let mut fails = Vec::new();
    for m in 2..=8u32 {
        for r in 1..m {
            let lhs = qbinom(m, r, 1).expect("r <= m");
            let rhs = qbinom(m - 1, r, 1).expect("r <= m-1").shift(i64::from(r))
                + qbinom(m - 1, r - 1, 1).expect("r-1 <= m-1").shift(i64::from(r) - i64::from(m));
            if lhs != rhs {
                fails.push(format!("[{m} {r}]"));
            }
        }
    }
    out.push(item("q-Pascal identity", fails, "1<=r<=m-1<=7"));

    let mut fails = Vec::new();
    for k in 0..samples {
        let (a, b, c) = (random_laurent(rng), random_laurent(rng), random_laurent(rng));
        if (&a * &b) * &c != &a * (&b * &c) {
            fails.push(format!("associativity #{k}"));
        }
        if &a * (&b + &c) != &a * &b + &a * &c {
            fails.push(format!("distributivity #{k}"));
        }
        if &a + &b != &b + &a || &a * &b != &b * &a {
            fails.push(format!("commutativity #{k}"));
        }
    }
    out.push(item("Laurent ring axioms", fails, format!("{samples} random triples")));
    out
}

fn rootdata_checks(c: &CartanData) -> Vec<String> {
    let mut fails = Vec::new();
    let a0 = c.simple_root(0);
    let theta = c.theta();
    if a0.omega != theta.scaled(-1).omega || a0.delta != 1 || theta.delta != 0 {
        fails.push("alpha_0 != delta - theta".into());
    }
    let top = FiniteWeight::fundamental(c.rank, 1);
    let low = c.lowest_weight_in_orbit(&top);
    if -c.theta_coroot_pairing(&low) != c.theta_coroot_pairing(&top) {
        fails.push("-(w0 varpi_1)(theta^vee) != varpi_1(theta^vee)".into());
    }
    let orbit = c.weyl_orbit(&top);
    if orbit.iter().filter(|w| w.is_dominant()).count() != 1 || orbit.iter().filter(|w| w.is_antidominant()).count() != 1 {
        fails.push("orbit of varpi_1 must meet each chamber once".into());
    }
    let shifted = AffineWeight::fundamental(c.rank, 0).shift_delta(5);
    if c.pair_with_delta(&shifted) != c.pair_with_delta(&AffineWeight::fundamental(c.rank, 0)) {
        fails.push("(Lambda|delta) not delta-invariant".into());
    }
    fails
}

fn structure_checks(m: &NatModule) -> Vec<SelftestItem> {
    let tag = format!("{}{}", m.family(), m.rank());
    let mut out = Vec::new();

    let fails = match n_values(m) {
        Ok(n) => (0..m.dim())
            .filter(|&j| n[j] != n_closed_form(m.family(), m.rank(), j))
            .map(|j| format!("n(w_{j}) = {}, closed form {}", n[j], n_closed_form(m.family(), m.rank(), j)))
            .collect(),
        Err(e) => vec![e.to_string()],
    };
    out.push(item(format!("n closed form {tag}"), fails, format!("{} basis vectors", m.dim())));

    let (k, ks) = (k_of_natural(m), k_star_of_natural(m));
    let fails = if k == 1 && ks == 1 { vec![] } else { vec![format!("k = {k}, k* = {ks}")] };
    out.push(item(format!("k = k* = 1 {tag}"), fails, "k = 1"));

    let mut fails = nilpotency_violations(m);
    fails.extend(affine_nilpotency_violations(m));
    out.push(item(format!("nilpotency {tag}"), fails, "E_i, F_i, E_0, F_0"));

    let fails = degree_bound_violations(m).unwrap_or_else(|e| vec![e.to_string()]);
    out.push(item(format!("degree bounds {tag}"), fails, "all generators"));

    let mut fails = Vec::new();
    if central_element_matrix(m) != Matrix::identity(m.dim()) {
        fails.push("K_0 prod K_i^a_i != 1".into());
    }
    if !character_is_weyl_invariant(m) {
        fails.push("character not W-invariant".into());
    }
    if !double_definition_holds(m) {
        fails.push("E_l w_{l-1} != E_{l-1} w_l".into());
    }
    out.push(item(format!("level zero, character {tag}"), fails, "ok"));
    out
}

fn sweep_checks(m: &NatModule, sweep: &[AffineWeight]) -> Vec<SelftestItem> {
    let tag = format!("{}{}", m.family(), m.rank());
    let threshold = m.cartan.theta_coroot_pairing(&FiniteWeight::fundamental(m.rank(), 1)) + 1;
    let mut engine = Vec::new();
    let mut remark = Vec::new();
    let mut crystal = Vec::new();
    for lambda in sweep {
        let om = match omega_lambda(m, lambda) {
            Ok(om) => om,
            Err(e) => {
                engine.push(format!("{:?}: {e}", lambda.omega));
                continue;
            }
        };
        for n in -1..=1 {
            let d = decompose_quotient(m, lambda, n).expect("validated");
            let steps = chain(m, lambda, n).expect("validated");
            if chain_summands(m, lambda, &steps) != d {
                engine.push(format!("{:?} n={n}: engines disagree", lambda.omega));
            }
            if !steps.iter().any(|s| s.strict) {
                engine.push(format!("{:?} n={n}: no strict step", lambda.omega));
            }
            if d.iter().any(|s| !is_dominant(&s.highest_weight)) {
                engine.push(format!("{:?} n={n}: non-dominant summand", lambda.omega));
            }
            let next = decompose_quotient(m, lambda, n + 1).expect("validated");
            let shifted: Vec<_> = d.iter().map(|s| s.highest_weight.shift_delta(1)).collect();
            if next.iter().map(|s| s.highest_weight.clone()).collect::<Vec<_>>() != shifted {
                engine.push(format!("{:?} n={n}: delta-shift law", lambda.omega));
            }
        }
        let r = evaluate_natural(m, lambda).expect("dominant");
        if r.trivial {
            remark.push(format!("{:?}: trivial filtration predicted", lambda.omega));
        }
        if r.reducible != (lambda.omega[0] >= threshold) {
            remark.push(format!("{:?}: reducibility mismatch", lambda.omega));
        }
        let shifted = evaluate_natural(m, &lambda.shift_delta(3)).expect("dominant");
        if shifted != r {
            remark.push(format!("{:?}: not delta-invariant", lambda.omega));
        }
        match lambda_dominant_count(m, lambda) {
            Ok(c) if c == om.len() => {}
            Ok(c) => crystal.push(format!("{:?}: count {c} vs {}", lambda.omega, om.len())),
            Err(e) => crystal.push(e.to_string()),
        }
    }
    let detail = format!("{} weights, n in -1..=1", sweep.len());
    vec![
        item(format!("decomposition engines {tag}"), engine, detail.clone()),
        item(format!("criteria sweep {tag}"), remark, format!("{} weights", sweep.len())),
        item(format!("crystal counts {tag}"), crystal, format!("{} weights", sweep.len())),
    ]
}

pub fn run_selftest(cfg: &SelftestConfig) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut items = qcombinatorics(cfg.samples, &mut rng);

    for (family, rank) in FIXTURE_TYPES {
        let tag = format!("{family}{rank}");
        let cartan = match make_cartan(family, rank) {
            Ok(c) => c,
            Err(e) => {
                items.push(item(format!("root data {tag}"), vec![e.to_string()], ""));
                continue;
            }
        };
        items.push(item(format!("root data {tag}"), rootdata_checks(&cartan), "theta, orbit, delta"));
        let mut m = match build_natural(&cartan) {
            Ok(m) => m,
            Err(e) => {
                items.push(item(format!("build {tag}"), vec![e.to_string()], ""));
                continue;
            }
        };
        items.extend(structure_checks(&m));
        let sweep = lambda_sweep(rank, cfg.samples, &mut rng);
        items.extend(sweep_checks(&m, &sweep));

        let graph = crystal_graph(&m);
        let mut fails = Vec::new();
        if !graph.is_connected() || !graph.degrees_are_valid() {
            fails.push("graph not connected or degree > 1".into());
        }
        if family == crate::rootdata::Family::A && !graph.is_single_cycle() {
            fails.push("type A graph is not a single cycle".into());
        }
        items.push(item(format!("crystal graph {tag}"), fails, format!("{} edges", graph.edges.len())));

        if cfg.corrupt {
            m.zero_lowering(1);
        }
        let fails = match verify_relations(&m, -3, 3) {
            Ok(r) => r.failed().map(|c| format!("{} failed", c.id)).collect(),
            Err(e) => vec![e.to_string()],
        };
        items.push(item(format!("relations {tag}"), fails, "window [-3,3]"));
    }

    let mut fails = Vec::new();
    for n in 0..=6 {
        for s in [2, 3] {
            if !rdc10_check(n, s).verified {
                fails.push(format!("n={n}, string {s}"));
            }
        }
    }
    items.push(item("sl2 coefficient identity", fails, "n in 0..=6, strings of length 2, 3"));

    let passed = items.iter().all(|i| i.passed);
    let mut text = format!("afk selftest seed={} samples={}{}\n", cfg.seed, cfg.samples, if cfg.corrupt { " corrupt" } else { "" });
    for i in &items {
        text += &format!("{} {:<36} {}\n", if i.passed { "PASS" } else { "FAIL" }, i.name, i.detail);
    }
    let failed = items.iter().filter(|i| !i.passed).count();
    text += &format!("{} checks, {} failed\n", items.len(), failed);
    SelftestReport { items, passed, text }
}
