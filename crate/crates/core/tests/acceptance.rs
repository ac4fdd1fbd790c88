//! The acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use afk::cli::{run_selftest, SelftestConfig};
use afk::criteria::evaluate_natural;
use afk::crystal::{crystal_graph, lambda_dominant_count};
use afk::filtration::{chain, chain_summands, decompose_quotient, lambda_sweep, omega_lambda};
use afk::natmod::{
    affine_nilpotency_violations, build_natural, degree_bound_violations, k_of_natural, k_star_of_natural,
    n_closed_form, n_values, verify_relations, NatModule,
};
use afk::qlaurent::{qbinom, LaurentPoly};
use afk::rootdata::{make_cartan, AffineWeight, Family, FiniteWeight, FIXTURE_TYPES};
use afk::sl2check::rdc10_check;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SWEEP_SEED: u64 = 2718;
const SWEEP_SAMPLES: usize = 200;

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

fn outcome(failures: Vec<String>, detail: impl Into<String>) -> Outcome {
    Outcome { failures, detail: detail.into() }
}

fn module(f: Family, l: usize) -> NatModule {
    build_natural(&make_cartan(f, l).expect("fixture")).expect("natural module")
}

fn fixtures() -> Vec<NatModule> {
    FIXTURE_TYPES.iter().map(|&(f, l)| module(f, l)).collect()
}

fn tag(m: &NatModule) -> String {
    format!("{}{}", m.family(), m.rank())
}

fn sweeps(mods: &[NatModule]) -> Vec<Vec<AffineWeight>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    mods.iter().map(|m| lambda_sweep(m.rank(), SWEEP_SAMPLES, &mut rng)).collect()
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if took > limit {
        out.failures.push(format!("took {took:.1?}, limit {limit:?}"));
    }
    out.detail = format!("{} ({took:.1?})", out.detail);
    out
}

fn relation_suite() -> Outcome {
    let types = [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 3),
        (Family::B, 4),
        (Family::C, 2),
        (Family::C, 3),
        (Family::D, 4),
        (Family::D, 5),
    ];
    let mut failures = Vec::new();
    let mut instances = 0;
    for (f, l) in types {
        let m = module(f, l);
        let r = verify_relations(&m, -3, 3).expect("window of length 7");
        instances += r.checks.len();
        failures.extend(r.failed().map(|c| format!("{}: {}", tag(&m), c.id)));
    }
    outcome(failures, format!("{instances} relation instances on t in [-3,3], 9 types"))
}

fn closed_form_n(mods: &[NatModule]) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for m in mods {
        let n = n_values(m).expect("reachable");
        for (j, &v) in n.iter().enumerate() {
            count += 1;
            let expect = n_closed_form(m.family(), m.rank(), j);
            if v != expect {
                failures.push(format!("{} n(w_{j}) = {v}, expected {expect}", tag(m)));
            }
        }
    }
    outcome(failures, format!("{count} basis vectors"))
}

fn k_values(mods: &[NatModule]) -> Outcome {
    let failures = mods
        .iter()
        .filter(|m| k_of_natural(m) != 1 || k_star_of_natural(m) != 1)
        .map(|m| format!("{}: k = {}, k* = {}", tag(m), k_of_natural(m), k_star_of_natural(m)))
        .collect();
    outcome(failures, "k = k* = 1 on all fixture types")
}

fn affine_nilpotency(mods: &[NatModule]) -> Outcome {
    let failures = mods
        .iter()
        .flat_map(|m| affine_nilpotency_violations(m).into_iter().map(move |v| format!("{}: {v}", tag(m))))
        .collect();
    outcome(failures, "E_0, F_0 to the power varpi_1(theta^vee)+1 vanish")
}

fn degree_inequalities(mods: &[NatModule]) -> Outcome {
    let failures = mods
        .iter()
        .flat_map(|m| degree_bound_violations(m).expect("reachable").into_iter().map(move |v| format!("{}: {v}", tag(m))))
        .collect();
    outcome(failures, "every basis vector, every generator")
}

fn cross_engine(mods: &[NatModule], sweeps: &[Vec<AffineWeight>]) -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (m, sweep) in mods.iter().zip(sweeps) {
        for lambda in sweep {
            for n in -1..=1 {
                cases += 1;
                let d = decompose_quotient(m, lambda, n).expect("dominant, not a multiple of delta");
                let c = chain_summands(m, lambda, &chain(m, lambda, n).expect("dominant"));
                if c != d {
                    failures.push(format!("{} {:?} n={n}: engines disagree", tag(m), lambda.omega));
                }
                let next = decompose_quotient(m, lambda, n + 1).expect("dominant");
                let shifted: Vec<_> = d.iter().map(|s| s.highest_weight.shift_delta(1)).collect();
                if next.iter().map(|s| s.highest_weight.clone()).collect::<Vec<_>>() != shifted {
                    failures.push(format!("{} {:?} n={n}: delta shift", tag(m), lambda.omega));
                }
            }
        }
    }
    outcome(failures, format!("{cases} (type, Lambda, n) cases"))
}

fn remark_sweep(mods: &[NatModule], sweeps: &[Vec<AffineWeight>]) -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (m, sweep) in mods.iter().zip(sweeps) {
        let threshold = m.cartan.theta_coroot_pairing(&FiniteWeight::fundamental(m.rank(), 1)) + 1;
        for lambda in sweep {
            cases += 1;
            let r = evaluate_natural(m, lambda).expect("dominant");
            if r.trivial {
                failures.push(format!("{} {:?}: trivial filtration", tag(m), lambda.omega));
            }
            if r.reducible != (lambda.omega[0] >= threshold) {
                failures.push(format!("{} {:?}: reducibility", tag(m), lambda.omega));
            }
        }
    }
    outcome(failures, format!("{cases} (type, Lambda) cases"))
}

fn sl2_identity() -> Outcome {
    let mut failures = Vec::new();
    for n in 0..=6 {
        for s in [2, 3] {
            if !rdc10_check(n, s).verified {
                failures.push(format!("n = {n}, string length {s}"));
            }
        }
    }
    outcome(failures, "n in 0..=6, string lengths 2 and 3")
}

fn binomial(m: u32, r: u32) -> BigRational {
    let mut c = BigInt::from(1);
    for k in 0..r {
        c = c * BigInt::from(m - k) / BigInt::from(k + 1);
    }
    BigRational::from_integer(c)
}

fn q_combinatorics() -> Outcome {
    let mut failures = Vec::new();
    for d in 1..=3 {
        for m in 0..=8 {
            for r in 0..=m {
                let b = qbinom(m, r, d).expect("r <= m");
                if b.bar() != b {
                    failures.push(format!("palindromic [{m} {r}] d={d}"));
                }
            }
        }
    }
    for m in 0..=10 {
        for r in 0..=m {
            if qbinom(m, r, 1).expect("r <= m").eval_at_one() != binomial(m, r) {
                failures.push(format!("q=1 [{m} {r}]"));
            }
        }
    }
    for m in 2..=8u32 {
        for r in 1..m {
            let rhs = qbinom(m - 1, r, 1).unwrap() * LaurentPoly::q_pow(r.into())
                + qbinom(m - 1, r - 1, 1).unwrap() * LaurentPoly::q_pow(i64::from(r) - i64::from(m));
            if qbinom(m, r, 1).unwrap() != rhs {
                failures.push(format!("Pascal [{m} {r}]"));
            }
        }
    }
    outcome(failures, "palindromicity m<=8, q=1 m<=10, q-Pascal m<=8")
}

fn crystal_counts(mods: &[NatModule], sweeps: &[Vec<AffineWeight>]) -> Outcome {
    let mut failures = Vec::new();
    for (m, sweep) in mods.iter().zip(sweeps) {
        for lambda in sweep {
            let count = lambda_dominant_count(m, lambda).expect("dominant");
            let omega = omega_lambda(m, lambda).expect("dominant").len();
            if count != omega {
                failures.push(format!("{} {:?}: {count} vs {omega}", tag(m), lambda.omega));
            }
        }
        if m.family() == Family::A && !crystal_graph(m).is_single_cycle() {
            failures.push(format!("{}: not a single cycle", tag(m)));
        }
    }
    outcome(failures, "counts on the full sweep, type A cycles")
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_afk");
    let run = || {
        Command::new(bin)
            .args(["selftest", "--seed", "42", "--samples", "50"])
            .env_remove("AFK_SEED")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let mut failures = Vec::new();
    if a.stdout != b.stdout {
        failures.push("binary reports differ".into());
    }
    if !a.status.success() {
        failures.push(format!("selftest exited with {:?}", a.status.code()));
    }
    let cfg = SelftestConfig { samples: 50, seed: 42, corrupt: false };
    if run_selftest(&cfg).text.as_bytes() != a.stdout.as_slice() {
        failures.push("library and binary reports differ".into());
    }
    outcome(failures, format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let mods = fixtures();
    let sweeps = sweeps(&mods);
    let results: Vec<(&str, Outcome)> = vec![
        ("relation suite", timed(Duration::from_secs(60), relation_suite)),
        ("closed-form n values", closed_form_n(&mods)),
        ("k = 1 and min equality", k_values(&mods)),
        ("E_0/F_0 nilpotency", affine_nilpotency(&mods)),
        ("degree-function inequalities", degree_inequalities(&mods)),
        ("decomposition cross-engine", timed(Duration::from_secs(120), || cross_engine(&mods, &sweeps))),
        ("irreducibility/reducibility sweep", remark_sweep(&mods, &sweeps)),
        ("sl2 coefficient identity", timed(Duration::from_secs(5), sl2_identity)),
        ("q-combinatorics", q_combinatorics()),
        ("crystal counts", crystal_counts(&mods, &sweeps)),
        ("selftest determinism", determinism()),
    ];
    let mut failed = 0;
    for (k, (name, o)) in results.iter().enumerate() {
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name}: {}", k + 1, o.detail);
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
        failed += usize::from(!o.failures.is_empty());
    }
    println!("{} criteria, {failed} failed", results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
