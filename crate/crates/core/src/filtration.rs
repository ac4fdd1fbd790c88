//! Successive quotients `Cx_n / Cx_{n+1}` of the filtration of
//! `X(Lambda) (x) L(V)` by the submodules generated by `v_Lambda (x) w_0 t^n`.
//!
//! Two independent engines: the type-uniform weight rule
//! ([`decompose_quotient`]) and the per-type chain of submodules generated by
//! `v_Lambda (x) w_j t^{n + n(w_j)}` ([`chain`], [`chain_summands`]).

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::natmod::{n_values, NatModule};
use crate::rootdata::{is_dominant, AffineWeight, CartanData, Family, FiniteWeight};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecompositionSummand {
    pub mu: FiniteWeight,
    pub n_mu: u32,
    #[serde(rename = "weight")]
    pub highest_weight: AffineWeight,
    pub multiplicity: u32,
}

/// The step collapses when `Lambda_index < below`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Collapse {
    pub index: usize,
    pub below: i64,
}

impl Collapse {
    fn zero(index: usize) -> Self {
        Self { index, below: 1 }
    }

    pub fn holds(&self, lambda: &AffineWeight) -> bool {
        lambda.omega[self.index] < self.below
    }
}

impl fmt::Display for Collapse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.below == 1 {
            write!(f, "Lambda_{}", self.index)
        } else {
            write!(f, "Lambda_{}<{}", self.index, self.below)
        }
    }
}

impl Serialize for Collapse {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Collapse {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let rest = s
            .strip_prefix("Lambda_")
            .ok_or_else(|| serde::de::Error::custom(format!("bad collapse condition `{s}`")))?;
        let (idx, below) = match rest.split_once('<') {
            Some((i, b)) => (i, b.parse().map_err(serde::de::Error::custom)?),
            None => (rest, 1),
        };
        Ok(Collapse { index: idx.parse().map_err(serde::de::Error::custom)?, below })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub j: usize,
    /// Basis index of the generator `v_Lambda (x) w_generator t^t_exponent`.
    pub generator: usize,
    pub t_exponent: i64,
    /// The step collapses when any of these holds.
    pub collapse: Vec<Collapse>,
    pub strict: bool,
}

fn validate(cartan: &CartanData, lambda: &AffineWeight) -> Result<()> {
    cartan.check_weight_rank(lambda)?;
    if !is_dominant(lambda) {
        return Err(Error::Domain(format!("Lambda = {:?} is not dominant", lambda.omega)));
    }
    if lambda.is_multiple_of_delta() {
        return Err(Error::NotCovered("Lambda is a multiple of delta".into()));
    }
    Ok(())
}

/// Type B excludes the zero weight when `Lambda(alpha_l^vee) = 0`.
fn excluded_zero(cartan: &CartanData, lambda: &AffineWeight, mu: &FiniteWeight) -> bool {
    cartan.family == Family::B && lambda.omega[cartan.rank] == 0 && mu.is_zero()
}

/// Weights `mu` of `V` with `Lambda + mu` dominant, in basis order.
pub fn omega_lambda(m: &NatModule, lambda: &AffineWeight) -> Result<Vec<FiniteWeight>> {
    validate(&m.cartan, lambda)?;
    Ok(m.weights
        .iter()
        .filter(|mu| is_dominant(&lambda.add(&m.cartan.embed(mu))) && !excluded_zero(&m.cartan, lambda, mu))
        .cloned()
        .collect())
}

pub fn decompose_quotient(m: &NatModule, lambda: &AffineWeight, n: i64) -> Result<Vec<DecompositionSummand>> {
    let omega = omega_lambda(m, lambda)?;
    let nv = n_values(m)?;
    let mut out: Vec<DecompositionSummand> = omega
        .into_iter()
        .map(|mu| {
            let j = m.index_of_weight(&mu).expect("weight of V");
            let n_mu = nv[j];
            let highest_weight = lambda.add(&m.cartan.embed(&mu)).shift_delta(n + i64::from(n_mu));
            DecompositionSummand { mu, n_mu, highest_weight, multiplicity: 1 }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `(generator, collapse conditions)` for each step, in chain order.
fn chain_layout(family: Family, l: usize) -> Vec<(usize, Vec<Collapse>)> {
    let z = Collapse::zero;
    let mut steps = Vec::new();
    match family {
        Family::A => {
            for j in 0..=l {
                steps.push((j, vec![z((l + 1 - j) % (l + 1))]));
            }
        }
        Family::C => {
            for j in 0..=l {
                steps.push((j, vec![z(j)]));
            }
            for j in 1..l {
                steps.push((l + j, vec![z(l - j)]));
            }
        }
        Family::B => {
            steps.push((0, vec![z(0)]));
            for s in 1..l - 1 {
                steps.push((s, vec![z(s + 1)]));
            }
            // Generator of weight -eps_l: Lambda - eps_l is dominant only for Lambda_l >= 2.
            steps.push((l - 1, vec![Collapse { index: l, below: 2 }]));
            for j in 0..=l - 2 {
                steps.push((l + j, vec![z(l - j)]));
            }
            steps.push((2 * l - 1, vec![z(0), z(1)]));
            steps.push((2 * l, vec![z(1)]));
        }
        Family::D => {
            steps.push((0, vec![z(0)]));
            for j in 1..=l - 3 {
                steps.push((j, vec![z(j + 1)]));
            }
            steps.push((l - 2, vec![z(l - 1), z(l)]));
            // The two parallel branches of the diamond.
            steps.push((l - 1, vec![z(l)]));
            steps.push((l, vec![z(l - 1)]));
            for j in 2..=l - 2 {
                steps.push((l + j - 1, vec![z(l - j)]));
            }
            steps.push((2 * l - 2, vec![z(0), z(1)]));
            steps.push((2 * l - 1, vec![z(1)]));
        }
    }
    steps
}

pub fn chain(m: &NatModule, lambda: &AffineWeight, n: i64) -> Result<Vec<ChainStep>> {
    validate(&m.cartan, lambda)?;
    let nv = n_values(m)?;
    Ok(chain_layout(m.family(), m.rank())
        .into_iter()
        .enumerate()
        .map(|(j, (generator, collapse))| {
            let strict = !collapse.iter().any(|c| c.holds(lambda));
            ChainStep { j, generator, t_exponent: n + i64::from(nv[generator]), collapse, strict }
        })
        .collect())
}

/// One summand `X(Lambda + wt w_j + (n + n(w_j)) delta)` per strict step.
pub fn chain_summands(m: &NatModule, lambda: &AffineWeight, steps: &[ChainStep]) -> Vec<DecompositionSummand> {
    // n(w_0) = 0, so the w_0 step carries t^n.
    let n = steps.iter().find(|s| s.generator == 0).map_or(0, |s| s.t_exponent);
    let mut out: Vec<DecompositionSummand> = steps
        .iter()
        .filter(|s| s.strict)
        .map(|s| {
            let mu = m.weights[s.generator].clone();
            let highest_weight = lambda.add(&m.cartan.embed(&mu)).shift_delta(s.t_exponent);
            let n_mu = (s.t_exponent - n) as u32;
            DecompositionSummand { mu, n_mu, highest_weight, multiplicity: 1 }
        })
        .collect();
    out.sort();
    out
}

/// Dominant `Lambda` with coordinates in `{0,1,2}` and zero `delta` part,
/// excluding 0: all of them for rank at most 3, otherwise `samples` draws.
pub fn lambda_sweep<R: Rng>(rank: usize, samples: usize, rng: &mut R) -> Vec<AffineWeight> {
    if rank <= 3 {
        let total = 3usize.pow(rank as u32 + 1);
        (1..total)
            .map(|mut code| {
                let omega = (0..=rank)
                    .map(|_| {
                        let c = (code % 3) as i64;
                        code /= 3;
                        c
                    })
                    .collect();
                AffineWeight::new(omega, 0)
            })
            .collect()
    } else {
        let mut out = Vec::with_capacity(samples);
        while out.len() < samples {
            let omega: Vec<i64> = (0..=rank).map(|_| rng.gen_range(0..3)).collect();
            if omega.iter().any(|&c| c != 0) {
                out.push(AffineWeight::new(omega, 0));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natmod::build_natural;
    use crate::rootdata::make_cartan;

    fn module(f: Family, l: usize) -> NatModule {
        build_natural(&make_cartan(f, l).unwrap()).unwrap()
    }

    fn w(omega: &[i64]) -> AffineWeight {
        AffineWeight::new(omega.to_vec(), 0)
    }

    #[test]
    fn a2_example() {
        let m = module(Family::A, 2);
        let lambda = w(&[1, 1, 0]);
        let om = omega_lambda(&m, &lambda).unwrap();
        assert_eq!(om, vec![FiniteWeight::new(vec![1, 0]), FiniteWeight::new(vec![-1, 1])]);
        let d = decompose_quotient(&m, &lambda, 0).unwrap();
        let weights: Vec<_> = d.iter().map(|s| s.highest_weight.clone()).collect();
        assert!(weights.contains(&AffineWeight::new(vec![0, 2, 0], 0)));
        assert!(weights.contains(&AffineWeight::new(vec![1, 0, 1], 1)));
        let steps = chain(&m, &lambda, 0).unwrap();
        let collapse: Vec<usize> = steps.iter().map(|s| s.collapse[0].index).collect();
        assert_eq!(collapse, vec![0, 2, 1]);
        assert_eq!(steps.iter().map(|s| s.strict).collect::<Vec<_>>(), vec![true, false, true]);
        assert_eq!(chain_summands(&m, &lambda, &steps), d);
    }

    #[test]
    fn errors() {
        let m = module(Family::A, 2);
        assert!(matches!(omega_lambda(&m, &AffineWeight::new(vec![0, 0, 0], 5)), Err(Error::NotCovered(_))));
        assert!(matches!(omega_lambda(&m, &w(&[1, -1, 0])), Err(Error::Domain(_))));
        assert!(matches!(omega_lambda(&m, &w(&[1, 0])), Err(Error::Domain(_))));
    }

    #[test]
    fn a1_single_summand() {
        let m = module(Family::A, 1);
        let d = decompose_quotient(&m, &w(&[1, 0]), 0).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].highest_weight, w(&[0, 1]));
    }

    #[test]
    fn b3_zero_weight_rule() {
        let m = module(Family::B, 3);
        let om = omega_lambda(&m, &w(&[1, 0, 0, 0])).unwrap();
        assert!(!om.iter().any(FiniteWeight::is_zero));
        let om = omega_lambda(&m, &w(&[0, 0, 0, 1])).unwrap();
        assert!(om.iter().any(FiniteWeight::is_zero));
    }

    #[test]
    fn b3_last_step() {
        let m = module(Family::B, 3);
        for l1 in 0..2 {
            let steps = chain(&m, &w(&[1, l1, 0, 0]), 0).unwrap();
            assert_eq!(steps.last().unwrap().strict, l1 != 0);
        }
    }

    #[test]
    fn c2_first_step() {
        let m = module(Family::C, 2);
        let steps = chain(&m, &w(&[0, 1, 0]), 0).unwrap();
        assert_eq!(steps[0].collapse, vec![Collapse::zero(0)]);
        assert!(!steps[0].strict);
    }

    #[test]
    fn d4_diamond() {
        let m = module(Family::D, 4);
        let lambda = w(&[0, 0, 0, 0, 1]);
        let steps = chain(&m, &lambda, 0).unwrap();
        let strict: Vec<usize> = steps.iter().filter(|s| s.strict).map(|s| s.generator).collect();
        assert!(strict.contains(&3));
        assert!(!strict.contains(&4));
        assert_eq!(chain_summands(&m, &lambda, &steps), decompose_quotient(&m, &lambda, 0).unwrap());
    }

    #[test]
    fn collapse_json() {
        let c = Collapse { index: 3, below: 2 };
        assert_eq!(serde_json::to_string(&c).unwrap(), "\"Lambda_3<2\"");
        let back: Collapse = serde_json::from_str("\"Lambda_3<2\"").unwrap();
        assert_eq!(back, c);
        let back: Collapse = serde_json::from_str("\"Lambda_0\"").unwrap();
        assert_eq!(back, Collapse::zero(0));
    }

    #[test]
    fn sweep_sizes() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        assert_eq!(lambda_sweep(2, 0, &mut rng).len(), 26);
        let s = lambda_sweep(4, 200, &mut rng);
        assert_eq!(s.len(), 200);
        assert!(s.iter().all(|l| !l.is_multiple_of_delta()));
    }
}
