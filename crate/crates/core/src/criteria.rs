//! The two sufficient conditions on `Lambda`: one forcing the filtration of
//! `X(Lambda) (x) L(V(pi))` to be trivial (so the tensor product is
//! irreducible), one forcing it to be reducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::natmod::{first_layer_dims, k_of_natural, last_layer_dims, n_values, NatModule, PiData};
use crate::rootdata::{is_dominant, AffineWeight, CartanData, FiniteWeight};

pub fn natural_pi_data(m: &NatModule) -> Result<PiData> {
    let lambda_pi = FiniteWeight::fundamental(m.rank(), 1);
    let theta_pairing = m.cartan.theta_coroot_pairing(&lambda_pi);
    let n_pi = n_values(m)?.into_iter().max().unwrap_or(0);
    Ok(PiData { lambda_pi, k: k_of_natural(m), m: 1, n_pi, theta_pairing })
}

fn require_dominant(cartan: &CartanData, lambda: &AffineWeight) -> Result<()> {
    cartan.check_weight_rank(lambda)?;
    if !is_dominant(lambda) {
        return Err(Error::Domain(format!("Lambda = {:?} is not dominant", lambda.omega)));
    }
    Ok(())
}

/// True iff for some `i in I` either
/// `dims[i] = k` and `(k + m)(Lambda|delta) < (Lambda + lambda_pi | alpha_i)`, or
/// `dims_star[i] = k` and `k (Lambda|delta) < -(Lambda + w0 lambda_pi | alpha_i)`.
/// `dims[i] = dim V_{lambda_pi - alpha_i}`, `dims_star[i] = dim V_{w0 lambda_pi + alpha_i}`.
pub fn filtration_is_trivial(
    cartan: &CartanData,
    lambda: &AffineWeight,
    pi: &PiData,
    dims: &[usize],
    dims_star: &[usize],
) -> Result<bool> {
    require_dominant(cartan, lambda)?;
    let k = pi.k as i64;
    let level = cartan.pair_with_delta(lambda);
    let top = lambda.add(&cartan.embed(&pi.lambda_pi));
    let low = lambda.add(&cartan.embed(&cartan.lowest_weight_in_orbit(&pi.lambda_pi)));
    Ok(cartan.finite_nodes().any(|i| {
        let first = dims[i] == pi.k && (k + pi.m as i64) * level < cartan.pair_with_root(&top, i);
        let second = dims_star[i] == pi.k && k * level < -cartan.pair_with_root(&low, i);
        first || second
    }))
}

/// `Lambda(alpha_0^vee) >= lambda_pi(theta^vee) + m`.
pub fn is_reducible(lambda: &AffineWeight, pi: &PiData) -> bool {
    lambda.omega[0] >= pi.theta_pairing + pi.m as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Reducible,
    Irreducible,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Reducible => "reducible (Thm C)",
            Verdict::Irreducible => "irreducible (Thm B)",
            Verdict::Undetermined => "undetermined",
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "reducible (Thm C)" => Ok(Verdict::Reducible),
            "irreducible (Thm B)" => Ok(Verdict::Irreducible),
            "undetermined" => Ok(Verdict::Undetermined),
            other => Err(serde::de::Error::custom(format!("unknown verdict `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaReport {
    #[serde(rename = "thmB_trivial")]
    pub trivial: bool,
    #[serde(rename = "thmC_reducible")]
    pub reducible: bool,
    pub verdict: Verdict,
}

/// Both predicates for the natural representation.
pub fn evaluate_natural(m: &NatModule, lambda: &AffineWeight) -> Result<CriteriaReport> {
    let pi = natural_pi_data(m)?;
    let trivial = filtration_is_trivial(&m.cartan, lambda, &pi, &first_layer_dims(m), &last_layer_dims(m))?;
    let reducible = is_reducible(lambda, &pi);
    let verdict = if reducible {
        Verdict::Reducible
    } else if trivial {
        Verdict::Irreducible
    } else {
        Verdict::Undetermined
    };
    Ok(CriteriaReport { trivial, reducible, verdict })
}
