//! Root and weight data for the untwisted affine algebras of type
//! A_l, B_l, C_l, D_l, with nodes numbered 0..=l as in Kac's tables.
//!
//! Affine weights are stored through their pairings with the simple coroots
//! plus a coefficient of the null root, `sum_i n_i w_i + r delta`. The bilinear
//! form is only ever evaluated against elements of `span{alpha_i, delta}`, where
//! it is determined by `(w_i | alpha_j) = d_i delta_ij` and `(delta | alpha_j) = 0`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B => 3,
            Family::C => 2,
            Family::D => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// The (family, rank) pairs covered by the shipped fixtures.
pub const FIXTURE_TYPES: [(Family, usize); 11] = [
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 4),
    (Family::B, 3),
    (Family::B, 4),
    (Family::C, 2),
    (Family::C, 3),
    (Family::C, 4),
    (Family::D, 4),
    (Family::D, 5),
];

/// `sum_i omega[i] * w_i + delta * (null root)`, `i` ranging over `0..=l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight {
    pub omega: Vec<i64>,
    pub delta: i64,
}

impl AffineWeight {
    pub fn new(omega: Vec<i64>, delta: i64) -> Self {
        Self { omega, delta }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank + 1], 0)
    }

    /// The null root.
    pub fn null_root(rank: usize) -> Self {
        Self::new(vec![0; rank + 1], 1)
    }

    /// The fundamental weight `w_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut omega = vec![0; rank + 1];
        omega[i] = 1;
        Self::new(omega, 0)
    }

    pub fn rank(&self) -> usize {
        self.omega.len() - 1
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.omega.len(), other.omega.len(), "rank mismatch");
        Self::new(
            self.omega.iter().zip(&other.omega).map(|(a, b)| a + b).collect(),
            self.delta + other.delta,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::new(self.omega.iter().map(|a| a * k).collect(), self.delta * k)
    }

    pub fn shift_delta(&self, k: i64) -> Self {
        Self::new(self.omega.clone(), self.delta + k)
    }

    /// True when every coroot pairing vanishes.
    pub fn is_multiple_of_delta(&self) -> bool {
        self.omega.iter().all(|&n| n == 0)
    }
}

/// `sum_i varpi[i-1] * varpi_i` over the finite nodes `1..=l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteWeight {
    pub varpi: Vec<i64>,
}

impl FiniteWeight {
    pub fn new(varpi: Vec<i64>) -> Self {
        Self { varpi }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "finite nodes are 1..=l");
        let mut varpi = vec![0; rank];
        varpi[i - 1] = 1;
        Self::new(varpi)
    }

    /// Pairing with the finite simple coroot `i` (1-based).
    pub fn pairing(&self, i: usize) -> i64 {
        self.varpi[i - 1]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.varpi.iter().zip(&other.varpi).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.varpi.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.varpi.iter().all(|&m| m == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.varpi.iter().all(|&m| m >= 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.varpi.iter().all(|&m| m <= 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub family: Family,
    pub rank: usize,
    /// Extended Cartan matrix, `a[i][j] = alpha_j(alpha_i^vee)`, indices `0..=l`.
    pub matrix: Vec<Vec<i64>>,
    /// Coprime symmetrizers: `d_i a_ij = d_j a_ji = (alpha_i | alpha_j)`.
    pub d: Vec<i64>,
    /// Coefficients of `delta = sum_i a_i alpha_i` (so `a_0 = 1` and the rest expand theta).
    pub marks: Vec<i64>,
    /// Coefficients of `c = sum_i a_i^vee alpha_i^vee` (the rest expand theta^vee).
    pub comarks: Vec<i64>,
}

fn link(m: &mut [Vec<i64>], i: usize, j: usize) {
    m[i][j] = -1;
    m[j][i] = -1;
}

pub fn make_cartan(family: Family, rank: usize) -> Result<CartanData> {
    if rank < family.min_rank() {
        return Err(Error::Domain(format!(
            "type {family} needs rank >= {}, got {rank}",
            family.min_rank()
        )));
    }
    let l = rank;
    let n = l + 1;
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let (d, marks) = match family {
        Family::A => {
            if l == 1 {
                m[0][1] = -2;
                m[1][0] = -2;
            } else {
                for i in 0..l {
                    link(&mut m, i, i + 1);
                }
                link(&mut m, l, 0);
            }
            (vec![1; n], vec![1; n])
        }
        Family::B => {
            link(&mut m, 0, 2);
            link(&mut m, 1, 2);
            for i in 2..l - 1 {
                link(&mut m, i, i + 1);
            }
            // alpha_l is short.
            m[l - 1][l] = -1;
            m[l][l - 1] = -2;
            let mut d = vec![2; n];
            d[l] = 1;
            let mut marks = vec![2; n];
            marks[0] = 1;
            marks[1] = 1;
            (d, marks)
        }
        Family::C => {
            for i in 1..l - 1 {
                link(&mut m, i, i + 1);
            }
            // alpha_0 and alpha_l are long.
            m[0][1] = -1;
            m[1][0] = -2;
            m[l][l - 1] = -1;
            m[l - 1][l] = -2;
            let mut d = vec![1; n];
            d[0] = 2;
            d[l] = 2;
            let mut marks = vec![2; n];
            marks[0] = 1;
            marks[l] = 1;
            (d, marks)
        }
        Family::D => {
            link(&mut m, 0, 2);
            link(&mut m, 1, 2);
            for i in 2..l - 2 {
                link(&mut m, i, i + 1);
            }
            link(&mut m, l - 2, l - 1);
            link(&mut m, l - 2, l);
            let mut marks = vec![2; n];
            for i in [0, 1, l - 1, l] {
                marks[i] = 1;
            }
            (vec![1; n], marks)
        }
    };
    let comarks = marks.iter().zip(&d).map(|(a, di)| a * di / d[0]).collect();
    Ok(CartanData { family, rank: l, matrix: m, d, marks, comarks })
}

impl CartanData {
    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.rank
    }

    pub fn finite_nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// `q_i = q^{d_i}`.
    pub fn q_exp(&self, i: usize) -> u32 {
        self.d[i] as u32
    }

    /// The affine image of a finite weight under `varpi_i = w_i - a_i^vee w_0`.
    pub fn embed(&self, mu: &FiniteWeight) -> AffineWeight {
        let mut omega = vec![0; self.rank + 1];
        omega[0] = -self.theta_coroot_pairing(mu);
        omega[1..].copy_from_slice(&mu.varpi);
        AffineWeight::new(omega, 0)
    }

    /// `mu(theta^vee)`.
    pub fn theta_coroot_pairing(&self, mu: &FiniteWeight) -> i64 {
        self.finite_nodes().map(|i| self.comarks[i] * mu.pairing(i)).sum()
    }

    /// `alpha_i` as an affine weight: pairings `a_ji` and, for `i = 0`, one `delta`.
    pub fn simple_root(&self, i: usize) -> AffineWeight {
        let omega = self.nodes().map(|j| self.a(j, i)).collect();
        AffineWeight::new(omega, i64::from(i == 0))
    }

    /// The finite part of `alpha_i` in fundamental-weight coordinates
    /// (for `i = 0` this is `-theta`).
    pub fn finite_root(&self, i: usize) -> FiniteWeight {
        FiniteWeight::new(self.finite_nodes().map(|j| self.a(j, i)).collect())
    }

    /// `theta = sum_{i in I} a_i alpha_i` as an affine weight.
    pub fn theta(&self) -> AffineWeight {
        self.finite_nodes()
            .fold(AffineWeight::zero(self.rank), |acc, i| acc.add(&self.simple_root(i).scaled(self.marks[i])))
    }

    pub fn pair_with_coroot(&self, lambda: &AffineWeight, i: usize) -> i64 {
        lambda.omega[i]
    }

    /// `(lambda | delta) = sum_i n_i a_i d_i`.
    pub fn pair_with_delta(&self, lambda: &AffineWeight) -> i64 {
        self.nodes().map(|i| lambda.omega[i] * self.marks[i] * self.d[i]).sum()
    }

    /// `(lambda | alpha_i) = d_i lambda(alpha_i^vee)`.
    pub fn pair_with_root(&self, lambda: &AffineWeight, i: usize) -> i64 {
        self.d[i] * lambda.omega[i]
    }

    /// Simple reflection `s_i` of the finite Weyl group, `i in 1..=l`.
    pub fn reflect(&self, mu: &FiniteWeight, i: usize) -> FiniteWeight {
        let k = mu.pairing(i);
        FiniteWeight::new(
            self.finite_nodes()
                .map(|j| mu.pairing(j) - k * self.a(j, i))
                .collect(),
        )
    }

    /// Orbit of `mu` under the finite Weyl group.
    pub fn weyl_orbit(&self, mu: &FiniteWeight) -> BTreeSet<FiniteWeight> {
        let mut seen = BTreeSet::from([mu.clone()]);
        let mut queue = VecDeque::from([mu.clone()]);
        while let Some(nu) = queue.pop_front() {
            for i in self.finite_nodes() {
                let r = self.reflect(&nu, i);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    pub fn lowest_weight_in_orbit(&self, mu: &FiniteWeight) -> FiniteWeight {
        self.weyl_orbit(mu)
            .into_iter()
            .find(FiniteWeight::is_antidominant)
            .expect("every Weyl orbit meets the antidominant chamber")
    }

    pub fn highest_weight_in_orbit(&self, mu: &FiniteWeight) -> FiniteWeight {
        self.weyl_orbit(mu)
            .into_iter()
            .find(FiniteWeight::is_dominant)
            .expect("every Weyl orbit meets the dominant chamber")
    }

    pub fn check_weight_rank(&self, lambda: &AffineWeight) -> Result<()> {
        if lambda.omega.len() != self.rank + 1 {
            return Err(Error::Domain(format!(
                "type {}_{} needs {} coroot pairings, got {}",
                self.family,
                self.rank,
                self.rank + 1,
                lambda.omega.len()
            )));
        }
        Ok(())
    }
}

pub fn is_dominant(lambda: &AffineWeight) -> bool {
    lambda.omega.iter().all(|&n| n >= 0)
}
