//! The loop module of the natural representation for types A, B, C, D.
//!
//! The basis `w_0..w_N` is produced by the raising operators exactly as in the
//! explicit constructions: `w_0` is a highest weight vector of weight `varpi_1`
//! and every later `w_j` is defined as `E_i w_k` for a listed arrow, so those
//! arrows carry the scalar 1. The remaining scalars (lowering operators, and
//! the few raising arrows that are forced by weights but not used to define a
//! basis vector) are solved from the defining relations, one `i`-string at a
//! time, against the `U_{q_i}(sl_2)` models of [`crate::sl2check`].
//!
//! On the loop space `V (x) Q(q)[t, t^-1]` a generator of degree `d` (`+1` for
//! `E_0`, `-1` for `F_0`, `0` otherwise) shifts the `t`-exponent by `d`, `D`
//! acts on `w t^n` by `q^n`, and `C^{1/2}` acts trivially.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qlaurent::{qbinom, LaurentPoly};
use crate::rootdata::{CartanData, Family, FiniteWeight};
use crate::sl2check::build_sl2_at;

/// `op_i w_from = (scalar) w_to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub i: usize,
    pub from: usize,
    pub to: usize,
}

impl Arrow {
    pub fn new(i: usize, from: usize, to: usize) -> Self {
        Self { i, from, to }
    }

    pub fn reversed(self) -> Self {
        Self { i: self.i, from: self.to, to: self.from }
    }
}

/// Sparsity of the action as transcribed from the explicit basis constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTables {
    pub family: Family,
    pub rank: usize,
    pub dim: usize,
    /// Raising arrows that define a basis vector; scalar fixed to 1.
    pub defining: Vec<Arrow>,
    /// Raising arrows forced by the weights whose scalar must be solved. In
    /// type D this includes the second description `w_{l+1} = E_{l-1} w_l`.
    pub derived: Vec<Arrow>,
    /// Lowering arrows.
    pub lowering: Vec<Arrow>,
}

impl ActionTables {
    pub fn raising(&self) -> impl Iterator<Item = &Arrow> {
        self.defining.iter().chain(&self.derived)
    }
}

/// Transcribes the raising/lowering sparsity for the natural representation.
pub fn natural_tables(cartan: &CartanData) -> ActionTables {
    let l = cartan.rank;
    let mut defining = Vec::new();
    let mut derived = Vec::new();
    let mut lowering = Vec::new();
    let dim = match cartan.family {
        Family::A => {
            // E_j w_i = delta_{j, l-i+1} w_{i+1}, indices mod l+1 (so node l+1 is 0).
            let n = l + 1;
            for i in 0..=l {
                let node = (l + 1 - i) % n;
                defining.push(Arrow::new(node, i, (i + 1) % n));
                lowering.push(Arrow::new(node, (i + 1) % n, i));
            }
            n
        }
        Family::C => {
            let n = 2 * l;
            for j in 1..=l + 1 {
                defining.push(Arrow::new(j - 1, j - 1, j % n));
            }
            for j in 1..l {
                defining.push(Arrow::new(l - j, l + j, (l + j + 1) % n));
            }
            lowering = defining.iter().map(|a| a.reversed()).collect();
            n
        }
        Family::B => {
            let n = 2 * l + 1;
            defining.push(Arrow::new(0, 0, 1));
            for j in 2..=l {
                defining.push(Arrow::new(j, j - 1, j));
            }
            for j in 0..=l - 2 {
                defining.push(Arrow::new(l - j, l + j, l + j + 1));
            }
            defining.push(Arrow::new(0, 2 * l - 1, 2 * l));
            derived.push(Arrow::new(1, 2 * l - 1, 0));
            derived.push(Arrow::new(1, 2 * l, 1));

            lowering.push(Arrow::new(1, 0, 2 * l - 1)); // a_0
            lowering.push(Arrow::new(1, 1, 2 * l)); // a_1
            lowering.push(Arrow::new(0, 1, 0));
            for j in 2..=l {
                lowering.push(Arrow::new(j, j, j - 1));
            }
            for j in 0..=l - 2 {
                lowering.push(Arrow::new(l - j, l + j + 1, l + j));
            }
            lowering.push(Arrow::new(0, 2 * l, 2 * l - 1));
            n
        }
        Family::D => {
            let n = 2 * l;
            defining.push(Arrow::new(0, 0, 1));
            for j in 2..l {
                defining.push(Arrow::new(j, j - 1, j));
            }
            defining.push(Arrow::new(l, l - 2, l));
            defining.push(Arrow::new(l, l - 1, l + 1));
            for j in 2..=l - 2 {
                defining.push(Arrow::new(l - j, l + j - 1, l + j));
            }
            defining.push(Arrow::new(0, 2 * l - 2, 2 * l - 1));
            derived.push(Arrow::new(l - 1, l, l + 1));
            derived.push(Arrow::new(1, 2 * l - 2, 0));
            derived.push(Arrow::new(1, 2 * l - 1, 1));
            lowering = defining.iter().chain(&derived).map(|a| a.reversed()).collect();
            n
        }
    };
    ActionTables { family: cartan.family, rank: l, dim, defining, derived, lowering }
}

/// Closed form of the degree function on the basis.
pub fn n_closed_form(family: Family, rank: usize, j: usize) -> u32 {
    let base = u32::from(j != 0);
    match family {
        Family::A | Family::C => base,
        Family::B => base + u32::from(j == 2 * rank),
        Family::D => base + u32::from(j == 2 * rank - 1),
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Lowering scalars fixed by the caller. A pin on the partner of an
    /// undetermined raising arrow sets the free parameter; any other pin must
    /// agree with the solved value.
    pub pinned_lowering: Vec<(Arrow, LaurentPoly)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarAssignment {
    pub raising: BTreeMap<Arrow, LaurentPoly>,
    pub lowering: BTreeMap<Arrow, LaurentPoly>,
    pub weights: Vec<FiniteWeight>,
    /// Choices made where the relations leave a free parameter.
    pub notes: Vec<String>,
}

/// Weight of every basis vector, propagated along the defining arrows from
/// `w_0 = varpi_1`, with every listed arrow checked against `+- alpha_i`.
fn assign_weights(tables: &ActionTables, cartan: &CartanData) -> Result<Vec<FiniteWeight>> {
    let mut weights: Vec<Option<FiniteWeight>> = vec![None; tables.dim];
    weights[0] = Some(FiniteWeight::fundamental(cartan.rank, 1));
    let mut progress = true;
    while progress {
        progress = false;
        for a in &tables.defining {
            if weights[a.to].is_none() {
                if let Some(w) = weights[a.from].clone() {
                    weights[a.to] = Some(w.add(&cartan.finite_root(a.i)));
                    progress = true;
                }
            }
        }
    }
    let weights: Vec<FiniteWeight> = weights
        .into_iter()
        .enumerate()
        .map(|(j, w)| w.ok_or(Error::Unreachable(j)))
        .collect::<Result<_>>()?;
    for a in tables.raising() {
        if weights[a.to] != weights[a.from].add(&cartan.finite_root(a.i)) {
            return Err(Error::InconsistentTable(format!(
                "E_{} w_{} -> w_{} does not raise the weight by alpha_{}",
                a.i, a.from, a.to, a.i
            )));
        }
    }
    for a in &tables.lowering {
        if weights[a.from] != weights[a.to].add(&cartan.finite_root(a.i)) {
            return Err(Error::InconsistentTable(format!(
                "F_{} w_{} -> w_{} does not lower the weight by alpha_{}",
                a.i, a.from, a.to, a.i
            )));
        }
    }
    let distinct: BTreeSet<_> = weights.iter().collect();
    if distinct.len() != weights.len() {
        return Err(Error::InconsistentTable("repeated weight; weight spaces must be 1-dimensional".into()));
    }
    Ok(weights)
}

/// An `i`-string: basis indices from the top (highest weight) down.
#[derive(Clone, Debug)]
struct IString {
    node: usize,
    chain: Vec<usize>,
}

fn strings(tables: &ActionTables) -> Result<Vec<IString>> {
    let mut out = Vec::new();
    for node in 0..=tables.rank {
        let arrows: Vec<&Arrow> = tables.raising().filter(|a| a.i == node).collect();
        let mut up: BTreeMap<usize, usize> = BTreeMap::new();
        let mut has_below = BTreeSet::new();
        for a in &arrows {
            if up.insert(a.from, a.to).is_some() || !has_below.insert(a.to) {
                return Err(Error::InconsistentTable(format!(
                    "E_{node} has two arrows at one vertex near w_{}",
                    a.from
                )));
            }
        }
        for &bottom in up.keys().filter(|v| !has_below.contains(v)) {
            let mut chain = vec![bottom];
            let mut v = bottom;
            while let Some(&w) = up.get(&v) {
                if chain.contains(&w) {
                    return Err(Error::InconsistentTable(format!("E_{node} acts cyclically")));
                }
                chain.push(w);
                v = w;
            }
            chain.reverse();
            out.push(IString { node, chain });
        }
        if out.iter().filter(|s| s.node == node).map(|s| s.chain.len() - 1).sum::<usize>() != arrows.len() {
            return Err(Error::InconsistentTable(format!("E_{node} acts cyclically")));
        }
    }
    Ok(out)
}

/// Solves every scalar not fixed by the defining arrows.
///
/// Raising scalars are propagated through the commuting squares `E_i E_j = E_j E_i`
/// (`a_ij = 0`); if some remain undetermined the first one is fixed through its
/// lowering partner (default value 1). Lowering scalars then follow from
/// `E F` on each string, using the `U_{q_i}(sl_2)` model `V(n)` of that string.
pub fn solve_scalars(tables: &ActionTables, cartan: &CartanData, opts: &SolveOptions) -> Result<ScalarAssignment> {
    let weights = assign_weights(tables, cartan)?;
    let strings = strings(tables)?;

    // Gauge-invariant product E*F on every edge, from the sl_2 models.
    let mut edge_product: BTreeMap<Arrow, LaurentPoly> = BTreeMap::new();
    for s in &strings {
        let n = (s.chain.len() - 1) as u32;
        let top_pairing = cartan.embed(&weights[s.chain[0]]).omega[s.node];
        if top_pairing != i64::from(n) {
            return Err(Error::InconsistentTable(format!(
                "{}-string through w_{} has length {} but top weight pairing {}",
                s.node,
                s.chain[0],
                n + 1,
                top_pairing
            )));
        }
        let model = build_sl2_at(n, cartan.q_exp(s.node));
        for k in 0..n as usize {
            let arrow = Arrow::new(s.node, s.chain[k + 1], s.chain[k]);
            edge_product.insert(arrow, model.edge_product(k));
        }
    }

    let lowering_set: BTreeSet<Arrow> = tables.lowering.iter().copied().collect();
    let expected: BTreeSet<Arrow> = tables.raising().map(|a| a.reversed()).collect();
    if lowering_set != expected {
        let missing: Vec<_> = expected.difference(&lowering_set).collect();
        let extra: Vec<_> = lowering_set.difference(&expected).collect();
        return Err(Error::InconsistentTable(format!(
            "lowering sparsity does not mirror raising sparsity (missing {missing:?}, extra {extra:?})"
        )));
    }

    let mut raising: BTreeMap<Arrow, Option<LaurentPoly>> = BTreeMap::new();
    for a in &tables.defining {
        raising.insert(*a, Some(LaurentPoly::one()));
    }
    for a in &tables.derived {
        raising.insert(*a, None);
    }
    let pins: BTreeMap<Arrow, LaurentPoly> = opts.pinned_lowering.iter().cloned().collect();
    let mut notes = Vec::new();

    loop {
        propagate_squares(cartan, &mut raising)?;
        let Some(free) = tables.derived.iter().find(|a| raising[*a].is_none()).copied() else {
            break;
        };
        let partner = free.reversed();
        let value = pins.get(&partner).cloned().unwrap_or_else(LaurentPoly::one);
        if value.is_zero() {
            return Err(Error::InconsistentTable(format!(
                "F_{} w_{} must be a nonzero multiple of w_{}",
                partner.i, partner.from, partner.to
            )));
        }
        let e = edge_product[&free].div_exact(&value).map_err(|_| {
            Error::InconsistentTable(format!("free scalar {value} is not compatible with E_{} w_{}", free.i, free.from))
        })?;
        notes.push(format!(
            "free parameter: F_{} w_{} = ({}) w_{}, hence E_{} w_{} = ({}) w_{}",
            partner.i, partner.from, value, partner.to, free.i, free.from, e, free.to
        ));
        raising.insert(free, Some(e));
    }

    let raising: BTreeMap<Arrow, LaurentPoly> =
        raising.into_iter().map(|(a, v)| (a, v.expect("all resolved"))).collect();
    let mut lowering = BTreeMap::new();
    for (a, e) in &raising {
        let f = edge_product[a]
            .div_exact(e)
            .map_err(|_| Error::InconsistentTable(format!("E_{} w_{} scalar {e} gives a non-Laurent F", a.i, a.from)))?;
        let partner = a.reversed();
        if let Some(p) = pins.get(&partner) {
            if *p != f {
                return Err(Error::InconsistentTable(format!(
                    "F_{} w_{} pinned to {p}, relations force {f}",
                    partner.i, partner.from
                )));
            }
        }
        lowering.insert(partner, f);
    }
    Ok(ScalarAssignment { raising, lowering, weights, notes })
}

/// Fills raising scalars from `E_i E_j w = E_j E_i w` when exactly one of the
/// four arrows of a commuting square is unknown; checks fully known squares.
fn propagate_squares(cartan: &CartanData, raising: &mut BTreeMap<Arrow, Option<LaurentPoly>>) -> Result<()> {
    let out: BTreeMap<(usize, usize), Arrow> = raising.keys().map(|a| ((a.i, a.from), *a)).collect();
    let mut progress = true;
    while progress {
        progress = false;
        for i in cartan.nodes() {
            for j in cartan.nodes() {
                if i >= j || cartan.a(i, j) != 0 {
                    continue;
                }
                for (&(node, v), &first_i) in out.iter().filter(|((n, _), _)| *n == i) {
                    debug_assert_eq!(node, i);
                    let (Some(&then_j), Some(&first_j)) = (out.get(&(j, first_i.to)), out.get(&(j, v))) else {
                        continue;
                    };
                    let Some(&then_i) = out.get(&(i, first_j.to)) else {
                        continue;
                    };
                    if then_j.to != then_i.to {
                        continue;
                    }
                    // e(first_i) e(then_j) = e(first_j) e(then_i)
                    let path_a = [first_i, then_j];
                    let path_b = [first_j, then_i];
                    let unknown: Vec<Arrow> =
                        path_a.iter().chain(&path_b).filter(|a| raising[*a].is_none()).copied().collect();
                    match unknown.len() {
                        0 => {
                            let pa = raising[&path_a[0]].clone().unwrap() * raising[&path_a[1]].clone().unwrap();
                            let pb = raising[&path_b[0]].clone().unwrap() * raising[&path_b[1]].clone().unwrap();
                            if pa != pb {
                                return Err(Error::InconsistentTable(format!(
                                    "E_{i} E_{j} and E_{j} E_{i} disagree on w_{v}"
                                )));
                            }
                        }
                        1 => {
                            let target = unknown[0];
                            let (same, other) = if path_a.contains(&target) { (path_a, path_b) } else { (path_b, path_a) };
                            let partner = if same[0] == target { same[1] } else { same[0] };
                            let rhs = raising[&other[0]].clone().unwrap() * raising[&other[1]].clone().unwrap();
                            let known = raising[&partner].clone().unwrap();
                            let value = rhs.div_exact(&known).map_err(|_| {
                                Error::InconsistentTable(format!("commuting square at w_{v} has no Laurent solution"))
                            })?;
                            if value.is_zero() {
                                return Err(Error::InconsistentTable(format!("E_{} w_{} forced to zero", target.i, target.from)));
                            }
                            raising.insert(target, Some(value));
                            progress = true;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(())
}

/// The natural-representation module with all scalars resolved.
#[derive(Clone, Debug)]
pub struct NatModule {
    pub cartan: CartanData,
    pub tables: ActionTables,
    pub weights: Vec<FiniteWeight>,
    /// `e[i]`, `f[i]` for `i in 0..=l`, as `dim x dim` matrices on `V`.
    pub e: Vec<Matrix>,
    pub f: Vec<Matrix>,
    pub scalars: ScalarAssignment,
}

pub fn build_natural(cartan: &CartanData) -> Result<NatModule> {
    build_natural_with(cartan, &SolveOptions::default())
}

pub fn build_natural_with(cartan: &CartanData, opts: &SolveOptions) -> Result<NatModule> {
    let tables = natural_tables(cartan);
    let scalars = solve_scalars(&tables, cartan, opts)?;
    let dim = tables.dim;
    let mut e = vec![Matrix::zeros(dim, dim); cartan.rank + 1];
    let mut f = vec![Matrix::zeros(dim, dim); cartan.rank + 1];
    for (a, s) in &scalars.raising {
        e[a.i].set(a.to, a.from, s.clone());
    }
    for (a, s) in &scalars.lowering {
        f[a.i].set(a.to, a.from, s.clone());
    }
    Ok(NatModule { cartan: cartan.clone(), weights: scalars.weights.clone(), tables, e, f, scalars })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
    D,
    DInv,
    CHalf,
    CHalfInv,
}

impl Generator {
    /// `t`-degree of the generator.
    pub fn degree(self) -> i64 {
        match self {
            Generator::E(0) => 1,
            Generator::F(0) => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "E_{i}"),
            Generator::F(i) => write!(f, "F_{i}"),
            Generator::K(i) => write!(f, "K_{i}"),
            Generator::KInv(i) => write!(f, "K_{i}^-1"),
            Generator::D => f.write_str("D"),
            Generator::DInv => f.write_str("D^-1"),
            Generator::CHalf => f.write_str("C^1/2"),
            Generator::CHalfInv => f.write_str("C^-1/2"),
        }
    }
}

/// A finitely supported element `sum c_{j,n} w_j t^n` of the loop module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoopVector {
    terms: BTreeMap<(usize, i64), LaurentPoly>,
}

impl LoopVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `w_j t^n`.
    pub fn basis(j: usize, n: i64) -> Self {
        let mut v = Self::zero();
        v.add_term(j, n, LaurentPoly::one());
        v
    }

    pub fn add_term(&mut self, j: usize, n: i64, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let key = (j, n);
        let slot = self.terms.entry(key).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &LaurentPoly) {
        for (&(j, n), x) in &other.terms {
            self.add_term(j, n, x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, j: usize, n: i64) -> LaurentPoly {
        self.terms.get(&(j, n)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64, &LaurentPoly)> {
        self.terms.iter().map(|(&(j, n), c)| (j, n, c))
    }

    pub fn t_exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().map(|&(_, n)| n)
    }
}

impl fmt::Display for LoopVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(j, n, c)| format!("({c}) w_{j} t^{n}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl NatModule {
    pub fn dim(&self) -> usize {
        self.tables.dim
    }

    pub fn family(&self) -> Family {
        self.cartan.family
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    /// Exponent `e` with `K_i w_j = q^e w_j`. For `i = 0` this is the value
    /// forced by `K_0 prod_{i in I} K_i^{a_i} = 1`.
    pub fn k_exponent(&self, i: usize, j: usize) -> i64 {
        let w = &self.weights[j];
        if i == 0 {
            -self
                .cartan
                .finite_nodes()
                .map(|k| self.cartan.marks[k] * self.cartan.d[k] * w.pairing(k))
                .sum::<i64>()
        } else {
            self.cartan.d[i] * w.pairing(i)
        }
    }

    pub fn k_matrix(&self, i: usize) -> Matrix {
        Matrix::diagonal((0..self.dim()).map(|j| LaurentPoly::q_pow(self.k_exponent(i, j))).collect())
    }

    pub fn k_inv_matrix(&self, i: usize) -> Matrix {
        Matrix::diagonal((0..self.dim()).map(|j| LaurentPoly::q_pow(-self.k_exponent(i, j))).collect())
    }

    /// Basis index of the weight `mu`, if it is a weight of `V`.
    pub fn index_of_weight(&self, mu: &FiniteWeight) -> Option<usize> {
        self.weights.iter().position(|w| w == mu)
    }

    pub fn act(&self, g: Generator, v: &LoopVector) -> LoopVector {
        let mut out = LoopVector::zero();
        let shift = g.degree();
        for (j, n, c) in v.terms() {
            match g {
                Generator::E(i) | Generator::F(i) => {
                    let m = if matches!(g, Generator::E(_)) { &self.e[i] } else { &self.f[i] };
                    for r in 0..self.dim() {
                        let x = m.get(r, j);
                        if !x.is_zero() {
                            out.add_term(r, n + shift, c * x);
                        }
                    }
                }
                Generator::K(i) => out.add_term(j, n, c.shift(self.k_exponent(i, j))),
                Generator::KInv(i) => out.add_term(j, n, c.shift(-self.k_exponent(i, j))),
                Generator::D => out.add_term(j, n, c.shift(n)),
                Generator::DInv => out.add_term(j, n, c.shift(-n)),
                Generator::CHalf | Generator::CHalfInv => out.add_term(j, n, c.clone()),
            }
        }
        out
    }

    /// Applies `g_1 g_2 ... g_k` (rightmost first).
    pub fn act_word(&self, word: &[Generator], v: &LoopVector) -> LoopVector {
        word.iter().rev().fold(v.clone(), |acc, &g| self.act(g, &acc))
    }

    /// Zeroes the lowering operator `F_i`; used for negative controls.
    pub fn zero_lowering(&mut self, i: usize) {
        self.f[i] = Matrix::zeros(self.dim(), self.dim());
    }
}

// --- relations -----------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationKind {
    /// `C = K_0 prod K_i^{a_i}` acts as 1.
    LevelZero,
    /// `C^{1/2}` commutes with the `E_i`, `F_i`.
    CentralHalf,
    /// `K_i K_j = K_j K_i`, `K_i K_i^-1 = 1`, `D K_i = K_i D`.
    CartanCommute,
    /// `K_i E_j K_i^-1 = q_i^{a_ij} E_j`.
    KE,
    KF,
    /// `D E_j D^-1 = q^{delta_j0} E_j`.
    DE,
    DF,
    /// `[E_i, F_j] = delta_ij (K_i - K_i^-1) / (q_i - q_i^-1)`.
    EF,
    SerreE,
    SerreF,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationId {
    pub kind: RelationKind,
    pub i: Option<usize>,
    pub j: Option<usize>,
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        match (self.i, self.j) {
            (Some(i), Some(j)) => write!(f, "({i},{j})"),
            (Some(i), None) => write!(f, "({i})"),
            _ => Ok(()),
        }
    }
}

/// `sum_k c_k word_k = 0`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: RelationId,
    pub terms: Vec<(LaurentPoly, Vec<Generator>)>,
}

fn rel(kind: RelationKind, i: Option<usize>, j: Option<usize>, terms: Vec<(LaurentPoly, Vec<Generator>)>) -> Relation {
    Relation { id: RelationId { kind, i, j }, terms }
}

/// Every defining relation instance of the Chevalley-type presentation.
pub fn relation_instances(cartan: &CartanData) -> Result<Vec<Relation>> {
    use Generator::*;
    use RelationKind as R;
    let one = LaurentPoly::one;
    let neg_one = || LaurentPoly::from_int(-1);
    let mut out = Vec::new();

    let mut c_word = vec![K(0)];
    for i in cartan.finite_nodes() {
        c_word.extend(std::iter::repeat_n(K(i), cartan.marks[i] as usize));
    }
    out.push(rel(R::LevelZero, None, None, vec![(one(), c_word), (neg_one(), vec![])]));

    for i in cartan.nodes() {
        out.push(rel(R::CentralHalf, Some(i), None, vec![(one(), vec![CHalf, E(i)]), (neg_one(), vec![E(i), CHalf])]));
        out.push(rel(
            R::CartanCommute,
            Some(i),
            None,
            vec![(one(), vec![K(i), KInv(i)]), (neg_one(), vec![]), (one(), vec![D, K(i), DInv]), (neg_one(), vec![K(i)])],
        ));
        for j in cartan.nodes() {
            let qi = i64::from(cartan.q_exp(i));
            let aij = cartan.a(i, j);
            if i < j {
                out.push(rel(R::CartanCommute, Some(i), Some(j), vec![(one(), vec![K(i), K(j)]), (neg_one(), vec![K(j), K(i)])]));
            }
            out.push(rel(R::KE, Some(i), Some(j), vec![(one(), vec![K(i), E(j), KInv(i)]), (-LaurentPoly::q_pow(qi * aij), vec![E(j)])]));
            out.push(rel(R::KF, Some(i), Some(j), vec![(one(), vec![K(i), F(j), KInv(i)]), (-LaurentPoly::q_pow(-qi * aij), vec![F(j)])]));

            let qq = LaurentPoly::q_pow(qi) - LaurentPoly::q_pow(-qi);
            let mut ef = vec![(qq.clone(), vec![E(i), F(j)]), (-qq, vec![F(j), E(i)])];
            if i == j {
                ef.push((neg_one(), vec![K(i)]));
                ef.push((one(), vec![KInv(i)]));
            }
            out.push(rel(R::EF, Some(i), Some(j), ef));

            if i != j {
                let order = (1 - aij) as u32;
                let mut serre_e = Vec::new();
                let mut serre_f = Vec::new();
                for r in 0..=order {
                    let c = qbinom(order, r, cartan.q_exp(i))?;
                    let c = if r % 2 == 1 { -c } else { c };
                    let word = |x: fn(usize) -> Generator| {
                        let mut w = vec![x(i); r as usize];
                        w.push(x(j));
                        w.extend(std::iter::repeat_n(x(i), (order - r) as usize));
                        w
                    };
                    serre_e.push((c.clone(), word(E)));
                    serre_f.push((c, word(F)));
                }
                out.push(rel(R::SerreE, Some(i), Some(j), serre_e));
                out.push(rel(R::SerreF, Some(i), Some(j), serre_f));
            }
        }
        let deg = i64::from(i == 0);
        out.push(rel(R::DE, Some(i), None, vec![(one(), vec![D, E(i), DInv]), (-LaurentPoly::q_pow(deg), vec![E(i)])]));
        out.push(rel(R::DF, Some(i), None, vec![(one(), vec![D, F(i), DInv]), (-LaurentPoly::q_pow(-deg), vec![F(i)])]));
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub id: String,
    pub passed: bool,
    /// Basis vectors `w_j t^n` on which the identity was compared.
    pub checked: usize,
    /// Basis vectors skipped because some word leaves the window.
    pub excluded: usize,
    /// First few basis vectors where the identity failed.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub family: Family,
    pub rank: usize,
    pub window: (i64, i64),
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Applies a word, returning `None` as soon as an intermediate image has a
/// `t`-exponent outside `[lo, hi]`.
fn act_word_windowed(m: &NatModule, word: &[Generator], v: &LoopVector, lo: i64, hi: i64) -> Option<LoopVector> {
    let mut acc = v.clone();
    for &g in word.iter().rev() {
        acc = m.act(g, &acc);
        if acc.t_exponents().any(|n| n < lo || n > hi) {
            return None;
        }
    }
    Some(acc)
}

pub fn check_relation(m: &NatModule, relation: &Relation, lo: i64, hi: i64) -> RelationCheck {
    let mut checked = 0;
    let mut excluded = 0;
    let mut failures = Vec::new();
    for n in lo..=hi {
        'basis: for j in 0..m.dim() {
            let v = LoopVector::basis(j, n);
            let mut total = LoopVector::zero();
            for (c, word) in &relation.terms {
                match act_word_windowed(m, word, &v, lo, hi) {
                    Some(image) => total.add_scaled(&image, c),
                    None => {
                        excluded += 1;
                        continue 'basis;
                    }
                }
            }
            checked += 1;
            if !total.is_zero() && failures.len() < 4 {
                failures.push(format!("w_{j} t^{n} -> {total}"));
            }
        }
    }
    RelationCheck { id: relation.id.to_string(), passed: failures.is_empty(), checked, excluded, failures }
}

/// Checks every relation instance on `{w_j t^n : lo <= n <= hi}` exactly.
pub fn verify_relations(m: &NatModule, lo: i64, hi: i64) -> Result<RelationReport> {
    if hi - lo + 1 < 3 {
        return Err(Error::Domain(format!("window [{lo},{hi}] must contain at least 3 exponents")));
    }
    let checks = relation_instances(&m.cartan)?
        .iter()
        .map(|r| check_relation(m, r, lo, hi))
        .collect();
    Ok(RelationReport { family: m.family(), rank: m.rank(), window: (lo, hi), checks })
}

// --- degree function and first-layer dimensions ---------------------------

/// Minimal number of `E_0` arrows on a walk from `w_0` to each `w_j` through
/// nonzero raising arrows.
pub fn n_values(m: &NatModule) -> Result<Vec<u32>> {
    let dim = m.dim();
    let mut dist: Vec<Option<u32>> = vec![None; dim];
    let mut queue = VecDeque::from([(0usize, 0u32)]);
    let mut settled = vec![false; dim];
    dist[0] = Some(0);
    // 0-1 BFS.
    while let Some((v, d)) = queue.pop_front() {
        if settled[v] {
            continue;
        }
        settled[v] = true;
        for i in m.cartan.nodes() {
            for (r, _, _) in m.e[i].nonzero().filter(|&(_, c, _)| c == v) {
                let nd = d + u32::from(i == 0);
                if dist[r].is_none_or(|old| nd < old) {
                    dist[r] = Some(nd);
                    if i == 0 {
                        queue.push_back((r, nd));
                    } else {
                        queue.push_front((r, nd));
                    }
                }
            }
        }
    }
    dist.into_iter().enumerate().map(|(j, d)| d.ok_or(Error::Unreachable(j))).collect()
}

pub fn n_of(m: &NatModule, j: usize) -> Result<u32> {
    if j >= m.dim() {
        return Err(Error::Domain(format!("basis index {j} out of range")));
    }
    Ok(n_values(m)?[j])
}

/// `dim V_{varpi_1 - alpha_i}` for each finite node `i` (index 0 unused).
pub fn first_layer_dims(m: &NatModule) -> Vec<usize> {
    let top = FiniteWeight::fundamental(m.rank(), 1);
    let mut dims = vec![0; m.rank() + 1];
    for i in m.cartan.finite_nodes() {
        let mu = top.add(&m.cartan.finite_root(i).neg());
        dims[i] = m.weights.iter().filter(|w| **w == mu).count();
    }
    dims
}

/// `dim V_{w0 varpi_1 + alpha_i}` for each finite node `i` (index 0 unused).
pub fn last_layer_dims(m: &NatModule) -> Vec<usize> {
    let low = m.cartan.lowest_weight_in_orbit(&FiniteWeight::fundamental(m.rank(), 1));
    let mut dims = vec![0; m.rank() + 1];
    for i in m.cartan.finite_nodes() {
        let mu = low.add(&m.cartan.finite_root(i));
        dims[i] = m.weights.iter().filter(|w| **w == mu).count();
    }
    dims
}

fn min_nonzero(dims: &[usize]) -> usize {
    dims.iter().copied().filter(|&d| d > 0).min().unwrap_or(0)
}

/// `k = min_i { dim V_{varpi_1 - alpha_i} : nonzero }`.
pub fn k_of_natural(m: &NatModule) -> usize {
    min_nonzero(&first_layer_dims(m))
}

/// The same minimum taken over `w0 varpi_1 + alpha_i`.
pub fn k_star_of_natural(m: &NatModule) -> usize {
    min_nonzero(&last_layer_dims(m))
}

/// Numerical data attached to the Drinfeld polynomials of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiData {
    pub lambda_pi: FiniteWeight,
    pub k: usize,
    pub m: usize,
    pub n_pi: u32,
    /// `lambda_pi(theta^vee)`.
    pub theta_pairing: i64,
}

// --- structural checks ------------------------------------------------------

/// `E_i^{p} = F_i^{p} = 0` with `p = 2`, or `p = 3` for the short node of type B.
pub fn nilpotency_violations(m: &NatModule) -> Vec<String> {
    let mut out = Vec::new();
    for i in m.cartan.nodes() {
        let p = if m.family() == Family::B && i == m.rank() { 3 } else { 2 };
        if !m.e[i].pow(p).is_zero() {
            out.push(format!("E_{i}^{p} != 0"));
        }
        if !m.f[i].pow(p).is_zero() {
            out.push(format!("F_{i}^{p} != 0"));
        }
        if p == 3 && (m.e[i].pow(2).is_zero() || m.f[i].pow(2).is_zero()) {
            out.push(format!("{i}-string is expected to be 3-dimensional"));
        }
    }
    out
}

/// `E_0^{p+1} = F_0^{p+1} = 0` with `p = varpi_1(theta^vee)` from the root data.
pub fn affine_nilpotency_violations(m: &NatModule) -> Vec<String> {
    let p = m.cartan.theta_coroot_pairing(&FiniteWeight::fundamental(m.rank(), 1));
    let k = (p + 1) as u32;
    let mut out = Vec::new();
    if !m.e[0].pow(k).is_zero() {
        out.push(format!("E_0^{k} != 0"));
    }
    if !m.f[0].pow(k).is_zero() {
        out.push(format!("F_0^{k} != 0"));
    }
    out
}

/// The bounds `n(E_i w) <= n(w)`, `n(E_0 w) <= n(w) + 1`, `n(F_0 w) <= n(w) - 1`,
/// `n(F_i w) <= n(w) + dim V_{varpi_1 - alpha_i}` on every basis vector.
pub fn degree_bound_violations(m: &NatModule) -> Result<Vec<String>> {
    let n = n_values(m)?;
    let dims = first_layer_dims(m);
    let mut out = Vec::new();
    for j in 0..m.dim() {
        let nj = i64::from(n[j]);
        for i in m.cartan.nodes() {
            for (kind, mat) in [("E", &m.e[i]), ("F", &m.f[i])] {
                let bound = match (kind, i) {
                    ("E", 0) => nj + 1,
                    ("E", _) => nj,
                    ("F", 0) => nj - 1,
                    _ => nj + dims[i] as i64,
                };
                for (r, _, _) in mat.nonzero().filter(|&(_, c, _)| c == j) {
                    if i64::from(n[r]) > bound {
                        out.push(format!("n({kind}_{i} w_{j}) = n(w_{r}) = {} > {bound}", n[r]));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The matrix of `K_0 prod_{i in I} K_i^{a_i}` on `V`.
pub fn central_element_matrix(m: &NatModule) -> Matrix {
    let mut acc = m.k_matrix(0);
    for i in m.cartan.finite_nodes() {
        acc = &acc * &m.k_matrix(i).pow(m.cartan.marks[i] as u32);
    }
    acc
}

/// The multiset of weights is stable under the finite Weyl group.
pub fn character_is_weyl_invariant(m: &NatModule) -> bool {
    let weights: BTreeSet<_> = m.weights.iter().cloned().collect();
    weights.iter().all(|w| m.cartan.weyl_orbit(w).is_subset(&weights))
}

/// Type D: `E_l w_{l-1}` and `E_{l-1} w_l` are the same nonzero vector.
pub fn double_definition_holds(m: &NatModule) -> bool {
    if m.family() != Family::D {
        return true;
    }
    let l = m.rank();
    let a = m.e[l].get(l + 1, l - 1);
    let b = m.e[l - 1].get(l + 1, l);
    !a.is_zero() && a == b
}

// --- JSON -------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub i: usize,
    pub from: usize,
    pub to: usize,
    pub scalar: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesJson {
    pub family: Family,
    pub rank: usize,
    #[serde(rename = "E")]
    pub e: Vec<ArrowJson>,
    #[serde(rename = "F")]
    pub f: Vec<ArrowJson>,
}

pub fn tables_json(m: &NatModule) -> TablesJson {
    let collect = |mats: &[Matrix]| {
        let mut v = Vec::new();
        for (i, mat) in mats.iter().enumerate() {
            for (to, from, s) in mat.nonzero() {
                v.push(ArrowJson { i, from, to, scalar: s.clone() });
            }
        }
        v.sort_by_key(|a| (a.i, a.from, a.to));
        v
    };
    TablesJson { family: m.family(), rank: m.rank(), e: collect(&m.e), f: collect(&m.f) }
}
