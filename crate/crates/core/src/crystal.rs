//! The crystal graph of the natural representation and the count of
//! `Lambda`-dominant basis elements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::natmod::NatModule;
use crate::rootdata::{is_dominant, AffineWeight, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrystalEdge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalGraph {
    pub vertices: usize,
    pub edges: Vec<CrystalEdge>,
}

/// An `i`-labelled edge `j -> j'` wherever `E_i w_j` is a nonzero multiple of `w_j'`.
pub fn crystal_graph(m: &NatModule) -> CrystalGraph {
    let mut edges = Vec::new();
    for (label, mat) in m.e.iter().enumerate() {
        for (to, from, _) in mat.nonzero() {
            edges.push(CrystalEdge { from, to, label });
        }
    }
    edges.sort();
    CrystalGraph { vertices: m.dim(), edges }
}

impl CrystalGraph {
    /// Every vertex has at most one outgoing and one incoming edge per label.
    pub fn degrees_are_valid(&self) -> bool {
        let mut out = BTreeSet::new();
        let mut inc = BTreeSet::new();
        self.edges.iter().all(|e| out.insert((e.from, e.label)) && inc.insert((e.to, e.label)))
    }

    /// Connected as an undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.from).or_default().push(e.to);
            adj.entry(e.to).or_default().push(e.from);
        }
        let mut seen = BTreeSet::from([0]);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices
    }

    /// A single directed cycle through every vertex.
    pub fn is_single_cycle(&self) -> bool {
        if self.edges.len() != self.vertices {
            return false;
        }
        let next: BTreeMap<usize, usize> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        if next.len() != self.vertices {
            return false;
        }
        let mut v = 0;
        for step in 1..=self.vertices {
            v = next[&v];
            if v == 0 {
                return step == self.vertices;
            }
        }
        false
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for v in 0..self.vertices {
            let _ = writeln!(s, "  w{v} [label=\"w_{v}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  w{} -> w{} [label=\"{}\"];", e.from, e.to, e.label);
        }
        s.push_str("}\n");
        s
    }
}

/// Number of basis vectors `w_j` with `Lambda + wt(w_j)` dominant, where in
/// type B the zero-weight vector is dropped when `Lambda(alpha_l^vee) = 0`.
pub fn lambda_dominant_count(m: &NatModule, lambda: &AffineWeight) -> Result<usize> {
    m.cartan.check_weight_rank(lambda)?;
    if !is_dominant(lambda) {
        return Err(Error::Domain(format!("Lambda = {:?} is not dominant", lambda.omega)));
    }
    if lambda.is_multiple_of_delta() {
        return Err(Error::NotCovered("Lambda is a multiple of delta".into()));
    }
    let skip_zero = m.family() == Family::B && lambda.omega[m.rank()] == 0;
    Ok((0..m.dim())
        .filter(|&j| {
            let w = &m.weights[j];
            let shifted: Vec<i64> = m.cartan.embed(w).omega.iter().zip(&lambda.omega).map(|(a, b)| a + b).collect();
            shifted.iter().all(|&c| c >= 0) && !(skip_zero && w.is_zero())
        })
        .count())
}
