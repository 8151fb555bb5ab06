use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::engine::Engine;
use super::{lift_with, minimal_generators, syzygies_graded, FreeModuleVector};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn new() -> BettiTable {
        BettiTable::default()
    }

    pub fn add(&mut self, i: usize, j: i64, count: usize) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, v)| v)
            .sum()
    }

    /// `β_0, β_1, …` up to the last nonzero index.
    pub fn totals(&self) -> Vec<usize> {
        match self.max_index() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|i| self.total(i)).collect(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.entries.keys().map(|k| k.1).max()
    }

    pub fn degrees(&self, i: usize) -> Vec<i64> {
        self.entries
            .keys()
            .filter(|k| k.0 == i)
            .map(|k| k.1)
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// `Σ_{i,j} (−1)^i β_{i,j} t^j` as a map from `j` to coefficient.
    pub fn hilbert_numerator(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (&(i, j), &v) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(j).or_insert(0) += sign * v as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// The same table with homological index lowered by `by`, dropping
    /// indices below `by`.
    pub fn shifted_down(&self, by: usize) -> BettiTable {
        let mut out = BettiTable::new();
        for (&(i, j), &v) in &self.entries {
            if i >= by {
                out.add(i - by, j, v);
            }
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j), v)| format!("b[{},{}]={}", i, j, v))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A graded free resolution `… → F_2 → F_1 → F_0 = S` of `S/a`.
///
/// `differential(i)` lists the columns of `φ_i : F_i → F_{i-1}`, i.e. the
/// images of the basis of `F_i`.
#[derive(Clone)]
pub struct Resolution {
    ring: Ring,
    degrees: Vec<Vec<i64>>,
    differentials: Vec<Vec<FreeModuleVector>>,
    lifters: Vec<Arc<Engine>>,
    betti: BettiTable,
    complete: bool,
}

impl Resolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn betti(&self) -> &BettiTable {
        &self.betti
    }

    /// Number of computed differentials.
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    /// True when the last computed module has no syzygies, so the
    /// resolution is finished rather than truncated.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Generator degrees of `F_i`.
    pub fn degrees(&self, i: usize) -> &[i64] {
        self.degrees.get(i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees(i).len()
    }

    /// Columns of `φ_i` for `1 ≤ i ≤ length`.
    pub fn differential(&self, i: usize) -> &[FreeModuleVector] {
        assert!(i >= 1 && i <= self.differentials.len(), "differential index");
        &self.differentials[i - 1]
    }

    /// Matrix entry `(row, col)` of `φ_i`.
    pub fn entry(&self, i: usize, row: usize, col: usize) -> Polynomial {
        self.differential(i)[col].component(row)
    }

    /// Solves `φ_i(c) = v` for `v ∈ F_{i-1}`.
    pub fn lift(&self, i: usize, v: &FreeModuleVector) -> Option<FreeModuleVector> {
        if i == 0 || i > self.lifters.len() {
            return None;
        }
        lift_with(&self.lifters[i - 1], v)
    }

    /// `φ_i ∘ φ_{i+1} = 0` for every computed pair.
    pub fn is_complex(&self) -> bool {
        (1..self.differentials.len()).all(|i| {
            let prev = self.differential(i);
            let rank = self.rank(i - 1);
            self.differential(i + 1)
                .iter()
                .all(|c| c.apply(prev, rank).is_zero())
        })
    }

    /// No matrix entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().flatten().all(|c| {
            c.terms().iter().all(|(_, m, _)| !m.is_one())
        })
    }
}

/// Minimal graded free resolution of `S/a` where `a` is generated by the
/// homogeneous `generators`, through homological degree `max_index`.
pub fn minimal_graded_resolution(ring: &Ring, generators: &[Polynomial], max_index: usize) -> Result<Resolution> {
    for g in generators {
        if !crate::poly::same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
        if !g.is_zero() && g.homogeneous_degree().is_none() {
            return Err(Error::Inhomogeneous(g.to_string()));
        }
    }
    let vectors: Vec<FreeModuleVector> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(FreeModuleVector::from_polynomial)
        .collect();
    let mut columns = minimal_generators(&vectors, &[0]);
    if columns.iter().any(|c| c.degree(&[0]) == Some(0)) {
        return Err(Error::UnitIdeal("minimal_graded_resolution"));
    }
    let mut betti = BettiTable::new();
    betti.add(0, 0, 1);
    let mut degrees = vec![vec![0i64]];
    let mut differentials = Vec::new();
    let mut lifters = Vec::new();
    let mut complete = false;
    let mut i = 1;
    while i <= max_index {
        if columns.is_empty() {
            complete = true;
            break;
        }
        let target = degrees[i - 1].clone();
        let source: Vec<i64> = columns
            .iter()
            .map(|c| c.degree(&target).expect("homogeneous column"))
            .collect();
        for &d in &source {
            betti.add(i, d, 1);
        }
        let (syz, engine) = syzygies_graded(&columns, &target);
        degrees.push(source);
        differentials.push(columns);
        lifters.push(Arc::new(engine));
        columns = syz;
        i += 1;
    }
    if columns.is_empty() {
        complete = true;
    }
    Ok(Resolution {
        ring: ring.clone(),
        degrees,
        differentials,
        lifters,
        betti,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingSpec;

    fn mons(r: &Ring, exps: &[&[u32]]) -> Vec<Polynomial> {
        exps.iter().map(|e| Polynomial::from_exponents(r, &[(1, e)])).collect()
    }

    #[test]
    fn koszul_resolution_of_variables() {
        let r = RingSpec::rational(&["x", "y"]);
        let res = minimal_graded_resolution(&r, &mons(&r, &[&[1, 0], &[0, 1]]), 3).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 2, 1]);
        assert!(res.is_complete());
        assert!(res.is_complex());
        assert!(res.is_minimal());
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = RingSpec::rational(&["x", "y"]);
        let res = minimal_graded_resolution(&r, &mons(&r, &[&[2, 0], &[1, 1], &[0, 2]]), 3).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 3, 2]);
        assert_eq!(res.betti().get(1, 2), 3);
        assert_eq!(res.betti().get(2, 3), 2);
        let num = res.betti().hilbert_numerator();
        assert_eq!(num.into_iter().collect::<Vec<_>>(), vec![(0, 1), (2, -3), (3, 2)]);
    }

    #[test]
    fn regular_sequence_of_squares() {
        let r = RingSpec::rational(&["x", "y"]);
        let res = minimal_graded_resolution(&r, &mons(&r, &[&[2, 0], &[0, 2]]), 3).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 2, 1]);
        assert_eq!(res.betti().get(2, 4), 1);
    }

    #[test]
    fn redundant_generators_are_pruned() {
        let r = RingSpec::rational(&["x", "y", "z"]);
        let mut gens = mons(&r, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        gens.push(Polynomial::from_exponents(&r, &[(1, &[1, 0, 0]), (1, &[0, 1, 0])]));
        let res = minimal_graded_resolution(&r, &gens, 4).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 2, 1]);
        assert!(res.is_minimal());
    }

    #[test]
    fn lift_recovers_boundaries() {
        let r = RingSpec::rational(&["x", "y", "z"]);
        let res = minimal_graded_resolution(&r, &mons(&r, &[&[2, 0, 0], &[1, 1, 0], &[0, 1, 1]]), 3).unwrap();
        let col = &res.differential(2)[0];
        let doubled = col.try_add(col).unwrap();
        let c = res.lift(2, &doubled).unwrap();
        assert_eq!(c.apply(res.differential(2), res.rank(1)), doubled);
    }
}
