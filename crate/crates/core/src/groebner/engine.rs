//! Incremental Buchberger engine for submodules of free modules.
//!
//! Components `track..rank` carry the module itself; the components below
//! record how each element was built from the inputs. Because the order is
//! position-over-term with the main block on top, an element whose main part
//! reduces to zero is a pure tracking vector, i.e. a syzygy of the inputs.
//! Such elements are collected instead of joining the basis.
//!
//! Work is scheduled by sugar degree, so for homogeneous inputs
//! [`Engine::complete_through`] yields a basis that is correct up to a given
//! degree; later inputs of higher degree may still be added.

use super::vector::{term_cmp, FreeModuleVector};
use crate::poly::{Monomial, Ring};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: i64,
}

#[derive(Clone, Debug)]
struct Element {
    vec: FreeModuleVector,
    sugar: i64,
}

#[derive(Clone)]
pub(crate) struct Engine {
    ring: Ring,
    rank: usize,
    track: usize,
    shifts: Vec<i64>,
    weights: Vec<i64>,
    product_criterion: bool,
    basis: Vec<Element>,
    // active reducers per component
    reducers: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    pending: Vec<Element>,
    syzygies: Vec<FreeModuleVector>,
}

impl Engine {
    /// `shifts` has one entry per component, tracking components first.
    pub(crate) fn new(ring: &Ring, track: usize, shifts: Vec<i64>) -> Engine {
        let rank = shifts.len();
        assert!(track <= rank);
        Engine {
            ring: ring.clone(),
            rank,
            track,
            shifts,
            weights: vec![1; ring.num_vars()],
            // only sound for ideals without tracking
            product_criterion: rank == 1 && track == 0,
            basis: Vec::new(),
            reducers: vec![Vec::new(); rank - track],
            pairs: Vec::new(),
            pending: Vec::new(),
            syzygies: Vec::new(),
        }
    }

    /// Per-variable weights for the sugar degree; used to keep elimination
    /// computations graded by giving the auxiliary variable weight zero.
    pub(crate) fn with_weights(mut self, weights: Vec<i64>) -> Engine {
        assert_eq!(weights.len(), self.ring.num_vars());
        self.weights = weights;
        self
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    pub(crate) fn track(&self) -> usize {
        self.track
    }

    pub(crate) fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    fn mono_weight(&self, m: &Monomial) -> i64 {
        m.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    fn sugar_of(&self, v: &FreeModuleVector) -> i64 {
        v.terms()
            .iter()
            .map(|(i, m, _)| self.mono_weight(m) + self.shifts[*i])
            .max()
            .unwrap_or(i64::MIN)
    }

    pub(crate) fn add_generator(&mut self, v: FreeModuleVector) {
        assert_eq!(v.rank(), self.rank, "generator rank");
        if v.is_zero() {
            return;
        }
        let sugar = self.sugar_of(&v);
        self.pending.push(Element { vec: v, sugar });
    }

    /// Smallest sugar among outstanding work.
    pub(crate) fn next_degree(&self) -> Option<i64> {
        let a = self.pending.iter().map(|e| e.sugar).min();
        let b = self.pairs.iter().map(|p| p.sugar).min();
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    /// Processes all generators and pairs of sugar at most `bound`
    /// (everything if `None`).
    pub(crate) fn complete_through(&mut self, bound: Option<i64>) {
        while let Some(deg) = self.next_degree() {
            if matches!(bound, Some(b) if deg > b) {
                break;
            }
            self.process_degree(deg);
        }
    }

    fn process_degree(&mut self, deg: i64) {
        let order = self.ring.order();
        // inputs first, in insertion order
        let (now, later): (Vec<_>, Vec<_>) = std::mem::take(&mut self.pending)
            .into_iter()
            .partition(|e| e.sugar == deg);
        self.pending = later;
        for e in now {
            self.reduce_and_insert(e.vec, e.sugar);
        }
        loop {
            let (mut now, later): (Vec<_>, Vec<_>) =
                std::mem::take(&mut self.pairs).into_iter().partition(|p| p.sugar == deg);
            self.pairs = later;
            if now.is_empty() {
                break;
            }
            now.sort_by(|a, b| order.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)));
            for p in now {
                let s = self.s_vector(&p);
                self.reduce_and_insert(s, p.sugar);
            }
        }
    }

    fn s_vector(&self, p: &Pair) -> FreeModuleVector {
        let (gi, gj) = (&self.basis[p.i].vec, &self.basis[p.j].vec);
        let (_, mi, ci) = gi.leading_term().expect("nonzero");
        let (_, mj, cj) = gj.leading_term().expect("nonzero");
        let qi = mi.quotient_of(&p.lcm).expect("lcm");
        let qj = mj.quotient_of(&p.lcm).expect("lcm");
        let zero = FreeModuleVector::zero(&self.ring, self.rank);
        let a = zero.add_term_multiple(&ci.inverse().expect("nonzero"), &qi, gi);
        a.add_term_multiple(&(-&cj.inverse().expect("nonzero")), &qj, gj)
    }

    fn find_reducer(&self, comp: usize, m: &Monomial) -> Option<usize> {
        self.reducers[comp - self.track].iter().copied().find(|&k| {
            let (_, lm, _) = self.basis[k].vec.leading_term().expect("nonzero");
            lm.divides(m)
        })
    }

    /// Reduces every term in the main block. Tracking terms are never
    /// reducible since all reducers lead in the main block.
    pub(crate) fn reduce(&self, v: &FreeModuleVector) -> FreeModuleVector {
        let mut v = v.clone();
        let mut pos = 0;
        while pos < v.terms().len() {
            let (comp, m, c) = v.terms()[pos].clone();
            if comp < self.track {
                break;
            }
            match self.find_reducer(comp, &m) {
                Some(k) => {
                    let g = &self.basis[k].vec;
                    let (_, lm, lc) = g.leading_term().expect("nonzero");
                    let q = lm.quotient_of(&m).expect("divides");
                    let coef = -&(&c * &lc.inverse().expect("nonzero"));
                    v = v.add_term_multiple(&coef, &q, g);
                }
                None => pos += 1,
            }
        }
        v
    }

    fn reduce_and_insert(&mut self, v: FreeModuleVector, sugar: i64) {
        let r = self.reduce(&v);
        match r.leading_term() {
            None => {}
            Some((comp, _, _)) if *comp < self.track => {
                self.syzygies.push(r.slice(0..self.track));
            }
            Some(_) => {
                let r = r.monic();
                self.insert(Element { vec: r, sugar });
            }
        }
    }

    fn lead(&self, k: usize) -> (usize, &Monomial) {
        let (c, m, _) = self.basis[k].vec.leading_term().expect("nonzero");
        (*c, m)
    }

    fn insert(&mut self, e: Element) {
        let t = self.basis.len();
        let (comp, lm_t) = {
            let (c, m, _) = e.vec.leading_term().expect("nonzero");
            (*c, m.clone())
        };
        let sugar_t = e.sugar;
        self.basis.push(e);

        // candidate pairs (i, t) with their lcm and coprimality
        let mut cands: Vec<(usize, Monomial, bool)> = self.reducers[comp - self.track]
            .iter()
            .map(|&i| {
                let lm_i = self.lead(i).1;
                (i, lm_i.lcm(&lm_t), lm_i.is_coprime(&lm_t))
            })
            .collect();

        // chain criterion: drop (i,t) when some (j,t) has lcm properly dividing it
        let keep: Vec<bool> = cands
            .iter()
            .map(|(_, l, _)| {
                !cands
                    .iter()
                    .any(|(_, l2, _)| l2 != l && l2.divides(l))
            })
            .collect();
        let mut filtered: Vec<(usize, Monomial, bool)> = Vec::new();
        for (c, k) in cands.drain(..).zip(keep) {
            if !k {
                continue;
            }
            // one pair per lcm; with the product criterion, a coprime
            // representative kills the whole class
            if let Some(existing) = filtered.iter_mut().find(|f| f.1 == c.1) {
                if c.2 {
                    existing.2 = true;
                }
                continue;
            }
            filtered.push(c);
        }
        let new_pairs: Vec<Pair> = filtered
            .into_iter()
            .filter(|(_, _, coprime)| !(self.product_criterion && *coprime))
            .map(|(i, lcm, _)| {
                let lm_i = self.lead(i).1;
                let si = self.basis[i].sugar + self.mono_weight(&lm_i.quotient_of(&lcm).expect("lcm"));
                let st = sugar_t + self.mono_weight(&lm_t.quotient_of(&lcm).expect("lcm"));
                Pair {
                    i,
                    j: t,
                    lcm,
                    sugar: si.max(st),
                }
            })
            .collect();

        // criterion B on old pairs
        let old = std::mem::take(&mut self.pairs);
        let mut kept = Vec::with_capacity(old.len() + new_pairs.len());
        for p in old {
            let same_comp = self.lead(p.i).0 == comp;
            if same_comp && lm_t.divides(&p.lcm) {
                let li = self.lead(p.i).1.lcm(&lm_t);
                let lj = self.lead(p.j).1.lcm(&lm_t);
                if li != p.lcm && lj != p.lcm {
                    continue;
                }
            }
            kept.push(p);
        }
        kept.extend(new_pairs);
        self.pairs = kept;

        let basis = &self.basis;
        let slot = &mut self.reducers[comp - self.track];
        slot.retain(|&k| {
            let lm = &basis[k].vec.leading_term().expect("nonzero").1;
            !lm_t.divides(lm)
        });
        slot.push(t);
    }

    /// Active basis elements (full vectors including tracking parts), in
    /// insertion order.
    pub(crate) fn active(&self) -> Vec<&FreeModuleVector> {
        let mut idx: Vec<usize> = self.reducers.iter().flatten().copied().collect();
        idx.sort_unstable();
        idx.into_iter().map(|k| &self.basis[k].vec).collect()
    }

    /// Interreduced, monic main parts sorted by degree then leading term.
    pub(crate) fn reduced_basis(&self) -> Vec<FreeModuleVector> {
        let order = self.ring.order();
        let mut out: Vec<FreeModuleVector> = Vec::new();
        for g in self.active() {
            let main = self.rank - self.track;
            let g = g.slice(self.track..self.rank);
            let (lead, tail) = g.terms().split_first().expect("nonzero");
            let tail = FreeModuleVector::from_sorted(self.ring.clone(), main, tail.to_vec());
            let reduced_tail = self.reduce(&tail.embed(self.rank, self.track)).slice(self.track..self.rank);
            let mut terms = vec![lead.clone()];
            terms.extend(reduced_tail.terms().iter().cloned());
            out.push(FreeModuleVector::from_sorted(self.ring.clone(), main, terms).monic());
        }
        let shifts = &self.shifts;
        out.sort_by(|a, b| {
            let da = a.degree(shifts).unwrap_or_else(|| sugar_plain(a, shifts));
            let db = b.degree(shifts).unwrap_or_else(|| sugar_plain(b, shifts));
            da.cmp(&db).then_with(|| {
                let (ca, ma, _) = a.leading_term().expect("nonzero");
                let (cb, mb, _) = b.leading_term().expect("nonzero");
                term_cmp(order, (*cb, mb), (*ca, ma))
            })
        });
        out
    }

    pub(crate) fn take_syzygies(&mut self) -> Vec<FreeModuleVector> {
        std::mem::take(&mut self.syzygies)
    }

    /// Checks that every S-vector among active elements reduces to zero in
    /// the main block.
    #[cfg(test)]
    pub(crate) fn verify(&self) -> bool {
        let act: Vec<usize> = {
            let mut idx: Vec<usize> = self.reducers.iter().flatten().copied().collect();
            idx.sort_unstable();
            idx
        };
        for (a, &i) in act.iter().enumerate() {
            for &j in &act[a + 1..] {
                let (ci, mi) = self.lead(i);
                let (cj, mj) = self.lead(j);
                if ci != cj {
                    continue;
                }
                let p = Pair {
                    i,
                    j,
                    lcm: mi.lcm(mj),
                    sugar: 0,
                };
                let r = self.reduce(&self.s_vector(&p));
                if r.terms().iter().any(|t| t.0 >= self.track) {
                    return false;
                }
            }
        }
        true
    }
}

fn sugar_plain(v: &FreeModuleVector, shifts: &[i64]) -> i64 {
    v.terms()
        .iter()
        .map(|(i, m, _)| m.degree() as i64 + shifts[*i])
        .max()
        .unwrap_or(0)
}

/// Ascending position-over-term comparison of leading terms.
pub(crate) fn lead_order(a: &FreeModuleVector, b: &FreeModuleVector) -> std::cmp::Ordering {
    match (a.leading_term(), b.leading_term()) {
        (Some((ca, ma, _)), Some((cb, mb, _))) => term_cmp(a.ring().order(), (*ca, ma), (*cb, mb)),
        (x, y) => x.is_some().cmp(&y.is_some()),
    }
}
