//! Homogeneous ideals and their algebra.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, minimal_generators, syzygy_module, Engine, FreeModuleVector, ReducedGB};
use crate::linalg::{from_entries, Echelon};
use crate::graded::rref_rows;
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Ring, RingSpec};

/// An ideal of `S` given by homogeneous generators, with a lazily computed
/// reduced Gröbner basis.
///
/// The zero ideal has no generators and the unit ideal is stored as `(1)`.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    gb: Arc<OnceLock<ReducedGB>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Product,
}

impl Ideal {
    /// Validates and keeps the generators as given (zeros dropped).
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if g.homogeneous_degree().is_none() {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
            gens.push(g);
        }
        Ok(Ideal::from_trusted(ring, gens))
    }

    fn from_trusted(ring: &Ring, generators: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators,
            gb: Arc::new(OnceLock::new()),
        }
    }

    /// Like [`Ideal::new`] but reduced to a minimal generating set.
    pub fn minimalized(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        Ok(Ideal::new(ring, generators)?.interreduced())
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_trusted(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_trusted(ring, vec![Polynomial::one(ring)])
    }

    /// The homogeneous maximal ideal `(X_1, …, X_d)`.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::variables(ring, &(0..ring.num_vars()).collect::<Vec<_>>()).expect("indices in range")
    }

    /// The ideal generated by the chosen variables.
    pub fn variables(ring: &Ring, indices: &[usize]) -> Result<Ideal> {
        let gens = indices
            .iter()
            .map(|&i| Polynomial::variable(ring, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::from_trusted(ring, gens))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn gb(&self) -> &ReducedGB {
        self.gb
            .get_or_init(|| buchberger(&self.ring, &self.generators).expect("generators share the ring"))
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.degree() == Some(0))
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.num_terms() == 1)
    }

    /// Smallest generator degree (`None` for the zero ideal).
    pub fn initial_degree(&self) -> Option<u32> {
        self.generators.iter().filter_map(|g| g.homogeneous_degree()).min()
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.generators.iter().filter_map(|g| g.homogeneous_degree()).max()
    }

    /// `f ∈ self`.
    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.gb().reduce_vector(&FreeModuleVector::from_polynomial(f)).is_zero())
    }

    /// First generator of `other` outside `self`, if any.
    pub fn containment_witness(&self, other: &Ideal) -> Result<Option<Polynomial>> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        for g in &other.generators {
            if !self.contains_poly(g)? {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        Ok(self.containment_witness(other)?.is_none())
    }

    /// Equality as ideals.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// Fails with a witness unless `inner ⊆ self`.
    pub fn require_contains(&self, inner: &Ideal, what: &str) -> Result<()> {
        match self.containment_witness(inner)? {
            None => Ok(()),
            Some(w) => Err(Error::ContainmentFailure {
                what: what.to_string(),
                witness: w.to_string(),
            }),
        }
    }

    /// A minimal homogeneous generating set; the unit ideal becomes `(1)`.
    pub fn interreduced(&self) -> Ideal {
        if self.is_unit() {
            return Ideal::unit(&self.ring);
        }
        let vs: Vec<FreeModuleVector> = self.generators.iter().map(FreeModuleVector::from_polynomial).collect();
        let kept = minimal_generators(&vs, &[0]);
        let out = Ideal::from_trusted(&self.ring, kept.iter().map(|v| v.component(0)).collect());
        if let Some(gb) = self.gb.get() {
            let _ = out.gb.set(gb.clone());
        }
        out
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        ideal_combine(self, other, CombineOp::Sum)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        ideal_combine(self, other, CombineOp::Product)
    }

    pub fn power(&self, m: i64) -> Result<Ideal> {
        ideal_power(self, m)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        ideal_intersection(self, other)
    }

    pub fn quotient(&self, f: &Polynomial) -> Result<Ideal> {
        ideal_quotient(self, f)
    }

    /// `self ⊆ 𝔫^k`.
    pub fn in_maximal_power(&self, k: u32) -> bool {
        self.generators.iter().all(|g| g.homogeneous_degree().is_some_and(|d| d >= k))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self)
    }
}

fn same(a: &Ideal, b: &Ideal) -> Result<()> {
    if same_ring(&a.ring, &b.ring) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// `a + b` or `a·b`, minimally generated.
pub fn ideal_combine(a: &Ideal, b: &Ideal, op: CombineOp) -> Result<Ideal> {
    same(a, b)?;
    let gens = match op {
        CombineOp::Sum => {
            let mut g = a.generators.clone();
            for h in &b.generators {
                if !g.contains(h) {
                    g.push(h.clone());
                }
            }
            g
        }
        CombineOp::Product => {
            let mut g: Vec<Polynomial> = Vec::new();
            for f in &a.generators {
                for h in &b.generators {
                    let p = f * h;
                    if !g.contains(&p) {
                        g.push(p);
                    }
                }
            }
            g
        }
    };
    Ok(Ideal::from_trusted(&a.ring, gens).interreduced())
}

/// `a^m`, with `a^0 = (1)`.
pub fn ideal_power(a: &Ideal, m: i64) -> Result<Ideal> {
    if m < 0 {
        return Err(Error::Precondition(format!("negative exponent {}", m)));
    }
    let mut acc = Ideal::unit(&a.ring);
    for _ in 0..m {
        acc = if acc.is_unit() { a.interreduced() } else { acc.product(a)? };
    }
    Ok(acc)
}

/// `a ∩ b` by eliminating `t` from `t·a + (1−t)·b`.
///
/// The auxiliary variable gets weight zero so the computation stays graded
/// in the original variables.
pub fn ideal_intersection(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same(a, b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(&a.ring));
    }
    let ring = &a.ring;
    let n = ring.num_vars();
    let mut names = vec![aux_name(ring)];
    names.extend(ring.variables().iter().cloned());
    let big = RingSpec::new(names, ring.field(), MonomialOrder::Elimination(1))?;
    let lift = |p: &Polynomial| -> Polynomial {
        Polynomial::from_terms(&big, p.terms().iter().map(|(m, c)| (m.reindexed(|i| Some(i + 1), n + 1), c.clone())))
    };
    let t = Polynomial::variable(&big, 0)?;
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut weights = vec![1i64; n + 1];
    weights[0] = 0;
    let mut engine = Engine::new(&big, 0, vec![0]).with_weights(weights);
    for f in &a.generators {
        engine.add_generator(FreeModuleVector::from_polynomial(&(&t * &lift(f))));
    }
    for g in &b.generators {
        engine.add_generator(FreeModuleVector::from_polynomial(&(&one_minus_t * &lift(g))));
    }
    engine.complete_through(None);
    let mut gens = Vec::new();
    for g in engine.reduced_basis() {
        let p = g.component(0);
        if p.terms().iter().all(|(m, _)| m.exponent(0) == 0) {
            gens.push(Polynomial::from_terms(
                ring,
                p.terms().iter().map(|(m, c)| (m.reindexed(|i| i.checked_sub(1), n), c.clone())),
            ));
        }
    }
    Ideal::minimalized(ring, gens)
}

fn aux_name(ring: &Ring) -> String {
    let mut name = "t".to_string();
    while ring.variable_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// `a ∩ b` from the syzygies of the concatenated generator lists.
pub fn ideal_intersection_via_syzygies(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same(a, b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(&a.ring));
    }
    let cols: Vec<FreeModuleVector> = a
        .generators
        .iter()
        .chain(&b.generators)
        .map(FreeModuleVector::from_polynomial)
        .collect();
    let syz = syzygy_module(&cols)?;
    let gens = syz
        .iter()
        .map(|s| {
            let mut acc = Polynomial::zero(&a.ring);
            for (k, f) in a.generators.iter().enumerate() {
                acc = &acc + &(&s.component(k) * f);
            }
            acc
        })
        .collect();
    Ideal::minimalized(&a.ring, gens)
}

/// `(a : f) = {g : g·f ∈ a}`, via `(a ∩ (f)) / f`.
pub fn ideal_quotient(a: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if !same_ring(f.ring(), &a.ring) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if f.homogeneous_degree().is_none() {
        return Err(Error::Inhomogeneous(f.to_string()));
    }
    let principal = Ideal::from_trusted(&a.ring, vec![f.clone()]);
    let inter = ideal_intersection(a, &principal)?;
    let mut gens = Vec::new();
    for g in inter.generators() {
        let q = g
            .divide_exact(f)?
            .ok_or_else(|| Error::EngineInconsistency(format!("{} not divisible by {}", g, f)))?;
        gens.push(q);
    }
    Ideal::minimalized(&a.ring, gens)
}

/// `∂(c)`: the ideal generated by `c` and all first partial derivatives of
/// its generators. Characteristic zero only.
pub fn derivative_ideal(c: &Ideal) -> Result<Ideal> {
    let field = c.ring.field();
    if !field.is_char_zero() {
        return Err(Error::CharacteristicGate("derivative_ideal", field.characteristic()));
    }
    let mut gens = Vec::new();
    for g in &c.generators {
        for i in 0..c.ring.num_vars() {
            let d = g.partial_derivative(i)?;
            if !d.is_zero() && !gens.contains(&d) {
                gens.push(d);
            }
        }
    }
    gens.extend(c.generators.iter().cloned());
    Ideal::minimalized(&c.ring, gens)
}

/// `S/a` rewritten without linear generators: `S/a ≅ S'/a'` where `S'` keeps
/// the variables that are not pivots of the linear part of `a` and
/// `a' ⊆ 𝔫'^2`.
#[derive(Clone, Debug)]
pub struct MinimalPresentation {
    /// `None` when every variable is eliminated, i.e. `S/a = k`.
    pub ideal: Option<Ideal>,
    pub eliminated: Vec<usize>,
    pub kept: Vec<usize>,
}

impl MinimalPresentation {
    pub fn embedding_dimension(&self) -> usize {
        self.kept.len()
    }

    pub fn is_field(&self) -> bool {
        self.ideal.is_none()
    }
}

pub fn minimal_presentation(a: &Ideal) -> Result<MinimalPresentation> {
    if a.is_unit() {
        return Err(Error::UnitIdeal("minimal_presentation"));
    }
    let ring = &a.ring;
    let n = ring.num_vars();
    let linear: Vec<&Polynomial> = a.generators.iter().filter(|g| g.homogeneous_degree() == Some(1)).collect();
    if linear.is_empty() {
        return Ok(MinimalPresentation {
            ideal: Some(a.clone()),
            eliminated: Vec::new(),
            kept: (0..n).collect(),
        });
    }
    let mut ech = Echelon::new(ring.field());
    for l in &linear {
        let coords = from_entries(l.terms().iter().map(|(m, c)| {
            let v = (0..n).find(|&i| m.exponent(i) == 1).expect("linear monomial");
            (v, c.clone())
        }));
        ech.insert(&coords);
    }
    let rows = rref_rows(&ech);
    let eliminated: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
    let kept: Vec<usize> = (0..n).filter(|i| !eliminated.contains(i)).collect();
    if kept.is_empty() {
        return Ok(MinimalPresentation {
            ideal: None,
            eliminated,
            kept,
        });
    }
    let names: Vec<String> = kept.iter().map(|&i| ring.variables()[i].clone()).collect();
    let small = RingSpec::new(names, ring.field(), ring.order())?;
    // x_p = -Σ c_q x_q for each pivot row
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        if let Some(pos) = kept.iter().position(|&k| k == i) {
            images.push(Polynomial::variable(&small, pos)?);
        } else {
            let row = rows.iter().find(|r| r[0].0 == i).expect("pivot row");
            let terms = row[1..].iter().map(|(q, c)| {
                let pos = kept.iter().position(|&k| k == *q).expect("non-pivot column");
                (Monomial::variable(kept.len(), pos), -c)
            });
            images.push(Polynomial::from_terms(&small, terms));
        }
    }
    let mut gens = Vec::new();
    for g in &a.generators {
        if g.homogeneous_degree() == Some(1) {
            continue;
        }
        let h = g.substitute(&small, &images)?;
        if !h.is_zero() {
            gens.push(h);
        }
    }
    Ok(MinimalPresentation {
        ideal: Some(Ideal::minimalized(&small, gens)?),
        eliminated,
        kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingSpec;

    fn p(r: &Ring, t: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_exponents(r, t)
    }

    fn mono_ideal(r: &Ring, exps: &[&[u32]]) -> Ideal {
        Ideal::new(r, exps.iter().map(|e| p(r, &[(1, e)])).collect()).unwrap()
    }

    #[test]
    fn products_and_powers() {
        let r = RingSpec::rational(&["x", "y"]);
        let m = Ideal::maximal(&r);
        assert_eq!(m.product(&m).unwrap().generators(), mono_ideal(&r, &[&[2, 0], &[1, 1], &[0, 2]]).generators());
        assert!(m.power(0).unwrap().is_unit());
        let a = mono_ideal(&r, &[&[2, 0], &[1, 1]]);
        assert_eq!(a.power(2).unwrap().generators(), mono_ideal(&r, &[&[4, 0], &[3, 1], &[2, 2]]).generators());
        assert!(a.power(-1).is_err());
    }

    #[test]
    fn intersections() {
        let r = RingSpec::rational(&["x", "y"]);
        let x = mono_ideal(&r, &[&[1, 0]]);
        let y = mono_ideal(&r, &[&[0, 1]]);
        let xy = mono_ideal(&r, &[&[1, 1]]);
        assert!(x.intersection(&y).unwrap().same_ideal(&xy).unwrap());
        let a = mono_ideal(&r, &[&[2, 0], &[1, 1]]);
        let i = a.intersection(&y).unwrap();
        assert_eq!(i.generators(), xy.generators());
        assert!(a.intersection(&a).unwrap().same_ideal(&a).unwrap());
        let oracle = ideal_intersection_via_syzygies(&a, &y).unwrap();
        assert!(oracle.same_ideal(&i).unwrap());
    }

    #[test]
    fn quotients() {
        let r = RingSpec::rational(&["x", "y"]);
        let a = mono_ideal(&r, &[&[1, 1], &[0, 2]]);
        let q = a.quotient(&p(&r, &[(1, &[0, 1])])).unwrap();
        assert!(q.same_ideal(&Ideal::maximal(&r)).unwrap());
        let x2 = mono_ideal(&r, &[&[2, 0]]);
        assert!(x2.quotient(&p(&r, &[(1, &[1, 0])])).unwrap().same_ideal(&mono_ideal(&r, &[&[1, 0]])).unwrap());
        let m = Ideal::maximal(&r);
        assert!(m.quotient(&Polynomial::one(&r)).unwrap().same_ideal(&m).unwrap());
        assert!(m.quotient(&Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn containment() {
        let r = RingSpec::rational(&["x", "y"]);
        let m = Ideal::maximal(&r);
        assert!(m.contains(&m.power(2).unwrap()).unwrap());
        let x2 = mono_ideal(&r, &[&[2, 0]]);
        assert!(!x2.contains(&mono_ideal(&r, &[&[1, 0]])).unwrap());
        let f = Ideal::new(&r, vec![p(&r, &[(1, &[3, 0]), (1, &[0, 3])])]).unwrap();
        assert!(!f.contains(&mono_ideal(&r, &[&[4, 0]])).unwrap());
    }

    #[test]
    fn derivatives() {
        let r = RingSpec::rational(&["x", "y"]);
        let f = Ideal::new(&r, vec![p(&r, &[(1, &[3, 0]), (1, &[0, 3])])]).unwrap();
        let d = derivative_ideal(&f).unwrap();
        assert!(d.same_ideal(&mono_ideal(&r, &[&[2, 0], &[0, 2]])).unwrap());
        assert!(derivative_ideal(&Ideal::maximal(&r)).unwrap().is_unit());
        let m2 = Ideal::maximal(&r).power(2).unwrap();
        assert!(derivative_ideal(&m2).unwrap().same_ideal(&Ideal::maximal(&r)).unwrap());
        let r5 = RingSpec::prime(5, &["x", "y"]);
        assert!(matches!(derivative_ideal(&Ideal::maximal(&r5)), Err(Error::CharacteristicGate(..))));
    }

    #[test]
    fn presentation_drops_linear_forms() {
        let r = RingSpec::rational(&["x", "y", "z"]);
        // (x - y, x^2 + z^2) ≅ (y^2 + z^2) in k[y,z]
        let a = Ideal::new(&r, vec![p(&r, &[(1, &[1, 0, 0]), (-1, &[0, 1, 0])]), p(&r, &[(1, &[2, 0, 0]), (1, &[0, 0, 2])])]).unwrap();
        let pres = minimal_presentation(&a).unwrap();
        assert_eq!(pres.eliminated, vec![0]);
        let small = pres.ideal.unwrap();
        assert_eq!(small.ring().variables(), &["y".to_string(), "z".to_string()]);
        assert_eq!(small.generators()[0].to_string(), "y^2 + z^2");
        let all = minimal_presentation(&Ideal::maximal(&r)).unwrap();
        assert!(all.is_field());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let r = RingSpec::rational(&["x"]);
        let err = Ideal::new(&r, vec![p(&r, &[(1, &[1]), (1, &[0])])]).unwrap_err();
        assert!(matches!(err, Error::Inhomogeneous(ref g) if g == "x + 1"));
    }
}
