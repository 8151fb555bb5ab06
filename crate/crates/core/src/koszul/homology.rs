//! Homology of `K^R = K ⊗ S/a` by exact linear algebra, one graded piece at
//! a time, and the product it inherits from the exterior algebra.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::{koszul_complex, KoszulComplex};
use crate::error::{Error, Result};
use crate::graded::{fine_keys_below, key_add, GradedPiece, Grading, Key, QuotientRing};
use crate::groebner::{minimal_graded_resolution, FreeModuleVector};
use crate::ideal::Ideal;
use crate::linalg::{from_entries, kernel, Quotient, SparseVec};
use crate::poly::{Monomial, Polynomial};

/// `H_i(K^R)` in a single degree (or multidegree).
#[derive(Clone, Debug)]
pub struct HomologyPiece {
    pub i: usize,
    pub key: Key,
    piece: GradedPiece,
    quotient: Quotient,
}

impl HomologyPiece {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn piece(&self) -> &GradedPiece {
        &self.piece
    }

    /// Coordinates of a reduced cycle of this key in the chosen class basis;
    /// `None` if it is not a cycle.
    pub fn coordinates(&self, v: &FreeModuleVector) -> Option<SparseVec> {
        self.quotient.coordinates(&self.piece.coordinates(v))
    }
}

/// A `k`-basis of `H_i(K^R)`.
#[derive(Clone, Debug)]
pub struct HomologyClassSet {
    pub i: usize,
    pub representatives: Vec<FreeModuleVector>,
    /// Internal degree of each class (wedge degree included).
    pub degrees: Vec<u32>,
    pub keys: Vec<Key>,
}

impl HomologyClassSet {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

/// Koszul homology of `S/a` with the graded pieces cached.
///
/// Pieces are only enumerated up to the top internal degree of the Betti
/// table of `S/a`; a multigrading by exponent vectors is used when `a` is
/// monomial.
pub struct KoszulHomology {
    ideal: Ideal,
    kc: KoszulComplex,
    qr: QuotientRing,
    bounds: Vec<Option<u32>>,
    lcm: Option<Monomial>,
    pieces: RefCell<HashMap<(usize, Key), Rc<HomologyPiece>>>,
    classes: RefCell<HashMap<usize, Rc<(HomologyClassSet, HashMap<Key, usize>)>>>,
}

impl KoszulHomology {
    pub fn new(a: &Ideal) -> Result<KoszulHomology> {
        if a.is_unit() {
            return Err(Error::UnitIdeal("koszul_homology"));
        }
        let d = a.ring().num_vars();
        let res = minimal_graded_resolution(a.ring(), a.generators(), d)?;
        let bounds = (0..=d)
            .map(|i| res.betti().degrees(i).into_iter().max().map(|j| j as u32))
            .collect();
        KoszulHomology::with_bounds(a, bounds)
    }

    /// `bounds[i]` caps the internal degrees searched in `H_i`.
    pub fn with_bounds(a: &Ideal, bounds: Vec<Option<u32>>) -> Result<KoszulHomology> {
        let kc = koszul_complex(a.ring(), Some(a))?;
        let grading = if a.is_monomial() { Grading::Fine } else { Grading::Coarse };
        let qr = QuotientRing::from_gb(a.ring(), a.gb().clone(), grading);
        let lcm = a.is_monomial().then(|| {
            a.generators()
                .iter()
                .fold(Monomial::one(a.ring().num_vars()), |acc, g| acc.lcm(g.leading_monomial().expect("nonzero")))
        });
        Ok(KoszulHomology {
            ideal: a.clone(),
            kc,
            qr,
            bounds,
            lcm,
            pieces: RefCell::new(HashMap::new()),
            classes: RefCell::new(HashMap::new()),
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn complex(&self) -> &KoszulComplex {
        &self.kc
    }

    pub fn grading(&self) -> Grading {
        self.qr.grading()
    }

    fn d(&self) -> usize {
        self.kc.num_vars()
    }

    /// Keys where `H_i` may be nonzero.
    pub fn keys(&self, i: usize) -> Vec<Key> {
        let n = self.d();
        let Some(Some(top)) = self.bounds.get(i).copied() else {
            return Vec::new();
        };
        if i == 0 {
            return vec![self.grading().zero_key(n)];
        }
        match &self.lcm {
            None => (i as u32..=top).map(|j| vec![j]).collect(),
            Some(l) => {
                let bound: Key = l.exponents().iter().map(|&e| e as u32).collect();
                fine_keys_below(&bound, top)
                    .into_iter()
                    .filter(|k| k.iter().sum::<u32>() >= i as u32)
                    .collect()
            }
        }
    }

    fn wedge_keys(&self, i: usize) -> Vec<Key> {
        let n = self.d();
        let g = self.grading();
        self.kc.basis_labels(i).iter().map(|s| g.wedge_key(n, s)).collect()
    }

    fn graded_piece(&self, i: usize, key: &Key) -> GradedPiece {
        GradedPiece::new(&self.qr, &self.wedge_keys(i), key)
    }

    /// Coordinates of `∂` applied to each basis element of `source`.
    fn differential_images(&self, i: usize, source: &GradedPiece, target: &GradedPiece) -> Vec<SparseVec> {
        let one = self.kc.ring().one();
        source
            .basis()
            .iter()
            .map(|(k, m)| {
                let mut entries = Vec::new();
                for (t, xm, c) in self.kc.boundary_term(&self.kc.basis_labels(i)[*k], m, &one) {
                    let nf = self.qr.normal_form(&Polynomial::monomial(self.kc.ring(), xm));
                    for (mm, cc) in nf.terms() {
                        let idx = target.index_of(t, mm).expect("boundary stays in its graded piece");
                        entries.push((idx, &cc.clone() * &c));
                    }
                }
                from_entries(entries)
            })
            .collect()
    }

    pub fn piece(&self, i: usize, key: &Key) -> Rc<HomologyPiece> {
        if let Some(p) = self.pieces.borrow().get(&(i, key.clone())) {
            return p.clone();
        }
        let field = self.kc.ring().field();
        let here = self.graded_piece(i, key);
        let cycles = if i == 0 {
            (0..here.dim()).map(|k| vec![(k, self.kc.ring().one())]).collect()
        } else {
            let below = self.graded_piece(i - 1, key);
            kernel(field, &self.differential_images(i, &here, &below))
        };
        let boundaries = if i < self.d() {
            let above = self.graded_piece(i + 1, key);
            self.differential_images(i + 1, &above, &here)
        } else {
            Vec::new()
        };
        let quotient = Quotient::new(field, &boundaries, &cycles);
        let piece = Rc::new(HomologyPiece {
            i,
            key: key.clone(),
            piece: here,
            quotient,
        });
        self.pieces.borrow_mut().insert((i, key.clone()), piece.clone());
        piece
    }

    fn class_data(&self, i: usize) -> Rc<(HomologyClassSet, HashMap<Key, usize>)> {
        if let Some(c) = self.classes.borrow().get(&i) {
            return c.clone();
        }
        let ring = self.kc.ring();
        let rank = self.kc.rank(i);
        let mut set = HomologyClassSet {
            i,
            representatives: Vec::new(),
            degrees: Vec::new(),
            keys: Vec::new(),
        };
        let mut offsets = HashMap::new();
        for key in self.keys(i) {
            let piece = self.piece(i, &key);
            if piece.dim() == 0 {
                continue;
            }
            offsets.insert(key.clone(), set.representatives.len());
            for rep in piece.quotient.representatives() {
                set.representatives.push(piece.piece.vector(ring, rank, rep));
                set.degrees.push(key.iter().sum());
                set.keys.push(key.clone());
            }
        }
        let data = Rc::new((set, offsets));
        self.classes.borrow_mut().insert(i, data.clone());
        data
    }

    /// A `k`-basis of `H_i(K^R)`.
    pub fn classes(&self, i: usize) -> Result<HomologyClassSet> {
        if i > self.d() {
            return Err(Error::HomologicalIndex { index: i, max: self.d() });
        }
        Ok(self.class_data(i).0.clone())
    }

    pub fn dim(&self, i: usize) -> usize {
        if i > self.d() {
            return 0;
        }
        self.class_data(i).0.dim()
    }

    /// Coordinates of the class of `v ∈ K_i` in the basis of
    /// [`KoszulHomology::classes`]; `None` if `v` is not a cycle.
    pub fn class_coordinates(&self, i: usize, v: &FreeModuleVector) -> Result<Option<SparseVec>> {
        let data = self.class_data(i);
        let v = self.kc.reduce(v);
        let n = self.d();
        let grading = self.grading();
        let mut split: HashMap<Key, Vec<(usize, Monomial, crate::poly::Scalar)>> = HashMap::new();
        for (k, m, c) in v.terms() {
            let key = key_add(&grading.key_of(m), &grading.wedge_key(n, &self.kc.basis_labels(i)[*k]));
            split.entry(key).or_default().push((*k, m.clone(), c.clone()));
        }
        let mut keys: Vec<&Key> = split.keys().collect();
        keys.sort();
        let mut out = Vec::new();
        for key in keys {
            let part = FreeModuleVector::new(self.kc.ring(), v.rank(), split[key].iter().cloned());
            let piece = self.piece(i, key);
            let Some(coords) = piece.coordinates(&part) else {
                return Ok(None);
            };
            if coords.is_empty() {
                continue;
            }
            let offset = data.1.get(key).ok_or_else(|| {
                Error::EngineInconsistency(format!("homology class in degree {:?} beyond the Betti bound", key))
            })?;
            out.extend(coords.into_iter().map(|(k, c)| (k + offset, c)));
        }
        Ok(Some(from_entries(out)))
    }

    /// Class of `z_p ∧ w_q` for basis classes `z_p ∈ H_i`, `w_q ∈ H_j`.
    pub fn product_class(&self, i: usize, p: usize, j: usize, q: usize) -> Result<SparseVec> {
        let zi = self.class_data(i);
        let wj = self.class_data(j);
        let prod = self.kc.wedge(i, &zi.0.representatives[p], j, &wj.0.representatives[q]);
        if i + j > self.d() {
            return Ok(Vec::new());
        }
        self.class_coordinates(i + j, &prod)?
            .ok_or_else(|| Error::EngineInconsistency("product of cycles is not a cycle".into()))
    }
}

/// A pair of classes of positive degree whose product is nonzero.
#[derive(Clone, Debug)]
pub struct ProductWitness {
    pub i: usize,
    pub j: usize,
    pub left: FreeModuleVector,
    pub right: FreeModuleVector,
    pub product: FreeModuleVector,
    pub left_text: String,
    pub right_text: String,
    pub product_text: String,
}

#[derive(Clone, Debug)]
pub struct ProductTable {
    pub characteristic: u32,
    /// `dim H_i(K^R)` for `0 ≤ i ≤ d`.
    pub dims: Vec<usize>,
    pub pairs_checked: usize,
    pub witness: Option<ProductWitness>,
}

impl ProductTable {
    pub fn vanishes(&self) -> bool {
        self.witness.is_none()
    }
}

/// Multiplies basis classes of `H_{≥1}(K^R)` pairwise until a nonzero
/// product turns up.
///
/// Only a witness found when `a ⊆ 𝔫²` says anything about the Golod
/// property; with linear generators `K^R` carries an extra exterior factor.
pub fn homology_algebra_products(a: &Ideal) -> Result<ProductTable> {
    let kh = KoszulHomology::new(a)?;
    let d = a.ring().num_vars();
    let dims: Vec<usize> = (0..=d).map(|i| kh.dim(i)).collect();
    let mut table = ProductTable {
        characteristic: a.ring().field().characteristic(),
        dims: dims.clone(),
        pairs_checked: 0,
        witness: None,
    };
    for i in 1..=d {
        for j in i..=d - i {
            if j == 0 {
                continue;
            }
            for p in 0..dims[i] {
                let start = if i == j { p } else { 0 };
                for q in start..dims[j] {
                    table.pairs_checked += 1;
                    let class = kh.product_class(i, p, j, q)?;
                    if !class.is_empty() {
                        let kc = kh.complex();
                        let left = kh.class_data(i).0.representatives[p].clone();
                        let right = kh.class_data(j).0.representatives[q].clone();
                        let product = kc.wedge(i, &left, j, &right);
                        table.witness = Some(ProductWitness {
                            i,
                            j,
                            left_text: kc.format_element(i, &left),
                            right_text: kc.format_element(j, &right),
                            product_text: kc.format_element(i + j, &product),
                            left,
                            right,
                            product,
                        });
                        return Ok(table);
                    }
                }
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Ring, RingSpec};

    fn mono(r: &Ring, exps: &[&[u32]]) -> Ideal {
        Ideal::new(r, exps.iter().map(|e| Polynomial::from_exponents(r, &[(1, e)])).collect()).unwrap()
    }

    #[test]
    fn complete_intersection_of_squares_has_a_product() {
        let r = RingSpec::rational(&["x", "y"]);
        let a = mono(&r, &[&[2, 0], &[0, 2]]);
        let t = homology_algebra_products(&a).unwrap();
        assert_eq!(t.dims, vec![1, 2, 1]);
        let w = t.witness.expect("nonzero product");
        assert_eq!((w.i, w.j), (1, 1));
        assert_eq!(w.product_text, "x*y e1^e2");
    }

    #[test]
    fn square_of_maximal_ideal_products_vanish() {
        let r = RingSpec::rational(&["x", "y"]);
        let a = Ideal::maximal(&r).power(2).unwrap();
        let t = homology_algebra_products(&a).unwrap();
        assert_eq!(t.dims, vec![1, 3, 2]);
        assert!(t.vanishes());
        assert!(t.pairs_checked > 0);
    }

    #[test]
    fn principal_linear_ideal() {
        let r = RingSpec::rational(&["x", "y"]);
        let a = mono(&r, &[&[1, 0]]);
        let t = homology_algebra_products(&a).unwrap();
        assert_eq!(t.dims, vec![1, 1, 0]);
        assert!(t.vanishes());
    }

    #[test]
    fn non_monomial_ideal_uses_total_degree() {
        let r = RingSpec::rational(&["x", "y"]);
        let f = Polynomial::from_exponents(&r, &[(1, &[3, 0]), (1, &[0, 3])]);
        let g = Polynomial::from_exponents(&r, &[(1, &[1, 1])]);
        let a = Ideal::new(&r, vec![f, g]).unwrap();
        let kh = KoszulHomology::new(&a).unwrap();
        assert_eq!(kh.grading(), Grading::Coarse);
        assert_eq!((0..=2).map(|i| kh.dim(i)).collect::<Vec<_>>(), vec![1, 2, 1]);
    }
}
