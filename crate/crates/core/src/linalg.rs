//! Exact sparse linear algebra over the coefficient field.
//!
//! Vectors are sorted `(index, value)` lists without zeros. [`Echelon`] keeps
//! a semi-echelon basis of a row space where every row may carry a *tag*, a
//! record of which tagged inputs it was built from; this gives kernels,
//! quotient coordinates and membership certificates from the same routine.

use std::collections::{BTreeMap, HashMap};

use crate::poly::{Field, Scalar};

pub type SparseVec = Vec<(usize, Scalar)>;

pub fn is_zero(v: &SparseVec) -> bool {
    v.is_empty()
}

/// `a + c*b` for sorted sparse vectors.
pub fn axpy(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map(|t| t.0);
        let bj = b.get(j).map(|t| t.0);
        match (ai, bj) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 + &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            _ => {
                let v = c * &b[j].1;
                if !v.is_zero() {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
        }
    }
    out
}

pub fn scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn from_entries(entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in entries {
        match acc.get_mut(&i) {
            Some(y) => *y = &*y + &x,
            None => {
                acc.insert(i, x);
            }
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    tag: SparseVec,
}

/// A semi-echelon basis: each row has a distinct pivot (its first index)
/// with coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<Row>,
    pivots: HashMap<usize, usize>,
}

/// Result of reducing a vector: `input = remainder + Σ tag_k * (tagged input k)
/// + (combination of untagged rows)`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: SparseVec,
    pub tag: SparseVec,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows_cloned(&self) -> Vec<SparseVec> {
        self.rows.iter().map(|r| r.vec.clone()).collect()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.vec[0].0)
    }

    /// Eliminates every pivot column from `v`. The remainder is canonical for
    /// the row space; the tag is the accumulated combination of row tags.
    pub fn reduce_tagged(&self, v: &SparseVec, tag: &SparseVec) -> Reduction {
        let mut work: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut tag = tag.clone();
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coef)) = next else { break };
            let row = &self.rows[self.pivots[&col]];
            let neg = -&coef;
            for (i, x) in &row.vec {
                let add = &neg * x;
                match work.get_mut(i) {
                    Some(y) => {
                        *y = &*y + &add;
                        if y.is_zero() {
                            work.remove(i);
                        }
                    }
                    None => {
                        work.insert(*i, add);
                    }
                }
            }
            if !row.tag.is_empty() {
                tag = axpy(&tag, &neg, &row.tag);
            }
            cursor = col + 1;
        }
        Reduction {
            remainder: work.into_iter().collect(),
            tag,
        }
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tagged(v, &Vec::new()).remainder
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v` with tag `tag`. Returns the reduction; the row is added
    /// iff the remainder is nonzero. When it vanishes, the returned tag is a
    /// relation among tagged inputs.
    pub fn insert_tagged(&mut self, v: &SparseVec, tag: &SparseVec) -> Reduction {
        let red = self.reduce_tagged(v, tag);
        if let Some((pivot, lead)) = red.remainder.first() {
            let inv = lead.inverse().expect("nonzero pivot");
            let row = Row {
                vec: scale(&red.remainder, &inv),
                tag: scale(&red.tag, &inv),
            };
            self.pivots.insert(*pivot, self.rows.len());
            self.rows.push(row);
        }
        red
    }

    /// Returns true if `v` was independent of the current rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        !self.insert_tagged(v, &Vec::new()).remainder.is_empty()
    }
}

/// Basis of `{c : Σ c_k images[k] = 0}`, each as a sparse vector over the
/// input indices.
pub fn kernel(field: Field, images: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(field);
    let mut out = Vec::new();
    for (k, w) in images.iter().enumerate() {
        let red = ech.insert_tagged(w, &vec![(k, Scalar::one(field))]);
        if red.remainder.is_empty() {
            out.push(red.tag);
        }
    }
    out
}

/// Indices of a maximal independent subset, chosen greedily in input order.
pub fn independent_subset(field: Field, vectors: &[SparseVec]) -> Vec<usize> {
    let mut ech = Echelon::new(field);
    (0..vectors.len()).filter(|&k| ech.insert(&vectors[k])).collect()
}

/// A quotient `V/W` of two spaces with `W ⊆ V`, with a fixed basis of
/// representatives and exact coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    ech: Echelon,
    reps: Vec<SparseVec>,
}

impl Quotient {
    /// `spanning` spans V; `sub` spans W. Representatives are taken greedily
    /// from `spanning`, so they are deterministic given input order.
    pub fn new(field: Field, sub: &[SparseVec], spanning: &[SparseVec]) -> Quotient {
        let mut ech = Echelon::new(field);
        for w in sub {
            ech.insert(w);
        }
        let mut reps = Vec::new();
        for v in spanning {
            let k = reps.len();
            let red = ech.insert_tagged(v, &vec![(k, Scalar::one(field))]);
            if !red.remainder.is_empty() {
                reps.push(v.clone());
            }
        }
        Quotient { ech, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.reps
    }

    /// Coordinates of `v` in the representative basis, or `None` if `v` is
    /// not in V.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let red = self.ech.reduce_tagged(v, &Vec::new());
        if !red.remainder.is_empty() {
            return None;
        }
        Some(scale(&red.tag, &Scalar::from_i64(self.ech.field(), -1)))
    }

    pub fn is_zero_class(&self, v: &SparseVec) -> bool {
        matches!(self.coordinates(v), Some(c) if c.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(Field::Rational, n)
    }

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        from_entries(entries.iter().map(|&(i, x)| (i, q(x))))
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let images = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(1, 1)])];
        let k = kernel(Field::Rational, &images);
        assert_eq!(k.len(), 1);
        let mut sum = Vec::new();
        for (i, c) in &k[0] {
            sum = axpy(&sum, c, &images[*i]);
        }
        assert!(sum.is_empty());
    }

    #[test]
    fn quotient_coordinates() {
        // V = span(e0, e1, e2), W = span(e0 + e1)
        let sub = vec![v(&[(0, 1), (1, 1)])];
        let span = vec![v(&[(0, 1)]), v(&[(1, 1)]), v(&[(2, 1)])];
        let quo = Quotient::new(Field::Rational, &sub, &span);
        assert_eq!(quo.dim(), 2);
        assert_eq!(quo.coordinates(&v(&[(1, 1)])).unwrap(), v(&[(0, -1)]));
        assert!(quo.is_zero_class(&v(&[(0, 3), (1, 3)])));
        assert_eq!(quo.coordinates(&v(&[(0, 1), (2, 5)])).unwrap(), v(&[(0, 1), (1, 5)]));
    }

    #[test]
    fn canonical_remainder_mod_p() {
        let f = Field::Prime(7);
        let mut a = Echelon::new(f);
        let mut b = Echelon::new(f);
        let rows = [
            from_entries([(0, Scalar::from_i64(f, 3)), (2, Scalar::from_i64(f, 1))]),
            from_entries([(1, Scalar::from_i64(f, 1)), (2, Scalar::from_i64(f, 5))]),
        ];
        a.insert(&rows[0]);
        a.insert(&rows[1]);
        b.insert(&axpy(&rows[0], &Scalar::from_i64(f, 2), &rows[1]));
        b.insert(&rows[1]);
        let t = from_entries([(0, Scalar::from_i64(f, 1)), (1, Scalar::from_i64(f, 1)), (2, Scalar::from_i64(f, 1))]);
        assert_eq!(a.reduce(&t), b.reduce(&t));
    }
}
