//! Cycles of `K^R` built from Jacobian determinants of the entries of a
//! minimal resolution of `R = S/c` (characteristic zero).

use super::{koszul_complex, wedge_basis};
use crate::error::{Error, Result};
use crate::groebner::{minimal_graded_resolution, FreeModuleVector};
use crate::ideal::Ideal;
use crate::poly::Polynomial;

fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][col] * &determinant(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// For each basis element `j_l` of `F_l`, the element
/// `Σ_{j_1…j_{l−1}} Σ_σ det(∂(α^{(1)}_{j_0 j_1}, …, α^{(l)}_{j_{l−1} j_l}) / ∂(x_σ)) e_σ`
/// of `K^R_l`, where `α^{(k)}` are the matrices of the minimal resolution.
/// Only nonzero elements that are cycles over `R` are returned.
pub fn jacobian_cycle_representatives(c: &Ideal, l: usize) -> Result<Vec<FreeModuleVector>> {
    let ring = c.ring();
    let field = ring.field();
    if !field.is_char_zero() {
        return Err(Error::CharacteristicGate("jacobian_cycle_representatives", field.characteristic()));
    }
    if !c.in_maximal_power(2) {
        return Err(Error::Precondition("jacobian cycles need c ⊆ 𝔫²".into()));
    }
    let d = ring.num_vars();
    if l == 0 || l > d {
        return Err(Error::HomologicalIndex { index: l, max: d });
    }
    let kc = koszul_complex(ring, Some(c))?;
    let res = minimal_graded_resolution(ring, c.generators(), l)?;
    if res.length() < l {
        return Ok(Vec::new());
    }
    let wedges = wedge_basis(d, l);
    // derivative[k-1][row][col][x] = ∂ α^{(k)}_{row,col} / ∂x
    let derivative: Vec<Vec<Vec<Vec<Polynomial>>>> = (1..=l)
        .map(|k| {
            (0..res.rank(k - 1))
                .map(|row| {
                    (0..res.rank(k))
                        .map(|col| {
                            let e = res.entry(k, row, col);
                            (0..d).map(|x| e.partial_derivative(x).expect("index in range")).collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for top in 0..res.rank(l) {
        let mut chains: Vec<Vec<usize>> = vec![vec![0]];
        for k in 1..l {
            chains = chains
                .into_iter()
                .flat_map(|ch| (0..res.rank(k)).map(move |j| [ch.clone(), vec![j]].concat()))
                .collect();
        }
        let mut components = vec![Polynomial::zero(ring); wedges.len()];
        for ch in &chains {
            let mut path = ch.clone();
            path.push(top);
            for (w, sigma) in wedges.iter().enumerate() {
                let matrix: Vec<Vec<Polynomial>> = (0..l)
                    .map(|k| sigma.iter().map(|&x| derivative[k][path[k]][path[k + 1]][x].clone()).collect())
                    .collect();
                components[w] = &components[w] + &determinant(&matrix);
            }
        }
        let z = kc.reduce(&FreeModuleVector::from_components(ring, &components)?);
        if !z.is_zero() && kc.apply(l, &z)?.is_zero() {
            out.push(z);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::KoszulHomology;
    use crate::poly::{Ring, RingSpec};

    fn mono(r: &Ring, exps: &[&[u32]]) -> Ideal {
        Ideal::new(r, exps.iter().map(|e| Polynomial::from_exponents(r, &[(1, e)])).collect()).unwrap()
    }

    #[test]
    fn square_of_a_variable() {
        let r = RingSpec::rational(&["x"]);
        let z = jacobian_cycle_representatives(&mono(&r, &[&[2]]), 1).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].to_string(), "(2*x)");
    }

    #[test]
    fn product_of_two_variables() {
        let r = RingSpec::rational(&["x", "y"]);
        let c = mono(&r, &[&[1, 1]]);
        let z = jacobian_cycle_representatives(&c, 1).unwrap();
        assert_eq!(z.len(), 1);
        let kh = KoszulHomology::new(&c).unwrap();
        let ye1 = FreeModuleVector::from_components(&r, &[Polynomial::from_exponents(&r, &[(1, &[0, 1])]), Polynomial::zero(&r)]).unwrap();
        let a = kh.class_coordinates(1, &z[0]).unwrap().unwrap();
        let b = kh.class_coordinates(1, &ye1).unwrap().unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn top_class_of_squares() {
        let r = RingSpec::rational(&["x", "y"]);
        let c = mono(&r, &[&[2, 0], &[0, 2]]);
        let z = jacobian_cycle_representatives(&c, 2).unwrap();
        assert_eq!(z.len(), 1);
        // a nonzero multiple of x*y e1^e2
        let t = z[0].terms();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].1.exponents(), &[1, 1]);
        let r5 = RingSpec::prime(5, &["x"]);
        assert!(jacobian_cycle_representatives(&mono(&r5, &[&[2]]), 1).is_err());
        assert!(jacobian_cycle_representatives(&mono(&r, &[&[1, 0]]), 1).is_err());
    }
}
