//! Exact scalars, monomials and graded polynomials over ℚ or 𝔽_p.
//!
//! A [`Ring`] is a shared handle to a [`RingSpec`]; every polynomial carries
//! one so that operands from different rings are rejected instead of being
//! silently combined.

mod monomial;
mod polynomial;
mod scalar;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{ArithOp, Polynomial};
pub use scalar::Scalar;

use crate::error::{Error, Result};

/// Coefficient field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_char_zero(&self) -> bool {
        matches!(self, Field::Rational)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{}", p),
        }
    }
}

/// The polynomial ring k[X_1..X_d] together with its monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    variables: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

pub type Ring = Arc<RingSpec>;

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u32;
    while (q as u64) * (q as u64) <= p as u64 {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

impl RingSpec {
    pub fn new<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        field: Field,
        order: MonomialOrder,
    ) -> Result<Ring> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        let mut seen = HashSet::new();
        for v in &variables {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable {}", v)));
            }
        }
        if let Field::Prime(p) = field {
            if !is_prime(p) {
                return Err(Error::InvalidRing(format!("{} is not prime", p)));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > variables.len() {
                return Err(Error::InvalidRing("elimination block larger than the ring".into()));
            }
        }
        Ok(Arc::new(RingSpec {
            variables,
            field,
            order,
        }))
    }

    /// ℚ[names] with degrevlex.
    pub fn rational(names: &[&str]) -> Ring {
        RingSpec::new(names.iter().copied(), Field::Rational, MonomialOrder::DegRevLex)
            .expect("valid ring")
    }

    /// 𝔽_p[names] with degrevlex.
    pub fn prime(p: u32, names: &[&str]) -> Ring {
        RingSpec::new(names.iter().copied(), Field::Prime(p), MonomialOrder::DegRevLex)
            .expect("valid ring")
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.field)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.field)
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        Scalar::from_i64(self.field, n)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.variables[i].clone()),
                _ => parts.push(format!("{}^{}", self.variables[i], e)),
            }
        }
        parts.join("*")
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_validation() {
        assert!(RingSpec::new(Vec::<String>::new(), Field::Rational, MonomialOrder::DegRevLex).is_err());
        assert!(RingSpec::new(["x", "x"], Field::Rational, MonomialOrder::DegRevLex).is_err());
        assert!(RingSpec::new(["x"], Field::Prime(9), MonomialOrder::DegRevLex).is_err());
        assert!(RingSpec::new(["x"], Field::Prime(2), MonomialOrder::DegRevLex).is_ok());
        let r = RingSpec::rational(&["x", "y"]);
        assert_eq!(r.num_vars(), 2);
        assert_eq!(r.format_monomial(&Monomial::from_exponents(&[2, 1])), "x^2*y");
    }
}
