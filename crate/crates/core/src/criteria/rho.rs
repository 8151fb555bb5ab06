//! The Koszul Artin–Rees number `ρ(c)`: the least `r` such that every map
//! `Tor_i(S/c^m, k) → Tor_i(S/c^{m−r}, k)` vanishes.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::koszul::{tor_map_reports, TorPath};

/// A value of `ρ` together with how much is known about it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rho {
    /// Known to equal `value` for all `m`.
    Proven { value: usize, reason: String },
    /// Checked only for `m ≤ m_max`.
    Bounded { value: usize, m_max: usize },
}

impl Rho {
    pub fn value(&self) -> usize {
        match self {
            Rho::Proven { value, .. } | Rho::Bounded { value, .. } => *value,
        }
    }

    pub fn is_proven(&self) -> bool {
        matches!(self, Rho::Proven { .. })
    }
}

/// `ρ(c) = 1` whenever it is known in general: characteristic zero, at most
/// two variables, or `c` generated by variables.
pub fn proven_rho(c: &Ideal) -> Option<Rho> {
    let reason = if c.ring().field().is_char_zero() {
        "characteristic-zero"
    } else if c.ring().num_vars() <= 2 {
        "two-variables"
    } else if is_variable_ideal(c) {
        "variable-ideal"
    } else {
        return None;
    };
    Some(Rho::Proven {
        value: 1,
        reason: reason.to_string(),
    })
}

/// Generated by a subset of the variables.
pub fn is_variable_ideal(c: &Ideal) -> bool {
    !c.is_zero()
        && c.generators()
            .iter()
            .all(|g| g.num_terms() == 1 && g.leading_monomial().is_some_and(|m| m.degree() == 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoFailure {
    pub r: usize,
    pub m: usize,
    pub i: usize,
    /// Rank of the nonzero map on `Tor_i`.
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoEstimate {
    pub ideal: String,
    /// Least `r ≤ r_max` passing every check with `m ≤ m_max`.
    pub r_verified: Option<usize>,
    pub r_max: usize,
    pub m_max: usize,
    pub failures: Vec<RhoFailure>,
}

impl RhoEstimate {
    pub fn as_rho(&self) -> Option<Rho> {
        self.r_verified.map(|value| Rho::Bounded {
            value,
            m_max: self.m_max,
        })
    }
}

pub fn rho_estimate(c: &Ideal, r_max: usize, m_max: usize) -> Result<RhoEstimate> {
    rho_estimate_with(c, r_max, m_max, &Budget::unlimited())
}

/// Tries `r = 1, 2, …, r_max` and checks the maps `c^m → c^{m−r}` for
/// `r < m ≤ m_max`.
///
/// Cost grows with the number of generators of `c^{m_max}`, which is
/// polynomial of degree `d − 1` in `m_max`.
pub fn rho_estimate_with(c: &Ideal, r_max: usize, m_max: usize, budget: &Budget) -> Result<RhoEstimate> {
    if c.is_unit() || c.is_zero() {
        return Err(Error::Precondition("rho_estimate needs a nonzero proper ideal".into()));
    }
    if r_max == 0 {
        return Err(Error::Precondition("r_max must be at least 1".into()));
    }
    let powers: Vec<Ideal> = (0..=m_max)
        .map(|m| c.power(m as i64))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut r_verified = None;
    for r in 1..=r_max {
        let mut ok = true;
        for m in (r + 1)..=m_max {
            budget.check("rho_estimate", r - 1)?;
            for map in tor_map_reports(&powers[m], &powers[m - r], TorPath::ResolutionLift)? {
                if !map.is_zero {
                    ok = false;
                    failures.push(RhoFailure {
                        r,
                        m,
                        i: map.i,
                        rank: map.rank(),
                    });
                }
            }
        }
        if ok {
            r_verified = Some(r);
            break;
        }
    }
    Ok(RhoEstimate {
        ideal: c.to_string(),
        r_verified,
        r_max,
        m_max,
        failures,
    })
}
