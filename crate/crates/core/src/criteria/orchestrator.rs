//! Runs the criteria in order of cost and returns the first decisive one.

use serde::Serialize;
use serde_json::{json, Value};

use super::checks::{lofwall_check, product_golod_check, prop_cycle_golod_check, sandwich_check, strongly_golod_check};
use super::rho::{proven_rho, rho_estimate_with};
use super::verdict::{GolodStatus, GolodVerdict};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideal::{minimal_presentation, Ideal};
use crate::koszul::homology_algebra_products;
use crate::poincare::golod_defect_with;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Auto,
    StronglyGolod,
    PropCycle,
    Sandwich,
    Product,
    Lofwall,
    RefuteOnly,
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Auto => "auto",
            Criterion::StronglyGolod => "strongly-golod",
            Criterion::PropCycle => "prop-cycle",
            Criterion::Sandwich => "sandwich",
            Criterion::Product => "product",
            Criterion::Lofwall => "lofwall",
            Criterion::RefuteOnly => "refute-only",
        }
    }

    pub fn parse(s: &str) -> Option<Criterion> {
        [
            Criterion::Auto,
            Criterion::StronglyGolod,
            Criterion::PropCycle,
            Criterion::Sandwich,
            Criterion::Product,
            Criterion::Lofwall,
            Criterion::RefuteOnly,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct GolodConfig {
    pub criterion: Criterion,
    /// Poincaré series truncation order.
    pub truncation: usize,
    /// Largest power used when `ρ` has to be estimated.
    pub rho_m_max: usize,
    pub budget: Budget,
    /// `a = p·q` with `p ⊆ q` suspected.
    pub product_hint: Option<(Ideal, Ideal)>,
    /// `c^{2(m−ρ)} ⊆ a ⊆ c^m` suspected.
    pub sandwich_hint: Option<(Ideal, usize)>,
    /// Keep running the refutation engines after a proof and fail loudly if
    /// they disagree.
    pub cross_check: bool,
}

impl Default for GolodConfig {
    fn default() -> GolodConfig {
        GolodConfig {
            criterion: Criterion::Auto,
            truncation: 6,
            rho_m_max: 3,
            budget: Budget::unlimited(),
            product_hint: None,
            sandwich_hint: None,
            cross_check: false,
        }
    }
}

/// One line of the criterion trace.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub criterion: String,
    pub status: GolodStatus,
    pub certificate: Option<String>,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRun {
    pub verdict: GolodVerdict,
    pub trace: Vec<TraceEntry>,
}

struct Runner {
    trace: Vec<TraceEntry>,
}

impl Runner {
    fn record(&mut self, criterion: &str, v: &GolodVerdict) {
        self.trace.push(TraceEntry {
            criterion: criterion.to_string(),
            status: v.status,
            certificate: v.certificate.clone(),
            details: v.details.clone(),
        });
    }

    /// Runs a check; hypothesis failures surfaced as errors become
    /// inconclusive trace entries.
    fn run(&mut self, criterion: &str, f: impl FnOnce() -> Result<GolodVerdict>) -> Result<GolodVerdict> {
        let v = match f() {
            Ok(v) => v,
            Err(Error::ContainmentFailure { what, witness }) => GolodVerdict::inconclusive(json!({
                "reason": format!("containment {} fails", what),
                "outside": witness,
            })),
            Err(Error::CharacteristicGate(..)) => GolodVerdict::because("needs characteristic zero"),
            Err(e) => return Err(e),
        };
        self.record(criterion, &v);
        Ok(v)
    }
}

pub fn golod_verdict(a: &Ideal, config: &GolodConfig) -> Result<GolodVerdict> {
    Ok(golod_verdict_traced(a, config)?.verdict)
}

/// Cheap certificates first, then the homology product and Poincaré defect
/// engines; the first decisive outcome wins.
pub fn golod_verdict_traced(a: &Ideal, config: &GolodConfig) -> Result<VerdictRun> {
    if a.is_unit() {
        return Err(Error::UnitIdeal("golod_verdict"));
    }
    let mut runner = Runner { trace: Vec::new() };
    let pres = minimal_presentation(a)?;
    let small = match &pres.ideal {
        Some(s) if !s.is_zero() => s.clone(),
        _ => {
            let v = GolodVerdict::proven(
                "regular-quotient",
                json!({ "embedding_dimension": pres.embedding_dimension() }),
            );
            runner.record("presentation", &v);
            return Ok(VerdictRun {
                verdict: v,
                trace: runner.trace,
            });
        }
    };
    if config.criterion == Criterion::Auto && small.num_generators() == 1 {
        let v = GolodVerdict::proven(
            "hypersurface",
            json!({ "embedding_dimension": pres.embedding_dimension(), "generator": small.generators()[0].to_string() }),
        );
        runner.record("presentation", &v);
        return Ok(VerdictRun {
            verdict: v,
            trace: runner.trace,
        });
    }
    let wants = |c: Criterion| config.criterion == Criterion::Auto || config.criterion == c;
    let mut proof: Option<GolodVerdict> = None;

    if wants(Criterion::Lofwall) {
        let r = small.initial_degree().expect("nonzero ideal") as usize;
        let v = runner.run("lofwall", || lofwall_check(&small, r))?;
        proof = proof.or(v.is_proven().then_some(v));
    }
    if proof.is_none() && wants(Criterion::Sandwich) {
        match &config.sandwich_hint {
            Some((c, m)) => {
                let rho = match proven_rho(c) {
                    Some(r) => Some(r),
                    None => rho_estimate_with(c, 1, config.rho_m_max, &config.budget)?.as_rho(),
                };
                let v = match rho {
                    Some(rho) if *m > rho.value() => runner.run("sandwich", || sandwich_check(c, a, *m, &rho))?,
                    Some(_) => {
                        let v = GolodVerdict::because("sandwich exponent must exceed rho");
                        runner.record("sandwich", &v);
                        v
                    }
                    None => {
                        let v = GolodVerdict::because("rho could not be bounded");
                        runner.record("sandwich", &v);
                        v
                    }
                };
                proof = proof.or(v.is_proven().then_some(v));
            }
            None if config.criterion == Criterion::Sandwich => {
                return Err(Error::Precondition("the sandwich criterion needs a hint (c, m)".into()));
            }
            None => {}
        }
    }
    if proof.is_none() && wants(Criterion::StronglyGolod) {
        let v = runner.run("strongly-golod", || strongly_golod_check(&small))?;
        proof = proof.or(v.is_proven().then_some(v));
    }
    if proof.is_none() && wants(Criterion::Product) {
        match &config.product_hint {
            Some((p, q)) => {
                let pq = p.product(q)?;
                let v = if !pq.same_ideal(a)? {
                    let v = GolodVerdict::because("the product hint does not multiply to a");
                    runner.record("product", &v);
                    v
                } else {
                    let first = runner.run("product", || product_golod_check(p, q))?;
                    if first.is_proven() {
                        first
                    } else {
                        runner.run("product", || product_golod_check(q, p))?
                    }
                };
                proof = proof.or(v.is_proven().then_some(v));
            }
            None if config.criterion == Criterion::Product => {
                return Err(Error::Precondition("the product criterion needs a hint (p, q)".into()));
            }
            None => {}
        }
    }
    if proof.is_none() && wants(Criterion::PropCycle) {
        // b = n^k with n^{2k} ⊆ a ⊆ n^{k+1}, largest k first
        let n = Ideal::maximal(small.ring());
        let top = small.initial_degree().expect("nonzero ideal") as i64;
        let mut tried = false;
        for k in (1..top).rev() {
            if !small.contains(&n.power(2 * k)?)? {
                continue;
            }
            tried = true;
            let b = n.power(k)?;
            let v = runner.run("prop-cycle", || prop_cycle_golod_check(&small, &b))?;
            if v.is_proven() {
                proof = Some(v.with_detail("b", json!(b.to_string())));
                break;
            }
        }
        if !tried {
            let v = GolodVerdict::because("no power of the maximal ideal sandwiches a");
            runner.record("prop-cycle", &v);
        }
    }

    let refute = config.criterion == Criterion::Auto || config.criterion == Criterion::RefuteOnly;
    let mut refutation: Option<GolodVerdict> = None;
    if refute && (proof.is_none() || config.cross_check) {
        config.budget.check("homology-product", 0)?;
        let table = homology_algebra_products(&small)?;
        let v = match &table.witness {
            Some(w) => GolodVerdict::refuted(
                "homology-product",
                json!({
                    "left": { "degree": w.i, "cycle": w.left_text },
                    "right": { "degree": w.j, "cycle": w.right_text },
                    "product": { "degree": w.i + w.j, "cycle": w.product_text },
                }),
                json!({ "homology_dims": table.dims, "pairs_checked": table.pairs_checked }),
            ),
            None => GolodVerdict::inconclusive(json!({
                "reason": "all products of positive-degree Koszul homology classes vanish",
                "homology_dims": table.dims,
                "pairs_checked": table.pairs_checked,
            })),
        };
        runner.record("homology-product", &v);
        if v.is_refuted() {
            refutation = Some(v);
        }
        if refutation.is_none() || config.cross_check {
            let rep = golod_defect_with(&small, config.truncation, &config.budget)?;
            let v = match rep.first_nonzero {
                Some(k) => GolodVerdict::refuted(
                    "poincare-defect",
                    json!({
                        "index": k,
                        "bound": rep.bound_coeffs[k],
                        "actual": rep.actual_coeffs[k],
                        "defect": rep.defect[k],
                    }),
                    serde_json::to_value(&rep).expect("serializable"),
                ),
                None => GolodVerdict::inconclusive(json!({
                    "reason": format!("defect vanishes through N = {}", config.truncation),
                    "bound": rep.bound_coeffs,
                    "actual": rep.actual_coeffs,
                })),
            };
            runner.record("poincare-defect", &v);
            if v.is_refuted() && refutation.is_none() {
                refutation = Some(v);
            }
        }
    }

    let verdict = match (proof, refutation) {
        (Some(p), Some(r)) => {
            return Err(Error::EngineInconsistency(format!(
                "{} proves Golod but {} refutes it",
                p.certificate.unwrap_or_default(),
                r.certificate.unwrap_or_default()
            )))
        }
        (Some(p), None) => p,
        (None, Some(r)) => r,
        (None, None) => GolodVerdict::because("no criterion was decisive"),
    };
    Ok(VerdictRun {
        verdict,
        trace: runner.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Polynomial, Ring, RingSpec};

    fn mono(r: &Ring, exps: &[&[u32]]) -> Ideal {
        Ideal::new(r, exps.iter().map(|e| Polynomial::from_exponents(r, &[(1, e)])).collect()).unwrap()
    }

    #[test]
    fn square_of_maximal_ideal_is_lofwall() {
        let r = RingSpec::rational(&["x", "y"]);
        let cfg = GolodConfig {
            cross_check: true,
            ..GolodConfig::default()
        };
        let v = golod_verdict(&Ideal::maximal(&r).power(2).unwrap(), &cfg).unwrap();
        assert_eq!(v.certificate.as_deref(), Some("lofwall"));
    }

    #[test]
    fn complete_intersection_is_refuted_by_a_product() {
        let r = RingSpec::rational(&["x", "y"]);
        let run = golod_verdict_traced(&mono(&r, &[&[2, 0], &[0, 2]]), &GolodConfig::default()).unwrap();
        assert!(run.verdict.is_refuted());
        assert_eq!(run.verdict.certificate.as_deref(), Some("homology-product"));
        assert!(run.trace.iter().any(|t| t.criterion == "lofwall"));
    }

    #[test]
    fn linear_generators_are_presented_away() {
        let r = RingSpec::rational(&["x", "y"]);
        let v = golod_verdict(&Ideal::maximal(&r), &GolodConfig::default()).unwrap();
        assert_eq!(v.certificate.as_deref(), Some("regular-quotient"));
        let a = mono(&r, &[&[1, 0], &[0, 2]]);
        let cfg = GolodConfig {
            criterion: Criterion::RefuteOnly,
            ..GolodConfig::default()
        };
        assert!(golod_verdict(&a, &cfg).unwrap().is_inconclusive());
    }

    #[test]
    fn single_criterion_modes() {
        let r = RingSpec::rational(&["x", "y"]);
        let f = Ideal::new(&r, vec![Polynomial::from_exponents(&r, &[(1, &[3, 0]), (1, &[0, 3])])]).unwrap();
        let cfg = GolodConfig {
            criterion: Criterion::StronglyGolod,
            ..GolodConfig::default()
        };
        let run = golod_verdict_traced(&f, &cfg).unwrap();
        assert!(run.verdict.is_inconclusive());
        assert_eq!(run.trace.len(), 1);
        let cfg = GolodConfig {
            criterion: Criterion::Product,
            ..GolodConfig::default()
        };
        assert!(golod_verdict(&f, &cfg).is_err());
    }
}
