//! Report structures and their JSON/CSV renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use upq_core::{
    BoundInterval, ChamberReport, HiggsRankPair, HitchinPairType, IrreducibilityCertificate, MwVerdict, Rational,
    SelfTestReport,
};

use crate::args::OutputFormat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToledoReport {
    #[serde(rename = "type")]
    pub pair_type: HitchinPairType,
    pub tau: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MwReport {
    #[serde(rename = "type")]
    pub pair_type: HitchinPairType,
    pub twist_degree: i64,
    pub alpha: Rational,
    pub ranks: Option<HiggsRankPair>,
    pub tau: Rational,
    pub bounds: BoundInterval,
    #[serde(flatten)]
    pub verdict: MwVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Toledo(ToledoReport),
    Mw(MwReport),
    Walls(ChamberReport),
    Chambers(ChamberReport),
    Certify(IrreducibilityCertificate),
    Selftest(SelfTestReport),
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> serde_json::Result<String> {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                Ok(s)
            }
            OutputFormat::Csv => Ok(self.to_csv()),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Toledo(r) => {
                out.push_str("p,q,a,b,tau\n");
                let t = &r.pair_type;
                row(&mut out, [t.p().to_string(), t.q().to_string(), t.a().to_string(), t.b().to_string(), r.tau.to_string()]);
            }
            Report::Mw(r) => {
                out.push_str("tau,lower,upper,feasible,regime,verdict,side,margin\n");
                let regime = r
                    .bounds
                    .regime()
                    .map(|g| label(&g))
                    .unwrap_or_default();
                let (verdict, side, margin) = match &r.verdict {
                    MwVerdict::Pass => ("pass".to_string(), String::new(), String::new()),
                    MwVerdict::Fail { side, margin } => ("fail".to_string(), label(side), margin.to_string()),
                };
                row(
                    &mut out,
                    [
                        r.tau.to_string(),
                        r.bounds.lower_bound().to_string(),
                        r.bounds.upper_bound().to_string(),
                        r.bounds.is_feasible().to_string(),
                        regime,
                        verdict,
                        side,
                        margin,
                    ],
                );
            }
            Report::Walls(r) => {
                out.push_str("alpha_num,alpha_den,p_sub,q_sub,d_sub\n");
                for wall in &r.walls {
                    for w in &wall.witnesses {
                        row(
                            &mut out,
                            [
                                wall.alpha.numer().to_string(),
                                wall.alpha.denom().to_string(),
                                w.p_sub.to_string(),
                                w.q_sub.to_string(),
                                w.d_sub.to_string(),
                            ],
                        );
                    }
                }
            }
            Report::Chambers(r) => {
                out.push_str("lo,hi,lo_closed,hi_closed\n");
                for c in &r.chambers {
                    row(
                        &mut out,
                        [c.lo.to_string(), c.hi.to_string(), c.lo_closed.to_string(), c.hi_closed.to_string()],
                    );
                }
            }
            Report::Certify(c) => {
                out.push_str("field,value\n");
                let fields = [
                    ("tau", c.tau.to_string()),
                    ("tau_bound", c.tau_bound.to_string()),
                    ("tau_bound_ok", c.tau_bound_ok.to_string()),
                    ("condition1", c.condition1.holds.to_string()),
                    ("condition2", c.condition2.holds.to_string()),
                    ("closure_irreducible", c.closure_irreducible.to_string()),
                    ("gcd_coprime", c.gcd_coprime.to_string()),
                    ("fully_irreducible", c.fully_irreducible.to_string()),
                ];
                for (k, v) in fields {
                    row(&mut out, [k.to_string(), v]);
                }
            }
            Report::Selftest(r) => {
                out.push_str("suite,cases,passed,failures\n");
                for s in &r.suites {
                    row(
                        &mut out,
                        [s.name.clone(), s.cases.to_string(), s.passed.to_string(), s.failures.len().to_string()],
                    );
                }
            }
        }
        out
    }
}

fn row<const N: usize>(out: &mut String, cells: [String; N]) {
    let _ = writeln!(out, "{}", cells.join(","));
}

/// The serde name of a unit variant.
fn label<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}
