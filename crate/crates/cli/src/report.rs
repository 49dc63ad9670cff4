//! Text and JSON-lines renderings of homology and check reports.

use homalg::algebra::format_labelled;
use homalg::complex::{ChainComplex, HomologyReport};
use homalg::verify::{CheckDescriptor, CheckReport, Verdict};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line.
    Records,
}

pub struct HomologyOutput<'a> {
    /// Name of the theory as printed, e.g. "Hochschild".
    pub theory: &'a str,
    pub symbol: &'a str,
    pub source: &'a str,
    pub complex: &'a ChainComplex,
    pub report: &'a HomologyReport,
    pub representatives: bool,
    pub timing: bool,
}

fn representatives(out: &HomologyOutput, p: usize) -> Vec<String> {
    let basis = out.complex.basis(p);
    out.report.degrees[p]
        .representatives
        .iter()
        .map(|v| {
            format_labelled(v, |i| basis.get(i).cloned().unwrap_or_else(|| format!("#{i}")))
        })
        .collect()
}

pub fn homology(out: &HomologyOutput, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            s.push_str(&format!(
                "{} homology of {}, degrees 0..={}\n",
                out.theory,
                out.source,
                out.complex.cap()
            ));
            for d in &out.report.degrees {
                // d_{cap+1} is never built, so in the top degree cycles only
                // bound the Betti number from above
                let betti = if d.reliable { format!("{}", d.betti) } else { format!("<= {}", d.betti) };
                s.push_str(&format!(
                    "  {}_{}  betti {}  (chains {}, cycles {}, boundaries {})",
                    out.symbol, d.degree, betti, d.chain_dim, d.cycles_dim, d.boundaries_dim
                ));
                if !d.reliable {
                    s.push_str("  [truncated]");
                }
                if out.timing {
                    s.push_str(&format!("  {} ms", d.millis));
                }
                s.push('\n');
                if out.representatives {
                    for r in representatives(out, d.degree) {
                        s.push_str(&format!("      {r}\n"));
                    }
                }
            }
        }
        Format::Records => {
            for d in &out.report.degrees {
                let mut rec = json!({
                    "kind": "homology",
                    "theory": out.theory,
                    "source": out.source,
                    "degree": d.degree,
                    "reliable": d.reliable,
                    "chain_dim": d.chain_dim,
                    "cycles_dim": d.cycles_dim,
                    "boundaries_dim": d.boundaries_dim,
                    "boundary_nnz": d.boundary_nnz,
                });
                if d.reliable {
                    rec["betti"] = json!(d.betti);
                } else {
                    rec["betti_upper_bound"] = json!(d.betti);
                }
                if out.representatives {
                    rec["representatives"] = json!(representatives(out, d.degree));
                }
                if out.timing {
                    rec["millis"] = json!(d.millis);
                }
                push_line(&mut s, &rec);
            }
        }
    }
    s
}

fn push_line(s: &mut String, v: &Value) {
    s.push_str(&v.to_string());
    s.push('\n');
}

pub fn descriptors(ds: &[CheckDescriptor], format: Format) -> String {
    let mut s = String::new();
    for d in ds {
        match format {
            Format::Text => s.push_str(&format!(
                "{}{}\n  {}\n  parameters: {}\n  expected: {}\n",
                d.id,
                if d.randomized { " (seeded)" } else { "" },
                d.statement,
                d.parameters,
                d.expected
            )),
            Format::Records => push_line(
                &mut s,
                &json!({
                    "kind": "check",
                    "id": d.id,
                    "statement": d.statement,
                    "parameters": d.parameters,
                    "expected": d.expected,
                    "randomized": d.randomized,
                }),
            ),
        }
    }
    s
}

pub fn check_reports(rs: &[CheckReport], format: Format, timing: bool) -> String {
    let mut s = String::new();
    for r in rs {
        match format {
            Format::Text => s.push_str(&homalg::verify::format_text(r, timing)),
            Format::Records => {
                let mut rec = json!({
                    "kind": "report",
                    "id": r.id,
                    "seed": r.seed,
                    "verdict": r.verdict.label(),
                    "details": r.details,
                    "counterexample": r.counterexample,
                    "stats": r.stats,
                });
                if let Verdict::Skipped(why) = &r.verdict {
                    rec["skipped"] = json!(why);
                }
                if timing {
                    rec["millis"] = json!(r.millis);
                }
                push_line(&mut s, &rec);
            }
        }
    }
    let count = |f: fn(&Verdict) -> bool| rs.iter().filter(|r| f(&r.verdict)).count();
    let (pass, fail, skip) = (
        count(|v| *v == Verdict::Pass),
        count(|v| *v == Verdict::Fail),
        count(|v| matches!(v, Verdict::Skipped(_))),
    );
    match format {
        Format::Text => s.push_str(&format!("{pass} passed, {fail} failed, {skip} skipped\n")),
        Format::Records => push_line(
            &mut s,
            &json!({"kind": "summary", "passed": pass, "failed": fail, "skipped": skip}),
        ),
    }
    s
}
