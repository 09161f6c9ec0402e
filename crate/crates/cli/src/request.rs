//! Canonical requests and their evaluation.

use std::fmt::Write as _;

use affine_fpf::fpf::{FpfCache, Sign};
use affine_fpf::hecke::{CanonicalBasis, Convention, Variant};
use affine_fpf::order::{bruhat_leq, verify_qp1, verify_qp2, QpReport, Universe};
use affine_fpf::symfunc::stanley_expand;
use affine_fpf::transition::{check_transition_affine, check_transition_fpf};
use affine_fpf::zlattice::{
    conjecture_reports, ConjectureOptions, ConjectureReport, PositiveBasis,
};
use affine_fpf::{AffinePerm, Error, FpfInvolution, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::render;

/// Exit status for a passing run.
pub const PASS: u8 = 0;
/// Exit status for a falsification or an inequality.
pub const FAIL: u8 = 1;

/// A fully normalized invocation. Equal requests produce equal outcomes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum Request {
    Expand {
        w: Vec<i64>,
    },
    FpfExpand {
        w: Vec<i64>,
    },
    Atoms {
        w: Vec<i64>,
    },
    Code {
        w: Vec<i64>,
    },
    Shape {
        w: Vec<i64>,
    },
    Universe {
        n: usize,
        sign: String,
        lmax: u64,
        max_elements: usize,
    },
    QpVerify {
        n: usize,
        signs: Vec<String>,
        lmax: u64,
        max_elements: usize,
    },
    Bruhat {
        u: Vec<i64>,
        v: Vec<i64>,
        fpf: bool,
        max_elements: usize,
    },
    CanonicalBasis {
        n: usize,
        sign: String,
        lmax: u64,
        variant: String,
        z: Option<Vec<i64>>,
        max_elements: usize,
    },
    WgraphCells {
        n: usize,
        sign: String,
        lmax: u64,
        variant: String,
        max_elements: usize,
    },
    TransitionFpf {
        y: Vec<i64>,
        p: i64,
    },
    TransitionAffine {
        w: Vec<i64>,
        r: i64,
    },
    Conjectures {
        n: usize,
        dmax: u32,
        search_cap: u64,
        compare_next: bool,
        max_elements: usize,
    },
}

/// The rendered result of a request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: u8,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn pass(text: String, json: Value) -> Self {
        Self {
            status: PASS,
            text,
            json,
        }
    }

    fn verdict(ok: bool, text: String, json: Value) -> Self {
        Self {
            status: if ok { PASS } else { FAIL },
            text,
            json,
        }
    }
}

fn perm(w: &[i64]) -> Result<AffinePerm> {
    AffinePerm::from_window(w.len(), w)
}

fn fpf(w: &[i64]) -> Result<FpfInvolution> {
    FpfInvolution::from_window(w.len(), w)
}

fn sign(s: &str) -> Result<Sign> {
    s.parse()
}

fn variant(s: &str) -> Result<Variant> {
    s.parse()
}

fn qp_json(r: &QpReport) -> Value {
    json!({
        "axiom": format!("{:?}", r.axiom),
        "checks": r.checks,
        "reflection_bound": r.reflection_bound,
        "passed": r.passed(),
        "counterexample": r.counterexample.as_ref().map(|w| json!({
            "x": render::fpf(&w.x),
            "reflection": [w.reflection.0, w.reflection.1],
            "simple": w.simple,
        })),
    })
}

impl Request {
    pub fn run(&self) -> Result<Outcome> {
        match self {
            Request::Expand { w } => {
                let a = perm(w)?;
                let e = stanley_expand(&a)?;
                let mut json = render::expansion(&e);
                json["w"] = render::window(&a);
                Ok(Outcome::pass(format!("F_{a} = {e}\n"), json))
            }
            Request::FpfExpand { w } => {
                let z = fpf(w)?;
                let e = FpfCache::new(z.n()).fpf_stanley(&z)?;
                let mut json = render::expansion(&e);
                json["z"] = render::fpf(&z);
                Ok(Outcome::pass(format!("F^fpf_{z} = {e}\n"), json))
            }
            Request::Atoms { w } => {
                let z = fpf(w)?;
                let atoms = FpfCache::new(z.n()).atoms(&z)?;
                let mut text = format!("A^fpf({z}): {} atoms\n", atoms.len());
                for a in atoms.iter() {
                    writeln!(text, "  {a}").unwrap();
                }
                writeln!(
                    text,
                    "alpha_min = {}\nalpha_max = {}",
                    z.alpha_min(),
                    z.alpha_max()
                )
                .unwrap();
                let json = json!({
                    "z": render::fpf(&z),
                    "height": z.height(),
                    "atoms": atoms.iter().map(render::window).collect::<Vec<_>>(),
                    "alpha_min": render::window(&z.alpha_min()),
                    "alpha_max": render::window(&z.alpha_max()),
                });
                Ok(Outcome::pass(text, json))
            }
            Request::Code { w } => {
                let a = perm(w)?;
                let mut text = format!("c({a}) = {:?}\nlength = {}\n", a.code(), a.length());
                let mut json =
                    json!({ "w": render::window(&a), "code": a.code(), "length": a.length() });
                if let Ok(z) = FpfInvolution::new(a.clone()) {
                    writeln!(
                        text,
                        "c_fpf = {:?}\nheight = {}\nbeta = {}",
                        z.fpf_code(),
                        z.height(),
                        z.beta()
                    )
                    .unwrap();
                    json["fpf_code"] = json!(z.fpf_code());
                    json["height"] = json!(z.height());
                    json["beta"] = json!(z.beta());
                }
                Ok(Outcome::pass(text, json))
            }
            Request::Shape { w } => {
                let a = perm(w)?;
                let mut text = format!("shape({a}) = {}\n", a.shape());
                let mut json =
                    json!({ "w": render::window(&a), "shape": render::partition(&a.shape()) });
                if let Ok(z) = FpfInvolution::new(a.clone()) {
                    writeln!(text, "nu = {}", z.nu()).unwrap();
                    json["nu"] = render::partition(&z.nu());
                }
                Ok(Outcome::pass(text, json))
            }
            Request::Universe {
                n,
                sign: s,
                lmax,
                max_elements,
            } => {
                let u = Universe::build(*n, sign(s)?, *lmax, *max_elements)?;
                let mut text = format!(
                    "U({n},{s},{lmax}): {} elements, {} covers\n",
                    u.len(),
                    u.covers().len()
                );
                for (k, z) in u.elements().iter().enumerate() {
                    let below: Vec<String> =
                        u.lower_covers(k).iter().map(|y| y.to_string()).collect();
                    writeln!(
                        text,
                        "  {k:>4} {z} height {} covers [{}]",
                        z.height(),
                        below.join(",")
                    )
                    .unwrap();
                }
                let json = json!({
                    "n": n,
                    "sign": s,
                    "Lmax": lmax,
                    "elements": u.elements().iter().map(render::fpf).collect::<Vec<_>>(),
                    "covers": u.covers().iter()
                        .map(|c| json!([c.upper, [c.reflection.0, c.reflection.1], c.lower]))
                        .collect::<Vec<_>>(),
                });
                Ok(Outcome::pass(text, json))
            }
            Request::QpVerify {
                n,
                signs,
                lmax,
                max_elements,
            } => {
                let mut ok = true;
                let mut text = String::new();
                let mut classes = Vec::new();
                for s in signs {
                    let u = Universe::build(*n, sign(s)?, *lmax, *max_elements)?;
                    let height = |z: &FpfInvolution| z.height() as i64;
                    let qp1 = verify_qp1(&u, height)?;
                    let qp2 = verify_qp2(&u, height)?;
                    let widened =
                        u.widened_cover_discrepancies(2 * *n as i64 * (1 + u.max_spread()));
                    let pass = qp1.passed() && qp2.passed() && widened.is_empty();
                    ok &= pass;
                    writeln!(
                        text,
                        "U({n},{s},{lmax}): {} elements; QP1 {} ({} checks, |j-i| <= {}); QP2 {} ({} checks); widened scan {}",
                        u.len(),
                        if qp1.passed() { "pass" } else { "FAIL" },
                        qp1.checks,
                        qp1.reflection_bound,
                        if qp2.passed() { "pass" } else { "FAIL" },
                        qp2.checks,
                        if widened.is_empty() { "complete" } else { "found missed covers" },
                    )
                    .unwrap();
                    classes.push(json!({
                        "sign": s,
                        "elements": u.len(),
                        "qp1": qp_json(&qp1),
                        "qp2": qp_json(&qp2),
                        "widened_missed": widened.iter()
                            .map(|(k, (i, j))| json!([k, [i, j]]))
                            .collect::<Vec<_>>(),
                        "passed": pass,
                    }));
                }
                let json = json!({ "n": n, "Lmax": lmax, "classes": classes, "passed": ok });
                Ok(Outcome::verdict(ok, text, json))
            }
            Request::Bruhat {
                u,
                v,
                fpf: as_fpf,
                max_elements,
            } => {
                let leq = if *as_fpf {
                    let (y, z) = (fpf(u)?, fpf(v)?);
                    if y.n() != z.n() {
                        return Err(Error::WindowLength {
                            n: y.n(),
                            got: z.n(),
                        });
                    }
                    if y.sign() != z.sign() || y.height() > z.height() {
                        false
                    } else {
                        Universe::build(z.n(), z.sign(), z.height(), *max_elements)?
                            .leq_elements(&y, &z)?
                    }
                } else {
                    let (x, w) = (perm(u)?, perm(v)?);
                    if x.n() != w.n() {
                        return Err(Error::WindowLength {
                            n: x.n(),
                            got: w.n(),
                        });
                    }
                    bruhat_leq(&x, &w)
                };
                let rel = if leq { "<=" } else { "not <=" };
                let order = if *as_fpf { "fpf" } else { "affine" };
                let text = format!(
                    "{} {rel} {} ({order} Bruhat order)\n",
                    render::window_text(u),
                    render::window_text(v)
                );
                let json = json!({ "u": u, "v": v, "order": order, "leq": leq });
                Ok(Outcome::pass(text, json))
            }
            Request::CanonicalBasis {
                n,
                sign: s,
                lmax,
                variant: var,
                z,
                max_elements,
            } => {
                let u = Universe::build(*n, sign(s)?, *lmax, *max_elements)?;
                let cb = CanonicalBasis::build(&u, variant(var)?)?;
                let bad = cb.verify(&u)?;
                let picked: Vec<usize> = match z {
                    Some(w) => vec![cb.index_of(&fpf(w)?)?],
                    None => (0..cb.len()).collect(),
                };
                let mut text = String::new();
                let mut entries = Vec::new();
                for &k in &picked {
                    let c = cb.element(k);
                    writeln!(text, "C[{}] = {c}", cb.elements()[k]).unwrap();
                    entries.push(json!({
                        "z": render::fpf(&cb.elements()[k]),
                        "terms": c.terms()
                            .map(|(w, p)| json!({ "w": render::fpf(w), "poly": render::laurent(p) }))
                            .collect::<Vec<_>>(),
                    }));
                }
                let ok = bad.is_empty();
                if !ok {
                    writeln!(text, "verification failed at {} elements", bad.len()).unwrap();
                }
                let json = if z.is_some() {
                    entries.pop().unwrap_or(Value::Null)
                } else {
                    json!({ "n": n, "sign": s, "Lmax": lmax, "variant": var, "basis": entries, "verified": ok })
                };
                Ok(Outcome::verdict(ok, text, json))
            }
            Request::WgraphCells {
                n,
                sign: s,
                lmax,
                variant: var,
                max_elements,
            } => {
                let u = Universe::build(*n, sign(s)?, *lmax, *max_elements)?;
                let cb = CanonicalBasis::build(&u, variant(var)?)?;
                let g = cb.w_graph();
                let cells = g.cells();
                let molecules = g.molecules();
                let mut conventions = serde_json::Map::new();
                let mut any = false;
                for c in Convention::all() {
                    let r = g.convention_report(&cb, c)?;
                    any |= r.counterexample.is_none();
                    conventions.insert(c.name().into(), json!(r.counterexample.is_none()));
                }
                let mut text = format!(
                    "W-graph {var} on U({n},{s},{lmax}): {} vertices, {} edges, {} cell(s)\n",
                    g.vertices.len(),
                    g.omega.len(),
                    cells.len()
                );
                if g.truncated {
                    text.push_str("note: the height cap truncates edges out of the top layer\n");
                }
                for (k, z) in g.vertices.iter().enumerate() {
                    writeln!(text, "  {k:>4} {z} tau {}", render::set_text(&g.tau[k])).unwrap();
                }
                for cell in &cells {
                    let names: Vec<String> =
                        cell.iter().map(|&k| g.vertices[k].to_string()).collect();
                    writeln!(text, "cell: {}", names.join(" ")).unwrap();
                }
                let json = json!({
                    "n": n,
                    "sign": s,
                    "Lmax": lmax,
                    "variant": var,
                    "vertices": g.vertices.iter().zip(&g.tau)
                        .map(|(z, t)| json!({ "z": render::fpf(z), "tau": render::index_set(t) }))
                        .collect::<Vec<_>>(),
                    "edges": g.omega.iter()
                        .map(|(&(x, y), &w)| json!({ "from": x, "to": y, "omega": w }))
                        .collect::<Vec<_>>(),
                    "cells": cells,
                    "molecules": molecules,
                    "truncated": g.truncated,
                    "action_conventions": conventions,
                });
                Ok(Outcome::verdict(any, text, json))
            }
            Request::TransitionFpf { y, p } => {
                let y = fpf(y)?;
                let mut cache = FpfCache::new(y.n());
                let r = check_transition_fpf(&y, *p, &mut cache)?;
                let q = y.apply(*p);
                let text = format!(
                    "Pi-({y},{p}) = {}\nPi+({y},{q}) = {}\nleft  = {}\nright = {}\n{}\n",
                    render::cover_set_text(&r.left_set),
                    render::cover_set_text(&r.right_set),
                    r.left,
                    r.right,
                    if r.equal { "equal" } else { "NOT EQUAL" },
                );
                let json = json!({
                    "y": render::fpf(&y),
                    "p": p,
                    "q": q,
                    "left_set": render::cover_set(&r.left_set, render::fpf),
                    "right_set": render::cover_set(&r.right_set, render::fpf),
                    "left": render::expansion(&r.left),
                    "right": render::expansion(&r.right),
                    "equal": r.equal,
                });
                Ok(Outcome::verdict(r.equal, text, json))
            }
            Request::TransitionAffine { w, r } => {
                let a = perm(w)?;
                let mut expander = affine_fpf::symfunc::StanleyExpander::new(a.n());
                let rep = check_transition_affine(&a, *r, &mut expander)?;
                let text = format!(
                    "Phi-_{r}({a}) = {}\nPhi+_{r}({a}) = {}\nleft  = {}\nright = {}\n{}\n",
                    render::cover_set_text(&rep.left_set),
                    render::cover_set_text(&rep.right_set),
                    rep.left,
                    rep.right,
                    if rep.equal { "equal" } else { "NOT EQUAL" },
                );
                let json = json!({
                    "w": render::window(&a),
                    "r": r,
                    "left_set": render::cover_set(&rep.left_set, render::window),
                    "right_set": render::cover_set(&rep.right_set, render::window),
                    "left": render::expansion(&rep.left),
                    "right": render::expansion(&rep.right),
                    "equal": rep.equal,
                });
                Ok(Outcome::verdict(rep.equal, text, json))
            }
            Request::Conjectures {
                n,
                dmax,
                search_cap,
                compare_next,
                max_elements,
            } => {
                let opts = ConjectureOptions {
                    max_elements: *max_elements,
                    search_cap: *search_cap,
                    compare_next: *compare_next,
                };
                let report = conjecture_reports(*n, *dmax, opts)?;
                Ok(conjecture_outcome(&report))
            }
        }
    }
}

fn positive_basis_json(p: &PositiveBasis) -> Value {
    match p {
        PositiveBasis::Found(reps) => json!({
            "status": "found",
            "representatives": reps.iter().map(render::fpf).collect::<Vec<_>>(),
        }),
        PositiveBasis::NoneExists { searched } => {
            json!({ "status": "none-exists", "searched": searched })
        }
        PositiveBasis::Inconclusive { searched } => {
            json!({ "status": "inconclusive", "searched": searched })
        }
    }
}

fn positive_basis_text(p: &PositiveBasis) -> String {
    match p {
        PositiveBasis::Found(reps) => format!("positive basis found ({} element(s))", reps.len()),
        PositiveBasis::NoneExists { searched } => {
            format!("no positive basis ({searched} subsets searched)")
        }
        PositiveBasis::Inconclusive { searched } => {
            format!("search cap reached after {searched} subsets")
        }
    }
}

fn conjecture_outcome(report: &ConjectureReport) -> Outcome {
    let mut text = format!(
        "span conjectures for n = {}, degrees 0..={} ({})\n",
        report.n,
        report.dmax,
        ConjectureReport::CAVEAT
    );
    let mut degrees = Vec::new();
    for d in &report.degrees {
        let t = d.truncation;
        writeln!(
            text,
            "  degree {}: rank {} (finite {}) in dim {}, {} generators, {}, {}",
            t.degree,
            d.rank,
            d.rank_finite,
            d.ambient_dim,
            d.generators,
            positive_basis_text(&d.positive_basis),
            d.verdict.as_str()
        )
        .unwrap();
        degrees.push(json!({
            "n": t.n,
            "degree": t.degree,
            "rank": d.rank,
            "rank_finite": d.rank_finite,
            "ambient_dim": d.ambient_dim,
            "generators": d.generators,
            "truncation": { "n": t.n, "Lmax": t.lmax, "degree": t.degree },
            "positive_basis": positive_basis_json(&d.positive_basis),
            "omega_plus_witness": d.omega_plus_witness.as_ref().map(render::fpf),
            "not_in_next": d.not_in_next.as_ref().map(render::fpf),
            "verdict": d.verdict.as_str(),
        }));
    }
    writeln!(
        text,
        "omega+ invariance: {} on {} elements",
        report.omega_plus_verdict.as_str(),
        report.omega_plus_checked
    )
    .unwrap();
    if let Some((d, z)) = &report.non_containment_witness {
        writeln!(
            text,
            "not contained in period {}: degree {d}, z = {z}",
            report.n + 2
        )
        .unwrap();
    }
    writeln!(
        text,
        "span identity: {}",
        ConjectureReport::SPAN_IDENTITY_STATUS
    )
    .unwrap();
    let json = json!({
        "n": report.n,
        "dmax": report.dmax,
        "reports": degrees,
        "omega_plus": {
            "checked": report.omega_plus_checked,
            "verdict": report.omega_plus_verdict.as_str(),
        },
        "non_containment_witness": report.non_containment_witness.as_ref()
            .map(|(d, z)| json!({ "degree": d, "z": render::fpf(z) })),
        "span_identity": ConjectureReport::SPAN_IDENTITY_STATUS,
        "caveat": ConjectureReport::CAVEAT,
    });
    let ok = report.degrees.iter().all(|d| {
        d.verdict == affine_fpf::zlattice::Verdict::Consistent
            && !matches!(d.positive_basis, PositiveBasis::NoneExists { .. })
    });
    Outcome::verdict(ok, text, json)
}
