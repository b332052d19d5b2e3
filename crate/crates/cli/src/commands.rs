//! Execution of each subcommand into report sections.

use std::collections::BTreeMap;
use std::path::Path;

use apolar::binary::{binary_decompose, binary_rank, BinaryDecomposition};
use apolar::catalecticant::{
    border_rank_lower_bound, border_rank_lower_bound_par, catalecticant, sum_of_powers, BorderRankProfile,
};
use apolar::counterexamples::{
    ci_cubics_pipeline, coordinate_axes_curve, verify_counterexample, ConicSolutions, CounterexampleReport,
};
use apolar::exactalg::{parse_rat, Rat, UniPoly};
use apolar::forms::{parse_form, parse_form_in, Form, ProjPoint};
use apolar::hilbert::{gotzmann_number, veronese_threshold, HilbertPolynomial};
use apolar::tensor3::{
    bini_check, eval_expression, expand_family, schoenhage_family, RankExpression, SchoenhageReport,
};
use apolar::waring::{certify_unique, check_span_intersection, recover_rank2_scheme, span_membership, Rank2Recovery};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::report::{self, parse_rat_value};
use crate::sweeps::{intersection_instances, uniqueness_forms};
use crate::{Command, CounterexampleArgs};

pub struct Context {
    pub config: Config,
    pub parallel: bool,
}

/// Report sections produced by a command. A nonempty `breaches` list turns
/// the run into an internal failure after the report is printed.
#[derive(Debug, Default)]
pub struct Outcome {
    pub input: Value,
    pub result: Value,
    pub certificates: Vec<Value>,
    pub warnings: Vec<String>,
    pub breaches: Vec<String>,
}

impl Outcome {
    fn new(input: Value, result: Value) -> Self {
        Outcome { input, result, ..Default::default() }
    }
}

pub fn execute(cmd: &Command, ctx: &Context) -> CliResult<Outcome> {
    match cmd {
        Command::RankBinary(f) => rank_binary(&f.form, ctx),
        Command::Catalecticant { form, a } => catalecticant_cmd(&form.form, *a, ctx),
        Command::CertifyUnique { form, decomp } => certify_cmd(&form.form, decomp, ctx),
        Command::Gotzmann { poly, r } => gotzmann_cmd(poly, *r),
        Command::Counterexample(args) => counterexample_cmd(args, ctx),
        Command::Schoenhage { e, l, sweep } => schoenhage_cmd(*e, *l, *sweep, ctx),
        Command::Bini => Ok(bini_cmd()),
        Command::TensorEval { input } => tensor_eval_cmd(input),
        Command::Recover(f) => recover_cmd(&f.form, ctx),
        Command::MainLemma { count, seed } => main_lemma_cmd(*count, seed.unwrap_or(ctx.config.seed), ctx),
        Command::Uniqueness { count, d, seed } => uniqueness_cmd(*count, *d, seed.unwrap_or(ctx.config.seed), ctx),
    }
}

fn normalize_minus(s: &str) -> String {
    s.replace('−', "-")
}

fn check_limits(f: &Form, config: &Config) -> CliResult<()> {
    if f.nvars() > config.max_vars {
        return Err(CliError::Input(format!("form has {} variables, limit is {}", f.nvars(), config.max_vars)));
    }
    if f.degree() > config.max_degree {
        return Err(CliError::Input(format!("form has degree {}, limit is {}", f.degree(), config.max_degree)));
    }
    Ok(())
}

fn read_form(text: &str, config: &Config) -> CliResult<Form> {
    let f = parse_form(&normalize_minus(text))?;
    check_limits(&f, config)?;
    Ok(f)
}

fn profile_json(p: &BorderRankProfile) -> Value {
    let ranks: BTreeMap<String, usize> = p.ranks.iter().map(|(a, r)| (a.to_string(), *r)).collect();
    json!({ "ranks": ranks, "lower_bound": p.lower_bound, "best_a": p.best_a() })
}

fn decomposition_json(dec: &[(Rat, ProjPoint)]) -> Value {
    Value::Array(dec.iter().map(|(c, v)| json!({ "coef": report::rat(c), "point": report::point(v) })).collect())
}

fn rank_binary(text: &str, ctx: &Context) -> CliResult<Outcome> {
    let p = parse_form_in(&normalize_minus(text), 1)?;
    check_limits(&p, &ctx.config)?;
    let cert = binary_rank(&p)?;
    let dec = binary_decompose(&cert, &p)?;
    let mut out = Outcome::new(
        json!({ "form": text }),
        json!({
            "form": report::form(&p),
            "degree": cert.d,
            "rank": cert.rank,
            "border_rank": cert.border_rank,
        }),
    );
    out.certificates.push(json!({
        "kind": "apolar-generator",
        "homogeneous_generator": report::rats(&cert.homogeneous_generator),
        "generator": report::poly(&cert.apolar_generator),
        "infinity_multiplicity": cert.infinity_multiplicity,
        "squarefree": cert.squarefree,
    }));
    let (decomposition, verified) = match &dec {
        BinaryDecomposition::Waring(terms) => {
            let ok = sum_of_powers(terms, 1, cert.d) == p;
            (json!({ "kind": "waring", "terms": decomposition_json(terms) }), Some(ok))
        }
        BinaryDecomposition::Scheme { scheme, coefficients } => {
            let ok = span_membership(&p, scheme, cert.d)?.is_some();
            (
                json!({ "kind": "scheme", "scheme": report::scheme(scheme), "coefficients": report::rats(coefficients) }),
                Some(ok),
            )
        }
        BinaryDecomposition::IrrationalRoots { generator } => {
            out.warnings.push("the apolar generator has irrational roots; no rational decomposition".into());
            (json!({ "kind": "irrational-roots", "generator": report::poly(generator) }), None)
        }
        BinaryDecomposition::HighMultiplicity { generator } => {
            out.warnings.push("the apolar generator has a root of multiplicity at least three".into());
            (json!({ "kind": "high-multiplicity", "generator": report::poly(generator) }), None)
        }
    };
    out.result["decomposition"] = decomposition;
    if let Some(ok) = verified {
        out.certificates.push(json!({ "kind": "re-summation", "verified": ok }));
        if !ok {
            out.breaches.push("decomposition does not sum back to the form".into());
        }
    }
    Ok(out)
}

fn catalecticant_cmd(text: &str, a: Option<u32>, ctx: &Context) -> CliResult<Outcome> {
    let p = read_form(text, &ctx.config)?;
    let input = json!({ "form": text, "a": a });
    let result = match a {
        Some(a) => {
            let c = catalecticant(&p, a)?;
            let rows: Vec<Value> = (0..c.matrix.rows()).map(|i| report::rats(c.matrix.row(i))).collect();
            json!({
                "a": c.a,
                "d": c.d,
                "rows": c.row_index.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "columns": c.col_index.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "matrix": rows,
                "rank": c.rank(),
            })
        }
        None => {
            let prof = if ctx.parallel { border_rank_lower_bound_par(&p)? } else { border_rank_lower_bound(&p)? };
            profile_json(&prof)
        }
    };
    Ok(Outcome::new(input, result))
}

fn parse_decomposition(path: &Path, nvars: usize) -> CliResult<Vec<(Rat, ProjPoint)>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let v: Value = serde_json::from_str(&text)?;
    let items = v.as_array().ok_or_else(|| CliError::Input("decomposition must be a JSON array".into()))?;
    items
        .iter()
        .map(|item| {
            let coef = parse_rat_value(item.get("coef").ok_or_else(|| CliError::Input("term without \"coef\"".into()))?)?;
            let coords = item
                .get("point")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::Input("term without a \"point\" array".into()))?
                .iter()
                .map(parse_rat_value)
                .collect::<CliResult<Vec<_>>>()?;
            if coords.len() != nvars {
                return Err(CliError::Input(format!("point has {} coordinates, form has {nvars} variables", coords.len())));
            }
            Ok((coef, ProjPoint::new(coords)?))
        })
        .collect()
}

fn certify_cmd(text: &str, decomp: &Path, ctx: &Context) -> CliResult<Outcome> {
    let p = read_form(text, &ctx.config)?;
    let dec = parse_decomposition(decomp, p.nvars())?;
    let cert = certify_unique(&p, &dec, p.degree())?;
    let mut out = Outcome::new(
        json!({ "form": text, "decomposition": decomposition_json(&dec) }),
        json!({ "d": cert.d, "r": cert.r, "status": format!("{:?}", cert.status) }),
    );
    out.certificates.push(json!({
        "kind": "flattening-rank",
        "profile": cert.border_rank_witness.as_ref().map(profile_json),
    }));
    Ok(out)
}

fn gotzmann_cmd(poly: &str, r: Option<u64>) -> CliResult<Outcome> {
    let coeffs = poly
        .split(',')
        .map(|s| parse_rat(&normalize_minus(s)).ok_or_else(|| CliError::Input(format!("not a rational coefficient: {s:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    let hp = HilbertPolynomial::from_coeffs(coeffs)?;
    let g = gotzmann_number(&hp)?;
    let mut result = json!({
        "polynomial": hp.to_string(),
        "gotzmann_number": g.gotzmann_number,
        "a_list": g.a_list,
    });
    if let Some(r) = r {
        let t = veronese_threshold(&hp, r)?;
        result["thresholds"] = json!({ "r": r, "main": t.main, "component": t.component, "uniqueness": t.uniqueness });
    }
    Ok(Outcome::new(json!({ "poly": poly, "r": r }), result))
}

fn counterexample_json(rep: &CounterexampleReport) -> Value {
    json!({
        "k": rep.k,
        "d": rep.d,
        "witness": report::form(&rep.witness.form),
        "direction": report::point(&rep.witness.direction),
        "fallbacks": rep.witness.fallbacks,
        "curve_span_coefficients": rep.curve_span_coefficients.as_deref().map(report::rats),
        "scheme": rep.scheme.as_ref().map(report::scheme),
        "scheme_coefficients": rep.scheme_coefficients.as_deref().map(report::rats),
        "scheme_unique": rep.scheme_unique,
        "tangent_in_star": rep.tangent_in_star,
        "holds": rep.holds,
        "conclusion": rep.conclusion,
        "membership": if rep.holds { "not in σ₂(v_d(X))" } else { "undetermined" },
        "equation_degree_bound": rep.equation_degree_bound,
    })
}

fn counterexample_cmd(args: &CounterexampleArgs, ctx: &Context) -> CliResult<Outcome> {
    let modes = args.k.is_some() as u8 + args.ci_cubics as u8 + args.grid as u8;
    if modes != 1 {
        return Err(CliError::Input("give exactly one of --k, --ci-cubics or --grid".into()));
    }
    if args.ci_cubics {
        return ci_cubics_cmd(args.d);
    }
    if args.grid {
        let cells: Vec<(usize, u32)> = (3..=6).flat_map(|k| (3..=8).map(move |d| (k, d))).collect();
        let run = |&(k, d): &(usize, u32)| -> CliResult<CounterexampleReport> {
            Ok(verify_counterexample(&coordinate_axes_curve(k)?, d)?)
        };
        let reports: Vec<CounterexampleReport> = if ctx.parallel {
            cells.par_iter().map(run).collect::<CliResult<_>>()?
        } else {
            cells.iter().map(run).collect::<CliResult<_>>()?
        };
        let mut out = Outcome::new(
            json!({ "grid": { "k": [3, 6], "d": [3, 8] } }),
            json!({
                "cells": reports.len(),
                "holding": reports.iter().filter(|r| r.holds).count(),
                "reports": reports.iter().map(counterexample_json).collect::<Vec<_>>(),
            }),
        );
        for r in reports.iter().filter(|r| !r.holds) {
            out.breaches.push(format!("counterexample not established for k = {}, d = {}", r.k, r.d));
        }
        return Ok(out);
    }
    let k = args.k.expect("mode checked above");
    let d = args.d.ok_or_else(|| CliError::Input("--k needs --d".into()))?;
    let rep = verify_counterexample(&coordinate_axes_curve(k)?, d)?;
    let mut out = Outcome::new(json!({ "k": k, "d": d }), counterexample_json(&rep));
    if !rep.holds {
        if k >= 3 {
            out.breaches.push(format!("counterexample not established for k = {k}, d = {d}"));
        } else {
            out.warnings.push("two lines span a plane; the secant variety is filled".into());
        }
    }
    Ok(out)
}

fn ci_cubics_cmd(d: Option<u32>) -> CliResult<Outcome> {
    let rep = ci_cubics_pipeline()?;
    let solutions = match &rep.solutions {
        ConicSolutions::Points(pts) => json!({
            "kind": "points",
            "points": pts.iter().map(|(p, m)| json!({ "point": report::point(p), "multiplicity": m })).collect::<Vec<_>>(),
        }),
        ConicSolutions::IrrationalSolutions => json!({ "kind": "irrational" }),
        ConicSolutions::NotFinite => json!({ "kind": "not-finite" }),
    };
    let star = rep.star.as_ref().map(|s| {
        json!({
            "planes": s.planes.iter().map(report::form).collect::<Vec<_>>(),
            "normals": s.normals.iter().map(|n| n.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "product_degree": s.degree(),
        })
    });
    let mut result = json!({
        "conics": [report::form(&rep.q1), report::form(&rep.q2)],
        "solutions": solutions,
        "lines": rep.curve.as_ref().map(|c| c.k()),
        "tangent_star": star,
        "no_equations_up_to": rep.no_equations_up_to,
    });
    let mut out = Outcome::new(json!({ "ci_cubics": true, "d": d }), Value::Null);
    match (d, &rep.curve) {
        (Some(d), Some(curve)) => {
            let c = verify_counterexample(curve, d)?;
            if !c.holds {
                out.breaches.push(format!("counterexample not established on the cone for d = {d}"));
            }
            result["counterexample"] = counterexample_json(&c);
        }
        (_, None) => out.breaches.push("conic pair did not give four simple lines".into()),
        _ => {}
    }
    out.result = result;
    Ok(out)
}

fn schoenhage_json(rep: &SchoenhageReport, with_coefficients: bool) -> Value {
    let mut v = json!({
        "e": rep.e,
        "l": rep.l,
        "h": rep.h,
        "terms": rep.term_count,
        "t0_zero": rep.t0_zero,
        "t1_zero": rep.t1_zero,
        "t2_matches": rep.t2_matches,
        "nonzero_degrees": rep.nonzero_degrees,
        "holds": rep.holds(),
    });
    if with_coefficients {
        let coeffs: BTreeMap<String, Value> =
            rep.coefficients.iter().map(|(k, t)| (format!("t^{k}"), report::tensor(t))).collect();
        v["coefficients"] = json!(coeffs);
    }
    v
}

fn schoenhage_cmd(e: usize, l: usize, sweep: bool, ctx: &Context) -> CliResult<Outcome> {
    let mut out = if sweep {
        let cells: Vec<(usize, usize)> = (2..=4).flat_map(|e| (2..=3).map(move |l| (e, l))).collect();
        let run = |&(e, l): &(usize, usize)| schoenhage_family(e, l).map(|r| r.1);
        let reports: Vec<SchoenhageReport> = if ctx.parallel {
            cells.par_iter().map(run).collect::<Result<_, _>>()?
        } else {
            cells.iter().map(run).collect::<Result<_, _>>()?
        };
        let mut out = Outcome::new(
            json!({ "sweep": { "e": [2, 4], "l": [2, 3] } }),
            json!({ "reports": reports.iter().map(|r| schoenhage_json(r, false)).collect::<Vec<_>>() }),
        );
        for r in reports.iter().filter(|r| !r.holds()) {
            out.breaches.push(format!("degeneration fails for e = {}, l = {}", r.e, r.l));
        }
        out
    } else {
        let (_, rep) = schoenhage_family(e, l)?;
        let mut out = Outcome::new(json!({ "e": e, "l": l }), schoenhage_json(&rep, true));
        if !rep.holds() {
            out.breaches.push(format!("degeneration fails for e = {e}, l = {l}"));
        }
        if rep.nonzero_degrees.iter().any(|&k| k > 2) {
            out.warnings.push("coefficients above t^2 are nonzero; they vanish after dividing by t^2 and letting t → 0".into());
        }
        out
    };
    out.certificates.push(json!({ "kind": "exact-expansion", "arithmetic": "rational" }));
    Ok(out)
}

fn bini_cmd() -> Outcome {
    let rep = bini_check();
    let mut out = Outcome::new(
        json!({}),
        json!({
            "x5_identity": rep.x5_identity,
            "span_dim": rep.span_dim,
            "x5_in_span": rep.x5_in_span,
            "x5_avoids_triples": rep.x5_avoids_triples,
            "partial_product_matches": rep.partial_product_matches,
            "holds": rep.holds(),
        }),
    );
    if !rep.holds() {
        out.breaches.push("Bini check failed".into());
    }
    out
}

fn parse_poly_entry(v: &Value) -> CliResult<UniPoly> {
    match v {
        Value::Object(m) => {
            let mut coeffs: Vec<Rat> = Vec::new();
            for (key, c) in m {
                let k: usize = key
                    .strip_prefix("t^")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| CliError::Input(format!("polynomial key must look like \"t^k\", got {key:?}")))?;
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, Rat::from_integer(0.into()));
                }
                coeffs[k] = parse_entry(c)?;
            }
            Ok(UniPoly::new(coeffs))
        }
        other => Ok(UniPoly::constant(parse_entry(other)?)),
    }
}

fn parse_entry(v: &Value) -> CliResult<Rat> {
    match v {
        Value::String(s) => parse_rat_value(&Value::String(normalize_minus(s))),
        other => parse_rat_value(other),
    }
}

fn tensor_eval_cmd(input: &str) -> CliResult<Outcome> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        std::fs::read_to_string(input).map_err(|source| CliError::Io { path: input.into(), source })?
    };
    let v: Value = serde_json::from_str(&text)?;
    let dims: [usize; 3] = v
        .get("dims")
        .and_then(|d| serde_json::from_value(d.clone()).ok())
        .ok_or_else(|| CliError::Input("\"dims\" must be three nonnegative integers".into()))?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Input("\"terms\" must be an array".into()))?;
    let vectors = |term: &Value| -> CliResult<Vec<Vec<Value>>> {
        let parts = term.as_array().filter(|t| t.len() == 3).ok_or_else(|| CliError::Input("each term must be [u, v, w]".into()))?;
        parts
            .iter()
            .map(|p| p.as_array().cloned().ok_or_else(|| CliError::Input("term factors must be arrays".into())))
            .collect()
    };
    let raw: Vec<Vec<Vec<Value>>> = terms.iter().map(vectors).collect::<CliResult<_>>()?;
    let polynomial = raw.iter().flatten().flatten().any(Value::is_object);
    let input_echo = json!({ "dims": dims, "terms": terms.len() });
    if polynomial {
        let mut expr: RankExpression<UniPoly> = RankExpression::new(dims);
        for t in &raw {
            let [u, v, w] = [0, 1, 2].map(|i| t[i].iter().map(parse_poly_entry).collect::<CliResult<Vec<_>>>());
            expr.push(u?, v?, w?)?;
        }
        let family = eval_expression(&expr)?;
        let expansion: BTreeMap<String, Value> =
            expand_family(&family).iter().map(|(k, t)| (format!("t^{k}"), report::tensor(t))).collect();
        Ok(Outcome::new(input_echo, json!({ "mode": "polynomial", "dims": dims, "expansion": expansion })))
    } else {
        let mut expr: RankExpression<Rat> = RankExpression::new(dims);
        for t in &raw {
            let [u, v, w] = [0, 1, 2].map(|i| t[i].iter().map(parse_entry).collect::<CliResult<Vec<_>>>());
            expr.push(u?, v?, w?)?;
        }
        let tensor = eval_expression(&expr)?;
        Ok(Outcome::new(input_echo, json!({ "mode": "rational", "tensor": report::tensor(&tensor) })))
    }
}

fn recover_cmd(text: &str, ctx: &Context) -> CliResult<Outcome> {
    let p = read_form(text, &ctx.config)?;
    let d = p.degree();
    let mut out = Outcome::new(json!({ "form": text }), Value::Null);
    out.result = match recover_rank2_scheme(&p, d)? {
        Rank2Recovery::Scheme(s) => {
            let coeffs = span_membership(&p, &s, d)?;
            if coeffs.is_none() {
                out.breaches.push("recovered scheme does not span the form".into());
            }
            out.certificates.push(json!({ "kind": "span-membership", "verified": coeffs.is_some() }));
            json!({
                "kind": "scheme",
                "degree": s.degree(),
                "scheme": report::scheme(&s),
                "coefficients": coeffs.as_deref().map(report::rats),
            })
        }
        Rank2Recovery::NotBorderRankTwo => json!({ "kind": "not-border-rank-two" }),
        Rank2Recovery::IrrationalRoots(g) => {
            out.warnings.push("the scheme is defined over a quadratic extension".into());
            json!({ "kind": "irrational-roots", "generator": report::poly(&g) })
        }
    };
    Ok(out)
}

fn main_lemma_cmd(count: usize, seed: u64, ctx: &Context) -> CliResult<Outcome> {
    let instances = intersection_instances(seed, count);
    let run = |inst: &crate::sweeps::IntersectionInstance| check_span_intersection(&inst.scheme, &inst.points, inst.d);
    let checks: Vec<_> = if ctx.parallel {
        instances.par_iter().map(run).collect::<Result<_, _>>()?
    } else {
        instances.iter().map(run).collect::<Result<_, _>>()?
    };
    let failures: Vec<usize> = checks.iter().enumerate().filter(|(_, c)| !c.holds).map(|(i, _)| i).collect();
    let mut out = Outcome::new(
        json!({ "count": count, "seed": seed }),
        json!({ "instances": count, "holding": count - failures.len(), "failures": failures }),
    );
    for i in &failures {
        out.breaches.push(format!("span intersection identity fails on instance {i}"));
    }
    Ok(out)
}

fn uniqueness_cmd(count: usize, d: u32, seed: u64, ctx: &Context) -> CliResult<Outcome> {
    if d < 3 {
        return Err(CliError::Input("uniqueness of two terms needs d >= 3".into()));
    }
    let forms = uniqueness_forms(seed, count, d);
    let run = |g: &crate::sweeps::GridForm| certify_unique(&g.form, &g.decomposition, d);
    let certs: Vec<_> = if ctx.parallel {
        forms.par_iter().map(run).collect::<Result<_, _>>()?
    } else {
        forms.iter().map(run).collect::<Result<_, _>>()?
    };
    let failures: Vec<usize> = certs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.status != apolar::waring::CertificateStatus::Certified)
        .map(|(i, _)| i)
        .collect();
    let mut out = Outcome::new(
        json!({ "count": count, "d": d, "seed": seed }),
        json!({ "forms": count, "certified": count - failures.len(), "failures": failures }),
    );
    for i in &failures {
        out.breaches.push(format!("form {i} was not certified unique"));
    }
    Ok(out)
}
