use std::fmt::Write as _;

use num_complex::Complex;
use num_traits::Zero;
use serde_json::{json, Value};
use stw_core::formal_group::{
    classical_bernoulli, formal_exponential, formal_logarithm, group_law_bb, group_law_exp_log, s_expansion,
    universal_bernoulli, verify_axioms, AxiomReport, GroupLaw,
};
use stw_core::lseries::{classical_demo_with_order, extract_an, honda_check};
use stw_core::numeric::{ParamResult, Parametrization, Real};
use stw_core::series::{int, BiSeries, LaurentSeries, Rational, UniSeries};
use stw_core::weierstrass::wp_coefficients;
use stw_core::Curve;

use crate::config::{Command, RunConfig};
use crate::CliError;

/// A rendered command result.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// False when a verification embedded in the report failed.
    pub passed: bool,
}

impl Report {
    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("report is valid JSON");
        s.push('\n');
        s
    }
}

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn rats(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rat).collect())
}

fn series_json(s: &UniSeries) -> Value {
    json!({ "order": s.order(), "coeffs": rats(s.coeffs()) })
}

fn laurent_json(s: &LaurentSeries) -> Value {
    let v = s.valuation();
    let coeffs: Vec<Rational> = (v..=s.precision()).map(|k| s.coeff(k).expect("k <= precision")).collect();
    json!({ "valuation": v, "order": s.precision(), "coeffs": rats(&coeffs) })
}

fn bi_json(s: &BiSeries) -> Value {
    let terms: Vec<Value> = s.terms().map(|(i, j, c)| json!({ "i": i, "j": j, "c": rat(c) })).collect();
    json!({ "order": s.order(), "terms": terms })
}

fn complex_json<T: Real>(c: Complex<T>) -> Value {
    json!({ "re": format!("{:e}", c.re), "im": format!("{:e}", c.im), "precision": T::PRECISION_BITS })
}

fn axioms_json(r: &AxiomReport) -> Value {
    json!({ "order": r.order, "neutral": r.neutral, "commutative": r.commutative, "associative": r.associative })
}

fn curve_of(config: &RunConfig) -> Curve {
    Curve::formal(config.g2.clone().expect("resolved"), config.g3.clone().expect("resolved"))
}

fn series_text(out: &mut String, label: &str, offset: i64, coeffs: &[Rational]) {
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let _ = writeln!(out, "{label}[{}] = {c}", offset + k as i64);
        }
    }
}

pub(crate) fn build(config: &RunConfig) -> Result<Report, CliError> {
    let config_json = serde_json::to_value(config).expect("config serializes");
    let (body, text, passed) = match config.command {
        Command::Expand => expand(config)?,
        Command::Grouplaw => grouplaw(config)?,
        Command::Honda => honda(config)?,
        Command::Bernoulli => bernoulli(config)?,
        Command::Param => param(config)?,
        Command::Classical => classical(config)?,
    };
    let mut json = json!({ "config": config_json, "passed": passed });
    if let (Value::Object(map), Value::Object(extra)) = (&mut json, body) {
        map.extend(extra);
    }
    Ok(Report { json, text, passed })
}

type Parts = (Value, String, bool);

fn expand(config: &RunConfig) -> Result<Parts, CliError> {
    let curve = curve_of(config);
    let order = config.order.expect("resolved");
    let what = config.what.as_deref().expect("resolved");
    let mut text = format!("# {what} for {curve}, order {order}\n");
    let body = match what {
        "wp" | "wpp" => {
            let wp = wp_coefficients(&curve, order / 2 + 2)?;
            let l = if what == "wp" { wp.laurent() } else { wp.prime_laurent() };
            let l = l.truncate_to(order as i64)?;
            let coeffs: Vec<Rational> = (l.valuation()..=l.precision()).map(|k| l.coeff(k).unwrap()).collect();
            series_text(&mut text, "z^", l.valuation(), &coeffs);
            json!({ "what": what, "series": laurent_json(&l) })
        }
        "fe" | "fl" | "an" => {
            let fe = formal_exponential(&curve, order)?;
            if what == "fe" {
                series_text(&mut text, "T^", 0, fe.series.coeffs());
                json!({ "what": what, "series": series_json(&fe.series) })
            } else {
                let fl = formal_logarithm(&fe)?;
                if what == "fl" {
                    series_text(&mut text, "T^", 0, fl.series.coeffs());
                    json!({ "what": what, "series": series_json(&fl.series) })
                } else {
                    let an = extract_an(&fl, order)?;
                    series_text(&mut text, "a", 1, &an);
                    json!({ "what": what, "an": rats(&an) })
                }
            }
        }
        "s" => {
            let s = s_expansion(&curve, order)?;
            series_text(&mut text, "t^", 0, s.s.coeffs());
            json!({ "what": what, "series": series_json(&s.s) })
        }
        other => unreachable!("validated --what {other}"),
    };
    Ok((body, text, true))
}

fn grouplaw(config: &RunConfig) -> Result<Parts, CliError> {
    let curve = curve_of(config);
    let order = config.order.expect("resolved");
    let fe = formal_exponential(&curve, order)?;
    let fl = formal_logarithm(&fe)?;
    let exp_log = group_law_exp_log(&fe, &fl, order)?;
    let bb = group_law_bb(&curve, order)?;
    let agree = exp_log.series == bb.series;
    let ax_exp_log = verify_axioms(&exp_log);
    let ax_bb = verify_axioms(&bb);
    let shown: &GroupLaw = if config.what.as_deref() == Some("exp-log") { &exp_log } else { &bb };
    let passed = agree && ax_exp_log.passed() && ax_bb.passed();

    let mut text = format!("# formal group law of {curve}, total degree {order}\n");
    let _ = writeln!(text, "provenance: {}", shown.provenance.as_str());
    for (i, j, c) in shown.series.terms().filter(|(_, _, c)| !c.is_zero()) {
        let _ = writeln!(text, "t1^{i} t2^{j}: {c}");
    }
    let _ = writeln!(text, "constructions agree: {agree}");
    for (name, r) in [("exp-log", &ax_exp_log), ("buchstaber-bunkova", &ax_bb)] {
        let _ = writeln!(
            text,
            "axioms ({name}): neutral={} commutative={} associative={}",
            r.neutral, r.commutative, r.associative
        );
    }
    let body = json!({
        "law": { "provenance": shown.provenance.as_str(), "series": bi_json(&shown.series) },
        "constructions_agree": agree,
        "axioms": { "exp-log": axioms_json(&ax_exp_log), "buchstaber-bunkova": axioms_json(&ax_bb) },
    });
    Ok((body, text, passed))
}

fn honda(config: &RunConfig) -> Result<Parts, CliError> {
    let curve = Curve::new(config.g2.clone().expect("resolved"), config.g3.clone().expect("resolved"))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let order = config.order.expect("resolved");
    let pmax = config.pmax.expect("resolved");
    let fl = formal_logarithm(&formal_exponential(&curve, order)?)?;
    let report = honda_check(&curve, pmax, &fl)?;
    let mut text = format!("# a(p) vs p + 1 - #E(F_p) for {curve}\n");
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            match (e.skipped, e.trace) {
                (Some(reason), _) => {
                    let _ = writeln!(text, "p = {:>4}  skipped: {reason}", e.p);
                }
                (None, Some(trace)) => {
                    let verdict = if e.congruent { "congruent" } else { "NOT congruent" };
                    let exact = if e.exact { " (equal)" } else { "" };
                    let _ = writeln!(text, "p = {:>4}  a(p) = {}  trace = {trace}  {verdict}{exact}", e.p, e.a_p);
                }
                (None, None) => unreachable!("checked entries carry a trace"),
            }
            json!({
                "p": e.p,
                "a_p": rat(&e.a_p),
                "trace": e.trace,
                "congruent": e.congruent,
                "exact": e.exact,
                "skipped": e.skipped.map(|r| r.as_str()),
            })
        })
        .collect();
    let passed = report.all_congruent();
    let _ = writeln!(text, "all congruent: {passed}");
    Ok((json!({ "entries": entries, "all_congruent": passed }), text, passed))
}

fn bernoulli(config: &RunConfig) -> Result<Parts, CliError> {
    let curve = curve_of(config);
    let order = config.order.expect("resolved");
    let fe = formal_exponential(&curve, order + 1)?;
    let b = universal_bernoulli(&fe, order)?;
    let wp = wp_coefficients(&curve, (order / 2).max(2))?;
    let bh: Vec<(usize, Rational)> =
        (4..=order).map(|k| wp.bernoulli_hurwitz(k).map(|v| (k, v))).collect::<Result<_, _>>()?;
    let mut relations = Vec::new();
    let mut passed = true;
    for (k, factor) in [(4usize, -6i64), (6, -15)] {
        if k <= order {
            let holds = b[k] == &bh[k - 4].1 * int(factor);
            passed &= holds;
            relations.push((k, factor, holds));
        }
    }
    let mut text = format!("# universal Bernoulli numbers of {curve}\n");
    series_text(&mut text, "B^", 0, &b);
    for (k, v) in &bh {
        if !v.is_zero() {
            let _ = writeln!(text, "BH[{k}] = {v}");
        }
    }
    for (k, factor, holds) in &relations {
        let _ = writeln!(text, "B^[{k}] = {factor} * BH[{k}]: {holds}");
    }
    let body = json!({
        "universal": rats(&b),
        "bernoulli_hurwitz": bh.iter().map(|(k, v)| json!({ "k": k, "value": rat(v) })).collect::<Vec<_>>(),
        "relations": relations
            .iter()
            .map(|(k, f, h)| json!({ "k": k, "factor": f, "holds": h }))
            .collect::<Vec<_>>(),
    });
    Ok((body, text, passed))
}

fn param_json(p: &ParamResult) -> Value {
    json!({
        "z": complex_json(p.z),
        "q": complex_json(p.q),
        "F": complex_json(p.f),
        "alpha": complex_json(p.alpha),
        "beta": complex_json(p.beta),
        "residual": p.residual,
        "relative_residual": p.relative_residual,
        "truncation_estimate": p.truncation_estimate,
    })
}

fn param(config: &RunConfig) -> Result<Parts, CliError> {
    let curve = curve_of(config);
    let order = config.order.expect("resolved");
    let nmax = config.nmax.expect("resolved") as usize;
    let z = config.z.as_ref().expect("resolved").value;
    let fl = formal_logarithm(&formal_exponential(&curve, order)?)?;
    let par = Parametrization::<f64>::new(&curve, &fl, nmax, order)?;
    let p = par.point(z)?;
    let mut text = format!("# modular parametrization of {curve} at z = {z}\n");
    for (name, v) in [("q", p.q), ("F", p.f), ("alpha", p.alpha), ("beta", p.beta)] {
        let _ = writeln!(text, "{name} = {:e} + {:e}i", v.re, v.im);
    }
    let _ = writeln!(text, "residual = {:e}", p.residual);
    let _ = writeln!(text, "relative residual = {:e}", p.relative_residual);
    let _ = writeln!(text, "truncation estimate = {:e}", p.truncation_estimate);
    let _ = writeln!(text, "℘ reliability radius = {:e}", par.wp().radius());
    Ok((json!({ "result": param_json(&p), "wp_radius": par.wp().radius() }), text, true))
}

fn classical(config: &RunConfig) -> Result<Parts, CliError> {
    let order = config.order.expect("resolved");
    let nmax = config.nmax.expect("resolved");
    let s = config.s.as_ref().expect("resolved");
    let report = classical_demo_with_order(order, nmax, s)?;
    let bernoulli = classical_bernoulli(order);
    let mut text = "# f_E = e^T - 1, f_L = log(1 + T)\n".to_string();
    series_text(&mut text, "a", 1, &report.an);
    series_text(&mut text, "B", 0, &bernoulli);
    let _ = writeln!(text, "a(n) = (-1)^(n-1): {}", report.log_coefficients_match);
    for e in &report.eta {
        let _ = writeln!(
            text,
            "eta({}) partial sum over {} terms = {:.15}, reference = {:.15}, |error| = {:e}",
            e.s, e.terms, e.partial_sum, e.reference, e.abs_error
        );
    }
    let eta: Vec<Value> = report
        .eta
        .iter()
        .map(|e| {
            json!({
                "s": e.s,
                "terms": e.terms,
                "partial_sum": e.partial_sum,
                "reference": e.reference,
                "abs_error": e.abs_error,
            })
        })
        .collect();
    let body = json!({
        "series_order": report.series_order,
        "an": rats(&report.an),
        "log_coefficients_match": report.log_coefficients_match,
        "bernoulli": rats(&bernoulli),
        "eta": eta,
    });
    Ok((body, text, report.log_coefficients_match))
}
