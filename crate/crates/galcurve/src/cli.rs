//! Command-line front end: flag parsing, orchestration, report emission.
//!
//! Reports are deterministic: identical invocations produce byte-identical
//! output. Negative mathematical verdicts (a point that is not Galois, a
//! curve that is classical) exit 0 with the verdict in the report; only
//! usage and operational errors exit nonzero.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bivar::SearchCap;
use crate::curve::{GaloisPointReport, PlaneCurve, ProjPlanePoint};
use crate::decomp::{construct_candidate_curve, decompose, verify_theorems};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::fnc::{borges_identity, corollary_pipeline, is_frobenius_nonclassical, is_minimal_value_set};
use crate::moebius::{aut_group, short_orbits, verify_fact_bound};
use crate::parse;
use crate::poly::{ValueMode, Var};
use crate::report::{to_json, SCHEMA_VERSION};
use crate::survey::{run_survey, to_csv, SurveyConfig, SurveyMode};

pub const SUBCOMMANDS: &[&str] = &[
    "galois-ratfunc",
    "valueset",
    "survey",
    "galois-point",
    "decompose",
    "verify-theorems",
    "fnc-check",
    "mvsp-check",
    "construct",
];

/// Outcome of one invocation.
#[derive(Debug)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Entry point used by the binary: parses flags, dispatches, formats errors.
pub fn run(args: &[String]) -> CliOutput {
    let Some((name, rest)) = args.split_first() else {
        return CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: usage(),
        };
    };
    let flags = match parse_flags(rest) {
        Ok(f) => f,
        Err(e) => {
            return CliOutput {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    match run_subcommand(name, &flags) {
        Ok(body) => match flags.get("out") {
            Some(path) => match std::fs::write(path, &body) {
                Ok(()) => CliOutput {
                    code: 0,
                    stdout: String::new(),
                    stderr: String::new(),
                },
                Err(e) => CliOutput {
                    code: 1,
                    stdout: String::new(),
                    stderr: format!("error: cannot write {path}: {e}\n"),
                },
            },
            None => CliOutput {
                code: 0,
                stdout: body,
                stderr: String::new(),
            },
        },
        Err(e @ Error::Usage(_)) => CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n{}", usage()),
        },
        Err(e) => CliOutput {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn usage() -> String {
    format!(
        "usage: galcurve <subcommand> [--flag value]...\n\
         subcommands: {}\n\
         common flags: --field p^n[:c0,..,cn]  --curve EXPR | --curve-file FILE\n\
         \x20                --ratfunc EXPR  --poly EXPR  --p1 (a:b:c)  --p2 (a:b:c)\n\
         \x20                --mode M  --deg lo..hi  --ext-degree m\n\
         \x20                --cap-degree N  --cap-steps N  --format json|csv  --out FILE\n",
        SUBCOMMANDS.join(", ")
    )
}

type Flags = BTreeMap<String, String>;

fn parse_flags(args: &[String]) -> Result<Flags> {
    let mut flags = Flags::new();
    let mut it = args.iter();
    while let Some(key) = it.next() {
        let Some(name) = key.strip_prefix("--") else {
            return Err(Error::Usage(format!("expected a --flag, got `{key}`")));
        };
        let Some(value) = it.next() else {
            return Err(Error::Usage(format!("flag --{name} needs a value")));
        };
        if flags.insert(name.to_string(), value.clone()).is_some() {
            return Err(Error::Usage(format!("duplicate flag --{name}")));
        }
    }
    Ok(flags)
}

fn need<'a>(flags: &'a Flags, name: &str) -> Result<&'a str> {
    flags
        .get(name)
        .map(String::as_str)
        .ok_or_else(|| Error::Usage(format!("missing required flag --{name}")))
}

fn field_from(flags: &Flags) -> Result<FieldCtx> {
    parse::parse_field_spec(need(flags, "field")?)
}

/// Curve from --curve-file (field included) or --field + --curve.
fn curve_from(flags: &Flags) -> Result<(FieldCtx, PlaneCurve)> {
    if let Some(path) = flags.get("curve-file") {
        let text = std::fs::read_to_string(path)?;
        let cf = parse::parse_curve_file(&text)?;
        return Ok((cf.ctx, cf.curve));
    }
    let ctx = field_from(flags)?;
    let curve = parse::parse_curve(&ctx, need(flags, "curve")?)?;
    Ok((ctx, curve))
}

fn points_from(ctx: &FieldCtx, flags: &Flags) -> Result<(ProjPlanePoint, ProjPlanePoint)> {
    Ok((
        parse::parse_point(ctx, need(flags, "p1")?)?,
        parse::parse_point(ctx, need(flags, "p2")?)?,
    ))
}

fn search_cap_from(flags: &Flags) -> Result<SearchCap> {
    let mut cap = SearchCap::default();
    if let Some(d) = flags.get("cap-degree") {
        cap.max_degree = d
            .parse()
            .map_err(|_| Error::Usage(format!("invalid --cap-degree `{d}`")))?;
    }
    if let Some(s) = flags.get("cap-steps") {
        cap.steps = s
            .parse()
            .map_err(|_| Error::Usage(format!("invalid --cap-steps `{s}`")))?;
    }
    if let Some(e) = flags.get("ext-degree") {
        cap.max_ext = Some(
            e.parse()
                .map_err(|_| Error::Usage(format!("invalid --ext-degree `{e}`")))?,
        );
    }
    Ok(cap)
}

fn ext_degree_from(flags: &Flags) -> Result<usize> {
    match flags.get("ext-degree") {
        None => Ok(1),
        Some(m) => m
            .parse()
            .map_err(|_| Error::Usage(format!("invalid --ext-degree `{m}`"))),
    }
}

fn deg_range_from(flags: &Flags) -> Result<(usize, usize)> {
    let raw = need(flags, "deg")?;
    let (lo, hi) = match raw.split_once("..") {
        Some((a, b)) => (a, b),
        None => (raw, raw),
    };
    let lo: usize = lo
        .parse()
        .map_err(|_| Error::Usage(format!("invalid degree `{lo}`")))?;
    let hi: usize = hi
        .parse()
        .map_err(|_| Error::Usage(format!("invalid degree `{hi}`")))?;
    Ok((lo, hi))
}

/// Dispatch; returns the report body.
pub fn run_subcommand(name: &str, flags: &Flags) -> Result<String> {
    match name {
        "galois-ratfunc" => cmd_galois_ratfunc(flags),
        "valueset" => cmd_valueset(flags),
        "survey" => cmd_survey(flags),
        "galois-point" => cmd_galois_point(flags),
        "decompose" => cmd_decompose(flags),
        "verify-theorems" => cmd_verify_theorems(flags),
        "fnc-check" => cmd_fnc_check(flags),
        "mvsp-check" => cmd_mvsp_check(flags),
        "construct" => cmd_construct(flags),
        other => Err(Error::Usage(format!("unknown subcommand `{other}`"))),
    }
}

// ---- subcommands ----

#[derive(Serialize)]
struct GaloisRatfuncReport {
    schema_version: u32,
    field: String,
    h: String,
    degree: usize,
    ext_degree: usize,
    aut_order: usize,
    galois: bool,
    elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    short_orbits: Option<Vec<Vec<String>>>,
}

fn cmd_galois_ratfunc(flags: &Flags) -> Result<String> {
    let ctx = field_from(flags)?;
    let h = parse::parse_ratfunc(&ctx, need(flags, "ratfunc")?, Var::X)?;
    let m = ext_degree_from(flags)?;
    let aut = aut_group(&h, m)?;
    let galois = aut.group.order() == h.degree();
    let orbits = if galois {
        Some(
            short_orbits(&h, m)?
                .into_iter()
                .map(|o| o.into_iter().map(|p| p.to_string()).collect())
                .collect(),
        )
    } else {
        None
    };
    to_json(&GaloisRatfuncReport {
        schema_version: SCHEMA_VERSION,
        field: ctx.spec_string(),
        h: h.to_string(),
        degree: h.degree(),
        ext_degree: m,
        aut_order: aut.group.order(),
        galois,
        elements: aut.group.iter().map(|s| s.to_string()).collect(),
        short_orbits: orbits,
    })
}

#[derive(Serialize)]
struct ValuesetReport {
    schema_version: u32,
    field: String,
    h: String,
    mode: String,
    size: usize,
    values: Vec<String>,
    bound: FactBoundPart,
}

#[derive(Serialize)]
struct FactBoundPart {
    galois: bool,
    deg: usize,
    lower: usize,
    slack: i64,
    ok: bool,
}

fn cmd_valueset(flags: &Flags) -> Result<String> {
    let ctx = field_from(flags)?;
    let h = parse::parse_ratfunc(&ctx, need(flags, "ratfunc")?, Var::X)?;
    let mode = match flags.get("mode").map(String::as_str) {
        None | Some("projective") => ValueMode::Projective,
        Some("affine") => ValueMode::Affine,
        Some(other) => return Err(Error::Usage(format!("unknown value-set mode `{other}`"))),
    };
    let vs = h.value_set(mode)?;
    let fact = verify_fact_bound(&h)?;
    to_json(&ValuesetReport {
        schema_version: SCHEMA_VERSION,
        field: ctx.spec_string(),
        h: h.to_string(),
        mode: match mode {
            ValueMode::Projective => "projective".into(),
            ValueMode::Affine => "affine".into(),
        },
        size: vs.len(),
        values: vs.iter().map(|p| p.to_string()).collect(),
        bound: FactBoundPart {
            galois: fact.galois,
            deg: fact.deg,
            lower: fact.lower,
            slack: fact.slack,
            ok: fact.ok,
        },
    })
}

#[derive(Serialize)]
struct SurveyJsonReport {
    schema_version: u32,
    field: String,
    mode: String,
    deg_lo: usize,
    deg_hi: usize,
    rows: Vec<crate::survey::SurveyRow>,
}

fn cmd_survey(flags: &Flags) -> Result<String> {
    let ctx = field_from(flags)?;
    let mode = SurveyMode::parse(need(flags, "mode")?)?;
    let (lo, hi) = deg_range_from(flags)?;
    let mut cfg = SurveyConfig::new(ctx.clone(), mode, lo, hi)?;
    cfg.ext_degree = ext_degree_from(flags)?;
    let rows = run_survey(&cfg)?;
    match flags.get("format").map(String::as_str) {
        None | Some("csv") => Ok(to_csv(mode, &rows)),
        Some("json") => to_json(&SurveyJsonReport {
            schema_version: SCHEMA_VERSION,
            field: ctx.spec_string(),
            mode: need(flags, "mode")?.to_string(),
            deg_lo: lo,
            deg_hi: hi,
            rows,
        }),
        Some(other) => Err(Error::Usage(format!("unknown format `{other}`"))),
    }
}

#[derive(Serialize)]
struct GaloisPointJson {
    schema_version: u32,
    field: String,
    curve: String,
    report: GaloisPointReport,
}

fn cmd_galois_point(flags: &Flags) -> Result<String> {
    let (ctx, curve) = curve_from(flags)?;
    let p = parse::parse_point(&ctx, need(flags, "point")?)?;
    let report = curve.is_galois_point(&p)?;
    to_json(&GaloisPointJson {
        schema_version: SCHEMA_VERSION,
        field: ctx.spec_string(),
        curve: curve.hom().to_string(),
        report,
    })
}

#[derive(Serialize)]
struct DecomposeJson {
    schema_version: u32,
    field: String,
    curve: String,
    p1: String,
    p2: String,
    f1: String,
    g1: String,
    f2: String,
    g2: String,
    order_gamma_p1: usize,
    order_gamma_p2: usize,
    order_joint: usize,
    s_quotient_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    t_witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coordinate_change: Option<String>,
}

fn cmd_decompose(flags: &Flags) -> Result<String> {
    let (ctx, curve) = curve_from(flags)?;
    let (p1, p2) = points_from(&ctx, flags)?;
    let dec = decompose(&curve, &p1, &p2)?;
    to_json(&DecomposeJson {
        schema_version: SCHEMA_VERSION,
        field: ctx.spec_string(),
        curve: curve.hom().to_string(),
        p1: p1.to_string(),
        p2: p2.to_string(),
        f1: dec.f1.to_string(),
        g1: dec.g1.to_string(),
        f2: dec.f2.to_string(),
        g2: dec.g2.to_string(),
        order_gamma_p1: dec.orders.0,
        order_gamma_p2: dec.orders.1,
        order_joint: dec.orders.2,
        s_quotient_degree: dec.s_quotient_degree,
        lambda: dec.lambda.map(|l| l.to_string()),
        t_witness: dec.t_witness.coeffs().iter().map(|c| c.to_string()).collect(),
        coordinate_change: dec.coordinate_change.map(|t| t.to_string()),
    })
}

fn cmd_verify_theorems(flags: &Flags) -> Result<String> {
    let (ctx, curve) = curve_from(flags)?;
    let (p1, p2) = points_from(&ctx, flags)?;
    let report = verify_theorems(&curve, &p1, &p2)?;
    to_json(&report)
}

#[derive(Serialize)]
struct FncDirectJson {
    schema_version: u32,
    field: String,
    curve: String,
    frobenius_nonclassical: bool,
}

fn cmd_fnc_check(flags: &Flags) -> Result<String> {
    let (ctx, curve) = curve_from(flags)?;
    if flags.contains_key("p1") || flags.contains_key("p2") {
        let (p1, p2) = points_from(&ctx, flags)?;
        let report = corollary_pipeline(&curve, &p1, &p2)?;
        to_json(&report)
    } else {
        let fnc = is_frobenius_nonclassical(&curve)?;
        to_json(&FncDirectJson {
            schema_version: SCHEMA_VERSION,
            field: ctx.spec_string(),
            curve: curve.hom().to_string(),
            frobenius_nonclassical: fnc,
        })
    }
}

#[derive(Serialize)]
struct MvspJson {
    schema_version: u32,
    field: String,
    f: String,
    degree: usize,
    v_size: usize,
    bound: usize,
    minimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_error: Option<String>,
}

fn cmd_mvsp_check(flags: &Flags) -> Result<String> {
    let ctx = field_from(flags)?;
    let f = parse::parse_unipoly(&ctx, need(flags, "poly")?, Var::X)?;
    let r = is_minimal_value_set(&f)?;
    let (theta, t_poly, certificate_error) = if r.minimal {
        match borges_identity(&f) {
            Ok(cert) => (
                Some(cert.theta.to_string()),
                Some(cert.t_poly.to_string()),
                None,
            ),
            Err(e) => (None, None, Some(e.to_string())),
        }
    } else {
        (None, None, None)
    };
    to_json(&MvspJson {
        schema_version: SCHEMA_VERSION,
        field: ctx.spec_string(),
        f: r.f,
        degree: r.degree,
        v_size: r.v_size,
        bound: r.bound,
        minimal: r.minimal,
        theta,
        t_poly,
        certificate_error,
    })
}

fn cmd_construct(flags: &Flags) -> Result<String> {
    let ctx = field_from(flags)?;
    let h1 = parse::parse_ratfunc(&ctx, need(flags, "h1")?, Var::X)?;
    let h2 = parse::parse_ratfunc(&ctx, need(flags, "h2")?, Var::Y)?;
    let cap = search_cap_from(flags)?;
    let report = construct_candidate_curve(&h1, &h2, &cap)?;
    to_json(&report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(pairs: &[(&str, &str)]) -> Flags {
        pairs
            .iter()
            .map(|&(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    #[test]
    fn test_verify_theorems_fermat_json() {
        let f = flags(&[
            ("field", "3^2"),
            ("curve", "x^4+y^4+1"),
            ("p1", "(1:0:0)"),
            ("p2", "(0:1:0)"),
        ]);
        let body = run_subcommand("verify-theorems", &f).unwrap();
        let v: serde_json::Value = serde_json::from_str(&body).unwrap();
        assert_eq!(v["applicable"], true);
        for clause in v["clauses"].as_array().unwrap() {
            assert_eq!(clause["holds"], true, "{clause}");
        }
    }

    #[test]
    fn test_valueset_x2_f5() {
        let f = flags(&[("field", "5^1"), ("ratfunc", "x^2")]);
        let body = run_subcommand("valueset", &f).unwrap();
        let v: serde_json::Value = serde_json::from_str(&body).unwrap();
        assert_eq!(v["size"], 4);
        let values: Vec<&str> = v["values"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_str().unwrap())
            .collect();
        assert_eq!(values, vec!["0", "1", "4", "inf"]);
    }

    #[test]
    fn test_survey_csv_galois_rows_satisfy_bound() {
        let f = flags(&[
            ("field", "3^1"),
            ("mode", "valueset-bound"),
            ("deg", "2..3"),
        ]);
        let body = run_subcommand("survey", &f).unwrap();
        let mut lines = body.lines();
        assert_eq!(
            lines.next().unwrap(),
            "q,h,deg,galois,v_size,lower_bound,slack"
        );
        for line in lines {
            let cols: Vec<&str> = line.split(',').collect();
            if cols[3] == "true" {
                let slack: i64 = cols[6].parse().unwrap();
                assert!((0..=1).contains(&slack), "{line}");
            }
        }
    }

    #[test]
    fn test_output_determinism() {
        let f = flags(&[
            ("field", "3^2"),
            ("curve", "x^4+y^4+1"),
            ("p1", "(1:0:0)"),
            ("p2", "(0:1:0)"),
        ]);
        let a = run_subcommand("decompose", &f).unwrap();
        let b = run_subcommand("decompose", &f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn test_unknown_subcommand_and_usage_errors() {
        assert!(matches!(
            run_subcommand("frobnicate", &Flags::new()),
            Err(Error::Usage(_))
        ));
        let out = run(&["frobnicate".to_string()]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("unknown subcommand"));
    }

    #[test]
    fn test_negative_verdict_exits_zero() {
        // a non-Galois cover still exits 0 with the verdict in the report
        let args: Vec<String> = [
            "galois-ratfunc",
            "--field",
            "5^1",
            "--ratfunc",
            "x^3",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let out = run(&args);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["galois"], false);
        assert_eq!(v["aut_order"], 1);
    }

    #[test]
    fn test_parse_error_position_surfaces() {
        let args: Vec<String> = ["valueset", "--field", "5^1", "--ratfunc", "x^"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let out = run(&args);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("offset 2"), "{}", out.stderr);
    }

    #[test]
    fn test_mvsp_check_x4_f9() {
        let f = flags(&[("field", "3^2"), ("poly", "x^4")]);
        let body = run_subcommand("mvsp-check", &f).unwrap();
        let v: serde_json::Value = serde_json::from_str(&body).unwrap();
        assert_eq!(v["minimal"], true);
        assert_eq!(v["v_size"], 3);
        assert_eq!(v["theta"], "1");
    }

    #[test]
    fn test_construct_fermat_pair_cli() {
        let f = flags(&[("field", "3^2"), ("h1", "x^4"), ("h2", "2*y^4+2")]);
        let body = run_subcommand("construct", &f).unwrap();
        let v: serde_json::Value = serde_json::from_str(&body).unwrap();
        let comps = v["components"].as_array().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0]["status"]["both_galois"], true);
    }

    #[test]
    fn test_fnc_check_direct_and_pipeline() {
        let direct = flags(&[("field", "2^2"), ("curve", "x^3+y^3+1")]);
        let body = run_subcommand("fnc-check", &direct).unwrap();
        let v: serde_json::Value = serde_json::from_str(&body).unwrap();
        assert_eq!(v["frobenius_nonclassical"], true);

        let pipe = flags(&[
            ("field", "2^2"),
            ("curve", "x^3+y^3+1"),
            ("p1", "(1:0:0)"),
            ("p2", "(0:1:0)"),
        ]);
        let body = run_subcommand("fnc-check", &pipe).unwrap();
        let v: serde_json::Value = serde_json::from_str(&body).unwrap();
        assert_eq!(v["verdict"], true);
        assert_eq!(v["cross_check"], true);
    }
}
