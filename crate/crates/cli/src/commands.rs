use std::fs;

use serde::Serialize;
use serde_json::Value;

use ramdiv::covering::io::parse_poly;
use ramdiv::genus::{predict_genus, GlobalModel};
use ramdiv::gorenstein::gorenstein_report;
use ramdiv::ramification::{
    candidate_places, devissage_check, gln_regression, local_model_at, ramification_divisor, GlnReport,
};
use ramdiv::snf::oracle_multiplicity;
use ramdiv::{Covering, CoveringFile, NormalityPolicy, PGroup, Place, RamOptions};

use crate::output::{table, Failure, Report};
use crate::InputArgs;

fn load(args: &InputArgs) -> Result<CoveringFile, Failure> {
    let text = fs::read_to_string(&args.input).map_err(|e| Failure {
        code: 1,
        kind: "Io".into(),
        message: format!("{}: {e}", args.input.display()),
        report: None,
    })?;
    let mut file = CoveringFile::from_json(&text)?;
    if args.degrees.is_some() {
        file.infinity_degrees = args.degrees.clone();
    }
    Ok(file)
}

fn describe(cov: &Covering) -> String {
    match cov {
        Covering::Kummer(kd) => {
            let f: Vec<String> = kd.functions().iter().map(|f| f.to_string()).collect();
            let twisted = if kd.is_untwisted() { "" } else { ", twisted" };
            format!("Kummer over {}: f = {}{twisted}", cov.group(), f.join(", "))
        }
        Covering::Cocycle(_) => format!("cocycle over {}", cov.group()),
    }
}

pub fn validate(args: &InputArgs) -> Result<Report, Failure> {
    let file = load(args)?;
    let report = file.covering.cocycle()?.validate();
    let passed = report.passed();
    let rows = [
        ("normalization", &report.normalization),
        ("symmetry", &report.symmetry),
        ("associativity", &report.associativity),
    ]
    .iter()
    .map(|(name, check)| {
        let status = match check {
            ramdiv::covering::CheckResult::Pass => "pass".to_string(),
            ramdiv::covering::CheckResult::Fail { detail, .. } => format!("FAIL {detail}"),
        };
        vec![name.to_string(), status]
    })
    .collect::<Vec<_>>();
    #[derive(Serialize)]
    struct Body {
        covering: String,
        passed: bool,
        checks: ramdiv::covering::ValidationReport,
    }
    let out = Report::new(
        "validate",
        Body { covering: describe(&file.covering), passed, checks: report.clone() },
        table(&["check", "result"], &rows),
    )?;
    match report.into_result() {
        Ok(()) => Ok(out),
        Err(e) => Err(Failure::from(e).with_report(out)),
    }
}

fn ram_rows(reports: &[ramdiv::RamReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| {
            vec![
                r.place.to_string(),
                r.stabilizer.order().to_string(),
                r.multiplicity.to_string(),
                normality_label(&r.normality),
            ]
        })
        .collect()
}

fn normality_label(n: &ramdiv::Normality) -> String {
    match n {
        ramdiv::Normality::Verified => "verified".into(),
        ramdiv::Normality::AssumedByCaller => "assumed".into(),
        ramdiv::Normality::Split => "split".into(),
        ramdiv::Normality::Rejected(why) => format!("rejected: {why}"),
    }
}

pub fn ramify(args: &InputArgs, infinity: bool, assume_normal: bool) -> Result<Report, Failure> {
    let file = load(args)?;
    let opts = RamOptions {
        include_infinity: infinity,
        infinity_degrees: file.infinity_degrees.clone(),
        policy: if assume_normal { NormalityPolicy::Assume } else { NormalityPolicy::Verify },
    };
    let r = ramification_divisor(&file.covering, &opts)?;
    #[derive(Serialize)]
    struct Body<'a> {
        covering: String,
        policy: NormalityPolicy,
        divisor_text: String,
        #[serde(flatten)]
        result: &'a ramdiv::ramification::RamificationResult,
    }
    let mut text = table(&["place", "|N|", "mult", "normality"], &ram_rows(&r.reports));
    text.push_str(&format!("R_G = {}\ndeg R_G = {}\n", r.divisor, r.degree));
    Report::new(
        "ramify",
        Body {
            covering: describe(&file.covering),
            policy: opts.policy,
            divisor_text: r.divisor.to_string(),
            result: &r,
        },
        text,
    )
}

fn parse_place(s: &str, p: u32) -> Result<Place, Failure> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") || s == "∞" {
        return Ok(Place::Infinity);
    }
    let v: Value = serde_json::from_str(s)
        .map_err(|e| Failure::usage(format!("--place must be a coefficient array or `inf`: {e}")))?;
    Ok(Place::finite(parse_poly(&v, p)?)?)
}

#[derive(Serialize)]
struct OracleRow {
    place: Place,
    formula: Option<i64>,
    oracle: Option<i64>,
    agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

pub fn oracle(args: &InputArgs, place: Option<&str>, infinity: bool) -> Result<Report, Failure> {
    let file = load(args)?;
    let cov = &file.covering;
    let degrees = file.infinity_degrees.as_deref();
    let explicit = place.is_some();
    let places = match place {
        Some(s) => vec![parse_place(s, cov.group().p())?],
        None => {
            let mut v = candidate_places(cov, NormalityPolicy::Verify)?;
            if infinity {
                v.push(Place::Infinity);
            }
            v
        }
    };
    let mut rows = Vec::new();
    for v in places {
        let computed = local_model_at(cov, &v, degrees)
            .and_then(|m| Ok((m.multiplicity()?, oracle_multiplicity(&m)?)));
        match computed {
            Ok((formula, oracle)) => rows.push(OracleRow {
                place: v,
                formula: Some(formula),
                oracle: Some(oracle),
                agree: Some(formula == oracle),
                skipped: None,
            }),
            Err(e) if explicit || !e.is_model_rejection() => return Err(e.into()),
            Err(e) => rows.push(OracleRow { place: v, formula: None, oracle: None, agree: None, skipped: Some(e.to_string()) }),
        }
    }
    let disagreements = rows.iter().filter(|r| r.agree == Some(false)).count();
    let show = |x: Option<i64>| x.map_or("-".to_string(), |x| x.to_string());
    let text_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.place.to_string(),
                show(r.formula),
                show(r.oracle),
                match (r.agree, &r.skipped) {
                    (Some(true), _) => "yes".into(),
                    (Some(false), _) => "NO".into(),
                    (None, Some(why)) => format!("skipped: {why}"),
                    (None, None) => "-".into(),
                },
            ]
        })
        .collect();
    #[derive(Serialize)]
    struct Body {
        covering: String,
        places: Vec<OracleRow>,
        disagreements: usize,
    }
    let report = Report::new(
        "oracle",
        Body { covering: describe(cov), places: rows, disagreements },
        table(&["place", "formula", "oracle", "agree"], &text_rows),
    )?;
    if disagreements > 0 {
        return Err(Failure::internal(format!("oracle disagrees with the formula at {disagreements} place(s)"))
            .with_report(report));
    }
    Ok(report)
}

pub fn devissage(args: &InputArgs, m: u32, infinity: bool) -> Result<Report, Failure> {
    let file = load(args)?;
    let Covering::Kummer(kd) = &file.covering else {
        return Err(Failure::usage("devissage needs Kummer data (kind \"kummer\")"));
    };
    let r = devissage_check(kd, m, infinity)?;
    let rows: Vec<Vec<String>> = r
        .places
        .iter()
        .map(|d| {
            vec![
                d.place.to_string(),
                d.r_g.to_string(),
                d.r_h.to_string(),
                d.r_quotient.to_string(),
                d.index.to_string(),
            ]
        })
        .collect();
    let mut text = table(&["place", "R_G", "R_H", "R_G/H", "index"], &rows);
    text.push_str(&format!("R_G = {}\nR_H + g*R_G/H = {}\nequal: {}\n", r.r_g, r.r_h.add(&r.pulled_back)?, r.equal));
    let equal = r.equal;
    let report = Report::new("devissage", &r, text)?;
    if !equal {
        return Err(Failure::internal("dévissage identity fails").with_report(report));
    }
    Ok(report)
}

pub fn gorenstein(args: &InputArgs, infinity: bool) -> Result<Report, Failure> {
    let file = load(args)?;
    let r = gorenstein_report(&file.covering, infinity, file.infinity_degrees.as_deref())?;
    let rows: Vec<Vec<String>> = r
        .verdicts
        .iter()
        .map(|v| {
            vec![
                v.place.to_string(),
                if v.gorenstein { "yes" } else { "no" }.to_string(),
                v.witness.as_ref().map_or("-".into(), |w| w.to_string()),
            ]
        })
        .collect();
    let mut text = table(&["place", "gorenstein", "witness"], &rows);
    for s in &r.signs {
        text.push_str(&format!("sign p={} n={}: {:+}\n", s.p, s.n, s.sign));
    }
    Report::new("gorenstein", &r, text)
}

fn parse_group(s: &str) -> Result<PGroup, Failure> {
    let bad = || Failure::usage(format!("--group must look like `p:e1,e2,...`, got {s:?}"));
    let (p, exps) = s.split_once(':').ok_or_else(bad)?;
    let p: u32 = p.trim().parse().map_err(|_| bad())?;
    let exps = exps
        .split(',')
        .map(|e| e.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    Ok(PGroup::new(p, exps)?)
}

pub fn gorenstein_search(group: &str, seed: u64, count: usize) -> Result<Report, Failure> {
    let g = parse_group(group)?;
    let r = ramdiv::gorenstein::gorenstein_search(&g, seed, count)?;
    let rows: Vec<Vec<String>> = r
        .hits
        .iter()
        .map(|h| vec![h.place.to_string(), normality_label(&h.normality)])
        .collect();
    let mut text = format!("group {g}, seed {seed}: {} tried, {} integral, {} hits\n", r.tried, r.integral, r.hits.len());
    if !rows.is_empty() {
        text.push_str(&table(&["place", "normality"], &rows));
    }
    Report::new("gorenstein", &r, text)
}

pub fn genus(args: &InputArgs, g_x: Option<i64>) -> Result<Report, Failure> {
    let file = load(args)?;
    let mut gm = GlobalModel::from(file);
    if let Some(g) = g_x {
        gm.g_x = g;
    }
    let r = predict_genus(&gm)?;
    let mut text = table(&["place", "|N|", "mult", "normality"], &ram_rows(&r.places));
    text.push_str(&format!(
        "R_G = {}\ndeg R_G = {}\n2g_Y - 2 = {}({} - 2) + {} = {}\ng_Y = {}\n",
        r.divisor,
        r.deg_r,
        r.group_order,
        2 * r.g_x,
        r.deg_r,
        r.two_g_y_minus_2,
        r.g_y.map_or("non-integer".into(), |g| g.to_string()),
    ));
    for n in &r.notes {
        text.push_str(&format!("note: {n}\n"));
    }
    Report::new("genus", &r, text)
}

pub fn regress_gln(p: u32, n: u32, beta: u32, gamma: u32) -> Result<Report, Failure> {
    let r = gln_regression(p, n, beta, gamma)?;
    let summary = format!("{} {} {} + {}", r.r_gamma, if r.equal { "=" } else { "≠" }, r.r_beta, r.pulled);
    #[derive(Serialize)]
    struct Body<'a> {
        summary: &'a str,
        #[serde(flatten)]
        report: &'a GlnReport,
    }
    let mut text = format!("{summary}\n");
    if r.degenerate_n1 {
        text.push_str("note: n = 1 is degenerate, both sides agree\n");
    }
    Report::new("regress-gln", Body { summary: &summary, report: &r }, text)
}
