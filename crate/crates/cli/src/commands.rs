use std::fmt;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use tropgrass::affine::{unimodular_on, GammaAffineMap, GammaPolyhedron};
use tropgrass::arith::{format_rational, parse_rational, LaurentPoly, LogNum, QStr, TropNum, ZInt};
use tropgrass::curve::{
    check_balancing, is_connected, is_tree, tropicalize_curve, weierstrass_case, weierstrass_curve, TropPlaneCurve,
};
use tropgrass::grassmannian::{
    build_cherry_order, combinatorial_type, convert_convention, convert_to_log, form_log_value, pair_key, section_eval,
    section_well_defined, verify_section_identity, verify_section_identity_all, Chart, PlueckerPoint, SectionReport,
};
use tropgrass::phylo::{first_four_point_violation, PhyloTree, TreeDoc};
use tropgrass::sampling::{random_pluecker_form, rng_from_seed};
use tropgrass::skeleton::{
    block_sigma_eval, check_slope_formula, BlockPoint, MetricGraph, PLFunctionDoc, StandardBlock,
};

/// Forms sampled by `section-verify` for the well-definedness panel.
const PANEL: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Convention {
    Val,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    TropCurve,
    BalanceCheck,
    PlueckerCheck,
    TreeFromPluecker,
    SectionEval,
    SectionVerify,
    BlockEval,
    SlopeCheck,
    UnimodularCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmdError {
    /// Input does not match the subcommand's schema.
    Schema(String),
    /// Well-formed input on which the computation is undefined.
    Domain { reason: String, message: String },
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CmdError::Schema(_) => 2,
            CmdError::Domain { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CmdError::Schema(m) => json!({"error": {"kind": "schema", "message": m}}),
            CmdError::Domain { reason, message } => {
                json!({"error": {"kind": "domain", "reason": reason, "message": message}})
            }
        }
    }
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Schema(m) => write!(f, "schema error: {m}"),
            CmdError::Domain { message, .. } => write!(f, "{message}"),
        }
    }
}

/// `NotMember { .. }` → `not_member`; wrapper variants are looked through.
fn reason_of<E: fmt::Debug>(e: &E) -> String {
    let dbg = format!("{e:?}");
    let idents: Vec<&str> =
        dbg.split(|c: char| !c.is_alphanumeric() && c != '_').filter(|s| !s.is_empty()).take(2).collect();
    let name = match idents.as_slice() {
        [w, inner, ..] if ["Phylo", "Arith"].contains(w) && inner.starts_with(char::is_uppercase) => inner,
        [first, ..] => first,
        [] => "error",
    };
    let mut out = String::new();
    for (k, c) in name.chars().enumerate() {
        if c.is_uppercase() && k > 0 {
            out.push('_');
        }
        out.push(c.to_ascii_lowercase());
    }
    out
}

fn domain<E: fmt::Debug + fmt::Display>(e: E) -> CmdError {
    CmdError::Domain { reason: reason_of(&e), message: e.to_string() }
}

fn parse<T: DeserializeOwned>(v: &Value, what: &str) -> Result<T, CmdError> {
    serde_json::from_value(v.clone()).map_err(|e| CmdError::Schema(format!("{what}: {e}")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CmdError> {
    v.get(key).ok_or_else(|| CmdError::Schema(format!("missing field {key:?}")))
}

fn log_text(v: &LogNum, conv: Convention) -> String {
    match conv {
        Convention::Log => v.to_string(),
        Convention::Val => convert_convention(v).to_string(),
    }
}

fn val_text(v: &TropNum, conv: Convention) -> String {
    match conv {
        Convention::Val => v.to_string(),
        Convention::Log => convert_to_log(v).to_string(),
    }
}

fn conv_name(c: Convention) -> &'static str {
    match c {
        Convention::Val => "val",
        Convention::Log => "log",
    }
}

pub struct Options {
    pub convention: Option<Convention>,
    pub seed: u64,
}

pub fn run(cmd: Command, input: &Value, opts: &Options) -> Result<Value, CmdError> {
    match cmd {
        Command::TropCurve => trop_curve(input),
        Command::BalanceCheck => balance_check(input),
        Command::PlueckerCheck => pluecker_check(input),
        Command::TreeFromPluecker => tree_from_pluecker(input),
        Command::SectionEval => section_eval_cmd(input, opts.convention.unwrap_or(Convention::Log)),
        Command::SectionVerify => section_verify(input, opts.seed),
        Command::BlockEval => block_eval(input, opts.convention.unwrap_or(Convention::Val)),
        Command::SlopeCheck => slope_check(input),
        Command::UnimodularCheck => unimodular_check(input),
    }
}

/// The curve a `trop-curve` input describes, with the Weierstrass case when
/// the input names one.
pub fn curve_of(input: &Value) -> Result<(TropPlaneCurve, Option<String>), CmdError> {
    if let Some(w) = input.get("weierstrass") {
        let va: QStr = parse(field(w, "va")?, "va")?;
        let vb: QStr = parse(field(w, "vb")?, "vb")?;
        let c = tropicalize_curve(&weierstrass_curve(&va.0, &vb.0)).map_err(domain)?;
        return Ok((c, Some(weierstrass_case(&va.0, &vb.0).to_string())));
    }
    let f: LaurentPoly = parse(input.get("f").unwrap_or(input), "polynomial")?;
    let f = if f.is_zero() { LaurentPoly::zero(2) } else { f };
    Ok((tropicalize_curve(&f).map_err(domain)?, None))
}

fn curve_summary(c: &TropPlaneCurve) -> Value {
    let report = check_balancing(c);
    json!({
        "balanced": report.balanced,
        "connected": is_connected(c),
        "tree": is_tree(c),
        "vertices_checked": report.vertices_checked,
        "violations": report.violations,
    })
}

fn trop_curve(input: &Value) -> Result<Value, CmdError> {
    let (c, case) = curve_of(input)?;
    let mut out = curve_summary(&c);
    out["curve"] = serde_json::to_value(&c).expect("curve serializes");
    if let Some(case) = case {
        out["case"] = json!(case);
    }
    Ok(out)
}

fn balance_check(input: &Value) -> Result<Value, CmdError> {
    let c: TropPlaneCurve = parse(input, "curve")?;
    Ok(curve_summary(&c))
}

fn point_of(input: &Value) -> Result<PlueckerPoint, CmdError> {
    parse(input.get("point").unwrap_or(input), "point")
}

fn tree_json(t: &PhyloTree) -> Value {
    serde_json::to_value(TreeDoc::from(t)).expect("tree serializes")
}

fn pluecker_check(input: &Value) -> Result<Value, CmdError> {
    let p = point_of(input)?;
    Ok(match first_four_point_violation(p.as_dist()) {
        Some(q) => json!({"member": false, "quartet": q, "tree": null, "newick": null}),
        None => {
            let t = combinatorial_type(&p).map_err(domain)?;
            json!({"member": true, "quartet": null, "tree": tree_json(&t), "newick": t.to_newick()})
        }
    })
}

fn tree_from_pluecker(input: &Value) -> Result<Value, CmdError> {
    let p = point_of(input)?;
    let t = combinatorial_type(&p).map_err(domain)?;
    let splits: Vec<Value> =
        t.splits().into_iter().map(|(s, w)| json!({"split": s, "weight": format_rational(&w)})).collect();
    Ok(json!({"tree": tree_json(&t), "newick": t.to_newick(), "splits": splits}))
}

fn chart_of(input: &Value, t: &PhyloTree) -> Result<Chart, CmdError> {
    let (i, j) = match input.get("base") {
        Some(b) => parse::<(usize, usize)>(b, "base")?,
        None => (1, 2),
    };
    let reversed = match input.get("reversed") {
        Some(r) => parse::<bool>(r, "reversed")?,
        None => false,
    };
    let o = build_cherry_order(t, i, j).map_err(domain)?;
    Chart::new(t, if reversed { o.reversed() } else { o }).map_err(domain)
}

fn section_eval_cmd(input: &Value, conv: Convention) -> Result<Value, CmdError> {
    let p: PlueckerPoint = parse(field(input, "point")?, "point")?;
    let t = combinatorial_type(&p).map_err(domain)?;
    let chart = chart_of(input, &t)?;
    let n = p.n();
    let (value, vars) = match (input.get("f"), input.get("form")) {
        (Some(f), None) => {
            let f: LaurentPoly = parse(f, "f")?;
            let f = if f.is_zero() { LaurentPoly::zero(chart.num_vars()) } else { f };
            let vars: Vec<String> = chart.expansion.index.vars.iter().map(|&(a, b)| pair_key(n, a, b)).collect();
            (section_eval(&p, &chart, &f).map_err(domain)?, vars)
        }
        (None, Some(g)) => {
            let g: LaurentPoly = parse(g, "form")?;
            let vars = tropgrass::phylo::pairs(n).map(|(a, b)| pair_key(n, a, b)).collect();
            (form_log_value(&p, &chart, &g).map_err(domain)?, vars)
        }
        _ => return Err(CmdError::Schema("give exactly one of \"f\" and \"form\"".into())),
    };
    Ok(json!({
        "base": chart.base(),
        "variables": vars,
        "value": log_text(&value, conv),
        "convention": conv_name(conv),
    }))
}

fn identity_json(r: &SectionReport) -> Value {
    let violation = r.violation.as_ref().map(
        |v| json!({"base": v.base, "pair": v.pair, "expected": format_rational(&v.expected), "got": v.got.to_string()}),
    );
    json!({"charts_checked": r.charts_checked, "pairs_checked": r.pairs_checked, "violation": violation})
}

fn section_verify(input: &Value, seed: u64) -> Result<Value, CmdError> {
    let p = point_of(input)?;
    let all = match input.get("all_charts") {
        Some(a) => parse::<bool>(a, "all_charts")?,
        None => false,
    };
    let t = combinatorial_type(&p).map_err(domain)?;
    let identity =
        if all { verify_section_identity_all(&p, &t) } else { verify_section_identity(&p, &t) }.map_err(domain)?;
    let mut rng = rng_from_seed(seed);
    let forms: Vec<LaurentPoly> = (0..PANEL).map(|_| random_pluecker_form(&mut rng, p.n(), 3, 1, 3)).collect();
    let wd = section_well_defined(&p, &forms).map_err(domain)?;
    let disagreement = wd.disagreement.as_ref().map(|d| {
        json!({
            "form": d.form,
            "first": {"base": d.first.0, "value": d.first.1.to_string()},
            "other": {"base": d.other.0, "value": d.other.1.to_string()},
        })
    });
    let mut out = identity_json(&identity);
    out["ok"] = json!(identity.holds() && wd.holds());
    out["well_defined"] = json!({
        "ok": wd.holds(),
        "choices": wd.choices,
        "forms": forms.len(),
        "seed": seed,
        "disagreement": disagreement,
    });
    Ok(out)
}

fn block_eval(input: &Value, conv: Convention) -> Result<Value, CmdError> {
    let b: StandardBlock = parse(field(input, "block")?, "block")?;
    let v: Vec<QStr> = parse(field(input, "v")?, "v")?;
    let f: LaurentPoly = parse(field(input, "f")?, "f")?;
    let f = if f.is_zero() { LaurentPoly::zero(b.d()) } else { f };
    let p = BlockPoint::new(&b, v.into_iter().map(|q| q.0).collect()).map_err(domain)?;
    let value = block_sigma_eval(&b, &p, &f).map_err(domain)?;
    Ok(json!({
        "value": val_text(&value, conv),
        "convention": conv_name(conv),
        "v0": format_rational(&p.v0(&b)),
    }))
}

fn slope_check(input: &Value) -> Result<Value, CmdError> {
    let g: MetricGraph = parse(field(input, "graph")?, "graph")?;
    let doc: PLFunctionDoc = parse(field(input, "f")?, "f")?;
    let f = doc.resolve(&g).map_err(domain)?;
    let r = check_slope_formula(&g, &f);
    let violations: Vec<Value> =
        r.violations.iter().map(|v| json!({"vertex": v.vertex, "defect": format_rational(&v.defect)})).collect();
    Ok(json!({"pass": r.pass(), "vertices_checked": r.vertices_checked, "violations": violations}))
}

fn unimodular_check(input: &Value) -> Result<Value, CmdError> {
    let f: GammaAffineMap = parse(field(input, "map")?, "map")?;
    let p: GammaPolyhedron = parse(field(input, "polyhedron")?, "polyhedron")?;
    let u = unimodular_on(&f, &p).map_err(domain)?;
    let image = f.image(&p).map_err(domain)?;
    let lattice: Vec<Vec<ZInt>> =
        p.direction_lattice().into_iter().map(|z| z.into_iter().map(ZInt).collect()).collect();
    Ok(json!({
        "unimodular": u,
        "direction_lattice": lattice,
        "image": serde_json::to_value(&image).expect("polyhedron serializes"),
    }))
}

/// Reads `TROPGRASS_SEED`, accepting anything that parses as an integer.
pub fn seed_from_env(default: u64) -> Result<u64, CmdError> {
    match std::env::var("TROPGRASS_SEED") {
        Ok(s) => parse_rational(&s)
            .ok()
            .filter(|q| q.is_integer())
            .and_then(|q| u64::try_from(q.to_integer()).ok())
            .ok_or_else(|| CmdError::Schema(format!("TROPGRASS_SEED={s:?} is not a nonnegative integer"))),
        Err(_) => Ok(default),
    }
}
