//! One function per subcommand. Each builds the JSON value first and renders
//! its human-readable text from that value.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use quadperm::suspension::{head_cylinder_angle, read_one_cylinder, CoverKey};
use quadperm::{
    build_cover, bubble, component_report, condition_star, cylinder_decomposition, enumerate_stratum, enumerate_type,
    excise_simple_cylinder, excisions, hyperelliptic_rep, irreducible_rep, is_irreducible, match_component,
    red_condition, sample_admissible, separatrix_spectrum, simple_cylinder_angle, singularity_pattern,
    vertical_permutation, weak_reducibility, AdmissibleVector, EnumerateOptions, Error, Excision,
    GeneralizedPermutation, HyperKind, IrreducibleName, MoveConfig, RedVerdict, Result, SingularityPattern,
    SquareTiledCover, SymmetryGroup,
};
use serde_json::{json, Value};

use crate::appendix::{self, CheckResult, Settings, Status};

pub const SCHEMA: &str = "1";

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub command: &'static str,
    pub result: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Output {
    fn new(command: &'static str, result: Value, text: String) -> Self {
        Output { command, result, text, exit_code: 0 }
    }

    pub fn to_json(&self) -> String {
        let doc = json!({ "schema": SCHEMA, "command": self.command, "result": self.result });
        serde_json::to_string_pretty(&doc).expect("json values serialize")
    }
}

/// Shared options of every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    pub sym: SymmetryGroup,
    pub seed: u64,
    pub limit: usize,
    pub budget: usize,
}

impl Default for Context {
    fn default() -> Self {
        Context { sym: SymmetryGroup::default(), seed: 0, limit: 16, budget: 100_000 }
    }
}

impl Context {
    fn enumerate_options(&self) -> EnumerateOptions {
        EnumerateOptions { sym: self.sym, limit: self.limit }
    }
}

pub fn permutation(text: &str) -> Result<GeneralizedPermutation> {
    text.parse()
}

/// The vector given on the command line, else the minimal one for seed 0 and
/// a seeded sample otherwise.
pub fn lengths(gp: &GeneralizedPermutation, text: Option<&str>, seed: u64) -> Result<AdmissibleVector> {
    match text {
        Some(t) => AdmissibleVector::parse(gp, t),
        None if seed == 0 => AdmissibleVector::minimal(gp),
        None => sample_admissible(gp, seed, 4),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

pub fn parse(text: &str, ctx: &Context) -> Result<Output> {
    let gp = permutation(text)?;
    let (r, l) = gp.kind();
    let result = json!({
        "permutation": gp.render(),
        "type": [r, l],
        "letters": gp.letter_count(),
        "abelian": gp.is_abelian(),
        "pairs_on_both_rows": gp.has_pairs_on_both_rows(),
        "canonical": gp.canonical_form(ctx.sym).render(),
    });
    let text = format!(
        "{}\ntype ({r},{l}), {} letters\ncanonical form: {}",
        result["permutation"].as_str().unwrap_or_default(),
        gp.letter_count(),
        result["canonical"].as_str().unwrap_or_default()
    );
    Ok(Output::new("parse", result, text))
}

pub fn stratum(text: &str, ctx: &Context) -> Result<Output> {
    let gp = permutation(text)?;
    let p = singularity_pattern(&gp);
    let tag = match_component(&gp, ctx.sym);
    let result = json!({
        "pattern": p.to_string(),
        "orders": p.orders,
        "genus": p.genus,
        "dim": p.dimension,
        "component": tag.to_string(),
    });
    let text = format!("{} g={} dim={}", result["pattern"].as_str().unwrap_or_default(), p.genus, p.dimension);
    Ok(Output::new("stratum", result, text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Weak,
    Red,
    Star,
    Irreducible,
}

pub fn check(condition: Condition, text: &str) -> Result<Output> {
    let gp = permutation(text)?;
    let (result, text) = match condition {
        Condition::Weak => {
            let v = weak_reducibility(&gp);
            (to_value(&v), v.to_string())
        }
        Condition::Red => {
            let v = red_condition(&gp);
            let mut result = to_value(&v);
            let mut text = v.to_string();
            if let RedVerdict::Violated { decomposition } = &v {
                let lists = decomposition.lists(&gp);
                result["lists"] = to_value(&lists);
                let names = ["Y1'", "Y1''", "Y1'''", "Y2'", "Y2''", "Y2'''"];
                for (name, list) in names.iter().zip(&lists) {
                    let _ = write!(text, "\n{name:6} = ({})", list.join(" "));
                }
            }
            (result, text)
        }
        Condition::Star => {
            let holds = condition_star(&gp);
            (json!({ "holds": holds }), if holds { "Holds" } else { "Fails" }.to_string())
        }
        Condition::Irreducible => {
            let v = is_irreducible(&gp);
            (to_value(&v), v.to_string())
        }
    };
    Ok(Output::new("check", result, text))
}

pub fn suspend(text: &str, lambda: Option<&str>, ctx: &Context) -> Result<Output> {
    let gp = permutation(text)?;
    let lambda = lengths(&gp, lambda, ctx.seed)?;
    let cover = build_cover(&gp, &lambda)?;
    let result = json!({
        "permutation": gp.render(),
        "lambda": lambda.render(&gp),
        "width": lambda.width(),
        "squares": cover.len(),
        "connected": cover.is_connected(),
        "cover_genus": cover.genus(),
        "relations_hold": cover.relations_hold(),
        "pattern": cover.base_pattern().to_string(),
    });
    let text = format!(
        "Su({}, {}): width {}, {} squares on the double cover of genus {}, quotient {}",
        gp,
        lambda.render(&gp),
        lambda.width(),
        cover.len(),
        cover.genus(),
        cover.base_pattern()
    );
    Ok(Output::new("suspend", result, text))
}

pub fn spectrum(text: &str, lambda: Option<&str>, ctx: &Context) -> Result<Output> {
    let gp = permutation(text)?;
    let lambda = lengths(&gp, lambda, ctx.seed)?;
    let sp = separatrix_spectrum(&gp, &lambda)?;
    let mut result = to_value(&sp);
    result["lambda"] = json!(lambda.render(&gp));
    result["pairs_up"] = json!(sp.pairs_up());
    let mut lines = sp.segments.iter().map(|s| {
        let gamma = if s.is_gamma { "  gamma" } else { "" };
        format!("{:?} {} -> {:?} {}: {}{gamma}", s.start.row, s.start.index, s.end.row, s.end.index, s.crossings)
    });
    Ok(Output::new("spectrum", result, lines.join("\n")))
}

pub fn decompose(text: &str, lambda: Option<&str>, ctx: &Context) -> Result<Output> {
    let gp = permutation(text)?;
    let lambda = lengths(&gp, lambda, ctx.seed)?;
    let d = cylinder_decomposition(&gp, &lambda)?;
    let mut text = format!("{} vertical cylinder(s), area {}", d.cylinders.len(), d.total_area());
    for (i, c) in d.cylinders.iter().enumerate() {
        let _ = write!(text, "\n#{i}: width {} circumference {}", c.width, c.circumference);
        if let Some(a) = c.angle {
            let _ = write!(text, ", simple with angle {}pi", a.s);
        }
    }
    Ok(Output::new("decompose", to_value(&d), text))
}

pub fn angle(text: &str, lambda: Option<&str>, cylinder: Option<usize>, ctx: &Context) -> Result<Output> {
    let gp = permutation(text)?;
    let lambda = lengths(&gp, lambda, ctx.seed)?;
    let a = match cylinder {
        Some(id) => simple_cylinder_angle(&gp, &lambda, id)?,
        None => head_cylinder_angle(&gp, &lambda)?,
    };
    Ok(Output::new("angle", to_value(&a), format!("s={} complement={}", a.s, a.complement)))
}

pub fn vperm(text: &str, lambda: Option<&str>, ctx: &Context) -> Result<Output> {
    let gp = permutation(text)?;
    let lambda = lengths(&gp, lambda, ctx.seed)?;
    let read = vertical_permutation(&gp, &lambda)?;
    let rendered = read.lambda.render(&read.permutation);
    let result = json!({
        "permutation": read.permutation.render(),
        "lambda": rendered,
        "height": read.height,
        "pattern": singularity_pattern(&read.permutation).to_string(),
    });
    let text = format!("{}  lambda {}  height {}", read.permutation, rendered, read.height);
    Ok(Output::new("vperm", result, text))
}

pub fn orbit(text: &str, lambda: Option<&str>, cap: usize, ctx: &Context) -> Result<Output> {
    let gp = permutation(text)?;
    let lambda = lengths(&gp, lambda, ctx.seed)?;
    let orbit = build_cover(&gp, &lambda)?.sl2z_orbit(cap);
    let classes: BTreeSet<String> = orbit
        .keys
        .iter()
        .filter_map(|k: &CoverKey| read_one_cylinder(&SquareTiledCover::from_key(k)).ok())
        .map(|read| read.permutation.canonical_form(ctx.sym).render())
        .collect();
    let result = json!({ "size": orbit.len(), "truncated": orbit.truncated, "one_cylinder_classes": classes });
    let mut text = format!("orbit of {} cover(s){}", orbit.len(), if orbit.truncated { " (truncated)" } else { "" });
    for c in &classes {
        let _ = write!(text, "\n{c}");
    }
    Ok(Output::new("orbit", result, text))
}

fn class_list(command: &'static str, classes: &[GeneralizedPermutation]) -> Output {
    let rendered: Vec<String> = classes.iter().map(|c| c.render()).collect();
    let result = json!({ "count": rendered.len(), "classes": rendered });
    let text = rendered.iter().chain(std::iter::once(&format!("{} class(es)", rendered.len()))).join("\n");
    Output::new(command, result, text)
}

pub fn enumerate(pattern: Option<&str>, kind: Option<&str>, ctx: &Context) -> Result<Output> {
    let classes = match (pattern, kind) {
        (Some(p), None) => enumerate_stratum(&p.parse()?, &ctx.enumerate_options())?,
        (None, Some(k)) => {
            let (r, l) = k
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect_tuple()
                .and_then(|(a, b)| Some((a.ok()?, b.ok()?)))
                .ok_or_else(|| Error::BadParameters(format!("type must read `r,l`, got `{k}`")))?;
            enumerate_type(r, l, &ctx.enumerate_options())?
        }
        _ => return Err(Error::BadParameters("give exactly one of --pattern and --type".into())),
    };
    Ok(class_list("enumerate", &classes))
}

/// Which moves `classify` may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Moves {
    pub vertical: bool,
    pub orbit: bool,
    pub excise: bool,
}

pub fn classify(pattern: &str, moves: Moves, tsv: bool, ctx: &Context) -> Result<Output> {
    let pattern: SingularityPattern = pattern.parse()?;
    let cfg = MoveConfig {
        sym: ctx.sym,
        limit: ctx.limit,
        seed: ctx.seed,
        vertical: moves.vertical,
        orbit: moves.orbit,
        excise: moves.excise,
        ..MoveConfig::default()
    };
    let report = component_report(&pattern, &cfg)?;
    let mut text = format!(
        "{}: {} class(es) in {} group(s); components between {} and {}",
        report.stratum,
        report.classes.len(),
        report.merge_groups.len(),
        report.lower_bound,
        report.upper_bound
    );
    for c in &report.citations {
        let _ = write!(text, "\ncited: {} ({})", c.fact, c.source);
    }
    if tsv {
        text.push('\n');
        text.push_str(report.to_tsv().trim_end());
    }
    Ok(Output::new("classify", to_value(&report), text))
}

fn describe_excision(ex: &Excision) -> String {
    let collapsed = ex.collapsed.as_ref().map_or("none".to_string(), ToString::to_string);
    format!(
        "shift ({},{}): {} -> {}  s={} collapsed={} certified={}",
        ex.shift.0,
        ex.shift.1,
        ex.rotated,
        ex.hat,
        ex.s(),
        collapsed,
        ex.certified
    )
}

pub fn excise(text: &str, all: bool) -> Result<Output> {
    let gp = permutation(text)?;
    if all {
        let list = excisions(&gp);
        let text = if list.is_empty() { "no excision".to_string() } else { list.iter().map(describe_excision).join("\n") };
        Ok(Output::new("excise", to_value(&list), text))
    } else {
        let ex = excise_simple_cylinder(&gp)?;
        Ok(Output::new("excise", to_value(&ex), describe_excision(&ex)))
    }
}

pub fn bubble_handle(text: &str, s: u64, ctx: &Context) -> Result<Output> {
    let gp = permutation(text)?;
    let pi = bubble(&gp, s, ctx.budget)?;
    let p = singularity_pattern(&pi);
    let result = json!({ "permutation": pi.render(), "pattern": p.to_string(), "s": s });
    Ok(Output::new("bubble", result, format!("{pi}  in {p}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepRequest {
    Hyperelliptic { kind: HyperKind, r: usize, l: usize, a: Option<usize> },
    Irreducible(String),
}

pub fn rep(request: &RepRequest) -> Result<Output> {
    let (name, gp) = match request {
        RepRequest::Hyperelliptic { kind, r, l, a } => {
            let name = match a {
                Some(a) => format!("{kind}({r},{l},{a})"),
                None => format!("{kind}({r},{l})"),
            };
            (name, hyperelliptic_rep(*kind, *r, *l, *a)?)
        }
        RepRequest::Irreducible(n) => {
            let name: IrreducibleName = n.parse()?;
            (name.to_string(), irreducible_rep(name))
        }
    };
    let p = singularity_pattern(&gp);
    let result = json!({ "name": name, "permutation": gp.render(), "pattern": p.to_string() });
    Ok(Output::new("rep", result, format!("{name} = {gp}  in {p}")))
}

fn describe_check(c: &CheckResult) -> String {
    let status = match c.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    };
    let provenance = to_value(&c.expected.provenance);
    let mut line = format!(
        "{status} {:<34} [{}] {} ms",
        c.check_id,
        provenance.as_str().unwrap_or_default(),
        c.elapsed.as_millis()
    );
    if c.status != Status::Pass {
        let _ = write!(line, "\n     expected {}\n     actual   {}", c.expected.value, c.actual);
    }
    line
}

pub fn reproduce_appendix(only: Option<&str>, ctx: &Context) -> std::result::Result<Output, String> {
    let settings = Settings { sym: ctx.sym, seed: ctx.seed };
    let results = appendix::run_checks(only, &settings)?;
    let failed = results.iter().filter(|c| c.status == Status::Fail).count();
    let summary = format!("{} check(s), {} passed, {failed} failed", results.len(), results.len() - failed);
    let text = results.iter().map(describe_check).chain(std::iter::once(summary)).join("\n");
    let result = json!({ "sym": ctx.sym.to_string(), "seed": ctx.seed, "checks": results });
    let mut out = Output::new("reproduce-appendix", result, text);
    out.exit_code = i32::from(failed > 0);
    Ok(out)
}
