//! Command-line front end.
//!
//! `gromov <command> [--manifold M] [--class A]... [options]`. Exit status is
//! 0 on success, 2 for usage and parse errors, 1 for domain errors; every
//! error also writes one `error code=<id> msg=<text>` line to stderr.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, ValueEnum};

use crate::expr::parse_class;
use crate::fibersum;
use crate::invariants::{self, NegKind};
use crate::lattice::HClass;
use crate::loader;
use crate::model::ManifoldModel;
use crate::presets;
use crate::report::Report;
use crate::spherical;
use crate::structure::{self, Component, Configuration};
use crate::torus::{self, TorusEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// List the built-in manifold models.
    Presets,
    /// Point count k(A) = (c₁(A) + A·A)/2.
    K,
    /// Corrected count k′(A).
    Kprime,
    /// Embedded genus, and ℓ_g(A) when --genus is given.
    Genus,
    /// Moduli dimension for genus --genus.
    Dim,
    /// Whether E·A ≥ −1 for all stored exceptional E.
    Good,
    /// Strip multiply covered exceptional spheres.
    Reduce,
    /// Classify a class of negative square.
    #[value(name = "classify-neg")]
    ClassifyNeg,
    /// Forward-cone membership (use --strict for the open cone).
    Cone,
    /// Light-cone check for two classes.
    Lightcone,
    /// Decompositions of --class over --candidates.
    Decomp,
    /// Gr(A) from the model's tables.
    Gr,
    /// Torus count: coefficient of t^k for the --tori list.
    #[value(name = "gr-tori")]
    GrTori,
    /// Spherical invariant Gr_s(A).
    #[value(name = "gr-s")]
    GrS,
    /// Fiber-sum ledger; with --n, Gr(V(n), F).
    Fibersum,
    /// Verify a configuration given with --component.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Debug, Parser)]
#[command(name = "gromov", version, about = "Homology-level calculus of Gromov invariants of symplectic 4-manifolds")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Preset name (cp2, cp2_blowup(n), s2xs2, s2xt2, elliptic(n)) or model file path.
    #[arg(long)]
    manifold: Option<String>,
    /// Class expression such as "3L - E1"; repeatable.
    #[arg(long = "class", allow_hyphen_values = true)]
    classes: Vec<String>,
    #[arg(long, allow_negative_numbers = true)]
    genus: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    points: Option<i64>,
    /// Torus list `label[:cover],…`, labels +0..+3, -0..-3.
    #[arg(long, allow_hyphen_values = true)]
    tori: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Comma-separated candidate classes for decomp.
    #[arg(long, allow_hyphen_values = true)]
    candidates: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Component `class:mult:genus` for verify; repeatable.
    #[arg(long = "component", allow_hyphen_values = true)]
    components: Vec<String>,
    /// verify: check as a k′ configuration (multiply covered exceptional spheres allowed).
    #[arg(long)]
    kprime: bool,
    /// cone: use the open cone.
    #[arg(long)]
    strict: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct CliError {
    exit: i32,
    code: &'static str,
    msg: String,
}

fn usage(code: &'static str, msg: impl ToString) -> CliError {
    CliError { exit: 2, code, msg: msg.to_string() }
}

fn domain(code: &'static str, msg: impl ToString) -> CliError {
    CliError { exit: 1, code, msg: msg.to_string() }
}

/// Runs the CLI on `argv` (program name first) and captures its output.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args: Vec<&str> = argv.iter().map(|s| s.as_ref()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return failure(&usage("usage", first));
        }
    };
    let mut out = Output { format: cli.format, text: String::new() };
    match execute(&cli, &mut out) {
        Ok(()) => Outcome { code: 0, stdout: out.text, stderr: String::new() },
        Err(e) => {
            let mut o = failure(&e);
            o.stdout = out.text;
            o
        }
    }
}

fn failure(e: &CliError) -> Outcome {
    let msg = e.msg.replace('\n', " ");
    Outcome { code: e.exit, stdout: String::new(), stderr: format!("error code={} msg={}\n", e.code, msg) }
}

struct Output {
    format: Format,
    text: String,
}

impl Output {
    fn human(&self) -> bool {
        self.format == Format::Human
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn record(&mut self, key: impl AsRef<str>, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "{}={}", key.as_ref(), value);
    }
}

fn load_model(cli: &Cli) -> Result<ManifoldModel, CliError> {
    let name = cli.manifold.as_deref().ok_or_else(|| usage("usage", "this command needs --manifold"))?;
    match presets::preset(name) {
        Ok(m) => Ok(m),
        Err(preset_err) => {
            let path = Path::new(name);
            if path.is_file() {
                loader::load_model_file(path).map_err(|e| domain("model-invalid", e))
            } else {
                Err(usage("unknown-manifold", preset_err))
            }
        }
    }
}

fn parse(model: &ManifoldModel, expr: &str) -> Result<HClass, CliError> {
    parse_class(model.lattice(), expr).map_err(|e| usage("parse", format!("`{expr}`: {e}")))
}

fn classes(cli: &Cli, model: &ManifoldModel) -> Result<Vec<HClass>, CliError> {
    if cli.classes.is_empty() {
        return Err(usage("usage", "this command needs at least one --class"));
    }
    cli.classes.iter().map(|s| parse(model, s)).collect()
}

fn genus(cli: &Cli) -> Result<i64, CliError> {
    let g = cli.genus.ok_or_else(|| usage("usage", "this command needs --genus"))?;
    if g < 0 {
        return Err(usage("usage", format!("--genus must be non-negative, got {g}")));
    }
    Ok(g)
}

fn execute(cli: &Cli, out: &mut Output) -> Result<(), CliError> {
    match cli.command {
        Command::Presets => cmd_presets(out),
        Command::GrTori => cmd_gr_tori(cli, out),
        Command::Fibersum => cmd_fibersum(cli, out),
        _ => {
            let model = load_model(cli)?;
            if !out.human() {
                out.record("manifold", model.name());
            }
            match cli.command {
                Command::K => per_class(cli, &model, out, "k", |_, a| Ok(invariants::k(a).to_string())),
                Command::Kprime => {
                    per_class(cli, &model, out, "kprime", |m, a| Ok(invariants::k_prime(m, a).to_string()))
                }
                Command::Genus => cmd_genus(cli, &model, out),
                Command::Dim => {
                    let g = genus(cli)?;
                    per_class(cli, &model, out, "dim", |_, a| Ok(invariants::moduli_dimension(a, g).to_string()))
                }
                Command::Good => {
                    per_class(cli, &model, out, "good", |m, a| Ok(invariants::is_good_class(m, a).to_string()))
                }
                Command::Reduce => cmd_reduce(cli, &model, out),
                Command::ClassifyNeg => cmd_classify(cli, &model, out),
                Command::Cone => {
                    let strict = cli.strict;
                    per_class(cli, &model, out, "cone", |_, a| Ok(invariants::in_forward_cone(a, strict).to_string()))
                }
                Command::Lightcone => cmd_lightcone(cli, &model, out),
                Command::Decomp => cmd_decomp(cli, &model, out),
                Command::Gr => cmd_gr(cli, &model, out),
                Command::GrS => cmd_gr_s(cli, &model, out),
                Command::Verify => cmd_verify(cli, &model, out),
                Command::Presets | Command::GrTori | Command::Fibersum => unreachable!(),
            }
        }
    }
}

/// Shared layout for commands computing one value per class: human lines
/// `name(A) = v`, records `class.i=A` and `name.i=v`.
fn per_class(
    cli: &Cli,
    model: &ManifoldModel,
    out: &mut Output,
    name: &str,
    f: impl Fn(&ManifoldModel, &HClass) -> Result<String, CliError>,
) -> Result<(), CliError> {
    for (i, a) in classes(cli, model)?.iter().enumerate() {
        let v = f(model, a)?;
        if out.human() {
            out.line(format!("{name}({a}) = {v}"));
        } else {
            out.record(format!("class.{i}"), a);
            out.record(format!("{name}.{i}"), v);
        }
    }
    Ok(())
}

fn cmd_presets(out: &mut Output) -> Result<(), CliError> {
    for (i, (name, about)) in presets::PRESETS.iter().enumerate() {
        if out.human() {
            out.line(format!("{name:<15} {about}"));
        } else {
            out.record(format!("preset.{i}"), name);
        }
    }
    Ok(())
}

fn cmd_genus(cli: &Cli, model: &ManifoldModel, out: &mut Output) -> Result<(), CliError> {
    let g = match cli.genus {
        Some(_) => Some(genus(cli)?),
        None => None,
    };
    for (i, a) in classes(cli, model)?.iter().enumerate() {
        let ge = invariants::genus_embedded(a);
        if out.human() {
            out.line(format!("genus({a}) = {ge}"));
            if let Some(g) = g {
                out.line(format!("ell_{g}({a}) = {}", invariants::ell_g(a, g)));
            }
        } else {
            out.record(format!("class.{i}"), a);
            out.record(format!("genus.{i}"), ge);
            if let Some(g) = g {
                out.record(format!("ell_g.{i}"), invariants::ell_g(a, g));
            }
        }
    }
    Ok(())
}

fn cmd_reduce(cli: &Cli, model: &ManifoldModel, out: &mut Output) -> Result<(), CliError> {
    for (i, a) in classes(cli, model)?.iter().enumerate() {
        let r = invariants::reduce_multicovers(model, a);
        let strips: Vec<String> = r.strips.iter().map(|(e, m)| format!("{e}:{m}")).collect();
        if out.human() {
            out.line(format!("reduce({a}) = {}", r.reduced));
            for (e, m) in &r.strips {
                out.line(format!("  strip {e} with multiplicity {m}"));
            }
            if !r.orthogonal {
                out.line("  warning: stripped classes are not mutually orthogonal, k(B) = k'(A) may fail");
            }
        } else {
            out.record(format!("class.{i}"), a);
            out.record(format!("reduced.{i}"), &r.reduced);
            out.record(format!("strips.{i}"), strips.join(","));
            out.record(format!("orthogonal.{i}"), r.orthogonal);
        }
    }
    Ok(())
}

fn cmd_classify(cli: &Cli, model: &ManifoldModel, out: &mut Output) -> Result<(), CliError> {
    for (i, a) in classes(cli, model)?.iter().enumerate() {
        let v = invariants::classify_negative(a).map_err(|e| domain("precondition", e))?;
        let kind = match v.kind {
            NegKind::ExceptionalSphere => "exceptional-sphere",
            NegKind::NotRepresentable => "not-representable",
        };
        let witness = v.witness.map(|(g, c, s)| format!("({g},{c},{s})"));
        if out.human() {
            match &witness {
                Some(w) => out.line(format!("classify({a}) = {kind} witness (g,c1,square) = {w}")),
                None => out.line(format!("classify({a}) = {kind}")),
            }
        } else {
            out.record(format!("class.{i}"), a);
            out.record(format!("verdict.{i}"), kind);
            out.record(format!("witness.{i}"), witness.unwrap_or_else(|| "none".into()));
        }
    }
    Ok(())
}

fn cmd_lightcone(cli: &Cli, model: &ManifoldModel, out: &mut Output) -> Result<(), CliError> {
    let cs = classes(cli, model)?;
    if cs.len() != 2 {
        return Err(usage("usage", format!("lightcone needs exactly two --class values, got {}", cs.len())));
    }
    let r = invariants::light_cone_pair_check(&cs[0], &cs[1]).map_err(|e| domain("precondition", e))?;
    if out.human() {
        out.line(format!(
            "({})·({}) = {}: {}",
            r.first,
            r.second,
            r.product,
            if r.passed { "pass" } else { "FAIL" }
        ));
    } else {
        out.record("product", r.product);
        out.record("proportional_nulls", r.proportional_nulls);
        out.record("passed", r.passed);
    }
    if !r.passed {
        return Err(domain("lightcone-violation", format!("pair ({}, {}) pairs to {}", r.first, r.second, r.product)));
    }
    Ok(())
}

fn single_class(cli: &Cli, model: &ManifoldModel) -> Result<HClass, CliError> {
    let cs = classes(cli, model)?;
    if cs.len() != 1 {
        return Err(usage("usage", format!("this command needs exactly one --class, got {}", cs.len())));
    }
    Ok(cs.into_iter().next().expect("one class"))
}

fn cmd_decomp(cli: &Cli, model: &ManifoldModel, out: &mut Output) -> Result<(), CliError> {
    let a = single_class(cli, model)?;
    let list = cli.candidates.as_deref().ok_or_else(|| usage("usage", "decomp needs --candidates"))?;
    let candidates = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse(model, s))
        .collect::<Result<Vec<_>, _>>()?;
    let ds = structure::enumerate_decompositions(model, &a, &candidates).map_err(|e| domain("precondition", e))?;
    if out.human() {
        out.line(format!("{} decomposition(s) of {a}", ds.len()));
        for d in &ds {
            out.line(format!("  {d}"));
        }
    } else {
        out.record("class", &a);
        out.record("count", ds.len());
        for (i, d) in ds.iter().enumerate() {
            let parts: Vec<String> = d.parts.iter().map(|p| p.to_string()).collect();
            out.record(format!("decomposition.{i}"), parts.join("; "));
        }
    }
    Ok(())
}

fn cmd_gr(cli: &Cli, model: &ManifoldModel, out: &mut Output) -> Result<(), CliError> {
    for (i, a) in classes(cli, model)?.iter().enumerate() {
        let map_err = |e: structure::StructureError| match e {
            structure::StructureError::UnknownGr0 { .. } => domain("unknown-gr0", e),
            structure::StructureError::Overflow | structure::StructureError::Series(_) => domain("overflow", e),
            _ => domain("precondition", e),
        };
        let breakdown = if a.is_zero() { Vec::new() } else { structure::gromov_breakdown(model, a).map_err(map_err)? };
        let total = structure::gromov_via_decompositions(model, a).map_err(map_err)?;
        if out.human() {
            for (d, v) in &breakdown {
                out.line(format!("  {d} -> {v}"));
            }
            out.line(format!("Gr({a}) = {total}"));
        } else {
            out.record(format!("class.{i}"), a);
            for (j, (d, v)) in breakdown.iter().enumerate() {
                let parts: Vec<String> = d.parts.iter().map(|p| p.to_string()).collect();
                out.record(format!("decomposition.{i}.{j}"), parts.join("; "));
                out.record(format!("product.{i}.{j}"), v);
            }
            out.record(format!("gr.{i}"), total);
        }
    }
    Ok(())
}

fn cmd_gr_tori(cli: &Cli, out: &mut Output) -> Result<(), CliError> {
    let list = cli.tori.as_deref().ok_or_else(|| usage("usage", "gr-tori needs --tori"))?;
    let tori = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<TorusEntry>().map_err(|e| usage("parse", format!("`{s}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let k = cli.k.ok_or_else(|| usage("usage", "gr-tori needs --k"))?;
    if k < 0 {
        return Err(usage("usage", format!("--k must be non-negative, got {k}")));
    }
    let v = torus::gr_torus_class(&tori, k as usize).map_err(|e| domain("overflow", e))?;
    if out.human() {
        out.line(v.to_string());
    } else {
        let labels: Vec<String> = tori.iter().map(|t| t.to_string()).collect();
        out.record("tori", labels.join(","));
        out.record("k", k);
        out.record("gr", v);
    }
    Ok(())
}

fn cmd_gr_s(cli: &Cli, model: &ManifoldModel, out: &mut Output) -> Result<(), CliError> {
    for (i, a) in classes(cli, model)?.iter().enumerate() {
        let configs = spherical::enumerate_sphere_configs(model, a).map_err(|e| domain("precondition", e))?;
        let total = spherical::gr_s_of(model, &configs).map_err(|e| domain("overflow", e))?;
        let rule = spherical::embedded_sphere_rule(model, a);
        if out.human() {
            for c in &configs {
                let counts: Vec<String> =
                    c.parts.iter().map(|b| model.sphere_table().get(b).copied().unwrap_or(0).to_string()).collect();
                let mut line = format!("  {c} N = {} factor = {}", counts.join("·"), c.assignment_factor);
                if c.warning {
                    line.push_str(" (warning: repeated class with N > 1)");
                }
                out.line(line);
            }
            out.line(format!("Gr_s({a}) = {total}"));
        } else {
            out.record(format!("class.{i}"), a);
            for (j, c) in configs.iter().enumerate() {
                let parts: Vec<String> = c.parts.iter().map(|p| p.to_string()).collect();
                out.record(format!("config.{i}.{j}"), parts.join("; "));
                out.record(format!("k.{i}.{j}"), c.k);
                out.record(format!("p.{i}.{j}"), c.p);
                out.record(format!("factor.{i}.{j}"), c.assignment_factor);
                out.record(format!("warning.{i}.{j}"), c.warning);
            }
            out.record(format!("gr_s.{i}"), total);
            out.record(format!("embedded_rule.{i}"), rule.map_or_else(|| "none".to_string(), |v| v.to_string()));
        }
    }
    Ok(())
}

fn cmd_fibersum(cli: &Cli, out: &mut Output) -> Result<(), CliError> {
    match cli.n {
        None => {
            for (i, p) in fibersum::base_pieces().iter().enumerate() {
                if out.human() {
                    out.line(format!("{:<11} boundary = {}  Gr(F) = {}", p.name, p.boundary_count, p.fiber_gr));
                } else {
                    out.record(format!("piece.{i}.name"), &p.name);
                    out.record(format!("piece.{i}.boundary"), p.boundary_count);
                    out.record(format!("piece.{i}.fiber_gr"), p.fiber_gr);
                }
            }
        }
        Some(n) => {
            let (v, trace) = fibersum::gr_elliptic_fiber(n).map_err(|e| usage("usage", e))?;
            if out.human() {
                for s in &trace {
                    out.line(format!("  {s}"));
                }
                out.line(format!("Gr(V({n}), F) = {v}"));
            } else {
                for (i, s) in trace.iter().enumerate() {
                    out.record(format!("step.{i}"), &s.step);
                    out.record(format!("value.{i}"), s.value);
                }
                out.record("gr", v);
            }
        }
    }
    Ok(())
}

fn parse_component(model: &ManifoldModel, s: &str) -> Result<Component, CliError> {
    let bad = || usage("parse", format!("component `{s}` must look like class:mult:genus"));
    let mut it = s.rsplitn(3, ':');
    let genus = it.next().ok_or_else(bad)?.trim().parse::<i64>().map_err(|_| bad())?;
    let mult = it.next().ok_or_else(bad)?.trim().parse::<i64>().map_err(|_| bad())?;
    let class = parse(model, it.next().ok_or_else(bad)?)?;
    Component::new(class, mult, genus).map_err(|e| usage("parse", e))
}

fn cmd_verify(cli: &Cli, model: &ManifoldModel, out: &mut Output) -> Result<(), CliError> {
    if cli.components.is_empty() {
        return Err(usage("usage", "verify needs at least one --component class:mult:genus"));
    }
    let comps = cli.components.iter().map(|s| parse_component(model, s)).collect::<Result<Vec<_>, _>>()?;
    let cfg = Configuration::new(comps).map_err(|e| usage("parse", e))?;
    let report: Report = if cli.kprime {
        structure::verify_kprime_configuration(model, &cfg, cli.points)
    } else {
        let points = cli.points.unwrap_or_else(|| invariants::k(&cfg.total()));
        structure::verify_good_configuration(model, &cfg, points)
    }
    .map_err(|e| domain("precondition", e))?;
    let verdict = if report.passed() { "pass" } else { "fail" };
    if out.human() {
        out.line(format!("configuration total {}", cfg.total()));
        out.text.push_str(&report.to_string());
        out.line(format!("result: {verdict}"));
    } else {
        out.record("total", cfg.total());
        for (i, c) in report.clauses.iter().enumerate() {
            out.record(format!("clause.{i}.id"), c.id);
            out.record(format!("clause.{i}.passed"), c.passed);
            let w: Vec<String> = c.witnesses.iter().map(|w| w.to_string()).collect();
            out.record(format!("clause.{i}.witnesses"), w.join("; "));
        }
        out.record("result", verdict);
    }
    Ok(())
}
