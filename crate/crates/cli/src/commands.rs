use std::error::Error as StdError;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use gordian::audit::{AuditReport, Details, Mode, WalkLimits};
use gordian::conway::{SkeinEngine, SkeinLimits, DEFAULT_MAX_CROSSINGS};
use gordian::metric::DEFAULT_VERTEX_CAP;
use gordian::{
    a2, audit_four_point, audit_okada_walk, audit_quasi_isometry, audit_slimness, audit_triangle_free,
    conway_via_matrix, delta_nabla_distance, parse_braid, parse_pd, twist_knot, x_nabla_distance_bounds, AuditConfig,
    BraidWord, ConwayClass, ConwayPolynomial, FiniteUniverse, LinkDiagram, UniverseParams,
};
use serde::Serialize;

use crate::{
    plot, AuditArgs, AuditCommand, Cli, Command, DeltaWalkArgs, DiagramInput, DistanceArgs, Format, Global,
    InvariantArgs, PlotArgs, TwistArgs, UniverseArgs, CLI_SCHEMA_VERSION,
};

pub type CliResult<T> = Result<T, Box<dyn StdError>>;

/// Exit status for a failed bound under `--strict`.
const STRICT_FAILURE: u8 = 3;

/// What a command produced: the main document, an optional one-line summary,
/// and the audit verdict if there is one.
struct Output {
    document: String,
    summary: Option<String>,
    pass: Option<bool>,
}

impl Output {
    fn document(document: String) -> Self {
        Self { document, summary: None, pass: None }
    }
}

pub fn run(cli: &Cli) -> CliResult<ExitCode> {
    let g = &cli.global;
    let format = resolve_format(&cli.command, g.format)?;
    let out = match &cli.command {
        Command::Invariant(a) => invariant(g, a, format)?,
        Command::Distance(a) => distance(g, a, format)?,
        Command::Universe(a) => universe(g, a, format)?,
        Command::Audit(a) => audit(g, a, format)?,
        Command::DeltaWalk(a) => delta_walk(g, a, format)?,
        Command::Plot(a) => plot_cmd(g, a, format)?,
        Command::Twist(a) => twist(g, a, format)?,
    };
    match &g.out {
        Some(path) => {
            fs::write(path, &out.document).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            if let Some(s) = &out.summary {
                println!("{s}");
            }
        }
        None => {
            print!("{}", out.document);
            // Text documents already lead with the summary.
            if let Some(s) = out.summary.as_ref().filter(|_| format != Format::Text) {
                eprintln!("{s}");
            }
        }
    }
    if g.strict && out.pass == Some(false) {
        return Ok(ExitCode::from(STRICT_FAILURE));
    }
    Ok(ExitCode::SUCCESS)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Invariant(_) => "invariant",
        Command::Distance(_) => "distance",
        Command::Universe(_) => "universe",
        Command::Audit(_) => "audit",
        Command::DeltaWalk(_) => "delta-walk",
        Command::Plot(_) => "plot",
        Command::Twist(_) => "twist",
    }
}

fn resolve_format(c: &Command, requested: Option<Format>) -> CliResult<Format> {
    use Format::*;
    let allowed: &[Format] = match c {
        Command::Invariant(_) | Command::Distance(_) | Command::Audit(_) | Command::Twist(_) => &[Json, Text],
        Command::Universe(_) | Command::DeltaWalk(_) => &[Json, Csv, Text],
        Command::Plot(_) => &[Svg, Csv],
    };
    let format = requested.unwrap_or(allowed[0]);
    if !allowed.contains(&format) {
        let name = format!("{format:?}").to_lowercase();
        return Err(format!("format `{name}` is not available for `{}`", command_name(c)).into());
    }
    Ok(format)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()).into())
}

fn cap_usize(g: &Global, default: usize) -> usize {
    g.cap.map_or(default, |c| usize::try_from(c).unwrap_or(usize::MAX))
}

fn engine(g: &Global) -> SkeinEngine {
    SkeinEngine::new(SkeinLimits { max_crossings: cap_usize(g, DEFAULT_MAX_CROSSINGS), ..SkeinLimits::default() })
}

enum Parsed {
    Pd(LinkDiagram),
    Braid(BraidWord),
}

fn parse_input(input: &DiagramInput) -> CliResult<Parsed> {
    let with_source = |what: &str, e: gordian::Error| format!("{what}: {e}");
    if let Some(text) = &input.pd {
        return Ok(Parsed::Pd(parse_pd(text).map_err(|e| with_source("--pd", e))?));
    }
    if let Some(path) = &input.pd_file {
        let text = read(path)?;
        return Ok(Parsed::Pd(parse_pd(&text).map_err(|e| with_source(&path.display().to_string(), e))?));
    }
    if let Some(text) = &input.braid {
        return Ok(Parsed::Braid(parse_braid(text).map_err(|e| with_source("--braid", e))?));
    }
    if let Some(path) = &input.braid_file {
        let text = read(path)?;
        return Ok(Parsed::Braid(parse_braid(&text).map_err(|e| with_source(&path.display().to_string(), e))?));
    }
    Err("no input given".into())
}

/// Polynomial of a braid closure. Knots go through the Burau matrix and, when
/// the word is within the crossing cap, through skein resolution as well.
fn braid_polynomial(engine: &mut SkeinEngine, w: &BraidWord) -> CliResult<(ConwayPolynomial, Vec<&'static str>)> {
    if !w.closes_to_knot() {
        return Ok((engine.conway(&w.closure())?, vec!["skein"]));
    }
    let matrix = conway_via_matrix(w)?;
    if w.len() > engine.limits().max_crossings {
        return Ok((matrix, vec!["burau"]));
    }
    let skein = engine.conway(&w.closure())?;
    if skein != matrix {
        return Err(format!("internal error: skein gives {skein}, Burau gives {matrix} for {w}").into());
    }
    Ok((matrix, vec!["skein", "burau"]))
}

#[derive(Serialize)]
struct InvariantReport {
    schema_version: u32,
    input: &'static str,
    crossings: usize,
    components: usize,
    polynomial: String,
    coefficients: String,
    /// Only defined for knots.
    a2: Option<serde_json::Value>,
    methods: Vec<&'static str>,
}

impl InvariantReport {
    fn text(&self) -> String {
        let a2 = self.a2.as_ref().map_or("n/a (not a knot)".to_string(), ToString::to_string);
        format!(
            "polynomial: {}\ncoefficients: {}\na2: {a2}\ncomponents: {}\ncrossings: {}\n",
            self.polynomial, self.coefficients, self.components, self.crossings
        )
    }
}

fn invariant(g: &Global, a: &InvariantArgs, format: Format) -> CliResult<Output> {
    let mut engine = engine(g);
    let (input, diagram, (poly, methods)) = match parse_input(&a.input)? {
        Parsed::Pd(d) => {
            let p = engine.conway(&d)?;
            ("pd", d, (p, vec!["skein"]))
        }
        Parsed::Braid(w) => ("braid", w.closure(), braid_polynomial(&mut engine, &w)?),
    };
    let knot = diagram.is_knot();
    let report = InvariantReport {
        schema_version: CLI_SCHEMA_VERSION,
        input,
        crossings: diagram.crossing_count(),
        components: diagram.component_count(),
        coefficients: poly.to_list_string(),
        a2: if knot { Some(to_json_number(&a2(&poly)?.to_string())) } else { None },
        polynomial: poly.to_string(),
        methods,
    };
    Ok(Output::document(if format == Format::Text { report.text() } else { json(&report) }))
}

#[derive(Serialize)]
struct DistanceReport {
    schema_version: u32,
    u: String,
    v: String,
    delta_distance: serde_json::Value,
    /// Possible values of the crossing-change distance.
    x_distance_bounds: Vec<u32>,
}

fn distance(g: &Global, a: &DistanceArgs, format: Format) -> CliResult<Output> {
    let total = a.class.len() + a.braid.len() + a.pd.len();
    if total != 2 {
        return Err(format!("distance needs exactly two inputs (--class, --braid or --pd), got {total}").into());
    }
    let mut engine = engine(g);
    let mut classes = Vec::new();
    for text in &a.class {
        classes.push(text.parse::<ConwayClass>().map_err(|e| format!("--class {text}: {e}"))?);
    }
    for text in &a.braid {
        let w = parse_braid(text).map_err(|e| format!("--braid {text}: {e}"))?;
        if !w.closes_to_knot() {
            return Err(format!("--braid {text}: closure has {} components, not a knot", w.closure_components()).into());
        }
        classes.push(ConwayClass::new(braid_polynomial(&mut engine, &w)?.0)?);
    }
    for text in &a.pd {
        let d = parse_pd(text).map_err(|e| format!("--pd {text}: {e}"))?;
        if !d.is_knot() {
            return Err(format!("--pd {text}: {} components, not a knot", d.component_count()).into());
        }
        classes.push(ConwayClass::new(engine.conway(&d)?)?);
    }
    let (u, v) = (&classes[0], &classes[1]);
    let report = DistanceReport {
        schema_version: CLI_SCHEMA_VERSION,
        u: u.poly().to_list_string(),
        v: v.poly().to_list_string(),
        delta_distance: to_json_number(&delta_nabla_distance(u, v).to_string()),
        x_distance_bounds: x_nabla_distance_bounds(u, v).into_iter().collect(),
    };
    let document = if format == Format::Text {
        let bounds: Vec<String> = report.x_distance_bounds.iter().map(ToString::to_string).collect();
        format!(
            "u: {} ({u})\nv: {} ({v})\ndelta distance: {}\ncrossing-change distance in {{{}}}\n",
            report.u,
            report.v,
            report.delta_distance,
            bounds.join(", ")
        )
    } else {
        json(&report)
    };
    Ok(Output::document(document))
}

fn parse_range(text: &str) -> CliResult<(i64, i64)> {
    let bad = || format!("--a2 expects MIN:MAX, got `{text}`");
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn universe(g: &Global, a: &UniverseArgs, format: Format) -> CliResult<Output> {
    let (lo, hi) = parse_range(&a.a2)?;
    let params = UniverseParams::new(lo, hi, a.depth, a.coeff);
    let u = FiniteUniverse::build(params, g.cap.unwrap_or(DEFAULT_VERTEX_CAP))?;
    let summary = format!("{} vertices, {} edges", u.len(), u.edge_count());
    let document = match format {
        Format::Json => u.to_json(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["index", "a2", "class"])?;
            for (i, v) in u.vertices().iter().enumerate() {
                w.write_record([i.to_string(), u.level_of(i).to_string(), v.poly().to_list_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        _ => format!("{summary}\n"),
    };
    Ok(Output { document, summary: Some(summary), pass: None })
}

fn load_universe(path: &Path) -> CliResult<FiniteUniverse> {
    let text = read(path)?;
    Ok(FiniteUniverse::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn audit(g: &Global, cmd: &AuditCommand, format: Format) -> CliResult<Output> {
    let (AuditCommand::Slim(a) | AuditCommand::Fourpoint(a) | AuditCommand::Qi(a) | AuditCommand::TriangleFree(a)) =
        cmd;
    let u = load_universe(&a.universe)?;
    let config = audit_config(g, a);
    let report = match cmd {
        AuditCommand::Slim(_) => audit_slimness(&u, &config)?,
        AuditCommand::Fourpoint(_) => audit_four_point(&u, &config)?,
        AuditCommand::Qi(_) => audit_quasi_isometry(&u)?,
        AuditCommand::TriangleFree(_) => audit_triangle_free(&u, &config)?,
    };
    Ok(report_output(&report, format))
}

fn audit_config(g: &Global, a: &AuditArgs) -> AuditConfig {
    AuditConfig {
        mode: if a.sampled { Mode::Sampled } else { Mode::Exhaustive },
        seed: g.seed,
        sample_size: a.sample_size,
        geodesic_cap: a.geodesic_cap,
        budget: a.budget,
        sampling_fallback: !a.no_fallback,
    }
}

fn verdict(r: &AuditReport) -> String {
    format!(
        "{}: {} (measured {}, bound {}, {} configurations, {:?})",
        r.kind,
        if r.pass { "pass" } else { "FAIL" },
        r.measured,
        r.bound,
        r.configurations,
        r.mode
    )
    .replace("Exhaustive", "exhaustive")
    .replace("Sampled", "sampled")
}

fn report_text(r: &AuditReport) -> String {
    let mut s = verdict(r) + "\n";
    if let Some(p) = &r.universe {
        let _ = writeln!(s, "universe: a2 {}..={}, depth {}, coeff {}", p.a2_min, p.a2_max, p.depth, p.coeff_bound);
    }
    if let Some(sm) = &r.sampling {
        let _ = writeln!(s, "sampling: {} seed {} size {}", sm.algorithm, sm.seed, sm.sample_size);
    }
    match &r.details {
        Details::Slim { cases, equal_level_max, .. } => {
            for c in cases {
                let max = c.max_delta.map_or("-".into(), |m| m.to_string());
                let _ = writeln!(s, "case {}: {} triangles, max delta {max}", c.case, c.triangles);
            }
            let _ = writeln!(s, "equal-level max delta: {}", equal_level_max.map_or("-".into(), |m| m.to_string()));
        }
        Details::Qi { constants, violation_count, levels_missing, .. } => {
            let _ = writeln!(
                s,
                "constants (A, B, C, D, E) = ({}, {}, {}, {}, {})",
                constants.a, constants.b, constants.c, constants.d, constants.e
            );
            let _ = writeln!(s, "violations: {violation_count}, levels missing: {levels_missing:?}");
        }
        Details::TriangleFree { edges, triangles } => {
            let _ = writeln!(s, "edges: {edges}, triangles: {triangles}");
        }
        Details::OkadaWalk { trace, truncated, .. } => {
            let t: Vec<String> = trace.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "a2 trace: {}", t.join(" "));
            if *truncated {
                s.push_str("truncated\n");
            }
        }
        Details::FourPoint { .. } => {}
    }
    s
}

fn report_output(r: &AuditReport, format: Format) -> Output {
    let document = if format == Format::Text { report_text(r) } else { r.to_json() };
    Output { document, summary: Some(verdict(r)), pass: Some(r.pass) }
}

fn delta_walk(g: &Global, a: &DeltaWalkArgs, format: Format) -> CliResult<Output> {
    let w = parse_braid(&a.braid).map_err(|e| format!("--braid: {e}"))?;
    let limits = WalkLimits { max_letters: a.max_letters, ..WalkLimits::default() };
    let report = audit_okada_walk(&w, a.steps, g.seed, &limits)?;
    if format == Format::Csv {
        let Details::OkadaWalk { trace, .. } = &report.details else { unreachable!("walk report") };
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(["step", "a2"])?;
        for (i, v) in trace.iter().enumerate() {
            out.write_record([i.to_string(), v.to_string()])?;
        }
        let document = String::from_utf8(out.into_inner()?)?;
        return Ok(Output { document, summary: Some(verdict(&report)), pass: Some(report.pass) });
    }
    Ok(report_output(&report, format))
}

fn plot_cmd(g: &Global, a: &PlotArgs, format: Format) -> CliResult<Output> {
    let u = load_universe(&a.universe)?;
    let cap = g.cap.unwrap_or(plot::DEFAULT_PLOT_CAP);
    if u.len() as u64 > cap {
        return Err(gordian::Error::ResourceLimit {
            resource: gordian::error::Resource::PlotVertices,
            limit: cap,
            actual: u.len() as u64,
        }
        .into());
    }
    let triangle = match &a.highlight_triangle {
        Some(corners) => {
            let classes = corners
                .iter()
                .map(|c| c.parse::<ConwayClass>().map_err(|e| format!("--highlight-triangle {c}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            Some(plot::triangle_sides(&u, [&classes[0], &classes[1], &classes[2]])?)
        }
        None => None,
    };
    let layout = plot::Layout::new(&u);
    let document = match format {
        Format::Csv => layout.csv(&u)?,
        _ => layout.svg(&u, triangle.as_ref()),
    };
    let summary = format!("{} vertices, {} edges", u.len(), u.edge_count());
    Ok(Output { document, summary: Some(summary), pass: None })
}

#[derive(Serialize)]
struct TwistReport {
    schema_version: u32,
    m: i32,
    braid: String,
    pd: String,
    polynomial: String,
    coefficients: String,
    a2: serde_json::Value,
    methods: Vec<&'static str>,
}

fn twist(g: &Global, a: &TwistArgs, format: Format) -> CliResult<Output> {
    let w = twist_knot(a.m);
    let mut engine = engine(g);
    let (poly, methods) = braid_polynomial(&mut engine, &w)?;
    let report = TwistReport {
        schema_version: CLI_SCHEMA_VERSION,
        m: a.m,
        braid: w.to_string(),
        pd: w.closure().to_pd_string(),
        coefficients: poly.to_list_string(),
        a2: to_json_number(&a2(&poly)?.to_string()),
        polynomial: poly.to_string(),
        methods,
    };
    let document = if format == Format::Text {
        format!("braid: {}\npd: {}\npolynomial: {}\na2: {}\n", report.braid, report.pd, report.polynomial, report.a2)
    } else {
        json(&report)
    };
    Ok(Output::document(document))
}

/// A JSON number when the integer fits in 64 bits, otherwise its decimal
/// string.
fn to_json_number(decimal: &str) -> serde_json::Value {
    if let Ok(v) = decimal.parse::<i64>() {
        v.into()
    } else if let Ok(v) = decimal.parse::<u64>() {
        v.into()
    } else {
        decimal.into()
    }
}
