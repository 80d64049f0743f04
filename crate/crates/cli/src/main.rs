use std::collections::BTreeMap;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use floorcount::chambers::{FitConfig, Study};
use floorcount::diagram::{s_real_multiplicity, to_json};
use floorcount::enumeration::{contributing_templates, for_each_marked_diagram, EnumerationError};
use floorcount::invariants::{check_lattice, g_s_real, sequences_from_point, InvariantError, Point, TotallyRealLattice};
use floorcount::lattice::{lift, vector_partition, LatticeError, ParametricPolytopeSpec, VectorConfiguration, WeightedCounter};
use floorcount::oracle::{brute_g, brute_weighted_count};
use floorcount::polygon::PolygonError;
use floorcount::{Count, MultiplicityWindow, Rational, Sides};
use num::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "floorcount", version, about = "Exact floor-diagram counts for h-transverse polygons")]
struct Cli {
    /// Cap on templates and emitted diagrams.
    #[arg(long, global = true, env = "FLOORCOUNT_MAX_DIAGRAMS", default_value_t = floorcount::enumeration::DEFAULT_LIMIT)]
    max_diagrams: usize,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, env = "FLOORCOUNT_THREADS", default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Window {
    Literal,
    Shifted,
}

impl From<Window> for MultiplicityWindow {
    fn from(w: Window) -> Self {
        match w {
            Window::Literal => MultiplicityWindow::Literal,
            Window::Shifted => MultiplicityWindow::Shifted,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate G at one point.
    Invariant {
        /// Polygon JSON, inline or a file path.
        #[arg(long)]
        polygon: String,
        /// Query JSON, inline or a file path.
        #[arg(long)]
        query: String,
        #[arg(long, value_enum, default_value_t = Window::Literal)]
        window: Window,
        /// Also evaluate by brute force and compare.
        #[arg(long)]
        against_oracle: bool,
    },
    /// Stream the marked diagrams of a fibre as JSONL.
    Enumerate {
        #[arg(long)]
        polygon: String,
        #[arg(long)]
        query: String,
        #[arg(long, value_enum, default_value_t = Window::Literal)]
        window: Window,
    },
    /// Fit quasipolynomials chamber by chamber.
    Fit {
        /// Fit config JSON, inline or a file path.
        #[arg(long)]
        config: String,
    },
    /// Lift a weighted partition problem to an unweighted one.
    Lift {
        /// Matrix JSON, inline or a file path.
        #[arg(long)]
        matrix: String,
    },
    /// Count lattice points of a (weighted) partition polytope.
    Count {
        #[arg(long)]
        matrix: String,
        /// Count through the lifted system instead of summing fibres.
        #[arg(long)]
        lifted: bool,
        #[arg(long)]
        against_oracle: bool,
    },
    /// Cross-check the counting routes on a built-in suite.
    Verify {
        /// Add the brute-force evaluation as a third route.
        #[arg(long)]
        against_oracle: bool,
        /// Half-width of the sampled box.
        #[arg(long, default_value_t = 5)]
        radius: i64,
    },
}

enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
    Verification(String),
}

impl Failure {
    fn input(e: impl Into<anyhow::Error>) -> Self {
        Failure::Input(e.into())
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Lattice(_) | InvariantError::Diagram(_) => Failure::Internal(e.into()),
            InvariantError::Enumeration(ref inner) => match inner {
                EnumerationError::ResourceLimit(_) => Failure::Input(limit_hint(e.into())),
                EnumerationError::Diagram(_) => Failure::Internal(e.into()),
            },
            _ => Failure::Input(e.into()),
        }
    }
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        InvariantError::from(e).into()
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        Failure::Input(e.into())
    }
}

impl From<PolygonError> for Failure {
    fn from(e: PolygonError) -> Self {
        Failure::Input(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

fn limit_hint(e: anyhow::Error) -> anyhow::Error {
    e.context("raise FLOORCOUNT_MAX_DIAGRAMS or --max-diagrams to continue")
}

type Outcome = Result<(), Failure>;

/// Inline JSON if it looks like an object, otherwise a path.
fn load<T: for<'de> Deserialize<'de>>(src: &str, what: &str) -> Result<T, Failure> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        std::fs::read_to_string(Path::new(src)).with_context(|| format!("reading {what} from {src}")).map_err(Failure::Input)?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {what} JSON")).map_err(Failure::Input)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonInput {
    c_r: Vec<i64>,
    c_l: Vec<i64>,
    #[serde(default)]
    d_t: Option<i64>,
    d_r: Vec<i64>,
    d_l: Vec<i64>,
}

impl PolygonInput {
    fn sides(&self) -> Result<Sides, Failure> {
        Ok(Sides::new(self.c_r.clone(), self.c_l.clone(), self.d_r.clone(), self.d_l.clone())?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Query {
    g: usize,
    #[serde(default)]
    s: usize,
    point: Point,
    /// Accepted for compatibility; slopes always come from the polygon.
    #[serde(default)]
    #[allow(dead_code)]
    vary_c: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixInput {
    #[serde(rename = "X")]
    x: Vec<Vec<i64>>,
    #[serde(default)]
    spec: Option<ParametricPolytopeSpec>,
    c: Vec<i64>,
}

impl MatrixInput {
    fn config(&self) -> Result<VectorConfiguration, Failure> {
        Ok(VectorConfiguration::from_rows(self.x.clone())?)
    }
}

fn emit(out: &mut impl Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("values serialize"))
}

/// Coefficient as `p/q`, always with a denominator.
fn ratio(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn csv_field(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn check_query(poly: &PolygonInput, sides: &Sides, q: &Query) -> Result<(), Failure> {
    check_lattice(sides, &q.point)?;
    if let Some(d_t) = poly.d_t {
        if d_t != q.point.d_t() {
            return Err(Failure::input(anyhow!("point implies d_t = {}, polygon says {d_t}", q.point.d_t())));
        }
    }
    Ok(())
}

fn evaluate(sides: &Sides, q: &Query, window: MultiplicityWindow) -> Result<Count, Failure> {
    let p = &q.point;
    if q.s == 0 && p.z.is_empty() && p.w.is_empty() && !p.y.contains(&0) {
        Ok(TotallyRealLattice::new(sides.clone(), q.g).eval(&p.x, &p.y)?)
    } else {
        Ok(g_s_real(sides, q.g, q.s, p, window)?)
    }
}

fn cmd_invariant(cli: &Cli, polygon: &str, query: &str, window: Window, against_oracle: bool) -> Outcome {
    let poly: PolygonInput = load(polygon, "polygon")?;
    let sides = poly.sides()?;
    let q: Query = load(query, "query")?;
    check_query(&poly, &sides, &q)?;
    let window = window.into();
    let value = evaluate(&sides, &q, window)?;
    let p = &q.point;
    let oracle = against_oracle.then(|| brute_g(&sides, q.g, q.s, &p.x, &p.y, &p.z, &p.w, window));
    let status = oracle.as_ref().map(|o| if *o == value { "OK" } else { "DIFF" });
    let mut out = BufWriter::new(io::stdout().lock());
    match cli.format {
        Format::Json => {
            let mut v = json!({"schema_version": SCHEMA_VERSION, "g": q.g, "s": q.s, "value": value.to_string()});
            if let (Some(o), Some(st)) = (&oracle, status) {
                v["oracle"] = json!(o.to_string());
                v["status"] = json!(st);
            }
            emit(&mut out, &v)?;
        }
        Format::Csv => {
            writeln!(out, "g,s,value,oracle,status")?;
            let o = oracle.as_ref().map(Count::to_string).unwrap_or_default();
            writeln!(out, "{},{},{value},{o},{}", q.g, q.s, status.unwrap_or(""))?;
        }
        Format::Table => match (&oracle, status) {
            (Some(o), Some(st)) => writeln!(out, "value  {value}\noracle {o}\nstatus {st}")?,
            _ => writeln!(out, "{value}")?,
        },
    }
    out.flush()?;
    match status {
        Some("DIFF") => Err(Failure::Verification(format!("pipeline {value} vs oracle {}", oracle.unwrap()))),
        _ => Ok(()),
    }
}

fn cmd_enumerate(cli: &Cli, polygon: &str, query: &str, window: Window) -> Outcome {
    let poly: PolygonInput = load(polygon, "polygon")?;
    let sides = poly.sides()?;
    let q: Query = load(query, "query")?;
    check_query(&poly, &sides, &q)?;
    let xi = sequences_from_point(&q.point)?;
    let window = window.into();
    let mut out = BufWriter::new(io::stdout().lock());
    let mut total = Count::zero();
    let mut weighted = 0usize;
    let mut last: Option<floorcount::WeightedFloorDiagram> = None;
    let mut failure: Option<Failure> = None;
    let n = for_each_marked_diagram(&sides, q.g, &xi, cli.max_diagrams, |d, m| {
        if failure.is_some() {
            return;
        }
        let mu: Count = match s_real_multiplicity(d, m, q.s, &xi, window) {
            Ok(mu) => mu,
            Err(e) => {
                failure = Some(Failure::Internal(e.into()));
                return;
            }
        };
        if last.as_ref() != Some(d) {
            weighted += 1;
            last = Some(d.clone());
        }
        total += &mu;
        let row = match cli.format {
            Format::Json => serde_json::to_string(&json!({"diagram": to_json(d, m), "multiplicity": mu.to_string()}))
                .expect("values serialize"),
            _ => format!("{}\t{mu}", serde_json::to_string(&to_json(d, m)).expect("values serialize")),
        };
        if let Err(e) = writeln!(out, "{row}") {
            failure = Some(e.into());
        }
    })?;
    if let Some(f) = failure {
        return Err(f);
    }
    let mut families = Vec::new();
    for (r, l) in sides.permutation_pairs() {
        let t = contributing_templates(&sides, q.g, &xi, &r, &l, cli.max_diagrams)?;
        families.push(json!({"r": r, "l": l, "templates": t.len()}));
    }
    emit(
        &mut out,
        &json!({"schema_version": SCHEMA_VERSION, "summary": {
            "marked_diagrams": n,
            "weighted_diagrams": weighted,
            "multiplicity_sum": total.to_string(),
            "families": families,
        }}),
    )?;
    out.flush()?;
    Ok(())
}

fn cmd_fit(cli: &Cli, config: &str) -> Outcome {
    let cfg: FitConfig = load(config, "fit config")?;
    let study = Study::new(cfg).map_err(Failure::input)?;
    let strata = study.run().map_err(Failure::input)?;
    let names = &study.vars;
    let mut fits = Vec::new();
    let mut failures = Vec::new();
    let mut rows: Vec<[String; 4]> = Vec::new();
    for s in &strata {
        match &s.fit {
            Ok(q) => {
                for (coset, p) in q.pieces() {
                    fits.push(json!({
                        "chamber": s.signature,
                        "coset": coset,
                        "points": s.points.len(),
                        "degree": p.total_degree(),
                        "formula": p.display(names).to_string(),
                        "poly": p.named_terms(names),
                    }));
                    for (e, c) in p.terms() {
                        rows.push([
                            s.signature.clone(),
                            coset.clone(),
                            floorcount::chambers::Polynomial::<Rational>::monomial_name(e, names),
                            ratio(c),
                        ]);
                    }
                }
            }
            Err(e) => failures.push(json!({"chamber": s.signature, "points": s.points.len(), "error": e.to_string()})),
        }
    }
    let mut out = BufWriter::new(io::stdout().lock());
    match cli.format {
        Format::Json => emit(
            &mut out,
            &json!({
                "schema_version": SCHEMA_VERSION,
                "vars": names,
                "eliminated": names[study.pivot],
                "walls": study.arrangement.functionals().iter().map(|f| f.display(names).to_string()).collect::<Vec<_>>(),
                "fits": fits,
                "failures": failures,
            }),
        )?,
        Format::Csv => {
            writeln!(out, "chamber,coset,monomial,coefficient")?;
            for r in &rows {
                writeln!(out, "{},{},{},{}", csv_field(&r[0]), csv_field(&r[1]), csv_field(&r[2]), csv_field(&r[3]))?;
            }
        }
        Format::Table => {
            for f in &fits {
                writeln!(out, "{}  {}  {}", f["chamber"].as_str().unwrap(), f["coset"].as_str().unwrap(), f["formula"].as_str().unwrap())?;
            }
            for f in &failures {
                writeln!(out, "{}  error: {}", f["chamber"].as_str().unwrap(), f["error"].as_str().unwrap())?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_lift(cli: &Cli, matrix: &str) -> Outcome {
    let m: MatrixInput = load(matrix, "matrix")?;
    let x = m.config()?;
    let spec = m.spec.clone().unwrap_or_else(|| ParametricPolytopeSpec::trivial(x.len()));
    let (a, b) = lift(&x, &spec, &m.c)?;
    let mut out = BufWriter::new(io::stdout().lock());
    match cli.format {
        Format::Json => emit(&mut out, &json!({"schema_version": SCHEMA_VERSION, "A": a.rows(), "b": b}))?,
        _ => {
            for (row, rhs) in a.rows().iter().zip(&b) {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                let sep = if cli.format == Format::Csv { "," } else { " " };
                writeln!(out, "{}{sep}{rhs}", cells.join(sep))?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_count(cli: &Cli, matrix: &str, lifted: bool, against_oracle: bool) -> Outcome {
    let m: MatrixInput = load(matrix, "matrix")?;
    let x = m.config()?;
    let value = match &m.spec {
        None => vector_partition(&x, &m.c)?,
        Some(spec) => {
            let w = WeightedCounter::new(&x, spec)?;
            if lifted {
                w.lifted(&m.c)?
            } else {
                w.direct(&m.c)?
            }
        }
    };
    let oracle = if against_oracle {
        let f = |z: &[i64]| -> Count {
            match &m.spec {
                None => Count::one(),
                Some(spec) => {
                    let q = VectorConfiguration::from_rows(spec.c.clone());
                    match q {
                        Ok(q) if q.len() > 0 => vector_partition(&q, &spec.rhs(z)).unwrap_or_default(),
                        _ => Count::from(spec.rhs(z).iter().all(|v| *v == 0) as u8),
                    }
                }
            }
        };
        Some(
            brute_weighted_count(&x, &m.c, &f)
                .ok_or_else(|| Failure::input(anyhow!("no bounding functional for the brute-force count")))?,
        )
    } else {
        None
    };
    let status = oracle.as_ref().map(|o| if *o == value { "OK" } else { "DIFF" });
    let mut out = BufWriter::new(io::stdout().lock());
    match cli.format {
        Format::Json => {
            let mut v = json!({"schema_version": SCHEMA_VERSION, "count": value.to_string()});
            if let (Some(o), Some(st)) = (&oracle, status) {
                v["oracle"] = json!(o.to_string());
                v["status"] = json!(st);
            }
            emit(&mut out, &v)?;
        }
        _ => match (&oracle, status) {
            (Some(o), Some(st)) => writeln!(out, "{value} {o} {st}")?,
            _ => writeln!(out, "{value}")?,
        },
    }
    out.flush()?;
    match status {
        Some("DIFF") => Err(Failure::Verification(format!("count {value} vs oracle {}", oracle.unwrap()))),
        _ => Ok(()),
    }
}

struct Check {
    name: &'static str,
    queries: usize,
    mismatches: Vec<String>,
}

fn small_sides(k: i64) -> Sides {
    Sides::new(vec![k, 0], vec![0], vec![1, 1], vec![2]).expect("valid sides")
}

/// Points `(x1; y1, y2)` with `x1 + y1 + y2 + k = 0`, nothing zero.
fn suite_points(k: i64, r: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for y1 in -r..=r {
        for y2 in y1..=r {
            let x1 = -(y1 + y2 + k);
            if y1 != 0 && y2 != 0 && x1 != 0 && x1.abs() <= r + k {
                out.push((x1, y1, y2));
            }
        }
    }
    out
}

fn cmd_verify(cli: &Cli, against_oracle: bool, radius: i64) -> Outcome {
    if radius < 1 {
        return Err(Failure::input(anyhow!("radius must be positive")));
    }
    let mut checks: Vec<Check> = Vec::new();
    for k in [3, 5] {
        let sides = small_sides(k);
        let lat = TotallyRealLattice::new(sides.clone(), 1);
        let mut c = Check { name: "G genus 1, lattice vs diagrams", queries: 0, mismatches: vec![] };
        let mut o = Check { name: "G genus 1, lattice vs oracle", queries: 0, mismatches: vec![] };
        for (x1, y1, y2) in suite_points(k, radius) {
            let via_lattice = lat.eval(&[x1], &[y1, y2])?;
            let p = Point::totally_real(vec![x1], vec![y1, y2]);
            let via_diagrams = g_s_real(&sides, 1, 0, &p, MultiplicityWindow::Literal)?;
            c.queries += 1;
            if via_lattice != via_diagrams {
                c.mismatches.push(format!("k={k} ({x1};{y1},{y2}): {via_lattice} vs {via_diagrams}"));
            }
            if against_oracle {
                let b = brute_g(&sides, 1, 0, &[x1], &[y1, y2], &[], &[], MultiplicityWindow::Literal);
                o.queries += 1;
                if b != via_lattice {
                    o.mismatches.push(format!("k={k} ({x1};{y1},{y2}): {via_lattice} vs {b}"));
                }
            }
        }
        checks.push(c);
        if against_oracle {
            checks.push(o);
        }
        if against_oracle {
            for (window, name) in [
                (MultiplicityWindow::Literal, "G_1 genus 0 literal window vs oracle"),
                (MultiplicityWindow::Shifted, "G_1 genus 0 shifted window vs oracle"),
            ] {
                let mut c = Check { name, queries: 0, mismatches: vec![] };
                for (x1, y1, y2) in suite_points(k, radius) {
                    let p = Point::totally_real(vec![x1], vec![y1, y2]);
                    let v = g_s_real(&sides, 0, 1, &p, window)?;
                    let b = brute_g(&sides, 0, 1, &[x1], &[y1, y2], &[], &[], window);
                    c.queries += 1;
                    if v != b {
                        c.mismatches.push(format!("k={k} ({x1};{y1},{y2}): {v} vs {b}"));
                    }
                }
                checks.push(c);
            }
        }
    }
    // weighted counts by fibres against the lifted system
    let mut c = Check { name: "weighted count, direct vs lifted", queries: 0, mismatches: vec![] };
    let x = VectorConfiguration::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1]])?;
    let spec = ParametricPolytopeSpec { c: vec![vec![1, 1]], d: vec![vec![1], vec![0], vec![1]], e: vec![0] };
    let w = WeightedCounter::new(&x, &spec)?;
    for a in 0..=radius {
        for b in 0..=radius {
            let rhs = [a, b];
            let (d, l) = (w.direct(&rhs)?, w.lifted(&rhs)?);
            c.queries += 1;
            if d != l {
                c.mismatches.push(format!("c={rhs:?}: {d} vs {l}"));
            }
            if against_oracle {
                let f = |z: &[i64]| Count::from(z[0] + z[2] + 1);
                if brute_weighted_count(&x, &rhs, &f).as_ref() != Some(&d) {
                    c.mismatches.push(format!("c={rhs:?}: {d} vs oracle"));
                }
            }
        }
    }
    checks.push(c);
    // merge same-named checks across k
    let mut merged: BTreeMap<&str, (usize, Vec<String>)> = BTreeMap::new();
    let mut order: Vec<&str> = Vec::new();
    for c in checks {
        let e = merged.entry(c.name).or_insert_with(|| {
            order.push(c.name);
            (0, vec![])
        });
        e.0 += c.queries;
        e.1.extend(c.mismatches);
    }
    let green = merged.values().all(|(_, m)| m.is_empty());
    let mut out = BufWriter::new(io::stdout().lock());
    let rows: Vec<Value> = order
        .iter()
        .map(|n| {
            let (q, m) = &merged[n];
            json!({"check": n, "queries": q, "mismatches": m.len(), "status": if m.is_empty() { "PASS" } else { "FAIL" }, "examples": m.iter().take(3).collect::<Vec<_>>()})
        })
        .collect();
    match cli.format {
        Format::Json => emit(&mut out, &json!({"schema_version": SCHEMA_VERSION, "radius": radius, "checks": rows, "all_green": green}))?,
        Format::Csv => {
            writeln!(out, "check,queries,mismatches,status")?;
            for r in &rows {
                writeln!(out, "{},{},{},{}", csv_field(r["check"].as_str().unwrap()), r["queries"], r["mismatches"], r["status"].as_str().unwrap())?;
            }
        }
        Format::Table => {
            for r in &rows {
                writeln!(out, "{:<4} {:<40} {:>6} queries {:>4} mismatches", r["status"].as_str().unwrap(), r["check"].as_str().unwrap(), r["queries"], r["mismatches"])?;
            }
        }
    }
    out.flush()?;
    if green {
        Ok(())
    } else {
        Err(Failure::Verification("route disagreement".into()))
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.max_diagrams == 0 {
        return Err(Failure::input(anyhow!("the diagram cap must be positive")));
    }
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global().map_err(|e| Failure::Internal(e.into()))?;
    }
    match &cli.command {
        Command::Invariant { polygon, query, window, against_oracle } => cmd_invariant(cli, polygon, query, *window, *against_oracle),
        Command::Enumerate { polygon, query, window } => cmd_enumerate(cli, polygon, query, *window),
        Command::Fit { config } => cmd_fit(cli, config),
        Command::Lift { matrix } => cmd_lift(cli, matrix),
        Command::Count { matrix, lifted, against_oracle } => cmd_count(cli, matrix, *lifted, *against_oracle),
        Command::Verify { against_oracle, radius } => cmd_verify(cli, *against_oracle, *radius),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = std::panic::catch_unwind(|| run(&cli));
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Input(e))) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(e))) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Verification(msg))) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(1),
    }
}
