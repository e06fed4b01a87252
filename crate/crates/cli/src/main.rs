use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropmoduli::catalog::{atlas, verify_range};
use tropmoduli::io::{
    parse_polygon, parse_triangulation, AtlasJson, ModuliReportJson, PolygonJson, RangeReportJson, TriangulationJson,
};
use tropmoduli::moduli::{
    classify_types, dim_formula_auto, dim_hyperelliptic_closed_form, dim_polygon_with, koelman_classify, DimOptions,
    HyperellipticForm, Strategy,
};
use tropmoduli::triangulation::{count_unimodular_triangulations, for_each_unimodular_triangulation, EnumerationOptions};
use tropmoduli::tropical::{hyperelliptic_length_constraints, moduli_dim_oracle};
use tropmoduli::{Error, InteriorHull, LatticePolygon, Triangulation};

#[derive(Parser)]
#[command(name = "tropmoduli", version, about = "Moduli dimensions of tropical plane curves")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Largest point count for exhaustive triangulation search.
    #[arg(long, global = true, default_value_t = 16)]
    max_points: usize,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_triangulations: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Genus and lattice point counts.
    Genus { polygon: String },
    /// Interior hull, hyperellipticity, maximality and Koelman class.
    Classify { polygon: String },
    /// Moduli dimension of a polygon.
    Dim {
        polygon: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
        method: MethodArg,
    },
    /// Count or list unimodular triangulations.
    Triangulations {
        polygon: String,
        #[arg(long, conflicts_with = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        regular_only: bool,
    },
    /// Formula and oracle dimensions of a triangulation read from a JSON file.
    DimTriangulation { file: PathBuf },
    /// Chain length constraints of a hyperelliptic triangulation.
    Constraints {
        polygon: String,
        /// Triangulation JSON; defaults to the optimal witness.
        #[arg(long, value_name = "FILE")]
        triangulation: Option<PathBuf>,
    },
    /// Achieved non-hyperelliptic dimensions in genus G.
    VerifyRange { genus: i64 },
    /// Closed-form dimensions of every Koelman form of genus G.
    HyperellipticTable { genus: i64 },
    /// JSON-lines witnesses for each achieved dimension.
    Atlas {
        /// Genera to cover.
        #[arg(default_values_t = [2, 3, 4, 5])]
        genus: Vec<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Formula,
    Oracle,
    Auto,
}

enum Failure {
    Input(String),
    Cap(String),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => Failure::Cap(e.to_string()),
            Error::Disagreement(_) => Failure::Disagreement(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_arg(s: &str) -> Result<String, Failure> {
    let p = Path::new(s);
    if p.is_file() {
        std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
    } else {
        Ok(s.to_string())
    }
}

fn polygon(s: &str) -> Result<LatticePolygon, Failure> {
    Ok(parse_polygon(&read_arg(s)?)?)
}

fn triangulation(path: &Path) -> Result<Triangulation, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(parse_triangulation(&text)?)
}

fn doc(v: Value) -> String {
    format!("{v}\n")
}

fn dim_options(g: &Global, strategy: Strategy) -> DimOptions {
    DimOptions { strategy, max_points: g.max_points, max_triangulations: g.max_triangulations }
}

fn genus(g: &Global, p: &LatticePolygon) -> Outcome {
    let (genus, boundary, points) = (p.genus(), p.boundary_point_count(), p.lattice_points().len());
    if g.json {
        return Ok(doc(json!({"polygon": PolygonJson::from(p), "genus": genus, "boundary_points": boundary, "lattice_points": points})));
    }
    Ok(format!("genus: {genus}\nboundary points: {boundary}\nlattice points: {points}\n"))
}

fn classify(g: &Global, p: &LatticePolygon) -> Outcome {
    let interior = match p.interior_hull() {
        InteriorHull::Empty => "empty".to_string(),
        InteriorHull::Point(q) => format!("point ({},{})", q.x, q.y),
        InteriorHull::Segment(a, b) => format!("segment ({},{})-({},{})", a.x, a.y, b.x, b.y),
        InteriorHull::Polygon(q) => q.to_string(),
    };
    let hyperelliptic = p.genus() >= 2 && p.is_hyperelliptic()?;
    let class = if hyperelliptic { Some(koelman_classify(p)?.0) } else { None };
    // Maximality is only defined away from the hyperelliptic case.
    let maximal = p.is_maximal().ok();
    let nf = p.normal_form();
    if g.json {
        return Ok(doc(json!({
            "polygon": PolygonJson::from(p),
            "genus": p.genus(),
            "interior_hull": interior,
            "hyperelliptic": hyperelliptic,
            "maximal": maximal,
            "class": class.map(|f| f.to_string()),
            "normal_form": PolygonJson::from(&nf),
        })));
    }
    let maximal = maximal.map_or("n/a".to_string(), |m| m.to_string());
    let mut s = format!("genus: {}\ninterior hull: {interior}\nhyperelliptic: {hyperelliptic}\nmaximal: {maximal}\n", p.genus());
    if let Some(f) = class {
        writeln!(s, "class: {f}").unwrap();
    }
    writeln!(s, "normal form: {nf}").unwrap();
    Ok(s)
}

fn dim(g: &Global, p: &LatticePolygon, method: MethodArg) -> Outcome {
    let strategy = match method {
        MethodArg::Formula => Strategy::Formula,
        MethodArg::Oracle => Strategy::Oracle,
        MethodArg::Auto => Strategy::Auto,
    };
    let r = dim_polygon_with(p, &dim_options(g, strategy))?;
    if g.json {
        return Ok(doc(serde_json::to_value(ModuliReportJson::from(&r)).unwrap()));
    }
    let mut s = format!("dimension: {}\ngenus: {}\nmethod: {}\nexhaustive: {}\n", r.dimension, r.genus, r.method, r.exhaustive);
    if let Some(o) = r.oracle {
        writeln!(s, "oracle: {o}").unwrap();
    }
    for n in &r.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    Ok(s)
}

fn triangles_line(t: &Triangulation) -> String {
    t.triangles().iter().map(|[a, b, c]| format!("{a},{b},{c}")).collect::<Vec<_>>().join(" ")
}

fn triangulations(g: &Global, p: &LatticePolygon, list: bool, regular_only: bool) -> Outcome {
    let opts = EnumerationOptions { max_points: g.max_points, max_triangulations: g.max_triangulations };
    if !list && !regular_only {
        let n = count_unimodular_triangulations(p, &opts)?;
        return Ok(if g.json { doc(json!({"count": n})) } else { format!("count: {n}\n") });
    }
    let mut found = Vec::new();
    for_each_unimodular_triangulation(p, &opts, |t| {
        if !regular_only || t.is_regular() {
            found.push(t.clone());
        }
        true
    })?;
    if !list {
        return Ok(if g.json { doc(json!({"count": found.len()})) } else { format!("count: {}\n", found.len()) });
    }
    let mut s = String::new();
    if g.json {
        for t in &found {
            writeln!(s, "{}", serde_json::to_string(&TriangulationJson::from(t)).unwrap()).unwrap();
        }
        return Ok(s);
    }
    let points: Vec<String> = p.lattice_points().iter().map(|q| format!("{},{}", q.x, q.y)).collect();
    writeln!(s, "points: {}", points.join(" ")).unwrap();
    for t in &found {
        writeln!(s, "{}", triangles_line(t)).unwrap();
    }
    Ok(s)
}

fn dim_triangulation(g: &Global, t: &Triangulation) -> Outcome {
    let formula = dim_formula_auto(t)?;
    let oracle = if t.is_regular() { Some(moduli_dim_oracle(t)?) } else { None };
    let types = match t.polygon().is_hyperelliptic()? {
        true => None,
        false => Some(classify_types(t)?),
    };
    if let Some(o) = oracle.filter(|o| *o != formula) {
        return Err(Failure::Disagreement(format!(
            "formula {formula}, oracle {o}\ntriangulation: {}",
            serde_json::to_string(&TriangulationJson::from(t)).unwrap()
        )));
    }
    if g.json {
        return Ok(doc(json!({
            "formula": formula,
            "oracle": oracle,
            "regular": oracle.is_some(),
            "types": types.as_ref().map(|c| json!({"b1": c.b1, "b2": c.b2, "b3": c.b3})),
        })));
    }
    let mut s = format!("dimension: {formula}\n");
    match oracle {
        Some(o) => writeln!(s, "oracle: {o}").unwrap(),
        None => writeln!(s, "oracle: not regular").unwrap(),
    }
    if let Some(c) = types {
        writeln!(s, "types: b1={} b2={} b3={}", c.b1, c.b2, c.b3).unwrap();
    }
    Ok(s)
}

fn constraints(g: &Global, p: &LatticePolygon, file: Option<&Path>) -> Outcome {
    let t = match file {
        Some(f) => triangulation(f)?,
        None => dim_polygon_with(p, &dim_options(g, Strategy::Formula))?
            .witness
            .ok_or_else(|| Failure::Input("no regular witness triangulation".into()))?,
    };
    if t.polygon() != *p {
        return Err(Failure::Input("triangulation does not cover the polygon".into()));
    }
    let sys = hyperelliptic_length_constraints(&t)?;
    let rows = sys.render();
    let d = sys.dimension();
    if g.json {
        return Ok(doc(json!({
            "labels": sys.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "left": sys.left.to_string(),
            "right": sys.right.to_string(),
            "constraints": rows,
            "dimension": d,
            "triangulation": TriangulationJson::from(&t),
        })));
    }
    let labels: Vec<String> = sys.labels.iter().map(|l| l.to_string()).collect();
    let mut s = format!("labels: {}\nends: {} {}\n", labels.join(" "), sys.left, sys.right);
    for r in rows {
        writeln!(s, "{r}").unwrap();
    }
    writeln!(s, "dimension: {d}").unwrap();
    Ok(s)
}

fn join(xs: impl IntoIterator<Item = i64>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn range(g: &Global, genus: i64) -> Outcome {
    let r = verify_range(genus, &dim_options(g, Strategy::Formula))?;
    if g.json {
        return Ok(doc(serde_json::to_value(RangeReportJson::from(&r)).unwrap()));
    }
    let mut s = format!("genus: {genus}\nbounds: {}..{}\n", r.bounds.lower, r.bounds.upper);
    writeln!(s, "achieved: {}", join(r.achieved.iter().copied())).unwrap();
    writeln!(s, "missing: {}", join(r.missing.iter().copied())).unwrap();
    writeln!(s, "unachievable: {}", join(r.unachievable.iter().copied())).unwrap();
    for (d, w) in &r.witnesses {
        writeln!(s, "d={d} {} {}", w.family, w.polygon).unwrap();
    }
    for n in &r.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    Ok(s)
}

fn hyperelliptic_table(g: &Global, genus: i64) -> Outcome {
    if genus < 2 {
        return Err(Failure::Input(format!("hyperelliptic classes need genus >= 2, got {genus}")));
    }
    let rows: Vec<(HyperellipticForm, i64, LatticePolygon)> = HyperellipticForm::all(genus)
        .into_iter()
        .map(|f| Ok((f, dim_hyperelliptic_closed_form(&f, genus)?, f.template(genus)?)))
        .collect::<Result<_, Error>>()?;
    let mut s = String::new();
    if g.json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(f, d, p)| {
                json!({"class": f.class.name(), "i": f.i, "j": f.j, "k": f.k, "dimension": d, "polygon": PolygonJson::from(p)})
            })
            .collect();
        return Ok(doc(Value::Array(v)));
    }
    for (f, d, p) in rows {
        writeln!(s, "{f} dim={d} {p}").unwrap();
    }
    Ok(s)
}

fn atlas_lines(g: &Global, genera: &[i64]) -> Outcome {
    let mut s = String::new();
    for &genus in genera {
        for r in atlas(genus, &dim_options(g, Strategy::Formula))? {
            writeln!(s, "{}", serde_json::to_string(&AtlasJson::from(&r)).unwrap()).unwrap();
        }
    }
    Ok(s)
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Genus { polygon: p } => genus(g, &polygon(p)?),
        Command::Classify { polygon: p } => classify(g, &polygon(p)?),
        Command::Dim { polygon: p, method } => dim(g, &polygon(p)?, *method),
        Command::Triangulations { polygon: p, count: _, list, regular_only } => {
            triangulations(g, &polygon(p)?, *list, *regular_only)
        }
        Command::DimTriangulation { file } => dim_triangulation(g, &triangulation(file)?),
        Command::Constraints { polygon: p, triangulation } => constraints(g, &polygon(p)?, triangulation.as_deref()),
        Command::VerifyRange { genus } => range(g, *genus),
        Command::HyperellipticTable { genus } => hyperelliptic_table(g, *genus),
        Command::Atlas { genus } => atlas_lines(g, genus),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("TROPMODULI_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.global.out {
                if let Err(e) = std::fs::write(path, out) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Disagreement(m)) => {
            eprintln!("error: formula and oracle disagree\n{m}");
            ExitCode::from(4)
        }
    }
}
