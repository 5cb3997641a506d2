//! Command-line front end: scans, annihilator searches, verification,
//! decompositions, periodicity classification, tiling checks and renders.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 inconclusive (search budget exhausted).

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lowcomplexity::annihilate::{
    classify_periodicity, find_annihilator, find_difference_product, verify_annihilator, AnnihilationVerdict,
};
use lowcomplexity::complexity::nivat_scan;
use lowcomplexity::config::descriptor::{load_config, Descriptor};
use lowcomplexity::decompose::decompose_by_factors;
use lowcomplexity::tiling::{is_cotiler, prime_periodicity_check, tiling_identity_check, ClusterTile, CoTilerSet};
use lowcomplexity::{
    builtins, render, Configuration, Error, ExactnessClass, ExponentVector, LaurentPoly, Region, Shape,
};
use serde::Serialize;
use serde_json::json;

use output::{emit, json_report, text_header, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "lowcomplexity", version, about = "Exact analysis of low-complexity configurations")]
struct Cli {
    /// Seed recorded in the manifest of every output.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rectangle complexities compared with m n.
    Scan(ScanArgs),
    /// Search for an annihilating polynomial.
    Annihilate(AnnihilateArgs),
    /// Check that a polynomial annihilates a configuration.
    Verify(VerifyArgs),
    /// Split a configuration along line-polynomial factors.
    Decompose(DecomposeArgs),
    /// Find a product of differences and classify the periodicity.
    Classify(ClassifyArgs),
    /// Check a cluster tile against a lattice co-tiler.
    Tile(TileArgs),
    /// Draw a window as ASCII or PPM.
    Render(RenderArgs),
    /// Write or draw the built-in configurations.
    Examples(ExamplesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Tsv,
    Json,
    Ppm,
    Ascii,
}

#[derive(Args, Debug, Serialize)]
struct ConfigArgs {
    /// JSON configuration descriptor.
    #[arg(long)]
    config: PathBuf,
    /// Box `a..b` (all axes) or `a..b,c..d,...`.
    #[arg(long, default_value = "-8..8", allow_hyphen_values = true)]
    region: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct ScanArgs {
    #[command(flatten)]
    common: ConfigArgs,
    /// Largest m and n.
    #[arg(long, default_value_t = 6)]
    max: usize,
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    /// Products of differences `X^v - 1`.
    Product,
    /// Constant-producing polynomials from the pattern kernel.
    Kernel,
}

#[derive(Args, Debug, Serialize)]
struct AnnihilateArgs {
    #[command(flatten)]
    common: ConfigArgs,
    #[arg(long, value_enum, default_value = "product")]
    method: Method,
    /// Largest Chebyshev norm of a difference vector.
    #[arg(long, default_value_t = 2)]
    budget: i64,
    /// Largest number of factors.
    #[arg(long, default_value_t = 3)]
    max: usize,
    /// Kernel search shape, e.g. `3x3`.
    #[arg(long, default_value = "3x3")]
    shape: String,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[command(flatten)]
    common: ConfigArgs,
    /// Polynomial in x, y, z (or x1, x2, ...).
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args, Debug, Serialize)]
struct DecomposeArgs {
    #[command(flatten)]
    common: ConfigArgs,
    /// Line-polynomial factors; found by a difference-product search when
    /// omitted.
    #[arg(long, allow_hyphen_values = true)]
    poly: Vec<String>,
    #[arg(long, default_value_t = 2)]
    budget: i64,
    #[arg(long, default_value_t = 3)]
    max: usize,
}

#[derive(Args, Debug, Serialize)]
struct ClassifyArgs {
    #[command(flatten)]
    common: ConfigArgs,
    /// Norm bound for difference vectors and periods.
    #[arg(long, default_value_t = 2)]
    budget: i64,
    #[arg(long, default_value_t = 3)]
    max: usize,
}

#[derive(Args, Debug, Serialize)]
struct TileArgs {
    /// Tile cells, e.g. `0,0;1,0;0,1`.
    #[arg(long)]
    tile: String,
    /// Lattice basis rows, e.g. `1,1;0,3`.
    #[arg(long)]
    lattice: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct RenderArgs {
    #[command(flatten)]
    common: ConfigArgs,
    #[arg(long, value_enum, default_value = "ascii")]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct ExamplesArgs {
    /// One built-in; all of them when omitted.
    #[arg(long)]
    name: Option<String>,
    /// Size parameter of the two-lines example.
    #[arg(long)]
    n: Option<i64>,
    /// Draw the example on this window instead of writing descriptors.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Directory for descriptor files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive(_) => Failure::Inconclusive(e.to_string()),
            Error::Inconsistent(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Scan(a) => scan(a, cli.seed),
        Command::Annihilate(a) => annihilate(a, cli.seed),
        Command::Verify(a) => verify(a, cli.seed),
        Command::Decompose(a) => decompose(a, cli.seed),
        Command::Classify(a) => classify(a, cli.seed),
        Command::Tile(a) => tile(a, cli.seed),
        Command::Render(a) => render_cmd(a, cli.seed),
        Command::Examples(a) => examples(a, cli.seed),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(3)
        }
    }
}

struct Loaded {
    c: Configuration,
    region: Region,
    manifest: RunManifest,
}

fn load(command: &str, common: &ConfigArgs, params: &impl Serialize, seed: Option<u64>) -> Result<Loaded, Failure> {
    let c = load_config(&common.config)?;
    let region = Region::parse(&common.region, c.dim())?;
    let mut manifest = RunManifest::new(command, params, seed);
    manifest.inputs.push(common.config.clone());
    manifest.outputs.extend(common.out.clone());
    Ok(Loaded { c, region, manifest })
}

fn only_json(f: Format) -> Outcome {
    if f != Format::Json {
        return Err(Failure::Usage(format!("format {f:?} is not available for this command")));
    }
    Ok(())
}

fn scan(a: &ScanArgs, seed: Option<u64>) -> Outcome {
    let l = load("scan", &a.common, a, seed)?;
    let (mm, nn) = (a.max_m.unwrap_or(a.max), a.max_n.unwrap_or(a.max));
    let rows = nivat_scan(&l.c, mm, nn, &l.region)?;
    let class = l.c.exactness_class();
    let bytes = match a.format {
        Format::Json => json_report(&l.manifest, class, &rows),
        Format::Tsv => {
            let mut s = text_header(&l.manifest, class);
            s.push_str("m\tn\tcount\tmn\tflag\tverdict\tinconclusive\n");
            for r in &rows {
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{:?}\t{:?}\t{}\n",
                    r.m, r.n, r.count, r.mn, r.flag, r.verdict, r.inconclusive
                ));
            }
            s.into_bytes()
        }
        f => return Err(Failure::Usage(format!("scan writes tsv or json, not {f:?}"))),
    };
    emit(a.common.out.as_deref(), &bytes)?;
    Ok(())
}

fn parse_shape(text: &str, dim: usize) -> Result<Shape, Failure> {
    let sizes: Vec<i64> = text
        .split('x')
        .map(|t| t.trim().parse::<i64>().ok().filter(|&k| k > 0))
        .collect::<Option<_>>()
        .ok_or_else(|| Failure::Usage(format!("bad shape `{text}`, expected e.g. 3x3")))?;
    if sizes.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: sizes.len() }.into());
    }
    let r = Region::new(vec![0; dim], sizes.iter().map(|k| k - 1).collect())?;
    Ok(Shape::from_region(&r))
}

fn annihilate(a: &AnnihilateArgs, seed: Option<u64>) -> Outcome {
    let l = load("annihilate", &a.common, a, seed)?;
    let class = l.c.exactness_class();
    let result = match a.method {
        Method::Product => {
            let p = find_difference_product(&l.c, a.budget, a.max, &l.region)?;
            p.map(|p| serde_json::to_value(p).expect("serializes"))
        }
        Method::Kernel => {
            let shape = parse_shape(&a.shape, l.c.dim())?;
            let found = find_annihilator(&l.c, &shape, &l.region)?;
            match found {
                Some(s) => {
                    let verdict = verify_annihilator(&s.f, &l.c, &l.region)?;
                    Some(json!({ "search": s, "verdict": verdict }))
                }
                None => None,
            }
        }
    };
    let found = result.is_some();
    emit(a.common.out.as_deref(), &json_report(&l.manifest, class, &json!({ "certificate": result })))?;
    if !found {
        return Err(Failure::Inconclusive("no annihilator within the search budget".into()));
    }
    Ok(())
}

fn verify(a: &VerifyArgs, seed: Option<u64>) -> Outcome {
    let l = load("verify", &a.common, a, seed)?;
    let f = LaurentPoly::parse(&a.poly, l.c.dim())?;
    let v = verify_annihilator(&f, &l.c, &l.region)?;
    emit(a.common.out.as_deref(), &json_report(&l.manifest, l.c.exactness_class(), &v))?;
    if let AnnihilationVerdict::NonzeroAt { position, value } = v {
        return Err(Failure::Verification(format!("({f}) c = {value} at {position:?}")));
    }
    Ok(())
}

fn decompose(a: &DecomposeArgs, seed: Option<u64>) -> Outcome {
    let l = load("decompose", &a.common, a, seed)?;
    let d = l.c.dim();
    let factors: Vec<LaurentPoly> = if a.poly.is_empty() {
        let p = find_difference_product(&l.c, a.budget, a.max, &l.region)?
            .ok_or_else(|| Failure::Inconclusive("no product of differences within the search budget".into()))?;
        p.vectors.iter().map(LaurentPoly::difference).collect::<Result<_, _>>()?
    } else {
        a.poly.iter().map(|t| LaurentPoly::parse(t, d)).collect::<Result<_, _>>()?
    };
    let dec = decompose_by_factors(&l.c, &factors, &l.region)?;
    let windows = dec.components.iter().map(|c| c.window(&l.region)).collect::<Result<Vec<_>, _>>()?;
    let consistent = dec.is_consistent();
    let report = json!({ "decomposition": dec, "component_windows": windows });
    // Components are built by integration, so the report's class is the
    // weakest among them.
    let class = dec.components.iter().map(Configuration::exactness_class).min().unwrap_or(l.c.exactness_class());
    emit(a.common.out.as_deref(), &json_report(&l.manifest, class, &report))?;
    if !consistent {
        return Err(Failure::Verification("components do not reproduce the configuration".into()));
    }
    Ok(())
}

fn classify(a: &ClassifyArgs, seed: Option<u64>) -> Outcome {
    let l = load("classify", &a.common, a, seed)?;
    let cert = find_difference_product(&l.c, a.budget, a.max, &l.region)?
        .ok_or_else(|| Failure::Inconclusive("no product of differences within the search budget".into()))?;
    let cls = classify_periodicity(&cert, &l.c, a.budget, &l.region)?;
    let report = json!({ "certificate": cert, "classification": cls });
    emit(a.common.out.as_deref(), &json_report(&l.manifest, l.c.exactness_class(), &report))?;
    Ok(())
}

fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>, Failure> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("bad integer list `{row}`")))
        })
        .collect()
}

fn tile(a: &TileArgs, seed: Option<u64>) -> Outcome {
    let mut manifest = RunManifest::new("tile", a, seed);
    manifest.outputs.extend(a.out.clone());
    let cells = parse_rows(&a.tile)?.into_iter().map(ExponentVector).collect();
    let d = ClusterTile::new(cells)?;
    let c = CoTilerSet::lattice(parse_rows(&a.lattice)?)?;
    let verdict = is_cotiler(&d, &c)?;
    let identity = tiling_identity_check(&d, &c)?;
    // The prime check presupposes a tiling.
    let periods = if verdict.is_tiling() {
        match prime_periodicity_check(&d, &c) {
            Ok(p) => Some(p),
            Err(Error::NotPrime(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let ok = verdict.is_tiling() && periods.iter().flatten().all(|p| p.verdict.is_proven());
    let report = json!({ "tiling": verdict, "identity": identity, "prime_periods": periods });
    emit(a.out.as_deref(), &json_report(&manifest, ExactnessClass::FullLatticePeriodic, &report))?;
    if !ok {
        return Err(Failure::Verification(format!("{verdict:?}")));
    }
    Ok(())
}

fn ascii_page(m: &RunManifest, c: &Configuration, region: &Region) -> Result<Vec<u8>, Failure> {
    let win = c.window(region)?;
    let mut s = text_header(m, c.exactness_class());
    s.push_str(&format!("# {}\n", render::LEGEND));
    s.push_str(&render::ascii(&win)?);
    if !s.ends_with('\n') {
        s.push('\n');
    }
    Ok(s.into_bytes())
}

fn sidecar(p: &Path) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn render_cmd(a: &RenderArgs, seed: Option<u64>) -> Outcome {
    let mut l = load("render", &a.common, a, seed)?;
    match a.format {
        Format::Ascii => {
            let page = ascii_page(&l.manifest, &l.c, &l.region)?;
            emit(a.common.out.as_deref(), &page)?;
        }
        Format::Ppm => {
            let out = a.common.out.as_deref().ok_or_else(|| Failure::Usage("ppm output needs --out".into()))?;
            let side = sidecar(out);
            l.manifest.outputs.push(side.clone());
            let (bytes, mapping) = render::ppm(&l.c.window(&l.region)?)?;
            emit(Some(out), &bytes)?;
            emit(Some(&side), &json_report(&l.manifest, l.c.exactness_class(), &mapping))?;
        }
        f => only_json(f)?,
    }
    Ok(())
}

fn examples(a: &ExamplesArgs, seed: Option<u64>) -> Outcome {
    let mut manifest = RunManifest::new("examples", a, seed);
    let names: Vec<&str> = match &a.name {
        Some(n) => vec![n.as_str()],
        None => builtins::NAMES.to_vec(),
    };
    let descriptors: Vec<(String, Descriptor)> = names
        .iter()
        .map(|name| {
            let n = if name.starts_with("two_lines") { Some(a.n.unwrap_or(4)) } else { None };
            let d = Descriptor::Builtin { name: name.to_string(), n };
            d.build().map(|_| (name.to_string(), d))
        })
        .collect::<Result<_, _>>()?;
    if let Some(w) = &a.window {
        let [(_, d)] = descriptors.as_slice() else {
            return Err(Failure::Usage("--window draws a single example; pass --name".into()));
        };
        let c = d.build()?;
        let region = Region::parse(w, c.dim())?;
        emit(a.out.as_deref(), &ascii_page(&manifest, &c, &region)?)?;
        return Ok(());
    }
    match &a.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for (name, _) in &descriptors {
                manifest.outputs.push(dir.join(format!("{name}.json")));
            }
            // Descriptor files stay loadable with --config: the manifest and
            // class ride along as extra keys that the loader ignores.
            for (name, d) in &descriptors {
                let c = d.build()?;
                let mut body = serde_json::to_value(d).expect("descriptor serializes");
                body["manifest"] = serde_json::to_value(&manifest).expect("manifest serializes");
                body["class"] = serde_json::to_value(c.exactness_class()).expect("class serializes");
                let mut text = serde_json::to_string_pretty(&body).expect("serializes");
                text.push('\n');
                emit(Some(&dir.join(format!("{name}.json"))), text.as_bytes())?;
            }
        }
        None => {
            let mut list = Vec::new();
            let mut class = ExactnessClass::FullLatticePeriodic;
            for (name, d) in &descriptors {
                let c = d.build()?;
                class = class.min(c.exactness_class());
                list.push(json!({ "name": name, "class": c.exactness_class(), "descriptor": d }));
            }
            emit(None, &json_report(&manifest, class, &list))?;
        }
    }
    Ok(())
}
