//! Command-line front-end for `weyl-transfer`.

mod registry;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weyl_transfer::graded::{
    chain_graph, export_frame, export_graph, factorial_tree, frame_validate, hasse_transfer_rule,
    plancherel_sample, promotion, promotion_deletion, rsk, standard_tableaux, w_graph, write_path_list,
    young_graph, young_transfer, GradedGraph, Syt, VertexLabel, YoungDiagram, YoungLattice,
};
use weyl_transfer::measure_lab::{chi_square, entropy_curve, FrameKind};
use weyl_transfer::perm_limits::{
    delete_one, derivative_perm, matrix_decode, matrix_encode, shrink_iperm, ComparisonMatrix,
};
use weyl_transfer::sampling::{sample_tri_path, sample_unit_prefix};
use weyl_transfer::transfer_tri::{
    delta_relation_check, estimate_first, marked_positions, reconstruct, separate, shift, transfer,
    translate_iperm, Separation,
};
use weyl_transfer::weyl_codec::{
    cell_measure, encode, generalized_encode, iperm_from_path, iperm_of, path_from_iperm, CellLabel,
    ShiftedKernel, StandardKernel,
};
use weyl_transfer::{Error, IPerm, MeasureSpec, Perm, Sample, SeedSpec, TriPath};

pub use registry::{find_suite, suite_registry, SuiteDescriptor, SuiteParams, SuiteRunner};

/// Seed used when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "wtx", version, about = "Sequential-rank codes, transfers and their verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Master seed of every random stream.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Trial index (stream) under the master seed.
    #[arg(long, global = true, default_value_t = 0)]
    trial: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    jobs: Option<u32>,
    /// Write results to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Measure {
    Lebesgue,
    Haar,
    Ewens,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EncodeTarget {
    Path,
    Iperm,
    Cells,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kernel {
    Standard,
    Shifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PermMap {
    All,
    Derivative,
    Shrink,
    DeleteOne,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum YoungOp {
    Rsk,
    Promotion,
    Transfer,
    Plancherel,
    Dimension,
    Tableaux,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Factorial,
    W,
    Chain,
    Young,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveKind {
    Factorial,
    Young,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw a uniform prefix, or a path under a path measure.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "lebesgue")]
        measure: Measure,
        /// Ewens parameter.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Sequential-rank code, i-permutation or cell labels of a point; or
    /// convert between paths and i-permutations.
    Encode {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
        #[arg(long)]
        path: Option<TriPath>,
        #[arg(long)]
        perm: Option<IPerm>,
        #[arg(long, value_enum, default_value = "path")]
        to: EncodeTarget,
        #[arg(long, value_enum, default_value = "standard")]
        kernel: Kernel,
    },
    /// Transfer of a path, shift of a point, or translation of an i-permutation.
    Transfer {
        #[arg(long)]
        path: Option<TriPath>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
        #[arg(long)]
        perm: Option<IPerm>,
        /// Print marked positions and running counts instead.
        #[arg(long)]
        marks: bool,
        /// Print the increment relation verdict instead.
        #[arg(long)]
        check: bool,
    },
    /// Estimate the first coordinate and reconstruct the leading coordinates.
    Decode {
        #[arg(long)]
        path: Option<TriPath>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// First level at which two points have different order types.
    Separate {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        other: Vec<f64>,
    },
    /// Comparison matrix of a point, or the i-permutation of a matrix given
    /// as `/`-separated rows of `+` and `-`.
    Matrix {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Projections of a permutation onto the next smaller symmetric group.
    PermMaps {
        #[arg(long)]
        perm: Perm,
        #[arg(long, value_enum, default_value = "all")]
        map: PermMap,
    },
    /// Tableau operations on the Young graph.
    Young {
        #[arg(long, value_enum)]
        op: Option<YoungOp>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<f64>>,
        /// Rows separated by `/`, entries by `,`.
        #[arg(long)]
        tableau: Option<Syt>,
        /// Parts of a diagram, comma separated.
        #[arg(long, value_delimiter = ',')]
        shape: Option<Vec<usize>>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// DOT text, path list, frame validation or rule census of a graded graph.
    ExportGraph {
        #[arg(long, value_enum)]
        graph: GraphKind,
        #[arg(long)]
        n: usize,
        /// Path list of the top level instead of DOT.
        #[arg(long)]
        paths: bool,
        #[arg(long)]
        validate: bool,
        /// Census of 2-intervals by number of intermediate vertices.
        #[arg(long)]
        census: bool,
    },
    /// Run a verification suite, list suites, or print utility statistics.
    Suite {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        level_cap: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Print the entropy curve of a frame up to `--nmax`.
        #[arg(long, value_enum)]
        curve: Option<CurveKind>,
        /// Chi-square statistic of counts against `--expected`.
        #[arg(long, value_delimiter = ',')]
        observed: Option<Vec<u64>>,
        #[arg(long, value_delimiter = ',')]
        expected: Option<Vec<f64>>,
    },
}

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

/// Real in decimal with 17 significant digits.
pub fn fmt_real(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-20..=16).contains(&exp) {
        return format!("{v:.16e}");
    }
    let decimals = (16 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

fn ints(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn reals(v: &[f64]) -> String {
    v.iter().map(|&x| fmt_real(x)).collect::<Vec<_>>().join(",")
}

fn real_json(v: f64) -> Value {
    // `Value::from(f64)` prints the shortest round-trip form; keep 17 digits.
    serde_json::from_str(&fmt_real(v)).unwrap_or(Value::Null)
}

fn reals_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| real_json(x)).collect())
}

fn sample_of(values: Vec<f64>) -> Result<Sample, Failure> {
    Ok(Sample::new(values)?)
}

fn usage(msg: &str) -> Failure {
    Failure::Usage(msg.to_string())
}

/// `key: value` lines, or one JSON object.
fn records(format: Option<Format>, fields: Vec<(&str, String, Value)>) -> String {
    match format {
        Some(Format::Json) => {
            let map: serde_json::Map<String, Value> = fields.into_iter().map(|(k, _, v)| (k.to_string(), v)).collect();
            format!("{}\n", Value::Object(map))
        }
        Some(Format::Csv) => {
            let mut out = String::from("key,value\n");
            for (k, text, _) in fields {
                out.push_str(&format!("{k},\"{text}\"\n"));
            }
            out
        }
        None => fields.into_iter().map(|(k, text, _)| format!("{k}: {text}\n")).collect(),
    }
}

/// A single list, printed bare unless JSON is requested.
fn single(format: Option<Format>, key: &str, text: String, value: Value) -> String {
    match format {
        Some(Format::Json) => format!("{}\n", json!({ key: value })),
        _ => format!("{text}\n"),
    }
}

/// Parses argv (without the program name) and runs one command.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("wtx")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let outcome = match cli.global.jobs {
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j as usize).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start {j} workers: {e}"))),
        },
        None => dispatch(&cli),
    };
    let (text, ok) = match outcome {
        Ok(v) => v,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
        Err(Failure::Library(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    if ok {
        0
    } else {
        1
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let seed = SeedSpec::new(g.seed, g.trial);
    let f = g.format;
    let text = match &cli.command {
        Command::Sample { n, measure, t } => cmd_sample(*n, *measure, *t, seed, f)?,
        Command::Encode { values, path, perm, to, kernel } => cmd_encode(values, path, perm, *to, *kernel, f)?,
        Command::Transfer { path, values, perm, marks, check } => {
            cmd_transfer(path, values, perm, *marks, *check, f)?
        }
        Command::Decode { path, values, k_max } => cmd_decode(path, values, *k_max, f)?,
        Command::Separate { values, other } => cmd_separate(values, other, f)?,
        Command::Matrix { values, matrix } => cmd_matrix(values, matrix, f)?,
        Command::PermMaps { perm, map } => cmd_perm_maps(perm, *map, f)?,
        Command::Young { op, values, tableau, shape, n } => cmd_young(*op, values, tableau, shape, *n, seed, f)?,
        Command::ExportGraph { graph, n, paths, validate, census } => {
            cmd_export(*graph, *n, *paths, *validate, *census, f)?
        }
        Command::Suite {
            name,
            list,
            nmax,
            n,
            trials,
            samples,
            level_cap,
            k_max,
            tol,
            curve,
            observed,
            expected,
        } => {
            let params = SuiteParams {
                nmax: *nmax,
                n: *n,
                trials: *trials,
                samples: *samples,
                level_cap: *level_cap,
                k_max: *k_max,
                tol: *tol,
            };
            return cmd_suite(name.as_deref(), *list, params, *curve, observed, expected, seed, f);
        }
    };
    Ok((text, true))
}

fn cmd_sample(n: usize, measure: Measure, t: f64, seed: SeedSpec, f: Option<Format>) -> Result<String, Failure> {
    Ok(match measure {
        Measure::Lebesgue => {
            let x: Sample = sample_unit_prefix(n, seed)?;
            single(f, "values", reals(x.values()), reals_json(x.values()))
        }
        Measure::Haar | Measure::Ewens => {
            let spec = if measure == Measure::Haar { MeasureSpec::Haar } else { MeasureSpec::EwensLike(t) };
            let p = sample_tri_path(n, spec, seed)?;
            single(f, "path", p.to_string(), json!(p.ranks()))
        }
    })
}

fn cell_line(c: &CellLabel) -> (String, Value) {
    let m = cell_measure(c).to_string();
    (format!("{} {} {}", c.level(), c.iperm(), m), json!({ "level": c.level(), "iperm": c.iperm().ranks(), "measure": m }))
}

fn cmd_encode(
    values: &Option<Vec<f64>>,
    path: &Option<TriPath>,
    perm: &Option<IPerm>,
    to: EncodeTarget,
    kernel: Kernel,
    f: Option<Format>,
) -> Result<String, Failure> {
    match (values, path, perm) {
        (Some(v), None, None) => {
            let x = sample_of(v.clone())?;
            Ok(match to {
                EncodeTarget::Path => {
                    let t = encode(&x);
                    single(f, "path", t.to_string(), json!(t.ranks()))
                }
                EncodeTarget::Iperm => {
                    let k = iperm_of(&x);
                    single(f, "iperm", k.to_string(), json!(k.ranks()))
                }
                EncodeTarget::Cells => {
                    let cells = match kernel {
                        Kernel::Standard => generalized_encode(x.values(), &StandardKernel)?,
                        Kernel::Shifted => generalized_encode(x.values(), &ShiftedKernel)?,
                    };
                    let lines: Vec<(String, Value)> = cells.iter().map(cell_line).collect();
                    match f {
                        Some(Format::Json) => lines.iter().map(|(_, v)| format!("{v}\n")).collect(),
                        _ => lines.iter().map(|(s, _)| format!("{s}\n")).collect(),
                    }
                }
            })
        }
        (None, Some(t), None) => {
            let k = iperm_from_path(t);
            Ok(single(f, "iperm", k.to_string(), json!(k.ranks())))
        }
        (None, None, Some(k)) => {
            let t = path_from_iperm(k);
            Ok(single(f, "path", t.to_string(), json!(t.ranks())))
        }
        _ => Err(usage("encode needs exactly one of --values, --path, --perm")),
    }
}

fn cmd_transfer(
    path: &Option<TriPath>,
    values: &Option<Vec<f64>>,
    perm: &Option<IPerm>,
    marks: bool,
    check: bool,
    f: Option<Format>,
) -> Result<String, Failure> {
    match (path, values, perm) {
        (Some(t), None, None) => {
            if marks {
                let m = marked_positions(t);
                let flags: Vec<String> = m.marks.iter().map(|&b| if b { "T" } else { "F" }.to_string()).collect();
                return Ok(records(
                    f,
                    vec![
                        ("marks", flags.join(","), json!(m.marks)),
                        ("counts", ints(&m.counts), json!(m.counts)),
                    ],
                ));
            }
            if check {
                let ok = delta_relation_check(t);
                return Ok(single(f, "holds", ok.to_string(), json!(ok)));
            }
            let image = transfer(t)?;
            Ok(single(f, "path", image.to_string(), json!(image.ranks())))
        }
        (None, Some(v), None) => {
            let y = shift(&sample_of(v.clone())?)?;
            Ok(single(f, "values", reals(y.values()), reals_json(y.values())))
        }
        (None, None, Some(k)) => {
            let image = translate_iperm(k)?;
            Ok(single(f, "iperm", image.to_string(), json!(image.ranks())))
        }
        _ => Err(usage("transfer needs exactly one of --path, --values, --perm")),
    }
}

fn cmd_decode(
    path: &Option<TriPath>,
    values: &Option<Vec<f64>>,
    k_max: Option<usize>,
    f: Option<Format>,
) -> Result<String, Failure> {
    let t = match (path, values) {
        (Some(t), None) => t.clone(),
        (None, Some(v)) => encode(&sample_of(v.clone())?),
        _ => return Err(usage("decode needs exactly one of --path, --values")),
    };
    let k = k_max.unwrap_or_else(|| t.len().min(100));
    let first: f64 = estimate_first(&t);
    let recon: Vec<f64> = reconstruct(&t, k)?;
    Ok(records(
        f,
        vec![
            ("estimate_first", fmt_real(first), real_json(first)),
            ("reconstruct", reals(&recon), reals_json(&recon)),
        ],
    ))
}

fn cmd_separate(values: &[f64], other: &[f64], f: Option<Format>) -> Result<String, Failure> {
    let x = sample_of(values.to_vec())?;
    let y = sample_of(other.to_vec())?;
    Ok(match separate(&x, &y)? {
        Separation::Witness { level, i, j } => records(
            f,
            vec![
                ("level", level.to_string(), json!(level)),
                ("pair", format!("{i},{j}"), json!([i, j])),
            ],
        ),
        Separation::NotSeparated => single(f, "separated", "not separated".into(), json!(false)),
    })
}

fn cmd_matrix(values: &Option<Vec<f64>>, matrix: &Option<String>, f: Option<Format>) -> Result<String, Failure> {
    match (values, matrix) {
        (Some(v), None) => {
            let m = matrix_encode(&sample_of(v.clone())?);
            Ok(match f {
                Some(Format::Json) => format!("{}\n", json!({ "n": m.dim(), "lower": m.lower() })),
                _ => m.to_string(),
            })
        }
        (None, Some(text)) => {
            let body: String = text.split('/').map(|row| format!("{row}\n")).collect();
            let m: ComparisonMatrix = body.parse()?;
            let k = matrix_decode(&m)?;
            Ok(single(f, "iperm", k.to_string(), json!(k.ranks())))
        }
        _ => Err(usage("matrix needs exactly one of --values, --matrix")),
    }
}

fn cmd_perm_maps(g: &Perm, map: PermMap, f: Option<Format>) -> Result<String, Failure> {
    let mut fields: Vec<(&str, String, Value)> = Vec::new();
    let want = |m: PermMap| map == PermMap::All || map == m;
    if want(PermMap::Derivative) {
        let d = derivative_perm(g)?;
        fields.push(("derivative", d.to_string(), json!(d.images())));
    }
    if want(PermMap::Shrink) {
        let s = shrink_iperm(&IPerm::new(g.images().to_vec())?)?;
        fields.push(("shrink", s.to_string(), json!(s.ranks())));
    }
    if want(PermMap::DeleteOne) {
        let d = delete_one(g)?;
        fields.push(("delete_one", d.to_string(), json!(d.images())));
    }
    if want(PermMap::Inverse) {
        let i = g.inverse();
        fields.push(("inverse", i.to_string(), json!(i.images())));
    }
    if fields.len() == 1 {
        let (k, text, v) = fields.pop().expect("one field");
        return Ok(single(f, k, text, v));
    }
    Ok(records(f, fields))
}

fn syt_json(t: &Syt) -> Value {
    json!(t.rows())
}

fn cmd_young(
    op: Option<YoungOp>,
    values: &Option<Vec<f64>>,
    tableau: &Option<Syt>,
    shape: &Option<Vec<usize>>,
    n: Option<usize>,
    seed: SeedSpec,
    f: Option<Format>,
) -> Result<String, Failure> {
    let op = match op {
        Some(op) => op,
        None if values.is_some() => YoungOp::Rsk,
        None if tableau.is_some() => YoungOp::Transfer,
        None if shape.is_some() => YoungOp::Dimension,
        None if n.is_some() => YoungOp::Plancherel,
        None => return Err(usage("young needs --op or one of --values, --tableau, --shape, --n")),
    };
    let need_tableau = || tableau.clone().ok_or_else(|| usage("this operation needs --tableau"));
    let need_shape = || -> Result<YoungDiagram, Failure> {
        Ok(YoungDiagram::new(shape.clone().ok_or_else(|| usage("this operation needs --shape"))?)?)
    };
    Ok(match op {
        YoungOp::Rsk => {
            let x = sample_of(values.clone().ok_or_else(|| usage("rsk needs --values"))?)?;
            let (p, q) = rsk(&x);
            let p_text: Vec<String> = p.iter().map(|r| reals(r)).collect();
            let p_json: Vec<Value> = p.iter().map(|r| reals_json(r)).collect();
            records(f, vec![("P", p_text.join("/"), Value::Array(p_json)), ("Q", q.to_string(), syt_json(&q))])
        }
        YoungOp::Promotion => {
            let t = promotion(&need_tableau()?);
            single(f, "tableau", t.to_string(), syt_json(&t))
        }
        YoungOp::Transfer => {
            let t = need_tableau()?;
            let lattice = YoungLattice::new(t.size().max(2))?;
            let image = young_transfer(&lattice, &t.to_path(&lattice.graph)?)?;
            let image = Syt::from_path(&lattice.graph, &image)?;
            // cross-check against promotion; the two must agree
            debug_assert_eq!(promotion_deletion(&t).ok(), Some(image.clone()));
            single(f, "tableau", image.to_string(), syt_json(&image))
        }
        YoungOp::Plancherel => {
            let t = plancherel_sample(n.ok_or_else(|| usage("plancherel needs --n"))?, seed)?;
            single(f, "tableau", t.to_string(), syt_json(&t))
        }
        YoungOp::Dimension => {
            let d = need_shape()?.dimension();
            single(f, "dimension", d.to_string(), json!(d.to_string()))
        }
        YoungOp::Tableaux => {
            let all = standard_tableaux(&need_shape()?);
            match f {
                Some(Format::Json) => format!("{}\n", Value::Array(all.iter().map(syt_json).collect())),
                _ => all.iter().map(|t| format!("{t}\n")).collect(),
            }
        }
    })
}

fn graph_output<L: VertexLabel>(g: &GradedGraph<L>, paths: bool, census: bool, f: Option<Format>) -> Result<String, Failure> {
    if census {
        let (one, two) = hasse_transfer_rule(g)?.census();
        return Ok(records(
            f,
            vec![("one_intermediate", one.to_string(), json!(one)), ("two_intermediates", two.to_string(), json!(two))],
        ));
    }
    if paths {
        return Ok(write_path_list(g, &g.paths(g.num_levels())));
    }
    Ok(export_graph(g))
}

fn cmd_export(kind: GraphKind, n: usize, paths: bool, validate: bool, census: bool, f: Option<Format>) -> Result<String, Failure> {
    if validate && kind != GraphKind::Factorial {
        return Err(usage("--validate applies to --graph factorial"));
    }
    match kind {
        GraphKind::Factorial => {
            let frame = factorial_tree(n)?;
            if validate {
                let report = frame_validate(&frame);
                return Ok(match f {
                    Some(Format::Json) => format!("{}\n", json!(report)),
                    _ if report.is_valid() => "valid\n".to_string(),
                    _ => report.violations.iter().map(|v| format!("{v}\n")).collect(),
                });
            }
            if paths || census {
                return graph_output(frame.graph(), paths, census, f);
            }
            Ok(export_frame(&frame))
        }
        GraphKind::W => graph_output(&w_graph(n)?, paths, census, f),
        GraphKind::Chain => graph_output(&chain_graph(n)?, paths, census, f),
        GraphKind::Young => graph_output(&young_graph(n)?, paths, census, f),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_suite(
    name: Option<&str>,
    list: bool,
    params: SuiteParams,
    curve: Option<CurveKind>,
    observed: &Option<Vec<u64>>,
    expected: &Option<Vec<f64>>,
    seed: SeedSpec,
    f: Option<Format>,
) -> Outcome {
    if list {
        let text = suite_registry()
            .iter()
            .map(|d| match f {
                Some(Format::Json) => format!(
                    "{}\n",
                    json!({ "name": d.name, "summary": d.summary, "defaults": d.defaults_text() })
                ),
                _ => format!("{}\t{}\t{}\n", d.name, d.defaults_text(), d.summary),
            })
            .collect();
        return Ok((text, true));
    }
    if let Some(kind) = curve {
        let kind = match kind {
            CurveKind::Factorial => FrameKind::Factorial,
            CurveKind::Young => FrameKind::Young,
        };
        let c = entropy_curve(kind, params.nmax.unwrap_or(20))?;
        let text = match f {
            Some(Format::Json) => c
                .points
                .iter()
                .map(|p| format!("{}\n", json!({ "n": p.n, "q_n": p.q_n.to_string(), "ln_qn_over_n": real_json(p.ln_qn_over_n) })))
                .collect(),
            _ => {
                let mut out = String::from("n,q_n,ln_qn_over_n\n");
                for p in &c.points {
                    out.push_str(&format!("{},{},{}\n", p.n, p.q_n, fmt_real(p.ln_qn_over_n)));
                }
                out
            }
        };
        return Ok((text, true));
    }
    if let (Some(o), Some(e)) = (observed, expected) {
        let s = chi_square(o, e)?;
        return Ok((single(f, "chi_square", fmt_real(s), real_json(s)), true));
    }
    if observed.is_some() || expected.is_some() {
        return Err(usage("--observed and --expected go together"));
    }
    let name = name.ok_or_else(|| usage("suite needs --name, --list, --curve or --observed/--expected"))?;
    let descriptor = find_suite(name).ok_or_else(|| Failure::Usage(format!("unknown suite {name:?}; see --list")))?;
    let report = descriptor.run_with(params, seed)?;
    let text = match f {
        Some(Format::Csv) => report.to_csv(),
        _ => format!("{}{}\n", report.to_jsonl(), report.summary_json()),
    };
    Ok((text, report.passed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn reals_have_seventeen_digits() {
        assert_eq!(fmt_real(0.5), "0.50000000000000000");
        assert_eq!(fmt_real(0.1), "0.10000000000000001");
        assert_eq!(fmt_real(1.5104), "1.5104000000000000");
        for v in [0.1, 1.0 / 3.0, 2.5e-7, 123.456] {
            assert_eq!(fmt_real(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = call(&["encode", "--values", "0.5,abc"]);
        assert_eq!(code, 2);
        assert!(err.contains("--values"), "{err}");
        assert_eq!(call(&["nonsense"]).0, 2);
        assert_eq!(call(&["encode"]).0, 2);
        assert_eq!(call(&["suite", "--name", "no-such-suite"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
