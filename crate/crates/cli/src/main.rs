//! `canform`: command-line front end for the canform engine.
//!
//! Exit statuses: 0 success, 1 validation error (including unknown flags),
//! 2 precondition error, 3 internal inconsistency or a failed check.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use canform::arrangement::Arrangement;
use canform::checks::{run_suites, CheckInput, Suite};
use canform::exact::rational;
use canform::exact::MultiPoly;
use canform::os::{self, DlogCombination, DlogCombinationJson, OSElement, OSElementJson};
use canform::region::Region;
use canform::strata::{self, StrataInput, StrataJson};
use canform::{Error, ErrorClass};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "canform", version, about = "Exact canonical forms of hyperplane arrangement regions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Nbc,
    Polygon,
    Simple,
}

#[derive(Args)]
struct ArrangementArgs {
    /// Arrangement JSON file, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
    /// Reorder hyperplanes before any computation: a 1-based permutation
    /// such as `3,1,2`. Output indices refer to the new order.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args)]
struct RegionArgs {
    #[command(flatten)]
    arrangement: ArrangementArgs,
    /// Region JSON file, or an inline interior point such as `1/3,1/7`.
    #[arg(long)]
    region: Option<String>,
    /// OS element JSON file, used instead of the canonical form of a region.
    #[arg(long, conflicts_with = "region")]
    form: Option<PathBuf>,
}

#[derive(Args)]
struct PowerArgs {
    /// Dlog combination JSON file, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
    /// The exponent N of the map `w -> w^N`.
    #[arg(long)]
    power: u32,
    /// Name of the target variable.
    #[arg(long)]
    variable: Option<String>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection poset with Möbius values.
    Poset(ArrangementArgs),
    /// The Möbius value between the bottom and top of the intersection poset.
    Moebius(ArrangementArgs),
    /// Combinatorial rank `(-1)^{n-1} μ(0, 1)`.
    Rank(ArrangementArgs),
    /// Circuits of the arrangement matroid.
    Circuits(ArrangementArgs),
    /// No-broken-circuit sets of a given size.
    Nbc {
        #[command(flatten)]
        arrangement: ArrangementArgs,
        /// Set size; defaults to the ambient dimension.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Regions as sign vectors with interior witnesses.
    Regions(ArrangementArgs),
    /// Canonical form of a region.
    Canonical {
        #[command(flatten)]
        arrangement: ArrangementArgs,
        /// Region JSON file, or an inline interior point.
        #[arg(long)]
        region: String,
        #[arg(long, value_enum, default_value = "nbc")]
        method: Method,
        /// Counterclockwise side list for `--method polygon`, 1-based.
        #[arg(long, value_delimiter = ',')]
        sides: Option<Vec<usize>>,
    },
    /// Residue of a canonical form along one hyperplane.
    Residue {
        #[command(flatten)]
        source: RegionArgs,
        /// 1-based hyperplane index.
        #[arg(long)]
        hyperplane: usize,
    },
    /// Iterated residues at every nbc set of full size.
    Corners(RegionArgs),
    /// Homogeneous adjoint numerator of a canonical form.
    Adjoint(RegionArgs),
    /// Canonical form of a product of two regions.
    Product {
        /// The two arrangement JSON files.
        #[arg(long, num_args = 1, required = true)]
        input: Vec<PathBuf>,
        /// The two regions, in the same order as the inputs.
        #[arg(long, num_args = 1, required = true)]
        region: Vec<String>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Pushforward of a dlog combination along `w -> w^N`.
    Push(PowerArgs),
    /// Pullback of a dlog combination along `w -> w^N`.
    Pull(PowerArgs),
    /// Dual complex of user-supplied strata and its reduced homology.
    Complex {
        /// Strata JSON file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Rank of a connected curve from its singular branch data.
    Curve {
        /// Local branch count at each singular point.
        #[arg(long, value_delimiter = ',', default_value = "")]
        branches: Vec<String>,
        /// Number of irreducible components.
        #[arg(long, default_value_t = 1)]
        components: i64,
        /// Size of the marked set S for the relative rank.
        #[arg(long)]
        relative: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Genus of a plane curve or of a smooth hypersurface.
    Genus {
        #[arg(long)]
        degree: u64,
        /// Dimension of the ambient projective space.
        #[arg(long, default_value_t = 2)]
        ambient: u64,
        /// δ-invariants of the singular points of a plane curve.
        #[arg(long, value_delimiter = ',')]
        deltas: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Run invariant suites against an arrangement or strata input.
    Check {
        /// Arrangement or strata JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Region JSON file or inline point for the region-level checks.
        #[arg(long)]
        region: Option<String>,
        /// `all` or a comma-separated list of exact, arrangement, region, os, strata.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
}

/// An error tagged with the file it came from, if any.
struct Failure {
    class: ErrorClass,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            class: e.class(),
            message: e.to_string(),
        }
    }
}

type Run = Result<String, Failure>;

fn at(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| Failure {
        class: e.class(),
        message: format!("{}: {e}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    text.map_err(|e| Failure {
        class: ErrorClass::Validation,
        message: format!("{}: {e}", path.display()),
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, Failure> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| at(path)(Error::parse(what, e.to_string())))
}

fn to_zero_based(list: &[usize], field: &str) -> Result<Vec<usize>, Failure> {
    list.iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Error::parse(field, "indices are 1-based").into())
        })
        .collect()
}

fn load_arrangement(args: &ArrangementArgs) -> Result<Arc<Arrangement>, Failure> {
    load_arrangement_at(&args.input, args.order.as_deref())
}

fn load_arrangement_at(path: &Path, order: Option<&[usize]>) -> Result<Arc<Arrangement>, Failure> {
    let arr = Arrangement::from_json_str(&read(path)?).map_err(at(path))?;
    let arr = match order {
        Some(order) => arr.permuted(&to_zero_based(order, "order")?)?,
        None => arr,
    };
    Ok(Arc::new(arr))
}

/// A region given as a JSON file path or as inline text.
fn load_region(arr: Arc<Arrangement>, arg: &str) -> Result<Region, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        Region::parse(arr, &read(path)?).map_err(at(path))
    } else {
        Ok(Region::parse(arr, arg)?)
    }
}

/// The OS element named by `--form`, or the canonical form of `--region`.
fn load_element(args: &RegionArgs) -> Result<OSElement, Failure> {
    let arr = load_arrangement(&args.arrangement)?;
    match (&args.region, &args.form) {
        (_, Some(path)) => {
            let j: OSElementJson = parse_json(path, "form")?;
            OSElement::from_json(arr, &j).map_err(at(path))
        }
        (Some(r), None) => Ok(os::canonical_form_nbc(&load_region(arr, r)?)?),
        (None, None) => Err(Error::InvalidInput("give --region or --form".into()).into()),
    }
}

fn set_label(s: &[usize]) -> String {
    s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn emit_element(x: &OSElement, format: Format) -> String {
    match format {
        Format::Plain => x.display_plain(),
        Format::Latex => x.to_latex(),
        Format::Json => json_text(&serde_json::to_value(x.to_json()).expect("serializable")),
    }
}

fn emit_integer(key: &str, v: i64, format: Format) -> String {
    match format {
        Format::Json => json_text(&json!({ key: v })),
        _ => v.to_string(),
    }
}

fn emit_sets(key: &str, sets: &[Vec<usize>], format: Format) -> String {
    match format {
        Format::Json => {
            let list: Vec<Vec<usize>> = sets.iter().map(|s| one_based(s)).collect();
            json_text(&json!({ "count": sets.len(), key: list }))
        }
        _ => sets.iter().map(|s| format!("{{{}}}", set_label(s))).collect::<Vec<_>>().join("\n"),
    }
}

fn emit_poly(p: &MultiPoly, names: &[String], format: Format) -> String {
    match format {
        Format::Json => json_text(&json!({
            "variables": names,
            "terms": serde_json::to_value(p.to_json_terms()).expect("serializable"),
        })),
        _ => p.display_with(names),
    }
}

fn emit_dlog(x: &DlogCombination, format: Format) -> String {
    match format {
        Format::Json => json_text(&serde_json::to_value(x.to_json()).expect("serializable")),
        _ => x.to_string(),
    }
}

fn poset(args: &ArrangementArgs) -> Run {
    let arr = load_arrangement(args)?;
    let poset = arr.flat_poset();
    let rows: Vec<(String, usize, i64)> = poset
        .flats()
        .iter()
        .enumerate()
        .map(|(k, f)| (f.label(), f.rank, poset.moebius(k)))
        .collect();
    Ok(match args.format {
        Format::Json => json_text(&json!({
            "flats": poset.flats().iter().zip(&rows).map(|(f, (_, rank, mu))| json!({
                "members": f.closure,
                "rank": rank,
                "moebius": mu,
            })).collect::<Vec<_>>(),
        })),
        _ => rows
            .iter()
            .map(|(label, rank, mu)| format!("rank {rank} {label} mu {mu}"))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn moebius(args: &ArrangementArgs) -> Run {
    let arr = load_arrangement(args)?;
    let poset = arr.flat_poset();
    let top = poset
        .top()
        .ok_or_else(|| Error::Precondition("the arrangement is not essential; the poset has no top".into()))?;
    Ok(emit_integer("moebius", poset.moebius(top), args.format))
}

fn canonical(args: &ArrangementArgs, region: &str, method: Method, sides: Option<&[usize]>) -> Run {
    let arr = load_arrangement(args)?;
    let region = load_region(arr, region)?;
    let w = match method {
        Method::Nbc => os::canonical_form_nbc(&region)?,
        Method::Simple => os::canonical_form_simple_polytope(&region)?,
        Method::Polygon => {
            let sides = sides.ok_or_else(|| Error::InvalidInput("--method polygon needs --sides".into()))?;
            os::canonical_form_polygon(&region, &to_zero_based(sides, "sides")?)?
        }
    };
    Ok(emit_element(&w, args.format))
}

fn regions(args: &ArrangementArgs) -> Run {
    let arr = load_arrangement(args)?;
    let all = arr.regions();
    let bounded = match arr.bounded_regions() {
        Ok(b) => Some(b),
        Err(e) if e.class() == ErrorClass::Precondition => None,
        Err(e) => return Err(e.into()),
    };
    let is_bounded = |s: &[i8]| bounded.as_ref().map(|b| b.iter().any(|r| r.signs == s));
    Ok(match args.format {
        Format::Json => json_text(&json!({
            "count": all.len(),
            "bounded": bounded.as_ref().map(Vec::len),
            "regions": all.iter().map(|r| json!({
                "signs": r.to_string(),
                "point": r.witness.iter().map(rational::to_string).collect::<Vec<_>>(),
                "bounded": is_bounded(&r.signs),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = String::new();
            for r in &all {
                let point: Vec<String> = r.witness.iter().map(rational::to_string).collect();
                let tag = match is_bounded(&r.signs) {
                    Some(true) => " bounded",
                    Some(false) => " unbounded",
                    None => "",
                };
                writeln!(out, "{r} ({}){tag}", point.join(", ")).expect("string write");
            }
            write!(out, "{} regions", all.len()).expect("string write");
            if let Some(b) = &bounded {
                write!(out, ", {} bounded", b.len()).expect("string write");
            }
            out
        }
    })
}

fn residue(args: &RegionArgs, hyperplane: usize) -> Run {
    let x = load_element(args)?;
    let i = hyperplane
        .checked_sub(1)
        .ok_or_else(|| Error::parse("hyperplane", "indices are 1-based"))?;
    let (res, restriction) = os::residue(&x, i)?;
    let format = args.arrangement.format;
    Ok(match format {
        Format::Json => json_text(&json!({
            "arrangement": serde_json::to_value(restriction.arrangement.to_json()).expect("serializable"),
            "index_map": restriction.index_map.iter().map(|m| m.map(|k| k + 1)).collect::<Vec<_>>(),
            "residue": serde_json::to_value(res.to_json()).expect("serializable"),
        })),
        _ => {
            let map: Vec<String> = restriction
                .index_map
                .iter()
                .enumerate()
                .filter_map(|(j, m)| m.map(|k| format!("H{} -> {}", j + 1, k + 1)))
                .collect();
            format!("{}\ntrace: {}", emit_element(&res, format), map.join(", "))
        }
    })
}

fn corners(args: &RegionArgs) -> Run {
    let v = os::corner_residues(&load_element(args)?)?;
    Ok(match args.arrangement.format {
        Format::Json => json_text(&v.to_json()),
        _ => v.display_plain(),
    })
}

fn adjoint(args: &RegionArgs) -> Run {
    let x = load_element(args)?;
    let arr = x.arrangement().clone();
    let a = os::adjoint_polynomial(&x.to_rational_form(), &arr)?;
    let mut names = vec!["x0".to_string()];
    names.extend(arr.variables().iter().cloned());
    Ok(emit_poly(&a, &names, args.arrangement.format))
}

fn product(inputs: &[PathBuf], regions: &[String], format: Format) -> Run {
    if inputs.len() != 2 || regions.len() != 2 {
        return Err(Error::InvalidInput("product needs exactly two --input and two --region values".into()).into());
    }
    let mut forms = Vec::new();
    for (path, region) in inputs.iter().zip(regions) {
        let arr = load_arrangement_at(path, None)?;
        forms.push(os::canonical_form_nbc(&load_region(arr, region)?)?);
    }
    Ok(emit_element(&os::product_form(&forms[0], &forms[1])?, format))
}

fn power(args: &PowerArgs, push: bool) -> Run {
    let j: DlogCombinationJson = parse_json(&args.input, "dlog combination")?;
    let x = DlogCombination::from_json(&j).map_err(at(&args.input))?;
    let target = args.variable.clone().unwrap_or_else(|| if push { "z" } else { "w" }.to_string());
    let y = if push {
        os::pushforward_power(&x, args.power, &target)?
    } else {
        os::pullback_power(&x, args.power, &target)?
    };
    Ok(emit_dlog(&y, args.format))
}

fn load_strata(path: &Path) -> Result<StrataInput, Failure> {
    let j: StrataJson = parse_json(path, "strata")?;
    StrataInput::from_json(&j).map_err(at(path))
}

fn complex(path: &Path, format: Format) -> Run {
    let c = strata::dual_complex(&load_strata(path)?)?;
    let h = strata::reduced_homology_dims(&c);
    Ok(match format {
        Format::Json => json_text(&json!({
            "simplices": c.counts(),
            "reduced_homology": h.reduced,
            "euler_characteristic": h.euler_characteristic,
        })),
        _ => {
            let dims: Vec<String> = h.reduced.iter().enumerate().map(|(k, d)| format!("h~{k} = {d}")).collect();
            format!(
                "simplices by dimension: {:?}\n{}\neuler characteristic: {}",
                c.counts(),
                dims.join("\n"),
                h.euler_characteristic
            )
        }
    })
}

fn curve(branches: &[String], components: i64, relative: Option<usize>, format: Format) -> Run {
    let branches = branches
        .iter()
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::parse("branches", format!("expected a count, got {t:?}")))
        })
        .collect::<Result<Vec<u32>, Error>>()?;
    let cr = strata::curve_rank(&branches, components)?;
    Ok(match relative {
        None => emit_integer("curve_rank", cr, format),
        Some(s) => match strata::curve_rank_relative(cr, s) {
            strata::RelativeRank::Relative(v) => emit_integer("relative_rank", v, format),
            strata::RelativeRank::Absolute(v) => emit_integer("curve_rank", v, format),
        },
    })
}

fn genus(degree: u64, ambient: u64, deltas: Option<&[u64]>, format: Format) -> Run {
    let g = if ambient == 2 {
        strata::genus_plane_curve(degree, deltas.unwrap_or(&[]))?
    } else if deltas.is_some() {
        return Err(Error::InvalidInput("--deltas applies to plane curves only".into()).into());
    } else {
        strata::genus_smooth_hypersurface(ambient, degree)?
    };
    Ok(emit_integer("genus", g as i64, format))
}

/// Sniffs the input kind: strata JSON has `components`, arrangements have
/// `hyperplanes`.
fn check(path: &Path, region: Option<&str>, suite: &str, order: Option<&[usize]>, format: Format) -> Run {
    let suites = Suite::parse_list(suite)?;
    let value: Value = parse_json(path, "input")?;
    let input = if value.get("components").is_some() {
        CheckInput::Strata(load_strata(path)?)
    } else {
        let arr = load_arrangement_at(path, order)?;
        let region = region.map(|r| load_region(arr.clone(), r)).transpose()?;
        CheckInput::Arrangement { arrangement: arr, region }
    };
    let reports = run_suites(&input, &suites);
    let failed: Vec<String> = reports
        .iter()
        .filter_map(|r| r.first_failure().map(|o| format!("{}/{}", r.suite.name(), o.invariant)))
        .collect();
    let text = match format {
        Format::Json => json_text(&json!({
            "passed": failed.is_empty(),
            "suites": reports.iter().map(|r| json!({
                "suite": r.suite.name(),
                "passed": r.passed(),
                "outcomes": r.outcomes.iter().map(|o| json!({
                    "invariant": o.invariant,
                    "passed": o.passed,
                    "detail": o.detail,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        _ => reports.iter().map(|r| r.to_string()).collect::<String>().trim_end().to_string(),
    };
    if failed.is_empty() {
        Ok(text)
    } else {
        Err(Failure {
            class: ErrorClass::Internal,
            message: format!("{text}\ninvariant violated: {}", failed.join(", ")),
        })
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Poset(a) => poset(a),
        Command::Moebius(a) => moebius(a),
        Command::Rank(a) => Ok(emit_integer("rank", load_arrangement(a)?.combinatorial_rank_moebius(), a.format)),
        Command::Circuits(a) => Ok(emit_sets("circuits", &load_arrangement(a)?.circuits(), a.format)),
        Command::Nbc { arrangement, degree } => {
            let arr = load_arrangement(arrangement)?;
            let k = degree.unwrap_or(arr.ambient_dim());
            Ok(emit_sets("sets", &arr.nbc_sets(k), arrangement.format))
        }
        Command::Regions(a) => regions(a),
        Command::Canonical {
            arrangement,
            region,
            method,
            sides,
        } => canonical(arrangement, region, *method, sides.as_deref()),
        Command::Residue { source, hyperplane } => residue(source, *hyperplane),
        Command::Corners(a) => corners(a),
        Command::Adjoint(a) => adjoint(a),
        Command::Product { input, region, format } => product(input, region, *format),
        Command::Push(a) => power(a, true),
        Command::Pull(a) => power(a, false),
        Command::Complex { input, format } => complex(input, *format),
        Command::Curve {
            branches,
            components,
            relative,
            format,
        } => curve(branches, *components, *relative, *format),
        Command::Genus {
            degree,
            ambient,
            deltas,
            format,
        } => genus(*degree, *ambient, deltas.as_deref(), *format),
        Command::Check {
            input,
            region,
            suite,
            order,
            format,
        } => check(input, region.as_deref(), suite, order.as_deref(), *format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(text) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(match f.class {
                ErrorClass::Validation => 1,
                ErrorClass::Precondition => 2,
                ErrorClass::Internal => 3,
            })
        }
    }
}
