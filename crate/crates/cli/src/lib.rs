//! `chern-lattice`: surfaces, curve enumeration, classification lists,
//! bundle checks and oracle verification from the command line.
//!
//! Exit codes: 0 success, 1 a verification found a discrepancy, 2 bad input
//! (unparsable selector or bundle, unsupported range or constraint).

pub mod parse;
pub mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use chern_lattice_core::bundle::{chern, numeric_ample_necessary, rank2_chi, Bundle};
use chern_lattice_core::classify::{classify, Constraint, ListId};
use chern_lattice_core::curves::{enumerate_minus_one_curves, enumerate_zero_curves, CurveClass};
use chern_lattice_core::oracle::{
    cross_check, find_bogomolov_pair, CrossCheckReport, Exclusion, SearchBounds,
};
use chern_lattice_core::surface::{canonical_class, gram_matrix, Surface};

use render::{bundle_json, entries_table, entry_json, table, DivisorJson, ShapeJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "chern-lattice",
    version,
    about = "Rank-2 ample bundles on rational surfaces"
)]
pub struct Cli {
    /// Output format; defaults to CHERN_LATTICE_FORMAT, then table.
    #[arg(
        long,
        global = true,
        env = "CHERN_LATTICE_FORMAT",
        default_value = "table"
    )]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe the supported surfaces, or one of them in detail.
    Surfaces {
        #[arg(long)]
        surface: Option<String>,
    },
    /// Enumerate (-1)-curves or 0-curves on a del Pezzo surface.
    Curves {
        #[arg(long)]
        surface: String,
        #[arg(long = "type", value_enum, default_value = "minus-one")]
        kind: CurveType,
    },
    /// List the ample rank-2 bundles under one constraint.
    Classify {
        #[arg(long)]
        surface: String,
        #[command(flatten)]
        constraint: ConstraintArgs,
    },
    /// Chern data and numerical ampleness checks for one bundle.
    Check {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        bundle: String,
    },
    /// Cross-check a classification list against the brute-force search.
    Verify {
        /// A list name, or `all` for every list with a bounded search.
        #[arg(long)]
        list: String,
        /// Largest absolute basis coefficient searched.
        #[arg(long)]
        cap: Option<i64>,
        /// Largest deg Z searched.
        #[arg(long = "degz-cap")]
        degz_cap: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveType {
    MinusOne,
    Zero,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ConstraintArgs {
    #[arg(long = "max-c2", allow_negative_numbers = true)]
    max_c2: Option<i64>,
    #[arg(long = "max-c1sq", allow_negative_numbers = true)]
    max_c1sq: Option<i64>,
    #[arg(long = "max-delta", allow_negative_numbers = true)]
    max_delta: Option<i64>,
    /// `P²` only.
    #[arg(long = "max-c1", allow_negative_numbers = true)]
    max_c1: Option<i64>,
    /// `P²` only: bundles with c2 = c1 + k.
    #[arg(long = "c2-offset", allow_negative_numbers = true)]
    c2_offset: Option<i64>,
}

impl ConstraintArgs {
    fn constraint(&self) -> Constraint {
        match *self {
            ConstraintArgs {
                max_c2: Some(n), ..
            } => Constraint::MaxC2(n),
            ConstraintArgs {
                max_c1sq: Some(n), ..
            } => Constraint::MaxC1Sq(n),
            ConstraintArgs {
                max_delta: Some(n), ..
            } => Constraint::MaxDelta(n),
            ConstraintArgs {
                max_c1: Some(n), ..
            } => Constraint::MaxC1(n),
            ConstraintArgs {
                c2_offset: Some(n), ..
            } => Constraint::C2Offset(n),
            _ => unreachable!("clap requires exactly one constraint"),
        }
    }
}

/// Outcome of a command: rendered output plus exit code, or an input error.
type Outcome = Result<(String, i32), String>;

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Table => text(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let f = cli.format;
    match &cli.command {
        Command::Surfaces { surface } => surfaces(f, surface.as_deref()),
        Command::Curves { surface, kind } => curves(f, surface, *kind),
        Command::Classify {
            surface,
            constraint,
        } => {
            let s = parse::parse_surface(surface)?;
            let entries = classify(s, constraint.constraint()).map_err(|e| e.to_string())?;
            let json: Vec<_> = entries.iter().map(entry_json).collect();
            Ok((emit(f, &json, || entries_table(&entries)), EXIT_OK))
        }
        Command::Check { surface, bundle } => check(f, surface, bundle),
        Command::Verify {
            list,
            cap,
            degz_cap,
        } => verify(f, list, *cap, *degz_cap),
    }
}

#[derive(Serialize)]
struct SurfaceJson {
    surface: String,
    rank: usize,
    k_squared: i64,
    basis: Vec<&'static str>,
    gram: Vec<Vec<i64>>,
    canonical: DivisorJson,
    reference_ample: DivisorJson,
    curve_generators: usize,
    lists: Vec<&'static str>,
}

fn describe(s: Surface) -> SurfaceJson {
    SurfaceJson {
        surface: s.to_string(),
        rank: s.rank(),
        k_squared: s.canonical_degree(),
        basis: s.basis_names(),
        gram: gram_matrix(s).rows(),
        canonical: canonical_class(s).into(),
        reference_ample: s.reference_ample().into(),
        curve_generators: s.curve_generators().len(),
        lists: ListId::ALL
            .into_iter()
            .filter(|l| l.surfaces().contains(&s))
            .map(ListId::name)
            .collect(),
    }
}

fn surfaces(f: Format, selector: Option<&str>) -> Outcome {
    let all: Vec<Surface> = match selector {
        Some(sel) => vec![parse::parse_surface(sel)?],
        None => {
            let mut v = vec![Surface::ProjectivePlane];
            v.extend((0..=4).map(Surface::hirzebruch));
            v.extend((1..=7).map(|d| Surface::del_pezzo(d).expect("degree in range")));
            v
        }
    };
    let json: Vec<SurfaceJson> = all.into_iter().map(describe).collect();
    let text = || {
        let rows: Vec<Vec<String>> = json
            .iter()
            .map(|s| {
                vec![
                    s.surface.clone(),
                    s.rank.to_string(),
                    s.k_squared.to_string(),
                    s.basis.join(" "),
                    s.canonical.text.clone(),
                    s.lists.join(" "),
                ]
            })
            .collect();
        let mut out = table(&["surface", "rank", "K^2", "basis", "K", "lists"], &rows);
        if selector.is_none() {
            out.push_str("any hirzebruch:<e> with e >= 0 is accepted\n");
        }
        out
    };
    Ok((emit(f, &json, text), EXIT_OK))
}

#[derive(Serialize)]
struct CurveJson {
    class: DivisorJson,
    signature: String,
    self_intersection: i64,
    anticanonical_degree: i64,
}

fn curves(f: Format, selector: &str, kind: CurveType) -> Outcome {
    let s = parse::parse_surface(selector)?;
    let Surface::DelPezzo(d) = s else {
        return Err(format!("curves needs a del Pezzo surface dp:<d>, got {s}"));
    };
    let found: Vec<CurveClass> = match kind {
        CurveType::MinusOne => enumerate_minus_one_curves(d),
        CurveType::Zero => enumerate_zero_curves(d),
    }
    .map_err(|e| e.to_string())?;
    let json: Vec<CurveJson> = found
        .iter()
        .map(|c| CurveJson {
            class: c.class.into(),
            signature: c.signature.to_string(),
            self_intersection: c.class.square(),
            anticanonical_degree: c.class.anticanonical_degree(),
        })
        .collect();
    let text = || {
        let rows: Vec<Vec<String>> = json
            .iter()
            .enumerate()
            .map(|(i, c)| {
                vec![
                    (i + 1).to_string(),
                    c.class.text.clone(),
                    c.signature.clone(),
                    c.self_intersection.to_string(),
                    c.anticanonical_degree.to_string(),
                ]
            })
            .collect();
        table(&["#", "class", "type", "C^2", "-K.C"], &rows)
    };
    Ok((emit(f, &json, text), EXIT_OK))
}

#[derive(Serialize)]
struct ChecksJson {
    curve_degrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    summands_ample: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient: Option<bool>,
    kleiman: bool,
    ballico: bool,
}

#[derive(Serialize)]
struct PairJson {
    sub: DivisorJson,
    quot: DivisorJson,
    deg_z: i64,
}

#[derive(Serialize)]
struct CheckJson {
    surface: String,
    bundle: ShapeJson,
    c1: DivisorJson,
    c2: i64,
    c1_sq: i64,
    delta: i64,
    chi: i64,
    checks: ChecksJson,
    /// Every necessary numerical condition holds.
    passes: bool,
    /// The conditions decide ampleness for this shape (direct sums).
    exact: bool,
    bogomolov_unstable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    destabilizing: Option<PairJson>,
    /// Entries of the classification lists that contain this bundle.
    listed_as: Vec<String>,
}

fn check(f: Format, selector: &str, text: &str) -> Outcome {
    let s = parse::parse_surface(selector)?;
    let b: Bundle = parse::parse_bundle(text, s).map_err(|e| e.to_string())?;
    let c = chern(&b);
    let report = numeric_ample_necessary(&b);
    let destabilizing =
        find_bogomolov_pair(s, &c, SearchBounds::default()).map(|(l, m, z)| PairJson {
            sub: l.into(),
            quot: m.into(),
            deg_z: z,
        });
    let listed_as = ListId::ALL
        .into_iter()
        .filter(|l| l.surfaces().contains(&s))
        .flat_map(|l| l.entries())
        .filter(|e| e.covers(&b))
        .map(|e| e.case_label)
        .collect();
    let json = CheckJson {
        surface: s.to_string(),
        bundle: bundle_json(&b),
        c1: c.c1().into(),
        c2: c.c2(),
        c1_sq: c.c1_sq(),
        delta: c.delta(),
        chi: rank2_chi(s, &c).map_err(|e| e.to_string())?,
        checks: ChecksJson {
            curve_degrees: report.curve_degrees,
            summands_ample: report.summands_ample,
            quotient: report.quotient,
            kleiman: report.kleiman,
            ballico: report.ballico,
        },
        passes: report.passes(),
        exact: report.is_exact(),
        bogomolov_unstable: c.c1_sq() > 4 * c.c2(),
        destabilizing,
        listed_as,
    };
    let text = || {
        let yes = |b: bool| if b { "pass" } else { "FAIL" }.to_string();
        let opt = |b: Option<bool>| b.map(yes).unwrap_or_else(|| "n/a".into());
        let mut rows = vec![
            vec!["surface".into(), json.surface.clone()],
            vec!["bundle".into(), b.to_string()],
            vec!["c1".into(), json.c1.text.clone()],
            vec!["c2".into(), json.c2.to_string()],
            vec!["c1^2".into(), json.c1_sq.to_string()],
            vec!["delta".into(), json.delta.to_string()],
            vec!["chi".into(), json.chi.to_string()],
            vec!["c1 on curves".into(), yes(json.checks.curve_degrees)],
            vec!["summands ample".into(), opt(json.checks.summands_ample)],
            vec!["quotient".into(), opt(json.checks.quotient)],
            vec!["0 < c2 < c1^2".into(), yes(json.checks.kleiman)],
            vec!["c1^2 <= (c2+1)^2".into(), yes(json.checks.ballico)],
            vec!["necessary conditions".into(), yes(json.passes)],
            vec!["ampleness decided".into(), json.exact.to_string()],
            vec!["c1^2 > 4 c2".into(), json.bogomolov_unstable.to_string()],
        ];
        if let Some(p) = &json.destabilizing {
            rows.push(vec![
                "destabilizing".into(),
                format!(
                    "0 → {} → E → I_Z({}) → 0, deg Z = {}",
                    p.sub.text, p.quot.text, p.deg_z
                ),
            ]);
        }
        let listed = if json.listed_as.is_empty() {
            "-".to_string()
        } else {
            json.listed_as.join(" ")
        };
        rows.push(vec!["listed as".into(), listed]);
        table(&["field", "value"], &rows)
    };
    Ok((emit(f, &json, text), EXIT_OK))
}

#[derive(Serialize)]
struct BoundsJson {
    coefficient_cap: i64,
    deg_z_cap: i64,
}

#[derive(Serialize)]
struct VerifyJson {
    list: &'static str,
    bounds: BoundsJson,
    candidates: usize,
    agreed: Vec<String>,
    classifier_only: Vec<String>,
    oracle_only: usize,
    /// Oracle-only candidates counted by the reason they are absent.
    oracle_only_by_reason: BTreeMap<String, usize>,
    unexplained: Vec<String>,
    success: bool,
}

fn reason(e: &Exclusion) -> String {
    match e {
        Exclusion::SplitsNonAmple => "splits-non-ample".into(),
        Exclusion::ListedChernData { .. } => "listed-chern-data".into(),
        Exclusion::ChernDataExcluded { rule } => format!("chern-data-excluded: {rule}"),
        Exclusion::Unexplained => "unexplained".into(),
    }
}

fn verify_json(r: &CrossCheckReport) -> VerifyJson {
    let mut by_reason = BTreeMap::new();
    for (_, why) in &r.oracle_only {
        *by_reason.entry(reason(why)).or_insert(0) += 1;
    }
    VerifyJson {
        list: r.list.name(),
        bounds: BoundsJson {
            coefficient_cap: r.bounds.coefficient_cap,
            deg_z_cap: r.bounds.deg_z_cap,
        },
        candidates: r.candidates,
        agreed: r.agreed.clone(),
        classifier_only: r.classifier_only.clone(),
        oracle_only: r.oracle_only.len(),
        oracle_only_by_reason: by_reason,
        unexplained: r
            .oracle_only
            .iter()
            .filter(|(_, why)| *why == Exclusion::Unexplained)
            .map(|(b, _)| format!("{}: {b}", b.surface()))
            .collect(),
        success: r.success(),
    }
}

fn verify(f: Format, list: &str, cap: Option<i64>, degz_cap: Option<i64>) -> Outcome {
    let mut bounds = SearchBounds::default();
    if let Some(c) = cap {
        if c < 1 {
            return Err(format!("--cap must be at least 1, got {c}"));
        }
        bounds.coefficient_cap = c;
    }
    if let Some(z) = degz_cap {
        if z < 0 {
            return Err(format!("--degz-cap must be non-negative, got {z}"));
        }
        bounds.deg_z_cap = z;
    }
    let lists: Vec<ListId> = if list == "all" {
        ListId::ALL
            .into_iter()
            .filter(|l| *l != ListId::DelPezzoDelta)
            .collect()
    } else {
        let names: Vec<&str> = ListId::ALL.iter().map(|l| l.name()).collect();
        vec![ListId::from_name(list).map_err(|_| {
            format!(
                "unknown list {list:?}; expected one of {} or all",
                names.join(", ")
            )
        })?]
    };
    let mut reports = Vec::new();
    for l in lists {
        let r = cross_check(l, bounds).map_err(|e| e.to_string())?;
        reports.push(verify_json(&r));
    }
    let code = if reports.iter().all(|r| r.success) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let text = || {
        let rows: Vec<Vec<String>> = reports
            .iter()
            .map(|r| {
                let reasons: Vec<String> = r
                    .oracle_only_by_reason
                    .iter()
                    .map(|(k, n)| format!("{n} {k}"))
                    .collect();
                vec![
                    r.list.to_string(),
                    if r.success { "agree" } else { "MISMATCH" }.to_string(),
                    r.candidates.to_string(),
                    r.agreed.len().to_string(),
                    r.classifier_only.len().to_string(),
                    r.oracle_only.to_string(),
                    reasons.join("; "),
                ]
            })
            .collect();
        let mut out = table(
            &[
                "list",
                "result",
                "candidates",
                "agreed",
                "classifier-only",
                "oracle-only",
                "reasons",
            ],
            &rows,
        );
        for r in &reports {
            for label in &r.classifier_only {
                out.push_str(&format!("{}: no candidate realizes {label}\n", r.list));
            }
            for b in &r.unexplained {
                out.push_str(&format!("{}: unexplained candidate {b}\n", r.list));
            }
        }
        out
    };
    Ok((emit(f, &reports, text), code))
}
