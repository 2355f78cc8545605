//! Command-line pipeline: build, solve, verify, iso, census, cohomology.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 input
//! format error, 4 scale limit. Reports are byte-deterministic for identical
//! inputs. `GRPMAT_THREADS` is accepted for compatibility; the engine is
//! single-threaded, so any cap is honored trivially and output bytes never
//! depend on it.

use std::fs;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grpmat::encoder::{
    build_b, canonical_b, census, parse_b, serialize_b, BMatrix, BuildMode, EncodeError,
};
use grpmat::groups::{brute_iso, catalog, enumeration_names, parse_group, Group, GroupError};
use grpmat::linalg::LinalgError;
use grpmat::solver::{
    cross_check_linear, psi_check, solution_group, structured_solutions, SolverError,
};
use grpmat::sullivan::{b_matrix, cohomology_slice_120, d_z, sigma_independence, SullivanError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_SCALE: i32 = 4;

#[derive(Parser)]
#[command(name = "grpmat", version, about = "Finite groups as 0/1 matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Extended,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the encoding matrix of a group and write it to a file.
    Build {
        /// Catalog name or `@path` to a group file.
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        /// Canonicalize over identity-fixing orderings first.
        #[arg(long)]
        canonical: bool,
        #[arg(long)]
        out: String,
    },
    /// Enumerate the structured solutions of X B = B Y for a matrix file.
    Solve {
        /// Path to a matrix file.
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportArg,
        /// Include the (large) X matrices in the report.
        #[arg(long)]
        emit_x: bool,
    },
    /// End-to-end check: build, solve, reconstruct, compare with the input.
    Verify {
        #[arg(long)]
        group: String,
    },
    /// Isomorphism test by canonical matrices, cross-checked by brute force.
    Iso {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// Count distinct canonical matrices for one group order.
    Census {
        #[arg(long)]
        order: usize,
    },
    /// Degree-120 cohomology slice report for a small group.
    Cohomology {
        #[arg(long)]
        group: String,
    },
}

enum CmdError {
    Verify(String),
    Usage(String),
    Input(String),
    Scale(String),
}

impl CmdError {
    fn code(&self) -> i32 {
        match self {
            CmdError::Verify(_) => EXIT_VERIFY,
            CmdError::Usage(_) => EXIT_USAGE,
            CmdError::Input(_) => EXIT_INPUT,
            CmdError::Scale(_) => EXIT_SCALE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Verify(m) | CmdError::Usage(m) | CmdError::Input(m) | CmdError::Scale(m) => m,
        }
    }
}

impl From<GroupError> for CmdError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::UnknownName(_) => CmdError::Usage(e.to_string()),
            GroupError::UnsupportedOrder(_) => CmdError::Scale(e.to_string()),
            _ => CmdError::Input(e.to_string()),
        }
    }
}

impl From<EncodeError> for CmdError {
    fn from(e: EncodeError) -> Self {
        match e {
            EncodeError::DiagonalTermInStrictMode { .. } => CmdError::Verify(e.to_string()),
            EncodeError::OrderTooLarge(_) => CmdError::Scale(e.to_string()),
            EncodeError::Group(g) => g.into(),
            EncodeError::Malformed(_) | EncodeError::LayoutMismatch(_) => {
                CmdError::Input(e.to_string())
            }
        }
    }
}

impl From<SolverError> for CmdError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Linalg(LinalgError::SizeLimit { .. }) => CmdError::Scale(e.to_string()),
            _ => CmdError::Verify(e.to_string()),
        }
    }
}

impl From<SullivanError> for CmdError {
    fn from(e: SullivanError) -> Self {
        CmdError::Scale(e.to_string())
    }
}

fn resolve_group(arg: &str) -> Result<Group, CmdError> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = fs::read_to_string(path)
            .map_err(|e| CmdError::Input(format!("cannot read {path}: {e}")))?;
        Ok(parse_group(&text)?)
    } else {
        Ok(catalog(arg)?)
    }
}

fn matrix_lines(m: &grpmat::linalg::RatMatrix) -> Vec<String> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| m.get(r, c).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

fn matrix_grid(m: &grpmat::linalg::RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect()
}

#[derive(Serialize)]
struct SolveReport {
    schema: u32,
    n: usize,
    mode: String,
    rows: usize,
    solution_count: usize,
    sigmas: Vec<String>,
    labeling: Vec<usize>,
    labeling_bijective: bool,
    table: Vec<Vec<usize>>,
    y: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Vec<Vec<Vec<String>>>>,
    linear_dimension: usize,
    structured_contained: bool,
}

fn cmd_build(
    out: &mut dyn Write,
    group: &str,
    mode: ModeArg,
    canonical: bool,
    path: &str,
) -> Result<(), CmdError> {
    let g = resolve_group(group)?;
    let (b, ordering) = if canonical {
        let (b, ordering) = canonical_b(&g)?;
        (b, Some(ordering))
    } else {
        let mode = match mode {
            ModeArg::Strict => BuildMode::Strict,
            ModeArg::Extended => BuildMode::Extended,
            ModeArg::Auto => BuildMode::Auto,
        };
        (build_b(&g, mode)?, None)
    };
    fs::write(path, serialize_b(&b))
        .map_err(|e| CmdError::Input(format!("cannot write {path}: {e}")))?;
    let _ = writeln!(
        out,
        "wrote {path}: n={} mode={} rows={}",
        b.n(),
        b.mode(),
        b.rows()
    );
    if let Some(ordering) = ordering {
        let images: Vec<String> = ordering.images().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "ordering: {}", images.join(" "));
    }
    Ok(())
}

fn load_b(path: &str) -> Result<BMatrix, CmdError> {
    let text =
        fs::read_to_string(path).map_err(|e| CmdError::Input(format!("cannot read {path}: {e}")))?;
    Ok(parse_b(&text)?)
}

fn cmd_solve(
    out: &mut dyn Write,
    path: &str,
    report: ReportArg,
    emit_x: bool,
) -> Result<(), CmdError> {
    let b = load_b(path)?;
    let s = solution_group(&b)?;
    let linear = cross_check_linear(&b)?;
    let mut seen = vec![false; b.n() + 1];
    let labeling_bijective = s.order() == b.n()
        && s.labeling.iter().all(|&l| {
            let fresh = !seen[l];
            seen[l] = true;
            fresh
        });
    match report {
        ReportArg::Json => {
            let report = SolveReport {
                schema: 1,
                n: b.n(),
                mode: b.mode().to_string(),
                rows: b.rows(),
                solution_count: s.order(),
                sigmas: s.elements.iter().map(|p| p.sigma.cycle_string()).collect(),
                labeling: s.labeling.clone(),
                labeling_bijective,
                table: s.table.clone(),
                y: s.elements.iter().map(|p| matrix_grid(&p.y)).collect(),
                x: emit_x.then(|| s.elements.iter().map(|p| matrix_grid(&p.x)).collect()),
                linear_dimension: linear.dimension,
                structured_contained: linear.contained,
            };
            let _ = writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"));
        }
        ReportArg::Text => {
            let _ = writeln!(out, "b: n={} mode={} rows={}", b.n(), b.mode(), b.rows());
            let _ = writeln!(out, "solutions: {}", s.order());
            for (i, p) in s.elements.iter().enumerate() {
                let _ = writeln!(out, "sigma {}: {}", i + 1, p.sigma.cycle_string());
            }
            let labels: Vec<String> = s.labeling.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "labeling: {}", labels.join(" "));
            let _ = writeln!(
                out,
                "labeling bijective: {}",
                if labeling_bijective { "yes" } else { "no" }
            );
            let _ = writeln!(out, "table:");
            for row in &s.table {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
            for (i, p) in s.elements.iter().enumerate() {
                let _ = writeln!(out, "y {}:", i + 1);
                for line in matrix_lines(&p.y) {
                    let _ = writeln!(out, "{line}");
                }
            }
            if emit_x {
                for (i, p) in s.elements.iter().enumerate() {
                    let _ = writeln!(out, "x {}:", i + 1);
                    for line in matrix_lines(&p.x) {
                        let _ = writeln!(out, "{line}");
                    }
                }
            }
            let _ = writeln!(out, "linear dimension: {}", linear.dimension);
            let _ = writeln!(
                out,
                "structured contained: {}",
                if linear.contained { "yes" } else { "no" }
            );
        }
    }
    Ok(())
}

fn cmd_verify(out: &mut dyn Write, group: &str) -> Result<(), CmdError> {
    let g = resolve_group(group)?;
    let b = build_b(&g, BuildMode::Auto)?;
    let _ = writeln!(out, "group: {group}");
    let _ = writeln!(out, "order: {}", g.n());
    let _ = writeln!(out, "b: n={} mode={} rows={}", b.n(), b.mode(), b.rows());
    for j in 1..=g.n() {
        let _ = writeln!(out, "d z{j}: {}", d_z(j, &g).to_text());
    }
    let sols = structured_solutions(&b);
    if sols.len() != g.n() {
        let _ = writeln!(out, "solutions: {}, isomorphic: no", sols.len());
        let _ = writeln!(out, "result: FAIL (expected {} solutions)", g.n());
        return Err(CmdError::Verify(format!(
            "{} structured solutions, expected {}",
            sols.len(),
            g.n()
        )));
    }
    let s = solution_group(&b)?;
    let iso = brute_iso(s.as_group(), &g).is_some();
    let _ = writeln!(out, "solutions: {}, isomorphic: {}", s.order(), if iso { "yes" } else { "no" });
    let psi = psi_check(&s, &g)?;
    let _ = writeln!(out, "psi: {}", psi.verdict());
    if iso && psi.bijective {
        let _ = writeln!(out, "result: PASS");
        Ok(())
    } else {
        let _ = writeln!(out, "result: FAIL");
        Err(CmdError::Verify("solution group does not match the input".into()))
    }
}

fn cmd_iso(out: &mut dyn Write, g1: &str, g2: &str) -> Result<(), CmdError> {
    let a = resolve_group(g1)?;
    let b = resolve_group(g2)?;
    let (canon_a, _) = canonical_b(&a)?;
    let (canon_b, _) = canonical_b(&b)?;
    let canon_eq = canon_a == canon_b;
    let iso = brute_iso(&a, &b).is_some();
    let _ = writeln!(out, "g1: {g1}");
    let _ = writeln!(out, "g2: {g2}");
    let _ = writeln!(out, "canonical: {}", if canon_eq { "equal" } else { "differ" });
    let _ = writeln!(
        out,
        "brute force: {}",
        if iso { "isomorphic" } else { "not isomorphic" }
    );
    let _ = writeln!(out, "agreement: {}", if canon_eq == iso { "yes" } else { "no" });
    let _ = writeln!(
        out,
        "isomorphic: {}; canonical matrices {}",
        if canon_eq { "yes" } else { "no" },
        if canon_eq { "equal" } else { "differ" }
    );
    if canon_eq == iso {
        Ok(())
    } else {
        Err(CmdError::Verify(
            "canonical comparison disagrees with brute force".into(),
        ))
    }
}

fn cmd_census(out: &mut dyn Write, order: usize) -> Result<(), CmdError> {
    let c = census(order)?;
    let names = enumeration_names(order)?;
    let _ = writeln!(out, "order: {order}");
    let _ = writeln!(out, "groups: {}", c.group_count);
    let _ = writeln!(out, "count: {}", c.count);
    for (name, mode) in names.iter().zip(&c.modes) {
        let _ = writeln!(out, "canonical {name}: mode={mode}");
    }
    for (i, m) in c.matrices.iter().enumerate() {
        let _ = writeln!(out, "matrix {}:", i + 1);
        let _ = write!(out, "{}", serialize_b(m));
    }
    if c.count == c.group_count {
        Ok(())
    } else {
        let _ = writeln!(
            out,
            "postcondition failed: {} matrices for {} groups",
            c.count, c.group_count
        );
        Err(CmdError::Verify(format!(
            "census({order}): {} distinct canonical matrices for {} groups",
            c.count, c.group_count
        )))
    }
}

fn cmd_cohomology(out: &mut dyn Write, group: &str) -> Result<(), CmdError> {
    let g = resolve_group(group)?;
    let slice = cohomology_slice_120(&g)?;
    let _ = writeln!(out, "group: {group}");
    let _ = writeln!(out, "order: {}", g.n());
    for j in 1..=g.n() {
        let _ = writeln!(out, "d z{j}: {}", d_z(j, &g).to_text());
    }
    let _ = writeln!(out, "monomials 119: {}", slice.basis_119.len());
    let _ = writeln!(out, "monomials 120: {}", slice.basis_120.len());
    let _ = writeln!(out, "monomials 121: {}", slice.basis_121.len());
    let _ = writeln!(out, "coboundaries: {}", slice.coboundary_basis.len());
    let _ = writeln!(out, "cocycles: {}", slice.cocycle_basis.len());
    let _ = writeln!(out, "quotient: {}", slice.quotient_dim());
    let independence = sigma_independence(&g)?;
    let _ = writeln!(
        out,
        "sigma independent: {}",
        if independence.independent { "yes" } else { "no" }
    );
    let consistent = b_matrix(&g)? == build_b(&g, BuildMode::Auto)?.to_rat_matrix();
    let _ = writeln!(
        out,
        "b-matrix consistent: {}",
        if consistent { "yes" } else { "no" }
    );
    if independence.independent && consistent {
        let _ = writeln!(out, "result: PASS");
        Ok(())
    } else {
        let _ = writeln!(out, "result: FAIL");
        Err(CmdError::Verify("cohomology validation failed".into()))
    }
}

/// Runs one invocation; returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/usage; version/help requests exit 0
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Build {
            group,
            mode,
            canonical,
            out: path,
        } => cmd_build(out, group, *mode, *canonical, path),
        Command::Solve { b, report, emit_x } => cmd_solve(out, b, *report, *emit_x),
        Command::Verify { group } => cmd_verify(out, group),
        Command::Iso { g1, g2 } => cmd_iso(out, g1, g2),
        Command::Census { order } => cmd_census(out, *order),
        Command::Cohomology { group } => cmd_cohomology(out, group),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}
