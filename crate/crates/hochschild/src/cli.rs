//! Front-end dispatch shared by the command-line binary and the C
//! interface: parse a problem document, run the requested computation, and
//! render the report as text or a structured document.
//!
//! Exit-code contract: 0 on success (mathematical negatives such as an
//! obstructed continuation are reported in-band), 1 on input errors
//! (unreadable files, malformed documents, schema violations, invalid
//! algebraic data), 2 on engine failures (degree caps, resource limits).

use crate::algebra::Bimodule;
use crate::cohomology::cohomology;
use crate::deform::DeformError;
use crate::hkr::{hkr_decompose, HkrError};
use crate::invariance::iota_check;
use crate::lie::invariant_exterior_dims;
use crate::matrix::Mat;
use crate::problem::{
    AlgebraProblem, DeformProblem, HkrProblem, HomogeneousProblem, InvariantProblem, Problem,
};
use crate::report::{
    cochain_out, polyvector_out, ComputeReport, DeformReport, DeformStepReport, DegreeReport,
    HkrReport, HomogeneousDegreeReport, HomogeneousReport, InvariantDegreeReport, InvariantReport,
    IotaOut, ObstructionOut, Report,
};
use crate::scalar::format_rat;
use clap::{Parser, Subcommand};
use std::fmt;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, thiserror::Error)]
pub enum RunError {
    #[error("input error: {0}")]
    Input(String),
    #[error("engine failure: {0}")]
    Engine(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) => 1,
            RunError::Engine(_) => 2,
        }
    }
}

fn input(e: impl fmt::Display) -> RunError {
    RunError::Input(e.to_string())
}

fn engine(e: impl fmt::Display) -> RunError {
    RunError::Engine(e.to_string())
}

/// Parses a problem document; the error message carries the line/column of
/// the offending token (including malformed rationals such as `"1/0"`).
pub fn parse_problem(text: &str) -> Result<Problem, RunError> {
    serde_json::from_str(text).map_err(input)
}

pub fn kind_name(problem: &Problem) -> &'static str {
    match problem {
        Problem::Algebra(_) => "algebra",
        Problem::Invariant(_) => "invariant",
        Problem::Hkr(_) => "hkr",
        Problem::Deform(_) => "deform",
        Problem::Homogeneous(_) => "homogeneous",
    }
}

fn expect_kind(problem: &Problem, expected: &str) -> Result<(), RunError> {
    let actual = kind_name(problem);
    if actual == expected {
        Ok(())
    } else {
        Err(RunError::Input(format!(
            "problem kind `{actual}` does not match this subcommand (expected `{expected}`)"
        )))
    }
}

pub fn run_compute(p: &AlgebraProblem, max_degree: usize) -> Result<Report, RunError> {
    let algebra = p.build().map_err(input)?;
    let module = Bimodule::regular(&algebra);
    let mut degrees = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let space = cohomology(&algebra, &module, n).map_err(engine)?;
        degrees.push(DegreeReport {
            degree: n,
            dimension: space.dim(),
            representatives: space
                .class_representatives()
                .iter()
                .map(|c| c.coeffs().iter().map(format_rat).collect())
                .collect(),
        });
    }
    Ok(Report::Compute(ComputeReport {
        dim: algebra.dim(),
        degrees,
    }))
}

pub fn run_invariant(p: &InvariantProblem, max_degree: usize) -> Result<Report, RunError> {
    let (algebra, module, action) = p.build().map_err(input)?;
    let mut degrees = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let r = iota_check(&action, &algebra, &module, n).map_err(engine)?;
        degrees.push(InvariantDegreeReport {
            degree: n,
            dim_invariant_cohomology: r.dim_invariant_cohomology,
            dim_fixed_classes: r.dim_fixed_classes,
            iota: IotaOut {
                injective: r.injective,
                surjective: r.surjective,
            },
        });
    }
    Ok(Report::Invariant(InvariantReport {
        dim: algebra.dim(),
        group_order: action.order(),
        degrees,
    }))
}

pub fn run_hkr(p: &HkrProblem) -> Result<Report, RunError> {
    let (phi, bounds) = p.build().map_err(input)?;
    let degree = phi.degree();
    let n_vars = phi.n_vars();
    let (status, detail, polyvector, potential) = match hkr_decompose(&phi, &bounds) {
        Ok((x, psi)) => (
            "decomposed",
            None,
            Some(polyvector_out(&x)),
            Some(cochain_out(&psi)),
        ),
        Err(HkrError::NotACocycle { nonzero_terms }) => (
            "not_a_cocycle",
            Some(format!("the differential has {nonzero_terms} nonzero terms")),
            None,
            None,
        ),
        Err(HkrError::SkewPartNotFirstOrder { key }) => (
            "skew_part_not_first_order",
            Some(format!("offending slot orders {key:?}")),
            None,
            None,
        ),
        Err(HkrError::NoSolutionWithinBounds {
            bounds_tried,
            residual,
        }) => (
            "no_solution_within_bounds",
            Some(format!(
                "tried bounds {bounds_tried:?}; residual has {} terms",
                residual.term_count()
            )),
            None,
            None,
        ),
        Err(HkrError::Symbol(e)) => return Err(engine(e)),
    };
    Ok(Report::Hkr(HkrReport {
        n_vars,
        degree,
        status: status.to_string(),
        detail,
        polyvector,
        potential,
    }))
}

pub fn run_deform(p: &DeformProblem, to_order: usize) -> Result<Report, RunError> {
    let (mut current, bounds) = p.build().map_err(input)?;
    let start_order = current.order();
    let invariant = current.invariance().is_some();
    let n_vars = current.n_vars();
    let mut steps = Vec::new();
    let mut status = "completed".to_string();
    let mut obstruction = None;
    for order in start_order + 1..=to_order {
        match current.continue_deformation(&bounds) {
            Ok(term) => {
                steps.push(DeformStepReport {
                    order,
                    term: cochain_out(&term),
                });
                current = current.extended(term).map_err(engine)?;
            }
            Err(DeformError::Obstructed {
                order,
                invariant_required,
                target_invariant,
                unconstrained_solvable,
                bounds,
            }) => {
                status = "obstructed".to_string();
                obstruction = Some(ObstructionOut {
                    order,
                    invariant_required,
                    target_invariant,
                    unconstrained_solvable,
                    bounds,
                });
                break;
            }
            Err(e @ DeformError::NotAssociativeToOrder { .. }) => return Err(input(e)),
            Err(e) => return Err(engine(e)),
        }
    }
    Ok(Report::Deform(DeformReport {
        n_vars,
        start_order,
        target_order: to_order,
        invariant,
        status,
        steps,
        obstruction,
    }))
}

pub fn run_homogeneous(p: &HomogeneousProblem, max_degree: usize) -> Result<Report, RunError> {
    let pair = p.build().map_err(input)?;
    let dims = invariant_exterior_dims(&pair, max_degree).map_err(engine)?;
    let h_rank = Mat::from_rows(pair.h_basis().to_vec()).rank();
    let isotropy = match &pair.isotropy() {
        crate::lie::Isotropy::Connected => "connected".to_string(),
        crate::lie::Isotropy::FiniteGroup { elements } => {
            format!("finite group of order {}", elements.len())
        }
    };
    Ok(Report::Homogeneous(HomogeneousReport {
        dim: pair.g_dim(),
        h_dim: h_rank,
        quotient_dim: pair.g_dim() - h_rank,
        isotropy,
        degrees: dims
            .into_iter()
            .enumerate()
            .map(|(degree, dimension)| HomogeneousDegreeReport { degree, dimension })
            .collect(),
    }))
}

/// Runs a parsed problem with the given degree/order caps, regardless of
/// which front end supplied it.
pub fn run_problem(problem: &Problem, max_degree: usize, to_order: usize) -> Result<Report, RunError> {
    match problem {
        Problem::Algebra(p) => run_compute(p, max_degree),
        Problem::Invariant(p) => run_invariant(p, max_degree),
        Problem::Hkr(p) => run_hkr(p),
        Problem::Deform(p) => run_deform(p, to_order),
        Problem::Homogeneous(p) => run_homogeneous(p, max_degree),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hochschild",
    version,
    about = "Exact Hochschild cohomology, invariant classes, and formal deformations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology dimensions and class representatives of an algebra file.
    Compute {
        file: PathBuf,
        /// Highest cohomological degree to compute.
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Emit a single structured document instead of text tables.
        #[arg(long)]
        json: bool,
    },
    /// Invariant cohomology, fixed classes, and the comparison map per degree.
    Invariant {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a polynomial cochain into a polyvector part plus a coboundary.
    Hkr {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Continue a formal deformation order by order, reporting obstructions.
    Deform {
        file: PathBuf,
        /// Target order of the continuation.
        #[arg(long, default_value_t = 3)]
        to_order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Invariant exterior-form dimensions of a quotient pair.
    Homogeneous {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
}

fn load(path: &Path) -> Result<Problem, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text)
}

/// Executes one parsed invocation and returns the rendered output.
pub fn execute(cli: &Cli) -> Result<String, RunError> {
    let (report, json) = match &cli.command {
        Command::Compute {
            file,
            max_degree,
            json,
        } => {
            let problem = load(file)?;
            expect_kind(&problem, "algebra")?;
            (run_problem(&problem, *max_degree, 0)?, *json)
        }
        Command::Invariant {
            file,
            max_degree,
            json,
        } => {
            let problem = load(file)?;
            expect_kind(&problem, "invariant")?;
            (run_problem(&problem, *max_degree, 0)?, *json)
        }
        Command::Hkr { file, json } => {
            let problem = load(file)?;
            expect_kind(&problem, "hkr")?;
            (run_problem(&problem, 0, 0)?, *json)
        }
        Command::Deform {
            file,
            to_order,
            json,
        } => {
            let problem = load(file)?;
            expect_kind(&problem, "deform")?;
            (run_problem(&problem, 0, *to_order)?, *json)
        }
        Command::Homogeneous {
            file,
            max_degree,
            json,
        } => {
            let problem = load(file)?;
            expect_kind(&problem, "homogeneous")?;
            (run_problem(&problem, *max_degree, 0)?, *json)
        }
    };
    Ok(if json {
        report.to_json()
    } else {
        report.to_text()
    })
}
