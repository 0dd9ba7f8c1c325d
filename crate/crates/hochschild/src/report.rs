//! Run reports: serializable result documents plus deterministic
//! aligned-text rendering. Field order is fixed by the struct definitions
//! and every map is ordered, so identical inputs produce byte-identical
//! output.

use crate::multidiff::MultiDiffCochain;
use crate::poly::Poly;
use crate::polyvector::PolyvectorField;
use crate::scalar::format_rat;
use crate::symbol_solve::Bounds;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Serialize)]
pub struct PolyTermOut {
    pub exponents: Vec<u32>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CochainTermOut {
    pub slots: Vec<Vec<u32>>,
    pub coeff: Vec<PolyTermOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CochainOut {
    pub degree: usize,
    pub terms: Vec<CochainTermOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyvectorComponentOut {
    pub indices: Vec<usize>,
    pub coeff: Vec<PolyTermOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyvectorOut {
    pub degree: usize,
    pub components: Vec<PolyvectorComponentOut>,
}

pub fn poly_out(p: &Poly) -> Vec<PolyTermOut> {
    p.terms()
        .map(|(exps, c)| PolyTermOut {
            exponents: exps.clone(),
            value: format_rat(c),
        })
        .collect()
}

pub fn cochain_out(c: &MultiDiffCochain) -> CochainOut {
    CochainOut {
        degree: c.degree(),
        terms: c
            .terms()
            .map(|(key, coeff)| CochainTermOut {
                slots: key.clone(),
                coeff: poly_out(coeff),
            })
            .collect(),
    }
}

pub fn polyvector_out(x: &PolyvectorField) -> PolyvectorOut {
    PolyvectorOut {
        degree: x.degree(),
        components: x
            .components()
            .map(|(indices, coeff)| PolyvectorComponentOut {
                indices: indices.clone(),
                coeff: poly_out(coeff),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub dimension: usize,
    /// One coefficient vector (over the tensor-power basis) per class.
    pub representatives: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComputeReport {
    pub dim: usize,
    pub degrees: Vec<DegreeReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IotaOut {
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantDegreeReport {
    pub degree: usize,
    pub dim_invariant_cohomology: usize,
    pub dim_fixed_classes: usize,
    pub iota: IotaOut,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub dim: usize,
    pub group_order: usize,
    pub degrees: Vec<InvariantDegreeReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HkrReport {
    pub n_vars: usize,
    pub degree: usize,
    /// `decomposed`, `not_a_cocycle`, `skew_part_not_first_order`, or
    /// `no_solution_within_bounds`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polyvector: Option<PolyvectorOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential: Option<CochainOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeformStepReport {
    pub order: usize,
    pub term: CochainOut,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionOut {
    pub order: usize,
    pub invariant_required: bool,
    pub target_invariant: bool,
    pub unconstrained_solvable: bool,
    pub bounds: Bounds,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeformReport {
    pub n_vars: usize,
    pub start_order: usize,
    pub target_order: usize,
    pub invariant: bool,
    /// `completed` or `obstructed`.
    pub status: String,
    pub steps: Vec<DeformStepReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogeneousDegreeReport {
    pub degree: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogeneousReport {
    pub dim: usize,
    pub h_dim: usize,
    pub quotient_dim: usize,
    pub isotropy: String,
    pub degrees: Vec<HomogeneousDegreeReport>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Report {
    Compute(ComputeReport),
    Invariant(InvariantReport),
    Hkr(HkrReport),
    Deform(DeformReport),
    Homogeneous(HomogeneousReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        match self {
            Report::Compute(r) => r.to_text(),
            Report::Invariant(r) => r.to_text(),
            Report::Hkr(r) => r.to_text(),
            Report::Deform(r) => r.to_text(),
            Report::Homogeneous(r) => r.to_text(),
        }
    }
}

/// Left-aligned table with two-space gutters and widths fitted per column.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut emit = |cells: &[String]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i + 1 == cols {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{:<width$}  ", cell, width = widths[i]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    emit(&headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        emit(row);
    }
    out
}

fn vector_display(v: &[String]) -> String {
    format!("[{}]", v.join(", "))
}

fn poly_text(terms: &[PolyTermOut]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms
        .iter()
        .map(|t| format!("{} x^{:?}", t.value, t.exponents))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cochain_text(c: &CochainOut, indent: &str) -> String {
    if c.terms.is_empty() {
        return format!("{indent}0\n");
    }
    let mut out = String::new();
    for term in &c.terms {
        let slots = term
            .slots
            .iter()
            .map(|s| format!("{s:?}"))
            .collect::<Vec<_>>()
            .join(" ⊗ ");
        let _ = writeln!(out, "{indent}{}  ·  {}", slots, poly_text(&term.coeff));
    }
    out
}

impl ComputeReport {
    fn to_text(&self) -> String {
        let mut out = format!("cohomology of a {}-dimensional algebra (regular bimodule)\n\n", self.dim);
        let rows: Vec<Vec<String>> = self
            .degrees
            .iter()
            .map(|d| vec![d.degree.to_string(), d.dimension.to_string()])
            .collect();
        out.push_str(&table(&["degree", "dim"], &rows));
        for d in &self.degrees {
            if d.representatives.is_empty() {
                continue;
            }
            let _ = write!(out, "\ndegree {} class representatives:\n", d.degree);
            for rep in &d.representatives {
                let _ = writeln!(out, "  {}", vector_display(rep));
            }
        }
        out
    }
}

impl InvariantReport {
    fn to_text(&self) -> String {
        let mut out = format!(
            "invariant cohomology of a {}-dimensional algebra under a group of order {}\n\n",
            self.dim, self.group_order
        );
        let rows: Vec<Vec<String>> = self
            .degrees
            .iter()
            .map(|d| {
                vec![
                    d.degree.to_string(),
                    d.dim_invariant_cohomology.to_string(),
                    d.dim_fixed_classes.to_string(),
                    d.iota.injective.to_string(),
                    d.iota.surjective.to_string(),
                ]
            })
            .collect();
        out.push_str(&table(
            &["degree", "dim HH_G", "dim (HH)^G", "iota injective", "iota surjective"],
            &rows,
        ));
        out
    }
}

impl HkrReport {
    fn to_text(&self) -> String {
        let mut out = format!(
            "decomposition of a degree-{} cochain in {} variables\n\nstatus: {}\n",
            self.degree, self.n_vars, self.status
        );
        if let Some(detail) = &self.detail {
            let _ = writeln!(out, "detail: {detail}");
        }
        if let Some(x) = &self.polyvector {
            out.push_str("\npolyvector part:\n");
            if x.components.is_empty() {
                out.push_str("  0\n");
            }
            for comp in &x.components {
                let _ = writeln!(out, "  ∂{:?}  ·  {}", comp.indices, poly_text(&comp.coeff));
            }
        }
        if let Some(psi) = &self.potential {
            out.push_str("\npotential (coboundary part is its differential):\n");
            out.push_str(&cochain_text(psi, "  "));
        }
        out
    }
}

impl DeformReport {
    fn to_text(&self) -> String {
        let mut out = format!(
            "continuation in {} variables from order {} to order {} (invariance constraint: {})\n\nstatus: {}\n",
            self.n_vars,
            self.start_order,
            self.target_order,
            if self.invariant { "yes" } else { "no" },
            self.status
        );
        for step in &self.steps {
            let _ = write!(out, "\norder {} term:\n", step.order);
            out.push_str(&cochain_text(&step.term, "  "));
        }
        if let Some(o) = &self.obstruction {
            let _ = writeln!(
                out,
                "\nobstructed at order {}: invariant required: {}, target invariant: {}, unconstrained solvable: {}, bounds: slot order ≤ {}, coefficient degree ≤ {}",
                o.order,
                o.invariant_required,
                o.target_invariant,
                o.unconstrained_solvable,
                o.bounds.max_slot_order,
                o.bounds.max_coeff_degree
            );
        }
        out
    }
}

impl HomogeneousReport {
    fn to_text(&self) -> String {
        let mut out = format!(
            "invariant exterior dimensions for a {}-dimensional pair (subalgebra dim {}, quotient dim {}, isotropy: {})\n\n",
            self.dim, self.h_dim, self.quotient_dim, self.isotropy
        );
        let rows: Vec<Vec<String>> = self
            .degrees
            .iter()
            .map(|d| vec![d.degree.to_string(), d.dimension.to_string()])
            .collect();
        out.push_str(&table(&["degree", "dim"], &rows));
        out
    }
}
