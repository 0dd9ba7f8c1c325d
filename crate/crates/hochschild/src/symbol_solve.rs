//! Bounded linear solving of `δψ = target` for multidifferential cochains.
//!
//! The symbol-level differential rearranges derivative multi-indices but
//! never touches coefficient polynomials, so the coboundary equation splits
//! into independent blocks, one per coefficient monomial of the target, all
//! sharing the same key-level matrix. The unknown lives in the finite window
//! given by [`Bounds`]: per-slot derivative order and coefficient degree are
//! both preserved by the differential, so the window is a genuine
//! subcomplex and a failed solve certifies non-solvability inside it.

use crate::matrix::Mat;
use crate::multidiff::{poly_differential, MultiDiffCochain};
use crate::poly::{indices_up_to, MultiIndex, Poly};
use crate::scalar::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Finite solving window: maximal derivative order per argument slot and
/// maximal total degree of coefficient polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Bounds {
    pub max_slot_order: u32,
    pub max_coeff_degree: u32,
}

impl Bounds {
    pub fn new(max_slot_order: u32, max_coeff_degree: u32) -> Self {
        Bounds {
            max_slot_order,
            max_coeff_degree,
        }
    }

    pub fn doubled(&self) -> Bounds {
        Bounds {
            max_slot_order: self.max_slot_order * 2,
            max_coeff_degree: self.max_coeff_degree * 2,
        }
    }

    /// Whether the cochain lies inside the window.
    pub fn admits(&self, phi: &MultiDiffCochain) -> bool {
        phi.max_slot_order() <= self.max_slot_order
            && phi.max_coeff_degree() <= self.max_coeff_degree
    }
}

/// Every derivative-key of a degree-`degree` cochain with per-slot order at
/// most `max_order`, in canonical order.
pub fn bounded_keys(n_vars: usize, degree: usize, max_order: u32) -> Vec<Vec<MultiIndex>> {
    let slots = indices_up_to(n_vars, max_order);
    let mut keys: Vec<Vec<MultiIndex>> = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::with_capacity(keys.len() * slots.len());
        for key in &keys {
            for slot in &slots {
                let mut ext = key.clone();
                ext.push(slot.clone());
                next.push(ext);
            }
        }
        keys = next;
    }
    keys
}

/// Solves `poly_differential(ψ) = target` for a `ψ` of degree one less than
/// the target, with every slot order bounded by `bounds.max_slot_order` and
/// coefficient degree bounded by `bounds.max_coeff_degree`. Returns `None`
/// when no such `ψ` exists in the window — an exact certificate, not an
/// approximation.
pub fn solve_symbol_coboundary(
    target: &MultiDiffCochain,
    bounds: &Bounds,
) -> Option<MultiDiffCochain> {
    let degree = target
        .degree()
        .checked_sub(1)
        .expect("target of a coboundary solve must have positive degree");
    let n_vars = target.n_vars();
    if target.is_zero() {
        return Some(MultiDiffCochain::zero(degree, n_vars));
    }

    // Split the target into blocks per coefficient monomial.
    let mut blocks: BTreeMap<MultiIndex, BTreeMap<Vec<MultiIndex>, Rat>> = BTreeMap::new();
    for (key, poly) in target.terms() {
        for (mono, c) in poly.terms() {
            if mono.iter().sum::<u32>() > bounds.max_coeff_degree {
                return None;
            }
            blocks
                .entry(mono.clone())
                .or_default()
                .insert(key.clone(), c.clone());
        }
    }

    // Key-level columns: the differential of each candidate basis key.
    let unknowns = bounded_keys(n_vars, degree, bounds.max_slot_order);
    let zero_exps = vec![0u32; n_vars];
    let columns: Vec<Vec<(Vec<MultiIndex>, Rat)>> = unknowns
        .iter()
        .map(|key| {
            let unit =
                MultiDiffCochain::from_terms(degree, n_vars, [(key.clone(), Poly::one(n_vars))]);
            poly_differential(&unit)
                .terms()
                .map(|(out_key, p)| (out_key.clone(), p.coeff(&zero_exps)))
                .collect()
        })
        .collect();

    // Row space: keys reachable by the columns plus keys demanded by the
    // target.
    let mut row_index: BTreeMap<Vec<MultiIndex>, usize> = BTreeMap::new();
    for column in &columns {
        for (key, _) in column {
            let next = row_index.len();
            row_index.entry(key.clone()).or_insert(next);
        }
    }
    for block in blocks.values() {
        for key in block.keys() {
            let next = row_index.len();
            row_index.entry(key.clone()).or_insert(next);
        }
    }

    let rows = row_index.len();
    let mut matrix = Mat::zeros(rows, unknowns.len());
    for (col, column) in columns.iter().enumerate() {
        for (key, w) in column {
            matrix.set(row_index[key], col, w.clone());
        }
    }
    let mut rhs = Mat::zeros(rows, blocks.len());
    for (b, block) in blocks.values().enumerate() {
        for (key, c) in block {
            rhs.set(row_index[key], b, c.clone());
        }
    }

    let solutions = matrix.solve_multi(&rhs);
    let mut psi = MultiDiffCochain::zero(degree, n_vars);
    for (sol, mono) in solutions.into_iter().zip(blocks.keys()) {
        let sol = sol?;
        for (key, value) in unknowns.iter().zip(sol) {
            if !value.is_zero() {
                psi.add_term(key.clone(), Poly::monomial(mono.clone(), value));
            }
        }
    }
    Some(psi)
}
