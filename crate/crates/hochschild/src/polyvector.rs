//! Polyvector fields with polynomial coefficients: antisymmetric data stored
//! on strictly increasing coordinate-frame index tuples.

use crate::poly::Poly;
use crate::scalar::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial polyvector field `Σ_I p_I ∂_{i_1} ∧ ⋯ ∧ ∂_{i_k}`, keyed by
/// strictly increasing index tuples. Degree 0 is a plain polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyvectorField {
    degree: usize,
    n_vars: usize,
    components: BTreeMap<Vec<usize>, Poly>,
}

/// Sorts `indices`, returning `None` on a repeated index and the permutation
/// sign otherwise.
fn sort_with_sign(indices: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] >= indices[j] {
            if indices[j - 1] == indices[j] {
                return None;
            }
            indices.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    Some(odd)
}

impl PolyvectorField {
    pub fn zero(degree: usize, n_vars: usize) -> Self {
        PolyvectorField {
            degree,
            n_vars,
            components: BTreeMap::new(),
        }
    }

    /// Degree-0 field: the polynomial itself.
    pub fn from_poly(p: Poly) -> Self {
        let mut out = PolyvectorField::zero(0, p.n_vars());
        out.add_component(Vec::new(), p);
        out
    }

    /// The coordinate frame field `∂_i`.
    pub fn frame(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "frame index out of range");
        let mut out = PolyvectorField::zero(1, n_vars);
        out.add_component(vec![i], Poly::one(n_vars));
        out
    }

    pub fn from_components(
        degree: usize,
        n_vars: usize,
        components: impl IntoIterator<Item = (Vec<usize>, Poly)>,
    ) -> Self {
        let mut out = PolyvectorField::zero(degree, n_vars);
        for (key, coeff) in components {
            out.add_component(key, coeff);
        }
        out
    }

    /// Adds `coeff · ∂_{key}`; the key may arrive unsorted and is normalized
    /// with the permutation sign (repeated indices contribute nothing).
    pub fn add_component(&mut self, mut key: Vec<usize>, coeff: Poly) {
        assert_eq!(key.len(), self.degree, "component arity mismatch");
        assert_eq!(coeff.n_vars(), self.n_vars, "variable count mismatch");
        assert!(
            key.iter().all(|&i| i < self.n_vars),
            "frame index out of range"
        );
        if coeff.is_zero() {
            return;
        }
        let Some(odd) = sort_with_sign(&mut key) else {
            return;
        };
        let signed = if odd { coeff.neg() } else { coeff };
        use std::collections::btree_map::Entry;
        match self.components.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(signed);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&signed);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.components.iter()
    }

    pub fn component(&self, key: &[usize]) -> Poly {
        self.components
            .get(key)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.n_vars))
    }

    pub fn max_coeff_degree(&self) -> u32 {
        self.components
            .values()
            .map(|p| p.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &PolyvectorField) -> PolyvectorField {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (key, coeff) in &other.components {
            out.add_component(key.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyvectorField) -> PolyvectorField {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyvectorField {
        PolyvectorField {
            degree: self.degree,
            n_vars: self.n_vars,
            components: self
                .components
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> PolyvectorField {
        if s.is_zero() {
            return PolyvectorField::zero(self.degree, self.n_vars);
        }
        PolyvectorField {
            degree: self.degree,
            n_vars: self.n_vars,
            components: self
                .components
                .iter()
                .map(|(k, c)| (k.clone(), c.scale(s)))
                .collect(),
        }
    }

    /// Multiplies every coefficient by `p`.
    pub fn scale_poly(&self, p: &Poly) -> PolyvectorField {
        let mut out = PolyvectorField::zero(self.degree, self.n_vars);
        for (key, coeff) in &self.components {
            out.add_component(key.clone(), coeff.mul(p));
        }
        out
    }

    /// Exterior product; degrees add, repeated frames cancel.
    pub fn wedge(&self, other: &PolyvectorField) -> PolyvectorField {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = PolyvectorField::zero(self.degree + other.degree, self.n_vars);
        for (left, p) in &self.components {
            for (right, q) in &other.components {
                let mut key = Vec::with_capacity(left.len() + right.len());
                key.extend_from_slice(left);
                key.extend_from_slice(right);
                out.add_component(key, p.mul(q));
            }
        }
        out
    }
}

impl fmt::Display for PolyvectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.components {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if key.is_empty() {
                write!(f, "{coeff}")?;
            } else {
                let frames: Vec<String> = key
                    .iter()
                    .map(|&i| format!("d{}", crate::poly::var_name(self.n_vars, i)))
                    .collect();
                write!(f, "({}) {}", coeff, frames.join("∧"))?;
            }
        }
        Ok(())
    }
}
