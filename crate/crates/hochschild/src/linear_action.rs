//! Linear changes of coordinates acting on polynomials, polyvector fields,
//! and multidifferential cochains, plus finite matrix groups with exact
//! Reynolds averaging.
//!
//! Conventions: an invertible matrix `g` acts on functions by pullback along
//! the inverse, `(g ⊳ f)(v) = f(g⁻¹ v)`, on coordinate frames by
//! `g ⊳ ∂_i = Σ_j g_{ji} ∂_j`, and on cochains by conjugation
//! `(g ⊳ φ)(f_1,…,f_k) = g ⊳ φ(g⁻¹ ⊳ f_1, …, g⁻¹ ⊳ f_k)`.

use crate::matrix::Mat;
use crate::multidiff::MultiDiffCochain;
use crate::poly::{MultiIndex, Poly};
use crate::polyvector::PolyvectorField;
use crate::scalar::Rat;
use num_traits::{One, Zero};

/// Cap on the closure size when generating a group from matrices.
pub const MAX_GROUP_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearActionError {
    #[error("generator {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("generator {index} is not {expected}×{expected}")]
    ShapeMismatch { index: usize, expected: usize },
    #[error("closure exceeds {MAX_GROUP_ORDER} elements")]
    GroupTooLarge,
    #[error("element index {0} out of range")]
    BadElement(usize),
}

/// Pullback action on polynomials: substitutes `x_k ↦ Σ_j (g⁻¹)_{kj} x_j`.
pub fn transform_poly(g_inv: &Mat, p: &Poly) -> Poly {
    let n = p.n_vars();
    assert_eq!(g_inv.rows(), n, "matrix size must match variable count");
    let images: Vec<Poly> = (0..n)
        .map(|k| {
            let mut row = Poly::zero(n);
            for j in 0..n {
                let c = g_inv.get(k, j);
                if !c.is_zero() {
                    row = row.add(&Poly::var(n, j).scale(c));
                }
            }
            row
        })
        .collect();
    p.substitute(&images)
}

/// Conjugation action on polyvector fields: coefficients transform by
/// pullback, frames by `g ⊳ ∂_i = Σ_j g_{ji} ∂_j`.
pub fn transform_polyvector(g: &Mat, g_inv: &Mat, x: &PolyvectorField) -> PolyvectorField {
    let n = x.n_vars();
    assert_eq!(g.rows(), n, "matrix size must match variable count");
    let mut out = PolyvectorField::zero(x.degree(), n);
    for (key, coeff) in x.components() {
        let moved = PolyvectorField::from_poly(transform_poly(g_inv, coeff));
        let mut acc = moved;
        for &i in key {
            let mut frame = PolyvectorField::zero(1, n);
            for j in 0..n {
                let c = g.get(j, i);
                if !c.is_zero() {
                    frame.add_component(vec![j], Poly::constant(n, c.clone()));
                }
            }
            acc = acc.wedge(&frame);
        }
        out = out.add(&acc);
    }
    out
}

/// Expands the transformed derivative `D^α` where `D_i = Σ_j g_{ji} ∂_j`,
/// returning the multi-indices `β` and weights with `D^α = Σ w_β ∂^β`.
/// (The expansion uses polynomial arithmetic in stand-in variables.)
fn transformed_derivative(g: &Mat, alpha: &[u32]) -> Vec<(MultiIndex, Rat)> {
    let n = alpha.len();
    let mut expansion = Poly::one(n);
    for (i, &e) in alpha.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut d_i = Poly::zero(n);
        for j in 0..n {
            let c = g.get(j, i);
            if !c.is_zero() {
                d_i = d_i.add(&Poly::var(n, j).scale(c));
            }
        }
        expansion = expansion.mul(&d_i.pow(e));
    }
    expansion
        .terms()
        .map(|(beta, w)| (beta.clone(), w.clone()))
        .collect()
}

/// Conjugation action on multidifferential cochains. At symbol level the
/// coefficient transforms by pullback and each slot's derivative
/// multi-index expands through `g`:
/// `g ⊳ (c·∂^{α_1}⊗⋯⊗∂^{α_k}) = (g ⊳ c)·D^{α_1}⊗⋯⊗D^{α_k}`.
pub fn transform_multidiff(g: &Mat, g_inv: &Mat, phi: &MultiDiffCochain) -> MultiDiffCochain {
    let n = phi.n_vars();
    assert_eq!(g.rows(), n, "matrix size must match variable count");
    let mut out = MultiDiffCochain::zero(phi.degree(), n);
    for (key, coeff) in phi.terms() {
        let moved = transform_poly(g_inv, coeff);
        // Distribute the expanded slots.
        let mut partial: Vec<(Vec<MultiIndex>, Rat)> = vec![(Vec::new(), Rat::one())];
        for alpha in key {
            let expanded = transformed_derivative(g, alpha);
            let mut next = Vec::with_capacity(partial.len() * expanded.len());
            for (prefix, w) in &partial {
                for (beta, u) in &expanded {
                    let mut ext = prefix.clone();
                    ext.push(beta.clone());
                    next.push((ext, w * u));
                }
            }
            partial = next;
        }
        for (new_key, w) in partial {
            out.add_term(new_key, moved.scale(&w));
        }
    }
    out
}

/// The quarter-turn rotation in the `(i, j)` coordinate plane
/// (`x_i ↦ x_j ↦ −x_i` on frames), identity elsewhere.
pub fn quarter_turn(n_vars: usize, i: usize, j: usize) -> Mat {
    assert!(i < n_vars && j < n_vars && i != j);
    let mut g = Mat::identity(n_vars);
    g.set(i, i, Rat::zero());
    g.set(j, j, Rat::zero());
    g.set(i, j, -Rat::one());
    g.set(j, i, Rat::one());
    g
}

/// A finite subgroup of the general linear group acting on everything the
/// polynomial backend defines, with table-based inverses and exact
/// averaging.
#[derive(Debug, Clone)]
pub struct LinearAction {
    n_vars: usize,
    elements: Vec<Mat>,
    inverses: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
}

impl LinearAction {
    /// Closes a generating set of invertible matrices into a finite group.
    pub fn from_generators(n_vars: usize, gens: &[Mat]) -> Result<Self, LinearActionError> {
        for (index, g) in gens.iter().enumerate() {
            if g.rows() != n_vars || g.cols() != n_vars {
                return Err(LinearActionError::ShapeMismatch {
                    index,
                    expected: n_vars,
                });
            }
            if g.inverse().is_none() {
                return Err(LinearActionError::NotInvertible { index });
            }
        }
        let mut elements = vec![Mat::identity(n_vars)];
        let mut generators = Vec::new();
        let mut frontier = vec![0usize];
        for g in gens {
            if let Some(pos) = elements.iter().position(|e| e == g) {
                generators.push(pos);
            } else {
                elements.push(g.clone());
                generators.push(elements.len() - 1);
                frontier.push(elements.len() - 1);
            }
        }
        while let Some(idx) = frontier.pop() {
            for &gen in &generators {
                let prod = elements[idx].mul(&elements[gen]);
                if !elements.iter().any(|e| *e == prod) {
                    elements.push(prod);
                    frontier.push(elements.len() - 1);
                    if elements.len() > MAX_GROUP_ORDER {
                        return Err(LinearActionError::GroupTooLarge);
                    }
                }
            }
        }
        let inverses = elements
            .iter()
            .map(|g| {
                let inv = g.inverse().expect("group elements are invertible");
                elements
                    .iter()
                    .position(|e| *e == inv)
                    .expect("closed set contains inverses")
            })
            .collect();
        Ok(LinearAction {
            n_vars,
            elements,
            inverses,
            identity: 0,
            generators,
        })
    }

    /// The order-4 group of quarter-turn rotations in the `(i, j)` plane.
    pub fn plane_rotations(n_vars: usize, i: usize, j: usize) -> Self {
        LinearAction::from_generators(n_vars, &[quarter_turn(n_vars, i, j)])
            .expect("rotation matrix is invertible and of finite order")
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn matrix(&self, g: usize) -> &Mat {
        &self.elements[g]
    }

    pub fn inverse_matrix(&self, g: usize) -> &Mat {
        &self.elements[self.inverses[g]]
    }

    pub fn act_poly(&self, g: usize, p: &Poly) -> Poly {
        transform_poly(self.inverse_matrix(g), p)
    }

    pub fn act_polyvector(&self, g: usize, x: &PolyvectorField) -> PolyvectorField {
        transform_polyvector(self.matrix(g), self.inverse_matrix(g), x)
    }

    pub fn act_multidiff(&self, g: usize, phi: &MultiDiffCochain) -> MultiDiffCochain {
        transform_multidiff(self.matrix(g), self.inverse_matrix(g), phi)
    }

    pub fn is_invariant_multidiff(&self, phi: &MultiDiffCochain) -> bool {
        self.generators
            .iter()
            .all(|&g| self.act_multidiff(g, phi) == *phi)
    }

    pub fn is_invariant_polyvector(&self, x: &PolyvectorField) -> bool {
        self.generators
            .iter()
            .all(|&g| self.act_polyvector(g, x) == *x)
    }

    /// Reynolds operator `(1/|G|) Σ_g g ⊳ φ`: an exact projector onto
    /// invariant cochains commuting with the differential.
    pub fn average_multidiff(&self, phi: &MultiDiffCochain) -> MultiDiffCochain {
        let mut sum = MultiDiffCochain::zero(phi.degree(), phi.n_vars());
        for g in 0..self.order() {
            sum = sum.add(&self.act_multidiff(g, phi));
        }
        let inv = Rat::one() / Rat::from_integer(self.order().into());
        sum.scale(&inv)
    }

    pub fn average_polyvector(&self, x: &PolyvectorField) -> PolyvectorField {
        let mut sum = PolyvectorField::zero(x.degree(), x.n_vars());
        for g in 0..self.order() {
            sum = sum.add(&self.act_polyvector(g, x));
        }
        let inv = Rat::one() / Rat::from_integer(self.order().into());
        sum.scale(&inv)
    }
}
