//! Finite-dimensional associative unital algebras over the rationals, given
//! by structure constants, together with bimodules over them.
//!
//! An algebra of dimension `d` stores `c[i][j][k]` with
//! `e_i * e_j = sum_k c[i][j][k] e_k`. Construction validates associativity
//! and the unit axioms on all basis elements and reports a concrete witness
//! on failure, so invalid inputs cannot leak into later stages.

use crate::matrix::Mat;
use crate::scalar::{format_rat, Rat};
use num_traits::{One, Zero};

/// Validation and usage errors for algebras and bimodules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("expected {what} of size {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("not associative: (e{i} e{j}) e{k} != e{i} (e{j} e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("unit fails on basis element e{index} ({side} side)")]
    NotUnital { index: usize, side: &'static str },
    #[error("left action is not an algebra action at basis pair (e{i}, e{j})")]
    NotLeftModule { i: usize, j: usize },
    #[error("right action is not an algebra action at basis pair (e{i}, e{j})")]
    NotRightModule { i: usize, j: usize },
    #[error("left and right actions do not commute at basis pair (e{i}, e{j})")]
    ActionsDontCommute { i: usize, j: usize },
    #[error("unit does not act as identity on the module ({side} side)")]
    ModuleNotUnital { side: &'static str },
}

/// Associative unital algebra over the rationals with a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteDimAlgebra {
    dim: usize,
    /// Flat `d^3` structure constants, indexed `(i*d + j)*d + k`.
    structure: Vec<Rat>,
    unit: Vec<Rat>,
}

impl FiniteDimAlgebra {
    /// Validates and builds an algebra. `structure[i][j][k]` is the
    /// coefficient of `e_k` in `e_i * e_j`.
    pub fn new(structure: Vec<Vec<Vec<Rat>>>, unit: Vec<Rat>) -> Result<Self, AlgebraError> {
        let dim = structure.len();
        if dim == 0 {
            return Err(AlgebraError::DimensionMismatch {
                what: "structure tensor",
                expected: 1,
                got: 0,
            });
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in &structure {
            if row.len() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    what: "structure tensor row",
                    expected: dim,
                    got: row.len(),
                });
            }
            for cell in row {
                if cell.len() != dim {
                    return Err(AlgebraError::DimensionMismatch {
                        what: "structure tensor entry",
                        expected: dim,
                        got: cell.len(),
                    });
                }
                flat.extend(cell.iter().cloned());
            }
        }
        if unit.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                what: "unit vector",
                expected: dim,
                got: unit.len(),
            });
        }
        let alg = FiniteDimAlgebra {
            dim,
            structure: flat,
            unit,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        // Unit axioms on every basis element.
        for j in 0..d {
            let mut e = vec![Rat::zero(); d];
            e[j] = Rat::one();
            if self.multiply(&self.unit, &e).unwrap() != e {
                return Err(AlgebraError::NotUnital {
                    index: j,
                    side: "left",
                });
            }
            if self.multiply(&e, &self.unit).unwrap() != e {
                return Err(AlgebraError::NotUnital {
                    index: j,
                    side: "right",
                });
            }
        }
        // Associativity on every basis triple.
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let left = self.multiply_basis_right(&ij, k);
                    let jk = self.basis_product(j, k);
                    let right = self.multiply_basis_left(i, jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Rat] {
        &self.unit
    }

    /// Structure constant `c[i][j][k]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `e_i * e_j` as a slice of length `dim`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rat] {
        let base = (i * self.dim + j) * self.dim;
        &self.structure[base..base + self.dim]
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>, AlgebraError> {
        if x.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                what: "left factor",
                expected: self.dim,
                got: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                what: "right factor",
                expected: self.dim,
                got: y.len(),
            });
        }
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let factor = xi * yj;
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&factor * c);
                    }
                }
            }
        }
        Ok(out)
    }

    fn multiply_basis_left(&self, i: usize, y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, c) in self.basis_product(i, j).iter().enumerate() {
                if !c.is_zero() {
                    out[k] = &out[k] + &(yj * c);
                }
            }
        }
        out
    }

    fn multiply_basis_right(&self, x: &[Rat], k: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (l, c) in self.basis_product(i, k).iter().enumerate() {
                if !c.is_zero() {
                    out[l] = &out[l] + &(xi * c);
                }
            }
        }
        out
    }

    /// True iff `g` is an algebra automorphism: invertible, fixes the unit,
    /// and respects products of basis elements.
    pub fn check_automorphism(&self, g: &Mat) -> Result<bool, AlgebraError> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                what: "automorphism matrix",
                expected: self.dim,
                got: g.rows().max(g.cols()),
            });
        }
        if g.rank() != self.dim {
            return Ok(false);
        }
        if g.mul_vec(&self.unit) != self.unit {
            return Ok(false);
        }
        for i in 0..self.dim {
            let gi = g.column(i);
            for j in 0..self.dim {
                let gj = g.column(j);
                let lhs = g.mul_vec(self.basis_product(i, j));
                let rhs = self.multiply(&gi, &gj)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Pretty-prints a coordinate vector like `2*e0 - 1/2*e1`.
    pub fn show_element(x: &[Rat]) -> String {
        let mut parts = Vec::new();
        for (k, v) in x.iter().enumerate() {
            if !v.is_zero() {
                parts.push(format!("{}*e{}", format_rat(v), k));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Stock algebras used throughout tests, docs, and example problems.
pub mod models {
    use super::*;

    fn from_basis_products(
        dim: usize,
        unit: Vec<Rat>,
        product: impl Fn(usize, usize) -> Vec<Rat>,
    ) -> FiniteDimAlgebra {
        let structure: Vec<Vec<Vec<Rat>>> = (0..dim)
            .map(|i| (0..dim).map(|j| product(i, j)).collect())
            .collect();
        FiniteDimAlgebra::new(structure, unit).expect("stock algebra must validate")
    }

    /// The ground field itself, dimension 1.
    pub fn ground_field() -> FiniteDimAlgebra {
        from_basis_products(1, vec![Rat::one()], |_, _| vec![Rat::one()])
    }

    /// Dual numbers `Q[x]/(x^2)`, basis `{1, x}`.
    pub fn dual_numbers() -> FiniteDimAlgebra {
        truncated_polynomial(2)
    }

    /// Truncated polynomials `Q[x]/(x^k)`, basis `{1, x, ..., x^(k-1)}`.
    pub fn truncated_polynomial(k: usize) -> FiniteDimAlgebra {
        assert!(k >= 1);
        from_basis_products(
            k,
            std::iter::once(Rat::one())
                .chain(std::iter::repeat(Rat::zero()))
                .take(k)
                .collect(),
            |i, j| {
                let mut out = vec![Rat::zero(); k];
                if i + j < k {
                    out[i + j] = Rat::one();
                }
                out
            },
        )
    }

    /// Full matrix algebra `M_n(Q)` on the basis of matrix units `E_ij`
    /// ordered row-major.
    pub fn matrix_algebra(n: usize) -> FiniteDimAlgebra {
        assert!(n >= 1);
        let d = n * n;
        let mut unit = vec![Rat::zero(); d];
        for i in 0..n {
            unit[i * n + i] = Rat::one();
        }
        from_basis_products(d, unit, |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            let mut out = vec![Rat::zero(); d];
            if j == k {
                out[i * n + l] = Rat::one();
            }
            out
        })
    }

    /// Group algebra of the cyclic group `Z/n`, basis indexed by group
    /// elements with `e_i e_j = e_(i+j mod n)`.
    pub fn group_algebra_cyclic(n: usize) -> FiniteDimAlgebra {
        assert!(n >= 1);
        let mut unit = vec![Rat::zero(); n];
        unit[0] = Rat::one();
        from_basis_products(n, unit, |i, j| {
            let mut out = vec![Rat::zero(); n];
            out[(i + j) % n] = Rat::one();
            out
        })
    }
}

/// Bimodule over a [`FiniteDimAlgebra`], given by matrices for the left and
/// right actions of every basis element. The regular bimodule (the algebra
/// acting on itself) covers the common case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    algebra_dim: usize,
    dim: usize,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl Bimodule {
    /// Validates the bimodule axioms on all basis pairs.
    pub fn new(
        algebra: &FiniteDimAlgebra,
        left: Vec<Mat>,
        right: Vec<Mat>,
    ) -> Result<Self, AlgebraError> {
        let d = algebra.dim();
        if left.len() != d {
            return Err(AlgebraError::DimensionMismatch {
                what: "left action list",
                expected: d,
                got: left.len(),
            });
        }
        if right.len() != d {
            return Err(AlgebraError::DimensionMismatch {
                what: "right action list",
                expected: d,
                got: right.len(),
            });
        }
        let m = left.first().map_or(0, Mat::rows);
        for mat in left.iter().chain(right.iter()) {
            if mat.rows() != m || mat.cols() != m {
                return Err(AlgebraError::DimensionMismatch {
                    what: "action matrix",
                    expected: m,
                    got: mat.rows().max(mat.cols()),
                });
            }
        }
        let module = Bimodule {
            algebra_dim: d,
            dim: m,
            left,
            right,
        };
        // L(e_i e_j) = L(e_i) L(e_j), R(e_i e_j) = R(e_j) R(e_i),
        // and the two actions commute.
        for i in 0..d {
            for j in 0..d {
                let lij = module.left_action(algebra.basis_product(i, j));
                if lij != module.left[i].mul(&module.left[j]) {
                    return Err(AlgebraError::NotLeftModule { i, j });
                }
                let rij = module.right_action(algebra.basis_product(i, j));
                if rij != module.right[j].mul(&module.right[i]) {
                    return Err(AlgebraError::NotRightModule { i, j });
                }
                if module.left[i].mul(&module.right[j]) != module.right[j].mul(&module.left[i]) {
                    return Err(AlgebraError::ActionsDontCommute { i, j });
                }
            }
        }
        if module.left_action(algebra.unit()) != Mat::identity(m) {
            return Err(AlgebraError::ModuleNotUnital { side: "left" });
        }
        if module.right_action(algebra.unit()) != Mat::identity(m) {
            return Err(AlgebraError::ModuleNotUnital { side: "right" });
        }
        Ok(module)
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(algebra: &FiniteDimAlgebra) -> Self {
        let d = algebra.dim();
        let left = (0..d)
            .map(|i| Mat::from_fn(d, d, |k, j| algebra.c(i, j, k).clone()))
            .collect();
        let right = (0..d)
            .map(|i| Mat::from_fn(d, d, |k, j| algebra.c(j, i, k).clone()))
            .collect();
        Bimodule {
            algebra_dim: d,
            dim: d,
            left,
            right,
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of left multiplication by basis element `e_i`.
    pub fn left_basis(&self, i: usize) -> &Mat {
        &self.left[i]
    }

    /// Matrix of right multiplication by basis element `e_i`.
    pub fn right_basis(&self, i: usize) -> &Mat {
        &self.right[i]
    }

    /// Matrix of left multiplication by a general algebra element.
    pub fn left_action(&self, a: &[Rat]) -> Mat {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.left[i].scale(c));
            }
        }
        out
    }

    /// Matrix of right multiplication by a general algebra element.
    pub fn right_action(&self, a: &[Rat]) -> Mat {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.right[i].scale(c));
            }
        }
        out
    }
}
