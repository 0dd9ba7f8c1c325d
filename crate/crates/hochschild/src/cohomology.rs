//! Cohomology of the cochain complex: differential matrices, canonical
//! kernel/image/quotient bases, coboundary solving (optionally constrained
//! to a subspace), and the degree-0/1 interpretations.

use crate::algebra::{Bimodule, FiniteDimAlgebra};
use crate::cochain::{differential, Cochain, CochainError, TupleIter, MAX_DEGREE};
use crate::matrix::{vec_is_zero, IncrementalBasis, Mat};
use crate::scalar::{neg_one_pow, Rat};
use num_traits::Zero;

/// Matrix of the differential `HC^n -> HC^(n+1)` in the standard dense
/// coordinate bases (argument tuples in lexicographic order, module
/// coordinate fastest). Column `j` is the differential of the `j`-th basis
/// cochain.
pub fn differential_matrix(
    algebra: &FiniteDimAlgebra,
    module: &Bimodule,
    n: usize,
) -> Result<Mat, CochainError> {
    let d = algebra.dim();
    let m = module.dim();
    if module.algebra_dim() != d {
        return Err(CochainError::AlgebraDimMismatch {
            cochain: module.algebra_dim(),
            context: d,
        });
    }
    if n + 1 > MAX_DEGREE {
        return Err(CochainError::DegreeCap {
            degree: n + 1,
            max: MAX_DEGREE,
        });
    }
    let rows = d.pow(n as u32 + 1) * m;
    let cols = d.pow(n as u32) * m;
    let mut mat = Mat::zeros(rows, cols);
    let index_of = |tuple: &[usize]| -> usize {
        tuple.iter().fold(0usize, |acc, &t| acc * d + t)
    };
    let tail_sign = neg_one_pow(n as i64 + 1);
    let mut arg = vec![0usize; n];
    for tuple in TupleIter::new(d, n + 1) {
        let row_base = index_of(&tuple) * m;
        // a_0 * phi(a_1..a_n): module-coordinate mixing by the left action.
        arg.clone_from_slice(&tuple[1..]);
        let col_base = index_of(&arg) * m;
        let left = module.left_basis(tuple[0]);
        for r in 0..m {
            for s in 0..m {
                mat.add_to(row_base + r, col_base + s, left.get(r, s));
            }
        }
        // (-1)^(n+1) phi(a_0..a_(n-1)) * a_n.
        arg.clone_from_slice(&tuple[..n]);
        let col_base = index_of(&arg) * m;
        let right = module.right_basis(tuple[n]);
        for r in 0..m {
            for s in 0..m {
                let v = right.get(r, s);
                if !v.is_zero() {
                    mat.add_to(row_base + r, col_base + s, &(v * &tail_sign));
                }
            }
        }
        // Interior contractions scale the module coordinate identically.
        for i in 0..n {
            let sign = neg_one_pow(i as i64 + 1);
            arg[..i].clone_from_slice(&tuple[..i]);
            arg[i + 1..].clone_from_slice(&tuple[i + 2..]);
            for (k, c) in algebra
                .basis_product(tuple[i], tuple[i + 1])
                .iter()
                .enumerate()
            {
                if c.is_zero() {
                    continue;
                }
                arg[i] = k;
                let col_base = index_of(&arg) * m;
                let factor = &sign * c;
                for r in 0..m {
                    mat.add_to(row_base + r, col_base + r, &factor);
                }
            }
        }
    }
    Ok(mat)
}

/// Kernel/image/quotient data of the complex at one degree, with canonical
/// deterministic bases.
#[derive(Debug, Clone)]
pub struct CohomologySpace {
    degree: usize,
    algebra_dim: usize,
    module_dim: usize,
    cocycle_basis: Vec<Cochain>,
    coboundary_basis: Vec<Cochain>,
    coboundary_witnesses: Vec<Cochain>,
    class_representatives: Vec<Cochain>,
    /// Coboundary rows inserted first, then the class representatives, so
    /// coordinates over inserted vectors split as (boundary part, class part).
    tracker: IncrementalBasis,
}

impl CohomologySpace {
    /// Assembles a space from already-validated bases. The coboundary basis
    /// and the representatives together must be linearly independent and
    /// span the same space as the cocycle basis.
    pub(crate) fn from_parts(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        cocycle_basis: Vec<Cochain>,
        coboundary_basis: Vec<Cochain>,
        coboundary_witnesses: Vec<Cochain>,
        class_representatives: Vec<Cochain>,
    ) -> Self {
        assert_eq!(coboundary_basis.len(), coboundary_witnesses.len());
        assert_eq!(
            class_representatives.len(),
            cocycle_basis.len() - coboundary_basis.len(),
            "rank-nullity bookkeeping failed"
        );
        let width = algebra_dim.pow(degree as u32) * module_dim;
        let mut tracker = IncrementalBasis::new(width);
        for b in &coboundary_basis {
            tracker.insert(b.coeffs());
        }
        for r in &class_representatives {
            tracker.insert(r.coeffs());
        }
        assert_eq!(
            tracker.rank(),
            cocycle_basis.len(),
            "coboundaries plus representatives must span the cocycles"
        );
        CohomologySpace {
            degree,
            algebra_dim,
            module_dim,
            cocycle_basis,
            coboundary_basis,
            coboundary_witnesses,
            class_representatives,
            tracker,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.class_representatives.len()
    }

    pub fn cocycle_basis(&self) -> &[Cochain] {
        &self.cocycle_basis
    }

    pub fn coboundary_basis(&self) -> &[Cochain] {
        &self.coboundary_basis
    }

    /// `witness[k]` maps to `coboundary_basis[k]` under the differential.
    pub fn coboundary_witnesses(&self) -> &[Cochain] {
        &self.coboundary_witnesses
    }

    pub fn class_representatives(&self) -> &[Cochain] {
        &self.class_representatives
    }

    /// Coordinates of a cocycle's class over `class_representatives`.
    /// Returns `None` when the input does not lie in the cocycle space.
    pub fn class_coordinates(&self, phi: &Cochain) -> Option<Vec<Rat>> {
        if phi.degree() != self.degree
            || phi.algebra_dim() != self.algebra_dim
            || phi.module_dim() != self.module_dim
        {
            return None;
        }
        let (res, coeffs) = self.tracker.reduce(phi.coeffs());
        if !vec_is_zero(&res) {
            return None;
        }
        Some(coeffs[self.coboundary_basis.len()..].to_vec())
    }

    /// True when the cocycle lies in the image of the differential.
    pub fn is_coboundary(&self, phi: &Cochain) -> Option<bool> {
        self.class_coordinates(phi).map(|c| vec_is_zero(&c))
    }

    /// The cochain `sum coords[j] * class_representatives[j]`.
    pub fn combine_classes(&self, coords: &[Rat]) -> Cochain {
        assert_eq!(coords.len(), self.dim(), "class coordinate count mismatch");
        let mut acc = Cochain::zero(self.degree, self.algebra_dim, self.module_dim);
        for (c, rep) in coords.iter().zip(&self.class_representatives) {
            if !c.is_zero() {
                acc = acc.add(&rep.scale(c));
            }
        }
        acc
    }
}

/// Computes kernel, image, and canonical quotient representatives at one
/// degree. Representatives are the reduced-echelon completion of the
/// coboundary basis inside the cocycle space, so repeated runs produce
/// byte-identical bases.
pub fn cohomology(
    algebra: &FiniteDimAlgebra,
    module: &Bimodule,
    n: usize,
) -> Result<CohomologySpace, CochainError> {
    let d = algebra.dim();
    let m = module.dim();
    let width = d.pow(n as u32) * m;

    let delta_n = differential_matrix(algebra, module, n)?;
    let cocycle_vecs = delta_n.kernel_basis();

    // Canonical image basis with witnesses tracked through elimination.
    let mut image = IncrementalBasis::new(width);
    let mut coboundary_witnesses = Vec::new();
    let mut coboundary_basis = Vec::new();
    if n >= 1 {
        let delta_prev = differential_matrix(algebra, module, n - 1)?;
        for j in 0..delta_prev.cols() {
            image.insert(&delta_prev.column(j));
        }
        for (row, combo) in image.rows().iter().zip(image.combos()) {
            coboundary_basis.push(Cochain::from_coeffs(n, d, m, row.clone()));
            coboundary_witnesses.push(Cochain::from_coeffs(n - 1, d, m, combo.clone()));
        }
    }

    // Complete the coboundary echelon rows to an echelon basis of the
    // cocycle space; rows with new pivots are the class representatives.
    let boundary_pivots: Vec<usize> = image.pivots().to_vec();
    let mut full = image.clone();
    for v in &cocycle_vecs {
        full.insert(v);
    }
    let class_representatives: Vec<Cochain> = full
        .rows()
        .iter()
        .zip(full.pivots())
        .filter(|(_, p)| !boundary_pivots.contains(p))
        .map(|(row, _)| Cochain::from_coeffs(n, d, m, row.clone()))
        .collect();

    let cocycle_basis = cocycle_vecs
        .into_iter()
        .map(|v| Cochain::from_coeffs(n, d, m, v))
        .collect();
    Ok(CohomologySpace::from_parts(
        n,
        d,
        m,
        cocycle_basis,
        coboundary_basis,
        coboundary_witnesses,
        class_representatives,
    ))
}

/// Solves `differential(psi) = phi` for `psi` one degree down. With a
/// constraint basis, `psi` is sought inside its span by change of basis, so
/// `None` certifies non-solvability within that subspace, not just failure
/// of a heuristic.
pub fn solve_coboundary(
    algebra: &FiniteDimAlgebra,
    module: &Bimodule,
    phi: &Cochain,
    constraint: Option<&[Cochain]>,
) -> Result<Option<Cochain>, CochainError> {
    let d = algebra.dim();
    let m = module.dim();
    let n = phi.degree();
    if phi.algebra_dim() != d {
        return Err(CochainError::AlgebraDimMismatch {
            cochain: phi.algebra_dim(),
            context: d,
        });
    }
    if phi.module_dim() != m {
        return Err(CochainError::ModuleDimMismatch {
            cochain: phi.module_dim(),
            context: m,
        });
    }
    assert!(n >= 1, "coboundary solving needs degree >= 1");
    match constraint {
        None => {
            let mat = differential_matrix(algebra, module, n - 1)?;
            Ok(mat
                .solve(phi.coeffs())
                .map(|x| Cochain::from_coeffs(n - 1, d, m, x)))
        }
        Some(basis) => {
            for b in basis {
                if b.degree() != n - 1 {
                    return Err(CochainError::DegreeMismatch {
                        expected: n - 1,
                        got: b.degree(),
                    });
                }
                if b.algebra_dim() != d || b.module_dim() != m {
                    return Err(CochainError::AlgebraDimMismatch {
                        cochain: b.algebra_dim(),
                        context: d,
                    });
                }
            }
            // Columns are the differentials of the constraint basis; a
            // solution y gives psi = sum y_i basis_i inside the subspace.
            let mut cols = Vec::with_capacity(basis.len());
            for b in basis {
                cols.push(differential(algebra, module, b)?.into_coeffs());
            }
            let mat = Mat::from_columns(phi.coeffs().len(), cols);
            let Some(y) = mat.solve(phi.coeffs()) else {
                return Ok(None);
            };
            let mut psi = Cochain::zero(n - 1, d, m);
            for (c, b) in y.iter().zip(basis) {
                if !c.is_zero() {
                    psi = psi.add(&b.scale(c));
                }
            }
            Ok(Some(psi))
        }
    }
}

/// Dimensions of the derivation space (kernel in degree 1) and the inner
/// derivations (image from degree 0). Their difference is the degree-1
/// cohomology dimension.
pub fn derivation_quotient(
    algebra: &FiniteDimAlgebra,
    module: &Bimodule,
) -> Result<(usize, usize), CochainError> {
    let delta1 = differential_matrix(algebra, module, 1)?;
    let delta0 = differential_matrix(algebra, module, 0)?;
    let der = delta1.cols() - delta1.rank();
    let inner = delta0.rank();
    Ok((der, inner))
}

/// Dimension of the centralizer of the algebra inside the module: solutions
/// of `a*z = z*a` for every basis element `a`. For the regular bimodule this
/// is the center, and it equals the degree-0 cohomology dimension.
pub fn center_dim(algebra: &FiniteDimAlgebra, module: &Bimodule) -> usize {
    let d = algebra.dim();
    let m = module.dim();
    let mut stacked = Mat::zeros(d * m, m);
    for i in 0..d {
        let diff = module.left_basis(i).sub(module.right_basis(i));
        for r in 0..m {
            for s in 0..m {
                stacked.set(i * m + r, s, diff.get(r, s).clone());
            }
        }
    }
    m - stacked.rank()
}
