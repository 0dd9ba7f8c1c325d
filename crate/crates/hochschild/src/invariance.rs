//! Two notions of invariance under a finite group action and the map
//! comparing them.
//!
//! The invariant cochains form a subcomplex (averaging commutes with the
//! differential); its cohomology is computed in invariant coordinates. The
//! action also descends to cohomology classes, whose fixed subspace is the
//! second notion. Sending an invariant cocycle's class in the subcomplex to
//! its ordinary class defines the comparison map, materialized here as an
//! explicit rational matrix so that injectivity and surjectivity are read
//! off an exact rank.

use crate::algebra::{Bimodule, FiniteDimAlgebra};
use crate::cochain::{differential, ActionError, Cochain, GroupAction};
use crate::cohomology::{cohomology, CohomologySpace};
use crate::matrix::{IncrementalBasis, Mat};
use crate::scalar::Rat;
use num_traits::Zero;

/// One degree of the invariant subcomplex: a basis of the fixed cochains and
/// the differential written in invariant coordinates.
#[derive(Debug, Clone)]
pub struct InvariantComplexSlice {
    degree: usize,
    invariant_basis: Vec<Cochain>,
    /// Matrix of the differential from this slice's coordinates into the
    /// degree-(n+1) invariant coordinates.
    restricted_differential: Mat,
}

impl InvariantComplexSlice {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn invariant_basis(&self) -> &[Cochain] {
        &self.invariant_basis
    }

    pub fn dim(&self) -> usize {
        self.invariant_basis.len()
    }

    pub fn restricted_differential(&self) -> &Mat {
        &self.restricted_differential
    }

    /// Reconstructs the cochain with the given invariant coordinates.
    pub fn lift(&self, coords: &[Rat], algebra_dim: usize, module_dim: usize) -> Cochain {
        assert_eq!(coords.len(), self.dim(), "invariant coordinate mismatch");
        let mut acc = Cochain::zero(self.degree, algebra_dim, module_dim);
        for (c, b) in coords.iter().zip(&self.invariant_basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Matrix of the averaging projector on degree-`n` cochains, column by
/// column over the standard dense basis.
fn averaging_matrix(action: &GroupAction, n: usize) -> Result<Mat, ActionError> {
    let d = action.algebra_dim();
    let m = action.module_dim();
    let size = d.pow(n as u32) * m;
    let mut cols = Vec::with_capacity(size);
    for j in 0..size {
        let mut e = Cochain::zero(n, d, m);
        e.coeffs_mut()[j] = Rat::from_integer(1.into());
        cols.push(action.average(&e)?.into_coeffs());
    }
    Ok(Mat::from_columns(size, cols))
}

/// Canonical basis of the fixed cochains in degree `n`: the kernel of
/// (average − identity).
fn invariant_basis(action: &GroupAction, n: usize) -> Result<Vec<Cochain>, ActionError> {
    let d = action.algebra_dim();
    let m = action.module_dim();
    let size = d.pow(n as u32) * m;
    let mut proj = averaging_matrix(action, n)?;
    for j in 0..size {
        let v = proj.get(j, j) - Rat::from_integer(1.into());
        proj.set(j, j, v);
    }
    Ok(proj
        .kernel_basis()
        .into_iter()
        .map(|v| Cochain::from_coeffs(n, d, m, v))
        .collect())
}

/// Computes the degree-`n` slice of the invariant subcomplex: fixed-cochain
/// basis and the differential re-expressed in fixed coordinates (legal since
/// the differential preserves invariance).
pub fn invariant_subcomplex(
    action: &GroupAction,
    algebra: &FiniteDimAlgebra,
    module: &Bimodule,
    n: usize,
) -> Result<InvariantComplexSlice, ActionError> {
    let basis = invariant_basis(action, n)?;
    let next_basis = invariant_basis(action, n + 1)?;
    let next_width = module.dim() * algebra.dim().pow(n as u32 + 1);
    let next_mat = Mat::from_columns(
        next_width,
        next_basis.iter().map(|b| b.coeffs().to_vec()).collect(),
    );
    let mut images = Vec::with_capacity(basis.len());
    for b in &basis {
        images.push(differential(algebra, module, b)?.into_coeffs());
    }
    let image_mat = Mat::from_columns(next_width, images);
    let solutions = next_mat.solve_multi(&image_mat);
    let mut restricted = Mat::zeros(next_basis.len(), basis.len());
    for (j, sol) in solutions.into_iter().enumerate() {
        let sol = sol.expect("differential must preserve the invariant subspace");
        for (i, v) in sol.into_iter().enumerate() {
            restricted.set(i, j, v);
        }
    }
    Ok(InvariantComplexSlice {
        degree: n,
        invariant_basis: basis,
        restricted_differential: restricted,
    })
}

/// Cohomology of the invariant subcomplex at degree `n`, with all bases
/// lifted back to genuine cochains.
pub fn invariant_cohomology(
    action: &GroupAction,
    algebra: &FiniteDimAlgebra,
    module: &Bimodule,
    n: usize,
) -> Result<CohomologySpace, ActionError> {
    let d = algebra.dim();
    let m = module.dim();
    let slice = invariant_subcomplex(action, algebra, module, n)?;
    let k = slice.dim();

    let cocycle_coords = slice.restricted_differential().kernel_basis();

    // Image of the previous restricted differential, with witnesses, all in
    // invariant coordinates.
    let mut image = IncrementalBasis::new(k);
    let mut coboundary_basis = Vec::new();
    let mut witnesses = Vec::new();
    if n >= 1 {
        let prev = invariant_subcomplex(action, algebra, module, n - 1)?;
        let prev_mat = prev.restricted_differential();
        debug_assert_eq!(prev_mat.rows(), k);
        for j in 0..prev_mat.cols() {
            image.insert(&prev_mat.column(j));
        }
        for (row, combo) in image.rows().iter().zip(image.combos()) {
            coboundary_basis.push(slice.lift(row, d, m));
            witnesses.push(prev.lift(combo, d, m));
        }
    }

    let boundary_pivots: Vec<usize> = image.pivots().to_vec();
    let mut full = image.clone();
    for v in &cocycle_coords {
        full.insert(v);
    }
    let representatives: Vec<Cochain> = full
        .rows()
        .iter()
        .zip(full.pivots())
        .filter(|(_, p)| !boundary_pivots.contains(p))
        .map(|(row, _)| slice.lift(row, d, m))
        .collect();

    let cocycle_basis: Vec<Cochain> = cocycle_coords
        .iter()
        .map(|v| slice.lift(v, d, m))
        .collect();
    Ok(CohomologySpace::from_parts(
        n,
        d,
        m,
        cocycle_basis,
        coboundary_basis,
        witnesses,
        representatives,
    ))
}

/// The fixed subspace of the induced action on degree-`n` cohomology
/// classes.
#[derive(Debug, Clone)]
pub struct InvariantClasses {
    degree: usize,
    /// Fixed vectors in class coordinates over the ambient space's
    /// representatives.
    fixed_coordinates: Vec<Vec<Rat>>,
    /// The fixed vectors materialized as cocycles.
    representatives: Vec<Cochain>,
    /// Induced class-action matrix per generator, in the order reported by
    /// the action's generator list.
    induced: Vec<Mat>,
    full: CohomologySpace,
}

impl InvariantClasses {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.fixed_coordinates.len()
    }

    pub fn fixed_coordinates(&self) -> &[Vec<Rat>] {
        &self.fixed_coordinates
    }

    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    pub fn induced_matrices(&self) -> &[Mat] {
        &self.induced
    }

    /// The ambient (non-equivariant) cohomology the classes live in.
    pub fn ambient(&self) -> &CohomologySpace {
        &self.full
    }
}

/// Computes the induced action on cohomology classes and returns its fixed
/// subspace. Well-definedness — cocycles map to cocycles, coboundaries to
/// coboundaries — is checked exactly for every generator before anything is
/// fixed.
pub fn invariant_classes(
    action: &GroupAction,
    algebra: &FiniteDimAlgebra,
    module: &Bimodule,
    n: usize,
) -> Result<InvariantClasses, ActionError> {
    let full = cohomology(algebra, module, n)?;
    let h = full.dim();

    for &g in action.generators() {
        for xi in full.cocycle_basis() {
            let moved = action.act_on_cochain(g, xi)?;
            if !differential(algebra, module, &moved)?.is_zero() {
                return Err(ActionError::InducedActionFailure {
                    element: g,
                    detail: "a cocycle was not sent to a cocycle".into(),
                });
            }
        }
        for beta in full.coboundary_basis() {
            let moved = action.act_on_cochain(g, beta)?;
            if full.is_coboundary(&moved) != Some(true) {
                return Err(ActionError::InducedActionFailure {
                    element: g,
                    detail: "a coboundary was not sent to a coboundary".into(),
                });
            }
        }
    }

    // Induced matrices over generators; generators suffice for a fixed
    // space because fixing each generator fixes the group they generate.
    let mut induced = Vec::new();
    for &g in action.generators() {
        let mut mat = Mat::zeros(h, h);
        for (j, rep) in full.class_representatives().iter().enumerate() {
            let moved = action.act_on_cochain(g, rep)?;
            let coords = full
                .class_coordinates(&moved)
                .expect("action image of a cocycle must stay a cocycle");
            for (i, v) in coords.into_iter().enumerate() {
                mat.set(i, j, v);
            }
        }
        induced.push(mat);
    }

    // Fixed space: joint kernel of (induced − identity) stacked over
    // generators.
    let mut stacked = Mat::zeros(h * induced.len(), h);
    for (blk, mat) in induced.iter().enumerate() {
        for i in 0..h {
            for j in 0..h {
                let mut v = mat.get(i, j).clone();
                if i == j {
                    v = v - Rat::from_integer(1.into());
                }
                stacked.set(blk * h + i, j, v);
            }
        }
    }
    let fixed_coordinates = if induced.is_empty() {
        Mat::identity(h)
            .kernel_basis()
            .into_iter()
            .collect::<Vec<_>>()
    } else {
        stacked.kernel_basis()
    };
    let representatives = fixed_coordinates
        .iter()
        .map(|v| full.combine_classes(v))
        .collect();
    Ok(InvariantClasses {
        degree: n,
        fixed_coordinates,
        representatives,
        induced,
        full,
    })
}

/// Comparison of the two invariance notions at one degree.
#[derive(Debug, Clone)]
pub struct IotaReport {
    pub degree: usize,
    /// Dimension of the cohomology of invariant cochains.
    pub dim_invariant_cohomology: usize,
    /// Dimension of the fixed classes inside ordinary cohomology.
    pub dim_fixed_classes: usize,
    /// Matrix of the comparison map from invariant-cohomology classes to
    /// fixed-class coordinates.
    pub matrix: Mat,
    pub injective: bool,
    pub surjective: bool,
}

/// Builds the comparison map explicitly: each invariant-cohomology
/// representative is an invariant cocycle; its ordinary class is fixed under
/// the induced action, hence expressible over the fixed-class basis. The
/// matrix of those expressions decides injectivity and surjectivity by exact
/// rank.
pub fn iota_check(
    action: &GroupAction,
    algebra: &FiniteDimAlgebra,
    module: &Bimodule,
    n: usize,
) -> Result<IotaReport, ActionError> {
    let hg = invariant_cohomology(action, algebra, module, n)?;
    let classes = invariant_classes(action, algebra, module, n)?;
    let full = classes.ambient();
    let h = full.dim();
    let fixed = Mat::from_columns(h, classes.fixed_coordinates().to_vec());

    let mut images = Vec::with_capacity(hg.dim());
    for rep in hg.class_representatives() {
        let coords = full
            .class_coordinates(rep)
            .expect("invariant representative must be a cocycle in the full complex");
        images.push(coords);
    }
    let image_mat = Mat::from_columns(h, images);
    let solutions = fixed.solve_multi(&image_mat);
    let mut matrix = Mat::zeros(classes.dim(), hg.dim());
    for (j, sol) in solutions.into_iter().enumerate() {
        let sol =
            sol.expect("the class of an invariant cocycle must be fixed by the induced action");
        for (i, v) in sol.into_iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    let rank = matrix.rank();
    Ok(IotaReport {
        degree: n,
        dim_invariant_cohomology: hg.dim(),
        dim_fixed_classes: classes.dim(),
        injective: rank == hg.dim(),
        surjective: rank == classes.dim(),
        matrix,
    })
}

/// Stock actions on the stock algebras, each with its regular bimodule.
/// These cover the involutions used throughout the test corpus.
pub mod actions {
    use super::*;
    use crate::algebra::models;
    use crate::scalar::rint;

    /// Diagonal matrix with the given signs.
    fn diag_signs(signs: &[i64]) -> Mat {
        Mat::from_fn(signs.len(), signs.len(), |i, j| {
            if i == j {
                rint(signs[i])
            } else {
                Rat::zero()
            }
        })
    }

    fn involution(
        algebra: FiniteDimAlgebra,
        mat: Mat,
    ) -> (FiniteDimAlgebra, Bimodule, GroupAction) {
        let module = Bimodule::regular(&algebra);
        let action = GroupAction::from_generators(&algebra, &module, vec![(mat.clone(), mat)], 8)
            .expect("stock involution must validate");
        (algebra, module, action)
    }

    /// Dual numbers with the sign flip on the nilpotent generator.
    pub fn dual_numbers_sign_flip() -> (FiniteDimAlgebra, Bimodule, GroupAction) {
        involution(models::dual_numbers(), diag_signs(&[1, -1]))
    }

    /// Group algebra of the order-2 group with the automorphism negating the
    /// nontrivial group element (swapping the two idempotents).
    pub fn group_algebra_swap() -> (FiniteDimAlgebra, Bimodule, GroupAction) {
        involution(models::group_algebra_cyclic(2), diag_signs(&[1, -1]))
    }

    /// Truncated polynomials of nilpotency order `k` with the sign flip on
    /// the variable (basis element `x^i` picks up `(-1)^i`).
    pub fn truncated_polynomial_sign_flip(k: usize) -> (FiniteDimAlgebra, Bimodule, GroupAction) {
        let signs: Vec<i64> = (0..k).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        involution(models::truncated_polynomial(k), diag_signs(&signs))
    }

    /// 2×2 matrices with conjugation by diag(1, −1): the off-diagonal matrix
    /// units change sign.
    pub fn matrix_algebra_conjugation() -> (FiniteDimAlgebra, Bimodule, GroupAction) {
        involution(models::matrix_algebra(2), diag_signs(&[1, -1, -1, 1]))
    }

    /// Trivial action on any stock algebra.
    pub fn trivial(algebra: FiniteDimAlgebra) -> (FiniteDimAlgebra, Bimodule, GroupAction) {
        let module = Bimodule::regular(&algebra);
        let action = GroupAction::trivial(&algebra, &module);
        (algebra, module, action)
    }
}
