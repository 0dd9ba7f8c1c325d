//! Invariant exterior algebra of a homogeneous quotient: given a Lie
//! algebra g, a subalgebra h, and an isotropy action (infinitesimal via
//! ad(h), or a finite matrix group), compute the dimensions of the
//! invariants of Λ^k(g/h) per degree — all in exact rational arithmetic.

use crate::matrix::{vec_is_zero, IncrementalBasis, Insert, Mat};
use crate::scalar::Rat;
use num_traits::{One, Zero};

/// Cap on the quotient dimension: Λ^k bases grow as binomial coefficients.
pub const MAX_QUOTIENT_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("structure constants have wrong shape: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("brackets are not antisymmetric at ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("Jacobi identity fails at ({i},{j},{k})")]
    JacobiFails { i: usize, j: usize, k: usize },
    #[error("[h,h] leaves the span of h at basis pair ({i},{j})")]
    NotSubalgebra { i: usize, j: usize },
    #[error("isotropy matrix {index} is not a Lie-algebra automorphism preserving h")]
    NotAutomorphism { index: usize },
    #[error("isotropy matrices are not closed under multiplication at index {index}")]
    NotAGroup { index: usize },
    #[error("quotient dimension {0} exceeds the cap {MAX_QUOTIENT_DIM}")]
    ResourceLimit(usize),
}

/// How the isotropy acts on the quotient.
#[derive(Debug, Clone)]
pub enum Isotropy {
    /// Infinitesimal invariance: joint kernel of the ad(h)-operators.
    /// Equivalent to group invariance for a connected isotropy group.
    Connected,
    /// Fixed space of an explicit finite group of automorphisms.
    FiniteGroup { elements: Vec<Mat> },
}

/// A validated pair (g, h) with its isotropy action.
#[derive(Debug, Clone)]
pub struct LiePair {
    g_dim: usize,
    brackets: Vec<Rat>,
    h_basis: Vec<Vec<Rat>>,
    isotropy: Isotropy,
}

impl LiePair {
    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    pub fn h_basis(&self) -> &[Vec<Rat>] {
        &self.h_basis
    }

    pub fn isotropy(&self) -> &Isotropy {
        &self.isotropy
    }

    /// Structure constant f_{ij}^k with [e_i, e_j] = Σ_k f_{ij}^k e_k.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.brackets[(i * self.g_dim + j) * self.g_dim + k]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let d = self.g_dim;
        let mut out = vec![Rat::zero(); d];
        for i in 0..d {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, slot) in out.iter_mut().enumerate() {
                    let f = self.c(i, j, k);
                    if !f.is_zero() {
                        *slot += &uv * f;
                    }
                }
            }
        }
        out
    }
}

/// Validates structure constants, the subalgebra condition, and (for finite
/// isotropy) that the matrices form a group of automorphisms preserving h.
pub fn make_lie_pair(
    g_dim: usize,
    brackets: Vec<Rat>,
    h_basis: Vec<Vec<Rat>>,
    isotropy: Isotropy,
) -> Result<LiePair, LieError> {
    let expected = g_dim * g_dim * g_dim;
    if brackets.len() != expected {
        return Err(LieError::ShapeMismatch {
            expected,
            got: brackets.len(),
        });
    }
    for v in &h_basis {
        if v.len() != g_dim {
            return Err(LieError::ShapeMismatch {
                expected: g_dim,
                got: v.len(),
            });
        }
    }
    let pair = LiePair {
        g_dim,
        brackets,
        h_basis,
        isotropy,
    };
    // Antisymmetry.
    for i in 0..g_dim {
        for j in i..g_dim {
            for k in 0..g_dim {
                if *pair.c(i, j, k) != -pair.c(j, i, k) {
                    return Err(LieError::NotAntisymmetric { i, j });
                }
            }
        }
    }
    // Jacobi: [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0.
    for i in 0..g_dim {
        for j in 0..g_dim {
            for k in 0..g_dim {
                for l in 0..g_dim {
                    let mut total = Rat::zero();
                    for m in 0..g_dim {
                        total += pair.c(j, k, m) * pair.c(i, m, l);
                        total += pair.c(k, i, m) * pair.c(j, m, l);
                        total += pair.c(i, j, m) * pair.c(k, m, l);
                    }
                    if !total.is_zero() {
                        return Err(LieError::JacobiFails { i, j, k });
                    }
                }
            }
        }
    }
    // h is a subalgebra.
    let mut h_span = IncrementalBasis::new(g_dim);
    for v in &pair.h_basis {
        h_span.insert(v);
    }
    for (i, u) in pair.h_basis.iter().enumerate() {
        for (j, v) in pair.h_basis.iter().enumerate() {
            if !h_span.contains(&pair.bracket(u, v)) {
                return Err(LieError::NotSubalgebra { i, j });
            }
        }
    }
    // Finite isotropy: automorphisms preserving h, closed under products.
    if let Isotropy::FiniteGroup { elements } = &pair.isotropy {
        for (index, m) in elements.iter().enumerate() {
            if m.rows() != g_dim || m.cols() != g_dim || m.inverse().is_none() {
                return Err(LieError::NotAutomorphism { index });
            }
            // Automorphism: M[e_i, e_j] = [M e_i, M e_j].
            for i in 0..g_dim {
                for j in 0..g_dim {
                    let lhs = m.mul_vec(&(0..g_dim).map(|k| pair.c(i, j, k).clone()).collect::<Vec<_>>());
                    let rhs = pair.bracket(&m.column(i), &m.column(j));
                    if lhs != rhs {
                        return Err(LieError::NotAutomorphism { index });
                    }
                }
            }
            // Preserves h.
            for v in &pair.h_basis {
                if !h_span.contains(&m.mul_vec(v)) {
                    return Err(LieError::NotAutomorphism { index });
                }
            }
        }
        for (index, m) in elements.iter().enumerate() {
            for m2 in elements.iter() {
                let prod = m.mul(m2);
                if !elements.iter().any(|e| *e == prod) {
                    return Err(LieError::NotAGroup { index });
                }
            }
        }
    }
    Ok(pair)
}

/// Ascending k-subsets of 0..m.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Advance to the next combination.
        let mut t = k;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            if current[t] != t + m - k {
                break;
            }
            if t == 0 {
                return out;
            }
        }
        current[t] += 1;
        for u in t + 1..k {
            current[u] = current[u - 1] + 1;
        }
    }
}

/// The quotient structure: a section of g/h and the projection onto its
/// coordinates.
struct Quotient {
    tracker: IncrementalBasis,
    h_rank: usize,
    section: Vec<usize>,
}

impl Quotient {
    fn build(pair: &LiePair) -> Quotient {
        let d = pair.g_dim;
        // First pass: find an independent subset of h and the unit vectors
        // completing it to a basis of g.
        let mut scratch = IncrementalBasis::new(d);
        let mut independent_h: Vec<Vec<Rat>> = Vec::new();
        for v in &pair.h_basis {
            if let Insert::Independent = scratch.insert(v) {
                independent_h.push(v.clone());
            }
        }
        let h_rank = independent_h.len();
        let mut section = Vec::new();
        for j in 0..d {
            if let Insert::Independent = scratch.insert(&unit_vec(d, j)) {
                section.push(j);
            }
        }
        // Second pass: a tracker whose insertion coordinates are exactly
        // (h part, quotient part) — every insertion independent.
        let mut tracker = IncrementalBasis::new(d);
        for v in &independent_h {
            tracker.insert(v);
        }
        for &j in &section {
            tracker.insert(&unit_vec(d, j));
        }
        Quotient {
            tracker,
            h_rank,
            section,
        }
    }

    fn dim(&self) -> usize {
        self.section.len()
    }

    /// Coordinates of `v + h` over the section.
    fn project(&self, v: &[Rat]) -> Vec<Rat> {
        let (residual, combo) = self.tracker.reduce(v);
        assert!(
            vec_is_zero(&residual),
            "tracker spans all of g by construction"
        );
        combo[self.h_rank..].to_vec()
    }

    /// The induced matrix of a linear map given column images in g.
    fn induced(&self, images: impl Iterator<Item = Vec<Rat>>) -> Mat {
        let cols: Vec<Vec<Rat>> = images.map(|w| self.project(&w)).collect();
        Mat::from_columns(self.dim(), cols)
    }
}

/// Derivation extension of `a` to Λ^k: acts as a sum over slots.
fn exterior_derivation(a: &Mat, k: usize) -> Mat {
    let m = a.rows();
    let basis = subsets(m, k);
    let index_of = |s: &[usize]| basis.binary_search_by(|probe| probe.as_slice().cmp(s)).ok();
    let mut out = Mat::zeros(basis.len(), basis.len());
    for (col, subset) in basis.iter().enumerate() {
        for t in 0..k {
            for i in 0..m {
                let w = a.get(i, subset[t]);
                if w.is_zero() {
                    continue;
                }
                let mut replaced = subset.clone();
                replaced[t] = i;
                // Sort with sign; duplicates vanish.
                let mut odd = false;
                let mut ok = true;
                for u in 1..replaced.len() {
                    let mut v = u;
                    while v > 0 && replaced[v - 1] >= replaced[v] {
                        if replaced[v - 1] == replaced[v] {
                            ok = false;
                            break;
                        }
                        replaced.swap(v - 1, v);
                        odd = !odd;
                        v -= 1;
                    }
                    if !ok {
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let row = index_of(&replaced).expect("sorted subset is in the basis");
                let signed = if odd { -w.clone() } else { w.clone() };
                out.add_to(row, col, &signed);
            }
        }
    }
    out
}

/// Multiplicative extension of `a` to Λ^k: entries are k×k minors.
fn exterior_power(a: &Mat, k: usize) -> Mat {
    let basis = subsets(a.rows(), k);
    Mat::from_fn(basis.len(), basis.len(), |r, c| {
        a.minor_det(&basis[r], &basis[c])
    })
}

/// Dimensions of the isotropy invariants of Λ^k(g/h) for k = 0..max_degree.
pub fn invariant_exterior_dims(pair: &LiePair, max_degree: usize) -> Result<Vec<usize>, LieError> {
    let quotient = Quotient::build(pair);
    let m = quotient.dim();
    if m > MAX_QUOTIENT_DIM {
        return Err(LieError::ResourceLimit(m));
    }
    let d = pair.g_dim;
    // The operators (Connected) or group matrices (FiniteGroup) on g/h.
    enum Induced {
        Operators(Vec<Mat>),
        Group(Vec<Mat>),
    }
    let induced = match &pair.isotropy {
        Isotropy::Connected => {
            let mut h_only = IncrementalBasis::new(d);
            let mut ops = Vec::new();
            for h_vec in &pair.h_basis {
                if let Insert::Dependent { .. } = h_only.insert(h_vec) {
                    continue;
                }
                let images = quotient.section.iter().map(|&j| {
                    let mut unit = vec![Rat::zero(); d];
                    unit[j] = Rat::one();
                    pair.bracket(h_vec, &unit)
                });
                ops.push(quotient.induced(images));
            }
            Induced::Operators(ops)
        }
        Isotropy::FiniteGroup { elements } => {
            let mats = elements
                .iter()
                .map(|g| {
                    let images = quotient
                        .section
                        .iter()
                        .map(|&j| g.mul_vec(&unit_vec(d, j)));
                    quotient.induced(images)
                })
                .collect();
            Induced::Group(mats)
        }
    };
    let mut dims = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        if k > m {
            dims.push(0);
            continue;
        }
        let size = subsets(m, k).len();
        let stacked: Vec<Mat> = match &induced {
            Induced::Operators(ops) => ops.iter().map(|a| exterior_derivation(a, k)).collect(),
            Induced::Group(mats) => mats
                .iter()
                .map(|g| exterior_power(g, k).sub(&Mat::identity(size)))
                .collect(),
        };
        if stacked.is_empty() {
            dims.push(size);
            continue;
        }
        let mut big = Mat::zeros(stacked.len() * size, size);
        for (b, block) in stacked.iter().enumerate() {
            for r in 0..size {
                for c in 0..size {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        big.set(b * size + r, c, v.clone());
                    }
                }
            }
        }
        dims.push(big.kernel_basis().len());
    }
    Ok(dims)
}

fn unit_vec(d: usize, j: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); d];
    v[j] = Rat::one();
    v
}

/// Stock structure constants used by tests and shipped examples.
pub mod examples {
    use super::*;
    use crate::scalar::rint;

    /// so(3): [e₁,e₂] = e₃, [e₂,e₃] = e₁, [e₃,e₁] = e₂.
    pub fn so3_brackets() -> Vec<Rat> {
        let mut f = vec![Rat::zero(); 27];
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            f[(i * 3 + j) * 3 + k] = rint(v);
        };
        set(0, 1, 2, 1);
        set(1, 0, 2, -1);
        set(1, 2, 0, 1);
        set(2, 1, 0, -1);
        set(2, 0, 1, 1);
        set(0, 2, 1, -1);
        f
    }

    /// Heisenberg: [e₁,e₂] = e₃, e₃ central.
    pub fn heisenberg_brackets() -> Vec<Rat> {
        let mut f = vec![Rat::zero(); 27];
        f[(0 * 3 + 1) * 3 + 2] = rint(1);
        f[(1 * 3 + 0) * 3 + 2] = rint(-1);
        f
    }

    /// The abelian algebra of any dimension.
    pub fn abelian_brackets(d: usize) -> Vec<Rat> {
        vec![Rat::zero(); d * d * d]
    }

    /// The rotation pair: g = so(3), h = span(e₃), connected isotropy.
    pub fn sphere_pair() -> LiePair {
        make_lie_pair(
            3,
            so3_brackets(),
            vec![vec![rint(0), rint(0), rint(1)]],
            Isotropy::Connected,
        )
        .expect("so(3) with h = span(e₃) is a valid pair")
    }

    /// Heisenberg modulo its center, connected isotropy.
    pub fn heisenberg_center_pair() -> LiePair {
        make_lie_pair(
            3,
            heisenberg_brackets(),
            vec![vec![rint(0), rint(0), rint(1)]],
            Isotropy::Connected,
        )
        .expect("the center of the Heisenberg algebra is a subalgebra")
    }
}
