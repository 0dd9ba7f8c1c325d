//! Order-by-order formal deformations of the polynomial multiplication:
//! associativity defects, obstruction cocycles, invariant continuation, and
//! equivalence-step solving. The deformation parameter is never symbolic —
//! a deformation of order `k` is the finite list `[μ₁,…,μ_k]` of degree-2
//! cochains, with `μ₀` implicitly the multiplication.

use crate::hkr::hkr_decompose;
use crate::linear_action::LinearAction;
use crate::matrix::Mat;
use crate::multidiff::{
    compose_at, gerstenhaber_bracket, MultiDiffCochain, SymbolError,
};
use crate::poly::Poly;
use crate::polyvector::PolyvectorField;
use crate::scalar::{factorial, rat, Rat};
use crate::symbol_solve::{solve_symbol_coboundary, Bounds};
use num_traits::{One, Zero};

#[derive(Debug, Clone, thiserror::Error)]
pub enum DeformError {
    #[error("order {got} out of range 1..={max}")]
    OrderOutOfRange { got: usize, max: usize },
    #[error("deformation term at order {order} must have degree 2, got {got}")]
    WrongTermDegree { order: usize, got: usize },
    #[error("deformation term at order {order} is not fixed by the declared action")]
    InvarianceViolated { order: usize },
    #[error("deformation is not associative at order {order}")]
    NotAssociativeToOrder { order: usize },
    #[error(
        "no continuation at order {order} within bounds (invariant required: \
         {invariant_required}, target invariant: {target_invariant}, \
         unconstrained solvable: {unconstrained_solvable})"
    )]
    Obstructed {
        order: usize,
        invariant_required: bool,
        target_invariant: bool,
        unconstrained_solvable: bool,
        bounds: Bounds,
    },
    #[error("difference of the order-{order} terms is not a cocycle")]
    NotCocycle { order: usize },
    #[error("no equivalence transformation within bounds at order {order}")]
    NoEquivalenceWithinBounds {
        order: usize,
        bounds: Bounds,
        /// Nonzero polyvector class certifying the obstruction, when the
        /// residual decomposes.
        residual_class: Option<PolyvectorField>,
        residual: MultiDiffCochain,
    },
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("deformations live over different variable counts: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// A formal deformation `μ = μ₀ + λμ₁ + ⋯ + λ^k μ_k` of the polynomial
/// multiplication, optionally tagged with a finite linear group under which
/// every term is fixed.
#[derive(Debug, Clone)]
pub struct FormalDeformation {
    n_vars: usize,
    terms: Vec<MultiDiffCochain>,
    invariance: Option<LinearAction>,
}

impl FormalDeformation {
    pub fn new(
        n_vars: usize,
        terms: Vec<MultiDiffCochain>,
        invariance: Option<LinearAction>,
    ) -> Result<Self, DeformError> {
        for (i, term) in terms.iter().enumerate() {
            if term.degree() != 2 {
                return Err(DeformError::WrongTermDegree {
                    order: i + 1,
                    got: term.degree(),
                });
            }
            if term.n_vars() != n_vars {
                return Err(DeformError::VariableCountMismatch(n_vars, term.n_vars()));
            }
            if let Some(action) = &invariance {
                if !action.is_invariant_multidiff(term) {
                    return Err(DeformError::InvarianceViolated { order: i + 1 });
                }
            }
        }
        Ok(FormalDeformation {
            n_vars,
            terms,
            invariance,
        })
    }

    /// The undeformed multiplication alone.
    pub fn undeformed(n_vars: usize) -> Self {
        FormalDeformation {
            n_vars,
            terms: Vec::new(),
            invariance: None,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Highest order carried: the deformation is `μ₀ + λμ₁ + ⋯ + λ^k μ_k`.
    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[MultiDiffCochain] {
        &self.terms
    }

    pub fn invariance(&self) -> Option<&LinearAction> {
        self.invariance.as_ref()
    }

    /// `μ_j`, with `μ₀` the multiplication. Panics beyond the carried order.
    pub fn mu(&self, j: usize) -> MultiDiffCochain {
        if j == 0 {
            MultiDiffCochain::multiplication(self.n_vars)
        } else {
            self.terms[j - 1].clone()
        }
    }

    /// Extends by one more order; the new term is re-validated.
    pub fn extended(&self, mu_next: MultiDiffCochain) -> Result<FormalDeformation, DeformError> {
        let mut terms = self.terms.clone();
        terms.push(mu_next);
        FormalDeformation::new(self.n_vars, terms, self.invariance.clone())
    }

    /// The `λ^j` coefficient of the associator
    /// `μ(μ(f,g),h) − μ(f,μ(g,h))`: zero for every `j ≤ k` exactly when the
    /// deformation is associative to its carried order.
    pub fn associativity_defect(&self, j: usize) -> Result<MultiDiffCochain, DeformError> {
        if j < 1 || j > self.order() {
            return Err(DeformError::OrderOutOfRange {
                got: j,
                max: self.order(),
            });
        }
        let mut defect = MultiDiffCochain::zero(3, self.n_vars);
        for a in 0..=j {
            let b = j - a;
            let mu_a = self.mu(a);
            let mu_b = self.mu(b);
            defect = defect
                .add(&compose_at(&mu_a, 1, &mu_b)?)
                .sub(&compose_at(&mu_a, 2, &mu_b)?);
        }
        Ok(defect)
    }

    /// The obstruction 3-cochain governing continuation to order `k+1`:
    /// `R_{k+1} = ½ Σ_{l=1}^{k} [μ_l, μ_{k+1−l}]`. Associativity through the
    /// carried order is a checked precondition; the result is always a
    /// cocycle, and is fixed by the declared action when one is present.
    pub fn obstruction(&self) -> Result<MultiDiffCochain, DeformError> {
        for j in 1..=self.order() {
            if !self.associativity_defect(j)?.is_zero() {
                return Err(DeformError::NotAssociativeToOrder { order: j });
            }
        }
        let k = self.order();
        let mut sum = MultiDiffCochain::zero(3, self.n_vars);
        for l in 1..=k {
            sum = sum.add(&gerstenhaber_bracket(&self.mu(l), &self.mu(k + 1 - l))?);
        }
        Ok(sum.scale(&rat(1, 2)))
    }

    /// Solves `δμ_{k+1} = R_{k+1}` inside the bounded window, restricted to
    /// invariant cochains when the deformation carries an action (the
    /// returned term is then the Reynolds average of a solution, which is
    /// exact because averaging is a chain map fixing the invariant
    /// obstruction). On success the extended deformation's defect at order
    /// `k+1` vanishes identically.
    pub fn continue_deformation(&self, bounds: &Bounds) -> Result<MultiDiffCochain, DeformError> {
        let r = self.obstruction()?;
        let order = self.order() + 1;
        let unconstrained = solve_symbol_coboundary(&r, bounds);
        let candidate = match (&self.invariance, unconstrained) {
            (None, Some(psi)) => psi,
            (Some(action), Some(psi)) => {
                if action.is_invariant_multidiff(&r) {
                    action.average_multidiff(&psi)
                } else {
                    return Err(DeformError::Obstructed {
                        order,
                        invariant_required: true,
                        target_invariant: false,
                        unconstrained_solvable: true,
                        bounds: *bounds,
                    });
                }
            }
            (invariance, None) => {
                return Err(DeformError::Obstructed {
                    order,
                    invariant_required: invariance.is_some(),
                    target_invariant: invariance
                        .as_ref()
                        .map(|a| a.is_invariant_multidiff(&r))
                        .unwrap_or(true),
                    unconstrained_solvable: false,
                    bounds: *bounds,
                });
            }
        };
        let extended = self.extended(candidate.clone())?;
        let defect = extended.associativity_defect(order)?;
        assert!(
            defect.is_zero(),
            "a solved continuation must cancel the defect exactly"
        );
        Ok(candidate)
    }
}

/// Applies the truncated equivalence `exp(λ^{at_order}[T,·])` to the
/// deformation, cut at total order `at_order`, where it acts as
/// `μ_{at_order} ↦ μ_{at_order} + [T, μ₀]` and fixes all lower terms.
pub fn apply_equivalence(
    d: &FormalDeformation,
    t: &MultiDiffCochain,
    at_order: usize,
) -> Result<FormalDeformation, DeformError> {
    if at_order < 1 || at_order > d.order() {
        return Err(DeformError::OrderOutOfRange {
            got: at_order,
            max: d.order(),
        });
    }
    let mut terms = d.terms.clone();
    let shift = gerstenhaber_bracket(t, &d.mu(0))?;
    terms[at_order - 1] = terms[at_order - 1].add(&shift);
    // The transformed deformation may lose the original invariance; it is
    // re-validated only for shape.
    FormalDeformation::new(d.n_vars, terms, None)
}

/// Finds the first order at which two deformations differ, solves
/// `δT = μ_{k+1} − μ̃_{k+1}` there, and verifies the truncated exponential
/// transformation carries one into the other. Equal deformations yield
/// `T = 0`. The difference must be a cocycle (a contract of equivalence
/// theory — violations are reported, not repaired). When no `T` exists
/// within bounds, the error certifies the obstruction with the residual and
/// its polyvector class when one can be extracted.
pub fn equivalence_step(
    d: &FormalDeformation,
    d_tilde: &FormalDeformation,
    bounds: &Bounds,
) -> Result<MultiDiffCochain, DeformError> {
    if d.n_vars != d_tilde.n_vars {
        return Err(DeformError::VariableCountMismatch(
            d.n_vars,
            d_tilde.n_vars,
        ));
    }
    let shared = d.order().min(d_tilde.order());
    let first_diff = (1..=shared).find(|&j| d.terms[j - 1] != d_tilde.terms[j - 1]);
    let order = match first_diff {
        Some(j) => j,
        None => {
            if d.order() == d_tilde.order() {
                return Ok(MultiDiffCochain::zero(1, d.n_vars));
            }
            return Err(DeformError::OrderOutOfRange {
                got: shared + 1,
                max: shared,
            });
        }
    };
    let delta = d.mu(order).sub(&d_tilde.mu(order));
    if !crate::multidiff::poly_differential(&delta).is_zero() {
        return Err(DeformError::NotCocycle { order });
    }
    let same_invariance = match (&d.invariance, &d_tilde.invariance) {
        (Some(a), Some(b)) => {
            a.order() == b.order() && (0..a.order()).all(|g| a.matrix(g) == b.matrix(g))
        }
        (None, None) => false,
        _ => false,
    };
    let unconstrained = solve_symbol_coboundary(&delta, bounds);
    let t = match unconstrained {
        Some(t0) if same_invariance => {
            let action = d.invariance.as_ref().expect("checked above");
            if action.is_invariant_multidiff(&delta) {
                action.average_multidiff(&t0)
            } else {
                t0
            }
        }
        Some(t0) => t0,
        None => {
            let residual_class = match hkr_decompose(&delta, bounds) {
                Ok((x, _)) if !x.is_zero() => Some(x),
                _ => None,
            };
            return Err(DeformError::NoEquivalenceWithinBounds {
                order,
                bounds: *bounds,
                residual_class,
                residual: delta,
            });
        }
    };
    // Verification: the truncated exponential must reproduce d̃ through the
    // solved order.
    let transformed = apply_equivalence(d, &t, order)?;
    assert_eq!(
        transformed.terms[order - 1],
        d_tilde.terms[order - 1],
        "a solved equivalence step must reproduce the target term exactly"
    );
    Ok(t)
}

/// The order-`k` term of the standard constant-coefficient deformation for
/// an antisymmetric matrix `π`:
///
/// ```text
/// μ_k(f,g) = (1/(2^k k!)) Σ π^{i₁j₁} ⋯ π^{i_kj_k}
///            (∂_{i₁}⋯∂_{i_k} f)(∂_{j₁}⋯∂_{j_k} g)
/// ```
///
/// `k = 0` yields the multiplication.
pub fn moyal_term(k: usize, pi: &Mat) -> Result<MultiDiffCochain, DeformError> {
    let n = pi.rows();
    if pi.cols() != n {
        return Err(DeformError::NotAntisymmetric);
    }
    for i in 0..n {
        for j in 0..n {
            if *pi.get(i, j) != -pi.get(j, i) {
                return Err(DeformError::NotAntisymmetric);
            }
        }
    }
    if k == 0 {
        return Ok(MultiDiffCochain::multiplication(n));
    }
    let norm = Rat::one()
        / (factorial(k) * (0..k).fold(Rat::one(), |acc, _| acc * Rat::from_integer(2.into())));
    let mut out = MultiDiffCochain::zero(2, n);
    // Mixed-radix counter over the k index pairs (i_t, j_t) ∈ n×n.
    let mut counter = vec![0usize; k];
    loop {
        let mut weight = norm.clone();
        let mut alpha = vec![0u32; n];
        let mut beta = vec![0u32; n];
        for &pair in &counter {
            let (i, j) = (pair / n, pair % n);
            weight = weight * pi.get(i, j);
            if weight.is_zero() {
                break;
            }
            alpha[i] += 1;
            beta[j] += 1;
        }
        if !weight.is_zero() {
            out.add_term(
                vec![alpha, beta],
                Poly::constant(n, weight),
            );
        }
        // Advance the counter.
        let mut t = 0;
        loop {
            if t == k {
                return Ok(out);
            }
            counter[t] += 1;
            if counter[t] < n * n {
                break;
            }
            counter[t] = 0;
            t += 1;
        }
    }
}

/// The standard antisymmetric 2×2 matrix with `π^{xy} = 1`.
pub fn standard_symplectic() -> Mat {
    let mut pi = Mat::zeros(2, 2);
    pi.set(0, 1, Rat::one());
    pi.set(1, 0, -Rat::one());
    pi
}
