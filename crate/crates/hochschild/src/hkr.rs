//! The correspondence between polyvector fields and multidifferential
//! cochains: the contraction map `U` sending `X` to the cochain
//! `(f_1,…,f_k) ↦ (1/k!) ι_{df_k}⋯ι_{df_1} X`, and its constructive inverse
//! `φ ↦ (X, ψ)` with `φ = U(X) + δψ` for cocycles `φ`.

use crate::multidiff::{
    gerstenhaber_bracket, poly_differential, signed_permutations, skew_symmetrize,
    MultiDiffCochain, SymbolError,
};
use crate::poly::{index_order, MultiIndex, Poly};
use crate::polyvector::PolyvectorField;
use crate::scalar::{factorial, Rat};
use crate::symbol_solve::{solve_symbol_coboundary, Bounds};
use num_traits::One;

#[derive(Debug, Clone, thiserror::Error)]
pub enum HkrError {
    #[error("input is not a cocycle: its differential has {nonzero_terms} nonzero terms")]
    NotACocycle { nonzero_terms: usize },
    #[error("skew-symmetrization is not a first-order multiderivation at key {key:?}")]
    SkewPartNotFirstOrder { key: Vec<MultiIndex> },
    #[error("no primitive within bounds {bounds_tried:?}; residual retained")]
    NoSolutionWithinBounds {
        bounds_tried: Vec<Bounds>,
        residual: MultiDiffCochain,
    },
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// The contraction map `U`: for `X = Σ_I p_I ∂_{i_1}∧⋯∧∂_{i_k}`,
///
/// ```text
/// U(X)(f_1,…,f_k) = (1/k!) Σ_{σ∈S_k} sgn(σ) p_I ∂_{i_σ(1)}f_1 ⋯ ∂_{i_σ(k)}f_k
/// ```
///
/// Degree 0 is multiplication by the polynomial.
pub fn hkr_map(x: &PolyvectorField) -> MultiDiffCochain {
    let k = x.degree();
    let n = x.n_vars();
    let mut out = MultiDiffCochain::zero(k, n);
    if k == 0 {
        for (_, p) in x.components() {
            out.add_term(Vec::new(), p.clone());
        }
        return out;
    }
    let inv_kfact = Rat::one() / factorial(k);
    let perms = signed_permutations(k);
    for (frame, coeff) in x.components() {
        for (perm, odd) in &perms {
            let key: Vec<MultiIndex> = perm
                .iter()
                .map(|&t| {
                    let mut unit = vec![0u32; n];
                    unit[frame[t]] = 1;
                    unit
                })
                .collect();
            let w = if *odd { -&inv_kfact } else { inv_kfact.clone() };
            out.add_term(key, coeff.scale(&w));
        }
    }
    out
}

/// Reads the polyvector field back from a cochain in the image of `U`: the
/// component at an ascending frame tuple is `k!` times the coefficient at
/// the corresponding first-order key. Inverse of `hkr_map` on its image
/// (and therefore a witness of its injectivity).
pub fn polyvector_part(phi: &MultiDiffCochain) -> PolyvectorField {
    let k = phi.degree();
    let n = phi.n_vars();
    let mut x = PolyvectorField::zero(k, n);
    if k == 0 {
        let mut total = Poly::zero(n);
        for (_, p) in phi.terms() {
            total = total.add(p);
        }
        return PolyvectorField::from_poly(total);
    }
    let kfact = factorial(k);
    'keys: for (key, coeff) in phi.terms() {
        let mut frame = Vec::with_capacity(k);
        for alpha in key {
            if index_order(alpha) != 1 {
                continue 'keys;
            }
            frame.push(alpha.iter().position(|&e| e == 1).expect("order-1 index"));
        }
        if frame.windows(2).all(|w| w[0] < w[1]) {
            x.add_component(frame, coeff.scale(&kfact));
        }
    }
    x
}

/// Decomposes a cocycle as `φ = U(X) + δψ`. `X` is read off the
/// skew-symmetrization of `φ` (which must be a first-order multiderivation —
/// violations abort with the offending key); `ψ` is found by an exact
/// bounded solve with one automatic retry at doubled bounds.
pub fn hkr_decompose(
    phi: &MultiDiffCochain,
    bounds: &Bounds,
) -> Result<(PolyvectorField, MultiDiffCochain), HkrError> {
    let d_phi = poly_differential(phi);
    if !d_phi.is_zero() {
        return Err(HkrError::NotACocycle {
            nonzero_terms: d_phi.term_count(),
        });
    }
    let skew = skew_symmetrize(phi)?;
    let x = polyvector_part(&skew);
    let u_x = hkr_map(&x);
    let mismatch = skew.sub(&u_x);
    if !mismatch.is_zero() {
        let key = mismatch
            .terms()
            .next()
            .map(|(k, _)| k.clone())
            .unwrap_or_default();
        return Err(HkrError::SkewPartNotFirstOrder { key });
    }
    let residual = phi.sub(&u_x);
    if let Some(psi) = solve_symbol_coboundary(&residual, bounds) {
        return Ok((x, psi));
    }
    let retry = bounds.doubled();
    if let Some(psi) = solve_symbol_coboundary(&residual, &retry) {
        return Ok((x, psi));
    }
    Err(HkrError::NoSolutionWithinBounds {
        bounds_tried: vec![*bounds, retry],
        residual,
    })
}

/// Convenience: `[U(X), U(Y)]` at symbol level, used by property tests.
pub fn bracket_of_images(
    x: &PolyvectorField,
    y: &PolyvectorField,
) -> Result<MultiDiffCochain, SymbolError> {
    gerstenhaber_bracket(&hkr_map(x), &hkr_map(y))
}
