//! Multidifferential cochains on the polynomial algebra: operators
//! `(f_1,…,f_k) ↦ Σ c(x) · ∂^{α_1}f_1 ⋯ ∂^{α_k}f_k` represented by their
//! symbols, with the Hochschild differential and the Gerstenhaber bracket
//! computed at symbol level via Leibniz expansion.
//!
//! The differential never touches the polynomial coefficients — it only
//! rearranges derivative multi-indices — so solvers over these cochains
//! split into independent blocks per coefficient monomial.

use crate::poly::{index_order, MultiIndex, Poly};
use crate::scalar::{factorial, neg_one_pow, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Slot count above which permutation sums are refused.
pub const MAX_SKEW_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolError {
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("expected {expected} variables, got {got}")]
    VariableCountMismatch { expected: usize, got: usize },
    #[error("operation refused: {what}")]
    ResourceLimit { what: String },
    #[error("bracket of two degree-0 cochains is not defined")]
    DegreeUnderflow,
}

/// A multidifferential Hochschild cochain in symbol form: a map from
/// derivative multi-index tuples (one per argument slot) to polynomial
/// coefficients. Normalized: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDiffCochain {
    degree: usize,
    n_vars: usize,
    terms: BTreeMap<Vec<MultiIndex>, Poly>,
}

impl MultiDiffCochain {
    pub fn zero(degree: usize, n_vars: usize) -> Self {
        MultiDiffCochain {
            degree,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 cochains are elements of the algebra itself.
    pub fn from_poly(p: Poly) -> Self {
        let mut out = MultiDiffCochain::zero(0, p.n_vars());
        out.add_term(Vec::new(), p);
        out
    }

    /// The multiplication 2-cochain `(f, g) ↦ f·g`.
    pub fn multiplication(n_vars: usize) -> Self {
        let mut out = MultiDiffCochain::zero(2, n_vars);
        out.add_term(vec![vec![0; n_vars], vec![0; n_vars]], Poly::one(n_vars));
        out
    }

    pub fn from_terms(
        degree: usize,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Vec<MultiIndex>, Poly)>,
    ) -> Self {
        let mut out = MultiDiffCochain::zero(degree, n_vars);
        for (key, coeff) in terms {
            out.add_term(key, coeff);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &Poly)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &[MultiIndex]) -> Poly {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.n_vars))
    }

    /// Largest derivative order taken in any single slot.
    pub fn max_slot_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|key| key.iter().map(|a| index_order(a)))
            .max()
            .unwrap_or(0)
    }

    /// Largest total degree among the polynomial coefficients.
    pub fn max_coeff_degree(&self) -> u32 {
        self.terms
            .values()
            .map(|p| p.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, key: Vec<MultiIndex>, coeff: Poly) {
        assert_eq!(key.len(), self.degree, "key arity mismatch");
        assert!(
            key.iter().all(|a| a.len() == self.n_vars),
            "multi-index arity mismatch"
        );
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&coeff);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiDiffCochain) -> MultiDiffCochain {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (key, coeff) in &other.terms {
            out.add_term(key.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiDiffCochain) -> MultiDiffCochain {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiDiffCochain {
        MultiDiffCochain {
            degree: self.degree,
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> MultiDiffCochain {
        if s.is_zero() {
            return MultiDiffCochain::zero(self.degree, self.n_vars);
        }
        MultiDiffCochain {
            degree: self.degree,
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.scale(s)))
                .collect(),
        }
    }

    /// Evaluates the operator on polynomial arguments.
    pub fn apply(&self, args: &[Poly]) -> Result<Poly, SymbolError> {
        if args.len() != self.degree {
            return Err(SymbolError::ArityMismatch {
                expected: self.degree,
                got: args.len(),
            });
        }
        for a in args {
            if a.n_vars() != self.n_vars {
                return Err(SymbolError::VariableCountMismatch {
                    expected: self.n_vars,
                    got: a.n_vars(),
                });
            }
        }
        let mut out = Poly::zero(self.n_vars);
        for (key, coeff) in &self.terms {
            let mut prod = coeff.clone();
            for (alpha, f) in key.iter().zip(args) {
                if prod.is_zero() {
                    break;
                }
                prod = prod.mul(&f.derive(alpha));
            }
            out = out.add(&prod);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiDiffCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let slots: Vec<String> = key
                .iter()
                .map(|alpha| {
                    if index_order(alpha) == 0 {
                        "id".to_string()
                    } else {
                        let parts: Vec<String> = alpha
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(i, &e)| {
                                let name = crate::poly::var_name(self.n_vars, i);
                                if e == 1 {
                                    format!("d{name}")
                                } else {
                                    format!("d{name}^{e}")
                                }
                            })
                            .collect();
                        parts.join("")
                    }
                })
                .collect();
            write!(f, "({})[{}]", coeff, slots.join(" ⊗ "))?;
        }
        Ok(())
    }
}

/// All ways to write `total` as an ordered sum of `parts` non-negative
/// integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in compositions(total - first, parts - 1) {
            let mut c = Vec::with_capacity(parts);
            c.push(first);
            c.extend(rest);
            out.push(c);
        }
    }
    out
}

/// All ways to split the multi-index `beta` into `parts` multi-indices
/// summing to it, each with its multinomial weight
/// `Π_v β_v! / (ρ_{0,v}! ⋯ ρ_{parts−1,v}!)`.
fn leibniz_splits(beta: &[u32], parts: usize) -> Vec<(Vec<MultiIndex>, Rat)> {
    let mut acc: Vec<(Vec<MultiIndex>, Rat)> =
        vec![(vec![Vec::with_capacity(beta.len()); parts], Rat::one())];
    for &b in beta {
        let splits = compositions(b, parts);
        let mut next = Vec::with_capacity(acc.len() * splits.len());
        for (partial, weight) in &acc {
            for split in &splits {
                let mut w = weight * &factorial(b as usize);
                for &s in split {
                    w = w / factorial(s as usize);
                }
                let mut ext = partial.clone();
                for (part, &s) in ext.iter_mut().zip(split) {
                    part.push(s);
                }
                next.push((ext, w));
            }
        }
        acc = next;
    }
    acc
}

/// Symbol of the Hochschild differential: for degree `k`,
///
/// ```text
/// (δφ)(f_0,…,f_k) = f_0 φ(f_1,…,f_k) + (−1)^(k+1) φ(f_0,…,f_(k−1)) f_k
///                 + Σ_{i=0}^{k−1} (−1)^(i+1) φ(…, f_i f_(i+1), …)
/// ```
///
/// with the interior products expanded by the Leibniz rule. Coefficient
/// polynomials pass through untouched.
pub fn poly_differential(phi: &MultiDiffCochain) -> MultiDiffCochain {
    let k = phi.degree;
    let n = phi.n_vars;
    let zero_idx = vec![0u32; n];
    let mut out = MultiDiffCochain::zero(k + 1, n);
    let tail_sign = neg_one_pow(k as i64 + 1);
    for (key, coeff) in &phi.terms {
        // f_0 multiplies in front: new order-0 slot on the left.
        let mut left = Vec::with_capacity(k + 1);
        left.push(zero_idx.clone());
        left.extend(key.iter().cloned());
        out.add_term(left, coeff.clone());
        // f_k multiplies at the back.
        let mut right = key.clone();
        right.push(zero_idx.clone());
        out.add_term(right, coeff.scale(&tail_sign));
        // Interior contractions: slot i receives the product f_i f_(i+1).
        for i in 0..k {
            let sign = neg_one_pow(i as i64 + 1);
            for (split, weight) in leibniz_splits(&key[i], 2) {
                let mut new_key = Vec::with_capacity(k + 1);
                new_key.extend(key[..i].iter().cloned());
                new_key.push(split[0].clone());
                new_key.push(split[1].clone());
                new_key.extend(key[i + 1..].iter().cloned());
                out.add_term(new_key, coeff.scale(&(&sign * &weight)));
            }
        }
    }
    out
}

/// Insertion `φ ∘_i ψ` at symbol level (1-based `i ≤ p`): slot `i` of `φ`
/// differentiates the whole expression `ψ(f_i,…,f_{i+q−1})`, expanded by the
/// generalized Leibniz rule over the coefficient of `ψ` and its `q`
/// derivative factors.
pub fn compose_at(
    phi: &MultiDiffCochain,
    i: usize,
    psi: &MultiDiffCochain,
) -> Result<MultiDiffCochain, SymbolError> {
    if phi.n_vars != psi.n_vars {
        return Err(SymbolError::VariableCountMismatch {
            expected: phi.n_vars,
            got: psi.n_vars,
        });
    }
    let (p, q) = (phi.degree, psi.degree);
    assert!(i >= 1 && i <= p, "insertion slot out of range");
    let mut out = MultiDiffCochain::zero(p + q - 1, phi.n_vars);
    for (phi_key, phi_coeff) in &phi.terms {
        let beta = &phi_key[i - 1];
        for (psi_key, psi_coeff) in &psi.terms {
            for (split, weight) in leibniz_splits(beta, q + 1) {
                // split[0] lands on ψ's coefficient; the rest add to ψ's
                // slot orders.
                let dcoeff = psi_coeff.derive(&split[0]);
                if dcoeff.is_zero() {
                    continue;
                }
                let mut new_key = Vec::with_capacity(p + q - 1);
                new_key.extend(phi_key[..i - 1].iter().cloned());
                for (rho, gamma) in split[1..].iter().zip(psi_key) {
                    new_key.push(rho.iter().zip(gamma).map(|(a, b)| a + b).collect());
                }
                new_key.extend(phi_key[i..].iter().cloned());
                let coeff = phi_coeff.mul(&dcoeff).scale(&weight);
                out.add_term(new_key, coeff);
            }
        }
    }
    Ok(out)
}

/// Gerstenhaber circle product `φ ∘ ψ = Σ_i (−1)^((i−1)(q−1)) φ ∘_i ψ`.
fn circle(
    phi: &MultiDiffCochain,
    psi: &MultiDiffCochain,
) -> Result<MultiDiffCochain, SymbolError> {
    let (p, q) = (phi.degree, psi.degree);
    let mut out = MultiDiffCochain::zero(p + q - 1, phi.n_vars);
    for i in 1..=p {
        let term = compose_at(phi, i, psi)?;
        let parity = ((i as i64 - 1) * (q as i64 - 1)).rem_euclid(2);
        out = out.add(&if parity == 0 { term } else { term.neg() });
    }
    Ok(out)
}

/// Gerstenhaber bracket on symbols, with the same sign conventions as the
/// finite-dimensional backend: `δφ = −[φ, μ₀]` and `[μ,μ] = 0` iff `μ` is
/// associative.
pub fn gerstenhaber_bracket(
    phi: &MultiDiffCochain,
    psi: &MultiDiffCochain,
) -> Result<MultiDiffCochain, SymbolError> {
    if phi.n_vars != psi.n_vars {
        return Err(SymbolError::VariableCountMismatch {
            expected: phi.n_vars,
            got: psi.n_vars,
        });
    }
    let (p, q) = (phi.degree, psi.degree);
    if p == 0 && q == 0 {
        return Err(SymbolError::DegreeUnderflow);
    }
    let left = circle(phi, psi)?;
    let right = circle(psi, phi)?;
    let parity = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2);
    Ok(if parity == 0 {
        left.sub(&right)
    } else {
        left.add(&right)
    })
}

/// All permutations of `0..k` with their signs.
pub(crate) fn signed_permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    fn rec(current: &mut Vec<usize>, fixed: usize, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if fixed == current.len() {
            out.push((current.clone(), odd));
            return;
        }
        for i in fixed..current.len() {
            current.swap(fixed, i);
            rec(current, fixed + 1, odd ^ (i != fixed), out);
            current.swap(fixed, i);
        }
    }
    rec(&mut current, 0, false, &mut out);
    out
}

/// Antisymmetrization over argument slots: `(1/k!) Σ_σ sgn(σ) φ^σ`.
pub fn skew_symmetrize(phi: &MultiDiffCochain) -> Result<MultiDiffCochain, SymbolError> {
    let k = phi.degree;
    if k > MAX_SKEW_DEGREE {
        return Err(SymbolError::ResourceLimit {
            what: format!("antisymmetrization over {k} slots (cap {MAX_SKEW_DEGREE})"),
        });
    }
    if k <= 1 {
        return Ok(phi.clone());
    }
    let inv_kfact = Rat::one() / factorial(k);
    let mut out = MultiDiffCochain::zero(k, phi.n_vars);
    for (perm, odd) in signed_permutations(k) {
        for (key, coeff) in &phi.terms {
            let new_key: Vec<MultiIndex> = perm.iter().map(|&s| key[s].clone()).collect();
            let w = if odd { -&inv_kfact } else { inv_kfact.clone() };
            out.add_term(new_key, coeff.scale(&w));
        }
    }
    Ok(out)
}
