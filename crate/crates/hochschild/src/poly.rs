//! Multivariate polynomials with exact rational coefficients, the function
//! algebra underlying the polynomial backend.

use crate::scalar::{format_rat, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent multi-index; one entry per variable.
pub type MultiIndex = Vec<u32>;

/// Total order of a multi-index.
pub fn index_order(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// All multi-indices over `n_vars` variables with total order at most
/// `max_order`, in lexicographic order.
pub fn indices_up_to(n_vars: usize, max_order: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    loop {
        if index_order(&current) <= max_order {
            out.push(current.clone());
        }
        // Lexicographic counter with per-position cap max_order.
        let mut pos = n_vars;
        loop {
            if pos == 0 {
                out.sort();
                return out;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] <= max_order {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// Sparse polynomial over the rationals. Zero coefficients are never stored;
/// the variable count is fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n_vars: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl Poly {
    pub fn zero(n_vars: usize) -> Self {
        Poly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, value: Rat) -> Self {
        let mut p = Poly::zero(n_vars);
        if !value.is_zero() {
            p.terms.insert(vec![0; n_vars], value);
        }
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Poly::constant(n_vars, Rat::one())
    }

    /// The `i`-th coordinate function.
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "variable index out of range");
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        Poly::monomial(exps, Rat::one())
    }

    pub fn monomial(exps: MultiIndex, coeff: Rat) -> Self {
        let n_vars = exps.len();
        let mut p = Poly::zero(n_vars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (MultiIndex, Rat)>) -> Self {
        let mut p = Poly::zero(n_vars);
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), n_vars, "exponent arity mismatch");
            p.add_term(exps, coeff);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest total degree among the terms; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| index_order(e)).max().unwrap_or(0)
    }

    fn add_term(&mut self, exps: MultiIndex, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (exps, coeff) in &other.terms {
            out.add_term(exps.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.n_vars);
        }
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = Poly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.n_vars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.n_vars, "variable index out of range");
        let mut out = Poly::zero(self.n_vars);
        for (exps, coeff) in &self.terms {
            if exps[i] == 0 {
                continue;
            }
            let mut e = exps.clone();
            e[i] -= 1;
            out.add_term(e, coeff * &Rat::from_integer(exps[i].into()));
        }
        out
    }

    /// Iterated partial derivative `d^alpha`.
    pub fn derive(&self, alpha: &[u32]) -> Poly {
        assert_eq!(alpha.len(), self.n_vars, "derivative arity mismatch");
        let mut out = Poly::zero(self.n_vars);
        'terms: for (exps, coeff) in &self.terms {
            let mut e = Vec::with_capacity(self.n_vars);
            let mut factor = coeff.clone();
            for v in 0..self.n_vars {
                if exps[v] < alpha[v] {
                    continue 'terms;
                }
                // Falling factorial exps[v] * (exps[v]-1) * ... .
                for step in 0..alpha[v] {
                    factor = factor * Rat::from_integer((exps[v] - step).into());
                }
                e.push(exps[v] - alpha[v]);
            }
            out.add_term(e, factor);
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.n_vars, "substitution arity mismatch");
        let out_vars = images
            .first()
            .map(|p| p.n_vars())
            .unwrap_or(self.n_vars);
        let mut out = Poly::zero(out_vars);
        for (exps, coeff) in &self.terms {
            let mut term = Poly::constant(out_vars, coeff.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

/// Conventional short variable names for small systems, `x1, x2, …` beyond.
pub fn var_name(n_vars: usize, i: usize) -> String {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if n_vars <= NAMES.len() {
        NAMES[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coeff) in &self.terms {
            let mut piece = String::new();
            let is_constant = exps.iter().all(|&e| e == 0);
            if is_constant {
                piece.push_str(&format_rat(coeff));
            } else if (-coeff).is_one() {
                piece.push('-');
            } else if !coeff.is_one() {
                piece.push_str(&format_rat(coeff));
                piece.push('*');
            }
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = var_name(self.n_vars, i);
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            piece.push_str(&vars.join("*"));
            if first {
                write!(f, "{piece}")?;
                first = false;
            } else if let Some(rest) = piece.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    fn x() -> Poly {
        Poly::var(2, 0)
    }

    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn arithmetic_normalizes() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        let expected = x().pow(2).sub(&y().pow(2));
        assert_eq!(p, expected);
        assert!(p.sub(&expected).is_zero());
        // Cancellation drops the stored term entirely.
        assert_eq!(p.sub(&expected).terms().count(), 0);
    }

    #[test]
    fn derivatives_use_falling_factorials() {
        let p = x().pow(3).mul(&y().pow(2));
        assert_eq!(p.derive(&[1, 0]), x().pow(2).mul(&y().pow(2)).scale(&rint(3)));
        assert_eq!(p.derive(&[3, 2]), Poly::constant(2, rint(12)));
        assert_eq!(p.derive(&[4, 0]), Poly::zero(2));
        assert_eq!(p.derive(&[0, 0]), p);
    }

    #[test]
    fn substitution_is_an_algebra_map() {
        let p = x().pow(2).add(&y());
        // x -> x + y, y -> -x.
        let images = [x().add(&y()), x().neg()];
        let q = p.substitute(&images);
        let direct = images[0].pow(2).add(&images[1]);
        assert_eq!(q, direct);
    }

    #[test]
    fn index_enumeration_is_sorted_and_complete() {
        let idx = indices_up_to(2, 2);
        assert_eq!(idx.len(), 6);
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
        assert!(idx.iter().all(|a| index_order(a) <= 2));
    }

    #[test]
    fn display_is_deterministic() {
        let p = x()
            .pow(2)
            .scale(&rat(3, 2))
            .sub(&y())
            .add(&Poly::one(2));
        assert_eq!(p.to_string(), "1 - y + 3/2*x^2");
    }
}
