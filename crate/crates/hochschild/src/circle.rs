//! Exact averaging of polyvector fields over the circle of rotations in a
//! coordinate plane. Rotating a polynomial field by angle θ produces
//! components that are polynomials in cos θ and sin θ, and the mean value of
//! each trigonometric monomial over a full turn is a known rational, so the
//! integral `(1/2π) ∫ R_θ ⊳ X dθ` is computed term by term without any
//! numerics.

use crate::poly::Poly;
use crate::polyvector::PolyvectorField;
use crate::scalar::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Mean of `cos^a θ · sin^b θ` over one full turn: zero unless both
/// exponents are even, in which case `(a−1)!!·(b−1)!!/(a+b)!!`.
pub fn trig_mean(a: u32, b: u32) -> Rat {
    if a % 2 != 0 || b % 2 != 0 {
        return Rat::zero();
    }
    fn double_factorial(n: i64) -> Rat {
        let mut out = Rat::one();
        let mut k = n;
        while k > 1 {
            out = out * Rat::from_integer(k.into());
            k -= 2;
        }
        out
    }
    double_factorial(a as i64 - 1) * double_factorial(b as i64 - 1)
        / double_factorial((a + b) as i64)
}

/// A quantity depending on the rotation angle: a polynomial in cos θ, sin θ
/// with values of type `T`, keyed by the exponent pair.
#[derive(Debug, Clone)]
struct TrigExpansion<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Clone> TrigExpansion<T> {
    fn new() -> Self {
        TrigExpansion {
            terms: BTreeMap::new(),
        }
    }

    fn add_with(
        &mut self,
        key: (u32, u32),
        value: T,
        add: impl Fn(&T, &T) -> T,
        is_zero: impl Fn(&T) -> bool,
    ) {
        use std::collections::btree_map::Entry;
        if is_zero(&value) {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(value);
            }
            Entry::Occupied(mut slot) => {
                let sum = add(slot.get(), &value);
                if is_zero(&sum) {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }
}

/// Expands `R_θ ⊳ p` as a trig polynomial with `Poly` values: the pullback
/// substitutes `x_i ↦ cos θ·x_i + sin θ·x_j`, `x_j ↦ −sin θ·x_i + cos θ·x_j`
/// and leaves the other variables alone.
fn rotate_poly(p: &Poly, plane: (usize, usize)) -> TrigExpansion<Poly> {
    let n = p.n_vars();
    let (i, j) = plane;
    let add = |a: &Poly, b: &Poly| a.add(b);
    let zero = |a: &Poly| a.is_zero();
    let mut out = TrigExpansion::new();
    for (exps, coeff) in p.terms() {
        // Start from the monomial in the untouched variables.
        let mut rest = vec![0u32; n];
        for (v, &e) in exps.iter().enumerate() {
            if v != i && v != j {
                rest[v] = e;
            }
        }
        let base = Poly::monomial(rest, coeff.clone());
        // (c·x_i + s·x_j)^{e_i} · (−s·x_i + c·x_j)^{e_j}, expanded binomially.
        let mut acc: Vec<((u32, u32), Poly)> = vec![((0, 0), Poly::one(n))];
        // x_i^{e_i} with x_i ↦ c·x_i + s·x_j.
        for _ in 0..exps[i] {
            let mut next: Vec<((u32, u32), Poly)> = Vec::new();
            for ((a, b), q) in &acc {
                next.push(((a + 1, *b), q.mul(&Poly::var(n, i))));
                next.push(((*a, b + 1), q.mul(&Poly::var(n, j))));
            }
            acc = merge(next);
        }
        // x_j^{e_j} with x_j ↦ −s·x_i + c·x_j.
        for _ in 0..exps[j] {
            let mut next: Vec<((u32, u32), Poly)> = Vec::new();
            for ((a, b), q) in &acc {
                next.push(((*a, b + 1), q.mul(&Poly::var(n, i)).neg()));
                next.push(((a + 1, *b), q.mul(&Poly::var(n, j))));
            }
            acc = merge(next);
        }
        for ((a, b), q) in acc {
            out.add_with((a, b), q.mul(&base), add, zero);
        }
    }
    out
}

/// Collapses duplicate trig keys in a raw term list.
fn merge(items: Vec<((u32, u32), Poly)>) -> Vec<((u32, u32), Poly)> {
    let mut map: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    for (key, value) in items {
        use std::collections::btree_map::Entry;
        match map.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(value);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&value);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Averages `X` over the circle of rotations in the given coordinate plane:
/// `(1/2π) ∫₀^{2π} R_θ ⊳ X dθ`, exactly.
pub fn circle_average_polyvector(x: &PolyvectorField, plane: (usize, usize)) -> PolyvectorField {
    let n = x.n_vars();
    let (i, j) = plane;
    assert!(i < n && j < n && i != j, "plane must name two distinct variables");
    let mut out = PolyvectorField::zero(x.degree(), n);
    for (key, coeff) in x.components() {
        // Rotate the coefficient.
        let rotated_coeff = rotate_poly(coeff, plane);
        // Rotate the frame wedge: ∂_i ↦ c·∂_i + s·∂_j, ∂_j ↦ −s·∂_i + c·∂_j.
        let mut frames: TrigExpansion<PolyvectorField> = TrigExpansion::new();
        frames.terms.insert((0, 0), PolyvectorField::from_poly(Poly::one(n)));
        let vadd = |a: &PolyvectorField, b: &PolyvectorField| a.add(b);
        let vzero = |a: &PolyvectorField| a.is_zero();
        for &m in key {
            let pieces: Vec<((u32, u32), PolyvectorField)> = if m == i {
                vec![
                    ((1, 0), PolyvectorField::frame(n, i)),
                    ((0, 1), PolyvectorField::frame(n, j)),
                ]
            } else if m == j {
                vec![
                    ((0, 1), PolyvectorField::frame(n, i).neg()),
                    ((1, 0), PolyvectorField::frame(n, j)),
                ]
            } else {
                vec![((0, 0), PolyvectorField::frame(n, m))]
            };
            let mut next: TrigExpansion<PolyvectorField> = TrigExpansion::new();
            for ((a, b), partial) in &frames.terms {
                for ((da, db), piece) in &pieces {
                    next.add_with(
                        (a + da, b + db),
                        partial.wedge(piece),
                        vadd,
                        vzero,
                    );
                }
            }
            frames = next;
        }
        // Multiply coefficient and frame expansions, then take the mean.
        for ((ca, cb), q) in &rotated_coeff.terms {
            for ((fa, fb), field) in &frames.terms {
                let weight = trig_mean(ca + fa, cb + fb);
                if weight.is_zero() {
                    continue;
                }
                out = out.add(&field.scale_poly(q).scale(&weight));
            }
        }
    }
    out
}

/// Checks invariance of `X` under one exact rotation with rational cosine
/// and sine (c² + s² must be 1), e.g. the (3/5, 4/5) rotation.
pub fn is_rotation_invariant(
    x: &PolyvectorField,
    plane: (usize, usize),
    cos: &Rat,
    sin: &Rat,
) -> bool {
    assert_eq!(
        cos * cos + sin * sin,
        Rat::one(),
        "cosine and sine must lie on the unit circle"
    );
    let n = x.n_vars();
    let (i, j) = plane;
    let mut g = crate::matrix::Mat::identity(n);
    g.set(i, i, cos.clone());
    g.set(i, j, -sin.clone());
    g.set(j, i, sin.clone());
    g.set(j, j, cos.clone());
    let g_inv = g.inverse().expect("rotations are invertible");
    crate::linear_action::transform_polyvector(&g, &g_inv, x) == *x
}
