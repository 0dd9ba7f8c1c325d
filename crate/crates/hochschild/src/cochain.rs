//! Cochains on a finite-dimensional algebra with coefficients in a bimodule,
//! the Hochschild differential, the Gerstenhaber bracket, and finite-group
//! actions with exact averaging.
//!
//! A degree-`n` cochain is a multilinear map `A^n -> N` stored as a dense
//! tensor of shape `(d, ..., d, m)`: the entry at `(i_1..i_n, r)` is the
//! `r`-th module coordinate of `phi(e_{i_1}, ..., e_{i_n})`. The module
//! coordinate is the fastest-varying axis.

use crate::algebra::{Bimodule, FiniteDimAlgebra};
use crate::matrix::Mat;
use crate::scalar::{neg_one_pow, Rat};
use num_traits::{One, Zero};

/// Degrees above this are rejected; tensor sizes grow as `d^n` and nothing
/// in scope needs more.
pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CochainError {
    #[error("cochain shaped for algebra dim {cochain} used with dim {context}")]
    AlgebraDimMismatch { cochain: usize, context: usize },
    #[error("cochain shaped for module dim {cochain} used with dim {context}")]
    ModuleDimMismatch { cochain: usize, context: usize },
    #[error("operation would produce degree {degree}, above the cap {max}")]
    DegreeCap { degree: usize, max: usize },
    #[error("expected a cochain of degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("bracket of two degree-0 cochains is not defined")]
    DegreeUnderflow,
    #[error("bracket requires module coordinates equal to algebra coordinates (module dim {module}, algebra dim {algebra})")]
    ModuleNotAlgebra { module: usize, algebra: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    BadElementIndex { index: usize, dim: usize },
}

/// Dense Hochschild cochain of fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    algebra_dim: usize,
    module_dim: usize,
    coeffs: Vec<Rat>,
}

/// Iterates all `d^n` argument tuples in row-major order.
pub struct TupleIter {
    dim: usize,
    current: Vec<usize>,
    done: bool,
}

impl TupleIter {
    pub fn new(dim: usize, len: usize) -> Self {
        TupleIter {
            dim,
            current: vec![0; len],
            done: dim == 0 && len > 0,
        }
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut pos = self.current.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.dim {
                break;
            }
            self.current[pos] = 0;
        }
        Some(out)
    }
}

impl Cochain {
    pub fn zero(degree: usize, algebra_dim: usize, module_dim: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree above cap");
        let size = algebra_dim.pow(degree as u32) * module_dim;
        Cochain {
            degree,
            algebra_dim,
            module_dim,
            coeffs: vec![Rat::zero(); size],
        }
    }

    pub fn from_coeffs(
        degree: usize,
        algebra_dim: usize,
        module_dim: usize,
        coeffs: Vec<Rat>,
    ) -> Self {
        let size = algebra_dim.pow(degree as u32) * module_dim;
        assert_eq!(coeffs.len(), size, "coefficient vector has wrong length");
        Cochain {
            degree,
            algebra_dim,
            module_dim,
            coeffs,
        }
    }

    /// A degree-0 cochain is just a module element.
    pub fn from_module_element(algebra_dim: usize, value: Vec<Rat>) -> Self {
        Cochain {
            degree: 0,
            algebra_dim,
            module_dim: value.len(),
            coeffs: value,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Rat] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Flat offset of the value block for an argument tuple.
    fn tuple_offset(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        let mut idx = 0usize;
        for &t in tuple {
            debug_assert!(t < self.algebra_dim);
            idx = idx * self.algebra_dim + t;
        }
        idx * self.module_dim
    }

    /// Value of the cochain on a tuple of basis elements, as a module
    /// coordinate slice of length `module_dim`.
    pub fn value(&self, tuple: &[usize]) -> &[Rat] {
        let base = self.tuple_offset(tuple);
        &self.coeffs[base..base + self.module_dim]
    }

    pub fn value_mut(&mut self, tuple: &[usize]) -> &mut [Rat] {
        let base = self.tuple_offset(tuple);
        &mut self.coeffs[base..base + self.module_dim]
    }

    /// Evaluates on general algebra elements by multilinear expansion.
    pub fn evaluate(&self, args: &[Vec<Rat>]) -> Result<Vec<Rat>, CochainError> {
        if args.len() != self.degree {
            return Err(CochainError::DegreeCap {
                degree: args.len(),
                max: self.degree,
            });
        }
        for a in args {
            if a.len() != self.algebra_dim {
                return Err(CochainError::AlgebraDimMismatch {
                    cochain: self.algebra_dim,
                    context: a.len(),
                });
            }
        }
        let mut out = vec![Rat::zero(); self.module_dim];
        for tuple in TupleIter::new(self.algebra_dim, self.degree) {
            let mut weight = Rat::one();
            let mut zero = false;
            for (slot, &i) in tuple.iter().enumerate() {
                let c = &args[slot][i];
                if c.is_zero() {
                    zero = true;
                    break;
                }
                weight *= c;
            }
            if zero {
                continue;
            }
            for (r, v) in self.value(&tuple).iter().enumerate() {
                if !v.is_zero() {
                    out[r] = &out[r] + &(&weight * v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.shape(), other.shape(), "cochain shape mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cochain {
            coeffs,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.shape(), other.shape(), "cochain shape mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cochain {
            coeffs,
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Rat) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().map(|x| x * s).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    fn shape(&self) -> (usize, usize, usize) {
        (self.degree, self.algebra_dim, self.module_dim)
    }

    /// The multiplication of the algebra as a 2-cochain with regular module
    /// coordinates.
    pub fn multiplication(algebra: &FiniteDimAlgebra) -> Cochain {
        let d = algebra.dim();
        let mut out = Cochain::zero(2, d, d);
        for i in 0..d {
            for j in 0..d {
                out.value_mut(&[i, j]).clone_from_slice(algebra.basis_product(i, j));
            }
        }
        out
    }

    /// The identity map as a 1-cochain (module = algebra).
    pub fn identity_map(dim: usize) -> Cochain {
        let mut out = Cochain::zero(1, dim, dim);
        for i in 0..dim {
            out.value_mut(&[i])[i] = Rat::one();
        }
        out
    }
}

/// Hochschild differential: for `phi` of degree `n`,
///
/// ```text
/// (d phi)(a_0,...,a_n) = a_0 phi(a_1,...,a_n)
///                      + (-1)^(n+1) phi(a_0,...,a_(n-1)) a_n
///                      + sum_{i=0}^{n-1} (-1)^(i+1) phi(a_0,...,a_i a_(i+1),...,a_n)
/// ```
pub fn differential(
    algebra: &FiniteDimAlgebra,
    module: &Bimodule,
    phi: &Cochain,
) -> Result<Cochain, CochainError> {
    let d = algebra.dim();
    let m = module.dim();
    if phi.algebra_dim != d || module.algebra_dim() != d {
        return Err(CochainError::AlgebraDimMismatch {
            cochain: phi.algebra_dim,
            context: d,
        });
    }
    if phi.module_dim != m {
        return Err(CochainError::ModuleDimMismatch {
            cochain: phi.module_dim,
            context: m,
        });
    }
    let n = phi.degree;
    if n + 1 > MAX_DEGREE {
        return Err(CochainError::DegreeCap {
            degree: n + 1,
            max: MAX_DEGREE,
        });
    }
    let mut out = Cochain::zero(n + 1, d, m);
    let tail_sign = neg_one_pow(n as i64 + 1);
    let mut arg = vec![0usize; n];
    for tuple in TupleIter::new(d, n + 1) {
        let mut acc = vec![Rat::zero(); m];
        // a_0 * phi(a_1..a_n)
        arg.clone_from_slice(&tuple[1..]);
        let left = module.left_basis(tuple[0]);
        for (s, v) in phi.value(&arg).iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for r in 0..m {
                let l = left.get(r, s);
                if !l.is_zero() {
                    acc[r] = &acc[r] + &(l * v);
                }
            }
        }
        // (-1)^(n+1) phi(a_0..a_(n-1)) * a_n
        arg.clone_from_slice(&tuple[..n]);
        let right = module.right_basis(tuple[n]);
        for (s, v) in phi.value(&arg).iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for r in 0..m {
                let x = right.get(r, s);
                if !x.is_zero() {
                    acc[r] = &acc[r] + &(&(x * v) * &tail_sign);
                }
            }
        }
        // Interior contractions.
        for i in 0..n {
            let sign = neg_one_pow(i as i64 + 1);
            arg[..i].clone_from_slice(&tuple[..i]);
            arg[i + 1..].clone_from_slice(&tuple[i + 2..]);
            for (k, c) in algebra.basis_product(tuple[i], tuple[i + 1]).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                arg[i] = k;
                let factor = &sign * c;
                for (r, v) in phi.value(&arg).iter().enumerate() {
                    if !v.is_zero() {
                        acc[r] = &acc[r] + &(&factor * v);
                    }
                }
            }
        }
        out.value_mut(&tuple).clone_from_slice(&acc);
    }
    Ok(out)
}

/// Insertion `phi o_i psi` (1-based `i <= p`): evaluate `psi` on `q`
/// consecutive arguments and feed the result into slot `i` of `phi`.
/// Requires module coordinates equal to algebra coordinates.
pub fn compose_at(phi: &Cochain, i: usize, psi: &Cochain) -> Result<Cochain, CochainError> {
    let d = phi.algebra_dim;
    if psi.algebra_dim != d {
        return Err(CochainError::AlgebraDimMismatch {
            cochain: psi.algebra_dim,
            context: d,
        });
    }
    for c in [phi, psi] {
        if c.module_dim != d {
            return Err(CochainError::ModuleNotAlgebra {
                module: c.module_dim,
                algebra: d,
            });
        }
    }
    let (p, q) = (phi.degree, psi.degree);
    assert!(i >= 1 && i <= p, "insertion slot out of range");
    let out_degree = p + q - 1;
    if out_degree > MAX_DEGREE {
        return Err(CochainError::DegreeCap {
            degree: out_degree,
            max: MAX_DEGREE,
        });
    }
    let mut out = Cochain::zero(out_degree, d, d);
    let mut arg = vec![0usize; p];
    for tuple in TupleIter::new(d, out_degree) {
        let pre = &tuple[..i - 1];
        let mid = &tuple[i - 1..i - 1 + q];
        let post = &tuple[i - 1 + q..];
        arg[..i - 1].clone_from_slice(pre);
        arg[i..].clone_from_slice(post);
        let inner = psi.value(mid);
        let mut acc = vec![Rat::zero(); d];
        for (k, w) in inner.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            arg[i - 1] = k;
            for (r, v) in phi.value(&arg).iter().enumerate() {
                if !v.is_zero() {
                    acc[r] = &acc[r] + &(w * v);
                }
            }
        }
        out.value_mut(&tuple).clone_from_slice(&acc);
    }
    Ok(out)
}

/// Gerstenhaber circle product `phi o psi = sum_i (-1)^((i-1)(q-1)) phi o_i psi`.
/// The exponent is read modulo 2, which also covers `q = 0`.
fn circle(phi: &Cochain, psi: &Cochain) -> Result<Cochain, CochainError> {
    let (p, q) = (phi.degree, psi.degree);
    let d = phi.algebra_dim;
    let out_degree = p + q - 1; // caller guarantees p + q >= 1
    let mut out = Cochain::zero(out_degree, d, d);
    for i in 1..=p {
        let term = compose_at(phi, i, psi)?;
        let parity = ((i as i64 - 1) * (q as i64 - 1)).rem_euclid(2);
        out = out.add(&if parity == 0 { term } else { term.neg() });
    }
    Ok(out)
}

/// Gerstenhaber bracket `[phi, psi] = phi o psi - (-1)^((p-1)(q-1)) psi o phi`.
///
/// With the multiplication 2-cochain `mu`, `d(phi) = -[phi, mu]`, and
/// `[mu, mu] = 0` exactly when `mu` is associative.
pub fn gerstenhaber_bracket(phi: &Cochain, psi: &Cochain) -> Result<Cochain, CochainError> {
    let d = phi.algebra_dim;
    if psi.algebra_dim != d {
        return Err(CochainError::AlgebraDimMismatch {
            cochain: psi.algebra_dim,
            context: d,
        });
    }
    for c in [phi, psi] {
        if c.module_dim != d {
            return Err(CochainError::ModuleNotAlgebra {
                module: c.module_dim,
                algebra: d,
            });
        }
    }
    let (p, q) = (phi.degree, psi.degree);
    if p == 0 && q == 0 {
        return Err(CochainError::DegreeUnderflow);
    }
    if p + q - 1 > MAX_DEGREE {
        return Err(CochainError::DegreeCap {
            degree: p + q - 1,
            max: MAX_DEGREE,
        });
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

/// Errors in building or applying finite-group actions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("element {element}: algebra matrix is not an automorphism")]
    NotAutomorphism { element: usize },
    #[error("element {element}: module matrix is not invertible")]
    ModuleNotInvertible { element: usize },
    #[error("element {element}: action pair is not compatible with the bimodule structure at basis index {basis}")]
    NotCompatible { element: usize, basis: usize },
    #[error("multiplication table is not a group: {reason}")]
    NotAGroup { reason: String },
    #[error("representation property fails at pair ({g}, {h})")]
    NotRepresentation { g: usize, h: usize },
    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("element index {index} out of range for group of order {order}")]
    BadElement { index: usize, order: usize },
    #[error("induced action on cohomology classes is ill-defined at element {element}: {detail}")]
    InducedActionFailure { element: usize, detail: String },
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// A finite group acting on the algebra by automorphisms and compatibly on
/// the module, with its full multiplication table.
#[derive(Debug, Clone)]
pub struct GroupAction {
    algebra_dim: usize,
    module_dim: usize,
    elements: Vec<(Mat, Mat)>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl GroupAction {
    /// Validates a full element list with its multiplication table.
    pub fn new(
        algebra: &FiniteDimAlgebra,
        module: &Bimodule,
        elements: Vec<(Mat, Mat)>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, ActionError> {
        let order = elements.len();
        let generators = (0..order).collect();
        Self::build(algebra, module, elements, table, generators)
    }

    /// Closes a generating set under multiplication (capped), building the
    /// table by exact matrix matching, then validates.
    pub fn from_generators(
        algebra: &FiniteDimAlgebra,
        module: &Bimodule,
        generators: Vec<(Mat, Mat)>,
        cap: usize,
    ) -> Result<Self, ActionError> {
        let d = algebra.dim();
        let m = module.dim();
        let id = (Mat::identity(d), Mat::identity(m));
        let mut elements: Vec<(Mat, Mat)> = vec![id];
        let mut gen_indices = Vec::new();
        for g in &generators {
            if let Some(pos) = elements.iter().position(|e| e == g) {
                gen_indices.push(pos);
            } else {
                elements.push(g.clone());
                gen_indices.push(elements.len() - 1);
            }
        }
        // Worklist closure under right multiplication by generators.
        let mut frontier: Vec<usize> = (0..elements.len()).collect();
        while let Some(i) = frontier.pop() {
            for g in &generators {
                let prod = (elements[i].0.mul(&g.0), elements[i].1.mul(&g.1));
                if !elements.iter().any(|e| *e == prod) {
                    elements.push(prod);
                    if elements.len() > cap {
                        return Err(ActionError::GroupTooLarge { cap });
                    }
                    frontier.push(elements.len() - 1);
                }
            }
        }
        let order = elements.len();
        let mut table = vec![vec![0usize; order]; order];
        for i in 0..order {
            for j in 0..order {
                let prod = (elements[i].0.mul(&elements[j].0), elements[i].1.mul(&elements[j].1));
                let k = elements
                    .iter()
                    .position(|e| *e == prod)
                    .ok_or_else(|| ActionError::NotAGroup {
                        reason: "closure is not closed under multiplication".into(),
                    })?;
                table[i][j] = k;
            }
        }
        Self::build(algebra, module, elements, table, gen_indices)
    }

    /// The trivial group acting by identities.
    pub fn trivial(algebra: &FiniteDimAlgebra, module: &Bimodule) -> Self {
        let id = (Mat::identity(algebra.dim()), Mat::identity(module.dim()));
        GroupAction {
            algebra_dim: algebra.dim(),
            module_dim: module.dim(),
            elements: vec![id],
            table: vec![vec![0]],
            identity: 0,
            inverse: vec![0],
            generators: vec![0],
        }
    }

    fn build(
        algebra: &FiniteDimAlgebra,
        module: &Bimodule,
        elements: Vec<(Mat, Mat)>,
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Result<Self, ActionError> {
        let order = elements.len();
        if order == 0 {
            return Err(ActionError::NotAGroup {
                reason: "empty element list".into(),
            });
        }
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(ActionError::NotAGroup {
                reason: format!("table is not {order} x {order}"),
            });
        }
        if table
            .iter()
            .any(|r| r.iter().any(|&x| x >= order))
        {
            return Err(ActionError::NotAGroup {
                reason: "table entry out of range".into(),
            });
        }
        // Group axioms on the table.
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| ActionError::NotAGroup {
                reason: "no identity element".into(),
            })?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(ActionError::NotAGroup {
                            reason: format!("associativity fails at ({a}, {b}, {c})"),
                        });
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            inverse[g] = (0..order)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| ActionError::NotAGroup {
                    reason: format!("element {g} has no inverse"),
                })?;
        }
        // Representation property for both components.
        for g in 0..order {
            for h in 0..order {
                let k = table[g][h];
                if elements[g].0.mul(&elements[h].0) != elements[k].0
                    || elements[g].1.mul(&elements[h].1) != elements[k].1
                {
                    return Err(ActionError::NotRepresentation { g, h });
                }
            }
        }
        // Each algebra matrix is an automorphism, each module matrix
        // invertible, and the pair is compatible with the bimodule actions:
        // rho_N L(e_i) = L(rho_A e_i) rho_N and likewise on the right.
        let m = module.dim();
        for (idx, (ga, gn)) in elements.iter().enumerate() {
            if !algebra.check_automorphism(ga)? {
                return Err(ActionError::NotAutomorphism { element: idx });
            }
            if gn.rows() != m || gn.cols() != m || gn.rank() != m {
                return Err(ActionError::ModuleNotInvertible { element: idx });
            }
            for i in 0..algebra.dim() {
                let lhs = gn.mul(module.left_basis(i));
                let rhs = module.left_action(&ga.column(i)).mul(gn);
                if lhs != rhs {
                    return Err(ActionError::NotCompatible {
                        element: idx,
                        basis: i,
                    });
                }
                let lhs = gn.mul(module.right_basis(i));
                let rhs = module.right_action(&ga.column(i)).mul(gn);
                if lhs != rhs {
                    return Err(ActionError::NotCompatible {
                        element: idx,
                        basis: i,
                    });
                }
            }
        }
        Ok(GroupAction {
            algebra_dim: algebra.dim(),
            module_dim: module.dim(),
            elements,
            table,
            identity,
            inverse,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse_of(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn multiply(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    /// Indices of the generating set this action was built from (all
    /// elements when constructed from a full table).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn algebra_matrix(&self, g: usize) -> &Mat {
        &self.elements[g].0
    }

    pub fn module_matrix(&self, g: usize) -> &Mat {
        &self.elements[g].1
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// `g` acting on a cochain:
    /// `(g . phi)(a_1,...,a_n) = rho_N(g) phi(rho_A(g)^-1 a_1, ..., rho_A(g)^-1 a_n)`.
    ///
    /// Degree 0 reduces to `rho_N(g)` applied to the module element.
    pub fn act_on_cochain(&self, g: usize, phi: &Cochain) -> Result<Cochain, ActionError> {
        if g >= self.order() {
            return Err(ActionError::BadElement {
                index: g,
                order: self.order(),
            });
        }
        if phi.algebra_dim != self.algebra_dim {
            return Err(CochainError::AlgebraDimMismatch {
                cochain: phi.algebra_dim,
                context: self.algebra_dim,
            }
            .into());
        }
        if phi.module_dim != self.module_dim {
            return Err(CochainError::ModuleDimMismatch {
                cochain: phi.module_dim,
                context: self.module_dim,
            }
            .into());
        }
        let d = self.algebra_dim;
        let m = self.module_dim;
        let n = phi.degree;
        let qinv = &self.elements[self.inverse[g]].0;
        let rho_n = &self.elements[g].1;
        let mut data = phi.coeffs.clone();
        // Contract each argument axis with rho_A(g^-1): expanding the i-th
        // argument e_j through the inverse gives
        // new(..., i, ...) = sum_j qinv[j][i] old(..., j, ...),
        // i.e. a contraction against the transpose of qinv.
        for axis in 0..n {
            let stride = d.pow((n - 1 - axis) as u32) * m;
            data = contract_axis(&data, d, stride, |a, b| qinv.get(b, a));
        }
        // Apply rho_N(g) on the module axis.
        data = contract_axis(&data, m, 1, |a, b| rho_n.get(a, b));
        Ok(Cochain {
            degree: n,
            algebra_dim: d,
            module_dim: m,
            coeffs: data,
        })
    }

    /// Reynolds averaging: `(1/|G|) sum_g g . phi`. A projector onto the
    /// invariant cochains that commutes with the differential.
    pub fn average(&self, phi: &Cochain) -> Result<Cochain, ActionError> {
        let mut acc = Cochain::zero(phi.degree, phi.algebra_dim, phi.module_dim);
        for g in 0..self.order() {
            acc = acc.add(&self.act_on_cochain(g, phi)?);
        }
        let order = Rat::from_integer(self.order().into());
        Ok(acc.scale(&(Rat::one() / order)))
    }

    /// True iff `g . phi = phi` for every group element.
    pub fn is_invariant(&self, phi: &Cochain) -> Result<bool, ActionError> {
        for g in 0..self.order() {
            if self.act_on_cochain(g, phi)? != *phi {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Contracts one tensor axis against a matrix of weights. Flat positions
/// decompose as `hi * (k * stride) + a * stride + lo` with `lo < stride`;
/// the new value at axis index `a` is `sum_b w(a, b) * old(b)`.
fn contract_axis<'a>(
    data: &[Rat],
    k: usize,
    stride: usize,
    w: impl Fn(usize, usize) -> &'a Rat,
) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); data.len()];
    let block = k * stride;
    let blocks = if block == 0 { 0 } else { data.len() / block };
    for hi in 0..blocks {
        let base = hi * block;
        for lo in 0..stride {
            for b in 0..k {
                let old = &data[base + b * stride + lo];
                if old.is_zero() {
                    continue;
                }
                for a in 0..k {
                    let weight = w(a, b);
                    if !weight.is_zero() {
                        let idx = base + a * stride + lo;
                        out[idx] = &out[idx] + &(weight * old);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::models;
    use crate::scalar::{rat, rint};

    fn dual_setup() -> (FiniteDimAlgebra, Bimodule) {
        let a = models::dual_numbers();
        let m = Bimodule::regular(&a);
        (a, m)
    }

    #[test]
    fn differential_on_degree_zero_is_commutator() {
        let a = models::matrix_algebra(2);
        let m = Bimodule::regular(&a);
        // nu = E01: d(nu)(a) = a E01 - E01 a.
        let nu = Cochain::from_module_element(4, vec![rint(0), rint(1), rint(0), rint(0)]);
        let d_nu = differential(&a, &m, &nu).unwrap();
        // On E00: E00 E01 - E01 E00 = E01.
        assert_eq!(d_nu.value(&[0]), &[rint(0), rint(1), rint(0), rint(0)]);
        // On E11: E11 E01 - E01 E11 = -E01.
        assert_eq!(d_nu.value(&[3]), &[rint(0), rint(-1), rint(0), rint(0)]);
    }

    #[test]
    fn differential_of_identity_is_multiplication() {
        for a in [models::dual_numbers(), models::matrix_algebra(2)] {
            let m = Bimodule::regular(&a);
            let id = Cochain::identity_map(a.dim());
            let d_id = differential(&a, &m, &id).unwrap();
            assert_eq!(d_id, Cochain::multiplication(&a));
        }
    }

    #[test]
    fn dual_numbers_coboundary_value() {
        // phi(1) = 0, phi(x) = 1: (d phi)(x, x) = 2x.
        let (a, m) = dual_setup();
        let mut phi = Cochain::zero(1, 2, 2);
        phi.value_mut(&[1])[0] = rint(1);
        let d_phi = differential(&a, &m, &phi).unwrap();
        assert_eq!(d_phi.value(&[1, 1]), &[rint(0), rint(2)]);
        // On (1, 1) all three terms vanish.
        assert_eq!(d_phi.value(&[0, 0]), &[rint(0), rint(0)]);
        // On (1, x): 1 phi(x) - phi(x) + phi(1) x = 0.
        assert_eq!(d_phi.value(&[0, 1]), &[rint(0), rint(0)]);
    }

    #[test]
    fn differential_squares_to_zero_spot_checks() {
        let (a, m) = dual_setup();
        let mut phi = Cochain::zero(2, 2, 2);
        phi.value_mut(&[0, 1])[1] = rat(3, 2);
        phi.value_mut(&[1, 1])[0] = rint(-2);
        phi.value_mut(&[1, 0])[0] = rat(1, 3);
        let dd = differential(&a, &m, &differential(&a, &m, &phi).unwrap()).unwrap();
        assert!(dd.is_zero());
    }

    #[test]
    fn bracket_identity_with_multiplication() {
        // [id, mu] = -mu and d(id) = mu, so d(phi) = -[phi, mu] at phi = id.
        let a = models::matrix_algebra(2);
        let mu = Cochain::multiplication(&a);
        let id = Cochain::identity_map(a.dim());
        let br = gerstenhaber_bracket(&id, &mu).unwrap();
        assert_eq!(br, mu.neg());
    }

    #[test]
    fn bracket_detects_associativity() {
        let a = models::group_algebra_cyclic(3);
        let mu = Cochain::multiplication(&a);
        let br = gerstenhaber_bracket(&mu, &mu).unwrap();
        assert!(br.is_zero());
    }

    #[test]
    fn degree_zero_bracket_is_commutator_with_sign() {
        // For a in HC^0, -[a, mu](x) = x a - a x = d(a)(x).
        let a = models::matrix_algebra(2);
        let m = Bimodule::regular(&a);
        let mu = Cochain::multiplication(&a);
        let elt = Cochain::from_module_element(4, vec![rint(0), rint(1), rint(0), rint(0)]);
        let br = gerstenhaber_bracket(&elt, &mu).unwrap();
        let d_elt = differential(&a, &m, &elt).unwrap();
        assert_eq!(br.neg(), d_elt);
    }

    #[test]
    fn sign_action_on_dual_numbers() {
        let (a, m) = dual_setup();
        let sigma = Mat::from_rows(vec![vec![rint(1), rint(0)], vec![rint(0), rint(-1)]]);
        let action = GroupAction::from_generators(&a, &m, vec![(sigma.clone(), sigma)], 16).unwrap();
        assert_eq!(action.order(), 2);
        // phi(1) = 0, phi(x) = 1 flips sign, so its average is zero.
        let mut phi = Cochain::zero(1, 2, 2);
        phi.value_mut(&[1])[0] = rint(1);
        let g = (0..2).find(|&g| g != action.identity()).unwrap();
        assert_eq!(action.act_on_cochain(g, &phi).unwrap(), phi.neg());
        assert!(action.average(&phi).unwrap().is_zero());
        // The parity-preserving derivation x -> x is fixed.
        let mut der = Cochain::zero(1, 2, 2);
        der.value_mut(&[1])[1] = rint(1);
        assert_eq!(action.act_on_cochain(g, &der).unwrap(), der);
        assert!(action.is_invariant(&der).unwrap());
    }

    #[test]
    fn averaging_is_projector_and_chain_map() {
        let (a, m) = dual_setup();
        let sigma = Mat::from_rows(vec![vec![rint(1), rint(0)], vec![rint(0), rint(-1)]]);
        let action = GroupAction::from_generators(&a, &m, vec![(sigma.clone(), sigma)], 16).unwrap();
        let mut phi = Cochain::zero(2, 2, 2);
        phi.value_mut(&[0, 1])[1] = rat(5, 3);
        phi.value_mut(&[1, 1])[0] = rint(7);
        phi.value_mut(&[1, 0])[1] = rint(-1);
        let avg = action.average(&phi).unwrap();
        assert_eq!(action.average(&avg).unwrap(), avg);
        let d_avg = differential(&a, &m, &avg).unwrap();
        let avg_d = action.average(&differential(&a, &m, &phi).unwrap()).unwrap();
        assert_eq!(d_avg, avg_d);
    }

    #[test]
    fn evaluate_matches_tensor_entries() {
        let (a, _) = dual_setup();
        let mu = Cochain::multiplication(&a);
        let x = vec![rint(0), rint(1)];
        let one_plus_x = vec![rint(1), rint(1)];
        assert_eq!(
            mu.evaluate(&[one_plus_x.clone(), x.clone()]).unwrap(),
            a.multiply(&one_plus_x, &x).unwrap()
        );
    }

    #[test]
    fn degree_cap_is_enforced() {
        let (a, m) = dual_setup();
        let phi = Cochain::zero(8, 2, 2);
        let err = differential(&a, &m, &phi).unwrap_err();
        assert!(matches!(err, CochainError::DegreeCap { degree: 9, .. }));
    }
}
