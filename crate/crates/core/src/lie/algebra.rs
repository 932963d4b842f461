use num_traits::Zero;

use crate::algebra::{Poly, Var};

use super::series::{bch_dynkin_words, Series, Word};
use super::{LieError, Matrix, Vector};

/// An ungraded nilpotent Lie algebra over the polynomial ring, given by
/// (possibly polynomial) structure constants in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `table[i * dim + j]` lists the nonzero components of `[e_i, e_j]`.
    table: Vec<Vec<(usize, Poly)>>,
    class: usize,
}

impl LieAlgebra {
    /// Builds the algebra from entries `[e_i, e_j] ∋ c e_k`. The antisymmetric
    /// partner of each entry is filled in; entries given twice must agree.
    pub fn new(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Poly)>,
        class: usize,
    ) -> Result<Self, LieError> {
        let mut dense = vec![Poly::zero(); dim * dim * dim];
        let mut given = vec![false; dim * dim * dim];
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(LieError::IndexOutOfRange {
                    index: i.max(j).max(k),
                    dim,
                });
            }
            for (a, b, val) in [(i, j, c.clone()), (j, i, -&c)] {
                let at = idx(a, b, k);
                if given[at] && dense[at] != val {
                    return Err(LieError::Antisymmetry { i, j, k });
                }
                given[at] = true;
                dense[at] = val;
            }
        }
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let c = std::mem::take(&mut dense[idx(i, j, k)]);
                    if !c.is_zero() {
                        table[i * dim + j].push((k, c));
                    }
                }
            }
        }
        Ok(LieAlgebra { dim, table, class })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            table: vec![Vec::new(); dim * dim],
            class: 1,
        }
    }

    pub(crate) fn from_table(dim: usize, table: Vec<Vec<(usize, Poly)>>, class: usize) -> Self {
        LieAlgebra { dim, table, class }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Poly)] {
        &self.table[i * self.dim + j]
    }

    pub fn zero(&self) -> Vector {
        Vector::zero(self.dim)
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.dim, i)
    }

    pub fn bracket(&self, a: &Vector, b: &Vector) -> Vector {
        debug_assert_eq!(a.dim(), self.dim);
        debug_assert_eq!(b.dim(), self.dim);
        let mut out = Vector::zero(self.dim);
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let entries = self.structure(i, j);
                if entries.is_empty() {
                    continue;
                }
                let prod = ai * bj;
                for (k, c) in entries {
                    out.0[*k] += &(&prod * c);
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)` in the basis.
    pub fn ad_matrix(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zero(self.dim);
        for j in 0..self.dim {
            let col = self.bracket(x, &self.basis(j));
            for (i, p) in col.0.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    /// `sum_k c_k ad(x)^k (target)`; terminates since `ad(x)^class = 0`.
    pub fn adjoint_series(&self, x: &Vector, series: Series, target: &Vector) -> Vector {
        let mut acc = target.scale(&series.coefficient(0));
        let mut term = target.clone();
        for k in 1..self.class.max(1) {
            term = self.bracket(x, &term);
            if term.is_zero() {
                break;
            }
            let c = series.coefficient(k);
            if !c.is_zero() {
                acc.add_assign(&term.scale(&c));
            }
        }
        acc
    }

    /// `Ad_{exp x}(y)`.
    pub fn ad_exp(&self, x: &Vector, y: &Vector) -> Vector {
        self.adjoint_series(x, Series::Ad, y)
    }

    /// `log(exp(a) exp(b))` by the Dynkin formula truncated at the class.
    pub fn bch(&self, a: &Vector, b: &Vector) -> Vector {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let max_len = self.class.max(1) as u32;
        let words = bch_dynkin_words(max_len);
        let letters = [a, b];
        let mut out = self.zero();
        // left-normed brackets share prefixes; cache them per prefix
        let mut cache: std::collections::HashMap<Word, Vector> = std::collections::HashMap::new();
        for (w, c) in words.iter() {
            if let Some(v) = self.left_normed(*w, &letters, &mut cache) {
                out.add_assign(&v.scale(c));
            }
        }
        out
    }

    fn left_normed(
        &self,
        w: Word,
        letters: &[&Vector; 2],
        cache: &mut std::collections::HashMap<Word, Vector>,
    ) -> Option<Vector> {
        if w.len == 1 {
            return Some(letters[w.letter(0) as usize].clone());
        }
        if let Some(v) = cache.get(&w) {
            return if v.is_zero() { None } else { Some(v.clone()) };
        }
        let prefix = Word {
            len: w.len - 1,
            mask: w.mask & ((1 << (w.len - 1)) - 1),
        };
        let v = match self.left_normed(prefix, letters, cache) {
            Some(p) => self.bracket(&p, letters[w.letter(w.len - 1) as usize]),
            None => self.zero(),
        };
        cache.insert(w, v.clone());
        if v.is_zero() {
            None
        } else {
            Some(v)
        }
    }

    /// Applies a derivation of the coefficient ring and algebra to `v`.
    pub fn apply_derivation(&self, d: &Derivation, v: &Vector) -> Vector {
        match d {
            Derivation::Partial(var) => v.derivative(*var),
            Derivation::Inner(x) => self.bracket(x, v),
            Derivation::Linear(m) => m.apply(v),
            Derivation::Sum(parts) => {
                let mut acc = self.zero();
                for p in parts {
                    acc.add_assign(&self.apply_derivation(p, v));
                }
                acc
            }
            Derivation::Commutator(a, b) => {
                let ab = self.apply_derivation(a, &self.apply_derivation(b, v));
                let ba = self.apply_derivation(b, &self.apply_derivation(a, v));
                &ab - &ba
            }
        }
    }

    /// Largest residual of `D[e_i, e_j] - [De_i, e_j] - [e_i, De_j]`, or
    /// `None` when `D` is a derivation of the bracket.
    pub fn derivation_defect(&self, d: &Derivation) -> Option<(usize, usize, Vector)> {
        let images: Vec<Vector> = (0..self.dim)
            .map(|i| self.apply_derivation(d, &self.basis(i)))
            .collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = self.apply_derivation(d, &self.bracket(&self.basis(i), &self.basis(j)));
                let r1 = self.bracket(&images[i], &self.basis(j));
                let r2 = self.bracket(&self.basis(i), &images[j]);
                let res = &(&lhs - &r1) - &r2;
                if !res.is_zero() {
                    return Some((i, j, res));
                }
            }
        }
        None
    }

    /// `D log(exp x) = ((exp(ad x) - 1)/ad x)(Dx)`, without checking that `D`
    /// is a derivation.
    pub fn log_derivative_unchecked(&self, d: &Derivation, x: &Vector) -> Vector {
        let dx = self.apply_derivation(d, x);
        self.adjoint_series(x, Series::Expm1OverId, &dx)
    }

    pub fn log_derivative(&self, d: &Derivation, x: &Vector) -> Result<Vector, LieError> {
        if let Some((i, j, res)) = self.derivation_defect(d) {
            return Err(LieError::NotDerivation {
                i,
                j,
                residual: format!("{:?}", res),
            });
        }
        Ok(self.log_derivative_unchecked(d, x))
    }

    /// Checks the Jacobi identity on basis triples; returns the first failing
    /// triple.
    pub fn jacobi_defect(&self) -> Option<(usize, usize, usize, Vector)> {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.bracket(&a, &self.bracket(&b, &c));
                    let t2 = self.bracket(&b, &self.bracket(&c, &a));
                    let t3 = self.bracket(&c, &self.bracket(&a, &b));
                    let s = &(&t1 + &t2) + &t3;
                    if !s.is_zero() {
                        return Some((i, j, k, s));
                    }
                }
            }
        }
        None
    }

    /// Checks that every left-normed bracket of `class + 1` basis elements
    /// vanishes.
    pub fn nilpotency_holds(&self) -> bool {
        let mut layer: Vec<Vector> = (0..self.dim).map(|i| self.basis(i)).collect();
        for _ in 0..self.class.max(1) {
            let mut next: Vec<Vector> = Vec::new();
            for v in &layer {
                for j in 0..self.dim {
                    let w = self.bracket(v, &self.basis(j));
                    if !w.is_zero() && !next.contains(&w) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                return true;
            }
            layer = next;
        }
        false
    }

    /// Adjoint representation.
    pub fn adjoint_representation(&self) -> NilpotentRepresentation {
        let matrices = (0..self.dim)
            .map(|i| self.ad_matrix(&self.basis(i)))
            .collect();
        NilpotentRepresentation {
            space_dim: self.dim,
            matrices,
            bound: self.class.max(1),
        }
    }

    /// Substitutes in the structure constants.
    pub fn substitute(&self, s: &crate::algebra::Substitution) -> LieAlgebra {
        let table = self
            .table
            .iter()
            .map(|entries| {
                entries
                    .iter()
                    .map(|(k, c)| (*k, c.substitute(s)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        LieAlgebra::from_table(self.dim, table, self.class)
    }

    /// Evaluates structure constants under a substitution of one variable.
    pub fn subst_one(&self, v: Var, image: &Poly) -> LieAlgebra {
        let table = self
            .table
            .iter()
            .map(|entries| {
                entries
                    .iter()
                    .map(|(k, c)| (*k, c.subst_one(v, image)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        LieAlgebra::from_table(self.dim, table, self.class)
    }
}

/// A derivation acting on algebra-valued polynomial vectors.
#[derive(Clone, Debug)]
pub enum Derivation {
    /// Coefficientwise partial derivative.
    Partial(Var),
    /// `ad(x)`.
    Inner(Vector),
    /// A linear map given by its matrix.
    Linear(Matrix),
    Sum(Vec<Derivation>),
    Commutator(Box<Derivation>, Box<Derivation>),
}

impl Derivation {
    /// `partial_v + m`, the covariant derivative along `v`.
    pub fn covariant(v: Var, m: Matrix) -> Derivation {
        Derivation::Sum(vec![Derivation::Partial(v), Derivation::Linear(m)])
    }

    pub fn commutator(a: Derivation, b: Derivation) -> Derivation {
        Derivation::Commutator(Box::new(a), Box::new(b))
    }
}

/// An element of `exp(g)` stored by its logarithm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub log: Vector,
}

impl GroupElement {
    pub fn identity(dim: usize) -> Self {
        GroupElement {
            log: Vector::zero(dim),
        }
    }

    pub fn exp(log: Vector) -> Self {
        GroupElement { log }
    }

    pub fn is_identity(&self) -> bool {
        self.log.is_zero()
    }

    pub fn mul(&self, alg: &LieAlgebra, other: &GroupElement) -> GroupElement {
        GroupElement {
            log: alg.bch(&self.log, &other.log),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { log: -&self.log }
    }

    /// `Conj(self)(h) = self h self^{-1}`.
    pub fn conj(&self, alg: &LieAlgebra, h: &GroupElement) -> GroupElement {
        GroupElement {
            log: alg.ad_exp(&self.log, &h.log),
        }
    }

    pub fn ad(&self, alg: &LieAlgebra, y: &Vector) -> Vector {
        alg.ad_exp(&self.log, y)
    }

    pub fn product<'a>(
        alg: &LieAlgebra,
        factors: impl IntoIterator<Item = &'a GroupElement>,
    ) -> GroupElement {
        let mut acc = GroupElement::identity(alg.dim());
        for f in factors {
            acc = acc.mul(alg, f);
        }
        acc
    }
}

/// A nilpotent matrix representation with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentRepresentation {
    pub space_dim: usize,
    pub matrices: Vec<Matrix>,
    pub bound: usize,
}

impl NilpotentRepresentation {
    pub fn new(space_dim: usize, matrices: Vec<Matrix>, bound: usize) -> Self {
        NilpotentRepresentation {
            space_dim,
            matrices,
            bound,
        }
    }

    pub fn matrix_of(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zero(self.space_dim);
        for (xi, mi) in x.0.iter().zip(&self.matrices) {
            if !xi.is_zero() {
                m = m.add(&mi.mul_poly(xi));
            }
        }
        m
    }

    /// Checks `rho([e_i, e_j]) = [rho(e_i), rho(e_j)]` and the nilpotency
    /// bound on products of generators.
    pub fn validate(&self, alg: &LieAlgebra) -> Result<(), LieError> {
        if self.matrices.len() != alg.dim() {
            return Err(LieError::DimensionMismatch {
                expected: alg.dim(),
                found: self.matrices.len(),
            });
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.matrix_of(&alg.bracket(&alg.basis(i), &alg.basis(j)));
                let rhs = self.matrices[i].commutator(&self.matrices[j]);
                if lhs != rhs {
                    return Err(LieError::Representation { i, j });
                }
            }
        }
        let mut layer: Vec<Matrix> = vec![Matrix::identity(self.space_dim)];
        for _ in 0..self.bound {
            let mut next = Vec::new();
            for m in &layer {
                for g in &self.matrices {
                    let p = m.mul(g);
                    if !p.is_zero() && !next.contains(&p) {
                        next.push(p);
                    }
                }
            }
            layer = next;
        }
        if layer.is_empty() {
            Ok(())
        } else {
            Err(LieError::RepresentationNotNilpotent { bound: self.bound })
        }
    }

    /// `exp(rho(log u))`.
    pub fn apply(&self, u: &GroupElement) -> Matrix {
        self.matrix_of(&u.log).exp_nilpotent()
    }
}
