use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, Poly, Rational};

use super::{LieAlgebra, LieError, Vector};

pub const MIN_DEGREE: i32 = -1;
pub const MAX_DEGREE: i32 = 2;

/// Sign `(-1)^(a*b)`.
pub fn koszul(a: i32, b: i32) -> i64 {
    if (a * b).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
}

/// A homogeneous element: coefficients over the basis of one degree component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub degree: i32,
    pub coeffs: Vector,
}

impl LieElement {
    pub fn new(degree: i32, coeffs: Vector) -> Self {
        LieElement { degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

/// A finite-dimensional nilpotent DGLA over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGLAModel {
    basis: Vec<BasisElement>,
    /// `differential[i]` lists the components of `δ e_i`.
    differential: Vec<Vec<(usize, Rational)>>,
    /// `brackets[i * n + j]` lists the components of `[e_i, e_j]`.
    brackets: Vec<Vec<(usize, Rational)>>,
    class: usize,
    components: BTreeMap<i32, Vec<usize>>,
    local: Vec<usize>,
}

impl DGLAModel {
    /// Builds and fully validates a model. Differential triples are
    /// `(source, target, c)` meaning `δ e_source ∋ c e_target`; bracket
    /// quadruples `(i, j, k, c)` mean `[e_i, e_j] ∋ c e_k`. Graded
    /// antisymmetric partners are filled in.
    pub fn new(
        basis: Vec<BasisElement>,
        differential: Vec<(usize, usize, Rational)>,
        brackets: Vec<(usize, usize, usize, Rational)>,
        class: usize,
    ) -> Result<Self, LieError> {
        let model = Self::assemble(basis, differential, brackets, class)?;
        model.validate()?;
        Ok(model)
    }

    /// Builds without the Jacobi, Leibniz, δ² and nilpotency checks.
    pub fn assemble(
        basis: Vec<BasisElement>,
        differential: Vec<(usize, usize, Rational)>,
        brackets: Vec<(usize, usize, usize, Rational)>,
        class: usize,
    ) -> Result<Self, LieError> {
        let n = basis.len();
        for b in &basis {
            if b.degree < MIN_DEGREE || b.degree > MAX_DEGREE {
                return Err(LieError::DegreeOutOfRange {
                    name: b.name.clone(),
                    degree: b.degree,
                });
            }
        }
        let check = |i: usize| {
            if i >= n {
                Err(LieError::IndexOutOfRange { index: i, dim: n })
            } else {
                Ok(())
            }
        };
        let mut diff: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
        for (i, j, c) in differential {
            check(i)?;
            check(j)?;
            if basis[j].degree != basis[i].degree + 1 {
                return Err(LieError::DifferentialDegree { from: i, to: j });
            }
            *diff[i].entry(j).or_insert_with(Rational::zero) += c;
        }
        let mut br: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for (i, j, k, c) in brackets {
            check(i)?;
            check(j)?;
            check(k)?;
            if basis[k].degree != basis[i].degree + basis[j].degree {
                return Err(LieError::BracketDegree { i, j, k });
            }
            let sign = Rational::from_integer((-koszul(basis[i].degree, basis[j].degree)).into());
            let partner = &c * &sign;
            for (key, val) in [((i, j, k), c), ((j, i, k), partner)] {
                match br.get(&key) {
                    Some(existing) if *existing != val => {
                        return Err(LieError::Antisymmetry { i, j, k });
                    }
                    _ => {
                        br.insert(key, val);
                    }
                }
            }
        }
        let mut table = vec![Vec::new(); n * n];
        for ((i, j, k), c) in br {
            if !c.is_zero() {
                table[i * n + j].push((k, c));
            }
        }
        let mut components: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0; n];
        for (i, b) in basis.iter().enumerate() {
            let comp = components.entry(b.degree).or_default();
            local[i] = comp.len();
            comp.push(i);
        }
        Ok(DGLAModel {
            basis,
            differential: diff
                .into_iter()
                .map(|m| m.into_iter().filter(|(_, c)| !c.is_zero()).collect())
                .collect(),
            brackets: table,
            class,
            components,
            local,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn degree_of(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    /// Global indices of the basis elements of degree `deg`.
    pub fn component(&self, deg: i32) -> &[usize] {
        self.components.get(&deg).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, deg: i32) -> usize {
        self.component(deg).len()
    }

    /// Position of global index `i` inside its degree component.
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.brackets[i * self.len() + j]
    }

    pub fn differential_basis(&self, i: usize) -> &[(usize, Rational)] {
        &self.differential[i]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(Vec::is_empty)
    }

    pub fn zero(&self, deg: i32) -> LieElement {
        LieElement::new(deg, Vector::zero(self.dim(deg)))
    }

    /// Basis element by global index, as a homogeneous element.
    pub fn element(&self, i: usize) -> LieElement {
        let deg = self.degree_of(i);
        LieElement::new(deg, Vector::basis(self.dim(deg), self.local[i]))
    }

    fn check_element(&self, a: &LieElement) -> Result<(), LieError> {
        let expected = self.dim(a.degree);
        if a.coeffs.dim() != expected {
            return Err(LieError::DimensionMismatch {
                expected,
                found: a.coeffs.dim(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.bracket_unchecked(a, b))
    }

    pub(crate) fn bracket_unchecked(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let deg = a.degree + b.degree;
        let mut out = self.zero(deg);
        if out.coeffs.dim() == 0 {
            return out;
        }
        let ca = self.component(a.degree);
        let cb = self.component(b.degree);
        for (li, ai) in a.coeffs.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (lj, bj) in b.coeffs.0.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let entries = self.bracket_basis(ca[li], cb[lj]);
                if entries.is_empty() {
                    continue;
                }
                let prod = ai * bj;
                for (k, c) in entries {
                    out.coeffs.0[self.local[*k]] += &prod.scale(c);
                }
            }
        }
        out
    }

    pub fn differential(&self, a: &LieElement) -> LieElement {
        let mut out = self.zero(a.degree + 1);
        if out.coeffs.dim() == 0 {
            return out;
        }
        let ca = self.component(a.degree);
        for (li, ai) in a.coeffs.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, c) in self.differential_basis(ca[li]) {
                out.coeffs.0[self.local[*j]] += &ai.scale(c);
            }
        }
        out
    }

    pub fn add(&self, a: &LieElement, b: &LieElement) -> LieElement {
        debug_assert_eq!(a.degree, b.degree);
        LieElement::new(a.degree, &a.coeffs + &b.coeffs)
    }

    /// `δγ + ½[γ, γ]`.
    pub fn mc_defect(&self, gamma: &LieElement) -> LieElement {
        let half = Rational::new(1.into(), 2.into());
        let sq = self.bracket_unchecked(gamma, gamma);
        let d = self.differential(gamma);
        LieElement::new(d.degree, &d.coeffs + &sq.coeffs.scale(&half))
    }

    /// `δ_γ a = δa + [γ, a]`.
    pub fn twisted_differential(&self, gamma: &LieElement, a: &LieElement) -> LieElement {
        let d = self.differential(a);
        let b = self.bracket_unchecked(gamma, a);
        LieElement::new(d.degree, &d.coeffs + &b.coeffs)
    }

    /// The degree-0 component as a Lie algebra.
    pub fn degree_zero_algebra(&self) -> LieAlgebra {
        self.component_algebra(0)
    }

    fn component_algebra(&self, deg: i32) -> LieAlgebra {
        let comp = self.component(deg);
        let dim = comp.len();
        let mut table = vec![Vec::new(); dim * dim];
        if 2 * deg == deg {
            for (a, &i) in comp.iter().enumerate() {
                for (b, &j) in comp.iter().enumerate() {
                    table[a * dim + b] = self
                        .bracket_basis(i, j)
                        .iter()
                        .map(|(k, c)| (self.local[*k], Poly::constant(c.clone())))
                        .collect();
                }
            }
        }
        LieAlgebra::from_table(dim, table, self.class)
    }

    /// `[a, b]_γ = [a, δb + [γ, b]]` on degree -1 elements.
    pub fn twisted_bracket(
        &self,
        gamma: &LieElement,
        a: &LieElement,
        b: &LieElement,
    ) -> Result<LieElement, LieError> {
        if gamma.degree != 1 || a.degree != -1 || b.degree != -1 {
            return Err(LieError::DegreeMismatch);
        }
        self.check_element(gamma)?;
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.bracket_unchecked(a, &self.twisted_differential(gamma, b)))
    }

    /// `g^{-1}` with the bracket `[·,·]_γ`; γ may have polynomial coefficients.
    /// No MC check is made here.
    pub fn twisted_minus_one_unchecked(&self, gamma: &LieElement) -> LieAlgebra {
        let dim = self.dim(-1);
        let mut table = vec![Vec::new(); dim * dim];
        let basis: Vec<LieElement> = (0..dim)
            .map(|a| LieElement::new(-1, Vector::basis(dim, a)))
            .collect();
        let twisted: Vec<LieElement> = basis
            .iter()
            .map(|b| self.twisted_differential(gamma, b))
            .collect();
        for a in 0..dim {
            for b in 0..dim {
                let v = self.bracket_unchecked(&basis[a], &twisted[b]);
                table[a * dim + b] = v
                    .coeffs
                    .0
                    .into_iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .collect();
            }
        }
        LieAlgebra::from_table(dim, table, self.class)
    }

    pub fn twisted_minus_one(&self, gamma: &LieElement) -> Result<LieAlgebra, LieError> {
        if gamma.degree != 1 {
            return Err(LieError::DegreeMismatch);
        }
        self.check_element(gamma)?;
        let defect = self.mc_defect(gamma);
        if !defect.is_zero() {
            return Err(LieError::NotMaurerCartan(format!("{:?}", defect.coeffs)));
        }
        Ok(self.twisted_minus_one_unchecked(gamma))
    }

    fn basis_triples(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let n = self.len();
        (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
    }

    fn rat_vec_bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.len();
        let mut out = vec![Rational::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += ui * vj * c;
                }
            }
        }
        out
    }

    fn rat_vec_diff(&self, u: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.len()];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, c) in self.differential_basis(i) {
                out[*j] += ui * c;
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len()];
        v[i] = Rational::one();
        v
    }

    /// Runs every structural check eagerly.
    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.len();
        let deg: Vec<i32> = self.basis.iter().map(|b| b.degree).collect();
        // graded Jacobi in the cyclic form
        for (i, j, k) in self.basis_triples() {
            if !(i <= j && j <= k) {
                continue;
            }
            let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
            let t1 = self.rat_vec_bracket(&a, &self.rat_vec_bracket(&b, &c));
            let t2 = self.rat_vec_bracket(&b, &self.rat_vec_bracket(&c, &a));
            let t3 = self.rat_vec_bracket(&c, &self.rat_vec_bracket(&a, &b));
            let s1 = Rational::from_integer(koszul(deg[i], deg[k]).into());
            let s2 = Rational::from_integer(koszul(deg[j], deg[i]).into());
            let s3 = Rational::from_integer(koszul(deg[k], deg[j]).into());
            let ok = (0..n).all(|m| (&t1[m] * &s1 + &t2[m] * &s2 + &t3[m] * &s3).is_zero());
            if !ok {
                return Err(LieError::Jacobi { i, j, k });
            }
        }
        for i in 0..n {
            let dd = self.rat_vec_diff(&self.rat_vec_diff(&self.unit(i)));
            if !dd.iter().all(Zero::is_zero) {
                return Err(LieError::DifferentialSquare { index: i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.unit(i), self.unit(j));
                let lhs = self.rat_vec_diff(&self.rat_vec_bracket(&a, &b));
                let r1 = self.rat_vec_bracket(&self.rat_vec_diff(&a), &b);
                let r2 = self.rat_vec_bracket(&a, &self.rat_vec_diff(&b));
                let s = Rational::from_integer(koszul(deg[i], 1).into());
                let ok = (0..n).all(|m| (&lhs[m] - &r1[m] - &r2[m] * &s).is_zero());
                if !ok {
                    return Err(LieError::Leibniz { i, j });
                }
            }
        }
        let actual = self.lower_central_class();
        if actual > self.class {
            return Err(LieError::Nilpotency {
                declared: self.class,
                actual,
            });
        }
        Ok(())
    }

    /// Smallest `c` with the `(c+1)`-st lower central series term zero.
    pub fn lower_central_class(&self) -> usize {
        let n = self.len();
        if n == 0 {
            return 0;
        }
        let mut current = row_reduce((0..n).map(|i| self.unit(i)).collect());
        let mut c = 0;
        while !current.is_empty() {
            c += 1;
            let mut next = Vec::new();
            for v in &current {
                for i in 0..n {
                    let w = self.rat_vec_bracket(&self.unit(i), v);
                    if !w.iter().all(Zero::is_zero) {
                        next.push(w);
                    }
                }
            }
            current = row_reduce(next);
            if c > n + 1 {
                break;
            }
        }
        c
    }

    /// Serializes to the canonical JSON model format.
    pub fn to_file(&self) -> ModelFile {
        let n = self.len();
        let mut differential = Vec::new();
        for i in 0..n {
            for (j, c) in &self.differential[i] {
                differential.push((i, *j, format_rational(c)));
            }
        }
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i..n {
                for (k, c) in self.bracket_basis(i, j) {
                    brackets.push((i, j, *k, format_rational(c)));
                }
            }
        }
        ModelFile {
            basis: self.basis.clone(),
            differential,
            brackets,
            class: self.class,
        }
    }

    pub fn from_file(file: ModelFile) -> Result<Self, LieError> {
        let parse = |s: &str| parse_rational(s).map_err(|e| LieError::Parse(e.to_string()));
        let differential = file
            .differential
            .iter()
            .map(|(i, j, c)| Ok((*i, *j, parse(c)?)))
            .collect::<Result<Vec<_>, LieError>>()?;
        let brackets = file
            .brackets
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, parse(c)?)))
            .collect::<Result<Vec<_>, LieError>>()?;
        DGLAModel::new(file.basis, differential, brackets, file.class)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, LieError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| {
            LieError::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
        })?;
        DGLAModel::from_file(file)
    }
}

/// On-disk model representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub basis: Vec<BasisElement>,
    pub differential: Vec<(usize, usize, String)>,
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub class: usize,
}

/// Row-reduces a list of rational vectors to a basis of their span.
pub(crate) fn row_reduce(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut r in rows.drain(..) {
        for (b, &p) in basis.iter().zip(&pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone() / &b[p];
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            basis.push(r);
            pivots.push(p);
        }
    }
    basis
}
