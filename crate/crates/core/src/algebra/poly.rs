use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{AlgebraError, Rational, Var, VarKind};

/// A monomial as a sparse list of `(variable, exponent)` pairs sorted by
/// variable, exponents strictly positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::one();
        }
        let mut m = SmallVec::new();
        m.push((v, exp));
        Monomial(m)
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort();
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits off the exponent of `v`.
    fn without(&self, v: Var) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|&&(w, x)| {
                if w == v {
                    e = x;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (e, Monomial(rest))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted by monomial with no zero coefficients, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: vec![(Monomial::one(), c)],
        }
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Poly {
            terms: vec![(Monomial::var(v, 1), Rational::one())],
        }
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: vec![(m, c)],
        }
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        Poly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_map(map: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(v))
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    /// Variables occurring with nonzero exponent, sorted.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.pairs().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut map = HashMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            if e == 0 {
                continue;
            }
            let mono = rest.mul(&Monomial::var(v, e - 1));
            *map.entry(mono).or_insert_with(Rational::zero) += c * Rational::from_integer(e.into());
        }
        Poly::from_map(map)
    }

    /// The antiderivative in `v` with zero constant term.
    pub fn antiderivative(&self, v: Var) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let (e, rest) = m.without(v);
            (
                rest.mul(&Monomial::var(v, e + 1)),
                c / Rational::from_integer((e + 1).into()),
            )
        });
        Poly::from_terms(terms)
    }

    /// `∫_lower^upper self dv`, a polynomial in the remaining variables and the
    /// endpoint expressions.
    pub fn integrate(&self, v: Var, lower: &Poly, upper: &Poly) -> Poly {
        let anti = self.antiderivative(v);
        let hi = anti.subst_one(v, upper);
        let lo = anti.subst_one(v, lower);
        &hi - &lo
    }

    /// Substitutes a single variable without tag checks.
    pub fn subst_one(&self, v: Var, image: &Poly) -> Poly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut acc = Poly::zero();
        let mut rest_map: HashMap<u32, Vec<(Monomial, Rational)>> = HashMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            rest_map.entry(e).or_default().push((rest, c.clone()));
        }
        let max_e = rest_map.keys().copied().max().unwrap_or(0) as usize;
        while powers.len() <= max_e {
            let next = &powers[powers.len() - 1] * image;
            powers.push(next);
        }
        let mut keys: Vec<_> = rest_map.keys().copied().collect();
        keys.sort();
        for e in keys {
            let part = Poly::from_terms(rest_map.remove(&e).unwrap());
            acc += &(&part * &powers[e as usize]);
        }
        acc
    }

    /// Simultaneous substitution.
    pub fn substitute(&self, s: &Substitution) -> Poly {
        if s.map.is_empty() || !self.vars().iter().any(|v| s.map.contains_key(v)) {
            return self.clone();
        }
        let mut power_cache: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut out: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in m.pairs() {
                match s.map.get(&v) {
                    Some(img) => {
                        let p = power_cache
                            .entry((v, e))
                            .or_insert_with(|| img.pow(e))
                            .clone();
                        factor = &factor * &p;
                    }
                    None => kept.push((v, e)),
                }
            }
            let kept = Monomial::from_pairs(kept);
            for (fm, fc) in factor.terms {
                *out.entry(fm.mul(&kept)).or_insert_with(Rational::zero) += fc;
            }
        }
        Poly::from_map(out)
    }

    /// Evaluates with every listed variable bound to a rational.
    pub fn evaluate(&self, values: &[(Var, Rational)]) -> Poly {
        let s = Substitution::unchecked(
            values
                .iter()
                .map(|(v, r)| (*v, Poly::constant(r.clone())))
                .collect(),
        );
        self.substitute(&s)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", abs)?;
            }
            let factors: Vec<String> = m
                .pairs()
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        v.name()
                    } else {
                        format!("{}^{}", v.name(), e)
                    }
                })
                .collect();
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    let (x, y) = (&a.terms, &b.terms);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let fix = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            Ordering::Less => {
                out.push(x[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((y[j].0.clone(), fix(&y[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &x[i].1 - &y[j].1
                } else {
                    &x[i].1 + &y[j].1
                };
                if !c.is_zero() {
                    out.push((x[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(x[i..].iter().cloned());
    out.extend(y[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
    Poly { terms: out }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        merge(self, rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge(self, rhs, true)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if rhs.is_zero() {
            return;
        }
        *self = merge(self, rhs, false);
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        if rhs.is_zero() {
            return;
        }
        *self = merge(self, rhs, true);
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut map: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                match map.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += prod,
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
        }
        Poly::from_map(map)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

/// A simultaneous substitution `variable ↦ polynomial`.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    map: BTreeMap<Var, Poly>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    /// Builds a substitution, rejecting parameter variables bound to
    /// expressions in fiber variables.
    pub fn checked(bindings: Vec<(Var, Poly)>) -> Result<Self, AlgebraError> {
        for (v, p) in &bindings {
            if v.kind() == VarKind::Parameter {
                if let Some(f) = p.vars().into_iter().find(|w| w.kind() == VarKind::Fiber) {
                    return Err(AlgebraError::ParameterBinding {
                        var: v.name(),
                        fiber: f.name(),
                    });
                }
            }
        }
        Ok(Substitution::unchecked(bindings))
    }

    pub fn unchecked(bindings: Vec<(Var, Poly)>) -> Self {
        Substitution {
            map: bindings.into_iter().collect(),
        }
    }

    pub fn bind(mut self, v: Var, p: Poly) -> Self {
        self.map.insert(v, p);
        self
    }

    pub fn get(&self, v: Var) -> Option<&Poly> {
        self.map.get(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Poly)> {
        self.map.iter()
    }

    /// `self ∘ inner`: substituting by the result equals substituting by
    /// `inner` then by `self`.
    pub fn compose_after(&self, inner: &Substitution) -> Substitution {
        let mut map: BTreeMap<Var, Poly> = inner
            .map
            .iter()
            .map(|(v, p)| (*v, p.substitute(self)))
            .collect();
        for (v, p) in &self.map {
            map.entry(*v).or_insert_with(|| p.clone());
        }
        Substitution { map }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn v(n: &str) -> Poly {
        Poly::var(Var::fiber(n))
    }

    #[test]
    fn zero_substitution() {
        let x = Var::fiber("poly_x");
        let p = &Poly::var(x).pow(2) + &Poly::one();
        let s = Substitution::unchecked(vec![(x, Poly::zero())]);
        assert_eq!(p.substitute(&s), Poly::one());
    }

    #[test]
    fn identity_substitution() {
        let (x, y) = (Var::fiber("poly_x"), Var::fiber("poly_y"));
        let p = &Poly::var(x) * &Poly::var(y);
        let s = Substitution::unchecked(vec![(x, Poly::var(x))]);
        assert_eq!(p.substitute(&s), p);
    }

    #[test]
    fn square_of_one_minus_u() {
        let (t, u) = (Var::fiber("poly_t1"), Var::fiber("poly_u"));
        let p = Poly::var(t).pow(2);
        let s = Substitution::unchecked(vec![(t, &Poly::one() - &Poly::var(u))]);
        let expected = Poly::from_terms(vec![
            (Monomial::one(), rat(1, 1)),
            (Monomial::var(u, 1), rat(-2, 1)),
            (Monomial::var(u, 2), rat(1, 1)),
        ]);
        assert_eq!(p.substitute(&s), expected);
    }

    #[test]
    fn parameter_bound_to_fiber_is_rejected() {
        let p = Var::parameter("poly_param");
        let err = Substitution::checked(vec![(p, v("poly_fib"))]).unwrap_err();
        assert!(matches!(err, AlgebraError::ParameterBinding { .. }));
    }

    #[test]
    fn integrate_is_fundamental_theorem() {
        let s = Var::fiber("poly_s");
        let (x, y) = (v("poly_lo"), v("poly_hi"));
        let r = Poly::var(s).integrate(s, &x, &y);
        let expected = (&y.pow(2) - &x.pow(2)).scale(&rat(1, 2));
        assert_eq!(r, expected);
    }

    #[test]
    fn arithmetic_cancels() {
        let p = &v("poly_a") + &v("poly_b");
        assert!((&p - &p).is_zero());
        assert_eq!(&p * &Poly::one(), p);
        assert_eq!(format!("{}", Poly::int(-3)), "-3");
    }
}
