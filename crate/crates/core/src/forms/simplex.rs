use std::sync::Arc;

use crate::algebra::{Poly, Var};

use super::{Coeff, FormContext, FormError, PolyForm};

/// Context of Ω_n: fiber variables t1..tn, with t0 = 1 - Σ tᵢ eliminated.
pub fn omega(n: usize) -> Arc<FormContext> {
    let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    FormContext::fibers(&refs)
}

/// The coordinate `t_i` of Ω_n as a polynomial (`t_0` expanded).
pub fn simplex_coordinate(n: usize, i: usize) -> Poly {
    if i == 0 {
        let mut p = Poly::one();
        for k in 1..=n {
            p -= &Poly::var(Var::fiber(&format!("t{k}")));
        }
        p
    } else {
        Poly::var(Var::fiber(&format!("t{i}")))
    }
}

/// A monotone map `[m] → [n]` given by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    images: Vec<usize>,
    target: usize,
}

impl MonotoneMap {
    pub fn new(images: Vec<usize>, target: usize) -> Result<Self, FormError> {
        if images.is_empty() {
            return Err(FormError::BadMap("empty source".into()));
        }
        if images.windows(2).any(|w| w[0] > w[1]) {
            return Err(FormError::BadMap(format!("{images:?} is not monotone")));
        }
        if images.iter().any(|&i| i > target) {
            return Err(FormError::BadMap(format!("{images:?} exceeds [{target}]")));
        }
        Ok(MonotoneMap { images, target })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            images: (0..=n).collect(),
            target: n,
        }
    }

    /// Coface `∂_i: [n-1] → [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        MonotoneMap {
            images: (0..=n).filter(|&k| k != i).collect(),
            target: n,
        }
    }

    /// Codegeneracy `σ_i: [n+1] → [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        MonotoneMap {
            images: (0..=n + 1)
                .map(|k| if k <= i { k } else { k - 1 })
                .collect(),
            target: n,
        }
    }

    /// The map `[k] → [n]` with the listed (increasing) images.
    pub fn inclusion(images: &[usize], n: usize) -> Result<Self, FormError> {
        MonotoneMap::new(images.to_vec(), n)
    }

    pub fn source(&self) -> usize {
        self.images.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MonotoneMap) -> Result<MonotoneMap, FormError> {
        if inner.target != self.source() {
            return Err(FormError::BadMap("composition of incompatible maps".into()));
        }
        Ok(MonotoneMap {
            images: inner.images.iter().map(|&i| self.images[i]).collect(),
            target: self.target,
        })
    }

    /// Substitution realizing `Ω(f): Ω_n → Ω_m`, `t_i ↦ Σ_{f(j)=i} t_j`.
    pub fn substitution(&self) -> Vec<(Var, Poly)> {
        let m = self.source();
        (1..=self.target)
            .map(|i| {
                let mut p = Poly::zero();
                for (j, &fj) in self.images.iter().enumerate() {
                    if fj == i {
                        p += &simplex_coordinate(m, j);
                    }
                }
                (Var::fiber(&format!("t{i}")), p)
            })
            .collect()
    }

    /// Pulls a form on Ω_target back to Ω_source.
    pub fn pull<V: Coeff>(&self, form: &PolyForm<V>) -> Result<PolyForm<V>, FormError> {
        form.pullback(&omega(self.source()), &self.substitution())
    }
}

/// Unit interval coordinate `x1` and the map `Φ¹: t1 = x1`.
pub fn edge_parametrization() -> (Arc<FormContext>, Vec<(Var, Poly)>) {
    let ctx = FormContext::fibers(&["x1"]);
    let x1 = Var::fiber("x1");
    (ctx, vec![(Var::fiber("t1"), Poly::var(x1))])
}

/// Unit square coordinates and `Φ²: t0 = 1-x1, t1 = x1(1-x2), t2 = x1 x2`.
pub fn triangle_parametrization() -> (Arc<FormContext>, Vec<(Var, Poly)>) {
    let ctx = FormContext::fibers(&["x1", "x2"]);
    let x1 = Poly::var(Var::fiber("x1"));
    let x2 = Poly::var(Var::fiber("x2"));
    let t1 = &x1 * &(&Poly::one() - &x2);
    let t2 = &x1 * &x2;
    (ctx, vec![(Var::fiber("t1"), t1), (Var::fiber("t2"), t2)])
}
