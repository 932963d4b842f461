use rand::Rng;

use crate::algebra::{rat, Monomial, Poly, Var};
use crate::forms::{FormContext, PolyForm};
use crate::lie::{DGLAModel, LieElement, Vector};

use super::{SigmaSimplex, TensorAlgebra, TotalElement};

fn monomials(vars: &[Var], degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    for &v in vars {
        let mut next = Vec::new();
        for m in &out {
            for e in 0..=degree - m.degree() {
                let mut pairs = m.pairs().to_vec();
                if e > 0 {
                    pairs.push((v, e));
                }
                next.push(Monomial::from_pairs(pairs));
            }
        }
        out = next;
    }
    out
}

/// A sparse polynomial in `vars` of degree at most `degree` with small
/// integer coefficients; each monomial appears with probability `density`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &[Var], degree: u32, density: f64) -> Poly {
    Poly::from_terms(monomials(vars, degree).into_iter().filter_map(|m| {
        if rng.gen_bool(density) {
            let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
            Some((m, rat(c, 1)))
        } else {
            None
        }
    }))
}

fn random_vector<R: Rng>(
    rng: &mut R,
    dim: usize,
    vars: &[Var],
    degree: u32,
    density: f64,
) -> Vector {
    Vector(
        (0..dim)
            .map(|_| random_poly(rng, vars, degree, density))
            .collect(),
    )
}

/// A random degree-zero element of `𝔤 ⊗ Ω_n` with polynomial coefficients
/// of degree at most `degree`.
pub fn random_degree_zero<R: Rng>(rng: &mut R, t: &TensorAlgebra<'_>, degree: u32) -> TotalElement {
    let ctx: &std::sync::Arc<FormContext> = &t.ctx;
    let vars = ctx.fiber_vars().to_vec();
    let n = t.n();
    let mut parts = Vec::new();
    for k in 0..=n as u32 {
        let dim = t.model.dim(-(k as i32));
        if dim == 0 {
            continue;
        }
        let terms: Vec<(u32, Vector)> = (0u32..1 << n)
            .filter(|m| m.count_ones() == k)
            .map(|m| (m, random_vector(rng, dim, &vars, degree, 0.4)))
            .collect();
        parts.push((k, PolyForm::from_terms(ctx, terms)));
    }
    t.element(0, parts).expect("dimensions match")
}

/// A small random Maurer-Cartan element of `𝔤`, or zero if none was found.
pub fn random_constant_mc<R: Rng>(rng: &mut R, model: &DGLAModel) -> LieElement {
    let dim = model.dim(1);
    for _ in 0..16 {
        let v = Vector((0..dim).map(|_| Poly::int(rng.gen_range(-1..=1))).collect());
        let gamma = LieElement::new(1, v);
        if model.mc_defect(&gamma).is_zero() {
            return gamma;
        }
    }
    model.zero(1)
}

/// A gauge transform of a constant MC element by a random degree-zero
/// element; always satisfies the Maurer-Cartan equation.
pub fn generate_mc<R: Rng>(rng: &mut R, model: &DGLAModel, n: usize, degree: u32) -> SigmaSimplex {
    let t = TensorAlgebra::new(model, n);
    let gamma = t.constant(&random_constant_mc(rng, model));
    let x = random_degree_zero(rng, &t, degree);
    SigmaSimplex {
        n,
        mu: t.gauge_act(&x, &gamma),
    }
}
