use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, Poly};
use crate::forms::MonotoneMap;
use crate::lie::{DGLAModel, LieElement, Vector};
use crate::report::Report;

use super::{exp_ad, gauge_act, DeligneError};

/// An `n`-simplex of the nerve: vertices `μ_i`, edges `g_ij: μ_j → μ_i`
/// (stored as logs in `𝔤⁰`) and triangles `c_ijk: g_ij g_jk ⇒ g_ik` (in
/// `𝔤^{-1}`), for `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveSimplex {
    pub n: usize,
    pub mu: Vec<LieElement>,
    pub g: BTreeMap<(usize, usize), LieElement>,
    pub c: BTreeMap<(usize, usize, usize), LieElement>,
}

impl NerveSimplex {
    /// The constant simplex at `gamma`.
    pub fn constant(model: &DGLAModel, n: usize, gamma: &LieElement) -> Self {
        let mut s = NerveSimplex {
            n,
            mu: vec![gamma.clone(); n + 1],
            g: BTreeMap::new(),
            c: BTreeMap::new(),
        };
        for i in 0..=n {
            for j in i + 1..=n {
                s.g.insert((i, j), model.zero(0));
                for k in j + 1..=n {
                    s.c.insert((i, j, k), model.zero(-1));
                }
            }
        }
        s
    }

    /// `g_ij`, with `g_ii = 0`.
    pub fn edge(&self, model: &DGLAModel, i: usize, j: usize) -> Result<LieElement, DeligneError> {
        if i == j {
            return Ok(model.zero(0));
        }
        self.g
            .get(&(i, j))
            .cloned()
            .ok_or_else(|| DeligneError::MissingEntry(format!("g_{i}{j}")))
    }

    /// `c_ijk`, zero when an index repeats.
    pub fn triangle(
        &self,
        model: &DGLAModel,
        i: usize,
        j: usize,
        k: usize,
    ) -> Result<LieElement, DeligneError> {
        if i == j || j == k {
            return Ok(model.zero(-1));
        }
        self.c
            .get(&(i, j, k))
            .cloned()
            .ok_or_else(|| DeligneError::MissingEntry(format!("c_{i}{j}{k}")))
    }

    pub fn to_file(&self) -> NerveFile {
        let enc = |v: &LieElement| v.coeffs.0.iter().map(Poly::to_string).collect();
        NerveFile {
            n: self.n,
            mu: self.mu.iter().map(enc).collect(),
            g: self.g.iter().map(|(&(i, j), v)| (i, j, enc(v))).collect(),
            c: self
                .c
                .iter()
                .map(|(&(i, j, k), v)| (i, j, k, enc(v)))
                .collect(),
        }
    }

    /// Reads a simplex; entries use the polynomial text format.
    pub fn from_file(file: &NerveFile) -> Result<Self, DeligneError> {
        let dec = |deg: i32, v: &[String]| -> Result<LieElement, DeligneError> {
            let coeffs = v
                .iter()
                .map(|s| s.parse::<Poly>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| DeligneError::MissingEntry(e.to_string()))?;
            Ok(LieElement::new(deg, Vector(coeffs)))
        };
        Ok(NerveSimplex {
            n: file.n,
            mu: file
                .mu
                .iter()
                .map(|v| dec(1, v))
                .collect::<Result<_, _>>()?,
            g: file
                .g
                .iter()
                .map(|(i, j, v)| Ok(((*i, *j), dec(0, v)?)))
                .collect::<Result<_, DeligneError>>()?,
            c: file
                .c
                .iter()
                .map(|(i, j, k, v)| Ok(((*i, *j, *k), dec(-1, v)?)))
                .collect::<Result<_, DeligneError>>()?,
        })
    }
}

/// Serialized form of a [`NerveSimplex`]; entries are coefficient strings in
/// basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveFile {
    pub n: usize,
    pub mu: Vec<Vec<String>>,
    pub g: Vec<(usize, usize, Vec<String>)>,
    pub c: Vec<(usize, usize, usize, Vec<String>)>,
}

fn show(v: &Vector) -> String {
    let parts: Vec<String> =
        v.0.iter()
            .map(|p| match p.as_constant() {
                Some(r) => format_rational(&r),
                None => p.to_string(),
            })
            .collect();
    format!("[{}]", parts.join(", "))
}

/// Checks that every vertex is MC, every edge maps its source to its target,
/// every triangle is a 2-morphism `g_ij g_jk ⇒ g_ik`, and the cocycle
/// `c_ijl ∘ (g_ij ▷ c_jkl) = c_ikl ∘ c_ijk`.
pub fn nerve_validate(model: &DGLAModel, s: &NerveSimplex) -> Report {
    let mut report = Report::default();
    if let Err(e) = validate_into(model, s, &mut report) {
        report.push("structure", e.to_string());
    }
    report
}

fn validate_into(
    model: &DGLAModel,
    s: &NerveSimplex,
    report: &mut Report,
) -> Result<(), DeligneError> {
    if s.mu.len() != s.n + 1 {
        report.push(
            "vertices",
            format!("{} vertices for n = {}", s.mu.len(), s.n),
        );
        return Ok(());
    }
    for (i, mu) in s.mu.iter().enumerate() {
        let d = super::mc_defect(model, mu)?;
        if !d.is_zero() {
            report.push(format!("MC mu_{i}"), show(&d.coeffs));
        }
    }
    let g0 = model.degree_zero_algebra();
    let n = s.n;
    for i in 0..=n {
        for j in i + 1..=n {
            let gij = s.edge(model, i, j)?;
            let image = gauge_act(model, &gij, &s.mu[j])?;
            if image != s.mu[i] {
                report.push(
                    format!("edge g_{i}{j}"),
                    show(&(&image.coeffs - &s.mu[i].coeffs)),
                );
            }
        }
    }
    for i in 0..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let c = s.triangle(model, i, j, k)?;
                let dc = model.twisted_differential(&s.mu[i], &c);
                let composite = g0.bch(&s.edge(model, i, j)?.coeffs, &s.edge(model, j, k)?.coeffs);
                let lhs = g0.bch(&dc.coeffs, &composite);
                let gik = s.edge(model, i, k)?;
                if lhs != gik.coeffs {
                    report.push(format!("triangle c_{i}{j}{k}"), show(&(&lhs - &gik.coeffs)));
                }
            }
        }
    }
    for i in 0..=n {
        let h = model.twisted_minus_one_unchecked(&s.mu[i]);
        for j in i + 1..=n {
            let gij = s.edge(model, i, j)?;
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let moved = exp_ad(model, &gij, &s.triangle(model, j, k, l)?);
                    let lhs = h.bch(&s.triangle(model, i, j, l)?.coeffs, &moved.coeffs);
                    let rhs = h.bch(
                        &s.triangle(model, i, k, l)?.coeffs,
                        &s.triangle(model, i, j, k)?.coeffs,
                    );
                    if lhs != rhs {
                        report.push(format!("cocycle {i}{j}{k}{l}"), show(&(&lhs - &rhs)));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Reindexes along `f: [m] → [n]`.
pub fn nerve_structure_map(
    model: &DGLAModel,
    s: &NerveSimplex,
    f: &MonotoneMap,
) -> Result<NerveSimplex, DeligneError> {
    if f.target() != s.n {
        return Err(DeligneError::Endpoints(format!(
            "map into [{}] applied to a {}-simplex",
            f.target(),
            s.n
        )));
    }
    let m = f.source();
    let mut out = NerveSimplex {
        n: m,
        mu: (0..=m).map(|i| s.mu[f.apply(i)].clone()).collect(),
        g: BTreeMap::new(),
        c: BTreeMap::new(),
    };
    for i in 0..=m {
        for j in i + 1..=m {
            out.g.insert((i, j), s.edge(model, f.apply(i), f.apply(j))?);
            for k in j + 1..=m {
                out.c.insert(
                    (i, j, k),
                    s.triangle(model, f.apply(i), f.apply(j), f.apply(k))?,
                );
            }
        }
    }
    Ok(out)
}
