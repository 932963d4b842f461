//! A catalog of small nilpotent DGLA models `L ⊗ C` used by the random tests
//! and the command line tool.
//!
//! `L` is a nilpotent Lie algebra in degree 0. `C` is the graded commutative
//! algebra with basis `1` (degree 0), `e` (-1), `u` (1), `f` (0), products
//! `u·e = f = -e·u` and all other products of non-units zero, and differential
//! `d e = p·1`, `d f = -p·u`, `d u = 0`. Since `𝔤² = 0` every element of
//! `𝔤¹ = L ⊗ u` is Maurer-Cartan.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{rat, Poly, Rational};
use crate::lie::{BasisElement, DGLAModel, LieAlgebra, LieError};

/// Nilpotent Lie algebras in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieFamily {
    /// `ℚⁿ` with zero bracket.
    Abelian(usize),
    /// `[X, Y] = Z`.
    Heisenberg,
    /// `[x1, y1] = z`, `[x2, y2] = z`.
    Heisenberg5,
    /// Heisenberg plus a central line.
    HeisenbergPlusLine,
    /// Free 2-step nilpotent on three generators.
    FreeTwoStep,
    /// `[e1, e2] = e3`, `[e1, e3] = e4`.
    Filiform4,
    /// `[e1, e_i] = e_{i+1}` for `i = 2, 3, 4`.
    Filiform5,
}

/// Structure constants of a Lie algebra in degree 0.
#[derive(Clone, Debug)]
pub struct LieStructure {
    pub names: Vec<String>,
    pub brackets: Vec<(usize, usize, usize, Rational)>,
    pub class: usize,
    /// Indices spanning the center.
    pub center: Vec<usize>,
}

fn structure(
    names: &[&str],
    brackets: &[(usize, usize, usize)],
    class: usize,
    center: &[usize],
) -> LieStructure {
    LieStructure {
        names: names.iter().map(|s| s.to_string()).collect(),
        brackets: brackets
            .iter()
            .map(|&(i, j, k)| (i, j, k, rat(1, 1)))
            .collect(),
        class,
        center: center.to_vec(),
    }
}

impl LieStructure {
    pub fn algebra(&self) -> LieAlgebra {
        let entries = self
            .brackets
            .iter()
            .map(|(i, j, k, c)| (*i, *j, *k, Poly::constant(c.clone())));
        LieAlgebra::new(self.names.len(), entries, self.class).expect("catalog algebras are valid")
    }
}

impl LieFamily {
    pub fn all() -> Vec<LieFamily> {
        vec![
            LieFamily::Abelian(2),
            LieFamily::Heisenberg,
            LieFamily::Heisenberg5,
            LieFamily::HeisenbergPlusLine,
            LieFamily::FreeTwoStep,
            LieFamily::Filiform4,
            LieFamily::Filiform5,
        ]
    }

    pub fn structure(self) -> LieStructure {
        match self {
            LieFamily::Abelian(n) => {
                let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                structure(&refs, &[], 1, &(0..n).collect::<Vec<_>>())
            }
            LieFamily::Heisenberg => structure(&["X", "Y", "Z"], &[(0, 1, 2)], 2, &[2]),
            LieFamily::Heisenberg5 => structure(
                &["x1", "y1", "x2", "y2", "z"],
                &[(0, 1, 4), (2, 3, 4)],
                2,
                &[4],
            ),
            LieFamily::HeisenbergPlusLine => {
                structure(&["X", "Y", "Z", "W"], &[(0, 1, 2)], 2, &[2, 3])
            }
            LieFamily::FreeTwoStep => structure(
                &["x1", "x2", "x3", "y12", "y13", "y23"],
                &[(0, 1, 3), (0, 2, 4), (1, 2, 5)],
                2,
                &[3, 4, 5],
            ),
            LieFamily::Filiform4 => {
                structure(&["e1", "e2", "e3", "e4"], &[(0, 1, 2), (0, 2, 3)], 3, &[3])
            }
            LieFamily::Filiform5 => structure(
                &["e1", "e2", "e3", "e4", "e5"],
                &[(0, 1, 2), (0, 2, 3), (0, 3, 4)],
                4,
                &[4],
            ),
        }
    }

    pub fn class(self) -> usize {
        self.structure().class
    }

    pub fn name(self) -> String {
        match self {
            LieFamily::Abelian(n) => format!("abelian{n}"),
            LieFamily::Heisenberg => "h3".into(),
            LieFamily::Heisenberg5 => "h5".into(),
            LieFamily::HeisenbergPlusLine => "h3+line".into(),
            LieFamily::FreeTwoStep => "free2step3".into(),
            LieFamily::Filiform4 => "filiform4".into(),
            LieFamily::Filiform5 => "filiform5".into(),
        }
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for LieFamily {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(n) = s.strip_prefix("abelian") {
            let n = n
                .parse()
                .map_err(|_| LieError::Parse(format!("bad abelian dimension in {s:?}")))?;
            return Ok(LieFamily::Abelian(n));
        }
        LieFamily::all()
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| LieError::Parse(format!("unknown Lie algebra {s:?}")))
    }
}

const FACTORS: [(&str, i32); 4] = [("1", 0), ("e", -1), ("u", 1), ("f", 0)];

/// Products in `C` as `(left, right, result, sign)`.
const PRODUCTS: [(usize, usize, usize, i64); 9] = [
    (0, 0, 0, 1),
    (0, 1, 1, 1),
    (1, 0, 1, 1),
    (0, 2, 2, 1),
    (2, 0, 2, 1),
    (0, 3, 3, 1),
    (3, 0, 3, 1),
    (2, 1, 3, 1),
    (1, 2, 3, -1),
];

/// Index of `x ⊗ c` in the model built by [`tensor_model`].
pub fn tensor_index(lie_dim: usize, x: usize, c: usize) -> usize {
    c * lie_dim + x
}

/// `L ⊗ C` with differential parameter `p`.
pub fn tensor_model(l: &LieStructure, p: &Rational) -> Result<DGLAModel, LieError> {
    let n = l.names.len();
    let mut basis = Vec::new();
    for (cname, cdeg) in FACTORS {
        for x in &l.names {
            basis.push(BasisElement {
                name: if cname == "1" {
                    x.clone()
                } else {
                    format!("{x}.{cname}")
                },
                degree: cdeg,
            });
        }
    }
    let mut diff = Vec::new();
    if !p.is_zero() {
        for x in 0..n {
            diff.push((tensor_index(n, x, 1), tensor_index(n, x, 0), p.clone()));
            diff.push((tensor_index(n, x, 3), tensor_index(n, x, 2), -p.clone()));
        }
    }
    let mut brackets = Vec::new();
    for (i, j, k, c) in &l.brackets {
        for &(a, b, ab, sign) in &PRODUCTS {
            brackets.push((
                tensor_index(n, *i, a),
                tensor_index(n, *j, b),
                tensor_index(n, *k, ab),
                c * rat(sign, 1),
            ));
        }
    }
    DGLAModel::new(basis, diff, brackets, l.class)
}

/// Indices of `Z(L) ⊗ C`, a central sub-DGLA.
pub fn central_indices(l: &LieStructure) -> Vec<usize> {
    let n = l.names.len();
    (0..FACTORS.len())
        .flat_map(|c| l.center.iter().map(move |&z| tensor_index(n, z, c)))
        .collect()
}

/// A catalog entry with its parameters.
#[derive(Clone, Debug)]
pub struct CatalogModel {
    pub family: LieFamily,
    pub p: Rational,
    pub model: DGLAModel,
}

/// Picks a catalog model of class at most `max_class`, nonabelian when possible.
pub fn random_model<R: Rng>(rng: &mut R, max_class: usize) -> CatalogModel {
    let families: Vec<LieFamily> = LieFamily::all()
        .into_iter()
        .filter(|f| f.class() <= max_class.max(1))
        .collect();
    let family = families[rng.gen_range(0..families.len())];
    let p = rat(rng.gen_range(-2..=2), rng.gen_range(1..=2));
    let model = tensor_model(&family.structure(), &p).expect("catalog models are valid");
    CatalogModel { family, p, model }
}
