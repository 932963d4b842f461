//! Random instance generators and the property checks run on them.

use std::collections::BTreeSet;
use std::fmt::Display;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Poly, Rational, Var, VarKind};
use crate::catalog::{central_indices, tensor_model, LieFamily};
use crate::deligne::{nerve_validate, NerveSimplex};
use crate::forms::{
    edge_parametrization, omega, triangle_parametrization, FormContext, MonotoneMap, PolyForm,
};
use crate::hinich::{generate_mc, random_poly, sigma_defect, SigmaSimplex};
use crate::holonomy::{broken_line_holonomy, BrokenLine, Connection};
use crate::integration::{
    abelian_integrate, add_central_nerve, central_quotient_check, central_submodel, face_pair,
    integrate_simplex, integrate_simplex_unchecked, verify_simplicial,
};
use crate::lie::{DGLAModel, Derivation, GroupElement, LieAlgebra, Vector};
use crate::report::Report;
use crate::surface::{
    gauss_check, gauss_simplex_check, green_check, Comparison, Parallelepiped, RectangleChain,
};

use super::{Bounds, CheckKind, CheckStatus};

const FIBERS: [&str; 5] = ["ks", "kv1", "kv2", "kb1", "kb2"];
const PARAMETERS: [&str; 8] = ["kt1", "kt2", "kx", "ky", "kz", "kx1", "ky1", "kt"];

/// Interns every variable the suites use, so that variable order (and hence
/// the printed form of residuals) does not depend on thread scheduling.
pub(super) fn warm_up() {
    for n in 0..=4 {
        omega(n);
    }
    edge_parametrization();
    triangle_parametrization();
    for name in FIBERS {
        Var::new(name, VarKind::Fiber).expect("reserved fiber name");
    }
    for name in PARAMETERS {
        Var::new(name, VarKind::Parameter).expect("reserved parameter name");
    }
}

pub(super) fn run(kind: CheckKind, rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    warm_up();
    match kind {
        CheckKind::DlogIdentities => dlog_identities(rng, b),
        CheckKind::HolonomyIdentities => holonomy_identities(rng, b),
        CheckKind::CurvatureCommutator => curvature_commutator(rng, b),
        CheckKind::BrokenLine => broken_line(rng, b),
        CheckKind::Green => green(rng, b),
        CheckKind::Gauss => gauss(rng, b),
        CheckKind::GaussSimplex => gauss_simplex(rng, b),
        CheckKind::Cocycle => cocycle(rng, b),
        CheckKind::Simplicial => simplicial(rng, b),
        CheckKind::Abelian => abelian(rng, b),
        CheckKind::Central => central(rng, b),
    }
}

/// A catalog Lie algebra of class at most `class` and dimension at most
/// `dim`; the abelian algebras are always candidates.
pub fn pick_family<R: Rng>(rng: &mut R, class: usize, dim: usize) -> LieFamily {
    let dim = dim.max(1);
    let mut candidates: Vec<LieFamily> = LieFamily::all()
        .into_iter()
        .filter(|f| !matches!(f, LieFamily::Abelian(_)))
        .filter(|f| f.class() <= class && f.structure().names.len() <= dim)
        .collect();
    candidates.push(LieFamily::Abelian(rng.gen_range(1..=dim.min(3))));
    candidates[rng.gen_range(0..candidates.len())]
}

fn lie_algebra(family: LieFamily) -> LieAlgebra {
    family.structure().algebra()
}

fn random_vector<R: Rng>(rng: &mut R, dim: usize, vars: &[Var], degree: u32) -> Vector {
    Vector(
        (0..dim)
            .map(|_| random_poly(rng, vars, degree, 0.5))
            .collect(),
    )
}

fn small_rational<R: Rng>(rng: &mut R) -> Poly {
    Poly::constant(rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
}

fn distinct_pair<R: Rng>(rng: &mut R) -> (Poly, Poly) {
    let x = small_rational(rng);
    loop {
        let y = small_rational(rng);
        if y != x {
            return (x, y);
        }
    }
}

fn random_connection<R: Rng>(
    rng: &mut R,
    alg: &LieAlgebra,
    ctx: &std::sync::Arc<FormContext>,
    degree: u32,
) -> Connection {
    let vars = ctx.fiber_vars().to_vec();
    let mut a = PolyForm::zero(ctx);
    for &v in &vars {
        let c = random_vector(rng, alg.dim(), &vars, degree);
        a = a
            .add(&PolyForm::one_form(ctx, v, c).expect("fiber variable"))
            .expect("same context");
    }
    Connection::new(alg.clone(), a).expect("dimensions match")
}

fn random_catalog_model<R: Rng>(rng: &mut R, family: LieFamily) -> (Rational, DGLAModel) {
    let p = rat(rng.gen_range(-2..=2), rng.gen_range(1..=2));
    let model = tensor_model(&family.structure(), &p).expect("catalog models are valid");
    (p, model)
}

fn show_points(points: &[Vec<Poly>]) -> String {
    let pts: Vec<String> = points
        .iter()
        .map(|p| {
            format!(
                "({})",
                p.iter().map(Poly::to_string).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    pts.join(" -> ")
}

fn compared(name: &str, c: Result<Comparison, impl Display>) -> CheckStatus {
    match c {
        Ok(c) => CheckStatus::equal(name, &c.lhs, &c.rhs),
        Err(e) => CheckStatus::error(name, e.to_string()),
    }
}

fn reported(name: &str, r: Result<Report, impl Display>) -> CheckStatus {
    match r {
        Ok(r) => CheckStatus::from_report(name, r),
        Err(e) => CheckStatus::error(name, e.to_string()),
    }
}

fn dlog_identities(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let family = pick_family(rng, b.class, b.dim);
    let alg = lie_algebra(family);
    let t = [Var::parameter("kt1"), Var::parameter("kt2")];
    let mut v = || random_vector(rng, alg.dim(), &t, b.degree);
    let (x, y, z, w1, w2) = (v(), v(), v(), v(), v());
    let d1 = Derivation::Sum(vec![Derivation::Partial(t[0]), Derivation::Inner(w1)]);
    let d2 = Derivation::Sum(vec![Derivation::Partial(t[1]), Derivation::Inner(w2)]);
    let dlog = |d: &Derivation, x: &Vector| alg.log_derivative_unchecked(d, x);
    let (a, bb) = (GroupElement::exp(x.clone()), GroupElement::exp(y.clone()));

    let product = CheckStatus::equal(
        "product",
        &dlog(&d1, &a.mul(&alg, &bb).log),
        &(&dlog(&d1, &x) + &a.ad(&alg, &dlog(&d1, &y))),
    );
    let inverse = CheckStatus::equal(
        "inverse",
        &dlog(&d1, &a.inverse().log),
        &-&a.inverse().ad(&alg, &dlog(&d1, &x)),
    );
    let ad = CheckStatus::equal(
        "ad",
        &dlog(&Derivation::Inner(z.clone()), &x),
        &(&z - &a.ad(&alg, &z)),
    );
    let l1 = dlog(&d1, &x);
    let l2 = dlog(&d2, &x);
    let lhs = &alg.apply_derivation(&d1, &l2) - &alg.apply_derivation(&d2, &l1);
    let rhs = &dlog(&Derivation::commutator(d1.clone(), d2.clone()), &x) + &alg.bracket(&l1, &l2);
    let commutator = CheckStatus::equal("commutator", &lhs, &rhs);
    let descriptor = format!("{family} degree<={} x={x:?}", b.degree);
    (descriptor, vec![product, inverse, ad, commutator])
}

fn holonomy_identities(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let family = pick_family(rng, b.class, b.dim);
    let alg = lie_algebra(family);
    let ctx = FormContext::fibers(&["ks"]);
    let s = Var::fiber("ks");
    let conn = random_connection(rng, &alg, &ctx, b.degree);
    let [x, y, z] = ["kx", "ky", "kz"].map(|n| Poly::var(Var::parameter(n)));
    let y_var = Var::parameter("ky");

    let composition = (|| {
        let pxy = conn.path_holonomy(s, &x, &y)?;
        let pyz = conn.path_holonomy(s, &y, &z)?;
        let pxz = conn.path_holonomy(s, &x, &z)?;
        Ok::<_, crate::holonomy::HolonomyError>(CheckStatus::equal(
            "composition",
            &pyz.mul(&alg, &pxy),
            &pxz,
        ))
    })()
    .unwrap_or_else(|e| CheckStatus::error("composition", e.to_string()));

    let derivative = (|| {
        let rep = alg.adjoint_representation();
        let pm = conn.holonomy_in_rep(&rep, s, &x, &y)?;
        let lhs = pm.mul(&pm.inverse_unipotent().derivative(y_var));
        let rhs = conn.rep_component(&rep, s)?.map(|q| q.subst_one(s, &y));
        Ok::<_, crate::holonomy::HolonomyError>(CheckStatus::equal("derivative", &lhs, &rhs))
    })()
    .unwrap_or_else(|e| CheckStatus::error("derivative", e.to_string()));

    let descriptor = format!("{family} degree<={} A={:?}", b.degree, conn.form());
    (descriptor, vec![composition, derivative])
}

fn curvature_commutator(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let family = pick_family(rng, b.class, b.dim);
    let alg = lie_algebra(family);
    let ctx = FormContext::fibers(&["kv1", "kv2"]);
    let (v1, v2) = (Var::fiber("kv1"), Var::fiber("kv2"));
    let conn = random_connection(rng, &alg, &ctx, b.degree);
    let u = GroupElement::exp(random_vector(rng, alg.dim(), &[v1, v2], b.degree));

    let commutator = (|| {
        let (a1, a2) = (conn.component(v1)?, conn.component(v2)?);
        let cov = |v: Var, a: &Vector, w: &Vector| &w.derivative(v) + &alg.bracket(a, w);
        let n1 = conn.covariant_log_derivative_along(v1, &u)?;
        let n2 = conn.covariant_log_derivative_along(v2, &u)?;
        let lhs = &cov(v1, &a1, &n2) - &cov(v2, &a2, &n1);
        let rhs = &alg.bracket(&n1, &n2) + &conn.curvature_component(v1, v2)?;
        Ok::<_, crate::holonomy::HolonomyError>(CheckStatus::equal(
            "commutator curvature",
            &lhs,
            &rhs,
        ))
    })()
    .unwrap_or_else(|e| CheckStatus::error("commutator curvature", e.to_string()));

    // P = P_{x1}^{y1} along v1 at height v2; both sides as functions of (x1, y1, v2)
    let parameter = (|| {
        let (x1, y1, t) = (
            Var::parameter("kx1"),
            Var::parameter("ky1"),
            Var::parameter("kt"),
        );
        let (px1, py1, pt) = (Poly::var(x1), Poly::var(y1), Poly::var(t));
        let p = conn.path_holonomy(v1, &px1, &py1)?;
        let a2 = conn.component(v2)?;
        let lhs = &(&alg.log_derivative_unchecked(&Derivation::Partial(v2), &p.log)
            + &a2.subst_one(v1, &py1))
            - &p.ad(&alg, &a2.subst_one(v1, &px1));
        let f12 = conn.curvature_component(v1, v2)?.subst_one(v1, &pt);
        let back = conn.path_holonomy(v1, &pt, &py1)?;
        let rhs = back.ad(&alg, &f12).integrate(t, &px1, &py1);
        Ok::<_, crate::holonomy::HolonomyError>(CheckStatus::equal(
            "holonomy parameter derivative",
            &lhs,
            &rhs,
        ))
    })()
    .unwrap_or_else(|e| CheckStatus::error("holonomy parameter derivative", e.to_string()));

    let descriptor = format!(
        "{family} degree<={} A={:?} log u={:?}",
        b.degree,
        conn.form(),
        u.log
    );
    (descriptor, vec![commutator, parameter])
}

fn random_line<R: Rng>(rng: &mut R, dim: usize, segments: usize) -> Vec<Vec<Poly>> {
    let mut pts = vec![(0..dim).map(|_| small_rational(rng)).collect::<Vec<_>>()];
    for _ in 0..segments {
        let mut next = pts.last().expect("nonempty").clone();
        let j = rng.gen_range(0..dim);
        loop {
            let c = small_rational(rng);
            if c != next[j] {
                next[j] = c;
                break;
            }
        }
        pts.push(next);
    }
    pts
}

fn broken_line(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let family = pick_family(rng, b.class, b.dim);
    let alg = lie_algebra(family);
    let ctx = FormContext::fibers(&["kb1", "kb2"]);
    let conn = random_connection(rng, &alg, &ctx, b.degree);
    let segments = rng.gen_range(2..=4);
    let pts = random_line(rng, 2, segments);
    let split = rng.gen_range(1..segments);
    let checks = (|| {
        let line = BrokenLine::new(pts.clone())?;
        let whole = broken_line_holonomy(&conn, &line)?;
        let rev = broken_line_holonomy(&conn, &line.reversed())?;
        let head = broken_line_holonomy(&conn, &BrokenLine::new(pts[..=split].to_vec())?)?;
        let tail = broken_line_holonomy(&conn, &BrokenLine::new(pts[split..].to_vec())?)?;
        let mut closed = pts.clone();
        let last = pts.last().expect("nonempty");
        closed.push(vec![pts[0][0].clone(), last[1].clone()]);
        closed.push(pts[0].clone());
        let closed = BrokenLine::new(closed)?;
        let loop_hol = broken_line_holonomy(&conn, &closed)?;
        let rot = broken_line_holonomy(&conn, &closed.rotated()?)?;
        let first = broken_line_holonomy(&conn, &closed.prefix(1))?;
        Ok::<_, crate::holonomy::HolonomyError>(vec![
            CheckStatus::equal("reversal", &rev, &whole.inverse()),
            CheckStatus::equal("concatenation", &tail.mul(&alg, &head), &whole),
            CheckStatus::equal("rotation", &rot, &first.conj(&alg, &loop_hol)),
        ])
    })()
    .unwrap_or_else(|e| vec![CheckStatus::error("broken line", e.to_string())]);
    let descriptor = format!("{family} degree<={} line {}", b.degree, show_points(&pts));
    (descriptor, checks)
}

/// A connection-curvature pair over the 3-simplex coordinates from a random
/// gauge-orbit Maurer-Cartan element of a catalog model.
fn random_space_pair(
    rng: &mut ChaCha8Rng,
    b: Bounds,
) -> (String, crate::surface::ConnectionCurvaturePair, CheckStatus) {
    let family = pick_family(rng, b.class, b.dim);
    let (p, model) = random_catalog_model(rng, family);
    let mu = generate_mc(rng, &model, 3, b.degree);
    let pair = face_pair(&model, &mu);
    let valid = CheckStatus::from_report("pair", pair.validate());
    (format!("{family} p={p} degree<={}", b.degree), pair, valid)
}

fn green(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let (desc, pair, valid) = random_space_pair(rng, b);
    let fibers = pair.context().fiber_vars().to_vec();
    let axis = rng.gen_range(0..3);
    let coords: Vec<Var> = (0..3).filter(|&i| i != axis).map(|i| fibers[i]).collect();
    let segments = rng.gen_range(1..=3);
    let pts = random_line(rng, 2, segments);
    let (x, y) = distinct_pair(rng);
    let descriptor = format!(
        "{desc} axis={} line {} x={x} y={y}",
        fibers[axis],
        show_points(&pts)
    );
    let chain = match BrokenLine::new(pts) {
        Ok(line) => RectangleChain {
            axis: fibers[axis],
            coords,
            line,
            x,
            y,
        },
        Err(e) => {
            return (
                descriptor,
                vec![valid, CheckStatus::error("green", e.to_string())],
            )
        }
    };
    (
        descriptor,
        vec![valid, compared("green", green_check(&pair, &chain))],
    )
}

fn gauss(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let (desc, pair, valid) = random_space_pair(rng, b);
    let corners: Vec<(Poly, Poly)> = (0..3).map(|_| distinct_pair(rng)).collect();
    let q = Parallelepiped {
        x: [0, 1, 2].map(|i| corners[i].0.clone()),
        y: [0, 1, 2].map(|i| corners[i].1.clone()),
    };
    let descriptor = format!(
        "{desc} corners {} / {}",
        show_points(&[q.x.to_vec()]),
        show_points(&[q.y.to_vec()])
    );
    let status = compared("gauss", gauss_check(&pair, &q).map(|o| o.forced));
    (descriptor, vec![valid, status])
}

fn gauss_simplex(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let (desc, pair, valid) = random_space_pair(rng, b);
    let status = compared(
        "gauss simplex",
        gauss_simplex_check(&pair).map(|o| o.forced),
    );
    (desc, vec![valid, status])
}

fn random_sigma(rng: &mut ChaCha8Rng, b: Bounds, n: usize) -> (String, DGLAModel, SigmaSimplex) {
    let family = pick_family(rng, b.class, b.dim);
    let (p, model) = random_catalog_model(rng, family);
    let mu = generate_mc(rng, &model, n, b.degree);
    (
        format!("{family} p={p} n={n} degree<={}", b.degree),
        model,
        mu,
    )
}

fn mc_status(model: &DGLAModel, mu: &SigmaSimplex) -> CheckStatus {
    let defect = sigma_defect(model, mu);
    let mut report = Report::default();
    if !defect.is_zero() {
        report.push("defect", format!("{:?}", defect.total));
    }
    CheckStatus::from_report("input Maurer-Cartan", report)
}

fn cocycle(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let n = rng.gen_range(2..=3);
    let (desc, model, mu) = random_sigma(rng, b, n);
    let input = mc_status(&model, &mu);
    let nerve = match integrate_simplex_unchecked(&model, &mu) {
        Ok(s) => nerve_statuses(&model, &s),
        Err(e) => vec![CheckStatus::error("integrate", e.to_string())],
    };
    (desc, std::iter::once(input).chain(nerve).collect())
}

/// Splits a nerve validation into the vertex, edge, triangle and cocycle
/// conditions.
fn nerve_statuses(model: &DGLAModel, s: &NerveSimplex) -> Vec<CheckStatus> {
    let report = nerve_validate(model, s);
    let groups = [
        ("MC", "vertices"),
        ("edge", "edges"),
        ("triangle", "triangles"),
        ("cocycle", "cocycle"),
    ];
    let mut out: Vec<CheckStatus> = groups
        .iter()
        .map(|(prefix, name)| {
            let residuals = report
                .residuals
                .iter()
                .filter(|r| r.name.starts_with(prefix))
                .cloned()
                .collect();
            CheckStatus::from_report(*name, Report { residuals })
        })
        .collect();
    let rest: Vec<_> = report
        .residuals
        .iter()
        .filter(|r| !groups.iter().any(|(prefix, _)| r.name.starts_with(prefix)))
        .cloned()
        .collect();
    if !rest.is_empty() {
        out.push(CheckStatus::from_report(
            "structure",
            Report { residuals: rest },
        ));
    }
    out
}

fn simplicial(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let n = rng.gen_range(1..=3);
    let (desc, model, mu) = random_sigma(rng, b, n);
    let mut checks = vec![mc_status(&model, &mu)];
    for i in 0..=n {
        checks.push(reported(
            &format!("face d{i}"),
            verify_simplicial(&model, &mu, &MonotoneMap::face(n, i)),
        ));
    }
    if n < 3 {
        for i in 0..=n {
            checks.push(reported(
                &format!("degeneracy s{i}"),
                verify_simplicial(&model, &mu, &MonotoneMap::degeneracy(n, i)),
            ));
        }
    }
    (desc, checks)
}

fn abelian(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let family = LieFamily::Abelian(rng.gen_range(1..=b.dim.clamp(1, 3)));
    let (p, model) = random_catalog_model(rng, family);
    let n = rng.gen_range(1..=3);
    let x = generate_mc(rng, &model, n, b.degree);
    let y = generate_mc(rng, &model, n, b.degree);
    let desc = format!("{family} p={p} n={n} degree<={}", b.degree);
    let checks = (|| {
        let ix = integrate_simplex(&model, &x)?;
        let iy = integrate_simplex(&model, &y)?;
        let sum = SigmaSimplex {
            n,
            mu: x.mu.add(&y.mu),
        };
        let isum = integrate_simplex(&model, &sum)?;
        Ok::<_, crate::integration::IntegrationError>(vec![
            CheckStatus::equal("abelian formula", &abelian_integrate(&model, &x)?, &ix),
            CheckStatus::equal("additivity", &isum, &add_central_nerve(&model, &ix, &iy)),
        ])
    })()
    .unwrap_or_else(|e| vec![CheckStatus::error("abelian", e.to_string())]);
    (desc, checks)
}

fn central(rng: &mut ChaCha8Rng, b: Bounds) -> (String, Vec<CheckStatus>) {
    let family = pick_family(rng, b.class, b.dim);
    let (p, model) = random_catalog_model(rng, family);
    let structure = family.structure();
    let idx = central_indices(&structure);
    let centre: BTreeSet<&str> = structure
        .center
        .iter()
        .map(|&i| structure.names[i].as_str())
        .collect();
    let desc = format!("{family} p={p} center={centre:?} degree<={}", b.degree);
    let sub = match central_submodel(&model, &idx) {
        Ok((sub, _)) => sub,
        Err(e) => return (desc, vec![CheckStatus::error("central", e.to_string())]),
    };
    let mu = generate_mc(rng, &model, 2, b.degree);
    let alpha = generate_mc(rng, &sub, 2, b.degree);
    (
        desc,
        vec![reported(
            "central",
            central_quotient_check(&model, &idx, &mu, &alpha),
        )],
    )
}
