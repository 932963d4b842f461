use crate::algebra::{rat, Poly, Var};
use crate::lie::Vector;

use super::simplex::simplex_coordinate;
use super::*;

fn ctx2() -> (std::sync::Arc<FormContext>, Var, Var) {
    let c = FormContext::fibers(&["fx1", "fx2"]);
    (c, Var::fiber("fx1"), Var::fiber("fx2"))
}

fn dx(c: &std::sync::Arc<FormContext>, v: Var) -> ScalarForm {
    PolyForm::one_form(c, v, Poly::one()).unwrap()
}

#[test]
fn wedge_signs() {
    let (c, x1, x2) = ctx2();
    assert!(dx(&c, x1).wedge(&dx(&c, x1)).unwrap().is_zero());
    let a = dx(&c, x1).wedge(&dx(&c, x2)).unwrap();
    let b = dx(&c, x2).wedge(&dx(&c, x1)).unwrap();
    assert_eq!(a, b.neg());
    let f = PolyForm::one_form(&c, x1, Poly::var(x1)).unwrap();
    let g = PolyForm::one_form(&c, x2, Poly::var(x2)).unwrap();
    let w = f.wedge(&g).unwrap();
    assert_eq!(
        w,
        PolyForm::from_terms(&c, [(0b11, &Poly::var(x1) * &Poly::var(x2))])
    );
}

#[test]
fn differential_examples() {
    let (c, x1, x2) = ctx2();
    assert!(PolyForm::function(&c, Poly::int(3))
        .rel_differential()
        .is_zero());
    assert_eq!(
        PolyForm::function(&c, Poly::var(x1)).rel_differential(),
        dx(&c, x1)
    );
    assert!(dx(&c, x1).rel_differential().is_zero());
    let f = PolyForm::one_form(&c, x1, Poly::var(x2)).unwrap();
    let expected = dx(&c, x1).wedge(&dx(&c, x2)).unwrap().neg();
    assert_eq!(f.rel_differential(), expected);
}

#[test]
fn differential_ignores_parameters() {
    let p = Var::parameter("form_test_p");
    let x = Var::fiber("form_test_x");
    let c = FormContext::new(vec![x], vec![p]).unwrap();
    let f = PolyForm::function(&c, &Poly::var(p) * &Poly::var(x));
    assert_eq!(
        f.rel_differential(),
        PolyForm::one_form(&c, x, Poly::var(p)).unwrap()
    );
}

#[test]
fn contraction_examples() {
    let (c, x1, x2) = ctx2();
    assert!(dx(&c, x1).contract(x2).unwrap().is_zero());
    let vol = dx(&c, x1).wedge(&dx(&c, x2)).unwrap();
    assert_eq!(vol.contract(x2).unwrap(), dx(&c, x1).neg());
    let f = Poly::var(x1) + Poly::int(2);
    let fvol = vol.mul_poly(&f);
    assert_eq!(
        fvol.contract(x2).unwrap().contract(x1).unwrap(),
        PolyForm::function(&c, -&f)
    );
    assert!(dx(&c, x1).contract(Var::fiber("not_in_ctx")).is_err());
}

#[test]
fn pullback_along_triangle() {
    let om = omega(2);
    let t2 = Var::fiber("t2");
    let dt2 = PolyForm::one_form(&om, t2, Poly::one()).unwrap();
    let (sq, phi) = triangle_parametrization();
    let pulled = dt2.pullback(&sq, &phi).unwrap();
    let (x1, x2) = (Var::fiber("x1"), Var::fiber("x2"));
    let expected = PolyForm::one_form(&sq, x1, Poly::var(x2))
        .unwrap()
        .add(&PolyForm::one_form(&sq, x2, Poly::var(x1)).unwrap())
        .unwrap();
    assert_eq!(pulled, expected);
    assert_eq!(dt2.pullback(&om, &[]).unwrap(), dt2);
}

#[test]
fn omega_relations() {
    let om = omega(3);
    let mut sum = Poly::zero();
    let mut dsum: ScalarForm = PolyForm::zero(&om);
    for i in 0..=3 {
        let t = simplex_coordinate(3, i);
        sum += &t;
        dsum = dsum
            .add(&PolyForm::function(&om, t).rel_differential())
            .unwrap();
    }
    assert_eq!(sum, Poly::one());
    assert!(dsum.is_zero());
}

#[test]
fn degeneracy_kills_one_forms_on_point() {
    let om1 = omega(1);
    let dt1 = PolyForm::one_form(&om1, Var::fiber("t1"), Poly::one()).unwrap();
    let s0 = MonotoneMap::degeneracy(0, 0);
    assert_eq!(s0.images(), &[0, 0]);
    // s0: [1] -> [0]; pulls Ω_0 back to Ω_1. The reverse direction: a vertex
    // [0] -> [1] pulls dt1 back to Ω_0, which has no 1-forms.
    let v = MonotoneMap::new(vec![1], 1).unwrap();
    assert!(v.pull(&dt1).unwrap().is_zero());
}

#[test]
fn cosimplicial_functoriality() {
    let om = omega(3);
    let (t1, t2, t3) = (Var::fiber("t1"), Var::fiber("t2"), Var::fiber("t3"));
    let f = PolyForm::one_form(&om, t1, &Poly::var(t2) * &Poly::var(t3))
        .unwrap()
        .add(&PolyForm::one_form(&om, t3, Poly::var(t1).pow(2)).unwrap())
        .unwrap();
    let g = MonotoneMap::face(3, 1);
    let h = MonotoneMap::degeneracy(1, 0);
    let comp = g.compose(&MonotoneMap::face(2, 2)).unwrap();
    let two_step = MonotoneMap::face(2, 2).pull(&g.pull(&f).unwrap()).unwrap();
    assert_eq!(comp.pull(&f).unwrap(), two_step);
    let gd = MonotoneMap::face(3, 0)
        .compose(&MonotoneMap::degeneracy(2, 1))
        .unwrap();
    let two_step = MonotoneMap::degeneracy(2, 1)
        .pull(&MonotoneMap::face(3, 0).pull(&f).unwrap())
        .unwrap();
    assert_eq!(gd.pull(&f).unwrap(), two_step);
    let _ = h;
}

#[test]
fn fiber_integration() {
    let s = Var::fiber("fi_s");
    let c = FormContext::fibers(&["fi_s"]);
    let (x, y) = (Poly::var(Var::fiber("fi_x")), Poly::var(Var::fiber("fi_y")));
    let a = PolyForm::one_form(&c, s, Poly::var(s)).unwrap();
    let r = a.fiber_integrate(s, &x, &y).unwrap();
    assert_eq!(r, (&y * &y - &x * &x).scale(&rat(1, 2)));
    let one = PolyForm::one_form(&c, s, Poly::one()).unwrap();
    assert_eq!(
        one.fiber_integrate(s, &Poly::zero(), &Poly::one()).unwrap(),
        Poly::one()
    );
    let z = Vector(vec![Poly::var(s).pow(2)]);
    let v = PolyForm::one_form(&c, s, z).unwrap();
    let got = v.fiber_integrate(s, &Poly::zero(), &y).unwrap();
    assert_eq!(got, Vector(vec![y.pow(3).scale(&rat(1, 3))]));
    assert!(PolyForm::function(&c, Poly::one())
        .fiber_integrate(s, &x, &y)
        .is_err());
}
