use dgla_holonomy::algebra::{rat, Poly, Var};
use dgla_holonomy::catalog::{random_model, tensor_model, LieFamily};
use dgla_holonomy::forms::{omega, MonotoneMap, PolyForm};
use dgla_holonomy::hinich::*;
use dgla_holonomy::lie::{LieAlgebra, Vector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn catalog_models_are_valid() {
    for family in LieFamily::all() {
        for p in [rat(0, 1), rat(1, 1), rat(-3, 2)] {
            let m = tensor_model(&family.structure(), &p).unwrap();
            m.validate().unwrap_or_else(|e| panic!("{family}: {e}"));
            assert_eq!(m.lower_central_class(), family.class());
        }
    }
}

#[test]
fn total_differential_squares_to_zero_and_is_a_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..4 {
        let cm = random_model(&mut rng, 3);
        let t = TensorAlgebra::new(&cm.model, 2);
        let x = random_degree_zero(&mut rng, &t, 2);
        let y = generate_mc(&mut rng, &cm.model, 2, 1).mu;
        assert!(t.differential(&t.differential(&x)).is_zero());
        assert!(t.differential(&t.differential(&y)).is_zero());
        let lhs = t.differential(&t.bracket(&x, &y));
        let rhs = t
            .bracket(&t.differential(&x), &y)
            .add(&t.bracket(&x, &t.differential(&y)));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn zero_simplex_defect_is_the_mc_defect() {
    let m = tensor_model(&LieFamily::Heisenberg.structure(), &rat(1, 1)).unwrap();
    let gamma = dgla_holonomy::lie::LieElement::new(
        1,
        Vector(vec![Poly::int(1), Poly::int(2), Poly::zero()]),
    );
    let s = SigmaSimplex::constant(&m, 0, &gamma);
    assert!(sigma_defect(&m, &s).is_zero());
    assert!(m.mc_defect(&gamma).is_zero());
}

#[test]
fn abelian_gauge_orbit_is_explicit() {
    let m = tensor_model(&LieFamily::Abelian(2).structure(), &rat(2, 1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let t = TensorAlgebra::new(&m, 2);
    let x = random_degree_zero(&mut rng, &t, 2);
    let gamma = t.constant(&random_constant_mc(&mut rng, &m));
    assert_eq!(t.gauge_act(&x, &gamma), gamma.sub(&t.differential(&x)));
}

#[test]
fn generation_is_reproducible() {
    let m = tensor_model(&LieFamily::Filiform4.structure(), &rat(1, 2)).unwrap();
    let a = generate_mc(&mut ChaCha8Rng::seed_from_u64(5), &m, 2, 2);
    let b = generate_mc(&mut ChaCha8Rng::seed_from_u64(5), &m, 2, 2);
    assert_eq!(a, b);
    assert!(a.mu10().terms().next().is_some());
}

#[test]
fn vertex_inclusion_keeps_only_the_value() {
    let m = tensor_model(&LieFamily::Heisenberg.structure(), &rat(1, 1)).unwrap();
    let mu = generate_mc(&mut ChaCha8Rng::seed_from_u64(1), &m, 2, 2);
    let v = sigma_structure_map(&mu, &MonotoneMap::new(vec![2], 2).unwrap()).unwrap();
    assert_eq!(v.n, 0);
    assert!(v.mu.parts.keys().all(|&k| k == 0));
    let t1 = Var::fiber("t1");
    let t2 = Var::fiber("t2");
    let at = mu
        .mu01()
        .substitute_coefficients(&dgla_holonomy::algebra::Substitution::unchecked(vec![
            (t1, Poly::zero()),
            (t2, Poly::one()),
        ]));
    assert_eq!(v.mu01().coefficient(0), at.coefficient(0));
    assert_eq!(
        mu.vertex(&m, 2).unwrap().coeffs,
        at.coefficient(0).cloned().unwrap_or(Vector::zero(3))
    );
}

#[test]
fn non_mc_element_is_rejected() {
    let m = tensor_model(&LieFamily::Heisenberg.structure(), &rat(1, 1)).unwrap();
    let ctx = omega(1);
    let t1 = Var::fiber("t1");
    let mu01 = PolyForm::function(
        &ctx,
        Vector(vec![Poly::var(t1), Poly::zero(), Poly::zero()]),
    );
    let s = SigmaSimplex::from_components(&m, 1, mu01, None, None).unwrap();
    let d = sigma_defect(&m, &s);
    assert!(d.component(1).is_some());
    assert!(SigmaSimplex::new(&m, 1, s.mu).is_err());
    let _ = LieAlgebra::abelian(1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn generated_elements_are_maurer_cartan(seed in any::<u64>(), n in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cm = random_model(&mut rng, 3);
        let mu = generate_mc(&mut rng, &cm.model, n, 2);
        prop_assert!(sigma_defect(&cm.model, &mu).is_zero());
    }

    #[test]
    fn structure_maps_are_functorial(seed in any::<u64>(), i in 0usize..=3, j in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cm = random_model(&mut rng, 3);
        let mu = generate_mc(&mut rng, &cm.model, 3, 1);
        let f = MonotoneMap::face(3, i);
        let g = MonotoneMap::face(2, j);
        let two_step = sigma_structure_map(&sigma_structure_map(&mu, &f).unwrap(), &g).unwrap();
        let one_step = sigma_structure_map(&mu, &f.compose(&g).unwrap()).unwrap();
        prop_assert_eq!(&two_step, &one_step);
        prop_assert!(sigma_defect(&cm.model, &one_step).is_zero());
        let s = MonotoneMap::degeneracy(1, j % 2);
        let back = sigma_structure_map(&sigma_structure_map(&one_step, &s).unwrap(), &MonotoneMap::face(2, j % 2)).unwrap();
        prop_assert_eq!(&back, &one_step);
    }
}
