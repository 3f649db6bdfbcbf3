use affine_core::algebra::Generator;
use affine_core::instances::{imaginary_verma, levi_tensor_fock, loop_fock, weight};
use affine_core::module::{act_element, act_vec, TriangularSpec, Truncation, Vector, WeightModule};
use affine_core::rational::{q, qf};
use proptest::prelude::*;

fn check(m: &dyn WeightModule, t: Truncation, seeds: &[(usize, usize, usize)]) {
    let gens = m.setting().frame.generators_in_box(&m.setting().alg, 2);
    let basis = m.basis(t);
    for &(i, j, k) in seeds {
        let (x, y) = (gens[i % gens.len()], gens[j % gens.len()]);
        let b = Vector::unit(basis[k % basis.len()].clone());
        let lhs = act_vec(m, &x, &act_vec(m, &y, &b)).sub(&act_vec(m, &y, &act_vec(m, &x, &b)));
        let rhs = act_element(m, &m.setting().bracket(&x, &y), &b);
        assert_eq!(lhs, rhs, "x={x:?} y={y:?} b={b:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn imaginary_verma_a1(seeds in prop::collection::vec((0usize..1000, 0usize..1000, 0usize..1000), 25)) {
        let t = Truncation::new(2, 2);
        let m = imaginary_verma("A1".parse().unwrap(), weight(vec![qf(1, 3)], q(1)), t).unwrap();
        check(&m, t, &seeds);
    }

    #[test]
    fn loop_module_phi_fock_a2(seeds in prop::collection::vec((0usize..1000, 0usize..1000, 0usize..1000), 25)) {
        let t = Truncation::new(2, 1);
        let spec = TriangularSpec::Phi { phi: vec![affine_core::partitions::Sign::Minus, affine_core::partitions::Sign::Plus] };
        let m = loop_fock("A2".parse().unwrap(), spec, weight(vec![q(1), q(0)], q(2)), t).unwrap();
        check(&m, t, &seeds);
    }

    #[test]
    fn levi_tensor_a2(seeds in prop::collection::vec((0usize..1000, 0usize..1000, 0usize..1000), 25)) {
        let t = Truncation::new(2, 2);
        let m = levi_tensor_fock("A2".parse().unwrap(), &[0], weight(vec![qf(1, 3), qf(2, 7)], q(1)), t).unwrap();
        check(&m, t, &seeds);
    }
}

#[test]
fn derivation_and_central_are_diagonal() {
    let t = Truncation::new(2, 2);
    let m = imaginary_verma("A1".parse().unwrap(), weight(vec![qf(1, 3)], q(5)), t).unwrap();
    for k in m.basis(t) {
        let v = Vector::unit(k);
        assert_eq!(act_vec(&m, &Generator::Central, &v), v.scaled(&q(5)));
    }
}
