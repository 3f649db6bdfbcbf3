use std::sync::Arc;

use affine_core::algebra::{AffineAlgebra, CartanType, Generator, Mode};
use affine_core::instances::{imaginary_verma, loop_fock, parabolic_setting, weight};
use affine_core::module::{act, character, BasisKey, FockModule, TriangularSpec, Truncation, Vector, WeightModule, ZeroModule};
use affine_core::partitions::ImaginarySpec;
use affine_core::rational::{q, qf, Q};
use affine_core::wakimoto::{
    chevalley, dump_realization, match_to_verma, verify_homomorphism, wakimoto_module, ImaginaryWakimotoFunctor,
    WakimotoModule,
};

fn fock_wakimoto(t: &str, h: Vec<Q>, a: Q, depth: u32) -> WakimotoModule {
    let (p, setting) = parabolic_setting(t.parse().unwrap(), &[], ImaginarySpec::Full, i64::from(depth) + 1).unwrap();
    let v = Arc::new(FockModule::full(setting, TriangularSpec::Standard, weight(h, a)));
    wakimoto_module(p, v).unwrap()
}

#[test]
fn a1_relations() {
    for a in [q(0), q(1), q(-2)] {
        let w = fock_wakimoto("A1", vec![qf(1, 3)], a, 3);
        let r = verify_homomorphism(&w, 2, Truncation::new(3, 3));
        assert!(r.holds, "{:?}", &r.violations[..r.violations.len().min(3)]);
        assert!(r.vectors > 50);
    }
}

#[test]
fn a2_relations() {
    let w = fock_wakimoto("A2", vec![qf(1, 3), qf(2, 7)], q(1), 2);
    let r = verify_homomorphism(&w, 1, Truncation::new(2, 2));
    assert!(r.holds, "{:?}", &r.violations[..r.violations.len().min(3)]);
}

#[test]
fn central_term_of_e_f() {
    let w = fock_wakimoto("A1", vec![qf(1, 3)], q(1), 2);
    let alg = &w.setting().alg;
    let e = alg.root_index(&[1]).unwrap();
    let f = alg.root_index(&[-1]).unwrap();
    let v = Vector::unit(w.generator().unwrap());
    let ef = w.pi_vec(&Mode::Real { n: 1, root: e }, &w.pi_vec(&Mode::Real { n: -1, root: f }, &v));
    let fe = w.pi_vec(&Mode::Real { n: -1, root: f }, &w.pi_vec(&Mode::Real { n: 1, root: e }, &v));
    // [e_1, f_{-1}] = h_0 + c, on the vacuum λ(h) + a
    assert_eq!(ef.sub(&fe), v.scaled(&(qf(1, 3) + q(1))));
}

#[test]
fn formula_matches_diagonal_action() {
    let w = fock_wakimoto("A2", vec![qf(1, 3), qf(2, 7)], q(1), 2);
    for key in w.basis(Truncation::new(2, 2)) {
        for i in 0..2 {
            let by_formula = w.pi_mode(&Mode::Cartan { n: 0, i }, &key);
            assert_eq!(by_formula, act(&w, &Generator::Cartan0(i), &key));
        }
    }
}

#[test]
fn windowed_polynomials_agree_with_fields() {
    let w = fock_wakimoto("A2", vec![q(1), q(0)], q(-2), 2);
    let alg = w.setting().alg.clone();
    // variables have |index| <= 2 and modes |n| <= 2, so no summand leaves window 4
    let mut polys = Vec::new();
    for x in chevalley(&alg) {
        for n in -2..=2 {
            let m = match x {
                Mode::Real { root, .. } => Mode::Real { n, root },
                Mode::Cartan { i, .. } => Mode::Cartan { n, i },
                other => other,
            };
            polys.push((m, w.realization.mode_poly(&m, 4)));
        }
    }
    for key in w.basis(Truncation::new(2, 2)) {
        for (m, poly) in &polys {
            assert_eq!(w.apply_weyl(poly, &key), w.pi_mode(m, &key), "{m:?} on {key:?}");
        }
    }
}

#[test]
fn nilradical_kills_pure_levi_vectors() {
    let w = fock_wakimoto("A2", vec![qf(1, 3), qf(2, 7)], q(1), 2);
    let s = w.setting().clone();
    let kills: Vec<Generator> = w.raising(3).into_iter().filter(|g| matches!(g, Generator::Real { .. })).collect();
    assert!(!kills.is_empty());
    for v in w.base.basis(Truncation::new(2, 0)) {
        let key = w.embed(&v);
        for g in &kills {
            assert!(act(&w, g, &key).is_zero(), "{} on {key:?}", s.label(g));
        }
    }
}

#[test]
fn derivation_grading() {
    let w = fock_wakimoto("A1", vec![qf(1, 3)], q(1), 2);
    let f = w.setting().alg.root_index(&[-1]).unwrap();
    let key = BasisKey::Pbw(vec![(Generator::Real { n: -1, root: f }, 1)], Box::new(w.base.generator().unwrap()));
    assert_eq!(act(&w, &Generator::Derivation, &key), Vector::term(key.clone(), q(-1)));
    assert_eq!(act(&w, &Generator::Central, &key), Vector::term(key, q(1)));
}

#[test]
fn matches_loop_module() {
    let t = Truncation::new(2, 2);
    let w = fock_wakimoto("A1", vec![qf(1, 3)], q(1), 2);
    let m = loop_fock("A1".parse().unwrap(), TriangularSpec::Standard, weight(vec![qf(1, 3)], q(1)), t).unwrap();
    let r = match_to_verma(&w, &m, t);
    assert!(r.character_match && r.equivariant && r.isomorphism, "{:?}", r.equivariance_witness);
    let top = r.blocks.iter().find(|b| b.weight.level == 0 && b.weight.finite == vec![0]).unwrap();
    assert_eq!((top.columns, top.rank), (1, 1));
}

#[test]
fn matches_at_zero_charge() {
    let t = Truncation::new(2, 2);
    let w = fock_wakimoto("A1", vec![q(0)], q(0), 2);
    let m = loop_fock("A1".parse().unwrap(), TriangularSpec::Standard, weight(vec![q(0)], q(0)), t).unwrap();
    assert!(match_to_verma(&w, &m, t).isomorphism);
}

#[test]
fn a2_matches_loop_module() {
    let t = Truncation::new(2, 2);
    let lam = weight(vec![qf(1, 3), qf(2, 7)], q(1));
    let w = fock_wakimoto("A2", lam.h.iter().map(|x| x.0.clone()).collect(), q(1), 2);
    let m = loop_fock("A2".parse().unwrap(), TriangularSpec::Standard, lam, t).unwrap();
    let r = match_to_verma(&w, &m, t);
    assert!(r.isomorphism, "{:?} {:?}", r.equivariance_witness, r.rank_drop);
}

#[test]
fn functor_character_matches_imaginary_verma() {
    let t = Truncation::new(3, 3);
    let f = ImaginaryWakimotoFunctor::new("A1".parse().unwrap(), &[], 4).unwrap();
    let setting = affine_core::module::Setting::new(AffineAlgebra::new("A1".parse::<CartanType>().unwrap()), f.parabolic.frame.clone());
    let lam = weight(vec![qf(1, 3)], q(1));
    let w = f.apply(Arc::new(FockModule::full(setting.clone(), TriangularSpec::Standard, lam.clone()))).unwrap();
    let m = imaginary_verma("A1".parse().unwrap(), lam.clone(), t).unwrap();
    assert_eq!(character(&w, t), character(&m, t));
    let zero = f.apply(Arc::new(ZeroModule::new(setting, lam))).unwrap();
    assert!(zero.basis(t).is_empty());
}

#[test]
fn dump_lists_central_entry() {
    let w = fock_wakimoto("A1", vec![q(1)], q(1), 1);
    let d = dump_realization(&w.realization, 1, 2);
    assert_eq!(d.central, "pi(c) = a");
    assert_eq!(d.entries.len(), 3);
    let f = d.entries.iter().find(|e| e.generator.contains("-1")).unwrap();
    assert_eq!(f.modes[&1], "-1*a[1][1]");
}

#[test]
fn a2_levi_tensor_relations() {
    let t = Truncation::new(1, 2);
    let lam = weight(vec![qf(1, 3), qf(2, 7)], q(1));
    let (p, _, _, v) = affine_core::instances::levi_tensor("A2".parse().unwrap(), &[0], lam, None, t).unwrap();
    let w = wakimoto_module(p, v).unwrap();
    assert_eq!(w.realization.ubar.len(), 2);
    let r = verify_homomorphism(&w, 1, t);
    assert!(r.holds, "{:?}", &r.violations[..r.violations.len().min(3)]);
}
