use affine_core::algebra::{AlgElement, Generator, Mode};
use affine_core::induced::{cyclicity_certificate, default_raising_bound, singular_vectors, InducedModule};
use affine_core::instances::{imaginary_verma, weight};
use affine_core::module::{act_element, act_vec, character, BasisKey, Truncation, Vector, WeightModule};
use affine_core::rational::{q, qf};
use affine_core::Root;

fn verma(a: i64, t: Truncation) -> InducedModule {
    imaginary_verma("A1".parse().unwrap(), weight(vec![qf(1, 3)], q(a)), t).unwrap()
}

fn real(m: &InducedModule, finite: i64, n: i64) -> Generator {
    Generator::Real { n, root: m.setting().alg.root_index(&[finite]).unwrap() }
}

fn h(m: &InducedModule, n: i64) -> AlgElement {
    let _ = m;
    AlgElement::unit(Mode::Cartan { n, i: 0 })
}

fn apply(m: &InducedModule, x: &AlgElement, v: &Vector) -> Vector {
    act_element(m, &m.setting().frame.decompose(x), v)
}

#[test]
fn low_weight_multiplicities() {
    let t = Truncation::new(1, 1);
    let m = verma(1, t);
    let ch = character(&m, t);
    assert_eq!(ch[&Root::new(vec![0], 0)], 1);
    assert_eq!(ch[&Root::new(vec![0], -1)], 1);
    assert_eq!(ch[&Root::new(vec![-1], -1)], 2);
    assert!(!ch.contains_key(&Root::new(vec![0], 1)));
}

#[test]
fn cartan_mode_pairing() {
    let t = Truncation::new(2, 2);
    for a in [1, 3] {
        let m = verma(a, t);
        let v = m.generator_vector().unwrap();
        let hv = apply(&m, &h(&m, -1), &v);
        assert_eq!(apply(&m, &h(&m, 1), &hv), v.scaled(&q(2 * a)));
    }
}

#[test]
fn e_on_f_gives_h() {
    let t = Truncation::new(2, 2);
    let m = verma(1, t);
    let v = m.generator_vector().unwrap();
    let fv = act_vec(&m, &real(&m, -1, -1), &v);
    let efv = act_vec(&m, &real(&m, 1, 0), &fv);
    assert_eq!(efv, apply(&m, &h(&m, -1), &v));
}

#[test]
fn degree_grading() {
    let t = Truncation::new(2, 2);
    let m = verma(1, t);
    let v = m.generator_vector().unwrap();
    let hv = apply(&m, &h(&m, -1), &v);
    assert_eq!(act_vec(&m, &Generator::Derivation, &hv), hv.scaled(&q(-1)));
}

#[test]
fn nilradical_kills_generator() {
    let t = Truncation::new(2, 2);
    let m = verma(1, t);
    let v = m.generator_vector().unwrap();
    for n in -3..=3 {
        assert!(act_vec(&m, &real(&m, 1, n), &v).is_zero());
    }
}

#[test]
fn heights() {
    let t = Truncation::new(2, 2);
    let m = verma(1, t);
    let v = m.generator_vector().unwrap();
    let w = act_vec(&m, &real(&m, -1, -1), &act_vec(&m, &real(&m, -1, 0), &v));
    assert_eq!(m.u_height(&w).unwrap(), 2);
    assert_eq!(m.u_height(&v).unwrap(), 0);
    let hv = apply(&m, &h(&m, -1), &v);
    assert_eq!(m.affine_u_height(&hv).unwrap(), 2);
    assert!(m.u_height(&w.clone().sub(&hv)).is_err());
}

#[test]
fn zero_charge_has_singular_vector() {
    let t = Truncation::new(1, 1);
    let m = verma(0, t);
    let cert = singular_vectors(&m, t, default_raising_bound(t));
    assert!(!cert.only_generator);
    let delta = cert.weights.iter().find(|w| w.weight == Root::new(vec![0], -1)).unwrap();
    assert_eq!(delta.singular.len(), 1);
    let cyc = cyclicity_certificate(&m, t, default_raising_bound(t));
    assert!(!cyc.all_reached);
}

#[test]
fn generic_charge_small_box() {
    let t = Truncation::new(2, 2);
    let m = verma(1, t);
    let bound = default_raising_bound(t);
    assert!(singular_vectors(&m, t, bound).only_generator);
    assert!(cyclicity_certificate(&m, t, bound).all_reached);
    let gen = m.generator().unwrap();
    assert!(matches!(gen, BasisKey::Pbw(ref mono, _) if mono.is_empty()));
}

#[test]
fn trivial_box() {
    let t = Truncation::new(0, 0);
    let m = verma(0, t);
    assert_eq!(m.basis(t).len(), 1);
    assert!(singular_vectors(&m, t, 1).only_generator);
}
