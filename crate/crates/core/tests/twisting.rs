use std::sync::Arc;

use affine_core::algebra::Generator;
use affine_core::instances::weight;
use affine_core::module::{act, character, BasisKey, Truncation, Vector, WeightModule};
use affine_core::rational::{q, qf};
use affine_core::twisting::{localized_character, verify_intertwining, LocalizedVector, TwistSetup};
use affine_core::wakimoto::wakimoto_module;

fn setup(depth: u32, n_max: u32) -> TwistSetup {
    let lam = weight(vec![qf(1, 3), qf(2, 7)], q(1));
    TwistSetup::new("A2".parse().unwrap(), &[0], lam, &[1, 0], 0, Truncation::new(depth, depth), n_max).unwrap()
}

/// `x = e_{-α2} t^{-1}`, `y = [f, x]` as a multiple of `e_{-α1-α2} t^{-1}`.
fn string(s: &TwistSetup) -> (Generator, Generator, affine_core::Q) {
    let setting = s.v.setting();
    let alg = &setting.alg;
    let x = Generator::Real { n: -1, root: alg.root_index(&[0, -1]).unwrap() };
    let y = Generator::Real { n: -1, root: alg.root_index(&[-1, -1]).unwrap() };
    let br = setting.bracket(&s.f, &x);
    assert_eq!(br.len(), 1);
    let c = br.coeff(&y);
    assert!(setting.bracket(&s.f, &y).is_zero());
    (x, y, c)
}

#[test]
fn forward_series_examples() {
    let s = setup(1, 3);
    let tw = s.intertwiner(Truncation::new(1, 1)).unwrap();
    let (x, y, c) = string(&s);
    let w = s.v.generator().unwrap();
    let loc = |n| BasisKey::Pair(Box::new(BasisKey::Localized(n, Box::new(s.local.base.generator().unwrap()))), match &w {
        BasisKey::Pair(_, b) => b.clone(),
        _ => unreachable!(),
    });
    let one = tw.eta_forward(&LocalizedVector::unit((2, BasisKey::Pbw(vec![], Box::new(w.clone())))));
    assert_eq!(one, Vector::unit(BasisKey::Pbw(vec![], Box::new(loc(2)))));
    for (n, binom) in [(1u32, 1i64), (2, 2)] {
        let out = tw.eta_forward(&LocalizedVector::unit((n, BasisKey::Pbw(vec![(x, 1)], Box::new(w.clone())))));
        let mut expect = Vector::unit(BasisKey::Pbw(vec![(x, 1)], Box::new(loc(n))));
        expect.add_term(BasisKey::Pbw(vec![(y, 1)], Box::new(loc(n + 1))), -c.clone() * q(binom));
        assert_eq!(out, expect);
    }
}

#[test]
fn backward_series_example_and_roundtrip() {
    let s = setup(1, 3);
    let tw = s.intertwiner(Truncation::new(1, 1)).unwrap();
    let (x, y, c) = string(&s);
    let w = s.v.generator().unwrap();
    let sample = LocalizedVector::unit((1, BasisKey::Pbw(vec![(x, 1)], Box::new(w.clone()))));
    let forward = tw.eta_forward(&sample);
    assert_eq!(tw.eta_backward(&forward), sample);
    let BasisKey::Pair(_, sk) = &w else { unreachable!() };
    let lw = BasisKey::Pair(Box::new(BasisKey::Localized(1, Box::new(s.local.base.generator().unwrap()))), sk.clone());
    let back = tw.eta_backward(&Vector::unit(BasisKey::Pbw(vec![(x, 1)], Box::new(lw))));
    let mut expect = LocalizedVector::unit((1, BasisKey::Pbw(vec![(x, 1)], Box::new(w.clone()))));
    expect.add_term((2, BasisKey::Pbw(vec![(y, 1)], Box::new(w))), c);
    assert_eq!(back, expect);
}

#[test]
fn intertwines_at_depth_one() {
    let t = Truncation::new(1, 1);
    let s = setup(1, 3);
    let tw = s.intertwiner(t).unwrap();
    let r = verify_intertwining(&tw, t, 3, 1);
    assert!(!r.samples.is_empty());
    assert!(r.roundtrip && r.equivariant, "{:?}", r.samples.iter().find(|v| !v.equivariant));
}

#[test]
fn central_acts_by_charge_on_both_sides() {
    let t = Truncation::new(1, 1);
    let s = setup(1, 2);
    let tw = s.intertwiner(t).unwrap();
    for x in tw.samples(t, 2) {
        let image = tw.eta_forward(&x);
        let mut lhs = Vector::new();
        for (k, c) in image.iter() {
            lhs.add_scaled(&act(&*tw.twisted, &Generator::Central, k), c);
        }
        assert_eq!(lhs, image);
        assert_eq!(tw.act_left(&Generator::Central, &x), x);
    }
}

#[test]
fn empty_sample_set_for_zero_bound() {
    let t = Truncation::new(1, 1);
    let s = setup(1, 1);
    let tw = s.intertwiner(t).unwrap();
    let r = verify_intertwining(&tw, t, 0, 1);
    assert!(r.samples.is_empty() && r.roundtrip && r.equivariant);
}

#[test]
fn twisting_commutes_with_wakimoto_on_characters() {
    let (depth, n_max, h) = (1, 2, 2);
    let s = setup(depth, n_max);
    // height large enough that all weights with |height| <= h are complete
    let big = Truncation::new(depth, h + n_max + 4 * depth + 3);
    let w = wakimoto_module(s.parabolic.clone(), s.v.clone()).unwrap();
    let wt = wakimoto_module(s.parabolic.clone(), s.tv.clone()).unwrap();
    let ht = |wt: &affine_core::module::Weight| wt.finite.iter().sum::<i64>().abs();
    let (left, injective) = localized_character(&w, &s.f, big, n_max, |mu| ht(mu) <= i64::from(h + n_max + 1));
    assert!(injective);
    let right = character(&wt, big);
    let near = |wt: &affine_core::module::Weight| ht(wt) <= i64::from(h);
    let l: Vec<_> = left.iter().filter(|(k, _)| near(k)).collect();
    let r: Vec<_> = right.iter().filter(|(k, _)| near(k)).collect();
    assert!(!l.is_empty());
    assert_eq!(l, r);
}

#[test]
fn rejects_roots_outside_levi() {
    let lam = weight(vec![q(0), q(0)], q(1));
    let t = Truncation::new(1, 1);
    assert!(TwistSetup::new("A2".parse().unwrap(), &[0], lam.clone(), &[0, 1], 0, t, 1).is_err());
    assert!(TwistSetup::new("A2".parse().unwrap(), &[0], lam, &[-1, 0], 0, t, 1).is_err());
}

#[test]
fn localized_module_weights() {
    let s = setup(1, 2);
    let g = s.local.generator().unwrap();
    let w = s.local.weight(&g);
    assert_eq!(w.finite, vec![1, 0]);
    let _ = Arc::clone(&s.local);
}
