use affine_core::heisenberg::{depth_profile, heis_two_sums, heisenberg_basis, oscillator_relations_hold};
use affine_core::instances::{parabolic_setting, weight};
use affine_core::module::{FockModule, TriangularSpec, Truncation, Vector, WeightModule};
use affine_core::partitions::{ImaginarySpec, Sign};
use affine_core::rational::{q, qf};
use proptest::prelude::*;

/// Coefficients of `Π_{k>=1} (1 - q^k)^{-m}` by direct convolution.
fn oracle(m: usize, depth: usize) -> Vec<usize> {
    let mut c = vec![0usize; depth + 1];
    c[0] = 1;
    for k in 1..=depth {
        for _ in 0..m {
            for d in k..=depth {
                c[d] += c[d - k];
            }
        }
    }
    c
}

fn fock(t: &str, spec: TriangularSpec, a: i64) -> FockModule {
    let (_, setting) = parabolic_setting(t.parse().unwrap(), &[], ImaginarySpec::Full, 8).unwrap();
    let rank = setting.alg.rank();
    FockModule::full(setting, spec, weight(vec![qf(1, 2); rank], q(a)))
}

#[test]
fn a1_dimensions() {
    let f = fock("A1", TriangularSpec::Standard, 1);
    let p = depth_profile(&f, Truncation::new(6, 0));
    let dims: Vec<usize> = (0..=6).map(|d| p[&-d]).collect();
    assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11]);
}

#[test]
fn relation_table_for_d4() {
    let (_, setting) = parabolic_setting("D4".parse().unwrap(), &[], ImaginarySpec::Full, 3).unwrap();
    let b = heisenberg_basis(&setting, 2);
    assert!(b.verified);
    assert_eq!(b.multiplicities, vec![4, 4]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dimensions_match_oracle(t in prop::sample::select(vec!["A1", "A2", "A3"]), depth in 0u32..5) {
        let f = fock(t, TriangularSpec::Standard, 1);
        let p = depth_profile(&f, Truncation::new(depth, 0));
        let dims: Vec<usize> = (0..=i64::from(depth)).map(|d| p.get(&-d).copied().unwrap_or(0)).collect();
        prop_assert_eq!(dims, oracle(f.setting().alg.rank(), depth as usize));
    }

    #[test]
    fn relations_hold_for_any_signs(signs in prop::collection::vec(any::<bool>(), 3), a in -3i64..4) {
        let phi = signs.iter().map(|&s| if s { Sign::Plus } else { Sign::Minus }).collect();
        let f = fock("A1", TriangularSpec::Phi { phi }, a);
        prop_assert!(oscillator_relations_hold(&f, &[0], 3, Truncation::new(3, 0)));
    }

    #[test]
    fn two_sums_nonzero_at_nonzero_charge(a in prop::sample::select(vec![-2i64, -1, 1, 3]), n in 2i64..21) {
        let f = fock("A1", TriangularSpec::Standard, a);
        let vac = Vector::unit(f.vacuum());
        let r = heis_two_sums(&f, &[], &[vac], n).unwrap();
        prop_assert!(r.verdict);
    }
}
