//! The Heisenberg subalgebra `G`: relation tables, the admissibility check
//! for `G`-modules, and the two-sums test for oscillator actions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Generator;
use crate::error::{Error, Result};
use crate::module::{act_vec, BasisKey, Setting, Truncation, Vector, Weight, WeightModule};
use crate::rational::{q, Rational};
use crate::sparse::SparseSpan;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationEntry {
    pub x: (i64, usize),
    pub y: (i64, usize),
    /// Coefficient of `c` in `[x_k^i, x_n^j]`.
    pub central: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeisenbergBasis {
    pub max_level: i64,
    /// `m_k` for `k = 1..=max_level`.
    pub multiplicities: Vec<usize>,
    pub table: Vec<RelationEntry>,
    pub verified: bool,
}

/// Oscillator basis of `G` up to `max_level` with its exact relation table.
pub fn heisenberg_basis(setting: &Setting, max_level: i64) -> HeisenbergBasis {
    let n = setting.frame.rank();
    let mut table = Vec::new();
    let mut verified = true;
    let levels: Vec<i64> = (-max_level..=max_level).filter(|&k| k != 0).collect();
    for &k in &levels {
        for &l in &levels {
            for i in 0..n {
                for j in 0..n {
                    let b = setting.bracket(&Generator::Imag { k, j: i }, &Generator::Imag { k: l, j });
                    let c = b.coeff(&Generator::Central);
                    let expect = if i == j && k + l == 0 { q(k) } else { q(0) };
                    verified &= b.len() <= 1 && c == expect;
                    table.push(RelationEntry { x: (k, i), y: (l, j), central: Rational(c) });
                }
            }
        }
    }
    HeisenbergBasis { max_level, multiplicities: vec![n; max_level.max(0) as usize], table, verified }
}

/// Checks `[x_k, x_n] = k δ_{k,-n} a` on every basis vector of `m` inside
/// `t`, for the listed oscillators and `|k|, |n| <= max_level`.
pub fn oscillator_relations_hold(m: &dyn WeightModule, oscillators: &[usize], max_level: i64, t: Truncation) -> bool {
    let a = m.charge().clone();
    let gens: Vec<Generator> = (-max_level..=max_level)
        .filter(|&k| k != 0)
        .flat_map(|k| oscillators.iter().map(move |&j| Generator::Imag { k, j }))
        .collect();
    m.basis(t).iter().all(|key| {
        let v = Vector::unit(key.clone());
        gens.iter().all(|x| {
            gens.iter().all(|y| {
                let xy = act_vec(m, x, &act_vec(m, y, &v));
                let yx = act_vec(m, y, &act_vec(m, x, &v));
                let (Generator::Imag { k, j: i }, Generator::Imag { k: l, j }) = (*x, *y) else { unreachable!() };
                let expect = if i == j && k + l == 0 { v.scaled(&(q(k) * &a)) } else { Vector::new() };
                xy.sub(&yx) == expect
            })
        })
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwoSumsReport {
    pub n: i64,
    pub offsets: Vec<i64>,
    pub plus_sum: Vec<(BasisKey, Rational)>,
    pub minus_sum: Vec<(BasisKey, Rational)>,
    /// At least one of the two sums is nonzero.
    pub verdict: bool,
}

fn dump(v: &Vector) -> Vec<(BasisKey, Rational)> {
    v.iter().map(|(k, c)| (k.clone(), Rational(c.clone()))).collect()
}

fn homogeneous_weight(m: &dyn WeightModule, v: &Vector) -> Result<Weight> {
    let mut ws = v.keys().map(|k| m.weight(k));
    let w = ws.next().ok_or_else(|| Error::WeightHypothesis("zero vector".into()))?;
    if ws.any(|x| x != w) {
        return Err(Error::WeightHypothesis("vector is not a weight vector".into()));
    }
    Ok(w)
}

/// Evaluates `Σ x_{N-k_i} w_i` and `Σ x_{-N-k_i} w_i`, where `x_l` is the
/// oscillator `x_l^{j}` with `j = choice[|l|-1]` (index 0 beyond the list)
/// and `μ_1 - μ_i = k_i δ`.
pub fn heis_two_sums(m: &dyn WeightModule, choice: &[usize], ws: &[Vector], n: i64) -> Result<TwoSumsReport> {
    let weights = ws.iter().map(|w| homogeneous_weight(m, w)).collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        if w.finite != weights[0].finite {
            return Err(Error::WeightHypothesis(format!("w_{} differs from w_1 by a finite weight", i + 1)));
        }
        let k = weights[0].level - w.level;
        if i > 0 && k <= offsets[i - 1] {
            return Err(Error::WeightHypothesis("μ_i - μ_{i+1} must be a positive multiple of δ".into()));
        }
        offsets.push(k);
    }
    let x = |l: i64| -> Result<Generator> {
        if l == 0 {
            return Err(Error::Precondition("N must exceed every offset".into()));
        }
        let j = choice.get((l.unsigned_abs() - 1) as usize).copied().unwrap_or(0);
        Ok(Generator::Imag { k: l, j })
    };
    let mut plus = Vector::new();
    let mut minus = Vector::new();
    for (w, k) in ws.iter().zip(&offsets) {
        plus.add_assign(&act_vec(m, &x(n - k)?, w));
        minus.add_assign(&act_vec(m, &x(-n - k)?, w));
    }
    let verdict = !plus.is_zero() || !minus.is_zero();
    Ok(TwoSumsReport { n, offsets, plus_sum: dump(&plus), minus_sum: dump(&minus), verdict })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    AdmissibleInBox,
    NotAdmissible,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub level: i64,
    pub verdict: Admissibility,
    /// Generator of the offending cyclic submodule and the pair `(v1, v2)`
    /// refuting surjectivity in both directions.
    pub witness: Option<(BasisKey, Vec<(BasisKey, Rational)>, Vec<(BasisKey, Rational)>)>,
    pub checked: usize,
}

fn in_box(m: &dyn WeightModule, v: &Vector, t: Truncation) -> bool {
    v.keys().all(|k| t.admits(m.measure(k)))
}

/// Boxed slice of the cyclic `G_k`-submodule generated by `start`.
fn cyclic_slice(m: &dyn WeightModule, gens: &[Generator], start: &Vector, t: Truncation) -> Vec<Vector> {
    let mut span = SparseSpan::new();
    let mut out = vec![];
    let mut queue = vec![start.clone()];
    span.insert(start);
    out.push(start.clone());
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = act_vec(m, g, &v);
            if !w.is_zero() && in_box(m, &w, t) && span.insert(&w) {
                out.push(w.clone());
                queue.push(w);
            }
        }
    }
    out
}

/// `U(span(gens))`-orbit of `v` inside the box contains every vector of `slice`.
fn generates(m: &dyn WeightModule, gens: &[Generator], v: &Vector, slice: &[Vector], t: Truncation) -> bool {
    let mut span = SparseSpan::new();
    let mut frontier = vec![v.clone()];
    span.insert(v);
    while let Some(x) = frontier.pop() {
        for g in gens {
            let w = act_vec(m, g, &x);
            if !w.is_zero() && in_box(m, &w, t) && span.insert(&w) {
                frontier.push(w);
            }
        }
    }
    slice.iter().all(|s| span.contains(s))
}

/// Refutes `C[x]`-surjectivity for a single oscillator `x` raising (or
/// lowering) the weight: if `x` is injective on the slice, any `v1` outside
/// `x·V` can only be reached from itself, so a `v2` in the slice strictly
/// below (resp. above) `v1` cannot be reached together with it.
fn refute(m: &dyn WeightModule, x: &Generator, slice: &[Vector], t: Truncation) -> Option<(Vector, Vector)> {
    let mut img = SparseSpan::new();
    let mut images = SparseSpan::new();
    for v in slice {
        let xv = act_vec(m, x, v);
        if !images.insert(&xv) {
            return None;
        }
    }
    // x·V near each slice vector, computed from the full box one step wider.
    let wide = Truncation::new(t.depth + x.level().unsigned_abs() as u32, t.height);
    for key in m.basis(wide) {
        img.insert(&act_vec(m, x, &Vector::unit(key)));
    }
    let up = x.level() > 0;
    for v1 in slice {
        if img.contains(v1) {
            continue;
        }
        let w1 = homogeneous_weight(m, v1).ok()?;
        for v2 in slice {
            let w2 = homogeneous_weight(m, v2).ok()?;
            if w2.finite == w1.finite && ((up && w2.level < w1.level) || (!up && w2.level > w1.level)) {
                return Some((v1.clone(), v2.clone()));
            }
        }
    }
    None
}

/// Box-scoped admissibility at level `k` for the oscillators `oscillators`.
pub fn check_admissible(m: &dyn WeightModule, oscillators: &[usize], k: i64, t: Truncation) -> AdmissibilityReport {
    let plus: Vec<Generator> = oscillators.iter().map(|&j| Generator::Imag { k, j }).collect();
    let minus: Vec<Generator> = oscillators.iter().map(|&j| Generator::Imag { k: -k, j }).collect();
    let both: Vec<Generator> = plus.iter().chain(&minus).copied().collect();
    let mut verdict = Admissibility::AdmissibleInBox;
    let mut witness = None;
    let basis = m.basis(t);
    for key in &basis {
        let slice = cyclic_slice(m, &both, &Vector::unit(key.clone()), t);
        let ok = [&plus, &minus].iter().any(|gens| slice.iter().any(|v| generates(m, gens, v, &slice, t)));
        if ok {
            continue;
        }
        if oscillators.len() == 1 {
            if let (Some((a, b)), Some(_)) = (refute(m, &plus[0], &slice, t), refute(m, &minus[0], &slice, t)) {
                verdict = Admissibility::NotAdmissible;
                witness = Some((key.clone(), dump(&a), dump(&b)));
                break;
            }
        }
        verdict = Admissibility::Inconclusive;
    }
    AdmissibilityReport { level: k, verdict, witness, checked: basis.len() }
}

/// Weight-space dimensions of a module inside `t`, keyed by δ-level only.
pub fn depth_profile(m: &dyn WeightModule, t: Truncation) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for key in m.basis(t) {
        *out.entry(m.weight(&key).level).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use num_traits::Zero;

    use crate::algebra::{AffineAlgebra, Frame};
    use crate::module::{CharacterModule, DiagonalTensor, FockModule, HighestWeight, TriangularSpec, ZeroModule};

    fn a1() -> Arc<Setting> {
        let alg = AffineAlgebra::new("A1".parse().unwrap());
        let frame = Frame::standard(&alg);
        Setting::new(alg, frame)
    }

    fn hw(c: i64) -> HighestWeight {
        HighestWeight::new(vec![q(0)], q(0), q(c))
    }

    #[test]
    fn basis_relations() {
        let s = a1();
        let b = heisenberg_basis(&s, 3);
        assert!(b.verified);
        assert_eq!(b.multiplicities, vec![1, 1, 1]);
        let e = b.table.iter().find(|e| e.x == (1, 0) && e.y == (-1, 0)).unwrap();
        assert_eq!(e.central.0, q(1));
        let e = b.table.iter().find(|e| e.x == (2, 0) && e.y == (1, 0)).unwrap();
        assert!(e.central.0.is_zero());
    }

    #[test]
    fn two_sums_vacuum() {
        let f = FockModule::full(a1(), TriangularSpec::Standard, hw(1));
        let vac = Vector::unit(f.vacuum());
        let r = heis_two_sums(&f, &[], &[vac], 5).unwrap();
        assert!(r.plus_sum.is_empty() && !r.minus_sum.is_empty() && r.verdict);
        let z = CharacterModule::new(a1(), hw(0));
        let r = heis_two_sums(&z, &[], &[Vector::unit(BasisKey::Unit)], 5).unwrap();
        assert!(!r.verdict);
    }

    #[test]
    fn two_sums_rejects_bad_offsets() {
        let f = FockModule::full(a1(), TriangularSpec::Standard, hw(1));
        let vac = Vector::unit(f.vacuum());
        assert!(heis_two_sums(&f, &[], &[vac.clone(), vac], 5).is_err());
    }

    #[test]
    fn admissibility() {
        let s = a1();
        let f = FockModule::full(s.clone(), TriangularSpec::Standard, hw(1));
        let t = Truncation::new(4, 0);
        assert_eq!(check_admissible(&f, &[0], 1, t).verdict, Admissibility::AdmissibleInBox);
        let lo = FockModule::full(s.clone(), TriangularSpec::Lowest, hw(1));
        let d = DiagonalTensor::new(Arc::new(f), Arc::new(lo));
        let r = check_admissible(&d, &[0], 1, t);
        assert_eq!(r.verdict, Admissibility::NotAdmissible);
        let z = ZeroModule::new(s, hw(1));
        assert_eq!(check_admissible(&z, &[0], 1, t).verdict, Admissibility::AdmissibleInBox);
    }
}
