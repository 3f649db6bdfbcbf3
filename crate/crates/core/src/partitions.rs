//! Quase partitions of the affine root system, natural parabolic subalgebras
//! and their Levi data, and the height functions used by the induction
//! arguments.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::{AffineAlgebra, Frame, Generator, Root, RootClass};
use crate::error::{Error, Result};
use crate::linalg::rank;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// Rule deciding membership of a root, usable beyond any box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum PartitionRule {
    Standard,
    Natural,
    /// `phi[n-1]` is the sign of `nδ`; levels beyond the table count as `+`.
    Phi { phi: Vec<Sign> },
}

impl PartitionRule {
    pub fn contains(&self, r: &Root) -> bool {
        let pos = r.finite.iter().any(|&x| x > 0);
        if !r.is_finite_zero() {
            return match self {
                PartitionRule::Standard => r.level > 0 || (r.level == 0 && pos),
                _ => pos,
            };
        }
        match self {
            PartitionRule::Standard | PartitionRule::Natural => r.level > 0,
            PartitionRule::Phi { phi } => {
                let m = r.level.unsigned_abs() as usize;
                let s = phi.get(m - 1).copied().unwrap_or(Sign::Plus);
                (r.level > 0) == (s == Sign::Plus)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionTag {
    Standard,
    Natural,
    Phi(Vec<Sign>),
    Extensional,
}

/// A root subset `P`, stored extensionally inside `|level| <= box_level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasePartition {
    pub tag: PartitionTag,
    pub box_level: i64,
    pub roots: BTreeSet<Root>,
    /// Membership outside the box, when known.
    pub beyond: Option<PartitionRule>,
}

impl QuasePartition {
    fn from_rule(alg: &AffineAlgebra, rule: PartitionRule, tag: PartitionTag, k: i64) -> Self {
        let roots = alg.roots_in_box(k).into_iter().filter(|r| rule.contains(r)).collect();
        QuasePartition { tag, box_level: k, roots, beyond: Some(rule) }
    }

    pub fn extensional(box_level: i64, roots: BTreeSet<Root>, beyond: Option<PartitionRule>) -> Self {
        QuasePartition { tag: PartitionTag::Extensional, box_level, roots, beyond }
    }

    /// `Some(true/false)` when decidable, `None` outside the box without a rule.
    pub fn contains(&self, r: &Root) -> Option<bool> {
        if r.level.abs() <= self.box_level {
            Some(self.roots.contains(r))
        } else {
            self.beyond.as_ref().map(|rule| rule.contains(r))
        }
    }

    /// Replaces the in-box set, keeping the outside rule.
    pub fn modified(&self, remove: &[Root], add: &[Root]) -> Self {
        let mut roots = self.roots.clone();
        for r in remove {
            roots.remove(r);
        }
        roots.extend(add.iter().cloned());
        QuasePartition::extensional(self.box_level, roots, self.beyond.clone())
    }
}

pub fn standard_partition(alg: &AffineAlgebra, k: i64) -> QuasePartition {
    QuasePartition::from_rule(alg, PartitionRule::Standard, PartitionTag::Standard, k)
}

pub fn natural_partition(alg: &AffineAlgebra, k: i64) -> QuasePartition {
    QuasePartition::from_rule(alg, PartitionRule::Natural, PartitionTag::Natural, k)
}

pub fn phi_partition(alg: &AffineAlgebra, phi: &[Sign], k: i64) -> Result<QuasePartition> {
    if (phi.len() as i64) < k {
        return Err(Error::Precondition(format!("phi must be defined on 1..{k}, got {} values", phi.len())));
    }
    let rule = PartitionRule::Phi { phi: phi.to_vec() };
    Ok(QuasePartition::from_rule(alg, rule, PartitionTag::Phi(phi.to_vec()), k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Invalid,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Disjoint,
    Cover,
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub verdict: Verdict,
    pub violated: Option<Condition>,
    pub witness: Vec<Root>,
    /// Whether `P ∩ Δ^re` is closed under sums that are real roots.
    pub real_sum_closed: bool,
    pub box_level: i64,
}

/// Root of `[ĝ_a, ĝ_b]` when that bracket is a nonzero root space.
fn bracket_root(alg: &AffineAlgebra, a: &Root, b: &Root) -> Option<Root> {
    let s = a.add(b);
    let real_a = !a.is_finite_zero();
    let real_b = !b.is_finite_zero();
    match (real_a, real_b) {
        (false, false) => None,
        (true, true) => (alg.classify_root(&s) != RootClass::NotARoot).then_some(s),
        // [h ⊗ t^k, e_α ⊗ t^m] = α(h) e_α ⊗ t^{m+k} is nonzero for suitable h.
        _ => Some(s),
    }
}

/// Checks the quase-partition axioms inside the box. The subalgebra
/// generated by `H` and the `ĝ_α, α ∈ P` is closed at the level of roots:
/// a root is added whenever some bracket of two present root spaces is
/// nonzero there.
pub fn validate_quase_partition(alg: &AffineAlgebra, p: &QuasePartition) -> ValidationReport {
    let k = p.box_level;
    let report = |verdict, violated, witness| ValidationReport {
        verdict,
        violated,
        witness,
        real_sum_closed: real_sum_closed(alg, p),
        box_level: k,
    };
    for r in &p.roots {
        if p.roots.contains(&r.neg()) {
            return report(Verdict::Invalid, Some(Condition::Disjoint), vec![r.clone(), r.neg()]);
        }
    }
    for r in alg.roots_in_box(k) {
        if !p.roots.contains(&r) && !p.roots.contains(&r.neg()) {
            return report(Verdict::Invalid, Some(Condition::Cover), vec![r]);
        }
    }
    let mut seen: BTreeSet<Root> = p.roots.clone();
    let mut queue: VecDeque<Root> = p.roots.iter().cloned().collect();
    let mut escaped = false;
    let mut violations: BTreeSet<Root> = BTreeSet::new();
    while let Some(a) = queue.pop_front() {
        let current: Vec<Root> = seen.iter().cloned().collect();
        for b in &current {
            let Some(s) = bracket_root(alg, &a, b) else { continue };
            if seen.contains(&s) {
                continue;
            }
            match p.contains(&s) {
                Some(true) => {
                    if s.level.abs() <= k {
                        seen.insert(s.clone());
                        queue.push_back(s);
                    }
                }
                Some(false) => {
                    violations.insert(s);
                }
                None => escaped = true,
            }
        }
    }
    if !violations.is_empty() {
        // Imaginary witnesses first: they are the failure mode specific to
        // mixed imaginary signs.
        let mut w: Vec<Root> = violations.into_iter().collect();
        w.sort_by_key(|r| (!r.is_finite_zero(), r.level.abs(), r.clone()));
        return report(Verdict::Invalid, Some(Condition::Closure), w);
    }
    if escaped {
        report(Verdict::Inconclusive, None, vec![])
    } else {
        report(Verdict::Valid, None, vec![])
    }
}

fn real_sum_closed(alg: &AffineAlgebra, p: &QuasePartition) -> bool {
    let real: Vec<&Root> = p.roots.iter().filter(|r| !r.is_finite_zero()).collect();
    real.iter().all(|a| {
        real.iter().all(|b| {
            let s = a.add(b);
            alg.classify_root(&s) != RootClass::Real || p.contains(&s) != Some(false)
        })
    })
}

/// Which part of `G(l̂)^⊥` belongs to the Levi factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ImaginarySpec {
    /// All of `G`.
    Full,
    /// Only `G(l̂)`; the positive part of `G(l̂)^⊥` joins the nilradical.
    LeviOnly,
    /// `G(l̂)` plus the listed `G(l̂)^⊥` oscillators `(|k|, j)` in both signs.
    Oscillators { include: Vec<(i64, usize)> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Levi,
    Nilradical,
    Opposite,
    Cartan,
}

#[derive(Clone, Debug)]
pub struct ParabolicSubalgebra {
    pub omega: Vec<usize>,
    pub imaginary: ImaginarySpec,
    pub box_level: i64,
    pub frame: Frame,
    pub levi_roots: Vec<Root>,
    pub nil_roots: Vec<Root>,
    pub opposite_roots: Vec<Root>,
}

fn in_span(finite: &[i64], omega: &[usize]) -> bool {
    finite.iter().enumerate().all(|(i, &x)| x == 0 || omega.contains(&i))
}

pub fn natural_parabolic(alg: &AffineAlgebra, omega: &[usize], imaginary: ImaginarySpec, k: i64) -> Result<ParabolicSubalgebra> {
    if let Some(&bad) = omega.iter().find(|&&i| i >= alg.rank()) {
        return Err(Error::Precondition(format!("simple root index {} out of range", bad + 1)));
    }
    let mut omega = omega.to_vec();
    omega.sort_unstable();
    omega.dedup();
    let frame = Frame::adapted(alg, &omega);
    let mut p = ParabolicSubalgebra {
        omega,
        imaginary,
        box_level: k,
        frame,
        levi_roots: vec![],
        nil_roots: vec![],
        opposite_roots: vec![],
    };
    for r in alg.roots_in_box(k) {
        let bucket = if r.is_finite_zero() {
            let mut parts: Vec<Part> =
                (0..alg.rank()).map(|j| p.classify(&Generator::Imag { k: r.level, j })).collect();
            parts.sort();
            parts[0]
        } else {
            p.classify_real(&r.finite)
        };
        match bucket {
            Part::Levi => p.levi_roots.push(r),
            Part::Nilradical => p.nil_roots.push(r),
            _ => p.opposite_roots.push(r),
        }
    }
    Ok(p)
}

impl ParabolicSubalgebra {
    fn classify_real(&self, finite: &[i64]) -> Part {
        if in_span(finite, &self.omega) {
            Part::Levi
        } else if finite.iter().any(|&x| x > 0) {
            Part::Nilradical
        } else {
            Part::Opposite
        }
    }

    /// Part of `ĝ = ū̂ ⊕ l̂ ⊕ û` containing a frame generator.
    pub fn classify_with(&self, alg: &AffineAlgebra, g: &Generator) -> Part {
        match *g {
            Generator::Real { root, .. } => self.classify_real(&alg.roots[root]),
            _ => self.classify(g),
        }
    }

    fn classify(&self, g: &Generator) -> Part {
        match *g {
            Generator::Imag { k, j } => {
                let levi = !self.frame.perp[j]
                    || match &self.imaginary {
                        ImaginarySpec::Full => true,
                        ImaginarySpec::LeviOnly => false,
                        ImaginarySpec::Oscillators { include } => include.contains(&(k.abs(), j)),
                    };
                if levi {
                    Part::Levi
                } else if k > 0 {
                    Part::Nilradical
                } else {
                    Part::Opposite
                }
            }
            Generator::Real { .. } => unreachable!("real generators need the algebra"),
            _ => Part::Cartan,
        }
    }

    pub fn levi_rank(&self) -> usize {
        self.omega.len()
    }
}

/// Per-level bases of `l̂⁰ ∩ ĝ_{kδ}` (= `G(l̂)` part) and `G(l̂)^⊥ ∩ ĝ_{kδ}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeviLevel {
    pub level: i64,
    pub levi: Vec<Generator>,
    pub perp: Vec<Generator>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeviReport {
    pub levels: Vec<LeviLevel>,
    /// `ĝ_{kδ} = (G(l̂) ∩ ĝ_{kδ}) ⊕ (G(l̂)^⊥ ∩ ĝ_{kδ})` at every level.
    pub direct_sum: bool,
    /// `[G(l̂)^⊥, l̂⁰] = 0` on all boxed generators.
    pub commutes: bool,
    /// `l̂⁰ ∩ G(l̂)^⊥ = Cc`.
    pub intersection_central: bool,
}

pub fn levi_orthogonal(alg: &AffineAlgebra, p: &ParabolicSubalgebra) -> LeviReport {
    let f = &p.frame;
    let n = alg.rank();
    let mut levels = Vec::new();
    let mut direct_sum = true;
    let mut intersection_central = true;
    for k in -p.box_level..=p.box_level {
        if k == 0 {
            continue;
        }
        let levi: Vec<Generator> = (0..n).filter(|&j| !f.perp[j]).map(|j| Generator::Imag { k, j }).collect();
        let perp: Vec<Generator> = (0..n).filter(|&j| f.perp[j]).map(|j| Generator::Imag { k, j }).collect();
        let coords = |gs: &[Generator]| -> Vec<Vec<crate::rational::Q>> {
            gs.iter()
                .map(|g| {
                    let e = f.to_element(g);
                    (0..n).map(|i| e.coeff(&crate::algebra::Mode::Cartan { n: k, i })).collect()
                })
                .collect()
        };
        let a = coords(&levi);
        let b = coords(&perp);
        let all: Vec<_> = a.iter().chain(&b).cloned().collect();
        let (ra, rb, rall) = (rank(&a, n), rank(&b, n), rank(&all, n));
        direct_sum &= rall == n;
        intersection_central &= ra + rb == rall;
        levels.push(LeviLevel { level: k, levi, perp });
    }
    // l̂⁰: real root vectors of Δ^ω and G(l̂) oscillators, together with H.
    let mut l0: Vec<Generator> = (0..n).map(Generator::Cartan0).collect();
    for g in f.generators_in_box(alg, p.box_level) {
        match g {
            Generator::Real { root, .. } if in_span(&alg.roots[root], &p.omega) => l0.push(g),
            Generator::Imag { j, .. } if !f.perp[j] => l0.push(g),
            _ => {}
        }
    }
    let perp_gens: Vec<Generator> = levels.iter().flat_map(|l| l.perp.iter().copied()).collect();
    let commutes = perp_gens.iter().all(|x| l0.iter().all(|y| f.bracket(alg, x, y).is_zero()));
    LeviReport { levels, direct_sum, commutes, intersection_central }
}

/// `ht_ω(γ)` for `γ = -Σ_{j∈ω} k_j α_j`, `k_j >= 0`.
pub fn omega_height(omega: &[usize], gamma: &[i64]) -> Result<i64> {
    let mut h = 0;
    for (i, &x) in gamma.iter().enumerate() {
        if x > 0 || (x != 0 && !omega.contains(&i)) {
            return Err(Error::Precondition(format!("{gamma:?} is not in the negative cone spanned by ω")));
        }
        h -= x;
    }
    Ok(h)
}

/// Height of `-μ` over the simple roots `I ∖ ω` (finite directions only).
pub fn u_height(omega: &[usize], finite: &[i64]) -> i64 {
    finite.iter().enumerate().filter(|(i, _)| !omega.contains(i)).map(|(_, &x)| -x).sum()
}

/// Height of `-μ` over the affine simple roots `α₀, …, α_n`, using
/// `δ = α₀ + θ`.
pub fn affine_height(alg: &AffineAlgebra, mu: &Root) -> i64 {
    let theta: i64 = alg.highest_root.iter().sum();
    -(mu.level + AffineAlgebra::height(&mu.finite) + mu.level * theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> AffineAlgebra {
        AffineAlgebra::new(s.parse().unwrap())
    }

    #[test]
    fn standard_membership() {
        let g = alg("A1");
        let p = standard_partition(&g, 2);
        assert_eq!(p.contains(&Root::new(vec![1], 0)), Some(true));
        assert_eq!(p.contains(&Root::new(vec![1], -1)), Some(false));
        assert_eq!(p.contains(&Root::new(vec![0], 1)), Some(true));
        assert_eq!(validate_quase_partition(&g, &p).verdict, Verdict::Valid);
    }

    #[test]
    fn natural_membership() {
        let g = alg("A1");
        let p = natural_partition(&g, 5);
        assert_eq!(p.contains(&Root::new(vec![1], -5)), Some(true));
        assert_eq!(p.contains(&Root::new(vec![0], 3)), Some(true));
        assert_eq!(p.contains(&Root::new(vec![0], -2)), Some(false));
        assert_eq!(p.contains(&Root::new(vec![-1], 1)), Some(false));
        assert_eq!(validate_quase_partition(&g, &p).verdict, Verdict::Valid);
    }

    #[test]
    fn phi_membership() {
        let g = alg("A1");
        let p = phi_partition(&g, &[Sign::Minus, Sign::Plus], 2).unwrap();
        assert_eq!(p.contains(&Root::new(vec![0], -1)), Some(true));
        assert_eq!(p.contains(&Root::new(vec![0], 1)), Some(false));
        let all_plus = phi_partition(&g, &[Sign::Plus; 2], 2).unwrap();
        assert_eq!(all_plus.roots, natural_partition(&g, 2).roots);
        assert!(phi_partition(&g, &[Sign::Plus], 2).is_err());
    }

    #[test]
    fn violators() {
        let g = alg("A1");
        let std = standard_partition(&g, 2);
        let both = std.modified(&[], &[Root::new(vec![-1], 0)]);
        let r = validate_quase_partition(&g, &both);
        assert_eq!((r.verdict, r.violated), (Verdict::Invalid, Some(Condition::Disjoint)));
        let delta = Root::new(vec![0], 1);
        let bad = std.modified(&[delta.clone()], &[delta.neg()]);
        let r = validate_quase_partition(&g, &bad);
        assert_eq!(r.verdict, Verdict::Invalid);
        assert_eq!(r.violated, Some(Condition::Closure));
        assert_eq!(r.witness[0], delta);
        assert!(r.witness.contains(&Root::new(vec![-1], 0)));
    }

    #[test]
    fn extensional_without_rule_is_inconclusive() {
        let g = alg("A1");
        let p = standard_partition(&g, 1);
        let ext = QuasePartition::extensional(1, p.roots.clone(), None);
        assert_eq!(validate_quase_partition(&g, &ext).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn parabolic_root_sets() {
        let g = alg("A2");
        let p = natural_parabolic(&g, &[0], ImaginarySpec::Full, 1).unwrap();
        let u0: Vec<_> = p.nil_roots.iter().filter(|r| r.level == 0).map(|r| r.finite.clone()).collect();
        assert_eq!(u0, vec![vec![0, 1], vec![1, 1]]);
        let neg: BTreeSet<Root> = p.nil_roots.iter().map(|r| r.neg()).collect();
        assert_eq!(neg, p.opposite_roots.iter().cloned().collect());
        let full = natural_parabolic(&g, &[0, 1], ImaginarySpec::LeviOnly, 1).unwrap();
        assert_eq!(full.levi_roots.len(), g.roots_in_box(1).len());
        let loop_ = natural_parabolic(&g, &[], ImaginarySpec::Full, 1).unwrap();
        assert!(loop_.levi_roots.iter().all(|r| r.is_finite_zero()));
        assert_eq!(loop_.levi_roots.len(), 2);
    }

    #[test]
    fn levi_orthogonal_dims() {
        let g = alg("A2");
        let p = natural_parabolic(&g, &[0], ImaginarySpec::LeviOnly, 2).unwrap();
        let r = levi_orthogonal(&g, &p);
        assert!(r.direct_sum && r.commutes && r.intersection_central);
        assert!(r.levels.iter().all(|l| l.perp.len() == 1 && l.levi.len() == 1));
        let empty = levi_orthogonal(&g, &natural_parabolic(&g, &[], ImaginarySpec::Full, 2).unwrap());
        assert!(empty.levels.iter().all(|l| l.levi.is_empty() && l.perp.len() == 2));
        let all = levi_orthogonal(&g, &natural_parabolic(&g, &[0, 1], ImaginarySpec::Full, 2).unwrap());
        assert!(all.levels.iter().all(|l| l.perp.is_empty()) && all.commutes);
    }

    #[test]
    fn heights() {
        assert_eq!(omega_height(&[0, 1], &[-1, -2]).unwrap(), 3);
        assert_eq!(omega_height(&[0], &[0, 0]).unwrap(), 0);
        assert_eq!(omega_height(&[0], &[-1, 0]).unwrap(), 1);
        assert!(omega_height(&[0], &[0, -1]).is_err());
        assert!(omega_height(&[0], &[1, 0]).is_err());
        let g = alg("A1");
        assert_eq!(affine_height(&g, &Root::new(vec![0], -1)), 2);
        assert_eq!(u_height(&[], &[-2]), 2);
    }
}
