//! Truncated weight modules: basis keys, weights, the [`WeightModule`]
//! trait, and the small building blocks (one-dimensional, Fock, tensor).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{AffineAlgebra, Frame, GenElement, Generator, Root};
use crate::error::{Error, Result};
use crate::partitions::Sign;
use crate::rational::{q, Rational, Q};
use crate::sparse::SparseVec;

/// Algebra together with the oscillator frame all modules act through.
#[derive(Clone, Debug)]
pub struct Setting {
    pub alg: AffineAlgebra,
    pub frame: Frame,
}

impl Setting {
    pub fn new(alg: AffineAlgebra, frame: Frame) -> Arc<Self> {
        Arc::new(Setting { alg, frame })
    }

    pub fn bracket(&self, x: &Generator, y: &Generator) -> GenElement {
        self.frame.bracket(&self.alg, x, y)
    }

    /// Weight of a generator; zero for `H`.
    pub fn gen_weight(&self, g: &Generator) -> Weight {
        self.frame.root(&self.alg, g).unwrap_or_else(|| Root::new(vec![0; self.alg.rank()], 0))
    }

    pub fn label(&self, g: &Generator) -> String {
        self.frame.label(&self.alg, g)
    }
}

/// Weight offset relative to a module's reference weight.
pub type Weight = Root;

/// Sorted list of `(generator, exponent)` with exponents `>= 1`.
pub type Monomial = Vec<(Generator, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisKey {
    Unit,
    Fock(Monomial),
    Pair(Box<BasisKey>, Box<BasisKey>),
    Pbw(Monomial, Box<BasisKey>),
    /// `f^{-m} w` in a localized module.
    Localized(u32, Box<BasisKey>),
}

pub type Vector = SparseVec<BasisKey>;

/// Reference weight: values on `h_1..h_n`, on `d`, and the central charge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestWeight {
    pub h: Vec<Rational>,
    pub d: Rational,
    pub c: Rational,
}

impl HighestWeight {
    pub fn new(h: Vec<Q>, d: Q, c: Q) -> Self {
        HighestWeight { h: h.into_iter().map(Rational).collect(), d: Rational(d), c: Rational(c) }
    }

    pub fn zero(rank: usize) -> Self {
        HighestWeight::new(vec![Q::zero(); rank], Q::zero(), Q::zero())
    }

    pub fn charge(&self) -> &Q {
        &self.c.0
    }

    fn add_hd(&self, other: &HighestWeight, c: Q) -> HighestWeight {
        HighestWeight::new(
            self.h.iter().zip(&other.h).map(|(a, b)| &a.0 + &b.0).collect(),
            &self.d.0 + &other.d.0,
            c,
        )
    }
}

/// Truncation box: total `|level|` of the factors (δ-depth) and total
/// `|finite height|` of the factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Truncation {
    pub depth: u32,
    pub height: u32,
}

impl Truncation {
    pub fn new(depth: u32, height: u32) -> Self {
        Truncation { depth, height }
    }

    pub fn admits(&self, m: (u32, u32)) -> bool {
        m.0 <= self.depth && m.1 <= self.height
    }
}

pub fn gen_measure(alg: &AffineAlgebra, g: &Generator) -> (u32, u32) {
    match *g {
        Generator::Real { n, root } => (n.unsigned_abs() as u32, AffineAlgebra::height(&alg.roots[root]).unsigned_abs() as u32),
        Generator::Imag { k, .. } => (k.unsigned_abs() as u32, 0),
        _ => (0, 0),
    }
}

pub fn monomial_measure(alg: &AffineAlgebra, m: &Monomial) -> (u32, u32) {
    m.iter().fold((0, 0), |(d, h), (g, e)| {
        let (gd, gh) = gen_measure(alg, g);
        (d + gd * e, h + gh * e)
    })
}

/// All monomials in `gens` (each with nonzero measure) inside the budget,
/// in sorted order.
pub fn enumerate_monomials(alg: &AffineAlgebra, gens: &[Generator], budget: Truncation) -> Vec<Monomial> {
    let mut gens: Vec<(Generator, (u32, u32))> = gens.iter().map(|g| (*g, gen_measure(alg, g))).collect();
    gens.retain(|(_, m)| *m != (0, 0) && budget.admits(*m));
    gens.sort();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(i: usize, gens: &[(Generator, (u32, u32))], left: (u32, u32), cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == gens.len() {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, gens, left, cur, out);
        let (g, (d, h)) = gens[i];
        let mut e = 1;
        while d * e <= left.0 && h * e <= left.1 {
            cur.push((g, e));
            rec(i + 1, gens, (left.0 - d * e, left.1 - h * e), cur, out);
            cur.pop();
            e += 1;
        }
    }
    rec(0, &gens, (budget.depth, budget.height), &mut cur, &mut out);
    out.sort();
    out
}

pub fn monomial_weight(setting: &Setting, m: &Monomial) -> Weight {
    let mut w = Root::new(vec![0; setting.alg.rank()], 0);
    for (g, e) in m {
        let r = setting.gen_weight(g);
        for (a, b) in w.finite.iter_mut().zip(&r.finite) {
            *a += b * i64::from(*e);
        }
        w.level += r.level * i64::from(*e);
    }
    w
}

/// Multiplies a monomial by `g^e`, keeping it sorted.
pub fn monomial_times(m: &Monomial, g: Generator, e: i64) -> Option<Monomial> {
    let mut out = m.clone();
    match out.binary_search_by(|(x, _)| x.cmp(&g)) {
        Ok(i) => {
            let v = i64::from(out[i].1) + e;
            if v < 0 {
                return None;
            }
            if v == 0 {
                out.remove(i);
            } else {
                out[i].1 = v as u32;
            }
        }
        Err(i) => {
            if e < 0 {
                return None;
            }
            if e > 0 {
                out.insert(i, (g, e as u32));
            }
        }
    }
    Some(out)
}

pub fn exponent(m: &Monomial, g: &Generator) -> u32 {
    m.iter().find(|(x, _)| x == g).map_or(0, |(_, e)| *e)
}

/// A truncation of a weight module over `ĝ` (or one of its subalgebras;
/// generators outside that subalgebra act by zero).
pub trait WeightModule: Send + Sync {
    fn setting(&self) -> &Arc<Setting>;
    fn highest(&self) -> &HighestWeight;
    fn weight(&self, key: &BasisKey) -> Weight;
    /// Non-diagonal action; callers use [`act`] which also handles `H`, `c`, `d`.
    fn act_raw(&self, g: &Generator, key: &BasisKey) -> Vector;
    fn measure(&self, key: &BasisKey) -> (u32, u32);
    fn basis(&self, t: Truncation) -> Vec<BasisKey>;
    fn generator(&self) -> Option<BasisKey>;

    fn charge(&self) -> &Q {
        self.highest().charge()
    }

    /// Raising generators of the module's own triangular decomposition with
    /// `|level| <= bound`; a highest-weight vector is killed by all of them.
    fn raising(&self, bound: i64) -> Vec<Generator> {
        let _ = bound;
        vec![]
    }

    /// Eigenvalue of `h_i`, `c` or `d` on a basis key.
    fn diagonal(&self, g: &Generator, key: &BasisKey) -> Option<Q> {
        let hw = self.highest();
        match *g {
            Generator::Central => Some(hw.c.0.clone()),
            Generator::Derivation => Some(&hw.d.0 + q(self.weight(key).level)),
            Generator::Cartan0(i) => {
                let w = self.weight(key);
                let alg = &self.setting().alg;
                let shift: i64 = (0..alg.rank()).map(|j| w.finite[j] * alg.cartan[j][i]).sum();
                Some(&hw.h[i].0 + q(shift))
            }
            _ => None,
        }
    }
}

pub fn act<M: WeightModule + ?Sized>(m: &M, g: &Generator, key: &BasisKey) -> Vector {
    match m.diagonal(g, key) {
        Some(c) => Vector::term(key.clone(), c),
        None => m.act_raw(g, key),
    }
}

pub fn act_vec<M: WeightModule + ?Sized>(m: &M, g: &Generator, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (k, c) in v.iter() {
        out.add_scaled(&act(m, g, k), c);
    }
    out
}

pub fn act_element<M: WeightModule + ?Sized>(m: &M, x: &GenElement, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (g, c) in x.iter() {
        out.add_scaled(&act_vec(m, g, v), c);
    }
    out
}

/// Applies a word of generators, rightmost first.
pub fn act_word<M: WeightModule + ?Sized>(m: &M, word: &[Generator], v: &Vector) -> Vector {
    word.iter().rev().fold(v.clone(), |acc, g| act_vec(m, g, &acc))
}

/// Dimension of every weight space inside the truncation.
pub fn character<M: WeightModule + ?Sized>(m: &M, t: Truncation) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for k in m.basis(t) {
        *out.entry(m.weight(&k)).or_insert(0) += 1;
    }
    out
}

/// One-dimensional module `C_λ`: `H`, `c`, `d` by scalars, all else by zero.
pub struct CharacterModule {
    setting: Arc<Setting>,
    highest: HighestWeight,
}

impl CharacterModule {
    pub fn new(setting: Arc<Setting>, highest: HighestWeight) -> Self {
        CharacterModule { setting, highest }
    }
}

impl WeightModule for CharacterModule {
    fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }
    fn highest(&self) -> &HighestWeight {
        &self.highest
    }
    fn weight(&self, _: &BasisKey) -> Weight {
        Root::new(vec![0; self.setting.alg.rank()], 0)
    }
    fn act_raw(&self, _: &Generator, _: &BasisKey) -> Vector {
        Vector::new()
    }
    fn measure(&self, _: &BasisKey) -> (u32, u32) {
        (0, 0)
    }
    fn basis(&self, _: Truncation) -> Vec<BasisKey> {
        vec![BasisKey::Unit]
    }
    fn generator(&self) -> Option<BasisKey> {
        Some(BasisKey::Unit)
    }
}

/// The zero module.
pub struct ZeroModule {
    setting: Arc<Setting>,
    highest: HighestWeight,
}

impl ZeroModule {
    pub fn new(setting: Arc<Setting>, highest: HighestWeight) -> Self {
        ZeroModule { setting, highest }
    }
}

impl WeightModule for ZeroModule {
    fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }
    fn highest(&self) -> &HighestWeight {
        &self.highest
    }
    fn weight(&self, _: &BasisKey) -> Weight {
        Root::new(vec![0; self.setting.alg.rank()], 0)
    }
    fn act_raw(&self, _: &Generator, _: &BasisKey) -> Vector {
        Vector::new()
    }
    fn measure(&self, _: &BasisKey) -> (u32, u32) {
        (0, 0)
    }
    fn basis(&self, _: Truncation) -> Vec<BasisKey> {
        vec![]
    }
    fn generator(&self) -> Option<BasisKey> {
        None
    }
}

/// Splitting of the Heisenberg oscillators into annihilators and creators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TriangularSpec {
    Standard,
    /// `phi[k-1] = +` puts `x_k^i` (all `i`) into `G₊`.
    Phi { phi: Vec<Sign> },
    /// Individual signs for `x_k^j`, `k > 0`; unlisted oscillators are `+`.
    PerOscillator { psi: Vec<((i64, usize), Sign)> },
    /// Every `x_k`, `k > 0`, creates (lowest-weight Fock module).
    Lowest,
}

impl TriangularSpec {
    /// Sign of `x_k^j` for `k > 0`: `+` means `x_k^j ∈ G₊` kills the vacuum.
    pub fn sign(&self, k: i64, j: usize) -> Sign {
        match self {
            TriangularSpec::Standard => Sign::Plus,
            TriangularSpec::Lowest => Sign::Minus,
            TriangularSpec::Phi { phi } => phi.get((k - 1) as usize).copied().unwrap_or(Sign::Plus),
            TriangularSpec::PerOscillator { psi } => {
                psi.iter().find(|(key, _)| *key == (k, j)).map_or(Sign::Plus, |(_, s)| *s)
            }
        }
    }
}

/// Fock module over the oscillators `x_k^j`, `j ∈ oscillators`: polynomials
/// in the creators, annihilators acting as scaled derivatives.
pub struct FockModule {
    setting: Arc<Setting>,
    pub oscillators: Vec<usize>,
    pub spec: TriangularSpec,
    highest: HighestWeight,
}

impl FockModule {
    pub fn new(setting: Arc<Setting>, oscillators: Vec<usize>, spec: TriangularSpec, highest: HighestWeight) -> Self {
        FockModule { setting, oscillators, spec, highest }
    }

    /// Fock module over all oscillators of `G`.
    pub fn full(setting: Arc<Setting>, spec: TriangularSpec, highest: HighestWeight) -> Self {
        let n = setting.frame.rank();
        FockModule::new(setting, (0..n).collect(), spec, highest)
    }

    /// Fock module over the oscillators spanning `G(l̂)^⊥`.
    pub fn perp(setting: Arc<Setting>, spec: TriangularSpec, highest: HighestWeight) -> Self {
        let osc = (0..setting.frame.rank()).filter(|&j| setting.frame.perp[j]).collect();
        FockModule::new(setting, osc, spec, highest)
    }

    pub fn creator(&self, k: i64, j: usize) -> Generator {
        match self.spec.sign(k, j) {
            Sign::Plus => Generator::Imag { k: -k, j },
            Sign::Minus => Generator::Imag { k, j },
        }
    }

    pub fn vacuum(&self) -> BasisKey {
        BasisKey::Fock(vec![])
    }
}

impl WeightModule for FockModule {
    fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }
    fn highest(&self) -> &HighestWeight {
        &self.highest
    }
    fn weight(&self, key: &BasisKey) -> Weight {
        match key {
            BasisKey::Fock(m) => monomial_weight(&self.setting, m),
            _ => unreachable!("foreign key {key:?}"),
        }
    }
    fn act_raw(&self, g: &Generator, key: &BasisKey) -> Vector {
        let (Generator::Imag { k, j }, BasisKey::Fock(m)) = (g, key) else { return Vector::new() };
        if !self.oscillators.contains(j) {
            return Vector::new();
        }
        let kk = k.abs();
        let cr = self.creator(kk, *j);
        if cr == *g {
            return Vector::unit(BasisKey::Fock(monomial_times(m, cr, 1).expect("positive exponent")));
        }
        let e = exponent(m, &cr);
        if e == 0 {
            return Vector::new();
        }
        // x_k = k a ∂ for a G₊ annihilator, x_{-k} = -k a ∂ for a G₋ one.
        let sign = if *k > 0 { 1 } else { -1 };
        let c = q(sign * kk * i64::from(e)) * self.charge();
        Vector::term(BasisKey::Fock(monomial_times(m, cr, -1).expect("present")), c)
    }
    fn measure(&self, key: &BasisKey) -> (u32, u32) {
        match key {
            BasisKey::Fock(m) => monomial_measure(&self.setting.alg, m),
            _ => unreachable!(),
        }
    }
    fn basis(&self, t: Truncation) -> Vec<BasisKey> {
        let d = i64::from(t.depth);
        let gens: Vec<Generator> =
            (1..=d).flat_map(|k| self.oscillators.iter().map(move |&j| (k, j))).map(|(k, j)| self.creator(k, j)).collect();
        enumerate_monomials(&self.setting.alg, &gens, t).into_iter().map(BasisKey::Fock).collect()
    }
    fn generator(&self) -> Option<BasisKey> {
        Some(self.vacuum())
    }
    fn raising(&self, bound: i64) -> Vec<Generator> {
        let mut out = Vec::new();
        for k in 1..=bound {
            for &j in &self.oscillators {
                let cr = self.creator(k, j);
                out.push(Generator::Imag { k: -cr.level(), j });
            }
        }
        out
    }
}

fn add_weights(a: &Weight, b: &Weight) -> Weight {
    a.add(b)
}

fn pair(a: &BasisKey, b: &BasisKey) -> BasisKey {
    BasisKey::Pair(Box::new(a.clone()), Box::new(b.clone()))
}

fn tensor_basis(l: &dyn WeightModule, r: &dyn WeightModule, t: Truncation) -> Vec<BasisKey> {
    let rb: Vec<(BasisKey, (u32, u32))> = r.basis(t).into_iter().map(|k| { let m = r.measure(&k); (k, m) }).collect();
    let mut out = Vec::new();
    for a in l.basis(t) {
        let ma = l.measure(&a);
        for (b, mb) in &rb {
            if t.admits((ma.0 + mb.0, ma.1 + mb.1)) {
                out.push(pair(&a, b));
            }
        }
    }
    out.sort();
    out
}

/// Tensor module `M ⊗ S`: `l̂⁰` acts on `M`, `G(l̂)^⊥` on `S`, both at the
/// same central charge.
pub struct TensorModule {
    setting: Arc<Setting>,
    pub left: Arc<dyn WeightModule>,
    pub right: Arc<dyn WeightModule>,
    highest: HighestWeight,
}

impl TensorModule {
    pub fn new(left: Arc<dyn WeightModule>, right: Arc<dyn WeightModule>) -> Result<Self> {
        if left.charge() != right.charge() {
            return Err(Error::ChargeMismatch(left.highest().c.to_string(), right.highest().c.to_string()));
        }
        let highest = left.highest().add_hd(right.highest(), left.charge().clone());
        Ok(TensorModule { setting: left.setting().clone(), left, right, highest })
    }
}

impl WeightModule for TensorModule {
    fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }
    fn highest(&self) -> &HighestWeight {
        &self.highest
    }
    fn weight(&self, key: &BasisKey) -> Weight {
        let BasisKey::Pair(a, b) = key else { unreachable!() };
        add_weights(&self.left.weight(a), &self.right.weight(b))
    }
    fn act_raw(&self, g: &Generator, key: &BasisKey) -> Vector {
        let BasisKey::Pair(a, b) = key else { unreachable!() };
        let on_right = matches!(*g, Generator::Imag { j, .. } if self.setting.frame.perp[j]);
        if on_right {
            act(&*self.right, g, b).map_linear(|k| Vector::unit(pair(a, k)))
        } else {
            act(&*self.left, g, a).map_linear(|k| Vector::unit(pair(k, b)))
        }
    }
    fn measure(&self, key: &BasisKey) -> (u32, u32) {
        let BasisKey::Pair(a, b) = key else { unreachable!() };
        let (x, y) = (self.left.measure(a), self.right.measure(b));
        (x.0 + y.0, x.1 + y.1)
    }
    fn basis(&self, t: Truncation) -> Vec<BasisKey> {
        tensor_basis(&*self.left, &*self.right, t)
    }
    fn generator(&self) -> Option<BasisKey> {
        Some(pair(&self.left.generator()?, &self.right.generator()?))
    }
    fn raising(&self, bound: i64) -> Vec<Generator> {
        let mut out = self.left.raising(bound);
        out.extend(self.right.raising(bound));
        out.sort();
        out.dedup();
        out
    }
}

/// Tensor product with the coproduct action `g ⊗ 1 + 1 ⊗ g`; central
/// charges add.
pub struct DiagonalTensor {
    setting: Arc<Setting>,
    pub left: Arc<dyn WeightModule>,
    pub right: Arc<dyn WeightModule>,
    highest: HighestWeight,
}

impl DiagonalTensor {
    pub fn new(left: Arc<dyn WeightModule>, right: Arc<dyn WeightModule>) -> Self {
        let c = left.charge() + right.charge();
        let highest = left.highest().add_hd(right.highest(), c);
        DiagonalTensor { setting: left.setting().clone(), left, right, highest }
    }
}

impl WeightModule for DiagonalTensor {
    fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }
    fn highest(&self) -> &HighestWeight {
        &self.highest
    }
    fn weight(&self, key: &BasisKey) -> Weight {
        let BasisKey::Pair(a, b) = key else { unreachable!() };
        add_weights(&self.left.weight(a), &self.right.weight(b))
    }
    fn act_raw(&self, g: &Generator, key: &BasisKey) -> Vector {
        let BasisKey::Pair(a, b) = key else { unreachable!() };
        let mut out = act(&*self.left, g, a).map_linear(|k| Vector::unit(pair(k, b)));
        out.add_assign(&act(&*self.right, g, b).map_linear(|k| Vector::unit(pair(a, k))));
        out
    }
    fn measure(&self, key: &BasisKey) -> (u32, u32) {
        let BasisKey::Pair(a, b) = key else { unreachable!() };
        let (x, y) = (self.left.measure(a), self.right.measure(b));
        (x.0 + y.0, x.1 + y.1)
    }
    fn basis(&self, t: Truncation) -> Vec<BasisKey> {
        tensor_basis(&*self.left, &*self.right, t)
    }
    fn generator(&self) -> Option<BasisKey> {
        Some(pair(&self.left.generator()?, &self.right.generator()?))
    }
    fn raising(&self, bound: i64) -> Vec<Generator> {
        let mut out = self.left.raising(bound);
        out.extend(self.right.raising(bound));
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn a1() -> Arc<Setting> {
        let alg = AffineAlgebra::new("A1".parse().unwrap());
        let frame = Frame::standard(&alg);
        Setting::new(alg, frame)
    }

    fn hw(c: i64) -> HighestWeight {
        HighestWeight::new(vec![qf(1, 3)], q(0), q(c))
    }

    #[test]
    fn fock_dimensions_are_partition_numbers() {
        let f = FockModule::full(a1(), TriangularSpec::Standard, hw(1));
        let ch = character(&f, Truncation::new(6, 0));
        let dims: Vec<usize> = (0..=6).map(|d| ch[&Root::new(vec![0], -d)]).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn fock_vacuum_relations() {
        let f = FockModule::full(a1(), TriangularSpec::Standard, hw(3));
        let vac = Vector::unit(f.vacuum());
        let x1 = Generator::Imag { k: 1, j: 0 };
        let xm1 = Generator::Imag { k: -1, j: 0 };
        assert!(act_vec(&f, &x1, &vac).is_zero());
        assert_eq!(act_word(&f, &[x1, xm1], &vac), vac.scaled(&q(3)));
    }

    #[test]
    fn lowest_fock_relations() {
        let f = FockModule::full(a1(), TriangularSpec::Lowest, hw(2));
        for key in f.basis(Truncation::new(3, 0)) {
            let v = Vector::unit(key);
            for k in 1..=3 {
                let x = Generator::Imag { k, j: 0 };
                let y = Generator::Imag { k: -k, j: 0 };
                let lhs = act_word(&f, &[x, y], &v).sub(&act_word(&f, &[y, x], &v));
                assert_eq!(lhs, v.scaled(&q(2 * k)));
            }
        }
    }

    #[test]
    fn tensor_charge_mismatch() {
        let s = a1();
        let l: Arc<dyn WeightModule> = Arc::new(FockModule::full(s.clone(), TriangularSpec::Standard, hw(1)));
        let r: Arc<dyn WeightModule> = Arc::new(FockModule::full(s, TriangularSpec::Lowest, hw(2)));
        assert!(matches!(TensorModule::new(l, r), Err(Error::ChargeMismatch(..))));
    }

    #[test]
    fn tensor_weight_adds() {
        let s = a1();
        let l: Arc<dyn WeightModule> = Arc::new(CharacterModule::new(s.clone(), hw(1)));
        let r: Arc<dyn WeightModule> = Arc::new(FockModule::full(s, TriangularSpec::Standard, hw(1)));
        let t = TensorModule::new(l, r).unwrap();
        let g = t.generator().unwrap();
        assert_eq!(t.diagonal(&Generator::Cartan0(0), &g), Some(qf(2, 3)));
        assert_eq!(t.diagonal(&Generator::Central, &g), Some(q(1)));
    }
}

/// Compact rendering of a basis key, e.g. `e[-1]_0·x1[-1]⊗v`.
pub fn key_label(setting: &Setting, key: &BasisKey) -> String {
    let mono = |m: &Monomial| -> String {
        m.iter()
            .map(|(g, e)| if *e == 1 { setting.label(g) } else { format!("{}^{}", setting.label(g), e) })
            .collect::<Vec<_>>()
            .join("·")
    };
    match key {
        BasisKey::Unit => "v".into(),
        BasisKey::Fock(m) if m.is_empty() => "|0>".into(),
        BasisKey::Fock(m) => format!("{}|0>", mono(m)),
        BasisKey::Pair(a, b) => format!("({})⊗({})", key_label(setting, a), key_label(setting, b)),
        BasisKey::Pbw(m, v) if m.is_empty() => key_label(setting, v),
        BasisKey::Pbw(m, v) => format!("{}⊗{}", mono(m), key_label(setting, v)),
        BasisKey::Localized(n, w) => format!("f^-{}·{}", n, key_label(setting, w)),
    }
}
