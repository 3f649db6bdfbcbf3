//! Twisting functors for real roots of a Levi factor and the localization
//! series identifying `T_α(Ind V)` with `Ind(T_α V)`.
//!
//! `f` is the root vector of `-α` (`α` positive, level `n >= 0`), and
//! `T_α(M) = M_f / M`. A vector of `T_α(Ind V)` is stored as a sum of
//! `f^{-n} · m` with `m` a basis key of `Ind V` ([`LocalizedVector`]); this
//! representation is not unique, so comparisons go through `η`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{GenElement, Generator};
use crate::error::{Error, Result};
use crate::induced::InducedModule;
use crate::linalg::rank;
use crate::module::{
    act, act_element, act_vec, key_label, BasisKey, HighestWeight, Setting, Truncation, Vector, Weight, WeightModule,
};
use crate::rational::{binomial, format_q, q, Q};
use crate::sparse::SparseVec;

/// `Σ c · f^{-n} · m`.
pub type LocalizedVector = SparseVec<(u32, BasisKey)>;

/// Upper bound on nonzero `ad(f)^k` applications to one generator.
const STRING_BOUND: usize = 4;

/// `f = e_{-α} ⊗ t^{-n}` for the positive real root `α + nδ` of the Levi
/// factor given by `root` (a positive finite root) and `n >= 0`.
pub fn twisting_generator(setting: &Setting, omega: &[usize], root: usize, n: i64) -> Result<Generator> {
    let alg = &setting.alg;
    let r = alg.roots.get(root).ok_or_else(|| Error::Precondition(format!("no root with index {root}")))?;
    if !alg.positive[root] || n < 0 {
        return Err(Error::Precondition("only positive real roots are supported".into()));
    }
    if r.iter().enumerate().any(|(i, &x)| x != 0 && !omega.contains(&i)) {
        return Err(Error::Precondition("root is not a root of the Levi factor".into()));
    }
    Ok(Generator::Real { n: -n, root: alg.neg_root(root) })
}

/// `ad(f)^k(g)` for `k = 0, 1, ...` until it vanishes.
pub fn ad_powers(setting: &Setting, f: &Generator, g: &GenElement) -> Vec<GenElement> {
    let fe = GenElement::unit(*f);
    let mut out = vec![g.clone()];
    loop {
        let next = setting.frame.bracket_elements(&setting.alg, &fe, out.last().expect("nonempty"));
        if next.is_zero() {
            return out;
        }
        assert!(out.len() <= STRING_BOUND, "ad(f) is not nilpotent on {g:?}");
        out.push(next);
    }
}

/// `T_α(M) = M_f / M` for a module `M` on which `f` is the leftmost free
/// PBW factor. Keys are `Localized(n, w)` with `n >= 1` and `w` free of `f`.
pub struct LocalizedModule {
    pub base: Arc<InducedModule>,
    pub f: Generator,
    pub n_max: u32,
}

impl LocalizedModule {
    pub fn new(base: Arc<InducedModule>, f: Generator, n_max: u32) -> Result<Self> {
        if base.first != Some(f) {
            return Err(Error::Precondition("base must put f first in PBW order".into()));
        }
        Ok(LocalizedModule { base, f, n_max })
    }

    /// `f^{-n} · w` for a base key `w`; `None` when it lies in `M`.
    pub fn shift(&self, n: u32, key: &BasisKey) -> Option<BasisKey> {
        let BasisKey::Pbw(m, v) = key else { unreachable!("foreign key {key:?}") };
        match m.first() {
            Some(&(g, e)) if g == self.f => {
                (e < n).then(|| BasisKey::Localized(n - e, Box::new(BasisKey::Pbw(m[1..].to_vec(), v.clone()))))
            }
            _ => Some(BasisKey::Localized(n, Box::new(key.clone()))),
        }
    }

    fn alpha(&self) -> Weight {
        self.base.setting().gen_weight(&self.f).neg()
    }
}

fn add_scaled_weight(w: &Weight, r: &Weight, n: i64) -> Weight {
    Weight::new(w.finite.iter().zip(&r.finite).map(|(a, b)| a + n * b).collect(), w.level + n * r.level)
}

impl WeightModule for LocalizedModule {
    fn setting(&self) -> &Arc<Setting> {
        self.base.setting()
    }
    fn highest(&self) -> &HighestWeight {
        self.base.highest()
    }
    fn weight(&self, key: &BasisKey) -> Weight {
        let BasisKey::Localized(n, w) = key else { unreachable!("foreign key {key:?}") };
        add_scaled_weight(&self.base.weight(w), &self.alpha(), i64::from(*n))
    }
    fn act_raw(&self, g: &Generator, key: &BasisKey) -> Vector {
        let BasisKey::Localized(n, w) = key else { unreachable!("foreign key {key:?}") };
        // g f^{-n} = Σ_k binom(n+k-1, k) f^{-n-k} ad(f)^k(g)
        let mut out = Vector::new();
        let base = Vector::unit((**w).clone());
        for (k, x) in ad_powers(self.setting(), &self.f, &GenElement::unit(*g)).iter().enumerate() {
            let c = binomial(u64::from(*n) + k as u64 - 1, k as u64);
            for (b, d) in act_element(&*self.base, x, &base).iter() {
                if let Some(l) = self.shift(n + k as u32, b) {
                    out.add_term(l, &c * d);
                }
            }
        }
        out
    }
    fn measure(&self, key: &BasisKey) -> (u32, u32) {
        let BasisKey::Localized(_, w) = key else { unreachable!() };
        self.base.measure(w)
    }
    fn basis(&self, t: Truncation) -> Vec<BasisKey> {
        let free: Vec<BasisKey> = self
            .base
            .basis(t)
            .into_iter()
            .filter(|k| matches!(k, BasisKey::Pbw(m, _) if m.first().map(|x| x.0) != Some(self.f)))
            .collect();
        let mut out: Vec<BasisKey> =
            (1..=self.n_max).flat_map(|n| free.iter().map(move |w| BasisKey::Localized(n, Box::new(w.clone())))).collect();
        out.sort();
        out
    }
    fn generator(&self) -> Option<BasisKey> {
        Some(BasisKey::Localized(1, Box::new(self.base.generator()?)))
    }
}

/// The two sides of the intertwining: `Ind V` (whose localization is the
/// left side) and `Ind(T_α V)`. `V` is either the module localized by
/// `local` or a tensor product with it on the left.
pub struct Intertwiner {
    pub induced: Arc<InducedModule>,
    pub twisted: Arc<InducedModule>,
    pub local: Arc<LocalizedModule>,
}

impl Intertwiner {
    pub fn f(&self) -> Generator {
        self.local.f
    }

    /// `f^{-n} · v` in `T_α V`.
    fn localize(&self, n: u32, v: &BasisKey) -> Option<BasisKey> {
        match v {
            BasisKey::Pair(a, b) => Some(BasisKey::Pair(Box::new(self.local.shift(n, a)?), b.clone())),
            _ => self.local.shift(n, v),
        }
    }

    /// Inverse of [`Self::localize`]: `(n, w)` with `v = f^{-n} · w`.
    fn unlocalize(&self, v: &BasisKey) -> (u32, BasisKey) {
        match v {
            BasisKey::Pair(a, b) => {
                let (n, w) = self.unlocalize(a);
                (n, BasisKey::Pair(Box::new(w), b.clone()))
            }
            BasisKey::Localized(n, w) => (*n, (**w).clone()),
            _ => unreachable!("not a localized key {v:?}"),
        }
    }

    /// `ad(f)(u) ⊗ v` for `key = u ⊗ v` in `Ind V`.
    fn ad_f(&self, key: &BasisKey) -> Vector {
        let BasisKey::Pbw(u, v) = key else { unreachable!() };
        let f = self.f();
        let mut out = act(&*self.induced, &f, key);
        for (w, c) in act(&*self.induced.base, &f, v).iter() {
            out.add_term(BasisKey::Pbw(u.clone(), Box::new(w.clone())), -c.clone());
        }
        out
    }

    /// `ad(f)^k(u) ⊗ v` for `k = 0, 1, ...` until it vanishes.
    fn ad_series(&self, key: &BasisKey) -> Vec<Vector> {
        let BasisKey::Pbw(u, _) = key else { unreachable!() };
        let bound = STRING_BOUND * u.iter().map(|(_, e)| *e as usize).sum::<usize>();
        let mut out = vec![Vector::unit(key.clone())];
        loop {
            let next = out.last().expect("nonempty").map_linear(|k| self.ad_f(k));
            if next.is_zero() {
                return out;
            }
            assert!(out.len() <= bound, "ad(f) series does not terminate on {key:?}");
            out.push(next);
        }
    }

    /// `f^{-n} u ⊗ v ↦ Σ_k (-1)^k binom(n+k-1, k) ad(f)^k(u) ⊗ f^{-n-k} v`.
    pub fn eta_forward(&self, x: &LocalizedVector) -> Vector {
        let mut out = Vector::new();
        for ((n, key), c) in x.iter() {
            for (k, part) in self.ad_series(key).iter().enumerate() {
                let s = q(if k % 2 == 0 { 1 } else { -1 }) * binomial(u64::from(*n) + k as u64 - 1, k as u64) * c;
                for (b, d) in part.iter() {
                    let BasisKey::Pbw(u, v) = b else { unreachable!() };
                    if let Some(l) = self.localize(n + k as u32, v) {
                        out.add_term(BasisKey::Pbw(u.clone(), Box::new(l)), &s * d);
                    }
                }
            }
        }
        out
    }

    /// `u ⊗ f^{-n} v ↦ Σ_k binom(n+k-1, k) f^{-n-k} ad(f)^k(u) ⊗ v`.
    pub fn eta_backward(&self, x: &Vector) -> LocalizedVector {
        let mut out = LocalizedVector::new();
        for (key, c) in x.iter() {
            let BasisKey::Pbw(u, tv) = key else { unreachable!() };
            let (n, v) = self.unlocalize(tv);
            let start = BasisKey::Pbw(u.clone(), Box::new(v));
            for (k, part) in self.ad_series(&start).iter().enumerate() {
                let s = binomial(u64::from(n) + k as u64 - 1, k as u64) * c;
                for (b, d) in part.iter() {
                    out.add_term((n + k as u32, b.clone()), &s * d);
                }
            }
        }
        out
    }

    /// `g · f^{-n} m = Σ_k binom(n+k-1, k) f^{-n-k} (ad(f)^k(g) · m)` in the
    /// localization of `Ind V`.
    pub fn act_left(&self, g: &Generator, x: &LocalizedVector) -> LocalizedVector {
        let powers = ad_powers(self.induced.setting(), &self.f(), &GenElement::unit(*g));
        let mut out = LocalizedVector::new();
        for ((n, key), c) in x.iter() {
            for (k, y) in powers.iter().enumerate() {
                let s = binomial(u64::from(*n) + k as u64 - 1, k as u64) * c;
                for (b, d) in act_element(&*self.induced, y, &Vector::unit(key.clone())).iter() {
                    out.add_term((n + k as u32, b.clone()), &s * d);
                }
            }
        }
        out
    }

    /// Samples `f^{-n} (u ⊗ w)` with `n <= n_max`, `u ⊗ w` in the box and `w`
    /// free of `f`.
    pub fn samples(&self, t: Truncation, n_max: u32) -> Vec<LocalizedVector> {
        let f = self.f();
        let free_of_f = |v: &BasisKey| match v {
            BasisKey::Pair(a, _) => !matches!(&**a, BasisKey::Pbw(m, _) if m.first().map(|x| x.0) == Some(f)),
            BasisKey::Pbw(m, _) => m.first().map(|x| x.0) != Some(f),
            _ => true,
        };
        let keys: Vec<BasisKey> = self
            .induced
            .basis(t)
            .into_iter()
            .filter(|k| matches!(k, BasisKey::Pbw(_, v) if free_of_f(v)))
            .collect();
        (1..=n_max).flat_map(|n| keys.iter().map(move |k| LocalizedVector::unit((n, k.clone())))).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleVerdict {
    pub sample: String,
    pub roundtrip: bool,
    pub equivariant: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntertwineReport {
    pub root: Vec<i64>,
    pub level: i64,
    pub samples: Vec<SampleVerdict>,
    pub generators: usize,
    pub roundtrip: bool,
    pub equivariant: bool,
}

fn label_local(setting: &Setting, x: &LocalizedVector) -> String {
    let parts: Vec<String> =
        x.iter().map(|((n, k), c)| format!("{}*f^-{} {}", format_q(c), n, key_label(setting, k))).collect();
    parts.join(" + ")
}

/// Roundtrip and equivariance of `η` on all samples for every generator with
/// `|level| <= mode_bound`.
pub fn verify_intertwining(tw: &Intertwiner, t: Truncation, n_max: u32, mode_bound: i64) -> IntertwineReport {
    let setting = tw.induced.setting().clone();
    let gens = setting.frame.generators_in_box(&setting.alg, mode_bound);
    let samples = tw.samples(t, n_max);
    let verdicts: Vec<SampleVerdict> = samples
        .par_iter()
        .map(|x| {
            let image = tw.eta_forward(x);
            let roundtrip = tw.eta_backward(&image) == *x;
            let witness = gens.iter().find_map(|g| {
                let lhs = tw.eta_forward(&tw.act_left(g, x));
                let rhs = act_vec(&*tw.twisted, g, &image);
                (lhs != rhs).then(|| setting.label(g))
            });
            SampleVerdict { sample: label_local(&setting, x), roundtrip, equivariant: witness.is_none(), witness }
        })
        .collect();
    let alg = &setting.alg;
    let Generator::Real { n, root } = tw.f() else { unreachable!() };
    IntertwineReport {
        root: alg.roots[alg.neg_root(root)].clone(),
        level: -n,
        generators: gens.len(),
        roundtrip: verdicts.iter().all(|v| v.roundtrip),
        equivariant: verdicts.iter().all(|v| v.equivariant),
        samples: verdicts,
    }
}

/// Character of `T_α(W)` computed from `W`: the `n`-th layer at weight
/// `ν` has dimension `dim (W / fW)_{ν - nα}`. Only weights `μ` for which
/// `complete(μ)` and `complete(μ + α)` hold (the box contains the whole
/// weight space at its depth) contribute. Also reports whether `f` is
/// injective on those spaces.
pub fn localized_character(
    w: &dyn WeightModule,
    f: &Generator,
    t: Truncation,
    n_max: u32,
    complete: impl Fn(&Weight) -> bool,
) -> (std::collections::BTreeMap<Weight, usize>, bool) {
    use std::collections::BTreeMap;
    let setting = w.setting();
    let alpha = setting.gen_weight(f).neg();
    let mut spaces: BTreeMap<Weight, Vec<BasisKey>> = BTreeMap::new();
    for k in w.basis(t) {
        spaces.entry(w.weight(&k)).or_default().push(k);
    }
    let mut injective = true;
    let mut quotient: BTreeMap<Weight, usize> = BTreeMap::new();
    for (mu, keys) in &spaces {
        let above = add_scaled_weight(mu, &alpha, 1);
        if !complete(mu) || !complete(&above) {
            continue;
        }
        let r = match spaces.get(&above) {
            Some(src) => {
                let rows: Vec<Vec<Q>> = src
                    .iter()
                    .map(|k| {
                        let img = act(w, f, k);
                        keys.iter().map(|b| img.coeff(b)).collect()
                    })
                    .collect();
                let r = rank(&rows, keys.len());
                injective &= r == src.len();
                r
            }
            None => 0,
        };
        quotient.insert(mu.clone(), keys.len() - r);
    }
    let mut out = BTreeMap::new();
    for (mu, d) in quotient {
        if d == 0 {
            continue;
        }
        for n in 1..=n_max {
            *out.entry(add_scaled_weight(&mu, &alpha, i64::from(n))).or_insert(0) += d;
        }
    }
    (out, injective)
}

/// `V = M ⊗ S` (Levi Verma module with `f` leftmost, perp Fock module) and
/// `T_α V = T_α(M) ⊗ S` for a natural parabolic.
pub struct TwistSetup {
    pub parabolic: crate::partitions::ParabolicSubalgebra,
    pub f: Generator,
    pub local: Arc<LocalizedModule>,
    pub v: Arc<dyn WeightModule>,
    pub tv: Arc<dyn WeightModule>,
}

impl TwistSetup {
    pub fn new(
        t: crate::algebra::CartanType,
        omega: &[usize],
        lambda: HighestWeight,
        root: &[i64],
        level: i64,
        trunc: Truncation,
        n_max: u32,
    ) -> Result<Self> {
        use crate::instances::{levi_tensor, parabolic_setting};
        use crate::module::TensorModule;
        use crate::partitions::ImaginarySpec;
        let (_, setting) = parabolic_setting(t, omega, ImaginarySpec::Full, i64::from(trunc.depth) + 1)?;
        let idx = setting.alg.root_index(root).ok_or_else(|| Error::Precondition(format!("{root:?} is not a root")))?;
        let mut sorted = omega.to_vec();
        sorted.sort_unstable();
        let f = twisting_generator(&setting, &sorted, idx, level)?;
        let (p, m, s, v) = levi_tensor(t, omega, lambda, Some(f), trunc)?;
        let local = Arc::new(LocalizedModule::new(m, f, n_max)?);
        let tv: Arc<dyn WeightModule> = Arc::new(TensorModule::new(local.clone(), s)?);
        Ok(TwistSetup { parabolic: p, f, local, v, tv })
    }

    pub fn intertwiner(&self, trunc: Truncation) -> Result<Intertwiner> {
        use crate::induced::{induce, Splitting};
        let split = Splitting::Parabolic(self.parabolic.clone());
        let induced = Arc::new(induce(split.clone(), self.v.clone(), None, trunc)?);
        let twisted = Arc::new(induce(split, self.tv.clone(), None, trunc)?);
        Ok(Intertwiner { induced, twisted, local: self.local.clone() })
    }
}
