//! Induced modules `U(ĝ) ⊗_{U(p̂)} V` realized on `U(ū̂) ⊗ V` by PBW
//! straightening, with characters, heights, singular-vector and cyclicity
//! certificates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Generator, Root};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::module::{
    act, act_element, act_vec, key_label, monomial_measure, BasisKey, HighestWeight, Monomial, Setting,
    Truncation, Vector, Weight, WeightModule, enumerate_monomials,
};
use crate::partitions::{affine_height, u_height, ParabolicSubalgebra, Part};
use crate::rational::{Rational, Q};

/// How a generator interacts with the induced module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Lies in the opposite radical: a free PBW factor.
    Free,
    /// Lies in the nilradical: kills the inducing module.
    Kill,
    /// Lies in the Levi factor: acts on the inducing module.
    Base,
    /// `H`, `c`, `d`.
    Diagonal,
    /// Outside the algebra the module is defined over.
    Zero,
}

#[derive(Clone, Debug)]
pub enum Splitting {
    /// `ĝ = ū̂ ⊕ l̂ ⊕ û` for a natural parabolic.
    Parabolic(ParabolicSubalgebra),
    /// Standard Borel of `l̂⁰` for `ω`: the Verma module of the Levi factor.
    LeviVerma { omega: Vec<usize> },
}

impl Splitting {
    pub fn role(&self, setting: &Setting, g: &Generator) -> Role {
        match *g {
            Generator::Cartan0(_) | Generator::Central | Generator::Derivation => return Role::Diagonal,
            _ => {}
        }
        match self {
            Splitting::Parabolic(p) => match p.classify_with(&setting.alg, g) {
                Part::Opposite => Role::Free,
                Part::Nilradical => Role::Kill,
                Part::Levi => Role::Base,
                Part::Cartan => Role::Diagonal,
            },
            Splitting::LeviVerma { omega } => match *g {
                Generator::Real { n, root } => {
                    let r = &setting.alg.roots[root];
                    if r.iter().enumerate().any(|(i, &x)| x != 0 && !omega.contains(&i)) {
                        Role::Zero
                    } else if n < 0 || (n == 0 && !setting.alg.positive[root]) {
                        Role::Free
                    } else {
                        Role::Kill
                    }
                }
                Generator::Imag { k, j } => {
                    if setting.frame.perp[j] {
                        Role::Zero
                    } else if k < 0 {
                        Role::Free
                    } else {
                        Role::Kill
                    }
                }
                _ => unreachable!(),
            },
        }
    }

    pub fn omega(&self) -> &[usize] {
        match self {
            Splitting::Parabolic(p) => &p.omega,
            Splitting::LeviVerma { omega } => omega,
        }
    }
}

type Cache = RwLock<HashMap<(Generator, BasisKey), Vector>>;

pub struct InducedModule {
    setting: Arc<Setting>,
    pub split: Splitting,
    pub base: Arc<dyn WeightModule>,
    /// Generator placed leftmost in PBW monomials.
    pub first: Option<Generator>,
    cache: Cache,
}

impl InducedModule {
    pub fn order(&self, a: &Generator, b: &Generator) -> Ordering {
        let key = |g: &Generator| (Some(*g) != self.first, *g);
        key(a).cmp(&key(b))
    }

    pub fn role(&self, g: &Generator) -> Role {
        self.split.role(&self.setting, g)
    }

    /// `g · m` for a free generator `g` not after the first factor of `m`.
    fn prepend(&self, g: Generator, m: &Monomial) -> Monomial {
        let mut out = m.clone();
        match out.first_mut() {
            Some((x, e)) if *x == g => *e += 1,
            _ => out.insert(0, (g, 1)),
        }
        out
    }

    fn sort_monomial(&self, m: &mut Monomial) {
        m.sort_by(|a, b| self.order(&a.0, &b.0));
    }

    fn compute(&self, g: &Generator, m: &Monomial, v: &BasisKey) -> Vector {
        let role = self.role(g);
        if role == Role::Zero {
            return Vector::new();
        }
        let Some(&(y, _)) = m.first() else {
            return match role {
                Role::Free => Vector::unit(BasisKey::Pbw(vec![(*g, 1)], Box::new(v.clone()))),
                Role::Kill | Role::Zero => Vector::new(),
                Role::Base | Role::Diagonal => {
                    act(&*self.base, g, v).map_linear(|k| Vector::unit(BasisKey::Pbw(vec![], Box::new(k.clone()))))
                }
            };
        };
        if role == Role::Free && self.order(g, &y) != Ordering::Greater {
            return Vector::unit(BasisKey::Pbw(self.prepend(*g, m), Box::new(v.clone())));
        }
        // g·y·rest = y·(g·rest) + [g, y]·rest
        let mut rest = m.clone();
        if rest[0].1 == 1 {
            rest.remove(0);
        } else {
            rest[0].1 -= 1;
        }
        let rest_key = Vector::unit(BasisKey::Pbw(rest, Box::new(v.clone())));
        let mut out = act_vec(self, &y, &act_vec(self, g, &rest_key));
        out.add_assign(&act_element(self, &self.setting.bracket(g, &y), &rest_key));
        out
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// Free generators with `|level| <= max_level`.
    pub fn free_generators(&self, max_level: i64) -> Vec<Generator> {
        self.setting
            .frame
            .generators_in_box(&self.setting.alg, max_level)
            .into_iter()
            .filter(|g| self.role(g) == Role::Free)
            .collect()
    }

    pub fn generator_vector(&self) -> Option<Vector> {
        self.generator().map(Vector::unit)
    }

    /// Height of a weight vector over the simple roots outside `ω`.
    pub fn u_height(&self, v: &Vector) -> Result<i64> {
        Ok(u_height(self.split.omega(), &self.homogeneous_weight(v)?.finite))
    }

    /// Height of a weight vector over the affine simple roots.
    pub fn affine_u_height(&self, v: &Vector) -> Result<i64> {
        Ok(affine_height(&self.setting.alg, &self.homogeneous_weight(v)?))
    }

    pub fn homogeneous_weight(&self, v: &Vector) -> Result<Weight> {
        let mut it = v.keys().map(|k| self.weight(k));
        let w = it.next().ok_or_else(|| Error::Precondition("zero vector".into()))?;
        if it.any(|x| x != w) {
            return Err(Error::Precondition("vector is not weight-homogeneous".into()));
        }
        Ok(w)
    }
}

/// Builds `Ind(V)` and checks within `t` that the nilradical kills `V`.
pub fn induce(split: Splitting, base: Arc<dyn WeightModule>, first: Option<Generator>, t: Truncation) -> Result<InducedModule> {
    let setting = base.setting().clone();
    let m = InducedModule { setting: setting.clone(), split, base, first, cache: RwLock::new(HashMap::new()) };
    let bound = i64::from(t.depth) + 1;
    let kills: Vec<Generator> = setting
        .frame
        .generators_in_box(&setting.alg, bound)
        .into_iter()
        .filter(|g| m.role(g) == Role::Kill)
        .collect();
    for key in m.base.basis(t) {
        for g in &kills {
            if !m.base.act_raw(g, &key).is_zero() {
                return Err(Error::NotAnnihilated(format!("{} on {}", setting.label(g), key_label(&setting, &key))));
            }
        }
    }
    Ok(m)
}

impl WeightModule for InducedModule {
    fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }
    fn highest(&self) -> &HighestWeight {
        self.base.highest()
    }
    fn weight(&self, key: &BasisKey) -> Weight {
        let BasisKey::Pbw(m, v) = key else { unreachable!("foreign key {key:?}") };
        let mut w = self.base.weight(v);
        for (g, e) in m {
            let r = self.setting.gen_weight(g);
            for (a, b) in w.finite.iter_mut().zip(&r.finite) {
                *a += b * i64::from(*e);
            }
            w.level += r.level * i64::from(*e);
        }
        w
    }
    fn act_raw(&self, g: &Generator, key: &BasisKey) -> Vector {
        let ck = (*g, key.clone());
        if let Some(v) = self.cache.read().expect("cache lock").get(&ck) {
            return v.clone();
        }
        let BasisKey::Pbw(m, v) = key else { unreachable!("foreign key {key:?}") };
        let out = self.compute(g, m, v);
        self.cache.write().expect("cache lock").entry(ck).or_insert(out).clone()
    }
    fn measure(&self, key: &BasisKey) -> (u32, u32) {
        let BasisKey::Pbw(m, v) = key else { unreachable!() };
        let (a, b) = monomial_measure(&self.setting.alg, m);
        let (c, d) = self.base.measure(v);
        (a + c, b + d)
    }
    fn basis(&self, t: Truncation) -> Vec<BasisKey> {
        let free = self.free_generators(i64::from(t.depth));
        let mut out = Vec::new();
        for v in self.base.basis(t) {
            let (d, h) = self.base.measure(&v);
            for mut m in enumerate_monomials(&self.setting.alg, &free, Truncation::new(t.depth - d, t.height - h)) {
                self.sort_monomial(&mut m);
                out.push(BasisKey::Pbw(m, Box::new(v.clone())));
            }
        }
        out.sort();
        out
    }
    fn generator(&self) -> Option<BasisKey> {
        Some(BasisKey::Pbw(vec![], Box::new(self.base.generator()?)))
    }
    fn raising(&self, bound: i64) -> Vec<Generator> {
        let mut out: Vec<Generator> = self
            .setting
            .frame
            .generators_in_box(&self.setting.alg, bound)
            .into_iter()
            .filter(|g| self.role(g) == Role::Kill)
            .collect();
        out.extend(self.base.raising(bound));
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightSingular {
    pub weight: Weight,
    pub dim: usize,
    /// Nullspace witnesses as coefficient lists over the boxed basis.
    pub singular: Vec<Vec<(String, Rational)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularCertificate {
    pub kind: String,
    pub depth: u32,
    pub height: u32,
    pub raising: Vec<String>,
    pub weights: Vec<WeightSingular>,
    /// The only singular vectors found span the generator line.
    pub only_generator: bool,
}

/// Default bound on the level of raising generators used in certificates.
pub fn default_raising_bound(t: Truncation) -> i64 {
    i64::from(t.depth + t.height) + 1
}

fn group_by_weight(m: &dyn WeightModule, t: Truncation) -> BTreeMap<Weight, Vec<BasisKey>> {
    let mut out: BTreeMap<Weight, Vec<BasisKey>> = BTreeMap::new();
    for k in m.basis(t) {
        out.entry(m.weight(&k)).or_default().push(k);
    }
    out
}

/// Exact nullspace of the stacked raising actions on one weight space.
pub fn singular_in_weight(m: &dyn WeightModule, raising: &[Generator], keys: &[BasisKey]) -> Vec<Vec<Q>> {
    let mut rows: BTreeMap<(Generator, BasisKey), Vec<Q>> = BTreeMap::new();
    for (col, key) in keys.iter().enumerate() {
        for g in raising {
            for (target, c) in act(m, g, key).iter() {
                rows.entry((*g, target.clone())).or_insert_with(|| vec![Q::default(); keys.len()])[col] = c.clone();
            }
        }
    }
    let rows: Vec<Vec<Q>> = rows.into_values().collect();
    nullspace(&rows, keys.len())
}

/// Singular vectors of `m` inside `t`: weight vectors killed by every raising
/// generator of level at most `bound`.
pub fn singular_vectors(m: &dyn WeightModule, t: Truncation, bound: i64) -> SingularCertificate {
    let setting = m.setting().clone();
    let raising = m.raising(bound);
    let spaces: Vec<(Weight, Vec<BasisKey>)> = group_by_weight(m, t).into_iter().collect();
    let weights: Vec<WeightSingular> = spaces
        .par_iter()
        .map(|(w, keys)| {
            let ns = singular_in_weight(m, &raising, keys);
            let singular = ns
                .iter()
                .map(|v| {
                    keys.iter()
                        .zip(v)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (key_label(&setting, k), Rational(c.clone())))
                        .collect()
                })
                .collect();
            WeightSingular { weight: w.clone(), dim: keys.len(), singular }
        })
        .collect();
    let zero = Root::new(vec![0; setting.alg.rank()], 0);
    let only_generator = weights
        .iter()
        .all(|ws| if ws.weight == zero { ws.singular.len() == 1 } else { ws.singular.is_empty() });
    SingularCertificate {
        kind: "singular_list".into(),
        depth: t.depth,
        height: t.height,
        raising: raising.iter().map(|g| setting.label(g)).collect(),
        weights,
        only_generator,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CyclicEntry {
    pub vector: String,
    /// Word applied right to left; `None` if no word was found in the box.
    pub word: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CyclicityCertificate {
    pub kind: String,
    pub depth: u32,
    pub height: u32,
    pub entries: Vec<CyclicEntry>,
    pub all_reached: bool,
}

fn distance(w: &Weight) -> i64 {
    w.level.abs() + w.finite.iter().map(|x| x.abs()).sum::<i64>()
}

/// Depth-first search for a word of generators whose value on `v` has a
/// nonzero generator coefficient. Each step must not increase the weight
/// distance to the generator, and no weight repeats along the path;
/// decreasing steps are tried first. The returned word is a product,
/// applied right to left.
pub fn find_word(m: &dyn WeightModule, moves: &[Generator], v: &Vector, budget: &mut usize) -> Option<Vec<Generator>> {
    let mut path = Vec::new();
    search(m, moves, v, budget, &mut path)
}

fn search(m: &dyn WeightModule, moves: &[Generator], v: &Vector, budget: &mut usize, path: &mut Vec<Weight>) -> Option<Vec<Generator>> {
    let target = m.generator()?;
    if !v.coeff(&target).is_zero() {
        return Some(vec![]);
    }
    let w = m.weight(v.keys().next()?);
    let d = distance(&w);
    path.push(w.clone());
    let mut ordered: Vec<(i64, &Generator, Weight)> = moves
        .iter()
        .map(|g| {
            let nw = w.add(&m.setting().gen_weight(g));
            (distance(&nw), g, nw)
        })
        .filter(|(nd, _, nw)| *nd <= d && !path.contains(nw))
        .collect();
    ordered.sort_by_key(|(nd, _, _)| *nd);
    for (_, g, _) in ordered {
        if *budget == 0 {
            break;
        }
        *budget -= 1;
        let next = act_vec(m, g, v);
        if next.is_zero() {
            continue;
        }
        if let Some(mut word) = search(m, moves, &next, budget, path) {
            word.push(*g);
            path.pop();
            return Some(word);
        }
    }
    path.pop();
    None
}

/// For each boxed basis vector, a word returning it to the generator line.
/// Words are products: the rightmost letter is applied first.
pub fn cyclicity_certificate(m: &dyn WeightModule, t: Truncation, bound: i64) -> CyclicityCertificate {
    let setting = m.setting().clone();
    let moves: Vec<Generator> = setting
        .frame
        .generators_in_box(&setting.alg, bound)
        .into_iter()
        .filter(|g| !matches!(g, Generator::Cartan0(_) | Generator::Central | Generator::Derivation))
        .collect();
    let keys = m.basis(t);
    let entries: Vec<CyclicEntry> = keys
        .par_iter()
        .map(|k| {
            let mut budget = 20_000;
            let word = find_word(m, &moves, &Vector::unit(k.clone()), &mut budget);
            CyclicEntry {
                vector: key_label(&setting, k),
                word: word.map(|w| w.iter().map(|g| setting.label(g)).collect()),
            }
        })
        .collect();
    let all_reached = entries.iter().all(|e| e.word.is_some());
    CyclicityCertificate { kind: "cyclicity".into(), depth: t.depth, height: t.height, entries, all_reached }
}
