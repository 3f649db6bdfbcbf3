//! The module `W(V) = C[y_{α,n}] ⊗ V` on which `a_{α,n}` multiplies by
//! `y_{α,n}` and `a*_{α,n}` acts as `-∂/∂y_{α,-n}`.
//!
//! Variables are keyed by the generator `e_{-α} ⊗ t^n` they stand for, so a
//! basis key of `W` has the same shape as a key of the induced module.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::{Generator, Mode};
use crate::error::{Error, Result};
use crate::induced::{Role, Splitting};
use crate::module::{
    act_element, enumerate_monomials, monomial_measure, monomial_times, BasisKey, HighestWeight, Monomial, Setting,
    Truncation, Vector, Weight, WeightModule,
};
use crate::partitions::ParabolicSubalgebra;
use crate::rational::q;
use crate::sparse::SparseVec;

use super::realization::{level_zero, FieldTerm, Free, Realization};
use super::weyl::{OscMode, WeylPoly};

type Cache = RwLock<HashMap<(Mode, BasisKey), Vector>>;

pub struct WakimotoModule {
    setting: Arc<Setting>,
    pub realization: Arc<Realization>,
    pub split: Splitting,
    pub base: Arc<dyn WeightModule>,
    cache: Cache,
}

/// Partial state while the `γ` factors of a term are applied.
type Partial = SparseVec<(Monomial, i64)>;

impl WakimotoModule {
    /// `W(V)` for the natural parabolic `p`; `V` must live on the setting of `p`.
    pub fn new(p: ParabolicSubalgebra, base: Arc<dyn WeightModule>) -> Result<Self> {
        let setting = base.setting().clone();
        let realization = Arc::new(Realization::new(&setting.alg, &p.omega)?);
        let m = WakimotoModule { setting, realization, split: Splitting::Parabolic(p), base, cache: RwLock::new(HashMap::new()) };
        Ok(m)
    }

    fn var(&self, root: usize, n: i64) -> Generator {
        Generator::Real { n, root }
    }

    /// One field term at mode `n` applied to `y^m ⊗ v`.
    fn apply_term(&self, t: &FieldTerm, n: i64, m: &Monomial, v: &BasisKey) -> Vector {
        let mut states: Partial = SparseVec::unit((m.clone(), 0));
        for g in &t.gammas {
            let mut next = Partial::new();
            for ((mono, shift), c) in states.iter() {
                for &(var, e) in mono.iter() {
                    let Generator::Real { n: k, root } = var else { continue };
                    if root != g.root {
                        continue;
                    }
                    // a*_{β,j} = -∂/∂y_{β,-j}, j = -k
                    let j = -k;
                    let mut coeff = c * q(-i64::from(e));
                    let mut s = shift + j;
                    if g.deriv {
                        coeff *= q(-j);
                        s += 1;
                    }
                    let reduced = monomial_times(mono, var, -1).expect("factor present");
                    next.add_term((reduced, s), coeff);
                }
            }
            states = next;
        }
        let mut out = Vector::new();
        for ((mono, shift), c) in states.iter() {
            let c = c * &t.coeff;
            match t.free {
                Free::Charge => {
                    if *shift == n + 1 {
                        out.add_term(BasisKey::Pbw(mono.clone(), Box::new(v.clone())), c * self.base.charge());
                    }
                }
                Free::A(root) => {
                    let j = n - shift;
                    let mono = monomial_times(mono, self.var(root, j), 1).expect("positive exponent");
                    out.add_term(BasisKey::Pbw(mono, Box::new(v.clone())), c);
                }
                Free::Current(x) => {
                    let j = n - shift;
                    let mode = match x {
                        Mode::Cartan { i, .. } => Mode::Cartan { n: j, i },
                        Mode::Real { root, .. } => Mode::Real { n: j, root },
                        other => other,
                    };
                    let el = self.setting.frame.decompose(&crate::algebra::mode(mode));
                    let image = act_element(&*self.base, &el, &Vector::unit(v.clone()));
                    for (k, d) in image.iter() {
                        out.add_term(BasisKey::Pbw(mono.clone(), Box::new(k.clone())), &c * d);
                    }
                }
            }
        }
        out
    }

    /// `π(x)` on a basis key, for any mode `x` of `ĝ`.
    pub fn pi_mode(&self, x: &Mode, key: &BasisKey) -> Vector {
        match x {
            Mode::Central => return Vector::term(key.clone(), self.base.charge().clone()),
            Mode::Derivation => return Vector::term(key.clone(), self.diagonal(&Generator::Derivation, key).expect("d")),
            _ => {}
        }
        let ck = (*x, key.clone());
        if let Some(v) = self.cache.read().expect("cache lock").get(&ck) {
            return v.clone();
        }
        let BasisKey::Pbw(m, v) = key else { unreachable!("foreign key {key:?}") };
        let mut out = Vector::new();
        for t in &self.realization.fields[&level_zero(x)] {
            out.add_assign(&self.apply_term(t, x.level(), m, v));
        }
        self.cache.write().expect("cache lock").entry(ck).or_insert(out).clone()
    }

    pub fn pi_vec(&self, x: &Mode, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (k, c) in v.iter() {
            out.add_scaled(&self.pi_mode(x, k), c);
        }
        out
    }

    /// Applies a windowed Weyl polynomial to a key (rightmost factor first).
    pub fn apply_weyl(&self, p: &WeylPoly, key: &BasisKey) -> Vector {
        let mut out = Vector::new();
        for (word, c) in p.terms.iter() {
            let mut cur = Vector::unit(key.clone());
            for f in word.iter().rev() {
                cur = cur.map_linear(|k| self.apply_osc(f, k));
            }
            out.add_scaled(&cur, c);
        }
        out
    }

    fn apply_osc(&self, f: &OscMode, key: &BasisKey) -> Vector {
        let BasisKey::Pbw(m, v) = key else { unreachable!() };
        let wrap = |k: BasisKey| BasisKey::Pbw(m.clone(), Box::new(k));
        match *f {
            OscMode::A { root, n } => {
                Vector::unit(BasisKey::Pbw(monomial_times(m, self.var(root, n), 1).expect("positive"), v.clone()))
            }
            OscMode::AStar { root, n } => {
                let var = self.var(root, -n);
                match crate::module::exponent(m, &var) {
                    0 => Vector::new(),
                    e => Vector::term(
                        BasisKey::Pbw(monomial_times(m, var, -1).expect("present"), v.clone()),
                        q(-i64::from(e)),
                    ),
                }
            }
            OscMode::K => Vector::term(key.clone(), self.base.charge().clone()),
            OscMode::CartanCur { i, n } => {
                let el = self.setting.frame.decompose(&crate::algebra::mode(Mode::Cartan { n, i }));
                act_element(&*self.base, &el, &Vector::unit((**v).clone())).map_linear(|k| Vector::unit(wrap(k.clone())))
            }
            OscMode::LeviCur { root, n } => {
                let el = SparseVec::unit(Generator::Real { n, root });
                act_element(&*self.base, &el, &Vector::unit((**v).clone())).map_linear(|k| Vector::unit(wrap(k.clone())))
            }
        }
    }

    /// Free variables `y_{α,n}` with `|n| <= max_level`.
    pub fn variables(&self, max_level: i64) -> Vec<Generator> {
        self.setting
            .frame
            .generators_in_box(&self.setting.alg, max_level)
            .into_iter()
            .filter(|g| self.split.role(&self.setting, g) == Role::Free)
            .collect()
    }

    /// The carrier vector `1 ⊗ v`.
    pub fn embed(&self, v: &BasisKey) -> BasisKey {
        BasisKey::Pbw(vec![], Box::new(v.clone()))
    }
}

impl WeightModule for WakimotoModule {
    fn setting(&self) -> &Arc<Setting> {
        &self.setting
    }
    fn highest(&self) -> &HighestWeight {
        self.base.highest()
    }
    fn weight(&self, key: &BasisKey) -> Weight {
        let BasisKey::Pbw(m, v) = key else { unreachable!("foreign key {key:?}") };
        let mut w = self.base.weight(v);
        let mw = crate::module::monomial_weight(&self.setting, m);
        for (a, b) in w.finite.iter_mut().zip(&mw.finite) {
            *a += b;
        }
        w.level += mw.level;
        w
    }
    fn act_raw(&self, g: &Generator, key: &BasisKey) -> Vector {
        let el = self.setting.frame.to_element(g);
        let mut out = Vector::new();
        for (x, c) in el.iter() {
            out.add_scaled(&self.pi_mode(x, key), c);
        }
        out
    }
    fn measure(&self, key: &BasisKey) -> (u32, u32) {
        let BasisKey::Pbw(m, v) = key else { unreachable!() };
        let (a, b) = monomial_measure(&self.setting.alg, m);
        let (c, d) = self.base.measure(v);
        (a + c, b + d)
    }
    fn basis(&self, t: Truncation) -> Vec<BasisKey> {
        let vars = self.variables(i64::from(t.depth));
        let mut out = Vec::new();
        for v in self.base.basis(t) {
            let (d, h) = self.base.measure(&v);
            for m in enumerate_monomials(&self.setting.alg, &vars, Truncation::new(t.depth - d, t.height - h)) {
                out.push(BasisKey::Pbw(m, Box::new(v.clone())));
            }
        }
        out.sort();
        out
    }
    fn generator(&self) -> Option<BasisKey> {
        Some(self.embed(&self.base.generator()?))
    }
    fn raising(&self, bound: i64) -> Vec<Generator> {
        let mut out: Vec<Generator> = self
            .setting
            .frame
            .generators_in_box(&self.setting.alg, bound)
            .into_iter()
            .filter(|g| self.split.role(&self.setting, g) == Role::Kill)
            .collect();
        out.extend(self.base.raising(bound));
        out.sort();
        out.dedup();
        out
    }
}

/// `W(V)` for the natural parabolic `p`, checking that `V` lives on the
/// setting of `p`.
pub fn wakimoto_module(p: ParabolicSubalgebra, base: Arc<dyn WeightModule>) -> Result<WakimotoModule> {
    if base.setting().frame.perp != p.frame.perp {
        return Err(Error::Precondition("Levi module uses a different frame".into()));
    }
    WakimotoModule::new(p, base)
}
