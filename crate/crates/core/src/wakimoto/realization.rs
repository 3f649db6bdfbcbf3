//! Symbolic evaluation of the free-field formula for `π(b(z))`.
//!
//! Elements of `g ⊗ C[γ, ∂γ]` are kept as maps from level-zero modes to
//! polynomials in the fields `γ_β(z)` (and their first derivatives). The
//! series in `ad u(z)` terminate because `ū` is nilpotent. Each resulting
//! summand is a product of commuting `γ` fields with at most one "free"
//! field (`a_α(z)` or a Levi current) and is turned into mode operators by
//! [`FieldTerm`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AffineAlgebra, Mode};
use crate::error::{Error, Result};
use crate::rational::{bernoulli_plus, factorial, format_q, q, Q};
use crate::sparse::SparseVec;

use super::weyl::{OscMode, WeylPoly};

/// `γ_β(z)` (`deriv = false`) or `∂_z γ_β(z)`; `root` indexes the negative
/// root `β` of `ū`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GSym {
    pub root: usize,
    pub deriv: bool,
}

/// Sorted list of symbols with repetition.
pub type GMono = Vec<GSym>;
pub type GammaPoly = SparseVec<GMono>;

/// Element of `g ⊗ C[γ, ∂γ]`, keyed by level-zero modes.
pub type GVec = BTreeMap<Mode, GammaPoly>;

fn mono_times(m: &GMono, s: GSym) -> GMono {
    let mut out = m.clone();
    let i = out.partition_point(|x| *x <= s);
    out.insert(i, s);
    out
}

fn add_into(v: &mut GVec, mode: Mode, p: &GammaPoly) {
    let e = v.entry(mode).or_default();
    e.add_assign(p);
    if e.is_zero() {
        v.remove(&mode);
    }
}

fn scale(v: &GVec, c: &Q) -> GVec {
    v.iter().map(|(m, p)| (*m, p.scaled(c))).filter(|(_, p)| !p.is_zero()).collect()
}

fn add(v: &mut GVec, w: &GVec) {
    for (m, p) in w {
        add_into(v, *m, p);
    }
}

/// The field the non-`γ` factor of a term stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Free {
    /// `a_α(z)`, indexed by the negative root.
    A(usize),
    /// `x(z)` for a level-zero mode `x` of the Levi factor.
    Current(Mode),
    /// Scalar multiple of the central charge.
    Charge,
}

/// `coeff · free(z) · Π γ factors(z)`, normal ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTerm {
    pub coeff: Q,
    pub free: Free,
    pub gammas: GMono,
}

impl FieldTerm {
    /// Assignments of mode indices for mode `n`, restricted to `|index| <=
    /// window`; each comes with the scalar factor from derivatives.
    fn modes(&self, n: i64, window: i64) -> Vec<(Vec<i64>, i64, Q)> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.rec(0, n, window, &mut cur, &mut out);
        out
    }

    fn rec(&self, i: usize, n: i64, window: i64, cur: &mut Vec<i64>, out: &mut Vec<(Vec<i64>, i64, Q)>) {
        if i == self.gammas.len() {
            let shift: i64 = cur.iter().zip(&self.gammas).map(|(j, g)| j + i64::from(g.deriv)).sum();
            let factor = cur.iter().zip(&self.gammas).filter(|(_, g)| g.deriv).fold(q(1), |acc, (j, _)| acc * q(-j));
            match self.free {
                Free::Charge => {
                    if shift == n + 1 {
                        out.push((cur.clone(), 0, factor));
                    }
                }
                _ => {
                    let j = n - shift;
                    if j.abs() <= window {
                        out.push((cur.clone(), j, factor));
                    }
                }
            }
            return;
        }
        for j in -window..=window {
            cur.push(j);
            self.rec(i + 1, n, window, cur, out);
            cur.pop();
        }
    }

    /// Mode `n` of the term as a Weyl polynomial, all indices within `window`.
    pub fn mode_poly(&self, n: i64, window: i64) -> WeylPoly {
        let mut out = WeylPoly::zero();
        for (js, j, factor) in self.modes(n, window) {
            let mut word: Vec<OscMode> = match self.free {
                Free::A(root) => vec![OscMode::A { root, n: j }],
                Free::Current(Mode::Cartan { i, .. }) => vec![OscMode::CartanCur { i, n: j }],
                Free::Current(Mode::Real { root, .. }) => vec![OscMode::LeviCur { root, n: j }],
                Free::Current(_) => unreachable!("currents are real or Cartan"),
                Free::Charge => vec![OscMode::K],
            };
            word.extend(js.iter().zip(&self.gammas).map(|(&n, g)| OscMode::AStar { root: g.root, n }));
            out = out.add(&WeylPoly::word(&word, &self.coeff * factor));
        }
        out
    }
}

/// Data of the realization for a natural parabolic.
#[derive(Clone, Debug)]
pub struct Realization {
    pub alg: AffineAlgebra,
    pub omega: Vec<usize>,
    /// Negative roots spanning `ū` (indices into `alg.roots`).
    pub ubar: Vec<usize>,
    /// Field expansion of `π(x(z))` for every level-zero basis mode `x`.
    pub fields: BTreeMap<Mode, Vec<FieldTerm>>,
    /// Number of `ad u` steps after which the series vanished, per mode.
    pub nilpotency: BTreeMap<Mode, usize>,
}

fn in_levi(alg: &AffineAlgebra, omega: &[usize], root: usize) -> bool {
    alg.roots[root].iter().enumerate().all(|(i, &x)| x == 0 || omega.contains(&i))
}

impl Realization {
    pub fn new(alg: &AffineAlgebra, omega: &[usize]) -> Result<Self> {
        let mut omega = omega.to_vec();
        omega.sort_unstable();
        omega.dedup();
        let ubar: Vec<usize> = (0..alg.roots.len())
            .filter(|&r| alg.roots[r].iter().all(|&x| x <= 0) && !in_levi(alg, &omega, r))
            .collect();
        let mut out = Realization { alg: alg.clone(), omega, ubar, fields: BTreeMap::new(), nilpotency: BTreeMap::new() };
        let modes: Vec<Mode> = (0..alg.roots.len())
            .map(|root| Mode::Real { n: 0, root })
            .chain((0..alg.rank()).map(|i| Mode::Cartan { n: 0, i }))
            .collect();
        for b in modes {
            let (terms, steps) = out.expand(b)?;
            out.fields.insert(b, terms);
            out.nilpotency.insert(b, steps);
        }
        Ok(out)
    }

    fn bound(&self) -> usize {
        let h = self.alg.highest_root.iter().sum::<i64>() as usize;
        2 * h + 2
    }

    /// `ad u(z)` on `g ⊗ C[γ, ∂γ]`.
    fn ad_u(&self, x: &GVec) -> GVec {
        let mut out = GVec::new();
        for &beta in &self.ubar {
            let sym = GSym { root: beta, deriv: false };
            for (m, p) in x {
                let br = self.alg.bracket_modes(&Mode::Real { n: 0, root: beta }, m);
                if br.is_zero() {
                    continue;
                }
                let shifted: GammaPoly = p.iter().map(|(mono, c)| (mono_times(mono, sym), c.clone())).collect();
                for (bm, bc) in br.iter() {
                    add_into(&mut out, *bm, &shifted.scaled(bc));
                }
            }
        }
        out
    }

    /// `Σ_k coeff(k) ad(u)^k x`; errors if the powers do not vanish in time.
    fn series(&self, x: &GVec, coeff: impl Fn(usize) -> Q) -> Result<(GVec, usize)> {
        let mut out = GVec::new();
        let mut cur = x.clone();
        let mut k = 0;
        while !cur.is_empty() {
            if k > self.bound() {
                return Err(Error::Precondition("ad u(z) is not nilpotent on this element".into()));
            }
            add(&mut out, &scale(&cur, &coeff(k)));
            cur = self.ad_u(&cur);
            k += 1;
        }
        Ok((out, k))
    }

    fn is_ubar(&self, m: &Mode) -> bool {
        matches!(m, Mode::Real { root, .. } if self.ubar.contains(root))
    }

    fn is_levi(&self, m: &Mode) -> bool {
        match m {
            Mode::Cartan { .. } => true,
            Mode::Real { root, .. } => in_levi(&self.alg, &self.omega, *root),
            _ => false,
        }
    }

    fn expand(&self, b: Mode) -> Result<(Vec<FieldTerm>, usize)> {
        let bern = bernoulli_plus(self.bound() + 2);
        let unit: GVec = [(b, GammaPoly::unit(vec![]))].into_iter().collect();
        let (twisted, steps) = self.series(&unit, |k| q(if k % 2 == 0 { 1 } else { -1 }) / factorial(k as u64))?;
        let mut terms = Vec::new();

        let ubar_part: GVec = twisted.iter().filter(|(m, _)| self.is_ubar(m)).map(|(m, p)| (*m, p.clone())).collect();
        let (first, _) = self.series(&ubar_part, |k| bern[k].clone() / factorial(k as u64))?;
        for (m, p) in &first {
            let Mode::Real { root, .. } = *m else { unreachable!("ū is spanned by root vectors") };
            for (mono, c) in p.iter() {
                terms.push(FieldTerm { coeff: -c.clone(), free: Free::A(root), gammas: mono.clone() });
            }
        }

        // the nilradical acts by zero on V, so only the Levi part survives
        for (m, p) in twisted.iter().filter(|(m, _)| self.is_levi(m)) {
            for (mono, c) in p.iter() {
                terms.push(FieldTerm { coeff: c.clone(), free: Free::Current(*m), gammas: mono.clone() });
            }
        }

        let du: GVec = self
            .ubar
            .iter()
            .map(|&beta| (Mode::Real { n: 0, root: beta }, GammaPoly::unit(vec![GSym { root: beta, deriv: true }])))
            .collect();
        let (s, _) = self.series(&du, |k| q(1) / factorial(k as u64 + 1))?;
        let mut anomaly = GammaPoly::new();
        for (m, p) in &s {
            let f = self.alg.form_modes(m, &b);
            if f != q(0) {
                anomaly.add_scaled(p, &f);
            }
        }
        for (mono, c) in anomaly.iter() {
            terms.push(FieldTerm { coeff: -c.clone(), free: Free::Charge, gammas: mono.clone() });
        }
        Ok((terms, steps))
    }

    /// `π(x)_n` restricted to oscillator indices in `window`.
    pub fn mode_poly(&self, x: &Mode, window: i64) -> WeylPoly {
        let Some(terms) = self.fields.get(&level_zero(x)) else {
            return match x {
                Mode::Central => WeylPoly::word(&[OscMode::K], q(1)),
                _ => WeylPoly::zero(),
            };
        };
        terms.iter().fold(WeylPoly::zero(), |acc, t| acc.add(&t.mode_poly(x.level(), window)))
    }

    /// Human-readable field expansion of `π(x(z))`.
    pub fn describe(&self, x: &Mode) -> String {
        let Some(terms) = self.fields.get(x) else {
            return "0".into();
        };
        let alg = &self.alg;
        let parts: Vec<String> = terms
            .iter()
            .map(|t| {
                let mut f = vec![format_q(&t.coeff)];
                f.push(match t.free {
                    Free::A(r) => OscMode::A { root: r, n: 0 }.label(alg).replace("[0]", "(z)"),
                    Free::Current(m) => alg.mode_label(&m).replace("[0]", "") + "(z)",
                    Free::Charge => "a".into(),
                });
                for g in &t.gammas {
                    let s = OscMode::AStar { root: g.root, n: 0 }.label(alg).replace("[0]", "(z)");
                    f.push(if g.deriv { format!("d({s})") } else { s });
                }
                f.join("*")
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// The same basis element of `g` at level zero.
pub fn level_zero(x: &Mode) -> Mode {
    match *x {
        Mode::Real { root, .. } => Mode::Real { n: 0, root },
        Mode::Cartan { i, .. } => Mode::Cartan { n: 0, i },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CartanType;

    fn a1() -> Realization {
        Realization::new(&AffineAlgebra::new("A1".parse::<CartanType>().unwrap()), &[]).unwrap()
    }

    #[test]
    fn sl2_images() {
        let r = a1();
        let f = r.alg.root_index(&[-1]).unwrap();
        let e = r.alg.root_index(&[1]).unwrap();
        let fs = &r.fields[&Mode::Real { n: 0, root: f }];
        assert_eq!(fs, &vec![FieldTerm { coeff: q(-1), free: Free::A(f), gammas: vec![] }]);
        let g = GSym { root: f, deriv: false };
        let hs = &r.fields[&Mode::Cartan { n: 0, i: 0 }];
        assert!(hs.contains(&FieldTerm { coeff: q(2), free: Free::A(f), gammas: vec![g] }));
        assert!(hs.contains(&FieldTerm { coeff: q(1), free: Free::Current(Mode::Cartan { n: 0, i: 0 }), gammas: vec![] }));
        assert_eq!(hs.len(), 2);
        let es = &r.fields[&Mode::Real { n: 0, root: e }];
        assert!(es.contains(&FieldTerm { coeff: q(1), free: Free::A(f), gammas: vec![g, g] }));
        assert!(es.contains(&FieldTerm { coeff: q(1), free: Free::Current(Mode::Cartan { n: 0, i: 0 }), gammas: vec![g] }));
        assert!(es.contains(&FieldTerm { coeff: q(-1), free: Free::Charge, gammas: vec![GSym { root: f, deriv: true }] }));
        assert_eq!(es.len(), 3);
    }

    #[test]
    fn nilpotency_guard() {
        let alg = AffineAlgebra::new("A2".parse::<CartanType>().unwrap());
        let r = Realization::new(&alg, &[]).unwrap();
        assert!(r.nilpotency.values().all(|&k| k <= 5));
    }

    #[test]
    fn f_mode_is_single_a() {
        let r = a1();
        let f = r.alg.root_index(&[-1]).unwrap();
        let p = r.mode_poly(&Mode::Real { n: 2, root: f }, 3);
        assert_eq!(p, WeylPoly::word(&[OscMode::A { root: f, n: 2 }], q(-1)));
        assert_eq!(r.mode_poly(&Mode::Central, 3), WeylPoly::word(&[OscMode::K], q(1)));
    }
}
