//! The Weyl algebra on the coordinates of `ū̂_nat`, tensored with the
//! current modes of the Levi factor.
//!
//! Canonical order of a monomial: `A` factors, then `AStar`, then currents,
//! then `K`. On the polynomial carrier the `A` modes multiply and the
//! `AStar` modes differentiate, so this is the order in which every mode sum
//! acts by finitely many terms.

use serde::{Deserialize, Serialize};

use crate::algebra::AffineAlgebra;
use crate::rational::{format_q, q, Q};
use crate::sparse::SparseVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OscMode {
    /// `a_{α,n}`; `root` is the index of the negative root `-α`.
    A { root: usize, n: i64 },
    /// `a*_{α,n}`.
    AStar { root: usize, n: i64 },
    /// `h_i ⊗ t^n` acting on the Levi module.
    CartanCur { i: usize, n: i64 },
    /// `e_β ⊗ t^n`, `β` a root of the Levi factor.
    LeviCur { root: usize, n: i64 },
    /// Central charge.
    K,
}

impl OscMode {
    fn class(&self) -> u8 {
        match self {
            OscMode::A { .. } => 0,
            OscMode::AStar { .. } => 1,
            OscMode::CartanCur { .. } | OscMode::LeviCur { .. } => 2,
            OscMode::K => 3,
        }
    }

    pub fn label(&self, alg: &AffineAlgebra) -> String {
        let root = |r: usize| format!("{:?}", alg.roots[r].iter().map(|x| -x).collect::<Vec<_>>());
        match *self {
            OscMode::A { root: r, n } => format!("a{}[{}]", root(r), n),
            OscMode::AStar { root: r, n } => format!("a*{}[{}]", root(r), n),
            OscMode::CartanCur { i, n } => format!("h{}[{}]", i + 1, n),
            OscMode::LeviCur { root: r, n } => format!("e{:?}[{}]", alg.roots[r], n),
            OscMode::K => "a".into(),
        }
    }
}

/// Product of modes, always in canonical order.
pub type WeylMono = Vec<OscMode>;

fn canonical_key(m: &OscMode) -> (u8, OscMode) {
    (m.class(), *m)
}

/// `[x, y]` for `x` in class `AStar` and `y` in class `A`.
fn contraction(x: &OscMode, y: &OscMode) -> Option<Q> {
    match (*x, *y) {
        (OscMode::AStar { root: b, n }, OscMode::A { root: a, n: m }) if a == b && m + n == 0 => Some(q(-1)),
        _ => None,
    }
}

/// Finite sum of canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeylPoly {
    pub terms: SparseVec<WeylMono>,
}

impl WeylPoly {
    pub fn zero() -> Self {
        WeylPoly::default()
    }

    pub fn constant(c: Q) -> Self {
        WeylPoly { terms: SparseVec::term(vec![], c) }
    }

    /// A single word, reordered into canonical form.
    pub fn word(word: &[OscMode], c: Q) -> Self {
        let mut out = WeylPoly::zero();
        normal_order(word.to_vec(), c, &mut out.terms);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &WeylPoly) -> WeylPoly {
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        WeylPoly { terms: t }
    }

    pub fn sub(&self, other: &WeylPoly) -> WeylPoly {
        WeylPoly { terms: self.terms.sub(&other.terms) }
    }

    pub fn display(&self, alg: &AffineAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let w: Vec<String> = m.iter().map(|x| x.label(alg)).collect();
                if w.is_empty() {
                    format_q(c)
                } else {
                    format!("{}*{}", format_q(c), w.join(" "))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn normal_order(mut word: Vec<OscMode>, c: Q, out: &mut SparseVec<WeylMono>) {
    // bubble the first out-of-order pair; contractions spawn shorter words
    for i in 0..word.len().saturating_sub(1) {
        if canonical_key(&word[i]) > canonical_key(&word[i + 1]) {
            if let Some(k) = contraction(&word[i], &word[i + 1]) {
                let mut shorter = word.clone();
                shorter.drain(i..i + 2);
                normal_order(shorter, &c * k, out);
            }
            word.swap(i, i + 1);
            return normal_order(word, c, out);
        }
    }
    out.add_term(word, c);
}

pub fn weyl_product(p: &WeylPoly, r: &WeylPoly) -> WeylPoly {
    let mut out = SparseVec::new();
    for (a, ca) in p.terms.iter() {
        for (b, cb) in r.terms.iter() {
            let mut w = a.clone();
            w.extend(b.iter().copied());
            normal_order(w, ca * cb, &mut out);
        }
    }
    WeylPoly { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(root: usize, n: i64) -> WeylPoly {
        WeylPoly::word(&[OscMode::A { root, n }], q(1))
    }
    fn s(root: usize, n: i64) -> WeylPoly {
        WeylPoly::word(&[OscMode::AStar { root, n }], q(1))
    }

    #[test]
    fn own_variable_contracts() {
        let lhs = weyl_product(&a(0, 1), &s(0, -1));
        let rhs = weyl_product(&s(0, -1), &a(0, 1)).add(&WeylPoly::constant(q(1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn independent_variables_commute() {
        let lhs = weyl_product(&a(0, 1), &s(1, -1));
        assert_eq!(lhs, weyl_product(&s(1, -1), &a(0, 1)));
        assert_eq!(lhs.terms.len(), 1);
        assert!(lhs.terms.keys().all(|m| !m.is_empty()));
    }

    #[test]
    fn canonical_word_is_unchanged() {
        let w = [OscMode::A { root: 0, n: 0 }, OscMode::AStar { root: 0, n: 0 }, OscMode::AStar { root: 0, n: 0 }];
        let p = WeylPoly::word(&w, q(1));
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.terms.coeff(&w.to_vec()), q(1));
        // (a*)^2 a = a (a*)^2 - 2 a*
        let rev = WeylPoly::word(&[w[1], w[2], w[0]], q(1));
        assert_eq!(rev, p.sub(&s(0, 0).add(&s(0, 0))));
    }
}
