//! Oscillator frames for the Heisenberg subalgebra and the generator basis
//! used by every module in the crate.
//!
//! A frame fixes, for every level `k != 0`, a basis `x_k^1..x_k^n` of the
//! imaginary root space with `[x_k^i, x_{-k}^j] = k δ_ij c`. Positive levels
//! use the columns of `plus` (coordinates over `h_1..h_n`), negative levels the
//! columns of `minus = C^{-1} plus^{-T}`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::lie::{AffineAlgebra, AlgElement, Mode, Root};
use crate::linalg::inverse;
use crate::rational::{q, Q};
use crate::sparse::SparseVec;

/// Basis element of `ĝ` adapted to a frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// `e_α ⊗ t^n`
    Real { n: i64, root: usize },
    /// Oscillator `x_k^j`, `k != 0`.
    Imag { k: i64, j: usize },
    /// `h_i ⊗ 1`
    Cartan0(usize),
    Central,
    Derivation,
}

impl Generator {
    pub fn level(&self) -> i64 {
        match *self {
            Generator::Real { n, .. } => n,
            Generator::Imag { k, .. } => k,
            _ => 0,
        }
    }
}

pub type GenElement = SparseVec<Generator>;

#[derive(Clone, Debug)]
pub struct Frame {
    pub plus: Vec<Vec<Q>>,
    pub minus: Vec<Vec<Q>>,
    plus_inv: Vec<Vec<Q>>,
    minus_inv: Vec<Vec<Q>>,
    /// `perp[j]`: oscillator index `j` spans part of `G(l̂)^⊥`.
    pub perp: Vec<bool>,
}

fn transpose(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

fn matmul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(Q::zero(), |s, k| s + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

impl Frame {
    /// Frame from positive-level columns; `plus[r][j]` is the `h_r`
    /// coordinate of `x_k^j`.
    pub fn from_plus(alg: &AffineAlgebra, plus: Vec<Vec<Q>>, perp: Vec<bool>) -> Self {
        let c_inv = inverse(&alg.form).expect("Cartan matrix is invertible");
        let p_inv = inverse(&plus).expect("frame columns must be independent");
        let minus = matmul(&c_inv, &transpose(&p_inv));
        let minus_inv = inverse(&minus).expect("invertible");
        Frame { plus, minus, plus_inv: p_inv, minus_inv, perp }
    }

    /// `x_k^i = h_i ⊗ t^k` for `k > 0`.
    pub fn standard(alg: &AffineAlgebra) -> Self {
        let n = alg.rank();
        let id = (0..n).map(|i| (0..n).map(|j| q(i64::from(i == j))).collect()).collect();
        Frame::from_plus(alg, id, vec![false; n])
    }

    /// Frame adapted to the Levi factor of the natural parabolic for `omega`:
    /// first the `h_j` with `j ∈ ω` (spanning `G(l̂)`), then the fundamental
    /// coweights `ϖ_i`, `i ∉ ω`, which span `G(l̂)^⊥`.
    pub fn adapted(alg: &AffineAlgebra, omega: &[usize]) -> Self {
        let n = alg.rank();
        let c_inv = inverse(&alg.form).expect("invertible");
        let mut cols: Vec<Vec<Q>> = Vec::new();
        let mut perp = Vec::new();
        for j in 0..n {
            if omega.contains(&j) {
                cols.push((0..n).map(|r| q(i64::from(r == j))).collect());
                perp.push(false);
            }
        }
        for i in 0..n {
            if !omega.contains(&i) {
                cols.push((0..n).map(|r| c_inv[r][i].clone()).collect());
                perp.push(true);
            }
        }
        Frame::from_plus(alg, transpose(&cols), perp)
    }

    pub fn rank(&self) -> usize {
        self.plus.len()
    }

    fn column(&self, k: i64, j: usize) -> Vec<Q> {
        let m = if k > 0 { &self.plus } else { &self.minus };
        m.iter().map(|row| row[j].clone()).collect()
    }

    /// The generator as an element of `ĝ`.
    pub fn to_element(&self, g: &Generator) -> AlgElement {
        match *g {
            Generator::Real { n, root } => AlgElement::unit(Mode::Real { n, root }),
            Generator::Cartan0(i) => AlgElement::unit(Mode::Cartan { n: 0, i }),
            Generator::Central => AlgElement::unit(Mode::Central),
            Generator::Derivation => AlgElement::unit(Mode::Derivation),
            Generator::Imag { k, j } => {
                let col = self.column(k, j);
                col.into_iter().enumerate().map(|(i, c)| (Mode::Cartan { n: k, i }, c)).collect()
            }
        }
    }

    /// Rewrites an element of `ĝ` over the frame generators.
    pub fn decompose(&self, x: &AlgElement) -> GenElement {
        let mut out = GenElement::new();
        for (m, c) in x.iter() {
            match *m {
                Mode::Real { n, root } => out.add_term(Generator::Real { n, root }, c.clone()),
                Mode::Cartan { n: 0, i } => out.add_term(Generator::Cartan0(i), c.clone()),
                Mode::Central => out.add_term(Generator::Central, c.clone()),
                Mode::Derivation => out.add_term(Generator::Derivation, c.clone()),
                Mode::Cartan { n, i } => {
                    let inv = if n > 0 { &self.plus_inv } else { &self.minus_inv };
                    for (j, row) in inv.iter().enumerate() {
                        out.add_term(Generator::Imag { k: n, j }, &row[i] * c);
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, alg: &AffineAlgebra, x: &Generator, y: &Generator) -> GenElement {
        self.decompose(&alg.bracket(&self.to_element(x), &self.to_element(y)))
    }

    pub fn bracket_elements(&self, alg: &AffineAlgebra, x: &GenElement, y: &GenElement) -> GenElement {
        let mut out = GenElement::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&self.bracket(alg, a, b), &(ca * cb));
            }
        }
        out
    }

    /// Root of a generator, `None` for the elements of `H`.
    pub fn root(&self, alg: &AffineAlgebra, g: &Generator) -> Option<Root> {
        match *g {
            Generator::Real { n, root } => Some(Root::new(alg.roots[root].clone(), n)),
            Generator::Imag { k, .. } => Some(Root::new(vec![0; alg.rank()], k)),
            _ => None,
        }
    }

    /// All generators with `|level| <= max_level`, in canonical order.
    pub fn generators_in_box(&self, alg: &AffineAlgebra, max_level: i64) -> Vec<Generator> {
        let mut out = vec![Generator::Central, Generator::Derivation];
        out.extend((0..alg.rank()).map(Generator::Cartan0));
        for n in -max_level..=max_level {
            out.extend((0..alg.roots.len()).map(|root| Generator::Real { n, root }));
            if n != 0 {
                out.extend((0..self.rank()).map(|j| Generator::Imag { k: n, j }));
            }
        }
        out.sort();
        out
    }

    pub fn label(&self, alg: &AffineAlgebra, g: &Generator) -> String {
        match *g {
            Generator::Real { n, root } => format!("e{:?}[{}]", alg.roots[root], n),
            Generator::Imag { k, j } => format!("x{}[{}]", j + 1, k),
            Generator::Cartan0(i) => format!("h{}", i + 1),
            Generator::Central => "c".into(),
            Generator::Derivation => "d".into(),
        }
    }
}
