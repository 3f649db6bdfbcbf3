//! The untwisted affine algebra `g ⊗ C[t, t^-1] ⊕ Cc ⊕ Cd` with exact
//! Chevalley structure constants.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cartan::{positive_roots, CartanType};
use crate::rational::{q, Q};
use crate::sparse::SparseVec;

/// Basis element of the affine algebra.
///
/// The derived order is the canonical one: kind first, then level, then the
/// finite root (indices into the lexicographically sorted root list) or the
/// Cartan index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    /// `e_alpha ⊗ t^n`
    Real { n: i64, root: usize },
    /// `h_i ⊗ t^n`
    Cartan { n: i64, i: usize },
    Central,
    Derivation,
}

impl Mode {
    pub fn level(&self) -> i64 {
        match *self {
            Mode::Real { n, .. } | Mode::Cartan { n, .. } => n,
            _ => 0,
        }
    }
}

pub type AlgElement = SparseVec<Mode>;

/// Affine root `finite + level·δ`, finite part in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub finite: Vec<i64>,
    pub level: i64,
}

impl Root {
    pub fn new(finite: Vec<i64>, level: i64) -> Self {
        Root { finite, level }
    }

    pub fn delta(rank: usize) -> Self {
        Root { finite: vec![0; rank], level: 1 }
    }

    pub fn neg(&self) -> Root {
        Root { finite: self.finite.iter().map(|x| -x).collect(), level: -self.level }
    }

    pub fn add(&self, other: &Root) -> Root {
        Root {
            finite: self.finite.iter().zip(&other.finite).map(|(a, b)| a + b).collect(),
            level: self.level + other.level,
        }
    }

    pub fn is_finite_zero(&self) -> bool {
        self.finite.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootClass {
    Real,
    Imaginary,
    NotARoot,
}

#[derive(Clone, Debug)]
pub struct AffineAlgebra {
    pub cartan_type: CartanType,
    /// Finite roots, sorted lexicographically.
    pub roots: Vec<Vec<i64>>,
    pub positive: Vec<bool>,
    pub cartan: Vec<Vec<i64>>,
    /// Gram matrix of the invariant form on `h` in the basis `h_i`.
    pub form: Vec<Vec<Q>>,
    pub highest_root: Vec<i64>,
    index: HashMap<Vec<i64>, usize>,
    /// Bimultiplicative cocycle `ε(α, β)` on root pairs.
    epsilon: Vec<Vec<i8>>,
    /// `N(α, β)` with `[e_α, e_β] = N(α, β) e_{α+β}`.
    structure: Vec<Vec<i8>>,
    /// `sum_idx[α][β]` = index of `α + β` when it is a root.
    sum_idx: Vec<Vec<Option<usize>>>,
    neg_idx: Vec<usize>,
}

impl AffineAlgebra {
    pub fn new(cartan_type: CartanType) -> Self {
        let cartan = cartan_type.cartan_matrix();
        let n = cartan_type.rank;
        let pos = positive_roots(&cartan);
        let highest_root = pos.last().cloned().expect("nonempty root system");
        let mut roots: Vec<Vec<i64>> = pos.iter().cloned().chain(pos.iter().map(|r| r.iter().map(|x| -x).collect())).collect();
        roots.sort();
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let positive: Vec<bool> = roots.iter().map(|r| r.iter().any(|&x| x > 0)).collect();
        let form = cartan.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();

        // ε(α_i, α_j) = -1 iff i == j, or i < j and the nodes are joined.
        let simple_eps = |i: usize, j: usize| -> i64 { i64::from(i == j || (i < j && cartan[i][j] == -1)) };
        let eps = |a: &[i64], b: &[i64]| -> i8 {
            let mut s = 0i64;
            for i in 0..n {
                for j in 0..n {
                    s += a[i] * b[j] * simple_eps(i, j);
                }
            }
            if s.rem_euclid(2) == 0 { 1 } else { -1 }
        };
        let m = roots.len();
        let mut epsilon = vec![vec![0i8; m]; m];
        let mut structure = vec![vec![0i8; m]; m];
        let mut sum_idx = vec![vec![None; m]; m];
        let sign = |i: usize| -> i8 { if positive[i] { 1 } else { -1 } };
        for a in 0..m {
            for b in 0..m {
                epsilon[a][b] = eps(&roots[a], &roots[b]);
                let s: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                if let Some(&c) = index.get(&s) {
                    sum_idx[a][b] = Some(c);
                    structure[a][b] = sign(a) * sign(b) * sign(c) * epsilon[a][b];
                }
            }
        }
        let neg_idx = roots
            .iter()
            .map(|r| index[&r.iter().map(|x| -x).collect::<Vec<_>>()])
            .collect();
        AffineAlgebra { cartan_type, roots, positive, cartan, form, highest_root, index, epsilon, structure, sum_idx, neg_idx }
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn root_index(&self, finite: &[i64]) -> Option<usize> {
        self.index.get(finite).copied()
    }

    pub fn neg_root(&self, idx: usize) -> usize {
        self.neg_idx[idx]
    }

    pub fn root_sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sum_idx[a][b]
    }

    pub fn epsilon(&self, a: usize, b: usize) -> i8 {
        self.epsilon[a][b]
    }

    pub fn structure_constant(&self, a: usize, b: usize) -> i8 {
        self.structure[a][b]
    }

    /// `(x, y) = xᵀ A y` on the root lattice.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += x[i] * self.cartan[i][j] * y[j];
            }
        }
        s
    }

    /// `α(h_i) = (α, α_i)`.
    pub fn root_on_cartan(&self, root: usize, i: usize) -> i64 {
        (0..self.rank()).map(|j| self.roots[root][j] * self.cartan[j][i]).sum()
    }

    pub fn simple_root(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        self.index[&v]
    }

    pub fn height(finite: &[i64]) -> i64 {
        finite.iter().sum()
    }

    /// Lie bracket of two basis modes.
    pub fn bracket_modes(&self, x: &Mode, y: &Mode) -> AlgElement {
        use Mode::*;
        let mut out = AlgElement::new();
        match (*x, *y) {
            (Central, _) | (_, Central) | (Derivation, Derivation) => {}
            (Derivation, m) => {
                out.add_term(m, q(m.level()));
            }
            (m, Derivation) => {
                out.add_term(m, q(-m.level()));
            }
            (Real { n: m, root: a }, Real { n, root: b }) => {
                if self.neg_idx[a] == b {
                    for (i, &c) in self.roots[a].iter().enumerate() {
                        out.add_term(Cartan { n: m + n, i }, q(c));
                    }
                    if m + n == 0 {
                        out.add_term(Central, q(m));
                    }
                } else if let Some(c) = self.sum_idx[a][b] {
                    out.add_term(Real { n: m + n, root: c }, q(i64::from(self.structure[a][b])));
                }
            }
            (Real { n: m, root }, Cartan { n, i }) => {
                out.add_term(Real { n: m + n, root }, q(-self.root_on_cartan(root, i)));
            }
            (Cartan { n: m, i }, Real { n, root }) => {
                out.add_term(Real { n: m + n, root }, q(self.root_on_cartan(root, i)));
            }
            (Cartan { n: m, i }, Cartan { n, i: j }) => {
                if m + n == 0 {
                    out.add_term(Central, q(m * self.cartan[i][j]));
                }
            }
        }
        out
    }

    /// Bilinear extension of [`Self::bracket_modes`].
    pub fn bracket(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let mut out = AlgElement::new();
        for (mx, cx) in x.iter() {
            for (my, cy) in y.iter() {
                out.add_scaled(&self.bracket_modes(mx, my), &(cx * cy));
            }
        }
        out
    }

    pub fn form_modes(&self, x: &Mode, y: &Mode) -> Q {
        use Mode::*;
        match (*x, *y) {
            (Real { n: m, root: a }, Real { n, root: b }) if m + n == 0 && self.neg_idx[a] == b => q(1),
            (Cartan { n: m, i }, Cartan { n, i: j }) if m + n == 0 => q(self.cartan[i][j]),
            (Central, Derivation) | (Derivation, Central) => q(1),
            _ => Q::zero(),
        }
    }

    /// Normalized invariant form: `(θ, θ) = 2`, `(c, d) = 1`, `(d, d) = 0`.
    pub fn invariant_form(&self, x: &AlgElement, y: &AlgElement) -> Q {
        let mut s = Q::zero();
        for (mx, cx) in x.iter() {
            for (my, cy) in y.iter() {
                let f = self.form_modes(mx, my);
                if !f.is_zero() {
                    s += f * cx * cy;
                }
            }
        }
        s
    }

    pub fn classify_root(&self, r: &Root) -> RootClass {
        if r.finite.len() != self.rank() {
            return RootClass::NotARoot;
        }
        if r.is_finite_zero() {
            if r.level != 0 {
                RootClass::Imaginary
            } else {
                RootClass::NotARoot
            }
        } else if self.index.contains_key(&r.finite) {
            RootClass::Real
        } else {
            RootClass::NotARoot
        }
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.classify_root(r) != RootClass::NotARoot
    }

    /// All roots with `|level| <= max_level`, ordered by level, then
    /// imaginary before real, then finite part lexicographically.
    pub fn roots_in_box(&self, max_level: i64) -> Vec<Root> {
        let mut out = Vec::new();
        for k in -max_level..=max_level {
            if k != 0 {
                out.push(Root::new(vec![0; self.rank()], k));
            }
            for r in &self.roots {
                out.push(Root::new(r.clone(), k));
            }
        }
        out
    }

    /// Root (weight under `H`) of a basis mode; `None` for `H` itself.
    pub fn mode_root(&self, m: &Mode) -> Option<Root> {
        match *m {
            Mode::Real { n, root } => Some(Root::new(self.roots[root].clone(), n)),
            Mode::Cartan { n, .. } if n != 0 => Some(Root::new(vec![0; self.rank()], n)),
            _ => None,
        }
    }

    /// Every basis mode with `|level| <= max_level`.
    pub fn modes_in_box(&self, max_level: i64) -> Vec<Mode> {
        let mut out = vec![Mode::Central, Mode::Derivation];
        for n in -max_level..=max_level {
            for root in 0..self.roots.len() {
                out.push(Mode::Real { n, root });
            }
            for i in 0..self.rank() {
                out.push(Mode::Cartan { n, i });
            }
        }
        out.sort();
        out
    }

    /// Human-readable mode label such as `e[1,0]⊗t^-1` or `h2⊗t^3`.
    pub fn mode_label(&self, m: &Mode) -> String {
        match *m {
            Mode::Real { n, root } => format!("e{:?}_{}", self.roots[root], n),
            Mode::Cartan { n, i } => format!("h{}_{}", i + 1, n),
            Mode::Central => "c".into(),
            Mode::Derivation => "d".into(),
        }
    }
}

pub fn mode(m: Mode) -> AlgElement {
    AlgElement::unit(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> AffineAlgebra {
        AffineAlgebra::new(s.parse().unwrap())
    }

    #[test]
    fn root_counts() {
        assert_eq!(alg("A1").roots.len(), 2);
        assert_eq!(alg("A2").roots.len(), 6);
        assert_eq!(alg("D4").roots.len(), 24);
    }

    #[test]
    fn derivation_scales_by_degree() {
        let g = alg("A2");
        let e = Mode::Real { n: 3, root: 0 };
        assert_eq!(g.bracket(&mode(Mode::Derivation), &mode(e)), AlgElement::term(e, q(3)));
        for m in g.modes_in_box(2) {
            assert!(g.bracket(&mode(Mode::Central), &mode(m)).is_zero());
        }
    }

    #[test]
    fn a1_cartan_loop_bracket() {
        let g = alg("A1");
        let x = mode(Mode::Cartan { n: 1, i: 0 });
        let y = mode(Mode::Cartan { n: -1, i: 0 });
        assert_eq!(g.bracket(&x, &y), AlgElement::term(Mode::Central, q(2)));
    }

    #[test]
    fn a1_e_f_gives_h() {
        let g = alg("A1");
        let e = g.root_index(&[1]).unwrap();
        let f = g.root_index(&[-1]).unwrap();
        let b = g.bracket(&mode(Mode::Real { n: 0, root: e }), &mode(Mode::Real { n: -1, root: f }));
        assert_eq!(b, AlgElement::term(Mode::Cartan { n: -1, i: 0 }, q(1)));
    }

    #[test]
    fn form_values() {
        let g = alg("A2");
        for a in 0..g.roots.len() {
            let e = mode(Mode::Real { n: 0, root: a });
            let f = mode(Mode::Real { n: 0, root: g.neg_root(a) });
            assert_eq!(g.invariant_form(&e, &f), q(1));
            assert_eq!(g.invariant_form(&e, &e), q(0));
        }
        let h = |i| mode(Mode::Cartan { n: 0, i });
        assert_eq!(g.invariant_form(&h(0), &h(1)), q(-1));
        assert_eq!(g.invariant_form(&h(0), &h(0)), q(2));
        let theta = g.highest_root.clone();
        assert_eq!(g.pairing(&theta, &theta), 2);
    }

    #[test]
    fn classify() {
        let g = alg("A1");
        assert_eq!(g.classify_root(&Root::new(vec![1], 3)), RootClass::Real);
        assert_eq!(g.classify_root(&Root::new(vec![0], 2)), RootClass::Imaginary);
        assert_eq!(g.classify_root(&Root::new(vec![2], 0)), RootClass::NotARoot);
        assert_eq!(g.classify_root(&Root::new(vec![0], 0)), RootClass::NotARoot);
    }

    #[test]
    fn box_counts() {
        assert_eq!(alg("A1").roots_in_box(1).len(), 8);
        assert_eq!(alg("A1").roots_in_box(0).len(), 2);
        // 6 finite roots at 3 levels, plus ±δ
        assert_eq!(alg("A2").roots_in_box(1).len(), 20);
        assert_eq!(alg("A1").roots_in_box(2).len(), 14);
    }

    #[test]
    fn cocycle_condition() {
        for t in ["A1", "A3", "D4", "E6"] {
            let g = alg(t);
            for a in 0..g.roots.len() {
                for b in 0..g.roots.len() {
                    let p = g.pairing(&g.roots[a], &g.roots[b]);
                    let expect = if p.rem_euclid(2) == 0 { 1 } else { -1 };
                    assert_eq!(g.epsilon(a, b) * g.epsilon(b, a), expect);
                }
            }
        }
    }
}
