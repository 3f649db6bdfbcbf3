//! Checks on a constructed `W(V)`: the bracket relations of `ĝ` on boxed
//! vectors, and the comparison with the induced module.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{mode, AffineAlgebra, Mode};
use crate::induced::InducedModule;
use crate::linalg::rank;
use crate::module::{act_vec, character, key_label, BasisKey, Truncation, Vector, Weight, WeightModule};
use crate::rational::{format_q, Q};

use super::carrier::WakimotoModule;
use super::realization::Realization;

/// Chevalley generators `e_i, f_i, h_i` at level zero.
pub fn chevalley(alg: &AffineAlgebra) -> Vec<Mode> {
    let mut out = Vec::new();
    for i in 0..alg.rank() {
        let e = alg.simple_root(i);
        out.push(Mode::Real { n: 0, root: e });
        out.push(Mode::Real { n: 0, root: alg.neg_root(e) });
        out.push(Mode::Cartan { n: 0, i });
    }
    out
}

fn at_level(x: &Mode, n: i64) -> Mode {
    match *x {
        Mode::Real { root, .. } => Mode::Real { n, root },
        Mode::Cartan { i, .. } => Mode::Cartan { n, i },
        other => other,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationViolation {
    pub x: String,
    pub y: String,
    pub vector: String,
    pub defect: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomomorphismReport {
    pub charge: String,
    pub mode_bound: i64,
    pub vectors: usize,
    pub checks: usize,
    pub violations: Vec<RelationViolation>,
    pub holds: bool,
}

/// `[π(x_m), π(y_n)] = π([x_m, y_n])` on every boxed basis vector, for all
/// Chevalley pairs and `|m|, |n| <= mode_bound`; `π(c) = a`.
pub fn verify_homomorphism(w: &WakimotoModule, mode_bound: i64, t: Truncation) -> HomomorphismReport {
    let alg = &w.setting().alg;
    let gens = chevalley(alg);
    let basis = w.basis(t);
    let mut jobs = Vec::new();
    for (a, x) in gens.iter().enumerate() {
        for y in &gens[a..] {
            for m in -mode_bound..=mode_bound {
                for n in -mode_bound..=mode_bound {
                    jobs.push((at_level(x, m), at_level(y, n)));
                }
            }
        }
    }
    let violations: Vec<RelationViolation> = jobs
        .par_iter()
        .flat_map_iter(|(x, y)| {
            let br = alg.bracket(&mode(*x), &mode(*y));
            basis.iter().filter_map(move |key| {
                let v = Vector::unit(key.clone());
                let xy = w.pi_vec(x, &w.pi_vec(y, &v));
                let yx = w.pi_vec(y, &w.pi_vec(x, &v));
                let mut rhs = Vector::new();
                for (z, c) in br.iter() {
                    rhs.add_scaled(&w.pi_vec(z, &v), c);
                }
                let defect = xy.sub(&yx).sub(&rhs);
                if defect.is_zero() {
                    return None;
                }
                let s = w.setting();
                Some(RelationViolation {
                    x: alg.mode_label(x),
                    y: alg.mode_label(y),
                    vector: key_label(s, key),
                    defect: defect.iter().map(|(k, c)| (key_label(s, k), format_q(c))).collect(),
                })
            })
        })
        .collect();
    HomomorphismReport {
        charge: format_q(w.charge()),
        mode_bound,
        vectors: basis.len(),
        checks: jobs.len() * basis.len(),
        holds: violations.is_empty(),
        violations,
    }
}

/// `Φ(y_1 ⋯ y_r ⊗ v) = π(y_1) ⋯ π(y_r)(1 ⊗ v)`.
pub fn phi(w: &WakimotoModule, key: &BasisKey) -> Vector {
    let BasisKey::Pbw(m, v) = key else { unreachable!("foreign key {key:?}") };
    let mut cur = Vector::unit(w.embed(v));
    for (g, e) in m.iter().rev() {
        for _ in 0..*e {
            cur = act_vec(w, g, &cur);
        }
    }
    cur
}

fn phi_vec(w: &WakimotoModule, v: &Vector) -> Vector {
    v.map_linear(|k| phi(w, k))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightBlock {
    pub weight: Weight,
    pub columns: usize,
    pub rank: usize,
    /// Column `j`: image of the `j`-th basis vector of `M`, over labelled keys of `W`.
    pub matrix: Vec<Vec<(String, String)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchReport {
    pub blocks: Vec<WeightBlock>,
    pub character_match: bool,
    pub equivariant: bool,
    pub equivariance_witness: Option<(String, String)>,
    pub rank_drop: Option<Weight>,
    pub isomorphism: bool,
}

/// Matches `M = Ind(V)` with `W(V)` through `Φ`: `Φ` must commute with the
/// boxed generator modes and be injective on every boxed weight space of equal
/// dimension.
pub fn match_to_verma(w: &WakimotoModule, m: &InducedModule, t: Truncation) -> MatchReport {
    let s = w.setting().clone();
    let chw = character(w, t);
    let character_match = chw == character(m, t);
    let mkeys = m.basis(t);
    let mut by_weight: BTreeMap<Weight, Vec<BasisKey>> = BTreeMap::new();
    for k in &mkeys {
        by_weight.entry(m.weight(k)).or_default().push(k.clone());
    }
    let mut blocks = Vec::new();
    let mut rank_drop = None;
    for (wt, keys) in &by_weight {
        let images: Vec<Vector> = keys.iter().map(|k| phi(w, k)).collect();
        let mut rows: Vec<BasisKey> = images.iter().flat_map(|v| v.keys().cloned()).collect();
        rows.sort();
        rows.dedup();
        let mat: Vec<Vec<Q>> = images.iter().map(|v| rows.iter().map(|r| v.coeff(r)).collect()).collect();
        let r = rank(&mat, rows.len());
        if r < keys.len() && rank_drop.is_none() {
            rank_drop = Some(wt.clone());
        }
        blocks.push(WeightBlock {
            weight: wt.clone(),
            columns: keys.len(),
            rank: r,
            matrix: images.iter().map(|v| v.iter().map(|(k, c)| (key_label(&s, k), format_q(c))).collect()).collect(),
        });
    }
    let gens = s.frame.generators_in_box(&s.alg, i64::from(t.depth));
    let witness = mkeys.par_iter().find_map_any(|k| {
        let base = Vector::unit(k.clone());
        let img = phi(w, k);
        gens.iter().find_map(|g| {
            let lhs = phi_vec(w, &crate::module::act_vec(m, g, &base));
            let rhs = act_vec(w, g, &img);
            (lhs != rhs).then(|| (s.label(g), key_label(&s, k)))
        })
    });
    let equivariant = witness.is_none();
    MatchReport {
        blocks,
        character_match,
        equivariant,
        equivariance_witness: witness,
        isomorphism: character_match && equivariant && rank_drop.is_none(),
        rank_drop,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizationEntry {
    pub generator: String,
    pub field: String,
    pub modes: BTreeMap<i64, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizationDump {
    pub entries: Vec<RealizationEntry>,
    pub central: String,
}

/// `π(b(z))` and its modes `|n| <= mode_bound` (oscillator indices within
/// `window`) for every Chevalley generator.
pub fn dump_realization(r: &Realization, mode_bound: i64, window: i64) -> RealizationDump {
    let entries = chevalley(&r.alg)
        .iter()
        .map(|x| RealizationEntry {
            generator: r.alg.mode_label(x).replace("_0", ""),
            field: r.describe(x),
            modes: (-mode_bound..=mode_bound).map(|n| (n, r.mode_poly(&at_level(x, n), window).display(&r.alg))).collect(),
        })
        .collect();
    RealizationDump { entries, central: "pi(c) = a".into() }
}
