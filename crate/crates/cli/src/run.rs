//! Task execution. Every task yields a JSON report and a status; reports
//! contain no timings so that identical inputs give identical bytes.

use std::sync::Arc;

use affine_core::algebra::{AffineAlgebra, CartanType, Mode};
use affine_core::induced::{cyclicity_certificate, default_raising_bound, singular_vectors};
use affine_core::instances::{levi_tensor, levi_tensor_fock, loop_fock, parabolic_setting};
use affine_core::module::{act_element, act_vec, character, key_label, FockModule, TriangularSpec, Truncation, Vector, WeightModule};
use affine_core::partitions::{
    natural_partition, phi_partition, standard_partition, validate_quase_partition, ImaginarySpec, Verdict,
};
use affine_core::rational::format_q;
use affine_core::twisting::{verify_intertwining, TwistSetup};
use affine_core::wakimoto::{chevalley, dump_realization, match_to_verma, verify_homomorphism, wakimoto_module};
use affine_core::{AlgElement, RootClass};
use anyhow::Result;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::spec::{build_module, highest, omega, Expectation, ExperimentSpec, PartitionChoice, Task, ValidityExpectation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TaskResult {
    pub name: String,
    pub task: &'static str,
    pub status: Status,
    pub report: Value,
}

fn element(alg: &AffineAlgebra, x: &AlgElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.iter().map(|(m, c)| format!("{}*{}", format_q(c), alg.mode_label(m))).collect::<Vec<_>>().join(" + ")
}

fn shift(m: &Mode, n: i64) -> Mode {
    match *m {
        Mode::Real { root, .. } => Mode::Real { n, root },
        Mode::Cartan { i, .. } => Mode::Cartan { n, i },
        other => other,
    }
}

/// Root listing and a bracket table of Chevalley generators at levels -1, 0, 1.
pub fn algebra_summary(spec: &ExperimentSpec) -> Result<Value> {
    let alg = spec.algebra()?;
    let roots: Vec<Value> = alg
        .roots_in_box(spec.algebra.k)
        .into_iter()
        .map(|r| {
            let class = match alg.classify_root(&r) {
                RootClass::Real => "real",
                RootClass::Imaginary => "imaginary",
                RootClass::NotARoot => "none",
            };
            json!({ "finite": r.finite, "level": r.level, "class": class })
        })
        .collect();
    let real = roots.iter().filter(|r| r["class"] == "real").count();
    let modes: Vec<Mode> = chevalley(&alg).iter().flat_map(|m| (-1..=1).map(move |n| shift(m, n))).collect();
    let mut table = Vec::new();
    for x in &modes {
        for y in &modes {
            if x < y {
                table.push(json!({
                    "x": alg.mode_label(x),
                    "y": alg.mode_label(y),
                    "bracket": element(&alg, &alg.bracket_modes(x, y)),
                }));
            }
        }
    }
    Ok(json!({
        "type": spec.cartan()?.to_string(),
        "rank": alg.rank(),
        "K": spec.algebra.k,
        "root_count": roots.len(),
        "real_roots": real,
        "imaginary_roots": roots.len() - real,
        "roots": roots,
        "brackets": table,
    }))
}

pub fn run_task(spec: &ExperimentSpec, task: &Task, index: usize, seed: u64) -> Result<TaskResult> {
    let t = spec.cartan()?;
    let (status, report) = match task {
        Task::Partition { partition, remove, add, expect, .. } => partition_task(spec, partition, remove, add, *expect)?,
        Task::Certify { module, depth, height, raising_bound, expect, .. } => {
            let trunc = Truncation::new(*depth, *height);
            let m = build_module(t, module, trunc)?;
            let bound = raising_bound.unwrap_or_else(|| default_raising_bound(trunc));
            let sv = singular_vectors(&*m, trunc, bound);
            let cyc = cyclicity_certificate(&*m, trunc, bound);
            let status = match expect {
                None => Status::Pass,
                Some(Expectation::Irreducible) if !sv.only_generator => Status::Fail,
                Some(Expectation::Irreducible) if !cyc.all_reached => Status::Inconclusive,
                Some(Expectation::Irreducible) => Status::Pass,
                Some(Expectation::Reducible) if sv.only_generator => Status::Fail,
                Some(Expectation::Reducible) => Status::Pass,
            };
            (status, json!({ "basis": m.basis(trunc).len(), "singular": sv, "cyclicity": cyc }))
        }
        Task::Wakimoto { omega: om, lambda, charge, depth, height, mode_bound, dump_window, match_verma, .. } => {
            let alg = AffineAlgebra::new(t);
            let lam = highest(&alg, lambda, charge)?;
            let om = omega(&alg, om)?;
            let trunc = Truncation::new(*depth, *height);
            let level = i64::from(*depth) + 1;
            let (p, v): (_, Arc<dyn WeightModule>) = if om.is_empty() {
                let (p, setting) = parabolic_setting(t, &[], ImaginarySpec::Full, level)?;
                (p, Arc::new(FockModule::full(setting, TriangularSpec::Standard, lam.clone())))
            } else {
                let (p, _, _, v) = levi_tensor(t, &om, lam.clone(), None, trunc)?;
                (p, v)
            };
            let w = wakimoto_module(p, v)?;
            let hom = verify_homomorphism(&w, *mode_bound, trunc);
            let m = if om.is_empty() {
                loop_fock(t, TriangularSpec::Standard, lam, trunc)?
            } else {
                levi_tensor_fock(t, &om, lam, trunc)?
            };
            let character_match = character(&w, trunc) == character(&m, trunc);
            let matched = match_verma.then(|| match_to_verma(&w, &m, trunc));
            let ok = hom.holds && character_match && matched.as_ref().is_none_or(|r| r.isomorphism);
            let report = json!({
                "realization": dump_realization(&w.realization, *mode_bound, *dump_window),
                "homomorphism": hom,
                "character_match": character_match,
                "match_to_verma": matched,
            });
            (if ok { Status::Pass } else { Status::Fail }, report)
        }
        Task::Twist { omega: om, lambda, charge, root, level, depth, n_max, mode_bound, .. } => {
            let alg = AffineAlgebra::new(t);
            let lam = highest(&alg, lambda, charge)?;
            let trunc = Truncation::new(*depth, *depth);
            let setup = TwistSetup::new(t, &omega(&alg, om)?, lam, root, *level, trunc, *n_max)?;
            let tw = setup.intertwiner(trunc)?;
            let r = verify_intertwining(&tw, trunc, *n_max, mode_bound.unwrap_or(i64::from(*depth)));
            let status = if r.roundtrip && r.equivariant { Status::Pass } else { Status::Fail };
            (status, serde_json::to_value(&r)?)
        }
        Task::Pbw { module, depth, height, samples, .. } => pbw_task(t, module, *depth, *height, *samples, seed ^ index as u64)?,
    };
    Ok(TaskResult { name: task.name(index), task: task.kind(), status, report })
}

fn partition_task(
    spec: &ExperimentSpec,
    choice: &PartitionChoice,
    remove: &[affine_core::Root],
    add: &[affine_core::Root],
    expect: Option<ValidityExpectation>,
) -> Result<(Status, Value)> {
    let alg = spec.algebra()?;
    let k = spec.algebra.k;
    let base = match choice {
        PartitionChoice::Standard => standard_partition(&alg, k),
        PartitionChoice::Natural => natural_partition(&alg, k),
        PartitionChoice::Phi(phi) => phi_partition(&alg, phi, k)?,
    };
    let p = if remove.is_empty() && add.is_empty() { base } else { base.modified(remove, add) };
    let r = validate_quase_partition(&alg, &p);
    let status = match (r.verdict, expect) {
        (Verdict::Inconclusive, _) => Status::Inconclusive,
        (_, None) => Status::Pass,
        (Verdict::Valid, Some(ValidityExpectation::Valid)) | (Verdict::Invalid, Some(ValidityExpectation::Invalid)) => {
            Status::Pass
        }
        _ => Status::Fail,
    };
    Ok((status, json!({ "size": p.roots.len(), "validation": r })))
}

/// Random straightening checks `[x, y]·b = x·y·b - y·x·b` with a seeded RNG.
fn pbw_task(
    t: CartanType,
    module: &crate::spec::ModuleSpec,
    depth: u32,
    height: u32,
    samples: usize,
    seed: u64,
) -> Result<(Status, Value)> {
    let trunc = Truncation::new(depth, height);
    let m = build_module(t, module, trunc)?;
    let setting = m.setting().clone();
    let gens = setting.frame.generators_in_box(&setting.alg, i64::from(depth));
    let basis = m.basis(trunc);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let x = gens[rng.random_range(0..gens.len())];
        let y = gens[rng.random_range(0..gens.len())];
        let key = &basis[rng.random_range(0..basis.len())];
        let b = Vector::unit(key.clone());
        let lhs = act_vec(&*m, &x, &act_vec(&*m, &y, &b)).sub(&act_vec(&*m, &y, &act_vec(&*m, &x, &b)));
        let rhs = act_element(&*m, &setting.bracket(&x, &y), &b);
        if lhs != rhs {
            failures.push(format!("x = {}, y = {}, b = {}", setting.label(&x), setting.label(&y), key_label(&setting, key)));
        }
    }
    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    Ok((status, json!({ "samples": samples, "seed": seed, "failures": failures })))
}
