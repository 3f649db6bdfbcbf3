//! Experiment files: one JSON document naming the algebra and a task list.
//! Rationals are written as `"p/q"` strings; `omega` indices are 1-based.

use std::sync::Arc;

use affine_core::algebra::{AffineAlgebra, CartanType};
use affine_core::instances::{imaginary_verma, levi_tensor_fock, loop_fock, partial_heisenberg};
use affine_core::induced::InducedModule;
use affine_core::module::{HighestWeight, TriangularSpec, Truncation};
use affine_core::partitions::Sign;
use affine_core::{Rational, Root};
use anyhow::{bail, Context, Result};
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(rename = "type")]
    pub cartan: String,
    /// Level bound for root listings and partition boxes.
    #[serde(rename = "K", default = "default_k")]
    pub k: i64,
}

fn default_k() -> i64 {
    2
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum Task {
    Partition {
        name: Option<String>,
        partition: PartitionChoice,
        #[serde(default)]
        remove: Vec<Root>,
        #[serde(default)]
        add: Vec<Root>,
        expect: Option<ValidityExpectation>,
    },
    Certify {
        name: Option<String>,
        module: ModuleSpec,
        depth: u32,
        height: u32,
        raising_bound: Option<i64>,
        expect: Option<Expectation>,
    },
    Wakimoto {
        name: Option<String>,
        #[serde(default)]
        omega: Vec<usize>,
        lambda: Vec<Rational>,
        charge: Rational,
        depth: u32,
        height: u32,
        mode_bound: i64,
        #[serde(default = "default_window")]
        dump_window: i64,
        #[serde(default = "yes")]
        match_verma: bool,
    },
    Twist {
        name: Option<String>,
        omega: Vec<usize>,
        lambda: Vec<Rational>,
        charge: Rational,
        root: Vec<i64>,
        #[serde(default)]
        level: i64,
        depth: u32,
        n_max: u32,
        mode_bound: Option<i64>,
    },
    Pbw {
        name: Option<String>,
        module: ModuleSpec,
        depth: u32,
        height: u32,
        samples: usize,
    },
}

fn default_window() -> i64 {
    2
}

fn yes() -> bool {
    true
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Partition { .. } => "partition",
            Task::Certify { .. } => "certify",
            Task::Wakimoto { .. } => "wakimoto",
            Task::Twist { .. } => "twist",
            Task::Pbw { .. } => "pbw",
        }
    }

    pub fn name(&self, index: usize) -> String {
        let n = match self {
            Task::Partition { name, .. }
            | Task::Certify { name, .. }
            | Task::Wakimoto { name, .. }
            | Task::Twist { name, .. }
            | Task::Pbw { name, .. } => name,
        };
        n.clone().unwrap_or_else(|| format!("{}-{}", self.kind(), index + 1))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionChoice {
    Standard,
    Natural,
    Phi(Vec<Sign>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidityExpectation {
    Valid,
    Invalid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Irreducible,
    Reducible,
}

/// Inducing data, referenced by construction name.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    ImaginaryVerma {
        lambda: Vec<Rational>,
        charge: Rational,
    },
    LoopFock {
        lambda: Vec<Rational>,
        charge: Rational,
        #[serde(default = "standard")]
        triangular: TriangularSpec,
    },
    LeviTensor {
        omega: Vec<usize>,
        lambda: Vec<Rational>,
        charge: Rational,
    },
    PartialHeisenberg {
        oscillators: Vec<usize>,
        lambda: Vec<Rational>,
        charge: Rational,
    },
}

fn standard() -> TriangularSpec {
    TriangularSpec::Standard
}

pub fn parse(text: &str) -> Result<ExperimentSpec> {
    let spec: ExperimentSpec = serde_json::from_str(text).context("malformed experiment file")?;
    spec.algebra()?;
    Ok(spec)
}

impl ExperimentSpec {
    pub fn cartan(&self) -> Result<CartanType> {
        self.algebra.cartan.parse().with_context(|| format!("algebra.type = {:?}", self.algebra.cartan))
    }

    pub fn algebra(&self) -> Result<AffineAlgebra> {
        if self.algebra.k < 0 {
            bail!("algebra.K must be non-negative");
        }
        Ok(AffineAlgebra::new(self.cartan()?))
    }
}

/// Highest weight from `λ(h_i)` values and the charge, checking the rank.
pub fn highest(alg: &AffineAlgebra, lambda: &[Rational], charge: &Rational) -> Result<HighestWeight> {
    if lambda.len() != alg.rank() {
        bail!("lambda has {} entries, rank is {}", lambda.len(), alg.rank());
    }
    Ok(HighestWeight::new(lambda.iter().map(|x| x.0.clone()).collect(), Default::default(), charge.0.clone()))
}

/// Converts 1-based simple-root indices to 0-based ones.
pub fn omega(alg: &AffineAlgebra, omega: &[usize]) -> Result<Vec<usize>> {
    omega
        .iter()
        .map(|&i| {
            if i == 0 || i > alg.rank() {
                bail!("omega index {i} outside 1..={}", alg.rank());
            }
            Ok(i - 1)
        })
        .collect()
}

pub fn build_module(t: CartanType, spec: &ModuleSpec, trunc: Truncation) -> Result<Arc<InducedModule>> {
    let alg = AffineAlgebra::new(t);
    let m = match spec {
        ModuleSpec::ImaginaryVerma { lambda, charge } => imaginary_verma(t, highest(&alg, lambda, charge)?, trunc)?,
        ModuleSpec::LoopFock { lambda, charge, triangular } => {
            loop_fock(t, triangular.clone(), highest(&alg, lambda, charge)?, trunc)?
        }
        ModuleSpec::LeviTensor { omega: om, lambda, charge } => {
            levi_tensor_fock(t, &omega(&alg, om)?, highest(&alg, lambda, charge)?, trunc)?
        }
        ModuleSpec::PartialHeisenberg { oscillators, lambda, charge } => {
            partial_heisenberg(t, oscillators, highest(&alg, lambda, charge)?, trunc)?
        }
    };
    Ok(Arc::new(m))
}
