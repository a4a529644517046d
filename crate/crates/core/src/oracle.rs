//! Seeded random cross-checks between independent computations of Hom and Ext.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactfield::FieldSpec;
use crate::ext::{ext1_deformation_complex, ext_dims};
use crate::pmodule::{hom_dim, random_module, PModule};
use crate::poset::Poset;
use crate::resolution::global_dimension;

pub const DEFAULT_MAX_DIM: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub cases: usize,
    pub failures: Vec<usize>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub field: String,
    pub seed: u64,
    pub cases: usize,
    pub global_dimension: usize,
    pub properties: Vec<PropertyOutcome>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyOutcome::passed)
    }
}

/// A corpus entry: modules `a`, `b`, `c` with `dims ≤ max_dim`.
#[derive(Clone, Debug)]
pub struct Case {
    pub a: PModule,
    pub b: PModule,
    pub c: PModule,
}

/// The corpus depends only on `(poset, field, seed, cases, max_dim)`.
pub fn corpus(poset: &Arc<Poset>, field: FieldSpec, seed: u64, cases: usize, max_dim: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases)
        .map(|_| Case {
            a: random_module(&mut rng, poset, field, max_dim),
            b: random_module(&mut rng, poset, field, max_dim),
            c: random_module(&mut rng, poset, field, max_dim),
        })
        .collect()
}

const PROPERTIES: [&str; 5] = [
    "ext1_resolution_eq_deformation",
    "hom_dim_eq_ext0",
    "projective_acyclicity",
    "additivity",
    "vanishing_above_global_dimension",
];

/// One flag per entry of `PROPERTIES`.
fn check_case(case: &Case, projectives: &[PModule], gl: usize) -> Result<[bool; 5]> {
    let Case { a, b, c } = case;
    let top = gl + 1;
    let ab = ext_dims(a, b, top)?;
    let ext1 = ab[1] == ext1_deformation_complex(a, b)?;
    let ext0 = ab[0] == hom_dim(a, b)?;
    let mut acyclic = true;
    for p in projectives {
        acyclic &= ext_dims(p, b, top)?[1..].iter().all(|&d| d == 0);
    }
    let sum = ext_dims(&a.direct_sum(c)?, b, 2)?;
    let ac = ext_dims(c, b, 2)?;
    let additive = (0..=2).all(|i| sum[i] == ab[i] + ac[i]);
    let vanishing = ab[gl + 1..].iter().all(|&d| d == 0);
    Ok([ext1, ext0, acyclic, additive, vanishing])
}

/// Runs every property on a seeded corpus. Cases are evaluated in parallel; results are
/// collected in corpus order, so the report depends only on the inputs.
pub fn run_oracle_check(poset: &Arc<Poset>, field: FieldSpec, seed: u64, cases: usize) -> Result<OracleReport> {
    let gl = global_dimension(poset, field)?;
    let projectives = (0..poset.len())
        .map(|v| PModule::projective(poset, field, v))
        .collect::<Result<Vec<_>>>()?;
    let corpus = corpus(poset, field, seed, cases, DEFAULT_MAX_DIM);
    let flags: Vec<[bool; 5]> = corpus
        .par_iter()
        .map(|case| check_case(case, &projectives, gl))
        .collect::<Result<_>>()?;
    let properties = PROPERTIES
        .iter()
        .enumerate()
        .map(|(k, name)| PropertyOutcome {
            property: name.to_string(),
            cases,
            failures: (0..cases).filter(|&i| !flags[i][k]).collect(),
        })
        .collect();
    Ok(OracleReport {
        field: field.to_string(),
        seed,
        cases,
        global_dimension: gl,
        properties,
    })
}
