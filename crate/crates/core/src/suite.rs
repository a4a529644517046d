//! Batch of the reference computations on the square and small grids, each compared
//! with its expected value.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactfield::FieldSpec;
use crate::ext::{ext1_deformation_complex, ext_dims};
use crate::pmodule::PModule;
use crate::poset::Poset;
use crate::resolution::{global_dimension, minimal_resolution, render_sum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteLine {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

fn line(claim: &str, expected: String, computed: String) -> SuiteLine {
    SuiteLine {
        claim: claim.to_string(),
        pass: expected == computed,
        expected,
        computed,
    }
}

fn dims_str(d: &[usize]) -> String {
    format!("({})", d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

fn simple(p: &Arc<Poset>, f: FieldSpec, i: usize, j: usize) -> Result<PModule> {
    PModule::simple(p, f, p.grid_vertex(i, j).expect("grid vertex"))
}

fn rigid_interval(f: FieldSpec) -> Result<SuiteLine> {
    let sq = Arc::new(Poset::grid(1));
    let m = PModule::interval_full(&sq, f);
    let dims = ext_dims(&m, &m, 2)?;
    let def = ext1_deformation_complex(&m, &m)?;
    Ok(line(
        "full interval module on the square is rigid",
        "Ext=(1,0,0) deformation Ext^1=0".into(),
        format!("Ext={} deformation Ext^1={def}", dims_str(&dims)),
    ))
}

fn trivial_tangent(f: FieldSpec) -> Result<SuiteLine> {
    let sq = Arc::new(Poset::grid(1));
    let m = PModule::trivial_ones(&sq, f);
    let dims = ext_dims(&m, &m, 1)?;
    let def = ext1_deformation_complex(&m, &m)?;
    Ok(line(
        "trivial module on the square has Ext^1 = k^4",
        "Ext^1=4 deformation Ext^1=4".into(),
        format!("Ext^1={} deformation Ext^1={def}", dims[1]),
    ))
}

fn adjacent_simples(f: FieldSpec) -> Result<SuiteLine> {
    let sq = Arc::new(Poset::grid(1));
    let (a, b) = (simple(&sq, f, 0, 0)?, simple(&sq, f, 1, 0)?);
    let m = a.direct_sum(&b)?;
    let e1 = |x: &PModule, y: &PModule| ext_dims(x, y, 1).map(|d| d[1]);
    Ok(line(
        "S_(0,0) + S_(1,0) has a one-dimensional tangent space",
        "Ext^1=1 [00,10]=1 [00,00]=0 [10,10]=0 [10,00]=0".into(),
        format!(
            "Ext^1={} [00,10]={} [00,00]={} [10,10]={} [10,00]={}",
            e1(&m, &m)?,
            e1(&a, &b)?,
            e1(&a, &a)?,
            e1(&b, &b)?,
            e1(&b, &a)?
        ),
    ))
}

fn hook_rigid(f: FieldSpec) -> Result<SuiteLine> {
    let sq = Arc::new(Poset::grid(1));
    let m = PModule::hook(&sq, f)?;
    let res = minimal_resolution(&m, None)?;
    let steps: Vec<String> = res.steps().iter().map(|s| render_sum(&sq, s)).collect();
    let dims = ext_dims(&m, &m, 2)?;
    Ok(line(
        "hook module on the square is rigid with projective dimension 1",
        "pd=1 resolution=[P_(0,0); P_(0,1)] Ext=(1,0,0)".into(),
        format!(
            "pd={} resolution=[{}] Ext={}",
            res.length().unwrap_or(0),
            steps.join("; "),
            dims_str(&dims)
        ),
    ))
}

fn square_global_dimension(f: FieldSpec) -> Result<SuiteLine> {
    let sq = Arc::new(Poset::grid(1));
    let res = minimal_resolution(&simple(&sq, f, 0, 0)?, None)?;
    let steps: Vec<String> = res.steps().iter().map(|s| render_sum(&sq, s)).collect();
    Ok(line(
        "the square has global dimension exactly 2",
        "gl.dim=2 resolution of S_(0,0)=[P_(0,0); P_(1,0) ⊕ P_(0,1); P_(1,1)]".into(),
        format!(
            "gl.dim={} resolution of S_(0,0)=[{}]",
            global_dimension(&sq, f)?,
            steps.join("; ")
        ),
    ))
}

fn square_obstruction(f: FieldSpec) -> Result<SuiteLine> {
    let sq = Arc::new(Poset::grid(1));
    let (a, b) = (simple(&sq, f, 0, 0)?, simple(&sq, f, 1, 1)?);
    let m = a.direct_sum(&b)?;
    let e2 = |x: &PModule, y: &PModule| ext_dims(x, y, 2).map(|d| d[2]);
    Ok(line(
        "S_(0,0) + S_(1,1) carries an obstruction class",
        "Ext^2=1 [11,00]=0 [11,11]=0 [00,00]=0 [00,11]=1".into(),
        format!(
            "Ext^2={} [11,00]={} [11,11]={} [00,00]={} [00,11]={}",
            e2(&m, &m)?,
            e2(&b, &a)?,
            e2(&b, &b)?,
            e2(&a, &a)?,
            e2(&a, &b)?
        ),
    ))
}

fn growing_obstructions(f: FieldSpec) -> Result<SuiteLine> {
    let mut computed = Vec::new();
    for n in 1..=3 {
        let g = Arc::new(Poset::grid(n));
        let m = PModule::diagonal(&g, f)?;
        computed.push(format!("n={n}:{}", ext_dims(&m, &m, 2)?[2]));
    }
    Ok(line(
        "diagonal modules on grids have obstruction spaces of dimension n",
        "n=1:1 n=2:2 n=3:3".into(),
        computed.join(" "),
    ))
}

type Check = fn(FieldSpec) -> Result<SuiteLine>;

const CHECKS: [Check; 7] = [
    rigid_interval,
    trivial_tangent,
    adjacent_simples,
    hook_rigid,
    square_global_dimension,
    square_obstruction,
    growing_obstructions,
];

/// Runs all reference checks in parallel; lines come back in a fixed order.
pub fn reference_suite(field: FieldSpec) -> Result<Vec<SuiteLine>> {
    CHECKS.par_iter().map(|check| check(field)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_lines_pass_in_every_shipped_field() {
        for f in [FieldSpec::Prime(32003), FieldSpec::Prime(2), FieldSpec::Rational] {
            let lines = reference_suite(f).unwrap();
            assert_eq!(lines.len(), 7);
            for l in &lines {
                assert!(l.pass, "{f}: {l:?}");
            }
        }
    }
}
