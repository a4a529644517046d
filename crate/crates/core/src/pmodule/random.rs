use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use super::linear::{add_sandwich, BlockLayout};
use super::PModule;
use crate::exactfield::{ExactMatrix, FieldSpec, Scalar};
use crate::poset::Poset;

fn random_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Prime(p) => Scalar::Mod(rng.random_range(0..p)),
        FieldSpec::Rational => field.from_i64(rng.random_range(-2..=2)),
    }
}

/// A random valid module with `dims(v) ≤ max_dim`.
///
/// Elements are visited in topological order. At each element `q` the maps on the covers
/// into `q` are unknown while everything below is fixed, so commutativity becomes a linear
/// system `X_r·M(p→r) = X_s·M(p→s)` over pairs of lower covers `r, s` of `q` above a common
/// `p`. The maps are a random combination of a basis of its solution space.
pub fn random_module<R: Rng>(rng: &mut R, poset: &Arc<Poset>, field: FieldSpec, max_dim: usize) -> PModule {
    let n = poset.len();
    let dims: Vec<usize> = (0..n).map(|_| rng.random_range(0..=max_dim)).collect();
    let mut maps: HashMap<(usize, usize), ExactMatrix> = HashMap::new();
    // composites[(p, r)] = M(p → r) for p ≤ r already fixed.
    let mut composites: HashMap<(usize, usize), ExactMatrix> = HashMap::new();

    for &q in poset.topological_order() {
        composites.insert((q, q), ExactMatrix::identity(field, dims[q]));
        let lower = poset.lower_covers(q);
        if lower.is_empty() {
            continue;
        }
        let unknowns = BlockLayout::new(lower.iter().map(|&r| (dims[q], dims[r])).collect());

        let mut rows: Vec<ExactMatrix> = Vec::new();
        for p in 0..n {
            let above: Vec<usize> = (0..lower.len()).filter(|&i| poset.leq(p, lower[i])).collect();
            if above.len() < 2 || dims[p] == 0 {
                continue;
            }
            let first = above[0];
            for &other in &above[1..] {
                let mut block = ExactMatrix::zeros(field, dims[q] * dims[p], unknowns.total());
                let eye = ExactMatrix::identity(field, dims[q]);
                add_sandwich(&mut block, 0, unknowns.offset(first), &eye, &composites[&(p, lower[first])], 1);
                add_sandwich(&mut block, 0, unknowns.offset(other), &eye, &composites[&(p, lower[other])], -1);
                rows.push(block);
            }
        }
        let system = rows
            .into_iter()
            .reduce(|a, b| a.vstack(&b))
            .unwrap_or_else(|| ExactMatrix::zeros(field, 0, unknowns.total()));
        let basis = system.kernel_basis();
        let coeffs: Vec<Scalar> = (0..basis.cols()).map(|_| random_scalar(rng, field)).collect();
        let solution = basis.mul_vec(&coeffs);
        for (i, m) in unknowns.unflatten(&solution, field).into_iter().enumerate() {
            maps.insert((lower[i], q), m);
        }

        for p in 0..n {
            if let Some(&r) = lower.iter().find(|&&r| poset.leq(p, r)) {
                let c = maps[&(r, q)].mul(&composites[&(p, r)]);
                composites.insert((p, q), c);
            }
        }
    }

    let ordered = poset.covers().iter().map(|c| maps.remove(c).unwrap()).collect();
    PModule::new(poset.clone(), field, dims, ordered).expect("shapes follow dims")
}
