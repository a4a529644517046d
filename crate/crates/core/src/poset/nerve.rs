use std::collections::HashMap;

use super::Poset;
use crate::exactfield::{ExactMatrix, FieldSpec};

/// Simplicial complex of strictly increasing chains `p0 < p1 < … < pd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderComplex {
    /// `simplices[d]` holds the d-simplices, each a chain listed bottom to top, sorted.
    simplices: Vec<Vec<Vec<usize>>>,
}

impl OrderComplex {
    pub fn new(poset: &Poset) -> Self {
        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut chain = Vec::new();
        for &p in poset.topological_order() {
            chain.push(p);
            extend(poset, &mut chain, &mut simplices);
            chain.pop();
        }
        for layer in &mut simplices {
            layer.sort();
        }
        Self { simplices }
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Coboundary `C^d → C^{d+1}`: rows indexed by (d+1)-simplices, columns by d-simplices.
    pub fn coboundary(&self, d: usize, field: FieldSpec) -> ExactMatrix {
        let lower = self.simplices(d);
        let upper = self.simplices(d + 1);
        let pos: HashMap<&[usize], usize> = lower.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut m = ExactMatrix::zeros(field, upper.len(), lower.len());
        for (r, s) in upper.iter().enumerate() {
            for omit in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v).collect();
                let c = pos[face.as_slice()];
                let sign = if omit % 2 == 0 { 1 } else { -1 };
                m.add_at(r, c, &field.from_i64(sign));
            }
        }
        m
    }
}

fn extend(poset: &Poset, chain: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
    let d = chain.len() - 1;
    if out.len() <= d {
        out.resize_with(d + 1, Vec::new);
    }
    out[d].push(chain.clone());
    let top = *chain.last().unwrap();
    for &q in poset.topological_order() {
        if poset.lt(top, q) {
            chain.push(q);
            extend(poset, chain, out);
            chain.pop();
        }
    }
}

/// Dimensions of `H^0 … H^max_degree` of the order complex over `field`.
pub fn nerve_cohomology_dims(complex: &OrderComplex, field: FieldSpec, max_degree: usize) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=max_degree).map(|d| complex.coboundary(d, field).rank()).collect();
    (0..=max_degree)
        .map(|d| {
            let cochains = complex.simplices(d).len();
            let incoming = if d == 0 { 0 } else { ranks[d - 1] };
            cochains - ranks[d] - incoming
        })
        .collect()
}
