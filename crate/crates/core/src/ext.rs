//! Extension groups between persistence modules.
//!
//! The main route applies `Hom(-, N)` to a minimal projective resolution of `M` and uses
//! `Hom(P_v, N) ≅ N_v`. Two independent routes cross-check it: the first-order
//! deformation complex (degrees 0 and 1) and, for the constant module, the cohomology of
//! the order complex.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldSpec};
use crate::pmodule::linear::{add_sandwich, BlockLayout};
use crate::pmodule::{self, PModule};
use crate::poset::{nerve_cohomology_dims, Poset};
use crate::resolution::{global_dimension, minimal_resolution, ProjectiveResolution};

/// The cochain complex `Hom(P⁰, N) → Hom(P¹, N) → …`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    /// `dims[i] = dim Hom(P^i, N) = Σ_k dim N(v_k)`.
    pub dims: Vec<usize>,
    /// `coboundaries[i]` maps `Hom(P^i, N) → Hom(P^{i+1}, N)`.
    pub coboundaries: Vec<ExactMatrix>,
}

impl HomComplex {
    pub fn cohomology_dims(&self, max_degree: usize) -> Vec<usize> {
        let ranks: Vec<usize> = self.coboundaries.iter().map(ExactMatrix::rank).collect();
        (0..=max_degree)
            .map(|i| {
                let c = self.dims.get(i).copied().unwrap_or(0);
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i == 0 { 0 } else { ranks.get(i - 1).copied().unwrap_or(0) };
                c - out - inc
            })
            .collect()
    }
}

/// Applies `Hom(-, N)` to `res`. The block of the i-th coboundary from generator `l` of
/// `P^i` to generator `k` of `P^{i+1}` is `c[l][k] · N(v_l → u_k)`.
pub fn hom_complex(res: &ProjectiveResolution, n: &PModule) -> Result<HomComplex> {
    let f = n.field();
    let steps = res.steps();
    let dims: Vec<usize> = steps.iter().map(|g| g.iter().map(|&v| n.dim(v)).sum()).collect();
    let mut maps: HashMap<(usize, usize), ExactMatrix> = HashMap::new();
    let mut coboundaries = Vec::new();
    for i in 1..steps.len() {
        let (prev, next) = (&steps[i - 1], &steps[i]);
        let c = res.differential(i);
        let prev_off = offsets(prev.iter().map(|&v| n.dim(v)));
        let next_off = offsets(next.iter().map(|&v| n.dim(v)));
        let mut d = ExactMatrix::zeros(f, dims[i], dims[i - 1]);
        for (k, &u) in next.iter().enumerate() {
            for (l, &v) in prev.iter().enumerate() {
                let coef = c.get(l, k);
                if f.is_zero(coef) || n.dim(v) == 0 || n.dim(u) == 0 {
                    continue;
                }
                if let Entry::Vacant(e) = maps.entry((v, u)) {
                    e.insert(n.composite(v, u)?);
                }
                d.write_block(next_off[k], prev_off[l], &maps[&(v, u)].scale(coef));
            }
        }
        coboundaries.push(d);
    }
    Ok(HomComplex { dims, coboundaries })
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// `dim Ext^i(M, N)` for `i = 0 ..= max_degree`.
pub fn ext_dims(m: &PModule, n: &PModule, max_degree: usize) -> Result<Vec<usize>> {
    m.require_same_base(n)?;
    n.require_valid()?;
    let res = minimal_resolution(m, None)?;
    Ok(hom_complex(&res, n)?.cohomology_dims(max_degree))
}

/// Three-term complex of first-order deformations:
/// `⊕_v Hom(M_v, N_v) → ⊕_{covers} Hom(M_p, N_q) → ⊕_{relations} Hom(M_p, N_q)`.
#[derive(Clone, Debug)]
pub struct DeformationComplex {
    pub gauge: ExactMatrix,
    pub linearized_relations: ExactMatrix,
}

impl DeformationComplex {
    pub fn vertex_dim(&self) -> usize {
        self.gauge.cols()
    }

    pub fn arrow_dim(&self) -> usize {
        self.gauge.rows()
    }

    pub fn hom_dim(&self) -> usize {
        self.vertex_dim() - self.gauge.rank()
    }

    /// Cocycles modulo the gauge image.
    pub fn ext1_dim(&self) -> usize {
        self.arrow_dim() - self.linearized_relations.rank() - self.gauge.rank()
    }
}

/// Builds the deformation complex. Each relation "path A = path B" from `p` to `q` is
/// linearized by the Leibniz rule: `Σ_t N(after t) · ε_t · M(before t)` over the arrows
/// of A, minus the same sum over B.
pub fn deformation_complex(m: &PModule, n: &PModule) -> Result<DeformationComplex> {
    m.require_same_base(n)?;
    let poset = m.poset();
    let f = m.field();
    let (gauge, _, arrows) = pmodule::gauge_map(m, n);
    let relations = poset.commutativity_relations()?;
    let rel_layout = BlockLayout::new(relations.iter().map(|r| (n.dim(r.target()), m.dim(r.source()))).collect());
    let mut d1 = ExactMatrix::zeros(f, rel_layout.total(), arrows.total());
    for (ri, rel) in relations.iter().enumerate() {
        let row = rel_layout.offset(ri);
        for (path, sign) in [(&rel.reference, 1), (&rel.other, -1)] {
            for t in 0..path.len() - 1 {
                let arrow = poset.cover_index(path[t], path[t + 1]).expect("relations follow covers");
                let after = n.composite_along(&path[t + 1..]);
                let before = m.composite_along(&path[..=t]);
                add_sandwich(&mut d1, row, arrows.offset(arrow), &after, &before, sign);
            }
        }
    }
    Ok(DeformationComplex {
        gauge,
        linearized_relations: d1,
    })
}

pub fn ext1_deformation_complex(m: &PModule, n: &PModule) -> Result<usize> {
    Ok(deformation_complex(m, n)?.ext1_dim())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MitchellCheck {
    pub ext: Vec<usize>,
    pub nerve: Vec<usize>,
    pub agree: bool,
}

/// Compares `Ext*(k, k)` of the constant module with `H*(|P|, k)`.
pub fn mitchell_check(poset: &Arc<Poset>, field: FieldSpec, max_degree: usize) -> Result<MitchellCheck> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let k = PModule::interval_full(poset, field);
    let ext = ext_dims(&k, &k, max_degree)?;
    let nerve = nerve_cohomology_dims(&poset.order_complex(), field, max_degree);
    Ok(MitchellCheck {
        agree: ext == nerve,
        ext,
        nerve,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerMobiusEntry {
    pub p: String,
    pub q: String,
    pub ext: Vec<usize>,
    pub euler: i64,
    pub mobius: i64,
    pub agree: bool,
}

/// For every `p ≤ q`, `Σ_i (-1)^i dim Ext^i(S_p, S_q)` against `μ(p, q)`.
pub fn euler_mobius_check(poset: &Arc<Poset>, field: FieldSpec) -> Result<Vec<EulerMobiusEntry>> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let simples: Vec<PModule> = (0..poset.len())
        .map(|v| PModule::simple(poset, field, v))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for p in 0..poset.len() {
        let res = minimal_resolution(&simples[p], None)?;
        let top = res.length().unwrap_or(0);
        let mobius = poset.mobius_row(p);
        for q in 0..poset.len() {
            if !poset.leq(p, q) {
                continue;
            }
            let ext = hom_complex(&res, &simples[q])?.cohomology_dims(top);
            let euler = ext
                .iter()
                .enumerate()
                .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum();
            out.push(EulerMobiusEntry {
                p: poset.id(p).to_string(),
                q: poset.id(q).to_string(),
                ext,
                euler,
                mobius: mobius[q],
                agree: euler == mobius[q],
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Rigid,
    SmoothUnobstructed,
    PotentiallyObstructed,
}

impl Classification {
    /// A nonzero obstruction space takes precedence over a vanishing tangent space.
    pub fn from_dims(tangent_dim: usize, obstruction_dim: usize) -> Self {
        if obstruction_dim > 0 {
            Classification::PotentiallyObstructed
        } else if tangent_dim == 0 {
            Classification::Rigid
        } else {
            Classification::SmoothUnobstructed
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Rigid => "rigid",
            Classification::SmoothUnobstructed => "smooth_unobstructed",
            Classification::PotentiallyObstructed => "potentially_obstructed",
        }
    }
}

/// Ext dimensions for a pair of modules; self-Ext reports also carry the classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtReport {
    pub source: String,
    pub target: String,
    pub field: String,
    pub dims: Vec<usize>,
    pub classification: Option<Classification>,
    pub tangent_dim: Option<usize>,
    pub obstruction_dim: Option<usize>,
}

impl ExtReport {
    pub fn pair(source: &str, target: &str, field: FieldSpec, dims: Vec<usize>) -> Self {
        Self {
            source: source.to_string(),
            target: target.to_string(),
            field: field.to_string(),
            dims,
            classification: None,
            tangent_dim: None,
            obstruction_dim: None,
        }
    }
}

/// Self-Ext up to the global dimension of the poset, classified by `dim Ext¹` (tangent
/// space) and `dim Ext²` (obstruction space).
pub fn rigidity_report(m: &PModule, label: &str) -> Result<ExtReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let gl = global_dimension(m.poset(), m.field())?;
    let dims = ext_dims(m, m, gl)?;
    let tangent = dims.get(1).copied().unwrap_or(0);
    let obstruction = dims.get(2).copied().unwrap_or(0);
    Ok(ExtReport {
        classification: Some(Classification::from_dims(tangent, obstruction)),
        tangent_dim: Some(tangent),
        obstruction_dim: Some(obstruction),
        ..ExtReport::pair(label, label, m.field(), dims)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: FieldSpec = FieldSpec::Prime(32003);

    fn square() -> Arc<Poset> {
        Arc::new(Poset::grid(1))
    }

    fn simple(p: &Arc<Poset>, i: usize, j: usize) -> PModule {
        PModule::simple(p, F, p.grid_vertex(i, j).unwrap()).unwrap()
    }

    #[test]
    fn square_examples() {
        let sq = square();
        let full = PModule::interval_full(&sq, F);
        assert_eq!(ext_dims(&full, &full, 2).unwrap(), [1, 0, 0]);
        let triv = PModule::trivial_ones(&sq, F);
        assert_eq!(ext_dims(&triv, &triv, 2).unwrap()[1], 4);
        let m = simple(&sq, 0, 0).direct_sum(&simple(&sq, 1, 0)).unwrap();
        assert_eq!(ext_dims(&m, &m, 2).unwrap()[1], 1);
        let hook = PModule::hook(&sq, F).unwrap();
        assert_eq!(ext_dims(&hook, &hook, 2).unwrap(), [1, 0, 0]);
        let m = simple(&sq, 0, 0).direct_sum(&simple(&sq, 1, 1)).unwrap();
        assert_eq!(ext_dims(&m, &m, 2).unwrap()[2], 1);
    }

    #[test]
    fn trivial_module_also_has_an_obstruction() {
        // trivial_ones is the sum of all four simples, so it contains Ext²(S00, S11) = k.
        let sq = square();
        let triv = PModule::trivial_ones(&sq, F);
        assert_eq!(ext_dims(&triv, &triv, 3).unwrap(), [4, 4, 1, 0]);
    }

    #[test]
    fn diagonal_obstructions_grow() {
        for n in 1..=3 {
            let g = Arc::new(Poset::grid(n));
            let d = PModule::diagonal(&g, F).unwrap();
            assert_eq!(ext_dims(&d, &d, 2).unwrap()[2], n);
        }
    }

    #[test]
    fn deformation_examples() {
        let sq = square();
        let full = PModule::interval_full(&sq, F);
        let dc = deformation_complex(&full, &full).unwrap();
        assert_eq!(dc.ext1_dim(), 0);
        // One linear equation on four arrow parameters, and a 3-dimensional gauge image.
        assert_eq!(dc.arrow_dim() - dc.linearized_relations.rank(), 3);
        assert_eq!(dc.gauge.rank(), 3);
        let triv = PModule::trivial_ones(&sq, F);
        assert_eq!(ext1_deformation_complex(&triv, &triv).unwrap(), 4);
        let hook = PModule::hook(&sq, F).unwrap();
        assert_eq!(ext1_deformation_complex(&hook, &hook).unwrap(), 0);
    }

    #[test]
    fn deformation_complex_is_a_complex() {
        let sq = square();
        let full = PModule::interval_full(&sq, F);
        let dc = deformation_complex(&full, &full).unwrap();
        assert!(dc.linearized_relations.mul(&dc.gauge).is_zero());
    }

    #[test]
    fn mitchell_examples() {
        let chain = Arc::new(Poset::chain(1));
        let c = mitchell_check(&chain, F, 1).unwrap();
        assert_eq!((c.ext.as_slice(), c.agree), ([1, 0].as_slice(), true));
        for n in 1..=2 {
            let c = mitchell_check(&Arc::new(Poset::grid(n)), F, 2).unwrap();
            assert_eq!(c.ext, [1, 0, 0]);
            assert!(c.agree);
        }
    }

    #[test]
    fn mitchell_on_a_circle() {
        let crown = Arc::new(
            Poset::from_covers(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap(),
        );
        let c = mitchell_check(&crown, FieldSpec::Rational, 2).unwrap();
        assert_eq!(c.ext, [1, 1, 0]);
        assert!(c.agree);
    }

    #[test]
    fn euler_examples() {
        let sq = square();
        let rows = euler_mobius_check(&sq, F).unwrap();
        let find = |p: &str, q: &str| rows.iter().find(|r| r.p == p && r.q == q).unwrap().clone();
        let r = find("(0,0)", "(1,1)");
        assert_eq!((r.ext, r.euler, r.mobius), (vec![0, 0, 1], 1, 1));
        let r = find("(0,0)", "(1,0)");
        assert_eq!((&r.ext[..2], r.euler, r.mobius), (&[0, 1][..], -1, -1));
        let r = find("(1,0)", "(1,0)");
        assert_eq!((r.ext[0], r.euler), (1, 1));
        assert!(rows.iter().all(|r| r.agree));
    }

    #[test]
    fn classification_precedence() {
        assert_eq!(Classification::from_dims(0, 0), Classification::Rigid);
        assert_eq!(Classification::from_dims(4, 0), Classification::SmoothUnobstructed);
        assert_eq!(Classification::from_dims(0, 1), Classification::PotentiallyObstructed);
        assert_eq!(Classification::from_dims(4, 1), Classification::PotentiallyObstructed);
    }

    #[test]
    fn reports() {
        let sq = square();
        let r = rigidity_report(&PModule::interval_full(&sq, F), "full").unwrap();
        assert_eq!(r.classification, Some(Classification::Rigid));
        let m = simple(&sq, 0, 0).direct_sum(&simple(&sq, 1, 1)).unwrap();
        let r = rigidity_report(&m, "m").unwrap();
        assert_eq!(r.classification, Some(Classification::PotentiallyObstructed));
        assert_eq!(r.obstruction_dim, Some(1));
        assert_eq!(r.tangent_dim, Some(0));
        let m = simple(&sq, 0, 0).direct_sum(&simple(&sq, 1, 0)).unwrap();
        let r = rigidity_report(&m, "m").unwrap();
        assert_eq!(r.classification, Some(Classification::SmoothUnobstructed));
        assert_eq!(rigidity_report(&PModule::zero(&sq, F), "0"), Err(Error::ZeroModule));
    }

    #[test]
    fn mismatched_bases() {
        let a = PModule::interval_full(&square(), F);
        let b = PModule::interval_full(&square(), FieldSpec::Rational);
        assert_eq!(ext_dims(&a, &b, 1), Err(Error::Mismatch));
        assert!(matches!(deformation_complex(&a, &b), Err(Error::Mismatch)));
    }
}
