//! Minimal projective resolutions over the incidence algebra.
//!
//! A sum of indecomposable projectives `⊕_k P_{v_k}` is recorded by its generator list
//! `[v_0, v_1, …]`. Since `Hom(P_u, P_v) = k` when `v ≤ u` and zero otherwise, a map
//! `⊕_k P_{u_k} → ⊕_l P_{v_l}` is a scalar matrix `c` with `c[l][k]` the coefficient of
//! `e_{v_l, u_k}` in the image of generator `k`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldSpec};
use crate::pmodule::{generator_position, projective_sum, ModuleMorphism, PModule};
use crate::poset::Poset;

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub cover: PModule,
    pub epi: ModuleMorphism,
    pub generators: Vec<usize>,
}

/// `⊕_v P_v^{top(M)_v} → M`, each generator sent to a top basis vector of `M`.
pub fn projective_cover(m: &PModule) -> Result<ProjectiveCover> {
    let poset = m.poset();
    let f = m.field();
    let mut generators = Vec::new();
    let mut lifts = Vec::new();
    for v in 0..poset.len() {
        for t in m.top_basis(v) {
            generators.push(v);
            lifts.push(t);
        }
    }
    let cover = projective_sum(poset, f, &generators);
    let mut maps: HashMap<(usize, usize), ExactMatrix> = HashMap::new();
    let mut components = Vec::with_capacity(poset.len());
    for w in 0..poset.len() {
        let mut cols = Vec::new();
        for (k, &v) in generators.iter().enumerate() {
            if !poset.leq(v, w) {
                continue;
            }
            if let Entry::Vacant(e) = maps.entry((v, w)) {
                e.insert(m.composite(v, w)?);
            }
            cols.push(maps[&(v, w)].mul_vec(&lifts[k]));
        }
        components.push(ExactMatrix::from_columns(f, m.dim(w), &cols));
    }
    let epi = ModuleMorphism::new(cover.clone(), m.clone(), components)?;
    Ok(ProjectiveCover {
        cover,
        epi,
        generators,
    })
}

/// `0 ← M ← P⁰ ← P¹ ← … ← Pⁿ ← 0`.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    poset: Arc<Poset>,
    field: FieldSpec,
    steps: Vec<Vec<usize>>,
    /// `differentials[i]` is `d_{i+1}: P^{i+1} → P^i`, of shape `|steps[i]| × |steps[i+1]|`.
    differentials: Vec<ExactMatrix>,
    augmentation: ModuleMorphism,
}

impl ProjectiveResolution {
    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Generator vertices of each `P^i`. Empty for the zero module.
    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    /// Number of nonzero differentials; `None` for the zero module.
    pub fn length(&self) -> Option<usize> {
        self.steps.len().checked_sub(1)
    }

    /// Scalar matrix of `d_i: P^i → P^{i-1}`, for `1 ≤ i ≤ length`.
    pub fn differential(&self, i: usize) -> &ExactMatrix {
        &self.differentials[i - 1]
    }

    pub fn augmentation(&self) -> &ModuleMorphism {
        &self.augmentation
    }

    pub fn projective(&self, i: usize) -> PModule {
        match self.steps.get(i) {
            Some(gens) => projective_sum(&self.poset, self.field, gens),
            None => PModule::zero(&self.poset, self.field),
        }
    }

    /// `d_i` realized as a morphism of modules.
    pub fn differential_morphism(&self, i: usize) -> Result<ModuleMorphism> {
        incidence_morphism(
            &self.poset,
            self.field,
            &self.steps[i],
            &self.steps[i - 1],
            self.differential(i),
        )
    }

    /// No differential has a nonzero coefficient on `e_{v,v}`.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().enumerate().all(|(i, d)| {
            let (tgt, src) = (&self.steps[i], &self.steps[i + 1]);
            (0..tgt.len()).all(|l| (0..src.len()).all(|k| tgt[l] != src[k] || self.field.is_zero(d.get(l, k))))
        })
    }

    /// Text rendering: one line per `P^i` and one formal sum per generator image.
    pub fn render(&self) -> String {
        let p = &self.poset;
        let mut out = String::new();
        if self.steps.is_empty() {
            out.push_str("0 (zero module)\n");
            return out;
        }
        for (i, gens) in self.steps.iter().enumerate() {
            let _ = writeln!(out, "P^{i} = {}", render_sum(p, gens));
        }
        for i in 1..self.steps.len() {
            let d = self.differential(i);
            let (src, tgt) = (&self.steps[i], &self.steps[i - 1]);
            for (k, &u) in src.iter().enumerate() {
                let terms: Vec<(String, bool)> = (0..tgt.len())
                    .filter(|&l| !self.field.is_zero(d.get(l, k)))
                    .map(|l| {
                        let c = d.get(l, k);
                        let neg = c.is_negative_in(self.field);
                        let mag = if neg { self.field.neg(c) } else { c.clone() };
                        let coef = if mag.is_one() {
                            String::new()
                        } else {
                            format!("{}·", self.field.format(&mag))
                        };
                        (format!("{coef}e_{{{},{}}}", p.id(tgt[l]), p.id(u)), neg)
                    })
                    .collect();
                let mut expr = String::new();
                for (j, (t, neg)) in terms.iter().enumerate() {
                    match (j, neg) {
                        (0, false) => expr.push_str(t),
                        (0, true) => expr.push_str(&format!("-{t}")),
                        (_, false) => expr.push_str(&format!(" + {t}")),
                        (_, true) => expr.push_str(&format!(" - {t}")),
                    }
                }
                if expr.is_empty() {
                    expr.push('0');
                }
                let _ = writeln!(out, "d_{i}(g{k} @ {}) = {expr}", p.id(u));
            }
        }
        out
    }
}

pub fn render_sum(poset: &Poset, gens: &[usize]) -> String {
    if gens.is_empty() {
        return "0".into();
    }
    gens.iter()
        .map(|&v| format!("P_{}", poset.id(v)))
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

/// Module morphism `⊕_k P_{source[k]} → ⊕_l P_{target[l]}` with scalar matrix `c`.
pub fn incidence_morphism(
    poset: &Arc<Poset>,
    field: FieldSpec,
    source: &[usize],
    target: &[usize],
    c: &ExactMatrix,
) -> Result<ModuleMorphism> {
    let src = projective_sum(poset, field, source);
    let tgt = projective_sum(poset, field, target);
    let components = (0..poset.len())
        .map(|w| {
            let mut comp = ExactMatrix::zeros(field, tgt.dim(w), src.dim(w));
            for k in 0..source.len() {
                let Some(col) = generator_position(poset, source, w, k) else {
                    continue;
                };
                for l in 0..target.len() {
                    if let Some(row) = generator_position(poset, target, w, l) {
                        comp.set(row, col, c.get(l, k).clone());
                    }
                }
            }
            comp
        })
        .collect();
    ModuleMorphism::new(src, tgt, components)
}

/// Default bound on resolution length: longest chain plus one.
pub fn default_max_len(poset: &Poset) -> usize {
    poset.longest_chain_length() + 1
}

/// Iterated projective covers of successive kernels until the kernel vanishes.
pub fn minimal_resolution(m: &PModule, max_len: Option<usize>) -> Result<ProjectiveResolution> {
    m.require_valid()?;
    let poset = m.poset().clone();
    let field = m.field();
    let max_len = max_len.unwrap_or_else(|| default_max_len(&poset));

    if m.is_zero() {
        return Ok(ProjectiveResolution {
            augmentation: ModuleMorphism::zero(&PModule::zero(&poset, field), m)?,
            poset,
            field,
            steps: Vec::new(),
            differentials: Vec::new(),
        });
    }

    let first = projective_cover(m)?;
    let augmentation = first.epi.clone();
    let mut steps = vec![first.generators.clone()];
    let mut differentials = Vec::new();
    let (mut kernel, mut inclusion) = first.epi.kernel()?;

    while !kernel.is_zero() {
        if steps.len() > max_len {
            return Err(Error::NonTermination(max_len));
        }
        let cover = projective_cover(&kernel)?;
        let into_prev = cover.epi.then(&inclusion)?;
        let prev = steps.last().unwrap();
        let gens = &cover.generators;
        let mut d = ExactMatrix::zeros(field, prev.len(), gens.len());
        for (k, &u) in gens.iter().enumerate() {
            let pos = generator_position(&poset, gens, u, k).expect("generator lives at its vertex");
            let image = into_prev.component(u).column(pos);
            for l in 0..prev.len() {
                if let Some(row) = generator_position(&poset, prev, u, l) {
                    d.set(l, k, image[row].clone());
                }
            }
        }
        differentials.push(d);
        steps.push(gens.clone());
        (kernel, inclusion) = cover.epi.kernel()?;
    }

    Ok(ProjectiveResolution {
        poset,
        field,
        steps,
        differentials,
        augmentation,
    })
}

pub fn projective_dimension(m: &PModule) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(minimal_resolution(m, None)?.length().expect("nonzero module"))
}

/// Largest projective dimension of a simple module.
pub fn global_dimension(poset: &Arc<Poset>, field: FieldSpec) -> Result<usize> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut best = 0;
    for v in 0..poset.len() {
        best = best.max(projective_dimension(&PModule::simple(poset, field, v)?)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: FieldSpec = FieldSpec::Prime(32003);

    fn grid(n: usize) -> Arc<Poset> {
        Arc::new(Poset::grid(n))
    }

    fn at(p: &Poset, i: usize, j: usize) -> usize {
        p.grid_vertex(i, j).unwrap()
    }

    #[test]
    fn covers() {
        let sq = grid(1);
        let s00 = PModule::simple(&sq, F, at(&sq, 0, 0)).unwrap();
        let c = projective_cover(&s00).unwrap();
        assert_eq!(c.generators, vec![at(&sq, 0, 0)]);
        assert!(c.epi.is_surjective());

        let p = PModule::projective(&sq, F, at(&sq, 1, 0)).unwrap();
        let c = projective_cover(&p).unwrap();
        assert_eq!(c.cover, p);
        assert_eq!(c.epi, ModuleMorphism::identity(&p));

        let c = projective_cover(&PModule::trivial_ones(&sq, F)).unwrap();
        assert_eq!(c.generators, vec![0, 1, 2, 3]);
    }

    #[test]
    fn source_simple_on_square() {
        let sq = grid(1);
        let r = minimal_resolution(&PModule::simple(&sq, F, at(&sq, 0, 0)).unwrap(), None).unwrap();
        assert_eq!(
            r.steps(),
            [vec![at(&sq, 0, 0)], vec![at(&sq, 1, 0), at(&sq, 0, 1)], vec![at(&sq, 1, 1)]]
        );
        assert_eq!(*r.differential(1), ExactMatrix::from_i64(F, 1, 2, &[1, 1]));
        assert_eq!(*r.differential(2), ExactMatrix::from_i64(F, 2, 1, &[1, -1]));
        assert!(r.render().contains("d_2(g0 @ (1,1)) = e_{(1,0),(1,1)} - e_{(0,1),(1,1)}"));
        assert!(r.is_minimal());
    }

    #[test]
    fn hook_resolution() {
        let sq = grid(1);
        let r = minimal_resolution(&PModule::hook(&sq, F).unwrap(), None).unwrap();
        assert_eq!(r.steps(), [vec![at(&sq, 0, 0)], vec![at(&sq, 0, 1)]]);
        assert_eq!(r.length(), Some(1));
    }

    #[test]
    fn diagonal_simples_on_grids() {
        for n in 1..=3 {
            let g = grid(n);
            for j in 0..n {
                let s = PModule::simple(&g, F, at(&g, j, j)).unwrap();
                let r = minimal_resolution(&s, None).unwrap();
                assert_eq!(
                    r.steps(),
                    [
                        vec![at(&g, j, j)],
                        vec![at(&g, j + 1, j), at(&g, j, j + 1)],
                        vec![at(&g, j + 1, j + 1)]
                    ]
                );
            }
        }
    }

    #[test]
    fn dimensions() {
        let sq = grid(1);
        assert_eq!(projective_dimension(&PModule::hook(&sq, F).unwrap()).unwrap(), 1);
        for v in 0..4 {
            assert_eq!(projective_dimension(&PModule::projective(&sq, F, v).unwrap()).unwrap(), 0);
        }
        assert_eq!(projective_dimension(&PModule::simple(&sq, F, 0).unwrap()).unwrap(), 2);
        assert_eq!(projective_dimension(&PModule::zero(&sq, F)), Err(Error::ZeroModule));

        assert_eq!(global_dimension(&sq, F).unwrap(), 2);
        assert_eq!(global_dimension(&Arc::new(Poset::chain(3)), F).unwrap(), 1);
        assert_eq!(global_dimension(&grid(2), F).unwrap(), 2);
        assert_eq!(global_dimension(&grid(0), F).unwrap(), 0);
    }

    #[test]
    fn zero_module_has_empty_resolution() {
        let r = minimal_resolution(&PModule::zero(&grid(1), F), None).unwrap();
        assert!(r.steps().is_empty());
        assert_eq!(r.length(), None);
    }

    #[test]
    fn max_len_is_enforced() {
        let sq = grid(1);
        let s = PModule::simple(&sq, F, 0).unwrap();
        assert_eq!(minimal_resolution(&s, Some(1)).unwrap_err(), Error::NonTermination(1));
        assert!(minimal_resolution(&s, Some(2)).is_ok());
    }

    #[test]
    fn invalid_module_rejected() {
        let sq = grid(1);
        let q = FieldSpec::Rational;
        let d = at(&sq, 1, 1);
        let b = at(&sq, 1, 0);
        let bad = PModule::new(
            sq.clone(),
            q,
            vec![1; 4],
            sq.covers()
                .iter()
                .map(|&c| {
                    let s = if c == (b, d) { 2 } else { 1 };
                    ExactMatrix::from_i64(q, 1, 1, &[s])
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(minimal_resolution(&bad, None).unwrap_err(), Error::InvalidModule(1));
    }
}
