use super::linear::{add_sandwich, BlockLayout};
use super::PModule;
use crate::error::{Error, Result};
use crate::exactfield::ExactMatrix;

/// A natural transformation between two modules over the same poset and field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: PModule,
    target: PModule,
    components: Vec<ExactMatrix>,
}

impl ModuleMorphism {
    /// Checks component shapes and naturality on every cover.
    pub fn new(source: PModule, target: PModule, components: Vec<ExactMatrix>) -> Result<Self> {
        source.require_same_base(&target)?;
        let poset = source.poset().clone();
        if components.len() != poset.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for {} elements",
                components.len(),
                poset.len()
            )));
        }
        for (v, c) in components.iter().enumerate() {
            if c.shape() != (target.dim(v), source.dim(v)) {
                return Err(Error::DimensionMismatch(format!(
                    "component at {} is {}x{}, expected {}x{}",
                    poset.id(v),
                    c.rows(),
                    c.cols(),
                    target.dim(v),
                    source.dim(v)
                )));
            }
        }
        for (i, &(p, q)) in poset.covers().iter().enumerate() {
            let lhs = target.maps()[i].mul(&components[p]);
            let rhs = components[q].mul(&source.maps()[i]);
            if lhs != rhs {
                return Err(Error::NotNatural(poset.id(p).to_string(), poset.id(q).to_string()));
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn zero(source: &PModule, target: &PModule) -> Result<Self> {
        let f = source.field();
        let comps = (0..source.poset().len())
            .map(|v| ExactMatrix::zeros(f, target.dim(v), source.dim(v)))
            .collect();
        Self::new(source.clone(), target.clone(), comps)
    }

    pub fn identity(m: &PModule) -> Self {
        let comps = m.dims().iter().map(|&d| ExactMatrix::identity(m.field(), d)).collect();
        Self::new(m.clone(), m.clone(), comps).expect("identity is natural")
    }

    pub fn source(&self) -> &PModule {
        &self.source
    }

    pub fn target(&self) -> &PModule {
        &self.target
    }

    pub fn component(&self, v: usize) -> &ExactMatrix {
        &self.components[v]
    }

    pub fn components(&self) -> &[ExactMatrix] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ExactMatrix::is_zero)
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.target != after.source {
            return Err(Error::Mismatch);
        }
        let comps = self
            .components
            .iter()
            .zip(&after.components)
            .map(|(f, g)| g.mul(f))
            .collect();
        ModuleMorphism::new(self.source.clone(), after.target.clone(), comps)
    }

    pub fn is_surjective(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(v, c)| c.rank() == self.target.dim(v))
    }

    /// Kernel module with its inclusion into the source. Vertexwise kernel bases are the
    /// canonical ones from [`ExactMatrix::kernel_basis`].
    pub fn kernel(&self) -> Result<(PModule, ModuleMorphism)> {
        let src = &self.source;
        let f = src.field();
        let poset = src.poset().clone();
        let bases: Vec<ExactMatrix> = self.components.iter().map(ExactMatrix::kernel_basis).collect();
        let dims: Vec<usize> = bases.iter().map(ExactMatrix::cols).collect();
        let mut maps = Vec::with_capacity(poset.covers().len());
        for (i, &(p, q)) in poset.covers().iter().enumerate() {
            let pushed = src.maps()[i].mul(&bases[p]);
            let induced = bases[q].solve_matrix(&pushed)?.ok_or_else(|| {
                Error::NotNatural(poset.id(p).to_string(), poset.id(q).to_string())
            })?;
            maps.push(induced);
        }
        let kernel = PModule::new(poset, f, dims, maps)?;
        let inclusion = ModuleMorphism::new(kernel.clone(), src.clone(), bases)?;
        Ok((kernel, inclusion))
    }
}

/// `d⁰(δ)_φ = δ_q·M_φ − N_φ·δ_p` from `⊕_v Hom(M_v, N_v)` to `⊕_{(p,q)} Hom(M_p, N_q)`.
/// Its kernel is `Hom(M, N)`.
pub(crate) fn gauge_map(m: &PModule, n: &PModule) -> (ExactMatrix, BlockLayout, BlockLayout) {
    let poset = m.poset();
    let f = m.field();
    let vertices = BlockLayout::new((0..poset.len()).map(|v| (n.dim(v), m.dim(v))).collect());
    let arrows = BlockLayout::new(poset.covers().iter().map(|&(p, q)| (n.dim(q), m.dim(p))).collect());
    let mut d0 = ExactMatrix::zeros(f, arrows.total(), vertices.total());
    for (i, &(p, q)) in poset.covers().iter().enumerate() {
        let row = arrows.offset(i);
        add_sandwich(
            &mut d0,
            row,
            vertices.offset(q),
            &ExactMatrix::identity(f, n.dim(q)),
            &m.maps()[i],
            1,
        );
        add_sandwich(
            &mut d0,
            row,
            vertices.offset(p),
            &n.maps()[i],
            &ExactMatrix::identity(f, m.dim(p)),
            -1,
        );
    }
    (d0, vertices, arrows)
}

/// A basis of `Hom(M, N)`, from the null space of the naturality system.
pub fn hom_basis(m: &PModule, n: &PModule) -> Result<Vec<ModuleMorphism>> {
    m.require_same_base(n)?;
    let (d0, vertices, _) = gauge_map(m, n);
    let kernel = d0.kernel_basis();
    kernel
        .columns()
        .iter()
        .map(|col| ModuleMorphism::new(m.clone(), n.clone(), vertices.unflatten(col, m.field())))
        .collect()
}

pub fn hom_dim(m: &PModule, n: &PModule) -> Result<usize> {
    m.require_same_base(n)?;
    let (d0, vertices, _) = gauge_map(m, n);
    Ok(vertices.total() - d0.rank())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactfield::FieldSpec;
    use crate::pmodule::projective_sum;
    use crate::poset::Poset;

    const F: FieldSpec = FieldSpec::Prime(32003);

    #[test]
    fn hom_examples() {
        let sq = Arc::new(Poset::grid(1));
        let full = PModule::interval_full(&sq, F);
        assert_eq!(hom_basis(&full, &full).unwrap().len(), 1);
        let triv = PModule::trivial_ones(&sq, F);
        assert_eq!(hom_basis(&triv, &triv).unwrap().len(), 4);
        let s00 = PModule::simple(&sq, F, sq.grid_vertex(0, 0).unwrap()).unwrap();
        let s10 = PModule::simple(&sq, F, sq.grid_vertex(1, 0).unwrap()).unwrap();
        assert_eq!(hom_dim(&s10, &s00).unwrap(), 0);
        assert_eq!(hom_dim(&full, &triv).unwrap(), 1);
        let other = PModule::zero(&Arc::new(Poset::grid(2)), F);
        assert_eq!(hom_basis(&full, &other), Err(Error::Mismatch));
    }

    #[test]
    fn naturality_is_enforced() {
        let sq = Arc::new(Poset::grid(1));
        let full = PModule::interval_full(&sq, F);
        let mut comps = vec![ExactMatrix::identity(F, 1); 4];
        comps[3] = ExactMatrix::zeros(F, 1, 1);
        assert!(matches!(
            ModuleMorphism::new(full.clone(), full.clone(), comps),
            Err(Error::NotNatural(..))
        ));
    }

    #[test]
    fn kernels() {
        let sq = Arc::new(Poset::grid(1));
        let full = PModule::interval_full(&sq, F);
        let (k, _) = ModuleMorphism::identity(&full).kernel().unwrap();
        assert!(k.is_zero());

        let hook = PModule::hook(&sq, F).unwrap();
        let (k, inc) = ModuleMorphism::zero(&full, &hook).unwrap().kernel().unwrap();
        assert_eq!(k, full);
        assert!(inc.components().iter().all(|c| c.rank() == c.rows()));
    }

    #[test]
    fn kernel_of_square_cover_is_sink_projective() {
        // π: P(1,0) ⊕ P(0,1) → P(0,0), each generator sent to the image of its cover arrow.
        let sq = Arc::new(Poset::grid(1));
        let v = |i, j| sq.grid_vertex(i, j).unwrap();
        let src = projective_sum(&sq, F, &[v(1, 0), v(0, 1)]);
        let tgt = PModule::projective(&sq, F, v(0, 0)).unwrap();
        let comps: Vec<ExactMatrix> = (0..4)
            .map(|w| {
                let ones = vec![1; src.dim(w)];
                ExactMatrix::from_i64(F, tgt.dim(w), src.dim(w), &ones)
            })
            .collect();
        let pi = ModuleMorphism::new(src, tgt, comps).unwrap();
        let (k, inc) = pi.kernel().unwrap();
        assert_eq!(k.dims(), [0, 0, 0, 1]);
        assert_eq!(k, PModule::projective(&sq, F, v(1, 1)).unwrap());
        // The anti-diagonal {(a, -a)}.
        assert_eq!(*inc.component(v(1, 1)), ExactMatrix::from_i64(F, 2, 1, &[1, -1]));
        assert!(inc.then(&pi).unwrap().is_zero());
    }
}
