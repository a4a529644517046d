//! Persistence modules: representations of a poset's bound quiver.
//!
//! A module stores one vector-space dimension per element and one matrix per cover.
//! Maps along longer relations are composed on demand from the cover maps.

pub(crate) mod linear;
mod morphism;
mod random;

use std::fmt;
use std::sync::Arc;

pub(crate) use morphism::gauge_map;
pub use morphism::{hom_basis, hom_dim, ModuleMorphism};
pub use random::random_module;

use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldSpec, Scalar};
use crate::poset::{HassePath, Poset};

#[derive(Clone, PartialEq, Eq)]
pub struct PModule {
    poset: Arc<Poset>,
    field: FieldSpec,
    dims: Vec<usize>,
    /// Indexed like `poset.covers()`; the map for `(p, q)` is `dims[q] × dims[p]`.
    maps: Vec<ExactMatrix>,
}

/// Two Hasse paths with the same endpoints whose composites differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub from: usize,
    pub to: usize,
    pub reference_path: HassePath,
    pub other_path: HassePath,
    pub reference: ExactMatrix,
    pub other: ExactMatrix,
}

impl Violation {
    pub fn describe(&self, poset: &Poset) -> String {
        let path = |p: &HassePath| p.iter().map(|&v| poset.id(v)).collect::<Vec<_>>().join("->");
        format!(
            "({}, {}): {} gives {:?} but {} gives {:?}",
            poset.id(self.from),
            poset.id(self.to),
            path(&self.reference_path),
            self.reference.render(),
            path(&self.other_path),
            self.other.render()
        )
    }
}

impl PModule {
    /// Checks that every cover carries a matrix of the right shape. Commutativity is
    /// checked separately by [`PModule::validate`].
    pub fn new(poset: Arc<Poset>, field: FieldSpec, dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<Self> {
        if dims.len() != poset.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} elements",
                dims.len(),
                poset.len()
            )));
        }
        if maps.len() != poset.covers().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} maps for {} covers",
                maps.len(),
                poset.covers().len()
            )));
        }
        for (&(p, q), m) in poset.covers().iter().zip(&maps) {
            if m.shape() != (dims[q], dims[p]) || m.field() != field {
                return Err(Error::MapShape {
                    from: poset.id(p).to_string(),
                    to: poset.id(q).to_string(),
                    rows: dims[q],
                    cols: dims[p],
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        Ok(Self { poset, field, dims, maps })
    }

    /// Builds a module from dimensions and a map-producing closure over covers.
    pub(crate) fn from_fn(
        poset: &Arc<Poset>,
        field: FieldSpec,
        dims: Vec<usize>,
        mut map: impl FnMut(usize, usize) -> ExactMatrix,
    ) -> Self {
        let maps = poset.covers().iter().map(|&(p, q)| map(p, q)).collect();
        Self::new(poset.clone(), field, dims, maps).expect("constructor produces consistent shapes")
    }

    pub fn zero(poset: &Arc<Poset>, field: FieldSpec) -> Self {
        Self::from_fn(poset, field, vec![0; poset.len()], |_, _| ExactMatrix::zeros(field, 0, 0))
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[ExactMatrix] {
        &self.maps
    }

    /// Structure map on the cover `(p, q)`.
    pub fn cover_map(&self, p: usize, q: usize) -> Option<&ExactMatrix> {
        self.poset.cover_index(p, q).map(|i| &self.maps[i])
    }

    pub fn same_base(&self, other: &PModule) -> bool {
        self.field == other.field && (Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset)
    }

    pub(crate) fn require_same_base(&self, other: &PModule) -> Result<()> {
        if self.same_base(other) {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    /// Composite of the structure maps along a Hasse path.
    pub fn composite_along(&self, path: &[usize]) -> ExactMatrix {
        let mut acc = ExactMatrix::identity(self.field, self.dims[path[0]]);
        for w in path.windows(2) {
            let m = self.cover_map(w[0], w[1]).expect("path follows covers");
            acc = m.mul(&acc);
        }
        acc
    }

    /// The structure map `M(p → q)`, composed along the first Hasse path.
    pub fn composite(&self, p: usize, q: usize) -> Result<ExactMatrix> {
        Ok(self.composite_along(&self.poset.first_path(p, q)?))
    }

    /// Commutativity violations: every Hasse path compared against the first one.
    pub fn validate(&self) -> Result<Vec<Violation>> {
        let mut out = Vec::new();
        let n = self.poset.len();
        for p in 0..n {
            for q in 0..n {
                if !self.poset.lt(p, q) || self.dims[p] == 0 || self.dims[q] == 0 {
                    continue;
                }
                let paths = self.poset.hasse_paths(p, q)?;
                if paths.len() < 2 {
                    continue;
                }
                let reference = self.composite_along(&paths[0]);
                for other_path in &paths[1..] {
                    let other = self.composite_along(other_path);
                    if other != reference {
                        out.push(Violation {
                            from: p,
                            to: q,
                            reference_path: paths[0].clone(),
                            other_path: other_path.clone(),
                            reference: reference.clone(),
                            other,
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_valid(&self) -> bool {
        matches!(self.validate(), Ok(v) if v.is_empty())
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let violations = self.validate()?;
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModule(violations.len()))
        }
    }

    /// `k` at `v`, zero elsewhere.
    pub fn simple(poset: &Arc<Poset>, field: FieldSpec, v: usize) -> Result<Self> {
        check_vertex(poset, v)?;
        let dims = (0..poset.len()).map(|w| (w == v) as usize).collect::<Vec<_>>();
        Ok(Self::from_fn(poset, field, dims.clone(), |p, q| {
            ExactMatrix::zeros(field, dims[q], dims[p])
        }))
    }

    /// The indecomposable projective `P_v`: `k` on the up-set of `v` with identity maps.
    pub fn projective(poset: &Arc<Poset>, field: FieldSpec, v: usize) -> Result<Self> {
        check_vertex(poset, v)?;
        Ok(projective_sum(poset, field, &[v]))
    }

    /// `k` everywhere with identity maps (the constant module).
    pub fn interval_full(poset: &Arc<Poset>, field: FieldSpec) -> Self {
        Self::from_fn(poset, field, vec![1; poset.len()], |_, _| ExactMatrix::identity(field, 1))
    }

    /// `k` everywhere with all structure maps zero.
    pub fn trivial_ones(poset: &Arc<Poset>, field: FieldSpec) -> Self {
        Self::from_fn(poset, field, vec![1; poset.len()], |_, _| ExactMatrix::zeros(field, 1, 1))
    }

    /// On the square: `k` at `(0,0)` and `(1,0)` joined by the identity, zero elsewhere.
    pub fn hook(poset: &Arc<Poset>, field: FieldSpec) -> Result<Self> {
        if poset.grid_side() != Some(1) {
            return Err(Error::WrongShape {
                name: "hook".into(),
                needs: "the square poset grid:1".into(),
            });
        }
        let a = poset.grid_vertex(0, 0).unwrap();
        let b = poset.grid_vertex(1, 0).unwrap();
        let dims: Vec<usize> = (0..poset.len()).map(|v| (v == a || v == b) as usize).collect();
        Ok(Self::from_fn(poset, field, dims.clone(), |p, q| {
            if (p, q) == (a, b) {
                ExactMatrix::identity(field, 1)
            } else {
                ExactMatrix::zeros(field, dims[q], dims[p])
            }
        }))
    }

    /// Direct sum of the simples at the diagonal vertices `(j, j)` of a grid.
    pub fn diagonal(poset: &Arc<Poset>, field: FieldSpec) -> Result<Self> {
        let n = poset.grid_side().ok_or_else(|| Error::WrongShape {
            name: "diagonal".into(),
            needs: "a grid poset".into(),
        })?;
        let mut m = Self::zero(poset, field);
        for j in 0..=n {
            m = m.direct_sum(&Self::simple(poset, field, poset.grid_vertex(j, j).unwrap())?)?;
        }
        Ok(m)
    }

    /// Vertexwise direct sum with block-diagonal structure maps; `self` comes first.
    pub fn direct_sum(&self, other: &PModule) -> Result<Self> {
        self.require_same_base(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Self::new(self.poset.clone(), self.field, dims, maps)
    }

    /// Span of the images of all incoming cover maps at `v`, as columns.
    pub fn radical_at(&self, v: usize) -> ExactMatrix {
        self.poset
            .lower_covers(v)
            .iter()
            .fold(ExactMatrix::zeros(self.field, self.dims[v], 0), |acc, &u| {
                acc.hstack(self.cover_map(u, v).unwrap())
            })
    }

    /// Dimension of the top `M_v / rad(M)_v` at each vertex.
    pub fn top_dims(&self) -> Vec<usize> {
        (0..self.poset.len())
            .map(|v| self.dims[v] - self.radical_at(v).rank())
            .collect()
    }

    /// Vectors in `M_v` completing the radical at `v` to a basis: the unit vectors at the
    /// non-pivot columns of the radical's row-reduced basis.
    pub fn top_basis(&self, v: usize) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (_, pivots) = self.radical_at(v).transpose().rref();
        (0..self.dims[v])
            .filter(|j| !pivots.contains(j))
            .map(|j| {
                let mut e = vec![f.zero(); self.dims[v]];
                e[j] = f.one();
                e
            })
            .collect()
    }
}

fn check_vertex(poset: &Poset, v: usize) -> Result<()> {
    if v < poset.len() {
        Ok(())
    } else {
        Err(Error::UnknownId(format!("#{v}")))
    }
}

/// `⊕_k P_{gens[k]}`. At each vertex `w` the basis is the generators `k` with
/// `gens[k] ≤ w`, in generator order; structure maps are the inclusions.
pub fn projective_sum(poset: &Arc<Poset>, field: FieldSpec, gens: &[usize]) -> PModule {
    let present: Vec<Vec<usize>> = (0..poset.len())
        .map(|w| (0..gens.len()).filter(|&k| poset.leq(gens[k], w)).collect())
        .collect();
    let dims = present.iter().map(Vec::len).collect();
    PModule::from_fn(poset, field, dims, |p, q| {
        let mut m = ExactMatrix::zeros(field, present[q].len(), present[p].len());
        for (a, k) in present[p].iter().enumerate() {
            let b = present[q].iter().position(|x| x == k).expect("up-sets are upward closed");
            m.set(b, a, field.one());
        }
        m
    })
}

/// Position of generator `k` in the basis of `⊕ P_{gens}` at vertex `w`.
pub(crate) fn generator_position(poset: &Poset, gens: &[usize], w: usize, k: usize) -> Option<usize> {
    if !poset.leq(gens[k], w) {
        return None;
    }
    Some((0..k).filter(|&j| poset.leq(gens[j], w)).count())
}

impl fmt::Debug for PModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let maps: Vec<_> = self
            .poset
            .covers()
            .iter()
            .zip(&self.maps)
            .map(|(&(p, q), m)| (format!("{}->{}", self.poset.id(p), self.poset.id(q)), m.render()))
            .collect();
        f.debug_struct("PModule")
            .field("field", &self.field)
            .field("dims", &self.dims)
            .field("maps", &maps)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: FieldSpec = FieldSpec::Prime(32003);

    fn square() -> Arc<Poset> {
        Arc::new(Poset::grid(1))
    }

    fn at(p: &Poset, i: usize, j: usize) -> usize {
        p.grid_vertex(i, j).unwrap()
    }

    #[test]
    fn hook_is_valid() {
        let sq = square();
        let h = PModule::hook(&sq, F).unwrap();
        assert_eq!(h.dims(), [1, 1, 0, 0]);
        assert!(h.validate().unwrap().is_empty());
        assert!(PModule::hook(&Arc::new(Poset::grid(2)), F).is_err());
    }

    #[test]
    fn broken_square_reports_violation() {
        let sq = square();
        let q = FieldSpec::Rational;
        let two = ExactMatrix::identity(q, 1).scale(&q.from_i64(2));
        let (a, b, d) = (at(&sq, 0, 0), at(&sq, 1, 0), at(&sq, 1, 1));
        let m = PModule::from_fn(&sq, q, vec![1; 4], |p, r| {
            if (p, r) == (b, d) {
                two.clone()
            } else {
                ExactMatrix::identity(q, 1)
            }
        });
        let v = m.validate().unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].from, v[0].to), (a, d));
        assert!(v[0].describe(&sq).contains("(0,0)->(1,0)->(1,1)"));
    }

    #[test]
    fn modules_on_chains_are_valid() {
        let c = Arc::new(Poset::chain(4));
        let m = PModule::from_fn(&c, F, vec![2; 5], |_, _| ExactMatrix::from_i64(F, 2, 2, &[1, 2, 3, 4]));
        assert!(m.is_valid());
    }

    #[test]
    fn simples_and_projectives() {
        let sq = square();
        let s00 = PModule::simple(&sq, F, at(&sq, 0, 0)).unwrap();
        assert_eq!(s00.dims(), [1, 0, 0, 0]);
        assert!(s00.is_valid());
        let p00 = PModule::projective(&sq, F, at(&sq, 0, 0)).unwrap();
        assert_eq!(p00, PModule::interval_full(&sq, F));
        let p11 = PModule::projective(&sq, F, at(&sq, 1, 1)).unwrap();
        assert_eq!(p11, PModule::simple(&sq, F, at(&sq, 1, 1)).unwrap());
        let c = Arc::new(Poset::chain(2));
        assert_eq!(
            PModule::projective(&c, F, 2).unwrap(),
            PModule::simple(&c, F, 2).unwrap()
        );
        assert!(PModule::simple(&sq, F, 9).is_err());
        for n in 0..=3 {
            let g = Arc::new(Poset::grid(n));
            let sink = at(&g, n, n);
            assert_eq!(
                PModule::projective(&g, F, sink).unwrap(),
                PModule::simple(&g, F, sink).unwrap()
            );
        }
    }

    #[test]
    fn named_constructors() {
        let sq = square();
        let full = PModule::interval_full(&sq, F);
        assert_eq!(full.dims(), [1, 1, 1, 1]);
        assert!(full.maps().iter().all(|m| *m == ExactMatrix::identity(F, 1)));
        let triv = PModule::trivial_ones(&sq, F);
        assert!(triv.maps().iter().all(|m| m.is_zero()));
        let g2 = Arc::new(Poset::grid(2));
        let d = PModule::diagonal(&g2, F).unwrap();
        for v in 0..g2.len() {
            let diag = [at(&g2, 0, 0), at(&g2, 1, 1), at(&g2, 2, 2)].contains(&v);
            assert_eq!(d.dim(v), diag as usize);
        }
        assert!(PModule::diagonal(&Arc::new(Poset::chain(2)), F).is_err());
    }

    #[test]
    fn constructors_valid_on_small_grids() {
        for n in 0..=3 {
            let g = Arc::new(Poset::grid(n));
            let mut ms = vec![
                PModule::interval_full(&g, F),
                PModule::trivial_ones(&g, F),
                PModule::diagonal(&g, F).unwrap(),
                PModule::zero(&g, F),
            ];
            for v in 0..g.len() {
                ms.push(PModule::simple(&g, F, v).unwrap());
                ms.push(PModule::projective(&g, F, v).unwrap());
            }
            if n == 1 {
                ms.push(PModule::hook(&g, F).unwrap());
            }
            for m in ms {
                assert!(m.is_valid(), "{m:?}");
            }
        }
    }

    #[test]
    fn direct_sums() {
        let sq = square();
        let s00 = PModule::simple(&sq, F, at(&sq, 0, 0)).unwrap();
        let s10 = PModule::simple(&sq, F, at(&sq, 1, 0)).unwrap();
        let m = s00.direct_sum(&s10).unwrap();
        assert_eq!(m.dims(), [1, 1, 0, 0]);
        let full = PModule::interval_full(&sq, F);
        assert_eq!(full.direct_sum(&PModule::zero(&sq, F)).unwrap(), full);
        assert!(full.direct_sum(&PModule::hook(&sq, F).unwrap()).unwrap().is_valid());
        let other = PModule::zero(&Arc::new(Poset::grid(2)), F);
        assert_eq!(full.direct_sum(&other), Err(Error::Mismatch));
        let q = PModule::zero(&sq, FieldSpec::Rational);
        assert_eq!(full.direct_sum(&q), Err(Error::Mismatch));
    }

    #[test]
    fn tops() {
        let sq = square();
        for v in 0..4 {
            let top = PModule::projective(&sq, F, v).unwrap().top_dims();
            assert_eq!(top, (0..4).map(|w| (w == v) as usize).collect::<Vec<_>>());
        }
        assert_eq!(PModule::interval_full(&sq, F).top_dims(), [1, 0, 0, 0]);
        assert_eq!(PModule::trivial_ones(&sq, F).top_dims(), [1, 1, 1, 1]);
    }

    #[test]
    fn projective_sum_layout() {
        let sq = square();
        let gens = [at(&sq, 1, 0), at(&sq, 0, 1)];
        let p = projective_sum(&sq, F, &gens);
        assert_eq!(p.dims(), [0, 1, 1, 2]);
        assert!(p.is_valid());
        assert_eq!(generator_position(&sq, &gens, at(&sq, 1, 1), 1), Some(1));
        assert_eq!(generator_position(&sq, &gens, at(&sq, 0, 1), 1), Some(0));
        assert_eq!(generator_position(&sq, &gens, at(&sq, 0, 1), 0), None);
    }
}
