//! Finite posets presented by their covering relations.

mod nerve;
mod random;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use nerve::{nerve_cohomology_dims, OrderComplex};
pub use random::{random_connected_poset, random_poset};

use crate::error::{Error, Result};

/// Maximum number of Hasse paths enumerated between two elements.
pub const DEFAULT_PATH_CAP: usize = 10_000;

/// A directed path in the Hasse diagram, as the sequence of elements it visits.
/// The path from `p` to itself is `[p]` and has no arrows.
pub type HassePath = Vec<usize>;

/// A commutativity relation: two parallel Hasse paths with the same endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub reference: HassePath,
    pub other: HassePath,
}

impl Relation {
    pub fn source(&self) -> usize {
        self.reference[0]
    }

    pub fn target(&self) -> usize {
        *self.reference.last().unwrap()
    }
}

/// A finite poset. Elements are addressed by their index in the canonical order.
///
/// Posets built with [`Poset::from_covers`] order their elements lexicographically by id.
/// Grid posets list `(i,j)` row by row: `(0,0), (1,0), …, (n,0), (0,1), …`, which is
/// lexicographic in `(j, i)` and a linear extension of the product order.
#[derive(Clone)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    leq: Vec<bool>,
    topo: Vec<usize>,
    grid_side: Option<usize>,
}

impl Poset {
    /// Validates a cover presentation. Covers must be acyclic and transitively reduced.
    pub fn from_covers<S: AsRef<str>, T: AsRef<str>>(elements: &[S], covers: &[(T, T)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in elements {
            if !seen.insert(e.as_ref().to_string()) {
                return Err(Error::DuplicateId(e.as_ref().to_string()));
            }
        }
        let ids: Vec<String> = seen.into_iter().collect();
        let index: HashMap<String, usize> = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownId(s.to_string()));
        let mut idx_covers = Vec::with_capacity(covers.len());
        for (p, q) in covers {
            idx_covers.push((lookup(p.as_ref())?, lookup(q.as_ref())?));
        }
        Self::build(ids, idx_covers, None)
    }

    /// The `(n+1) × (n+1)` grid `{0..n}²` with the product order.
    pub fn grid(n: usize) -> Self {
        let side = n + 1;
        let at = |i: usize, j: usize| j * side + i;
        let mut ids = Vec::with_capacity(side * side);
        for j in 0..side {
            for i in 0..side {
                ids.push(format!("({i},{j})"));
            }
        }
        let mut covers = Vec::new();
        for j in 0..side {
            for i in 0..side {
                if i < n {
                    covers.push((at(i, j), at(i + 1, j)));
                }
                if j < n {
                    covers.push((at(i, j), at(i, j + 1)));
                }
            }
        }
        Self::build(ids, covers, Some(n)).expect("grid covers are valid")
    }

    /// A chain `c0 < c1 < … < c{len}`.
    pub fn chain(len: usize) -> Self {
        let ids: Vec<String> = (0..=len).map(|i| format!("c{i}")).collect();
        let covers: Vec<(usize, usize)> = (0..len).map(|i| (i, i + 1)).collect();
        Self::build(ids, covers, None).expect("chain covers are valid")
    }

    fn build(ids: Vec<String>, mut covers: Vec<(usize, usize)>, grid_side: Option<usize>) -> Result<Self> {
        let n = ids.len();
        let name = |v: usize| ids[v].clone();
        covers.sort_unstable();
        for w in covers.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateCover(name(w[0].0), name(w[0].1)));
            }
        }
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(p, q) in &covers {
            if p == q {
                return Err(Error::Cycle(name(p), name(q)));
            }
            upper[p].push(q);
            lower[q].push(p);
        }

        // Kahn's algorithm, always taking the smallest available index.
        let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            topo.push(v);
            for &w in &upper[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if topo.len() < n {
            let &(p, q) = covers
                .iter()
                .find(|&&(p, q)| indeg[p] > 0 && indeg[q] > 0)
                .expect("a cycle leaves an edge between unprocessed vertices");
            return Err(Error::Cycle(name(p), name(q)));
        }

        let mut leq = vec![false; n * n];
        for &v in topo.iter().rev() {
            leq[v * n + v] = true;
            for &w in &upper[v] {
                for u in 0..n {
                    if leq[w * n + u] {
                        leq[v * n + u] = true;
                    }
                }
            }
        }

        for &(p, q) in &covers {
            if upper[p].iter().any(|&w| w != q && leq[w * n + q]) {
                return Err(Error::NotReduced(name(p), name(q)));
            }
        }

        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Self {
            ids,
            index,
            covers,
            upper,
            lower,
            leq,
            topo,
            grid_side,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    /// Covers `(p, q)`, `p` covered by `q`, sorted by index pair.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_index(&self, p: usize, q: usize) -> Option<usize> {
        self.covers.binary_search(&(p, q)).ok()
    }

    pub fn upper_covers(&self, v: usize) -> &[usize] {
        &self.upper[v]
    }

    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.lower[v]
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p * self.len() + q]
    }

    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq(p, q)
    }

    /// A linear extension of the order.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// `Some(n)` when this is the `(n+1) × (n+1)` grid built by [`Poset::grid`].
    pub fn grid_side(&self) -> Option<usize> {
        self.grid_side
    }

    pub fn grid_vertex(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.grid_side?;
        (i <= n && j <= n).then(|| j * (n + 1) + i)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.lower[v].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.upper[v].is_empty()).collect()
    }

    /// Number of covers in a longest chain.
    pub fn longest_chain_length(&self) -> usize {
        let mut height = vec![0usize; self.len()];
        for &v in self.topo.iter().rev() {
            height[v] = self.upper[v].iter().map(|&w| height[w] + 1).max().unwrap_or(0);
        }
        height.into_iter().max().unwrap_or(0)
    }

    fn require_leq(&self, p: usize, q: usize) -> Result<()> {
        if self.leq(p, q) {
            Ok(())
        } else {
            Err(Error::NotComparable(self.id(p).to_string(), self.id(q).to_string()))
        }
    }

    pub fn hasse_paths(&self, p: usize, q: usize) -> Result<Vec<HassePath>> {
        self.hasse_paths_capped(p, q, DEFAULT_PATH_CAP)
    }

    /// All Hasse paths from `p` to `q`, in lexicographic order of their vertex sequences.
    pub fn hasse_paths_capped(&self, p: usize, q: usize, cap: usize) -> Result<Vec<HassePath>> {
        self.require_leq(p, q)?;
        let mut out = Vec::new();
        let mut stack = vec![p];
        self.paths_dfs(q, &mut stack, &mut out, cap)?;
        Ok(out)
    }

    fn paths_dfs(&self, q: usize, stack: &mut Vec<usize>, out: &mut Vec<HassePath>, cap: usize) -> Result<()> {
        let v = *stack.last().unwrap();
        if v == q {
            if out.len() == cap {
                return Err(Error::PathCapExceeded {
                    from: self.id(stack[0]).to_string(),
                    to: self.id(q).to_string(),
                    cap,
                });
            }
            out.push(stack.clone());
            return Ok(());
        }
        for &w in &self.upper[v] {
            if self.leq(w, q) {
                stack.push(w);
                self.paths_dfs(q, stack, out, cap)?;
                stack.pop();
            }
        }
        Ok(())
    }

    /// The lexicographically first Hasse path from `p` to `q`.
    pub fn first_path(&self, p: usize, q: usize) -> Result<HassePath> {
        self.require_leq(p, q)?;
        let mut path = vec![p];
        let mut v = p;
        while v != q {
            v = *self.upper[v]
                .iter()
                .find(|&&w| self.leq(w, q))
                .expect("p <= q has a next step");
            path.push(v);
        }
        Ok(path)
    }

    /// Möbius values `μ(p, r)` for every `r`; zero where `p ≰ r`.
    pub fn mobius_row(&self, p: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        for &q in &self.topo {
            if !self.leq(p, q) {
                continue;
            }
            mu[q] = if q == p {
                1
            } else {
                -(0..self.len())
                    .filter(|&r| r != q && self.leq(p, r) && self.leq(r, q))
                    .map(|r| mu[r])
                    .sum::<i64>()
            };
        }
        mu
    }

    pub fn mobius(&self, p: usize, q: usize) -> Result<i64> {
        self.require_leq(p, q)?;
        Ok(self.mobius_row(p)[q])
    }

    /// `ζ(p, q) = 1` iff `p ≤ q`.
    pub fn zeta_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.len())
            .map(|p| (0..self.len()).map(|q| self.leq(p, q) as i64).collect())
            .collect()
    }

    pub fn mobius_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.len()).map(|p| self.mobius_row(p)).collect()
    }

    /// Generating commutativity relations of the bound quiver.
    ///
    /// Grids use their unit squares, with the path through `(i+1, j)` as reference.
    /// Other posets pair every Hasse path with the lexicographically first one.
    pub fn commutativity_relations(&self) -> Result<Vec<Relation>> {
        if let Some(n) = self.grid_side {
            let mut rels = Vec::with_capacity(n * n);
            for j in 0..n {
                for i in 0..n {
                    let v = |a, b| self.grid_vertex(a, b).unwrap();
                    rels.push(Relation {
                        reference: vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)],
                        other: vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)],
                    });
                }
            }
            return Ok(rels);
        }
        let mut rels = Vec::new();
        for p in 0..self.len() {
            for q in 0..self.len() {
                if !self.lt(p, q) || self.cover_index(p, q).is_some() {
                    continue;
                }
                let mut paths = self.hasse_paths(p, q)?.into_iter();
                let reference = paths.next().expect("p < q has a path");
                rels.extend(paths.map(|other| Relation {
                    reference: reference.clone(),
                    other,
                }));
            }
        }
        Ok(rels)
    }

    pub fn order_complex(&self) -> OrderComplex {
        OrderComplex::new(self)
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self.covers.iter().map(|&(p, q)| (self.id(p), self.id(q))).collect();
        f.debug_struct("Poset")
            .field("elements", &self.ids)
            .field("covers", &covers)
            .finish()
    }
}
