//! Named strategies selected at runtime: Ext algorithms and builtin module recipes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;
use crate::ext::{ext1_deformation_complex, ext_dims};
use crate::pmodule::{hom_dim, PModule};
use crate::poset::Poset;

/// An algorithm computing `dim Ext^i(M, N)` for `i = 0 ..= max_degree`.
pub trait ExtMethod: Send + Sync {
    fn name(&self) -> &'static str;

    /// Highest degree the method can compute, if bounded.
    fn max_supported_degree(&self) -> Option<usize> {
        None
    }

    fn ext_dims(&self, m: &PModule, n: &PModule, max_degree: usize) -> Result<Vec<usize>>;
}

/// Hom complex of the minimal projective resolution.
pub struct ResolutionMethod;

impl ExtMethod for ResolutionMethod {
    fn name(&self) -> &'static str {
        "resolution"
    }

    fn ext_dims(&self, m: &PModule, n: &PModule, max_degree: usize) -> Result<Vec<usize>> {
        ext_dims(m, n, max_degree)
    }
}

/// Naturality system in degree 0, linearized deformations in degree 1.
pub struct DeformationMethod;

impl ExtMethod for DeformationMethod {
    fn name(&self) -> &'static str {
        "deformation"
    }

    fn max_supported_degree(&self) -> Option<usize> {
        Some(1)
    }

    fn ext_dims(&self, m: &PModule, n: &PModule, max_degree: usize) -> Result<Vec<usize>> {
        if max_degree > 1 {
            return Err(Error::DegreeUnsupported {
                method: self.name().into(),
                max: 1,
                asked: max_degree,
            });
        }
        let mut dims = vec![hom_dim(m, n)?];
        if max_degree == 1 {
            dims.push(ext1_deformation_complex(m, n)?);
        }
        Ok(dims)
    }
}

pub struct ExtRegistry {
    methods: BTreeMap<&'static str, Box<dyn ExtMethod>>,
}

impl ExtRegistry {
    pub fn empty() -> Self {
        Self {
            methods: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, method: Box<dyn ExtMethod>) {
        self.methods.insert(method.name(), method);
    }

    pub fn get(&self, name: &str) -> Result<&dyn ExtMethod> {
        self.methods
            .get(name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.keys().copied().collect()
    }
}

impl Default for ExtRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(ResolutionMethod));
        r.register(Box::new(DeformationMethod));
        r
    }
}

/// A named module constructor, addressed as `builtin:<name>` or `builtin:<name>:<arg>`.
pub trait ModuleRecipe: Send + Sync {
    fn name(&self) -> &'static str;

    fn build(&self, poset: &Arc<Poset>, field: FieldSpec, arg: Option<&str>, recipes: &RecipeRegistry)
        -> Result<PModule>;
}

fn no_arg(name: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        None => Ok(()),
        Some(a) => Err(Error::UnknownBuiltin(format!("{name}:{a}"))),
    }
}

fn need_arg<'a>(name: &str, arg: Option<&'a str>) -> Result<&'a str> {
    arg.filter(|a| !a.is_empty())
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))
}

macro_rules! plain_recipe {
    ($ty:ident, $name:literal, |$p:ident, $f:ident| $body:expr) => {
        pub struct $ty;

        impl ModuleRecipe for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn build(&self, $p: &Arc<Poset>, $f: FieldSpec, arg: Option<&str>, _: &RecipeRegistry) -> Result<PModule> {
                no_arg($name, arg)?;
                $body
            }
        }
    };
}

plain_recipe!(IntervalFull, "interval_full", |p, f| Ok(PModule::interval_full(p, f)));
plain_recipe!(Trivial, "trivial", |p, f| Ok(PModule::trivial_ones(p, f)));
plain_recipe!(Hook, "hook", |p, f| PModule::hook(p, f));
plain_recipe!(Diagonal, "diagonal", |p, f| PModule::diagonal(p, f));

pub struct Simple;

impl ModuleRecipe for Simple {
    fn name(&self) -> &'static str {
        "simple"
    }

    fn build(&self, poset: &Arc<Poset>, field: FieldSpec, arg: Option<&str>, _: &RecipeRegistry) -> Result<PModule> {
        let v = poset.index_of(need_arg("simple", arg)?)?;
        PModule::simple(poset, field, v)
    }
}

pub struct Projective;

impl ModuleRecipe for Projective {
    fn name(&self) -> &'static str {
        "projective"
    }

    fn build(&self, poset: &Arc<Poset>, field: FieldSpec, arg: Option<&str>, _: &RecipeRegistry) -> Result<PModule> {
        let v = poset.index_of(need_arg("projective", arg)?)?;
        PModule::projective(poset, field, v)
    }
}

/// `sum:(a,b,...)`: direct sum of recipes, each optionally prefixed with `builtin:`.
pub struct Sum;

impl ModuleRecipe for Sum {
    fn name(&self) -> &'static str {
        "sum"
    }

    fn build(&self, poset: &Arc<Poset>, field: FieldSpec, arg: Option<&str>, recipes: &RecipeRegistry) -> Result<PModule> {
        let arg = need_arg("sum", arg)?;
        let inner = arg
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::UnknownBuiltin(format!("sum:{arg}")))?;
        let mut acc = PModule::zero(poset, field);
        for part in split_top_level(inner) {
            let part = part.trim();
            let part = part.strip_prefix("builtin:").unwrap_or(part);
            acc = acc.direct_sum(&recipes.build(part, poset, field)?)?;
        }
        Ok(acc)
    }
}

/// Splits on commas outside parentheses, so `(0,0)` stays whole.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

pub struct RecipeRegistry {
    recipes: BTreeMap<&'static str, Box<dyn ModuleRecipe>>,
}

impl RecipeRegistry {
    pub fn empty() -> Self {
        Self {
            recipes: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, recipe: Box<dyn ModuleRecipe>) {
        self.recipes.insert(recipe.name(), recipe);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.recipes.keys().copied().collect()
    }

    /// Builds from a spec without the `builtin:` prefix, e.g. `simple:(0,0)`.
    pub fn build(&self, spec: &str, poset: &Arc<Poset>, field: FieldSpec) -> Result<PModule> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let recipe = self
            .recipes
            .get(name)
            .ok_or_else(|| Error::UnknownBuiltin(spec.to_string()))?;
        recipe.build(poset, field, arg, self)
    }
}

impl Default for RecipeRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(IntervalFull));
        r.register(Box::new(Trivial));
        r.register(Box::new(Simple));
        r.register(Box::new(Projective));
        r.register(Box::new(Hook));
        r.register(Box::new(Diagonal));
        r.register(Box::new(Sum));
        r
    }
}
