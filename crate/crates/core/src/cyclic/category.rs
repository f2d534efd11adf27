use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{bail, Error, Result};

/// Object and morphism names may be given as JSON strings or integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
enum Label {
    Str(String),
    Num(i64),
}

impl Label {
    fn into_string(self) -> String {
        match self {
            Label::Str(s) => s,
            Label::Num(n) => n.to_string(),
        }
    }
}

#[derive(Deserialize)]
struct RawMorphism {
    id: Label,
    src: Label,
    dst: Label,
}

#[derive(Deserialize)]
struct RawCategory {
    objects: Vec<Label>,
    morphisms: Vec<RawMorphism>,
    identities: BTreeMap<String, Label>,
    composition: Vec<(Label, Label, Label)>,
}

/// A morphism of a [`FiniteCategory`], by object index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// A finite category with a total composition table on composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    names: Vec<String>,
    src: Vec<usize>,
    dst: Vec<usize>,
    identity: Vec<usize>,
    comp: Vec<Option<usize>>,
}

impl FiniteCategory {
    /// Builds and validates a category. `composition` lists `(g, f, g∘f)`
    /// by morphism index.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identity: Vec<usize>,
        composition: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let nm = morphisms.len();
        let no = objects.len();
        if no == 0 {
            bail!(InvalidInput, "a category needs at least one object");
        }
        if identity.len() != no {
            bail!(InvalidInput, "every object needs an identity");
        }
        let mut names = Vec::with_capacity(nm);
        let mut src = Vec::with_capacity(nm);
        let mut dst = Vec::with_capacity(nm);
        for (name, s, d) in morphisms {
            if s >= no || d >= no {
                bail!(InvalidInput, "morphism {name} has an unknown endpoint");
            }
            names.push(name);
            src.push(s);
            dst.push(d);
        }
        let mut comp = vec![None; nm * nm];
        for &(g, f, gf) in composition {
            if g >= nm || f >= nm || gf >= nm {
                bail!(InvalidInput, "composition entry refers to an unknown morphism");
            }
            if dst[f] != src[g] {
                bail!(InvalidInput, "{} ∘ {} is listed but they are not composable", names[g], names[f]);
            }
            if src[gf] != src[f] || dst[gf] != dst[g] {
                bail!(InvalidInput, "{} ∘ {} = {} has the wrong type", names[g], names[f], names[gf]);
            }
            match comp[g * nm + f] {
                Some(prev) if prev != gf => {
                    bail!(InvalidInput, "{} ∘ {} is listed twice with different values", names[g], names[f])
                }
                _ => comp[g * nm + f] = Some(gf),
            }
        }
        let cat = FiniteCategory { objects, names, src, dst, identity, comp };
        cat.check_axioms()?;
        Ok(cat)
    }

    fn check_axioms(&self) -> Result<()> {
        let nm = self.names.len();
        for (o, &e) in self.identity.iter().enumerate() {
            if e >= nm || self.src[e] != o || self.dst[e] != o {
                bail!(InvalidInput, "identity of {} is not an endomorphism of it", self.objects[o]);
            }
        }
        for g in 0..nm {
            for f in 0..nm {
                if self.dst[f] == self.src[g] && self.comp[g * nm + f].is_none() {
                    bail!(InvalidInput, "composition {} ∘ {} is missing", self.names[g], self.names[f]);
                }
            }
        }
        for f in 0..nm {
            if self.compose(self.identity[self.dst[f]], f) != Some(f)
                || self.compose(f, self.identity[self.src[f]]) != Some(f)
            {
                bail!(InvalidInput, "identities are not units for {}", self.names[f]);
            }
        }
        for h in 0..nm {
            for g in (0..nm).filter(|&g| self.dst[g] == self.src[h]) {
                for f in (0..nm).filter(|&f| self.dst[f] == self.src[g]) {
                    let l = self.compose(self.compose(h, g).unwrap(), f);
                    let r = self.compose(h, self.compose(g, f).unwrap());
                    if l != r {
                        bail!(InvalidInput, "composition is not associative at ({}, {}, {})", self.names[h], self.names[g], self.names[f]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses the JSON form `{objects, morphisms: [{id, src, dst}],
    /// identities: {object: morphism}, composition: [[g, f, gf]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawCategory = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let objects: Vec<String> = raw.objects.into_iter().map(Label::into_string).collect();
        let obj_idx: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj_idx.len() != objects.len() {
            bail!(InvalidInput, "duplicate object name");
        }
        let find_obj = |l: Label| -> Result<usize> {
            let s = l.into_string();
            obj_idx.get(s.as_str()).copied().ok_or_else(|| Error::InvalidInput(format!("unknown object {s}")))
        };
        let mut morphisms = Vec::new();
        for m in raw.morphisms {
            morphisms.push((m.id.into_string(), find_obj(m.src)?, find_obj(m.dst)?));
        }
        let mor_idx: HashMap<String, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.0.clone(), i)).collect();
        if mor_idx.len() != morphisms.len() {
            bail!(InvalidInput, "duplicate morphism id");
        }
        let find_mor = |l: Label| -> Result<usize> {
            let s = l.into_string();
            mor_idx.get(&s).copied().ok_or_else(|| Error::InvalidInput(format!("unknown morphism {s}")))
        };
        let mut identity = vec![usize::MAX; objects.len()];
        for (o, m) in raw.identities {
            let oi = *obj_idx.get(o.as_str()).ok_or_else(|| Error::InvalidInput(format!("unknown object {o}")))?;
            identity[oi] = find_mor(m)?;
        }
        if let Some(o) = identity.iter().position(|&e| e == usize::MAX) {
            bail!(InvalidInput, "object {} has no identity", objects[o]);
        }
        let mut composition = Vec::new();
        for (g, f, gf) in raw.composition {
            composition.push((find_mor(g)?, find_mor(f)?, find_mor(gf)?));
        }
        FiniteCategory::new(objects, morphisms, identity, &composition)
    }

    /// The one-object one-morphism category.
    pub fn terminal() -> Self {
        Self::cyclic_group(1)
    }

    /// The cyclic group of order `n` as a one-object category; morphism `i`
    /// is the `i`-th power of the generator (`e` for `i = 0`).
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n > 0, "group order must be positive");
        let names = |i: usize| match i {
            0 => "e".to_string(),
            1 if n == 2 => "σ".to_string(),
            i => format!("g{i}"),
        };
        let morphisms = (0..n).map(|i| (names(i), 0, 0)).collect();
        let comp: Vec<_> = (0..n).flat_map(|g| (0..n).map(move |f| (g, f, (g + f) % n))).collect();
        FiniteCategory::new(vec!["*".into()], morphisms, vec![0], &comp).expect("cyclic group is a category")
    }

    /// The total order `0 < 1 < … < n−1` as a category.
    pub fn linear_order(n: usize) -> Self {
        assert!(n > 0, "need at least one object");
        let mut morphisms = Vec::new();
        let mut idx = HashMap::new();
        for i in 0..n {
            for j in i..n {
                idx.insert((i, j), morphisms.len());
                morphisms.push((format!("{i}<={j}"), i, j));
            }
        }
        let mut comp = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    comp.push((idx[&(j, k)], idx[&(i, j)], idx[&(i, k)]));
                }
            }
        }
        let identity = (0..n).map(|i| idx[&(i, i)]).collect();
        FiniteCategory::new((0..n).map(|i| i.to_string()).collect(), morphisms, identity, &comp)
            .expect("a total order is a category")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.names.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.names[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn dst(&self, f: usize) -> usize {
        self.dst[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.names.len() + f]
    }

    pub fn morphisms(&self) -> Vec<MorphismSpec> {
        (0..self.names.len())
            .map(|f| MorphismSpec {
                id: self.names[f].clone(),
                src: self.objects[self.src[f]].clone(),
                dst: self.objects[self.dst[f]].clone(),
            })
            .collect()
    }
}
