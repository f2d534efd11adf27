//! Truncated k-cyclic sets stored as finite tables.
//!
//! Elements of level `n` are the indices `0..size(n)`. A table `d[n][i]`
//! maps level `n` to level `n − 1`, `s[n][j]` maps `n` to `n + 1` and
//! `t[n]` permutes level `n`.
//!
//! The model morphisms act contravariantly: a degree-1 map `E_P → E_Q`
//! sends level `Q − 1` to level `P − 1`. The dictionary is
//! `face(N, p) ↦ d_{N−p}`, `degeneracy(N, p) ↦ s_{N−1−p}`, `cyclic(N) ↦ t`.

mod beta;
mod category;
mod nerve;
mod subdivide;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Error, Result};
use crate::zmax::{decompose_cyclic, ArcMap, GeneratorSpec};

pub use beta::Beta;
pub use category::{FiniteCategory, MorphismSpec};
pub use nerve::{cyclic_nerve, nerve_epicyclic, CyclicNerve, EpicyclicMaps, NerveEpicyclic};
pub use subdivide::{fixed_points, sd_map, subdivide, FixedPoints};

/// A structure operator, indexed by the level it starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    /// `d_i` from level `n`.
    D(usize, usize),
    /// `s_j` from level `n`.
    S(usize, usize),
    /// `t` on level `n`.
    T(usize),
}

impl Op {
    pub fn src_level(&self) -> usize {
        match *self {
            Op::D(n, _) | Op::S(n, _) | Op::T(n) => n,
        }
    }

    pub fn dst_level(&self) -> usize {
        match *self {
            Op::D(n, _) => n - 1,
            Op::S(n, _) => n + 1,
            Op::T(n) => n,
        }
    }

    /// The model generator this operator is the action of.
    pub fn to_generator(&self) -> GeneratorSpec {
        match *self {
            Op::D(n, i) => GeneratorSpec::Face { n, i: n - i },
            Op::S(n, j) => GeneratorSpec::Degeneracy { n: n + 1, i: n - j },
            Op::T(n) => GeneratorSpec::Cyclic { n: n + 1 },
        }
    }

    /// The operator a face, degeneracy or cyclic generator acts by.
    pub fn from_generator(g: &GeneratorSpec) -> Result<Op> {
        Ok(match *g {
            GeneratorSpec::Face { n, i } if i <= n && n > 0 => Op::D(n, n - i),
            GeneratorSpec::Degeneracy { n, i } if i < n => Op::S(n - 1, n - 1 - i),
            GeneratorSpec::Cyclic { n } if n > 0 => Op::T(n - 1),
            other => bail!(InvalidInput, "{other} is not a cyclic-set operator"),
        })
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Op::D(n, i) => write!(f, "d{i}@{n}"),
            Op::S(n, j) => write!(f, "s{j}@{n}"),
            Op::T(n) => write!(f, "t@{n}"),
        }
    }
}

fn word_to_string(w: &[Op]) -> String {
    if w.is_empty() {
        "id".to_string()
    } else {
        w.iter().map(Op::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// One instance of a defining relation: two operator words (applied right
/// to left) from the same level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationInstance {
    pub name: &'static str,
    pub level: usize,
    pub lhs: Vec<Op>,
    pub rhs: Vec<Op>,
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {} on level {}", self.name, word_to_string(&self.lhs), word_to_string(&self.rhs), self.level)
    }
}

fn fits(w: &[Op], max_level: usize) -> bool {
    w.iter().all(|op| op.src_level() <= max_level && op.dst_level() <= max_level)
}

/// Every relation instance of `Λ_k` whose words stay within levels `0..=max_level`.
pub fn relation_instances(k: usize, max_level: usize) -> Vec<RelationInstance> {
    use Op::{D, S, T};
    let mut out = Vec::new();
    let mut push = |name, level, lhs: Vec<Op>, rhs: Vec<Op>| {
        if fits(&lhs, max_level) && fits(&rhs, max_level) {
            out.push(RelationInstance { name, level, lhs, rhs });
        }
    };
    for n in 0..=max_level {
        for j in 0..=n {
            for i in 0..j {
                if n >= 2 {
                    push("face-face", n, vec![D(n - 1, i), D(n, j)], vec![D(n - 1, j - 1), D(n, i)]);
                }
            }
            for i in 0..=j {
                push("degeneracy-degeneracy", n, vec![S(n + 1, i), S(n, j)], vec![S(n + 1, j + 1), S(n, i)]);
            }
            for i in 0..=n + 1 {
                let lhs = vec![D(n + 1, i), S(n, j)];
                if i < j {
                    push("face-degeneracy", n, lhs, vec![S(n - 1, j - 1), D(n, i)]);
                } else if i == j || i == j + 1 {
                    push("face-degeneracy", n, lhs, vec![]);
                } else {
                    push("face-degeneracy", n, lhs, vec![S(n - 1, j), D(n, i - 1)]);
                }
            }
        }
        if n >= 1 {
            for i in 1..=n {
                push("face-cyclic", n, vec![D(n, i), T(n)], vec![T(n - 1), D(n, i - 1)]);
            }
            push("face-cyclic", n, vec![D(n, 0), T(n)], vec![D(n, n)]);
        }
        for i in 1..=n {
            push("degeneracy-cyclic", n, vec![S(n, i), T(n)], vec![T(n + 1), S(n, i - 1)]);
        }
        push("degeneracy-cyclic", n, vec![S(n, 0), T(n)], vec![T(n + 1), T(n + 1), S(n, n)]);
        push("cyclic-order", n, vec![T(n); k * (n + 1)], vec![]);
    }
    out
}

/// A violated relation instance, with the offending element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub relation: String,
    pub element: usize,
    pub lhs_value: usize,
    pub rhs_value: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at element {} ({} != {})", self.relation, self.element, self.lhs_value, self.rhs_value)
    }
}

/// A k-cyclic set known on levels `0..=max_level`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct TruncatedKCyclicSet {
    k: usize,
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
    cyclic: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    k: usize,
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
    cyclic: Vec<Vec<usize>>,
}

impl TryFrom<TableRepr> for TruncatedKCyclicSet {
    type Error = Error;

    fn try_from(t: TableRepr) -> Result<Self> {
        TruncatedKCyclicSet::from_tables(t.k, t.sizes, t.faces, t.degeneracies, t.cyclic)
    }
}

impl From<TruncatedKCyclicSet> for TableRepr {
    fn from(y: TruncatedKCyclicSet) -> Self {
        TableRepr { k: y.k, sizes: y.sizes, faces: y.faces, degeneracies: y.degeneracies, cyclic: y.cyclic }
    }
}

fn check_table(name: &str, table: &[usize], len: usize, range: usize) -> Result<()> {
    if table.len() != len {
        bail!(InvalidInput, "{name} has {} entries, expected {len}", table.len());
    }
    if let Some(bad) = table.iter().find(|&&v| v >= range) {
        bail!(InvalidInput, "{name} has entry {bad} outside 0..{range}");
    }
    Ok(())
}

impl TruncatedKCyclicSet {
    /// Assembles tables after checking their shapes; relations are checked
    /// separately by [`TruncatedKCyclicSet::validate`].
    pub fn from_tables(
        k: usize,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
        cyclic: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if k == 0 {
            bail!(InvalidInput, "k must be positive");
        }
        if sizes.is_empty() {
            bail!(InvalidInput, "at least level 0 is required");
        }
        let levels = sizes.len();
        if faces.len() != levels || degeneracies.len() != levels || cyclic.len() != levels {
            bail!(InvalidInput, "every table family needs one entry per level");
        }
        let top = levels - 1;
        for n in 0..levels {
            let nf = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != nf {
                bail!(InvalidInput, "level {n} needs {nf} face tables");
            }
            for (i, d) in faces[n].iter().enumerate() {
                check_table(&format!("d{i} on level {n}"), d, sizes[n], sizes[n - 1])?;
            }
            let ns = if n == top { 0 } else { n + 1 };
            if degeneracies[n].len() != ns {
                bail!(InvalidInput, "level {n} needs {ns} degeneracy tables");
            }
            for (j, s) in degeneracies[n].iter().enumerate() {
                check_table(&format!("s{j} on level {n}"), s, sizes[n], sizes[n + 1])?;
            }
            check_table(&format!("t on level {n}"), &cyclic[n], sizes[n], sizes[n])?;
        }
        Ok(TruncatedKCyclicSet { k, sizes, faces, degeneracies, cyclic })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_level(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn face(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &[usize] {
        &self.degeneracies[n][j]
    }

    pub fn cyclic(&self, n: usize) -> &[usize] {
        &self.cyclic[n]
    }

    /// `t^e` applied to `x` on level `n`.
    pub fn rotate(&self, n: usize, x: usize, e: usize) -> usize {
        (0..e).fold(x, |y, _| self.cyclic[n][y])
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n > self.max_level() {
            bail!(OutOfTruncation, "level {n} beyond the truncation level {}", self.max_level());
        }
        Ok(())
    }

    pub fn apply_op(&self, op: Op, x: usize) -> Result<usize> {
        self.check_level(op.src_level().max(op.dst_level()))?;
        let n = op.src_level();
        if x >= self.sizes[n] {
            bail!(InvalidInput, "element {x} not on level {n}");
        }
        Ok(match op {
            Op::D(n, i) if n > 0 && i <= n => self.faces[n][i][x],
            Op::S(n, j) if j <= n => self.degeneracies[n][j][x],
            Op::T(n) => self.cyclic[n][x],
            other => bail!(InvalidInput, "operator {other} is malformed"),
        })
    }

    /// Applies a word right to left.
    pub fn apply_word(&self, word: &[Op], x: usize) -> Result<usize> {
        word.iter().rev().try_fold(x, |y, &op| self.apply_op(op, y))
    }

    /// Every violated relation instance; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for rel in relation_instances(self.k, self.max_level()) {
            for x in 0..self.sizes[rel.level] {
                let l = self.apply_word(&rel.lhs, x).expect("relation fits the truncation");
                let r = self.apply_word(&rel.rhs, x).expect("relation fits the truncation");
                if l != r {
                    out.push(Violation { relation: rel.to_string(), element: x, lhs_value: l, rhs_value: r });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The operator word a degree-1 map acts by, applied right to left.
    pub fn word_of(f: &ArcMap) -> Result<Vec<Op>> {
        let dec = decompose_cyclic(f)?;
        let mut word = vec![Op::T(f.src_period() - 1); dec.rotation];
        for g in &dec.word {
            word.push(Op::from_generator(g)?);
        }
        Ok(word)
    }

    /// The action of a degree-1 map `E_P → E_Q` as a map from level `Q − 1`
    /// to level `P − 1`.
    pub fn eval(&self, f: &ArcMap) -> Result<Vec<usize>> {
        if f.degree() != 1 {
            bail!(Precondition, "only degree-1 maps act on a cyclic set, got degree {}", f.degree());
        }
        let (from, to) = (f.dst_period() - 1, f.src_period() - 1);
        self.check_level(from.max(to))?;
        let word = Self::word_of(f)?;
        (0..self.sizes[from]).map(|x| self.apply_word(&word, x)).collect()
    }

    /// The action of `f` on a single element of level `Q − 1`.
    pub fn eval_at(&self, f: &ArcMap, x: usize) -> Result<usize> {
        if f.degree() != 1 {
            bail!(Precondition, "only degree-1 maps act on a cyclic set, got degree {}", f.degree());
        }
        self.check_level((f.dst_period() - 1).max(f.src_period() - 1))?;
        self.apply_word(&Self::word_of(f)?, x)
    }
}

/// Alias for [`TruncatedKCyclicSet::eval`].
pub fn eval_cyclic(y: &TruncatedKCyclicSet, f: &ArcMap) -> Result<Vec<usize>> {
    y.eval(f)
}
