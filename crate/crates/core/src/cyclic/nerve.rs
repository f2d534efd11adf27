use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{FiniteCategory, TruncatedKCyclicSet};
use crate::error::{bail, Result};

/// Maps `φ_q` of an epicyclic structure, as needed by [`super::Beta`].
pub trait EpicyclicMaps {
    /// `φ_q` sending a `C_q`-fixed element of level `q(n+1) − 1` to level `n`.
    fn phi(&self, q: usize, n: usize, x: usize) -> Result<usize>;
}

/// The cyclic nerve of a finite category, with the tuple behind every element.
#[derive(Debug, Clone)]
pub struct CyclicNerve {
    category: FiniteCategory,
    set: TruncatedKCyclicSet,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

fn loops(c: &FiniteCategory, n: usize) -> Vec<Vec<usize>> {
    fn extend(c: &FiniteCategory, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == n + 1 {
            out.push(cur.clone());
            return;
        }
        // f_i: c_i → c_{i−1}, with c_{i−1} = src(f_{i−1}); the last one must
        // start at c_n = dst(f_0).
        let target = c.src(cur[i - 1]);
        for f in 0..c.num_morphisms() {
            if c.dst(f) == target && (i < n || c.src(f) == c.dst(cur[0])) {
                cur.push(f);
                extend(c, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for f0 in 0..c.num_morphisms() {
        if n == 0 {
            if c.src(f0) == c.dst(f0) {
                out.push(vec![f0]);
            }
            continue;
        }
        let mut cur = vec![f0];
        extend(c, n, &mut cur, &mut out);
    }
    out
}

/// Builds `B^cy C` on levels `0..=max_level`.
pub fn cyclic_nerve(c: &FiniteCategory, max_level: usize) -> CyclicNerve {
    let simplices: Vec<Vec<Vec<usize>>> = (0..=max_level).map(|n| loops(c, n)).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = simplices
        .iter()
        .map(|lvl| lvl.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let look = |n: usize, s: Vec<usize>| index[n][&s];
    let comp = |g: usize, f: usize| c.compose(g, f).expect("nerve tuples are composable");

    let mut faces = vec![Vec::new()];
    let mut degeneracies = Vec::new();
    let mut cyclic = Vec::new();
    for n in 0..=max_level {
        let lvl = &simplices[n];
        if n > 0 {
            let mut fs = Vec::new();
            for i in 0..n {
                fs.push(
                    lvl.iter()
                        .map(|s| {
                            let mut t = s[..i].to_vec();
                            t.push(comp(s[i], s[i + 1]));
                            t.extend_from_slice(&s[i + 2..]);
                            look(n - 1, t)
                        })
                        .collect(),
                );
            }
            fs.push(
                lvl.iter()
                    .map(|s| {
                        let mut t = vec![comp(s[n], s[0])];
                        t.extend_from_slice(&s[1..n]);
                        look(n - 1, t)
                    })
                    .collect(),
            );
            faces.push(fs);
        }
        if n < max_level {
            degeneracies.push(
                (0..=n)
                    .map(|j| {
                        lvl.iter()
                            .map(|s| {
                                let mut t = s[..=j].to_vec();
                                t.push(c.identity(c.src(s[j])));
                                t.extend_from_slice(&s[j + 1..]);
                                look(n + 1, t)
                            })
                            .collect()
                    })
                    .collect(),
            );
        } else {
            degeneracies.push(Vec::new());
        }
        cyclic.push(
            lvl.iter()
                .map(|s| {
                    let mut t = vec![s[n]];
                    t.extend_from_slice(&s[..n]);
                    look(n, t)
                })
                .collect(),
        );
    }
    let sizes = simplices.iter().map(Vec::len).collect();
    let set = TruncatedKCyclicSet::from_tables(1, sizes, faces, degeneracies, cyclic).expect("nerve tables are well formed");
    CyclicNerve { category: c.clone(), set, simplices, index }
}

impl CyclicNerve {
    pub fn set(&self) -> &TruncatedKCyclicSet {
        &self.set
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    /// The tuple `(f_0, …, f_n)` of morphism indices behind element `x`.
    pub fn simplex(&self, n: usize, x: usize) -> &[usize] {
        &self.simplices[n][x]
    }

    pub fn find(&self, n: usize, tuple: &[usize]) -> Option<usize> {
        self.index.get(n)?.get(tuple).copied()
    }

    /// Morphism names of every element, level by level.
    pub fn named_levels(&self) -> Vec<Vec<Vec<String>>> {
        self.simplices
            .iter()
            .map(|lvl| {
                lvl.iter()
                    .map(|s| s.iter().map(|&f| self.category.morphism_name(f).to_string()).collect())
                    .collect()
            })
            .collect()
    }

    /// `p_n^q`: the `q`-fold repetition of an element of level `n`.
    pub fn amplify(&self, q: usize, n: usize, x: usize) -> Result<usize> {
        let big = q * (n + 1) - 1;
        if big > self.set.max_level() {
            bail!(OutOfTruncation, "level {big} beyond the truncation level {}", self.set.max_level());
        }
        let tuple = self.simplices[n][x].repeat(q);
        Ok(self.index[big][&tuple])
    }
}

impl EpicyclicMaps for CyclicNerve {
    fn phi(&self, q: usize, n: usize, x: usize) -> Result<usize> {
        let big = q * (n + 1) - 1;
        if big > self.set.max_level() {
            bail!(OutOfTruncation, "level {big} beyond the truncation level {}", self.set.max_level());
        }
        let tuple = &self.simplices[big][x];
        let block = &tuple[..n + 1];
        if tuple.chunks(n + 1).any(|c| c != block) {
            bail!(Precondition, "element {x} of level {big} is not fixed under C_{q}");
        }
        Ok(self.index[n][block])
    }
}

/// `φ_k` and `p_k` between the `C_k`-fixed part of level `k(n+1) − 1` and level `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NerveEpicyclic {
    pub phi: BTreeMap<usize, usize>,
    pub p: Vec<usize>,
}

pub fn nerve_epicyclic(nerve: &CyclicNerve, k: usize, n: usize) -> Result<NerveEpicyclic> {
    if k == 0 {
        bail!(InvalidInput, "k must be positive");
    }
    let big = k * (n + 1) - 1;
    if big > nerve.set.max_level() {
        bail!(OutOfTruncation, "level {big} beyond the truncation level {}", nerve.set.max_level());
    }
    let y = &nerve.set;
    let phi = (0..y.size(big))
        .filter(|&x| y.rotate(big, x, n + 1) == x)
        .map(|x| Ok((x, nerve.phi(k, n, x)?)))
        .collect::<Result<_>>()?;
    let p = (0..y.size(n)).map(|x| nerve.amplify(k, n, x)).collect::<Result<_>>()?;
    Ok(NerveEpicyclic { phi, p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_sizes() {
        let t = cyclic_nerve(&FiniteCategory::terminal(), 4);
        assert!(t.set().sizes().iter().all(|&s| s == 1));
        assert!(t.set().is_valid());
        let c2 = cyclic_nerve(&FiniteCategory::cyclic_group(2), 4);
        assert_eq!(c2.set().sizes(), &[2, 4, 8, 16, 32]);
        assert!(c2.set().is_valid());
        let p = cyclic_nerve(&FiniteCategory::linear_order(2), 3);
        assert_eq!(p.set().sizes(), &[2, 2, 2, 2]);
        assert!(p.set().is_valid());
    }

    #[test]
    fn corrupted_face_is_reported() {
        let c2 = cyclic_nerve(&FiniteCategory::cyclic_group(2), 3);
        let y = c2.set().clone();
        let mut repr = serde_json::to_value(&y).unwrap();
        let entry = &mut repr["faces"][2][1][3];
        let old = entry.as_u64().unwrap();
        *entry = serde_json::json!((old + 1) % 4);
        let broken: TruncatedKCyclicSet = serde_json::from_value(repr).unwrap();
        let report = broken.validate();
        assert!(!report.is_empty());
        assert!(report.iter().any(|v| v.relation.contains("d1@2")));
    }

    #[test]
    fn epicyclic_maps_for_c2() {
        let c2 = cyclic_nerve(&FiniteCategory::cyclic_group(2), 3);
        let m = nerve_epicyclic(&c2, 1, 2).unwrap();
        assert!(m.phi.iter().all(|(a, b)| a == b));
        assert!(m.p.iter().enumerate().all(|(a, &b)| a == b));
        let m = nerve_epicyclic(&c2, 2, 0).unwrap();
        let ee = c2.find(1, &[0, 0]).unwrap();
        let ss = c2.find(1, &[1, 1]).unwrap();
        assert_eq!(m.phi, BTreeMap::from([(ee, 0), (ss, 1)]));
        assert_eq!(m.p, vec![ee, ss]);
        assert!(c2.phi(2, 0, c2.find(1, &[0, 1]).unwrap()).is_err());
    }
}
