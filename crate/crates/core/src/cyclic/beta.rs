use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use super::{subdivide, EpicyclicMaps, TruncatedKCyclicSet};
use crate::error::{bail, Result};
use crate::pericyclic::{PiMor, PiObject};

/// The functor `β: Π → Sets` of an epicyclic set, `β(n, a) = sd_a(Y)^{C_a}(n)`.
///
/// Elements of `β(n, a)` are reported as elements of `Y` on level
/// `a(n+1) − 1`.
pub struct Beta<'a, E: EpicyclicMaps> {
    y: &'a TruncatedKCyclicSet,
    maps: &'a E,
    subdivisions: Mutex<HashMap<u64, TruncatedKCyclicSet>>,
}

impl<'a, E: EpicyclicMaps> Beta<'a, E> {
    pub fn new(y: &'a TruncatedKCyclicSet, maps: &'a E) -> Self {
        Beta { y, maps, subdivisions: Mutex::new(HashMap::new()) }
    }

    fn level(&self, obj: PiObject) -> Result<usize> {
        let lvl = (obj.a as usize).checked_mul(obj.n + 1).map(|l| l - 1);
        match lvl {
            Some(l) if l <= self.y.max_level() => Ok(l),
            _ => bail!(OutOfTruncation, "β{obj} lies beyond the truncation level {}", self.y.max_level()),
        }
    }

    pub fn contains(&self, obj: PiObject, x: usize) -> Result<bool> {
        let l = self.level(obj)?;
        Ok(x < self.y.size(l) && self.y.rotate(l, x, obj.n + 1) == x)
    }

    /// The elements of `β(n, a)`, ascending.
    pub fn object(&self, obj: PiObject) -> Result<Vec<usize>> {
        let l = self.level(obj)?;
        Ok((0..self.y.size(l)).filter(|&x| self.y.rotate(l, x, obj.n + 1) == x).collect())
    }

    fn with_subdivision<T>(&self, b: u64, f: impl FnOnce(&TruncatedKCyclicSet) -> Result<T>) -> Result<T> {
        let mut cache = self.subdivisions.lock().expect("cache lock");
        let sd = match cache.entry(b) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(subdivide(self.y, b as usize)?),
        };
        f(sd)
    }

    /// `β(h, f)` on one element. With `f = f_{r,s}` and `h = id_power ∘ ℓ`
    /// this is `ℓ` acting on `sd_b(Y)^{C_b}` after `φ_r`.
    pub fn apply(&self, p: &PiMor, x: usize) -> Result<usize> {
        let (src, dst) = (p.src(), p.dst());
        if !self.contains(src, x)? {
            bail!(Precondition, "element {x} is not in β{src}");
        }
        self.level(dst)?;
        let (r, s, b) = (p.f().r() as usize, p.f().s() as usize, p.f().dst());
        let mid = b as usize * s * (src.n + 1) - 1;
        let y = if r == 1 { x } else { self.maps.phi(r, mid, x)? };
        let l = p.h().split_degree();
        if l.is_identity() {
            return Ok(y);
        }
        self.with_subdivision(b, |sd| sd.eval_at(&l, y))
    }

    /// `β(h, f)` as a map on all of `β(src)`.
    pub fn map(&self, p: &PiMor) -> Result<BTreeMap<usize, usize>> {
        self.object(p.src())?.into_iter().map(|x| Ok((x, self.apply(p, x)?))).collect()
    }
}
