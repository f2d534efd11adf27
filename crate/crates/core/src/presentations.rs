//! The oriented groupoids `g(m) = (ℤ/(m+1)ℤ) ⋉ ℤ` and Kaledin's categories
//! `[n]_Λ`, with the conversions to the Z_max model.

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::zmax::ArcMap;

/// Default bound on `|h|` when checking the orientation axioms.
pub const DEFAULT_FRAGMENT_BOUND: i64 = 16;

/// An arrow `(x, h)` of `g(m)`: source `x`, range `x + h mod (m+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupoidElement {
    pub ambient: usize,
    pub x: usize,
    pub h: i64,
}

impl GroupoidElement {
    pub fn new(ambient: usize, x: i64, h: i64) -> Self {
        let x = x.rem_euclid(ambient as i64 + 1) as usize;
        GroupoidElement { ambient, x, h }
    }

    pub fn unit(ambient: usize, x: usize) -> Self {
        Self::new(ambient, x as i64, 0)
    }

    fn modulus(&self) -> i64 {
        self.ambient as i64 + 1
    }

    pub fn source(&self) -> usize {
        self.x
    }

    pub fn range(&self) -> usize {
        (self.x as i64 + self.h).rem_euclid(self.modulus()) as usize
    }

    /// Membership in the positive cone `G_+`.
    pub fn is_positive(&self) -> bool {
        self.h >= 0
    }

    pub fn is_unit(&self) -> bool {
        self.h == 0
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.ambient, self.range() as i64, -self.h)
    }
}

/// `a ∘ b`, defined when `s(a) = r(b)`.
pub fn g_compose(a: &GroupoidElement, b: &GroupoidElement) -> Result<GroupoidElement> {
    if a.ambient != b.ambient {
        bail!(NotComposable, "elements of g({}) and g({})", a.ambient, b.ambient);
    }
    if a.source() != b.range() {
        bail!(NotComposable, "source {} of the left factor differs from range {} of the right", a.source(), b.range());
    }
    Ok(GroupoidElement { ambient: a.ambient, x: b.x, h: a.h + b.h })
}

/// Every element of `g(m)` with `|h| ≤ bound`.
pub fn fragment(ambient: usize, bound: i64) -> Vec<GroupoidElement> {
    (0..=ambient)
        .flat_map(|x| (-bound..=bound).map(move |h| GroupoidElement { ambient, x, h }))
        .collect()
}

/// Checks `G_+ ∩ G_+⁻¹ = G⁽⁰⁾`, `G_+ ∪ G_+⁻¹ = G`, invertibility and
/// associativity on the fragment `|h| ≤ bound`.
pub fn check_orientation_axioms(ambient: usize, bound: i64) -> Result<()> {
    let elems = fragment(ambient, bound);
    for e in &elems {
        let inv = e.inverse();
        if (e.is_positive() && inv.is_positive()) != e.is_unit() {
            bail!(Precondition, "G_+ ∩ G_+^-1 contains the non-unit {e:?}");
        }
        if !(e.is_positive() || inv.is_positive()) {
            bail!(Precondition, "{e:?} is neither positive nor negative");
        }
        let left = g_compose(&inv, e)?;
        let right = g_compose(e, &inv)?;
        if left != GroupoidElement::unit(ambient, e.source()) || right != GroupoidElement::unit(ambient, e.range()) {
            bail!(Precondition, "{e:?} has no two-sided inverse");
        }
    }
    let small: Vec<_> = elems.iter().filter(|e| e.h.abs() <= bound / 2).collect();
    for a in &small {
        for b in small.iter().filter(|b| a.source() == b.range()) {
            for c in small.iter().filter(|c| b.source() == c.range()) {
                let l = g_compose(&g_compose(a, b)?, c)?;
                let r = g_compose(a, &g_compose(b, c)?)?;
                if l != r {
                    bail!(Precondition, "associativity fails at {a:?}, {b:?}, {c:?}");
                }
            }
        }
    }
    Ok(())
}

fn validate_lengths(dst_period: usize, f0: usize, lengths: &[u64]) -> Result<usize> {
    if lengths.is_empty() {
        bail!(InvalidInput, "length sequence must be non-empty");
    }
    if f0 >= dst_period {
        bail!(InvalidInput, "f0 = {f0} is not a residue mod {dst_period}");
    }
    let total: u64 = lengths.iter().sum();
    if total == 0 || total % dst_period as u64 != 0 {
        bail!(InvalidInput, "total length {total} is not a positive multiple of {dst_period}");
    }
    Ok((total / dst_period as u64) as usize)
}

fn partial_sums(f0: usize, lengths: &[u64]) -> Vec<i64> {
    let mut v = Vec::with_capacity(lengths.len());
    let mut acc = f0 as i64;
    for &l in lengths {
        v.push(acc);
        acc += l as i64;
    }
    v
}

fn increments(f: &ArcMap) -> (usize, Vec<u64>) {
    let v = f.values();
    let n = v.len();
    let span = (f.dst_period() * f.degree()) as i64;
    let lengths = (0..n)
        .map(|j| if j + 1 < n { v[j + 1] - v[j] } else { v[0] + span - v[n - 1] } as u64)
        .collect();
    (v[0] as usize, lengths)
}

/// A non-trivial functor `g(src) → g(dst)`, described by the image `f0` of
/// object 0 and the lengths `ℓ_j` of the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupoidMor {
    pub src: usize,
    pub dst: usize,
    pub f0: usize,
    pub lengths: Vec<u64>,
}

impl GroupoidMor {
    pub fn new(src: usize, dst: usize, f0: usize, lengths: Vec<u64>) -> Result<Self> {
        let mor = GroupoidMor { src, dst, f0, lengths };
        mor.validate()?;
        Ok(mor)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lengths.len() != self.src + 1 {
            bail!(InvalidInput, "g({}) needs {} lengths, got {}", self.src, self.src + 1, self.lengths.len());
        }
        validate_lengths(self.dst + 1, self.f0, &self.lengths).map(|_| ())
    }

    pub fn identity(m: usize) -> Self {
        GroupoidMor { src: m, dst: m, f0: 0, lengths: vec![1; m + 1] }
    }

    pub fn degree(&self) -> usize {
        (self.lengths.iter().sum::<u64>() / (self.dst as u64 + 1)) as usize
    }

    /// Object map `x ↦ f0 + ℓ_0 + … + ℓ_{x−1} mod (dst+1)`.
    pub fn object_map(&self, x: usize) -> usize {
        let s: u64 = self.lengths[..x].iter().sum();
        ((self.f0 as u64 + s) % (self.dst as u64 + 1)) as usize
    }

    /// Image of an arrow `(x, h)` of `g(src)`.
    pub fn apply(&self, e: &GroupoidElement) -> Result<GroupoidElement> {
        if e.ambient != self.src {
            bail!(NotComposable, "element of g({}) fed to a functor on g({})", e.ambient, self.src);
        }
        let arc = self.to_arc();
        let x = e.x as i64;
        Ok(GroupoidElement::new(self.dst, arc.evaluate(x), arc.evaluate(x + e.h) - arc.evaluate(x)))
    }

    pub fn to_arc(&self) -> ArcMap {
        ArcMap::normalize(partial_sums(self.f0, &self.lengths), self.src + 1, self.dst + 1, self.degree())
            .expect("valid groupoid morphism")
    }

    pub fn from_arc(f: &ArcMap) -> Self {
        let (f0, lengths) = increments(f);
        GroupoidMor { src: f.src_period() - 1, dst: f.dst_period() - 1, f0, lengths }
    }

    /// `G ∘ self`.
    pub fn then(&self, g: &GroupoidMor) -> Result<GroupoidMor> {
        let k = compose_functor(&p_functor(g), &p_functor(self))?;
        Ok(GroupoidMor { src: self.src, dst: g.dst, f0: k.f0, lengths: k.lengths })
    }
}

/// A non-degenerate functor `[src]_Λ → [dst]_Λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KaledinFunctor {
    pub src: usize,
    pub dst: usize,
    pub f0: usize,
    pub lengths: Vec<u64>,
}

/// Which of the three classes of Kaledin's definition a functor lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub vertical: bool,
    pub horizontal: bool,
    pub nondegenerate: bool,
}

impl KaledinFunctor {
    pub fn new(src: usize, dst: usize, f0: usize, lengths: Vec<u64>) -> Result<Self> {
        let k = KaledinFunctor { src, dst, f0, lengths };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        if self.src == 0 || self.dst == 0 {
            bail!(InvalidInput, "[n]_Λ needs n ≥ 1");
        }
        if self.lengths.len() != self.src {
            bail!(InvalidInput, "[{}]_Λ needs {} lengths, got {}", self.src, self.src, self.lengths.len());
        }
        validate_lengths(self.dst, self.f0, &self.lengths).map(|_| ())
    }

    pub fn identity(n: usize) -> Self {
        KaledinFunctor { src: n, dst: n, f0: 0, lengths: vec![1; n] }
    }

    pub fn deg(&self) -> usize {
        (self.lengths.iter().sum::<u64>() / self.dst as u64) as usize
    }

    pub fn object_map(&self, x: usize) -> usize {
        let s: u64 = self.lengths[..x].iter().sum();
        ((self.f0 as u64 + s) % self.dst as u64) as usize
    }

    pub fn to_arc(&self) -> ArcMap {
        ArcMap::normalize(partial_sums(self.f0, &self.lengths), self.src, self.dst, self.deg())
            .expect("valid Kaledin functor")
    }

    pub fn from_arc(f: &ArcMap) -> Self {
        let (f0, lengths) = increments(f);
        KaledinFunctor { src: f.src_period(), dst: f.dst_period(), f0, lengths }
    }
}

/// The index shift `g(n) ↦ [n+1]_Λ`.
pub fn p_functor(f: &GroupoidMor) -> KaledinFunctor {
    KaledinFunctor { src: f.src + 1, dst: f.dst + 1, f0: f.f0, lengths: f.lengths.clone() }
}

/// `G ∘ F` computed on objects and generator lengths.
pub fn compose_functor(g: &KaledinFunctor, f: &KaledinFunctor) -> Result<KaledinFunctor> {
    if f.dst != g.src {
        bail!(NotComposable, "[{}]_Λ -> [{}]_Λ after [{}]_Λ -> [{}]_Λ", g.src, g.dst, f.src, f.dst);
    }
    let lengths = (0..f.src)
        .map(|x| {
            let start = f.object_map(x);
            (0..f.lengths[x] as usize).map(|j| g.lengths[(start + j) % g.src]).sum()
        })
        .collect();
    Ok(KaledinFunctor { src: f.src, dst: g.dst, f0: g.object_map(f.f0), lengths })
}

pub fn classify(f: &KaledinFunctor) -> Classification {
    let deg = f.deg();
    Classification { vertical: f.lengths.iter().all(|&l| l == 1), horizontal: deg == 1, nondegenerate: deg >= 1 }
}

/// All Kaledin functors `[n]_Λ → [m]_Λ` of degree exactly `deg`, enumerated
/// directly from `(f0, ℓ)`.
pub fn enumerate_functors(n: usize, m: usize, deg: usize) -> Vec<KaledinFunctor> {
    fn go(rest: u64, slots: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for l in 0..=rest {
            cur.push(l);
            go(rest - l, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut seqs = Vec::new();
    go((m * deg) as u64, n, &mut Vec::new(), &mut seqs);
    (0..m)
        .flat_map(|f0| seqs.iter().map(move |l| KaledinFunctor { src: n, dst: m, f0, lengths: l.clone() }))
        .collect()
}
