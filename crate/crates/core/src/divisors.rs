//! Divisors on finite pointed sets: the Γ-set `HA` for `A = ℚ`, its
//! sub-Γ-set `O_∞`, smash products and the action of `S[±1]`.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{bail, Error, Result};
use crate::ternary::Trit;

pub type Rational = Ratio<i64>;

fn overflow() -> Error {
    Error::ResourceLimit("rational arithmetic overflows i64".into())
}

/// The pointed set `{0, …, len−1}` with a chosen basepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointedSet {
    pub len: usize,
    pub basepoint: usize,
}

impl PointedSet {
    pub fn new(len: usize, basepoint: usize) -> Result<Self> {
        if basepoint >= len {
            bail!(InvalidInput, "basepoint {basepoint} not among {len} elements");
        }
        Ok(PointedSet { len, basepoint })
    }

    /// `{0, 1, …, k}` pointed at 0, the skeleton object `k_+`.
    pub fn standard(k: usize) -> Self {
        PointedSet { len: k + 1, basepoint: 0 }
    }

    /// The pointed set `{−1, 0, 1}` pointed at 0, stored as `[0, 1, −1]`.
    pub fn signs() -> Self {
        PointedSet { len: 3, basepoint: 0 }
    }

    /// The non-basepoint elements in increasing order.
    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&x| x != self.basepoint)
    }
}

/// A basepoint-preserving map of pointed sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedMap {
    src: PointedSet,
    dst: PointedSet,
    images: Vec<usize>,
}

impl PointedMap {
    pub fn new(src: PointedSet, dst: PointedSet, images: Vec<usize>) -> Result<Self> {
        if images.len() != src.len {
            bail!(InvalidInput, "map needs {} images, got {}", src.len, images.len());
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= dst.len) {
            bail!(InvalidInput, "image {bad} outside the target");
        }
        if images[src.basepoint] != dst.basepoint {
            bail!(Precondition, "map does not preserve basepoints");
        }
        Ok(PointedMap { src, dst, images })
    }

    pub fn identity(x: PointedSet) -> Self {
        PointedMap { src: x, dst: x, images: (0..x.len).collect() }
    }

    pub fn src(&self) -> PointedSet {
        self.src
    }

    pub fn dst(&self) -> PointedSet {
        self.dst
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &PointedMap) -> Result<PointedMap> {
        if self.dst != g.src {
            bail!(NotComposable, "target and source pointed sets differ");
        }
        Ok(PointedMap { src: self.src, dst: g.dst, images: self.images.iter().map(|&y| g.images[y]).collect() })
    }

    /// Every pointed map `X → Y`, in lexicographic order of images.
    pub fn all(x: PointedSet, y: PointedSet) -> Vec<PointedMap> {
        let free: Vec<usize> = x.points().collect();
        let mut out = Vec::new();
        let mut images = vec![0; x.len];
        images[x.basepoint] = y.basepoint;
        loop {
            out.push(PointedMap { src: x, dst: y, images: images.clone() });
            let mut i = free.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                let slot = free[i];
                if images[slot] + 1 < y.len {
                    images[slot] += 1;
                    break;
                }
                images[slot] = 0;
            }
        }
    }
}

/// A `ℚ`-valued divisor on a pointed set, zero at the basepoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    carrier: PointedSet,
    values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    element: usize,
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct DivisorRepr {
    size: usize,
    basepoint: usize,
    values: Vec<Entry>,
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(element, v)| Entry { element, num: *v.numer(), den: *v.denom() })
            .collect();
        DivisorRepr { size: self.carrier.len, basepoint: self.carrier.basepoint, values }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DivisorRepr::deserialize(d)?;
        let carrier = PointedSet::new(r.size, r.basepoint).map_err(serde::de::Error::custom)?;
        let mut values = vec![Rational::zero(); r.size];
        for e in r.values {
            if e.den == 0 || e.element >= r.size {
                return Err(serde::de::Error::custom("bad divisor entry"));
            }
            values[e.element] = Rational::new(e.num, e.den);
        }
        Divisor::new(carrier, values).map_err(serde::de::Error::custom)
    }
}

impl Divisor {
    pub fn new(carrier: PointedSet, values: Vec<Rational>) -> Result<Self> {
        if values.len() != carrier.len {
            bail!(InvalidInput, "divisor needs {} values, got {}", carrier.len, values.len());
        }
        if !values[carrier.basepoint].is_zero() {
            bail!(InvalidInput, "divisor must vanish at the basepoint");
        }
        Ok(Divisor { carrier, values })
    }

    pub fn zero(carrier: PointedSet) -> Self {
        Divisor { carrier, values: vec![Rational::zero(); carrier.len] }
    }

    /// Mass 1 at a non-basepoint element.
    pub fn delta(carrier: PointedSet, x: usize) -> Result<Self> {
        let mut values = vec![Rational::zero(); carrier.len];
        values[x] = Rational::one();
        Divisor::new(carrier, values)
    }

    /// Integer numerators over a common denominator `den`.
    pub fn from_numerators(carrier: PointedSet, nums: &[i64], den: i64) -> Result<Self> {
        if den == 0 {
            bail!(InvalidInput, "zero denominator");
        }
        Divisor::new(carrier, nums.iter().map(|&p| Rational::new(p, den)).collect())
    }

    pub fn carrier(&self) -> PointedSet {
        self.carrier
    }

    pub fn value(&self, x: usize) -> Rational {
        self.values[x]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `∑_x |D(x)|`.
    pub fn norm(&self) -> Result<Rational> {
        self.values.iter().try_fold(Rational::zero(), |acc, v| acc.checked_add(&v.abs()).ok_or_else(overflow))
    }
}

/// `f_*(D)(y) = ∑_{f(x) = y} D(x)`.
pub fn pushforward(f: &PointedMap, d: &Divisor) -> Result<Divisor> {
    if f.src != d.carrier {
        bail!(NotComposable, "divisor does not live on the source of the map");
    }
    let mut values = vec![Rational::zero(); f.dst.len];
    for (x, v) in d.values.iter().enumerate() {
        let y = f.images[x];
        if y != f.dst.basepoint && !v.is_zero() {
            values[y] = values[y].checked_add(v).ok_or_else(overflow)?;
        }
    }
    Ok(Divisor { carrier: f.dst, values })
}

/// `∑ |D(x)| ≤ 1`.
pub fn oinfty_member(d: &Divisor) -> Result<bool> {
    Ok(d.norm()? <= Rational::one())
}

/// `X ∧ Y` with the basepoint at 0 and `(x, y)` at `1 + i·(|Y|−1) + j`,
/// where `i`, `j` are the ranks of `x`, `y` among the non-basepoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Smash {
    pub set: PointedSet,
    pub left: PointedSet,
    pub right: PointedSet,
}

impl Smash {
    fn rank(s: PointedSet, x: usize) -> usize {
        if x > s.basepoint {
            x - 1
        } else {
            x
        }
    }

    /// Position of the pair `(x, y)`; the basepoint if either coordinate is.
    pub fn pair(&self, x: usize, y: usize) -> usize {
        if x == self.left.basepoint || y == self.right.basepoint {
            return 0;
        }
        1 + Self::rank(self.left, x) * (self.right.len - 1) + Self::rank(self.right, y)
    }
}

pub fn smash(x: PointedSet, y: PointedSet) -> Smash {
    Smash { set: PointedSet::standard((x.len - 1) * (y.len - 1)), left: x, right: y }
}

/// `S[±1](X) = X ∧ {−1, 0, 1}`.
pub fn spm1_set(x: PointedSet) -> Smash {
    smash(x, PointedSet::signs())
}

/// `(D ∧ E)(x, y) = D(x)·E(y)`.
pub fn divisor_smash(d: &Divisor, e: &Divisor) -> Result<(Smash, Divisor)> {
    let sm = smash(d.carrier, e.carrier);
    let mut values = vec![Rational::zero(); sm.set.len];
    for x in d.carrier.points() {
        for y in e.carrier.points() {
            values[sm.pair(x, y)] = d.values[x].checked_mul(&e.values[y]).ok_or_else(overflow)?;
        }
    }
    let out = Divisor { carrier: sm.set, values };
    Ok((sm, out))
}

/// Multiplication of every value by a sign, `(−1)·x = −x`.
pub fn spm1_act(sign: Trit, d: &Divisor) -> Divisor {
    let s = Rational::from_integer(sign.value() as i64);
    Divisor { carrier: d.carrier, values: d.values.iter().map(|v| v * s).collect() }
}
