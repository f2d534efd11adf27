use std::fmt;

use serde::{Deserialize, Serialize};

use super::rf::{rf_compose, RFMor};
use crate::error::{bail, Error, Result};
use crate::zmax::{compose, generator, ArcMap, GeneratorSpec};

/// An object `(n, a)` of Π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, u64)", into = "(usize, u64)")]
pub struct PiObject {
    pub n: usize,
    pub a: u64,
}

impl From<(usize, u64)> for PiObject {
    fn from((n, a): (usize, u64)) -> Self {
        PiObject { n, a }
    }
}

impl From<PiObject> for (usize, u64) {
    fn from(o: PiObject) -> Self {
        (o.n, o.a)
    }
}

impl fmt::Display for PiObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.a)
    }
}

/// A morphism `(h, f): (n, a) → (m, b)` of Π. `h` is stored as the
/// underlying map `E_{m+1} → E_{n+1}` of its Λ̃^op arrow.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PiRepr", into = "PiRepr")]
pub struct PiMor {
    src: PiObject,
    dst: PiObject,
    h: ArcMap,
    f: RFMor,
}

#[derive(Serialize, Deserialize)]
struct PiRepr {
    src: PiObject,
    dst: PiObject,
    h: ArcMap,
    f: RFMor,
}

impl TryFrom<PiRepr> for PiMor {
    type Error = Error;

    fn try_from(p: PiRepr) -> Result<Self> {
        let mor = PiMor::new(p.h, p.f)?;
        if mor.src != p.src || mor.dst != p.dst {
            bail!(InvalidInput, "endpoints {} -> {} do not match the components", p.src, p.dst);
        }
        Ok(mor)
    }
}

impl From<PiMor> for PiRepr {
    fn from(p: PiMor) -> Self {
        PiRepr { src: p.src, dst: p.dst, h: p.h, f: p.f }
    }
}

/// Which projection of Π to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    Lambda,
    Pi,
}

impl std::str::FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(Projection::Lambda),
            "pi" => Ok(Projection::Pi),
            other => bail!(Parse, "unknown projection `{other}`"),
        }
    }
}

/// The value of a projection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Projected {
    Lambda(ArcMap),
    Pi(RFMor),
}

impl PiMor {
    /// Pairs `h: E_{m+1} → E_{n+1}` with `f: a → b`, requiring `Fr(f) = Mod(h)`.
    pub fn new(h: ArcMap, f: RFMor) -> Result<Self> {
        if f.s() != h.degree() as u64 {
            bail!(Precondition, "Fr(f) = {} differs from Mod(h) = {}", f.s(), h.degree());
        }
        let src = PiObject { n: h.dst_period() - 1, a: f.src() };
        let dst = PiObject { n: h.src_period() - 1, a: f.dst() };
        Ok(PiMor { src, dst, h, f })
    }

    pub fn identity(obj: PiObject) -> Self {
        PiMor::new(ArcMap::identity(obj.n + 1), RFMor::identity(obj.a)).expect("identity is valid")
    }

    /// `ℓ × f_{1,1}` for a degree-1 map `ℓ: E_{m+1} → E_{n+1}`.
    pub fn horizontal(l: ArcMap, b: u64) -> Result<Self> {
        PiMor::new(l, RFMor::new(b, 1, 1)?)
    }

    pub fn src(&self) -> PiObject {
        self.src
    }

    pub fn dst(&self) -> PiObject {
        self.dst
    }

    pub fn h(&self) -> &ArcMap {
        &self.h
    }

    pub fn f(&self) -> &RFMor {
        &self.f
    }

    pub fn is_identity(&self) -> bool {
        self.h.is_identity() && self.f.r() == 1 && self.f.s() == 1
    }
}

impl fmt::Display for PiMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [h = {}, f = {}]", self.src, self.dst, self.h, self.f)
    }
}

/// `g ∘ f`; the Λ̃ components compose in the opposite order.
pub fn pi_compose(g: &PiMor, f: &PiMor) -> Result<PiMor> {
    if f.dst != g.src {
        bail!(NotComposable, "target {} differs from source {}", f.dst, g.src);
    }
    let h = compose(&f.h, &g.h)?;
    let rf = rf_compose(&g.f, &f.f)?;
    assert_eq!(rf.s(), h.degree() as u64, "Fr = Mod must survive composition");
    Ok(PiMor { src: f.src, dst: g.dst, h, f: rf })
}

/// `χ(n, s, d) = (Id_n^{s,o}, f_{1,s}): (n, sd) → (s(n+1)−1, d)`.
pub fn chi(n: usize, s: usize, d: u64) -> Result<PiMor> {
    if s == 0 || d == 0 {
        bail!(InvalidInput, "χ needs s ≥ 1 and d ≥ 1");
    }
    let h = generator(&GeneratorSpec::IdPower { n: n + 1, s })?;
    PiMor::new(h, RFMor::new(d, 1, s as u64)?)
}

/// The localizing morphism `Id × f_{r,1}: (n, rb) → (n, b)`.
pub fn w_morphism(n: usize, b: u64, r: u64) -> Result<PiMor> {
    PiMor::new(ArcMap::identity(n + 1), RFMor::new(b, r, 1)?)
}

pub fn project(p: &PiMor, which: Projection) -> Projected {
    match which {
        Projection::Lambda => Projected::Lambda(p.h.clone()),
        Projection::Pi => Projected::Pi(p.f),
    }
}
