use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::rf::{rf_compose, RFMor};
use crate::error::{bail, Error, Result};

/// An element of `ℚ/ℤ`, stored as a reduced fraction in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AngleRepr", into = "AngleRepr")]
pub struct RationalAngle {
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct AngleRepr {
    num: i64,
    den: i64,
}

impl TryFrom<AngleRepr> for RationalAngle {
    type Error = Error;

    fn try_from(a: AngleRepr) -> Result<Self> {
        RationalAngle::new(a.num, a.den)
    }
}

impl From<RationalAngle> for AngleRepr {
    fn from(a: RationalAngle) -> Self {
        AngleRepr { num: a.num, den: a.den }
    }
}

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            bail!(InvalidInput, "angle denominator must be positive, got {den}");
        }
        Self::reduce(num as i128, den as i128)
    }

    fn reduce(num: i128, den: i128) -> Result<Self> {
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let den = i64::try_from(den).map_err(|_| Error::ResourceLimit("angle denominator overflows".into()))?;
        Ok(RationalAngle { num: num as i64, den })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, other: &RationalAngle) -> Result<RationalAngle> {
        let (a, b) = (self.den as i128, other.den as i128);
        let l = a.lcm(&b);
        Self::reduce(self.num as i128 * (l / a) + other.num as i128 * (l / b), l)
    }

    pub fn scale(&self, k: u64) -> RationalAngle {
        let num = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        Self::reduce(num, self.den as i128).expect("denominator only shrinks")
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `p/q` or an integer (which is `0` in `ℚ/ℤ`).
impl FromStr for RationalAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad angle `{s}`"));
        match s.trim().split_once('/') {
            Some((p, q)) => {
                RationalAngle::new(p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?)
            }
            None => RationalAngle::new(s.trim().parse().map_err(|_| bad())?, 1),
        }
    }
}

/// A morphism `(θ, f_{r,s})` of S′RF.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SRFMor {
    pub angle: RationalAngle,
    #[serde(flatten)]
    pub rf: RFMor,
}

impl SRFMor {
    pub fn new(angle: RationalAngle, rf: RFMor) -> Self {
        SRFMor { angle, rf }
    }

    /// The image under `Id × Fr` in `U(1) ⋉ ℕ^×`.
    pub fn to_monoid(&self) -> (RationalAngle, u64) {
        (self.angle, self.rf.s())
    }
}

impl fmt::Display for SRFMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.angle, self.rf)
    }
}

/// The two composition rules for angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionLaw {
    /// `(θ, f_{r,s}) ∘ (τ, f_{p,q}) = (qθ + τ, f_{rp,sq})`.
    #[default]
    Corrected,
    /// `(θ, f_{r,s}) ∘ (τ, f_{p,q}) = (θ + sτ, f_{rp,sq})`.
    Legacy,
}

impl FromStr for CompositionLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(CompositionLaw::Corrected),
            "legacy" => Ok(CompositionLaw::Legacy),
            other => bail!(Parse, "unknown composition law `{other}`"),
        }
    }
}

pub fn srf_compose(g: &SRFMor, f: &SRFMor, law: CompositionLaw) -> Result<SRFMor> {
    let rf = rf_compose(&g.rf, &f.rf)?;
    let angle = match law {
        CompositionLaw::Corrected => g.angle.scale(f.rf.s()).add(&f.angle)?,
        CompositionLaw::Legacy => g.angle.add(&f.angle.scale(g.rf.s()))?,
    };
    Ok(SRFMor { angle, rf })
}

/// `(θ_1, s) ∘ (θ_2, q) = (θ_1 + s·θ_2, sq)` in `U(1) ⋉ ℕ^×`.
pub fn monoid_compose(x: (RationalAngle, u64), y: (RationalAngle, u64)) -> Result<(RationalAngle, u64)> {
    let s = x.1.checked_mul(y.1).ok_or_else(|| Error::ResourceLimit("scale overflows".into()))?;
    Ok((x.0.add(&y.0.scale(x.1))?, s))
}
