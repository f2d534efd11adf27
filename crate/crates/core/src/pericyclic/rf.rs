use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Error, Result};

/// `f_{r,s}: a → b` with `a = r·b·s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RFRepr", into = "RFRepr")]
pub struct RFMor {
    src: u64,
    dst: u64,
    r: u64,
    s: u64,
}

#[derive(Serialize, Deserialize)]
struct RFRepr {
    src: u64,
    dst: u64,
    r: u64,
    s: u64,
}

impl TryFrom<RFRepr> for RFMor {
    type Error = Error;

    fn try_from(x: RFRepr) -> Result<Self> {
        let f = RFMor::new(x.dst, x.r, x.s)?;
        if f.src != x.src {
            bail!(InvalidInput, "source {} is not r·b·s = {}", x.src, f.src);
        }
        Ok(f)
    }
}

impl From<RFMor> for RFRepr {
    fn from(f: RFMor) -> Self {
        RFRepr { src: f.src, dst: f.dst, r: f.r, s: f.s }
    }
}

impl RFMor {
    /// `f_{r,s}` into `dst`; the source is `r·dst·s`.
    pub fn new(dst: u64, r: u64, s: u64) -> Result<Self> {
        if dst == 0 || r == 0 || s == 0 {
            bail!(InvalidInput, "RF morphisms need positive b, r, s");
        }
        let src = r
            .checked_mul(dst)
            .and_then(|x| x.checked_mul(s))
            .ok_or_else(|| Error::ResourceLimit(format!("r·b·s overflows for r={r}, b={dst}, s={s}")))?;
        Ok(RFMor { src, dst, r, s })
    }

    pub fn identity(a: u64) -> Self {
        RFMor::new(a, 1, 1).expect("positive object")
    }

    pub fn src(&self) -> u64 {
        self.src
    }

    pub fn dst(&self) -> u64 {
        self.dst
    }

    /// The restriction index `Res(f) = r`.
    pub fn r(&self) -> u64 {
        self.r
    }

    /// The Frobenius index `Fr(f) = s`.
    pub fn s(&self) -> u64 {
        self.s
    }
}

impl fmt::Display for RFMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f_{{{},{}}}: {} -> {}", self.r, self.s, self.src, self.dst)
    }
}

/// `g ∘ f = f_{rp, sq}`.
pub fn rf_compose(g: &RFMor, f: &RFMor) -> Result<RFMor> {
    if f.dst != g.src {
        bail!(NotComposable, "{g} after {f}");
    }
    Ok(RFMor { src: f.src, dst: g.dst, r: g.r * f.r, s: g.s * f.s })
}

/// `Hom_RF(a, b)`, ordered by `r`.
pub fn rf_hom_enum(a: u64, b: u64) -> Result<Vec<RFMor>> {
    if a == 0 || b == 0 {
        bail!(InvalidInput, "objects of RF are positive integers");
    }
    if a % b != 0 {
        return Ok(Vec::new());
    }
    let k = a / b;
    let mut out = Vec::new();
    let mut r = 1;
    while r * r <= k {
        if k % r == 0 {
            out.push(r);
            if r * r != k {
                out.push(k / r);
            }
        }
        r += 1;
    }
    out.sort_unstable();
    Ok(out.into_iter().map(|r| RFMor { src: a, dst: b, r, s: k / r }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_example() {
        let g = RFMor::new(1, 2, 3).unwrap();
        let f = RFMor::new(6, 5, 7).unwrap();
        assert_eq!(f.src(), 210);
        let h = rf_compose(&g, &f).unwrap();
        assert_eq!((h.src(), h.dst(), h.r(), h.s()), (210, 1, 10, 21));
        assert_eq!(rf_compose(&RFMor::identity(1), &g).unwrap(), g);
        assert_eq!(rf_compose(&g, &RFMor::identity(6)).unwrap(), g);
        assert!(rf_compose(&f, &g).is_err());
    }

    #[test]
    fn hom_enum_examples() {
        let h: Vec<_> = rf_hom_enum(12, 3).unwrap().iter().map(|f| (f.r(), f.s())).collect();
        assert_eq!(h, vec![(1, 4), (2, 2), (4, 1)]);
        assert!(rf_hom_enum(3, 12).unwrap().is_empty());
        assert_eq!(rf_hom_enum(7, 7).unwrap(), vec![RFMor::identity(7)]);
    }

    #[test]
    fn serde_checks_factorization() {
        let f = RFMor::new(3, 2, 2).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"src":12,"dst":3,"r":2,"s":2}"#);
        assert_eq!(serde_json::from_str::<RFMor>(&json).unwrap(), f);
        assert!(serde_json::from_str::<RFMor>(r#"{"src":11,"dst":3,"r":2,"s":2}"#).is_err());
    }
}
