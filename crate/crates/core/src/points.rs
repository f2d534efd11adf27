//! Points of the topos `R̂` as supernatural numbers `∏ p^{e_p}`, equivalently
//! subgroups `ℤ ⊆ H ⊆ ℚ`.
//!
//! Only points with finitely many exceptional primes are representable: all
//! other primes share a default exponent, `0` (near `ℤ`) or `∞` (near `Ẑ`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{bail, Error, Result};

/// An exponent in `ℕ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u32),
    Inf,
}

impl Exponent {
    pub fn is_inf(&self) -> bool {
        matches!(self, Exponent::Inf)
    }

    fn shift_down(self, v: i64) -> Option<Exponent> {
        match self {
            Exponent::Inf => Some(Exponent::Inf),
            Exponent::Finite(e) => u32::try_from(e as i64 - v).ok().map(Exponent::Finite),
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Inf, Exponent::Inf) => Ordering::Equal,
            (Exponent::Inf, _) => Ordering::Greater,
            (_, Exponent::Inf) => Ordering::Less,
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(Exponent::Inf),
            t => t.parse().map(Exponent::Finite).map_err(|_| Error::Parse(format!("bad exponent `{s}`"))),
        }
    }
}

/// Exponent shared by every prime not listed explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DefaultExponent {
    Zero,
    Inf,
}

impl DefaultExponent {
    fn exponent(self) -> Exponent {
        match self {
            DefaultExponent::Zero => Exponent::Finite(0),
            DefaultExponent::Inf => Exponent::Inf,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// A supernatural number with finitely many exceptional primes, stored
/// minimally (no exceptional exponent equals the default).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Supernatural {
    default: DefaultExponent,
    exceptional: BTreeMap<u64, Exponent>,
}

impl Supernatural {
    pub fn new(default: DefaultExponent, exceptional: BTreeMap<u64, Exponent>) -> Result<Self> {
        if let Some(p) = exceptional.keys().find(|&&p| !is_prime(p)) {
            bail!(InvalidInput, "{p} is not prime");
        }
        let d = default.exponent();
        let exceptional = exceptional.into_iter().filter(|(_, e)| *e != d).collect();
        Ok(Supernatural { default, exceptional })
    }

    /// The point `ℤ` (the supernatural number 1).
    pub fn one() -> Self {
        Supernatural { default: DefaultExponent::Zero, exceptional: BTreeMap::new() }
    }

    /// The point `Ẑ` (every exponent infinite).
    pub fn zhat() -> Self {
        Supernatural { default: DefaultExponent::Inf, exceptional: BTreeMap::new() }
    }

    pub fn from_integer(n: u64) -> Result<Self> {
        if n == 0 {
            bail!(InvalidInput, "supernatural numbers are positive");
        }
        let exceptional = factorize(n).into_iter().map(|(p, e)| (p, Exponent::Finite(e))).collect();
        Ok(Supernatural { default: DefaultExponent::Zero, exceptional })
    }

    /// `p^∞`.
    pub fn prime_power_inf(p: u64) -> Result<Self> {
        Supernatural::new(DefaultExponent::Zero, BTreeMap::from([(p, Exponent::Inf)]))
    }

    pub fn default_exponent(&self) -> DefaultExponent {
        self.default
    }

    pub fn exceptional(&self) -> &BTreeMap<u64, Exponent> {
        &self.exceptional
    }

    pub fn exponent(&self, p: u64) -> Exponent {
        self.exceptional.get(&p).copied().unwrap_or(self.default.exponent())
    }

    /// Whether `n` divides the supernatural number, i.e. `n ∈ J`.
    pub fn contains(&self, n: u64) -> Result<bool> {
        if n == 0 {
            bail!(InvalidInput, "n must be positive");
        }
        Ok(factorize(n).into_iter().all(|(p, e)| Exponent::Finite(e) <= self.exponent(p)))
    }

    /// Exponentwise maximum.
    pub fn join(&self, other: &Supernatural) -> Supernatural {
        let default = self.default.max(other.default);
        let keys: BTreeSet<u64> = self.exceptional.keys().chain(other.exceptional.keys()).copied().collect();
        let exceptional = keys.into_iter().map(|p| (p, self.exponent(p).max(other.exponent(p)))).collect();
        Supernatural::new(default, exceptional).expect("keys are primes")
    }

    /// `J_S ⊆ J_T`, i.e. exponentwise `≤`.
    pub fn point_leq(&self, other: &Supernatural) -> bool {
        if self.default > other.default {
            return false;
        }
        self.exceptional.keys().chain(other.exceptional.keys()).all(|&p| self.exponent(p) <= other.exponent(p))
    }

    /// Whether `c/n ∈ H`, i.e. the reduced denominator lies in `J`.
    pub fn q_membership(&self, num: i64, den: u64) -> Result<bool> {
        if den == 0 {
            bail!(InvalidInput, "zero denominator");
        }
        let g = (num.unsigned_abs()).gcd(&den);
        self.contains(den / g)
    }

    /// `q·H` for `q = ∏ p^{v_p}`, or `None` if it no longer contains `ℤ`.
    pub fn rescale(&self, valuations: &BTreeMap<u64, i64>) -> Result<Option<Supernatural>> {
        if let Some(p) = valuations.keys().find(|&&p| !is_prime(p)) {
            bail!(InvalidInput, "{p} is not prime");
        }
        let mut exceptional = self.exceptional.clone();
        for (&p, &v) in valuations {
            match self.exponent(p).shift_down(v) {
                Some(e) => {
                    exceptional.insert(p, e);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(Supernatural::new(self.default, exceptional)?))
    }

    /// `q·H` for a positive rational `q = num/den`.
    pub fn rescale_by(&self, num: u64, den: u64) -> Result<Option<Supernatural>> {
        if num == 0 || den == 0 {
            bail!(InvalidInput, "rescaling factor must be a positive rational");
        }
        let mut v: BTreeMap<u64, i64> = factorize(num).into_iter().map(|(p, e)| (p, e as i64)).collect();
        for (p, e) in factorize(den) {
            *v.entry(p).or_insert(0) -= e as i64;
        }
        self.rescale(&v)
    }

    /// Same point of `N̂^×`: `H_S = q·H_T` for some `q ∈ ℚ_+^×`. For this
    /// representation that means the same primes carry infinite exponents.
    pub fn nhat_equivalent(&self, other: &Supernatural) -> bool {
        self.default == other.default
            && self
                .exceptional
                .keys()
                .chain(other.exceptional.keys())
                .all(|&p| self.exponent(p).is_inf() == other.exponent(p).is_inf())
    }
}

/// Whether a finite `J ⊂ ℕ^×` is divisor-closed and directed.
pub fn flat_check(j: &[u64]) -> bool {
    let set: BTreeSet<u64> = j.iter().copied().collect();
    if set.is_empty() || set.contains(&0) {
        return false;
    }
    let closed = set.iter().all(|&a| (1..=a).filter(|b| a % b == 0).all(|b| set.contains(&b)));
    let directed = set.iter().all(|&a| set.iter().all(|&b| set.iter().any(|&c| c % a == 0 && c % b == 0)));
    closed && directed
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |p: &u64, e: &Exponent| match e {
            Exponent::Finite(1) => p.to_string(),
            e => format!("{p}^{e}"),
        };
        match self.default {
            DefaultExponent::Zero => {
                if self.exceptional.is_empty() {
                    return f.write_str("1");
                }
                let parts: Vec<String> = self.exceptional.iter().map(|(p, e)| factor(p, e)).collect();
                f.write_str(&parts.join("*"))
            }
            DefaultExponent::Inf => {
                if self.exceptional.is_empty() {
                    return f.write_str("zhat");
                }
                let parts: Vec<String> = self.exceptional.iter().map(|(p, e)| format!("{p}^{e}")).collect();
                write!(f, "zhat[{}]", parts.join(","))
            }
        }
    }
}

fn parse_prime(s: &str) -> Result<u64> {
    let p: u64 = s.trim().parse().map_err(|_| Error::Parse(format!("bad prime `{s}`")))?;
    if !is_prime(p) {
        bail!(InvalidInput, "{p} is not prime");
    }
    Ok(p)
}

/// Grammar: `1`, `45`, `3*2^inf`, `2^inf*3^inf`, `zhat`, `zhat[2^0,3^1]`.
impl FromStr for Supernatural {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("zhat") {
            let rest = rest.trim();
            let mut exceptional = BTreeMap::new();
            if !rest.is_empty() {
                let inner = rest
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("bad supernatural `{s}`")))?;
                for item in inner.split(',').map(str::trim).filter(|i| !i.is_empty()) {
                    let (p, e) = item.split_once('^').ok_or_else(|| Error::Parse(format!("`{item}` needs p^e")))?;
                    exceptional.insert(parse_prime(p)?, e.parse()?);
                }
            }
            return Supernatural::new(DefaultExponent::Inf, exceptional);
        }
        if s.is_empty() {
            bail!(Parse, "empty supernatural number");
        }
        let mut exps: BTreeMap<u64, Exponent> = BTreeMap::new();
        let mut bump = |p: u64, e: Exponent| {
            let cur = exps.entry(p).or_insert(Exponent::Finite(0));
            *cur = match (*cur, e) {
                (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
                _ => Exponent::Inf,
            };
        };
        for factor in s.split('*').map(str::trim) {
            match factor.split_once('^') {
                Some((p, e)) => bump(parse_prime(p)?, e.parse()?),
                None => {
                    let n: u64 = factor.parse().map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
                    if n == 0 {
                        bail!(InvalidInput, "supernatural numbers are positive");
                    }
                    for (p, e) in factorize(n) {
                        bump(p, Exponent::Finite(e));
                    }
                }
            }
        }
        Supernatural::new(DefaultExponent::Zero, exps)
    }
}

#[derive(Serialize, Deserialize)]
struct ExceptionalRepr {
    prime: String,
    exponent: String,
}

#[derive(Serialize, Deserialize)]
struct SupernaturalRepr {
    default: String,
    exceptional: Vec<ExceptionalRepr>,
}

impl Serialize for Supernatural {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let default = match self.default {
            DefaultExponent::Zero => "0",
            DefaultExponent::Inf => "inf",
        };
        let exceptional = self
            .exceptional
            .iter()
            .map(|(p, e)| ExceptionalRepr { prime: p.to_string(), exponent: e.to_string() })
            .collect();
        SupernaturalRepr { default: default.into(), exceptional }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Supernatural {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SupernaturalRepr::deserialize(d)?;
        let default = match r.default.as_str() {
            "0" => DefaultExponent::Zero,
            "inf" => DefaultExponent::Inf,
            other => return Err(D::Error::custom(format!("bad default `{other}`"))),
        };
        let mut exceptional = BTreeMap::new();
        for e in r.exceptional {
            let p = parse_prime(&e.prime).map_err(D::Error::custom)?;
            exceptional.insert(p, e.exponent.parse().map_err(D::Error::custom)?);
        }
        Supernatural::new(default, exceptional).map_err(D::Error::custom)
    }
}
