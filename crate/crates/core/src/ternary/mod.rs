//! Balanced-ternary presentation of the integers.
//!
//! An integer is stored as a finitely supported digit vector `(a_0, a_1, ...)`
//! with `a_j ∈ {-1, 0, 1}`, read as `∑ a_j 3^j`. Addition is carried out
//! digit by digit with the F_3 carry function `σ`, which is exactly Witt
//! vector addition over F_3 restricted to finitely supported vectors; the
//! Teichmüller lift at p = 3 is the identity on the balanced representatives,
//! so the digit vectors double as Witt vectors.

mod carry;

use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{bail, Error, Result};

pub use carry::{carry_polynomial, carry_polynomial_bounded, CarryPolynomial, CarryTerm, MAX_CARRY_ORDER};

/// An element of `{-1, 0, 1}`: a balanced-ternary digit, an element of the
/// monoid S[±1] and the balanced representative of an element of F_3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Trit(i8);

impl Trit {
    pub const NEG: Trit = Trit(-1);
    pub const ZERO: Trit = Trit(0);
    pub const POS: Trit = Trit(1);

    pub const ALL: [Trit; 3] = [Trit::NEG, Trit::ZERO, Trit::POS];

    pub fn new(value: i8) -> Result<Self> {
        match value {
            -1..=1 => Ok(Trit(value)),
            _ => bail!(InvalidInput, "digit {value} is not in {{-1, 0, 1}}"),
        }
    }

    /// Balanced residue of `m` modulo 3.
    pub fn balanced_residue(m: i64) -> Self {
        match m.rem_euclid(3) {
            0 => Trit(0),
            1 => Trit(1),
            _ => Trit(-1),
        }
    }

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Mul for Trit {
    type Output = Trit;

    fn mul(self, rhs: Trit) -> Trit {
        Trit(self.0 * rhs.0)
    }
}

impl Neg for Trit {
    type Output = Trit;

    fn neg(self) -> Trit {
        Trit(-self.0)
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Trit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.0)
    }
}

impl<'de> Deserialize<'de> for Trit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = i8::deserialize(deserializer)?;
        Trit::new(v).map_err(serde::de::Error::custom)
    }
}

/// The F_3 carry function
/// `σ(α,β,γ) = αβγ − α²β − α²γ − αβ² − αγ² − β²γ − βγ²`,
/// returned as its balanced representative.
pub fn sigma(a: Trit, b: Trit, c: Trit) -> Trit {
    let (a, b, c) = (a.0 as i64, b.0 as i64, c.0 as i64);
    let s = a * b * c - a * a * b - a * a * c - a * b * b - a * c * c - b * b * c - b * c * c;
    Trit::balanced_residue(s)
}

/// Sum of three digits as a polynomial of degree at most one:
/// `a + b + c = residue + carry·X`, with `residue + 3·carry = a + b + c`.
pub fn triple_sum(a: Trit, b: Trit, c: Trit) -> (Trit, Trit) {
    let total = a.0 as i64 + b.0 as i64 + c.0 as i64;
    (Trit::balanced_residue(total), sigma(a, b, c))
}

/// A finitely supported balanced-ternary digit vector, little-endian.
///
/// Canonical form has no trailing zero digits; zero is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TritVector {
    digits: Vec<Trit>,
}

impl TritVector {
    pub fn zero() -> Self {
        TritVector { digits: Vec::new() }
    }

    /// Builds a vector from raw digits, dropping trailing zeros.
    pub fn from_trits(mut digits: Vec<Trit>) -> Self {
        while digits.last().is_some_and(|d| d.is_zero()) {
            digits.pop();
        }
        TritVector { digits }
    }

    pub fn from_digits(digits: &[i8]) -> Result<Self> {
        let trits = digits.iter().map(|&d| Trit::new(d)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_trits(trits))
    }

    pub fn digits(&self) -> &[Trit] {
        &self.digits
    }

    /// Number of digits; zero has none.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit `j`, zero beyond the support.
    pub fn digit(&self, j: usize) -> Trit {
        self.digits.get(j).copied().unwrap_or(Trit::ZERO)
    }

    pub fn encode(m: &BigInt) -> Self {
        let three = BigInt::from(3);
        let mut digits = Vec::new();
        let mut rest = m.clone();
        while !rest.is_zero() {
            let r = rest.mod_floor(&three);
            let d = if r.is_zero() {
                Trit::ZERO
            } else if r.is_one() {
                Trit::POS
            } else {
                Trit::NEG
            };
            rest -= d.0;
            rest /= &three;
            digits.push(d);
        }
        TritVector { digits }
    }

    pub fn decode(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for d in self.digits.iter().rev() {
            acc *= 3;
            acc += d.0;
        }
        acc
    }

    /// Exact value as `i128` when it fits.
    pub fn to_i128(&self) -> Option<i128> {
        let mut acc: i128 = 0;
        for d in self.digits.iter().rev() {
            acc = acc.checked_mul(3)?.checked_add(d.0 as i128)?;
        }
        Some(acc)
    }

    /// Digitwise sum via the carry recursion `s_0 = 0`,
    /// `s_{n+1} = σ(α_n, β_n, s_n)`, `γ_n = α_n + β_n + s_n`.
    pub fn add(&self, other: &TritVector) -> TritVector {
        let len = self.len().max(other.len());
        let mut out = Vec::with_capacity(len + 1);
        let mut carry = Trit::ZERO;
        for j in 0..len {
            let (a, b) = (self.digit(j), other.digit(j));
            let (digit, next) = triple_sum(a, b, carry);
            out.push(digit);
            carry = next;
        }
        out.push(carry);
        TritVector::from_trits(out)
    }

    /// Product with a single monomial `sign·X^shift`.
    pub fn mul_monomial(&self, sign: Trit, shift: usize) -> TritVector {
        if sign.is_zero() || self.is_zero() {
            return TritVector::zero();
        }
        let mut digits = vec![Trit::ZERO; shift];
        digits.extend(self.digits.iter().map(|&d| d * sign));
        TritVector { digits }
    }

    /// Product obtained by distributing over monomials of `other` and
    /// accumulating the shifted partial products with [`TritVector::add`].
    pub fn mul(&self, other: &TritVector) -> TritVector {
        let mut acc = TritVector::zero();
        for (j, &d) in other.digits.iter().enumerate() {
            if !d.is_zero() {
                acc = acc.add(&self.mul_monomial(d, j));
            }
        }
        acc
    }

    pub fn negate(&self) -> TritVector {
        TritVector { digits: self.digits.iter().map(|&d| -d).collect() }
    }
}

impl From<i64> for TritVector {
    fn from(m: i64) -> Self {
        TritVector::encode(&BigInt::from(m))
    }
}

impl From<&BigInt> for TritVector {
    fn from(m: &BigInt) -> Self {
        TritVector::encode(m)
    }
}

impl Add for &TritVector {
    type Output = TritVector;

    fn add(self, rhs: &TritVector) -> TritVector {
        TritVector::add(self, rhs)
    }
}

impl Mul for &TritVector {
    type Output = TritVector;

    fn mul(self, rhs: &TritVector) -> TritVector {
        TritVector::mul(self, rhs)
    }
}

impl Neg for &TritVector {
    type Output = TritVector;

    fn neg(self) -> TritVector {
        self.negate()
    }
}

impl fmt::Display for TritVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

/// Accepts `[-1, 1]`, `-1,1`, `-1 1` and the empty list `[]`.
impl FromStr for TritVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut digits = Vec::new();
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: i64 = tok.parse().map_err(|_| Error::Parse(format!("bad digit `{tok}`")))?;
            if !(-1..=1).contains(&v) {
                bail!(InvalidInput, "digit {v} is not in {{-1, 0, 1}}");
            }
            digits.push(Trit(v as i8));
        }
        Ok(TritVector::from_trits(digits))
    }
}

impl Serialize for TritVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.digits.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TritVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let digits = Vec::<Trit>::deserialize(deserializer)?;
        if digits.last().is_some_and(|d| d.is_zero()) {
            return Err(serde::de::Error::custom("digit vector has trailing zeros"));
        }
        Ok(TritVector { digits })
    }
}

/// Teichmüller-style evaluation `∑ τ(ξ_j) 3^j` of a finitely supported Witt
/// vector over F_3; with balanced representatives this is [`TritVector::decode`].
pub fn teichmuller_value(witt: &TritVector) -> BigInt {
    witt.decode()
}

/// Sign of a big integer as a trit.
pub fn signum(m: &BigInt) -> Trit {
    if m.is_positive() {
        Trit::POS
    } else if m.is_negative() {
        Trit::NEG
    } else {
        Trit::ZERO
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(d: &[i8]) -> TritVector {
        TritVector::from_digits(d).unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(TritVector::from(0), tv(&[]));
        assert_eq!(TritVector::from(2), tv(&[-1, 1]));
        assert_eq!(TritVector::from(5), tv(&[-1, -1, 1]));
        assert_eq!(TritVector::from(-2), tv(&[1, -1]));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(tv(&[]).decode(), BigInt::from(0));
        assert_eq!(tv(&[-1, 1]).decode(), BigInt::from(2));
        assert_eq!(tv(&[1, 0, -1, 1]).decode(), BigInt::from(19));
    }

    #[test]
    fn triple_sum_examples() {
        let (p, z, n) = (Trit::POS, Trit::ZERO, Trit::NEG);
        assert_eq!(triple_sum(p, p, z), (n, p));
        assert_eq!(triple_sum(p, n, z), (z, z));
        assert_eq!(triple_sum(p, p, p), (z, p));
    }

    #[test]
    fn triple_sum_identity_over_integers() {
        for a in Trit::ALL {
            for b in Trit::ALL {
                for c in Trit::ALL {
                    let (r, k) = triple_sum(a, b, c);
                    assert_eq!(r.0 as i64 + 3 * k.0 as i64, a.0 as i64 + b.0 as i64 + c.0 as i64);
                }
            }
        }
    }

    #[test]
    fn addition_table_matches_one_plus_one_rule() {
        // 1 + 1 = X - 1 and -1 + -1 = 1 - X
        assert_eq!(tv(&[1]).add(&tv(&[1])), tv(&[-1, 1]));
        assert_eq!(tv(&[-1]).add(&tv(&[-1])), tv(&[1, -1]));
        // (X - 1) + 1 = X, (X - 1) - 1 = 1
        assert_eq!(tv(&[-1, 1]).add(&tv(&[1])), tv(&[0, 1]));
        assert_eq!(tv(&[-1, 1]).add(&tv(&[-1])), tv(&[1]));
    }

    #[test]
    fn additive_and_multiplicative_zero() {
        let p = tv(&[1, 0, -1, 1]);
        assert_eq!(p.add(&TritVector::zero()), p);
        assert_eq!(p.mul(&TritVector::zero()), TritVector::zero());
        assert_eq!(TritVector::zero().mul(&p), TritVector::zero());
    }

    #[test]
    fn mul_example() {
        assert_eq!(tv(&[-1, 1]).mul(&tv(&[1, 1])), tv(&[-1, 0, 1]));
        assert_eq!(tv(&[-1, 0, 1]).decode(), BigInt::from(8));
    }

    #[test]
    fn exhaustive_small_ring_isomorphism() {
        for a in -60i64..=60 {
            for b in -60i64..=60 {
                let (pa, pb) = (TritVector::from(a), TritVector::from(b));
                assert_eq!(pa.add(&pb).to_i128(), Some((a + b) as i128));
                assert_eq!(pa.mul(&pb).to_i128(), Some((a * b) as i128));
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let v: TritVector = "[-1, 1]".parse().unwrap();
        assert_eq!(v, tv(&[-1, 1]));
        assert_eq!(v.to_string(), "[-1, 1]");
        assert_eq!("".parse::<TritVector>().unwrap(), TritVector::zero());
        assert_eq!("1 0 0".parse::<TritVector>().unwrap(), tv(&[1]));
        assert!(matches!("[2]".parse::<TritVector>(), Err(Error::InvalidInput(_))));
        assert!(matches!("[x]".parse::<TritVector>(), Err(Error::Parse(_))));
    }

    #[test]
    fn serde_rejects_non_canonical_and_bad_digits() {
        assert_eq!(serde_json::to_string(&tv(&[-1, 1])).unwrap(), "[-1,1]");
        assert!(serde_json::from_str::<TritVector>("[1,0]").is_err());
        assert!(serde_json::from_str::<TritVector>("[1,2]").is_err());
        assert_eq!(serde_json::from_str::<TritVector>("[0,1]").unwrap(), tv(&[0, 1]));
    }

    #[test]
    fn negation_is_digitwise() {
        for m in -100i64..=100 {
            assert_eq!(TritVector::from(m).negate(), TritVector::from(-m));
        }
    }
}
