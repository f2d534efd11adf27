//! Morphisms of the cyclic category Λ and the epicyclic category Λ̃ in the
//! Z_max projective model.
//!
//! An object is the module `E_N` (`N ≥ 1` is its period; the usual label
//! `[n]` has `N = n + 1`). A morphism `E_N → E_M` of degree `a` is a
//! non-decreasing `φ: ℤ → ℤ` with `φ(x + N) = φ(x) + M·a`, taken up to the
//! projective equivalence `φ ~ φ + k·M`. It is stored by its values on
//! `0..N`, shifted so that `0 ≤ φ(0) < M`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Error, Result};

/// Upper bound on the size of an enumerated hom-set.
pub const MAX_HOM_ENUMERATION: u128 = 2_000_000;

/// Canonical representative of a morphism `E_N → E_M` of Λ̃.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ArcMapRepr", into = "ArcMapRepr")]
pub struct ArcMap {
    src_period: usize,
    dst_period: usize,
    degree: usize,
    values: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ArcMapRepr {
    src_period: usize,
    dst_period: usize,
    degree: usize,
    values: Vec<i64>,
}

impl TryFrom<ArcMapRepr> for ArcMap {
    type Error = Error;

    fn try_from(r: ArcMapRepr) -> Result<Self> {
        ArcMap::normalize(r.values, r.src_period, r.dst_period, r.degree)
    }
}

impl From<ArcMap> for ArcMapRepr {
    fn from(f: ArcMap) -> Self {
        ArcMapRepr { src_period: f.src_period, dst_period: f.dst_period, degree: f.degree, values: f.values }
    }
}

impl ArcMap {
    /// Validates a raw period of values and shifts it by a multiple of
    /// `dst_period` into canonical position.
    pub fn normalize(mut values: Vec<i64>, src_period: usize, dst_period: usize, degree: usize) -> Result<Self> {
        if src_period == 0 || dst_period == 0 {
            bail!(InvalidInput, "periods must be positive");
        }
        if degree == 0 {
            bail!(InvalidInput, "degree must be positive");
        }
        if values.len() != src_period {
            bail!(InvalidInput, "expected {src_period} values, got {}", values.len());
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            bail!(InvalidInput, "values {values:?} are not non-decreasing");
        }
        let span = (dst_period * degree) as i64;
        if values[src_period - 1] - values[0] > span {
            bail!(InvalidInput, "values {values:?} exceed the quasi-period bound {span}");
        }
        let m = dst_period as i64;
        let shift = -values[0].div_euclid(m) * m;
        if shift != 0 {
            values.iter_mut().for_each(|v| *v += shift);
        }
        Ok(ArcMap { src_period, dst_period, degree, values })
    }

    pub fn src_period(&self) -> usize {
        self.src_period
    }

    pub fn dst_period(&self) -> usize {
        self.dst_period
    }

    /// The value of the functor Mod.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Quasi-periodic extension: `φ(r + qN) = v_r + q·M·a`.
    pub fn evaluate(&self, x: i64) -> i64 {
        let n = self.src_period as i64;
        let q = x.div_euclid(n);
        let r = x.rem_euclid(n) as usize;
        self.values[r] + q * (self.dst_period * self.degree) as i64
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "period must be positive");
        ArcMap { src_period: n, dst_period: n, degree: 1, values: (0..n as i64).collect() }
    }

    /// `x ↦ x + 1` on `E_n`.
    pub fn cyclic(n: usize) -> Self {
        Self::rotation(n, 1)
    }

    /// `x ↦ x + j` on `E_n`, i.e. the `j`-th power of [`ArcMap::cyclic`].
    pub fn rotation(n: usize, j: i64) -> Self {
        assert!(n > 0, "period must be positive");
        ArcMap::normalize((0..n as i64).map(|x| x + j).collect(), n, n, 1).expect("rotation is valid")
    }

    pub fn is_identity(&self) -> bool {
        *self == ArcMap::identity(self.src_period)
    }

    /// Whether the canonical representative lands in `[0, M)` on `0..N`,
    /// i.e. the map is an order-preserving map of finite ordinals.
    pub fn is_simplicial(&self) -> bool {
        self.values[self.src_period - 1] < self.dst_period as i64
    }

    /// Composite `self ∘ f`.
    pub fn after(&self, f: &ArcMap) -> Result<ArcMap> {
        compose(self, f)
    }

    /// `f ∘ f ∘ … ∘ f` (`k` times) for an endomorphism; `k = 0` gives the identity.
    pub fn power(&self, k: usize) -> Result<ArcMap> {
        if self.src_period != self.dst_period {
            bail!(NotComposable, "power of a non-endomorphism {self}");
        }
        let mut acc = ArcMap::identity(self.src_period);
        for _ in 0..k {
            acc = compose(self, &acc)?;
        }
        Ok(acc)
    }

    /// Splits `h: E_P → E_Q` of degree `s` as `id_power(Q, s) ∘ ℓ` with
    /// `ℓ: E_P → E_{sQ}` of degree 1; returns `ℓ`.
    pub fn split_degree(&self) -> ArcMap {
        let q = self.dst_period * self.degree;
        ArcMap::normalize(self.values.clone(), self.src_period, q, 1).expect("same values, wider period")
    }

    /// `x ↦ φ(x + 1) − 1`, the conjugate by the rotation pair.
    pub fn rotation_conjugate(&self) -> ArcMap {
        let raw = (0..self.src_period as i64).map(|x| self.evaluate(x + 1) - 1).collect();
        ArcMap::normalize(raw, self.src_period, self.dst_period, self.degree).expect("conjugate is valid")
    }
}

impl fmt::Display for ArcMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}->E{} deg {} {:?}", self.src_period, self.dst_period, self.degree, self.values)
    }
}

/// Composite `g ∘ f`; degrees multiply.
pub fn compose(g: &ArcMap, f: &ArcMap) -> Result<ArcMap> {
    if f.dst_period != g.src_period {
        bail!(NotComposable, "cannot compose {g} after {f}: period {} != {}", g.src_period, f.dst_period);
    }
    let raw = f.values.iter().map(|&v| g.evaluate(v)).collect();
    ArcMap::normalize(raw, f.src_period, g.dst_period, f.degree * g.degree)
}

/// The right Galois adjoint `φ^t(y) = max{x : φ(x) ≤ y}` of a degree-1 map.
pub fn transpose(f: &ArcMap) -> Result<ArcMap> {
    if f.degree != 1 {
        bail!(Precondition, "transpose is only defined for degree 1, got {}", f.degree);
    }
    let n = f.src_period as i64;
    let m = f.dst_period as i64;
    let raw = (0..m)
        .map(|y| {
            f.values
                .iter()
                .enumerate()
                .map(|(r, &v)| r as i64 + n * (y - v).div_euclid(m))
                .max()
                .expect("non-empty period")
        })
        .collect();
    ArcMap::normalize(raw, f.dst_period, f.src_period, 1)
}

/// Selector for the standard generators realised inside the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// Identity of `E_n`.
    Identity { n: usize },
    /// `E_n → E_{n+1}` missing the value `i` (`0 ≤ i ≤ n`).
    Face { n: usize, i: usize },
    /// `E_{n+1} → E_n` hitting `i` twice (`0 ≤ i < n`).
    Degeneracy { n: usize, i: usize },
    /// `x ↦ x + 1` on `E_n`.
    Cyclic { n: usize },
    /// `E_{sn} → E_n`, `x ↦ x`, degree `s`.
    IdPower { n: usize, s: usize },
    /// `x ↦ a·x` on `E_n`, degree `a`.
    Frobenius { n: usize, a: usize },
}

impl GeneratorSpec {
    pub fn to_arc(&self) -> Result<ArcMap> {
        generator(self)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorSpec::Identity { n } => write!(f, "identity({n})"),
            GeneratorSpec::Face { n, i } => write!(f, "face({n},{i})"),
            GeneratorSpec::Degeneracy { n, i } => write!(f, "degeneracy({n},{i})"),
            GeneratorSpec::Cyclic { n } => write!(f, "cyclic({n})"),
            GeneratorSpec::IdPower { n, s } => write!(f, "id_power({n},{s})"),
            GeneratorSpec::Frobenius { n, a } => write!(f, "frobenius({n},{a})"),
        }
    }
}

/// Parses the shorthand printed by `Display`, e.g. `face(2,1)`.
impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(|| Error::Parse(format!("bad generator `{s}`")))?;
        let args = rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("bad generator `{s}`")))?;
        let args: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad argument `{a}` in `{s}`"))))
            .collect::<Result<_>>()?;
        let want = |k: usize| -> Result<()> {
            if args.len() != k {
                bail!(Parse, "`{name}` takes {k} argument(s)");
            }
            Ok(())
        };
        let spec = match name.trim() {
            "identity" | "id" => {
                want(1)?;
                GeneratorSpec::Identity { n: args[0] }
            }
            "face" => {
                want(2)?;
                GeneratorSpec::Face { n: args[0], i: args[1] }
            }
            "degeneracy" => {
                want(2)?;
                GeneratorSpec::Degeneracy { n: args[0], i: args[1] }
            }
            "cyclic" => {
                want(1)?;
                GeneratorSpec::Cyclic { n: args[0] }
            }
            "id_power" => {
                want(2)?;
                GeneratorSpec::IdPower { n: args[0], s: args[1] }
            }
            "frobenius" => {
                want(2)?;
                GeneratorSpec::Frobenius { n: args[0], a: args[1] }
            }
            other => bail!(Parse, "unknown generator `{other}`"),
        };
        Ok(spec)
    }
}

/// Builds the canonical ArcMap of a standard generator.
pub fn generator(spec: &GeneratorSpec) -> Result<ArcMap> {
    let positive = |n: usize| -> Result<()> {
        if n == 0 {
            bail!(InvalidInput, "period must be positive in {spec}");
        }
        Ok(())
    };
    match *spec {
        GeneratorSpec::Identity { n } => {
            positive(n)?;
            Ok(ArcMap::identity(n))
        }
        GeneratorSpec::Face { n, i } => {
            positive(n)?;
            if i > n {
                bail!(InvalidInput, "face index {i} out of range 0..={n}");
            }
            let raw = (0..n as i64).map(|x| if x < i as i64 { x } else { x + 1 }).collect();
            ArcMap::normalize(raw, n, n + 1, 1)
        }
        GeneratorSpec::Degeneracy { n, i } => {
            positive(n)?;
            if i >= n {
                bail!(InvalidInput, "degeneracy index {i} out of range 0..{n}");
            }
            let raw = (0..=n as i64).map(|x| if x <= i as i64 { x } else { x - 1 }).collect();
            ArcMap::normalize(raw, n + 1, n, 1)
        }
        GeneratorSpec::Cyclic { n } => {
            positive(n)?;
            Ok(ArcMap::cyclic(n))
        }
        GeneratorSpec::IdPower { n, s } => {
            positive(n)?;
            if s == 0 {
                bail!(InvalidInput, "id_power exponent must be positive");
            }
            ArcMap::normalize((0..(s * n) as i64).collect(), s * n, n, s)
        }
        GeneratorSpec::Frobenius { n, a } => {
            positive(n)?;
            if a == 0 {
                bail!(InvalidInput, "Frobenius degree must be positive");
            }
            ArcMap::normalize((0..n as i64).map(|x| a as i64 * x).collect(), n, n, a)
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of canonical maps `E_n → E_m` of degree exactly `a`:
/// `m·C(m·a + n − 1, n − 1)`.
pub fn hom_count(n: usize, m: usize, a: usize) -> u128 {
    let (n, m, a) = (n as u128, m as u128, a as u128);
    m.saturating_mul(binomial(m * a + n - 1, n - 1))
}

/// All canonical maps `E_n → E_m` with `1 ≤ degree ≤ max_degree`, ordered
/// lexicographically by `(degree, v_0, increments)`.
pub fn enumerate_hom(n: usize, m: usize, max_degree: usize) -> Result<Vec<ArcMap>> {
    if n == 0 || m == 0 || max_degree == 0 {
        bail!(InvalidInput, "periods and max_degree must be positive");
    }
    let total: u128 = (1..=max_degree).map(|a| hom_count(n, m, a)).fold(0u128, |x, y| x.saturating_add(y));
    if total > MAX_HOM_ENUMERATION {
        bail!(ResourceLimit, "hom-set E{n}->E{m} up to degree {max_degree} has {total} elements");
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut values = vec![0i64; n];
    for a in 1..=max_degree {
        let top = (m * a) as i64;
        for v0 in 0..m as i64 {
            values[0] = v0;
            fill(&mut values, 1, v0 + top, n, m, a, &mut out);
        }
    }
    Ok(out)
}

fn fill(values: &mut [i64], j: usize, bound: i64, n: usize, m: usize, a: usize, out: &mut Vec<ArcMap>) {
    if j == n {
        out.push(ArcMap { src_period: n, dst_period: m, degree: a, values: values.to_vec() });
        return;
    }
    for v in values[j - 1]..=bound {
        values[j] = v;
        fill(values, j + 1, bound, n, m, a, out);
    }
}

/// `f = (faces ∘ degeneracies) ∘ cyclic(N)^rotation`, with the simplicial
/// part listed in application order (all degeneracies, then all faces).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicDecomposition {
    pub rotation: usize,
    pub word: Vec<GeneratorSpec>,
}

impl CyclicDecomposition {
    /// Rebuilds the morphism with source period `n`.
    pub fn recompose(&self, n: usize) -> Result<ArcMap> {
        let mut acc = ArcMap::rotation(n, self.rotation as i64);
        for g in &self.word {
            acc = compose(&generator(g)?, &acc)?;
        }
        Ok(acc)
    }
}

/// Epi-mono factorization of an order-preserving map `[0, n) → [0, m)`
/// given by its values, as a generator word in application order.
pub fn simplicial_word(values: &[i64], m: usize) -> Vec<GeneratorSpec> {
    let n = values.len();
    let mut word = Vec::new();
    // Degeneracies from the right so lower indices stay valid.
    let mut period = n;
    for x in (0..n.saturating_sub(1)).rev() {
        if values[x] == values[x + 1] {
            word.push(GeneratorSpec::Degeneracy { n: period - 1, i: x });
            period -= 1;
        }
    }
    // Faces in increasing order of the missed values.
    for c in (0..m as i64).filter(|y| !values.contains(y)) {
        word.push(GeneratorSpec::Face { n: period, i: c as usize });
        period += 1;
    }
    word
}

/// Unique factorization of a degree-1 map through a rotation of its source.
pub fn decompose_cyclic(f: &ArcMap) -> Result<CyclicDecomposition> {
    if f.degree != 1 {
        bail!(Precondition, "decompose_cyclic needs degree 1, got {}", f.degree);
    }
    let n = f.src_period as i64;
    let m = f.dst_period as i64;
    let mut found: Option<(usize, Vec<i64>)> = None;
    let mut hits = 0;
    for j in 0..n {
        let first = f.evaluate(-j);
        let shift = -first.div_euclid(m) * m;
        let raw: Vec<i64> = (0..n).map(|x| f.evaluate(x - j) + shift).collect();
        if raw[(n - 1) as usize] < m {
            hits += 1;
            found = Some((j as usize, raw));
        }
    }
    assert_eq!(hits, 1, "expected exactly one simplicial rotation for {f}, found {hits}");
    let (rotation, raw) = found.expect("one hit");
    Ok(CyclicDecomposition { rotation, word: simplicial_word(&raw, f.dst_period) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(values: &[i64], n: usize, m: usize, a: usize) -> ArcMap {
        ArcMap::normalize(values.to_vec(), n, m, a).unwrap()
    }

    fn g(s: &str) -> ArcMap {
        s.parse::<GeneratorSpec>().unwrap().to_arc().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(arc(&[3, 4, 5], 3, 3, 1).values(), &[0, 1, 2]);
        assert_eq!(arc(&[-1, 0, 1], 3, 3, 1).values(), &[2, 3, 4]);
        assert_eq!(arc(&[0, 2], 2, 3, 1).values(), &[0, 2]);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert!(ArcMap::normalize(vec![1, 0], 2, 2, 1).is_err());
        assert!(ArcMap::normalize(vec![0, 3], 2, 2, 1).is_err());
        assert!(ArcMap::normalize(vec![0, 1], 3, 2, 1).is_err());
        assert!(ArcMap::normalize(vec![0, 1], 2, 2, 0).is_err());
        assert!(ArcMap::normalize(vec![0, 4], 2, 2, 2).is_ok());
    }

    #[test]
    fn generator_examples() {
        assert_eq!(g("cyclic(3)"), arc(&[1, 2, 3], 3, 3, 1));
        assert_eq!(g("face(2,1)").values(), &[0, 2]);
        assert_eq!(g("face(2,1)").dst_period(), 3);
        let p = g("id_power(2,3)");
        assert_eq!((p.src_period(), p.dst_period(), p.degree()), (6, 2, 3));
        assert_eq!(p.values(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(g("degeneracy(2,0)").values(), &[0, 0, 1]);
        assert_eq!(g("frobenius(2,3)").values(), &[0, 3]);
        assert_eq!(g("cyclic(1)"), ArcMap::identity(1));
    }

    #[test]
    fn generator_rejects_bad_indices() {
        assert!(generator(&GeneratorSpec::Face { n: 2, i: 3 }).is_err());
        assert!(generator(&GeneratorSpec::Degeneracy { n: 2, i: 2 }).is_err());
        assert!(generator(&GeneratorSpec::Identity { n: 0 }).is_err());
        assert!(generator(&GeneratorSpec::IdPower { n: 2, s: 0 }).is_err());
        assert!("face(1)".parse::<GeneratorSpec>().is_err());
        assert!("spin(1)".parse::<GeneratorSpec>().is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(ArcMap::identity(3).evaluate(7), 7);
        assert_eq!(g("cyclic(3)").evaluate(-1), 0);
        assert_eq!(g("id_power(2,3)").evaluate(6), 6);
    }

    #[test]
    fn compose_examples() {
        let f = g("face(2,1)");
        assert_eq!(compose(&ArcMap::identity(3), &f).unwrap(), f);
        let t = g("cyclic(3)");
        assert_eq!(t.power(3).unwrap(), ArcMap::identity(3));
        let h = compose(&g("frobenius(2,2)"), &g("frobenius(2,3)")).unwrap();
        assert_eq!(h.degree(), 6);
        assert_eq!(h.values(), &[0, 6]);
        assert!(matches!(compose(&f, &f), Err(Error::NotComposable(_))));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose(&ArcMap::identity(4)).unwrap(), ArcMap::identity(4));
        assert_eq!(transpose(&g("cyclic(3)")).unwrap(), arc(&[2, 3, 4], 3, 3, 1));
        assert_eq!(transpose(&g("face(2,1)")).unwrap(), arc(&[0, 0, 1], 3, 2, 1));
        assert!(matches!(transpose(&g("frobenius(2,2)")), Err(Error::Precondition(_))));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_hom(1, 5, 1).unwrap().len(), 5);
        assert_eq!(enumerate_hom(2, 2, 1).unwrap().len(), 6);
        let both = enumerate_hom(2, 2, 2).unwrap();
        assert_eq!(both.iter().filter(|f| f.degree() == 2).count(), 10);
        assert!(both.windows(2).all(|w| (w[0].degree, &w[0].values) < (w[1].degree, &w[1].values)));
        assert!(matches!(enumerate_hom(12, 12, 12), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_cyclic(&ArcMap::identity(3)).unwrap();
        assert_eq!(d, CyclicDecomposition { rotation: 0, word: vec![] });
        let d = decompose_cyclic(&g("cyclic(3)")).unwrap();
        assert_eq!(d, CyclicDecomposition { rotation: 1, word: vec![] });
        let d = decompose_cyclic(&g("face(2,1)")).unwrap();
        assert_eq!(d, CyclicDecomposition { rotation: 0, word: vec![GeneratorSpec::Face { n: 2, i: 1 }] });
    }

    #[test]
    fn decompose_round_trip_exhaustive() {
        for n in 1..=5 {
            for m in 1..=5 {
                for f in enumerate_hom(n, m, 1).unwrap() {
                    let d = decompose_cyclic(&f).unwrap();
                    assert!(d.rotation < n);
                    assert_eq!(d.recompose(n).unwrap(), f, "round trip of {f}");
                }
            }
        }
    }

    #[test]
    fn split_degree_factors_through_id_power() {
        for f in enumerate_hom(2, 3, 3).unwrap() {
            let l = f.split_degree();
            let p = generator(&GeneratorSpec::IdPower { n: 3, s: f.degree() }).unwrap();
            assert_eq!(compose(&p, &l).unwrap(), f);
        }
    }

    #[test]
    fn serde_normalizes() {
        let f: ArcMap =
            serde_json::from_str(r#"{"src_period":3,"dst_period":3,"degree":1,"values":[-1,0,1]}"#).unwrap();
        assert_eq!(f.values(), &[2, 3, 4]);
        assert!(serde_json::from_str::<ArcMap>(r#"{"src_period":2,"dst_period":3,"degree":1,"values":[2,0]}"#)
            .is_err());
    }
}
