//! Parsers for command-line payloads. Every structured argument accepts
//! inline JSON, `@path` to a JSON file, or a short textual form.

use std::fs;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;

use pericyclic::cyclic::FiniteCategory;
use pericyclic::divisors::{Divisor, PointedSet, Rational};
use pericyclic::pericyclic::{chi, w_morphism, PiMor, PiObject, RFMor, RationalAngle, SRFMor};
use pericyclic::zmax::{ArcMap, GeneratorSpec};
use pericyclic::{Error, Result};

fn json_payload(arg: &str) -> Result<Option<String>> {
    if let Some(path) = arg.strip_prefix('@') {
        return fs::read_to_string(path).map(Some).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")));
    }
    let t = arg.trim_start();
    Ok((t.starts_with('{') || t.starts_with('[')).then(|| arg.to_string()))
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn split_call(s: &str) -> Option<(&str, Vec<&str>)> {
    let (name, rest) = s.trim().split_once('(')?;
    let args = rest.strip_suffix(')')?;
    Some((name.trim(), args.split(',').map(str::trim).collect()))
}

fn int<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

pub fn bigint(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

/// JSON, `@file`, a generator such as `face(2,1)`, or `arc(N,M,a;v0,v1,…)`.
pub fn arc(arg: &str) -> Result<ArcMap> {
    if let Some(text) = json_payload(arg)? {
        return from_json(&text);
    }
    let t = arg.trim();
    if let Some(body) = t.strip_prefix("arc(").and_then(|r| r.strip_suffix(')')) {
        let (head, vals) = body.split_once(';').ok_or_else(|| Error::Parse(format!("`{t}` needs `;` before the values")))?;
        let head: Vec<usize> = head.split(',').map(int).collect::<Result<_>>()?;
        if head.len() != 3 {
            bail_parse(t)?;
        }
        let values = vals.split(',').map(int).collect::<Result<_>>()?;
        return ArcMap::normalize(values, head[0], head[1], head[2]);
    }
    t.parse::<GeneratorSpec>()?.to_arc()
}

fn bail_parse(t: &str) -> Result<()> {
    Err(Error::Parse(format!("cannot parse `{t}`")))
}

/// JSON, `@file`, or `angle:r,s:b` (e.g. `1/3:1,2:1`).
pub fn srf(arg: &str) -> Result<SRFMor> {
    if let Some(text) = json_payload(arg)? {
        return from_json(&text);
    }
    let parts: Vec<&str> = arg.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected angle:r,s:b, got `{arg}`")));
    }
    let angle: RationalAngle = parts[0].parse()?;
    let (r, s) = parts[1].split_once(',').ok_or_else(|| Error::Parse(format!("expected r,s in `{arg}`")))?;
    Ok(SRFMor::new(angle, RFMor::new(int(parts[2])?, int(r)?, int(s)?)?))
}

/// JSON, `@file`, `chi(n,s,d)`, `w(n,b,r)` or `id(n,a)`.
pub fn pimor(arg: &str) -> Result<PiMor> {
    if let Some(text) = json_payload(arg)? {
        return from_json(&text);
    }
    match split_call(arg) {
        Some(("chi", a)) if a.len() == 3 => chi(int(a[0])?, int(a[1])?, int(a[2])?),
        Some(("w", a)) if a.len() == 3 => w_morphism(int(a[0])?, int(a[1])?, int(a[2])?),
        Some(("id", a)) if a.len() == 2 => Ok(PiMor::identity(PiObject { n: int(a[0])?, a: int(a[1])? })),
        _ => Err(Error::Parse(format!("cannot parse Π morphism `{arg}`"))),
    }
}

/// `@file` / path to JSON, or a built-in: `terminal`, `cyclic:N`, `order:N`.
pub fn category(arg: &str) -> Result<FiniteCategory> {
    let positive = |s: &str| -> Result<usize> {
        match int::<usize>(s)? {
            0 => Err(Error::InvalidInput("size must be positive".into())),
            n => Ok(n),
        }
    };
    if arg == "terminal" {
        return Ok(FiniteCategory::terminal());
    }
    if let Some(n) = arg.strip_prefix("cyclic:") {
        return Ok(FiniteCategory::cyclic_group(positive(n)?));
    }
    if let Some(n) = arg.strip_prefix("order:") {
        return Ok(FiniteCategory::linear_order(positive(n)?));
    }
    let path = arg.strip_prefix('@').unwrap_or(arg);
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
    FiniteCategory::from_json(&text)
}

fn rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.trim().split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            Ok(Rational::new(p.trim().parse().map_err(|_| bad())?, q))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// A rational `p/q` or integer, as a reduced `(num, den)`.
pub fn fraction(s: &str) -> Result<(i64, u64)> {
    let r = rational(s)?;
    Ok((*r.numer(), *r.denom() as u64))
}

/// JSON, `@file`, or comma-separated values with the basepoint at 0
/// (e.g. `0,1/2,1/3`).
pub fn divisor(arg: &str) -> Result<Divisor> {
    if let Some(text) = json_payload(arg)? {
        return from_json(&text);
    }
    let values: Vec<Rational> = arg.split(',').map(rational).collect::<Result<_>>()?;
    Divisor::new(PointedSet::new(values.len(), 0)?, values)
}

pub fn index_list(arg: &str) -> Result<Vec<usize>> {
    arg.split(',').map(int).collect()
}
