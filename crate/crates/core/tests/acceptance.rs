//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, RandBigInt};
use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pericyclic::cyclic::{
    cyclic_nerve, fixed_points, nerve_epicyclic, relation_instances, subdivide, Beta, CyclicNerve, EpicyclicMaps,
    FiniteCategory,
};
use pericyclic::divisors::{divisor_smash, oinfty_member, pushforward, Divisor, PointedMap, PointedSet, Rational};
use pericyclic::pericyclic::{
    chi, monoid_compose, pi_compose, project, rf_compose, srf_compose, w_morphism, CompositionLaw, PiMor, Projected,
    Projection, RFMor, RationalAngle, SRFMor,
};
use pericyclic::points::{DefaultExponent, Exponent, Supernatural};
use pericyclic::presentations::{compose_functor, enumerate_functors, p_functor, GroupoidMor, KaledinFunctor};
use pericyclic::ternary::{carry_polynomial, CarryTerm, Trit, TritVector};
use pericyclic::zmax::{compose, enumerate_hom, generator, transpose, ArcMap, GeneratorSpec};
use pericyclic::Error;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: pericyclic::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn trits(values: &[i8]) -> TritVector {
    TritVector::from_digits(values).expect("digits in range")
}

fn c1_ternary_ring() -> Check {
    let enc: Vec<TritVector> = (-2000i64..=2000).map(|m| TritVector::encode(&BigInt::from(m))).collect();
    for (i, a) in (-2000i64..=2000).enumerate() {
        for (j, b) in (-2000i64..=2000).enumerate() {
            let s = enc[i].add(&enc[j]).to_i128();
            ensure!(s == Some((a + b) as i128), "add({a}, {b}) gave {s:?}");
            let p = enc[i].mul(&enc[j]).to_i128();
            ensure!(p == Some((a * b) as i128), "mul({a}, {b}) gave {p:?}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let a = rng.gen_bigint(256);
        let b = rng.gen_bigint(256);
        let (ea, eb) = (TritVector::encode(&a), TritVector::encode(&b));
        ensure!(ea.add(&eb).decode() == &a + &b, "add failed on {a}, {b}");
        ensure!(ea.mul(&eb).decode() == &a * &b, "mul failed on {a}, {b}");
    }
    Ok(())
}

/// The carry into position `n` of `A + B` over `{−1, 0, 1}`: the `c` with
/// `|A + B − c·3^n| ≤ (3^n − 1)/2`.
fn carry_oracle(alpha: &[Trit], beta: &[Trit]) -> i64 {
    let val = |d: &[Trit]| d.iter().rev().fold(0i64, |acc, t| 3 * acc + t.value() as i64);
    let sum = val(alpha) + val(beta);
    let p = 3i64.pow(alpha.len() as u32);
    let c = [-1, 0, 1].into_iter().filter(|c| (sum - c * p).abs() <= (p - 1) / 2).collect::<Vec<_>>();
    assert_eq!(c.len(), 1);
    c[0]
}

fn c2_carry_polynomials() -> Check {
    let term = |e: [u8; 4], c: i8| CarryTerm { exponents: e.to_vec(), coeff: c };
    let s2 = [
        term([2, 1, 2, 0], 1),
        term([2, 0, 1, 2], 1),
        term([2, 2, 1, 0], 1),
        term([2, 0, 2, 1], 1),
        term([2, 1, 1, 1], -1),
        term([1, 2, 2, 0], 1),
        term([1, 0, 2, 2], 1),
        term([1, 1, 1, 0], 1),
        term([1, 1, 2, 1], -1),
        term([1, 0, 1, 1], 1),
        term([0, 1, 0, 2], -1),
        term([0, 2, 0, 1], -1),
    ];
    let s1 = carry_polynomial(1).map_err(|e| e.to_string())?;
    ensure!(s1.to_string() == "-a0*b0^2 - a0^2*b0", "s_1 = {s1}");
    let s2_got = ok(carry_polynomial(2))?;
    let mut want: Vec<CarryTerm> = s2.to_vec();
    want.sort_by(|a, b| a.exponents.cmp(&b.exponents));
    ensure!(s2_got.terms() == want, "s_2 = {s2_got}");
    for n in 1..=3 {
        let p = ok(carry_polynomial(n))?;
        let total = 3usize.pow(2 * n as u32);
        for code in 0..total {
            let mut c = code;
            let digits: Vec<Trit> = (0..2 * n)
                .map(|_| {
                    let t = Trit::ALL[c % 3];
                    c /= 3;
                    t
                })
                .collect();
            let (alpha, beta) = digits.split_at(n);
            let want = carry_oracle(alpha, beta);
            ensure!(p.evaluate(alpha, beta).value() as i64 == want, "s_{n} disagrees at {alpha:?}, {beta:?}");
        }
    }
    Ok(())
}

fn c3_carry_locality() -> Check {
    const LEN: usize = 4;
    let total = 3usize.pow(2 * LEN as u32);
    let mut checked = 0;
    for code in 0..total {
        let mut c = code;
        let digits: Vec<i8> = (0..2 * LEN)
            .map(|_| {
                let t = (c % 3) as i8 - 1;
                c /= 3;
                t
            })
            .collect();
        let (a, b) = digits.split_at(LEN);
        let sum = trits(a).add(&trits(b));
        for n in 1..=LEN {
            let zero = |d: &[i8], j: usize| d.get(j).map_or(true, |&x| x == 0);
            if zero(a, n) && zero(a, n - 1) && zero(b, n) && zero(b, n - 1) {
                ensure!(sum.digit(n).is_zero(), "gamma_{n} nonzero for {a:?} + {b:?}");
                checked += 1;
            }
        }
    }
    ensure!(checked > 0, "no instances");
    Ok(())
}

fn degree_one(max_period: usize) -> pericyclic::Result<Vec<ArcMap>> {
    let mut out = Vec::new();
    for n in 1..=max_period {
        for m in 1..=max_period {
            out.extend(enumerate_hom(n, m, 1)?);
        }
    }
    Ok(out)
}

fn c4_self_duality() -> Check {
    let maps = ok(degree_one(4))?;
    let mut pairs = 0;
    for f in &maps {
        let ft = ok(transpose(f))?;
        ensure!(ok(transpose(&ft))? == f.rotation_conjugate(), "double transpose of {f}");
        for g in maps.iter().filter(|g| g.src_period() == f.dst_period()) {
            let lhs = ok(transpose(&ok(compose(g, f))?))?;
            let rhs = ok(compose(&ft, &ok(transpose(g))?))?;
            ensure!(lhs == rhs, "(g∘f)^t != f^t∘g^t for g = {g}, f = {f}");
            pairs += 1;
        }
    }
    ensure!(pairs >= 1000, "only {pairs} pairs");
    Ok(())
}

fn c5_lambda_tilde_vs_lambda_r() -> Check {
    let mut all = Vec::new();
    for n in 1..=4 {
        for m in 1..=4 {
            for a in 1..=3 {
                let arcs: Vec<ArcMap> = ok(enumerate_hom(n, m, a))?.into_iter().filter(|f| f.degree() == a).collect();
                let functors = enumerate_functors(n, m, a);
                let formula = m as u64 * binomial((m * a + n - 1) as u64, (n - 1) as u64);
                ensure!(
                    arcs.len() as u64 == formula && functors.len() as u64 == formula,
                    "counts differ for ({n},{m},{a}): {} arcs, {} functors, formula {formula}",
                    arcs.len(),
                    functors.len()
                );
                let from_functors: BTreeSet<ArcMap> = functors.iter().map(KaledinFunctor::to_arc).collect();
                ensure!(from_functors.len() == arcs.len(), "functors are not injective into arcs");
                for f in &arcs {
                    let g = GroupoidMor::from_arc(f);
                    ensure!(g.to_arc() == *f, "groupoid round trip of {f}");
                    let k = p_functor(&g);
                    ensure!(k == KaledinFunctor::from_arc(f) && k.to_arc() == *f, "Kaledin round trip of {f}");
                    ensure!(k.deg() == f.degree(), "deg != Mod for {f}");
                    ensure!(from_functors.contains(f), "{f} missing among functors");
                }
                all.extend(arcs);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sampled = 0;
    while sampled < 500 {
        let f = &all[rng.gen_range(0..all.len())];
        let gs: Vec<&ArcMap> = all.iter().filter(|g| g.src_period() == f.dst_period()).collect();
        let g = gs[rng.gen_range(0..gs.len())];
        let gf = ok(compose(g, f))?;
        let (kf, kg) = (KaledinFunctor::from_arc(f), KaledinFunctor::from_arc(g));
        ensure!(ok(compose_functor(&kg, &kf))? == KaledinFunctor::from_arc(&gf), "functor composite of {g} ∘ {f}");
        let gg = ok(GroupoidMor::from_arc(f).then(&GroupoidMor::from_arc(g)))?;
        ensure!(gg == GroupoidMor::from_arc(&gf), "groupoid composite of {g} ∘ {f}");
        sampled += 1;
    }
    Ok(())
}

fn angle(num: i64, den: i64) -> RationalAngle {
    RationalAngle::new(num, den).expect("nonzero denominator")
}

/// `θ mod 1` as a reduced fraction.
fn frac(r: Rational) -> (i64, i64) {
    let f = r - r.floor();
    (*f.numer(), *f.denom())
}

fn as_rational(a: RationalAngle) -> Rational {
    Rational::new(a.num(), a.den())
}

fn c6_srf_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let random_angle = |rng: &mut ChaCha8Rng| {
        let den = rng.gen_range(1..=120);
        angle(rng.gen_range(0..den), den)
    };
    let laws = [CompositionLaw::Corrected, CompositionLaw::Legacy];
    for _ in 0..10_000 {
        let d = rng.gen_range(1..=4);
        let h = RFMor::new(d, rng.gen_range(1..=4), rng.gen_range(1..=4)).unwrap();
        let g = RFMor::new(h.src(), rng.gen_range(1..=4), rng.gen_range(1..=4)).unwrap();
        let f = RFMor::new(g.src(), rng.gen_range(1..=4), rng.gen_range(1..=4)).unwrap();
        let (h, g, f) = (
            SRFMor::new(random_angle(&mut rng), h),
            SRFMor::new(random_angle(&mut rng), g),
            SRFMor::new(random_angle(&mut rng), f),
        );
        for law in laws {
            let left = ok(srf_compose(&ok(srf_compose(&h, &g, law))?, &f, law))?;
            let right = ok(srf_compose(&h, &ok(srf_compose(&g, &f, law))?, law))?;
            ensure!(left == right, "{law:?} not associative on {h}, {g}, {f}");
        }
        let gf = ok(srf_compose(&g, &f, CompositionLaw::Corrected))?;
        let want = frac(as_rational(g.angle) * Rational::from(f.rf.s() as i64) + as_rational(f.angle));
        ensure!((gf.angle.num(), gf.angle.den()) == want, "corrected angle of {g} ∘ {f}");
        let legacy = ok(srf_compose(&g, &f, CompositionLaw::Legacy))?;
        let want = frac(as_rational(g.angle) + as_rational(f.angle) * Rational::from(g.rf.s() as i64));
        ensure!((legacy.angle.num(), legacy.angle.den()) == want, "legacy angle of {g} ∘ {f}");
        ensure!(
            gf.to_monoid() == ok(monoid_compose(f.to_monoid(), g.to_monoid()))?,
            "Id×Fr is not a functor into the opposite monoid on {g}, {f}"
        );
    }
    let g = SRFMor::new(angle(1, 3), RFMor::new(1, 1, 2).unwrap());
    let f = SRFMor::new(angle(1, 5), RFMor::new(2, 3, 1).unwrap());
    let c = ok(srf_compose(&g, &f, CompositionLaw::Corrected))?;
    let l = ok(srf_compose(&g, &f, CompositionLaw::Legacy))?;
    ensure!(c.angle == angle(8, 15) && l.angle == angle(11, 15), "witness pair gave {c} and {l}");
    ensure!(c.rf.r() == 3 && c.rf.s() == 2, "witness RF part {c}");
    Ok(())
}

/// Horizontal cyclic generators, χ and W morphisms with small parameters.
fn pi_generators(max_n: usize, max_param: u64) -> pericyclic::Result<Vec<PiMor>> {
    let mut out = Vec::new();
    for p in 1..=max_n + 1 {
        let mut specs = vec![GeneratorSpec::Cyclic { n: p }];
        specs.extend((0..p).map(|i| GeneratorSpec::Face { n: p, i }));
        if p >= 2 {
            specs.extend((0..p - 1).map(|i| GeneratorSpec::Degeneracy { n: p - 1, i }));
        }
        for spec in specs {
            let l = generator(&spec)?;
            if l.src_period() > max_n + 1 || l.dst_period() > max_n + 1 {
                continue;
            }
            for b in 1..=max_param {
                out.push(PiMor::horizontal(l.clone(), b)?);
            }
        }
    }
    for n in 0..=max_n {
        for s in 1..=max_param as usize {
            if s * (n + 1) - 1 <= max_n {
                for d in 1..=max_param {
                    out.push(chi(n, s, d)?);
                }
            }
        }
        for b in 1..=max_param {
            for r in 1..=max_param {
                out.push(w_morphism(n, b, r)?);
            }
        }
    }
    Ok(out)
}

fn lambda(p: &PiMor) -> ArcMap {
    match project(p, Projection::Lambda) {
        Projected::Lambda(h) => h,
        Projected::Pi(_) => unreachable!(),
    }
}

fn pi(p: &PiMor) -> RFMor {
    match project(p, Projection::Pi) {
        Projected::Pi(f) => f,
        Projected::Lambda(_) => unreachable!(),
    }
}

fn c7_pi_wellformed() -> Check {
    let gens = ok(pi_generators(3, 3))?;
    let mut composites = Vec::new();
    for f in &gens {
        for g in gens.iter().filter(|g| g.src() == f.dst()) {
            let gf = ok(pi_compose(g, f))?;
            ensure!(gf.f().s() as usize == gf.h().degree(), "Fr != Mod on {gf}");
            ensure!(lambda(&gf) == ok(compose(&lambda(f), &lambda(g)))?, "λ not functorial on {g} ∘ {f}");
            ensure!(pi(&gf) == ok(rf_compose(&pi(g), &pi(f)))?, "π not functorial on {g} ∘ {f}");
            composites.push((g.clone(), f.clone(), gf));
        }
    }
    ensure!(!composites.is_empty(), "no composable pairs");
    for (g, f, gf) in composites.iter().take(2000) {
        for e in gens.iter().filter(|e| e.src() == gf.dst()) {
            let left = ok(pi_compose(&ok(pi_compose(e, g))?, f))?;
            ensure!(left == ok(pi_compose(e, gf))?, "Π not associative on {e}, {g}, {f}");
        }
    }
    for n in 0..=3 {
        for s in 1..=3 {
            let want = generator(&GeneratorSpec::IdPower { n: n + 1, s }).unwrap();
            ensure!(lambda(&ok(chi(n, s, 1))?) == want, "λ(χ({n},{s},1)) != Id^(s)");
        }
        for b in 1..=3 {
            for r in 1..=3 {
                ensure!(lambda(&ok(w_morphism(n, b, r))?).is_identity(), "λ(W) not an identity");
            }
        }
    }
    for g in &gens {
        if g.f().r() == 1 && g.f().s() == 1 {
            ensure!(lambda(g) == *g.h(), "λ(ℓ × f_11) != ℓ");
        }
    }
    let c = ok(pi_compose(&ok(chi(1, 2, 3))?, &ok(w_morphism(1, 6, 2))?))?;
    ensure!(c.f().r() == 2 && c.f().s() == 2 && c.src().a == 12, "χ(1,2,3) ∘ (Id, f_21) gave {c}");
    Ok(())
}

fn is_repetition(tuple: &[usize], k: usize) -> bool {
    let block = tuple.len() / k;
    tuple.chunks(block).all(|c| c == &tuple[..block])
}

fn beta_suite(nerve: &CyclicNerve) -> Check {
    let y = nerve.set();
    let beta = Beta::new(y, nerve);
    let gens = ok(pi_generators(y.max_level(), 3))?;
    let mut checked = 0;
    for f in &gens {
        let bf = match beta.map(f) {
            Ok(m) => m,
            Err(Error::OutOfTruncation(_)) => continue,
            Err(e) => return Err(format!("β({f}): {e}")),
        };
        let target = ok(beta.object(f.dst()))?;
        ensure!(bf.values().all(|v| target.binary_search(v).is_ok()), "β({f}) leaves β{}", f.dst());
        for g in gens.iter().filter(|g| g.src() == f.dst()) {
            let bg = match beta.map(g) {
                Ok(m) => m,
                Err(Error::OutOfTruncation(_)) => continue,
                Err(e) => return Err(format!("β({g}): {e}")),
            };
            let bgf = ok(beta.map(&ok(pi_compose(g, f))?))?;
            for (x, y) in &bf {
                ensure!(bgf[x] == bg[y], "β({g} ∘ {f}) != β({g}) ∘ β({f}) at {x}");
            }
            checked += 1;
        }
    }
    ensure!(checked > 0, "no composable pairs in truncation");
    Ok(())
}

fn c8_nerves_and_beta() -> Check {
    const L: usize = 4;
    let poset = FiniteCategory::linear_order(2);
    ensure!(poset.num_objects() == 2 && poset.num_morphisms() == 3, "poset 0<1 has the wrong shape");
    for cat in [FiniteCategory::terminal(), FiniteCategory::cyclic_group(2), poset] {
        let nerve = cyclic_nerve(&cat, L);
        let y = nerve.set();
        ensure!(y.validate().is_empty(), "nerve fails validation: {:?}", y.validate().first());
        for k in [2, 3] {
            let sd = ok(subdivide(y, k))?;
            ensure!(sd.k() == k && sd.validate().is_empty(), "sd_{k} fails validation");
            let fp = ok(fixed_points(&sd))?;
            ensure!(fp.set.validate().is_empty(), "fixed points of sd_{k} fail validation");
            for n in 0..=sd.max_level() {
                let big = k * (n + 1) - 1;
                let reps: Vec<usize> = (0..y.size(big)).filter(|&x| is_repetition(nerve.simplex(big, x), k)).collect();
                ensure!(fp.inclusion[n] == reps, "sd_{k} fixed points on level {n} are not the {k}-fold repetitions");
            }
        }
        for k in 1..=3 {
            for n in 0..=L {
                if k * (n + 1) - 1 > L {
                    continue;
                }
                let m = ok(nerve_epicyclic(&nerve, k, n))?;
                for (x, &px) in m.p.iter().enumerate() {
                    ensure!(m.phi.get(&px) == Some(&x), "φ_{k} ∘ p_{k} != id on level {n}");
                }
                for (&z, &x) in &m.phi {
                    ensure!(m.p[x] == z, "p_{k} ∘ φ_{k} != id on level {n}");
                }
            }
        }
        for k in 1..=2 {
            for r in 1..=2 {
                for n in 0..=L {
                    let big = k * r * (n + 1) - 1;
                    if big > L {
                        continue;
                    }
                    for x in (0..y.size(big)).filter(|&x| is_repetition(nerve.simplex(big, x), k * r)) {
                        let inner = ok(nerve.phi(r, k * (n + 1) - 1, x))?;
                        ensure!(
                            ok(nerve.phi(k, n, inner))? == ok(nerve.phi(k * r, n, x))?,
                            "φ_{k} ∘ sd_{k}(φ_{r}) != φ_{} at level {n}",
                            k * r
                        );
                    }
                }
            }
        }
        beta_suite(&nerve)?;
    }
    Ok(())
}

fn c9_presentation_coherence() -> Check {
    let rels = relation_instances(1, 4);
    ensure!(!rels.is_empty(), "no relations");
    for rel in rels {
        let start = rel.lhs.first().map_or(rel.level, |op| op.dst_level());
        let mut acc = ArcMap::identity(start + 1);
        for op in &rel.lhs {
            acc = ok(compose(&ok(generator(&op.to_generator()))?, &acc))?;
        }
        let start = rel.rhs.first().map_or(rel.level, |op| op.dst_level());
        let mut rhs = ArcMap::identity(start + 1);
        for op in &rel.rhs {
            rhs = ok(compose(&ok(generator(&op.to_generator()))?, &rhs))?;
        }
        ensure!(acc == rhs, "{rel} fails in the model");
    }
    Ok(())
}

/// Integer vectors of length `len` with `∑|p| ≤ budget`.
fn l1_ball(len: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for p in -budget..=budget {
        cur.push(p);
        l1_ball(len, budget - p.abs(), cur, out);
        cur.pop();
    }
}

fn c10_oinfty_stability() -> Check {
    let mut pushes = 0u64;
    for xn in 1..=5usize {
        let x = PointedSet::new(xn, 0).unwrap();
        let maps: Vec<PointedMap> = (1..=5).flat_map(|yn| PointedMap::all(x, PointedSet::new(yn, 0).unwrap())).collect();
        for den in 7..=12i64 {
            let mut nums = Vec::new();
            l1_ball(xn - 1, den, &mut Vec::new(), &mut nums);
            for tail in nums {
                let full: Vec<i64> = std::iter::once(0).chain(tail.iter().copied()).collect();
                let d = ok(Divisor::from_numerators(x, &full, den))?;
                ensure!(ok(oinfty_member(&d))?, "{full:?}/{den} should lie in O_∞");
                for f in &maps {
                    let e = ok(pushforward(f, &d))?;
                    let mut sums = vec![0i64; f.dst().len];
                    for (i, &p) in full.iter().enumerate() {
                        if f.image(i) != f.dst().basepoint {
                            sums[f.image(i)] += p;
                        }
                    }
                    for (y, &s) in sums.iter().enumerate() {
                        ensure!(e.value(y) == Rational::new(s, den), "pushforward value at {y}");
                    }
                    ensure!(ok(oinfty_member(&e))?, "pushforward leaves O_∞ for {full:?}/{den}");
                    pushes += 1;
                }
            }
        }
    }
    ensure!(pushes > 1_000_000, "only {pushes} pushforwards");
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..2000 {
        let random = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=5);
            let den = rng.gen_range(1..=12);
            let nums: Vec<i64> = (0..n).map(|i| if i == 0 { 0 } else { rng.gen_range(-24..=24) }).collect();
            Divisor::from_numerators(PointedSet::new(n, 0).unwrap(), &nums, den).unwrap()
        };
        let (d, e) = (random(&mut rng), random(&mut rng));
        let (_, de) = ok(divisor_smash(&d, &e))?;
        ensure!(ok(de.norm())? == ok(d.norm())? * ok(e.norm())?, "norm not multiplicative");
    }
    Ok(())
}

const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

fn exponent_at(s: &Supernatural, p: u64) -> Option<u32> {
    match s.exponent(p) {
        Exponent::Finite(e) => Some(e),
        Exponent::Inf => None,
    }
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// All points with exponents in `{0, 1, 2, ∞}` on 2, 3, 5, 7 and either default.
fn small_points() -> Vec<Supernatural> {
    let choices = [Exponent::Finite(0), Exponent::Finite(1), Exponent::Finite(2), Exponent::Inf];
    let mut out = Vec::new();
    for default in [DefaultExponent::Zero, DefaultExponent::Inf] {
        for code in 0..4usize.pow(4) {
            let mut c = code;
            let mut map = BTreeMap::new();
            for p in SMALL_PRIMES {
                map.insert(p, choices[c % 4]);
                c /= 4;
            }
            out.push(Supernatural::new(default, map).expect("valid point"));
        }
    }
    out
}

/// Membership of `n` computed from exponents, including primes beyond 7.
fn contains_oracle(s: &Supernatural, n: u64) -> bool {
    let mut rest = n;
    for p in SMALL_PRIMES {
        let v = valuation(rest, p);
        rest /= p.pow(v);
        if exponent_at(s, p).is_some_and(|e| v > e) {
            return false;
        }
    }
    rest == 1 || s.default_exponent() == DefaultExponent::Inf
}

/// An explicit `q` with `q·H_S = H_T`, or `None` when the ∞-patterns differ.
fn rescaling_witness(s: &Supernatural, t: &Supernatural) -> Option<BTreeMap<u64, i64>> {
    if s.default_exponent() != t.default_exponent() {
        return None;
    }
    let primes: BTreeSet<u64> = s.exceptional().keys().chain(t.exceptional().keys()).copied().collect();
    let mut q = BTreeMap::new();
    for p in primes {
        match (exponent_at(s, p), exponent_at(t, p)) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                if a != b {
                    q.insert(p, a as i64 - b as i64);
                }
            }
            _ => return None,
        }
    }
    Some(q)
}

fn c11_topos_points() -> Check {
    for s in small_points() {
        for n in 1..=10_000u64 {
            let c = ok(s.contains(n))?;
            ensure!(c == ok(s.q_membership(1, n))?, "J↔H round trip fails for {s} at {n}");
            ensure!(c == contains_oracle(&s, n), "contains({s}, {n}) disagrees with exponents");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pool = small_points();
    let mut sample: Vec<Supernatural> = (0..40).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
    let base = sample[0].clone();
    for p in SMALL_PRIMES.into_iter().take(3) {
        let q = BTreeMap::from([(p, -(rng.gen_range(1..=3)))]);
        sample.push(ok(base.rescale(&q))?.expect("multiplying denominators in keeps Z"));
    }
    while sample.len() < 50 {
        let i = rng.gen_range(0..sample.len());
        let s = sample[i].clone();
        sample.push(s);
    }
    for a in &sample {
        ensure!(a.nhat_equivalent(a), "not reflexive at {a}");
        for b in &sample {
            let eq = a.nhat_equivalent(b);
            ensure!(eq == b.nhat_equivalent(a), "not symmetric at {a}, {b}");
            match rescaling_witness(a, b) {
                Some(q) => {
                    ensure!(eq, "{a} and {b} rescale into each other but are not equivalent");
                    ensure!(ok(a.rescale(&q))?.as_ref() == Some(b), "witness q fails for {a} -> {b}");
                }
                None => ensure!(!eq, "{a} ~ {b} although their ∞-patterns differ"),
            }
            if a.point_leq(b) && b.point_leq(a) {
                ensure!(a == b, "point_leq is not antisymmetric at {a}, {b}");
            }
            if eq {
                for c in &sample {
                    ensure!(!b.nhat_equivalent(c) || a.nhat_equivalent(c), "not transitive at {a}, {b}, {c}");
                }
            }
        }
    }
    let two: Supernatural = "2^inf".parse().map_err(|e: Error| e.to_string())?;
    let three_two: Supernatural = "3*2^inf".parse().map_err(|e: Error| e.to_string())?;
    ensure!(two.nhat_equivalent(&three_two), "2^inf ≁ 3*2^inf");
    ensure!(!two.nhat_equivalent(&Supernatural::prime_power_inf(3).unwrap()), "2^inf ~ 3^inf");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("ternary ring isomorphism", 30, c1_ternary_ring),
        ("carry polynomial fidelity", 10, c2_carry_polynomials),
        ("carry locality", 5, c3_carry_locality),
        ("cyclic self-duality", 30, c4_self_duality),
        ("Λ̃ ≅ ΛR", 60, c5_lambda_tilde_vs_lambda_r),
        ("S′RF laws", 10, c6_srf_laws),
        ("Π well-formedness", 30, c7_pi_wellformed),
        ("nerve and β suite", 60, c8_nerves_and_beta),
        ("presentation coherence", 10, c9_presentation_coherence),
        ("O_∞ stability", 30, c10_oinfty_stability),
        ("topos points", 10, c11_topos_points),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(()) if elapsed > Duration::from_secs(budget) => Err(format!("over the {budget} s budget")),
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2} s, budget {budget} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2} s, budget {budget} s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
