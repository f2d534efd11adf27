mod input;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pericyclic::cyclic::{cyclic_nerve, fixed_points, nerve_epicyclic, subdivide, Beta, TruncatedKCyclicSet};
use pericyclic::divisors::{divisor_smash, oinfty_member, pushforward, PointedMap, PointedSet};
use pericyclic::pericyclic::{chi, pi_compose, project, rf_hom_enum, srf_compose, CompositionLaw, PiObject, Projection};
use pericyclic::points::{flat_check, Supernatural};
use pericyclic::presentations::{classify, p_functor, GroupoidMor};
use pericyclic::ternary::{carry_polynomial, TritVector};
use pericyclic::zmax::{compose, decompose_cyclic, enumerate_hom, transpose};
use pericyclic::{Error, Result};

#[derive(Parser)]
#[command(name = "pericyclic", version, about = "Exact computations in the cyclic, epicyclic and pericyclic categories")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Balanced-ternary arithmetic.
    #[command(subcommand)]
    Ternary(TernaryCmd),
    /// Morphisms of Λ and Λ̃.
    #[command(subcommand)]
    Hom(HomCmd),
    /// The categories RF, S′RF and Π.
    #[command(subcommand)]
    Peri(PeriCmd),
    /// Cyclic nerves of finite categories.
    #[command(subcommand)]
    Nerve(NerveCmd),
    /// Points of the topos (supernatural numbers).
    #[command(subcommand)]
    Points(PointsCmd),
    /// Divisors on pointed finite sets.
    #[command(subcommand)]
    Divisor(DivisorCmd),
}

#[derive(Subcommand)]
enum TernaryCmd {
    /// Balanced-ternary digits of an integer (least significant first).
    #[command(allow_negative_numbers = true)]
    Digits { n: String },
    /// Integer value of a digit list such as `[-1, 1]`.
    #[command(allow_negative_numbers = true)]
    Value { digits: String },
    /// Digit-level sum.
    #[command(allow_negative_numbers = true)]
    Add { a: String, b: String },
    /// Digit-level product.
    #[command(allow_negative_numbers = true)]
    Mul { a: String, b: String },
    /// The reduced carry polynomial `s_n` over F_3.
    CarryPoly { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum Presentation {
    Groupoid,
    Kaledin,
}

#[derive(Subcommand)]
enum HomCmd {
    /// All canonical maps E_N → E_M up to a degree.
    Enum {
        n: usize,
        m: usize,
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
    },
    /// Composite `f1 ∘ f2 ∘ … ∘ fk`.
    Compose {
        #[arg(required = true, num_args = 2..)]
        maps: Vec<String>,
    },
    /// Galois transpose of a degree-1 map.
    Transpose { map: String },
    /// Rotation and simplicial word of a degree-1 map.
    Decompose { map: String },
    /// Oriented-groupoid or Kaledin form of a map.
    Convert {
        map: String,
        #[arg(long)]
        to: Presentation,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    Corrected,
    Legacy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Lambda,
    Pi,
}

#[derive(Subcommand)]
enum PeriCmd {
    /// Hom_RF(a, b).
    RfHom { a: u64, b: u64 },
    /// `g ∘ f` in S′RF; morphisms as `angle:r,s:b`.
    SrfCompose {
        g: String,
        f: String,
        #[arg(long, value_enum, default_value_t = Law::Corrected)]
        law: Law,
    },
    /// `g ∘ f` in Π; morphisms as JSON, `chi(n,s,d)`, `w(n,b,r)` or `id(n,a)`.
    PiCompose { g: String, f: String },
    /// χ(n, s, d).
    Chi { n: usize, s: usize, d: u64 },
    /// The projection λ or π of a Π morphism.
    Project {
        map: String,
        #[arg(long, value_enum)]
        to: Which,
    },
}

#[derive(Args)]
struct NerveSource {
    /// Category JSON file, or `terminal`, `cyclic:N`, `order:N`.
    #[arg(long)]
    category: String,
    /// Highest level to build.
    #[arg(long)]
    levels: usize,
    /// Edgewise subdivision parameter.
    #[arg(long)]
    subdivide: Option<usize>,
    /// Restrict to the fixed points of the subdivision group.
    #[arg(long)]
    fixed: bool,
}

#[derive(Subcommand)]
enum NerveCmd {
    /// Level-by-level element lists.
    Build {
        #[command(flatten)]
        src: NerveSource,
        /// Dump the structure tables instead of the elements.
        #[arg(long)]
        tables: bool,
    },
    /// Checks every defining relation.
    Validate {
        #[command(flatten)]
        src: NerveSource,
    },
    /// φ_k and p_k between levels k(n+1)−1 and n.
    Epicyclic {
        #[arg(long)]
        category: String,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// β(n, a), or the action of a Π morphism on it.
    Beta {
        #[arg(long)]
        category: String,
        #[arg(long)]
        levels: usize,
        /// Object `n,a`.
        #[arg(long, conflicts_with = "map")]
        object: Option<String>,
        /// Π morphism to apply.
        #[arg(long)]
        map: Option<String>,
    },
    /// Validates a table file produced by `nerve build --tables`.
    Check { tables: String },
}

#[derive(Subcommand)]
enum PointsCmd {
    /// Same point of N̂^×.
    Equiv { s: String, t: String },
    /// Whether a rational lies in H.
    Member { s: String, q: String },
    /// Whether n lies in J.
    Contains { s: String, n: u64 },
    /// Exponentwise maximum.
    Join { s: String, t: String },
    /// J_S ⊆ J_T.
    Leq { s: String, t: String },
    /// Rescale H by a positive rational.
    Rescale { s: String, q: String },
    /// Flatness of a finite J, e.g. `1,2,4`.
    Flat { set: String },
}

#[derive(Subcommand)]
enum DivisorCmd {
    /// ℓ¹ norm and O_∞ membership; values like `0,1/2,1/3` (basepoint 0).
    Norm { divisor: String },
    /// Pushforward along a pointed map given by its images.
    Push {
        divisor: String,
        #[arg(long)]
        images: String,
        #[arg(long)]
        target_size: usize,
        #[arg(long, default_value_t = 0)]
        target_basepoint: usize,
    },
    /// Product divisor on the smash product.
    Smash { d: String, e: String },
}

/// Result of a command: text and JSON renderings plus an exit code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn new(text: impl Into<String>, json: impl Serialize) -> Self {
        Output { text: text.into(), json: serde_json::to_value(json).expect("serializable"), code: 0 }
    }
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

fn ternary(cmd: TernaryCmd) -> Result<Output> {
    let both = |v: TritVector| {
        let value = v.decode().to_string();
        Output::new(format!("digits: {v}\nvalue: {value}"), json!({ "digits": v, "value": value }))
    };
    Ok(match cmd {
        TernaryCmd::Digits { n } => {
            let v = TritVector::encode(&input::bigint(&n)?);
            Output::new(v.to_string(), &v)
        }
        TernaryCmd::Value { digits } => {
            let value = digits.parse::<TritVector>()?.decode().to_string();
            Output::new(value.clone(), value)
        }
        TernaryCmd::Add { a, b } => both(TritVector::encode(&input::bigint(&a)?).add(&TritVector::encode(&input::bigint(&b)?))),
        TernaryCmd::Mul { a, b } => both(TritVector::encode(&input::bigint(&a)?).mul(&TritVector::encode(&input::bigint(&b)?))),
        TernaryCmd::CarryPoly { n } => {
            let p = carry_polynomial(n)?;
            Output::new(p.to_string(), &p)
        }
    })
}

fn hom(cmd: HomCmd) -> Result<Output> {
    Ok(match cmd {
        HomCmd::Enum { n, m, max_degree } => {
            let maps = enumerate_hom(n, m, max_degree)?;
            Output::new(format!("{}\n{} morphisms", lines(&maps), maps.len()), &maps)
        }
        HomCmd::Compose { maps } => {
            let arcs: Vec<_> = maps.iter().map(|m| input::arc(m)).collect::<Result<_>>()?;
            let mut acc = arcs.last().expect("at least two maps").clone();
            for g in arcs.iter().rev().skip(1) {
                acc = compose(g, &acc)?;
            }
            Output::new(acc.to_string(), &acc)
        }
        HomCmd::Transpose { map } => {
            let t = transpose(&input::arc(&map)?)?;
            Output::new(t.to_string(), &t)
        }
        HomCmd::Decompose { map } => {
            let d = decompose_cyclic(&input::arc(&map)?)?;
            let word: Vec<String> = d.word.iter().map(ToString::to_string).collect();
            let text = format!("rotation: {}\nword: [{}]", d.rotation, word.join(", "));
            Output::new(text, &d)
        }
        HomCmd::Convert { map, to } => {
            let g = GroupoidMor::from_arc(&input::arc(&map)?);
            match to {
                Presentation::Groupoid => {
                    let text = format!("g({}) -> g({}), f0 = {}, lengths = {:?}, degree {}", g.src, g.dst, g.f0, g.lengths, g.degree());
                    Output::new(text, &g)
                }
                Presentation::Kaledin => {
                    let k = p_functor(&g);
                    let c = classify(&k);
                    let text = format!(
                        "[{}]_Λ -> [{}]_Λ, f0 = {}, lengths = {:?}, deg {}\nvertical: {}, horizontal: {}, nondegenerate: {}",
                        k.src, k.dst, k.f0, k.lengths, k.deg(), c.vertical, c.horizontal, c.nondegenerate
                    );
                    let mut json = serde_json::to_value(&k).expect("serializable");
                    json["classification"] = serde_json::to_value(c).expect("serializable");
                    Output { text, json, code: 0 }
                }
            }
        }
    })
}

fn peri(cmd: PeriCmd) -> Result<Output> {
    Ok(match cmd {
        PeriCmd::RfHom { a, b } => {
            let h = rf_hom_enum(a, b)?;
            Output::new(format!("{}\n{} morphisms", lines(&h), h.len()), &h)
        }
        PeriCmd::SrfCompose { g, f, law } => {
            let law = match law {
                Law::Corrected => CompositionLaw::Corrected,
                Law::Legacy => CompositionLaw::Legacy,
            };
            let c = srf_compose(&input::srf(&g)?, &input::srf(&f)?, law)?;
            Output::new(c.to_string(), c)
        }
        PeriCmd::PiCompose { g, f } => {
            let c = pi_compose(&input::pimor(&g)?, &input::pimor(&f)?)?;
            let check = format!("Fr(f) = {} = Mod(h)", c.f().s());
            let mut json = serde_json::to_value(&c).expect("serializable");
            json["fr_equals_mod"] = json!(true);
            Output { text: format!("{c}\n{check}"), json, code: 0 }
        }
        PeriCmd::Chi { n, s, d } => {
            let c = chi(n, s, d)?;
            Output::new(c.to_string(), &c)
        }
        PeriCmd::Project { map, to } => {
            let which = match to {
                Which::Lambda => Projection::Lambda,
                Which::Pi => Projection::Pi,
            };
            let p = project(&input::pimor(&map)?, which);
            let text = match &p {
                pericyclic::pericyclic::Projected::Lambda(h) => h.to_string(),
                pericyclic::pericyclic::Projected::Pi(f) => f.to_string(),
            };
            Output::new(text, &p)
        }
    })
}

/// The requested set, with element labels (morphism-name tuples).
fn nerve_set(src: &NerveSource) -> Result<(TruncatedKCyclicSet, Vec<Vec<Vec<String>>>)> {
    let c = input::category(&src.category)?;
    let nerve = cyclic_nerve(&c, src.levels);
    let names = nerve.named_levels();
    let mut set = nerve.set().clone();
    let mut labels = names.clone();
    if let Some(k) = src.subdivide {
        set = subdivide(&set, k)?;
        labels = (0..=set.max_level()).map(|n| names[k * (n + 1) - 1].clone()).collect();
    } else if src.fixed {
        return Err(Error::InvalidInput("--fixed needs --subdivide".into()));
    }
    if src.fixed {
        let fp = fixed_points(&set)?;
        labels = fp.inclusion.iter().enumerate().map(|(n, inc)| inc.iter().map(|&x| labels[n][x].clone()).collect()).collect();
        set = fp.set;
    }
    Ok((set, labels))
}

fn report(set: &TruncatedKCyclicSet) -> Output {
    let violations = set.validate();
    if violations.is_empty() {
        return Output::new("OK", json!({ "valid": true, "violations": [] }));
    }
    let text = format!("{} violations\n{}", violations.len(), lines(&violations));
    Output { text, json: json!({ "valid": false, "violations": violations }), code: 3 }
}

fn nerve(cmd: NerveCmd) -> Result<Output> {
    Ok(match cmd {
        NerveCmd::Build { src, tables } => {
            let (set, labels) = nerve_set(&src)?;
            if tables {
                return Ok(Output::new(serde_json::to_string(&set).expect("serializable"), &set));
            }
            let text = labels
                .iter()
                .enumerate()
                .map(|(n, lvl)| {
                    let elems: Vec<String> = lvl.iter().map(|t| format!("({})", t.join(", "))).collect();
                    format!("level {n} ({}): {}", lvl.len(), elems.join(" "))
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output::new(text, &labels)
        }
        NerveCmd::Validate { src } => report(&nerve_set(&src)?.0),
        NerveCmd::Check { tables } => {
            let path = tables.strip_prefix('@').unwrap_or(&tables);
            let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
            let set: TruncatedKCyclicSet = serde_json::from_str(&text).map_err(|e| Error::InvalidInput(e.to_string()))?;
            report(&set)
        }
        NerveCmd::Epicyclic { category, levels, k, n } => {
            let nerve = cyclic_nerve(&input::category(&category)?, levels);
            let m = nerve_epicyclic(&nerve, k, n)?;
            let names = nerve.named_levels();
            let big = k * (n + 1) - 1;
            let show = |lvl: usize, x: usize| format!("({})", names[lvl][x].join(", "));
            let phi: Vec<String> = m.phi.iter().map(|(&a, &b)| format!("{} -> {}", show(big, a), show(n, b))).collect();
            let p: Vec<String> = m.p.iter().enumerate().map(|(a, &b)| format!("{} -> {}", show(n, a), show(big, b))).collect();
            Output::new(format!("phi_{k}:\n{}\np_{k}:\n{}", phi.join("\n"), p.join("\n")), &m)
        }
        NerveCmd::Beta { category, levels, object, map } => {
            let nerve = cyclic_nerve(&input::category(&category)?, levels);
            let beta = Beta::new(nerve.set(), &nerve);
            let names = nerve.named_levels();
            let level = |o: PiObject| o.a as usize * (o.n + 1) - 1;
            let show = |lvl: usize, x: usize| format!("({})", names[lvl][x].join(", "));
            match (object, map) {
                (Some(obj), None) => {
                    let (n, a) = obj.split_once(',').ok_or_else(|| Error::Parse("object must be `n,a`".into()))?;
                    let o = PiObject {
                        n: n.trim().parse().map_err(|_| Error::Parse(format!("bad n `{n}`")))?,
                        a: a.trim().parse().map_err(|_| Error::Parse(format!("bad a `{a}`")))?,
                    };
                    if o.a == 0 {
                        return Err(Error::InvalidInput("a must be positive".into()));
                    }
                    let elems = beta.object(o)?;
                    let text = elems.iter().map(|&x| show(level(o), x)).collect::<Vec<_>>().join("\n");
                    let json: Vec<_> = elems.iter().map(|&x| &names[level(o)][x]).collect();
                    Output::new(format!("β{o}: {} elements\n{text}", elems.len()), json)
                }
                (None, Some(m)) => {
                    let p = input::pimor(&m)?;
                    let action = beta.map(&p)?;
                    let (ls, ld) = (level(p.src()), level(p.dst()));
                    let text: Vec<String> = action.iter().map(|(&x, &y)| format!("{} -> {}", show(ls, x), show(ld, y))).collect();
                    let json: Vec<_> = action.iter().map(|(&x, &y)| json!([names[ls][x], names[ld][y]])).collect();
                    Output::new(text.join("\n"), json)
                }
                _ => return Err(Error::InvalidInput("pass exactly one of --object or --map".into())),
            }
        }
    })
}

fn points(cmd: PointsCmd) -> Result<Output> {
    let boolean = |b: bool| Output::new(b.to_string(), b);
    let sn = |s: &str| s.parse::<Supernatural>();
    Ok(match cmd {
        PointsCmd::Equiv { s, t } => boolean(sn(&s)?.nhat_equivalent(&sn(&t)?)),
        PointsCmd::Member { s, q } => {
            let (num, den) = input::fraction(&q)?;
            boolean(sn(&s)?.q_membership(num, den)?)
        }
        PointsCmd::Contains { s, n } => boolean(sn(&s)?.contains(n)?),
        PointsCmd::Join { s, t } => {
            let j = sn(&s)?.join(&sn(&t)?);
            Output::new(j.to_string(), &j)
        }
        PointsCmd::Leq { s, t } => boolean(sn(&s)?.point_leq(&sn(&t)?)),
        PointsCmd::Rescale { s, q } => {
            let (num, den) = input::fraction(&q)?;
            if num <= 0 {
                return Err(Error::InvalidInput("rescaling factor must be positive".into()));
            }
            match sn(&s)?.rescale_by(num as u64, den)? {
                Some(r) => Output::new(r.to_string(), &r),
                None => Output { text: "q·H does not contain Z".into(), json: Value::Null, code: 3 },
            }
        }
        PointsCmd::Flat { set } => {
            let j: Vec<u64> = set
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{x}`"))))
                .collect::<Result<_>>()?;
            boolean(flat_check(&j))
        }
    })
}

fn divisor(cmd: DivisorCmd) -> Result<Output> {
    let show = |d: &pericyclic::divisors::Divisor| {
        d.values().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    };
    Ok(match cmd {
        DivisorCmd::Norm { divisor } => {
            let d = input::divisor(&divisor)?;
            let (norm, member) = (d.norm()?, oinfty_member(&d)?);
            Output::new(format!("norm: {norm}\nO_inf: {member}"), json!({ "norm": norm.to_string(), "o_infinity": member }))
        }
        DivisorCmd::Push { divisor, images, target_size, target_basepoint } => {
            let d = input::divisor(&divisor)?;
            let f = PointedMap::new(d.carrier(), PointedSet::new(target_size, target_basepoint)?, input::index_list(&images)?)?;
            let e = pushforward(&f, &d)?;
            Output::new(show(&e), &e)
        }
        DivisorCmd::Smash { d, e } => {
            let (_, de) = divisor_smash(&input::divisor(&d)?, &input::divisor(&e)?)?;
            Output::new(show(&de), &de)
        }
    })
}

fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Ternary(c) => ternary(c),
        Command::Hom(c) => hom(c),
        Command::Peri(c) => peri(c),
        Command::Nerve(c) => nerve(c),
        Command::Points(c) => points(c),
        Command::Divisor(c) => divisor(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let body = match format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
            };
            match writeln!(io::stdout().lock(), "{body}") {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(3)
                }
                _ => ExitCode::from(out.code),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
