use super::{Op, TruncatedKCyclicSet};
use crate::error::{bail, Result};
use crate::zmax::{generator, ArcMap};

/// `sd^k` of an order-preserving map `E_P → E_Q`: `jP + i ↦ jQ + α(i)`.
pub fn sd_map(f: &ArcMap, k: usize) -> Result<ArcMap> {
    if k == 0 {
        bail!(InvalidInput, "k must be positive");
    }
    if f.degree() != 1 || !f.is_simplicial() {
        bail!(Precondition, "sd^{k} is taken of order-preserving maps only, got {f}");
    }
    let (p, q) = (f.src_period(), f.dst_period() as i64);
    let raw = (0..k as i64).flat_map(|j| f.values().iter().map(move |&v| j * q + v)).collect();
    ArcMap::normalize(raw, k * p, k * f.dst_period(), 1)
}

/// `sd_k(Y) = Y ∘ sd^k`, a k-cyclic set on levels `0..=⌊(L+1)/k⌋ − 1`.
pub fn subdivide(y: &TruncatedKCyclicSet, k: usize) -> Result<TruncatedKCyclicSet> {
    if y.k() != 1 {
        bail!(Precondition, "subdivision expects a cyclic set, got k = {}", y.k());
    }
    if k == 0 {
        bail!(InvalidInput, "k must be positive");
    }
    let levels = (y.max_level() + 1) / k;
    if levels == 0 {
        bail!(OutOfTruncation, "truncation level {} is too small for sd_{k}", y.max_level());
    }
    let top = levels - 1;
    let act = |op: Op| -> Result<Vec<usize>> { y.eval(&sd_map(&generator(&op.to_generator())?, k)?) };
    let mut sizes = Vec::new();
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    let mut cyclic = Vec::new();
    for n in 0..=top {
        let big = k * (n + 1) - 1;
        sizes.push(y.size(big));
        faces.push(if n == 0 { Vec::new() } else { (0..=n).map(|i| act(Op::D(n, i))).collect::<Result<_>>()? });
        degeneracies.push(if n == top { Vec::new() } else { (0..=n).map(|j| act(Op::S(n, j))).collect::<Result<_>>()? });
        cyclic.push(y.cyclic(big).to_vec());
    }
    TruncatedKCyclicSet::from_tables(k, sizes, faces, degeneracies, cyclic)
}

/// The cyclic set `Z^{C_k}` with its inclusion into `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoints {
    pub set: TruncatedKCyclicSet,
    /// `inclusion[n][x]` is the element of `Z` behind element `x` of level `n`.
    pub inclusion: Vec<Vec<usize>>,
}

impl FixedPoints {
    /// Position of an element of `Z` among the fixed points, if it is fixed.
    pub fn locate(&self, n: usize, z: usize) -> Option<usize> {
        self.inclusion.get(n)?.binary_search(&z).ok()
    }
}

/// Restricts a k-cyclic set to the elements fixed by `t^{n+1}` on each level.
pub fn fixed_points(z: &TruncatedKCyclicSet) -> Result<FixedPoints> {
    let top = z.max_level();
    let inclusion: Vec<Vec<usize>> =
        (0..=top).map(|n| (0..z.size(n)).filter(|&x| z.rotate(n, x, n + 1) == x).collect()).collect();
    let locate = |n: usize, v: usize| -> Result<usize> {
        match inclusion[n].binary_search(&v) {
            Ok(i) => Ok(i),
            Err(_) => bail!(Precondition, "structure map leaves the fixed points on level {n}"),
        }
    };
    let restrict = |table: &[usize], from: usize, to: usize| -> Result<Vec<usize>> {
        inclusion[from].iter().map(|&x| locate(to, table[x])).collect()
    };
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    let mut cyclic = Vec::new();
    for n in 0..=top {
        faces.push(if n == 0 { Vec::new() } else { (0..=n).map(|i| restrict(z.face(n, i), n, n - 1)).collect::<Result<_>>()? });
        degeneracies.push(if n == top { Vec::new() } else { (0..=n).map(|j| restrict(z.degeneracy(n, j), n, n + 1)).collect::<Result<_>>()? });
        cyclic.push(restrict(z.cyclic(n), n, n)?);
    }
    let sizes = inclusion.iter().map(Vec::len).collect();
    let set = TruncatedKCyclicSet::from_tables(1, sizes, faces, degeneracies, cyclic)?;
    Ok(FixedPoints { set, inclusion })
}
