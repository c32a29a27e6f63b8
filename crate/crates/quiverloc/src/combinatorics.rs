//! Partitions, colored diagram statistics and wall-crossing index sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Which side of the wall a fixed-point set lives on.
///
/// For the chainsaw quiver `Negative` is the affine Laumon chamber and
/// `Positive` its dual. For the handsaw quiver they index fixed points by the
/// first and second framing blocks respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Negative,
    Positive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        parts.retain(|&x| x > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&x| x as usize).sum()
    }

    /// Row `l` (1-based); zero past the last row.
    pub fn row(&self, l: usize) -> u32 {
        if l == 0 {
            panic!("rows are 1-based");
        }
        self.parts.get(l - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=w).map(|m| self.parts.iter().filter(|&&x| x >= m).count() as u32).collect();
        Partition { parts }
    }

    /// Column height `m` (1-based).
    pub fn col(&self, m: usize) -> u32 {
        self.parts.iter().filter(|&&x| x as usize >= m).count() as u32
    }

    pub fn contains(&self, (l, m): (usize, usize)) -> bool {
        l >= 1 && m >= 1 && self.row(l) as usize >= m
    }

    /// Boxes `(row, column)`, both 1-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| (1..=len as usize).map(move |m| (i + 1, m)))
    }
}

/// Partitions of exactly `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k as u32);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, by size.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// Arm of `(l, m)` measured in `mu` and leg measured in `lambda`.
pub fn arm_leg(lambda: &Partition, mu: &Partition, b: (usize, usize)) -> Result<(i64, i64)> {
    if !lambda.contains(b) {
        return Err(Error::Invalid(format!("box {b:?} lies outside the diagram")));
    }
    let (l, m) = b;
    Ok((mu.row(l) as i64 - m as i64, lambda.col(m) as i64 - l as i64))
}

/// Number of boxes in rows congruent to `k` modulo `n`.
pub fn colored_row_count(lambda: &Partition, n: usize, k: i64) -> usize {
    let k = k.rem_euclid(n as i64) as usize;
    lambda.parts.iter().enumerate().filter(|(i, _)| (i + 1) % n == k).map(|(_, &x)| x as usize).sum()
}

/// Number of boxes whose leg is congruent to `k` modulo `n`.
pub fn leg_colored_count(lambda: &Partition, n: usize, k: i64) -> usize {
    let k = k.rem_euclid(n as i64);
    lambda.boxes().filter(|&(l, m)| (lambda.col(m) as i64 - l as i64).rem_euclid(n as i64) == k).count()
}

/// One partition for each framing slot. Vertices are stored by position
/// `0..N`, slots within a vertex by `0..r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionTuple {
    pub entries: Vec<Vec<Partition>>,
}

impl PartitionTuple {
    pub fn empty(r: &[usize]) -> PartitionTuple {
        PartitionTuple { entries: r.iter().map(|&k| vec![Partition::empty(); k]).collect() }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn framing(&self) -> Vec<usize> {
        self.entries.iter().map(|v| v.len()).collect()
    }

    pub fn size(&self) -> usize {
        self.entries.iter().flatten().map(Partition::size).sum()
    }

    /// Components with their `(position, slot)` labels.
    pub fn components(&self) -> impl Iterator<Item = (usize, usize, &Partition)> {
        self.entries.iter().enumerate().flat_map(|(a, v)| v.iter().enumerate().map(move |(al, p)| (a, al, p)))
    }
}

/// Color (a position) of box row `l` in component at position `a`.
pub fn box_color(n: usize, a: usize, l: usize, st: Stability) -> usize {
    let c = match st {
        Stability::Negative => a as i64 + l as i64 - 1,
        Stability::Positive => a as i64 - l as i64,
    };
    c.rem_euclid(n as i64) as usize
}

fn partition_colors(n: usize, a: usize, p: &Partition, st: Stability) -> Vec<u32> {
    let mut v = vec![0u32; n];
    for (l, &len) in p.parts().iter().enumerate() {
        v[box_color(n, a, l + 1, st)] += len;
    }
    v
}

pub fn dimension_vector(t: &PartitionTuple, st: Stability) -> Vec<u32> {
    let n = t.n();
    let mut v = vec![0u32; n];
    for (a, _, p) in t.components() {
        for (x, y) in v.iter_mut().zip(partition_colors(n, a, p, st)) {
            *x += y;
        }
    }
    v
}

fn slots(r: &[usize]) -> Vec<usize> {
    r.iter().enumerate().flat_map(|(a, &k)| std::iter::repeat_n(a, k)).collect()
}

fn assemble(r: &[usize], flat: &[Partition]) -> PartitionTuple {
    let mut it = flat.iter().cloned();
    PartitionTuple { entries: r.iter().map(|&k| (&mut it).take(k).collect()).collect() }
}

/// Every tuple with total size at most `bound`, each exactly once.
pub fn enumerate_tuples(r: &[usize], bound: usize) -> Vec<PartitionTuple> {
    let k = slots(r).len();
    let parts = partitions_up_to(bound);
    let mut out = Vec::new();
    let mut cur: Vec<Partition> = Vec::with_capacity(k);
    fn go(
        k: usize,
        rest: usize,
        parts: &[Partition],
        cur: &mut Vec<Partition>,
        r: &[usize],
        out: &mut Vec<PartitionTuple>,
    ) {
        if cur.len() == k {
            out.push(assemble(r, cur));
            return;
        }
        for p in parts.iter().take_while(|p| p.size() <= rest) {
            cur.push(p.clone());
            go(k, rest - p.size(), parts, cur, r, out);
            cur.pop();
        }
    }
    go(k, bound, &parts, &mut cur, r, &mut out);
    out
}

/// Tuples whose dimension vector is exactly `v`.
pub fn enumerate_fixed_points(r: &[usize], v: &[u32], st: Stability) -> Vec<PartitionTuple> {
    let n = r.len();
    assert_eq!(v.len(), n);
    let total: usize = v.iter().map(|&x| x as usize).sum();
    let sl = slots(r);
    let parts = partitions_up_to(total);
    // per-slot candidate list with color vectors
    let cands: Vec<Vec<(Partition, Vec<u32>)>> = sl
        .iter()
        .map(|&a| {
            parts
                .iter()
                .map(|p| (p.clone(), partition_colors(n, a, p, st)))
                .filter(|(_, c)| c.iter().zip(v).all(|(x, y)| x <= y))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    fn go(
        i: usize,
        budget: &mut Vec<u32>,
        cands: &[Vec<(Partition, Vec<u32>)>],
        cur: &mut Vec<Partition>,
        r: &[usize],
        out: &mut Vec<PartitionTuple>,
    ) {
        if i == cands.len() {
            if budget.iter().all(|&x| x == 0) {
                out.push(assemble(r, cur));
            }
            return;
        }
        for (p, c) in &cands[i] {
            if c.iter().zip(budget.iter()).any(|(x, y)| x > y) {
                continue;
            }
            for (b, x) in budget.iter_mut().zip(c) {
                *b -= x;
            }
            cur.push(p.clone());
            go(i + 1, budget, cands, cur, r, out);
            cur.pop();
            for (b, x) in budget.iter_mut().zip(c) {
                *b += x;
            }
        }
    }
    go(0, &mut v.to_vec(), &cands, &mut Vec::new(), r, &mut out);
    out
}

/// `[m]_t = 1 + t + ... + t^{m-1}`
pub fn t_number(m: usize, t: &Scalar) -> Scalar {
    let mut acc = Scalar::zero(t.mode());
    let mut x = Scalar::one(t.mode());
    for _ in 0..m {
        acc = &acc + &x;
        x = &x * t;
    }
    acc
}

/// `[m]_t! = [1]_t [2]_t ... [m]_t`
pub fn t_factorial(m: usize, t: &Scalar) -> Scalar {
    (1..=m).fold(Scalar::one(t.mode()), |acc, k| acc * t_number(k, t))
}

/// Ordered disjoint nonempty blocks of `{1..n}` with strictly decreasing
/// minima, plus the complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecChain {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    pub rest: Vec<usize>,
}

impl DecChain {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Union of the complement and every block after block `i`.
    pub fn later(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.rest.iter().copied().chain(self.blocks[i + 1..].iter().flatten().copied()).collect();
        v.sort_unstable();
        v
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        for &x in self.blocks.iter().flatten().chain(&self.rest) {
            if x == 0 || x > self.n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        if !seen[1..].iter().all(|&b| b) {
            return false;
        }
        let mins: Vec<usize> = self.blocks.iter().map(|b| b.iter().copied().min().unwrap_or(0)).collect();
        mins.iter().all(|&m| m > 0) && mins.windows(2).all(|w| w[0] > w[1])
    }
}

/// All chains with exactly `j` blocks.
pub fn enumerate_dec(n: usize, j: usize) -> Vec<DecChain> {
    if j == 0 || j > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    // blocks in order of opening: increasing minima
    fn go(x: usize, n: usize, j: usize, blocks: &mut Vec<Vec<usize>>, rest: &mut Vec<usize>, out: &mut Vec<DecChain>) {
        if x > n {
            if blocks.len() == j {
                out.push(DecChain { n, blocks: blocks.iter().rev().cloned().collect(), rest: rest.clone() });
            }
            return;
        }
        rest.push(x);
        go(x + 1, n, j, blocks, rest, out);
        rest.pop();
        for b in 0..blocks.len() {
            blocks[b].push(x);
            go(x + 1, n, j, blocks, rest, out);
            blocks[b].pop();
        }
        if blocks.len() < j {
            blocks.push(vec![x]);
            go(x + 1, n, j, blocks, rest, out);
            blocks.pop();
        }
    }
    go(1, n, j, &mut Vec::new(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Number of pairs `(l, l')` in `a x b` with `l < l'`.
pub fn s_stat(a: &[usize], b: &[usize]) -> Result<usize> {
    if a.iter().any(|x| b.contains(x)) {
        return Err(Error::Invalid("index sets overlap".into()));
    }
    Ok(a.iter().map(|&x| b.iter().filter(|&&y| x < y).count()).sum())
}
