//! Partitions in the k × (n−k) rectangle and the combinatorics on them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of non-negative parts.
///
/// Ordering is by size first, then lexicographic on the parts.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Wraps `parts` without checking any rectangle bound.
    pub fn from_parts(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]), "not decreasing: {parts:?}");
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().take_while(|&&p| p > 0).count()
    }

    /// Part `i` counted from 1, with zero outside the stored range.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Raw parts parsed from text such as `3,2,1` or `(3,2,1)`; not yet checked against a context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawParts(pub Vec<i64>);

impl FromStr for RawParts {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
        if t.is_empty() {
            return Ok(RawParts(Vec::new()));
        }
        t.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(RawParts)
    }
}

/// An increasing subset {a_1 < … < a_k} of {1, …, n}.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct JumpSequence(Vec<usize>);

impl JumpSequence {
    pub fn new(mut entries: Vec<usize>) -> Self {
        entries.sort_unstable();
        JumpSequence(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

/// Horizontal-strip data for a pair ν ⊇ λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StripShape {
    pub is_strip: bool,
    pub size: i64,
    pub rows: usize,
}

/// The Grassmannian Gr(k, n) together with the q-degree truncation used by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrContext {
    k: usize,
    n: usize,
    trunc: usize,
}

impl GrContext {
    /// Context with the default truncation `min(k, n−k) + 1`, or `QKGR_TRUNC` when set.
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidGrassmannian { k, n });
        }
        let min = k.min(n - k) + 1;
        let trunc = std::env::var("QKGR_TRUNC")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map_or(min, |t| t.max(min));
        Ok(GrContext { k, n, trunc })
    }

    pub fn with_trunc(k: usize, n: usize, trunc: usize) -> Result<Self> {
        let base = Self::new(k, n)?;
        let min = Self::min_trunc(k, n);
        if trunc < min {
            return Err(Error::TruncationTooSmall { k, n, trunc, min });
        }
        Ok(GrContext { trunc, ..base })
    }

    pub fn min_trunc(k: usize, n: usize) -> usize {
        k.min(n - k) + 1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Width n − k of the rectangle.
    pub fn cols(&self) -> usize {
        self.n - self.k
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Builds a partition, padding short input with zeros.
    pub fn partition(&self, parts: &[usize]) -> Result<Partition> {
        let raw: Vec<i64> = parts.iter().map(|&p| p as i64).collect();
        self.partition_from_raw(&raw)
    }

    pub fn partition_from_raw(&self, raw: &[i64]) -> Result<Partition> {
        let bad = |reason: &str| Error::InvalidPartition {
            parts: raw.to_vec(),
            k: self.k,
            n: self.n,
            reason: reason.to_string(),
        };
        if raw.len() > self.k {
            let (head, tail) = raw.split_at(self.k);
            if tail.iter().any(|&p| p != 0) {
                return Err(bad("more than k nonzero parts"));
            }
            return self.partition_from_raw(head);
        }
        if raw.iter().any(|&p| p < 0) {
            return Err(bad("negative part"));
        }
        if raw.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad("parts not weakly decreasing"));
        }
        if raw.first().is_some_and(|&p| p as usize > self.cols()) {
            return Err(bad("first part exceeds n−k"));
        }
        let mut parts: Vec<usize> = raw.iter().map(|&p| p as usize).collect();
        parts.resize(self.k, 0);
        Ok(Partition(parts))
    }

    pub fn parse_partition(&self, text: &str) -> Result<Partition> {
        let raw: RawParts = text.parse()?;
        self.partition_from_raw(&raw.0)
    }

    pub fn is_valid(&self, lambda: &Partition) -> bool {
        lambda.len() == self.k
            && lambda.0.windows(2).all(|w| w[0] >= w[1])
            && lambda.part(1) <= self.cols()
    }

    pub fn check(&self, lambda: &Partition) -> Result<()> {
        if self.is_valid(lambda) {
            Ok(())
        } else {
            let raw: Vec<i64> = lambda.0.iter().map(|&p| p as i64).collect();
            self.partition_from_raw(&raw).map(|_| ())
        }
    }

    pub fn empty(&self) -> Partition {
        Partition(vec![0; self.k])
    }

    pub fn full(&self) -> Partition {
        Partition(vec![self.cols(); self.k])
    }

    /// The special class (i, 0, …, 0).
    pub fn special(&self, i: usize) -> Partition {
        let mut parts = vec![0; self.k];
        parts[0] = i;
        Partition(parts)
    }

    /// The column (1, …, 1).
    pub fn column(&self) -> Partition {
        Partition(vec![1; self.k])
    }

    /// All partitions of the rectangle, sorted by size then lexicographically.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.k];
        fill_partitions(&mut cur, 0, self.cols(), &mut out);
        out.sort();
        out
    }

    pub fn dual(&self, lambda: &Partition) -> Partition {
        let c = self.cols();
        Partition(lambda.0.iter().rev().map(|&p| c - p).collect())
    }

    pub fn to_jump_sequence(&self, lambda: &Partition) -> JumpSequence {
        let c = self.cols();
        JumpSequence((1..=self.k).map(|j| c + j - lambda.part(j)).collect())
    }

    pub fn from_jump_sequence(&self, seq: &JumpSequence) -> Result<Partition> {
        let a = &seq.0;
        let ok = a.len() == self.k
            && a.windows(2).all(|w| w[0] < w[1])
            && a.first().is_some_and(|&x| x >= 1)
            && a.last().is_some_and(|&x| x <= self.n);
        if !ok {
            return Err(Error::InvalidJumpSequence(a.clone()));
        }
        let c = self.cols();
        Ok(Partition(a.iter().enumerate().map(|(j, &x)| c + j + 1 - x).collect()))
    }

    /// Adds `p` to every entry modulo n, with representatives in 1..=n.
    pub fn shift_jump(&self, seq: &JumpSequence, p: i64) -> JumpSequence {
        let n = self.n as i64;
        JumpSequence::new(seq.0.iter().map(|&a| ((a as i64 - 1 + p).rem_euclid(n) + 1) as usize).collect())
    }

    /// #{a_j ≤ i}.
    pub fn d_count(&self, seq: &JumpSequence, i: usize) -> usize {
        seq.0.iter().filter(|&&a| a <= i).count()
    }

    fn seidel_step(&self, lambda: &Partition) -> Partition {
        let c = self.cols();
        if lambda.part(1) < c {
            Partition(lambda.0.iter().map(|&p| p + 1).collect())
        } else {
            let mut parts: Vec<usize> = lambda.0[1..].to_vec();
            parts.push(0);
            Partition(parts)
        }
    }

    /// λ↑p: the index of T^p(O^λ).
    pub fn seidel_up(&self, lambda: &Partition, p: usize) -> Partition {
        let mut cur = lambda.clone();
        for _ in 0..p % self.n {
            cur = self.seidel_step(&cur);
        }
        cur
    }

    /// λ↓p = λ↑(n−p), for any integer p.
    pub fn seidel_down(&self, lambda: &Partition, p: i64) -> Partition {
        let n = self.n as i64;
        self.seidel_up(lambda, (-p).rem_euclid(n) as usize)
    }

    /// λ↑p for an arbitrary integer p.
    pub fn seidel_shift(&self, lambda: &Partition, p: i64) -> Partition {
        self.seidel_up(lambda, p.rem_euclid(self.n as i64) as usize)
    }

    /// d_r(λ) = (rk + |λ| − |λ↑r|)/n, the q-power in T^r(O^λ).
    pub fn seidel_degree(&self, lambda: &Partition, r: usize) -> usize {
        let shifted = self.seidel_up(lambda, r);
        let num = (r * self.k + lambda.size()) as i64 - shifted.size() as i64;
        debug_assert!(num >= 0 && num % self.n as i64 == 0);
        (num / self.n as i64) as usize
    }

    pub fn horizontal_strip(&self, lambda: &Partition, nu: &Partition) -> StripShape {
        let contains = nu.contains(lambda);
        let interlaced = (1..self.k).all(|i| nu.part(i + 1) <= lambda.part(i));
        StripShape {
            is_strip: contains && interlaced,
            size: nu.size() as i64 - lambda.size() as i64,
            rows: (1..=self.k).filter(|&i| nu.part(i) > lambda.part(i)).count(),
        }
    }

    /// Every ν in the rectangle with ν/λ a horizontal strip, λ itself included.
    pub fn horizontal_strips_over(&self, lambda: &Partition) -> Vec<Partition> {
        let bounds: Vec<(usize, usize)> = (1..=self.k)
            .map(|i| {
                let hi = if i == 1 { self.cols() } else { lambda.part(i - 1) };
                (lambda.part(i), hi)
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.k);
        product_ranges(&bounds, &mut cur, &mut |v| out.push(Partition(v.to_vec())));
        out
    }

    /// Shapes η ⊇ μ∨ obtained by adding at most one box per row and column, with sign (−1)^{|η/μ∨|}.
    pub fn rook_strips_over(&self, mu: &Partition) -> Vec<(Partition, i64)> {
        let base = self.dual(mu);
        let addable: Vec<usize> = (0..self.k)
            .filter(|&i| base.0[i] < self.cols() && (i == 0 || base.0[i - 1] > base.0[i]))
            .collect();
        let mut out = Vec::with_capacity(1 << addable.len());
        for mask in 0u64..(1u64 << addable.len()) {
            let mut parts = base.0.clone();
            let mut count = 0;
            for (bit, &row) in addable.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    parts[row] += 1;
                    count += 1;
                }
            }
            out.push((Partition(parts), if count % 2 == 0 { 1 } else { -1 }));
        }
        out.sort();
        out
    }

    /// Partitions ν obtained from λ by removing a nonempty set of outer-rim boxes from every row,
    /// paired with the number of rows among the first k−1 of ν still meeting the rim.
    ///
    /// Empty unless λ has k nonzero parts.
    pub fn outer_rim_removals(&self, lambda: &Partition) -> Vec<(Partition, usize)> {
        let k = self.k;
        if lambda.part(k) == 0 {
            return Vec::new();
        }
        let bounds: Vec<(usize, usize)> = (1..=k)
            .map(|j| (lambda.part(j + 1).saturating_sub(1), lambda.part(j) - 1))
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        product_ranges(&bounds, &mut cur, &mut |v| {
            let rows = (1..k).filter(|&j| v[j - 1] >= lambda.part(j + 1)).count();
            out.push((Partition(v.to_vec()), rows));
        });
        out
    }
}

fn fill_partitions(cur: &mut Vec<usize>, i: usize, bound: usize, out: &mut Vec<Partition>) {
    if i == cur.len() {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in 0..=bound {
        cur[i] = p;
        fill_partitions(cur, i + 1, p, out);
    }
    cur[i] = 0;
}

fn product_ranges(bounds: &[(usize, usize)], cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let i = cur.len();
    if i == bounds.len() {
        f(cur);
        return;
    }
    let (lo, hi) = bounds[i];
    for v in lo..=hi {
        cur.push(v);
        product_ranges(bounds, cur, f);
        cur.pop();
    }
}

/// The rectangle's partitions with their positions in the sorted order.
#[derive(Clone, Debug)]
pub struct Basis {
    ctx: GrContext,
    elems: Vec<Partition>,
    index: HashMap<Partition, usize>,
}

impl Basis {
    pub fn new(ctx: GrContext) -> Self {
        let elems = ctx.partitions();
        let index = elems.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Basis { ctx, elems, index }
    }

    pub fn ctx(&self) -> &GrContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.elems[i]
    }

    pub fn elems(&self) -> &[Partition] {
        &self.elems
    }

    pub fn index_of(&self, lambda: &Partition) -> Result<usize> {
        self.index.get(lambda).copied().ok_or_else(|| Error::InvalidPartition {
            parts: lambda.parts().iter().map(|&p| p as i64).collect(),
            k: self.ctx.k(),
            n: self.ctx.n(),
            reason: "not in the rectangle".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(k: usize, n: usize) -> GrContext {
        GrContext::new(k, n).unwrap()
    }

    #[test]
    fn pads_short_input() {
        let ctx = gr(4, 9);
        assert_eq!(ctx.partition(&[3, 1, 1]).unwrap().parts(), &[3, 1, 1, 0]);
        assert_eq!(ctx.parse_partition("3,1,1").unwrap(), ctx.partition(&[3, 1, 1, 0]).unwrap());
        assert!(ctx.partition(&[6]).is_err());
        assert!(ctx.partition(&[1, 2]).is_err());
        assert!(ctx.partition_from_raw(&[2, -1]).is_err());
    }

    #[test]
    fn basis_size_is_binomial() {
        for n in 2..=9 {
            for k in 1..n {
                let expect = (1..=k).fold(1usize, |acc, i| acc * (n - k + i) / i);
                assert_eq!(gr(k, n).partitions().len(), expect);
            }
        }
    }

    #[test]
    fn dual_examples() {
        let ctx = gr(2, 4);
        assert_eq!(ctx.dual(&ctx.partition(&[2, 1]).unwrap()).parts(), &[1, 0]);
        assert_eq!(ctx.dual(&ctx.empty()), ctx.full());
    }

    #[test]
    fn jump_sequence_examples() {
        let ctx = gr(2, 4);
        let lam = ctx.partition(&[2, 1]).unwrap();
        let seq = ctx.to_jump_sequence(&lam);
        assert_eq!(seq.entries(), &[1, 3]);
        assert_eq!(ctx.from_jump_sequence(&seq).unwrap(), lam);
        assert_eq!(ctx.shift_jump(&seq, -1).entries(), &[2, 4]);
        assert_eq!(ctx.to_jump_sequence(&ctx.empty()).entries(), &[3, 4]);
    }

    #[test]
    fn seidel_examples() {
        let ctx = gr(2, 4);
        let p = |v: &[usize]| ctx.partition(v).unwrap();
        assert_eq!(ctx.seidel_up(&p(&[1, 0]), 1), p(&[2, 1]));
        assert_eq!(ctx.seidel_up(&p(&[2, 1]), 1), p(&[1, 0]));
        assert_eq!(ctx.seidel_up(&p(&[2, 2]), 2), p(&[0, 0]));
        assert_eq!(ctx.seidel_degree(&p(&[2, 2]), 2), 2);
        assert_eq!(ctx.seidel_down(&p(&[2, 1]), 1), p(&[1, 0]));
    }

    #[test]
    fn strip_examples() {
        let ctx = gr(2, 4);
        let p = |v: &[usize]| ctx.partition(v).unwrap();
        let s = ctx.horizontal_strip(&p(&[1, 0]), &p(&[2, 1]));
        assert_eq!(s, StripShape { is_strip: true, size: 2, rows: 2 });
        assert!(!ctx.horizontal_strip(&p(&[0, 0]), &p(&[1, 1])).is_strip);
        let mut strips = ctx.horizontal_strips_over(&p(&[1, 0]));
        strips.sort();
        assert_eq!(strips, vec![p(&[1, 0]), p(&[1, 1]), p(&[2, 0]), p(&[2, 1])]);
    }

    #[test]
    fn rook_strip_examples() {
        let ctx = gr(2, 4);
        let p = |v: &[usize]| ctx.partition(v).unwrap();
        assert_eq!(ctx.rook_strips_over(&p(&[2, 2])), vec![(p(&[0, 0]), 1), (p(&[1, 0]), -1)]);
        assert_eq!(ctx.rook_strips_over(&p(&[0, 0])), vec![(p(&[2, 2]), 1)]);
        assert_eq!(ctx.rook_strips_over(&p(&[1, 0])).len(), 2);
    }

    #[test]
    fn rim_removal_examples() {
        let ctx = gr(4, 9);
        let p = |v: &[usize]| ctx.partition(v).unwrap();
        let rims = ctx.outer_rim_removals(&p(&[4, 3, 2, 1]));
        assert!(rims.contains(&(p(&[3, 2, 1, 0]), 3)));
        assert!(rims.contains(&(p(&[2, 1, 0, 0]), 0)));
        assert_eq!(rims.len(), 8);
        assert!(ctx.outer_rim_removals(&p(&[4, 3, 2, 0])).is_empty());

        let ctx = gr(2, 4);
        let p = |v: &[usize]| ctx.partition(v).unwrap();
        assert_eq!(ctx.outer_rim_removals(&p(&[1, 1])), vec![(p(&[0, 0]), 0)]);
    }

    #[test]
    fn basis_order_starts_at_empty() {
        let ctx = gr(3, 6);
        let basis = Basis::new(ctx);
        assert_eq!(basis.get(0), &ctx.empty());
        assert_eq!(basis.get(basis.len() - 1), &ctx.full());
        assert!(basis.elems().windows(2).all(|w| w[0] < w[1]));
    }
}
