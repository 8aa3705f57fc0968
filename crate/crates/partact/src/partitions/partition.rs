//! Two-row set partitions and the category operations.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set partition of `upper + lower` points. Points `0..upper` are the
/// upper row left to right, `upper..upper+lower` the lower row left to right
/// (these are the 1-based points `1..=upper+lower` of the JSON format).
///
/// Blocks are stored as a restricted growth string: `labels[i]` is the block
/// index of point `i`, and blocks are numbered by first appearance. This is
/// the same as sorting blocks by their smallest point, so derived equality
/// and hashing agree with the canonical block list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    upper: usize,
    lower: usize,
    labels: Vec<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStats {
    pub through: usize,
    pub nonthrough: usize,
}

/// Small union-find used for compositions and merges.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn normalize(raw: impl IntoIterator<Item = usize>) -> Vec<u16> {
    let mut map: Vec<(usize, u16)> = Vec::new();
    raw.into_iter()
        .map(|x| match map.iter().find(|(k, _)| *k == x) {
            Some(&(_, v)) => v,
            None => {
                let v = map.len() as u16;
                map.push((x, v));
                v
            }
        })
        .collect()
}

impl Partition {
    /// Builds a partition from arbitrary block labels, one per point.
    pub fn from_labels(upper: usize, lower: usize, labels: &[usize]) -> Partition {
        assert_eq!(labels.len(), upper + lower, "one label per point");
        Partition {
            upper,
            lower,
            labels: normalize(labels.iter().copied()),
        }
    }

    fn from_raw(upper: usize, lower: usize, labels: impl IntoIterator<Item = usize>) -> Partition {
        let labels = normalize(labels);
        debug_assert_eq!(labels.len(), upper + lower);
        Partition {
            upper,
            lower,
            labels,
        }
    }

    /// Builds a partition from blocks of 1-based point indices.
    pub fn from_blocks(upper: usize, lower: usize, blocks: &[Vec<usize>]) -> Result<Partition> {
        let n = upper + lower;
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            for &x in block {
                if x == 0 || x > n {
                    return Err(Error::OutOfRange(format!("point {x} not in 1..={n}")));
                }
                if label[x - 1] != usize::MAX {
                    return Err(Error::Parse(format!("point {x} appears twice")));
                }
                label[x - 1] = b;
            }
        }
        if let Some(i) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Parse(format!("point {} is in no block", i + 1)));
        }
        Ok(Partition::from_labels(upper, lower, &label))
    }

    pub fn empty() -> Partition {
        Partition {
            upper: 0,
            lower: 0,
            labels: Vec::new(),
        }
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn points(&self) -> usize {
        self.upper + self.lower
    }

    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    pub fn upper_labels(&self) -> &[u16] {
        &self.labels[..self.upper]
    }

    pub fn lower_labels(&self) -> &[u16] {
        &self.labels[self.upper..]
    }

    pub fn num_blocks(&self) -> usize {
        self.labels
            .iter()
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Canonical block list with 1-based points.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i + 1);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_blocks()];
        for &l in &self.labels {
            out[l as usize] += 1;
        }
        out
    }

    /// Whether two 0-based points share a block.
    pub fn connected(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    /// Per block: (meets upper row, meets lower row).
    pub fn block_rows(&self) -> Vec<(bool, bool)> {
        let mut out = vec![(false, false); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            if i < self.upper {
                out[l as usize].0 = true;
            } else {
                out[l as usize].1 = true;
            }
        }
        out
    }

    pub fn block_stats(&self) -> BlockStats {
        let rows = self.block_rows();
        let through = rows.iter().filter(|(u, l)| *u && *l).count();
        BlockStats {
            through,
            nonthrough: rows.len() - through,
        }
    }

    pub fn horizontal_concat(&self, q: &Partition) -> Partition {
        let off = self.num_blocks();
        let p_up = self.upper_labels().iter().map(|&l| l as usize);
        let q_up = q.upper_labels().iter().map(|&l| l as usize + off);
        let p_lo = self.lower_labels().iter().map(|&l| l as usize);
        let q_lo = q.lower_labels().iter().map(|&l| l as usize + off);
        Partition::from_raw(
            self.upper + q.upper,
            self.lower + q.lower,
            p_up.chain(q_up).chain(p_lo).chain(q_lo),
        )
    }

    /// The composite `self ∘ p` (p on top, self below) with the number of
    /// removed loops.
    pub fn compose(&self, p: &Partition) -> Result<(Partition, usize)> {
        vertical_concat(self, p)
    }

    pub fn involution(&self) -> Partition {
        let lo = self.lower_labels().iter().map(|&l| l as usize);
        let up = self.upper_labels().iter().map(|&l| l as usize);
        Partition::from_raw(self.lower, self.upper, lo.chain(up))
    }

    /// Moves the left-most lower point to the left end of the upper row.
    /// Left-right reflection of both rows.
    pub fn mirror(&self) -> Partition {
        let up = self.upper_labels().iter().rev();
        let lo = self.lower_labels().iter().rev();
        Partition::from_raw(self.upper, self.lower, up.chain(lo).map(|&l| l as usize))
    }

    pub fn rotate_left_up(&self) -> Result<Partition> {
        if self.lower == 0 {
            return Err(Error::EmptyRow("no lower point to rotate".into()));
        }
        let l = self.labels.iter().map(|&x| x as usize);
        let first = self.labels[self.upper] as usize;
        let seq = std::iter::once(first)
            .chain(l.clone().take(self.upper))
            .chain(l.skip(self.upper + 1));
        Ok(Partition::from_raw(self.upper + 1, self.lower - 1, seq))
    }

    /// Moves the right-most lower point to the right end of the upper row.
    pub fn rotate_right_up(&self) -> Result<Partition> {
        if self.lower == 0 {
            return Err(Error::EmptyRow("no lower point to rotate".into()));
        }
        let n = self.points();
        let l = self.labels.iter().map(|&x| x as usize);
        let last = self.labels[n - 1] as usize;
        let seq = l
            .clone()
            .take(self.upper)
            .chain(std::iter::once(last))
            .chain(l.skip(self.upper).take(self.lower - 1));
        Ok(Partition::from_raw(self.upper + 1, self.lower - 1, seq))
    }

    /// Moves the left-most upper point to the left end of the lower row.
    pub fn rotate_left_down(&self) -> Result<Partition> {
        if self.upper == 0 {
            return Err(Error::EmptyRow("no upper point to rotate".into()));
        }
        let l = self.labels.iter().map(|&x| x as usize);
        let first = self.labels[0] as usize;
        let seq = l
            .clone()
            .skip(1)
            .take(self.upper - 1)
            .chain(std::iter::once(first))
            .chain(l.skip(self.upper));
        Ok(Partition::from_raw(self.upper - 1, self.lower + 1, seq))
    }

    /// Moves the right-most upper point to the right end of the lower row.
    pub fn rotate_right_down(&self) -> Result<Partition> {
        if self.upper == 0 {
            return Err(Error::EmptyRow("no upper point to rotate".into()));
        }
        let l = self.labels.iter().map(|&x| x as usize);
        let last = self.labels[self.upper - 1] as usize;
        let seq = l
            .clone()
            .take(self.upper - 1)
            .chain(l.skip(self.upper))
            .chain(std::iter::once(last));
        Ok(Partition::from_raw(self.upper - 1, self.lower + 1, seq))
    }

    /// Labels in circular order: upper row left to right, then lower row
    /// right to left.
    pub fn circular_labels(&self) -> Vec<u16> {
        let mut out = self.upper_labels().to_vec();
        out.extend(self.lower_labels().iter().rev());
        out
    }

    pub fn is_noncrossing(&self) -> bool {
        let seq = self.circular_labels();
        let nb = self.num_blocks();
        let mut remaining = vec![0usize; nb];
        for &l in &seq {
            remaining[l as usize] += 1;
        }
        let mut open = vec![false; nb];
        let mut stack: Vec<u16> = Vec::new();
        for &x in &seq {
            if open[x as usize] {
                while let Some(&top) = stack.last() {
                    if top == x {
                        break;
                    }
                    if remaining[top as usize] > 0 {
                        return false;
                    }
                    open[top as usize] = false;
                    stack.pop();
                }
            } else {
                open[x as usize] = true;
                stack.push(x);
            }
            remaining[x as usize] -= 1;
        }
        true
    }

    pub fn is_projective(&self) -> bool {
        if self.upper != self.lower || self.involution() != *self {
            return false;
        }
        matches!(vertical_concat(self, self), Ok((ref c, _)) if c == self)
    }

    /// `q ⪯ self`, i.e. q∘self = q.
    pub fn dominates(&self, q: &Partition) -> Result<bool> {
        if self.upper != q.upper || self.points() != q.points() {
            return Err(Error::SizeMismatch(format!("{self} and {q}")));
        }
        for x in [self, q] {
            if !x.is_projective() {
                return Err(Error::NotProjective(x.to_string()));
            }
        }
        Ok(vertical_concat(q, self)?.0 == *q)
    }

    /// Returns p_u ∈ P(k, t(p)) with p = p_u* ∘ p_u.
    pub fn through_block_factorize(&self) -> Result<(Partition, Partition)> {
        if !self.is_projective() {
            return Err(Error::NotProjective(self.to_string()));
        }
        let rows = self.block_rows();
        // through blocks in order of their leftmost upper point
        let mut order: Vec<u16> = Vec::new();
        for &l in self.upper_labels() {
            let (u, lo) = rows[l as usize];
            if u && lo && !order.contains(&l) {
                order.push(l);
            }
        }
        let seq = self
            .upper_labels()
            .iter()
            .map(|&l| l as usize)
            .chain(order.iter().map(|&l| l as usize));
        let pu = Partition::from_raw(self.upper, order.len(), seq);
        Ok((pu.involution(), pu))
    }

    /// Places the lower row inside a new outer pair (lower-row-only input).
    pub fn nest_in_pair(&self) -> Result<Partition> {
        if self.upper != 0 {
            return Err(Error::Precondition(
                "nest_in_pair expects a lower-row partition".into(),
            ));
        }
        let outer = self.num_blocks();
        let seq = std::iter::once(outer)
            .chain(self.labels.iter().map(|&l| l as usize))
            .chain(std::iter::once(outer));
        Ok(Partition::from_raw(0, self.lower + 2, seq))
    }

    /// Uniformly random labels, normalized. Not uniform over partitions but
    /// reaches every partition of the given shape.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, upper: usize, lower: usize) -> Partition {
        let n = upper + lower;
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..n.max(1))).collect();
        Partition::from_labels(upper, lower, &labels)
    }
}

/// Vertical concatenation: p on top, q below, so the result is q∘p. Returns
/// the composite and the number of removed loops rl(q, p).
pub fn vertical_concat(q: &Partition, p: &Partition) -> Result<(Partition, usize)> {
    if p.lower != q.upper {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose: lower row of {p} has {} points, upper row of {q} has {}",
            p.lower, q.upper
        )));
    }
    let np = p.num_blocks();
    let nq = q.num_blocks();
    let mut uf = UnionFind::new(np + nq);
    for j in 0..p.lower {
        uf.union(p.labels[p.upper + j] as usize, np + q.labels[j] as usize);
    }
    let mut outer = vec![false; np + nq];
    let mut seq = Vec::with_capacity(p.upper + q.lower);
    for &l in p.upper_labels() {
        let r = uf.find(l as usize);
        outer[r] = true;
        seq.push(r);
    }
    for &l in q.lower_labels() {
        let r = uf.find(np + l as usize);
        outer[r] = true;
        seq.push(r);
    }
    let mut loops = 0;
    for x in 0..np + nq {
        if uf.find(x) == x && !outer[x] {
            loops += 1;
        }
    }
    Ok((Partition::from_raw(p.upper, q.lower, seq), loops))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{})", self.upper, self.lower)?;
        let blocks = self.blocks();
        write!(f, "{{")?;
        for (i, b) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    upper: usize,
    lower: usize,
    blocks: Vec<Vec<usize>>,
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionJson {
            upper: self.upper,
            lower: self.lower,
            blocks: self.blocks(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Partition, D::Error> {
        let j = PartitionJson::deserialize(d)?;
        Partition::from_blocks(j.upper, j.lower, &j.blocks).map_err(serde::de::Error::custom)
    }
}
