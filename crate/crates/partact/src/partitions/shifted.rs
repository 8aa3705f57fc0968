//! Shifted horizontal concatenations of lower-row partitions.

use super::partition::{Partition, UnionFind};
use crate::error::{Error, Result};

fn lower_only(p: &Partition, min: usize) -> Result<()> {
    if p.upper() != 0 {
        return Err(Error::Precondition(format!("{p} has upper points")));
    }
    if p.lower() < min {
        return Err(Error::InputTooSmall(format!(
            "{p} needs at least {min} points"
        )));
    }
    Ok(())
}

/// p ⊙₁ q for p ∈ P(0,k+1), q ∈ P(0,l+1): the points of p except the last,
/// then q, with the last points of p and q merged into the final point.
pub fn shifted_concat_1(p: &Partition, q: &Partition) -> Result<Partition> {
    lower_only(p, 1)?;
    lower_only(q, 1)?;
    let off = p.num_blocks();
    let mut uf = UnionFind::new(off + q.num_blocks());
    let pl = p.labels();
    let ql = q.labels();
    uf.union(pl[pl.len() - 1] as usize, off + ql[ql.len() - 1] as usize);
    let seq: Vec<usize> = pl[..pl.len() - 1]
        .iter()
        .map(|&x| x as usize)
        .chain(ql.iter().map(|&x| off + x as usize))
        .map(|x| uf.find(x))
        .collect();
    Ok(Partition::from_labels(0, seq.len(), &seq))
}

/// p ⊙₂ q for p ∈ P(0,k+2), q ∈ P(0,l+2), together with the number of loops
/// closed by the cap. The result is [p₁…p_k, q₁…q_{l+1}, p_{k+2}] where the
/// cap joins q_{l+2} with p_{k+1}.
pub fn shifted_concat_2_with_loops(p: &Partition, q: &Partition) -> Result<(Partition, usize)> {
    lower_only(p, 2)?;
    lower_only(q, 2)?;
    let off = p.num_blocks();
    let total = off + q.num_blocks();
    let mut uf = UnionFind::new(total);
    let pl = p.labels();
    let ql = q.labels();
    let (k, l) = (pl.len() - 2, ql.len() - 2);
    uf.union(pl[k] as usize, off + ql[l + 1] as usize);
    let kept: Vec<usize> = pl[..k]
        .iter()
        .map(|&x| x as usize)
        .chain(ql[..l + 1].iter().map(|&x| off + x as usize))
        .chain(std::iter::once(pl[k + 1] as usize))
        .collect();
    let mut seen = vec![false; total];
    let seq: Vec<usize> = kept
        .into_iter()
        .map(|x| {
            let r = uf.find(x);
            seen[r] = true;
            r
        })
        .collect();
    let loops = (0..total).filter(|&x| uf.find(x) == x && !seen[x]).count();
    Ok((Partition::from_labels(0, seq.len(), &seq), loops))
}

pub fn shifted_concat_2(p: &Partition, q: &Partition) -> Result<Partition> {
    Ok(shifted_concat_2_with_loops(p, q)?.0)
}
