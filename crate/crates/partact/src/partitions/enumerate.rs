//! Exhaustive enumeration of 𝒞(k, l).

use super::category::CategorySpec;
use super::partition::Partition;
use crate::error::{Error, Result};

pub const DEFAULT_POINT_BOUND: usize = 10;

/// Calls `f` on every restricted growth string of length n, in
/// lexicographic order.
pub fn for_each_rgs(n: usize, mut f: impl FnMut(&[usize])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut a = vec![0usize; n];
    // m[i] = max(a[0..i]) + 1
    let mut m = vec![1usize; n];
    loop {
        f(&a);
        // find the rightmost position that can be incremented
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if a[i] < m[i] {
                break;
            }
            i -= 1;
        }
        a[i] += 1;
        for j in i + 1..n {
            a[j] = 0;
            m[j] = m[j - 1].max(a[j - 1] + 1);
        }
    }
}

pub fn enumerate(spec: &CategorySpec, k: usize, l: usize) -> Result<Vec<Partition>> {
    enumerate_bounded(spec, k, l, DEFAULT_POINT_BOUND)
}

pub fn enumerate_bounded(
    spec: &CategorySpec,
    k: usize,
    l: usize,
    bound: usize,
) -> Result<Vec<Partition>> {
    if k + l > bound {
        return Err(Error::BoundExceeded(format!(
            "{} points, bound {bound}",
            k + l
        )));
    }
    let mut out = Vec::new();
    for_each_rgs(k + l, |a| {
        let p = Partition::from_labels(k, l, a);
        if spec.contains(&p) {
            out.push(p);
        }
    });
    Ok(out)
}

pub fn enumerate_projective(spec: &CategorySpec, k: usize) -> Result<Vec<Partition>> {
    Ok(enumerate(spec, k, k)?
        .into_iter()
        .filter(Partition::is_projective)
        .collect())
}

/// Projective partitions without through-blocks.
pub fn enumerate_projective_zero(spec: &CategorySpec, k: usize) -> Result<Vec<Partition>> {
    Ok(enumerate_projective(spec, k)?
        .into_iter()
        .filter(|p| p.block_stats().through == 0)
        .collect())
}
