//! Named partitions.

use super::partition::Partition;
use crate::error::{Error, Result};

/// |^⊙k.
pub fn identity(k: usize) -> Partition {
    let labels: Vec<usize> = (0..k).chain(0..k).collect();
    Partition::from_labels(k, k, &labels)
}

/// ⊓ ∈ P(2,0).
pub fn pair_upper() -> Partition {
    Partition::from_labels(2, 0, &[0, 0])
}

/// ⊓* ∈ P(0,2).
pub fn pair_lower() -> Partition {
    Partition::from_labels(0, 2, &[0, 0])
}

/// s₂ = {{1},{2}} ∈ P(1,1).
pub fn singletons() -> Partition {
    Partition::from_labels(1, 1, &[0, 1])
}

/// p₃ ∈ P(2,1), one block.
pub fn p3() -> Partition {
    Partition::from_labels(2, 1, &[0, 0, 0])
}

/// p₄ ∈ P(2,2), one block.
pub fn p4() -> Partition {
    Partition::from_labels(2, 2, &[0, 0, 0, 0])
}

/// Labels of k nested pairs on 2k points, numbered from `base`.
fn nested(k: usize, base: usize) -> Vec<usize> {
    (0..2 * k).map(|i| base + i.min(2 * k - 1 - i)).collect()
}

/// k nested lower pairs in P(0,2k).
pub fn nest_pair(k: usize) -> Partition {
    Partition::from_labels(0, 2 * k, &nested(k, 0))
}

/// d_n ∈ P(2n,2n): n nested pairs in each row, rows disconnected.
pub fn d(n: usize) -> Partition {
    let mut labels = nested(n, 0);
    labels.extend(nested(n, n));
    Partition::from_labels(2 * n, 2 * n, &labels)
}

/// h_□^l = d_l.
pub fn h_box(l: usize) -> Partition {
    d(l)
}

/// d_l with the outermost pair of each row merged into one 4-point block.
pub fn h_bar(l: usize) -> Result<Partition> {
    if l == 0 {
        return Err(Error::OutOfRange("h_bar needs l ≥ 1".into()));
    }
    let mut labels = nested(l, 0);
    labels.extend(nested(l, l).into_iter().map(|x| if x == l { 0 } else { x }));
    Ok(Partition::from_labels(2 * l, 2 * l, &labels))
}

fn tilde(k: usize, l: usize, core: Partition) -> Result<Partition> {
    if l > k {
        return Err(Error::OutOfRange(format!(
            "need l ≤ k, got l = {l}, k = {k}"
        )));
    }
    let side = identity(k - l);
    Ok(side.horizontal_concat(&core).horizontal_concat(&side))
}

/// |^⊙(k−l) ⊙ h_□^l ⊙ |^⊙(k−l) ∈ P(2k,2k).
pub fn h_box_tilde(k: usize, l: usize) -> Result<Partition> {
    tilde(k, l, h_box(l))
}

/// |^⊙(k−l) ⊙ h_▯^l ⊙ |^⊙(k−l) ∈ P(2k,2k).
pub fn h_bar_tilde(k: usize, l: usize) -> Result<Partition> {
    tilde(k, l, h_bar(l)?)
}

/// Looks up a named partition; `param` is ignored by the fixed ones.
pub fn named(name: &str, param: usize) -> Result<Partition> {
    if param > 5 {
        return Err(Error::BoundExceeded(format!(
            "parameter {param} for {name}"
        )));
    }
    match name {
        "id" | "identity" => Ok(identity(param)),
        "pair" | "cap" => Ok(pair_upper()),
        "pair*" | "cup" => Ok(pair_lower()),
        "s2" => Ok(singletons()),
        "p3" => Ok(p3()),
        "p4" => Ok(p4()),
        "d" => Ok(d(param)),
        "h_box" => Ok(h_box(param)),
        "h_bar" => h_bar(param),
        "nest" | "nest_pair" => Ok(nest_pair(param)),
        _ => Err(Error::Parse(format!("unknown partition name {name:?}"))),
    }
}
