//! Categories of partitions given by membership predicates.

use std::fmt;
use std::sync::Arc;

use super::enumerate::enumerate_bounded;
use super::named;
use super::partition::{vertical_concat, Partition};
use crate::error::{Error, Result};

type Predicate = Arc<dyn Fn(&Partition) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct CategorySpec {
    name: String,
    predicate: Predicate,
}

fn nc_with(p: &Partition, size_ok: impl Fn(usize) -> bool) -> bool {
    p.block_sizes().into_iter().all(size_ok) && p.is_noncrossing()
}

impl CategorySpec {
    /// A category given by an arbitrary predicate. Closure under the category
    /// operations is the caller's responsibility; see [`closure_audit`].
    pub fn custom(
        name: impl Into<String>,
        predicate: impl Fn(&Partition) -> bool + Send + Sync + 'static,
    ) -> Self {
        CategorySpec {
            name: name.into(),
            predicate: Arc::new(predicate),
        }
    }

    /// All partitions (the symmetric group S_N).
    pub fn all() -> Self {
        Self::custom("ALL", |_| true)
    }

    /// Non-crossing partitions (S_N^+).
    pub fn nc() -> Self {
        Self::custom("NC", |p| p.is_noncrossing())
    }

    /// Non-crossing pairings (O_N^+).
    pub fn nc2() -> Self {
        Self::custom("NC2", |p| nc_with(p, |s| s == 2))
    }

    /// Non-crossing partitions with blocks of even size (H_N^+).
    pub fn nc_even() -> Self {
        Self::custom("NC_EVEN", |p| nc_with(p, |s| s % 2 == 0))
    }

    /// Non-crossing partitions with blocks of size one or two (B_N^+).
    pub fn nc_12() -> Self {
        Self::custom("NC_12", |p| nc_with(p, |s| s <= 2))
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_uppercase().replace(['-', '_'], "").as_str() {
            "ALL" => Ok(Self::all()),
            "NC" => Ok(Self::nc()),
            "NC2" => Ok(Self::nc2()),
            "NCEVEN" => Ok(Self::nc_even()),
            "NC12" => Ok(Self::nc_12()),
            _ => Err(Error::Parse(format!("unknown category {name:?}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, p: &Partition) -> bool {
        (self.predicate)(p)
    }

    /// Whether every member is non-crossing, checked on all shapes with at
    /// most `max_points` points.
    pub fn is_noncrossing_within(&self, max_points: usize) -> bool {
        match self.name.as_str() {
            "NC" | "NC2" | "NC_EVEN" | "NC_12" => true,
            _ => (0..=max_points).all(|n| {
                (0..=n).all(|k| {
                    enumerate_bounded(self, k, n - k, max_points)
                        .map(|v| v.iter().all(Partition::is_noncrossing))
                        .unwrap_or(false)
                })
            }),
        }
    }

    /// Membership inclusion on all shapes with at most `max_points` points.
    pub fn is_subcategory_of(&self, other: &CategorySpec, max_points: usize) -> bool {
        (0..=max_points).all(|n| {
            (0..=n).all(|k| {
                enumerate_bounded(self, k, n - k, max_points)
                    .map(|v| v.iter().all(|p| other.contains(p)))
                    .unwrap_or(false)
            })
        })
    }
}

impl fmt::Debug for CategorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CategorySpec({})", self.name)
    }
}

impl fmt::Display for CategorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl PartialEq for CategorySpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

/// Checks that | is a member and that members are closed under ⊙, ∘ and *
/// for all pairs whose operands have at most `row_bound` points per row.
/// Returns the first violation found.
pub fn closure_audit(spec: &CategorySpec, row_bound: usize) -> std::result::Result<(), String> {
    if !spec.contains(&named::identity(1)) {
        return Err("| is not a member".into());
    }
    let mut members = Vec::new();
    for k in 0..=row_bound {
        for l in 0..=row_bound {
            if k + l > 2 * row_bound || k + l == 0 {
                continue;
            }
            members
                .extend(enumerate_bounded(spec, k, l, 2 * row_bound).map_err(|e| e.to_string())?);
        }
    }
    for p in &members {
        if !spec.contains(&p.involution()) {
            return Err(format!("{p}* is not a member"));
        }
    }
    for p in &members {
        for q in &members {
            if p.points() + q.points() <= 2 * row_bound && !spec.contains(&p.horizontal_concat(q)) {
                return Err(format!("{p} ⊙ {q} is not a member"));
            }
            if p.lower() == q.upper() {
                let (c, _) = vertical_concat(q, p).map_err(|e| e.to_string())?;
                if !spec.contains(&c) {
                    return Err(format!("{q} ∘ {p} is not a member"));
                }
            }
        }
    }
    Ok(())
}
