//! h-transverse polygons in `(c, d)` coordinates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("slope and length vectors differ in length on the {side} side ({slopes} vs {lengths})")]
    LengthMismatch {
        side: &'static str,
        slopes: usize,
        lengths: usize,
    },
    #[error("side lengths must be positive, got {0}")]
    NonPositiveLength(i64),
    #[error("right slopes must strictly decrease and left slopes strictly increase")]
    NonMonotoneSlopes,
    #[error("unbalanced sides: sum of d_r = {right}, sum of d_l = {left}")]
    UnbalancedSides { right: i64, left: i64 },
    #[error("bottom side degenerates: d_b = {0} < 1")]
    DegenerateBottom(i64),
    #[error("polygon has no sides")]
    Empty,
}

/// Left and right sides of an h-transverse polygon, without the top length.
///
/// Everything the floor-diagram side needs except `d_t`, which the invariant
/// maps derive from the point they are evaluated at.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sides {
    c_r: Vec<i64>,
    c_l: Vec<i64>,
    d_r: Vec<i64>,
    d_l: Vec<i64>,
}

impl Sides {
    pub fn new(
        c_r: Vec<i64>,
        c_l: Vec<i64>,
        d_r: Vec<i64>,
        d_l: Vec<i64>,
    ) -> Result<Self, PolygonError> {
        if c_r.len() != d_r.len() {
            return Err(PolygonError::LengthMismatch {
                side: "right",
                slopes: c_r.len(),
                lengths: d_r.len(),
            });
        }
        if c_l.len() != d_l.len() {
            return Err(PolygonError::LengthMismatch {
                side: "left",
                slopes: c_l.len(),
                lengths: d_l.len(),
            });
        }
        if c_r.is_empty() || c_l.is_empty() {
            return Err(PolygonError::Empty);
        }
        if let Some(&bad) = d_r.iter().chain(&d_l).find(|&&d| d <= 0) {
            return Err(PolygonError::NonPositiveLength(bad));
        }
        let decreasing = c_r.windows(2).all(|w| w[0] > w[1]);
        let increasing = c_l.windows(2).all(|w| w[0] < w[1]);
        if !decreasing || !increasing {
            return Err(PolygonError::NonMonotoneSlopes);
        }
        let right: i64 = d_r.iter().sum();
        let left: i64 = d_l.iter().sum();
        if right != left {
            return Err(PolygonError::UnbalancedSides { right, left });
        }
        Ok(Self { c_r, c_l, d_r, d_l })
    }

    pub fn c_r(&self) -> &[i64] {
        &self.c_r
    }
    pub fn c_l(&self) -> &[i64] {
        &self.c_l
    }
    pub fn d_r(&self) -> &[i64] {
        &self.d_r
    }
    pub fn d_l(&self) -> &[i64] {
        &self.d_l
    }

    /// Number of black vertices, `Σ d_r = Σ d_l`.
    pub fn a(&self) -> usize {
        self.d_r.iter().sum::<i64>() as usize
    }

    /// `Σ c_r·d_r − Σ c_l·d_l`, so that `d_b = d_t + shift`.
    pub fn shift(&self) -> i64 {
        let r: i64 = self.c_r.iter().zip(&self.d_r).map(|(c, d)| c * d).sum();
        let l: i64 = self.c_l.iter().zip(&self.d_l).map(|(c, d)| c * d).sum();
        r - l
    }

    pub fn direction_multisets(&self) -> DirectionMultisets {
        let expand = |c: &[i64], d: &[i64]| {
            c.iter()
                .zip(d)
                .flat_map(|(&c, &d)| std::iter::repeat(c).take(d as usize))
                .collect()
        };
        DirectionMultisets {
            d_r: expand(&self.c_r, &self.d_r),
            d_l: expand(&self.c_l, &self.d_l),
        }
    }

    /// All pairs `(r, l)` of distinct orderings of the direction multisets.
    pub fn permutation_pairs(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let dm = self.direction_multisets();
        let rs = distinct_permutations(&dm.d_r);
        let ls = distinct_permutations(&dm.d_l);
        let mut out = Vec::with_capacity(rs.len() * ls.len());
        for r in &rs {
            for l in &ls {
                out.push((r.clone(), l.clone()));
            }
        }
        out
    }

    pub fn with_top(self, d_t: i64) -> Result<HTransversePolygon, PolygonError> {
        HTransversePolygon::from_sides(self, d_t)
    }
}

/// Validated polygon `P(c, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HTransversePolygon {
    sides: Sides,
    d_t: i64,
    d_b: i64,
}

impl HTransversePolygon {
    pub fn new(
        c_r: Vec<i64>,
        c_l: Vec<i64>,
        d_t: i64,
        d_r: Vec<i64>,
        d_l: Vec<i64>,
    ) -> Result<Self, PolygonError> {
        Self::from_sides(Sides::new(c_r, c_l, d_r, d_l)?, d_t)
    }

    pub fn from_sides(sides: Sides, d_t: i64) -> Result<Self, PolygonError> {
        if d_t <= 0 {
            return Err(PolygonError::NonPositiveLength(d_t));
        }
        let d_b = d_t + sides.shift();
        if d_b < 1 {
            return Err(PolygonError::DegenerateBottom(d_b));
        }
        Ok(Self { sides, d_t, d_b })
    }

    pub fn sides(&self) -> &Sides {
        &self.sides
    }
    pub fn a(&self) -> usize {
        self.sides.a()
    }
    pub fn d_t(&self) -> i64 {
        self.d_t
    }
    pub fn d_b(&self) -> i64 {
        self.d_b
    }
}

/// Shorthand for [`HTransversePolygon::new`].
pub fn build_polygon(
    c_r: Vec<i64>,
    c_l: Vec<i64>,
    d_t: i64,
    d_r: Vec<i64>,
    d_l: Vec<i64>,
) -> Result<HTransversePolygon, PolygonError> {
    HTransversePolygon::new(c_r, c_l, d_t, d_r, d_l)
}

/// Right and left directions, each of size `a`, in slope order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionMultisets {
    pub d_r: Vec<i64>,
    pub d_l: Vec<i64>,
}

/// Distinct orderings of a multiset.
///
/// Values are tried in order of first appearance, so the input order itself
/// comes first.
pub fn distinct_permutations<T: Clone + PartialEq>(items: &[T]) -> Vec<Vec<T>> {
    let mut values: Vec<T> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for it in items {
        match values.iter().position(|v| v == it) {
            Some(p) => counts[p] += 1,
            None => {
                values.push(it.clone());
                counts.push(1);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(items.len());
    permute_rec(&values, &mut counts, items.len(), &mut cur, &mut out);
    out
}

fn permute_rec<T: Clone>(
    values: &[T],
    counts: &mut [usize],
    len: usize,
    cur: &mut Vec<T>,
    out: &mut Vec<Vec<T>>,
) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for i in 0..values.len() {
        if counts[i] == 0 {
            continue;
        }
        counts[i] -= 1;
        cur.push(values[i].clone());
        permute_rec(values, counts, len, cur, out);
        cur.pop();
        counts[i] += 1;
    }
}
