//! Lattice points of `{A t = b, t >= 0}`, vector partition functions,
//! parametric weights and weight lifting.
//!
//! Enumeration eliminates the equalities with an exact integer basis
//! `t_B = adj(B) (b - N t_N) / det(B)` and scans the free coordinates `t_N`.
//! A strictly positive functional `y` on the columns bounds the scan by
//! `Σ (y·a_j) t_j = y·b`.

pub mod linalg;
pub mod simplex;

use num::{BigInt, Integer};
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::FloorTemplate;
use crate::scalar::Field;
use crate::{Count, Rational};

use linalg::{adjugate, det, independent_rows, rref, to_field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("configuration is not pointed")]
    NotPointed,
    #[error("feasible region is unbounded and no explicit bounds were given")]
    Unbounded,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Integer matrix whose columns are the vectors `a_1..a_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VectorConfiguration {
    rows: Vec<Vec<i64>>,
}

impl VectorConfiguration {
    /// From a row-major `d × m` matrix.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        if let Some(w) = rows.first().map(Vec::len) {
            if rows.iter().any(|r| r.len() != w) {
                return Err(LatticeError::DimensionMismatch("ragged matrix".into()));
            }
        }
        Ok(Self { rows })
    }

    pub fn from_columns(dim: usize, cols: &[Vec<i64>]) -> Self {
        let rows = (0..dim).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn len(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }
    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.len()).map(|j| self.column(j)).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank_int(&self.rows)
    }

    /// The cone spanned by the columns contains no line.
    pub fn is_pointed(&self) -> bool {
        let cols: Vec<Vec<i64>> = self
            .columns()
            .into_iter()
            .filter(|c| c.iter().any(|&v| v != 0))
            .collect();
        positive_functional(&cols, self.dim()).is_some()
    }

    /// Pointed and without zero columns, so every `P_X(c)` is bounded.
    pub fn has_bounded_fibers(&self) -> bool {
        positive_functional(&self.columns(), self.dim()).is_some()
    }

    pub fn is_unimodular(&self) -> bool {
        linalg::is_unimodular(&self.rows)
    }

    /// `c ∈ cone(X)`, decided by exact linear programming.
    pub fn in_cone(&self, c: &[i64]) -> bool {
        let a = to_field::<Rational>(&self.rows);
        let b: Vec<Rational> = c.iter().map(|&v| Rational::from_i64(v)).collect();
        simplex::feasible_point(&a, &b, self.len()).is_some()
    }

    /// `P_X(c)` as a query.
    pub fn polytope(&self, c: &[i64]) -> AffineLatticePolytopeQuery {
        AffineLatticePolytopeQuery { a: self.rows.clone(), b: c.to_vec(), upper: None }
    }
}

/// Integer vector `y` with `y·col >= 1` for every column, if one exists.
fn positive_functional(cols: &[Vec<i64>], dim: usize) -> Option<Vec<BigInt>> {
    let colsq: Vec<Vec<Rational>> = cols
        .iter()
        .map(|c| c.iter().map(|&v| Rational::from_i64(v)).collect())
        .collect();
    let y = simplex::strictly_positive_functional(&colsq, dim)?;
    let l = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    Some(y.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect())
}

/// `Q(z) = {y >= 0 : C y = Σ z_i d_i + e}`; its lattice-point count is the weight `f(z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParametricPolytopeSpec {
    /// `r × k`.
    #[serde(rename = "C")]
    pub c: Vec<Vec<i64>>,
    /// `m` vectors of length `r`.
    pub d: Vec<Vec<i64>>,
    /// Length `r`.
    pub e: Vec<i64>,
}

impl ParametricPolytopeSpec {
    pub fn r(&self) -> usize {
        self.e.len()
    }

    pub fn k(&self) -> usize {
        self.c.first().map_or(0, Vec::len)
    }

    /// Constant weight 1: no rows, no columns.
    pub fn trivial(m: usize) -> Self {
        Self { c: vec![], d: vec![vec![]; m], e: vec![] }
    }

    fn validate(&self, m: usize) -> Result<(), LatticeError> {
        let r = self.r();
        if self.c.len() != r {
            return Err(LatticeError::DimensionMismatch(format!(
                "C has {} rows, e has {r} entries",
                self.c.len()
            )));
        }
        if self.c.iter().any(|row| row.len() != self.k()) {
            return Err(LatticeError::DimensionMismatch("ragged C".into()));
        }
        if self.d.len() != m || self.d.iter().any(|v| v.len() != r) {
            return Err(LatticeError::DimensionMismatch(format!(
                "need {m} vectors d_i of length {r}"
            )));
        }
        Ok(())
    }

    /// Right-hand side `Σ z_i d_i + e`.
    pub fn rhs(&self, z: &[i64]) -> Vec<i64> {
        let mut out = self.e.clone();
        for (zi, di) in z.iter().zip(&self.d) {
            for (o, &v) in out.iter_mut().zip(di) {
                *o += zi * v;
            }
        }
        out
    }

    pub fn query(&self, z: &[i64]) -> AffineLatticePolytopeQuery {
        AffineLatticePolytopeQuery { a: self.c.clone(), b: self.rhs(z), upper: None }
    }
}

/// The parity weight: `f(z) = 1` iff every `z_i` is odd, via `2 y_i = z_i - 1`.
pub fn pi_x_spec(m: usize) -> ParametricPolytopeSpec {
    let unit = |i: usize| (0..m).map(|j| i64::from(i == j)).collect::<Vec<_>>();
    ParametricPolytopeSpec {
        c: (0..m).map(|i| unit(i).into_iter().map(|v| 2 * v).collect()).collect(),
        d: (0..m).map(unit).collect(),
        e: vec![-1; m],
    }
}

/// The product weight `Π_{i∈E} z_i`, supported where `z_i` is odd for every `i ∉ Y`.
///
/// Variables: one per coordinate (first of a pair for `i ∈ E`), the second
/// member of each pair, then one parity variable per `i ∈ E \ Y`. Rows: one
/// per coordinate, then one per `i ∈ E \ Y`. With `E = {1..r}` and `Y` its last
/// `k` elements this is exactly the configuration with doubled `(0, -e_i)`
/// columns.
pub fn pi_y_spec(m: usize, e_set: &[usize], y_set: &[usize]) -> Result<ParametricPolytopeSpec, LatticeError> {
    if y_set.iter().any(|i| !e_set.contains(i)) || e_set.iter().any(|&i| i >= m) {
        return Err(LatticeError::DimensionMismatch("need Y ⊆ E ⊆ [m]".into()));
    }
    let mut e_sorted = e_set.to_vec();
    e_sorted.sort_unstable();
    e_sorted.dedup();
    let extra: Vec<usize> = e_sorted.iter().copied().filter(|i| !y_set.contains(i)).collect();
    let rows = m + extra.len();
    let cols = m + e_sorted.len() + extra.len();
    let mut c = vec![vec![0i64; cols]; rows];
    let mut d = vec![vec![0i64; rows]; m];
    for i in 0..m {
        d[i][i] = 1;
        if let Some(p) = e_sorted.iter().position(|&x| x == i) {
            c[i][i] = 1;
            c[i][m + p] = 1;
        } else {
            c[i][i] = 2;
        }
    }
    for (q, &i) in extra.iter().enumerate() {
        c[m + q][m + e_sorted.len() + q] = 2;
        d[i][m + q] = 1;
    }
    Ok(ParametricPolytopeSpec { c, d, e: vec![-1; rows] })
}

/// `A t = b, t >= 0`, optionally with per-coordinate upper bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineLatticePolytopeQuery {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    pub upper: Option<Vec<i64>>,
}

/// Elimination data for a fixed matrix, reusable across right-hand sides.
#[derive(Debug, Clone)]
pub struct Scanner {
    a: Vec<Vec<i64>>,
    cols: usize,
    rows: Vec<usize>,
    other_rows: Vec<usize>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    det: i128,
    adj: Vec<Vec<i128>>,
    // adj · A[rows][free]
    coupling: Vec<Vec<i128>>,
    // tail_nonneg[p][k]: coupling[p][j] >= 0 for every j > k
    tail_nonneg: Vec<Vec<bool>>,
    functional: Option<(Vec<i128>, Vec<i128>)>, // (y over rows of a, y·a_j per column)
    upper: Option<Vec<i64>>,
}

fn small(v: &BigInt) -> i128 {
    v.to_i128().expect("elimination data exceeds 128 bits")
}

impl Scanner {
    pub fn new(a: &[Vec<i64>], upper: Option<Vec<i64>>) -> Result<Self, LatticeError> {
        let cols = a.first().map_or(0, Vec::len);
        if a.iter().any(|r| r.len() != cols) {
            return Err(LatticeError::DimensionMismatch("ragged matrix".into()));
        }
        if let Some(u) = &upper {
            if u.len() != cols {
                return Err(LatticeError::DimensionMismatch("bounds length".into()));
            }
        }
        let rows = independent_rows(a);
        let other_rows = (0..a.len()).filter(|i| !rows.contains(i)).collect();
        let sub: Vec<Vec<i64>> = rows.iter().map(|&i| a[i].clone()).collect();
        let mut q = to_field::<Rational>(&sub);
        let pivots = rref(&mut q);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<i64>> = sub.iter().map(|r| pivots.iter().map(|&c| r[c]).collect()).collect();
        let mut d = det(&basis);
        let mut adj = adjugate(&basis);
        if basis.is_empty() {
            adj = vec![];
        }
        if d.is_negative() {
            d = -d;
            for row in adj.iter_mut() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
        }
        let adj: Vec<Vec<i128>> = adj.iter().map(|r| r.iter().map(small).collect()).collect();
        let coupling: Vec<Vec<i128>> = (0..pivots.len())
            .map(|p| {
                free.iter()
                    .map(|&fc| (0..rows.len()).map(|i| adj[p][i] * sub[i][fc] as i128).sum())
                    .collect()
            })
            .collect();
        let tail_nonneg = coupling
            .iter()
            .map(|row: &Vec<i128>| {
                (0..free.len()).map(|k| row[k + 1..].iter().all(|&v| v >= 0)).collect()
            })
            .collect();
        let columns: Vec<Vec<i64>> = (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect();
        let functional = positive_functional(&columns, a.len()).map(|y| {
            let y: Vec<i128> = y.iter().map(small).collect();
            let u = columns
                .iter()
                .map(|c| c.iter().zip(&y).map(|(&v, w)| v as i128 * w).sum())
                .collect();
            (y, u)
        });
        if functional.is_none() && upper.is_none() {
            return Err(LatticeError::Unbounded);
        }
        Ok(Self {
            a: a.to_vec(),
            cols,
            rows,
            other_rows,
            pivots,
            free,
            det: small(&d),
            adj,
            coupling,
            tail_nonneg,
            functional,
            upper,
        })
    }

    pub fn dim(&self) -> usize {
        self.cols
    }

    /// Number of free parameters after elimination.
    pub fn free_len(&self) -> usize {
        self.free.len()
    }

    /// Calls `visit` on every lattice point, in lexicographic order of the free coordinates.
    pub fn for_each(&self, b: &[i64], mut visit: impl FnMut(&[i64])) {
        assert_eq!(b.len(), self.a.len(), "right-hand side length");
        let budget = match &self.functional {
            Some((y, _)) => {
                let v: i128 = y.iter().zip(b).map(|(w, &bi)| w * bi as i128).sum();
                if v < 0 {
                    return;
                }
                Some(v)
            }
            None => None,
        };
        let base: Vec<i128> = (0..self.pivots.len())
            .map(|p| (0..self.rows.len()).map(|i| self.adj[p][i] * b[self.rows[i]] as i128).sum())
            .collect();
        let mut z = vec![0i64; self.cols];
        let mut num = base;
        self.rec(0, b, budget, &mut num, &mut z, &mut visit);
    }

    fn rec(
        &self,
        k: usize,
        b: &[i64],
        budget: Option<i128>,
        num: &mut Vec<i128>,
        z: &mut Vec<i64>,
        visit: &mut impl FnMut(&[i64]),
    ) {
        if k == self.free.len() {
            for (p, &col) in self.pivots.iter().enumerate() {
                if num[p] < 0 || num[p] % self.det != 0 {
                    return;
                }
                let v = num[p] / self.det;
                if let Some(u) = &self.upper {
                    if v > u[col] as i128 {
                        return;
                    }
                }
                z[col] = v as i64;
            }
            for &r in &self.other_rows {
                let lhs: i64 = self.a[r].iter().zip(z.iter()).map(|(x, y)| x * y).sum();
                if lhs != b[r] {
                    return;
                }
            }
            visit(z);
            return;
        }
        let col = self.free[k];
        let mut lo: i128 = 0;
        let mut hi: i128 = i128::MAX;
        if let (Some(rem), Some((_, u))) = (budget, &self.functional) {
            hi = hi.min(rem / u[col]);
        }
        if let Some(u) = &self.upper {
            hi = hi.min(u[col] as i128);
        }
        for p in 0..self.pivots.len() {
            if !self.tail_nonneg[p][k] {
                continue;
            }
            let c = self.coupling[p][k];
            if c > 0 {
                if num[p] < 0 {
                    return;
                }
                hi = hi.min(num[p] / c);
            } else if num[p] < 0 {
                if c == 0 {
                    return;
                }
                lo = lo.max((-num[p] + (-c) - 1) / (-c));
            }
        }
        if hi == i128::MAX {
            panic!("free coordinate {col} has no bound");
        }
        let mut t = lo;
        while t <= hi {
            for p in 0..self.pivots.len() {
                num[p] -= self.coupling[p][k] * t;
            }
            z[col] = t as i64;
            let rem = match (budget, &self.functional) {
                (Some(r), Some((_, u))) => Some(r - u[col] * t),
                _ => None,
            };
            self.rec(k + 1, b, rem, num, z, visit);
            for p in 0..self.pivots.len() {
                num[p] += self.coupling[p][k] * t;
            }
            t += 1;
        }
        z[col] = 0;
    }

    pub fn points(&self, b: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.for_each(b, |z| out.push(z.to_vec()));
        out
    }

    pub fn count(&self, b: &[i64]) -> u64 {
        let mut n = 0u64;
        self.for_each(b, |_| n += 1);
        n
    }
}

/// All lattice points of the query.
pub fn lattice_points(q: &AffineLatticePolytopeQuery) -> Result<Vec<Vec<i64>>, LatticeError> {
    if q.b.len() != q.a.len() {
        return Err(LatticeError::DimensionMismatch("right-hand side length".into()));
    }
    Ok(Scanner::new(&q.a, q.upper.clone())?.points(&q.b))
}

fn require_bounded(x: &VectorConfiguration) -> Result<(), LatticeError> {
    if !x.is_pointed() {
        return Err(LatticeError::NotPointed);
    }
    if !x.has_bounded_fibers() {
        return Err(LatticeError::Unbounded);
    }
    Ok(())
}

/// `|P_X(c) ∩ Z^m|`.
pub fn vector_partition(x: &VectorConfiguration, c: &[i64]) -> Result<Count, LatticeError> {
    require_bounded(x)?;
    if c.len() != x.dim() {
        return Err(LatticeError::DimensionMismatch("c length".into()));
    }
    Ok(Count::from(Scanner::new(x.rows(), None)?.count(c)))
}

/// `Σ_{z ∈ P_X(c)} |Q(z) ∩ Z^k|`.
pub fn weighted_partition(
    x: &VectorConfiguration,
    spec: &ParametricPolytopeSpec,
    c: &[i64],
) -> Result<Count, LatticeError> {
    WeightedCounter::new(x, spec)?.direct(c)
}

/// Block matrix `[[X, 0], [d_1..d_m, -C]]` with right-hand side `(c, -e)`.
pub fn lift(
    x: &VectorConfiguration,
    spec: &ParametricPolytopeSpec,
    c: &[i64],
) -> Result<(VectorConfiguration, Vec<i64>), LatticeError> {
    spec.validate(x.len())?;
    if c.len() != x.dim() {
        return Err(LatticeError::DimensionMismatch("c length".into()));
    }
    let (m, k) = (x.len(), spec.k());
    let mut rows = Vec::with_capacity(x.dim() + spec.r());
    for row in x.rows() {
        let mut r = row.clone();
        r.extend(std::iter::repeat(0).take(k));
        rows.push(r);
    }
    for i in 0..spec.r() {
        let mut r: Vec<i64> = (0..m).map(|j| spec.d[j][i]).collect();
        r.extend(spec.c[i].iter().map(|v| -v));
        rows.push(r);
    }
    let mut rhs = c.to_vec();
    rhs.extend(spec.e.iter().map(|v| -v));
    Ok((VectorConfiguration { rows }, rhs))
}

/// Direct and lifted evaluation of a weighted partition function with all
/// elimination data prepared once.
#[derive(Debug, Clone)]
pub struct WeightedCounter {
    x: VectorConfiguration,
    spec: ParametricPolytopeSpec,
    outer: Scanner,
    inner: Scanner,
    lifted: Scanner,
}

impl WeightedCounter {
    pub fn new(x: &VectorConfiguration, spec: &ParametricPolytopeSpec) -> Result<Self, LatticeError> {
        require_bounded(x)?;
        spec.validate(x.len())?;
        let zero = vec![0; x.dim()];
        let (lx, _) = lift(x, spec, &zero)?;
        Ok(Self {
            outer: Scanner::new(x.rows(), None)?,
            inner: Scanner::new(&spec.c, None)?,
            lifted: Scanner::new(lx.rows(), None)?,
            x: x.clone(),
            spec: spec.clone(),
        })
    }

    pub fn direct(&self, c: &[i64]) -> Result<Count, LatticeError> {
        if c.len() != self.x.dim() {
            return Err(LatticeError::DimensionMismatch("c length".into()));
        }
        let mut total = 0u64;
        self.outer.for_each(c, |z| {
            total += self.inner.count(&self.spec.rhs(z));
        });
        Ok(Count::from(total))
    }

    pub fn lifted(&self, c: &[i64]) -> Result<Count, LatticeError> {
        if c.len() != self.x.dim() {
            return Err(LatticeError::DimensionMismatch("c length".into()));
        }
        let mut rhs = c.to_vec();
        rhs.extend(self.spec.e.iter().map(|v| -v));
        Ok(Count::from(self.lifted.count(&rhs)))
    }
}

/// `A_G w = k` with `w >= 0`; with `strict`, the unknown is `w - 1 >= 0`.
pub fn flow_system(t: &FloorTemplate, divergences: &[i64], strict: bool) -> AffineLatticePolytopeQuery {
    let a = t.adjacency_matrix();
    let b = if strict {
        a.iter()
            .zip(divergences)
            .map(|(row, &k)| k - row.iter().sum::<i64>())
            .collect()
    } else {
        divergences.to_vec()
    };
    AffineLatticePolytopeQuery { a, b, upper: None }
}

/// Strictly positive flows with the prescribed divergences.
pub fn positive_flows(t: &FloorTemplate, divergences: &[i64]) -> Vec<Vec<i64>> {
    let q = flow_system(t, divergences, true);
    let scanner = Scanner::new(&q.a, None).expect("incidence matrices of ordered graphs are pointed");
    let mut out = Vec::new();
    scanner.for_each(&q.b, |w| out.push(w.iter().map(|v| v + 1).collect()));
    out
}

/// The integer value of a rational, if integral.
pub fn integral(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Vertex;

    fn cfg(rows: Vec<Vec<i64>>) -> VectorConfiguration {
        VectorConfiguration::from_rows(rows).unwrap()
    }

    #[test]
    fn basic_properties() {
        let id = cfg(vec![vec![1, 0], vec![0, 1]]);
        assert!(id.is_pointed() && id.is_unimodular());
        assert_eq!(id.rank(), 2);
        assert!(!cfg(vec![vec![1, -1]]).is_pointed());
        assert!(id.in_cone(&[2, 3]));
        assert!(!id.in_cone(&[-1, 3]));
    }

    #[test]
    fn compositions() {
        let x = cfg(vec![vec![1, 1]]);
        let pts = lattice_points(&x.polytope(&[2])).unwrap();
        assert_eq!(pts, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        for n in 0..10 {
            assert_eq!(vector_partition(&x, &[n]).unwrap(), Count::from(n + 1));
        }
        let one = cfg(vec![vec![1]]);
        assert_eq!(vector_partition(&one, &[4]).unwrap(), Count::from(1));
        assert_eq!(vector_partition(&one, &[-4]).unwrap(), Count::from(0));
        assert_eq!(vector_partition(&cfg(vec![vec![1, -1]]), &[0]), Err(LatticeError::NotPointed));
    }

    #[test]
    fn explicit_bounds() {
        let q = AffineLatticePolytopeQuery { a: vec![vec![1, -1]], b: vec![0], upper: Some(vec![3, 3]) };
        assert_eq!(lattice_points(&q).unwrap().len(), 4);
        let q = AffineLatticePolytopeQuery { upper: None, ..q };
        assert_eq!(lattice_points(&q), Err(LatticeError::Unbounded));
    }

    #[test]
    fn pi_x_weights() {
        let spec = pi_x_spec(2);
        let count = |z: &[i64]| lattice_points(&spec.query(z)).unwrap().len();
        assert_eq!(count(&[3, 5]), 1);
        assert_eq!(count(&[3, 4]), 0);
        assert_eq!(count(&[0, 1]), 0);
        let x = cfg(vec![vec![1, 0, 1], vec![0, 1, 1]]);
        let (lx, lc) = lift(&x, &spec_for(&x), &[3, 4]).unwrap();
        assert!(lx.is_pointed());
        assert_eq!(lx.dim(), 5);
        assert_eq!(lc, vec![3, 4, 1, 1, 1]);
    }

    fn spec_for(x: &VectorConfiguration) -> ParametricPolytopeSpec {
        pi_x_spec(x.len())
    }

    #[test]
    fn pi_y_layout() {
        // E = {0,1}, Y = {1}: d + m + r - k rows
        let spec = pi_y_spec(3, &[0, 1], &[1]).unwrap();
        assert_eq!(spec.r(), 3 + 1);
        assert_eq!(spec.k(), 3 + 2 + 1);
        let w = |z: &[i64]| lattice_points(&spec.query(z)).unwrap().len() as i64;
        assert_eq!(w(&[3, 4, 5]), 12);
        assert_eq!(w(&[2, 4, 5]), 0);
        assert_eq!(w(&[3, 4, 6]), 0);
        assert!(pi_y_spec(3, &[0], &[1]).is_err());
    }

    #[test]
    fn trivial_lift_is_identity() {
        let x = cfg(vec![vec![1, 2], vec![0, 1]]);
        let (lx, lc) = lift(&x, &ParametricPolytopeSpec::trivial(2), &[4, 1]).unwrap();
        assert_eq!((lx, lc), (x.clone(), vec![4, 1]));
        let c = WeightedCounter::new(&x, &ParametricPolytopeSpec::trivial(2)).unwrap();
        assert_eq!(c.direct(&[4, 1]).unwrap(), vector_partition(&x, &[4, 1]).unwrap());
    }

    #[test]
    fn weighted_direct_equals_lifted() {
        let x = cfg(vec![vec![1, 1, 0, 2], vec![0, 1, 1, 1]]);
        for spec in [pi_x_spec(4), pi_y_spec(4, &[0, 2, 3], &[3]).unwrap()] {
            let wc = WeightedCounter::new(&x, &spec).unwrap();
            for c0 in -2..8 {
                for c1 in -2..8 {
                    assert_eq!(wc.direct(&[c0, c1]).unwrap(), wc.lifted(&[c0, c1]).unwrap());
                }
            }
        }
    }

    #[test]
    fn flows() {
        let t = FloorTemplate::new(vec![Vertex::BLACK, Vertex::BLACK], vec![(0, 1)], 0).unwrap();
        assert_eq!(positive_flows(&t, &[3, -3]), vec![vec![3]]);
        let q = flow_system(&t, &[3, -3], false);
        assert_eq!(q.a, vec![vec![1], vec![-1]]);
        let t2 = FloorTemplate::new(vec![Vertex::BLACK, Vertex::BLACK], vec![(0, 1), (0, 1)], 1).unwrap();
        assert_eq!(positive_flows(&t2, &[4, -4]).len(), 3);
        let a = t2.adjacency_matrix();
        assert_eq!(t2.edges().len() - linalg::rank_int(&a), t2.genus());
        assert!(positive_flows(&t2, &[5, -4]).is_empty());
    }
}
