//! Exact two-phase simplex with Bland's rule.

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<F> {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<F>, value: F },
}

struct Tableau<F> {
    rows: Vec<Vec<F>>, // last column is the right-hand side
    basis: Vec<usize>,
}

impl<F: Field> Tableau<F> {
    fn width(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len() - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = F::one() / self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj · x` over columns `< limit`; `false` when unbounded.
    fn run(&mut self, obj: &[F], limit: usize) -> bool {
        let rhs = self.width();
        loop {
            let mut entering = None;
            for j in 0..limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    rc = rc - obj[b].clone() * self.rows[i][j].clone();
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return true };
            let mut best: Option<(usize, F)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rows[i][rhs].clone() / a.clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, j);
        }
    }

    fn solution(&self, n: usize) -> Vec<F> {
        let rhs = self.width();
        let mut x = vec![F::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[i][rhs].clone();
            }
        }
        x
    }
}

/// Maximizes `c · x` subject to `A x = b`, `x >= 0`.
pub fn maximize<F: Field>(a: &[Vec<F>], b: &[F], c: &[F]) -> LpOutcome<F> {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<F> = a[i]
            .iter()
            .map(|v| if neg { -v.clone() } else { v.clone() })
            .collect();
        for k in 0..m {
            row.push(if k == i { F::one() } else { F::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect() };
    let mut obj1 = vec![F::zero(); n + m];
    for o in obj1.iter_mut().skip(n) {
        *o = -F::one();
    }
    t.run(&obj1, n + m);
    let rhs = n + m;
    let infeas: F = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bcol)| bcol >= n)
        .fold(F::zero(), |acc, (i, _)| acc + t.rows[i][rhs].clone());
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive artificial columns out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for row in t.rows.iter_mut() {
        let last = row[rhs].clone();
        row.truncate(n);
        row.push(last);
    }
    if !t.run(c, n) {
        return LpOutcome::Unbounded;
    }
    let x = t.solution(n);
    let value = x.iter().zip(c).fold(F::zero(), |acc, (xi, ci)| acc + xi.clone() * ci.clone());
    LpOutcome::Optimal { x, value }
}

/// Some `x >= 0` with `A x = b`.
pub fn feasible_point<F: Field>(a: &[Vec<F>], b: &[F], n: usize) -> Option<Vec<F>> {
    match maximize(a, b, &vec![F::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Some `y` (free sign) with `y · col >= 1` for every column of `cols`.
pub fn strictly_positive_functional<F: Field>(cols: &[Vec<F>], dim: usize) -> Option<Vec<F>> {
    // y = y+ - y-, slack s: col·y+ - col·y- - s = 1
    let m = cols.len();
    let n = 2 * dim + m;
    let mut a = Vec::with_capacity(m);
    for (i, col) in cols.iter().enumerate() {
        let mut row = vec![F::zero(); n];
        for k in 0..dim {
            row[k] = col[k].clone();
            row[dim + k] = -col[k].clone();
        }
        row[2 * dim + i] = -F::one();
        a.push(row);
    }
    let x = feasible_point(&a, &vec![F::one(); m], n)?;
    Some((0..dim).map(|k| x[k].clone() - x[dim + k].clone()).collect())
}
