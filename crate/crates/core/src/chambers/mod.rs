//! Hyperplane arrangements, chamber location and quasipolynomial fitting.

pub mod piecewise;
mod poly;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::linalg::rref;
use crate::scalar::Field;

pub use piecewise::{Entry, FitConfig, StratumFit, Study, StudyError, SymbolicSides};
pub use poly::{parity_coset, Polynomial, Quasipolynomial};

#[derive(Debug, Error, PartialEq)]
pub enum ChamberError {
    #[error("point lies on hyperplane {index} ({form})")]
    OnHyperplane { index: usize, form: String },
    #[error("point has {got} coordinates, arrangement has {want}")]
    Dimension { got: usize, want: usize },
}

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("coset {coset}: {have} sample points, need at least {need}")]
    InsufficientSample { coset: String, have: usize, need: usize },
    #[error("coset {coset}: fit gives {got} at {point:?}, evaluator gives {expected}")]
    HoldoutMismatch { coset: String, point: Vec<i64>, expected: String, got: String },
    #[error("evaluator failed at {point:?}: {message}")]
    Evaluator { point: Vec<i64>, message: String },
}

/// Integer affine functional `coeffs·v + constant`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Functional {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl Functional {
    pub fn new(coeffs: Vec<i64>, constant: i64) -> Self {
        Self { coeffs, constant }
    }

    pub fn eval(&self, v: &[i64]) -> i64 {
        self.coeffs.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() + self.constant
    }

    /// Primitive, first nonzero linear coefficient positive; `None` for a constant.
    pub fn normalized(&self) -> Option<Self> {
        let lead = *self.coeffs.iter().find(|&&c| c != 0)?;
        let g = self.coeffs.iter().fold(self.constant.abs(), |g, &c| gcd(g, c.abs()));
        let s = if lead < 0 { -g } else { g };
        Some(Self::new(self.coeffs.iter().map(|c| c / s).collect(), self.constant / s))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant == 0
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        let p = Polynomial::<crate::Rational>::linear(&self.coeffs, self.constant);
        format!("{}", p.display(names))
    }
}

/// Sign vector of a point off every hyperplane, one of `+`/`-` per functional.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChamberSignature(pub String);

impl fmt::Display for ChamberSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneArrangement {
    vars: Vec<String>,
    functionals: Vec<Functional>,
    raw_count: usize,
}

impl HyperplaneArrangement {
    /// Normalizes, drops constants and removes duplicates (first occurrence wins).
    pub fn new(vars: Vec<String>, raw: Vec<Functional>) -> Self {
        let raw_count = raw.len();
        let mut seen = BTreeSet::new();
        let mut functionals = Vec::new();
        for f in raw {
            assert_eq!(f.coeffs.len(), vars.len(), "functional length");
            if let Some(n) = f.normalized() {
                if seen.insert(n.clone()) {
                    functionals.push(n);
                }
            }
        }
        Self { vars, functionals, raw_count }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn functionals(&self) -> &[Functional] {
        &self.functionals
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    /// Number of functionals before normalization and deduplication.
    pub fn raw_count(&self) -> usize {
        self.raw_count
    }

    pub fn contains(&self, f: &Functional) -> bool {
        f.normalized().is_some_and(|n| self.functionals.contains(&n))
    }

    /// Pull back along `old_i = images[i](new)`.
    pub fn restrict(&self, vars: Vec<String>, images: &[Functional]) -> Self {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let n = vars.len();
        let raw = self
            .functionals
            .iter()
            .map(|f| {
                let mut coeffs = vec![0; n];
                let mut constant = f.constant;
                for (a, img) in f.coeffs.iter().zip(images) {
                    for (c, b) in coeffs.iter_mut().zip(&img.coeffs) {
                        *c += a * b;
                    }
                    constant += a * img.constant;
                }
                Functional::new(coeffs, constant)
            })
            .collect();
        let mut out = Self::new(vars, raw);
        out.raw_count = self.raw_count;
        out
    }

    /// Restrict to the hyperplane `relation = 0`, eliminating variable `j`
    /// (which must have coefficient ±1). Coordinates are kept; walls that
    /// agree on the hyperplane merge and the relation itself disappears.
    pub fn on_hyperplane(&self, relation: &Functional, j: usize) -> Self {
        let r = relation.coeffs[j];
        assert!(r.abs() == 1, "eliminated variable needs a unit coefficient");
        let raw = self
            .functionals
            .iter()
            .map(|f| {
                let m = f.coeffs[j] * r;
                Functional::new(
                    f.coeffs.iter().zip(&relation.coeffs).map(|(a, b)| a - m * b).collect(),
                    f.constant - m * relation.constant,
                )
            })
            .collect();
        let mut out = Self::new(self.vars.clone(), raw);
        out.raw_count = self.raw_count;
        out
    }

    fn check(&self, p: &[i64]) -> Result<(), ChamberError> {
        if p.len() != self.vars.len() {
            return Err(ChamberError::Dimension { got: p.len(), want: self.vars.len() });
        }
        Ok(())
    }

    pub fn locate(&self, p: &[i64]) -> Result<ChamberSignature, ChamberError> {
        self.check(p)?;
        let mut s = String::with_capacity(self.len());
        for (index, f) in self.functionals.iter().enumerate() {
            match f.eval(p).signum() {
                1 => s.push('+'),
                -1 => s.push('-'),
                _ => return Err(ChamberError::OnHyperplane { index, form: f.display(&self.vars).to_string() }),
            }
        }
        Ok(ChamberSignature(s))
    }

    /// Like [`locate`](Self::locate) but records `0` on walls, naming the stratum.
    pub fn stratum(&self, p: &[i64]) -> Result<String, ChamberError> {
        self.check(p)?;
        Ok(self
            .functionals
            .iter()
            .map(|f| match f.eval(p).signum() {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect())
    }
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

fn ranges(d: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &di in d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=di).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn diagonals(n: usize, offset: usize, width: usize) -> Vec<Functional> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut c = vec![0; width];
            c[offset + i] = 1;
            c[offset + j] = -1;
            out.push(Functional::new(c, 0));
        }
    }
    out
}

/// Groups of variables, each entering a subset sum with a common factor.
fn subset_sum_arrangement(groups: &[(&str, usize, i64)], d_r: &[i64], d_l: &[i64]) -> (Vec<String>, Vec<Functional>) {
    let mut vars: Vec<String> = groups.iter().flat_map(|&(p, n, _)| names(p, n)).collect();
    let free = vars.len();
    vars.extend(names("cr", d_r.len()));
    vars.extend(names("cl", d_l.len()));
    let factors: Vec<i64> = groups.iter().flat_map(|&(_, n, f)| std::iter::repeat(f).take(n)).collect();
    let qs = ranges(d_r);
    let ps = ranges(d_l);
    let mut raw = Vec::new();
    for s in subsets(free) {
        for q in &qs {
            for p in &ps {
                let mut c: Vec<i64> = s.iter().zip(&factors).map(|(&b, &f)| if b { f } else { 0 }).collect();
                c.extend(q.iter());
                c.extend(p.iter().map(|t| -t));
                raw.push(Functional::new(c, 0));
            }
        }
    }
    (vars, raw)
}

/// Walls of the totally real map over `(x, y, c^r, c^l)` with `c` symbolic.
pub fn build_h(n1: usize, n2: usize, d_r: &[i64], d_l: &[i64]) -> HyperplaneArrangement {
    let (vars, mut raw) = subset_sum_arrangement(&[("x", n1, 1), ("y", n2, 1)], d_r, d_l);
    raw.extend(diagonals(n2, n1, vars.len()));
    HyperplaneArrangement::new(vars, raw)
}

/// Walls of the s-real map over `(x, z, y, w, c^r, c^l)` with `c` symbolic.
pub fn build_k(m1: usize, m3: usize, n2: usize, d_r: &[i64], d_l: &[i64]) -> HyperplaneArrangement {
    let nw = n2 / 2;
    let (vars, mut raw) = subset_sum_arrangement(&[("x", m1, 1), ("z", m3, 2), ("y", n2, 1), ("w", nw, 2)], d_r, d_l);
    raw.extend(diagonals(n2, m1 + m3, vars.len()));
    raw.extend(diagonals(nw, m1 + m3 + n2, vars.len()));
    HyperplaneArrangement::new(vars, raw)
}

/// Every nonempty proper subset sum of the given vertex forms.
pub fn discriminant_arrangement(vars: Vec<String>, vertex_forms: &[Functional]) -> HyperplaneArrangement {
    let n = vertex_forms.len();
    let raw = subsets(n)
        .filter(|s| s.iter().any(|&b| b) && !s.iter().all(|&b| b))
        .map(|s| {
            let mut f = Functional::new(vec![0; vars.len()], 0);
            for (v, _) in vertex_forms.iter().zip(&s).filter(|(_, &b)| b) {
                for (a, b) in f.coeffs.iter_mut().zip(&v.coeffs) {
                    *a += b;
                }
                f.constant += v.constant;
            }
            f
        })
        .collect();
    HyperplaneArrangement::new(vars, raw)
}

/// Points on a wall of `coarse` that lie on no wall of `fine`.
pub fn refinement_violations(fine: &HyperplaneArrangement, coarse: &HyperplaneArrangement, points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    points
        .iter()
        .filter(|p| coarse.functionals.iter().any(|f| f.eval(p) == 0))
        .filter(|p| fine.functionals.iter().all(|f| f.eval(p) != 0))
        .cloned()
        .collect()
}

/// All integer points of `[-radius, radius]^dim`, lexicographic.
pub fn box_points(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-radius..=radius).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn random_points(dim: usize, radius: i64, n: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (0..dim).map(|_| rng.gen_range(-radius..=radius)).collect()).collect()
}

/// Candidates grouped by chamber; points on walls are skipped.
pub fn chambers_of(arr: &HyperplaneArrangement, points: &[Vec<i64>]) -> BTreeMap<ChamberSignature, Vec<Vec<i64>>> {
    let mut out: BTreeMap<ChamberSignature, Vec<Vec<i64>>> = BTreeMap::new();
    for p in points {
        if let Ok(s) = arr.locate(p) {
            out.entry(s).or_default().push(p.clone());
        }
    }
    out
}

/// Exponent vectors of degree at most `degree`, by degree then lexicographic.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=degree {
        rec(nvars, d, &mut Vec::new(), &mut out);
    }
    out
}

fn monomial_value<F: Field>(e: &[u32], p: &[i64]) -> F {
    e.iter().zip(p).fold(F::one(), |acc, (&k, &v)| {
        let mut t = acc;
        for _ in 0..k {
            t = t * F::from_i64(v);
        }
        t
    })
}

/// Exact interpolation on one coset; low-degree monomials are preferred so
/// relations among the points never raise the degree.
pub fn fit_polynomial<F: Field>(
    coset: &str,
    samples: &[(Vec<i64>, F)],
    degree_bound: u32,
    min_holdout: usize,
) -> Result<Polynomial<F>, FitError> {
    let nvars = samples.first().map_or(0, |s| s.0.len());
    let monos = monomials(nvars, degree_bound);
    let rows: Vec<Vec<F>> = samples.iter().map(|(p, _)| monos.iter().map(|e| monomial_value(e, p)).collect()).collect();
    // independent monomials
    let mut m = rows.clone();
    let cols = rref(&mut m);
    // greedy independent rows over those monomials
    let mut train: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<F>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if train.len() == cols.len() {
            break;
        }
        let r: Vec<F> = cols.iter().map(|&c| row[c].clone()).collect();
        let mut trial = basis.clone();
        trial.push(r.clone());
        if rref(&mut trial).len() > basis.len() {
            basis.push(r);
            train.push(i);
        }
    }
    let need = train.len() + min_holdout;
    if samples.len() < need || samples.is_empty() {
        return Err(FitError::InsufficientSample { coset: coset.into(), have: samples.len(), need: need.max(1) });
    }
    // augmented system [basis | values]
    let mut aug: Vec<Vec<F>> = train
        .iter()
        .zip(&basis)
        .map(|(&i, r)| {
            let mut r = r.clone();
            r.push(samples[i].1.clone());
            r
        })
        .collect();
    rref(&mut aug);
    let k = cols.len();
    let poly = Polynomial::from_terms(nvars, cols.iter().enumerate().map(|(j, &c)| (monos[c].clone(), aug[j][k].clone())));
    let chosen: BTreeSet<usize> = train.into_iter().collect();
    for (i, (p, v)) in samples.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let got = poly.eval_int(p);
        if &got != v {
            return Err(FitError::HoldoutMismatch {
                coset: coset.into(),
                point: p.clone(),
                expected: v.to_string(),
                got: got.to_string(),
            });
        }
    }
    Ok(poly)
}

/// Evaluates in parallel, splits by parity coset and fits each coset.
/// Cosets whose values all vanish get no piece.
pub fn fit_quasipolynomial<F, E, Ev>(
    evaluator: Ev,
    sample: &[Vec<i64>],
    degree_bound: u32,
    min_holdout: usize,
) -> Result<Quasipolynomial<F>, FitError>
where
    F: Field,
    E: fmt::Display,
    Ev: Fn(&[i64]) -> Result<F, E> + Sync,
{
    let values: Vec<F> = sample
        .par_iter()
        .map(|p| evaluator(p).map_err(|e| FitError::Evaluator { point: p.clone(), message: e.to_string() }))
        .collect::<Result<_, _>>()?;
    let nvars = sample.first().map_or(0, Vec::len);
    let mut by_coset: BTreeMap<String, Vec<(Vec<i64>, F)>> = BTreeMap::new();
    for (p, v) in sample.iter().zip(values) {
        by_coset.entry(parity_coset(p)).or_default().push((p.clone(), v));
    }
    let mut qp = Quasipolynomial::new(nvars);
    for (coset, pts) in by_coset {
        if pts.iter().all(|(_, v)| v.is_zero()) {
            continue;
        }
        let p = fit_polynomial(&coset, &pts, degree_bound, min_holdout)?;
        qp.set(coset, p);
    }
    Ok(qp)
}

/// Every nonzero piece has total degree exactly `g`.
pub fn verify_degree<F: Field>(qp: &Quasipolynomial<F>, g: u32) -> bool {
    qp.pieces().values().all(|p| p.total_degree().is_none_or(|d| d == g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn f(c: &[i64], k: i64) -> Functional {
        Functional::new(c.to_vec(), k)
    }

    /// Variables (x1, y1, y2, k) with c^r = (k, 0), c^l = (0).
    fn worked_h() -> HyperplaneArrangement {
        let h = build_h(1, 2, &[1, 1], &[2]);
        let vars: Vec<String> = ["x1", "y1", "y2", "k"].iter().map(|s| s.to_string()).collect();
        let id = |i: usize| {
            let mut c = vec![0; 4];
            c[i] = 1;
            f(&c, 0)
        };
        h.restrict(vars, &[id(0), id(1), id(2), id(3), f(&[0; 4], 0), f(&[0; 4], 0)])
            .on_hyperplane(&f(&[1, 1, 1, 1], 0), 0)
    }

    #[test]
    fn h_counts_and_walls() {
        let h = build_h(1, 2, &[1, 1], &[2]);
        assert_eq!(h.raw_count(), 2 * 4 * 2 * 2 * 3 + 1);
        let w = worked_h();
        // x1 and x1 + k appear as y1 + y2 + k and y1 + y2 on the lattice
        for c in [[0, 1, 1, 1], [0, 1, 1, 0], [0, 1, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 1, 1], [0, 1, -1, 0]] {
            assert!(w.contains(&f(&c, 0)), "{c:?}");
        }
        let empty = build_h(0, 0, &[1], &[1]);
        assert!(empty.functionals().iter().all(|g| g.coeffs[..0].is_empty()));
        assert_eq!(empty.vars(), ["cr1", "cl1"]);
    }

    #[test]
    fn k_contains_diagonals_and_reduces_to_h() {
        let k = build_k(1, 0, 2, &[1], &[1]);
        assert!(k.contains(&f(&[0, 1, -1, 0, 0, 0], 0)));
        assert!(k.contains(&f(&[0, 0, 0, 2, 1, 0], 0)));
        let h = build_h(1, 2, &[1], &[1]);
        let plain = build_k(1, 0, 2, &[1], &[1]);
        let ids: Vec<Functional> = (0..5)
            .map(|i| {
                let mut c = vec![0; 5];
                c[i] = 1;
                f(&c, 0)
            })
            .collect();
        let drop_w = vec![ids[0].clone(), ids[1].clone(), ids[2].clone(), f(&[0; 5], 0), ids[3].clone(), ids[4].clone()];
        let restricted = plain.restrict(h.vars().to_vec(), &drop_w);
        let a: BTreeSet<_> = restricted.functionals().iter().cloned().collect();
        let b: BTreeSet<_> = h.functionals().iter().cloned().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn locate_signs() {
        let w = worked_h();
        let sig = w.locate(&[-1, -3, -3, 7]);
        assert!(matches!(sig, Err(ChamberError::OnHyperplane { .. })));
        let sig = w.locate(&[-1, -5, -1, 7]).unwrap();
        // x1 = -1 < 0 and x1 + k = 6 > 0
        let i0 = w.functionals().iter().position(|g| g == &f(&[0, 1, 1, 1], 0)).unwrap();
        let i1 = w.functionals().iter().position(|g| g == &f(&[0, 1, 1, 0], 0)).unwrap();
        assert_eq!(sig.0.as_bytes()[i0], b'+');
        assert_eq!(sig.0.as_bytes()[i1], b'-');
        assert_eq!(w.stratum(&[-1, -3, -3, 7]).unwrap().matches('0').count(), 1);
    }

    #[test]
    fn scaling_keeps_homogeneous_signature() {
        let w = worked_h();
        for p in random_points(4, 9, 200, 3) {
            if let Ok(s) = w.locate(&p) {
                let q: Vec<i64> = p.iter().map(|v| v * 3).collect();
                assert_eq!(w.locate(&q).unwrap(), s);
            }
        }
    }

    #[test]
    fn fits_affine_on_odd_coset() {
        let target = |p: &[i64]| -> Result<Rational, String> {
            if p.iter().all(|v| v.rem_euclid(2) == 1) {
                Ok(Rational::from_integer((p[0] - 5 * p[1] + 5 * p[2] + p[3] + 11).into()))
            } else {
                Ok(Rational::from_integer(0.into()))
            }
        };
        let pts: Vec<Vec<i64>> = box_points(3, 4)
            .into_iter()
            .map(|mut v| {
                v.insert(0, -v[0] - v[1] - v[2]);
                v
            })
            .collect();
        let qp = fit_quasipolynomial(target, &pts, 2, 10).unwrap();
        assert_eq!(qp.pieces().len(), 1);
        let piece = qp.piece("1111").unwrap();
        assert_eq!(piece.total_degree(), Some(1));
        assert!(verify_degree(&qp, 1));
        for p in &pts {
            assert_eq!(qp.eval_int(p), target(p).unwrap());
        }
    }

    #[test]
    fn holdout_detects_piecewise_input() {
        let abs = |p: &[i64]| -> Result<Rational, String> { Ok(Rational::from_integer(p[0].abs().into())) };
        let pts: Vec<Vec<i64>> = (-20..=20).step_by(2).map(|v| vec![v]).collect();
        assert!(matches!(fit_quasipolynomial(abs, &pts, 1, 5), Err(FitError::HoldoutMismatch { .. })));
        let few: Vec<Vec<i64>> = vec![vec![2], vec![4]];
        assert!(matches!(fit_quasipolynomial(abs, &few, 1, 5), Err(FitError::InsufficientSample { .. })));
    }

    #[test]
    fn zero_map_is_vacuously_of_any_degree() {
        let qp = fit_quasipolynomial(|_: &[i64]| Ok::<_, String>(Rational::from_integer(0.into())), &box_points(2, 3), 2, 3).unwrap();
        assert!(qp.pieces().is_empty());
        assert!(verify_degree(&qp, 1));
    }

    #[test]
    fn discriminant_walls_are_h_walls() {
        // white x1, y1, y2 and blacks k - 0, 0 - 0 over (x1, y1, y2, k)
        let vars: Vec<String> = ["x1", "y1", "y2", "k"].iter().map(|s| s.to_string()).collect();
        let verts = [f(&[1, 0, 0, 0], 0), f(&[0, 1, 0, 0], 0), f(&[0, 0, 1, 0], 0), f(&[0, 0, 0, 1], 0), f(&[0; 4], 0)];
        let s = discriminant_arrangement(vars, &verts).on_hyperplane(&f(&[1, 1, 1, 1], 0), 0);
        let pts: Vec<Vec<i64>> = box_points(3, 6)
            .into_iter()
            .map(|mut v| {
                v.insert(0, -v[0] - v[1] - v[2]);
                v
            })
            .collect();
        let bad = refinement_violations(&worked_h(), &s, &pts);
        assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
    }

    #[test]
    fn monomial_order() {
        let m = monomials(2, 2);
        assert_eq!(m, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}
