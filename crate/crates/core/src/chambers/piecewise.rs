//! Sampling a `G` map over a box and fitting it stratum by stratum.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{build_k, fit_quasipolynomial, FitError, Functional, HyperplaneArrangement, Polynomial, Quasipolynomial};
use crate::diagram::MultiplicityWindow;
use crate::invariants::{g_s_real, InvariantError, Point, TotallyRealLattice};
use crate::polygon::{PolygonError, Sides};
use crate::{Count, Rational};

/// A slope that is either fixed or a named parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Sym(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicSides {
    pub c_r: Vec<Entry>,
    pub c_l: Vec<Entry>,
    pub d_r: Vec<i64>,
    pub d_l: Vec<i64>,
}

impl SymbolicSides {
    /// Parameter names in order of first appearance.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in self.c_r.iter().chain(&self.c_l) {
            if let Entry::Sym(s) = e {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn instantiate(&self, values: &[i64]) -> Result<Sides, PolygonError> {
        let syms = self.symbols();
        let get = |e: &Entry| match e {
            Entry::Int(v) => *v,
            Entry::Sym(s) => values[syms.iter().position(|t| t == s).expect("known symbol")],
        };
        Sides::new(
            self.c_r.iter().map(get).collect(),
            self.c_l.iter().map(get).collect(),
            self.d_r.clone(),
            self.d_l.clone(),
        )
    }

    /// `c` entry as an affine form over the symbols, placed after `offset` leading variables.
    fn entry_form(&self, e: &Entry, offset: usize, width: usize) -> Functional {
        let mut coeffs = vec![0; width];
        match e {
            Entry::Int(v) => Functional::new(coeffs, *v),
            Entry::Sym(s) => {
                coeffs[offset + self.symbols().iter().position(|t| t == s).expect("known symbol")] = 1;
                Functional::new(coeffs, 0)
            }
        }
    }
}

/// Which `G` to sample and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitConfig {
    pub polygon: SymbolicSides,
    pub g: usize,
    #[serde(default)]
    pub s: usize,
    #[serde(default)]
    pub window: MultiplicityWindow,
    /// Lengths of `x`, `z`, `y`, `w`.
    pub n_x: usize,
    #[serde(default)]
    pub n_z: usize,
    pub n_y: usize,
    #[serde(default)]
    pub n_w: usize,
    pub radius: i64,
    /// Values tried for each parameter.
    #[serde(default)]
    pub params: BTreeMap<String, Vec<i64>>,
    pub degree_bound: u32,
    #[serde(default = "default_holdout")]
    pub min_holdout: usize,
    /// Fit on walls too, grouping points by their `+/-/0` stratum.
    #[serde(default)]
    pub strata: bool,
}

fn default_holdout() -> usize {
    10
}

#[derive(Debug, Error)]
pub enum StudyError {
    #[error("parameter {0} has no values")]
    MissingParameter(String),
    #[error("no coordinate can be eliminated from the lattice relation")]
    NoPivot,
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// One stratum: its sign vector, the points seen and the fit (or why it failed).
#[derive(Debug)]
pub struct StratumFit {
    pub signature: String,
    pub points: Vec<Vec<i64>>,
    pub fit: Result<Quasipolynomial<Rational>, FitError>,
}

pub struct Study {
    pub config: FitConfig,
    pub vars: Vec<String>,
    pub arrangement: HyperplaneArrangement,
    /// Index of the coordinate solved from the lattice relation.
    pub pivot: usize,
    relation: Functional,
}

impl Study {
    pub fn new(config: FitConfig) -> Result<Self, StudyError> {
        let syms = config.polygon.symbols();
        for s in &syms {
            if config.params.get(s).is_none_or(Vec::is_empty) {
                return Err(StudyError::MissingParameter(s.clone()));
            }
        }
        let (nx, nz, ny, nw) = (config.n_x, config.n_z, config.n_y, config.n_w);
        let npt = nx + nz + ny + nw;
        let mut vars: Vec<String> = Vec::new();
        for (p, n) in [("x", nx), ("z", nz), ("y", ny), ("w", nw)] {
            vars.extend((1..=n).map(|i| format!("{p}{i}")));
        }
        vars.extend(syms.iter().cloned());
        let width = vars.len();
        let poly = &config.polygon;
        let full = build_k(nx, nz, ny, &poly.d_r, &poly.d_l);
        // build_k puts w diagonals over floor(n_y/2) variables; keep only n_w of them
        let mut images: Vec<Functional> = Vec::new();
        let unit = |i: usize| {
            let mut c = vec![0; width];
            c[i] = 1;
            Functional::new(c, 0)
        };
        for i in 0..nx + nz + ny {
            images.push(unit(i));
        }
        for i in 0..ny / 2 {
            images.push(if i < nw { unit(nx + nz + ny + i) } else { Functional::new(vec![0; width], 0) });
        }
        for e in poly.c_r.iter().chain(&poly.c_l) {
            images.push(poly.entry_form(e, npt, width));
        }
        let mut arrangement = full.restrict(vars.clone(), &images);
        // Σx + 2Σz + Σy + 2Σw + Σ c_r d_r − Σ c_l d_l = 0
        let mut relation = Functional::new(vec![0; width], 0);
        for (i, v) in relation.coeffs.iter_mut().enumerate().take(npt) {
            *v = if (nx..nx + nz).contains(&i) || i >= nx + nz + ny { 2 } else { 1 };
        }
        for (e, d) in poly.c_r.iter().zip(&poly.d_r) {
            let f = poly.entry_form(e, npt, width);
            for (a, b) in relation.coeffs.iter_mut().zip(&f.coeffs) {
                *a += d * b;
            }
            relation.constant += d * f.constant;
        }
        for (e, d) in poly.c_l.iter().zip(&poly.d_l) {
            let f = poly.entry_form(e, npt, width);
            for (a, b) in relation.coeffs.iter_mut().zip(&f.coeffs) {
                *a -= d * b;
            }
            relation.constant -= d * f.constant;
        }
        let pivot = (0..npt).find(|&i| relation.coeffs[i].abs() == 1).ok_or(StudyError::NoPivot)?;
        arrangement = arrangement.on_hyperplane(&relation, pivot);
        Ok(Self { config, vars, arrangement, pivot, relation })
    }

    fn symbol_tuples(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for s in self.config.polygon.symbols() {
            out = out
                .into_iter()
                .flat_map(|t: Vec<i64>| {
                    self.config.params[&s].iter().map(move |&v| {
                        let mut u = t.clone();
                        u.push(v);
                        u
                    })
                })
                .collect();
        }
        out
    }

    /// Lattice points in the box with no zero coordinate, for every parameter tuple.
    pub fn sample(&self) -> Vec<Vec<i64>> {
        let npt = self.vars.len() - self.config.polygon.symbols().len();
        let r = self.config.radius;
        let free = super::box_points(npt - 1, r);
        let mut out = Vec::new();
        for t in self.symbol_tuples() {
            for f in &free {
                let mut p: Vec<i64> = f.clone();
                p.insert(self.pivot, 0);
                p.extend(&t);
                let a = self.relation.coeffs[self.pivot];
                let rest = self.relation.eval(&p);
                // a·v + rest = 0 with a = ±1
                let v = -rest * a;
                if v == 0 || v.abs() > r || p[..npt].iter().enumerate().any(|(i, &c)| i != self.pivot && c == 0) {
                    continue;
                }
                p[self.pivot] = v;
                out.push(p);
            }
        }
        out
    }

    fn point(&self, p: &[i64]) -> Point {
        let c = &self.config;
        let mut it = p.iter().copied();
        let mut take = |n: usize| (&mut it).take(n).collect::<Vec<i64>>();
        let x = take(c.n_x);
        let z = take(c.n_z);
        let y = take(c.n_y);
        let w = take(c.n_w);
        Point { x, y, z, w }
    }

    /// Evaluator over the fit coordinates; lattice-route counters are shared per parameter tuple.
    pub fn evaluator(&self) -> Result<impl Fn(&[i64]) -> Result<Rational, StudyError> + Sync + '_, StudyError> {
        let nsym = self.config.polygon.symbols().len();
        let npt = self.vars.len() - nsym;
        let mut lattices: HashMap<Vec<i64>, (Sides, TotallyRealLattice)> = HashMap::new();
        for t in self.symbol_tuples() {
            let sides = self.config.polygon.instantiate(&t)?;
            lattices.insert(t, (sides.clone(), TotallyRealLattice::new(sides, self.config.g)));
        }
        let totally_real = self.config.s == 0 && self.config.n_z == 0 && self.config.n_w == 0;
        Ok(move |p: &[i64]| {
            let (sides, lat) = &lattices[&p[npt..]];
            let pt = self.point(&p[..npt]);
            let v: Count = if totally_real {
                if pt.y.contains(&0) {
                    Count::from(0)
                } else {
                    lat.eval(&pt.x, &pt.y)?
                }
            } else {
                g_s_real(sides, self.config.g, self.config.s, &pt, self.config.window)?
            };
            Ok(Rational::from_integer(v))
        })
    }

    /// Rewrite every piece without the eliminated coordinate.
    fn canonical(&self, q: Quasipolynomial<Rational>, signature: &str) -> Quasipolynomial<Rational> {
        let n = self.vars.len();
        let a = self.relation.coeffs[self.pivot];
        let images: Vec<Polynomial<Rational>> = (0..n)
            .map(|i| {
                if i == self.pivot {
                    // v = -a·(relation without v)
                    let mut c: Vec<i64> = self.relation.coeffs.iter().map(|b| -a * b).collect();
                    c[self.pivot] = 0;
                    Polynomial::linear(&c, -a * self.relation.constant)
                } else {
                    Polynomial::var(n, i)
                }
            })
            .collect();
        let mut out = Quasipolynomial::new(n);
        for (coset, p) in q.pieces() {
            out.set(coset.clone(), p.substitute(&images));
        }
        out.attach(signature);
        out
    }

    /// Group the sample by chamber (or stratum) and fit each group.
    pub fn run(&self) -> Result<Vec<StratumFit>, StudyError> {
        self.run_on(self.sample())
    }

    /// [`run`](Self::run) over a caller-supplied sample in the fit coordinates.
    pub fn run_on(&self, sample: Vec<Vec<i64>>) -> Result<Vec<StratumFit>, StudyError> {
        let eval = self.evaluator()?;
        let mut groups: BTreeMap<String, Vec<Vec<i64>>> = BTreeMap::new();
        for p in sample {
            let key = if self.config.strata {
                self.arrangement.stratum(&p).ok()
            } else {
                self.arrangement.locate(&p).ok().map(|s| s.0)
            };
            if let Some(k) = key {
                groups.entry(k).or_default().push(p);
            }
        }
        Ok(groups
            .into_iter()
            .map(|(signature, points)| {
                let fit = fit_quasipolynomial(&eval, &points, self.config.degree_bound, self.config.min_holdout)
                    .map(|q| self.canonical(q, &signature));
                StratumFit { signature, points, fit }
            })
            .collect())
    }
}
