//! Welschinger-type counts and the `G` maps.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{
    imaginary_deltas, s_real_multiplicity, DiagramError, FloorTemplate, Marking, MultiplicityWindow,
    WeightedFloorDiagram, Xi,
};
use crate::enumeration::{
    central_interleavings, central_orders, marked_families, multisets, work_items, words, EnumerationError,
    Shape, TemplateParts, DEFAULT_LIMIT,
};
use crate::lattice::{pi_x_spec, LatticeError, VectorConfiguration, WeightedCounter};
use crate::polygon::Sides;
use crate::scalar::exact_div;
use crate::seq::Seq;
use crate::Count;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("zero entry in {0}")]
    ZeroEntry(&'static str),
    #[error("point is not in the lattice: entries sum to {sum}, need {need}")]
    NotInLattice { sum: i64, need: i64 },
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("s = {s} needs |β+2δ| + |β̃+2δ̃| >= {need}")]
    InvalidS { s: usize, need: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A point `(x; y; z; w)`: outer ends, central whites, paired outer ends, paired central whites.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    #[serde(default)]
    pub x: Vec<i64>,
    #[serde(default)]
    pub y: Vec<i64>,
    #[serde(default)]
    pub z: Vec<i64>,
    #[serde(default)]
    pub w: Vec<i64>,
}

impl Point {
    pub fn totally_real(x: Vec<i64>, y: Vec<i64>) -> Self {
        Self { x, y, ..Self::default() }
    }

    /// Signed total, with paired entries counted twice.
    pub fn total(&self) -> i64 {
        self.x.iter().sum::<i64>() + self.y.iter().sum::<i64>() + 2 * (self.z.iter().sum::<i64>() + self.w.iter().sum::<i64>())
    }

    /// Sum of the positive entries, paired ones twice: the top length.
    pub fn d_t(&self) -> i64 {
        let pos = |v: &[i64]| v.iter().filter(|&&e| e > 0).sum::<i64>();
        pos(&self.x) + pos(&self.y) + 2 * (pos(&self.z) + pos(&self.w))
    }
}

fn split_counts(v: &[i64]) -> (Seq, Seq) {
    let neg = Seq::counting(v.iter().filter(|&&e| e < 0).map(|&e| (-e) as u32));
    let pos = Seq::counting(v.iter().filter(|&&e| e > 0).map(|&e| e as u32));
    (neg, pos)
}

/// `ξ` of a point. Zero entries have no meaning and are rejected.
pub fn sequences_from_point(p: &Point) -> Result<Xi, InvariantError> {
    for (name, v) in [("x", &p.x), ("y", &p.y), ("z", &p.z), ("w", &p.w)] {
        if v.contains(&0) {
            return Err(InvariantError::ZeroEntry(name));
        }
    }
    let (alpha, alpha_t) = split_counts(&p.x);
    let (beta, beta_t) = split_counts(&p.y);
    let (gamma, gamma_t) = split_counts(&p.z);
    let (delta, delta_t) = split_counts(&p.w);
    Ok(Xi { alpha, beta, gamma, delta, alpha_t, beta_t, gamma_t, delta_t })
}

fn check_constraints(sides: &Sides, d_t: i64, xi: &Xi) -> Result<(), InvariantError> {
    if xi.top_sum() != d_t {
        return Err(InvariantError::ConstraintViolation(format!("top sum {} differs from d_t = {d_t}", xi.top_sum())));
    }
    let d_b = d_t + sides.shift();
    if xi.bottom_sum() != d_b {
        return Err(InvariantError::ConstraintViolation(format!("bottom sum {} differs from d_b = {d_b}", xi.bottom_sum())));
    }
    Ok(())
}

fn check_s(xi: &Xi, s: usize) -> Result<(), InvariantError> {
    let need = 2 * s;
    if xi.n2() < need {
        return Err(InvariantError::InvalidS { s, need });
    }
    Ok(())
}

/// The point must satisfy the lattice relation of the polygon.
pub fn check_lattice(sides: &Sides, p: &Point) -> Result<(), InvariantError> {
    let (sum, need) = (p.total(), -sides.shift());
    if sum != need {
        return Err(InvariantError::NotInLattice { sum, need });
    }
    Ok(())
}

/// `Σ μ_s` over the marked diagrams of the fibre of `ξ`, with `ξ` fixed.
pub fn s_real_count(
    sides: &Sides,
    d_t: i64,
    g: usize,
    s: usize,
    xi: &Xi,
    window: MultiplicityWindow,
) -> Result<Count, InvariantError> {
    check_constraints(sides, d_t, xi)?;
    check_s(xi, s)?;
    fold(sides, g, xi, |d, m| Ok(s_real_multiplicity::<Count>(d, m, s, xi, window)?))
}

/// The totally real count `W(α, β, α̃, β̃)`.
pub fn welschinger(sides: &Sides, d_t: i64, g: usize, xi: &Xi) -> Result<Count, InvariantError> {
    if !xi.is_totally_real() {
        return Err(InvariantError::ConstraintViolation("γ and δ must vanish".into()));
    }
    check_constraints(sides, d_t, xi)?;
    // with no pairs the imaginary part is empty: μ is 1 exactly when all weights are odd
    let items = work_items(sides, g, xi, DEFAULT_LIMIT)?;
    Ok(items
        .par_iter()
        .map(|item| {
            marked_families(item, xi)
                .iter()
                .filter(|f| f.diagram.weights().iter().all(|w| w % 2 != 0))
                .map(|f| Count::from(f.markings.len()))
                .sum::<Count>()
        })
        .sum())
}

/// The combinatorial number: `s_real_count` summed over the class of `ξ`.
///
/// Each marked diagram is s-real for at most one member of the class, the one
/// whose `δ, δ̃` halve the central counts of its imaginary part, so a single
/// pass over the fibre suffices.
pub fn combinatorial_number(
    sides: &Sides,
    d_t: i64,
    g: usize,
    s: usize,
    xi: &Xi,
    window: MultiplicityWindow,
) -> Result<Count, InvariantError> {
    check_constraints(sides, d_t, xi)?;
    check_s(xi, s)?;
    fold(sides, g, xi, |d, m| {
        let Some((delta, delta_t)) = imaginary_deltas(d, m, xi, s)? else {
            return Ok(Count::zero());
        };
        let (Some(beta), Some(beta_t)) =
            (xi.center_negative().minus(&delta.scaled(2)), xi.center_positive().minus(&delta_t.scaled(2)))
        else {
            return Ok(Count::zero());
        };
        let member = Xi {
            beta,
            beta_t,
            delta,
            delta_t,
            ..xi.clone()
        };
        Ok(s_real_multiplicity::<Count>(d, m, s, &member, window)?)
    })
}

fn fold(
    sides: &Sides,
    g: usize,
    xi: &Xi,
    mu: impl Fn(&WeightedFloorDiagram, &Marking) -> Result<Count, InvariantError> + Sync,
) -> Result<Count, InvariantError> {
    let items = work_items(sides, g, xi, DEFAULT_LIMIT)?;
    items
        .par_iter()
        .map(|item| {
            let mut acc = Count::zero();
            for f in marked_families(item, xi) {
                for m in &f.markings {
                    acc += mu(&f.diagram, m)?;
                }
            }
            Ok(acc)
        })
        .try_reduce(Count::zero, |a, b| Ok(a + b))
}

/// Whether `ξ'` lies in the class of `ξ`.
///
/// The shift `ε = δ' - δ` is forced; it must satisfy `β' = β - 2ε`, vanish where
/// `β` and `δ` do, and stay within `-δ <= ε <= β/2`. Same for the tilde part.
pub fn xi_equivalent(xi: &Xi, other: &Xi) -> bool {
    fn half(b: &Seq, d: &Seq, b2: &Seq, d2: &Seq) -> bool {
        let top = [b, d, b2, d2].iter().map(|s| s.max_index()).max().unwrap_or(0);
        (1..=top).all(|j| {
            let eps = d2.get(j) as i64 - d.get(j) as i64;
            let (bj, dj) = (b.get(j) as i64, d.get(j) as i64);
            b2.get(j) as i64 == bj - 2 * eps && (bj != 0 || dj != 0 || eps == 0) && -dj <= eps && 2 * eps <= bj
        })
    }
    xi.alpha == other.alpha
        && xi.gamma == other.gamma
        && xi.alpha_t == other.alpha_t
        && xi.gamma_t == other.gamma_t
        && half(&xi.beta, &xi.delta, &other.beta, &other.delta)
        && half(&xi.beta_t, &xi.delta_t, &other.beta_t, &other.delta_t)
}

/// Every member of the class of `ξ`.
pub fn xi_class(xi: &Xi) -> Vec<Xi> {
    fn shifts(b: &Seq, d: &Seq) -> Vec<(Seq, Seq)> {
        let top = b.max_index().max(d.max_index());
        let mut out = vec![(Seq::new(), Seq::new())];
        for j in 1..=top {
            let (bj, dj) = (b.get(j) as i64, d.get(j) as i64);
            let mut next = Vec::new();
            for (nb, nd) in &out {
                for eps in -dj..=bj / 2 {
                    let (mut nb, mut nd) = (nb.clone(), nd.clone());
                    nb.set(j, (bj - 2 * eps) as u32);
                    nd.set(j, (dj + eps) as u32);
                    next.push((nb, nd));
                }
            }
            out = next;
        }
        out
    }
    let mut out = Vec::new();
    for (beta, delta) in shifts(&xi.beta, &xi.delta) {
        for (beta_t, delta_t) in shifts(&xi.beta_t, &xi.delta_t) {
            out.push(Xi {
                beta: beta.clone(),
                delta: delta.clone(),
                beta_t,
                delta_t,
                ..xi.clone()
            });
        }
    }
    out
}

/// `G_{s}` at a point, via the combinatorial number.
pub fn g_s_real(sides: &Sides, g: usize, s: usize, p: &Point, window: MultiplicityWindow) -> Result<Count, InvariantError> {
    check_lattice(sides, p)?;
    if p.y.contains(&0) || p.w.contains(&0) {
        return Ok(Count::zero());
    }
    let xi = sequences_from_point(p)?;
    if xi.n2() < 2 * s {
        return Err(InvariantError::InvalidS { s, need: 2 * s });
    }
    combinatorial_number(sides, p.d_t(), g, s, &xi, window)
}

/// `G` at a totally real point, via the diagram enumeration.
pub fn g_totally_real_enumerated(sides: &Sides, g: usize, x: &[i64], y: &[i64]) -> Result<Count, InvariantError> {
    let p = Point::totally_real(x.to_vec(), y.to_vec());
    check_lattice(sides, &p)?;
    if y.contains(&0) {
        return Ok(Count::zero());
    }
    let xi = sequences_from_point(&p)?;
    welschinger(sides, p.d_t(), g, &xi)
}

/// `G` at a totally real point, via weighted lattice-point counts.
pub fn g_totally_real(sides: &Sides, g: usize, x: &[i64], y: &[i64]) -> Result<Count, InvariantError> {
    TotallyRealLattice::new(sides.clone(), g).eval(x, y)
}

struct RouteTemplate {
    template: FloorTemplate,
    counter: WeightedCounter,
    interleavings: Count,
}

/// The lattice route to `G`, caching the per-template counters.
///
/// `G = (1/β!β̃!) Σ_{(G,m)} Σ_{(r,l)} Σ_σ P_{A_G, π}(k)`: the sum runs over
/// marked graphs with labelled outer whites, every permutation `σ` of `y`, and
/// `π` is the odd-weight indicator.
pub struct TotallyRealLattice {
    sides: Sides,
    g: usize,
    cache: Mutex<HashMap<Shape, Arc<Vec<RouteTemplate>>>>,
}

impl TotallyRealLattice {
    pub fn new(sides: Sides, g: usize) -> Self {
        Self { sides, g, cache: Mutex::new(HashMap::new()) }
    }

    fn templates(&self, shape: Shape) -> Result<Arc<Vec<RouteTemplate>>, InvariantError> {
        if let Some(t) = self.cache.lock().unwrap().get(&shape) {
            return Ok(t.clone());
        }
        let built = Arc::new(labeled_templates(shape)?
            .into_par_iter()
            .map(|t| {
                let x = VectorConfiguration::from_rows(t.adjacency_matrix())?;
                let counter = WeightedCounter::new(&x, &pi_x_spec(t.edges().len()))?;
                Ok(RouteTemplate { template: t.clone(), counter, interleavings: Count::from(central_interleavings(&t)) })
            })
            .collect::<Result<Vec<_>, InvariantError>>()?);
        self.cache.lock().unwrap().insert(shape, built.clone());
        Ok(built)
    }

    pub fn eval(&self, x: &[i64], y: &[i64]) -> Result<Count, InvariantError> {
        let p = Point::totally_real(x.to_vec(), y.to_vec());
        check_lattice(&self.sides, &p)?;
        if x.contains(&0) {
            return Err(InvariantError::ZeroEntry("x"));
        }
        let mut left: Vec<i64> = x.iter().copied().filter(|&v| v > 0).collect();
        left.sort_unstable();
        let mut right: Vec<i64> = x.iter().copied().filter(|&v| v < 0).collect();
        right.sort_unstable_by_key(|v| v.abs());
        let shape = Shape { a: self.sides.a(), n_left: left.len(), n_right: right.len(), n2: y.len(), g: self.g };
        let templates = self.templates(shape)?;
        let pairs = self.sides.permutation_pairs();
        let perms = permutations(y);
        let total = templates
            .par_iter()
            .map(|rt| -> Result<Count, InvariantError> {
                let mut acc = Count::zero();
                for (r, l) in &pairs {
                    for sigma in &perms {
                        let k = route_targets(&rt.template, &left, sigma, &right, r, l);
                        acc += rt.counter.lifted(&k)?;
                    }
                }
                Ok(acc * &rt.interleavings)
            })
            .try_reduce(Count::zero, |a, b| Ok(a + b))?;
        let (neg, pos) = split_counts(y);
        let denom = Count::from(neg.factorial_product()) * Count::from(pos.factorial_product());
        exact_div(&total, &denom)
            .ok_or_else(|| InvariantError::ConstraintViolation("symmetrised sum not divisible by β!β̃!".into()))
    }
}

/// Targets in the template's vertex order: left values, central vertices
/// (blacks from `r - l`, whites from `σ(y)` in floor order), right values.
fn route_targets(t: &FloorTemplate, left: &[i64], center: &[i64], right: &[i64], r: &[i64], l: &[i64]) -> Vec<i64> {
    let mut k = left.to_vec();
    let (mut bi, mut wi) = (0, 0);
    for v in &t.vertices()[left.len()..t.vertices().len() - right.len()] {
        if v.is_black() {
            k.push(r[bi] - l[bi]);
            bi += 1;
        } else {
            k.push(center[wi]);
            wi += 1;
        }
    }
    k.extend_from_slice(right);
    k
}

/// Marked graphs up to their central interleaving: outer whites keep their
/// index order, so no two attachment words are identified.
fn labeled_templates(shape: Shape) -> Result<Vec<FloorTemplate>, InvariantError> {
    let Shape { a, n_left, n_right, n2, g } = shape;
    let pairs: Vec<(usize, usize)> = (0..a).flat_map(|i| (i + 1..a).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for central in central_orders(a, n2) {
        for white_attach in words(a, n2) {
            for bb in multisets(pairs.len(), shape.bb_edges()) {
                for la in words(a, n_left) {
                    for ra in words(a, n_right) {
                        let parts = TemplateParts {
                            n_left,
                            n_right,
                            central: central.clone(),
                            white_attach: white_attach.clone(),
                            left_attach: la.clone(),
                            right_attach: ra,
                            bb: bb.iter().map(|&p| pairs[p]).collect(),
                            g,
                        };
                        if let Ok(t) = parts.build_labeled() {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn permutations(y: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..y.len()).collect();
    fn heap(k: usize, idx: &mut Vec<usize>, y: &[i64], out: &mut Vec<Vec<i64>>) {
        if k <= 1 {
            out.push(idx.iter().map(|&i| y[i]).collect());
            return;
        }
        for i in 0..k {
            heap(k - 1, idx, y, out);
            let j = if k % 2 == 0 { i } else { 0 };
            idx.swap(j, k - 1);
        }
    }
    heap(y.len(), &mut idx, y, &mut out);
    out
}
