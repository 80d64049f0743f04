//! Templates, weightings and markings.
//!
//! A template is a floor diagram without weights: the central vertices carry a
//! fixed total order, outer whites only their attachment. Templates are
//! generated directly in canonical form (outer whites sorted by attachment,
//! edges sorted), so no isomorphism test is needed. Weighted diagrams and
//! markings are produced up to the automorphisms that survive: permutations of
//! outer whites with equal attachment and weight, and of parallel black-black
//! edges of equal weight.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::diagram::{DiagramError, Element, FloorTemplate, Marking, Vertex, WeightedFloorDiagram, Xi};
use crate::lattice;
use crate::polygon::{distinct_permutations, Sides};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("resource limit of {0} items exceeded")]
    ResourceLimit(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Default cap on catalog sizes and emitted diagrams.
pub const DEFAULT_LIMIT: usize = 5_000_000;

/// Block sizes of a template.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub a: usize,
    pub n_left: usize,
    pub n_right: usize,
    pub n2: usize,
    pub g: usize,
}

impl Shape {
    pub fn of(xi: &Xi, a: usize, g: usize) -> Self {
        Self { a, n_left: xi.n_left(), n_right: xi.n_right(), n2: xi.n2(), g }
    }

    pub fn n1(&self) -> usize {
        self.n_left + self.n_right
    }

    pub fn bb_edges(&self) -> usize {
        self.a + self.g - 1
    }

    /// `n1 + n2 + 2a + g - 1`.
    pub fn marked_len(&self) -> usize {
        self.n1() + self.n2 + 2 * self.a + self.g - 1
    }
}

/// Templates of one `(a, n1, n2, g)`, over every split of `n1` into outer blocks.
#[derive(Debug, Clone)]
pub struct TemplateCatalog {
    pub a: usize,
    pub n1: usize,
    pub n2: usize,
    pub g: usize,
    pub templates: Vec<(Shape, FloorTemplate)>,
}

impl TemplateCatalog {
    pub fn len(&self) -> usize {
        self.templates.len()
    }
    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }
}

pub fn enumerate_templates(
    a: usize,
    n1: usize,
    n2: usize,
    g: usize,
    limit: usize,
) -> Result<TemplateCatalog, EnumerationError> {
    let mut templates = Vec::new();
    for n_left in 0..=n1 {
        let shape = Shape { a, n_left, n_right: n1 - n_left, n2, g };
        for t in templates_for_shape(shape, limit.saturating_sub(templates.len()))? {
            templates.push((shape, t));
        }
    }
    Ok(TemplateCatalog { a, n1, n2, g, templates })
}

/// Non-decreasing sequences of length `k` over `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All words over `0..n` of length `k`.
pub fn words(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

/// Orders of `a` blacks and `n2` whites; `true` marks a black.
pub fn central_orders(a: usize, n2: usize) -> Vec<Vec<bool>> {
    lattice::linalg::subsets(a + n2, n2)
        .into_iter()
        .map(|whites| (0..a + n2).map(|p| !whites.contains(&p)).collect())
        .collect()
}

/// Raw ingredients of a template; `build` puts them in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateParts {
    pub n_left: usize,
    pub n_right: usize,
    /// `true` for black, in floor order.
    pub central: Vec<bool>,
    /// Black ordinal for each central white, in floor order.
    pub white_attach: Vec<usize>,
    pub left_attach: Vec<usize>,
    pub right_attach: Vec<usize>,
    /// Black ordinals `(i, j)`, `i < j`.
    pub bb: Vec<(usize, usize)>,
    pub g: usize,
}

impl TemplateParts {
    pub fn build(&self) -> Result<FloorTemplate, DiagramError> {
        self.assemble(true)
    }

    /// Keeps outer whites in the given order, as a marking would list them.
    pub fn build_labeled(&self) -> Result<FloorTemplate, DiagramError> {
        self.assemble(false)
    }

    fn assemble(&self, sort_outer: bool) -> Result<FloorTemplate, DiagramError> {
        let nl = self.n_left;
        let nc = self.central.len();
        let mut vertices = vec![Vertex::LEFT; nl];
        let mut black_vertex = Vec::new();
        let mut white_vertex = Vec::new();
        for (p, &b) in self.central.iter().enumerate() {
            if b {
                vertices.push(Vertex::BLACK);
                black_vertex.push(nl + p);
            } else {
                vertices.push(Vertex::WHITE);
                white_vertex.push(nl + p);
            }
        }
        vertices.extend(std::iter::repeat(Vertex::RIGHT).take(self.n_right));
        let bad = || DiagramError::InvalidTemplate("attachment to a missing black vertex".into());
        let black = |i: usize| black_vertex.get(i).copied().ok_or_else(bad);
        let mut left = self.left_attach.clone();
        let mut right = self.right_attach.clone();
        if sort_outer {
            left.sort_unstable();
            right.sort_unstable();
        }
        let mut edges = Vec::new();
        for (i, &b) in left.iter().enumerate() {
            edges.push((i, black(b)?));
        }
        if self.white_attach.len() != white_vertex.len() {
            return Err(DiagramError::InvalidTemplate("one attachment per central white".into()));
        }
        for (&w, &b) in white_vertex.iter().zip(&self.white_attach) {
            let bv = black(b)?;
            edges.push(if w < bv { (w, bv) } else { (bv, w) });
        }
        for (i, &b) in right.iter().enumerate() {
            edges.push((black(b)?, nl + nc + i));
        }
        for &(i, j) in &self.bb {
            if i >= j {
                return Err(DiagramError::InvalidTemplate("black-black edge against the floor order".into()));
            }
            edges.push((black(i)?, black(j)?));
        }
        edges.sort_unstable();
        FloorTemplate::new(vertices, edges, self.g)
    }
}

/// Every template of the given shape, once each.
pub fn templates_for_shape(shape: Shape, limit: usize) -> Result<Vec<FloorTemplate>, EnumerationError> {
    let Shape { a, n_left, n_right, n2, g } = shape;
    let mut out = Vec::new();
    if a == 0 {
        return Ok(out);
    }
    let pairs: Vec<(usize, usize)> = (0..a).flat_map(|i| (i + 1..a).map(move |j| (i, j))).collect();
    let bb_sets: Vec<Vec<(usize, usize)>> = multisets(pairs.len(), shape.bb_edges())
        .into_iter()
        .map(|m| m.into_iter().map(|p| pairs[p]).collect())
        .collect();
    let lefts = multisets(a, n_left);
    let rights = multisets(a, n_right);
    for central in central_orders(a, n2) {
        for white_attach in words(a, n2) {
            for bb in &bb_sets {
                for la in &lefts {
                    for ra in &rights {
                        let parts = TemplateParts {
                            n_left,
                            n_right,
                            central: central.clone(),
                            white_attach: white_attach.clone(),
                            left_attach: la.clone(),
                            right_attach: ra.clone(),
                            bb: bb.clone(),
                            g,
                        };
                        // disconnected black skeletons are rejected here
                        if let Ok(t) = parts.build() {
                            if out.len() == limit {
                                return Err(EnumerationError::ResourceLimit(limit));
                            }
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Divergence targets per vertex: whites from `white_div` (in vertex order), blacks from `r - l`.
fn targets(t: &FloorTemplate, r: &[i64], l: &[i64], white_div: &[i64]) -> Option<Vec<i64>> {
    let mut k = Vec::with_capacity(t.vertices().len());
    let (mut wi, mut bi) = (0, 0);
    for v in t.vertices() {
        if v.is_black() {
            k.push(r.get(bi)? - l.get(bi)?);
            bi += 1;
        } else {
            k.push(*white_div.get(wi)?);
            wi += 1;
        }
    }
    (wi == white_div.len() && bi == r.len()).then_some(k)
}

/// Strictly positive integer flows with the prescribed divergences.
///
/// `white_div` lists the white divergences in vertex order.
pub fn enumerate_weightings(t: &FloorTemplate, r: &[i64], l: &[i64], white_div: &[i64]) -> Vec<Vec<i64>> {
    match targets(t, r, l, white_div) {
        Some(k) if k.iter().sum::<i64>() == 0 => lattice::positive_flows(t, &k),
        _ => Vec::new(),
    }
}

/// Divergence values for the whites of a weighted diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteValues {
    /// Left whites, positive.
    pub left: Vec<i64>,
    /// Central whites, signed.
    pub center: Vec<i64>,
    /// Right whites, negative.
    pub right: Vec<i64>,
}

impl WhiteValues {
    /// Values prescribed by `ξ`: windows for the outer blocks, `β̃+2δ̃` and `β+2δ` in the centre.
    pub fn of(xi: &Xi) -> Self {
        let mut center: Vec<i64> = xi.center_negative().expand().into_iter().map(|v| -(v as i64)).collect();
        center.extend(xi.center_positive().expand().into_iter().map(|v| v as i64));
        Self { left: xi.left_windows(), center, right: xi.right_windows() }
    }
}

/// Assignments of the values to the whites of `t`, up to automorphisms of `t`.
///
/// Central whites are all distinguishable; outer whites sharing an attachment
/// are not, so their values are sorted within each attachment group.
pub fn value_assignments(t: &FloorTemplate, values: &WhiteValues) -> Vec<Vec<i64>> {
    let verts = t.vertices();
    let group_of = |block: Vertex| -> Vec<usize> {
        (0..verts.len())
            .filter(|&v| verts[v] == block)
            .map(|v| t.attachment(v).unwrap())
            .collect()
    };
    let outer = |groups: Vec<usize>, vals: &[i64]| -> Vec<Vec<i64>> {
        if groups.len() != vals.len() {
            return vec![];
        }
        let mut seen = BTreeSet::new();
        for p in distinct_permutations(vals) {
            let mut keyed: Vec<(usize, i64)> = groups.iter().copied().zip(p).collect();
            keyed.sort_unstable();
            seen.insert(keyed.into_iter().map(|(_, v)| v).collect::<Vec<_>>());
        }
        seen.into_iter().collect()
    };
    let lefts = outer(group_of(Vertex::LEFT), &values.left);
    let rights = outer(group_of(Vertex::RIGHT), &values.right);
    let central: Vec<usize> = (0..verts.len()).filter(|&v| verts[v] == Vertex::WHITE).collect();
    if central.len() != values.center.len() {
        return vec![];
    }
    // a central white before its black has positive divergence
    let centers: Vec<Vec<i64>> = distinct_permutations(&values.center)
        .into_iter()
        .filter(|p| central.iter().zip(p).all(|(&v, &y)| (v < t.attachment(v).unwrap()) == (y > 0)))
        .collect();
    let mut out = Vec::new();
    for lv in &lefts {
        for cv in &centers {
            for rv in &rights {
                let mut all = lv.clone();
                all.extend(cv);
                all.extend(rv);
                out.push(all);
            }
        }
    }
    out
}

/// Parallel black-black edges appear consecutively in a canonical template;
/// keep only weightings that are non-decreasing along each such run.
fn canonical_parallel(t: &FloorTemplate, w: &[i64]) -> bool {
    let e = t.edges();
    (1..e.len()).all(|i| !(e[i] == e[i - 1] && t.is_black_black(i) && w[i] < w[i - 1]))
}

/// Weighted diagrams on `t` realising the values, up to isomorphism.
pub fn weighted_diagrams(
    t: &FloorTemplate,
    r: &[i64],
    l: &[i64],
    values: &WhiteValues,
) -> Vec<WeightedFloorDiagram> {
    let mut out = Vec::new();
    for white_div in value_assignments(t, values) {
        for w in enumerate_weightings(t, r, l, &white_div) {
            if canonical_parallel(t, &w) {
                out.push(
                    WeightedFloorDiagram::new(t.clone(), w, r.to_vec(), l.to_vec())
                        .expect("flows satisfy the divergence conditions"),
                );
            }
        }
    }
    out
}

/// Arrangements of `items` into `slots`: slot `i` accepts items of class `slots[i]`.
/// Items are `(class, id)`; equal classes are interchangeable and placed in id order.
fn fill_slots(slots: &[i64], items: &[(i64, (usize, i64), usize)]) -> Vec<Vec<usize>> {
    // items: (slot class, automorphism class, element id)
    let mut out = Vec::new();
    let mut used = vec![false; items.len()];
    fn rec(
        slots: &[i64],
        items: &[(i64, (usize, i64), usize)],
        used: &mut [bool],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = cur.len();
        if i == slots.len() {
            out.push(cur.clone());
            return;
        }
        let mut tried = BTreeSet::new();
        for j in 0..items.len() {
            let (cls, aut, id) = items[j];
            if used[j] || cls != slots[i] || !tried.insert(aut) {
                continue;
            }
            used[j] = true;
            cur.push(id);
            rec(slots, items, used, cur, out);
            cur.pop();
            used[j] = false;
        }
    }
    rec(slots, items, &mut used, &mut Vec::new(), &mut out);
    out
}

/// Orderings of the central elements: vertices in floor order, each
/// black-black edge strictly between its endpoints. Parallel edges of equal
/// weight are interchangeable.
pub fn central_markings(d: &WeightedFloorDiagram) -> Vec<Vec<Element>> {
    let t = d.template();
    let verts = t.vertices();
    let central: Vec<usize> = (0..verts.len()).filter(|&v| verts[v].block == crate::diagram::Block::Center).collect();
    let bb: Vec<usize> = (0..t.edges().len()).filter(|&e| t.is_black_black(e)).collect();
    let mut out = Vec::new();
    let mut placed_edge = vec![false; t.edges().len()];
    let mut cur = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        d: &WeightedFloorDiagram,
        central: &[usize],
        bb: &[usize],
        next_vertex: usize,
        placed_edge: &mut [bool],
        cur: &mut Vec<Element>,
        out: &mut Vec<Vec<Element>>,
    ) {
        let t = d.template();
        if next_vertex == central.len() && bb.iter().all(|&e| placed_edge[e]) {
            out.push(cur.clone());
            return;
        }
        if next_vertex < central.len() {
            let v = central[next_vertex];
            let ready = bb.iter().all(|&e| t.edges()[e].1 != v || placed_edge[e]);
            if ready {
                cur.push(Element::Vertex(v));
                rec(d, central, bb, next_vertex + 1, placed_edge, cur, out);
                cur.pop();
            }
        }
        let mut tried = BTreeSet::new();
        for &e in bb {
            let (u, v) = t.edges()[e];
            let source_placed = next_vertex > 0 && central[..next_vertex].contains(&u);
            if placed_edge[e] || !source_placed || !tried.insert((u, v, d.weight(e))) {
                continue;
            }
            let _ = v;
            placed_edge[e] = true;
            cur.push(Element::Edge(e));
            rec(d, central, bb, next_vertex, placed_edge, cur, out);
            cur.pop();
            placed_edge[e] = false;
        }
    }
    rec(d, &central, &bb, 0, &mut placed_edge, &mut cur, &mut out);
    out
}

/// Markings of `d` compatible with `ξ`, one per equivalence class.
pub fn enumerate_markings(d: &WeightedFloorDiagram, xi: &Xi) -> Vec<Marking> {
    let t = d.template();
    let verts = t.vertices();
    let outer = |block: Vertex| -> Vec<(i64, (usize, i64), usize)> {
        (0..verts.len())
            .filter(|&v| verts[v] == block)
            .map(|v| {
                let dv = d.divergence(v);
                (dv, (t.attachment(v).unwrap(), dv), v)
            })
            .collect()
    };
    let lw = xi.left_windows();
    let rw = xi.right_windows();
    let lefts = fill_slots(&lw, &outer(Vertex::LEFT));
    let rights = fill_slots(&rw, &outer(Vertex::RIGHT));
    if lefts.is_empty() || rights.is_empty() || lw.len() != t.count(Vertex::LEFT) || rw.len() != t.count(Vertex::RIGHT) {
        return vec![];
    }
    let centers = central_markings(d);
    let mut out = Vec::new();
    for lm in &lefts {
        for cm in &centers {
            for rm in &rights {
                let mut m: Vec<Element> = lm.iter().map(|&v| Element::Vertex(v)).collect();
                m.extend(cm.iter().copied());
                m.extend(rm.iter().map(|&v| Element::Vertex(v)));
                out.push(Marking(m));
            }
        }
    }
    out
}

/// One weighted diagram with all of its markings.
#[derive(Debug, Clone)]
pub struct MarkedFamily {
    pub diagram: WeightedFloorDiagram,
    pub markings: Vec<Marking>,
}

/// A unit of parallel work: one template under one permutation pair.
#[derive(Debug, Clone)]
pub struct WorkItem {
    pub template: FloorTemplate,
    pub r: Vec<i64>,
    pub l: Vec<i64>,
}

/// Templates times permutation pairs for the fibre of `ξ`.
pub fn work_items(sides: &Sides, g: usize, xi: &Xi, limit: usize) -> Result<Vec<WorkItem>, EnumerationError> {
    let shape = Shape::of(xi, sides.a(), g);
    let templates = templates_for_shape(shape, limit)?;
    let pairs = sides.permutation_pairs();
    let mut out = Vec::with_capacity(templates.len() * pairs.len());
    for (r, l) in &pairs {
        for t in &templates {
            out.push(WorkItem { template: t.clone(), r: r.clone(), l: l.clone() });
        }
    }
    Ok(out)
}

/// Weighted diagrams and markings of one work item.
pub fn marked_families(item: &WorkItem, xi: &Xi) -> Vec<MarkedFamily> {
    let values = WhiteValues::of(xi);
    weighted_diagrams(&item.template, &item.r, &item.l, &values)
        .into_iter()
        .filter_map(|d| {
            let markings = enumerate_markings(&d, xi);
            (!markings.is_empty()).then_some(MarkedFamily { diagram: d, markings })
        })
        .collect()
}

/// Streams every marked diagram of the fibre of `ξ` in a canonical order.
pub fn for_each_marked_diagram(
    sides: &Sides,
    g: usize,
    xi: &Xi,
    limit: usize,
    mut visit: impl FnMut(&WeightedFloorDiagram, &Marking),
) -> Result<usize, EnumerationError> {
    let mut n = 0;
    for item in work_items(sides, g, xi, limit)? {
        for fam in marked_families(&item, xi) {
            for m in &fam.markings {
                if n == limit {
                    return Err(EnumerationError::ResourceLimit(limit));
                }
                visit(&fam.diagram, m);
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Templates that carry at least one marked diagram of the fibre, for a fixed `(r, l)`.
pub fn contributing_templates(
    sides: &Sides,
    g: usize,
    xi: &Xi,
    r: &[i64],
    l: &[i64],
    limit: usize,
) -> Result<Vec<FloorTemplate>, EnumerationError> {
    let shape = Shape::of(xi, sides.a(), g);
    Ok(templates_for_shape(shape, limit)?
        .into_iter()
        .filter(|t| {
            let item = WorkItem { template: t.clone(), r: r.to_vec(), l: l.to_vec() };
            !marked_families(&item, xi).is_empty()
        })
        .collect())
}

/// Number of central orderings of `t` with unweighted parallel edges identified.
pub fn central_interleavings(t: &FloorTemplate) -> usize {
    central_markings(&WeightedFloorDiagram::unchecked(t.clone(), vec![1; t.edges().len()])).len()
}
