//! Marked floor diagrams and their local invariants.
//!
//! A diagram is stored as a [`FloorTemplate`] (ordered vertices, directed
//! edges) plus edge weights. A [`Marking`] lists the marked elements (white
//! vertices, black vertices, black-black edges) by index; index `i` is
//! `marking.at(i)` with `1 <= i <= n`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::polygon::HTransversePolygon;
use crate::scalar::Ring;
use crate::seq::Seq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid template: {0}")]
    InvalidTemplate(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("s = {s} needs {need} central elements, only {have} available")]
    InvalidS { s: usize, need: usize, have: usize },
    #[error("divergence multiplicity vector violates the degree constraints: {0}")]
    ConstraintViolation(String),
    #[error("cannot parse divergence multiplicity vector: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "C")]
    Center,
    #[serde(rename = "R")]
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub block: Block,
    pub color: Color,
}

impl Vertex {
    pub const LEFT: Vertex = Vertex { block: Block::Left, color: Color::White };
    pub const RIGHT: Vertex = Vertex { block: Block::Right, color: Color::White };
    pub const WHITE: Vertex = Vertex { block: Block::Center, color: Color::White };
    pub const BLACK: Vertex = Vertex { block: Block::Center, color: Color::Black };

    pub fn is_black(&self) -> bool {
        self.color == Color::Black
    }
}

/// Unweighted floor diagram with a fixed vertex order.
///
/// Vertices are listed `L`, then `C` in floor order, then `R`. Every edge
/// `(u, v)` has `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FloorTemplate {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    genus: usize,
    // For white vertices, the index of the only incident edge.
    white_edge: Vec<Option<usize>>,
}

impl FloorTemplate {
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        genus: usize,
    ) -> Result<Self, DiagramError> {
        let bad = |msg: String| Err(DiagramError::InvalidTemplate(msg));
        if vertices.windows(2).any(|w| w[0].block > w[1].block) {
            return bad("vertices must be listed L, C, R".into());
        }
        if vertices
            .iter()
            .any(|v| v.block != Block::Center && v.color == Color::Black)
        {
            return bad("only the central block holds black vertices".into());
        }
        if !vertices.iter().any(Vertex::is_black) {
            return bad("no black vertex".into());
        }
        let nv = vertices.len();
        let mut degree = vec![0usize; nv];
        let mut white_edge = vec![None; nv];
        for (ei, &(u, v)) in edges.iter().enumerate() {
            if u >= v || v >= nv {
                return bad(format!("edge ({u},{v}) is not left to right"));
            }
            let (cu, cv) = (vertices[u].color, vertices[v].color);
            if cu == Color::White && cv == Color::White {
                return bad(format!("edge ({u},{v}) joins two white vertices"));
            }
            degree[u] += 1;
            degree[v] += 1;
            if cu == Color::White {
                white_edge[u] = Some(ei);
            }
            if cv == Color::White {
                white_edge[v] = Some(ei);
            }
        }
        for (i, vx) in vertices.iter().enumerate() {
            if vx.color == Color::White && degree[i] != 1 {
                return bad(format!("white vertex {i} has degree {}", degree[i]));
            }
        }
        // connectivity by union-find
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in &edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        if (0..nv).any(|i| find(&mut parent, i) != root) {
            return bad("graph is disconnected".into());
        }
        if edges.len() + 1 != nv + genus {
            return bad(format!(
                "first Betti number is {}, expected {genus}",
                edges.len() as i64 - nv as i64 + 1
            ));
        }
        Ok(Self { vertices, edges, genus, white_edge })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Black vertices in floor order.
    pub fn blacks(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].is_black())
            .collect()
    }

    pub fn a(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_black()).count()
    }

    pub fn count(&self, vx: Vertex) -> usize {
        self.vertices.iter().filter(|&&v| v == vx).count()
    }

    /// `|L ∪ R|`.
    pub fn n1(&self) -> usize {
        self.count(Vertex::LEFT) + self.count(Vertex::RIGHT)
    }

    /// Number of central white vertices.
    pub fn n2(&self) -> usize {
        self.count(Vertex::WHITE)
    }

    pub fn is_black_black(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        self.vertices[u].is_black() && self.vertices[v].is_black()
    }

    /// Edge incident to a white vertex.
    pub fn white_edge(&self, v: usize) -> Option<usize> {
        self.white_edge[v]
    }

    /// Black neighbour of a white vertex.
    pub fn attachment(&self, v: usize) -> Option<usize> {
        let (a, b) = self.edges[self.white_edge[v]?];
        Some(if a == v { b } else { a })
    }

    /// Vertex-edge incidence matrix, rows = vertices, `+1` at the source.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.edges.len()]; self.vertices.len()];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            m[u][e] += 1;
            m[v][e] -= 1;
        }
        m
    }

    /// Number of marked elements: white and black vertices plus black-black edges.
    pub fn marked_len(&self) -> usize {
        self.vertices.len() + (0..self.edges.len()).filter(|&e| self.is_black_black(e)).count()
    }
}

/// Template with positive edge weights and the permutation pair `(r, l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedFloorDiagram {
    template: FloorTemplate,
    weights: Vec<i64>,
    r: Vec<i64>,
    l: Vec<i64>,
}

impl WeightedFloorDiagram {
    pub fn new(
        template: FloorTemplate,
        weights: Vec<i64>,
        r: Vec<i64>,
        l: Vec<i64>,
    ) -> Result<Self, DiagramError> {
        if weights.len() != template.edges.len() {
            return Err(DiagramError::InvalidWeights(format!(
                "{} weights for {} edges",
                weights.len(),
                template.edges.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w <= 0) {
            return Err(DiagramError::InvalidWeights(format!("non-positive weight {w}")));
        }
        let blacks = template.blacks();
        if r.len() != blacks.len() || l.len() != blacks.len() {
            return Err(DiagramError::InvalidWeights(
                "permutation pair does not match the number of black vertices".into(),
            ));
        }
        let d = Self { template, weights, r, l };
        for (i, &b) in blacks.iter().enumerate() {
            let got = d.divergence(b);
            if got != d.r[i] - d.l[i] {
                return Err(DiagramError::InvalidWeights(format!(
                    "black vertex {} has divergence {got}, expected {}",
                    i + 1,
                    d.r[i] - d.l[i]
                )));
            }
        }
        Ok(d)
    }

    /// Skips the divergence checks; `r` and `l` are zero.
    pub(crate) fn unchecked(template: FloorTemplate, weights: Vec<i64>) -> Self {
        let a = template.blacks().len();
        Self { template, weights, r: vec![0; a], l: vec![0; a] }
    }

    pub fn template(&self) -> &FloorTemplate {
        &self.template
    }
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }
    pub fn weight(&self, e: usize) -> i64 {
        self.weights[e]
    }
    pub fn r(&self) -> &[i64] {
        &self.r
    }
    pub fn l(&self) -> &[i64] {
        &self.l
    }

    /// Weighted out-degree minus in-degree.
    pub fn divergence(&self, v: usize) -> i64 {
        divergence(&self.template, &self.weights, v)
    }
}

/// `div(v)` for an arbitrary weight vector on a template.
pub fn divergence(t: &FloorTemplate, weights: &[i64], v: usize) -> i64 {
    t.edges
        .iter()
        .zip(weights)
        .map(|(&(a, b), &w)| {
            if a == v {
                w
            } else if b == v {
                -w
            } else {
                0
            }
        })
        .sum()
}

/// A marked element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Vertex(usize),
    Edge(usize),
}

/// Marking as a list; entry `i - 1` is `m(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Marking(pub Vec<Element>);

impl Marking {
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    /// `m(i)`, 1-based.
    pub fn at(&self, i: usize) -> Element {
        self.0[i - 1]
    }
    /// Index `i` with `m(i) = el`.
    pub fn index_of(&self, el: Element) -> Option<usize> {
        self.0.iter().position(|&x| x == el).map(|p| p + 1)
    }
}

/// The eight sequences `(α, β, γ, δ, α̃, β̃, γ̃, δ̃)`.
///
/// `α, γ` count right (negative) real and paired ends, `β, δ` central whites of
/// negative divergence; the tilde sequences are the positive counterparts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Xi {
    pub alpha: Seq,
    pub beta: Seq,
    pub gamma: Seq,
    pub delta: Seq,
    pub alpha_t: Seq,
    pub beta_t: Seq,
    pub gamma_t: Seq,
    pub delta_t: Seq,
}

pub type DivergenceMultiplicityVector = Xi;

impl Xi {
    /// Totally real data `(α, β, 0, 0, α̃, β̃, 0, 0)`.
    pub fn totally_real(alpha: Seq, beta: Seq, alpha_t: Seq, beta_t: Seq) -> Self {
        Self { alpha, beta, alpha_t, beta_t, ..Self::default() }
    }

    /// Comma separated digit strings, e.g. `"1,0,0,0,1,0,0001,01"`.
    pub fn parse(s: &str) -> Result<Self, DiagramError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 8 {
            return Err(DiagramError::Parse(format!("expected 8 sequences, got {}", parts.len())));
        }
        let mut seqs = Vec::with_capacity(8);
        for p in parts {
            seqs.push(Seq::from_digits(p).ok_or_else(|| DiagramError::Parse(p.to_string()))?);
        }
        let mut it = seqs.into_iter();
        let mut next = || it.next().unwrap();
        Ok(Self {
            alpha: next(),
            beta: next(),
            gamma: next(),
            delta: next(),
            alpha_t: next(),
            beta_t: next(),
            gamma_t: next(),
            delta_t: next(),
        })
    }

    pub fn is_totally_real(&self) -> bool {
        self.gamma.is_zero() && self.delta.is_zero() && self.gamma_t.is_zero() && self.delta_t.is_zero()
    }

    /// `|α̃| + 2|γ̃|`, the size of the left block.
    pub fn n_left(&self) -> usize {
        (self.alpha_t.norm() + 2 * self.gamma_t.norm()) as usize
    }

    /// `|α| + 2|γ|`, the size of the right block.
    pub fn n_right(&self) -> usize {
        (self.alpha.norm() + 2 * self.gamma.norm()) as usize
    }

    pub fn n1(&self) -> usize {
        self.n_left() + self.n_right()
    }

    /// Central whites of positive divergence, `β̃ + 2δ̃`.
    pub fn center_positive(&self) -> Seq {
        self.beta_t.plus(&self.delta_t.scaled(2))
    }

    /// Central whites of negative divergence (by absolute value), `β + 2δ`.
    pub fn center_negative(&self) -> Seq {
        self.beta.plus(&self.delta.scaled(2))
    }

    pub fn n2(&self) -> usize {
        (self.center_positive().norm() + self.center_negative().norm()) as usize
    }

    /// `Σ i[α_i + β_i + 2(γ_i + δ_i)]`.
    pub fn bottom_sum(&self) -> i64 {
        self.alpha.weighted() + self.beta.weighted() + 2 * (self.gamma.weighted() + self.delta.weighted())
    }

    /// `Σ i[α̃_i + β̃_i + 2(γ̃_i + δ̃_i)]`.
    pub fn top_sum(&self) -> i64 {
        self.alpha_t.weighted()
            + self.beta_t.weighted()
            + 2 * (self.gamma_t.weighted() + self.delta_t.weighted())
    }

    /// Degree constraints against a polygon.
    pub fn check(&self, p: &HTransversePolygon) -> Result<(), DiagramError> {
        if self.top_sum() != p.d_t() {
            return Err(DiagramError::ConstraintViolation(format!(
                "top sum {} differs from d_t = {}",
                self.top_sum(),
                p.d_t()
            )));
        }
        if self.bottom_sum() != p.d_b() {
            return Err(DiagramError::ConstraintViolation(format!(
                "bottom sum {} differs from d_b = {}",
                self.bottom_sum(),
                p.d_b()
            )));
        }
        Ok(())
    }

    /// Divergence prescribed at each left index `1..=n_left`.
    pub fn left_windows(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.n_left());
        for (k, c) in self.alpha_t.iter() {
            out.extend(std::iter::repeat(k as i64).take(c as usize));
        }
        for (k, c) in self.gamma_t.iter() {
            out.extend(std::iter::repeat(k as i64).take(2 * c as usize));
        }
        out
    }

    /// Divergence prescribed at each right index `κ+1..=n`.
    pub fn right_windows(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.n_right());
        for (k, c) in self.alpha.iter() {
            out.extend(std::iter::repeat(-(k as i64)).take(c as usize));
        }
        for (k, c) in self.gamma.iter() {
            out.extend(std::iter::repeat(-(k as i64)).take(2 * c as usize));
        }
        out
    }
}

impl fmt::Display for Xi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{},{},{})",
            self.alpha,
            self.beta,
            self.gamma,
            self.delta,
            self.alpha_t,
            self.beta_t,
            self.gamma_t,
            self.delta_t
        )
    }
}

/// Which marking indices feed the product in the s-real multiplicity.
///
/// `Literal` keeps internal edges whose index is below `|α̃+2γ̃| + 2s`; it is
/// the convention that reproduces the worked multiplicities `μ_1 = 2` and
/// `μ_2 = 4` of the thirteen-top example. `Shifted` moves the cut one index
/// later, which is what the `y_1²` multiplicity of the `s = 1`, genus 0
/// census needs. No single cut satisfies both.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MultiplicityWindow {
    #[default]
    Literal,
    Shifted,
}

impl MultiplicityWindow {
    fn cut(self, xi: &Xi, s: usize) -> usize {
        let base = xi.n_left() + 2 * s;
        match self {
            Self::Literal => base,
            Self::Shifted => base + 1,
        }
    }
}

/// Structural validity of a marking with respect to `ξ`.
pub fn check_marking(d: &WeightedFloorDiagram, m: &Marking, xi: &Xi) -> Result<(), DiagramError> {
    let bad = |msg: String| Err(DiagramError::InvalidMarking(msg));
    let t = d.template();
    let n = t.marked_len();
    if m.len() != n {
        return bad(format!("marking has {} entries, diagram has {n} marked elements", m.len()));
    }
    let mut seen_v = vec![false; t.vertices.len()];
    let mut seen_e = vec![false; t.edges.len()];
    for &el in &m.0 {
        match el {
            Element::Vertex(v) if v < seen_v.len() && !seen_v[v] => seen_v[v] = true,
            Element::Edge(e) if e < seen_e.len() && t.is_black_black(e) && !seen_e[e] => {
                seen_e[e] = true
            }
            other => return bad(format!("element {other:?} is invalid or repeated")),
        }
    }
    let (nl, nr) = (xi.n_left(), xi.n_right());
    if t.count(Vertex::LEFT) != nl || t.count(Vertex::RIGHT) != nr {
        return bad("block sizes disagree with the divergence multiplicity vector".into());
    }
    let idx = Positions::new(t, m);
    for v in 0..t.vertices.len() {
        let i = idx.vertex[v];
        let ok = match t.vertices[v].block {
            Block::Left => i <= nl,
            Block::Right => i > n - nr,
            Block::Center => i > nl && i <= n - nr,
        };
        if !ok {
            return bad(format!("vertex {v} marked at {i}, outside its block"));
        }
    }
    let central: Vec<usize> = (0..t.vertices.len())
        .filter(|&v| t.vertices[v].block == Block::Center)
        .collect();
    if central.windows(2).any(|w| idx.vertex[w[0]] > idx.vertex[w[1]]) {
        return bad("central vertices are marked out of floor order".into());
    }
    for (e, &(u, v)) in t.edges.iter().enumerate() {
        if t.is_black_black(e) {
            let i = idx.edge[e];
            if !(idx.vertex[u] < i && i < idx.vertex[v]) {
                return bad(format!("edge {e} marked at {i}, not between its endpoints"));
            }
        }
    }
    let lw = xi.left_windows();
    let rw = xi.right_windows();
    for i in 1..=nl {
        let Element::Vertex(v) = m.at(i) else { unreachable!() };
        if d.divergence(v) != lw[i - 1] {
            return bad(format!("index {i} needs divergence {}", lw[i - 1]));
        }
    }
    for (j, &want) in rw.iter().enumerate() {
        let i = n - nr + 1 + j;
        let Element::Vertex(v) = m.at(i) else { unreachable!() };
        if d.divergence(v) != want {
            return bad(format!("index {i} needs divergence {want}"));
        }
    }
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for v in 0..t.vertices.len() {
        if t.vertices[v] == Vertex::WHITE {
            let dv = d.divergence(v);
            if dv > 0 {
                pos.push(dv as u32);
            } else {
                neg.push((-dv) as u32);
            }
        }
    }
    if Seq::counting(pos) != xi.center_positive() || Seq::counting(neg) != xi.center_negative() {
        return bad("central white divergences disagree with β, δ, β̃, δ̃".into());
    }
    Ok(())
}

/// Marking index of every vertex and black-black edge (0 for white edges).
pub(crate) struct Positions {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

impl Positions {
    pub fn new(t: &FloorTemplate, m: &Marking) -> Self {
        let mut vertex = vec![0; t.vertices.len()];
        let mut edge = vec![0; t.edges.len()];
        for (p, &el) in m.0.iter().enumerate() {
            match el {
                Element::Vertex(v) => vertex[v] = p + 1,
                Element::Edge(e) => edge[e] = p + 1,
            }
        }
        Self { vertex, edge }
    }

    /// Index representing an edge: its own for black-black edges, its white end otherwise.
    pub fn edge_rep(&self, t: &FloorTemplate, e: usize) -> usize {
        if t.is_black_black(e) {
            return self.edge[e];
        }
        let (u, v) = t.edges[e];
        if t.vertices[u].is_black() {
            self.vertex[v]
        } else {
            self.vertex[u]
        }
    }
}

/// First indices `i` of the s-pairs `{i, i+1}`, ascending.
///
/// Central pairs start right after the left block; see the ledger note on
/// the index offset.
pub fn s_pairs(xi: &Xi, s: usize, n: usize) -> Result<Vec<usize>, DiagramError> {
    let nl = xi.n_left();
    let nr = xi.n_right();
    let central = n.checked_sub(nl + nr).ok_or_else(|| {
        DiagramError::InvalidMarking(format!("n = {n} is smaller than the outer blocks"))
    })?;
    if 2 * s > central {
        return Err(DiagramError::InvalidS { s, need: 2 * s, have: central });
    }
    let at = xi.alpha_t.norm() as usize;
    let kappa = n - xi.n_right();
    let a = xi.alpha.norm() as usize;
    let mut out = Vec::new();
    for k in 1..=xi.gamma_t.norm() as usize {
        out.push(at + 2 * k - 1);
    }
    for k in 1..=s {
        out.push(nl + 2 * k - 1);
    }
    for k in 1..=xi.gamma.norm() as usize {
        out.push(kappa + a + 2 * k - 1);
    }
    Ok(out)
}

/// Adjacency of two marked elements: a vertex and an edge incident to it, or
/// a white vertex and its black neighbour. Two whites, two edges, or two
/// black vertices are never adjacent.
pub fn adjacent(t: &FloorTemplate, a: Element, b: Element) -> bool {
    match (a, b) {
        (Element::Vertex(u), Element::Vertex(v)) => {
            let white_black = |w: usize, x: usize| {
                !t.vertices[w].is_black() && t.attachment(w) == Some(x)
            };
            white_black(u, v) || white_black(v, u)
        }
        (Element::Vertex(v), Element::Edge(e)) | (Element::Edge(e), Element::Vertex(v)) => {
            let (x, y) = t.edges[e];
            x == v || y == v
        }
        (Element::Edge(_), Element::Edge(_)) => false,
    }
}

/// Marking indices in the imaginary part `I(D, m, s)`.
pub fn imaginary_part(
    d: &WeightedFloorDiagram,
    m: &Marking,
    xi: &Xi,
    s: usize,
) -> Result<BTreeSet<usize>, DiagramError> {
    let t = d.template();
    let mut out = BTreeSet::new();
    for i in s_pairs(xi, s, m.len())? {
        if !adjacent(t, m.at(i), m.at(i + 1)) {
            out.insert(i);
            out.insert(i + 1);
        }
    }
    Ok(out)
}

/// The involution on marking indices: swaps each imaginary pair.
///
/// Entry `i - 1` holds `ρ(i)`.
pub fn rho(d: &WeightedFloorDiagram, m: &Marking, xi: &Xi, s: usize) -> Result<Vec<usize>, DiagramError> {
    let im = imaginary_part(d, m, xi, s)?;
    let mut out: Vec<usize> = (1..=m.len()).collect();
    for i in s_pairs(xi, s, m.len())? {
        if im.contains(&i) {
            out.swap(i - 1, i);
        }
    }
    Ok(out)
}

/// Whether `(D, m)` and `(D, ρ∘m)` are equivalent.
///
/// The equivalence must send `m(i)` to `m(ρ(i))` on every central index;
/// outer white vertices carry no structure beyond their black neighbour and
/// weight, so there it suffices that those data are permuted compatibly.
pub fn is_rho_equivalent(d: &WeightedFloorDiagram, m: &Marking, rho: &[usize]) -> bool {
    let t = d.template();
    let nv = t.vertices.len();
    let mut phi_v: Vec<usize> = (0..nv).collect();
    let mut phi_e: Vec<usize> = (0..t.edges.len()).collect();
    for (i0, &j) in rho.iter().enumerate() {
        let i = i0 + 1;
        if i == j {
            continue;
        }
        match (m.at(i), m.at(j)) {
            (Element::Vertex(u), Element::Vertex(v)) => {
                if t.vertices[u] != t.vertices[v] {
                    return false;
                }
                phi_v[u] = v;
            }
            (Element::Edge(e), Element::Edge(f)) => phi_e[e] = f,
            _ => return false,
        }
    }
    for v in 0..nv {
        if t.vertices[v] != Vertex::WHITE {
            continue;
        }
        let (e, f) = (t.white_edge(v).unwrap(), t.white_edge(phi_v[v]).unwrap());
        let img_black = phi_v[t.attachment(v).unwrap()];
        if t.attachment(phi_v[v]) != Some(img_black) || d.weight(e) != d.weight(f) {
            return false;
        }
        // direction is preserved iff both whites sit on the same side of their black
        let before = |w: usize| t.edges[t.white_edge(w).unwrap()].0 == w;
        if before(v) != before(phi_v[v]) {
            return false;
        }
    }
    for e in 0..t.edges.len() {
        if !t.is_black_black(e) {
            continue;
        }
        let (u, v) = t.edges[e];
        let f = phi_e[e];
        if t.edges[f] != (phi_v[u], phi_v[v]) || d.weight(e) != d.weight(f) {
            return false;
        }
    }
    for block in [Block::Left, Block::Right] {
        let mut here = Vec::new();
        let mut there = Vec::new();
        for v in 0..nv {
            if t.vertices[v].block == block {
                let w = d.weight(t.white_edge(v).unwrap());
                let b = t.attachment(v).unwrap();
                here.push((b, w));
                there.push((phi_v[b], w));
            }
        }
        here.sort_unstable();
        there.sort_unstable();
        if here != there {
            return false;
        }
    }
    true
}

/// Counts of central whites of each weight whose index lies in `I`, split by sign.
fn imaginary_center_counts(
    d: &WeightedFloorDiagram,
    m: &Marking,
    im: &BTreeSet<usize>,
) -> (Seq, Seq) {
    let t = d.template();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for &i in im {
        if let Element::Vertex(v) = m.at(i) {
            if t.vertices[v] == Vertex::WHITE {
                let dv = d.divergence(v);
                if dv > 0 {
                    pos.push(dv as u32);
                } else {
                    neg.push((-dv) as u32);
                }
            }
        }
    }
    (Seq::counting(pos), Seq::counting(neg))
}

/// The `δ̃'` and `δ'` read off from the imaginary part, if the counts are even.
pub fn imaginary_deltas(
    d: &WeightedFloorDiagram,
    m: &Marking,
    xi: &Xi,
    s: usize,
) -> Result<Option<(Seq, Seq)>, DiagramError> {
    let im = imaginary_part(d, m, xi, s)?;
    let (pos, neg) = imaginary_center_counts(d, m, &im);
    let halve = |q: &Seq| {
        let mut h = Seq::new();
        for (i, c) in q.iter() {
            if c % 2 == 1 {
                return None;
            }
            h.set(i, c / 2);
        }
        Some(h)
    };
    Ok(match (halve(&neg), halve(&pos)) {
        (Some(dn), Some(dp)) => Some((dn, dp)),
        _ => None,
    })
}

/// s-real test against the `δ, δ̃` of `ξ`.
pub fn is_s_real(d: &WeightedFloorDiagram, m: &Marking, s: usize, xi: &Xi) -> Result<bool, DiagramError> {
    let im = imaginary_part(d, m, xi, s)?;
    let (pos, neg) = imaginary_center_counts(d, m, &im);
    if pos != xi.delta_t.scaled(2) || neg != xi.delta.scaled(2) {
        return Ok(false);
    }
    let r = rho(d, m, xi, s)?;
    Ok(is_rho_equivalent(d, m, &r))
}

/// The s-real multiplicity `μ_s(D, m)`.
///
/// Zero unless the diagram is s-real and every edge outside the imaginary
/// part has odd weight; otherwise the signed product of the internal edge
/// weights whose index lies below the window cut.
pub fn s_real_multiplicity<Z: Ring>(
    d: &WeightedFloorDiagram,
    m: &Marking,
    s: usize,
    xi: &Xi,
    window: MultiplicityWindow,
) -> Result<Z, DiagramError> {
    if !is_s_real(d, m, s, xi)? {
        return Ok(Z::zero());
    }
    let im = imaginary_part(d, m, xi, s)?;
    Ok(multiplicity_given_real(d, m, &im, xi, s, window))
}

/// Multiplicity once s-reality is known; shared with the enumeration fold.
pub(crate) fn multiplicity_given_real<Z: Ring>(
    d: &WeightedFloorDiagram,
    m: &Marking,
    im: &BTreeSet<usize>,
    xi: &Xi,
    s: usize,
    window: MultiplicityWindow,
) -> Z {
    let t = d.template();
    let pos = Positions::new(t, m);
    let cut = window.cut(xi, s);
    let mut acc = Z::one();
    for e in 0..t.edges.len() {
        let rep = pos.edge_rep(t, e);
        let w = d.weight(e);
        if !im.contains(&rep) && w % 2 == 0 {
            return Z::zero();
        }
        let (u, v) = t.edges[e];
        let internal = t.vertices[u].block == Block::Center && t.vertices[v].block == Block::Center;
        if internal && rep < cut {
            acc *= Z::from_i64(w);
        }
    }
    let blacks_in_i = im
        .iter()
        .filter(|&&i| matches!(m.at(i), Element::Vertex(v) if t.vertices[v].is_black()))
        .count();
    if (blacks_in_i / 2) % 2 == 1 {
        acc = -acc;
    }
    acc
}

/// `(x; y; z; w)` of a marked diagram.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivergenceSequence {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub z: Vec<i64>,
    pub w: Vec<i64>,
}

/// Divergences of real outer whites, real central whites, and one entry per
/// imaginary pair of outer and central whites, all in marking order.
pub fn divergence_sequence(
    d: &WeightedFloorDiagram,
    m: &Marking,
    xi: &Xi,
    s: usize,
) -> Result<DivergenceSequence, DiagramError> {
    let t = d.template();
    let im = imaginary_part(d, m, xi, s)?;
    let starts: BTreeSet<usize> = s_pairs(xi, s, m.len())?.into_iter().collect();
    let mut out = DivergenceSequence::default();
    let (mut xl, mut xr, mut zl, mut zr) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for i in 1..=m.len() {
        let Element::Vertex(v) = m.at(i) else { continue };
        if t.vertices[v].is_black() {
            continue;
        }
        let dv = d.divergence(v);
        let imag = im.contains(&i);
        // the second member of a pair repeats the first
        let first_of_pair = imag && starts.contains(&i);
        match (t.vertices[v].block, imag) {
            (Block::Left, false) => xl.push(dv),
            (Block::Right, false) => xr.push(dv),
            (Block::Center, false) => out.y.push(dv),
            (Block::Left, true) if first_of_pair => zl.push(dv),
            (Block::Right, true) if first_of_pair => zr.push(dv),
            (Block::Center, true) if first_of_pair => out.w.push(dv),
            _ => {}
        }
    }
    out.x = xl.into_iter().chain(xr).collect();
    out.z = zl.into_iter().chain(zr).collect();
    Ok(out)
}

/// Canonical JSON form of a marked diagram.
pub fn to_json(d: &WeightedFloorDiagram, m: &Marking) -> Value {
    let t = d.template();
    let edges: Vec<Value> = t
        .edges
        .iter()
        .zip(d.weights())
        .map(|(&(u, v), &w)| json!({"source": u, "target": v, "weight": w}))
        .collect();
    json!({
        "vertices": t.vertices,
        "edges": edges,
        "genus": t.genus,
        "r": d.r,
        "l": d.l,
        "marking": m.0,
    })
}
