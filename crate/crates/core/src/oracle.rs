//! Brute-force reference implementations.
//!
//! Nothing here reuses the enumeration, multiplicity or lattice code paths.
//! Marked diagrams are generated as index-keyed slot lists (one slot per
//! marking index), bb weights by a plain grid scan, and the multiplicity is
//! evaluated directly on the slots. A slot list is a canonical form of a marked
//! diagram up to equivalence, so no deduplication is needed.
//! Single threaded; callers shard.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::diagram::{Block, Element, Marking, MultiplicityWindow, WeightedFloorDiagram, Xi};
use crate::lattice::VectorConfiguration;
use crate::polygon::Sides;
use crate::seq::Seq;
use crate::Count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Slot {
    Black,
    /// Attached black slot and divergence.
    White(usize, i64),
    /// Endpoint slots and weight.
    Edge(usize, usize, i64),
}

struct Layout {
    nl: usize,
    nr: usize,
    n: usize,
}

fn windows(single: &Seq, paired: &Seq, sign: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for j in 1..=single.max_index() {
        for _ in 0..single.get(j) {
            out.push(sign * j as i64);
        }
    }
    for j in 1..=paired.max_index() {
        for _ in 0..2 * paired.get(j) {
            out.push(sign * j as i64);
        }
    }
    out
}

fn multiset_orders<T: Clone + Ord>(items: &[T]) -> Vec<Vec<T>> {
    let mut sorted = items.to_vec();
    sorted.sort();
    let mut out = Vec::new();
    let mut used = vec![false; sorted.len()];
    fn rec<T: Clone + Ord>(s: &[T], used: &mut [bool], cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == s.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..s.len() {
            if used[i] || (i > 0 && s[i] == s[i - 1] && !used[i - 1]) {
                continue;
            }
            used[i] = true;
            cur.push(s[i].clone());
            rec(s, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    rec(&sorted, &mut used, &mut Vec::new(), &mut out);
    out
}

/// Every marked diagram of the fibre, as slot lists.
fn marked_slots(sides: &Sides, g: usize, xi: &Xi) -> (Layout, Vec<Vec<Slot>>) {
    let left = windows(&xi.alpha_t, &xi.gamma_t, 1);
    let right = windows(&xi.alpha, &xi.gamma, -1);
    let mut center: Vec<i64> = Vec::new();
    for j in 1..=xi.beta.max_index().max(xi.delta.max_index()) {
        for _ in 0..xi.beta.get(j) + 2 * xi.delta.get(j) {
            center.push(-(j as i64));
        }
    }
    for j in 1..=xi.beta_t.max_index().max(xi.delta_t.max_index()) {
        for _ in 0..xi.beta_t.get(j) + 2 * xi.delta_t.get(j) {
            center.push(j as i64);
        }
    }
    let a = sides.a();
    let n_bb = a + g - 1;
    let (nl, nr, n2) = (left.len(), right.len(), center.len());
    let n = nl + nr + n2 + a + n_bb;
    let layout = Layout { nl, nr, n };
    let mut out = Vec::new();
    if a == 0 {
        return (layout, out);
    }
    let dm = sides.direction_multisets();
    let rs = multiset_orders(&dm.d_r);
    let ls = multiset_orders(&dm.d_l);
    let bound: i64 = left.iter().chain(&center).filter(|&&v| v > 0).sum::<i64>()
        + rs.first().map_or(0, |r| r.iter().map(|v| v.abs()).sum::<i64>())
        + ls.first().map_or(0, |l| l.iter().map(|v| v.abs()).sum::<i64>());

    // kinds: 0 black, 1 white, 2 edge
    let mut kinds = vec![0u8; a];
    kinds.extend(std::iter::repeat(1).take(n2));
    kinds.extend(std::iter::repeat(2).take(n_bb));
    let values = multiset_orders(&center);

    for r in &rs {
        for l in &ls {
            let target: Vec<i64> = r.iter().zip(l).map(|(x, y)| x - y).collect();
            for seq in multiset_orders(&kinds) {
                let pos = |p: usize| nl + p;
                let blacks: Vec<usize> = (0..seq.len()).filter(|&p| seq[p] == 0).map(pos).collect();
                let whites: Vec<usize> = (0..seq.len()).filter(|&p| seq[p] == 1).map(pos).collect();
                let edges: Vec<usize> = (0..seq.len()).filter(|&p| seq[p] == 2).map(pos).collect();
                // endpoints of each edge slot
                let mut ends: Vec<Vec<(usize, usize)>> = Vec::new();
                for &e in &edges {
                    let opts: Vec<(usize, usize)> = blacks
                        .iter()
                        .flat_map(|&u| blacks.iter().map(move |&v| (u, v)))
                        .filter(|&(u, v)| u < e && e < v)
                        .collect();
                    ends.push(opts);
                }
                if ends.iter().any(Vec::is_empty) {
                    continue;
                }
                for_each_choice(&ends, &mut |edge_ends| {
                    for_each_word(a, n2, &mut |w_att| {
                        for vals in &values {
                            let ok = whites
                                .iter()
                                .zip(w_att)
                                .zip(vals)
                                .all(|((&w, &b), &v)| (w < blacks[b]) == (v > 0));
                            if !ok {
                                continue;
                            }
                            for_each_word(a, nl, &mut |l_att| {
                                for_each_word(a, nr, &mut |r_att| {
                                    let mut slots = vec![Slot::Black; n];
                                    for i in 0..nl {
                                        slots[i] = Slot::White(blacks[l_att[i]], left[i]);
                                    }
                                    for (j, &w) in whites.iter().enumerate() {
                                        slots[w] = Slot::White(blacks[w_att[j]], vals[j]);
                                    }
                                    for i in 0..nr {
                                        slots[n - nr + i] = Slot::White(blacks[r_att[i]], right[i]);
                                    }
                                    scan_weights(&mut slots, &edges, edge_ends, &blacks, &target, bound, &mut out);
                                });
                            });
                        }
                    });
                });
            }
        }
    }
    (layout, out)
}

fn for_each_choice(opts: &[Vec<(usize, usize)>], f: &mut dyn FnMut(&[(usize, usize)])) {
    fn rec(opts: &[Vec<(usize, usize)>], cur: &mut Vec<(usize, usize)>, f: &mut dyn FnMut(&[(usize, usize)])) {
        if cur.len() == opts.len() {
            f(cur);
            return;
        }
        for &o in &opts[cur.len()] {
            cur.push(o);
            rec(opts, cur, f);
            cur.pop();
        }
    }
    rec(opts, &mut Vec::new(), f);
}

fn for_each_word(base: usize, len: usize, f: &mut dyn FnMut(&[usize])) {
    let mut w = vec![0; len];
    loop {
        f(&w);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            w[i] += 1;
            if w[i] < base {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

fn scan_weights(
    slots: &mut [Slot],
    edges: &[usize],
    ends: &[(usize, usize)],
    blacks: &[usize],
    target: &[i64],
    bound: i64,
    out: &mut Vec<Vec<Slot>>,
) {
    let mut w = vec![1i64; edges.len()];
    loop {
        for (j, &e) in edges.iter().enumerate() {
            slots[e] = Slot::Edge(ends[j].0, ends[j].1, w[j]);
        }
        if blacks.iter().zip(target).all(|(&b, &t)| black_divergence(slots, b) == t) {
            out.push(slots.to_vec());
        }
        let mut i = 0;
        loop {
            if i == w.len() {
                return;
            }
            w[i] += 1;
            if w[i] <= bound {
                break;
            }
            w[i] = 1;
            i += 1;
        }
    }
}

fn black_divergence(slots: &[Slot], b: usize) -> i64 {
    let mut d = 0;
    for s in slots {
        match *s {
            Slot::White(att, v) if att == b => d -= v,
            Slot::Edge(u, _, w) if u == b => d += w,
            Slot::Edge(_, v, w) if v == b => d -= w,
            _ => {}
        }
    }
    d
}

/// First (1-based) indices of the s-pairs.
fn pairs(xi: &Xi, s: usize, lay: &Layout) -> Vec<usize> {
    let mut out = Vec::new();
    let at = xi.alpha_t.norm() as usize;
    for j in 0..xi.gamma_t.norm() as usize {
        out.push(at + 2 * j + 1);
    }
    for j in 0..s {
        out.push(lay.nl + 2 * j + 1);
    }
    let start = lay.n - lay.nr + xi.alpha.norm() as usize;
    for j in 0..xi.gamma.norm() as usize {
        out.push(start + 2 * j + 1);
    }
    out
}

fn adjacent(slots: &[Slot], i: usize, j: usize) -> bool {
    let touches = |p: usize, q: usize| match slots[p] {
        Slot::White(b, _) => b == q && slots[q] == Slot::Black,
        Slot::Edge(u, v, _) => (u == q || v == q) && slots[q] == Slot::Black,
        Slot::Black => false,
    };
    touches(i, j) || touches(j, i)
}

fn relabel(s: Slot, rho: &[usize]) -> Slot {
    match s {
        Slot::Black => Slot::Black,
        Slot::White(b, v) => Slot::White(rho[b], v),
        Slot::Edge(u, v, w) => Slot::Edge(rho[u], rho[v], w),
    }
}

/// `μ_s` of one slot list for one member of the class.
fn multiplicity(slots: &[Slot], xi: &Xi, s: usize, lay: &Layout, window: MultiplicityWindow) -> Count {
    let n = slots.len();
    let mut imag = BTreeSet::new();
    let mut rho: Vec<usize> = (0..n).collect();
    for p in pairs(xi, s, lay) {
        let (i, j) = (p - 1, p);
        if !adjacent(slots, i, j) {
            imag.insert(i);
            imag.insert(j);
            rho.swap(i, j);
        }
    }
    let central = lay.nl..n - lay.nr;
    // imaginary central whites must be exactly 2δ and 2δ̃
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for &i in &imag {
        if let (true, Slot::White(_, v)) = (central.contains(&i), slots[i]) {
            if v > 0 {
                pos.push(v as u32);
            } else {
                neg.push((-v) as u32);
            }
        }
    }
    if Seq::counting(pos) != xi.delta_t.scaled(2) || Seq::counting(neg) != xi.delta.scaled(2) {
        return Count::zero();
    }
    // (D, m) against (D, ρ∘m): central slots must agree exactly, outer blocks as multisets
    let moved: Vec<Slot> = (0..n).map(|i| relabel(slots[rho[i]], &rho)).collect();
    if central.clone().any(|i| moved[i] != slots[i]) {
        return Count::zero();
    }
    for block in [0..lay.nl, n - lay.nr..n] {
        let mut a: Vec<Slot> = slots[block.clone()].to_vec();
        let mut b: Vec<Slot> = moved[block].to_vec();
        a.sort();
        b.sort();
        if a != b {
            return Count::zero();
        }
    }
    let cut = lay.nl + 2 * s + usize::from(window == MultiplicityWindow::Shifted);
    let mut mu = Count::one();
    for (i, &sl) in slots.iter().enumerate() {
        let w = match sl {
            Slot::White(_, v) => v.abs(),
            Slot::Edge(_, _, w) => w,
            Slot::Black => continue,
        };
        if !imag.contains(&i) && w % 2 == 0 {
            return Count::zero();
        }
        // 1-based index below the cut, both ends central
        if central.contains(&i) && i + 1 < cut {
            mu *= w;
        }
    }
    let blacks_in = imag.iter().filter(|&&i| slots[i] == Slot::Black).count();
    if (blacks_in / 2) % 2 == 1 {
        mu = -mu;
    }
    mu
}

/// Members of the class of `ξ`: every way to split the central whites into singles and pairs.
fn class(xi: &Xi) -> Vec<Xi> {
    fn splits(b: &Seq, d: &Seq) -> Vec<(Seq, Seq)> {
        let mut out = vec![(Seq::new(), Seq::new())];
        for j in 1..=b.max_index().max(d.max_index()) {
            let total = b.get(j) + 2 * d.get(j);
            out = out
                .into_iter()
                .flat_map(|(nb, nd)| {
                    (0..=total / 2).map(move |dp| {
                        let (mut nb, mut nd) = (nb.clone(), nd.clone());
                        nb.set(j, total - 2 * dp);
                        nd.set(j, dp);
                        (nb, nd)
                    })
                })
                .collect();
        }
        out
    }
    let mut out = Vec::new();
    for (beta, delta) in splits(&xi.beta, &xi.delta) {
        for (beta_t, delta_t) in splits(&xi.beta_t, &xi.delta_t) {
            out.push(Xi { beta: beta.clone(), delta: delta.clone(), beta_t, delta_t, ..xi.clone() });
        }
    }
    out
}

/// The combinatorial number by exhaustive generation, summed over the class of `ξ`.
pub fn brute_invariant(sides: &Sides, g: usize, s: usize, xi: &Xi, window: MultiplicityWindow) -> Count {
    let (lay, all) = marked_slots(sides, g, xi);
    let members = class(xi);
    let mut total = Count::zero();
    for slots in &all {
        for m in &members {
            total += multiplicity(slots, m, s, &lay, window);
        }
    }
    total
}

/// `μ_s` of a given marked diagram, read into slots and evaluated here.
/// Only the marking order, edge weights and white divergences are used.
pub fn brute_multiplicity(d: &WeightedFloorDiagram, m: &Marking, xi: &Xi, s: usize, window: MultiplicityWindow) -> Count {
    let t = d.template();
    let pos = |v: usize| m.0.iter().position(|&e| e == Element::Vertex(v)).expect("vertex is marked");
    let slots: Vec<Slot> = (0..m.len())
        .map(|i| match m.0[i] {
            Element::Vertex(v) if t.vertices()[v].is_black() => Slot::Black,
            Element::Vertex(v) => {
                let (a, b) = t.edges().iter().copied().find(|&(a, b)| a == v || b == v).expect("white has an edge");
                Slot::White(pos(if a == v { b } else { a }), d.divergence(v))
            }
            Element::Edge(e) => {
                let (a, b) = t.edges()[e];
                Slot::Edge(pos(a), pos(b), d.weight(e))
            }
        })
        .collect();
    let nl = t.vertices().iter().filter(|v| v.block == Block::Left).count();
    let nr = t.vertices().iter().filter(|v| v.block == Block::Right).count();
    multiplicity(&slots, xi, s, &Layout { nl, nr, n: slots.len() }, window)
}

/// Number of marked diagrams in the fibre of `ξ`, ignoring multiplicities.
pub fn brute_marked_count(sides: &Sides, g: usize, xi: &Xi) -> usize {
    marked_slots(sides, g, xi).1.len()
}

/// `G` at a point `(x; y; z; w)` by brute force; zero entries give 0.
pub fn brute_g(
    sides: &Sides,
    g: usize,
    s: usize,
    x: &[i64],
    y: &[i64],
    z: &[i64],
    w: &[i64],
    window: MultiplicityWindow,
) -> Count {
    if [x, y, z, w].iter().any(|v| v.contains(&0)) {
        return Count::zero();
    }
    let count = |v: &[i64], positive: bool| {
        Seq::counting(v.iter().filter(|&&e| (e > 0) == positive).map(|e| e.unsigned_abs() as u32))
    };
    let xi = Xi {
        alpha: count(x, false),
        beta: count(y, false),
        gamma: count(z, false),
        delta: count(w, false),
        alpha_t: count(x, true),
        beta_t: count(y, true),
        gamma_t: count(z, true),
        delta_t: count(w, true),
    };
    brute_invariant(sides, g, s, &xi, window)
}

/// `π_X`: 1 when every entry is odd.
pub fn pi_x(z: &[i64]) -> Count {
    Count::from(i64::from(z.iter().all(|v| v.rem_euclid(2) == 1)))
}

/// `π_Y`: `Π_{i∈E} z_i`, zero unless `z_i` is odd for every `i ∉ Y` and positive on `E`.
pub fn pi_y(z: &[i64], e_set: &[usize], y_set: &[usize]) -> Count {
    let mut acc = Count::one();
    for (i, &v) in z.iter().enumerate() {
        if !y_set.contains(&i) && v.rem_euclid(2) != 1 {
            return Count::zero();
        }
        if e_set.contains(&i) {
            if v < 1 {
                return Count::zero();
            }
            acc *= v;
        }
    }
    acc
}

/// `Σ f(z)` over `z >= 0` with `X z = c`, by bounded recursion.
///
/// The bound comes from a small integer functional positive on every column,
/// found by search; returns `None` when none is found in the search box.
pub fn brute_weighted_count(x: &VectorConfiguration, c: &[i64], f: &dyn Fn(&[i64]) -> Count) -> Option<Count> {
    let cols = x.columns();
    let d = x.dim();
    let nonzero: Vec<&Vec<i64>> = cols.iter().filter(|c| c.iter().any(|&v| v != 0)).collect();
    let zero_cols = cols.len() - nonzero.len();
    if zero_cols > 0 {
        // a zero column makes the fibre infinite
        return None;
    }
    let mut y = vec![-4i64; d];
    let func = loop {
        if nonzero.iter().all(|col| col.iter().zip(&y).map(|(a, b)| a * b).sum::<i64>() >= 1) {
            break y.clone();
        }
        let mut i = 0;
        loop {
            if i == d {
                return None;
            }
            y[i] += 1;
            if y[i] <= 4 {
                break;
            }
            y[i] = -4;
            i += 1;
        }
    };
    let weight: Vec<i64> = cols.iter().map(|col| col.iter().zip(&func).map(|(a, b)| a * b).sum()).collect();
    let budget: i64 = c.iter().zip(&func).map(|(a, b)| a * b).sum();
    let mut total = Count::zero();
    let mut z = vec![0i64; cols.len()];
    fn rec(
        j: usize,
        budget: i64,
        z: &mut Vec<i64>,
        cols: &[Vec<i64>],
        weight: &[i64],
        c: &[i64],
        f: &dyn Fn(&[i64]) -> Count,
        total: &mut Count,
    ) {
        if j == cols.len() {
            let ok = (0..c.len()).all(|r| cols.iter().zip(z.iter()).map(|(col, zi)| col[r] * zi).sum::<i64>() == c[r]);
            if ok {
                *total += f(z);
            }
            return;
        }
        let mut v = 0;
        while v * weight[j] <= budget {
            z[j] = v;
            rec(j + 1, budget - v * weight[j], z, cols, weight, c, f, total);
            v += 1;
        }
        z[j] = 0;
    }
    if budget < 0 {
        return Some(total);
    }
    rec(0, budget, &mut z, &cols, &weight, c, f, &mut total);
    Some(total)
}
