//! Kauffman bracket, Jones and Conway polynomials of link diagrams.
//!
//! The Jones polynomial follows the convention fixed by
//!
//! ```text
//! V(O) = 1,   V(∅) = (t^{1/2} + t^{-1/2})^{-1},
//! t V(L+) - t^{-1} V(L-) = (t^{1/2} - t^{-1/2}) V(L0),
//! ```
//!
//! which is the classical Jones polynomial with `t -> t^{-1}` and an extra
//! factor `(-1)^{#L-1}`.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::series::{laurent_to_series, rat, BracketPoly, HalfLaurent, Rational, TruncSeries, ZLaurent};

/// Node budget for the Conway resolution tree.
pub const DEFAULT_CONWAY_LIMIT: usize = 1_000_000;

/// Dense integer Laurent polynomial in `A` used inside the contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly {
    low: i64,
    coeffs: Vec<i128>,
}

impl IntPoly {
    fn one() -> Self {
        IntPoly { low: 0, coeffs: vec![1] }
    }

    fn shifted(&self, k: i64) -> Self {
        IntPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    fn add_assign(&mut self, other: &IntPoly) -> Result<()> {
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        if low < self.low || high > self.low + self.coeffs.len() as i64 {
            let mut coeffs = vec![0i128; (high - low) as usize];
            let off = (self.low - low) as usize;
            coeffs[off..off + self.coeffs.len()].copy_from_slice(&self.coeffs);
            self.low = low;
            self.coeffs = coeffs;
        }
        let off = (other.low - self.low) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[off + i];
            *slot = slot.checked_add(*c).ok_or(Error::CoefficientOverflow)?;
        }
        Ok(())
    }

    /// Multiplies by `delta = -A^2 - A^{-2}`.
    fn mul_delta(&self) -> Result<Self> {
        let n = self.coeffs.len();
        let mut coeffs = vec![0i128; n + 4];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].checked_sub(*c).ok_or(Error::CoefficientOverflow)?;
            coeffs[i + 4] = coeffs[i + 4].checked_sub(*c).ok_or(Error::CoefficientOverflow)?;
        }
        Ok(IntPoly { low: self.low - 2, coeffs })
    }

    fn into_laurent(self) -> BracketPoly {
        BracketPoly::from_terms(
            self.coeffs.into_iter().enumerate().map(|(i, c)| (self.low + i as i64, Rational::from_integer(c.into()))),
        )
    }
}

/// Slot pairs joined by the A- and B-smoothings of a crossing `[a, b, c, d]`.
const SMOOTHINGS: [(i64, [(usize, usize); 2]); 2] = [(1, [(0, 1), (2, 3)]), (-1, [(0, 3), (1, 2)])];

/// Order in which crossings are contracted: greedily take the crossing
/// sharing the most arcs with the current boundary.
fn contraction_order(d: &LinkDiagram) -> Vec<usize> {
    let n = d.num_crossings();
    let mut done = vec![false; n];
    let mut open: HashMap<u32, u8> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&c| !done[c])
            .max_by_key(|&c| {
                let x = d.crossings()[c];
                let shared = x.iter().filter(|a| open.contains_key(a)).count() as i64;
                (shared, -(c as i64))
            })
            .unwrap();
        done[best] = true;
        order.push(best);
        for a in d.crossings()[best] {
            let e = open.entry(a).or_insert(0);
            *e += 1;
            if *e == 2 {
                open.remove(&a);
            }
        }
    }
    order
}

/// Boundary pairing on the current frontier plus whether any loop closed yet.
type StateKey = (Vec<u8>, bool);

struct Joined {
    pairing: Vec<u8>,
    loops: u32,
}

/// Glues a smoothed crossing onto a boundary pairing.
fn join(frontier: &[u32], pairing: &[u8], x: [u32; 4], pairs: [(usize, usize); 2], next: &[u32]) -> Joined {
    // Nodes: old frontier arcs first, then arcs new at this crossing.
    let mut nodes: Vec<u32> = frontier.to_vec();
    for a in x {
        if !nodes.contains(&a) {
            nodes.push(a);
        }
    }
    let idx = |a: u32| nodes.iter().position(|&b| b == a).unwrap();
    // Edge k has ends 2k and 2k+1.
    let mut end_node: Vec<usize> = Vec::with_capacity(2 * (frontier.len() / 2 + 2));
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(2); nodes.len()];
    let mut add_edge = |u: usize, v: usize, end_node: &mut Vec<usize>| {
        let e = end_node.len();
        end_node.push(u);
        end_node.push(v);
        adj[u].push(e);
        adj[v].push(e + 1);
    };
    for (i, &p) in pairing.iter().enumerate() {
        if i < p as usize {
            add_edge(i, p as usize, &mut end_node);
        }
    }
    for (p, q) in pairs {
        add_edge(idx(x[p]), idx(x[q]), &mut end_node);
    }

    let mut visited = vec![false; nodes.len()];
    let mut out = vec![0u8; next.len()];
    let walk = |start: usize, visited: &mut Vec<bool>| -> usize {
        // Follow the path or cycle from `start`; returns where it stops.
        let mut node = start;
        let mut leave = adj[start][0];
        loop {
            visited[node] = true;
            let arrive = leave ^ 1;
            node = end_node[arrive];
            if adj[node].len() == 1 || node == start {
                visited[node] = true;
                return node;
            }
            leave = if adj[node][0] == arrive { adj[node][1] } else { adj[node][0] };
        }
    };
    for (i, &a) in next.iter().enumerate() {
        let s = idx(a);
        if visited[s] {
            continue;
        }
        let t = walk(s, &mut visited);
        let j = next.iter().position(|&b| b == nodes[t]).unwrap();
        out[i] = j as u8;
        out[j] = i as u8;
    }
    let mut loops = 0;
    for s in 0..nodes.len() {
        if !visited[s] {
            walk(s, &mut visited);
            loops += 1;
        }
    }
    Joined { pairing: out, loops }
}

/// Kauffman bracket with `<O> = 1`, evaluated by contracting crossings one at
/// a time and merging equal boundary states.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<BracketPoly> {
    if d.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let order = contraction_order(d);
    let mut frontier: Vec<u32> = Vec::new();
    let mut states: HashMap<StateKey, IntPoly> = HashMap::new();
    states.insert((Vec::new(), false), IntPoly::one());

    for &c in &order {
        let x = d.crossings()[c];
        let mut next: Vec<u32> = frontier.clone();
        for a in x {
            if let Some(p) = next.iter().position(|&b| b == a) {
                next.remove(p);
            } else {
                next.push(a);
            }
        }
        next.sort_unstable();
        let mut merged: HashMap<StateKey, IntPoly> = HashMap::with_capacity(states.len() * 2);
        for ((pairing, closed), poly) in &states {
            for (power, pairs) in SMOOTHINGS {
                let j = join(&frontier, pairing, x, pairs, &next);
                let mut p = poly.shifted(power);
                let mut closed = *closed;
                let mut loops = j.loops;
                if loops > 0 && !closed {
                    closed = true;
                    loops -= 1;
                }
                for _ in 0..loops {
                    p = p.mul_delta()?;
                }
                match merged.entry((j.pairing, closed)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign(&p)?,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        states = merged;
        frontier = next;
    }

    let mut total: Option<IntPoly> = None;
    for ((_, closed), poly) in states {
        let mut p = poly;
        let mut free = d.unknotted();
        if !closed {
            // No crossings at all: the first free circle is the normalised one.
            free -= 1;
        }
        for _ in 0..free {
            p = p.mul_delta()?;
        }
        match total.as_mut() {
            Some(t) => t.add_assign(&p)?,
            None => total = Some(p),
        }
    }
    Ok(total.map(IntPoly::into_laurent).unwrap_or_default())
}

/// Jones polynomial in `t^{1/2}` of a nonempty diagram.
pub fn jones(d: &LinkDiagram) -> Result<HalfLaurent> {
    let bracket = kauffman_bracket(d)?;
    let w = d.writhe();
    // (-1)^{#L-1} (-A^3)^{-w} <D>, then A^k = t^{k/4}.
    let sign = if (d.num_components() as i64 - 1 + w).rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = bracket.shift(-3 * w).scale(&rat(sign));
    let mut out = HalfLaurent::zero();
    for (k, c) in normalized.terms() {
        if k % 2 != 0 {
            return Err(Error::MalformedDiagram(format!("bracket exponent {k} is odd after writhe normalisation")));
        }
        out.add_term(k / 2, c.clone());
    }
    Ok(out)
}

/// Expansion of the Jones polynomial about `t = 1`; the empty link gives
/// the expansion of `(t^{1/2} + t^{-1/2})^{-1}`.
pub fn jones_series(d: &LinkDiagram, order: usize) -> Result<TruncSeries> {
    if d.is_empty() {
        return crate::series::delta_series(order).invert();
    }
    Ok(laurent_to_series(&jones(d)?, order))
}

/// First crossing met from below when walking the components in order from
/// their base points.
fn first_ascending_crossing(d: &LinkDiagram) -> Option<usize> {
    let mut seen = vec![false; d.num_crossings()];
    for path in d.paths() {
        for &a in path {
            let (c, s) = d.arc(a).head;
            if !seen[c] {
                seen[c] = true;
                if s == 0 {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Conway polynomial by a skein resolution tree toward descending diagrams.
pub fn conway(d: &LinkDiagram) -> Result<ZLaurent> {
    conway_with_limit(d, DEFAULT_CONWAY_LIMIT)
}

pub fn conway_with_limit(d: &LinkDiagram, limit: usize) -> Result<ZLaurent> {
    let mut nodes = 0usize;
    conway_rec(d, limit, &mut nodes)
}

fn conway_rec(d: &LinkDiagram, limit: usize, nodes: &mut usize) -> Result<ZLaurent> {
    *nodes += 1;
    if *nodes > limit {
        return Err(Error::ResourceLimit(limit));
    }
    let n = d.num_components();
    if n == 0 || (n > 1 && d.split_pieces().len() > 1) {
        return Ok(ZLaurent::zero());
    }
    match first_ascending_crossing(d) {
        None => Ok(if n == 1 { ZLaurent::one() } else { ZLaurent::zero() }),
        Some(c) => {
            // L+ = L- + z L0 and L- = L+ - z L0.
            let sign = d.crossing_sign(c);
            let switched = conway_rec(&d.switch_crossing(c), limit, nodes)?;
            let smoothed = conway_rec(&d.smooth_crossing(c), limit, nodes)?;
            Ok(&switched + &smoothed.shift(1).scale(&rat(sign)))
        }
    }
}

/// `(-1)^{#L-1}` times the coefficient of `z^{#L+1}` in the Conway
/// polynomial; zero for the empty link.
///
/// The sign only matters for links with an even number of components. It is
/// the normalization under which Hoste's Casson sum agrees with Dehn surgery
/// equivalences (for example on the Whitehead link) and `φ_1 = 6 a_2` holds
/// on two-component links.
pub fn a2(d: &LinkDiagram) -> Result<Rational> {
    if d.is_empty() {
        return Ok(Rational::zero());
    }
    let n = d.num_components();
    let c = conway(d)?.coeff(n as i64 + 1);
    Ok(if n.is_multiple_of(2) { -c } else { c })
}

/// Integer value of a polynomial coefficient, for display and checks.
pub fn coefficient_as_i64(p: &ZLaurent, k: i64) -> Option<i64> {
    p.coeff(k).to_integer().to_i64()
}
