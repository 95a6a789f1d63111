//! Oriented framed link diagrams in PD notation.
//!
//! A crossing is a 4-tuple of arc labels listed counterclockwise starting at
//! the incoming under-arc, so the under strand runs from slot 0 to slot 2.
//! A crossing is positive when the over strand enters at slot 3 and negative
//! when it enters at slot 1.
//!
//! Components are ordered by their smallest arc label, followed by the
//! crossing-free components, which PD notation cannot express and are
//! stored as a count.
//!
//! Planarity is not checked: a non-planar PD code yields formally defined
//! but geometrically meaningless invariants.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation, ViolationKind};

/// On-disk link-file schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkFile {
    pub name: String,
    pub components: usize,
    pub framings: Vec<i64>,
    pub crossings: Vec<[u32; 4]>,
    pub unknotted_components: usize,
}

impl LinkFile {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Canonical serialization; parsing it back and re-serializing is byte-identical.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("link file serialization cannot fail")
    }
}

/// Position of an arc end: `(crossing index, slot)`.
pub type Slot = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcInfo {
    pub component: usize,
    /// Where the arc starts.
    pub tail: Slot,
    /// Where the arc ends.
    pub head: Slot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    name: String,
    crossings: Vec<[u32; 4]>,
    framings: Vec<i64>,
    unknotted: usize,
    /// Arcs of each crossing component in traversal order.
    paths: Vec<Vec<u32>>,
    arcs: BTreeMap<u32, ArcInfo>,
}

/// Structural checks on a raw link file. Returns every violation found.
pub fn validate(file: &LinkFile) -> Vec<Violation> {
    match derive(&file.crossings, None) {
        Err(vs) => vs,
        Ok((paths, _)) => {
            let mut vs = Vec::new();
            let total = paths.len() + file.unknotted_components;
            if file.components != total {
                vs.push(Violation {
                    kind: ViolationKind::ComponentCount,
                    detail: format!("declared {} components, crossings and markers give {}", file.components, total),
                });
            }
            if file.framings.len() != file.components {
                vs.push(Violation {
                    kind: ViolationKind::Framings,
                    detail: format!("{} framings for {} components", file.framings.len(), file.components),
                });
            }
            vs
        }
    }
}

fn violation(kind: ViolationKind, detail: String) -> Violation {
    Violation { kind, detail }
}

type Derived = (Vec<Vec<u32>>, BTreeMap<u32, ArcInfo>);

/// Recovers components and arc orientations from the crossing tuples.
///
/// A component that never passes under is oriented by `over_in_at_3` when
/// given (whether each crossing's over strand enters at slot 3), otherwise so
/// that labels increase away from its smallest label.
fn derive(crossings: &[[u32; 4]], over_in_at_3: Option<&[bool]>) -> std::result::Result<Derived, Vec<Violation>> {
    let mut vs = Vec::new();
    let mut occ: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (s, &a) in x.iter().enumerate() {
            if a == 0 {
                vs.push(violation(
                    ViolationKind::ArcLabel,
                    format!("crossing {c} slot {s}: arc labels must be positive"),
                ));
            }
            occ.entry(a).or_default().push((c, s));
        }
    }
    for (a, o) in &occ {
        if o.len() != 2 {
            vs.push(violation(
                ViolationKind::ArcMultiplicity,
                format!("arc {a} appears {} times (expected 2)", o.len()),
            ));
        }
    }
    if !vs.is_empty() {
        return Err(vs);
    }

    let other_end = |a: u32, s: Slot| -> Slot {
        let o = &occ[&a];
        if o[0] == s {
            o[1]
        } else {
            o[0]
        }
    };

    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut raw_paths: Vec<Vec<(u32, Slot, Slot)>> = Vec::new();
    for (&start, o) in &occ {
        if seen.contains(&start) {
            continue;
        }
        // Walk with an arbitrary initial direction: tail o[0], head o[1].
        let mut path = Vec::new();
        let (mut arc, mut tail, mut head) = (start, o[0], o[1]);
        loop {
            if !seen.insert(arc) {
                if arc == start && tail == o[0] {
                    break;
                }
                vs.push(violation(ViolationKind::Orientation, format!("arc {arc} is traversed in both directions")));
                return Err(vs);
            }
            path.push((arc, tail, head));
            let (c, s) = head;
            let next_tail = (c, (s + 2) % 4);
            let next_arc = crossings[c][next_tail.1];
            let next_head = other_end(next_arc, next_tail);
            arc = next_arc;
            tail = next_tail;
            head = next_head;
        }
        raw_paths.push(path);
    }

    let mut paths = Vec::new();
    let mut arcs = BTreeMap::new();
    for mut path in raw_paths {
        let forward = path.iter().filter(|(_, _, h)| h.1 == 0).count();
        let backward = path.iter().filter(|(_, t, _)| t.1 == 0).count();
        let reverse = if forward > 0 && backward > 0 {
            vs.push(violation(
                ViolationKind::Orientation,
                format!("component through arc {} enters some under-crossings at slot 2", path[0].0),
            ));
            continue;
        } else if backward > 0 {
            true
        } else if forward > 0 {
            false
        } else if let Some(hint) = over_in_at_3 {
            let (c, s) = path[0].2;
            hint[c] != (s == 3)
        } else {
            let n = path.len();
            let min_pos = (0..n).min_by_key(|&i| path[i].0).unwrap();
            let next = path[(min_pos + 1) % n].0;
            let prev = path[(min_pos + n - 1) % n].0;
            n > 1 && next != path[min_pos].0 + 1 && prev == path[min_pos].0 + 1
        };
        if reverse {
            path.reverse();
            for p in path.iter_mut() {
                std::mem::swap(&mut p.1, &mut p.2);
            }
        }
        let n = path.len();
        let min_pos = (0..n).min_by_key(|&i| path[i].0).unwrap();
        path.rotate_left(min_pos);
        paths.push(path);
    }
    if !vs.is_empty() {
        return Err(vs);
    }
    paths.sort_by_key(|p| p[0].0);
    let mut labels = Vec::with_capacity(paths.len());
    for (i, path) in paths.iter().enumerate() {
        labels.push(path.iter().map(|p| p.0).collect());
        for &(a, tail, head) in path {
            arcs.insert(a, ArcInfo { component: i, tail, head });
        }
    }
    Ok((labels, arcs))
}

impl TryFrom<LinkFile> for LinkDiagram {
    type Error = Error;

    fn try_from(file: LinkFile) -> Result<Self> {
        let vs = validate(&file);
        if !vs.is_empty() {
            return Err(Error::InvalidDiagram(vs));
        }
        LinkDiagram::new(file.name, file.crossings, file.framings, file.unknotted_components)
    }
}

/// Union-find over arc labels.
#[derive(Default)]
struct ArcUnion {
    parent: BTreeMap<u32, u32>,
}

impl ArcUnion {
    fn find(&mut self, a: u32) -> u32 {
        let p = *self.parent.get(&a).unwrap_or(&a);
        if p == a {
            return a;
        }
        let r = self.find(p);
        self.parent.insert(a, r);
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent.insert(ra.max(rb), ra.min(rb));
        }
    }
}

impl LinkDiagram {
    /// Builds a diagram from PD tuples. `framings` lists the crossing
    /// components (by smallest arc label) followed by the `unknotted` ones.
    pub fn new(
        name: impl Into<String>,
        crossings: Vec<[u32; 4]>,
        framings: Vec<i64>,
        unknotted: usize,
    ) -> Result<Self> {
        Self::from_parts(name, crossings, None, framings, unknotted)
    }

    /// Crossing tuples with known over-strand directions; every component
    /// gets `framing`.
    pub(crate) fn from_tuples_with_hints(
        name: &str,
        crossings: Vec<[u32; 4]>,
        over_in_at_3: &[bool],
        framing: i64,
    ) -> Result<Self> {
        let (paths, _) = derive(&crossings, Some(over_in_at_3)).map_err(Error::InvalidDiagram)?;
        let framings = vec![framing; paths.len()];
        Self::from_parts(name, crossings, Some(over_in_at_3), framings, 0)
    }

    fn from_parts(
        name: impl Into<String>,
        crossings: Vec<[u32; 4]>,
        over_in_at_3: Option<&[bool]>,
        framings: Vec<i64>,
        unknotted: usize,
    ) -> Result<Self> {
        let (paths, arcs) = derive(&crossings, over_in_at_3).map_err(Error::InvalidDiagram)?;
        if framings.len() != paths.len() + unknotted {
            return Err(Error::InvalidDiagram(vec![violation(
                ViolationKind::Framings,
                format!("{} framings for {} components", framings.len(), paths.len() + unknotted),
            )]));
        }
        Ok(LinkDiagram { name: name.into(), crossings, framings, unknotted, paths, arcs })
    }

    pub fn empty() -> Self {
        LinkDiagram {
            name: "empty".into(),
            crossings: Vec::new(),
            framings: Vec::new(),
            unknotted: 0,
            paths: Vec::new(),
            arcs: BTreeMap::new(),
        }
    }

    /// `k` crossing-free circles with the given framing.
    pub fn unlink(k: usize, framing: i64) -> Self {
        LinkDiagram {
            name: if k == 1 { "unknot".into() } else { format!("unlink-{k}") },
            framings: vec![framing; k],
            unknotted: k,
            ..Self::empty()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_framings(mut self, framings: Vec<i64>) -> Result<Self> {
        if framings.len() != self.num_components() {
            return Err(Error::InvalidDiagram(vec![violation(
                ViolationKind::Framings,
                format!("{} framings for {} components", framings.len(), self.num_components()),
            )]));
        }
        self.framings = framings;
        Ok(self)
    }

    pub fn to_file(&self) -> LinkFile {
        LinkFile {
            name: self.name.clone(),
            components: self.num_components(),
            framings: self.framings.clone(),
            crossings: self.crossings.clone(),
            unknotted_components: self.unknotted,
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(&self.to_file())
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_components(&self) -> usize {
        self.paths.len() + self.unknotted
    }

    pub fn is_empty(&self) -> bool {
        self.num_components() == 0
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    /// Number of crossing-free components (stored last).
    pub fn unknotted(&self) -> usize {
        self.unknotted
    }

    /// Arcs of each crossing component in traversal order.
    pub fn paths(&self) -> &[Vec<u32>] {
        &self.paths
    }

    pub fn arc(&self, label: u32) -> &ArcInfo {
        &self.arcs[&label]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, &ArcInfo)> {
        self.arcs.iter().map(|(a, i)| (*a, i))
    }

    fn over_hints(&self) -> Vec<bool> {
        (0..self.num_crossings()).map(|c| self.over_enters_at_3(c)).collect()
    }

    fn max_label(&self) -> u32 {
        self.arcs.keys().next_back().copied().unwrap_or(0)
    }

    /// Whether the over strand at crossing `c` enters at slot 3.
    fn over_enters_at_3(&self, c: usize) -> bool {
        self.arcs[&self.crossings[c][3]].head == (c, 3)
    }

    /// +1 for a right-handed crossing, -1 for a left-handed one.
    pub fn crossing_sign(&self, c: usize) -> i64 {
        if self.over_enters_at_3(c) {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.num_crossings()).map(|c| self.crossing_sign(c)).sum()
    }

    /// Component indices of the under and over strands at crossing `c`.
    pub fn crossing_components(&self, c: usize) -> (usize, usize) {
        let x = &self.crossings[c];
        (self.arcs[&x[0]].component, self.arcs[&x[1]].component)
    }

    /// Sum of crossing signs where both strands belong to `component`.
    pub fn self_writhe(&self, component: usize) -> i64 {
        (0..self.num_crossings())
            .filter(|&c| self.crossing_components(c) == (component, component))
            .map(|c| self.crossing_sign(c))
            .sum()
    }

    /// Linking numbers off the diagonal, framings on it.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.num_components();
        let mut twice = vec![vec![0i64; n]; n];
        for c in 0..self.num_crossings() {
            let (i, j) = self.crossing_components(c);
            if i != j {
                let s = self.crossing_sign(c);
                twice[i][j] += s;
                twice[j][i] += s;
            }
        }
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    m[i][j] = self.framings[i];
                } else if twice[i][j] % 2 != 0 {
                    return Err(Error::MalformedDiagram(format!(
                        "odd signed crossing count {} between components {i} and {j}",
                        twice[i][j]
                    )));
                } else {
                    m[i][j] = twice[i][j] / 2;
                }
            }
        }
        Ok(m)
    }

    pub fn is_algebraically_split(&self) -> Result<bool> {
        let m = self.linking_matrix()?;
        Ok((0..m.len()).all(|i| (0..m.len()).all(|j| i == j || m[i][j] == 0)))
    }

    /// Rebuilds a diagram from crossings whose labels are merged by `uf`,
    /// relabelling arcs consecutively along each component. `framing_of`
    /// gives the framing of the component containing an (old) arc.
    /// Fused classes that no longer meet a crossing become free circles.
    fn rebuild(
        &self,
        crossings: Vec<([u32; 4], bool)>,
        mut uf: ArcUnion,
        framing_of: impl Fn(u32) -> i64,
        mut free: Vec<i64>,
        candidates: impl IntoIterator<Item = u32>,
    ) -> Result<(LinkDiagram, BTreeMap<u32, u32>)> {
        let hints: Vec<bool> = crossings.iter().map(|x| x.1).collect();
        let crossings: Vec<[u32; 4]> = crossings.iter().map(|x| x.0.map(|a| uf.find(a))).collect();
        let present: BTreeSet<u32> = crossings.iter().flatten().copied().collect();
        let mut closed = BTreeSet::new();
        for a in candidates {
            let r = uf.find(a);
            if !present.contains(&r) && closed.insert(r) {
                free.push(framing_of(a));
            }
        }
        let (paths, _) = derive(&crossings, Some(&hints)).map_err(Error::InvalidDiagram)?;
        let mut relabel = BTreeMap::new();
        let mut framings = Vec::with_capacity(paths.len() + free.len());
        let mut next = 1u32;
        for path in &paths {
            framings.push(framing_of(path[0]));
            for &a in path {
                relabel.insert(a, next);
                next += 1;
            }
        }
        let renamed = crossings.iter().map(|x| x.map(|a| relabel[&a])).collect();
        framings.extend(free.iter().copied());
        let unknotted = free.len();
        let d = LinkDiagram::from_parts(self.name.clone(), renamed, Some(&hints), framings, unknotted)?;
        Ok((d, relabel))
    }

    /// Keeps the listed components. Crossings with a removed strand are
    /// dropped and the kept strand is fused through them.
    pub fn sublink(&self, keep: &[usize]) -> LinkDiagram {
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        if (0..self.num_components()).all(|i| keep.contains(&i)) {
            return self.clone();
        }
        let ncross = self.paths.len();
        let mut uf = ArcUnion::default();
        let mut crossings = Vec::new();
        for (c, x) in self.crossings.iter().enumerate() {
            let (under, over) = self.crossing_components(c);
            match (keep.contains(&under), keep.contains(&over)) {
                (true, true) => crossings.push((*x, self.over_enters_at_3(c))),
                (true, false) => uf.union(x[0], x[2]),
                (false, true) => uf.union(x[1], x[3]),
                (false, false) => {}
            }
        }
        let free: Vec<i64> =
            (ncross..self.num_components()).filter(|i| keep.contains(i)).map(|i| self.framings[i]).collect();
        let candidates: Vec<u32> = self
            .paths
            .iter()
            .enumerate()
            .filter(|(i, _)| keep.contains(i))
            .flat_map(|(_, p)| p.iter().copied())
            .collect();
        let framing_of = |a: u32| self.framings[self.arcs[&a].component];
        self.rebuild(crossings, uf, framing_of, free, candidates).expect("sublink of a valid diagram is valid").0
    }

    /// Sublink selected by a bitmask over component indices.
    pub fn sublink_mask(&self, mask: u64) -> LinkDiagram {
        let keep: Vec<usize> = (0..self.num_components()).filter(|i| mask >> i & 1 == 1).collect();
        self.sublink(&keep)
    }

    /// Changes over/under at every crossing. Framings are kept.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = (0..self.num_crossings()).map(|c| self.switched_tuple(c)).collect();
        let hints: Vec<bool> = self.over_hints().iter().map(|h| !h).collect();
        LinkDiagram::from_parts(self.name.clone(), crossings, Some(&hints), self.framings.clone(), self.unknotted)
            .expect("mirror of a valid diagram is valid")
    }

    fn switched_tuple(&self, c: usize) -> [u32; 4] {
        let [a, b, cc, d] = self.crossings[c];
        if self.over_enters_at_3(c) {
            [d, a, b, cc]
        } else {
            [b, cc, d, a]
        }
    }

    /// The same diagram with crossing `c` changed.
    pub fn switch_crossing(&self, c: usize) -> LinkDiagram {
        let mut crossings = self.crossings.clone();
        crossings[c] = self.switched_tuple(c);
        let mut hints = self.over_hints();
        hints[c] = !hints[c];
        LinkDiagram::from_parts(self.name.clone(), crossings, Some(&hints), self.framings.clone(), self.unknotted)
            .expect("crossing change of a valid diagram is valid")
    }

    /// Oriented smoothing of crossing `c`. Component structure changes, so
    /// all framings of the result are 0.
    pub fn smooth_crossing(&self, c: usize) -> LinkDiagram {
        let [a, b, cc, d] = self.crossings[c];
        let mut uf = ArcUnion::default();
        if self.over_enters_at_3(c) {
            uf.union(a, b);
            uf.union(d, cc);
        } else {
            uf.union(a, d);
            uf.union(b, cc);
        }
        let mut crossings: Vec<([u32; 4], bool)> = self.crossings.iter().copied().zip(self.over_hints()).collect();
        crossings.remove(c);
        let free = vec![0; self.unknotted];
        self.rebuild(crossings, uf, |_| 0, free, [a, b, cc, d]).expect("smoothing of a valid diagram is valid").0
    }

    /// Split union; components of `self` keep their indices, those of
    /// `other` follow (crossing-free circles always come last).
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let off = self.max_label();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| x.map(|a| a + off)));
        let mut hints = self.over_hints();
        hints.extend(other.over_hints());
        let (sc, oc) = (self.paths.len(), other.paths.len());
        let mut framings = Vec::with_capacity(self.num_components() + other.num_components());
        framings.extend_from_slice(&self.framings[..sc]);
        framings.extend_from_slice(&other.framings[..oc]);
        framings.extend_from_slice(&self.framings[sc..]);
        framings.extend_from_slice(&other.framings[oc..]);
        let name = if other.is_empty() {
            self.name.clone()
        } else if self.is_empty() {
            other.name.clone()
        } else {
            format!("{}+{}", self.name, other.name)
        };
        LinkDiagram::from_parts(name, crossings, Some(&hints), framings, self.unknotted + other.unknotted)
            .expect("union of valid diagrams is valid")
    }

    /// Groups of component indices that are connected through crossings.
    pub fn split_pieces(&self) -> Vec<Vec<usize>> {
        let n = self.num_components();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for c in 0..self.num_crossings() {
            let (i, j) = self.crossing_components(c);
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// The 0-framed `m`-parallel: a blackboard cable with `-w` full twists
    /// inserted between the copies of each component of self-writhe `w`.
    #[allow(clippy::needless_range_loop)]
    pub fn parallel(&self, m: usize) -> Result<Parallel> {
        if m == 0 {
            return Err(Error::MalformedDiagram("parallel multiplicity must be at least 1".into()));
        }
        let mut next = (self.max_label() + 1) * m as u32 + 1;
        let mut fresh = || {
            next += 1;
            next - 1
        };
        // Copy `a` of arc `e` runs `a`-th from the right of the direction of travel.
        let id = |e: u32, a: usize| (e - 1) * m as u32 + a as u32 + 1;
        let mut head_override: BTreeMap<(u32, usize), u32> = BTreeMap::new();
        let mut origin: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (&e, info) in &self.arcs {
            for a in 0..m {
                origin.insert(id(e, a), (info.component, a));
            }
        }
        let mut crossings: Vec<([u32; 4], bool)> = Vec::new();

        for (comp, path) in self.paths.iter().enumerate() {
            let w = self.self_writhe(comp);
            if w == 0 || m == 1 {
                continue;
            }
            let e0 = path[0];
            let positive = w < 0;
            // Braid columns west to east, strands heading along e0.
            let mut column: Vec<u32> = (0..m).map(|x| id(e0, m - 1 - x)).collect();
            for _ in 0..w.unsigned_abs() {
                for _ in 0..m {
                    for j in 0..m - 1 {
                        let (a_in, b_in) = (column[j], column[j + 1]);
                        let (a_out, b_out) = (fresh(), fresh());
                        origin.insert(a_out, origin[&a_in]);
                        origin.insert(b_out, origin[&b_in]);
                        let x = if positive { [b_in, a_out, b_out, a_in] } else { [a_in, b_in, a_out, b_out] };
                        crossings.push((x, positive));
                        column[j] = b_out;
                        column[j + 1] = a_out;
                    }
                }
            }
            for a in 0..m {
                head_override.insert((e0, a), column[m - 1 - a]);
            }
        }

        let head_id = |e: u32, a: usize| head_override.get(&(e, a)).copied().unwrap_or(id(e, a));
        for (c, x) in self.crossings.iter().enumerate() {
            let positive = self.over_enters_at_3(c);
            let mut v = vec![vec![0u32; m + 1]; m];
            let mut h = vec![vec![0u32; m + 1]; m];
            for a in 0..m {
                v[a][0] = head_id(x[0], a);
                v[a][m] = id(x[2], a);
                let (inc, out) = if positive { (x[3], x[1]) } else { (x[1], x[3]) };
                h[a][0] = head_id(inc, a);
                h[a][m] = id(out, a);
                for k in 1..m {
                    v[a][k] = fresh();
                    origin.insert(v[a][k], origin[&v[a][0]]);
                    h[a][k] = fresh();
                    origin.insert(h[a][k], origin[&h[a][0]]);
                }
            }
            for a in 0..m {
                let col = m - 1 - a;
                for b in 0..m {
                    let row = if positive { b } else { m - 1 - b };
                    let (east, west) =
                        if positive { (h[b][col + 1], h[b][col]) } else { (h[b][m - 1 - col], h[b][m - col]) };
                    crossings.push(([v[a][row], east, v[a][row + 1], west], positive));
                }
            }
        }

        let ncross = self.paths.len();
        let free: Vec<i64> = (ncross..self.num_components()).flat_map(|i| vec![self.framings[i]; m]).collect();
        let framing_of = |a: u32| self.framings[origin[&a].0];
        let (diagram, relabel) = self.rebuild(crossings, ArcUnion::default(), framing_of, free, std::iter::empty())?;

        let mut copies = vec![vec![usize::MAX; m]; self.num_components()];
        for (old, new) in &relabel {
            let (comp, a) = origin[old];
            copies[comp][a] = diagram.arcs[new].component;
        }
        for (k, i) in (ncross..self.num_components()).enumerate() {
            for (a, c) in copies[i].iter_mut().enumerate() {
                *c = diagram.paths.len() + k * m + a;
            }
        }
        let diagram = diagram.with_name(format!("{}^{m}", self.name));
        Ok(Parallel { diagram, copies })
    }
}

/// A 0-framed parallel together with the copy bookkeeping.
#[derive(Clone, Debug)]
pub struct Parallel {
    pub diagram: LinkDiagram,
    /// `copies[i][a]` is the component index of copy `a` of original component `i`.
    pub copies: Vec<Vec<usize>>,
}

impl Parallel {
    /// Component indices of the sublink with `tuple[i]` copies of component `i`.
    pub fn components_for_tuple(&self, tuple: &[usize]) -> Vec<usize> {
        let mut keep: Vec<usize> =
            tuple.iter().enumerate().flat_map(|(i, &k)| self.copies[i][..k].iter().copied()).collect();
        keep.sort_unstable();
        keep
    }

    pub fn mask_for_tuple(&self, tuple: &[usize]) -> u64 {
        self.components_for_tuple(tuple).iter().fold(0, |m, &i| m | 1 << i)
    }
}

/// A ±1-framed algebraically split link, denoting the surgered homology sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    diagram: LinkDiagram,
}

impl SurgeryPresentation {
    pub fn new(diagram: LinkDiagram) -> Result<Self> {
        if let Some(f) = diagram.framings().iter().find(|f| f.abs() != 1) {
            return Err(Error::NotSurgeryPresentation(format!("framing {f} is not +1 or -1")));
        }
        if !diagram.is_algebraically_split()? {
            return Err(Error::NotSurgeryPresentation("some pairwise linking number is nonzero".into()));
        }
        Ok(SurgeryPresentation { diagram })
    }

    /// The empty presentation of the 3-sphere.
    pub fn sphere() -> Self {
        SurgeryPresentation { diagram: LinkDiagram::empty() }
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn num_components(&self) -> usize {
        self.diagram.num_components()
    }

    pub fn name(&self) -> &str {
        self.diagram.name()
    }

    /// Product of the framings of the selected components.
    pub fn framing_product(&self, keep: &[usize]) -> i64 {
        keep.iter().map(|&i| self.diagram.framings()[i]).product()
    }

    /// Sublinks of an ASL are ASLs.
    pub fn sublink(&self, keep: &[usize]) -> SurgeryPresentation {
        SurgeryPresentation { diagram: self.diagram.sublink(keep) }
    }

    /// Orientation-reversed manifold: mirrored diagram, negated framings.
    pub fn mirror(&self) -> SurgeryPresentation {
        let d = self.diagram.mirror();
        let framings = d.framings().iter().map(|f| -f).collect();
        let d = d.with_framings(framings).expect("same component count");
        SurgeryPresentation { diagram: d }
    }

    pub fn disjoint_union(&self, other: &SurgeryPresentation) -> SurgeryPresentation {
        SurgeryPresentation { diagram: self.diagram.disjoint_union(&other.diagram) }
    }

    /// Adds one more ±1-framed component, checking the result is still an ASL.
    pub fn with_component(&self, k: &LinkDiagram) -> Result<SurgeryPresentation> {
        SurgeryPresentation::new(self.diagram.disjoint_union(k))
    }
}

impl TryFrom<LinkDiagram> for SurgeryPresentation {
    type Error = Error;
    fn try_from(d: LinkDiagram) -> Result<Self> {
        SurgeryPresentation::new(d)
    }
}
