//! Combinatorial link diagrams in planar-diagram (PD) form.
//!
//! A crossing is a 4-tuple of edge labels listed counterclockwise, starting
//! at the incoming under-edge. Positions 0 and 2 carry the under-strand,
//! positions 1 and 3 the over-strand. Every edge label occurs exactly twice.
//! Unknotted circles that meet no crossing are carried as a separate count.

mod pd;
mod prime;
mod reduce;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use pd::{parse_diagram, parse_pd, DiagramFile};

pub type EdgeId = u32;

/// A position on a crossing: which crossing, and which of its four slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub pos: usize,
}

impl Slot {
    pub fn new(crossing: usize, pos: usize) -> Self {
        Slot { crossing, pos: pos % 4 }
    }

    /// The slot on the other end of the same strand through the crossing.
    pub fn opposite(self) -> Slot {
        Slot::new(self.crossing, self.pos + 2)
    }
}

/// A sign: crossing handedness or a letter exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flipped()
    }
}

/// How a component passes through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Passage {
    Under,
    Over,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    edges: [EdgeId; 4],
    sign: Sign,
}

impl Crossing {
    /// Incident edges in counterclockwise order from the incoming under-edge.
    pub fn edges(&self) -> [EdgeId; 4] {
        self.edges
    }

    pub fn edge(&self, pos: usize) -> EdgeId {
        self.edges[pos % 4]
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Position (1 or 3) at which the over-strand enters.
    pub fn over_in(&self) -> usize {
        match self.sign {
            Sign::Pos => 3,
            Sign::Neg => 1,
        }
    }
}

/// One link component: its edges in orientation order. A free circle has a
/// single virtual edge labelled after all crossing edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    edges: Vec<EdgeId>,
    circle: bool,
}

impl Component {
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_circle(&self) -> bool {
        self.circle
    }

    /// Lowest-numbered edge; the base point for longitude words.
    pub fn base_arc(&self) -> EdgeId {
        self.edges[0]
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

/// A validated, oriented link diagram with canonical edge labels.
///
/// Edges of each component are numbered consecutively along its orientation;
/// components are ordered by their lowest original label. Crossing edges are
/// `1..=2c`; free circles follow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    circles: usize,
    tails: Vec<Slot>,
    heads: Vec<Slot>,
    edge_component: Vec<usize>,
    components: Vec<Component>,
}

impl Diagram {
    /// Validate raw PD tuples, resolve orientation and canonicalize labels.
    pub fn new(tuples: &[[EdgeId; 4]], circles: usize) -> Result<Diagram> {
        let mut occ: BTreeMap<EdgeId, Vec<Slot>> = BTreeMap::new();
        for (k, t) in tuples.iter().enumerate() {
            for (p, &e) in t.iter().enumerate() {
                if e == 0 {
                    return Err(Error::Validation("edge labels must be positive".into()));
                }
                occ.entry(e).or_default().push(Slot::new(k, p));
            }
        }
        for (e, slots) in &occ {
            if slots.len() != 2 {
                return Err(Error::Validation(format!(
                    "edge {e} occurs {} time(s), expected exactly 2",
                    slots.len()
                )));
            }
        }
        let label = |s: Slot| tuples[s.crossing][s.pos];
        let other = |s: Slot| -> Slot {
            let v = &occ[&label(s)];
            if v[0] == s {
                v[1]
            } else {
                v[0]
            }
        };

        // Strand cycles as (edge, from, to), followed in an arbitrary direction.
        let mut seen: BTreeSet<Slot> = BTreeSet::new();
        let mut cycles: Vec<Vec<(EdgeId, Slot, Slot)>> = Vec::new();
        for slots in occ.values() {
            let start = slots[0];
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                let next = other(cur);
                seen.insert(cur);
                seen.insert(next);
                cycle.push((label(cur), cur, next));
                let cont = next.opposite();
                if cont == start {
                    break;
                }
                if seen.contains(&cont) {
                    return Err(Error::Validation("strand continuation does not close up".into()));
                }
                cur = cont;
            }
            cycles.push(cycle);
        }

        // Orient each cycle: under-strands run from position 0 to position 2.
        let mut oriented: Vec<Vec<(EdgeId, Slot, Slot)>> = Vec::new();
        for cycle in cycles {
            let (mut fwd, mut bwd) = (0usize, 0usize);
            for &(_, from, to) in &cycle {
                match to.pos {
                    0 => fwd += 1,
                    2 => bwd += 1,
                    _ => {}
                }
                match from.pos {
                    2 => fwd += 1,
                    0 => bwd += 1,
                    _ => {}
                }
            }
            if fwd > 0 && bwd > 0 {
                return Err(Error::Validation(format!(
                    "inconsistent under-strand orientation on the component through edge {}",
                    cycle[0].0
                )));
            }
            let forward = if fwd + bwd > 0 {
                fwd > 0
            } else {
                // Over-strands only: fall back to consecutive numbering.
                let (mut nf, mut nb) = (0usize, 0usize);
                for &(e, _, to) in &cycle {
                    let f = label(to.opposite()) as i64;
                    let e = e as i64;
                    if f - e == 1 || e - f > 1 {
                        nf += 1;
                    } else if e - f == 1 || f - e > 1 {
                        nb += 1;
                    }
                }
                nf >= nb
            };
            let mut seq: Vec<(EdgeId, Slot, Slot)> = if forward {
                cycle
            } else {
                cycle.into_iter().rev().map(|(e, a, b)| (e, b, a)).collect()
            };
            let min_at = seq
                .iter()
                .enumerate()
                .min_by_key(|(_, x)| x.0)
                .map(|(i, _)| i)
                .unwrap_or(0);
            seq.rotate_left(min_at);
            oriented.push(seq);
        }
        oriented.sort_by_key(|seq| seq[0].0);

        let n_edges = occ.len();
        let mut new_tuples = vec![[0 as EdgeId; 4]; tuples.len()];
        let mut tails = vec![Slot::new(0, 0); n_edges];
        let mut heads = vec![Slot::new(0, 0); n_edges];
        let mut edge_component = vec![0usize; n_edges];
        let mut components = Vec::new();
        let mut next: EdgeId = 1;
        for (ci, seq) in oriented.iter().enumerate() {
            let mut edges = Vec::with_capacity(seq.len());
            for &(_, from, to) in seq {
                let e = next;
                next += 1;
                new_tuples[from.crossing][from.pos] = e;
                new_tuples[to.crossing][to.pos] = e;
                tails[(e - 1) as usize] = from;
                heads[(e - 1) as usize] = to;
                edge_component[(e - 1) as usize] = ci;
                edges.push(e);
            }
            components.push(Component { edges, circle: false });
        }
        for _ in 0..circles {
            components.push(Component {
                edges: vec![next],
                circle: true,
            });
            next += 1;
        }

        let crossings = new_tuples
            .iter()
            .enumerate()
            .map(|(k, &edges)| {
                let sign = if heads[(edges[3] - 1) as usize] == Slot::new(k, 3) {
                    Sign::Pos
                } else {
                    Sign::Neg
                };
                Crossing { edges, sign }
            })
            .collect();

        let d = Diagram {
            crossings,
            circles,
            tails,
            heads,
            edge_component,
            components,
        };
        d.check_planar()?;
        Ok(d)
    }

    /// A diagram of `n` disjoint unknotted circles.
    pub fn circles(n: usize) -> Diagram {
        Diagram::new(&[], n).expect("empty PD is valid")
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, k: usize) -> &Crossing {
        &self.crossings[k]
    }

    pub fn circle_count(&self) -> usize {
        self.circles
    }

    /// Number of crossing edges (`2c`); free circles are not counted.
    pub fn edge_count(&self) -> usize {
        self.tails.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: usize) -> Result<&Component> {
        self.components
            .get(id)
            .ok_or_else(|| Error::PreconditionViolated(format!("no component {id}")))
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn tuples(&self) -> Vec<[EdgeId; 4]> {
        self.crossings.iter().map(|c| c.edges).collect()
    }

    /// Slot where crossing edge `e` starts.
    pub fn tail(&self, e: EdgeId) -> Slot {
        self.tails[(e - 1) as usize]
    }

    /// Slot where crossing edge `e` ends.
    pub fn head(&self, e: EdgeId) -> Slot {
        self.heads[(e - 1) as usize]
    }

    pub fn edge_at(&self, s: Slot) -> EdgeId {
        self.crossings[s.crossing].edges[s.pos]
    }

    /// Component containing edge `e` (crossing edge or circle edge).
    pub fn component_of(&self, e: EdgeId) -> Option<usize> {
        if e == 0 {
            return None;
        }
        if let Some(&c) = self.edge_component.get((e - 1) as usize) {
            return Some(c);
        }
        self.components.iter().position(|c| c.circle && c.edges[0] == e)
    }

    /// The slot at the far end of the edge leaving or entering at `s`.
    pub(crate) fn across(&self, s: Slot) -> Slot {
        let e = self.edge_at(s);
        if self.tail(e) == s {
            self.head(e)
        } else {
            self.tail(e)
        }
    }

    /// The passages of a component, in orientation order from its base arc.
    pub fn passages(&self, comp: usize) -> Vec<(usize, Passage)> {
        self.components[comp]
            .edges
            .iter()
            .filter(|&&e| (e as usize) <= self.tails.len())
            .map(|&e| {
                let h = self.head(e);
                let kind = if h.pos.is_multiple_of(2) {
                    Passage::Under
                } else {
                    Passage::Over
                };
                (h.crossing, kind)
            })
            .collect()
    }

    /// Groups of crossings joined by edges.
    pub(crate) fn crossing_groups(&self) -> Vec<Vec<usize>> {
        let n = self.crossings.len();
        let mut group = vec![usize::MAX; n];
        let mut groups = Vec::new();
        for start in 0..n {
            if group[start] != usize::MAX {
                continue;
            }
            let gid = groups.len();
            let mut members = vec![start];
            group[start] = gid;
            let mut queue = VecDeque::from([start]);
            while let Some(k) = queue.pop_front() {
                for p in 0..4 {
                    let o = self.across(Slot::new(k, p)).crossing;
                    if group[o] == usize::MAX {
                        group[o] = gid;
                        members.push(o);
                        queue.push_back(o);
                    }
                }
            }
            members.sort_unstable();
            groups.push(members);
        }
        groups
    }

    /// A single circle, or crossings forming one connected group.
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            self.circles == 1
        } else {
            self.circles == 0 && self.crossing_groups().len() == 1
        }
    }

    /// Cycles of the face permutation on darts. Dart `(k, q)` leaves crossing
    /// `k` along slot `q`; the face on its left is the corner between slots
    /// `q` and `q + 1`. Returns the face index of every corner and the number
    /// of faces. Works on disconnected diagrams (one sphere per group).
    pub(crate) fn corner_cycles(&self) -> (Vec<[usize; 4]>, usize) {
        let n = self.crossings.len();
        let mut face = vec![[usize::MAX; 4]; n];
        let mut count = 0;
        for k in 0..n {
            for q in 0..4 {
                if face[k][q] != usize::MAX {
                    continue;
                }
                let mut cur = Slot::new(k, q);
                while face[cur.crossing][cur.pos] == usize::MAX {
                    face[cur.crossing][cur.pos] = count;
                    let arrive = self.across(cur);
                    cur = Slot::new(arrive.crossing, arrive.pos + 3);
                }
                count += 1;
            }
        }
        (face, count)
    }

    fn check_planar(&self) -> Result<()> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        let (corners, _) = self.corner_cycles();
        for group in self.crossing_groups() {
            let faces: BTreeSet<usize> = group.iter().flat_map(|&k| corners[k].iter().copied()).collect();
            if faces.len() != group.len() + 2 {
                return Err(Error::Validation(format!(
                    "not planar: {} crossings bound {} faces, expected {}",
                    group.len(),
                    faces.len(),
                    group.len() + 2
                )));
            }
        }
        Ok(())
    }

    /// True iff every component passes alternately under and over.
    pub fn is_alternating(&self) -> bool {
        (0..self.components.len()).all(|c| {
            let p = self.passages(c);
            p.iter().zip(p.iter().cycle().skip(1)).all(|((_, a), (_, b))| a != b)
        })
    }

    /// Sum of crossing signs over crossings where both strands lie on `comp`.
    pub fn self_linking(&self, comp: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| {
                self.edge_component[(c.edges[0] - 1) as usize] == comp
                    && self.edge_component[(c.edges[1] - 1) as usize] == comp
            })
            .map(|c| c.sign.value())
            .sum()
    }

    /// Sum of all crossing signs.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    fn switched_tuple(c: &Crossing) -> [EdgeId; 4] {
        let [a, b, cc, d] = c.edges;
        match c.sign {
            // over-strand runs 1 -> 3
            Sign::Neg => [b, cc, d, a],
            // over-strand runs 3 -> 1
            Sign::Pos => [d, a, b, cc],
        }
    }

    /// Swap over and under at crossing `k`.
    pub fn flip_crossing(&self, k: usize) -> Diagram {
        let mut t = self.tuples();
        t[k] = Self::switched_tuple(&self.crossings[k]);
        Diagram::new(&t, self.circles).expect("crossing switch preserves validity")
    }

    /// Swap over and under at every crossing.
    pub fn mirror(&self) -> Diagram {
        let t: Vec<_> = self.crossings.iter().map(Self::switched_tuple).collect();
        Diagram::new(&t, self.circles).expect("mirror preserves validity")
    }

    /// Oriented isomorphism of diagrams on the oriented sphere: a relabelling
    /// along components carrying one PD tuple multiset onto the other.
    /// Exhaustive over component matchings and base points; meant for small
    /// diagrams.
    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        if self.crossings.len() != other.crossings.len() || self.circles != other.circles {
            return false;
        }
        let mine: Vec<&Component> = self.components.iter().filter(|c| !c.circle).collect();
        let theirs: Vec<&Component> = other.components.iter().filter(|c| !c.circle).collect();
        if mine.len() != theirs.len() {
            return false;
        }
        let mut target: Vec<[EdgeId; 4]> = other.tuples();
        target.sort_unstable();
        let mut map = vec![0 as EdgeId; self.tails.len() + 1];
        let mut used = vec![false; theirs.len()];
        self.iso_search(0, &mine, &theirs, &mut used, &mut map, &target)
    }

    fn iso_search(
        &self,
        i: usize,
        mine: &[&Component],
        theirs: &[&Component],
        used: &mut [bool],
        map: &mut [EdgeId],
        target: &[[EdgeId; 4]],
    ) -> bool {
        if i == mine.len() {
            let mut mapped: Vec<[EdgeId; 4]> = self
                .crossings
                .iter()
                .map(|c| c.edges.map(|e| map[e as usize]))
                .collect();
            mapped.sort_unstable();
            return mapped == target;
        }
        let src = &mine[i].edges;
        for j in 0..theirs.len() {
            if used[j] || theirs[j].edges.len() != src.len() {
                continue;
            }
            used[j] = true;
            let dst = &theirs[j].edges;
            for shift in 0..dst.len() {
                for (t, &e) in src.iter().enumerate() {
                    map[e as usize] = dst[(t + shift) % dst.len()];
                }
                if self.iso_search(i + 1, mine, theirs, used, map, target) {
                    return true;
                }
            }
            used[j] = false;
        }
        false
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PD[")?;
        let mut first = true;
        for _ in 0..self.circles {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "O")?;
            first = false;
        }
        for c in &self.crossings {
            if !first {
                write!(f, ", ")?;
            }
            let [a, b, cc, d] = c.edges;
            write!(f, "X({a},{b},{cc},{d})")?;
            first = false;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> Diagram {
        Diagram::new(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0).unwrap()
    }

    pub(crate) fn figure_eight() -> Diagram {
        Diagram::new(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]], 0).unwrap()
    }

    /// Independent strand-tracing oracle: edges joined through a crossing
    /// (slot p to slot p + 2) belong to the same component.
    fn traced_components(tuples: &[[EdgeId; 4]]) -> usize {
        let n = tuples.len() * 2;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for t in tuples {
            for p in 0..2 {
                let (a, b) = (find(&mut parent, t[p] as usize), find(&mut parent, t[p + 2] as usize));
                parent[a] = b;
            }
        }
        (1..=n).filter(|&e| find(&mut parent, e) == e).count()
    }

    #[test]
    fn trefoil_structure() {
        let d = trefoil();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.component_count(), 1);
        assert_eq!(traced_components(&d.tuples()), 1);
        assert_eq!(d.components()[0].edges(), &[1, 2, 3, 4, 5, 6]);
        // standard numbering is preserved by canonicalization
        assert_eq!(d.tuples(), vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]);
        assert!(d.is_connected());
        assert!(d.is_alternating());
    }

    #[test]
    fn under_strands_run_zero_to_two() {
        for d in [trefoil(), figure_eight()] {
            for (k, c) in d.crossings().iter().enumerate() {
                assert_eq!(d.head(c.edge(0)), Slot::new(k, 0));
                assert_eq!(d.tail(c.edge(2)), Slot::new(k, 2));
                assert_eq!(d.head(c.edge(c.over_in())), Slot::new(k, c.over_in()));
            }
        }
    }

    #[test]
    fn trefoil_signs_agree() {
        let d = trefoil();
        let signs: Vec<_> = d.crossings().iter().map(|c| c.sign()).collect();
        assert!(signs.iter().all(|&s| s == signs[0]));
        assert_eq!(d.self_linking(0).abs(), 3);
    }

    #[test]
    fn figure_eight_writhe_zero() {
        let d = figure_eight();
        assert_eq!(d.self_linking(0), 0);
        let pos = d.crossings().iter().filter(|c| c.sign() == Sign::Pos).count();
        assert_eq!(pos, 2);
    }

    #[test]
    fn circle_self_linking_zero() {
        let d = Diagram::circles(1);
        assert_eq!(d.self_linking(0), 0);
        assert!(d.is_alternating());
        assert!(d.is_connected());
        assert_eq!(d.component_count(), 1);
        assert!(d.components()[0].is_circle());
    }

    #[test]
    fn mirror_negates_self_linking() {
        let d = trefoil();
        let m = d.mirror();
        assert_eq!(m.self_linking(0), -d.self_linking(0));
        assert!(m.is_alternating());
        assert_eq!(m.mirror(), d);
    }

    #[test]
    fn flipped_crossing_breaks_alternation() {
        let d = trefoil().flip_crossing(0);
        assert!(!d.is_alternating());
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn rejects_single_occurrence() {
        let err = Diagram::new(&[[1, 4, 2, 5], [3, 6, 4, 1]], 0).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn rejects_inconsistent_orientation() {
        // edge 1 would have to enter two under-strands
        let err = Diagram::new(&[[1, 3, 2, 4], [1, 4, 2, 3]], 0).unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err:?}");
    }

    #[test]
    fn arbitrary_labels_are_canonicalized() {
        let d = Diagram::new(&[[10, 40, 20, 50], [30, 60, 40, 10], [50, 20, 60, 30]], 0).unwrap();
        assert_eq!(d, trefoil());
    }

    #[test]
    fn isomorphism_ignores_base_point() {
        let d = trefoil();
        let shifted: Vec<[EdgeId; 4]> = d.tuples().iter().map(|t| t.map(|e| (e % 6) + 1)).rev().collect();
        let s = Diagram::new(&shifted, 0).unwrap();
        assert!(d.is_isomorphic(&s));
        assert!(!d.is_isomorphic(&d.mirror()));
    }
}
