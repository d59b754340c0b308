//! Regions of a connected diagram and their checkerboard colouring.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, EdgeId};
use crate::error::{Error, Result};

/// A region of the diagram; also a generator of the presentation. 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId(pub u32);

impl FaceId {
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Side of an oriented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    corners: Vec<(EdgeId, Side)>,
}

impl Face {
    /// Boundary as a cyclic list of (edge, side of that edge).
    pub fn corners(&self) -> &[(EdgeId, Side)] {
        &self.corners
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    faces: Vec<Face>,
    corner_faces: Vec<[FaceId; 4]>,
    edge_faces: Vec<[FaceId; 2]>,
}

impl FaceSet {
    /// Trace the faces of a connected diagram. Faces are numbered in order of
    /// first appearance scanning edges upward, left side before right.
    pub fn trace(d: &Diagram) -> Result<FaceSet> {
        if !d.is_connected() {
            return Err(Error::NotConnected);
        }
        if d.crossing_count() == 0 {
            let e = d.components()[0].base_arc();
            return Ok(FaceSet {
                faces: vec![
                    Face {
                        corners: vec![(e, Side::Left)],
                    },
                    Face {
                        corners: vec![(e, Side::Right)],
                    },
                ],
                corner_faces: Vec::new(),
                edge_faces: vec![[FaceId(1), FaceId(2)]],
            });
        }
        let (cycles, count) = d.corner_cycles();
        let mut id_of = vec![None::<FaceId>; count];
        let mut next = 1;
        let mut edge_faces = Vec::with_capacity(d.edge_count());
        for e in 1..=d.edge_count() as EdgeId {
            let (t, h) = (d.tail(e), d.head(e));
            let mut pair = [FaceId(0); 2];
            for (i, s) in [t, h].into_iter().enumerate() {
                let c = cycles[s.crossing][s.pos];
                pair[i] = *id_of[c].get_or_insert_with(|| {
                    next += 1;
                    FaceId(next - 1)
                });
            }
            edge_faces.push(pair);
        }
        let corner_faces: Vec<[FaceId; 4]> = cycles
            .iter()
            .map(|f| f.map(|c| id_of[c].expect("every corner lies on an edge")))
            .collect();

        // Walk each face boundary from its first (edge, side) in scan order.
        let mut faces = vec![Face { corners: Vec::new() }; count];
        let mut started = vec![false; count];
        for e in 1..=d.edge_count() as EdgeId {
            for start in [d.tail(e), d.head(e)] {
                let fid = corner_faces[start.crossing][start.pos];
                if started[fid.index()] {
                    continue;
                }
                started[fid.index()] = true;
                let mut cur = start;
                loop {
                    let edge = d.edge_at(cur);
                    let side = if d.tail(edge) == cur { Side::Left } else { Side::Right };
                    faces[fid.index()].corners.push((edge, side));
                    let arrive = d.across(cur);
                    cur = crate::diagram::Slot::new(arrive.crossing, arrive.pos + 3);
                    if cur == start {
                        break;
                    }
                }
            }
        }
        Ok(FaceSet {
            faces,
            corner_faces,
            edge_faces,
        })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn ids(&self) -> impl Iterator<Item = FaceId> {
        (1..=self.faces.len() as u32).map(FaceId)
    }

    /// Face at the corner of crossing `k` between slots `q` and `q + 1`.
    pub fn corner(&self, k: usize, q: usize) -> FaceId {
        self.corner_faces[k][q % 4]
    }

    pub fn corners_of(&self, k: usize) -> [FaceId; 4] {
        self.corner_faces[k]
    }

    pub fn side_of(&self, e: EdgeId, side: Side) -> FaceId {
        let pair = self.edge_faces[(e - 1) as usize];
        match side {
            Side::Left => pair[0],
            Side::Right => pair[1],
        }
    }

    pub fn left_of(&self, e: EdgeId) -> FaceId {
        self.side_of(e, Side::Left)
    }

    pub fn right_of(&self, e: EdgeId) -> FaceId {
        self.side_of(e, Side::Right)
    }

    /// (left, right) for every edge, indexed from edge 1.
    pub fn edge_sides(&self) -> impl Iterator<Item = (EdgeId, FaceId, FaceId)> + '_ {
        self.edge_faces
            .iter()
            .enumerate()
            .map(|(i, p)| (i as EdgeId + 1, p[0], p[1]))
    }
}

/// Free function form of [`FaceSet::trace`].
pub fn trace_faces(d: &Diagram) -> Result<FaceSet> {
    FaceSet::trace(d)
}

/// Colour of a face; also the parity of the matching generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Colour {
    White,
    Black,
}

pub type Parity = Colour;

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::White => Colour::Black,
            Colour::Black => Colour::White,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Colour::White => 'W',
            Colour::Black => 'B',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    colours: Vec<Colour>,
}

impl Colouring {
    /// The proper 2-colouring in which the face left of edge 1 is white.
    pub fn checkerboard(f: &FaceSet) -> Colouring {
        let n = f.len();
        let mut adj = vec![Vec::new(); n];
        for (_, l, r) in f.edge_sides() {
            adj[l.index()].push(r.index());
            adj[r.index()].push(l.index());
        }
        let mut colours = vec![None; n];
        let root = f.edge_faces.first().map(|p| p[0].index()).unwrap_or(0);
        for start in std::iter::once(root).chain(0..n) {
            if colours[start].is_some() {
                continue;
            }
            colours[start] = Some(Colour::White);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let c = colours[x].expect("queued faces are coloured");
                for &y in &adj[x] {
                    if colours[y].is_none() {
                        colours[y] = Some(c.other());
                        queue.push_back(y);
                    }
                }
            }
        }
        Colouring {
            colours: colours.into_iter().map(|c| c.expect("all faces reached")).collect(),
        }
    }

    pub fn colour(&self, f: FaceId) -> Colour {
        self.colours[f.index()]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    /// Adjacent faces always differ.
    pub fn is_proper(&self, f: &FaceSet) -> bool {
        f.edge_sides().all(|(_, l, r)| self.colour(l) != self.colour(r))
    }

    pub fn swapped(&self) -> Colouring {
        Colouring {
            colours: self.colours.iter().map(|c| c.other()).collect(),
        }
    }

    /// The normalization rule: the face left of the lowest edge is white.
    pub fn is_normalized(&self, f: &FaceSet) -> bool {
        f.edge_faces.first().is_none_or(|p| self.colour(p[0]) == Colour::White)
    }
}

/// Free function form of [`Colouring::checkerboard`].
pub fn checkerboard(f: &FaceSet) -> Colouring {
    Colouring::checkerboard(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn faces_of(text: &str) -> (Diagram, FaceSet) {
        let d = parse_pd(text).unwrap();
        let f = FaceSet::trace(&d).unwrap();
        (d, f)
    }

    /// Exhaustive oracle: enumerate all 2^F colourings and keep the proper ones.
    fn proper_colourings(f: &FaceSet) -> usize {
        let n = f.len();
        (0..1u32 << n)
            .filter(|mask| {
                f.edge_sides()
                    .all(|(_, l, r)| (mask >> l.index() & 1) != (mask >> r.index() & 1))
            })
            .count()
    }

    #[test]
    fn euler_counts() {
        for (text, c) in [
            ("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]", 3),
            ("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]", 4),
            ("PD[X(2,2,1,1)]", 1),
        ] {
            let (_, f) = faces_of(text);
            assert_eq!(f.len(), c + 2, "{text}");
        }
    }

    #[test]
    fn every_edge_side_in_exactly_one_face() {
        let (d, f) = faces_of("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]");
        let mut seen = std::collections::BTreeSet::new();
        for face in f.faces() {
            for &c in face.corners() {
                assert!(seen.insert(c), "{c:?} twice");
            }
        }
        assert_eq!(seen.len(), 2 * d.edge_count());
        for (e, l, r) in f.edge_sides() {
            assert!(f.faces()[l.index()].corners().contains(&(e, Side::Left)));
            assert!(f.faces()[r.index()].corners().contains(&(e, Side::Right)));
        }
    }

    #[test]
    fn trefoil_colouring_is_proper_and_unique_up_to_swap() {
        let (_, f) = faces_of("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]");
        let col = Colouring::checkerboard(&f);
        assert!(col.is_proper(&f));
        assert!(col.is_normalized(&f));
        let swapped = col.swapped();
        assert!(swapped.is_proper(&f));
        assert!(!swapped.is_normalized(&f));
        assert_eq!(proper_colourings(&f), 2);
        // three bigons share a colour, the two triangles the other
        let white = col.colours().iter().filter(|&&c| c == Colour::White).count();
        assert!(white == 2 || white == 3);
    }

    #[test]
    fn kink_colouring() {
        let (_, f) = faces_of("PD[X(2,2,1,1)]");
        let col = Colouring::checkerboard(&f);
        assert_eq!(f.len(), 3);
        assert!(col.is_proper(&f));
        assert_eq!(proper_colourings(&f), 2);
    }

    #[test]
    fn corners_alternate_around_crossings() {
        let (d, f) = faces_of("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]");
        let col = Colouring::checkerboard(&f);
        for k in 0..d.crossing_count() {
            for q in 0..4 {
                assert_ne!(col.colour(f.corner(k, q)), col.colour(f.corner(k, q + 1)));
            }
        }
    }

    #[test]
    fn single_circle_has_two_faces() {
        let d = parse_pd("PD[O]").unwrap();
        let f = FaceSet::trace(&d).unwrap();
        assert_eq!(f.len(), 2);
        let col = Colouring::checkerboard(&f);
        assert!(col.is_proper(&f));
    }

    #[test]
    fn disconnected_is_rejected() {
        let d = parse_pd("PD[O, O]").unwrap();
        assert_eq!(FaceSet::trace(&d), Err(Error::NotConnected));
    }
}
