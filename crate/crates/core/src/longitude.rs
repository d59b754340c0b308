//! Meridians, blackboard doubles and longitude words.
//!
//! A loop that dips below the projection plane through a face and comes back
//! up through another is recorded as that face (going down) followed by the
//! inverse of the other (coming up). The push-off of a component only leaves
//! the plane where the component passes under, so its word has two letters
//! per under-passage.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, EdgeId, Sign};
use crate::error::{Error, Result};
use crate::faces::{Colouring, FaceId, FaceSet, Side};
use crate::presentation::Presentation;
use crate::solver::geodesic_reduce;
use crate::word::{Letter, Word};

/// States explored by [`normal_form`] before giving up.
pub const NORMAL_FORM_BUDGET: usize = 100_000;

pub type PushOff = Side;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongitudeRep {
    pub component: usize,
    pub side: PushOff,
    pub base_arc: EdgeId,
    pub slk: i64,
    pub double_length: usize,
    pub double_word: Word,
    pub meridian_word: Word,
    pub longitude_word: Word,
}

fn letter(col: &Colouring, f: FaceId, sign: Sign) -> Letter {
    Letter::new(f, sign, col.colour(f))
}

/// The word of the push-off of `comp` on `side`, starting at its base arc.
pub fn double_word(d: &Diagram, f: &FaceSet, col: &Colouring, comp: usize, side: PushOff) -> Result<Word> {
    let component = d.component(comp)?;
    if !d.is_connected() {
        return Err(Error::PreconditionViolated(
            "longitudes need a connected diagram".into(),
        ));
    }
    let mut w = Word::empty();
    if component.is_circle() {
        return Ok(w);
    }
    for &e in component.edges() {
        let h = d.head(e);
        if h.pos != 0 {
            continue;
        }
        let k = h.crossing;
        let (down, up) = match side {
            Side::Left => (f.corner(k, 3), f.corner(k, 2)),
            Side::Right => (f.corner(k, 0), f.corner(k, 1)),
        };
        w.push(letter(col, down, Sign::Pos));
        w.push(letter(col, up, Sign::Neg));
    }
    Ok(w)
}

/// Down through the face right of `arc`, up through the face on its left.
pub fn meridian_word(d: &Diagram, f: &FaceSet, col: &Colouring, comp: usize, arc: EdgeId) -> Result<Word> {
    if !d.component(comp)?.contains(arc) {
        return Err(Error::ArcNotOnComponent { arc, component: comp });
    }
    Ok(Word::from_letters(vec![
        letter(col, f.right_of(arc), Sign::Pos),
        letter(col, f.left_of(arc), Sign::Neg),
    ]))
}

/// Longitude of `comp` from the left push-off, based at the lowest edge.
pub fn longitude_word(d: &Diagram, f: &FaceSet, col: &Colouring, comp: usize) -> Result<LongitudeRep> {
    longitude_on_side(d, f, col, comp, Side::Left)
}

/// `double · meridian^(-slk)`, freely reduced.
pub fn longitude_on_side(
    d: &Diagram,
    f: &FaceSet,
    col: &Colouring,
    comp: usize,
    side: PushOff,
) -> Result<LongitudeRep> {
    let double = double_word(d, f, col, comp, side)?;
    let base_arc = d.component(comp)?.base_arc();
    let meridian = meridian_word(d, f, col, comp, base_arc)?;
    let slk = d.self_linking(comp);
    let longitude = double.concat(&meridian.pow(-slk)).free_reduced();
    Ok(LongitudeRep {
        component: comp,
        side,
        base_arc,
        slk,
        double_length: double.len(),
        double_word: double,
        meridian_word: meridian,
        longitude_word: longitude,
    })
}

/// A word equal to the longitude with at most one parity change: the
/// geodesic form, then a breadth-first search over half-relator swaps
/// `a b -> d^-1 c^-1` for symmetrized relators `a b c d`. `None` when the
/// search exhausts `budget` states.
pub fn normal_form(rep: &LongitudeRep, p: &Presentation) -> Result<Option<Word>> {
    normal_form_with_budget(rep, p, NORMAL_FORM_BUDGET)
}

pub fn normal_form_with_budget(rep: &LongitudeRep, p: &Presentation, budget: usize) -> Result<Option<Word>> {
    if !p.small_cancellation().holds() {
        return Err(Error::PreconditionViolated(
            "normal forms need a C(4)-T(4) presentation".into(),
        ));
    }
    let start = geodesic_reduce(&rep.longitude_word, p);
    if start.parity_changes() <= 1 {
        return Ok(Some(start));
    }
    let sym = p.symmetrized();
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            for &r in p.starting_with_pair(w[i], w[i + 1]) {
                let mut letters = w.letters().to_vec();
                letters[i] = sym[r].letter(3).inverse();
                letters[i + 1] = sym[r].letter(2).inverse();
                let next = Word::from_letters(letters);
                if !next.is_freely_reduced() || seen.contains(&next) {
                    continue;
                }
                if next.parity_changes() <= 1 {
                    return Ok(Some(next));
                }
                if seen.len() >= budget {
                    return Ok(None);
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}
