//! Words over face generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::Sign;
use crate::error::{Error, Result};
use crate::faces::{FaceId, Parity};

/// A generator or its inverse. Parity belongs to the generator, so a letter
/// and its inverse share it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: FaceId,
    pub sign: Sign,
    pub parity: Parity,
}

impl Letter {
    pub fn new(gen: FaceId, sign: Sign, parity: Parity) -> Letter {
        Letter { gen, sign, parity }
    }

    pub fn pos(gen: FaceId, parity: Parity) -> Letter {
        Letter::new(gen, Sign::Pos, parity)
    }

    pub fn neg(gen: FaceId, parity: Parity) -> Letter {
        Letter::new(gen, Sign::Neg, parity)
    }

    pub fn inverse(self) -> Letter {
        Letter {
            sign: self.sign.flipped(),
            ..self
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }

    /// Signed face id, as in the text format.
    pub fn to_signed(self) -> i64 {
        self.sign.value() * i64::from(self.gen.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed())
    }
}

/// A finite sequence of letters; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self^n`; negative powers use the inverse.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Cancel adjacent inverse pairs until none remain.
    pub fn free_reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.is_inverse_of(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].is_inverse_of(p[1]))
    }

    /// Positions where the parity of consecutive letters differs.
    pub fn parity_changes(&self) -> usize {
        self.letters.windows(2).filter(|p| p[0].parity != p[1].parity).count()
    }

    /// Total exponent of every generator, indexed by `FaceId::index`.
    pub fn exponent_vector(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for l in &self.letters {
            v[l.gen.index()] += l.sign.value();
        }
        v
    }

    /// Cyclic rotation starting at letter `i`.
    pub fn rotated(&self, i: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(i % self.letters.len());
        }
        Word { letters }
    }

    /// Signed face ids.
    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.letters[i]
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    /// Parities are not part of the text form; deserialized letters are
    /// marked white and must be re-attached to a presentation for parity.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let text = String::deserialize(d)?;
        let ids = parse_signed_ids(&text).map_err(serde::de::Error::custom)?;
        Ok(ids
            .into_iter()
            .map(|x| {
                let sign = if x < 0 { Sign::Neg } else { Sign::Pos };
                Letter::new(FaceId(x.unsigned_abs() as u32), sign, Parity::White)
            })
            .collect())
    }
}

/// Parse whitespace-separated nonzero signed integers.
pub fn parse_signed_ids(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let pos = text[offset..].find(tok).map_or(offset, |p| p + offset);
        offset = pos + tok.len();
        let v: i64 = tok.parse().map_err(|_| Error::Parse {
            pos,
            msg: format!("`{tok}` is not a signed face id"),
        })?;
        if v == 0 || v.unsigned_abs() > u64::from(u32::MAX) {
            return Err(Error::Parse {
                pos,
                msg: format!("face id `{tok}` out of range"),
            });
        }
        out.push(v);
    }
    Ok(out)
}
