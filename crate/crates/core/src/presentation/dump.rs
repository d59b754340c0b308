//! Plain-text dump of a presentation.
//!
//! ```text
//! gen 1 parity W
//! gen 2 parity B
//! rel 3 -2 1 -4
//! ```
//!
//! Generator lines come first, with ids `1..=n` in order; blank lines and
//! `#` comments are ignored.

use std::fmt::Write as _;

use super::{Presentation, Relator};
use crate::error::{Error, Result};
use crate::faces::Parity;
use crate::word::parse_signed_ids;

impl Presentation {
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for (g, p) in self.generators() {
            writeln!(out, "gen {g} parity {}", p.letter()).expect("writing to a String");
        }
        for r in self.base_relators() {
            writeln!(out, "rel {r}").expect("writing to a String");
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Presentation> {
        let mut parities = Vec::new();
        let mut relators: Vec<[i64; 4]> = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let pos = offset;
            offset += line.len();
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { pos, msg };
            let mut toks = body.split_whitespace();
            match toks.next() {
                Some("gen") => {
                    if !relators.is_empty() {
                        return Err(err("generator listed after relators".into()));
                    }
                    let fields: Vec<&str> = toks.collect();
                    let [id, "parity", p] = fields[..] else {
                        return Err(err(format!("expected `gen <id> parity <W|B>`, found `{body}`")));
                    };
                    if id.parse::<usize>().ok() != Some(parities.len() + 1) {
                        return Err(err(format!("expected generator {}, found `{id}`", parities.len() + 1)));
                    }
                    parities.push(match p {
                        "W" => Parity::White,
                        "B" => Parity::Black,
                        _ => return Err(err(format!("parity must be W or B, found `{p}`"))),
                    });
                }
                Some("rel") => {
                    let rest = &body[3..];
                    let ids = parse_signed_ids(rest).map_err(|e| err(e.to_string()))?;
                    let r: [i64; 4] = ids
                        .try_into()
                        .map_err(|_| err("a relator has exactly four letters".into()))?;
                    relators.push(r);
                }
                _ => return Err(err(format!("unrecognized line `{body}`"))),
            }
        }
        Presentation::from_signed(parities, &relators)
    }
}

impl Relator {
    /// Signed generator ids.
    pub fn to_signed(&self) -> [i64; 4] {
        self.letters.map(|l| l.to_signed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn round_trip() {
        let d = parse_pd("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]").unwrap();
        let p = Presentation::of_diagram(&d).unwrap();
        let text = p.to_dump();
        assert!(text.starts_with("gen 1 parity W\n"));
        assert_eq!(text.lines().filter(|l| l.starts_with("rel ")).count(), 4);
        let back = Presentation::from_dump(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.symmetrized(), p.symmetrized());
    }

    #[test]
    fn malformed_dumps() {
        for bad in [
            "gen 2 parity W\n",
            "gen 1 parity X\n",
            "gen 1 parity W\nrel 1 -1\n",
            "gen 1 parity W\nrel 1 -2 1 -2\n",
            "gen 1 parity W\nrel 1 -1 1 -1\ngen 2 parity B\n",
            "relator 1\n",
        ] {
            assert!(Presentation::from_dump(bad).is_err(), "{bad:?}");
        }
        let ok = Presentation::from_dump("# comment\ngen 1 parity W\n\ngen 2 parity B\nrel 1 -2 1 -2\n");
        assert_eq!(ok.unwrap().symmetrized().len(), 4);
    }
}
