//! PD text grammar and the structured (JSON) diagram file.
//!
//! ```text
//! diagram := "PD" "[" [ item { "," item } ] "]"
//! item    := "O" | "X" open int "," int "," int "," int close
//! open    := "(" | "["        close := ")" | "]"
//! ```
//!
//! Whitespace is allowed between tokens; lines starting with `#` are ignored.

use serde::{Deserialize, Serialize};

use super::{Diagram, EdgeId};
use crate::error::{Error, Result};

/// Structured alternative to PD text: `{"crossings": [[1,4,2,5], ...], "circles": 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub crossings: Vec<[EdgeId; 4]>,
    #[serde(default)]
    pub circles: usize,
}

impl From<&Diagram> for DiagramFile {
    fn from(d: &Diagram) -> Self {
        DiagramFile {
            crossings: d.tuples(),
            circles: d.circle_count(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else if c == b'#' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, options: &[u8]) -> Result<u8> {
        match self.peek() {
            Some(c) if options.contains(&c) => {
                self.pos += 1;
                Ok(c)
            }
            Some(c) => self.err(format!(
                "expected one of {:?}, found {:?}",
                options.iter().map(|&b| b as char).collect::<String>(),
                c as char
            )),
            None => self.err("unexpected end of input"),
        }
    }

    fn int(&mut self) -> Result<EdgeId> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a positive integer edge label");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<EdgeId>() {
            Ok(0) => Err(Error::Parse {
                pos: start,
                msg: "edge labels must be positive".into(),
            }),
            Ok(v) => Ok(v),
            Err(_) => Err(Error::Parse {
                pos: start,
                msg: "edge label out of range".into(),
            }),
        }
    }
}

/// Parse raw PD text into crossing tuples and a circle count, without
/// diagram validation.
pub(crate) fn parse_tuples(text: &str) -> Result<(Vec<[EdgeId; 4]>, usize)> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    lx.expect(b"P")?;
    if lx.src.get(lx.pos) != Some(&b'D') {
        return lx.err("expected `PD[`");
    }
    lx.pos += 1;
    lx.expect(b"[")?;
    let mut tuples = Vec::new();
    let mut circles = 0;
    if lx.peek() == Some(b']') {
        lx.pos += 1;
    } else {
        loop {
            match lx.expect(b"XO")? {
                b'O' => circles += 1,
                _ => {
                    let open = lx.expect(b"([")?;
                    let mut t = [0; 4];
                    for (i, slot) in t.iter_mut().enumerate() {
                        if i > 0 {
                            lx.expect(b",")?;
                        }
                        *slot = lx.int()?;
                    }
                    lx.expect(if open == b'(' { b")" } else { b"]" })?;
                    tuples.push(t);
                }
            }
            if lx.expect(b",]")? == b']' {
                break;
            }
        }
    }
    if lx.peek().is_some() {
        return lx.err("trailing input after `]`");
    }
    Ok((tuples, circles))
}

/// Parse and validate PD text.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let (tuples, circles) = parse_tuples(text)?;
    Diagram::new(&tuples, circles)
}

/// Parse either PD text or the structured JSON form (detected by a leading `{`).
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    if text.trim_start().starts_with('{') {
        let file: DiagramFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("structured diagram: {e}"),
        })?;
        Diagram::new(&file.crossings, file.circles)
    } else {
        parse_pd(text)
    }
}
