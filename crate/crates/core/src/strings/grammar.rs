//! Recursive-descent parser for the word text format.
//!
//! ```text
//! word   := '[' items ']' | items
//! items  := item (sep item)*          sep := '|' or whitespace
//! item   := 'v^inf' | 'v' ('^' int)? | 'e' int | 'a' inv? | '(' path ')' inv? | path inv?
//! path   := label ('*' label)*        labels in composition order, e.g. b1*b0
//! inv    := '^-1'
//! ```
//!
//! `v^inf` as the first item is a left tail, as the last item a right tail.
//! `a` abbreviates the whole tail path `a_{−1}⋯a_{−m}`.

use crate::error::{Error, Result};
use crate::gentle::{GentlePresentation, Path, Vertex};

use super::{master_words, validate, HomotopyWord, Letter};

#[derive(Debug)]
enum Item {
    Tail(usize),
    Letters(Vec<Letter>),
    Stalk(Vertex, usize),
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    pres: &'a GentlePresentation,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_separators(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() || c == b'|' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.text[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn label(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(b'a' | b'b' | b'c') => self.pos += 1,
            _ => return self.err("expected an arrow label"),
        }
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("arrow label needs an index");
        }
        Ok(String::from_utf8(self.text[start..self.pos].to_vec()).unwrap())
    }

    fn path(&mut self) -> Result<Path> {
        let start = self.pos;
        let mut labels = vec![self.label()?];
        while self.eat("*") {
            labels.push(self.label()?);
        }
        let text = labels.join("*");
        self.pres.parse_path_label(&text).map_err(|e| Error::Parse { offset: start, message: e.to_string() })
    }

    fn inverse_mark(&mut self) -> bool {
        self.eat("^-1")
    }

    fn item(&mut self) -> Result<Item> {
        let start = self.pos;
        if self.eat("v^inf") {
            return Ok(Item::Tail(start));
        }
        if self.peek() == Some(b'v') {
            self.pos += 1;
            let times = if self.eat("^") {
                let k = self.int()?;
                if k < 0 {
                    return self.err("period exponent must be non-negative");
                }
                k as usize
            } else {
                1
            };
            let period = master_words(self.pres).period;
            let mut letters = Vec::new();
            for _ in 0..times {
                letters.extend(period.iter().cloned());
            }
            return Ok(Item::Letters(letters));
        }
        if self.peek() == Some(b'e') {
            self.pos += 1;
            let v = self.int()?;
            if !self.pres.has_vertex(v as Vertex) {
                self.pos = start;
                return self.err(format!("vertex {v} is not in the quiver"));
            }
            return Ok(Item::Stalk(v as Vertex, start));
        }
        let next_is_label_index = matches!(self.text.get(self.pos + 1), Some(c) if c.is_ascii_digit() || *c == b'-');
        if self.peek() == Some(b'a') && !next_is_label_index {
            self.pos += 1;
            let a = self.pres.a_composite();
            if a.is_trivial() {
                self.pos = start;
                return self.err("`a` needs a tail (m > 0)");
            }
            let inverse = self.inverse_mark();
            return Ok(Item::Letters(vec![Letter { path: a, inverse }]));
        }
        let path = if self.eat("(") {
            let p = self.path()?;
            if !self.eat(")") {
                return self.err("expected `)`");
            }
            p
        } else {
            self.path()?
        };
        let inverse = self.inverse_mark();
        Ok(Item::Letters(vec![Letter { path, inverse }]))
    }
}

/// Parses the word text format (see module docs).
pub fn parse_word(pres: &GentlePresentation, text: &str) -> Result<HomotopyWord> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, pres };
    p.skip_separators();
    let bracketed = p.eat("[");
    let mut items = Vec::new();
    loop {
        p.skip_separators();
        match p.peek() {
            None => break,
            Some(b']') if bracketed => {
                p.pos += 1;
                p.skip_separators();
                if p.peek().is_some() {
                    return p.err("trailing input after `]`");
                }
                break;
            }
            _ => items.push(p.item()?),
        }
        if p.peek().is_none() && bracketed {
            return p.err("missing `]`");
        }
    }
    if bracketed && p.pos < text.len() {
        return p.err("trailing input");
    }

    let count = items.len();
    let mut left_tail = false;
    let mut right_tail = false;
    let mut letters = Vec::new();
    let mut stalk = None;
    for (i, item) in items.into_iter().enumerate() {
        match item {
            Item::Tail(at) => {
                if count < 2 {
                    return Err(Error::Parse { offset: at, message: "a tail needs something to attach to".into() });
                }
                if i == 0 {
                    left_tail = true;
                } else if i == count - 1 {
                    right_tail = true;
                } else {
                    return Err(Error::Parse { offset: at, message: "`v^inf` must be the first or last item".into() });
                }
            }
            Item::Letters(ls) => letters.extend(ls),
            Item::Stalk(v, at) => {
                if stalk.is_some() {
                    return Err(Error::Parse { offset: at, message: "more than one vertex marker".into() });
                }
                stalk = Some((v, at));
            }
        }
    }
    if let (Some((_, at)), false) = (stalk, letters.is_empty()) {
        return Err(Error::Parse { offset: at, message: "a vertex marker cannot accompany letters".into() });
    }
    if letters.is_empty() && stalk.is_none() && !(left_tail && right_tail) {
        return Err(Error::Parse { offset: 0, message: "empty word".into() });
    }
    let anchor = letters.first().map(Letter::left_vertex).or(stalk.map(|s| s.0)).unwrap_or(0);
    let w = HomotopyWord { left_tail, right_tail, core: letters, anchor };
    validate(pres, &w)?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gentle::AlgebraParams;
    use crate::strings::{canonical_form, enumerate_words, word_text};

    fn alg(r: u32, n: u32, m: u32) -> GentlePresentation {
        GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap()
    }

    #[test]
    fn parses_examples() {
        let p = alg(2, 3, 1);
        let w = parse_word(&p, "[a^-1 | v^inf]").unwrap();
        assert!(w.right_tail && !w.left_tail);
        assert_eq!(w.core.len(), 1);
        let q = alg(2, 3, 0);
        let v = parse_word(&q, "(c2)(b1*b0)").unwrap();
        assert_eq!(v.core.len(), 2);
        assert_eq!(parse_word(&q, "v").unwrap(), v);
        assert_eq!(parse_word(&q, "[v^2]").unwrap().core.len(), 4);
        let two = parse_word(&q, "[v^inf | v^inf]").unwrap();
        assert!(two.left_tail && two.right_tail);
        assert_eq!(parse_word(&q, "[e1]").unwrap(), HomotopyWord::stalk(1));
        assert_eq!(parse_word(&p, "e-1").unwrap(), HomotopyWord::stalk(-1));
    }

    #[test]
    fn rejects_malformed() {
        let p = alg(2, 3, 0);
        for bad in ["", "[", "(c2", "x1", "[v^inf]", "(c2)(b0)", "(c2) e0", "b1*b1", "[c2 | v^inf | c2]", "e7"] {
            assert!(parse_word(&p, bad).is_err(), "{bad}");
        }
        assert!(matches!(parse_word(&p, "(c2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_word(&p, "(c2)(b0)"), Err(Error::InvalidWord(_))));
    }

    #[test]
    fn printer_round_trips() {
        for (r, n, m) in [(1, 1, 0), (2, 3, 1), (3, 3, 1), (1, 2, 2)] {
            let p = alg(r, n, m);
            for w in enumerate_words(&p, 4) {
                let text = word_text(&p, &w);
                let back = parse_word(&p, &text).unwrap();
                assert_eq!(canonical_form(&p, &back), w, "{text}");
            }
        }
    }
}
