//! Homotopy words: finite, one-sided and two-sided strings over `Λ(r, n, m)`.
//!
//! Letters are read left to right. A direct letter `p` sits between a position
//! with vertex `t(p)` (left) and one with vertex `s(p)` (right); an inverse
//! letter the other way round. Consecutive direct letters `p, q` must satisfy
//! `pq = 0`.
//!
//! Every word lives on the *line*: the bi-infinite direct word `… v v v …`
//! with period `v = (c_{n−1}, …, c_{n−r+1}, b_{n−r}⋯b_0)`. A line position has a
//! phase `s ∈ {0, …, r−1}`; its vertex is `0` for `s = 0` and `n − s` otherwise.
//! Infinite tails are always copies of the line and are stored only as flags.

mod grammar;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gentle::{GentlePresentation, GldimClass, Path, Vertex};

pub use grammar::parse_word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub path: Path,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(path: Path) -> Self {
        Self { path, inverse: false }
    }

    pub fn inverse(path: Path) -> Self {
        Self { path, inverse: true }
    }

    /// Vertex of the position to the left of the letter.
    pub fn left_vertex(&self) -> Vertex {
        if self.inverse {
            self.path.source
        } else {
            self.path.target
        }
    }

    pub fn right_vertex(&self) -> Vertex {
        if self.inverse {
            self.path.target
        } else {
            self.path.source
        }
    }

    pub fn flipped(&self) -> Self {
        Self { path: self.path.clone(), inverse: !self.inverse }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Species {
    Finite,
    LeftInfinite,
    RightInfinite,
    TwoSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WordClass {
    Perfect,
    LeftInfinite,
    RightInfinite,
    TwoSided,
}

/// A homotopy word. `anchor` is the vertex of the leftmost core position and
/// only carries information when the core is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomotopyWord {
    pub left_tail: bool,
    pub right_tail: bool,
    pub core: Vec<Letter>,
    pub anchor: Vertex,
}

impl HomotopyWord {
    pub fn stalk(v: Vertex) -> Self {
        Self { left_tail: false, right_tail: false, core: Vec::new(), anchor: v }
    }

    pub fn finite(core: Vec<Letter>) -> Result<Self> {
        let anchor = core
            .first()
            .map(Letter::left_vertex)
            .ok_or_else(|| Error::InvalidWord("use `stalk` for the empty word".into()))?;
        Ok(Self { left_tail: false, right_tail: false, core, anchor })
    }

    pub fn species(&self) -> Species {
        match (self.left_tail, self.right_tail) {
            (false, false) => Species::Finite,
            (true, false) => Species::LeftInfinite,
            (false, true) => Species::RightInfinite,
            (true, true) => Species::TwoSided,
        }
    }

    pub fn len(&self) -> usize {
        self.core.len()
    }

    pub fn is_empty(&self) -> bool {
        self.core.is_empty()
    }

    /// Vertices of the core positions, left to right (`len() + 1` entries).
    pub fn position_vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.core.len() + 1);
        out.push(self.first_vertex());
        out.extend(self.core.iter().map(Letter::right_vertex));
        out
    }

    pub fn first_vertex(&self) -> Vertex {
        self.core.first().map(Letter::left_vertex).unwrap_or(self.anchor)
    }

    pub fn last_vertex(&self) -> Vertex {
        self.core.last().map(Letter::right_vertex).unwrap_or(self.anchor)
    }

    /// Degree change across the core: +1 per direct letter, −1 per inverse letter.
    pub fn degree_span(&self) -> i64 {
        self.core.iter().map(|l| if l.inverse { -1 } else { 1 }).sum()
    }

    pub fn inverse_count(&self) -> usize {
        self.core.iter().filter(|l| l.inverse).count()
    }

    /// The reversed word. Infinite words are only reversible into a form with
    /// inverse tails, which this type does not represent, so they are returned unchanged.
    pub fn reversed(&self) -> Self {
        if self.left_tail || self.right_tail {
            return self.clone();
        }
        let core: Vec<Letter> = self.core.iter().rev().map(Letter::flipped).collect();
        Self { left_tail: false, right_tail: false, anchor: self.last_vertex(), core }
    }
}

/// The degree-ordered line of the algebra.
#[derive(Debug, Clone)]
pub struct Line {
    r: i64,
    vertices: Vec<Vertex>,
    letters: Vec<Path>,
}

impl Line {
    pub fn new(pres: &GentlePresentation) -> Self {
        let p = pres.params();
        let (r, n) = (p.r as i64, p.n as i64);
        let vertices = (0..r).map(|s| if s == 0 { 0 } else { (n - s) as Vertex }).collect();
        let letters = pres.period_paths();
        Self { r, vertices, letters }
    }

    pub fn period(&self) -> i64 {
        self.r
    }

    pub fn vertex(&self, position: i64) -> Vertex {
        self.vertices[position.rem_euclid(self.r) as usize]
    }

    /// Direct letter between line positions `position` and `position + 1`.
    pub fn letter(&self, position: i64) -> &Path {
        &self.letters[position.rem_euclid(self.r) as usize]
    }

    pub fn phase_of_vertex(&self, v: Vertex) -> Option<i64> {
        self.vertices.iter().position(|&x| x == v).map(|s| s as i64)
    }
}

/// The four master schemata.
#[derive(Debug, Clone)]
pub struct MasterWords {
    /// The period `v`.
    pub period: Vec<Letter>,
    /// `c_{n−1}, …, c_{n−r+1}, b_{n−r}⋯b_0 a_{−1}⋯a_{−m}`: the closing block of `w_ℓ` and `∞w`.
    pub closing: Vec<Letter>,
    /// `a_{−1}⋯a_{−m}` as an inverse letter, absent when `m = 0`.
    pub opening: Option<Letter>,
}

impl MasterWords {
    /// `w_ℓ`: opening, `ℓ` copies of `v`, closing.
    pub fn finite(&self, ell: usize) -> HomotopyWord {
        let mut core = Vec::new();
        core.extend(self.opening.iter().cloned());
        for _ in 0..ell {
            core.extend(self.period.iter().cloned());
        }
        core.extend(self.closing.iter().cloned());
        HomotopyWord::finite(core).expect("w_ell is nonempty")
    }

    /// `w_∞`: opening followed by the right tail.
    pub fn right_infinite(&self) -> HomotopyWord {
        HomotopyWord {
            left_tail: false,
            right_tail: true,
            core: self.opening.iter().cloned().collect(),
            anchor: self.opening.as_ref().map(Letter::left_vertex).unwrap_or(0),
        }
    }

    /// `∞w`: left tail followed by the closing block.
    pub fn left_infinite(&self) -> HomotopyWord {
        HomotopyWord { left_tail: true, right_tail: false, core: self.closing.clone(), anchor: 0 }
    }

    pub fn two_sided(&self) -> HomotopyWord {
        HomotopyWord { left_tail: true, right_tail: true, core: Vec::new(), anchor: 0 }
    }
}

pub fn master_words(pres: &GentlePresentation) -> MasterWords {
    let period: Vec<Letter> = pres.period_paths().into_iter().map(Letter::direct).collect();
    let mut closing = period.clone();
    let last = closing.pop().expect("period is nonempty");
    let long = pres.compose(&last.path, &pres.a_composite()).expect("long letter is nonzero");
    closing.push(Letter::direct(long));
    let a = pres.a_composite();
    let opening = if a.is_trivial() { None } else { Some(Letter::inverse(a)) };
    MasterWords { period, closing, opening }
}

/// Checks the homotopy-string conditions between two adjacent letters.
fn junction_ok(pres: &GentlePresentation, left: &Letter, right: &Letter) -> bool {
    if left.right_vertex() != right.left_vertex() {
        return false;
    }
    match (left.inverse, right.inverse) {
        // p q with pq = 0: q's last arrow followed by p's first arrow is a relation
        (false, false) => pres.is_relation(right.path.last_arrow().unwrap(), left.path.first_arrow().unwrap()),
        (true, true) => pres.is_relation(left.path.last_arrow().unwrap(), right.path.first_arrow().unwrap()),
        (false, true) => left.path.first_arrow() != right.path.first_arrow(),
        (true, false) => left.path.last_arrow() != right.path.last_arrow(),
    }
}

/// Validates a word against the homotopy-string rules and the tail conventions.
pub fn validate(pres: &GentlePresentation, w: &HomotopyWord) -> Result<()> {
    let line = Line::new(pres);
    for l in &w.core {
        if l.path.is_trivial() {
            return Err(Error::InvalidWord("letters must be nontrivial paths".into()));
        }
        if pres.path_id(&l.path).is_none() {
            return Err(Error::InvalidWord(format!("`{}` is a zero path", pres.path_label(&l.path))));
        }
    }
    if w.core.is_empty() && !pres.has_vertex(w.anchor) {
        return Err(Error::InvalidWord(format!("vertex {} is not in the quiver", w.anchor)));
    }
    for pair in w.core.windows(2) {
        if !junction_ok(pres, &pair[0], &pair[1]) {
            return Err(Error::InvalidWord(format!(
                "letters `{}` and `{}` do not form a homotopy string",
                letter_text(pres, &pair[0]),
                letter_text(pres, &pair[1])
            )));
        }
    }
    if w.left_tail {
        let s = line
            .phase_of_vertex(w.first_vertex())
            .ok_or_else(|| Error::InvalidWord("left tail must meet the core at a line vertex".into()))?;
        let tail = Letter::direct(line.letter(s - 1).clone());
        if let Some(first) = w.core.first() {
            if !junction_ok(pres, &tail, first) {
                return Err(Error::InvalidWord("left tail does not attach to the core".into()));
            }
        }
    }
    if w.right_tail {
        let s = line
            .phase_of_vertex(w.last_vertex())
            .ok_or_else(|| Error::InvalidWord("right tail must meet the core at a line vertex".into()))?;
        let tail = Letter::direct(line.letter(s).clone());
        if let Some(last) = w.core.last() {
            if !junction_ok(pres, last, &tail) {
                return Err(Error::InvalidWord("right tail does not attach to the core".into()));
            }
        }
    }
    if w.left_tail && w.right_tail && !w.core.is_empty() {
        // two-sided words must be the line itself
        let s = line.phase_of_vertex(w.first_vertex()).unwrap();
        for (i, l) in w.core.iter().enumerate() {
            if l.inverse || &l.path != line.letter(s + i as i64) {
                return Err(Error::InvalidWord("a two-sided word must follow the line".into()));
            }
        }
    }
    Ok(())
}

pub fn classify(w: &HomotopyWord) -> WordClass {
    match w.species() {
        Species::Finite => WordClass::Perfect,
        Species::LeftInfinite => WordClass::LeftInfinite,
        Species::RightInfinite => WordClass::RightInfinite,
        Species::TwoSided => WordClass::TwoSided,
    }
}

/// Compactness in `K(Proj-Λ)`. Perfect complexes are always compact; right-infinite
/// string complexes are compact only when the global dimension is infinite, since
/// otherwise every compact object is perfect.
pub fn is_compact_in(gldim: GldimClass, w: &HomotopyWord) -> bool {
    match classify(w) {
        WordClass::Perfect => true,
        WordClass::RightInfinite => gldim == GldimClass::Infinite,
        WordClass::LeftInfinite | WordClass::TwoSided => false,
    }
}

pub fn is_compact(pres: &GentlePresentation, w: &HomotopyWord) -> bool {
    is_compact_in(pres.gldim_class(), w)
}

/// Key for choosing between a finite word and its reverse. Prefers the shape
/// with all inverse letters first, then fewer inverse letters, then
/// lexicographic letter labels with direct before inverse.
fn orientation_key(pres: &GentlePresentation, w: &HomotopyWord) -> (bool, usize, Vec<(String, bool)>) {
    let first_direct = w.core.iter().position(|l| !l.inverse).unwrap_or(w.core.len());
    let misplaced = w.core[first_direct..].iter().any(|l| l.inverse);
    let labels = w.core.iter().map(|l| (pres.path_label(&l.path), l.inverse)).collect();
    (misplaced, w.inverse_count(), labels)
}

/// Normal form of a word, together with the degree change of the designated
/// position (the leftmost core position) caused by the normalization.
///
/// Line letters next to a tail are absorbed into it. A two-sided word is moved to
/// the empty core at phase 0, and its degree change is only meaningful modulo `r`.
pub fn normalize(pres: &GentlePresentation, w: &HomotopyWord) -> (HomotopyWord, i64) {
    let line = Line::new(pres);
    let mut w = w.clone();
    let mut shift = 0i64;
    if w.left_tail {
        while let Some(first) = w.core.first() {
            let s = line.phase_of_vertex(first.left_vertex());
            match s {
                Some(s) if !first.inverse && &first.path == line.letter(s) => {
                    let l = w.core.remove(0);
                    w.anchor = l.right_vertex();
                    shift += 1;
                }
                _ => break,
            }
        }
    }
    if w.right_tail {
        while let Some(last) = w.core.last() {
            match line.phase_of_vertex(last.left_vertex()) {
                Some(s) if !last.inverse && &last.path == line.letter(s) => {
                    w.core.pop();
                }
                _ => break,
            }
        }
    }
    if w.left_tail && w.right_tail {
        let s = line.phase_of_vertex(w.anchor).unwrap_or(0);
        // move the junction back to phase 0 by walking left along the line
        shift -= s;
        w.anchor = 0;
        return (w, shift);
    }
    if !w.left_tail && !w.right_tail && !w.core.is_empty() {
        let rev = w.reversed();
        if orientation_key(pres, &rev) < orientation_key(pres, &w) {
            shift += w.degree_span();
            w = rev;
        }
    }
    if !w.core.is_empty() {
        w.anchor = w.first_vertex();
    }
    (w, shift)
}

pub fn canonical_form(pres: &GentlePresentation, w: &HomotopyWord) -> HomotopyWord {
    normalize(pres, w).0
}

/// Total order used for deterministic listings: species, then labels.
pub fn compare_words(pres: &GentlePresentation, a: &HomotopyWord, b: &HomotopyWord) -> Ordering {
    let key = |w: &HomotopyWord| {
        (
            w.species(),
            w.core.len(),
            w.core.iter().map(|l| (pres.path_label(&l.path), l.inverse)).collect::<Vec<_>>(),
            w.anchor,
        )
    };
    key(a).cmp(&key(b))
}

/// All right-end replacements of the line letter after `position`, including the letter itself.
fn right_end_variants(pres: &GentlePresentation, line: &Line, position: i64) -> Vec<Path> {
    let letter = line.letter(position).clone();
    let mut out = vec![letter.clone()];
    if position.rem_euclid(line.period()) == line.period() - 1 {
        // b_{n−r}⋯b_t for t ≥ 1, then b_{n−r}⋯b_0 a_{−1}⋯a_{−j}
        for cut in 1..letter.len() {
            out.push(pres.path_from_arrows(&letter.arrows[cut..]).unwrap());
        }
        let m = pres.params().m as i32;
        for j in 1..=m {
            let arrows: Vec<_> = (1..=j).rev().map(|i| pres.tail_arrow(i)).collect();
            let a = pres.path_from_arrows(&arrows).unwrap();
            out.push(pres.compose(&letter, &a).unwrap());
        }
    }
    out
}

/// All left-end replacements of the line letter after `position`: the letter and its proper prefixes `b_t⋯b_0`.
fn left_end_variants(line: &Line, pres: &GentlePresentation, position: i64) -> Vec<Path> {
    let letter = line.letter(position).clone();
    let mut out = vec![letter.clone()];
    if position.rem_euclid(line.period()) == line.period() - 1 {
        for keep in 1..letter.len() {
            out.push(pres.path_from_arrows(&letter.arrows[..keep]).unwrap());
        }
    }
    out
}

fn tail_paths(pres: &GentlePresentation) -> Vec<Path> {
    let m = pres.params().m as i32;
    (1..=m)
        .map(|j| {
            let arrows: Vec<_> = (1..=j).rev().map(|i| pres.tail_arrow(i)).collect();
            pres.path_from_arrows(&arrows).unwrap()
        })
        .collect()
}

/// Finite words with at most `max_letters` letters, built from the line: a run of
/// line letters whose two end letters may be trimmed or extended, optionally
/// preceded by an inverse tail letter at a phase-0 position; plus stalks and all
/// single-letter words.
pub fn enumerate_finite(pres: &GentlePresentation, max_letters: usize) -> Vec<HomotopyWord> {
    let line = Line::new(pres);
    let r = line.period();
    let mut found: BTreeSet<WordKey> = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |w: HomotopyWord, out: &mut Vec<HomotopyWord>| {
        debug_assert!(validate(pres, &w).is_ok(), "generated invalid word {w:?}");
        let c = canonical_form(pres, &w);
        if found.insert(WordKey::of(pres, &c)) {
            out.push(c);
        }
    };
    for &v in &pres.quiver().vertices {
        push(HomotopyWord::stalk(v), &mut out);
    }
    if max_letters >= 1 {
        for i in 0..pres.path_count() {
            let p = pres.path(crate::gentle::PathId(i as u32));
            if !p.is_trivial() {
                push(HomotopyWord::finite(vec![Letter::direct(p.clone())]).unwrap(), &mut out);
            }
        }
    }
    let tails = tail_paths(pres);
    for start in 0..r {
        for direct in 1..=max_letters as i64 {
            let last_pos = start + direct - 1;
            let lasts = right_end_variants(pres, &line, last_pos);
            let mut openings: Vec<Option<&Path>> = vec![None];
            if start == 0 {
                openings.extend(tails.iter().map(Some));
            }
            for opening in openings {
                let total = direct as usize + usize::from(opening.is_some());
                if total > max_letters || total < 2 {
                    continue;
                }
                // a trimmed first letter cannot follow an opening letter
                let firsts = if opening.is_some() || direct == 1 {
                    vec![line.letter(start).clone()]
                } else {
                    left_end_variants(&line, pres, start)
                };
                for first in &firsts {
                    for last in &lasts {
                        let mut core = Vec::new();
                        if let Some(a) = opening {
                            core.push(Letter::inverse(a.clone()));
                        }
                        for k in 0..direct {
                            let path = if k == direct - 1 {
                                last.clone()
                            } else if k == 0 {
                                first.clone()
                            } else {
                                line.letter(start + k).clone()
                            };
                            core.push(Letter::direct(path));
                        }
                        let w = HomotopyWord::finite(core).unwrap();
                        if validate(pres, &w).is_ok() {
                            push(w, &mut out);
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| compare_words(pres, a, b));
    out
}

/// One-sided words whose core has at most `max_letters` letters, in normal form.
pub fn enumerate_one_sided(pres: &GentlePresentation, max_letters: usize) -> Vec<HomotopyWord> {
    let line = Line::new(pres);
    let r = line.period();
    let mut found: BTreeSet<WordKey> = BTreeSet::new();
    let mut out = Vec::new();
    let tails = tail_paths(pres);
    // left-infinite: the line up to some position, whose last letter may be a right-end variant
    for s in 0..r {
        let w = HomotopyWord { left_tail: true, right_tail: false, core: Vec::new(), anchor: line.vertex(s) };
        out.push(w);
        for variant in right_end_variants(pres, &line, s).into_iter().skip(1) {
            if max_letters >= 1 {
                out.push(HomotopyWord {
                    left_tail: true,
                    right_tail: false,
                    core: vec![Letter::direct(variant)],
                    anchor: line.vertex(s),
                });
            }
        }
    }
    // right-infinite: the line from some position, whose first letter may be trimmed or preceded by an opening
    for s in 0..r {
        out.push(HomotopyWord { left_tail: false, right_tail: true, core: Vec::new(), anchor: line.vertex(s) });
        if max_letters >= 1 {
            for variant in left_end_variants(&line, pres, s).into_iter().skip(1) {
                out.push(HomotopyWord {
                    left_tail: false,
                    right_tail: true,
                    core: vec![Letter::direct(variant.clone())],
                    anchor: variant.target,
                });
            }
            if s == 0 {
                for a in &tails {
                    out.push(HomotopyWord {
                        left_tail: false,
                        right_tail: true,
                        core: vec![Letter::inverse(a.clone())],
                        anchor: a.source,
                    });
                }
            }
        }
    }
    let mut result = Vec::new();
    for w in out {
        debug_assert!(validate(pres, &w).is_ok(), "generated invalid word {w:?}");
        let c = canonical_form(pres, &w);
        if c.core.len() <= max_letters && found.insert(WordKey::of(pres, &c)) {
            result.push(c);
        }
    }
    result.sort_by(|a, b| compare_words(pres, a, b));
    result
}

/// All words with at most `max_letters` core letters, plus the two-sided word.
pub fn enumerate_words(pres: &GentlePresentation, max_letters: usize) -> Vec<HomotopyWord> {
    let mut out = enumerate_finite(pres, max_letters);
    out.extend(enumerate_one_sided(pres, max_letters));
    out.push(master_words(pres).two_sided());
    out
}

/// Hashable identity of a normalized word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordKey(bool, bool, Vec<(Vec<u16>, Vertex, bool)>, Vertex);

impl WordKey {
    pub fn of(_pres: &GentlePresentation, w: &HomotopyWord) -> Self {
        WordKey(
            w.left_tail,
            w.right_tail,
            w.core.iter().map(|l| (l.path.arrows.iter().map(|a| a.0).collect(), l.path.source, l.inverse)).collect(),
            w.anchor,
        )
    }
}

pub fn letter_text(pres: &GentlePresentation, l: &Letter) -> String {
    if l.inverse {
        format!("({})^-1", pres.path_label(&l.path))
    } else {
        format!("({})", pres.path_label(&l.path))
    }
}

/// Text form accepted by [`parse_word`].
pub fn word_text(pres: &GentlePresentation, w: &HomotopyWord) -> String {
    let mut items = Vec::new();
    if w.left_tail {
        items.push("v^inf".to_string());
    }
    if w.core.is_empty() && !(w.left_tail && w.right_tail) {
        items.push(format!("e{}", w.anchor));
    }
    items.extend(w.core.iter().map(|l| letter_text(pres, l)));
    if w.right_tail {
        items.push("v^inf".to_string());
    }
    format!("[{}]", items.join(" | "))
}

/// Display adapter pairing a word with its algebra.
pub struct WordDisplay<'a>(pub &'a GentlePresentation, pub &'a HomotopyWord);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_text(self.0, self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gentle::AlgebraParams;

    fn alg(r: u32, n: u32, m: u32) -> GentlePresentation {
        GentlePresentation::build(AlgebraParams::new(r, n, m).unwrap()).unwrap()
    }

    fn labels(p: &GentlePresentation, ls: &[Letter]) -> Vec<String> {
        ls.iter().map(|l| letter_text(p, l)).collect()
    }

    #[test]
    fn period_of_230() {
        let p = alg(2, 3, 0);
        let mw = master_words(&p);
        assert_eq!(labels(&p, &mw.period), vec!["(c2)", "(b1*b0)"]);
        assert!(mw.opening.is_none());
    }

    #[test]
    fn period_of_110() {
        let p = alg(1, 1, 0);
        assert_eq!(labels(&p, &master_words(&p).period), vec!["(b0)"]);
    }

    #[test]
    fn right_infinite_master_starts_with_opening() {
        let p = alg(2, 3, 1);
        let w = master_words(&p).right_infinite();
        assert_eq!(labels(&p, &w.core), vec!["(a-1)^-1"]);
        assert!(w.right_tail);
        validate(&p, &w).unwrap();
    }

    #[test]
    fn master_words_are_valid() {
        for (r, n, m) in [(1, 1, 0), (2, 2, 0), (1, 2, 0), (2, 3, 0), (2, 3, 1), (3, 3, 1), (1, 3, 2)] {
            let p = alg(r, n, m);
            let mw = master_words(&p);
            for ell in 0..4 {
                validate(&p, &mw.finite(ell)).unwrap();
            }
            validate(&p, &mw.left_infinite()).unwrap();
            validate(&p, &mw.right_infinite()).unwrap();
            validate(&p, &mw.two_sided()).unwrap();
        }
    }

    #[test]
    fn inverse_letter_must_be_leftmost_tail_path() {
        let p = alg(2, 3, 1);
        let c2 = p.parse_path_label("c2").unwrap();
        let a = p.parse_path_label("a-1").unwrap();
        // c2 followed by inverse a: position vertices 0 / 2 vs ... not composable
        let bad = HomotopyWord::finite(vec![Letter::direct(c2.clone()), Letter::inverse(a.clone())]);
        assert!(validate(&p, &bad.unwrap()).is_err());
        let good = HomotopyWord::finite(vec![Letter::inverse(a), Letter::direct(c2)]).unwrap();
        validate(&p, &good).unwrap();
    }

    #[test]
    fn classify_and_compactness() {
        let fin = alg(2, 3, 0);
        let inf = alg(1, 1, 0);
        let mw = master_words(&fin);
        let v = HomotopyWord::finite(mw.period.clone()).unwrap();
        assert_eq!(classify(&v), WordClass::Perfect);
        assert_eq!(classify(&mw.two_sided()), WordClass::TwoSided);
        assert_eq!(classify(&mw.right_infinite()), WordClass::RightInfinite);
        assert!(is_compact(&fin, &v));
        assert!(!is_compact(&fin, &mw.two_sided()));
        assert!(!is_compact(&fin, &mw.right_infinite()));
        let mwi = master_words(&inf);
        assert!(is_compact(&inf, &mwi.right_infinite()));
        assert!(!is_compact(&inf, &mwi.left_infinite()));
    }

    #[test]
    fn canonical_form_identifies_reverses() {
        let p = alg(2, 3, 1);
        let w = master_words(&p).finite(1);
        let c = canonical_form(&p, &w);
        assert_eq!(c, canonical_form(&p, &w.reversed()));
        assert_eq!(c, canonical_form(&p, &c));
        assert!(c.core[0].inverse);
        let e = HomotopyWord::stalk(0);
        assert_eq!(canonical_form(&p, &e), e);
    }

    #[test]
    fn enumerate_small() {
        let p = alg(1, 1, 0);
        let words = enumerate_finite(&p, 0);
        assert_eq!(words, vec![HomotopyWord::stalk(0)]);
        let q = alg(2, 3, 0);
        let v = canonical_form(&q, &HomotopyWord::finite(master_words(&q).period).unwrap());
        assert!(enumerate_words(&q, 2).contains(&v));
    }

    #[test]
    fn normalize_absorbs_line_letters() {
        let p = alg(2, 3, 0);
        let line = Line::new(&p);
        let w = HomotopyWord {
            left_tail: true,
            right_tail: false,
            core: vec![Letter::direct(line.letter(0).clone()), Letter::direct(line.letter(1).clone())],
            anchor: 0,
        };
        let (c, shift) = normalize(&p, &w);
        assert!(c.core.is_empty());
        assert_eq!(c.anchor, 0);
        assert_eq!(shift, 2);
    }
}
