//! Letters, words, strings and bands over the quiver with vertices 0, 1, 2 and
//! arrows α:0→0, β:0→1, ρ:1→1, δ:1→2, ξ:2→2, λ:2→0.
//!
//! Words are read right to left: in `w1 w2 … wn` the letter `wn` acts first,
//! so composability means `s(w_i) = e(w_{i+1})`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u8;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arrow {
    Al,
    Be,
    De,
    La,
    Rh,
    Xi,
}

impl Arrow {
    pub const ALL: [Arrow; 6] = [Arrow::Al, Arrow::Be, Arrow::De, Arrow::La, Arrow::Rh, Arrow::Xi];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn source(self) -> Vertex {
        match self {
            Arrow::Al | Arrow::Be => 0,
            Arrow::Rh | Arrow::De => 1,
            Arrow::Xi | Arrow::La => 2,
        }
    }

    pub fn target(self) -> Vertex {
        match self {
            Arrow::Al | Arrow::La => 0,
            Arrow::Be | Arrow::Rh => 1,
            Arrow::De | Arrow::Xi => 2,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Arrow::Al => "al",
            Arrow::Be => "be",
            Arrow::De => "de",
            Arrow::La => "la",
            Arrow::Rh => "rh",
            Arrow::Xi => "xi",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Arrow::Al => "α",
            Arrow::Be => "β",
            Arrow::De => "δ",
            Arrow::La => "λ",
            Arrow::Rh => "ρ",
            Arrow::Xi => "ξ",
        }
    }

    pub fn from_token(t: &str) -> Option<Arrow> {
        Arrow::ALL.into_iter().find(|a| a.token() == t)
    }

    /// The order-3 symmetry (0 1 2)(α ρ ξ)(β δ λ).
    pub fn theta(self) -> Arrow {
        match self {
            Arrow::Al => Arrow::Rh,
            Arrow::Rh => Arrow::Xi,
            Arrow::Xi => Arrow::Al,
            Arrow::Be => Arrow::De,
            Arrow::De => Arrow::La,
            Arrow::La => Arrow::Be,
        }
    }

    /// The involution attached to vertex `u`; it fixes u and swaps the rest.
    pub fn nu(self, u: Vertex) -> Arrow {
        use Arrow::*;
        let swap = |a: Arrow, x: Arrow, y: Arrow| {
            if a == x {
                y
            } else if a == y {
                x
            } else {
                a
            }
        };
        match u {
            0 => swap(swap(self, Rh, Xi), Be, La),
            1 => swap(swap(self, Al, Xi), Be, De),
            2 => swap(swap(self, Al, Rh), La, De),
            _ => panic!("vertex out of range"),
        }
    }

    /// The loop at each vertex.
    pub fn loop_at(u: Vertex) -> Arrow {
        [Arrow::Al, Arrow::Rh, Arrow::Xi][u as usize]
    }
}

pub fn theta_vertex(u: Vertex) -> Vertex {
    (u + 1) % 3
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub arrow: Arrow,
    pub inverted: bool,
}

impl Letter {
    pub const fn direct(arrow: Arrow) -> Letter {
        Letter { arrow, inverted: false }
    }
    pub const fn inverse_of(arrow: Arrow) -> Letter {
        Letter { arrow, inverted: true }
    }
    pub fn source(self) -> Vertex {
        if self.inverted {
            self.arrow.target()
        } else {
            self.arrow.source()
        }
    }
    pub fn target(self) -> Vertex {
        if self.inverted {
            self.arrow.source()
        } else {
            self.arrow.target()
        }
    }
    pub fn inverse(self) -> Letter {
        Letter { arrow: self.arrow, inverted: !self.inverted }
    }
    pub fn is_direct(self) -> bool {
        !self.inverted
    }
    pub fn theta(self) -> Letter {
        Letter { arrow: self.arrow.theta(), inverted: self.inverted }
    }
    pub fn token(self) -> String {
        format!("{}{}", self.arrow.token(), if self.inverted { "-" } else { "" })
    }
    pub fn pretty(self) -> String {
        format!("{}{}", self.arrow.symbol(), if self.inverted { "⁻¹" } else { "" })
    }
}

/// A composable sequence of letters. The empty word `1_u` remembers `u`; for
/// nonempty words `base` is normalized to the target vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
    base: Vertex,
}

impl Word {
    pub fn empty(u: Vertex) -> Word {
        assert!(u < 3, "vertex out of range");
        Word { letters: Vec::new(), base: u }
    }

    pub fn new(letters: Vec<Letter>) -> Result<Word> {
        for i in 0..letters.len().saturating_sub(1) {
            if letters[i].source() != letters[i + 1].target() {
                return Err(Error::NotComposable {
                    index: i,
                    next: i + 1,
                    source_vertex: letters[i].source(),
                    target_vertex: letters[i + 1].target(),
                });
            }
        }
        let base = letters.first().map_or(0, |l| l.target());
        Ok(Word { letters, base })
    }

    /// Parses tokens like `"be al- la"` or `"1_0"`.
    pub fn parse(text: &str) -> Result<Word> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() == 1 {
            if let Some(rest) = toks[0].strip_prefix("1_") {
                return match rest {
                    "0" => Ok(Word::empty(0)),
                    "1" => Ok(Word::empty(1)),
                    "2" => Ok(Word::empty(2)),
                    _ => Err(Error::UnknownToken(toks[0].to_string())),
                };
            }
        }
        if toks.is_empty() {
            return Err(Error::UnknownToken(String::new()));
        }
        let mut letters = Vec::with_capacity(toks.len());
        for t in toks {
            let (name, inverted) = match t.strip_suffix('-') {
                Some(n) => (n, true),
                None => (t, false),
            };
            let arrow = Arrow::from_token(name).ok_or_else(|| Error::UnknownToken(t.to_string()))?;
            letters.push(Letter { arrow, inverted });
        }
        Word::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
    /// s(w): the vertex where the word starts acting (its right end).
    pub fn source(&self) -> Vertex {
        self.letters.last().map_or(self.base, |l| l.source())
    }
    /// e(w): the vertex at the left end.
    pub fn target(&self) -> Vertex {
        self.letters.first().map_or(self.base, |l| l.target())
    }
    pub fn is_closed(&self) -> bool {
        self.source() == self.target()
    }

    pub fn inverse(&self) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        let base = letters[0].target();
        Word { letters, base }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.source() != other.target() {
            return Err(Error::NotComposable {
                index: self.len().saturating_sub(1),
                next: self.len(),
                source_vertex: self.source(),
                target_vertex: other.target(),
            });
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { letters, base: self.base })
    }

    pub fn concat_all(parts: &[&Word]) -> Result<Word> {
        let mut acc = parts.first().map(|w| (*w).clone()).unwrap_or_else(|| Word::empty(0));
        for w in &parts[1..] {
            acc = acc.concat(w)?;
        }
        Ok(acc)
    }

    pub fn power(&self, n: usize) -> Result<Word> {
        if n == 0 {
            return Ok(Word::empty(self.source()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.concat(self)?;
        }
        Ok(acc)
    }

    /// Letters `w_{from+1} … w_to` as a word; empty subwords sit at the vertex
    /// between positions.
    pub fn subword(&self, from: usize, to: usize) -> Word {
        assert!(from <= to && to <= self.len());
        if from == to {
            let u = if from == 0 { self.target() } else { self.letters[from - 1].source() };
            return Word::empty(u);
        }
        let letters = self.letters[from..to].to_vec();
        let base = letters[0].target();
        Word { letters, base }
    }

    /// The i-th rotation `w_{i+1} … w_n w_1 … w_i`.
    pub fn rotate(&self, i: usize) -> Result<Word> {
        if !self.is_closed() || self.is_empty() {
            return Err(Error::NotClosed(self.to_string()));
        }
        let n = self.len();
        let i = i % n;
        let mut letters = self.letters[i..].to_vec();
        letters.extend_from_slice(&self.letters[..i]);
        let base = letters[0].target();
        Ok(Word { letters, base })
    }

    pub fn theta(&self, times: usize) -> Word {
        let mut w = self.clone();
        for _ in 0..times % 3 {
            w = Word { letters: w.letters.iter().map(|l| l.theta()).collect(), base: theta_vertex(w.base) };
        }
        w
    }

    /// Greek rendering, e.g. `βα⁻¹λ`.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            return format!("1_{}", self.base);
        }
        self.letters.iter().map(|l| l.pretty()).collect()
    }

    pub fn starts_with(&self, prefix: &[Letter]) -> bool {
        self.letters.starts_with(prefix)
    }
    pub fn ends_with(&self, suffix: &[Letter]) -> bool {
        self.letters.ends_with(suffix)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1_{}", self.base);
        }
        let toks: Vec<String> = self.letters.iter().map(|l| l.token()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Zero relations and squares of loops, written as paths in word order.
const FORBIDDEN: [&[Arrow]; 12] = {
    use Arrow::*;
    [
        &[Al, Al],
        &[Rh, Rh],
        &[Xi, Xi],
        &[Al, La],
        &[La, Xi],
        &[Xi, De],
        &[De, Rh],
        &[Rh, Be],
        &[Be, Al],
        &[La, De, Be],
        &[Be, La, De],
        &[De, Be, La],
    ]
};

/// The set of paths excluded from strings.
pub fn forbidden_paths() -> Vec<Vec<Arrow>> {
    FORBIDDEN.iter().map(|p| p.to_vec()).collect()
}

fn path_forbidden(path: &[Arrow]) -> bool {
    FORBIDDEN.contains(&path)
}

/// Checks only the constraints that involve the last letter of `letters`.
fn tail_ok(letters: &[Letter]) -> bool {
    let n = letters.len();
    if n < 2 {
        return true;
    }
    let last = letters[n - 1];
    if letters[n - 2] == last.inverse() {
        return false;
    }
    let mut run: Vec<Arrow> = Vec::with_capacity(3);
    for l in letters[..n].iter().rev().take(3) {
        if l.inverted != last.inverted {
            break;
        }
        run.push(l.arrow);
    }
    // `run` lists arrows from the last letter backwards. For a direct run the
    // path in word order is the reverse; for an inverse run, reading w⁻¹ gives
    // exactly this order.
    for k in 2..=run.len() {
        let mut window: Vec<Arrow> = run[..k].to_vec();
        if !last.inverted {
            window.reverse();
        }
        if path_forbidden(&window) {
            return false;
        }
    }
    true
}

fn letters_valid(letters: &[Letter]) -> bool {
    (2..=letters.len()).all(|k| tail_ok(&letters[..k]))
}

pub fn is_valid_string_word(w: &Word) -> bool {
    letters_valid(&w.letters)
}

fn is_proper_power(letters: &[Letter]) -> bool {
    let n = letters.len();
    (1..n).any(|d| n.is_multiple_of(d) && (d..n).all(|i| letters[i] == letters[i - d]))
}

/// Band validity. The "all powers" clause is checked on `w·w`: forbidden paths
/// have length at most 3 and no band has length 1, so every cyclic window of
/// length ≤ 3 already occurs in `w·w`.
pub fn is_valid_band_word(w: &Word) -> bool {
    if w.is_empty() || !w.is_closed() || is_proper_power(&w.letters) {
        return false;
    }
    let mut doubled = w.letters.clone();
    doubled.extend_from_slice(&w.letters);
    letters_valid(&doubled)
}

/// Equivalence class of a string, stored by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StringClass {
    rep: Word,
}

impl StringClass {
    pub fn new(w: &Word) -> Result<StringClass> {
        if !is_valid_string_word(w) {
            return Err(Error::InvalidString(w.to_string()));
        }
        Ok(StringClass { rep: canonical_string(w) })
    }
    pub fn word(&self) -> &Word {
        &self.rep
    }
    pub fn len(&self) -> usize {
        self.rep.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }
}

impl fmt::Display for StringClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

pub fn canonical_string(w: &Word) -> Word {
    let inv = w.inverse();
    if inv < *w {
        inv
    } else {
        w.clone()
    }
}

/// How a band word relates to the canonical representative of its class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandOrientation {
    /// Canonical = rotation of w⁻¹ (true) or of w (false).
    pub inverted: bool,
    pub rotation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BandClass {
    rep: Word,
}

impl BandClass {
    pub fn new(w: &Word) -> Result<BandClass> {
        Ok(BandClass::with_orientation(w)?.0)
    }

    /// The class together with the orientation of `w` relative to the canonical
    /// representative. A band module on `w` with parameter μ is isomorphic to
    /// the module on the canonical word with μ, or μ⁻¹ when `inverted`.
    pub fn with_orientation(w: &Word) -> Result<(BandClass, BandOrientation)> {
        if !is_valid_band_word(w) {
            return Err(Error::InvalidBand(w.to_string()));
        }
        let mut best: Option<(Word, BandOrientation)> = None;
        for (inverted, base) in [(false, w.clone()), (true, w.inverse())] {
            for i in 0..base.len() {
                let r = base.rotate(i)?;
                if best.as_ref().is_none_or(|(b, _)| r < *b) {
                    best = Some((r, BandOrientation { inverted, rotation: i }));
                }
            }
        }
        let (rep, o) = best.expect("nonempty band");
        Ok((BandClass { rep }, o))
    }

    pub fn word(&self) -> &Word {
        &self.rep
    }
    pub fn len(&self) -> usize {
        self.rep.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }
}

impl fmt::Display for BandClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Applies the involution attached to `e(S)` letterwise, then inverts each
/// letter in place (the order of letters is kept).
pub fn apply_nu_flip(s: &Word) -> Result<Word> {
    if s.is_empty() {
        return Err(Error::Precondition("nu flip needs a nonempty string".into()));
    }
    let u = s.target();
    let letters: Vec<Letter> =
        s.letters().iter().map(|l| Letter { arrow: l.arrow.nu(u), inverted: !l.inverted }).collect();
    let w = Word::new(letters)?;
    assert!(is_valid_string_word(&w), "nu flip of {s} is not a string");
    Ok(w)
}

/// Every letter `L` with `e(L) = u`.
pub fn letters_ending_at(u: Vertex) -> Vec<Letter> {
    let mut out = Vec::with_capacity(4);
    for a in Arrow::ALL {
        for inverted in [false, true] {
            let l = Letter { arrow: a, inverted };
            if l.target() == u {
                out.push(l);
            }
        }
    }
    out
}

fn all_letters() -> Vec<Letter> {
    let mut v = Vec::with_capacity(12);
    for a in Arrow::ALL {
        v.push(Letter::direct(a));
        v.push(Letter::inverse_of(a));
    }
    v
}

/// Depth-first enumeration of valid string words with exact length `len`,
/// calling `visit` on each letter sequence. `prune` may cut a partial word.
pub fn for_each_string_word(len: usize, prune: &mut dyn FnMut(&[Letter]) -> bool, visit: &mut dyn FnMut(&[Letter])) {
    fn rec(
        cur: &mut Vec<Letter>,
        len: usize,
        prune: &mut dyn FnMut(&[Letter]) -> bool,
        visit: &mut dyn FnMut(&[Letter]),
    ) {
        if cur.len() == len {
            visit(cur);
            return;
        }
        let u = cur.last().expect("nonempty").source();
        for l in letters_ending_at(u) {
            cur.push(l);
            if tail_ok(cur) && !prune(cur) {
                rec(cur, len, prune, visit);
            }
            cur.pop();
        }
    }
    if len == 0 {
        return;
    }
    let mut cur = Vec::with_capacity(len);
    for l in all_letters() {
        cur.push(l);
        if !prune(&cur) {
            rec(&mut cur, len, prune, visit);
        }
        cur.pop();
    }
}

/// All string classes of length ≤ `max_len`, sorted by (length, representative).
pub fn enumerate_strings(max_len: usize) -> Vec<StringClass> {
    let mut out: Vec<StringClass> = (0..3).map(|u| StringClass { rep: Word::empty(u) }).collect();
    for len in 1..=max_len {
        let mut level = Vec::new();
        for_each_string_word(len, &mut |_| false, &mut |ls| {
            let w = Word::new(ls.to_vec()).expect("composable by construction");
            if canonical_string(&w) == w {
                level.push(StringClass { rep: w });
            }
        });
        level.sort();
        out.extend(level);
    }
    out
}

/// All band classes of length ≤ `max_len`, sorted by (length, representative).
pub fn enumerate_bands(max_len: usize) -> Vec<BandClass> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut level = Vec::new();
        for_each_string_word(len, &mut |_| false, &mut |ls| {
            let w = Word::new(ls.to_vec()).expect("composable by construction");
            if w.is_closed() && is_valid_band_word(&w) {
                let c = BandClass::new(&w).expect("valid band");
                if c.rep == w {
                    level.push(c);
                }
            }
        });
        level.sort();
        out.extend(level);
    }
    out
}

/// The distinguished words used throughout.
pub mod named {
    use super::Word;

    fn w(s: &str) -> Word {
        Word::parse(s).expect("hardcoded word")
    }
    /// λξ⁻¹δβα⁻¹
    pub fn x() -> Word {
        w("la xi- de be al-")
    }
    /// λδρ⁻¹βα⁻¹
    pub fn y() -> Word {
        w("la de rh- be al-")
    }
    /// λξ⁻¹δρ⁻¹βα⁻¹
    pub fn p() -> Word {
        w("la xi- de rh- be al-")
    }
    /// λδρ⁻¹βλξ⁻¹δβα⁻¹
    pub fn q() -> Word {
        w("la de rh- be la xi- de be al-")
    }
    /// λξ⁻¹δρ⁻¹
    pub fn a() -> Word {
        w("la xi- de rh-")
    }
    pub fn by_name(name: &str) -> Option<Word> {
        match name {
            "x" => Some(x()),
            "y" => Some(y()),
            "p" => Some(p()),
            "q" => Some(q()),
            "a" => Some(a()),
            _ => None,
        }
    }
}
