//! Hooks and cohooks, the AR translate, Ω-orbits and walks through stable
//! Auslander-Reiten components.
//!
//! Strings are read right to left, so the "start" of a word is its last
//! letter and the right-side operations append letters at the end.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::{identify_band, identify_string, is_isomorphic};
use crate::linalg::Fp;
use crate::rep::{string_rep, syzygy, Rep};
use crate::words::{is_valid_string_word, Arrow, BandClass, Letter, StringClass, Vertex, Word};

/// The maximal direct strings `α, ρ, ξ, λδ, δβ, βλ`.
pub fn maximal_paths() -> Vec<Word> {
    ["al", "rh", "xi", "la de", "de be", "be la"].iter().map(|s| Word::parse(s).expect("hardcoded")).collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    HookRight,
    HookLeft,
    CohookRight,
    CohookLeft,
}

impl EdgeKind {
    fn new(hook: bool, side: Side) -> EdgeKind {
        match (hook, side) {
            (true, Side::Right) => EdgeKind::HookRight,
            (true, Side::Left) => EdgeKind::HookLeft,
            (false, Side::Right) => EdgeKind::CohookRight,
            (false, Side::Left) => EdgeKind::CohookLeft,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::HookRight => "hook_right",
            EdgeKind::HookLeft => "hook_left",
            EdgeKind::CohookRight => "cohook_right",
            EdgeKind::CohookLeft => "cohook_left",
        }
    }
}

fn ends_with_run(w: &Word, direct: bool) -> bool {
    maximal_paths().iter().any(|m| {
        let m = if direct { m.clone() } else { m.inverse() };
        !w.is_empty() && w.ends_with(m.letters())
    })
}

/// Peak and deep flags in the sense of hooks: a word starts on a peak when it
/// ends (on the right) with a maximal direct string.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub starts_on_peak: bool,
    pub starts_in_deep: bool,
    pub ends_on_peak: bool,
    pub ends_in_deep: bool,
}

pub fn flags(s: &Word) -> Flags {
    let inv = s.inverse();
    Flags {
        starts_on_peak: ends_with_run(s, true),
        starts_in_deep: ends_with_run(s, false),
        ends_on_peak: ends_with_run(&inv, true),
        ends_in_deep: ends_with_run(&inv, false),
    }
}

/// Right-side hook (`hook = true`, appending `ζ M⁻¹`) or cohook (appending
/// `ζ⁻¹ M`). A trivial string `1_u` is oriented so that its right side holds
/// the non-loop arrow ending at `u` and the loop leaving `u`; `trivial_loop`
/// selects whether the hook uses the loop.
fn append_right(s: &Word, hook: bool, trivial_loop: bool) -> Result<Option<Word>> {
    let f = flags(s);
    if (hook && f.starts_on_peak) || (!hook && f.starts_in_deep) {
        return Ok(None);
    }
    let mut found: Vec<Word> = Vec::new();
    for zeta in Arrow::ALL {
        let loop_wanted = if hook { trivial_loop } else { !trivial_loop };
        if s.is_empty() && (zeta.source() == zeta.target()) != loop_wanted {
            continue;
        }
        let first = if hook { Letter::direct(zeta) } else { Letter::inverse_of(zeta) };
        for m in maximal_paths() {
            let tail = if hook { m.inverse() } else { m };
            let mut letters = s.letters().to_vec();
            letters.push(first);
            letters.extend_from_slice(tail.letters());
            if s.is_empty() && first.target() != base_vertex(s) {
                continue;
            }
            let Ok(w) = Word::new(letters) else { continue };
            if is_valid_string_word(&w) {
                found.push(w);
            }
        }
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(found.pop()),
        _ => Err(Error::Precondition(format!(
            "{} of {s} is not unique: {}",
            if hook { "hook" } else { "cohook" },
            found.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" | ")
        ))),
    }
}

fn base_vertex(s: &Word) -> Vertex {
    s.target()
}

fn on_side(s: &Word, side: Side, op: impl Fn(&Word, bool) -> Result<Option<Word>>) -> Result<Option<Word>> {
    match side {
        Side::Right => op(s, false),
        Side::Left => Ok(op(&s.inverse(), true)?.map(|w| w.inverse())),
    }
}

/// `S_h` or `ₕS`, if defined.
pub fn add_hook(s: &Word, side: Side) -> Result<Option<Word>> {
    on_side(s, side, |w, tl| append_right(w, true, tl))
}

/// `S_c` or `꜀S`, if defined.
pub fn add_cohook(s: &Word, side: Side) -> Result<Option<Word>> {
    on_side(s, side, |w, tl| append_right(w, false, tl))
}

/// Undoes a right-side hook (`hook = true`) or cohook: returns `S'` with
/// `S = S'ζM⁻¹` (resp. `S'ζ⁻¹M`).
fn delete_right(s: &Word, hook: bool) -> Option<Word> {
    let ls = s.letters();
    for m in maximal_paths() {
        let tail = if hook { m.inverse() } else { m };
        if ls.len() > tail.len() && s.ends_with(tail.letters()) {
            let k = ls.len() - tail.len() - 1;
            if ls[k].is_direct() != hook {
                return None;
            }
            return Some(if k == 0 {
                Word::empty(ls[0].target())
            } else {
                Word::new(ls[..k].to_vec()).expect("prefix of a word")
            });
        }
    }
    None
}

pub fn delete_hook(s: &Word, side: Side) -> Option<Word> {
    match side {
        Side::Right => delete_right(s, true),
        Side::Left => delete_right(&s.inverse(), true).map(|w| w.inverse()),
    }
}

pub fn delete_cohook(s: &Word, side: Side) -> Option<Word> {
    match side {
        Side::Right => delete_right(s, false),
        Side::Left => delete_right(&s.inverse(), false).map(|w| w.inverse()),
    }
}

/// Irreducible maps leaving `M(S)`: `(target, kind)`.
pub fn successors(s: &Word) -> Result<Vec<(Word, EdgeKind)>> {
    let f = flags(s);
    let mut out = Vec::new();
    for side in [Side::Right, Side::Left] {
        let peak = if side == Side::Right { f.starts_on_peak } else { f.ends_on_peak };
        if !peak {
            if let Some(w) = add_hook(s, side)? {
                out.push((w, EdgeKind::new(true, side)));
            }
        } else if let Some(w) = delete_cohook(s, side) {
            out.push((w, EdgeKind::new(false, side)));
        }
    }
    Ok(out)
}

/// Irreducible maps arriving at `M(S)`: `(source, kind)`.
pub fn predecessors(s: &Word) -> Result<Vec<(Word, EdgeKind)>> {
    let f = flags(s);
    let mut out = Vec::new();
    for side in [Side::Right, Side::Left] {
        let deep = if side == Side::Right { f.starts_in_deep } else { f.ends_in_deep };
        if !deep {
            if let Some(w) = add_cohook(s, side)? {
                out.push((w, EdgeKind::new(false, side)));
            }
        } else if let Some(w) = delete_hook(s, side) {
            out.push((w, EdgeKind::new(true, side)));
        }
    }
    Ok(out)
}

/// `꜀S꜀`, when both cohooks can be added.
pub fn cohook_translate(s: &Word) -> Result<Option<Word>> {
    let Some(right) = add_cohook(s, Side::Right)? else { return Ok(None) };
    add_cohook(&right, Side::Left)
}

fn predecessor_move(s: &Word, side: Side) -> Result<Option<Word>> {
    let f = flags(s);
    let deep = if side == Side::Right { f.starts_in_deep } else { f.ends_in_deep };
    if deep {
        Ok(delete_hook(s, side))
    } else {
        add_cohook(s, side)
    }
}

/// The translate read off the mesh: on each side add a cohook, or delete a
/// hook where the word starts (or ends) in a deep.
pub fn mesh_translate(s: &Word) -> Result<Option<Word>> {
    let Some(right) = predecessor_move(s, Side::Right)? else { return Ok(None) };
    // a trivial word left by deleting a hook whose arrow is a loop sits on
    // the left side of `1_u`, so the remaining move goes to the right
    let flipped = right.is_empty()
        && s.letters().iter().rev().find(|l| l.is_direct()).is_some_and(|l| l.arrow.source() == l.arrow.target());
    predecessor_move(&right, if flipped { Side::Right } else { Side::Left })
}

/// `τ = Ω²`, valid because the algebra is symmetric.
pub fn ar_translate(r: &Rep) -> Rep {
    syzygy(&syzygy(r))
}

/// A module named by its string or band parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Identified {
    String { word: String },
    Band { word: String, mu: u32 },
    Unidentified { dim_vector: [usize; 3] },
}

pub fn identify(r: &Rep) -> Identified {
    if let Some(s) = identify_string(r) {
        return Identified::String { word: s.word().to_string() };
    }
    if let Some((b, mu)) = identify_band(r) {
        return Identified::Band { word: b.word().to_string(), mu };
    }
    Identified::Unidentified { dim_vector: r.dim_vector() }
}

/// `[r, Ωr, …, Ωⁿr]` with each member identified.
pub fn omega_orbit(r: &Rep, n: usize) -> Vec<(Rep, Identified)> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = r.clone();
    for k in 0..=n {
        let id = identify(&cur);
        let next = if k < n { Some(syzygy(&cur)) } else { None };
        out.push((cur, id));
        match next {
            Some(m) => cur = m,
            None => break,
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ArNode {
    pub word: String,
    pub dim: usize,
    pub distance: usize,
    pub flags: Flags,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

/// The part of a stable component within `radius` irreducible maps of the
/// center, walked in both directions.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentPage {
    pub center: String,
    pub radius: usize,
    pub nodes: Vec<ArNode>,
    pub edges: Vec<ArEdge>,
}

impl ComponentPage {
    pub fn contains(&self, s: &StringClass) -> bool {
        let key = s.word().to_string();
        self.nodes.iter().any(|n| n.word == key)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph component {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{} ({})\"];", n.word, n.dim);
        }
        let mut ranks: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            match ranks.iter_mut().find(|r| r.0 == n.dim) {
                Some(r) => r.1.push(i),
                None => ranks.push((n.dim, vec![i])),
            }
        }
        ranks.sort();
        for (_, ids) in &ranks {
            let names: Vec<String> = ids.iter().map(|i| format!("n{i}")).collect();
            let _ = writeln!(out, "  {{ rank=same; {} }}", names.join("; "));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -> n{} [kind=\"{}\"];", e.from, e.to, e.kind.name());
        }
        out.push_str("}\n");
        out
    }
}

pub fn component_page(center: &StringClass, radius: usize) -> Result<ComponentPage> {
    let mut index: HashMap<StringClass, usize> = HashMap::new();
    let mut nodes: Vec<ArNode> = Vec::new();
    let mut edges: BTreeSet<(usize, usize, EdgeKind)> = BTreeSet::new();
    let mut queue: VecDeque<(Word, usize)> = VecDeque::new();
    let mut intern =
        |w: &Word, d: usize, nodes: &mut Vec<ArNode>, queue: &mut VecDeque<(Word, usize)>| -> Result<usize> {
            let c = StringClass::new(w)?;
            if let Some(&i) = index.get(&c) {
                return Ok(i);
            }
            let i = nodes.len();
            nodes.push(ArNode { word: c.word().to_string(), dim: c.len() + 1, distance: d, flags: flags(c.word()) });
            index.insert(c.clone(), i);
            queue.push_back((c.word().clone(), d));
            Ok(i)
        };
    intern(center.word(), 0, &mut nodes, &mut queue)?;
    while let Some((w, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        let me = intern(&w, d, &mut nodes, &mut queue)?;
        for (t, kind) in successors(&w)? {
            let j = intern(&t, d + 1, &mut nodes, &mut queue)?;
            edges.insert((me, j, kind));
        }
        for (s, kind) in predecessors(&w)? {
            let j = intern(&s, d + 1, &mut nodes, &mut queue)?;
            edges.insert((j, me, kind));
        }
    }
    Ok(ComponentPage {
        center: center.word().to_string(),
        radius,
        nodes,
        edges: edges.into_iter().map(|(from, to, kind)| ArEdge { from, to, kind }).collect(),
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentClass {
    ThreeTube,
    ZaInfty,
    OneTube,
}

/// Component type of a string module: a 3-tube iff `τ³ ≅ id` on it.
pub fn component_class_string(f: Fp, s: &StringClass) -> Result<ComponentClass> {
    let m = string_rep(f, s.word())?;
    let t3 = ar_translate(&ar_translate(&ar_translate(&m)));
    Ok(if is_isomorphic(&t3, &m) { ComponentClass::ThreeTube } else { ComponentClass::ZaInfty })
}

/// Band modules lie in homogeneous tubes.
pub fn component_class_band(_b: &BandClass) -> ComponentClass {
    ComponentClass::OneTube
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::band_rep;
    use crate::words::{enumerate_strings, named};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }
    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }

    #[test]
    fn hooks_from_the_simple_modules() {
        let h = add_hook(&Word::empty(0), Side::Right).unwrap().unwrap();
        assert_eq!(h, w("la xi-"));
        assert_eq!(add_hook(&h, Side::Right).unwrap().unwrap(), w("la xi- de rh-"));
        for u in 0..3 {
            let h = add_hook(&Word::empty(u), Side::Right).unwrap().unwrap();
            assert_eq!(h, w("la xi-").theta(u as usize));
        }
        assert_eq!(add_hook(&w("al-"), Side::Right).unwrap().unwrap(), w("al- la xi-"));
        assert_eq!(add_hook(&w("al- la xi-"), Side::Right).unwrap().unwrap(), w("al- la xi- de rh-"));
    }

    #[test]
    fn left_hook_on_standard_strings() {
        let s = w("be al- la");
        assert_eq!(add_hook(&s, Side::Left).unwrap().unwrap(), w("la de rh- be al- la"));
        let hh = add_hook(&w("la de rh- be al- la"), Side::Left).unwrap().unwrap();
        assert_eq!(hh, w("de be al- la de rh- be al- la"));
    }

    #[test]
    fn deletion_inverts_addition() {
        for c in enumerate_strings(5) {
            let s = c.word();
            for side in [Side::Left, Side::Right] {
                if let Some(h) = add_hook(s, side).unwrap() {
                    if !s.is_empty() {
                        assert_eq!(delete_hook(&h, side).as_ref(), Some(s), "{s}");
                    }
                }
                if let Some(h) = add_cohook(s, side).unwrap() {
                    if !s.is_empty() {
                        assert_eq!(delete_cohook(&h, side).as_ref(), Some(s), "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn tau_matches_mesh_translate() {
        let f = f7();
        let s = w("la xi- de rh-");
        assert_eq!(cohook_translate(&s).unwrap(), None);
        let c = mesh_translate(&s).unwrap().unwrap();
        let lhs = ar_translate(&string_rep(f, &s).unwrap());
        assert!(is_isomorphic(&lhs, &string_rep(f, &c).unwrap()), "{c}");
        let mut checked = 0;
        for c in enumerate_strings(6) {
            let m = string_rep(f, c.word()).unwrap();
            let tau = ar_translate(&m);
            if let Some(t) = mesh_translate(c.word()).unwrap() {
                if cohook_translate(c.word()).unwrap().is_some() {
                    checked += 1;
                }
                assert!(is_isomorphic(&tau, &string_rep(f, &t).unwrap()), "{c}: {t}");
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn tubes() {
        let f = f7();
        let alpha = StringClass::new(&w("al")).unwrap();
        assert_eq!(component_class_string(f, &alpha).unwrap(), ComponentClass::ThreeTube);
        let s0 = StringClass::new(&Word::empty(0)).unwrap();
        assert_eq!(component_class_string(f, &s0).unwrap(), ComponentClass::ZaInfty);
        let b = band_rep(f, &named::p(), 3, 1).unwrap();
        assert!(is_isomorphic(&ar_translate(&b), &b));
    }

    #[test]
    fn pages() {
        let s0 = StringClass::new(&Word::empty(0)).unwrap();
        let page = component_page(&s0, 2).unwrap();
        assert!(page.contains(&StringClass::new(&w("la xi-")).unwrap()));
        assert!(page.contains(&StringClass::new(&w("la xi- de rh-")).unwrap()));
        let dot = page.to_dot();
        assert!(dot.starts_with("digraph") && dot.contains("hook_right"));
        let alpha = StringClass::new(&w("al")).unwrap();
        let tube = component_page(&alpha, 6).unwrap();
        let om = identify_string(&syzygy(&string_rep(f7(), &w("al")).unwrap())).unwrap();
        let db = component_page(&StringClass::new(&w("de be")).unwrap(), 6).unwrap();
        assert!(db.contains(&om), "{om}");
        assert!(!tube.contains(&om));
    }
}
