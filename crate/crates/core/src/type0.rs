//! Words over the two blocks `x = λξ⁻¹δβα⁻¹` and `y = λδρ⁻¹βα⁻¹`, the framing
//! conditions on them, and the level recursion that generates and recognizes
//! the words satisfying those conditions.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Fp, Mat, Matrix};
use crate::words::{is_valid_band_word, named, Letter, Word};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Block {
    X,
    Y,
}

impl Block {
    pub fn swap(self) -> Block {
        match self {
            Block::X => Block::Y,
            Block::Y => Block::X,
        }
    }
    fn from_bit(b: u8) -> Block {
        if b.is_multiple_of(2) {
            Block::X
        } else {
            Block::Y
        }
    }
    fn bit(self) -> u8 {
        match self {
            Block::X => 0,
            Block::Y => 1,
        }
    }
    pub fn word(self) -> Word {
        match self {
            Block::X => named::x(),
            Block::Y => named::y(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Type0Word(pub Vec<Block>);

impl Type0Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn blocks(&self) -> &[Block] {
        &self.0
    }
    /// The inverse pattern: blocks in reverse order.
    pub fn reversed(&self) -> Type0Word {
        Type0Word(self.0.iter().rev().copied().collect())
    }
    /// Exchanges `X` and `Y`.
    pub fn swapped(&self) -> Type0Word {
        Type0Word(self.0.iter().map(|b| b.swap()).collect())
    }
    pub fn rotate(&self, i: usize) -> Type0Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let i = i % self.len();
        let mut v = self.0[i..].to_vec();
        v.extend_from_slice(&self.0[..i]);
        Type0Word(v)
    }
    fn concat(parts: &[&Type0Word]) -> Type0Word {
        Type0Word(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }
    fn power(&self, k: usize) -> Type0Word {
        Type0Word(self.0.iter().copied().cycle().take(self.len() * k).collect())
    }

    /// All words of length `n`, in lexicographic order.
    pub fn all_of_len(n: usize) -> Vec<Type0Word> {
        (0..1usize << n)
            .map(|bits| Type0Word((0..n).map(|k| Block::from_bit(((bits >> (n - 1 - k)) & 1) as u8)).collect()))
            .collect()
    }
}

impl fmt::Display for Type0Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for b in &self.0 {
            write!(f, "{}", if *b == Block::X { 'X' } else { 'Y' })?;
        }
        Ok(())
    }
}

impl FromStr for Type0Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Type0Word> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Type0Word::default());
        }
        s.chars()
            .map(|c| match c {
                'X' | 'x' => Ok(Block::X),
                'Y' | 'y' => Ok(Block::Y),
                _ => Err(Error::Type0(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Type0Word)
    }
}

/// Letterwise substitution; the empty word expands to `1_0`.
pub fn expand(z: &Type0Word) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(5 * z.len());
    for b in &z.0 {
        letters.extend_from_slice(b.word().letters());
    }
    if letters.is_empty() {
        return Word::empty(0);
    }
    Word::new(letters).expect("blocks start and end at vertex 0")
}

fn prefix_word() -> Word {
    Word::parse("be al-").expect("hardcoded")
}
fn suffix_word() -> Word {
    Word::parse("la").expect("hardcoded")
}

/// `βα⁻¹ · expand(z) · λ`.
pub fn standard_string(z: &Type0Word) -> Word {
    let w = Word::concat_all(&[&prefix_word(), &expand(z), &suffix_word()]).expect("composable");
    debug_assert!(crate::words::is_valid_string_word(&w));
    w
}

/// Inverse of [`standard_string`].
pub fn parse_standard_string(s: &Word) -> Result<Type0Word> {
    let ls = s.letters();
    let err = || Error::Type0(s.to_string());
    if ls.len() < 3 || ls[..2] != *prefix_word().letters() || ls[ls.len() - 1] != suffix_word().letters()[0] {
        return Err(err());
    }
    let body = &ls[2..ls.len() - 1];
    if !body.len().is_multiple_of(5) {
        return Err(err());
    }
    body.chunks(5)
        .map(|c| {
            if c == named::x().letters() {
                Ok(Block::X)
            } else if c == named::y().letters() {
                Ok(Block::Y)
            } else {
                Err(err())
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Type0Word)
}

/// Subpatterns `U` framed by `c` in one of the three shapes: `U c …`,
/// `… c U c …`, `… c U`.
fn framed(z: &[Block], c: Block) -> HashSet<Vec<Block>> {
    let n = z.len();
    let mut out = HashSet::new();
    for k in 0..n {
        if z[k] != c {
            continue;
        }
        out.insert(z[..k].to_vec());
        out.insert(z[k + 1..].to_vec());
        for m in k + 1..n {
            if z[m] == c {
                out.insert(z[k + 1..m].to_vec());
            }
        }
    }
    out
}

/// Condition (+): no subpattern is framed both by `x` and by `y`.
pub fn check_plus(z: &Type0Word) -> bool {
    let fx = framed(&z.0, Block::X);
    let fy = framed(&z.0, Block::Y);
    fx.is_disjoint(&fy)
}

fn cyclic_framed(z: &[Block], c: Block) -> HashSet<Vec<Block>> {
    let n = z.len();
    let mut out = HashSet::new();
    for r in 0..n {
        if z[r] != c {
            continue;
        }
        let rot: Vec<Block> = (0..n).map(|t| z[(r + t) % n]).collect();
        for k in 0..n.saturating_sub(1) {
            if rot[k + 1] == c {
                out.insert(rot[1..k + 1].to_vec());
            }
        }
    }
    out
}

/// Condition (++), the cyclic analogue of (+). The word must expand to a band.
pub fn check_plusplus(z: &Type0Word) -> Result<bool> {
    if z.is_empty() || !is_valid_band_word(&expand(z)) {
        return Err(Error::Type0(z.to_string()));
    }
    Ok(cyclic_framed(&z.0, Block::X).is_disjoint(&cyclic_framed(&z.0, Block::Y)))
}

/// Every ω with `z_i = z_{ω−i}` for all `i`, indices mod `n`.
pub fn wrap_arounds(z: &Type0Word) -> Vec<usize> {
    let n = z.len();
    (0..n).filter(|&w| (0..n).all(|i| z.0[i] == z.0[(w + n - i) % n])).collect()
}

/// The tuples `(i₁,…,i_{ℓ−1})` and `(a₁,…,a_{ℓ−1})` of a level `ℓ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelParams {
    pub i: Vec<u8>,
    pub a: Vec<usize>,
}

impl LevelParams {
    pub fn new(i: Vec<u8>, a: Vec<usize>) -> Result<LevelParams> {
        if i.len() != a.len() || i.iter().any(|&b| b > 1) || a.contains(&0) {
            return Err(Error::InvalidParameter("level tuples must have equal length, i in {0,1}, a ≥ 1".into()));
        }
        Ok(LevelParams { i, a })
    }
    pub fn level(&self) -> usize {
        self.i.len() + 1
    }
}

/// The recursive block word `N_{is}(as)`, with `as.len() + 1 == is.len()`.
fn level_block(is: &[u8], as_: &[usize]) -> Type0Word {
    let l = is.len();
    assert!(l >= 1 && as_.len() + 1 == l);
    if l == 1 {
        return Type0Word(vec![Block::from_bit(is[0])]);
    }
    let prefix = &is[..l - 1];
    let base = level_block(prefix, &as_[..l - 2]);
    let exp = as_[l - 2] + usize::from(is[l - 1] % 2 == 1);
    let mut tail_is = prefix[..l - 2].to_vec();
    tail_is.push((prefix[l - 2] + 1) % 2);
    let tail = level_block(&tail_is, &as_[..l - 2]);
    Type0Word::concat(&[&base.power(exp), &tail])
}

/// `(x^(ℓ), y^(ℓ))` as block words.
pub fn level_letters(p: &LevelParams) -> (Type0Word, Type0Word) {
    let mut ix = p.i.clone();
    ix.push(0);
    let mut iy = p.i.clone();
    iy.push(1);
    (level_block(&ix, &p.a), level_block(&iy, &p.a))
}

/// The block parts of `b^(ℓ)` (after `βα⁻¹`) and `l^(ℓ)` (before `λ`).
pub fn level_frame_blocks(p: &LevelParams) -> (Type0Word, Type0Word) {
    let l = p.level();
    let mut b = Type0Word::default();
    for j in 1..l {
        let mut is = p.i[..j].to_vec();
        is.push(0);
        b = Type0Word::concat(&[&b, &level_block(&is, &p.a[..j])]);
    }
    let mut tail = Type0Word::default();
    for j in (1..l).rev() {
        let c = level_block(&p.i[..j], &p.a[..j - 1]);
        tail = Type0Word::concat(&[&tail, &c.power(p.a[j - 1])]);
    }
    (b, tail)
}

/// `(b^(ℓ), l^(ℓ))` as letter words.
pub fn level_frame(p: &LevelParams) -> (Word, Word) {
    let (b, l) = level_frame_blocks(p);
    let bw = Word::concat_all(&[&prefix_word(), &expand(&b)]).expect("composable");
    let lw = if l.is_empty() {
        suffix_word()
    } else {
        Word::concat_all(&[&expand(&l), &suffix_word()]).expect("composable")
    };
    (bw, lw)
}

/// Which middle part a normal form carries.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    Bare,
    X(usize),
    Y(usize),
}

/// Block word of `b^(ℓ) · middle · l^(ℓ)`, without the letters `βα⁻¹` and `λ`.
pub fn plus_normal_form_blocks(p: &LevelParams, shape: Shape) -> Type0Word {
    let (b, l) = level_frame_blocks(p);
    let (xl, yl) = level_letters(p);
    let mid = match shape {
        Shape::Bare => Type0Word::default(),
        Shape::X(a) => xl.power(a),
        Shape::Y(a) => yl.power(a),
    };
    Type0Word::concat(&[&b, &mid, &l])
}

pub fn plus_normal_forms(p: &LevelParams, shape: Shape) -> Result<Word> {
    if matches!(shape, Shape::X(0) | Shape::Y(0)) {
        return Err(Error::InvalidParameter("exponent must be positive".into()));
    }
    Ok(standard_string(&plus_normal_form_blocks(p, shape)))
}

/// Maximal runs as `(bit, length)`.
fn runs(z: &[u8]) -> Vec<(u8, usize)> {
    let mut out: Vec<(u8, usize)> = Vec::new();
    for &b in z {
        match out.last_mut() {
            Some((c, k)) if *c == b => *k += 1,
            _ => out.push((b, 1)),
        }
    }
    out
}

/// Peels one level off a linear block word: `c^a d (c^{a or a+1} d)* c^a`.
fn recognize_linear(z: &[u8], p: &mut LevelParams) -> Option<Shape> {
    if z.is_empty() {
        return Some(Shape::Bare);
    }
    let rs = runs(z);
    if rs.len() == 1 {
        return Some(if rs[0].0 == 0 { Shape::X(rs[0].1) } else { Shape::Y(rs[0].1) });
    }
    let c = z[0];
    let a = rs[0].1;
    if rs.last()?.0 != c || rs.last()?.1 != a {
        return None;
    }
    let mut next = Vec::new();
    for (k, &(bit, len)) in rs.iter().enumerate() {
        if bit != c {
            if len != 1 {
                return None;
            }
        } else if len != a && len != a + 1 {
            return None;
        } else if k != 0 && k != rs.len() - 1 {
            next.push(u8::from(len == a + 1));
        }
    }
    p.i.push(c);
    p.a.push(a);
    recognize_linear(&next, p)
}

/// Level parameters and shape reproducing a standard string, if any.
pub fn recognize_plus(s: &Word) -> Result<Option<(LevelParams, Shape)>> {
    let z = parse_standard_string(s)?;
    let bits: Vec<u8> = z.0.iter().map(|b| b.bit()).collect();
    let mut p = LevelParams::default();
    let Some(shape) = recognize_linear(&bits, &mut p) else {
        return Ok(None);
    };
    if plus_normal_form_blocks(&p, shape) != z {
        return Ok(None);
    }
    Ok(Some((p, shape)))
}

/// Peels one level off a cyclic block word made of blocks `c^a d`, `c^{a+1} d`.
fn recognize_cyclic(z: &[u8], p: &mut LevelParams) -> Option<Block> {
    let n = z.len();
    if n == 1 {
        return Some(Block::from_bit(z[0]));
    }
    if z.iter().all(|&b| b == z[0]) {
        return None;
    }
    // rotate to begin right after a change of letter, so runs do not wrap
    let start = (0..n).find(|&k| z[k] != z[(k + n - 1) % n])?;
    let rot: Vec<u8> = (0..n).map(|t| z[(start + t) % n]).collect();
    let rs = runs(&rot);
    let ones = |bit: u8| rs.iter().filter(|r| r.0 == bit).all(|r| r.1 == 1);
    // alternating words contract along X
    let c = if ones(1) {
        0
    } else if ones(0) {
        1
    } else {
        return None;
    };
    let crun: Vec<usize> = rs.iter().filter(|r| r.0 == c).map(|r| r.1).collect();
    let a = *crun.iter().min()?;
    if crun.iter().any(|&r| r != a && r != a + 1) {
        return None;
    }
    let next: Vec<u8> = crun.iter().map(|&r| u8::from(r == a + 1)).collect();
    p.i.push(c);
    p.a.push(a);
    recognize_cyclic(&next, p)
}

/// Level parameters with `z` a rotation of `x^(ℓ)` or `y^(ℓ)`, if any.
pub fn recognize_plusplus(z: &Type0Word) -> Option<(LevelParams, Block)> {
    if z.is_empty() {
        return None;
    }
    let bits: Vec<u8> = z.0.iter().map(|b| b.bit()).collect();
    let mut p = LevelParams::default();
    let which = recognize_cyclic(&bits, &mut p)?;
    let (xl, yl) = level_letters(&p);
    let target = if which == Block::X { xl } else { yl };
    if target.len() != z.len() || !(0..z.len()).any(|r| z.rotate(r) == target) {
        return None;
    }
    Some((p, which))
}

/// The canonical maps attached to a wrap-around at `omega` of the band on
/// `expand(z)`, between the modules with parameters μ and μ̃ (the latter is
/// only needed by callers). Returns `(j, s, matrix)` for `s ∈ {1, 2}`.
pub fn wrap_around_maps(z: &Type0Word, omega: usize) -> Vec<(usize, u8, Mat)> {
    let n = z.len();
    let dim = 5 * n;
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let nu = if z.0[j] == Block::X { 1 } else { 2 };
        let base = 5 * ((omega + n - j) % n);
        let mut m1 = Matrix::filled(dim, dim, 0);
        m1.set((base + nu + 1) % dim, 5 * j + nu, 1);
        out.push((j, 1, m1));
        let mut m2 = Matrix::filled(dim, dim, 0);
        m2.set(base % dim, 5 * j + 4, 1);
        out.push((j, 2, m2));
    }
    out
}

/// The combinations of wrap-around maps that factor through projectives
/// whatever the parameters are: `(description, matrix)`.
pub fn wrap_around_relations(f: &Fp, z: &Type0Word, omega: usize, mu: u32, mu_t: u32) -> Vec<(String, Mat)> {
    let n = z.len();
    let maps = wrap_around_maps(z, omega);
    let get = |j: usize, s: u8| maps.iter().find(|m| m.0 == j && m.1 == s).expect("present").2.clone();
    let lin = |a: &Mat, c: u32, b: &Mat| crate::linalg::add(f, a, &crate::linalg::scale(f, &c, b));
    let mut out = Vec::new();
    for j in 0..n {
        if j != omega {
            out.push((format!("xi[{j},1] + xi[{j},2]"), lin(&get(j, 1), 1, &get(j, 2))));
        }
    }
    out.push((format!("xi[{omega},1] + mu~ xi[{omega},2]"), lin(&get(omega, 1), mu_t, &get(omega, 2))));
    for j in 0..n.saturating_sub(1) {
        out.push((format!("xi[{j},2] + xi[{},1]", j + 1), lin(&get(j, 2), 1, &get(j + 1, 1))));
    }
    out.push((format!("xi[{},2] + mu xi[0,1]", n - 1), lin(&get(n - 1, 2), mu % f.modulus(), &get(0, 1))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::is_valid_string_word;

    fn t(s: &str) -> Type0Word {
        s.parse().unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand(&t("-")), Word::empty(0));
        assert_eq!(standard_string(&t("-")), Word::parse("be al- la").unwrap());
        for n in 0..6 {
            for z in Type0Word::all_of_len(n) {
                let s = standard_string(&z);
                assert_eq!(s.len(), 3 + 5 * n);
                assert!(is_valid_string_word(&s));
                assert_eq!(parse_standard_string(&s).unwrap(), z);
            }
        }
    }

    #[test]
    fn plus_examples() {
        assert!(check_plus(&t("-")));
        assert!(!check_plus(&t("XY")));
        assert!(check_plus(&t("XYX")));
    }

    #[test]
    fn plusplus_examples() {
        assert!(check_plusplus(&t("X")).unwrap());
        assert!(!check_plusplus(&t("XXYY")).unwrap());
        assert!(check_plusplus(&t("XY")).unwrap());
        assert!(check_plusplus(&t("XX")).is_err());
        assert!(check_plusplus(&t("-")).is_err());
    }

    #[test]
    fn level_examples() {
        assert_eq!(level_letters(&LevelParams::default()), (t("X"), t("Y")));
        let p = LevelParams::new(vec![0], vec![1]).unwrap();
        assert_eq!(level_letters(&p), (t("XY"), t("XXY")));
        let q = LevelParams::new(vec![1], vec![2]).unwrap();
        assert_eq!(level_letters(&q), (t("YYX"), t("YYYX")));
        let (b, l) = level_frame(&LevelParams::default());
        assert_eq!(b, Word::parse("be al-").unwrap());
        assert_eq!(l, Word::parse("la").unwrap());
        assert_eq!(level_frame_blocks(&p), (t("XY"), t("X")));
        assert_eq!(plus_normal_forms(&p, Shape::Bare).unwrap(), standard_string(&t("XYX")));
        assert_eq!(plus_normal_forms(&LevelParams::default(), Shape::X(2)).unwrap(), standard_string(&t("XX")));
    }

    #[test]
    fn recognition_examples() {
        assert_eq!(recognize_plus(&standard_string(&t("XY"))).unwrap(), None);
        let (p, shape) = recognize_plus(&standard_string(&t("XYX"))).unwrap().unwrap();
        assert_eq!((p.i.as_slice(), p.a.as_slice(), shape), (&[0u8][..], &[1usize][..], Shape::Bare));
        let (p, shape) = recognize_plus(&standard_string(&t("-"))).unwrap().unwrap();
        assert_eq!((p.level(), shape), (1, Shape::Bare));
        assert!(recognize_plus(&Word::parse("al").unwrap()).is_err());
        assert_eq!(wrap_arounds(&t("X")), vec![0]);
        assert_eq!(wrap_arounds(&t("XY")), vec![0]);
        assert_eq!(recognize_plusplus(&t("XXYY")), None);
        let (p, which) = recognize_plusplus(&t("XY")).unwrap();
        assert_eq!((p.i, p.a, which), (vec![0], vec![1], Block::X));
    }

    #[test]
    fn recognizers_match_brute_force() {
        for n in 0..=12 {
            for z in Type0Word::all_of_len(n) {
                let rec = recognize_plus(&standard_string(&z)).unwrap();
                assert_eq!(rec.is_some(), check_plus(&z), "{z}");
                if n >= 1 && is_valid_band_word(&expand(&z)) {
                    assert_eq!(recognize_plusplus(&z).is_some(), check_plusplus(&z).unwrap(), "{z}");
                }
            }
        }
    }

    #[test]
    fn wrap_maps_are_homs_and_relations_factor() {
        use crate::hom::{in_span, is_hom, projective_factor_subspace};
        use crate::rep::band_rep;
        let f = Fp::new(5).unwrap();
        for n in 1..=4 {
            for z in Type0Word::all_of_len(n) {
                let w = expand(&z);
                if !is_valid_band_word(&w) || !check_plusplus(&z).unwrap() {
                    continue;
                }
                for omega in wrap_arounds(&z) {
                    for (mu, mu_t) in [(1, 1), (2, 3), (4, 2)] {
                        let m = band_rep(f, &w, mu, 1).unwrap();
                        let mt = band_rep(f, &w, mu_t, 1).unwrap();
                        for (j, s, g) in wrap_around_maps(&z, omega) {
                            assert!(is_hom(&m, &mt, &g), "{z} omega={omega} xi[{j},{s}]");
                        }
                        let pf = projective_factor_subspace(&m, &mt);
                        for (name, g) in wrap_around_relations(&f, &z, omega, mu, mu_t) {
                            assert!(in_span(&f, &pf, &g), "{z} omega={omega} mu={mu} mu~={mu_t}: {name}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normal_forms_satisfy_plus() {
        let mut params = vec![LevelParams::default()];
        for i1 in 0..2 {
            for a1 in 1..3 {
                params.push(LevelParams::new(vec![i1], vec![a1]).unwrap());
                for i2 in 0..2 {
                    params.push(LevelParams::new(vec![i1, i2], vec![a1, 1]).unwrap());
                }
            }
        }
        for p in params {
            for shape in [Shape::Bare, Shape::X(1), Shape::Y(1), Shape::X(2), Shape::Y(2)] {
                let z = plus_normal_form_blocks(&p, shape);
                if z.len() <= 10 {
                    assert!(check_plus(&z), "{p:?} {shape:?} gives {z}");
                }
            }
        }
    }
}
