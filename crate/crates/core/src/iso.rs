//! Isomorphism testing, identification of string and band modules, and
//! removal of projective summands.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hom::hom_basis;
use crate::linalg::{self, Field, Fp, Mat};
use crate::rep::{band_rep, projective_rep, socle_path, string_rep, Rep};
use crate::words::{canonical_string, for_each_string_word, is_valid_band_word, BandClass, StringClass, Vertex, Word};

const RANDOM_TRIALS: usize = 40;
const SEED: u64 = 0x5eed_b15e;
/// Largest number of points tried by the exhaustive fallback.
const GRID_BUDGET: u64 = 20_000;

fn combine(f: &Fp, basis: &[Mat], coeffs: &[u32]) -> Mat {
    let mut acc = linalg::zeros(f, basis[0].rows(), basis[0].cols());
    for (b, c) in basis.iter().zip(coeffs) {
        if *c != 0 {
            acc = linalg::add(f, &acc, &linalg::scale(f, c, b));
        }
    }
    acc
}

fn nonsingular(f: &Fp, m: &Mat) -> bool {
    linalg::det(f, m).map(|d| d != 0).unwrap_or(false)
}

/// An invertible intertwiner `a → b`, if one is found.
///
/// Tries seeded random combinations of a Hom basis, then each basis element
/// `f_i` with some `g_j ∘ f_i` invertible (`g_j` from `Hom(b, a)`), then an
/// exhaustive grid when `dim Hom ≤ 3`. The pairwise stage is conclusive when
/// `a` has a local endomorphism ring, which holds for string and band modules.
pub fn find_isomorphism(a: &Rep, b: &Rep) -> Option<Mat> {
    let f = a.field();
    if a.dim_vector() != b.dim_vector() {
        return None;
    }
    if a.dim() == 0 {
        return Some(linalg::identity(&f, 0));
    }
    if a.top() != b.top() || a.socle() != b.socle() {
        return None;
    }
    let basis = hom_basis(a, b);
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.modulus())).collect();
        let m = combine(&f, &basis, &coeffs);
        if nonsingular(&f, &m) {
            return Some(m);
        }
    }
    let back = hom_basis(b, a);
    for fi in &basis {
        for gj in &back {
            if nonsingular(&f, &linalg::mul(&f, gj, fi)) {
                return Some(fi.clone());
            }
        }
    }
    let d = basis.len();
    if d <= 3 {
        let p = f.modulus() as u64;
        let side = if p.pow(d as u32) <= GRID_BUDGET {
            p
        } else {
            // a nonzero polynomial of degree ≤ dim cannot vanish on a grid of
            // side dim + 1
            (a.dim() as u64 + 1).min(p)
        };
        let total = side.pow(d as u32);
        if total <= GRID_BUDGET {
            for idx in 0..total {
                let mut t = idx;
                let coeffs: Vec<u32> = (0..d)
                    .map(|_| {
                        let c = (t % side) as u32;
                        t /= side;
                        c
                    })
                    .collect();
                let m = combine(&f, &basis, &coeffs);
                if nonsingular(&f, &m) {
                    return Some(m);
                }
            }
        }
    }
    None
}

pub fn is_isomorphic(a: &Rep, b: &Rep) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Vertices visited by a word, one per basis element of its string module.
fn word_vertices(letters: &[crate::words::Letter]) -> impl Iterator<Item = Vertex> + '_ {
    letters.iter().map(|l| l.target()).chain(letters.last().map(|l| l.source()))
}

/// String words of length `len` whose modules have dimension vector `dv`.
fn candidate_strings(len: usize, dv: [usize; 3]) -> Vec<Word> {
    let mut out = Vec::new();
    if len == 0 {
        for u in 0..3u8 {
            let mut e = [0; 3];
            e[u as usize] = 1;
            if e == dv {
                out.push(Word::empty(u));
            }
        }
        return out;
    }
    let mut prune = |ls: &[crate::words::Letter]| {
        let mut c = [0usize; 3];
        for l in ls {
            c[l.target() as usize] += 1;
        }
        c.iter().zip(dv.iter()).any(|(a, b)| a > b)
    };
    for_each_string_word(len, &mut prune, &mut |ls| {
        let mut c = [0usize; 3];
        for v in word_vertices(ls) {
            c[v as usize] += 1;
        }
        if c == dv {
            let w = Word::new(ls.to_vec()).expect("composable");
            if canonical_string(&w) == w {
                out.push(w);
            }
        }
    });
    out
}

/// The string whose module is isomorphic to `r`, with an isomorphism
/// `M(S) → r` on the canonical basis of the returned representative.
pub fn identify_string_with_iso(r: &Rep) -> Option<(StringClass, Mat)> {
    if r.dim() == 0 {
        return None;
    }
    let f = r.field();
    let (top, soc) = (r.top(), r.socle());
    for w in candidate_strings(r.dim() - 1, r.dim_vector()) {
        let m = string_rep(f, &w).expect("valid by construction");
        if m.top() != top || m.socle() != soc {
            continue;
        }
        if let Some(iso) = find_isomorphism(&m, r) {
            return Some((StringClass::new(&w).expect("valid"), iso));
        }
    }
    None
}

pub fn identify_string(r: &Rep) -> Option<StringClass> {
    identify_string_with_iso(r).map(|x| x.0)
}

/// A band class, parameter and isomorphism `M(B, μ, 1) → r` on the canonical
/// basis of the class representative.
pub fn identify_band_with_iso(r: &Rep) -> Option<(BandClass, u32, Mat)> {
    let f = r.field();
    let n = r.dim();
    if n < 2 {
        return None;
    }
    let dv = r.dim_vector();
    let (top, soc) = (r.top(), r.socle());
    let mut prune = |ls: &[crate::words::Letter]| {
        let mut c = [0usize; 3];
        for l in ls {
            c[l.target() as usize] += 1;
        }
        c.iter().zip(dv.iter()).any(|(a, b)| a > b)
    };
    let mut cands = Vec::new();
    for_each_string_word(n, &mut prune, &mut |ls| {
        let w = Word::new(ls.to_vec()).expect("composable");
        if w.is_closed() && is_valid_band_word(&w) {
            let c = BandClass::new(&w).expect("valid");
            if *c.word() == w {
                cands.push(c);
            }
        }
    });
    for c in cands {
        let probe = band_rep(f, c.word(), 1, 1).expect("valid");
        if probe.top() != top || probe.socle() != soc {
            continue;
        }
        for mu in f.units() {
            let m = band_rep(f, c.word(), mu, 1).expect("valid");
            if let Some(iso) = find_isomorphism(&m, r) {
                return Some((c, mu, iso));
            }
        }
    }
    None
}

pub fn identify_band(r: &Rep) -> Option<(BandClass, u32)> {
    identify_band_with_iso(r).map(|(c, mu, _)| (c, mu))
}

/// Splits off indecomposable projective summands. Returns the remaining
/// module, its inclusion into `r`, and the vertices of the removed summands.
pub fn strip_projective_summands(r: &Rep) -> (Rep, Mat, Vec<Vertex>) {
    let f = r.field();
    let mut cur = r.clone();
    let mut incl = linalg::identity(&f, r.dim());
    let mut removed = Vec::new();
    'outer: loop {
        for u in 0..3u8 {
            let s = cur.path_matrix(&socle_path(u));
            let Some(col) = (0..cur.dim()).find(|&c| (0..cur.dim()).any(|i| *s.get(i, c) != 0)) else {
                continue;
            };
            let p = projective_rep(f, u);
            // the map P_u → cur sending the top generator to basis vector `col`
            let cols: Vec<Vec<u32>> =
                crate::rep::projective_paths(u).iter().map(|path| cur.path_matrix(path).col(col)).collect();
            let phi = linalg::Matrix::from_cols(cur.dim(), &cols, 0);
            let retraction = hom_basis(&cur, &p)
                .into_iter()
                .find(|g| nonsingular(&f, &linalg::mul(&f, g, &phi)))
                .expect("a projective submodule with nonzero socle is a summand");
            let (rest, sub_incl) = cur.kernel_of(&retraction, p.grade());
            incl = linalg::mul(&f, &incl, &sub_incl);
            cur = rest;
            removed.push(u);
            continue 'outer;
        }
        break;
    }
    (cur, incl, removed)
}

/// Whether the parameters `(w, μ)` and `(w', μ')` describe isomorphic band
/// modules, decided from the words alone.
pub fn same_band_module(f: &Fp, w: &Word, mu: u32, w2: &Word, mu2: u32) -> bool {
    let (Ok((c1, o1)), Ok((c2, o2))) = (BandClass::with_orientation(w), BandClass::with_orientation(w2)) else {
        return false;
    };
    let norm = |mu: u32, inv: bool| if inv { f.inv(&mu).expect("nonzero") } else { mu % f.modulus() };
    c1 == c2 && norm(mu, o1.inverted) == norm(mu2, o2.inverted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::syzygy;
    use crate::words::{enumerate_strings, named};

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }
    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn string_and_inverse_agree() {
        for s in enumerate_strings(5) {
            let a = string_rep(f7(), s.word()).unwrap();
            let b = string_rep(f7(), &s.word().inverse()).unwrap();
            assert!(is_isomorphic(&a, &b), "{s}");
        }
    }

    #[test]
    fn distinct_simples_and_parameters() {
        let s0 = string_rep(f7(), &Word::empty(0)).unwrap();
        let s1 = string_rep(f7(), &Word::empty(1)).unwrap();
        assert!(!is_isomorphic(&s0, &s1));
        let x2 = band_rep(f7(), &named::x(), 2, 1).unwrap();
        let x3 = band_rep(f7(), &named::x(), 3, 1).unwrap();
        assert!(!is_isomorphic(&x2, &x3));
    }

    #[test]
    fn band_rotation_and_inversion() {
        let f = f7();
        let b = named::p();
        for mu in f.units() {
            let m = band_rep(f, &b, mu, 1).unwrap();
            for i in 0..b.len() {
                let r = b.rotate(i).unwrap();
                assert!(is_isomorphic(&m, &band_rep(f, &r, mu, 1).unwrap()), "rotation {i}");
                let inv = f.inv(&mu).unwrap();
                assert!(is_isomorphic(&m, &band_rep(f, &r.inverse(), inv, 1).unwrap()));
            }
        }
    }

    #[test]
    fn identification_examples() {
        let f = f7();
        let s = w("be al- la");
        let m = string_rep(f, &s).unwrap();
        assert_eq!(identify_string(&m), Some(StringClass::new(&s).unwrap()));
        let om = syzygy(&string_rep(f, &Word::empty(0)).unwrap());
        let id = identify_string(&om).expect("radical of P0 is a string module");
        assert_eq!(id.len(), 3);
        let x2 = band_rep(f, &named::x(), 2, 1).unwrap();
        assert_eq!(identify_string(&x2), None);
        let (c, mu) = identify_band(&x2).unwrap();
        assert!(same_band_module(&f, c.word(), mu, &named::x(), 2));
    }

    #[test]
    fn stripping_projectives() {
        let f = f7();
        let m = string_rep(f, &w("be al- la")).unwrap();
        let sum = m.direct_sum(&projective_rep(f, 1)).direct_sum(&projective_rep(f, 0));
        let (core, incl, removed) = strip_projective_summands(&sum);
        assert_eq!(removed.len(), 2);
        assert!(is_isomorphic(&core, &m));
        assert!(crate::hom::is_hom(&core, &sum, &incl));
    }
}
