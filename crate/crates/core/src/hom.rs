//! Homomorphism spaces. The linear oracle solves the intertwiner equations
//! directly; the canonical constructions build maps from matching subwords.
//! Matrices of maps `M → N` are `dim N × dim M`, and `g ∘ f` is `g · f`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Fp, Mat, Matrix, SparseEchelon};
use crate::rep::{band_rep, projective_cover, string_rep, syzygy_with_data, Rep};
use crate::words::{Arrow, Letter, Word};

/// A basis of `Hom(M, N)`, optionally labelled by canonical descriptors.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub basis: Vec<Mat>,
    pub descriptors: Option<Vec<CanonicalHomDescriptor>>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Where a factor word sits in oriented source and target words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalHomDescriptor {
    /// The shared factor, read in the oriented source.
    pub factor: Word,
    /// Source read as its inverse (strings) or reversed (bands).
    pub source_inverted: bool,
    pub target_inverted: bool,
    pub source_offset: usize,
    pub target_offset: usize,
    pub length: usize,
}

/// All graded intertwiners `M → N`.
pub fn hom_basis(m: &Rep, n: &Rep) -> Vec<Mat> {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut var = vec![usize::MAX; dm * dn];
    let mut nvars = 0;
    for r in 0..dn {
        for c in 0..dm {
            if n.grade()[r] == m.grade()[c] {
                var[r * dm + c] = nvars;
                nvars += 1;
            }
        }
    }
    if nvars == 0 {
        return Vec::new();
    }
    let mut sys = SparseEchelon::new(f, nvars);
    for a in Arrow::ALL {
        let xm = m.matrix(a);
        let xn = n.matrix(a);
        let col_nz: Vec<Vec<(usize, u32)>> =
            (0..dm).map(|c| (0..dm).filter_map(|k| Some((k, *xm.get(k, c))).filter(|e| e.1 != 0)).collect()).collect();
        let row_nz: Vec<Vec<(usize, u32)>> =
            (0..dn).map(|r| (0..dn).filter_map(|k| Some((k, *xn.get(r, k))).filter(|e| e.1 != 0)).collect()).collect();
        for r in n.indices_at(a.target()) {
            for c in m.indices_at(a.source()) {
                let mut row: Vec<(usize, u32)> = Vec::new();
                for &(k, v) in &col_nz[c] {
                    row.push((var[r * dm + k], v));
                }
                for &(k, v) in &row_nz[r] {
                    row.push((var[k * dm + c], f.elem(-(v as i64))));
                }
                if !row.is_empty() {
                    sys.insert(row);
                }
            }
        }
    }
    sys.kernel()
        .into_iter()
        .map(|v| {
            let mut mat = Matrix::filled(dn, dm, 0);
            for r in 0..dn {
                for c in 0..dm {
                    let id = var[r * dm + c];
                    if id != usize::MAX {
                        mat.set(r, c, v[id]);
                    }
                }
            }
            mat
        })
        .collect()
}

pub fn hom_dim(m: &Rep, n: &Rep) -> usize {
    hom_basis(m, n).len()
}

/// True when `g` intertwines the two actions and respects the grading.
pub fn is_hom(m: &Rep, n: &Rep, g: &Mat) -> bool {
    let f = m.field();
    if g.rows() != n.dim() || g.cols() != m.dim() {
        return false;
    }
    for r in 0..n.dim() {
        for c in 0..m.dim() {
            if *g.get(r, c) != 0 && n.grade()[r] != m.grade()[c] {
                return false;
            }
        }
    }
    Arrow::ALL.iter().all(|&a| linalg::mul(&f, g, m.matrix(a)) == linalg::mul(&f, n.matrix(a), g))
}

/// Reduced basis of the span of equally shaped matrices.
fn span_basis(f: &Fp, mats: &[Mat], rows: usize, cols: usize) -> Vec<Mat> {
    if mats.is_empty() {
        return Vec::new();
    }
    let stacked = Matrix::from_rows(mats.iter().map(|m| m.data().to_vec()).collect());
    let red = linalg::rref(f, &stacked);
    (0..red.rank).map(|i| Matrix::from_vec(rows, cols, red.matrix.row(i).to_vec())).collect()
}

/// Basis of the maps `M → N` that factor through a projective module, found as
/// `{π ∘ g : g ∈ Hom(M, P(N))}`.
pub fn projective_factor_subspace(m: &Rep, n: &Rep) -> Vec<Mat> {
    let f = m.field();
    if n.dim() == 0 || m.dim() == 0 {
        return Vec::new();
    }
    let cover = projective_cover(n);
    let images: Vec<Mat> = hom_basis(m, &cover.module).iter().map(|g| linalg::mul(&f, &cover.map, g)).collect();
    span_basis(&f, &images, n.dim(), m.dim())
}

/// Whether `g` lies in the span of `subspace`.
pub fn in_span(f: &Fp, subspace: &[Mat], g: &Mat) -> bool {
    let mut all = subspace.to_vec();
    let before = linalg::span_rank(f, &all);
    all.push(g.clone());
    linalg::span_rank(f, &all) == before
}

pub fn stable_hom_dim(m: &Rep, n: &Rep) -> usize {
    hom_dim(m, n) - projective_factor_subspace(m, n).len()
}

pub fn stable_end_dim(m: &Rep) -> usize {
    stable_hom_dim(m, m)
}

/// `dim Ext¹(M, N)`, computed as the stable Hom from `Ω(M)` and, separately,
/// as the cokernel of restriction along `Ω(M) → P(M)`.
pub fn ext1_dim(m: &Rep, n: &Rep) -> Result<usize> {
    let f = m.field();
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(0);
    }
    let syz = syzygy_with_data(m);
    let om = &syz.module;
    if om.dim() == 0 {
        return Ok(0);
    }
    let via_stable = stable_hom_dim(om, n);
    let restricted: Vec<Mat> =
        hom_basis(&syz.cover.module, n).iter().map(|g| linalg::mul(&f, g, &syz.inclusion)).collect();
    let via_cokernel = hom_dim(om, n) - linalg::span_rank(&f, &restricted);
    if via_stable != via_cokernel {
        return Err(Error::OracleMismatch(format!(
            "Ext¹ via stable Hom is {via_stable}, via restriction is {via_cokernel}"
        )));
    }
    Ok(via_stable)
}

/// A word read in one of its two directions, with basis positions relative to
/// the original word.
struct Oriented {
    letters: Vec<Letter>,
    inverted: bool,
    len: usize,
}

impl Oriented {
    fn new(w: &Word, inverted: bool) -> Oriented {
        let letters = if inverted { w.inverse().letters().to_vec() } else { w.letters().to_vec() };
        Oriented { len: letters.len(), letters, inverted }
    }
    /// Letter `k` (1-based), cyclically for bands.
    fn letter(&self, k: usize) -> Letter {
        self.letters[(k + self.len - 1) % self.len]
    }
    fn string_pos(&self, p: usize) -> usize {
        if self.inverted {
            self.len - p
        } else {
            p
        }
    }
    fn band_pos(&self, p: usize) -> usize {
        if self.inverted {
            (self.len - p % self.len) % self.len
        } else {
            p % self.len
        }
    }
}

/// Canonical maps `M(S) → M(T)` on the canonical bases of the given words,
/// with no independence check. Maps with the same support are listed once.
pub fn canonical_string_homs_raw(s: &Word, t: &Word) -> Vec<(CanonicalHomDescriptor, Vec<(usize, usize)>)> {
    let mut out: Vec<(CanonicalHomDescriptor, Vec<(usize, usize)>)> = Vec::new();
    let vertex_at = |w: &Word, p: usize| -> u8 {
        if p < w.len() {
            w.letters()[p].target()
        } else {
            w.source()
        }
    };
    for s_inv in [false, true] {
        let so = Oriented::new(s, s_inv);
        let sw = if s_inv { s.inverse() } else { s.clone() };
        for t_inv in [false, true] {
            let to = Oriented::new(t, t_inv);
            let tw = if t_inv { t.inverse() } else { t.clone() };
            for i in 0..=so.len {
                if i > 0 && !so.letters[i - 1].is_direct() {
                    continue;
                }
                for len in 0..=so.len - i {
                    if i + len < so.len && so.letters[i + len].is_direct() {
                        continue;
                    }
                    let factor = &so.letters[i..i + len];
                    for j in 0..=to.len.saturating_sub(len) {
                        if j + len > to.len {
                            continue;
                        }
                        if j > 0 && to.letters[j - 1].is_direct() {
                            continue;
                        }
                        if j + len < to.len && !to.letters[j + len].is_direct() {
                            continue;
                        }
                        if &to.letters[j..j + len] != factor {
                            continue;
                        }
                        if len == 0 && vertex_at(&sw, i) != vertex_at(&tw, j) {
                            continue;
                        }
                        let mut support: Vec<(usize, usize)> =
                            (0..=len).map(|k| (to.string_pos(j + k), so.string_pos(i + k))).collect();
                        support.sort();
                        if out.iter().any(|(_, sup)| *sup == support) {
                            continue;
                        }
                        let d = CanonicalHomDescriptor {
                            factor: sw.subword(i, i + len),
                            source_inverted: s_inv,
                            target_inverted: t_inv,
                            source_offset: i,
                            target_offset: j,
                            length: len,
                        };
                        out.push((d, support));
                    }
                }
            }
        }
    }
    out
}

fn support_matrix(rows: usize, cols: usize, support: &[(usize, usize, u32)]) -> Mat {
    let mut m = Matrix::filled(rows, cols, 0);
    for &(r, c, v) in support {
        m.set(r, c, v);
    }
    m
}

/// Canonical string homomorphisms, checked against the linear oracle. On any
/// disagreement the oracle basis is returned instead, without descriptors.
pub fn canonical_string_homs(field: Fp, s: &Word, t: &Word) -> Result<HomBasis> {
    let ms = string_rep(field, s)?;
    let mt = string_rep(field, t)?;
    let raw = canonical_string_homs_raw(s, t);
    let mats: Vec<Mat> = raw
        .iter()
        .map(|(_, sup)| {
            let entries: Vec<(usize, usize, u32)> = sup.iter().map(|&(r, c)| (r, c, 1)).collect();
            support_matrix(mt.dim(), ms.dim(), &entries)
        })
        .collect();
    let oracle = hom_basis(&ms, &mt);
    let sound = mats.iter().all(|g| is_hom(&ms, &mt, g));
    if sound && mats.len() == oracle.len() && linalg::span_rank(&field, &mats) == mats.len() {
        return Ok(HomBasis { basis: mats, descriptors: Some(raw.into_iter().map(|r| r.0).collect()) });
    }
    log::warn!(
        "canonical homs {s} -> {t}: {} maps vs oracle dimension {}; using the oracle basis",
        mats.len(),
        oracle.len()
    );
    Ok(HomBasis { basis: oracle, descriptors: None })
}

/// Canonical maps between the one-parameter band modules on the given words.
/// Scalars are propagated along the factor so the result intertwines even
/// when the factor crosses the twisted letter.
pub fn canonical_band_homs_raw(
    field: Fp,
    b: &Word,
    mu: u32,
    bt: &Word,
    mu_t: u32,
) -> Result<Vec<(CanonicalHomDescriptor, Mat)>> {
    use crate::linalg::Field;
    let ms = band_rep(field, b, mu, 1)?;
    let mt = band_rep(field, bt, mu_t, 1)?;
    let (m, n) = (b.len(), bt.len());
    let mut out: Vec<(CanonicalHomDescriptor, Mat)> = Vec::new();
    let mut supports: Vec<Vec<(usize, usize)>> = Vec::new();
    for s_inv in [false, true] {
        let so = Oriented::new(b, s_inv);
        for t_inv in [false, true] {
            let to = Oriented::new(bt, t_inv);
            for i in 0..m {
                if !so.letter(i).is_direct() {
                    continue;
                }
                // a common factor of length m + n - 1 would make the bands
                // rotations of each other, which admissibility excludes
                for len in 0..=(m + n).saturating_sub(2) {
                    if so.letter(i + len + 1).is_direct() {
                        continue;
                    }
                    let factor: Vec<Letter> = (1..=len).map(|k| so.letter(i + k)).collect();
                    for j in 0..n {
                        if to.letter(j).is_direct() || !to.letter(j + len + 1).is_direct() {
                            continue;
                        }
                        if (1..=len).any(|k| to.letter(j + k) != factor[k - 1]) {
                            continue;
                        }
                        let ps: Vec<usize> = (0..=len).map(|k| so.band_pos(i + k)).collect();
                        let qs: Vec<usize> = (0..=len).map(|k| to.band_pos(j + k)).collect();
                        if len == 0 && ms.grade()[ps[0]] != mt.grade()[qs[0]] {
                            continue;
                        }
                        let mut coeff = vec![1u32; len + 1];
                        for k in 0..len {
                            let x = ms.matrix(factor[k].arrow);
                            let y = mt.matrix(factor[k].arrow);
                            let down = *x.get(ps[k], ps[k + 1]);
                            coeff[k + 1] = if down != 0 {
                                let yt = *y.get(qs[k], qs[k + 1]);
                                field.mul(&field.mul(&coeff[k], &down), &field.inv(&yt).expect("matching letter"))
                            } else {
                                let up = *x.get(ps[k + 1], ps[k]);
                                let yt = *y.get(qs[k + 1], qs[k]);
                                field.mul(&field.mul(&coeff[k], &yt), &field.inv(&up).expect("matching letter"))
                            };
                        }
                        let mut support: Vec<(usize, usize)> = qs.iter().copied().zip(ps.iter().copied()).collect();
                        support.sort();
                        if support.windows(2).any(|p| p[0] == p[1]) {
                            continue;
                        }
                        if supports.contains(&support) {
                            continue;
                        }
                        supports.push(support);
                        let entries: Vec<(usize, usize, u32)> = (0..=len).map(|k| (qs[k], ps[k], coeff[k])).collect();
                        let ow = Word::new(factor.clone()).unwrap_or_else(|_| Word::empty(ms.grade()[ps[0]]));
                        let factor_word = if len == 0 { Word::empty(ms.grade()[ps[0]]) } else { ow };
                        let d = CanonicalHomDescriptor {
                            factor: factor_word,
                            source_inverted: s_inv,
                            target_inverted: t_inv,
                            source_offset: i,
                            target_offset: j,
                            length: len,
                        };
                        out.push((d, support_matrix(n, m, &entries)));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Canonical band homomorphisms plus the identity for equal data. When the
/// two modules are isomorphic through a nontrivial rotation, or the canonical
/// family disagrees with the oracle, the oracle basis is returned.
pub fn canonical_band_homs(field: Fp, b: &Word, mu: u32, bt: &Word, mu_t: u32) -> Result<HomBasis> {
    let ms = band_rep(field, b, mu, 1)?;
    let mt = band_rep(field, bt, mu_t, 1)?;
    let raw = canonical_band_homs_raw(field, b, mu, bt, mu_t)?;
    let mut mats: Vec<Mat> = raw.iter().map(|r| r.1.clone()).collect();
    let mut descriptors: Vec<CanonicalHomDescriptor> = raw.into_iter().map(|r| r.0).collect();
    let same = b == bt && mu % field.modulus() == mu_t % field.modulus();
    if same {
        mats.push(linalg::identity(&field, ms.dim()));
        descriptors.push(CanonicalHomDescriptor {
            factor: b.clone(),
            source_inverted: false,
            target_inverted: false,
            source_offset: 0,
            target_offset: 0,
            length: b.len(),
        });
    }
    let oracle = hom_basis(&ms, &mt);
    let sound = mats.iter().all(|g| is_hom(&ms, &mt, g));
    if sound && mats.len() == oracle.len() && linalg::span_rank(&field, &mats) == mats.len() {
        return Ok(HomBasis { basis: mats, descriptors: Some(descriptors) });
    }
    if !same && crate::iso::find_isomorphism(&ms, &mt).is_some() {
        log::info!("band modules on {b} and {bt} are isomorphic; using the oracle basis");
    } else {
        log::warn!(
            "canonical band homs {b} -> {bt}: {} maps vs oracle dimension {}; using the oracle basis",
            mats.len(),
            oracle.len()
        );
    }
    Ok(HomBasis { basis: oracle, descriptors: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{projective_rep, string_rep};
    use crate::words::{enumerate_strings, named};

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }
    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }
    fn simple(u: u8) -> Rep {
        string_rep(f7(), &Word::empty(u)).unwrap()
    }

    #[test]
    fn simple_hom_dims() {
        assert_eq!(hom_dim(&simple(0), &simple(0)), 1);
        assert_eq!(hom_dim(&simple(0), &simple(1)), 0);
        assert_eq!(projective_factor_subspace(&simple(0), &simple(0)).len(), 0);
        assert_eq!(stable_end_dim(&simple(0)), 1);
        assert_eq!(stable_end_dim(&projective_rep(f7(), 0)), 0);
    }

    #[test]
    fn projective_sources_factor_entirely() {
        let p0 = projective_rep(f7(), 0);
        for s in enumerate_strings(3) {
            let m = string_rep(f7(), s.word()).unwrap();
            assert_eq!(projective_factor_subspace(&p0, &m).len(), hom_dim(&p0, &m));
        }
    }

    #[test]
    fn oracle_basis_consists_of_homs() {
        let a = string_rep(f7(), &named::a()).unwrap();
        let s = string_rep(f7(), &w("be al- la")).unwrap();
        for (m, n) in [(&a, &s), (&s, &a), (&a, &a)] {
            let basis = hom_basis(m, n);
            assert!(basis.iter().all(|g| is_hom(m, n, g)));
            assert_eq!(linalg::span_rank(&f7(), &basis), basis.len());
        }
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext1_dim(&simple(0), &simple(0)).unwrap(), 1);
        let a01 = string_rep(f7(), &w("la xi-")).unwrap();
        assert_eq!(ext1_dim(&a01, &a01).unwrap(), 0);
        let p0 = projective_rep(f7(), 0);
        assert_eq!(ext1_dim(&p0, &simple(0)).unwrap(), 0);
    }

    #[test]
    fn canonical_string_examples() {
        let e = Word::empty(0);
        let raw = canonical_string_homs_raw(&e, &e);
        assert_eq!(raw.len(), 1);
        let al = w("al");
        let hb = canonical_string_homs(f7(), &al, &al).unwrap();
        assert_eq!(hb.dim(), 2);
        assert!(hb.descriptors.is_some());
        for s in enumerate_strings(4) {
            let raw = canonical_string_homs_raw(s.word(), s.word());
            assert!(raw.iter().any(|(d, _)| d.length == s.len()), "identity missing for {s}");
        }
    }

    #[test]
    fn canonical_band_endomorphisms_of_x() {
        let f = f7();
        let x = named::x();
        for mu in 1..7 {
            let hb = canonical_band_homs(f, &x, mu, &x, mu).unwrap();
            assert!(hb.descriptors.is_some());
            assert_eq!(hb.dim(), hom_dim(&band_rep(f, &x, mu, 1).unwrap(), &band_rep(f, &x, mu, 1).unwrap()));
        }
    }
}
