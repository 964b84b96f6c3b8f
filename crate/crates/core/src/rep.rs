//! Finite-dimensional modules given by a vertex grading and one matrix per
//! arrow. A path `ζη` acts as `X_ζ · X_η`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Field, Fp, Mat, Matrix};
use crate::words::{is_valid_band_word, is_valid_string_word, theta_vertex, Arrow, Vertex, Word};

/// Paths that act as zero.
pub const ZERO_RELATIONS: [[Arrow; 2]; 6] = [
    [Arrow::Al, Arrow::La],
    [Arrow::La, Arrow::Xi],
    [Arrow::Xi, Arrow::De],
    [Arrow::De, Arrow::Rh],
    [Arrow::Rh, Arrow::Be],
    [Arrow::Be, Arrow::Al],
];

/// Pairs of paths that act equally: each loop squared equals a 3-cycle.
pub const LOOP_RELATIONS: [([Arrow; 2], [Arrow; 3]); 3] = [
    ([Arrow::Al, Arrow::Al], [Arrow::La, Arrow::De, Arrow::Be]),
    ([Arrow::Rh, Arrow::Rh], [Arrow::Be, Arrow::La, Arrow::De]),
    ([Arrow::Xi, Arrow::Xi], [Arrow::De, Arrow::Be, Arrow::La]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    field: Fp,
    grade: Vec<Vertex>,
    action: Vec<Mat>,
}

impl Rep {
    /// Builds a module and checks the grading and all nine relations.
    pub fn new(field: Fp, grade: Vec<Vertex>, action: Vec<Mat>) -> Result<Rep> {
        let n = grade.len();
        if action.len() != 6 || action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape("need six square matrices matching the grading".into()));
        }
        if grade.iter().any(|&g| g > 2) {
            return Err(Error::Shape("grade out of range".into()));
        }
        let r = Rep { field, grade, action };
        r.check_invariants()?;
        Ok(r)
    }

    /// Skips the relation check outside debug builds.
    pub(crate) fn from_parts(field: Fp, grade: Vec<Vertex>, action: Vec<Mat>) -> Rep {
        let r = Rep { field, grade, action };
        debug_assert!(r.check_invariants().is_ok(), "{:?}", r.check_invariants());
        r
    }

    pub fn zero(field: Fp) -> Rep {
        Rep { field, grade: Vec::new(), action: vec![Matrix::filled(0, 0, 0); 6] }
    }

    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.grade.len()
    }
    pub fn grade(&self) -> &[Vertex] {
        &self.grade
    }
    pub fn matrix(&self, a: Arrow) -> &Mat {
        &self.action[a.index()]
    }
    pub fn matrices(&self) -> &[Mat] {
        &self.action
    }
    pub fn dim_vector(&self) -> [usize; 3] {
        let mut d = [0; 3];
        for &g in &self.grade {
            d[g as usize] += 1;
        }
        d
    }
    pub fn indices_at(&self, u: Vertex) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grade[i] == u).collect()
    }

    /// The matrix of a path written in word order.
    pub fn path_matrix(&self, path: &[Arrow]) -> Mat {
        let f = &self.field;
        let mut acc = linalg::identity(f, self.dim());
        for a in path {
            acc = linalg::mul(f, &acc, self.matrix(*a));
        }
        acc
    }

    /// Describes every violated condition; empty when the module is valid.
    pub fn violations(&self) -> Vec<String> {
        let f = &self.field;
        let mut out = Vec::new();
        for a in Arrow::ALL {
            let m = self.matrix(a);
            for r in 0..self.dim() {
                for c in 0..self.dim() {
                    if *m.get(r, c) != 0 && (self.grade[c] != a.source() || self.grade[r] != a.target()) {
                        out.push(format!("{} entry ({r},{c}) breaks the grading", a.token()));
                    }
                }
            }
        }
        for rel in ZERO_RELATIONS {
            if !linalg::is_zero_matrix(f, &self.path_matrix(&rel)) {
                out.push(format!("{}{} does not vanish", rel[0].token(), rel[1].token()));
            }
        }
        for (lhs, rhs) in LOOP_RELATIONS {
            if self.path_matrix(&lhs) != self.path_matrix(&rhs) {
                out.push(format!("{}^2 differs from its 3-cycle", lhs[0].token()));
            }
        }
        out
    }

    pub fn check_invariants(&self) -> Result<()> {
        match self.violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::Shape(v.clone())),
        }
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let n = self.dim();
        let m = other.dim();
        let mut grade = self.grade.clone();
        grade.extend_from_slice(&other.grade);
        let action = (0..6)
            .map(|k| {
                let mut x = Matrix::filled(n + m, n + m, 0);
                for r in 0..n {
                    for c in 0..n {
                        x.set(r, c, *self.action[k].get(r, c));
                    }
                }
                for r in 0..m {
                    for c in 0..m {
                        x.set(n + r, n + c, *other.action[k].get(r, c));
                    }
                }
                x
            })
            .collect();
        Rep { field: self.field, grade, action }
    }

    /// Relabels along the rotation of the quiver: the new module lets `θ(ζ)`
    /// act as `ζ` did.
    pub fn theta_twist(&self, times: usize) -> Rep {
        let mut cur = self.clone();
        for _ in 0..times % 3 {
            let mut action = vec![Matrix::filled(0, 0, 0); 6];
            for a in Arrow::ALL {
                action[a.theta().index()] = cur.action[a.index()].clone();
            }
            let grade = cur.grade.iter().map(|&g| theta_vertex(g)).collect();
            cur = Rep { field: cur.field, grade, action };
        }
        cur
    }

    /// Change of basis: returns the module with matrices `Q⁻¹ X Q`, where the
    /// columns of `q` are the new basis vectors. `q` must be graded.
    pub fn conjugate(&self, q: &Mat) -> Result<Rep> {
        let f = &self.field;
        let qi = linalg::inverse(f, q).ok_or_else(|| Error::Shape("singular basis change".into()))?;
        let mut grade = Vec::with_capacity(self.dim());
        for c in 0..q.cols() {
            let g = (0..q.rows()).find(|&r| *q.get(r, c) != 0).map(|r| self.grade[r]);
            let g = g.ok_or_else(|| Error::Shape("zero basis vector".into()))?;
            if (0..q.rows()).any(|r| *q.get(r, c) != 0 && self.grade[r] != g) {
                return Err(Error::Shape("basis change mixes vertices".into()));
            }
            grade.push(g);
        }
        let action = self.action.iter().map(|x| linalg::mul(f, &linalg::mul(f, &qi, x), q)).collect();
        Ok(Rep::from_parts(self.field, grade, action))
    }

    /// Spanning vectors of the radical at vertex `u`, in coordinates on
    /// `indices_at(u)`.
    fn radical_rows_at(&self, u: Vertex) -> Matrix<u32> {
        let idx = self.indices_at(u);
        let mut rows = Vec::new();
        for a in Arrow::ALL.into_iter().filter(|a| a.target() == u) {
            let m = self.matrix(a);
            for c in self.indices_at(a.source()) {
                let v: Vec<u32> = idx.iter().map(|&r| *m.get(r, c)).collect();
                if v.iter().any(|&x| x != 0) {
                    rows.push(v);
                }
            }
        }
        if rows.is_empty() {
            return Matrix::filled(0, idx.len(), 0);
        }
        Matrix::from_rows(rows)
    }

    /// Multiplicity of each simple in the top `M / rad M`.
    pub fn top(&self) -> [usize; 3] {
        let mut t = [0; 3];
        for u in 0..3u8 {
            let rad = self.radical_rows_at(u);
            t[u as usize] = self.indices_at(u).len() - linalg::rank(&self.field, &rad);
        }
        t
    }

    /// Multiplicity of each simple in the socle.
    pub fn socle(&self) -> [usize; 3] {
        let mut s = [0; 3];
        for u in 0..3u8 {
            let idx = self.indices_at(u);
            let mut rows = Vec::new();
            for a in Arrow::ALL.into_iter().filter(|a| a.source() == u) {
                let m = self.matrix(a);
                for r in self.indices_at(a.target()) {
                    rows.push(idx.iter().map(|&c| *m.get(r, c)).collect::<Vec<u32>>());
                }
            }
            let rank = if rows.is_empty() { 0 } else { linalg::rank(&self.field, &Matrix::from_rows(rows)) };
            s[u as usize] = idx.len() - rank;
        }
        s
    }

    /// Basis vectors (as indices) of a complement of the radical, per vertex.
    pub fn top_generators(&self) -> Vec<(Vertex, usize)> {
        let mut gens = Vec::new();
        for u in 0..3u8 {
            let idx = self.indices_at(u);
            let red = linalg::rref(&self.field, &self.radical_rows_at(u));
            for (k, &i) in idx.iter().enumerate() {
                if !red.pivots.contains(&k) {
                    gens.push((u, i));
                }
            }
        }
        gens
    }

    /// Restricts the action to a submodule spanned by `basis`. Each vector is
    /// homogeneous and `coord_cols[j]` is a column where vector `j` is 1 and all
    /// other vectors are 0.
    pub(crate) fn restrict(&self, basis: &[Vec<u32>], coord_cols: &[usize]) -> Rep {
        let f = &self.field;
        let k = basis.len();
        let grade: Vec<Vertex> = basis
            .iter()
            .map(|v| {
                let i = v.iter().position(|&x| x != 0).expect("nonzero vector");
                self.grade[i]
            })
            .collect();
        let action = self
            .action
            .iter()
            .map(|x| {
                let mut m = Matrix::filled(k, k, 0);
                for (j, v) in basis.iter().enumerate() {
                    let w = linalg::mat_vec(f, x, v);
                    for (i, &c) in coord_cols.iter().enumerate() {
                        m.set(i, j, w[c]);
                    }
                }
                m
            })
            .collect();
        Rep::from_parts(self.field, grade, action)
    }

    /// Kernel of a graded map `g: self → N` as a submodule, with its inclusion.
    pub(crate) fn kernel_of(&self, g: &Mat, target_grade: &[Vertex]) -> (Rep, Mat) {
        let mut basis = Vec::new();
        let mut coords = Vec::new();
        for u in 0..3u8 {
            let cols = self.indices_at(u);
            let rows: Vec<usize> = (0..target_grade.len()).filter(|&r| target_grade[r] == u).collect();
            let block = g.select(&rows, &cols);
            let (ker, free) = linalg::kernel_with_free(&self.field, &block);
            for (v, fc) in ker.into_iter().zip(free) {
                let mut full = vec![0u32; self.dim()];
                for (t, &c) in cols.iter().enumerate() {
                    full[c] = v[t];
                }
                basis.push(full);
                coords.push(cols[fc]);
            }
        }
        let sub = self.restrict(&basis, &coords);
        let incl = Matrix::from_cols(self.dim(), &basis, 0);
        (sub, incl)
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            field_p: self.field.modulus(),
            grade: self.grade.clone(),
            arrows: Arrow::ALL
                .iter()
                .map(|a| {
                    let m = self.matrix(*a);
                    (a.token().to_string(), (0..m.rows()).map(|r| m.row(r).to_vec()).collect())
                })
                .collect(),
        }
    }
}

/// Serialized form: grading plus one integer grid per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub field_p: u32,
    pub grade: Vec<Vertex>,
    pub arrows: Vec<(String, Vec<Vec<u32>>)>,
}

fn empty_action(n: usize) -> Vec<Mat> {
    vec![Matrix::filled(n, n, 0); 6]
}

/// String module on the canonical basis `z_0 … z_n` of the given word.
pub fn string_rep(field: Fp, w: &Word) -> Result<Rep> {
    if !is_valid_string_word(w) {
        return Err(Error::InvalidString(w.to_string()));
    }
    let n = w.len();
    let ls = w.letters();
    let mut grade: Vec<Vertex> = (0..n).map(|i| ls[i].target()).collect();
    grade.push(w.source());
    let mut action = empty_action(n + 1);
    for (k0, l) in ls.iter().enumerate() {
        let k = k0 + 1;
        let m = &mut action[l.arrow.index()];
        if l.is_direct() {
            m.set(k - 1, k, 1);
        } else {
            m.set(k, k - 1, 1);
        }
    }
    Ok(Rep::from_parts(field, grade, action))
}

/// Band module `M(B, μ, m)` on the canonical basis `z_{i,j}` (index `i·m + j`)
/// of the given word. The parameter sits on the first letter.
pub fn band_rep(field: Fp, w: &Word, mu: u32, m: usize) -> Result<Rep> {
    if !is_valid_band_word(w) {
        return Err(Error::InvalidBand(w.to_string()));
    }
    let mu = mu % field.modulus();
    if mu == 0 {
        return Err(Error::InvalidParameter("band parameter must be nonzero".into()));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("band multiplicity must be positive".into()));
    }
    let mu_inv = field.inv(&mu).expect("nonzero");
    let n = w.len();
    let ls = w.letters();
    let idx = |i: usize, j: usize| (i % n) * m + j;
    let grade: Vec<Vertex> = (0..n * m).map(|t| ls[t / m].target()).collect();
    let mut action = empty_action(n * m);
    for (k0, l) in ls.iter().enumerate() {
        let k = k0 + 1;
        let x = &mut action[l.arrow.index()];
        for j in 0..m {
            // (row, col, value) entries for z_{.,j}
            let mut put = |r: usize, c: usize, v: u32| {
                let cur = *x.get(r, c);
                x.set(r, c, field.add(&cur, &v));
            };
            match (l.is_direct(), k == 1) {
                (true, true) => {
                    put(idx(0, j), idx(1, j), mu);
                    if j + 1 < m {
                        put(idx(0, j + 1), idx(1, j), 1);
                    }
                }
                (true, false) => put(idx(k - 1, j), idx(k, j), 1),
                (false, true) => {
                    put(idx(1, j), idx(0, j), mu_inv);
                    if j + 1 < m {
                        put(idx(1, j + 1), idx(0, j), 1);
                    }
                }
                (false, false) => put(idx(k, j), idx(k - 1, j), 1),
            }
        }
    }
    Ok(Rep::from_parts(field, grade, action))
}

/// Paths forming the basis of the indecomposable projective at vertex 0:
/// `e₀, α, β, δβ, α²`.
const P0_PATHS: [&[Arrow]; 5] = [&[], &[Arrow::Al], &[Arrow::Be], &[Arrow::De, Arrow::Be], &[Arrow::Al, Arrow::Al]];

/// Basis paths of the projective at `u`, in word order.
pub fn projective_paths(u: Vertex) -> Vec<Vec<Arrow>> {
    P0_PATHS
        .iter()
        .map(|p| {
            p.iter()
                .map(|a| {
                    let mut b = *a;
                    for _ in 0..u {
                        b = b.theta();
                    }
                    b
                })
                .collect()
        })
        .collect()
}

/// The indecomposable projective at `u`; dimension 5.
pub fn projective_rep(field: Fp, u: Vertex) -> Rep {
    assert!(u < 3, "vertex out of range");
    let mut action = empty_action(5);
    action[Arrow::Al.index()].set(1, 0, 1);
    action[Arrow::Al.index()].set(4, 1, 1);
    action[Arrow::Be.index()].set(2, 0, 1);
    action[Arrow::De.index()].set(3, 2, 1);
    action[Arrow::La.index()].set(4, 3, 1);
    let p0 = Rep::from_parts(field, vec![0, 0, 1, 2, 0], action);
    p0.theta_twist(u as usize)
}

/// The path of maximal length at `u` (its action spans the socle of `P_u`).
pub fn socle_path(u: Vertex) -> Vec<Arrow> {
    vec![Arrow::loop_at(u); 2]
}

/// Projective cover `π: P → M` with generators taken from a complement of the
/// radical.
#[derive(Clone, Debug)]
pub struct Cover {
    pub module: Rep,
    pub map: Mat,
    /// Vertex and basis index in `M` of each generator, in block order.
    pub generators: Vec<(Vertex, usize)>,
}

pub fn projective_cover(r: &Rep) -> Cover {
    let f = r.field();
    let gens = r.top_generators();
    let mut module = Rep::zero(f);
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for &(u, i) in &gens {
        module = module.direct_sum(&projective_rep(f, u));
        for path in projective_paths(u) {
            cols.push(r.path_matrix(&path).col(i));
        }
    }
    let map = Matrix::from_cols(r.dim(), &cols, 0);
    Cover { module, map, generators: gens }
}

/// `Ω(M) = ker π` together with its inclusion into the cover.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub module: Rep,
    pub inclusion: Mat,
    pub cover: Cover,
}

pub fn syzygy_with_data(r: &Rep) -> Syzygy {
    let cover = projective_cover(r);
    let (module, inclusion) = cover.module.kernel_of(&cover.map, r.grade());
    Syzygy { module, inclusion, cover }
}

pub fn syzygy(r: &Rep) -> Rep {
    syzygy_with_data(r).module
}

pub fn regular_rep(field: Fp) -> Rep {
    projective_rep(field, 0).direct_sum(&projective_rep(field, 1)).direct_sum(&projective_rep(field, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{enumerate_bands, enumerate_strings, named};

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }
    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn simple_and_string_examples() {
        let s0 = string_rep(f7(), &Word::empty(0)).unwrap();
        assert_eq!(s0.dim(), 1);
        assert_eq!(s0.grade(), &[0]);
        assert!(s0.matrices().iter().all(|m| *m.get(0, 0) == 0));
        assert_eq!(s0.top(), [1, 0, 0]);
        let a = string_rep(f7(), &named::a()).unwrap();
        assert_eq!(a.dim(), 5);
        assert!(string_rep(f7(), &w("al la")).is_err());
    }

    #[test]
    fn projectives_match_their_pictures() {
        let f = f7();
        let dims: Vec<[usize; 3]> = (0..3).map(|u| projective_rep(f, u).dim_vector()).collect();
        assert_eq!(dims, vec![[3, 1, 1], [1, 3, 1], [1, 1, 3]]);
        for u in 0..3u8 {
            let p = projective_rep(f, u);
            let mut e = [0; 3];
            e[u as usize] = 1;
            assert_eq!(p.top(), e);
            assert_eq!(p.socle(), e);
            assert!(p.check_invariants().is_ok());
            assert!(!linalg::is_zero_matrix(&f, &p.path_matrix(&socle_path(u))));
        }
        let reg = regular_rep(f);
        assert_eq!(reg.dim(), 15);
        assert!(reg.check_invariants().is_ok());
    }

    #[test]
    fn top_of_the_smallest_type_zero_string() {
        // βα⁻¹λ has its peaks at z₁ (vertex 0) and z₃ (vertex 2).
        let m = string_rep(f7(), &w("be al- la")).unwrap();
        assert_eq!(m.top(), [1, 0, 1]);
    }

    #[test]
    fn band_examples() {
        let f = f7();
        let p = band_rep(f, &named::p(), 3, 1).unwrap();
        assert_eq!(p.dim(), 6);
        assert!(band_rep(f, &named::p(), 0, 1).is_err());
        let x2 = band_rep(f, &named::x(), 2, 2).unwrap();
        assert_eq!(x2.dim(), 10);
        assert!(x2.check_invariants().is_ok());
        let inv = band_rep(f, &named::x().inverse(), 4, 3).unwrap();
        assert!(inv.check_invariants().is_ok());
    }

    #[test]
    fn cover_and_syzygy_dimensions() {
        let f = f7();
        let s0 = string_rep(f, &Word::empty(0)).unwrap();
        let c = projective_cover(&s0);
        assert_eq!(c.module.dim(), 5);
        assert_eq!(linalg::rank(&f, &c.map), 1);
        assert_eq!(syzygy(&s0).dim(), 4);
        let p = band_rep(f, &named::p(), 3, 1).unwrap();
        let cp = projective_cover(&p);
        assert_eq!(cp.module.dim_vector(), [5, 5, 5]);
        for s in enumerate_strings(5) {
            let m = string_rep(f, s.word()).unwrap();
            let cov = projective_cover(&m);
            assert_eq!(linalg::rank(&f, &cov.map), m.dim());
            let om = syzygy(&m);
            assert_eq!(om.dim(), cov.module.dim() - m.dim());
            assert!(om.check_invariants().is_ok());
        }
    }

    #[test]
    fn every_constructor_passes_the_checker() {
        let f = Fp::new(5).unwrap();
        for s in enumerate_strings(7) {
            let m = string_rep(f, s.word()).unwrap();
            assert!(m.violations().is_empty(), "{s}: {:?}", m.violations());
            assert!(string_rep(f, &s.word().inverse()).unwrap().violations().is_empty());
        }
        for b in enumerate_bands(8) {
            for mu in 1..5 {
                for m in 1..=2 {
                    let r = band_rep(f, b.word(), mu, m).unwrap();
                    assert!(r.violations().is_empty(), "{b}: {:?}", r.violations());
                }
            }
        }
    }

    #[test]
    fn checker_rejects_broken_modules() {
        let f = f7();
        let mut action = empty_action(2);
        action[Arrow::Al.index()].set(1, 0, 1);
        action[Arrow::Al.index()].set(0, 1, 1);
        // α² ≠ 0 = λδβ on a two-dimensional module at vertex 0
        assert!(Rep::new(f, vec![0, 0], action).is_err());
        let mut action = empty_action(2);
        action[Arrow::Be.index()].set(1, 0, 1);
        assert!(Rep::new(f, vec![0, 0], action).is_err());
    }

    #[test]
    fn theta_twist_of_projectives() {
        let f = f7();
        let p0 = projective_rep(f, 0);
        assert_eq!(p0.theta_twist(1), projective_rep(f, 1));
        assert_eq!(p0.theta_twist(3), p0);
    }

    #[test]
    fn json_round_trip() {
        let m = string_rep(f7(), &w("be al- la")).unwrap();
        let j = serde_json::to_string(&m.to_json()).unwrap();
        let back: RepJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back, m.to_json());
    }
}
