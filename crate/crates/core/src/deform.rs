//! Lifts of modules over `k[t]/(tⁿ)` and `k[t]`, and a classifier for the
//! universal deformation ring of a module with one-dimensional stable
//! endomorphism ring.
//!
//! A lift assigns to each arrow a polynomial matrix `X + tY⁽¹⁾ + t²Y⁽²⁾ + …`
//! in a basis adapted to the vertices; coefficient lists are indexed by degree
//! with degree 0 holding the module itself.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{ext1_dim, hom_basis, in_span, projective_factor_subspace, stable_end_dim};
use crate::iso::{identify_band_with_iso, identify_string_with_iso, strip_projective_summands};
use crate::linalg::{self, Field, Fp, Mat, Matrix, SparseEchelon};
use crate::rep::{band_rep, syzygy_with_data, Rep, LOOP_RELATIONS, ZERO_RELATIONS};
use crate::words::{Arrow, Vertex, Word};

pub const DEFAULT_MAX_ORDER: usize = 6;

/// Coefficient matrices of one degree, indexed by `Arrow::index`.
pub type Layer = Vec<Mat>;

#[derive(Copy, Clone)]
enum Relation {
    Zero([Arrow; 2]),
    Loop([Arrow; 2], [Arrow; 3]),
}

fn relations() -> Vec<Relation> {
    ZERO_RELATIONS
        .iter()
        .map(|r| Relation::Zero(*r))
        .chain(LOOP_RELATIONS.iter().map(|(l, r)| Relation::Loop(*l, *r)))
        .collect()
}

/// Degree-`d` coefficient of the product along `path`; `layers[s]` holds
/// degree `s`.
fn path_coefficient(f: &Fp, layers: &[Layer], path: &[Arrow], d: usize, n: usize) -> Mat {
    fn go(f: &Fp, layers: &[Layer], path: &[Arrow], d: usize, acc: &Mat, out: &mut Mat) {
        if path.is_empty() {
            if d == 0 {
                *out = linalg::add(f, out, acc);
            }
            return;
        }
        for s in 0..=d.min(layers.len() - 1) {
            let m = &layers[s][path[0].index()];
            if linalg::is_zero_matrix(f, m) {
                continue;
            }
            let next = linalg::mul(f, acc, m);
            if !linalg::is_zero_matrix(f, &next) {
                go(f, layers, &path[1..], d - s, &next, out);
            }
        }
    }
    let mut out = linalg::zeros(f, n, n);
    go(f, layers, path, d, &linalg::identity(f, n), &mut out);
    out
}

/// Degree-`d` coefficient of every relation, `lhs − rhs`.
fn relation_defects(f: &Fp, layers: &[Layer], d: usize, n: usize) -> Vec<Mat> {
    relations()
        .into_iter()
        .map(|rel| match rel {
            Relation::Zero(p) => path_coefficient(f, layers, &p, d, n),
            Relation::Loop(l, r) => {
                linalg::sub(f, &path_coefficient(f, layers, &l, d, n), &path_coefficient(f, layers, &r, d, n))
            }
        })
        .collect()
}

fn zero_layer(f: &Fp, n: usize) -> Layer {
    (0..6).map(|_| linalg::zeros(f, n, n)).collect()
}

/// Coordinates for vertex-respecting perturbations of the arrow matrices.
struct Unknowns {
    list: Vec<(Arrow, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl Unknowns {
    fn new(v: &Rep) -> Unknowns {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for a in Arrow::ALL {
            for r in v.indices_at(a.target()) {
                for c in v.indices_at(a.source()) {
                    index.insert((a.index(), r, c), list.len());
                    list.push((a, r, c));
                }
            }
        }
        Unknowns { list, index }
    }
    fn len(&self) -> usize {
        self.list.len()
    }
    fn encode(&self, layer: &Layer) -> Vec<(usize, u32)> {
        self.list
            .iter()
            .enumerate()
            .filter_map(|(u, &(a, r, c))| Some((u, *layer[a.index()].get(r, c))).filter(|e| e.1 != 0))
            .collect()
    }
    fn decode(&self, f: &Fp, n: usize, x: &[u32]) -> Layer {
        let mut layer = zero_layer(f, n);
        for (u, &(a, r, c)) in self.list.iter().enumerate() {
            if x[u] != 0 {
                layer[a.index()].set(r, c, x[u]);
            }
        }
        layer
    }
}

/// The linear part of the relations at `X`: column `u` lists the relation
/// entries `(relation · n² + row · n + col, value)` moved by unknown `u`.
fn derivative_columns(v: &Rep, unk: &Unknowns) -> Vec<Vec<(usize, u32)>> {
    let f = v.field();
    let n = v.dim();
    let x = |a: Arrow| v.matrix(a);
    let mut cols: Vec<Vec<(usize, u32)>> = vec![Vec::new(); unk.len()];
    let neg = |val: u32| f.elem(-(val as i64));
    for (ri, rel) in relations().into_iter().enumerate() {
        let base = ri * n * n;
        // each term is (left factor, perturbed arrow, right factor, sign)
        let mut terms: Vec<(Option<Mat>, Arrow, Option<Mat>, bool)> = Vec::new();
        match rel {
            Relation::Zero([a, b]) => {
                terms.push((None, a, Some(x(b).clone()), true));
                terms.push((Some(x(a).clone()), b, None, true));
            }
            Relation::Loop([a, _], [l, d, b]) => {
                terms.push((None, a, Some(x(a).clone()), true));
                terms.push((Some(x(a).clone()), a, None, true));
                terms.push((None, l, Some(linalg::mul(&f, x(d), x(b))), false));
                terms.push((Some(x(l).clone()), d, Some(x(b).clone()), false));
                terms.push((Some(linalg::mul(&f, x(l), x(d))), b, None, false));
            }
        }
        for (left, arrow, right, positive) in terms {
            for r in v.indices_at(arrow.target()) {
                for c in v.indices_at(arrow.source()) {
                    let u = unk.index[&(arrow.index(), r, c)];
                    // L · E_rc · R has entry (i, j) = L[i, r] · R[c, j]
                    let lcol: Vec<(usize, u32)> = match &left {
                        None => vec![(r, 1)],
                        Some(l) => (0..n).filter_map(|i| Some((i, *l.get(i, r))).filter(|e| e.1 != 0)).collect(),
                    };
                    let rrow: Vec<(usize, u32)> = match &right {
                        None => vec![(c, 1)],
                        Some(m) => (0..n).filter_map(|j| Some((j, *m.get(c, j))).filter(|e| e.1 != 0)).collect(),
                    };
                    for &(i, lv) in &lcol {
                        for &(j, rv) in &rrow {
                            let val = f.elem(lv as i64 * rv as i64);
                            cols[u].push((base + i * n + j, if positive { val } else { neg(val) }));
                        }
                    }
                }
            }
        }
    }
    for col in cols.iter_mut() {
        col.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(col.len());
        for &(k, val) in col.iter() {
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 = f.add(&last.1, &val),
                _ => merged.push((k, val)),
            }
        }
        merged.retain(|e| e.1 != 0);
        *col = merged;
    }
    cols
}

/// Rows of the derivative: for each relation entry, the unknowns it involves.
fn derivative_rows(cols: &[Vec<(usize, u32)>]) -> HashMap<usize, Vec<(usize, u32)>> {
    let mut rows: HashMap<usize, Vec<(usize, u32)>> = HashMap::new();
    for (u, col) in cols.iter().enumerate() {
        for &(k, val) in col {
            rows.entry(k).or_default().push((u, val));
        }
    }
    rows
}

/// Echelon form of the span of the coboundaries `GX − XG`, `G` preserving
/// vertices.
fn coboundaries(v: &Rep, unk: &Unknowns) -> SparseEchelon<Fp> {
    let f = v.field();
    let n = v.dim();
    let mut ech = SparseEchelon::new(f, unk.len());
    for i in 0..n {
        for j in 0..n {
            if v.grade()[i] != v.grade()[j] {
                continue;
            }
            let mut row: Vec<(usize, u32)> = Vec::new();
            for a in Arrow::ALL {
                let x = v.matrix(a);
                // E_ij X: row i receives row j of X
                for c in 0..n {
                    let val = *x.get(j, c);
                    if val != 0 {
                        row.push((unk.index[&(a.index(), i, c)], val));
                    }
                }
                // −X E_ij: column j receives column i of X
                for r in 0..n {
                    let val = *x.get(r, i);
                    if val != 0 {
                        row.push((unk.index[&(a.index(), r, j)], f.elem(-(val as i64))));
                    }
                }
            }
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    ech
}

/// Whether a first-order perturbation is a coboundary, i.e. gives the trivial
/// lift over the dual numbers.
pub fn is_coboundary(v: &Rep, y: &Layer) -> bool {
    let unk = Unknowns::new(v);
    coboundaries(v, &unk).spans(unk.encode(y))
}

/// `dim Ext¹(V, V)` through the tangent space of the representation variety:
/// first-order solutions of the relations modulo coboundaries.
pub fn tangent_dim_via_cocycles(v: &Rep) -> usize {
    let unk = Unknowns::new(v);
    if unk.len() == 0 {
        return 0;
    }
    let cols = derivative_columns(v, &unk);
    let mut z = SparseEchelon::new(v.field(), unk.len());
    for (_, row) in derivative_rows(&cols) {
        z.insert(row);
    }
    let cocycles = unk.len() - z.rank();
    cocycles - coboundaries(v, &unk).rank()
}

/// `dim Ext¹(V, V)`, the dimension of the tangent space of the deformation
/// functor.
pub fn tangent_dim(v: &Rep) -> Result<usize> {
    ext1_dim(v, v)
}

/// A lift over `k[t]/(tⁿ)`.
#[derive(Clone, Debug)]
pub struct TruncatedLift {
    pub base: Rep,
    /// `layers[s − 1]` is the degree-`s` coefficient, `1 ≤ s < order`.
    pub layers: Vec<Layer>,
}

impl TruncatedLift {
    pub fn trivial(base: &Rep, order: usize) -> TruncatedLift {
        assert!(order >= 1);
        let n = base.dim();
        TruncatedLift { base: base.clone(), layers: (1..order).map(|_| zero_layer(&base.field(), n)).collect() }
    }

    pub fn order(&self) -> usize {
        self.layers.len() + 1
    }

    fn all_layers(&self) -> Vec<Layer> {
        std::iter::once(self.base.matrices().to_vec()).chain(self.layers.iter().cloned()).collect()
    }

    /// Relation defects in every degree below the order; all zero for a lift.
    pub fn is_valid(&self) -> bool {
        let f = self.base.field();
        let all = self.all_layers();
        (1..self.order())
            .all(|d| relation_defects(&f, &all, d, self.base.dim()).iter().all(|m| linalg::is_zero_matrix(&f, m)))
    }

    /// The lift as a module over the algebra, on the basis `tˢ bᵢ` ordered
    /// by `s` then `i`.
    pub fn to_rep(&self) -> Result<Rep> {
        let f = self.base.field();
        let n = self.base.dim();
        let ord = self.order();
        let all = self.all_layers();
        let grade: Vec<Vertex> = (0..ord).flat_map(|_| self.base.grade().iter().copied()).collect();
        let mut action = Vec::with_capacity(6);
        for a in Arrow::ALL {
            let mut m = Matrix::filled(n * ord, n * ord, 0);
            for s in 0..ord {
                for (d, layer) in all.iter().enumerate().take(ord - s) {
                    let blk = &layer[a.index()];
                    for r in 0..n {
                        for c in 0..n {
                            let val = *blk.get(r, c);
                            if val != 0 {
                                m.set((s + d) * n + r, s * n + c, val);
                            }
                        }
                    }
                }
            }
            action.push(m);
        }
        Rep::new(f, grade, action)
    }
}

/// Failure to extend a lift: the degree at which the relations cannot be
/// met, and the defect that no correction removes.
#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    pub order: usize,
    pub defect: Vec<(usize, u32)>,
}

#[derive(Clone, Debug)]
pub enum Extension {
    Extended(TruncatedLift),
    Obstructed(Obstruction),
}

/// Solves for the next coefficient with all lower ones fixed.
pub fn extend_lift(l: &TruncatedLift) -> Extension {
    let v = &l.base;
    let f = v.field();
    let n = v.dim();
    let d = l.order();
    let unk = Unknowns::new(v);
    let cols = derivative_columns(v, &unk);
    let rows = derivative_rows(&cols);
    let mut all = l.all_layers();
    all.push(zero_layer(&f, n));
    let known = relation_defects(&f, &all, d, n);
    let mut sys = SparseEchelon::new(f, unk.len());
    let mut defect = Vec::new();
    for (ri, m) in known.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let k = ri * n * n + i * n + j;
                let rhs = f.elem(-(*m.get(i, j) as i64));
                if rhs != 0 {
                    defect.push((k, *m.get(i, j)));
                }
                if let Some(row) = rows.get(&k) {
                    sys.insert_augmented(row.clone(), rhs);
                } else if rhs != 0 {
                    sys.insert_augmented(Vec::new(), rhs);
                }
            }
        }
    }
    match sys.solve() {
        Some(x) => {
            let mut next = l.clone();
            next.layers.push(unk.decode(&f, n, &x));
            debug_assert!(next.is_valid());
            Extension::Extended(next)
        }
        None => Extension::Obstructed(Obstruction { order: d + 1, defect }),
    }
}

/// A lift of `base` over `k[t]`: the arrows act by polynomial matrices and
/// every relation holds identically in `t`.
#[derive(Clone, Debug)]
pub struct PolynomialLiftWitness {
    pub base: Rep,
    /// `layers[s − 1]` is the coefficient of `tˢ`.
    pub layers: Vec<Layer>,
}

impl PolynomialLiftWitness {
    pub fn degree(&self) -> usize {
        self.layers.len()
    }

    /// Checks every relation coefficient and that the first-order term is not
    /// a coboundary, so that the lift is nontrivial modulo `t²`.
    pub fn verify(&self) -> Result<()> {
        let f = self.base.field();
        let n = self.base.dim();
        let all: Vec<Layer> =
            std::iter::once(self.base.matrices().to_vec()).chain(self.layers.iter().cloned()).collect();
        for layer in &self.layers {
            for a in Arrow::ALL {
                let m = &layer[a.index()];
                for r in 0..n {
                    for c in 0..n {
                        if *m.get(r, c) != 0
                            && (self.base.grade()[r] != a.target() || self.base.grade()[c] != a.source())
                        {
                            return Err(Error::Shape(format!("coefficient of {} leaves its vertices", a.token())));
                        }
                    }
                }
            }
        }
        for d in 1..=3 * self.degree() {
            if relation_defects(&f, &all, d, n).iter().any(|m| !linalg::is_zero_matrix(&f, m)) {
                return Err(Error::Shape(format!("relations fail in degree {d}")));
            }
        }
        match self.layers.first() {
            Some(y) if !is_coboundary(&self.base, y) => Ok(()),
            _ => Err(Error::TrivialClass),
        }
    }

    pub fn truncate(&self, order: usize) -> TruncatedLift {
        let n = self.base.dim();
        let f = self.base.field();
        let layers = (1..order).map(|s| self.layers.get(s - 1).cloned().unwrap_or_else(|| zero_layer(&f, n))).collect();
        TruncatedLift { base: self.base.clone(), layers }
    }

    /// The witness for a module `Φ X Φ⁻¹` obtained by the change of basis `Φ`.
    pub fn transport(&self, target: &Rep, phi: &Mat) -> Result<PolynomialLiftWitness> {
        let f = target.field();
        let inv = linalg::inverse(&f, phi).ok_or_else(|| Error::Precondition("change of basis is singular".into()))?;
        let layers = self
            .layers
            .iter()
            .map(|layer| layer.iter().map(|m| linalg::mul(&f, &linalg::mul(&f, phi, m), &inv)).collect())
            .collect();
        Ok(PolynomialLiftWitness { base: target.clone(), layers })
    }
}

/// Single-entry witness `X_ζ + t·E_{i,j}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryWitness {
    pub arrow: Arrow,
    pub row: usize,
    pub col: usize,
}

/// First `(ζ, i, j)`, in arrow order then row then column, such that
/// `X_ζ + t·E_{i,j}` lifts `v` over `k[t]` nontrivially.
pub fn wrap_lift_search(v: &Rep) -> Option<(EntryWitness, PolynomialLiftWitness)> {
    let f = v.field();
    let n = v.dim();
    let unk = Unknowns::new(v);
    if unk.len() == 0 {
        return None;
    }
    let cols = derivative_columns(v, &unk);
    let cob = coboundaries(v, &unk);
    for (u, &(a, r, c)) in unk.list.iter().enumerate() {
        if !cols[u].is_empty() || cob.spans(vec![(u, 1)]) {
            continue;
        }
        let mut layer = zero_layer(&f, n);
        layer[a.index()].set(r, c, 1);
        let w = PolynomialLiftWitness { base: v.clone(), layers: vec![layer] };
        if w.verify().is_ok() {
            return Some((EntryWitness { arrow: a, row: r, col: c }, w));
        }
    }
    None
}

/// The family `μ ↦ μ + t` through `M(B, μ)`, on the canonical basis of `word`.
pub fn band_parameter_lift(f: Fp, word: &Word, mu: u32) -> Result<PolynomialLiftWitness> {
    if mu.is_multiple_of(f.modulus()) {
        return Err(Error::Precondition("band parameter must be nonzero".into()));
    }
    let base = band_rep(f, word, mu, 1)?;
    let first = word.letters()[0];
    let (r, c) = if first.is_direct() { (0, 1) } else { (1, 0) };
    let mut layer = zero_layer(&f, base.dim());
    layer[first.arrow.index()].set(r, c, 1);
    let w = PolynomialLiftWitness { base, layers: vec![layer] };
    w.verify()?;
    Ok(w)
}

/// A homomorphism `Ω(V) → V` not factoring through a projective module.
pub fn ext_generator(v: &Rep) -> Result<Mat> {
    let syz = syzygy_with_data(v);
    let pf = projective_factor_subspace(&syz.module, v);
    hom_basis(&syz.module, v).into_iter().find(|g| !in_span(&v.field(), &pf, g)).ok_or(Error::TrivialClass)
}

/// The lift over the dual numbers given by the extension class of `cocycle`:
/// pushing `0 → Ω(V) → P → V → 0` along it, the arrows act on `V ⊕ tV` by
/// `X + t·f ι⁻¹(X^P σ − σ X)` with `σ` a vertex-respecting section of `P → V`.
pub fn dual_number_lift(v: &Rep, cocycle: &Mat) -> Result<TruncatedLift> {
    let f = v.field();
    let n = v.dim();
    let syz = syzygy_with_data(v);
    let p = &syz.cover.module;
    let pi = &syz.cover.map;
    if cocycle.rows() != n || cocycle.cols() != syz.module.dim() {
        return Err(Error::Shape("cocycle must map Ω(V) to V".into()));
    }
    let mut section = Matrix::filled(p.dim(), n, 0);
    for k in 0..n {
        let cols = p.indices_at(v.grade()[k]);
        let sub = pi.select(&(0..n).collect::<Vec<_>>(), &cols);
        let mut e = vec![0; n];
        e[k] = 1;
        let x = linalg::solve(&f, &sub, &e).ok_or_else(|| Error::Precondition("cover is not surjective".into()))?;
        for (t, &c) in cols.iter().enumerate() {
            section.set(c, k, x[t]);
        }
    }
    let mut layer = Vec::with_capacity(6);
    for a in Arrow::ALL {
        let diff = linalg::sub(&f, &linalg::mul(&f, p.matrix(a), &section), &linalg::mul(&f, &section, v.matrix(a)));
        let pre = linalg::solve_matrix(&f, &syz.inclusion, &diff)
            .ok_or_else(|| Error::Precondition("defect leaves the syzygy".into()))?;
        layer.push(linalg::mul(&f, cocycle, &pre));
    }
    if is_coboundary(v, &layer) {
        return Err(Error::TrivialClass);
    }
    let lift = TruncatedLift { base: v.clone(), layers: vec![layer] };
    if !lift.is_valid() {
        return Err(Error::Shape("dual-number lift violates the relations".into()));
    }
    Ok(lift)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformationTag {
    K,
    KModT2,
    PowerSeries,
    TangentGe2,
    Undetermined,
}

impl DeformationTag {
    pub fn name(self) -> &'static str {
        match self {
            DeformationTag::K => "k",
            DeformationTag::KModT2 => "k_mod_t2",
            DeformationTag::PowerSeries => "power_series",
            DeformationTag::TangentGe2 => "tangent_ge_2",
            DeformationTag::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    None,
    /// A single-entry witness, on the module as given or on the canonical
    /// basis of the identified string.
    EntryWitness {
        arrow: String,
        row: usize,
        col: usize,
        on_identified_string: Option<String>,
    },
    BandParameter {
        word: String,
        mu: u32,
    },
    Obstruction {
        order: usize,
    },
    /// Lifts exist up to `order` and no witness was found.
    Unresolved {
        order: usize,
    },
    StableEndNotOne,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub tag: DeformationTag,
    pub tangent_dim: Option<usize>,
    pub stable_end_dim: usize,
    pub removed_projectives: Vec<Vertex>,
    pub evidence: Evidence,
    pub max_order_probed: usize,
}

/// Decides `R(Λ, V)` among `k`, `k[t]/(t²)` and `k[[t]]` when possible.
pub fn classify(v: &Rep, max_order: usize) -> Result<Classification> {
    let (core, _, removed) = strip_projective_summands(v);
    let se = stable_end_dim(&core);
    let mut out = Classification {
        tag: DeformationTag::Undetermined,
        tangent_dim: None,
        stable_end_dim: se,
        removed_projectives: removed,
        evidence: Evidence::StableEndNotOne,
        max_order_probed: 1,
    };
    if se != 1 {
        return Ok(out);
    }
    let t = tangent_dim(&core)?;
    out.tangent_dim = Some(t);
    out.evidence = Evidence::None;
    match t {
        0 => {
            out.tag = DeformationTag::K;
            return Ok(out);
        }
        1 => {}
        _ => {
            out.tag = DeformationTag::TangentGe2;
            return Ok(out);
        }
    }
    if let Some(ev) = find_witness(&core)? {
        out.tag = DeformationTag::PowerSeries;
        out.evidence = ev;
        return Ok(out);
    }
    let mut lift = dual_number_lift(&core, &ext_generator(&core)?)?;
    out.max_order_probed = 2;
    while lift.order() < max_order {
        match extend_lift(&lift) {
            Extension::Extended(next) => {
                lift = next;
                out.max_order_probed = lift.order();
            }
            Extension::Obstructed(ob) => {
                if ob.order == 3 {
                    out.tag = DeformationTag::KModT2;
                    out.evidence = Evidence::Obstruction { order: 3 };
                } else {
                    out.evidence = Evidence::Unresolved { order: ob.order - 1 };
                }
                return Ok(out);
            }
        }
    }
    out.evidence = Evidence::Unresolved { order: lift.order() };
    Ok(out)
}

/// A verified lift over `k[t]`, searched on the module itself, then on the
/// identified string or band and carried back along the isomorphism.
fn find_witness(core: &Rep) -> Result<Option<Evidence>> {
    if let Some((ew, _)) = wrap_lift_search(core) {
        return Ok(Some(Evidence::EntryWitness {
            arrow: ew.arrow.token().into(),
            row: ew.row,
            col: ew.col,
            on_identified_string: None,
        }));
    }
    if let Some((class, phi)) = identify_string_with_iso(core) {
        let m = crate::rep::string_rep(core.field(), class.word())?;
        if let Some((ew, w)) = wrap_lift_search(&m) {
            w.transport(core, &phi)?.verify()?;
            return Ok(Some(Evidence::EntryWitness {
                arrow: ew.arrow.token().into(),
                row: ew.row,
                col: ew.col,
                on_identified_string: Some(class.word().to_string()),
            }));
        }
        return Ok(None);
    }
    if let Some((class, mu, phi)) = identify_band_with_iso(core) {
        if let Ok(w) = band_parameter_lift(core.field(), class.word(), mu) {
            w.transport(core, &phi)?.verify()?;
            return Ok(Some(Evidence::BandParameter { word: class.word().to_string(), mu }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::rep::{projective_rep, string_rep, syzygy};
    use crate::words::{enumerate_strings, named};

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }
    fn s(w: &str) -> Rep {
        string_rep(f7(), &Word::parse(w).unwrap()).unwrap()
    }

    #[test]
    fn tangent_dims_agree_with_ext() {
        for c in enumerate_strings(4) {
            let m = string_rep(f7(), c.word()).unwrap();
            assert_eq!(tangent_dim_via_cocycles(&m), tangent_dim(&m).unwrap(), "{c}");
        }
        let b = band_rep(f7(), &named::p(), 3, 1).unwrap();
        assert_eq!(tangent_dim_via_cocycles(&b), tangent_dim(&b).unwrap());
    }

    #[test]
    fn tangent_examples() {
        assert_eq!(tangent_dim(&s("la xi-")).unwrap(), 0);
        assert_eq!(tangent_dim(&s("1_0")).unwrap(), 1);
        assert_eq!(tangent_dim(&s("al")).unwrap(), 0);
        assert_eq!(tangent_dim(&s("al- la xi-")).unwrap(), 0);
    }

    #[test]
    fn dual_number_lifts() {
        let s0 = s("1_0");
        let l = dual_number_lift(&s0, &ext_generator(&s0).unwrap()).unwrap();
        assert!(is_isomorphic(&l.to_rep().unwrap(), &s("al")));
        let a02 = s("la xi- de rh-");
        let l = dual_number_lift(&a02, &ext_generator(&a02).unwrap()).unwrap();
        let aba = Word::concat_all(&[&named::a(), &Word::parse("be").unwrap(), &named::a()]).unwrap();
        assert!(is_isomorphic(&l.to_rep().unwrap(), &string_rep(f7(), &aba).unwrap()));
        let zero = Matrix::filled(1, syzygy(&s0).dim(), 0);
        assert!(matches!(dual_number_lift(&s0, &zero), Err(Error::TrivialClass)));
    }

    #[test]
    fn obstruction_for_the_simple_module() {
        let s0 = s("1_0");
        let l = dual_number_lift(&s0, &ext_generator(&s0).unwrap()).unwrap();
        match extend_lift(&l) {
            Extension::Obstructed(ob) => assert_eq!(ob.order, 3),
            Extension::Extended(_) => panic!("lift of S0 should be obstructed"),
        }
        let triv = TruncatedLift::trivial(&s0, 3);
        assert!(matches!(extend_lift(&triv), Extension::Extended(_)));
    }

    #[test]
    fn obstruction_scales_quadratically() {
        let f = f7();
        let s0 = s("1_0");
        let l = dual_number_lift(&s0, &ext_generator(&s0).unwrap()).unwrap();
        let base = match extend_lift(&l) {
            Extension::Obstructed(ob) => ob.defect,
            _ => unreachable!(),
        };
        for c in [2u32, 3, 5] {
            let mut scaled = l.clone();
            for m in scaled.layers[0].iter_mut() {
                *m = linalg::scale(&f, &c, m);
            }
            match extend_lift(&scaled) {
                Extension::Obstructed(ob) => {
                    let expect: Vec<(usize, u32)> =
                        base.iter().map(|&(k, v)| (k, f.elem((c * c * v) as i64))).collect();
                    assert_eq!(ob.defect, expect);
                }
                Extension::Extended(_) => panic!("solvability changed under scaling"),
            }
        }
    }

    #[test]
    fn witnesses() {
        let a02 = s("la xi- de rh-");
        let (ew, w) = wrap_lift_search(&a02).unwrap();
        assert_eq!((ew.arrow, ew.row, ew.col), (Arrow::Be, 4, 0));
        let trunc = w.truncate(3);
        match extend_lift(&w.truncate(2)) {
            Extension::Extended(next) => assert!(next.is_valid() && trunc.is_valid()),
            Extension::Obstructed(_) => panic!("witness truncation must extend"),
        }
        assert!(wrap_lift_search(&s("1_0")).is_none());
        assert!(wrap_lift_search(&s("la xi-")).is_none());
        let bw = band_parameter_lift(f7(), &named::x(), 2).unwrap();
        assert!(is_isomorphic(&bw.base, &band_rep(f7(), &named::x(), 2, 1).unwrap()));
        band_parameter_lift(f7(), &named::p(), 3).unwrap();
        assert!(band_parameter_lift(f7(), &named::x(), 0).is_err());
    }

    #[test]
    fn classification_examples() {
        let tag = |r: &Rep| classify(r, DEFAULT_MAX_ORDER).unwrap().tag;
        assert_eq!(tag(&s("1_0")), DeformationTag::KModT2);
        assert_eq!(tag(&s("la xi-")), DeformationTag::K);
        assert_eq!(tag(&s("la xi- de rh-")), DeformationTag::PowerSeries);
        assert_eq!(tag(&s("al")), DeformationTag::K);
        assert_eq!(tag(&s("al- la xi- de rh-")), DeformationTag::PowerSeries);
        assert_eq!(tag(&band_rep(f7(), &named::p(), 3, 1).unwrap()), DeformationTag::PowerSeries);
        let with_p = s("1_0").direct_sum(&projective_rep(f7(), 2));
        assert_eq!(tag(&with_p), DeformationTag::KModT2);
        assert_eq!(tag(&syzygy(&s("la xi- de rh-"))), DeformationTag::PowerSeries);
    }
}
