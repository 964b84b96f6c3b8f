//! The theorem sweeps behind the `verify` command and the acceptance tests.
//! Each criterion returns a report listing what was checked and every
//! counterexample found.

use serde::Serialize;

use crate::ar::{add_hook, ar_translate, component_page, Side};
use crate::config::Config;
use crate::deform::{band_parameter_lift, classify, wrap_lift_search, DeformationTag};
use crate::error::Result;
use crate::hom::{
    canonical_string_homs_raw, ext1_dim, hom_basis, hom_dim, in_span, is_hom, projective_factor_subspace,
    stable_end_dim,
};
use crate::iso::{identify_string, is_isomorphic};
use crate::linalg::{self, Fp, Mat, Matrix};
use crate::rep::{band_rep, projective_rep, string_rep, syzygy, Rep};
use crate::type0::{
    check_plus, check_plusplus, expand, plus_normal_form_blocks, recognize_plus, recognize_plusplus, standard_string,
    wrap_around_maps, wrap_around_relations, wrap_arounds, LevelParams, Shape, Type0Word,
};
use crate::words::{apply_nu_flip, enumerate_bands, enumerate_strings, is_valid_band_word, named, StringClass, Word};

/// Sweep bounds derived from a [`Config`].
#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    #[serde(skip)]
    pub field: Fp,
    pub field_p: u32,
    /// Strings compared by the Hom oracle sweep.
    pub string_len: usize,
    /// Type-0 words in the string sweep (capped at 6).
    pub plus_len: usize,
    /// Type-0 words in the band sweep.
    pub plusplus_len: usize,
    /// Type-0 words in the recognizer equivalences.
    pub normal_form_len: usize,
    /// Type-0 bands whose syzygies and deformation rings are checked.
    pub band_type0_len: usize,
    pub max_order: usize,
}

impl Bounds {
    pub fn from_config(c: &Config) -> Result<Bounds> {
        c.validate()?;
        Ok(Bounds {
            field: Fp::new(c.field_p)?,
            field_p: c.field_p,
            string_len: c.max_string_len,
            plus_len: c.max_type0_len.min(6),
            plusplus_len: c.max_band_len,
            normal_form_len: c.max_type0_len,
            band_type0_len: c.max_band_len.min(3),
            max_order: c.max_lift_order,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Inputs swept (words, pairs, or modules).
    pub items: usize,
    /// Individual predicate evaluations.
    pub checked: usize,
    pub failures: Vec<String>,
}

struct Tally {
    items: usize,
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally { items: 0, checked: 0, failures: Vec::new() }
    }
    fn item(&mut self) {
        self.items += 1;
    }
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
    fn finish(self, id: u8, name: &'static str) -> CriterionReport {
        CriterionReport {
            id,
            name,
            passed: self.failures.is_empty(),
            items: self.items,
            checked: self.checked,
            failures: self.failures,
        }
    }
}

fn w(s: &str) -> Word {
    Word::parse(s).expect("hardcoded word")
}

fn units_except_pm1(f: &Fp) -> Vec<u32> {
    f.units().filter(|&m| m != 1 && m != f.modulus() - 1).collect()
}

fn neg_inv(f: &Fp, mu: u32) -> u32 {
    use crate::linalg::Field;
    f.neg(&f.inv(&mu).expect("nonzero"))
}

fn inv(f: &Fp, mu: u32) -> u32 {
    use crate::linalg::Field;
    f.inv(&mu).expect("nonzero")
}

/// `A_{n,j}`: the word `pⁿ` followed by nothing, `λξ⁻¹`, or `λξ⁻¹δρ⁻¹`.
pub fn a_word(n: usize, j: usize) -> Word {
    let tails = [Word::empty(0), w("la xi-"), w("la xi- de rh-")];
    if n == 0 {
        return tails[j].clone();
    }
    let pn = named::p().power(n).expect("closed");
    if j == 0 {
        pn
    } else {
        pn.concat(&tails[j]).expect("composable")
    }
}

/// Type-0 words of length `1..=max` whose expansion is a band.
pub fn band_type0_words(max: usize) -> Vec<Type0Word> {
    (1..=max).flat_map(Type0Word::all_of_len).filter(|z| is_valid_band_word(&expand(z))).collect()
}

/// Canonical string homs are a basis of the Hom space.
pub fn criterion_hom_oracle(b: &Bounds) -> Result<CriterionReport> {
    let f = b.field;
    let strings = enumerate_strings(b.string_len);
    let mods: Vec<Rep> = strings.iter().map(|s| string_rep(f, s.word())).collect::<Result<_>>()?;
    let mut t = Tally::new();
    for (i, s) in strings.iter().enumerate() {
        for (j, u) in strings.iter().enumerate() {
            t.item();
            let raw = canonical_string_homs_raw(s.word(), u.word());
            let (dm, dn) = (mods[i].dim(), mods[j].dim());
            let mats: Vec<Mat> = raw
                .iter()
                .map(|(_, support)| {
                    let mut m = Matrix::filled(dn, dm, 0);
                    for &(r, c) in support {
                        m.set(r, c, 1);
                    }
                    m
                })
                .collect();
            let oracle = hom_dim(&mods[i], &mods[j]);
            let rank = linalg::span_rank(&f, &mats);
            let all_homs = mats.iter().all(|m| is_hom(&mods[i], &mods[j], m));
            t.check(raw.len() == oracle && rank == raw.len() && all_homs, || {
                format!("{s} -> {u}: canonical {} (rank {rank}), oracle {oracle}", raw.len())
            });
        }
    }
    Ok(t.finish(1, "canonical string homs form a basis"))
}

/// Stable endomorphisms of `M(βα⁻¹zλ)` against condition (+).
pub fn criterion_plus_sweep(b: &Bounds) -> Result<CriterionReport> {
    let mut t = Tally::new();
    for n in 0..=b.plus_len {
        for z in Type0Word::all_of_len(n) {
            t.item();
            let m = string_rep(b.field, &standard_string(&z))?;
            let se = stable_end_dim(&m);
            let plus = check_plus(&z);
            t.check((se == 1) == plus, || format!("z = {z}: stable End dim {se}, (+) {plus}"));
        }
    }
    Ok(t.finish(2, "stable End of type-0 strings is k iff (+)"))
}

/// Stable endomorphisms of `M(z, μ, 1)` against (++) and `μ ≠ ±1`.
pub fn criterion_plusplus_sweep(b: &Bounds) -> Result<CriterionReport> {
    let f = b.field;
    let mut t = Tally::new();
    for z in band_type0_words(b.plusplus_len) {
        let pp = check_plusplus(&z)?;
        for mu in f.units() {
            t.item();
            let m = band_rep(f, &expand(&z), mu, 1)?;
            let se = stable_end_dim(&m);
            let expect = pp && mu != 1 && mu != f.modulus() - 1;
            t.check((se == 1) == expect, || format!("z = {z}, mu = {mu}: stable End dim {se}, (++) {pp}"));
        }
    }
    Ok(t.finish(3, "stable End of type-0 bands is k iff (++) and mu != ±1"))
}

/// Level parameters whose frame fits in `max` blocks.
fn level_params_within(max: usize) -> Vec<LevelParams> {
    let mut out = vec![LevelParams::default()];
    let mut frontier = vec![LevelParams::default()];
    while let Some(p) = frontier.pop() {
        for i in 0..2u8 {
            for a in 1..=max {
                let mut q = p.clone();
                q.i.push(i);
                q.a.push(a);
                if plus_normal_form_blocks(&q, Shape::Bare).len() <= max {
                    out.push(q.clone());
                    frontier.push(q);
                }
            }
        }
    }
    out
}

/// Both recognizers against the brute-force framing checks.
pub fn criterion_normal_forms(b: &Bounds) -> Result<CriterionReport> {
    let mut t = Tally::new();
    for n in 0..=b.normal_form_len {
        for z in Type0Word::all_of_len(n) {
            t.item();
            let plus = check_plus(&z);
            let rec = recognize_plus(&standard_string(&z))?;
            t.check(plus == rec.is_some(), || format!("(+) {plus} but recognizer {rec:?} for {z}"));
            if plus {
                t.check(z == z.reversed(), || format!("{z} satisfies (+) but is not a palindrome"));
            }
            if n >= 1 && is_valid_band_word(&expand(&z)) {
                let pp = check_plusplus(&z)?;
                let rec = recognize_plusplus(&z);
                let wraps = wrap_arounds(&z).len();
                t.check(pp == rec.is_some(), || format!("(++) {pp} but recognizer {rec:?} for {z}"));
                t.check(!pp || wraps == 1, || format!("{z} satisfies (++) with {wraps} wrap-arounds"));
                t.check(wraps <= 1, || format!("band {z} has {wraps} wrap-arounds"));
            }
        }
    }
    for p in level_params_within(b.normal_form_len) {
        for shape in [Shape::Bare, Shape::X(1), Shape::Y(1), Shape::X(2), Shape::Y(2), Shape::X(3), Shape::Y(3)] {
            let z = plus_normal_form_blocks(&p, shape);
            if z.len() > b.normal_form_len {
                continue;
            }
            t.check(check_plus(&z), || format!("normal form {p:?} {shape:?} = {z} fails (+)"));
        }
    }
    Ok(t.finish(4, "normal-form recognition matches (+) and (++)"))
}

/// The simple-module component: `A_{n,j}`.
pub fn criterion_simple_component(b: &Bounds) -> Result<CriterionReport> {
    let f = b.field;
    let mut t = Tally::new();
    let expect_ext = [1, 0, 1];
    let expect_tag = [DeformationTag::KModT2, DeformationTag::K, DeformationTag::PowerSeries];
    for j in 0..3 {
        t.item();
        let m = string_rep(f, &a_word(0, j))?;
        let se = stable_end_dim(&m);
        t.check(se == 1, || format!("A(0,{j}): stable End dim {se}"));
        let e = ext1_dim(&m, &m)?;
        t.check(e == expect_ext[j], || format!("A(0,{j}): Ext¹ dim {e}"));
        let c = classify(&m, b.max_order)?;
        t.check(c.tag == expect_tag[j], || format!("A(0,{j}): classified {}", c.tag.name()));
        for n in 1..=3 {
            t.item();
            let m = string_rep(f, &a_word(n, j))?;
            let se = stable_end_dim(&m);
            t.check(se >= 2, || format!("A({n},{j}): stable End dim {se}"));
        }
    }
    let a02 = string_rep(f, &a_word(0, 2))?;
    let found = wrap_lift_search(&a02).map(|(e, _)| (e.arrow.token(), e.row, e.col));
    t.check(found == Some(("be", 4, 0)), || format!("A(0,2) witness {found:?}"));
    Ok(t.finish(5, "simple-module component numbers"))
}

/// The two 3-tubes.
pub fn criterion_tubes(b: &Bounds) -> Result<CriterionReport> {
    let f = b.field;
    let mut t = Tally::new();
    let tw = w("al-");
    let th = add_hook(&tw, Side::Right)?;
    t.check(th == Some(w("al- la xi-")), || format!("T_h = {th:?}"));
    let thh = th.as_ref().map(|x| add_hook(x, Side::Right)).transpose()?.flatten();
    t.check(thh == Some(w("al- la xi- de rh-")), || format!("T_hh = {thh:?}"));
    let expect = [DeformationTag::K, DeformationTag::K, DeformationTag::PowerSeries];
    for (word, tag) in [tw, w("al- la xi-"), w("al- la xi- de rh-")].iter().zip(expect) {
        t.item();
        let c = classify(&string_rep(f, word)?, b.max_order)?;
        t.check(c.tag == tag, || format!("{word}: classified {}", c.tag.name()));
    }
    let first = component_page(&StringClass::new(&w("al"))?, 4)?;
    let second = component_page(&StringClass::new(&w("de be"))?, 8)?;
    let second_small = component_page(&StringClass::new(&w("de be"))?, 4)?;
    for page in [&first, &second_small] {
        for node in &page.nodes {
            t.item();
            let m = string_rep(f, &w(&node.word))?;
            let t3 = ar_translate(&ar_translate(&ar_translate(&m)));
            t.check(is_isomorphic(&t3, &m), || format!("tau^3 moves {}", node.word));
        }
    }
    for node in &first.nodes {
        t.item();
        let om = syzygy(&string_rep(f, &w(&node.word))?);
        let id = identify_string(&om);
        t.check(id.as_ref().is_some_and(|c| second.contains(c)), || {
            format!("Omega({}) = {:?} is outside the second tube page", node.word, id.map(|c| c.to_string()))
        });
    }
    Ok(t.finish(6, "3-tubes: classification, tau-periodicity, Omega swaps the tubes"))
}

/// Bands on `p`, `q` and type-0 bands with (++).
pub fn criterion_bands(b: &Bounds) -> Result<CriterionReport> {
    let f = b.field;
    let mut t = Tally::new();
    for mu in f.units() {
        t.item();
        let mp = band_rep(f, &named::p(), mu, 1)?;
        let mq = band_rep(f, &named::q(), neg_inv(&f, mu), 1)?;
        t.check(is_isomorphic(&syzygy(&mp), &mq), || format!("Omega(M_p,{mu}) is not M_q,-1/mu"));
        let h = hom_dim(&mq, &mp);
        let pf = projective_factor_subspace(&mq, &mp).len();
        t.check(h == 3 && pf == 2, || format!("mu = {mu}: Hom dim {h}, projective part {pf}"));
        let e = ext1_dim(&mp, &mp)?;
        t.check(e == 1, || format!("mu = {mu}: Ext¹ dim {e}"));
        let c = classify(&mp, b.max_order)?;
        t.check(c.tag == DeformationTag::PowerSeries, || format!("M_p,{mu}: classified {}", c.tag.name()));
        t.check(band_parameter_lift(f, &named::p(), mu).is_ok(), || format!("mu + t family fails at {mu}"));
    }
    for z in band_type0_words(b.band_type0_len) {
        if !check_plusplus(&z)? {
            continue;
        }
        let word = expand(&z);
        for mu in units_except_pm1(&f) {
            t.item();
            let m = band_rep(f, &word, mu, 1)?;
            let target = band_rep(f, &word, inv(&f, mu), 1)?;
            t.check(is_isomorphic(&syzygy(&m), &target), || format!("Omega(M_{z},{mu}) is not M_{z},1/mu"));
            let c = classify(&m, b.max_order)?;
            t.check(c.tag == DeformationTag::PowerSeries, || format!("M_{z},{mu}: classified {}", c.tag.name()));
        }
    }
    Ok(t.finish(7, "band modules: syzygies and k[[t]]"))
}

/// `S`, `ₕS`, `ₕₕS` for standard strings with (+).
pub fn hook_ladders() -> Vec<(Type0Word, [Word; 3])> {
    ["-", "XYX"]
        .iter()
        .map(|s| {
            let z: Type0Word = s.parse().expect("hardcoded");
            let s0 = standard_string(&z);
            let h = Word::concat_all(&[&w("la de rh-"), &s0]).expect("composable");
            let hh = Word::concat_all(&[&w("de be al-"), &h]).expect("composable");
            (z, [s0, h, hh])
        })
        .collect()
}

pub fn criterion_type0_strings(b: &Bounds) -> Result<CriterionReport> {
    let f = b.field;
    let mut t = Tally::new();
    let expect = [DeformationTag::KModT2, DeformationTag::K, DeformationTag::PowerSeries];
    for (z, words) in hook_ladders() {
        t.check(check_plus(&z), || format!("{z} should satisfy (+)"));
        let h = add_hook(&words[0], Side::Left)?;
        t.check(h.as_ref() == Some(&words[1]), || format!("left hook of {} is {h:?}", words[0]));
        let hh = add_hook(&words[1], Side::Left)?;
        t.check(hh.as_ref() == Some(&words[2]), || format!("left hook of {} is {hh:?}", words[1]));
        for (word, tag) in words.iter().zip(expect) {
            t.item();
            let m = string_rep(f, word)?;
            for (label, v) in [("", m.clone()), ("Omega ", syzygy(&m))] {
                let c = classify(&v, b.max_order)?;
                t.check(c.tag == tag, || format!("{label}M({word}): classified {}", c.tag.name()));
            }
        }
    }
    Ok(t.finish(8, "type-0 string components"))
}

/// Every module whose classification criteria 5 to 8 assert.
pub fn classification_corpus(b: &Bounds) -> Result<Vec<(String, Rep)>> {
    let f = b.field;
    let mut out = Vec::new();
    for n in 0..=3 {
        for j in 0..3 {
            out.push((format!("A({n},{j})"), string_rep(f, &a_word(n, j))?));
        }
    }
    for s in ["al-", "al- la xi-", "al- la xi- de rh-"] {
        out.push((format!("M({s})"), string_rep(f, &w(s))?));
    }
    for mu in f.units() {
        out.push((format!("M_p,{mu}"), band_rep(f, &named::p(), mu, 1)?));
    }
    for z in band_type0_words(b.band_type0_len) {
        if check_plusplus(&z)? {
            for mu in units_except_pm1(&f) {
                out.push((format!("M_{z},{mu}"), band_rep(f, &expand(&z), mu, 1)?));
            }
        }
    }
    for (_, words) in hook_ladders() {
        for word in words {
            out.push((format!("M({word})"), string_rep(f, &word)?));
        }
    }
    Ok(out)
}

pub fn criterion_invariance(b: &Bounds) -> Result<CriterionReport> {
    let f = b.field;
    let mut t = Tally::new();
    for (name, v) in classification_corpus(b)? {
        t.item();
        let base = classify(&v, b.max_order)?.tag;
        let om = classify(&syzygy(&v), b.max_order)?.tag;
        t.check(om == base, || format!("{name}: {} but Omega gives {}", base.name(), om.name()));
        for u in 0..3u8 {
            let sum = classify(&v.direct_sum(&projective_rep(f, u)), b.max_order)?.tag;
            t.check(sum == base, || format!("{name}: {} but adding P{u} gives {}", base.name(), sum.name()));
        }
    }
    Ok(t.finish(9, "classification is invariant under Omega and projective summands"))
}

pub fn criterion_multiplicity(b: &Bounds) -> Result<CriterionReport> {
    let f = b.field;
    let mut t = Tally::new();
    for mu in f.units() {
        t.item();
        let se = stable_end_dim(&band_rep(f, &named::x(), mu, 2)?);
        t.check(se >= 2, || format!("M(x,{mu},2): stable End dim {se}"));
    }
    Ok(t.finish(10, "bands with multiplicity 2 have stable End of dim >= 2"))
}

fn theta_and_nu(f: Fp, t: &mut Tally) -> Result<()> {
    for c in enumerate_strings(5) {
        t.item();
        let s = c.word();
        let m = string_rep(f, s)?;
        t.check(m.check_invariants().is_ok(), || format!("M({s}) violates the relations"));
        let om = syzygy(&m);
        t.check(om.check_invariants().is_ok(), || format!("Omega M({s}) violates the relations"));
        let th = string_rep(f, &s.theta(1))?;
        t.check(is_isomorphic(&th, &m.theta_twist(1)), || format!("theta twist of M({s})"));
        if s.is_empty() {
            continue;
        }
        let nu = string_rep(f, &apply_nu_flip(s)?)?;
        let (se, se2) = (stable_end_dim(&m), stable_end_dim(&nu));
        let (e, e2) = (ext1_dim(&m, &m)?, ext1_dim(&nu, &nu)?);
        t.check(se == se2 && e == e2, || format!("nu flip of {s}: stable End {se}/{se2}, Ext¹ {e}/{e2}"));
    }
    for c in enumerate_bands(6) {
        for mu in f.units() {
            t.item();
            let m = band_rep(f, c.word(), mu, 1)?;
            t.check(m.check_invariants().is_ok(), || format!("M({c},{mu}) violates the relations"));
            let th = band_rep(f, &c.word().theta(1), mu, 1)?;
            t.check(is_isomorphic(&th, &m.theta_twist(1)), || format!("theta twist of M({c},{mu})"));
        }
    }
    Ok(())
}

fn wrap_around_suite(f: Fp, max_len: usize, t: &mut Tally) -> Result<()> {
    use crate::linalg::Field;
    for z in band_type0_words(max_len) {
        let word = expand(&z);
        for omega in wrap_arounds(&z) {
            for mu in f.units() {
                for mu_t in f.units() {
                    t.item();
                    let m = band_rep(f, &word, mu, 1)?;
                    let mt = band_rep(f, &word, mu_t, 1)?;
                    let pf = projective_factor_subspace(&m, &mt);
                    let maps = wrap_around_maps(&z, omega);
                    for (j, s, g) in &maps {
                        t.check(is_hom(&m, &mt, g), || format!("{z}: xi[{j},{s}] is not a hom"));
                    }
                    for (name, g) in wrap_around_relations(&f, &z, omega, mu, mu_t) {
                        t.check(in_span(&f, &pf, &g), || format!("{z}, mu={mu}, mu~={mu_t}: {name} not projective"));
                    }
                    let all_pf = maps.iter().all(|(_, _, g)| in_span(&f, &pf, g));
                    let product_not_one = f.mul(&mu, &mu_t) != 1;
                    t.check(all_pf == product_not_one, || {
                        format!("{z}, mu={mu}, mu~={mu_t}: all maps projective {all_pf}")
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn criterion_properties(b: &Bounds) -> Result<CriterionReport> {
    let f = b.field;
    let mut t = Tally::new();
    for (name, v) in classification_corpus(b)? {
        t.item();
        t.check(v.check_invariants().is_ok(), || format!("{name} violates the relations"));
    }
    let reg = crate::rep::regular_rep(f);
    t.check(reg.check_invariants().is_ok() && hom_basis(&reg, &reg).len() == reg.dim(), || {
        "regular module".to_string()
    });
    theta_and_nu(f, &mut t)?;
    for n in 0..=b.normal_form_len {
        for z in Type0Word::all_of_len(n) {
            let plus = check_plus(&z);
            t.check(plus == check_plus(&z.swapped()), || format!("(+) not preserved by swapping {z}"));
            if plus {
                t.check(z == z.reversed(), || format!("{z} satisfies (+) but is not a palindrome"));
            }
        }
    }
    wrap_around_suite(f, 3, &mut t)?;
    Ok(t.finish(11, "property suites"))
}

pub type CriterionFn = fn(&Bounds) -> Result<CriterionReport>;

pub const CRITERIA: [(u8, CriterionFn); 11] = [
    (1, criterion_hom_oracle),
    (2, criterion_plus_sweep),
    (3, criterion_plusplus_sweep),
    (4, criterion_normal_forms),
    (5, criterion_simple_component),
    (6, criterion_tubes),
    (7, criterion_bands),
    (8, criterion_type0_strings),
    (9, criterion_invariance),
    (10, criterion_multiplicity),
    (11, criterion_properties),
];

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub command: &'static str,
    pub config: Config,
    pub bounds: Bounds,
    pub criteria: Vec<CriterionReport>,
    pub passed: usize,
    pub failed: usize,
    pub verdict: &'static str,
}

/// Runs the selected criteria (all when `only` is empty).
pub fn verify_suite(cfg: &Config, only: &[u8]) -> Result<SweepReport> {
    let b = Bounds::from_config(cfg)?;
    let mut criteria = Vec::new();
    for (id, run) in CRITERIA {
        if only.is_empty() || only.contains(&id) {
            log::info!("criterion {id}");
            criteria.push(run(&b)?);
        }
    }
    let passed = criteria.iter().filter(|c| c.passed).count();
    let failed = criteria.len() - passed;
    Ok(SweepReport {
        command: "verify",
        config: cfg.clone(),
        bounds: b,
        criteria,
        passed,
        failed,
        verdict: if failed == 0 { "pass" } else { "fail" },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Bounds {
        let cfg = Config { max_string_len: 3, max_band_len: 3, max_type0_len: 2, ..Config::sweep() };
        Bounds::from_config(&cfg).unwrap()
    }

    #[test]
    fn a_words() {
        assert_eq!(a_word(0, 0), Word::empty(0));
        assert_eq!(a_word(1, 2).len(), 10);
        assert_eq!(a_word(2, 1).len(), 14);
    }

    #[test]
    fn small_bounds_pass() {
        let b = small();
        for run in [criterion_hom_oracle, criterion_plus_sweep, criterion_normal_forms, criterion_multiplicity] {
            let r = run(&b).unwrap();
            assert!(r.passed, "{}: {:?}", r.name, r.failures);
        }
        // |z| <= 2 gives 1 + 2 + 4 words
        assert_eq!(criterion_plus_sweep(&b).unwrap().items, 7);
        assert_eq!(criterion_normal_forms(&b).unwrap().items, 7);
    }
}
