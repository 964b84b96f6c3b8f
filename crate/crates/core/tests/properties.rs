use biserial::ar::{ar_translate, component_page};
use biserial::config::Config;
use biserial::deform::{classify, tangent_dim_via_cocycles};
use biserial::hom::{canonical_band_homs_raw, ext1_dim, hom_basis, hom_dim};
use biserial::iso::{identify_string, is_isomorphic};
use biserial::linalg::{self, Fp};
use biserial::rep::{band_rep, projective_cover, projective_rep, regular_rep, string_rep, syzygy};
use biserial::type0::{level_letters, LevelParams, Type0Word};
use biserial::verify::{band_type0_words, classification_corpus, Bounds};
use biserial::words::{enumerate_bands, enumerate_strings, BandClass, StringClass, Word};
use proptest::prelude::*;

fn f7() -> Fp {
    Fp::new(7).unwrap()
}

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

#[test]
fn regular_module_has_dimension_fifteen() {
    let f = f7();
    let reg = regular_rep(f);
    assert_eq!(reg.dim(), 15);
    assert!(reg.check_invariants().is_ok());
    assert_eq!((0..3).map(|u| projective_rep(f, u).dim()).sum::<usize>(), 15);
    assert_eq!(hom_basis(&reg, &reg).len(), 15);
}

#[test]
fn canonical_band_homs_match_the_oracle_on_type0_bands() {
    let f = f7();
    let mut classes: Vec<BandClass> =
        band_type0_words(4).iter().map(|z| BandClass::new(&biserial::type0::expand(z)).unwrap()).collect();
    classes.sort();
    classes.dedup();
    assert!(classes.len() >= 6);
    for b in &classes {
        for bt in &classes {
            for mu in f.units() {
                for mu_t in f.units() {
                    let m = band_rep(f, b.word(), mu, 1).unwrap();
                    let n = band_rep(f, bt.word(), mu_t, 1).unwrap();
                    let mut mats: Vec<_> = canonical_band_homs_raw(f, b.word(), mu, bt.word(), mu_t)
                        .unwrap()
                        .into_iter()
                        .map(|r| r.1)
                        .collect();
                    if b == bt && mu == mu_t {
                        mats.push(linalg::identity(&f, m.dim()));
                    }
                    let oracle = hom_dim(&m, &n);
                    assert_eq!(mats.len(), oracle, "{b},{mu} -> {bt},{mu_t}");
                    assert_eq!(linalg::span_rank(&f, &mats), oracle, "{b},{mu} -> {bt},{mu_t}");
                }
            }
        }
    }
}

#[test]
fn tau_period_three_exactly_on_the_two_tubes() {
    let f = f7();
    let first = component_page(&StringClass::new(&w("al")).unwrap(), 14).unwrap();
    let second = component_page(&StringClass::new(&w("de be")).unwrap(), 14).unwrap();
    let mut in_tubes = 0;
    for s in enumerate_strings(8) {
        let m = string_rep(f, s.word()).unwrap();
        let t3 = ar_translate(&ar_translate(&ar_translate(&m)));
        let periodic = is_isomorphic(&t3, &m);
        let tube = first.contains(&s) || second.contains(&s);
        in_tubes += usize::from(tube);
        assert_eq!(periodic, tube, "{s}");
    }
    assert!(in_tubes >= 6);
}

#[test]
fn bands_are_tau_fixed() {
    let f = f7();
    for b in enumerate_bands(5) {
        for mu in f.units() {
            let m = band_rep(f, b.word(), mu, 1).unwrap();
            assert!(is_isomorphic(&ar_translate(&m), &m), "{b},{mu}");
        }
    }
}

#[test]
fn simple_and_type0_components_are_omega_stable() {
    let f = f7();
    for center in ["1_0", "1_1", "la xi-", "be al- la", "la de rh- be al- la"] {
        let c = StringClass::new(&w(center)).unwrap();
        let page = component_page(&c, 10).unwrap();
        let om = identify_string(&syzygy(&string_rep(f, c.word()).unwrap())).unwrap();
        assert!(page.contains(&om), "Omega of {center} is {om}");
    }
}

#[test]
fn classification_is_theta_equivariant_on_the_corpus() {
    let b = Bounds::from_config(&Config::sweep()).unwrap();
    for (name, v) in classification_corpus(&b).unwrap() {
        let base = classify(&v, b.max_order).unwrap().tag;
        let twisted = classify(&v.theta_twist(1), b.max_order).unwrap().tag;
        assert_eq!(base, twisted, "{name}");
    }
}

#[test]
fn cocycle_tangent_dimension_matches_ext_on_the_corpus() {
    let b = Bounds::from_config(&Config::sweep()).unwrap();
    for (name, v) in classification_corpus(&b).unwrap() {
        assert_eq!(tangent_dim_via_cocycles(&v), ext1_dim(&v, &v).unwrap(), "{name}");
    }
}

/// Whether `z` is a concatenation of copies of `x` and `y`.
fn factors_over(z: &Type0Word, x: &Type0Word, y: &Type0Word) -> bool {
    let (zb, xb, yb) = (z.blocks(), x.blocks(), y.blocks());
    let mut reach = vec![false; zb.len() + 1];
    reach[0] = true;
    for i in 0..zb.len() {
        if !reach[i] {
            continue;
        }
        for piece in [xb, yb] {
            if zb[i..].starts_with(piece) {
                reach[i + piece.len()] = true;
            }
        }
    }
    reach[zb.len()]
}

fn arb_params() -> impl Strategy<Value = LevelParams> {
    (0usize..4)
        .prop_flat_map(|l| (prop::collection::vec(0u8..2, l), prop::collection::vec(1usize..4, l)))
        .prop_map(|(i, a)| LevelParams::new(i, a).unwrap())
}

fn arb_string() -> impl Strategy<Value = Word> {
    let classes = enumerate_strings(7);
    (0..classes.len()).prop_map(move |k| classes[k].word().clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn level_letters_factor_over_lower_levels(p in arb_params()) {
        let (x, y) = level_letters(&p);
        for j in 0..p.i.len() {
            let lower = LevelParams::new(p.i[..j].to_vec(), p.a[..j].to_vec()).unwrap();
            let (lx, ly) = level_letters(&lower);
            prop_assert!(factors_over(&x, &lx, &ly), "{x} over level {}", j + 1);
            prop_assert!(factors_over(&y, &lx, &ly), "{y} over level {}", j + 1);
        }
    }

    #[test]
    fn syzygy_dimension_is_cover_minus_module(s in arb_string()) {
        let f = f7();
        let m = string_rep(f, &s).unwrap();
        let cover = projective_cover(&m);
        let om = syzygy(&m);
        prop_assert_eq!(om.dim() + m.dim(), cover.module.dim());
        prop_assert!(om.check_invariants().is_ok());
    }

    #[test]
    fn theta_twist_matches_theta_word(s in arb_string(), times in 0usize..3) {
        let f = f7();
        let m = string_rep(f, &s).unwrap();
        let t = string_rep(f, &s.theta(times)).unwrap();
        prop_assert!(is_isomorphic(&m.theta_twist(times), &t));
    }
}
