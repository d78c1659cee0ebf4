use std::collections::BTreeMap;
use std::sync::OnceLock;

use extcrystal_core::braid::Sign;
use extcrystal_core::labels::{gamma, AffineLabel};
use extcrystal_core::sample::{random_binf, random_ext, rng, MAX_LEN, WINDOW};
use extcrystal_core::{
    BInfinity, CartanDatum, Convention, ExtCrystal, FoldedCrystal, FoldingDatum, MultisegBridge, Multisegment,
    ReducedWord,
};
use proptest::prelude::*;

const TYPES: [&str; 4] = ["A2", "A3", "A4", "D4"];

fn crystals() -> &'static BTreeMap<&'static str, ExtCrystal> {
    static C: OnceLock<BTreeMap<&'static str, ExtCrystal>> = OnceLock::new();
    C.get_or_init(|| {
        TYPES
            .iter()
            .chain(["D5", "E6"].iter())
            .map(|&t| (t, ExtCrystal::new(BInfinity::new(CartanDatum::parse(t).unwrap()))))
            .collect()
    })
}

fn x(t: &str) -> &'static ExtCrystal {
    &crystals()[t]
}

fn any_type() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&["A2", "A3", "A4", "D4", "D5", "E6"][..])
}

/// A random reduced word of `w_0` reached by random braid moves.
fn random_longest_word(c: &CartanDatum, seed: u64) -> ReducedWord {
    use rand::Rng;
    let mut r = rng(seed);
    let mut w = c.longest_word().letters().to_vec();
    for _ in 0..200 {
        let p = r.gen_range(0..w.len());
        for m in [2, 3] {
            let mut v = w.clone();
            if c.apply_move(&mut v, extcrystal_core::Move { position: p, m }).is_ok() {
                w = v;
                break;
            }
        }
    }
    c.reduced_word(w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crystal_axioms(t in any_type(), seed: u64) {
        let b = x(t).binf();
        let e = random_binf(b, &mut rng(seed), MAX_LEN);
        for i in 0..b.rank() {
            let f = b.f(i, &e);
            prop_assert_eq!(b.eps(i, &f), b.eps(i, &e) + 1);
            prop_assert_eq!(b.weight(&f), &b.weight(&e) - &b.cartan().simple_root(i));
            prop_assert_eq!(b.e(i, &f), Some(e.clone()));
            if let Some(up) = b.e(i, &e) {
                prop_assert_eq!(&b.f(i, &up), &e);
            } else {
                prop_assert_eq!(b.eps(i, &e), 0);
            }
            let fs = b.f_star(i, &e);
            prop_assert_eq!(b.eps_star(i, &fs), b.eps_star(i, &e) + 1);
            prop_assert_eq!(b.weight(&fs), &b.weight(&e) - &b.cartan().simple_root(i));
            prop_assert_eq!(b.e_star(i, &fs), Some(e.clone()));
            let d = b.local_data(i, &e);
            prop_assert!(d.eps >= 0 && d.eps_star >= 0);
            prop_assert_eq!(d.phi - d.eps, d.phi_star - d.eps_star);
        }
    }

    #[test]
    fn zeta_properties(t in any_type(), seed: u64) {
        let b = x(t).binf();
        let c = b.cartan();
        let e = random_binf(b, &mut rng(seed), MAX_LEN);
        let z = b.zeta(&e);
        prop_assert_eq!(&b.zeta(&z), &e);
        prop_assert_eq!(b.weight(&z), b.weight(&e).relabeled(c.star_map()));
        for i in 0..b.rank() {
            prop_assert_eq!(b.f(i, &z), b.zeta(&b.f(c.star(i), &e)));
            prop_assert_eq!(b.saito(i, &z, false), b.zeta(&b.saito(c.star(i), &e, false)));
        }
    }

    #[test]
    fn saito_reflections(t in any_type(), seed: u64) {
        let b = x(t).binf();
        let c = b.cartan();
        let e = random_binf(b, &mut rng(seed), MAX_LEN);
        for i in 0..b.rank() {
            let t1 = b.saito(i, &e, false);
            prop_assert_eq!(&t1, &b.saito_definitional(i, &e));
            prop_assert_eq!(b.eps_star(i, &t1), 0);
            let top = b.e_max(i, &e);
            prop_assert_eq!(&b.saito(i, &t1, true), &top);
            prop_assert_eq!(b.weight(&t1), c.reflect(i, &b.weight(&top)));
            let s1 = b.saito(i, &e, true);
            prop_assert_eq!(b.saito(i, &s1, false), b.e_star_max(i, &e));
        }
    }

    #[test]
    fn data_round_trips(t in any_type(), seed: u64, wseed: u64) {
        let b = x(t).binf();
        let c = b.cartan();
        let e = random_binf(b, &mut rng(seed), MAX_LEN);
        let w = random_longest_word(c, wseed);
        let roots = c.roots_along(w.letters()).unwrap();
        for conv in [Convention::Plus, Convention::Minus] {
            let d = b.datum(&e, &w, conv).unwrap();
            prop_assert_eq!(&b.from_datum(&d).unwrap(), &e);
            prop_assert_eq!(&d, &b.datum_definitional(&e, &w, conv).unwrap());
            let back = b.change_word(&b.change_word(&d, b.reference()).unwrap(), &w).unwrap();
            prop_assert_eq!(&back, &d);
        }
        let d = b.datum(&e, &w, Convention::Plus).unwrap();
        let mut wt = extcrystal_core::Weight::zero(b.rank());
        for (k, r) in d.coords().iter().zip(&roots) {
            wt -= &r.scaled(*k as i64);
        }
        prop_assert_eq!(wt, b.weight(&e));
    }

    #[test]
    fn reduced_words_and_paths(t in any_type(), s1: u64, s2: u64) {
        let c = x(t).cartan();
        let u = random_longest_word(c, s1);
        let v = random_longest_word(c, s2);
        let mut roots = c.roots_along(u.letters()).unwrap();
        roots.sort();
        let mut all = c.positive_roots().to_vec();
        all.sort();
        prop_assert_eq!(roots, all);
        let p = c.braid_move_path(&u, &v).unwrap();
        let q = c.braid_move_path(&v, &u).unwrap();
        let there = c.apply_path(&u, &p).unwrap();
        prop_assert_eq!(there.letters(), v.letters());
        let back = c.apply_path(&there, &q).unwrap();
        prop_assert_eq!(back.letters(), u.letters());
    }

    #[test]
    fn ext_axioms(t in any_type(), seed: u64) {
        let x = x(t);
        let mut r = rng(seed);
        let b = random_ext(x, &mut r, MAX_LEN, WINDOW);
        for i in 0..x.rank() {
            for k in -2..=2 {
                let f = x.f(i, k, &b);
                prop_assert_eq!(&x.e(i, k, &f), &b);
                prop_assert_eq!(&x.f(i, k, &x.e(i, k, &b)), &b);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(x.weight(&f), &x.weight(&b) - &x.cartan().simple_root(i).scaled(sign));
                prop_assert_eq!(x.shift(1, &f), x.f(i, k + 1, &x.shift(1, &b)));
            }
        }
        prop_assert_eq!(&x.shift(-3, &x.shift(3, &b)), &b);
        prop_assert_eq!(x.weight(&x.shift(1, &b)), -x.weight(&b));
        prop_assert_eq!(&x.zeta(&x.zeta(&b)), &b);
        let path = x.to_highest(&b);
        prop_assert_eq!(path.len() as i64, x.depth(&b));
        prop_assert_eq!(&x.replay(&path), &b);
    }

    #[test]
    fn braid_action(t in any_type(), seed: u64) {
        let x = x(t);
        let c = x.cartan();
        let b = random_ext(x, &mut rng(seed), MAX_LEN, WINDOW);
        for i in 0..x.rank() {
            let r = x.braid_r(i, &b, Sign::Plus);
            prop_assert_eq!(&r, &x.braid_r_definitional(i, &b, Sign::Plus));
            let rs = x.braid_r(i, &b, Sign::Minus);
            prop_assert_eq!(&rs, &x.braid_r_definitional(i, &b, Sign::Minus));
            prop_assert_eq!(&x.braid_r(i, &r, Sign::Minus), &b);
            prop_assert_eq!(&x.braid_r(i, &rs, Sign::Plus), &b);
            prop_assert_eq!(x.weight(&r), c.reflect(i, &x.weight(&b)));
            prop_assert_eq!(x.braid_r(i, &x.shift(1, &b), Sign::Plus), x.shift(1, &r));
            prop_assert_eq!(x.zeta(&r), x.braid_r(c.star(i), &x.zeta(&b), Sign::Plus));
        }
    }

    #[test]
    fn multisegment_oracle(n in 2usize..=4, seed: u64) {
        use rand::Rng;
        let b = x(&format!("A{n}")).binf();
        let br = MultisegBridge::new(b.clone()).unwrap();
        let mut r = rng(seed);
        let mut m = Multisegment::empty(n);
        let mut e = b.highest();
        for _ in 0..MAX_LEN {
            let i = r.gen_range(0..n);
            if r.gen_bool(0.5) {
                m = m.f(i);
                e = b.f(i, &e);
            } else {
                m = m.f_star(i);
                e = b.f_star(i, &e);
            }
            prop_assert_eq!(&br.to_binf(&m), &e);
            prop_assert_eq!(m.weight(), b.weight(&e));
            for j in 0..n {
                prop_assert_eq!(m.local_data(j), b.local_data(j, &e));
                prop_assert_eq!(m.e(j).map(|u| br.to_binf(&u)), b.e(j, &e));
                prop_assert_eq!(m.e_star(j).map(|u| br.to_binf(&u)), b.e_star(j, &e));
                prop_assert_eq!(&m.f(j).e(j).unwrap(), &m);
                prop_assert_eq!(&m.f_star(j).e_star(j).unwrap(), &m);
            }
        }
        let text = m.to_string();
        prop_assert_eq!(Multisegment::parse(n, &text).unwrap(), m);
    }

    #[test]
    fn gamma_and_shift(seed: u64) {
        let x = x("A2");
        let br = MultisegBridge::new(x.binf().clone()).unwrap();
        let b = random_ext(x, &mut rng(seed), MAX_LEN, WINDOW);
        let g = gamma(&br, &b).unwrap();
        prop_assert_eq!(gamma(&br, &x.shift(1, &b)).unwrap(), g.cdual(1));
        prop_assert_eq!(AffineLabel::parse(&g.to_string()).unwrap(), g);
    }
}

#[test]
fn gamma_is_injective_on_samples() {
    let x = x("A2");
    let br = MultisegBridge::new(x.binf().clone()).unwrap();
    let mut seen = BTreeMap::new();
    for s in 0..400 {
        let b = random_ext(x, &mut rng(s), MAX_LEN, WINDOW);
        let g = gamma(&br, &b).unwrap();
        if let Some(prev) = seen.insert(g.clone(), b.clone()) {
            assert_eq!(prev, b, "two elements share the label {g}");
        }
    }
}

#[test]
fn folding_properties() {
    for (ty, sigma, samples) in [("A3", "1:3,3:1", 100), ("D4", "1:3,3:4,4:1", 30), ("A5", "1:5,5:1,2:4,4:2", 30)] {
        let t: extcrystal_core::CartanType = ty.parse().unwrap();
        let fd = FoldingDatum::new(t, FoldingDatum::parse_sigma(t.rank(), sigma).unwrap()).unwrap();
        let fc = FoldedCrystal::new(fd);
        let x = fc.ext();
        let c = x.cartan();
        let mut r = rng(5);
        for _ in 0..samples {
            let any = random_ext(x, &mut r, MAX_LEN, WINDOW);
            let b = fc.random_fixed(&mut r, MAX_LEN, WINDOW);
            assert!(fc.is_fixed(&b));
            for (j, orbit) in fc.datum().orbits().iter().enumerate() {
                for &i in orbit {
                    for &i2 in orbit {
                        assert_eq!(x.f(i, 1, &x.f(i2, 1, &any)), x.f(i2, 1, &x.f(i, 1, &any)));
                    }
                }
                let s = fc.sigma_ext(&any);
                assert_eq!(fc.sigma_ext(&fc.fold_f(j, 0, &any)), fc.fold_f(j, 0, &s));
                assert_eq!(fc.sigma_ext(&fc.fold_r(j, &any, Sign::Plus)), fc.fold_r(j, &s, Sign::Plus));
                let rb = fc.fold_r(j, &b, Sign::Plus);
                assert!(fc.is_fixed(&rb));
                assert_eq!(fc.fold_r(j, &rb, Sign::Minus), b);
                let mut w = x.weight(&b);
                for &i in orbit {
                    w = c.reflect(i, &w);
                }
                assert_eq!(x.weight(&rb), w);
                assert_eq!(fc.fold_e(j, 1, &fc.fold_f(j, 1, &b)), b);
            }
        }
    }
}

#[test]
fn sigma_has_order_three_on_triality() {
    let t: extcrystal_core::CartanType = "D4".parse().unwrap();
    let fd = FoldingDatum::new(t, FoldingDatum::parse_sigma(4, "1:3,3:4,4:1").unwrap()).unwrap();
    let fc = FoldedCrystal::new(fd);
    let mut r = rng(9);
    for _ in 0..200 {
        let b = random_ext(fc.ext(), &mut r, MAX_LEN, WINDOW);
        assert_eq!(fc.sigma_ext(&fc.sigma_ext(&fc.sigma_ext(&b))), b);
    }
}

/// Faithfulness is open, so this only reports whether short nontrivial braid words move some
/// sampled element.
#[test]
fn faithfulness_experiment() {
    let x = x("A2");
    let words = ["1 2", "1 1", "1 2 1 2' 1' 2'", "1 2 1 2 1 2"];
    for w in words {
        let w = extcrystal_core::BraidWord::parse(2, w).unwrap();
        let moved = (0..50).any(|s| {
            let b = random_ext(x, &mut rng(s), MAX_LEN, WINDOW);
            x.braid_apply(&w, &b) != b
        });
        println!("word {w}: acts nontrivially on samples = {moved}");
    }
}
