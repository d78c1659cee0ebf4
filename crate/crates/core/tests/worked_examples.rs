use extcrystal_core::braid::Sign;
use extcrystal_core::labels::{fundamental_orbit, gamma, gamma_k};
use extcrystal_core::{BInfinity, BraidWord, CartanDatum, ExtCrystal, ExtElt, MultisegBridge, Multisegment};

struct A2 {
    ext: ExtCrystal,
    bridge: MultisegBridge,
}

impl A2 {
    fn new() -> Self {
        let binf = BInfinity::new(CartanDatum::parse("A2").unwrap());
        A2 { ext: ExtCrystal::new(binf.clone()), bridge: MultisegBridge::new(binf).unwrap() }
    }

    fn elt(&self, comps: &[(i64, &str)]) -> ExtElt {
        ExtElt::from_components(comps.iter().map(|&(k, s)| (k, self.bridge.parse(s).unwrap())))
    }

    fn ms(&self, s: &str) -> Multisegment {
        Multisegment::parse(2, s).unwrap()
    }

    fn r(&self, word: &str, b: &ExtElt) -> ExtElt {
        self.ext.braid_apply(&BraidWord::parse(2, word).unwrap(), b)
    }

    fn example_ii(&self) -> ExtElt {
        self.elt(&[(1, "2[2]+3[12]+4[1]"), (0, "[2]+[12]+2[1]"), (-1, "3[2]+2[12]+[1]")])
    }
}

#[test]
fn single_box_chain() {
    let a = A2::new();
    let m = a.ext.f(1, 0, &ExtElt::highest());
    assert_eq!(m, a.elt(&[(0, "[2]")]));

    assert_eq!(a.r("1", &m), a.elt(&[(0, "[12]")]));
    assert_eq!(a.r("2 1", &m), a.elt(&[(0, "[1]")]));
    assert_eq!(a.r("1 2 1", &m), a.elt(&[(1, "[1]")]));

    assert_eq!(a.r("2", &m), a.elt(&[(1, "[2]")]));
    assert_eq!(a.r("1 2", &m), a.elt(&[(1, "[12]")]));
    assert_eq!(a.r("2 1 2", &m), a.elt(&[(1, "[1]")]));

    let dz = a.ext.shift(1, &a.ext.zeta(&m));
    assert_eq!(a.r("1 2 1", &m), dz);
    let w = a.ext.cartan().reduced_word(vec![0, 1, 0]).unwrap();
    assert_eq!(a.ext.longest_r(&w, &m, Sign::Plus).unwrap(), dz);
}

#[test]
fn three_component_local_data() {
    let a = A2::new();
    let binf = a.bridge.binf();
    let comps = [
        ("2[2]+3[12]+4[1]", 5, "5[2]+2[1]", "2[2]+3[12]"),
        ("[2]+[12]+2[1]", 2, "2[2]+[1]", "[2]+[12]"),
        ("3[2]+2[12]+[1]", 2, "5[2]+[1]", "[2]+4[12]"),
    ];
    for (m, eps, emax, t) in comps {
        let b = a.bridge.parse(m).unwrap();
        assert_eq!(binf.eps(0, &b), eps, "{m}");
        assert_eq!(a.ms(m).eps(0), eps, "{m}");
        assert_eq!(a.bridge.from_binf(&binf.e_max(0, &b)), a.ms(emax), "{m}");
        assert_eq!(a.ms(m).e_max(0), a.ms(emax), "{m}");
        assert_eq!(a.bridge.from_binf(&binf.saito(0, &b, false)), a.ms(t), "{m}");
        assert_eq!(a.bridge.from_binf(&binf.saito_definitional(0, &b)), a.ms(t), "{m}");
    }
}

#[test]
fn three_component_braid_image() {
    let a = A2::new();
    let m = a.example_ii();
    let expected = a.elt(&[(2, "5[1]"), (1, "2[2]+3[12]+2[1]"), (0, "[2]+[12]+2[1]"), (-1, "[2]+4[12]")]);
    assert_eq!(a.ext.braid_r(0, &m, Sign::Plus), expected);
    assert_eq!(a.ext.braid_r_definitional(0, &m, Sign::Plus), expected);
    assert_eq!(a.ext.braid_r(0, &expected, Sign::Minus), m);
}

#[test]
fn eps_hat_of_three_component_element() {
    let a = A2::new();
    let m = a.example_ii();
    let star = a.ms("2[2]+3[12]+4[1]").eps_star(0);
    assert_eq!(a.ms("[2]+[12]+2[1]").eps(0), 2);
    assert_eq!(a.ext.eps_hat(0, 0, &m), 2 - star);
}

#[test]
fn affine_labels() {
    let a = A2::new();
    let m = a.example_ii();
    let lam = [
        (1, "2[2]+3[12]+4[1]", "2(2,5)+3(1,4)+4(2,3)"),
        (0, "[2]+[12]+2[1]", "(1,2)+(2,1)+2(1,0)"),
        (-1, "3[2]+2[12]+[1]", "3(2,-1)+2(1,-2)+(2,-3)"),
    ];
    let mut total = extcrystal_core::AffineLabel::empty();
    for (k, s, l) in lam {
        let g = gamma_k(k, &a.ms(s)).unwrap();
        assert_eq!(g.to_string(), l);
        total = total.union(&g);
    }
    assert_eq!(gamma(&a.bridge, &m).unwrap(), total);

    let image = a.ext.braid_r(0, &m, Sign::Plus);
    let lam_prime = [(2, "5(1,6)"), (1, "2(2,5)+3(1,4)+2(2,3)"), (0, "(1,2)+(2,1)+2(1,0)"), (-1, "(2,-1)+4(1,-2)")];
    for (k, l) in lam_prime {
        let c = a.bridge.from_binf(image.get(k).unwrap());
        assert_eq!(gamma_k(k, &c).unwrap().to_string(), l);
    }
}

#[test]
fn fundamental_orbit_pattern() {
    let a = A2::new();
    let labels = fundamental_orbit(&a.bridge, 12).unwrap();
    assert_eq!(labels[0].to_string(), "(1,0)");
    assert_eq!(labels[1].to_string(), "(2,1)");
    for l in &labels {
        let t = l.triples();
        assert_eq!(t.len(), 1);
        let (i, x, mult) = t[0];
        assert_eq!(mult, 1);
        assert!(x >= 0);
        assert_eq!(x.rem_euclid(2), if i == 1 { 0 } else { 1 });
    }
}
