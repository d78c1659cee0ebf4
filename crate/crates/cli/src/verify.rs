//! Randomized verification suites. Each case draws from its own seeded stream,
//! so cases run in parallel and the report is identical to a sequential run.

use anyhow::{bail, Result};
use extcrystal_core::braid::Sign;
use extcrystal_core::sample::{case_rng, random_binf, random_ext, random_longest_word, SampleRng};
use extcrystal_core::{
    BInfinity, CartanType, Convention, ExtCrystal, ExtElt, Family, FoldedCrystal, FoldingDatum, MultisegBridge,
    Multisegment,
};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::element::Ctx;

pub const SUITES: [&str; 7] =
    ["crystal-axioms", "inverse-pairs", "braid-relations", "longest-word", "oracle-agreement", "folding", "two-ld"];

pub struct Params {
    pub samples: u64,
    pub seed: u64,
    pub depth: usize,
    pub window: (i64, i64),
    pub sigma: Option<String>,
}

pub struct Report {
    pub suite: String,
    pub ty: String,
    pub seed: u64,
    pub samples: u64,
    pub detail: String,
    pub failures: Vec<(u64, String)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn text(&self) -> String {
        let mut s = format!(
            "{} on {}: {} samples, seed {}, {} failures{}",
            self.suite,
            self.ty,
            self.samples,
            self.seed,
            self.failures.len(),
            if self.detail.is_empty() { String::new() } else { format!(" ({})", self.detail) },
        );
        for (case, msg) in &self.failures {
            s.push_str(&format!("\n  case {case}: {msg}"));
        }
        s
    }

    pub fn json(&self) -> Value {
        json!({
            "suite": self.suite,
            "type": self.ty,
            "seed": self.seed,
            "samples": self.samples,
            "detail": self.detail,
            "passed": self.passed(),
            "failures": self.failures.iter().map(|(c, m)| json!({"case": c, "message": m})).collect::<Vec<_>>(),
        })
    }
}

type Check<'a> = Box<dyn Fn(&mut SampleRng) -> std::result::Result<(), String> + Sync + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A diagram automorphism to fold along when none is given.
pub fn default_sigma(ty: CartanType) -> Option<String> {
    let n = ty.rank();
    match (ty.family(), n) {
        (Family::A, n) if n % 2 == 1 && n >= 3 => {
            let pairs: Vec<String> =
                (1..=n).filter(|&i| i != n + 1 - i).map(|i| format!("{i}:{}", n + 1 - i)).collect();
            Some(pairs.join(","))
        }
        (Family::D, 4) => Some("1:3,3:4,4:1".into()),
        (Family::D, n) => Some(format!("{}:{},{}:{}", n - 1, n, n, n - 1)),
        (Family::E, 6) => Some("1:6,6:1,3:5,5:3".into()),
        _ => None,
    }
}

pub fn run(ctx: &Ctx, suite: &str, p: &Params) -> Result<Report> {
    let x = &ctx.ext;
    let rank = x.rank();
    let (depth, window) = (p.depth, p.window);
    let mut detail = String::new();
    let check: Check = match suite {
        "crystal-axioms" => Box::new(move |r| crystal_axioms(x, r, depth, window)),
        "inverse-pairs" => Box::new(move |r| {
            let b = random_ext(x, r, depth, window);
            let c = x.cartan();
            for i in 0..rank {
                let img = x.braid_r(i, &b, Sign::Plus);
                ensure(x.braid_r(i, &img, Sign::Minus) == b, || format!("R*_{0} R_{0} is not the identity", i + 1))?;
                ensure(x.braid_r(i, &x.braid_r(i, &b, Sign::Minus), Sign::Plus) == b, || {
                    format!("R_{0} R*_{0} is not the identity", i + 1)
                })?;
                ensure(x.braid_r(i, &x.shift(1, &b), Sign::Plus) == x.shift(1, &img), || {
                    format!("R_{} does not commute with D", i + 1)
                })?;
                ensure(x.weight(&img) == c.reflect(i, &x.weight(&b)), || format!("R_{} weight", i + 1))?;
            }
            Ok(())
        }),
        "braid-relations" => {
            detail = format!("{} index pairs", rank * (rank - 1) / 2);
            Box::new(move |r| {
                let b = random_ext(x, r, depth, window);
                for i in 0..rank {
                    for j in i + 1..rank {
                        let m = x.cartan().braid_exponent(i, j);
                        ensure(x.relation_holds(i, j, m, &b), || format!("relation ({},{}) m={m}", i + 1, j + 1))?;
                    }
                }
                Ok(())
            })
        }
        "longest-word" => Box::new(move |r| {
            let w = random_longest_word(x.cartan(), r, 4 * x.cartan().longest_length());
            let b = random_ext(x, r, depth, window);
            let z = x.zeta(&b);
            ensure(x.longest_r(&w, &b, Sign::Plus).ok() == Some(x.shift(1, &z)), || format!("R_{w} differs from D∘ζ"))?;
            ensure(x.longest_r(&w, &b, Sign::Minus).ok() == Some(x.shift(-1, &z)), || {
                format!("R*_{w} differs from D⁻¹∘ζ")
            })
        }),
        "oracle-agreement" => {
            let Some(br) = &ctx.bridge else { bail!("oracle-agreement needs type A, got {}", ctx.type_name()) };
            Box::new(move |r| oracle(br, r, depth))
        }
        "folding" => {
            let ty = x.cartan().cartan_type();
            let sigma = match &p.sigma {
                Some(s) => s.clone(),
                None => match default_sigma(ty) {
                    Some(s) => s,
                    None => bail!("type {ty} has no default folding; pass --sigma"),
                },
            };
            let fd = FoldingDatum::new(ty, FoldingDatum::parse_sigma(rank, &sigma)?)?;
            detail = format!("sigma {sigma}, folded type {}", fd.folded_type().unwrap_or("unknown"));
            let fc = FoldedCrystal::new(fd);
            Box::new(move |r| folding(&fc, r, depth, window))
        }
        "two-ld" => Box::new(move |r| {
            let binf = x.binf();
            let c = binf.cartan();
            let w = random_longest_word(c, r, 4 * c.longest_length());
            let b = random_binf(binf, r, depth);
            let lhs = binf.datum_definitional(&b, &w, Convention::Minus).map_err(|e| e.to_string())?;
            let dual = c.dual_word(&w).map_err(|e| e.to_string())?;
            let mut rhs = binf.datum(&b, &dual, Convention::Plus).map_err(|e| e.to_string())?.coords().to_vec();
            rhs.reverse();
            ensure(lhs.coords() == rhs.as_slice(), || format!("word {w}: {:?} vs {rhs:?}", lhs.coords()))
        }),
        other => bail!("unknown suite `{other}`; expected one of {}", SUITES.join(", ")),
    };
    let failures: Vec<(u64, String)> = (0..p.samples)
        .into_par_iter()
        .filter_map(|case| check(&mut case_rng(p.seed, case)).err().map(|m| (case, m)))
        .collect();
    Ok(Report { suite: suite.into(), ty: ctx.type_name(), seed: p.seed, samples: p.samples, detail, failures })
}

fn crystal_axioms(
    x: &ExtCrystal,
    r: &mut SampleRng,
    depth: usize,
    window: (i64, i64),
) -> std::result::Result<(), String> {
    let b = random_ext(x, r, depth, window);
    let c = x.cartan();
    let wt = x.weight(&b);
    for i in 0..x.rank() {
        for k in window.0..=window.1 {
            let f = x.f(i, k, &b);
            ensure(x.e(i, k, &f) == b, || format!("E({},{k}) F({},{k}) is not the identity", i + 1, i + 1))?;
            ensure(x.f(i, k, &x.e(i, k, &b)) == b, || {
                format!("F({},{k}) E({},{k}) is not the identity", i + 1, i + 1)
            })?;
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            ensure(x.weight(&f) == &wt - &c.simple_root(i).scaled(sign), || format!("weight of F({},{k})", i + 1))?;
            ensure(x.shift(1, &f) == x.f(i, k + 1, &x.shift(1, &b)), || {
                format!("F({},{k}) does not commute with D", i + 1)
            })?;
        }
    }
    ensure(x.weight(&x.shift(1, &b)) == -wt, || "D does not negate the weight".into())?;
    let path = x.to_highest(&b);
    ensure(path.len() as i64 == x.depth(&b), || {
        format!("path to 1 has {} steps for {} boxes", path.len(), x.depth(&b))
    })?;
    ensure(x.replay(&path) == b, || "replaying the path to 1 does not return the element".into())
}

fn oracle(br: &MultisegBridge, r: &mut SampleRng, depth: usize) -> std::result::Result<(), String> {
    let binf: &BInfinity = br.binf();
    let n = binf.rank();
    let len = r.gen_range(1..=depth.max(1));
    let mut m = Multisegment::empty(n);
    let mut b = binf.highest();
    for step in 0..len {
        let i = r.gen_range(0..n);
        m = m.f(i);
        b = binf.f(i, &b);
        ensure(br.to_binf(&m) == b, || format!("step {step}: {m} disagrees with the Lusztig datum"))?;
        ensure(m.weight() == binf.weight(&b), || format!("step {step}: weight of {m}"))?;
        for j in 0..n {
            let (p, q) = (m.local_data(j), binf.local_data(j, &b));
            ensure(p == q, || format!("step {step}: node {} data of {m}: {p:?} vs {q:?}", j + 1))?;
            ensure(br.to_binf(&m.f_star(j)) == binf.f_star(j, &b), || format!("step {step}: f*_{} of {m}", j + 1))?;
            ensure(m.e(j).map(|e| br.to_binf(&e)) == binf.e(j, &b), || format!("step {step}: e_{} of {m}", j + 1))?;
            ensure(m.e_star(j).map(|e| br.to_binf(&e)) == binf.e_star(j, &b), || {
                format!("step {step}: e*_{} of {m}", j + 1)
            })?;
        }
    }
    Ok(())
}

fn folding(fc: &FoldedCrystal, r: &mut SampleRng, depth: usize, window: (i64, i64)) -> std::result::Result<(), String> {
    let b = fc.random_fixed(r, depth, window);
    let any: ExtElt = random_ext(fc.ext(), r, depth, window);
    let sa = fc.sigma_ext(&any);
    let n = fc.datum().rank();
    ensure(fc.is_fixed(&b), || "sampled element is not σ-fixed".into())?;
    for a in 0..n {
        for c in a + 1..n {
            let m = fc.datum().braid_exponent(a, c);
            ensure(fc.relation_holds(a, c, &b), || format!("folded relation ({},{}) m={m}", a + 1, c + 1))?;
        }
        let k = r.gen_range(window.0..=window.1);
        for (name, out) in [
            ("F", fc.fold_f(a, k, &b)),
            ("E", fc.fold_e(a, k, &b)),
            ("R", fc.fold_r(a, &b, Sign::Plus)),
            ("R*", fc.fold_r(a, &b, Sign::Minus)),
        ] {
            ensure(fc.is_fixed(&out), || format!("folded {name} on orbit {} leaves the fixed set", a + 1))?;
        }
        ensure(fc.sigma_ext(&fc.fold_f(a, k, &any)) == fc.fold_f(a, k, &sa), || {
            format!("σ and folded F on orbit {}", a + 1)
        })?;
        ensure(fc.sigma_ext(&fc.fold_r(a, &any, Sign::Plus)) == fc.fold_r(a, &sa, Sign::Plus), || {
            format!("σ and folded R on orbit {}", a + 1)
        })?;
    }
    Ok(())
}
