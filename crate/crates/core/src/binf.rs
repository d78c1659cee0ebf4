//! `B(∞)` realized by Lusztig data.
//!
//! Elements are stored as coordinate vectors relative to a fixed reference
//! reduced word of `w_0` (the output of [`CartanDatum::longest_word`]) in the
//! `+1` convention. Every other word is reached through a cached path of braid
//! moves, along which coordinates follow the rank-2 transition maps.
//!
//! In an `i`-initial `+1` datum, `ε_i` is the first coordinate and `f̃_i`,
//! `ẽ_i` change it by one, leaving the rest alone. In a `+1` datum whose word
//! ends with `i*`, `ε*_i` is the last coordinate and the star operators act
//! there. Saito reflections rotate coordinates along with the word.

use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{CartanDatum, Move, ReducedWord, Weight};
use crate::{Error, Result};

/// Sign convention of a Lusztig datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    Plus,
    Minus,
}

impl Convention {
    pub fn from_sign(s: i64) -> Option<Self> {
        match s {
            1 => Some(Convention::Plus),
            -1 => Some(Convention::Minus),
            _ => None,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Convention::Plus => 1,
            Convention::Minus => -1,
        }
    }
}

/// A Lusztig datum. `coords[t]` always pairs with `word.letters()[t]`, in
/// both conventions. A `-1` datum for `𝐢` is the reversal of the `+1` datum
/// for `𝐢^∨ = (i_ℓ*, …, i_1*)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LusztigDatum {
    word: ReducedWord,
    convention: Convention,
    coords: Vec<u64>,
}

impl LusztigDatum {
    pub fn new(word: ReducedWord, convention: Convention, coords: Vec<u64>) -> Result<Self> {
        if !word.is_longest() {
            return Err(Error::NotLongest);
        }
        if coords.len() != word.len() {
            return Err(Error::LengthMismatch { expected: word.len(), found: coords.len() });
        }
        Ok(LusztigDatum { word, convention, coords })
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// An element of `B(∞)`: its `+1` Lusztig datum on the reference word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinfElt(Vec<u64>);

impl BinfElt {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    /// Whether this is the highest weight element `1`.
    pub fn is_highest(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Total number of boxes, i.e. the height of `-wt`.
    pub fn depth(&self, binf: &BInfinity) -> i64 {
        -binf.weight(self).height()
    }
}

/// `(ε_i, φ_i, ε*_i, φ*_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalData {
    pub eps: i64,
    pub phi: i64,
    pub eps_star: i64,
    pub phi_star: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KashiwaraOp {
    E,
    F,
    EMax,
    EStar,
    FStar,
    EStarMax,
}

/// The rank-2 transition map, in place, for the word move `mv`.
///
/// `m = 2` swaps; `m = 3` sends `(a,b,c)` to `(b+c-p, p, a+b-p)` with
/// `p = min(a,c)`. Both are involutions, so a path is undone by replaying
/// it backwards.
pub fn transition_rank2(coords: &mut [u64], mv: Move) {
    let p = mv.position;
    match mv.m {
        2 => coords.swap(p, p + 1),
        3 => {
            let (a, b, c) = (coords[p], coords[p + 1], coords[p + 2]);
            let q = a.min(c);
            coords[p] = b + c - q;
            coords[p + 1] = q;
            coords[p + 2] = a + b - q;
        }
        m => panic!("no native transition map for m = {m}"),
    }
}

fn forward(coords: &mut [u64], path: &[Move]) {
    for &mv in path {
        transition_rank2(coords, mv);
    }
}

fn backward(coords: &mut [u64], path: &[Move]) {
    for &mv in path.iter().rev() {
        transition_rank2(coords, mv);
    }
}

/// A word adapted to one index, with paths from the reference word and
/// from its rotation back to the reference word.
#[derive(Clone, Debug)]
struct Chart {
    word: ReducedWord,
    to_word: Vec<Move>,
    rotated_to_ref: Vec<Move>,
}

/// A diagram automorphism together with the path from the relabeled
/// reference word back to the reference word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    perm: Vec<usize>,
    path: Vec<Move>,
}

impl Relabeling {
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
}

/// `B(∞)` for a fixed Cartan datum, with all word-change paths precomputed.
#[derive(Clone, Debug)]
pub struct BInfinity {
    cartan: CartanDatum,
    reference: ReducedWord,
    roots: Vec<Weight>,
    head: Vec<Chart>,
    tail: Vec<Chart>,
    zeta: Relabeling,
}

impl BInfinity {
    pub fn new(cartan: CartanDatum) -> Self {
        let reference = cartan.longest_word();
        let roots = cartan.roots_along(reference.letters()).expect("reference word is reduced");
        let mut head = Vec::with_capacity(cartan.rank());
        let mut tail = Vec::with_capacity(cartan.rank());
        for i in 0..cartan.rank() {
            let (word, to_word) = cartan.bring_to_front(&reference, i).expect("w_0 has every descent");
            let rotated = cartan.rotate_word(&word).expect("longest");
            let rotated_to_ref = cartan.braid_move_path(&rotated, &reference).expect("same element");
            head.push(Chart { word, to_word, rotated_to_ref });

            let (word, to_word) = cartan.bring_to_back(&reference, cartan.star(i)).expect("w_0 has every descent");
            let rotated = cartan.rotate_word_back(&word).expect("longest");
            let rotated_to_ref = cartan.braid_move_path(&rotated, &reference).expect("same element");
            tail.push(Chart { word, to_word, rotated_to_ref });
        }
        let mut binf =
            BInfinity { zeta: Relabeling { perm: Vec::new(), path: Vec::new() }, cartan, reference, roots, head, tail };
        binf.zeta = binf.relabeling(binf.cartan.star_map().to_vec()).expect("star is an automorphism");
        binf
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// `ℓ(w_0)`, the length of every datum.
    pub fn len(&self) -> usize {
        self.reference.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reference.is_empty()
    }

    pub fn reference(&self) -> &ReducedWord {
        &self.reference
    }

    /// The reference word used for `ε_i`, `f̃_i` and `ẽ_i`; it starts with `i`.
    pub fn head_word(&self, i: usize) -> &ReducedWord {
        &self.head[i].word
    }

    /// The reference word used for the star operators at `i`; it ends with `i*`.
    pub fn tail_word(&self, i: usize) -> &ReducedWord {
        &self.tail[i].word
    }

    pub fn highest(&self) -> BinfElt {
        BinfElt(vec![0; self.len()])
    }

    /// The element with the given `+1` datum on the reference word.
    pub fn element(&self, coords: Vec<u64>) -> Result<BinfElt> {
        if coords.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: coords.len() });
        }
        Ok(BinfElt(coords))
    }

    /// `wt(b) = -Σ_t c_t β_t` over the reference word.
    pub fn weight(&self, b: &BinfElt) -> Weight {
        let mut w = Weight::zero(self.rank());
        for (c, beta) in b.0.iter().zip(&self.roots) {
            if *c != 0 {
                w -= &beta.scaled(*c as i64);
            }
        }
        w
    }

    pub(crate) fn head_coords(&self, i: usize, b: &BinfElt) -> Vec<u64> {
        let mut c = b.0.clone();
        forward(&mut c, &self.head[i].to_word);
        c
    }

    pub(crate) fn elt_from_head(&self, i: usize, mut c: Vec<u64>) -> BinfElt {
        backward(&mut c, &self.head[i].to_word);
        BinfElt(c)
    }

    /// Coordinates on the rotated head word `(i_2, …, i_ℓ, i*)`, brought back.
    pub(crate) fn elt_from_rotated_head(&self, i: usize, mut c: Vec<u64>) -> BinfElt {
        forward(&mut c, &self.head[i].rotated_to_ref);
        BinfElt(c)
    }

    pub(crate) fn tail_coords(&self, i: usize, b: &BinfElt) -> Vec<u64> {
        let mut c = b.0.clone();
        forward(&mut c, &self.tail[i].to_word);
        c
    }

    pub(crate) fn elt_from_tail(&self, i: usize, mut c: Vec<u64>) -> BinfElt {
        backward(&mut c, &self.tail[i].to_word);
        BinfElt(c)
    }

    /// Coordinates on the rotated tail word `(i, j_1, …, j_{ℓ-1})`, brought back.
    pub(crate) fn elt_from_rotated_tail(&self, i: usize, mut c: Vec<u64>) -> BinfElt {
        forward(&mut c, &self.tail[i].rotated_to_ref);
        BinfElt(c)
    }

    pub fn eps(&self, i: usize, b: &BinfElt) -> i64 {
        self.head_coords(i, b)[0] as i64
    }

    pub fn eps_star(&self, i: usize, b: &BinfElt) -> i64 {
        *self.tail_coords(i, b).last().expect("nonempty word") as i64
    }

    pub fn phi(&self, i: usize, b: &BinfElt) -> i64 {
        self.eps(i, b) + self.cartan.pairing(i, &self.weight(b))
    }

    pub fn phi_star(&self, i: usize, b: &BinfElt) -> i64 {
        self.eps_star(i, b) + self.cartan.pairing(i, &self.weight(b))
    }

    pub fn local_data(&self, i: usize, b: &BinfElt) -> LocalData {
        let pairing = self.cartan.pairing(i, &self.weight(b));
        let eps = self.eps(i, b);
        let eps_star = self.eps_star(i, b);
        LocalData { eps, phi: eps + pairing, eps_star, phi_star: eps_star + pairing }
    }

    /// Adds `delta` to `ε_i` (or `ε*_i`); `None` if it would go negative.
    fn shift_eps(&self, i: usize, b: &BinfElt, delta: i64, star: bool) -> Option<BinfElt> {
        if star {
            let mut c = self.tail_coords(i, b);
            let last = c.len() - 1;
            c[last] = (c[last] as i64).checked_add(delta).filter(|&v| v >= 0)? as u64;
            Some(self.elt_from_tail(i, c))
        } else {
            let mut c = self.head_coords(i, b);
            c[0] = (c[0] as i64).checked_add(delta).filter(|&v| v >= 0)? as u64;
            Some(self.elt_from_head(i, c))
        }
    }

    pub fn kashiwara(&self, i: usize, b: &BinfElt, op: KashiwaraOp) -> Option<BinfElt> {
        match op {
            KashiwaraOp::F => self.shift_eps(i, b, 1, false),
            KashiwaraOp::E => self.shift_eps(i, b, -1, false),
            KashiwaraOp::FStar => self.shift_eps(i, b, 1, true),
            KashiwaraOp::EStar => self.shift_eps(i, b, -1, true),
            KashiwaraOp::EMax => {
                let mut c = self.head_coords(i, b);
                c[0] = 0;
                Some(self.elt_from_head(i, c))
            }
            KashiwaraOp::EStarMax => {
                let mut c = self.tail_coords(i, b);
                let last = c.len() - 1;
                c[last] = 0;
                Some(self.elt_from_tail(i, c))
            }
        }
    }

    pub fn f(&self, i: usize, b: &BinfElt) -> BinfElt {
        self.f_pow(i, b, 1)
    }

    pub fn e(&self, i: usize, b: &BinfElt) -> Option<BinfElt> {
        self.kashiwara(i, b, KashiwaraOp::E)
    }

    pub fn f_star(&self, i: usize, b: &BinfElt) -> BinfElt {
        self.f_star_pow(i, b, 1)
    }

    pub fn e_star(&self, i: usize, b: &BinfElt) -> Option<BinfElt> {
        self.kashiwara(i, b, KashiwaraOp::EStar)
    }

    pub fn e_max(&self, i: usize, b: &BinfElt) -> BinfElt {
        self.kashiwara(i, b, KashiwaraOp::EMax).expect("total")
    }

    pub fn e_star_max(&self, i: usize, b: &BinfElt) -> BinfElt {
        self.kashiwara(i, b, KashiwaraOp::EStarMax).expect("total")
    }

    /// `f̃_i^n(b)`.
    pub fn f_pow(&self, i: usize, b: &BinfElt, n: u64) -> BinfElt {
        let mut c = self.head_coords(i, b);
        c[0] += n;
        self.elt_from_head(i, c)
    }

    /// `f̃*_i^n(b)`.
    pub fn f_star_pow(&self, i: usize, b: &BinfElt, n: u64) -> BinfElt {
        let mut c = self.tail_coords(i, b);
        let last = c.len() - 1;
        c[last] += n;
        self.elt_from_tail(i, c)
    }

    /// `ẽ*_i^n(b)`, `None` if `n > ε*_i(b)`.
    pub fn e_star_pow(&self, i: usize, b: &BinfElt, n: u64) -> Option<BinfElt> {
        let mut c = self.tail_coords(i, b);
        let last = c.len() - 1;
        c[last] = c[last].checked_sub(n)?;
        Some(self.elt_from_tail(i, c))
    }

    /// Saito reflection `T̃_i` (or `T̃*_i` when `star`), via rotation of the
    /// adapted datum.
    pub fn saito(&self, i: usize, b: &BinfElt, star: bool) -> BinfElt {
        if star {
            let c = self.tail_coords(i, b);
            let mut rot = Vec::with_capacity(c.len());
            rot.push(0);
            rot.extend_from_slice(&c[..c.len() - 1]);
            self.elt_from_rotated_tail(i, rot)
        } else {
            let c = self.head_coords(i, b);
            let mut rot = c[1..].to_vec();
            rot.push(0);
            self.elt_from_rotated_head(i, rot)
        }
    }

    /// `T̃_i` from the operator definition: with `b' = ẽ_i^max(b)`,
    /// `T_i(b') = f̃_i^{φ*_i(b')} ẽ*_i^{ε*_i(b')}(b')`.
    pub fn saito_definitional(&self, i: usize, b: &BinfElt) -> BinfElt {
        let b1 = self.e_max(i, b);
        let d = self.local_data(i, &b1);
        let b2 = self.e_star_max(i, &b1);
        self.f_pow(i, &b2, d.phi_star as u64)
    }

    /// Checks that `perm` is a diagram automorphism and caches the path
    /// needed to relabel elements by it.
    pub fn relabeling(&self, perm: Vec<usize>) -> Result<Relabeling> {
        let n = self.rank();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: perm.len() });
        }
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidAutomorphism("not a permutation".into()));
            }
            seen[p] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if self.cartan.entry(perm[i], perm[j]) != self.cartan.entry(i, j) {
                    return Err(Error::InvalidAutomorphism("does not preserve the Cartan matrix".into()));
                }
            }
        }
        let word = self.cartan.relabel_word(&self.reference, &perm)?;
        let path = self.cartan.braid_move_path(&word, &self.reference)?;
        Ok(Relabeling { perm, path })
    }

    /// The crystal automorphism induced by a diagram automorphism: keep the
    /// coordinates, relabel the word, and convert back.
    pub fn relabel(&self, r: &Relabeling, b: &BinfElt) -> BinfElt {
        let mut c = b.0.clone();
        forward(&mut c, &r.path);
        BinfElt(c)
    }

    /// `ζ`, induced by `i ↦ i*`.
    pub fn zeta(&self, b: &BinfElt) -> BinfElt {
        self.relabel(&self.zeta, b)
    }

    pub fn zeta_relabeling(&self) -> &Relabeling {
        &self.zeta
    }

    /// `+1` coordinates of `b` on any reduced word of `w_0`.
    fn plus_coords(&self, b: &BinfElt, word: &ReducedWord) -> Result<Vec<u64>> {
        let path = self.cartan.braid_move_path(&self.reference, word)?;
        let mut c = b.0.clone();
        forward(&mut c, &path);
        Ok(c)
    }

    /// The Lusztig datum of `b` for `word` in the given convention.
    pub fn datum(&self, b: &BinfElt, word: &ReducedWord, convention: Convention) -> Result<LusztigDatum> {
        if !word.is_longest() {
            return Err(Error::NotLongest);
        }
        let coords = match convention {
            Convention::Plus => self.plus_coords(b, word)?,
            Convention::Minus => {
                let dual = self.cartan.dual_word(word)?;
                let mut c = self.plus_coords(b, &dual)?;
                c.reverse();
                c
            }
        };
        Ok(LusztigDatum { word: word.clone(), convention, coords })
    }

    /// The element with the given Lusztig datum.
    pub fn from_datum(&self, d: &LusztigDatum) -> Result<BinfElt> {
        let (word, mut c) = match d.convention {
            Convention::Plus => (d.word.clone(), d.coords.clone()),
            Convention::Minus => {
                let mut c = d.coords.clone();
                c.reverse();
                (self.cartan.dual_word(&d.word)?, c)
            }
        };
        let path = self.cartan.braid_move_path(&word, &self.reference)?;
        forward(&mut c, &path);
        Ok(BinfElt(c))
    }

    /// Rewrites a datum on another reduced word of `w_0`.
    pub fn change_word(&self, d: &LusztigDatum, target: &ReducedWord) -> Result<LusztigDatum> {
        if !target.is_longest() {
            return Err(Error::NotLongest);
        }
        if d.convention == Convention::Plus {
            let path = self.cartan.braid_move_path(&d.word, target)?;
            let mut coords = d.coords.clone();
            forward(&mut coords, &path);
            return Ok(LusztigDatum { word: target.clone(), convention: Convention::Plus, coords });
        }
        let b = self.from_datum(d)?;
        self.datum(&b, target, d.convention)
    }

    /// The datum read off from the operators alone: `+1` gives
    /// `(ε_{i_1}(b), ε_{i_2}(T̃_{i_1} b), …)` and `-1` gives
    /// `(ε*_{i_1}(b), ε*_{i_2}(T̃*_{i_1} b), …)`.
    pub fn datum_definitional(&self, b: &BinfElt, word: &ReducedWord, convention: Convention) -> Result<LusztigDatum> {
        if !word.is_longest() {
            return Err(Error::NotLongest);
        }
        let star = convention == Convention::Minus;
        let mut cur = b.clone();
        let mut coords = Vec::with_capacity(word.len());
        for &i in word.letters() {
            let e = if star { self.eps_star(i, &cur) } else { self.eps(i, &cur) };
            coords.push(e as u64);
            cur = self.saito(i, &cur, star);
        }
        Ok(LusztigDatum { word: word.clone(), convention, coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binf(s: &str) -> BInfinity {
        BInfinity::new(CartanDatum::parse(s).unwrap())
    }

    #[test]
    fn transition_examples() {
        let mut c = [1, 0, 0];
        transition_rank2(&mut c, Move { position: 0, m: 3 });
        assert_eq!(c, [0, 0, 1]);
        let mut c = [2, 1, 0];
        transition_rank2(&mut c, Move { position: 0, m: 3 });
        assert_eq!(c, [1, 0, 3]);
        transition_rank2(&mut c, Move { position: 0, m: 3 });
        assert_eq!(c, [2, 1, 0]);
        let mut c = [5, 7];
        transition_rank2(&mut c, Move { position: 0, m: 2 });
        assert_eq!(c, [7, 5]);
    }

    #[test]
    fn transition_is_involution() {
        for a in 0..=6 {
            for b in 0..=6 {
                for c in 0..=6 {
                    let mut x = [a, b, c];
                    transition_rank2(&mut x, Move { position: 0, m: 3 });
                    transition_rank2(&mut x, Move { position: 0, m: 3 });
                    assert_eq!(x, [a, b, c]);
                }
            }
        }
    }

    #[test]
    fn a2_basics() {
        let b = binf("A2");
        let one = b.highest();
        assert_eq!(b.weight(&one), Weight::zero(2));
        let f1 = b.f(0, &one);
        assert_eq!(f1.coords(), &[1, 0, 0]);
        assert_eq!(b.weight(&f1), Weight::from(vec![-1, 0]));
        assert_eq!(b.local_data(0, &one), LocalData { eps: 0, phi: 0, eps_star: 0, phi_star: 0 });
        assert_eq!(b.e(0, &one), None);
        assert_eq!(b.e(0, &f1), Some(one.clone()));
        assert_eq!(b.zeta(&f1), b.f(1, &one));
        assert_eq!(b.zeta(&one), one);
        assert_eq!(b.saito(0, &one, false), one);
        assert_eq!(b.saito(0, &one, true), one);
    }

    #[test]
    fn change_word_example() {
        let b = binf("A2");
        let c = b.cartan();
        let w121 = c.reduced_word(vec![0, 1, 0]).unwrap();
        let w212 = c.reduced_word(vec![1, 0, 1]).unwrap();
        let d = LusztigDatum::new(w121.clone(), Convention::Plus, vec![1, 0, 0]).unwrap();
        let e = b.change_word(&d, &w212).unwrap();
        assert_eq!(e.coords(), &[0, 0, 1]);
        assert_eq!(b.change_word(&e, &w121).unwrap(), d);
        let z = LusztigDatum::new(w121, Convention::Plus, vec![0, 0, 0]).unwrap();
        assert_eq!(b.change_word(&z, &w212).unwrap().coords(), &[0, 0, 0]);
    }

    #[test]
    fn datum_example() {
        let b = binf("A2");
        let w = b.cartan().reduced_word(vec![0, 1, 0]).unwrap();
        let x = b.f(0, &b.highest());
        assert_eq!(b.datum(&x, &w, Convention::Plus).unwrap().coords(), &[1, 0, 0]);
        assert_eq!(b.datum_definitional(&x, &w, Convention::Plus).unwrap().coords(), &[1, 0, 0]);
        let one = b.highest();
        assert_eq!(b.datum(&one, &w, Convention::Minus).unwrap().coords(), &[0, 0, 0]);
    }

    #[test]
    fn adapted_words() {
        for s in ["A3", "D4", "E6"] {
            let b = binf(s);
            for i in 0..b.rank() {
                assert_eq!(b.head_word(i).letters()[0], i);
                assert_eq!(*b.tail_word(i).letters().last().unwrap(), b.cartan().star(i));
            }
        }
    }

    #[test]
    fn relabeling_rejects_non_automorphisms() {
        let b = binf("A3");
        assert!(b.relabeling(vec![1, 0, 2]).is_err());
        assert!(b.relabeling(vec![0, 0, 2]).is_err());
        assert!(b.relabeling(vec![2, 1, 0]).is_ok());
    }
}
