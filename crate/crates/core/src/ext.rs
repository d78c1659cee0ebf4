//! The extended crystal `B̂(∞)`: finitely supported sequences `(b_k)_{k∈ℤ}`
//! of `B(∞)` elements.
//!
//! `F̃_{i,k}` applies `f̃_i` at position `k` when `ε̂_{i,k} ≥ 0` and `ẽ*_i` at
//! `k+1` otherwise; `Ẽ_{i,k}` applies `ẽ_i` at `k` when `ε̂_{i,k} > 0` and
//! `f̃*_i` at `k+1` otherwise, where `ε̂_{i,k}(b̂) = ε_i(b_k) - ε*_i(b_{k+1})`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::binf::{BInfinity, BinfElt, Relabeling};
use crate::cartan::{CartanDatum, Weight};

/// An element of `B̂(∞)`. Only components different from `1` are stored, so
/// equality is map equality and the highest element `𝟙` is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElt {
    comps: BTreeMap<i64, BinfElt>,
}

impl ExtElt {
    pub fn highest() -> Self {
        ExtElt::default()
    }

    pub fn is_highest(&self) -> bool {
        self.comps.is_empty()
    }

    /// The stored component at `k`, `None` when it is `1`.
    pub fn get(&self, k: i64) -> Option<&BinfElt> {
        self.comps.get(&k)
    }

    /// Sets the component at `k`, dropping it when it is `1`.
    pub fn set(&mut self, k: i64, b: BinfElt) {
        if b.is_highest() {
            self.comps.remove(&k);
        } else {
            self.comps.insert(k, b);
        }
    }

    pub fn from_components<I: IntoIterator<Item = (i64, BinfElt)>>(it: I) -> Self {
        let mut e = ExtElt::highest();
        for (k, b) in it {
            e.set(k, b);
        }
        e
    }

    /// Non-highest components in increasing position.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BinfElt)> + '_ {
        self.comps.iter().map(|(&k, b)| (k, b))
    }

    /// Smallest and largest occupied positions.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.comps.keys().next()?;
        let hi = *self.comps.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn map<F: FnMut(&BinfElt) -> BinfElt>(&self, mut f: F) -> ExtElt {
        ExtElt::from_components(self.iter().map(|(k, b)| (k, f(b))))
    }
}

/// Operators on `B̂(∞)` over a fixed `B(∞)`.
#[derive(Clone, Debug)]
pub struct ExtCrystal {
    binf: BInfinity,
}

impl ExtCrystal {
    pub fn new(binf: BInfinity) -> Self {
        ExtCrystal { binf }
    }

    pub fn binf(&self) -> &BInfinity {
        &self.binf
    }

    pub fn cartan(&self) -> &CartanDatum {
        self.binf.cartan()
    }

    pub fn rank(&self) -> usize {
        self.binf.rank()
    }

    /// `b_k`, including `1` for unoccupied positions.
    pub fn component(&self, b: &ExtElt, k: i64) -> BinfElt {
        b.get(k).cloned().unwrap_or_else(|| self.binf.highest())
    }

    /// `ŵt(b̂) = Σ_k (-1)^k wt(b_k)`.
    pub fn weight(&self, b: &ExtElt) -> Weight {
        let mut w = Weight::zero(self.rank());
        for (k, c) in b.iter() {
            let wk = self.binf.weight(c);
            if k.rem_euclid(2) == 0 {
                w += &wk;
            } else {
                w -= &wk;
            }
        }
        w
    }

    /// Total number of boxes over all components.
    pub fn depth(&self, b: &ExtElt) -> i64 {
        b.iter().map(|(_, c)| c.depth(&self.binf)).sum()
    }

    fn eps_at(&self, i: usize, b: &ExtElt, k: i64) -> i64 {
        b.get(k).map_or(0, |c| self.binf.eps(i, c))
    }

    fn eps_star_at(&self, i: usize, b: &ExtElt, k: i64) -> i64 {
        b.get(k).map_or(0, |c| self.binf.eps_star(i, c))
    }

    /// `ε̂_{i,k}(b̂) = ε_i(b_k) - ε*_i(b_{k+1})`.
    pub fn eps_hat(&self, i: usize, k: i64, b: &ExtElt) -> i64 {
        self.eps_at(i, b, k) - self.eps_star_at(i, b, k + 1)
    }

    /// `F̃_{i,k}`.
    pub fn f(&self, i: usize, k: i64, b: &ExtElt) -> ExtElt {
        let mut out = b.clone();
        if self.eps_hat(i, k, b) >= 0 {
            out.set(k, self.binf.f(i, &self.component(b, k)));
        } else {
            let c = self.binf.e_star(i, &self.component(b, k + 1));
            out.set(k + 1, c.expect("ε*_i(b_{k+1}) > ε_i(b_k) ≥ 0"));
        }
        out
    }

    /// `Ẽ_{i,k}`.
    pub fn e(&self, i: usize, k: i64, b: &ExtElt) -> ExtElt {
        let mut out = b.clone();
        if self.eps_hat(i, k, b) > 0 {
            let c = self.binf.e(i, &self.component(b, k));
            out.set(k, c.expect("ε_i(b_k) > ε*_i(b_{k+1}) ≥ 0"));
        } else {
            out.set(k + 1, self.binf.f_star(i, &self.component(b, k + 1)));
        }
        out
    }

    /// `D^p`: `b'_k = b_{k-p}`.
    pub fn shift(&self, p: i64, b: &ExtElt) -> ExtElt {
        ExtElt::from_components(b.iter().map(|(k, c)| (k + p, c.clone())))
    }

    /// Componentwise `ζ`.
    pub fn zeta(&self, b: &ExtElt) -> ExtElt {
        b.map(|c| self.binf.zeta(c))
    }

    /// Componentwise action of a diagram automorphism.
    pub fn relabel(&self, r: &Relabeling, b: &ExtElt) -> ExtElt {
        b.map(|c| self.binf.relabel(r, c))
    }

    /// A sequence of `(i,k)` such that applying `Ẽ_{i,k}` along it reaches
    /// `𝟙`. Each step lowers the last occupied component by one box.
    pub fn to_highest(&self, b: &ExtElt) -> Vec<(usize, i64)> {
        let mut cur = b.clone();
        let mut path = Vec::new();
        while let Some((_, k)) = cur.support() {
            let top = self.component(&cur, k);
            let i =
                (0..self.rank()).find(|&i| self.binf.eps(i, &top) > 0).expect("a non-highest element has some ε_i > 0");
            cur = self.e(i, k, &cur);
            path.push((i, k));
        }
        path
    }

    /// Applies `F̃_{i,k}` along `path` in reverse, undoing
    /// [`to_highest`](Self::to_highest).
    pub fn replay(&self, path: &[(usize, i64)]) -> ExtElt {
        let mut cur = ExtElt::highest();
        for &(i, k) in path.iter().rev() {
            cur = self.f(i, k, &cur);
        }
        cur
    }

    /// Applies `F̃_{i,k}` left to right starting from `𝟙`.
    pub fn from_f_word(&self, word: &[(usize, i64)]) -> ExtElt {
        word.iter().fold(ExtElt::highest(), |b, &(i, k)| self.f(i, k, &b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(s: &str) -> ExtCrystal {
        ExtCrystal::new(BInfinity::new(CartanDatum::parse(s).unwrap()))
    }

    #[test]
    fn highest_element() {
        let x = ext("A2");
        let one = ExtElt::highest();
        assert!(x.weight(&one).is_zero());
        assert_eq!(x.eps_hat(0, 0, &one), 0);
        assert!(x.to_highest(&one).is_empty());
        assert_eq!(x.zeta(&one), one);
        assert_eq!(x.shift(0, &one), one);
    }

    #[test]
    fn single_box() {
        let x = ext("A2");
        let one = ExtElt::highest();
        let b = x.f(1, 0, &one);
        assert_eq!(x.weight(&b), Weight::from(alloc::vec![0, -1]));
        assert_eq!(x.weight(&x.shift(1, &b)), Weight::from(alloc::vec![0, 1]));
        assert_eq!(x.eps_hat(1, 0, &b), 1);
        assert_eq!(x.e(1, 0, &b), one);
        assert_eq!(x.shift(1, &b), x.f(1, 1, &one));
        assert_eq!(x.to_highest(&b), alloc::vec![(1, 0)]);
        assert_eq!(x.zeta(&b), x.f(0, 0, &one));

        let e = x.e(0, 3, &one);
        assert_eq!(e.get(4), Some(&x.binf().f(0, &x.binf().highest())));
        assert_eq!(e.support(), Some((4, 4)));
    }
}
