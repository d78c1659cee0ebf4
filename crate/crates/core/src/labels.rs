//! Affine highest-weight labels for extended multisegments of type `A_2`.
//!
//! A label is a multiset of pairs `(i, a)` with `i ∈ {1, 2}` and `a - i` odd.
//! The component at position `k` contributes
//! `γ_k(a[2] + b[12] + c[1]) = a·𝒟^k(1,2) + b·𝒟^k(2,1) + c·𝒟^k(1,0)`, where the
//! shift `𝒟^k(i, a)` is `(i, a+3k)` for even `k` and `(3-i, a+3k)` for odd `k`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::braid::{BraidWord, Sign};
use crate::cartan::Family;
use crate::ext::{ExtCrystal, ExtElt};
use crate::multiseg::{MultisegBridge, Multisegment, Segment};
use crate::{Error, Result};

/// A multiset of affine pairs `(i, a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineLabel {
    pairs: BTreeMap<(Reverse<i64>, u8), u64>,
}

fn check_pair(i: u8, a: i64) -> Result<()> {
    if !(i == 1 || i == 2) || (a - i as i64).rem_euclid(2) != 1 {
        return Err(Error::Parity { node: i, shift: a });
    }
    Ok(())
}

/// `𝒟^k(i, a)`.
pub fn cdual(k: i64, (i, a): (u8, i64)) -> (u8, i64) {
    let i = if k.rem_euclid(2) == 0 { i } else { 3 - i };
    (i, a + 3 * k)
}

impl AffineLabel {
    pub fn empty() -> Self {
        AffineLabel::default()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn add(&mut self, (i, a): (u8, i64), mult: u64) -> Result<()> {
        check_pair(i, a)?;
        if mult > 0 {
            *self.pairs.entry((Reverse(a), i)).or_insert(0) += mult;
        }
        Ok(())
    }

    /// `(i, a, multiplicity)` with `a` descending.
    pub fn triples(&self) -> Vec<(u8, i64, u64)> {
        self.pairs.iter().map(|(&(Reverse(a), i), &m)| (i, a, m)).collect()
    }

    pub fn from_triples<I: IntoIterator<Item = (u8, i64, u64)>>(it: I) -> Result<Self> {
        let mut l = AffineLabel::empty();
        for (i, a, m) in it {
            l.add((i, a), m)?;
        }
        Ok(l)
    }

    pub fn len(&self) -> u64 {
        self.pairs.values().sum()
    }

    /// Applies `𝒟^k` to every pair.
    pub fn cdual(&self, k: i64) -> AffineLabel {
        let mut out = AffineLabel::empty();
        for (i, a, m) in self.triples() {
            out.add(cdual(k, (i, a)), m).expect("parity is preserved");
        }
        out
    }

    pub fn union(&self, other: &AffineLabel) -> AffineLabel {
        let mut out = self.clone();
        for (i, a, m) in other.triples() {
            out.add((i, a), m).expect("valid pair");
        }
        out
    }

    /// Parses `2(2,5)+3(1,4)+(2,3)`; `0` is the empty label.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = AffineLabel::empty();
        let t = text.trim();
        if t.is_empty() || t == "0" {
            return Ok(out);
        }
        let mut offset = 0;
        for term in text.split('+') {
            let pos = offset;
            offset += term.len() + 1;
            let err = |m: &str| Error::Parse { position: pos, message: format!("{m} in `{}`", term.trim()) };
            let term: alloc::string::String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let open = term.find('(').ok_or_else(|| err("expected `(`"))?;
            let mult = match &term[..open] {
                "" => 1,
                m => m.parse().map_err(|_| err("bad multiplicity"))?,
            };
            let inner = term[open + 1..].strip_suffix(')').ok_or_else(|| err("expected `)`"))?;
            let (i, a) = inner.split_once(',').ok_or_else(|| err("expected `i,a`"))?;
            let i: u8 = i.parse().map_err(|_| err("bad node"))?;
            let a: i64 = a.parse().map_err(|_| err("bad shift"))?;
            out.add((i, a), mult)?;
        }
        Ok(out)
    }
}

impl fmt::Display for AffineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, a, m)) in self.triples().into_iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            if m != 1 {
                write!(f, "{m}")?;
            }
            write!(f, "({i},{a})")?;
        }
        Ok(())
    }
}

/// `γ_k` of a single `A_2` multisegment.
pub fn gamma_k(k: i64, m: &Multisegment) -> Result<AffineLabel> {
    if m.rank() != 2 {
        return Err(Error::NotTypeA2);
    }
    let mut out = AffineLabel::empty();
    for (seg, base) in [(Segment::new(1, 1), (1, 2)), (Segment::new(0, 1), (2, 1)), (Segment::new(0, 0), (1, 0))] {
        out.add(cdual(k, base), m.multiplicity(seg))?;
    }
    Ok(out)
}

/// `γ(m̂) = Σ_k γ_k(m_k)`.
pub fn gamma(bridge: &MultisegBridge, b: &ExtElt) -> Result<AffineLabel> {
    if bridge.rank() != 2 {
        return Err(Error::NotTypeA2);
    }
    let mut out = AffineLabel::empty();
    for (k, c) in b.iter() {
        out = out.union(&gamma_k(k, &bridge.from_binf(c))?);
    }
    Ok(out)
}

/// Elements `R_{i_1} ⋯ R_{i_{k-1}}(F̃_{i_k,0}(𝟙))` for `k = 1..=count` along
/// the alternating word `(1, 2, 1, 2, …)`.
pub fn fundamental_elements(ext: &ExtCrystal, count: usize) -> Result<Vec<ExtElt>> {
    let c = ext.cartan();
    if c.cartan_type().family() != Family::A || c.rank() != 2 {
        return Err(Error::NotTypeA2);
    }
    Ok((1..=count)
        .map(|k| {
            let start = ext.f((k - 1) % 2, 0, &ExtElt::highest());
            let prefix = BraidWord::alternating(0, 1, k - 1);
            debug_assert!(prefix.0.iter().all(|l| l.sign == Sign::Plus));
            ext.braid_apply(&prefix, &start)
        })
        .collect())
}

/// γ-labels of [`fundamental_elements`].
pub fn fundamental_orbit(bridge: &MultisegBridge, count: usize) -> Result<Vec<AffineLabel>> {
    let ext = ExtCrystal::new(bridge.binf().clone());
    fundamental_elements(&ext, count)?.iter().map(|b| gamma(bridge, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ms(s: &str) -> Multisegment {
        Multisegment::parse(2, s).unwrap()
    }

    #[test]
    fn cdual_examples() {
        assert_eq!(cdual(0, (1, 2)), (1, 2));
        assert_eq!(cdual(1, (1, 2)), (2, 5));
        assert_eq!(cdual(2, (1, 0)), (1, 6));
        for k in -4..=4 {
            for p in [(1, 0), (2, 1), (1, -4), (2, 7)] {
                assert_eq!(cdual(-k, cdual(k, p)), p);
                assert!(check_pair(cdual(k, p).0, cdual(k, p).1).is_ok());
            }
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_k(1, &ms("2[2]+3[12]+4[1]")).unwrap().to_string(), "2(2,5)+3(1,4)+4(2,3)");
        assert_eq!(gamma_k(0, &ms("[2]+[12]+2[1]")).unwrap().to_string(), "(1,2)+(2,1)+2(1,0)");
        assert_eq!(gamma_k(-1, &ms("3[2]+2[12]+[1]")).unwrap().to_string(), "3(2,-1)+2(1,-2)+(2,-3)");
        assert_eq!(gamma_k(2, &ms("5[1]")).unwrap().to_string(), "5(1,6)");
        assert!(gamma_k(3, &Multisegment::empty(2)).unwrap().is_empty());
        assert_eq!(gamma_k(0, &Multisegment::empty(3)), Err(Error::NotTypeA2));
    }

    #[test]
    fn label_text() {
        let l = AffineLabel::parse("4(2,3) + 2(2,5)+3(1,4)").unwrap();
        assert_eq!(l.to_string(), "2(2,5)+3(1,4)+4(2,3)");
        assert_eq!(AffineLabel::parse("0").unwrap(), AffineLabel::empty());
        assert_eq!(AffineLabel::parse("(1,1)"), Err(Error::Parity { node: 1, shift: 1 }));
        assert_eq!(AffineLabel::parse("(3,0)"), Err(Error::Parity { node: 3, shift: 0 }));
        assert!(matches!(AffineLabel::parse("(1,0"), Err(Error::Parse { .. })));
    }
}
