//! Type `A_n` multisegments: a second, independent realization of `B(∞)`.
//!
//! A segment `[a,b]` with `a ≤ b` carries the root `α_a + ⋯ + α_b`. Node
//! indices are 0-based in the API and 1-based in text, so the segment stored
//! as `Segment { a: 0, b: 1 }` prints as `[1,2]`.
//!
//! The crystal operators follow a signature rule. For `ε_i`, `ẽ_i`, `f̃_i` the
//! segments starting at `i` are `-` and those starting at `i+1` are `+`,
//! read by right end descending with `-` first on ties. Adjacent `+-` pairs
//! cancel. `ẽ_i` shortens the segment of the rightmost surviving `-` on the
//! left; `f̃_i` extends the leftmost surviving `+` to the left, or creates
//! `[i]`. The star operators mirror this at the right ends: segments ending
//! at `i` are `-` and those ending at `i-1` are `+`, read by left end
//! ascending.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::binf::{BInfinity, BinfElt, LocalData};
use crate::cartan::{Family, Move, Weight};
use crate::{Error, Result};

/// The segment `[a,b]`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: usize,
    pub b: usize,
}

impl Segment {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a <= b, "segment [{a},{b}] is empty");
        Segment { a, b }
    }
}

/// Canonical order: right end descending, then left end descending.
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        other.b.cmp(&self.b).then(other.a.cmp(&self.a))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == self.b {
            write!(f, "[{}]", self.a + 1)
        } else {
            write!(f, "[{},{}]", self.a + 1, self.b + 1)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Minus,
    Plus,
}

/// A multiset of segments over the nodes of `A_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    rank: usize,
    segs: BTreeMap<Segment, u64>,
}

impl Multisegment {
    pub fn empty(rank: usize) -> Self {
        Multisegment { rank, segs: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    /// Segments with multiplicities, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Segment, u64)> + '_ {
        self.segs.iter().map(|(s, &c)| (*s, c))
    }

    pub fn multiplicity(&self, s: Segment) -> u64 {
        self.segs.get(&s).copied().unwrap_or(0)
    }

    /// Adds `count` copies of `s`, checking it lies within the rank.
    pub fn add(&mut self, s: Segment, count: u64) -> Result<()> {
        if s.b >= self.rank {
            return Err(Error::InvalidIndex { index: s.b, rank: self.rank });
        }
        if count > 0 {
            *self.segs.entry(s).or_insert(0) += count;
        }
        Ok(())
    }

    fn bump(&mut self, s: Segment, up: bool) {
        if up {
            *self.segs.entry(s).or_insert(0) += 1;
        } else {
            let c = self.segs.get_mut(&s).expect("segment present");
            *c -= 1;
            if *c == 0 {
                self.segs.remove(&s);
            }
        }
    }

    /// `-(Σ over segments of α_a + ⋯ + α_b)`.
    pub fn weight(&self) -> Weight {
        let mut w = alloc::vec![0i64; self.rank];
        for (s, c) in self.iter() {
            for x in &mut w[s.a..=s.b] {
                *x -= c as i64;
            }
        }
        Weight::from(w)
    }

    fn pairing(&self, i: usize) -> i64 {
        let w = self.weight();
        let w = w.coords();
        let mut p = 2 * w[i];
        if i > 0 {
            p -= w[i - 1];
        }
        if i + 1 < self.rank {
            p -= w[i + 1];
        }
        p
    }

    /// Surviving signature groups, all `-` before all `+`.
    fn reduced_signature(&self, i: usize, star: bool) -> Vec<(Sign, Segment, u64)> {
        let mut items: Vec<(usize, Sign, Segment, u64)> = Vec::new();
        for (s, c) in self.iter() {
            if star {
                if s.b == i {
                    items.push((s.a, Sign::Minus, s, c));
                } else if i > 0 && s.b == i - 1 {
                    items.push((s.a, Sign::Plus, s, c));
                }
            } else if s.a == i {
                items.push((usize::MAX - s.b, Sign::Minus, s, c));
            } else if s.a == i + 1 {
                items.push((usize::MAX - s.b, Sign::Plus, s, c));
            }
        }
        items.sort_by(|x, y| x.0.cmp(&y.0).then((x.1 == Sign::Plus).cmp(&(y.1 == Sign::Plus))));

        let mut out: Vec<(Sign, Segment, u64)> = Vec::new();
        for (_, sign, seg, mut c) in items {
            if sign == Sign::Minus {
                while c > 0 {
                    match out.last_mut() {
                        Some((Sign::Plus, _, top)) => {
                            let t = c.min(*top);
                            *top -= t;
                            c -= t;
                            if *top == 0 {
                                out.pop();
                            }
                        }
                        _ => break,
                    }
                }
                if c > 0 {
                    out.push((Sign::Minus, seg, c));
                }
            } else {
                out.push((Sign::Plus, seg, c));
            }
        }
        out
    }

    fn count_minus(sig: &[(Sign, Segment, u64)]) -> i64 {
        sig.iter().filter(|g| g.0 == Sign::Minus).map(|g| g.2 as i64).sum()
    }

    pub fn eps(&self, i: usize) -> i64 {
        Self::count_minus(&self.reduced_signature(i, false))
    }

    pub fn eps_star(&self, i: usize) -> i64 {
        Self::count_minus(&self.reduced_signature(i, true))
    }

    pub fn local_data(&self, i: usize) -> LocalData {
        let p = self.pairing(i);
        let eps = self.eps(i);
        let eps_star = self.eps_star(i);
        LocalData { eps, phi: eps + p, eps_star, phi_star: eps_star + p }
    }

    pub fn f(&self, i: usize) -> Multisegment {
        let sig = self.reduced_signature(i, false);
        let mut m = self.clone();
        match sig.iter().find(|g| g.0 == Sign::Plus) {
            Some(&(_, s, _)) => {
                m.bump(s, false);
                m.bump(Segment::new(i, s.b), true);
            }
            None => m.bump(Segment::new(i, i), true),
        }
        m
    }

    pub fn e(&self, i: usize) -> Option<Multisegment> {
        let sig = self.reduced_signature(i, false);
        let &(_, s, _) = sig.iter().rev().find(|g| g.0 == Sign::Minus)?;
        let mut m = self.clone();
        m.bump(s, false);
        if s.b > i {
            m.bump(Segment::new(i + 1, s.b), true);
        }
        Some(m)
    }

    pub fn f_star(&self, i: usize) -> Multisegment {
        let sig = self.reduced_signature(i, true);
        let mut m = self.clone();
        match sig.iter().find(|g| g.0 == Sign::Plus) {
            Some(&(_, s, _)) => {
                m.bump(s, false);
                m.bump(Segment::new(s.a, i), true);
            }
            None => m.bump(Segment::new(i, i), true),
        }
        m
    }

    pub fn e_star(&self, i: usize) -> Option<Multisegment> {
        let sig = self.reduced_signature(i, true);
        let &(_, s, _) = sig.iter().rev().find(|g| g.0 == Sign::Minus)?;
        let mut m = self.clone();
        m.bump(s, false);
        if s.a < i {
            m.bump(Segment::new(s.a, i - 1), true);
        }
        Some(m)
    }

    pub fn e_max(&self, i: usize) -> Multisegment {
        let mut m = self.clone();
        while let Some(next) = m.e(i) {
            m = next;
        }
        m
    }

    pub fn e_star_max(&self, i: usize) -> Multisegment {
        let mut m = self.clone();
        while let Some(next) = m.e_star(i) {
            m = next;
        }
        m
    }

    /// Parses text such as `2[2]+3[1,2]+4[1]`; `0` or the empty string is
    /// the empty multisegment. For rank at most 9, `[12]` abbreviates `[1,2]`.
    pub fn parse(rank: usize, text: &str) -> Result<Self> {
        let mut m = Multisegment::empty(rank);
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let err = |pos: usize, msg: &str| Error::Parse { position: pos, message: msg.into() };
        if chars.is_empty() || (chars.len() == 1 && chars[0].1 == '0') {
            return Ok(m);
        }
        let mut k = 0;
        loop {
            let start = chars.get(k).map_or(text.len(), |c| c.0);
            let mut mult: Option<u64> = None;
            while let Some(&(_, c)) = chars.get(k) {
                let Some(d) = c.to_digit(10) else { break };
                mult = Some(
                    mult.unwrap_or(0)
                        .checked_mul(10)
                        .and_then(|x| x.checked_add(d as u64))
                        .ok_or_else(|| err(start, "multiplicity overflow"))?,
                );
                k += 1;
            }
            match chars.get(k) {
                Some(&(_, '[')) => k += 1,
                Some(&(p, _)) => return Err(err(p, "expected `[`")),
                None => return Err(err(text.len(), "expected `[`")),
            }
            let open = chars[k - 1].0;
            let mut fields: Vec<String> = alloc::vec![String::new()];
            loop {
                match chars.get(k) {
                    Some(&(_, ']')) => {
                        k += 1;
                        break;
                    }
                    Some(&(_, ',')) => fields.push(String::new()),
                    Some(&(_, c)) if c.is_ascii_digit() => fields.last_mut().expect("nonempty").push(c),
                    Some(&(p, c)) => return Err(err(p, &format!("unexpected `{c}` in segment"))),
                    None => return Err(err(text.len(), "unterminated segment")),
                }
                k += 1;
            }
            let seg = segment_from_fields(rank, &fields).map_err(|msg| err(open, &msg))?;
            m.add(seg, mult.unwrap_or(1)).map_err(|_| err(open, "segment outside the Dynkin diagram"))?;
            match chars.get(k) {
                None => break,
                Some(&(_, '+')) => k += 1,
                Some(&(p, _)) => return Err(err(p, "expected `+`")),
            }
        }
        Ok(m)
    }
}

fn segment_from_fields(rank: usize, fields: &[String]) -> core::result::Result<Segment, String> {
    let num = |s: &str| -> core::result::Result<usize, String> {
        match s.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(format!("bad node `{s}`")),
        }
    };
    let (a, b) = match fields {
        [x] if rank <= 9 && x.len() > 1 => {
            // compact form [12] = [1,2], [123] = [1,3]
            let digits: Vec<usize> = x.bytes().map(|d| (d - b'0') as usize).collect();
            if digits.windows(2).any(|w| w[1] != w[0] + 1) || digits[0] == 0 {
                return Err(format!("`[{x}]` is not a run of consecutive nodes"));
            }
            (digits[0] - 1, digits[digits.len() - 1] - 1)
        }
        [x] => (num(x)?, num(x)?),
        [x, y] => (num(x)?, num(y)?),
        _ => return Err("a segment has one or two endpoints".into()),
    };
    if a > b {
        return Err("segment endpoints out of order".into());
    }
    Ok(Segment { a, b })
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segs.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}{s}")?;
        }
        Ok(())
    }
}

/// Converts between multisegments and the Lusztig-data realization.
///
/// Multiplicities are exactly the `+1` datum for the word
/// `(n, n-1, …, 1, n, …, 2, …, n)`, whose roots list the segments by right
/// end descending and then left end descending.
#[derive(Clone, Debug)]
pub struct MultisegBridge {
    binf: BInfinity,
    segments: Vec<Segment>,
    to_ref: Vec<Move>,
}

impl MultisegBridge {
    pub fn new(binf: BInfinity) -> Result<Self> {
        let c = binf.cartan();
        if c.cartan_type().family() != Family::A {
            return Err(Error::NotTypeA);
        }
        let n = c.rank();
        let letters: Vec<usize> = (0..n).flat_map(|s| (s..n).rev()).collect();
        let word = c.reduced_word(letters)?;
        let segments = c
            .roots_along(word.letters())?
            .iter()
            .map(|r| {
                let support: Vec<usize> = (0..n).filter(|&j| r.coords()[j] != 0).collect();
                Segment::new(support[0], support[support.len() - 1])
            })
            .collect();
        let to_ref = c.braid_move_path(&word, binf.reference())?;
        Ok(MultisegBridge { binf, segments, to_ref })
    }

    pub fn binf(&self) -> &BInfinity {
        &self.binf
    }

    pub fn rank(&self) -> usize {
        self.binf.rank()
    }

    pub fn to_binf(&self, m: &Multisegment) -> BinfElt {
        let mut c: Vec<u64> = self.segments.iter().map(|&s| m.multiplicity(s)).collect();
        for &mv in &self.to_ref {
            crate::binf::transition_rank2(&mut c, mv);
        }
        self.binf.element(c).expect("length matches")
    }

    pub fn from_binf(&self, b: &BinfElt) -> Multisegment {
        let mut c = b.coords().to_vec();
        for &mv in self.to_ref.iter().rev() {
            crate::binf::transition_rank2(&mut c, mv);
        }
        let mut m = Multisegment::empty(self.rank());
        for (&s, &k) in self.segments.iter().zip(&c) {
            m.add(s, k).expect("segment within rank");
        }
        m
    }

    /// Parses multisegment text straight to a `B(∞)` element.
    pub fn parse(&self, text: &str) -> Result<BinfElt> {
        Ok(self.to_binf(&Multisegment::parse(self.rank(), text)?))
    }

    pub fn format(&self, b: &BinfElt) -> String {
        format!("{}", self.from_binf(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use alloc::string::ToString;

    fn ms(n: usize, s: &str) -> Multisegment {
        Multisegment::parse(n, s).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let m = ms(2, "4[1] + 2[2]+3[1,2]");
        assert_eq!(m.to_string(), "2[2]+3[1,2]+4[1]");
        assert_eq!(ms(2, "[2]+[12]+2[1]").to_string(), "1[2]+1[1,2]+2[1]");
        assert_eq!(ms(3, "0").to_string(), "0");
        assert_eq!(ms(3, "").to_string(), "0");
        assert_eq!(ms(4, "[2,4]+[3]+[1,1]").to_string(), "1[2,4]+1[3]+1[1]");
    }

    #[test]
    fn parse_errors() {
        for bad in ["[3]", "2[1", "[2,1]", "x", "[1]+", "[13]", "[1,2,3]", "1[1]2[2]"] {
            assert!(matches!(Multisegment::parse(2, bad), Err(Error::Parse { .. })), "{bad}");
        }
        assert_eq!(Multisegment::parse(2, "1[1]+x"), Err(Error::Parse { position: 5, message: "expected `[`".into() }));
    }

    #[test]
    fn eps_examples() {
        assert_eq!(ms(2, "2[2]+3[12]+4[1]").eps(0), 5);
        assert_eq!(ms(2, "[2]+[12]+2[1]").eps(0), 2);
        assert_eq!(ms(2, "3[2]+2[12]+[1]").eps(0), 2);
        assert_eq!(Multisegment::empty(3).eps(1), 0);
    }

    #[test]
    fn e_max_examples() {
        assert_eq!(ms(2, "2[2]+3[12]+4[1]").e_max(0), ms(2, "5[2]+2[1]"));
        assert_eq!(ms(2, "[2]+[12]+2[1]").e_max(0), ms(2, "2[2]+[1]"));
        assert_eq!(ms(2, "3[2]+2[12]+[1]").e_max(0), ms(2, "5[2]+[1]"));
    }

    #[test]
    fn f_on_empty() {
        for i in 0..3 {
            assert_eq!(Multisegment::empty(3).f(i), ms(3, &alloc::format!("[{}]", i + 1)));
            assert_eq!(Multisegment::empty(3).f_star(i), ms(3, &alloc::format!("[{}]", i + 1)));
        }
    }

    #[test]
    fn weights() {
        assert!(Multisegment::empty(2).weight().is_zero());
        assert_eq!(ms(2, "[12]").weight(), Weight::from(alloc::vec![-1, -1]));
        assert_eq!(ms(2, "[2]+[12]+2[1]").weight(), Weight::from(alloc::vec![-3, -2]));
    }

    #[test]
    fn bridge_basics() {
        let binf = BInfinity::new(CartanDatum::parse("A3").unwrap());
        let br = MultisegBridge::new(binf.clone()).unwrap();
        assert_eq!(br.to_binf(&Multisegment::empty(3)), binf.highest());
        for i in 0..3 {
            assert_eq!(br.to_binf(&Multisegment::empty(3).f(i)), binf.f(i, &binf.highest()));
        }
        let m = ms(3, "2[2,3]+[1]+3[1,3]");
        assert_eq!(br.from_binf(&br.to_binf(&m)), m);
        assert_eq!(binf.weight(&br.to_binf(&m)), m.weight());
        assert!(MultisegBridge::new(BInfinity::new(CartanDatum::parse("D4").unwrap())).is_err());
    }
}
