//! The braid group action on `B̂(∞)`.
//!
//! `R_i` rewrites each component on an `i`-initial word: if `b_k` has datum
//! `(n_{k,1}, …, n_{k,ℓ})` then the new `b_k` has datum
//! `(n_{k,2}, …, n_{k,ℓ}, n_{k-1,1})` on the rotated word. `R*_i` is the
//! mirror image on words ending with `i*`, and inverts `R_i`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::cartan::ReducedWord;
use crate::ext::{ExtCrystal, ExtElt};
use crate::sample;
use crate::{Error, Result};

/// Exponent of a braid generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn inverse(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `r_i` or `r_i^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter {
    pub index: usize,
    pub sign: Sign,
}

/// A word in the Artin–Tits generators. As an operator the rightmost
/// letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(pub Vec<BraidLetter>);

impl BraidWord {
    /// Positive word from 0-based indices.
    pub fn positive(indices: &[usize]) -> Self {
        BraidWord(indices.iter().map(|&index| BraidLetter { index, sign: Sign::Plus }).collect())
    }

    /// The alternating word `i j i j …` with `m` letters.
    pub fn alternating(i: usize, j: usize, m: usize) -> Self {
        BraidWord::positive(&(0..m).map(|q| if q % 2 == 0 { i } else { j }).collect::<Vec<_>>())
    }

    pub fn inverse(&self) -> Self {
        BraidWord(self.0.iter().rev().map(|l| BraidLetter { index: l.index, sign: l.sign.inverse() }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `1 2 1'` (1-based, prime for the inverse); commas also separate.
    pub fn parse(rank: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (pos, tok) in tokens(text) {
            let (num, sign) = match tok.strip_suffix('\'') {
                Some(n) => (n, Sign::Minus),
                None => (tok, Sign::Plus),
            };
            let index: usize = num
                .parse()
                .map_err(|_| Error::Parse { position: pos, message: format!("`{tok}` is not a generator") })?;
            if index == 0 || index > rank {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("generator {index} out of range 1..={rank}"),
                });
            }
            letters.push(BraidLetter { index: index - 1, sign });
        }
        Ok(BraidWord(letters))
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(move |t| (t.as_ptr() as usize - text.as_ptr() as usize, t))
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.index + 1)?;
            if l.sign == Sign::Minus {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

/// Outcome of a randomized braid relation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub i: usize,
    pub j: usize,
    pub m: u32,
    pub samples: usize,
    /// Sample numbers on which the two sides differ.
    pub failures: Vec<usize>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl ExtCrystal {
    /// `R_i` (`Sign::Plus`) or `R*_i` (`Sign::Minus`).
    pub fn braid_r(&self, i: usize, b: &ExtElt, sign: Sign) -> ExtElt {
        let Some((lo, hi)) = b.support() else {
            return ExtElt::highest();
        };
        let binf = self.binf();
        let l = binf.len();
        let mut out = ExtElt::highest();
        match sign {
            Sign::Plus => {
                let coords = |k: i64| b.get(k).map(|c| binf.head_coords(i, c));
                let mut prev = None::<Vec<u64>>;
                for k in lo..=hi + 1 {
                    let cur = coords(k);
                    if cur.is_some() || prev.is_some() {
                        let mut rot = match &cur {
                            Some(c) => c[1..].to_vec(),
                            None => alloc::vec![0; l - 1],
                        };
                        rot.push(prev.as_ref().map_or(0, |p| p[0]));
                        out.set(k, binf.elt_from_rotated_head(i, rot));
                    }
                    prev = cur;
                }
            }
            Sign::Minus => {
                let coords = |k: i64| b.get(k).map(|c| binf.tail_coords(i, c));
                let mut next = None::<Vec<u64>>;
                for k in (lo - 1..=hi).rev() {
                    let cur = coords(k);
                    if cur.is_some() || next.is_some() {
                        let mut rot = Vec::with_capacity(l);
                        rot.push(next.as_ref().map_or(0, |p| p[l - 1]));
                        match &cur {
                            Some(c) => rot.extend_from_slice(&c[..l - 1]),
                            None => rot.resize(l, 0),
                        }
                        out.set(k, binf.elt_from_rotated_tail(i, rot));
                    }
                    next = cur;
                }
            }
        }
        out
    }

    /// `R_i` and `R*_i` straight from the operator definitions:
    /// `b'_k = f̃*_i^{ε_i(b_{k-1})}(T̃_i(b_k))` and
    /// `b''_k = f̃_i^{ε*_i(b_{k+1})}(T̃*_i(b_k))`.
    pub fn braid_r_definitional(&self, i: usize, b: &ExtElt, sign: Sign) -> ExtElt {
        let Some((lo, hi)) = b.support() else {
            return ExtElt::highest();
        };
        let binf = self.binf();
        let (from, to) = match sign {
            Sign::Plus => (lo, hi + 1),
            Sign::Minus => (lo - 1, hi),
        };
        ExtElt::from_components((from..=to).map(|k| {
            let c = self.component(b, k);
            let v = match sign {
                Sign::Plus => {
                    let n = binf.eps(i, &self.component(b, k - 1)) as u64;
                    binf.f_star_pow(i, &binf.saito(i, &c, false), n)
                }
                Sign::Minus => {
                    let n = binf.eps_star(i, &self.component(b, k + 1)) as u64;
                    binf.f_pow(i, &binf.saito(i, &c, true), n)
                }
            };
            (k, v)
        }))
    }

    /// `R_w`; the rightmost letter acts first.
    pub fn braid_apply(&self, w: &BraidWord, b: &ExtElt) -> ExtElt {
        w.0.iter().rev().fold(b.clone(), |acc, l| self.braid_r(l.index, &acc, l.sign))
    }

    /// `R_𝐢 = R_{i_1} ⋯ R_{i_ℓ}` (or the starred composite) for a reduced
    /// word of `w_0`.
    pub fn longest_r(&self, word: &ReducedWord, b: &ExtElt, sign: Sign) -> Result<ExtElt> {
        if !word.is_longest() {
            return Err(Error::NotLongest);
        }
        let w = BraidWord(word.letters().iter().map(|&index| BraidLetter { index, sign }).collect());
        Ok(self.braid_apply(&w, b))
    }

    /// Evaluates both sides of the braid relation for `(i, j)` on `samples`
    /// seeded random elements.
    pub fn check_relation(&self, i: usize, j: usize, samples: usize, seed: u64) -> Result<RelationReport> {
        self.cartan().check_index(i)?;
        self.cartan().check_index(j)?;
        if i == j {
            return Err(Error::InvalidIndex { index: j, rank: self.rank() });
        }
        let m = self.cartan().braid_exponent(i, j);
        let failures = (0..samples)
            .filter(|&s| {
                let mut rng = sample::case_rng(seed, s as u64);
                let b = sample::random_ext(self, &mut rng, sample::MAX_LEN, sample::WINDOW);
                !self.relation_holds(i, j, m, &b)
            })
            .collect();
        Ok(RelationReport { i, j, m, samples, failures })
    }

    /// Whether `R_i R_j R_i ⋯ = R_j R_i R_j ⋯` (`m` factors each) at `b`.
    pub fn relation_holds(&self, i: usize, j: usize, m: u32, b: &ExtElt) -> bool {
        let lhs = BraidWord::alternating(i, j, m as usize);
        let rhs = BraidWord::alternating(j, i, m as usize);
        self.braid_apply(&lhs, b) == self.braid_apply(&rhs, b)
    }
}
