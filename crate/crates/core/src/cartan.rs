//! Finite simply-laced root data, Weyl group words and braid moves.
//!
//! Indices are 0-based here. `E_n` uses the Bourbaki labelling: the chain
//! `1-3-4-5-…-n` with node `2` attached to node `4`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops;
use core::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

/// A simply-laced finite Cartan type with its rank bounds enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidRank { family: family.letter(), rank });
        }
        Ok(CartanType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges of the Dynkin diagram, 0-based.
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n - 1).map(|k| (k, k + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|k| (k, k + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (2, 3), (3, 4), (1, 3)];
                e.extend((4..n - 1).map(|k| (k, k + 1)));
                e
            }
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::InvalidType(t.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(t.to_string()))?;
        CartanType::new(family, rank)
    }
}

/// An element of the root lattice, in coordinates over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    /// Sum of the coordinates.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight(self.0.iter().map(|&x| c * x).collect())
    }

    /// Coordinates permuted by a node permutation: `α_i ↦ α_{perm[i]}`.
    pub fn relabeled(&self, perm: &[usize]) -> Weight {
        let mut out = vec![0; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            out[perm[i]] += c;
        }
        Weight(out)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl ops::Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl ops::Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl ops::Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl ops::Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl ops::Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.into_iter().map(|c| -c).collect())
    }
}

impl ops::AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl ops::SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A Weyl group element, stored as the images of the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    images: Vec<Weight>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { images: (0..rank).map(|i| Weight::simple(rank, i)).collect() }
    }

    pub fn images(&self) -> &[Weight] {
        &self.images
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        let mut out = Weight::zero(self.images.len());
        for (img, &c) in self.images.iter().zip(w.coords()) {
            if c != 0 {
                out += &img.scaled(c);
            }
        }
        out
    }

    /// `self · s_i`.
    fn times_simple(&mut self, i: usize, matrix: &[Vec<i64>]) {
        let image_i = self.images[i].clone();
        for (j, img) in self.images.iter_mut().enumerate() {
            let a = matrix[i][j];
            if a != 0 {
                *img -= &image_i.scaled(a);
            }
        }
    }
}

/// A braid move on a word: swap of a commuting pair (`m = 2`) at
/// `position`, or `i j i ↦ j i j` (`m = 3`) starting at `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub position: usize,
    pub m: u32,
}

/// Braid exponent `m(i,j)` from the product `a_{ij} a_{ji}`.
pub fn braid_exponent_from_product(p: i64) -> Option<u32> {
    match p {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

/// A reduced expression together with the element it represents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Vec<usize>,
    element: WeylElement,
    longest: bool,
}

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Letters as 1-based node labels.
    pub fn labels(&self) -> Vec<usize> {
        self.letters.iter().map(|&i| i + 1).collect()
    }

    pub fn element(&self) -> &WeylElement {
        &self.element
    }

    pub fn is_longest(&self) -> bool {
        self.longest
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, ")")
    }
}

type FrontMemo = BTreeMap<(Vec<usize>, usize), Vec<Move>>;

/// Cartan matrix, Dynkin involution and positive roots of a simply-laced
/// finite type. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    ty: CartanType,
    matrix: Vec<Vec<i64>>,
    star: Vec<usize>,
    positive_roots: Vec<Weight>,
    longest: WeylElement,
}

impl CartanDatum {
    pub fn new(ty: CartanType) -> Self {
        let n = ty.rank();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in ty.edges() {
            matrix[a][b] = -1;
            matrix[b][a] = -1;
        }

        let mut longest = WeylElement::identity(n);
        while let Some(i) = (0..n).find(|&i| longest.images[i].is_positive()) {
            longest.times_simple(i, &matrix);
        }
        let star = (0..n)
            .map(|i| {
                let target = -longest.images[i].clone();
                (0..n).find(|&j| target == Weight::simple(n, j)).expect("-w0 permutes the simple roots")
            })
            .collect();

        let mut datum = CartanDatum { ty, matrix, star, positive_roots: Vec::new(), longest };
        datum.positive_roots = datum.root_closure();
        datum
    }

    /// Parses a type string such as `"A2"` or `"e6"` and builds the datum.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(CartanDatum::new(s.parse()?))
    }

    fn root_closure(&self) -> Vec<Weight> {
        let n = self.rank();
        let mut seen: BTreeSet<Weight> = (0..n).map(|i| Weight::simple(n, i)).collect();
        let mut queue: VecDeque<Weight> = seen.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let r = self.reflect(i, &beta);
                if r.is_positive() && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut roots: Vec<Weight> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        roots
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// The Dynkin involution `i ↦ i*`, with `α_{i*} = -w_0(α_i)`.
    pub fn star(&self, i: usize) -> usize {
        self.star[i]
    }

    pub fn star_map(&self) -> &[usize] {
        &self.star
    }

    /// `m(i,j)` for `i ≠ j`.
    pub fn braid_exponent(&self, i: usize, j: usize) -> u32 {
        braid_exponent_from_product(self.matrix[i][j] * self.matrix[j][i]).expect("finite type Cartan matrix")
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// `ℓ(w_0)`, the number of positive roots.
    pub fn longest_length(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.longest
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::InvalidIndex { index: i, rank: self.rank() })
        }
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::simple(self.rank(), i)
    }

    /// `⟨h_i, w⟩ = Σ_j a_{ij} w_j`.
    pub fn pairing(&self, i: usize, w: &Weight) -> i64 {
        self.matrix[i].iter().zip(w.coords()).map(|(a, c)| a * c).sum()
    }

    /// `s_i(w) = w - ⟨h_i, w⟩ α_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let mut out = w.clone();
        out.0[i] -= self.pairing(i, w);
        out
    }

    /// The product `s_{i_1} ⋯ s_{i_t}`.
    pub fn word_element(&self, letters: &[usize]) -> WeylElement {
        let mut w = WeylElement::identity(self.rank());
        for &i in letters {
            w.times_simple(i, &self.matrix);
        }
        w
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut word = self.strip_right_descents(w.clone());
        word.reverse();
        self.word_element(&word)
    }

    /// Repeatedly strips the smallest right descent. The result is the
    /// lexicographically least reduced word of `w^{-1}`.
    fn strip_right_descents(&self, mut w: WeylElement) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| w.images[i].is_negative()) {
            word.push(i);
            w.times_simple(i, &self.matrix);
        }
        word
    }

    /// `β_k = s_{i_1} ⋯ s_{i_{k-1}}(α_{i_k})`; errors unless every `β_k` is
    /// positive, which is equivalent to the word being reduced.
    pub fn roots_along(&self, letters: &[usize]) -> Result<Vec<Weight>> {
        let mut prefix = WeylElement::identity(self.rank());
        let mut roots = Vec::with_capacity(letters.len());
        for &i in letters {
            self.check_index(i)?;
            let beta = prefix.images[i].clone();
            if !beta.is_positive() {
                return Err(Error::NotReduced);
            }
            roots.push(beta);
            prefix.times_simple(i, &self.matrix);
        }
        Ok(roots)
    }

    pub fn is_reduced(&self, letters: &[usize]) -> bool {
        self.roots_along(letters).is_ok()
    }

    pub fn reduced_word(&self, letters: Vec<usize>) -> Result<ReducedWord> {
        self.roots_along(&letters)?;
        let element = self.word_element(&letters);
        let longest = element == self.longest;
        Ok(ReducedWord { letters, element, longest })
    }

    /// Like [`reduced_word`](Self::reduced_word) but from 1-based labels.
    pub fn reduced_word_from_labels(&self, labels: &[usize]) -> Result<ReducedWord> {
        let letters = labels
            .iter()
            .map(|&l| {
                if l == 0 || l > self.rank() {
                    Err(Error::InvalidIndex { index: l.wrapping_sub(1), rank: self.rank() })
                } else {
                    Ok(l - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        self.reduced_word(letters)
    }

    pub fn longest_reduced_word(&self, letters: Vec<usize>) -> Result<ReducedWord> {
        let w = self.reduced_word(letters)?;
        if !w.longest {
            return Err(Error::NotLongest);
        }
        Ok(w)
    }

    /// The lexicographically least reduced word of `w_0`.
    pub fn longest_word(&self) -> ReducedWord {
        let letters = self.strip_right_descents(self.longest.clone());
        ReducedWord { letters, element: self.longest.clone(), longest: true }
    }

    /// `(i_1, …, i_ℓ) ↦ (i_2, …, i_ℓ, i_1*)`.
    pub fn rotate_word(&self, w: &ReducedWord) -> Result<ReducedWord> {
        if !w.longest {
            return Err(Error::NotLongest);
        }
        let mut letters = w.letters[1..].to_vec();
        letters.push(self.star[w.letters[0]]);
        Ok(ReducedWord { letters, element: w.element.clone(), longest: true })
    }

    /// `(i_1, …, i_ℓ) ↦ (i_ℓ*, i_1, …, i_{ℓ-1})`.
    pub fn rotate_word_back(&self, w: &ReducedWord) -> Result<ReducedWord> {
        if !w.longest {
            return Err(Error::NotLongest);
        }
        let n = w.letters.len();
        let mut letters = Vec::with_capacity(n);
        letters.push(self.star[w.letters[n - 1]]);
        letters.extend_from_slice(&w.letters[..n - 1]);
        Ok(ReducedWord { letters, element: w.element.clone(), longest: true })
    }

    /// Applies a node permutation letterwise. The permutation must be a
    /// diagram automorphism for the result to stay reduced.
    pub fn relabel_word(&self, w: &ReducedWord, perm: &[usize]) -> Result<ReducedWord> {
        self.reduced_word(w.letters.iter().map(|&i| perm[i]).collect())
    }

    /// `𝐢^∨ = (i_ℓ*, …, i_1*)`.
    pub fn dual_word(&self, w: &ReducedWord) -> Result<ReducedWord> {
        if !w.longest {
            return Err(Error::NotLongest);
        }
        let letters = w.letters.iter().rev().map(|&i| self.star[i]).collect();
        Ok(ReducedWord { letters, element: w.element.clone(), longest: true })
    }

    pub fn apply_move(&self, letters: &mut [usize], mv: Move) -> Result<()> {
        let p = mv.position;
        let bad = Error::InvalidMove { position: p, m: mv.m };
        match mv.m {
            2 => {
                if p + 1 >= letters.len() {
                    return Err(bad);
                }
                let (i, j) = (letters[p], letters[p + 1]);
                if i == j || self.matrix[i][j] != 0 {
                    return Err(bad);
                }
                letters.swap(p, p + 1);
            }
            3 => {
                if p + 2 >= letters.len() {
                    return Err(bad);
                }
                let (i, j) = (letters[p], letters[p + 1]);
                if i == j || letters[p + 2] != i || self.braid_exponent(i, j) != 3 {
                    return Err(bad);
                }
                letters[p] = j;
                letters[p + 1] = i;
                letters[p + 2] = j;
            }
            _ => return Err(bad),
        }
        Ok(())
    }

    /// Moves turning `word` into a word beginning with `s`. `s` must be a
    /// left descent of the element `word` represents.
    fn front_moves(&self, word: &[usize], s: usize, memo: &mut FrontMemo) -> Vec<Move> {
        if word[0] == s {
            return Vec::new();
        }
        let key = (word.to_vec(), s);
        if let Some(moves) = memo.get(&key) {
            return moves.clone();
        }
        let t = word[0];
        let m = self.braid_exponent(s, t);
        let mut cur = word.to_vec();
        let mut moves = Vec::new();
        // Bring the tail into the form (s, t, s, …) of length m - 1, then
        // one braid move at the front finishes.
        for q in 0..(m as usize - 1) {
            let letter = if q % 2 == 0 { s } else { t };
            let offset = q + 1;
            for mv in self.front_moves(&cur[offset..], letter, memo) {
                let mv = Move { position: mv.position + offset, m: mv.m };
                self.apply_move(&mut cur, mv).expect("descent-guided braid move");
                moves.push(mv);
            }
        }
        let mv = Move { position: 0, m };
        self.apply_move(&mut cur, mv).expect("descent-guided braid move");
        moves.push(mv);
        memo.insert(key, moves.clone());
        moves
    }

    fn is_left_descent(&self, w: &WeylElement, s: usize) -> bool {
        self.inverse(w).images[s].is_negative()
    }

    /// Rewrites `w` by braid moves into a word starting with `s`.
    pub fn bring_to_front(&self, w: &ReducedWord, s: usize) -> Result<(ReducedWord, Vec<Move>)> {
        self.check_index(s)?;
        if !self.is_left_descent(&w.element, s) {
            return Err(Error::DifferentElements);
        }
        let moves = self.front_moves(&w.letters, s, &mut BTreeMap::new());
        let mut letters = w.letters.clone();
        for &mv in &moves {
            self.apply_move(&mut letters, mv)?;
        }
        Ok((ReducedWord { letters, element: w.element.clone(), longest: w.longest }, moves))
    }

    /// Rewrites `w` by braid moves into a word ending with `s`.
    pub fn bring_to_back(&self, w: &ReducedWord, s: usize) -> Result<(ReducedWord, Vec<Move>)> {
        self.check_index(s)?;
        if !w.element.images[s].is_negative() {
            return Err(Error::DifferentElements);
        }
        let n = w.letters.len();
        let reversed: Vec<usize> = w.letters.iter().rev().copied().collect();
        let moves: Vec<Move> = self
            .front_moves(&reversed, s, &mut BTreeMap::new())
            .into_iter()
            .map(|mv| Move { position: n - mv.position - mv.m as usize, m: mv.m })
            .collect();
        let mut letters = w.letters.clone();
        for &mv in &moves {
            self.apply_move(&mut letters, mv)?;
        }
        Ok((ReducedWord { letters, element: w.element.clone(), longest: w.longest }, moves))
    }

    /// A sequence of braid moves transforming `from` into `to`.
    ///
    /// Works position by position: the suffix starting at `p` is rewritten to
    /// begin with `to[p]`. Paths are not minimal.
    pub fn braid_move_path(&self, from: &ReducedWord, to: &ReducedWord) -> Result<Vec<Move>> {
        if from.element != to.element {
            return Err(Error::DifferentElements);
        }
        let mut memo = FrontMemo::new();
        let mut cur = from.letters.clone();
        let mut path = Vec::new();
        for p in 0..cur.len() {
            for mv in self.front_moves(&cur[p..], to.letters[p], &mut memo) {
                let mv = Move { position: mv.position + p, m: mv.m };
                self.apply_move(&mut cur, mv)?;
                path.push(mv);
            }
        }
        debug_assert_eq!(cur, to.letters);
        Ok(path)
    }

    /// Applies a path of moves to a word, checking each move.
    pub fn apply_path(&self, w: &ReducedWord, path: &[Move]) -> Result<ReducedWord> {
        let mut letters = w.letters.clone();
        for &mv in path {
            self.apply_move(&mut letters, mv)?;
        }
        Ok(ReducedWord { letters, element: w.element.clone(), longest: w.longest })
    }
}
