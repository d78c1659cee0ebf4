//! Folding by a diagram automorphism `σ` whose orbits consist of pairwise
//! orthogonal nodes.
//!
//! The folded Cartan matrix is `c_{IJ} = Σ_{j∈J} a_{ij}` for any `i ∈ I`.
//! Folded crystals are realized as the `σ`-fixed elements of the source
//! extended crystal, with operators given by products over orbits. Braid
//! relations of length 4 and 6 arise this way.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::binf::{BInfinity, Relabeling};
use crate::braid::{BraidWord, Sign};
use crate::cartan::{braid_exponent_from_product, CartanDatum, CartanType, Weight};
use crate::ext::{ExtCrystal, ExtElt};
use crate::{Error, Result};

/// A validated diagram automorphism with its folded Cartan data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingDatum {
    source: CartanDatum,
    sigma: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    matrix: Vec<Vec<i64>>,
    folded_type: Option<String>,
}

impl FoldingDatum {
    /// Checks `σ` and folds. Orbits are listed by their smallest node.
    pub fn new(source_type: CartanType, sigma: Vec<usize>) -> Result<Self> {
        let source = CartanDatum::new(source_type);
        let n = source.rank();
        let bad = |s: &str| Err(Error::InvalidAutomorphism(s.into()));
        if sigma.len() != n {
            return bad("permutation length differs from the rank");
        }
        let mut hit = vec![false; n];
        for &s in &sigma {
            if s >= n || hit[s] {
                return bad("not a permutation of the nodes");
            }
            hit[s] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if source.entry(sigma[i], sigma[j]) != source.entry(i, j) {
                    return bad("does not preserve the Cartan matrix");
                }
            }
        }

        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut orbit = vec![start];
            let mut x = sigma[start];
            while x != start {
                orbit.push(x);
                x = sigma[x];
            }
            orbit.sort_unstable();
            for &x in &orbit {
                orbit_of[x] = orbits.len();
            }
            orbits.push(orbit);
        }
        for orbit in &orbits {
            for &i in orbit {
                for &j in orbit {
                    if i != j && source.entry(i, j) != 0 {
                        return bad("an orbit contains adjacent nodes");
                    }
                }
            }
        }

        let r = orbits.len();
        let mut matrix = vec![vec![0i64; r]; r];
        for (a, oa) in orbits.iter().enumerate() {
            for (b, ob) in orbits.iter().enumerate() {
                matrix[a][b] = ob.iter().map(|&j| source.entry(oa[0], j)).sum();
            }
        }
        let folded_type = classify(&matrix);
        Ok(FoldingDatum { source, sigma, orbits, orbit_of, matrix, folded_type })
    }

    /// Parses `"1:3,3:1,2:2"` (1-based `from:to` pairs; unlisted nodes are
    /// fixed).
    pub fn parse_sigma(rank: usize, text: &str) -> Result<Vec<usize>> {
        let mut sigma: Vec<usize> = (0..rank).collect();
        let mut offset = 0;
        for part in text.split(',') {
            let pos = offset + (part.len() - part.trim_start().len());
            offset += part.len() + 1;
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let err = || Error::Parse { position: pos, message: format!("expected `from:to`, found `{part}`") };
            let (a, b) = part.split_once(':').ok_or_else(err)?;
            let a: usize = a.trim().parse().map_err(|_| err())?;
            let b: usize = b.trim().parse().map_err(|_| err())?;
            if a == 0 || b == 0 || a > rank || b > rank {
                return Err(Error::Parse { position: pos, message: format!("node out of range 1..={rank}") });
            }
            sigma[a - 1] = b - 1;
        }
        Ok(sigma)
    }

    pub fn source(&self) -> &CartanDatum {
        &self.source
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Orbits, each sorted ascending; folded index `j` is `orbits()[j]`.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbit_of[i]
    }

    pub fn rank(&self) -> usize {
        self.orbits.len()
    }

    /// Folded Cartan matrix, `c_{IJ} = ⟨h_i, Σ_{j∈J} α_j⟩`.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Folded braid exponent, one of 2, 3, 4, 6.
    pub fn braid_exponent(&self, a: usize, b: usize) -> u32 {
        braid_exponent_from_product(self.matrix[a][b] * self.matrix[b][a]).expect("finite type")
    }

    /// Name of the folded type such as `"B2"` or `"G2"`, if recognized.
    pub fn folded_type(&self) -> Option<&str> {
        self.folded_type.as_deref()
    }

    /// `Σ_{i∈J} α_i`.
    pub fn orbit_root(&self, j: usize) -> Weight {
        let mut w = vec![0; self.source.rank()];
        for &i in &self.orbits[j] {
            w[i] = 1;
        }
        Weight::from(w)
    }
}

/// Known finite Cartan matrices of a given rank, in Kac convention
/// `a_{ij} = ⟨h_i, α_j⟩`.
fn candidates(r: usize) -> Vec<(String, Vec<Vec<i64>>)> {
    let chain = |r: usize| {
        let mut m = vec![vec![0i64; r]; r];
        for i in 0..r {
            m[i][i] = 2;
            if i + 1 < r {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
        m
    };
    let mut out = Vec::new();
    for (family, ok) in [('A', r >= 1), ('D', r >= 4), ('E', (6..=8).contains(&r))] {
        if ok {
            let ty = CartanType::new(
                match family {
                    'A' => crate::cartan::Family::A,
                    'D' => crate::cartan::Family::D,
                    _ => crate::cartan::Family::E,
                },
                r,
            )
            .expect("rank checked");
            out.push((format!("{ty}"), CartanDatum::new(ty).matrix().to_vec()));
        }
    }
    if r >= 2 {
        let mut b = chain(r);
        b[r - 1][r - 2] = -2;
        out.push((format!("B{r}"), b));
    }
    if r >= 3 {
        let mut c = chain(r);
        c[r - 2][r - 1] = -2;
        out.push((format!("C{r}"), c));
    }
    if r == 4 {
        let mut f = chain(4);
        f[1][2] = -2;
        out.push(("F4".into(), f));
    }
    if r == 2 {
        let mut g = chain(2);
        g[1][0] = -3;
        out.push(("G2".into(), g));
    }
    out
}

fn classify(m: &[Vec<i64>]) -> Option<String> {
    let r = m.len();
    candidates(r)
        .into_iter()
        .find(|(_, c)| {
            let mut perm = vec![usize::MAX; r];
            let mut used = vec![false; r];
            matches_under(m, c, 0, &mut perm, &mut used)
        })
        .map(|(name, _)| name)
}

/// Backtracking search for `perm` with `m[a][b] = c[perm a][perm b]`.
fn matches_under(m: &[Vec<i64>], c: &[Vec<i64>], a: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
    if a == m.len() {
        return true;
    }
    for x in 0..m.len() {
        if used[x] {
            continue;
        }
        perm[a] = x;
        if (0..=a).all(|b| m[a][b] == c[x][perm[b]] && m[b][a] == c[perm[b]][x]) {
            used[x] = true;
            if matches_under(m, c, a + 1, perm, used) {
                return true;
            }
            used[x] = false;
        }
    }
    false
}

/// The folded extended crystal, realized as the `σ`-fixed subset.
#[derive(Clone, Debug)]
pub struct FoldedCrystal {
    ext: ExtCrystal,
    datum: FoldingDatum,
    sigma: Relabeling,
}

impl FoldedCrystal {
    pub fn new(datum: FoldingDatum) -> Self {
        let binf = BInfinity::new(datum.source.clone());
        let sigma = binf.relabeling(datum.sigma.clone()).expect("validated automorphism");
        FoldedCrystal { ext: ExtCrystal::new(binf), datum, sigma }
    }

    pub fn ext(&self) -> &ExtCrystal {
        &self.ext
    }

    pub fn datum(&self) -> &FoldingDatum {
        &self.datum
    }

    /// Componentwise `σ`.
    pub fn sigma_ext(&self, b: &ExtElt) -> ExtElt {
        self.ext.relabel(&self.sigma, b)
    }

    /// Whether `b` lies in the image of the folded crystal.
    pub fn is_fixed(&self, b: &ExtElt) -> bool {
        self.sigma_ext(b) == *b
    }

    /// `∏_{i∈J} F̃_{i,k}`, applied in ascending `i`.
    pub fn fold_f(&self, j: usize, k: i64, b: &ExtElt) -> ExtElt {
        self.datum.orbits[j].iter().fold(b.clone(), |acc, &i| self.ext.f(i, k, &acc))
    }

    /// `∏_{i∈J} Ẽ_{i,k}`, applied in ascending `i`.
    pub fn fold_e(&self, j: usize, k: i64, b: &ExtElt) -> ExtElt {
        self.datum.orbits[j].iter().fold(b.clone(), |acc, &i| self.ext.e(i, k, &acc))
    }

    /// `r^σ_J = ∏_{i∈J} r_i` (or its inverse).
    pub fn fold_r(&self, j: usize, b: &ExtElt, sign: Sign) -> ExtElt {
        self.datum.orbits[j].iter().fold(b.clone(), |acc, &i| self.ext.braid_r(i, &acc, sign))
    }

    /// Folded word acting on the source crystal; the rightmost letter acts first.
    pub fn fold_apply(&self, w: &BraidWord, b: &ExtElt) -> ExtElt {
        w.0.iter().rev().fold(b.clone(), |acc, l| self.fold_r(l.index, &acc, l.sign))
    }

    /// Whether the folded braid relation for `(a, b)` holds at `x`.
    pub fn relation_holds(&self, a: usize, b: usize, x: &ExtElt) -> bool {
        let m = self.datum.braid_exponent(a, b) as usize;
        let lhs = BraidWord::alternating(a, b, m);
        let rhs = BraidWord::alternating(b, a, m);
        self.fold_apply(&lhs, x) == self.fold_apply(&rhs, x)
    }

    /// A random `σ`-fixed element: a random word in the folded `F` operators.
    pub fn random_fixed<R: rand::Rng>(&self, rng: &mut R, max_len: usize, window: (i64, i64)) -> ExtElt {
        let len = rng.gen_range(0..=max_len);
        let mut b = ExtElt::highest();
        for _ in 0..len {
            let j = rng.gen_range(0..self.datum.rank());
            let k = rng.gen_range(window.0..=window.1);
            b = self.fold_f(j, k, &b);
        }
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fold(ty: &str, sigma: &str) -> Result<FoldingDatum> {
        let t: CartanType = ty.parse().unwrap();
        FoldingDatum::new(t, FoldingDatum::parse_sigma(t.rank(), sigma)?)
    }

    #[test]
    fn a3_to_b2() {
        let f = fold("A3", "1:3,3:1").unwrap();
        assert_eq!(f.orbits(), &[vec![0, 2], vec![1]]);
        assert_eq!(f.matrix(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(f.braid_exponent(0, 1), 4);
        assert_eq!(f.folded_type(), Some("B2"));
    }

    #[test]
    fn d4_to_g2() {
        let f = fold("D4", "1:3,3:4,4:1").unwrap();
        assert_eq!(f.matrix(), &[vec![2, -1], vec![-3, 2]]);
        assert_eq!(f.braid_exponent(0, 1), 6);
        assert_eq!(f.folded_type(), Some("G2"));
    }

    #[test]
    fn other_targets() {
        assert_eq!(fold("E6", "1:6,6:1,3:5,5:3").unwrap().folded_type(), Some("F4"));
        assert_eq!(fold("A5", "1:5,5:1,2:4,4:2").unwrap().folded_type(), Some("B3"));
        assert_eq!(fold("D5", "4:5,5:4").unwrap().folded_type(), Some("C4"));
        assert_eq!(fold("D4", "3:4,4:3").unwrap().folded_type(), Some("C3"));
    }

    #[test]
    fn identity_fold() {
        let f = fold("D4", "").unwrap();
        assert_eq!(f.matrix(), f.source().matrix());
        assert_eq!(f.folded_type(), Some("D4"));
    }

    #[test]
    fn invalid() {
        // A2 with 1 <-> 2: an automorphism, but the orbit is not orthogonal
        assert!(matches!(fold("A2", "1:2,2:1"), Err(Error::InvalidAutomorphism(_))));
        assert!(matches!(fold("A3", "1:2,2:1"), Err(Error::InvalidAutomorphism(_))));
        assert!(matches!(fold("A3", "1:3"), Err(Error::InvalidAutomorphism(_))));
        assert!(matches!(fold("A3", "1-3"), Err(Error::Parse { .. })));
        assert!(matches!(fold("A3", "1:4"), Err(Error::Parse { .. })));
    }

    #[test]
    fn basic_operators() {
        let fc = FoldedCrystal::new(fold("A3", "1:3,3:1").unwrap());
        let one = ExtElt::highest();
        assert!(fc.is_fixed(&one));
        assert_eq!(fc.fold_r(0, &one, Sign::Plus), one);
        let x = fc.ext();
        let b1 = x.f(0, 0, &one);
        assert!(!fc.is_fixed(&b1));
        assert_eq!(fc.sigma_ext(&b1), x.f(2, 0, &one));
        let b = fc.fold_f(0, 2, &one);
        assert_eq!(b, x.f(2, 2, &x.f(0, 2, &one)));
        assert!(fc.is_fixed(&b));
        assert_eq!(fc.fold_f(1, 0, &one), x.f(1, 0, &one));
        assert_eq!(fc.fold_e(0, 2, &b), one);
    }
}
