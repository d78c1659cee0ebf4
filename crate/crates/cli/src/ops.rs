//! Operator lists such as `F 2 0; E 1 -1; D 1; zeta; R 1; R' 2`.

use anyhow::{bail, Context, Result};
use extcrystal_core::braid::Sign;
use extcrystal_core::{ExtCrystal, ExtElt, FoldedCrystal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    F(usize, i64),
    E(usize, i64),
    D(i64),
    Zeta,
    R(usize, Sign),
}

impl Op {
    /// Parses one op; node indices are 1-based and checked against `rank`.
    pub fn parse(text: &str, rank: usize) -> Result<Op> {
        let parts: Vec<&str> = text.split_whitespace().collect();
        let node = |s: &str| -> Result<usize> {
            let i: usize = s.parse().with_context(|| format!("bad node `{s}`"))?;
            if i == 0 || i > rank {
                bail!("node {i} out of range 1..={rank}");
            }
            Ok(i - 1)
        };
        let int = |s: &str| -> Result<i64> { s.parse().with_context(|| format!("bad integer `{s}`")) };
        Ok(match parts.as_slice() {
            ["F", i, k] => Op::F(node(i)?, int(k)?),
            ["E", i, k] => Op::E(node(i)?, int(k)?),
            ["D", p] => Op::D(int(p)?),
            ["zeta"] => Op::Zeta,
            ["R", i] => match i.strip_suffix('\'') {
                Some(i) => Op::R(node(i)?, Sign::Minus),
                None => Op::R(node(i)?, Sign::Plus),
            },
            ["R'", i] | ["R*", i] => Op::R(node(i)?, Sign::Minus),
            _ => bail!("unknown op `{}`; expected `F i k`, `E i k`, `D p`, `zeta`, `R i` or `R' i`", text.trim()),
        })
    }

    /// Parses every op in `args`, each of which may hold several ops
    /// separated by `;`.
    pub fn parse_list(args: &[String], rank: usize) -> Result<Vec<Op>> {
        let mut out = Vec::new();
        for text in args.iter().flat_map(|a| a.split(';')).filter(|t| !t.trim().is_empty()) {
            let n = out.len() + 1;
            out.push(Op::parse(text, rank).with_context(|| format!("op #{n} `{}`", text.trim()))?);
        }
        Ok(out)
    }

    pub fn apply(self, ext: &ExtCrystal, b: &ExtElt) -> ExtElt {
        match self {
            Op::F(i, k) => ext.f(i, k, b),
            Op::E(i, k) => ext.e(i, k, b),
            Op::D(p) => ext.shift(p, b),
            Op::Zeta => ext.zeta(b),
            Op::R(i, s) => ext.braid_r(i, b, s),
        }
    }

    /// The folded operator, with the node read as a 1-based orbit index.
    pub fn apply_folded(self, fc: &FoldedCrystal, b: &ExtElt) -> ExtElt {
        match self {
            Op::F(j, k) => fc.fold_f(j, k, b),
            Op::E(j, k) => fc.fold_e(j, k, b),
            Op::R(j, s) => fc.fold_r(j, b, s),
            other => other.apply(fc.ext(), b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ops() {
        assert_eq!(Op::parse("F 2 0", 2).unwrap(), Op::F(1, 0));
        assert_eq!(Op::parse(" E 1 -1 ", 2).unwrap(), Op::E(0, -1));
        assert_eq!(Op::parse("R' 2", 2).unwrap(), Op::R(1, Sign::Minus));
        assert_eq!(Op::parse("R 2'", 2).unwrap(), Op::R(1, Sign::Minus));
        assert_eq!(Op::parse("zeta", 2).unwrap(), Op::Zeta);
        assert!(Op::parse("F 3 0", 2).is_err());
        assert!(Op::parse("G 1", 2).is_err());
        let l = Op::parse_list(&["F 1 0; D 1".into(), "zeta".into()], 2).unwrap();
        assert_eq!(l, vec![Op::F(0, 0), Op::D(1), Op::Zeta]);
    }
}
