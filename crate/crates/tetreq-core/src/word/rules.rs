//! The three reversal rules on `R`-words.

use alloc::vec::Vec;

use super::{OpLetter, RWord, SpaceLabel, WordError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleKind {
    S,
    Stilde,
    Q,
}

fn matches_s(p1: &SpaceLabel, p2: &SpaceLabel, p3: &SpaceLabel) -> bool {
    // (ij) (ik) (jk)
    p1.first() == p2.first() && p1.second() == p3.first() && p2.second() == p3.second()
}

fn matches_stilde(p1: &SpaceLabel, p2: &SpaceLabel, p3: &SpaceLabel) -> bool {
    // (jk) (ik) (ij)
    p1.second() == p2.second() && p1.first() == p3.second() && p2.first() == p3.first()
}

/// Every applicable rule, as `(position, rule)`, in position order.
///
/// At a given position a triple match and a `Q` match are mutually
/// exclusive (a triple needs its first two factors to share a point, `Q`
/// needs them disjoint), and no triple matches both the `S` and the `S~`
/// pattern.
pub fn match_rules(word: &RWord) -> Vec<(usize, RuleKind)> {
    let f = word.factors();
    let mut out = Vec::new();
    for p in 0..f.len() {
        if p + 3 <= f.len() {
            if matches_s(&f[p], &f[p + 1], &f[p + 2]) {
                out.push((p, RuleKind::S));
            } else if matches_stilde(&f[p], &f[p + 1], &f[p + 2]) {
                out.push((p, RuleKind::Stilde));
            }
        }
        if p + 2 <= f.len() && f[p].is_disjoint(&f[p + 1]) {
            out.push((p, RuleKind::Q));
        }
    }
    out
}

/// Apply `rule` at `position`; returns the rewritten word and the emitted
/// letter, whose labels are read from the pre-rewrite word in pattern order.
/// Only the matched window changes.
pub fn apply_rule(
    word: &RWord,
    position: usize,
    rule: RuleKind,
) -> Result<(RWord, OpLetter), WordError> {
    let f = word.factors();
    let fail = || WordError::RuleNotApplicable { rule, position };
    match rule {
        RuleKind::S | RuleKind::Stilde => {
            if position + 3 > f.len() {
                return Err(fail());
            }
            let (a, b, c) = (f[position], f[position + 1], f[position + 2]);
            let letter = match rule {
                RuleKind::S if matches_s(&a, &b, &c) => OpLetter::s(a, b, c)?,
                RuleKind::Stilde if matches_stilde(&a, &b, &c) => OpLetter::stilde(a, b, c)?,
                _ => return Err(fail()),
            };
            let next = word.replace_range(position, &[c, b, a]);
            Ok((next, letter))
        }
        RuleKind::Q => {
            if position + 2 > f.len() {
                return Err(fail());
            }
            let (a, b) = (f[position], f[position + 1]);
            if !a.is_disjoint(&b) {
                return Err(fail());
            }
            let letter = OpLetter::q(a, b)?;
            let next = word.replace_range(position, &[b, a]);
            Ok((next, letter))
        }
    }
}
