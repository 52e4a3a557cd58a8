//! Words of `R`-factors and the operator alphabet.
//!
//! An [`RWord`] is a product of factors `R_(ij)`, each labeled by an ordered
//! pair of points from `{1,2,3,4}`. Three local rules rewrite such words:
//!
//! - `S`:  `R_(ij) R_(ik) R_(jk) -> R_(jk) R_(ik) R_(ij)`, emitting the
//!   letter `S_(ij)(ik)(jk)`;
//! - `S~`: `R_(jk) R_(ik) R_(ij) -> R_(ij) R_(ik) R_(jk)`, emitting
//!   `S~_(jk)(ik)(ij)`;
//! - `Q`:  `R_(ab) R_(cd) -> R_(cd) R_(ab)` for disjoint `{a,b}`, `{c,d}`,
//!   emitting `Q_(ab)(cd)`.
//!
//! Complete order reversals of a six-factor word emit seven-letter operator
//! words; equating the two possible reversals of one starting word yields a
//! tetrahedron equation.

mod derive;
mod parse;
mod rules;
mod shorthand;

pub use parse::{parse_equation, parse_letter, parse_op_word};

pub use derive::{
    derive_all, exhaustive_scan, generate_equations, starting_configs, ConfigFactor, Derivation,
    GeneratedEquations, ScanGroup, ScanReport, StartingConfig, Step,
};
pub use rules::{apply_rule, match_rules, RuleKind};
pub use shorthand::{
    classic_form, collapse_substitution, digit_for_pair, expand_shorthand, geometric_form,
    normalize_to_shorthand, orientation_renumber, pair_for_digit, ClassicEquation, ShortKind,
    ShortLetter, ShorthandEquation, SHORTHAND_DISPLAY_ORDER,
};
pub(crate) use shorthand::{s_letter as shorthand_s_letter, stilde_letter as shorthand_stilde_letter};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid space label ({0},{1})")]
    BadLabel(u8, u8),
    #[error("letter labels do not fit the {0} pattern")]
    BadLetter(&'static str),
    #[error("word has two factors on the same point set")]
    DuplicateFactor,
    #[error("rule {rule:?} does not apply at position {position}")]
    RuleNotApplicable { rule: RuleKind, position: usize },
    #[error("replaying the derivation does not reproduce its end word")]
    ReplayMismatch,
    #[error("equation generation failed: {0}")]
    Generation(String),
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("classic form requires equation 1,6, got {0}")]
    NotCaseOne(String),
}

/// Ordered pair of distinct points in `1..=4`; orientation is significant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpaceLabel {
    first: u8,
    second: u8,
}

impl SpaceLabel {
    pub fn new(first: u8, second: u8) -> Result<Self, WordError> {
        if first == second || !(1..=4).contains(&first) || !(1..=4).contains(&second) {
            return Err(WordError::BadLabel(first, second));
        }
        Ok(Self { first, second })
    }

    pub fn first(&self) -> u8 {
        self.first
    }

    pub fn second(&self) -> u8 {
        self.second
    }

    /// `{first, second}` as a bitmask over points `1..=4`.
    pub fn point_set(&self) -> u8 {
        (1 << self.first) | (1 << self.second)
    }

    pub fn is_normalized(&self) -> bool {
        self.first < self.second
    }

    pub fn normalized(&self) -> SpaceLabel {
        if self.is_normalized() {
            *self
        } else {
            SpaceLabel { first: self.second, second: self.first }
        }
    }

    pub fn reversed(&self) -> SpaceLabel {
        SpaceLabel { first: self.second, second: self.first }
    }

    pub fn is_disjoint(&self, other: &SpaceLabel) -> bool {
        self.point_set() & other.point_set() == 0
    }

    pub fn relabel(&self, perm: &Perm) -> SpaceLabel {
        SpaceLabel {
            first: perm.apply(self.first),
            second: perm.apply(self.second),
        }
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{})", self.first, self.second)
    }
}

impl fmt::Debug for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Convenience constructor used pervasively in tests and tables.
pub fn label(first: u8, second: u8) -> SpaceLabel {
    SpaceLabel::new(first, second).expect("valid label")
}

/// A permutation of the points `{1,2,3,4}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Perm([u8; 4]);

impl Perm {
    pub fn identity() -> Self {
        Perm([1, 2, 3, 4])
    }

    /// Build from images: `images[i]` is where point `i+1` goes.
    pub fn from_images(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 5];
        for &v in &images {
            if !(1..=4).contains(&v) || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm(images))
    }

    /// Build from a cycle, e.g. `&[1,2,3,4]` maps 1->2->3->4->1.
    pub fn from_cycle(cycle: &[u8]) -> Option<Self> {
        let mut images = [1, 2, 3, 4];
        for i in 0..cycle.len() {
            let from = cycle[i];
            let to = cycle[(i + 1) % cycle.len()];
            if !(1..=4).contains(&from) {
                return None;
            }
            images[from as usize - 1] = to;
        }
        Perm::from_images(images)
    }

    pub fn apply(&self, point: u8) -> u8 {
        self.0[point as usize - 1]
    }

    /// All 24 permutations of the four points, in lexicographic order of
    /// their image arrays.
    pub fn all() -> Vec<Perm> {
        let mut out = Vec::with_capacity(24);
        let mut items = [1u8, 2, 3, 4];
        permute(&mut items, 0, &mut out);
        out.sort_by_key(|p| p.0);
        out
    }
}

fn permute(items: &mut [u8; 4], at: usize, out: &mut Vec<Perm>) {
    if at == 4 {
        out.push(Perm(*items));
        return;
    }
    for i in at..4 {
        items.swap(at, i);
        permute(items, at + 1, out);
        items.swap(at, i);
    }
}

/// A word of `R`-factors. Factors must sit on pairwise distinct point sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RWord(Vec<SpaceLabel>);

impl RWord {
    pub fn new(factors: Vec<SpaceLabel>) -> Result<Self, WordError> {
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if factors[i].point_set() == factors[j].point_set() {
                    return Err(WordError::DuplicateFactor);
                }
            }
        }
        Ok(Self(factors))
    }

    pub fn factors(&self) -> &[SpaceLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> RWord {
        let mut f = self.0.clone();
        f.reverse();
        RWord(f)
    }

    pub fn relabel(&self, perm: &Perm) -> RWord {
        RWord(self.0.iter().map(|l| l.relabel(perm)).collect())
    }

    pub(crate) fn replace_range(&self, start: usize, replacement: &[SpaceLabel]) -> RWord {
        let mut f = self.0.clone();
        f[start..start + replacement.len()].copy_from_slice(replacement);
        RWord(f)
    }
}

impl fmt::Display for RWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "R{}{}", l.first(), l.second())?;
        }
        Ok(())
    }
}

impl fmt::Debug for RWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LetterKind {
    S,
    Stilde,
    Q,
}

/// One letter of an operator word: `S`, `S~`, or `Q` with its space labels,
/// possibly inverted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpLetter {
    pub kind: LetterKind,
    pub labels: Vec<SpaceLabel>,
    pub inverted: bool,
}

impl OpLetter {
    /// `S_(ij)(ik)(jk)` on three distinct points.
    pub fn s(l1: SpaceLabel, l2: SpaceLabel, l3: SpaceLabel) -> Result<Self, WordError> {
        if l1.first() != l2.first() || l1.second() != l3.first() || l2.second() != l3.second() {
            return Err(WordError::BadLetter("S"));
        }
        Ok(Self { kind: LetterKind::S, labels: alloc::vec![l1, l2, l3], inverted: false })
    }

    /// `S~_(jk)(ik)(ij)` on three distinct points.
    pub fn stilde(l1: SpaceLabel, l2: SpaceLabel, l3: SpaceLabel) -> Result<Self, WordError> {
        if l1.second() != l2.second() || l1.first() != l3.second() || l2.first() != l3.first() {
            return Err(WordError::BadLetter("S~"));
        }
        Ok(Self { kind: LetterKind::Stilde, labels: alloc::vec![l1, l2, l3], inverted: false })
    }

    /// `Q_(ab)(cd)` on disjoint pairs.
    pub fn q(l1: SpaceLabel, l2: SpaceLabel) -> Result<Self, WordError> {
        if !l1.is_disjoint(&l2) {
            return Err(WordError::BadLetter("Q"));
        }
        Ok(Self { kind: LetterKind::Q, labels: alloc::vec![l1, l2], inverted: false })
    }

    pub fn inverse(&self) -> OpLetter {
        let mut l = self.clone();
        l.inverted = !l.inverted;
        l
    }

    pub fn relabel(&self, perm: &Perm) -> OpLetter {
        OpLetter {
            kind: self.kind,
            labels: self.labels.iter().map(|l| l.relabel(perm)).collect(),
            inverted: self.inverted,
        }
    }

    /// Bitmask of the points appearing in the labels.
    pub fn points(&self) -> u8 {
        self.labels.iter().fold(0, |m, l| m | l.point_set())
    }
}

impl fmt::Display for OpLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::S => write!(f, "S")?,
            LetterKind::Stilde => write!(f, "S~")?,
            LetterKind::Q => write!(f, "Q")?,
        }
        for l in &self.labels {
            write!(f, "{l}")?;
        }
        if self.inverted {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OpLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Operator word; the leftmost letter is the leftmost multiplier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OpWord(pub Vec<OpLetter>);

impl OpWord {
    pub fn letters(&self) -> &[OpLetter] {
        &self.0
    }

    pub fn relabel(&self, perm: &Perm) -> OpWord {
        OpWord(self.0.iter().map(|l| l.relabel(perm)).collect())
    }

    pub fn reversed(&self) -> OpWord {
        let mut l = self.0.clone();
        l.reverse();
        OpWord(l)
    }

    /// Sort every maximal run of adjacent, pairwise-commuting `Q` letters by
    /// normalized label. Two `Q` letters commute when their four labels are
    /// pairwise distinct as point sets. Idempotent.
    pub fn canonical_q_form(&self) -> OpWord {
        let mut letters = self.0.clone();
        let mut i = 0;
        while i < letters.len() {
            if letters[i].kind != LetterKind::Q {
                i += 1;
                continue;
            }
            let mut j = i + 1;
            while j < letters.len() && letters[j].kind == LetterKind::Q {
                j += 1;
            }
            let run = &mut letters[i..j];
            let commuting = (0..run.len()).all(|a| {
                (a + 1..run.len()).all(|b| {
                    run[a]
                        .labels
                        .iter()
                        .all(|la| run[b].labels.iter().all(|lb| la.point_set() != lb.point_set()))
                })
            });
            if commuting {
                run.sort_by_key(|l| {
                    (l.labels[0].normalized(), l.labels[1].normalized(), l.inverted)
                });
            }
            i = j;
        }
        OpWord(letters)
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A tetrahedron equation: two operator words asserted equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TetraEquation {
    pub name: String,
    pub lhs: OpWord,
    pub rhs: OpWord,
}

impl TetraEquation {
    pub fn relabel(&self, perm: &Perm) -> TetraEquation {
        TetraEquation {
            name: self.name.clone(),
            lhs: self.lhs.relabel(perm),
            rhs: self.rhs.relabel(perm),
        }
    }

    pub fn render(&self) -> String {
        alloc::format!("{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}
