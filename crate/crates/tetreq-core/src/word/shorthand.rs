//! Normalized presentations of the eight equations.
//!
//! After a per-equation renumbering every bracket `(ij)` satisfies `i<j`,
//! every `S` letter reads `S_(ij)(ik)(jk)` with `i<j<k`, and the alphabet
//! shrinks to `S_l`, `S~_l`, `Q_i` indexed by the complementary point. The
//! shorthand form then eliminates uninverted `S~`'s and inverted `Q`'s by
//! multiplying both sides of the equation from the left and from the right
//! by the matching inverses doing free cancellation at the word ends, swaps
//! sides so the left-hand side leads with `Q_4`, and orders commuting `Q`
//! runs (descending on the left, ascending on the right).
//!
//! Substituting `S~_l^-1 -> S_l` afterwards renders all eight lines
//! identical, which is the unitarity collapse at the symbolic level.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{label, LetterKind, OpLetter, OpWord, Perm, TetraEquation, WordError};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ShortKind {
    S,
    Stilde,
    Q,
}

/// A letter of the shorthand alphabet: `S_l`, `S~_l`, or `Q_i`, possibly
/// inverted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ShortLetter {
    pub kind: ShortKind,
    pub index: u8,
    pub inverted: bool,
}

impl ShortLetter {
    fn inverse(self) -> ShortLetter {
        ShortLetter { inverted: !self.inverted, ..self }
    }

    /// Uninverted `S~` and inverted `Q` letters are eliminated during
    /// normalization.
    fn is_bad(self) -> bool {
        matches!(
            (self.kind, self.inverted),
            (ShortKind::Stilde, false) | (ShortKind::Q, true)
        )
    }

    pub fn render(self) -> String {
        let base = match self.kind {
            ShortKind::S => format!("S{}", self.index),
            ShortKind::Stilde => format!("S~{}", self.index),
            ShortKind::Q => format!("Q{}", self.index),
        };
        if self.inverted {
            format!("{base}^-1")
        } else {
            base
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShorthandEquation {
    pub name: String,
    pub lhs: Vec<ShortLetter>,
    pub rhs: Vec<ShortLetter>,
}

impl ShorthandEquation {
    pub fn render(&self) -> String {
        let side = |w: &[ShortLetter]| {
            w.iter().map(|l| l.render()).collect::<Vec<_>>().join(" ")
        };
        format!("{}: {} = {}", self.name, side(&self.lhs), side(&self.rhs))
    }
}

/// Presentation order of the normalized equations.
pub const SHORTHAND_DISPLAY_ORDER: [&str; 8] =
    ["1,6", "7,5r", "4,3r", "2,8r", "1r,6r", "5,7r", "3,4r", "8,2r"];

/// The renumbering that orders every bracket, solved from the equation
/// itself.
///
/// Each unordered pair of points appears in the equation's labels with a
/// single orientation (a derivation never flips a factor label), so the
/// orientations define a tournament on the four points. When it is
/// transitive, relabeling by rank is the unique permutation making `i<j`
/// inside every bracket.
pub fn orientation_renumber(eq: &TetraEquation) -> Result<Perm, WordError> {
    // orientation[a][b]: some label reads (a,b)
    let mut oriented = [[false; 5]; 5];
    for letter in eq.lhs.letters().iter().chain(eq.rhs.letters()) {
        for l in &letter.labels {
            oriented[l.first() as usize][l.second() as usize] = true;
        }
    }
    let mut wins = [0usize; 5];
    for a in 1..=4 {
        for b in 1..=4 {
            if a == b {
                continue;
            }
            if oriented[a][b] && oriented[b][a] {
                return Err(WordError::Normalization(format!(
                    "equation {}: both orientations of ({a}{b}) appear",
                    eq.name
                )));
            }
            if oriented[a][b] {
                wins[a] += 1;
            }
        }
    }
    let mut images = [0u8; 4];
    for p in 1..=4usize {
        images[p - 1] = 4 - wins[p] as u8;
    }
    Perm::from_images(images).ok_or_else(|| {
        WordError::Normalization(format!(
            "equation {}: bracket orientations are not transitive",
            eq.name
        ))
    })
}

/// The three points `i<j<k` complementary to `l` in `{1,2,3,4}`.
fn triple_for(l: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut at = 0;
    for p in 1..=4 {
        if p != l {
            out[at] = p;
            at += 1;
        }
    }
    out
}

/// `S_l = S_(ij)(ik)(jk)` as a full letter.
pub(crate) fn s_letter(l: u8) -> OpLetter {
    let [i, j, k] = triple_for(l);
    OpLetter::s(label(i, j), label(i, k), label(j, k)).unwrap()
}

/// `S~_l = S~_(jk)(ik)(ij)` as a full letter.
pub(crate) fn stilde_letter(l: u8) -> OpLetter {
    let [i, j, k] = triple_for(l);
    OpLetter::stilde(label(j, k), label(i, k), label(i, j)).unwrap()
}

/// `Q_i = Q_(1i)(jk)` with `j<k` as a full letter.
pub(crate) fn q_letter(i: u8) -> OpLetter {
    let mut rest: Vec<u8> = (2..=4).filter(|&p| p != i).collect();
    rest.sort_unstable();
    OpLetter::q(label(1, i), label(rest[0], rest[1])).unwrap()
}

fn to_short(letter: &OpLetter) -> Result<ShortLetter, WordError> {
    match letter.kind {
        LetterKind::S => {
            for l in 1..=4u8 {
                if letter.labels == s_letter(l).labels {
                    return Ok(ShortLetter { kind: ShortKind::S, index: l, inverted: letter.inverted });
                }
            }
        }
        LetterKind::Stilde => {
            for l in 1..=4u8 {
                if letter.labels == stilde_letter(l).labels {
                    return Ok(ShortLetter {
                        kind: ShortKind::Stilde,
                        index: l,
                        inverted: letter.inverted,
                    });
                }
            }
        }
        LetterKind::Q => {
            for i in 2..=4u8 {
                let q = q_letter(i);
                if letter.labels == q.labels {
                    return Ok(ShortLetter { kind: ShortKind::Q, index: i, inverted: letter.inverted });
                }
                // Q_(jk)(1i) is the inverse of Q_(1i)(jk)
                if letter.labels.len() == 2
                    && letter.labels[0] == q.labels[1]
                    && letter.labels[1] == q.labels[0]
                {
                    return Ok(ShortLetter {
                        kind: ShortKind::Q,
                        index: i,
                        inverted: !letter.inverted,
                    });
                }
            }
        }
    }
    Err(WordError::Normalization(format!(
        "letter {letter} does not fit the shorthand alphabet"
    )))
}

/// Multiply a word by `letter` on the left, freely cancelling `x^-1 x`.
fn mul_left(word: &mut Vec<ShortLetter>, letter: ShortLetter) {
    if word.first().copied() == Some(letter.inverse()) {
        word.remove(0);
    } else {
        word.insert(0, letter);
    }
}

/// Multiply a word by `letter` on the right, freely cancelling `x x^-1`.
fn mul_right(word: &mut Vec<ShortLetter>, letter: ShortLetter) {
    if word.last().copied() == Some(letter.inverse()) {
        word.pop();
    } else {
        word.push(letter);
    }
}

/// Sort maximal runs of adjacent `Q` letters (all `Q_i` commute pairwise).
fn sort_q_runs(word: &mut [ShortLetter], descending: bool) {
    let mut i = 0;
    while i < word.len() {
        if word[i].kind != ShortKind::Q {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < word.len() && word[j].kind == ShortKind::Q {
            j += 1;
        }
        word[i..j].sort_by_key(|l| if descending { u8::MAX - l.index } else { l.index });
        i = j;
    }
}

/// Full normalization pipeline without the name; this is also the
/// deduplication key, since two equations are the same tetrahedron equation
/// exactly when their normalized forms coincide.
pub(crate) fn normalized_key(
    eq: &TetraEquation,
) -> Result<(Vec<ShortLetter>, Vec<ShortLetter>), WordError> {
    let perm = orientation_renumber(eq)?;
    let renumbered = eq.relabel(&perm);
    let mut lhs: Vec<ShortLetter> =
        renumbered.lhs.letters().iter().map(to_short).collect::<Result<_, _>>()?;
    let mut rhs: Vec<ShortLetter> =
        renumbered.rhs.letters().iter().map(to_short).collect::<Result<_, _>>()?;

    // Eliminate bad end letters by multiplying both sides on the left and on
    // the right by the inverse; each move removes the letter from both sides.
    loop {
        let bad_first = lhs.first().copied().filter(|l| l.is_bad());
        let bad_last = lhs.last().copied().filter(|l| l.is_bad());
        let x = match bad_first.or(bad_last) {
            Some(x) => x,
            None => break,
        };
        let inv = x.inverse();
        mul_left(&mut lhs, inv);
        mul_left(&mut rhs, inv);
        mul_right(&mut lhs, inv);
        mul_right(&mut rhs, inv);
    }
    if lhs.iter().chain(rhs.iter()).any(|l| l.is_bad()) {
        return Err(WordError::Normalization(format!(
            "equation {}: bad letters not at the word ends",
            eq.name
        )));
    }

    // Both sides of every normalized equation start and end with Q4; pick
    // the side that leads with it as the left-hand side.
    let q4 = ShortLetter { kind: ShortKind::Q, index: 4, inverted: false };
    let (mut lhs, mut rhs) = if lhs.first() == Some(&q4) {
        (lhs, rhs)
    } else if rhs.first() == Some(&q4) {
        (rhs, lhs)
    } else {
        return Err(WordError::Normalization(format!(
            "equation {}: neither side leads with Q4 after elimination",
            eq.name
        )));
    };

    sort_q_runs(&mut lhs, true);
    sort_q_runs(&mut rhs, false);
    Ok((lhs, rhs))
}

fn normalize_one(eq: &TetraEquation) -> Result<ShorthandEquation, WordError> {
    let (lhs, rhs) = normalized_key(eq)?;
    Ok(ShorthandEquation { name: eq.name.clone(), lhs, rhs })
}

/// Normalize the eight generated equations to shorthand form, returned in
/// [`SHORTHAND_DISPLAY_ORDER`].
pub fn normalize_to_shorthand(
    eqs: &[TetraEquation],
) -> Result<Vec<ShorthandEquation>, WordError> {
    let mut normalized: Vec<ShorthandEquation> =
        eqs.iter().map(normalize_one).collect::<Result<_, _>>()?;
    let order_key = |name: &str| {
        SHORTHAND_DISPLAY_ORDER
            .iter()
            .position(|&n| n == name)
            .unwrap_or(SHORTHAND_DISPLAY_ORDER.len())
    };
    normalized.sort_by_key(|e| order_key(&e.name));
    Ok(normalized)
}

/// Substitute `S~_l^-1 -> S_l` and render each line without its name.
/// Under unitarity all lines must come out identical.
pub fn collapse_substitution(eqs: &[ShorthandEquation]) -> Vec<String> {
    eqs.iter()
        .map(|eq| {
            let subst = |w: &[ShortLetter]| {
                w.iter()
                    .map(|l| {
                        if l.kind == ShortKind::Stilde && l.inverted {
                            ShortLetter { kind: ShortKind::S, index: l.index, inverted: false }
                        } else {
                            *l
                        }
                    })
                    .map(|l| l.render())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            format!("{} = {}", subst(&eq.lhs), subst(&eq.rhs))
        })
        .collect()
}

/// Expand a shorthand equation back into full operator letters for numeric
/// evaluation.
pub fn expand_shorthand(eq: &ShorthandEquation) -> TetraEquation {
    let expand = |w: &[ShortLetter]| {
        OpWord(
            w.iter()
                .map(|l| {
                    let mut letter = match l.kind {
                        ShortKind::S => s_letter(l.index),
                        ShortKind::Stilde => stilde_letter(l.index),
                        ShortKind::Q => q_letter(l.index),
                    };
                    letter.inverted = l.inverted;
                    letter
                })
                .collect(),
        )
    };
    TetraEquation { name: eq.name.clone(), lhs: expand(&eq.lhs), rhs: expand(&eq.rhs) }
}

/// The classic single-index equation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassicEquation {
    pub lhs: Vec<[u8; 3]>,
    pub rhs: Vec<[u8; 3]>,
}

impl ClassicEquation {
    pub fn render(&self) -> String {
        let side = |w: &[[u8; 3]]| {
            w.iter()
                .map(|t| format!("S{}{}{}", t[0], t[1], t[2]))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

/// Translation table between pair labels and single indices:
/// `1=12, 2=13, 3=23, 4=14, 5=24, 6=34`.
pub fn digit_for_pair(l: &crate::word::SpaceLabel) -> u8 {
    match (l.normalized().first(), l.normalized().second()) {
        (1, 2) => 1,
        (1, 3) => 2,
        (2, 3) => 3,
        (1, 4) => 4,
        (2, 4) => 5,
        (3, 4) => 6,
        _ => unreachable!("labels live on four points"),
    }
}

pub fn pair_for_digit(d: u8) -> Option<crate::word::SpaceLabel> {
    let (a, b) = match d {
        1 => (1, 2),
        2 => (1, 3),
        3 => (2, 3),
        4 => (1, 4),
        5 => (2, 4),
        6 => (3, 4),
        _ => return None,
    };
    Some(label(a, b))
}

/// The usual notation: drop the `Q` letters of equation `1,6` and translate
/// each pair label to its single index.
pub fn classic_form(eq: &TetraEquation) -> Result<ClassicEquation, WordError> {
    if eq.name != "1,6" {
        return Err(WordError::NotCaseOne(eq.name.clone()));
    }
    let translate = |w: &OpWord| {
        w.letters()
            .iter()
            .filter(|l| l.kind != LetterKind::Q)
            .map(|l| {
                [
                    digit_for_pair(&l.labels[0]),
                    digit_for_pair(&l.labels[1]),
                    digit_for_pair(&l.labels[2]),
                ]
            })
            .collect()
    };
    Ok(ClassicEquation { lhs: translate(&eq.lhs), rhs: translate(&eq.rhs) })
}

/// Renumbering into the geometric labeling, keyed by equation name; the
/// flag says whether the sides are exchanged afterwards.
fn geometric_renumber(name: &str) -> Result<(Perm, bool), WordError> {
    let entry = match name {
        "1,6" | "2,8r" | "1r,6r" => (Perm::identity(), false),
        "3,4r" => (Perm::from_cycle(&[1, 3, 2, 4]).unwrap(), true),
        "4,3r" => (Perm::from_cycle(&[1, 3, 2]).unwrap(), false),
        "5,7r" => (Perm::from_cycle(&[1, 2, 3, 4]).unwrap(), true),
        "7,5r" => (Perm::from_cycle(&[1, 2, 3]).unwrap(), false),
        "8,2r" => (Perm::from_cycle(&[1, 4]).unwrap(), true),
        other => {
            return Err(WordError::Normalization(format!(
                "no geometric renumbering known for equation {other}"
            )))
        }
    };
    Ok(entry)
}

/// Renumber an equation so that every `S`-letter carries the same label
/// content as in case 1, dropping the `Q` letters. This is the form the
/// sweep-line rule reproduces.
pub fn geometric_form(eq: &TetraEquation) -> Result<TetraEquation, WordError> {
    let (perm, exchange) = geometric_renumber(&eq.name)?;
    let strip = |w: &OpWord| {
        OpWord(
            w.letters()
                .iter()
                .filter(|l| l.kind != LetterKind::Q)
                .map(|l| l.relabel(&perm))
                .collect(),
        )
    };
    let (lhs, rhs) = if exchange {
        (strip(&eq.rhs), strip(&eq.lhs))
    } else {
        (strip(&eq.lhs), strip(&eq.rhs))
    };
    Ok(TetraEquation { name: eq.name.to_string(), lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_letter_lookup() {
        assert_eq!(
            to_short(&s_letter(4)).unwrap(),
            ShortLetter { kind: ShortKind::S, index: 4, inverted: false }
        );
        assert_eq!(
            to_short(&stilde_letter(1)).unwrap(),
            ShortLetter { kind: ShortKind::Stilde, index: 1, inverted: false }
        );
        // Q(23)(14) is the inverse of Q4 = Q(14)(23)
        let q_inv = OpLetter::q(label(2, 3), label(1, 4)).unwrap();
        assert_eq!(
            to_short(&q_inv).unwrap(),
            ShortLetter { kind: ShortKind::Q, index: 4, inverted: true }
        );
    }

    #[test]
    fn q_letters() {
        assert_eq!(alloc::format!("{}", q_letter(2)), "Q(12)(34)");
        assert_eq!(alloc::format!("{}", q_letter(3)), "Q(13)(24)");
        assert_eq!(alloc::format!("{}", q_letter(4)), "Q(14)(23)");
    }

    #[test]
    fn translation_round_trip() {
        for d in 1..=6u8 {
            let pair = pair_for_digit(d).unwrap();
            assert_eq!(digit_for_pair(&pair), d);
        }
    }

    #[test]
    fn free_cancellation() {
        let s1 = ShortLetter { kind: ShortKind::S, index: 1, inverted: false };
        let q4 = ShortLetter { kind: ShortKind::Q, index: 4, inverted: false };
        let mut w = alloc::vec![q4.inverse(), s1];
        mul_left(&mut w, q4);
        assert_eq!(w, alloc::vec![s1]);
        mul_right(&mut w, s1.inverse());
        assert!(w.is_empty());
    }
}
