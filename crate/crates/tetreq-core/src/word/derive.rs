//! Complete order-reversal derivations and the eight equations.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::rules::{apply_rule, match_rules, RuleKind};
use super::{label, LetterKind, OpLetter, OpWord, Perm, RWord, SpaceLabel, TetraEquation, WordError};

/// One derivation step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub position: usize,
    pub rule: RuleKind,
    pub letter: OpLetter,
}

/// A rewriting path from `start` to `end = reverse(start)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    pub start: RWord,
    pub steps: Vec<Step>,
    pub end: RWord,
}

impl Derivation {
    /// The composed multiplier, leftmost letter emitted first.
    pub fn composed(&self) -> OpWord {
        OpWord(self.steps.iter().map(|s| s.letter.clone()).collect())
    }

    /// Re-apply every step from `start`; checks positions, rules, emitted
    /// letters, and the final word.
    pub fn replay(&self) -> Result<(), WordError> {
        let mut w = self.start.clone();
        for step in &self.steps {
            let (next, letter) = apply_rule(&w, step.position, step.rule)?;
            if letter != step.letter {
                return Err(WordError::ReplayMismatch);
            }
            w = next;
        }
        if w == self.end {
            Ok(())
        } else {
            Err(WordError::ReplayMismatch)
        }
    }
}

/// Unordered factor pair, identified by the two point sets.
fn pair_key(a: &SpaceLabel, b: &SpaceLabel) -> (u8, u8) {
    let (x, y) = (a.point_set(), b.point_set());
    if x <= y { (x, y) } else { (y, x) }
}

/// Pairs of factors whose relative order in `w` differs from `start`.
fn crossed_pairs(start: &RWord, w: &RWord) -> BTreeSet<(u8, u8)> {
    let pos_in = |word: &RWord, l: &SpaceLabel| {
        word.factors()
            .iter()
            .position(|f| f.point_set() == l.point_set())
            .unwrap()
    };
    let mut out = BTreeSet::new();
    let fs = start.factors();
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            let (a, b) = (&fs[i], &fs[j]);
            let before = pos_in(start, a) < pos_in(start, b);
            let after = pos_in(w, a) < pos_in(w, b);
            if before != after {
                out.insert(pair_key(a, b));
            }
        }
    }
    out
}

/// All complete derivations from `start` to its reversal, one representative
/// per class of derivations that differ only in the order of commuting `Q`
/// applications (classes are identified by the composed word after
/// [`OpWord::canonical_q_form`]). Returns an empty list when no complete
/// derivation exists.
///
/// The search is monotone: a rule application may only cross factor pairs
/// that have not crossed before. Reaching the full reversal needs every pair
/// crossed exactly once, so for a six-factor word on four points every
/// complete derivation performs exactly four triple reversals and three `Q`
/// swaps.
pub fn derive_all(start: &RWord) -> Result<Vec<Derivation>, WordError> {
    // re-validate; RWord enforces this on construction but `start` may come
    // from anywhere
    let start = RWord::new(start.factors().to_vec())?;
    let target = start.reversed();

    // memoized suffixes: word -> all step sequences leading to target
    struct Search {
        start: RWord,
        target: RWord,
        memo: BTreeMap<RWord, Vec<Vec<Step>>>,
    }

    impl Search {
        fn suffixes(&mut self, w: &RWord) -> Vec<Vec<Step>> {
            if let Some(hit) = self.memo.get(w) {
                return hit.clone();
            }
            let mut out = Vec::new();
            if *w == self.target {
                out.push(Vec::new());
            } else {
                let crossed = crossed_pairs(&self.start, w);
                for (pos, rule) in match_rules(w) {
                    let f = w.factors();
                    let fresh = match rule {
                        RuleKind::S | RuleKind::Stilde => {
                            let (a, b, c) = (&f[pos], &f[pos + 1], &f[pos + 2]);
                            !crossed.contains(&pair_key(a, b))
                                && !crossed.contains(&pair_key(a, c))
                                && !crossed.contains(&pair_key(b, c))
                        }
                        RuleKind::Q => !crossed.contains(&pair_key(&f[pos], &f[pos + 1])),
                    };
                    if !fresh {
                        continue;
                    }
                    let (next, letter) = apply_rule(w, pos, rule).expect("matched rule applies");
                    for mut suffix in self.suffixes(&next) {
                        suffix.insert(0, Step { position: pos, rule, letter: letter.clone() });
                        out.push(suffix);
                    }
                }
            }
            self.memo.insert(w.clone(), out.clone());
            out
        }
    }

    let mut search = Search { start: start.clone(), target: target.clone(), memo: BTreeMap::new() };
    let paths = search.suffixes(&start);

    // keep the first representative of each canonical class, in search order
    let mut seen: BTreeSet<OpWord> = BTreeSet::new();
    let mut out = Vec::new();
    for steps in paths {
        let deriv = Derivation { start: start.clone(), steps, end: target.clone() };
        let key = deriv.composed().canonical_q_form();
        if seen.insert(key) {
            out.push(deriv);
        }
    }
    Ok(out)
}

/// A factor in a starting configuration: either a fixed ordered label or a
/// braced pair whose orientation is not yet known.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConfigFactor {
    Fixed(SpaceLabel),
    Braced(u8, u8),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StartingConfig {
    pub name: &'static str,
    pub factors: Vec<ConfigFactor>,
}

impl StartingConfig {
    /// Both orientation expansions of the braced factor (or the single word
    /// when nothing is braced).
    pub fn expansions(&self) -> Vec<RWord> {
        let braced_at = self.factors.iter().position(|f| matches!(f, ConfigFactor::Braced(..)));
        let build = |swap: bool| -> RWord {
            let labels: Vec<SpaceLabel> = self
                .factors
                .iter()
                .map(|f| match *f {
                    ConfigFactor::Fixed(l) => l,
                    ConfigFactor::Braced(a, b) => {
                        if swap { label(b, a) } else { label(a, b) }
                    }
                })
                .collect();
            RWord::new(labels).expect("configuration factors are distinct")
        };
        match braced_at {
            Some(_) => vec![build(false), build(true)],
            None => vec![build(false)],
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, f) in self.factors.iter().enumerate() {
            if i > 0 {
                out.push('.');
            }
            match *f {
                ConfigFactor::Fixed(l) => out.push_str(&format!("R{}{}", l.first(), l.second())),
                ConfigFactor::Braced(a, b) => out.push_str(&format!("R{{{a}{b}}}")),
            }
        }
        out
    }
}

/// The fourteen starting configurations for which at least two triple
/// reversals can be done. Primed names mark the configurations that admit
/// no complete reversal.
pub fn starting_configs() -> Vec<StartingConfig> {
    use ConfigFactor::{Braced, Fixed};
    let f = |a, b| Fixed(label(a, b));
    vec![
        StartingConfig {
            name: "1",
            factors: vec![f(1, 2), f(1, 3), f(2, 3), f(1, 4), f(2, 4), Braced(3, 4)],
        },
        StartingConfig {
            name: "1'",
            factors: vec![f(1, 2), f(1, 3), f(2, 3), f(4, 2), f(4, 1), Braced(3, 4)],
        },
        StartingConfig {
            name: "2",
            factors: vec![f(1, 2), f(1, 3), f(2, 3), Braced(3, 4), f(4, 2), f(4, 1)],
        },
        StartingConfig {
            name: "2'",
            factors: vec![f(1, 2), f(1, 3), f(2, 3), Braced(3, 4), f(1, 4), f(2, 4)],
        },
        StartingConfig {
            name: "3",
            factors: vec![Braced(3, 4), f(1, 2), f(1, 3), f(2, 3), f(1, 4), f(2, 4)],
        },
        StartingConfig {
            name: "3'",
            factors: vec![Braced(3, 4), f(1, 2), f(1, 3), f(2, 3), f(4, 2), f(4, 1)],
        },
        StartingConfig {
            name: "4",
            factors: vec![f(4, 2), f(4, 3), f(1, 2), f(1, 3), f(2, 3), Braced(1, 4)],
        },
        StartingConfig {
            name: "4'",
            factors: vec![f(3, 4), f(2, 4), f(1, 2), f(1, 3), f(2, 3), Braced(1, 4)],
        },
        StartingConfig {
            name: "5",
            factors: vec![f(3, 4), f(2, 4), Braced(1, 4), f(1, 2), f(1, 3), f(2, 3)],
        },
        StartingConfig {
            name: "5'",
            factors: vec![f(4, 2), f(4, 3), Braced(1, 4), f(1, 2), f(1, 3), f(2, 3)],
        },
        StartingConfig {
            name: "6",
            factors: vec![Braced(1, 4), f(4, 2), f(4, 3), f(1, 2), f(1, 3), f(2, 3)],
        },
        StartingConfig {
            name: "6'",
            factors: vec![Braced(1, 4), f(3, 4), f(2, 4), f(1, 2), f(1, 3), f(2, 3)],
        },
        StartingConfig {
            name: "7",
            factors: vec![Braced(2, 4), f(1, 4), f(1, 2), f(1, 3), f(2, 3), f(4, 3)],
        },
        StartingConfig {
            name: "8",
            factors: vec![f(1, 4), f(1, 2), f(1, 3), f(2, 3), f(4, 3), Braced(2, 4)],
        },
    ]
}

/// The result of resolving one unprimed case: the orientation of the braced
/// factor that admits complete derivations, and the equation formed by the
/// two derivations.
#[derive(Clone, Debug)]
pub struct ResolvedCase {
    pub case: String,
    pub word: RWord,
    pub equation: TetraEquation,
}

/// Output of [`generate_equations`].
#[derive(Clone, Debug)]
pub struct GeneratedEquations {
    /// The eight deduplicated equations in presentation order.
    pub equations: Vec<TetraEquation>,
    /// All sixteen resolved cases (`1..8` and `1r..8r`) in generation order.
    pub cases: Vec<ResolvedCase>,
}

fn first_triple_letter_is_123(word: &OpWord) -> bool {
    word.letters().first().is_some_and(|l| {
        l.kind != LetterKind::Q && l.points() == (1 << 1) | (1 << 2) | (1 << 3)
    })
}

fn equation_from_word(case: &str, word: &RWord) -> Result<TetraEquation, WordError> {
    let derivs = derive_all(word)?;
    if derivs.len() != 2 {
        return Err(WordError::Generation(format!(
            "case {case}: expected 2 complete derivations, found {}",
            derivs.len()
        )));
    }
    let a = derivs[0].composed();
    let b = derivs[1].composed();
    let (lhs, rhs) = match (first_triple_letter_is_123(&a), first_triple_letter_is_123(&b)) {
        (true, false) => (a, b),
        (false, true) => (b, a),
        _ => {
            return Err(WordError::Generation(format!(
                "case {case}: could not orient sides by the {{1,2,3}} triple letter"
            )))
        }
    };
    Ok(TetraEquation { name: case.to_string(), lhs, rhs })
}

/// Two equations are the same tetrahedron equation when their normalized
/// shorthand forms coincide. A bare point permutation with an optional side
/// swap is not enough: identifying, say, the case-6 equation with the
/// case-1 equation also needs the inverse moves that push end letters
/// across the equality sign, and those are built into the normalization.
fn equivalent(a: &TetraEquation, b: &TetraEquation) -> bool {
    match (super::shorthand::normalized_key(a), super::shorthand::normalized_key(b)) {
        (Ok(ka), Ok(kb)) => ka == kb,
        _ => false,
    }
}

/// Generate the eight tetrahedron equations.
///
/// Every unprimed configuration is resolved to the brace orientation that
/// admits complete derivations (exactly one orientation does); its reversed
/// word is derived as well. The sixteen resulting equations collapse to
/// eight under relabeling equivalence, and each class is named by its two
/// member cases. The presentation order walks cases `1..8`, emitting the
/// case's own class when it is new and the class of its reversed start
/// otherwise.
pub fn generate_equations() -> Result<GeneratedEquations, WordError> {
    let configs = starting_configs();
    let unprimed: Vec<&StartingConfig> =
        configs.iter().filter(|c| !c.name.ends_with('\'')).collect();
    if unprimed.len() != 8 {
        return Err(WordError::Generation("expected 8 unprimed configurations".into()));
    }

    // resolve braces for cases 1..8
    let mut resolved_words: Vec<(String, RWord)> = Vec::new();
    for config in &unprimed {
        let mut working: Vec<RWord> = Vec::new();
        for word in config.expansions() {
            if !derive_all(&word)?.is_empty() {
                working.push(word);
            }
        }
        if working.len() != 1 {
            return Err(WordError::Generation(format!(
                "case {}: {} brace orientations admit derivations, expected 1",
                config.name,
                working.len()
            )));
        }
        resolved_words.push((config.name.to_string(), working.remove(0)));
    }
    // reversed starts 1r..8r
    let reversed: Vec<(String, RWord)> = resolved_words
        .iter()
        .map(|(name, w)| (format!("{name}r"), w.reversed()))
        .collect();

    let mut cases: Vec<ResolvedCase> = Vec::new();
    for (case, word) in resolved_words.into_iter().chain(reversed) {
        let equation = equation_from_word(&case, &word)?;
        cases.push(ResolvedCase { case, word, equation });
    }

    // partition the sixteen into equivalence classes
    let mut class_of = vec![usize::MAX; cases.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..cases.len() {
        let found = classes
            .iter()
            .position(|cls| equivalent(&cases[cls[0]].equation, &cases[i].equation));
        match found {
            Some(ci) => {
                classes[ci].push(i);
                class_of[i] = ci;
            }
            None => {
                classes.push(vec![i]);
                class_of[i] = classes.len() - 1;
            }
        }
    }
    if classes.len() != 8 || classes.iter().any(|c| c.len() != 2) {
        return Err(WordError::Generation(format!(
            "expected 8 classes of 2 starting cases, found {:?}",
            classes.iter().map(|c| c.len()).collect::<Vec<_>>()
        )));
    }

    // presentation order: walk cases 1..8; new class -> emit it, duplicate
    // class -> emit the class of the reversed start instead
    let mut emitted = vec![false; classes.len()];
    let mut equations = Vec::with_capacity(8);
    for n in 0..8 {
        let ci = class_of[n];
        let ci = if emitted[ci] { class_of[n + 8] } else { ci };
        if emitted[ci] {
            return Err(WordError::Generation(format!(
                "class emission clash at case {}",
                cases[n].case
            )));
        }
        emitted[ci] = true;
        let members = &classes[ci];
        let name = format!("{},{}", cases[members[0]].case, cases[members[1]].case);
        let mut eq = cases[members[0]].equation.clone();
        eq.name = name;
        equations.push(eq);
    }

    // propagate class names into the per-case equations
    for members in &classes {
        let name = format!("{},{}", cases[members[0]].case, cases[members[1]].case);
        for &i in members {
            cases[i].equation.name = name.clone();
        }
    }

    Ok(GeneratedEquations { equations, cases })
}

/// One relabeling-plus-reversal class of reversible words.
#[derive(Clone, Debug)]
pub struct ScanGroup {
    /// Lexicographically least member of the class.
    pub representative: RWord,
    pub members: usize,
    pub derivations_per_word: usize,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub words_tested: usize,
    pub words_with_complete_derivations: usize,
    pub groups: Vec<ScanGroup>,
}

/// Canonical form of a word under the 48-element group generated by point
/// relabelings and word reversal.
fn scan_signature(word: &RWord) -> RWord {
    let mut best: Option<RWord> = None;
    let rev = word.reversed();
    for perm in Perm::all() {
        for w in [word.relabel(&perm), rev.relabel(&perm)] {
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    best.unwrap()
}

/// Test every ordering-and-orientation assignment of the six `R`-factors
/// (720 orderings times 2^6 orientations) and group the words that admit at
/// least two complete derivations under relabeling-plus-reversal
/// equivalence.
pub fn exhaustive_scan() -> Result<ScanReport, WordError> {
    let base: Vec<SpaceLabel> = vec![
        label(1, 2),
        label(1, 3),
        label(1, 4),
        label(2, 3),
        label(2, 4),
        label(3, 4),
    ];
    let mut orderings: Vec<Vec<usize>> = Vec::with_capacity(720);
    let mut idx: Vec<usize> = (0..6).collect();
    fn perms(idx: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
        if at == idx.len() {
            out.push(idx.clone());
            return;
        }
        for i in at..idx.len() {
            idx.swap(at, i);
            perms(idx, at + 1, out);
            idx.swap(at, i);
        }
    }
    perms(&mut idx, 0, &mut orderings);
    orderings.sort();

    let mut groups: BTreeMap<RWord, (usize, usize)> = BTreeMap::new();
    let mut words_tested = 0usize;
    let mut with_derivations = 0usize;
    for ordering in &orderings {
        for mask in 0u32..64 {
            let labels: Vec<SpaceLabel> = ordering
                .iter()
                .enumerate()
                .map(|(slot, &i)| {
                    if mask & (1 << slot) != 0 {
                        base[i].reversed()
                    } else {
                        base[i]
                    }
                })
                .collect();
            let word = RWord::new(labels)?;
            words_tested += 1;
            let count = derive_all(&word)?.len();
            if count == 0 {
                continue;
            }
            with_derivations += 1;
            if count >= 2 {
                let sig = scan_signature(&word);
                let entry = groups.entry(sig).or_insert((0, count));
                entry.0 += 1;
                if entry.1 != count {
                    return Err(WordError::Generation(format!(
                        "inconsistent derivation count within a scan group near {word}"
                    )));
                }
            }
        }
    }

    let groups = groups
        .into_iter()
        .map(|(representative, (members, derivations_per_word))| ScanGroup {
            representative,
            members,
            derivations_per_word,
        })
        .collect();
    Ok(ScanReport { words_tested, words_with_complete_derivations: with_derivations, groups })
}
