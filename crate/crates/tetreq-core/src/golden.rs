//! Frozen reference renderings, kept under version control.
//!
//! Regenerated output must match these byte for byte; `tetreq derive` and
//! the self-check battery both diff against them.

/// The eight raw equations, one per line, as `name: lhs = rhs`.
pub const EQUATIONS_RAW: &str = include_str!("../golden/equations_raw.txt");

/// The eight equations in shorthand form after normalization.
pub const EQUATIONS_SHORTHAND: &str = include_str!("../golden/equations_shorthand.txt");

/// The eight equations renumbered to the geometric (sweep) labeling,
/// `Q` factors dropped.
pub const EQUATIONS_GEOMETRIC: &str = include_str!("../golden/equations_geometric.txt");

/// The classic single-index tetrahedron equation.
pub const CLASSIC: &str = include_str!("../golden/classic.txt");

/// The eight displayed representatives of `B(4,2)`, one chain per line.
pub const BRUHAT_B42: &str = include_str!("../golden/bruhat_b42.txt");

/// Named golden documents, for diffing by name.
pub fn all() -> [(&'static str, &'static str); 5] {
    [
        ("equations_raw.txt", EQUATIONS_RAW),
        ("equations_shorthand.txt", EQUATIONS_SHORTHAND),
        ("equations_geometric.txt", EQUATIONS_GEOMETRIC),
        ("classic.txt", CLASSIC),
        ("bruhat_b42.txt", BRUHAT_B42),
    ]
}

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::word::{parse_equation, TetraEquation, WordError};

/// Compare generated equations against a golden document, letter for letter
/// after canonical ordering of commuting `Q` runs on both sides. Returns
/// mismatch descriptions; empty means the documents agree.
pub fn diff_equations(
    eqs: &[TetraEquation],
    golden_name: &str,
    golden: &str,
) -> Result<Vec<String>, WordError> {
    let mut out = Vec::new();
    let golden_lines: Vec<&str> = golden.lines().collect();
    if eqs.len() != golden_lines.len() {
        out.push(format!(
            "{golden_name}: expected {} equations, generated {}",
            golden_lines.len(),
            eqs.len()
        ));
        return Ok(out);
    }
    for (eq, line) in eqs.iter().zip(&golden_lines) {
        let want = parse_equation(line)?;
        if eq.name != want.name {
            out.push(format!(
                "{golden_name}: equation {} where {} was expected",
                eq.name, want.name
            ));
            continue;
        }
        let same = eq.lhs.canonical_q_form() == want.lhs.canonical_q_form()
            && eq.rhs.canonical_q_form() == want.rhs.canonical_q_form();
        if !same {
            out.push(format!(
                "{golden_name}: equation {} differs\n  generated {}\n  golden    {}",
                eq.name,
                eq.render(),
                line
            ));
        }
    }
    Ok(out)
}

/// Compare rendered lines against a golden document byte for byte.
pub fn diff_lines(got: &[String], golden_name: &str, golden: &str) -> Vec<String> {
    let golden_lines: Vec<&str> = golden.lines().collect();
    let mut out = Vec::new();
    if got.len() != golden_lines.len() {
        out.push(format!(
            "{golden_name}: expected {} lines, generated {}",
            golden_lines.len(),
            got.len()
        ));
        return out;
    }
    for (i, (a, b)) in got.iter().zip(&golden_lines).enumerate() {
        if a != b {
            out.push(format!(
                "{golden_name}: line {} differs\n  generated {a}\n  golden    {b}",
                i + 1
            ));
        }
    }
    out
}
