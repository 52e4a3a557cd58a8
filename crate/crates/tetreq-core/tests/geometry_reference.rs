//! The reference arrangement against the combinatorial and algebraic
//! modules: sweep orders cover all eight classes, named directions land in
//! the displayed classes, and the geometric rule reproduces the geometric
//! form of each equation.

use tetreq_core::bruhat::{bruhat_classes, class_of, is_admissible, Tuple};
use tetreq_core::geometry::*;
use tetreq_core::golden;
use tetreq_core::word::{
    generate_equations, geometric_form, parse_equation, LetterKind, OpLetter,
};

fn chain_from_line(line: &str) -> Vec<Tuple> {
    line.split('.')
        .map(|t| {
            let b = t.as_bytes();
            Tuple::new(vec![b[0] - b'0', b[1] - b'0']).unwrap()
        })
        .collect()
}

#[test]
fn reference_covers_all_eight_classes() {
    let arr = reference_arrangement();
    let sectors = classify_orders(&arr).unwrap();
    assert_eq!(sectors.len(), 14);
    let mut reps: Vec<&str> = sectors.iter().map(|s| s.class_representative.as_str()).collect();
    reps.sort_unstable();
    reps.dedup();
    assert_eq!(reps.len(), 8);
    for s in &sectors {
        assert!(is_admissible(&s.chain, 4, 2).unwrap());
    }
}

#[test]
fn named_directions_hit_the_displayed_classes() {
    // the displayed class list corresponds to directions
    // 1r, 1, 2r, 5r, 5, 2, 3, 3r in that order
    let direction_for_display: [&str; 8] = ["1r", "1", "2r", "5r", "5", "2", "3", "3r"];
    let arr = reference_arrangement();
    let classes = bruhat_classes(4, 2).unwrap();
    let directions = reference_directions();
    for (display_line, dir_name) in golden::BRUHAT_B42.lines().zip(direction_for_display) {
        let theta = directions.iter().find(|(n, _)| *n == dir_name).unwrap().1;
        let sw = sweep_order(&arr, theta).unwrap();
        let chain = sw.complement_chain(&arr);
        let displayed = chain_from_line(display_line);
        let class_of_direction = class_of(&classes, &chain).unwrap();
        let class_of_display = class_of(&classes, &displayed).unwrap();
        assert_eq!(
            class_of_direction.representative, class_of_display.representative,
            "direction {dir_name} does not land in the class of {display_line}"
        );
    }
}

#[test]
fn direction_letters_match_the_geometric_form() {
    // direction d selects the equation whose name contains d; its letters,
    // ordered by line triple, equal either side of the geometric form
    let pairing = [
        ("1", "1,6"),
        ("2", "2,8r"),
        ("3", "3,4r"),
        ("5", "5,7r"),
        ("1r", "1r,6r"),
        ("2r", "8,2r"),
        ("3r", "4,3r"),
        ("5r", "7,5r"),
    ];
    let arr = reference_arrangement();
    let equations = generate_equations().unwrap().equations;
    let directions = reference_directions();
    let triple_key = |l: &OpLetter| l.points();
    for (dir_name, eq_name) in pairing {
        let theta = directions.iter().find(|(n, _)| *n == dir_name).unwrap().1;
        let letters = equation_from_direction(&arr, theta).unwrap();
        let eq = equations.iter().find(|e| e.name == eq_name).unwrap();
        let geo = geometric_form(eq).unwrap();
        let mut expect = geo.lhs.letters().to_vec();
        expect.sort_by_key(triple_key);
        assert_eq!(letters, expect, "direction {dir_name} vs equation {eq_name}");
    }
}

#[test]
fn direction_1r_is_all_stilde() {
    let arr = reference_arrangement();
    let theta = reference_directions().iter().find(|(n, _)| *n == "1r").unwrap().1;
    let letters = equation_from_direction(&arr, theta).unwrap();
    assert_eq!(letters.len(), 4);
    assert!(letters.iter().all(|l| l.kind == LetterKind::Stilde));
}

#[test]
fn golden_letters_parse_against_geometric_golden() {
    // cross-check: the per-direction letters also match the golden
    // geometric document parsed back from text
    let arr = reference_arrangement();
    let directions = reference_directions();
    let theta = directions.iter().find(|(n, _)| *n == "2").unwrap().1;
    let letters = equation_from_direction(&arr, theta).unwrap();
    let line = golden::EQUATIONS_GEOMETRIC
        .lines()
        .find(|l| l.starts_with("2,8r:"))
        .unwrap();
    let eq = parse_equation(line).unwrap();
    let mut expect = eq.lhs.letters().to_vec();
    expect.sort_by_key(|l| l.points());
    assert_eq!(letters, expect);
}

#[test]
fn antipodal_named_directions_reverse_chains() {
    let arr = reference_arrangement();
    let directions = reference_directions();
    for base in ["1", "2", "3", "5"] {
        let fwd = directions.iter().find(|(n, _)| *n == base).unwrap().1;
        let bwd = directions
            .iter()
            .find(|(n, _)| n.strip_suffix('r') == Some(base))
            .unwrap()
            .1;
        let a = sweep_order(&arr, fwd).unwrap().complement_chain(&arr);
        let mut b = sweep_order(&arr, bwd).unwrap().complement_chain(&arr);
        b.reverse();
        assert_eq!(a, b);
    }
}
