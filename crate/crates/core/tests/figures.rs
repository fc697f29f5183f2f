//! Golden matrices for the height-three example before and after one
//! reduction step, zero rows and columns removed.

use lie_poset_index::lie::{LabelOrder, LinearForm, Variant};
use lie_poset_index::reduction::{default_names, reduce_once_named};
use lie_poset_index::{build_poset, commutator_matrix, BasisElement, Poset};

fn height_three_poset() -> Poset {
    build_poset(7, &[(1, 3), (2, 3), (3, 5), (5, 6), (5, 7), (2, 4), (4, 7)]).unwrap()
}

// Nonzero cells as (row, col, sign, entry), elements named.
type Cell = (&'static str, &'static str, i64, &'static str);

const BEFORE: &[Cell] = &[
    ("1,5", "5,6", 1, "1,6"),
    ("1,5", "5,7", 1, "1,7"),
    ("2,5", "5,6", 1, "2,6"),
    ("2,5", "5,7", 1, "2,7"),
    ("3,6", "1,3", -1, "1,6"),
    ("3,6", "2,3", -1, "2,6"),
    ("3,7", "1,3", -1, "1,7"),
    ("3,7", "2,3", -1, "2,7"),
    ("3,5", "5,6", 1, "3,6"),
    ("3,5", "5,7", 1, "3,7"),
    ("3,5", "1,3", -1, "1,5"),
    ("3,5", "2,3", -1, "2,5"),
    ("2,4", "4,7", 1, "2,7"),
    ("4,7", "2,4", -1, "2,7"),
    ("5,6", "3,5", -1, "3,6"),
    ("5,6", "1,5", -1, "1,6"),
    ("5,6", "2,5", -1, "2,6"),
    ("5,7", "3,5", -1, "3,7"),
    ("5,7", "1,5", -1, "1,7"),
    ("5,7", "2,5", -1, "2,7"),
    ("1,3", "3,5", 1, "1,5"),
    ("1,3", "3,6", 1, "1,6"),
    ("1,3", "3,7", 1, "1,7"),
    ("2,3", "3,5", 1, "2,5"),
    ("2,3", "3,6", 1, "2,6"),
    ("2,3", "3,7", 1, "2,7"),
];

const AFTER: &[Cell] = &[
    ("1,5", "5,6", 1, "1,6"),
    ("1,5", "5,7", 1, "1,7"),
    ("2,5", "5,6", 1, "2,6"),
    ("2,5", "5,7", 1, "2,7"),
    ("3,6", "1,3", -1, "1,6"),
    ("3,6", "2,3", -1, "2,6"),
    ("3,7", "1,3", -1, "1,7"),
    ("3,7", "2,3", -1, "2,7"),
    ("5_3,5", "5,6", 1, "5_3,6"),
    ("5_3,5", "5,7", 1, "5_3,7"),
    ("3,5'", "1,3", -1, "1,5'"),
    ("3,5'", "2,3", -1, "2,5'"),
    ("2,4", "4,7", 1, "2,7"),
    ("4,7", "2,4", -1, "2,7"),
    ("5,6", "5_3,5", -1, "5_3,6"),
    ("5,6", "1,5", -1, "1,6"),
    ("5,6", "2,5", -1, "2,6"),
    ("5,7", "5_3,5", -1, "5_3,7"),
    ("5,7", "1,5", -1, "1,7"),
    ("5,7", "2,5", -1, "2,7"),
    ("1,3", "3,5'", 1, "1,5'"),
    ("1,3", "3,6", 1, "1,6"),
    ("1,3", "3,7", 1, "1,7"),
    ("2,3", "3,5'", 1, "2,5'"),
    ("2,3", "3,6", 1, "2,6"),
    ("2,3", "3,7", 1, "2,7"),
];

/// Compares the zero-line-free commutator matrix against `cells`, which
/// must list every nonzero entry.
fn assert_matches(p: &Poset, names: &[String], cells: &[Cell], nonzero_lines: usize) {
    let label = |name: &str| names.iter().position(|n| n == name).unwrap() + 1;
    let element = |s: &str| {
        let (a, b) = s.split_once(',').unwrap();
        BasisElement::new(label(a), label(b))
    };
    let m =
        commutator_matrix(p, Variant::Nilpotent, LabelOrder::Lexicographic).without_zero_lines();
    assert_eq!(m.rows(), nonzero_lines);
    assert_eq!(m.cols(), nonzero_lines);
    for &(row, col, sign, value) in cells {
        assert_eq!(
            m.entry_by_label(element(row), element(col)),
            Some(&LinearForm::term(sign, element(value))),
            "cell ({row}) x ({col})"
        );
    }
    let nonzero = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !m.entry(i, j).is_zero())
        .count();
    assert_eq!(nonzero, cells.len());
}

#[test]
fn height_three_matrix_without_zero_lines() {
    let p = height_three_poset();
    assert_matches(&p, &default_names(&p), BEFORE, 11);
}

#[test]
fn reduced_matrix_without_zero_lines() {
    let p = height_three_poset();
    let step = reduce_once_named(&p, &default_names(&p)).unwrap();
    assert_matches(&step.after, &step.after_names, AFTER, 12);
}
