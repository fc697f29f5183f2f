//! Acceptance gate: one `criterion N: PASS|FAIL` line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use lie_poset_index::lie::{LabelOrder, LinearForm, SymbolicMatrix, Variant};
use lie_poset_index::rank::{rank, RankMethod};
use lie_poset_index::reduction::{default_names, reduce_once_named, reduce_to_height2, Case};
use lie_poset_index::verify::{sweep, Check, OracleMode, SweepConfig};
use lie_poset_index::{
    build_poset, commutator_matrix, exact_rank, index_via_rank, nilpotent_index, randomized_rank,
    solvable_index_h2, BasisElement, Poset,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOMIZED: RankMethod = RankMethod::Randomized { trials: 3, seed: 0 };

fn e(i: usize, j: usize) -> BasisElement {
    BasisElement::new(i, j)
}

fn example_poset() -> Poset {
    build_poset(6, &[(1, 3), (2, 3), (3, 4), (3, 5), (3, 6)]).unwrap()
}

fn height_three_poset() -> Poset {
    build_poset(7, &[(1, 3), (2, 3), (3, 5), (5, 6), (5, 7), (2, 4), (4, 7)]).unwrap()
}

/// Prints the verdict line, then fails the test if anything was off.
fn verdict(n: u32, checks: &[(&str, bool)], elapsed: Duration, limit: Duration) {
    let in_time = elapsed < limit;
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| *name)
        .collect();
    let ok = failed.is_empty() && in_time;
    println!(
        "criterion {n}: {} ({:.3}s, limit {}s){}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if failed.is_empty() {
            String::new()
        } else {
            format!(" failed: {}", failed.join(", "))
        }
    );
    assert!(failed.is_empty(), "criterion {n} failed: {failed:?}");
    assert!(in_time, "criterion {n} took {elapsed:?}, limit {limit:?}");
}

#[test]
fn criterion_1_nilpotent_example() {
    let start = Instant::now();
    let p = example_poset();
    let m = commutator_matrix(&p, Variant::Nilpotent, LabelOrder::Lexicographic);
    let exact = exact_rank(&m).unwrap();
    let randomized = randomized_rank(&m, 3, 0);
    let checks = [
        ("formula = 7", nilpotent_index(&p).index == 7),
        (
            "exact oracle = 7",
            index_via_rank(&p, Variant::Nilpotent, RankMethod::Exact).unwrap() == 7,
        ),
        (
            "randomized oracle = 7",
            index_via_rank(&p, Variant::Nilpotent, RANDOMIZED).unwrap() == 7,
        ),
        ("exact rank = 4", exact.rank == 4),
        ("randomized rank = 4", randomized.rank == 4),
    ];
    verdict(1, &checks, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_2_solvable_example() {
    let start = Instant::now();
    let p = example_poset();
    let checks = [
        ("formula = 3", solvable_index_h2(&p).unwrap().index == 3),
        (
            "exact oracle = 3",
            index_via_rank(&p, Variant::Solvable, RankMethod::Exact).unwrap() == 3,
        ),
        (
            "randomized oracle = 3",
            index_via_rank(&p, Variant::Solvable, RANDOMIZED).unwrap() == 3,
        ),
    ];
    verdict(2, &checks, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_3_upper_triangular_sl2() {
    let start = Instant::now();
    // x1 ↦ E_{1,1}, x2 ↦ E_{1,2}; [x1, x2] = 2 x2
    let (x1, x2) = (e(1, 1), e(1, 2));
    let labels = vec![x1, x2];
    let m = SymbolicMatrix::new(
        labels.clone(),
        labels,
        vec![
            vec![LinearForm::zero(), LinearForm::term(2, x2)],
            vec![LinearForm::term(-2, x2), LinearForm::zero()],
        ],
    )
    .unwrap();
    let r = exact_rank(&m).unwrap().rank;
    let checks = [("exact rank = 2", r == 2), ("index = 0", m.dim() - r == 0)];
    verdict(3, &checks, start.elapsed(), Duration::from_secs(1));
}

/// Golden height-two block-ordered matrix, as `row: cell cell ...` with the
/// column order on the first line. Cells are `0`, `a,b` or `-a,b`.
const GOLDEN_BLOCKS: &str = "
cols 3,4 3,5 3,6 1,3 2,3 1,4 1,5 1,6 2,4 2,5 2,6
1,3: 1,4 1,5 1,6 0 0 0 0 0 0 0 0
2,3: 2,4 2,5 2,6 0 0 0 0 0 0 0 0
3,4: 0 0 0 -1,4 -2,4 0 0 0 0 0 0
3,5: 0 0 0 -1,5 -2,5 0 0 0 0 0 0
3,6: 0 0 0 -1,6 -2,6 0 0 0 0 0 0
1,4: 0 0 0 0 0 0 0 0 0 0 0
1,5: 0 0 0 0 0 0 0 0 0 0 0
1,6: 0 0 0 0 0 0 0 0 0 0 0
2,4: 0 0 0 0 0 0 0 0 0 0 0
2,5: 0 0 0 0 0 0 0 0 0 0 0
2,6: 0 0 0 0 0 0 0 0 0 0 0
";

fn parse_element(s: &str) -> BasisElement {
    let (a, b) = s.split_once(',').unwrap();
    e(a.parse().unwrap(), b.parse().unwrap())
}

fn parse_cell(s: &str) -> LinearForm {
    match s {
        "0" => LinearForm::zero(),
        _ => match s.strip_prefix('-') {
            Some(rest) => LinearForm::term(-1, parse_element(rest)),
            None => LinearForm::term(1, parse_element(s)),
        },
    }
}

#[test]
fn criterion_4_block_ordered_golden_matrix() {
    let start = Instant::now();
    let mut lines = GOLDEN_BLOCKS.trim().lines();
    let cols: Vec<BasisElement> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .skip(1)
        .map(parse_element)
        .collect();
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for line in lines {
        let (label, rest) = line.split_once(':').unwrap();
        rows.push(parse_element(label));
        cells.push(rest.split_whitespace().map(parse_cell).collect::<Vec<_>>());
    }
    let golden = SymbolicMatrix::new(rows.clone(), cols.clone(), cells).unwrap();
    let m = commutator_matrix(
        &example_poset(),
        Variant::Nilpotent,
        LabelOrder::HeightTwoBlocks,
    );
    let mismatched = (0..m.rows().min(golden.rows()))
        .flat_map(|i| (0..m.cols().min(golden.cols())).map(move |j| (i, j)))
        .filter(|&(i, j)| m.entry(i, j) != golden.entry(i, j))
        .count();
    let checks = [
        ("row labels", m.row_labels() == rows.as_slice()),
        ("column labels", m.col_labels() == cols.as_slice()),
        ("cells", mismatched == 0 && m == golden),
    ];
    verdict(4, &checks, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_5_height_reduction_step() {
    let start = Instant::now();
    let p = height_three_poset();
    let step = reduce_once_named(&p, &default_names(&p)).unwrap();
    // right-hand diagram, by name
    let expected_covers = [
        ("1", "5"),
        ("5_3", "5"),
        ("2", "5"),
        ("5", "6"),
        ("5", "7"),
        ("1", "3"),
        ("2", "3"),
        ("3", "6"),
        ("3", "7"),
        ("3", "5'"),
        ("2", "4"),
        ("4", "7"),
    ];
    let label = |name: &str| {
        step.after_names
            .iter()
            .position(|n| n == name)
            .map(|k| k + 1)
    };
    let all_named = expected_covers
        .iter()
        .all(|(a, b)| label(a).is_some() && label(b).is_some());
    let isomorphic = all_named && {
        let gens: Vec<(usize, usize)> = expected_covers
            .iter()
            .map(|(a, b)| (label(a).unwrap(), label(b).unwrap()))
            .collect();
        build_poset(step.after.n(), &gens).is_ok_and(|q| q == step.after)
    };
    let rank_of = |q: &Poset| {
        exact_rank(&commutator_matrix(
            q,
            Variant::Nilpotent,
            LabelOrder::Lexicographic,
        ))
        .unwrap()
        .rank
    };
    let checks = [
        ("case 1 at 5", step.case == Case::One && step.pivot == 5),
        ("nine elements", step.after.n() == 9),
        ("height two", step.after.height() == 2),
        ("isomorphic to expected diagram", isomorphic),
        (
            "rank preserved",
            rank_of(&step.before) == rank_of(&step.after),
        ),
    ];
    verdict(5, &checks, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_6_exhaustive_sweep() {
    let start = Instant::now();
    let config = SweepConfig {
        checks: vec![
            Check::NilpotentFormula,
            Check::LowerBound,
            Check::Positivity,
            Check::HeightOne,
            Check::SolvableFormula,
            Check::Reduction,
        ],
        oracle: OracleMode::Randomized {
            trials: 3,
            seed: 0,
            spot_check_every: 0,
        },
        ..SweepConfig::default()
    };
    let reports: Vec<_> = (1..=5).map(|n| sweep(n, &config).unwrap()).collect();
    let total: usize = reports.iter().map(|r| r.poset_count).sum();
    let mismatches: usize = reports.iter().map(|r| r.mismatches.len()).sum();
    for r in &reports {
        for m in &r.mismatches {
            println!(
                "  mismatch {:?}: {:?} formula {} oracle {}",
                m.check,
                m.poset.to_text(),
                m.formula,
                m.oracle
            );
        }
    }
    let ran = |c: Check| reports.iter().map(|r| r.checks_run[&c]).sum::<usize>() > 0;
    let checks = [
        ("357 posets at n = 5", reports[4].poset_count == 357),
        ("407 posets for n = 1..5", total == 407),
        (
            "every check exercised",
            config.checks.iter().all(|&c| ran(c)),
        ),
        ("zero mismatches", mismatches == 0),
    ];
    verdict(6, &checks, start.elapsed(), Duration::from_secs(120));
}

/// Random naturally labeled poset: each `i < j` is a generator with
/// probability `density`.
fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Poset {
    let gens: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    build_poset(n, &gens).unwrap()
}

#[test]
fn criterion_7_property_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut skew = true;
    let mut even = true;
    let mut parity = true;
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.1..0.7);
        let p = random_poset(&mut rng, n, density);
        for variant in [Variant::Nilpotent, Variant::Solvable] {
            let m = commutator_matrix(&p, variant, LabelOrder::Lexicographic);
            skew &= m.is_skew_symmetric();
            let r = rank(&m, RANDOMIZED).unwrap().rank;
            even &= r.is_multiple_of(2);
            if variant == Variant::Nilpotent {
                let index = m.dim() - r;
                parity &= index % 2 == p.rel_count() % 2 && index == nilpotent_index(&p).index;
            }
        }
    }

    let mut updown = true;
    let mut sections = true;
    let mut interior = true;
    let mut tall = 0;
    while tall < 100 {
        let n = rng.gen_range(4..=8);
        let density = rng.gen_range(0.3..0.8);
        let p = random_poset(&mut rng, n, density);
        if p.height() < 3 {
            continue;
        }
        tall += 1;
        let (_, steps) = reduce_to_height2(&p);
        for step in &steps {
            let h = step.before.height();
            sections &=
                step.after.middle_sections_at(h).len() < step.before.middle_sections_at(h).len();
            let mut mapped: Vec<usize> = step
                .before
                .interior()
                .iter()
                .map(|&q| step.map(q))
                .collect();
            mapped.sort_unstable();
            interior &= mapped == step.after.interior();
            for q in step.before.interior() {
                let (a, b) = (
                    step.before.up_down(q).unwrap(),
                    step.after.up_down(step.map(q)).unwrap(),
                );
                updown &= a.d == b.d && a.u == b.u;
            }
        }
    }
    let checks = [
        ("skew-symmetry", skew),
        ("even rank", even),
        ("index parity", parity),
        ("interior preserved", interior),
        ("up/down counts preserved", updown),
        ("middle sections decrease", sections),
    ];
    verdict(7, &checks, start.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_8_method_agreement() {
    let start = Instant::now();
    let config = SweepConfig {
        checks: vec![Check::MethodAgreement],
        ..SweepConfig::default()
    };
    let reports: Vec<_> = (1..=5).map(|n| sweep(n, &config).unwrap()).collect();
    let compared: usize = reports
        .iter()
        .map(|r| r.checks_run[&Check::MethodAgreement])
        .sum();
    let disagreements: usize = reports.iter().map(|r| r.mismatches.len()).sum();
    // both commutator matrices of every poset
    let checks = [
        ("every matrix compared", compared == 2 * 407),
        ("zero disagreements", disagreements == 0),
    ];
    verdict(8, &checks, start.elapsed(), Duration::from_secs(120));
}
