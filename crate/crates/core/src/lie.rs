//! Bases, brackets and symbolic commutator matrices of `g^≺(P)` (nilpotent)
//! and `g(P)` (solvable).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// The matrix unit `E_{row,col}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct BasisElement {
    pub row: usize,
    pub col: usize,
}

impl BasisElement {
    pub const fn new(row: usize, col: usize) -> Self {
        BasisElement { row, col }
    }
}

impl From<(usize, usize)> for BasisElement {
    fn from((row, col): (usize, usize)) -> Self {
        BasisElement { row, col }
    }
}

impl From<BasisElement> for (usize, usize) {
    fn from(e: BasisElement) -> Self {
        (e.row, e.col)
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E_{{{},{}}}", self.row, self.col)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Strictly upper triangular: `E_{i,j}` with `i ≺ j`.
    #[default]
    Nilpotent,
    /// Diagonal elements included: `E_{i,j}` with `i ⪯ j`.
    Solvable,
}

impl Variant {
    pub fn contains(self, poset: &Poset, e: BasisElement) -> bool {
        match self {
            Variant::Nilpotent => poset.lt(e.row, e.col),
            Variant::Solvable => poset.le(e.row, e.col),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelOrder {
    /// Rows and columns both in basis order.
    #[default]
    Lexicographic,
    /// The height-two block ordering: rows list `B_p` blocks, then `B^p`
    /// blocks, then extremal pairs; columns list `B^p` blocks first, then
    /// `B_p`, then extremal pairs. Anything left over follows
    /// lexicographically.
    HeightTwoBlocks,
}

/// Integer combination of basis symbols. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LinearForm {
    terms: BTreeMap<BasisElement, i64>,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coef: i64, e: BasisElement) -> Self {
        let mut f = Self::zero();
        f.add_term(coef, e);
        f
    }

    pub fn add_term(&mut self, coef: i64, e: BasisElement) {
        let c = self.terms.entry(e).or_insert(0);
        *c += coef;
        if *c == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisElement, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coefficient(&self, e: BasisElement) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        LinearForm {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn plus(&self, other: &LinearForm) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(c, e);
        }
        out
    }

    fn retain(mut self, keep: impl Fn(BasisElement) -> bool) -> Self {
        self.terms.retain(|&e, _| keep(e));
        self
    }

    /// Renders as `-E_{1,5}`, `2E_{1,2}`, `E_{1,1} - E_{2,2}`, or `0`.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let sym = format!("E_{{{},{}}}", name(e.row), name(e.col));
            let mag = match c.abs() {
                1 => String::new(),
                m => m.to_string(),
            };
            match (k, c < 0) {
                (0, false) => out.push_str(&format!("{mag}{sym}")),
                (0, true) => out.push_str(&format!("-{mag}{sym}")),
                (_, false) => out.push_str(&format!(" + {mag}{sym}")),
                (_, true) => out.push_str(&format!(" - {mag}{sym}")),
            }
        }
        out
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|p| p.to_string()))
    }
}

/// `[E_{a,b}, E_{c,d}] = δ_{bc} E_{a,d} − δ_{da} E_{c,b}`.
pub fn bracket(x: BasisElement, y: BasisElement) -> LinearForm {
    let mut out = LinearForm::zero();
    if x.col == y.row {
        out.add_term(1, BasisElement::new(x.row, y.col));
    }
    if y.col == x.row {
        out.add_term(-1, BasisElement::new(y.row, x.col));
    }
    out
}

/// Bracket restricted to the basis of the given algebra.
pub fn bracket_in(poset: &Poset, variant: Variant, x: BasisElement, y: BasisElement) -> LinearForm {
    bracket(x, y).retain(|e| variant.contains(poset, e))
}

/// `{E_{i,j} : i ≺ j}` in lexicographic order.
pub fn nilpotent_basis(poset: &Poset) -> Vec<BasisElement> {
    poset
        .relations()
        .map(|(i, j)| BasisElement::new(i, j))
        .collect()
}

/// `{E_{i,j} : i ⪯ j}` in lexicographic order.
pub fn solvable_basis(poset: &Poset) -> Vec<BasisElement> {
    let mut basis: Vec<_> = poset
        .elements()
        .map(|p| BasisElement::new(p, p))
        .chain(nilpotent_basis(poset))
        .collect();
    basis.sort();
    basis
}

pub fn basis(poset: &Poset, variant: Variant) -> Vec<BasisElement> {
    match variant {
        Variant::Nilpotent => nilpotent_basis(poset),
        Variant::Solvable => solvable_basis(poset),
    }
}

/// Row and column label orders of the block ordering.
pub fn height_two_block_order(
    poset: &Poset,
    variant: Variant,
) -> (Vec<BasisElement>, Vec<BasisElement>) {
    let all = basis(poset, variant);
    let interior = poset.interior();
    let profiles: Vec<_> = interior
        .iter()
        .map(|&p| poset.up_down(p).expect("interior element is in range"))
        .collect();
    let lower: Vec<_> = profiles.iter().flat_map(|pr| pr.b_lower.clone()).collect();
    let upper: Vec<_> = profiles.iter().flat_map(|pr| pr.b_upper.clone()).collect();
    let extremal: Vec<_> = all
        .iter()
        .copied()
        .filter(|e| e.row != e.col && poset.is_extremal(e.row) && poset.is_extremal(e.col))
        .collect();

    let assemble = |first: &[BasisElement], second: &[BasisElement]| {
        let mut seen = BTreeSet::new();
        let mut order = Vec::with_capacity(all.len());
        for &e in first.iter().chain(second).chain(&extremal).chain(&all) {
            if seen.insert(e) {
                order.push(e);
            }
        }
        order
    };
    (assemble(&lower, &upper), assemble(&upper, &lower))
}

/// Square matrix of linear forms with labeled rows and columns.
///
/// Row and column labels are permutations of one label set, so entry
/// `(x, y)` always has a mirror entry `(y, x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicMatrix {
    row_labels: Vec<BasisElement>,
    col_labels: Vec<BasisElement>,
    // row-major
    entries: Vec<LinearForm>,
}

impl SymbolicMatrix {
    pub fn new(
        row_labels: Vec<BasisElement>,
        col_labels: Vec<BasisElement>,
        entries: Vec<Vec<LinearForm>>,
    ) -> Result<Self> {
        let dim = row_labels.len();
        if col_labels.len() != dim {
            return Err(Error::InvalidMatrix(format!(
                "{} row labels but {} column labels",
                dim,
                col_labels.len()
            )));
        }
        let mut rows_sorted = row_labels.clone();
        let mut cols_sorted = col_labels.clone();
        rows_sorted.sort();
        cols_sorted.sort();
        if rows_sorted != cols_sorted || rows_sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMatrix(
                "row and column labels must be the same set without repeats".into(),
            ));
        }
        if entries.len() != dim || entries.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix(format!("entries are not {dim}x{dim}")));
        }
        Ok(SymbolicMatrix {
            row_labels,
            col_labels,
            entries: entries.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.row_labels.len()
    }

    pub fn row_labels(&self) -> &[BasisElement] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[BasisElement] {
        &self.col_labels
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinearForm {
        &self.entries[i * self.cols() + j]
    }

    pub fn entry_by_label(&self, row: BasisElement, col: BasisElement) -> Option<&LinearForm> {
        let i = self.row_labels.iter().position(|&e| e == row)?;
        let j = self.col_labels.iter().position(|&e| e == col)?;
        Some(self.entry(i, j))
    }

    /// `entry(x, y) + entry(y, x) = 0` for every label pair, with a zero
    /// diagonal.
    pub fn is_skew_symmetric(&self) -> bool {
        let col_pos: HashMap<_, _> = self
            .col_labels
            .iter()
            .enumerate()
            .map(|(j, &e)| (e, j))
            .collect();
        let row_pos: HashMap<_, _> = self
            .row_labels
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                let (x, y) = (self.row_labels[i], self.col_labels[j]);
                let mirror = self.entry(row_pos[&y], col_pos[&x]);
                self.entry(i, j).plus(mirror).is_zero()
            })
        })
    }

    /// Distinct symbols appearing in entries, sorted.
    pub fn symbols(&self) -> Vec<BasisElement> {
        let set: BTreeSet<_> = self
            .entries
            .iter()
            .flat_map(|f| f.terms().map(|(e, _)| e))
            .collect();
        set.into_iter().collect()
    }

    /// Same matrix with all-zero rows and columns dropped.
    pub fn without_zero_lines(&self) -> SymbolicMatrix {
        let n = self.dim();
        let keep_rows: Vec<usize> = (0..n)
            .filter(|&i| (0..n).any(|j| !self.entry(i, j).is_zero()))
            .collect();
        let keep_cols: Vec<usize> = (0..n)
            .filter(|&j| (0..n).any(|i| !self.entry(i, j).is_zero()))
            .collect();
        SymbolicMatrix {
            row_labels: keep_rows.iter().map(|&i| self.row_labels[i]).collect(),
            col_labels: keep_cols.iter().map(|&j| self.col_labels[j]).collect(),
            entries: keep_rows
                .iter()
                .flat_map(|&i| keep_cols.iter().map(move |&j| (i, j)))
                .map(|(i, j)| self.entry(i, j).clone())
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    /// Bordered text rendering with labels on top and left.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        let label = |e: &BasisElement| format!("E_{{{},{}}}", name(e.row), name(e.col));
        let header: Vec<String> = self.col_labels.iter().map(label).collect();
        let body: Vec<Vec<String>> = (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| self.entry(i, j).render(name))
                    .collect()
            })
            .collect();
        let left: Vec<String> = self.row_labels.iter().map(label).collect();
        let left_w = left.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols())
            .map(|j| {
                body.iter()
                    .map(|r| r[j].len())
                    .chain([header[j].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |first: &str, cells: &[String]| {
            let mut s = format!("{first:<left_w$}");
            for (c, w) in cells.iter().zip(&widths) {
                s.push_str(&format!("  {c:>w$}"));
            }
            s.trim_end().to_string() + "\n"
        };
        out.push_str(&line("", &header));
        for (l, r) in left.iter().zip(&body) {
            out.push_str(&line(l, r));
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            labels: self.row_labels.clone(),
            col_labels: (self.col_labels != self.row_labels).then(|| self.col_labels.clone()),
            entries: (0..self.rows())
                .map(|i| {
                    (0..self.cols())
                        .map(|j| self.entry(i, j).terms().map(|(e, c)| (c, e)).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(json: MatrixJson) -> Result<Self> {
        let cols = json.col_labels.unwrap_or_else(|| json.labels.clone());
        let entries = json
            .entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|cell| {
                        let mut f = LinearForm::zero();
                        for (c, e) in cell {
                            f.add_term(c, e);
                        }
                        f
                    })
                    .collect()
            })
            .collect();
        SymbolicMatrix::new(json.labels, cols, entries)
    }
}

/// Machine-readable matrix dump; each cell is a list of
/// `[coefficient, [i, j]]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub labels: Vec<BasisElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_labels: Option<Vec<BasisElement>>,
    pub entries: Vec<Vec<Vec<(i64, BasisElement)>>>,
}

/// `C(g)`: entry `(x, y) = [x, y]` over the chosen label order.
pub fn commutator_matrix(poset: &Poset, variant: Variant, order: LabelOrder) -> SymbolicMatrix {
    let (rows, cols) = match order {
        LabelOrder::Lexicographic => {
            let b = basis(poset, variant);
            (b.clone(), b)
        }
        LabelOrder::HeightTwoBlocks => height_two_block_order(poset, variant),
    };
    let entries = rows
        .iter()
        .flat_map(|&x| cols.iter().map(move |&y| (x, y)))
        .map(|(x, y)| bracket_in(poset, variant, x, y))
        .collect();
    SymbolicMatrix {
        row_labels: rows,
        col_labels: cols,
        entries,
    }
}
