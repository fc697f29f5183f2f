//! Finite naturally labeled posets on `{1, ..., n}` and the statistics the
//! index formulas consume.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::BasisElement;

/// A strict partial order on `{1, ..., n}` with `i < j` (as integers)
/// whenever `i` precedes `j`.
///
/// Always transitively closed. Construct through [`build_poset`] or
/// [`Poset::from_relations`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "PosetSpec", into = "PosetSpec")]
pub struct Poset {
    n: usize,
    // row-major n*n, less[(i-1)*n + (j-1)] is true iff i < j in the order
    less: Vec<bool>,
}

/// Wire form `{"n": 6, "relations": [[1,3], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetSpec {
    pub n: usize,
    #[serde(default)]
    pub relations: Vec<(usize, usize)>,
}

impl TryFrom<PosetSpec> for Poset {
    type Error = Error;

    fn try_from(spec: PosetSpec) -> Result<Self> {
        build_poset(spec.n, &spec.relations)
    }
}

impl From<Poset> for PosetSpec {
    fn from(p: Poset) -> Self {
        PosetSpec {
            n: p.n,
            relations: p.relations().collect(),
        }
    }
}

/// Transitive closure of `generators` as a poset on `{1, ..., n}`.
///
/// Generators may be covering relations or any strict relations.
pub fn build_poset(n: usize, generators: &[(usize, usize)]) -> Result<Poset> {
    let mut less = vec![false; n * n];
    for &(i, j) in generators {
        for label in [i, j] {
            if label == 0 || label > n {
                return Err(Error::OutOfRange { label, n });
            }
        }
        if i >= j {
            return Err(Error::NaturalityViolation(i, j));
        }
        less[(i - 1) * n + (j - 1)] = true;
    }
    close(n, &mut less);
    Ok(Poset { n, less })
}

// Natural labeling lets a single descending sweep finish the closure: when
// row i is processed every row j > i is already closed.
fn close(n: usize, less: &mut [bool]) {
    for i in (0..n).rev() {
        for j in i + 1..n {
            if less[i * n + j] {
                for k in j + 1..n {
                    if less[j * n + k] {
                        less[i * n + k] = true;
                    }
                }
            }
        }
    }
}

/// Every poset statistic used by the index formulas.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PosetStats {
    pub rel_count: usize,
    pub ext: Vec<usize>,
    pub rel_e: Vec<(usize, usize)>,
    pub height: usize,
    pub covers: Vec<(usize, usize)>,
    pub components: usize,
}

/// Up/down counts of a single element, plus the extremal witnesses
/// `B_p` (minimal elements below, as `E_{l,p}`) and `B^p` (maximal elements
/// above, as `E_{p,b}`).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UpDownProfile {
    pub p: usize,
    pub d: usize,
    pub u: usize,
    pub d_e: usize,
    pub u_e: usize,
    pub b_lower: Vec<BasisElement>,
    pub b_upper: Vec<BasisElement>,
}

/// A chain given as increasing labels.
pub type Chain = Vec<usize>;

impl Poset {
    /// Closure of an arbitrary relation set; same as [`build_poset`].
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        build_poset(n, relations)
    }

    pub fn antichain(n: usize) -> Self {
        Poset {
            n,
            less: vec![false; n * n],
        }
    }

    pub fn chain(n: usize) -> Self {
        let gens: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        build_poset(n, &gens).expect("chain generators are natural")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// `i ≺ j`. Labels outside `1..=n` are never related.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.less[(i - 1) * self.n + (j - 1)]
    }

    /// `i ⪯ j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        (i == j && i >= 1 && i <= self.n) || self.lt(i, j)
    }

    /// All strict relations in lexicographic order.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n * n)
            .filter(move |&k| self.less[k])
            .map(move |k| (k / n + 1, k % n + 1))
    }

    pub fn rel_count(&self) -> usize {
        self.less.iter().filter(|&&b| b).count()
    }

    pub fn below(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (1..p.min(self.n + 1)).filter(move |&q| self.lt(q, p))
    }

    pub fn above(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (p + 1..=self.n).filter(move |&q| self.lt(p, q))
    }

    pub fn is_minimal(&self, p: usize) -> bool {
        self.below(p).next().is_none()
    }

    pub fn is_maximal(&self, p: usize) -> bool {
        self.above(p).next().is_none()
    }

    pub fn is_extremal(&self, p: usize) -> bool {
        self.is_minimal(p) || self.is_maximal(p)
    }

    /// `Ext(P)`: minimal and maximal elements.
    pub fn ext(&self) -> Vec<usize> {
        self.elements().filter(|&p| self.is_extremal(p)).collect()
    }

    /// `P ∖ Ext(P)`.
    pub fn interior(&self) -> Vec<usize> {
        self.elements().filter(|&p| !self.is_extremal(p)).collect()
    }

    /// `Rel_E(P)`: strict relations between extremal elements.
    pub fn rel_e(&self) -> Vec<(usize, usize)> {
        self.relations()
            .filter(|&(a, b)| self.is_extremal(a) && self.is_extremal(b))
            .collect()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(a + 1..b).any(|c| self.lt(a, c) && self.lt(c, b))
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .filter(|&(a, b)| self.is_cover(a, b))
            .collect()
    }

    // longest chain ending at each element, counted in elements
    fn depths(&self) -> Vec<usize> {
        let mut depth = vec![1; self.n + 1];
        for j in 1..=self.n {
            depth[j] = 1 + self.below(j).map(|i| depth[i]).max().unwrap_or(0);
        }
        depth
    }

    // longest chain starting at each element, counted in elements
    fn tallness(&self) -> Vec<usize> {
        let mut tall = vec![1; self.n + 1];
        for i in (1..=self.n).rev() {
            tall[i] = 1 + self.above(i).map(|j| tall[j]).max().unwrap_or(0);
        }
        tall
    }

    /// One less than the largest chain cardinality; 0 for the empty poset.
    pub fn height(&self) -> usize {
        self.depths().into_iter().skip(1).max().map_or(0, |d| d - 1)
    }

    /// Connected components of the comparability graph (isolated elements
    /// count as components).
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in self.relations() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        (1..=self.n).filter(|&p| find(&mut parent, p) == p).count()
    }

    pub fn stats(&self) -> PosetStats {
        PosetStats {
            rel_count: self.rel_count(),
            ext: self.ext(),
            rel_e: self.rel_e(),
            height: self.height(),
            covers: self.covers(),
            components: self.components(),
        }
    }

    pub fn up_down(&self, p: usize) -> Result<UpDownProfile> {
        if p == 0 || p > self.n {
            return Err(Error::OutOfRange {
                label: p,
                n: self.n,
            });
        }
        let b_lower: Vec<_> = self
            .below(p)
            .filter(|&l| self.is_minimal(l))
            .map(|l| BasisElement::new(l, p))
            .collect();
        let b_upper: Vec<_> = self
            .above(p)
            .filter(|&b| self.is_maximal(b))
            .map(|b| BasisElement::new(p, b))
            .collect();
        Ok(UpDownProfile {
            p,
            d: self.below(p).count(),
            u: self.above(p).count(),
            d_e: b_lower.len(),
            u_e: b_upper.len(),
            b_lower,
            b_upper,
        })
    }

    /// `M_n(P)` for `n = height(P)`, in lexicographic order.
    pub fn middle_sections(&self) -> Result<Vec<Chain>> {
        let height = self.height();
        if height < 2 {
            return Err(Error::HeightTooSmall {
                height,
                required: 2,
            });
        }
        Ok(self.middle_sections_at(height))
    }

    /// Interiors `{p_1 ≺ ... ≺ p_{n-1}}` of chains with `n + 1` elements.
    /// Empty when the poset has height below `n`.
    pub fn middle_sections_at(&self, n: usize) -> Vec<Chain> {
        let mut out = BTreeSet::new();
        if n < 2 || self.height() < n {
            return Vec::new();
        }
        let depth = self.depths();
        let tall = self.tallness();
        // Every element of a chain with n + 1 elements sits at a fixed depth
        // and has depth + tallness = n + 2.
        let on_top_chain = |x: usize| depth[x] + tall[x] == n + 2;
        let mut stack: Vec<Chain> = self
            .elements()
            .filter(|&x| depth[x] == 2 && on_top_chain(x))
            .map(|x| vec![x])
            .collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            if chain.len() == n - 1 {
                out.insert(chain);
                continue;
            }
            for y in self.above(last) {
                if depth[y] == depth[last] + 1 && on_top_chain(y) {
                    let mut next = chain.clone();
                    next.push(y);
                    stack.push(next);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Hasse diagram in DOT; edges are exactly the covering relations.
    pub fn hasse_dot(&self) -> String {
        self.hasse_dot_named(|p| p.to_string())
    }

    pub fn hasse_dot_named(&self, name: impl Fn(usize) -> String) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for p in self.elements() {
            let _ = writeln!(out, "  {p} [label=\"{}\"];", name(p));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  {a} -> {b};");
        }
        out.push_str("}\n");
        out
    }

    /// Text form: `n <count>` then one `i < j` per covering relation.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (a, b) in self.covers() {
            let _ = writeln!(out, "{a} < {b}");
        }
        out
    }
}
