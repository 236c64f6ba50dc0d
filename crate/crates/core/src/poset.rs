//! Finite posets, element sets and binary relations.
//!
//! Elements are addressed by dense indices; names are only kept for display
//! and serialization. Relations are stored row-wise as image masks, so
//! `R(x)` is a single load and `R(S)` a union over `S`.

use alloc::borrow::ToOwned;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::set::full_mask;
use crate::{ElementSet, Error, Result, MAX_CARRIER};

pub(crate) fn default_name(i: usize) -> String {
    const LETTERS: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    match LETTERS.get(i) {
        Some(s) => (*s).to_owned(),
        None => format!("x{i}"),
    }
}

pub(crate) fn check_same(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::CarrierMismatch { expected, found })
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_CARRIER {
        Err(Error::CarrierTooLarge { size: n, max: MAX_CARRIER })
    } else {
        Ok(())
    }
}

/// A finite partially ordered set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    names: Vec<String>,
    /// `up[x] = [x)`
    up: Vec<ElementSet>,
    /// `down[x] = (x]`
    down: Vec<ElementSet>,
}

impl FinitePoset {
    /// Builds a poset from named elements and generator pairs `(a, b)`
    /// meaning `a ≤ b`. The reflexive-transitive closure is taken; a cycle
    /// in the closure is reported with its elements.
    pub fn from_pairs<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateElement(n.clone()));
            }
        }
        let lookup = |s: &S| {
            names
                .iter()
                .position(|n| n == s.as_ref())
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_owned()))
        };
        let mut idx = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx.push((lookup(a)?, lookup(b)?));
        }
        Self::from_index_pairs_named(names, &idx)
    }

    /// Like [`FinitePoset::from_pairs`] with default element names.
    pub fn from_index_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_index_pairs_named((0..n).map(default_name).collect(), pairs)
    }

    fn from_index_pairs_named(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        check_size(n)?;
        let mut gens = vec![ElementSet::empty(n); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            gens[a].insert(b);
        }
        let mut reach: Vec<ElementSet> =
            (0..n).map(|i| gens[i].union(ElementSet::singleton(n, i))).collect();
        for k in 0..n {
            let rk = reach[k];
            for r in reach.iter_mut() {
                if r.contains(k) {
                    *r = r.union(rk);
                }
            }
        }
        for i in 0..n {
            for j in reach[i].iter() {
                if j != i && reach[j].contains(i) {
                    let mut cycle = path(&gens, i, j);
                    let back = path(&gens, j, i);
                    cycle.extend_from_slice(&back[1..back.len() - 1]);
                    return Err(Error::OrderCycle(
                        cycle.into_iter().map(|k| names[k].clone()).collect(),
                    ));
                }
            }
        }
        Ok(Self::from_up_rows(names, reach))
    }

    /// Builds a poset from `up[x] = [x)` rows, checking that they describe a
    /// partial order.
    pub fn from_up_sets(names: Vec<String>, up: Vec<ElementSet>) -> Result<Self> {
        let n = names.len();
        check_size(n)?;
        if up.len() != n {
            return Err(Error::CarrierMismatch { expected: n, found: up.len() });
        }
        for (x, row) in up.iter().enumerate() {
            check_same(n, row.carrier_len())?;
            if !row.contains(x) {
                return Err(Error::Precondition(format!("order is not reflexive at #{x}")));
            }
            for y in row.iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::OrderCycle(vec![names[x].clone(), names[y].clone()]));
                }
                if !up[y].is_subset(row) {
                    return Err(Error::Precondition(format!(
                        "order is not transitive through #{x} <= #{y}"
                    )));
                }
            }
        }
        Ok(Self::from_up_rows(names, up))
    }

    pub(crate) fn from_up_rows(names: Vec<String>, up: Vec<ElementSet>) -> Self {
        let n = names.len();
        let mut down = vec![ElementSet::empty(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        FinitePoset { names, up, down }
    }

    /// The poset with no elements. Only arises as the spectrum of the
    /// one-element lattice.
    pub fn empty() -> Self {
        FinitePoset { names: Vec::new(), up: Vec::new(), down: Vec::new() }
    }

    /// `p0 < p1 < … < p(n-1)`.
    pub fn chain(n: usize) -> Self {
        let up = (0..n).map(|i| ElementSet::from_bits(n, full_mask(n) & !full_mask(i))).collect();
        Self::from_up_rows((0..n).map(default_name).collect(), up)
    }

    pub fn antichain(n: usize) -> Self {
        let up = (0..n).map(|i| ElementSet::singleton(n, i)).collect();
        Self::from_up_rows((0..n).map(default_name).collect(), up)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.len());
        self.names = names;
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// `[x)`
    #[inline]
    pub fn up_of(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    /// `(x]`
    #[inline]
    pub fn down_of(&self, x: usize) -> ElementSet {
        self.down[x]
    }

    pub fn up_rows(&self) -> &[ElementSet] {
        &self.up
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// `[S) = { x : y ≤ x for some y ∈ S }`
    pub fn up_set(&self, s: ElementSet) -> Result<ElementSet> {
        check_same(self.len(), s.carrier_len())?;
        Ok(self.up_closure(s))
    }

    /// `(S] = { x : x ≤ y for some y ∈ S }`
    pub fn down_set(&self, s: ElementSet) -> Result<ElementSet> {
        check_same(self.len(), s.carrier_len())?;
        Ok(self.down_closure(s))
    }

    /// Returns `(min S, max S)` for the order induced on `S`.
    pub fn extremes(&self, s: ElementSet) -> Result<(ElementSet, ElementSet)> {
        check_same(self.len(), s.carrier_len())?;
        Ok((self.minimal(s), self.maximal(s)))
    }

    #[inline]
    pub(crate) fn up_closure(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(ElementSet::empty(self.len()), |acc, x| acc.union(self.up[x]))
    }

    #[inline]
    pub(crate) fn down_closure(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(ElementSet::empty(self.len()), |acc, x| acc.union(self.down[x]))
    }

    pub fn minimal(&self, s: ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.len());
        for x in s.iter() {
            if self.down[x].intersection(s).count() == 1 {
                out.insert(x);
            }
        }
        out
    }

    pub fn maximal(&self, s: ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.len());
        for x in s.iter() {
            if self.up[x].intersection(s).count() == 1 {
                out.insert(x);
            }
        }
        out
    }

    pub fn is_increasing(&self, s: ElementSet) -> bool {
        s.iter().all(|x| self.up[x].is_subset(&s))
    }

    pub fn is_decreasing(&self, s: ElementSet) -> bool {
        s.iter().all(|x| self.down[x].is_subset(&s))
    }

    /// Every increasing subset exactly once, sorted by mask value.
    pub fn all_up_sets(&self) -> Vec<ElementSet> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        // Walk from the top of a linear extension down; an element may join
        // only when everything strictly above it is already present.
        fn go(p: &FinitePoset, order: &[usize], k: usize, cur: ElementSet, out: &mut Vec<ElementSet>) {
            if k == 0 {
                out.push(cur);
                return;
            }
            let x = order[k - 1];
            go(p, order, k - 1, cur, out);
            let mut above = p.up[x];
            above.remove(x);
            if above.is_subset(&cur) {
                let mut next = cur;
                next.insert(x);
                go(p, order, k - 1, next, out);
            }
        }
        go(self, &order, order.len(), ElementSet::empty(self.len()), &mut out);
        out.sort_unstable();
        out
    }

    /// Elements listed so that `a < b` implies `a` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&x| (self.down[x].count(), x));
        idx
    }

    /// Covering pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let mut strict = self.up[a];
            strict.remove(a);
            for b in strict.iter() {
                let mut between = self.up[a].intersection(self.down[b]);
                between.remove(a);
                between.remove(b);
                if between.is_empty() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn leq_relation(&self) -> BinRelation {
        BinRelation { rows: self.up.clone() }
    }

    /// Image of the poset under a relabelling `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.len();
        let mut up = vec![ElementSet::empty(n); n];
        let mut names = vec![String::new(); n];
        for x in 0..n {
            names[perm[x]] = self.names[x].clone();
            for y in self.up[x].iter() {
                up[perm[x]].insert(perm[y]);
            }
        }
        Self::from_up_rows(names, up)
    }
}

/// Shortest generator path from `from` to `to` (inclusive).
fn path(gens: &[ElementSet], from: usize, to: usize) -> Vec<usize> {
    let n = gens.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for y in gens[x].iter() {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut out = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        out.push(cur);
    }
    out.reverse();
    out
}

/// Common surface of [`BinRelation`] and [`EquivRelation`].
pub trait Relation {
    fn carrier_len(&self) -> usize;

    /// `R(x)`
    fn row(&self, x: usize) -> ElementSet;

    /// `R(S) = { y : (x, y) ∈ R for some x ∈ S }`
    fn image(&self, s: ElementSet) -> Result<ElementSet> {
        check_same(self.carrier_len(), s.carrier_len())?;
        Ok(s.iter().fold(ElementSet::empty(self.carrier_len()), |acc, x| acc.union(self.row(x))))
    }
}

/// Free-function form of [`Relation::image`].
pub fn rel_image<R: Relation + ?Sized>(r: &R, s: ElementSet) -> Result<ElementSet> {
    r.image(s)
}

/// A binary relation on a single carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinRelation {
    rows: Vec<ElementSet>,
}

impl BinRelation {
    pub fn identity(n: usize) -> Self {
        BinRelation { rows: (0..n).map(|i| ElementSet::singleton(n, i)).collect() }
    }

    pub fn full(n: usize) -> Self {
        BinRelation { rows: vec![ElementSet::full(n); n] }
    }

    pub fn from_rows(rows: Vec<ElementSet>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            check_same(n, r.carrier_len())?;
        }
        Ok(BinRelation { rows })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        check_size(n)?;
        let mut rows = vec![ElementSet::empty(n); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            rows[a].insert(b);
        }
        Ok(BinRelation { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[ElementSet] {
        &self.rows
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// `R ∘ T`: `(x, y)` is related iff `(x, z) ∈ T` and `(z, y) ∈ R` for
    /// some `z`. `T` is applied first.
    pub fn compose(&self, t: &BinRelation) -> Result<BinRelation> {
        check_same(self.len(), t.len())?;
        let n = self.len();
        let rows = t
            .rows
            .iter()
            .map(|tx| tx.iter().fold(ElementSet::empty(n), |acc, z| acc.union(self.rows[z])))
            .collect();
        Ok(BinRelation { rows })
    }

    pub fn is_subset(&self, other: &BinRelation) -> bool {
        self.len() == other.len() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// First pair of `self` missing from `other`.
    pub fn first_excess(&self, other: &BinRelation) -> Option<(usize, usize)> {
        for (x, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if let Some(y) = a.difference(*b).first() {
                return Some((x, y));
            }
        }
        None
    }

    pub fn inverse(&self) -> BinRelation {
        let n = self.len();
        let mut rows = vec![ElementSet::empty(n); n];
        for (x, r) in self.rows.iter().enumerate() {
            for y in r.iter() {
                rows[y].insert(x);
            }
        }
        BinRelation { rows }
    }

    /// An element `x` with `(x, x) ∉ R`.
    pub fn reflexivity_failure(&self) -> Option<usize> {
        (0..self.len()).find(|&x| !self.rows[x].contains(x))
    }

    /// A triple `(x, y, z)` with `xRy`, `yRz` but not `xRz`.
    pub fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.len() {
            for y in self.rows[x].iter() {
                if let Some(z) = self.rows[y].difference(self.rows[x]).first() {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    /// A pair `x ≠ y` related both ways.
    pub fn antisymmetry_failure(&self) -> Option<(usize, usize)> {
        for x in 0..self.len() {
            for y in self.rows[x].iter() {
                if y != x && self.rows[y].contains(x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_quasi_order(&self) -> bool {
        self.reflexivity_failure().is_none() && self.transitivity_failure().is_none()
    }

    /// The equivalence `x ≈ y ⟺ xRy ∧ yRx` induced by a quasi-order.
    pub fn induced_equivalence(&self) -> Result<EquivRelation> {
        let inv = self.inverse();
        let rows: Vec<ElementSet> =
            self.rows.iter().zip(&inv.rows).map(|(a, b)| a.intersection(*b)).collect();
        EquivRelation::from_relation(&BinRelation { rows })
    }
}

impl Relation for BinRelation {
    fn carrier_len(&self) -> usize {
        self.len()
    }

    #[inline]
    fn row(&self, x: usize) -> ElementSet {
        self.rows[x]
    }
}

/// An equivalence relation stored as a partition.
///
/// Blocks are kept in order of their least element, so two equal relations
/// always have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivRelation {
    class_of: Vec<usize>,
    blocks: Vec<ElementSet>,
}

impl EquivRelation {
    pub fn identity(n: usize) -> Self {
        Self::from_labels_unchecked(&(0..n).collect::<Vec<_>>())
    }

    pub fn full(n: usize) -> Self {
        Self::from_labels_unchecked(&vec![0; n])
    }

    /// Builds the partition whose blocks are the classes of equal labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        check_size(labels.len())?;
        Ok(Self::from_labels_unchecked(labels))
    }

    pub(crate) fn from_labels_unchecked(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut class_of = vec![0; n];
        let mut blocks: Vec<ElementSet> = Vec::new();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            let id = match seen.iter().find(|(lab, _)| *lab == l) {
                Some(&(_, id)) => id,
                None => {
                    seen.push((l, blocks.len()));
                    blocks.push(ElementSet::empty(n));
                    blocks.len() - 1
                }
            };
            class_of[x] = id;
            blocks[id].insert(x);
        }
        EquivRelation { class_of, blocks }
    }

    /// Blocks must be non-empty, pairwise disjoint and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        check_size(n)?;
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Precondition("empty equivalence class".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::UnknownElement(format!("#{x}")));
                }
                if labels[x] != usize::MAX {
                    return Err(Error::Precondition(format!(
                        "element #{x} appears in more than one class"
                    )));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Precondition(format!("element #{x} is in no class")));
        }
        Ok(Self::from_labels_unchecked(&labels))
    }

    /// Normalizes a pair-set relation; fails unless it is an equivalence.
    pub fn from_relation(r: &BinRelation) -> Result<Self> {
        if let Some(x) = r.reflexivity_failure() {
            return Err(Error::Precondition(format!("relation is not reflexive at #{x}")));
        }
        if r.inverse() != *r {
            return Err(Error::Precondition("relation is not symmetric".into()));
        }
        if let Some((x, y, z)) = r.transitivity_failure() {
            return Err(Error::Precondition(format!(
                "relation is not transitive at #{x}, #{y}, #{z}"
            )));
        }
        let labels: Vec<usize> =
            (0..r.len()).map(|x| r.row(x).first().expect("reflexive")).collect();
        Ok(Self::from_labels_unchecked(&labels))
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Canonical restricted-growth labelling: `labels()[x]` is the index of
    /// the block containing `x`.
    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    /// `E(x)`
    #[inline]
    pub fn class(&self, x: usize) -> ElementSet {
        self.blocks[self.class_of[x]]
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// `E(S)` without the carrier check.
    #[inline]
    pub fn saturate(&self, s: ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.len());
        for b in &self.blocks {
            if !b.is_disjoint(&s) {
                out = out.union(*b);
            }
        }
        out
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() <= 1
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.len() == self.len()
    }

    pub fn as_relation(&self) -> BinRelation {
        BinRelation { rows: (0..self.len()).map(|x| self.class(x)).collect() }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut labels = vec![0; self.len()];
        for x in 0..self.len() {
            labels[perm[x]] = self.class_of[x];
        }
        Self::from_labels_unchecked(&labels)
    }
}

impl Relation for EquivRelation {
    fn carrier_len(&self) -> usize {
        self.len()
    }

    #[inline]
    fn row(&self, x: usize) -> ElementSet {
        self.class(x)
    }

    fn image(&self, s: ElementSet) -> Result<ElementSet> {
        check_same(self.len(), s.carrier_len())?;
        Ok(self.saturate(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_indices(n, xs.iter().copied())
    }

    // p < q, p < r
    fn vee() -> FinitePoset {
        FinitePoset::from_pairs(&["p", "q", "r"], &[("p", "q"), ("p", "r")]).unwrap()
    }

    #[test]
    fn up_set_examples() {
        let c2 = FinitePoset::chain(2);
        assert_eq!(c2.up_set(set(2, &[0])).unwrap(), set(2, &[0, 1]));
        assert_eq!(c2.up_set(set(2, &[1])).unwrap(), set(2, &[1]));
        let c3 = FinitePoset::chain(3);
        assert_eq!(c3.up_set(set(3, &[1])).unwrap(), set(3, &[1, 2]));
    }

    #[test]
    fn down_set_examples() {
        let c2 = FinitePoset::chain(2);
        assert_eq!(c2.down_set(set(2, &[1])).unwrap(), set(2, &[0, 1]));
        assert_eq!(c2.down_set(set(2, &[0])).unwrap(), set(2, &[0]));
        let a2 = FinitePoset::antichain(2);
        assert_eq!(a2.down_set(set(2, &[0])).unwrap(), set(2, &[0]));
    }

    #[test]
    fn carrier_mismatch_is_reported() {
        let c2 = FinitePoset::chain(2);
        assert_eq!(
            c2.up_set(set(3, &[0])),
            Err(Error::CarrierMismatch { expected: 2, found: 3 })
        );
        assert!(c2.extremes(set(3, &[])).is_err());
        assert!(BinRelation::identity(2).image(set(3, &[0])).is_err());
    }

    #[test]
    fn extremes_examples() {
        let c3 = FinitePoset::chain(3);
        assert_eq!(c3.extremes(c3.all()).unwrap(), (set(3, &[0]), set(3, &[2])));
        let a2 = FinitePoset::antichain(2);
        assert_eq!(a2.extremes(a2.all()).unwrap(), (a2.all(), a2.all()));
        let v = vee();
        assert_eq!(v.extremes(set(3, &[1, 2])).unwrap(), (set(3, &[1, 2]), set(3, &[1, 2])));
        assert_eq!(v.extremes(set(3, &[])).unwrap(), (set(3, &[]), set(3, &[])));
    }

    #[test]
    fn all_up_sets_examples() {
        let c2 = FinitePoset::chain(2);
        assert_eq!(c2.all_up_sets(), [set(2, &[]), set(2, &[1]), set(2, &[0, 1])]);
        assert_eq!(FinitePoset::antichain(2).all_up_sets().len(), 4);
        let one = FinitePoset::chain(1);
        assert_eq!(one.all_up_sets(), [set(1, &[]), set(1, &[0])]);
    }

    #[test]
    fn all_up_sets_matches_subset_filter() {
        for p in [vee(), FinitePoset::chain(4), FinitePoset::antichain(4)] {
            let n = p.len();
            let brute: Vec<ElementSet> = (0..1u64 << n)
                .map(|b| ElementSet::from_bits(n, b))
                .filter(|s| p.is_increasing(*s))
                .collect();
            assert_eq!(p.all_up_sets(), brute);
        }
    }

    #[test]
    fn rel_image_examples() {
        let s = set(3, &[0, 2]);
        assert_eq!(rel_image(&EquivRelation::identity(3), s).unwrap(), s);
        let full = EquivRelation::full(2);
        assert_eq!(rel_image(&full, set(2, &[0])).unwrap(), set(2, &[0, 1]));
        let e = EquivRelation::from_blocks(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(rel_image(&e, set(3, &[1, 2])).unwrap(), set(3, &[0, 1, 2]));
        assert_eq!(rel_image(&e.as_relation(), set(3, &[1, 2])).unwrap(), set(3, &[0, 1, 2]));
    }

    #[test]
    fn compose_applies_right_operand_first() {
        // R = {(0,1)}, T = {(1,2)} on three points.
        let r = BinRelation::from_pairs(3, &[(0, 1)]).unwrap();
        let t = BinRelation::from_pairs(3, &[(1, 2)]).unwrap();
        // R∘T needs (x,z)∈T then (z,y)∈R: T ends at 2, R starts at 0, so empty.
        assert_eq!(r.compose(&t).unwrap(), BinRelation::from_pairs(3, &[]).unwrap());
        // T∘R: (0,1)∈R then (1,2)∈T gives (0,2).
        assert_eq!(t.compose(&r).unwrap(), BinRelation::from_pairs(3, &[(0, 2)]).unwrap());
    }

    #[test]
    fn compose_examples() {
        let c2 = FinitePoset::chain(2);
        let le = c2.leq_relation();
        let id = BinRelation::identity(2);
        assert_eq!(le.compose(&id).unwrap(), le);
        assert_eq!(id.compose(&le).unwrap(), le);
        let e = EquivRelation::full(2).as_relation();
        let le_e = le.compose(&e).unwrap();
        let e_le = e.compose(&le).unwrap();
        assert_eq!(le_e, BinRelation::full(2));
        assert_eq!(e_le, BinRelation::full(2));
        assert!(le_e.is_subset(&e_le));
    }

    #[test]
    fn validate_order_examples() {
        let c2 = FinitePoset::from_pairs(&["p", "q"], &[("p", "q")]).unwrap();
        assert_eq!(c2, FinitePoset::chain(2));
        match FinitePoset::from_pairs(&["p", "q"], &[("p", "q"), ("q", "p")]) {
            Err(Error::OrderCycle(c)) => assert_eq!(c, ["p", "q"]),
            other => panic!("expected cycle, got {other:?}"),
        }
        let c3 = FinitePoset::from_pairs(&["p", "q", "r"], &[("p", "q"), ("q", "r")]).unwrap();
        assert!(c3.leq(0, 2));
        assert_eq!(c3, FinitePoset::chain(3));
    }

    #[test]
    fn validate_order_errors() {
        assert_eq!(
            FinitePoset::from_pairs(&["p"], &[("p", "z")]),
            Err(Error::UnknownElement("z".into()))
        );
        assert_eq!(
            FinitePoset::from_pairs(&["p", "p"], &[]),
            Err(Error::DuplicateElement("p".into()))
        );
        let none: [&str; 0] = [];
        assert_eq!(FinitePoset::from_pairs(&none, &[]), Err(Error::EmptyCarrier));
        match FinitePoset::from_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]) {
            Err(Error::OrderCycle(c)) => assert_eq!(c.len(), 3),
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn from_up_sets_rejects_non_orders() {
        let n = 2;
        let names: Vec<String> = (0..n).map(default_name).collect();
        assert!(FinitePoset::from_up_sets(names.clone(), vec![set(2, &[1]), set(2, &[1])]).is_err());
        assert!(FinitePoset::from_up_sets(names, vec![set(2, &[0, 1]), set(2, &[0, 1])]).is_err());
    }

    #[test]
    fn equivalence_normalization() {
        let e = EquivRelation::from_labels(&[7, 3, 7]).unwrap();
        assert_eq!(e.labels(), [0, 1, 0]);
        assert_eq!(e, EquivRelation::from_blocks(3, &[vec![1], vec![2, 0]]).unwrap());
        assert_eq!(EquivRelation::from_relation(&e.as_relation()).unwrap(), e);
        assert!(EquivRelation::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(EquivRelation::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(EquivRelation::from_relation(&BinRelation::from_pairs(2, &[(0, 0)]).unwrap()).is_err());
    }

    #[test]
    fn covers_of_vee() {
        assert_eq!(vee().covers(), [(0, 1), (0, 2)]);
        assert_eq!(FinitePoset::chain(3).covers(), [(0, 1), (1, 2)]);
    }
}
