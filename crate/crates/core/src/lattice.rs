//! Finite bounded distributive lattices.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::poset::FinitePoset;
use crate::{ElementSet, Error, Outcome, Result};

/// Lattices above this size are validated on a deterministic sample of
/// triples instead of all of them.
pub const FULL_VALIDATION_CAP: usize = 20;
const SAMPLED_TRIPLES: usize = 4096;
/// Up to this size prime filters are found by scanning every subset.
const SUBSET_SCAN_CAP: usize = 10;

/// A finite bounded lattice with explicit meet and join tables.
///
/// Constructors only guarantee that the tables are well-formed; whether they
/// agree with the order and satisfy distributivity is the job of
/// [`DistLattice::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistLattice {
    order: FinitePoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl DistLattice {
    /// Computes meet and join as infimum and supremum of `order`.
    pub fn from_order(order: FinitePoset) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = order.down_of(a).intersection(order.down_of(b));
                let inf = order.maximal(lower);
                if inf.count() != 1 {
                    return Err(Error::NotALattice { reason: "meet", a, b });
                }
                let upper = order.up_of(a).intersection(order.up_of(b));
                let sup = order.minimal(upper);
                if sup.count() != 1 {
                    return Err(Error::NotALattice { reason: "join", a, b });
                }
                let (i, s) = (inf.first().unwrap(), sup.first().unwrap());
                meet[a * n + b] = i;
                meet[b * n + a] = i;
                join[a * n + b] = s;
                join[b * n + a] = s;
            }
        }
        let all = order.all();
        let bottom = order.minimal(all).first().unwrap();
        let top = order.maximal(all).first().unwrap();
        Ok(DistLattice { order, meet, join, bottom, top })
    }

    /// Takes tables as given. Only their shape is checked.
    pub fn from_tables(
        order: FinitePoset,
        meet: Vec<usize>,
        join: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if meet.len() != n * n || join.len() != n * n {
            return Err(Error::BadTable("meet/join tables must have n*n entries"));
        }
        if meet.iter().chain(&join).chain([&bottom, &top]).any(|&x| x >= n) {
            return Err(Error::BadTable("entry out of range"));
        }
        Ok(DistLattice { order, meet, join, bottom, top })
    }

    /// `0 < a < b < … < 1` with `n` elements.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "0".to_string(),
                _ if i + 1 == n => "1".to_string(),
                _ if i <= 26 => char::from(b'a' + (i - 1) as u8).to_string(),
                _ => format!("c{i}"),
            })
            .collect();
        Self::from_order(FinitePoset::chain(n).with_names(names)).expect("chains are lattices")
    }

    /// The four-element Boolean lattice `{0, a, b, 1}`.
    pub fn diamond() -> Self {
        let order = FinitePoset::from_pairs(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap();
        Self::from_order(order).unwrap()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn names(&self) -> &[String] {
        self.order.names()
    }

    pub fn name(&self, x: usize) -> &str {
        self.order.name(x)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet_table(&self) -> &[usize] {
        &self.meet
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    /// `[a)` as a set of lattice elements.
    pub fn principal_filter(&self, a: usize) -> ElementSet {
        self.order.up_of(a)
    }

    pub fn validate(&self) -> LatticeReport {
        validate_lattice(self)
    }

    /// `{ x ≠ 0 : x = a ∨ b implies x = a or x = b }`
    pub fn join_irreducibles(&self) -> ElementSet {
        let n = self.len();
        let mut out = ElementSet::empty(n);
        for x in 0..n {
            if x == self.bottom {
                continue;
            }
            let reducible = (0..n).any(|a| {
                a != x && (0..n).any(|b| b != x && self.join(a, b) == x)
            });
            if !reducible {
                out.insert(x);
            }
        }
        out
    }

    /// `{ x ≠ 1 : x = a ∧ b implies x = a or x = b }`
    pub fn meet_irreducibles(&self) -> ElementSet {
        let n = self.len();
        let mut out = ElementSet::empty(n);
        for x in 0..n {
            if x == self.top {
                continue;
            }
            let reducible = (0..n).any(|a| {
                a != x && (0..n).any(|b| b != x && self.meet(a, b) == x)
            });
            if !reducible {
                out.insert(x);
            }
        }
        out
    }

    /// Checks the prime-filter conditions on `f` directly from the tables.
    pub fn is_prime_filter(&self, f: ElementSet) -> bool {
        let n = self.len();
        if f.is_empty() || f.contains(self.bottom) || f.carrier_len() != n {
            return false;
        }
        for a in f.iter() {
            for b in 0..n {
                if self.leq(a, b) && !f.contains(b) {
                    return false;
                }
            }
            for b in f.iter() {
                if !f.contains(self.meet(a, b)) {
                    return false;
                }
            }
        }
        for a in 0..n {
            for b in a..n {
                if f.contains(self.join(a, b)) && !f.contains(a) && !f.contains(b) {
                    return false;
                }
            }
        }
        true
    }

    /// All prime filters, sorted by mask value.
    ///
    /// Computed twice, by scanning candidate filters against the definition
    /// and as the principal filters of join-irreducibles; the two results
    /// must agree.
    pub fn prime_filters(&self) -> Result<Vec<PrimeFilter>> {
        let n = self.len();
        let mut scanned: Vec<ElementSet> = if n <= SUBSET_SCAN_CAP {
            (1..1u64 << n)
                .map(|b| ElementSet::from_bits(n, b))
                .filter(|f| self.is_prime_filter(*f))
                .collect()
        } else {
            // Every filter of a finite lattice is principal.
            (0..n)
                .map(|a| self.principal_filter(a))
                .filter(|f| self.is_prime_filter(*f))
                .collect()
        };
        scanned.sort_unstable();
        let mut via_ji: Vec<PrimeFilter> = self
            .join_irreducibles()
            .iter()
            .map(|j| PrimeFilter { generator: j, members: self.principal_filter(j) })
            .collect();
        via_ji.sort_unstable_by_key(|p| p.members);
        if via_ji.len() != scanned.len() || via_ji.iter().zip(&scanned).any(|(p, s)| p.members != *s)
        {
            return Err(Error::Invariant(format!(
                "prime filter scan found {} filters, join-irreducibles give {}",
                scanned.len(),
                via_ji.len()
            )));
        }
        Ok(via_ji)
    }
}

/// A prime filter together with the join-irreducible generating it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFilter {
    pub generator: usize,
    pub members: ElementSet,
}

/// Lattice of increasing subsets of `p` under ∩ and ∪.
///
/// Element `i` of the lattice is `p.all_up_sets()[i]`.
pub fn up_set_lattice(p: &FinitePoset) -> DistLattice {
    up_set_lattice_with_sets(p).0
}

pub fn up_set_lattice_with_sets(p: &FinitePoset) -> (DistLattice, Vec<ElementSet>) {
    let sets = p.all_up_sets();
    let m = sets.len();
    let index = |s: ElementSet| sets.binary_search(&s).expect("closed under ∩ and ∪");
    let mut meet = vec![0; m * m];
    let mut join = vec![0; m * m];
    let mut up = vec![ElementSet::empty(m); m];
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            meet[i * m + j] = index(a.intersection(*b));
            join[i * m + j] = index(a.union(*b));
            if a.is_subset(b) {
                up[i].insert(j);
            }
        }
    }
    let names = sets.iter().map(|s| set_name(p, *s)).collect();
    let order = FinitePoset::from_up_rows(names, up);
    let lattice = DistLattice { order, meet, join, bottom: 0, top: m - 1 };
    (lattice, sets)
}

/// `{p,q}` style display name for a subset of a poset.
pub fn set_name(p: &FinitePoset, s: ElementSet) -> String {
    let mut out = String::from("{");
    for (k, x) in s.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(p.name(x));
    }
    out.push('}');
    out
}

/// Outcome of [`validate_lattice`]. Witnesses are element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    /// `(a, b)` whose tabulated meet is not their infimum.
    pub meet_is_inf: Outcome,
    /// `(a, b)` whose tabulated join is not their supremum.
    pub join_is_sup: Outcome,
    /// `(x)` not between bottom and top.
    pub bounds: Outcome,
    /// `(x, y, z)` with `x∧(y∨z) ≠ (x∧y)∨(x∧z)`.
    pub distributive: Outcome,
    /// Distributivity was checked on a sample of triples only.
    pub sampled: bool,
}

impl LatticeReport {
    pub fn passes(&self) -> bool {
        self.meet_is_inf.holds()
            && self.join_is_sup.holds()
            && self.bounds.holds()
            && self.distributive.holds()
    }
}

pub fn validate_lattice(l: &DistLattice) -> LatticeReport {
    let n = l.len();
    let o = l.order();
    let mut meet_fail = None;
    let mut join_fail = None;
    'pairs: for a in 0..n {
        for b in 0..n {
            let lower = o.down_of(a).intersection(o.down_of(b));
            let inf = o.maximal(lower);
            if meet_fail.is_none() && (inf.count() != 1 || inf.first() != Some(l.meet(a, b))) {
                meet_fail = Some(vec![a, b]);
            }
            let upper = o.up_of(a).intersection(o.up_of(b));
            let sup = o.minimal(upper);
            if join_fail.is_none() && (sup.count() != 1 || sup.first() != Some(l.join(a, b))) {
                join_fail = Some(vec![a, b]);
            }
            if meet_fail.is_some() && join_fail.is_some() {
                break 'pairs;
            }
        }
    }
    let bounds = (0..n).find(|&x| !l.leq(l.bottom, x) || !l.leq(x, l.top)).map(|x| vec![x]);
    let distributes = |x: usize, y: usize, z: usize| {
        l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z))
    };
    let sampled = n > FULL_VALIDATION_CAP;
    let mut dist_fail = None;
    if sampled {
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        for _ in 0..SAMPLED_TRIPLES {
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            let (x, y, z) = (next(), next(), next());
            if !distributes(x, y, z) {
                dist_fail = Some(vec![x, y, z]);
                break;
            }
        }
    } else {
        'triples: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !distributes(x, y, z) {
                        dist_fail = Some(vec![x, y, z]);
                        break 'triples;
                    }
                }
            }
        }
    }
    LatticeReport {
        meet_is_inf: Outcome::from_witness(meet_fail),
        join_is_sup: Outcome::from_witness(join_fail),
        bounds: Outcome::from_witness(bounds),
        distributive: Outcome::from_witness(dist_fail),
        sampled,
    }
}

/// Preservation flags for a map between lattices.
///
/// Witnesses: `bottom`/`top` carry nothing beyond the failure itself, `meet`
/// and `join` carry the offending pair, `nabla`/`delta` the offending
/// element. The monadic flags are `None` unless both sides carry operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub bottom: Outcome,
    pub top: Outcome,
    pub meet: Outcome,
    pub join: Outcome,
    pub nabla: Option<Outcome>,
    pub delta: Option<Outcome>,
}

impl HomReport {
    pub fn is_lattice_hom(&self) -> bool {
        self.bottom.holds() && self.top.holds() && self.meet.holds() && self.join.holds()
    }

    /// A bounded lattice homomorphism that also commutes with ∇ and △.
    pub fn is_monadic_hom(&self) -> bool {
        self.is_lattice_hom()
            && self.nabla.as_ref().is_some_and(Outcome::holds)
            && self.delta.as_ref().is_some_and(Outcome::holds)
    }
}

/// A map between lattices together with its preservation flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHom {
    pub map: Vec<usize>,
    pub report: HomReport,
}

impl LatticeHom {
    pub fn is_bijective(&self, target_len: usize) -> bool {
        let mut seen = ElementSet::empty(target_len);
        for &y in &self.map {
            seen.insert(y);
        }
        self.map.len() == target_len && seen.is_full()
    }
}

/// (∇, △) tables of a monadic lattice, borrowed.
#[derive(Clone, Copy, Debug)]
pub struct OpsRef<'a> {
    pub nabla: &'a [usize],
    pub delta: &'a [usize],
}

pub fn check_hom(src: &DistLattice, tgt: &DistLattice, map: &[usize]) -> Result<HomReport> {
    check_hom_with_ops(src, None, tgt, None, map)
}

pub fn check_hom_with_ops(
    src: &DistLattice,
    src_ops: Option<OpsRef<'_>>,
    tgt: &DistLattice,
    tgt_ops: Option<OpsRef<'_>>,
    map: &[usize],
) -> Result<HomReport> {
    let n = src.len();
    if map.len() != n {
        return Err(Error::CarrierMismatch { expected: n, found: map.len() });
    }
    if let Some(x) = map.iter().position(|&y| y >= tgt.len()) {
        return Err(Error::Precondition(format!("image of #{x} is outside the target")));
    }
    let h = |x: usize| map[x];
    let bottom = Outcome::from_witness((h(src.bottom) != tgt.bottom).then(|| vec![src.bottom]));
    let top = Outcome::from_witness((h(src.top) != tgt.top).then(|| vec![src.top]));
    let mut meet = None;
    let mut join = None;
    for a in 0..n {
        for b in 0..n {
            if meet.is_none() && h(src.meet(a, b)) != tgt.meet(h(a), h(b)) {
                meet = Some(vec![a, b]);
            }
            if join.is_none() && h(src.join(a, b)) != tgt.join(h(a), h(b)) {
                join = Some(vec![a, b]);
            }
        }
    }
    let (nabla, delta) = match (src_ops, tgt_ops) {
        (Some(s), Some(t)) => {
            let nab = (0..n).find(|&a| h(s.nabla[a]) != t.nabla[h(a)]).map(|a| vec![a]);
            let del = (0..n).find(|&a| h(s.delta[a]) != t.delta[h(a)]).map(|a| vec![a]);
            (Some(Outcome::from_witness(nab)), Some(Outcome::from_witness(del)))
        }
        _ => (None, None),
    };
    Ok(HomReport {
        bottom,
        top,
        meet: Outcome::from_witness(meet),
        join: Outcome::from_witness(join),
        nabla,
        delta,
    })
}
