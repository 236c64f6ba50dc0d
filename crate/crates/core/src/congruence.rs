//! Congruences of m-lattices through saturated subsets of the dual space, an
//! independent congruence oracle, and the simple / subdirectly irreducible
//! classification.
//!
//! Two closures appear in the statements being checked. The Priestley
//! closure of a subset of a finite space is the subset itself. The closure
//! for the topology whose closed sets are the id-saturated sets is the least
//! id-saturated superset, computed here by [`sat_closure`]. Wherever a plain
//! overline is read, the identity is used; wherever the saturated closure is
//! meant, `sat_closure` is used.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::duality::{dual_algebra, quantifier_spectrum, spectrum, MqSpace, Spectrum};
use crate::lattice::DistLattice;
use crate::monadic::{validate_quantifier, MonadicLattice};
use crate::poset::EquivRelation;
use crate::{ElementSet, Error, Limits, Result};

/// `min E([y)) ∪ max E(y)`
pub fn sat_step(x: &MqSpace, y: usize) -> ElementSet {
    let p = x.poset();
    p.minimal(x.e_up(y)).union(p.maximal(x.class(y)))
}

pub fn is_id_saturated(x: &MqSpace, y: ElementSet) -> bool {
    y.iter().all(|p| sat_step(x, p).is_subset(&y))
}

pub fn is_i_saturated(x: &MqSpace, y: ElementSet) -> bool {
    y.iter().all(|p| x.poset().maximal(x.class(p)).is_subset(&y))
}

fn fixpoint(y: ElementSet, step: impl Fn(usize) -> ElementSet) -> ElementSet {
    let mut out = y;
    let mut todo: Vec<usize> = y.iter().collect();
    while let Some(p) = todo.pop() {
        for q in step(p).difference(out).iter() {
            out.insert(q);
            todo.push(q);
        }
    }
    out
}

/// Least id-saturated superset of `y`.
pub fn sat_closure(x: &MqSpace, y: ElementSet) -> ElementSet {
    fixpoint(y, |p| sat_step(x, p))
}

/// Least i-saturated superset of `y`.
pub fn i_closure(x: &MqSpace, y: ElementSet) -> ElementSet {
    fixpoint(y, |p| x.poset().maximal(x.class(p)))
}

/// Saturated subsets of a space, sorted by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatFamily {
    pub sets: Vec<ElementSet>,
}

impl SatFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The member containing every other member except `X`, if any.
    pub fn greatest_proper(&self) -> Option<ElementSet> {
        let proper: Vec<ElementSet> = self.sets.iter().copied().filter(|s| !s.is_full()).collect();
        proper.iter().copied().find(|c| proper.iter().all(|s| s.is_subset(c)))
    }
}

fn saturated_family(
    x: &MqSpace,
    limits: &Limits,
    keep: impl Fn(ElementSet) -> bool,
) -> Result<SatFamily> {
    let n = x.len();
    if n > limits.max_saturation_space {
        return Err(Error::CapExceeded {
            what: "saturation scan",
            size: n as u64,
            cap: limits.max_saturation_space as u64,
        });
    }
    let sets = (0..1u64 << n).map(|b| ElementSet::from_bits(n, b)).filter(|&s| keep(s)).collect();
    Ok(SatFamily { sets })
}

/// Every id-saturated subset (all subsets are closed in a finite space).
pub fn id_saturated_family(x: &MqSpace, limits: &Limits) -> Result<SatFamily> {
    saturated_family(x, limits, |s| is_id_saturated(x, s))
}

/// Every i-saturated subset.
pub fn i_saturated_family(x: &MqSpace, limits: &Limits) -> Result<SatFamily> {
    saturated_family(x, limits, |s| is_i_saturated(x, s))
}

/// Which operations a congruence must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature<'a> {
    pub nabla: Option<&'a [usize]>,
    pub delta: Option<&'a [usize]>,
}

impl<'a> Signature<'a> {
    pub const LATTICE: Signature<'static> = Signature { nabla: None, delta: None };

    pub fn monadic(m: &'a MonadicLattice) -> Self {
        Signature { nabla: Some(m.nabla()), delta: Some(m.delta()) }
    }

    pub fn quantifier(nabla: &'a [usize]) -> Self {
        Signature { nabla: Some(nabla), delta: None }
    }
}

/// A pair `x ~ y` and an operand that separates the images, as
/// `[x, y, c]` for `∧c`/`∨c` or `[x, y]` for a unary operation.
pub fn compatibility_failure(l: &DistLattice, sig: Signature<'_>, eq: &EquivRelation) -> Option<Vec<usize>> {
    let n = l.len();
    for x in 0..n {
        for y in eq.class(x).iter().filter(|&y| y > x) {
            for c in 0..n {
                if !eq.related(l.meet(x, c), l.meet(y, c)) || !eq.related(l.join(x, c), l.join(y, c)) {
                    return Some(vec![x, y, c]);
                }
            }
            for op in [sig.nabla, sig.delta].into_iter().flatten() {
                if !eq.related(op[x], op[y]) {
                    return Some(vec![x, y]);
                }
            }
        }
    }
    None
}

/// `a` refines `b`: every class of `a` lies inside a class of `b`.
pub fn refines(a: &EquivRelation, b: &EquivRelation) -> bool {
    (0..a.len()).all(|x| a.class(x).is_subset(&b.class(x)))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn into_equiv(mut self) -> EquivRelation {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        EquivRelation::from_labels_unchecked(&labels)
    }
}

/// Least congruence containing the given pairs.
///
/// Every merge is pushed through the basic translations `∧c`, `∨c`, `∇`,
/// `△`; closing the generating edges under translations is enough for the
/// equivalence they generate to be compatible.
pub fn generated_congruence(l: &DistLattice, sig: Signature<'_>, pairs: &[(usize, usize)]) -> EquivRelation {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    while let Some((x, y)) = queue.pop() {
        let mut push = |uf: &mut UnionFind, a: usize, b: usize| {
            if uf.union(a, b) {
                queue.push((a, b));
            }
        };
        for c in 0..n {
            push(&mut uf, l.meet(x, c), l.meet(y, c));
            push(&mut uf, l.join(x, c), l.join(y, c));
        }
        for op in [sig.nabla, sig.delta].into_iter().flatten() {
            push(&mut uf, op[x], op[y]);
        }
    }
    uf.into_equiv()
}

fn join_equiv(a: &EquivRelation, b: &EquivRelation) -> EquivRelation {
    let mut uf = UnionFind::new(a.len());
    for e in [a, b] {
        for block in e.blocks() {
            let first = block.first().expect("blocks are non-empty");
            for y in block.iter() {
                uf.union(first, y);
            }
        }
    }
    uf.into_equiv()
}

/// All congruences of `l` for the signature, sorted, computed without any
/// use of the dual space: principal congruences of comparable pairs, then
/// closure under joins.
pub fn congruence_oracle(l: &DistLattice, sig: Signature<'_>) -> Vec<EquivRelation> {
    let n = l.len();
    let mut principals: BTreeSet<EquivRelation> = BTreeSet::new();
    for a in 0..n {
        for b in l.order().up_of(a).iter().filter(|&b| b != a) {
            principals.insert(generated_congruence(l, sig, &[(a, b)]));
        }
    }
    let mut all: BTreeSet<EquivRelation> = BTreeSet::new();
    let identity = EquivRelation::identity(n);
    all.insert(identity.clone());
    let mut todo = vec![identity];
    while let Some(t) = todo.pop() {
        for p in &principals {
            let j = join_equiv(&t, p);
            if all.insert(j.clone()) {
                todo.push(j);
            }
        }
    }
    all.into_iter().collect()
}

/// Largest lattice for [`congruences_by_partition_scan`].
pub const PARTITION_SCAN_CAP: usize = 10;

/// Every partition of the carrier that passes the compatibility check,
/// found by a literal scan with prefix pruning. Exponential; for cross-
/// checking the oracle on small lattices.
pub fn congruences_by_partition_scan(l: &DistLattice, sig: Signature<'_>) -> Result<Vec<EquivRelation>> {
    let n = l.len();
    if n > PARTITION_SCAN_CAP {
        return Err(Error::CapExceeded { what: "partition scan", size: n as u64, cap: PARTITION_SCAN_CAP as u64 });
    }
    fn rec(
        l: &DistLattice,
        sig: Signature<'_>,
        labels: &mut Vec<usize>,
        i: usize,
        max: usize,
        out: &mut Vec<EquivRelation>,
    ) {
        if i == labels.len() {
            let e = EquivRelation::from_labels_unchecked(labels);
            if compatibility_failure(l, sig, &e).is_none() {
                out.push(e);
            }
            return;
        }
        for lab in 0..=max + 1 {
            labels[i] = lab;
            rec(l, sig, labels, i + 1, max.max(lab), out);
        }
    }
    let mut out = Vec::new();
    let mut labels = vec![0; n];
    if n > 0 {
        rec(l, sig, &mut labels, 1, 0, &mut out);
    }
    out.sort();
    Ok(out)
}

/// All m-congruences of `m` by the oracle.
pub fn brute_force_congruences(m: &MonadicLattice, limits: &Limits) -> Result<Vec<EquivRelation>> {
    check_cap(m.len(), limits)?;
    Ok(congruence_oracle(m.lattice(), Signature::monadic(m)))
}

fn check_cap(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.max_congruence_lattice {
        return Err(Error::CapExceeded {
            what: "congruence lattice size",
            size: n as u64,
            cap: limits.max_congruence_lattice as u64,
        });
    }
    Ok(())
}

/// `Θ(Y)`: `a ~ b` iff `σ(a) ∩ Y = σ(b) ∩ Y`. No saturation check.
pub fn theta_unchecked(l: &DistLattice, s: &Spectrum, y: ElementSet) -> EquivRelation {
    let labels: Vec<usize> = (0..l.len()).map(|a| s.sigma(a).intersection(y).bits() as usize).collect();
    EquivRelation::from_labels_unchecked(&labels)
}

/// `Θ(Y)` for an id-saturated `Y` of the spectrum.
pub fn theta(m: &MonadicLattice, s: &Spectrum, y: ElementSet) -> Result<EquivRelation> {
    if y.carrier_len() != s.space.len() {
        return Err(Error::CarrierMismatch { expected: s.space.len(), found: y.carrier_len() });
    }
    if !is_id_saturated(&s.space, y) {
        return Err(Error::Precondition(format!("{y:?} is not id-saturated")));
    }
    Ok(theta_unchecked(m.lattice(), s, y))
}

/// Saturated family, the congruence of each member, and the oracle list.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    pub spectrum: Spectrum,
    pub family: SatFamily,
    /// `congruences[i] = Θ(family.sets[i])`
    pub congruences: Vec<EquivRelation>,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }
}

/// Checks that `Y ↦ Θ(Y)` is a bijection from `family` onto `oracle` that
/// reverses inclusion, and that every `Θ(Y)` is compatible.
fn check_correspondence(
    l: &DistLattice,
    sig: Signature<'_>,
    family: &SatFamily,
    thetas: &[EquivRelation],
    oracle: &[EquivRelation],
) -> Result<()> {
    for (y, t) in family.sets.iter().zip(thetas) {
        if let Some(w) = compatibility_failure(l, sig, t) {
            return Err(Error::Falsified(format!("Θ({y:?}) is not a congruence, witness {w:?}")));
        }
    }
    let distinct: BTreeSet<&EquivRelation> = thetas.iter().collect();
    if distinct.len() != thetas.len() {
        return Err(Error::Falsified("Θ is not injective on the saturated family".into()));
    }
    let expected: BTreeSet<&EquivRelation> = oracle.iter().collect();
    if distinct != expected {
        let extra = thetas.iter().find(|t| !expected.contains(t));
        let missing = oracle.iter().find(|t| !distinct.contains(t));
        return Err(Error::Falsified(format!(
            "Θ image ({}) differs from the congruence list ({}): extra {extra:?}, missing {missing:?}",
            thetas.len(),
            oracle.len()
        )));
    }
    for (i, yi) in family.sets.iter().enumerate() {
        for (j, yj) in family.sets.iter().enumerate() {
            if yi.is_subset(yj) != refines(&thetas[j], &thetas[i]) {
                return Err(Error::Falsified(format!(
                    "Θ does not reverse inclusion between {yi:?} and {yj:?}"
                )));
            }
        }
    }
    Ok(())
}

/// m-congruences as `Θ` of the id-saturated sets, verified against the
/// oracle.
pub fn con_m(m: &MonadicLattice, limits: &Limits) -> Result<CongruenceLattice> {
    con_m_with(m, limits, Signature::monadic(m))
}

/// [`con_m`] with the oracle run for `oracle_sig` instead of the full
/// signature. Used to check that the harness notices a broken oracle.
pub(crate) fn con_m_with(
    m: &MonadicLattice,
    limits: &Limits,
    oracle_sig: Signature<'_>,
) -> Result<CongruenceLattice> {
    check_cap(m.len(), limits)?;
    let spectrum = spectrum(m)?;
    let family = id_saturated_family(&spectrum.space, limits)?;
    let congruences: Vec<EquivRelation> =
        family.sets.iter().map(|&y| theta_unchecked(m.lattice(), &spectrum, y)).collect();
    let oracle = congruence_oracle(m.lattice(), oracle_sig);
    check_correspondence(m.lattice(), Signature::monadic(m), &family, &congruences, &oracle)?;
    Ok(CongruenceLattice { spectrum, family, congruences })
}

/// Congruences of a lattice with a quantifier as `Θ` of the i-saturated
/// sets, verified against the oracle.
pub fn q_congruences(l: &DistLattice, nabla: &[usize], limits: &Limits) -> Result<CongruenceLattice> {
    check_cap(l.len(), limits)?;
    let report = validate_quantifier(l, nabla)?;
    if let Some((ax, w)) = report.first_failure() {
        return Err(Error::Precondition(format!("not a quantifier: {ax} fails at {w:?}")));
    }
    let spectrum = quantifier_spectrum(l, nabla)?;
    let family = i_saturated_family(&spectrum.space, limits)?;
    let congruences: Vec<EquivRelation> =
        family.sets.iter().map(|&y| theta_unchecked(l, &spectrum, y)).collect();
    let sig = Signature::quantifier(nabla);
    let oracle = congruence_oracle(l, sig);
    check_correspondence(l, sig, &family, &congruences, &oracle)?;
    Ok(CongruenceLattice { spectrum, family, congruences })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Simple,
    SINotSimple,
    Neither,
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Verdict::Simple => "simple",
            Verdict::SINotSimple => "subdirectly irreducible, not simple",
            Verdict::Neither => "not subdirectly irreducible",
        })
    }
}

/// Which of the two alternatives for subdirect irreducibility fired, in
/// the form using `min X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// The last element of `∇_E(D(X)) ∖ {X}`.
    A { last: ElementSet },
    /// The exceptional point.
    B { x: usize },
}

/// Verdicts of the four derivations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Routes {
    /// Congruence count and monolith from the oracle.
    pub oracle: Verdict,
    /// Points of the space with `sat_closure(max E(x))`.
    pub space: Verdict,
    /// Separation by elements and the saturated family.
    pub algebra: Verdict,
    /// `sat_closure(min X)` branches.
    pub branches: Verdict,
}

impl Routes {
    pub fn agree(&self) -> bool {
        self.oracle == self.space && self.space == self.algebra && self.algebra == self.branches
    }
}

/// Raw conditions behind the routes, kept for diagnostics and observation
/// tallies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conditions {
    pub pair_simple: bool,
    pub e_full: bool,
    /// `X = min X ∪ max X`
    pub min_max_cover: bool,
    /// Prime filter separation by minimal or maximal points.
    pub filter_separation: bool,
    /// Element separation by some `c` or `d`.
    pub element_separation: bool,
    /// `{x : sat_closure(max E(x)) = X}`
    pub full_points: ElementSet,
    pub a: bool,
    pub b: Option<usize>,
    /// `sat_closure(min X)`
    pub min_closure: ElementSet,
    pub a_prime: Option<ElementSet>,
    pub b_prime: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    pub branch: Option<Branch>,
    pub congruence_count: usize,
    pub routes: Routes,
    pub conditions: Conditions,
    pub spectrum: Spectrum,
}

impl Classification {
    /// Re-evaluates the stored branch witness on the spectrum.
    pub fn witness_holds(&self) -> bool {
        let x = &self.spectrum.space;
        match self.branch {
            None => true,
            Some(Branch::A { last }) => {
                sat_closure(x, x.poset().minimal(x.all())).is_full()
                    && last_nabla_image(x) == Some(last)
                    && !last.is_empty()
            }
            Some(Branch::B { x: p }) => b_prime_holds(x, p),
        }
    }
}

fn route(simple: bool, si: bool, name: &str) -> Result<Verdict> {
    match (simple, si) {
        (true, true) => Err(Error::Falsified(format!(
            "{name}: conditions for simple and for subdirectly irreducible but not simple both hold"
        ))),
        (true, false) => Ok(Verdict::Simple),
        (false, true) => Ok(Verdict::SINotSimple),
        (false, false) => Ok(Verdict::Neither),
    }
}

/// Verdict from a congruence list: two congruences means simple; a unique
/// minimal non-identity congruence means subdirectly irreducible.
pub fn verdict_from_congruences(cons: &[EquivRelation]) -> Verdict {
    if cons.len() == 2 {
        return Verdict::Simple;
    }
    let non_id: Vec<&EquivRelation> = cons.iter().filter(|c| !c.is_identity()).collect();
    let atoms = non_id
        .iter()
        .filter(|c| !non_id.iter().any(|d| d != *c && refines(d, c)))
        .count();
    if cons.len() > 2 && atoms == 1 {
        Verdict::SINotSimple
    } else {
        Verdict::Neither
    }
}

/// Inclusion-greatest member of `∇_E(D(X)) ∖ {X}`, if one exists.
pub fn last_nabla_image(x: &MqSpace) -> Option<ElementSet> {
    let images: BTreeSet<ElementSet> = x
        .poset()
        .all_up_sets()
        .into_iter()
        .map(|u| x.nabla_e(u))
        .filter(|v| !v.is_full())
        .collect();
    images.iter().copied().find(|c| images.iter().all(|s| s.is_subset(c)))
}

fn b_prime_holds(x: &MqSpace, p: usize) -> bool {
    let c = sat_closure(x, x.poset().minimal(x.all()));
    !c.contains(p) && c.union(ElementSet::singleton(x.len(), p)).is_full() && x.e_up(p).is_full()
}

/// Separation of `a ≰ b` by an element: `c` with `a∧c ≠ 0 = b∧c`, or `d`
/// with `a∨d = 1 ≠ b∨d`. Returns a failing pair.
pub fn element_separation_failure(l: &DistLattice) -> Option<(usize, usize)> {
    let (bot, top) = (l.bottom(), l.top());
    for a in 0..l.len() {
        for b in 0..l.len() {
            if l.leq(a, b) {
                continue;
            }
            let by_meet = (0..l.len()).any(|c| l.meet(a, c) != bot && l.meet(b, c) == bot);
            let by_join = (0..l.len()).any(|d| l.join(b, d) != top && l.join(a, d) == top);
            if !by_meet && !by_join {
                return Some((a, b));
            }
        }
    }
    None
}

/// Separation of `a ≰ b` by a minimal or maximal prime filter.
pub fn filter_separation_failure(l: &DistLattice, s: &Spectrum) -> Option<(usize, usize)> {
    let p = s.space.poset();
    let ends = p.minimal(p.all()).union(p.maximal(p.all()));
    for a in 0..l.len() {
        for b in 0..l.len() {
            if l.leq(a, b) {
                continue;
            }
            if !ends.iter().any(|i| s.filters[i].members.contains(a) && !s.filters[i].members.contains(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Classifies `m` four ways and fails unless they agree.
pub fn classify(m: &MonadicLattice, limits: &Limits) -> Result<Classification> {
    classify_with(m, limits, Signature::monadic(m))
}

pub(crate) fn classify_with(
    m: &MonadicLattice,
    limits: &Limits,
    oracle_sig: Signature<'_>,
) -> Result<Classification> {
    check_cap(m.len(), limits)?;
    let l = m.lattice();
    let spectrum = spectrum(m)?;
    let x = &spectrum.space;
    let p = x.poset();
    let all = x.all();
    let n = x.len();
    let cons = congruence_oracle(l, oracle_sig);
    let family = id_saturated_family(x, limits)?;

    let pair_simple = m.is_simple_pair();
    let e_full = x.eq().is_full();
    let min_x = p.minimal(all);
    let ends = min_x.union(p.maximal(all));
    let min_max_cover = ends.is_full();
    let filter_separation = filter_separation_failure(l, &spectrum).is_none();
    let element_separation = element_separation_failure(l).is_none();

    let closures: Vec<ElementSet> = (0..n).map(|q| sat_closure(x, p.maximal(x.class(q)))).collect();
    let full_points = ElementSet::from_indices(n, (0..n).filter(|&q| closures[q].is_full()));
    let a = !full_points.is_empty() && !full_points.is_full();
    let b = (0..n).find(|&q| !closures[q].contains(q) && closures[q].union(ElementSet::singleton(n, q)).is_full());

    let min_closure = sat_closure(x, min_x);
    let a_prime = if min_closure.is_full() {
        last_nabla_image(x).filter(|s| !s.is_empty())
    } else {
        None
    };
    let b_prime = (0..n).find(|&q| b_prime_holds(x, q));

    let conditions = Conditions {
        pair_simple,
        e_full,
        min_max_cover,
        filter_separation,
        element_separation,
        full_points,
        a,
        b,
        min_closure,
        a_prime,
        b_prime,
    };

    let routes = if m.len() == 1 {
        Routes {
            oracle: Verdict::Neither,
            space: Verdict::Neither,
            algebra: Verdict::Neither,
            branches: Verdict::Neither,
        }
    } else {
        if pair_simple != e_full {
            return Err(Error::Falsified(format!(
                "simple pair = {pair_simple} but E = X×X is {e_full}"
            )));
        }
        if min_max_cover != filter_separation || filter_separation != element_separation {
            return Err(Error::Falsified(format!(
                "separation conditions disagree: cover {min_max_cover}, filters {filter_separation}, elements {element_separation}"
            )));
        }
        let greatest = family.greatest_proper();
        let r = Routes {
            oracle: verdict_from_congruences(&cons),
            space: route(e_full && min_max_cover, a != b.is_some(), "space route")?,
            algebra: route(
                pair_simple && element_separation,
                greatest.is_some() && family.len() > 2,
                "algebra route",
            )?,
            branches: route(
                pair_simple && sat_closure(x, ends).is_full(),
                a_prime.is_some() != b_prime.is_some(),
                "branch route",
            )?,
        };
        if pair_simple {
            let exceptional = (0..n).any(|q| !ends.contains(q) && ends.union(ElementSet::singleton(n, q)).is_full());
            if exceptional != (r.branches == Verdict::SINotSimple) {
                return Err(Error::Falsified(format!(
                    "simple pair: exceptional point exists = {exceptional} but branch route says {}",
                    r.branches
                )));
            }
        }
        r
    };
    if !routes.agree() {
        return Err(Error::Falsified(format!(
            "classification routes disagree: {routes:?}; conditions {conditions:?}; {} congruences",
            cons.len()
        )));
    }
    let verdict = routes.oracle;
    let branch = if verdict == Verdict::SINotSimple {
        match (a_prime, b_prime) {
            (Some(last), None) => Some(Branch::A { last }),
            (None, Some(q)) => Some(Branch::B { x: q }),
            _ => None,
        }
    } else {
        None
    };
    Ok(Classification { verdict, branch, congruence_count: cons.len(), routes, conditions, spectrum })
}

/// Classifies the dual algebra of a space.
pub fn classify_space(x: &MqSpace, limits: &Limits) -> Result<Classification> {
    let d = dual_algebra(x)?;
    classify(&d.algebra, limits)
}

/// Diagnostics around a single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinReport {
    /// `sat_closure(max E(x))`
    pub max_closure: ElementSet,
    /// `sat_closure(min E([x)))`
    pub min_closure: ElementSet,
    /// `sat_closure(max E(x) ∪ min E([x)))`
    pub union_closure: ElementSet,
    pub closures_coincide: bool,
    pub e_up_full: bool,
    /// `V = {x : E([x)) = X}`
    pub v: ElementSet,
    pub in_v: bool,
    pub v_decreasing: bool,
    pub v_saturated: bool,
}

pub fn min_check(x: &MqSpace, p: usize) -> Result<MinReport> {
    if p >= x.len() {
        return Err(Error::UnknownElement(format!("#{p}")));
    }
    let pos = x.poset();
    let maxes = pos.maximal(x.class(p));
    let mins = pos.minimal(x.e_up(p));
    let max_closure = sat_closure(x, maxes);
    let min_closure = sat_closure(x, mins);
    let union_closure = sat_closure(x, maxes.union(mins));
    let v = ElementSet::from_indices(x.len(), (0..x.len()).filter(|&q| x.e_up(q).is_full()));
    Ok(MinReport {
        max_closure,
        min_closure,
        union_closure,
        closures_coincide: max_closure == min_closure && min_closure == union_closure,
        e_up_full: x.e_up(p).is_full(),
        v,
        in_v: v.contains(p),
        v_decreasing: pos.is_decreasing(v),
        v_saturated: x.nabla_e(v) == v,
    })
}

/// Counts of each verdict, keyed by verdict.
pub fn tally(verdicts: impl IntoIterator<Item = Verdict>) -> BTreeMap<Verdict, usize> {
    let mut out = BTreeMap::new();
    for v in verdicts {
        *out.entry(v).or_insert(0) += 1;
    }
    out
}

/// Short human-readable form of a classification.
pub fn describe(c: &Classification) -> String {
    let x = &c.spectrum.space;
    match c.branch {
        Some(Branch::A { last }) => {
            let names: Vec<&str> = last.iter().map(|p| x.name(p)).collect();
            format!("{} via branch (a') with last element {{{}}}", c.verdict, names.join(","))
        }
        Some(Branch::B { x: p }) => format!("{} via branch (b') at {}", c.verdict, x.name(p)),
        None => format!("{}", c.verdict),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{up_set_lattice, DistLattice};
    use crate::monadic::enumerate_monadic;
    use crate::poset::FinitePoset;
    use crate::universe::unlabeled_posets;

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_indices(n, xs.iter().copied())
    }

    fn space(p: FinitePoset, labels: &[usize]) -> MqSpace {
        MqSpace::new(p, EquivRelation::from_labels(labels).unwrap()).unwrap()
    }

    fn chain_full(n: usize) -> MqSpace {
        space(FinitePoset::chain(n), &vec![0; n])
    }

    #[test]
    fn id_saturation_examples() {
        let x = chain_full(3);
        assert!(is_id_saturated(&x, set(3, &[])));
        assert!(is_id_saturated(&x, x.all()));
        assert!(is_id_saturated(&x, set(3, &[0, 2])));
        assert!(!is_id_saturated(&x, set(3, &[1])));
    }

    #[test]
    fn i_saturation_examples() {
        let x = chain_full(2);
        assert!(is_i_saturated(&x, set(2, &[])));
        assert!(is_i_saturated(&x, set(2, &[1])));
        assert!(!is_i_saturated(&x, set(2, &[0])));
    }

    #[test]
    fn closure_examples() {
        let x = chain_full(3);
        assert_eq!(sat_closure(&x, set(3, &[1])), x.all());
        assert_eq!(sat_closure(&x, set(3, &[0])), set(3, &[0, 2]));
        assert_eq!(sat_closure(&x, set(3, &[0, 2])), set(3, &[0, 2]));
    }

    #[test]
    fn family_examples() {
        let l = Limits::default();
        assert_eq!(id_saturated_family(&chain_full(2), &l).unwrap().sets, [set(2, &[]), set(2, &[0, 1])]);
        assert_eq!(
            id_saturated_family(&chain_full(3), &l).unwrap().sets,
            [set(3, &[]), set(3, &[0, 2]), set(3, &[0, 1, 2])]
        );
        let id = space(FinitePoset::chain(2), &[0, 1]);
        assert_eq!(id_saturated_family(&id, &l).unwrap().len(), 4);
    }

    #[test]
    fn theta_examples() {
        let m = MonadicLattice::simple(DistLattice::chain(4)).unwrap();
        let s = spectrum(&m).unwrap();
        assert_eq!(theta(&m, &s, s.space.all()).unwrap(), EquivRelation::identity(4));
        assert!(theta(&m, &s, set(3, &[])).unwrap().is_full());
        // Points: [1) = {1}, [b) = {b,1}, [a) = {a,b,1}; Y = {[1), [a)}.
        let names: Vec<&str> = (0..3).map(|i| s.space.name(i)).collect();
        assert_eq!(names, ["[1)", "[b)", "[a)"]);
        let t = theta(&m, &s, set(3, &[0, 2])).unwrap();
        assert_eq!(t, EquivRelation::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap());
        assert!(matches!(theta(&m, &s, set(3, &[1])), Err(Error::Precondition(_))));
    }

    #[test]
    fn oracle_examples() {
        let l = Limits::default();
        let two = MonadicLattice::discrete(DistLattice::chain(2));
        assert_eq!(brute_force_congruences(&two, &l).unwrap().len(), 2);
        let s3 = MonadicLattice::simple(DistLattice::chain(3)).unwrap();
        assert_eq!(brute_force_congruences(&s3, &l).unwrap().len(), 2);
        let s4 = MonadicLattice::simple(DistLattice::chain(4)).unwrap();
        assert_eq!(brute_force_congruences(&s4, &l).unwrap().len(), 3);
    }

    #[test]
    fn oracle_matches_partition_scan() {
        for n in 1..=4 {
            for p in unlabeled_posets(n).unwrap() {
                let l = up_set_lattice(&p);
                if l.len() > 8 {
                    continue;
                }
                assert_eq!(
                    congruence_oracle(&l, Signature::LATTICE),
                    congruences_by_partition_scan(&l, Signature::LATTICE).unwrap()
                );
                for m in enumerate_monadic(&l, &Limits::default()).unwrap() {
                    let sig = Signature::monadic(&m);
                    assert_eq!(congruence_oracle(&l, sig), congruences_by_partition_scan(&l, sig).unwrap());
                    let q = Signature::quantifier(m.nabla());
                    assert_eq!(congruence_oracle(&l, q), congruences_by_partition_scan(&l, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn con_m_examples() {
        let l = Limits::default();
        let s3 = con_m(&MonadicLattice::simple(DistLattice::chain(3)).unwrap(), &l).unwrap();
        assert_eq!((s3.family.len(), s3.len()), (2, 2));
        let s4 = con_m(&MonadicLattice::simple(DistLattice::chain(4)).unwrap(), &l).unwrap();
        assert_eq!((s4.family.len(), s4.len()), (3, 3));
    }

    #[test]
    fn identity_pair_adds_nothing() {
        for lat in [DistLattice::chain(3), DistLattice::chain(4), DistLattice::diamond()] {
            let m = MonadicLattice::discrete(lat.clone());
            let c = con_m(&m, &Limits::default()).unwrap();
            assert_eq!(c.len(), congruences_by_partition_scan(&lat, Signature::LATTICE).unwrap().len());
        }
    }

    #[test]
    fn q_congruence_examples() {
        let l = Limits::default();
        let c2 = DistLattice::chain(2);
        let (n2, _) = crate::monadic::simple_pair(&c2).unwrap();
        assert_eq!(q_congruences(&c2, &n2, &l).unwrap().len(), 2);

        let c3 = DistLattice::chain(3);
        let (n3, _) = crate::monadic::simple_pair(&c3).unwrap();
        let q = q_congruences(&c3, &n3, &l).unwrap();
        assert_eq!(q.len(), 3);
        // Spectrum points [1) ⊂ [a); the top one is [a), index 1.
        assert_eq!(q.family.sets, [set(2, &[]), set(2, &[1]), set(2, &[0, 1])]);

        let id: Vec<usize> = (0..3).collect();
        assert_eq!(q_congruences(&c3, &id, &l).unwrap().len(), 4);
    }

    #[test]
    fn classify_examples() {
        let l = Limits::default();
        let c = classify(&MonadicLattice::simple(DistLattice::chain(3)).unwrap(), &l).unwrap();
        assert_eq!((c.verdict, c.congruence_count), (Verdict::Simple, 2));

        let c = classify(&MonadicLattice::simple(DistLattice::chain(4)).unwrap(), &l).unwrap();
        assert_eq!(c.verdict, Verdict::SINotSimple);
        assert_eq!(c.congruence_count, 3);
        // The middle point of the spectrum chain is [b).
        assert_eq!(c.branch, Some(Branch::B { x: 1 }));
        assert_eq!(c.conditions.min_closure, set(3, &[0, 2]));
        assert!(c.witness_holds());

        let c = classify(&MonadicLattice::discrete(DistLattice::chain(3)), &l).unwrap();
        assert_eq!((c.verdict, c.congruence_count), (Verdict::Neither, 4));

        let c = classify(&MonadicLattice::discrete(DistLattice::chain(1)), &l).unwrap();
        assert_eq!(c.verdict, Verdict::Neither);
    }

    #[test]
    fn min_check_examples() {
        let x = chain_full(3);
        let r = min_check(&x, 1).unwrap();
        assert_eq!(r.max_closure, set(3, &[0, 2]));
        assert!(r.closures_coincide && r.e_up_full && r.in_v);

        let x = chain_full(2);
        let r = min_check(&x, 0).unwrap();
        assert!(r.e_up_full);
        assert_eq!(r.v, x.all());
        assert!(r.v_decreasing && r.v_saturated);

        let id = space(FinitePoset::chain(2), &[0, 1]);
        let r = min_check(&id, 1).unwrap();
        assert_eq!(r.max_closure, sat_closure(&id, set(2, &[1])));
        assert_eq!(r.min_closure, sat_closure(&id, set(2, &[1])));
        assert!(!r.e_up_full);
    }

    #[test]
    fn cap_is_enforced() {
        let m = MonadicLattice::discrete(DistLattice::chain(13));
        assert!(matches!(con_m(&m, &Limits::default()), Err(Error::CapExceeded { .. })));
    }
}
