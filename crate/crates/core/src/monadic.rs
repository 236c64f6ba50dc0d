//! The quantifier pair (∇, △) on a finite distributive lattice.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::{DistLattice, OpsRef};
use crate::{ElementSet, Error, Limits, Outcome, Result};

/// The eleven defining identities of an m-lattice.
///
/// M1–M4 make ∇ a quantifier, M5 adds idempotence, M6–M9 make △ an interior
/// operator and M10–M11 tie the two together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
    M8,
    M9,
    M10,
    M11,
}

impl Axiom {
    pub const ALL: [Axiom; 11] = [
        Axiom::M1,
        Axiom::M2,
        Axiom::M3,
        Axiom::M4,
        Axiom::M5,
        Axiom::M6,
        Axiom::M7,
        Axiom::M8,
        Axiom::M9,
        Axiom::M10,
        Axiom::M11,
    ];

    pub const QUANTIFIER: [Axiom; 5] = [Axiom::M1, Axiom::M2, Axiom::M3, Axiom::M4, Axiom::M5];

    pub fn identity(&self) -> &'static str {
        match self {
            Axiom::M1 => "∇0 = 0",
            Axiom::M2 => "x ∧ ∇x = x",
            Axiom::M3 => "∇(x ∧ ∇y) = ∇x ∧ ∇y",
            Axiom::M4 => "∇(x ∨ y) = ∇x ∨ ∇y",
            Axiom::M5 => "∇∇x = ∇x",
            Axiom::M6 => "△1 = 1",
            Axiom::M7 => "x ∧ △x = △x",
            Axiom::M8 => "△(x ∧ y) = △x ∧ △y",
            Axiom::M9 => "△△x = △x",
            Axiom::M10 => "∇△x = △x",
            Axiom::M11 => "△∇x = ∇x",
        }
    }

    /// Number of free variables, i.e. the length of a failure witness.
    pub fn arity(&self) -> usize {
        match self {
            Axiom::M1 | Axiom::M6 => 0,
            Axiom::M3 | Axiom::M4 | Axiom::M8 => 2,
            _ => 1,
        }
    }

    /// Evaluates the identity at `args`; `args.len()` must equal the arity.
    pub fn holds_at(&self, l: &DistLattice, nabla: &[usize], delta: &[usize], args: &[usize]) -> bool {
        let (nab, del) = (|x: usize| nabla[x], |x: usize| delta[x]);
        let x = args.first().copied().unwrap_or(0);
        let y = args.get(1).copied().unwrap_or(0);
        match self {
            Axiom::M1 => nab(l.bottom()) == l.bottom(),
            Axiom::M2 => l.meet(x, nab(x)) == x,
            Axiom::M3 => nab(l.meet(x, nab(y))) == l.meet(nab(x), nab(y)),
            Axiom::M4 => nab(l.join(x, y)) == l.join(nab(x), nab(y)),
            Axiom::M5 => nab(nab(x)) == nab(x),
            Axiom::M6 => del(l.top()) == l.top(),
            Axiom::M7 => l.meet(x, del(x)) == del(x),
            Axiom::M8 => del(l.meet(x, y)) == l.meet(del(x), del(y)),
            Axiom::M9 => del(del(x)) == del(x),
            Axiom::M10 => nab(del(x)) == del(x),
            Axiom::M11 => del(nab(x)) == nab(x),
        }
    }

    /// First failing argument tuple in lexicographic order.
    pub fn check(&self, l: &DistLattice, nabla: &[usize], delta: &[usize]) -> Outcome {
        let n = l.len();
        let witness = match self.arity() {
            0 => (!self.holds_at(l, nabla, delta, &[])).then(Vec::new),
            1 => (0..n).find(|&x| !self.holds_at(l, nabla, delta, &[x])).map(|x| vec![x]),
            _ => (0..n * n)
                .map(|k| [k / n, k % n])
                .find(|a| !self.holds_at(l, nabla, delta, a))
                .map(|a| a.to_vec()),
        };
        Outcome::from_witness(witness)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Per-axiom outcomes with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub entries: Vec<(Axiom, Outcome)>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.entries.iter().all(|(_, o)| o.holds())
    }

    pub fn get(&self, a: Axiom) -> Option<&Outcome> {
        self.entries.iter().find(|(b, _)| *b == a).map(|(_, o)| o)
    }

    pub fn first_failure(&self) -> Option<(Axiom, &[usize])> {
        self.entries.iter().find_map(|(a, o)| o.witness().map(|w| (*a, w)))
    }
}

fn check_table(l: &DistLattice, t: &[usize], what: &'static str) -> Result<()> {
    if t.len() != l.len() {
        return Err(Error::BadTable(what));
    }
    if t.iter().any(|&x| x >= l.len()) {
        return Err(Error::BadTable(what));
    }
    Ok(())
}

/// Checks M1–M11 over the whole carrier.
pub fn validate_monadic(l: &DistLattice, nabla: &[usize], delta: &[usize]) -> Result<AxiomReport> {
    check_table(l, nabla, "∇ table must be total on the carrier")?;
    check_table(l, delta, "△ table must be total on the carrier")?;
    let entries = Axiom::ALL.iter().map(|a| (*a, a.check(l, nabla, delta))).collect();
    Ok(AxiomReport { entries })
}

/// Checks only M1–M5, i.e. that `nabla` is an idempotent quantifier.
pub fn validate_quantifier(l: &DistLattice, nabla: &[usize]) -> Result<AxiomReport> {
    check_table(l, nabla, "∇ table must be total on the carrier")?;
    let entries = Axiom::QUANTIFIER.iter().map(|a| (*a, a.check(l, nabla, nabla))).collect();
    Ok(AxiomReport { entries })
}

/// A bounded distributive lattice with ∇ and △ satisfying M1–M11.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonadicLattice {
    lattice: DistLattice,
    nabla: Vec<usize>,
    delta: Vec<usize>,
}

impl MonadicLattice {
    /// Fails with [`Error::Precondition`] naming the first violated axiom.
    pub fn new(lattice: DistLattice, nabla: Vec<usize>, delta: Vec<usize>) -> Result<Self> {
        let report = validate_monadic(&lattice, &nabla, &delta)?;
        if let Some((ax, w)) = report.first_failure() {
            return Err(Error::Precondition(format!(
                "{ax} ({}) fails at {w:?}",
                ax.identity()
            )));
        }
        Ok(MonadicLattice { lattice, nabla, delta })
    }

    pub(crate) fn new_unchecked(lattice: DistLattice, nabla: Vec<usize>, delta: Vec<usize>) -> Self {
        MonadicLattice { lattice, nabla, delta }
    }

    /// ∇ = △ = identity.
    pub fn discrete(lattice: DistLattice) -> Self {
        let id: Vec<usize> = (0..lattice.len()).collect();
        MonadicLattice { lattice, nabla: id.clone(), delta: id }
    }

    /// The lattice with its simple pair.
    pub fn simple(lattice: DistLattice) -> Result<Self> {
        let (nabla, delta) = simple_pair(&lattice)?;
        Ok(MonadicLattice { lattice, nabla, delta })
    }

    pub fn lattice(&self) -> &DistLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn nabla(&self) -> &[usize] {
        &self.nabla
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    pub fn ops(&self) -> OpsRef<'_> {
        OpsRef { nabla: &self.nabla, delta: &self.delta }
    }

    pub fn validate(&self) -> AxiomReport {
        validate_monadic(&self.lattice, &self.nabla, &self.delta).expect("tables are total")
    }

    /// `∇(L)`
    pub fn nabla_range(&self) -> ElementSet {
        ElementSet::from_indices(self.len(), self.nabla.iter().copied())
    }

    /// `△(L)`
    pub fn delta_range(&self) -> ElementSet {
        ElementSet::from_indices(self.len(), self.delta.iter().copied())
    }

    pub fn is_simple_pair(&self) -> bool {
        is_simple_pair(self)
    }
}

/// `∇0 = 0`, `∇x = 1` otherwise; `△1 = 1`, `△x = 0` otherwise.
pub fn simple_pair(l: &DistLattice) -> Result<(Vec<usize>, Vec<usize>)> {
    if l.len() < 2 {
        return Err(Error::Degenerate("the simple pair needs 0 ≠ 1"));
    }
    let (b, t) = (l.bottom(), l.top());
    let nabla = (0..l.len()).map(|x| if x == b { b } else { t }).collect();
    let delta = (0..l.len()).map(|x| if x == t { t } else { b }).collect();
    Ok((nabla, delta))
}

pub fn is_simple_pair(m: &MonadicLattice) -> bool {
    match simple_pair(m.lattice()) {
        Ok((nabla, delta)) => nabla == m.nabla && delta == m.delta,
        Err(_) => false,
    }
}

/// All idempotent quantifiers (M1–M5) on `l`, sorted by table.
///
/// A quantifier preserves finite joins, so it is fixed by its values on the
/// join-irreducibles; the search assigns those and prunes with
/// `x ≤ ∇x` and `x ≤ ∇y ⟹ ∇x ≤ ∇y`.
pub fn enumerate_quantifiers(l: &DistLattice) -> Vec<Vec<usize>> {
    let n = l.len();
    let order = l.order().linear_extension();
    let jis: Vec<usize> = order.iter().copied().filter(|&x| l.join_irreducibles().contains(x)).collect();
    let mut out = Vec::new();
    let mut vals = vec![usize::MAX; n];
    fn go(l: &DistLattice, jis: &[usize], k: usize, vals: &mut [usize], out: &mut Vec<Vec<usize>>) {
        if k == jis.len() {
            let n = l.len();
            let table: Vec<usize> = (0..n)
                .map(|x| {
                    jis.iter()
                        .filter(|&&j| l.leq(j, x))
                        .fold(l.bottom(), |acc, &j| l.join(acc, vals[j]))
                })
                .collect();
            if Axiom::QUANTIFIER.iter().all(|a| a.check(l, &table, &table).holds()) {
                out.push(table);
            }
            return;
        }
        let j = jis[k];
        for v in l.principal_filter(j).iter() {
            let ok = jis[..k].iter().all(|&i| {
                let w = vals[i];
                (!l.leq(i, j) || l.leq(w, v))
                    && (!l.leq(i, v) || l.leq(w, v))
                    && (!l.leq(j, w) || l.leq(v, w))
            });
            if ok {
                vals[j] = v;
                go(l, jis, k + 1, vals, out);
            }
        }
        vals[j] = usize::MAX;
    }
    go(l, &jis, 0, &mut vals, &mut out);
    out.sort();
    out
}

/// All interior operators △ completing `nabla` to an m-lattice (M6–M11),
/// sorted by table. Dual to [`enumerate_quantifiers`]: △ preserves finite
/// meets and is fixed by its values on meet-irreducibles, which must lie in
/// the range of ∇ (M10).
pub fn enumerate_interiors(l: &DistLattice, nabla: &[usize]) -> Vec<Vec<usize>> {
    let n = l.len();
    let mut order = l.order().linear_extension();
    order.reverse();
    let mis: Vec<usize> = order.iter().copied().filter(|&x| l.meet_irreducibles().contains(x)).collect();
    let fixed = ElementSet::from_indices(n, (0..n).filter(|&x| nabla[x] == x));
    let mut out = Vec::new();
    let mut vals = vec![usize::MAX; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        l: &DistLattice,
        nabla: &[usize],
        mis: &[usize],
        fixed: ElementSet,
        k: usize,
        vals: &mut [usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == mis.len() {
            let n = l.len();
            let table: Vec<usize> = (0..n)
                .map(|x| {
                    mis.iter()
                        .filter(|&&m| l.leq(x, m))
                        .fold(l.top(), |acc, &m| l.meet(acc, vals[m]))
                })
                .collect();
            if Axiom::ALL[5..].iter().all(|a| a.check(l, nabla, &table).holds()) {
                out.push(table);
            }
            return;
        }
        let m = mis[k];
        let candidates = l.order().down_of(m).intersection(fixed);
        for v in candidates.iter() {
            let ok = mis[..k].iter().all(|&i| {
                let w = vals[i];
                (!l.leq(m, i) || l.leq(v, w))
                    && (!l.leq(v, i) || l.leq(v, w))
                    && (!l.leq(w, m) || l.leq(w, v))
            });
            if ok {
                vals[m] = v;
                go(l, nabla, mis, fixed, k + 1, vals, out);
            }
        }
        vals[m] = usize::MAX;
    }
    go(l, nabla, &mis, fixed, 0, &mut vals, &mut out);
    out.sort();
    out
}

/// Every (∇, △) pair on `l` satisfying M1–M11, sorted by (∇, △) tables.
pub fn enumerate_monadic(l: &DistLattice, limits: &Limits) -> Result<Vec<MonadicLattice>> {
    if l.len() > limits.max_monadic_lattice {
        return Err(Error::CapExceeded {
            what: "monadic enumeration lattice size",
            size: l.len() as u64,
            cap: limits.max_monadic_lattice as u64,
        });
    }
    let mut out = Vec::new();
    for nabla in enumerate_quantifiers(l) {
        for delta in enumerate_interiors(l, &nabla) {
            out.push(MonadicLattice::new_unchecked(l.clone(), nabla.clone(), delta));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::up_set_lattice;
    use crate::poset::FinitePoset;

    /// Every pair of unary tables, checked against all eleven axioms.
    fn brute_force(l: &DistLattice) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = l.len();
        let tables: Vec<Vec<usize>> = (0..n.pow(n as u32))
            .map(|mut k| {
                (0..n)
                    .map(|_| {
                        let d = k % n;
                        k /= n;
                        d
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        for nab in &tables {
            if !Axiom::QUANTIFIER.iter().all(|a| a.check(l, nab, nab).holds()) {
                continue;
            }
            for del in &tables {
                if validate_monadic(l, nab, del).unwrap().passes() {
                    out.push((nab.clone(), del.clone()));
                }
            }
        }
        out.sort();
        out
    }

    fn tables(ms: &[MonadicLattice]) -> Vec<(Vec<usize>, Vec<usize>)> {
        ms.iter().map(|m| (m.nabla().to_vec(), m.delta().to_vec())).collect()
    }

    #[test]
    fn identity_pair_passes_everywhere() {
        for l in [DistLattice::chain(1), DistLattice::chain(4), DistLattice::diamond()] {
            assert!(MonadicLattice::discrete(l).validate().passes());
        }
    }

    #[test]
    fn simple_pair_on_three_chain() {
        let l = DistLattice::chain(3);
        let (nabla, delta) = simple_pair(&l).unwrap();
        assert_eq!(nabla, [0, 2, 2]);
        assert_eq!(delta, [0, 0, 2]);
        assert!(validate_monadic(&l, &nabla, &delta).unwrap().passes());
    }

    #[test]
    fn m11_failure_has_witness() {
        let l = DistLattice::chain(3);
        let report = validate_monadic(&l, &[0, 1, 2], &[0, 0, 2]).unwrap();
        assert_eq!(report.get(Axiom::M11), Some(&Outcome::Fail(vec![1])));
        assert!(!Axiom::M11.holds_at(&l, &[0, 1, 2], &[0, 0, 2], &[1]));
        assert!(MonadicLattice::new(l, vec![0, 1, 2], vec![0, 0, 2]).is_err());
    }

    #[test]
    fn simple_pair_examples() {
        let c2 = DistLattice::chain(2);
        assert_eq!(simple_pair(&c2).unwrap(), (vec![0, 1], vec![0, 1]));
        let d = DistLattice::diamond();
        assert_eq!(simple_pair(&d).unwrap(), (vec![0, 3, 3, 3], vec![0, 0, 0, 3]));
        assert_eq!(
            simple_pair(&DistLattice::chain(1)),
            Err(Error::Degenerate("the simple pair needs 0 ≠ 1"))
        );
    }

    #[test]
    fn is_simple_pair_examples() {
        let c3 = DistLattice::chain(3);
        assert!(MonadicLattice::simple(c3.clone()).unwrap().is_simple_pair());
        assert!(!MonadicLattice::discrete(c3).is_simple_pair());
        // On the two-element lattice the identity pair is the simple pair.
        assert!(MonadicLattice::discrete(DistLattice::chain(2)).is_simple_pair());
    }

    #[test]
    fn bad_tables_are_rejected() {
        let l = DistLattice::chain(2);
        assert!(validate_monadic(&l, &[0], &[0, 1]).is_err());
        assert!(validate_monadic(&l, &[0, 1], &[0, 5]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let lim = Limits::default();
        assert_eq!(enumerate_monadic(&DistLattice::chain(2), &lim).unwrap().len(), 1);
        assert_eq!(enumerate_monadic(&DistLattice::chain(1), &lim).unwrap().len(), 1);
        let c3 = enumerate_monadic(&DistLattice::chain(3), &lim).unwrap();
        let t = tables(&c3);
        assert!(t.contains(&(vec![0, 1, 2], vec![0, 1, 2])));
        assert!(t.contains(&(vec![0, 2, 2], vec![0, 0, 2])));
    }

    #[test]
    fn enumeration_matches_exhaustive_table_search() {
        let lim = Limits::default();
        let lattices = [
            DistLattice::chain(1),
            DistLattice::chain(2),
            DistLattice::chain(3),
            DistLattice::chain(4),
            DistLattice::diamond(),
            up_set_lattice(&FinitePoset::from_index_pairs(3, &[(0, 1), (0, 2)]).unwrap()),
        ];
        for l in lattices {
            let fast = tables(&enumerate_monadic(&l, &lim).unwrap());
            assert_eq!(fast, brute_force(&l), "lattice of size {}", l.len());
        }
    }

    #[test]
    fn enumeration_cap() {
        let lim = Limits { max_monadic_lattice: 3, ..Limits::default() };
        assert!(matches!(
            enumerate_monadic(&DistLattice::chain(4), &lim),
            Err(Error::CapExceeded { .. })
        ));
    }
}
