//! The theorem-instance suite: every checkable statement evaluated on every
//! structure of a finite universe, with per-statement tallies.
//!
//! The universe of size `n` consists of
//!
//! * spaces: every labeled poset on `1..=n` points with every equivalence;
//! * lattices: the up-set lattice of one poset per isomorphism class on
//!   `0..n` points, with every monadic structure on it;
//! * maps: every function between every pair of mq-spaces on at most
//!   `min(n, 3)` points.
//!
//! The work is split into items so a driver can run them in parallel and
//! merge the reports in item order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::congruence::{
    classify_with, con_m_with, id_saturated_family, is_id_saturated, last_nabla_image, min_check,
    q_congruences, sat_closure, Branch, Signature, Verdict,
};
use crate::duality::{dual_algebra, dual_map, epsilon_iso, sigma_iso, spectrum, MqSpace, Spectrum};
use crate::frames::{check_map, e_induced_failure, evaluate_space, evaluate_map, all_maps, MAP_CROSS_CHECKS};
use crate::lattice::up_set_lattice;
use crate::monadic::{enumerate_monadic, MonadicLattice};
use crate::poset::{EquivRelation, FinitePoset};
use crate::universe::{labeled_posets, set_partitions, unlabeled_posets};
use crate::{ElementSet, Error, Limits, Outcome, Result};

/// Deliberate defects for testing that the suite detects failures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// The congruence oracle forgets `△`, so it reports congruences that
    /// are not m-congruences.
    OracleIgnoresDelta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Duality,
    Congruences,
    Classification,
    Morphisms,
    Frames,
    /// Recorded facts that are not claimed as theorems; failures here are
    /// not falsifications.
    Observation,
}

impl Group {
    pub const ALL: [Group; 6] = [
        Group::Duality,
        Group::Congruences,
        Group::Classification,
        Group::Morphisms,
        Group::Frames,
        Group::Observation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Duality => "duality",
            Group::Congruences => "congruences",
            Group::Classification => "classification",
            Group::Morphisms => "morphisms",
            Group::Frames => "frames",
            Group::Observation => "observation",
        }
    }
}

/// Most witnesses kept per statement.
pub const MAX_WITNESSES: usize = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
    pub vacuous: u64,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub tallies: BTreeMap<(Group, &'static str), Tally>,
}

impl SuiteReport {
    fn entry(&mut self, g: Group, name: &'static str) -> &mut Tally {
        self.tallies.entry((g, name)).or_default()
    }

    pub fn pass(&mut self, g: Group, name: &'static str) {
        self.entry(g, name).checked += 1;
    }

    pub fn vacuous(&mut self, g: Group, name: &'static str) {
        let t = self.entry(g, name);
        t.checked += 1;
        t.vacuous += 1;
    }

    pub fn fail(&mut self, g: Group, name: &'static str, witness: String) {
        let t = self.entry(g, name);
        t.checked += 1;
        t.failed += 1;
        if t.witnesses.len() < MAX_WITNESSES {
            t.witnesses.push(witness);
        }
    }

    /// Records `ok`, building the witness only on failure.
    pub fn check(&mut self, g: Group, name: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(g, name);
        } else {
            self.fail(g, name, witness());
        }
    }

    /// A check that only applies when `applies`; otherwise vacuous.
    pub fn implication(
        &mut self,
        g: Group,
        name: &'static str,
        applies: bool,
        ok: impl FnOnce() -> bool,
        witness: impl FnOnce() -> String,
    ) {
        if !applies {
            self.vacuous(g, name);
        } else if ok() {
            self.pass(g, name);
        } else {
            self.fail(g, name, witness());
        }
    }

    fn result<T>(&mut self, g: Group, name: &'static str, r: Result<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => {
                self.pass(g, name);
                Some(v)
            }
            Err(e) => {
                self.fail(g, name, format!("{}: {e}", ctx()));
                None
            }
        }
    }

    pub fn merge(&mut self, other: SuiteReport) {
        for (k, t) in other.tallies {
            let mine = self.tallies.entry(k).or_default();
            mine.checked += t.checked;
            mine.failed += t.failed;
            mine.vacuous += t.vacuous;
            for w in t.witnesses {
                if mine.witnesses.len() < MAX_WITNESSES {
                    mine.witnesses.push(w);
                }
            }
        }
    }

    /// Failed theorem instances, not counting observations.
    pub fn falsifications(&self) -> u64 {
        self.tallies.iter().filter(|((g, _), _)| *g != Group::Observation).map(|(_, t)| t.failed).sum()
    }

    pub fn group_falsifications(&self, g: Group) -> u64 {
        self.tallies.iter().filter(|((h, _), _)| *h == g).map(|(_, t)| t.failed).sum()
    }

    pub fn group_checked(&self, g: Group) -> u64 {
        self.tallies.iter().filter(|((h, _), _)| *h == g).map(|(_, t)| t.checked).sum()
    }

    pub fn get(&self, g: Group, name: &str) -> Option<&Tally> {
        self.tallies.iter().find(|((h, n), _)| *h == g && *n == name).map(|(_, t)| t)
    }
}

/// One unit of work.
#[derive(Clone, Debug)]
pub enum Item {
    Space(FinitePoset, EquivRelation),
    Lattice(FinitePoset),
    /// Every map between two spaces.
    Maps(MqSpace, MqSpace),
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub limits: Limits,
    pub fault: Fault,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { limits: Limits::universe(), fault: Fault::None }
    }
}

/// Largest space size for the map part of the universe.
pub const MAP_UNIVERSE: usize = 3;

pub fn space_items(n: usize) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    for k in 1..=n {
        let parts = set_partitions(k)?;
        for p in labeled_posets(k)? {
            for e in &parts {
                out.push(Item::Space(p.clone(), e.clone()));
            }
        }
    }
    Ok(out)
}

pub fn lattice_items(n: usize) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    for k in 0..n {
        for p in unlabeled_posets(k)? {
            out.push(Item::Lattice(p));
        }
    }
    Ok(out)
}

/// Every mq-space on `1..=n` labeled points.
pub fn mq_spaces(n: usize) -> Result<Vec<MqSpace>> {
    let mut out = Vec::new();
    for k in 1..=n {
        let parts = set_partitions(k)?;
        for p in labeled_posets(k)? {
            for e in &parts {
                let x = MqSpace::unchecked(p.clone(), e.clone())?;
                if x.is_mq_space() {
                    out.push(x);
                }
            }
        }
    }
    Ok(out)
}

pub fn map_items(n: usize) -> Result<Vec<Item>> {
    let spaces = mq_spaces(n.min(MAP_UNIVERSE))?;
    let mut out = Vec::new();
    for a in &spaces {
        for b in &spaces {
            out.push(Item::Maps(a.clone(), b.clone()));
        }
    }
    Ok(out)
}

/// All items of the size-`n` universe, in a fixed order.
pub fn universe_items(n: usize, limits: &Limits) -> Result<Vec<Item>> {
    if n > limits.max_poset {
        return Err(Error::CapExceeded { what: "universe size", size: n as u64, cap: limits.max_poset as u64 });
    }
    let mut out = space_items(n)?;
    out.extend(lattice_items(n)?);
    out.extend(map_items(n)?);
    Ok(out)
}

pub fn run_item(item: &Item, cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::default();
    match item {
        Item::Space(p, e) => space_checks(&mut r, p, e, cfg),
        Item::Lattice(p) => lattice_checks(&mut r, p, cfg),
        Item::Maps(a, b) => map_checks(&mut r, a, b, cfg),
    }
    r
}

/// Runs the whole universe sequentially.
pub fn run_suite(n: usize, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut out = SuiteReport::default();
    for item in universe_items(n, &cfg.limits)? {
        out.merge(run_item(&item, cfg));
    }
    Ok(out)
}

fn oracle_sig(m: &MonadicLattice, fault: Fault) -> Signature<'_> {
    match fault {
        Fault::None => Signature::monadic(m),
        Fault::OracleIgnoresDelta => Signature::quantifier(m.nabla()),
    }
}

fn show(x: &MqSpace) -> String {
    let order: Vec<String> = x
        .poset()
        .covers()
        .iter()
        .map(|&(a, b)| format!("{}<{}", x.name(a), x.name(b)))
        .collect();
    let classes: Vec<String> = x
        .eq()
        .blocks()
        .iter()
        .map(|b| {
            let names: Vec<&str> = b.iter().map(|i| x.name(i)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    format!("space [{}] classes {}", order.join(" "), classes.join(""))
}

fn show_set(x: &MqSpace, s: ElementSet) -> String {
    let names: Vec<&str> = s.iter().map(|i| x.name(i)).collect();
    format!("{{{}}}", names.join(","))
}

fn space_checks(r: &mut SuiteReport, p: &FinitePoset, e: &EquivRelation, cfg: &SuiteConfig) {
    use Group::*;
    let Ok(frame) = evaluate_space(p, e) else {
        r.fail(Frames, "space report", "carrier mismatch".to_string());
        return;
    };
    let x = MqSpace::unchecked(p.clone(), e.clone()).expect("same carrier");
    let nonempty = !p.is_empty();
    r.implication(Frames, "mq-space iff mk-frame", nonempty, || frame.is_mq_space() == frame.is_mk_frame(), || show(&x));
    r.implication(Frames, "paK-frame implies mk-frame", frame.is_pak_frame(), || frame.is_mk_frame(), || show(&x));
    r.check(Observation, "paK-frame iff mk-frame", frame.is_pak_frame() == frame.is_mk_frame(), || show(&x));
    let up_form = x.up_class_failure().is_none();
    let down_form = x.down_class_failure().is_none();
    r.check(Frames, "mq1 iff [E(x)) ⊆ E([x)) iff E((x]) ⊆ (E(x)]", up_form == x.is_mq_space() && down_form == up_form, || show(&x));
    r.check(Frames, "finite E1 iff mq1", frame.e1.holds() == frame.mq1.holds(), || show(&x));
    r.check(Frames, "E(x) is convex in a q-space", !frame.is_q_space() || convexity_failure(&x).is_none(), || show(&x));
    if !x.is_mq_space() {
        return;
    }
    r.check(Frames, "E is induced by E∘≤", e_induced_failure(&x).is_none(), || show(&x));

    // Duality.
    let dual = r.result(Duality, "dual algebra is an m-lattice", dual_algebra(&x), || show(&x));
    r.result(Duality, "ε is an isomorphism of mq-spaces", epsilon_iso(&x), || show(&x));
    let ups = p.all_up_sets();
    let n = x.len();
    for pt in 0..n {
        r.check(Duality, "E([x)) is increasing", p.is_increasing(x.e_up(pt)), || show(&x));
    }
    for &u in &ups {
        let lemma = ElementSet::from_indices(n, (0..n).filter(|&q| x.e_up(q).is_subset(&u)));
        r.check(Duality, "△_E(U) = {x : E([x)) ⊆ U}", x.delta_e(u) == lemma, || format!("{} U={}", show(&x), show_set(&x, u)));
    }

    saturation_checks(r, &x, &ups, cfg);

    let Some(dual) = dual else { return };
    let m = &dual.algebra;
    r.check(
        Classification,
        "∇_E is the simple quantifier iff E = X×X",
        m.is_simple_pair() == x.eq().is_full(),
        || show(&x),
    );
    if m.len() <= cfg.limits.max_congruence_lattice {
        r.result(
            Congruences,
            "Θ is an order-reversing bijection onto the m-congruences",
            con_m_with(m, &cfg.limits, oracle_sig(m, cfg.fault)),
            || show(&x),
        );
        classification_checks(r, m, cfg, || show(&x));
    }
}

fn convexity_failure(x: &MqSpace) -> Option<(usize, usize, usize)> {
    let p = x.poset();
    for a in 0..x.len() {
        for c in p.up_of(a).iter().filter(|&c| x.eq().related(a, c)) {
            for b in p.up_of(a).intersection(p.down_of(c)).iter() {
                if !x.eq().related(a, b) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

fn saturation_checks(r: &mut SuiteReport, x: &MqSpace, ups: &[ElementSet], cfg: &SuiteConfig) {
    use Group::Classification as C;
    let p = x.poset();
    let n = x.len();
    let all = x.all();
    let Ok(family) = id_saturated_family(x, &cfg.limits) else {
        r.fail(C, "saturated family within cap", show(x));
        return;
    };
    let subsets: Vec<ElementSet> = (0..1u64 << n).map(|b| ElementSet::from_bits(n, b)).collect();
    let closure: Vec<ElementSet> = subsets.iter().map(|&y| sat_closure(x, y)).collect();

    for (i, &y) in subsets.iter().enumerate() {
        let c = closure[i];
        let ok = y.is_subset(&c) && closure[c.bits() as usize] == c && is_id_saturated(x, c);
        r.check(C, "saturated closure is extensive, idempotent and saturated", ok, || show_set(x, y));
        r.check(C, "fixed sets of the saturated closure are the id-saturated sets", (c == y) == family.sets.contains(&y), || {
            show_set(x, y)
        });
        // Closed sets in a finite space are all subsets.
        r.vacuous(C, "closure of an id-saturated set is id-saturated");
        let by_max = y.iter().all(|q| sat_closure(x, p.maximal(x.class(q))).is_subset(&y));
        let by_min = y.iter().all(|q| sat_closure(x, p.minimal(x.e_up(q))).is_subset(&y));
        let sat = family.sets.contains(&y);
        r.check(C, "id-saturated iff closed under max-class and min-up closures", sat == by_max && by_max == by_min, || {
            format!("{} Y={}", show(x), show_set(x, y))
        });
    }
    for (i, &y) in subsets.iter().enumerate() {
        for (j, &z) in subsets.iter().enumerate() {
            if y.is_subset(&z) {
                r.check(C, "saturated closure is monotone", closure[i].is_subset(&closure[j]), || {
                    format!("{} {} ⊆ {}", show(x), show_set(x, y), show_set(x, z))
                });
            }
        }
    }

    for pt in 0..n {
        r.check(C, "E([x)) is id-saturated", is_id_saturated(x, x.e_up(pt)), || show(x));
        let mins = p.minimal(x.e_up(pt));
        r.check(C, "E(x) = E(m) for some m ∈ min E([x))", mins.iter().any(|m| x.eq().related(pt, m)), || {
            format!("{} x={}", show(x), x.name(pt))
        });
        let maxes = p.maximal(x.class(pt));
        for f in &family.sets {
            r.implication(
                C,
                "saturated F ⊇ max E(x) contains min E([x))",
                maxes.is_subset(f),
                || mins.is_subset(f),
                || format!("{} x={} F={}", show(x), x.name(pt), show_set(x, *f)),
            );
        }
        let mc = min_check(x, pt).expect("point in range");
        r.check(C, "closures of max E(x), min E([x)) and their union coincide", mc.closures_coincide, || {
            format!("{} x={}", show(x), x.name(pt))
        });
        let min_x_closure = sat_closure(x, p.minimal(all));
        let i = mc.max_closure.is_full();
        let ii = mc.min_closure.is_full();
        let iii = mc.e_up_full && min_x_closure.is_full();
        r.check(C, "full max-class closure iff full min-up closure iff E([x)) = X and full min X closure", i == ii && ii == iii, || {
            format!("{} x={}", show(x), x.name(pt))
        });
        if pt == 0 {
            r.check(C, "V = {x : E([x)) = X} is decreasing and E-saturated", mc.v_decreasing && mc.v_saturated, || show(x));
            for &u in ups {
                let nu = x.nabla_e(u);
                r.implication(
                    C,
                    "proper ∇_E(U) ≠ X avoids V",
                    !u.is_full() && !nu.is_full(),
                    || nu.is_disjoint(&mc.v),
                    || format!("{} U={}", show(x), show_set(x, u)),
                );
            }
        }
        for z in 0..n {
            r.implication(
                C,
                "z ∉ E([y)) is separated by some ∇_E(U)",
                !x.e_up(pt).contains(z),
                || ups.iter().any(|&u| x.nabla_e(u).contains(pt) && !x.nabla_e(u).contains(z)),
                || format!("{} y={} z={}", show(x), x.name(pt), x.name(z)),
            );
        }
    }
    for &u in ups {
        r.check(C, "∇_E(U) is id-saturated", is_id_saturated(x, x.nabla_e(u)), || {
            format!("{} U={}", show(x), show_set(x, u))
        });
    }
    let e_full = x.eq().is_full();
    let ends = p.minimal(all).union(p.maximal(all));
    r.implication(C, "E = X×X makes min X ∪ max X id-saturated", e_full, || is_id_saturated(x, ends), || show(x));
    for &y in &subsets {
        r.implication(
            C,
            "E = X×X: non-empty Y is id-saturated iff it contains min X ∪ max X",
            e_full && !y.is_empty(),
            || family.sets.contains(&y) == ends.is_subset(&y),
            || format!("{} Y={}", show(x), show_set(x, y)),
        );
    }
    r.implication(
        C,
        "E = X×X: min X ∪ max X is the least non-empty id-saturated set",
        e_full,
        || family.sets.iter().filter(|s| !s.is_empty()).all(|s| ends.is_subset(s)),
        || show(x),
    );
}

fn classification_checks(r: &mut SuiteReport, m: &MonadicLattice, cfg: &SuiteConfig, ctx: impl Fn() -> String) {
    use Group::*;
    let Some(c) = r.result(
        Classification,
        "classification routes agree",
        classify_with(m, &cfg.limits, oracle_sig(m, cfg.fault)),
        &ctx,
    ) else {
        return;
    };
    r.check(Classification, "classification witness re-verifies", c.witness_holds(), &ctx);
    if m.len() > 1 {
        let k = &c.conditions;
        r.check(Observation, "branch (a) iff branch (a')", k.a == k.a_prime.is_some(), &ctx);
        r.check(Observation, "branch (b) iff branch (b')", k.b.is_some() == k.b_prime.is_some(), &ctx);
        if let Some(Branch::A { last }) = c.branch {
            r.check(Observation, "last proper ∇_E image is found", Some(last) == last_nabla_image(&c.spectrum.space), &ctx);
        }
    }
    match c.verdict {
        Verdict::Simple => r.pass(Observation, "verdict: simple"),
        Verdict::SINotSimple => r.pass(Observation, "verdict: subdirectly irreducible, not simple"),
        Verdict::Neither => r.pass(Observation, "verdict: neither"),
    }
}

fn lattice_checks(r: &mut SuiteReport, p: &FinitePoset, cfg: &SuiteConfig) {
    use Group::*;
    let l = up_set_lattice(p);
    let ctx = |m: &MonadicLattice| format!("lattice of up-sets of {:?}, ∇={:?}, △={:?}", p.covers(), m.nabla(), m.delta());
    let Some(all) = r.result(Duality, "monadic structures enumerate", enumerate_monadic(&l, &cfg.limits), || {
        format!("{:?}", p.covers())
    }) else {
        return;
    };
    for m in &all {
        let s = r.result(Duality, "spectrum is an mq-space", spectrum(m), || ctx(m));
        if let Some(s) = &s {
            let f = evaluate_space(s.space.poset(), s.space.eq()).expect("same carrier");
            r.check(Duality, "spectrum passes the frame checks", f.is_mq_space() && (s.space.is_empty() || f.is_mk_frame()), || ctx(m));
        }
        r.result(Duality, "σ is an isomorphism of m-lattices", sigma_iso(m), || ctx(m));
        if let Some(s) = &s {
            filter_extension_checks(r, m, s, || ctx(m));
        }
        if m.len() <= cfg.limits.max_congruence_lattice {
            r.result(
                Congruences,
                "Θ is an order-reversing bijection onto the m-congruences",
                con_m_with(m, &cfg.limits, oracle_sig(m, cfg.fault)),
                || ctx(m),
            );
            r.result(
                Congruences,
                "Θ is an order-reversing bijection onto the Q-congruences",
                q_congruences(&l, m.nabla(), &cfg.limits),
                || ctx(m),
            );
            classification_checks(r, m, cfg, || ctx(m));
        }
    }
}

fn filter_extension_checks(r: &mut SuiteReport, m: &MonadicLattice, s: &Spectrum, ctx: impl Fn() -> String) {
    use Group::Duality;
    let l = m.lattice();
    let n = l.len();
    let delta_range = m.delta_range();
    let filters: Vec<ElementSet> = s.filters.iter().map(|f| f.members).collect();
    // △⁻¹(F) for a filter F.
    let pre = |f: ElementSet| ElementSet::from_indices(n, (0..n).filter(|&x| f.contains(m.delta()[x])));
    for gen in 0..n {
        let f = l.principal_filter(gen);
        for a in 0..n {
            r.implication(
                Duality,
                "△a ∉ F gives a prime Q with a ∉ Q and △⁻¹(F) ⊆ Q",
                !f.contains(m.delta()[a]),
                || filters.iter().any(|q| !q.contains(a) && pre(f).is_subset(q)),
                || format!("{} F=[{}) a={}", ctx(), l.name(gen), l.name(a)),
            );
        }
    }
    for t in &filters {
        for sf in &filters {
            let target = sf.intersection(delta_range);
            r.implication(
                Duality,
                "T ∩ △(L) ⊆ S gives a prime R ⊇ T with R ∩ △(L) = S ∩ △(L)",
                t.intersection(delta_range).is_subset(sf),
                || filters.iter().any(|rr| t.is_subset(rr) && rr.intersection(delta_range) == target),
                || format!("{} T={t:?} S={sf:?}", ctx()),
            );
        }
    }
}

fn map_checks(r: &mut SuiteReport, x1: &MqSpace, x2: &MqSpace, cfg: &SuiteConfig) {
    use Group::*;
    let Ok(maps) = all_maps(x1.len(), x2.len(), &cfg.limits) else {
        r.fail(Morphisms, "maps within cap", format!("{} → {}", show(x1), show(x2)));
        return;
    };
    let ctx = |f: &[usize]| format!("{} → {} f={f:?}", show(x1), show(x2));
    for f in &maps {
        let rep = match evaluate_map(x1, x2, f) {
            Ok(rep) => rep,
            Err(e) => {
                r.fail(Morphisms, "map report", format!("{}: {e}", ctx(f)));
                continue;
            }
        };
        let bad = rep.cross_check_failures();
        for name in MAP_CROSS_CHECKS {
            r.check(Morphisms, name, !bad.contains(&name), || ctx(f));
        }
        r.check(Observation, "pointwise mkf3 agrees with mq-function", rep.is_mk_function_pointwise() == rep.is_mq_function(), || ctx(f));
        r.check(Observation, "kf2 agrees with f2", rep.kf2.holds() == rep.f2.holds(), || ctx(f));
        if rep.is_mq_function() {
            r.result(Morphisms, "mq-functions dualize to m-homomorphisms", dual_map(x1, x2, f), || ctx(f));
        }
        // Bijective q-functions with q-function inverses.
        if x1.len() == x2.len() && rep.is_q_function() {
            let mut inv = vec![usize::MAX; x2.len()];
            for (a, &b) in f.iter().enumerate() {
                inv[b] = a;
            }
            if !inv.contains(&usize::MAX) {
                let back = evaluate_map(x2, x1, &inv).map(|b| b.is_q_function()).unwrap_or(false);
                r.implication(
                    Morphisms,
                    "q-isomorphisms are mq-functions with E₂([f(x))) = f(E₁([x)))",
                    back,
                    || rep.is_mq_function() && rep.kf1_e_order.holds(),
                    || ctx(f),
                );
            }
        }
        if let Err(e) = check_map(x1, x2, f) {
            r.fail(Morphisms, "map checker accepts", format!("{}: {e}", ctx(f)));
        }
    }
}

/// Runs only the monadic congruence correspondence for one structure with
/// the given fault, for harness self-tests.
pub fn congruence_instance(m: &MonadicLattice, cfg: &SuiteConfig) -> Outcome {
    match con_m_with(m, &cfg.limits, oracle_sig(m, cfg.fault)) {
        Ok(_) => Outcome::Pass,
        Err(_) => Outcome::Fail(Vec::new()),
    }
}
