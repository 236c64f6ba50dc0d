//! Condition checkers for spaces and maps, in the forms used by the
//! q-space / mq-space and Kripke-frame presentations.
//!
//! Every clause is evaluated literally on the finite structure. Clauses that
//! only constrain the topology hold trivially for a finite discrete space;
//! they are kept in the reports as [`Outcome::Vacuous`].
//!
//! Relations compose with the right factor applied first: `(x, y) ∈ R ∘ T`
//! iff `(x, z) ∈ T` and `(z, y) ∈ R` for some `z`. So `E ∘ ≤` relates `x` to
//! everything in `E([x))`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::duality::MqSpace;
use crate::poset::{check_same, BinRelation, EquivRelation, FinitePoset};
use crate::universe::{labeled_posets, set_partitions};
use crate::{ElementSet, Error, Limits, Outcome, Result};

/// Space conditions. Witness layouts are given per field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameReport {
    /// `E(U)` increasing for increasing `U`. Witness `[x, y, z]`: `x E y`,
    /// `y ≤ z`, `z ∉ E([x))`, so `U = [x)` fails.
    pub e1: Outcome,
    /// Witness `[x, y, z]`: `x E y ≤ z` with no `w ≥ x`, `w E z`.
    pub mq1: Outcome,
    /// Augmented Kripke frame: non-empty and `≤ ∘ E ⊆ E ∘ ≤`.
    /// Witness `[x, y]` is a pair in the left side only; `[]` means empty.
    pub mk1: Outcome,
    /// `≤` is a partial order. Witness is a reflexivity `[x]`,
    /// antisymmetry `[x, y]` or transitivity `[x, y, z]` failure.
    pub mk2: Outcome,
    /// Non-empty carrier.
    pub k1_nonempty: Outcome,
    /// `R ∘ E ⊆ E ∘ R` with `R = ≤`. Witness `[x, y]`.
    pub k1_commute: Outcome,
    /// `R` is a quasi-order. Witness as for `mk2`.
    pub k2_r: Outcome,
    /// `E ∘ R` is a quasi-order. Witness as for `mk2`.
    pub k2_er: Outcome,
    /// Topological clauses, all vacuous on finite discrete spaces.
    pub topological: Vec<(&'static str, Outcome)>,
}

impl FrameReport {
    pub fn is_q_space(&self) -> bool {
        self.e1.holds()
    }

    pub fn is_mq_space(&self) -> bool {
        self.e1.holds() && self.mq1.holds()
    }

    pub fn is_mk_frame(&self) -> bool {
        self.mk1.holds() && self.mk2.holds()
    }

    pub fn is_pak_frame(&self) -> bool {
        self.k1_nonempty.holds()
            && self.mk2.holds()
            && self.k1_commute.holds()
            && self.k2_r.holds()
            && self.k2_er.holds()
    }

    /// Every condition with its name, in report order.
    pub fn entries(&self) -> Vec<(&'static str, &Outcome)> {
        let mut v: Vec<(&'static str, &Outcome)> = vec![
            ("E1", &self.e1),
            ("mq1", &self.mq1),
            ("mk1", &self.mk1),
            ("mk2", &self.mk2),
            ("k1(i)", &self.k1_nonempty),
            ("k1(iii)", &self.k1_commute),
            ("k2(i) R", &self.k2_r),
            ("k2(i) E∘R", &self.k2_er),
        ];
        v.extend(self.topological.iter().map(|(n, o)| (*n, o)));
        v
    }
}

const TOPOLOGICAL_SPACE_CLAUSES: [&str; 9] =
    ["E2", "mq2", "mk3", "mk4", "mk5", "k2(ii)", "k2(iii)", "k2(iv)", "k3"];

fn order_failure(r: &BinRelation, antisymmetric: bool) -> Outcome {
    if let Some(x) = r.reflexivity_failure() {
        return Outcome::Fail(vec![x]);
    }
    if antisymmetric {
        if let Some((x, y)) = r.antisymmetry_failure() {
            return Outcome::Fail(vec![x, y]);
        }
    }
    Outcome::from_witness(r.transitivity_failure().map(|(x, y, z)| vec![x, y, z]))
}

/// Evaluates every space condition without cross-checking them.
pub fn evaluate_space(p: &FinitePoset, e: &EquivRelation) -> Result<FrameReport> {
    let x = MqSpace::unchecked(p.clone(), e.clone())?;
    let n = p.len();
    let leq = p.leq_relation();
    let er = e.as_relation();
    let leq_e = leq.compose(&er)?;
    let e_leq = er.compose(&leq)?;
    let commute = Outcome::from_witness(leq_e.first_excess(&e_leq).map(|(a, b)| vec![a, b]));
    let nonempty = if n == 0 { Outcome::Fail(Vec::new()) } else { Outcome::Pass };
    let e1 = Outcome::from_witness(x.e1_failure().map(|(u, y, z)| {
        let src = u.iter().find(|&s| e.related(s, y)).expect("y ∈ E(U)");
        vec![src, y, z]
    }));
    Ok(FrameReport {
        e1,
        mq1: Outcome::from_witness(x.mq1_failure().map(|(a, b, c)| vec![a, b, c])),
        mk1: if n == 0 { Outcome::Fail(Vec::new()) } else { commute.clone() },
        mk2: order_failure(&leq, true),
        k1_nonempty: nonempty,
        k1_commute: commute,
        k2_r: order_failure(&leq, false),
        k2_er: order_failure(&e_leq, false),
        topological: TOPOLOGICAL_SPACE_CLAUSES.iter().map(|&c| (c, Outcome::Vacuous)).collect(),
    })
}

/// Evaluates the space conditions and asserts that, on a non-empty carrier,
/// the mq-space and mk-frame conditions agree.
pub fn check_space(p: &FinitePoset, e: &EquivRelation) -> Result<FrameReport> {
    let r = evaluate_space(p, e)?;
    if !p.is_empty() && r.is_mq_space() != r.is_mk_frame() {
        return Err(Error::Falsified(format!(
            "mq-space = {} but mk-frame = {} for {:?} with classes {:?}",
            r.is_mq_space(),
            r.is_mk_frame(),
            p.up_rows(),
            e.blocks()
        )));
    }
    if r.is_pak_frame() && !r.is_mk_frame() {
        return Err(Error::Falsified("paK-frame that is not an mk-frame".into()));
    }
    Ok(r)
}

/// `E = E_{E∘≤}`: `x E y` iff each lies in `E([·))` of the other.
/// Returns a pair where the two relations differ.
pub fn e_induced_failure(x: &MqSpace) -> Option<(usize, usize)> {
    for a in 0..x.len() {
        for b in 0..x.len() {
            let induced = x.e_up(a).contains(b) && x.e_up(b).contains(a);
            if induced != x.eq().related(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Implications between map flags that hold whenever both spaces are
/// mq-spaces; see [`MapReport::cross_check_failures`].
pub const MAP_CROSS_CHECKS: [&str; 8] = [
    "q-function: f1 and f2 versus set equation",
    "qf1, qf2, qf3 equivalent",
    "mqf2 equivalent to mqf3",
    "mq-function characterizations agree",
    "q-function implies qf1",
    "mq-function equivalent to mk-function",
    "paK-function implies mk-function",
    "strongly isotone for E∘≤ implies isotone for E",
];

/// Map conditions between two spaces.
///
/// Pointwise witnesses are `[x, y]` with `x ∈ X₁` and `y` the offending
/// point (in `X₂` unless noted). Set-equation witnesses are `[x, v₁, v₂, …]`:
/// `x ∈ X₁` is where the two sides differ and `v₁, v₂, …` list the
/// increasing set `V ⊆ X₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    /// Witness `[x, y]` with `x ≤ y` and `f(x) ≰ f(y)`, both in `X₁`.
    pub monotone: Outcome,
    pub continuous: Outcome,
    /// `E₁(f⁻¹(U)) = f⁻¹(E₂(U))` for every increasing `U`.
    pub q_equation: Outcome,
    /// Witness `[x, y]`, both in `X₁`: `x E₁ y` but not `f(x) E₂ f(y)`.
    pub f1: Outcome,
    /// `E₂(f(x)) ⊆ (f(E₁(x))]`
    pub f2: Outcome,
    /// `(E₁(f⁻¹(X₂∖V))] ⊆ f⁻¹((E₂(X₂∖V)])`
    pub qf1: Outcome,
    /// `f(E₁([x))) ⊆ E₂([f(x)))`
    pub qf2: Outcome,
    /// `[f(E₁([x)))) ⊆ E₂([f(x)))`
    pub qf3: Outcome,
    /// `(E₁(f⁻¹(X₂∖V))] = f⁻¹((E₂(X₂∖V)])`
    pub mqf1: Outcome,
    /// `f⁻¹((E₂(X₂∖V)]) ⊆ (E₁(f⁻¹(X₂∖V))]`
    pub mqf2: Outcome,
    /// `E₂([f(x))) ⊆ [f(E₁([x))))`
    pub mqf3: Outcome,
    /// `E₂([f(x))) = [f(E₁([x))))`
    pub mqf4: Outcome,
    /// `E₂([f(x))) ⊆ [f(E₁(x)))`, the third mk-function clause read with
    /// `E₁(x)` rather than `E₁([x))`. Reported only; see
    /// [`MapReport::is_mk_function`].
    pub mkf3_pointwise: Outcome,
    /// Strongly isotone for `≤`: `[f(x)) = f([x))`.
    pub kf1_order: Outcome,
    /// Strongly isotone for `E ∘ ≤`: `E₂([f(x))) = f(E₁([x)))`.
    pub kf1_e_order: Outcome,
    /// Almost strongly isotone for `E`: `E₂(f(x)) = (f(E₁(x))]`.
    pub kf2: Outcome,
}

impl MapReport {
    /// Monotone with `f1` and `f2`.
    pub fn is_q_function(&self) -> bool {
        self.monotone.holds() && self.f1.holds() && self.f2.holds()
    }

    /// Monotone with the set equation on increasing sets.
    pub fn is_q_function_by_equation(&self) -> bool {
        self.monotone.holds() && self.q_equation.holds()
    }

    pub fn is_mq_function(&self) -> bool {
        self.is_q_function() && self.mqf1.holds()
    }

    pub fn is_mq_function_by_mqf3(&self) -> bool {
        self.is_q_function() && self.mqf3.holds()
    }

    pub fn is_mq_function_by_mqf4(&self) -> bool {
        self.is_q_function() && self.mqf4.holds()
    }

    /// Monotone, `mkf1 = f1`, `mkf2 = f2` and the third clause in the form
    /// `E₂([f(x))) ⊆ [f(E₁([x))))`. The pointwise form in
    /// [`MapReport::mkf3_pointwise`] already fails for identity maps on some
    /// mq-spaces, so it cannot be what the clause means.
    pub fn is_mk_function(&self) -> bool {
        self.monotone.holds() && self.f1.holds() && self.f2.holds() && self.mqf3.holds()
    }

    pub fn is_mk_function_pointwise(&self) -> bool {
        self.monotone.holds() && self.f1.holds() && self.f2.holds() && self.mkf3_pointwise.holds()
    }

    pub fn is_pak_function(&self) -> bool {
        self.kf1_order.holds() && self.kf1_e_order.holds() && self.kf2.holds()
    }

    /// Names of the implications between flags that fail on this map. Only
    /// meaningful when both spaces are mq-spaces.
    pub fn cross_check_failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.monotone.holds() {
            if self.is_q_function() != self.is_q_function_by_equation() {
                out.push(MAP_CROSS_CHECKS[0]);
            }
            let (a, b, c) = (self.qf1.holds(), self.qf2.holds(), self.qf3.holds());
            if a != b || b != c {
                out.push(MAP_CROSS_CHECKS[1]);
            }
            if self.mqf2.holds() != self.mqf3.holds() {
                out.push(MAP_CROSS_CHECKS[2]);
            }
            let (i, ii, iii) =
                (self.is_mq_function(), self.is_mq_function_by_mqf3(), self.is_mq_function_by_mqf4());
            if i != ii || ii != iii {
                out.push(MAP_CROSS_CHECKS[3]);
            }
        }
        if self.is_q_function() && !self.qf1.holds() {
            out.push(MAP_CROSS_CHECKS[4]);
        }
        if self.is_mq_function() != self.is_mk_function() {
            out.push(MAP_CROSS_CHECKS[5]);
        }
        if self.is_pak_function() && !self.is_mk_function() {
            out.push(MAP_CROSS_CHECKS[6]);
        }
        if self.kf1_e_order.holds() && !self.f1.holds() {
            out.push(MAP_CROSS_CHECKS[7]);
        }
        out
    }

    pub fn entries(&self) -> Vec<(&'static str, &Outcome)> {
        vec![
            ("monotone", &self.monotone),
            ("continuous", &self.continuous),
            ("q-equation", &self.q_equation),
            ("f1", &self.f1),
            ("f2", &self.f2),
            ("qf1", &self.qf1),
            ("qf2", &self.qf2),
            ("qf3", &self.qf3),
            ("mqf1", &self.mqf1),
            ("mqf2", &self.mqf2),
            ("mqf3", &self.mqf3),
            ("mqf4", &self.mqf4),
            ("mkf3 pointwise", &self.mkf3_pointwise),
            ("kf1 ≤", &self.kf1_order),
            ("kf1 E∘≤", &self.kf1_e_order),
            ("kf2", &self.kf2),
        ]
    }
}

struct MapCtx<'a> {
    x1: &'a MqSpace,
    x2: &'a MqSpace,
    f: &'a [usize],
}

impl MapCtx<'_> {
    fn image(&self, s: ElementSet) -> ElementSet {
        ElementSet::from_indices(self.x2.len(), s.iter().map(|x| self.f[x]))
    }

    fn preimage(&self, s: ElementSet) -> ElementSet {
        ElementSet::from_indices(self.x1.len(), (0..self.x1.len()).filter(|&x| s.contains(self.f[x])))
    }

    fn up2(&self, s: ElementSet) -> ElementSet {
        self.x2.poset().up_closure(s)
    }

    fn down2(&self, s: ElementSet) -> ElementSet {
        self.x2.poset().down_closure(s)
    }

    /// First point where `lhs(x) ⊄ rhs(x)` (or `≠` when `eq`).
    fn pointwise(
        &self,
        eq: bool,
        lhs: impl Fn(usize) -> ElementSet,
        rhs: impl Fn(usize) -> ElementSet,
    ) -> Outcome {
        for x in 0..self.x1.len() {
            let (l, r) = (lhs(x), rhs(x));
            let bad = if eq { l.difference(r).union(r.difference(l)) } else { l.difference(r) };
            if let Some(y) = bad.first() {
                return Outcome::Fail(vec![x, y]);
            }
        }
        Outcome::Pass
    }

    /// First `(V, x)` where `lhs(V) ⊄ rhs(V)` (or `≠` when `eq`), over all
    /// increasing `V ⊆ X₂`.
    fn over_up_sets(
        &self,
        ups: &[ElementSet],
        eq: bool,
        lhs: impl Fn(ElementSet) -> ElementSet,
        rhs: impl Fn(ElementSet) -> ElementSet,
    ) -> Outcome {
        for &v in ups {
            let (l, r) = (lhs(v), rhs(v));
            let bad = if eq { l.difference(r).union(r.difference(l)) } else { l.difference(r) };
            if let Some(x) = bad.first() {
                let mut w = vec![x];
                w.extend(v.iter());
                return Outcome::Fail(w);
            }
        }
        Outcome::Pass
    }
}

/// Evaluates every map condition without cross-checking them.
pub fn evaluate_map(x1: &MqSpace, x2: &MqSpace, f: &[usize]) -> Result<MapReport> {
    check_same(x1.len(), f.len())?;
    if let Some(&y) = f.iter().find(|&&y| y >= x2.len()) {
        return Err(Error::UnknownElement(format!("#{y}")));
    }
    let c = MapCtx { x1, x2, f };
    let (p1, e1, e2) = (x1.poset(), x1.eq(), x2.eq());
    let ups = x2.poset().all_up_sets();

    let mut monotone = Outcome::Pass;
    'mono: for a in 0..x1.len() {
        for b in p1.up_of(a).iter() {
            if !x2.poset().leq(f[a], f[b]) {
                monotone = Outcome::Fail(vec![a, b]);
                break 'mono;
            }
        }
    }
    let mut f1 = Outcome::Pass;
    'f1: for a in 0..x1.len() {
        for b in e1.class(a).iter() {
            if !e2.related(f[a], f[b]) {
                f1 = Outcome::Fail(vec![a, b]);
                break 'f1;
            }
        }
    }

    // (E₁(f⁻¹(X₂∖V))] and f⁻¹((E₂(X₂∖V)])
    let left = |v: ElementSet| p1.down_closure(e1.saturate(c.preimage(v.complement())));
    let right = |v: ElementSet| c.preimage(c.down2(e2.saturate(v.complement())));
    let e_up_img = |x: usize| c.image(x1.e_up(x));

    Ok(MapReport {
        monotone,
        continuous: Outcome::Vacuous,
        q_equation: c.over_up_sets(&ups, true, |u| e1.saturate(c.preimage(u)), |u| {
            c.preimage(e2.saturate(u))
        }),
        f1,
        f2: c.pointwise(false, |x| e2.class(f[x]), |x| c.down2(c.image(e1.class(x)))),
        qf1: c.over_up_sets(&ups, false, left, right),
        qf2: c.pointwise(false, e_up_img, |x| x2.e_up(f[x])),
        qf3: c.pointwise(false, |x| c.up2(e_up_img(x)), |x| x2.e_up(f[x])),
        mqf1: c.over_up_sets(&ups, true, left, right),
        mqf2: c.over_up_sets(&ups, false, right, left),
        mqf3: c.pointwise(false, |x| x2.e_up(f[x]), |x| c.up2(e_up_img(x))),
        mqf4: c.pointwise(true, |x| x2.e_up(f[x]), |x| c.up2(e_up_img(x))),
        mkf3_pointwise: c.pointwise(false, |x| x2.e_up(f[x]), |x| c.up2(c.image(e1.class(x)))),
        kf1_order: c.pointwise(true, |x| x2.poset().up_of(f[x]), |x| c.image(p1.up_of(x))),
        kf1_e_order: c.pointwise(true, |x| x2.e_up(f[x]), e_up_img),
        kf2: c.pointwise(true, |x| e2.class(f[x]), |x| c.down2(c.image(e1.class(x)))),
    })
}

/// Evaluates the map conditions and, when both spaces are mq-spaces, asserts
/// every implication listed by [`MapReport::cross_check_failures`].
pub fn check_map(x1: &MqSpace, x2: &MqSpace, f: &[usize]) -> Result<MapReport> {
    let r = evaluate_map(x1, x2, f)?;
    if x1.is_mq_space() && x2.is_mq_space() {
        let bad = r.cross_check_failures();
        if !bad.is_empty() {
            return Err(Error::Falsified(format!("map {f:?}: {}", bad.join("; "))));
        }
    }
    Ok(r)
}

/// Every labeled poset on `n` points with every equivalence, in a fixed
/// order, with its report.
pub fn enumerate_spaces(
    n: usize,
    limits: &Limits,
) -> Result<Vec<(FinitePoset, EquivRelation, FrameReport)>> {
    if n > limits.max_poset {
        return Err(Error::CapExceeded { what: "poset size", size: n as u64, cap: limits.max_poset as u64 });
    }
    let parts = set_partitions(n)?;
    let mut out = Vec::new();
    for p in labeled_posets(n)? {
        for e in &parts {
            let r = check_space(&p, e)?;
            out.push((p.clone(), e.clone(), r));
        }
    }
    Ok(out)
}

/// Number of functions `X₁ → X₂`, or `None` on overflow.
pub fn map_count(n1: usize, n2: usize) -> Option<u64> {
    (n2 as u64).checked_pow(u32::try_from(n1).ok()?)
}

/// All functions `X₁ → X₂` in lexicographic order of their value tables.
pub fn all_maps(n1: usize, n2: usize, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let count = map_count(n1, n2).unwrap_or(u64::MAX);
    if count > limits.max_maps {
        return Err(Error::CapExceeded { what: "candidate maps", size: count, cap: limits.max_maps });
    }
    let mut out = Vec::with_capacity(count as usize);
    if n2 == 0 && n1 > 0 {
        return Ok(out);
    }
    let mut f = vec![0usize; n1];
    loop {
        out.push(f.clone());
        let mut k = n1;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            f[k] += 1;
            if f[k] < n2 {
                break;
            }
            f[k] = 0;
        }
    }
}

/// Every function between two spaces with its checked report.
pub fn enumerate_maps(
    x1: &MqSpace,
    x2: &MqSpace,
    limits: &Limits,
) -> Result<Vec<(Vec<usize>, MapReport)>> {
    all_maps(x1.len(), x2.len(), limits)?
        .into_iter()
        .map(|f| check_map(x1, x2, &f).map(|r| (f, r)))
        .collect()
}

/// Renders a witness tuple with element names, for diagnostics.
pub fn describe_points(x: &MqSpace, pts: &[usize]) -> String {
    let names: Vec<&str> = pts.iter().map(|&p| x.name(p)).collect();
    names.join(", ")
}
