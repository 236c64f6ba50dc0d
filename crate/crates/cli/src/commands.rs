//! One function per subcommand. Each returns an [`Output`] carrying both the
//! text and the JSON rendering; `main` picks one and sets the exit code.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use mlat::congruence::{
    classify, classify_space, con_m, describe, q_congruences, refines, tally, Branch,
    Classification, CongruenceLattice, Verdict,
};
use mlat::duality::{dual_hom, dual_map, epsilon_iso, round_trip_matches, sigma_iso, MqSpace};
use mlat::frames::{check_map, check_space, enumerate_spaces, FrameReport, MapReport};
use mlat::lattice::{check_hom_with_ops, up_set_lattice, validate_lattice, DistLattice, HomReport};
use mlat::monadic::{enumerate_monadic, validate_monadic, validate_quantifier, MonadicLattice};
use mlat::universe::unlabeled_posets;
use mlat::verify::{run_item, universe_items, Fault, Group, SuiteConfig, SuiteReport};
use mlat::{Error, Limits};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::doc::{DocError, Ends, LatticeDoc, LoadedLattice, SpaceDoc, StructureDoc};
use crate::render::{blocks, blocks_text, braces, checks_json, checks_text, flag, space_set, Check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass = 0,
    Invalid = 1,
    Error = 2,
    Falsified = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Invalid => "invalid",
            Status::Error => "error",
            Status::Falsified => "falsified",
        }
    }

    fn of_core(e: &Error) -> Status {
        match e {
            Error::Falsified(_) | Error::Invariant(_) => Status::Falsified,
            Error::CapExceeded { .. }
            | Error::CarrierTooLarge { .. }
            | Error::BadTable(_)
            | Error::UnknownElement(_)
            | Error::DuplicateElement(_)
            | Error::CarrierMismatch { .. } => Status::Error,
            _ => Status::Invalid,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Output {
    pub status: Status,
    pub json: Value,
    pub text: String,
}

impl Output {
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }

    /// Output for a command that could not run.
    pub fn failure(command: &str, status: Status, message: &str) -> Self {
        Output {
            status,
            json: json!({ "command": command, "status": status.name(), "error": message }),
            text: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug)]
pub struct CmdError {
    pub status: Status,
    pub message: String,
}

impl From<DocError> for CmdError {
    fn from(e: DocError) -> Self {
        let status = match &e {
            DocError::Structure(c) => Status::of_core(c),
            _ => Status::Error,
        };
        CmdError { status, message: e.to_string() }
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        CmdError { status: Status::of_core(&e), message: e.to_string() }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError { status: Status::Error, message: e.to_string() }
    }
}

pub type CmdResult = Result<Output, CmdError>;

#[derive(Clone, Debug)]
pub struct Options {
    /// Caps for single-structure commands.
    pub limits: Limits,
    /// Caps for enumeration and the suite.
    pub universe_limits: Limits,
    pub out: Option<PathBuf>,
    pub q: bool,
    pub fault: Fault,
    pub jobs: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            limits: Limits::default(),
            universe_limits: Limits::universe(),
            out: None,
            q: false,
            fault: Fault::None,
            jobs: None,
        }
    }
}

impl Options {
    /// Raises or lowers the structure-size caps.
    pub fn with_max_size(mut self, n: usize) -> Self {
        self.limits.max_congruence_lattice = n;
        self.limits.max_poset = n;
        self.universe_limits.max_poset = n;
        self
    }
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Invalid
    }
}

fn lname(l: &DistLattice) -> impl Fn(usize, usize) -> String + '_ {
    move |_, i| l.name(i).to_owned()
}

fn xname(x: &MqSpace) -> impl Fn(usize, usize) -> String + '_ {
    move |_, i| x.name(i).to_owned()
}

fn parent(path: &Path) -> &Path {
    path.parent().unwrap_or_else(|| Path::new("."))
}

fn header(command: &str, path: &Path, kind: &str) -> (Value, String) {
    let v = json!({ "command": command, "file": path.display().to_string(), "kind": kind });
    (v, format!("{command} {} ({kind})\n", path.display()))
}

fn finish(mut json: Value, mut text: String, status: Status) -> Output {
    json["status"] = json!(status.name());
    let _ = writeln!(text, "status: {}", status.name());
    Output { status, json, text }
}

struct LatticeChecks {
    lattice: Vec<Check>,
    operators: Vec<Check>,
    sampled: bool,
    kind: &'static str,
}

impl LatticeChecks {
    fn passes(&self) -> bool {
        self.lattice.iter().chain(&self.operators).all(Check::holds)
    }
}

fn lattice_checks(ll: &LoadedLattice) -> Result<LatticeChecks, CmdError> {
    let l = &ll.lattice;
    let r = validate_lattice(l);
    let lattice = vec![
        Check::new("meet is infimum", &r.meet_is_inf, lname(l)),
        Check::new("join is supremum", &r.join_is_sup, lname(l)),
        Check::new("bounded", &r.bounds, lname(l)),
        Check::new("distributive", &r.distributive, lname(l)),
    ];
    let (report, kind) = match (&ll.nabla, &ll.delta) {
        (Some(n), Some(d)) => (Some(validate_monadic(l, n, d)?), "monadic"),
        (Some(n), None) => (Some(validate_quantifier(l, n)?), "quantifier"),
        _ => (None, "plain"),
    };
    let operators = report
        .map(|rep| {
            rep.entries
                .iter()
                .map(|(ax, o)| Check::new(ax.to_string(), o, lname(l)).with_detail(ax.identity()))
                .collect()
        })
        .unwrap_or_default();
    Ok(LatticeChecks { lattice, operators, sampled: r.sampled, kind })
}

fn lattice_check_output(
    mut json: Value,
    mut text: String,
    ll: &LoadedLattice,
    c: &LatticeChecks,
) -> (Value, String) {
    let l = &ll.lattice;
    json["summary"] = json!({
        "elements": l.len(),
        "join_irreducibles": l.join_irreducibles().count(),
        "operators": c.kind,
        "sampled": c.sampled,
    });
    json["lattice"] = checks_json(&c.lattice);
    json["axioms"] = checks_json(&c.operators);
    let _ = writeln!(
        text,
        "{} elements, {} join-irreducible, operators: {}",
        l.len(),
        l.join_irreducibles().count(),
        c.kind
    );
    if c.sampled {
        let _ = writeln!(text, "warning: distributivity checked on sampled triples only");
    }
    let _ = writeln!(text, "lattice");
    checks_text(&mut text, &c.lattice);
    if !c.operators.is_empty() {
        let _ = writeln!(text, "axioms");
        checks_text(&mut text, &c.operators);
    }
    (json, text)
}

fn space_checks(x: &MqSpace, r: &FrameReport) -> Vec<Check> {
    r.entries().into_iter().map(|(n, o)| Check::new(n, o, xname(x))).collect()
}

fn space_flags(r: &FrameReport) -> Value {
    json!({
        "q_space": r.is_q_space(),
        "mq_space": r.is_mq_space(),
        "mk_frame": r.is_mk_frame(),
        "pak_frame": r.is_pak_frame(),
    })
}

fn space_flags_text(text: &mut String, r: &FrameReport) {
    let _ = writeln!(
        text,
        "q-space: {}  mq-space: {}  mk-frame: {}  paK-frame: {}",
        flag(r.is_q_space()),
        flag(r.is_mq_space()),
        flag(r.is_mk_frame()),
        flag(r.is_pak_frame())
    );
}

fn space_check_output(mut json: Value, mut text: String, x: &MqSpace, r: &FrameReport) -> (Value, String) {
    let cs = space_checks(x, r);
    json["summary"] = json!({ "points": x.len(), "classes": x.eq().num_blocks() });
    json["conditions"] = checks_json(&cs);
    json["flags"] = space_flags(r);
    let _ = writeln!(text, "{} points, {} classes", x.len(), x.eq().num_blocks());
    checks_text(&mut text, &cs);
    space_flags_text(&mut text, r);
    (json, text)
}

fn map_witness<'a>(x1: &'a MqSpace, x2: &'a MqSpace, name: &'a str) -> impl Fn(usize, usize) -> String + 'a {
    let both_source = name == "monotone" || name == "f1";
    move |pos, i| {
        if pos == 0 || both_source {
            x1.name(i).to_owned()
        } else {
            x2.name(i).to_owned()
        }
    }
}

fn map_checks(x1: &MqSpace, x2: &MqSpace, r: &MapReport) -> Vec<Check> {
    r.entries().into_iter().map(|(n, o)| Check::new(n, o, map_witness(x1, x2, n))).collect()
}

fn map_flags(r: &MapReport) -> Value {
    json!({
        "q_function": r.is_q_function(),
        "mq_function": r.is_mq_function(),
        "mk_function": r.is_mk_function(),
        "mk_function_pointwise": r.is_mk_function_pointwise(),
        "pak_function": r.is_pak_function(),
    })
}

fn map_flags_text(text: &mut String, r: &MapReport) {
    let _ = writeln!(
        text,
        "q-function: {}  mq-function: {}  mk-function: {}  paK-function: {}",
        flag(r.is_q_function()),
        flag(r.is_mq_function()),
        flag(r.is_mk_function()),
        flag(r.is_pak_function())
    );
    let _ = writeln!(text, "pointwise third mk clause: {}", flag(r.is_mk_function_pointwise()));
}

fn hom_checks(l: &DistLattice, r: &HomReport) -> Vec<Check> {
    let mut v = vec![
        Check::new("bottom", &r.bottom, lname(l)),
        Check::new("top", &r.top, lname(l)),
        Check::new("meet", &r.meet, lname(l)),
        Check::new("join", &r.join, lname(l)),
    ];
    if let Some(o) = &r.nabla {
        v.push(Check::new("nabla", o, lname(l)));
    }
    if let Some(o) = &r.delta {
        v.push(Check::new("delta", o, lname(l)));
    }
    v
}

fn ops(ll: &LoadedLattice) -> Option<mlat::lattice::OpsRef<'_>> {
    match (&ll.nabla, &ll.delta) {
        (Some(n), Some(d)) => Some(mlat::lattice::OpsRef { nabla: n, delta: d }),
        _ => None,
    }
}

fn table_json(pairs: &[(String, String)]) -> Value {
    Value::Object(pairs.iter().map(|(a, b)| (a.clone(), json!(b))).collect())
}

fn table_text(text: &mut String, pairs: &[(String, String)]) {
    for (a, b) in pairs {
        let _ = writeln!(text, "  {a} -> {b}");
    }
}

/// Shared by `check` and `morphism` on map documents.
fn map_command(command: &str, path: &Path, md: &crate::doc::MapDoc, duals: bool) -> CmdResult {
    let (mut json, mut text) = header(command, path, "map");
    let loaded = md.build(parent(path))?;
    let f = &loaded.map;
    match &loaded.ends {
        Ends::Spaces(x1, x2) => {
            let (ok1, ok2) = (x1.is_mq_space(), x2.is_mq_space());
            let r = check_map(x1, x2, f)?;
            let cs = map_checks(x1, x2, &r);
            json["ends"] = json!({ "source_mq_space": ok1, "target_mq_space": ok2 });
            json["conditions"] = checks_json(&cs);
            json["flags"] = map_flags(&r);
            let _ = writeln!(
                text,
                "source: {} points (mq-space: {}), target: {} points (mq-space: {})",
                x1.len(),
                flag(ok1),
                x2.len(),
                flag(ok2)
            );
            checks_text(&mut text, &cs);
            map_flags_text(&mut text, &r);
            let ok = ok1 && ok2 && r.is_mq_function();
            if duals && ok {
                let d = dual_map(x1, x2, f)?;
                let (s, t) = (d.source.algebra.lattice(), d.target.algebra.lattice());
                let pairs: Vec<(String, String)> =
                    d.hom.map.iter().enumerate().map(|(i, &j)| (s.name(i).to_owned(), t.name(j).to_owned())).collect();
                let hom_ok = d.hom.report.is_monadic_hom();
                json["dual"] = json!({ "map": table_json(&pairs), "m_homomorphism": hom_ok });
                let _ = writeln!(text, "dual homomorphism D(target) -> D(source), m-homomorphism: {}", flag(hom_ok));
                table_text(&mut text, &pairs);
            }
            Ok(finish(json, text, status_of(ok)))
        }
        Ends::Lattices(a, b) => {
            let (ca, cb) = (lattice_checks(a)?, lattice_checks(b)?);
            let r = check_hom_with_ops(&a.lattice, ops(a), &b.lattice, ops(b), f)?;
            let cs = hom_checks(&a.lattice, &r);
            let monadic = r.nabla.is_some();
            let ok = ca.passes() && cb.passes() && r.is_lattice_hom() && (!monadic || r.is_monadic_hom());
            json["ends"] = json!({ "source_valid": ca.passes(), "target_valid": cb.passes() });
            json["conditions"] = checks_json(&cs);
            json["flags"] = json!({ "lattice_hom": r.is_lattice_hom(), "m_homomorphism": monadic && r.is_monadic_hom() });
            let _ = writeln!(
                text,
                "source: {} elements (valid: {}), target: {} elements (valid: {})",
                a.lattice.len(),
                flag(ca.passes()),
                b.lattice.len(),
                flag(cb.passes())
            );
            checks_text(&mut text, &cs);
            let _ = writeln!(
                text,
                "lattice homomorphism: {}  m-homomorphism: {}",
                flag(r.is_lattice_hom()),
                flag(monadic && r.is_monadic_hom())
            );
            if duals && ok && monadic {
                let (ma, mb) = (a.monadic().expect("ops")?, b.monadic().expect("ops")?);
                let d = dual_hom(&ma, &mb, f)?;
                let pairs: Vec<(String, String)> = d
                    .map
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (d.source.space.name(i).to_owned(), d.target.space.name(j).to_owned()))
                    .collect();
                let back = round_trip_matches(&ma, &mb, f)?;
                if !back {
                    return Err(Error::Falsified("dualizing twice does not give back the homomorphism".into()).into());
                }
                json["dual"] = json!({
                    "map": table_json(&pairs),
                    "mq_function": d.report.is_mq_function(),
                    "round_trip": back,
                });
                let _ = writeln!(
                    text,
                    "dual map X(target) -> X(source), mq-function: {}, round trip: {}",
                    flag(d.report.is_mq_function()),
                    flag(back)
                );
                table_text(&mut text, &pairs);
            }
            Ok(finish(json, text, status_of(ok)))
        }
    }
}

pub fn check(path: &Path) -> CmdResult {
    let doc = StructureDoc::load(path)?;
    let (json, text) = header("check", path, doc.kind());
    match &doc {
        StructureDoc::Lattice(ld) => {
            let ll = ld.build()?;
            let c = lattice_checks(&ll)?;
            let (json, text) = lattice_check_output(json, text, &ll, &c);
            Ok(finish(json, text, status_of(c.passes())))
        }
        StructureDoc::Space(sd) => {
            let x = sd.build()?;
            let r = check_space(x.poset(), x.eq())?;
            let (json, text) = space_check_output(json, text, &x, &r);
            Ok(finish(json, text, status_of(r.is_mq_space() && r.is_mk_frame())))
        }
        StructureDoc::Map(md) => map_command("check", path, md, false),
    }
}

pub fn morphism(path: &Path) -> CmdResult {
    match StructureDoc::load(path)? {
        StructureDoc::Map(md) => map_command("morphism", path, &md, true),
        other => Err(CmdError {
            status: Status::Error,
            message: format!("morphism expects a map document, found {}", other.kind()),
        }),
    }
}

fn emit_doc(json: &mut Value, text: &mut String, doc: &StructureDoc, out: Option<&Path>) -> Result<(), CmdError> {
    let body = doc.to_pretty();
    match out {
        Some(p) => {
            std::fs::write(p, &body)?;
            json["written"] = json!(p.display().to_string());
            let _ = writeln!(text, "wrote {}", p.display());
        }
        None => {
            json["document"] = serde_json::to_value(doc).expect("documents serialize");
            text.push_str(&body);
        }
    }
    Ok(())
}

/// Loads a lattice document as a valid m-lattice, or returns the failing
/// report as an `Invalid` output.
fn require_monadic(command: &str, path: &Path, ld: &LatticeDoc) -> Result<Result<MonadicLattice, Output>, CmdError> {
    let ll = ld.build()?;
    let c = lattice_checks(&ll)?;
    if c.kind != "monadic" || !c.passes() {
        let (json, mut text) = header(command, path, "lattice");
        let (mut json, mut text) = {
            if c.kind != "monadic" {
                let _ = writeln!(text, "input needs both nabla and delta");
            }
            lattice_check_output(json, text, &ll, &c)
        };
        if c.kind != "monadic" {
            json["error"] = json!("input needs both nabla and delta");
        }
        let _ = writeln!(text, "input is not an m-lattice");
        return Ok(Err(finish(json, text, Status::Invalid)));
    }
    Ok(Ok(ll.monadic().expect("ops present")?))
}

fn require_mq(command: &str, path: &Path, sd: &SpaceDoc) -> Result<Result<MqSpace, Output>, CmdError> {
    let x = sd.build()?;
    let r = check_space(x.poset(), x.eq())?;
    if !r.is_mq_space() {
        let (json, text) = header(command, path, "space");
        let (json, mut text) = space_check_output(json, text, &x, &r);
        let _ = writeln!(text, "input is not an mq-space");
        return Ok(Err(finish(json, text, Status::Invalid)));
    }
    Ok(Ok(x))
}

pub fn dualize(path: &Path, opts: &Options) -> CmdResult {
    let doc = StructureDoc::load(path)?;
    match &doc {
        StructureDoc::Lattice(ld) => {
            let m = match require_monadic("dualize", path, ld)? {
                Ok(m) => m,
                Err(o) => return Ok(o),
            };
            let s = sigma_iso(&m)?;
            let x = &s.spectrum.space;
            let verified = s.hom.report.is_monadic_hom() && s.hom.is_bijective(s.dual.algebra.len());
            if !verified {
                return Err(Error::Falsified("σ is not an isomorphism onto D(X(L))".into()).into());
            }
            let (mut json, mut text) = header("dualize", path, "lattice");
            json["direction"] = json!("lattice to space");
            json["summary"] = json!({
                "points": x.len(),
                "classes": x.eq().num_blocks(),
                "sigma_isomorphism": verified,
            });
            let _ = writeln!(
                text,
                "spectrum: {} points, {} classes; sigma is an isomorphism onto the double dual: {}",
                x.len(),
                x.eq().num_blocks(),
                flag(verified)
            );
            emit_doc(&mut json, &mut text, &StructureDoc::Space(SpaceDoc::from_space(x)), opts.out.as_deref())?;
            Ok(finish(json, text, Status::Pass))
        }
        StructureDoc::Space(sd) => {
            let x = match require_mq("dualize", path, sd)? {
                Ok(x) => x,
                Err(o) => return Ok(o),
            };
            let e = epsilon_iso(&x)?;
            let a = &e.dual.algebra;
            let (mut json, mut text) = header("dualize", path, "space");
            json["direction"] = json!("space to lattice");
            json["summary"] = json!({
                "elements": a.len(),
                "epsilon_isomorphism": true,
            });
            let _ = writeln!(
                text,
                "dual algebra: {} elements; epsilon is an order and E isomorphism onto the double dual: yes",
                a.len()
            );
            emit_doc(&mut json, &mut text, &StructureDoc::Lattice(LatticeDoc::from_monadic(a)), opts.out.as_deref())?;
            Ok(finish(json, text, Status::Pass))
        }
        StructureDoc::Map(_) => Err(CmdError { status: Status::Error, message: "dualize expects a lattice or a space".into() }),
    }
}

fn classification_json(c: &Classification) -> Value {
    let x = &c.spectrum.space;
    let branch = match c.branch {
        Some(Branch::A { last }) => json!({ "branch": "a'", "last": space_set(x, last) }),
        Some(Branch::B { x: p }) => json!({ "branch": "b'", "point": x.name(p) }),
        None => Value::Null,
    };
    let v = |v: Verdict| json!(verdict_key(v));
    json!({
        "verdict": verdict_key(c.verdict),
        "description": describe(c),
        "branch": branch,
        "congruences": c.congruence_count,
        "routes": {
            "oracle": v(c.routes.oracle),
            "space": v(c.routes.space),
            "algebra": v(c.routes.algebra),
            "branches": v(c.routes.branches),
            "agree": c.routes.agree(),
        },
        "witness_holds": c.witness_holds(),
    })
}

pub fn verdict_key(v: Verdict) -> &'static str {
    match v {
        Verdict::Simple => "simple",
        Verdict::SINotSimple => "si_not_simple",
        Verdict::Neither => "neither",
    }
}

pub fn classify_cmd(path: &Path, opts: &Options) -> CmdResult {
    let doc = StructureDoc::load(path)?;
    let c = match &doc {
        StructureDoc::Lattice(ld) => match require_monadic("classify", path, ld)? {
            Ok(m) => classify(&m, &opts.limits)?,
            Err(o) => return Ok(o),
        },
        StructureDoc::Space(sd) => match require_mq("classify", path, sd)? {
            Ok(x) => classify_space(&x, &opts.limits)?,
            Err(o) => return Ok(o),
        },
        StructureDoc::Map(_) => {
            return Err(CmdError { status: Status::Error, message: "classify expects a lattice or a space".into() })
        }
    };
    if !c.routes.agree() || !c.witness_holds() {
        return Err(Error::Falsified(format!("classification routes disagree: {:?}", c.routes)).into());
    }
    let (mut json, mut text) = header("classify", path, doc.kind());
    json["classification"] = classification_json(&c);
    let _ = writeln!(text, "verdict: {}", describe(&c));
    let _ = writeln!(text, "congruences: {}", c.congruence_count);
    let _ = writeln!(
        text,
        "routes agree: {} (oracle, space, algebra, branches)",
        flag(c.routes.agree())
    );
    Ok(finish(json, text, Status::Pass))
}

pub fn congruences(path: &Path, opts: &Options) -> CmdResult {
    let doc = StructureDoc::load(path)?;
    let (lattice, cl): (DistLattice, CongruenceLattice) = match &doc {
        StructureDoc::Lattice(ld) if opts.q => {
            let ll = ld.build()?;
            let nabla = ll.nabla.as_ref().ok_or_else(|| CmdError {
                status: Status::Invalid,
                message: "--q needs a lattice with nabla".into(),
            })?;
            let cl = q_congruences(&ll.lattice, nabla, &opts.limits)?;
            (ll.lattice, cl)
        }
        StructureDoc::Lattice(ld) => match require_monadic("congruences", path, ld)? {
            Ok(m) => {
                let cl = con_m(&m, &opts.limits)?;
                (m.lattice().clone(), cl)
            }
            Err(o) => return Ok(o),
        },
        StructureDoc::Space(sd) => match require_mq("congruences", path, sd)? {
            Ok(x) => {
                let d = mlat::duality::dual_algebra(&x)?;
                let m = d.algebra;
                let cl = if opts.q {
                    q_congruences(m.lattice(), m.nabla(), &opts.limits)?
                } else {
                    con_m(&m, &opts.limits)?
                };
                (m.lattice().clone(), cl)
            }
            Err(o) => return Ok(o),
        },
        StructureDoc::Map(_) => {
            return Err(CmdError { status: Status::Error, message: "congruences expects a lattice or a space".into() })
        }
    };
    let x = &cl.spectrum.space;
    let sat = if opts.q { "i-saturated" } else { "id-saturated" };
    let n = cl.len();
    let mut reversing = true;
    for i in 0..n {
        for j in 0..n {
            let (yi, yj) = (cl.family.sets[i], cl.family.sets[j]);
            reversing &= yi.is_subset(&yj) == refines(&cl.congruences[j], &cl.congruences[i]);
        }
    }
    if !reversing {
        return Err(Error::Falsified("Θ does not reverse inclusion".into()).into());
    }
    let rows: Vec<Value> = cl
        .family
        .sets
        .iter()
        .zip(&cl.congruences)
        .map(|(y, t)| json!({ "set": space_set(x, *y), "congruence": blocks(&lattice, t) }))
        .collect();
    let (mut json, mut text) = header("congruences", path, doc.kind());
    json["family"] = json!(sat);
    json["saturated_sets"] = json!(n);
    json["congruences"] = json!(n);
    json["order_reversing_bijection"] = json!(reversing);
    json["table"] = Value::Array(rows);
    let _ = writeln!(text, "{n} {sat} sets, {n} congruences, order-reversing bijection: {}", flag(reversing));
    for (y, t) in cl.family.sets.iter().zip(&cl.congruences) {
        let _ = writeln!(text, "  {:<24} -> {}", braces(&space_set(x, *y)), blocks_text(&blocks(&lattice, t)));
    }
    Ok(finish(json, text, Status::Pass))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Spaces,
    MLattices,
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CmdError> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| CmdError { status: Status::Error, message: e.to_string() })?;
            Ok(pool.install(f))
        }
    }
}

fn tally_json(t: &BTreeMap<Verdict, usize>) -> Value {
    Value::Object(t.iter().map(|(v, c)| (verdict_key(*v).to_owned(), json!(c))).collect())
}

fn tally_text(text: &mut String, t: &BTreeMap<Verdict, usize>) {
    for (v, c) in t {
        let _ = writeln!(text, "  {v}: {c}");
    }
}

pub fn enumerate(kind: Kind, n: usize, opts: &Options) -> CmdResult {
    let limits = opts.universe_limits;
    if n > limits.max_poset {
        return Err(Error::CapExceeded { what: "poset size", size: n as u64, cap: limits.max_poset as u64 }.into());
    }
    let mut json = json!({ "command": "enumerate", "n": n });
    let mut text = String::new();
    match kind {
        Kind::Spaces => {
            let spaces = enumerate_spaces(n, &limits)?;
            let classified = with_pool(opts.jobs, || {
                spaces
                    .par_iter()
                    .map(|(p, e, r)| {
                        if p.is_empty() || !r.is_mq_space() {
                            return Ok(None);
                        }
                        let x = MqSpace::new(p.clone(), e.clone())?;
                        classify_space(&x, &limits).map(|c| Some(c.verdict))
                    })
                    .collect::<Result<Vec<Option<Verdict>>, Error>>()
            })??;
            json["kind"] = json!("spaces");
            let _ = writeln!(text, "enumerate spaces n={n}: {} entries", spaces.len());
            let mut entries = Vec::new();
            let mut counts = BTreeMap::<&str, usize>::new();
            for (k, ((p, e, r), v)) in spaces.iter().zip(&classified).enumerate() {
                let x = MqSpace::unchecked(p.clone(), e.clone())?;
                let sd = SpaceDoc::from_space(&x);
                for (name, b) in [
                    ("q_space", r.is_q_space()),
                    ("mq_space", r.is_mq_space()),
                    ("mk_frame", r.is_mk_frame()),
                    ("pak_frame", r.is_pak_frame()),
                ] {
                    *counts.entry(name).or_default() += b as usize;
                }
                let mut entry = json!({ "space": StructureDoc::Space(sd.clone()), "flags": space_flags(r) });
                if let Some(v) = v {
                    entry["verdict"] = json!(verdict_key(*v));
                }
                let leq: Vec<String> = sd.leq.iter().map(|(a, b)| format!("{a}<{b}")).collect();
                let _ = writeln!(
                    text,
                    "#{k:<4} leq [{}] classes {}  mq:{} mk:{} paK:{}{}",
                    leq.join(" "),
                    blocks_text(&sd.classes),
                    flag(r.is_mq_space()),
                    flag(r.is_mk_frame()),
                    flag(r.is_pak_frame()),
                    v.map(|v| format!("  {v}")).unwrap_or_default()
                );
                entries.push(entry);
            }
            let t = tally(classified.iter().flatten().copied());
            json["entries"] = Value::Array(entries);
            json["counts"] = json!(counts);
            json["verdicts"] = tally_json(&t);
            let _ = writeln!(
                text,
                "q-spaces {}, mq-spaces {}, mk-frames {}, paK-frames {}",
                counts["q_space"], counts["mq_space"], counts["mk_frame"], counts["pak_frame"]
            );
            tally_text(&mut text, &t);
        }
        Kind::MLattices => {
            let posets = unlabeled_posets(n)?;
            let per_poset = with_pool(opts.jobs, || {
                posets
                    .par_iter()
                    .map(|p| {
                        let l = up_set_lattice(p);
                        let ms = enumerate_monadic(&l, &limits)?;
                        ms.into_iter()
                            .map(|m| classify(&m, &limits).map(|c| (m, c.verdict, c.congruence_count)))
                            .collect::<Result<Vec<_>, Error>>()
                    })
                    .collect::<Result<Vec<_>, Error>>()
            })??;
            json["kind"] = json!("m-lattices");
            let total: usize = per_poset.iter().map(Vec::len).sum();
            let _ = writeln!(
                text,
                "enumerate m-lattices n={n}: {} posets up to isomorphism, {total} entries",
                posets.len()
            );
            let mut entries = Vec::new();
            let mut k = 0;
            for (pi, list) in per_poset.iter().enumerate() {
                for (m, v, count) in list {
                    let l = m.lattice();
                    let show = |t: &[usize]| t.iter().map(|&i| l.name(i)).collect::<Vec<_>>().join(" ");
                    let _ = writeln!(
                        text,
                        "#{k:<4} poset {pi} |L|={} nabla [{}] delta [{}]  {v}, {count} congruences",
                        l.len(),
                        show(m.nabla()),
                        show(m.delta())
                    );
                    entries.push(json!({
                        "poset": pi,
                        "lattice": StructureDoc::Lattice(LatticeDoc::from_monadic(m)),
                        "verdict": verdict_key(*v),
                        "congruences": count,
                    }));
                    k += 1;
                }
            }
            let t = tally(per_poset.iter().flatten().map(|(_, v, _)| *v));
            json["entries"] = Value::Array(entries);
            json["verdicts"] = tally_json(&t);
            tally_text(&mut text, &t);
        }
    }
    Ok(finish(json, text, Status::Pass))
}

/// Runs the suite items in parallel and merges the reports in item order,
/// so the result does not depend on the number of workers.
pub fn run_universe(n: usize, cfg: &SuiteConfig, jobs: Option<usize>) -> Result<(usize, SuiteReport), CmdError> {
    let items = universe_items(n, &cfg.limits)?;
    let reports = with_pool(jobs, || items.par_iter().map(|it| run_item(it, cfg)).collect::<Vec<_>>())?;
    let mut out = SuiteReport::default();
    for r in reports {
        out.merge(r);
    }
    Ok((items.len(), out))
}

pub fn verify(n: usize, opts: &Options) -> CmdResult {
    let cfg = SuiteConfig { limits: opts.universe_limits, fault: opts.fault };
    let (items, report) = run_universe(n, &cfg, opts.jobs)?;
    let falsified = report.falsifications();
    let mut json = json!({ "command": "verify", "n": n, "items": items });
    let mut text = format!("verify n={n}: {items} items\n");
    let mut groups = serde_json::Map::new();
    for g in Group::ALL {
        let rows: Vec<(&str, &mlat::verify::Tally)> =
            report.tallies.iter().filter(|((h, _), _)| *h == g).map(|((_, n), t)| (*n, t)).collect();
        if rows.is_empty() {
            continue;
        }
        let title = if g == Group::Observation { "observation (recorded, not asserted)" } else { g.name() };
        let _ = writeln!(text, "{title}");
        let mut arr = Vec::new();
        for (name, t) in rows {
            let _ = writeln!(
                text,
                "  {:<64} checked {:>7}  failed {:>5}  vacuous {:>5}",
                name, t.checked, t.failed, t.vacuous
            );
            if g != Group::Observation {
                for w in &t.witnesses {
                    let _ = writeln!(text, "    witness: {w}");
                }
            }
            arr.push(json!({
                "statement": name,
                "checked": t.checked,
                "failed": t.failed,
                "vacuous": t.vacuous,
                "witnesses": t.witnesses,
            }));
        }
        groups.insert(g.name().to_owned(), Value::Array(arr));
    }
    json["groups"] = Value::Object(groups);
    json["falsifications"] = json!(falsified);
    let _ = writeln!(text, "falsifications: {falsified}");
    let status = if falsified == 0 { Status::Pass } else { Status::Falsified };
    Ok(finish(json, text, status))
}
