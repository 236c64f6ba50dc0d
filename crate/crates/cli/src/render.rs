use std::fmt::Write;

use mlat::duality::MqSpace;
use mlat::lattice::DistLattice;
use mlat::poset::EquivRelation;
use mlat::{ElementSet, Outcome};
use serde_json::{json, Value};

/// One named condition with its witness rendered as element names.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub detail: Option<String>,
    pub outcome: Outcome,
    pub witness: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, outcome: &Outcome, names: impl Fn(usize, usize) -> String) -> Self {
        let witness = outcome
            .witness()
            .map(|w| w.iter().enumerate().map(|(pos, &i)| names(pos, i)).collect())
            .unwrap_or_default();
        Check { name: name.into(), detail: None, outcome: outcome.clone(), witness }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.outcome.holds()
    }

    fn state(&self) -> &'static str {
        match self.outcome {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::Vacuous => "vacuous",
        }
    }

    pub fn json(&self) -> Value {
        let mut v = json!({ "name": self.name, "result": self.state() });
        if let Some(d) = &self.detail {
            v["identity"] = json!(d);
        }
        if matches!(self.outcome, Outcome::Fail(_)) {
            v["witness"] = json!(self.witness);
        }
        v
    }

    pub fn line(&self, out: &mut String) {
        let label = match &self.detail {
            Some(d) => format!("{}  {}", self.name, d),
            None => self.name.clone(),
        };
        let state = match self.outcome {
            Outcome::Pass => "pass".to_string(),
            Outcome::Vacuous => "vacuous (finite discrete)".to_string(),
            Outcome::Fail(_) if self.witness.is_empty() => "FAIL".to_string(),
            Outcome::Fail(_) => format!("FAIL at ({})", self.witness.join(", ")),
        };
        let _ = writeln!(out, "  {label:<34} {state}");
    }
}

pub fn checks_json(cs: &[Check]) -> Value {
    Value::Array(cs.iter().map(Check::json).collect())
}

pub fn checks_text(out: &mut String, cs: &[Check]) {
    for c in cs {
        c.line(out);
    }
}

pub fn set_names(names: impl Fn(usize) -> String, s: ElementSet) -> Vec<String> {
    s.iter().map(names).collect()
}

pub fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

pub fn space_set(x: &MqSpace, s: ElementSet) -> Vec<String> {
    set_names(|i| x.name(i).to_owned(), s)
}

pub fn blocks(l: &DistLattice, e: &EquivRelation) -> Vec<Vec<String>> {
    e.blocks().iter().map(|b| set_names(|i| l.name(i).to_owned(), *b)).collect()
}

pub fn blocks_text(bs: &[Vec<String>]) -> String {
    bs.iter().map(|b| braces(b)).collect::<Vec<_>>().join(" ")
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
