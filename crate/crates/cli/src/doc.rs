//! The on-disk document format: one JSON object per file, tagged by `kind`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use mlat::duality::MqSpace;
use mlat::lattice::DistLattice;
use mlat::monadic::MonadicLattice;
use mlat::poset::{EquivRelation, FinitePoset};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StructureDoc {
    Lattice(LatticeDoc),
    Space(SpaceDoc),
    Map(MapDoc),
}

/// `leq` lists generator pairs; the order is their reflexive-transitive
/// closure. Meet and join are always recomputed from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nabla: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    /// Blocks of the equivalence `E`.
    pub classes: Vec<Vec<String>>,
}

/// `source` and `target` are paths, relative to the map file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: String,
    pub target: String,
    pub assign: BTreeMap<String, String>,
}

#[derive(Debug)]
pub enum DocError {
    Io(String),
    Parse(String),
    /// The document is well formed but names something that is not there.
    Reference(String),
    /// The document describes a structure that fails a construction check.
    Structure(mlat::Error),
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Io(m) | DocError::Parse(m) | DocError::Reference(m) => f.write_str(m),
            DocError::Structure(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DocError {}

impl From<mlat::Error> for DocError {
    fn from(e: mlat::Error) -> Self {
        match e {
            mlat::Error::UnknownElement(_) | mlat::Error::DuplicateElement(_) => {
                DocError::Reference(e.to_string())
            }
            e => DocError::Structure(e),
        }
    }
}

impl StructureDoc {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureDoc::Lattice(_) => "lattice",
            StructureDoc::Space(_) => "space",
            StructureDoc::Map(_) => "map",
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocError> {
        serde_json::from_str(text).map_err(|e| DocError::Parse(format!("parse error: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, DocError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DocError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| DocError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// A lattice document after construction. Operator tables are only
/// checked for totality here; the axioms are left to the caller.
#[derive(Clone, Debug)]
pub struct LoadedLattice {
    pub lattice: DistLattice,
    pub nabla: Option<Vec<usize>>,
    pub delta: Option<Vec<usize>>,
}

impl LoadedLattice {
    pub fn monadic(&self) -> Option<Result<MonadicLattice, mlat::Error>> {
        match (&self.nabla, &self.delta) {
            (Some(n), Some(d)) => Some(MonadicLattice::new(self.lattice.clone(), n.clone(), d.clone())),
            _ => None,
        }
    }
}

fn order(elements: &[String], leq: &[(String, String)]) -> Result<FinitePoset, DocError> {
    Ok(FinitePoset::from_pairs(elements, leq)?)
}

fn table(
    p: &FinitePoset,
    map: &BTreeMap<String, String>,
    what: &str,
) -> Result<Vec<usize>, DocError> {
    let lookup = |s: &str| {
        p.index_of(s).ok_or_else(|| DocError::Reference(format!("{what}: unknown element `{s}`")))
    };
    for k in map.keys() {
        lookup(k)?;
    }
    (0..p.len())
        .map(|i| {
            let v = map
                .get(p.name(i))
                .ok_or_else(|| DocError::Reference(format!("{what}: no value for `{}`", p.name(i))))?;
            lookup(v)
        })
        .collect()
}

impl LatticeDoc {
    pub fn build(&self) -> Result<LoadedLattice, DocError> {
        let p = order(&self.elements, &self.leq)?;
        if self.delta.is_some() && self.nabla.is_none() {
            return Err(DocError::Reference("delta given without nabla".into()));
        }
        let nabla = self.nabla.as_ref().map(|m| table(&p, m, "nabla")).transpose()?;
        let delta = self.delta.as_ref().map(|m| table(&p, m, "delta")).transpose()?;
        let lattice = DistLattice::from_order(p)?;
        Ok(LoadedLattice { lattice, nabla, delta })
    }

    pub fn from_lattice(l: &DistLattice, ops: Option<(&[usize], &[usize])>) -> Self {
        let names = l.names();
        let op = |t: &[usize]| -> BTreeMap<String, String> {
            t.iter().enumerate().map(|(i, &v)| (names[i].clone(), names[v].clone())).collect()
        };
        LatticeDoc {
            elements: names.to_vec(),
            leq: covers(l.order()),
            nabla: ops.map(|(n, _)| op(n)),
            delta: ops.map(|(_, d)| op(d)),
        }
    }

    pub fn from_monadic(m: &MonadicLattice) -> Self {
        Self::from_lattice(m.lattice(), Some((m.nabla(), m.delta())))
    }
}

fn covers(p: &FinitePoset) -> Vec<(String, String)> {
    p.covers().into_iter().map(|(a, b)| (p.name(a).to_owned(), p.name(b).to_owned())).collect()
}

impl SpaceDoc {
    /// The ordered set with its equivalence; mq-space conditions are not
    /// checked.
    pub fn build(&self) -> Result<MqSpace, DocError> {
        let p = order(&self.elements, &self.leq)?;
        let mut blocks = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let b = c
                .iter()
                .map(|s| {
                    p.index_of(s)
                        .ok_or_else(|| DocError::Reference(format!("classes: unknown element `{s}`")))
                })
                .collect::<Result<Vec<usize>, _>>()?;
            blocks.push(b);
        }
        let e = EquivRelation::from_blocks(p.len(), &blocks)?;
        Ok(MqSpace::unchecked(p, e)?)
    }

    pub fn from_space(x: &MqSpace) -> Self {
        let p = x.poset();
        SpaceDoc {
            elements: p.names().to_vec(),
            leq: covers(p),
            classes: x
                .eq()
                .blocks()
                .iter()
                .map(|b| b.iter().map(|i| p.name(i).to_owned()).collect())
                .collect(),
        }
    }
}

/// Both ends of a map document after loading.
#[derive(Clone, Debug)]
pub enum Ends {
    Spaces(MqSpace, MqSpace),
    Lattices(LoadedLattice, LoadedLattice),
}

#[derive(Clone, Debug)]
pub struct LoadedMap {
    pub ends: Ends,
    pub map: Vec<usize>,
}

impl MapDoc {
    fn resolve(&self, base: &Path, p: &str) -> PathBuf {
        let p = Path::new(p);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            base.join(p)
        }
    }

    /// Loads both ends relative to `base` and translates the assignment.
    pub fn build(&self, base: &Path) -> Result<LoadedMap, DocError> {
        let src = StructureDoc::load(&self.resolve(base, &self.source))?;
        let tgt = StructureDoc::load(&self.resolve(base, &self.target))?;
        let (ends, from, to) = match (src, tgt) {
            (StructureDoc::Space(a), StructureDoc::Space(b)) => {
                let (x1, x2) = (a.build()?, b.build()?);
                let (f, t) = (x1.poset().clone(), x2.poset().clone());
                (Ends::Spaces(x1, x2), f, t)
            }
            (StructureDoc::Lattice(a), StructureDoc::Lattice(b)) => {
                let (l1, l2) = (a.build()?, b.build()?);
                let (f, t) = (l1.lattice.order().clone(), l2.lattice.order().clone());
                (Ends::Lattices(l1, l2), f, t)
            }
            (a, b) => {
                return Err(DocError::Reference(format!(
                    "map ends must both be spaces or both be lattices, found {} and {}",
                    a.kind(),
                    b.kind()
                )))
            }
        };
        for k in self.assign.keys() {
            if from.index_of(k).is_none() {
                return Err(DocError::Reference(format!("assign: unknown source element `{k}`")));
            }
        }
        let map = (0..from.len())
            .map(|i| {
                let v = self.assign.get(from.name(i)).ok_or_else(|| {
                    DocError::Reference(format!("assign: no value for `{}`", from.name(i)))
                })?;
                to.index_of(v)
                    .ok_or_else(|| DocError::Reference(format!("assign: unknown target element `{v}`")))
            })
            .collect::<Result<Vec<usize>, _>>()?;
        Ok(LoadedMap { ends, map })
    }
}
