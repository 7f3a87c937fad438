//! JSON input formats: graphs, algebra references, homomorphisms and diagrams.
//!
//! ```text
//! algref  = {"graph": path | inline graph, "laurent": bool} | {"zero": true}
//! homref  = {"images": {generator: expression}}
//! hom     = {"domain": algref, "codomain": algref, "images": {...}}
//! diagram = {"A","B","C","D": algref, "f","g","l","r": homref,
//!            "witnesses": {D-generator: B-expression}}
//! ```
//!
//! Relative graph paths resolve against the directory of the referring file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::graph::{Graph, GraphError, GraphSpec};
use crate::hom::{AlgebraRef, GenHom, HomError};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed {what}: {message}")]
    Malformed { what: &'static str, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hom(#[from] HomError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GraphSource {
    Path(String),
    Inline(GraphSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AlgRefFile {
    Zero(ZeroRef),
    Graph(GraphRef),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroRef {
    pub zero: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRef {
    pub graph: GraphSource,
    #[serde(default)]
    pub laurent: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomRef {
    pub images: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomFile {
    pub domain: AlgRefFile,
    pub codomain: AlgRefFile,
    pub images: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct DiagramFile {
    pub A: AlgRefFile,
    pub B: AlgRefFile,
    pub C: AlgRefFile,
    pub D: AlgRefFile,
    pub f: HomRef,
    pub g: HomRef,
    pub l: HomRef,
    pub r: HomRef,
    #[serde(default)]
    pub witnesses: Option<BTreeMap<String, String>>,
}

pub fn read_text(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|e| FileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(
    text: &str,
    what: &'static str,
) -> Result<T, FileError> {
    serde_json::from_str(text).map_err(|e| FileError::Malformed {
        what,
        message: e.to_string(),
    })
}

pub fn load_graph(path: &Path) -> Result<Arc<Graph>, FileError> {
    Ok(Arc::new(Graph::from_json(&read_text(path)?)?))
}

/// Resolves algebra references, sharing one graph per distinct source so
/// that algebras over the same file compare equal.
struct Resolver {
    base: PathBuf,
    cache: BTreeMap<String, Arc<Graph>>,
}

impl Resolver {
    fn new(base: &Path) -> Self {
        Resolver {
            base: base.to_path_buf(),
            cache: BTreeMap::new(),
        }
    }

    fn graph(&mut self, src: &GraphSource) -> Result<Arc<Graph>, FileError> {
        let key = match src {
            GraphSource::Path(p) => format!("path:{p}"),
            GraphSource::Inline(spec) => format!(
                "inline:{}",
                serde_json::to_string(spec).expect("plain data")
            ),
        };
        if let Some(g) = self.cache.get(&key) {
            return Ok(g.clone());
        }
        let g = match src {
            GraphSource::Path(p) => load_graph(&self.base.join(p))?,
            GraphSource::Inline(spec) => Arc::new(spec.validate()?),
        };
        self.cache.insert(key, g.clone());
        Ok(g)
    }

    fn algebra(&mut self, r: &AlgRefFile) -> Result<AlgebraRef, FileError> {
        match r {
            AlgRefFile::Zero(z) if z.zero => Ok(AlgebraRef::zero()),
            AlgRefFile::Zero(_) => Err(FileError::Malformed {
                what: "algebra reference",
                message: "\"zero\" must be true".into(),
            }),
            AlgRefFile::Graph(g) => {
                let graph = self.graph(&g.graph)?;
                Ok(if g.laurent {
                    AlgebraRef::laurent(graph)?
                } else {
                    AlgebraRef::plain(graph)
                })
            }
        }
    }
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

pub fn parse_hom(text: &str, base: &Path) -> Result<GenHom, FileError> {
    let file: HomFile = parse_json(text, "homomorphism file")?;
    let mut res = Resolver::new(base);
    let dom = res.algebra(&file.domain)?;
    let cod = res.algebra(&file.codomain)?;
    let mut h = GenHom::from_expressions("h", dom, cod, &file.images)?;
    h.verify();
    Ok(h)
}

pub fn load_hom(path: &Path) -> Result<GenHom, FileError> {
    parse_hom(&read_text(path)?, base_dir(path))
}

pub fn parse_diagram(text: &str, base: &Path) -> Result<Diagram, FileError> {
    let file: DiagramFile = parse_json(text, "diagram file")?;
    let mut res = Resolver::new(base);
    let (a, b, c, d) = (
        res.algebra(&file.A)?,
        res.algebra(&file.B)?,
        res.algebra(&file.C)?,
        res.algebra(&file.D)?,
    );
    let f = GenHom::from_expressions("f", c.clone(), a.clone(), &file.f.images)?;
    let g = GenHom::from_expressions("g", c, b.clone(), &file.g.images)?;
    let l = GenHom::from_expressions("l", a, d.clone(), &file.l.images)?;
    let r = GenHom::from_expressions("r", b.clone(), d, &file.r.images)?;
    let witnesses = match &file.witnesses {
        None => None,
        Some(w) => {
            let mut out = BTreeMap::new();
            for (k, src) in w {
                let x = b.parse(src).map_err(|source| HomError::Parse {
                    generator: k.clone(),
                    source,
                })?;
                out.insert(k.clone(), x);
            }
            Some(out)
        }
    };
    Ok(Diagram::new(f, g, l, r, witnesses)?)
}

pub fn load_diagram(path: &Path) -> Result<Diagram, FileError> {
    parse_diagram(&read_text(path)?, base_dir(path))
}
