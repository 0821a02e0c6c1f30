//! Reading documents from disk and resolving the ambient space.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;
use vcm_core::format::{
    faces_from_lists, CertificateDoc, ComplexDoc, IdealDoc, LoadedCertificate, LoadedComplex,
};
use vcm_core::stanley_reisner::complex_from_sr;
use vcm_core::{Ambient, MonomialIdeal, SimplicialComplex, ToricContext, VertexLabeling};

/// `path`, or `path.json` when only the latter exists.
pub fn resolve(path: &Path) -> PathBuf {
    if !path.exists() {
        let mut with_ext = path.as_os_str().to_owned();
        with_ext.push(".json");
        let with_ext = PathBuf::from(with_ext);
        if with_ext.exists() {
            return with_ext;
        }
    }
    path.to_path_buf()
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let path = resolve(path);
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_complex(path: &Path) -> Result<LoadedComplex> {
    let doc: ComplexDoc = read_json(path)?;
    doc.load(None).with_context(|| format!("loading {}", path.display()))
}

pub fn load_certificate(path: &Path) -> Result<LoadedCertificate> {
    let doc: CertificateDoc = read_json(path)?;
    doc.load().with_context(|| format!("loading {}", path.display()))
}

pub fn load_ideal(
    path: &Path,
    fallback: Option<&Arc<VertexLabeling>>,
) -> Result<(MonomialIdeal, Option<ToricContext>)> {
    let doc: IdealDoc = read_json(path)?;
    doc.load(fallback).with_context(|| format!("loading {}", path.display()))
}

/// A complex document, or a square-free ideal read as its Stanley–Reisner
/// complex.
pub fn load_complex_or_ideal(path: &Path) -> Result<LoadedComplex> {
    let value: Value = read_json(path)?;
    if value.get("facets").is_some() {
        return load_complex(path);
    }
    let (ideal, context) = load_ideal(path, None)?;
    let complex = complex_from_sr(&ideal)?;
    Ok(LoadedComplex {
        listed: complex.facets().to_vec(),
        complex,
        context,
    })
}

#[derive(Deserialize)]
struct ToricDoc {
    #[serde(default)]
    vertices: Option<Vec<String>>,
    blocks: Vec<Vec<usize>>,
}

pub fn load_toric(path: &Path, vertices: &Arc<VertexLabeling>) -> Result<ToricContext> {
    let doc: ToricDoc = read_json(path)?;
    if let Some(labels) = &doc.vertices {
        if labels.as_slice() != vertices.labels() {
            bail!("{}: vertex labels differ from the complex", path.display());
        }
    }
    Ok(ToricContext::new(Arc::clone(vertices), doc.blocks)?)
}

/// A complex on the given labeling; the document may omit `vertices`.
pub fn load_subcomplex(path: &Path, vertices: &Arc<VertexLabeling>) -> Result<SimplicialComplex> {
    let doc: ComplexDoc = read_json(path)?;
    if let Some(labels) = &doc.vertices {
        if labels.as_slice() != vertices.labels() {
            bail!("{}: vertex labels differ from the complex", path.display());
        }
    }
    complex_from_lists(vertices, &doc.facets)
}

pub fn complex_from_lists(
    vertices: &Arc<VertexLabeling>,
    lists: &[Vec<usize>],
) -> Result<SimplicialComplex> {
    let faces = faces_from_lists(lists, vertices.len())?;
    if faces.is_empty() {
        return Ok(SimplicialComplex::void(Arc::clone(vertices)));
    }
    Ok(SimplicialComplex::new(Arc::clone(vertices), faces)?)
}

/// Sources of an ambient space, in decreasing priority.
#[derive(Default)]
pub struct AmbientSources<'a> {
    pub explicit: Option<&'a Path>,
    pub toric: Option<&'a Path>,
    pub embedded_explicit: Option<&'a SimplicialComplex>,
    pub embedded_context: Option<&'a ToricContext>,
}

impl AmbientSources<'_> {
    pub fn resolve(&self, vertices: &Arc<VertexLabeling>) -> Result<Ambient> {
        if let Some(p) = self.explicit {
            return Ok(Ambient::Explicit(load_subcomplex(p, vertices)?));
        }
        if let Some(p) = self.toric {
            return Ok(Ambient::Product(load_toric(p, vertices)?));
        }
        if let Some(c) = self.embedded_explicit {
            return Ok(Ambient::Explicit(c.clone()));
        }
        if let Some(c) = self.embedded_context {
            return Ok(Ambient::Product(c.clone()));
        }
        Err(anyhow!("no ambient space: give `blocks`, --toric or --irrelevant"))
    }
}
