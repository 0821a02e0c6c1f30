//! Serializable documents for complexes, maps, ideals and certificates.
//!
//! Vertex indices are 0-based and every facet array is strictly increasing.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, VertexLabeling};
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::monomial::{Monomial, MonomialIdeal};
use crate::toric::ToricContext;

/// `{vertices, facets, blocks?}`. `vertices` may be omitted where another
/// document supplies the labeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
}

/// A complex read from a document, with its facets in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedComplex {
    pub complex: SimplicialComplex,
    pub listed: Vec<Face>,
    pub context: Option<ToricContext>,
}

impl LoadedComplex {
    /// Translates positions in the file's facet list to positions in
    /// `complex.facets()`.
    pub fn canonical_order(&self, listed_order: &[usize]) -> Result<Vec<usize>> {
        listed_order
            .iter()
            .map(|&i| {
                let f = self.listed.get(i).ok_or_else(|| {
                    Error::NotPermutation(format!("facet position {i} out of range"))
                })?;
                self.complex.facets().binary_search(f).map_err(|_| {
                    Error::NotPermutation(format!(
                        "listed face {} is not a facet",
                        self.complex.format_face(*f)
                    ))
                })
            })
            .collect()
    }

    /// Translates positions in `complex.facets()` back to file positions.
    pub fn listed_order(&self, canonical: &[usize]) -> Vec<usize> {
        canonical
            .iter()
            .map(|&i| {
                let f = self.complex.facets()[i];
                self.listed.iter().position(|g| *g == f).expect("facet is listed")
            })
            .collect()
    }
}

fn face_from_indices(indices: &[usize], n: usize) -> Result<Face> {
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Format(format!("face {indices:?} is not strictly increasing")));
    }
    if let Some(&v) = indices.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { index: v, len: n });
    }
    Ok(Face::from_indices(indices.iter().copied()))
}

/// Reads a list of faces over `n` vertices.
pub fn faces_from_lists(lists: &[Vec<usize>], n: usize) -> Result<Vec<Face>> {
    lists.iter().map(|f| face_from_indices(f, n)).collect()
}

impl ComplexDoc {
    pub fn from_complex(complex: &SimplicialComplex, context: Option<&ToricContext>) -> Self {
        ComplexDoc {
            vertices: Some(complex.vertices().labels().to_vec()),
            facets: complex.facets().iter().map(|f| f.to_vec()).collect(),
            blocks: context.map(|c| c.blocks().iter().map(|b| b.to_vec()).collect()),
        }
    }

    /// Builds the complex; `fallback` supplies the labeling when the
    /// document has no `vertices` field.
    pub fn load(&self, fallback: Option<&Arc<VertexLabeling>>) -> Result<LoadedComplex> {
        let vertices = match (&self.vertices, fallback) {
            (Some(labels), _) => Arc::new(VertexLabeling::new(labels.iter().cloned())?),
            (None, Some(v)) => Arc::clone(v),
            (None, None) => return Err(Error::Format("missing `vertices`".into())),
        };
        let listed = faces_from_lists(&self.facets, vertices.len())?;
        let complex = if listed.is_empty() {
            SimplicialComplex::void(Arc::clone(&vertices))
        } else {
            SimplicialComplex::new(Arc::clone(&vertices), listed.iter().copied())?
        };
        let context = self
            .blocks
            .as_ref()
            .map(|b| ToricContext::new(vertices, b.clone()))
            .transpose()?;
        Ok(LoadedComplex {
            complex,
            listed,
            context,
        })
    }
}

/// `{source, target, vertex_map}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub vertex_map: Vec<usize>,
}

impl MapDoc {
    pub fn from_map(map: &SimplicialMap) -> Self {
        MapDoc {
            source: ComplexDoc::from_complex(map.source(), None),
            target: ComplexDoc::from_complex(map.target(), None),
            vertex_map: map.vertex_map().to_vec(),
        }
    }

    pub fn load(&self) -> Result<SimplicialMap> {
        SimplicialMap::new(
            self.source.load(None)?.complex,
            self.target.load(None)?.complex,
            self.vertex_map.clone(),
        )
    }
}

/// A monomial as `[variable, exponent]` pairs.
pub type MonomialDoc = Vec<(usize, u32)>;

/// Either a bare array of monomials or `{vertices, generators, blocks?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealDoc {
    Labeled {
        vertices: Vec<String>,
        generators: Vec<MonomialDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        blocks: Option<Vec<Vec<usize>>>,
    },
    Bare(Vec<MonomialDoc>),
}

impl IdealDoc {
    pub fn from_ideal(ideal: &MonomialIdeal, context: Option<&ToricContext>) -> Self {
        IdealDoc::Labeled {
            vertices: ideal.ambient().labels().to_vec(),
            generators: ideal.generators().iter().map(Monomial::pairs).collect(),
            blocks: context.map(|c| c.blocks().iter().map(|b| b.to_vec()).collect()),
        }
    }

    /// Builds the ideal; a bare array takes its labeling from `fallback`.
    pub fn load(
        &self,
        fallback: Option<&Arc<VertexLabeling>>,
    ) -> Result<(MonomialIdeal, Option<ToricContext>)> {
        let (vertices, generators, blocks) = match (self, fallback) {
            (IdealDoc::Labeled { vertices, generators, blocks }, _) => (
                Arc::new(VertexLabeling::new(vertices.iter().cloned())?),
                generators,
                blocks.as_ref(),
            ),
            (IdealDoc::Bare(generators), Some(v)) => (Arc::clone(v), generators, None),
            (IdealDoc::Bare(_), None) => {
                return Err(Error::Format("a bare generator list needs a vertex labeling".into()))
            }
        };
        let n = vertices.len();
        let monomials = generators
            .iter()
            .map(|g| Monomial::from_pairs(n, g))
            .collect::<Result<Vec<_>>>()?;
        let context = blocks
            .map(|b| ToricContext::new(Arc::clone(&vertices), b.clone()))
            .transpose()?;
        Ok((MonomialIdeal::new(vertices, monomials)?, context))
    }
}

/// `{delta, delta_prime, psi, order?, c?, irrelevant?}`. `order` lists
/// positions in `delta.facets`; `c` and `irrelevant` are facet lists on the
/// labeling of `delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub delta: ComplexDoc,
    pub delta_prime: ComplexDoc,
    pub psi: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irrelevant: Option<Vec<Vec<usize>>>,
}

/// A certificate document read into library values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedCertificate {
    pub delta: LoadedComplex,
    pub map: SimplicialMap,
    /// Order as positions in `delta.complex.facets()`.
    pub order: Option<Vec<usize>>,
    pub c: Option<SimplicialComplex>,
    pub irrelevant: Option<SimplicialComplex>,
}

fn complex_on(vertices: &Arc<VertexLabeling>, lists: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let faces = faces_from_lists(lists, vertices.len())?;
    if faces.is_empty() {
        return Ok(SimplicialComplex::void(Arc::clone(vertices)));
    }
    SimplicialComplex::new(Arc::clone(vertices), faces)
}

impl CertificateDoc {
    pub fn load(&self) -> Result<LoadedCertificate> {
        let delta = self.delta.load(None)?;
        let prime = self.delta_prime.load(None)?.complex;
        let map = SimplicialMap::new(prime, delta.complex.clone(), self.psi.clone())?;
        let order = self.order.as_ref().map(|o| delta.canonical_order(o)).transpose()?;
        let v = delta.complex.vertices();
        let c = self.c.as_ref().map(|l| complex_on(v, l)).transpose()?;
        let irrelevant = self.irrelevant.as_ref().map(|l| complex_on(v, l)).transpose()?;
        Ok(LoadedCertificate {
            delta,
            map,
            order,
            c,
            irrelevant,
        })
    }

    /// Document for `map` with `order` given as positions in
    /// `map.target().facets()`.
    pub fn from_parts(
        map: &SimplicialMap,
        context: Option<&ToricContext>,
        order: Option<&[usize]>,
        c: Option<&SimplicialComplex>,
    ) -> Self {
        CertificateDoc {
            delta: ComplexDoc::from_complex(map.target(), context),
            delta_prime: ComplexDoc::from_complex(map.source(), None),
            psi: map.vertex_map().to_vec(),
            order: order.map(<[usize]>::to_vec),
            c: c.map(|c| c.facets().iter().map(|f| f.to_vec()).collect()),
            irrelevant: None,
        }
    }
}
