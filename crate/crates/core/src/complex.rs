//! Simplicial complexes stored by their facets.
//!
//! Faces are fixed-width bit sets over vertex indices, so a complex on `n`
//! vertices supports `n <= 128`. A complex keeps only its inclusion-maximal
//! faces and answers membership with subset tests.
//!
//! Two degenerate complexes are kept apart: the *empty complex* `{∅}` has the
//! single facet `∅` and dimension `-1`, while the *void complex* has no faces
//! at all and no dimension.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest number of vertices a [`Face`] can address.
pub const MAX_VERTICES: usize = 128;

/// A finite set of vertex indices.
///
/// The derived order is by cardinality first, then lexicographic on the
/// ascending vertex lists, so `{0,1,4} < {0,2,3} < {0,1,2,3}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Face(u128);

impl Face {
    pub const EMPTY: Face = Face(0);

    /// Builds a face from vertex indices. Panics on an index `>= 128`; use
    /// [`VertexLabeling::face`] for checked construction.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Face {
        let mut bits = 0u128;
        for i in indices {
            assert!(i < MAX_VERTICES, "vertex index {i} exceeds {MAX_VERTICES}");
            bits |= 1 << i;
        }
        Face(bits)
    }

    pub fn singleton(v: usize) -> Face {
        Face::from_indices([v])
    }

    pub fn from_bits(bits: u128) -> Face {
        Face(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|F| - 1`, with `dim ∅ = -1`.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> Face {
        self.union(Face::singleton(v))
    }

    pub fn without(self, v: usize) -> Face {
        self.difference(Face::singleton(v))
    }

    /// Largest vertex index plus one, or 0 for the empty face.
    pub fn span(self) -> usize {
        MAX_VERTICES - self.0.leading_zeros() as usize
    }

    /// Vertex indices in ascending order.
    pub fn iter(self) -> FaceIter {
        FaceIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of this face, including `∅` and the face itself.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(self.0),
        }
    }

    /// The faces obtained by deleting one vertex.
    pub fn boundary(self) -> impl Iterator<Item = Face> {
        self.iter().map(move |v| self.without(v))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for Face {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Face::from_indices(iter)
    }
}

pub struct FaceIter(u128);

impl Iterator for FaceIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for FaceIter {}

pub struct Subsets {
    mask: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            Some((current - 1) & self.mask)
        };
        Some(Face(current))
    }
}

/// Ordered, pairwise distinct vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabeling {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl VertexLabeling {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: labels.len(),
                max: MAX_VERTICES,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(VertexLabeling { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The face containing every vertex.
    pub fn full_face(&self) -> Face {
        Face::from_indices(0..self.len())
    }

    /// Checked face construction from indices.
    pub fn face<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<Face> {
        let mut f = Face::EMPTY;
        for i in indices {
            if i >= self.len() {
                return Err(Error::VertexOutOfRange {
                    index: i,
                    len: self.len(),
                });
            }
            f = f.with(i);
        }
        Ok(f)
    }

    pub fn face_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Face::from_indices)
    }

    pub fn check_face(&self, face: Face) -> Result<()> {
        if face.span() > self.len() {
            return Err(Error::VertexOutOfRange {
                index: face.span() - 1,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// `{x0,y1}` style rendering.
    pub fn format_face(&self, face: Face) -> String {
        let names: Vec<&str> = face.iter().map(|v| self.label(v)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A finite simplicial complex, presented by its facets.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Arc<VertexLabeling>,
    facets: Vec<Face>,
}

/// Keeps the inclusion-maximal members of `faces`, in canonical order.
pub(crate) fn maximal_faces<I: IntoIterator<Item = Face>>(faces: I) -> Vec<Face> {
    let mut all: Vec<Face> = faces.into_iter().collect();
    all.sort_unstable_by(|a, b| b.cmp(a));
    all.dedup();
    let mut kept: Vec<Face> = Vec::new();
    for f in all {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

impl SimplicialComplex {
    /// The smallest complex containing every generating face.
    pub fn new<I>(vertices: Arc<VertexLabeling>, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = Face>,
    {
        let generators: Vec<Face> = generators.into_iter().collect();
        for &f in &generators {
            vertices.check_face(f)?;
        }
        Ok(SimplicialComplex {
            vertices,
            facets: maximal_faces(generators),
        })
    }

    /// Convenience constructor from label lists.
    pub fn from_labels<S: AsRef<str>>(labels: &[S], facets: &[&[S]]) -> Result<Self> {
        let vertices = Arc::new(VertexLabeling::new(labels.iter().map(|s| s.as_ref()))?);
        let faces = facets
            .iter()
            .map(|f| vertices.face_from_labels(f))
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::new(vertices, faces)
    }

    /// The complex with no faces.
    pub fn void(vertices: Arc<VertexLabeling>) -> Self {
        SimplicialComplex {
            vertices,
            facets: Vec::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty(vertices: Arc<VertexLabeling>) -> Self {
        SimplicialComplex {
            vertices,
            facets: vec![Face::EMPTY],
        }
    }

    /// The closure `⟨F⟩` of one face.
    pub fn simplex(vertices: Arc<VertexLabeling>, face: Face) -> Result<Self> {
        SimplicialComplex::new(vertices, [face])
    }

    /// The full simplex on all vertices.
    pub fn full(vertices: Arc<VertexLabeling>) -> Self {
        let f = vertices.full_face();
        SimplicialComplex {
            vertices,
            facets: vec![f],
        }
    }

    pub fn vertices(&self) -> &Arc<VertexLabeling> {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.dim()).max()
    }

    pub(crate) fn require_dim(&self) -> Result<isize> {
        self.dim().ok_or(Error::VoidComplex)
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(f) => self.facets.iter().all(|g| g.len() == f.len()),
        }
    }

    pub fn contains(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    pub fn is_facet(&self, face: Face) -> bool {
        self.facets.binary_search(&face).is_ok()
    }

    /// Vertices lying in at least one face.
    pub fn support(&self) -> Face {
        self.facets
            .iter()
            .fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    /// All faces in canonical order, `∅` first.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = HashSet::new();
        for f in &self.facets {
            seen.extend(f.subsets());
        }
        let mut out: Vec<Face> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Faces grouped by dimension; index `k` holds the `(k-1)`-faces.
    pub fn faces_by_dim(&self) -> Vec<Vec<Face>> {
        let Some(d) = self.dim() else {
            return Vec::new();
        };
        let mut out = vec![Vec::new(); (d + 2) as usize];
        for f in self.faces() {
            out[f.len()].push(f);
        }
        out
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }

    fn same_labeling(&self, other: &SimplicialComplex) -> Result<()> {
        if Arc::ptr_eq(&self.vertices, &other.vertices) || self.vertices == other.vertices {
            Ok(())
        } else {
            Err(Error::LabelingMismatch)
        }
    }

    fn with_facets<I: IntoIterator<Item = Face>>(&self, faces: I) -> SimplicialComplex {
        SimplicialComplex {
            vertices: Arc::clone(&self.vertices),
            facets: maximal_faces(faces),
        }
    }

    /// `link_Δ(G) = {F ∈ Δ | F ∩ G = ∅, F ∪ G ∈ Δ}`.
    pub fn link(&self, g: Face) -> Result<SimplicialComplex> {
        if !self.contains(g) {
            return Err(Error::FaceNotInComplex(self.vertices.format_face(g)));
        }
        Ok(self.with_facets(
            self.facets
                .iter()
                .filter(|f| g.is_subset(**f))
                .map(|f| f.difference(g)),
        ))
    }

    /// Faces of `Δ` contained in `σ`, kept on the same labeling.
    pub fn restriction(&self, sigma: Face) -> Result<SimplicialComplex> {
        self.vertices.check_face(sigma)?;
        Ok(self.with_facets(self.facets.iter().map(|f| f.intersection(sigma))))
    }

    pub fn intersect(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.same_labeling(other)?;
        Ok(self.with_facets(
            self.facets
                .iter()
                .flat_map(|f| other.facets.iter().map(move |g| f.intersection(*g))),
        ))
    }

    pub fn union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.same_labeling(other)?;
        Ok(self.with_facets(self.facets.iter().chain(&other.facets).copied()))
    }

    /// `⟨F⟩` on this complex's labeling.
    pub fn generated(&self, face: Face) -> Result<SimplicialComplex> {
        SimplicialComplex::simplex(Arc::clone(&self.vertices), face)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> Result<bool> {
        self.same_labeling(other)?;
        Ok(self.facets.iter().all(|f| other.contains(*f)))
    }

    /// Moves the complex onto `labeling`, sending vertex `v` to
    /// `relabel[v]`. Faces touching a vertex mapped to `None` are dropped.
    pub fn relabel(
        &self,
        labeling: Arc<VertexLabeling>,
        relabel: &[Option<usize>],
    ) -> Result<SimplicialComplex> {
        let mut faces = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let mut kept = Face::EMPTY;
            for v in f.iter() {
                if let Some(w) = relabel.get(v).copied().flatten() {
                    kept = kept.with(w);
                }
            }
            faces.push(kept);
        }
        if self.is_void() {
            return Ok(SimplicialComplex::void(labeling));
        }
        SimplicialComplex::new(labeling, faces)
    }

    pub fn format_face(&self, face: Face) -> String {
        self.vertices.format_face(face)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "void");
        }
        write!(f, "⟨")?;
        for (k, facet) in self.facets.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.vertices.format_face(*facet))?;
        }
        write!(f, "⟩")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
