//! Vertex-level simplicial maps and their fibers.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// A map on vertex indices sending every face of `source` to a face of
/// `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != source.num_vertices() {
            return Err(Error::InvalidMap(format!(
                "vertex map has {} entries for {} source vertices",
                vertex_map.len(),
                source.num_vertices()
            )));
        }
        if let Some(&w) = vertex_map.iter().find(|&&w| w >= target.num_vertices()) {
            return Err(Error::VertexOutOfRange {
                index: w,
                len: target.num_vertices(),
            });
        }
        let map = SimplicialMap {
            source,
            target,
            vertex_map,
        };
        for &f in map.source.facets() {
            let img = map.image(f);
            if !map.target.contains(img) {
                return Err(Error::InvalidMap(format!(
                    "image {} of facet {} is not a face of the target",
                    map.target.format_face(img),
                    map.source.format_face(f)
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(complex: SimplicialComplex) -> Self {
        let n = complex.num_vertices();
        SimplicialMap {
            source: complex.clone(),
            target: complex,
            vertex_map: (0..n).collect(),
        }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// `ψ(F)` for any vertex set of the source labeling.
    pub fn image(&self, face: Face) -> Face {
        face.iter().map(|v| self.vertex_map[v]).collect()
    }

    /// `ψ(F)` for a face of the source complex.
    pub fn image_of_face(&self, face: Face) -> Result<Face> {
        if !self.source.contains(face) {
            return Err(Error::FaceNotInComplex(self.source.format_face(face)));
        }
        Ok(self.image(face))
    }

    /// The image complex `ψ(Γ)` of a subcomplex on the source labeling.
    pub fn image_complex(&self, sub: &SimplicialComplex) -> Result<SimplicialComplex> {
        if sub.is_void() {
            return Ok(SimplicialComplex::void(Arc::clone(self.target.vertices())));
        }
        SimplicialComplex::new(
            Arc::clone(self.target.vertices()),
            sub.facets().iter().map(|f| self.image(*f)),
        )
    }

    /// Exact fiber `{G ∈ source | ψ(G) = F}`, in canonical order.
    pub fn fiber(&self, face: Face) -> Result<Vec<Face>> {
        if !self.target.contains(face) {
            return Err(Error::FaceNotInComplex(self.target.format_face(face)));
        }
        let candidates: Face = (0..self.vertex_map.len())
            .filter(|&v| face.contains(self.vertex_map[v]))
            .collect();
        let mut out = BTreeSet::new();
        for &s in self.source.facets() {
            for g in s.intersection(candidates).subsets() {
                if g.len() >= face.len() && self.image(g) == face {
                    out.insert(g);
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Fiber size of every face in the image of the map.
    pub fn fiber_sizes(&self) -> HashMap<Face, usize> {
        let mut counts = HashMap::new();
        for g in self.source.faces() {
            *counts.entry(self.image(g)).or_insert(0) += 1;
        }
        counts
    }

    /// Faces of the target with more than one preimage, in canonical order.
    pub fn multi_fiber_faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self
            .fiber_sizes()
            .into_iter()
            .filter(|&(_, n)| n > 1)
            .map(|(f, _)| f)
            .collect();
        out.sort_unstable();
        out
    }

    /// The smallest source edge collapsed by the map, if any. The map
    /// preserves dimension on every face iff it is injective on facets.
    pub fn collapsed_edge(&self) -> Option<Face> {
        let mut worst: Option<Face> = None;
        for &f in self.source.facets() {
            let verts = f.to_vec();
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    if self.vertex_map[u] == self.vertex_map[v] {
                        let e = Face::from_indices([u, v]);
                        if worst.is_none_or(|w| e < w) {
                            worst = Some(e);
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn is_dimension_preserving(&self) -> bool {
        self.collapsed_edge().is_none()
    }

    /// The first target facet that is not the image of a source face.
    pub fn uncovered_facet(&self) -> Option<Face> {
        let images: BTreeSet<Face> = self
            .source
            .facets()
            .iter()
            .map(|f| self.image(*f))
            .collect();
        self.target
            .facets()
            .iter()
            .copied()
            .find(|f| !images.contains(f))
    }

    pub fn is_surjective(&self) -> bool {
        self.uncovered_facet().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_cover() -> SimplicialMap {
        let target = SimplicialComplex::from_labels(
            &["x0", "x1", "y0", "y1", "y2"],
            &[
                &["x0", "y0", "y2"],
                &["x0", "x1", "y0"],
                &["x1", "y0", "y1"],
                &["x1", "y1", "y2"],
            ],
        )
        .unwrap();
        let source = SimplicialComplex::from_labels(
            &["x0", "x1", "y0", "y1", "y2_1", "y2_2"],
            &[
                &["x0", "y0", "y2_1"],
                &["x0", "x1", "y0"],
                &["x1", "y0", "y1"],
                &["x1", "y1", "y2_2"],
            ],
        )
        .unwrap();
        SimplicialMap::new(source, target, vec![0, 1, 2, 3, 4, 4]).unwrap()
    }

    #[test]
    fn fibers_of_running_cover() {
        let psi = running_cover();
        let t = psi.target().vertices().clone();
        let s = psi.source().vertices().clone();
        let y2 = t.face_from_labels(&["y2"]).unwrap();
        assert_eq!(
            psi.fiber(y2).unwrap(),
            vec![
                s.face_from_labels(&["y2_1"]).unwrap(),
                s.face_from_labels(&["y2_2"]).unwrap()
            ]
        );
        let x0y0 = t.face_from_labels(&["x0", "y0"]).unwrap();
        assert_eq!(psi.fiber(x0y0).unwrap().len(), 1);
        assert_eq!(psi.multi_fiber_faces(), vec![y2]);
        assert!(psi.is_dimension_preserving());
        assert!(psi.is_surjective());
        assert_eq!(psi.fiber(Face::EMPTY).unwrap(), vec![Face::EMPTY]);
    }

    #[test]
    fn identity_fibers_are_singletons() {
        let psi = SimplicialMap::identity(running_cover().target().clone());
        for f in psi.target().faces() {
            assert_eq!(psi.fiber(f).unwrap(), vec![f]);
        }
    }

    #[test]
    fn non_simplicial_map_is_rejected() {
        let psi = running_cover();
        let err = SimplicialMap::new(
            psi.source().clone(),
            psi.target().clone(),
            vec![0, 1, 2, 3, 4, 0],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidMap(_)));
    }

    #[test]
    fn fiber_of_missing_face_errors() {
        let psi = running_cover();
        let bad = psi.target().vertices().face_from_labels(&["x0", "y1"]).unwrap();
        assert!(psi.fiber(bad).is_err());
    }

    #[test]
    fn collapsed_edge_detected() {
        let target = SimplicialComplex::from_labels(&["a", "b"], &[&["a", "b"]]).unwrap();
        let source = SimplicialComplex::from_labels(&["p", "q", "r"], &[&["p", "q", "r"]]).unwrap();
        let psi = SimplicialMap::new(source, target, vec![0, 1, 0]).unwrap();
        assert_eq!(psi.collapsed_edge(), Some(Face::from_indices([0, 2])));
    }
}
