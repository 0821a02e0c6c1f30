//! Stanley–Reisner ideals, Hochster's formula and Reisner's criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, Field};
use crate::monomial::{Monomial, MonomialIdeal};

/// Hochster sums over every vertex subset, so inputs stay small.
pub const MAX_HOCHSTER_VERTICES: usize = 20;

/// `I_Δ`, generated by the minimal non-faces. The void complex gives the
/// unit ideal and `{∅}` gives the ideal of all variables.
pub fn sr_ideal(complex: &SimplicialComplex) -> MonomialIdeal {
    let vertices = Arc::clone(complex.vertices());
    let n = vertices.len();
    if complex.is_void() {
        return MonomialIdeal::unit(vertices);
    }
    let mut minimal = BTreeSet::new();
    for f in complex.faces() {
        for v in 0..n {
            if f.contains(v) {
                continue;
            }
            let g = f.with(v);
            if !complex.contains(g) && g.iter().all(|u| complex.contains(g.without(u))) {
                minimal.insert(g);
            }
        }
    }
    MonomialIdeal::new(
        vertices,
        minimal.into_iter().map(|g| Monomial::square_free(n, g)),
    )
    .expect("supports lie in the complex labeling")
}

/// The complex whose Stanley–Reisner ideal is `ideal`.
pub fn complex_from_sr(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    if !ideal.is_square_free() {
        return Err(Error::NotSquareFree);
    }
    let vertices = Arc::clone(ideal.ambient());
    if ideal.is_unit() {
        return Ok(SimplicialComplex::void(vertices));
    }
    // Maximal sets avoiding every generator support: split each candidate on
    // the vertices of a support it contains.
    let mut candidates = vec![vertices.full_face()];
    for g in ideal.generators() {
        let s = g.support();
        let mut next = BTreeSet::new();
        for c in candidates {
            if s.is_subset(c) {
                next.extend(s.iter().map(|v| c.without(v)));
            } else {
                next.insert(c);
            }
        }
        candidates = crate::complex::maximal_faces(next);
    }
    SimplicialComplex::new(vertices, candidates)
}

/// Graded Betti numbers `β_{i,σ}(S/I_Δ)` over square-free multidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Face), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, sigma: Face) -> usize {
        self.entries.get(&(i, sigma)).copied().unwrap_or(0)
    }

    /// Nonzero entries keyed by homological index and multidegree.
    pub fn entries(&self) -> &BTreeMap<(usize, Face), usize> {
        &self.entries
    }

    /// Total Betti numbers `b_0, ..., b_pd`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.projective_dimension() + 1];
        for (&(i, _), &b) in &self.entries {
            out[i] += b;
        }
        out
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Betti numbers graded by total degree `|σ|`: `(i, j) ↦ Σ_{|σ| = j}`.
    pub fn by_degree(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for (&(i, s), &b) in &self.entries {
            *out.entry((i, s.len())).or_insert(0) += b;
        }
        out
    }
}

/// Hochster's formula: `β_{i,σ} = dim H̃_{|σ|-i-1}(Δ|_σ)` for `i ≥ 1`, and
/// `β_{0,∅} = 1`.
pub fn betti_hochster(complex: &SimplicialComplex, field: Field) -> Result<BettiTable> {
    complex.require_dim()?;
    let n = complex.num_vertices();
    if n > MAX_HOCHSTER_VERTICES {
        return Err(Error::TooManyVertices {
            got: n,
            max: MAX_HOCHSTER_VERTICES,
        });
    }
    let mut entries = BTreeMap::new();
    entries.insert((0, Face::EMPTY), 1);
    for sigma in complex.vertices().full_face().subsets() {
        if sigma.is_empty() {
            continue;
        }
        let h = reduced_homology(&complex.restriction(sigma)?, field)?;
        for (k, &d) in h.dims().iter().enumerate() {
            // degree k - 1, so i = |σ| - k
            if d > 0 && sigma.len() > k {
                entries.insert((sigma.len() - k, sigma), d);
            }
        }
    }
    Ok(BettiTable { entries })
}

/// `codim(S/I_Δ) = n - (dim Δ + 1)`.
pub fn codim(complex: &SimplicialComplex) -> Result<usize> {
    let dim = complex.require_dim()?;
    Ok(complex.num_vertices() - (dim + 1) as usize)
}

/// A face whose link has homology below its top dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReisnerWitness {
    pub face: Face,
    pub degree: isize,
}

/// Reisner's criterion. Faces are scanned from the top dimension down,
/// lexicographically within a dimension, so `∅` is checked last; the first
/// failure is returned.
pub fn reisner_witness(complex: &SimplicialComplex, field: Field) -> Result<Option<ReisnerWitness>> {
    complex.require_dim()?;
    for layer in complex.faces_by_dim().iter().rev() {
        for &g in layer {
            let link = complex.link(g)?;
            let top = link.require_dim()?;
            let h = reduced_homology(&link, field)?;
            if let Some(degree) = h.first_nonzero().filter(|&d| d < top) {
                return Ok(Some(ReisnerWitness { face: g, degree }));
            }
        }
    }
    Ok(None)
}

pub fn is_cohen_macaulay(complex: &SimplicialComplex, field: Field) -> Result<bool> {
    Ok(reisner_witness(complex, field)?.is_none())
}
