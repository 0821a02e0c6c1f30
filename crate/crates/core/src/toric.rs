//! Products of projective spaces `P^{n_1} x ... x P^{n_r}` encoded as an
//! ordered block partition of the Cox variables.

use std::sync::Arc;

use crate::complex::{Face, SimplicialComplex, VertexLabeling};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Block partition of the vertex set; block `i` holds the variables of the
/// `i`-th projective factor, so vertex `v` has degree `e_{block_of(v)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricContext {
    vertices: Arc<VertexLabeling>,
    blocks: Vec<Face>,
    block_of: Vec<usize>,
}

impl ToricContext {
    pub fn new(vertices: Arc<VertexLabeling>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        let mut block_of = vec![usize::MAX; n];
        let mut faces = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidContext(format!("block {b} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, len: n });
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidContext(format!(
                        "vertex `{}` appears in more than one block",
                        vertices.label(v)
                    )));
                }
                block_of[v] = b;
            }
            faces.push(Face::from_indices(block.iter().copied()));
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidContext(format!(
                "vertex `{}` is in no block",
                vertices.label(v)
            )));
        }
        Ok(ToricContext {
            vertices,
            blocks: faces,
            block_of,
        })
    }

    /// Builds a context from label groups, one group per factor.
    pub fn from_label_blocks<S: AsRef<str>>(blocks: &[&[S]]) -> Result<Self> {
        let labels: Vec<&str> = blocks.iter().flat_map(|b| b.iter().map(|s| s.as_ref())).collect();
        let vertices = Arc::new(VertexLabeling::new(labels)?);
        let mut next = 0;
        let idx = blocks
            .iter()
            .map(|b| {
                let r = (next..next + b.len()).collect();
                next += b.len();
                r
            })
            .collect();
        ToricContext::new(vertices, idx)
    }

    pub fn vertices(&self) -> &Arc<VertexLabeling> {
        &self.vertices
    }

    pub fn blocks(&self) -> &[Face] {
        &self.blocks
    }

    pub fn num_factors(&self) -> usize {
        self.blocks.len()
    }

    /// Projective dimensions `n_i` of the factors.
    pub fn factor_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len() - 1).collect()
    }

    /// Index of the factor whose variable `v` is.
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// Multidegree `e_i` of vertex `v`.
    pub fn multidegree(&self, v: usize) -> Vec<u32> {
        let mut d = vec![0; self.blocks.len()];
        d[self.block_of[v]] = 1;
        d
    }

    /// A face is relevant iff it meets every block.
    pub fn is_relevant(&self, face: Face) -> bool {
        self.blocks.iter().all(|b| !b.intersection(face).is_empty())
    }

    /// `B_X`: faces missing at least one block. Facets are the block
    /// complements.
    pub fn irrelevant_complex(&self) -> SimplicialComplex {
        let all = self.vertices.full_face();
        SimplicialComplex::new(
            Arc::clone(&self.vertices),
            self.blocks.iter().map(|b| all.difference(*b)),
        )
        .expect("block complements lie in range")
    }

    /// `B_X = ⋂_i ⟨x_{i,0}, ..., x_{i,n_i}⟩`, generated by the transversal
    /// monomials that pick one variable from each block.
    pub fn irrelevant_ideal(&self) -> MonomialIdeal {
        let n = self.vertices.len();
        let mut supports = vec![Face::EMPTY];
        for b in &self.blocks {
            supports = supports
                .iter()
                .flat_map(|s| b.iter().map(move |v| s.with(v)))
                .collect();
        }
        MonomialIdeal::new(
            Arc::clone(&self.vertices),
            supports.into_iter().map(|s| Monomial::square_free(n, s)),
        )
        .expect("transversals share the context labeling")
    }

    /// The context of `P^{n_1} x ... x P^{n_j - 1} x ... x P^{n_r}` obtained by
    /// deleting vertex `v`. Returned with the map from old to new indices.
    pub fn drop_vertex(&self, v: usize) -> Result<(ToricContext, Vec<Option<usize>>)> {
        if v >= self.vertices.len() {
            return Err(Error::VertexOutOfRange {
                index: v,
                len: self.vertices.len(),
            });
        }
        let b = self.block_of[v];
        if self.blocks[b].len() == 1 {
            return Err(Error::BlockWouldEmpty(self.vertices.label(v).to_string()));
        }
        let mut reindex = vec![None; self.vertices.len()];
        let mut labels = Vec::with_capacity(self.vertices.len() - 1);
        for u in 0..self.vertices.len() {
            if u != v {
                reindex[u] = Some(labels.len());
                labels.push(self.vertices.label(u).to_string());
            }
        }
        let blocks = self
            .blocks
            .iter()
            .map(|blk| blk.iter().filter_map(|u| reindex[u]).collect())
            .collect();
        let ctx = ToricContext::new(Arc::new(VertexLabeling::new(labels)?), blocks)?;
        Ok((ctx, reindex))
    }
}

/// The irrelevant data a complex is judged against: either a product of
/// projective spaces, or an explicitly supplied irrelevant complex for
/// other smooth toric varieties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    Product(ToricContext),
    Explicit(SimplicialComplex),
}

impl Ambient {
    pub fn vertices(&self) -> &Arc<VertexLabeling> {
        match self {
            Ambient::Product(ctx) => ctx.vertices(),
            Ambient::Explicit(b) => b.vertices(),
        }
    }

    pub fn irrelevant_complex(&self) -> SimplicialComplex {
        match self {
            Ambient::Product(ctx) => ctx.irrelevant_complex(),
            Ambient::Explicit(b) => b.clone(),
        }
    }

    pub fn is_relevant(&self, face: Face) -> bool {
        match self {
            Ambient::Product(ctx) => ctx.is_relevant(face),
            Ambient::Explicit(b) => !b.contains(face),
        }
    }

    pub fn context(&self) -> Option<&ToricContext> {
        match self {
            Ambient::Product(ctx) => Some(ctx),
            Ambient::Explicit(_) => None,
        }
    }

    pub(crate) fn check_labeling(&self, vertices: &VertexLabeling) -> Result<()> {
        if **self.vertices() == *vertices {
            Ok(())
        } else {
            Err(Error::LabelingMismatch)
        }
    }

    /// Checks that `c` is an irrelevant complex for this ambient space, i.e.
    /// `c ⊆ B_X`.
    pub fn check_irrelevant(&self, c: &SimplicialComplex) -> Result<()> {
        self.check_labeling(c.vertices())?;
        match c.facets().iter().find(|f| self.is_relevant(**f)) {
            Some(f) => Err(Error::NotIrrelevant(c.format_face(*f))),
            None => Ok(()),
        }
    }
}
