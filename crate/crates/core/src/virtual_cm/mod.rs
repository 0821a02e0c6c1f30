//! Cover certificates, virtual shellings and the checks that produce them.

mod corollary;
mod cover;
mod link;
mod proposition;

use std::fmt;

use crate::complex::{Face, SimplicialComplex};
use crate::error::Result;
use crate::homology::Field;
use crate::map::SimplicialMap;
use crate::shelling::check_permutation;
use crate::toric::Ambient;

pub use corollary::{corollary_order, dual_graph, CorollaryOutcome, CorollaryReport, DualGraph, Hypothesis};
pub use cover::{annihilation_witness, verify_cover, verify_virtual_shelling};
pub use link::{link_decomposition, LinkComponent, LinkDecomposition};
pub use proposition::{
    check_proposition, construct_cover, xi_sets, Attachment, Construction, PropositionReport,
};

/// The property a certificate or order failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// Some facet of the base is not the image of a face of the cover.
    Surjectivity,
    /// The cover fails Reisner's criterion.
    CohenMacaulay,
    /// The induced facet order is not a shelling of the cover.
    Shellable,
    /// The map collapses an edge.
    DimensionPreserving,
    /// A face with several preimages is relevant.
    IrrelevantFibers,
    /// A facet of the base does not have exactly one preimage.
    SingletonFacetFibers,
    /// A Ξ-set does not generate a pure complex of codimension one.
    XiPure,
    /// Two codimension-one members of a Ξ-set meet outside it.
    XiIntersection,
    /// A relevant face does not have exactly one preimage.
    Annihilation,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Surjectivity => "surjectivity",
            Condition::CohenMacaulay => "cohen-macaulay",
            Condition::Shellable => "shellable",
            Condition::DimensionPreserving => "dimension-preserving",
            Condition::IrrelevantFibers => "irrelevant-fibers",
            Condition::SingletonFacetFibers => "singleton-facet-fibers",
            Condition::XiPure => "xi-pure",
            Condition::XiIntersection => "xi-intersection",
            Condition::Annihilation => "annihilation",
        }
    }

    /// Number of the condition in the statement it comes from, where it has
    /// one. Cover and virtual-shelling conditions share the numbering
    /// `1` (Cohen–Macaulay or shellable), `2`, `3`, `4`; the two Ξ-set
    /// conditions are `1` and `2`.
    pub fn number(self) -> Option<u8> {
        match self {
            Condition::CohenMacaulay | Condition::Shellable | Condition::XiPure => Some(1),
            Condition::DimensionPreserving | Condition::XiIntersection => Some(2),
            Condition::IrrelevantFibers => Some(3),
            Condition::SingletonFacetFibers => Some(4),
            Condition::Surjectivity | Condition::Annihilation => None,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub condition: Condition,
    /// Position in the facet order where the failure occurred.
    pub step: Option<usize>,
    /// Offending face, on the labeling named by `witness`.
    pub face: Option<Face>,
    /// Offending face rendered with vertex labels.
    pub witness: Option<String>,
    pub detail: String,
}

impl Failure {
    fn new(condition: Condition, detail: impl Into<String>) -> Self {
        Failure {
            condition,
            step: None,
            face: None,
            witness: None,
            detail: detail.into(),
        }
    }

    fn at(mut self, step: usize) -> Self {
        self.step = Some(step);
        self
    }

    fn with_face(mut self, complex: &SimplicialComplex, face: Face) -> Self {
        self.face = Some(face);
        self.witness = Some(complex.format_face(face));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Failure),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(f) => Some(f),
        }
    }
}

impl From<Option<Failure>> for Verdict {
    fn from(f: Option<Failure>) -> Self {
        f.map_or(Verdict::Pass, Verdict::Fail)
    }
}

/// A cover `ψ: Δ' → Δ` together with the ambient space of `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    map: SimplicialMap,
    ambient: Ambient,
    field: Field,
}

impl CoverCertificate {
    /// `map` runs from the cover `Δ'` to `Δ`; the ambient space must share
    /// the labeling of `Δ`.
    pub fn new(map: SimplicialMap, ambient: Ambient, field: Field) -> Result<Self> {
        ambient.check_labeling(map.target().vertices())?;
        Ok(CoverCertificate { map, ambient, field })
    }

    pub fn delta(&self) -> &SimplicialComplex {
        self.map.target()
    }

    pub fn delta_prime(&self) -> &SimplicialComplex {
        self.map.source()
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }
}

/// A cover plus a facet order on `Δ` (indices into `Δ.facets()`) and an
/// optional irrelevant complex `𝒞 ⊆ 𝓑` that duplicated faces must lie in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualShellingCertificate {
    cover: CoverCertificate,
    order: Vec<usize>,
    irrelevant: Option<SimplicialComplex>,
}

impl VirtualShellingCertificate {
    pub fn new(
        cover: CoverCertificate,
        order: Vec<usize>,
        irrelevant: Option<SimplicialComplex>,
    ) -> Result<Self> {
        check_permutation(&order, cover.delta().facets().len())?;
        if let Some(c) = &irrelevant {
            cover.ambient().check_irrelevant(c)?;
        }
        Ok(VirtualShellingCertificate {
            cover,
            order,
            irrelevant,
        })
    }

    pub fn cover(&self) -> &CoverCertificate {
        &self.cover
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn irrelevant(&self) -> Option<&SimplicialComplex> {
        self.irrelevant.as_ref()
    }

    /// The complex duplicated faces are checked against: `𝒞` if given,
    /// else `𝓑`.
    pub fn effective_irrelevant(&self) -> SimplicialComplex {
        self.irrelevant
            .clone()
            .unwrap_or_else(|| self.cover.ambient().irrelevant_complex())
    }

    /// Facets of `Δ` in certificate order.
    pub fn ordered_facets(&self) -> Vec<Face> {
        let facets = self.cover.delta().facets();
        self.order.iter().map(|&i| facets[i]).collect()
    }
}
