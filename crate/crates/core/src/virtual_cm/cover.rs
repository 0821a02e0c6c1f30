use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::shelling::shelling_failure;
use crate::stanley_reisner::reisner_witness;

use super::{Condition, CoverCertificate, Failure, Verdict, VirtualShellingCertificate};

fn surjectivity(cert: &CoverCertificate) -> Option<Failure> {
    cert.map().uncovered_facet().map(|f| {
        Failure::new(Condition::Surjectivity, "facet of the base has no preimage")
            .with_face(cert.delta(), f)
    })
}

fn dimension_preserving(cert: &CoverCertificate) -> Option<Failure> {
    cert.map().collapsed_edge().map(|e| {
        Failure::new(Condition::DimensionPreserving, "edge of the cover is collapsed")
            .with_face(cert.delta_prime(), e)
    })
}

fn irrelevant_fibers(cert: &CoverCertificate, irrelevant: &SimplicialComplex) -> Option<Failure> {
    cert.map()
        .multi_fiber_faces()
        .into_iter()
        .find(|f| !irrelevant.contains(*f))
        .map(|f| {
            Failure::new(Condition::IrrelevantFibers, "face with several preimages is relevant")
                .with_face(cert.delta(), f)
        })
}

/// Checks the cover conditions: surjectivity on faces, `Δ'` Cohen–Macaulay
/// over the certificate field, dimension preservation, and every face with
/// more than one preimage irrelevant. The first failure is reported.
pub fn verify_cover(cert: &CoverCertificate) -> Result<Verdict> {
    if let Some(f) = surjectivity(cert) {
        return Ok(Verdict::Fail(f));
    }
    if let Some(w) = reisner_witness(cert.delta_prime(), cert.field())? {
        let f = Failure::new(
            Condition::CohenMacaulay,
            format!("link of the face has homology in degree {}", w.degree),
        )
        .with_face(cert.delta_prime(), w.face);
        return Ok(Verdict::Fail(f));
    }
    if let Some(f) = dimension_preserving(cert) {
        return Ok(Verdict::Fail(f));
    }
    let irrelevant = cert.ambient().irrelevant_complex();
    Ok(irrelevant_fibers(cert, &irrelevant).into())
}

/// Every relevant face of `Δ`, i.e. every face containing the support of an
/// irrelevant-ideal generator, has exactly one preimage. Implied by the
/// cover conditions; a failure means the certificate is inconsistent.
pub fn annihilation_witness(cert: &CoverCertificate) -> Verdict {
    let sizes = cert.map().fiber_sizes();
    cert.delta()
        .faces()
        .into_iter()
        .filter(|f| cert.ambient().is_relevant(*f))
        .find(|f| sizes.get(f).copied().unwrap_or(0) != 1)
        .map(|f| {
            let n = sizes.get(&f).copied().unwrap_or(0);
            Failure::new(
                Condition::Annihilation,
                format!("relevant face has {n} preimages"),
            )
            .with_face(cert.delta(), f)
        })
        .into()
}

/// Checks a virtual shelling: surjectivity, a single preimage facet `G_i`
/// for each `F_i`, the order `G_1, ..., G_n` a shelling of `Δ'`, dimension
/// preservation, and duplicated faces inside `𝒞` (or `𝓑` when no `𝒞` is
/// given).
pub fn verify_virtual_shelling(cert: &VirtualShellingCertificate) -> Result<Verdict> {
    let cover = cert.cover();
    if let Some(f) = surjectivity(cover) {
        return Ok(Verdict::Fail(f));
    }
    let delta = cover.delta();
    let prime = cover.delta_prime();
    let mut lifted = Vec::with_capacity(cert.order().len());
    for (step, f) in cert.ordered_facets().into_iter().enumerate() {
        let fiber = cover.map().fiber(f)?;
        if fiber.len() != 1 {
            let fail = Failure::new(
                Condition::SingletonFacetFibers,
                format!("facet has {} preimages", fiber.len()),
            )
            .at(step)
            .with_face(delta, f);
            return Ok(Verdict::Fail(fail));
        }
        lifted.push(fiber[0]);
    }
    let mut positions = Vec::with_capacity(lifted.len());
    for (step, g) in lifted.iter().enumerate() {
        match prime.facets().binary_search(g) {
            Ok(p) => positions.push(p),
            Err(_) => {
                let fail = Failure::new(Condition::Shellable, "preimage of a facet is not a facet of the cover")
                    .at(step)
                    .with_face(prime, *g);
                return Ok(Verdict::Fail(fail));
            }
        }
    }
    if positions.len() != prime.facets().len() {
        let extra = prime
            .facets()
            .iter()
            .copied()
            .find(|g| !lifted.contains(g))
            .expect("more cover facets than base facets");
        let fail = Failure::new(Condition::Shellable, "cover facet lies over no facet of the base")
            .with_face(prime, extra);
        return Ok(Verdict::Fail(fail));
    }
    if !prime.is_pure() {
        return Ok(Verdict::Fail(Failure::new(Condition::Shellable, "cover is not pure")));
    }
    if let Some(s) = shelling_failure(prime, &positions)? {
        let fail = Failure::new(
            Condition::Shellable,
            "facet meets the earlier facets in a complex that is not pure of codimension one",
        )
        .at(s.step)
        .with_face(prime, s.facet);
        return Ok(Verdict::Fail(fail));
    }
    if let Some(f) = dimension_preserving(cover) {
        return Ok(Verdict::Fail(f));
    }
    Ok(irrelevant_fibers(cover, &cert.effective_irrelevant()).into())
}
