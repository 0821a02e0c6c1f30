use std::sync::Arc;

use crate::complex::{Face, SimplicialComplex, VertexLabeling};
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::toric::{Ambient, ToricContext};

use super::{verify_virtual_shelling, CoverCertificate, Verdict, VirtualShellingCertificate};

/// The image of the link of one preimage `v` of the chosen vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkComponent {
    /// Label of `v` in the cover.
    pub preimage: String,
    /// `ψ(link_{Δ'}(v))` on the context with the chosen vertex removed,
    /// certified by the restriction of `ψ` with the induced order.
    pub certificate: VirtualShellingCertificate,
    pub verdict: Verdict,
}

impl LinkComponent {
    pub fn complex(&self) -> &SimplicialComplex {
        self.certificate.cover().delta()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDecomposition {
    /// Context with the chosen vertex removed.
    pub context: ToricContext,
    /// `link_Δ(x)` on that context.
    pub link: SimplicialComplex,
    pub components: Vec<LinkComponent>,
    pub union_matches: bool,
    /// `(i, j, Δ_i ∩ Δ_j)` for every pair of components.
    pub intersections: Vec<(usize, usize, SimplicialComplex)>,
    pub intersections_irrelevant: bool,
}

impl LinkDecomposition {
    pub fn all_components_pass(&self) -> bool {
        self.components.iter().all(|c| c.verdict.is_pass())
    }

    pub fn holds(&self) -> bool {
        self.union_matches && self.intersections_irrelevant && self.all_components_pass()
    }
}

/// Splits `link_Δ(x)` into the images `ψ(link_{Δ'}(v))` over the preimages
/// `v` of `x`, on the context with `x` removed, and checks that they cover
/// the link, meet only in irrelevant faces, and are virtually shellable with
/// the orders induced from the certificate.
pub fn link_decomposition(cert: &VirtualShellingCertificate, x: usize) -> Result<LinkDecomposition> {
    let cover = cert.cover();
    let delta = cover.delta();
    let Ambient::Product(ctx) = cover.ambient() else {
        return Err(Error::NotAProduct);
    };
    delta.vertices().check_face(Face::singleton(x))?;
    if !delta.contains(Face::singleton(x)) {
        return Err(Error::FaceNotInComplex(delta.format_face(Face::singleton(x))));
    }
    if let Verdict::Fail(f) = verify_virtual_shelling(cert)? {
        return Err(Error::Precondition(format!(
            "certificate is not a virtual shelling ({})",
            f.condition
        )));
    }
    let (y, reindex) = ctx.drop_vertex(x)?;
    let y_vertices = Arc::clone(y.vertices());
    let link = delta.link(Face::singleton(x))?.relabel(Arc::clone(&y_vertices), &reindex)?;

    let map = cover.map();
    let prime = cover.delta_prime();
    // Cover facets in shelling order: the unique preimage of each F_i.
    let lifted: Vec<Face> = cert
        .ordered_facets()
        .into_iter()
        .map(|f| map.fiber(f).map(|g| g[0]))
        .collect::<Result<_>>()?;

    // Cover vertices not over x, and their positions in the component covers.
    let mut keep = vec![None; prime.num_vertices()];
    let mut kept_labels = Vec::new();
    let mut kept_map = Vec::new();
    for v in 0..prime.num_vertices() {
        if map.apply(v) != x {
            keep[v] = Some(kept_labels.len());
            kept_labels.push(prime.vertices().label(v).to_string());
            kept_map.push(reindex[map.apply(v)].expect("only x is dropped"));
        }
    }
    let kept_vertices = Arc::new(VertexLabeling::new(kept_labels)?);

    let preimages: Vec<usize> = map
        .fiber(Face::singleton(x))?
        .into_iter()
        .map(|f| f.iter().next().expect("vertex fiber"))
        .collect();
    let mut components = Vec::with_capacity(preimages.len());
    for v in preimages {
        let through: Vec<Face> = lifted.iter().copied().filter(|g| g.contains(v)).collect();
        let source = prime
            .link(Face::singleton(v))?
            .relabel(Arc::clone(&kept_vertices), &keep)?;
        let shrink = |g: Face| -> Face { g.without(v).iter().filter_map(|u| keep[u]).collect() };
        let image = |g: Face| -> Face { g.iter().map(|u| kept_map[u]).collect() };
        let target = SimplicialComplex::new(
            Arc::clone(&y_vertices),
            through.iter().map(|&g| image(shrink(g))),
        )?;
        let order: Vec<usize> = through
            .iter()
            .map(|&g| {
                let f = image(shrink(g));
                target.facets().binary_search(&f).expect("image is a facet")
            })
            .collect();
        let sub_map = SimplicialMap::new(source, target, kept_map.clone())?;
        let sub_cover = CoverCertificate::new(sub_map, Ambient::Product(y.clone()), cover.field())?;
        let certificate = VirtualShellingCertificate::new(sub_cover, order, None)?;
        let verdict = verify_virtual_shelling(&certificate)?;
        components.push(LinkComponent {
            preimage: prime.vertices().label(v).to_string(),
            certificate,
            verdict,
        });
    }

    let mut union = SimplicialComplex::void(Arc::clone(&y_vertices));
    for c in &components {
        union = union.union(c.complex())?;
    }
    let union_matches = union == link;
    let mut intersections = Vec::new();
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            intersections.push((i, j, components[i].complex().intersect(components[j].complex())?));
        }
    }
    let intersections_irrelevant = intersections
        .iter()
        .all(|(_, _, m)| m.facets().iter().all(|f| !y.is_relevant(*f)));
    Ok(LinkDecomposition {
        context: y,
        link,
        components,
        union_matches,
        intersections,
        intersections_irrelevant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{reduced_homology, Field};
    use crate::virtual_cm::fixtures::*;

    fn facets(c: &SimplicialComplex) -> Vec<String> {
        c.facets().iter().map(|f| c.format_face(*f)).collect()
    }

    #[test]
    fn example_3x_at_x0() {
        let cert = example_3x_certificate();
        let x0 = cert.cover().delta().vertices().index_of("x0").unwrap();
        let dec = link_decomposition(&cert, x0).unwrap();
        assert_eq!(dec.context.factor_dims(), vec![1, 6]);
        assert_eq!(dec.components.len(), 2);
        let mut first = facets(dec.components[0].complex());
        first.sort();
        assert_eq!(first, vec!["{x1,y0}", "{y0,y1}", "{y0,y2}", "{y1,y2}"]);
        let mut second = facets(dec.components[1].complex());
        second.sort();
        assert_eq!(second, vec!["{x2,y4}", "{y4,y5}", "{y4,y6}", "{y5,y6}"]);
        assert_eq!(dec.components[1].preimage, "x0'");
        assert!(dec.union_matches);
        assert!(dec.intersections_irrelevant);
        assert!(dec.intersections[0].2.facets().iter().all(|f| f.is_empty()));
        assert!(dec.all_components_pass());
        let h = reduced_homology(&dec.link, Field::Rationals).unwrap();
        assert_eq!((h.get(0), h.get(1)), (1, 2));
    }

    #[test]
    fn running_at_y2() {
        let cert = running_certificate();
        let y2 = cert.cover().delta().vertices().index_of("y2").unwrap();
        let dec = link_decomposition(&cert, y2).unwrap();
        assert_eq!(dec.components.len(), 2);
        assert_eq!(facets(dec.components[0].complex()), vec!["{x0,y0}"]);
        assert_eq!(facets(dec.components[1].complex()), vec!["{x1,y1}"]);
        assert!(dec.holds());
    }

    #[test]
    fn singleton_fiber_gives_the_link() {
        let cert = running_certificate();
        let x0 = cert.cover().delta().vertices().index_of("x0").unwrap();
        let dec = link_decomposition(&cert, x0).unwrap();
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.components[0].complex(), &dec.link);
        assert!(dec.holds());
    }

    #[test]
    fn explicit_ambient_is_rejected() {
        let cert = running_certificate();
        let cover = CoverCertificate::new(
            cert.cover().map().clone(),
            Ambient::Explicit(cert.cover().ambient().irrelevant_complex()),
            Field::Rationals,
        )
        .unwrap();
        let explicit = VirtualShellingCertificate::new(cover, cert.order().to_vec(), None).unwrap();
        assert_eq!(link_decomposition(&explicit, 0), Err(Error::NotAProduct));
    }
}
