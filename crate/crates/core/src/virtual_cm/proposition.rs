use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complex::{maximal_faces, Face, SimplicialComplex, VertexLabeling};
use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::shelling::check_permutation;
use crate::toric::Ambient;

use super::{Condition, CoverCertificate, Failure, Verdict, VirtualShellingCertificate};
use crate::homology::Field;

/// Resolves `𝒞`, defaulting to `𝓑`, and checks it against the ambient space.
fn resolve_irrelevant(
    complex: &SimplicialComplex,
    ambient: &Ambient,
    irrelevant: Option<&SimplicialComplex>,
) -> Result<SimplicialComplex> {
    ambient.check_labeling(complex.vertices())?;
    match irrelevant {
        Some(c) => {
            ambient.check_irrelevant(c)?;
            Ok(c.clone())
        }
        None => Ok(ambient.irrelevant_complex()),
    }
}

/// `Ξ_i = (⟨F_1, ..., F_i⟩ ∩ ⟨F_{i+1}⟩) ∖ 𝒞` for `i = 1, ..., n-1`, each in
/// canonical face order. Entry `i - 1` belongs to the facet at position `i`.
pub fn xi_sets(
    complex: &SimplicialComplex,
    order: &[usize],
    irrelevant: &SimplicialComplex,
) -> Result<Vec<Vec<Face>>> {
    check_permutation(order, complex.facets().len())?;
    let seq: Vec<Face> = order.iter().map(|&i| complex.facets()[i]).collect();
    if let Some(f) = seq.iter().find(|f| irrelevant.contains(**f)) {
        return Err(Error::FacetIrrelevant(complex.format_face(*f)));
    }
    Ok((1..seq.len())
        .map(|i| {
            let next = seq[i];
            let meets = maximal_faces(seq[..i].iter().map(|f| f.intersection(next)));
            let faces: BTreeSet<Face> = meets
                .iter()
                .flat_map(|m| m.subsets())
                .filter(|g| !irrelevant.contains(*g))
                .collect();
            faces.into_iter().collect()
        })
        .collect())
}

/// Ξ-sets of an order together with the verdict of the two conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionReport {
    pub xi: Vec<Vec<Face>>,
    pub verdict: Verdict,
}

fn check_step(complex: &SimplicialComplex, xi: &[Face], ridge: usize, step: usize) -> Option<Failure> {
    let maximal = maximal_faces(xi.iter().copied());
    if let Some(bad) = maximal.iter().find(|f| f.len() != ridge) {
        let fail = Failure::new(
            Condition::XiPure,
            "maximal face of the Ξ-set is not of codimension one",
        )
        .at(step);
        return Some(fail.with_face(complex, *bad));
    }
    if maximal.is_empty() {
        return Some(Failure::new(Condition::XiPure, "Ξ-set is empty").at(step));
    }
    for (i, f) in maximal.iter().enumerate() {
        for g in &maximal[i + 1..] {
            let m = f.intersection(*g);
            if xi.binary_search(&m).is_err() {
                let fail = Failure::new(
                    Condition::XiIntersection,
                    format!(
                        "{} and {} meet outside the Ξ-set",
                        complex.format_face(*f),
                        complex.format_face(*g)
                    ),
                )
                .at(step);
                return Some(fail.with_face(complex, m));
            }
        }
    }
    None
}

/// Checks the two Ξ-set conditions at every step of `order`: the Ξ-set
/// generates a complex pure of dimension `dim Δ - 1`, and two of its
/// codimension-one members meet inside it. `irrelevant` defaults to `𝓑`.
pub fn check_proposition(
    complex: &SimplicialComplex,
    order: &[usize],
    ambient: &Ambient,
    irrelevant: Option<&SimplicialComplex>,
) -> Result<PropositionReport> {
    let dim = complex.require_dim()?;
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    let c = resolve_irrelevant(complex, ambient, irrelevant)?;
    let xi = xi_sets(complex, order, &c)?;
    let ridge = dim as usize;
    let failure = xi
        .iter()
        .enumerate()
        .find_map(|(i, x)| check_step(complex, x, ridge, i + 1));
    Ok(PropositionReport {
        xi,
        verdict: failure.into(),
    })
}

/// How a facet was attached to the cover under construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Attachment {
    /// The first facet, mapped identically.
    Base,
    /// Glued along a single facet of the preimage of `Ξ` with a new vertex.
    NewVertex { label: String },
    /// Filled in on the vertices of the preimage of `Ξ`.
    FillIn { vertices: usize },
}

/// Output of the inductive construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub certificate: VirtualShellingCertificate,
    /// One entry per position in the order.
    pub steps: Vec<Attachment>,
}

/// Builds a cover `ψ: Δ' → Δ` step by step along `order`: the first facet
/// maps identically; each later facet `F` is attached along
/// `Γ = closure(ψ^{-1}(Ξ))`, with a new vertex over `F ∖ ψ(H)` when `Γ = ⟨H⟩`
/// and as the simplex on the vertices of `Γ` otherwise. New vertices are
/// labelled `<target>#k`, `k` counting the preimages of the target.
pub fn construct_cover(
    complex: &SimplicialComplex,
    order: &[usize],
    ambient: &Ambient,
    irrelevant: Option<&SimplicialComplex>,
    field: Field,
) -> Result<Construction> {
    let report = check_proposition(complex, order, ambient, irrelevant)?;
    if let Verdict::Fail(f) = &report.verdict {
        return Err(Error::Precondition(format!(
            "order fails condition {} at step {}",
            f.condition,
            f.step.unwrap_or(0)
        )));
    }
    let c = resolve_irrelevant(complex, ambient, irrelevant)?;
    let n = complex.num_vertices();
    let seq: Vec<Face> = order.iter().map(|&i| complex.facets()[i]).collect();

    let mut labels: Vec<String> = Vec::new();
    let mut psi: Vec<usize> = Vec::new();
    let mut copies = vec![0usize; n];
    for v in seq[0].iter() {
        labels.push(complex.vertices().label(v).to_string());
        psi.push(v);
        copies[v] += 1;
    }
    let image = |psi: &[usize], g: Face| -> Face { g.iter().map(|v| psi[v]).collect() };
    let mut facets = vec![Face::from_indices(0..labels.len())];
    let mut steps = vec![Attachment::Base];

    for (i, xi) in report.xi.iter().enumerate() {
        let next = seq[i + 1];
        let xi_max = maximal_faces(xi.iter().copied());
        // Preimages of the top faces of Ξ; lower ones lie below these.
        let mut gamma_gens = BTreeSet::new();
        for &g in &facets {
            for h in g.subsets() {
                if h.len() == complex.require_dim()? as usize && xi_max.contains(&image(&psi, h)) {
                    gamma_gens.insert(h);
                }
            }
        }
        let gamma = maximal_faces(gamma_gens);
        let attached = if gamma.len() == 1 {
            let h = gamma[0];
            let w = next
                .difference(image(&psi, h))
                .iter()
                .next()
                .expect("Ξ is of codimension one in the next facet");
            copies[w] += 1;
            let label = format!("{}#{}", complex.vertices().label(w), copies[w]);
            let v = labels.len();
            if v >= crate::complex::MAX_VERTICES {
                return Err(Error::TooManyVertices {
                    got: v + 1,
                    max: crate::complex::MAX_VERTICES,
                });
            }
            labels.push(label.clone());
            psi.push(w);
            facets.push(h.with(v));
            Attachment::NewVertex { label }
        } else {
            let span = gamma.iter().fold(Face::EMPTY, |a, f| a.union(*f));
            if span.len() != next.len() || image(&psi, span) != next {
                return Err(Error::Precondition(format!(
                    "preimage of the Ξ-set at step {} spans {} vertices",
                    i + 1,
                    span.len()
                )));
            }
            facets.push(span);
            Attachment::FillIn {
                vertices: span.len(),
            }
        };
        steps.push(attached);
    }

    let labeling = Arc::new(VertexLabeling::new(labels)?);
    let prime = SimplicialComplex::new(labeling, facets)?;
    let map = SimplicialMap::new(prime, complex.clone(), psi)?;
    let cover = CoverCertificate::new(map, ambient.clone(), field)?;
    let certificate = VirtualShellingCertificate::new(cover, order.to_vec(), Some(c))?;
    Ok(Construction { certificate, steps })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::toric::ToricContext;
    use crate::virtual_cm::fixtures::*;
    use crate::virtual_cm::{verify_cover, verify_virtual_shelling};

    fn labelled(c: &SimplicialComplex, xi: &[Face]) -> Vec<String> {
        xi.iter().map(|f| c.format_face(*f)).collect()
    }

    #[test]
    fn running_xi_sets() {
        let (ctx, d) = running();
        let order = order_of(&d, &RUNNING);
        let report = check_proposition(&d, &order, &Ambient::Product(ctx), None).unwrap();
        let xi: Vec<Vec<String>> = report.xi.iter().map(|x| labelled(&d, x)).collect();
        assert_eq!(xi, vec![vec!["{x0,y0}"], vec!["{x1,y0}"], vec!["{x1,y1}"]]);
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn single_facet_is_vacuous() {
        let ctx = p1p2();
        let d = complex_on(&ctx, &[&["x0", "y0", "y1"]]);
        let amb = Ambient::Product(ctx);
        let report = check_proposition(&d, &[0], &amb, None).unwrap();
        assert!(report.xi.is_empty());
        assert!(report.verdict.is_pass());
        let built = construct_cover(&d, &[0], &amb, None, Field::Rationals).unwrap();
        let cover = built.certificate.cover();
        assert_eq!(cover.delta_prime().to_string(), "⟨{x0,y0,y1}⟩");
        assert_eq!(cover.map().vertex_map(), &[0, 2, 3]);
        assert_eq!(cover.delta_prime().vertices().labels(), &["x0", "y0", "y1"]);
    }

    #[test]
    fn example_3x_fails_condition_two() {
        let ctx = p2p6();
        let d = complex_on(&ctx, &EXAMPLE_3X);
        let order = order_of(&d, &EXAMPLE_3X);
        let x0 = SimplicialComplex::simplex(Arc::clone(d.vertices()), Face::singleton(0)).unwrap();
        let report = check_proposition(&d, &order, &Ambient::Product(ctx), Some(&x0)).unwrap();
        let xi = labelled(&d, &report.xi[1]);
        assert!(xi.contains(&"{x0,y0}".to_string()));
        assert!(xi.contains(&"{x0,y2}".to_string()));
        let fail = report.verdict.failure().unwrap();
        assert_eq!(fail.condition, Condition::XiIntersection);
        assert_eq!(fail.condition.number(), Some(2));
        assert_eq!(fail.step, Some(2));
        assert_eq!(fail.witness.as_deref(), Some("{x0}"));
        assert_eq!(d.facets()[order[2]], d.vertices().face_from_labels(&["x0", "y0", "y2"]).unwrap());
    }

    #[test]
    fn facet_inside_irrelevant_is_rejected() {
        let ctx = p1p2();
        let d = complex_on(&ctx, &[&["x0", "x1"], &["x1", "y0"]]);
        let c = ctx.irrelevant_complex();
        assert!(matches!(xi_sets(&d, &[0, 1], &c), Err(Error::FacetIrrelevant(_))));
    }

    #[test]
    fn disjoint_attachment_fails_purity() {
        let ctx = p1p2();
        let d = complex_on(&ctx, &[&["x0", "y0"], &["x1", "y1"]]);
        let report = check_proposition(&d, &[0, 1], &Ambient::Product(ctx), None).unwrap();
        assert_eq!(report.verdict.failure().unwrap().condition, Condition::XiPure);
    }

    #[test]
    fn running_construction() {
        let (ctx, d) = running();
        let order = order_of(&d, &RUNNING);
        let amb = Ambient::Product(ctx);
        let built = construct_cover(&d, &order, &amb, None, Field::Rationals).unwrap();
        let cover = built.certificate.cover();
        let prime = cover.delta_prime();
        assert_eq!(prime.vertices().labels(), &["x0", "y0", "y2", "x1#1", "y1#1", "y2#2"]);
        let expect = SimplicialComplex::new(
            Arc::clone(prime.vertices()),
            [
                &["x0", "y0", "y2"][..],
                &["x0", "y0", "x1#1"],
                &["x1#1", "y0", "y1#1"],
                &["x1#1", "y1#1", "y2#2"],
            ]
            .iter()
            .map(|f| prime.vertices().face_from_labels(f).unwrap()),
        )
        .unwrap();
        assert_eq!(prime, &expect);
        assert_eq!(cover.map().vertex_map(), &[0, 2, 4, 1, 3, 4]);
        let y2 = d.vertices().face_from_labels(&["y2"]).unwrap();
        assert_eq!(cover.map().multi_fiber_faces(), vec![y2]);
        assert_eq!(
            built.steps[1..].iter().filter(|s| matches!(s, Attachment::NewVertex { .. })).count(),
            3
        );
        assert!(verify_virtual_shelling(&built.certificate).unwrap().is_pass());
        assert!(verify_cover(cover).unwrap().is_pass());
    }

    #[test]
    fn refuses_failing_order() {
        let ctx = p1p2();
        let d = complex_on(&ctx, &[&["x0", "y0"], &["x1", "y1"]]);
        let err = construct_cover(&d, &[0, 1], &Ambient::Product(ctx), None, Field::Rationals).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    /// A cone over a pentagon-like strip on one projective factor, where the
    /// irrelevant complex is `{∅}` and the last facet closes a cycle.
    #[test]
    fn fill_in_step() {
        let ctx = ToricContext::from_label_blocks(&[&["a", "b", "c", "d", "e"]]).unwrap();
        let d = complex_on(&ctx, &[&["a", "b", "c"], &["a", "c", "d"], &["a", "d", "e"], &["a", "b", "e"]]);
        let order = order_of(&d, &[&["a", "b", "c"], &["a", "c", "d"], &["a", "d", "e"], &["a", "b", "e"]]);
        let amb = Ambient::Product(ctx);
        let built = construct_cover(&d, &order, &amb, None, Field::Rationals).unwrap();
        assert_eq!(built.steps[3], Attachment::FillIn { vertices: 3 });
        let cover = built.certificate.cover();
        assert_eq!(cover.delta_prime().num_vertices(), 5);
        assert!(verify_cover(cover).unwrap().is_pass());
        assert!(verify_virtual_shelling(&built.certificate).unwrap().is_pass());
    }

    fn arb_case() -> impl Strategy<Value = (ToricContext, SimplicialComplex, Vec<usize>)> {
        (3usize..8)
            .prop_flat_map(|n| (Just(n), 1..n, 2usize..4))
            .prop_flat_map(|(n, split, k)| {
                let k = k.min(n);
                let facet = prop::sample::subsequence((0..n).collect::<Vec<_>>(), k);
                (Just(n), Just(split), prop::collection::vec(facet, 1..7), any::<prop::sample::Index>())
            })
            .prop_map(|(n, split, fs, shuffle)| {
                let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let (a, b) = names.split_at(split);
                let ctx = ToricContext::from_label_blocks(&[a, b]).unwrap();
                let d = SimplicialComplex::new(
                    Arc::clone(ctx.vertices()),
                    fs.into_iter().map(Face::from_indices),
                )
                .unwrap();
                let mut order: Vec<usize> = (0..d.facets().len()).collect();
                let len = order.len();
                order.rotate_left(shuffle.index(len));
                (ctx, d, order)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn proposition_soundness_chain((ctx, d, order) in arb_case()) {
            prop_assume!(d.facets().iter().all(|f| ctx.is_relevant(*f)));
            let amb = Ambient::Product(ctx);
            let report = check_proposition(&d, &order, &amb, None).unwrap();
            if report.verdict.is_pass() {
                let built = construct_cover(&d, &order, &amb, None, Field::Rationals).unwrap();
                let cover = built.certificate.cover();
                let dim = d.dim().unwrap();
                prop_assert!(cover.delta_prime().is_pure());
                prop_assert_eq!(cover.delta_prime().dim(), Some(dim));
                for step in &built.steps {
                    if let Attachment::FillIn { vertices } = step {
                        prop_assert_eq!(*vertices as isize, dim + 1);
                    }
                }
                prop_assert!(verify_virtual_shelling(&built.certificate).unwrap().is_pass());
                prop_assert!(verify_cover(cover).unwrap().is_pass());
            }
        }
    }
}
