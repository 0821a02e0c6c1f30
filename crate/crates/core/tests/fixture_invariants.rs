//! Invariants checked on every shipped fixture.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use vcm_core::format::{CertificateDoc, ComplexDoc};
use vcm_core::homology::{reduced_homology, relative_homology_z};
use vcm_core::stanley_reisner::{betti_hochster, codim, complex_from_sr, is_cohen_macaulay, sr_ideal};
use vcm_core::virtual_cm::{check_proposition, construct_cover, verify_cover, verify_virtual_shelling};
use vcm_core::{Ambient, Field, SimplicialComplex, ToricContext};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Every complex in the corpus, with its context when it has one.
fn corpus() -> Vec<(String, SimplicialComplex, Option<ToricContext>)> {
    let mut out = Vec::new();
    let mut paths: Vec<PathBuf> = fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    for p in paths {
        let name = p.file_stem().unwrap().to_string_lossy().to_string();
        let v: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
        if v.get("psi").is_some() {
            let cert: CertificateDoc = serde_json::from_value(v).unwrap();
            let loaded = cert.load().unwrap();
            out.push((format!("{name}/delta"), loaded.delta.complex.clone(), loaded.delta.context.clone()));
            out.push((format!("{name}/delta_prime"), loaded.map.source().clone(), None));
        } else if v.get("vertices").is_some() && v.get("facets").is_some() {
            let doc: ComplexDoc = serde_json::from_value(v).unwrap();
            let l = doc.load(None).unwrap();
            out.push((name, l.complex, l.context));
        }
    }
    out
}

#[test]
fn corpus_is_nonempty() {
    assert!(corpus().len() >= 10);
}

#[test]
fn reisner_agrees_with_auslander_buchsbaum() {
    for (name, c, _) in corpus() {
        for field in [Field::Rationals, Field::Prime(2)] {
            let cm = is_cohen_macaulay(&c, field).unwrap();
            let pd = betti_hochster(&c, field).unwrap().projective_dimension();
            assert_eq!(cm, pd == codim(&c).unwrap(), "{name} over {field}");
        }
    }
}

#[test]
fn stanley_reisner_round_trip() {
    for (name, c, _) in corpus() {
        assert_eq!(complex_from_sr(&sr_ideal(&c)).unwrap(), c, "{name}");
    }
}

#[test]
fn field_choice_does_not_matter_without_torsion() {
    for (name, c, _) in corpus() {
        let z = relative_homology_z(&c, &SimplicialComplex::void(c.vertices().clone())).unwrap();
        let q = reduced_homology(&c, Field::Rationals).unwrap();
        for p in [2, 3, 5] {
            if z.groups().iter().all(|g| g.torsion.iter().all(|t| t % p != 0.into())) {
                assert_eq!(reduced_homology(&c, Field::Prime(p)).unwrap(), q, "{name} over gf:{p}");
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn soundness_chain_on_every_order() {
    let mut passes = 0;
    for (name, c, ctx) in corpus() {
        let Some(ctx) = ctx else { continue };
        if !c.is_pure() || c.facets().len() > 6 || c.facets().iter().any(|f| !ctx.is_relevant(*f)) {
            continue;
        }
        let amb = Ambient::Product(ctx);
        for order in permutations(c.facets().len()) {
            if !check_proposition(&c, &order, &amb, None).unwrap().verdict.is_pass() {
                continue;
            }
            passes += 1;
            let built = construct_cover(&c, &order, &amb, None, Field::Rationals).unwrap();
            assert!(verify_virtual_shelling(&built.certificate).unwrap().is_pass(), "{name} {order:?}");
            assert!(verify_cover(built.certificate.cover()).unwrap().is_pass(), "{name} {order:?}");
        }
    }
    assert!(passes > 0);
}
