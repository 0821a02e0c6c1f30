//! One function per subcommand; each fills in a `Report`.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use vcm_core::format::{CertificateDoc, IdealDoc, LoadedCertificate, LoadedComplex};
use vcm_core::homology::{reduced_homology, relative_homology_z};
use vcm_core::shelling::{find_shelling, shelling_failure};
use vcm_core::stanley_reisner::{betti_hochster, codim, reisner_witness, sr_ideal};
use vcm_core::virtual_cm::{
    annihilation_witness, check_proposition, construct_cover, corollary_order, link_decomposition,
    verify_cover, verify_virtual_shelling, Attachment, CorollaryOutcome, CoverCertificate,
    VirtualShellingCertificate,
};
use vcm_core::{Ambient, Face, IntegerGroup, SimplicialComplex};

use crate::input::{self, AmbientSources};
use crate::report::{FailureDoc, Report, Status};
use crate::{Command, CorollaryCmd, CoverCmd, FixturesCmd, Options, ShellingCmd, VshellingCmd};

pub fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::CheckCm { .. } => "check-cm",
        Command::Betti { .. } => "betti",
        Command::Codim { .. } => "codim",
        Command::SrIdeal { .. } => "sr-ideal",
        Command::Saturate { .. } => "saturate",
        Command::Homology { .. } => "homology",
        Command::RelHomologyZ { .. } => "rel-homology-z",
        Command::Shelling(ShellingCmd::Verify { .. }) => "shelling verify",
        Command::Shelling(ShellingCmd::Find { .. }) => "shelling find",
        Command::Vshelling(VshellingCmd::CheckProp { .. }) => "vshelling check-prop",
        Command::Vshelling(VshellingCmd::Construct { .. }) => "vshelling construct",
        Command::Vshelling(VshellingCmd::Verify { .. }) => "vshelling verify",
        Command::Cover(CoverCmd::Verify { .. }) => "cover verify",
        Command::LinkDecompose { .. } => "link-decompose",
        Command::Corollary(CorollaryCmd::Order { .. }) => "corollary order",
        Command::Fixtures(FixturesCmd::Run { .. }) => "fixtures run",
    }
}

pub fn run(cmd: &Command, opts: &Options) -> Report {
    let name = command_name(cmd);
    let mut report = Report::new(name);
    let outcome = match cmd {
        Command::CheckCm { input } => check_cm(&mut report, input, opts),
        Command::Betti { input } => betti(&mut report, input, opts),
        Command::Codim { input } => codim_cmd(&mut report, input),
        Command::SrIdeal { input } => sr_ideal_cmd(&mut report, input, opts),
        Command::Saturate { input, by, equals } => saturate(&mut report, input, by, equals.as_deref(), opts),
        Command::Homology { input } => homology(&mut report, input, opts),
        Command::RelHomologyZ { input } => rel_homology(&mut report, input, opts),
        Command::Shelling(ShellingCmd::Verify { input }) => shelling_verify(&mut report, input, opts),
        Command::Shelling(ShellingCmd::Find { input }) => shelling_find(&mut report, input),
        Command::Vshelling(VshellingCmd::CheckProp { input }) => check_prop(&mut report, input, opts),
        Command::Vshelling(VshellingCmd::Construct { input }) => construct(&mut report, input, opts),
        Command::Vshelling(VshellingCmd::Verify { input }) => vshelling_verify(&mut report, input, opts),
        Command::Cover(CoverCmd::Verify { input }) => cover_verify(&mut report, input, opts),
        Command::LinkDecompose { input } => link_decompose(&mut report, input, opts),
        Command::Corollary(CorollaryCmd::Order { input }) => corollary(&mut report, input, opts),
        Command::Fixtures(FixturesCmd::Run { dir }) => {
            crate::fixtures::run_suite(&mut report, dir, opts.field);
            Ok(())
        }
    };
    match outcome {
        Ok(()) => report,
        Err(e) => Report::error(name, &e),
    }
}

fn labeled(c: &SimplicialComplex, faces: &[Face]) -> Vec<String> {
    faces.iter().map(|f| c.format_face(*f)).collect()
}

fn group_json(g: &IntegerGroup) -> Value {
    json!({
        "rank": g.rank,
        "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

/// `--order` as positions in the file's facet list, translated to canonical
/// positions; the file order when the flag is absent.
fn order_or_listed(loaded: &LoadedComplex, opts: &Options) -> Result<Vec<usize>> {
    let listed: Vec<usize> = match &opts.order {
        Some(o) => o.clone(),
        None => (0..loaded.listed.len()).collect(),
    };
    Ok(loaded.canonical_order(&listed)?)
}

fn sequence(c: &SimplicialComplex, order: &[usize]) -> Vec<Face> {
    order.iter().map(|&i| c.facets()[i]).collect()
}

fn check_cm(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_complex_or_ideal(input)?;
    let c = &loaded.complex;
    let witness = reisner_witness(c, opts.field)?;
    report.set("field", opts.field.to_string());
    report.set("cohen_macaulay", witness.is_none());
    if let Some(w) = witness {
        let link = c.link(w.face)?;
        report.set("link", labeled(&link, link.facets()));
        report.fail(FailureDoc::new(
            "cohen-macaulay",
            c.format_face(w.face),
            format!("link of the face has reduced homology in degree {}", w.degree),
        ));
        report.set("degree", w.degree);
    }
    Ok(())
}

fn betti(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_complex_or_ideal(input)?;
    let table = betti_hochster(&loaded.complex, opts.field)?;
    let graded: Vec<Value> = table
        .by_degree()
        .into_iter()
        .map(|((i, j), b)| json!({"i": i, "degree": j, "rank": b}))
        .collect();
    report.set("field", opts.field.to_string());
    report.set("totals", table.totals());
    report.set("projective_dimension", table.projective_dimension());
    report.set("codim", codim(&loaded.complex)?);
    report.set("graded", graded);
    Ok(())
}

fn codim_cmd(report: &mut Report, input: &Path) -> Result<()> {
    let loaded = input::load_complex_or_ideal(input)?;
    report.set("codim", codim(&loaded.complex)?);
    Ok(())
}

fn sr_ideal_cmd(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_complex(input)?;
    let context = match &opts.toric {
        Some(p) => Some(input::load_toric(p, loaded.complex.vertices())?),
        None => loaded.context.clone(),
    };
    let ideal = sr_ideal(&loaded.complex);
    report.set("ideal", ideal.format());
    report.document = Some(serde_json::to_value(IdealDoc::from_ideal(&ideal, context.as_ref()))?);
    Ok(())
}

fn saturate(report: &mut Report, input: &Path, by: &str, equals: Option<&Path>, opts: &Options) -> Result<()> {
    let (ideal, context) = input::load_ideal(input, None)?;
    let vertices = Arc::clone(ideal.ambient());
    let divisor = if by == "B_X" {
        let ctx = match &opts.toric {
            Some(p) => input::load_toric(p, &vertices)?,
            None => context.clone().ok_or_else(|| anyhow!("--by B_X needs `blocks` or --toric"))?,
        };
        ctx.irrelevant_ideal()
    } else {
        input::load_ideal(Path::new(by), Some(&vertices))?.0
    };
    let saturated = ideal.saturate(&divisor)?;
    report.set("ideal", saturated.format());
    report.document = Some(serde_json::to_value(IdealDoc::from_ideal(&saturated, context.as_ref()))?);
    if let Some(p) = equals {
        let (other, _) = input::load_ideal(p, Some(&vertices))?;
        if other.ambient().labels() != vertices.labels() {
            bail!("{}: vertex labels differ", p.display());
        }
        report.set("expected", other.format());
        let equal = other.generators() == saturated.generators();
        report.set("equal", equal);
        if !equal {
            let witness = saturated
                .generators()
                .iter()
                .find(|g| !other.generators().contains(g))
                .or_else(|| other.generators().iter().find(|g| !saturated.generators().contains(g)))
                .map(|g| g.format(&vertices))
                .unwrap_or_default();
            report.fail(FailureDoc::new("equals", witness, "generator in exactly one of the two ideals"));
        }
    }
    Ok(())
}

fn homology(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_complex(input)?;
    let h = reduced_homology(&loaded.complex, opts.field)?;
    let dims: Vec<Value> = h
        .dims()
        .iter()
        .enumerate()
        .map(|(i, d)| json!({"degree": i as isize - 1, "rank": d}))
        .collect();
    report.set("field", opts.field.to_string());
    report.set("reduced", dims);
    Ok(())
}

fn rel_homology(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_complex(input)?;
    let c = &loaded.complex;
    let ambient = AmbientSources {
        explicit: opts.irrelevant.as_deref(),
        toric: opts.toric.as_deref(),
        embedded_context: loaded.context.as_ref(),
        ..Default::default()
    }
    .resolve(c.vertices())?;
    let sub = c.intersect(&ambient.irrelevant_complex())?;
    let h = relative_homology_z(c, &sub)?;
    let groups: Vec<Value> = h
        .groups()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut v = group_json(g);
            v["degree"] = json!(i as isize - 1);
            v
        })
        .collect();
    report.set("subcomplex", labeled(&sub, sub.facets()));
    report.set("groups", groups);
    Ok(())
}

fn shelling_verify(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_complex(input)?;
    let listed = opts.order.as_ref().context("shelling verify needs --order")?;
    let order = loaded.canonical_order(listed)?;
    let c = &loaded.complex;
    report.set("order", listed);
    if let Some(s) = shelling_failure(c, &order)? {
        let mut f = FailureDoc::new(
            "shellable",
            c.format_face(s.facet),
            "facet meets the earlier facets in a complex that is not pure of codimension one",
        );
        f.step = Some(s.step);
        f.attaching = f.witness.clone();
        report.fail(f);
    }
    Ok(())
}

fn shelling_find(report: &mut Report, input: &Path) -> Result<()> {
    let loaded = input::load_complex(input)?;
    match find_shelling(&loaded.complex)? {
        Some(order) => {
            let listed = loaded.listed_order(&order);
            report.set("facets", labeled(&loaded.complex, &sequence(&loaded.complex, &order)));
            report.set("order", listed);
        }
        None => report.fail(FailureDoc::new("shellable", "no shelling order", "no order of the facets is a shelling")),
    }
    Ok(())
}

/// Ambient for commands where `--irrelevant` names `𝒞`.
fn product_ambient(loaded: &LoadedComplex, opts: &Options) -> Result<Ambient> {
    AmbientSources {
        toric: opts.toric.as_deref(),
        embedded_context: loaded.context.as_ref(),
        ..Default::default()
    }
    .resolve(loaded.complex.vertices())
}

fn chosen_c(loaded: &LoadedComplex, opts: &Options) -> Result<Option<SimplicialComplex>> {
    opts.irrelevant
        .as_deref()
        .map(|p| input::load_subcomplex(p, loaded.complex.vertices()))
        .transpose()
}

fn check_prop(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_complex(input)?;
    let c = &loaded.complex;
    let ambient = product_ambient(&loaded, opts)?;
    let irrelevant = chosen_c(&loaded, opts)?;
    let order = order_or_listed(&loaded, opts)?;
    let prop = check_proposition(c, &order, &ambient, irrelevant.as_ref())?;
    let xi: Vec<Vec<String>> = prop.xi.iter().map(|x| labeled(c, x)).collect();
    report.set("order", loaded.listed_order(&order));
    report.set("xi", xi);
    report.verdict(&prop.verdict, c, Some(&sequence(c, &order)));
    Ok(())
}

fn certificate_document(cert: &VirtualShellingCertificate) -> Result<Value> {
    let cover = cert.cover();
    let mut doc = CertificateDoc::from_parts(cover.map(), cover.ambient().context(), Some(cert.order()), cert.irrelevant());
    if let Ambient::Explicit(b) = cover.ambient() {
        doc.irrelevant = Some(b.facets().iter().map(|f| f.to_vec()).collect());
    }
    Ok(serde_json::to_value(doc)?)
}

fn construct(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_complex(input)?;
    let c = &loaded.complex;
    let ambient = product_ambient(&loaded, opts)?;
    let irrelevant = chosen_c(&loaded, opts)?;
    let order = order_or_listed(&loaded, opts)?;
    let prop = check_proposition(c, &order, &ambient, irrelevant.as_ref())?;
    report.set("xi", prop.xi.iter().map(|x| labeled(c, x)).collect::<Vec<_>>());
    if !prop.verdict.is_pass() {
        report.verdict(&prop.verdict, c, Some(&sequence(c, &order)));
        return Ok(());
    }
    let built = construct_cover(c, &order, &ambient, irrelevant.as_ref(), opts.field)?;
    let steps: Vec<Value> = built
        .steps
        .iter()
        .map(|s| match s {
            Attachment::Base => json!({"kind": "base"}),
            Attachment::NewVertex { label } => json!({"kind": "new-vertex", "label": label}),
            Attachment::FillIn { vertices } => json!({"kind": "fill-in", "vertices": vertices}),
        })
        .collect();
    let cert = &built.certificate;
    let prime = cert.cover().delta_prime();
    report.set("steps", steps);
    report.set("cover_vertices", prime.vertices().labels());
    report.set("cover_facets", labeled(prime, prime.facets()));
    let shelling = verify_virtual_shelling(cert)?;
    let cover = verify_cover(cert.cover())?;
    report.set("vshelling_verify", shelling.is_pass());
    report.set("cover_verify", cover.is_pass());
    report.verdict(&shelling, c, Some(&cert.ordered_facets()));
    report.verdict(&cover, c, None);
    report.document = Some(certificate_document(cert)?);
    Ok(())
}

fn cover_ambient(cert: &LoadedCertificate, opts: &Options, explicit_flag: bool) -> Result<Ambient> {
    AmbientSources {
        explicit: if explicit_flag { opts.irrelevant.as_deref() } else { None },
        toric: opts.toric.as_deref(),
        embedded_explicit: cert.irrelevant.as_ref(),
        embedded_context: cert.delta.context.as_ref(),
    }
    .resolve(cert.delta.complex.vertices())
}

fn shelling_certificate(cert: &LoadedCertificate, opts: &Options) -> Result<VirtualShellingCertificate> {
    let ambient = cover_ambient(cert, opts, false)?;
    let cover = CoverCertificate::new(cert.map.clone(), ambient, opts.field)?;
    let order = match &opts.order {
        Some(o) => cert.delta.canonical_order(o)?,
        None => cert.order.clone().context("certificate has no `order`; give --order")?,
    };
    let c = match &opts.irrelevant {
        Some(p) => Some(input::load_subcomplex(p, cert.delta.complex.vertices())?),
        None => cert.c.clone(),
    };
    Ok(VirtualShellingCertificate::new(cover, order, c)?)
}

fn vshelling_verify(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_certificate(input)?;
    let cert = shelling_certificate(&loaded, opts)?;
    let verdict = verify_virtual_shelling(&cert)?;
    report.set("order", loaded.delta.listed_order(cert.order()));
    report.verdict(&verdict, cert.cover().delta(), Some(&cert.ordered_facets()));
    Ok(())
}

fn cover_verify(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_certificate(input)?;
    let ambient = cover_ambient(&loaded, opts, true)?;
    let cover = CoverCertificate::new(loaded.map.clone(), ambient, opts.field)?;
    let verdict = verify_cover(&cover)?;
    let annihilation = annihilation_witness(&cover);
    report.set("field", opts.field.to_string());
    report.set("cover", verdict.is_pass());
    report.set("annihilation", annihilation.is_pass());
    let multi = cover.map().multi_fiber_faces();
    report.set("multi_fiber_faces", labeled(cover.delta(), &multi));
    report.verdict(&verdict, cover.delta(), None);
    report.verdict(&annihilation, cover.delta(), None);
    Ok(())
}

fn link_decompose(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_certificate(input)?;
    let cert = shelling_certificate(&loaded, opts)?;
    let label = opts.vertex.as_deref().context("link-decompose needs --vertex")?;
    let delta = cert.cover().delta();
    let x = delta
        .vertices()
        .index_of(label)
        .ok_or_else(|| anyhow!("unknown vertex label {label}"))?;
    let dec = link_decomposition(&cert, x)?;
    let components: Vec<Value> = dec
        .components
        .iter()
        .map(|comp| {
            let c = comp.complex();
            json!({
                "preimage": comp.preimage,
                "facets": labeled(c, c.facets()),
                "order": labeled(c, &comp.certificate.ordered_facets()),
                "vshelling_verify": comp.verdict.is_pass(),
            })
        })
        .collect();
    let intersections: Vec<Value> = dec
        .intersections
        .iter()
        .map(|(i, j, m)| json!({"components": [i, j], "facets": labeled(m, m.facets())}))
        .collect();
    report.set("vertex", label);
    report.set("factor_dims", dec.context.factor_dims());
    report.set("link", labeled(&dec.link, dec.link.facets()));
    report.set("fiber_size", dec.components.len());
    report.set("components", components);
    report.set("union_matches", dec.union_matches);
    report.set("intersections", intersections);
    report.set("intersections_irrelevant", dec.intersections_irrelevant);
    if !dec.union_matches {
        report.fail(FailureDoc::new("union", label, "components do not cover the link"));
    } else if !dec.intersections_irrelevant {
        let (i, j, m) = dec
            .intersections
            .iter()
            .find(|(_, _, m)| m.facets().iter().any(|f| dec.context.is_relevant(*f)))
            .expect("a relevant intersection");
        let f = m.facets().iter().find(|f| dec.context.is_relevant(**f)).expect("relevant face");
        report.fail(FailureDoc::new(
            "irrelevant-intersections",
            m.format_face(*f),
            format!("components {i} and {j} meet in a relevant face"),
        ));
    } else if let Some(comp) = dec.components.iter().find(|c| !c.verdict.is_pass()) {
        let seq = comp.certificate.ordered_facets();
        report.verdict(&comp.verdict, comp.complex(), Some(&seq));
    }
    Ok(())
}

fn corollary(report: &mut Report, input: &Path, opts: &Options) -> Result<()> {
    let loaded = input::load_complex(input)?;
    let c = &loaded.complex;
    let ambient = AmbientSources {
        explicit: opts.irrelevant.as_deref(),
        toric: opts.toric.as_deref(),
        embedded_context: loaded.context.as_ref(),
        ..Default::default()
    }
    .resolve(c.vertices())?;
    let r = corollary_order(c, &ambient, opts.field)?;
    let listed = |idx: &[usize]| loaded.listed_order(idx);
    let mut edges: Vec<[usize; 2]> = r
        .graph
        .edges()
        .into_iter()
        .map(|(i, j)| {
            let p = listed(&[i, j]);
            [p[0].min(p[1]), p[0].max(p[1])]
        })
        .collect();
    edges.sort_unstable();
    report.set("dual_graph_edges", edges);
    report.set("connected", r.connected);
    report.set("tree", r.tree);
    report.set("cycle", r.cycle.as_ref().map(|cy| labeled(c, &sequence(c, cy))));
    report.set("homology_degree", c.dim().unwrap_or(-1));
    report.set("relative_homology", group_json(&r.homology));
    report.set("disagreement", r.disagreement);
    match &r.outcome {
        CorollaryOutcome::Pass { order, certificate, xi } => {
            report.set("order", listed(order));
            report.set("facets", labeled(c, &sequence(c, order)));
            report.set("xi", xi.iter().map(|x| labeled(c, x)).collect::<Vec<_>>());
            report.document = Some(certificate_document(certificate)?);
        }
        CorollaryOutcome::Refuted(h) => {
            report.status = Status::RefutedHypothesis;
            report.hypothesis = Some(h.name().to_string());
        }
        CorollaryOutcome::Unknown { order, failure } => {
            report.set("order", listed(order));
            report.failure = Some(FailureDoc::from_failure(failure, c, Some(&sequence(c, order))));
            report.status = Status::Unknown;
        }
    }
    Ok(())
}
