//! The bundled fixture corpus: each row recomputes one documented value and
//! compares it with the expected one. Rows whose files are absent are
//! skipped.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use serde::Serialize;
use vcm_core::format::LoadedComplex;
use vcm_core::homology::{reduced_homology, relative_homology_z};
use vcm_core::shelling::is_shelling;
use vcm_core::stanley_reisner::{betti_hochster, codim, is_cohen_macaulay, sr_ideal};
use vcm_core::virtual_cm::{
    check_proposition, construct_cover, corollary_order, link_decomposition, verify_cover,
    verify_virtual_shelling, Attachment, CorollaryOutcome, CoverCertificate, Verdict,
    VirtualShellingCertificate,
};
use vcm_core::{Ambient, Face, Field, SimplicialComplex};

use crate::input;
use crate::report::{FailureDoc, Report};

pub const DEFAULT_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub name: &'static str,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

struct RowDef {
    name: &'static str,
    files: &'static [&'static str],
    expected: &'static str,
    compute: fn(&Ctx) -> Result<String>,
}

struct Ctx {
    dir: PathBuf,
    field: Field,
}

impl Ctx {
    fn path(&self, name: &str) -> PathBuf {
        input::resolve(&self.dir.join(name))
    }

    fn complex(&self, name: &str) -> Result<LoadedComplex> {
        input::load_complex(&self.path(name))
    }

    fn product(&self, loaded: &LoadedComplex) -> Result<Ambient> {
        loaded
            .context
            .clone()
            .map(Ambient::Product)
            .ok_or_else(|| anyhow!("fixture has no `blocks`"))
    }

    fn certificate(&self, name: &str) -> Result<VirtualShellingCertificate> {
        let loaded = input::load_certificate(&self.path(name))?;
        let ctx = loaded.delta.context.clone().context("certificate has no `blocks`")?;
        let cover = CoverCertificate::new(loaded.map, Ambient::Product(ctx), self.field)?;
        let order = loaded.order.context("certificate has no `order`")?;
        Ok(VirtualShellingCertificate::new(cover, order, loaded.c)?)
    }
}

fn verdict(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "pass".into(),
        Verdict::Fail(f) => format!(
            "fail {}{}",
            f.condition,
            f.witness.as_ref().map(|w| format!(" {w}")).unwrap_or_default()
        ),
    }
}

fn faces(c: &SimplicialComplex, fs: &[Face]) -> String {
    let mut v: Vec<String> = fs.iter().map(|f| c.format_face(*f)).collect();
    v.sort();
    v.join(" ")
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

const ROWS: &[RowDef] = &[
    RowDef {
        name: "example14 not cohen-macaulay",
        files: &["example14_delta"],
        expected: "false",
        compute: |cx| Ok(is_cohen_macaulay(&cx.complex("example14_delta")?.complex, cx.field)?.to_string()),
    },
    RowDef {
        name: "example14 betti totals, pd, codim",
        files: &["example14_delta"],
        expected: "1,4,4,1 pd=3 codim=2",
        compute: |cx| {
            let c = cx.complex("example14_delta")?.complex;
            let b = betti_hochster(&c, cx.field)?;
            Ok(format!("{} pd={} codim={}", join(&b.totals()), b.projective_dimension(), codim(&c)?))
        },
    },
    RowDef {
        name: "example14 cover verify",
        files: &["example14_cert"],
        expected: "pass",
        compute: |cx| Ok(verdict(&verify_cover(cx.certificate("example14_cert")?.cover())?)),
    },
    RowDef {
        name: "example14 vshelling verify",
        files: &["example14_cert"],
        expected: "pass",
        compute: |cx| Ok(verdict(&verify_virtual_shelling(&cx.certificate("example14_cert")?)?)),
    },
    RowDef {
        name: "example14 cover is cohen-macaulay and shelled",
        files: &["example14_delta_prime"],
        expected: "cm=true shelling=true",
        compute: |cx| {
            let l = cx.complex("example14_delta_prime")?;
            let order = l.canonical_order(&(0..l.listed.len()).collect::<Vec<_>>())?;
            Ok(format!(
                "cm={} shelling={}",
                is_cohen_macaulay(&l.complex, cx.field)?,
                is_shelling(&l.complex, &order)?
            ))
        },
    },
    RowDef {
        name: "remark saturation J and I_delta",
        files: &["remark_J", "example14_IDelta_sat"],
        expected: "J:B=I I:B=I",
        compute: |cx| {
            let (j, ctx) = input::load_ideal(&cx.path("remark_J"), None)?;
            let ctx = ctx.context("remark_J has no `blocks`")?;
            let (i, _) = input::load_ideal(&cx.path("example14_IDelta_sat"), Some(j.ambient()))?;
            let b = ctx.irrelevant_ideal();
            let mark = |eq: bool| if eq { "I" } else { "other" };
            Ok(format!(
                "J:B={} I:B={}",
                mark(j.saturate(&b)? == i),
                mark(i.saturate(&b)? == i)
            ))
        },
    },
    RowDef {
        name: "example14 sr ideal",
        files: &["example14_delta", "example14_IDelta_sat"],
        expected: "equal",
        compute: |cx| {
            let d = cx.complex("example14_delta")?.complex;
            let (i, _) = input::load_ideal(&cx.path("example14_IDelta_sat"), Some(d.vertices()))?;
            Ok(if sr_ideal(&d) == i { "equal" } else { "different" }.into())
        },
    },
    RowDef {
        name: "remark J pd and codim",
        files: &["remark_J"],
        expected: "pd=2 codim=2",
        compute: |cx| {
            let c = input::load_complex_or_ideal(&cx.path("remark_J"))?.complex;
            let b = betti_hochster(&c, cx.field)?;
            Ok(format!("pd={} codim={}", b.projective_dimension(), codim(&c)?))
        },
    },
    RowDef {
        name: "example3x link of x0 reduced H0",
        files: &["example3x_delta"],
        expected: "1",
        compute: |cx| {
            let c = cx.complex("example3x_delta")?.complex;
            let x0 = c.vertices().index_of("x0").context("no x0")?;
            let link = c.link(Face::singleton(x0))?;
            Ok(reduced_homology(&link, cx.field)?.get(0).to_string())
        },
    },
    RowDef {
        name: "example3x vshelling verify",
        files: &["example3x_cert"],
        expected: "pass",
        compute: |cx| Ok(verdict(&verify_virtual_shelling(&cx.certificate("example3x_cert")?)?)),
    },
    RowDef {
        name: "example3x proposition fails condition 2",
        files: &["example3x_delta", "example3x_c"],
        expected: "condition 2 attaching {x0,y0,y2}",
        compute: |cx| {
            let l = cx.complex("example3x_delta")?;
            let c = input::load_subcomplex(&cx.path("example3x_c"), l.complex.vertices())?;
            let order = l.canonical_order(&(0..l.listed.len()).collect::<Vec<_>>())?;
            let r = check_proposition(&l.complex, &order, &cx.product(&l)?, Some(&c))?;
            Ok(match r.verdict {
                Verdict::Pass => "pass".into(),
                Verdict::Fail(f) => format!(
                    "condition {} attaching {}",
                    f.condition.number().map_or("?".into(), |n| n.to_string()),
                    f.step
                        .map(|s| l.complex.format_face(l.complex.facets()[order[s]]))
                        .unwrap_or_default()
                ),
            })
        },
    },
    RowDef {
        name: "section5 link of {x0,x1}",
        files: &["section5_delta"],
        expected: "{y0,y1} {y2,y3}",
        compute: |cx| {
            let c = cx.complex("section5_delta")?.complex;
            let f = c.vertices().face_from_labels(&["x0", "x1"])?;
            let link = c.link(f)?;
            Ok(faces(&link, link.facets()))
        },
    },
    RowDef {
        name: "section5 cover verify",
        files: &["section5_cert"],
        expected: "pass",
        compute: |cx| Ok(verdict(&verify_cover(cx.certificate("section5_cert")?.cover())?)),
    },
    RowDef {
        name: "example14 proposition xi-sets",
        files: &["example14_delta"],
        expected: "pass {x0,y0} | {x1,y0} | {x1,y1}",
        compute: |cx| {
            let l = cx.complex("example14_delta")?;
            let order = l.canonical_order(&(0..l.listed.len()).collect::<Vec<_>>())?;
            let r = check_proposition(&l.complex, &order, &cx.product(&l)?, None)?;
            let xi: Vec<String> = r.xi.iter().map(|x| faces(&l.complex, x)).collect();
            Ok(format!("{} {}", verdict(&r.verdict), xi.join(" | ")))
        },
    },
    RowDef {
        name: "example14 constructed cover",
        files: &["example14_delta", "example14_constructed_cert"],
        expected: "matches fixture, cover pass, vshelling pass",
        compute: |cx| {
            let l = cx.complex("example14_delta")?;
            let order = l.canonical_order(&(0..l.listed.len()).collect::<Vec<_>>())?;
            let built = construct_cover(&l.complex, &order, &cx.product(&l)?, None, cx.field)?;
            let expected = input::load_certificate(&cx.path("example14_constructed_cert"))?;
            let same = &expected.map == built.certificate.cover().map();
            Ok(format!(
                "{} fixture, cover {}, vshelling {}",
                if same { "matches" } else { "differs from" },
                verdict(&verify_cover(built.certificate.cover())?),
                verdict(&verify_virtual_shelling(&built.certificate)?)
            ))
        },
    },
    RowDef {
        name: "example14 corollary order",
        files: &["example14_delta"],
        expected: "tree H2=0 order=0,1,2,3 pass",
        compute: |cx| {
            let l = cx.complex("example14_delta")?;
            let r = corollary_order(&l.complex, &cx.product(&l)?, cx.field)?;
            let h = if r.homology.is_zero() { "H2=0" } else { "H2!=0" };
            let shape = if r.tree { "tree" } else { "not-tree" };
            Ok(match &r.outcome {
                CorollaryOutcome::Pass { order, certificate, .. } => format!(
                    "{shape} {h} order={} {}",
                    join(&l.listed_order(order)),
                    verdict(&verify_virtual_shelling(certificate)?)
                ),
                other => format!("{shape} {h} {other:?}"),
            })
        },
    },
    RowDef {
        name: "example3x corollary refutes tree",
        files: &["example3x_delta"],
        expected: "refuted tree, first three facets form a triangle, shortest cycle 3",
        compute: |cx| {
            let l = cx.complex("example3x_delta")?;
            let r = corollary_order(&l.complex, &cx.product(&l)?, cx.field)?;
            let first = l.canonical_order(&[0, 1, 2])?;
            let edges = r.graph.edges();
            let adjacent = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
            let triangle = adjacent(first[0], first[1]) && adjacent(first[1], first[2]) && adjacent(first[0], first[2]);
            let cycle = r.cycle.as_ref().map_or(0, Vec::len);
            Ok(match r.outcome {
                CorollaryOutcome::Refuted(h) => format!(
                    "refuted {}, first three facets {}, shortest cycle {cycle}",
                    h.name(),
                    if triangle { "form a triangle" } else { "do not form a triangle" }
                ),
                other => format!("{other:?}"),
            })
        },
    },
    RowDef {
        name: "example14 link decomposition at y2",
        files: &["example14_cert"],
        expected: "2 components, holds",
        compute: |cx| link_row(cx, "example14_cert", "y2"),
    },
    RowDef {
        name: "example3x link decomposition at x0",
        files: &["example3x_cert"],
        expected: "2 components, holds",
        compute: |cx| link_row(cx, "example3x_cert", "x0"),
    },
    RowDef {
        name: "cone construction fills in",
        files: &["cone_delta"],
        expected: "base new-vertex new-vertex fill-in, cover pass",
        compute: |cx| {
            let l = cx.complex("cone_delta")?;
            let order = l.canonical_order(&(0..l.listed.len()).collect::<Vec<_>>())?;
            let built = construct_cover(&l.complex, &order, &cx.product(&l)?, None, cx.field)?;
            let steps: Vec<&str> = built
                .steps
                .iter()
                .map(|s| match s {
                    Attachment::Base => "base",
                    Attachment::NewVertex { .. } => "new-vertex",
                    Attachment::FillIn { .. } => "fill-in",
                })
                .collect();
            Ok(format!("{}, cover {}", steps.join(" "), verdict(&verify_cover(built.certificate.cover())?)))
        },
    },
    RowDef {
        name: "section5 relative homology in top degree",
        files: &["section5_delta"],
        expected: "rank=0 torsion=",
        compute: |cx| {
            let l = cx.complex("section5_delta")?;
            let ctx = l.context.clone().context("no blocks")?;
            let sub = l.complex.intersect(&ctx.irrelevant_complex())?;
            let g = relative_homology_z(&l.complex, &sub)?.get(l.complex.dim().unwrap_or(-1));
            Ok(format!("rank={} torsion={}", g.rank, join(&g.torsion)))
        },
    },
];

fn link_row(cx: &Ctx, file: &str, label: &str) -> Result<String> {
    let cert = cx.certificate(file)?;
    let x = cert.cover().delta().vertices().index_of(label).context("unknown vertex")?;
    let dec = link_decomposition(&cert, x)?;
    let fiber = cert.cover().map().fiber(Face::singleton(x))?.len();
    let n = dec.components.len();
    Ok(format!(
        "{n} components{}, {}",
        if n == fiber { "" } else { " (fiber size differs)" },
        if dec.holds() { "holds" } else { "fails" }
    ))
}

/// Runs every row whose files exist in `dir`.
pub fn run_rows(dir: &Path, field: Field) -> Vec<Row> {
    let cx = Ctx {
        dir: dir.to_path_buf(),
        field,
    };
    ROWS
        .iter()
        .filter(|s| s.files.iter().all(|f| cx.path(f).exists()))
        .map(|s| {
            let computed = (s.compute)(&cx).unwrap_or_else(|e| format!("error: {e:#}"));
            Row {
                name: s.name,
                expected: s.expected.to_string(),
                pass: computed == s.expected,
                computed,
            }
        })
        .collect()
}

pub fn run_suite(report: &mut Report, dir: &Option<PathBuf>, field: Field) {
    let dir = dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
    let rows = run_rows(&dir, field);
    let passed = rows.iter().filter(|r| r.pass).count();
    if let Some(bad) = rows.iter().find(|r| !r.pass) {
        report.fail(FailureDoc::new(
            "fixture",
            format!("{}: {}", bad.name, bad.computed),
            format!("expected {}", bad.expected),
        ));
    }
    report.set("directory", dir.display().to_string());
    report.set("passed", passed);
    report.set("total", rows.len());
    report.set("rows", rows);
}
