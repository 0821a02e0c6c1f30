use std::collections::VecDeque;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{relative_homology_z, Field, IntegerGroup};
use crate::toric::Ambient;

use super::{check_proposition, construct_cover, verify_virtual_shelling, Failure, Verdict, VirtualShellingCertificate};

/// Facets of a pure complex, adjacent when they share a relevant ridge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    adjacency: Vec<Vec<usize>>,
}

impl DualGraph {
    pub fn num_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, ns) in self.adjacency.iter().enumerate() {
            out.extend(ns.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_nodes();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges().len() + 1 == self.num_nodes().max(1)
    }

    /// A shortest cycle, starting from its least node; among shortest
    /// cycles the one through the least node is chosen.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let n = self.num_nodes();
        let mut best: Option<Vec<usize>> = None;
        for root in 0..n {
            // Breadth-first search from `root` over nodes ≥ root.
            let mut parent = vec![usize::MAX; n];
            let mut depth = vec![usize::MAX; n];
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if w < root || w == parent[v] {
                        continue;
                    }
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                        continue;
                    }
                    let len = depth[v] + depth[w] + 1;
                    if best.as_ref().is_none_or(|b| len < b.len()) {
                        if let Some(c) = cycle_through(&parent, root, v, w) {
                            best = Some(c);
                        }
                    }
                }
            }
        }
        best
    }
}

/// Joins the tree paths `root → v` and `root → w`, if they only share `root`.
fn cycle_through(parent: &[usize], root: usize, v: usize, w: usize) -> Option<Vec<usize>> {
    let path = |mut u: usize| {
        let mut p = vec![u];
        while u != root {
            u = parent[u];
            p.push(u);
        }
        p.reverse();
        p
    };
    let pv = path(v);
    let pw = path(w);
    if pv.len() > 1 && pw.len() > 1 && pv[1] == pw[1] {
        return None;
    }
    let mut cycle = pv;
    cycle.extend(pw.into_iter().skip(1).rev());
    Some(cycle)
}

/// Dual graph on `complex.facets()`: `F` and `G` are adjacent when `F ∩ G`
/// is a relevant face of dimension `dim Δ - 1`.
pub fn dual_graph(complex: &SimplicialComplex, ambient: &Ambient) -> Result<DualGraph> {
    let dim = complex.require_dim()?;
    ambient.check_labeling(complex.vertices())?;
    let facets = complex.facets();
    let mut adjacency = vec![Vec::new(); facets.len()];
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let m = facets[i].intersection(facets[j]);
            if m.dim() == dim - 1 && ambient.is_relevant(m) {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    Ok(DualGraph { adjacency })
}

/// Hypotheses of the tree-order criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    Connected,
    Tree,
    Homology,
}

impl Hypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::Connected => "relevant-connected",
            Hypothesis::Tree => "tree",
            Hypothesis::Homology => "relative-homology",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorollaryOutcome {
    /// A traversal order passed the Ξ-set checks and yielded a verified
    /// certificate.
    Pass {
        order: Vec<usize>,
        certificate: Box<VirtualShellingCertificate>,
        xi: Vec<Vec<crate::complex::Face>>,
    },
    Refuted(Hypothesis),
    /// The hypotheses hold but the traversal order did not pass.
    Unknown { order: Vec<usize>, failure: Failure },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub graph: DualGraph,
    pub connected: bool,
    pub tree: bool,
    pub cycle: Option<Vec<usize>>,
    /// `H_{dim Δ}(Δ, Δ ∩ 𝓑; Z)`.
    pub homology: IntegerGroup,
    /// The tree test and the homology test gave different answers.
    pub disagreement: bool,
    pub outcome: CorollaryOutcome,
}

/// Depth-first preorder from the first leaf, visiting neighbours in
/// canonical order.
fn traversal_order(graph: &DualGraph) -> Vec<usize> {
    let n = graph.num_nodes();
    let start = (0..n).find(|&v| graph.neighbors(v).len() <= 1).unwrap_or(0);
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if std::mem::replace(&mut seen[v], true) {
            continue;
        }
        order.push(v);
        stack.extend(graph.neighbors(v).iter().rev().filter(|&&w| !seen[w]));
    }
    order
}

/// For a pure complex with relevant facets: checks that the dual graph is
/// connected and a tree and that `H_{dim Δ}(Δ, Δ ∩ 𝓑; Z)` vanishes, then
/// runs the Ξ-set checks with `𝒞 = 𝓑` on a traversal order of the tree and
/// builds the cover.
pub fn corollary_order(complex: &SimplicialComplex, ambient: &Ambient, field: Field) -> Result<CorollaryReport> {
    let dim = complex.require_dim()?;
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    ambient.check_labeling(complex.vertices())?;
    if let Some(f) = complex.facets().iter().find(|f| !ambient.is_relevant(**f)) {
        return Err(Error::FacetIrrelevant(complex.format_face(*f)));
    }
    let graph = dual_graph(complex, ambient)?;
    let connected = graph.is_connected();
    let tree = graph.is_tree();
    let cycle = graph.shortest_cycle();
    let irrelevant_part = complex.intersect(&ambient.irrelevant_complex())?;
    let homology = relative_homology_z(complex, &irrelevant_part)?.get(dim);
    let disagreement = tree != homology.is_zero();

    let outcome = if !connected {
        CorollaryOutcome::Refuted(Hypothesis::Connected)
    } else if !tree {
        CorollaryOutcome::Refuted(Hypothesis::Tree)
    } else if !homology.is_zero() {
        CorollaryOutcome::Refuted(Hypothesis::Homology)
    } else {
        let order = traversal_order(&graph);
        let report = check_proposition(complex, &order, ambient, None)?;
        match report.verdict {
            Verdict::Fail(failure) => CorollaryOutcome::Unknown { order, failure },
            Verdict::Pass => {
                let built = construct_cover(complex, &order, ambient, None, field)?;
                match verify_virtual_shelling(&built.certificate)? {
                    Verdict::Pass => CorollaryOutcome::Pass {
                        order,
                        certificate: Box::new(built.certificate),
                        xi: report.xi,
                    },
                    Verdict::Fail(failure) => CorollaryOutcome::Unknown { order, failure },
                }
            }
        }
    };
    Ok(CorollaryReport {
        graph,
        connected,
        tree,
        cycle,
        homology,
        disagreement,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::virtual_cm::fixtures::*;
    use crate::virtual_cm::verify_cover;

    #[test]
    fn running_is_a_path() {
        let (ctx, d) = running();
        let amb = Ambient::Product(ctx);
        let report = corollary_order(&d, &amb, Field::Rationals).unwrap();
        let f = order_of(&d, &RUNNING);
        let mut expect = vec![(f[0], f[1]), (f[1], f[2]), (f[2], f[3])];
        for e in &mut expect {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        expect.sort_unstable();
        assert_eq!(report.graph.edges(), expect);
        assert!(report.connected && report.tree && !report.disagreement);
        assert!(report.homology.is_zero());
        assert_eq!(report.cycle, None);
        match report.outcome {
            CorollaryOutcome::Pass { order, certificate, .. } => {
                assert_eq!(order, f);
                assert!(verify_cover(certificate.cover()).unwrap().is_pass());
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn running_relative_homology_one_degree_down_is_nonzero() {
        let (ctx, d) = running();
        let a = d.intersect(&ctx.irrelevant_complex()).unwrap();
        let h = relative_homology_z(&d, &a).unwrap();
        assert!(h.get(2).is_zero());
        assert_eq!(h.get(1).rank, 1);
    }

    #[test]
    fn example_3x_has_a_triangle() {
        let ctx = p2p6();
        let d = complex_on(&ctx, &EXAMPLE_3X);
        let amb = Ambient::Product(ctx);
        let report = corollary_order(&d, &amb, Field::Rationals).unwrap();
        assert!(report.connected);
        assert!(!report.tree);
        assert_eq!(report.outcome, CorollaryOutcome::Refuted(Hypothesis::Tree));
        assert!(!report.homology.is_zero());
        assert!(!report.disagreement);
        let first = order_of(&d, &EXAMPLE_3X[..3]);
        let edges = report.graph.edges();
        for (i, a) in first.iter().enumerate() {
            for b in &first[i + 1..] {
                assert!(edges.contains(&((*a).min(*b), (*a).max(*b))));
            }
        }
        assert_eq!(report.cycle.unwrap().len(), 3);
    }

    #[test]
    fn single_relevant_facet() {
        let ctx = p1p2();
        let d = complex_on(&ctx, &[&["x0", "y0", "y1"]]);
        let report = corollary_order(&d, &Ambient::Product(ctx), Field::Rationals).unwrap();
        assert!(report.tree);
        assert!(matches!(report.outcome, CorollaryOutcome::Pass { .. }));
    }

    #[test]
    fn irrelevant_facet_is_an_error() {
        let ctx = p1p2();
        let d = complex_on(&ctx, &[&["x0", "y0"], &["y1", "y2"]]);
        assert!(matches!(
            corollary_order(&d, &Ambient::Product(ctx), Field::Rationals),
            Err(Error::FacetIrrelevant(_))
        ));
    }

    #[test]
    fn disconnected_graph_is_refuted() {
        let ctx = p1p2();
        let d = complex_on(&ctx, &[&["x0", "y0"], &["x1", "y1"]]);
        let report = corollary_order(&d, &Ambient::Product(ctx), Field::Rationals).unwrap();
        assert_eq!(report.outcome, CorollaryOutcome::Refuted(Hypothesis::Connected));
    }
}
