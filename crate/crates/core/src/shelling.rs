//! Shelling orders of pure complexes.

use std::collections::HashSet;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// The first facet of an order whose intersection with the earlier ones is
/// not pure of codimension one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShellingFailure {
    /// Position in the order, counting from 0.
    pub step: usize,
    pub facet: Face,
}

/// Checks that `order` lists every facet index exactly once.
pub fn check_permutation(order: &[usize], len: usize) -> Result<()> {
    if order.len() != len {
        return Err(Error::NotPermutation(format!(
            "order has {} entries for {} facets",
            order.len(),
            len
        )));
    }
    let mut seen = vec![false; len];
    for &i in order {
        if i >= len || std::mem::replace(&mut seen[i], true) {
            return Err(Error::NotPermutation(format!("entry {i} is out of range or repeated")));
        }
    }
    Ok(())
}

/// `⟨prefix⟩ ∩ ⟨next⟩` is pure of dimension `dim next - 1`.
fn attaches_cleanly<'a, I>(prefix: I, next: Face) -> bool
where
    I: IntoIterator<Item = &'a Face>,
{
    let ridge = next.len() - 1;
    let mut meets = Vec::new();
    for f in prefix {
        let m = f.intersection(next);
        if m.len() == next.len() {
            return false;
        }
        meets.push(m);
    }
    !meets.is_empty()
        && meets
            .iter()
            .all(|m| m.len() == ridge || meets.iter().any(|r| r.len() == ridge && m.is_subset(*r)))
}

fn require_pure(complex: &SimplicialComplex) -> Result<()> {
    complex.require_dim()?;
    if complex.is_pure() {
        Ok(())
    } else {
        Err(Error::NotPure)
    }
}

/// Checks `order` (indices into `complex.facets()`) against the shelling
/// condition and returns the first failing step.
pub fn shelling_failure(
    complex: &SimplicialComplex,
    order: &[usize],
) -> Result<Option<ShellingFailure>> {
    require_pure(complex)?;
    check_permutation(order, complex.facets().len())?;
    let seq: Vec<Face> = order.iter().map(|&i| complex.facets()[i]).collect();
    Ok(seq
        .iter()
        .enumerate()
        .skip(1)
        .find(|&(i, &f)| !attaches_cleanly(&seq[..i], f))
        .map(|(step, &facet)| ShellingFailure { step, facet }))
}

pub fn is_shelling(complex: &SimplicialComplex, order: &[usize]) -> Result<bool> {
    Ok(shelling_failure(complex, order)?.is_none())
}

/// Depth-first search in canonical facet order, so the returned shelling is
/// the lexicographically first one. Sets of used facets already known to be
/// dead ends are skipped.
pub fn find_shelling(complex: &SimplicialComplex) -> Result<Option<Vec<usize>>> {
    require_pure(complex)?;
    let facets = complex.facets();
    let mut search = Search {
        facets,
        used: vec![false; facets.len()],
        order: Vec::with_capacity(facets.len()),
        dead: HashSet::new(),
    };
    for first in 0..facets.len() {
        search.push(first);
        if search.extend() {
            let order = search.order;
            debug_assert!(is_shelling(complex, &order).unwrap_or(false));
            return Ok(Some(order));
        }
        search.pop();
    }
    Ok(None)
}

struct Search<'a> {
    facets: &'a [Face],
    used: Vec<bool>,
    order: Vec<usize>,
    dead: HashSet<Vec<bool>>,
}

impl Search<'_> {
    fn push(&mut self, i: usize) {
        self.used[i] = true;
        self.order.push(i);
    }

    fn pop(&mut self) {
        if let Some(i) = self.order.pop() {
            self.used[i] = false;
        }
    }

    fn extend(&mut self) -> bool {
        if self.order.len() == self.facets.len() {
            return true;
        }
        if self.dead.contains(&self.used) {
            return false;
        }
        for next in 0..self.facets.len() {
            if self.used[next] {
                continue;
            }
            let prefix = self.order.iter().map(|&i| &self.facets[i]);
            if !attaches_cleanly(prefix, self.facets[next]) {
                continue;
            }
            self.push(next);
            if self.extend() {
                return true;
            }
            self.pop();
        }
        self.dead.insert(self.used.clone());
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VertexLabeling;
    use crate::homology::Field;
    use crate::stanley_reisner::is_cohen_macaulay;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn running() -> SimplicialComplex {
        SimplicialComplex::from_labels(
            &["x0", "x1", "y0", "y1", "y2"],
            &[
                &["x0", "y0", "y2"],
                &["x0", "x1", "y0"],
                &["x1", "y0", "y1"],
                &["x1", "y1", "y2"],
            ],
        )
        .unwrap()
    }

    fn running_cover() -> SimplicialComplex {
        SimplicialComplex::from_labels(
            &["x0", "x1", "y0", "y1", "y2_1", "y2_2"],
            &[
                &["x0", "y0", "y2_1"],
                &["x0", "x1", "y0"],
                &["x1", "y0", "y1"],
                &["x1", "y1", "y2_2"],
            ],
        )
        .unwrap()
    }

    fn position(c: &SimplicialComplex, labels: &[&str]) -> usize {
        let f = c.vertices().face_from_labels(labels).unwrap();
        c.facets().iter().position(|g| *g == f).unwrap()
    }

    #[test]
    fn cover_listed_order_is_shelling() {
        let c = running_cover();
        let order = [
            position(&c, &["x0", "y0", "y2_1"]),
            position(&c, &["x0", "x1", "y0"]),
            position(&c, &["x1", "y0", "y1"]),
            position(&c, &["x1", "y1", "y2_2"]),
        ];
        assert!(is_shelling(&c, &order).unwrap());
        let found = find_shelling(&c).unwrap().unwrap();
        assert!(is_shelling(&c, &found).unwrap());
    }

    #[test]
    fn running_has_no_shelling() {
        let d = running();
        assert_eq!(find_shelling(&d).unwrap(), None);
        let order = [
            position(&d, &["x0", "y0", "y2"]),
            position(&d, &["x0", "x1", "y0"]),
            position(&d, &["x1", "y0", "y1"]),
            position(&d, &["x1", "y1", "y2"]),
        ];
        let fail = shelling_failure(&d, &order).unwrap().unwrap();
        assert_eq!(fail.step, 3);
    }

    #[test]
    fn single_facet_and_triangle() {
        let s = SimplicialComplex::from_labels(&["a", "b"], &[&["a", "b"]]).unwrap();
        assert!(is_shelling(&s, &[0]).unwrap());
        let t = SimplicialComplex::from_labels(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]])
            .unwrap();
        let o = find_shelling(&t).unwrap().unwrap();
        assert_eq!(o, vec![0, 1, 2]);
        assert!(is_shelling(&t, &o).unwrap());
    }

    #[test]
    fn disjoint_attachment_fails_except_for_points() {
        let two_edges =
            SimplicialComplex::from_labels(&["a", "b", "c", "d"], &[&["a", "b"], &["c", "d"]]).unwrap();
        assert_eq!(find_shelling(&two_edges).unwrap(), None);
        let points = SimplicialComplex::from_labels(&["a", "b"], &[&["a"], &["b"]]).unwrap();
        assert!(is_shelling(&points, &[1, 0]).unwrap());
    }

    #[test]
    fn input_errors() {
        let mixed = SimplicialComplex::from_labels(&["a", "b", "c"], &[&["a", "b"], &["c"]]).unwrap();
        assert_eq!(find_shelling(&mixed), Err(Error::NotPure));
        let t = running();
        assert!(matches!(is_shelling(&t, &[0, 1, 2]), Err(Error::NotPermutation(_))));
        assert!(matches!(is_shelling(&t, &[0, 1, 2, 2]), Err(Error::NotPermutation(_))));
    }

    fn labels(n: usize) -> Arc<VertexLabeling> {
        Arc::new(VertexLabeling::new((0..n).map(|i| format!("v{i}"))).unwrap())
    }

    fn arb_pure_complex() -> impl Strategy<Value = SimplicialComplex> {
        (2usize..8).prop_flat_map(|n| {
            (1..n.min(4) + 1).prop_flat_map(move |k| {
                prop::collection::vec(prop::sample::subsequence((0..n).collect::<Vec<_>>(), k), 1..7)
                    .prop_map(move |fs| {
                        SimplicialComplex::new(labels(n), fs.into_iter().map(Face::from_indices))
                            .unwrap()
                    })
            })
        })
    }

    // Oracle: try every permutation.
    fn brute_shellable(c: &SimplicialComplex) -> bool {
        fn go(c: &SimplicialComplex, order: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if order.len() == used.len() {
                return is_shelling(c, order).unwrap();
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    order.push(i);
                    if go(c, order, used) {
                        return true;
                    }
                    order.pop();
                    used[i] = false;
                }
            }
            false
        }
        go(c, &mut Vec::new(), &mut vec![false; c.facets().len()])
    }

    proptest! {
        #[test]
        fn search_is_sound_and_complete(c in arb_pure_complex()) {
            let found = find_shelling(&c).unwrap();
            if let Some(o) = &found {
                prop_assert!(is_shelling(&c, o).unwrap());
            }
            prop_assert_eq!(found.is_some(), brute_shellable(&c));
        }

        #[test]
        fn shellable_implies_cohen_macaulay(c in arb_pure_complex()) {
            if find_shelling(&c).unwrap().is_some() {
                prop_assert!(is_cohen_macaulay(&c, Field::Rationals).unwrap());
            }
        }

        #[test]
        fn prefixes_of_shellings_are_shellings(c in arb_pure_complex()) {
            if let Some(o) = find_shelling(&c).unwrap() {
                for k in 1..=o.len() {
                    let sub = SimplicialComplex::new(
                        Arc::clone(c.vertices()),
                        o[..k].iter().map(|&i| c.facets()[i]),
                    ).unwrap();
                    let sub_order: Vec<usize> = o[..k]
                        .iter()
                        .map(|&i| sub.facets().iter().position(|f| *f == c.facets()[i]).unwrap())
                        .collect();
                    prop_assert!(is_shelling(&sub, &sub_order).unwrap());
                }
            }
        }
    }
}
