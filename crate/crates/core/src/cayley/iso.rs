//! Rooted labeled isomorphism of Cayley balls and the local-isomorphism radius.

use std::collections::HashSet;

use super::ball::{enumerate_ball_with_cap, CayleyBall, Edge};
use crate::error::{Error, Result};
use crate::oracle::MarkedGroup;

/// The root-fixing, label- and orientation-preserving bijection `B1 → B2`,
/// if one exists.
///
/// Each vertex has at most one outgoing and one incoming edge per label, so
/// starting from `root ↦ root` every further assignment is forced; the
/// candidate is then checked against the full edge sets.
pub fn ball_isomorphic(b1: &CayleyBall, b2: &CayleyBall) -> Result<Option<Vec<usize>>> {
    if b1.radius != b2.radius {
        return Err(Error::IncomparableBalls(format!(
            "radii {} and {}",
            b1.radius, b2.radius
        )));
    }
    if b1.marking_size() != b2.marking_size() {
        return Err(Error::IncomparableBalls(format!(
            "marking sizes {} and {}",
            b1.marking_size(),
            b2.marking_size()
        )));
    }
    if b1.len() != b2.len() || b1.edges.len() != b2.edges.len() {
        return Ok(None);
    }
    let n = b1.len();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    const UNSET: usize = usize::MAX;
    let mut forward = vec![UNSET; n];
    let mut backward = vec![UNSET; n];
    forward[0] = 0;
    backward[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let w = forward[v];
        for label in 0..b1.marking_size() {
            let pairs = [
                (b1.out_neighbor(v, label), b2.out_neighbor(w, label)),
                (b1.in_neighbor(v, label), b2.in_neighbor(w, label)),
            ];
            for pair in pairs {
                match pair {
                    (None, None) => {}
                    (Some(x), Some(y)) => {
                        if forward[x] == UNSET && backward[y] == UNSET {
                            forward[x] = y;
                            backward[y] = x;
                            queue.push(x);
                        } else if forward[x] != y || backward[y] != x {
                            return Ok(None);
                        }
                    }
                    _ => return Ok(None),
                }
            }
        }
    }
    if forward.iter().any(|&x| x == UNSET) {
        return Ok(None);
    }
    let image: HashSet<Edge> = b1
        .edges
        .iter()
        .map(|e| Edge {
            source: forward[e.source],
            label: e.label,
            target: forward[e.target],
        })
        .collect();
    let target: HashSet<Edge> = b2.edges.iter().copied().collect();
    Ok((image == target).then_some(forward))
}

/// Per-radius comparison of two marked groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonRadius {
    /// Largest `r ≤ R_max` with `B1(r) ≅ B2(r)`; `None` if even the
    /// radius-0 balls differ.
    pub radius: Option<usize>,
    /// `isomorphic[r]` for `r = 0..=R_max`.
    pub isomorphic: Vec<bool>,
}

/// Compares all sub-balls of two radius-`R` balls.
pub fn common_radius_of_balls(b1: &CayleyBall, b2: &CayleyBall) -> Result<CommonRadius> {
    if b1.radius != b2.radius {
        return Err(Error::IncomparableBalls(format!(
            "radii {} and {}",
            b1.radius, b2.radius
        )));
    }
    let isomorphic = (0..=b1.radius)
        .map(|r| ball_isomorphic(&b1.restrict(r), &b2.restrict(r)).map(|m| m.is_some()))
        .collect::<Result<Vec<bool>>>()?;
    if let Some(first_bad) = isomorphic.iter().position(|&x| !x) {
        if let Some(later) = isomorphic[first_bad..].iter().position(|&x| x) {
            return Err(Error::NonMonotoneIsomorphism {
                iso: first_bad + later,
                non_iso: first_bad,
            });
        }
    }
    let radius = isomorphic.iter().rposition(|&x| x);
    Ok(CommonRadius { radius, isomorphic })
}

/// Largest `r ≤ r_max` with the two marked groups locally `r`-isomorphic.
pub fn max_common_radius<A: MarkedGroup, B: MarkedGroup>(
    a: &A,
    b: &B,
    r_max: usize,
    cap: usize,
) -> Result<CommonRadius> {
    if a.rank() != b.rank() {
        return Err(Error::IncomparableBalls(format!(
            "marking sizes {} and {}",
            a.rank(),
            b.rank()
        )));
    }
    let ba = enumerate_ball_with_cap(a, r_max, cap)?.graph;
    let bb = enumerate_ball_with_cap(b, r_max, cap)?.graph;
    common_radius_of_balls(&ba, &bb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::ball::enumerate_ball;
    use crate::hnn::HnnGroup;
    use crate::oracle::{CyclicGroup, FreeGroup, MarkedGroup, Remarked};

    #[test]
    fn self_isomorphism_is_identity() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let b = enumerate_ball(&g, 3).unwrap();
        let m = ball_isomorphic(&b, &b).unwrap().unwrap();
        assert_eq!(m, (0..b.len()).collect::<Vec<_>>());
    }

    #[test]
    fn free_vs_bs_radius_two() {
        let f = FreeGroup::new(2);
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let bf = enumerate_ball(&f, 2).unwrap();
        let bg = enumerate_ball(&g, 2).unwrap();
        assert!(ball_isomorphic(&bf, &bg).unwrap().is_some());
        let bf = enumerate_ball(&f, 3).unwrap();
        let bg = enumerate_ball(&g, 3).unwrap();
        assert!(ball_isomorphic(&bf, &bg).unwrap().is_none());
        // same vertex count; the seven rotations of the relator each close a
        // cycle through the root with one edge between distance-3 vertices
        assert_eq!(bf.len(), bg.len());
        assert_eq!(bf.edges.len() + 7, bg.edges.len());
    }

    #[test]
    fn mismatched_inputs_error() {
        let f = FreeGroup::new(2);
        let b2 = enumerate_ball(&f, 2).unwrap();
        let b3 = enumerate_ball(&f, 3).unwrap();
        assert!(ball_isomorphic(&b2, &b3).is_err());
        let z = FreeGroup::new(1);
        let bz = enumerate_ball(&z, 2).unwrap();
        assert!(ball_isomorphic(&b2, &bz).is_err());
    }

    #[test]
    fn short_cycles_are_detected() {
        // the 5-cycle of Z/5 closes inside B(2)
        let c = CyclicGroup::new(5);
        let z = CyclicGroup::new(0);
        let r = max_common_radius(&c, &z, 4, 1000).unwrap();
        assert_eq!(r.radius, Some(1));
        assert_eq!(r.isomorphic, vec![true, true, false, false, false]);
        let c = CyclicGroup::new(3);
        assert_eq!(max_common_radius(&c, &z, 4, 1000).unwrap().radius, Some(0));
    }

    #[test]
    fn permuted_marking_changes_labels() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let swapped = Remarked::permuted(&g, &[1, 0]);
        assert_eq!(swapped.marking(), &["a".to_string(), "t".to_string()]);
        let r = max_common_radius(&g, &swapped, 4, 100_000).unwrap();
        assert_eq!(r.radius, Some(2));
    }

    #[test]
    fn identical_oracles_agree_to_max() {
        let f = FreeGroup::new(2);
        assert_eq!(max_common_radius(&f, &f, 5, 100_000).unwrap().radius, Some(5));
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let m0 = g.marking_at(0);
        assert_eq!(max_common_radius(&g, &m0, 5, 100_000).unwrap().radius, Some(5));
    }
}
