use std::collections::HashMap;

use crate::algebra::{Letter, Sign};
use crate::error::{Error, Result};
use crate::oracle::{CanonicalKey, MarkedGroup};

/// Default vertex budget for ball enumeration.
pub const DEFAULT_VERTEX_CAP: usize = 5_000_000;

/// A labeled edge `source --label--> target`, meaning `target = source · s_label`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

/// The ball of radius `r` around the identity in a Cayley graph, as a rooted
/// edge-labeled digraph.
///
/// Vertices are sorted by `(distance, canonical key)`, so the root is vertex
/// 0. Only edges with both endpoints inside the ball are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyBall {
    pub radius: usize,
    pub marking: Vec<String>,
    pub keys: Vec<CanonicalKey>,
    pub labels: Vec<String>,
    pub distances: Vec<usize>,
    pub edges: Vec<Edge>,
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
}

impl CayleyBall {
    fn from_parts(
        radius: usize,
        marking: Vec<String>,
        keys: Vec<CanonicalKey>,
        labels: Vec<String>,
        distances: Vec<usize>,
        mut edges: Vec<Edge>,
    ) -> Self {
        let n = keys.len();
        let m = marking.len();
        edges.sort();
        let mut out = vec![vec![None; m]; n];
        let mut inc = vec![vec![None; m]; n];
        for e in &edges {
            out[e.source][e.label] = Some(e.target);
            inc[e.target][e.label] = Some(e.source);
        }
        CayleyBall {
            radius,
            marking,
            keys,
            labels,
            distances,
            edges,
            out,
            inc,
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn marking_size(&self) -> usize {
        self.marking.len()
    }

    /// `v · s_label`, when inside the ball.
    pub fn out_neighbor(&self, v: usize, label: usize) -> Option<usize> {
        self.out[v][label]
    }

    /// `v · s_label⁻¹`, when inside the ball.
    pub fn in_neighbor(&self, v: usize, label: usize) -> Option<usize> {
        self.inc[v][label]
    }

    /// Number of vertices at distance ≤ `r`.
    pub fn count_within(&self, r: usize) -> usize {
        self.distances.partition_point(|&d| d <= r)
    }

    /// The sub-ball of radius `r ≤ self.radius`.
    pub fn restrict(&self, r: usize) -> CayleyBall {
        assert!(r <= self.radius, "cannot restrict to a larger radius");
        let n = self.count_within(r);
        let edges = self
            .edges
            .iter()
            .filter(|e| e.source < n && e.target < n)
            .copied()
            .collect();
        CayleyBall::from_parts(
            r,
            self.marking.clone(),
            self.keys[..n].to_vec(),
            self.labels[..n].to_vec(),
            self.distances[..n].to_vec(),
            edges,
        )
    }

    /// Relabeling invariant under rooted labeled isomorphism: breadth-first
    /// discovery from the root trying, for each label in order, the outgoing
    /// then the incoming edge. Returns old indices in new order.
    pub fn canonical_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        if n == 0 {
            return order;
        }
        seen[0] = true;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for label in 0..self.marking_size() {
                for w in [self.out[v][label], self.inc[v][label]].into_iter().flatten() {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
            }
        }
        debug_assert_eq!(order.len(), n, "balls are connected");
        order
    }
}

/// A ball together with the group elements behind its vertices.
#[derive(Clone, Debug)]
pub struct ElementBall<E> {
    pub graph: CayleyBall,
    pub elements: Vec<E>,
    pub index: HashMap<E, usize>,
}

impl<E: Clone + Eq + std::hash::Hash> ElementBall<E> {
    pub fn position(&self, g: &E) -> Option<usize> {
        self.index.get(g).copied()
    }
}

/// Breadth-first enumeration of `B(r)` over the symmetrized marking.
pub fn enumerate_ball<O: MarkedGroup>(oracle: &O, radius: usize) -> Result<CayleyBall> {
    enumerate_ball_with_cap(oracle, radius, DEFAULT_VERTEX_CAP).map(|b| b.graph)
}

pub fn enumerate_ball_with_cap<O: MarkedGroup>(
    oracle: &O,
    radius: usize,
    cap: usize,
) -> Result<ElementBall<O::Element>> {
    let m = oracle.rank();
    let root = oracle.identity();
    let mut index: HashMap<O::Element, usize> = HashMap::new();
    index.insert(root.clone(), 0);
    let mut elements = vec![root];
    let mut keys = vec![oracle.canonical_key(&elements[0])];
    let mut distances = vec![0usize];
    let mut layer_start = 0;

    for dist in 0..radius {
        let layer_end = elements.len();
        let mut fresh: Vec<(CanonicalKey, O::Element)> = Vec::new();
        let mut fresh_seen: HashMap<O::Element, ()> = HashMap::new();
        for v in layer_start..layer_end {
            for generator in 0..m {
                for sign in [Sign::Pos, Sign::Neg] {
                    let w = oracle.mul_letter(&elements[v], Letter::new(generator, sign));
                    if index.contains_key(&w) || fresh_seen.contains_key(&w) {
                        continue;
                    }
                    if elements.len() + fresh.len() >= cap {
                        return Err(Error::BudgetExceeded { cap, radius });
                    }
                    fresh_seen.insert(w.clone(), ());
                    fresh.push((oracle.canonical_key(&w), w));
                }
            }
        }
        fresh.sort_by(|a, b| a.0.cmp(&b.0));
        for (key, w) in fresh {
            index.insert(w.clone(), elements.len());
            elements.push(w);
            keys.push(key);
            distances.push(dist + 1);
        }
        layer_start = layer_end;
        if layer_start == elements.len() {
            break;
        }
    }

    let mut edges = Vec::new();
    for (v, g) in elements.iter().enumerate() {
        for label in 0..m {
            let w = oracle.mul_letter(g, Letter::pos(label));
            if let Some(&target) = index.get(&w) {
                edges.push(Edge {
                    source: v,
                    label,
                    target,
                });
            }
        }
    }
    let labels = elements.iter().map(|g| oracle.format_element(g)).collect();
    let graph = CayleyBall::from_parts(
        radius,
        oracle.marking().to_vec(),
        keys,
        labels,
        distances,
        edges,
    );
    Ok(ElementBall {
        graph,
        elements,
        index,
    })
}
