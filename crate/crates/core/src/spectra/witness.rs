use std::collections::HashMap;

use crate::cayley::{enumerate_ball_with_cap, CayleyBall};
use crate::error::{Error, Result};
use crate::oracle::{CanonicalKey, MarkedGroup};

/// A unit vector in `ℓ²(G)` with finite support, together with its
/// displacement under each marked generator.
#[derive(Clone, Debug)]
pub struct DisplacementWitness<E> {
    /// Support sorted by canonical key, coefficients normalized.
    pub support: Vec<(E, f64)>,
    pub keys: Vec<CanonicalKey>,
    /// Norm of the vector before normalization.
    pub norm: f64,
    /// `‖s_j v − v‖` for each generator `s_j`.
    pub displacements: Vec<f64>,
    /// `max_j ‖s_j v − v‖`, an upper bound on `α(G, S)`.
    pub bound: f64,
}

impl<E> DisplacementWitness<E> {
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Normalizes `v` and evaluates `‖sv − v‖` for every generator, where
/// `(sv)(g) = v(s⁻¹g)`.
///
/// Repeated elements are merged by adding coefficients.
pub fn displacement<O: MarkedGroup>(
    oracle: &O,
    v: &[(O::Element, f64)],
) -> Result<DisplacementWitness<O::Element>> {
    let mut merged: HashMap<O::Element, f64> = HashMap::new();
    for (g, c) in v {
        *merged.entry(g.clone()).or_insert(0.0) += c;
    }
    let mut support: Vec<(CanonicalKey, O::Element, f64)> = merged
        .into_iter()
        .filter(|(_, c)| *c != 0.0)
        .map(|(g, c)| (oracle.canonical_key(&g), g, c))
        .collect();
    support.sort_by(|a, b| a.0.cmp(&b.0));
    let norm = support.iter().map(|(_, _, c)| c * c).sum::<f64>().sqrt();
    if support.is_empty() || norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    for entry in support.iter_mut() {
        entry.2 /= norm;
    }
    let lookup: HashMap<&O::Element, f64> = support.iter().map(|(_, g, c)| (g, *c)).collect();
    let displacements = (0..oracle.rank())
        .map(|s| {
            let gen = oracle.generator(s);
            let inv = oracle.invert(&gen);
            let mut acc = 0.0;
            for (_, h, c) in &support {
                // (sv)(sh) = v(h)
                let sh = oracle.multiply(&gen, h);
                let d = c - lookup.get(&sh).copied().unwrap_or(0.0);
                acc += d * d;
                // points of the support that are not hit by the shift
                let back = oracle.multiply(&inv, h);
                if !lookup.contains_key(&back) {
                    acc += c * c;
                }
            }
            acc.sqrt()
        })
        .collect::<Vec<f64>>();
    let bound = displacements.iter().cloned().fold(0.0, f64::max);
    let (keys, support) = support.into_iter().map(|(k, g, c)| (k, (g, c))).unzip();
    Ok(DisplacementWitness {
        support,
        keys,
        norm,
        displacements,
        bound,
    })
}

/// Transfers a witness along a marking-preserving homomorphism `G → P`:
/// `u(p) = sqrt(Σ_{g ↦ p} v(g)²)`.
///
/// Each generator's displacement can only shrink; this is checked and a
/// violation is an error.
pub fn pushdown_witness<E, P: MarkedGroup>(
    witness: &DisplacementWitness<E>,
    target: &P,
    hom: impl Fn(&E) -> P::Element,
) -> Result<DisplacementWitness<P::Element>> {
    if witness.displacements.len() != target.rank() {
        return Err(Error::InvalidInput(format!(
            "witness has {} generators, target has {}",
            witness.displacements.len(),
            target.rank()
        )));
    }
    let mut fibers: HashMap<P::Element, f64> = HashMap::new();
    let mut order = Vec::new();
    for (g, c) in &witness.support {
        let p = hom(g);
        let entry = fibers.entry(p.clone()).or_insert_with(|| {
            order.push(p);
            0.0
        });
        *entry += c * c;
    }
    let image: Vec<(P::Element, f64)> = order
        .into_iter()
        .map(|p| {
            let mass = fibers[&p];
            (p, mass.sqrt())
        })
        .collect();
    let pushed = displacement(target, &image)?;
    for (j, (&after, &before)) in pushed
        .displacements
        .iter()
        .zip(&witness.displacements)
        .enumerate()
    {
        if after > before + 1e-12 {
            return Err(Error::PushdownViolation {
                generator: j,
                before,
                after,
            });
        }
    }
    Ok(pushed)
}

/// `|{u ∈ E : us ∉ E}|` per generator.
fn boundary_counts(ball: &CayleyBall, member: &[bool]) -> Vec<u64> {
    (0..ball.marking_size())
        .map(|s| {
            (0..ball.len())
                .filter(|&u| member[u] && !stays(ball, member, u, s))
                .count() as u64
        })
        .collect()
}

/// Whether `us` stays in the set.
fn stays(ball: &CayleyBall, member: &[bool], u: usize, s: usize) -> bool {
    matches!(ball.out_neighbor(u, s), Some(w) if member[w])
}

/// `max_s count_s / size`, compared as fractions.
fn score_less(a: (u64, u64), b: (u64, u64)) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

fn score(counts: &[u64], size: u64) -> (u64, u64) {
    (counts.iter().copied().max().unwrap_or(0), size)
}

/// Greedy search for a set `F ⊆ B(r)` with small `max_s |sF Δ F| / |F|`,
/// returned as the normalized indicator witness.
///
/// The search starts from the best ball `B(k)`, `k ≤ r`, and then toggles
/// single vertices while that strictly improves the score, for at most
/// `budget` moves.
pub fn folner_search<O: MarkedGroup>(
    oracle: &O,
    radius: usize,
    budget: usize,
    cap: usize,
) -> Result<DisplacementWitness<O::Element>> {
    let eb = enumerate_ball_with_cap(oracle, radius, cap)?;
    let ball = &eb.graph;
    let n = ball.len();

    // Work with E = F⁻¹, where the left boundary of F is the right boundary of E.
    let mut member = vec![false; n];
    let mut best: Option<(usize, (u64, u64))> = None;
    for k in 0..=radius {
        let size = ball.count_within(k);
        member.iter_mut().enumerate().for_each(|(v, m)| *m = v < size);
        let sc = score(&boundary_counts(ball, &member), size as u64);
        if best.map_or(true, |(_, b)| score_less(sc, b)) {
            best = Some((k, sc));
        }
    }
    let (k, mut current) = best.expect("radius 0 is always scored");
    let size0 = ball.count_within(k);
    member.iter_mut().enumerate().for_each(|(v, m)| *m = v < size0);
    let mut counts = boundary_counts(ball, &member);
    let mut size = size0 as u64;

    for _ in 0..budget {
        let mut best_move: Option<(usize, Vec<u64>, (u64, u64))> = None;
        for v in 0..n {
            if member[v] && size == 1 {
                continue;
            }
            let next = toggled_counts(ball, &mut member, &counts, v);
            let next_size = if member[v] { size - 1 } else { size + 1 };
            let sc = score(&next, next_size);
            let target = best_move.as_ref().map_or(current, |m| m.2);
            if score_less(sc, target) {
                best_move = Some((v, next, sc));
            }
        }
        match best_move {
            Some((v, next, sc)) => {
                size = if member[v] { size - 1 } else { size + 1 };
                member[v] = !member[v];
                counts = next;
                current = sc;
            }
            None => break,
        }
    }

    let support: Vec<(O::Element, f64)> = (0..n)
        .filter(|&v| member[v])
        .map(|v| (oracle.invert(&eb.elements[v]), 1.0))
        .collect();
    displacement(oracle, &support)
}

/// Boundary counts after toggling `v`; only `v` and its in-neighbors change.
fn toggled_counts(ball: &CayleyBall, member: &mut [bool], counts: &[u64], v: usize) -> Vec<u64> {
    let mut next = counts.to_vec();
    for (s, slot) in next.iter_mut().enumerate() {
        let mut affected = vec![v];
        if let Some(w) = ball.in_neighbor(v, s) {
            if w != v {
                affected.push(w);
            }
        }
        let term = |member: &[bool], u: usize| (member[u] && !stays(ball, member, u, s)) as i64;
        let before: i64 = affected.iter().map(|&u| term(member, u)).sum();
        member[v] = !member[v];
        let after: i64 = affected.iter().map(|&u| term(member, u)).sum();
        member[v] = !member[v];
        *slot = (*slot as i64 + after - before) as u64;
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FreeWord;
    use crate::hnn::HnnGroup;
    use crate::limit::LimitGroup;
    use crate::oracle::{CyclicGroup, FreeGroup};

    #[test]
    fn interval_in_z() {
        let z = CyclicGroup::new(0);
        let v: Vec<(i64, f64)> = (0..8).map(|k| (k, 1.0)).collect();
        let w = displacement(&z, &v).unwrap();
        assert!((w.bound - 0.5).abs() < 1e-15);
        assert!((w.norm - 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn delta_at_identity() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let w = displacement(&g, &[(g.identity(), 3.0)]).unwrap();
        for d in &w.displacements {
            assert!((d - 2f64.sqrt()).abs() < 1e-15);
        }
        assert!(matches!(displacement(&g, &[]), Err(Error::ZeroVector)));
        let e = g.identity();
        assert!(matches!(
            displacement(&g, &[(e.clone(), 1.0), (e, -1.0)]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn signed_coefficients() {
        // v = δ_0 − δ_1 on Z: sv − v = −δ_0 + 2δ_1 − δ_2 (up to sign)
        let z = CyclicGroup::new(0);
        let w = displacement(&z, &[(0, 1.0), (1, -1.0)]).unwrap();
        assert!((w.bound - 3f64.sqrt()).abs() < 1e-15);
    }

    fn uniform_ball<O: MarkedGroup>(o: &O, r: usize) -> Vec<(O::Element, f64)> {
        enumerate_ball_with_cap(o, r, 1_000_000)
            .unwrap()
            .elements
            .into_iter()
            .map(|g| (g, 1.0))
            .collect()
    }

    #[test]
    fn ball_indicator_sees_only_the_larger_ball() {
        let f = FreeGroup::new(2);
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let wf = displacement(&f, &uniform_ball(&f, 2)).unwrap();
        let wg = displacement(&g, &uniform_ball(&g, 2)).unwrap();
        for (a, b) in wf.displacements.iter().zip(&wg.displacements) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn pushdown_identity_and_injective() {
        let f = FreeGroup::new(2);
        let w = displacement(&f, &uniform_ball(&f, 1)).unwrap();
        let same = pushdown_witness(&w, &f, |g: &FreeWord| g.clone()).unwrap();
        for (a, b) in same.displacements.iter().zip(&w.displacements) {
            assert!((a - b).abs() < 1e-14);
        }
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let pushed = pushdown_witness(&w, &g, |x: &FreeWord| g.evaluate(x)).unwrap();
        assert_eq!(pushed.len(), w.len());
        for (a, b) in pushed.displacements.iter().zip(&w.displacements) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn pushdown_to_limit_shrinks() {
        let f = FreeGroup::new(2);
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let l = LimitGroup::new(&g);
        let w = displacement(&f, &uniform_ball(&f, 4)).unwrap();
        let pushed = pushdown_witness(&w, &l, |x: &FreeWord| l.model_map(x)).unwrap();
        assert!(pushed.len() < w.len());
        assert!(pushed.bound < w.bound);
    }

    #[test]
    fn folner_on_z_returns_an_interval() {
        let z = CyclicGroup::new(0);
        let w = folner_search(&z, 10, 50, 1000).unwrap();
        assert_eq!(w.len(), 21);
        assert!((w.bound - (2.0f64 / 21.0).sqrt()).abs() < 1e-14);
        let mut pts: Vec<i64> = w.support.iter().map(|(g, _)| *g).collect();
        pts.sort();
        assert_eq!(pts, (-10..=10).collect::<Vec<_>>());
    }

    #[test]
    fn folner_bound_matches_exact_displacement() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let l = LimitGroup::new(&g);
        let w = folner_search(&l, 4, 20, 1_000_000).unwrap();
        let ball = displacement(&l, &uniform_ball(&l, 4)).unwrap();
        assert!(w.bound <= ball.bound + 1e-15);
        let size = w.len() as f64;
        for d in &w.displacements {
            // indicator witnesses have displacement sqrt(2·boundary/|F|)
            let k = d * d * size / 2.0;
            assert!((k - k.round()).abs() < 1e-9);
        }
    }
}
