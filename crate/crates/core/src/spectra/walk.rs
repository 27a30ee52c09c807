use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cayley::enumerate_ball_with_cap;
use crate::error::Result;
use crate::oracle::MarkedGroup;

/// `p_{2k}(e)` for the simple random walk on `S ∪ S⁻¹`, kept as an exact
/// count of closed walks over the total number of walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnProbability {
    pub k: usize,
    pub closed_walks: BigUint,
    pub walks: BigUint,
}

impl ReturnProbability {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.closed_walks.clone()),
            BigInt::from(self.walks.clone()),
        )
    }

    /// `p_{2k}^{1/(2k)}`, a lower bound on the norm of the walk operator.
    pub fn root(&self) -> f64 {
        let p = self.ratio().to_f64().unwrap_or(0.0);
        p.powf(1.0 / (2 * self.k) as f64)
    }
}

/// Return probabilities for `k = 1..=k_max` from one walk on `B(k_max)`.
///
/// A closed walk of length `2k` never leaves `B(k)`, so mass escaping the
/// ball can be dropped.
pub fn return_probabilities<O: MarkedGroup>(
    oracle: &O,
    k_max: usize,
    cap: usize,
) -> Result<Vec<ReturnProbability>> {
    let ball = enumerate_ball_with_cap(oracle, k_max, cap)?.graph;
    let n = ball.len();
    let degree = BigUint::from(2 * ball.marking_size());
    let mut mass = vec![BigUint::zero(); n];
    mass[0] = BigUint::from(1u32);
    let mut walks = BigUint::from(1u32);
    let mut out = Vec::with_capacity(k_max);
    for step in 1..=2 * k_max {
        let mut next = vec![BigUint::zero(); n];
        for (u, m) in mass.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for s in 0..ball.marking_size() {
                for w in [ball.out_neighbor(u, s), ball.in_neighbor(u, s)]
                    .into_iter()
                    .flatten()
                {
                    next[w] += m;
                }
            }
        }
        mass = next;
        walks *= &degree;
        if step % 2 == 0 {
            out.push(ReturnProbability {
                k: step / 2,
                closed_walks: mass[0].clone(),
                walks: walks.clone(),
            });
        }
    }
    Ok(out)
}

pub fn return_probability<O: MarkedGroup>(
    oracle: &O,
    k: usize,
    cap: usize,
) -> Result<ReturnProbability> {
    assert!(k >= 1, "return probability needs k ≥ 1");
    Ok(return_probabilities(oracle, k, cap)?.pop().expect("k ≥ 1"))
}
