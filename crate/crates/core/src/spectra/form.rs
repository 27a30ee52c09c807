use nalgebra::{DMatrix, SymmetricEigen};

use crate::cayley::CayleyBall;
use crate::error::{Error, Result};

/// The quadratic form `Q(x) = Σ_s Σ_h (x(hs) − x(h))²` restricted to vectors
/// supported on a ball, stored as a symmetric sparse matrix.
///
/// With `x(g) = v(g⁻¹)` this is `Σ_s ‖sv − v‖²` for the left regular
/// representation; balls are inversion-closed, so both live on the same
/// vertex set.
#[derive(Clone, Debug, PartialEq)]
pub struct DisplacementForm {
    diagonal: f64,
    row_start: Vec<usize>,
    columns: Vec<usize>,
    values: Vec<f64>,
}

impl DisplacementForm {
    /// Assembles the form with vertex `order[k]` of `ball` as coordinate `k`.
    pub fn new(ball: &CayleyBall, order: &[usize]) -> Self {
        let n = ball.len();
        assert_eq!(order.len(), n, "order must be a permutation of the ball");
        let mut position = vec![usize::MAX; n];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let nontrivial = (0..ball.marking_size())
            .filter(|&s| n == 0 || ball.out_neighbor(0, s) != Some(0))
            .count();
        let mut row_start = Vec::with_capacity(n + 1);
        let mut columns = Vec::new();
        let mut values = Vec::new();
        row_start.push(0);
        let mut row: Vec<usize> = Vec::new();
        for &u in order {
            row.clear();
            for s in 0..ball.marking_size() {
                for w in [ball.out_neighbor(u, s), ball.in_neighbor(u, s)]
                    .into_iter()
                    .flatten()
                {
                    if w != u {
                        row.push(position[w]);
                    }
                }
            }
            row.sort_unstable();
            let mut k = 0;
            while k < row.len() {
                let mut j = k;
                while j < row.len() && row[j] == row[k] {
                    j += 1;
                }
                columns.push(row[k]);
                values.push(-((j - k) as f64));
                k = j;
            }
            row_start.push(columns.len());
        }
        DisplacementForm {
            diagonal: 2.0 * nontrivial as f64,
            row_start,
            columns,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.row_start.len() - 1
    }

    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..self.dim() {
            let mut acc = self.diagonal * x[i];
            for k in self.row_start[i]..self.row_start[i + 1] {
                acc += self.values[k] * x[self.columns[k]];
            }
            out[i] = acc;
        }
    }

    /// Dense copy, for small cross-checks.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diagonal;
            for k in self.row_start[i]..self.row_start[i + 1] {
                m[(i, self.columns[k])] = self.values[k];
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    /// Rayleigh quotient of `vector`.
    pub value: f64,
    /// Unit vector.
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Orthonormalizes `v` against `basis` (two Gram–Schmidt passes). Returns
/// `None` when nothing independent is left.
fn orthonormalize(mut v: Vec<f64>, basis: &[Vec<f64>]) -> Option<Vec<f64>> {
    let start = norm(&v);
    if start == 0.0 || !start.is_finite() {
        return None;
    }
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, &v);
            axpy(-c, b, &mut v);
        }
    }
    let n = norm(&v);
    if n <= 1e-10 * start {
        return None;
    }
    v.iter_mut().for_each(|x| *x /= n);
    Some(v)
}

/// Smallest eigenpair by locally optimal conjugate gradient (block size one)
/// started from the uniform vector.
///
/// The residual is `‖Qx − λx‖` for the returned unit vector `x`.
pub fn smallest_eigenpair(
    form: &DisplacementForm,
    tolerance: f64,
    max_iterations: usize,
) -> Result<EigenPair> {
    let n = form.dim();
    if n == 0 {
        return Err(Error::InvalidInput("empty operator".into()));
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut qx = vec![0.0; n];
    let mut p: Option<Vec<f64>> = None;
    let mut residual = f64::INFINITY;
    for iteration in 0..=max_iterations {
        form.apply(&x, &mut qx);
        let lambda = dot(&x, &qx);
        let mut r = qx.clone();
        axpy(-lambda, &x, &mut r);
        residual = norm(&r);
        if residual <= tolerance {
            return Ok(EigenPair {
                value: lambda,
                vector: x,
                residual,
                iterations: iteration,
            });
        }
        if iteration == max_iterations {
            break;
        }

        let mut basis = vec![x.clone()];
        if let Some(rv) = orthonormalize(r, &basis) {
            basis.push(rv);
        }
        if let Some(pv) = p.take().and_then(|pv| orthonormalize(pv, &basis)) {
            basis.push(pv);
        }
        if basis.len() == 1 {
            // the residual stalled above the tolerance
            return Err(Error::NoConvergence {
                iterations: iteration,
                residual,
            });
        }
        let images: Vec<Vec<f64>> = basis
            .iter()
            .enumerate()
            .map(|(k, b)| {
                if k == 0 {
                    qx.clone()
                } else {
                    let mut out = vec![0.0; n];
                    form.apply(b, &mut out);
                    out
                }
            })
            .collect();
        let k = basis.len();
        let gram = DMatrix::from_fn(k, k, |i, j| {
            if i <= j {
                dot(&basis[i], &images[j])
            } else {
                dot(&basis[j], &images[i])
            }
        });
        let eig = SymmetricEigen::new(gram);
        let mut best = 0;
        for i in 1..k {
            if eig.eigenvalues[i] < eig.eigenvalues[best] {
                best = i;
            }
        }
        let c = eig.eigenvectors.column(best);
        let mut next = vec![0.0; n];
        let mut direction = vec![0.0; n];
        for (i, b) in basis.iter().enumerate() {
            axpy(c[i], b, &mut next);
            if i > 0 {
                axpy(c[i], b, &mut direction);
            }
        }
        // fix the sign so runs are reproducible
        if dot(&next, &basis[0]) < 0.0 {
            next.iter_mut().for_each(|v| *v = -*v);
            direction.iter_mut().for_each(|v| *v = -*v);
        }
        let nn = norm(&next);
        next.iter_mut().for_each(|v| *v /= nn);
        x = next;
        p = Some(direction);
    }
    Err(Error::NoConvergence {
        iterations: max_iterations,
        residual,
    })
}

/// `(‖s_j v − v‖)_j` for `v(g) = x(g⁻¹)`, computed on the graph: edges
/// leaving the ball contribute the full coefficient.
pub fn graph_displacements(ball: &CayleyBall, x: &[f64]) -> Vec<f64> {
    (0..ball.marking_size())
        .map(|s| {
            let mut acc = 0.0;
            for u in 0..ball.len() {
                match ball.out_neighbor(u, s) {
                    Some(w) => {
                        let d = x[w] - x[u];
                        acc += d * d;
                    }
                    None => acc += x[u] * x[u],
                }
                if ball.in_neighbor(u, s).is_none() {
                    acc += x[u] * x[u];
                }
            }
            acc.sqrt()
        })
        .collect()
}
