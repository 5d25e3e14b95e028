//! Incremental QR factorisation by modified Gram-Schmidt, used to grow a
//! linearly independent basis and to expand vectors in it.

pub(crate) fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, Default)]
pub(crate) struct IncrementalQr {
    q: Vec<Vec<f64>>,
    /// Column `j` of the upper-triangular factor; has length `j + 1`.
    r_cols: Vec<Vec<f64>>,
}

impl IncrementalQr {
    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.q.len()
    }

    /// Coordinates of `v` on the orthonormal vectors and the residual,
    /// with one reorthogonalisation pass.
    fn project(&self, v: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let mut coeffs = vec![0.0; self.q.len()];
        let mut res = v.to_vec();
        for _ in 0..2 {
            for (c, q) in coeffs.iter_mut().zip(&self.q) {
                let d = dot(q, &res);
                *c += d;
                for (x, qi) in res.iter_mut().zip(q) {
                    *x -= d * qi;
                }
            }
        }
        (coeffs, res)
    }

    /// Appends `v` when its residual exceeds `rel_tol * ‖v‖₂`; returns
    /// whether it was added.
    pub fn try_push(&mut self, v: &[f64], rel_tol: f64) -> bool {
        let vn = norm2(v);
        if vn == 0.0 {
            return false;
        }
        let (mut coeffs, res) = self.project(v);
        let rn = norm2(&res);
        if rn <= rel_tol * vn {
            return false;
        }
        self.q.push(res.iter().map(|x| x / rn).collect());
        coeffs.push(rn);
        self.r_cols.push(coeffs);
        true
    }

    /// Least-squares coefficients of `v` in the original (non-orthonormal)
    /// basis, and the norm of what is left over.
    pub fn solve(&self, v: &[f64]) -> (Vec<f64>, f64) {
        let (c, res) = self.project(v);
        let n = self.q.len();
        let mut alpha = vec![0.0; n];
        for i in (0..n).rev() {
            let tail: f64 = ((i + 1)..n).map(|j| self.r_cols[j][i] * alpha[j]).sum();
            alpha[i] = (c[i] - tail) / self.r_cols[i][i];
        }
        (alpha, norm2(&res))
    }
}
