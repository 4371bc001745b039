//! Dense primal-dual interior-point solver for
//!
//! ```text
//! primal: min ⟨C, X⟩  s.t. ⟨N_j, X⟩ = 0, tr X = 1, X ⪰ 0
//! dual:   max t       s.t. C − Σ y_j N_j − t·I ⪰ 0
//! ```
//!
//! The dual optimum is the largest λ_min over the affine family
//! C − Σ y_j N_j, which is how Gram feasibility is posed. The N_j are sparse
//! and orthonormal in the Frobenius inner product. The search direction is
//! HKM with a Mehrotra predictor-corrector step.

use nalgebra::{DMatrix, DVector};

/// Symmetric matrix given by its nonzero entries; off-diagonal entries are
/// listed once per position, so both (i, j) and (j, i) appear.
#[derive(Debug, Clone, Default)]
pub struct SparseSym {
    pub entries: Vec<(usize, usize, f64)>,
}

impl SparseSym {
    fn dot(&self, x: &DMatrix<f64>) -> f64 {
        self.entries.iter().map(|&(i, j, v)| v * x[(i, j)]).sum()
    }

    fn add_to(&self, out: &mut DMatrix<f64>, s: f64) {
        for &(i, j, v) in &self.entries {
            out[(i, j)] += s * v;
        }
    }
}

#[derive(Debug, Clone)]
pub struct SdpSettings {
    pub max_iter: usize,
    pub gap_tol: f64,
    pub feas_tol: f64,
    /// Stop once the dual bound is at least this (feasibility settled).
    pub stop_above: Option<f64>,
    /// Stop once the primal bound is at most this (infeasibility settled).
    pub stop_below: Option<f64>,
}

impl Default for SdpSettings {
    fn default() -> Self {
        SdpSettings {
            max_iter: 120,
            gap_tol: 1e-10,
            feas_tol: 1e-10,
            stop_above: None,
            stop_below: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub x: DMatrix<f64>,
    pub y: DVector<f64>,
    /// Dual value t, a lower bound on the optimum when the dual residual is small.
    pub t: f64,
    pub primal_objective: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn frob(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.component_mul(b).sum()
}

/// Largest α ≤ 1 keeping `m + α·d` positive definite, assuming `m` is.
fn max_step(m: &DMatrix<f64>, d: &DMatrix<f64>) -> f64 {
    let Some(ch) = m.clone().cholesky() else {
        return 0.0;
    };
    let l = ch.l();
    let li = l.clone().try_inverse().unwrap_or_else(|| DMatrix::zeros(l.nrows(), l.ncols()));
    let s = sym(&(&li * d * li.transpose()));
    let lam = s.symmetric_eigenvalues().min();
    if lam >= 0.0 {
        f64::INFINITY
    } else {
        -1.0 / lam
    }
}

pub fn min_eig(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    sym(m).symmetric_eigenvalues().min()
}

/// Solve the problem above for cost `c` (symmetric n×n) and null directions `nulls`.
pub fn solve(c: &DMatrix<f64>, nulls: &[SparseSym], settings: &SdpSettings) -> SdpSolution {
    let n = c.nrows();
    let m0 = nulls.len();
    let m = m0 + 1;
    let eye = DMatrix::<f64>::identity(n, n);
    let mut x = &eye / n as f64;
    let mut y = DVector::<f64>::zeros(m);
    let cn = c.abs().max().max(1.0);
    // Dual feasible start: t below the spectrum of C, other multipliers zero.
    y[m0] = min_eig(c) - 1.0 - cn;
    let mut z = c - &eye * y[m0];

    let aty = |y: &DVector<f64>| {
        let mut out = &eye * y[m0];
        for (j, nj) in nulls.iter().enumerate() {
            nj.add_to(&mut out, y[j]);
        }
        out
    };
    let a_of = |mat: &DMatrix<f64>| {
        let mut v = DVector::<f64>::zeros(m);
        for (j, nj) in nulls.iter().enumerate() {
            v[j] = nj.dot(mat);
        }
        v[m0] = mat.trace();
        v
    };
    let mut b = DVector::<f64>::zeros(m);
    b[m0] = 1.0;

    let mut iterations = 0;
    let mut converged = false;
    for it in 0..settings.max_iter {
        iterations = it;
        let rp = &b - a_of(&x);
        let rd = c - &z - aty(&y);
        let pobj = frob(c, &x);
        let dobj = y[m0];
        let gap = frob(&x, &z);
        let pres = rp.norm();
        let dres = rd.norm() / (1.0 + cn);
        log::trace!(
            "sdp it={it} pobj={pobj:.3e} dobj={dobj:.3e} gap={gap:.2e} pres={pres:.2e} dres={dres:.2e}"
        );
        if pres < settings.feas_tol && dres < settings.feas_tol {
            if (pobj - dobj).abs() < settings.gap_tol * (1.0 + pobj.abs() + dobj.abs()) {
                converged = true;
                break;
            }
            if settings.stop_above.is_some_and(|s| dobj >= s)
                || settings.stop_below.is_some_and(|s| pobj <= s)
            {
                converged = true;
                break;
            }
        }
        let Some(zch) = z.clone().cholesky() else {
            break;
        };
        let w = sym(&zch.inverse());
        let xw = &x * &w;

        // Schur complement M_jk = tr(A_j X A_k W).
        let mut schur = DMatrix::<f64>::zeros(m, m);
        for (j, nj) in nulls.iter().enumerate() {
            let mut s = DMatrix::<f64>::zeros(n, n);
            // S = W N_j X
            for &(a, bb, v) in &nj.entries {
                for r in 0..n {
                    let wra = w[(r, a)];
                    if wra == 0.0 {
                        continue;
                    }
                    for cc in 0..n {
                        s[(r, cc)] += wra * v * x[(bb, cc)];
                    }
                }
            }
            for (k, nk) in nulls.iter().enumerate().skip(j) {
                let val: f64 = nk.entries.iter().map(|&(cc, d, u)| u * s[(d, cc)]).sum();
                schur[(j, k)] = val;
                schur[(k, j)] = val;
            }
            let val: f64 = nj.entries.iter().map(|&(a, bb, v)| v * xw[(bb, a)]).sum();
            schur[(j, m0)] = val;
            schur[(m0, j)] = val;
        }
        schur[(m0, m0)] = xw.trace();
        let reg = 1e-14 * (1.0 + schur.diagonal().amax());
        for i in 0..m {
            schur[(i, i)] += reg;
        }
        let Some(sch) = schur.cholesky() else {
            break;
        };
        let mu = gap / n as f64;

        let direction = |sigma_mu: f64, corr: Option<&DMatrix<f64>>| {
            // rhs_i = b_i − σμ⟨A_i, W⟩ + ⟨A_i, X Rd W⟩ + ⟨A_i, corr⟩
            let xrw = &x * &rd * &w;
            let mut inner = &xrw - &w * sigma_mu;
            if let Some(cm) = corr {
                inner += cm;
            }
            let rhs = &b + a_of(&sym(&inner));
            let dy = sch.solve(&rhs);
            let dz = &rd - aty(&dy);
            let mut dx = &w * sigma_mu - &x - &x * &dz * &w;
            if let Some(cm) = corr {
                dx -= cm;
            }
            (sym(&dx), dy, dz)
        };

        let (dxp, _, dzp) = direction(0.0, None);
        let ap = (0.95 * max_step(&x, &dxp)).min(1.0);
        let ad = (0.95 * max_step(&z, &dzp)).min(1.0);
        let gap_aff = frob(&(&x + &dxp * ap), &(&z + &dzp * ad));
        let sigma = if gap > 0.0 { (gap_aff / gap).clamp(0.0, 1.0).powi(3) } else { 0.0 };
        let corr = &dxp * &dzp * &w;
        let (dx, dy, dz) = direction(sigma * mu, Some(&corr));
        let ap = (0.95 * max_step(&x, &dx)).min(1.0);
        let ad = (0.95 * max_step(&z, &dz)).min(1.0);
        if ap < 1e-12 && ad < 1e-12 {
            break;
        }
        x += &dx * ap;
        x = sym(&x);
        y += &dy * ad;
        z += &dz * ad;
        z = sym(&z);
    }
    let rp = &b - a_of(&x);
    let rd = c - &z - aty(&y);
    SdpSolution {
        primal_objective: frob(c, &x),
        t: y[m0],
        primal_residual: rp.norm(),
        dual_residual: rd.norm() / (1.0 + cn),
        x,
        y,
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_constraints_gives_min_eigenvalue() {
        let c = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let s = solve(&c, &[], &SdpSettings::default());
        assert!(s.converged);
        assert!((s.t - 1.0).abs() < 1e-8, "{}", s.t);
        assert!((s.primal_objective - 1.0).abs() < 1e-8);
    }

    #[test]
    fn free_offdiagonal_is_used() {
        // C = [[1, 5], [5, 1]] with the off-diagonal free: optimum t = 1.
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let n = SparseSym { entries: vec![(0, 1, r), (1, 0, r)] };
        let c = DMatrix::from_row_slice(2, 2, &[1.0, 5.0, 5.0, 1.0]);
        let s = solve(&c, &[n], &SdpSettings::default());
        assert!(s.converged);
        assert!((s.t - 1.0).abs() < 1e-7, "{}", s.t);
    }
}
