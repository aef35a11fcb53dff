//! Weighted point-set alignment problems and their dispatch to the
//! dimension-appropriate solver.
//!
//! A problem carries two equal-length point lists and nonnegative weights;
//! its profile matrix `M = Q W P^T` turns the least-squares objective into
//! trace maximization: minimizing the residual is the same as maximizing
//! `tr(U M)`.

use crate::cayley::{solve_spatial, NewtonConfig};
use crate::error::{Error, Result};
use crate::mat::{Mat2, Mat3, Vec2, Vec3, DEFAULT_TOL};
use crate::planar::solve_planar;
use crate::report::{SolveReport, Strategy};

fn validate(p: usize, q: usize, w: &[f64]) -> Result<()> {
    if p != q || p != w.len() || p == 0 {
        return Err(Error::LengthMismatch { p, q, w: w.len() });
    }
    if let Some((i, &value)) = w.iter().enumerate().find(|(_, &x)| x < 0.0) {
        return Err(Error::NegativeWeight { index: i, value });
    }
    Ok(())
}

/// Planar weighted alignment problem.
#[derive(Clone, Debug)]
pub struct WahbaProblem2 {
    p: Vec<Vec2>,
    q: Vec<Vec2>,
    w: Vec<f64>,
}

/// Spatial weighted alignment problem.
#[derive(Clone, Debug)]
pub struct WahbaProblem3 {
    p: Vec<Vec3>,
    q: Vec<Vec3>,
    w: Vec<f64>,
}

impl WahbaProblem2 {
    pub fn new(p: Vec<Vec2>, q: Vec<Vec2>, w: Vec<f64>) -> Result<Self> {
        validate(p.len(), q.len(), &w)?;
        Ok(WahbaProblem2 { p, q, w })
    }

    /// `M = Q W P^T = sum_i w_i q_i p_i^T`.
    pub fn profile_matrix(&self) -> Mat2 {
        let mut m = Mat2::ZERO;
        for ((pi, qi), wi) in self.p.iter().zip(&self.q).zip(&self.w) {
            m = m + Mat2::outer(*qi, *pi).scale(*wi);
        }
        m
    }

    /// `sum_i w_i ||U q_i - p_i||^2`, computed directly from the points.
    pub fn residual(&self, u: &Mat2) -> Result<f64> {
        if !u.is_rotation(DEFAULT_TOL) {
            return Err(Error::NotRotation);
        }
        Ok(self
            .p
            .iter()
            .zip(&self.q)
            .zip(&self.w)
            .map(|((pi, qi), wi)| {
                let d = u.mul_vec(*qi) - *pi;
                wi * d.dot(d)
            })
            .sum())
    }

    pub fn solve(&self) -> SolveReport<Mat2> {
        let m = self.profile_matrix();
        let u = solve_planar(&m);
        SolveReport {
            rotation: u,
            achieved_trace: (u * m).trace(),
            residual: self.residual(&u).ok(),
            strategy: Strategy::PlanarClosedForm,
            newton_iterations: 0,
            fell_back: false,
        }
    }
}

impl WahbaProblem3 {
    pub fn new(p: Vec<Vec3>, q: Vec<Vec3>, w: Vec<f64>) -> Result<Self> {
        validate(p.len(), q.len(), &w)?;
        Ok(WahbaProblem3 { p, q, w })
    }

    pub fn profile_matrix(&self) -> Mat3 {
        let mut m = Mat3::ZERO;
        for ((pi, qi), wi) in self.p.iter().zip(&self.q).zip(&self.w) {
            m = m + Mat3::outer(*qi, *pi).scale(*wi);
        }
        m
    }

    pub fn residual(&self, u: &Mat3) -> Result<f64> {
        if !u.is_rotation(DEFAULT_TOL) {
            return Err(Error::NotRotation);
        }
        Ok(self
            .p
            .iter()
            .zip(&self.q)
            .zip(&self.w)
            .map(|((pi, qi), wi)| {
                let d = u.mul_vec(*qi) - *pi;
                wi * d.dot(d)
            })
            .sum())
    }

    pub fn solve(&self, cfg: &NewtonConfig, svd_only: bool) -> SolveReport<Mat3> {
        let m = self.profile_matrix();
        let mut report = solve_spatial(&m, cfg, svd_only);
        report.residual = self.residual(&report.rotation).ok();
        report
    }
}
