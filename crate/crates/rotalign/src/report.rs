//! Result record shared by the matrix-level and point-set-level solvers.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    PlanarClosedForm,
    NewtonThenSpectral,
    SvdKabschUmeyama,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Strategy::PlanarClosedForm => "planar-closed-form",
            Strategy::NewtonThenSpectral => "newton-then-spectral",
            Strategy::SvdKabschUmeyama => "svd-kabsch-umeyama",
        };
        f.write_str(s)
    }
}

/// Outcome of a solve: the chosen rotation and how it was obtained.
#[derive(Clone, Copy, Debug)]
pub struct SolveReport<M> {
    pub rotation: M,
    pub achieved_trace: f64,
    /// Weighted alignment error; only present when the solve started from
    /// point sets rather than a bare profile matrix.
    pub residual: Option<f64>,
    pub strategy: Strategy,
    pub newton_iterations: usize,
    pub fell_back: bool,
}
