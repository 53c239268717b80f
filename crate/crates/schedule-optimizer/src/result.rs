use fermion_core::QaoaAngles;
use serde::ser::{Serialize, SerializeStruct, Serializer};

/// Stopping rules and line-search constants for the quasi-Newton search.
#[derive(Debug, Clone, Copy)]
pub struct OptimOptions {
    /// Terminate when the Euclidean gradient norm drops below this.
    pub grad_tol: f64,
    pub max_iters: usize,
    /// Sufficient-decrease (Armijo) constant of the strong Wolfe conditions.
    pub sufficient_decrease: f64,
    /// Curvature constant of the strong Wolfe conditions.
    pub curvature: f64,
    /// Cap on objective evaluations within a single line search.
    pub max_line_search: usize,
}

impl Default for OptimOptions {
    fn default() -> Self {
        Self {
            grad_tol: 1e-9,
            max_iters: 10_000,
            sufficient_decrease: 1e-4,
            curvature: 0.9,
            max_line_search: 60,
        }
    }
}

/// Outcome of one minimization run.
///
/// Serializes as `{"p", "gammas", "betas", "eps_res", "grad_norm",
/// "n_iterations", "n_evaluations", "converged"}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimResult {
    pub angles: QaoaAngles,
    pub eps_res: f64,
    pub grad_norm: f64,
    pub n_iterations: usize,
    pub n_evaluations: usize,
    pub converged: bool,
}

impl OptimResult {
    pub fn depth(&self) -> usize {
        self.angles.depth()
    }
}

impl Serialize for OptimResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("OptimResult", 8)?;
        s.serialize_field("p", &self.depth())?;
        s.serialize_field("gammas", self.angles.gammas())?;
        s.serialize_field("betas", self.angles.betas())?;
        s.serialize_field("eps_res", &self.eps_res)?;
        s.serialize_field("grad_norm", &self.grad_norm)?;
        s.serialize_field("n_iterations", &self.n_iterations)?;
        s.serialize_field("n_evaluations", &self.n_evaluations)?;
        s.serialize_field("converged", &self.converged)?;
        s.end()
    }
}
