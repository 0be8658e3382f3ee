use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Value written into a cube whose window has no support samples at all.
pub const NO_SUPPORT_FALLBACK: f64 = 128.0;

/// Extrapolation parameters.
///
/// The window around each cube is `cube + 2 * border` samples along every
/// axis. Defaults: 4³ cubes, a 14-sample border (32³ windows), decay base
/// 0.7, compensation 0.5, reconstructed-sample discount 0.5 and 100
/// iterations per cube.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FseParams<T> {
    /// Cube edge length in samples.
    pub cube: usize,
    /// Border width added around the cube on every side.
    pub border: usize,
    /// Base of the exponential weighting decay, in (0, 1).
    pub rho_hat: T,
    /// Weight discount for previously reconstructed samples, in [0, 1].
    pub delta: T,
    /// Orthogonality deficiency compensation, in (0, 1].
    pub gamma: T,
    /// Number of basis functions added to each model.
    pub iterations: usize,
}

impl<T: Scalar> Default for FseParams<T> {
    fn default() -> Self {
        FseParams {
            cube: 4,
            border: 14,
            rho_hat: T::lit(0.7),
            delta: T::lit(0.5),
            gamma: T::lit(0.5),
            iterations: 100,
        }
    }
}

impl<T: Scalar> FseParams<T> {
    /// Edge length of the extrapolation window.
    #[inline]
    pub fn window(&self) -> usize {
        self.cube + 2 * self.border
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |name, reason: &str| {
            Err(Error::InvalidParam {
                name,
                reason: reason.to_string(),
            })
        };
        let (zero, one) = (T::zero(), T::one());
        if self.cube == 0 {
            return invalid("cube", "must be at least 1");
        }
        if !(self.rho_hat > zero && self.rho_hat < one) {
            return invalid("rho_hat", "must lie in (0, 1)");
        }
        if !(self.delta >= zero && self.delta <= one) {
            return invalid("delta", "must lie in [0, 1]");
        }
        if !(self.gamma > zero && self.gamma <= one) {
            return invalid("gamma", "must lie in (0, 1]");
        }
        if self.iterations == 0 {
            return invalid("iterations", "must be at least 1");
        }
        Ok(())
    }
}
