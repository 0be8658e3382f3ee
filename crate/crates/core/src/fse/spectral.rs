//! Model generation carried out entirely on DFT coefficients.
//!
//! Each iteration picks the frequency with the largest weighted residual
//! energy `|R_w|^2`, estimates its coefficient as `gamma * R_w / W[0]`,
//! adds `MNP * c` to the model spectrum and subtracts the weight spectrum,
//! cyclically shifted to the chosen frequency and scaled by `c`, from the
//! residual spectrum. Only the initial and final transforms touch the
//! spatial domain.

use num_complex::Complex;

use super::fft::Fft3;
use super::weights::WeightField;
use crate::error::{Error, Result};
use crate::params::FseParams;
use crate::scalar::Scalar;
use crate::window::{ExtrapolationVolume, WindowShape};

/// One basis function added to the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection<T> {
    /// Frequency index `(k, l, q)` along `(m, n, p)`.
    pub index: (usize, usize, usize),
    /// Expansion coefficient.
    pub coefficient: Complex<T>,
}

/// Energies tracked per iteration by [`model_fd_traced`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationTrace<T> {
    /// `sum w |r|^2` with `r = s - g` evaluated in the spatial domain.
    pub weighted_energy: T,
    /// `sum |r w|^2` evaluated in the spatial domain.
    pub spatial_energy: T,
    /// `sum |R_w|^2 / (M N P)` from the tracked residual spectrum.
    pub spectral_energy: T,
}

/// Model and weighted-residual spectra during iteration.
#[derive(Debug, Clone)]
pub struct SpectralState<T> {
    shape: WindowShape,
    iteration: usize,
    model: Vec<Complex<T>>,
    residual: Vec<Complex<T>>,
    selections: Vec<Selection<T>>,
    /// Argmax of `|residual|^2`, maintained while updating.
    best: usize,
}

impl<T: Scalar> SpectralState<T> {
    /// Zero model; residual spectrum is the DFT of `s * w`.
    pub fn new(window: &ExtrapolationVolume<T>, weights: &WeightField<T>, fft: &Fft3<T>) -> Result<Self> {
        let shape = window.shape();
        assert_eq!(fft.shape(), shape, "transform planned for another shape");
        check_finite(window, weights)?;
        if weights.dc() <= T::zero() {
            return Err(Error::NoSupport);
        }
        let weighted: Vec<T> = window
            .signal()
            .iter()
            .zip(weights.weights())
            .map(|(&s, &w)| if w > T::zero() { s * w } else { T::zero() })
            .collect();
        let residual = fft.forward_real(&weighted);
        let best = argmax_energy(&residual);
        Ok(SpectralState {
            shape,
            iteration: 0,
            model: vec![Complex::default(); shape.len()],
            residual,
            selections: Vec::new(),
            best,
        })
    }

    #[inline]
    pub fn iteration(&self) -> usize {
        self.iteration
    }

    #[inline]
    pub fn model_spectrum(&self) -> &[Complex<T>] {
        &self.model
    }

    #[inline]
    pub fn residual_spectrum(&self) -> &[Complex<T>] {
        &self.residual
    }

    #[inline]
    pub fn selections(&self) -> &[Selection<T>] {
        &self.selections
    }

    /// Adds one basis function to the model.
    pub fn step(&mut self, weights: &WeightField<T>, gamma: T) -> Selection<T> {
        let shape = self.shape;
        let u = self.best;
        let (ku, lu, qu) = shape.coords(u);
        let coefficient = self.residual[u] * (gamma / weights.dc());
        self.model[u] += coefficient * T::from_usize(shape.len()).unwrap();

        // R_w[k,l,q] -= c * W[(k-u) mod M, (l-v) mod N, (q-z) mod P]
        // Rows along p are split at the shift point so both halves are
        // contiguous slices; the next argmax is tracked on the fly.
        let spectrum = weights.spectrum();
        let p = shape.p;
        let (cr, ci) = (coefficient.re, coefficient.im);
        let mut best = 0usize;
        let mut best_energy = T::neg_infinity();
        for k in 0..shape.m {
            let ks = (k + shape.m - ku) % shape.m;
            for l in 0..shape.n {
                let ls = (l + shape.n - lu) % shape.n;
                let row = shape.index(k, l, 0);
                let src = shape.index(ks, ls, 0);
                let dst = &mut self.residual[row..row + p];
                let w = &spectrum[src..src + p];
                let (lo, hi) = dst.split_at_mut(qu);
                subtract_scaled(hi, &w[..p - qu], cr, ci);
                subtract_scaled(lo, &w[p - qu..], cr, ci);
                // Strict comparison in scan order keeps the smallest
                // (k, l, q) on ties.
                let row_max = dst.iter().fold(T::neg_infinity(), |m, r| m.max(r.norm_sqr()));
                if row_max > best_energy {
                    best_energy = row_max;
                    best = row + dst.iter().position(|r| r.norm_sqr() == row_max).unwrap_or(0);
                }
            }
        }
        self.best = best;
        self.iteration += 1;
        let sel = Selection {
            index: (ku, lu, qu),
            coefficient,
        };
        self.selections.push(sel);
        sel
    }

    /// Complex model `g` in the spatial domain.
    pub fn model_complex(&self, fft: &Fft3<T>) -> Vec<Complex<T>> {
        let mut g = self.model.clone();
        fft.inverse(&mut g);
        g
    }

    /// Real part of the model in the spatial domain.
    pub fn model(&self, fft: &Fft3<T>) -> Vec<T> {
        self.model_complex(fft).into_iter().map(|c| c.re).collect()
    }

    /// `(s - g) * w` recomputed from the model spectrum. Independent of
    /// the tracked residual spectrum; used for consistency checks.
    pub fn weighted_residual(
        &self,
        window: &ExtrapolationVolume<T>,
        weights: &WeightField<T>,
        fft: &Fft3<T>,
    ) -> Vec<Complex<T>> {
        self.model_complex(fft)
            .into_iter()
            .zip(window.signal())
            .zip(weights.weights())
            .map(|((g, &s), &w)| {
                if w > T::zero() {
                    (Complex::new(s, T::zero()) - g) * w
                } else {
                    Complex::default()
                }
            })
            .collect()
    }

    fn trace(&self, window: &ExtrapolationVolume<T>, weights: &WeightField<T>, fft: &Fft3<T>) -> IterationTrace<T> {
        let g = self.model_complex(fft);
        let mut weighted_energy = T::zero();
        let mut spatial_energy = T::zero();
        for ((g, &s), &w) in g.iter().zip(window.signal()).zip(weights.weights()) {
            if w > T::zero() {
                let r = (Complex::new(s, T::zero()) - g).norm_sqr();
                weighted_energy += w * r;
                spatial_energy += w * w * r;
            }
        }
        let total = self.residual.iter().fold(T::zero(), |acc, r| acc + r.norm_sqr());
        IterationTrace {
            weighted_energy,
            spatial_energy,
            spectral_energy: total / T::from_usize(self.shape.len()).unwrap(),
        }
    }
}

fn argmax_energy<T: Scalar>(values: &[Complex<T>]) -> usize {
    let mut best = 0;
    let mut best_energy = T::neg_infinity();
    for (i, v) in values.iter().enumerate() {
        let e = v.norm_sqr();
        if e > best_energy {
            best_energy = e;
            best = i;
        }
    }
    best
}

pub(crate) fn check_finite<T: Scalar>(window: &ExtrapolationVolume<T>, weights: &WeightField<T>) -> Result<()> {
    for (offset, (&s, &w)) in window.signal().iter().zip(weights.weights()).enumerate() {
        if w > T::zero() && !s.is_finite() {
            return Err(Error::NonFinite {
                offset,
                value: s.as_f64(),
            });
        }
    }
    Ok(())
}

/// `dst -= (cr + j ci) * src`, element-wise.
#[inline(always)]
fn subtract_scaled<T: Scalar>(dst: &mut [Complex<T>], src: &[Complex<T>], cr: T, ci: T) {
    for (r, s) in dst.iter_mut().zip(src) {
        r.re -= cr * s.re - ci * s.im;
        r.im -= cr * s.im + ci * s.re;
    }
}

/// Runs `params.iterations` spectral iterations and returns the real part
/// of the model over the whole window together with the final state.
pub fn model_fd<T: Scalar>(
    window: &ExtrapolationVolume<T>,
    weights: &WeightField<T>,
    params: &FseParams<T>,
    fft: &Fft3<T>,
) -> Result<(Vec<T>, SpectralState<T>)> {
    let mut state = SpectralState::new(window, weights, fft)?;
    for _ in 0..params.iterations {
        state.step(weights, params.gamma);
    }
    Ok((state.model(fft), state))
}

/// Output of [`model_fd_traced`]: model, final state and one trace entry
/// per iteration plus the initial one.
pub type TracedModel<T> = (Vec<T>, SpectralState<T>, Vec<IterationTrace<T>>);

/// [`model_fd`] that also records spatial and spectral residual energies
/// before the first and after every iteration. Costs one inverse
/// transform per iteration.
pub fn model_fd_traced<T: Scalar>(
    window: &ExtrapolationVolume<T>,
    weights: &WeightField<T>,
    params: &FseParams<T>,
    fft: &Fft3<T>,
) -> Result<TracedModel<T>> {
    let mut state = SpectralState::new(window, weights, fft)?;
    let mut trace = Vec::with_capacity(params.iterations + 1);
    trace.push(state.trace(window, weights, fft));
    for _ in 0..params.iterations {
        state.step(weights, params.gamma);
        trace.push(state.trace(window, weights, fft));
    }
    Ok((state.model(fft), state, trace))
}
