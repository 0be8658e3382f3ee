//! Direct model generation over explicit Fourier basis functions.
//!
//! Quadratic in the window size per iteration. Meant for small windows,
//! where it serves as a reference for the spectral implementation.

use num_complex::Complex;

use super::spectral::{check_finite, Selection};
use super::weights::WeightField;
use crate::error::{Error, Result};
use crate::params::FseParams;
use crate::scalar::Scalar;
use crate::window::{ExtrapolationVolume, WindowShape};

/// Output of [`model_sd`].
#[derive(Debug, Clone)]
pub struct SpatialModel<T> {
    /// Real part of the model over the window.
    pub model: Vec<T>,
    /// Complex model over the window.
    pub model_complex: Vec<Complex<T>>,
    pub selections: Vec<Selection<T>>,
    /// `sum w |r|^2` before the first and after every iteration.
    pub weighted_energy: Vec<T>,
}

/// `exp(j 2 pi i / len)` for `i in 0..len`.
fn unit_roots<T: Scalar>(len: usize) -> Vec<Complex<T>> {
    (0..len)
        .map(|i| {
            let angle = T::TAU() * T::from_usize(i).unwrap() / T::from_usize(len).unwrap();
            Complex::new(angle.cos(), angle.sin())
        })
        .collect()
}

struct Basis<T> {
    shape: WindowShape,
    roots: [Vec<Complex<T>>; 3],
}

impl<T: Scalar> Basis<T> {
    fn new(shape: WindowShape) -> Self {
        Basis {
            shape,
            roots: [unit_roots(shape.m), unit_roots(shape.n), unit_roots(shape.p)],
        }
    }

    /// `phi_(k,l,q)[m,n,p]`, both arguments given as window indices.
    #[inline]
    fn eval(&self, freq: usize, sample: usize) -> Complex<T> {
        let (k, l, q) = self.shape.coords(freq);
        let (m, n, p) = self.shape.coords(sample);
        self.roots[0][(k * m) % self.shape.m]
            * self.roots[1][(l * n) % self.shape.n]
            * self.roots[2][(q * p) % self.shape.p]
    }
}

/// Iterative model generation evaluated sample by sample.
///
/// Per iteration: weighted projection of the residual onto every basis
/// function, selection of the one with the largest weighted projection
/// energy (smallest index on ties), coefficient `gamma * p`, then model
/// and residual updates in the spatial domain.
pub fn model_sd<T: Scalar>(
    window: &ExtrapolationVolume<T>,
    weights: &WeightField<T>,
    params: &FseParams<T>,
) -> Result<SpatialModel<T>> {
    let shape = window.shape();
    let w = weights.weights();
    check_finite(window, weights)?;
    let support: Vec<usize> = (0..shape.len()).filter(|&i| w[i] > T::zero()).collect();
    if support.is_empty() {
        return Err(Error::NoSupport);
    }
    let basis = Basis::<T>::new(shape);

    // Denominator of the projection and the selection weight share the
    // same sum: sum |phi|^2 w over the window.
    let basis_energy: Vec<T> = (0..shape.len())
        .map(|f| {
            support
                .iter()
                .fold(T::zero(), |acc, &i| acc + basis.eval(f, i).norm_sqr() * w[i])
        })
        .collect();

    let mut residual: Vec<Complex<T>> = window
        .signal()
        .iter()
        .zip(w)
        .map(|(&s, &wi)| Complex::new(if wi > T::zero() { s } else { T::zero() }, T::zero()))
        .collect();
    let mut model = vec![Complex::<T>::default(); shape.len()];
    let energy = |r: &[Complex<T>]| support.iter().fold(T::zero(), |acc, &i| acc + w[i] * r[i].norm_sqr());

    let mut selections = Vec::with_capacity(params.iterations);
    let mut weighted_energy = vec![energy(&residual)];
    for _ in 0..params.iterations {
        let mut best = 0usize;
        let mut best_score = T::neg_infinity();
        let mut best_projection = Complex::default();
        for (f, &energy_f) in basis_energy.iter().enumerate() {
            let numerator = support.iter().fold(Complex::<T>::default(), |acc, &i| {
                acc + residual[i] * basis.eval(f, i).conj() * w[i]
            });
            let projection = numerator / energy_f;
            let score = projection.norm_sqr() * energy_f;
            if score > best_score {
                best_score = score;
                best = f;
                best_projection = projection;
            }
        }
        let coefficient = best_projection * params.gamma;
        for i in 0..shape.len() {
            let term = coefficient * basis.eval(best, i);
            model[i] += term;
            residual[i] -= term;
        }
        selections.push(Selection {
            index: shape.coords(best),
            coefficient,
        });
        weighted_energy.push(energy(&residual));
    }

    Ok(SpatialModel {
        model: model.iter().map(|c| c.re).collect(),
        model_complex: model,
        selections,
        weighted_energy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fse::fft::Fft3;
    use crate::fse::weights::build_weights;
    use crate::window::SampleClass;

    #[test]
    fn single_basis_function_is_found_first() {
        let shape = WindowShape::cubic(6);
        let fft = Fft3::new(shape);
        let signal = (0..shape.len())
            .map(|i| {
                let (m, _, _) = shape.coords(i);
                (std::f64::consts::TAU * m as f64 / 6.0).cos()
            })
            .collect();
        let win = ExtrapolationVolume::from_parts(shape, signal, vec![SampleClass::Available; shape.len()]).unwrap();
        let params = FseParams {
            iterations: 1,
            gamma: 1.0,
            ..FseParams::default()
        };
        let w = build_weights(&win, &params, &fft).unwrap();
        let out = model_sd(&win, &w, &params).unwrap();
        // cos splits evenly over (1,0,0) and (5,0,0); the smaller wins.
        assert_eq!(out.selections[0].index, (1, 0, 0));
    }

    #[test]
    fn first_iteration_on_constant_signal() {
        let shape = WindowShape::cubic(4);
        let fft = Fft3::new(shape);
        let mut classes = vec![SampleClass::Available; shape.len()];
        classes[shape.index(1, 1, 1)] = SampleClass::InnerHole;
        classes[shape.index(2, 1, 1)] = SampleClass::Reconstructed;
        let win = ExtrapolationVolume::from_parts(shape, vec![40.0; shape.len()], classes).unwrap();
        let params = FseParams {
            iterations: 1,
            ..FseParams::default()
        };
        let w = build_weights(&win, &params, &fft).unwrap();
        let out = model_sd(&win, &w, &params).unwrap();
        assert_eq!(out.selections[0].index, (0, 0, 0));
        for v in &out.model {
            assert!((v - 20.0f64).abs() < 1e-12);
        }
    }
}
