//! Spatial weighting of window samples and its spectrum.

use num_complex::Complex;

use super::fft::Fft3;
use crate::error::{Error, Result};
use crate::params::FseParams;
use crate::scalar::Scalar;
use crate::window::{ExtrapolationVolume, SampleClass, WindowShape};

/// `rho_hat ^ d`, where `d` is the Euclidean distance from the window
/// centre `((M-1)/2, (N-1)/2, (P-1)/2)`.
pub fn decay_table<T: Scalar>(shape: WindowShape, rho_hat: T) -> Vec<T> {
    let half = |len: usize| T::from_usize(len - 1).unwrap() / T::lit(2.0);
    let (cm, cn, cp) = (half(shape.m), half(shape.n), half(shape.p));
    let mut out = Vec::with_capacity(shape.len());
    for m in 0..shape.m {
        let dm = T::from_usize(m).unwrap() - cm;
        for n in 0..shape.n {
            let dn = T::from_usize(n).unwrap() - cn;
            for p in 0..shape.p {
                let dp = T::from_usize(p).unwrap() - cp;
                out.push(rho_hat.powf((dm * dm + dn * dn + dp * dp).sqrt()));
            }
        }
    }
    out
}

/// Weights `w` over a window together with their DFT `W`.
#[derive(Debug, Clone)]
pub struct WeightField<T> {
    weights: Vec<T>,
    spectrum: Vec<Complex<T>>,
}

impl<T: Scalar> WeightField<T> {
    #[inline]
    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    #[inline]
    pub fn spectrum(&self) -> &[Complex<T>] {
        &self.spectrum
    }

    /// `W[0, 0, 0]`, the total weight.
    #[inline]
    pub fn dc(&self) -> T {
        self.spectrum[0].re
    }
}

/// Computes the weighting function for a classified window.
///
/// Available samples get the decay value, reconstructed ones `delta`
/// times the decay, and holes zero. Fails with [`Error::NoSupport`] when
/// all weights vanish.
pub fn build_weights<T: Scalar>(
    window: &ExtrapolationVolume<T>,
    params: &FseParams<T>,
    fft: &Fft3<T>,
) -> Result<WeightField<T>> {
    let decay = decay_table(window.shape(), params.rho_hat);
    build_weights_with_decay(window, &decay, params.delta, fft)
}

pub(crate) fn build_weights_with_decay<T: Scalar>(
    window: &ExtrapolationVolume<T>,
    decay: &[T],
    delta: T,
    fft: &Fft3<T>,
) -> Result<WeightField<T>> {
    assert_eq!(fft.shape(), window.shape(), "transform planned for another shape");
    let weights: Vec<T> = window
        .classes()
        .iter()
        .zip(decay)
        .map(|(class, &rho)| match class {
            SampleClass::Available => rho,
            SampleClass::Reconstructed => delta * rho,
            SampleClass::InnerHole | SampleClass::OuterHole => T::zero(),
        })
        .collect();
    if !weights.iter().any(|&w| w > T::zero()) {
        return Err(Error::NoSupport);
    }
    let spectrum = fft.forward_real(&weights);
    Ok(WeightField { weights, spectrum })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(classes: Vec<SampleClass>, shape: WindowShape) -> ExtrapolationVolume<f64> {
        ExtrapolationVolume::from_parts(shape, vec![0.0; shape.len()], classes).unwrap()
    }

    #[test]
    fn spot_values_on_default_window() {
        let shape = WindowShape::cubic(32);
        let fft = Fft3::new(shape);
        let params = FseParams::<f64>::default();
        let centre = shape.index(15, 15, 15);
        let mut classes = vec![SampleClass::Available; shape.len()];
        classes[shape.index(16, 16, 16)] = SampleClass::InnerHole;
        classes[shape.index(0, 0, 0)] = SampleClass::OuterHole;
        let a = build_weights(&window(classes.clone(), shape), &params, &fft).unwrap();
        let expected = 0.7f64.powf(0.75f64.sqrt());
        assert!((a.weights()[centre] - expected).abs() < 1e-12);
        assert!((a.weights()[centre] - 0.734262).abs() < 1e-6);
        assert_eq!(a.weights()[shape.index(16, 16, 16)], 0.0);
        assert_eq!(a.weights()[0], 0.0);

        classes[centre] = SampleClass::Reconstructed;
        let r = build_weights(&window(classes, shape), &params, &fft).unwrap();
        assert!((r.weights()[centre] - 0.5 * expected).abs() < 1e-12);
        assert!((r.weights()[centre] - 0.367131).abs() < 1e-6);
    }

    #[test]
    fn dc_is_total_weight_and_bounds_spectrum() {
        let shape = WindowShape { m: 8, n: 6, p: 5 };
        let fft = Fft3::new(shape);
        let classes = (0..shape.len())
            .map(|i| match i % 4 {
                0 => SampleClass::InnerHole,
                1 => SampleClass::Reconstructed,
                _ => SampleClass::Available,
            })
            .collect();
        let w = build_weights(&window(classes, shape), &FseParams::default(), &fft).unwrap();
        let total: f64 = w.weights().iter().sum();
        assert!((w.dc() - total).abs() < 1e-12);
        assert!(w.spectrum()[0].im.abs() < 1e-12);
        assert!(w.spectrum().iter().all(|v| v.norm() <= w.dc() + 1e-12));
    }

    #[test]
    fn all_holes_means_no_support() {
        let shape = WindowShape::cubic(4);
        let fft = Fft3::new(shape);
        let w = window(vec![SampleClass::OuterHole; 64], shape);
        assert!(matches!(
            build_weights(&w, &FseParams::default(), &fft),
            Err(Error::NoSupport)
        ));

        // Reconstructed-only support with delta = 0 is no support either.
        let w = window(vec![SampleClass::Reconstructed; 64], shape);
        let params = FseParams {
            delta: 0.0,
            ..FseParams::default()
        };
        assert!(matches!(build_weights(&w, &params, &fft), Err(Error::NoSupport)));
    }
}
