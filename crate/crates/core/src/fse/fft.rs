//! Separable 3D DFT over a window buffer laid out with `p` fastest.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::Scalar;
use crate::window::WindowShape;

/// Planned forward and inverse 3D transforms for one window shape.
///
/// Plans are shared and immutable, so one instance can serve many threads.
/// The inverse is normalized by `1 / (M N P)`.
#[derive(Clone)]
pub struct Fft3<T: Scalar> {
    shape: WindowShape,
    forward: [Arc<dyn Fft<T>>; 3],
    inverse: [Arc<dyn Fft<T>>; 3],
}

impl<T: Scalar> std::fmt::Debug for Fft3<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fft3").field("shape", &self.shape).finish()
    }
}

impl<T: Scalar> Fft3<T> {
    pub fn new(shape: WindowShape) -> Self {
        let mut planner = FftPlanner::new();
        let lens = [shape.m, shape.n, shape.p];
        Fft3 {
            shape,
            forward: lens.map(|n| planner.plan_fft_forward(n)),
            inverse: lens.map(|n| planner.plan_fft_inverse(n)),
        }
    }

    #[inline]
    pub fn shape(&self) -> WindowShape {
        self.shape
    }

    pub fn forward(&self, data: &mut [Complex<T>]) {
        self.run(data, &self.forward);
    }

    pub fn inverse(&self, data: &mut [Complex<T>]) {
        self.run(data, &self.inverse);
        let scale = T::one() / T::from_usize(self.shape.len()).unwrap();
        for v in data.iter_mut() {
            *v = v.scale(scale);
        }
    }

    pub fn forward_real(&self, data: &[T]) -> Vec<Complex<T>> {
        let mut buf: Vec<Complex<T>> = data.iter().map(|&v| Complex::new(v, T::zero())).collect();
        self.forward(&mut buf);
        buf
    }

    fn run(&self, data: &mut [Complex<T>], plans: &[Arc<dyn Fft<T>>; 3]) {
        let WindowShape { m, n, p } = self.shape;
        assert_eq!(data.len(), self.shape.len(), "buffer does not match window shape");
        let scratch_len = plans.iter().map(|f| f.get_inplace_scratch_len()).max().unwrap_or(0);
        let mut scratch = vec![Complex::default(); scratch_len];

        // p is contiguous: every run of p samples is one lane.
        plans[2].process_with_scratch(data, &mut scratch);

        // n and m: gather lanes into a contiguous buffer, transform, scatter.
        let mut lanes = vec![Complex::default(); data.len()];
        if n > 1 {
            for mi in 0..m {
                for pi in 0..p {
                    let dst = (mi * p + pi) * n;
                    for ni in 0..n {
                        lanes[dst + ni] = data[(mi * n + ni) * p + pi];
                    }
                }
            }
            plans[1].process_with_scratch(&mut lanes, &mut scratch);
            for mi in 0..m {
                for pi in 0..p {
                    let src = (mi * p + pi) * n;
                    for ni in 0..n {
                        data[(mi * n + ni) * p + pi] = lanes[src + ni];
                    }
                }
            }
        }
        if m > 1 {
            let plane = n * p;
            for j in 0..plane {
                for mi in 0..m {
                    lanes[j * m + mi] = data[mi * plane + j];
                }
            }
            plans[0].process_with_scratch(&mut lanes, &mut scratch);
            for j in 0..plane {
                for mi in 0..m {
                    data[mi * plane + j] = lanes[j * m + mi];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn naive_dft(shape: WindowShape, x: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let mut out = vec![Complex::default(); shape.len()];
        for (ki, o) in out.iter_mut().enumerate() {
            let (k, l, q) = shape.coords(ki);
            for (si, v) in x.iter().enumerate() {
                let (a, b, c) = shape.coords(si);
                let phase = -2.0
                    * PI
                    * ((k * a) as f64 / shape.m as f64
                        + (l * b) as f64 / shape.n as f64
                        + (q * c) as f64 / shape.p as f64);
                *o += v * Complex::from_polar(1.0, phase);
            }
        }
        out
    }

    #[test]
    fn matches_naive_dft_on_uneven_shape() {
        let shape = WindowShape { m: 5, n: 4, p: 6 };
        let x: Vec<Complex<f64>> = (0..shape.len())
            .map(|i| Complex::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let fft = Fft3::new(shape);
        let mut fast = x.clone();
        fft.forward(&mut fast);
        let slow = naive_dft(shape, &x);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).norm() < 1e-10);
        }
        fft.inverse(&mut fast);
        for (a, b) in fast.iter().zip(&x) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn degenerate_axes() {
        let shape = WindowShape { m: 1, n: 3, p: 1 };
        let fft = Fft3::<f32>::new(shape);
        let spec = fft.forward_real(&[1.0, 2.0, 3.0]);
        assert!((spec[0].re - 6.0).abs() < 1e-6);
    }
}
