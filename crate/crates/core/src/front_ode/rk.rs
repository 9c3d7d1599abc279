//! Dormand–Prince 5(4) with Hairer's fourth-order continuous extension.

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Interpolant of one accepted step on `[t0, t0 + h]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseStep<const N: usize> {
    pub t0: f64,
    pub h: f64,
    coeffs: [[f64; N]; 5],
}

impl<const N: usize> DenseStep<N> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Straight line from `y0` at `t0` to `y1` at `t0 + h`.
    pub fn linear(t0: f64, h: f64, y0: [f64; N], y1: [f64; N]) -> Self {
        let zero = [0.0; N];
        let r2 = core::array::from_fn(|i| y1[i] - y0[i]);
        DenseStep {
            t0,
            h,
            coeffs: [y0, r2, zero, zero, zero],
        }
    }

    pub fn eval(&self, t: f64) -> [f64; N] {
        let theta = (t - self.t0) / self.h;
        let theta1 = 1.0 - theta;
        let [r1, r2, r3, r4, r5] = &self.coeffs;
        core::array::from_fn(|i| r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i]))))
    }
}

/// Result of one trial step.
pub struct Trial<const N: usize> {
    pub y: [f64; N],
    pub f_end: [f64; N],
    /// Scaled RMS error estimate; accept when `<= 1`.
    pub err: f64,
    pub dense: DenseStep<N>,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    core::array::from_fn(|i| y[i] + h * terms.iter().map(|(a, k)| a * k[i]).sum::<f64>())
}

/// One Dormand–Prince step from `(t, y)` with `f0 = f(t, y)`.
///
/// Returns `None` if the right-hand side fails at any stage.
pub fn step<const N: usize, F>(
    f: &mut F,
    t: f64,
    y: &[f64; N],
    f0: &[f64; N],
    h: f64,
    rtol: f64,
    atol: f64,
) -> Option<Trial<N>>
where
    F: FnMut(f64, &[f64; N]) -> Option<[f64; N]>,
{
    let k1 = *f0;
    let k2 = f(t + C2 * h, &axpy(y, h, &[(A21, &k1)]))?;
    let k3 = f(t + C3 * h, &axpy(y, h, &[(A31, &k1), (A32, &k2)]))?;
    let k4 = f(t + C4 * h, &axpy(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = f(
        t + C5 * h,
        &axpy(y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
    )?;
    let k6 = f(
        t + h,
        &axpy(y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
    )?;
    let y1 = axpy(y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
    let k7 = f(t + h, &y1)?;

    let mut acc = 0.0;
    for i in 0..N {
        let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        let scale = atol + rtol * y[i].abs().max(y1[i].abs());
        acc += (e / scale) * (e / scale);
    }
    let err = (acc / N as f64).sqrt();
    if !err.is_finite() || y1.iter().any(|v| !v.is_finite()) {
        return None;
    }

    let r1 = *y;
    let r2: [f64; N] = core::array::from_fn(|i| y1[i] - y[i]);
    let r3: [f64; N] = core::array::from_fn(|i| h * k1[i] - r2[i]);
    let r4: [f64; N] = core::array::from_fn(|i| r2[i] - h * k7[i] - r3[i]);
    let r5: [f64; N] =
        core::array::from_fn(|i| h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]));
    Some(Trial {
        y: y1,
        f_end: k7,
        err,
        dense: DenseStep {
            t0: t,
            h,
            coeffs: [r1, r2, r3, r4, r5],
        },
    })
}

/// Step-size factor after a trial with error `err`.
pub fn step_factor(err: f64) -> f64 {
    if err == 0.0 {
        5.0
    } else {
        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
    }
}

/// Plain driver: integrate `f` from `t0` to `t1`.
#[cfg(test)]
pub fn integrate<const N: usize, F>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    rtol: f64,
    atol: f64,
) -> Option<(alloc::vec::Vec<DenseStep<N>>, [f64; N])>
where
    F: FnMut(f64, &[f64; N]) -> Option<[f64; N]>,
{
    let mut t = t0;
    let mut y = y0;
    let mut fy = f(t, &y)?;
    let mut h = (t1 - t0) * 1e-3;
    let mut steps = alloc::vec::Vec::new();
    while t < t1 {
        h = h.min(t1 - t);
        let trial = step(&mut f, t, &y, &fy, h, rtol, atol);
        match trial {
            Some(tr) if tr.err <= 1.0 => {
                t = if t + h >= t1 { t1 } else { t + h };
                y = tr.y;
                fy = tr.f_end;
                steps.push(tr.dense);
                h *= step_factor(tr.err);
            }
            Some(tr) => h *= step_factor(tr.err).min(1.0),
            None => h *= 0.25,
        }
        if h < 1e-14 * t1.abs().max(1.0) {
            return None;
        }
    }
    Some((steps, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_and_dense_output() {
        let (steps, y) = integrate(
            |_, y: &[f64; 2]| Some([y[1], -y[0]]),
            0.0,
            [0.0, 1.0],
            10.0,
            1e-10,
            1e-12,
        )
        .unwrap();
        assert!((y[0] - 10f64.sin()).abs() < 1e-8);
        assert!((y[1] - 10f64.cos()).abs() < 1e-8);
        for s in &steps {
            for k in 1..8 {
                let t = s.t0 + s.h * k as f64 / 8.0;
                let v = s.eval(t);
                assert!((v[0] - t.sin()).abs() < 1e-8, "dense output at {t}");
            }
        }
    }

    #[test]
    fn dense_output_is_fourth_order() {
        // single fixed steps on y' = y: interpolation error should drop ~32x per halving
        let mut f = |_: f64, y: &[f64; 1]| Some([y[0]]);
        let mut errs = [0.0; 2];
        for (j, h) in [0.2, 0.1].into_iter().enumerate() {
            let tr = step(&mut f, 0.0, &[1.0], &[1.0], h, 1e-6, 1e-6).unwrap();
            let t = 0.37 * h;
            errs[j] = (tr.dense.eval(t)[0] - t.exp()).abs();
        }
        let ratio = errs[0] / errs[1];
        assert!(ratio > 20.0, "ratio {ratio}");
    }
}
