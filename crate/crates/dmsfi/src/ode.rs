//! Adaptive explicit Runge-Kutta 5(4) (Dormand-Prince) with dense output.

use crate::error::{Error, Result};

/// Dormand-Prince 5(4) integrator settings.
#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_step: f64,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self {
            rtol: 1e-8,
            atol: 1e-10,
            max_step: f64::INFINITY,
        }
    }
}

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

// b5 - b4: error estimator weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

// dense-output weights (Hairer's contd5)
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

impl Dopri5 {
    /// Integrate dy/dt = f(t, y) from t0 to t1 (t1 > t0).
    ///
    /// `samples` must be ascending within [t0, t1]; `sink(i, t, y)` is called
    /// once per sample with dense (4th-order interpolated) state. Returns the
    /// final state.
    pub fn integrate<F, S>(
        &self,
        mut f: F,
        t0: f64,
        t1: f64,
        y0: &[f64],
        samples: &[f64],
        mut sink: S,
    ) -> Result<Vec<f64>>
    where
        F: FnMut(f64, &[f64], &mut [f64]),
        S: FnMut(usize, f64, &[f64]),
    {
        let n = y0.len();
        let mut y = y0.to_vec();
        let mut t = t0;
        let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
        let mut ytmp = vec![0.0; n];
        let mut ynew = vec![0.0; n];
        let mut ydense = vec![0.0; n];
        let mut isample = 0;

        // emit samples that coincide with t0
        while isample < samples.len() && samples[isample] <= t0 {
            sink(isample, samples[isample], &y);
            isample += 1;
        }

        f(t, &y, &mut k[0]);
        let mut h = (1e-4 * (t1 - t0)).min(self.max_step);
        let mut nreject_row = 0u32;

        while t1 - t > 1e-13 * (t1 - t0) {
            h = h.min(t1 - t).min(self.max_step);
            if h < 1e-14 * (t1 - t0).abs() {
                return Err(Error::Integrator(format!(
                    "step size underflow at t = {t} (h = {h})"
                )));
            }
            // stages 2..7
            for s in 0..6 {
                for i in 0..n {
                    let mut acc = 0.0;
                    for (j, kj) in k.iter().enumerate().take(s + 1) {
                        let a = A[s][j];
                        if a != 0.0 {
                            acc += a * kj[i];
                        }
                    }
                    ytmp[i] = y[i] + h * acc;
                }
                let ts = t + C[s] * h;
                let (head, tail) = k.split_at_mut(s + 1);
                let _ = head;
                f(ts, &ytmp, &mut tail[0]);
            }
            // 5th-order solution is stage 7's ytmp (FSAL): recompute explicitly
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(6) {
                    let a = A[5][j];
                    if a != 0.0 {
                        acc += a * kj[i];
                    }
                }
                ynew[i] = y[i] + h * acc;
            }
            // error norm
            let mut err = 0.0;
            for i in 0..n {
                let mut e = 0.0;
                for (j, kj) in k.iter().enumerate() {
                    if E[j] != 0.0 {
                        e += E[j] * kj[i];
                    }
                }
                e *= h;
                let sc = self.atol + self.rtol * y[i].abs().max(ynew[i].abs());
                err += (e / sc) * (e / sc);
            }
            err = (err / n as f64).sqrt();

            if err <= 1.0 {
                // dense output for samples inside (t, t+h]
                if isample < samples.len() && samples[isample] <= t + h {
                    let mut rcont5 = vec![0.0; n];
                    for i in 0..n {
                        let mut acc = 0.0;
                        for (j, kj) in k.iter().enumerate() {
                            if D[j] != 0.0 {
                                acc += D[j] * kj[i];
                            }
                        }
                        rcont5[i] = h * acc;
                    }
                    while isample < samples.len() && samples[isample] <= t + h {
                        let th = (samples[isample] - t) / h;
                        let th1 = 1.0 - th;
                        for i in 0..n {
                            let ydiff = ynew[i] - y[i];
                            let bspl = h * k[0][i] - ydiff;
                            let r4 = ydiff - h * k[6][i] - bspl;
                            ydense[i] = y[i]
                                + th * (ydiff + th1 * (bspl + th * (r4 + th1 * rcont5[i])));
                        }
                        sink(isample, samples[isample], &ydense);
                        isample += 1;
                    }
                }
                t += h;
                y.copy_from_slice(&ynew);
                k.swap(0, 6); // FSAL
                let fac = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
                h *= if nreject_row > 0 { fac.min(1.0) } else { fac };
                nreject_row = 0;
            } else {
                h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
                nreject_row += 1;
                if nreject_row > 50 {
                    return Err(Error::Integrator(format!(
                        "50 consecutive step rejections at t = {t}"
                    )));
                }
            }
        }
        // any trailing samples exactly at t1
        while isample < samples.len() {
            sink(isample, samples[isample], &y);
            isample += 1;
        }
        Ok(y)
    }
}
