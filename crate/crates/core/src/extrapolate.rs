//! Richardson extrapolation of geometric ladders (`eps -> 0`, `m -> infinity`)
//! and growth-rate fitting for ladders that diverge.

use alloc::vec::Vec;

use num_complex::Complex64;

/// Power-law growth `value ~ sign * C * m^exponent` of a divergent ladder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Growth {
    pub exponent: f64,
    pub sign: f64,
}

/// Samples of a one-parameter limit and what was concluded from them.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonLimit {
    /// `(parameter, value)` pairs, strictly decreasing in `eps` or increasing in `m`.
    pub samples: Vec<(f64, Complex64)>,
    /// Richardson estimate of the limit; for a divergent ladder, the last sample.
    pub extrapolated: Complex64,
    pub error_estimate: f64,
    pub converged: bool,
    pub growth: Option<Growth>,
    /// Leading error exponent detected from the sample ratios (0 when not applicable).
    pub detected_order: u32,
}

impl EpsilonLimit {
    pub fn diverges(&self) -> bool {
        self.growth.is_some()
    }
}

fn mag(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// Leading exponent `p` in `v(h) = L + c h^p + ...` from consecutive differences of
/// a ladder with step ratio `ratio`: the median over all sample triples, rounded to
/// an integer in `1..=8`.
pub fn detect_order(values: &[Complex64], ratio: f64) -> u32 {
    let diffs: Vec<f64> = values.windows(2).map(|w| mag(w[1] - w[0])).collect();
    let scale = values.iter().map(|v| mag(*v)).fold(1.0, f64::max);
    let mut est: Vec<f64> = diffs
        .windows(2)
        .filter(|d| d[0] > 1e-13 * scale && d[1] > 1e-13 * scale)
        .map(|d| libm::log(d[0] / d[1]) / libm::log(ratio))
        .filter(|p| p.is_finite())
        .collect();
    if est.is_empty() {
        return 1;
    }
    est.sort_by(f64::total_cmp);
    let median = est[est.len() / 2];
    (libm::round(median) as i64).clamp(1, 8) as u32
}

/// Result of [`richardson`]: estimate, error estimate, detected order, and whether
/// the table contracted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extrapolation {
    pub value: Complex64,
    pub error_estimate: f64,
    pub order: u32,
    pub converged: bool,
}

/// Richardson table on samples taken at `h_j = h_0 / ratio^j`, eliminating error
/// terms `h^p, h^(p+1), ...` with `p` from [`detect_order`].
///
/// The reported entry is the last row of the column whose two bottom entries agree
/// best; the error estimate is the larger of that disagreement and the last
/// correction applied to reach the entry.
pub fn richardson(values: &[Complex64], ratio: f64) -> Extrapolation {
    let n = values.len();
    if n == 0 {
        return Extrapolation { value: Complex64::new(f64::NAN, f64::NAN), error_estimate: f64::INFINITY, order: 0, converged: false };
    }
    if n == 1 {
        return Extrapolation { value: values[0], error_estimate: f64::INFINITY, order: 0, converged: false };
    }
    let p = detect_order(values, ratio);

    // table[c][j] holds column c, row j (rows c..n valid).
    let mut table: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    table.push(values.to_vec());
    for c in 1..n {
        let prev = &table[c - 1];
        let factor = libm::pow(ratio, f64::from(p) + (c - 1) as f64) - 1.0;
        let mut col = alloc::vec![Complex64::new(0.0, 0.0); n];
        for j in c..n {
            col[j] = prev[j] + (prev[j] - prev[j - 1]) / factor;
        }
        table.push(col);
    }

    let raw_diff = mag(values[n - 1] - values[n - 2]);
    let mut best_c = 0;
    let mut best_err = raw_diff;
    for (c, col) in table.iter().enumerate().take(n - 1).skip(1) {
        let err = mag(col[n - 1] - col[n - 2]);
        if err < best_err {
            best_c = c;
            best_err = err;
        }
    }
    let value = table[best_c][n - 1];
    let correction = if best_c == 0 { 0.0 } else { mag(table[best_c][n - 1] - table[best_c - 1][n - 1]) };
    let error_estimate = best_err.max(correction);
    let scale = mag(value).max(1.0);
    let converged = value.re.is_finite()
        && value.im.is_finite()
        && (raw_diff <= 1e-12 * scale || best_err <= 0.5 * raw_diff);
    Extrapolation { value, error_estimate, order: p, converged }
}

/// Least-squares slope of `ln|v|` against `ln m`.
pub fn fit_exponent(params: &[f64], values: &[Complex64]) -> f64 {
    let pts: Vec<(f64, f64)> = params.iter().zip(values).map(|(m, v)| (libm::log(*m), libm::log(mag(*v)))).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Minimum growth factor between the last three levels for a ladder to count as divergent.
pub const DIVERGENCE_FACTOR: f64 = 1.5;

/// Limit of an `eps` ladder (`params` strictly decreasing, common ratio `ratio`).
pub fn epsilon_limit(samples: Vec<(f64, Complex64)>, ratio: f64) -> EpsilonLimit {
    let values: Vec<Complex64> = samples.iter().map(|s| s.1).collect();
    let ex = richardson(&values, ratio);
    EpsilonLimit {
        samples,
        extrapolated: ex.value,
        error_estimate: ex.error_estimate,
        converged: ex.converged,
        growth: None,
        detected_order: ex.order,
    }
}

/// Limit of an `m` ladder (`params` strictly increasing, common ratio `ratio`).
///
/// If the magnitudes grow monotonically by at least [`DIVERGENCE_FACTOR`] across
/// the last three levels the ladder is declared divergent: `converged` is false and
/// `growth` holds the exponent fitted over those levels and the sign of the
/// dominant component of the last value.
pub fn m_limit(samples: Vec<(f64, Complex64)>, ratio: f64) -> EpsilonLimit {
    let n = samples.len();
    if n >= 3 {
        let tail = &samples[n - 3..];
        let grows = tail.windows(2).all(|w| mag(w[1].1) >= DIVERGENCE_FACTOR * mag(w[0].1) && mag(w[0].1) > 0.0);
        if grows {
            let params: Vec<f64> = tail.iter().map(|s| s.0).collect();
            let vals: Vec<Complex64> = tail.iter().map(|s| s.1).collect();
            let exponent = fit_exponent(&params, &vals);
            let last = samples[n - 1].1;
            let dominant = if last.re.abs() >= last.im.abs() { last.re } else { last.im };
            let sign = if dominant < 0.0 { -1.0 } else { 1.0 };
            return EpsilonLimit {
                extrapolated: last,
                error_estimate: mag(last - samples[n - 2].1),
                converged: false,
                growth: Some(Growth { exponent, sign }),
                detected_order: 0,
                samples,
            };
        }
    }
    epsilon_limit(samples, ratio)
}
