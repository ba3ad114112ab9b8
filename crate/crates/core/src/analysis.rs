//! Statistical validation of cipher output: histogram, Shannon entropy,
//! adjacent-pixel correlation, chi-square uniformity, and Lyapunov-exponent
//! estimation from a scalar time series.

use thiserror::Error;

use crate::cipher::Image;

/// Pixel intensity counts, one bin per 8-bit value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: [u64; 256],
}

/// Adjacent-pixel pairing direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

/// Settings for the stretching-factor Lyapunov estimator.
#[derive(Debug, Clone, Copy)]
pub struct KantzConfig {
    /// Neighborhood radius, in the units of the series.
    pub epsilon: f64,
    /// Largest look-ahead distance evaluated.
    pub max_delta_n: usize,
    /// Inclusive fit-window bounds in delta-n for the slope fit.
    pub fit_lo: usize,
    pub fit_hi: usize,
    /// Temporal exclusion: indices within this distance of a reference
    /// point never count as its neighbors.
    pub theiler_window: usize,
}

impl KantzConfig {
    /// Common defaults with the neighborhood radius tied to the series
    /// spread: epsilon = 0.2 * standard deviation.
    pub fn for_series(series: &[f64]) -> Self {
        let n = series.len() as f64;
        let mean = series.iter().sum::<f64>() / n;
        let var = series.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        KantzConfig {
            epsilon: 0.2 * var.sqrt(),
            max_delta_n: 30,
            fit_lo: 1,
            fit_hi: 10,
            theiler_window: 10,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.epsilon > 0.0
            && self.epsilon.is_finite()
            && self.fit_lo >= 1
            && self.fit_lo < self.fit_hi
            && self.fit_hi <= self.max_delta_n
    }
}

/// One point of the stretching curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StretchingPoint {
    pub delta_n: usize,
    pub s: f64,
    /// Reference points skipped at this delta-n (empty neighborhood or
    /// zero mean separation).
    pub skipped_refs: usize,
}

/// Full statistics bundle for one image.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub entropy_bits: f64,
    pub corr_horizontal: f64,
    pub corr_vertical: f64,
    pub corr_diagonal: f64,
    pub histogram: Histogram,
    pub chi_square: f64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("correlation undefined: the {0} marginal series is constant")]
    ZeroVariance(&'static str),
    #[error("no reference point has a non-empty neighborhood; epsilon too small")]
    NoNeighbors,
    #[error("all neighbor separations are zero at delta_n = {delta_n}; series is degenerate")]
    LogOfZero { delta_n: usize },
    #[error("series too short: need more than {needed} samples, got {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("invalid estimator configuration")]
    BadConfig,
}

pub fn histogram(img: &Image) -> Histogram {
    let mut counts = [0u64; 256];
    for &px in &img.pixels {
        counts[px as usize] += 1;
    }
    Histogram { counts }
}

/// Shannon entropy of the empirical intensity distribution, in bits.
/// Zero-probability bins contribute nothing.
pub fn shannon_entropy(img: &Image) -> f64 {
    let h = histogram(img);
    let total = img.pixels.len() as f64;
    h.counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

/// Pearson correlation over all adjacent pixel pairs in one direction,
/// using population moments.
pub fn adjacent_correlation(img: &Image, direction: Direction) -> Result<f64, AnalysisError> {
    let (dr, dc) = match direction {
        Direction::Horizontal => (0usize, 1usize),
        Direction::Vertical => (1, 0),
        Direction::Diagonal => (1, 1),
    };
    let rows = img.height - dr;
    let cols = img.width - dc;
    if rows == 0 || cols == 0 {
        return Err(AnalysisError::SeriesTooShort {
            needed: 2,
            got: 1,
        });
    }
    let n = (rows * cols) as f64;
    let at = |r: usize, c: usize| img.pixels[r * img.width + c] as f64;

    let mut sum_x = 0.0;
    let mut sum_y = 0.0;
    for r in 0..rows {
        for c in 0..cols {
            sum_x += at(r, c);
            sum_y += at(r + dr, c + dc);
        }
    }
    let mean_x = sum_x / n;
    let mean_y = sum_y / n;

    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for r in 0..rows {
        for c in 0..cols {
            let x = at(r, c) - mean_x;
            let y = at(r + dr, c + dc) - mean_y;
            cov += x * y;
            var_x += x * x;
            var_y += y * y;
        }
    }
    if var_x == 0.0 {
        return Err(AnalysisError::ZeroVariance("first"));
    }
    if var_y == 0.0 {
        return Err(AnalysisError::ZeroVariance("second"));
    }
    Ok(cov / (var_x.sqrt() * var_y.sqrt()))
}

/// Chi-square statistic of a histogram against the uniform distribution
/// over 256 bins.
pub fn chi_square_uniformity(h: &Histogram) -> f64 {
    let total: u64 = h.counts.iter().sum();
    let expected = total as f64 / 256.0;
    h.counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// Runs every image statistic in one pass.
pub fn analyze(img: &Image) -> Result<AnalysisReport, AnalysisError> {
    let hist = histogram(img);
    Ok(AnalysisReport {
        entropy_bits: shannon_entropy(img),
        corr_horizontal: adjacent_correlation(img, Direction::Horizontal)?,
        corr_vertical: adjacent_correlation(img, Direction::Vertical)?,
        corr_diagonal: adjacent_correlation(img, Direction::Diagonal)?,
        chi_square: chi_square_uniformity(&hist),
        histogram: hist,
    })
}

/// Average logarithmic stretching of neighbor separations, evaluated for
/// each look-ahead distance 1..=max_delta_n.
///
/// A reference point contributes at a given delta-n only if its epsilon
/// neighborhood (temporal neighbors excluded) is non-empty and the mean
/// future separation is strictly positive; skipped reference points are
/// counted per curve point.
pub fn kantz_stretching_curve(
    series: &[f64],
    cfg: &KantzConfig,
) -> Result<Vec<StretchingPoint>, AnalysisError> {
    if !cfg.is_valid() {
        return Err(AnalysisError::BadConfig);
    }
    if series.len() <= cfg.max_delta_n + 1 {
        return Err(AnalysisError::SeriesTooShort {
            needed: cfg.max_delta_n + 1,
            got: series.len(),
        });
    }
    // Both reference points and neighbors must still have a sample
    // max_delta_n ahead.
    let usable = series.len() - cfg.max_delta_n;

    // Per reference point: neighbor index list, found once.
    let mut any_neighbors = false;
    let mut sums = vec![0.0f64; cfg.max_delta_n + 1];
    let mut used = vec![0usize; cfg.max_delta_n + 1];
    let mut skipped = vec![0usize; cfg.max_delta_n + 1];

    let mut neighbors: Vec<usize> = Vec::new();
    for n in 0..usable {
        neighbors.clear();
        for m in 0..usable {
            let temporal = n.abs_diff(m) <= cfg.theiler_window;
            if !temporal && (series[m] - series[n]).abs() <= cfg.epsilon {
                neighbors.push(m);
            }
        }
        if neighbors.is_empty() {
            for dn in 1..=cfg.max_delta_n {
                skipped[dn] += 1;
            }
            continue;
        }
        any_neighbors = true;
        for dn in 1..=cfg.max_delta_n {
            let mut sep = 0.0;
            for &m in &neighbors {
                sep += (series[m + dn] - series[n + dn]).abs();
            }
            let mean_sep = sep / neighbors.len() as f64;
            if mean_sep > 0.0 {
                sums[dn] += mean_sep.ln();
                used[dn] += 1;
            } else {
                skipped[dn] += 1;
            }
        }
    }

    if !any_neighbors {
        return Err(AnalysisError::NoNeighbors);
    }
    let mut curve = Vec::with_capacity(cfg.max_delta_n);
    for dn in 1..=cfg.max_delta_n {
        if used[dn] == 0 {
            return Err(AnalysisError::LogOfZero { delta_n: dn });
        }
        curve.push(StretchingPoint {
            delta_n: dn,
            s: sums[dn] / used[dn] as f64,
            skipped_refs: skipped[dn],
        });
    }
    Ok(curve)
}

/// Least-squares slope of y over x for a set of points.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, y) in points {
        num += (x - mean_x) * (y - mean_y);
        den += (x - mean_x) * (x - mean_x);
    }
    num / den
}

/// Lyapunov exponent estimate: the slope of the stretching curve over the
/// configured fit window, in nats per sample interval.
pub fn estimate_lyapunov(series: &[f64], cfg: &KantzConfig) -> Result<f64, AnalysisError> {
    let curve = kantz_stretching_curve(series, cfg)?;
    let window: Vec<(f64, f64)> = curve
        .iter()
        .filter(|p| p.delta_n >= cfg.fit_lo && p.delta_n <= cfg.fit_hi)
        .map(|p| (p.delta_n as f64, p.s))
        .collect();
    Ok(least_squares_slope(&window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::Image;

    fn img(width: usize, height: usize, pixels: Vec<u8>) -> Image {
        Image::new(width, height, pixels).unwrap()
    }

    #[test]
    fn histogram_constant_image() {
        let h = histogram(&img(2, 2, vec![0; 4]));
        assert_eq!(h.counts[0], 4);
        assert_eq!(h.counts[1..].iter().sum::<u64>(), 0);
    }

    #[test]
    fn histogram_conservation() {
        let pixels: Vec<u8> = (0..=255).collect();
        let h = histogram(&img(16, 16, pixels));
        assert!(h.counts.iter().all(|&c| c == 1));
        assert_eq!(h.counts.iter().sum::<u64>(), 256);
    }

    #[test]
    fn entropy_extremes() {
        assert_eq!(shannon_entropy(&img(4, 4, vec![7; 16])), 0.0);
        let uniform: Vec<u8> = (0..=255).collect();
        assert!((shannon_entropy(&img(16, 16, uniform)) - 8.0).abs() < 1e-12);
        let mut half = vec![0u8; 8];
        half.extend(vec![255u8; 8]);
        assert!((shannon_entropy(&img(4, 4, half)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn correlation_identical_rows() {
        // Rows alternate 0 / 255; horizontally X and Y are identical.
        let mut pixels = Vec::new();
        for r in 0..4 {
            let v = if r % 2 == 0 { 0 } else { 255 };
            pixels.extend(vec![v; 4]);
        }
        let rho = adjacent_correlation(&img(4, 4, pixels), Direction::Horizontal).unwrap();
        assert!((rho - 1.0).abs() < 1e-12);
    }

    #[test]
    fn correlation_checkerboard() {
        let mut pixels = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                pixels.push(if (r + c) % 2 == 0 { 0 } else { 255 });
            }
        }
        let rho = adjacent_correlation(&img(4, 4, pixels), Direction::Horizontal).unwrap();
        assert!((rho + 1.0).abs() < 1e-12);
    }

    #[test]
    fn correlation_zero_variance() {
        let e = adjacent_correlation(&img(4, 4, vec![9; 16]), Direction::Vertical);
        assert!(matches!(e, Err(AnalysisError::ZeroVariance(_))));
    }

    #[test]
    fn correlation_affine_relation_gives_unity() {
        // Second row is an exact positive-slope affine image of the first,
        // so the vertical correlation is 1.
        let row0: Vec<u8> = (0..32u32).map(|i| (2 * i) as u8).collect();
        let row1: Vec<u8> = row0.iter().map(|&x| 3 * x + 7).collect();
        let mut pixels = row0;
        pixels.extend(row1);
        let rho = adjacent_correlation(&img(32, 2, pixels), Direction::Vertical).unwrap();
        assert!((rho - 1.0).abs() < 1e-9, "rho = {rho}");
    }

    #[test]
    fn chi_square_uniform_is_zero() {
        let h = Histogram { counts: [4; 256] };
        assert_eq!(chi_square_uniformity(&h), 0.0);
    }

    #[test]
    fn chi_square_single_bin() {
        let mut counts = [0u64; 256];
        let n = 1024u64;
        counts[17] = n;
        let h = Histogram { counts };
        let expected = n as f64 * 255.0;
        assert!((chi_square_uniformity(&h) - expected).abs() < 1e-6);
    }

    #[test]
    fn constant_series_reports_log_of_zero() {
        let series = vec![0.5; 200];
        let cfg = KantzConfig {
            epsilon: 0.1,
            max_delta_n: 5,
            fit_lo: 1,
            fit_hi: 5,
            theiler_window: 2,
        };
        assert!(matches!(
            kantz_stretching_curve(&series, &cfg),
            Err(AnalysisError::LogOfZero { .. })
        ));
    }

    #[test]
    fn tiny_epsilon_reports_no_neighbors() {
        let series: Vec<f64> = (0..200).map(|i| i as f64).collect();
        let cfg = KantzConfig {
            epsilon: 1e-9,
            max_delta_n: 5,
            fit_lo: 1,
            fit_hi: 5,
            theiler_window: 0,
        };
        assert_eq!(
            kantz_stretching_curve(&series, &cfg),
            Err(AnalysisError::NoNeighbors)
        );
    }

    #[test]
    fn linear_ramp_has_zero_slope() {
        // x_n = n with epsilon covering every gap: separations are
        // delta-n independent, so the fitted exponent is exactly zero.
        let series: Vec<f64> = (0..300).map(|i| i as f64).collect();
        let cfg = KantzConfig {
            epsilon: 1000.0,
            max_delta_n: 8,
            fit_lo: 1,
            fit_hi: 8,
            theiler_window: 0,
        };
        let lambda = estimate_lyapunov(&series, &cfg).unwrap();
        assert!(lambda.abs() < 1e-12, "lambda = {lambda}");
    }

    /// Shift-map orbit built from an explicit bit reservoir, so the
    /// doubling never collapses to zero the way a plain f64 iteration
    /// would.
    pub(crate) fn doubling_map_series(len: usize, seed: u64) -> Vec<f64> {
        // xorshift64* bit generator; deterministic and dependency-free.
        let mut state = seed;
        let mut next_bit = {
            let mut buf = 0u64;
            let mut avail = 0u32;
            move || {
                if avail == 0 {
                    state ^= state >> 12;
                    state ^= state << 25;
                    state ^= state >> 27;
                    buf = state.wrapping_mul(0x2545F4914F6CDD1D);
                    avail = 64;
                }
                avail -= 1;
                (buf >> avail) & 1
            }
        };
        let mut bits: std::collections::VecDeque<u64> = (0..53).map(|_| next_bit()).collect();
        let mut series = Vec::with_capacity(len);
        for _ in 0..len {
            let mut x = 0.0f64;
            let mut w = 0.5f64;
            for &b in &bits {
                if b == 1 {
                    x += w;
                }
                w *= 0.5;
            }
            series.push(x);
            bits.pop_front();
            bits.push_back(next_bit());
        }
        series
    }

    #[test]
    fn doubling_map_slope_is_ln_two() {
        let series = doubling_map_series(5000, 0x9E3779B97F4A7C15);
        let cfg = KantzConfig {
            epsilon: 0.005,
            max_delta_n: 8,
            fit_lo: 1,
            fit_hi: 5,
            theiler_window: 10,
        };
        let lambda = estimate_lyapunov(&series, &cfg).unwrap();
        assert!(
            (lambda - std::f64::consts::LN_2).abs() <= 0.1,
            "lambda = {lambda}"
        );
    }

    #[test]
    fn white_noise_curve_is_flat() {
        // Decimating a shift-map orbit by 60 shifts strips all shared bits
        // between successive samples, leaving i.i.d. uniforms.
        let long: Vec<f64> = doubling_map_series(60 * 3000, 0xDEADBEEFCAFEF00D)
            .into_iter()
            .step_by(60)
            .collect();
        let cfg = KantzConfig {
            epsilon: 0.05,
            max_delta_n: 8,
            fit_lo: 1,
            fit_hi: 8,
            theiler_window: 2,
        };
        let lambda = estimate_lyapunov(&long, &cfg).unwrap();
        assert!(lambda.abs() <= 0.1, "lambda = {lambda}");
    }
}
