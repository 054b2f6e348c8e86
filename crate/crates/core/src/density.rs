//! Univariate density estimation on a truncated support.
//!
//! Continuous samples go through a Gaussian kernel estimator evaluated at the
//! midpoints of an equal-width partition of the support; discrete samples get
//! one unit-width bin per integer between the smallest and largest
//! observation. Every grid carries the sample median so renderers can mark it.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const DEFAULT_COVERAGE: f64 = 0.99;
pub const DEFAULT_BINS: usize = 128;

/// Kernel contributions beyond this many bandwidths are skipped; the
/// Gaussian tail there is below 2e-22.
const KERNEL_CUTOFF: f64 = 10.0;

/// Widest integer range a discrete grid may span.
const MAX_DISCRETE_BINS: i64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Continuous,
    Discrete,
}

/// A nonempty collection of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    kind: Kind,
}

impl Sample {
    pub fn new(values: Vec<f64>, kind: Kind) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSample("empty sample".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSample(format!("non-finite value {v}")));
        }
        if kind == Kind::Discrete {
            if let Some(v) = values.iter().find(|v| !is_integer(**v)) {
                return Err(Error::InvalidSample(format!(
                    "non-integer value {v} in discrete sample"
                )));
            }
        }
        Ok(Self { values, kind })
    }

    pub fn continuous(values: Vec<f64>) -> Result<Self> {
        Self::new(values, Kind::Continuous)
    }

    pub fn discrete(values: Vec<f64>) -> Result<Self> {
        Self::new(values, Kind::Discrete)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    /// The sub-sample at `indices`, or `None` when `indices` is empty.
    pub fn subset(&self, indices: &[usize]) -> Option<Sample> {
        if indices.is_empty() {
            return None;
        }
        Some(Sample {
            values: indices.iter().map(|&i| self.values[i]).collect(),
            kind: self.kind,
        })
    }

    /// Concatenation of two samples of the same kind.
    pub fn pooled(&self, other: &Sample) -> Result<Sample> {
        if self.kind != other.kind {
            return Err(Error::InvalidSample(
                "cannot pool continuous and discrete samples".into(),
            ));
        }
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Ok(Sample {
            values,
            kind: self.kind,
        })
    }
}

fn is_integer(v: f64) -> bool {
    v.is_finite() && v.fract() == 0.0 && v.abs() < 9.0e15
}

/// Truncation interval of a density.
///
/// `coverage` is the share of the sample the interval was built to contain.
/// An end of the interval is *hard* when it is a genuine limit of the
/// support: both ends when `coverage == 1`, the lower end when it was
/// supplied as a known lower bound. The kernel estimator reflects mass at
/// hard ends instead of letting it leak past them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportBounds {
    pub lo: f64,
    pub hi: f64,
    pub coverage: f64,
    pub lower_known: bool,
}

impl SupportBounds {
    pub fn new(lo: f64, hi: f64, coverage: f64) -> Result<Self> {
        if !(coverage > 0.0 && coverage <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "coverage {coverage} outside (0, 1]"
            )));
        }
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::DegenerateSupport { lo, hi });
        }
        Ok(Self {
            lo,
            hi,
            coverage,
            lower_known: false,
        })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, value: f64) -> bool {
        value >= self.lo && value <= self.hi
    }

    pub fn lower_is_hard(&self) -> bool {
        self.lower_known || self.coverage == 1.0
    }

    pub fn upper_is_hard(&self) -> bool {
        self.coverage == 1.0
    }

    /// Smallest interval containing both `self` and `other`.
    pub fn union(&self, other: &SupportBounds) -> SupportBounds {
        SupportBounds {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
            coverage: self.coverage.max(other.coverage),
            lower_known: self.lower_known && other.lower_known,
        }
    }
}

/// Empirical quantile of an ascending slice, linear interpolation between
/// order statistics (`x[(n-1)q]`).
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let n = sorted.len();
    if n == 1 || q <= 0.0 {
        return sorted[0];
    }
    if q >= 1.0 {
        return sorted[n - 1];
    }
    let h = (n - 1) as f64 * q;
    let i = h.floor() as usize;
    let frac = h - i as f64;
    if i + 1 >= n {
        return sorted[n - 1];
    }
    sorted[i] + frac * (sorted[i + 1] - sorted[i])
}

/// Interval holding the central `coverage` share of the sample, or, with a
/// known lower limit, everything from that limit up to the `coverage`
/// quantile.
pub fn truncation_bounds(
    sample: &Sample,
    coverage: f64,
    lower_known: Option<f64>,
) -> Result<SupportBounds> {
    if !(coverage > 0.0 && coverage <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "coverage {coverage} outside (0, 1]"
        )));
    }
    let sorted = sample.sorted();
    let (lo, hi) = match lower_known {
        Some(lo) => (lo, quantile_sorted(&sorted, coverage)),
        None => {
            let tail = (1.0 - coverage) / 2.0;
            (
                quantile_sorted(&sorted, tail),
                quantile_sorted(&sorted, 1.0 - tail),
            )
        }
    };
    let mut bounds = SupportBounds::new(lo, hi, coverage)?;
    bounds.lower_known = lower_known.is_some();
    Ok(bounds)
}

/// Order-statistic median; the mean of the two central values for even `n`.
pub fn sample_median(sample: &Sample) -> f64 {
    median_sorted(&sample.sorted())
}

fn median_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Silverman's rule of thumb, `0.9 · min(sd, IQR/1.34) · n^(-1/5)`.
///
/// When the spread measure collapses to zero the fallback chain is sd, then
/// the magnitude of the first observation, then 1.
pub fn silverman_bandwidth(sample: &Sample) -> f64 {
    let sorted = sample.sorted();
    let n = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / n;
    let sd = if sorted.len() > 1 {
        (sorted.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);
    let mut spread = sd.min(iqr / 1.34);
    if spread <= 0.0 {
        spread = sd;
    }
    if spread <= 0.0 {
        spread = sample.values()[0].abs();
    }
    if spread <= 0.0 {
        spread = 1.0;
    }
    0.9 * spread * n.powf(-0.2)
}

/// A density evaluated over an ordered bin partition.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    kind: Kind,
    edges: Vec<f64>,
    values: Vec<f64>,
    counts: Option<Vec<u64>>,
    median: f64,
    n: usize,
    coverage: f64,
}

impl DensityGrid {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    /// Density height per bin (continuous) or probability mass (discrete).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Per-integer counts backing a discrete grid's masses.
    pub fn counts(&self) -> Option<&[u64]> {
        self.counts.as_deref()
    }

    pub fn median(&self) -> f64 {
        self.median
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_bins(&self) -> usize {
        self.values.len()
    }

    pub fn bin_width(&self, m: usize) -> f64 {
        self.edges[m + 1] - self.edges[m]
    }

    pub fn midpoint(&self, m: usize) -> f64 {
        0.5 * (self.edges[m] + self.edges[m + 1])
    }

    pub fn midpoints(&self) -> Vec<f64> {
        (0..self.n_bins()).map(|m| self.midpoint(m)).collect()
    }

    /// The interval spanned by the bin edges.
    pub fn bounds(&self) -> SupportBounds {
        SupportBounds {
            lo: self.edges[0],
            hi: self.edges[self.edges.len() - 1],
            coverage: self.coverage,
            lower_known: false,
        }
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Index of the largest value; the first one on ties.
    pub fn mode_bin(&self) -> usize {
        let mut best = 0;
        for (m, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = m;
            }
        }
        best
    }

    /// `Σ value · width` for continuous grids, `Σ mass` for discrete ones.
    pub fn total_mass(&self) -> f64 {
        match self.kind {
            Kind::Continuous => (0..self.n_bins())
                .map(|m| self.values[m] * self.bin_width(m))
                .sum(),
            Kind::Discrete => self.values.iter().sum(),
        }
    }
}

/// Gaussian kernel estimate at the midpoints of `n_bins` equal-width bins
/// over `bounds`, rescaled so the Riemann sum over the bounds is one.
///
/// `bandwidth` defaults to [`silverman_bandwidth`]. Observations near a hard
/// end of `bounds` are mirrored across it.
pub fn estimate_continuous(
    sample: &Sample,
    bounds: &SupportBounds,
    n_bins: usize,
    bandwidth: Option<f64>,
) -> Result<DensityGrid> {
    if n_bins < 2 {
        return Err(Error::InvalidParameter(format!(
            "n_bins must be at least 2, got {n_bins}"
        )));
    }
    if let Some(h) = bandwidth {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "bandwidth must be positive, got {h}"
            )));
        }
    }
    if sample.kind() != Kind::Continuous {
        return Err(Error::InvalidSample(
            "continuous estimator needs a continuous sample".into(),
        ));
    }
    let h = bandwidth.unwrap_or_else(|| silverman_bandwidth(sample));
    let (lo, hi) = (bounds.lo, bounds.hi);
    let width = (hi - lo) / n_bins as f64;
    let mut edges: Vec<f64> = (0..=n_bins).map(|i| lo + i as f64 * width).collect();
    edges[n_bins] = hi;

    let reach = KERNEL_CUTOFF * h;
    let mut points = sample.sorted();
    let mut mirrored = Vec::new();
    if bounds.lower_is_hard() {
        mirrored.extend(
            points
                .iter()
                .filter(|&&x| x >= lo && x - lo <= reach)
                .map(|&x| 2.0 * lo - x),
        );
    }
    if bounds.upper_is_hard() {
        mirrored.extend(
            points
                .iter()
                .filter(|&&x| x <= hi && hi - x <= reach)
                .map(|&x| 2.0 * hi - x),
        );
    }
    points.extend(mirrored);
    points.sort_by(f64::total_cmp);

    let scale = 1.0 / (sample.len() as f64 * h * (2.0 * PI).sqrt());
    let mut values: Vec<f64> = (0..n_bins)
        .map(|m| {
            let x = 0.5 * (edges[m] + edges[m + 1]);
            let start = points.partition_point(|&p| p < x - reach);
            let end = points.partition_point(|&p| p <= x + reach);
            let sum: f64 = points[start..end]
                .iter()
                .map(|&p| {
                    let u = (x - p) / h;
                    (-0.5 * u * u).exp()
                })
                .sum();
            sum * scale
        })
        .collect();

    let mass: f64 = (0..n_bins)
        .map(|m| values[m] * (edges[m + 1] - edges[m]))
        .sum();
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(Error::DegenerateDensity { lo, hi });
    }
    for v in &mut values {
        *v /= mass;
    }

    Ok(DensityGrid {
        kind: Kind::Continuous,
        edges,
        values,
        counts: None,
        median: sample_median(sample),
        n: sample.len(),
        coverage: bounds.coverage,
    })
}

/// Relative frequency of every integer from the sample minimum to maximum.
pub fn estimate_discrete(sample: &Sample) -> Result<DensityGrid> {
    let lo = sample.min();
    let hi = sample.max();
    estimate_discrete_over(sample, lo as i64, hi as i64)
}

/// Relative frequencies over the integer range `[lo, hi]`, which must
/// contain every observation. Used to put several discrete samples on one
/// bin grid.
pub fn estimate_discrete_over(sample: &Sample, lo: i64, hi: i64) -> Result<DensityGrid> {
    if let Some(v) = sample.values().iter().find(|v| !is_integer(**v)) {
        return Err(Error::InvalidSample(format!(
            "non-integer value {v} in discrete sample"
        )));
    }
    if hi < lo {
        return Err(Error::InvalidParameter(format!(
            "empty integer range [{lo}, {hi}]"
        )));
    }
    let span = hi - lo + 1;
    if span > MAX_DISCRETE_BINS {
        return Err(Error::InvalidSample(format!(
            "integer range [{lo}, {hi}] too wide for a discrete grid"
        )));
    }
    let mut counts = vec![0u64; span as usize];
    for &v in sample.values() {
        let k = v as i64;
        if k < lo || k > hi {
            return Err(Error::OutOfBounds {
                value: v,
                lo: lo as f64,
                hi: hi as f64,
            });
        }
        counts[(k - lo) as usize] += 1;
    }
    let n = sample.len();
    let values = counts.iter().map(|&c| c as f64 / n as f64).collect();
    let edges = (0..=span).map(|i| (lo + i) as f64 - 0.5).collect();
    Ok(DensityGrid {
        kind: Kind::Discrete,
        edges,
        values,
        counts: Some(counts),
        median: sample_median(sample),
        n,
        coverage: 1.0,
    })
}

/// Continuous or discrete estimate, whichever matches the sample kind.
pub fn estimate(
    sample: &Sample,
    bounds: &SupportBounds,
    n_bins: usize,
    bandwidth: Option<f64>,
) -> Result<DensityGrid> {
    match sample.kind() {
        Kind::Continuous => estimate_continuous(sample, bounds, n_bins, bandwidth),
        Kind::Discrete => {
            let lo = (bounds.lo + 0.5).ceil() as i64;
            let hi = (bounds.hi - 0.5).floor() as i64;
            estimate_discrete_over(sample, lo, hi)
        }
    }
}

/// Bounds for a discrete sample: half a unit beyond the extreme integers.
pub fn discrete_bounds(sample: &Sample) -> Result<SupportBounds> {
    SupportBounds::new(sample.min() - 0.5, sample.max() + 0.5, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Exp, StandardNormal, Uniform};

    fn normal_draws(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect()
    }

    #[test]
    fn sample_rejects_bad_values() {
        assert!(Sample::continuous(vec![]).is_err());
        assert!(Sample::continuous(vec![1.0, f64::NAN]).is_err());
        assert!(Sample::continuous(vec![f64::INFINITY]).is_err());
        assert!(Sample::discrete(vec![1.0, 2.5]).is_err());
        assert!(Sample::discrete(vec![1.0, -2.0]).is_ok());
    }

    #[test]
    fn quantile_interpolates_between_order_statistics() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&xs, 0.0), 1.0);
        assert_eq!(quantile_sorted(&xs, 1.0), 4.0);
        assert_eq!(quantile_sorted(&xs, 0.5), 2.5);
        assert!((quantile_sorted(&xs, 0.25) - 1.75).abs() < 1e-15);
    }

    #[test]
    fn median_conventions() {
        assert_eq!(
            sample_median(&Sample::continuous(vec![3.0, 1.0, 2.0]).unwrap()),
            2.0
        );
        assert_eq!(
            sample_median(&Sample::continuous(vec![4.0, 1.0, 3.0, 2.0]).unwrap()),
            2.5
        );
    }

    #[test]
    fn median_of_normal_draws() {
        let draws = normal_draws(10_000, 3);
        let mut sorted = draws.clone();
        sorted.sort_by(f64::total_cmp);
        let oracle = 0.5 * (sorted[4999] + sorted[5000]);
        let m = sample_median(&Sample::continuous(draws).unwrap());
        assert_eq!(m, oracle);
        assert!(m.abs() < 0.05);
    }

    #[test]
    fn normal_truncation_bounds() {
        let s = Sample::continuous(normal_draws(100_000, 11)).unwrap();
        let b = truncation_bounds(&s, 0.95, None).unwrap();
        assert!((b.lo + 1.959964).abs() < 0.05, "{b:?}");
        assert!((b.hi - 1.959964).abs() < 0.05, "{b:?}");
    }

    #[test]
    fn full_coverage_is_sample_range() {
        let s = Sample::continuous(vec![0.3, -2.0, 5.5, 1.0]).unwrap();
        let b = truncation_bounds(&s, 1.0, None).unwrap();
        assert_eq!((b.lo, b.hi), (-2.0, 5.5));
        assert!(b.lower_is_hard() && b.upper_is_hard());
    }

    #[test]
    fn known_lower_bound_uses_upper_percentile() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let exp = Exp::new(1.0).unwrap();
        let draws: Vec<f64> = (0..5000).map(|_| rng.sample(exp)).collect();
        let mut sorted = draws.clone();
        sorted.sort_by(f64::total_cmp);
        // (n-1)·0.99 = 4949.01
        let oracle = sorted[4949] + 0.01 * (sorted[4950] - sorted[4949]);
        let b = truncation_bounds(&Sample::continuous(draws).unwrap(), 0.99, Some(0.0)).unwrap();
        assert_eq!(b.lo, 0.0);
        assert!((b.hi - oracle).abs() < 1e-12);
        assert!(b.lower_is_hard() && !b.upper_is_hard());
    }

    #[test]
    fn truncation_errors() {
        let s = Sample::continuous(vec![1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            truncation_bounds(&s, 0.9, None),
            Err(Error::DegenerateSupport { .. })
        ));
        let s = Sample::continuous(vec![1.0, 2.0]).unwrap();
        assert!(truncation_bounds(&s, 0.0, None).is_err());
        assert!(truncation_bounds(&s, 1.5, None).is_err());
    }

    #[test]
    fn uniform_estimate_is_flat() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let u = Uniform::new(-1.0, 1.0);
        let draws: Vec<f64> = (0..100_000).map(|_| rng.sample(u)).collect();
        let s = Sample::continuous(draws).unwrap();
        let b = SupportBounds::new(-1.0, 1.0, 1.0).unwrap();
        let g = estimate_continuous(&s, &b, 64, None).unwrap();
        for v in g.values() {
            assert!((v - 0.5).abs() < 0.05, "bin value {v}");
        }
        assert!((g.total_mass() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn bimodal_estimate_recovers_modes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1600);
        let draws: Vec<f64> = (0..1600)
            .map(|_| {
                let z: f64 = rng.sample(StandardNormal);
                if rng.gen_bool(0.5) {
                    z - 1.5
                } else {
                    z + 1.5
                }
            })
            .collect();
        let s = Sample::continuous(draws).unwrap();
        let b = truncation_bounds(&s, 0.99, None).unwrap();
        let g = estimate_continuous(&s, &b, 128, None).unwrap();
        let v = g.values();
        let mut peaks: Vec<usize> = (1..v.len() - 1)
            .filter(|&m| v[m] > v[m - 1] && v[m] >= v[m + 1])
            .collect();
        peaks.sort_by(|a, b| v[*b].total_cmp(&v[*a]));
        let mut modes: Vec<f64> = peaks[..2].iter().map(|&m| g.midpoint(m)).collect();
        modes.sort_by(f64::total_cmp);
        assert!((modes[0] + 1.5).abs() < 0.5, "{modes:?}");
        assert!((modes[1] - 1.5).abs() < 0.5, "{modes:?}");
    }

    #[test]
    fn continuous_errors() {
        let s = Sample::continuous(vec![0.0, 1.0, 2.0]).unwrap();
        let b = SupportBounds::new(0.0, 2.0, 1.0).unwrap();
        assert!(estimate_continuous(&s, &b, 1, None).is_err());
        assert!(estimate_continuous(&s, &b, 8, Some(0.0)).is_err());
        assert!(estimate_continuous(&s, &b, 8, Some(-1.0)).is_err());
        let d = Sample::discrete(vec![0.0, 1.0]).unwrap();
        assert!(estimate_continuous(&d, &b, 8, None).is_err());
    }

    #[test]
    fn mass_far_outside_bounds_is_degenerate() {
        let s = Sample::continuous(vec![1000.0, 1001.0]).unwrap();
        let b = SupportBounds::new(0.0, 1.0, 0.99).unwrap();
        assert!(matches!(
            estimate_continuous(&s, &b, 8, Some(0.1)),
            Err(Error::DegenerateDensity { .. })
        ));
    }

    #[test]
    fn discrete_counts() {
        let g = estimate_discrete(&Sample::discrete(vec![0.0, 0.0, 1.0, 2.0]).unwrap()).unwrap();
        assert_eq!(g.values(), &[0.5, 0.25, 0.25]);
        assert_eq!(g.edges(), &[-0.5, 0.5, 1.5, 2.5]);
        assert_eq!(g.median(), 0.5);

        let g = estimate_discrete(&Sample::discrete(vec![5.0, 5.0, 5.0]).unwrap()).unwrap();
        assert_eq!(g.values(), &[1.0]);
        assert_eq!(g.median(), 5.0);

        let g = estimate_discrete(&Sample::discrete(vec![0.0, 3.0]).unwrap()).unwrap();
        assert_eq!(g.values(), &[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(g.counts().unwrap(), &[1, 0, 0, 1]);
    }

    #[test]
    fn discrete_range_guard() {
        let s = Sample::discrete(vec![0.0, 1e12]).unwrap();
        assert!(estimate_discrete(&s).is_err());
        let s = Sample::discrete(vec![3.0]).unwrap();
        assert!(estimate_discrete_over(&s, 4, 6).is_err());
    }

    #[test]
    fn grids_are_deterministic() {
        let s = Sample::continuous(normal_draws(2000, 8)).unwrap();
        let b = truncation_bounds(&s, 0.99, None).unwrap();
        let a = estimate_continuous(&s, &b, 128, None).unwrap();
        let c = estimate_continuous(&s, &b, 128, None).unwrap();
        assert_eq!(a, c);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn values() -> impl Strategy<Value = Vec<f64>> {
            prop::collection::vec(-1e3f64..1e3, 2..200)
        }

        proptest! {
            #[test]
            fn continuous_grid_integrates_to_one(xs in values(), bins in 2usize..300, cov in 0.5f64..=1.0) {
                let s = Sample::continuous(xs).unwrap();
                if let Ok(b) = truncation_bounds(&s, cov, None) {
                    let g = estimate_continuous(&s, &b, bins, None).unwrap();
                    prop_assert!((g.total_mass() - 1.0).abs() <= 1e-6);
                    prop_assert!(g.values().iter().all(|v| *v >= 0.0));
                }
            }

            #[test]
            fn discrete_grid_counts_are_exact(xs in prop::collection::vec(-50i32..50, 1..300)) {
                let s = Sample::discrete(xs.iter().map(|&x| x as f64).collect()).unwrap();
                let g = estimate_discrete(&s).unwrap();
                let counts = g.counts().unwrap();
                prop_assert_eq!(counts.iter().sum::<u64>(), xs.len() as u64);
                let span = xs.iter().max().unwrap() - xs.iter().min().unwrap() + 1;
                prop_assert_eq!(g.n_bins(), span as usize);
            }

            #[test]
            fn coverage_is_monotone(xs in values(), a in 0.05f64..1.0, b in 0.05f64..1.0) {
                let s = Sample::continuous(xs).unwrap();
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                if let (Ok(ba), Ok(bb)) = (truncation_bounds(&s, a, None), truncation_bounds(&s, b, None)) {
                    prop_assert!(bb.lo <= ba.lo && ba.hi <= bb.hi);
                }
            }

            #[test]
            fn median_within_range(xs in values()) {
                let s = Sample::continuous(xs).unwrap();
                let m = sample_median(&s);
                prop_assert!(s.min() <= m && m <= s.max());
            }
        }
    }
}
