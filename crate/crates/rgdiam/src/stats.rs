//! Small statistical helpers used by the validation experiments and tests:
//! Kolmogorov-Smirnov distances, chi-squared statistics, total variation.

/// One-sample Kolmogorov-Smirnov distance between `samples` and a CDF.
pub fn ks_distance_to_cdf<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((f - i as f64 / n).abs());
    }
    d
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_unstable_by(|p, q| p.partial_cmp(q).unwrap());
    ys.sort_unstable_by(|p, q| p.partial_cmp(q).unwrap());
    let (na, nb) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < na && j < nb {
        let x = xs[i].min(ys[j]);
        while i < na && xs[i] <= x {
            i += 1;
        }
        while j < nb && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    d
}

/// Asymptotic p-value for the two-sample KS statistic (Kolmogorov limit law).
pub fn ks_two_sample_pvalue(d: f64, na: usize, nb: usize) -> f64 {
    let n_eff = (na as f64 * nb as f64) / (na as f64 + nb as f64);
    let x = d * n_eff.sqrt();
    if x < 1e-8 {
        return 1.0;
    }
    let mut p = 0.0;
    for k in 1..101 {
        let term = (-2.0 * (k as f64 * x).powi(2)).exp();
        p += if k % 2 == 1 { 2.0 * term } else { -2.0 * term };
    }
    p.clamp(0.0, 1.0)
}

/// Pearson chi-squared statistic of observed counts against expected counts.
pub fn chi2_statistic(observed: &[f64], expected: &[f64]) -> f64 {
    observed
        .iter()
        .zip(expected)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&o, &e)| (o - e) * (o - e) / e)
        .sum()
}

/// Two-sample chi-squared statistic over shared histogram bins
/// (counts may come from samples of different sizes).
pub fn chi2_two_sample(a: &[u64], b: &[u64]) -> (f64, usize) {
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let k1 = (nb as f64 / na as f64).sqrt();
    let k2 = (na as f64 / nb as f64).sqrt();
    let mut stat = 0.0;
    let mut df = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        if x + y == 0 {
            continue;
        }
        let num = k1 * x as f64 - k2 * y as f64;
        stat += num * num / (x + y) as f64;
        df += 1;
    }
    (stat, df.saturating_sub(1))
}

/// Upper critical value of the chi-squared distribution with `df` degrees of
/// freedom at the upper-tail standard-normal quantile `z` (Wilson-Hilferty).
///
/// z = 3.0902 corresponds to significance 1e-3.
pub fn chi2_critical(df: usize, z: f64) -> f64 {
    let k = df as f64;
    let a = 2.0 / (9.0 * k);
    k * (1.0 - a + z * a.sqrt()).powi(3)
}

/// Total variation distance between two empirical histograms given as counts
/// over the same bins.
pub fn tv_distance(a: &[u64], b: &[u64]) -> f64 {
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    if na == 0 || nb == 0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    0.5 * a
        .iter()
        .zip(b)
        .map(|(&x, &y)| (x as f64 / na as f64 - y as f64 / nb as f64).abs())
        .sum::<f64>()
}

/// Sample mean and (population, biased-n) standard deviation.
pub fn mean_and_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_distance_of_exact_uniform_grid_is_small() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let d = ks_distance_to_cdf(&xs, |x| x.clamp(0.0, 1.0));
        assert!(d <= 0.0006, "d = {d}");
    }

    #[test]
    fn ks_two_sample_identical_is_zero() {
        let xs = vec![1.0, 2.0, 3.0, 4.0];
        let ys = vec![4.0, 3.0, 2.0, 1.0];
        assert!(ks_two_sample(&xs, &ys).abs() < 1e-12);
    }

    #[test]
    fn ks_two_sample_known_value() {
        let xs = vec![1.0, 1.0, 4.0, 4.0];
        let ys = vec![1.0, 1.0, 1.0, 4.0];
        assert!((ks_two_sample(&xs, &ys) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn chi2_critical_reference_points() {
        // chi2_{0.999} for df = 10 is 29.59, for df = 63 about 103.4;
        // Wilson-Hilferty is good to ~1%.
        let c10 = chi2_critical(10, 3.0902);
        assert!((c10 - 29.59).abs() < 0.6, "{c10}");
        let c63 = chi2_critical(63, 3.0902);
        assert!((c63 - 103.4).abs() < 1.5, "{c63}");
    }

    #[test]
    fn tv_distance_extremes() {
        assert_eq!(tv_distance(&[10, 0], &[10, 0]), 0.0);
        assert_eq!(tv_distance(&[10, 0], &[0, 10]), 1.0);
    }

    #[test]
    fn kolmogorov_pvalue_sanity() {
        // d = 1.36 / sqrt(n_eff) is the classic 5% point.
        let p = ks_two_sample_pvalue(1.36 / (50.0f64).sqrt(), 100, 100);
        assert!((p - 0.05).abs() < 0.01, "{p}");
    }
}
