//! Deterministic branching-process numerics: survival fixed point, dual
//! parameter, finite-horizon survival recursion, the g function, and the
//! diameter prediction formulas for every density regime.

use std::collections::HashMap;

use serde::Serialize;

use crate::{Error, Result};

/// Default fixed-point tolerance; doubles carry it comfortably.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Residual of the survival fixed point, `1 - s - e^{-lambda s}`, evaluated
/// in a cancellation-free form so it stays meaningful near s = 0.
#[inline]
pub fn survival_residual(lambda: f64, s: f64) -> f64 {
    -s - (-lambda * s).exp_m1()
}

/// Survival probability of the Poisson(lambda) Galton-Watson process: the
/// unique positive root of `1 - s = e^{-lambda s}` for lambda > 1, and 0 at
/// or below the critical point.
///
/// Bisection on [tol, 1 - tol]; guaranteed bracketing, 128 iterations.
pub fn survival_probability(lambda: f64, tol: f64) -> f64 {
    if lambda <= 1.0 {
        return 0.0;
    }
    let mut lo = tol;
    let mut hi = 1.0 - tol;
    if survival_residual(lambda, lo) <= 0.0 {
        // Root below tol: indistinguishable from critical at this tolerance.
        return 0.0;
    }
    for _ in 0..128 {
        let mid = 0.5 * (lo + hi);
        if survival_residual(lambda, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Dual parameter `lambda* = lambda (1 - s) < 1`, the offspring mean of the
/// process conditioned on extinction; satisfies
/// `lambda* e^{-lambda*} = lambda e^{-lambda}`.
///
/// Computed as `lambda e^{-lambda s}`, which is exact at the fixed point and
/// stable even when `1 - s` underflows (large lambda).
pub fn dual_parameter(lambda: f64) -> Result<f64> {
    if lambda <= 1.0 {
        return Err(Error::Domain(format!(
            "dual parameter requires lambda > 1, got {lambda}"
        )));
    }
    let s = survival_probability(lambda, DEFAULT_TOL);
    let lambda_star = lambda * (-lambda * s).exp();
    let identity = (lambda_star * (-lambda_star).exp() - lambda * (-lambda).exp()).abs();
    if identity > 10.0 * DEFAULT_TOL {
        return Err(Error::Precision(format!(
            "duality identity residual {identity:.3e} exceeds {:.1e}",
            10.0 * DEFAULT_TOL
        )));
    }
    Ok(lambda_star)
}

/// Inverse of the duality map: the solution mu > 1 of
/// `mu e^{-mu} = lambda* e^{-lambda*}` for 0 < lambda* <= 1.
pub fn dual_inverse(lambda_star: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda_star) || lambda_star == 0.0 {
        return Err(Error::Domain(format!(
            "dual inverse requires 0 < lambda* <= 1, got {lambda_star}"
        )));
    }
    let target = lambda_star * (-lambda_star).exp();
    let f = |mu: f64| mu * (-mu).exp() - target; // decreasing for mu > 1
    let mut lo = 1.0;
    let mut hi = 2.0;
    while f(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::Precision("dual inverse bracket overflow".into()));
        }
    }
    for _ in 0..128 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Every scalar the diameter formulas need, computed once per (lambda, n).
#[derive(Clone, Debug, Serialize)]
pub struct BranchingParams {
    pub lambda: f64,
    /// eps = lambda - 1 (signed; negative below the critical point).
    pub eps: f64,
    /// Survival probability; 0 for lambda <= 1.
    pub s: f64,
    /// Dual parameter, defined only above the critical point.
    pub lambda_star: Option<f64>,
    /// delta = lambda - 1 - log lambda.
    pub delta: f64,
    /// |eps|^3 n, when a vertex count is supplied.
    pub big_lambda: Option<f64>,
}

impl BranchingParams {
    pub fn new(lambda: f64, n: Option<u64>) -> Result<BranchingParams> {
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
        }
        let eps = lambda - 1.0;
        let s = survival_probability(lambda, DEFAULT_TOL);
        let lambda_star = if lambda > 1.0 {
            Some(dual_parameter(lambda)?)
        } else {
            None
        };
        Ok(BranchingParams {
            lambda,
            eps,
            s,
            lambda_star,
            delta: lambda - 1.0 - lambda.ln(),
            big_lambda: n.map(|n| eps.abs().powi(3) * n as f64),
        })
    }
}

/// Finite-horizon survival probabilities `s_t = Pr(|X_t| > 0)` of the
/// Galton-Watson process with Poisson(lambda*) offspring, from the exact
/// recursion `s_{t+1} = 1 - exp(-lambda* s_t)`, `s_0 = 1`.
#[derive(Clone, Debug)]
pub struct FiniteSurvival {
    pub lambda_star: f64,
    /// The supercritical parameter dual to `lambda_star` minus one
    /// (0 when lambda* = 1).
    pub eps: f64,
    /// s_0..s_T inclusive.
    pub s: Vec<f64>,
}

impl FiniteSurvival {
    /// `Pr(|X_t| > 0)`.
    pub fn survival(&self, t: usize) -> f64 {
        self.s[t]
    }

    /// `d_t = Pr(process dead by generation t)`.
    pub fn dies_by(&self, t: usize) -> f64 {
        1.0 - self.s[t]
    }

    /// Closed-form approximant `2(1 - lambda*) / (lambda* (lambda*^{-t} - 1))`,
    /// asymptotically `2 eps / (lambda*^{-t} - 1)`.
    pub fn closed_form(&self, t: usize) -> f64 {
        let ls = self.lambda_star;
        2.0 * (1.0 - ls) / (ls * (ls.powi(-(t as i32)) - 1.0))
    }
}

pub fn finite_survival(lambda_star: f64, t_max: usize) -> Result<FiniteSurvival> {
    if !(lambda_star > 0.0 && lambda_star <= 1.0) {
        return Err(Error::Domain(format!(
            "finite survival requires 0 < lambda* <= 1, got {lambda_star}"
        )));
    }
    if t_max < 1 {
        return Err(Error::Parameter("t_max must be >= 1".into()));
    }
    let mut s = Vec::with_capacity(t_max + 1);
    let mut cur = 1.0f64;
    s.push(cur);
    for _ in 0..t_max {
        cur = -(-lambda_star * cur).exp_m1();
        s.push(cur);
    }
    let eps = if lambda_star == 1.0 {
        0.0
    } else {
        dual_inverse(lambda_star)? - 1.0
    };
    Ok(FiniteSurvival {
        lambda_star,
        eps,
        s,
    })
}

/// One `P(eps)/eps^2` evaluation of the extinction-time product.
#[derive(Clone, Debug, Serialize)]
pub struct Gamma0Entry {
    pub eps: f64,
    /// Raw product prod_{t=1}^{T} (1 - s_t).
    pub product: f64,
    /// product / eps^2.
    pub scaled: f64,
}

/// Estimate of the constant gamma_0 in `prod (1 - s_t) ~ gamma_0 eps^2`.
#[derive(Clone, Debug, Serialize)]
pub struct Gamma0Estimate {
    pub entries: Vec<Gamma0Entry>,
    /// Richardson extrapolation (linear in eps) from the two smallest eps;
    /// `None` with fewer than two entries.
    pub extrapolated: Option<f64>,
}

/// Computes `P(eps) = prod_{t>=1} (1 - s_t)` truncated at `t_cap`, scaled by
/// `eps^{-2}`, for each supplied eps, plus a Richardson-extrapolated limit.
///
/// Errors if the tail is not negligible at `t_cap` (`lambda*^t_cap >= 1e-8`).
pub fn gamma0_estimate(eps_list: &[f64], t_cap: usize) -> Result<Gamma0Estimate> {
    let mut entries = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        if eps <= 0.0 {
            return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
        }
        let lambda_star = dual_parameter(1.0 + eps)?;
        let tail = lambda_star.powf(t_cap as f64);
        if tail >= 1e-8 {
            return Err(Error::Precision(format!(
                "non-convergent tail: lambda*^t_cap = {tail:.3e} >= 1e-8; raise t_cap"
            )));
        }
        let mut cur = 1.0f64;
        let mut log_sum = 0.0f64;
        for _ in 0..t_cap {
            cur = -(-lambda_star * cur).exp_m1();
            log_sum += (1.0 - cur).ln();
        }
        let product = log_sum.exp();
        entries.push(Gamma0Entry {
            eps,
            product,
            scaled: product / (eps * eps),
        });
    }
    let mut sorted: Vec<&Gamma0Entry> = entries.iter().collect();
    sorted.sort_by(|a, b| a.eps.partial_cmp(&b.eps).unwrap());
    let extrapolated = if sorted.len() >= 2 {
        let small = sorted[0];
        let big = sorted[1];
        Some(small.scaled + small.eps * (small.scaled - big.scaled) / (big.eps - small.eps))
    } else {
        None
    };
    Ok(Gamma0Estimate {
        entries,
        extrapolated,
    })
}

/// `Pr(Po(lambda) <= k)`, summed in log space so large lambda stays stable.
pub fn poisson_cdf(lambda: f64, k: u64) -> Result<f64> {
    if lambda < 0.0 || !lambda.is_finite() {
        return Err(Error::Domain(format!("lambda must be >= 0, got {lambda}")));
    }
    if lambda == 0.0 {
        return Ok(1.0);
    }
    // log term_j = -lambda + j log lambda - log j!
    let mut log_terms = Vec::with_capacity(k as usize + 1);
    let mut lt = -lambda;
    log_terms.push(lt);
    for j in 1..=k {
        lt += lambda.ln() - (j as f64).ln();
        log_terms.push(lt);
    }
    let max = log_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = log_terms.iter().map(|&t| (t - max).exp()).sum();
    Ok((max + sum.ln()).exp().min(1.0))
}

/// The slow-growth exponent g: on [0, 1) defined through
/// `lambda*^{g(a)} = Pr(Po(lambda) <= lambda^{1-a})`, extended to the line by
/// `g(x) = floor(x) + g(x - floor(x))`.
///
/// The CDF threshold is `floor(lambda^{1-a})` since the Poisson variable is
/// integer-valued. Meaningful only for lambda large (lambda >= 3 enforced).
pub struct GFunction {
    pub lambda: f64,
    pub lambda_star: f64,
    cache: HashMap<u64, f64>,
}

impl GFunction {
    pub fn new(lambda: f64) -> Result<GFunction> {
        if lambda < 3.0 {
            return Err(Error::Domain(format!(
                "g is a large-lambda tool; requires lambda >= 3, got {lambda}"
            )));
        }
        Ok(GFunction {
            lambda,
            lambda_star: dual_parameter(lambda)?,
            cache: HashMap::new(),
        })
    }

    fn fractional(&mut self, a: f64) -> f64 {
        debug_assert!((0.0..1.0).contains(&a));
        let key = a.to_bits();
        if let Some(&v) = self.cache.get(&key) {
            return v;
        }
        let threshold = self.lambda.powf(1.0 - a).floor() as u64;
        let p = poisson_cdf(self.lambda, threshold).expect("lambda validated positive");
        let v = p.ln() / self.lambda_star.ln();
        self.cache.insert(key, v);
        v
    }

    pub fn eval(&mut self, x: f64) -> f64 {
        let fl = x.floor();
        fl + self.fractional(x - fl)
    }
}

/// One-shot evaluation of g(lambda, x).
pub fn g_function(lambda: f64, x: f64) -> Result<f64> {
    Ok(GFunction::new(lambda)?.eval(x))
}

/// `E(|X_t| | survival) = (lambda^t - (1 - s) lambda*^t) / s`.
pub fn conditioned_mean(lambda: f64, t: f64) -> Result<f64> {
    if lambda <= 1.0 {
        return Err(Error::Domain(format!(
            "conditioned mean requires lambda > 1, got {lambda}"
        )));
    }
    if t < 0.0 {
        return Err(Error::Parameter(format!("t must be >= 0, got {t}")));
    }
    let s = survival_probability(lambda, DEFAULT_TOL);
    let lambda_star = dual_parameter(lambda)?;
    Ok((lambda.powf(t) - (1.0 - s) * lambda_star.powf(t)) / s)
}

/// Density regime for the diameter prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Auto,
    Subcritical,
    NearCritical,
    Constant,
    GrowingLambda,
}

/// A diameter prediction with the characteristic times behind it.
#[derive(Clone, Debug, Serialize)]
pub struct PredictionRecord {
    pub regime: Regime,
    pub n: u64,
    pub lambda: f64,
    pub eps: f64,
    pub lambda_star: Option<f64>,
    /// Predicted diameter (real-valued form).
    pub d0: f64,
    /// Integer normal form, populated in the growing-lambda regime:
    /// `ceil(log n / log lambda) + 2 floor(log n / log(1/lambda*)) + 1`.
    pub rounded: Option<i64>,
    /// Tree time `log(target) / log(1/lambda*)`; target is n in the
    /// constant/growing regimes and eps^3 n near the critical point.
    pub t0: Option<f64>,
    /// Growth time `log(omega) / log(lambda)` with omega = (eps^3 n)^{1/6};
    /// near-critical regime only.
    pub t1: Option<f64>,
    /// Meeting time `log(eps^3 n / omega^2) / log(lambda)`; near-critical
    /// regime only.
    pub t2: Option<f64>,
}

/// Window threshold for automatic regime detection: below `|eps|^3 n = 10`
/// the graph is inside the scaling window of the phase transition and none
/// of the prediction formulas apply.
pub const WINDOW_THRESHOLD: f64 = 10.0;

/// Regime boundary between "near critical" and "constant lambda" formulas.
/// The asymptotic theory has no sharp boundary; this is an artifact
/// convention, overridable by forcing a regime.
pub const NEAR_CRITICAL_MAX_LAMBDA: f64 = 1.2;

/// Predicted diameter of G(n, lambda/n) in the requested regime.
///
/// Auto-detection: lambda < 1 subcritical; 1 < lambda <= 1.2 near-critical;
/// 1.2 < lambda <= log n constant; lambda > log n growing. Auto refuses
/// inputs inside the scaling window (`|eps|^3 n < 10`); a forced regime
/// bypasses that check.
pub fn predict_diameter(n: u64, lambda: f64, regime: Regime) -> Result<PredictionRecord> {
    if n < 3 {
        return Err(Error::Parameter(format!("n must be >= 3, got {n}")));
    }
    if lambda <= 0.0 || !lambda.is_finite() {
        return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
    }
    if lambda == 1.0 {
        return Err(Error::Domain("lambda = 1 is exactly critical; no prediction applies".into()));
    }
    let eps = lambda - 1.0;
    let nf = n as f64;
    let big_lambda = eps.abs().powi(3) * nf;
    let regime = match regime {
        Regime::Auto => {
            if big_lambda < WINDOW_THRESHOLD {
                return Err(Error::Window(format!(
                    "|eps|^3 n = {big_lambda:.3} < {WINDOW_THRESHOLD}: inside the scaling \
                     window of the phase transition the diameter has no single-formula \
                     prediction; force a regime to override"
                )));
            }
            if lambda < 1.0 {
                Regime::Subcritical
            } else if lambda <= NEAR_CRITICAL_MAX_LAMBDA {
                Regime::NearCritical
            } else if lambda <= nf.ln() {
                Regime::Constant
            } else {
                Regime::GrowingLambda
            }
        }
        forced => forced,
    };

    let record = match regime {
        Regime::Auto => unreachable!(),
        Regime::Subcritical => {
            if lambda >= 1.0 {
                return Err(Error::Domain(
                    "subcritical formula requires lambda < 1".into(),
                ));
            }
            let e = -eps;
            let d0 = (2.0 * e.powi(3) * nf).ln() / -lambda.ln();
            PredictionRecord {
                regime,
                n,
                lambda,
                eps,
                lambda_star: None,
                d0,
                rounded: None,
                t0: None,
                t1: None,
                t2: None,
            }
        }
        Regime::NearCritical => {
            if lambda <= 1.0 {
                return Err(Error::Domain(
                    "near-critical formula requires lambda > 1".into(),
                ));
            }
            let ls = dual_parameter(lambda)?;
            let target = eps.powi(3) * nf;
            if target <= 1.0 {
                return Err(Error::Window(format!(
                    "eps^3 n = {target:.3} <= 1: log(eps^3 n) is not usable"
                )));
            }
            let omega = target.powf(1.0 / 6.0);
            let t0 = target.ln() / (1.0 / ls).ln();
            let t1 = omega.ln() / lambda.ln();
            let t2 = (target / (omega * omega)).ln() / lambda.ln();
            PredictionRecord {
                regime,
                n,
                lambda,
                eps,
                lambda_star: Some(ls),
                d0: 2.0 * t0 + 2.0 * t1 + t2,
                rounded: None,
                t0: Some(t0),
                t1: Some(t1),
                t2: Some(t2),
            }
        }
        Regime::Constant | Regime::GrowingLambda => {
            if lambda <= 1.0 {
                return Err(Error::Domain(
                    "supercritical formulas require lambda > 1".into(),
                ));
            }
            let ls = dual_parameter(lambda)?;
            let t0 = nf.ln() / (1.0 / ls).ln();
            let d0 = nf.ln() / lambda.ln() + 2.0 * t0;
            let rounded = if regime == Regime::GrowingLambda {
                Some(
                    (nf.ln() / lambda.ln()).ceil() as i64
                        + 2 * (nf.ln() / (1.0 / ls).ln()).floor() as i64
                        + 1,
                )
            } else {
                None
            };
            PredictionRecord {
                regime,
                n,
                lambda,
                eps,
                lambda_star: Some(ls),
                d0,
                rounded,
                t0: Some(t0),
                t1: None,
                t2: None,
            }
        }
    };
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn survival_at_and_below_critical_is_zero() {
        assert_eq!(survival_probability(1.0, TOL), 0.0);
        assert_eq!(survival_probability(0.5, TOL), 0.0);
    }

    #[test]
    fn survival_known_roots() {
        // Bisection oracle values (frozen).
        assert!((survival_probability(2.0, TOL) - 0.796812130).abs() < 1e-6);
        assert!((survival_probability(1.5, TOL) - 0.582811644).abs() < 1e-6);
        // s(1.01) ~ 2 eps (1 + O(eps)); frozen root 0.01973641.
        let s = survival_probability(1.01, TOL);
        assert!((s - 0.0197364104).abs() < 1e-8);
        assert!((s - 0.0197).abs() < 0.0005);
    }

    #[test]
    fn fixed_point_residuals_across_lambda_grid() {
        for &lam in &[1.001, 1.01, 1.1, 1.5, 2.0, 5.0, 20.0, 100.0] {
            let s = survival_probability(lam, TOL);
            assert!(
                survival_residual(lam, s).abs() <= 1e-10,
                "lambda = {lam}: residual {}",
                survival_residual(lam, s)
            );
            let ls = dual_parameter(lam).unwrap();
            let idr = (ls * (-ls).exp() - lam * (-lam).exp()).abs();
            assert!(idr <= 1e-10, "lambda = {lam}: identity residual {idr}");
        }
    }

    #[test]
    fn dual_parameter_known_values() {
        assert!((dual_parameter(2.0).unwrap() - 0.406375740).abs() < 1e-6);
        // Series consistency at eps = 0.01: 1 - eps + (2/3) eps^2 = 0.990067
        // to the displayed precision.
        let ls = dual_parameter(1.01).unwrap();
        assert!((ls - 0.990067).abs() < 1e-5);
        assert!((ls - 0.9900662255).abs() < 1e-9);
        // Series with the cubic term.
        let e = 0.01f64;
        let series = 1.0 - e + 2.0 / 3.0 * e * e - 4.0 / 9.0 * e * e * e;
        assert!((ls - series).abs() < 1e-8);
        // lambda* > 1 - eps holds for every eps > 0.
        for &lam in &[1.001, 1.01, 1.1, 1.5, 2.0] {
            assert!(dual_parameter(lam).unwrap() > 2.0 - lam);
        }
    }

    #[test]
    fn dual_parameter_large_lambda_matches_fixed_point_iteration() {
        // Independent oracle: iterate lambda* <- lambda e^{-lambda} e^{lambda*}.
        let lam = 20.0f64;
        let mut ls = lam * (-lam).exp();
        for _ in 0..64 {
            ls = lam * (-lam).exp() * ls.exp();
        }
        let got = dual_parameter(lam).unwrap();
        assert!(
            (got / ls - 1.0).abs() < 0.01,
            "solver {got:.6e} vs iteration {ls:.6e}"
        );
        assert!((got - 4.1223e-8).abs() < 4.2e-10); // +-1%
    }

    #[test]
    fn dual_parameter_rejects_subcritical() {
        assert!(matches!(dual_parameter(0.9), Err(Error::Domain(_))));
        assert!(matches!(dual_parameter(1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn duality_involution_recovers_lambda() {
        for &lam in &[1.001, 1.01, 1.1, 1.5, 2.0, 5.0, 20.0] {
            let ls = dual_parameter(lam).unwrap();
            let back = dual_inverse(ls).unwrap();
            assert!((back - lam).abs() < 1e-8, "lambda = {lam}, got {back}");
        }
    }

    #[test]
    fn finite_survival_first_step_critical() {
        let fs = finite_survival(1.0, 1).unwrap();
        assert!((fs.survival(1) - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((fs.survival(1) - 0.632121).abs() < 1e-6);
    }

    #[test]
    fn finite_survival_monotone_and_below_2_over_t() {
        for &ls in &[1.0, 0.99, 0.9062524420, 0.5] {
            let fs = finite_survival(ls, 200).unwrap();
            for t in 1..=200usize {
                assert!(fs.survival(t) < fs.survival(t - 1), "not decreasing at {t}");
                assert!(
                    fs.survival(t) < 2.0 / t as f64,
                    "s_{t} = {} >= 2/t",
                    fs.survival(t)
                );
            }
        }
    }

    #[test]
    fn finite_survival_frozen_values() {
        // Exact recursion values (independent of this implementation's
        // internals; frozen from a bisection + iteration oracle).
        // eps = 0.01: t s_t / 2 at t = 50 is 0.7210518, reflecting the
        // eps*t = 0.5 correction to the critical 2/t law.
        let ls = dual_parameter(1.01).unwrap();
        let fs = finite_survival(ls, 50).unwrap();
        let ratio = 50.0 * fs.survival(50) / 2.0;
        assert!((ratio - 0.7210518).abs() < 1e-6, "got {ratio}");

        // eps = 0.1: s_100 against the closed form 2 eps/(lambda*^{-t} - 1)
        // sits at ratio 0.8297 (the O(eps^{1/3}) error term is ~20% here).
        let ls = dual_parameter(1.1).unwrap();
        let fs = finite_survival(ls, 100).unwrap();
        let closed_spec = 2.0 * 0.1 / (ls.powi(-100) - 1.0);
        let ratio = fs.survival(100) / closed_spec;
        assert!((ratio - 0.8297053).abs() < 1e-6, "got {ratio}");
        // The paper-exact prefactor 2(1-lambda*)/lambda* is closer but the
        // residual at eps = 0.1 is still ~20%.
        let ratio_exact = fs.survival(100) / fs.closed_form(100);
        assert!((ratio_exact - 0.8020715).abs() < 1e-6, "got {ratio_exact}");
    }

    #[test]
    fn finite_survival_recovers_primal_eps() {
        let ls = dual_parameter(1.1).unwrap();
        let fs = finite_survival(ls, 5).unwrap();
        assert!((fs.eps - 0.1).abs() < 1e-8);
    }

    #[test]
    fn gamma0_frozen_values_and_positivity() {
        let est = gamma0_estimate(&[0.02, 0.01, 0.005], 40_000).unwrap();
        let b: std::collections::HashMap<_, _> = est
            .entries
            .iter()
            .map(|e| ((e.eps * 1000.0) as i64, e.scaled))
            .collect();
        assert!((b[&20] - 3.046522).abs() < 2e-4, "{}", b[&20]);
        assert!((b[&10] - 3.150055).abs() < 2e-4, "{}", b[&10]);
        assert!((b[&5] - 3.207059).abs() < 2e-4, "{}", b[&5]);
        for e in &est.entries {
            assert!(e.scaled > 0.0 && e.scaled.is_finite());
        }
        // eps = 0.01 vs 0.005 agree within 3%.
        assert!((b[&10] / b[&5] - 1.0).abs() < 0.03);
        let extrap = est.extrapolated.unwrap();
        assert!((extrap - 3.264064).abs() < 2e-3, "{extrap}");
    }

    #[test]
    fn gamma0_tiny_lambda_star_product_is_one() {
        // lambda* -> 0: every s_t -> 0 and the raw product -> 1; the
        // eps^2 scaling is inapplicable (eps is huge), only the raw
        // product is meaningful.
        let eps = 9.0; // lambda = 10, lambda* = 4.54e-4
        let est = gamma0_estimate(&[eps], 1000).unwrap();
        assert!((est.entries[0].product - 1.0).abs() < 1e-3);
    }

    #[test]
    fn gamma0_rejects_nonconvergent_tail() {
        assert!(matches!(
            gamma0_estimate(&[0.001], 100),
            Err(Error::Precision(_))
        ));
    }

    #[test]
    fn poisson_cdf_values() {
        assert!((poisson_cdf(1.0, 0).unwrap() - 0.3678794).abs() < 1e-7);
        assert!((poisson_cdf(2.0, 2).unwrap() - 0.6766764).abs() < 1e-7);
        // Term-summation oracle value in extended precision: 1.694474e-5.
        let p = poisson_cdf(20.0, 4).unwrap();
        assert!((p / 1.6944744e-5 - 1.0).abs() < 1e-6, "{p}");
        assert_eq!(poisson_cdf(0.0, 3).unwrap(), 1.0);
    }

    #[test]
    fn g_function_values_and_bounds() {
        // g(20, 0): Pr(Po(20) <= 20) = 0.559, log ratio against
        // log lambda*(20) = -17.0 gives 0.0342 < 0.05.
        let g0 = g_function(20.0, 0.0).unwrap();
        assert!(g0 > 0.0 && g0 < 0.05, "{g0}");
        assert!((g0 - 0.0341938).abs() < 1e-5);
        let g5 = g_function(20.0, 0.5).unwrap();
        assert!((g5 - 0.646047).abs() < 5e-3, "{g5}");
        // floor(x) <= g(x) <= floor(x) + 1 and the integer shift.
        let mut gf = GFunction::new(20.0).unwrap();
        for &x in &[2.3, -0.7, 0.0, 0.99, 5.5] {
            let v = gf.eval(x);
            assert!(x.floor() <= v && v <= x.floor() + 1.0, "g({x}) = {v}");
            assert!((gf.eval(x + 1.0) - v - 1.0).abs() < 1e-12);
        }
        assert!(g_function(2.0, 0.5).is_err());
    }

    #[test]
    fn g_function_monotone_in_x() {
        let mut gf = GFunction::new(20.0).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..200 {
            let x = i as f64 * 0.01;
            let v = gf.eval(x);
            assert!(v >= prev - 1e-12, "g not monotone at x = {x}");
            prev = v;
        }
    }

    #[test]
    fn conditioned_mean_values() {
        assert!((conditioned_mean(2.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((conditioned_mean(2.0, 1.0).unwrap() - 2.406376).abs() < 1e-6);
        // lambda*^t << lambda^t for t large: within 2% of lambda^t / s.
        let lam = 1.05f64;
        let s = survival_probability(lam, TOL);
        let direct = lam.powf(200.0) / s;
        let cm = conditioned_mean(lam, 200.0).unwrap();
        assert!((cm / direct - 1.0).abs() < 0.02);
    }

    #[test]
    fn prediction_constant_regime() {
        let p = predict_diameter(1_000_000, 2.0, Regime::Auto).unwrap();
        assert_eq!(p.regime, Regime::Constant);
        assert!((p.d0 - 50.6164375).abs() < 1e-5, "{}", p.d0);
        assert!(p.rounded.is_none());
    }

    #[test]
    fn prediction_subcritical() {
        let p = predict_diameter(1_000_000, 0.9, Regime::Auto).unwrap();
        assert_eq!(p.regime, Regime::Subcritical);
        assert!((p.d0 - 72.1418495).abs() < 1e-5, "{}", p.d0);
    }

    #[test]
    fn prediction_growing_lambda_normal_form() {
        let p = predict_diameter(1_000_000, 20.0, Regime::GrowingLambda).unwrap();
        assert_eq!(p.rounded, Some(6));
        // log n / log lambda = 4.612 -> ceil 5; log n / log(1/lambda*) = 0.812 -> floor 0.
    }

    #[test]
    fn prediction_near_critical_times() {
        let p = predict_diameter(1_000_000, 1.1, Regime::Auto).unwrap();
        assert_eq!(p.regime, Regime::NearCritical);
        assert!((p.d0 - 212.8247912).abs() < 1e-5, "{}", p.d0);
        assert!((p.t0.unwrap() - 70.1741087).abs() < 1e-5);
        assert!((p.t1.unwrap() - 12.0794290).abs() < 1e-5);
        assert!((p.t2.unwrap() - 48.3177159).abs() < 1e-5);
        // d0 = 2 t0 + 2 t1 + t2.
        let sum = 2.0 * p.t0.unwrap() + 2.0 * p.t1.unwrap() + p.t2.unwrap();
        assert!((p.d0 - sum).abs() < 1e-9);
    }

    #[test]
    fn prediction_window_errors_and_forcing() {
        // |eps|^3 n = 8 < 10 inside the window.
        assert!(matches!(
            predict_diameter(1_000_000, 1.02, Regime::Auto),
            Err(Error::Window(_))
        ));
        // Forcing a regime bypasses the window check.
        assert!(predict_diameter(1_000_000, 1.02, Regime::NearCritical).is_ok());
        assert!(matches!(
            predict_diameter(2, 2.0, Regime::Auto),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            predict_diameter(100, 1.0, Regime::Auto),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn prediction_regime_boundary_gap() {
        // At lambda = 1.1, n = 1e8, the constant and near-critical formulas
        // differ by exactly ln(1/eps^3)/ln(n) = 3/8 in relative terms (both
        // are linear in the respective log target). Frozen at 0.375.
        let c = predict_diameter(100_000_000, 1.1, Regime::Constant).unwrap();
        let nc = predict_diameter(100_000_000, 1.1, Regime::NearCritical).unwrap();
        let gap = (c.d0 - nc.d0).abs() / c.d0;
        assert!((gap - 0.375).abs() < 1e-6, "relative gap {gap}");
    }

    #[test]
    fn branching_params_consistency() {
        let bp = BranchingParams::new(1.2, Some(1_000_000)).unwrap();
        assert!((bp.eps - 0.2).abs() < 1e-15);
        assert!((bp.delta - (0.2 - 1.2f64.ln())).abs() < 1e-15);
        assert!((bp.big_lambda.unwrap() - 8000.0).abs() < 1e-6);
        assert!(bp.lambda_star.unwrap() < 1.0);
        let sub = BranchingParams::new(0.9, None).unwrap();
        assert_eq!(sub.s, 0.0);
        assert!(sub.lambda_star.is_none());
    }
}
