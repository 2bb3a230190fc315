//! Shared scalar and grid optimization utilities.
//!
//! The rate expressions here are smooth but not jointly concave in their
//! power-split parameters, so every maximization follows the same pattern: a
//! coarse grid scan to locate the basin, then local refinement.

use crate::region::RatePoint;
use crate::Error;

/// Inverse golden ratio, `2 - φ`.
const INV_PHI2: f64 = 0.381_966_011_250_105_1;

/// Configuration for the multi-start optimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    /// Number of start points for multi-start ascents (>= 1).
    pub starts: usize,
    /// Cap on coordinate-ascent passes per start.
    pub max_iterations: usize,
    /// Stop once a full pass improves the objective by less than this.
    pub tolerance: f64,
    /// Seed for start-point sampling; the generator is a fixed algorithm so
    /// results reproduce bit-exactly across platforms.
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            starts: 16,
            max_iterations: 5000,
            tolerance: 1e-7,
            seed: 0,
        }
    }
}

impl OptimizerOptions {
    pub fn validate(&self) -> Result<(), Error> {
        if self.starts == 0 {
            return Err(Error::InvalidInput("starts must be >= 1".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::NonPositive { name: "tolerance", value: self.tolerance });
        }
        Ok(())
    }
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// Returns `(x_max, f(x_max))` with `|x_max - argmax| <= tol` for unimodal
/// `f`; for other shapes it still converges to a local maximum inside the
/// bracket.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64), Error>
where
    F: Fn(f64) -> f64,
{
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::NonPositive { name: "tol", value: tol });
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let mut a = lo;
    let mut b = hi;
    let mut x1 = a + INV_PHI2 * (b - a);
    let mut x2 = b - INV_PHI2 * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a) > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + INV_PHI2 * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - INV_PHI2 * (b - a);
            f2 = f(x2);
        }
    }
    // include the original endpoints: the maximum may sit on the boundary
    let candidates = [(x1, f1), (x2, f2), (lo, f(lo)), (hi, f(hi))];
    let best = candidates
        .into_iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    Ok(best)
}

/// Maximize `mu*r1 + (1-mu)*r2` over parameters in `[0,1]^N`.
///
/// A coarse `grid_steps`-per-axis scan locates the best cell, then
/// coordinate-wise golden-section refinement polishes it. Deterministic:
/// no randomness is consumed, so identical inputs give identical outputs.
pub fn weighted_rate_max<const N: usize, F>(
    evaluator: F,
    mu: f64,
    grid_steps: usize,
    opts: &OptimizerOptions,
) -> Result<([f64; N], RatePoint), Error>
where
    F: Fn(&[f64; N]) -> RatePoint,
{
    if grid_steps < 2 {
        return Err(Error::GridTooSmall(grid_steps));
    }
    opts.validate()?;
    assert!((0.0..=1.0).contains(&mu), "mu must be in [0,1], got {mu}");

    let score = |p: &[f64; N]| {
        let r = evaluator(p);
        mu * r.r1 + (1.0 - mu) * r.r2
    };
    let step = 1.0 / (grid_steps - 1) as f64;

    // coarse scan
    let mut best = [0.0; N];
    let mut best_val = score(&best);
    let mut idx = [0usize; N];
    loop {
        let mut p = [0.0; N];
        for d in 0..N {
            p[d] = idx[d] as f64 * step;
        }
        let v = score(&p);
        if v > best_val {
            best_val = v;
            best = p;
        }
        // odometer increment
        let mut d = 0;
        loop {
            if d == N {
                break;
            }
            idx[d] += 1;
            if idx[d] < grid_steps {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
        if d == N {
            break;
        }
    }

    // coordinate refinement within one grid cell of the best point
    for _ in 0..opts.max_iterations.min(64) {
        let before = best_val;
        for d in 0..N {
            let lo = (best[d] - step).max(0.0);
            let hi = (best[d] + step).min(1.0);
            let (x, v) = golden_section_max(
                |t| {
                    let mut p = best;
                    p[d] = t;
                    score(&p)
                },
                lo,
                hi,
                1e-9,
            )?;
            if v > best_val {
                best_val = v;
                best[d] = x;
            }
        }
        if best_val - before < opts.tolerance {
            break;
        }
    }

    Ok((best, evaluator(&best)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{LinkGains, SymmetricGains};
    use crate::ncrs::{ncrs_rates, optimal_lambda_symmetric, symmetric_sum_rate, SplitParams};

    #[test]
    fn test_golden_quadratic() {
        let (x, _) = golden_section_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-8).unwrap();
        assert!((x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn test_golden_matches_closed_form_split() {
        let sg = SymmetricGains::new(10.0, 1.0);
        let (x, _) =
            golden_section_max(|l| symmetric_sum_rate(&sg, l), 0.0, 1.0, 1e-9).unwrap();
        let expected = optimal_lambda_symmetric(&sg);
        assert!((x - expected).abs() < 1e-6, "got {x}, expected {expected}");
        assert!((expected - 9.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn test_golden_constant_function() {
        let (x, v) = golden_section_max(|_| 2.5, 0.0, 1.0, 1e-8).unwrap();
        assert!((0.0..=1.0).contains(&x));
        assert_eq!(v, 2.5);
    }

    #[test]
    fn test_golden_boundary_max() {
        let (x, _) = golden_section_max(|x| x, 0.0, 1.0, 1e-10).unwrap();
        assert!((x - 1.0).abs() < 1e-9);
    }

    #[test]
    fn test_golden_rejects_bad_args() {
        assert!(golden_section_max(|x| x, 0.0, 1.0, 0.0).is_err());
        assert!(golden_section_max(|x| x, 1.0, 0.0, 1e-6).is_err());
    }

    fn ncrs_eval(g: LinkGains) -> impl Fn(&[f64; 3]) -> RatePoint {
        move |p: &[f64; 3]| {
            let r = ncrs_rates(&g, &SplitParams::new(p[0], p[1], p[2]));
            RatePoint::new(r.r1, r.r2)
        }
    }

    #[test]
    fn test_weighted_max_single_user_weight() {
        let g = LinkGains::new(10.0, 0.0, 0.0, 10.0);
        let opts = OptimizerOptions::default();
        let (params, point) = weighted_rate_max(ncrs_eval(g), 1.0, 21, &opts).unwrap();
        assert!((point.r1 - 11.0_f64.log2()).abs() < 1e-6, "r1 = {}", point.r1);
        assert!(params[0] > 1.0 - 1e-6, "lambda1 should saturate, got {}", params[0]);
    }

    #[test]
    fn test_weighted_max_symmetry() {
        let g = LinkGains::new(10.0, 2.0, 2.0, 10.0);
        let opts = OptimizerOptions::default();
        let (_, p1) = weighted_rate_max(ncrs_eval(g), 1.0, 21, &opts).unwrap();
        let (_, p0) = weighted_rate_max(ncrs_eval(g), 0.0, 21, &opts).unwrap();
        assert!((p1.r1 - p0.r2).abs() < 1e-9, "mu=0 mirrors mu=1 with users swapped");
        let (_, ph) = weighted_rate_max(ncrs_eval(g), 0.5, 21, &opts).unwrap();
        assert!((ph.r1 - ph.r2).abs() < 1e-6, "mu=0.5 on symmetric gains is balanced");
    }

    #[test]
    fn test_weighted_max_refinement_not_worse_than_grid() {
        let g = LinkGains::new(10.0, 2.0, 3.0, 8.0);
        let opts = OptimizerOptions::default();
        let mu = 0.7;
        let (_, refined) = weighted_rate_max(ncrs_eval(g), mu, 11, &opts).unwrap();
        // brute coarse grid for comparison
        let eval = ncrs_eval(g);
        let mut best = f64::NEG_INFINITY;
        for i in 0..11 {
            for j in 0..11 {
                for k in 0..11 {
                    let p = [i as f64 / 10.0, j as f64 / 10.0, k as f64 / 10.0];
                    let r = eval(&p);
                    best = best.max(mu * r.r1 + (1.0 - mu) * r.r2);
                }
            }
        }
        assert!(mu * refined.r1 + (1.0 - mu) * refined.r2 >= best - 1e-12);
    }

    #[test]
    fn test_weighted_max_deterministic() {
        let g = LinkGains::new(5.0, 1.0, 2.0, 7.0);
        let opts = OptimizerOptions::default();
        let a = weighted_rate_max(ncrs_eval(g), 0.4, 13, &opts).unwrap();
        let b = weighted_rate_max(ncrs_eval(g), 0.4, 13, &opts).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }
}
