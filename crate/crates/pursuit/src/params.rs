//! Parameter solvers for the three expansion-controller regimes.
//!
//! Everything is evaluated on L = log n (natural log) in log-space
//! arithmetic, because the interesting inputs (L up to 10⁷) put p, k, and
//! the radii far outside f64 range. The two defining inequalities of each
//! regime are re-evaluated and their (log-space) margins reported; a
//! negative margin is an infeasibility error carrying the whole search
//! grid, never a silently wrong parameter set.
//!
//! Regimes:
//! * general: p = 2^(−(1−ε)√(L/log 2)), k = (16/p)·L, smallest l ≥ 1 with
//!   (1+p)^(2^l) ≥ k, and k^(l+1)·(1+p)^(2^l) ≤ np/2;
//! * digraph: p = 13(log L)²/L, r = (6/p)·log(4/p), with
//!   2·p^(−r)·(1+p)^r ≤ np/2 and (1+p)^r ≥ (16/p)·L;
//! * fast (speed-R robber): α = 1+1/R, p = α^(−(1−ε)√(L/log α)),
//!   d₀ = R, dᵢ₊₁ = dᵢ + ⌈dᵢ/R⌉, rᵢ = ⌈dᵢ/R⌉, smallest l with
//!   (1+p)^(r_l) ≥ k, and k^(2^R)·k^l·(1+p)^(r_l) ≤ np/2.
//!
//! ε is searched over the fixed grid {0.01, 0.02, …, 0.50}; the smallest
//! feasible ε is returned.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    General,
    Digraph,
    Fast,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpansionParams {
    pub regime: Regime,
    /// L = log n (natural logarithm).
    pub log_n: f64,
    /// Robber speed R (fast regime only).
    pub speed: Option<usize>,
    /// Grid value used (general/fast regimes).
    pub epsilon: Option<f64>,
    /// α = 1 + 1/R; 2 for the general regime (its R = 1 radii).
    pub alpha: f64,
    pub ln_p: f64,
    /// e^ln_p; underflows to 0 for large L — `ln_p` is authoritative.
    pub p: f64,
    /// log of k = (16/p)·log n.
    pub ln_k: f64,
    /// Stage count parameter (general/fast); None for digraph.
    pub l: Option<u64>,
    /// Dispatch radius (digraph regime).
    pub r: Option<f64>,
    /// d-sequence prefix (fast regime; truncated once it leaves u64 range).
    pub d_prefix: Vec<u64>,
    /// Radii prefix: rᵢ = ⌈dᵢ/R⌉ (fast) or 2^i (general), same truncation.
    pub radii_prefix: Vec<u64>,
    /// log of the last-stage radius r_l (exact in log space even when the
    /// prefix is truncated).
    pub ln_r_last: Option<f64>,
    /// Log-space slack of the two regime inequalities, in statement order.
    pub margins: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridPoint {
    pub epsilon: f64,
    pub margins: [f64; 2],
}

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("no feasible parameters for {regime:?} at log n = {log_n}; margins per grid point: {grid:?}")]
    Infeasible {
        regime: Regime,
        log_n: f64,
        grid: Vec<GridPoint>,
    },
    #[error("log n must be positive, got {0}")]
    BadLogN(f64),
    #[error("robber speed must be at least 1, got {0}")]
    BadSpeed(usize),
}

const LN2: f64 = std::f64::consts::LN_2;

fn eps_grid() -> impl Iterator<Item = f64> {
    (1..=50).map(|i| i as f64 / 100.0)
}

/// ln(ln(1+p)) from ln p, stable for p far below f64 range:
/// ln(1+p) = p·(1 − p/2 + …), so the correction vanishes as p → 0.
fn ln_ln1p(ln_p: f64) -> f64 {
    let p = ln_p.exp();
    if p > 1e-8 {
        p.ln_1p().ln()
    } else {
        ln_p + (-p / 2.0).ln_1p()
    }
}

/// ln(1+p) itself (not its log), stable the same way.
fn ln1p_from(ln_p: f64) -> f64 {
    let p = ln_p.exp();
    if p > 0.0 {
        p.ln_1p()
    } else {
        0.0 // representable only in log space; callers use ln_ln1p then
    }
}

pub fn solve_general(log_n: f64) -> Result<ExpansionParams, ParamError> {
    if !(log_n > 0.0) {
        return Err(ParamError::BadLogN(log_n));
    }
    let l_grid = solve_scaled(log_n, 1, Regime::General)?;
    Ok(l_grid)
}

pub fn solve_fast(log_n: f64, speed: usize) -> Result<ExpansionParams, ParamError> {
    if !(log_n > 0.0) {
        return Err(ParamError::BadLogN(log_n));
    }
    if speed == 0 {
        return Err(ParamError::BadSpeed(speed));
    }
    solve_scaled(log_n, speed, Regime::Fast)
}

/// Shared machinery: the general regime is the R = 1 instance of the fast
/// recursion (d₀ = 1 gives dᵢ = 2^i, i.e. radii 2^i), except that its first
/// inequality reads k^(l+1)·… instead of k^(2^R)·k^l·….
fn solve_scaled(log_n: f64, speed: usize, regime: Regime) -> Result<ExpansionParams, ParamError> {
    let l_ = log_n;
    let alpha = 1.0 + 1.0 / speed as f64;
    let ln_alpha = alpha.ln();
    let sqrt_term = (l_ / ln_alpha).sqrt();

    let mut grid = Vec::new();
    for eps in eps_grid() {
        let ln_p = -(1.0 - eps) * sqrt_term * ln_alpha;
        if ln_p >= 0.0 {
            grid.push(GridPoint { epsilon: eps, margins: [f64::NEG_INFINITY; 2] });
            continue;
        }
        let ln_k = (16.0f64).ln() - ln_p + l_.ln();
        let lam = ln_ln1p(ln_p); // ln(ln(1+p))

        // Walk the d-sequence until (1+p)^(r_l) ≥ k, i.e. ln r_l + λ ≥ ln ln k.
        let target = if ln_k > 1.0 { ln_k.ln() } else { f64::NEG_INFINITY };
        let mut d_prefix: Vec<u64> = Vec::new();
        let mut radii_prefix: Vec<u64> = Vec::new();
        let mut d_exact: Option<u128> = Some(speed as u128);
        let mut ln_d: f64 = (speed as f64).ln();
        let mut l: u64 = 0;
        let r_of = |d: u128| d.div_ceil(speed as u128);
        let (mut ln_r, mut found) = (f64::NEG_INFINITY, false);
        for i in 0..5_000_000u64 {
            let ln_r_i = match d_exact {
                Some(d) => {
                    let r = r_of(d);
                    if d <= u64::MAX as u128 && d_prefix.len() < 64 {
                        d_prefix.push(d as u64);
                        radii_prefix.push(r as u64);
                    }
                    (r as f64).ln()
                }
                None => ln_d - (speed as f64).ln(), // ceil negligible at this size
            };
            // minimality requires i ≥ 1 ("smallest positive integer")
            if i >= 1 && ln_r_i + lam >= target {
                l = i;
                ln_r = ln_r_i;
                found = true;
                break;
            }
            // advance d
            match d_exact {
                Some(d) => {
                    let next = d + r_of(d);
                    if next < (1u128 << 100) {
                        d_exact = Some(next);
                    } else {
                        d_exact = None;
                        ln_d = (next as f64).ln();
                    }
                }
                None => {
                    // d ← d(1 + 1/R), the ceil term is ≪ 1 ulp here
                    ln_d += ln_alpha;
                }
            }
        }
        if !found {
            grid.push(GridPoint { epsilon: eps, margins: [f64::NEG_INFINITY; 2] });
            continue;
        }

        // margin of inequality 2: ln((1+p)^{r_l}) − ln k = e^{ln r_l + λ} − ln k
        let pow_term = (ln_r + lam).exp(); // = r_l · ln(1+p)
        let margin2 = pow_term - ln_k;
        // inequality 1 in log space
        let k_power = match regime {
            Regime::General => (l + 1) as f64,
            Regime::Fast => (1u64 << speed.min(62)) as f64 + l as f64,
            Regime::Digraph => unreachable!(),
        };
        let margin1 = (l_ + ln_p - LN2) - (k_power * ln_k + pow_term);
        grid.push(GridPoint { epsilon: eps, margins: [margin1, margin2] });

        if margin1 >= 0.0 && margin2 >= 0.0 {
            return Ok(ExpansionParams {
                regime,
                log_n: l_,
                speed: (regime == Regime::Fast).then_some(speed),
                epsilon: Some(eps),
                alpha,
                ln_p,
                p: ln_p.exp(),
                ln_k,
                l: Some(l),
                r: None,
                d_prefix,
                radii_prefix,
                ln_r_last: Some(ln_r),
                margins: [margin1, margin2],
            });
        }
    }
    Err(ParamError::Infeasible {
        regime,
        log_n: l_,
        grid,
    })
}

pub fn solve_digraph(log_n: f64) -> Result<ExpansionParams, ParamError> {
    if !(log_n > 0.0) {
        return Err(ParamError::BadLogN(log_n));
    }
    let l_ = log_n;
    let p = 13.0 * l_.ln().powi(2) / l_;
    let infeasible = |margins: [f64; 2]| ParamError::Infeasible {
        regime: Regime::Digraph,
        log_n: l_,
        grid: vec![GridPoint { epsilon: 0.0, margins }],
    };
    if !(p > 0.0 && p < 1.0) {
        return Err(infeasible([f64::NEG_INFINITY; 2]));
    }
    let ln_p = p.ln();
    let r = (6.0 / p) * (4.0 / p).ln();
    let ln1p = ln1p_from(ln_p);
    // 2·p^(−r)·(1+p)^r ≤ np/2, in logs
    let margin1 = (l_ + ln_p - LN2) - (LN2 - r * ln_p + r * ln1p);
    // (1+p)^r ≥ (16/p)·log n, in logs
    let ln_k = (16.0f64).ln() - ln_p + l_.ln();
    let margin2 = r * ln1p - ln_k;
    if margin1 < 0.0 || margin2 < 0.0 {
        return Err(infeasible([margin1, margin2]));
    }
    Ok(ExpansionParams {
        regime: Regime::Digraph,
        log_n: l_,
        speed: None,
        epsilon: None,
        alpha: 1.0 + p, // expansion factor per radius step
        ln_p,
        p,
        ln_k,
        l: None,
        r: Some(r),
        d_prefix: vec![],
        radii_prefix: vec![],
        ln_r_last: Some(r.ln()),
        margins: [margin1, margin2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_feasible_large_l() {
        for l in [1e4, 1e5, 1e6, 1e7] {
            let p = solve_general(l).unwrap();
            assert!(p.margins[0] >= 0.0 && p.margins[1] >= 0.0, "L={}", l);
            assert!(p.ln_p < 0.0);
        }
    }

    #[test]
    fn general_infeasible_tiny_l() {
        match solve_general(1.0) {
            Err(ParamError::Infeasible { grid, .. }) => {
                assert_eq!(grid.len(), 50);
                assert!(grid.iter().all(|g| g.margins[0] < 0.0 || g.margins[1] < 0.0));
            }
            other => panic!("expected infeasibility, got {:?}", other.map(|p| p.margins)),
        }
    }

    #[test]
    fn general_l_scaling() {
        // l = (1+o(1))·√(log₂ n): check the ratio at L = 10⁷
        let p = solve_general(1e7).unwrap();
        let ratio = p.l.unwrap() as f64 / (1e7 / LN2).sqrt();
        assert!((0.8..=1.3).contains(&ratio), "ratio {}", ratio);
    }

    #[test]
    fn general_l_minimal() {
        let p = solve_general(1e5).unwrap();
        let l = p.l.unwrap();
        assert!(l >= 1);
        // l−1 must fail inequality 2 (unless l = 1, the smallest allowed)
        if l > 1 {
            let lam = ln_ln1p(p.ln_p);
            let prev = ((l - 1) as f64) * LN2 + lam; // ln(2^(l-1)·ln(1+p))
            assert!(prev < p.ln_k.ln(), "l not minimal");
        }
    }

    #[test]
    fn fast_d_sequence_r2() {
        let p = solve_fast(1e4, 2).unwrap();
        assert!(p.d_prefix.len() >= 7);
        assert_eq!(&p.d_prefix[..7], &[2, 3, 5, 8, 12, 18, 27]);
        assert_eq!(&p.radii_prefix[..7], &[1, 2, 3, 4, 6, 9, 14]);
        assert!(p.margins[0] >= 0.0 && p.margins[1] >= 0.0);
    }

    #[test]
    fn fast_r1_matches_general_radii() {
        // R = 1: d₀ = 1 and the sequence doubles, so radii are 2^i
        let p = solve_fast(1e5, 1).unwrap();
        for (i, &r) in p.radii_prefix.iter().enumerate().take(10) {
            assert_eq!(r, 1u64 << i);
        }
    }

    #[test]
    fn fast_feasible_grid() {
        for l in [1e4, 1e5, 1e6, 1e7] {
            for r in [2usize, 3] {
                let p = solve_fast(l, r).unwrap();
                assert!(p.margins[0] >= 0.0 && p.margins[1] >= 0.0, "L={} R={}", l, r);
            }
        }
    }

    #[test]
    fn digraph_formulas() {
        let p = solve_digraph(1e9).unwrap();
        let expect_p = 13.0 * (1e9f64).ln().powi(2) / 1e9;
        assert!((p.p - expect_p).abs() < 1e-12);
        // r·p = 6·log(4/p) by definition
        let r = p.r.unwrap();
        assert!((r * p.p - 6.0 * (4.0 / p.p).ln()).abs() < 1e-6);
        assert!(p.margins[0] >= 0.0 && p.margins[1] >= 0.0);
    }

    #[test]
    fn digraph_margin_monotone() {
        let lo = solve_digraph(1e4).unwrap();
        let hi = solve_digraph(1e12).unwrap();
        assert!(hi.margins[0] >= lo.margins[0]);
    }

    #[test]
    fn digraph_infeasible_small() {
        assert!(matches!(
            solve_digraph(100.0),
            Err(ParamError::Infeasible { .. })
        ));
    }
}
