//! Saddle-point estimates for Bell numbers and for the moments of the
//! dimension and intertwining exponents.
//!
//! Everything is on the natural-log scale in `f64`; exact values enter
//! through [`ln_abs`], which reads the top 64 bits of a big integer.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exactnum::{bell, ln_abs, rational_to_f64, Integer, Rational};

/// Positive root of `u e^u = n + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaValue {
    pub n: u64,
    pub alpha: f64,
    /// `alpha e^alpha - (n + 1)`.
    pub residual: f64,
}

pub fn alpha(n: u64) -> AlphaValue {
    let target = n as f64 + 1.0;
    let mut u = (target.ln() - (n as f64 + 3.0).ln().ln()).max(1.0);
    // f(u) = u e^u - target is increasing and convex, so Newton from the
    // right of the root decreases monotonically onto it.
    for _ in 0..200 {
        let eu = u.exp();
        let step = (u * eu - target) / (eu * (u + 1.0));
        u -= step;
        if step.abs() <= 1e-16 * u.abs().max(1.0) {
            break;
        }
    }
    AlphaValue {
        n,
        alpha: u,
        residual: u * u.exp() - target,
    }
}

/// First correction `R_{1,k}(u)`.
pub fn r1(k: i64, u: f64) -> f64 {
    let k = k as f64;
    let num = (-12.0 * k * k + 24.0 * k - 2.0)
        + (-24.0 * k * k + 24.0 * k + 18.0) * u
        + (-12.0 * k * k - 12.0 * k + 20.0) * u.powi(2)
        + (-12.0 * k + 3.0) * u.powi(3)
        - 2.0 * u.powi(4);
    num / (24.0 * (u + 1.0).powi(3))
}

/// Second correction `R_{2,k}(u)`.
pub fn r2(k: i64, u: f64) -> f64 {
    let k = k as f64;
    let (k2, k3, k4) = (k * k, k.powi(3), k.powi(4));
    let c = [
        144.0 * k4 - 384.0 * k3 + 624.0 * k2 - 1152.0 * k + 100.0,
        576.0 * k4 - 576.0 * k3 + 816.0 * k2 - 3264.0 * k - 648.0,
        864.0 * k4 + 1056.0 * k3 + 432.0 * k2 - 6384.0 * k - 1292.0,
        576.0 * k4 + 2784.0 * k3 + 2280.0 * k2 - 7440.0 * k - 2604.0,
        144.0 * k4 + 2016.0 * k3 + 3888.0 * k2 - 3552.0 * k - 2988.0,
        480.0 * k3 + 2328.0 * k2 + 72.0 * k - 1800.0,
        480.0 * k2 + 600.0 * k - 551.0,
        144.0 * k - 60.0,
        4.0,
    ];
    let num = c.iter().rev().fold(0.0, |acc, x| acc * u + x);
    num / (1152.0 * (u + 1.0).powi(6))
}

/// An order-`T` estimate of `ln B_{n+k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymEstimate {
    pub n: u64,
    pub k: i64,
    pub order: u32,
    pub log_value: f64,
    /// `R_{m,k}(alpha_n) / n^m` for `m = 1..=order`.
    pub corrections: Vec<f64>,
}

impl AsymEstimate {
    /// `exact / estimate - 1`, given `ln` of the exact value.
    pub fn relative_error(&self, exact_log: f64) -> f64 {
        (exact_log - self.log_value).exp_m1()
    }
}

/// `ln B_{n+k}` from the saddle point of `B_n`, with `order <= 2`
/// corrections.
pub fn log_bell_asym(n: u64, k: i64, order: u32) -> Result<AsymEstimate> {
    if n == 0 || n as i64 + k < 0 {
        return Err(Error::Domain {
            n,
            shift: k,
            index: n as i64 + k,
        });
    }
    if order > 2 {
        return Err(Error::Parse(format!("correction order {order} above 2")));
    }
    let a = alpha(n).alpha;
    let nf = n as f64;
    let m = n as i64 + k;
    let zeta = ((nf + 1.0) * (a + 1.0) + k as f64) / (a * a);
    let corrections: Vec<f64> = (1..=order)
        .map(|t| {
            let r = if t == 1 { r1(k, a) } else { r2(k, a) };
            r / nf.powi(t as i32)
        })
        .collect();
    let log_value =
        ln_gamma(m as f64 + 1.0) - 0.5 * (2.0 * std::f64::consts::PI).ln() - 1.0 - 0.5 * zeta.ln()
            + a.exp()
            - (m as f64 + 1.0) * a.ln()
            + (1.0 + corrections.iter().sum::<f64>()).ln();
    Ok(AsymEstimate {
        n,
        k,
        order,
        log_value,
        corrections,
    })
}

/// Exact `ln B_m`.
pub fn log_bell_exact(m: usize) -> f64 {
    ln_abs(&bell(m))
}

/// Leading approximation to `B_{n+k} / B_n`:
/// `(n+k)!/n! alpha^{-k} (1 - k alpha / ((n+1)(alpha+1)))^{-1/2}`.
pub fn bell_ratio(n: u64, k: u64) -> f64 {
    let a = alpha(n).alpha;
    let (nf, kf) = (n as f64, k as f64);
    let log = ln_gamma(nf + kf + 1.0) - ln_gamma(nf + 1.0) - kf * a.ln();
    log.exp() * (1.0 - kf * a / ((nf + 1.0) * (a + 1.0))).powf(-0.5)
}

/// An asymptotic value together with the size of the omitted terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub value: f64,
    pub error_order: &'static str,
}

/// Estimates of the mean and the second and third central moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentAsym {
    pub mean: Term,
    pub s2: Term,
    pub s3: Term,
}

fn poly(cs: &[f64], a: f64) -> f64 {
    cs.iter().rev().fold(0.0, |acc, c| acc * a + c)
}

pub fn dim_moment_asym(n: u64) -> MomentAsym {
    let a = alpha(n).alpha;
    let nf = n as f64;
    let mean = (a - 2.0) / (a * a) * nf * nf;
    let s2 = (a * a - 7.0 * a + 17.0) / (a.powi(3) * (a + 1.0)) * nf.powi(3)
        + poly(&[-80.0, 116.0, 407.0, 69.0, -207.0, -136.0, -29.0, -8.0], a)
            / (2.0 * a.powi(4) * (a + 1.0).powi(4))
            * nf
            * nf;
    let s3 = poly(&[-881.0, -732.0, 435.0, -83.0, 6.0], a) / (3.0 * (a + 1.0).powi(3) * a.powi(4))
        * nf.powi(4);
    MomentAsym {
        mean: Term {
            value: mean,
            error_order: "O(n/alpha)",
        },
        s2: Term {
            value: s2,
            error_order: "O(n)",
        },
        s3: Term {
            value: s3,
            error_order: "O(n^3/alpha^2)",
        },
    }
}

pub fn int_moment_asym(n: u64) -> MomentAsym {
    let a = alpha(n).alpha;
    let nf = n as f64;
    let mean = (2.0 * a - 5.0) / (4.0 * a * a) * nf * nf;
    let s2 = poly(&[56.0, -22.0, 3.0], a) / (9.0 * a.powi(3) * (a + 1.0)) * nf.powi(3)
        + poly(
            &[175.0, 230.0, -12.0, -126.0, -155.0, -204.0, -52.0, -16.0],
            a,
        ) / (8.0 * a.powi(4) * (a + 1.0).powi(4))
            * nf
            * nf;
    let s3 = (a - 5.0) * poly(&[99.0, 100.0, -31.0, 4.0], a)
        / (8.0 * a.powi(4) * (a + 1.0).powi(3))
        * nf.powi(4);
    MomentAsym {
        mean: Term {
            value: mean,
            error_order: "O(n/alpha)",
        },
        s2: Term {
            value: s2,
            error_order: "O(n)",
        },
        s3: Term {
            value: s3,
            error_order: "O(n^3/alpha^3)",
        },
    }
}

/// Exact mean, variance and third central moment from raw moment sums
/// `[B_n, M_1, M_2, M_3]`, computed in rationals before rounding.
pub fn exact_summary(moments: &[Integer]) -> (f64, f64, f64) {
    assert!(moments.len() >= 4, "need moment sums up to order 3");
    let b = Rational::from_integer(moments[0].clone());
    let m: Vec<Rational> = moments[1..4]
        .iter()
        .map(|x| Rational::from_integer(x.clone()) / &b)
        .collect();
    let mean = m[0].clone();
    let s2 = &m[1] - &mean * &mean;
    let s3 = &m[2] - Rational::from_integer(3.into()) * &mean * &m[1]
        + Rational::from_integer(2.into()) * &mean * &mean * &mean;
    (
        rational_to_f64(&mean),
        rational_to_f64(&s2),
        rational_to_f64(&s3),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio_to_f64;
    use crate::recursions::{dim_moments, int_moments};

    #[test]
    fn alpha_values() {
        assert!((alpha(1).alpha - 0.8526055020).abs() < 1e-9);
        assert!((alpha(0).alpha - 0.5671432904).abs() < 1e-9);
        for n in [0, 1, 10, 100, 1000, 10000, 1_000_000] {
            let a = alpha(n);
            assert!(a.residual.abs() <= 1e-12 * (n as f64 + 1.0), "n={n}");
        }
    }

    #[test]
    fn bell_estimates_improve_with_order() {
        for n in [50u64, 100, 200, 400] {
            let exact = log_bell_exact(n as usize);
            let errs: Vec<f64> = (0..=2)
                .map(|t| log_bell_asym(n, 0, t).unwrap().relative_error(exact).abs())
                .collect();
            assert!(errs[2] < errs[1] && errs[1] < errs[0], "n={n}: {errs:?}");
        }
        let exact = log_bell_exact(100);
        assert!(
            log_bell_asym(100, 0, 0)
                .unwrap()
                .relative_error(exact)
                .abs()
                < 0.02
        );
        assert!(
            log_bell_asym(100, 0, 2)
                .unwrap()
                .relative_error(exact)
                .abs()
                < 0.01
        );
        let shifted = log_bell_asym(100, 3, 2)
            .unwrap()
            .relative_error(log_bell_exact(103));
        assert!(shifted.abs() < 0.01, "{shifted}");
        assert!(log_bell_asym(0, 0, 0).is_err());
        assert!(log_bell_asym(2, -3, 0).is_err());
    }

    #[test]
    fn ratio_estimates() {
        let exact = ratio_to_f64(&bell(101), &bell(100));
        assert!((bell_ratio(100, 1) / exact - 1.0).abs() < 0.01);
        assert_eq!(bell_ratio(100, 0), 1.0);
        let err = |n: u64| {
            (bell_ratio(n, 2) / ratio_to_f64(&bell(n as usize + 2), &bell(n as usize)) - 1.0).abs()
        };
        assert!(err(1000) < err(100));
    }

    #[test]
    fn mean_estimates_tighten() {
        let rel = |n: u64, dim: bool| {
            let m = if dim {
                dim_moments(3, n as usize)
            } else {
                int_moments(3, n as usize)
            };
            let (mean, _, _) = exact_summary(&m);
            let est = if dim {
                dim_moment_asym(n)
            } else {
                int_moment_asym(n)
            };
            (est.mean.value / mean - 1.0).abs()
        };
        for dim in [true, false] {
            let (a, b) = (rel(200, dim), rel(400, dim));
            assert!(a < 0.1 && b < a, "dim={dim}: {a} {b}");
        }
    }

    #[test]
    fn estimate_signs_follow_alpha_thresholds() {
        for n in [20u64, 30, 31, 50, 100, 700, 800, 1000, 5000, 100_000] {
            let a = alpha(n).alpha;
            let (d, i) = (dim_moment_asym(n), int_moment_asym(n));
            assert!(
                d.mean.value > 0.0 && d.s2.value > 0.0 && i.s2.value > 0.0,
                "n={n}"
            );
            assert_eq!(i.mean.value > 0.0, a > 2.5, "n={n}");
            assert_eq!(i.s3.value > 0.0, a > 5.0, "n={n}");
        }
        assert!(dim_moment_asym(100_000).s3.value > 0.0);
        assert!(int_moment_asym(100_000).s3.value > 0.0);
    }
}
