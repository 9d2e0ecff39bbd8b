use std::ops::RangeInclusive;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{FitProfile, ShiftedBellPolynomial, UniPoly};
use crate::error::{Error, Result};
use crate::exactnum::{bell, Integer, Rational};

/// Consecutive sample points `n0..=n0 + unknowns + holdout - 1` with
/// `n0 = max(1, -min_shift)`, so every Bell index is nonnegative.
pub fn default_sample_range(profile: &FitProfile, holdout: usize) -> RangeInclusive<u64> {
    let n0 = 1.max(-profile.min_shift()) as u64;
    n0..=n0 + (profile.unknowns() + holdout) as u64 - 1
}

/// Solves the (possibly overdetermined) system `rows * x = rhs` exactly.
///
/// Rows are cleared of denominators and reduced by fraction-free
/// (Bareiss) elimination, pivoting on the first nonzero entry. Errors with
/// [`Error::InsufficientSamples`] when some unknown is not determined and
/// with [`Error::ProfileMismatch`] when the equations are inconsistent.
pub fn solve_exact(rows: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    let unknowns = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Integer>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let lcm = row
                .iter()
                .chain(std::iter::once(b))
                .fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .chain(std::iter::once(b))
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();

    let mut prev = Integer::one();
    for c in 0..unknowns {
        let Some(p) = (c..m.len()).find(|&r| !m[r][c].is_zero()) else {
            return Err(Error::InsufficientSamples(format!(
                "{} equations leave unknown {c} of {unknowns} undetermined",
                rows.len()
            )));
        };
        m.swap(c, p);
        let (top, rest) = m.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..=unknowns {
                row[j] = (&pivot_row[c] * &row[j] - &factor * &pivot_row[j]) / &prev;
            }
            row[c] = Integer::zero();
        }
        prev = m[c][c].clone();
    }
    if let Some(r) = (unknowns..m.len()).find(|&r| !m[r][unknowns].is_zero()) {
        return Err(Error::ProfileMismatch(format!(
            "equation {r} is inconsistent with the others"
        )));
    }

    let mut x = vec![Rational::zero(); unknowns];
    for c in (0..unknowns).rev() {
        let mut acc = Rational::from_integer(m[c][unknowns].clone());
        for j in c + 1..unknowns {
            acc -= &x[j] * &m[c][j];
        }
        x[c] = acc / &m[c][c];
    }
    Ok(x)
}

/// Fits `sum_j Q_j(n) B_{n+j}` within `profile` to `samples`.
///
/// The last `holdout` samples are not used for solving; the solution must
/// reproduce them exactly or the profile is rejected.
pub fn fit(
    samples: &[(u64, Rational)],
    profile: &FitProfile,
    holdout: usize,
) -> Result<ShiftedBellPolynomial> {
    if holdout == 0 {
        return Err(Error::InsufficientSamples(
            "holdout must be at least 1".into(),
        ));
    }
    let unknowns = profile.unknowns();
    if samples.len() < unknowns + holdout {
        return Err(Error::InsufficientSamples(format!(
            "{} samples for {unknowns} unknowns and holdout {holdout}",
            samples.len()
        )));
    }
    if let Some(&(n, _)) = samples
        .iter()
        .find(|(n, _)| (*n as i64) + profile.min_shift() < 0)
    {
        return Err(Error::Domain {
            n,
            shift: profile.min_shift(),
            index: n as i64 + profile.min_shift(),
        });
    }

    let (train, check) = samples.split_at(samples.len() - holdout);
    let rows: Vec<Vec<Rational>> = train
        .iter()
        .map(|&(n, _)| {
            let mut row = Vec::with_capacity(unknowns);
            for (s, d) in profile.entries() {
                let b = bell((n as i64 + s) as usize);
                let mut term = b;
                for _ in 0..=d {
                    row.push(Rational::from_integer(term.clone()));
                    term *= n;
                }
            }
            row
        })
        .collect();
    let rhs: Vec<Rational> = train.iter().map(|(_, v)| v.clone()).collect();
    let x = solve_exact(&rows, &rhs)?;

    let mut terms = Vec::new();
    let mut it = x.into_iter();
    for (s, d) in profile.entries() {
        terms.push((s, UniPoly::new(it.by_ref().take(d + 1).collect())));
    }
    let mut coeffs = std::collections::BTreeMap::new();
    coeffs.extend(terms);
    let r = ShiftedBellPolynomial::new(profile.min_shift(), profile.max_shift(), coeffs)?;

    for (n, v) in check {
        if &r.evaluate(*n)? != v {
            return Err(Error::ProfileMismatch(format!(
                "fitted formula misses the held-out value at n = {n}"
            )));
        }
    }
    Ok(r)
}

/// Samples `f` on [`default_sample_range`] and fits.
pub fn fit_function(
    profile: &FitProfile,
    holdout: usize,
    mut f: impl FnMut(u64) -> Result<Rational>,
) -> Result<ShiftedBellPolynomial> {
    let samples = default_sample_range(profile, holdout)
        .map(|n| f(n).map(|v| (n, v)))
        .collect::<Result<Vec<_>>>()?;
    fit(&samples, profile, holdout)
}

#[cfg(test)]
mod tests {
    use super::super::{profile_dim, profile_generic, profile_int};
    use super::*;
    use crate::recursions::{dim_moment_series, int_moment_series};
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn solver_square_and_overdetermined() {
        let rows = vec![ints(&[2, 1]), ints(&[1, 3]), ints(&[1, 1])];
        let rhs = ints(&[5, 10, 4]);
        assert_eq!(solve_exact(&rows, &rhs).unwrap(), ints(&[1, 3]));
        let bad = ints(&[5, 10, 5]);
        assert!(matches!(
            solve_exact(&rows, &bad),
            Err(Error::ProfileMismatch(_))
        ));
        let singular = vec![ints(&[1, 2]), ints(&[2, 4])];
        assert!(matches!(
            solve_exact(&singular, &ints(&[1, 2])),
            Err(Error::InsufficientSamples(_))
        ));
        let fractional = vec![vec![q(1, 2), q(1, 3)], vec![q(1, 1), q(-1, 1)]];
        assert_eq!(
            solve_exact(&fractional, &[q(1, 1), q(0, 1)]).unwrap(),
            vec![q(6, 5), q(6, 5)]
        );
    }

    #[test]
    fn fits_block_count() {
        let samples: Vec<_> = (1..=7u64)
            .map(|n| {
                (
                    n,
                    Rational::from_integer(bell(n as usize + 1) - bell(n as usize)),
                )
            })
            .collect();
        let r = fit(&samples, &profile_generic(1, 1), 2).unwrap();
        assert_eq!(r.canonical_text(), "j=0: -1 ; j=1: 1");
        // n = 1..6 with two held out leaves four equations for five unknowns
        assert!(matches!(
            fit(&samples[..6], &profile_generic(1, 1), 2),
            Err(Error::InsufficientSamples(_))
        ));
    }

    #[test]
    fn fits_mean_dimension_and_intertwining() {
        let dim = dim_moment_series(1, 8);
        let samples: Vec<_> = (1..=8u64)
            .map(|n| (n, Rational::from_integer(dim[n as usize][1].clone())))
            .collect();
        let r = fit(&samples, &profile_dim(1), 3).unwrap();
        assert_eq!(r.canonical_text(), "j=1: 4 + 1*n ; j=2: -2");

        // ten unknowns plus three held out needs n = 1..13
        let int = int_moment_series(1, 13);
        let samples: Vec<_> = (1..=13u64)
            .map(|n| (n, Rational::from_integer(int[n as usize][1].clone())))
            .collect();
        assert!(fit(&samples[..12], &profile_int(1), 3).is_err());
        let r = fit(&samples, &profile_int(1), 3).unwrap();
        assert_eq!(
            r.canonical_text(),
            "j=0: 1/4 + 1/2*n ; j=1: 9/4 + 1/2*n ; j=2: -5/4"
        );
        assert!(r.coeff(-1).is_zero());
    }

    #[test]
    fn wrong_profile_is_rejected() {
        // M(d; n) needs shift 2; a profile stopping at shift 1 cannot hold it
        let dim = dim_moment_series(1, 12);
        let profile = FitProfile::new([(0, 1), (1, 1)]).unwrap();
        let samples: Vec<_> = (1..=12u64)
            .map(|n| (n, Rational::from_integer(dim[n as usize][1].clone())))
            .collect();
        assert!(matches!(
            fit(&samples, &profile, 3),
            Err(Error::ProfileMismatch(_))
        ));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..12).prop_map(|(a, b)| q(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn fit_inverts_evaluate(k in 1usize..3, which in 0usize..3, seed in proptest::collection::vec(arb_rational(), 40)) {
            let profile = match which {
                0 => profile_dim(k),
                1 => profile_int(k),
                _ => profile_generic(k, k),
            };
            let mut it = seed.into_iter().cycle();
            let r = ShiftedBellPolynomial::new(
                profile.min_shift(),
                profile.max_shift(),
                profile
                    .entries()
                    .map(|(s, d)| (s, UniPoly::new(it.by_ref().take(d + 1).collect())))
                    .collect(),
            )
            .unwrap();
            let fitted = fit_function(&profile, 3, |n| r.evaluate(n)).unwrap();
            prop_assert_eq!(fitted, r);
        }
    }
}
