//! Kendall tau-b rank correlation with an exact permutation test.
//!
//! Sequences here are tiny (the ring analysis compares six values), so the
//! p-value is computed exactly by enumerating all n! rearrangements of one
//! sequence instead of relying on a normal approximation.

use std::cmp::Ordering;

/// Errors from [`kendall_tau_b`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KendallError {
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least 2 observations, got {len}")]
    TooShort { len: usize },
    #[error("exact permutation test is limited to 8 observations, got {len}")]
    TooLong { len: usize },
    #[error("tau is undefined for a constant sequence")]
    ConstantSequence,
}

/// Result of the correlation test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KendallTest {
    /// Tie-corrected tau-b statistic.
    pub tau: f64,
    /// Exact tail probability in the direction of the observed tau.
    pub p_one_sided: f64,
    /// Exact two-sided p-value: twice the smaller tail, capped at 1.
    pub p_two_sided: f64,
    /// Number of arrangements enumerated (n!).
    pub permutations: u64,
}

fn tau_b(a: &[i64], b: &[i64]) -> f64 {
    let n = a.len();
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    let mut tied_a = 0i64;
    let mut tied_b = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let da = a[i].cmp(&a[j]);
            let db = b[i].cmp(&b[j]);
            if da == Ordering::Equal {
                tied_a += 1;
            }
            if db == Ordering::Equal {
                tied_b += 1;
            }
            if da == Ordering::Equal || db == Ordering::Equal {
                continue;
            }
            if da == db {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let denom = (pairs - tied_a as f64) * (pairs - tied_b as f64);
    (concordant - discordant) as f64 / denom.sqrt()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Tau-b between two equal-length integer sequences plus an exact
/// permutation p-value over all n! rearrangements of `b`.
pub fn kendall_tau_b(a: &[i64], b: &[i64]) -> Result<KendallTest, KendallError> {
    if a.len() != b.len() {
        return Err(KendallError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    if n < 2 {
        return Err(KendallError::TooShort { len: n });
    }
    if n > 8 {
        return Err(KendallError::TooLong { len: n });
    }
    let constant = |s: &[i64]| s.iter().all(|&v| v == s[0]);
    if constant(a) || constant(b) {
        return Err(KendallError::ConstantSequence);
    }

    let observed = tau_b(a, b);

    // Heap's algorithm over a working copy of b; ties in b keep the
    // denominator identical across arrangements.
    let slack = 1e-12;
    let mut ge = 0u64;
    let mut le = 0u64;
    let mut tally = |t: f64| {
        if t >= observed - slack {
            ge += 1;
        }
        if t <= observed + slack {
            le += 1;
        }
    };
    let mut perm = b.to_vec();
    let mut stack = vec![0usize; n];
    tally(tau_b(a, &perm));
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            tally(tau_b(a, &perm));
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }

    let total = factorial(n);
    let tail = if observed >= 0.0 { ge } else { le };
    let p_one_sided = tail as f64 / total as f64;
    let p_two_sided = (2.0 * ge.min(le) as f64 / total as f64).min(1.0);
    Ok(KendallTest {
        tau: observed,
        p_one_sided,
        p_two_sided,
        permutations: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // displacement totals vs ring distances from one base order
    const DELTAS: [i64; 6] = [0, 2, 2, 4, 4, 4];
    const DISTANCES: [i64; 6] = [0, 1, 1, 2, 2, 3];

    #[test]
    fn ring_sequences_give_reference_tau() {
        let t = kendall_tau_b(&DELTAS, &DISTANCES).unwrap();
        // hand count: 11 concordant, 0 discordant, 4 ties in a, 2 in b
        assert_abs_diff_eq!(t.tau, 11.0 / 143.0_f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(t.tau, 0.92, epsilon = 0.005);
        assert_eq!(t.permutations, 720);
    }

    #[test]
    fn ring_sequences_give_exact_p_values() {
        let t = kendall_tau_b(&DELTAS, &DISTANCES).unwrap();
        // 12 of the 720 arrangements reach |tau| = 11/sqrt(143)
        assert_abs_diff_eq!(t.p_one_sided, 12.0 / 720.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.p_two_sided, 24.0 / 720.0, epsilon = 1e-12);
    }

    #[test]
    fn perfect_concordance() {
        let t = kendall_tau_b(&[1, 2, 3], &[1, 2, 3]).unwrap();
        assert_abs_diff_eq!(t.tau, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.p_one_sided, 1.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn reversing_one_sequence_negates_tau() {
        let a = [4, 1, 3, 2, 2];
        let b = [1, 2, 2, 5, 3];
        let negated: Vec<i64> = b.iter().map(|v| -v).collect();
        let t1 = kendall_tau_b(&a, &b).unwrap();
        let t2 = kendall_tau_b(&a, &negated).unwrap();
        assert_abs_diff_eq!(t1.tau, -t2.tau, epsilon = 1e-12);
        assert_abs_diff_eq!(t1.p_one_sided, t2.p_one_sided, epsilon = 1e-12);
        assert_abs_diff_eq!(t1.p_two_sided, t2.p_two_sided, epsilon = 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            kendall_tau_b(&[1, 2], &[1, 2, 3]),
            Err(KendallError::LengthMismatch { left: 2, right: 3 })
        );
        assert_eq!(
            kendall_tau_b(&[1], &[1]),
            Err(KendallError::TooShort { len: 1 })
        );
        assert_eq!(
            kendall_tau_b(&[5, 5, 5], &[1, 2, 3]),
            Err(KendallError::ConstantSequence)
        );
        let long: Vec<i64> = (0..9).collect();
        assert_eq!(
            kendall_tau_b(&long, &long),
            Err(KendallError::TooLong { len: 9 })
        );
    }

    #[test]
    fn p_values_lie_in_unit_interval() {
        let t = kendall_tau_b(&[1, 3, 2, 4], &[2, 1, 4, 3]).unwrap();
        assert!(t.tau.abs() <= 1.0);
        assert!((0.0..=1.0).contains(&t.p_one_sided));
        assert!((0.0..=1.0).contains(&t.p_two_sided));
    }
}
