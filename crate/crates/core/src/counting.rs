//! Exact schedule counts.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Binomial coefficients `C(n, k)` for `k = 0..=n`.
fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for k in 1..row.len() {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    row
}

/// Number of block-sequential schedules of `n` nodes:
/// `B(n) = sum_{k<n} C(n,k) B(k)`, `B(0) = 1`.
pub fn count_block_sequential(n: usize) -> BigUint {
    let mut b: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=n {
        let row = binomial_row(m);
        let value = (0..m).map(|k| &row[k] * &b[k]).sum();
        b.push(value);
    }
    b.swap_remove(n)
}

/// Number of surjections from `n` nodes onto `k` ordered blocks:
/// `S(n,k) = k (S(n-1,k-1) + S(n-1,k))`.
pub fn count_surjections(n: usize, k: usize) -> BigUint {
    surjection_row(n)
        .get(k)
        .cloned()
        .unwrap_or_else(BigUint::zero)
}

/// `S(n, k)` for `k = 0..=n`.
pub fn surjection_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()]; // S(0, 0)
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for (k, slot) in next.iter_mut().enumerate().skip(1) {
            let prev_k1 = &row[k - 1];
            let prev_k = row.get(k).cloned().unwrap_or_default();
            *slot = BigUint::from(k) * (prev_k1 + prev_k);
        }
        row = next;
    }
    row
}

/// Number of schedules once cyclic rotations of the block list are
/// identified: `sum_{k=1..n} S(n,k) / k`.
///
/// The `k = 0` term vanishes for `n >= 1`. Every term is an exact integer
/// (`k` rotations of `k` distinct blocks); the division is checked. For
/// `n = 0` the sum is empty and the result is 0.
pub fn count_rotation_classes(n: usize) -> BigUint {
    surjection_row(n)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(k, s)| {
            let (q, r) = s.div_rem(&BigUint::from(k));
            assert!(r.is_zero(), "S({n},{k}) not divisible by {k}");
            q
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn block_sequential_counts() {
        let expected = [1u64, 1, 3, 13, 75, 541, 4683, 47293, 545835];
        for (n, &v) in expected.iter().enumerate() {
            assert_eq!(count_block_sequential(n), b(v), "B({n})");
        }
    }

    #[test]
    fn surjection_counts() {
        for n in 1..8 {
            assert_eq!(count_surjections(n, 1), b(1));
        }
        assert_eq!(count_surjections(3, 2), b(6));
        assert_eq!(count_surjections(2, 2), b(2));
        assert_eq!(count_surjections(0, 0), b(1));
        assert_eq!(count_surjections(3, 0), b(0));
        assert_eq!(count_surjections(0, 2), b(0));
        assert_eq!(count_surjections(3, 5), b(0));
    }

    #[test]
    fn surjections_sum_to_block_sequential() {
        for n in 0..10 {
            let total: BigUint = surjection_row(n).into_iter().sum();
            assert_eq!(total, count_block_sequential(n));
        }
    }

    #[test]
    fn rotation_class_counts() {
        assert_eq!(count_rotation_classes(1), b(1));
        assert_eq!(count_rotation_classes(2), b(2));
        assert_eq!(count_rotation_classes(3), b(6));
        // 1 + 14/2 + 36/3 + 24/4
        assert_eq!(count_rotation_classes(4), b(26));
    }

    #[test]
    fn large_values_are_exact() {
        // B(20) exceeds u64.
        let big = count_block_sequential(20);
        assert_eq!(big.to_string(), "2677687796244384203115");
    }
}
