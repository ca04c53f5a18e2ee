//! Catalan numbers over any numeric type with `0`, `1`, `+` and `*`.

use num_traits::{CheckedAdd, CheckedMul, One, Zero};
use std::ops::{Add, Mul};

/// `C(n)` via the convolution `C(m+1) = sum_k C(k) C(m-k)`.
///
/// Overflows silently for fixed-width `T` past its range; use
/// [`checked_catalan`] there or an arbitrary-precision `T`.
pub fn catalan<T>(n: usize) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    let mut table: Vec<T> = Vec::with_capacity(n + 1);
    table.push(T::one());
    for m in 1..=n {
        let mut sum = T::zero();
        for k in 0..m {
            sum = sum + table[k].clone() * table[m - 1 - k].clone();
        }
        table.push(sum);
    }
    table.swap_remove(n)
}

/// `C(n)`, or `None` if any intermediate value overflows `T`.
pub fn checked_catalan<T>(n: usize) -> Option<T>
where
    T: Clone + Zero + One + CheckedAdd + CheckedMul,
{
    let mut table: Vec<T> = Vec::with_capacity(n + 1);
    table.push(T::one());
    for m in 1..=n {
        let mut sum = T::zero();
        for k in 0..m {
            let term = table[k].checked_mul(&table[m - 1 - k])?;
            sum = sum.checked_add(&term)?;
        }
        table.push(sum);
    }
    Some(table.swap_remove(n))
}
