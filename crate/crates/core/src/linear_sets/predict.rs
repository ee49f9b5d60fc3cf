//! Closed-form weight distributions.
//!
//! All functions sort the partition ascending first. Spectra are returned as
//! `x_1, …, x_k` with entry `i − 1` counting points of weight `i`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

fn sorted(partition: &[usize]) -> Vec<usize> {
    let mut t = partition.to_vec();
    t.sort_unstable();
    t
}

/// Spectrum of the two-part construction:
/// `x_i = q^{k−2i+1} − q^{k−2i−1}` for `i < t_1`, then `q^{t_2−t_1+1}` points
/// of weight `t_1` and one point of weight `t_2`.
pub fn predicted_spectrum_line(q: u64, partition: &[usize]) -> Result<Vec<BigUint>> {
    if partition.len() != 2 {
        return Err(Error::BadShape(format!("expected two parts, got {}", partition.len())));
    }
    let t = sorted(partition);
    let (t1, t2) = (t[0], t[1]);
    if t1 == 0 {
        return Err(Error::OutOfRange("parts must be positive".into()));
    }
    let k = t1 + t2;
    let q = BigUint::from(q);
    let mut x = vec![BigUint::zero(); k];
    for i in 1..t1 {
        x[i - 1] = q.pow((k - 2 * i + 1) as u32) - q.pow((k - 2 * i - 1) as u32);
    }
    x[t1 - 1] += q.pow((t2 - t1 + 1) as u32);
    x[t2 - 1] += 1u32;
    Ok(x)
}

/// Number of weight-`w` points whose reduced form has `f_1 ≠ 0`, where
/// `f_1` belongs to the smallest part.
///
/// With `l + 1` parts and `k = Σ t_i` this is
/// `Σ_{i=w}^{t_1} (q^{k−(w−1)l−i} − q^{k−wl−i}) − Σ_{i=w+1}^{t_1−1} (q^{k−wl−i} − q^{k−(w+1)l−i})`
/// for `w < t_1` and `q^{k−(t_1−1)l−t_1}` for `w = t_1`.
pub fn predicted_stratum_counts(q: u64, partition: &[usize], w: usize) -> Result<BigUint> {
    let t = sorted(partition);
    let Some(&t1) = t.first() else {
        return Err(Error::OutOfRange("empty partition".into()));
    };
    if w == 0 || w > t1 {
        return Err(Error::OutOfRange(format!("weight {w} outside 1..={t1}")));
    }
    let k: usize = t.iter().sum();
    let l = t.len() - 1;
    let q = BigUint::from(q);
    let p = |e: usize| q.pow(e as u32);
    if w == t1 {
        return Ok(p(k - (t1 - 1) * l - t1));
    }
    let plus: BigUint = (w..=t1).map(|i| p(k - (w - 1) * l - i) - p(k - w * l - i)).sum();
    let minus: BigUint = (w + 1..t1).map(|i| p(k - w * l - i) - p(k - (w + 1) * l - i)).sum();
    if minus > plus {
        return Err(Error::OutOfRange(format!("negative stratum count at weight {w}")));
    }
    Ok(plus - minus)
}

/// Full spectrum for any number of parts: the `f_1 ≠ 0` stratum from
/// [`predicted_stratum_counts`], then the `f_1 = 0` points, which form the
/// same construction on the remaining parts.
pub fn predicted_spectrum(q: u64, partition: &[usize]) -> Result<Vec<BigUint>> {
    let t = sorted(partition);
    if t.is_empty() || t[0] == 0 {
        return Err(Error::OutOfRange("parts must be positive".into()));
    }
    let k: usize = t.iter().sum();
    let mut x = vec![BigUint::zero(); k];
    for start in 0..t.len() {
        let rest = &t[start..];
        for w in 1..=rest[0] {
            x[w - 1] += predicted_stratum_counts(q, rest, w)?;
        }
    }
    Ok(x)
}
