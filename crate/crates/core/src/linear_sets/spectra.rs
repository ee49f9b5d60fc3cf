//! Spectra compatible with the counting identities of a rank-`k` linear set.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// All `(x_1, …, x_k)` with `x_i = 0` for `i > max_weight` such that
///
/// * `Σ x_i = size`,
/// * `Σ x_i (q^i − 1)/(q − 1) = (q^k − 1)/(q − 1)`,
/// * two distinct points of weights `i` and `j` satisfy `i + j ≤ k`.
///
/// The last condition holds in any linear set because the subspaces of `U`
/// belonging to two points meet trivially. Solutions come out in
/// lexicographic order of `(x_k, …, x_1)`, largest first.
pub fn feasible_spectra(k: usize, size: &BigUint, q: u64, max_weight: usize) -> Vec<Vec<BigUint>> {
    let Some(size) = size.to_u128() else {
        return Vec::new();
    };
    if k < 1 || q < 2 || max_weight == 0 {
        return Vec::new();
    }
    let q = q as u128;
    let Some(theta) =
        (0..=k).map(|i| q.checked_pow(i as u32).map(|p| (p - 1) / (q - 1))).collect::<Option<Vec<u128>>>()
    else {
        return Vec::new();
    };
    if size > theta[k] {
        return Vec::new();
    }
    let top = max_weight.min(k);
    let mut search = Search { k, top, size, theta, x: vec![0; k + 1], out: Vec::new() };
    // excess vectors beyond one per point, to be absorbed by weights ≥ 2
    let excess = search.theta[k] - size;
    search.go(top, excess, 0);
    search.out
}

struct Search {
    k: usize,
    top: usize,
    size: u128,
    theta: Vec<u128>,
    x: Vec<u128>,
    out: Vec<Vec<BigUint>>,
}

impl Search {
    fn compatible(&self, w: usize, count: u128) -> bool {
        if count == 0 {
            return true;
        }
        if count >= 2 && 2 * w > self.k {
            return false;
        }
        (w + 1..=self.top).all(|j| self.x[j] == 0 || w + j <= self.k)
    }

    fn go(&mut self, w: usize, excess: u128, used: u128) {
        if w == 1 {
            if excess != 0 || used > self.size {
                return;
            }
            let x1 = self.size - used;
            if !self.compatible(1, x1) {
                return;
            }
            self.x[1] = x1;
            self.out.push(self.x[1..].iter().map(|&c| BigUint::from(c)).collect());
            self.x[1] = 0;
            return;
        }
        let step = self.theta[w] - 1;
        let bound = (excess / step).min(self.theta[self.k] / self.theta[w]).min(self.size - used.min(self.size));
        for c in (0..=bound).rev() {
            if !self.compatible(w, c) {
                continue;
            }
            self.x[w] = c;
            self.go(w - 1, excess - c * step, used + c);
        }
        self.x[w] = 0;
    }
}
