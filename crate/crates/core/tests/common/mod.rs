//! Power series helpers shared by the oracle tests.

#![allow(dead_code)]

pub fn binomial(n: i128, k: i128) -> i128 {
    if k == 0 {
        return 1;
    }
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Multiplies a truncated power series by `(1 + t^n)^e` (odd n) or `(1 - t^n)^{-e}` (even n).
pub fn times_factor(p: &[i128], n: usize, e: i128) -> Vec<i128> {
    let len = p.len();
    let mut factor = vec![0i128; len];
    for j in 0..len {
        if j * n >= len {
            break;
        }
        let j = j as i128;
        factor[j as usize * n] = if n % 2 == 1 { binomial(e, j) } else { binomial(e + j - 1, j) };
    }
    let mut out = vec![0i128; len];
    for (i, a) in p.iter().enumerate() {
        for (k, b) in factor.iter().enumerate().take(len - i) {
            out[i + k] += a * b;
        }
    }
    out
}

/// Reads the deviations off a Poincaré series by peeling one factor per degree.
pub fn deviations_from_series(b: &[i128]) -> Vec<i128> {
    let mut q = vec![0i128; b.len()];
    q[0] = 1;
    let mut eps = Vec::new();
    for n in 1..b.len() {
        let e = b[n] - q[n];
        eps.push(e);
        q = times_factor(&q, n, e);
    }
    eps
}
