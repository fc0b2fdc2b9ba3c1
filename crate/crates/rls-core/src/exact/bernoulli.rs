//! Bernoulli numbers with a process-wide cache.
//!
//! Convention: `B_1 = -1/2` (the "minus" convention), so the defining
//! recurrence `sum_{j=0}^{m} C(m+1, j) B_j = 0` for `m >= 1` holds verbatim.

use std::sync::{OnceLock, RwLock};

use super::{Integer, Rational};

static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

fn cache() -> &'static RwLock<Vec<Rational>> {
    CACHE.get_or_init(|| RwLock::new(vec![Rational::from(1)]))
}

/// The Bernoulli number `B_n`.
///
/// Values are computed once by the defining recurrence and cached for the
/// lifetime of the process. Reads are concurrent; extending the cache takes
/// a write lock and is idempotent, so racing extenders are safe.
pub fn bernoulli(n: u32) -> Rational {
    {
        let v = cache().read().expect("bernoulli cache poisoned");
        if (n as usize) < v.len() {
            return v[n as usize].clone();
        }
    }
    let mut v = cache().write().expect("bernoulli cache poisoned");
    while v.len() <= n as usize {
        let m = v.len() as u32;
        // B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1, j) B_j
        let mut s = Rational::new();
        for j in 0..m {
            let c = Integer::from(Integer::binomial_u(m + 1, j));
            s += Rational::from(&v[j as usize] * c);
        }
        s *= Rational::from((-1, i64::from(m) + 1));
        v.push(s);
    }
    v[n as usize].clone()
}

/// `B_n / n!`, the form in which Bernoulli numbers enter every identity here.
pub fn bernoulli_over_factorial(n: u32) -> Rational {
    bernoulli(n) / Rational::from(Integer::from(Integer::factorial(n)))
}

/// The rational `r_k` with `zeta(2k) = r_k * pi^(2k)` from Euler's formula,
/// i.e. `r_k = (-1)^(k+1) * 2^(2k) * B_(2k) / (2 * (2k)!)` for `k >= 1`.
pub fn euler_even_zeta_rational(k: u32) -> Rational {
    assert!(k >= 1, "euler_even_zeta_rational requires k >= 1");
    let mut r = bernoulli_over_factorial(2 * k);
    r *= Rational::from(Integer::from(1) << (2 * k));
    r /= 2;
    if k % 2 == 0 {
        r = -r;
    }
    r
}
