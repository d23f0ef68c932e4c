//! Euler's constant and Riemann zeta at integer arguments.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Euler–Mascheroni constant to 30 significant digits.
pub const EULER_GAMMA_LITERAL: &str = "0.577215664901532860606512090082";

pub fn euler_gamma<T: Real>() -> T {
    T::lit(0.577_215_664_901_532_9)
}

/// `zeta(k)` together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue<T> {
    pub k: u32,
    pub value: T,
    pub abs_error_bound: T,
}

/// Terms summed explicitly before the Euler–Maclaurin tail takes over.
const HEAD_TERMS: u32 = 16;

/// `B_{2j} / (2j)!` for j = 1..=8.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
];

/// `zeta(k) = sum_{n >= 1} n^{-k}` for integer `k >= 2`.
///
/// The first `HEAD_TERMS - 1` terms are summed directly; the tail
/// `sum_{n >= N} n^{-k}` is replaced by its Euler–Maclaurin expansion
/// (integral, half endpoint, seven Bernoulli corrections). The first omitted
/// correction bounds the truncation error, which for `f64` stays below 1e-19
/// for every `k`, so the reported bound is dominated by rounding.
pub fn zeta<T: Real>(k: i64) -> Result<ZetaValue<T>> {
    if k < 2 {
        return Err(Error::ZetaArgument(k));
    }
    let k = u32::try_from(k).unwrap_or(u32::MAX);
    let exp = k.min(i32::MAX as u32) as i32;
    let n = T::of_u64(HEAD_TERMS as u64);
    let kf = T::of_u64(k as u64);
    let n_pow = |e: i32| -> T { n.powi(-e) };

    // rising factorial (k)_{2j-1}, built incrementally
    let mut rising = kf;
    let mut corrections = Vec::with_capacity(BERNOULLI_OVER_FACTORIAL.len() - 1);
    let mut omitted = T::zero();
    for (j, &coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let m = 2 * j as i32 + 1;
        let term = T::lit(coef) * rising * n_pow(exp.saturating_add(m));
        if j + 1 == BERNOULLI_OVER_FACTORIAL.len() {
            omitted = term.abs();
        } else {
            corrections.push(term);
        }
        rising = rising * (kf + T::of_u64(m as u64)) * (kf + T::of_u64(m as u64 + 1));
    }

    let mut sum = T::zero();
    for c in corrections.into_iter().rev() {
        sum = sum + c;
    }
    sum = sum + n_pow(exp) / T::lit(2.0);
    sum = sum + n_pow(exp - 1) / (kf - T::one());
    for i in (1..HEAD_TERMS).rev() {
        sum = sum + T::of_u64(i as u64).powi(-exp);
    }

    let rounding = T::lit(4.0 * HEAD_TERMS as f64) * T::epsilon() * sum;
    Ok(ZetaValue {
        k,
        value: sum,
        abs_error_bound: omitted + rounding,
    })
}

/// Shorthand for `zeta(k).value` where `k >= 2` is already established.
pub(crate) fn zeta_value<T: Real>(k: u32) -> T {
    zeta::<T>(k as i64)
        .expect("zeta argument checked by caller")
        .value
}
