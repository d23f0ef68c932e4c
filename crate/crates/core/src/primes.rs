//! Prime enumeration and the small arithmetic functions built on it.
//!
//! Primes come from a segmented sieve of Eratosthenes: base primes up to
//! `sqrt(limit)` are found once with a plain sieve, then the range is swept
//! one fixed-size window at a time. Memory is one window plus the base primes,
//! which keeps a sweep to 10^9 at about a megabyte.

use crate::error::{Error, Result};

/// Integers per sieve window.
pub const DEFAULT_SEGMENT: usize = 1 << 20;

/// Largest `r` with `r * r <= n`.
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// Plain sieve for the base primes.
fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Ascending stream of the primes `p <= limit`.
///
/// Implements [`Iterator`]; [`PrimeStream::next_segment`] hands out whole
/// windows at once for callers that want to batch work per window.
#[derive(Debug, Clone)]
pub struct PrimeStream {
    limit: u64,
    segment: usize,
    base: Vec<u64>,
    lo: u64,
    buf: Vec<u64>,
    pos: usize,
    marks: Vec<bool>,
}

impl PrimeStream {
    pub fn new(limit: u64) -> Self {
        Self::with_segment(limit, DEFAULT_SEGMENT)
    }

    /// `segment` is clamped to at least one integer per window.
    pub fn with_segment(limit: u64, segment: usize) -> Self {
        let segment = segment.max(1);
        Self {
            limit,
            segment,
            base: simple_sieve(isqrt(limit)),
            lo: 2,
            buf: Vec::new(),
            pos: 0,
            marks: Vec::new(),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Sieves the next window and returns its primes, or `None` once the
    /// stream is past `limit`. Windows with no primes are skipped.
    ///
    /// Primes of a window returned here are not also yielded by `next()`.
    pub fn next_segment(&mut self) -> Option<&[u64]> {
        loop {
            if self.lo > self.limit {
                self.buf.clear();
                self.pos = 0;
                return None;
            }
            let lo = self.lo;
            let hi = lo.saturating_add(self.segment as u64 - 1).min(self.limit);
            let len = (hi - lo + 1) as usize;
            self.marks.clear();
            self.marks.resize(len, false);
            for &p in &self.base {
                if p * p > hi {
                    break;
                }
                let first = (lo.div_ceil(p) * p).max(p * p);
                let mut m = first;
                while m <= hi {
                    self.marks[(m - lo) as usize] = true;
                    m += p;
                }
            }
            self.buf.clear();
            self.buf.extend(
                self.marks
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| lo + i as u64),
            );
            // consumed by next_segment, so next() must not replay it
            self.pos = self.buf.len();
            match hi.checked_add(1) {
                Some(next) => self.lo = next,
                None => self.limit = 0,
            }
            if !self.buf.is_empty() {
                return Some(&self.buf);
            }
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.pos >= self.buf.len() {
            self.next_segment()?;
            self.pos = 0;
        }
        let p = self.buf[self.pos];
        self.pos += 1;
        Some(p)
    }
}

/// All primes `p <= limit`, ascending. Empty below 2.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    PrimeStream::new(limit).collect()
}

/// Number of primes `p <= limit`.
pub fn prime_count(limit: u64) -> u64 {
    let mut stream = PrimeStream::new(limit);
    let mut n = 0u64;
    while let Some(seg) = stream.next_segment() {
        n += seg.len() as u64;
    }
    n
}

/// Deterministic trial division; intended for arguments up to about 10^12.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization by trial division as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len().is_multiple_of(2) { 1 } else { -1 })
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::BadModulus(p));
    }
    let r = (a as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}
