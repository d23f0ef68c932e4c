//! The catalog of varieties and polynomials, with their point counts over F_p.
//!
//! Every catalog entry has two ways of producing its local factor at a prime:
//!
//! * [`exact_count`] builds `|X(F_p)|` as an exact big integer from the
//!   classical group-order / subspace-count / cyclotomic formulas, and
//! * [`log_local_ratio`] evaluates `log(|X(F_p)| / p^d)` from the same
//!   formulas rewritten as rational functions of `1/p`, so it never forms a
//!   large integer and stays usable for every prime in a 10^9 sweep.
//!
//! The two must agree wherever both are cheap; the tests hold them to that.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::primes::{divisors, euler_phi, is_prime, mobius};
use crate::scalar::Real;

/// Largest accepted `n` (or `m`) parameter.
pub const MAX_PARAM: u32 = 100_000;

/// Accepted text forms, echoed back on parse errors.
pub const SPEC_GRAMMAR: &str =
    "gl:n, sl:n, sp:n, affine:n, proj:n, gr:n,m, circle, phi:n, ec:a4,a6";

/// Short Weierstrass curve `y^2 = x^3 + a4 x + a6` with nonzero discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EcCurve {
    a4: i64,
    a6: i64,
    discriminant: i128,
}

impl EcCurve {
    pub fn new(a4: i64, a6: i64) -> Result<Self> {
        let overflow = || Error::CurveOverflow { a4, a6 };
        let (x, y) = (a4 as i128, a6 as i128);
        let cube = x
            .checked_mul(x)
            .and_then(|v| v.checked_mul(x))
            .and_then(|v| v.checked_mul(4))
            .ok_or_else(overflow)?;
        let square = y
            .checked_mul(y)
            .and_then(|v| v.checked_mul(27))
            .ok_or_else(overflow)?;
        let discriminant = cube
            .checked_add(square)
            .and_then(|v| v.checked_mul(-16))
            .ok_or_else(overflow)?;
        if discriminant == 0 {
            return Err(Error::SingularCurve { a4, a6 });
        }
        Ok(Self {
            a4,
            a6,
            discriminant,
        })
    }

    pub fn a4(&self) -> i64 {
        self.a4
    }

    pub fn a6(&self) -> i64 {
        self.a6
    }

    /// `-16 (4 a4^3 + 27 a6^2)`.
    pub fn discriminant(&self) -> i128 {
        self.discriminant
    }

    /// Good reduction at `p`: `p` does not divide the discriminant and `p >= 5`.
    pub fn good(&self, p: u64) -> bool {
        p >= 5 && self.discriminant % p as i128 != 0
    }

    fn check_good(&self, p: u64) -> Result<()> {
        if self.good(p) {
            Ok(())
        } else {
            Err(Error::BadReduction {
                p,
                a4: self.a4,
                a6: self.a6,
            })
        }
    }
}

/// Which catalog entry, with its integer parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    GL(u32),
    SL(u32),
    Sp(u32),
    Affine(u32),
    Proj(u32),
    /// `m`-dimensional subspaces of an `n`-dimensional space.
    Gr {
        n: u32,
        m: u32,
    },
    /// `x^2 + y^2 = 1`.
    Circle,
    /// The cyclotomic polynomial `Phi_n`, treated through `Phi_n(p) / p^{phi(n)}`.
    Cyclotomic(u32),
    Elliptic(EcCurve),
}

/// A validated catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarietySpec {
    kind: Kind,
}

fn check_param(name: &str, v: u32) -> Result<()> {
    if v == 0 || v > MAX_PARAM {
        return Err(Error::InvalidSpec(format!(
            "{name} must lie in 1..={MAX_PARAM}, got {v}"
        )));
    }
    Ok(())
}

impl VarietySpec {
    pub fn new(kind: Kind) -> Result<Self> {
        match kind {
            Kind::GL(n) | Kind::SL(n) | Kind::Sp(n) | Kind::Affine(n) | Kind::Proj(n) => {
                check_param("n", n)?
            }
            Kind::Cyclotomic(n) => check_param("n", n)?,
            Kind::Gr { n, m } => {
                check_param("n", n)?;
                check_param("m", m)?;
                if m >= n {
                    return Err(Error::InvalidSpec(format!(
                        "Gr(n,m) needs n > m >= 1, got n = {n}, m = {m}"
                    )));
                }
            }
            Kind::Circle | Kind::Elliptic(_) => {}
        }
        Ok(Self { kind })
    }

    pub fn gl(n: u32) -> Result<Self> {
        Self::new(Kind::GL(n))
    }
    pub fn sl(n: u32) -> Result<Self> {
        Self::new(Kind::SL(n))
    }
    pub fn sp(n: u32) -> Result<Self> {
        Self::new(Kind::Sp(n))
    }
    pub fn affine(n: u32) -> Result<Self> {
        Self::new(Kind::Affine(n))
    }
    pub fn proj(n: u32) -> Result<Self> {
        Self::new(Kind::Proj(n))
    }
    pub fn gr(n: u32, m: u32) -> Result<Self> {
        Self::new(Kind::Gr { n, m })
    }
    pub fn circle() -> Self {
        Self { kind: Kind::Circle }
    }
    pub fn cyclotomic(n: u32) -> Result<Self> {
        Self::new(Kind::Cyclotomic(n))
    }
    pub fn elliptic(a4: i64, a6: i64) -> Result<Self> {
        Ok(Self {
            kind: Kind::Elliptic(EcCurve::new(a4, a6)?),
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn curve(&self) -> Option<&EcCurve> {
        match &self.kind {
            Kind::Elliptic(c) => Some(c),
            _ => None,
        }
    }

    /// The exponent `d` in `p^d`: the dimension, or `deg Phi_n` for cyclotomics.
    pub fn dimension(&self) -> u64 {
        match self.kind {
            Kind::GL(n) => n as u64 * n as u64,
            Kind::SL(n) => n as u64 * n as u64 - 1,
            Kind::Sp(n) => n as u64 * (2 * n as u64 + 1),
            Kind::Affine(n) | Kind::Proj(n) => n as u64,
            Kind::Gr { n, m } => m as u64 * (n - m) as u64,
            Kind::Circle | Kind::Elliptic(_) => 1,
            Kind::Cyclotomic(n) => euler_phi(n as u64).expect("n >= 1"),
        }
    }

    /// Prime where the local factor is defined (always true off elliptic curves).
    pub fn is_good_prime(&self, p: u64) -> bool {
        match &self.kind {
            Kind::Elliptic(c) => c.good(p),
            _ => true,
        }
    }

    pub(crate) fn local_model(&self) -> LocalModel {
        LocalModel::new(self)
    }
}

/// Free-function form of [`VarietySpec::dimension`].
pub fn dimension(spec: &VarietySpec) -> u64 {
    spec.dimension()
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::GL(n) => write!(f, "gl:{n}"),
            Kind::SL(n) => write!(f, "sl:{n}"),
            Kind::Sp(n) => write!(f, "sp:{n}"),
            Kind::Affine(n) => write!(f, "affine:{n}"),
            Kind::Proj(n) => write!(f, "proj:{n}"),
            Kind::Gr { n, m } => write!(f, "gr:{n},{m}"),
            Kind::Circle => write!(f, "circle"),
            Kind::Cyclotomic(n) => write!(f, "phi:{n}"),
            Kind::Elliptic(c) => write!(f, "ec:{},{}", c.a4, c.a6),
        }
    }
}

impl FromStr for VarietySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let input = s.trim();
        let grammar = || Error::Grammar {
            input: input.to_string(),
            grammar: SPEC_GRAMMAR,
        };
        let (head, args) = match input.split_once(':') {
            Some((h, a)) => (h.trim().to_ascii_lowercase(), Some(a)),
            None => (input.to_ascii_lowercase(), None),
        };
        let ints = |want: usize| -> Result<Vec<i64>> {
            let a = args.ok_or_else(grammar)?;
            let v: Vec<i64> = a
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| grammar())?;
            if v.len() != want {
                return Err(grammar());
            }
            Ok(v)
        };
        let unsigned = |v: i64| u32::try_from(v).map_err(|_| grammar());
        match (head.as_str(), args) {
            ("circle", None) => Ok(Self::circle()),
            ("gl", _) => Self::gl(unsigned(ints(1)?[0])?),
            ("sl", _) => Self::sl(unsigned(ints(1)?[0])?),
            ("sp", _) => Self::sp(unsigned(ints(1)?[0])?),
            ("affine", _) => Self::affine(unsigned(ints(1)?[0])?),
            ("proj", _) => Self::proj(unsigned(ints(1)?[0])?),
            ("phi", _) => Self::cyclotomic(unsigned(ints(1)?[0])?),
            ("gr", _) => {
                let v = ints(2)?;
                Self::gr(unsigned(v[0])?, unsigned(v[1])?)
            }
            ("ec", _) => {
                let v = ints(2)?;
                Self::elliptic(v[0], v[1])
            }
            _ => Err(grammar()),
        }
    }
}

/// Local factor in a form cheap to evaluate at many primes.
#[derive(Debug, Clone)]
pub(crate) enum LocalModel {
    /// `sum_i mult_i * log(1 - p^{-k_i})` over `(k_i, mult_i)`.
    OneMinusPowers(Vec<(u32, i32)>),
    Circle,
    Elliptic(EcCurve),
}

impl LocalModel {
    fn new(spec: &VarietySpec) -> Self {
        use LocalModel::*;
        let run = |range: std::ops::RangeInclusive<u32>, mult: i32| -> Vec<(u32, i32)> {
            range.map(|k| (k, mult)).collect()
        };
        match spec.kind {
            Kind::GL(n) => OneMinusPowers(run(1..=n, 1)),
            Kind::SL(n) => OneMinusPowers(run(2..=n, 1)),
            Kind::Sp(n) => OneMinusPowers((1..=n).map(|k| (2 * k, 1)).collect()),
            Kind::Affine(_) => OneMinusPowers(Vec::new()),
            // (1 - p^{-(n+1)}) / (1 - p^{-1})
            Kind::Proj(n) => OneMinusPowers(vec![(n + 1, 1), (1, -1)]),
            // prod_{k=n-m+1}^{n} (1 - p^{-k}) / prod_{k=1}^{m} (1 - p^{-k})
            Kind::Gr { n, m } => {
                let mut terms = run(n - m + 1..=n, 1);
                terms.extend(run(1..=m, -1));
                OneMinusPowers(terms)
            }
            // prod_{d | n} (1 - p^{-d})^{mu(n/d)}
            Kind::Cyclotomic(n) => OneMinusPowers(
                divisors(n as u64)
                    .into_iter()
                    .filter_map(|d| {
                        let mu = mobius(n as u64 / d).expect("n >= 1");
                        (mu != 0).then_some((d as u32, mu as i32))
                    })
                    .collect(),
            ),
            Kind::Circle => Circle,
            Kind::Elliptic(c) => Elliptic(c),
        }
    }

    /// `log(|X(F_p)| / p^d)`. `p` must be prime and good for the model.
    pub(crate) fn log_ratio<T: Real>(&self, p: u64) -> T {
        let pf = T::of_u64(p);
        match self {
            LocalModel::OneMinusPowers(terms) => terms.iter().fold(T::zero(), |acc, &(k, mult)| {
                let x = pf.powi(-(k.min(i32::MAX as u32) as i32));
                acc + T::of_i64(mult as i64) * (-x).ln_1p()
            }),
            LocalModel::Circle => {
                if p == 2 {
                    T::zero()
                } else if p % 4 == 1 {
                    (-pf.recip()).ln_1p()
                } else {
                    pf.recip().ln_1p()
                }
            }
            LocalModel::Elliptic(c) => {
                let a = trace_unchecked(c, p);
                (T::of_i64(1 - a) / pf).ln_1p()
            }
        }
    }
}

/// `log(|X(F_p)| / p^d)` from the rational form in `1/p`.
pub fn log_local_ratio<T: Real>(spec: &VarietySpec, p: u64) -> Result<T> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let Some(c) = spec.curve() {
        c.check_good(p)?;
    }
    Ok(spec.local_model().log_ratio(p))
}

/// Exact `|X(F_p)|`, or `Phi_n(p)` for cyclotomic entries.
pub fn exact_count(spec: &VarietySpec, p: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = BigUint::from(p);
    let pow = |e: u64| -> BigUint { q.pow(u32::try_from(e).expect("exponent fits u32")) };
    let one = BigUint::one();
    let exact_div = |num: BigUint, den: &BigUint, what: &str| -> Result<BigUint> {
        let (quot, rem) = num.div_rem(den);
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::Inexact(format!(
                "{what} at p = {p} left remainder {rem}"
            )))
        }
    };
    match spec.kind {
        Kind::GL(n) => Ok(gl_order(&q, n)),
        Kind::SL(n) => exact_div(gl_order(&q, n), &(&q - &one), "|GL| / (p - 1)"),
        Kind::Sp(n) => {
            let n = n as u64;
            Ok((1..=n).fold(pow(n * n), |acc, k| acc * (pow(2 * k) - &one)))
        }
        Kind::Affine(n) => Ok(pow(n as u64)),
        Kind::Proj(n) => Ok((0..=n as u64).fold(BigUint::zero(), |acc, k| acc + pow(k))),
        Kind::Gr { n, m } => {
            // Each partial product is itself the Gaussian binomial [n, j]_p.
            let mut acc = BigUint::one();
            for j in 0..m as u64 {
                acc *= pow(n as u64 - j) - &one;
                acc = exact_div(acc, &(pow(j + 1) - &one), "Gaussian binomial")?;
            }
            Ok(acc)
        }
        Kind::Circle => Ok(BigUint::from(match p {
            2 => 2,
            _ if p % 4 == 1 => p - 1,
            _ => p + 1,
        })),
        Kind::Cyclotomic(n) => {
            let mut num = BigUint::one();
            let mut den = BigUint::one();
            for d in divisors(n as u64) {
                match mobius(n as u64 / d).expect("n >= 1") {
                    1 => num *= pow(d) - &one,
                    -1 => den *= pow(d) - &one,
                    _ => {}
                }
            }
            exact_div(num, &den, "cyclotomic quotient")
        }
        Kind::Elliptic(c) => {
            let a = ec_trace(&c, p)?;
            let count = p as i128 + 1 - a as i128;
            Ok(BigUint::from(
                u128::try_from(count).expect("Hasse bound keeps the count positive"),
            ))
        }
    }
}

/// `prod_{k=0}^{n-1} (q^n - q^k)`.
fn gl_order(q: &BigUint, n: u32) -> BigUint {
    let qn = q.pow(n);
    (0..n).fold(BigUint::one(), |acc, k| acc * (&qn - q.pow(k)))
}

/// Trace of Frobenius `a(p) = p + 1 - |E(F_p)|`.
///
/// Evaluates `-sum_x chi(x^3 + a4 x + a6)` with the quadratic character read
/// from a table of squares and the cubic stepped by finite differences, so the
/// inner loop is additions only.
pub fn ec_trace(curve: &EcCurve, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    curve.check_good(p)?;
    Ok(trace_unchecked(curve, p))
}

fn trace_unchecked(curve: &EcCurve, p: u64) -> i64 {
    let n = p as usize;
    let mut chi = vec![-1i8; n];
    chi[0] = 0;
    let mut sq = 0usize;
    for x in 0..n.div_ceil(2) {
        // sq = x^2 mod p; next square is sq + 2x + 1
        if x > 0 {
            chi[sq] = 1;
        }
        sq += 2 * x + 1;
        while sq >= n {
            sq -= n;
        }
    }

    let m = p as i128;
    let red = |v: i128| v.rem_euclid(m) as usize;
    let a4 = curve.a4 as i128;
    // f(0), f(1) - f(0), second and third differences of f(x) = x^3 + a4 x + a6
    let mut f = red(curve.a6 as i128);
    let mut d1 = red(1 + a4);
    let mut d2 = red(6);
    let d3 = red(6);
    let step = |v: usize, by: usize| {
        let s = v + by;
        if s >= n {
            s - n
        } else {
            s
        }
    };
    let mut sum = 0i64;
    for _ in 0..n {
        sum += chi[f] as i64;
        f = step(f, d1);
        d1 = step(d1, d2);
        d2 = step(d2, d3);
    }
    -sum
}
