//! Streaming evaluation of `||X||_t = prod_{p <= t} |X(F_p)| / p^d`.
//!
//! The product is accumulated as a compensated sum of logarithms in strictly
//! increasing prime order. Local factors of one sieve window may be evaluated
//! in parallel, but the reduction is sequential, so a checkpoint's value is
//! bit-identical no matter how far the run continues past it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primes::PrimeStream;
use crate::scalar::Real;
use crate::summation::CompensatedSum;
use crate::variety::{Kind, VarietySpec};

/// Default number of geometric checkpoints per decade.
pub const DEFAULT_PER_DECADE: u32 = 4;

/// One sample of the running product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityCheckpoint<T> {
    pub t: T,
    pub primes_used: u64,
    pub log_density: T,
    pub density: T,
}

/// Where checkpoints are taken.
#[derive(Debug, Clone, PartialEq)]
pub enum Schedule<T> {
    /// `10^{2 + i/per_decade}` below `t_max`, then `t_max` itself.
    Geometric { per_decade: u32 },
    /// Caller-supplied increasing thresholds, each `<= t_max`.
    Explicit(Vec<T>),
}

impl<T: Real> Default for Schedule<T> {
    fn default() -> Self {
        Schedule::Geometric {
            per_decade: DEFAULT_PER_DECADE,
        }
    }
}

impl<T: Real> Schedule<T> {
    pub fn thresholds(&self, t_max: T) -> Result<Vec<T>> {
        match self {
            Schedule::Geometric { per_decade } => {
                if *per_decade == 0 {
                    return Err(Error::Schedule("per_decade must be at least 1".into()));
                }
                let ten = T::lit(10.0);
                let cutoff = t_max * (T::one() - T::lit(1e-12));
                let mut out = Vec::new();
                for i in 0u32.. {
                    let decade = 2 + (i / per_decade) as i32;
                    let frac = T::of_u64((i % per_decade) as u64) / T::of_u64(*per_decade as u64);
                    let t = ten.powi(decade) * ten.powf(frac);
                    if t >= cutoff {
                        break;
                    }
                    out.push(t);
                }
                out.push(t_max);
                Ok(out)
            }
            Schedule::Explicit(ts) => {
                if ts.is_empty() {
                    return Err(Error::Schedule("no thresholds given".into()));
                }
                if ts.windows(2).any(|w| !(w[0] < w[1])) {
                    return Err(Error::Schedule("thresholds must strictly increase".into()));
                }
                if ts.iter().any(|&t| !(t <= t_max) || !t.is_finite()) {
                    return Err(Error::Schedule("thresholds must not exceed t_max".into()));
                }
                Ok(ts.clone())
            }
        }
    }
}

/// Checkpoints of one run plus the primes skipped for bad reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile<T> {
    pub spec: VarietySpec,
    pub t_max: T,
    pub checkpoints: Vec<DensityCheckpoint<T>>,
    /// Elliptic specs only: bad primes `<= t_max`, ascending.
    pub bad_primes: Vec<u64>,
}

impl<T: Real> DensityProfile<T> {
    /// Bad primes `<= t`.
    pub fn skipped_at(&self, t: T) -> u64 {
        self.bad_primes
            .iter()
            .take_while(|&&p| T::of_u64(p) <= t)
            .count() as u64
    }

    pub fn last(&self) -> &DensityCheckpoint<T> {
        self.checkpoints
            .last()
            .expect("profiles always hold a checkpoint")
    }
}

pub fn density_profile<T: Real>(
    spec: &VarietySpec,
    t_max: T,
    schedule: &Schedule<T>,
) -> Result<DensityProfile<T>> {
    if !(t_max >= T::lit(2.0)) || !t_max.is_finite() {
        return Err(Error::TooSmall {
            min: 2.0,
            got: t_max.to_f64().unwrap_or(f64::NAN),
        });
    }
    let thresholds = schedule.thresholds(t_max)?;
    let limit = t_max.floor().to_u64().expect("finite t_max fits u64");
    let model = spec.local_model();
    let is_elliptic = matches!(spec.kind(), Kind::Elliptic(_));

    let mut checkpoints = Vec::with_capacity(thresholds.len());
    let mut bad_primes = Vec::new();
    let mut acc = CompensatedSum::<T>::new();
    let mut used = 0u64;
    let mut next = 0usize;
    let emit = |acc: &CompensatedSum<T>, used: u64, t: T, out: &mut Vec<DensityCheckpoint<T>>| {
        let log_density = acc.value();
        out.push(DensityCheckpoint {
            t,
            primes_used: used,
            log_density,
            density: log_density.exp(),
        });
    };

    let mut stream = PrimeStream::new(limit);
    while let Some(segment) = stream.next_segment() {
        let logs: Vec<Option<T>> = if is_elliptic {
            segment
                .par_iter()
                .map(|&p| spec.is_good_prime(p).then(|| model.log_ratio(p)))
                .collect()
        } else {
            segment
                .par_iter()
                .with_min_len(4096)
                .map(|&p| Some(model.log_ratio(p)))
                .collect()
        };
        for (&p, term) in segment.iter().zip(logs) {
            let pf = T::of_u64(p);
            while next < thresholds.len() && pf > thresholds[next] {
                emit(&acc, used, thresholds[next], &mut checkpoints);
                next += 1;
            }
            match term {
                Some(x) => {
                    acc.add(x);
                    used += 1;
                }
                None => bad_primes.push(p),
            }
        }
    }
    while next < thresholds.len() {
        emit(&acc, used, thresholds[next], &mut checkpoints);
        next += 1;
    }

    Ok(DensityProfile {
        spec: *spec,
        t_max,
        checkpoints,
        bad_primes,
    })
}

/// `(t, ||GL(1)||_t * log t)` on the default schedule; tends to `e^{-gamma}`.
pub fn mertens_check<T: Real>(t_max: T) -> Result<Vec<(T, T)>> {
    if !(t_max >= T::lit(10.0)) {
        return Err(Error::TooSmall {
            min: 10.0,
            got: t_max.to_f64().unwrap_or(f64::NAN),
        });
    }
    let gl1 = VarietySpec::gl(1).expect("GL(1) is valid");
    let profile = density_profile(&gl1, t_max, &Schedule::default())?;
    Ok(profile
        .checkpoints
        .iter()
        .map(|c| (c.t, c.density * c.t.ln()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::euler_gamma;
    use crate::primes::prime_count;

    fn single(t: f64) -> Schedule<f64> {
        Schedule::Explicit(vec![t])
    }

    #[test]
    fn gl1_hand_product_to_ten() {
        let gl1 = VarietySpec::gl(1).unwrap();
        let prof = density_profile(&gl1, 10.0, &single(10.0)).unwrap();
        assert_eq!(prof.checkpoints.len(), 1);
        let c = prof.checkpoints[0];
        let hand = 0.5 * (2.0 / 3.0) * 0.8 * (6.0 / 7.0);
        assert!((c.density - hand).abs() < 1e-15);
        assert!((c.density - 0.228_571).abs() < 1e-6);
        assert_eq!(c.primes_used, 4);
    }

    #[test]
    fn affine_is_identically_one() {
        let a3 = VarietySpec::affine(3).unwrap();
        let prof = density_profile(&a3, 1e5, &Schedule::default()).unwrap();
        assert!(prof
            .checkpoints
            .iter()
            .all(|c| c.density == 1.0 && c.log_density == 0.0));
    }

    #[test]
    fn geometric_schedule_shape() {
        let ts = Schedule::<f64>::default().thresholds(1e4).unwrap();
        assert_eq!(ts.len(), 9);
        assert_eq!(ts[0], 100.0);
        assert_eq!(ts[4], 1000.0);
        assert_eq!(*ts.last().unwrap(), 1e4);
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
        let ts = Schedule::<f64>::default().thresholds(50.0).unwrap();
        assert_eq!(ts, vec![50.0]);
        let ts = Schedule::<f64>::Geometric { per_decade: 1 }
            .thresholds(2500.0)
            .unwrap();
        assert_eq!(ts, vec![100.0, 1000.0, 2500.0]);
        assert!(Schedule::<f64>::Geometric { per_decade: 0 }
            .thresholds(1e3)
            .is_err());
    }

    #[test]
    fn explicit_schedule_validation() {
        let gl1 = VarietySpec::gl(1).unwrap();
        for bad in [vec![], vec![10.0, 5.0], vec![5.0, 5.0], vec![5.0, 200.0]] {
            assert!(matches!(
                density_profile(&gl1, 100.0, &Schedule::Explicit(bad)),
                Err(Error::Schedule(_))
            ));
        }
        assert!(matches!(
            density_profile(&gl1, 1.5, &Schedule::default()),
            Err(Error::TooSmall { .. })
        ));
    }

    #[test]
    fn checkpoints_count_primes() {
        let gl1 = VarietySpec::gl(1).unwrap();
        let prof = density_profile(&gl1, 1e5f64, &Schedule::default()).unwrap();
        for c in &prof.checkpoints {
            assert_eq!(c.primes_used, prime_count(c.t.floor() as u64));
        }
    }

    #[test]
    fn prefix_is_bit_identical() {
        let spec = VarietySpec::gr(4, 2).unwrap();
        let short = density_profile(&spec, 1e4, &Schedule::default()).unwrap();
        let long = density_profile(&spec, 1e6, &Schedule::default()).unwrap();
        let at =
            |prof: &DensityProfile<f64>| *prof.checkpoints.iter().find(|c| c.t == 1e4).unwrap();
        assert_eq!(
            at(&short).log_density.to_bits(),
            at(&long).log_density.to_bits()
        );
        for (a, b) in short.checkpoints.iter().zip(&long.checkpoints) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn exp_log_consistency() {
        let spec = VarietySpec::cyclotomic(6).unwrap();
        let prof = density_profile(&spec, 1e5f64, &Schedule::default()).unwrap();
        for c in &prof.checkpoints {
            assert!(c.density > 0.0 && c.log_density.is_finite());
            assert!((c.density - c.log_density.exp()).abs() / c.density < 1e-12);
        }
    }

    #[test]
    fn elliptic_skips_bad_primes() {
        // discriminant -16 * 31
        let spec = VarietySpec::elliptic(1, 1).unwrap();
        let prof = density_profile(&spec, 2000.0, &Schedule::default()).unwrap();
        assert_eq!(prof.bad_primes, vec![2, 3, 31]);
        for c in &prof.checkpoints {
            assert_eq!(
                c.primes_used + prof.skipped_at(c.t),
                prime_count(c.t as u64)
            );
        }
    }

    #[test]
    fn circle_tends_to_four_over_pi() {
        let prof = density_profile(&VarietySpec::circle(), 1e6, &Schedule::default()).unwrap();
        let d = prof.last().density;
        let target = 4.0 / std::f64::consts::PI;
        assert!((d - target).abs() / target < 0.01, "{d}");
    }

    #[test]
    fn mertens_values() {
        let rows = mertens_check(1e6f64).unwrap();
        let first_hand = {
            let prof = density_profile(&VarietySpec::gl(1).unwrap(), 10.0, &single(10.0)).unwrap();
            prof.checkpoints[0].density * 10f64.ln()
        };
        assert!((first_hand - 0.526_30).abs() < 1e-5);
        let target = (-euler_gamma::<f64>()).exp();
        let (t, v) = *rows.last().unwrap();
        assert_eq!(t, 1e6);
        assert!((v - target).abs() / target < 0.01);
        assert!(mertens_check(5.0f64).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let prof =
            density_profile(&VarietySpec::sl(2).unwrap(), 1e5f32, &Schedule::default()).unwrap();
        let want = 6.0 / (std::f32::consts::PI * std::f32::consts::PI);
        assert!((prof.last().density - want).abs() < 1e-3);
    }
}
