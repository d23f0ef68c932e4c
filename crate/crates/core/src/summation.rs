//! Compensated summation.

use std::ops::AddAssign;

use crate::scalar::Real;

/// Running sum with Kahan–Babuška–Neumaier compensation.
///
/// Log local ratios are tiny and numerous (millions of terms of order
/// `1/p`), so the plain running sum would lose several digits by 10^8.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

impl<T: Real> AddAssign<T> for CompensatedSum<T> {
    fn add_assign(&mut self, rhs: T) {
        self.add(rhs);
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
