//! Exact non-negative rationals used for dependency degrees, accuracies and rates.

use std::fmt;
use std::ops::Sub;

use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// A reduced non-negative rational. Serializes as
/// `{"num": n, "den": d, "decimal": n/d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(Ratio<u64>);

impl Fraction {
    pub const ZERO: Fraction = Fraction(Ratio::new_raw(0, 1));
    pub const ONE: Fraction = Fraction(Ratio::new_raw(1, 1));

    /// Panics if `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        Fraction(Ratio::new(num, den))
    }

    pub(crate) fn of(num: usize, den: usize) -> Self {
        Self::new(num as u64, den as u64)
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Percentage rounded half-up to the nearest integer, i.e. the rate
    /// rounded to two decimals: 48/50 renders as 96.
    pub fn percent_half_up(&self) -> u64 {
        let (n, d) = (self.numer() as u128, self.denom() as u128);
        ((200 * n + d) / (2 * d)) as u64
    }
}

impl Sub for Fraction {
    type Output = Fraction;

    /// Panics on a negative result.
    fn sub(self, rhs: Fraction) -> Fraction {
        assert!(self >= rhs, "fraction subtraction underflow");
        Fraction(self.0 - rhs.0)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Fraction", 3)?;
        st.serialize_field("num", &self.numer())?;
        st.serialize_field("den", &self.denom())?;
        st.serialize_field("decimal", &self.to_f64())?;
        st.end()
    }
}
