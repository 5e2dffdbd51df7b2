//! Extended reals `[-inf, +inf]` without NaN.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A real number or one of the two infinities.
///
/// The wrapped `f64` is never NaN. Arithmetic that would produce `inf - inf`
/// is rejected by [`ExtReal::checked_add`]; the operator impls panic in that
/// case, because every caller in this crate knows the signs of its operands.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);
    pub const NEG_INFINITY: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    /// Wraps `x`, returning `None` for NaN.
    pub fn new(x: f64) -> Option<Self> {
        (!x.is_nan()).then_some(ExtReal(x))
    }

    /// Wraps `x`.
    ///
    /// # Panics
    /// If `x` is NaN.
    pub fn from_f64(x: f64) -> Self {
        assert!(!x.is_nan(), "ExtReal cannot hold NaN");
        ExtReal(x)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_pos_inf(self) -> bool {
        self.0 == f64::INFINITY
    }

    pub fn is_neg_inf(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// Finite value, if any.
    pub fn finite(self) -> Option<f64> {
        self.is_finite().then_some(self.0)
    }

    pub fn checked_add(self, rhs: ExtReal) -> Option<ExtReal> {
        ExtReal::new(self.0 + rhs.0)
    }

    /// Product with a nonnegative weight using the measure-theoretic
    /// convention `0 * inf = 0`.
    pub fn weighted(self, weight: f64) -> ExtReal {
        debug_assert!(weight >= 0.0);
        if weight == 0.0 {
            ExtReal::ZERO
        } else {
            ExtReal(self.0 * weight)
        }
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn positive_part(self) -> ExtReal {
        self.max(ExtReal::ZERO)
    }

    pub fn total_cmp(&self, other: &ExtReal) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::from_f64(x)
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        self.checked_add(rhs).expect("indeterminate form: +inf plus -inf")
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;
    fn sub(self, rhs: ExtReal) -> ExtReal {
        self + (-rhs)
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal(-self.0)
    }
}

impl std::iter::Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pos_inf() {
            f.write_str("inf")
        } else if self.is_neg_inf() {
            f.write_str("-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// JSON has no infinities: they travel as the strings "inf" and "-inf".
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str(if self.0 > 0.0 { "inf" } else { "-inf" })
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(ExtReal(x)),
            Repr::Str(s) => match s.as_str() {
                "inf" | "+inf" => Ok(ExtReal::INFINITY),
                "-inf" => Ok(ExtReal::NEG_INFINITY),
                other => {
                    Err(serde::de::Error::custom(format!("expected a number, \"inf\" or \"-inf\", got {other:?}")))
                }
            },
        }
    }
}
