use core::fmt;

use crate::error::{Error, Result};

/// An entropy order α: an extended non-negative real in [0, ∞].
///
/// The three limit cases 0, 1 and ∞ select dedicated evaluation formulas
/// (support count, Shannon, min-entropy); every other value uses the
/// generic power-sum formula. Exactly one of the four classifications
/// returned by [`Order::kind`] applies to any constructed value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order {
    alpha: f64,
}

/// Which evaluation rule an [`Order`] selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// α = 0: log of the support size.
    Zero,
    /// α = 1: Shannon entropy.
    One,
    /// α = ∞: min-entropy.
    Infinity,
    /// Any other α in (0, ∞).
    FiniteGeneric,
}

impl Order {
    /// Order 0 (support count / Hartley).
    pub const ZERO: Order = Order { alpha: 0.0 };
    /// Order 1 (Shannon).
    pub const ONE: Order = Order { alpha: 1.0 };
    /// Order ∞ (min-entropy).
    pub const INFINITY: Order = Order {
        alpha: f64::INFINITY,
    };

    /// Construct an order from its numeric value. `f64::INFINITY` is
    /// accepted; negative values and NaN are rejected.
    pub fn new(alpha: f64) -> Result<Order> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(Error::InvalidOrder { value: alpha });
        }
        Ok(Order { alpha })
    }

    /// The numeric value of α (`f64::INFINITY` for the ∞ order).
    #[inline]
    pub fn value(&self) -> f64 {
        self.alpha
    }

    /// Classify which evaluation rule applies.
    #[inline]
    pub fn kind(&self) -> OrderKind {
        if self.alpha == 0.0 {
            OrderKind::Zero
        } else if self.alpha == 1.0 {
            OrderKind::One
        } else if self.alpha.is_infinite() {
            OrderKind::Infinity
        } else {
            OrderKind::FiniteGeneric
        }
    }

    /// True if α = 0.
    pub fn is_zero(&self) -> bool {
        self.kind() == OrderKind::Zero
    }

    /// True if α = 1.
    pub fn is_one(&self) -> bool {
        self.kind() == OrderKind::One
    }

    /// True if α = ∞.
    pub fn is_infinite(&self) -> bool {
        self.kind() == OrderKind::Infinity
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.alpha)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_negative_and_nan() {
        assert!(Order::new(-0.5).is_err());
        assert!(Order::new(f64::NAN).is_err());
        assert!(Order::new(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn tags_are_exclusive() {
        for (a, kind) in [
            (0.0, OrderKind::Zero),
            (1.0, OrderKind::One),
            (f64::INFINITY, OrderKind::Infinity),
            (0.5, OrderKind::FiniteGeneric),
            (2.0, OrderKind::FiniteGeneric),
        ] {
            assert_eq!(Order::new(a).unwrap().kind(), kind);
        }
    }

    #[test]
    fn extended_comparison() {
        let a = Order::new(2.0).unwrap();
        assert!(Order::ZERO < Order::ONE);
        assert!(Order::ONE < a);
        assert!(a < Order::INFINITY);
    }
}
