//! Exact dyadic rationals `n / 2^k`.
//!
//! Every coefficient produced by the map recursion is an integer divided by a
//! power of two, so this type carries all constructed operators without any
//! rounding. Arithmetic is checked: an `i64` overflow panics instead of
//! wrapping silently.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::Error;

/// A number `numerator / 2^exponent` kept in canonical form: either the
/// numerator is odd, or the exponent is 0 (integers, including zero).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    numerator: i64,
    exponent: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic {
        numerator: 0,
        exponent: 0,
    };
    pub const ONE: Dyadic = Dyadic {
        numerator: 1,
        exponent: 0,
    };

    /// Builds `numerator / 2^exponent` and canonicalizes.
    pub fn new(numerator: i64, exponent: u32) -> Self {
        if numerator == 0 {
            return Self::ZERO;
        }
        let shift = numerator.trailing_zeros().min(exponent);
        Dyadic {
            numerator: numerator >> shift,
            exponent: exponent - shift,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(n, 0)
    }

    /// `2^-k`.
    pub fn pow2_inv(k: u32) -> Self {
        Dyadic {
            numerator: 1,
            exponent: k,
        }
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Division by `2^k`, always exact.
    pub fn halve(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Dyadic::new(
            self.numerator,
            self.exponent.checked_add(k).expect("dyadic exponent overflow"),
        )
    }

    /// Exact division; `None` when `rhs` is zero or the quotient is not dyadic.
    pub fn checked_div(&self, rhs: &Dyadic) -> Option<Dyadic> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::ZERO);
        }
        let twos = rhs.numerator.trailing_zeros();
        let odd = rhs.numerator >> twos;
        if self.numerator % odd != 0 {
            return None;
        }
        let q = self.numerator / odd;
        let shift = rhs.exponent as i64 - self.exponent as i64 - twos as i64;
        if shift >= 0 {
            let scaled = 1i64
                .checked_shl(shift as u32)
                .filter(|_| shift < 63)
                .and_then(|p| q.checked_mul(p))?;
            Some(Dyadic::new(scaled, 0))
        } else {
            Some(Dyadic::new(q, (-shift) as u32))
        }
    }

    pub fn to_f64(&self) -> f64 {
        // exponent beyond f64 range only arises for astronomically small values
        self.numerator as f64 * (-(self.exponent as f64)).exp2()
    }

    pub fn to_ratio(&self) -> Ratio<i128> {
        Ratio::new(self.numerator as i128, 1i128 << self.exponent)
    }

    /// Exact conversion from `f64`; `None` for non-finite values or mantissas
    /// that do not fit the representation.
    pub fn from_f64(x: f64) -> Option<Dyadic> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::ZERO);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (mant, exp2) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1i64 << 52), raw_exp - 1075)
        };
        if exp2 >= 0 {
            let m = mant.checked_mul(1i64.checked_shl(exp2 as u32).filter(|_| exp2 < 63)?)?;
            Some(Dyadic::new(sign * m, 0))
        } else {
            Some(Dyadic::new(sign * mant, (-exp2) as u32))
        }
    }

    fn align(a: &Dyadic, b: &Dyadic) -> (i64, i64, u32) {
        let e = a.exponent.max(b.exponent);
        let lift = |d: &Dyadic| -> i64 {
            let up = e - d.exponent;
            if d.numerator == 0 {
                return 0;
            }
            assert!(up < 63, "dyadic alignment overflow");
            d.numerator.checked_mul(1i64 << up).expect("dyadic numerator overflow")
        };
        (lift(a), lift(b), e)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `n`, `n/2^k` or `n/m` with `m` a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a dyadic rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i64>().map(Dyadic::from_int).map_err(|_| bad()),
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d = d.trim();
                let k = if let Some(k) = d.strip_prefix("2^") {
                    k.parse::<u32>().map_err(|_| bad())?
                } else {
                    let m: u64 = d.parse().map_err(|_| bad())?;
                    if !m.is_power_of_two() {
                        return Err(bad());
                    }
                    m.trailing_zeros()
                };
                Ok(Dyadic::new(n, k))
            }
        }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (a, b, e) = Dyadic::align(&self, &rhs);
        Dyadic::new(a.checked_add(b).expect("dyadic numerator overflow"), e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: self.numerator.checked_neg().expect("dyadic numerator overflow"),
            exponent: self.exponent,
        }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::ZERO;
        }
        Dyadic::new(
            self.numerator
                .checked_mul(rhs.numerator)
                .expect("dyadic numerator overflow"),
            self.exponent
                .checked_add(rhs.exponent)
                .expect("dyadic exponent overflow"),
        )
    }
}

impl AddAssign for Dyadic {
    fn add_assign(&mut self, rhs: Dyadic) {
        *self = *self + rhs;
    }
}

impl SubAssign for Dyadic {
    fn sub_assign(&mut self, rhs: Dyadic) {
        *self = *self - rhs;
    }
}

impl Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::ZERO, Add::add)
    }
}

impl Zero for Dyadic {
    fn zero() -> Self {
        Dyadic::ZERO
    }
    fn is_zero(&self) -> bool {
        self.numerator == 0
    }
}

impl One for Dyadic {
    fn one() -> Self {
        Dyadic::ONE
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).numerator.cmp(&0)
    }
}
