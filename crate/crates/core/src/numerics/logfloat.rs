//! Sign + log-magnitude arithmetic for quantities far outside `f64` range.
//!
//! Entropy scales of order 10^123 appear as *exponents* in the matched
//! vacuum wavefunctions, so products like `exp(sigma * x0)` must be carried
//! as natural logarithms. A [`LogFloat`] stores a sign in {-1, 0, +1} and
//! the natural log of the absolute value; multiplication adds logs exactly
//! and addition goes through log-sum-exp with the larger magnitude factored
//! out.

use std::cmp::Ordering;
use std::fmt;

/// Window (in units of ln-magnitude difference) below which a subtraction of
/// near-equal magnitudes is treated as a full cancellation.
pub const CANCELLATION_WINDOW: f64 = 1e-10;

/// A real number represented as `sign * exp(ln_mag)`.
///
/// `sign == 0` if and only if `ln_mag == -inf`. The `cancelled` flag is
/// sticky diagnostic metadata: it is set when an addition annihilated its
/// operands below [`CANCELLATION_WINDOW`] and survives subsequent
/// arithmetic. It does not participate in comparisons.
#[derive(Clone, Copy, Debug)]
pub struct LogFloat {
    sign: i8,
    ln_mag: f64,
    cancelled: bool,
}

impl LogFloat {
    pub const ZERO: LogFloat = LogFloat {
        sign: 0,
        ln_mag: f64::NEG_INFINITY,
        cancelled: false,
    };

    pub const ONE: LogFloat = LogFloat {
        sign: 1,
        ln_mag: 0.0,
        cancelled: false,
    };

    /// Builds from an explicit sign and ln-magnitude. A zero sign forces the
    /// magnitude to `-inf`.
    pub fn from_ln(sign: i8, ln_mag: f64) -> Self {
        assert!((-1..=1).contains(&sign), "sign must be -1, 0 or +1");
        if sign == 0 || ln_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogFloat {
            sign,
            ln_mag,
            cancelled: false,
        }
    }

    /// `exp(x)` as a LogFloat; never overflows.
    pub fn exp_of(x: f64) -> Self {
        Self::from_ln(1, x)
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            LogFloat {
                sign: if v > 0.0 { 1 } else { -1 },
                ln_mag: v.abs().ln(),
                cancelled: false,
            }
        }
    }

    /// Converts back to `f64`; overflows to `±inf` and underflows to `±0`.
    pub fn to_f64(self) -> f64 {
        self.sign as f64 * self.ln_mag.exp()
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    pub fn ln_mag(self) -> f64 {
        self.ln_mag
    }

    pub fn log10(self) -> f64 {
        self.ln_mag / std::f64::consts::LN_10
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// True if some ancestor addition fully cancelled.
    pub fn cancelled(self) -> bool {
        self.cancelled
    }

    pub fn with_cancelled(mut self, flag: bool) -> Self {
        self.cancelled = flag;
        self
    }

    pub fn abs(self) -> Self {
        LogFloat {
            sign: self.sign.abs(),
            ..self
        }
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero LogFloat");
        LogFloat {
            sign: self.sign,
            ln_mag: -self.ln_mag,
            cancelled: self.cancelled,
        }
    }

    /// Raises to an integer power.
    pub fn powi(self, n: i32) -> Self {
        if self.sign == 0 {
            return if n == 0 { Self::ONE } else { Self::ZERO };
        }
        let sign = if n % 2 == 0 {
            self.sign.abs()
        } else {
            self.sign
        };
        LogFloat {
            sign,
            ln_mag: self.ln_mag * n as f64,
            cancelled: self.cancelled,
        }
    }

    /// Raises a positive value to a real power.
    pub fn powf(self, p: f64) -> Self {
        assert!(self.sign >= 0, "powf of negative LogFloat");
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogFloat {
            sign: 1,
            ln_mag: self.ln_mag * p,
            cancelled: self.cancelled,
        }
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    /// Compares by signed value.
    pub fn cmp_value(self, other: Self) -> Ordering {
        match (self.sign, other.sign) {
            (a, b) if a != b => a.cmp(&b),
            (0, 0) => Ordering::Equal,
            (s, _) => {
                let mag = self
                    .ln_mag
                    .partial_cmp(&other.ln_mag)
                    .unwrap_or(Ordering::Equal);
                if s > 0 {
                    mag
                } else {
                    mag.reverse()
                }
            }
        }
    }
}

impl PartialEq for LogFloat {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign && self.ln_mag == other.ln_mag
    }
}

impl fmt::Display for LogFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        let l10 = self.log10();
        let e = l10.floor();
        let mantissa = 10f64.powf(l10 - e);
        let s = if self.sign < 0 { "-" } else { "" };
        write!(f, "{s}{mantissa:.6}e{e:+}")
    }
}

/// Log-sum-exp addition with exact sign logic.
///
/// Same signs accumulate; opposite signs subtract, and a ln-magnitude gap
/// below [`CANCELLATION_WINDOW`] yields zero with the sticky `cancelled`
/// flag set instead of an unreliable sign.
pub fn logfloat_add(x: LogFloat, y: LogFloat) -> LogFloat {
    let carry = x.cancelled || y.cancelled;
    if x.sign == 0 {
        return y.with_cancelled(carry);
    }
    if y.sign == 0 {
        return x.with_cancelled(carry);
    }
    let (big, small) = if x.ln_mag >= y.ln_mag { (x, y) } else { (y, x) };
    let diff = big.ln_mag - small.ln_mag; // >= 0
    if x.sign == y.sign {
        return LogFloat {
            sign: x.sign,
            ln_mag: big.ln_mag + (-diff).exp().ln_1p(),
            cancelled: carry,
        };
    }
    // Opposite signs: magnitude ln(1 - e^{-diff}) relative to the larger.
    if diff <= CANCELLATION_WINDOW {
        return LogFloat {
            sign: 0,
            ln_mag: f64::NEG_INFINITY,
            cancelled: true,
        };
    }
    // expm1 keeps full relative precision in 1 - e^{-diff} down to the
    // cancellation window, where ln_1p(-exp(-diff)) would not
    LogFloat {
        sign: big.sign,
        ln_mag: big.ln_mag + (-(-diff).exp_m1()).ln(),
        cancelled: carry,
    }
}

impl std::ops::Add for LogFloat {
    type Output = LogFloat;
    fn add(self, rhs: Self) -> Self {
        logfloat_add(self, rhs)
    }
}

impl std::ops::Neg for LogFloat {
    type Output = LogFloat;
    fn neg(self) -> Self {
        LogFloat {
            sign: -self.sign,
            ..self
        }
    }
}

impl std::ops::Sub for LogFloat {
    type Output = LogFloat;
    fn sub(self, rhs: Self) -> Self {
        logfloat_add(self, -rhs)
    }
}

impl std::ops::Mul for LogFloat {
    type Output = LogFloat;
    fn mul(self, rhs: Self) -> Self {
        LogFloat {
            sign: self.sign * rhs.sign,
            ln_mag: if self.sign == 0 || rhs.sign == 0 {
                f64::NEG_INFINITY
            } else {
                self.ln_mag + rhs.ln_mag
            },
            cancelled: self.cancelled || rhs.cancelled,
        }
    }
}

impl std::ops::Div for LogFloat {
    type Output = LogFloat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl From<f64> for LogFloat {
    fn from(v: f64) -> Self {
        Self::from_f64(v)
    }
}
