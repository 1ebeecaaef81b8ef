//! Compensated double-double arithmetic (~31 significant digits).
//!
//! The Maclaurin series of the confluent hypergeometric function at purely
//! imaginary argument cancels catastrophically: partial terms reach
//! `e^{|z|}` while the sum stays of order one. Accumulating the series in
//! double-double keeps ten-plus significant digits up to the documented
//! validity radius.

use num_complex::Complex64;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

#[allow(clippy::should_implement_trait)]
impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Accurate double-double addition (two-sum on both components); the
    /// sloppy single-two-sum variant loses the low components exactly when
    /// terms cancel, which is the hot path here.
    #[inline]
    pub fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi + self.lo * rhs.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs);
        let p2 = p2 + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    /// Long division refined with one Newton correction.
    #[inline]
    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul_f64(q2));
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    #[inline]
    pub fn div_f64(self, rhs: f64) -> Dd {
        self.div(Dd::from_f64(rhs))
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.hi.abs()
    }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Debug, Default)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

#[allow(clippy::should_implement_trait)]
impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub const ONE: CDd = CDd {
        re: Dd { hi: 1.0, lo: 0.0 },
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_c64(z: Complex64) -> Self {
        CDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, rhs: CDd) -> CDd {
        CDd {
            re: self.re.add(rhs.re),
            im: self.im.add(rhs.im),
        }
    }

    /// Adds a real `f64` to the real part (exact).
    #[inline]
    pub fn add_f64(self, rhs: f64) -> CDd {
        CDd {
            re: self.re.add(Dd::from_f64(rhs)),
            im: self.im,
        }
    }

    #[inline]
    pub fn conj(self) -> CDd {
        CDd {
            re: self.re,
            im: self.im.neg(),
        }
    }

    /// Full double-double complex product; use this (not [`CDd::mul_c64`])
    /// when the factor itself came out of earlier arithmetic, so its
    /// rounding does not leak into a cancelling sum.
    #[inline]
    pub fn mul(self, rhs: CDd) -> CDd {
        CDd {
            re: self.re.mul(rhs.re).sub(self.im.mul(rhs.im)),
            im: self.re.mul(rhs.im).add(self.im.mul(rhs.re)),
        }
    }

    /// Divides by another double-double complex via the conjugate.
    #[inline]
    pub fn div(self, rhs: CDd) -> CDd {
        let num = self.mul(rhs.conj());
        let denom = rhs.re.mul(rhs.re).add(rhs.im.mul(rhs.im));
        CDd {
            re: num.re.div(denom),
            im: num.im.div(denom),
        }
    }

    #[inline]
    pub fn mul_c64(self, rhs: Complex64) -> CDd {
        CDd {
            re: self.re.mul_f64(rhs.re).sub(self.im.mul_f64(rhs.im)),
            im: self.re.mul_f64(rhs.im).add(self.im.mul_f64(rhs.re)),
        }
    }

    /// Divides by a complex `f64` via the conjugate.
    #[inline]
    pub fn div_c64(self, rhs: Complex64) -> CDd {
        let num = self.mul_c64(rhs.conj());
        let (d1, d2) = two_prod(rhs.re, rhs.re);
        let (e1, e2) = two_prod(rhs.im, rhs.im);
        let denom = Dd { hi: d1, lo: d2 }.add(Dd { hi: e1, lo: e2 });
        CDd {
            re: num.re.div(denom),
            im: num.im.div(denom),
        }
    }

    #[inline]
    pub fn div_f64(self, rhs: f64) -> CDd {
        CDd {
            re: self.re.div_f64(rhs),
            im: self.im.div_f64(rhs),
        }
    }

    /// Cheap magnitude estimate from the leading components.
    #[inline]
    pub fn mag_estimate(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}
