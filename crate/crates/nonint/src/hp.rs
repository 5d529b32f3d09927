//! High-precision arithmetic context.
//!
//! The peeling stages divide by `lambda^(i*nu)`, which amplifies any noise
//! geometrically, so they run on arbitrary-precision binary floats. The
//! context fixes the working precision in bits; every value it creates
//! carries that precision and dashu propagates it through arithmetic.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_bigint::BigInt;
use num_rational::BigRational;

pub type Big = FBig<HalfEven, 2>;

const LOG2_10: f64 = 3.321928094887362;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ctx {
    pub bits: usize,
}

impl Ctx {
    pub fn from_digits(digits: u32) -> Self {
        Ctx {
            bits: (digits as f64 * LOG2_10).ceil() as usize + 32,
        }
    }

    pub fn with_bits(bits: usize) -> Self {
        Ctx { bits: bits.max(64) }
    }

    pub fn digits(&self) -> u32 {
        ((self.bits.saturating_sub(32)) as f64 / LOG2_10).floor() as u32
    }

    pub fn zero(&self) -> Big {
        Big::ZERO.with_precision(self.bits).value()
    }

    pub fn one(&self) -> Big {
        Big::ONE.with_precision(self.bits).value()
    }

    /// Exact conversion; f64 values are binary rationals.
    pub fn f(&self, x: f64) -> Big {
        Big::try_from(x)
            .expect("finite f64")
            .with_precision(self.bits)
            .value()
    }

    pub fn int(&self, k: i64) -> Big {
        Big::from(k).with_precision(self.bits).value()
    }

    /// Rational p/q rounded once at the working precision.
    pub fn rat(&self, r: &BigRational) -> Big {
        let num = bigint_to_big(r.numer(), self.bits);
        let den = bigint_to_big(r.denom(), self.bits);
        num / den
    }

    /// Signed integer power by squaring. Negative exponents divide.
    pub fn powi(&self, x: &Big, k: i64) -> Big {
        if k == 0 {
            return self.one();
        }
        let mut base = if k < 0 { self.one() / x } else { x.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Multi-index power prod_c x_c^{e_c}.
    pub fn pow_multi(&self, x: &[Big], e: &[u16]) -> Big {
        let mut acc = self.one();
        for (xc, &ec) in x.iter().zip(e) {
            if ec > 0 {
                acc = &acc * &self.powi(xc, ec as i64);
            }
        }
        acc
    }
}

fn bigint_to_big(v: &BigInt, bits: usize) -> Big {
    // Route through the decimal string; exact for integers.
    let s = v.to_string();
    let parsed: Big = dashu_float::DBig::from_str_native(&s)
        .expect("integer parse")
        .to_binary()
        .value();
    parsed.with_precision(bits).value()
}

pub fn to_f64(x: &Big) -> f64 {
    x.to_f64().value()
}

/// |x| as f64, saturating instead of under/overflowing the f64 exponent.
pub fn abs_f64(x: &Big) -> f64 {
    let v = to_f64(x).abs();
    if v == 0.0 && !x.repr().is_zero() {
        f64::MIN_POSITIVE
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn powi_small_exponents() {
        let ctx = Ctx::from_digits(50);
        let half = ctx.f(0.5);
        assert_eq!(to_f64(&ctx.powi(&half, 3)), 0.125);
        assert_eq!(to_f64(&ctx.powi(&half, -2)), 4.0);
        assert_eq!(to_f64(&ctx.powi(&half, 0)), 1.0);
    }

    #[test]
    fn tiny_exponents_do_not_underflow() {
        let ctx = Ctx::from_digits(50);
        let lam = ctx.f(0.0695);
        let t = ctx.powi(&lam, 300);
        assert!(!t.repr().is_zero());
        let back = ctx.powi(&t, -1) * &t;
        assert!((to_f64(&back) - 1.0).abs() < 1e-40);
    }

    #[test]
    fn rational_conversion_matches_f64() {
        let ctx = Ctx::from_digits(50);
        let r = BigRational::new(BigInt::from(-7), BigInt::from(5));
        assert!((to_f64(&ctx.rat(&r)) + 1.4).abs() < 1e-15);
        let one = BigRational::one();
        assert_eq!(to_f64(&ctx.rat(&one)), 1.0);
    }

    #[test]
    fn digits_roundtrip() {
        let ctx = Ctx::from_digits(50);
        assert!(ctx.digits() >= 50);
    }
}
