//! Decimal approximations of cyclotomic values, for display.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{CycScalar, CycloError};

pub const MAX_DIGITS: u32 = 50;

const GUARD_DIGITS: u32 = 20;

/// A complex number rounded to a fixed number of decimal places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDecimal {
    /// Real part times `10^digits`, rounded half away from zero.
    pub re: BigInt,
    pub im: BigInt,
    pub digits: u32,
}

fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), n as usize)
}

/// `atan(1/x)` in fixed point with the given scale.
fn atan_inv(x: i64, scale: &BigInt) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut term = scale / x;
    let mut sum = term.clone();
    let mut k = 1i64;
    loop {
        term = &term / &x2;
        if term.is_zero() {
            break;
        }
        let t = &term / (2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    sum
}

fn pi(scale: &BigInt) -> BigInt {
    atan_inv(5, scale) * 16 - atan_inv(239, scale) * 4
}

/// `(cos θ, sin θ)` for `θ = 2πk/n`, fixed point.
fn cos_sin(k: u64, n: u64, scale: &BigInt, pi: &BigInt) -> (BigInt, BigInt) {
    // reduce to θ = 2π·k'/n with k'/n in [-1/2, 1/2)
    let k = k % n;
    let signed_k: i64 = if 2 * k >= n {
        k as i64 - n as i64
    } else {
        k as i64
    };
    let theta: BigInt = pi * 2 * signed_k / n as i64;
    let theta2 = (&theta * &theta) / scale;
    let mut cos = scale.clone();
    let mut sin = theta.clone();
    let mut term_c = scale.clone();
    let mut term_s = theta;
    let mut i = 1i64;
    loop {
        term_c = -(&term_c * &theta2) / scale / ((2 * i - 1) * (2 * i));
        term_s = -(&term_s * &theta2) / scale / ((2 * i) * (2 * i + 1));
        if term_c.is_zero() && term_s.is_zero() {
            break;
        }
        cos += &term_c;
        sin += &term_s;
        i += 1;
    }
    (cos, sin)
}

fn round_div(x: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = x.div_rem(d);
    if (r.abs() * 2) >= *d {
        if x.sign() == Sign::Minus {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Evaluates `x` at `z = e^{2πi/N}` to `digits` decimal places.
pub fn to_complex(x: &CycScalar, digits: u32) -> Result<ComplexDecimal, CycloError> {
    if digits == 0 || digits > MAX_DIGITS {
        return Err(CycloError::PrecisionOutOfRange(digits));
    }
    let work = digits + GUARD_DIGITS;
    let scale = pow10(work);
    let pi = pi(&scale);
    let n = x.conductor() as u64;
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (k, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (cs, sn) = if k == 0 {
            (scale.clone(), BigInt::zero())
        } else {
            cos_sin(k as u64, n, &scale, &pi)
        };
        re += c * cs;
        im += c * sn;
    }
    let d = x.denominator() * pow10(GUARD_DIGITS);
    Ok(ComplexDecimal {
        re: round_div(&re, &d),
        im: round_div(&im, &d),
        digits,
    })
}

/// Double-precision evaluation, for quick comparisons.
pub fn to_c64(x: &CycScalar) -> (f64, f64) {
    let n = x.conductor() as f64;
    let den = big_to_f64(x.denominator());
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = big_to_f64(c) / den;
        let t = std::f64::consts::TAU * k as f64 / n;
        re += c * t.cos();
        im += c * t.sin();
    }
    (re, im)
}

fn big_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

fn write_fixed(f: &mut fmt::Formatter<'_>, v: &BigInt, digits: u32) -> fmt::Result {
    let scale = pow10(digits);
    let (q, r) = v.abs().div_rem(&scale);
    let frac = r.to_string();
    let pad = digits as usize - frac.len();
    write!(f, "{}.{}{}", q, "0".repeat(pad), frac)
}

impl fmt::Display for ComplexDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.re.is_negative() {
            f.write_str("-")?;
        }
        write_fixed(f, &self.re, self.digits)?;
        f.write_str(if self.im.is_negative() { " - " } else { " + " })?;
        write_fixed(f, &self.im, self.digits)?;
        f.write_str("i")
    }
}

impl ComplexDecimal {
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real part alone, formatted like [`Display`](fmt::Display).
    pub fn real_string(&self) -> String {
        struct Re<'a>(&'a ComplexDecimal);
        impl fmt::Display for Re<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.re.is_negative() {
                    f.write_str("-")?;
                }
                write_fixed(f, &self.0.re, self.0.digits)
            }
        }
        Re(self).to_string()
    }
}
