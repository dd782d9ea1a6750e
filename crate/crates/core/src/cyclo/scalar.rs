use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{modulus, MAX_CONDUCTOR};
use super::CycloError;

/// An exact element of the cyclotomic field `Q(ζ_N)`.
///
/// Stored in the power basis `1, z, …, z^{φ(N)-1}` with `z = e^{2πi/N}`, as an integer
/// numerator vector over a single positive denominator. The representation is reduced
/// modulo `Φ_N`, so two values of the same conductor are equal iff their vectors are.
#[derive(Clone, Debug)]
pub struct CycScalar {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// `Q(ζ_2) = Q`, so conductor 2 is stored as conductor 1.
fn normal_conductor(n: u32) -> u32 {
    if n == 2 {
        1
    } else {
        n
    }
}

impl CycScalar {
    fn from_parts(conductor: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycScalar {
            conductor,
            num,
            den,
        };
        x.normalize_denominator();
        x
    }

    fn normalize_denominator(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    /// Reduces a raw polynomial in `z` (rational coefficients, any length) modulo `Φ_N`.
    pub fn canonicalize(conductor: u32, raw: &[BigRational]) -> Result<Self, CycloError> {
        check_conductor(conductor)?;
        let den = raw.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints = raw.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        Ok(Self::from_integer_poly(conductor, ints, den))
    }

    /// Like [`canonicalize`](Self::canonicalize) for an integer polynomial over a common
    /// denominator. The conductor must already be valid.
    pub(crate) fn from_integer_poly(conductor: u32, raw: Vec<BigInt>, den: BigInt) -> Self {
        let num = modulus(conductor).reduce(raw);
        Self::from_parts(normal_conductor(conductor), num, den)
    }

    pub fn from_rational(r: BigRational) -> Self {
        let (n, d) = r.into_raw();
        Self::from_parts(1, vec![n], d)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_parts(1, vec![BigInt::from(n)], BigInt::one())
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta(conductor: u32, k: i64) -> Result<Self, CycloError> {
        check_conductor(conductor)?;
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut raw = vec![BigInt::zero(); e + 1];
        raw[e] = BigInt::one();
        Ok(Self::from_integer_poly(conductor, raw, BigInt::one()))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical coefficients of `1, z, …, z^{φ(N)-1}`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Returns the value as an integer when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// Value-preserving map `z_M ↦ z_N^{N/M}` into `Q(ζ_N)`.
    pub fn embed(&self, target: u32) -> Result<Self, CycloError> {
        check_conductor(target)?;
        let target_n = normal_conductor(target);
        if !target.is_multiple_of(self.conductor) {
            return Err(CycloError::IncompatibleConductor {
                from: self.conductor,
                to: target,
            });
        }
        Ok(self.embed_unchecked(target_n))
    }

    fn embed_unchecked(&self, target: u32) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut raw = vec![BigInt::zero(); (self.num.len().max(1) - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::from_integer_poly(target, raw, self.den.clone())
    }

    /// Brings two values into their common field `Q(ζ_lcm)`.
    pub(crate) fn unify(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let n = normal_conductor(lcm(self.conductor, other.conductor));
        (self.embed_unchecked(n), other.embed_unchecked(n))
    }

    fn with_common<R>(&self, other: &Self, f: impl FnOnce(&Self, &Self) -> R) -> R {
        if self.conductor == other.conductor {
            f(self, other)
        } else if other.conductor.is_multiple_of(self.conductor) {
            f(&self.embed_unchecked(other.conductor), other)
        } else if self.conductor.is_multiple_of(other.conductor) {
            f(self, &other.embed_unchecked(self.conductor))
        } else {
            let (a, b) = self.unify(other);
            f(&a, &b)
        }
    }

    fn add_same(&self, other: &Self) -> Self {
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a + b)
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a * &other.den + b * &self.den)
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Self::from_parts(self.conductor, num, den)
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.is_rational() && other.is_rational() {
            let num = vec![&self.num[0] * &other.num[0]];
            let mut padded = num;
            padded.resize(self.num.len(), BigInt::zero());
            return Self::from_parts(self.conductor, padded, &self.den * &other.den);
        }
        let len = self.num.len();
        let mut raw = vec![BigInt::zero(); 2 * len - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let num = modulus(self.conductor).reduce(raw);
        Self::from_parts(self.conductor, num, &self.den * &other.den)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.with_common(other, Self::add_same)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.with_common(other, Self::mul_same)
    }

    pub fn neg(&self) -> Self {
        CycScalar {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::from_parts(
            self.conductor,
            self.num.iter().map(|c| c * r.numer()).collect(),
            &self.den * r.denom(),
        )
    }

    /// Complex conjugation, `z ↦ z^{N-1}`.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        if n == 1 {
            return self.clone();
        }
        let mut raw = vec![BigInt::zero(); n];
        for (k, c) in self.num.iter().enumerate() {
            raw[(n - k) % n] += c;
        }
        Self::from_integer_poly(self.conductor, raw, self.den.clone())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if self.is_rational() {
            let r = BigRational::new(self.den.clone(), self.num[0].clone());
            let mut num = vec![BigInt::zero(); self.num.len()];
            let (n, d) = r.into_raw();
            num[0] = n;
            return Ok(Self::from_parts(self.conductor, num, d));
        }
        let phi = modulus(self.conductor);
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let m: Vec<BigRational> = phi
            .coeffs
            .iter()
            .map(|&c| BigRational::from(BigInt::from(c)))
            .collect();
        let s = rational_poly_inverse(&a, &m);
        // 1/(num/den) = den * (1/num)
        let den = BigRational::from(self.den.clone());
        let scaled: Vec<BigRational> = s.into_iter().map(|c| c * &den).collect();
        Self::canonicalize(self.conductor, &scaled)
    }

    pub fn div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Sum of an iterator of scalars.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a CycScalar>) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| acc.add(x))
    }
}

pub(crate) fn check_conductor(n: u32) -> Result<(), CycloError> {
    if n == 0 || n > MAX_CONDUCTOR {
        Err(CycloError::InvalidConductor(n))
    } else {
        Ok(())
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / lead;
        if !c.is_zero() {
            for (t, bt) in b.iter().enumerate() {
                rem[k + t] -= &c * bt;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Returns `s` with `s·a ≡ 1 (mod m)`, assuming `gcd(a, m) = 1` (true for nonzero `a`
/// reduced modulo an irreducible `m`).
fn rational_poly_inverse(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant
    let c = r0[0].clone();
    s0.into_iter().map(|x| x / &c).collect()
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.with_common(other, |a, b| a.den == b.den && a.num == b.num)
    }
}

impl Eq for CycScalar {}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for CycScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        CycScalar::add(self, rhs)
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        CycScalar::sub(self, rhs)
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        CycScalar::mul(self, rhs)
    }
}

/// Panics on division by zero; use [`CycScalar::div`] for a fallible version.
impl Div for &CycScalar {
    type Output = CycScalar;
    fn div(self, rhs: &CycScalar) -> CycScalar {
        CycScalar::div(self, rhs).expect("division by zero")
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar::neg(self)
    }
}

/// Writes the scalar in the text grammar (`1/2*z^3 - z + 2`), highest power first.
impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let mag = r.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match k {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
