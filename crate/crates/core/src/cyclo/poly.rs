//! Integer cyclotomic polynomials and reduction of power-basis vectors.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::Zero;

/// Largest conductor accepted anywhere in the crate.
pub const MAX_CONDUCTOR: u32 = 4096;

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Exact division of `num` by the monic polynomial `den` (coefficients low to high).
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (t, &d) in den.iter().enumerate() {
                rem[k + t] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Coefficients (low to high) of the `n`-th cyclotomic polynomial, obtained by dividing
/// `x^n - 1` by every `Φ_d` with `d` a proper divisor of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = div_exact_monic(&num, &cyclotomic_polynomial_cached(d).coeffs);
    }
    num
}

/// Precomputed reduction data for one conductor.
#[derive(Debug)]
pub struct Modulus {
    pub conductor: u32,
    pub degree: usize,
    pub coeffs: Vec<i64>,
    /// Nonzero entries of `Φ_N` below the leading term.
    sparse_tail: Vec<(usize, i64)>,
}

thread_local! {
    static MODULI: RefCell<HashMap<u32, Rc<Modulus>>> = RefCell::new(HashMap::new());
}

fn cyclotomic_polynomial_cached(n: u32) -> Rc<Modulus> {
    if let Some(m) = MODULI.with(|c| c.borrow().get(&n).cloned()) {
        return m;
    }
    let coeffs = cyclotomic_polynomial(n);
    let degree = coeffs.len() - 1;
    let sparse_tail = coeffs[..degree]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let m = Rc::new(Modulus {
        conductor: n,
        degree,
        coeffs,
        sparse_tail,
    });
    MODULI.with(|c| c.borrow_mut().insert(n, m.clone()));
    m
}

/// Reduction data for conductor `n` (per-thread cache, never shared across threads).
pub fn modulus(n: u32) -> Rc<Modulus> {
    cyclotomic_polynomial_cached(n)
}

impl Modulus {
    /// Reduces an arbitrary-length power-basis vector to a length-`degree` canonical vector.
    pub fn reduce(&self, mut raw: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.conductor as usize;
        if raw.len() > n {
            // z^n = 1
            let tail = raw.split_off(n);
            for (i, c) in tail.into_iter().enumerate() {
                if !c.is_zero() {
                    raw[i % n] += c;
                }
            }
        }
        let deg = self.degree;
        for top in (deg..raw.len()).rev() {
            if raw[top].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[top]);
            let shift = top - deg;
            for &(k, m) in &self.sparse_tail {
                if m == 1 {
                    raw[shift + k] -= &c;
                } else if m == -1 {
                    raw[shift + k] += &c;
                } else {
                    raw[shift + k] -= &c * m;
                }
            }
        }
        raw.resize(deg, BigInt::zero());
        raw
    }
}
