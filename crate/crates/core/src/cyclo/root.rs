use std::fmt;

use num_integer::Integer;
use num_traits::One;

use super::CycScalar;

/// A root of unity `ζ_m^a`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: u32,
    exponent: u32,
}

impl RootOfUnity {
    /// Builds `ζ_m^a` and reduces it so that `gcd(a, m) = 1` (or `(1, 0)` for the value 1).
    pub fn new(order: u32, exponent: i64) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        let a = exponent.rem_euclid(order as i64) as u32;
        if a == 0 {
            return RootOfUnity {
                order: 1,
                exponent: 0,
            };
        }
        let g = a.gcd(&order);
        RootOfUnity {
            order: order / g,
            exponent: a / g,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// The value as an element of `Q(ζ_m)`.
    pub fn value(&self) -> CycScalar {
        CycScalar::zeta(self.order, self.exponent as i64).expect("order within conductor bound")
    }

    /// All `k` roots `r` with `r^k = self`, namely `ζ_{km}^{a + jm}` for `j = 0..k`.
    pub fn kth_roots(&self, k: u32) -> Vec<CycScalar> {
        assert!(k >= 1);
        let m = self.order as i64;
        let n = k * self.order;
        (0..k as i64)
            .map(|j| {
                CycScalar::zeta(n, self.exponent as i64 + j * m)
                    .expect("root conductor within bound")
            })
            .collect()
    }

    /// Same roots as [`kth_roots`](Self::kth_roots), in root-of-unity form.
    pub fn kth_root_exponents(&self, k: u32) -> Vec<RootOfUnity> {
        let m = self.order as i64;
        (0..k as i64)
            .map(|j| RootOfUnity::new(k * self.order, self.exponent as i64 + j * m))
            .collect()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, _) => f.write_str("1"),
            (2, _) => f.write_str("-1"),
            (m, 1) => write!(f, "zeta_{m}"),
            (m, a) => write!(f, "zeta_{m}^{a}"),
        }
    }
}

/// Returns `(m, a)` with `x = ζ_m^a` when `x` is a root of unity in its field.
///
/// Every root of unity of `Q(ζ_N)` is `±ζ_N^j`, so it suffices to compare against those
/// `2N` candidates in the element's own conductor.
pub fn root_of_unity_order(x: &CycScalar) -> Option<RootOfUnity> {
    let n = x.conductor();
    // cheap filter: a root of unity has an integral representation
    if !x.denominator().is_one() {
        return None;
    }
    let mut power = CycScalar::one();
    let z = CycScalar::zeta(n, 1).ok()?;
    for j in 0..n as i64 {
        if &power == x {
            return Some(RootOfUnity::new(n, j));
        }
        if power.neg() == *x {
            return Some(RootOfUnity::new(2 * n, n as i64 + 2 * j));
        }
        power = power.mul(&z);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        assert_eq!(RootOfUnity::new(8, 2), RootOfUnity::new(4, 1));
        assert_eq!(RootOfUnity::new(6, 0), RootOfUnity::new(1, 0));
        assert_eq!(RootOfUnity::new(4, -1), RootOfUnity::new(4, 3));
    }

    #[test]
    fn detects_roots_of_unity() {
        let i = CycScalar::zeta(4, 1).unwrap();
        assert_eq!(root_of_unity_order(&i), Some(RootOfUnity::new(4, 1)));
        assert_eq!(root_of_unity_order(&CycScalar::from_int(2)), None);
        assert_eq!(
            root_of_unity_order(&CycScalar::from_int(-1)),
            Some(RootOfUnity::new(2, 1))
        );
        let one = CycScalar::one();
        let q = (&one + &i).div(&(&one - &i)).unwrap();
        assert_eq!(root_of_unity_order(&q), Some(RootOfUnity::new(4, 1)));
        // -ζ_5 = ζ_10^7
        let x = CycScalar::zeta(5, 1).unwrap().neg();
        assert_eq!(root_of_unity_order(&x), Some(RootOfUnity::new(10, 7)));
    }

    #[test]
    fn kth_roots_examples() {
        let one = RootOfUnity::new(1, 0);
        assert_eq!(
            one.kth_roots(2),
            vec![CycScalar::one(), CycScalar::from_int(-1)]
        );
        let i = RootOfUnity::new(4, 1);
        assert_eq!(
            i.kth_roots(2),
            vec![
                CycScalar::zeta(8, 1).unwrap(),
                CycScalar::zeta(8, 5).unwrap()
            ]
        );
        let sixth = one.kth_roots(6);
        assert_eq!(sixth.len(), 6);
        for r in &sixth {
            assert!(r.pow(6).unwrap().is_one());
        }
        for a in 0..6 {
            for b in a + 1..6 {
                assert_ne!(sixth[a], sixth[b]);
            }
        }
    }
}
