use num_integer::Integer;
use num_rational::Ratio;

use super::McgError;

/// A negative continued fraction `p/q = m_n − 1/(m_{n−1} − ⋯ − 1/m₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegContFrac {
    pub p: u64,
    /// Reduced into `1..=p` (`1` when `p = 1`).
    pub q: u64,
    /// Innermost first: `[m₁, …, m_n]`.
    pub terms: Vec<i64>,
}

impl NegContFrac {
    /// Evaluates the nested fraction exactly.
    pub fn value(&self) -> Ratio<i128> {
        evaluate(&self.terms)
    }
}

/// `m_n − 1/(m_{n−1} − ⋯ − 1/m₁)` for innermost-first terms. Panics on a zero
/// intermediate denominator.
pub fn evaluate(terms: &[i64]) -> Ratio<i128> {
    let mut iter = terms.iter();
    let mut x = Ratio::from_integer(*iter.next().expect("at least one term") as i128);
    for &m in iter {
        x = Ratio::from_integer(m as i128) - x.recip();
    }
    x
}

/// Expands `p/q` with `m = ⌈p/q⌉`, recursing on `(q, mq − p)`.
///
/// `q` is reduced mod `p` first, so negative `q` and `q ≥ p` are accepted. Every term is
/// at least 2, except that `L(1, 1)` expands as `[1]`.
pub fn neg_continued_fraction(p: u64, q: i64) -> Result<NegContFrac, McgError> {
    if p == 0 {
        return Err(McgError::InvalidLensParameter { p, q });
    }
    if p == 1 {
        return Ok(NegContFrac {
            p,
            q: 1,
            terms: vec![1],
        });
    }
    let r = q.rem_euclid(p as i64) as u64;
    if r == 0 || r.gcd(&p) != 1 {
        return Err(McgError::NotCoprime { p, q });
    }
    let (mut a, mut b) = (p as u128, r as u128);
    let mut terms = Vec::new();
    while b != 0 {
        let m = a.div_ceil(b);
        terms.push(m as i64);
        (a, b) = (b, m * b - a);
    }
    terms.reverse();
    Ok(NegContFrac { p, q: r, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(neg_continued_fraction(3, 1).unwrap().terms, vec![3]);
        assert_eq!(neg_continued_fraction(5, 2).unwrap().terms, vec![2, 3]);
        let f = neg_continued_fraction(7, 3).unwrap();
        assert_eq!(f.value(), Ratio::new(7, 3));
        assert_eq!(neg_continued_fraction(1, 1).unwrap().terms, vec![1]);
        assert_eq!(neg_continued_fraction(7, 10).unwrap().q, 3);
        assert_eq!(neg_continued_fraction(7, -4).unwrap().q, 3);
        assert!(matches!(
            neg_continued_fraction(6, 4),
            Err(McgError::NotCoprime { .. })
        ));
        assert!(matches!(
            neg_continued_fraction(6, 6),
            Err(McgError::NotCoprime { .. })
        ));
        assert!(neg_continued_fraction(0, 1).is_err());
    }

    #[test]
    fn p_over_one_and_p_over_p_minus_one() {
        assert_eq!(neg_continued_fraction(9, 1).unwrap().terms, vec![9]);
        assert_eq!(
            neg_continued_fraction(5, 4).unwrap().terms,
            vec![2, 2, 2, 2]
        );
    }
}
