//! The genus-one sector: the torus representation, `SL(2, ℤ)` words, negative continued
//! fractions, and lens-space and torus-bundle invariants.

mod contfrac;
mod rep;
mod sl2z;

use crate::cyclo::{CycScalar, CycloError};
use crate::mtc::{s_tilde_of, Category, Label, MtcError};
use crate::par::Execution;

pub use contfrac::{
    evaluate as evaluate_neg_continued_fraction, neg_continued_fraction, NegContFrac,
};
pub use rep::{torus_rep, torus_rep_with_p, FactorRep, TorusRep};
pub use sl2z::{decompose_sl2z, Letter, MCGWord, SL2Z};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum McgError {
    #[error(transparent)]
    Mtc(#[from] MtcError),
    #[error(transparent)]
    Arithmetic(#[from] CycloError),
    #[error("matrix ({a},{b};{c},{d}) does not have determinant 1")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64 },
    #[error("word syntax error at offset {offset}: expected {expected}")]
    WordSyntax {
        offset: usize,
        expected: &'static str,
    },
    #[error("not-coprime: gcd({p}, {q}) is not 1")]
    NotCoprime { p: u64, q: i64 },
    #[error("lens space L({p},{q}): p must be positive")]
    InvalidLensParameter { p: u64, q: i64 },
    #[error("chain-link evaluation needs at least one term")]
    EmptyTerms,
    #[error("anomalous-data-matrix-input: factor {unit} carries only a projective representation (p differs from p+); give a word or allow framing dependence")]
    AnomalousMatrixInput { unit: Label },
    #[error("expected {expected} values of p (one per factor), got {found}")]
    PCount { expected: usize, found: usize },
    #[error("integer overflow in SL(2,Z) arithmetic")]
    Overflow,
}

/// A closed-manifold invariant: one value per factor and their sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldInvariant {
    /// `(unit summand, value)` in factor order.
    pub per_factor: Vec<(Label, CycScalar)>,
    pub total: CycScalar,
}

impl ManifoldInvariant {
    fn from_values(units: impl IntoIterator<Item = Label>, values: Vec<CycScalar>) -> Self {
        let total = CycScalar::sum(values.iter());
        ManifoldInvariant {
            per_factor: units.into_iter().zip(values).collect(),
            total,
        }
    }
}

/// `(s t^{m_n} s ⋯ t^{m₁} s)_{uu}` per factor, where `[m₁, …, m_n]` expands `p/q`.
pub fn lens_invariant(rep: &TorusRep<'_>, p: u64, q: i64) -> Result<ManifoldInvariant, McgError> {
    let frac = neg_continued_fraction(p, q)?;
    Ok(lens_from_terms(rep, &frac.terms))
}

/// The lens-space word `S T^{m_n} S ⋯ T^{m₁} S` for innermost-first terms.
pub fn lens_word(terms: &[i64]) -> MCGWord {
    let mut w = MCGWord::new();
    w.push(Letter::S, 1);
    for &m in terms.iter().rev() {
        w.push(Letter::T, m);
        w.push(Letter::S, 1);
    }
    w
}

fn lens_from_terms(rep: &TorusRep<'_>, terms: &[i64]) -> ManifoldInvariant {
    let c = rep.category();
    let s = rep.s();
    let values = rep
        .factors()
        .iter()
        .map(|f| {
            let u = f.unit;
            // apply the product to e_u from the right: s, then t^{m₁}, s, …
            let mut v: Vec<CycScalar> = f.members.iter().map(|&i| s.get(i, u).clone()).collect();
            for &m in terms {
                for (x, &i) in v.iter_mut().zip(&f.members) {
                    *x = &*x * &c.twist(i).pow(m).expect("twists are nonzero");
                }
                v = f
                    .members
                    .iter()
                    .map(|&i| {
                        let row: Vec<CycScalar> = f
                            .members
                            .iter()
                            .zip(&v)
                            .map(|(&j, x)| s.get(i, j) * x)
                            .collect();
                        CycScalar::sum(row.iter())
                    })
                    .collect();
            }
            let pos = f
                .members
                .iter()
                .position(|&i| i == u)
                .expect("unit is a member");
            v.swap_remove(pos)
        })
        .collect();
    ManifoldInvariant::from_values(rep.factors().iter().map(|f| f.unit), values)
}

/// Lens invariants for many `(p, q)` pairs, in input order.
pub fn lens_batch(
    rep: &TorusRep<'_>,
    pairs: &[(u64, i64)],
    exec: Execution,
) -> Vec<Result<ManifoldInvariant, McgError>> {
    exec.map_slice(pairs, |&(p, q)| lens_invariant(rep, p, q))
}

/// Chain-link surgery formula
/// `p^{−(n+1)} Σ d_{i₁} θ_{i₁}^{m₁} S̃_{i₁i₂} θ_{i₂}^{m₂} ⋯ θ_{i_n}^{m_n} d_{i_n}` per factor,
/// summed over labellings by a transfer-vector recursion.
pub fn chain_link_oracle(
    c: &Category,
    ps: &[CycScalar],
    terms: &[i64],
) -> Result<ManifoldInvariant, McgError> {
    if terms.is_empty() {
        return Err(McgError::EmptyTerms);
    }
    if ps.len() != c.factors().len() {
        return Err(McgError::PCount {
            expected: c.factors().len(),
            found: ps.len(),
        });
    }
    let st = s_tilde_of(c)?;
    let mut values = Vec::with_capacity(ps.len());
    for (f, p) in c.factors().iter().zip(ps) {
        let theta_pow = |i: Label, m: i64| c.twist(i).pow(m);
        let mut w = f
            .members
            .iter()
            .map(|&i| Ok(c.qdim(i) * &theta_pow(i, terms[0])?))
            .collect::<Result<Vec<_>, CycloError>>()?;
        for &m in &terms[1..] {
            let mut next = Vec::with_capacity(w.len());
            for &j in &f.members {
                let mut acc = CycScalar::zero();
                for (x, &i) in w.iter().zip(&f.members) {
                    acc = &acc + &(x * st.get(i, j));
                }
                next.push(&acc * &theta_pow(j, m)?);
            }
            w = next;
        }
        let mut sum = CycScalar::zero();
        for (x, &i) in w.iter().zip(&f.members) {
            sum = &sum + &(x * c.qdim(i));
        }
        values.push(sum.div(&p.pow(terms.len() as i64 + 1)?)?);
    }
    Ok(ManifoldInvariant::from_values(
        c.factors().iter().map(|f| f.unit),
        values,
    ))
}

/// How a torus bundle's monodromy is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monodromy {
    Matrix(SL2Z),
    Word(MCGWord),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleInvariant {
    /// The word that was evaluated.
    pub word: MCGWord,
    pub value: ManifoldInvariant,
    /// Set when some factor's representation is only projective, so the value depends
    /// on the word and not just on the mapping class.
    pub framing_dependent: bool,
}

/// `Tr ρ(τ)` per factor for the mapping torus of `τ`.
///
/// Matrix input is refused unless every factor is an honest representation
/// (`p = p⁺`) or `allow_framing` is set; word input is always evaluated as given.
pub fn torus_bundle_invariant(
    rep: &TorusRep<'_>,
    monodromy: &Monodromy,
    allow_framing: bool,
) -> Result<BundleInvariant, McgError> {
    let framing_dependent = !rep.is_linear();
    let word = match monodromy {
        Monodromy::Matrix(m) => {
            if framing_dependent && !allow_framing {
                let f = rep
                    .factors()
                    .iter()
                    .find(|f| !f.is_linear())
                    .expect("some factor");
                return Err(McgError::AnomalousMatrixInput { unit: f.unit });
            }
            decompose_sl2z(m)
        }
        Monodromy::Word(w) => w.clone(),
    };
    let m = rep.evaluate_word(&word)?;
    let values = rep
        .factors()
        .iter()
        .map(|f| CycScalar::sum(f.members.iter().map(|&i| m.get(i, i))))
        .collect();
    Ok(BundleInvariant {
        word,
        value: ManifoldInvariant::from_values(rep.factors().iter().map(|f| f.unit), values),
        framing_dependent,
    })
}
