use super::{Letter, MCGWord, McgError};
use crate::cyclo::{CycMatrix, CycScalar};
use crate::mtc::{choose_p, gauss_sums, s_tilde_of, Category, GaussSums, Label, MtcError};

/// One factor's slice of the genus-one representation.
#[derive(Clone, Debug)]
pub struct FactorRep {
    pub unit: Label,
    pub members: Vec<Label>,
    pub gauss: GaussSums,
    pub p: CycScalar,
}

impl FactorRep {
    /// `λ = p⁺/p`, the scalar in `(st)³ = λ s²`.
    pub fn projective_scalar(&self) -> CycScalar {
        &self.gauss.p_plus / &self.p
    }

    /// Whether `S ↦ s, T ↦ t` is an honest representation on this factor (`p = p⁺`).
    pub fn is_linear(&self) -> bool {
        self.p == self.gauss.p_plus
    }
}

/// The matrices `s`, `t`, `a` on the torus state space for one choice of `p` per factor.
///
/// `t = diag(θ)`, `s = S̃/p` blockwise and `a = t⁻¹ s⁻¹ t⁻¹`, so that `t a t = s⁻¹`.
#[derive(Clone, Debug)]
pub struct TorusRep<'a> {
    category: &'a Category,
    factors: Vec<FactorRep>,
    s: CycMatrix,
    s_inv: CycMatrix,
    t: CycMatrix,
    t_inv: CycMatrix,
    a: CycMatrix,
    a_inv: CycMatrix,
}

/// Builds the representation, choosing `p` in each factor by its root index.
pub fn torus_rep<'a>(c: &'a Category, root_indices: &[usize]) -> Result<TorusRep<'a>, McgError> {
    let nf = c.factors().len();
    if root_indices.len() != nf {
        return Err(MtcError::RootIndexCount {
            expected: nf,
            found: root_indices.len(),
        }
        .into());
    }
    let ps = root_indices
        .iter()
        .enumerate()
        .map(|(f, &idx)| choose_p(c, f, idx))
        .collect::<Result<Vec<_>, _>>()?;
    torus_rep_with_p(c, ps)
}

/// Builds the representation from explicit values of `p`, one per factor.
pub fn torus_rep_with_p(c: &Category, ps: Vec<CycScalar>) -> Result<TorusRep<'_>, McgError> {
    let nf = c.factors().len();
    if ps.len() != nf {
        return Err(McgError::PCount {
            expected: nf,
            found: ps.len(),
        });
    }
    let s_tilde = s_tilde_of(c)?;
    let inv_p = ps
        .iter()
        .map(CycScalar::inv)
        .collect::<Result<Vec<_>, _>>()?;
    let s = CycMatrix::from_fn(c.rank(), c.rank(), |i, j| {
        s_tilde.get(i, j) * &inv_p[c.factor_index(i)]
    });
    let twist: Vec<CycScalar> = (0..c.rank()).map(|i| c.twist(i).clone()).collect();
    let t = CycMatrix::diagonal(&twist);
    let t_inv = t.pow(-1)?;
    let s_inv = s.inverse()?;
    let a = t_inv.mul(&s_inv)?.mul(&t_inv)?;
    let a_inv = t.mul(&s)?.mul(&t)?;
    let factors = c
        .factors()
        .iter()
        .zip(ps)
        .enumerate()
        .map(|(fi, (f, p))| FactorRep {
            unit: f.unit,
            members: f.members.clone(),
            gauss: gauss_sums(c, fi),
            p,
        })
        .collect();
    Ok(TorusRep {
        category: c,
        factors,
        s,
        s_inv,
        t,
        t_inv,
        a,
        a_inv,
    })
}

impl<'a> TorusRep<'a> {
    pub fn category(&self) -> &'a Category {
        self.category
    }

    pub fn factors(&self) -> &[FactorRep] {
        &self.factors
    }

    pub fn s(&self) -> &CycMatrix {
        &self.s
    }

    pub fn t(&self) -> &CycMatrix {
        &self.t
    }

    pub fn a(&self) -> &CycMatrix {
        &self.a
    }

    /// Whether every factor carries an honest `SL(2, ℤ)` representation.
    pub fn is_linear(&self) -> bool {
        self.factors.iter().all(FactorRep::is_linear)
    }

    fn letter_power(&self, letter: Letter, e: i64) -> Result<CycMatrix, McgError> {
        let (m, m_inv) = match letter {
            Letter::S => {
                // s⁴ = C² = 1
                return Ok(self.s.pow(e.rem_euclid(4))?);
            }
            Letter::T => return Ok(self.t.pow(e)?),
            Letter::A => (&self.a, &self.a_inv),
        };
        let base = if e < 0 { m_inv } else { m };
        Ok(base.pow(e.abs())?)
    }

    /// The product of the letter matrices, left to right.
    pub fn evaluate_word(&self, w: &MCGWord) -> Result<CycMatrix, McgError> {
        let mut out = CycMatrix::identity(self.category.rank());
        for &(letter, e) in w.letters() {
            out = out.mul(&self.letter_power(letter, e)?)?;
        }
        Ok(out)
    }

    /// `s⁻¹`, exact.
    pub fn s_inverse(&self) -> &CycMatrix {
        &self.s_inv
    }

    /// `t⁻¹`, exact.
    pub fn t_inverse(&self) -> &CycMatrix {
        &self.t_inv
    }
}
