use std::fmt;

use num_traits::{Signed, ToPrimitive};

use super::{Category, Label, MtcError};
use crate::cyclo::{CycMatrix, CycScalar};
use crate::par::Execution;

/// Gauss sums and derived quantities of one factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussSums {
    pub p_plus: CycScalar,
    pub p_minus: CycScalar,
    /// `p⁺ / p⁻`.
    pub anomaly: CycScalar,
    /// `p⁺ · p⁻`.
    pub global_dim: CycScalar,
}

/// `p⁺ = Σ θ_i d_i²`, `p⁻ = Σ θ_i⁻¹ d_i²` over the factor at index `factor`.
pub fn gauss_sums(c: &Category, factor: usize) -> GaussSums {
    let (p_plus, p_minus) = c.raw_gauss_sums(factor);
    let anomaly = p_plus
        .div(&p_minus)
        .expect("validated categories have nonzero p-");
    let global_dim = &p_plus * &p_minus;
    GaussSums {
        p_plus,
        p_minus,
        anomaly,
        global_dim,
    }
}

/// The unnormalized Hopf-link matrix.
///
/// Returns the supplied matrix when the input carried one; otherwise computes
/// `S̃_ij = θ_i⁻¹ θ_j⁻¹ Σ_k N_{i* j}^k θ_k d_k` inside each factor and zero across
/// factors, and rejects the result if it is not symmetric.
pub fn s_tilde_of(c: &Category) -> Result<CycMatrix, MtcError> {
    if let Some(s) = &c.data().s_tilde {
        return Ok(s.clone());
    }
    let r = c.rank();
    let inv_twist: Vec<CycScalar> = (0..r).map(|i| c.twist(i).inv()).collect::<Result<_, _>>()?;
    let balanced: Vec<CycScalar> = (0..r).map(|k| c.twist(k) * c.qdim(k)).collect();
    let entry = |idx: usize| {
        let (i, j) = (idx / r, idx % r);
        if c.factor_index(i) != c.factor_index(j) {
            return CycScalar::zero();
        }
        let di = c.dual(i);
        let mut acc = CycScalar::zero();
        for (k, b) in balanced.iter().enumerate() {
            let m = c.n(di, j, k);
            if m != 0 {
                acc = &acc + &(b * &CycScalar::from_int(m as i64));
            }
        }
        &(&inv_twist[i] * &inv_twist[j]) * &acc
    };
    let entries = Execution::default().map_range(r * r, entry);
    let s = CycMatrix::new(r, r, entries)?;
    for i in 0..r {
        for j in 0..i {
            if s.get(i, j) != s.get(j, i) {
                return Err(MtcError::ConventionInconsistency { i, j });
            }
        }
    }
    Ok(s)
}

/// Why a category failed the modularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModularityWitness {
    /// `Σ_j d_j S̃_{ji}` differs from `(Σ d²)·δ_{i,unit}` at this label.
    KillingIdentity { unit: Label, label: Label },
    /// The computed S-matrix was not symmetric.
    Asymmetric { i: Label, j: Label },
}

impl fmt::Display for ModularityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModularityWitness::KillingIdentity { unit, label } => {
                write!(f, "killing identity fails at label {label} (factor {unit})")
            }
            ModularityWitness::Asymmetric { i, j } => {
                write!(f, "S-matrix asymmetric at ({i}, {j})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularityReport {
    pub modular: bool,
    pub witness: Option<ModularityWitness>,
}

/// Modular iff every factor block of `S̃` is invertible. Also evaluates the killing
/// identity and reports the first label where it fails: non-unit labels first
/// (where the sum must vanish), then the unit.
pub fn verify_modular(c: &Category) -> ModularityReport {
    let s = match s_tilde_of(c) {
        Ok(s) => s,
        Err(MtcError::ConventionInconsistency { i, j }) => {
            return ModularityReport {
                modular: false,
                witness: Some(ModularityWitness::Asymmetric { i, j }),
            }
        }
        Err(e) => unreachable!("S-matrix construction on validated data: {e}"),
    };
    let mut invertible = true;
    let mut witness = None;
    for f in c.factors() {
        let block = s.principal_submatrix(&f.members);
        if block.inverse().is_err() {
            invertible = false;
        }
        if witness.is_none() {
            witness = killing_witness(c, &s, f.unit, &f.members);
        }
    }
    ModularityReport {
        modular: invertible,
        witness: if invertible { None } else { witness },
    }
}

fn killing_witness(
    c: &Category,
    s: &CycMatrix,
    unit: Label,
    members: &[Label],
) -> Option<ModularityWitness> {
    let loop_sum = |i: Label| {
        CycScalar::sum(
            members
                .iter()
                .map(|&j| c.qdim(j) * s.get(j, i))
                .collect::<Vec<_>>()
                .iter(),
        )
    };
    for &i in members.iter().filter(|&&i| i != unit) {
        if !loop_sum(i).is_zero() {
            return Some(ModularityWitness::KillingIdentity { unit, label: i });
        }
    }
    let dim2 = CycScalar::sum(
        members
            .iter()
            .map(|&j| c.qdim(j) * c.qdim(j))
            .collect::<Vec<_>>()
            .iter(),
    );
    if loop_sum(unit) != dim2 {
        return Some(ModularityWitness::KillingIdentity { unit, label: unit });
    }
    None
}

/// Reconstructs `N_{ij}^k = (p⁺p⁻)⁻¹ Σ_r S̃_ir S̃_jr conj(S̃_kr) / d_r` inside each factor.
/// The result is returned as a flat `rank³` table indexed like [`FusionData`](super::FusionData).
pub fn verlinde_fusion(c: &Category) -> Result<Vec<u32>, MtcError> {
    require_modular(c)?;
    let s = s_tilde_of(c)?;
    let r = c.rank();
    let mut table = vec![0u32; r * r * r];
    for (fi, f) in c.factors().iter().enumerate() {
        let g = super::gauss_sums(c, fi);
        let scale = g.global_dim.inv()?;
        let inv_d: Vec<CycScalar> = f
            .members
            .iter()
            .map(|&x| c.qdim(x).inv())
            .collect::<Result<_, _>>()?;
        let m = f.members.len();
        let conj_s = s.conj();
        let cells: Vec<Result<(usize, u32), MtcError>> =
            Execution::default().map_range(m * m * m, |idx| {
                let (a, b, e) = (idx / (m * m), (idx / m) % m, idx % m);
                let (i, j, k) = (f.members[a], f.members[b], f.members[e]);
                let mut acc = CycScalar::zero();
                for (t, &x) in f.members.iter().enumerate() {
                    let term = &(&(s.get(i, x) * s.get(j, x)) * conj_s.get(k, x)) * &inv_d[t];
                    acc = &acc + &term;
                }
                let v = &acc * &scale;
                let mismatch = || MtcError::VerlindeMismatch {
                    i,
                    j,
                    k,
                    value: v.to_string(),
                };
                let n = v.to_integer().ok_or_else(mismatch)?;
                if n.is_negative() {
                    return Err(mismatch());
                }
                let n = n.to_u32().ok_or_else(mismatch)?;
                Ok(((i * r + j) * r + k, n))
            });
        for cell in cells {
            let (idx, n) = cell?;
            table[idx] = n;
        }
    }
    Ok(table)
}

pub(crate) fn require_modular(c: &Category) -> Result<(), MtcError> {
    let report = verify_modular(c);
    if report.modular {
        Ok(())
    } else {
        Err(MtcError::NotModular(report.witness.unwrap_or(
            ModularityWitness::KillingIdentity {
                unit: c.factors()[0].unit,
                label: c.factors()[0].unit,
            },
        )))
    }
}
