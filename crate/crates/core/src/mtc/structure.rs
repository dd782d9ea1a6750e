//! Which bordism structures a modular category admits, and the normalization constant
//! `p` each choice of root determines.
//!
//! For a factor with anomaly `α = p⁺/p⁻`:
//! * oriented: admissible iff `α = 1` in every factor, with `p = p⁺`;
//! * componentwise signature: a square root `a` of `α` per factor, `p = p⁺/a`;
//! * signature: all factors share one anomaly, one global square root `a`, `p_s = p_s⁺/a`;
//! * `p₁`: a sixth root `a` of `α` per factor, `p = p⁺/a³`.

use super::modular::{gauss_sums, require_modular, GaussSums};
use super::{Category, Label, MtcError};
use crate::cyclo::{root_of_unity_order, CycScalar, RootOfUnity};

/// A root `a` of the anomaly together with the `p` it determines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootChoice {
    pub root: RootOfUnity,
    pub p: CycScalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorStructure {
    pub unit: Label,
    pub gauss: GaussSums,
    pub anomaly: RootOfUnity,
    /// Square roots of the anomaly in canonical order.
    pub csig: Vec<RootChoice>,
    /// Sixth roots of the anomaly in canonical order.
    pub p1: Vec<RootChoice>,
}

/// One of the two global square roots for the signature structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureRoot {
    pub root: RootOfUnity,
    /// `p_s = p_s⁺ / a`, one per factor.
    pub p: Vec<CycScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub factors: Vec<FactorStructure>,
    /// `Some(p per factor)` (always `p⁺`) when every anomaly is 1.
    pub oriented: Option<Vec<CycScalar>>,
    /// Present when all factors share one anomaly.
    pub signature: Option<Vec<SignatureRoot>>,
}

impl StructureReport {
    pub fn oriented_admissible(&self) -> bool {
        self.oriented.is_some()
    }

    pub fn signature_admissible(&self) -> bool {
        self.signature.is_some()
    }
}

fn anomaly_root(c: &Category, factor: usize, g: &GaussSums) -> Result<RootOfUnity, MtcError> {
    root_of_unity_order(&g.anomaly).ok_or_else(|| MtcError::RootEnumerationUnsupported {
        factor: c.factors()[factor].unit,
        anomaly: g.anomaly.clone(),
    })
}

fn choices(g: &GaussSums, anomaly: RootOfUnity, k: u32, power: i64) -> Vec<RootChoice> {
    anomaly
        .kth_root_exponents(k)
        .into_iter()
        .map(|root| {
            let a = root
                .value()
                .pow(power)
                .expect("roots of unity are invertible");
            RootChoice {
                root,
                p: &g.p_plus / &a,
            }
        })
        .collect()
}

pub fn admissibility(c: &Category) -> Result<StructureReport, MtcError> {
    require_modular(c)?;
    let mut factors = Vec::with_capacity(c.factors().len());
    for (fi, f) in c.factors().iter().enumerate() {
        let gauss = gauss_sums(c, fi);
        let anomaly = anomaly_root(c, fi, &gauss)?;
        let csig = choices(&gauss, anomaly, 2, 1);
        let p1 = choices(&gauss, anomaly, 6, 3);
        factors.push(FactorStructure {
            unit: f.unit,
            gauss,
            anomaly,
            csig,
            p1,
        });
    }
    let oriented = factors
        .iter()
        .all(|f| f.anomaly.is_one())
        .then(|| factors.iter().map(|f| f.gauss.p_plus.clone()).collect());
    let common = factors[0].anomaly;
    let signature = factors.iter().all(|f| f.anomaly == common).then(|| {
        common
            .kth_root_exponents(2)
            .into_iter()
            .map(|root| {
                let a = root.value();
                SignatureRoot {
                    root,
                    p: factors.iter().map(|f| &f.gauss.p_plus / &a).collect(),
                }
            })
            .collect()
    });
    Ok(StructureReport {
        factors,
        oriented,
        signature,
    })
}

/// `p = p⁺ / a` for the `root_index`-th square root `a` of the factor's anomaly.
///
/// Index 0 of an anomaly-free factor is `a = 1`, i.e. `p = p⁺`.
pub fn choose_p(c: &Category, factor: usize, root_index: usize) -> Result<CycScalar, MtcError> {
    require_modular(c)?;
    if factor >= c.factors().len() {
        return Err(MtcError::InvalidLabel(factor));
    }
    if root_index >= 2 {
        return Err(MtcError::RootIndexOutOfRange {
            index: root_index,
            count: 2,
        });
    }
    let g = gauss_sums(c, factor);
    let anomaly = anomaly_root(c, factor, &g)?;
    let a = &anomaly.kth_roots(2)[root_index];
    Ok(&g.p_plus / a)
}
