use std::fmt;

use super::fusion::intmat;
use super::{FusionData, Label, ModularDatum};
use crate::cyclo::{CycMatrix, CycScalar};

/// A unit summand together with the simples it preserves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub unit: Label,
    pub members: Vec<Label>,
}

/// Validated fusion rules and modular datum. Immutable once built.
#[derive(Clone, Debug)]
pub struct Category {
    fusion: FusionData,
    data: ModularDatum,
    factors: Vec<Factor>,
    factor_of: Vec<usize>,
}

/// A failed axiom together with the indices witnessing the failure.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("shape-error: {what} has length {found}, expected {expected}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("dual-not-involution({label})")]
    DualNotInvolution { label: Label },
    #[error("dual-moves-unit({unit})")]
    DualMovesUnit { unit: Label },
    #[error("unit-law-failure(unit {unit}, label {label})")]
    UnitLaw { unit: Label, label: Label },
    #[error("unit-orthogonality-failure({a}, {b})")]
    UnitsNotOrthogonal { a: Label, b: Label },
    #[error("factor-partition-failure({label}): preserved by {count} unit summands")]
    FactorPartition { label: Label, count: usize },
    #[error("rigidity-failure({label})")]
    Rigidity { label: Label },
    #[error("commutativity-failure({i}, {j})")]
    Commutativity { i: Label, j: Label },
    #[error("associativity-failure({i}, {j})")]
    Associativity { i: Label, j: Label },
    #[error("twist-zero({label})")]
    TwistZero { label: Label },
    #[error("twist-unit-failure({unit}): twist of a unit summand must be 1")]
    TwistUnit { unit: Label },
    #[error("ribbon-failure({label}): twist differs from twist of dual")]
    TwistDual { label: Label },
    #[error("dimension-unit-failure({unit}): dimension of a unit summand must be 1")]
    DimUnit { unit: Label },
    #[error("dimension-dual-failure({label})")]
    DimDual { label: Label },
    #[error("dimension-homomorphism-failure({i}, {j})")]
    DimHomomorphism { i: Label, j: Label },
    #[error("smatrix-asymmetric({i}, {j})")]
    STildeAsymmetric { i: Label, j: Label },
    #[error("smatrix-unit-row-failure(unit {unit}, label {label})")]
    STildeUnitRow { unit: Label, label: Label },
    #[error("smatrix-cross-factor-failure({i}, {j})")]
    STildeCrossFactor { i: Label, j: Label },
    #[error("degenerate-category: global dimension of factor {unit} is zero")]
    DegenerateCategory { unit: Label },
}

fn shape(what: &'static str, expected: usize, found: usize) -> Result<(), ValidationError> {
    if expected == found {
        Ok(())
    } else {
        Err(ValidationError::Shape {
            what,
            expected,
            found,
        })
    }
}

/// Checks every fusion and ribbon axiom and computes the factor decomposition.
pub fn validate(fusion: FusionData, data: ModularDatum) -> Result<Category, ValidationError> {
    let r = fusion.rank();
    shape("twist", r, data.twist.len())?;
    shape("dim", r, data.qdim.len())?;
    if let Some(s) = &data.s_tilde {
        shape("smatrix rows", r, s.rows())?;
        shape("smatrix cols", r, s.cols())?;
    }

    // duality
    for i in 0..r {
        if fusion.dual(fusion.dual(i)) != i {
            return Err(ValidationError::DualNotInvolution { label: i });
        }
    }
    for &s in fusion.units() {
        if fusion.dual(s) != s {
            return Err(ValidationError::DualMovesUnit { unit: s });
        }
    }

    // unit laws
    for &s in fusion.units() {
        for i in 0..r {
            let keeps = fusion.n(s, i, i);
            if keeps > 1 || fusion.n(i, s, i) != keeps {
                return Err(ValidationError::UnitLaw { unit: s, label: i });
            }
            for j in 0..r {
                if j != i && (fusion.n(s, i, j) != 0 || fusion.n(i, s, j) != 0) {
                    return Err(ValidationError::UnitLaw { unit: s, label: i });
                }
            }
        }
        for &t in fusion.units() {
            for k in 0..r {
                let expected = (s == t && k == s) as u32;
                if fusion.n(s, t, k) != expected {
                    return Err(ValidationError::UnitsNotOrthogonal { a: s, b: t });
                }
            }
        }
    }

    // factors
    let mut factor_of = vec![usize::MAX; r];
    let mut factors = Vec::with_capacity(fusion.units().len());
    for (f, &s) in fusion.units().iter().enumerate() {
        let members: Vec<Label> = (0..r).filter(|&i| fusion.n(s, i, i) == 1).collect();
        for &i in &members {
            if factor_of[i] != usize::MAX {
                let count = fusion
                    .units()
                    .iter()
                    .filter(|&&u| fusion.n(u, i, i) == 1)
                    .count();
                return Err(ValidationError::FactorPartition { label: i, count });
            }
            factor_of[i] = f;
        }
        factors.push(Factor { unit: s, members });
    }
    if let Some(i) = factor_of.iter().position(|&f| f == usize::MAX) {
        return Err(ValidationError::FactorPartition { label: i, count: 0 });
    }

    // rigidity
    for i in 0..r {
        let s = factors[factor_of[i]].unit;
        for j in 0..r {
            if fusion.n(i, j, s) != (j == fusion.dual(i)) as u32 {
                return Err(ValidationError::Rigidity { label: i });
            }
        }
    }

    // commutativity and associativity: N_i N_j = sum_k N_ij^k N_k
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                if fusion.n(i, j, k) != fusion.n(j, i, k) {
                    return Err(ValidationError::Commutativity { i, j });
                }
            }
        }
    }
    let mats: Vec<intmat::IntMat> = (0..r).map(|i| fusion.fusion_matrix(i)).collect();
    for i in 0..r {
        for j in 0..r {
            let lhs = intmat::mul(&mats[i], &mats[j]);
            let mut rhs = vec![vec![0u64; r]; r];
            for (k, mk) in mats.iter().enumerate() {
                let c = fusion.n(i, j, k) as u64;
                if c != 0 {
                    intmat::add_assign(&mut rhs, mk, c);
                }
            }
            if lhs != rhs {
                return Err(ValidationError::Associativity { i, j });
            }
        }
    }

    // twists
    for i in 0..r {
        if data.twist[i].is_zero() {
            return Err(ValidationError::TwistZero { label: i });
        }
    }
    for &s in fusion.units() {
        if data.twist[s] != CycScalar::one() {
            return Err(ValidationError::TwistUnit { unit: s });
        }
    }
    for i in 0..r {
        if data.twist[fusion.dual(i)] != data.twist[i] {
            return Err(ValidationError::TwistDual { label: i });
        }
    }

    // dimensions
    for &s in fusion.units() {
        if data.qdim[s] != CycScalar::one() {
            return Err(ValidationError::DimUnit { unit: s });
        }
    }
    for i in 0..r {
        if data.qdim[fusion.dual(i)] != data.qdim[i] {
            return Err(ValidationError::DimDual { label: i });
        }
    }
    for f in &factors {
        for &i in &f.members {
            for &j in &f.members {
                if j < i {
                    continue;
                }
                let lhs = &data.qdim[i] * &data.qdim[j];
                let mut rhs = CycScalar::zero();
                for k in 0..r {
                    let m = fusion.n(i, j, k);
                    if m != 0 {
                        rhs = &rhs + &(&data.qdim[k] * &CycScalar::from_int(m as i64));
                    }
                }
                if lhs != rhs {
                    return Err(ValidationError::DimHomomorphism { i, j });
                }
            }
        }
    }

    // supplied S-matrix
    if let Some(s) = &data.s_tilde {
        for i in 0..r {
            for j in 0..i {
                if s.get(i, j) != s.get(j, i) {
                    return Err(ValidationError::STildeAsymmetric { i, j });
                }
            }
        }
        for f in &factors {
            for &i in &f.members {
                if *s.get(f.unit, i) != data.qdim[i] {
                    return Err(ValidationError::STildeUnitRow {
                        unit: f.unit,
                        label: i,
                    });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                if factor_of[i] != factor_of[j] && !s.get(i, j).is_zero() {
                    return Err(ValidationError::STildeCrossFactor { i, j });
                }
            }
        }
    }

    let cat = Category {
        fusion,
        data,
        factors,
        factor_of,
    };

    for f in 0..cat.factors.len() {
        let (plus, minus) = cat.raw_gauss_sums(f);
        if (&plus * &minus).is_zero() {
            return Err(ValidationError::DegenerateCategory {
                unit: cat.factors[f].unit,
            });
        }
    }
    Ok(cat)
}

impl Category {
    pub fn fusion(&self) -> &FusionData {
        &self.fusion
    }

    pub fn data(&self) -> &ModularDatum {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.fusion.rank()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Index into [`factors`](Self::factors) of the factor containing `label`.
    pub fn factor_index(&self, label: Label) -> usize {
        self.factor_of[label]
    }

    pub fn twist(&self, i: Label) -> &CycScalar {
        &self.data.twist[i]
    }

    pub fn qdim(&self, i: Label) -> &CycScalar {
        &self.data.qdim[i]
    }

    pub fn dual(&self, i: Label) -> Label {
        self.fusion.dual(i)
    }

    pub fn n(&self, i: Label, j: Label, k: Label) -> u32 {
        self.fusion.n(i, j, k)
    }

    /// `(Σ θ_i d_i², Σ θ_i⁻¹ d_i²)` over one factor.
    pub(crate) fn raw_gauss_sums(&self, f: usize) -> (CycScalar, CycScalar) {
        let mut plus = CycScalar::zero();
        let mut minus = CycScalar::zero();
        for &i in &self.factors[f].members {
            let d2 = self.qdim(i) * self.qdim(i);
            let t = self.twist(i);
            plus = &plus + &(t * &d2);
            minus = &minus + &(&t.inv().expect("twists are nonzero") * &d2);
        }
        (plus, minus)
    }

    /// The charge-conjugation permutation matrix `C_{ij} = δ_{j, dual(i)}`.
    pub fn charge_conjugation(&self) -> CycMatrix {
        CycMatrix::permutation(self.fusion.duals())
    }

    /// Whether every label is its own dual.
    pub fn is_self_dual(&self) -> bool {
        (0..self.rank()).all(|i| self.dual(i) == i)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "unit {} members {{{}}}", self.unit, m.join(", "))
    }
}

/// Fusion data and modular datum of `a ⊕ b`, with `b`'s labels shifted by `a.rank()`.
pub fn direct_sum(a: &Category, b: &Category) -> (FusionData, ModularDatum) {
    let ra = a.rank();
    let rank = ra + b.rank();
    let units: Vec<Label> = a
        .fusion()
        .units()
        .iter()
        .copied()
        .chain(b.fusion().units().iter().map(|u| u + ra))
        .collect();
    let dual: Vec<Label> = (0..ra)
        .map(|i| a.dual(i))
        .chain((0..b.rank()).map(|i| b.dual(i) + ra))
        .collect();
    let entries: Vec<_> = a
        .fusion()
        .entries()
        .chain(
            b.fusion()
                .entries()
                .map(|(i, j, k, m)| (i + ra, j + ra, k + ra, m)),
        )
        .collect();
    let fusion = FusionData::new(rank, units, dual, entries).expect("labels shifted in range");
    let twist = a.data.twist.iter().chain(&b.data.twist).cloned().collect();
    let qdim = a.data.qdim.iter().chain(&b.data.qdim).cloned().collect();
    (
        fusion,
        ModularDatum {
            twist,
            qdim,
            s_tilde: None,
        },
    )
}
