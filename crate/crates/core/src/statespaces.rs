//! Dimensions of the state spaces assigned to surfaces.
//!
//! The production path contracts fusion matrices: a surface of genus `g` with boundary
//! labels `a₁…aₙ` has dimension `Σ_u e_uᵀ N_{a₁}⋯N_{aₙ} Kᵍ e_u`, with the handle operator
//! `K = Σ_i N_i N_{i*}`. The brute-force oracle enumerates labelings of a caterpillar
//! pants decomposition instead.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cyclo::{CycScalar, CycloError};
use crate::mtc::{intmat, Category, Label};
use crate::par::Execution;

/// Largest number of labelings the brute-force oracle will enumerate.
pub const BRUTEFORCE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StateSpaceError {
    #[error("invalid label {label} (rank {rank})")]
    InvalidLabel { label: Label, rank: usize },
    #[error("too-large-instance: {rank}^{edges} labelings exceed the limit of {BRUTEFORCE_LIMIT}")]
    TooLargeInstance { rank: usize, edges: u32 },
}

/// A closed surface of genus `genus` with one boundary circle per label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub boundary: Vec<Label>,
}

impl SurfaceSpec {
    pub fn new(genus: u32, boundary: Vec<Label>) -> Self {
        SurfaceSpec { genus, boundary }
    }

    pub fn closed(genus: u32) -> Self {
        SurfaceSpec::new(genus, Vec::new())
    }
}

fn check_labels(c: &Category, labels: &[Label]) -> Result<(), StateSpaceError> {
    match labels.iter().find(|&&l| l >= c.rank()) {
        Some(&label) => Err(StateSpaceError::InvalidLabel {
            label,
            rank: c.rank(),
        }),
        None => Ok(()),
    }
}

/// `v ↦ v · N_a`, i.e. `v'_k = Σ_j v_j N_{ja}^k`.
fn fuse_vector(c: &Category, v: &[BigUint], a: Label) -> Vec<BigUint> {
    let r = c.rank();
    let mut out = vec![BigUint::zero(); r];
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (k, o) in out.iter_mut().enumerate() {
            let m = c.n(j, a, k);
            if m != 0 {
                *o += x * m;
            }
        }
    }
    out
}

/// `dim Hom(S_target, S_{b₁} ⊗ ⋯ ⊗ S_{bₙ})`; the empty product is the unit object.
pub fn hom_dim(
    c: &Category,
    target: Label,
    tensorands: &[Label],
) -> Result<BigUint, StateSpaceError> {
    check_labels(c, &[target])?;
    check_labels(c, tensorands)?;
    let Some((&first, rest)) = tensorands.split_first() else {
        return Ok(BigUint::from(c.fusion().is_unit(target) as u32));
    };
    let mut v = vec![BigUint::zero(); c.rank()];
    v[first] = BigUint::one();
    for &b in rest {
        v = fuse_vector(c, &v, b);
    }
    Ok(v.swap_remove(target))
}

/// The handle operator `K = Σ_i N_i N_{i*}`.
pub fn handle_operator(c: &Category) -> Vec<Vec<u64>> {
    let r = c.rank();
    let mut k = vec![vec![0u64; r]; r];
    for i in 0..r {
        let prod = intmat::mul(
            &c.fusion().fusion_matrix(i),
            &c.fusion().fusion_matrix(c.dual(i)),
        );
        intmat::add_assign(&mut k, &prod, 1);
    }
    k
}

/// Dimension of the state space of `spec`.
pub fn surface_dim(c: &Category, spec: &SurfaceSpec) -> Result<BigUint, StateSpaceError> {
    check_labels(c, &spec.boundary)?;
    let k = (spec.genus > 0).then(|| handle_operator(c));
    let r = c.rank();
    let mut total = BigUint::zero();
    for &u in c.fusion().units() {
        let mut v = vec![BigUint::zero(); r];
        v[u] = BigUint::one();
        for &a in &spec.boundary {
            v = fuse_vector(c, &v, a);
        }
        if let Some(k) = &k {
            for _ in 0..spec.genus {
                let mut next = vec![BigUint::zero(); r];
                for (j, x) in v.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (n, o) in next.iter_mut().enumerate() {
                        if k[j][n] != 0 {
                            *o += x * k[j][n];
                        }
                    }
                }
                v = next;
            }
        }
        total += &v[u];
    }
    Ok(total)
}

/// Free edges in the caterpillar decomposition: a loop and a stem per handle, plus the
/// interior spine edges.
fn free_edges(spec: &SurfaceSpec) -> u32 {
    let leaves = spec.boundary.len() as u32 + spec.genus;
    2 * spec.genus + leaves.saturating_sub(2)
}

/// Brute-force oracle for [`surface_dim`] using the default execution strategy.
pub fn surface_dim_bruteforce(
    c: &Category,
    spec: &SurfaceSpec,
) -> Result<BigUint, StateSpaceError> {
    surface_dim_bruteforce_with(c, spec, Execution::default())
}

/// Enumerates labelings of a fixed pants decomposition and sums the products of
/// fusion multiplicities.
///
/// Each handle is a tadpole: a loop labelled `i` fused onto a stem `y` with weight
/// `N_{i i*}^y`. The leaves (boundary labels, then stems) hang off a spine
/// `c₁ = ℓ₁, c_k ∈ c_{k−1} ⊗ ℓ_k`, closed off by `Σ_u N_{c_{L−1} ℓ_L}^u`.
pub fn surface_dim_bruteforce_with(
    c: &Category,
    spec: &SurfaceSpec,
    exec: Execution,
) -> Result<BigUint, StateSpaceError> {
    check_labels(c, &spec.boundary)?;
    let edges = free_edges(spec);
    let count = (c.rank() as u128).checked_pow(edges);
    if count.is_none_or(|n| n > BRUTEFORCE_LIMIT) {
        return Err(StateSpaceError::TooLargeInstance {
            rank: c.rank(),
            edges,
        });
    }
    let oracle = Oracle { c, spec };
    let total: u128 = if spec.genus == 0 {
        oracle.spine(&spec.boundary, exec)
    } else {
        // the first loop label is the parallel split
        exec.map_range(c.rank(), |i| oracle.handles(vec![i], Vec::new(), 1))
            .into_iter()
            .sum()
    };
    Ok(BigUint::from(total))
}

struct Oracle<'a> {
    c: &'a Category,
    spec: &'a SurfaceSpec,
}

impl Oracle<'_> {
    /// Extends a partial assignment of handle loops and stems. `loops` may be one
    /// longer than `stems` (its stem is chosen next).
    fn handles(&self, mut loops: Vec<Label>, mut stems: Vec<Label>, weight: u128) -> u128 {
        let r = self.c.rank();
        if loops.len() > stems.len() {
            let i = *loops.last().expect("nonempty");
            let mut sum = 0;
            for y in 0..r {
                let m = self.c.n(i, self.c.dual(i), y) as u128;
                if m != 0 {
                    stems.push(y);
                    sum += self.handles(loops.clone(), stems.clone(), weight * m);
                    stems.pop();
                }
            }
            return sum;
        }
        if stems.len() == self.spec.genus as usize {
            let leaves: Vec<Label> = self.spec.boundary.iter().chain(&stems).copied().collect();
            return weight * self.spine(&leaves, Execution::Sequential);
        }
        let mut sum = 0;
        for i in 0..r {
            loops.push(i);
            sum += self.handles(loops.clone(), stems.clone(), weight);
            loops.pop();
        }
        sum
    }

    fn spine(&self, leaves: &[Label], exec: Execution) -> u128 {
        let units = self.c.fusion().units();
        match leaves {
            [] => units.len() as u128,
            [a] => self.c.fusion().is_unit(*a) as u128,
            [first, ..] => {
                if leaves.len() == 2 || !exec.is_parallel() {
                    return self.chain(leaves, 1, *first, 1);
                }
                exec.map_range(self.c.rank(), |next| {
                    let m = self.c.n(*first, leaves[1], next) as u128;
                    if m == 0 {
                        0
                    } else {
                        self.chain(leaves, 2, next, m)
                    }
                })
                .into_iter()
                .sum()
            }
        }
    }

    /// `current` is `c_k`; leaf `k` is fused next.
    fn chain(&self, leaves: &[Label], k: usize, current: Label, weight: u128) -> u128 {
        let last = leaves.len() - 1;
        if k == last {
            let closing: u128 = self
                .c
                .fusion()
                .units()
                .iter()
                .map(|&u| self.c.n(current, leaves[last], u) as u128)
                .sum();
            return weight * closing;
        }
        let mut sum = 0;
        for next in 0..self.c.rank() {
            let m = self.c.n(current, leaves[k], next) as u128;
            if m != 0 {
                sum += self.chain(leaves, k + 1, next, weight * m);
            }
        }
        sum
    }
}

/// `p^{2g−2} Σ_{i∈[s]} d_i^{2−2g}` over the factor at index `factor`.
pub fn verlinde_count(
    c: &Category,
    factor: usize,
    p: &CycScalar,
    genus: u32,
) -> Result<CycScalar, CycloError> {
    let e = 2 - 2 * genus as i64;
    let mut sum = CycScalar::zero();
    for &i in &c.factors()[factor].members {
        sum = &sum + &c.qdim(i).pow(e)?;
    }
    Ok(&p.pow(-e)? * &sum)
}
