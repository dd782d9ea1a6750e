//! Built-in categories.

use num_integer::Integer;

use super::RawCategoryFile;
use crate::cyclo::{parse_scalar, CycScalar};
use crate::mtc::{verify_modular, Label};

/// Largest `N` accepted by the `z_n(N,q)` family.
pub const MAX_ZN_ORDER: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown builtin `{0}`")]
    Unknown(String),
    #[error("z_n({n},{q}): {reason}")]
    BadParameters {
        n: u32,
        q: u32,
        reason: &'static str,
    },
}

/// Names accepted by [`builtin`], in listing order.
pub const BUILTIN_NAMES: &[&str] = &[
    "trivial",
    "semion",
    "semion-bar",
    "toric_code",
    "fibonacci",
    "ising",
    "z_n(3,2)",
    "z_n(4,1)",
    "z_n(5,2)",
];

pub fn builtin_names() -> Vec<String> {
    BUILTIN_NAMES.iter().map(|s| s.to_string()).collect()
}

pub fn builtin(name: &str) -> Result<RawCategoryFile, CatalogError> {
    match name {
        "trivial" => Ok(trivial()),
        "semion" => Ok(semion(false)),
        "semion-bar" => Ok(semion(true)),
        "toric_code" => Ok(toric_code()),
        "fibonacci" => Ok(fibonacci()),
        "ising" => Ok(ising()),
        _ => {
            let (n, q) = parse_zn(name).ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
            z_n(n, q)
        }
    }
}

fn parse_zn(name: &str) -> Option<(u32, u32)> {
    let inner = name.strip_prefix("z_n(")?.strip_suffix(')')?;
    let (n, q) = inner.split_once(',')?;
    Some((n.trim().parse().ok()?, q.trim().parse().ok()?))
}

fn s(text: &str, conductor: u32) -> CycScalar {
    parse_scalar(text, conductor).expect("builtin scalar")
}

fn ones(rank: usize) -> Vec<CycScalar> {
    vec![CycScalar::one(); rank]
}

/// Fusion of a group-like category: `i ⊗ j = op(i, j)`.
fn group_fusion(
    rank: usize,
    op: impl Fn(Label, Label) -> Label,
) -> Vec<(Label, Label, Label, u32)> {
    let mut out = Vec::with_capacity(rank * rank);
    for i in 0..rank {
        for j in 0..rank {
            out.push((i, j, op(i, j), 1));
        }
    }
    out.sort_unstable();
    out
}

fn trivial() -> RawCategoryFile {
    RawCategoryFile {
        name: "trivial".into(),
        conductor: 1,
        rank: 1,
        units: vec![0],
        dual: vec![0],
        fusion: vec![(0, 0, 0, 1)],
        twist: ones(1),
        dim: ones(1),
        smatrix: None,
    }
}

fn semion(bar: bool) -> RawCategoryFile {
    RawCategoryFile {
        name: if bar { "semion-bar" } else { "semion" }.into(),
        conductor: 4,
        rank: 2,
        units: vec![0],
        dual: vec![0, 1],
        fusion: group_fusion(2, |i, j| i ^ j),
        twist: vec![CycScalar::one(), s(if bar { "-z" } else { "z" }, 4)],
        dim: ones(2),
        smatrix: None,
    }
}

/// Labels `0 = 1, 1 = e, 2 = m, 3 = f`.
fn toric_code() -> RawCategoryFile {
    RawCategoryFile {
        name: "toric_code".into(),
        conductor: 1,
        rank: 4,
        units: vec![0],
        dual: vec![0, 1, 2, 3],
        fusion: group_fusion(4, |i, j| i ^ j),
        twist: vec![
            CycScalar::one(),
            CycScalar::one(),
            CycScalar::one(),
            CycScalar::from_int(-1),
        ],
        dim: ones(4),
        smatrix: None,
    }
}

fn fibonacci() -> RawCategoryFile {
    RawCategoryFile {
        name: "fibonacci".into(),
        conductor: 5,
        rank: 2,
        units: vec![0],
        dual: vec![0, 1],
        fusion: vec![
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (1, 0, 1, 1),
            (1, 1, 0, 1),
            (1, 1, 1, 1),
        ],
        twist: vec![CycScalar::one(), s("z^2", 5)],
        dim: vec![CycScalar::one(), s("-z^2 - z^3", 5)],
        smatrix: None,
    }
}

/// Labels `0 = 1, 1 = σ, 2 = ψ`.
fn ising() -> RawCategoryFile {
    RawCategoryFile {
        name: "ising".into(),
        conductor: 16,
        rank: 3,
        units: vec![0],
        dual: vec![0, 1, 2],
        fusion: vec![
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (1, 0, 1, 1),
            (1, 1, 0, 1),
            (1, 1, 2, 1),
            (1, 2, 1, 1),
            (2, 0, 2, 1),
            (2, 1, 1, 1),
            (2, 2, 0, 1),
        ],
        twist: vec![CycScalar::one(), s("z", 16), CycScalar::from_int(-1)],
        dim: vec![CycScalar::one(), s("z^2 + z^14", 16), CycScalar::one()],
        smatrix: None,
    }
}

/// Pointed category on `Z/N` with `θ_a = ζ_{2N}^{q a²}`.
pub fn z_n(n: u32, q: u32) -> Result<RawCategoryFile, CatalogError> {
    let bad = |reason| CatalogError::BadParameters { n, q, reason };
    if !(1..=MAX_ZN_ORDER).contains(&n) {
        return Err(bad("N must be between 1 and 64"));
    }
    if q == 0 || q >= 2 * n {
        return Err(bad("q must satisfy 0 < q < 2N"));
    }
    if !(q * n).is_multiple_of(2) {
        return Err(bad("q·N must be even for the twist to be well defined"));
    }
    let conductor = if q.is_multiple_of(2) { n } else { 2 * n };
    let rank = n as usize;
    let twist = (0..n as u64)
        .map(|a| {
            let e = (q as u64 * a * a) % (2 * n as u64);
            let e = if q.is_multiple_of(2) { e / 2 } else { e };
            CycScalar::zeta(conductor, e as i64).expect("conductor is in range")
        })
        .collect();
    let raw = RawCategoryFile {
        name: format!("z_n({n},{q})"),
        conductor,
        rank,
        units: vec![0],
        dual: (0..rank).map(|a| (rank - a) % rank).collect(),
        fusion: group_fusion(rank, |i, j| (i + j) % rank),
        twist,
        dim: ones(rank),
        smatrix: None,
    };
    let c = raw.to_category().map_err(|_| bad("data fail validation"))?;
    if n.gcd(&q) != 1 || !verify_modular(&c).modular {
        return Err(bad("not modular (gcd(q, N) must be 1)"));
    }
    Ok(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_category;

    #[test]
    fn every_builtin_validates_and_round_trips() {
        for name in BUILTIN_NAMES {
            let raw = builtin(name).unwrap();
            assert_eq!(&raw.name, name);
            let c = raw.to_category().unwrap();
            assert!(verify_modular(&c).modular, "{name}");
            assert_eq!(parse_category(&raw.serialize()).unwrap(), raw, "{name}");
        }
    }

    #[test]
    fn z_n_parameters() {
        assert_eq!(
            builtin("z_n(2,1)").unwrap().twist,
            builtin("semion").unwrap().twist
        );
        assert!(matches!(
            builtin("z_n(3,1)"),
            Err(CatalogError::BadParameters { .. })
        ));
        assert!(matches!(
            builtin("z_n(4,2)"),
            Err(CatalogError::BadParameters { .. })
        ));
        assert!(matches!(builtin("nope"), Err(CatalogError::Unknown(_))));
    }
}
