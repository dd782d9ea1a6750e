use super::*;
use crate::cyclo::{parse_scalar, CycMatrix, RootOfUnity};
use crate::format::{builtin, BUILTIN_NAMES};

fn cat(name: &str) -> Category {
    builtin(name).unwrap().to_category().unwrap()
}

fn z(text: &str, n: u32) -> CycScalar {
    parse_scalar(text, n).unwrap()
}

fn int(n: i64) -> CycScalar {
    CycScalar::from_int(n)
}

#[test]
fn gauss_sum_table() {
    let g = gauss_sums(&cat("trivial"), 0);
    assert_eq!(
        (g.p_plus, g.p_minus, g.anomaly, g.global_dim),
        (int(1), int(1), int(1), int(1))
    );
    let g = gauss_sums(&cat("semion"), 0);
    assert_eq!(g.p_plus, z("1 + z", 4));
    assert_eq!(g.p_minus, z("1 - z", 4));
    assert_eq!(g.anomaly, z("z", 4));
    assert_eq!(g.global_dim, int(2));
    let g = gauss_sums(&cat("toric_code"), 0);
    assert_eq!(
        (g.p_plus, g.p_minus, g.anomaly, g.global_dim),
        (int(2), int(2), int(1), int(4))
    );
}

#[test]
fn fibonacci_without_vacuum_channel_is_not_rigid() {
    let mut raw = builtin("fibonacci").unwrap();
    raw.fusion.retain(|&(i, j, k, _)| (i, j, k) != (1, 1, 0));
    let err = raw.to_category().unwrap_err();
    assert_eq!(
        err,
        MtcError::Invalid(ValidationError::Rigidity { label: 1 })
    );
    assert_eq!(err.to_string(), "rigidity-failure(1)");
}

#[test]
fn degenerate_twist_is_not_modular() {
    let mut raw = builtin("semion").unwrap();
    raw.twist[1] = CycScalar::one();
    let c = raw.to_category().unwrap();
    assert_eq!(
        s_tilde_of(&c).unwrap(),
        CycMatrix::from_fn(2, 2, |_, _| int(1))
    );
    let report = verify_modular(&c);
    assert!(!report.modular);
    assert_eq!(
        report.witness,
        Some(ModularityWitness::KillingIdentity { unit: 0, label: 1 })
    );
    assert!(matches!(admissibility(&c), Err(MtcError::NotModular(_))));
}

#[test]
fn s_tilde_examples() {
    assert_eq!(s_tilde_of(&cat("trivial")).unwrap(), CycMatrix::identity(1));
    let semion = CycMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(-1)]]).unwrap();
    assert_eq!(s_tilde_of(&cat("semion")).unwrap(), semion);
    let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    let toric = CycMatrix::from_fn(4, 4, |i, j| int(signs[i][j]));
    assert_eq!(s_tilde_of(&cat("toric_code")).unwrap(), toric);
}

#[test]
fn verlinde_reproduces_fusion() {
    for name in BUILTIN_NAMES {
        let c = cat(name);
        let table: Vec<u32> = {
            let r = c.rank();
            (0..r * r * r)
                .map(|idx| c.n(idx / (r * r), (idx / r) % r, idx % r))
                .collect()
        };
        assert_eq!(verlinde_fusion(&c).unwrap(), table, "{name}");
    }
}

#[test]
fn killing_identity_matrix_form() {
    for name in BUILTIN_NAMES {
        let c = cat(name);
        let s = s_tilde_of(&c).unwrap();
        let g = gauss_sums(&c, 0);
        let lhs = s.mul(&s).unwrap();
        assert_eq!(lhs, c.charge_conjugation().scale(&g.global_dim), "{name}");
    }
}

#[test]
fn supplied_s_matrix_is_checked() {
    let mut raw = builtin("semion").unwrap();
    raw.smatrix = Some(vec![int(1), int(1), int(2), int(-1)]);
    assert_eq!(
        raw.to_category().unwrap_err(),
        MtcError::Invalid(ValidationError::STildeAsymmetric { i: 1, j: 0 })
    );
}

#[test]
fn choose_p_examples() {
    let t = cat("trivial");
    assert_eq!(choose_p(&t, 0, 0).unwrap(), int(1));
    assert_eq!(choose_p(&t, 0, 1).unwrap(), int(-1));
    assert_eq!(choose_p(&cat("toric_code"), 0, 0).unwrap(), int(2));
    let s = cat("semion");
    for idx in 0..2 {
        let p = choose_p(&s, 0, idx).unwrap();
        assert_eq!(&p * &p, int(2));
    }
    assert!(matches!(
        choose_p(&s, 0, 2),
        Err(MtcError::RootIndexOutOfRange { index: 2, count: 2 })
    ));
}

#[test]
fn admissibility_examples() {
    let r = admissibility(&cat("trivial")).unwrap();
    assert!(r.oriented_admissible() && r.signature_admissible());
    let roots: Vec<CycScalar> = r.factors[0].csig.iter().map(|c| c.root.value()).collect();
    assert_eq!(roots, vec![int(1), int(-1)]);

    let r = admissibility(&cat("semion")).unwrap();
    assert!(!r.oriented_admissible());
    assert_eq!(r.factors[0].anomaly, RootOfUnity::new(4, 1));
    let sig = r.signature.unwrap();
    let roots: Vec<RootOfUnity> = sig.iter().map(|s| s.root).collect();
    assert_eq!(roots, vec![RootOfUnity::new(8, 1), RootOfUnity::new(8, 5)]);
    assert_eq!(r.factors[0].p1.len(), 6);
    for choice in &r.factors[0].p1 {
        assert_eq!(choice.root.value().pow(6).unwrap(), z("z", 4));
        assert_eq!(24 % choice.root.order(), 0);
    }

    let r = admissibility(&cat("toric_code")).unwrap();
    assert_eq!(r.oriented, Some(vec![int(2)]));

    let fib = admissibility(&cat("fibonacci")).unwrap();
    assert!(!fib.oriented_admissible());
}

#[test]
fn direct_sums_split_into_factors() {
    let semion = cat("semion");
    let bar = cat("semion-bar");
    let (f, d) = direct_sum(&semion, &semion);
    let twice = validate(f, d).unwrap();
    assert_eq!(twice.factors().len(), 2);
    assert!(admissibility(&twice).unwrap().signature_admissible());

    let (f, d) = direct_sum(&semion, &bar);
    let mixed = validate(f, d).unwrap();
    let report = admissibility(&mixed).unwrap();
    assert!(!report.signature_admissible());
    assert!(!report.oriented_admissible());
    assert_eq!(report.factors[1].unit, 2);
    assert!(verify_modular(&mixed).modular);
}

#[test]
fn unit_orthogonality_and_twist_checks() {
    let mut raw = builtin("toric_code").unwrap();
    raw.twist[1] = int(-1);
    raw.twist[2] = int(-1);
    raw.to_category().unwrap();
    raw.twist[0] = int(2);
    assert_eq!(
        raw.to_category().unwrap_err(),
        MtcError::Invalid(ValidationError::TwistUnit { unit: 0 })
    );
    let mut raw = builtin("fibonacci").unwrap();
    raw.dim[1] = int(2);
    assert!(matches!(
        raw.to_category(),
        Err(MtcError::Invalid(ValidationError::DimHomomorphism { .. }))
    ));
}
