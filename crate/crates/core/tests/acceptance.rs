//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modular_tqft::cyclo::{parse_scalar, root_of_unity_order, CycMatrix, CycScalar};
use modular_tqft::format::{builtin, parse_category, parse_category_bytes, BUILTIN_NAMES};
use modular_tqft::mcg::{
    chain_link_oracle, decompose_sl2z, lens_invariant, neg_continued_fraction,
    torus_bundle_invariant, torus_rep, MCGWord, Monodromy, TorusRep, SL2Z,
};
use modular_tqft::mtc::{
    choose_p, gauss_sums, s_tilde_of, verify_modular, verlinde_fusion, Category,
};
use modular_tqft::statespaces::{surface_dim, surface_dim_bruteforce, verlinde_count, SurfaceSpec};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cat(name: &str) -> Category {
    builtin(name).unwrap().to_category().unwrap()
}

fn int(n: i64) -> CycScalar {
    CycScalar::from_int(n)
}

const ROOTS: usize = 2;

fn anomaly_free(c: &Category) -> bool {
    (0..c.factors().len()).all(|f| gauss_sums(c, f).anomaly.is_one())
}

fn catalog_soundness() -> Check {
    for name in BUILTIN_NAMES {
        let c = builtin(name)
            .map_err(|e| e.to_string())?
            .to_category()
            .map_err(|e| format!("{name}: {e}"))?;
        ensure!(verify_modular(&c).modular, "{name} is not modular");
        let r = c.rank();
        let table: Vec<u32> = (0..r * r * r)
            .map(|x| c.n(x / (r * r), (x / r) % r, x % r))
            .collect();
        let rebuilt = verlinde_fusion(&c).map_err(|e| e.to_string())?;
        ensure!(rebuilt == table, "{name}: Verlinde table differs");
        for (f, factor) in c.factors().iter().enumerate() {
            let d2: Vec<CycScalar> = factor
                .members
                .iter()
                .map(|&i| c.qdim(i) * c.qdim(i))
                .collect();
            let g = gauss_sums(&c, f);
            ensure!(
                CycScalar::sum(d2.iter()) == g.global_dim,
                "{name}: sum d^2 != p+p-"
            );
        }
    }
    Ok(())
}

fn gauss_table() -> Check {
    let z4 = |s: &str| parse_scalar(s, 4).unwrap();
    let expected = [
        ("trivial", int(1), int(1), int(1)),
        ("semion", z4("1 + z"), z4("1 - z"), z4("z")),
        ("toric_code", int(2), int(2), int(1)),
    ];
    for (name, pp, pm, anomaly) in expected {
        let g = gauss_sums(&cat(name), 0);
        ensure!(
            (g.p_plus, g.p_minus, g.anomaly) == (pp, pm, anomaly),
            "{name}: Gauss sums differ"
        );
    }
    let fib = gauss_sums(&cat("fibonacci"), 0);
    let root = root_of_unity_order(&fib.anomaly)
        .ok_or("Fibonacci anomaly is not recognised as a root of unity")?;
    ensure!(root.value() == fib.anomaly, "root of unity mismatch");
    ensure!(!root.is_one(), "Fibonacci anomaly should be nontrivial");
    Ok(())
}

fn killing_identity() -> Check {
    for name in BUILTIN_NAMES {
        let c = cat(name);
        let s = s_tilde_of(&c).map_err(|e| e.to_string())?;
        let g = gauss_sums(&c, 0);
        let lhs = s.mul(&s).map_err(|e| e.to_string())?;
        ensure!(lhs == c.charge_conjugation().scale(&g.global_dim), "{name}");
    }
    Ok(())
}

fn p_choice() -> Check {
    for name in BUILTIN_NAMES {
        let c = cat(name);
        let g = gauss_sums(&c, 0);
        for idx in 0..ROOTS {
            let p = choose_p(&c, 0, idx).map_err(|e| e.to_string())?;
            ensure!(&p * &p == g.global_dim, "{name} root {idx}: p^2 != p+p-");
        }
        if anomaly_free(&c) {
            ensure!(
                choose_p(&c, 0, 0).unwrap() == g.p_plus,
                "{name}: index 0 is not p+"
            );
        }
    }
    Ok(())
}

fn state_spaces() -> Check {
    for name in BUILTIN_NAMES {
        let c = cat(name);
        let r = c.rank();
        let mut boundaries: Vec<Vec<usize>> = vec![vec![]];
        boundaries.extend((0..r).map(|a| vec![a]));
        boundaries.extend((0..r * r).map(|x| vec![x / r, x % r]));
        for genus in 0..=3 {
            for b in &boundaries {
                let spec = SurfaceSpec::new(genus, b.clone());
                let fast = surface_dim(&c, &spec).map_err(|e| e.to_string())?;
                let slow = surface_dim_bruteforce(&c, &spec).map_err(|e| e.to_string())?;
                ensure!(fast == slow, "{name} g={genus} b={b:?}: {fast} vs {slow}");
            }
        }
        let torus = surface_dim(&c, &SurfaceSpec::closed(1)).unwrap();
        ensure!(torus == BigUint::from(r), "{name}: torus dim {torus}");
        for genus in 0..=4 {
            let dim = surface_dim(&c, &SurfaceSpec::closed(genus)).unwrap();
            for idx in 0..ROOTS {
                let p = choose_p(&c, 0, idx).unwrap();
                let count = verlinde_count(&c, 0, &p, genus).map_err(|e| e.to_string())?;
                let expected = CycScalar::from_rational(Ratio::from_integer(dim.clone().into()));
                ensure!(
                    count == expected,
                    "{name} g={genus}: Verlinde count {count}"
                );
            }
        }
    }
    let fib = surface_dim(&cat("fibonacci"), &SurfaceSpec::closed(2)).unwrap();
    ensure!(fib == BigUint::from(5u32), "Fibonacci genus 2: {fib}");
    Ok(())
}

fn word(rep: &TorusRep<'_>, text: &str) -> CycMatrix {
    rep.evaluate_word(&MCGWord::parse(text).unwrap()).unwrap()
}

fn genus_one_relations() -> Check {
    for name in BUILTIN_NAMES {
        let c = cat(name);
        let g = gauss_sums(&c, 0);
        for idx in 0..ROOTS {
            let rep = torus_rep(&c, &[idx]).map_err(|e| e.to_string())?;
            let s2 = word(&rep, "S S");
            ensure!(s2 == c.charge_conjugation(), "{name} root {idx}: s^2 != C");
            let lambda = rep.factors()[0].projective_scalar();
            ensure!(lambda == &g.p_plus / &rep.factors()[0].p, "lambda");
            ensure!(
                word(&rep, "S T S T S T") == s2.scale(&lambda),
                "{name} root {idx}: (st)^3 != lambda s^2"
            );
            let braid = word(&rep, "T A T") == word(&rep, "A T A");
            if anomaly_free(&c) {
                ensure!(
                    braid == (idx == 0),
                    "{name} root {idx}: braid relation {braid}"
                );
            }
            if *name == "semion" {
                // Neither square root of p+p- equals p-, so the relation fails for both.
                ensure!(
                    rep.factors()[0].p != g.p_minus,
                    "semion root {idx} selects p-"
                );
                ensure!(!braid, "semion root {idx}: braid relation holds");
            }
        }
    }
    Ok(())
}

fn lens_spaces() -> Check {
    for name in BUILTIN_NAMES {
        let c = cat(name);
        for idx in 0..ROOTS {
            let rep = torus_rep(&c, &[idx]).unwrap();
            let ps = [rep.factors()[0].p.clone()];
            for p in 2..=12u64 {
                for q in 1..p as i64 {
                    let Ok(frac) = neg_continued_fraction(p, q) else {
                        continue;
                    };
                    let lens = lens_invariant(&rep, p, q).map_err(|e| e.to_string())?;
                    let oracle =
                        chain_link_oracle(&c, &ps, &frac.terms).map_err(|e| e.to_string())?;
                    ensure!(lens == oracle, "{name} root {idx} L({p},{q})");
                    if *name == "trivial" {
                        // p = -1 at root 1 contributes the sign (-1)^(n+1)
                        let sign = if idx == 0 { 0 } else { frac.terms.len() + 1 };
                        let expected = int(if sign % 2 == 0 { 1 } else { -1 });
                        ensure!(
                            lens.total == expected,
                            "trivial L({p},{q}) = {}",
                            lens.total
                        );
                    }
                }
            }
        }
        if anomaly_free(&c) {
            let rep = torus_rep(&c, &[0]).unwrap();
            let l11 = lens_invariant(&rep, 1, 1).unwrap();
            ensure!(&l11.total == rep.s().get(0, 0), "{name}: L(1,1) != s00");
        }
    }
    for name in ["toric_code", "fibonacci"] {
        let c = cat(name);
        for idx in 0..ROOTS {
            let rep = torus_rep(&c, &[idx]).unwrap();
            for p in 2..=12u64 {
                for q in 1..p as i64 {
                    if q.gcd(&(p as i64)) != 1 {
                        continue;
                    }
                    let base = lens_invariant(&rep, p, q).unwrap();
                    let shifted = lens_invariant(&rep, p, q + p as i64).unwrap();
                    ensure!(shifted == base, "{name} L({p},{q}) vs q+p");
                    let q_inv = (1..p as i64).find(|x| (x * q) % p as i64 == 1).unwrap();
                    let inv = lens_invariant(&rep, p, q_inv).unwrap();
                    ensure!(
                        inv == base,
                        "{name} root {idx}: L({p},{q}) = {} but L({p},{q_inv}) = {}",
                        base.total,
                        inv.total
                    );
                }
            }
        }
    }
    Ok(())
}

/// A uniformly chosen first column with entries in `[-bound, bound]`, completed to
/// `SL(2, ℤ)` with a reduced second column.
fn random_sl2z(rng: &mut ChaCha8Rng, bound: i64) -> SL2Z {
    loop {
        let a = rng.gen_range(-bound..=bound);
        let c = rng.gen_range(-bound..=bound);
        let g = a.extended_gcd(&c);
        if g.gcd != 1 {
            continue;
        }
        // a·x + c·y = 1  ⇒  (a, −y; c, x)
        let (b, d) = (-g.y, g.x);
        if b.abs() <= bound && d.abs() <= bound {
            return SL2Z::new(a, b, c, d).unwrap();
        }
    }
}

fn torus_bundles() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7011);
    for name in BUILTIN_NAMES {
        let c = cat(name);
        if !anomaly_free(&c) {
            continue;
        }
        let rep = torus_rep(&c, &[0]).unwrap();
        let bundle = |m: SL2Z| torus_bundle_invariant(&rep, &Monodromy::Matrix(m), false);
        let t3 = bundle(SL2Z::IDENTITY).map_err(|e| e.to_string())?;
        ensure!(
            t3.value.total == int(c.rank() as i64),
            "{name}: Z(T^3) = {}",
            t3.value.total
        );
        for _ in 0..50 {
            let m = random_sl2z(&mut rng, 6);
            let g = random_sl2z(&mut rng, 6);
            let conj = g
                .checked_mul(&m)
                .and_then(|x| x.checked_mul(&g.inverse()))
                .unwrap();
            let a = bundle(m).map_err(|e| e.to_string())?;
            let b = bundle(conj).map_err(|e| e.to_string())?;
            ensure!(
                a.value == b.value,
                "{name}: trace changes under conjugation of {m} by {g}"
            );
        }
    }
    for _ in 0..200 {
        let m = random_sl2z(&mut rng, 1_000_000);
        let w = decompose_sl2z(&m);
        ensure!(w.to_sl2z() == Some(m), "decomposition of {m} gives {w}");
    }
    Ok(())
}

fn continued_fractions() -> Check {
    for p in 1..=50u64 {
        for q in 1..p.max(2) as i64 {
            if q.gcd(&(p as i64)) != 1 {
                continue;
            }
            let frac = neg_continued_fraction(p, q).map_err(|e| e.to_string())?;
            let q = if p == 1 { 1 } else { q };
            ensure!(frac.value() == Ratio::new(p as i128, q as i128), "{p}/{q}");
            if p > 1 {
                ensure!(
                    frac.terms.iter().all(|&m| m >= 2),
                    "{p}/{q}: {:?}",
                    frac.terms
                );
            }
        }
    }
    Ok(())
}

fn mutate(rng: &mut ChaCha8Rng, seed: &str) -> Vec<u8> {
    const TOKENS: [&str; 12] = [
        "mtc",
        "rank",
        "conductor",
        "dual",
        "fusion",
        "twist",
        "dim",
        "smatrix",
        "->",
        "z^",
        "#",
        "unit",
    ];
    let mut lines: Vec<String> = seed.lines().map(str::to_owned).collect();
    for _ in 0..rng.gen_range(1..4) {
        let n = lines.len();
        match rng.gen_range(0..6) {
            0 if n > 0 => {
                lines.remove(rng.gen_range(0..n));
            }
            1 if n > 0 => {
                let l = lines[rng.gen_range(0..n)].clone();
                lines.insert(rng.gen_range(0..=n), l);
            }
            2 if n > 0 => {
                let i = rng.gen_range(0..n);
                let mut words: Vec<&str> = lines[i].split(' ').collect();
                let k = rng.gen_range(0..=words.len());
                words.insert(k, TOKENS[rng.gen_range(0..TOKENS.len())]);
                lines[i] = words.join(" ");
            }
            3 if n > 0 => {
                let i = rng.gen_range(0..n);
                let digit = char::from(b'0' + rng.gen_range(0..10u8));
                lines[i] = lines[i].replace(
                    |ch: char| ch.is_ascii_digit() && rng.gen_bool(0.3),
                    &digit.to_string(),
                );
            }
            4 => lines.truncate(rng.gen_range(0..=n)),
            _ => {}
        }
    }
    let mut bytes = lines.join("\n").into_bytes();
    if rng.gen_bool(0.2) && !bytes.is_empty() {
        let i = rng.gen_range(0..bytes.len());
        bytes[i] = rng.gen();
    }
    bytes
}

fn parser() -> Check {
    let exports: Vec<String> = BUILTIN_NAMES
        .iter()
        .map(|n| builtin(n).unwrap().serialize())
        .collect();
    for (name, text) in BUILTIN_NAMES.iter().zip(&exports) {
        let parsed = parse_category(text).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            parsed == builtin(name).unwrap(),
            "{name}: parse(export) differs"
        );
        ensure!(&parsed.serialize() == text, "{name}: export is not stable");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xF022);
    let previous = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut outcome = Ok(());
    for round in 0..10_000 {
        let input: Vec<u8> = if round % 10 == 0 {
            (0..rng.gen_range(0..200)).map(|_| rng.gen()).collect()
        } else {
            mutate(&mut rng, &exports[round % exports.len()])
        };
        let lines = input.split(|&b| b == b'\n').count();
        let result = panic::catch_unwind(|| {
            let parsed = parse_category_bytes(&input);
            if let Ok(raw) = &parsed {
                let _ = raw.to_category();
                assert_eq!(parse_category(&raw.serialize()).as_ref(), Ok(raw));
            }
            parsed
        });
        match result {
            Err(_) => {
                outcome = Err(format!(
                    "crash on input {:?}",
                    String::from_utf8_lossy(&input)
                ));
                break;
            }
            Ok(Err(e)) if e.line == 0 || e.column == 0 || e.line > lines + 1 => {
                outcome = Err(format!("unpositioned diagnostic {e}"));
                break;
            }
            Ok(_) => {}
        }
    }
    panic::set_hook(previous);
    outcome
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("catalog soundness", catalog_soundness),
        ("Gauss sums and anomaly", gauss_table),
        ("killing identity", killing_identity),
        ("choice of p", p_choice),
        ("state-space dimensions", state_spaces),
        ("genus-one relations", genus_one_relations),
        ("lens-space invariants", lens_spaces),
        ("torus bundles", torus_bundles),
        ("negative continued fractions", continued_fractions),
        ("category file parser", parser),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_owned()));
        let elapsed = t.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2}s): {why}", n + 1);
            }
        }
    }
    let total = start.elapsed();
    let budget = Duration::from_secs(60);
    if total > budget {
        failed += 1;
        println!(
            "FAIL total time {:.2}s exceeds {}s",
            total.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failed.min(criteria.len()),
        criteria.len(),
        total.as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
