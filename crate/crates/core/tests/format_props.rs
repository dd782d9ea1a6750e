use proptest::prelude::*;

use modular_tqft::format::{builtin, parse_category, parse_category_bytes, z_n, BUILTIN_NAMES};
use modular_tqft::mtc::verify_modular;

fn pointed() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=12)
        .prop_flat_map(|n| (Just(n), 1..2 * n))
        .prop_filter("admissible parameters", |&(n, q)| z_n(n, q).is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pointed_categories_round_trip((n, q) in pointed()) {
        let raw = z_n(n, q).unwrap();
        let text = raw.serialize();
        let parsed = parse_category(&text).unwrap();
        prop_assert_eq!(&parsed, &raw);
        prop_assert_eq!(parsed.serialize(), text);
        let c = parsed.to_category().unwrap();
        prop_assert!(verify_modular(&c).modular);
        prop_assert_eq!(c.rank(), n as usize);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(
        idx in 0..BUILTIN_NAMES.len(),
        noise in prop::collection::vec(prop::sample::select(vec!["", "   ", "# note", "\t# x y z"]), 1..20),
        seed in any::<u64>(),
    ) {
        let raw = builtin(BUILTIN_NAMES[idx]).unwrap();
        let mut lines: Vec<String> = raw.serialize().lines().map(str::to_owned).collect();
        for (k, extra) in noise.iter().enumerate() {
            let at = (seed.rotate_left(k as u32 * 7) as usize) % (lines.len() + 1);
            lines.insert(at, extra.to_string());
        }
        prop_assert_eq!(parse_category(&lines.join("\n")).unwrap(), raw);
    }

    #[test]
    fn arbitrary_bytes_give_positioned_errors(bytes in prop::collection::vec(any::<u8>(), 0..300)) {
        let lines = bytes.split(|&b| b == b'\n').count();
        if let Err(e) = parse_category_bytes(&bytes) {
            prop_assert!(e.line >= 1 && e.column >= 1 && e.line <= lines + 1, "{}", e);
        }
    }

    #[test]
    fn keyword_soup_gives_positioned_errors(
        words in prop::collection::vec(
            prop::sample::select(vec![
                "mtc", "conductor", "rank", "unit", "dual", "fusion", "twist", "dim", "smatrix",
                "0", "1", "2", "->", "z", "z^2", "-1/2*z", "4096", "99999999999", "\n",
            ]),
            0..60,
        )
    ) {
        let text = words.join(" ");
        let lines = text.lines().count().max(1);
        match parse_category(&text) {
            Err(e) => prop_assert!(e.line >= 1 && e.column >= 1 && e.line <= lines + 1, "{}", e),
            Ok(raw) => prop_assert_eq!(parse_category(&raw.serialize()).unwrap(), raw),
        }
    }
}
