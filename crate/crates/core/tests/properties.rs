use proptest::prelude::*;

use spinetorsion::census::census;
use spinetorsion::io::{parse_spine, serialize_spine};
use spinetorsion::moves::{apply_negative, h_cycle_check, random_walk, MoveKind, WalkOptions};
use spinetorsion::spider::{build_complex, presentation};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn walks_stay_valid(idx in 0usize..46, seed in any::<u64>(), steps in 1usize..5) {
        let s = &census(2)[idx];
        let Ok(w) = random_walk(s, steps, seed, &WalkOptions { h_null_only: false, max_tets: Some(5) }) else { return Ok(()) };
        let mut prev = s.clone();
        for m in &w {
            let t = &m.after;
            prop_assert_eq!(&parse_spine(&serialize_spine(t)).unwrap(), t);
            let delta = t.v() as i64 - prev.v() as i64;
            prop_assert_eq!(delta, if m.kind == MoveKind::Positive { 1 } else { -1 });
            prop_assert_eq!(t.euler_characteristics().0, prev.euler_characteristics().0);
            prop_assert!(build_complex(t).boundaries_compose_to_zero());
            prev = t.clone();
        }
    }

    #[test]
    fn h_null_moves_preserve_h1(idx in 0usize..46, seed in any::<u64>()) {
        let s = &census(2)[idx];
        let Ok(w) = random_walk(s, 1, seed, &WalkOptions { h_null_only: true, max_tets: None }) else { return Ok(()) };
        let m = &w[0];
        prop_assert!(h_cycle_check(m).is_null);
        let a = presentation(&build_complex(&m.before));
        let b = presentation(&build_complex(&m.after));
        prop_assert_eq!(a.describe(), b.describe());
    }

    #[test]
    fn positive_then_negative_returns(idx in 0usize..46, seed in any::<u64>()) {
        let s = &census(2)[idx];
        let Ok(w) = random_walk(s, 1, seed, &WalkOptions::default()) else { return Ok(()) };
        let m = &w[0];
        if m.kind == MoveKind::Positive {
            let central = (0..m.after.e()).find(|&c| !m.edge_map.contains(&Some(c)));
            if let Some(c) = central {
                let back = apply_negative(&m.after, c).unwrap();
                prop_assert_eq!(back.after.canonical_form(), s.canonical_form());
            }
        }
    }
}
