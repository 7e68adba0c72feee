use proptest::prelude::*;
use wallkit::chern::line_bundle;
use wallkit::rational::{int, q};
use wallkit::svg::Figure;
use wallkit::{
    euler_char, euler_pairing, numerical_wall, q_tilt, PathSpec, ChernCharacter, NumericalWall, Rational, Side,
    TiltWallOptions, TruncatedChern, WallReportJson,
};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 1000,
        ..ProptestConfig::default()
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn chern() -> impl Strategy<Value = ChernCharacter> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| ChernCharacter::new(a, b, c, d))
}

fn truncated() -> impl Strategy<Value = TruncatedChern> {
    (rational(), rational(), rational()).prop_map(|(a, b, c)| TruncatedChern::new(a, b, c))
}

/// Integral classes that come from sheaves: `ch2 - ch1^2/2` an integer.
fn lattice_class() -> impl Strategy<Value = ChernCharacter> {
    (1i64..=2, -3i64..=3, -6i64..=3, -10i64..=10).prop_map(|(r, c, n, e)| {
        let d = q(c * c, 2) + int(n);
        ChernCharacter::new(int(r), int(c), d, q(e, 6))
    })
}

/// Integer combinations of `O, O(1), O(2), O(3)`: every integral class.
fn integral_class() -> impl Strategy<Value = ChernCharacter> {
    proptest::array::uniform4(-5i64..=5).prop_map(|a| {
        (0..4).fold(ChernCharacter::zero(), |acc, k| acc + a[k] * line_bundle(k as i64))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn twist_is_a_group_action(v in chern(), a in rational(), b in rational()) {
        prop_assert_eq!(v.twist(&a).twist(&b), v.twist(&(&a + &b)));
        prop_assert_eq!(v.twist(&int(0)), v.clone());
        prop_assert_eq!(v.twist(&a).twist(&-&a), v);
    }

    #[test]
    fn integer_twist_is_tensoring(v in chern(), n in -6i64..=6) {
        prop_assert_eq!(v.twist(&int(n)), v.product(&line_bundle(-n)));
    }

    #[test]
    fn q_tilt_is_twist_invariant(v in chern(), b in rational()) {
        prop_assert_eq!(q_tilt(&v.twist(&b)), q_tilt(&v));
    }

    #[test]
    fn dual_is_an_involution(v in chern(), b in rational()) {
        prop_assert_eq!(v.dual().dual(), v.clone());
        // Dualizing flips the twist.
        prop_assert_eq!(v.twist(&b).dual(), v.dual().twist(&-&b));
    }

    #[test]
    fn pairing_is_integral(v in integral_class(), w in integral_class()) {
        prop_assert!(euler_pairing(&v, &w).is_integer());
        prop_assert!(v.is_integral());
    }

    #[test]
    fn serre_duality(v in integral_class(), w in integral_class()) {
        // chi(E, F) = -chi(F, E(-4)) on a threefold with canonical class O(-4).
        let v_twisted = v.product(&line_bundle(-4));
        prop_assert_eq!(euler_pairing(&v, &w), -euler_pairing(&w, &v_twisted));
        prop_assert_eq!(euler_pairing(&line_bundle(0), &v), euler_char(&v));
    }

    #[test]
    fn chern_json_round_trip(v in chern()) {
        let text = serde_json::to_string(&v).unwrap();
        let back: ChernCharacter = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn wall_json_round_trip(v in truncated(), w in truncated()) {
        let wall = numerical_wall(&v, &w);
        let text = serde_json::to_string(&wall).unwrap();
        let back: NumericalWall = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, wall);
    }

    #[test]
    fn wall_depends_on_w_modulo_v(v in truncated(), w in truncated(), t in rational()) {
        let shifted = w.clone() + TruncatedChern::new(&t * &v.ch[0], &t * &v.ch[1], &t * &v.ch[2]);
        prop_assert!(numerical_wall(&v, &w).same_locus(&numerical_wall(&v, &shifted)));
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn wall_report_json_round_trip(v in lattice_class(), right in any::<bool>()) {
        let side = if right { Side::Right } else { Side::Left };
        let options = TiltWallOptions { side: Some(side), r_max: None };
        let report = WallReportJson::compute(&v, &options).unwrap();
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: WallReportJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
        prop_assert_eq!(back, report);
    }

    #[test]
    fn svg_is_deterministic(v in lattice_class(), ws in proptest::collection::vec(truncated(), 0..6), eps in 1i64..=20) {
        let vt = v.truncate();
        let walls: Vec<NumericalWall> = ws.iter().map(|w| numerical_wall(&vt, w)).collect();
        let path = PathSpec::new(v.clone()).with_epsilon(q(eps, 100));
        let figure = || Figure {
            v: &v,
            walls: walls.iter().collect(),
            path: Some(&path),
            crossings: vec![(1.0, -2.0), (2.5, -3.0)],
            alpha_start: Some(0.25),
        };
        let a = figure().render();
        prop_assert_eq!(figure().render(), a.clone());
        prop_assert!(!a.contains("NaN") && !a.contains("inf"));
        prop_assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        prop_assert_eq!(a.matches("class=\"wall\"").count(), walls.iter().filter(|w| w.is_semicircle()).count());
    }
}
