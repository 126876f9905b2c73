//! Property tests for the exact-arithmetic layer.

use proptest::prelude::*;

use hms_core::rational::{
    ext_gcd, format_rat, fract, parse_rat, rat, RatPoint,
};
use hms_core::torus::TorusLine;

fn small_rat() -> impl Strategy<Value = (i128, i128)> {
    (-500i128..=500, 1i128..=120)
}

proptest! {
    #[test]
    fn format_parse_round_trip((n, d) in small_rat()) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
    }

    #[test]
    fn fract_is_in_the_unit_interval((n, d) in small_rat()) {
        let f = fract(&rat(n, d));
        prop_assert!(f >= rat(0, 1) && f < rat(1, 1));
        // And differs from the input by an integer.
        let diff = rat(n, d) - f;
        prop_assert_eq!(diff.denom(), &1);
    }

    #[test]
    fn bezout_identity(a in -2000i128..=2000, b in -2000i128..=2000) {
        let (g, s, t) = ext_gcd(a, b);
        prop_assert_eq!(s * a + t * b, g);
        prop_assert!(g >= 0);
        if a != 0 || b != 0 {
            prop_assert_eq!(a.rem_euclid(g.max(1)), 0);
            prop_assert_eq!(b.rem_euclid(g.max(1)), 0);
        }
    }

    #[test]
    fn point_string_round_trip((nx, dx) in small_rat(), (ny, dy) in small_rat()) {
        let p = RatPoint::new(rat(nx, dx), rat(ny, dy));
        let back: RatPoint = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn line_canonicalization_is_idempotent(
        a in -7i64..=7,
        b in -7i64..=7,
        (n, d) in small_rat(),
    ) {
        prop_assume!((a, b) != (0, 0) && num_integer::gcd(a.abs(), b.abs()) == 1);
        let line = TorusLine::new(a, b, rat(n, d)).unwrap();
        let (ca, cb) = line.class();
        prop_assert!(cb > 0 || (cb == 0 && ca == 1));
        let again = TorusLine::new(ca, cb, *line.offset()).unwrap();
        prop_assert_eq!(&again, &line);
        // The defining equation is preserved: the base point satisfies it.
        prop_assert!(line.contains(&line.base_point()));
    }
}
