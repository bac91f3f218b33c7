use num_bigint::BigInt;
use num_rational::BigRational;
use relthue::oracle::in_box;
use relthue::{
    brute_force, solve_abs, solve_relative, BinaryForm, IntegerPair, QuadraticField, RingElement,
};
use std::collections::BTreeSet;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

type Quad = [BigInt; 4];

fn quad(x: &RingElement, y: &RingElement) -> Quad {
    [x.u1.clone(), x.u2.clone(), y.u1.clone(), y.u2.clone()]
}

/// `|s y1 + (s-1) y2| <= h` and `|y2| <= h`: what the reducer searches.
fn reachable(field: &QuadraticField, v: &Quad, h: i64) -> bool {
    let s = BigInt::from(field.s());
    let b: BigInt = &s * &v[2] + (&s - 1) * &v[3];
    let h = BigInt::from(h);
    b.magnitude() <= h.magnitude() && v[3].magnitude() <= h.magnitude()
}

#[test]
fn reducer_against_oracle_with_equal_heights() {
    let cases: [(&[i64], u64, i64); 4] = [
        (&[0, -4, 0, 1], 3, 1),
        (&[0, -4, 0, 1], 1, 2),
        (&[-1, -3, 0, 1], 7, 5),
        (&[0, -2, -1, 1], 2, 3),
    ];
    for (coeffs, m, k) in cases {
        let form = BinaryForm::from_i64(coeffs);
        let field = QuadraticField::new(m).unwrap();
        let h = 5;
        let solved = solve_relative(
            &field,
            &form,
            &q(k),
            &BigRational::new(1.into(), 2.into()),
            h as u64,
        )
        .unwrap();
        let oracle: BTreeSet<Quad> = brute_force(&field, &form, &q(k), h as u64)
            .solutions
            .iter()
            .map(|s| quad(&s.x, &s.y))
            .collect();
        let in_box_solved: BTreeSet<Quad> = solved
            .solutions
            .iter()
            .filter(|s| in_box(&s.x, &s.y, h as u64))
            .map(|s| quad(&s.x, &s.y))
            .collect();
        // nothing spurious, nothing missed within reach
        assert!(in_box_solved.is_subset(&oracle), "{coeffs:?} m={m}");
        for v in oracle.iter().filter(|v| reachable(&field, v, h)) {
            assert!(in_box_solved.contains(v), "{coeffs:?} m={m} missing {v:?}");
        }
        assert!(solved.violations().is_empty());
    }
}

#[test]
fn absolute_solver_large_bound() {
    let form = BinaryForm::from_i64(&[0, -2, -1, 1]);
    let height = 50i64;
    let kprime = 100i64;
    let got: Vec<IntegerPair> = solve_abs(&form, &q(kprime), height as u64)
        .unwrap()
        .pairs()
        .cloned()
        .collect();
    // roots -1, 0, 2: every solution has |a| <= 2 |b| + K'
    let mut want = Vec::new();
    for b in -height..=height {
        for a in -(2 * b.abs() + kprime)..=(2 * b.abs() + kprime) {
            let v = form.evaluate_int(&IntegerPair::new(a, b));
            if v.magnitude() <= BigInt::from(kprime).magnitude() {
                want.push(IntegerPair::new(a, b));
            }
        }
    }
    assert_eq!(got, want);
}
