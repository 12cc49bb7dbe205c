mod common;

use common::{
    coords, curve_intersections, pair, stage1_tuple_attains, stage1_tuple_feasible,
    PRINTED_STAGE1_M1,
};
use fpp_quotients::exactmath::{int, rat, to_i64, Rational};
use fpp_quotients::exclusion::{
    build_system, derive_bounds, enumerate_stage1, full_verdict, quadratic_test, CurveCandidate,
    Stage1Tuple,
};
use fpp_quotients::lattice::{reconstruct_picard_lattice, Order7Space};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sq(x: Rational) -> Rational {
    &x * &x
}

fn chain_a_square(a2: i64, a3: i64) -> Rational {
    -int(2) * sq(int(a2) - rat(a3, 2)) - rat(5, 2) * int(a3 * a3)
}

fn chain_square(x1: i64, x2: i64, x3: i64) -> Rational {
    -int(2) * sq(int(x1) - rat(x2, 2))
        - rat(3, 2) * sq(int(x2) - rat(2 * x3, 3))
        - rat(7, 3) * int(x3 * x3)
}

#[test]
fn stage1_matches_printed_list() {
    let got: Vec<[i64; 4]> = enumerate_stage1(1)
        .unwrap()
        .iter()
        .map(Stage1Tuple::as_array)
        .collect();
    assert_eq!(got, PRINTED_STAGE1_M1.to_vec());
}

#[test]
fn quadratic_test_rejects_every_tuple() {
    for m in [1, 2] {
        let v = full_verdict(m).unwrap();
        for t in &v.stage1 {
            assert!(!quadratic_test(m, t), "m = {m}, {t}");
        }
        assert!(v.survivors.is_empty());
    }
}

#[test]
fn infeasibility_oracle_confirms_both_cases() {
    for m in [1, 2] {
        let list = enumerate_stage1(m).unwrap();
        for t in &list {
            assert!(!stage1_tuple_feasible(m, t.as_array()), "m = {m}, {t}");
        }
    }
}

#[test]
fn oracle_is_not_vacuous() {
    // Over (0,0,0,−1) with m = 1 the interior c = (−1,−1) is valid.
    let x = coords(1, 0, [0, 0], [0, 0, 0], [-1, -1, -1]);
    assert!(curve_intersections(&x).iter().all(|&v| v >= 0));
    assert!(stage1_tuple_attains(1, [0, 0, 0, -1], pair(&x, &x)));
}

#[test]
fn picard_gram_matches_printed_reference() {
    let rec = reconstruct_picard_lattice(&Order7Space::new().unwrap()).unwrap();
    for i in 0..10 {
        for j in 0..10 {
            assert_eq!(
                rec.lattice.gram()[(i, j)],
                common::PRINTED_PICARD[i][j].into()
            );
        }
    }
}

#[test]
fn self_intersection_identity_on_random_candidates() {
    let gram = reconstruct_picard_lattice(&Order7Space::new().unwrap())
        .unwrap()
        .lattice
        .gram()
        .clone();
    let mut rng = StdRng::seed_from_u64(0x7a3);
    for _ in 0..10_000 {
        let m = rng.gen_range(1..=2);
        let d = rng.gen_range(-30..=70);
        let a2 = rng.gen_range(-40..=40);
        let a3 = rng.gen_range(-40..=40);
        let b = [
            rng.gen_range(-60..=60),
            rng.gen_range(-60..=60),
            rng.gen_range(-60..=60),
        ];
        let c1 = rng.gen_range(-90..=90);
        let c2 = rng.gen_range(-90..=90);
        // Impose E·K_Y = −1.
        let c3 = 3 * d - 1 - a3 - b[2];
        let cand = CurveCandidate::from_unknowns(m, [d, a2, a3, b[0], b[1], b[2], c1, c2, c3]);
        let via_gram = int(cand.self_intersection(&gram));
        let x = coords(m, d, [a2, a3], b, [c1, c2, c3]);
        assert_eq!(via_gram, int(pair(&x, &x)));
        let closed =
            int(-2 * m * m - 3 * d * d - 2 * d + (4 * m + 2 * d) * b[2] + (6 * d - 2 * m) * c3)
                + chain_a_square(a2, a3)
                + chain_square(b[0], b[1], b[2])
                + chain_square(c1, c2, c3);
        assert_eq!(via_gram, closed);
    }
}

#[test]
fn completing_the_square_on_random_points() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10_000 {
        let (a2, a3): (i64, i64) = (rng.gen_range(-500..500), rng.gen_range(-500..500));
        let direct = int(-2 * a2 * a2 + 2 * a2 * a3 - 3 * a3 * a3);
        assert_eq!(direct, chain_a_square(a2, a3));
        let (x1, x2, x3): (i64, i64, i64) = (
            rng.gen_range(-500..500),
            rng.gen_range(-500..500),
            rng.gen_range(-500..500),
        );
        let direct = int(-2 * x1 * x1 - 2 * x2 * x2 - 3 * x3 * x3 + 2 * x1 * x2 + 2 * x2 * x3);
        assert_eq!(direct, chain_square(x1, x2, x3));
    }
}

#[test]
fn derived_bounds_are_sound() {
    let mut rng = StdRng::seed_from_u64(5);
    for m in [1, 2] {
        let sys = build_system(m).unwrap();
        let bounds = derive_bounds(&sys).unwrap();
        // Integer copies of the forms keep the sampling loop cheap.
        let forms: Vec<(String, i64, [i64; 9])> = sys
            .inequalities
            .iter()
            .map(|(n, f)| {
                let k = to_i64(&f.constant).unwrap();
                (
                    n.clone(),
                    k,
                    std::array::from_fn(|i| to_i64(&f.coeffs[i]).unwrap()),
                )
            })
            .collect();
        let eval = |name: &str, x: &[i64; 9]| {
            let (_, k, c) = forms.iter().find(|(n, _, _)| n == name).unwrap();
            k + c.iter().zip(x).map(|(a, b)| a * b).sum::<i64>()
        };
        let mut hits = [0usize; 3];
        for _ in 0..200_000 {
            let d = rng.gen_range(-20..=90);
            let x = [
                d,
                rng.gen_range(-5..=40),
                rng.gen_range(-5..=40),
                rng.gen_range(-40..=60),
                rng.gen_range(-40..=60),
                rng.gen_range(-40..=60),
                rng.gen_range(-40..=160),
                rng.gen_range(-40..=160),
                rng.gen_range(-40..=160),
            ];
            let chain_ok = |names: [&str; 3]| names.iter().all(|n| eval(n, &x) >= 0);
            if chain_ok(["A1", "A2", "A3"]) {
                hits[0] += 1;
                assert!(x[2] <= bounds.a3.max_at(d).unwrap() && x[2] >= 0 && d >= 0);
            }
            if chain_ok(["B1", "B2", "B3"]) {
                hits[1] += 1;
                assert!(x[5] <= bounds.b3.max_at(d).unwrap());
            }
            if chain_ok(["C1", "C2", "C3"]) {
                hits[2] += 1;
                assert!(x[8] <= bounds.c3.max_at(d).unwrap());
            }
        }
        assert!(hits.iter().all(|&h| h > 100), "{hits:?}");
    }
}

#[test]
fn d_outside_range_admits_no_stage1_point() {
    for m in [1, 2] {
        let b = derive_bounds(&build_system(m).unwrap()).unwrap();
        let d = b.d_max + 1;
        let most = b.a3.max_at(d).unwrap() + b.b3.max_at(d).unwrap() + b.c3.max_at(d).unwrap();
        assert!(most < 3 * d - 1);
        assert!(b.a3.max_at(-1).unwrap() < b.a3.min_at(-1).unwrap());
    }
}
