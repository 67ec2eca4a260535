use recsum_core::arith::numeric::parse_decimal;
use recsum_core::arith::q;
use recsum_core::engine::{eval_naive, RecurrentSumSpec, SeqSpec};
use recsum_core::zeta::{
    basel_general, basel_limit_table, basel_partial_sum, bernoulli_partition_identity,
    faulhaber_sum, recurrent_faulhaber, recurrent_zeta_star_even, truncated_zeta_star,
    zeta_even,
};
use recsum_core::{PiPoly, Rational};

fn r(n: u64) -> Rational {
    Rational::from(n)
}

#[test]
fn faulhaber_matches_direct_sums() {
    for p in 0..=12u32 {
        for n in 0..=25u64 {
            let direct: Rational = (1..=n).map(|k| r(k).powu(p)).sum();
            assert_eq!(faulhaber_sum(n, p), direct, "n={n} p={p}");
        }
    }
}

#[test]
fn published_closed_forms() {
    for n in 0..=30u64 {
        let nn = r(n);
        let m2p1 = &nn * (&nn + r(1)) * (&nn + r(2)) * (r(3) * &nn + r(1)) / r(24);
        let m2p2 = &nn
            * (&nn + r(1))
            * (&nn + r(2))
            * (r(2) * &nn + r(1))
            * (r(2) * &nn + r(3))
            * (r(5) * &nn - r(1))
            / r(360);
        let m3p1 = nn.powu(2) * (&nn + r(1)).powu(2) * (&nn + r(2)) * (&nn + r(3)) / r(48);
        assert_eq!(recurrent_faulhaber(2, 1, n), m2p1, "n={n}");
        assert_eq!(recurrent_faulhaber(2, 2, n), m2p2, "n={n}");
        assert_eq!(recurrent_faulhaber(3, 1, n), m3p1, "n={n}");
    }
}

#[test]
fn recurrent_faulhaber_matches_naive() {
    for m in 1..=4 {
        for p in 0..=3u32 {
            for n in 1..=12u64 {
                let spec = RecurrentSumSpec::same(m, 1, n as i64, SeqSpec::power(p as i32)).unwrap();
                assert_eq!(
                    recurrent_faulhaber(m, p, n),
                    eval_naive(&spec).unwrap().value,
                    "m={m} p={p} n={n}"
                );
            }
        }
    }
}

#[test]
fn zeta_table_and_euler_relation() {
    let table = [
        (1, q(1, 6)),
        (2, q(1, 90)),
        (3, q(1, 945)),
        (4, q(1, 9450)),
        (5, q(1, 93555)),
        (6, q(691, 638_512_875)),
    ];
    for (m, c) in table {
        assert_eq!(zeta_even(m).unwrap(), PiPoly::monomial(c, 2 * m as u32));
    }
    assert!(zeta_even(0).is_err());
}

#[test]
fn zeta_star_values() {
    let z = recurrent_zeta_star_even(4, 1).unwrap();
    assert_eq!(z, PiPoly::monomial(q(127, 604_800), 8));
    assert_eq!(z.eval_numeric(10).unwrap(), "1.992466004");
    let z2 = zeta_even(1).unwrap();
    let z4 = zeta_even(2).unwrap();
    let half = q(1, 2);
    assert_eq!(
        recurrent_zeta_star_even(2, 1).unwrap(),
        (&z2 * &z2).scale(&half) + z4.scale(&half)
    );
    assert_eq!(
        recurrent_zeta_star_even(2, 1).unwrap(),
        PiPoly::monomial(q(7, 360), 4)
    );
    for p in 1..=4 {
        assert_eq!(recurrent_zeta_star_even(1, p).unwrap(), zeta_even(p).unwrap());
    }
    for m in 1..=6 {
        for p in 1..=3 {
            let v = recurrent_zeta_star_even(m, p).unwrap();
            let (k, c) = v.as_monomial().expect("single pi term");
            assert_eq!(k as usize, 2 * p * m);
            assert!(c.signum() > 0);
        }
    }
}

#[test]
fn basel_general_matches_zeta_star() {
    for m in 1..=6 {
        assert_eq!(
            basel_general(m).unwrap(),
            recurrent_zeta_star_even(m, 1).unwrap(),
            "m={m}"
        );
    }
    assert_eq!(basel_general(1).unwrap(), zeta_even(1).unwrap());
    assert_eq!(basel_general(2).unwrap(), zeta_even(2).unwrap().scale(&q(7, 4)));
}

#[test]
fn bernoulli_identity_sweep() {
    for m in 1..=8 {
        let report = bernoulli_partition_identity(m, 1).unwrap();
        assert_eq!(report.verdict(), Some(true), "m={m}");
    }
    for m in 1..=6 {
        assert!(bernoulli_partition_identity(m, 1).unwrap().forms_agree);
        let experimental = bernoulli_partition_identity(m, 2).unwrap();
        assert!(experimental.is_experimental());
        assert!(experimental.forms_agree);
    }
}

#[test]
fn truncations_increase_towards_the_limit() {
    let r = truncated_zeta_star(1, 1, 1000).unwrap();
    let err = parse_decimal(&r.abs_error).unwrap();
    assert!(err < q(1, 1000));

    let r = truncated_zeta_star(4, 1, 40).unwrap();
    let target = r.target.approx(40);
    assert!(r.partial < target);

    for (m, p) in [(1, 1), (2, 1), (3, 1), (2, 2)] {
        let target = recurrent_zeta_star_even(m, p).unwrap().approx(40);
        let mut prev = Rational::zero();
        for n in 1..=12 {
            let rep = truncated_zeta_star(m, p, n).unwrap();
            assert!(rep.partial > prev);
            assert!(rep.partial < target);
            let err = parse_decimal(&rep.abs_error).unwrap();
            let exact = &target - &rep.partial;
            assert!((err - &exact).abs() < &exact * q(1, 100_000_000_000_000));
            prev = rep.partial;
        }
    }
}

#[test]
fn basel_values_converge_to_two() {
    let rows = basel_limit_table(8).unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows[0].decimal.starts_with("1.6449"));
    assert!(rows[3].decimal.starts_with("1.992466"));
    let v8 = rows[7].value.approx(40);
    assert!((r(2) - v8) < q(1, 10_000));
    let mut prev_gap = r(2);
    for row in &rows {
        let v = row.value.approx(40);
        assert!(v >= r(1) && v < r(2));
        let gap = r(2) - v;
        assert!(gap < prev_gap);
        prev_gap = gap;
    }
}

#[test]
fn basel_series_diverges() {
    for n in [1usize, 5, 10, 20] {
        let s = basel_partial_sum(n).unwrap().approx(40);
        assert!(s > r(n as u64 + 1), "n={n}");
    }
}
