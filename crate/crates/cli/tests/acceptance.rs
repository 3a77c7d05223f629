//! Exit criteria for the whole toolkit. Each criterion prints one
//! `PASS`/`FAIL` line; the test fails if any criterion does.
//!
//! Run with `cargo test -p hodge-volumes-cli --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use hodge_volumes::oracles::{lambda_g_diagonal, validate_anchors, PsiOracle};
use hodge_volumes::rational::{factorial, from_biguint, ratio, Rational};
use hodge_volumes::volumes::asymptotic_ratio;
use hodge_volumes::{
    build_table, double_factorial, reduction_factor, volume_exact, volume_g0_form, Error, PiMultiple,
    DEFAULT_PRECISION_BITS,
};
use hodge_volumes_cli::TableDocument;
use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(elapsed <= limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn criterion_1_small_table() -> Outcome {
    let start = Instant::now();
    let table = build_table(3).map_err(|e| e.to_string())?;
    let expected = [
        (1, 0, ratio(1, 12)),
        (1, 1, ratio(1, 24)),
        (2, 0, ratio(49, 288)),
        (2, 1, ratio(5, 48)),
        (2, 2, ratio(7, 384)),
        (3, 0, ratio(1225, 864)),
    ];
    for (g, k, want) in expected {
        let got = table.lookup(g, k).map_err(|e| e.to_string())?;
        check(got == want, || format!("c[{g}][{k}] = {got}, expected {want}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "small table")?;
    Ok(format!("six entries exact in {elapsed:?}"))
}

fn criterion_2_diagonal_oracle() -> Outcome {
    let start = Instant::now();
    let table = build_table(8).map_err(|e| e.to_string())?;
    for g in 1..=8u32 {
        let predicted = lambda_g_diagonal(g).map_err(|e| e.to_string())?;
        let actual = table.lookup(g.into(), g.into()).map_err(|e| e.to_string())?;
        check(predicted == actual, || format!("g={g}: lambda_g gives {predicted}, table has {actual}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5), "diagonal check")?;
    Ok(format!("c[g][g] = lambda_g prediction for g <= 8 in {elapsed:?}"))
}

fn criterion_3_column_oracle() -> Outcome {
    let start = Instant::now();
    let mut oracle = PsiOracle::new();
    validate_anchors(&mut oracle).map_err(|e| e.to_string())?;
    for (g, idx, want) in [
        (0, vec![0, 0, 0], ratio(1, 1)),
        (1, vec![1], ratio(1, 24)),
        (2, vec![4], ratio(1, 1152)),
        (2, vec![2, 2, 2], ratio(7, 240)),
    ] {
        let got = oracle.evaluate(g, &idx).map_err(|e| e.to_string())?;
        check(got == want, || format!("anchor <{idx:?}>_{g} = {got}"))?;
    }
    let table = build_table(4).map_err(|e| e.to_string())?;
    for g in 2..=4u32 {
        let twos = 3 * g - 1;
        let mut idx = vec![0, 0];
        idx.extend(std::iter::repeat_n(2, twos as usize));
        let dvv = oracle.evaluate(g, &idx).map_err(|e| e.to_string())? / from_biguint(factorial(twos.into()));
        let actual = table.lookup(g.into(), 0).map_err(|e| e.to_string())?;
        check(dvv == actual, || format!("g={g}: DVV gives {dvv}, table has {actual}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "column check")?;
    Ok(format!("anchors pass; c[g][0] = DVV for 2 <= g <= 4 in {elapsed:?}"))
}

fn criterion_4_end_to_end_volume() -> Outcome {
    let start = Instant::now();
    let table = build_table(30).map_err(|e| e.to_string())?;
    let v = volume_exact(&table, 2, 0).map_err(|e| e.to_string())?;
    check(v == PiMultiple::new(ratio(1, 15), 6), || format!("V(2,0) = {v}"))?;
    for g in 2..=30 {
        let a = volume_exact(&table, g, 0).map_err(|e| e.to_string())?;
        let b = volume_g0_form(&table, g).map_err(|e| e.to_string())?;
        check(a == b, || format!("g={g}: {a} != {b}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5), "volume coherence")?;
    Ok(format!("V(2,0) = {v}; both forms agree for g <= 30 in {elapsed:?}"))
}

fn criterion_5_asymptotic_ratio() -> Outcome {
    let start = Instant::now();
    let table = build_table(100).map_err(|e| e.to_string())?;
    let r = asymptotic_ratio(&table, 100, DEFAULT_PRECISION_BITS).map_err(|e| e.to_string())?;
    let rounded = r.to_fixed(4);
    check(rounded == "0.9993", || format!("ratio {} rounds to {rounded}", r.to_fixed(8)))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "g=100 ratio")?;
    Ok(format!(
        "ratio(100) = {} -> {rounded} ({} bits) in {elapsed:?}",
        r.to_fixed(6),
        r.precision_bits()
    ))
}

fn criterion_6_performance() -> Outcome {
    let start = Instant::now();
    let table = build_table(100).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(table.gmax() == 100, || "wrong gmax".into())?;
    within(elapsed, Duration::from_secs(10), "build_table(100)")?;
    Ok(format!("build_table(100) in {elapsed:?}"))
}

fn criterion_7_properties() -> Outcome {
    let large = build_table(100).map_err(|e| e.to_string())?;
    for (g, row) in large.rows() {
        check(row.iter().all(Signed::is_positive), || format!("nonpositive entry in row {g}"))?;
    }

    let half = build_table(50).map_err(|e| e.to_string())?;
    check(large.truncated(50).map_err(|e| e.to_string())? == half, || {
        "gmax=50 and gmax=100 disagree on the common triangle".into()
    })?;

    let col = |g: i64| large.lookup(g, 0).expect("inside table");
    for g in 2..=100i64 {
        let mut rhs = ratio((5 * g - 4) * (5 * g - 6), 12) * col(g - 1);
        let mut conv = Rational::from_integer(0.into());
        for g1 in 1..g {
            conv += col(g1) * col(g - g1);
        }
        rhs += conv * ratio(1, 2);
        check(col(g) == rhs, || format!("k=0 recursion identity fails at g={g}"))?;
    }

    let json = TableDocument::from_table(&large).to_json();
    let back = TableDocument::from_json(&json)
        .and_then(|d| d.to_table())
        .map_err(|e| e.to_string())?;
    check(back == large, || "serialization round trip changed the table".into())?;

    let mut runner = TestRunner::new(Config::with_cases(256));
    runner
        .run(&(0i64..300), |m| {
            let odd = double_factorial(2 * m + 1).unwrap();
            let even = double_factorial(2 * m).unwrap();
            prop_assert_eq!(odd * even, factorial(2 * m as u64 + 1));
            Ok(())
        })
        .map_err(|e| format!("double factorial identity: {e}"))?;
    runner
        .run(&(2u32..300, 0u32..=300, 0u32..80), |(g, k, n)| {
            let k = k % (g + 1);
            let next = reduction_factor(g, k, n + 1).unwrap();
            let cur = reduction_factor(g, k, n).unwrap();
            prop_assert_eq!(next, cur * u64::from(5 * g - 5 - k + 2 * n));
            Ok(())
        })
        .map_err(|e| format!("telescoping identity: {e}"))?;

    Ok("positivity, prefix stability, k=0 identity, round trip, factorial identities".into())
}

fn criterion_8_closed_forms() -> Outcome {
    let table = build_table(1).map_err(|e| e.to_string())?;
    let v05 = volume_exact(&table, 0, 5).map_err(|e| e.to_string())?;
    check(v05 == PiMultiple::new(ratio(1, 1), 4), || format!("V(0,5) = {v05}"))?;
    let v11 = volume_exact(&table, 1, 1).map_err(|e| e.to_string())?;
    check(v11 == PiMultiple::new(ratio(2, 3), 2), || format!("V(1,1) = {v11}"))?;
    for (g, n) in [(1, 0), (0, 3)] {
        let res = volume_exact(&table, g, n);
        check(matches!(res, Err(Error::UnstableStratum { .. })), || {
            format!("({g},{n}) not rejected: {res:?}")
        })?;
    }
    Ok(format!("V(0,5) = {v05}, V(1,1) = {v11}; (1,0) and (0,3) rejected"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("1 small-table exactness", criterion_1_small_table),
        ("2 diagonal lambda_g oracle", criterion_2_diagonal_oracle),
        ("3 column DVV oracle", criterion_3_column_oracle),
        ("4 end-to-end volume", criterion_4_end_to_end_volume),
        ("5 asymptotic ratio at g=100", criterion_5_asymptotic_ratio),
        ("6 build_table(100) runtime", criterion_6_performance),
        ("7 property suites", criterion_7_properties),
        ("8 closed forms and guards", criterion_8_closed_forms),
    ];
    let mut failed = Vec::new();
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(reason) => {
                println!("FAIL  criterion {name}: {reason}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
