//! Acceptance gate. Every criterion is an exact rational equality or a
//! strict sign check; runtime bounds are wall-clock limits per criterion.
//! Prints one PASS/FAIL line per criterion and fails if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use monotone_core::certify::{random_finite_seq, random_perturbation, random_rational, sampler};
use monotone_core::*;
use num_traits::{One, Signed, Zero};
use rand::Rng;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SEED: u64 = 20_26;

fn params() -> SampleParams {
    SampleParams { support_max: 16, coeff_bound: 100 }
}

fn taus() -> Vec<Rational> {
    vec![ratio(1, 3), ratio(1, 2), int(1), int(2), int(3)]
}

fn ytildes() -> Vec<Seq> {
    vec![Seq::unit(1), &Seq::unit(1) + &Seq::unit(4), Seq::unit(2).scale(&int(2))]
}

/// `<ytilde, e>` by summing entries directly.
fn e_pairing(y: &Seq) -> Rational {
    (1..=y.len()).map(|i| y.entry(i)).sum()
}

/// Recurrence `x_{m+1} - x_m = y_{m+1} + y_m` for all m, checked entrywise.
fn recurrence_holds(x: &Seq, y: &Seq) -> bool {
    let n = x.len().max(y.len()) + 1;
    (1..=n).all(|m| x.entry(m + 1) - x.entry(m) == y.entry(m + 1) + y.entry(m))
}

fn graph_points(stream: u64, n: usize) -> Vec<RationalGraphPoint> {
    let mut rng = sampler(SEED, stream);
    (0..n).map(|_| random_graph_point(&mut rng, params())).collect()
}

fn ac01_eq5() -> Check {
    for m in 1..=100 {
        let u = unit_u::<Rational>(m);
        let v = unit_v::<Rational>(m);
        ensure!(gossez_apply(&u).unwrap() == v, "G(u^{m}) != v^{m}");
        ensure!(u.entry(m) == -Rational::one() && u.entry(m + 1).is_one(), "u^{m} entries");
        ensure!(v.entry(m).is_one() && v.entry(m + 1).is_one() && v.len() == m + 1, "v^{m} entries");
    }
    Ok(())
}

fn ac02_skew() -> Check {
    let mut rng = sampler(SEED, 2);
    for _ in 0..1000 {
        let y = random_finite_seq(&mut rng, params());
        ensure!(y.len() <= 16, "support bound");
        let p = gossez_apply(&y).unwrap().pairing(&y).unwrap();
        ensure!(p.is_zero(), "<G(y), y> = {p} for {y:?}");
    }
    Ok(())
}

fn ac03_range_law() -> Check {
    let mut rng = sampler(SEED, 2);
    for _ in 0..1000 {
        let y = random_finite_seq(&mut rng, params());
        let tail = gossez_apply(&y).unwrap().tail().clone();
        ensure!(tail == -e_pairing(&y), "tail law for {y:?}");
    }
    let mut rng = sampler(SEED, 3);
    for _ in 0..500 {
        let p = random_graph_point(&mut rng, params());
        ensure!(e_pairing(p.y()).is_zero(), "positive has nonzero sum");
        ensure!(t_solve(p.x()).as_ref() == Ok(p.y()), "positive rejected: {:?}", p.x());
    }
    for _ in 0..500 {
        let mut y = random_finite_seq(&mut rng, params());
        if e_pairing(&y).is_zero() {
            y = &y + &Seq::unit(1);
        }
        let s = e_pairing(&y);
        // in c0 and satisfies the recurrence, but sum(y) != 0
        let x = &-gossez_apply(&y).unwrap() - &Seq::constant(s);
        ensure!(x.is_finitely_supported(), "negative not in c0");
        ensure!(t_solve(&x) == Err(Error::NotInDomain), "negative accepted: {x:?}");
    }
    Ok(())
}

fn ac04_round_trips() -> Check {
    let mut rng = sampler(SEED, 4);
    for _ in 0..500 {
        let p = random_graph_point(&mut rng, params());
        let x = -gossez_apply(p.y()).unwrap();
        ensure!(t_solve(&x).as_ref() == Ok(p.y()), "t_solve(-G(y)) != y");
    }
    for _ in 0..100 {
        let lambda = random_rational(&mut rng, 100);
        let m = rng.gen_range(1..=50);
        let x = unit_v::<Rational>(m).scale(&-lambda.clone());
        let want = unit_u::<Rational>(m).scale(&lambda);
        ensure!(t_solve(&x) == Ok(want), "T(-lambda v^m) for lambda = {lambda}, m = {m}");
    }
    Ok(())
}

fn ac05_monotone() -> Check {
    let a = graph_points(5, 1000);
    let b = graph_points(6, 1000);
    for (p, q) in a.iter().zip(&b) {
        let v = monotone_product(p, q);
        ensure!(v.is_zero(), "monotone product {v}");
        let direct = (p.x() - q.x()).pairing(&(p.y() - q.y())).unwrap();
        ensure!(direct == v, "product mismatch");
    }
    Ok(())
}

fn ac06_maximality() -> Check {
    let mut rng = sampler(SEED, 7);
    let mut unit_cases = 0;
    for _ in 0..500 {
        let p = random_graph_point(&mut rng, params());
        let v = violation_witness(p.x(), p.y()).unwrap();
        ensure!(v.is_member(), "graph point rejected");
    }
    for _ in 0..500 {
        let p = random_graph_point(&mut rng, params());
        let (x, y) = random_perturbation(&mut rng, &p, params());
        ensure!(x != *p.x() || y != *p.y(), "zero perturbation");
        let v = violation_witness(&x, &y).unwrap();
        let WitnessVerdict::Violation { witness, product } = &v else {
            return Err(format!("perturbation accepted: {x:?}, {y:?}"));
        };
        ensure!(product.is_negative(), "nonnegative witness product");
        let recomputed = (&x - witness.x()).pairing(&(&y - witness.y())).unwrap();
        ensure!(&recomputed == product, "witness product does not re-verify");
        ensure!(
            GraphPoint::new(witness.x().clone(), witness.y().clone()).is_ok(),
            "witness is not a graph point"
        );
        if !recurrence_holds(&x, &y) {
            ensure!(*product == -Rational::one(), "recurrence-step product {product} != -1");
            unit_cases += 1;
        } else {
            let s = e_pairing(&y);
            ensure!(*product == -(s.clone() * s), "origin-step product is not -(sum y)^2");
        }
    }
    ensure!(unit_cases > 0, "no recurrence-step violations exercised");
    Ok(())
}

fn ac07_closure() -> Check {
    let sample = graph_points(8, 1000);
    for yt in ytildes() {
        let expected = e_pairing(&yt);
        ensure!(expected.is_positive(), "<ytilde, e> not positive");
        for tau in taus() {
            let ep = extension_point(tau.clone(), yt.clone()).unwrap();
            for p in &sample {
                let m = closure_margin(&ep, p);
                ensure!(m == expected, "margin {m} != {expected} at tau = {tau}");
            }
        }
    }
    Ok(())
}

fn ac08_distinctness() -> Check {
    let ts = taus();
    for yt in ytildes() {
        let mut pairs = 0;
        for (i, t1) in ts.iter().enumerate() {
            for t2 in &ts[i + 1..] {
                let d = distinctness(t1.clone(), t2.clone(), &yt).unwrap();
                let closed = (t1 - t2) * (t1.recip() - t2.recip()) * e_pairing(&yt);
                ensure!(d == closed, "distinctness({t1}, {t2}) = {d} != {closed}");
                ensure!(d.is_negative(), "distinctness not negative");
                // direct from the sequences
                let a = extension_point(t1.clone(), yt.clone()).unwrap();
                let b = extension_point(t2.clone(), yt.clone()).unwrap();
                let direct =
                    (a.xstarstar() - b.xstarstar()).pairing(&(a.xstar() - b.xstar())).unwrap();
                ensure!(direct == d, "direct pairing disagrees");
                pairs += 1;
            }
        }
        ensure!(pairs == 10, "expected 10 pairs");
    }
    let spot = distinctness(int(1), int(2), &Seq::unit(1)).unwrap();
    ensure!(spot == ratio(-1, 2), "spot value {spot}");
    Ok(())
}

fn ac09_gap() -> Check {
    let sample = graph_points(9, 1000);
    for yt in ytildes() {
        let expected = e_pairing(&yt);
        for tau in taus() {
            let ep = extension_point(tau.clone(), yt.clone()).unwrap();
            let values: Vec<Rational> = sample.iter().map(|p| fitzpatrick_value(&ep, p)).collect();
            ensure!(values.iter().all(|v| v == &values[0]), "value not constant at tau = {tau}");
            let sup = values.iter().max().unwrap().clone();
            let self_pairing = ep.xstar().pairing(ep.xstarstar()).unwrap();
            let gap = self_pairing.clone() - sup.clone();
            ensure!(gap == expected && gap.is_positive(), "gap {gap} != {expected}");
            ensure!(sup < self_pairing, "strict inequality fails");
            ensure!(fitzpatrick_gap(&ep, &sample) == Ok(gap), "fitzpatrick_gap disagrees");
        }
    }
    Ok(())
}

fn ac10_cli() -> Check {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_certify"))
            .args(["run", "--timestamp", "off"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure!(a.status.code() == Some(0), "exit code {:?}", a.status.code());
    ensure!(b.status.code() == Some(0), "exit code {:?}", b.status.code());
    ensure!(a.stdout == b.stdout, "reports differ between runs");
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    ensure!(doc["overall"] == "pass", "overall is {}", doc["overall"]);
    ensure!(doc["suites"].as_array().map(|s| s.len()) == Some(5), "not all suites ran");
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("AC-01", "G(u^m) = v^m, m = 1..100", ac01_eq5, Duration::from_secs(1)),
        ("AC-02", "skew identity <G(y), y> = 0", ac02_skew, Duration::from_secs(5)),
        ("AC-03", "tail law and range law", ac03_range_law, Duration::from_secs(5)),
        ("AC-04", "T round trips", ac04_round_trips, Duration::from_secs(5)),
        ("AC-05", "monotone products vanish", ac05_monotone, Duration::MAX),
        ("AC-06", "maximality witnesses", ac06_maximality, Duration::MAX),
        ("AC-07", "closure margins = <ytilde, e>", ac07_closure, Duration::MAX),
        ("AC-08", "distinctness products", ac08_distinctness, Duration::MAX),
        ("AC-09", "Fitzpatrick gap = <ytilde, e>", ac09_gap, Duration::MAX),
        ("AC-10", "CLI default run, byte-identical", ac10_cli, Duration::from_secs(30)),
    ];
    let mut failed = Vec::new();
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if result.is_ok() && elapsed > limit {
            result = Err(format!("took {elapsed:?}, limit {limit:?}"));
        }
        match &result {
            Ok(()) => println!("[PASS] {id} {name} ({elapsed:.2?})"),
            Err(e) => {
                println!("[FAIL] {id} {name} ({elapsed:.2?}): {e}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
