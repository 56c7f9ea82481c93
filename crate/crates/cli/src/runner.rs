//! Executes the selected certificate suites.
//!
//! Every suite draws from its own generator stream of the configured seed,
//! so suites run on separate threads and still produce the same evidence
//! as a sequential run. Records are assembled in [`Suite::ALL`] order.

use std::time::Instant;

use monotone_core::certify::{random_finite_seq, random_perturbation, random_rational, sampler};
use monotone_core::seqspace::format_rational;
use monotone_core::*;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::config::{Suite, SuiteConfig};
use crate::report::{Status, SuiteRecord, SuiteReport};

/// Number of `(lambda, m)` draws for the `T(-lambda v^m) = lambda u^m` check.
const SCALING_DRAWS: usize = 100;
const SCALING_MAX_M: usize = 50;

pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let records: Vec<SuiteRecord> = std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .suites
            .iter()
            .map(|&suite| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let mut rec = run_one(suite, config);
                    rec.duration_ms = Some(start.elapsed().as_millis() as u64);
                    rec
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(&config.suites)
            .map(|(h, suite)| {
                h.join().unwrap_or_else(|_| {
                    let mut rec = SuiteRecord::new(suite.name());
                    rec.fail("suite panicked");
                    rec
                })
            })
            .collect()
    });

    let overall = if records.iter().all(|r| r.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    SuiteReport {
        overall,
        seed: config.seed,
        samples: config.samples,
        support_max: config.params.support_max,
        coeff_bound: config.params.coeff_bound,
        taus: config.taus.iter().map(format_rational).collect(),
        ytilde: config.ytilde.clone(),
        suites: records,
        timestamp: None,
    }
}

fn run_one(suite: Suite, config: &SuiteConfig) -> SuiteRecord {
    let stream = Suite::ALL.iter().position(|&s| s == suite).unwrap() as u64;
    let mut rng = sampler(config.seed, stream);
    let mut rec = SuiteRecord::new(suite.name());
    match suite {
        Suite::Skew => skew(config, &mut rng, &mut rec),
        Suite::Monotone => monotone(config, &mut rng, &mut rec),
        Suite::Maximal => maximal(config, &mut rng, &mut rec),
        Suite::Extensions => extensions(config, &mut rng, &mut rec),
        Suite::Gap => gap(config, &mut rng, &mut rec),
    }
    rec
}

fn graph_sample<R: Rng>(config: &SuiteConfig, rng: &mut R) -> Vec<RationalGraphPoint> {
    (0..config.samples).map(|_| random_graph_point(rng, config.params)).collect()
}

/// `<G(y), y> = 0`, `tail(G(y)) = -sum(y)`, and `t_solve` accepting exactly
/// the zero-sum side of the range law.
fn skew<R: Rng>(config: &SuiteConfig, rng: &mut R, rec: &mut SuiteRecord) {
    let mut seen: Vec<Rational> = Vec::new();
    for _ in 0..config.samples {
        let y = random_finite_seq(rng, config.params);
        let g = gossez_apply(&y).expect("finite sample");
        let sum = y.total_sum().expect("finite sample");
        let p = g.pairing(&y).expect("finite sample");
        rec.check("skew_identity", p.is_zero(), || {
            format!("<G(y), y> = {} for y = {}", format_rational(&p), seq_str(&y))
        });
        if !seen.contains(&p) {
            seen.push(p);
        }
        rec.check("tail_law", g.tail() == &-sum.clone(), || {
            format!("tail(G(y)) != -sum(y) for y = {}", seq_str(&y))
        });

        // zero-sum y: -G(y) is in dom(T) and T recovers y
        let pos = random_graph_point(rng, config.params);
        let ok = matches!(t_solve(pos.x()), Ok(ref y) if y == pos.y());
        rec.check("range_positive", ok, || format!("t_solve(-G(y)) != y for y = {}", seq_str(pos.y())));

        // nonzero sum: -G(y) - sum(y) e lies in c0 but outside dom(T)
        let mut neg = random_finite_seq(rng, config.params);
        let mut s = neg.total_sum().expect("finite sample");
        if s.is_zero() {
            neg = &neg + &Seq::unit(1);
            s = Rational::one();
        }
        let x = &-gossez_apply(&neg).expect("finite sample") - &Seq::constant(s);
        let solved = t_solve(&x);
        rec.check("range_negative", matches!(solved, Err(Error::NotInDomain)), || {
            format!("t_solve(x) = {solved:?} instead of NotInDomain for x = {}", seq_str(&x))
        });
    }
    for v in &seen {
        rec.evidence("skew_pairing", v);
    }
}

fn monotone<R: Rng>(config: &SuiteConfig, rng: &mut R, rec: &mut SuiteRecord) {
    let mut seen: Vec<Rational> = Vec::new();
    for _ in 0..config.samples {
        let p = random_graph_point(rng, config.params);
        let q = random_graph_point(rng, config.params);
        let v = monotone_product(&p, &q);
        rec.check("pairs", v.is_zero(), || {
            format!("monotone product {} between graph points", format_rational(&v))
        });
        if !seen.contains(&v) {
            seen.push(v);
        }
    }
    for v in &seen {
        rec.evidence("monotone_product", v);
    }
}

fn maximal<R: Rng>(config: &SuiteConfig, rng: &mut R, rec: &mut SuiteRecord) {
    let mut products: Vec<Rational> = Vec::new();
    for _ in 0..config.samples {
        let p = random_graph_point(rng, config.params);
        match violation_witness(p.x(), p.y()) {
            Ok(v) => rec.check("members", v.is_member(), || {
                format!("graph point with y = {} rejected", seq_str(p.y()))
            }),
            Err(e) => rec.fail(format!("violation_witness on graph point: {e}")),
        }
        let ok = matches!(t_solve(p.x()), Ok(ref y) if y == p.y());
        rec.check("round_trips", ok, || format!("t_solve(-G(y)) != y for y = {}", seq_str(p.y())));

        let (x, y) = random_perturbation(rng, &p, config.params);
        match violation_witness(&x, &y) {
            Ok(v @ WitnessVerdict::Violation { .. }) => {
                let WitnessVerdict::Violation { product, .. } = &v else { unreachable!() };
                let recomputed = v.recompute_product(&x, &y);
                let ok = product.is_negative() && recomputed == Some(Ok(product.clone()));
                rec.check("violations", ok, || {
                    format!("witness product {} failed re-verification", format_rational(product))
                });
                if product == &-Rational::one() {
                    rec.count("violations_unit_product");
                } else {
                    rec.count("violations_other_product");
                }
                if !products.contains(product) {
                    products.push(product.clone());
                }
            }
            Ok(WitnessVerdict::Member) => {
                rec.count("violations");
                rec.fail(format!("perturbed pair accepted: x = {}, y = {}", seq_str(&x), seq_str(&y)))
            }
            Err(e) => rec.fail(format!("violation_witness on perturbation: {e}")),
        }
    }
    for _ in 0..SCALING_DRAWS.min(config.samples) {
        let lambda = random_rational(rng, config.params.coeff_bound);
        let m = rng.gen_range(1..=SCALING_MAX_M);
        let x = unit_v::<Rational>(m).scale(&-lambda.clone());
        let ok = matches!(t_solve(&x), Ok(ref y) if *y == unit_u::<Rational>(m).scale(&lambda));
        rec.check("scaling", ok, || {
            format!("T(-lambda v^m) != lambda u^m for lambda = {}, m = {m}", format_rational(&lambda))
        });
    }
    products.sort();
    for v in &products {
        rec.evidence("witness_product", v);
    }
}

fn extension_points(config: &SuiteConfig, rec: &mut SuiteRecord) -> Vec<RationalExtensionPoint> {
    let mut out = Vec::new();
    for tau in &config.taus {
        match extension_point(tau.clone(), config.ytilde.clone()) {
            Ok(ep) => out.push(ep),
            Err(e) => rec.fail(format!("extension point for tau = {}: {e}", format_rational(tau))),
        }
    }
    out
}

fn e_pairing(config: &SuiteConfig) -> Rational {
    Seq::constant(Rational::one()).pairing(&config.ytilde).expect("validated ytilde")
}

fn extensions<R: Rng>(config: &SuiteConfig, rng: &mut R, rec: &mut SuiteRecord) {
    let expected = e_pairing(config);
    let sample = graph_sample(config, rng);
    for ep in extension_points(config, rec) {
        let tau = format_rational(ep.tau());
        let mut margin: Option<Rational> = None;
        for p in &sample {
            let m = closure_margin(&ep, p);
            rec.check("closure_margins", m == expected && m.is_positive(), || {
                format!("closure margin {} != <ytilde, e> at tau = {tau}", format_rational(&m))
            });
            margin.get_or_insert(m);
        }
        if let Some(m) = margin {
            rec.evidence(format!("closure_margin[tau={tau}]"), &m);
        }
    }

    if config.taus.len() < 2 {
        rec.fail("insufficient distinct taus: need at least 2 for distinctness");
        return;
    }
    for (i, t1) in config.taus.iter().enumerate() {
        for t2 in &config.taus[i + 1..] {
            let label = format!("distinctness[{},{}]", format_rational(t1), format_rational(t2));
            match distinctness(t1.clone(), t2.clone(), &config.ytilde) {
                Ok(d) => {
                    let closed = (t1 - t2) * (t1.recip() - t2.recip()) * expected.clone();
                    rec.check("distinct_pairs", d == closed && d.is_negative(), || {
                        format!("{label} = {} disagrees with closed form", format_rational(&d))
                    });
                    rec.evidence(label, &d);
                }
                Err(e) => {
                    rec.count("distinct_pairs");
                    rec.fail(format!("{label}: {e}"));
                }
            }
        }
    }
}

fn gap<R: Rng>(config: &SuiteConfig, rng: &mut R, rec: &mut SuiteRecord) {
    let expected = e_pairing(config);
    let sample = graph_sample(config, rng);
    for ep in extension_points(config, rec) {
        let tau = format_rational(ep.tau());
        rec.count("extension_points");
        match fitzpatrick_gap(&ep, &sample) {
            Ok(g) => {
                rec.check("gaps", g == expected && g.is_positive(), || {
                    format!("gap {} != <ytilde, e> at tau = {tau}", format_rational(&g))
                });
                rec.evidence(format!("self_pairing[tau={tau}]"), &ep.self_pairing());
                rec.evidence(format!("sup[tau={tau}]"), &fitzpatrick_value(&ep, &sample[0]));
                rec.evidence(format!("gap[tau={tau}]"), &g);
            }
            Err(e) => {
                rec.count("gaps");
                rec.fail(format!("gap at tau = {tau}: {e}"));
            }
        }
    }
    rec.counts.insert("graph_points".into(), sample.len() as u64);
}

fn seq_str(s: &Seq) -> String {
    serde_json::to_string(s).expect("sequence serializes")
}
