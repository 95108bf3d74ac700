//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::process::Command;
use std::time::{Duration, Instant};

use cubictheta::generators::{self, a_divisor, a_lattice, a_power_closed_form, eisenstein, integer_coefficient};
use cubictheta::identities::{find, BuildEnv};
use cubictheta::qlaurent::rexp;
use cubictheta::thetalab::{theta_deriv, theta_triple_product};
use cubictheta::{CycloContext, CycloNumber, PiSeries, RationalExp, RationalPoint, SeriesContext, ThetaChar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Order at which the registry and the ODE/theta checks run.
const ORDER: i64 = 40;
/// Wall-clock budget for the full registry through the CLI.
const REGISTRY_BUDGET: Duration = Duration::from_secs(300);
const MIN_REGISTRY_ENTRIES: usize = 60;
/// Minimum exclusive bound for J and sampled identities.
const MIN_ACHIEVED: i64 = 20;
const ORACLE_RANGE: i64 = 2000;
const APOW_RANGE: i64 = 500;
const PROPERTY_CASES: u32 = 1000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cubictheta"))
        .args(args)
        .output()
        .expect("run cubictheta");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn bound(n: i64) -> Option<RationalExp> {
    Some(RationalExp::from_integer(n))
}

fn ints(s: &PiSeries, range: std::ops::Range<i64>) -> Vec<i64> {
    range
        .map(|k| integer_coefficient(s, k).unwrap().try_into().unwrap())
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let order = ORDER.to_string();
    let (code, stdout) = cli(&["verify", "--all", "--order", &order, "--format", "json"]);
    let elapsed = start.elapsed();
    let reports: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(reports.len() >= MIN_REGISTRY_ENTRIES, || format!("only {} entries", reports.len()))?;
    for r in &reports {
        ensure(r["verdict"] == "pass" && r["first_discrepancy"].is_null(), || format!("{r}"))?;
    }
    ensure(elapsed < REGISTRY_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} entries pass at order {ORDER} in {:.1} s", reports.len(), elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let ctx = SeriesContext::rational();
    let lattice = a_lattice(ORACLE_RANGE, &ctx).map_err(|e| e.to_string())?;
    let divisor = a_divisor(ORACLE_RANGE, &ctx).map_err(|e| e.to_string())?;
    let cmp = lattice.equal_to_order(&divisor).map_err(|e| e.to_string())?;
    ensure(cmp.passed(), || format!("{:?}", cmp.first_discrepancy))?;
    ensure(cmp.achieved == bound(ORACLE_RANGE + 1), || format!("achieved {:?}", cmp.achieved))?;
    let first = ints(&lattice, 0..8);
    ensure(first == [1, 6, 0, 6, 6, 0, 0, 12], || format!("{first:?}"))?;
    let (code, stdout) = cli(&["expand", "a", "--order", "7"]);
    let printed: Vec<&str> = stdout.lines().filter_map(|l| l.split('\t').nth(1)).collect();
    ensure(code == 0 && printed == ["1", "6", "0", "6", "6", "0", "0", "12"], || stdout.clone())?;
    Ok(format!("a_lattice = a_divisor for n <= {ORACLE_RANGE}; first eight {first:?}"))
}

/// `12θP` against `3P³ + PQ + s·4R` and `−3P³ + 3PQ + s·4R` built from
/// public generators.
fn ode_p(second: bool, sign: i64) -> Result<(PiSeries, PiSeries, PiSeries), String> {
    let ctx = SeriesContext::rational();
    let err = |e: generators::GeneratorError| e.to_string();
    let p = a_lattice(ORDER, &ctx).map_err(err)?;
    let (q, r) = if second {
        (eisenstein(2, 3, ORDER, &ctx).map_err(err)?, generators::c_cubed_series(ORDER, &ctx).map_err(err)?)
    } else {
        (eisenstein(2, 1, ORDER, &ctx).map_err(err)?, generators::b_cubed_series(ORDER, &ctx).map_err(err)?)
    };
    let c = |n: i64| BigRational::from_integer(n.into());
    let (a3, apq) = if second { (-3, 3) } else { (3, 1) };
    let rhs = PiSeries::polynomial_in(&[
        (c(a3), vec![(&p, 3)]),
        (c(apq), vec![(&p, 1), (&q, 1)]),
        (c(4 * sign), vec![(&r, 1)]),
    ])
    .map_err(|e| e.to_string())?;
    Ok((p.theta_q().scale_ratio(12, 1), rhs, r))
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for id in ["thm11.P", "thm11.Q", "thm11.R", "thm12.P", "thm12.Q", "thm12.R"] {
        let order = ORDER.to_string();
        let (code, stdout) = cli(&["verify", "--id", id, "--order", &order, "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(stdout.trim()).map_err(|e| e.to_string())?;
        ensure(code == 0 && v["verdict"] == "pass", || format!("{id}: {v}"))?;
        ensure(v["achieved_order"] == format!("{}/1", ORDER + 1), || format!("{id}: {v}"))?;
    }
    for (second, sign_ok) in [(false, -1), (true, 1)] {
        let (lhs, rhs, _) = ode_p(second, sign_ok)?;
        ensure(lhs.agrees_with(&rhs), || format!("unflipped P-equation fails (second = {second})"))?;
        let (lhs, rhs, r) = ode_p(second, -sign_ok)?;
        let cmp = lhs.equal_to_order(&rhs).map_err(|e| e.to_string())?;
        let at = cmp.first_discrepancy.map(|d| d.exponent);
        let lead_r = r.lead_exponent();
        ensure(at.is_some() && at == lead_r, || format!("flipped sign first fails at {at:?}, R leads at {lead_r:?}"))?;
        notes.push(format!("flip fails at q^{}", at.unwrap()));
    }
    ensure(notes[1] == "flip fails at q^1", || notes[1].clone())?;
    Ok(format!("six ODEs to order {ORDER}; b³ system {}, c³ system {}", notes[0], notes[1]))
}

fn criterion_4() -> Outcome {
    let ctx = SeriesContext::rational();
    let a = a_lattice(APOW_RANGE, &ctx).map_err(|e| e.to_string())?;
    let mut power = PiSeries::one(&ctx);
    for k in 1..=6 {
        power = power.mul(&a).map_err(|e| e.to_string())?;
        let closed = a_power_closed_form(k, APOW_RANGE, &ctx).map_err(|e| e.to_string())?;
        let cmp = power.equal_to_order(&closed).map_err(|e| e.to_string())?;
        ensure(cmp.passed(), || format!("a^{k}: {:?}", cmp.first_discrepancy))?;
        ensure(cmp.achieved == bound(APOW_RANGE + 1), || format!("a^{k}: achieved {:?}", cmp.achieved))?;
    }
    let q1 = |k| integer_coefficient(&a_power_closed_form(k, 1, &ctx).unwrap(), 1).unwrap();
    ensure(q1(2) == BigInt::from(12) && q1(4) == BigInt::from(24), || "q¹ coefficients".into())?;
    let (code, stdout) = cli(&["table", "--kind", "apow", "--k", "2", "--n-max", "3"]);
    ensure(code == 0 && stdout == "1\t12\t12\ttrue\n2\t36\t36\ttrue\n3\t12\t12\ttrue\n", || stdout.clone())?;
    Ok(format!("a^1..a^6 match closed forms for n <= {APOW_RANGE}; [a²]q = 12, [a⁴]q = 24"))
}

fn criterion_5() -> Outcome {
    // g₂ = (4π⁴/3)E₄ and g₃ = (8π⁶/27)E₆, carried with their π-grades.
    let ctx = SeriesContext::rational();
    let work = ORDER + 2;
    let e4 = eisenstein(4, 1, work, &ctx).map_err(|e| e.to_string())?;
    let e6 = eisenstein(6, 1, work, &ctx).map_err(|e| e.to_string())?;
    let g2 = e4.scale_ratio(4, 3).with_grade(4);
    let g3 = e6.scale_ratio(8, 27).with_grade(6);
    let g2_cubed = g2.pow(3).map_err(|e| e.to_string())?;
    let disc = g2_cubed.sub(&g3.pow(2).map_err(|e| e.to_string())?.scale_ratio(27, 1)).map_err(|e| e.to_string())?;
    let j = g2_cubed.div(&disc).map_err(|e| e.to_string())?.scale_ratio(1728, 1);
    ensure(j.pi_grade() == 0, || format!("grade {}", j.pi_grade()))?;
    let c = |k| integer_coefficient(&j, k).unwrap();
    let got = (c(-1), c(0), c(1));
    ensure(got == (1.into(), 744.into(), 196884.into()), || format!("{got:?}"))?;
    let library = generators::j_invariant(ORDER, &ctx).map_err(|e| e.to_string())?;
    ensure(library.agrees_with(&j), || "library J differs".into())?;
    let mut achieved = Vec::new();
    for id in ["thm52.J", "thm63.J3"] {
        let order = ORDER.to_string();
        let (code, stdout) = cli(&["verify", "--id", id, "--order", &order, "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(stdout.trim()).map_err(|e| e.to_string())?;
        let a: RationalExp = v["achieved_order"].as_str().unwrap_or("0/1").parse().map_err(|_| format!("{v}"))?;
        ensure(code == 0 && a >= RationalExp::from_integer(MIN_ACHIEVED), || format!("{id}: {v}"))?;
        achieved.push(format!("{id} to q^{a}"));
    }
    Ok(format!("J = q⁻¹ + 744 + 196884q + …; {}", achieved.join(", ")))
}

const CHARS: [(i64, i64, i64, i64); 7] = [
    (0, 1, 0, 1),
    (1, 1, 0, 1),
    (0, 1, 1, 1),
    (1, 1, 1, 3),
    (1, 3, 1, 1),
    (1, 3, 1, 3),
    (1, 3, 5, 3),
];

fn criterion_6() -> Outcome {
    let ctx = SeriesContext::default();
    let minus_eight = CycloNumber::from_i64(&CycloContext::rationals(), -8);
    for (a, b, c, d) in CHARS {
        let ch = ThetaChar::of(a, b, c, d);
        let theta = |j| theta_deriv(j, ch, ORDER, &ctx).map_err(|e| e.to_string());
        for j in 0..=3 {
            let rhs = theta(j)?.theta_q().scale(&minus_eight, 2).map_err(|e| e.to_string())?;
            let lhs = theta(j + 2)?;
            ensure(lhs == rhs, || format!("heat {ch} j={j}"))?;
            ensure(lhs.trunc() > bound(ORDER), || format!("heat {ch}: trunc {:?}", lhs.trunc()))?;
        }
        let product = theta_triple_product(ch, ORDER, &ctx).map_err(|e| e.to_string())?;
        let sum = theta(0)?;
        let cmp = product.equal_to_order(&sum).map_err(|e| e.to_string())?;
        ensure(cmp.passed(), || format!("triple {ch}: {:?}", cmp.first_discrepancy))?;
        // the product is known past q^ORDER, though not always through q^{ORDER+1}
        ensure(cmp.achieved > bound(ORDER), || format!("triple {ch}: {:?}", cmp.achieved))?;
    }
    Ok(format!("heat equation j = 0..3 and triple product for {} characteristics", CHARS.len()))
}

fn criterion_7() -> Outcome {
    let points: Vec<String> = RationalPoint::default_samples().iter().map(ToString::to_string).collect();
    let env = BuildEnv::new(ORDER);
    let mut worst = RationalExp::from_integer(i64::MAX);
    for id in ["thm31.d3", "thm31.d4", "thm31.d5", "prop91.id1", "prop91.id2"] {
        let pairs = find(id).map_err(|e| e.to_string())?.build(&env).map_err(|e| e.to_string())?;
        let labels: Vec<&str> = pairs.iter().map(|p| p.label.as_str()).collect();
        ensure(labels == points, || format!("{id}: points {labels:?}"))?;
        for p in &pairs {
            let cmp = p.lhs.equal_to_order(&p.rhs).map_err(|e| e.to_string())?;
            ensure(cmp.passed(), || format!("{id} at {}: {:?}", p.label, cmp.first_discrepancy))?;
            let a = cmp.achieved.ok_or_else(|| format!("{id}: exact?"))?;
            ensure(a >= RationalExp::from_integer(MIN_ACHIEVED), || format!("{id} at {}: q^{a}", p.label))?;
            worst = worst.min(a);
        }
    }
    Ok(format!("5 identities x {} points; lowest achieved bound q^{worst}", points.len()))
}

#[derive(Debug, Clone)]
struct Shape {
    d: i64,
    n: u32,
    grade: i32,
    terms: Vec<(i64, i64, i64)>,
    trunc: Option<i64>,
}

impl Shape {
    fn build(&self) -> PiSeries {
        let field = CycloContext::new(self.n).unwrap();
        let terms = self.terms.iter().map(|&(e, k, c)| {
            let z = CycloNumber::root_of_unity(k, &field);
            (RationalExp::new(e, self.d), z.scale(&BigRational::from_integer(c.into())))
        });
        let trunc = self.trunc.map(|t| RationalExp::new(t, self.d));
        PiSeries::from_terms(&SeriesContext::new(self.d, self.n), self.grade, terms, trunc).unwrap()
    }
}

fn shape(grade: std::ops::Range<i32>) -> impl Strategy<Value = Shape> {
    (
        prop::sample::select(vec![1i64, 2, 3, 6]),
        prop::sample::select(vec![1u32, 3, 4, 6]),
        grade,
        prop::collection::vec((-3i64..12, 0i64..12, -5i64..=5), 0..6),
        prop::option::weighted(0.8, 5i64..18),
    )
        .prop_map(|(d, n, grade, terms, trunc)| Shape { d, n, grade, terms, trunc })
}

fn agree(a: &PiSeries, b: &PiSeries) -> Result<(), TestCaseError> {
    prop_assert!(a.agrees_with(b), "{a} vs {b}");
    Ok(())
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))?;
    Ok(name.to_string())
}

fn criterion_8() -> Outcome {
    let done = [
        run_property("ring axioms", (0i32..1).prop_flat_map(|_| (shape(0..1), shape(0..1), shape(0..1))), |(a, b, c)| {
            let (a, b, c) = (a.build(), b.build(), c.build());
            agree(&(&(&a + &b) + &c), &(&a + &(&b + &c)))?;
            agree(&(&(&a * &b) * &c), &(&a * &(&b * &c)))?;
            agree(&(&a * &b), &(&b * &a))?;
            agree(&(&a + &b), &(&b + &a))?;
            agree(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)))
        })?,
        run_property("Leibniz", (shape(-2..3), shape(-2..3)), |(a, b)| {
            let (a, b) = (a.build(), b.build());
            agree(&(&a * &b).theta_q(), &(&(&a.theta_q() * &b) + &(&a * &b.theta_q())))
        })?,
        run_property("inverse round-trip", (shape(-2..3), -3i64..3, 1i64..5, 0i64..12), |(mut s, lead, c, k)| {
            s.terms.retain(|&(e, _, _)| e > lead);
            s.terms.push((lead, k, c));
            s.trunc = Some(s.trunc.unwrap_or(10).max(lead + 1) + 3);
            let f = s.build();
            let prod = f.mul(&f.invert().unwrap()).unwrap();
            prop_assert_eq!(prod.pi_grade(), 0);
            agree(&prod, &PiSeries::one(&SeriesContext::rational()))
        })?,
        run_property("substitution homomorphism", (shape(0..1), shape(0..1), 1i64..4, 1i64..4), |(a, b, p, q)| {
            let (a, b) = (a.build(), b.build());
            let sub = |s: &PiSeries| s.substitute_power(rexp(p, q)).unwrap();
            agree(&sub(&(&a * &b)), &(&sub(&a) * &sub(&b)))?;
            agree(&sub(&(&a + &b)), &(&sub(&a) + &sub(&b)))
        })?,
        run_property("grade additivity", (shape(-3..4), shape(-3..4)), |(a, b)| {
            let (a, b) = (a.build(), b.build());
            prop_assert_eq!(a.mul(&b).unwrap().pi_grade(), a.pi_grade() + b.pi_grade());
            Ok(())
        })?,
    ];
    Ok(format!("{} x {PROPERTY_CASES} cases: {}", done.len(), done.join(", ")))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("full registry at order 40", criterion_1),
        ("lattice/divisor oracle equivalence", criterion_2),
        ("level-three ODEs and 4R sign flip", criterion_3),
        ("a^k closed forms", criterion_4),
        ("j-invariant", criterion_5),
        ("heat equation and triple product", criterion_6),
        ("sampled two-variable identities", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name} ({secs:.1} s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name} ({secs:.1} s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
