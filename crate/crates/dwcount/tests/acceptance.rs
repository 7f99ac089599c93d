//! Acceptance suite: closed-form families, randomized consistency
//! sweeps, oracle agreement, and the cyclotomic kernel, each with a
//! pinned exactness contract and time budget. One PASS/FAIL line is
//! printed per criterion (visible with `--nocapture`).

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dwcount::{
    approx_dw_float, brute_count_homs, count_homs, cyclotomic_polynomial, degree_count_table,
    dw_all, dw_all_collapsed, validate_seifert, verify_consistency, CycloValue, SeifertData,
    WorkBudget,
};

fn conclude(name: &str, started: Instant, bound: Duration, failures: Vec<String>) {
    let elapsed = started.elapsed();
    let ok = failures.is_empty() && elapsed <= bound;
    println!(
        "acceptance {name}: {} ({elapsed:?} elapsed, budget {bound:?})",
        if ok { "PASS" } else { "FAIL" }
    );
    for f in &failures {
        println!("  - {f}");
    }
    assert!(failures.is_empty(), "{name}: {failures:?}");
    assert!(
        elapsed <= bound,
        "{name} exceeded its time budget: {elapsed:?} > {bound:?}"
    );
}

/// Deterministic random corpus within the sweep bounds
/// (g <= 3, r <= 4, a_j <= 6, |b_j| <= 6).
fn random_manifolds(seed: u64, count: usize) -> Vec<SeifertData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let genus = rng.gen_range(0..=3i64);
            let r = rng.gen_range(0..=4usize);
            let pairs: Vec<(i64, i64)> = (0..r)
                .map(|_| (rng.gen_range(1..=6i64), rng.gen_range(-6..=6i64)))
                .collect();
            validate_seifert(genus, &pairs).expect("generator respects the domain")
        })
        .collect()
}

/// The sweep shared by criteria 5, 6, and 8.
fn sweep_corpus() -> Vec<SeifertData> {
    random_manifolds(0x5eed_d311, 50)
}

fn exact_rational(n: u64, numerator: i64, denominator: u64) -> CycloValue {
    let mut coeffs = vec![BigInt::zero(); n as usize];
    coeffs[0] = BigInt::from(numerator);
    CycloValue::from_coeffs(n, coeffs, BigUint::from(denominator)).unwrap()
}

#[test]
fn criterion_1_sphere_family() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let budget = WorkBudget::default();
    let sphere = validate_seifert(0, &[(1, 1)]).unwrap();

    for m in 1..=8u64 {
        let dw = dw_all(&sphere, m, &budget).unwrap();
        let expected = exact_rational(m * m, 1, m).reduce();
        for l in 0..m {
            if dw.get(l).reduce() != expected {
                failures.push(format!("m={m} l={l}: Z^l != 1/{m}"));
            }
        }
        let counts = degree_count_table(&sphere, m, &budget).unwrap();
        if counts.counts()[0] != BigUint::one() {
            failures.push(format!("m={m}: count at k=0 is {}", counts.counts()[0]));
        }
        if counts.counts()[1..].iter().any(|c| !c.is_zero()) {
            failures.push(format!("m={m}: nonzero count off the 0 class"));
        }
    }

    conclude("1 (sphere family)", started, Duration::from_secs(1), failures);
}

#[test]
fn criterion_2_projective_space() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let budget = WorkBudget::default();
    let rp3 = validate_seifert(0, &[(1, 2)]).unwrap();

    let dw = dw_all(&rp3, 2, &budget).unwrap();
    if dw.get(0).to_integer().unwrap() != BigInt::one() {
        failures.push("Z^0 != 1".into());
    }
    if !dw.get(1).to_integer().unwrap().is_zero() {
        failures.push("Z^1 != 0".into());
    }
    let counts = degree_count_table(&rp3, 2, &budget).unwrap();
    if counts.counts() != [BigUint::one(), BigUint::one()] {
        failures.push(format!("counts {:?} != [1, 1]", counts.counts()));
    }

    conclude("2 (RP^3)", started, Duration::from_secs(1), failures);
}

#[test]
fn criterion_3_trivial_fiber_family() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let budget = WorkBudget::default();

    for g in 1..=3i64 {
        for m in 2..=6u64 {
            let manifold = validate_seifert(g, &[]).unwrap();
            let expected_z = BigInt::from(m).pow(2 * g as u64);
            let dw = dw_all(&manifold, m, &budget).unwrap();
            for l in 0..m {
                match dw.get(l).to_integer() {
                    Ok(v) if v == expected_z => {}
                    other => failures.push(format!("g={g} m={m} l={l}: {other:?}")),
                }
            }
            let counts = degree_count_table(&manifold, m, &budget).unwrap();
            let expected_total = BigUint::from(m).pow(2 * g as u64 + 1);
            if counts.counts()[0] != expected_total
                || counts.counts()[1..].iter().any(|c| !c.is_zero())
            {
                failures.push(format!("g={g} m={m}: counts {:?}", counts.counts()));
            }
        }
    }

    conclude(
        "3 (trivial-fiber family)",
        started,
        Duration::from_secs(5),
        failures,
    );
}

#[test]
fn criterion_4_base_case_m1() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let budget = WorkBudget::default();

    for manifold in random_manifolds(0xba5e_ca5e, 20) {
        let counts = degree_count_table(&manifold, 1, &budget).unwrap();
        if counts.counts() != [BigUint::one()] {
            failures.push(format!("{manifold}: counts {:?} != [1]", counts.counts()));
        }
    }

    conclude("4 (m = 1 base case)", started, Duration::from_secs(1), failures);
}

#[test]
fn criterion_5_consistency_sweep() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let budget = WorkBudget::default();

    for manifold in sweep_corpus() {
        for m in 2..=8u64 {
            let report = verify_consistency(&manifold, m, &budget).unwrap();
            if !report.all_pass() {
                failures.push(format!("{manifold} m={m}: {:?}", report.failures));
            }
        }
    }

    conclude(
        "5 (consistency sweep)",
        started,
        Duration::from_secs(60),
        failures,
    );
}

#[test]
fn criterion_6_oracle_agreement() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let budget = WorkBudget::default();

    for manifold in sweep_corpus() {
        for m in 2..=6u64 {
            let brute = brute_count_homs(&manifold, m, &budget).unwrap();
            let closed = count_homs(&manifold, m).unwrap();
            if brute != closed {
                failures.push(format!("{manifold} m={m}: brute {brute} != closed {closed}"));
            }
            let dw = dw_all(&manifold, m, &budget).unwrap();
            for l in 0..m {
                let numeric = approx_dw_float(&manifold, m, l, &budget).unwrap();
                let exact = dw.get(l).approx();
                let gap = (numeric - exact).norm();
                if gap >= 1e-6 {
                    failures.push(format!("{manifold} m={m} l={l}: float gap {gap:.3e}"));
                }
            }
        }
    }

    conclude(
        "6 (oracle agreement)",
        started,
        Duration::from_secs(60),
        failures,
    );
}

#[test]
fn criterion_7_cyclotomic_kernel() {
    let started = Instant::now();
    let mut failures = Vec::new();

    // geometric-sum law: extract(sum_e zeta_N^(c e)) = N when N | c, else 0
    for n in 1..=25u64 {
        for c in 0..n {
            let sum = (0..n as i64).fold(CycloValue::zero(n).unwrap(), |acc, e| {
                acc.add(&CycloValue::root_power(n, c as i64 * e).unwrap())
                    .unwrap()
            });
            let expected = if c == 0 {
                BigInt::from(n)
            } else {
                BigInt::zero()
            };
            match sum.to_integer() {
                Ok(v) if v == expected => {}
                other => failures.push(format!("geometric sum N={n} c={c}: {other:?}")),
            }
        }
    }

    // Phi_N divides x^N - 1 with zero remainder, and deg Phi_N = phi(N)
    for n in 1..=100u64 {
        let phi = cyclotomic_polynomial(n).unwrap();
        if (phi.len() - 1) as u64 != dwcount::euler_phi(n) {
            failures.push(format!("deg Phi_{n} != phi({n})"));
        }
        let mut power = vec![BigInt::zero(); n as usize + 1];
        power[0] = BigInt::from(-1);
        power[n as usize] = BigInt::one();
        if !poly_rem_is_zero(&power, &phi) {
            failures.push(format!("Phi_{n} does not divide x^{n} - 1"));
        }
    }

    // ring axioms on 200 random element triples, N <= 16
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1c_10f0);
    for trial in 0..200 {
        let n = rng.gen_range(1..=16u64);
        let mut draw = || {
            let coeffs = (0..n).map(|_| BigInt::from(rng.gen_range(-5..=5i64))).collect();
            CycloValue::from_coeffs(n, coeffs, BigUint::from(rng.gen_range(1..=4u32))).unwrap()
        };
        let (a, b, c) = (draw(), draw(), draw());
        let comm = a
            .mul(&b)
            .unwrap()
            .semantically_equal(&b.mul(&a).unwrap())
            .unwrap();
        let assoc = a
            .mul(&b)
            .unwrap()
            .mul(&c)
            .unwrap()
            .semantically_equal(&a.mul(&b.mul(&c).unwrap()).unwrap())
            .unwrap();
        let dist = a
            .mul(&b.add(&c).unwrap())
            .unwrap()
            .semantically_equal(&a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap())
            .unwrap();
        if !(comm && assoc && dist) {
            failures.push(format!(
                "ring axiom failure on trial {trial} (N={n}): comm={comm} assoc={assoc} dist={dist}"
            ));
        }
    }

    conclude(
        "7 (cyclotomic kernel)",
        started,
        Duration::from_secs(10),
        failures,
    );
}

#[test]
fn criterion_8_collapsed_route() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let budget = WorkBudget::default();

    for manifold in sweep_corpus() {
        for m in 2..=8u64 {
            let literal = dw_all(&manifold, m, &budget).unwrap();
            let collapsed = dw_all_collapsed(&manifold, m, &budget).unwrap();
            for l in 0..m {
                let lhs = literal.get(l).reduce();
                let rhs = collapsed.get(l).reduce();
                if lhs != rhs {
                    failures.push(format!("{manifold} m={m} l={l}: routes diverge"));
                }
            }
        }
    }

    conclude(
        "8 (collapsed s-sum route)",
        started,
        Duration::from_secs(60),
        failures,
    );
}

/// Test-local polynomial remainder by a monic divisor, independent of
/// the library's internals.
fn poly_rem_is_zero(num: &[BigInt], den: &[BigInt]) -> bool {
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    while rem.len() > dd {
        let lead = rem.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let k = rem.len() - dd;
        for i in 0..dd {
            let t = &lead * &den[i];
            rem[k + i] -= t;
        }
    }
    rem.iter().all(|c| c.is_zero())
}
