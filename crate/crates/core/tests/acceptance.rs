//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion does.
//!
//! Run with `cargo test -p omega-core --test acceptance -- --nocapture`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_rational::Ratio;
use omega_core::acm::ArithmeticCongruenceMonoid;
use omega_core::asymptotics::{fit_quasilinear, minimal_period, omega_series, DEFAULT_STABILITY_WINDOW};
use omega_core::block::{block_omega, minimal_zero_sum_sequences, FiniteAbelianGroup, ZeroSumSequence};
use omega_core::closed_forms::{
    generator_ordering_scan, interval_generator_omegas, omega_two_gen_from_factorization, IntervalParity,
    OrderingPattern, ResidueTable,
};
use omega_core::leamer::LeamerMonoid;
use omega_core::omega::{bullets, omega, omega_oracle, omega_value, DEFAULT_ORACLE_BUDGET, DEFAULT_SEARCH_BUDGET};
use omega_core::NumericalMonoid;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x0b1e_55ed;
const CASES: usize = 500;

type Outcome = Result<(), String>;

static CHECKS: AtomicU64 = AtomicU64::new(0);

fn nm(g: &[i64]) -> NumericalMonoid {
    NumericalMonoid::new(g).unwrap()
}

fn w(m: &NumericalMonoid, n: i64) -> u64 {
    omega_value(m, n, DEFAULT_SEARCH_BUDGET).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    CHECKS.fetch_add(1, Ordering::Relaxed);
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coords(m: &NumericalMonoid, n: i64) -> Vec<Vec<u64>> {
    bullets(m, n).unwrap().bullets.into_iter().map(|b| b.coords).collect()
}

fn golden_values() -> Outcome {
    let m = nm(&[6, 9, 20]);
    ensure(w(&m, 6) == 3, || "omega(6) in <6,9,20>".into())?;
    ensure(coords(&m, 6) == vec![vec![0, 0, 3], vec![0, 2, 0], vec![1, 0, 0]], || "bullets of 6".into())?;
    ensure(w(&m, 35) == 14, || "omega(35) in <6,9,20>".into())?;
    let mut expect = vec![
        vec![14, 0, 0], vec![11, 1, 0], vec![8, 3, 0], vec![5, 5, 0], vec![2, 7, 0],
        vec![0, 9, 0], vec![4, 0, 1], vec![1, 1, 1], vec![0, 3, 1], vec![0, 0, 4],
    ];
    expect.sort();
    ensure(coords(&m, 35) == expect, || "bullets of 35".into())?;

    let m = nm(&[3, 7]);
    ensure(w(&m, 9) == 3, || "omega(9) in <3,7>".into())?;
    ensure(coords(&m, 9) == vec![vec![0, 3], vec![3, 0]], || "bullets of 9".into())?;

    let m = nm(&[11, 13, 15]);
    for j in 0..=5u64 {
        let n = 58 + 11 * j as i64;
        let r = omega(&m, n).unwrap();
        let max: Vec<Vec<u64>> = r.maximal_bullets.into_iter().map(|b| b.coords).collect();
        ensure(r.omega == 11 + j && max == vec![vec![5 + j, 6, 0]], || {
            format!("<11,13,15> at {n}: omega {} maximal {max:?}", r.omega)
        })?;
    }

    let h = ArithmeticCongruenceMonoid::hilbert();
    ensure(h.omega(1225).unwrap().omega == 4, || "Hilbert omega(1225)".into())?;
    ensure(h.factorizations(441).unwrap().len() == 2, || "Hilbert 441 factorization count".into())?;

    let z3 = FiniteAbelianGroup::cyclic(3).unwrap();
    for (pairs, want) in [
        (vec![(vec![0], 1)], 1),
        (vec![(vec![1], 3)], 3),
        (vec![(vec![1], 1), (vec![2], 1)], 2),
        (vec![(vec![1], 3), (vec![2], 3)], 3),
    ] {
        let x = ZeroSumSequence::new(&z3, &pairs).unwrap();
        let got = block_omega(&z3, &x).unwrap().omega;
        ensure(got == want, || format!("Z3 omega of {pairs:?}: {got}, expected {want}"))?;
    }
    Ok(())
}

/// Every factorization `(a1, a2)` of `n` in `<n1, n2>`.
fn two_gen_factorizations(n1: i64, n2: i64, n: i64) -> Vec<(u64, u64)> {
    (0..=n / n2)
        .filter(|a2| (n - a2 * n2) % n1 == 0)
        .map(|a2| (((n - a2 * n2) / n1) as u64, a2 as u64))
        .collect()
}

fn closed_form_agreement() -> Outcome {
    let m = nm(&[3, 7]);
    let table = ResidueTable::build(3, 7).unwrap();
    ensure(table.a_of_r == vec![0, 5, 3], || format!("residue table {:?}", table.a_of_r))?;
    for n in (7..=500).filter(|&n| m.contains(n)) {
        let by_hand = (n / 3) as u64 + [0, 5, 3][(n % 3) as usize];
        let engine = w(&m, n);
        ensure(table.omega(n) == Ok(engine) && by_hand == engine, || format!("<3,7> at {n}"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = Vec::new();
    while pairs.len() < 20 {
        let n2: i64 = rng.gen_range(3..=40);
        let n1: i64 = rng.gen_range(2..n2);
        if gcd(n1, n2) == 1 && !pairs.contains(&(n1, n2)) {
            pairs.push((n1, n2));
        }
    }
    for (n1, n2) in pairs {
        let m = nm(&[n1, n2]);
        for n in (1..=n1 * n2).filter(|&n| m.contains(n)) {
            let engine = w(&m, n);
            for (a1, a2) in two_gen_factorizations(n1, n2, n) {
                let formula = omega_two_gen_from_factorization(n1 as u64, n2 as u64, a1, a2).unwrap();
                ensure(formula == engine, || {
                    format!("<{n1},{n2}> n={n} factorization ({a1},{a2}): formula {formula}, engine {engine}")
                })?;
            }
        }
    }
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn interval_closed_form() -> Outcome {
    for n in 2..=25u64 {
        for parity in [IntervalParity::Odd, IntervalParity::Even] {
            let closed = interval_generator_omegas(n, parity).unwrap();
            let gens: Vec<i64> = closed.iter().map(|&(g, _)| g as i64).collect();
            let m = nm(&gens);
            for (g, want) in closed {
                let got = w(&m, g as i64);
                ensure(got == want, || format!("n={n} {parity:?}: omega({g}) = {got}, closed form {want}"))?;
            }
        }
    }
    Ok(())
}

fn generator_fixed_points() -> Outcome {
    for n2 in 3..=30i64 {
        for n1 in (2..n2).filter(|&n1| gcd(n1, n2) == 1) {
            let m = nm(&[n1, n2]);
            let fixed: Vec<i64> = (1..=n1 * n2).filter(|&x| m.contains(x) && w(&m, x) == x as u64).collect();
            ensure(fixed == vec![n1, n2], || format!("<{n1},{n2}>: omega(x) = x exactly at {fixed:?}"))?;
        }
    }
    Ok(())
}

fn random_three_gen(rng: &mut ChaCha8Rng) -> NumericalMonoid {
    loop {
        let mut g: Vec<i64> = (2..=25).collect::<Vec<_>>().choose_multiple(rng, 3).copied().collect();
        g.sort();
        if let Ok(m) = NumericalMonoid::new(&g) {
            if m.generators().iter().map(|&x| x as i64).eq(g.iter().copied()) {
                return m;
            }
        }
    }
}

fn quasilinearity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut monoids = vec![nm(&[6, 9, 20]), nm(&[3, 7])];
    for _ in 0..10 {
        monoids.push(random_three_gen(&mut rng));
    }
    for m in monoids {
        let g = m.generators();
        let (n1, nk) = (g[0] as i64, *g.last().unwrap() as i64);
        // leaves room above the dissonance points seen for monoids of this size
        let horizon = 2 * n1 * nk + m.frobenius_number() + DEFAULT_STABILITY_WINDOW as i64 * n1;
        let series = omega_series(&m, 1, horizon).unwrap();
        let model = fit_quasilinear(&series, DEFAULT_STABILITY_WINDOW).map_err(|e| format!("{g:?}: {e}"))?;
        let tail = model.tail_start();
        let lookup: std::collections::HashMap<i64, u64> = series.entries.iter().copied().collect();
        for &(n, wn) in series.entries.iter().filter(|&&(n, _)| n >= tail && n + n1 <= horizon) {
            ensure(lookup.get(&(n + n1)) == Some(&(wn + 1)), || format!("{g:?}: omega({n} + {n1}) != omega({n}) + 1"))?;
        }
        let period = minimal_period(&model).period as i64;
        ensure(n1 % period == 0, || format!("{g:?}: period {period} does not divide {n1}"))?;

        let big_n = 10 * n1 * nk;
        let ratio = Ratio::new(w(&m, big_n) as i64, big_n);
        let diff = ratio - Ratio::new(1, n1);
        let gap = if diff < Ratio::from_integer(0) { -diff } else { diff };
        let bound = Ratio::new(model.max_intercept() + 1, big_n);
        ensure(gap <= bound, || format!("{g:?}: |omega(N)/N - 1/n1| = {gap} > {bound} at N = {big_n}"))?;
    }
    Ok(())
}

fn ordering_scan() -> Outcome {
    let census = generator_ordering_scan(50).unwrap();
    let hits = census.forbidden_hits();
    ensure(hits.is_empty(), || format!("forbidden orderings at {:?}", hits.first().map(|r| r.generators)))?;
    for (gens, omegas, pattern) in [([6, 8, 13], [3, 4, 7], "w1<w2<w3"), ([7, 8, 12], [5, 4, 4], "w2=w3<w1")] {
        let row = census.rows.iter().find(|r| r.generators == gens).ok_or("witness missing from census")?;
        ensure(row.omegas == omegas && row.pattern.to_string() == pattern, || {
            format!("{gens:?} classified as {:?} {}", row.omegas, row.pattern)
        })?;
    }
    ensure(OrderingPattern::all().len() == 13, || "weak orders on three values".into())
}

fn random_member(rng: &mut ChaCha8Rng, m: &NumericalMonoid, hi: i64) -> i64 {
    loop {
        let n = rng.gen_range(1..=hi);
        if m.contains(n) {
            return n;
        }
    }
}

/// A random product of one to three atoms, optionally times `0^zeros`.
fn random_block(rng: &mut ChaCha8Rng, atoms: &[ZeroSumSequence], zeros: u32, g: &FiniteAbelianGroup) -> ZeroSumSequence {
    let mut x = ZeroSumSequence::new(g, &[(g.tuple_of(0), zeros)]).unwrap();
    for _ in 0..rng.gen_range(1..=3) {
        x = x.product(atoms.choose(rng).unwrap());
    }
    x
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let monoids = [nm(&[3, 7]), nm(&[6, 9, 20]), nm(&[11, 13, 15])];
    let mut oracle_values = std::collections::HashMap::new();
    for _ in 0..CASES {
        let i = rng.gen_range(0..monoids.len());
        let m = &monoids[i];
        let n = random_member(&mut rng, m, 150);
        let oracle = *oracle_values
            .entry((i, n))
            .or_insert_with(|| omega_oracle(m, n, DEFAULT_ORACLE_BUDGET).unwrap());
        ensure(w(m, n) == oracle, || format!("{:?} at {n}: engine differs from oracle {oracle}", m.generators()))?;
    }

    for _ in 0..CASES {
        let m = monoids.choose(&mut rng).unwrap();
        let (a, b) = (random_member(&mut rng, m, 200), random_member(&mut rng, m, 200));
        ensure(w(m, a + b) <= w(m, a) + w(m, b), || format!("{:?}: omega({a} + {b})", m.generators()))?;
    }

    let h = ArithmeticCongruenceMonoid::hilbert();
    for _ in 0..CASES {
        let a = 4 * rng.gen_range(1..=1500u64) + 1;
        let b = 4 * rng.gen_range(1..=1500u64) + 1;
        let (wa, wb, wab) = (h.omega(a).unwrap().omega, h.omega(b).unwrap().omega, h.omega(a * b).unwrap().omega);
        ensure(wab <= wa + wb, || format!("Hilbert omega({a} * {b}) = {wab} > {wa} + {wb}"))?;
    }

    let groups: Vec<FiniteAbelianGroup> = [vec![3], vec![4], vec![2, 2], vec![5], vec![6]]
        .iter()
        .map(|f| FiniteAbelianGroup::new(f).unwrap())
        .collect();
    let atom_lists: Vec<Vec<ZeroSumSequence>> = groups.iter().map(|g| minimal_zero_sum_sequences(g).unwrap()).collect();
    for (g, atoms) in groups.iter().zip(&atom_lists) {
        for u in atoms {
            let got = block_omega(g, u).unwrap().omega;
            ensure(got == u.len(), || format!("{:?}: omega({}) = {got}", g.invariant_factors, u.display(g)))?;
        }
    }

    let small = [0, 1, 2];
    for _ in 0..CASES {
        let i = *small.choose(&mut rng).unwrap();
        let (g, atoms) = (&groups[i], &atom_lists[i]);
        let x = random_block(&mut rng, atoms, 0, g);
        let y = random_block(&mut rng, atoms, 0, g);
        let (wx, wy, wxy) = (block_omega(g, &x).unwrap().omega, block_omega(g, &y).unwrap().omega, block_omega(g, &x.product(&y)).unwrap().omega);
        ensure(wxy <= wx + wy, || format!("{:?}: omega({} {})", g.invariant_factors, x.display(g), y.display(g)))?;
    }

    for _ in 0..CASES {
        let i = rng.gen_range(0..groups.len());
        let (g, atoms) = (&groups[i], &atom_lists[i]);
        let nonzero: Vec<ZeroSumSequence> = atoms.iter().filter(|u| u.multiplicity(0) == 0).cloned().collect();
        let x = random_block(&mut rng, &nonzero, 0, g);
        let a = rng.gen_range(1..=3);
        let shifted = x.product(&ZeroSumSequence::new(g, &[(g.tuple_of(0), a)]).unwrap());
        let (wx, ws) = (block_omega(g, &x).unwrap().omega, block_omega(g, &shifted).unwrap().omega);
        ensure(ws == wx + a as u64, || format!("{:?}: omega(0^{a} {}) = {ws}, omega(x) = {wx}", g.invariant_factors, x.display(g)))?;
    }
    Ok(())
}

fn leamer_reproduction() -> Outcome {
    let l = LeamerMonoid::new(nm(&[13, 17, 22, 40]), 4, 100, 12).unwrap();
    let mut csv = String::from("n,k,irreducible\n");
    for p in l.points() {
        csv.push_str(&format!("{},{},{}\n", p.n, p.k, p.irreducible));
    }
    ensure(csv == include_str!("golden/leamer_13_17_22_40_s4_100x12.csv"), || "point cloud differs from snapshot".into())?;

    // brute force: membership by sieve, irreducibility by every split
    let mut gamma = vec![false; 200];
    gamma[0] = true;
    for v in 1..200 {
        gamma[v] = [13, 17, 22, 40].iter().any(|&g| v >= g && gamma[v - g]);
    }
    let member = |n: usize, k: usize| if k == 0 { n == 0 } else { (0..=k).all(|i| gamma[n + 4 * i]) };
    for p in l.points() {
        let (n, k) = (p.n as usize, p.k as usize);
        let split = (0..=n).any(|a| {
            (0..=k).any(|b| (a, b) != (0, 0) && (a, b) != (n, k) && member(a, b) && member(n - a, k - b))
        });
        let brute = (n, k) != (0, 0) && !split;
        ensure(brute == p.irreducible, || format!("({n}, {k}) classified {}", p.irreducible))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 golden values", golden_values),
        ("2 closed-form agreement", closed_form_agreement),
        ("3 interval closed form", interval_closed_form),
        ("4 generator fixed points", generator_fixed_points),
        ("5 quasilinearity", quasilinearity),
        ("6 ordering scan to 50", ordering_scan),
        ("7 property suites", property_suites),
        ("8 Leamer reproduction", leamer_reproduction),
    ];
    let mut failed = Vec::new();
    let mut total = Duration::ZERO;
    for (name, check) in criteria {
        let start = Instant::now();
        let before = CHECKS.load(Ordering::Relaxed);
        let outcome = check();
        let took = start.elapsed();
        let checks = CHECKS.load(Ordering::Relaxed) - before;
        total += took;
        match outcome {
            Ok(()) => println!("PASS  {name}  ({checks} checks, {took:.2?})"),
            Err(why) => {
                println!("FAIL  {name}  ({checks} checks, {took:.2?}): {why}");
                failed.push(name);
            }
        }
    }
    println!("acceptance: {} of 8 passed in {:.2?}", 8 - failed.len(), total);
    assert!(failed.is_empty(), "failed: {failed:?}");
}
