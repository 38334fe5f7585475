//! The golden suite behind `omega repro`: every recorded value is recomputed
//! and compared as text.

use omega_core::acm::ArithmeticCongruenceMonoid;
use omega_core::asymptotics::{fit_quasilinear, omega_series_with_budget, DEFAULT_STABILITY_WINDOW};
use omega_core::block::{block_omega_with_budget, FiniteAbelianGroup, ZeroSumSequence};
use omega_core::closed_forms::{generator_omegas, OrderingPattern};
use omega_core::leamer::LeamerMonoid;
use omega_core::omega::{bullets_with_budget, omega_oracle, omega_value, omega_with_budget};
use omega_core::{NumericalMonoid, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::Report;
use crate::RunConfig;

const LEAMER_SNAPSHOT: &str = include_str!("../../core/tests/golden/leamer_13_17_22_40_s4_100x12.csv");

struct Suite {
    rows: Vec<(String, String, String)>,
}

impl Suite {
    fn check(&mut self, name: impl Into<String>, expected: impl Into<String>, got: Result<String>) {
        let got = got.unwrap_or_else(|e| format!("error: {e}"));
        self.rows.push((name.into(), expected.into(), got));
    }
}

fn nm(g: &[i64]) -> NumericalMonoid {
    NumericalMonoid::new(g).unwrap()
}

fn bullet_list(m: &NumericalMonoid, n: i64, budget: u64) -> Result<String> {
    let set = bullets_with_budget(m, n, budget)?;
    Ok(set.bullets.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "))
}

pub fn run(cfg: &RunConfig) -> Report {
    let budget = cfg.search_budget;
    let mut s = Suite { rows: Vec::new() };

    let m = nm(&[6, 9, 20]);
    s.check("<6,9,20> omega(6)", "3", omega_value(&m, 6, budget).map(|w| w.to_string()));
    s.check("<6,9,20> bullets(6)", "(0,0,3) (0,2,0) (1,0,0)", bullet_list(&m, 6, budget));
    s.check("<6,9,20> omega(35)", "14", omega_value(&m, 35, budget).map(|w| w.to_string()));
    s.check(
        "<6,9,20> bullets(35)",
        "(0,0,4) (0,3,1) (0,9,0) (1,1,1) (2,7,0) (4,0,1) (5,5,0) (8,3,0) (11,1,0) (14,0,0)",
        bullet_list(&m, 35, budget),
    );
    let m = nm(&[3, 7]);
    s.check("<3,7> bullets(9)", "(0,3) (3,0)", bullet_list(&m, 9, budget));
    s.check("<3,7> omega(9)", "3", omega_value(&m, 9, budget).map(|w| w.to_string()));
    s.check(
        "<3,7> intercepts",
        "0,5,3",
        omega_series_with_budget(&m, 1, 200, budget)
            .and_then(|series| fit_quasilinear(&series, DEFAULT_STABILITY_WINDOW))
            .map(|f| f.intercepts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")),
    );
    let m = nm(&[11, 13, 15]);
    for j in 0..=5 {
        let n = 58 + 11 * j;
        let got = omega_with_budget(&m, n, budget).map(|r| {
            let max: Vec<String> = r.maximal_bullets.iter().map(|b| b.to_string()).collect();
            format!("{} {}", r.omega, max.join(" "))
        });
        s.check(format!("<11,13,15> omega({n})"), format!("{} ({},6,0)", 11 + j, 5 + j), got);
    }

    let h = ArithmeticCongruenceMonoid::hilbert();
    s.check("H omega(1225)", "4", h.omega_with_budget(1225, budget).map(|r| r.omega.to_string()));
    s.check(
        "H factorizations(441)",
        "9*49 21*21",
        h.factorizations(441).map(|fs| {
            fs.iter()
                .map(|f| f.iter().map(|u| u.to_string()).collect::<Vec<_>>().join("*"))
                .collect::<Vec<_>>()
                .join(" ")
        }),
    );

    let z3 = FiniteAbelianGroup::cyclic(3).unwrap();
    for (label, pairs, w) in [
        ("0", vec![(vec![0], 1)], 1),
        ("g^3", vec![(vec![1], 3)], 3),
        ("g(-g)", vec![(vec![1], 1), (vec![2], 1)], 2),
        ("g^3(-g)^3", vec![(vec![1], 3), (vec![2], 3)], 3),
    ] {
        let got = ZeroSumSequence::new(&z3, &pairs)
            .and_then(|x| block_omega_with_budget(&z3, &x, budget))
            .map(|r| r.omega.to_string());
        s.check(format!("Z3 omega({label})"), w.to_string(), got);
    }

    for (t, w) in [([6, 8, 13], [3, 4, 7]), ([7, 8, 12], [5, 4, 4])] {
        let pattern = OrderingPattern::classify(w);
        let got = generator_omegas(t).map(|o| match o {
            Some(o) => format!("{o:?} {}", OrderingPattern::classify(o)),
            None => "not minimal".into(),
        });
        s.check(format!("generator omegas <{},{},{}>", t[0], t[1], t[2]), format!("{w:?} {pattern}"), got);
    }

    let leamer = LeamerMonoid::new(nm(&[13, 17, 22, 40]), 4, 100, 12).map(|l| {
        let mut csv = String::from("n,k,irreducible\n");
        for p in l.points() {
            csv.push_str(&format!("{},{},{}\n", p.n, p.k, p.irreducible));
        }
        if csv == LEAMER_SNAPSHOT {
            "snapshot".to_string()
        } else {
            "differs from snapshot".to_string()
        }
    });
    s.check("Leamer S^4 <13,17,22,40> box (100,12)", "snapshot", leamer);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for gens in [vec![3, 7], vec![6, 9, 20], vec![11, 13, 15]] {
        let m = nm(&gens);
        for _ in 0..3 {
            let n = loop {
                let n = rng.gen_range(1..=60);
                if m.contains(n) {
                    break n;
                }
            };
            let oracle = omega_oracle(&m, n, cfg.oracle_budget).map(|w| w.to_string());
            let engine = omega_value(&m, n, budget).map(|w| w.to_string());
            let expected = oracle.unwrap_or_else(|e| format!("error: {e}"));
            s.check(format!("<{}> omega({n}) vs oracle", join(&gens)), expected, engine);
        }
    }

    let mut r = Report::new("repro", &["check", "expected", "got", "status"], json!(null));
    let mut items = Vec::new();
    for (name, expected, got) in s.rows {
        let ok = expected == got;
        items.push(json!({"check": name, "expected": expected, "got": got, "pass": ok}));
        r.row(vec![name, expected, got, if ok { "PASS" } else { "FAIL" }.into()]);
    }
    let failed = items.iter().filter(|i| i["pass"] == false).count();
    r.summary.push(format!("{} checks, {} failed", items.len(), failed));
    r.data = json!(items);
    r
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
