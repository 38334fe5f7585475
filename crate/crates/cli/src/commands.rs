use omega_core::acm::ArithmeticCongruenceMonoid;
use omega_core::asymptotics::{fit_quasilinear, minimal_period, omega_series_with_budget};
use omega_core::block::{block_omega_with_budget, BlockBullet, FiniteAbelianGroup, ZeroSumSequence};
use omega_core::closed_forms::{generator_ordering_scan, interval_generator_omegas, IntervalParity};
use omega_core::leamer::{LeamerMonoid, Point};
use omega_core::omega::{omega_value, omega_with_budget};
use omega_core::NumericalMonoid;
use serde_json::json;

use crate::parse;
use crate::report::Report;
use crate::{CliError, Parity, RunConfig};

type Out = Result<Report, CliError>;

pub fn monoid(gens: &str) -> Result<NumericalMonoid, CliError> {
    Ok(NumericalMonoid::new(&parse::list::<i64>(gens, "generator")?)?)
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn omega(cfg: &RunConfig, gens: &str, n: Option<i64>, range: Option<(i64, i64)>) -> Out {
    let m = monoid(gens)?;
    if let Some((lo, hi)) = range {
        let series = omega_series_with_budget(&m, lo, hi, cfg.search_budget)?;
        let mut r = Report::new("omega_series", &["n", "omega"], json!(series));
        r.summary.push(format!("generators {:?}, members in [{lo}, {hi}]: {}", m.generators(), series.entries.len()));
        for (n, w) in &series.entries {
            r.row(vec![n.to_string(), w.to_string()]);
        }
        return Ok(r);
    }
    let n = n.expect("clap enforces --n or a range");
    let res = omega_with_budget(&m, n, cfg.search_budget)?;
    let mut r = Report::new("omega", &["n", "omega"], json!(res));
    r.summary.push(format!("omega({n}) = {}", res.omega));
    r.summary.push(format!("{} bullets ({} maximal):", res.bullet_set.bullets.len(), res.maximal_bullets.len()));
    for b in &res.bullet_set.bullets {
        let mark = if b.length == res.omega { "  *" } else { "" };
        r.summary.push(format!("  {b}  length {}{mark}", b.length));
    }
    r.row(vec![n.to_string(), res.omega.to_string()]);
    Ok(r)
}

pub fn bullets(cfg: &RunConfig, gens: &str, n: i64) -> Out {
    let m = monoid(gens)?;
    let res = omega_with_budget(&m, n, cfg.search_budget)?;
    let mut headers: Vec<String> = (1..=m.embedding_dimension()).map(|i| format!("a{i}")).collect();
    headers.extend(["length".to_string(), "maximal".to_string()]);
    let mut r = Report::new("bullets", &[], json!(res.bullet_set));
    r.headers = headers;
    r.summary.push(format!("bullets of {n} in <{}>", join(m.generators())));
    for b in &res.bullet_set.bullets {
        let mut row: Vec<String> = b.coords.iter().map(|c| c.to_string()).collect();
        row.push(b.length.to_string());
        row.push(yes_no(b.length == res.omega));
        r.row(row);
    }
    Ok(r)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn quasi(cfg: &RunConfig, gens: &str, horizon: i64, window: u64) -> Out {
    let m = monoid(gens)?;
    let series = omega_series_with_budget(&m, 1, horizon, cfg.search_budget)?;
    let model = fit_quasilinear(&series, window)?;
    let period = minimal_period(&model);
    let n1 = m.multiplicity() as i64;
    let mut r = Report::new(
        "quasilinear_fit",
        &["n", "omega", "model", "residue"],
        json!({
            "generators": m.generators(),
            "model": model,
            "period": period,
            "series": series.entries,
        }),
    );
    r.summary.push(format!("omega(n) = floor(n/{n1}) + c[n mod {n1}] on <{}>", join(m.generators())));
    r.summary.push(format!("intercepts c = [{}]", join(&model.intercepts)));
    r.summary.push(format!("minimal period {} (n1 = {n1})", period.period));
    r.summary.push(match model.dissonance {
        Some(d) => format!("dissonance point {d}"),
        None => "model fits the whole series".into(),
    });
    r.summary.push(format!("certified on [{}, {}]", model.tail_start(), model.certified_through));
    for &(n, w) in &series.entries {
        r.row(vec![n.to_string(), w.to_string(), model.eval(n).to_string(), n.rem_euclid(n1).to_string()]);
    }
    Ok(r)
}

pub fn scan_orderings(bound: u64) -> Out {
    let census = generator_ordering_scan(bound)?;
    let counts = census.counts();
    let hits = census.forbidden_hits();
    let mut r = Report::new(
        "ordering_census",
        &["n1", "n2", "n3", "w1", "w2", "w3", "pattern"],
        json!({
            "bound": bound,
            "counts": counts.iter().map(|(p, c)| (p.to_string(), *c)).collect::<std::collections::BTreeMap<_, _>>(),
            "forbidden_hits": hits,
            "rows": census.rows,
        }),
    );
    r.summary.push(format!("{} monoids with generators up to {bound}", census.rows.len()));
    for (p, c) in &counts {
        let tag = if p.is_forbidden() { "  (forbidden)" } else { "" };
        r.summary.push(format!("  {p:<10} {c}{tag}"));
    }
    r.summary.push(format!("forbidden occurrences: {}", hits.len()));
    for row in &census.rows {
        let mut cells: Vec<String> = row.generators.iter().chain(&row.omegas).map(|v| v.to_string()).collect();
        cells.push(row.pattern.to_string());
        r.row(cells);
    }
    Ok(r)
}

pub fn interval(cfg: &RunConfig, n: u64, parity: Parity) -> Out {
    let parity = match parity {
        Parity::Odd => IntervalParity::Odd,
        Parity::Even => IntervalParity::Even,
    };
    let closed = interval_generator_omegas(n, parity)?;
    let gens: Vec<i64> = closed.iter().map(|&(g, _)| g as i64).collect();
    let m = NumericalMonoid::new(&gens)?;
    let mut rows = Vec::new();
    for &(g, w) in &closed {
        rows.push((g, w, omega_value(&m, g as i64, cfg.search_budget)?));
    }
    let mut r = Report::new(
        "interval",
        &["generator", "closed_form", "engine", "agree"],
        json!({
            "n": n,
            "parity": parity,
            "rows": rows.iter().map(|&(g, c, e)| json!({"generator": g, "closed_form": c, "engine": e})).collect::<Vec<_>>(),
        }),
    );
    r.summary.push(format!("interval monoid <{}>", join(&gens)));
    for (g, c, e) in rows {
        r.row(vec![g.to_string(), c.to_string(), e.to_string(), yes_no(c == e)]);
    }
    Ok(r)
}

fn block_bullet(group: &FiniteAbelianGroup, b: &BlockBullet) -> String {
    b.factors
        .iter()
        .map(|(u, c)| {
            let d = u.display(group);
            if *c == 1 {
                d
            } else {
                format!("({d})^{c}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

pub fn block(cfg: &RunConfig, group: &str, element: &str) -> Out {
    let factors = parse::list::<u32>(group, "invariant factor")?;
    let g = FiniteAbelianGroup::new(&factors)?;
    let x = ZeroSumSequence::new(&g, &parse::block(element, &g.invariant_factors)?)?;
    let res = block_omega_with_budget(&g, &x, cfg.search_budget)?;
    let shown: Vec<(String, u64, bool)> =
        res.bullets.iter().map(|b| (block_bullet(&g, b), b.length, b.length == res.omega)).collect();
    let mut r = Report::new(
        "block_omega",
        &["bullet", "length", "maximal"],
        json!({
            "group": g.invariant_factors,
            "element": x.to_pairs(&g),
            "omega": res.omega,
            "bullets": shown.iter().map(|(b, l, m)| json!({"bullet": b, "length": l, "maximal": m})).collect::<Vec<_>>(),
        }),
    );
    r.summary.push(format!("omega({}) = {}", x.display(&g), res.omega));
    for (b, l, m) in shown {
        r.row(vec![b, l.to_string(), yes_no(m)]);
    }
    Ok(r)
}

pub fn acm(cfg: &RunConfig, a: u64, b: u64, x: u64) -> Out {
    let m = ArithmeticCongruenceMonoid::new(a, b)?;
    let factorizations = m.factorizations(x)?;
    let res = m.omega_with_budget(x, cfg.search_budget)?;
    let star = |v: &[u64]| v.iter().map(|u| u.to_string()).collect::<Vec<_>>().join("*");
    let mut r = Report::new(
        "acm_omega",
        &["bullet", "length", "maximal"],
        json!({"a": a, "b": b, "factorizations": factorizations, "omega": res}),
    );
    r.summary.push(format!("M({a},{b}), x = {x}"));
    let shown: Vec<String> = factorizations.iter().map(|f| star(f)).collect();
    r.summary.push(format!("factorizations: {}", shown.join(", ")));
    r.summary.push(format!("omega({x}) = {}", res.omega));
    for bl in &res.bullets {
        r.row(vec![star(bl), bl.len().to_string(), yes_no(bl.len() as u64 == res.omega)]);
    }
    Ok(r)
}

fn point(p: &Point) -> String {
    format!("({};{})", p.0, p.1)
}

pub fn leamer(cfg: &RunConfig, gens: &str, s: u64, bounds: &str, at: Option<&str>) -> Out {
    let (n_max, k_max) = parse::pair(bounds, "box")?;
    let l = LeamerMonoid::new(monoid(gens)?, s, n_max, k_max)?;
    if let Some(at) = at {
        let x = parse::pair(at, "point")?;
        let res = l.omega_with_budget(x, cfg.search_budget)?;
        let mut r = Report::new("leamer_omega", &["bullet", "length", "maximal"], json!(res));
        r.summary.push(format!("omega{} = {} over {} irreducibles in the box", point(&x), res.omega, res.atom_count));
        for b in &res.bullets {
            let shown = b.iter().map(point).collect::<Vec<_>>().join("+");
            r.row(vec![shown, b.len().to_string(), yes_no(b.len() as u64 == res.omega)]);
        }
        return Ok(r);
    }
    let points = l.points();
    let census = l.irreducibles();
    let mut r = Report::new(
        "leamer_points",
        &["n", "k", "irreducible"],
        json!({"s": s, "box": [n_max, k_max], "points": points, "census": census}),
    );
    r.summary.push(format!("S^{s} of <{}> in box ({n_max}, {k_max})", join(l.gamma.generators())));
    r.summary.push(format!("{} points, {} irreducible", points.len(), census.irreducibles.len()));
    if let Some(bound) = census.structural_bound {
        r.summary.push(format!("irreducibles with k >= 2 have n <= {bound}"));
    }
    if !census.dense_region_reached {
        r.summary.push("box does not reach twice the Frobenius number".into());
    }
    for p in &points {
        r.row(vec![p.n.to_string(), p.k.to_string(), p.irreducible.to_string()]);
    }
    Ok(r)
}
