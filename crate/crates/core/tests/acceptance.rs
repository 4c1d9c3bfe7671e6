//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails or overruns its time limit.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::{adjacency, brute_chi, connected_graphs, proper_chromatic, random_connected};
use condcolor::generators::*;
use condcolor::ops::{cartesian_product, join};
use condcolor::oracles::*;
use condcolor::{
    chi_r, enumerate_partitions, feasible, is_uniquely_colorable, lower_bound, verify, ChiCheck,
    Graph, Limits,
};

const FREE: Limits = Limits { timeout: None };

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Every instance a criterion solved, keyed by a readable name, with the
/// orders it was solved at. The property criterion sweeps these.
#[derive(Default)]
struct Touched {
    instances: BTreeMap<String, (Graph, Vec<usize>)>,
}

impl Touched {
    fn add(&mut self, name: impl Into<String>, g: &Graph, r: usize) {
        let entry = self
            .instances
            .entry(name.into())
            .or_insert_with(|| (g.clone(), Vec::new()));
        if !entry.1.contains(&r) {
            entry.1.push(r);
        }
    }
}

fn chi(g: &Graph, r: usize) -> Result<usize, String> {
    let res = chi_r(g, r, FREE).map_err(|e| e.to_string())?;
    match verify(g, &res.witness, r) {
        Ok(v) if v.is_ok() => Ok(res.chi_r),
        other => Err(format!(
            "uncertified witness for {g:?} at r = {r}: {other:?}"
        )),
    }
}

fn named_small(name: &str) -> Graph {
    match name {
        "K2" => complete(2),
        "K3" => complete(3),
        "P3" => path(3),
        "P4" => path(4),
        "P5" => path(5),
        "C4" => cycle(4),
        "C5" => cycle(5),
        "K13" => complete_bipartite(1, 3),
        _ => unreachable!("{name}"),
    }
    .unwrap()
}

fn unordered_pairs<'a>(names: &'a [&'a str]) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
    names
        .iter()
        .enumerate()
        .flat_map(move |(i, a)| names[i..].iter().map(move |b| (*a, *b)))
}

fn oracle_equivalence(t: &mut Touched) -> Outcome {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 1..=6 {
        for (i, g) in connected_graphs(n).into_iter().enumerate() {
            graphs.push((format!("iso{n}-{i}"), g));
        }
    }
    for n in 3..=7 {
        graphs.push((format!("C{n}"), cycle(n).unwrap()));
        graphs.push((format!("P{n}"), path(n).unwrap()));
        graphs.push((format!("K{n}"), complete(n).unwrap()));
    }
    graphs.push(("W5".into(), wheel(5).unwrap()));
    graphs.push(("W6".into(), wheel(6).unwrap()));
    graphs.push(("W7".into(), wheel(7).unwrap()));
    graphs.push(("K34".into(), complete_bipartite(3, 4).unwrap()));
    graphs.push(("K25".into(), complete_bipartite(2, 5).unwrap()));
    for k in 1..=5 {
        graphs.push((
            format!("chain{k}"),
            prop2_chain(k, EdgeChoice::Last).unwrap(),
        ));
    }
    for seed in 0..60u64 {
        let p = [0.3, 0.5, 0.7][seed as usize % 3];
        graphs.push((format!("gnp7-{seed}"), random_connected(7, p, seed)));
    }
    for seed in 0..10u64 {
        graphs.push((format!("tree7-{seed}"), random_tree(7, seed).unwrap()));
    }
    let mut checks = 0;
    for (name, g) in &graphs {
        let adj = adjacency(g);
        for r in 1..=3 {
            let solver = chi(g, r)?;
            let brute = brute_chi(&adj, r);
            ensure!(
                solver == brute,
                "{name} r = {r}: solver {solver}, enumeration {brute}"
            );
            t.add(name.clone(), g, r);
            checks += 1;
        }
    }
    Ok(format!(
        "{} graphs, {checks} (graph, r) pairs agree",
        graphs.len()
    ))
}

fn paths(t: &mut Touched) -> Outcome {
    for n in 3..=15 {
        let g = path(n).unwrap();
        let value = chi(&g, 2)?;
        ensure!(value == 3, "chi_2(P_{n}) = {value}");
        let res = is_uniquely_colorable(&g, 2, FREE).map_err(|e| e.to_string())?;
        ensure!(
            res.k == 3 && res.unique,
            "P_{n} not uniquely (3,2)-colorable: {res:?}"
        );
        t.add(format!("P{n}"), &g, 2);
    }
    Ok("chi_2(P_n) = 3 and unique for n in 3..=15".into())
}

fn gears(t: &mut Touched) -> Outcome {
    let mut rows = 0;
    for n in 3..=8 {
        let g = gear(n).unwrap();
        for r in 2..=6 {
            let p = predict_gear(n, r, FREE).map_err(|e| e.to_string())?;
            let predicted = p
                .int_value()
                .filter(|_| p.applicable)
                .ok_or("gear prediction not applicable")?;
            let observed = chi(&g, r)?;
            ensure!(
                observed == predicted,
                "gear({n}) r = {r}: solver {observed}, formula {predicted}"
            );
            t.add(format!("gear{n}"), &g, r);
            rows += 1;
        }
    }
    for n in 3..=12 {
        let verdict = verify(&gear(n).unwrap(), &gear_witness_coloring(n).unwrap(), 2)
            .map_err(|e| e.to_string())?;
        ensure!(
            verdict.is_ok(),
            "explicit (4,2)-coloring of gear({n}) fails: {verdict:?}"
        );
    }
    Ok(format!(
        "{rows} (n, r) points equal; explicit witness verified for n in 3..=12"
    ))
}

fn wheels(t: &mut Touched) -> Outcome {
    let mut low = 0;
    let mut high = 0;
    for n in 4..=9 {
        let g = wheel(n).unwrap();
        for r in 3..=5 {
            let rim = chi(&cycle(n - 1).unwrap(), r)?;
            let p = predict_wheel(n, r, FREE).map_err(|e| e.to_string())?;
            ensure!(
                p.applicable,
                "wheel prediction not applicable at n = {n}, r = {r}"
            );
            let predicted = p.int_value().unwrap();
            let expected = if r <= rim {
                low += 1;
                rim + 1
            } else {
                high += 1;
                r.min(n - 1) + 1
            };
            ensure!(
                predicted == expected,
                "oracle branch disagrees at n = {n}, r = {r}"
            );
            let observed = chi(&g, r)?;
            ensure!(
                observed == predicted,
                "W_{n} r = {r}: solver {observed}, formula {predicted}"
            );
            t.add(format!("W{n}"), &g, r);
            t.add(format!("C{}", n - 1), &cycle(n - 1).unwrap(), r);
        }
    }
    ensure!(
        low > 0 && high > 0,
        "only one branch exercised ({low}/{high})"
    );
    Ok(format!(
        "18 points equal; {low} on the r <= chi_r(C_(n-1)) branch, {high} on the other"
    ))
}

fn line_graphs(t: &mut Touched) -> Outcome {
    let deep = line_of_kary_tree(2, 3).unwrap();
    ensure!(deep.order() == 14, "L(T) has {} vertices", deep.order());
    for (r, expected) in [(2, 3), (4, 5)] {
        let p = predict_line_kary(2, 3, r, ShallowTrees::Excluded).map_err(|e| e.to_string())?;
        ensure!(
            p.applicable && p.int_value() == Some(expected),
            "prediction {p:?}"
        );
        let observed = chi(&deep, r)?;
        ensure!(
            observed == expected,
            "chi_{r}(L(T)) = {observed}, expected {expected}"
        );
        t.add("L(T2,3)", &deep, r);
    }
    let shallow = line_of_kary_tree(2, 2).unwrap();
    let delta = shallow.max_degree();
    ensure!(delta == 3, "height-2 line graph has max degree {delta}");
    let mut observed = Vec::new();
    for r in [delta, 4] {
        let p = predict_line_kary(2, 2, r, ShallowTrees::Flagged).map_err(|e| e.to_string())?;
        let value = chi(&shallow, r)?;
        observed.push(format!(
            "r = {r}: observed {value}, flagged prediction {}",
            p.int_value().map_or("none".to_owned(), |v| v.to_string())
        ));
        ensure!(
            p.int_value() != Some(value),
            "height 2 unexpectedly matches at r = {r}"
        );
        t.add("L(T2,2)", &shallow, r);
    }
    Ok(format!(
        "h = 3: chi_2 = 3, chi_4 = 5; h = 2 (Delta = {delta}) recorded mismatch: {}",
        observed.join("; ")
    ))
}

fn joins(t: &mut Touched) -> Outcome {
    let names = ["K2", "P3", "P4", "C4", "C5", "K3"];
    let mut rows = 0;
    for (a, b) in unordered_pairs(&names) {
        let (g1, g2) = (named_small(a), named_small(b));
        let k1 = chi(&g1, 1)?.min(chi(&g2, 1)?);
        let j = join(&g1, &g2);
        for r in 1..=k1 + 1 {
            let p = predict_join(&g1, &g2, r, FREE).map_err(|e| e.to_string())?;
            ensure!(
                p.applicable,
                "join prediction not applicable for {a}+{b}, r = {r}"
            );
            let observed = chi(&j, r)?;
            ensure!(
                Some(observed) == p.int_value(),
                "{a}+{b} r = {r}: solver {observed}, formula {:?}",
                p.int_value()
            );
            t.add(format!("{a}+{b}"), &j, r);
            rows += 1;
        }
    }
    Ok(format!("{rows} (pair, r) points equal"))
}

fn bipartite(t: &mut Touched) -> Outcome {
    let mut rows = 0;
    for m in 1..=4 {
        for n in m..=4 {
            let g = complete_bipartite(m, n).unwrap();
            for r in 2..=m.min(n) {
                let p = predict_bipartite_common(&g, r);
                ensure!(
                    p.applicable && p.int_value() == Some(2 * r),
                    "prediction {p:?}"
                );
                let observed = chi(&g, r)?;
                ensure!(observed == 2 * r, "K_({m},{n}) r = {r}: solver {observed}");
                t.add(format!("K{m},{n}"), &g, r);
                rows += 1;
            }
        }
    }
    Ok(format!("{rows} (m, n, r) points equal 2r"))
}

fn tree_joins(t: &mut Touched) -> Outcome {
    let names = ["P3", "P4", "P5", "K13"];
    let mut rows = 0;
    for (a, b) in unordered_pairs(&names) {
        let (t1, t2) = (named_small(a), named_small(b));
        let p = predict_tree_join(&t1, &t2, 4);
        ensure!(p.applicable && p.int_value() == Some(6), "prediction {p:?}");
        let j = join(&t1, &t2);
        let observed = chi(&j, 4)?;
        ensure!(observed == 6, "chi_4({a}+{b}) = {observed}");
        t.add(format!("{a}+{b}"), &j, 4);
        rows += 1;
    }
    Ok(format!("{rows} tree pairs give chi_4 = 6"))
}

fn products(t: &mut Touched) -> Outcome {
    let names = ["K2", "K3", "P3", "C4"];
    let mut rows = 0;
    let mut tight = false;
    for a in names {
        for b in names {
            let (g1, g2) = (named_small(a), named_small(b));
            let prod = cartesian_product(&g1, &g2);
            for r in 1..=g1.min_degree() + g2.min_degree() {
                let p = predict_product_bound(&g1, &g2, r, FREE).map_err(|e| e.to_string())?;
                let bound = p
                    .int_value()
                    .filter(|_| p.applicable)
                    .ok_or("bound not applicable")?;
                let observed = chi(&prod, r)?;
                ensure!(
                    observed <= bound,
                    "{a}x{b} r = {r}: solver {observed} > bound {bound}"
                );
                if (a, b, r) == ("K2", "K2", 2) {
                    tight = observed == bound;
                }
                t.add(format!("{a}x{b}"), &prod, r);
                rows += 1;
            }
        }
    }
    ensure!(tight, "K2 x K2 at r = 2 is not tight");
    Ok(format!(
        "{rows} (pair, r) points within the bound; K2 x K2 tight at 4"
    ))
}

fn uniqueness(t: &mut Touched) -> Outcome {
    for k in 1..=8 {
        for choice in [
            EdgeChoice::First,
            EdgeChoice::Last,
            EdgeChoice::Seeded(k as u64),
        ] {
            let g = prop2_chain(k, choice).unwrap();
            let res = is_uniquely_colorable(&g, 2, FREE).map_err(|e| e.to_string())?;
            ensure!(
                res.k == 3 && res.unique,
                "chain k = {k} {choice:?}: {res:?}"
            );
            let p = predict_uniqueness(&g, 2, FamilyHint::TriangleChain, FREE)
                .map_err(|e| e.to_string())?;
            ensure!(
                p.compare(res.k, Some(res.unique)) == Some(Match::Equal),
                "chain oracle {p:?}"
            );
            t.add(format!("chain{k}-{choice:?}"), &g, 2);
        }
    }
    for n in 2..=6 {
        let g = complete(n).unwrap();
        let res = is_uniquely_colorable(&g, n - 1, FREE).map_err(|e| e.to_string())?;
        ensure!(res.k == n && res.unique, "K_{n}: {res:?}");
        t.add(format!("K{n}"), &g, n - 1);
    }
    let mut trees = 0;
    let mut seed = 0u64;
    while trees < 50 {
        let n = 5 + (seed % 5) as usize;
        let g = random_tree(n, seed).unwrap();
        seed += 1;
        if g.is_path() || chi(&g, 2)? == n {
            continue;
        }
        let res = is_uniquely_colorable(&g, 2, FREE).map_err(|e| e.to_string())?;
        ensure!(
            !res.unique,
            "random tree n = {n} seed = {} is uniquely colorable",
            seed - 1
        );
        let p = predict_uniqueness(&g, 2, FamilyHint::Tree, FREE).map_err(|e| e.to_string())?;
        ensure!(
            p.compare(res.k, Some(res.unique)) == Some(Match::Equal),
            "tree oracle {p:?}"
        );
        t.add(format!("tree{n}-{}", seed - 1), &g, 2);
        trees += 1;
    }
    Ok(format!(
        "chains k in 1..=8 (3 policies), K_2..K_6, {trees} random trees (seeds 0..{seed})"
    ))
}

fn properties(t: &mut Touched) -> Outcome {
    let mut checked = 0;
    for (name, (g, touched)) in &t.instances {
        let n = g.order();
        let delta = g.max_degree();
        let proper = proper_chromatic(&adjacency(g));
        let mut by_order = Vec::new();
        for r in 1..=delta.max(1) + 1 {
            let res = chi_r(g, r, FREE).map_err(|e| e.to_string())?;
            ensure!(
                res.chi_r > r.min(delta),
                "{name}: lower bound violated at r = {r}"
            );
            ensure!(
                lower_bound(g, r) <= res.chi_r,
                "{name}: computed lower bound too high at r = {r}"
            );
            ensure!(
                res.witness.used_colors() == res.chi_r,
                "{name}: witness not surjective at r = {r}"
            );
            by_order.push(res.chi_r);
        }
        ensure!(
            by_order[0] == proper,
            "{name}: chi_1 = {} but chi = {proper}",
            by_order[0]
        );
        ensure!(
            by_order.windows(2).all(|w| w[0] <= w[1]),
            "{name}: not monotone in r: {by_order:?}"
        );
        ensure!(by_order.iter().all(|&c| c <= n), "{name}: chi_r exceeds n");
        let saturated = by_order[delta.max(1) - 1];
        ensure!(
            by_order[delta.max(1)..].iter().all(|&c| c == saturated),
            "{name}: no saturation at Delta"
        );
        for &r in touched {
            let minimum = by_order[r.min(delta.max(1) + 1) - 1];
            for k in minimum..=n {
                let found = feasible(g, k, r, FREE).map_err(|e| e.to_string())?;
                ensure!(
                    found.is_some(),
                    "{name}: feasible at {minimum} but not at {k}, r = {r}"
                );
            }
            if n <= 10 {
                let res = enumerate_partitions(g, minimum, r, 500, ChiCheck::Trusted, FREE)
                    .map_err(|e| e.to_string())?;
                ensure!(
                    !res.partitions.is_empty(),
                    "{name}: no optimal partitions at r = {r}"
                );
                ensure!(
                    res.partitions.iter().all(|p| p.len() == minimum),
                    "{name}: optimal coloring leaves a color unused"
                );
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} instances: k-monotonicity, lower bound, chi_1 = chi, r-monotonicity, saturation, surjectivity"))
}

type Check = fn(&mut Touched) -> Outcome;

fn main() {
    let criteria: [(&str, u64, Check); 11] = [
        (
            "solver agrees with exhaustive enumeration (n <= 7, r in 1..=3)",
            300,
            oracle_equivalence,
        ),
        (
            "paths: chi_2 = 3 and uniquely (3,2)-colorable, 3 <= n <= 15",
            10,
            paths,
        ),
        (
            "gears: three-branch formula and explicit (4,2)-coloring",
            120,
            gears,
        ),
        ("wheels: both branches, n in 4..=9, r in 3..=5", 120, wheels),
        ("line graphs of complete binary trees", 60, line_graphs),
        ("joins: chi_r(G1 + G2) = chi(G1) + chi(G2)", 120, joins),
        ("complete bipartite: chi_r = 2r", 60, bipartite),
        ("tree joins: chi_4 = 6", 60, tree_joins),
        ("cartesian products: product upper bound", 120, products),
        (
            "uniqueness: triangle chains, complete graphs, random trees",
            300,
            uniqueness,
        ),
        ("invariants over every instance above", 600, properties),
    ];
    let total = criteria.len();
    let mut touched = Touched::default();
    let mut failures = 0;
    for (i, (name, limit_secs, check)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome = check(&mut touched);
        let elapsed = started.elapsed();
        let limit = Duration::from_secs(limit_secs);
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS {:>2} {name} [{elapsed:.2?} / {limit_secs}s] {detail}",
                i + 1
            ),
            Err(why) => {
                failures += 1;
                println!(
                    "FAIL {:>2} {name} [{elapsed:.2?} / {limit_secs}s] {why}",
                    i + 1
                );
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all {total} criteria passed");
}
