//! Release acceptance suite. Prints one pass/fail line per criterion and
//! exits non-zero if any fails.
//!
//! Expected values come from closed formulas or from an independent dense
//! solver (`oracle` below, a Gauss–Jordan inverse of `L + J/n`), never from
//! the library under test.

use cyclicity::certify::{battery, certify_sampled, nordhaus_gaddum, CertificationRun, CertifyConfig};
use cyclicity::cyclicity::{names, Analysis};
use cyclicity::graph::{
    complete, complete_bipartite, cycle, enumerate_connected, paley, random_connected,
    random_spanning_subgraph, random_tree, Graph,
};
use cyclicity::resistance::{perturb_edge, resistance_matrix, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

mod oracle {
    /// Resistance matrix of a weighted graph from `(L + J/n)^{-1} - J/n`.
    pub fn omega(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
        let inv_n = 1.0 / n as f64;
        let mut a = vec![vec![inv_n; n]; n];
        for &(u, v, w) in edges {
            a[u][u] += w;
            a[v][v] += w;
            a[u][v] -= w;
            a[v][u] -= w;
        }
        let mut inv: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
                .unwrap();
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let d = a[col][col];
            for k in 0..n {
                a[col][k] /= d;
                inv[col][k] /= d;
            }
            for r in 0..n {
                if r != col {
                    let f = a[r][col];
                    if f != 0.0 {
                        for k in 0..n {
                            a[r][k] -= f * a[col][k];
                            inv[r][k] -= f * inv[col][k];
                        }
                    }
                }
            }
        }
        let mut om = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                om[i][j] = inv[i][i] + inv[j][j] - 2.0 * inv[i][j];
            }
        }
        om
    }

    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<f64>> {
        let e: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        omega(n, &e)
    }

    /// Sum over edges of `1/Ω - 1`.
    pub fn cyclicity(n: usize, edges: &[(usize, usize)]) -> f64 {
        let om = unit(n, edges);
        edges.iter().map(|&(u, v)| 1.0 / om[u][v] - 1.0).sum()
    }
}

fn cyc(g: &Graph) -> f64 {
    Analysis::new(g, &SolverConfig::default(), 1e-7).unwrap().cyclicity()
}

fn complement_edges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect()
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_forms() -> Outcome {
    let start = Instant::now();
    for n in 3..=20usize {
        let nf = n as f64;
        let k = cyc(&complete(n).unwrap());
        let want = nf * (nf - 1.0) * (nf - 2.0) / 4.0;
        check((k - want).abs() <= 1e-8, || format!("C(K_{n}) = {k}, want {want}"))?;
        let c = cyc(&cycle(n).unwrap());
        let want = nf / (nf - 1.0);
        check((c - want).abs() <= 1e-8, || format!("C(C_{n}) = {c}, want {want}"))?;
    }
    for n1 in 1..=10usize {
        for n2 in n1..=10 {
            let (a, b) = (n1 as f64, n2 as f64);
            let want = a * b * (a * b - a - b + 1.0) / (a + b - 1.0);
            let got = cyc(&complete_bipartite(n1, n2).unwrap());
            check((got - want).abs() <= 1e-8, || format!("C(K_{n1},{n2}) = {got}, want {want}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(2..=50);
        let t = random_tree(n, rng.gen()).unwrap();
        let c = cyc(&t);
        check(c.abs() <= 1e-10, || format!("random tree on {n} vertices has C = {c}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("K_n, C_n (n = 3..20), K_(a,b) (a <= b <= 10), 50 trees in {elapsed:.2?}"))
}

fn stats<'a>(run: &'a CertificationRun, name: &str) -> Result<&'a cyclicity::certify::CheckStats, String> {
    run.check_stats.get(name).ok_or_else(|| format!("run has no `{name}` statistics"))
}

fn foster(run: &CertificationRun) -> Outcome {
    let total: u64 = run.graphs_checked.values().sum();
    let s = stats(run, battery::FOSTER)?;
    check(s.evaluated == total && s.failed == 0, || format!("foster {s:?} over {total} graphs"))?;
    let worst_exhaustive = -s.min_slack.unwrap_or(0.0);
    check(worst_exhaustive <= 1e-8, || format!("worst exhaustive deviation {worst_exhaustive}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0f64;
    for _ in 0..200 {
        let n = rng.gen_range(2..=50);
        let p = rng.gen_range(0.15..=0.9);
        let g = random_connected(n, p, rng.gen()).map_err(|e| e.to_string())?;
        let om = resistance_matrix(&g, &SolverConfig::default()).unwrap();
        let sum: f64 = g.edges().iter().map(|&(u, v)| om.get(u, v)).sum();
        worst = worst.max((sum - (n as f64 - 1.0)).abs());
    }
    check(worst <= 1e-8, || format!("random graphs: worst deviation {worst}"))?;
    Ok(format!(
        "{total} exhaustive graphs (worst {worst_exhaustive:.1e}), 200 random graphs (worst {worst:.1e})"
    ))
}

fn recursion_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0f64;
    for case in 0..100 {
        let n = rng.gen_range(3..=20);
        let base = random_connected(n, 0.4, rng.gen()).map_err(|e| e.to_string())?;
        let weights: Vec<f64> = (0..base.m()).map(|_| rng.gen_range(0.5..2.0)).collect();
        let g = Graph::new(n, base.edges(), Some(&weights)).unwrap();
        let mut edges: Vec<(usize, usize, f64)> = g.weighted_edges().collect();
        let (i, j, delta) = match case % 3 {
            0 | 1 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let delta = if case % 3 == 0 { 1.0 } else { 0.5 };
                (i.min(j), i.max(j), delta)
            }
            _ => {
                let k = rng.gen_range(0..edges.len());
                let (u, v, w) = edges[k];
                (u, v, -0.5 * w)
            }
        };
        match edges.iter_mut().find(|e| (e.0, e.1) == (i, j)) {
            Some(e) => e.2 += delta,
            None => edges.push((i, j, delta)),
        }
        let fresh = oracle::omega(n, &edges);
        let om = resistance_matrix(&g, &SolverConfig::default()).unwrap();
        let updated = perturb_edge(&om, i, j, delta, &SolverConfig::default()).map_err(|e| e.to_string())?;
        for p in 0..n {
            for q in 0..n {
                worst = worst.max((updated.get(p, q) - fresh[p][q]).abs());
            }
        }
    }
    check(worst <= 1e-9, || format!("worst entrywise gap {worst:e}"))?;
    Ok(format!("100 weighted cases, worst entrywise gap {worst:.1e}"))
}

fn is_path_with_ends(g: &Graph, i: usize, j: usize) -> bool {
    let n = g.n();
    g.m() == n - 1 && g.degree(i) == 1 && g.degree(j) == 1 && (0..n).all(|v| g.degree(v) <= 2)
}

fn delta_oracle() -> Outcome {
    let solver = SolverConfig::default();
    let tol = 1e-7;
    let (mut instances, mut tight_upper, mut worst, mut min_lower) = (0u64, 0u64, 0f64, f64::INFINITY);
    for n in 2..=6 {
        for g in enumerate_connected(n).unwrap() {
            let a = Analysis::new(&g, &solver, tol).unwrap();
            let base = oracle::cyclicity(n, g.edges());
            for (i, j) in complement_edges(&g) {
                let d = a.edge_addition_delta(i, j).map_err(|e| e.to_string())?;
                let mut edges = g.edges().to_vec();
                edges.push((i, j));
                let want = oracle::cyclicity(n, &edges) - base;
                worst = worst.max((d.delta - want).abs());
                let om = oracle::unit(n, g.edges())[i][j];
                let lower = 1.0 / om;
                let upper = (g.m() as f64 + 1.0) / om;
                min_lower = min_lower.min(want - lower);
                check(want <= upper + tol, || format!("upper bound fails on {:?} + {i}{j}", g.edges()))?;
                let tight = (upper - want).abs() <= tol;
                let expected = is_path_with_ends(&g, i, j);
                check(tight == expected, || {
                    format!("upper tight = {tight}, path ends = {expected} on {:?} + {i}{j}", g.edges())
                })?;
                tight_upper += u64::from(tight);
                instances += 1;
            }
        }
    }
    check(worst <= 1e-9, || format!("worst increment error {worst:e}"))?;
    check(min_lower > 0.0, || format!("strict lower bound attained or violated: slack {min_lower:e}"))?;
    Ok(format!(
        "{instances} non-edges at n <= 6, worst error {worst:.1e}, min lower slack {min_lower:.3}, \
         upper tight on {tight_upper} path-end instances only"
    ))
}

const BOUND_SUITE: [&str; 8] = [
    names::ADJACENT_RESISTANCE_LOWER,
    names::DEGREE_BOUND,
    names::REGULAR_BOUND,
    names::MAX_DEGREE_BOUND,
    names::MAJORIZATION_LOWER,
    names::MAJORIZATION_UPPER,
    names::SIMPLE_UPPER,
    names::MU_SANDWICH_LOWER,
];

fn bound_suite(run: &CertificationRun) -> Outcome {
    let suite: Vec<&str> = BOUND_SUITE.iter().copied().chain([names::MU_SANDWICH_UPPER]).collect();
    for name in &suite {
        let s = stats(run, name)?;
        check(s.evaluated > 0 && s.failed == 0, || format!("exhaustive `{name}`: {s:?}"))?;
    }
    let cfg = CertifyConfig::default();
    let sampled = certify_sampled(&[10, 13, 16], 100, 0.4, 5, &cfg).map_err(|e| e.to_string())?;
    let mut sampled_instances = 0;
    for name in &suite {
        // Random graphs are rarely regular, so some bounds may not apply.
        if let Some(s) = sampled.check_stats.get(*name) {
            check(s.failed == 0, || format!("sampled `{name}`: {s:?}"))?;
            sampled_instances += s.evaluated;
        }
    }
    check(sampled.passed(), || format!("sampled violations: {:?}", sampled.violations))?;

    let solver = SolverConfig::default();
    let tol = 1e-7;
    let mut tree_discrepancy = 0usize;
    let mut counted = 0usize;
    for n in 3..=6 {
        for g in enumerate_connected(n).unwrap() {
            counted += 1;
            let r = Analysis::new(&g, &solver, tol).unwrap().report();
            let m = g.edges().len();
            let is_tree = m == n - 1;
            let is_complete = m == n * (n - 1) / 2;
            let is_star = is_tree && (0..n).any(|v| g.degree(v) == n - 1);
            let om = oracle::unit(n, g.edges());
            let first = om[g.edges()[0].0][g.edges()[0].1];
            let eee = g.edges().iter().all(|&(u, v)| (om[u][v] - first).abs() <= 1e-9);
            let tight = |name: &str| r.bound(name).map(|b| b.tight).unwrap_or(false);
            let show = || format!("{:?}", g.edges());
            check(tight(names::SIMPLE_UPPER) == (is_tree || is_complete), || {
                format!("simple_upper tightness wrong on {}", show())
            })?;
            check(tight(names::MAJORIZATION_LOWER) == eee, || {
                format!("majorization_lower tightness wrong on {}", show())
            })?;
            check(tight(names::DEGREE_BOUND) == (is_complete || is_star), || {
                format!("degree_bound tight set differs from complete graphs and stars on {}", show())
            })?;
            tree_discrepancy += usize::from(is_tree && !tight(names::DEGREE_BOUND));
        }
    }
    Ok(format!(
        "no violations over exhaustive n <= 7 and 300 sampled graphs ({sampled_instances} sampled \
         bound instances); {counted} graphs at n <= 6 confirm \
         simple_upper tight set = trees and K_n, majorization_lower tight iff electrically edge-equivalent, \
         degree_bound tight set = K_n and stars ({tree_discrepancy} non-star trees are not tight)"
    ))
}

fn smi() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut margin = f64::INFINITY;
    let mut pairs = 0;
    while pairs < 200 {
        let n = rng.gen_range(3..=12);
        let g = random_connected(n, rng.gen_range(0.3..0.9), rng.gen()).map_err(|e| e.to_string())?;
        if g.m() == n - 1 {
            continue;
        }
        let h = random_spanning_subgraph(&g, rng.gen()).map_err(|e| e.to_string())?;
        check(h.m() < g.m() && g.contains_spanning(&h), || "not a proper spanning subgraph".into())?;
        let diff = oracle::cyclicity(n, g.edges()) - oracle::cyclicity(n, h.edges());
        margin = margin.min(diff);
        check(cyc(&g) - cyc(&h) > 1e-9, || format!("C(G) - C(H) = {diff} on {:?}", g.edges()))?;
        pairs += 1;
    }
    check(margin > 1e-9, || format!("smallest margin {margin:e}"))?;
    Ok(format!("200 pairs, smallest margin {margin:.3e}"))
}

fn nordhaus_gaddum_suite() -> Outcome {
    let solver = SolverConfig::default();
    let tol = 1e-7;
    let mut pairs = 0;
    let (mut max_sum_ratio, mut max_product_ratio) = (0f64, 0f64);
    for n in 5..=6usize {
        let nf = n as f64;
        let lower = nf * (nf - 1.0) * (nf - 4.0) / 8.0;
        for g in enumerate_connected(n).unwrap() {
            let bar = complement_edges(&g);
            if bar.is_empty() || !connected(n, &bar) {
                continue;
            }
            let (c, cbar) = (oracle::cyclicity(n, g.edges()), oracle::cyclicity(n, &bar));
            let (sum, product) = (c + cbar, c * cbar);
            check(sum >= lower - tol && sum < 2.0 * lower, || format!("sum {sum} on {:?}", g.edges()))?;
            check(product >= -tol && product < lower * lower, || {
                format!("product {product} on {:?}", g.edges())
            })?;
            let r = nordhaus_gaddum(&g, &solver, tol).map_err(|e| e.to_string())?;
            check((r.sum - sum).abs() <= 1e-9, || format!("library sum {} vs {sum}", r.sum))?;
            max_sum_ratio = max_sum_ratio.max(sum / (2.0 * lower));
            max_product_ratio = max_product_ratio.max(product / (lower * lower));
            pairs += 1;
        }
    }
    for (q, want) in [(5u64, 2.5), (13, 175.5)] {
        let r = nordhaus_gaddum(&paley(q).unwrap(), &solver, tol).map_err(|e| e.to_string())?;
        check((r.sum - want).abs() <= 1e-7, || format!("paley({q}) sum {} want {want}", r.sum))?;
    }
    Ok(format!(
        "{pairs} pairs at n = 5, 6; max sum/upper {max_sum_ratio:.4}, max product/upper \
         {max_product_ratio:.4}; paley(5), paley(13) attain the sum lower bound"
    ))
}

fn structural_lemmas(run: &CertificationRun) -> Outcome {
    let cut = stats(run, battery::CUT_EDGE_LEMMA)?;
    check(cut.evaluated > 0 && cut.failed == 0, || format!("cut-edge lemma {cut:?}"))?;
    check(cut.min_slack.is_some_and(|s| s > 0.0), || format!("cut-edge slack {:?}", cut.min_slack))?;
    let pc = stats(run, battery::PAIR_COUNT_LEMMA)?;
    check(pc.evaluated > 0 && pc.failed == 0, || format!("pair-count lemma {pc:?}"))?;
    let flagged = run
        .flags
        .get(battery::FLAG_PAIR_COUNT_ABOVE_CORRECTED)
        .map_or(0, |f| f.count);
    Ok(format!(
        "cut-edge lemma on {} graphs (min slack {:.4}), pair count on {} graphs; {} graphs exceed (n^2-5n+6)/2",
        cut.evaluated,
        cut.min_slack.unwrap_or(f64::NAN),
        pc.evaluated,
        flagged
    ))
}

struct ExhaustiveRuns {
    run: CertificationRun,
    times: [Duration; 2],
    identical: bool,
    replayed: bool,
}

fn exhaustive_runs(dir: &Path) -> Result<ExhaustiveRuns, String> {
    let bin = env!("CARGO_BIN_EXE_cyclicity");
    let mut times = [Duration::ZERO; 2];
    let mut bytes = Vec::new();
    for (k, time) in times.iter_mut().enumerate() {
        let path = dir.join(format!("run{k}.certrun"));
        let start = Instant::now();
        let out = Command::new(bin)
            .args(["certify", "--exhaustive", "7", "--jobs", "1", "-o"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        *time = start.elapsed();
        check(out.status.success(), || {
            format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
        })?;
        bytes.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let out = Command::new(bin)
        .args(["certify", "--replay"])
        .arg(dir.join("run0.certrun"))
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8(bytes[0].clone()).map_err(|e| e.to_string())?;
    Ok(ExhaustiveRuns {
        run: CertificationRun::from_json(&text).map_err(|e| e.to_string())?,
        times,
        identical: bytes[0] == bytes[1],
        replayed: out.status.success(),
    })
}

fn performance(runs: &ExhaustiveRuns) -> Outcome {
    let limit = Duration::from_secs(300);
    check(runs.times.iter().all(|t| *t <= limit), || format!("run times {:?}", runs.times))?;
    check(runs.identical, || "the two runs differ".into())?;
    check(runs.replayed, || "stored run did not replay".into())?;
    Ok(format!(
        "certify --exhaustive 7 in {:.1?} and {:.1?}, byte-identical, replay reproduced",
        runs.times[0], runs.times[1]
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let runs = exhaustive_runs(dir.path());
    let with_run = |f: fn(&CertificationRun) -> Outcome| match &runs {
        Ok(r) => f(&r.run),
        Err(e) => Err(format!("exhaustive run unavailable: {e}")),
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("closed forms", closed_forms()),
        ("Foster's formula", with_run(foster)),
        ("rank-one update oracle", recursion_oracle()),
        ("edge-addition increment oracle", delta_oracle()),
        ("bound suite", with_run(bound_suite)),
        ("strict monotone increase", smi()),
        ("complement sum and product", nordhaus_gaddum_suite()),
        ("structural lemmas", with_run(structural_lemmas)),
        (
            "performance and determinism",
            runs.as_ref().map_err(Clone::clone).and_then(performance),
        ),
    ];
    let mut failed = 0;
    for (k, (title, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {} PASS {title}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {title}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
