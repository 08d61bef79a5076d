//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use claw_bisect::bisection::{bichromatic_endpoints, is_2bisection, mono_stats, Color};
use claw_bisect::cli::{run, RunConfig};
use claw_bisect::constructor::{
    desired_bisection_csp, formula_value, lift, min_bisection, min_bisection_via, min_bisection_with, reduce_diamond,
    Strategy,
};
use claw_bisect::generator::{self, small_corpus, BlockRecipe};
use claw_bisect::oracle::{balanced_bisections, oracle_min, DEFAULT_LIMIT};
use claw_bisect::structure::{find_blocks, Block};
use claw_bisect::{Error, Multigraph};

use clap::Parser;

type Corpus = Vec<(BlockRecipe, Multigraph)>;
type Check<'a> = Box<dyn Fn() -> Result<String, String> + 'a>;

const SEEDS_PER_RECIPE: u64 = 10;

fn corpus() -> Corpus {
    small_corpus(16, 3, 3, SEEDS_PER_RECIPE)
}

fn cli(args: &[&str], input: &str) -> (i32, String) {
    let config = RunConfig::try_parse_from(std::iter::once("claw-bisect").chain(args.iter().copied())).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&config, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_forty_vertices() -> Result<String, String> {
    let g = generator::forty_vertex_instance();
    let part = find_blocks(&g).map_err(|e| e.to_string())?;
    ensure(g.order() == 40 && part.k == 3 && part.p == 2, || {
        format!("fixture n={} k={} p={}", g.order(), part.k, part.p)
    })?;
    let start = Instant::now();
    let (code, out) = cli(&["bisect", "--format", "json"], &g.to_text());
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("bisect exited {code}"))?;
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let eps = v["certificate"]["epsilon"].as_u64();
    ensure(eps == Some(12), || format!("epsilon {eps:?}, expected 12"))?;
    ensure(formula_value(40, 3, 2) == Some(12), || "formula(40,3,2) != 12".into())?;
    let (b, _) = min_bisection(&g).map_err(|e| e.to_string())?;
    ensure(is_2bisection(&g, &b), || "not a 2-bisection".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("epsilon = 12 in {elapsed:?}"))
}

fn ac2_oracle_equivalence(corpus: &Corpus) -> Result<String, String> {
    let start = Instant::now();
    ensure(corpus.len() >= 200, || format!("corpus has only {} instances", corpus.len()))?;
    for (recipe, g) in corpus {
        let part = find_blocks(g).map_err(|e| format!("{recipe:?}: {e}"))?;
        let formula = formula_value(g.order(), part.k, part.p).ok_or(format!("{recipe:?}: formula undefined"))?;
        let (_, cert) = min_bisection(g).map_err(|e| format!("{recipe:?}: {e}"))?;
        let (_, searched) = min_bisection_with(g, Strategy::Search).map_err(|e| format!("{recipe:?}: {e}"))?;
        ensure(searched.epsilon == cert.epsilon, || {
            format!("{recipe:?}: search {} vs wiring {}", searched.epsilon, cert.epsilon)
        })?;
        let oracle = oracle_min(g, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        ensure(oracle.min_epsilon == Some(cert.epsilon) && cert.epsilon == formula, || {
            format!("{recipe:?}: oracle {:?}, constructor {}, formula {formula}", oracle.min_epsilon, cert.epsilon)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} instances agree, both constructions, in {elapsed:?}", corpus.len()))
}

fn ac3_color_parity(corpus: &Corpus) -> Result<String, String> {
    let mut checked = 0u64;
    for (recipe, g) in corpus.iter().filter(|(_, g)| g.order() <= 12) {
        let n = g.order();
        for half in balanced_bisections(g, 12).map_err(|e| e.to_string())? {
            for b in [half.swapped(), half] {
                if !is_2bisection(g, &b) {
                    continue;
                }
                let s = mono_stats(g, &b).unwrap();
                ensure(s.epsilon_black == s.epsilon_white, || format!("{recipe:?}: {s:?}"))?;
                ensure(
                    bichromatic_endpoints(g, &b, Color::Black) == 3 * n / 2 - 2 * s.epsilon_black
                        && bichromatic_endpoints(g, &b, Color::White) == 3 * n / 2 - 2 * s.epsilon_white,
                    || format!("{recipe:?}: endpoint identity fails"),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} 2-bisections, zero exceptions"))
}

fn ac4_desired_split(corpus: &Corpus) -> Result<String, String> {
    let (mut even, mut odd) = (0, 0);
    for (recipe, g) in corpus {
        let k = find_blocks(g).map_err(|e| e.to_string())?.k;
        let r = oracle_min(g, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        ensure(r.desired_exists == (k % 2 == 0), || format!("{recipe:?}: k={k}, desired_exists={}", r.desired_exists))?;
        if k % 2 == 0 {
            even += 1
        } else {
            odd += 1
        }
    }
    Ok(format!("{even} even-k with, {odd} odd-k without"))
}

fn ac5_reduction(corpus: &Corpus) -> Result<String, String> {
    let mut reductions = 0;
    let mut absorbed = 0;
    for (recipe, g) in corpus {
        let part = find_blocks(g).map_err(|e| e.to_string())?;
        if part.k % 2 == 0 {
            continue;
        }
        for diamond in part.diamonds() {
            let red = reduce_diamond(g, diamond).map_err(|e| format!("{recipe:?}: {e}"))?;
            let h = &red.reduced;
            let report = h.validate();
            ensure(report.is_cubic && report.is_connected && report.is_claw_free && !report.is_k4, || {
                format!("{recipe:?}: reduced graph {}", report.summary())
            })?;
            let reduced_part = find_blocks(h).map_err(|e| e.to_string())?;
            ensure(reduced_part.k + 1 == part.k, || format!("{recipe:?}: reduced k = {}", reduced_part.k))?;
            let (x, y) = (red.reduced_x(), red.reduced_y());
            let in_triangle = h.triangles().iter().any(|t| t.contains(&x) && t.contains(&y));
            if red.new_edge_was_present {
                absorbed += 1;
                let trumpet = reduced_part
                    .blocks
                    .iter()
                    .any(|b| matches!(*b, Block::Trumpet { x: bx, y: by, .. } if (bx, by) == (x.min(y), x.max(y))));
                let triple = h.order() == 2 && h.multiplicity(x, y) == 3;
                ensure(trumpet || triple, || format!("{recipe:?}: absorbed edge is neither trumpet nor triple"))?;
            } else {
                ensure(!in_triangle, || format!("{recipe:?}: new edge lies in a triangle"))?;
            }
            let reduced_b = desired_bisection_csp(h, &reduced_part).map_err(|e| e.to_string())?;
            let lifted = lift(&red, &reduced_b).map_err(|e| e.to_string())?;
            let before = mono_stats(h, &reduced_b).unwrap().epsilon;
            let after = mono_stats(g, &lifted).unwrap().epsilon;
            ensure(after == before + 2 && is_2bisection(g, &lifted), || {
                format!("{recipe:?}: lift {before} -> {after}")
            })?;
            reductions += 1;
        }
    }
    ensure(reductions > 0, || "no odd-k instances".into())?;
    Ok(format!("{reductions} reductions ({absorbed} absorbed into trumpet/triple edge)"))
}

fn ac6_fixtures() -> Result<String, String> {
    let expected: [(&str, Multigraph, Option<usize>); 6] = [
        ("prism", generator::prism(), Some(2)),
        ("triple", generator::triple_edge(), Some(0)),
        ("ring2", generator::ring_of_diamonds(2), Some(2)),
        ("diamond_digon", generator::diamond_digon(), Some(2)),
        ("ring3", generator::ring_of_diamonds(3), Some(4)),
        ("k4", generator::k4(), None),
    ];
    for (name, g, eps) in expected {
        let (code, out) = cli(&["bisect", "--format", "json"], &g.to_text());
        match eps {
            Some(e) => {
                ensure(code == 0, || format!("{name}: exit {code}"))?;
                let v: serde_json::Value = serde_json::from_str(&out).unwrap();
                ensure(v["certificate"]["epsilon"].as_u64() == Some(e as u64), || format!("{name}: {out}"))?;
                let oracle = oracle_min(&g, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
                ensure(oracle.min_epsilon == Some(e), || format!("{name}: oracle {:?}", oracle.min_epsilon))?;
            }
            None => {
                ensure(code == 2, || format!("{name}: exit {code}, expected 2"))?;
                ensure(matches!(min_bisection(&g), Err(Error::NotApplicable(_))), || format!("{name}: applicable"))?;
            }
        }
    }
    Ok("prism 2, triple 0, ring2 2, diamond_digon 2, ring3 4, K4 exit 2".into())
}

fn ac7_diamond_choice(corpus: &Corpus) -> Result<String, String> {
    let mut checked = 0;
    for (recipe, g) in corpus {
        let part = find_blocks(g).map_err(|e| e.to_string())?;
        if part.k % 2 == 0 || part.k < 3 {
            continue;
        }
        let eps: Vec<usize> = part
            .diamonds()
            .map(|d| min_bisection_via(g, d).map(|(_, c)| c.epsilon))
            .collect::<Result<_, _>>()
            .map_err(|e| format!("{recipe:?}: {e}"))?;
        ensure(eps.windows(2).all(|w| w[0] == w[1]), || format!("{recipe:?}: {eps:?}"))?;
        checked += 1;
    }
    ensure(checked > 0, || "no instance with k >= 3 odd".into())?;
    Ok(format!("{checked} instances"))
}

fn block_multiset(blocks: impl IntoIterator<Item = Block>) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for b in blocks {
        *out.entry(format!("{:?}", b)).or_default() += 1;
    }
    out
}

fn ac8_uniqueness(corpus: &Corpus) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for (recipe, g) in corpus {
        let part = find_blocks(g).map_err(|e| e.to_string())?;
        let original = block_multiset(part.blocks.iter().cloned());
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..g.order()).collect();
            perm.shuffle(&mut rng);
            let mut inverse = vec![0; perm.len()];
            for (v, &p) in perm.iter().enumerate() {
                inverse[p] = v;
            }
            let relabeled = find_blocks(&g.relabel(&perm).unwrap()).map_err(|e| e.to_string())?;
            let back = block_multiset(relabeled.blocks.iter().map(|b| b.map(|v| inverse[v])));
            ensure(back == original, || format!("{recipe:?}: partition changed under relabeling"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} relabelings"))
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<(&str, Check)> = vec![
        ("AC1 40-vertex instance, k=3 p=2, epsilon 12", Box::new(ac1_forty_vertices)),
        ("AC2 oracle = constructor = formula", Box::new(|| ac2_oracle_equivalence(&corpus))),
        ("AC3 black and white epsilon agree on every 2-bisection, n <= 12", Box::new(|| ac3_color_parity(&corpus))),
        ("AC4 desired bisection exists iff k even", Box::new(|| ac4_desired_split(&corpus))),
        ("AC5 reduction invariants and lift +2", Box::new(|| ac5_reduction(&corpus))),
        ("AC6 fixture values", Box::new(ac6_fixtures)),
        ("AC7 diamond-choice independence", Box::new(|| ac7_diamond_choice(&corpus))),
        ("AC8 partition uniqueness under relabeling", Box::new(|| ac8_uniqueness(&corpus))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
