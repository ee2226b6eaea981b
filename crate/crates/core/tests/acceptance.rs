//! Acceptance checks. Prints one line per criterion and exits nonzero if any
//! criterion that ran failed.
//!
//! Dataset criteria read `CGSPAN_DATA_DIR`, which should hold the
//! Chemical_340 and Compounds_422 files in the transactional text format.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cgspan_core::cgspan::{create_edge_hash_key, early_termination, ClosedGraphHashTable, ClosedGraphRecord};
use cgspan_core::dfs::{code_less, min_dfs_code, tuple_less, DfsCode, EdgeTuple};
use cgspan_core::embedding::{equivalent_occurrence, frequent_single_edges, rightmost_extensions, EmbeddingList};
use cgspan_core::fixtures::{cg1, cg2, code, figure1, figure3, g1_prime, g2_prime};
use cgspan_core::graph::{EdgeEnumeration, EdgeIndex, Label};
use cgspan_core::io::parse_dataset_str;
use cgspan_core::oracle::{brute_equivalent_occurrence, brute_occurrence, brute_support, verify_run};
use cgspan_core::{mine, write_patterns, ClosedMiner, GraphDatabase, MinSupport, MiningConfig, MiningResult, Mode, ParseOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::brute_dfs::{all_codes, build, shapes};
use common::{random_db, Shape};

enum Outcome {
    Pass(String),
    Fail(String),
    NotRun(String),
}

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let r = f();
    let t = start.elapsed();
    match r {
        Ok(m) if limit.is_none_or(|l| t < l) => Outcome::Pass(format!("{m} ({:.3}s)", t.as_secs_f64())),
        Ok(m) => Outcome::Fail(format!("{m}, but took {:.3}s", t.as_secs_f64())),
        Err(m) => Outcome::Fail(m),
    }
}

fn embeddings_of(db: &GraphDatabase, c: &DfsCode) -> Arc<EmbeddingList> {
    let first = c.prefix(1);
    let (_, l) = frequent_single_edges(db, 1).into_iter().find(|(k, _)| *k == first).unwrap();
    let mut list = Arc::new(l);
    for k in 1..c.len() {
        let mut ext = rightmost_extensions(&c.prefix(k), &list, db, None);
        list = Arc::new(ext.remove(&c[k]).unwrap());
    }
    list
}

fn key(pairs: &[(u32, u32)]) -> Vec<EdgeIndex> {
    pairs.iter().map(|&(graph, edge)| EdgeIndex { graph, edge }).collect()
}

fn codes(r: &MiningResult) -> BTreeSet<DfsCode> {
    r.patterns.iter().map(|p| p.code.clone()).collect()
}

fn figure_one() -> Check {
    let db = figure1();
    let r = mine(&db, &MiningConfig::absolute(2, Mode::Closed)).map_err(|e| e.to_string())?;
    let got: Vec<(DfsCode, usize, usize)> = r.patterns.iter().map(|p| (p.code.clone(), p.support, p.occurrence)).collect();
    let mut want = vec![(g1_prime(), 2, 2), (g2_prime(), 2, 3)];
    want.sort();
    let mut sorted = got.clone();
    sorted.sort();
    ensure(sorted == want, format!("got {got:?}"))?;
    Ok("g1' (support 2, I=2) and g2' (support 2, I=3)".into())
}

fn figure_three() -> Check {
    let db = figure3();
    let closed = codes(&mine(&db, &MiningConfig::absolute(2, Mode::Closed)).map_err(|e| e.to_string())?);
    let plain = codes(&mine(&db, &MiningConfig::absolute(2, Mode::ClosedNoEtf)).map_err(|e| e.to_string())?);
    ensure(closed == BTreeSet::from([cg1(), cg2()]), format!("closed gave {closed:?}"))?;
    ensure(plain == BTreeSet::from([cg1()]), format!("closed-no-etf gave {plain:?}"))?;
    Ok("closed = {CG1, CG2}, closed-no-etf = {CG1}".into())
}

fn table_for_g1_g2(db: &GraphDatabase, ee: &EdgeEnumeration) -> ClosedGraphHashTable {
    let mut t = ClosedGraphHashTable::new();
    for (i, c) in [g1_prime(), g2_prime()].into_iter().enumerate() {
        let list = embeddings_of(db, &c);
        t.add_closed_graph(ee, ClosedGraphRecord::new(c, list, i));
    }
    t
}

fn hash_key_example() -> Check {
    let db = figure1();
    let ee = EdgeEnumeration::new(&db);
    let alpha = code("(0,1,W,a,X) (1,2,X,d,Z)");
    let list = embeddings_of(&db, &alpha);
    let k = create_edge_hash_key(&ee, &alpha, &list, (1, 2));
    ensure(k.edges() == key(&[(0, 4), (1, 3)]), format!("key {:?}", k.edges()))?;
    let t = table_for_g1_g2(&db, &ee);
    let term = early_termination(&alpha, &list, &t, &ee).ok_or("no early termination")?;
    ensure(term.record == 0, "terminated against g2'")?;
    ensure(term.rho == vec![0, 1, 3], format!("rho {:?}", term.rho))?;
    Ok("key {(0,4),(1,3)}, terminates against g1' with rho [0,1,3]".into())
}

fn table_example() -> Check {
    let db = figure1();
    let ee = EdgeEnumeration::new(&db);
    let t = table_for_g1_g2(&db, &ee);
    ensure(t.key_count() == 5, format!("{} keys", t.key_count()))?;
    let shared = cgspan_core::cgspan::EdgeKey::new(key(&[(0, 5), (1, 4)]));
    ensure(t.get(&shared) == [0, 1], format!("{{(0,5),(1,4)}} holds {:?}", t.get(&shared)))?;
    let both = t.keys().filter(|k| t.get(k).len() == 2).count();
    ensure(both == 1, format!("{both} keys hold both graphs"))?;
    Ok("5 keys, {(0,5),(1,4)} holds g1' and g2'".into())
}

fn figure_one_trie() -> Check {
    let db = figure1();
    let cfg = MiningConfig::absolute(2, Mode::Closed);
    let mut m = ClosedMiner::new(&db, &cfg).map_err(|e| e.to_string())?;
    m.mine();
    let size = m.trie().len();
    let closed = codes(&m.into_result());
    let plain = codes(&mine(&db, &MiningConfig::absolute(2, Mode::ClosedNoEtf)).map_err(|e| e.to_string())?);
    ensure(closed == plain, "closed sets differ with and without failure handling")?;
    ensure(size == 0, format!("closed sets agree but the trie holds {size} codes"))?;
    Ok("trie empty, closed sets agree".into())
}

/// Locates a dataset file whose name starts with `stem` (case-insensitive).
fn dataset(stem: &str) -> Option<GraphDatabase> {
    let dir = PathBuf::from(std::env::var_os("CGSPAN_DATA_DIR")?);
    let path = std::fs::read_dir(dir)
        .ok()?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .find(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.to_lowercase().starts_with(stem)))?;
    let text = std::fs::read_to_string(path).ok()?;
    parse_dataset_str(&text, ParseOptions::default())
        .or_else(|_| parse_dataset_str(&text, ParseOptions { intern_labels: true }))
        .ok()
}

fn count(db: &GraphDatabase, s: f64, mode: Mode) -> Result<usize, String> {
    Ok(mine(db, &MiningConfig::new(MinSupport::Fraction(s), mode)).map_err(|e| e.to_string())?.patterns.len())
}

fn regression(cases: &[(&str, f64, Mode, usize)]) -> Outcome {
    let mut dbs = Vec::new();
    for &(name, ..) in cases {
        if !dbs.iter().any(|(n, _)| *n == name) {
            match dataset(name) {
                Some(db) => dbs.push((name, db)),
                None => return Outcome::NotRun(format!("dataset missing: {name} (set CGSPAN_DATA_DIR)")),
            }
        }
    }
    timed(None, || {
        let mut msgs = Vec::new();
        let mut bad = false;
        for &(name, s, mode, want) in cases {
            let db = &dbs.iter().find(|(n, _)| *n == name).unwrap().1;
            let got = count(db, s, mode)?;
            bad |= got != want;
            msgs.push(format!("{name}@{s} {mode} {got}/{want}"));
        }
        if bad {
            Err(msgs.join(", "))
        } else {
            Ok(msgs.join(", "))
        }
    })
}

fn performance() -> Outcome {
    let Some(db) = dataset("compound") else {
        return Outcome::NotRun("dataset missing: compound (set CGSPAN_DATA_DIR)".into());
    };
    timed(None, || {
        let secs = |mode| -> Result<f64, String> {
            let start = Instant::now();
            count(&db, 0.07, mode)?;
            Ok(start.elapsed().as_secs_f64())
        };
        let (f, c) = (secs(Mode::Frequent)?, secs(Mode::Closed)?);
        let msg = format!("closed {c:.2}s / frequent {f:.2}s = {:.3}", c / f);
        if c < 0.5 * f {
            Ok(msg)
        } else {
            Err(msg)
        }
    })
}

fn oracle_equivalence() -> Check {
    let mut runs = 0;
    for seed in 0..100 {
        let db = random_db(seed, Shape::default());
        for s in [2, 3] {
            let r = verify_run(&db, &MiningConfig::absolute(s, Mode::Closed)).map_err(|e| e.to_string())?;
            ensure(r.passed(), format!("seed {seed} support {s}: {r:?}"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs agree"))
}

fn canonical_oracle() -> Check {
    let mut graphs = 0;
    for (n, edges) in shapes(4) {
        for vmask in 0..1u32 << n {
            for emask in 0..1u32 << edges.len() {
                let g = build(n, &edges, vmask, emask);
                let all = all_codes(&g);
                let best = all.iter().next().unwrap();
                let got = min_dfs_code(&g).map_err(|e| e.to_string())?;
                ensure(&got == best, format!("{edges:?}: {got} vs {best}"))?;
                for c in &all {
                    ensure(c.is_min() == (c == best), format!("is_min wrong for {c}"))?;
                }
                graphs += 1;
            }
        }
    }
    Ok(format!("{graphs} graphs"))
}

fn order_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let tuple = |rng: &mut ChaCha8Rng| loop {
        let (a, b) = (rng.gen_range(0..5), rng.gen_range(0..5));
        if a != b {
            let mut l = || Label(rng.gen_range(0..3));
            return EdgeTuple::new(a, b, l(), l(), l());
        }
    };
    let code = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..5);
        (0..n).map(|_| tuple(rng)).collect::<DfsCode>()
    };
    for _ in 0..10_000 {
        let [a, b, c] = [tuple(&mut rng), tuple(&mut rng), tuple(&mut rng)];
        ensure(!tuple_less(&a, &a), "tuple order is reflexive")?;
        ensure([tuple_less(&a, &b), tuple_less(&b, &a), a == b].iter().filter(|&&x| x).count() == 1, "tuple trichotomy")?;
        ensure(!(tuple_less(&a, &b) && tuple_less(&b, &c)) || tuple_less(&a, &c), "tuple transitivity")?;
        let [x, y, z] = [code(&mut rng), code(&mut rng), code(&mut rng)];
        ensure(!code_less(&x, &x), "code order is reflexive")?;
        ensure([code_less(&x, &y), code_less(&y, &x), x == y].iter().filter(|&&v| v).count() == 1, "code trichotomy")?;
        ensure(!(code_less(&x, &y) && code_less(&y, &z)) || code_less(&x, &z), "code transitivity")?;
    }
    Ok("10000 triples of tuples and codes".into())
}

fn counting_oracle() -> Check {
    let mut n = 0;
    for seed in 0..20 {
        let db = random_db(seed, Shape::default());
        let mut cfg = MiningConfig::absolute(2, Mode::Frequent);
        cfg.emit_embeddings = true;
        for p in mine(&db, &cfg).map_err(|e| e.to_string())?.patterns {
            ensure(p.support == brute_support(&p.code, &db), format!("support of {}", p.code))?;
            ensure(p.occurrence == brute_occurrence(&p.code, &db), format!("occurrence of {}", p.code))?;
            let list = p.embeddings.clone().unwrap();
            for (t, child) in rightmost_extensions(&p.code, &list, &db, None) {
                let want = brute_equivalent_occurrence(&p.code, &p.code.extended(t), &db);
                ensure(equivalent_occurrence(&list, &child) == want, format!("equivalence of {} + {t}", p.code))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} patterns"))
}

fn determinism() -> Check {
    for seed in [1, 2, 3] {
        let db = random_db(seed, Shape::default());
        for mode in [Mode::Frequent, Mode::Closed, Mode::ClosedNoEtf] {
            let cfg = MiningConfig::absolute(2, mode);
            let (a, b) = (mine(&db, &cfg).unwrap(), mine(&db, &cfg).unwrap());
            ensure(a.stats == b.stats, format!("stats differ, seed {seed} {mode}"))?;
            let (mut x, mut y) = (Vec::new(), Vec::new());
            write_patterns(&a.patterns, &db, &mut x).unwrap();
            write_patterns(&b.patterns, &db, &mut y).unwrap();
            ensure(x == y, format!("files differ, seed {seed} {mode}"))?;
        }
    }
    Ok("identical files and counters".into())
}

fn main() {
    use Mode::*;
    let second = Some(Duration::from_secs(1));
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("1a figure 1 closed patterns", Box::new(move || timed(second, figure_one))),
        ("1b figure 3 with and without failure handling", Box::new(move || timed(second, figure_three))),
        ("1c hash key and early termination example", Box::new(move || timed(second, hash_key_example))),
        ("1d hash table after g1' and g2'", Box::new(move || timed(second, table_example))),
        (
            "2a Chemical_340 frequent/closed",
            Box::new(|| {
                regression(&[
                    ("chemical", 0.10, Frequent, 844),
                    ("chemical", 0.10, Closed, 459),
                    ("chemical", 0.05, Frequent, 3608),
                    ("chemical", 0.05, Closed, 1771),
                ])
            }),
        ),
        (
            "2b Compounds_422 frequent/closed",
            Box::new(|| {
                regression(&[
                    ("compound", 0.10, Frequent, 15832),
                    ("compound", 0.10, Closed, 1246),
                    ("compound", 0.08, Frequent, 24402),
                    ("compound", 0.08, Closed, 1856),
                ])
            }),
        ),
        (
            "2c closed-no-etf ablation",
            Box::new(|| {
                regression(&[
                    ("compound", 0.10, ClosedNoEtf, 1092),
                    ("compound", 0.08, ClosedNoEtf, 1576),
                    ("chemical", 0.10, ClosedNoEtf, 459),
                    ("chemical", 0.05, ClosedNoEtf, 1765),
                ])
            }),
        ),
        ("3 closed faster than frequent on Compounds_422 @ 7%", Box::new(performance)),
        ("4a oracle equivalence", Box::new(|| timed(None, oracle_equivalence))),
        ("4b canonical form oracle", Box::new(|| timed(None, canonical_oracle))),
        ("4c order laws", Box::new(|| timed(None, order_laws))),
        ("4d counting oracle", Box::new(|| timed(None, counting_oracle))),
        ("4e determinism", Box::new(|| timed(None, determinism))),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Outcome::Pass(m) => println!("PASS    {name}: {m}"),
            Outcome::Fail(m) => {
                failed += 1;
                println!("FAIL    {name}: {m}")
            }
            Outcome::NotRun(m) => println!("NOT RUN {name}: {m}"),
        }
    }
    // Not a criterion: the documented run where the trie should stay empty.
    match timed(None, figure_one_trie) {
        Outcome::Pass(m) => println!("PASS    example: figure 1 trie: {m}"),
        Outcome::Fail(m) | Outcome::NotRun(m) => println!("FAIL    example: figure 1 trie: {m}"),
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
