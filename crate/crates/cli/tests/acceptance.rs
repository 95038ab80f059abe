//! Acceptance suite. Runs without the libtest harness so that one status line
//! per criterion is always printed; exits non-zero if any criterion fails.

// Tolerances are pinned at zero, so `<= MAX_MISMATCHES` compares against the minimum.
#![allow(clippy::absurd_extreme_comparisons)]

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topdesign_cli::{cmd_decide, cmd_verify, Format, VerifyOptions, WitnessOverride, EXIT_NEGATIVE, EXIT_OK};
use topdesign_core::concrete::{
    blocks_containing, canonical_homeomorphism, check_homeomorphism, local_design_check, realize, Block,
    ConcreteSet, Count, Refutation,
};
use topdesign_core::designs::{crosscheck_embedding_equivalence, sweep, GridSpec, ViolationKind};
use topdesign_core::finitebrute::{all_k_subsets_lambda, brute_lambda, BruteResult, FiniteInstance};
use topdesign_core::{decide, Cardinal, DesignType, FamilyDescriptor, SpaceDescriptor, SubsetDescriptor};

// Pinned parameters. Every criterion is exact: zero mismatches allowed.
const MAX_MISMATCHES: usize = 0;
const PREFIX_MAX: u64 = 12;
const ODD_TAIL_PROBES: usize = 20;
const ODD_TAIL_PROBE_RANGE: u64 = 40;
const CUTOFF: u64 = 50;
const BRUTE_MAX_N: u32 = 8;
const RANDOM_INSTANCES: usize = 50;
const BRUTE_TIME_LIMIT: Duration = Duration::from_secs(10);
const SEED: u64 = 0x5eed_0001;

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Check); 7] = [
        ("embedding equivalence over the descriptor grid", criterion_1),
        ("type monotonicity and cardinality bound", criterion_2),
        ("concrete homeomorphisms on prefix sets", criterion_3),
        ("odd-tail witness for finite C with b", criterion_4),
        ("boundary refutation when card(D) = card(C) + 1", criterion_5),
        ("finite brute-force anchor", criterion_6),
        ("CLI golden outputs", criterion_7),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(msg)
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} [{secs:.2}s]", i + 1)
            }
        }
    }
    let _ = panic::take_hook();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid_cases() -> Vec<(SpaceDescriptor, SubsetDescriptor, SubsetDescriptor)> {
    let grid = GridSpec::default();
    let mut out = Vec::new();
    for x in grid.spaces() {
        let subsets = grid.subsets(x);
        for c in &subsets {
            for d in &subsets {
                out.push((x, *c, *d));
            }
        }
    }
    out
}

fn criterion_1() -> Result<String, String> {
    let grid = GridSpec::default();
    ensure(
        grid.max_finite == 6 && grid.max_aleph == 1 && !grid.finite_only,
        || format!("unexpected default grid {grid:?}"),
    )?;
    let cases = grid_cases();
    let mut mismatches = Vec::new();
    for (x, c, d) in &cases {
        let eq = crosscheck_embedding_equivalence(c, d, *x).map_err(|e| e.to_string())?;
        if !eq.consistent() {
            mismatches.push(format!("X={} C={c} D={d}: {:?}", x.size(), eq.disagreements()));
        }
    }
    let report = sweep(&grid);
    let sweep_eq = report
        .violations
        .iter()
        .filter(|v| matches!(v.kind, ViolationKind::Equivalence(_) | ViolationKind::Decide(..)))
        .count();
    ensure(report.cases == cases.len(), || format!("sweep saw {} cases, grid has {}", report.cases, cases.len()))?;
    ensure(mismatches.len() + sweep_eq <= MAX_MISMATCHES, || {
        format!("{} disagreements, first: {}", mismatches.len() + sweep_eq, mismatches.first().cloned().unwrap_or_default())
    })?;
    Ok(format!("{} cases, 4 statements agree on all", cases.len()))
}

fn criterion_2() -> Result<String, String> {
    let cases = grid_cases();
    let mut bad = Vec::new();
    for (x, c, d) in &cases {
        let v: Vec<bool> = DesignType::ALL
            .iter()
            .map(|&ty| decide(ty, c, d, *x).map(|v| v.exists()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        if v[0] && !v[1] {
            bad.push(format!("type 1 without type 2 at X={} C={c} D={d}", x.size()));
        }
        if v[2] && !v[3] {
            bad.push(format!("type 3 without type 4 at X={} C={c} D={d}", x.size()));
        }
        if v.iter().any(|&e| e) && c.size > d.size {
            bad.push(format!("design with card(C) > card(D) at X={} C={c} D={d}", x.size()));
        }
    }
    let report = sweep(&GridSpec::default());
    let sweep_bad = report
        .violations
        .iter()
        .filter(|v| {
            matches!(
                v.kind,
                ViolationKind::Type1WithoutType2 | ViolationKind::Type3WithoutType4 | ViolationKind::CardinalityBound(_)
            )
        })
        .count();
    ensure(bad.len() + sweep_bad <= MAX_MISMATCHES, || {
        format!("{} violations, first: {}", bad.len() + sweep_bad, bad.first().cloned().unwrap_or_default())
    })?;
    Ok(format!("{} cases, 0 violations", cases.len()))
}

fn prefix_sets() -> Vec<ConcreteSet> {
    let bits = PREFIX_MAX + 1;
    let points = |mask: u64| (0..bits).filter(move |i| mask >> i & 1 == 1);
    let finite = (0..1u64 << bits).map(|m| ConcreteSet::finite(points(m)));
    let cofinite = (0..1u64 << bits).map(|m| ConcreteSet::cofinite(points(m)));
    finite.chain(cofinite).collect()
}

fn criterion_3() -> Result<String, String> {
    let sets = prefix_sets();
    let half = sets.len() / 2;
    // Complement of finite set i is cofinite set i + half and vice versa.
    let complement = |i: usize| if i < half { i + half } else { i - half };
    for (i, s) in sets.iter().enumerate() {
        ensure(sets[complement(i)] == s.complement(), || format!("complement indexing broken at {s}"))?;
    }
    let descs: Vec<SubsetDescriptor> = sets.iter().map(ConcreteSet::descriptor).collect();
    let n = sets.len();
    let mut has_map = vec![0u64; (n * n).div_ceil(64)];
    let mut maps = 0u64;
    let mut mismatches = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let map = canonical_homeomorphism(&sets[i], &sets[j]);
            if map.is_some() != descs[i].subspace_homeomorphic(&descs[j]) && mismatches.len() < 5 {
                mismatches.push(format!("map/descriptor disagree on {} {}", sets[i], sets[j]));
            }
            if let Some(m) = map {
                maps += 1;
                let k = i * n + j;
                has_map[k / 64] |= 1 << (k % 64);
                if !check_homeomorphism(&m, &sets[i], &sets[j]) && mismatches.len() < 5 {
                    mismatches.push(format!("map {m} fails the check for {} {}", sets[i], sets[j]));
                }
            }
        }
    }
    let bit = |i: usize, j: usize| has_map[(i * n + j) / 64] >> ((i * n + j) % 64) & 1 == 1;
    let mut pairs = 0u64;
    for i in 0..n {
        for j in 0..n {
            let both = bit(i, j) && bit(complement(i), complement(j));
            if both {
                pairs += 1;
            }
            if both != descs[i].pair_equivalent(&descs[j]) && mismatches.len() < 5 {
                mismatches.push(format!("pair equivalence disagrees on {} {}", sets[i], sets[j]));
            }
        }
    }
    ensure(mismatches.len() <= MAX_MISMATCHES, || mismatches.join("; "))?;
    Ok(format!("{n} sets, {} pairs, {maps} maps checked, {pairs} pair-equivalent", n * n))
}

fn criterion_4() -> Result<String, String> {
    let x = SpaceDescriptor::countable();
    let c = x.small(Cardinal::Finite(2), true);
    let d = SubsetDescriptor::new(Cardinal::ALEPH_0, true, Cardinal::ALEPH_0);
    let verdict = decide(DesignType::Type1, &c, &d, x).map_err(|e| e.to_string())?;
    ensure(verdict.witness() == Some(FamilyDescriptor::OddTail), || format!("decided {:?}", verdict))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pool: Vec<u64> = (1..ODD_TAIL_PROBE_RANGE).collect();
    let probes: Vec<ConcreteSet> = (0..ODD_TAIL_PROBES)
        .map(|i| {
            if i % 2 == 0 {
                ConcreteSet::finite([0, *pool.choose(&mut rng).unwrap()])
            } else {
                ConcreteSet::finite(pool.choose_multiple(&mut rng, 2).copied())
            }
        })
        .collect();
    let report = local_design_check(&FamilyDescriptor::OddTail, DesignType::Type1, &c, &d, &probes, CUTOFF)
        .map_err(|e| e.to_string())?;
    ensure(report.rejected.is_empty(), || format!("rejected probes {:?}", report.rejected))?;
    ensure(report.bad_blocks.is_empty(), || format!("blocks not pair-equivalent to D: {:?}", report.bad_blocks))?;
    ensure(report.consistent(), || format!("refutation {:?}", report.refutation))?;

    // Blocks independently: b and every even number in, odd 2k+1 in iff k < s.
    for s in 1..=CUTOFF {
        let block = realize(&FamilyDescriptor::OddTail, s).map_err(|e| e.to_string())?;
        for p in 0..4 * CUTOFF {
            let want = p % 2 == 0 || (p - 1) / 2 < s;
            ensure(block.contains(p) == want, || format!("block {s} membership of {p}"))?;
        }
        let desc = block.descriptor();
        ensure(desc.pair_equivalent(&d), || format!("block {s} has descriptor {desc}"))?;
    }

    let mut with_b = 0;
    for r in &report.probes {
        let e = r.probe.points();
        with_b += usize::from(r.probe.contains_b());
        let expected = e.iter().filter(|p| *p % 2 == 1).map(|p| (p - 1) / 2).max().unwrap_or(0);
        ensure(r.excluded == Some(expected), || format!("{}: excluded {:?}, expected {expected}", r.probe, r.excluded))?;
        let horizon = expected + CUTOFF;
        let missed = (1..=horizon)
            .filter(|&s| !e.iter().all(|&p| Block::OddTail { s }.contains(p)))
            .count() as u64;
        ensure(missed == expected, || format!("{}: {missed} blocks miss it, expected {expected}", r.probe))?;
        ensure(r.count == Count::AtLeast(CUTOFF), || format!("{}: count {}", r.probe, r.count))?;
    }
    ensure(with_b > 0 && with_b < report.probes.len(), || "probe sample lacks b or non-b probes".into())?;
    Ok(format!(
        "{} probes ({with_b} with b), {} blocks checked, exclusions match max odd index",
        report.probes.len(),
        report.blocks_checked
    ))
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn criterion_5() -> Result<String, String> {
    let query = fixture("boundary.query");
    let decided = cmd_decide(&query, Format::Record);
    ensure(decided.code == EXIT_NEGATIVE, || format!("decide exit {}", decided.code))?;
    ensure(decided.stdout.contains("\"case_tag\":\"c1-bound\""), || decided.stdout.clone())?;

    let options = VerifyOptions { cutoff: CUTOFF, witness: Some(WitnessOverride::ClassW) };
    let out = cmd_verify(&query, &["fin:0,5".into(), "fin:5,6".into()], options, Format::Record);
    ensure(out.code == EXIT_NEGATIVE, || format!("verify exit {}: {}{}", out.code, out.stdout, out.stderr))?;
    ensure(
        out.stdout.contains("\"refutation\":\"fin:0,5 in AtLeast(50) blocks but fin:5,6 in Exactly(1) blocks\""),
        || out.stdout.clone(),
    )?;

    // The same split for every pair of ordinary points in a prefix.
    let x = SpaceDescriptor::countable();
    let c = x.small(Cardinal::Finite(2), true);
    let d = x.small(Cardinal::Finite(3), true);
    let family = FamilyDescriptor::ClassW(d);
    let mut pairs = 0;
    for p in 1..10u64 {
        for q in p + 1..10 {
            let with_b = ConcreteSet::finite([0, p]);
            let without = ConcreteSet::finite([p, q]);
            ensure(blocks_containing(&family, &with_b, CUTOFF) == Ok(Count::AtLeast(CUTOFF)), || format!("{with_b}"))?;
            ensure(blocks_containing(&family, &without, CUTOFF) == Ok(Count::Exactly(1)), || format!("{without}"))?;
            let report = local_design_check(&family, DesignType::Type1, &c, &d, &[with_b.clone(), without.clone()], CUTOFF)
                .map_err(|e| e.to_string())?;
            let expected = Refutation::Unbalanced {
                first: (with_b, Count::AtLeast(CUTOFF)),
                second: (without, Count::Exactly(1)),
            };
            ensure(report.refutation == Some(expected), || format!("{:?}", report.refutation))?;
            pairs += 1;
        }
    }
    // Two more points in D clear the bound.
    let roomy = x.small(Cardinal::Finite(4), true);
    let v = decide(DesignType::Type1, &c, &roomy, x).map_err(|e| e.to_string())?;
    ensure(v.exists(), || format!("card(D) = card(C) + 2 gave {v:?}"))?;
    Ok(format!("decide says c1-bound; refutation reproduced for {pairs} probe pairs"))
}

/// Independent binomial coefficient.
fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_6() -> Result<String, String> {
    let start = Instant::now();
    let mut anchors = 0;
    for n in 2..=BRUTE_MAX_N {
        for k in 2..n {
            for t in 1..k {
                let inst = FiniteInstance::all_k_subsets(n, k, t).map_err(|e| e.to_string())?;
                let brute = brute_lambda(&inst, DesignType::Type2).map_err(|e| e.to_string())?;
                let want = choose((n - t).into(), (k - t).into());
                let closed = all_k_subsets_lambda(n.into(), k.into(), t.into()).map_err(|e| e.to_string())?;
                ensure(brute == BruteResult::Exactly(want) && closed == want, || {
                    format!("n={n} k={k} t={t}: brute {brute}, closed form {closed}, expected {want}")
                })?;
                anchors += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut uniform = 0;
    for _ in 0..RANDOM_INSTANCES {
        let n = rng.gen_range(3..=BRUTE_MAX_N);
        let d = rng.gen_range(1..=n);
        let c = rng.gen_range(1..=d);
        let blocks: Vec<Vec<u32>> = FiniteInstance::all_k_subsets(n, d, 1.min(d))
            .map_err(|e| e.to_string())?
            .blocks()
            .into_iter()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let inst = FiniteInstance::new(n, blocks, c, d).map_err(|e| e.to_string())?;
        let r: Vec<_> = DesignType::ALL.iter().map(|&ty| brute_lambda(&inst, ty)).collect();
        ensure(r[0] == r[1] && r[2] == r[3], || format!("types disagree on\n{inst}: {r:?}"))?;
        uniform += usize::from(matches!(r[0], Ok(BruteResult::Exactly(_))));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < BRUTE_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{anchors} closed-form anchors, {RANDOM_INSTANCES} random instances ({uniform} uniform) agree pairwise"
    ))
}

struct Golden {
    name: &'static str,
    args: &'static [&'static str],
    code: i32,
}

const GOLDEN: [Golden; 5] = [
    Golden { name: "decide_odd_tail", args: &["decide", "odd_tail.query"], code: EXIT_OK },
    Golden { name: "decide_embed_fail", args: &["decide", "embed_fail.query"], code: EXIT_NEGATIVE },
    Golden {
        name: "verify_odd_tail",
        args: &["verify", "odd_tail.query", "fin:0,2", "fin:0,8", "--cutoff", "50"],
        code: EXIT_OK,
    },
    Golden {
        name: "verify_boundary",
        args: &["verify", "boundary.query", "fin:0,5", "fin:5,6", "--witness", "w", "--cutoff", "50"],
        code: EXIT_NEGATIVE,
    },
    Golden { name: "brute_triples7", args: &["brute", "triples7.inst", "--t", "2"], code: EXIT_OK },
];

fn run_cli(args: &[&str]) -> (i32, String) {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let out = Command::new(env!("CARGO_BIN_EXE_topdesign"))
        .current_dir(fixtures)
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn criterion_7() -> Result<String, String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for g in &GOLDEN {
        let (code, first) = run_cli(g.args);
        let (code2, second) = run_cli(g.args);
        ensure(code == g.code && code2 == g.code, || format!("{}: exit {code}/{code2}, expected {}", g.name, g.code))?;
        ensure(first == second, || format!("{}: output differs between runs", g.name))?;
        let path = dir.join(format!("{}.out", g.name));
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(first == expected, || format!("{}: got {first:?}, golden {expected:?}", g.name))?;
    }
    Ok(format!("{} commands match their golden records byte for byte", GOLDEN.len()))
}
