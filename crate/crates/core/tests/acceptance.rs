//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::g;
use rkit::classic::{self, TelomereWeight};
use rkit::classify::{is_1tandem, is_perfectly_duplicated};
use rkit::dedouble::{self, DedoubleOptions, PackingMode};
use rkit::graphs::natural::natural_graph;
use rkit::halving::{self, Rule, ShapeState};
use rkit::oracle::{self, Cap, Goal, Model};
use rkit::random::{random_genome_with, RandomSpec};
use rkit::verify::{sweep, Suite, SweepConfig};
use rkit::{Genome, Operation};

const BI_TIME_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_TIME_LIMIT: Duration = Duration::from_secs(600);
const BREAKPOINT_TOLERANCE: f64 = 1e-12;
const PROPERTY_INSTANCES: usize = 10_000;
const PROPERTY_MAX_N: usize = 8;
const SELF_REDUCIBILITY_INSTANCES: usize = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn bi_sorting() -> Outcome {
    let start = Instant::now();
    let x = g("[ 4 5 3 2 10 7 8 1 9 6 ]");
    let d = classic::bi_distance(&x).map_err(|e| e.to_string())?;
    let s = classic::bi_scenario(&x).map_err(|e| e.to_string())?;
    let end = s.replay(&x).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(d == 3, format!("distance {d}"))?;
    ensure(
        s.len() == 3 && s.ops.iter().all(|op| matches!(op, Operation::Bi { .. })),
        format!("{} operations", s.len()),
    )?;
    ensure(end.same_as(&Genome::identity(10)), format!("ends on {end}"))?;
    ensure(took < BI_TIME_LIMIT, format!("took {took:?}"))?;
    Ok(format!("d=3, 3 BIs replay to the identity in {took:.1?}"))
}

fn breakpoint() -> Outcome {
    let id5 = Genome::identity(5);
    let id10 = Genome::identity(10);
    let a =
        classic::breakpoint_distance(&g("[ 1 2 -4 -5 3 ]"), &id5, TelomereWeight::Full).map_err(|e| e.to_string())?;
    let b = classic::breakpoint_distance(&g("[ 1 2 -4 -5 -7 ] ( 6 3 -8 9 -10 )"), &id10, TelomereWeight::Half)
        .map_err(|e| e.to_string())?;
    ensure((a - 4.0).abs() <= BREAKPOINT_TOLERANCE && (b - 8.5).abs() <= BREAKPOINT_TOLERANCE, format!("{a} and {b}"))?;
    Ok(format!("{a} and {b}"))
}

fn halving_example() -> Outcome {
    let x = g("[ 1 4' 1' -2 2' 3 -4 3' ]");
    let d = halving::halving_distance(&x).map_err(|e| e.to_string())?;
    let ng = natural_graph(&x);
    let mut shape = ng.shape();
    shape.sort();
    let r = halving::halving_scenario(&x).map_err(|e| e.to_string())?;
    ensure(d == 3, format!("distance {d}"))?;
    ensure(shape == vec![(false, 3), (true, 1), (true, 4)], format!("components {shape:?}"))?;
    ensure(r.scenario.len() == 3 && is_perfectly_duplicated(&r.goal), "scenario")?;
    Ok("d=3; a 3-path, a 1-cycle and a 4-cycle".into())
}

fn dedoubling() -> Outcome {
    let x = g("[ 4 2' -1' -3 -1 2 -4' ] [ 5' -3' 6 5 6' 7 8 8' 7' ]");
    let r = dedouble::dedouble_dcj(&x, DedoubleOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.mode == PackingMode::Exact && r.c_i == 2 && r.distance == 6, format!("C_i={} d={}", r.c_i, r.distance))?;
    ensure(r.scenario.replay(&x).map_err(|e| e.to_string())?.same_as(&r.goal), "replay")?;
    Ok("C_i=2, d=6 (exact)".into())
}

fn tandem_bi() -> Outcome {
    let x = g("[ 1' 2' 3 3' 5 4 1 2 4' 5' ]");
    let ddcj = halving::tandem_dcj_distance(&x).map_err(|e| e.to_string())?;
    let dbi = halving::tandem_bi_distance(&x).map_err(|e| e.to_string())?;
    ensure(ddcj == 4 && dbi == 2, format!("d_DCJ={ddcj} d_BI={dbi}"))?;
    let r = halving::tandem_bi_scenario(&x).map_err(|e| e.to_string())?;
    ensure(r.scenario.len() == 2 && is_1tandem(&r.goal), "scenario")?;
    let mut cur = x;
    let mut d = ddcj;
    for op in &r.scenario.ops {
        let Operation::Bi { excision, reintegration } = op else { return Err(format!("{op} is not a BI")) };
        for dcj in [excision, reintegration] {
            cur = dcj.apply(&cur).map_err(|e| e.to_string())?;
            let next =
                oracle::bfs_distance(&cur, Goal::Tandem, Model::Dcj, Cap::default()).map_err(|e| e.to_string())?;
            ensure(next + 1 == d, format!("{dcj} moves the DCJ distance {d} -> {next}"))?;
            d = next;
        }
    }
    Ok("d_DCJ=4, d_BI=2, each BI = two DCJs each lowering the exhaustive DCJ distance by 1".into())
}

fn tandem_dcj() -> Outcome {
    let x = g("[ 1 -4 5 2' -3 2 1' 4' 5' 3' ]");
    let c = natural_graph(&x).census();
    ensure((c.op, c.ep, c.oc, c.ec) == (1, 0, 1, 1), format!("census {c:?}"))?;
    let f = halving::tandem_dcj_distance(&x).map_err(|e| e.to_string())?;
    let o = oracle::bfs_distance(&x, Goal::Tandem, Model::Dcj, Cap::default()).map_err(|e| e.to_string())?;
    let r = halving::tandem_dcj_scenario(&x).map_err(|e| e.to_string())?;
    ensure(f == o && r.result.scenario.len() == f, format!("formula {f}, oracle {o}"))?;
    Ok(format!("OP=1 EP=0 OC=1 EC=1; formula {f} = oracle {o}"))
}

fn oracle_sweep() -> Outcome {
    let cfg = SweepConfig {
        exhaustive_max_n: 3,
        random_n: 4,
        random_count: 500,
        seed: 7,
        replay: false,
        ..Default::default()
    };
    let report = sweep(&Suite::ALL, &cfg).map_err(|e| e.to_string())?;
    let summary: Vec<String> =
        report.stats.iter().map(|(s, st)| format!("{} {}/{}", s.name(), st.passed, st.checked)).collect();
    if let Some(f) = report.failures.first() {
        return Err(format!("{} failures, first {f:?}", report.failures.len()));
    }
    ensure(report.stats.iter().all(|(_, st)| st.checked > 0), "an empty suite")?;
    ensure(report.elapsed < SWEEP_TIME_LIMIT, format!("took {:?}", report.elapsed))?;
    Ok(format!("{} in {:.0?}", summary.join(", "), report.elapsed))
}

fn shape_parity() -> Result<usize, String> {
    let mut checked = 0;
    for d in 0..8 {
        for c in 0..8 {
            let s = ShapeState { doubled: d, single: c };
            for rule in [Rule::One, Rule::Two, Rule::ThreeA, Rule::ThreeB, Rule::ThreeC, Rule::ThreeD] {
                let Some(t) = rule.apply(s) else { continue };
                checked += 1;
                let flips = t.parity() != s.parity();
                ensure(flips == (rule == Rule::ThreeD), format!("{rule:?} on {s:?}"))?;
            }
        }
    }
    Ok(checked)
}

fn properties() -> Outcome {
    let t = common::scenario_properties(PROPERTY_INSTANCES, PROPERTY_MAX_N, 11);
    if let Some(f) = t.failures.first() {
        return Err(format!("{} scenario failures, first: {f}", t.failures.len()));
    }
    let rules = shape_parity()?;
    let (packings, fails) = common::greedy_vs_exact(2000, 10, 12);
    if let Some(f) = fails.first() {
        return Err(format!("packing: {f}"));
    }
    let (steps, fails) = common::overlap_complementation(300, 8, 13);
    if let Some(f) = fails.first() {
        return Err(format!("overlap: {f}"));
    }
    Ok(format!(
        "{} scenarios on {} instances; {rules} rule applications; {packings} packings; {steps} complemented overlap graphs",
        t.scenarios, t.instances
    ))
}

fn self_reducibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..SELF_REDUCIBILITY_INSTANCES {
        let n = rng.gen_range(1..=5);
        let x = random_genome_with(&RandomSpec::unilinear(n, 0), &mut rng).unwrap();
        let d = halving::halving_distance(&x).map_err(|e| e.to_string())?;
        let s = oracle::scenario_from_distance(&x, Model::Dcj, halving::halving_distance)
            .map_err(|e| format!("{x}: {e}"))?;
        let end = s.replay(&x).map_err(|e| e.to_string())?;
        ensure(s.len() == d && is_perfectly_duplicated(&end), format!("{x}: {} steps for {d}", s.len()))?;
    }
    Ok(format!("{SELF_REDUCIBILITY_INSTANCES} optimal scenarios"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("bi sorting", bi_sorting),
        ("breakpoint distances", breakpoint),
        ("halving", halving_example),
        ("dedoubling", dedoubling),
        ("tandem bi", tandem_bi),
        ("tandem dcj", tandem_dcj),
        ("oracle sweep", oracle_sweep),
        ("property suites", properties),
        ("self-reducibility", self_reducibility),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
