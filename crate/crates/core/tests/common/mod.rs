#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rkit::classic;
use rkit::dedouble::{self, DedoubleOptions};
use rkit::graphs::overlap::OverlapGraph;
use rkit::halving;
use rkit::oracle::Goal;
use rkit::par::Execution;
use rkit::random::{random_genome_with, DupSpec, RandomSpec, ShapeSpec};
use rkit::verify::{replay_check, Suite};
use rkit::Genome;

pub fn g(s: &str) -> Genome {
    s.parse().unwrap()
}

/// A totally duplicated genome with `1 <= n <= max_n`; half are unilinear, a third same-signed.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize) -> Genome {
    let n = rng.gen_range(1..=max_n);
    let shape =
        if rng.gen_bool(0.5) { ShapeSpec::Linear(1) } else { ShapeSpec::Mixed(rng.gen_range(1..=3.min(2 * n))) };
    let spec = RandomSpec { n, duplication: DupSpec::Total, shape, same_signed: rng.gen_bool(1.0 / 3.0), seed: 0 };
    random_genome_with(&spec, rng).unwrap()
}

#[derive(Debug, Default)]
pub struct Tally {
    pub instances: usize,
    pub scenarios: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, what: &str, g: &Genome, outcome: rkit::Result<()>) {
        self.scenarios += 1;
        if let Err(e) = outcome {
            self.failures.push(format!("{what} on {g}: {e}"));
        }
    }
}

/// Every applicable scenario of every instance has the formula's length and reaches its goal.
pub fn scenario_properties(count: usize, max_n: usize, seed: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::default();
    for _ in 0..count {
        let x = random_instance(&mut rng, max_n);
        t.instances += 1;
        for suite in Suite::ALL {
            let applies = match suite {
                Suite::Halving | Suite::DedoubleDcj => true,
                _ => x.is_unilinear() && suite.applies(&x),
            };
            if !applies {
                continue;
            }
            let outcome = suite.formula(&x).and_then(|d| {
                let (s, goal) = suite.scenario(&x)?;
                replay_check(&x, &s, &goal, suite.goal(), d)
            });
            t.record(suite.name(), &x, outcome);
        }
        if x.is_unilinear() {
            let outcome = halving::disrupted_tandem_heuristic(&x).and_then(|r| {
                replay_check(&x, &r.scenario, &r.goal, Goal::GatheredTandem, r.bounds.achieved)?;
                if r.bounds.lower <= r.bounds.achieved && r.bounds.achieved <= r.bounds.upper {
                    Ok(())
                } else {
                    Err(rkit::Error::Inconsistent(format!("bounds {:?}", r.bounds)))
                }
            });
            t.record("disrupted", &x, outcome);
        }
        let single = Genome::identity(x.families() as u32);
        let outcome = classic::dcj_sort(&single, &first_copies(&x)).and_then(|(d, s)| {
            let end = s.replay(&single)?;
            if s.len() == d && end.same_as(&first_copies(&x)) {
                Ok(())
            } else {
                Err(rkit::Error::Inconsistent("DCJ sorting scenario".into()))
            }
        });
        t.record("dcj_sort", &x, outcome);
    }
    t
}

/// The genome with every second copy removed.
pub fn first_copies(g: &Genome) -> Genome {
    let mut h = g.clone();
    for c in &mut h.chromosomes {
        c.markers.retain(|m| m.copy == rkit::Paralog::First);
    }
    h.chromosomes.retain(|c| !c.markers.is_empty());
    h
}

/// Greedy packing against exact packing on random adjacency graphs.
pub fn greedy_vs_exact(count: usize, max_n: usize, seed: u64) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails = Vec::new();
    let mut checked = 0;
    for _ in 0..count {
        let x = random_instance(&mut rng, max_n);
        let ag = rkit::graphs::adjacency::AdjacencyGraph::new(&x).unwrap();
        let exact = dedouble::max_independent_cycles(
            &ag,
            dedouble::PackingMode::Exact,
            dedouble::DEFAULT_CYCLE_CAP,
            Execution::Sequential,
        );
        let Ok(exact) = exact else { continue };
        let greedy =
            dedouble::max_independent_cycles(&ag, dedouble::PackingMode::Greedy, usize::MAX, Execution::Sequential)
                .unwrap();
        checked += 1;
        if 2 * greedy.size < exact.size || greedy.size > exact.size {
            fails.push(format!("{x}: greedy {} exact {}", greedy.size, exact.size));
        }
    }
    (checked, fails)
}

/// After every sorting reversal the maintained overlap graph equals a fresh one.
pub fn overlap_complementation(count: usize, max_n: usize, seed: u64) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = 0;
    let mut fails = Vec::new();
    let opts = DedoubleOptions { exec: Execution::Sequential, ..Default::default() };
    let mut done = 0;
    while done < count {
        let n = rng.gen_range(2..=max_n);
        let x = random_genome_with(&RandomSpec::unilinear(n, 0), &mut rng).unwrap();
        if !OverlapGraph::new(&x).unwrap().is_oriented() {
            continue;
        }
        done += 1;
        let (r, rev) = match dedouble::reversal::dedouble_reversal_steps(&x, opts) {
            Ok(v) => v,
            Err(e) => {
                fails.push(format!("{x}: {e}"));
                continue;
            }
        };
        let mut cur = x.clone();
        let merges = r.scenario.len() - rev.len();
        for op in &r.scenario.ops[..merges] {
            cur = op.apply(&cur).unwrap();
        }
        for s in &rev {
            cur = s.op.apply(&cur).unwrap();
            steps += 1;
            if s.overlap != OverlapGraph::new(&cur).unwrap() {
                fails.push(format!("{x}: overlap differs after {}", s.op));
                break;
            }
        }
    }
    (steps, fails)
}
