//! Formula-versus-oracle sweeps.
//!
//! Each suite pairs a distance formula with a goal and an operation model. Every instance is
//! checked against the exhaustive distance read from an orbit table and, optionally, the
//! emitted scenario is replayed to its goal.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dedouble::{self, DedoubleOptions};
use crate::error::{Error, Result};
use crate::genome::Genome;
use crate::graphs::overlap::OverlapGraph;
use crate::halving;
use crate::ops::Scenario;
use crate::oracle::orbit::table_distance;
use crate::oracle::{Goal, Layout, Model, OrbitTable};
use crate::par::{self, Execution};
use crate::random::{all_unilinear, random_genome_with, RandomSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Halving,
    TandemDcj,
    TandemBi,
    DedoubleDcj,
    DedoubleDcjLinear,
    DedoubleReversal,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Halving,
        Suite::TandemDcj,
        Suite::TandemBi,
        Suite::DedoubleDcj,
        Suite::DedoubleDcjLinear,
        Suite::DedoubleReversal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Halving => "halving",
            Suite::TandemDcj => "tandem-dcj",
            Suite::TandemBi => "tandem-bi",
            Suite::DedoubleDcj => "dedouble-dcj",
            Suite::DedoubleDcjLinear => "dedouble-dcj-linear",
            Suite::DedoubleReversal => "dedouble-reversal",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn model(self) -> Model {
        match self {
            Suite::TandemBi => Model::Bi,
            Suite::DedoubleReversal => Model::Reversal,
            _ => Model::Dcj,
        }
    }

    pub fn goal(self) -> Goal {
        match self {
            Suite::Halving => Goal::Perfect,
            Suite::TandemDcj | Suite::TandemBi => Goal::Tandem,
            Suite::DedoubleDcj | Suite::DedoubleReversal => Goal::Dedoubled,
            Suite::DedoubleDcjLinear => Goal::DedoubledLinear,
        }
    }

    /// Same-signed genomes for block interchanges, oriented genomes for reversals.
    pub fn applies(self, g: &Genome) -> bool {
        match self {
            Suite::TandemBi => {
                let first: HashMap<u32, bool> = g.markers().map(|m| (m.id, m.is_plus())).collect();
                g.markers().all(|m| first[&m.id] == m.is_plus())
            }
            Suite::DedoubleReversal => OverlapGraph::new(g).is_ok_and(|o| o.is_oriented()),
            _ => true,
        }
    }

    pub fn formula(self, g: &Genome) -> Result<usize> {
        let opts = DedoubleOptions { exec: Execution::Sequential, ..Default::default() };
        match self {
            Suite::Halving => halving::halving_distance(g),
            Suite::TandemDcj => halving::tandem_dcj_distance(g),
            Suite::TandemBi => halving::tandem_bi_distance(g),
            Suite::DedoubleDcj => dedouble::dcj_distance(g, opts),
            Suite::DedoubleDcjLinear => dedouble::linear_distance(g, opts),
            Suite::DedoubleReversal => dedouble::dedouble_reversal(g, opts).map(|r| r.distance),
        }
    }

    /// The emitted scenario and the genome it claims to reach.
    pub fn scenario(self, g: &Genome) -> Result<(Scenario, Genome)> {
        let opts = DedoubleOptions { exec: Execution::Sequential, ..Default::default() };
        match self {
            Suite::Halving => halving::halving_scenario(g).map(|r| (r.scenario, r.goal)),
            Suite::TandemDcj => halving::tandem_dcj_scenario(g).map(|r| (r.result.scenario, r.result.goal)),
            Suite::TandemBi => halving::tandem_bi_scenario(g).map(|r| (r.scenario, r.goal)),
            Suite::DedoubleDcj => dedouble::dedouble_dcj(g, opts).map(|r| (r.scenario, r.goal)),
            Suite::DedoubleDcjLinear => dedouble::dedouble_dcj_linear(g, opts).map(|r| (r.scenario, r.goal)),
            Suite::DedoubleReversal => dedouble::dedouble_reversal(g, opts).map(|r| (r.scenario, r.goal)),
        }
    }
}

/// Replay `scenario` from `g` and check it ends on `goal`, satisfies the predicate and has
/// length `distance`.
pub fn replay_check(g: &Genome, scenario: &Scenario, goal: &Genome, predicate: Goal, distance: usize) -> Result<()> {
    let end = scenario.replay(g)?;
    if !end.same_as(goal) {
        return Err(Error::Inconsistent(format!("replay ends on {end}, not {goal}")));
    }
    if !predicate.holds_for(&end) {
        return Err(Error::Inconsistent(format!("{end} does not satisfy {predicate:?}")));
    }
    if scenario.len() != distance {
        return Err(Error::Inconsistent(format!("{} operations for distance {distance}", scenario.len())));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub suite: Suite,
    pub genome: String,
    pub formula: Option<usize>,
    pub oracle: Option<u32>,
    pub message: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteStats {
    pub checked: usize,
    pub passed: usize,
    /// Instances outside the suite's domain.
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub stats: Vec<(Suite, SuiteStats)>,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.stats.iter().all(|(_, s)| s.checked == s.passed)
    }

    pub fn stats_of(&self, suite: Suite) -> Option<&SuiteStats> {
        self.stats.iter().find(|(s, _)| *s == suite).map(|(_, st)| st)
    }

    /// One CSV line per suite.
    pub fn csv(&self) -> String {
        let mut out = String::from("suite,checked,passed,skipped,failed\n");
        for (suite, s) in &self.stats {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                suite.name(),
                s.checked,
                s.passed,
                s.skipped,
                s.checked - s.passed
            ));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepConfig {
    /// Every unilinear genome with at most this many families.
    pub exhaustive_max_n: usize,
    /// Seeded random unilinear genomes of this size, if any.
    pub random_n: usize,
    pub random_count: usize,
    pub seed: u64,
    /// Also replay every emitted scenario.
    pub replay: bool,
    pub exec: Execution,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            exhaustive_max_n: 3,
            random_n: 4,
            random_count: 500,
            seed: 42,
            replay: false,
            exec: Execution::default(),
        }
    }
}

/// Orbit tables per size and model, with goal distance arrays.
#[derive(Default)]
pub struct Tables {
    tables: HashMap<(usize, Model), OrbitTable>,
    dists: HashMap<(usize, Model, Goal), Vec<u32>>,
}

impl Tables {
    pub fn distance(&mut self, g: &Genome, model: Model, goal: Goal) -> Result<Option<u32>> {
        self.prepare(g.families(), model, goal)?;
        let n = g.families();
        Ok(table_distance(&self.tables[&(n, model)], &self.dists[&(n, model, goal)], g))
    }

    pub fn prepare(&mut self, n: usize, model: Model, goal: Goal) -> Result<()> {
        if let std::collections::hash_map::Entry::Vacant(slot) = self.tables.entry((n, model)) {
            let seed_genome = all_unilinear(n, true).next().expect("n >= 1");
            let layout = Layout::of(&seed_genome)?;
            slot.insert(OrbitTable::build(n, model, &[layout.encode(&seed_genome)])?);
        }
        let table = &self.tables[&(n, model)];
        self.dists.entry((n, model, goal)).or_insert_with(|| table.distances(goal));
        Ok(())
    }

    fn lookup(&self, g: &Genome, model: Model, goal: Goal) -> Option<u32> {
        let n = g.families();
        table_distance(self.tables.get(&(n, model))?, self.dists.get(&(n, model, goal))?, g)
    }
}

/// The genomes a sweep visits: all unilinear ones up to `exhaustive_max_n`, then the random
/// sample.
pub fn instances(cfg: &SweepConfig) -> Vec<Genome> {
    let mut out: Vec<Genome> = (1..=cfg.exhaustive_max_n).flat_map(|n| all_unilinear(n, false)).collect();
    if cfg.random_count > 0 && cfg.random_n > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.random_count {
            out.push(random_genome_with(&RandomSpec::unilinear(cfg.random_n, 0), &mut rng).expect("valid spec"));
        }
    }
    out
}

fn check(suite: Suite, g: &Genome, tables: &Tables, replay: bool) -> Option<std::result::Result<(), Failure>> {
    if !suite.applies(g) {
        return None;
    }
    let oracle = tables.lookup(g, suite.model(), suite.goal());
    let fail =
        |formula: Option<usize>, message: String| Failure { suite, genome: g.to_string(), formula, oracle, message };
    let formula = match suite.formula(g) {
        Ok(d) => d,
        Err(e) => return Some(Err(fail(None, e.to_string()))),
    };
    if oracle != Some(formula as u32) {
        return Some(Err(fail(Some(formula), "formula differs from oracle".into())));
    }
    if replay {
        let outcome = suite.scenario(g).and_then(|(s, goal)| replay_check(g, &s, &goal, suite.goal(), formula));
        if let Err(e) = outcome {
            return Some(Err(fail(Some(formula), e.to_string())));
        }
    }
    Some(Ok(()))
}

/// Run `suites` over the configured instances.
pub fn sweep(suites: &[Suite], cfg: &SweepConfig) -> Result<Report> {
    let start = Instant::now();
    let genomes = instances(cfg);
    let mut tables = Tables::default();
    let mut sizes: Vec<usize> = genomes.iter().map(|g| g.families()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for &n in &sizes {
        for &s in suites {
            tables.prepare(n, s.model(), s.goal())?;
        }
    }
    let mut stats = Vec::new();
    let mut failures = Vec::new();
    for &suite in suites {
        let outcomes = par::map(cfg.exec, &genomes, |g| check(suite, g, &tables, cfg.replay));
        let mut st = SuiteStats::default();
        for o in outcomes {
            match o {
                None => st.skipped += 1,
                Some(Ok(())) => {
                    st.checked += 1;
                    st.passed += 1;
                }
                Some(Err(f)) => {
                    st.checked += 1;
                    failures.push(f);
                }
            }
        }
        stats.push((suite, st));
    }
    Ok(Report { stats, failures, elapsed: start.elapsed() })
}
