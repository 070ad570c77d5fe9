//! Subcommand bodies.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde_json::json;

use rkit::classic::{self, TelomereWeight};
use rkit::classify::classify;
use rkit::dedouble::{self, DedoubleOptions, PackingMode};
use rkit::graphs::adjacency::AdjacencyGraph;
use rkit::graphs::export::{overlap_dot, paralog_dot};
use rkit::graphs::natural::natural_graph;
use rkit::graphs::overlap::OverlapGraph;
use rkit::graphs::Census;
use rkit::halving;
use rkit::oracle::{self, Goal, Model};
use rkit::random::{random_genome, DupSpec, RandomSpec, ShapeSpec};
use rkit::verify::{self, Suite, SweepConfig};
use rkit::{Chromosome, Genome, Marker, Paralog};

use crate::output::Report;
use crate::{
    Cli, Command, DedoubleArgs, DedoubleModel, DistanceModel, Failure, GraphKind, OracleGoal, OracleModel, Packing,
    RandomArgs, SortModel, TandemModel, Telomeres, VerifyArgs,
};

type Run = std::result::Result<(), Failure>;

fn read_genome(path: &Path) -> anyhow::Result<Genome> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    text.trim().parse::<Genome>().with_context(|| format!("parsing {}", path.display()))
}

fn census_json(c: &Census) -> serde_json::Value {
    json!({ "ec": c.ec, "oc": c.oc, "ep": c.ep, "op": c.op })
}

fn census_text(c: &Census) -> String {
    format!("EC={} OC={} EP={} OP={}", c.ec, c.oc, c.ep, c.op)
}

/// `a` renamed so that `b` reads `1 2 ... n`, for block interchange sorting.
fn relabel(a: &Genome, b: &Genome) -> anyhow::Result<Genome> {
    if !b.is_unilinear() || b.markers().any(|m| !m.is_plus() || m.copy != Paralog::First) {
        bail!("the block interchange target must be one linear chromosome of positive markers");
    }
    let rank: HashMap<u32, u32> =
        b.chromosomes[0].markers.iter().enumerate().map(|(i, m)| (m.id, i as u32 + 1)).collect();
    let mut out = a.clone();
    for c in &mut out.chromosomes {
        for m in &mut c.markers {
            let id = *rank.get(&m.id).ok_or_else(|| anyhow!("marker {} is missing from the target", m.id))?;
            *m = Marker::new(id, m.copy, m.sign);
        }
    }
    Ok(out)
}

/// Names of `a` restored after sorting the relabelled genome.
fn unlabel_genome(g: &Genome, b: &Genome) -> Genome {
    let ids: Vec<u32> = b.chromosomes[0].markers.iter().map(|m| m.id).collect();
    let chromosomes = g
        .chromosomes
        .iter()
        .map(|c| {
            let markers = c.markers.iter().map(|m| Marker::new(ids[m.id as usize - 1], m.copy, m.sign)).collect();
            if c.is_linear() {
                Chromosome::linear(markers)
            } else {
                Chromosome::circular(markers)
            }
        })
        .collect();
    Genome { chromosomes }
}

pub fn run(cli: Cli) -> Run {
    let j = cli.json;
    match cli.command {
        Command::Distance { model, telomeres, source, target } => distance(j, model, telomeres, &source, &target),
        Command::Scenario { model, source, target } => scenario(j, model, &source, &target),
        Command::Halve { genome } => halve(j, &genome),
        Command::Tandem { model, genome } => tandem(j, model, &genome),
        Command::Disrupted { genome } => disrupted(j, &genome),
        Command::Dedouble(args) => dedouble_cmd(j, args),
        Command::Classify { genome } => classify_cmd(j, &genome),
        Command::Graph { kind, dot, genome } => graph(j, kind, dot.as_deref(), &genome),
        Command::Oracle { goal, model, scenario, genome } => oracle_cmd(j, goal, model, scenario, &genome),
        Command::Verify(args) => verify_cmd(j, args),
        Command::Random(args) => random_cmd(j, args),
    }
}

fn distance(j: bool, model: DistanceModel, telomeres: Telomeres, a: &Path, b: &Path) -> Run {
    let (a, b) = (read_genome(a)?, read_genome(b)?);
    let mut r = Report::new("distance");
    match model {
        DistanceModel::Breakpoint => {
            let w = match telomeres {
                Telomeres::Full => TelomereWeight::Full,
                Telomeres::Half => TelomereWeight::Half,
            };
            r.set("model", "breakpoint").set("distance", classic::breakpoint_distance(&a, &b, w)?);
        }
        DistanceModel::Bi => {
            r.set("model", "bi").set("distance", classic::bi_distance(&relabel(&a, &b)?)?);
        }
        DistanceModel::Dcj => {
            r.set("model", "dcj").set("distance", classic::dcj_distance(&a, &b)?);
        }
    }
    r.print(j);
    Ok(())
}

fn scenario(j: bool, model: SortModel, a: &Path, b: &Path) -> Run {
    let (a, b) = (read_genome(a)?, read_genome(b)?);
    let mut r = Report::new("scenario");
    match model {
        SortModel::Bi => {
            let p = relabel(&a, &b)?;
            let s = classic::bi_scenario(&p)?;
            r.set("model", "bi").set("distance", s.len()).set("start", p.to_string());
            r.scenario(&p, &s);
            if p != a {
                r.tail(&format!(
                    "markers renamed so that the target reads 1..n; {} is {}\n",
                    p,
                    unlabel_genome(&p, &b)
                ));
            }
        }
        SortModel::Dcj => {
            let (d, s) = classic::dcj_sort(&a, &b)?;
            r.set("model", "dcj").set("distance", d).set("start", a.to_string());
            r.scenario(&a, &s);
        }
    }
    r.print(j);
    Ok(())
}

fn halve(j: bool, path: &Path) -> Run {
    let g = read_genome(path)?;
    let h = halving::halving_scenario(&g)?;
    let mut r = Report::new("halve");
    r.set("start", g.to_string())
        .set("distance", h.distance)
        .set("goal", h.goal.to_string())
        .set("census", census_json(&natural_graph(&g).census()));
    r.tail(&format!("natural graph  {}\n", census_text(&natural_graph(&g).census())));
    r.scenario(&g, &h.scenario);
    r.print(j);
    Ok(())
}

fn tandem(j: bool, model: TandemModel, path: &Path) -> Run {
    let g = read_genome(path)?;
    let mut r = Report::new("tandem");
    r.set("start", g.to_string());
    match model {
        TandemModel::Dcj => {
            let t = halving::tandem_dcj_scenario(&g)?;
            r.set("model", "dcj")
                .set("distance", t.result.distance)
                .set("goal", t.result.goal.to_string())
                .set("census", census_json(&t.census))
                .set("extra", t.extra);
            r.scenario(&g, &t.result.scenario);
        }
        TandemModel::Bi => {
            let t = halving::tandem_bi_scenario(&g)?;
            r.set("model", "bi").set("distance", t.distance).set("goal", t.goal.to_string());
            r.scenario(&g, &t.scenario);
        }
    }
    r.print(j);
    Ok(())
}

fn disrupted(j: bool, path: &Path) -> Run {
    let g = read_genome(path)?;
    let d = halving::disrupted_tandem_heuristic(&g)?;
    let mut r = Report::new("disrupted");
    r.set("start", g.to_string())
        .set("lower", d.bounds.lower)
        .set("upper", d.bounds.upper)
        .set("achieved", d.bounds.achieved)
        .set("c_h", d.bounds.c_h)
        .set("gathering", d.gathering)
        .set("goal", d.goal.to_string());
    r.scenario(&g, &d.scenario);
    r.print(j);
    Ok(())
}

fn dedouble_cmd(j: bool, a: DedoubleArgs) -> Run {
    let g = read_genome(&a.genome)?;
    let mode = match a.packing {
        Packing::Exact => PackingMode::Exact,
        Packing::Greedy => PackingMode::Greedy,
    };
    let opts = DedoubleOptions { mode, cap: a.cap, ..Default::default() };
    let res = match (a.model, a.linear) {
        (DedoubleModel::Dcj, false) => dedouble::dedouble_dcj(&g, opts)?,
        (DedoubleModel::Dcj, true) => dedouble::dedouble_dcj_linear(&g, opts)?,
        (DedoubleModel::Reversal, _) => dedouble::dedouble_reversal(&g, opts)?,
    };
    let mut r = Report::new("dedouble");
    r.set("model", if a.model == DedoubleModel::Dcj { "dcj" } else { "reversal" })
        .set("linear", a.linear || a.model == DedoubleModel::Reversal)
        .set("packing", if mode == PackingMode::Exact { "exact" } else { "greedy" })
        .set("start", res.start.to_string())
        .set("distance", res.distance)
        .set("c_i", res.c_i)
        .set("cycles", res.cycles)
        .set("m", res.m)
        .set("goal", res.goal.to_string());
    r.scenario(&res.start, &res.scenario);
    if a.bd {
        let lift = dedouble::lift_to_bd(&res)?;
        r.set(
            "bd",
            json!({
                "ancestor": lift.ancestor.to_string(),
                "target": lift.target.to_string(),
                "scenario": crate::output::scenario_json(&lift.ancestor, &lift.scenario),
            }),
        );
        r.tail(&format!("breakpoint duplications from {}\n", lift.ancestor));
        r.tail(&crate::output::scenario_text(&lift.ancestor, &lift.scenario));
    }
    r.print(j);
    Ok(())
}

fn classify_cmd(j: bool, path: &Path) -> Run {
    let g = read_genome(path)?;
    let c = classify(&g);
    let mut r = Report::new("classify");
    r.set("genome", g.to_string()).set("flags", c.flags());
    r.print(j);
    Ok(())
}

fn graph(j: bool, kind: GraphKind, dot: Option<&Path>, path: &Path) -> Run {
    let g = read_genome(path)?;
    let mut r = Report::new("graph");
    r.set("genome", g.to_string());
    let text = match kind {
        GraphKind::Natural => {
            let ng = natural_graph(&g);
            let c = ng.census();
            r.set("kind", "natural").set("census", census_json(&c)).tail(&format!("{}\n", census_text(&c)));
            paralog_dot("natural", &ng)
        }
        GraphKind::Adjacency => {
            let ag = AdjacencyGraph::new(&g)?;
            let c = ag.graph.census();
            r.set("kind", "adjacency")
                .set("census", census_json(&c))
                .set("cycles", ag.cycle_count())
                .tail(&format!("{}\n", census_text(&c)));
            paralog_dot("adjacency", &ag.graph)
        }
        GraphKind::Overlap => {
            let og = OverlapGraph::new(&g)?;
            let edges: Vec<String> = og.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
            r.set("kind", "overlap")
                .set("vertices", og.ids.clone())
                .set("edges", edges)
                .set(
                    "oriented",
                    og.ids.iter().zip(&og.oriented).filter(|(_, o)| **o).map(|(id, _)| *id).collect::<Vec<_>>(),
                )
                .set("is_oriented", og.is_oriented());
            overlap_dot("overlap", &og)
        }
    };
    if let Some(p) = dot {
        std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
        r.set("dot", p.display().to_string());
    }
    r.print(j);
    Ok(())
}

fn oracle_cmd(j: bool, goal: OracleGoal, model: OracleModel, with_scenario: bool, path: &Path) -> Run {
    let g = read_genome(path)?;
    let goal = match goal {
        OracleGoal::Sorted => Goal::Sorted,
        OracleGoal::Perfect => Goal::Perfect,
        OracleGoal::Tandem => Goal::Tandem,
        OracleGoal::Dedoubled => Goal::Dedoubled,
        OracleGoal::DedoubledLinear => Goal::DedoubledLinear,
        OracleGoal::GatheredTandem => Goal::GatheredTandem,
    };
    let model = match model {
        OracleModel::Dcj => Model::Dcj,
        OracleModel::Bi => Model::Bi,
        OracleModel::Reversal => Model::Reversal,
        OracleModel::BdDcj => Model::BdDcj,
    };
    let cap = oracle::Cap::from_env();
    let d = oracle::bfs_distance(&g, goal, model, cap)?;
    let mut r = Report::new("oracle");
    r.set("genome", g.to_string())
        .set("goal", serde_json::to_value(goal).map_err(anyhow::Error::from)?)
        .set("model", serde_json::to_value(model).map_err(anyhow::Error::from)?)
        .set("distance", d);
    if with_scenario {
        let s = oracle::scenario_from_distance(&g, model, |h| oracle::bfs_distance(h, goal, model, cap))?;
        r.scenario(&g, &s);
    }
    r.print(j);
    Ok(())
}

fn verify_cmd(j: bool, a: VerifyArgs) -> Run {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        a.suite
            .split(',')
            .map(|s| Suite::parse(s.trim()).ok_or_else(|| anyhow!("unknown suite {s:?}")))
            .collect::<anyhow::Result<_>>()?
    };
    let cfg = SweepConfig {
        exhaustive_max_n: a.max_n,
        random_n: a.random_n.unwrap_or(a.max_n + 1),
        random_count: a.random,
        seed: a.seed,
        replay: true,
        ..Default::default()
    };
    let report = verify::sweep(&suites, &cfg)?;
    let csv = report.csv();
    if let Some(p) = &a.csv {
        std::fs::write(p, &csv).with_context(|| format!("writing {}", p.display()))?;
    }
    if j {
        let stats: Vec<_> = report
            .stats
            .iter()
            .map(|(s, st)| json!({ "suite": s.name(), "checked": st.checked, "passed": st.passed, "skipped": st.skipped }))
            .collect();
        let failures = serde_json::to_value(&report.failures).map_err(anyhow::Error::from)?;
        let out = json!({
            "schema": crate::output::SCHEMA,
            "command": "verify",
            "config": serde_json::to_value(cfg).map_err(anyhow::Error::from)?,
            "stats": stats,
            "failures": failures,
            "passed": report.all_passed(),
            "elapsed_s": report.elapsed.as_secs_f64(),
        });
        println!("{out}");
    } else {
        print!("{csv}");
        for f in report.failures.iter().take(20) {
            println!(
                "FAIL {} {}: formula {:?} oracle {:?}: {}",
                f.suite.name(),
                f.genome,
                f.formula,
                f.oracle,
                f.message
            );
        }
        println!("{} in {:.1?}", if report.all_passed() { "all passed" } else { "FAILED" }, report.elapsed);
    }
    if !report.all_passed() {
        return Err(Failure::Usage(anyhow!("{} instances disagree with the oracle", report.failures.len())));
    }
    Ok(())
}

fn parse_dup(s: &str) -> anyhow::Result<DupSpec> {
    match s.split_once(':') {
        None if s == "none" => Ok(DupSpec::None),
        None if s == "total" => Ok(DupSpec::Total),
        Some(("partial", p)) => Ok(DupSpec::Partial(p.parse().with_context(|| format!("bad probability {p:?}"))?)),
        _ => bail!("duplication must be none, total or partial:<p>, not {s:?}"),
    }
}

fn parse_shape(s: &str) -> anyhow::Result<ShapeSpec> {
    let (kind, k) = s.split_once(':').unwrap_or((s, "1"));
    let k: usize = k.parse().with_context(|| format!("bad chromosome count {k:?}"))?;
    match kind {
        "linear" => Ok(ShapeSpec::Linear(k)),
        "circular" => Ok(ShapeSpec::Circular(k)),
        "mixed" => Ok(ShapeSpec::Mixed(k)),
        _ => bail!("shape must be linear:<k>, circular:<k> or mixed:<k>, not {s:?}"),
    }
}

fn random_cmd(j: bool, a: RandomArgs) -> Run {
    let spec = RandomSpec {
        n: a.n,
        duplication: parse_dup(&a.duplication)?,
        shape: parse_shape(&a.shape)?,
        same_signed: a.same_signed,
        seed: a.seed,
    };
    let g = random_genome(&spec)?;
    if j {
        let mut r = Report::new("random");
        r.set("genome", g.to_string()).set("seed", a.seed);
        r.print(true);
    } else {
        println!("{g}");
    }
    Ok(())
}
