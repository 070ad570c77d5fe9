//! Seeded random genomes and exhaustive enumeration of small ones.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::{Chromosome, Genome, Marker, Paralog, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DupSpec {
    None,
    Total,
    /// Each family is duplicated with probability `p`.
    Partial(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeSpec {
    /// `k` linear chromosomes.
    Linear(usize),
    /// `k` circular chromosomes.
    Circular(usize),
    /// `k` chromosomes, each linear or circular with equal odds.
    Mixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    /// Marker families.
    pub n: usize,
    pub duplication: DupSpec,
    pub shape: ShapeSpec,
    /// Give both copies of a family the same sign.
    pub same_signed: bool,
    pub seed: u64,
}

impl RandomSpec {
    pub fn unilinear(n: usize, seed: u64) -> RandomSpec {
        RandomSpec { n, duplication: DupSpec::Total, shape: ShapeSpec::Linear(1), same_signed: false, seed }
    }
}

fn sign(plus: bool) -> Sign {
    if plus {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A genome drawn from `spec`; equal specs give equal genomes.
pub fn random_genome(spec: &RandomSpec) -> Result<Genome> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    random_genome_with(spec, &mut rng)
}

pub fn random_genome_with<R: Rng>(spec: &RandomSpec, rng: &mut R) -> Result<Genome> {
    if spec.n == 0 {
        return Err(Error::Precondition("a random genome needs n >= 1".into()));
    }
    let mut markers = Vec::with_capacity(2 * spec.n);
    for id in 1..=spec.n as u32 {
        let dup = match spec.duplication {
            DupSpec::None => false,
            DupSpec::Total => true,
            DupSpec::Partial(p) => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Precondition(format!("duplication probability {p} outside [0, 1]")));
                }
                rng.gen_bool(p)
            }
        };
        let s = rng.gen_bool(0.5);
        markers.push(Marker::new(id, Paralog::First, sign(s)));
        if dup {
            let t = if spec.same_signed { s } else { rng.gen_bool(0.5) };
            markers.push(Marker::new(id, Paralog::Second, sign(t)));
        }
    }
    markers.shuffle(rng);
    let k = match spec.shape {
        ShapeSpec::Linear(k) | ShapeSpec::Circular(k) | ShapeSpec::Mixed(k) => k,
    };
    if k == 0 || k > markers.len() {
        return Err(Error::Precondition(format!("cannot cut {} markers into {k} chromosomes", markers.len())));
    }
    let mut cuts: Vec<usize> = (1..markers.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    cuts.push(markers.len());
    let mut chromosomes = Vec::with_capacity(k);
    let mut from = 0;
    for to in cuts {
        let seq = markers[from..to].to_vec();
        let linear = match spec.shape {
            ShapeSpec::Linear(_) => true,
            ShapeSpec::Circular(_) => false,
            ShapeSpec::Mixed(_) => rng.gen_bool(0.5),
        };
        chromosomes.push(if linear { Chromosome::linear(seq) } else { Chromosome::circular(seq) });
        from = to;
    }
    Genome::new(chromosomes)
}

/// Every unilinear totally duplicated genome over families `1..=n`, reflections included.
pub fn all_unilinear(n: usize, same_signed: bool) -> impl Iterator<Item = Genome> {
    let genes: Vec<(u32, Paralog)> =
        (1..=n as u32).flat_map(|id| [(id, Paralog::First), (id, Paralog::Second)]).collect();
    let sign_bits = if same_signed { n } else { 2 * n };
    genes.into_iter().permutations(2 * n).flat_map(move |order| {
        (0u32..1 << sign_bits).map(move |bits| {
            let markers = order
                .iter()
                .map(|&(id, copy)| {
                    let bit = if same_signed { id - 1 } else { 2 * (id - 1) + (copy == Paralog::Second) as u32 };
                    Marker::new(id, copy, sign(bits & (1 << bit) == 0))
                })
                .collect();
            Genome { chromosomes: vec![Chromosome::linear(markers)] }
        })
    })
}
