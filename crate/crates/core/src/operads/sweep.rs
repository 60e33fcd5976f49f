//! Seeded random sweeps of the composition identities.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::bicolored::{BicoloredElement, Color};
use super::identities::{
    check_sequential, check_parallel, check_classical_sequential, check_classical_parallel, check_expansion, check_units, pair_block_swap_parallel,
    IdentityVerdict,
};
use super::sum::{Flavor, Stratum, StrataSum};
use crate::error::{Error, Result};
use crate::labels::{full_mask, popcount, Mask, Partition2};
use crate::trees::{ComplexStableTree, RealStableTree};

/// Largest arity of a sampled element.
pub const MAX_SAMPLE_ARITY: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    #[serde(rename = "sequential")]
    Sequential,
    #[serde(rename = "parallel")]
    Parallel,
    #[serde(rename = "units")]
    Units,
    #[serde(rename = "expansion")]
    Expansion,
    #[serde(rename = "classical-sequential")]
    ClassicalSequential,
    #[serde(rename = "classical-parallel")]
    ClassicalParallel,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::Sequential,
        Identity::Parallel,
        Identity::Units,
        Identity::Expansion,
        Identity::ClassicalSequential,
        Identity::ClassicalParallel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Sequential => "sequential",
            Identity::Parallel => "parallel",
            Identity::Units => "units",
            Identity::Expansion => "expansion",
            Identity::ClassicalSequential => "classical-sequential",
            Identity::ClassicalParallel => "classical-parallel",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Composition(format!("unknown identity {s:?}")))
    }
}

/// A sampled instance on which an identity failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub x: Value,
    pub y: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub identity: Identity,
    pub samples: usize,
    pub seed: u64,
    pub failures: Vec<Failure>,
    /// Samples on which a side was undefined; the samplers aim for zero.
    pub undefined: usize,
    /// For the parallel identity: failures that disappear after reordering pair blocks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolved_by_pair_block_swap: Option<usize>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.undefined == 0
    }
}

/// JSON form of a sum: its flavor and terms with trees in the tree schema.
pub fn sum_to_json(s: &StrataSum) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(t, c)| {
            let tree = match t {
                Stratum::Unit => Value::Null,
                Stratum::Complex(t) => serde_json::to_value(t.to_json()).expect("tree JSON"),
                Stratum::Real(t) => serde_json::to_value(t.to_json()).expect("tree JSON"),
            };
            serde_json::json!({ "coefficient": c.to_string(), "tree": tree })
        })
        .collect();
    serde_json::json!({ "flavor": s.flavor().to_string(), "terms": terms })
}

fn random_complex_tree(rng: &mut impl Rng, n: usize) -> ComplexStableTree {
    let ground = full_mask(n);
    let mut parts: Vec<Partition2> = Vec::new();
    for _ in 0..rng.random_range(0..=n.saturating_sub(3)) {
        let m: Mask = rng.random::<u128>() & ground;
        let size = popcount(m);
        if size < 2 || n - size < 2 {
            continue;
        }
        let p = Partition2::from_masks(ground, m, true).expect("sizes checked");
        if parts.iter().all(|q| q.compatible(&p).unwrap_or(false)) && !parts.contains(&p) {
            parts.push(p);
        }
    }
    ComplexStableTree::from_partitions(n, parts).expect("compatible divisors form a tree")
}

fn random_real_tree(rng: &mut impl Rng, reals: usize, pairs: usize) -> RealStableTree {
    let base = RealStableTree::one_vertex(reals, pairs).expect("stable type");
    let n = base.doubled_labels();
    let ground = full_mask(n);
    let mut parts: Vec<Partition2> = Vec::new();
    for _ in 0..rng.random_range(0..=n.saturating_sub(3)) {
        let m: Mask = rng.random::<u128>() & ground;
        let size = popcount(m);
        if size < 2 || n - size < 2 {
            continue;
        }
        let p = Partition2::from_masks(ground, m, true).expect("sizes checked");
        let q = Partition2::from_masks(ground, base.involute_mask(m), true).expect("sizes kept");
        let fits = |r: &Partition2| parts.iter().all(|s| s.compatible(r).unwrap_or(false));
        if fits(&p) && fits(&q) && p.compatible(&q).unwrap_or(false) {
            for r in [p, q] {
                if !parts.contains(&r) {
                    parts.push(r);
                }
            }
        }
    }
    RealStableTree::from_splits(reals, pairs, parts.into_iter().collect()).expect("invariant compatible splits")
}

fn random_coefficient(rng: &mut impl Rng) -> BigRational {
    let mut num: i64 = rng.random_range(-3..=3);
    if num == 0 {
        num = 1;
    }
    BigRational::new(BigInt::from(num), BigInt::from(rng.random_range(1..=3i64)))
}

/// A sum of one or two strata of the given flavor with small coefficients.
pub fn random_sum(rng: &mut impl Rng, flavor: Flavor) -> StrataSum {
    let mut s = StrataSum::zero(flavor).expect("valid flavor");
    if flavor.is_scalar() {
        s.add_term(Stratum::Unit, random_coefficient(rng)).expect("unit fits");
        return s;
    }
    // a cancelling pair of terms is possible; retry until nonzero
    while s.is_zero() {
        for _ in 0..rng.random_range(1..=2) {
            let t = match flavor {
                Flavor::Complex(n) => Stratum::Complex(random_complex_tree(rng, n + 1)),
                Flavor::Real { inputs, pairs } => Stratum::Real(random_real_tree(rng, inputs + 1, pairs)),
                Flavor::Conjugate(k) => Stratum::Real(random_real_tree(rng, 0, k + 1)),
            };
            s.add_term(t, random_coefficient(rng)).expect("flavor read off the tree");
        }
    }
    s
}

fn random_flavor(rng: &mut impl Rng, out: Color, min_arity: usize) -> Flavor {
    let n = rng.random_range(min_arity.max(1)..=MAX_SAMPLE_ARITY);
    match out {
        Color::Plus => Flavor::Complex(n),
        Color::Real => {
            let inputs = rng.random_range(1..=n);
            Flavor::Real {
                inputs,
                pairs: n - inputs,
            }
        }
    }
}

fn random_color(rng: &mut impl Rng) -> Color {
    if rng.random_bool(0.5) {
        Color::Plus
    } else {
        Color::Real
    }
}

fn random_element(rng: &mut impl Rng, out: Color, min_arity: usize) -> BicoloredElement {
    let f = random_flavor(rng, out, min_arity);
    BicoloredElement::new(random_sum(rng, f)).expect("real or complex flavor")
}

struct Outcome {
    verdict: IdentityVerdict,
    failure: Option<Failure>,
    swap_resolved: bool,
}

fn triple_failure(x: &BicoloredElement, y: &BicoloredElement, z: &BicoloredElement, i: usize, j: usize) -> Failure {
    Failure {
        x: sum_to_json(x.sum()),
        y: sum_to_json(y.sum()),
        z: Some(sum_to_json(z.sum())),
        i: Some(i),
        j: Some(j),
    }
}

fn sample(identity: Identity, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let triple = |rng: &mut ChaCha8Rng, complex_only: bool, parallel: bool| {
        let color = |rng: &mut ChaCha8Rng| if complex_only { Color::Plus } else { random_color(rng) };
        let out = color(rng);
        let x = random_element(rng, out, if parallel { 2 } else { 1 });
        if parallel {
            let j = rng.random_range(2..=x.arity());
            let i = rng.random_range(1..j);
            let y = random_element(rng, x.in_slot(i).expect("slot in range"), 1);
            let z = random_element(rng, x.in_slot(j).expect("slot in range"), 1);
            (x, y, z, i, j)
        } else {
            let i = rng.random_range(1..=x.arity());
            let y = random_element(rng, x.in_slot(i).expect("slot in range"), 1);
            let j = rng.random_range(1..=y.arity());
            let z = random_element(rng, y.in_slot(j).expect("slot in range"), 1);
            (x, y, z, i, j)
        }
    };
    let outcome = |verdict: IdentityVerdict, failure: Failure, swap_resolved: bool| Outcome {
        verdict,
        failure: (verdict == IdentityVerdict::Fails).then_some(failure),
        swap_resolved,
    };
    Ok(match identity {
        Identity::Sequential | Identity::ClassicalSequential => {
            let (x, y, z, i, j) = triple(rng, identity == Identity::ClassicalSequential, false);
            let v = if identity == Identity::Sequential {
                check_sequential(&x, &y, &z, i, j)?
            } else {
                check_classical_sequential(&x, &y, &z, i, j)?
            };
            outcome(v, triple_failure(&x, &y, &z, i, j), false)
        }
        Identity::Parallel | Identity::ClassicalParallel => {
            let (x, y, z, i, j) = triple(rng, identity == Identity::ClassicalParallel, true);
            let (v, swap) = if identity == Identity::Parallel {
                let v = check_parallel(&x, &y, &z, i, j)?;
                let swap = v == IdentityVerdict::Fails && pair_block_swap_parallel(&x, &y, &z, i, j)? == Some(true);
                (v, swap)
            } else {
                (check_classical_parallel(&x, &y, &z, i, j)?, false)
            };
            outcome(v, triple_failure(&x, &y, &z, i, j), swap)
        }
        Identity::Units => {
            let out = random_color(rng);
            let x = random_element(rng, out, 1);
            let i = rng.random_range(1..=x.arity());
            let v = check_units(&x, i)?;
            let failure = Failure {
                x: sum_to_json(x.sum()),
                y: Value::Null,
                z: None,
                i: Some(i),
                j: None,
            };
            outcome(v, failure, false)
        }
        Identity::Expansion => {
            let n = rng.random_range(1..=MAX_SAMPLE_ARITY);
            let (flavor, guest_color) = match rng.random_range(0..4) {
                0 => (Flavor::Complex(n), Color::Plus),
                1 => {
                    let inputs = rng.random_range(1..=n);
                    let f = Flavor::Real {
                        inputs,
                        pairs: n - inputs,
                    };
                    (f, Color::Real)
                }
                2 => {
                    let inputs = rng.random_range(1..MAX_SAMPLE_ARITY);
                    let pairs = rng.random_range(0..=MAX_SAMPLE_ARITY - inputs);
                    (Flavor::Real { inputs, pairs }, Color::Plus)
                }
                _ => (Flavor::Conjugate(n), Color::Plus),
            };
            let x = random_sum(rng, flavor);
            let slots = match (flavor, guest_color) {
                (Flavor::Complex(n) | Flavor::Conjugate(n), _) => n,
                (Flavor::Real { inputs, .. }, Color::Real) => inputs,
                (Flavor::Real { pairs, .. }, Color::Plus) => pairs,
            };
            let ys: Vec<StrataSum> = (0..slots)
                .map(|_| {
                    let f = random_flavor(rng, guest_color, 1);
                    random_sum(rng, f)
                })
                .collect();
            let v = check_expansion(&x, &ys)?;
            let failure = Failure {
                x: sum_to_json(&x),
                y: Value::Array(ys.iter().map(sum_to_json).collect()),
                z: None,
                i: None,
                j: None,
            };
            outcome(v, failure, false)
        }
    })
}

/// Runs `samples` independent instances of `identity`. Sample `k` draws from
/// stream `k` of a generator seeded with `seed`, so the report does not
/// depend on scheduling.
pub fn sweep(identity: Identity, samples: usize, seed: u64) -> Result<SweepReport> {
    let outcomes: Vec<Outcome> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            sample(identity, &mut rng)
        })
        .collect::<Result<_>>()?;
    let undefined = outcomes
        .iter()
        .filter(|o| o.verdict == IdentityVerdict::Undefined)
        .count();
    let resolved = outcomes.iter().filter(|o| o.swap_resolved).count();
    Ok(SweepReport {
        identity,
        samples,
        seed,
        undefined,
        resolved_by_pair_block_swap: (identity == Identity::Parallel).then_some(resolved),
        failures: outcomes.into_iter().filter_map(|o| o.failure).collect(),
    })
}
