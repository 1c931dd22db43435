//! Brute-force ground truth: cycle-type censuses of the symmetric group, built either by
//! walking every permutation or from the class-size formula over partitions.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::cyclecount::CycleIndexPoly;
use crate::error::{Error, Result};
use crate::exactnum::{partitions, ExactInt, Partition};
use crate::unipoly::UniPoly;

/// Largest `n` for exhaustive enumeration.
pub const ENUMERATION_MAX_N: u64 = 9;
/// Largest `n` for the partition-based census.
pub const PARTITION_CENSUS_MAX_N: u64 = 60;

/// Number of permutations of `n` points of each cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCensus {
    n: u64,
    counts: BTreeMap<Partition, ExactInt>,
}

impl CycleCensus {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Count for one cycle type; zero if absent or of the wrong size.
    pub fn count(&self, cycle_type: &Partition) -> ExactInt {
        self.counts.get(cycle_type).cloned().unwrap_or_default()
    }

    /// `(type, count)` pairs in reverse-lexicographic order of type.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &ExactInt)> {
        self.counts.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> ExactInt {
        self.counts.values().sum()
    }

    fn sum_where(&self, keep: impl Fn(&Partition) -> bool) -> ExactInt {
        self.counts
            .iter()
            .filter(|(t, _)| keep(t))
            .map(|(_, c)| c)
            .sum()
    }

    /// Permutations whose cycles all have length at most 2.
    pub fn involution_count(&self) -> ExactInt {
        self.restricted_count(2)
    }

    /// Permutations whose cycles all have length at most `l`.
    pub fn restricted_count(&self, l: usize) -> ExactInt {
        self.sum_where(|t| t.largest() as usize <= l)
    }

    /// `sum_{involutions} t^{fixed points}`.
    pub fn fixed_point_poly(&self) -> UniPoly {
        let mut coeffs = vec![ExactInt::zero(); self.n as usize + 1];
        for (t, c) in &self.counts {
            if t.largest() <= 2 {
                coeffs[t.multiplicities(2)[0] as usize] += c;
            }
        }
        UniPoly::new(coeffs)
    }

    /// The cycle-index polynomial over types with parts at most `l`.
    pub fn cycle_index(&self, l: usize) -> CycleIndexPoly {
        CycleIndexPoly::from_terms(
            l,
            self.counts
                .iter()
                .filter(|(t, _)| t.largest() as usize <= l)
                .map(|(t, c)| (t.multiplicities(l), c.clone())),
        )
    }

    /// `{"schema", "n", "counts": {"3+2": 20, ...}}`
    pub fn to_json(&self) -> serde_json::Value {
        let counts: serde_json::Map<String, serde_json::Value> = self
            .iter()
            .map(|(t, c)| (t.to_string(), crate::big_to_json(c)))
            .collect();
        json!({ "schema": "involutions.census/1", "n": self.n, "counts": counts })
    }
}

/// Cycle type of a permutation given as an image array.
fn cycle_type(perm: &[usize]) -> Vec<u64> {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Tallies the permutations with `perm[0] = first`, walking the rest by Heap's algorithm.
fn enumerate_shard(n: usize, first: usize) -> HashMap<Vec<u64>, u64> {
    let mut tally = HashMap::new();
    let mut rest: Vec<usize> = (0..n).filter(|&v| v != first).collect();
    let mut perm = vec![first; n];
    let mut record = |rest: &[usize]| {
        perm[1..].copy_from_slice(rest);
        *tally.entry(cycle_type(&perm)).or_insert(0) += 1;
    };
    let k = rest.len();
    let mut c = vec![0usize; k];
    record(&rest);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                rest.swap(0, i);
            } else {
                rest.swap(c[i], i);
            }
            record(&rest);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    tally
}

/// Census by visiting all `n!` permutations, sharded by the image of the first point.
pub fn enumerate_census(n: u64) -> Result<CycleCensus> {
    if n > ENUMERATION_MAX_N {
        return Err(Error::AboveCap {
            what: "n",
            value: n,
            cap: ENUMERATION_MAX_N,
        });
    }
    let mut counts = BTreeMap::new();
    if n == 0 {
        counts.insert(Partition::empty(), ExactInt::one());
        return Ok(CycleCensus { n, counts });
    }
    let shards: Vec<_> = (0..n as usize)
        .into_par_iter()
        .map(|first| enumerate_shard(n as usize, first))
        .collect();
    for shard in shards {
        for (parts, c) in shard {
            let t = Partition::new(parts).expect("cycle lengths are positive");
            *counts.entry(t).or_insert_with(ExactInt::zero) += c;
        }
    }
    Ok(CycleCensus { n, counts })
}

/// Census from `n! / prod_t (t^{e_t} e_t!)` over all partitions of `n`.
pub fn partition_census(n: u64) -> Result<CycleCensus> {
    if n > PARTITION_CENSUS_MAX_N {
        return Err(Error::AboveCap {
            what: "n",
            value: n,
            cap: PARTITION_CENSUS_MAX_N,
        });
    }
    let counts = partitions(n).map(|t| {
        let c = t.class_size();
        (t, c)
    });
    Ok(CycleCensus {
        n,
        counts: counts.collect(),
    })
}

/// Exhaustive census up to [`ENUMERATION_MAX_N`], partition-based beyond.
pub fn census(n: u64) -> Result<CycleCensus> {
    if n <= ENUMERATION_MAX_N {
        enumerate_census(n)
    } else {
        partition_census(n)
    }
}

pub fn census_involution_count(n: u64) -> Result<ExactInt> {
    Ok(census(n)?.involution_count())
}

pub fn census_restricted_count(n: u64, l: usize) -> Result<ExactInt> {
    Ok(census(n)?.restricted_count(l))
}

pub fn census_fixed_point_poly(n: u64) -> Result<UniPoly> {
    Ok(census(n)?.fixed_point_poly())
}

pub fn census_cycle_index(n: u64, l: usize) -> Result<CycleIndexPoly> {
    Ok(census(n)?.cycle_index(l))
}
