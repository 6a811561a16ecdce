//! Seeded sweeps measuring the gap between the proper orientation number
//! and the semi-proper orientation number on random families.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::generate::{gnp, random_bipartite, random_tree, seeded};
use crate::graph::Graph;
use crate::solver::{proper_orientation_number_with, semi_proper_number_with, Limits, SolveError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Random,
    RandomBipartite,
    Trees,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(Family::Random),
            "random-bipartite" => Ok(Family::RandomBipartite),
            "trees" => Ok(Family::Trees),
            other => Err(format!("unknown family {other:?} (expected random, random-bipartite or trees)")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Random => "random",
            Family::RandomBipartite => "random-bipartite",
            Family::Trees => "trees",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchmarkConfig {
    pub family: Family,
    pub count: usize,
    pub min_n: usize,
    pub max_n: usize,
    /// Edge probability for the random families.
    pub p: f64,
    pub seed: u64,
}

impl BenchmarkConfig {
    pub fn sizes(&self) -> RangeInclusive<usize> {
        self.min_n..=self.max_n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapRow {
    pub index: usize,
    pub n: usize,
    pub m: usize,
    pub chi_s: Option<u32>,
    pub chi: Option<u32>,
    pub gap: Option<u32>,
    /// Why the row has no values, when it has none.
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapTable {
    pub config: BenchmarkConfig,
    pub rows: Vec<GapRow>,
    pub max_gap: Option<u32>,
    pub solved: usize,
    pub skipped: usize,
}

/// Instance `index` of a sweep; depends only on the seed and the index.
pub fn instance(config: &BenchmarkConfig, index: usize) -> Graph {
    let mut rng = seeded(config.seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let n = rng.random_range(config.sizes());
    match config.family {
        Family::Random => gnp(n, config.p, &mut rng),
        Family::RandomBipartite => random_bipartite(n, config.p, &mut rng),
        Family::Trees => random_tree(n, &mut rng),
    }
}

fn solve_row(g: &Graph, index: usize, limits: &Limits) -> Result<GapRow, SolveError> {
    let mut row = GapRow { index, n: g.n(), m: g.m(), chi_s: None, chi: None, gap: None, skipped: None };
    let both = semi_proper_number_with(g, limits).and_then(|s| Ok((s.value, proper_orientation_number_with(g, limits)?.value)));
    match both {
        Ok((chi_s, chi)) => {
            row.chi_s = Some(chi_s);
            row.chi = Some(chi);
            row.gap = Some(chi.checked_sub(chi_s).ok_or_else(|| {
                SolveError::Internal(format!("proper number {chi} below semi-proper number {chi_s}"))
            })?);
        }
        Err(e @ SolveError::SizeCap { .. }) => row.skipped = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(row)
}

/// Solves every instance (in parallel) and reports rows in index order.
pub fn benchmark_gap(config: &BenchmarkConfig, limits: &Limits) -> Result<GapTable, SolveError> {
    if config.min_n > config.max_n {
        return Err(SolveError::Internal(format!("empty size range {}..={}", config.min_n, config.max_n)));
    }
    let rows: Vec<GapRow> = (0..config.count)
        .into_par_iter()
        .map(|i| solve_row(&instance(config, i), i, limits))
        .collect::<Result<_, _>>()?;
    let max_gap = rows.iter().filter_map(|r| r.gap).max();
    let solved = rows.iter().filter(|r| r.gap.is_some()).count();
    Ok(GapTable { config: config.clone(), skipped: rows.len() - solved, solved, max_gap, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(family: Family) -> BenchmarkConfig {
        BenchmarkConfig { family, count: 24, min_n: 3, max_n: 8, p: 0.4, seed: 9 }
    }

    #[test]
    fn sweeps_are_deterministic() {
        let limits = Limits::default();
        let a = benchmark_gap(&config(Family::Random), &limits).unwrap();
        let b = benchmark_gap(&config(Family::Random), &limits).unwrap();
        assert_eq!(a, b);
        assert!(a.rows.iter().enumerate().all(|(i, r)| r.index == i));
    }

    #[test]
    fn tree_rows_respect_the_tree_bound() {
        let t = benchmark_gap(&config(Family::Trees), &Limits::default()).unwrap();
        assert!(t.rows.iter().all(|r| r.chi_s.is_some_and(|v| v <= 2)));
        let bip = benchmark_gap(&config(Family::RandomBipartite), &Limits::default()).unwrap();
        assert_eq!(bip.solved + bip.skipped, 24);
    }

    #[test]
    fn oversized_rows_are_skipped() {
        let cfg = BenchmarkConfig { family: Family::Random, count: 3, min_n: 14, max_n: 14, p: 0.9, seed: 1 };
        let t = benchmark_gap(&cfg, &Limits::default()).unwrap();
        assert_eq!(t.skipped, 3);
        assert_eq!(t.max_gap, None);
    }

    #[test]
    fn family_names() {
        for f in [Family::Random, Family::RandomBipartite, Family::Trees] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }
}
