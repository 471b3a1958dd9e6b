use std::fmt;
use std::io::{self, Write};

use super::lattice::{DoubleLetter, TamariLattice};
use super::TamariError;
use crate::exec::Execution;
use crate::poset::{EdgeDegrees, IntervalId};

/// Largest n for which per-interval degrees are produced.
pub const MAX_N_DEGREES: usize = 9;
/// Largest n for which the longest-chain statistic is produced.
pub const MAX_N_Q: usize = 7;

/// Everything measured on one interval `[lo, hi]` of Tam_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRecord {
    pub interval: IntervalId,
    pub degrees: EdgeDegrees,
    /// Length of the longest chain from `lo` to `hi`.
    pub q: Option<u32>,
    /// Number of LL letters in the interval canopy word, minus one.
    pub ll: u32,
    /// Number of RR letters in the interval canopy word, minus one.
    pub rr: u32,
    pub synchronous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stat {
    X,
    Y,
    Ybar,
    Xbar,
    Q,
    LL,
    RR,
}

impl Stat {
    pub fn name(self) -> &'static str {
        match self {
            Stat::X => "x",
            Stat::Y => "y",
            Stat::Ybar => "ybar",
            Stat::Xbar => "xbar",
            Stat::Q => "q",
            Stat::LL => "ll",
            Stat::RR => "rr",
        }
    }

    pub fn parse(s: &str) -> Option<Stat> {
        [Stat::X, Stat::Y, Stat::Ybar, Stat::Xbar, Stat::Q, Stat::LL, Stat::RR]
            .into_iter()
            .find(|st| st.name() == s)
    }
}

impl IntervalRecord {
    pub fn get(&self, stat: Stat) -> Option<u32> {
        Some(match stat {
            Stat::X => self.degrees.dx,
            Stat::Y => self.degrees.dy,
            Stat::Ybar => self.degrees.dybar,
            Stat::Xbar => self.degrees.dxbar,
            Stat::Q => return self.q,
            Stat::LL => self.ll,
            Stat::RR => self.rr,
        })
    }
}

pub fn interval_statistics(
    lattice: &TamariLattice,
    with_q: bool,
) -> Result<Vec<IntervalRecord>, TamariError> {
    interval_statistics_with(lattice, with_q, Execution::default())
}

/// Records for every interval, in lexicographic `(lo, hi)` order.
pub fn interval_statistics_with(
    lattice: &TamariLattice,
    with_q: bool,
    exec: Execution,
) -> Result<Vec<IntervalRecord>, TamariError> {
    let n = lattice.n();
    if n > MAX_N_DEGREES {
        return Err(TamariError::OutOfRange { n, min: 1, max: MAX_N_DEGREES });
    }
    if with_q && n > MAX_N_Q {
        return Err(TamariError::OutOfRange { n, min: 1, max: MAX_N_Q });
    }
    let poset = lattice.poset();
    let topo = poset.topological_order();
    let per_lo = exec.map_range(poset.len(), |lo| {
        let chains = with_q.then(|| longest_chains_from(lattice, lo, topo));
        poset
            .up_set(lo)
            .map(|hi| {
                let interval = IntervalId { lo, hi };
                let word = lattice
                    .interval_canopy_word(interval)
                    .expect("up-set elements form intervals");
                IntervalRecord {
                    interval,
                    degrees: poset.classify_interval_edges(interval),
                    q: chains.as_ref().map(|c| c[hi]),
                    ll: word.count(DoubleLetter::LL) as u32 - 1,
                    rr: word.count(DoubleLetter::RR) as u32 - 1,
                    synchronous: word.count(DoubleLetter::LR) == 0,
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(per_lo.into_iter().flatten().collect())
}

/// Longest path length in the Hasse diagram from `lo` to every element
/// above it (other entries are meaningless).
fn longest_chains_from(lattice: &TamariLattice, lo: usize, topo: &[usize]) -> Vec<u32> {
    let poset = lattice.poset();
    let mut dist = vec![0u32; poset.len()];
    let start = topo.iter().position(|&a| a == lo).expect("lo in order");
    for &w in &topo[start + 1..] {
        if !poset.leq(lo, w) {
            continue;
        }
        dist[w] = poset
            .down_covers(w)
            .iter()
            .filter(|&&d| poset.leq(lo, d))
            .map(|&d| dist[d] + 1)
            .max()
            .unwrap_or(0);
    }
    dist
}

/// Counts of intervals by a pair of statistics: `counts[i][j]` is the
/// number of intervals with first statistic `i` and second `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub counts: Vec<Vec<u64>>,
}

impl DistributionTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.counts.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn rows(&self) -> usize {
        self.counts.len()
    }

    pub fn cols(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    /// Square matrix of side `k`, zero-padded (entries outside are dropped).
    pub fn square(&self, k: usize) -> Vec<Vec<u64>> {
        (0..k).map(|i| (0..k).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn transpose(&self) -> DistributionTable {
        let (r, c) = (self.rows(), self.cols());
        DistributionTable {
            counts: (0..c).map(|j| (0..r).map(|i| self.counts[i][j]).collect()).collect(),
        }
    }
}

impl fmt::Display for DistributionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.counts {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Distribution of `(a, b)` over the records; `None` when a statistic is
/// missing from some record.
pub fn distribution(records: &[IntervalRecord], a: Stat, b: Stat) -> Option<DistributionTable> {
    let pairs: Vec<(usize, usize)> = records
        .iter()
        .map(|r| Some((r.get(a)? as usize, r.get(b)? as usize)))
        .collect::<Option<_>>()?;
    let rows = pairs.iter().map(|p| p.0 + 1).max().unwrap_or(0);
    let cols = pairs.iter().map(|p| p.1 + 1).max().unwrap_or(0);
    let mut counts = vec![vec![0u64; cols]; rows];
    for (i, j) in pairs {
        counts[i][j] += 1;
    }
    Some(DistributionTable { counts })
}

/// CSV dump with header `n,lo,hi,dx,dy,dybar,dxbar,q,ll,rr,sync`; trees are
/// in the parenthesized text format, `q` is empty when not computed.
pub fn write_statistics_csv<W: Write>(
    mut w: W,
    lattice: &TamariLattice,
    records: &[IntervalRecord],
) -> io::Result<()> {
    writeln!(w, "n,lo,hi,dx,dy,dybar,dxbar,q,ll,rr,sync")?;
    for r in records {
        let d = r.degrees;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            lattice.n(),
            lattice.tree(r.interval.lo),
            lattice.tree(r.interval.hi),
            d.dx,
            d.dy,
            d.dybar,
            d.dxbar,
            r.q.map(|q| q.to_string()).unwrap_or_default(),
            r.ll,
            r.rr,
            u8::from(r.synchronous)
        )?;
    }
    Ok(())
}
