//! Finite posets given by their Hasse diagram, interval posets, and the
//! valence polynomials `D_P(a, abar)` and `DD_P(x, y, ybar, xbar)`.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::polynomial::{Monomial, MultiPoly, Universe, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("element index {index} out of range for {m} elements")]
    OutOfRange { index: usize, m: usize },
    #[error("cover ({0}, {1}) listed twice")]
    DuplicateCover(usize, usize),
    #[error("cover relation has a cycle")]
    Cycle,
    #[error("pair ({0}, {1}) is implied by transitivity and is not a cover")]
    NotHasse(usize, usize),
}

/// A pair `lo <= hi` in some poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntervalId {
    pub lo: usize,
    pub hi: usize,
}

/// The four edge classes incident to an interval in the Hasse diagram of `Int(P)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// outgoing, bottom moves up
    X,
    /// outgoing, top moves up
    Y,
    /// incoming, bottom came from below
    Ybar,
    /// incoming, top came from above
    Xbar,
}

/// Number of incident edges of each class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeDegrees {
    pub dx: u32,
    pub dy: u32,
    pub dybar: u32,
    pub dxbar: u32,
}

impl EdgeDegrees {
    pub fn get(&self, class: EdgeClass) -> u32 {
        match class {
            EdgeClass::X => self.dx,
            EdgeClass::Y => self.dy,
            EdgeClass::Ybar => self.dybar,
            EdgeClass::Xbar => self.dxbar,
        }
    }

    pub fn total(&self) -> u32 {
        self.dx + self.dy + self.dybar + self.dxbar
    }
}

/// Finite poset on `0..m`, immutable after construction.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    m: usize,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// `leq[a]` holds every `b` with `a <= b`.
    leq: Vec<FixedBitSet>,
    topo: Vec<usize>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.covers == other.covers
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    /// Builds a poset from its cover relation. Every listed pair must be a
    /// genuine cover: transitively implied pairs are rejected.
    pub fn from_covers(m: usize, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut up = vec![Vec::new(); m];
        let mut down = vec![Vec::new(); m];
        let mut sorted: Vec<(usize, usize)> = covers.to_vec();
        for &(a, b) in &sorted {
            for index in [a, b] {
                if index >= m {
                    return Err(PosetError::OutOfRange { index, m });
                }
            }
            if a == b {
                return Err(PosetError::Cycle);
            }
        }
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateCover(w[0].0, w[0].1));
            }
        }
        for &(a, b) in &sorted {
            up[a].push(b);
            down[b].push(a);
        }

        // Kahn's algorithm, smallest index first for determinism.
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..m)
            .filter(|&i| indeg[i] == 0)
            .map(std::cmp::Reverse)
            .collect();
        let mut topo = Vec::with_capacity(m);
        while let Some(std::cmp::Reverse(a)) = ready.pop() {
            topo.push(a);
            for &b in &up[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(std::cmp::Reverse(b));
                }
            }
        }
        if topo.len() != m {
            return Err(PosetError::Cycle);
        }

        let mut leq: Vec<FixedBitSet> = (0..m).map(|_| FixedBitSet::with_capacity(m)).collect();
        for &a in topo.iter().rev() {
            let mut row = FixedBitSet::with_capacity(m);
            row.insert(a);
            for &b in &up[a] {
                row.union_with(&leq[b]);
            }
            leq[a] = row;
        }

        for &(a, b) in &sorted {
            if up[a].iter().any(|&c| c != b && leq[c].contains(b)) {
                return Err(PosetError::NotHasse(a, b));
            }
        }

        Ok(FinitePoset {
            m,
            covers: sorted,
            up,
            down,
            leq,
            topo,
        })
    }

    /// Builds a poset from any acyclic relation by taking its transitive
    /// closure and keeping only the covers.
    pub fn from_relation(m: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut lt = vec![FixedBitSet::with_capacity(m); m];
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= m {
                    return Err(PosetError::OutOfRange { index, m });
                }
            }
            if a == b {
                return Err(PosetError::Cycle);
            }
            lt[a].insert(b);
        }
        // Warshall closure.
        for k in 0..m {
            for a in 0..m {
                if lt[a].contains(k) {
                    let row = lt[k].clone();
                    lt[a].union_with(&row);
                }
            }
        }
        if (0..m).any(|a| lt[a].contains(a)) {
            return Err(PosetError::Cycle);
        }
        let mut covers = Vec::new();
        for a in 0..m {
            for b in lt[a].ones() {
                if !lt[a].ones().any(|c| lt[c].contains(b)) {
                    covers.push((a, b));
                }
            }
        }
        Self::from_covers(m, &covers)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn up_covers(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    pub fn down_covers(&self, a: usize) -> &[usize] {
        &self.down[a]
    }

    pub fn out_degree(&self, a: usize) -> usize {
        self.up[a].len()
    }

    pub fn in_degree(&self, a: usize) -> usize {
        self.down[a].len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a].contains(b)
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(&b)
    }

    /// Elements `b >= a`, ascending.
    pub fn up_set(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.leq[a].ones()
    }

    /// A linear extension (every cover goes forward).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn is_minimal(&self, a: usize) -> bool {
        self.down[a].is_empty()
    }

    pub fn is_maximal(&self, a: usize) -> bool {
        self.up[a].is_empty()
    }

    /// All intervals, in lexicographic `(lo, hi)` order.
    pub fn intervals(&self) -> Vec<IntervalId> {
        (0..self.m)
            .flat_map(|lo| self.up_set(lo).map(move |hi| IntervalId { lo, hi }))
            .collect()
    }

    pub fn interval_count(&self) -> usize {
        self.leq.iter().map(|row| row.count_ones(..)).sum()
    }

    pub fn dual(&self) -> FinitePoset {
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        FinitePoset::from_covers(self.m, &covers).expect("dual of a valid poset")
    }

    /// Cartesian product; element `(p, q)` has index `p * other.len() + q`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let n = other.m;
        let mut covers = Vec::new();
        for p in 0..self.m {
            for q in 0..n {
                for &p2 in &self.up[p] {
                    covers.push((p * n + q, p2 * n + q));
                }
                for &q2 in &other.up[q] {
                    covers.push((p * n + q, p * n + q2));
                }
            }
        }
        FinitePoset::from_covers(self.m * n, &covers).expect("product of valid posets")
    }

    /// The poset of intervals under componentwise order, together with the
    /// interval each element stands for (lexicographic order).
    pub fn interval_poset(&self) -> (FinitePoset, Vec<IntervalId>) {
        let ids = self.intervals();
        let index: HashMap<IntervalId, usize> =
            ids.iter().enumerate().map(|(i, iv)| (*iv, i)).collect();
        let mut covers = Vec::new();
        for (i, iv) in ids.iter().enumerate() {
            for &lo2 in &self.up[iv.lo] {
                if self.leq(lo2, iv.hi) {
                    covers.push((i, index[&IntervalId { lo: lo2, hi: iv.hi }]));
                }
            }
            for &hi2 in &self.up[iv.hi] {
                covers.push((i, index[&IntervalId { lo: iv.lo, hi: hi2 }]));
            }
        }
        let poset = FinitePoset::from_covers(ids.len(), &covers)
            .expect("interval covers form a Hasse diagram");
        (poset, ids)
    }

    /// Degrees of the four edge classes at the interval `iv` of `Int(P)`.
    pub fn classify_interval_edges(&self, iv: IntervalId) -> EdgeDegrees {
        let IntervalId { lo, hi } = iv;
        debug_assert!(self.leq(lo, hi));
        EdgeDegrees {
            dx: self.up[lo].iter().filter(|&&w| self.leq(w, hi)).count() as u32,
            dy: self.up[hi].len() as u32,
            dybar: self.down[lo].len() as u32,
            dxbar: self.down[hi].iter().filter(|&&w| self.leq(lo, w)).count() as u32,
        }
    }

    /// `D_P(a, abar)`: sum over elements of `a^out * abar^in`.
    pub fn valence_poly_d(&self) -> MultiPoly {
        let universe = Universe::of(&[Var::A, Var::Abar]);
        let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for a in 0..self.m {
            *counts.entry((self.out_degree(a), self.in_degree(a))).or_default() += 1;
        }
        MultiPoly::from_terms(
            universe,
            counts
                .into_iter()
                .map(|((o, i), c)| (vec![o as u32, i as u32], c)),
        )
        .expect("degrees fit in exponents")
    }

    /// `DD_P(x, y, ybar, xbar)`: sum over intervals of
    /// `x^dx y^dy ybar^dybar xbar^dxbar`.
    pub fn valence_poly_dd(&self) -> MultiPoly {
        self.valence_poly_dd_with(Execution::default())
    }

    pub fn valence_poly_dd_with(&self, exec: Execution) -> MultiPoly {
        let partial = exec.map_range(self.m, |lo| {
            let mut local: HashMap<EdgeDegrees, u64> = HashMap::new();
            for hi in self.up_set(lo) {
                *local
                    .entry(self.classify_interval_edges(IntervalId { lo, hi }))
                    .or_default() += 1;
            }
            local
        });
        let mut counts: HashMap<EdgeDegrees, u64> = HashMap::new();
        for local in partial {
            for (k, c) in local {
                *counts.entry(k).or_default() += c;
            }
        }
        degree_counts_to_poly(counts)
    }
}

/// Polynomial in `(x, y, ybar, xbar)` from counts of degree quadruples.
pub fn degree_counts_to_poly(counts: impl IntoIterator<Item = (EdgeDegrees, u64)>) -> MultiPoly {
    let universe = dd_universe();
    let mut p = MultiPoly::zero(universe);
    for (d, c) in counts {
        let mut m = Monomial::ONE;
        // canonical order is x, y, ybar, xbar
        m.0[0] = d.dx as u8;
        m.0[1] = d.dy as u8;
        m.0[2] = d.dybar as u8;
        m.0[3] = d.dxbar as u8;
        p.add_term(m, c.into());
    }
    p
}

pub fn dd_universe() -> Universe {
    Universe::of(&[Var::X, Var::Y, Var::Ybar, Var::Xbar])
}

/// Order isomorphism `p -> q` by backtracking, for small posets.
pub fn find_isomorphism(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.covers.len() != q.covers.len() {
        return None;
    }
    let sig = |s: &FinitePoset, a: usize| {
        (
            s.in_degree(a),
            s.out_degree(a),
            s.leq[a].count_ones(..),
            (0..s.m).filter(|&b| s.leq(b, a)).count(),
        )
    };
    let sp: Vec<_> = (0..p.m).map(|a| sig(p, a)).collect();
    let sq: Vec<_> = (0..q.m).map(|a| sig(q, a)).collect();
    let mut search = IsoSearch {
        order: p.topological_order().to_vec(),
        p,
        q,
        sp,
        sq,
        map: vec![usize::MAX; p.m],
        used: vec![false; q.m],
    };
    search.extend(0).then_some(search.map)
}

type Signature = (usize, usize, usize, usize);

/// Backtracking state: elements of `p` are mapped in topological order,
/// only onto unused elements of `q` with the same signature.
struct IsoSearch<'a> {
    order: Vec<usize>,
    p: &'a FinitePoset,
    q: &'a FinitePoset,
    sp: Vec<Signature>,
    sq: Vec<Signature>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let a = self.order[k];
        for c in 0..self.q.m {
            if self.used[c] || self.sp[a] != self.sq[c] {
                continue;
            }
            let consistent = self.order[..k].iter().all(|&w| {
                let fw = self.map[w];
                self.p.leq(w, a) == self.q.leq(fw, c) && self.p.leq(a, w) == self.q.leq(c, fw)
            });
            if !consistent {
                continue;
            }
            self.map[a] = c;
            self.used[c] = true;
            if self.extend(k + 1) {
                return true;
            }
            self.used[c] = false;
            self.map[a] = usize::MAX;
        }
        false
    }
}

/// JSON form: `{"m": int, "covers": [[a, b], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetRecord {
    pub m: usize,
    pub covers: Vec<(usize, usize)>,
}

impl Serialize for FinitePoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PosetRecord {
            m: self.m,
            covers: self.covers.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = PosetRecord::deserialize(d)?;
        FinitePoset::from_covers(rec.m, &rec.covers).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(k: usize) -> FinitePoset {
        let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        FinitePoset::from_covers(k, &covers).unwrap()
    }

    fn pentagon() -> FinitePoset {
        // 0 < 1 < 2 < 4 and 0 < 3 < 4
        FinitePoset::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let s = FinitePoset::from_covers(1, &[]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.covers().is_empty());
        let c = chain(2);
        assert!(c.leq(0, 1) && !c.leq(1, 0));
        assert_eq!(
            FinitePoset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]),
            Err(PosetError::NotHasse(0, 2))
        );
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            FinitePoset::from_covers(2, &[(0, 2)]),
            Err(PosetError::OutOfRange { index: 2, m: 2 })
        );
        assert_eq!(
            FinitePoset::from_covers(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(PosetError::Cycle)
        );
        assert_eq!(FinitePoset::from_covers(1, &[(0, 0)]), Err(PosetError::Cycle));
        assert_eq!(
            FinitePoset::from_covers(2, &[(0, 1), (0, 1)]),
            Err(PosetError::DuplicateCover(0, 1))
        );
    }

    #[test]
    fn from_relation_reduces() {
        let p = FinitePoset::from_relation(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(FinitePoset::from_relation(2, &[(0, 1), (1, 0)]), Err(PosetError::Cycle));
    }

    #[test]
    fn dual_examples() {
        let d = chain(2).dual();
        assert_eq!(d.covers(), &[(1, 0)]);
        assert!(d.leq(1, 0));
        let anti = FinitePoset::from_covers(3, &[]).unwrap();
        assert_eq!(anti.dual(), anti);
        let p = pentagon();
        assert!(find_isomorphism(&p.dual(), &p).is_some());
    }

    #[test]
    fn product_examples() {
        let diamond = chain(2).product(&chain(2));
        assert_eq!(diamond.len(), 4);
        assert_eq!(diamond.covers().len(), 4);
        let single = FinitePoset::from_covers(1, &[]).unwrap();
        assert_eq!(pentagon().product(&single), pentagon());
    }

    #[test]
    fn interval_poset_examples() {
        let single = FinitePoset::from_covers(1, &[]).unwrap();
        let (ip, _) = single.interval_poset();
        assert_eq!(ip.len(), 1);

        let (ip, ids) = chain(2).interval_poset();
        assert_eq!(
            ids,
            vec![
                IntervalId { lo: 0, hi: 0 },
                IntervalId { lo: 0, hi: 1 },
                IntervalId { lo: 1, hi: 1 }
            ]
        );
        assert_eq!(ip.covers(), &[(0, 1), (1, 2)]);

        let (ip, _) = pentagon().interval_poset();
        assert_eq!(ip.len(), 13);
    }

    #[test]
    fn valence_d_examples() {
        assert_eq!(pentagon().valence_poly_d().to_string(), "a^2 + 3 a abar + abar^2");
        assert_eq!(FinitePoset::from_covers(1, &[]).unwrap().valence_poly_d().to_string(), "1");
    }

    #[test]
    fn classify_examples() {
        let single = FinitePoset::from_covers(1, &[]).unwrap();
        assert_eq!(single.classify_interval_edges(IntervalId { lo: 0, hi: 0 }), EdgeDegrees::default());
        let c = chain(2);
        assert_eq!(
            c.classify_interval_edges(IntervalId { lo: 0, hi: 1 }),
            EdgeDegrees { dx: 1, dy: 0, dybar: 0, dxbar: 1 }
        );
        assert_eq!(
            c.classify_interval_edges(IntervalId { lo: 0, hi: 0 }),
            EdgeDegrees { dx: 0, dy: 1, dybar: 0, dxbar: 0 }
        );
    }

    #[test]
    fn valence_dd_examples() {
        let single = FinitePoset::from_covers(1, &[]).unwrap();
        assert_eq!(single.valence_poly_dd().to_string(), "1");
        assert_eq!(chain(2).valence_poly_dd().to_string(), "x xbar + y + ybar");
        let dd3 = pentagon().valence_poly_dd().specialize(&[(Var::Xbar, 1)]).unwrap();
        assert_eq!(
            dd3.to_string(),
            "x y ybar + x^2 + 3 x y + y^2 + 3 x ybar + 3 y ybar + ybar^2"
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let p = pentagon().product(&chain(3));
        assert_eq!(
            p.valence_poly_dd_with(Execution::Sequential),
            p.valence_poly_dd_with(Execution::Parallel)
        );
    }

    #[test]
    fn json_schema() {
        let text = serde_json::to_string(&chain(3)).unwrap();
        assert_eq!(text, r#"{"m":3,"covers":[[0,1],[1,2]]}"#);
        let back: FinitePoset = serde_json::from_str(&text).unwrap();
        assert_eq!(back, chain(3));
        assert!(serde_json::from_str::<FinitePoset>(r#"{"m":3,"covers":[[0,1],[1,2],[0,2]]}"#).is_err());
    }
}
