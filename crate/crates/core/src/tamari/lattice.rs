use std::collections::HashMap;
use std::fmt;

use super::tree::{Canopy, PlaneBinaryTree, Side};
use super::TamariError;
use crate::poset::{FinitePoset, IntervalId};

/// Tam_n: the poset of plane binary trees under rotation, with the tree
/// labelling each element index.
#[derive(Debug, Clone)]
pub struct TamariLattice {
    n: usize,
    trees: Vec<PlaneBinaryTree>,
    canopies: Vec<Canopy>,
    index: HashMap<PlaneBinaryTree, usize>,
    poset: FinitePoset,
}

impl TamariLattice {
    pub const MAX_N: usize = 10;

    pub fn new(n: usize) -> Result<Self, TamariError> {
        if !(1..=Self::MAX_N).contains(&n) {
            return Err(TamariError::OutOfRange { n, min: 1, max: Self::MAX_N });
        }
        let trees = PlaneBinaryTree::enumerate(n)?;
        let index: HashMap<PlaneBinaryTree, usize> =
            trees.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut covers = Vec::new();
        for (i, t) in trees.iter().enumerate() {
            for up in t.rotation_covers() {
                covers.push((i, index[&up]));
            }
        }
        let poset = FinitePoset::from_covers(trees.len(), &covers)
            .expect("rotations form a Hasse diagram");
        let canopies = trees.iter().map(PlaneBinaryTree::canopy).collect();
        Ok(TamariLattice {
            n,
            trees,
            canopies,
            index,
            poset,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn trees(&self) -> &[PlaneBinaryTree] {
        &self.trees
    }

    pub fn tree(&self, i: usize) -> &PlaneBinaryTree {
        &self.trees[i]
    }

    pub fn canopy(&self, i: usize) -> &Canopy {
        &self.canopies[i]
    }

    pub fn index_of(&self, t: &PlaneBinaryTree) -> Result<usize, TamariError> {
        self.index
            .get(t)
            .copied()
            .ok_or_else(|| TamariError::UnknownTree(t.to_string()))
    }

    pub fn minimum(&self) -> usize {
        self.index[&PlaneBinaryTree::right_comb(self.n)]
    }

    pub fn maximum(&self) -> usize {
        self.index[&PlaneBinaryTree::left_comb(self.n)]
    }

    /// Index of the mirror image of element `i`.
    pub fn reverse_index(&self, i: usize) -> usize {
        self.index[&self.trees[i].reverse()]
    }

    fn check_interval(&self, lo: usize, hi: usize) -> Result<(), TamariError> {
        if !self.poset.leq(lo, hi) {
            return Err(TamariError::NotAnInterval(
                self.trees[lo].to_string(),
                self.trees[hi].to_string(),
            ));
        }
        Ok(())
    }

    /// Canopies of the two endpoints, letter by letter.
    pub fn interval_canopy_word(&self, iv: IntervalId) -> Result<IntervalCanopyWord, TamariError> {
        self.check_interval(iv.lo, iv.hi)?;
        let (s, t) = (&self.canopies[iv.lo], &self.canopies[iv.hi]);
        let letters = s
            .0
            .iter()
            .zip(&t.0)
            .map(|pair| match pair {
                (Side::L, Side::L) => DoubleLetter::LL,
                (Side::L, Side::R) => DoubleLetter::LR,
                (Side::R, Side::R) => DoubleLetter::RR,
                (Side::R, Side::L) => unreachable!("canopy is monotone along the order"),
            })
            .collect();
        Ok(IntervalCanopyWord(letters))
    }

    /// Both endpoints share the same canopy.
    pub fn is_synchronous(&self, iv: IntervalId) -> Result<bool, TamariError> {
        self.check_interval(iv.lo, iv.hi)?;
        Ok(self.canopies[iv.lo] == self.canopies[iv.hi])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DoubleLetter {
    LL,
    LR,
    RR,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalCanopyWord(pub Vec<DoubleLetter>);

impl IntervalCanopyWord {
    pub fn count(&self, letter: DoubleLetter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }
}

impl fmt::Display for IntervalCanopyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                DoubleLetter::LL => "LL",
                DoubleLetter::LR => "LR",
                DoubleLetter::RR => "RR",
            })
            .collect();
        write!(f, "({})", names.join(","))
    }
}
