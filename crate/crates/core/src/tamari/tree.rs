use std::fmt;
use std::str::FromStr;

use super::TamariError;

/// Plane binary tree; `Node(left, right)` is an internal node.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PlaneBinaryTree {
    Leaf,
    Node(Box<PlaneBinaryTree>, Box<PlaneBinaryTree>),
}

use PlaneBinaryTree::{Leaf, Node};

/// Orientation of a leaf: `L` for a left child, `R` for a right child.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

/// Leaf orientations read left to right (`n + 1` letters).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Canopy(pub Vec<Side>);

impl fmt::Display for Canopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Side::L => "L",
                Side::R => "R",
            })?;
        }
        Ok(())
    }
}

/// Part sizes of the maximal left-border factorization, top factor first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    fn cuts(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// True when every cut point of `self` is a cut point of `finer`.
    pub fn is_coarser_than(&self, finer: &Composition) -> bool {
        let mine = self.cuts();
        let theirs = finer.cuts();
        mine.last() == theirs.last() && mine.iter().all(|c| theirs.contains(c))
    }
}

impl PlaneBinaryTree {
    pub fn node(left: PlaneBinaryTree, right: PlaneBinaryTree) -> Self {
        Node(Box::new(left), Box::new(right))
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        match self {
            Leaf => 0,
            Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Leaf)
    }

    /// No internal node has an internal left child; the minimum of Tam_n.
    pub fn right_comb(n: usize) -> Self {
        (0..n).fold(Leaf, |acc, _| Self::node(Leaf, acc))
    }

    /// No internal node has an internal right child; the maximum of Tam_n.
    pub fn left_comb(n: usize) -> Self {
        (0..n).fold(Leaf, |acc, _| Self::node(acc, Leaf))
    }

    /// Balanced-parenthesis word: a node is `(` left `)` right.
    pub fn dyck_word(&self) -> String {
        let mut s = String::with_capacity(2 * self.size());
        self.write_dyck(&mut s);
        s
    }

    fn write_dyck(&self, s: &mut String) {
        if let Node(l, r) = self {
            s.push('(');
            l.write_dyck(s);
            s.push(')');
            r.write_dyck(s);
        }
    }

    pub fn from_dyck(word: &str) -> Result<Self, TamariError> {
        fn parse(b: &[u8], pos: &mut usize) -> Result<PlaneBinaryTree, TamariError> {
            if *pos < b.len() && b[*pos] == b'(' {
                *pos += 1;
                let l = parse(b, pos)?;
                if *pos >= b.len() || b[*pos] != b')' {
                    return Err(TamariError::Parse("unbalanced Dyck word".into()));
                }
                *pos += 1;
                let r = parse(b, pos)?;
                Ok(PlaneBinaryTree::node(l, r))
            } else {
                Ok(Leaf)
            }
        }
        let b = word.as_bytes();
        let mut pos = 0;
        let t = parse(b, &mut pos)?;
        if pos != b.len() {
            return Err(TamariError::Parse(format!("trailing input in {word:?}")));
        }
        Ok(t)
    }

    /// All trees with `n` internal nodes, sorted by Dyck word.
    pub fn enumerate(n: usize) -> Result<Vec<Self>, TamariError> {
        if !(1..=12).contains(&n) {
            return Err(TamariError::OutOfRange { n, min: 1, max: 12 });
        }
        let mut by_size: Vec<Vec<PlaneBinaryTree>> = vec![vec![Leaf]];
        for k in 1..=n {
            let mut level = Vec::new();
            for i in 0..k {
                for l in &by_size[i] {
                    for r in &by_size[k - 1 - i] {
                        level.push(Self::node(l.clone(), r.clone()));
                    }
                }
            }
            by_size.push(level);
        }
        let mut trees = by_size.pop().unwrap();
        trees.sort_by_cached_key(|t| t.dyck_word());
        Ok(trees)
    }

    /// Trees covering `self`: at every node `A ^ (B ^ C)` rewrite to `(A ^ B) ^ C`.
    pub fn rotation_covers(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if let Node(a, bc) = self {
            if let Node(b, c) = bc.as_ref() {
                out.push(Self::node(Self::node((**a).clone(), (**b).clone()), (**c).clone()));
            }
            for l in a.rotation_covers() {
                out.push(Self::node(l, (**bc).clone()));
            }
            for r in bc.rotation_covers() {
                out.push(Self::node((**a).clone(), r));
            }
        }
        out
    }

    /// Internal nodes whose right child is internal (edges drawn as `/`).
    pub fn internal_right_edges(&self) -> usize {
        match self {
            Leaf => 0,
            Node(l, r) => {
                usize::from(!r.is_leaf()) + l.internal_right_edges() + r.internal_right_edges()
            }
        }
    }

    /// Internal nodes whose left child is internal (edges drawn as `\`).
    pub fn internal_left_edges(&self) -> usize {
        match self {
            Leaf => 0,
            Node(l, r) => {
                usize::from(!l.is_leaf()) + l.internal_left_edges() + r.internal_left_edges()
            }
        }
    }

    pub fn canopy(&self) -> Canopy {
        fn walk(t: &PlaneBinaryTree, side: Side, out: &mut Vec<Side>) {
            match t {
                Leaf => out.push(side),
                Node(l, r) => {
                    walk(l, Side::L, out);
                    walk(r, Side::R, out);
                }
            }
        }
        let mut out = Vec::with_capacity(self.size() + 1);
        if let Node(l, r) = self {
            walk(l, Side::L, &mut out);
            walk(r, Side::R, &mut out);
        }
        Canopy(out)
    }

    /// Left-right mirror image.
    pub fn reverse(&self) -> Self {
        match self {
            Leaf => Leaf,
            Node(l, r) => Self::node(r.reverse(), l.reverse()),
        }
    }

    /// `top / bottom`: graft the root of `top` onto the leftmost leaf of `bottom`.
    pub fn graft(top: &Self, bottom: &Self) -> Self {
        match bottom {
            Leaf => top.clone(),
            Node(l, r) => Self::node(Self::graft(top, l), (**r).clone()),
        }
    }

    /// Maximal factorization `S_0 / S_1 / ... / S_l`; the last factor holds the root.
    pub fn left_border_decompose(&self) -> Vec<Self> {
        let mut pieces = Vec::new();
        let mut cur = self;
        while let Node(l, r) = cur {
            pieces.push(Self::node(Leaf, (**r).clone()));
            cur = l;
        }
        pieces.reverse();
        pieces
    }

    pub fn recompose(factors: &[Self]) -> Self {
        factors
            .iter()
            .fold(Leaf, |acc, f| if acc.is_leaf() { f.clone() } else { Self::graft(&acc, f) })
    }

    pub fn composition(&self) -> Composition {
        Composition(self.left_border_decompose().iter().map(Self::size).collect())
    }

    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Node(l, _) if l.is_leaf())
    }
}

impl fmt::Display for PlaneBinaryTree {
    /// Text format: a leaf is `o`, a node is `(left right)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf => f.write_str("o"),
            Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl fmt::Debug for PlaneBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PlaneBinaryTree {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        fn parse(t: &[char], pos: &mut usize) -> Result<PlaneBinaryTree, TamariError> {
            match t.get(*pos) {
                Some('o') => {
                    *pos += 1;
                    Ok(Leaf)
                }
                Some('(') => {
                    *pos += 1;
                    let l = parse(t, pos)?;
                    let r = parse(t, pos)?;
                    if t.get(*pos) != Some(&')') {
                        return Err(TamariError::Parse("expected ')'".into()));
                    }
                    *pos += 1;
                    Ok(PlaneBinaryTree::node(l, r))
                }
                other => Err(TamariError::Parse(format!("unexpected {other:?}"))),
            }
        }
        let mut pos = 0;
        let tree = parse(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(TamariError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(tree)
    }
}
