use std::fmt;
use std::str::FromStr;

use super::PolyError;

/// Maximum number of variables a single universe may hold.
pub const MAX_VARS: usize = 8;

/// A named indeterminate. The declaration order is the canonical variable
/// order used for exponent vectors, JSON output and lexicographic sorting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    U,
    V,
    X,
    Y,
    Ybar,
    Xbar,
    Q,
    A,
    Abar,
    LL,
    RR,
    Z,
}

impl Var {
    pub const ALL: [Var; 13] = [
        Var::T,
        Var::U,
        Var::V,
        Var::X,
        Var::Y,
        Var::Ybar,
        Var::Xbar,
        Var::Q,
        Var::A,
        Var::Abar,
        Var::LL,
        Var::RR,
        Var::Z,
    ];

    /// ASCII name, used in every textual and JSON rendering.
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::U => "u",
            Var::V => "v",
            Var::X => "x",
            Var::Y => "y",
            Var::Ybar => "ybar",
            Var::Xbar => "xbar",
            Var::Q => "q",
            Var::A => "a",
            Var::Abar => "abar",
            Var::LL => "LL",
            Var::RR => "RR",
            Var::Z => "z",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::ALL
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| PolyError::UnknownVariable(s.to_string()))
    }
}

/// An ordered set of variables; positions follow [`Var`] declaration order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Universe(u16);

impl Universe {
    pub const EMPTY: Universe = Universe(0);

    pub fn new(vars: &[Var]) -> Result<Self, PolyError> {
        let mut mask = 0u16;
        for v in vars {
            mask |= v.bit();
        }
        let u = Universe(mask);
        if u.len() > MAX_VARS {
            return Err(PolyError::UniverseTooLarge(u.len()));
        }
        Ok(u)
    }

    /// Like [`Universe::new`] for statically known variable lists.
    pub fn of(vars: &[Var]) -> Self {
        Self::new(vars).expect("universe too large")
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & v.bit() != 0
    }

    /// Position of `v` inside exponent vectors of this universe.
    pub fn index_of(self, v: Var) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        Some((self.0 & (v.bit() - 1)).count_ones() as usize)
    }

    pub fn vars(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    pub fn with(self, v: Var) -> Result<Self, PolyError> {
        let u = Universe(self.0 | v.bit());
        if u.len() > MAX_VARS {
            return Err(PolyError::UniverseTooLarge(u.len()));
        }
        Ok(u)
    }

    pub fn without(self, v: Var) -> Self {
        Universe(self.0 & !v.bit())
    }

    pub fn union(self, other: Universe) -> Result<Self, PolyError> {
        let u = Universe(self.0 | other.0);
        if u.len() > MAX_VARS {
            return Err(PolyError::UniverseTooLarge(u.len()));
        }
        Ok(u)
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vars().map(Var::name)).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_follow_canonical_order() {
        let u = Universe::of(&[Var::Ybar, Var::U, Var::X]);
        assert_eq!(u.index_of(Var::U), Some(0));
        assert_eq!(u.index_of(Var::X), Some(1));
        assert_eq!(u.index_of(Var::Ybar), Some(2));
        assert_eq!(u.index_of(Var::Y), None);
        assert_eq!(u.vars().collect::<Vec<_>>(), vec![Var::U, Var::X, Var::Ybar]);
    }

    #[test]
    fn names_round_trip() {
        for v in Var::ALL {
            assert_eq!(v.name().parse::<Var>().unwrap(), v);
        }
        assert!("w".parse::<Var>().is_err());
    }

    #[test]
    fn too_many_variables() {
        assert!(Universe::new(&Var::ALL).is_err());
    }
}
