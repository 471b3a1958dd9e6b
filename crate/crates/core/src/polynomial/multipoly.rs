use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::var::{Universe, Var, MAX_VARS};
use super::PolyError;

/// Exponent vector of fixed arity. Slots beyond the universe size stay zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; MAX_VARS];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[i]
                .checked_add(other.0[i])
                .expect("exponent overflow in monomial product");
        }
        Monomial(out)
    }
}

/// Graded reverse lexicographic comparison; `Greater` sorts first in text output.
fn degrevlex(a: &Monomial, b: &Monomial, arity: usize) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        for i in (0..arity).rev() {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    })
}

/// Sparse multivariate polynomial with exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    universe: Universe,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(universe: Universe) -> Self {
        MultiPoly {
            universe,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(universe: Universe) -> Self {
        Self::constant(universe, 1)
    }

    pub fn constant(universe: Universe, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(universe);
        p.add_term(Monomial::ONE, c.into());
        p
    }

    /// The polynomial consisting of the single variable `v`.
    pub fn var(universe: Universe, v: Var) -> Result<Self, PolyError> {
        Self::monomial(universe, &[(v, 1)], 1)
    }

    pub fn monomial(
        universe: Universe,
        powers: &[(Var, u8)],
        coeff: impl Into<BigInt>,
    ) -> Result<Self, PolyError> {
        let mut m = Monomial::ONE;
        for &(v, e) in powers {
            let i = universe
                .index_of(v)
                .ok_or(PolyError::VariableNotInUniverse(v))?;
            m.0[i] = m.0[i]
                .checked_add(e)
                .ok_or(PolyError::ExponentOverflow)?;
        }
        let mut p = Self::zero(universe);
        p.add_term(m, coeff.into());
        Ok(p)
    }

    /// Builds a polynomial from (exponent vector, coefficient) pairs, where
    /// each exponent vector lists the universe variables in canonical order.
    pub fn from_terms<I, C>(universe: Universe, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(universe);
        for (exps, c) in terms {
            if exps.len() != universe.len() {
                return Err(PolyError::ArityMismatch {
                    expected: universe.len(),
                    found: exps.len(),
                });
            }
            let mut m = Monomial::ONE;
            for (i, e) in exps.into_iter().enumerate() {
                m.0[i] = u8::try_from(e).map_err(|_| PolyError::ExponentOverflow)?;
            }
            p.add_term(m, c.into());
        }
        Ok(p)
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Exponent vector of a monomial restricted to the universe arity.
    pub fn exponents(&self, m: &Monomial) -> Vec<u32> {
        m.0[..self.universe.len()].iter().map(|&e| e as u32).collect()
    }

    /// Coefficient of the monomial given by `powers`; absent variables have exponent 0.
    pub fn coeff(&self, powers: &[(Var, u8)]) -> BigInt {
        let mut m = Monomial::ONE;
        for &(v, e) in powers {
            match self.universe.index_of(v) {
                Some(i) => m.0[i] += e,
                None if e == 0 => {}
                None => return BigInt::zero(),
            }
        }
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.universe != other.universe {
            return Err(PolyError::UniverseMismatch {
                left: format!("{:?}", self.universe),
                right: format!("{:?}", other.universe),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(self.universe));
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultiPoly {
            universe: self.universe,
            terms,
        })
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.universe);
        }
        MultiPoly {
            universe: self.universe,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// Multiplies by a single variable raised to `e`.
    pub fn shift(&self, v: Var, e: u8) -> Result<MultiPoly, PolyError> {
        let i = self
            .universe
            .index_of(v)
            .ok_or(PolyError::VariableNotInUniverse(v))?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m = *m;
            m.0[i] = m.0[i].checked_add(e).ok_or(PolyError::ExponentOverflow)?;
            terms.insert(m, c.clone());
        }
        Ok(MultiPoly {
            universe: self.universe,
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::one(self.universe);
        for _ in 0..e {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// Sum of all coefficients, i.e. evaluation at all variables equal to one.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Re-expresses the polynomial over a larger (or equal) universe.
    pub fn embed(&self, target: Universe) -> Result<MultiPoly, PolyError> {
        if target == self.universe {
            return Ok(self.clone());
        }
        let slots = self.slot_map(target, &[])?;
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            out.add_term(remap(m, &slots, self.universe.len())?, c.clone());
        }
        Ok(out)
    }

    /// For each source slot, the target slot its exponent moves to, or `None`
    /// when the variable is bound (and so handled separately).
    fn slot_map(&self, target: Universe, bound: &[Var]) -> Result<Vec<Option<usize>>, PolyError> {
        self.universe
            .vars()
            .map(|v| {
                if bound.contains(&v) {
                    return Ok(None);
                }
                match target.index_of(v) {
                    Some(i) => Ok(Some(i)),
                    None if self.max_degree_in(v) == 0 => Ok(None),
                    None => Err(PolyError::VariableNotInUniverse(v)),
                }
            })
            .collect()
    }

    fn max_degree_in(&self, v: Var) -> u32 {
        match self.universe.index_of(v) {
            Some(i) => self.terms.keys().map(|m| m.0[i] as u32).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Degree in a single variable (0 for the zero polynomial).
    pub fn degree_in(&self, v: Var) -> u32 {
        self.max_degree_in(v)
    }

    /// Substitutes each bound variable by a polynomial over `target`; unbound
    /// variables keep their name and must belong to `target` (unless absent
    /// from every term).
    pub fn substitute(
        &self,
        bindings: &[(Var, MultiPoly)],
        target: Universe,
    ) -> Result<MultiPoly, PolyError> {
        for (v, b) in bindings {
            if b.universe != target {
                return Err(PolyError::UniverseMismatch {
                    left: format!("binding for {v}: {:?}", b.universe),
                    right: format!("{target:?}"),
                });
            }
        }
        let bound: Vec<(usize, &MultiPoly)> = bindings
            .iter()
            .filter_map(|(v, b)| self.universe.index_of(*v).map(|i| (i, b)))
            .collect();
        let bound_vars: Vec<Var> = bindings.iter().map(|(v, _)| *v).collect();
        let slots = self.slot_map(target, &bound_vars)?;
        let arity = self.universe.len();

        // Fast path: every binding is a single term.
        if bound.iter().all(|(_, b)| b.len() <= 1) {
            let mut out = MultiPoly::zero(target);
            'terms: for (m, c) in &self.terms {
                let mut mono = remap(m, &slots, arity)?;
                let mut coeff = c.clone();
                for &(i, b) in &bound {
                    let e = m.0[i];
                    if e == 0 {
                        continue;
                    }
                    let Some((bm, bc)) = b.terms.iter().next() else {
                        continue 'terms;
                    };
                    for _ in 0..e {
                        mono = mono.mul(bm);
                    }
                    if !bc.is_one() {
                        coeff *= num_traits::pow(bc.clone(), e as usize);
                    }
                }
                out.add_term(mono, coeff);
            }
            return Ok(out);
        }

        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(bound.len());
        for &(i, b) in &bound {
            let max = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            let mut list = vec![MultiPoly::one(target)];
            for k in 1..=max as usize {
                let next = list[k - 1].try_mul(b)?;
                list.push(next);
            }
            powers.push(list);
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::zero(target);
            term.add_term(remap(m, &slots, arity)?, c.clone());
            for (k, &(i, _)) in bound.iter().enumerate() {
                let e = m.0[i] as usize;
                if e > 0 {
                    term = term.try_mul(&powers[k][e])?;
                }
            }
            for (mm, cc) in term.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Shorthand for binding variables to integer constants, dropping them
    /// from the universe.
    pub fn specialize(&self, values: &[(Var, i64)]) -> Result<MultiPoly, PolyError> {
        let mut target = self.universe;
        for (v, _) in values {
            target = target.without(*v);
        }
        let bindings: Vec<(Var, MultiPoly)> = values
            .iter()
            .map(|&(v, c)| (v, MultiPoly::constant(target, c)))
            .collect();
        self.substitute(&bindings, target)
    }

    /// Renames variables pairwise (a simultaneous substitution by variables).
    /// The target universe is the image of the current one.
    pub fn rename(&self, pairs: &[(Var, Var)]) -> Result<MultiPoly, PolyError> {
        let mut image = Universe::EMPTY;
        for v in self.universe.vars() {
            let w = pairs
                .iter()
                .find(|(from, _)| *from == v)
                .map(|(_, to)| *to)
                .unwrap_or(v);
            image = image.with(w)?;
        }
        let bindings = pairs
            .iter()
            .filter(|(from, _)| self.universe.contains(*from))
            .map(|&(from, to)| Ok((from, MultiPoly::var(image, to)?)))
            .collect::<Result<Vec<_>, PolyError>>()?;
        self.substitute(&bindings, image)
    }

    /// Exact quotient `(self - other) / (var - 1)`.
    pub fn divided_difference(&self, other: &MultiPoly, var: Var) -> Result<MultiPoly, PolyError> {
        let diff = self.try_sub(other)?;
        let i = self
            .universe
            .index_of(var)
            .ok_or(PolyError::VariableNotInUniverse(var))?;
        // Group by the exponents of the other variables; each group is a
        // univariate polynomial in `var`, divided by synthetic division at 1.
        let mut groups: BTreeMap<Monomial, BTreeMap<u8, BigInt>> = BTreeMap::new();
        for (m, c) in diff.terms {
            let e = m.0[i];
            let mut rest = m;
            rest.0[i] = 0;
            groups.entry(rest).or_default().insert(e, c);
        }
        let mut out = MultiPoly::zero(self.universe);
        for (rest, column) in groups {
            let mut running = BigInt::zero();
            let top = *column.keys().next_back().expect("nonempty group");
            for e in (1..=top).rev() {
                if let Some(c) = column.get(&e) {
                    running += c;
                }
                let mut m = rest;
                m.0[i] = e - 1;
                out.add_term(m, running.clone());
            }
            if let Some(c) = column.get(&0) {
                running += c;
            }
            if !running.is_zero() {
                return Err(PolyError::NotDivisible(format!(
                    "difference does not vanish at {var}=1 (remainder {running})"
                )));
            }
        }
        Ok(out)
    }

    /// Exact division by a single variable.
    pub fn exact_div_var(&self, var: Var) -> Result<MultiPoly, PolyError> {
        let i = self
            .universe
            .index_of(var)
            .ok_or(PolyError::VariableNotInUniverse(var))?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                return Err(PolyError::NotDivisible(format!(
                    "term without {var} in division by {var}"
                )));
            }
            let mut m = *m;
            m.0[i] -= 1;
            terms.insert(m, c.clone());
        }
        Ok(MultiPoly {
            universe: self.universe,
            terms,
        })
    }

    /// Applies a permutation of variables given as (from, to) pairs; the
    /// permutation must map the universe onto itself.
    pub fn permute(&self, perm: &[(Var, Var)]) -> Result<MultiPoly, PolyError> {
        let froms: BTreeSet<Var> = perm.iter().map(|p| p.0).collect();
        let tos: BTreeSet<Var> = perm.iter().map(|p| p.1).collect();
        if froms != tos || froms.len() != perm.len() {
            return Err(PolyError::NotAPermutation);
        }
        if froms.iter().any(|v| !self.universe.contains(*v)) {
            return Err(PolyError::NotAPermutation);
        }
        self.rename(perm)
    }

    pub fn is_symmetric(&self, perm: &[(Var, Var)]) -> Result<bool, PolyError> {
        Ok(self.permute(perm)? == *self)
    }

    /// Exponent tuples projected onto `vars` (in the given order).
    pub fn support(&self, vars: &[Var]) -> Result<BTreeSet<Vec<u32>>, PolyError> {
        let idx = self.indices(vars)?;
        Ok(self
            .terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.0[i] as u32).collect())
            .collect())
    }

    /// (min, max) of the total degree restricted to `vars`; `None` for zero.
    pub fn degree_range(&self, vars: &[Var]) -> Result<Option<(u32, u32)>, PolyError> {
        let idx = self.indices(vars)?;
        let mut range: Option<(u32, u32)> = None;
        for m in self.terms.keys() {
            let d: u32 = idx.iter().map(|&i| m.0[i] as u32).sum();
            range = Some(match range {
                None => (d, d),
                Some((lo, hi)) => (lo.min(d), hi.max(d)),
            });
        }
        Ok(range)
    }

    fn indices(&self, vars: &[Var]) -> Result<Vec<usize>, PolyError> {
        vars.iter()
            .map(|&v| {
                self.universe
                    .index_of(v)
                    .ok_or(PolyError::VariableNotInUniverse(v))
            })
            .collect()
    }

    /// Dense coefficient list when the polynomial involves at most the single
    /// variable `v`.
    pub fn to_dense(&self, v: Var) -> Result<Vec<BigInt>, PolyError> {
        let i = self.universe.index_of(v);
        let mut out: Vec<BigInt> = Vec::new();
        for (m, c) in &self.terms {
            let e = match i {
                Some(i) => {
                    let mut rest = *m;
                    rest.0[i] = 0;
                    if rest != Monomial::ONE {
                        return Err(PolyError::NotUnivariate(v));
                    }
                    m.0[i] as usize
                }
                None if *m == Monomial::ONE => 0,
                None => return Err(PolyError::NotUnivariate(v)),
            };
            if out.len() <= e {
                out.resize(e + 1, BigInt::zero());
            }
            out[e] += c;
        }
        Ok(out)
    }

    fn write_monomial(&self, f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
        let mut first = true;
        for (i, v) in self.universe.vars().enumerate() {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

fn remap(m: &Monomial, slots: &[Option<usize>], arity: usize) -> Result<Monomial, PolyError> {
    let mut out = Monomial::ONE;
    for (i, slot) in slots.iter().enumerate().take(arity) {
        if let Some(j) = *slot {
            out.0[j] = out.0[j]
                .checked_add(m.0[i])
                .ok_or(PolyError::ExponentOverflow)?;
        }
    }
    Ok(out)
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded reverse lexicographic order, e.g.
    /// `u^2 v x + u v^2 ybar + u v y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let arity = self.universe.len();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| degrevlex(b.0, a.0, arity));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag} ")?;
                }
                self.write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly{:?}({self})", self.universe)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("universe mismatch in addition")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("universe mismatch in subtraction")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("universe mismatch in multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            universe: self.universe,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

// JSON: [{"coeff": int, "exp": {"u": 1, ...}}, ...] sorted lexicographically
// by exponent vector; every universe variable is listed in "exp".

struct ExpView<'a> {
    universe: Universe,
    m: &'a Monomial,
}

impl Serialize for ExpView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.universe.len()))?;
        for (i, v) in self.universe.vars().enumerate() {
            map.serialize_entry(v.name(), &self.m.0[i])?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TermView<'a> {
    coeff: serde_json::Number,
    exp: ExpView<'a>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            let coeff: serde_json::Number = c
                .to_string()
                .parse()
                .map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&TermView {
                coeff,
                exp: ExpView {
                    universe: self.universe,
                    m,
                },
            })?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
struct TermRecord {
    coeff: serde_json::Number,
    exp: BTreeMap<String, u32>,
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        let mut vars = Vec::new();
        for r in &records {
            for name in r.exp.keys() {
                let v: Var = name.parse().map_err(de::Error::custom)?;
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        let universe = Universe::new(&vars).map_err(de::Error::custom)?;
        let mut p = MultiPoly::zero(universe);
        for r in records {
            let c: BigInt = r.coeff.to_string().parse().map_err(de::Error::custom)?;
            let mut m = Monomial::ONE;
            for (name, e) in r.exp {
                let v: Var = name.parse().map_err(de::Error::custom)?;
                let i = universe.index_of(v).expect("collected above");
                m.0[i] = u8::try_from(e).map_err(de::Error::custom)?;
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}
