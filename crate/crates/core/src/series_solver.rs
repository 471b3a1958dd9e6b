//! Order-by-order solutions of the catalytic functional equations for the
//! generating series of Tamari intervals.
//!
//! Every system has the shape
//!
//! ```text
//! Phi   = Theta + w * Phi(c, c) * Theta / c
//! Theta = t * c * (u + <linear terms in Phi, with divided differences in u>)
//! ```
//!
//! where `c` is the catalytic variable carried by the top factor (`v` in the
//! two-variable systems, `u` in the one-variable ones) and `w` a weight.
//! Since `Theta` carries an explicit factor `t`, `[t^k]Theta` only needs
//! `[t^(k-1)]Phi`, and then `[t^k]Phi` only needs `[t^k]Theta` and lower
//! orders. Divided differences are taken exactly, one coefficient at a time.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::polynomial::{MultiPoly, PolyError, SeriesT, UniPoly, Universe, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("truncation order must be at least 1, got {0}")]
    InvalidOrder(usize),
    #[error("operation needs {expected} mode, got {found}")]
    WrongMode { expected: &'static str, found: Mode },
    #[error("series coefficient at t^{0} is not a constant")]
    NotConstant(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Catalytic `u, v`; weights `x, y, ybar`.
    Full,
    /// As `Full`, with `q` marking the longest chain of an interval.
    QAnalogue,
    /// One catalytic `u`; weights `LL, RR` from interval canopies.
    Canopy,
    /// Synchronous intervals, all weights set to one.
    SynchronousRestricted,
    /// Intervals of `(x, y, ybar)`-degree `n - 1`, all weights set to one.
    BicubicRestricted,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Full,
        Mode::QAnalogue,
        Mode::Canopy,
        Mode::SynchronousRestricted,
        Mode::BicubicRestricted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::QAnalogue => "q",
            Mode::Canopy => "canopy",
            Mode::SynchronousRestricted => "sync",
            Mode::BicubicRestricted => "bicubic",
        }
    }

    pub fn universe(self) -> Universe {
        match self {
            Mode::Full => Universe::of(&[Var::U, Var::V, Var::X, Var::Y, Var::Ybar]),
            Mode::QAnalogue => Universe::of(&[Var::U, Var::V, Var::X, Var::Y, Var::Ybar, Var::Q]),
            Mode::Canopy => Universe::of(&[Var::U, Var::LL, Var::RR]),
            Mode::SynchronousRestricted => Universe::of(&[Var::U]),
            Mode::BicubicRestricted => Universe::of(&[Var::U, Var::V]),
        }
    }

    fn two_catalytic(self) -> bool {
        matches!(self, Mode::Full | Mode::QAnalogue | Mode::BicubicRestricted)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemConfig {
    pub mode: Mode,
    /// Truncation order N: coefficients of `t^0 .. t^(N-1)` are computed.
    pub order: usize,
}

impl SystemConfig {
    pub const DEFAULT_ORDER: usize = 9;

    pub fn new(mode: Mode, order: usize) -> Self {
        SystemConfig { mode, order }
    }

    pub fn universe(&self) -> Universe {
        self.mode.universe()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOutput {
    pub mode: Mode,
    pub phi: SeriesT,
    pub theta: SeriesT,
}

impl SolverOutput {
    pub fn order(&self) -> usize {
        self.phi.order()
    }

    /// `Phi` with every catalytic variable set to one.
    pub fn phi_11(&self) -> Result<SeriesT, SolverError> {
        specialize_catalytic(&self.phi, self.mode)
    }

    pub fn theta_11(&self) -> Result<SeriesT, SolverError> {
        specialize_catalytic(&self.theta, self.mode)
    }

    /// `Phi(u, 1)`; only defined for the two-variable systems.
    pub fn phi_u1(&self) -> Result<Option<SeriesT>, SolverError> {
        if !self.mode.two_catalytic() {
            return Ok(None);
        }
        let u = self.phi.universe();
        let target = u.without(Var::V);
        let one = MultiPoly::one(target);
        Ok(Some(self.phi.map(target, |p| p.substitute(&[(Var::V, one.clone())], target))?))
    }

    /// `Phi(u, u)`; the series itself in the one-variable systems.
    pub fn phi_uu(&self) -> Result<SeriesT, SolverError> {
        if !self.mode.two_catalytic() {
            return Ok(self.phi.clone());
        }
        let target = self.phi.universe().without(Var::V);
        let u = MultiPoly::var(target, Var::U)?;
        Ok(self.phi.map(target, |p| p.substitute(&[(Var::V, u.clone())], target))?)
    }
}

fn specialize_catalytic(s: &SeriesT, mode: Mode) -> Result<SeriesT, SolverError> {
    let vals: &[(Var, i64)] = if mode.two_catalytic() {
        &[(Var::U, 1), (Var::V, 1)]
    } else {
        &[(Var::U, 1)]
    };
    let target = vals.iter().fold(s.universe(), |u, (v, _)| u.without(*v));
    Ok(s.map(target, |p| p.specialize(vals))?)
}

/// Per-coefficient substitutions, all staying inside one universe.
struct Subst {
    universe: Universe,
    one: MultiPoly,
    u: MultiPoly,
    v: MultiPoly,
}

impl Subst {
    fn new(universe: Universe) -> Result<Self, PolyError> {
        Ok(Subst {
            universe,
            one: MultiPoly::one(universe),
            u: MultiPoly::var(universe, Var::U)?,
            v: if universe.contains(Var::V) {
                MultiPoly::var(universe, Var::V)?
            } else {
                MultiPoly::zero(universe)
            },
        })
    }

    fn apply(&self, p: &MultiPoly, b: &[(Var, &MultiPoly)]) -> Result<MultiPoly, PolyError> {
        let owned: Vec<(Var, MultiPoly)> = b.iter().map(|(v, q)| (*v, (*q).clone())).collect();
        p.substitute(&owned, self.universe)
    }

    /// `p(u, 1)`
    fn v_to_one(&self, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.apply(p, &[(Var::V, &self.one)])
    }

    /// `p(1, 1)` (or `p(1)`)
    fn all_to_one(&self, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.universe.contains(Var::V) {
            self.apply(p, &[(Var::U, &self.one), (Var::V, &self.one)])
        } else {
            self.apply(p, &[(Var::U, &self.one)])
        }
    }

    /// `p(u, u)`
    fn v_to_u(&self, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.apply(p, &[(Var::V, &self.u)])
    }

    /// `p(v, v)`
    fn u_to_v(&self, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.apply(p, &[(Var::U, &self.v)])
    }
}

pub fn solve(config: SystemConfig) -> Result<SolverOutput, SolverError> {
    let n = config.order;
    if n < 1 {
        return Err(SolverError::InvalidOrder(n));
    }
    let mode = config.mode;
    let universe = mode.universe();
    let s = Subst::new(universe)?;
    let var = |v: Var| MultiPoly::var(universe, v);
    let one = MultiPoly::one(universe);

    // c: catalytic variable of the top factor; w: weight of the product term.
    let c = if mode.two_catalytic() { Var::V } else { Var::U };
    let w = match mode {
        Mode::Full | Mode::QAnalogue => var(Var::Ybar)?,
        Mode::Canopy => var(Var::RR)?,
        _ => one.clone(),
    };

    let mut phi = SeriesT::zero(universe, n);
    let mut theta = SeriesT::zero(universe, n);
    // Phi_i(c, c) and Theta_j / c, cached per order.
    let mut phi_cc: Vec<MultiPoly> = vec![MultiPoly::zero(universe); n];
    let mut theta_over_c: Vec<MultiPoly> = vec![MultiPoly::zero(universe); n];

    for k in 1..n {
        let prev = phi.coeff(k - 1);
        let mut inner = if k == 1 { var(Var::U)? } else { MultiPoly::zero(universe) };
        if k >= 2 {
            inner = inner.try_add(&theta_inner(mode, &s, prev)?)?;
        }
        let th = inner.shift(c, 1)?;

        let mut ph = th.clone();
        let tc = th.exact_div_var(c)?;
        theta_over_c[k] = tc;
        let mut conv = MultiPoly::zero(universe);
        for i in 1..k {
            conv = conv.try_add(&phi_cc[i].try_mul(&theta_over_c[k - i])?)?;
        }
        if !conv.is_zero() {
            ph = ph.try_add(&conv.try_mul(&w)?)?;
        }
        phi_cc[k] = if mode.two_catalytic() { s.u_to_v(&ph)? } else { ph.clone() };
        theta.set_coeff(k, th)?;
        phi.set_coeff(k, ph)?;
    }
    Ok(SolverOutput { mode, phi, theta })
}

/// The bracket of the `Theta` equation without the leading `u`, built from
/// `prev = [t^(k-1)]Phi`.
fn theta_inner(mode: Mode, s: &Subst, prev: &MultiPoly) -> Result<MultiPoly, PolyError> {
    let universe = s.universe;
    let var = |v: Var| MultiPoly::var(universe, v);
    let u = &s.u;
    match mode {
        Mode::Full | Mode::QAnalogue | Mode::BicubicRestricted => {
            let p_u1 = s.v_to_one(prev)?;
            let p_11 = s.all_to_one(prev)?;
            let p_uu = s.v_to_u(prev)?;
            let dd_a = p_u1.divided_difference(&p_11, Var::U)?;
            if mode == Mode::BicubicRestricted {
                // u (Phi(u,1) - Phi(1,1)) / (u - 1) + Phi(u,u)
                return u.try_mul(&dd_a)?.try_add(&p_uu);
            }
            let dd_b = p_uu.divided_difference(&p_u1, Var::U)?;
            let (x, y) = (var(Var::X)?, var(Var::Y)?);
            let xy = x.try_mul(&y)?;
            let x_minus_xy = x.try_sub(&xy)?;
            if mode == Mode::Full {
                let a = y.try_mul(u)?.try_mul(&dd_a)?;
                let b = xy.try_mul(u)?.try_mul(&dd_b)?;
                let c = x_minus_xy.try_mul(&p_uu)?;
                return a.try_add(&b)?.try_add(&c);
            }
            // q-analogue: the divided differences are evaluated at u -> q u,
            // and (x - x y) Phi(qu, qu) / q.
            let qu = var(Var::Q)?.try_mul(u)?;
            let at_qu = |p: &MultiPoly| p.substitute(&[(Var::U, qu.clone())], universe);
            let a = y.try_mul(u)?.try_mul(&at_qu(&dd_a)?)?;
            let b = xy.try_mul(u)?.try_mul(&at_qu(&dd_b)?)?;
            let p_qq = prev.substitute(&[(Var::U, qu.clone()), (Var::V, qu.clone())], universe)?;
            let c = x_minus_xy.try_mul(&p_qq.exact_div_var(Var::Q)?)?;
            a.try_add(&b)?.try_add(&c)
        }
        Mode::Canopy => {
            // u LL (Phi(u) - Phi(1)) / (u - 1) + (1 - LL) Phi(u)
            let ll = var(Var::LL)?;
            let dd = prev.divided_difference(&s.all_to_one(prev)?, Var::U)?;
            let a = u.try_mul(&ll)?.try_mul(&dd)?;
            let b = MultiPoly::one(universe).try_sub(&ll)?.try_mul(prev)?;
            a.try_add(&b)
        }
        Mode::SynchronousRestricted => {
            // u (Phi(u) - Phi(1)) / (u - 1) - Phi(u)
            let dd = prev.divided_difference(&s.all_to_one(prev)?, Var::U)?;
            u.try_mul(&dd)?.try_sub(prev)
        }
    }
}

fn require_ybar_mode(out: &SolverOutput) -> Result<(), SolverError> {
    match out.mode {
        Mode::Full | Mode::QAnalogue => Ok(()),
        found => Err(SolverError::WrongMode { expected: "full", found }),
    }
}

fn constant_series(universe: Universe, order: usize, at0: MultiPoly) -> SeriesT {
    let mut s = SeriesT::zero(universe, order);
    if order > 0 {
        s.set_coeff(0, at0).expect("same universe");
    }
    s
}

/// `Phi(u,v) == Theta(u,v) + ybar Theta(v,v) Phi(u,v) / v` modulo `t^N`.
pub fn check_alternative_phi(out: &SolverOutput) -> Result<bool, SolverError> {
    require_ybar_mode(out)?;
    let universe = out.phi.universe();
    let s = Subst::new(universe)?;
    let ybar = MultiPoly::var(universe, Var::Ybar)?;
    let theta_vv = out.theta.map(universe, |p| s.u_to_v(p))?;
    let prod = theta_vv.mul(&out.phi)?;
    let rest = prod.map(universe, |p| p.exact_div_var(Var::V)?.try_mul(&ybar))?;
    let rhs = out.theta.add(&rest)?;
    Ok(rhs == out.phi)
}

/// `(u + ybar Phi(u,u)) Phi(u,1) == Phi(u,u) (1 + ybar Phi(1,1))` modulo `t^N`.
pub fn check_bridge(out: &SolverOutput) -> Result<bool, SolverError> {
    require_ybar_mode(out)?;
    let universe = out.phi.universe();
    let s = Subst::new(universe)?;
    let n = out.order();
    let ybar = MultiPoly::var(universe, Var::Ybar)?;
    let phi_uu = out.phi.map(universe, |p| s.v_to_u(p))?;
    let phi_u1 = out.phi.map(universe, |p| s.v_to_one(p))?;
    let phi_11 = out.phi.map(universe, |p| s.all_to_one(p))?;
    let u = constant_series(universe, n, MultiPoly::var(universe, Var::U)?);
    let one = constant_series(universe, n, MultiPoly::one(universe));
    let lhs = u.add(&phi_uu.scale(&ybar)?)?.mul(&phi_u1)?;
    let rhs = phi_uu.mul(&one.add(&phi_11.scale(&ybar)?)?)?;
    Ok(lhs == rhs)
}

/// Polynomial equation `sum_k coeffs[k](t) * F^k = 0` for a series `F(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicEquation {
    pub coeffs: Vec<UniPoly>,
}

impl AlgebraicEquation {
    /// `F^3 t^2 + 6 F^2 t^2 + 2 F^2 t + 12 F t^2 - 10 F t + 8 t^2 + F - t`,
    /// satisfied by the synchronous-interval series.
    pub fn synchronous_cubic() -> Self {
        AlgebraicEquation {
            coeffs: vec![
                UniPoly::from_i64(&[0, -1, 8]),
                UniPoly::from_i64(&[1, -10, 12]),
                UniPoly::from_i64(&[0, 2, 6]),
                UniPoly::from_i64(&[0, 0, 1]),
            ],
        }
    }

    /// `16 F^2 t^2 + 24 F t^2 - 12 F t + 9 t^2 + F - t`, satisfied by the
    /// series of intervals of minimal `(x, y, ybar)`-degree.
    pub fn bicubic_quadratic() -> Self {
        AlgebraicEquation {
            coeffs: vec![
                UniPoly::from_i64(&[0, -1, 9]),
                UniPoly::from_i64(&[1, -12, 24]),
                UniPoly::from_i64(&[0, 0, 16]),
            ],
        }
    }
}

fn dense_of(series: &SeriesT) -> Result<Vec<BigInt>, SolverError> {
    series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            if p.is_zero() {
                return Ok(BigInt::zero());
            }
            if p.len() == 1 && p.degree_range(&p.universe().vars().collect::<Vec<_>>())? == Some((0, 0)) {
                return Ok(p.coefficient_sum());
            }
            Err(SolverError::NotConstant(k))
        })
        .collect()
}

/// Substitutes a series with constant coefficients into `eq`; the result is
/// the residual modulo `t^N` (zero when the series solves the equation).
pub fn residual(series: &SeriesT, eq: &AlgebraicEquation) -> Result<SeriesT, SolverError> {
    let f = dense_of(series)?;
    let n = f.len();
    let mul = |a: &[BigInt], b: &[BigInt]| {
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut total = vec![BigInt::zero(); n];
    let mut power: Vec<BigInt> = (0..n).map(|k| BigInt::from(u8::from(k == 0))).collect();
    for c in &eq.coeffs {
        let term = mul(c.coeffs(), &power);
        for (t, x) in total.iter_mut().zip(term) {
            *t += x;
        }
        power = mul(&power, &f);
    }
    let universe = Universe::EMPTY;
    Ok(SeriesT::from_coeffs(
        universe,
        total.into_iter().map(|c| MultiPoly::constant(universe, c)).collect(),
    )?)
}
