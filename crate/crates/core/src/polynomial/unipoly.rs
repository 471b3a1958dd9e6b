//! Dense univariate integer polynomials and exact real-root counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Dense integer polynomial, lowest degree first. The zero polynomial has an
/// empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the (positive) content; the sign of the polynomial is kept.
    pub fn primitive_part(&self) -> UniPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        UniPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let Some(mut deg) = self.degree() else {
            return UniPoly::zero();
        };
        if deg < dd {
            return self.clone();
        }
        let steps = deg - dd + 1;
        let mut done = 0;
        while deg >= dd && done < steps {
            let top = r[deg].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[deg - dd + i] -= &top * dc;
            }
            done += 1;
            debug_assert!(r[deg].is_zero());
            r.pop();
            if deg == 0 {
                break;
            }
            deg -= 1;
        }
        // pad the remaining multiplications so the factor is exactly lc^steps
        for _ in done..steps {
            for c in r.iter_mut() {
                *c *= &lc;
            }
        }
        UniPoly::new(r)
    }

    /// Exact quotient by `d`; fails unless `d` divides `self` in Z[z].
    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly, PolyError> {
        let dd = d.degree().ok_or(PolyError::ZeroPolynomial)?;
        let Some(deg) = self.degree() else {
            return Ok(UniPoly::zero());
        };
        if deg < dd {
            return Err(PolyError::NotDivisible("degree too small".into()));
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); deg - dd + 1];
        for k in (0..=deg - dd).rev() {
            let (c, rem) = r[k + dd].div_rem(lc);
            if !rem.is_zero() {
                return Err(PolyError::NotDivisible(format!("leading coefficient {lc}")));
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NotDivisible("nonzero remainder".into()));
        }
        Ok(UniPoly::new(q))
    }

    /// Greatest common divisor up to sign, via the primitive remainder sequence.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(|c| c.is_negative()) {
            a = a.neg();
        }
        a
    }

    fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// `self / gcd(self, self')`: same roots, each simple.
    pub fn square_free_part(&self) -> Result<UniPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g)
    }

    /// Sturm sequence p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k), each term
    /// rescaled by a positive constant (which leaves sign counts unchanged).
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.primitive_part()];
        let d = self.derivative().primitive_part();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let steps = a.degree().unwrap() - b.degree().unwrap() + 1;
            let lc = b.leading().unwrap();
            // prem = lc^steps * rem; make the scale factor positive.
            let scale_negative = lc.is_negative() && steps % 2 == 1;
            let next = if scale_negative { r } else { r.neg() };
            seq.push(next.primitive_part());
        }
        seq
    }

    fn sign_at_neg_infinity(&self) -> i32 {
        match (self.leading(), self.degree()) {
            (Some(lc), Some(d)) => {
                let s = if lc.is_positive() { 1 } else { -1 };
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }

    fn sign_at_zero(&self) -> i32 {
        match self.coeffs.first() {
            Some(c) if c.is_positive() => 1,
            Some(c) if c.is_negative() => -1,
            _ => 0,
        }
    }

    /// Number of distinct real roots in the open interval (-inf, 0),
    /// assuming 0 is not a root.
    pub fn count_negative_roots(&self) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let seq = self.sturm_sequence();
        let at_minf = variations(seq.iter().map(UniPoly::sign_at_neg_infinity));
        let at_zero = variations(seq.iter().map(UniPoly::sign_at_zero));
        Ok(at_minf - at_zero)
    }

    /// Splits `z^k * rest` with `rest(0) != 0`.
    pub fn strip_zero_roots(&self) -> (usize, UniPoly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, UniPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * z + c)
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// True iff every complex root of `p` is real and strictly negative.
pub fn sturm_all_roots_real_negative(p: &UniPoly) -> Result<bool, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let positive = p.coeffs.iter().all(|c| c.is_positive());
    let negative = p.coeffs.iter().all(|c| c.is_negative());
    if !(positive || negative) {
        return Ok(false);
    }
    let sf = p.square_free_part()?;
    let deg = sf.degree().unwrap();
    Ok(sf.count_negative_roots()? == deg)
}

/// Outcome of the weak real-rootedness test: all roots real and `<= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    pub all_real_nonpositive: bool,
    /// Multiplicity of the root at zero.
    pub zero_multiplicity: usize,
}

pub fn roots_real_nonpositive(p: &UniPoly) -> Result<RootReport, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (k, rest) = p.strip_zero_roots();
    let ok = rest.degree() == Some(0) || sturm_all_roots_real_negative(&rest)?;
    Ok(RootReport {
        all_real_nonpositive: ok,
        zero_multiplicity: k,
    })
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    if i == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
