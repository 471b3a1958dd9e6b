use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use super::multipoly::MultiPoly;
use super::var::Universe;
use super::PolyError;

/// Power series in `t` truncated at order `N` (exclusive), with
/// polynomial coefficients over a fixed universe that excludes `t`.
#[derive(Clone, PartialEq, Eq)]
pub struct SeriesT {
    universe: Universe,
    coeffs: Vec<MultiPoly>,
}

impl SeriesT {
    pub fn zero(universe: Universe, order: usize) -> Self {
        SeriesT {
            universe,
            coeffs: vec![MultiPoly::zero(universe); order],
        }
    }

    /// Builds a series of order `coeffs.len()`.
    pub fn from_coeffs(universe: Universe, coeffs: Vec<MultiPoly>) -> Result<Self, PolyError> {
        if let Some(bad) = coeffs.iter().find(|c| c.universe() != universe) {
            return Err(PolyError::UniverseMismatch {
                left: format!("{universe:?}"),
                right: format!("{:?}", bad.universe()),
            });
        }
        Ok(SeriesT { universe, coeffs })
    }

    /// Truncation order N: coefficients of t^0 .. t^(N-1) are known.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, p: MultiPoly) -> Result<(), PolyError> {
        if p.universe() != self.universe {
            return Err(PolyError::UniverseMismatch {
                left: format!("{:?}", self.universe),
                right: format!("{:?}", p.universe()),
            });
        }
        self.coeffs[k] = p;
        Ok(())
    }

    fn check(&self, other: &SeriesT) -> Result<usize, PolyError> {
        if self.universe != other.universe {
            return Err(PolyError::UniverseMismatch {
                left: format!("{:?}", self.universe),
                right: format!("{:?}", other.universe),
            });
        }
        Ok(self.order().min(other.order()))
    }

    pub fn add(&self, other: &SeriesT) -> Result<SeriesT, PolyError> {
        let n = self.check(other)?;
        let coeffs = (0..n)
            .map(|k| self.coeffs[k].try_add(&other.coeffs[k]))
            .collect::<Result<_, _>>()?;
        Ok(SeriesT { universe: self.universe, coeffs })
    }

    pub fn sub(&self, other: &SeriesT) -> Result<SeriesT, PolyError> {
        let n = self.check(other)?;
        let coeffs = (0..n)
            .map(|k| self.coeffs[k].try_sub(&other.coeffs[k]))
            .collect::<Result<_, _>>()?;
        Ok(SeriesT { universe: self.universe, coeffs })
    }

    /// Truncated Cauchy product; the result has the smaller of the two orders.
    pub fn mul(&self, other: &SeriesT) -> Result<SeriesT, PolyError> {
        let n = self.check(other)?;
        let mut out = SeriesT::zero(self.universe, n);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].try_mul(&other.coeffs[j])?;
                out.coeffs[i + j] = out.coeffs[i + j].try_add(&prod)?;
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by the same polynomial.
    pub fn scale(&self, p: &MultiPoly) -> Result<SeriesT, PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.try_mul(p))
            .collect::<Result<_, _>>()?;
        Ok(SeriesT { universe: self.universe, coeffs })
    }

    /// Applies a coefficient-wise map that may change the universe.
    pub fn map<F>(&self, target: Universe, f: F) -> Result<SeriesT, PolyError>
    where
        F: Fn(&MultiPoly) -> Result<MultiPoly, PolyError>,
    {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        SeriesT::from_coeffs(target, coeffs)
    }

    pub fn truncate(&self, order: usize) -> SeriesT {
        SeriesT {
            universe: self.universe,
            coeffs: self.coeffs.iter().take(order).cloned().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }
}

impl fmt::Display for SeriesT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            wrote = true;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c}) t")?,
                _ => write!(f, "({c}) t^{k}")?,
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order())
    }
}

impl fmt::Debug for SeriesT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeriesT{:?}({self})", self.universe)
    }
}

#[derive(Serialize)]
struct SeriesView<'a> {
    #[serde(rename = "N")]
    order: usize,
    coeffs: &'a [MultiPoly],
}

impl Serialize for SeriesT {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesView {
            order: self.order(),
            coeffs: &self.coeffs,
        }
        .serialize(s)
    }
}

#[derive(Deserialize)]
struct SeriesRecord {
    #[serde(rename = "N")]
    order: usize,
    coeffs: Vec<MultiPoly>,
}

impl<'de> Deserialize<'de> for SeriesT {
    /// Zero coefficients carry no variable names; they are re-homed into the
    /// universe of the nonzero ones.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = SeriesRecord::deserialize(d)?;
        if rec.coeffs.len() != rec.order {
            return Err(de::Error::custom(format!(
                "N = {} but {} coefficients",
                rec.order,
                rec.coeffs.len()
            )));
        }
        let universe = rec
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(MultiPoly::universe)
            .unwrap_or_default();
        let coeffs = rec
            .coeffs
            .into_iter()
            .map(|c| if c.is_zero() { Ok(MultiPoly::zero(universe)) } else { c.embed(universe) })
            .collect::<Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        SeriesT::from_coeffs(universe, coeffs).map_err(de::Error::custom)
    }
}
