//! Truncated Puiseux-type q-series with exact rational coefficients.
//!
//! A [`QSeries`] stores `Σ_{k=0}^{N} c_k q^{offset+k} + O(q^{offset+N+1})`.
//! `N` is the relative order; `offset + N` is the reach, the last exponent
//! whose coefficient is known.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, is_integer, to_i64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    offset: Rational,
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Builds a series from an offset and coefficients `c_0..=c_N`.
    pub fn new(offset: Rational, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(QSeries { offset, coeffs })
    }

    pub fn from_ints(offset: Rational, coeffs: &[i64]) -> Result<Self> {
        Self::new(offset, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(offset: Rational, order: usize) -> Self {
        QSeries {
            offset,
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(Rational::zero(), order);
        s.coeffs[0] = c;
        s
    }

    /// `c q^e + O(q^{e+order+1})`.
    pub fn monomial(exponent: Rational, c: Rational, order: usize) -> Self {
        let mut s = Self::zero(exponent, order);
        s.coeffs[0] = c;
        s
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest exponent with a known coefficient.
    pub fn reach(&self) -> Rational {
        &self.offset + int(self.order() as i64)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `q^{offset+k}`; zero past the stored range.
    pub fn coeff_rel(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coefficient(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Coefficient of `q^e`.
    ///
    /// Exponents not congruent to the offset mod 1, or below it, give zero.
    /// Exponents past the reach are unknown and give an error.
    pub fn coefficient(&self, e: &Rational) -> Result<Rational> {
        let k = e - &self.offset;
        if !is_integer(&k) || k < Rational::zero() {
            return Ok(Rational::zero());
        }
        let k = to_i64(&k).ok_or_else(|| Error::OutOfRange(format!("exponent {e}")))? as usize;
        if k > self.order() {
            return Err(Error::OutOfRange(format!(
                "exponent {} beyond reach {}",
                format_rational(e),
                format_rational(&self.reach())
            )));
        }
        Ok(self.coeffs[k].clone())
    }

    /// Exponent of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<Rational> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| &self.offset + int(k as i64))
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops leading zero coefficients, moving the offset up.
    /// A series with no nonzero coefficient is returned unchanged.
    pub fn normalize(&self) -> Self {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) if k > 0 => QSeries {
                offset: &self.offset + int(k as i64),
                coeffs: self.coeffs[k..].to_vec(),
            },
            _ => self.clone(),
        }
    }

    /// Truncates to relative order `order` (never extends).
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        QSeries {
            offset: self.offset.clone(),
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Truncates so that the reach does not exceed `reach`.
    pub fn truncate_reach(&self, reach: &Rational) -> Result<Self> {
        let k = reach - &self.offset;
        if !is_integer(&k) {
            return Err(Error::IncompatibleOffset(format!(
                "reach {reach} vs offset {}",
                self.offset
            )));
        }
        if k < Rational::zero() {
            return Err(Error::OutOfRange(format!(
                "reach {reach} below offset {}",
                self.offset
            )));
        }
        Ok(self.truncate(to_i64(&k).unwrap() as usize))
    }

    /// Rewrites the series with a smaller offset, padding with zeros.
    pub fn lower_offset(&self, new_offset: &Rational) -> Result<Self> {
        let k = &self.offset - new_offset;
        if !is_integer(&k) || k < Rational::zero() {
            return Err(Error::IncompatibleOffset(format!(
                "cannot move offset {} to {}",
                self.offset, new_offset
            )));
        }
        let k = to_i64(&k).unwrap() as usize;
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Ok(QSeries {
            offset: new_offset.clone(),
            coeffs,
        })
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        QSeries {
            offset: &self.offset + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries {
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Sum, truncated at the smaller reach.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self> {
        let diff = &self.offset - &other.offset;
        if !is_integer(&diff) {
            return Err(Error::IncompatibleOffset(format!(
                "{} and {} differ by a non-integer",
                self.offset, other.offset
            )));
        }
        let offset = if self.offset < other.offset {
            self.offset.clone()
        } else {
            other.offset.clone()
        };
        let reach = std::cmp::min(self.reach(), other.reach());
        let n = to_i64(&(&reach - &offset)).unwrap() as usize;
        let a0 = to_i64(&(&self.offset - &offset)).unwrap() as usize;
        let b0 = to_i64(&(&other.offset - &offset)).unwrap() as usize;
        let coeffs = (0..=n)
            .map(|k| {
                let a = if k >= a0 {
                    self.coeff_rel(k - a0)
                } else {
                    Rational::zero()
                };
                let b = if k >= b0 {
                    other.coeff_rel(k - b0)
                } else {
                    Rational::zero()
                };
                if subtract {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Ok(QSeries { offset, coeffs })
    }

    /// Cauchy product; the relative order is the smaller of the two.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries {
            offset: &self.offset + &other.offset,
            coeffs,
        }
    }

    /// Multiplicative inverse; requires a nonzero leading coefficient.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for m in 1..=n {
            let mut s = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s += &self.coeffs[k] * &b[m - k];
                }
            }
            b.push(-s * &inv0);
        }
        Ok(QSeries {
            offset: -&self.offset,
            coeffs: b,
        })
    }

    /// `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// Integer power by repeated squaring; negative powers need a unit.
    pub fn pow_int(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.invert()?.pow_int(-k);
        }
        let mut result = QSeries::one(self.order());
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// `self^r` for rational `r`.
    ///
    /// Non-integer powers use the principal branch and need leading
    /// coefficient 1. The offset becomes `r * offset`.
    pub fn pow_rational(&self, r: &Rational) -> Result<Self> {
        if let Some(k) = to_i64(r) {
            return self.pow_int(k);
        }
        let a0 = &self.coeffs[0];
        if !a0.is_one() {
            return Err(Error::BranchAmbiguity(format_rational(a0)));
        }
        let n = self.order();
        let a = &self.coeffs;
        let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
        b.push(Rational::one());
        for m in 1..=n {
            let mut s = Rational::zero();
            for k in 1..=m {
                if a[k].is_zero() {
                    continue;
                }
                let factor = r * int(k as i64) - int((m - k) as i64);
                s += factor * &a[k] * &b[m - k];
            }
            b.push(s / int(m as i64));
        }
        Ok(QSeries {
            offset: r * &self.offset,
            coeffs: b,
        })
    }

    /// `q d/dq`.
    pub fn q_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * (&self.offset + int(k as i64)))
            .collect();
        QSeries {
            offset: self.offset.clone(),
            coeffs,
        }
    }

    /// `Σ outer[k] · inner^k`.
    ///
    /// `inner` must have integer valuation at least 1 (after stripping
    /// leading zeros). The result is valid up to the smaller of the inner
    /// reach and the first exponent the truncated outer polynomial misses.
    pub fn substitute(outer: &[Rational], inner: &QSeries) -> Result<QSeries> {
        let inner = inner.normalize();
        let v = to_i64(inner.offset()).ok_or(Error::DivergentComposition)?;
        if v < 1 || inner.is_zero() {
            return Err(Error::DivergentComposition);
        }
        let degree = outer.len().max(1) - 1;
        let omitted = (degree as i64 + 1) * v;
        let reach = std::cmp::min(to_i64(&inner.reach()).unwrap(), omitted - 1);
        let order = reach.max(0) as usize;
        let mut result = QSeries::zero(Rational::zero(), order);
        if let Some(c0) = outer.first() {
            result.coeffs[0] = c0.clone();
        }
        let inner = inner.lower_offset(&Rational::zero())?;
        let inner = if inner.order() > order {
            inner.truncate(order)
        } else {
            inner
        };
        let mut power = QSeries::one(order);
        for c in outer.iter().skip(1) {
            power = power.mul(&inner);
            if (power.offset() + int(power.valuation_index() as i64)) > int(reach) {
                break;
            }
            if !c.is_zero() {
                for (k, p) in power.coeffs.iter().enumerate() {
                    if k < result.coeffs.len() {
                        result.coeffs[k] += c * p;
                    }
                }
            }
        }
        result.truncate_reach(&int(reach))
    }

    fn valuation_index(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    /// True when `self - other` vanishes up to the shared reach.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |e: &Rational| {
            if e.is_one() {
                "q".to_string()
            } else if e.is_integer() && e > &Rational::zero() {
                format!("q^{e}")
            } else {
                format!("q^({e})")
            }
        };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &self.offset + int(k as i64);
            let negative = c < &Rational::zero();
            let a = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if e.is_zero() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", power(&e))?;
            } else {
                write!(f, "{a}*{}", power(&e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({})", power(&(self.reach() + int(1))))
    }
}

/// A dense matrix of series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    pub rows: Vec<Vec<QSeries>>,
}

impl SeriesMatrix {
    pub fn new(rows: Vec<Vec<QSeries>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged series matrix".into()));
        }
        Ok(SeriesMatrix { rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &QSeries {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<QSeries> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn from_columns(cols: &[Vec<QSeries>]) -> Result<Self> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch(
                "columns of different length".into(),
            ));
        }
        Ok(SeriesMatrix {
            rows: (0..n)
                .map(|i| cols.iter().map(|c| c[i].clone()).collect())
                .collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        SeriesMatrix {
            rows: (0..self.ncols()).map(|j| self.column(j)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols() != other.nrows() {
            return Err(Error::DimensionMismatch("series matrix product".into()));
        }
        let mut rows = Vec::with_capacity(self.nrows());
        for i in 0..self.nrows() {
            let mut row = Vec::with_capacity(other.ncols());
            for j in 0..other.ncols() {
                let mut acc: Option<QSeries> = None;
                for k in 0..self.ncols() {
                    let p = self.rows[i][k].mul(&other.rows[k][j]);
                    acc = Some(match acc {
                        None => p,
                        Some(a) => a.add(&p)?,
                    });
                }
                row.push(acc.ok_or_else(|| Error::DimensionMismatch("empty product".into()))?);
            }
            rows.push(row);
        }
        Ok(SeriesMatrix { rows })
    }

    /// Determinant by cofactor expansion.
    pub fn det(&self) -> Result<QSeries> {
        let d = self.nrows();
        if d != self.ncols() || d == 0 {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let cols: Vec<usize> = (0..d).collect();
        det_rec(&self.rows, 0, &cols)
    }

    /// True when every entry agrees with `other` to the shared reach.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        if self.nrows() != other.nrows() || self.ncols() != other.ncols() {
            return Err(Error::DimensionMismatch("comparing series matrices".into()));
        }
        for (ra, rb) in self.rows.iter().zip(&other.rows) {
            for (a, b) in ra.iter().zip(rb) {
                if !a.agrees_with(b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn det_rec(rows: &[Vec<QSeries>], r: usize, cols: &[usize]) -> Result<QSeries> {
    if cols.len() == 1 {
        return Ok(rows[r][cols[0]].clone());
    }
    let mut acc: Option<QSeries> = None;
    for (idx, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(rows, r + 1, &rest)?;
        let mut term = entry.mul(&minor);
        if idx % 2 == 1 {
            term = term.neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.unwrap())
}
