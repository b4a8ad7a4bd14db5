//! Principal parts, the canonical basis `X^(j;n)`, bijectivity of exponents
//! and Serre duality.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms;
use crate::fundamental::FundamentalMatrix;
use crate::linalg::QMatrix;
use crate::rational::{int, is_integer, to_i64, Rational};
use crate::series::QSeries;

/// Coefficients at exponents `λ_i + n`, `n ≤ 0`, keyed by `(i, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrincipalPart {
    pub entries: BTreeMap<(usize, i64), Rational>,
}

impl PrincipalPart {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Extracts the principal part of `y` relative to `λ`.
pub fn principal_part(y: &[QSeries], lambda: &[Rational]) -> Result<PrincipalPart> {
    if y.len() != lambda.len() {
        return Err(Error::DimensionMismatch(
            "vector and exponent lengths differ".into(),
        ));
    }
    let mut pp = PrincipalPart::default();
    for (i, (s, l)) in y.iter().zip(lambda).enumerate() {
        let start = s.offset() - l;
        if !is_integer(&start) {
            return Err(Error::IncompatibleOffset(format!(
                "component {i}: offset {} vs exponent {l}",
                s.offset()
            )));
        }
        if s.reach() < *l {
            return Err(Error::Inconclusive(format!(
                "component {i} is not known up to its exponent"
            )));
        }
        let start = to_i64(&start).unwrap();
        for n in start..=0 {
            let c = s.coefficient(&(l + int(n)))?;
            if !c.is_zero() {
                pp.entries.insert((i, n), c);
            }
        }
    }
    Ok(pp)
}

/// `X^(j;n)`: principal part `q^{−n} e_j` relative to `Λ`, together with the
/// polynomial vector `p` such that `X^(j;n) = Ξ · p(J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub j: usize,
    pub n: usize,
    pub series: Vec<QSeries>,
    pub poly: Vec<Vec<Rational>>,
}

impl BasisElement {
    /// Coefficient of `q^{Λ_i + m}` in component `i`.
    pub fn coefficient(&self, lambda: &[Rational], i: usize, m: i64) -> Result<Rational> {
        self.series[i]
            .coefficient(&(&lambda[i] + int(m)))
            .map_err(|e| match e {
                Error::OutOfRange(s) => Error::Inconclusive(s),
                other => other,
            })
    }
}

/// Memoising constructor for basis elements of one fundamental matrix.
pub struct BasisBuilder<'a> {
    fm: &'a FundamentalMatrix,
    j_series: QSeries,
    cache: RefCell<HashMap<(usize, usize), BasisElement>>,
}

fn poly_add_scaled(a: &mut Vec<Rational>, b: &[Rational], c: &Rational) {
    if a.len() < b.len() {
        a.resize(b.len(), Rational::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y * c;
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

impl<'a> BasisBuilder<'a> {
    pub fn new(fm: &'a FundamentalMatrix) -> Self {
        BasisBuilder {
            fm,
            j_series: forms::j_invariant(fm.order()),
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn fundamental(&self) -> &FundamentalMatrix {
        self.fm
    }

    /// `X^(j;n)`, built as `J · X^(j;n−1)` minus lower elements.
    pub fn element(&self, j: usize, n: usize) -> Result<BasisElement> {
        let d = self.fm.d();
        if j >= d {
            return Err(Error::InvalidInput(format!(
                "component {j} out of range for rank {d}"
            )));
        }
        if let Some(e) = self.cache.borrow().get(&(j, n)) {
            return Ok(e.clone());
        }
        if n >= self.fm.order() {
            return Err(Error::Inconclusive(format!(
                "X^({j};{n}) needs truncation order above {n}, have {}",
                self.fm.order()
            )));
        }
        let elem = if n == 0 {
            let mut poly = vec![Vec::new(); d];
            poly[j] = vec![int(1)];
            BasisElement {
                j,
                n,
                series: self.fm.column(j),
                poly,
            }
        } else {
            let prev = self.element(j, n - 1)?;
            let mut series: Vec<QSeries> =
                prev.series.iter().map(|s| self.j_series.mul(s)).collect();
            let mut poly: Vec<Vec<Rational>> = prev
                .poly
                .iter()
                .map(|p| {
                    if p.is_empty() {
                        Vec::new()
                    } else {
                        std::iter::once(Rational::zero())
                            .chain(p.iter().cloned())
                            .collect()
                    }
                })
                .collect();
            for m in (0..n).rev() {
                for l in 0..d {
                    let c = series[l].coefficient(&(&self.fm.lambda[l] - int(m as i64)))?;
                    if c.is_zero() {
                        continue;
                    }
                    let lower = self.element(l, m)?;
                    for (s, t) in series.iter_mut().zip(&lower.series) {
                        *s = s.sub(&t.scale(&c))?;
                    }
                    for (p, q) in poly.iter_mut().zip(&lower.poly) {
                        poly_add_scaled(p, q, &-c.clone());
                    }
                }
            }
            poly.iter_mut().for_each(trim);
            BasisElement { j, n, series, poly }
        };
        self.cache.borrow_mut().insert((j, n), elem.clone());
        Ok(elem)
    }

    /// Writes `y = Ξ · p(J)` by stripping principal parts.
    pub fn decompose(&self, y: &[QSeries]) -> Result<Vec<Vec<Rational>>> {
        let d = self.fm.d();
        let lambda = &self.fm.lambda;
        let pp = principal_part(y, lambda)?;
        let mut residual = y.to_vec();
        let mut poly = vec![Vec::new(); d];
        for (&(i, n), c) in pp.entries.iter() {
            let e = self.element(i, (-n) as usize)?;
            for (s, t) in residual.iter_mut().zip(&e.series) {
                *s = s.sub(&t.scale(c))?;
            }
            for (p, q) in poly.iter_mut().zip(&e.poly) {
                poly_add_scaled(p, q, c);
            }
        }
        let checkable = residual.iter().zip(lambda).any(|(s, l)| s.reach() > *l);
        if !checkable {
            return Err(Error::Inconclusive(
                "no coefficients beyond the principal part to compare".into(),
            ));
        }
        for (i, s) in residual.iter().enumerate() {
            if !s.is_zero() {
                return Err(Error::NotAMember(format!(
                    "component {i} has residual {} after removing the principal part",
                    s.normalize()
                )));
            }
        }
        poly.iter_mut().for_each(trim);
        Ok(poly)
    }

    /// The matrix `𝒳(ℓ)` with rows `(i;m)`, `0 < m ≤ ℓ_i`, and columns
    /// `(j;n)`, `0 ≤ n < −ℓ_j`.
    pub fn principal_matrix(&self, ell: &[i64]) -> Result<QMatrix> {
        let d = self.fm.d();
        let rows: Vec<(usize, i64)> = (0..d)
            .flat_map(|i| (1..=ell[i].max(0)).map(move |m| (i, m)))
            .collect();
        let cols: Vec<(usize, usize)> = (0..d)
            .flat_map(|j| (0..(-ell[j]).max(0) as usize).map(move |n| (j, n)))
            .collect();
        let mut mat = QMatrix::zeros(rows.len(), cols.len());
        for (c, &(j, n)) in cols.iter().enumerate() {
            let e = self.element(j, n)?;
            for (r, &(i, m)) in rows.iter().enumerate() {
                mat[(r, c)] = e.coefficient(&self.fm.lambda, i, m)?;
            }
        }
        Ok(mat)
    }
}

pub fn basis_element(fm: &FundamentalMatrix, j: usize, n: usize) -> Result<BasisElement> {
    BasisBuilder::new(fm).element(j, n)
}

fn exponent_offsets(fm: &FundamentalMatrix, lambda: &[Rational]) -> Result<Option<Vec<i64>>> {
    if lambda.len() != fm.d() {
        return Err(Error::DimensionMismatch("exponent length".into()));
    }
    Ok(lambda
        .iter()
        .zip(&fm.lambda)
        .map(|(l, big)| to_i64(&(l - big)))
        .collect())
}

/// `(dim ker 𝒫_λ, dim coker 𝒫_λ)` for an exponent `λ ∈ Λ + ℤ^d`.
pub fn principal_part_defects(
    fm: &FundamentalMatrix,
    lambda: &[Rational],
) -> Result<(usize, usize)> {
    let ell = exponent_offsets(fm, lambda)?
        .ok_or_else(|| Error::InvalidInput("exponent is not congruent to Λ".into()))?;
    let m = BasisBuilder::new(fm).principal_matrix(&ell)?;
    let r = m.rank();
    Ok((m.ncols() - r, m.nrows() - r))
}

/// True iff `𝒫_λ` is bijective.
pub fn bijectivity_test(fm: &FundamentalMatrix, lambda: &[Rational]) -> Result<bool> {
    let Some(ell) = exponent_offsets(fm, lambda)? else {
        return Ok(false);
    };
    if ell.iter().sum::<i64>() != 0 {
        return Ok(false);
    }
    let m = BasisBuilder::new(fm).principal_matrix(&ell)?;
    Ok(m.rank() == m.nrows())
}

/// `Ξ* = E4²E6 Δ^{−1} (Ξ^t)^{−1}` at weight `2 − w`, `Λ* = −1 − Λ`.
pub fn serre_dual(fm: &FundamentalMatrix) -> Result<FundamentalMatrix> {
    let n = fm.order();
    let d = fm.d();
    let a: Vec<QMatrix> = fm.coeffs.iter().map(QMatrix::transpose).collect();
    let mut v = vec![QMatrix::identity(d)];
    for k in 1..=n {
        let mut s = QMatrix::zeros(d, d);
        for l in 1..=k {
            s = s.add(&a[l].mul(&v[k - l]));
        }
        v.push(s.scale(&int(-1)));
    }
    let h = forms::e14(n).div(&forms::delta(n))?.shift(&int(1));
    let coeffs = (0..=n)
        .map(|k| {
            let mut s = QMatrix::zeros(d, d);
            for l in 0..=k {
                let c = h.coeff_rel(l);
                if !c.is_zero() {
                    s = s.add(&v[k - l].scale(&c));
                }
            }
            s
        })
        .collect();
    Ok(FundamentalMatrix {
        w: int(2) - &fm.w,
        lambda: fm.lambda.iter().map(|l| int(-1) - l).collect(),
        coeffs,
    })
}

/// Checks `X^(j;n−1)_(m) i = −X*^(i;m−1)_(n) j` for `1 ≤ m, n ≤ M`.
pub fn duality_symmetry_check(
    fm: &FundamentalMatrix,
    dual: &FundamentalMatrix,
    big_m: usize,
) -> Result<bool> {
    let d = fm.d();
    if dual.d() != d {
        return Err(Error::DimensionMismatch("dual rank".into()));
    }
    let b = BasisBuilder::new(fm);
    let bd = BasisBuilder::new(dual);
    for m in 1..=big_m {
        for n in 1..=big_m {
            for i in 0..d {
                for j in 0..d {
                    let lhs = b.element(j, n - 1)?.coefficient(&fm.lambda, i, m as i64)?;
                    let rhs = bd
                        .element(i, m - 1)?
                        .coefficient(&dual.lambda, j, n as i64)?;
                    if lhs != -rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The `q⁰` coefficient of `Σ X_i Y_i`.
pub fn pairing_constant_term(x: &[QSeries], y: &[QSeries]) -> Result<Rational> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch("pairing lengths differ".into()));
    }
    let mut total = Rational::zero();
    for (a, b) in x.iter().zip(y) {
        let p = a.mul(b);
        if !is_integer(p.offset()) {
            return Err(Error::IncompatibleOffset(format!(
                "product offset {} is not integral",
                p.offset()
            )));
        }
        total += p.coefficient(&Rational::zero())?;
    }
    Ok(total)
}
