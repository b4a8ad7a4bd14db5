//! Fundamental matrices `Ξ(τ) = q^Λ(1 + χq + Ξ₂q² + …)` and their structure.
//!
//! The coefficients are produced by an exact linear recursion driven by the
//! exponent `Λ`, the first coefficient `χ` and the weight `w`.

use num_traits::{One, Zero};

use crate::basis::BasisBuilder;
use crate::error::{Error, Result};
use crate::forms::{self, aux_series};
use crate::linalg::QMatrix;
use crate::multiplier::{sum, MultiplierData};
use crate::rational::{int, rat, to_i64, Rational};
use crate::series::{QSeries, SeriesMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalMatrix {
    pub w: Rational,
    pub lambda: Vec<Rational>,
    /// `coeffs[n]` is `Ξ₍ₙ₎`; `coeffs[0]` is the identity.
    pub coeffs: Vec<QMatrix>,
}

impl FundamentalMatrix {
    pub fn d(&self) -> usize {
        self.lambda.len()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn chi(&self) -> &QMatrix {
        &self.coeffs[1]
    }

    pub fn lambda_matrix(&self) -> QMatrix {
        QMatrix::diagonal(&self.lambda)
    }

    pub fn trace(&self) -> Rational {
        sum(&self.lambda)
    }

    /// Entry `(i, j)` as a series with offset `Λ_ii`.
    pub fn entry(&self, i: usize, j: usize) -> QSeries {
        let c = self.coeffs.iter().map(|m| m[(i, j)].clone()).collect();
        QSeries::new(self.lambda[i].clone(), c).unwrap()
    }

    /// Column `j`, the vvmf `X^(j;0)`.
    pub fn column(&self, j: usize) -> Vec<QSeries> {
        (0..self.d()).map(|i| self.entry(i, j)).collect()
    }

    pub fn series_matrix(&self) -> SeriesMatrix {
        SeriesMatrix {
            rows: (0..self.d())
                .map(|i| (0..self.d()).map(|j| self.entry(i, j)).collect())
                .collect(),
        }
    }

    /// The unit part `U(q)` with `Ξ = q^Λ U`.
    pub fn unit_part(&self) -> SeriesMatrix {
        let d = self.d();
        SeriesMatrix {
            rows: (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| {
                            let c = self.coeffs.iter().map(|m| m[(i, j)].clone()).collect();
                            QSeries::new(Rational::zero(), c).unwrap()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        FundamentalMatrix {
            w: self.w.clone(),
            lambda: self.lambda.clone(),
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// `Λ_w = Λ − w/12`.
    pub fn lambda_w(&self) -> QMatrix {
        QMatrix::diagonal(&self.lambda).add_scalar(&-(&self.w / int(12)))
    }

    /// `(𝒜₂, 𝒜₃)` of the weight-0 form `Δ^{−w/12} Ξ`.
    pub fn a_matrices(&self) -> AMatrices {
        let lw = self.lambda_w();
        let chi_w = self.chi().add_scalar(&(&self.w * int(2)));
        a_matrices(&lw.diag(), &chi_w)
    }

    /// `det Ξ`, computed from the unit part and shifted by `Tr Λ`.
    pub fn det(&self) -> Result<QSeries> {
        Ok(self.unit_part().det()?.shift(&self.trace()))
    }
}

/// `K = χ_w + [Λ_w, χ_w]` with `Λ_w = Λ − w/12`, `χ_w = χ + 2w`.
fn k_matrix(lambda: &QMatrix, chi: &QMatrix, w: &Rational) -> QMatrix {
    let chi_w = chi.add_scalar(&(w * int(2)));
    chi_w.add(&lambda.commutator(&chi_w))
}

/// Solves the coefficient recursion for `Ξ₍₂₎ … Ξ₍N₎`.
pub fn solve_recursion(
    lambda: &[Rational],
    chi: &QMatrix,
    w: &Rational,
    order: usize,
) -> Result<FundamentalMatrix> {
    let d = lambda.len();
    if d == 0 {
        return Err(Error::InvalidInput("empty exponent".into()));
    }
    if chi.nrows() != d || chi.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "chi is {}x{}, exponent has length {d}",
            chi.nrows(),
            chi.ncols()
        )));
    }
    if order == 0 {
        return Err(Error::InvalidInput("order must be at least 1".into()));
    }
    let lam = QMatrix::diagonal(lambda);
    let w12 = w / int(12);
    let lam_w = lam.add_scalar(&-w12.clone());
    let k = k_matrix(&lam, chi, w);
    let aux = aux_series(order);
    let b: Vec<QMatrix> = (0..=order)
        .map(|m| {
            if m == 0 {
                return QMatrix::zeros(d, d);
            }
            lam_w
                .scale(&aux.f.coeff_rel(m))
                .add(&QMatrix::identity(d).scale(&(&w12 * aux.t.coeff_rel(m))))
                .add(&k.scale(&aux.g.coeff_rel(m)))
        })
        .collect();
    let mut xi = vec![QMatrix::identity(d), chi.clone()];
    for n in 2..=order {
        let mut rhs = QMatrix::zeros(d, d);
        for (l, x) in xi.iter().enumerate() {
            rhs = rhs.add(&x.mul(&b[n - l]));
        }
        let mut next = QMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let div = &lambda[i] - &lambda[j] + int(n as i64);
                let r = &rhs[(i, j)];
                if div.is_zero() {
                    return Err(if r.is_zero() {
                        Error::UnderDetermined { order: n, i, j }
                    } else {
                        Error::Resonance { order: n, i, j }
                    });
                }
                next[(i, j)] = r / div;
            }
        }
        xi.push(next);
    }
    Ok(FundamentalMatrix {
        w: w.clone(),
        lambda: lambda.to_vec(),
        coeffs: xi,
    })
}

/// Residue matrices at the elliptic points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMatrices {
    pub a2: QMatrix,
    pub a3: QMatrix,
}

/// `𝒜₂ = 31Λ/72 + K₀/1728`, `𝒜₃ = 41Λ/72 − K₀/1728`, `K₀ = χ + [Λ, χ]`.
pub fn a_matrices(lambda: &[Rational], chi: &QMatrix) -> AMatrices {
    let lam = QMatrix::diagonal(lambda);
    let k0 = chi.add(&lam.commutator(chi)).scale(&rat(1, 1728));
    AMatrices {
        a2: lam.scale(&rat(31, 72)).add(&k0),
        a3: lam.scale(&rat(41, 72)).sub(&k0),
    }
}

/// `𝒜₂(𝒜₂ + ½) = 0` and `𝒜₃(𝒜₃ + ⅓)(𝒜₃ + ⅔) = 0`: both matrices are
/// diagonalisable with eigenvalues in `{0, −½}` and `{0, −⅓, −⅔}`.
pub fn verify_elliptic(am: &AMatrices) -> bool {
    am.a2.annihilated_by(&[int(0), rat(1, 2)])
        && am.a3.annihilated_by(&[int(0), rat(1, 3), rat(2, 3)])
}

/// The same identities with the eigenvalue signs flipped
/// (`{0, ½}`, `{0, ⅓, ⅔}`).
pub fn verify_elliptic_positive(am: &AMatrices) -> bool {
    am.a2.annihilated_by(&[int(0), rat(-1, 2)])
        && am.a3.annihilated_by(&[int(0), rat(-1, 3), rat(-2, 3)])
}

/// Eigenvalue multiplicities read off `𝒜₂`, `𝒜₃`: `α₁ = rank 𝒜₂`,
/// `β_j = dim Null(𝒜₃ + j/3)`.
pub fn elliptic_multiplicities(am: &AMatrices) -> ([usize; 2], [usize; 3]) {
    let d = am.a2.nrows();
    let nul = |m: &QMatrix, c: Rational| d - m.add_scalar(&c).rank();
    let a1 = am.a2.rank();
    (
        [d - a1, a1],
        [
            nul(&am.a3, int(0)),
            nul(&am.a3, rat(1, 3)),
            nul(&am.a3, rat(2, 3)),
        ],
    )
}

/// `det Ξ = E4^{β₁+2β₂} E6^{α₁} Δ^{(dw − 4β₁ − 8β₂ − 6α₁)/12}` to the shared order.
pub fn det_identity_check(fm: &FundamentalMatrix, m: &MultiplierData) -> Result<bool> {
    if m.d != fm.d() || m.w != fm.w {
        return Err(Error::DimensionMismatch(
            "multiplier data does not match the fundamental matrix".into(),
        ));
    }
    let n = fm.order();
    let det = fm.det()?;
    let e = (m.beta[1] + 2 * m.beta[2]) as i64;
    let r = (&m.w * int(m.d as i64)
        - int(4 * m.beta[1] as i64)
        - int(8 * m.beta[2] as i64)
        - int(6 * m.alpha[1] as i64))
        / int(12);
    let rhs = forms::e4(n)
        .pow_int(e)?
        .mul(&forms::e6(n).pow_int(m.alpha[1] as i64)?)
        .mul(&forms::delta(n).pow_rational(&r)?);
    if det.offset() != rhs.offset() {
        return Ok(false);
    }
    det.agrees_with(&rhs)
}

/// Checks `(E4E6/Δ) D_w Ξ = Ξ((J − 984)Λ_w + K)` coefficientwise.
pub fn ode_residual_vanishes(fm: &FundamentalMatrix) -> Result<bool> {
    let n = fm.order();
    let d = fm.d();
    let lam = fm.lambda_matrix();
    let lam_w = fm.lambda_w();
    let k = k_matrix(&lam, fm.chi(), &fm.w);
    let factor = forms::e10(n).div(&forms::delta(n))?;
    let jm = forms::j_invariant(n).sub(&QSeries::constant(int(984), n))?;
    for i in 0..d {
        for j in 0..d {
            let lhs = factor.mul(&forms::modular_derivative(&fm.entry(i, j), &fm.w));
            let mut rhs = fm.entry(i, j).mul(&jm).scale(&lam_w[(j, j)]);
            for kk in 0..d {
                if !k[(kk, j)].is_zero() {
                    rhs = rhs.add(&fm.entry(i, kk).scale(&k[(kk, j)]))?;
                }
            }
            if !lhs.agrees_with(&rhs)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Writes `Y = Ξ · p(J)` and returns `p`, one coefficient list per component
/// (index = power of `J`).
pub fn module_membership(fm: &FundamentalMatrix, y: &[QSeries]) -> Result<Vec<Vec<Rational>>> {
    BasisBuilder::new(fm).decompose(y)
}

/// Block-diagonal sum of two fundamental matrices of equal weight.
pub fn direct_sum(a: &FundamentalMatrix, b: &FundamentalMatrix) -> Result<FundamentalMatrix> {
    if a.w != b.w {
        return Err(Error::InvalidInput(format!(
            "weights {} and {} differ",
            a.w, b.w
        )));
    }
    let n = a.order().min(b.order());
    let (da, db) = (a.d(), b.d());
    let coeffs = (0..=n)
        .map(|k| {
            let mut m = QMatrix::zeros(da + db, da + db);
            for i in 0..da {
                for j in 0..da {
                    m[(i, j)] = a.coeffs[k][(i, j)].clone();
                }
            }
            for i in 0..db {
                for j in 0..db {
                    m[(da + i, da + j)] = b.coeffs[k][(i, j)].clone();
                }
            }
            m
        })
        .collect();
    let mut lambda = a.lambda.clone();
    lambda.extend(b.lambda.iter().cloned());
    Ok(FundamentalMatrix {
        w: a.w.clone(),
        lambda,
        coeffs,
    })
}

type Column = Vec<QSeries>;

fn map_column(col: &[QSeries], f: impl Fn(&QSeries) -> QSeries) -> Column {
    col.iter().map(f).collect()
}

fn mul_column(s: &QSeries, col: &[QSeries]) -> Column {
    map_column(col, |x| s.mul(x))
}

fn sub_columns(a: &[QSeries], b: &[QSeries]) -> Result<Column> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// Columns of `Ξ·diag(c)`, as column vectors.
fn columns_scaled(cols: &[Column], c: &[Rational]) -> Vec<Column> {
    cols.iter()
        .zip(c)
        .map(|(col, s)| map_column(col, |x| x.scale(s)))
        .collect()
}

/// Generators of the candidate spaces used to raise the weight by `2i`.
struct ShiftCandidates {
    cols: Vec<Column>,
}

fn shift_candidates(fm: &FundamentalMatrix, i: usize) -> Result<ShiftCandidates> {
    let n = fm.order();
    let d = fm.d();
    let w = &fm.w;
    let lw = fm.lambda_w().diag();
    let xi: Vec<Column> = (0..d).map(|j| fm.column(j)).collect();
    let dxi: Vec<Column> = xi
        .iter()
        .map(|c| map_column(c, |x| forms::modular_derivative(x, w)))
        .collect();
    let (e4, e6) = (forms::e4(n), forms::e6(n));
    let e8 = e4.mul(&e4);
    // D²Ξ − E4 Ξ Λ_w(Λ_w − 1/6)
    let second = || -> Result<Vec<Column>> {
        let c: Vec<Rational> = lw.iter().map(|l| l * (l - rat(1, 6))).collect();
        let base = columns_scaled(&xi, &c);
        xi.iter()
            .zip(&base)
            .map(|(col, b)| {
                let d2 = map_column(col, |x| forms::modular_derivative_power(x, w, 2));
                sub_columns(&d2, &mul_column(&e4, b))
            })
            .collect()
    };
    // E4 DΞ − E6 Ξ Λ_w
    let third = || -> Result<Vec<Column>> {
        let base = columns_scaled(&xi, &lw);
        dxi.iter()
            .zip(&base)
            .map(|(dc, b)| sub_columns(&mul_column(&e4, dc), &mul_column(&e6, b)))
            .collect()
    };
    let mut cols = Vec::new();
    match i {
        2 => {
            cols.extend(xi.iter().map(|c| mul_column(&e4, c)));
            cols.extend(second()?);
        }
        3 => {
            cols.extend(xi.iter().map(|c| mul_column(&e6, c)));
            cols.extend(third()?);
        }
        4 => {
            cols.extend(xi.iter().map(|c| mul_column(&e8, c)));
            let base = columns_scaled(&xi, &lw);
            for (dc, b) in dxi.iter().zip(&base) {
                cols.push(sub_columns(&mul_column(&e6, dc), &mul_column(&e8, b))?);
            }
        }
        5 => {
            let e10 = e4.mul(&e6);
            cols.extend(xi.iter().map(|c| mul_column(&e10, c)));
            cols.extend(third()?.iter().map(|c| mul_column(&e4, c)));
            cols.extend(second()?.iter().map(|c| mul_column(&e6, c)));
        }
        _ => unreachable!(),
    }
    Ok(ShiftCandidates { cols })
}

/// Candidate columns for the direct `i = 1` route:
/// `DΞ`, `E4²(E4DΞ − E6ΞΛ_w)/Δ` and `(E6²DΞ − E4²E6ΞΛ_w)/Δ`.
fn direct_one_candidates(fm: &FundamentalMatrix) -> Result<ShiftCandidates> {
    let n = fm.order();
    let d = fm.d();
    let w = &fm.w;
    let lw = fm.lambda_w().diag();
    let xi: Vec<Column> = (0..d).map(|j| fm.column(j)).collect();
    let dxi: Vec<Column> = xi
        .iter()
        .map(|c| map_column(c, |x| forms::modular_derivative(x, w)))
        .collect();
    let (e4, e6) = (forms::e4(n), forms::e6(n));
    let e8 = e4.mul(&e4);
    let dinv = forms::delta(n).invert()?;
    let base = columns_scaled(&xi, &lw);
    let mut cols = dxi.clone();
    for (dc, b) in dxi.iter().zip(&base) {
        let inner = sub_columns(&mul_column(&e4, dc), &mul_column(&e6, b))?;
        cols.push(mul_column(&e8.mul(&dinv), &inner));
    }
    for (dc, b) in dxi.iter().zip(&base) {
        let inner = sub_columns(&mul_column(&e6.mul(&e6), dc), &mul_column(&e8.mul(&e6), b))?;
        cols.push(mul_column(&dinv, &inner));
    }
    Ok(ShiftCandidates { cols })
}

/// All 0/1 vectors of length `d` with `k` ones, in lexicographic order of
/// the positions of the ones.
fn binary_vectors(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            let mut v = vec![0; d];
            for &i in cur.iter() {
                v[i] = 1;
            }
            out.push(v);
            return;
        }
        for i in start..d {
            if d - i < k {
                break;
            }
            cur.push(i);
            rec(i + 1, d, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Finds `Λ' = Λ + e` (`e ∈ {0,1}^d`, `Σe = target − Tr Λ`) and rational
/// combinations of the candidate columns with leading structure
/// `q^{Λ'}(1 + …)`, then rebuilds `Ξ'` through the recursion.
fn select_fundamental(
    fm: &FundamentalMatrix,
    cand: &ShiftCandidates,
    new_w: Rational,
    target_trace: &Rational,
) -> Result<FundamentalMatrix> {
    let d = fm.d();
    let shift = target_trace - fm.trace();
    let k = to_i64(&shift)
        .filter(|&k| (0..=d as i64).contains(&k))
        .ok_or_else(|| {
            Error::ShiftDegeneracy(format!(
                "trace must move by {shift}, not a count of 0/1 steps"
            ))
        })?;
    let r = cand.cols.len();
    for e in binary_vectors(d, k as usize) {
        let new_lambda: Vec<Rational> = (0..d).map(|i| &fm.lambda[i] + int(e[i] as i64)).collect();
        let rows: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| (0..=e[i]).map(move |s| (i, s)))
            .collect();
        let mut m = QMatrix::zeros(rows.len(), r);
        let mut rhs = QMatrix::zeros(rows.len(), d);
        for (row, &(i, s)) in rows.iter().enumerate() {
            let expo = &fm.lambda[i] + int(s as i64);
            for (c, col) in cand.cols.iter().enumerate() {
                m[(row, c)] = col[i].coefficient(&expo)?;
            }
            if s == e[i] {
                rhs[(row, i)] = Rational::one();
            }
        }
        let Ok(a) = m.solve(&rhs) else { continue };
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            let mut col: Option<Column> = None;
            for c in 0..r {
                let coef = &a[(c, j)];
                if coef.is_zero() {
                    continue;
                }
                let term = map_column(&cand.cols[c], |x| x.scale(coef));
                col = Some(match col {
                    None => term,
                    Some(prev) => prev
                        .iter()
                        .zip(&term)
                        .map(|(x, y)| x.add(y))
                        .collect::<Result<_>>()?,
                });
            }
            columns.push(col.ok_or_else(|| Error::ShiftDegeneracy("zero column".into()))?);
        }
        let built = from_columns(&columns, &new_lambda, new_w.clone())?;
        if built.order() < 1 {
            return Err(Error::Inconclusive(
                "order too small to read off the new chi".into(),
            ));
        }
        let solved = solve_recursion(&new_lambda, built.chi(), &new_w, fm.order())?;
        if solved.truncate(built.order()) != built {
            return Err(Error::Structural(
                "weight-shift columns disagree with the recursion".into(),
            ));
        }
        return Ok(solved);
    }
    Err(Error::ShiftDegeneracy(format!(
        "no exponent Λ + e with {k} unit steps is reachable from the candidate columns"
    )))
}

/// Reads a fundamental matrix off `d` columns with row exponents `Λ`.
pub fn from_columns(
    columns: &[Vec<QSeries>],
    lambda: &[Rational],
    w: Rational,
) -> Result<FundamentalMatrix> {
    let d = lambda.len();
    let mut order = usize::MAX;
    for col in columns {
        for (i, s) in col.iter().enumerate() {
            let rel = s.reach() - &lambda[i];
            let rel =
                to_i64(&rel).ok_or_else(|| Error::IncompatibleOffset("column offsets".into()))?;
            if rel < 0 {
                return Err(Error::Inconclusive(
                    "column known only below its exponent".into(),
                ));
            }
            order = order.min(rel as usize);
        }
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut m = QMatrix::zeros(d, d);
        for (j, col) in columns.iter().enumerate() {
            for i in 0..d {
                m[(i, j)] = col[i].coefficient(&(&lambda[i] + int(n as i64)))?;
            }
        }
        coeffs.push(m);
    }
    if coeffs[0] != QMatrix::identity(d) {
        return Err(Error::Structural(
            "leading coefficient is not the identity".into(),
        ));
    }
    Ok(FundamentalMatrix {
        w,
        lambda: lambda.to_vec(),
        coeffs,
    })
}

/// A fundamental matrix at weight `w + 2i`, `1 ≤ i ≤ 6`.
///
/// `i = 6` multiplies by `Δ`; `i = 1` goes up by 4, then by 3, then divides
/// by `Δ`; the other cases combine the candidate column sets exactly.
pub fn weight_shift(
    fm: &FundamentalMatrix,
    i: usize,
    m: &MultiplierData,
) -> Result<FundamentalMatrix> {
    if m.d != fm.d() || m.w != fm.w {
        return Err(Error::DimensionMismatch(
            "multiplier data does not match the fundamental matrix".into(),
        ));
    }
    if !verify_elliptic(&fm.a_matrices()) {
        return Err(Error::NotElliptic(
            "A-matrices fail the elliptic identities".into(),
        ));
    }
    match i {
        6 => Ok(times_delta_power(fm, 1)),
        1 => {
            let up4 = weight_shift(fm, 4, m)?;
            let up7 = weight_shift(&up4, 3, &m.shift_multiplicities(4))?;
            Ok(times_delta_power(&up7, -1))
        }
        2..=5 => {
            let cand = shift_candidates(fm, i)?;
            let target = m.c_shift(i as i64, 0)?;
            select_fundamental(fm, &cand, &fm.w + int(2 * i as i64), &target)
        }
        _ => Err(Error::InvalidInput(format!("shift index {i} not in 1..=6"))),
    }
}

/// The direct `i = 1` construction from `DΞ`, `M₂`, `M₃`; fails for some
/// multipliers (for example the trivial one).
pub fn weight_shift_direct_one(
    fm: &FundamentalMatrix,
    m: &MultiplierData,
) -> Result<FundamentalMatrix> {
    if m.d != fm.d() || m.w != fm.w {
        return Err(Error::DimensionMismatch(
            "multiplier data does not match the fundamental matrix".into(),
        ));
    }
    let cand = direct_one_candidates(fm)?;
    let target = m.c_shift(1, 0)?;
    select_fundamental(fm, &cand, &fm.w + int(2), &target)
}

/// `Δ^k Ξ`, a fundamental matrix at weight `w + 12k` with `Λ + k`.
pub fn times_delta_power(fm: &FundamentalMatrix, k: i64) -> FundamentalMatrix {
    let n = fm.order();
    let dk = forms::delta(n).pow_int(k).unwrap();
    let d = fm.d();
    let coeffs = (0..=n)
        .map(|idx| {
            let mut m = QMatrix::zeros(d, d);
            for l in 0..=idx {
                let c = dk.coeff_rel(l);
                if !c.is_zero() {
                    m = m.add(&fm.coeffs[idx - l].scale(&c));
                }
            }
            m
        })
        .collect();
    FundamentalMatrix {
        w: &fm.w + int(12 * k),
        lambda: fm.lambda.iter().map(|l| l + int(k)).collect(),
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn q(rows: &[&[Rational]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn class1_sixth() -> FundamentalMatrix {
        let chi = q(&[&[rat(-4, 7), rat(20736, 637)], &[int(10368), rat(-1704, 7)]]);
        solve_recursion(&[rat(1, 6), int(-1)], &chi, &int(0), 12).unwrap()
    }

    #[test]
    fn trivial_recursion() {
        let fm = solve_recursion(&[int(0)], &q(&[&[int(0)]]), &int(0), 6).unwrap();
        assert!(fm.coeffs[1..].iter().all(QMatrix::is_zero));
    }

    #[test]
    fn delta_recursion() {
        let fm = solve_recursion(&[int(1)], &q(&[&[int(-24)]]), &int(12), 5).unwrap();
        let c: Vec<Rational> = fm.coeffs.iter().map(|m| m[(0, 0)].clone()).collect();
        assert_eq!(c, [1, -24, 252, -1472, 4830, -6048].map(int).to_vec());
    }

    #[test]
    fn class1_second_coefficient() {
        let fm = class1_sixth();
        assert_eq!(
            fm.coeffs[2],
            q(&[&[rat(2, 13), rat(4893696, 1729)], &[int(0), int(196884)]])
        );
    }

    #[test]
    fn resonance_and_underdetermined() {
        let chi = q(&[&[int(0), int(1)], &[int(1), int(0)]]);
        let err = solve_recursion(&[int(0), int(2)], &chi, &int(0), 4).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Resonance {
                    order: 2,
                    i: 0,
                    j: 1
                }
            ),
            "{err:?}"
        );
        let zero = QMatrix::zeros(2, 2);
        let err = solve_recursion(&[int(0), int(2)], &zero, &int(0), 4).unwrap_err();
        assert!(
            matches!(err, Error::UnderDetermined { order: 2, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn a_matrices_class1() {
        let fm = class1_sixth();
        let am = fm.a_matrices();
        assert_eq!(am.a2.add(&am.a3), fm.lambda_matrix());
        assert_eq!(
            am.a2,
            q(&[&[rat(1, 14), rat(2, 49)], &[int(-1), rat(-4, 7)]])
        );
        assert!(verify_elliptic(&am));
        assert!(!verify_elliptic_positive(&am));
        assert_eq!(elliptic_multiplicities(&am), ([1, 1], [1, 1, 0]));
    }

    #[test]
    fn elliptic_rejects_nilpotent() {
        let am = a_matrices(
            &[int(0), int(0)],
            &q(&[&[int(0), int(1)], &[int(0), int(0)]]),
        );
        assert!(!verify_elliptic(&am));
        assert!(verify_elliptic(&a_matrices(&[int(0)], &q(&[&[int(0)]]))));
    }

    #[test]
    fn identities_class1() {
        let fm = class1_sixth();
        let m = MultiplierData::new(2, int(0), [1, 1], [1, 1, 0]).unwrap();
        assert!(det_identity_check(&fm, &m).unwrap());
        assert!(ode_residual_vanishes(&fm).unwrap());
        let mut bad = fm.clone();
        bad.coeffs[3][(0, 1)] += int(1);
        assert!(!ode_residual_vanishes(&bad).unwrap());
    }

    #[test]
    fn shift_trivial_by_six_and_three() {
        let fm = solve_recursion(&[int(0)], &q(&[&[int(0)]]), &int(0), 8).unwrap();
        let m = MultiplierData::trivial();
        let up6 = weight_shift(&fm, 6, &m).unwrap();
        assert_eq!(up6.lambda, vec![int(1)]);
        assert_eq!(up6.entry(0, 0), forms::delta(8));
        let up3 = weight_shift(&fm, 3, &m).unwrap();
        assert_eq!(up3.entry(0, 0), forms::e6(8));
        let up1 = weight_shift(&fm, 1, &m).unwrap();
        assert_eq!(up1.lambda, vec![int(-1)]);
        assert_eq!(
            up1.entry(0, 0),
            forms::e14(8).div(&forms::delta(8)).unwrap()
        );
        assert!(matches!(
            weight_shift_direct_one(&fm, &m),
            Err(Error::ShiftDegeneracy(_))
        ));
    }

    #[test]
    fn shift_class1_by_two() {
        let fm = class1_sixth();
        let m = MultiplierData::new(2, int(0), [1, 1], [1, 1, 0]).unwrap();
        let up = weight_shift(&fm, 2, &m).unwrap();
        assert_eq!(up.w, int(4));
        assert!(det_identity_check(&up, &m.shift_multiplicities(2)).unwrap());
        assert!(ode_residual_vanishes(&up).unwrap());
    }

    #[test]
    fn direct_sum_blocks() {
        let t = solve_recursion(&[int(0)], &q(&[&[int(0)]]), &int(0), 6).unwrap();
        let c = class1_sixth().truncate(6);
        let s = direct_sum(&t, &c).unwrap();
        let again = solve_recursion(&s.lambda, s.chi(), &int(0), 6).unwrap();
        assert_eq!(s, again);
        assert_eq!(s.det().unwrap(), c.det().unwrap());
    }
}
