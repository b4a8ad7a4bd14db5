//! Closed-form families: rank 1 (powers of `Δ` times Eisenstein series) and
//! the three rank-2 classes with their hypergeometric closed forms and
//! monodromy data.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms;
use crate::fundamental::{solve_recursion, FundamentalMatrix};
use crate::linalg::QMatrix;
use crate::multiplier::MultiplierData;
use crate::rational::{frac, int, rat, to_f64, to_i64, Rational};
use crate::series::QSeries;

/// The rank-1 fundamental form of weight `12u + 2j + 12n` for the multiplier
/// of `Δ^u`: `Δ^{u+n}` times `1, E14/Δ, E4, E6, E8, E10` for `j = 0..5`.
pub fn family_1d(u: &Rational, j: usize, n: i64, order: usize) -> Result<(Rational, QSeries)> {
    let base = match j {
        0 => QSeries::one(order),
        1 => forms::e14(order).div(&forms::delta(order))?,
        2 => forms::e4(order),
        3 => forms::e6(order),
        4 => forms::e8(order),
        5 => forms::e10(order),
        _ => return Err(Error::InvalidInput(format!("j = {j} not in 0..=5"))),
    };
    let s = forms::delta(order).pow_rational(&(u + int(n)))?.mul(&base);
    Ok((s.offset().clone(), s))
}

/// Multiplicities of the rank-1 family at weight `12u + 2j + 12n`.
pub fn family_1d_multiplier(u: &Rational, j: usize, n: i64) -> Result<MultiplierData> {
    if j > 5 {
        return Err(Error::InvalidInput(format!("j = {j} not in 0..=5")));
    }
    let base = MultiplierData::new(1, u * int(12), [1, 0], [1, 0, 0])?;
    Ok(base.shift_multiplicities(j as i64 + 6 * n))
}

/// The three classes of irreducible rank-2 multipliers, labelled by
/// `det ρ(T)`: `ξ₆`, `−1`, `ξ̄₆`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyClass {
    DetXi6,
    DetMinus1,
    DetXi6Bar,
}

impl FamilyClass {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(FamilyClass::DetXi6),
            2 => Ok(FamilyClass::DetMinus1),
            3 => Ok(FamilyClass::DetXi6Bar),
            _ => Err(Error::InvalidInput(format!(
                "family class {k} not in 1..=3"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            FamilyClass::DetXi6 => 1,
            FamilyClass::DetMinus1 => 2,
            FamilyClass::DetXi6Bar => 3,
        }
    }

    /// `Tr Λ`.
    pub fn trace(self) -> Rational {
        match self {
            FamilyClass::DetXi6 => rat(-5, 6),
            FamilyClass::DetMinus1 => rat(-3, 2),
            FamilyClass::DetXi6Bar => rat(-7, 6),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family2DSpec {
    pub class: FamilyClass,
    pub t: Rational,
    pub x: Rational,
}

impl Family2DSpec {
    pub fn new(class: FamilyClass, t: Rational, x: Rational) -> Self {
        Family2DSpec { class, t, x }
    }

    /// Rejects `x = 0` and the excluded residues of `t` mod 1.
    pub fn validate(&self) -> Result<()> {
        if self.x.is_zero() {
            return Err(Error::ExcludedParameter("x must be nonzero".into()));
        }
        let r = frac(&self.t);
        let (excluded, names): ([Rational; 2], [&str; 2]) = match self.class {
            FamilyClass::DetXi6 => ([rat(1, 12), rat(7, 12)], ["12t-1 or 12t+11", "12t+5"]),
            FamilyClass::DetMinus1 => ([rat(1, 4), rat(3, 4)], ["4t+3", "4t+1 or 4t+5"]),
            FamilyClass::DetXi6Bar => ([rat(5, 12), rat(11, 12)], ["12t+7", "12t+1 or 12t+13"]),
        };
        for (e, name) in excluded.iter().zip(names) {
            if r == *e {
                return Err(Error::ExcludedParameter(format!(
                    "t = {} is excluded for class {} (pole of {name})",
                    self.t,
                    self.class.index()
                )));
            }
        }
        Ok(())
    }
}

/// `(multiplicities, Λ, χ)` from the closed forms of the class.
pub fn family_2d(spec: &Family2DSpec) -> Result<(MultiplierData, Vec<Rational>, QMatrix)> {
    spec.validate()?;
    let t = &spec.t;
    let x = &spec.x;
    let i = |n: i64| int(n);
    let lin = |a: i64, b: i64| t * i(a) + i(b);
    let (alpha, beta, lambda, chi) = match spec.class {
        FamilyClass::DetXi6 => {
            let c11 = i(24) * t * lin(60, -11) / lin(12, 5);
            let c12 = i(10368) * x * t * lin(2, 1) * lin(3, 1) * lin(6, 5)
                / (lin(12, 11) * lin(12, 5) * lin(12, 5));
            let c21 = i(10368) / (x * lin(12, -1));
            let c22 = i(-4) * lin(6, 5) * lin(60, 61) / lin(12, 5);
            (
                [1, 1],
                [1, 1, 0],
                vec![t.clone(), rat(-5, 6) - t],
                [[c11, c12], [c21, c22]],
            )
        }
        FamilyClass::DetMinus1 => {
            let c11 = i(24) * (t * t * i(20) + t * i(51) + i(32)) / lin(4, 3);
            let c12 = i(384) * x * lin(3, 2) * lin(3, 1) * lin(6, 5) * lin(6, 7)
                / (lin(4, 5) * lin(4, 3) * lin(4, 3));
            let c21 = i(384) / (x * lin(4, 1));
            let c22 = i(-12) * (t * t * i(40) + t * i(18) + i(1)) / lin(4, 3);
            (
                [1, 1],
                [0, 1, 1],
                vec![t.clone(), rat(-3, 2) - t],
                [[c11, c12], [c21, c22]],
            )
        }
        FamilyClass::DetXi6Bar => {
            let c11 = i(24) * t * lin(60, 71) / lin(12, 7);
            let c12 = i(10368) * x * t * lin(2, 1) * lin(3, 2) * lin(6, 7)
                / (lin(12, 13) * lin(12, 7) * lin(12, 7));
            let c21 = i(10368) / (x * lin(12, 1));
            let c22 = i(-4) * lin(6, 7) * lin(60, -1) / lin(12, 7);
            (
                [1, 1],
                [1, 0, 1],
                vec![t.clone(), rat(-7, 6) - t],
                [[c11, c12], [c21, c22]],
            )
        }
    };
    let m = MultiplierData::new(2, int(0), alpha, beta)?.with_exponent(lambda.clone())?;
    let chi = QMatrix::from_rows(chi.into_iter().map(Vec::from).collect())?;
    Ok((m, lambda, chi))
}

/// The fundamental matrix of a rank-2 family member to order `n`.
pub fn family_fundamental(spec: &Family2DSpec, order: usize) -> Result<FundamentalMatrix> {
    let (_, lambda, chi) = family_2d(spec)?;
    solve_recursion(&lambda, &chi, &int(0), order)
}

/// Coefficients `(a)_k (b)_k / ((c)_k k!)` of `F(a, b; c; x)` for `k ≤ n`.
fn hypergeometric_coefficients(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    n: usize,
) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut coef = int(1);
    for k in 0..=n {
        out.push(coef.clone());
        let kk = int(k as i64);
        coef = coef * (a + &kk) * (b + &kk) / ((c + &kk) * (kk + int(1)));
    }
    out
}

/// `(J − 1728)^{−a} F(a, a + ½; 2a + c; −1728/(J − 1728))`, normalised to
/// `q^a(1 + …)`.
pub fn hypergeometric_column(a: &Rational, c: &Rational, order: usize) -> Result<QSeries> {
    let bottom = a * int(2) + c;
    if to_i64(&bottom).is_some_and(|k| k <= 0) {
        return Err(Error::ParameterPole(format!(
            "2a + c = {bottom} is a nonpositive integer"
        )));
    }
    let jm = forms::j_invariant(order).sub(&QSeries::constant(int(1728), order))?;
    let arg = jm.invert()?.scale(&int(-1728));
    let coeffs = hypergeometric_coefficients(a, &(a + rat(1, 2)), &bottom, order);
    let f = QSeries::substitute(&coeffs, &arg)?;
    let s = jm.pow_rational(&-a.clone())?.mul(&f);
    let lead = s.leading_coefficient().clone();
    Ok(s.scale(&lead.recip()))
}

/// Hypergeometric parameters `(a, c)` and the row shift of entry `(i, j)`.
fn entry_parameters(spec: &Family2DSpec, i: usize, j: usize) -> (Rational, Rational, usize) {
    let t = &spec.t;
    let (c, table) = match spec.class {
        FamilyClass::DetXi6 => (
            rat(5, 6),
            [[t.clone(), t + int(1)], [rat(1, 6) - t, rat(-5, 6) - t]],
        ),
        FamilyClass::DetMinus1 => (
            rat(5, 6),
            [
                [t + rat(1, 3), t + rat(4, 3)],
                [rat(-1, 6) - t, rat(-7, 6) - t],
            ],
        ),
        FamilyClass::DetXi6Bar => (
            rat(7, 6),
            [[t.clone(), t + int(1)], [rat(-1, 6) - t, rat(-7, 6) - t]],
        ),
    };
    (table[i][j].clone(), c, usize::from(i != j))
}

/// Closed-form series for entry `(i, j)`, leading coefficient 1.
pub fn hypergeometric_entry(
    spec: &Family2DSpec,
    i: usize,
    j: usize,
    order: usize,
) -> Result<QSeries> {
    let (a, c, _) = entry_parameters(spec, i, j);
    let h = hypergeometric_column(&a, &c, order)?;
    Ok(match spec.class {
        FamilyClass::DetMinus1 => h.mul(&forms::j_invariant(order).pow_rational(&rat(1, 3))?),
        _ => h,
    })
}

/// Compares every entry of `fm` with its closed form through `q^{Λ_ii + n}`.
pub fn oracle_compare(fm: &FundamentalMatrix, spec: &Family2DSpec, order: usize) -> Result<bool> {
    if fm.order() < order {
        return Err(Error::Inconclusive(format!(
            "fundamental matrix known to order {}, need {order}",
            fm.order()
        )));
    }
    for i in 0..2 {
        for j in 0..2 {
            let (_, _, shift) = entry_parameters(spec, i, j);
            let h = hypergeometric_entry(spec, i, j, order + 1)?;
            let lead = &fm.lambda[i] + int(shift as i64);
            if *h.offset() != lead {
                return Err(Error::Structural(format!(
                    "entry ({i},{j}): closed form starts at q^{}, expected q^{lead}",
                    h.offset()
                )));
            }
            let scale = &fm.coeffs[shift][(i, j)];
            for n in shift..=order {
                if fm.coeffs[n][(i, j)] != h.coeff_rel(n - shift) * scale {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Gamma function on the reals (Lanczos, g = 7, with reflection).
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(Error::ParameterPole(format!("Gamma has a pole at {x}")));
    }
    const G: f64 = 7.0;
    const P: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma(1.0 - x)?));
    }
    let x = x - 1.0;
    let mut s = P[0];
    for (k, p) in P.iter().enumerate().skip(1) {
        s += p / (x + k as f64);
    }
    let t = x + G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * s)
}

/// The off-diagonal entry `y` of `ρ(S)` determined by `x` and `t`.
pub fn gamma_y(spec: &Family2DSpec) -> Result<Complex64> {
    spec.validate()?;
    let t = to_f64(&spec.t);
    let x = to_f64(&spec.x);
    let s3 = 3f64.sqrt();
    let p = 432f64.powf(2.0 * t);
    let g = |a: f64| {
        gamma(a).map_err(|_| {
            Error::ParameterPole(format!(
                "Gamma pole at {a}: reducible parameter t = {} for this class",
                spec.t
            ))
        })
    };
    let y = match spec.class {
        FamilyClass::DetXi6 => {
            s3 * x * 2f64.powf(2.0 / 3.0) / (1728.0 * p) * g(2.0 * t + 5.0 / 6.0)?.powi(2)
                / (g(2.0 * t)? * g(2.0 * t + 2.0 / 3.0)?)
        }
        FamilyClass::DetMinus1 => {
            s3 * x / (6912.0 * p) * g(2.0 * t + 1.5)?.powi(2)
                / (g(2.0 * t + 4.0 / 3.0)? * g(2.0 * t + 2.0 / 3.0)?)
        }
        FamilyClass::DetXi6Bar => {
            s3 * x * 2f64.powf(1.0 / 3.0) / (10368.0 * p) * g(2.0 * t + 7.0 / 6.0)?.powi(2)
                / (g(2.0 * t)? * g(2.0 * t + 4.0 / 3.0)?)
        }
    };
    Ok(Complex64::new(y, 0.0))
}

pub type CMatrix2 = [[Complex64; 2]; 2];

fn cmul(a: &CMatrix2, b: &CMatrix2) -> CMatrix2 {
    let mut c = [[Complex64::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// `ρ(S)` and `ρ(T)` of the class for a given `y`.
pub fn s_and_t(spec: &Family2DSpec, y: Complex64) -> (CMatrix2, CMatrix2) {
    let z = Complex64::from_polar(1.0, 2.0 * PI * to_f64(&spec.t));
    let zeta = Complex64::from_polar(1.0, PI / 3.0);
    let one = Complex64::new(1.0, 0.0);
    let z2 = z * z;
    let zero = Complex64::zero();
    match spec.class {
        FamilyClass::DetXi6 => {
            let a = zeta.conj() * z / (z2 - zeta);
            let c = (z2 - one) * (z2 - zeta * zeta) / (y * (z2 - zeta) * (z2 - zeta));
            ([[a, y], [c, -a]], [[z, zero], [zero, zeta / z]])
        }
        FamilyClass::DetMinus1 => {
            let a = -z / (z2 + one);
            let c = (z2 * z2 + z2 + one) / (y * (z2 + one) * (z2 + one));
            ([[a, y], [c, -a]], [[z, zero], [zero, -one / z]])
        }
        FamilyClass::DetXi6Bar => {
            let zb = zeta.conj();
            let a = zeta * z / (z2 - zb);
            let c = (z2 - one) * (z + zb) * (z - zb) / (y * (z2 - zb) * (z2 - zb));
            ([[a, y], [c, -a]], [[z, zero], [zero, zb / z]])
        }
    }
}

/// `Ξ(τ)` numerically, with `q^λ = e^{2πiλτ}`.
pub fn evaluate(fm: &FundamentalMatrix, tau: Complex64) -> Vec<Vec<Complex64>> {
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let q = (two_pi_i * tau).exp();
    let d = fm.d();
    (0..d)
        .map(|i| {
            let pre = (two_pi_i * tau * to_f64(&fm.lambda[i])).exp();
            (0..d)
                .map(|j| {
                    let mut acc = Complex64::zero();
                    let mut qn = Complex64::new(1.0, 0.0);
                    for m in &fm.coeffs {
                        acc += qn * to_f64(&m[(i, j)]);
                        qn *= q;
                    }
                    pre * acc
                })
                .collect()
        })
        .collect()
}

fn residual(m: &CMatrix2, x: &[Vec<Complex64>]) -> f64 {
    let xm: CMatrix2 = [[x[0][0], x[0][1]], [x[1][0], x[1][1]]];
    let p = cmul(m, &xm);
    let mut r: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            r = r.max((p[i][j] - xm[i][j]).norm());
        }
    }
    r
}

/// `(‖SΞ(i) − Ξ(i)‖, ‖UΞ(ξ₆) − Ξ(ξ₆)‖)` in the max-entry norm, for a given `y`.
pub fn fixed_point_residuals(
    fm: &FundamentalMatrix,
    spec: &Family2DSpec,
    y: Complex64,
) -> (f64, f64) {
    let (s, t) = s_and_t(spec, y);
    let tinv = [
        [t[0][0].inv(), Complex64::zero()],
        [Complex64::zero(), t[1][1].inv()],
    ];
    let u = cmul(&s, &tinv);
    let at_i = evaluate(fm, Complex64::new(0.0, 1.0));
    let at_xi6 = evaluate(fm, Complex64::from_polar(1.0, PI / 3.0));
    (residual(&s, &at_i), residual(&u, &at_xi6))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointReport {
    pub y: Complex64,
    pub residual_i: f64,
    pub residual_xi6: f64,
    pub tolerance: f64,
}

impl FixedPointReport {
    pub fn passed(&self) -> bool {
        self.residual_i < self.tolerance && self.residual_xi6 < self.tolerance
    }
}

/// Checks `SΞ(i) = Ξ(i)` and `UΞ(ξ₆) = Ξ(ξ₆)` with `y` from the Gamma relation.
pub fn fixed_point_check(
    fm: &FundamentalMatrix,
    spec: &Family2DSpec,
    tolerance: f64,
) -> Result<FixedPointReport> {
    if !fm.w.is_zero() || fm.d() != 2 {
        return Err(Error::InvalidInput(
            "fixed-point check needs a rank-2 weight-0 family".into(),
        ));
    }
    let y = gamma_y(spec)?;
    let (residual_i, residual_xi6) = fixed_point_residuals(fm, spec, y);
    Ok(FixedPointReport {
        y,
        residual_i,
        residual_xi6,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(class: u8, t: Rational) -> Family2DSpec {
        Family2DSpec::new(FamilyClass::from_index(class).unwrap(), t, int(1))
    }

    #[test]
    fn class1_data() {
        let (m, lambda, chi) = family_2d(&spec(1, rat(1, 6))).unwrap();
        assert_eq!(lambda, vec![rat(1, 6), int(-1)]);
        assert_eq!(chi[(0, 0)], rat(-4, 7));
        assert_eq!(chi[(0, 1)], rat(20736, 637));
        assert_eq!(chi[(1, 0)], int(10368));
        assert_eq!(chi[(1, 1)], rat(-1704, 7));
        assert_eq!(m.c_value(), rat(-5, 6));
    }

    #[test]
    fn excluded_parameters() {
        assert!(matches!(
            family_2d(&spec(1, rat(1, 12))),
            Err(Error::ExcludedParameter(_))
        ));
        assert!(matches!(
            family_2d(&spec(1, rat(-5, 12))),
            Err(Error::ExcludedParameter(_))
        ));
        assert!(matches!(
            family_2d(&spec(2, rat(-1, 4))),
            Err(Error::ExcludedParameter(_))
        ));
        assert!(matches!(
            family_2d(&spec(3, rat(-1, 12))),
            Err(Error::ExcludedParameter(_))
        ));
        let zero_x = Family2DSpec::new(FamilyClass::DetXi6, rat(1, 6), int(0));
        assert!(family_2d(&zero_x).is_err());
    }

    #[test]
    fn traces() {
        for (k, tr) in [(1, rat(-5, 6)), (2, rat(-3, 2)), (3, rat(-7, 6))] {
            let (m, lambda, _) = family_2d(&spec(k, rat(2, 5))).unwrap();
            assert_eq!(&lambda[0] + &lambda[1], tr);
            assert_eq!(m.c_value(), tr);
        }
    }

    #[test]
    fn hypergeometric_basics() {
        assert_eq!(
            hypergeometric_column(&int(0), &rat(5, 6), 5).unwrap(),
            QSeries::one(5)
        );
        let h = hypergeometric_column(&int(1), &rat(5, 6), 5).unwrap();
        assert_eq!(h.offset(), &int(1));
        assert!(matches!(
            hypergeometric_column(&int(-1), &int(1), 5),
            Err(Error::ParameterPole(_))
        ));
    }

    #[test]
    fn oracle_class1() {
        let s = spec(1, rat(1, 6));
        let fm = family_fundamental(&s, 10).unwrap();
        assert!(oracle_compare(&fm, &s, 10).unwrap());
        let (_, lambda, mut chi) = family_2d(&s).unwrap();
        chi[(0, 0)] += int(1);
        let bad = solve_recursion(&lambda, &chi, &int(0), 10).unwrap();
        assert!(!oracle_compare(&bad, &s, 10).unwrap());
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 1e-12);
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(gamma(0.0).is_err());
        assert!(gamma(-3.0).is_err());
    }

    #[test]
    fn gamma_y_poles() {
        assert!(gamma_y(&spec(1, int(0))).is_err());
        assert!(gamma_y(&spec(1, int(1))).unwrap().re.is_finite());
    }

    #[test]
    fn rank_one_family() {
        let (l, s) = family_1d(&int(0), 0, 0, 5).unwrap();
        assert_eq!((l, s), (int(0), QSeries::one(5)));
        assert_eq!(family_1d(&int(0), 3, 0, 5).unwrap().1, forms::e6(5));
        let (l, s) = family_1d(&rat(1, 2), 0, 0, 3).unwrap();
        assert_eq!(l, rat(1, 2));
        assert_eq!(s.coeffs()[..2], [int(1), int(-12)]);
        for j in 0..6 {
            let m = family_1d_multiplier(&rat(1, 3), j, 1).unwrap();
            let (l, _) = family_1d(&rat(1, 3), j, 1, 2).unwrap();
            assert_eq!(m.c_value(), l);
        }
    }
}
