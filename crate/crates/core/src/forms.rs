//! Classical scalar modular forms and the modular derivative.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::series::{QSeries, SeriesMatrix};

/// Sum of `d^k` over the positive divisors of `n`.
pub fn sigma(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

fn eisenstein(k: u32, factor: i64, order: usize) -> QSeries {
    let mut c = vec![Rational::one()];
    for n in 1..=order as u64 {
        c.push(Rational::from_integer(sigma(n, k) * factor));
    }
    QSeries::new(Rational::zero(), c).unwrap()
}

pub fn e2(order: usize) -> QSeries {
    eisenstein(1, -24, order)
}

pub fn e4(order: usize) -> QSeries {
    eisenstein(3, 240, order)
}

pub fn e6(order: usize) -> QSeries {
    eisenstein(5, -504, order)
}

pub fn e8(order: usize) -> QSeries {
    let a = e4(order);
    a.mul(&a)
}

pub fn e10(order: usize) -> QSeries {
    e4(order).mul(&e6(order))
}

pub fn e14(order: usize) -> QSeries {
    e8(order).mul(&e6(order))
}

/// `Π_{n≥1} (1 − q^n)` from the pentagonal number theorem.
pub fn euler_product(order: usize) -> QSeries {
    let mut c = vec![Rational::zero(); order + 1];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if (e as usize) <= order {
                c[e as usize] += if kk % 2 == 0 { int(1) } else { int(-1) };
                any = true;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    QSeries::new(Rational::zero(), c).unwrap()
}

/// `Δ = q Π (1 − q^n)^24`, offset 1.
pub fn delta(order: usize) -> QSeries {
    euler_product(order).pow_int(24).unwrap().shift(&int(1))
}

/// `J = E4^3/Δ = q^{-1} + 744 + 196884 q + …`, offset −1.
pub fn j_invariant(order: usize) -> QSeries {
    let cube = e4(order).pow_int(3).unwrap();
    cube.div(&delta(order)).unwrap()
}

/// The auxiliary series `f = (J − 984)Δ/E10`, `g = Δ/E10` and `t = E2`,
/// each with offset 0 and `order + 1` coefficients.
pub struct AuxSeries {
    pub f: QSeries,
    pub g: QSeries,
    pub t: QSeries,
}

pub fn aux_series(order: usize) -> AuxSeries {
    let d = delta(order);
    let jm = j_invariant(order)
        .sub(&QSeries::constant(int(984), order))
        .unwrap();
    let ten = e10(order).invert().unwrap();
    let f = jm.mul(&d).mul(&ten).truncate(order);
    let g = d
        .mul(&ten)
        .lower_offset(&Rational::zero())
        .unwrap()
        .truncate(order);
    AuxSeries { f, g, t: e2(order) }
}

/// A standard series by name: `E2 E4 E6 E8 E10 E14 Delta J`.
pub fn standard_series(name: &str, order: usize) -> Result<QSeries> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "e2" => e2(order),
        "e4" => e4(order),
        "e6" => e6(order),
        "e8" => e8(order),
        "e10" => e10(order),
        "e14" => e14(order),
        "delta" | "d" => delta(order),
        "j" => j_invariant(order),
        _ => return Err(Error::InvalidInput(format!("unknown series {name:?}"))),
    })
}

pub const STANDARD_NAMES: [&str; 8] = ["E2", "E4", "E6", "E8", "E10", "E14", "Delta", "J"];

/// `D_w = q d/dq − (w/12) E2`.
pub fn modular_derivative(a: &QSeries, w: &Rational) -> QSeries {
    let corr = e2(a.order()).mul(a).scale(&(w * rat(1, 12)));
    a.q_derivative().sub(&corr).unwrap()
}

/// `D_w^k = D_{w+2k−2} ∘ … ∘ D_w`.
pub fn modular_derivative_power(a: &QSeries, w: &Rational, k: usize) -> QSeries {
    let mut x = a.clone();
    for i in 0..k {
        x = modular_derivative(&x, &(w + int(2 * i as i64)));
    }
    x
}

/// The weight-raising operators `∇1 = (E4E6/Δ)D`, `∇2 = (E4²/Δ)D²`,
/// `∇3 = (E6/Δ)D³`; each preserves the weight.
pub fn nabla(i: usize, a: &QSeries, w: &Rational) -> Result<QSeries> {
    let n = a.order();
    let dinv = delta(n).invert()?;
    let (factor, k) = match i {
        1 => (e10(n).mul(&dinv), 1),
        2 => (e8(n).mul(&dinv), 2),
        3 => (e6(n).mul(&dinv), 3),
        _ => return Err(Error::InvalidInput(format!("nabla index {i} not in 1..=3"))),
    };
    Ok(factor.mul(&modular_derivative_power(a, w, k)))
}

/// Determinant of the matrix with columns `D_w^{k} X`, `k = 0..d−1`.
pub fn wronskian(x: &[QSeries], w: &Rational) -> Result<QSeries> {
    if x.is_empty() {
        return Err(Error::InvalidInput("empty vector".into()));
    }
    let d = x.len();
    let rows = x
        .iter()
        .map(|xi| (0..d).map(|k| modular_derivative_power(xi, w, k)).collect())
        .collect();
    SeriesMatrix::new(rows)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, n: usize) -> Vec<Rational> {
        s.coeffs()[..n].to_vec()
    }

    fn v(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn eisenstein_coefficients() {
        assert_eq!(ints(&e2(3), 4), v(&[1, -24, -72, -96]));
        assert_eq!(ints(&e4(3), 4), v(&[1, 240, 2160, 6720]));
        assert_eq!(ints(&e6(3), 4), v(&[1, -504, -16632, -122976]));
    }

    #[test]
    fn delta_is_ramanujan_tau() {
        let d = delta(5);
        assert_eq!(d.offset(), &int(1));
        assert_eq!(ints(&d, 6), v(&[1, -24, 252, -1472, 4830, -6048]));
    }

    #[test]
    fn j_expansion() {
        let j = j_invariant(3);
        assert_eq!(j.offset(), &int(-1));
        assert_eq!(j.coeffs(), &v(&[1, 744, 196884, 21493760])[..]);
    }

    #[test]
    fn aux_leading_terms() {
        let a = aux_series(4);
        assert_eq!(ints(&a.f, 3), v(&[1, 0, 338328]));
        assert_eq!(ints(&a.g, 3), v(&[0, 1, 240]));
        assert_eq!(a.f.order(), 4);
        assert_eq!(a.g.order(), 4);
    }

    #[test]
    fn derivative_of_e4_is_e6_multiple() {
        // D_4 E4 = −E6/3.
        let n = 12;
        let d = modular_derivative(&e4(n), &int(4));
        assert_eq!(d, e6(n).scale(&rat(-1, 3)));
    }

    #[test]
    fn nabla_index_checked() {
        assert!(nabla(4, &e4(3), &int(4)).is_err());
        assert!(standard_series("E12", 3).is_err());
    }
}
