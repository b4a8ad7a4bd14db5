//! Dimension formulas for tight multipliers and the tight Hilbert–Poincaré
//! series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multiplier::{sum, trace_congruent, weight_steps, MultiplierData};
use crate::rational::{int, rat, to_i64, Rational};
use crate::series::QSeries;

/// `c − Tr λ = dim ker 𝒫_λ − dim coker 𝒫_λ`.
pub fn index(m: &MultiplierData, lambda: &[Rational]) -> Rational {
    m.c_value() - sum(lambda)
}

/// `c(w') + d − Tr λ`.
pub fn dim_difference(
    m: &MultiplierData,
    lambda: &[Rational],
    w_prime: &Rational,
) -> Result<Rational> {
    Ok(m.c_at_weight(w_prime)? + int(m.d as i64) - sum(lambda))
}

/// `dim M^λ_{w'}(ρ) = max{0, c(w') + d − Tr λ}` for tight `ρ`.
pub fn dim_tight(m: &MultiplierData, lambda: &[Rational], w_prime: &Rational) -> Result<u64> {
    let v = dim_difference(m, lambda, w_prime)?;
    let v = to_i64(&v).ok_or_else(|| {
        Error::InvalidInput(format!("trace integrality fails: c + d − Tr λ = {v}"))
    })?;
    Ok(v.max(0) as u64)
}

/// `max{0, (w+2k+2)d/12 + α_k/2 + (β_k − β_{k+2})/3 − Tr λ}`.
pub fn holbound(m: &MultiplierData, lambda: &[Rational], k: i64) -> Rational {
    let a = m.alpha[k.rem_euclid(2) as usize] as i64;
    let b0 = m.beta[k.rem_euclid(3) as usize] as i64;
    let b2 = m.beta[(k + 2).rem_euclid(3) as usize] as i64;
    let v = (&m.w + int(2 * k + 2)) * int(m.d as i64) / int(12) + rat(a, 2) + rat(b0 - b2, 3)
        - sum(lambda);
    if v.is_negative() {
        Rational::zero()
    } else {
        v
    }
}

/// Tight Hilbert–Poincaré data: `H(x) = x^{w₀'} N(x²) / ((1 − x⁴)(1 − x⁶))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub w0prime: Rational,
    /// `[n₀, n₁, n₂ − n₀, n₃ − n₁ − n₀, n₄ − n₂ − n₁]`.
    pub numerator_counts: [i64; 5],
    pub generator_weights: Vec<Rational>,
    /// `n_k = dim M^λ_{w₀'+2k}` for `k = 0..12`.
    pub dims: Vec<i64>,
}

/// Computes the tight Hilbert–Poincaré series and the generator weights.
pub fn hilbert_tight(m: &MultiplierData, lambda: &[Rational]) -> Result<HilbertData> {
    let d = m.d as i64;
    if lambda.len() != m.d {
        return Err(Error::DimensionMismatch("exponent length".into()));
    }
    let trace = sum(lambda);
    if !trace_congruent(m, &trace) {
        return Err(Error::InvalidInput(format!(
            "Tr λ = {trace} violates trace integrality"
        )));
    }
    let n_at = |l: i64| -> Result<i64> {
        let v = m.c_shift(l.rem_euclid(6), l.div_euclid(6))? + int(d) - &trace;
        Ok(to_i64(&v).unwrap())
    };
    // c(w + 2l) ≤ (w + 2l)d/12, so every l below this start gives n ≤ 0.
    let start = ((int(12) * (&trace - int(d)) / int(d) - &m.w) / int(2)).floor();
    let mut l =
        to_i64(&start).ok_or_else(|| Error::InvalidInput("weight out of range".into()))? - 1;
    while n_at(l)? <= 0 {
        l += 1;
    }
    let w0 = &m.w + int(2 * l);
    let dims: Vec<i64> = (0..=12)
        .map(|k| n_at(l + k).map(|v| v.max(0)))
        .collect::<Result<_>>()?;
    let at = |k: i64| if k < 0 { 0 } else { dims[k as usize] };
    let numer: Vec<i64> = (0..=12)
        .map(|k| at(k) - at(k - 2) - at(k - 3) + at(k - 5))
        .collect();
    if numer.iter().any(|&a| a < 0) || numer[5..].iter().any(|&a| a != 0) {
        return Err(Error::NotTight(format!(
            "numerator {numer:?} is not a nonnegative polynomial of degree ≤ 8"
        )));
    }
    let mut weights = Vec::new();
    for (k, &a) in numer.iter().enumerate() {
        for _ in 0..a {
            weights.push(&w0 + int(2 * k as i64));
        }
    }
    if weights.len() != m.d || sum(&weights) != trace * int(12) {
        return Err(Error::NotTight(format!(
            "generator weights {weights:?} are inconsistent with rank and trace"
        )));
    }
    Ok(HilbertData {
        w0prime: w0,
        numerator_counts: [numer[0], numer[1], numer[2], numer[3], numer[4]],
        generator_weights: weights,
        dims,
    })
}

/// The canonical multiplicities used for the rank-3, 4, 5 tables at weight 0.
pub fn canonical_multiplicities(d: usize) -> Result<MultiplierData> {
    match d {
        3 => MultiplierData::new(3, int(0), [1, 2], [1, 1, 1]),
        4 => MultiplierData::new(4, int(0), [2, 2], [2, 1, 1]),
        5 => MultiplierData::new(5, int(0), [3, 2], [1, 2, 2]),
        _ => Err(Error::InvalidInput(format!("no weight table for rank {d}"))),
    }
}

/// Generator weights for irreducible `ρ` of rank 3, 4, 5 with the canonical
/// multiplicities and `Tr λ = L`.
pub fn generator_weights_table(d: usize, l: i64) -> Result<Vec<i64>> {
    Ok(match d {
        3 => vec![4 * l - 2, 4 * l, 4 * l + 2],
        4 if l % 2 == 0 => vec![3 * l - 2, 3 * l, 3 * l, 3 * l + 2],
        4 => vec![3 * l - 3, 3 * l - 1, 3 * l + 1, 3 * l + 3],
        5 => {
            let (q, r) = l.div_mod_floor(&5);
            let b = 12 * q;
            let offs: [i64; 5] = match r {
                0 => [-4, -2, 0, 2, 4],
                1 => [0, 2, 2, 4, 4],
                2 => [2, 4, 4, 6, 8],
                3 => [4, 6, 8, 8, 10],
                _ => [8, 8, 10, 10, 12],
            };
            offs.iter().map(|o| b + o).collect()
        }
        _ => return Err(Error::InvalidInput(format!("no weight table for rank {d}"))),
    })
}

/// True iff the sorted weights advance in steps of 0 or 2.
pub fn gap_check(weights: &[Rational]) -> bool {
    let mut w = weights.to_vec();
    w.sort();
    w.windows(2).all(|p| {
        let diff = &p[1] - &p[0];
        diff.is_zero() || diff == int(2)
    })
}

/// For each `n ≤ N`, the lcm of all coefficient denominators up to relative
/// index `n`, across components.
pub fn denominator_profile(y: &[QSeries], n: usize) -> Vec<BigInt> {
    let mut acc = BigInt::one();
    (0..=n)
        .map(|k| {
            for s in y {
                acc = acc.lcm(s.coeff_rel(k).denom());
            }
            acc.clone()
        })
        .collect()
}

/// `k` with `w' = w + 2k`.
pub fn weight_index(m: &MultiplierData, w_prime: &Rational) -> Result<i64> {
    weight_steps(&m.w, w_prime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn trivial_dimensions() {
        let m = MultiplierData::trivial();
        assert_eq!(index(&m, &[int(0)]), int(0));
        assert_eq!(index(&m, &[int(-1)]), int(1));
        assert_eq!(dim_tight(&m, &[int(0)], &int(0)).unwrap(), 1);
        assert_eq!(dim_tight(&m, &[int(0)], &int(2)).unwrap(), 0);
        assert_eq!(dim_tight(&m, &[int(0)], &int(12)).unwrap(), 2);
        assert!(dim_tight(&m, &[int(0)], &int(1)).is_err());
        assert_eq!(holbound(&m, &[int(0)], 0), int(1));
        assert_eq!(holbound(&m, &[int(100)], 0), int(0));
        assert_eq!(dim_difference(&m, &[int(0)], &int(0)).unwrap(), int(1));
    }

    #[test]
    fn trivial_hilbert() {
        let h = hilbert_tight(&MultiplierData::trivial(), &[int(0)]).unwrap();
        assert_eq!(h.generator_weights, ints(&[0]));
        assert_eq!(h.numerator_counts, [1, 0, 0, 0, 0]);
    }

    #[test]
    fn class1_hilbert() {
        let m = MultiplierData::new(2, int(0), [1, 1], [1, 1, 0]).unwrap();
        let lam = [rat(1, 6), int(0)];
        assert_eq!(dim_tight(&m, &lam, &int(0)).unwrap(), 1);
        assert_eq!(holbound(&m, &lam, 0), int(1));
        let h = hilbert_tight(&m, &lam).unwrap();
        assert_eq!(h.generator_weights, ints(&[0, 2]));
        assert!(m.congruence_counts_ok(&h.generator_weights));
    }

    #[test]
    fn tables_match_hilbert() {
        for d in 3..=5 {
            let m = canonical_multiplicities(d).unwrap();
            for l in -6..=6 {
                let mut lam = vec![int(0); d];
                lam[0] = int(l);
                let h = hilbert_tight(&m, &lam).unwrap();
                let table: Vec<Rational> = generator_weights_table(d, l)
                    .unwrap()
                    .into_iter()
                    .map(int)
                    .collect();
                assert_eq!(h.generator_weights, table, "d={d} L={l}");
                assert!(gap_check(&table));
                assert!(m.congruence_counts_ok(&table), "d={d} L={l}");
            }
        }
    }

    #[test]
    fn gaps() {
        assert!(gap_check(&ints(&[0, 2])));
        assert!(!gap_check(&ints(&[0, 4])));
        assert!(gap_check(&ints(&[-2, 0, 2])));
    }

    #[test]
    fn denominators() {
        assert!(denominator_profile(&[forms::j_invariant(6)], 6)
            .iter()
            .all(|x| x.is_one()));
        let half = forms::delta(6).pow_rational(&rat(1, 2)).unwrap();
        // Δ^{1/2} = η^12 has integer coefficients.
        assert!(denominator_profile(&[half], 6).iter().all(|x| x.is_one()));
        let cube_root = forms::delta(6).pow_rational(&rat(1, 3)).unwrap();
        assert!(denominator_profile(&[cube_root], 6)
            .iter()
            .all(|x| x.is_one()));
        let fifth = forms::delta(6).pow_rational(&rat(1, 5)).unwrap();
        assert!(denominator_profile(&[fifth], 6).iter().any(|x| !x.is_one()));
    }
}
