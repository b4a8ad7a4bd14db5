//! Multiplicity data of an admissible multiplier system.
//!
//! The matrices `ρ(S)`, `ρ(U)` are never stored. Everything downstream needs
//! only the rank, the weight and the eigenvalue multiplicities
//! `α_i = mult of (−1)^i` for `ρ(S)` and `β_j = mult of ξ₃^j` for `ρ(U)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{frac, int, mod_int, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierData {
    pub d: usize,
    pub w: Rational,
    pub alpha: [usize; 2],
    pub beta: [usize; 3],
    pub exponent: Option<Vec<Rational>>,
}

impl MultiplierData {
    pub fn new(d: usize, w: Rational, alpha: [usize; 2], beta: [usize; 3]) -> Result<Self> {
        let m = MultiplierData {
            d,
            w,
            alpha,
            beta,
            exponent: None,
        };
        m.validate()?;
        Ok(m)
    }

    /// The trivial representation at weight 0.
    pub fn trivial() -> Self {
        Self::new(1, int(0), [1, 0], [1, 0, 0]).unwrap()
    }

    pub fn with_exponent(mut self, lambda: Vec<Rational>) -> Result<Self> {
        if lambda.len() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "exponent has {} entries, rank is {}",
                lambda.len(),
                self.d
            )));
        }
        self.exponent = Some(lambda);
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        if self.alpha.iter().sum::<usize>() != self.d {
            return Err(Error::InvalidInput(format!(
                "alpha {:?} does not sum to d={}",
                self.alpha, self.d
            )));
        }
        if self.beta.iter().sum::<usize>() != self.d {
            return Err(Error::InvalidInput(format!(
                "beta {:?} does not sum to d={}",
                self.beta, self.d
            )));
        }
        Ok(())
    }

    /// `c = wd/12 − α₁/2 − (β₁ + 2β₂)/3`, the trace of any bijective exponent.
    pub fn c_value(&self) -> Rational {
        &self.w * int(self.d as i64) / int(12)
            - rat(self.alpha[1] as i64, 2)
            - rat((self.beta[1] + 2 * self.beta[2]) as i64, 3)
    }

    /// `Tr λ ≡ c (mod 1)`.
    pub fn trace_integrality_check(&self) -> Result<bool> {
        let lambda = self
            .exponent
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("no exponent attached".into()))?;
        Ok(trace_congruent(self, &sum(lambda)))
    }

    /// `max β_j ≤ min α_i`; only meaningful for `d > 1`.
    pub fn component_nonempty(&self) -> Result<bool> {
        if self.d == 1 {
            return Err(Error::InvalidInput("component test needs d > 1".into()));
        }
        Ok(self.beta.iter().max() <= self.alpha.iter().min())
    }

    /// Multiplicities at weight `w + 2k`: `α_j ↦ α_{j+k}`, `β_j ↦ β_{j+k}`.
    pub fn shift_multiplicities(&self, k: i64) -> Self {
        let a = |j: i64| self.alpha[(j + k).rem_euclid(2) as usize];
        let b = |j: i64| self.beta[(j + k).rem_euclid(3) as usize];
        MultiplierData {
            d: self.d,
            w: &self.w + int(2 * k),
            alpha: [a(0), a(1)],
            beta: [b(0), b(1), b(2)],
            exponent: self.exponent.clone(),
        }
    }

    /// `c` at weight `w + 2k + 12l` from the correction table, `0 ≤ k ≤ 5`.
    pub fn c_shift(&self, k: i64, l: i64) -> Result<Rational> {
        let (a, b) = (&self.alpha, &self.beta);
        let i = |x: usize| int(x as i64);
        let corr = match k {
            0 => int(0),
            1 => i(a[1]) - i(b[0]),
            2 => i(b[2]),
            3 => i(a[1]),
            4 => i(b[1]) + i(b[2]),
            5 => i(a[1]) + i(b[2]),
            _ => return Err(Error::InvalidInput(format!("k={k} outside 0..=5"))),
        };
        Ok(self.c_value() + corr + int(l * self.d as i64))
    }

    /// `c` at an arbitrary weight `w' ∈ w + 2ℤ`.
    pub fn c_at_weight(&self, w_prime: &Rational) -> Result<Rational> {
        let steps = weight_steps(&self.w, w_prime)?;
        self.c_shift(steps.rem_euclid(6), steps.div_euclid(6))
    }

    /// `(wd/12 − d + ε/4, wd/12 − 5d/12 − ε/4)` with `ε = d mod 2`.
    pub fn trace_bounds(&self) -> (Rational, Rational) {
        let d = int(self.d as i64);
        let eps = rat((self.d % 2) as i64, 4);
        let base = &self.w * &d / int(12);
        (&base - &d + &eps, base - d * rat(5, 12) - eps)
    }

    /// `(12 Tr λ/d + 1 − d, 12 Tr λ/d − 3ε/d)`.
    pub fn minimal_weight_bounds(&self, trace_lambda: &Rational) -> (Rational, Rational) {
        let d = int(self.d as i64);
        let eps = int((self.d % 2) as i64);
        let base = trace_lambda * int(12) / &d;
        (&base + int(1) - &d, base - eps * int(3) / d)
    }

    /// Data of the dual `(ρ*, 2 − w)`: `α*_i = α_{i+1}`, `β*_j = β_{2−j}`.
    pub fn dual(&self) -> Self {
        MultiplierData {
            d: self.d,
            w: int(2) - &self.w,
            alpha: [self.alpha[1], self.alpha[0]],
            beta: [self.beta[2], self.beta[1], self.beta[0]],
            exponent: self
                .exponent
                .as_ref()
                .map(|l| l.iter().map(|x| int(1) - x).collect()),
        }
    }

    /// Checks the congruence counts of a list of generator weights:
    /// exactly `α_i` are `≡ w + 2i (mod 4)` and `β_j` are `≡ w + 2j (mod 6)`.
    pub fn congruence_counts_ok(&self, weights: &[Rational]) -> bool {
        if weights.len() != self.d {
            return false;
        }
        let mut a = [0usize; 2];
        let mut b = [0usize; 3];
        for x in weights {
            let diff = x - &self.w;
            let (Some(m4), Some(m6)) = (mod_int(&diff, 4), mod_int(&diff, 6)) else {
                return false;
            };
            if m4 % 2 != 0 {
                return false;
            }
            a[(m4 / 2) as usize] += 1;
            b[(m6 / 2) as usize] += 1;
        }
        a == self.alpha && b == self.beta
    }
}

pub(crate) fn sum(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |a, b| a + b)
}

pub(crate) fn trace_congruent(m: &MultiplierData, trace: &Rational) -> bool {
    frac(&(trace - m.c_value())).is_zero()
}

/// `(w' − w)/2`, which must be an integer.
pub fn weight_steps(w: &Rational, w_prime: &Rational) -> Result<i64> {
    let k = (w_prime - w) / int(2);
    crate::rational::to_i64(&k)
        .ok_or_else(|| Error::InvalidInput(format!("weight {w_prime} is not in {w} + 2Z")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class1() -> MultiplierData {
        MultiplierData::new(2, int(0), [1, 1], [1, 1, 0]).unwrap()
    }

    #[test]
    fn c_values() {
        assert_eq!(MultiplierData::trivial().c_value(), int(0));
        let u = MultiplierData::new(1, int(0), [0, 1], [0, 0, 1]).unwrap();
        assert_eq!(u.c_value(), rat(-7, 6));
        assert_eq!(class1().c_value(), rat(-5, 6));
    }

    #[test]
    fn trace_integrality() {
        let t = MultiplierData::trivial()
            .with_exponent(vec![int(0)])
            .unwrap();
        assert!(t.trace_integrality_check().unwrap());
        let c = class1().with_exponent(vec![rat(1, 6), int(-1)]).unwrap();
        assert!(c.trace_integrality_check().unwrap());
        let bad = MultiplierData::new(2, int(0), [2, 0], [2, 0, 0])
            .unwrap()
            .with_exponent(vec![rat(-1, 2), int(0)])
            .unwrap();
        assert!(!bad.trace_integrality_check().unwrap());
    }

    #[test]
    fn component_inequality() {
        assert!(class1().component_nonempty().unwrap());
        let m = MultiplierData::new(3, int(0), [0, 3], [1, 1, 1]).unwrap();
        assert!(!m.component_nonempty().unwrap());
        let m = MultiplierData::new(2, int(0), [2, 0], [1, 1, 0]).unwrap();
        assert!(!m.component_nonempty().unwrap());
        assert!(MultiplierData::trivial().component_nonempty().is_err());
    }

    #[test]
    fn shifting() {
        let m = class1();
        let s = m.shift_multiplicities(1);
        assert_eq!((s.alpha, s.beta), ([1, 1], [1, 0, 1]));
        assert_eq!(m.shift_multiplicities(6).beta, m.beta);
        assert_eq!(m.c_shift(1, 0).unwrap(), rat(-5, 6));
        assert_eq!(m.c_shift(0, 1).unwrap(), rat(-5, 6) + int(2));
        for k in 0..6 {
            assert_eq!(
                m.shift_multiplicities(k).c_value(),
                m.c_shift(k, 0).unwrap()
            );
        }
    }

    #[test]
    fn bounds() {
        let m = class1();
        assert_eq!(m.trace_bounds(), (int(-2), rat(-5, 6)));
        let m3 = MultiplierData::new(3, int(0), [1, 2], [1, 1, 1]).unwrap();
        assert_eq!(m3.trace_bounds(), (rat(-11, 4), rat(-3, 2)));
        assert_eq!(m.minimal_weight_bounds(&rat(1, 6)), (int(0), int(1)));
        assert_eq!(m3.minimal_weight_bounds(&int(2)), (int(6), int(7)));
        let m5 = MultiplierData::new(5, int(0), [3, 2], [1, 2, 2]).unwrap();
        assert_eq!(m5.minimal_weight_bounds(&int(0)), (int(-4), rat(-3, 5)));
    }

    #[test]
    fn invalid_multiplicities() {
        assert!(MultiplierData::new(2, int(0), [1, 0], [1, 1, 0]).is_err());
        assert!(MultiplierData::new(0, int(0), [0, 0], [0, 0, 0]).is_err());
    }
}
