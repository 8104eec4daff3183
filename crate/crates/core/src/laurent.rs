//! Exact Laurent polynomials over the integers in one variable `v`.
//!
//! Every symbolic class in this crate has coefficients in `Z[v, v^-1]`.
//! The deformation parameter `q` of the Hecke algebra is `v^2`, and the
//! class of a cohomological shift `[d]` is multiplication by `v^-d`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial `sum_e c_e v^e` with `c_e` in `Z`, stored sparsely.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// `c * v^e`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// The variable `v`.
    pub fn v(exp: i64) -> Self {
        LaurentPoly::monomial(exp, 1)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        LaurentPoly::v(2)
    }

    /// `q - 1`, the coefficient in the quadratic relation.
    pub fn q_minus_one() -> Self {
        &LaurentPoly::q() - &LaurentPoly::one()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Returns `(exp, coeff)` if the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    fn insert(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        for (e, c) in other.terms() {
            self.insert(e, c.clone());
        }
    }

    pub fn add_monomial(&mut self, exp: i64, coeff: &BigInt) {
        self.insert(exp, coeff.clone());
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.insert(ea + eb, ca * cb);
            }
        }
        out
    }

    /// Multiply by `c * v^e` in place.
    pub fn scale(&mut self, exp: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            self.terms.clear();
            return;
        }
        self.terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e + exp, c * coeff))
            .collect();
    }

    /// Exact division by a monomial `c * v^e`; `c` must be a unit (`+-1`)
    /// or divide every coefficient exactly.
    pub fn div_monomial(&self, exp: i64, coeff: &BigInt) -> Option<LaurentPoly> {
        assert!(!coeff.is_zero(), "division by zero monomial");
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms() {
            let (quot, rem) = num_integer::Integer::div_rem(c, coeff);
            if !rem.is_zero() {
                return None;
            }
            terms.insert(e - exp, quot);
        }
        Some(LaurentPoly { terms })
    }

    /// Evaluation in `Z[v]/(v^2 - q0)`, reported as the pair
    /// `(even part, odd part)` of exact rationals: the value is
    /// `even + odd * v` with `v^2 = q0`. Negative exponents evaluate to
    /// rationals via `v^-1 = v / q0`.
    pub fn specialize(&self, q0: u64) -> (BigRational, BigRational) {
        assert!(q0 >= 2, "specialization point must be at least 2");
        let q = BigRational::from_integer(BigInt::from(q0));
        let mut even = BigRational::zero();
        let mut odd = BigRational::zero();
        for (e, c) in self.terms() {
            let c = BigRational::from_integer(c.clone());
            if e % 2 == 0 {
                even += c * q_pow(&q, e / 2);
            } else {
                odd += c * q_pow(&q, (e - 1).div_euclid(2));
            }
        }
        (even, odd)
    }

    /// The exponent `e` when the polynomial is exactly `+-v^e` (a unit).
    pub fn as_unit_monomial(&self) -> Option<(i64, i8)> {
        let (e, c) = self.as_monomial()?;
        if c.is_one() {
            Some((e, 1))
        } else if (-c).is_one() {
            Some((e, -1))
        } else {
            None
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|(e, c)| serde_json::json!([e, bigint_json(c)]))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Option<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for pair in value.as_array()? {
            let pair = pair.as_array()?;
            if pair.len() != 2 {
                return None;
            }
            let e = pair[0].as_i64()?;
            let c = json_bigint(&pair[1])?;
            out.insert(e, c);
        }
        Some(out)
    }
}

fn q_pow(q: &BigRational, e: i64) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= q;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

fn bigint_json(c: &BigInt) -> serde_json::Value {
    // Coefficients comfortably fit in i64 for everything this crate does,
    // but fall back to a decimal string rather than lose exactness.
    match i64::try_from(c) {
        Ok(small) => serde_json::json!(small),
        Err(_) => serde_json::json!(c.to_string()),
    }
}

fn json_bigint(value: &serde_json::Value) -> Option<BigInt> {
    if let Some(n) = value.as_i64() {
        return Some(BigInt::from(n));
    }
    value.as_str()?.parse().ok()
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign(&rhs.neg());
        out
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> LaurentPoly {
        LaurentPoly::v(e)
    }

    #[test]
    fn difference_of_squares() {
        let a = &v(1) + &v(-1);
        let b = &v(1) - &v(-1);
        assert_eq!(&a * &b, &v(2) - &v(-2));
    }

    #[test]
    fn additive_inverse() {
        let x = &LaurentPoly::monomial(3, 7) + &v(-2);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn q_substitution() {
        // v^-1 (q - 1) = v - v^-1
        let lhs = &v(-1) * &LaurentPoly::q_minus_one();
        assert_eq!(lhs, &v(1) - &v(-1));
    }

    #[test]
    fn specialize_q_at_two() {
        let (even, odd) = LaurentPoly::q().specialize(2);
        assert_eq!(even, BigRational::from_integer(2.into()));
        assert!(odd.is_zero());
    }

    #[test]
    fn specialize_v_plus_v_inverse_at_four() {
        let (even, odd) = (&v(1) + &v(-1)).specialize(4);
        assert!(even.is_zero());
        assert_eq!(
            odd,
            BigRational::new(BigInt::from(5), BigInt::from(4))
        );
    }

    #[test]
    fn specialize_zero() {
        let (even, odd) = LaurentPoly::zero().specialize(3);
        assert!(even.is_zero() && odd.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let x = &(&v(-3) + &LaurentPoly::monomial(0, -4)) + &LaurentPoly::monomial(5, 2);
        let json = x.to_json();
        assert_eq!(LaurentPoly::from_json(&json).unwrap(), x);
        // exponents come out strictly increasing
        let exps: Vec<i64> = json
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p.as_array().unwrap()[0].as_i64().unwrap())
            .collect();
        assert_eq!(exps, vec![-3, 0, 5]);
    }
}
