//! Exact arithmetic over `F_p[t, t^-1]` truncated above a working
//! precision, and matrices over it. Everything here is ground-truth
//! plumbing for the finite-field oracle: coefficients are integers mod a
//! small prime, exponents are explicit, and any operation that would need
//! information above the precision cutoff keeps enough slack that the
//! reductions downstream never lose a digit that matters.

use std::fmt;

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub fn neg_mod(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // p is a small prime
    let mut out = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            out = out * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    out
}

/// A Laurent polynomial over `F_p`: `sum coeffs[i] t^{lo + i}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LPoly {
    pub lo: i64,
    pub coeffs: Vec<u64>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly { lo: 0, coeffs: vec![] }
    }

    pub fn monomial(exp: i64, c: u64, p: u64) -> LPoly {
        let c = c % p;
        if c == 0 {
            LPoly::zero()
        } else {
            LPoly { lo: exp, coeffs: vec![c] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> u64 {
        if exp < self.lo || exp >= self.lo + self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[(exp - self.lo) as usize]
        }
    }

    fn normalize(mut self) -> LPoly {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.lo += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn add(&self, other: &LPoly, p: u64) -> LPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        let mut coeffs = vec![0u64; (hi - lo) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + i] = c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.lo - lo) as usize + i];
            *slot = add_mod(*slot, c, p);
        }
        LPoly { lo, coeffs }.normalize()
    }

    /// Product truncated above `t^{cut}` (exclusive).
    pub fn mul_trunc(&self, other: &LPoly, p: u64, cut: i64) -> LPoly {
        if self.is_zero() || other.is_zero() {
            return LPoly::zero();
        }
        let lo = self.lo + other.lo;
        if lo >= cut {
            return LPoly::zero();
        }
        let len = ((cut - lo) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut coeffs = vec![0u64; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = (coeffs[i + j] + a * b) % p;
            }
        }
        LPoly { lo, coeffs }.normalize()
    }

    pub fn scale(&self, c: u64, p: u64) -> LPoly {
        let c = c % p;
        if c == 0 {
            return LPoly::zero();
        }
        LPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|&a| a * c % p).collect(),
        }
        .normalize()
    }

    /// Shift by `t^e`.
    pub fn shift(&self, e: i64) -> LPoly {
        if self.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            lo: self.lo + e,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Valuation, or `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo)
        }
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{}t^{}", c, self.lo + i as i64)?;
        }
        Ok(())
    }
}

/// A square matrix over `F_p[t, t^-1]`, truncated above `cut`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LMat {
    pub k: usize,
    pub entries: Vec<LPoly>,
}

impl LMat {
    pub fn identity(k: usize) -> LMat {
        let mut entries = vec![LPoly::zero(); k * k];
        for i in 0..k {
            entries[i * k + i] = LPoly::monomial(0, 1, u64::MAX);
        }
        LMat { k, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> &LPoly {
        &self.entries[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LPoly) {
        self.entries[i * self.k + j] = v;
    }

    /// `self * other`, truncating entries above `t^{cut}`.
    pub fn mul(&self, other: &LMat, p: u64, cut: i64) -> LMat {
        assert_eq!(self.k, other.k);
        let k = self.k;
        let mut out = LMat {
            k,
            entries: vec![LPoly::zero(); k * k],
        };
        for i in 0..k {
            for j in 0..k {
                let mut acc = LPoly::zero();
                for l in 0..k {
                    let prod = self.at(i, l).mul_trunc(other.at(l, j), p, cut);
                    acc = acc.add(&prod, p);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Matrix of the Weyl element `t^lambda tau`: column `i` is
    /// `t^{lambda_{tau(i)}} e_{tau(i)}`.
    pub fn weyl_lift(lambda: &[i64], tau_images: &[usize]) -> LMat {
        let k = lambda.len();
        let mut out = LMat {
            k,
            entries: vec![LPoly::zero(); k * k],
        };
        for (i, &ti) in tau_images.iter().enumerate() {
            out.set(ti - 1, i, LPoly::monomial(lambda[ti - 1], 1, u64::MAX));
        }
        out
    }
}

/// Reduced row echelon form over `F_p` of a list of vectors; returns the
/// canonical basis rows.
pub fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = inv_mod(rows[pivot_row][col], p);
        for x in rows[pivot_row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r == pivot_row || rows[r][col].is_multiple_of(p) {
                continue;
            }
            let factor = rows[r][col] % p;
            let pivot = rows[pivot_row].clone();
            for (slot, &pv) in rows[r].iter_mut().zip(&pivot) {
                let sub = mul_mod(factor, pv, p);
                *slot = (*slot + p - sub) % p;
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_arithmetic() {
        let p = 5;
        let a = LPoly::monomial(-1, 2, p).add(&LPoly::monomial(1, 3, p), p);
        let b = LPoly::monomial(0, 4, p);
        let prod = a.mul_trunc(&b, p, 10);
        assert_eq!(prod.coeff(-1), 3);
        assert_eq!(prod.coeff(1), 2);
        // truncation drops high terms
        let cut = a.mul_trunc(&b, p, 1);
        assert_eq!(cut.coeff(1), 0);
        assert_eq!(cut.coeff(-1), 3);
        // cancellation renormalizes
        let z = a.add(&a.scale(4, p), p);
        assert!(z.is_zero());
    }

    #[test]
    fn matrix_product_and_lift() {
        let p = 3;
        // s_1 lift in rank 2 squares to the identity
        let s1 = LMat::weyl_lift(&[0, 0], &[2, 1]);
        let sq = s1.mul(&s1, p, 10);
        assert_eq!(sq, LMat::identity(2));
        // translation lifts compose additively
        let t10 = LMat::weyl_lift(&[1, 0], &[1, 2]);
        let t01 = LMat::weyl_lift(&[0, 1], &[1, 2]);
        assert_eq!(t10.mul(&t01, p, 10), LMat::weyl_lift(&[1, 1], &[1, 2]));
    }

    #[test]
    fn rref_canonicalizes() {
        let p = 2;
        let a = rref(vec![vec![1, 1, 0], vec![0, 1, 1]], p);
        let b = rref(vec![vec![1, 0, 1], vec![0, 1, 1]], p);
        assert_eq!(a, b);
    }
}
