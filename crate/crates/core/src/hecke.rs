//! The affine Iwahori-Hecke algebra `H_k` of `GL_k` over `Z[v, v^-1]`.
//!
//! Elements are finite sums `sum_w c_w T_w` over the extended affine Weyl
//! group, with `T_s^2 = (q-1) T_s + q T_e` for simple reflections
//! (`q = v^2`), braid relations, and length-zero rotations acting as
//! invertible basis units. The standard class is `E_w = v^{-l(w)} T_w`;
//! the costandard class is `v^{l(w)} T_{w^-1}^{-1}`. Wakimoto elements
//! `wakimoto(lambda)` give the lattice part of the Bernstein presentation
//! `{ wakimoto(lambda) * standard(tau) : lambda in Z^k, tau finite }`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::weyl::{self, Perm, WeylElem, WeylError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeckeError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("element is not a simple reflection")]
    NotSimple,
    #[error("element does not lie in the required subalgebra")]
    NotInSubalgebra,
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A finite `Z[v, v^-1]`-linear combination of `T_w` basis elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElem {
    k: usize,
    terms: BTreeMap<WeylElem, LaurentPoly>,
}

/// One term of a Bernstein decomposition:
/// `coeff * wakimoto(lambda) * standard(tau)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinTerm {
    pub lambda: Vec<i64>,
    pub tau: Perm,
    pub coeff: LaurentPoly,
}

impl HeckeElem {
    pub fn zero(k: usize) -> HeckeElem {
        HeckeElem {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: usize) -> HeckeElem {
        HeckeElem::t_basis(&WeylElem::identity(k))
    }

    /// The basis element `T_w`.
    pub fn t_basis(w: &WeylElem) -> HeckeElem {
        HeckeElem::from_term(w, LaurentPoly::one())
    }

    pub fn from_term(w: &WeylElem, coeff: LaurentPoly) -> HeckeElem {
        let mut out = HeckeElem::zero(w.rank());
        out.add_term(w, &coeff);
        out
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElem, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &WeylElem) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: &WeylElem, coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(self.k, w.rank());
        let slot = self.terms.entry(w.clone()).or_default();
        slot.add_assign(coeff);
        if slot.is_zero() {
            self.terms.remove(w);
        }
    }

    pub fn add_assign(&mut self, other: &HeckeElem) {
        assert_eq!(self.k, other.k);
        for (w, c) in other.terms() {
            self.add_term(w, c);
        }
    }

    pub fn sub(&self, other: &HeckeElem) -> HeckeElem {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, &c.neg());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElem {
        let mut out = HeckeElem::zero(self.k);
        for (w, cw) in self.terms() {
            out.add_term(w, &(cw * c));
        }
        out
    }

    /// Left multiplication by `T_{s_i}`.
    fn mul_simple_left(&self, i: usize) -> HeckeElem {
        let s = WeylElem::simple(self.k, i);
        let mut out = HeckeElem::zero(self.k);
        let q = LaurentPoly::q();
        let q1 = LaurentPoly::q_minus_one();
        for (w, c) in self.terms() {
            let sw = s.mul(w).unwrap();
            if sw.length() > w.length() {
                out.add_term(&sw, c);
            } else {
                out.add_term(w, &(c * &q1));
                out.add_term(&sw, &(c * &q));
            }
        }
        out
    }

    /// Left multiplication by the unit `T_{rotation(e)}`.
    fn mul_rotation_left(&self, e: i64) -> HeckeElem {
        if e == 0 {
            return self.clone();
        }
        let rot = WeylElem::rotation(self.k, e);
        let mut out = HeckeElem::zero(self.k);
        for (w, c) in self.terms() {
            out.add_term(&rot.mul(w).unwrap(), c);
        }
        out
    }

    /// Left multiplication by `T_u` for a single group element `u`.
    pub fn mul_t_left(&self, u: &WeylElem) -> HeckeElem {
        let (word, e) = u.reduced_word();
        let mut out = self.mul_rotation_left(e);
        for &i in word.iter().rev() {
            out = out.mul_simple_left(i);
        }
        out
    }

    /// Left multiplication by `T_{s_i}^{-1} = q^{-1} T_{s_i} + (q^{-1}-1) T_e`.
    fn mul_simple_inv_left(&self, i: usize) -> HeckeElem {
        let q_inv = LaurentPoly::v(-2);
        let q_inv_minus_one = &q_inv - &LaurentPoly::one();
        let mut out = self.mul_simple_left(i).scale(&q_inv);
        out.add_assign(&self.scale(&q_inv_minus_one));
        out
    }

    /// The convolution product.
    pub fn he_mul(&self, other: &HeckeElem) -> Result<HeckeElem, HeckeError> {
        if self.k != other.k {
            return Err(HeckeError::RankMismatch(self.k, other.k));
        }
        let mut out = HeckeElem::zero(self.k);
        for (w, c) in self.terms() {
            out.add_assign(&other.mul_t_left(w).scale(c));
        }
        Ok(out)
    }

    /// `T_w^{-1}`, computed along a reduced word.
    pub fn t_inverse(w: &WeylElem) -> HeckeElem {
        let (word, e) = w.reduced_word();
        let mut out = HeckeElem::one(w.rank());
        for &i in &word {
            out = out.mul_simple_inv_left(i);
        }
        out.mul_rotation_left(-e)
    }

    /// The standard class `E_w = v^{-l(w)} T_w`.
    pub fn standard(w: &WeylElem) -> HeckeElem {
        HeckeElem::from_term(w, LaurentPoly::v(-(w.length() as i64)))
    }

    /// The costandard class `v^{l(w)} T_{w^{-1}}^{-1}`.
    pub fn costandard(w: &WeylElem) -> HeckeElem {
        HeckeElem::t_inverse(&w.inverse()).scale(&LaurentPoly::v(w.length() as i64))
    }

    /// The class of the simple intersection cohomology sheaf:
    /// `v^{-1} (T_s + T_e)` for a simple reflection `s`.
    pub fn kl_simple(s: &WeylElem) -> Result<HeckeElem, HeckeError> {
        if s.as_simple().is_none() {
            return Err(HeckeError::NotSimple);
        }
        let mut out = HeckeElem::t_basis(s);
        out.add_assign(&HeckeElem::one(s.rank()));
        Ok(out.scale(&LaurentPoly::v(-1)))
    }

    /// The Wakimoto element `Theta_lambda`: standard class for dominant
    /// lambda, costandard for antidominant, and in general the product
    /// `Theta_{lambda + c delta} * Theta_{-c delta}` for the canonical
    /// dominant shift `delta = (k-1, ..., 1, 0)`,
    /// `c = max(0, max_i(lambda_{i+1} - lambda_i))`.
    pub fn wakimoto(lambda: &[i64]) -> HeckeElem {
        let k = lambda.len();
        let c = lambda
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
            .max(0);
        if c == 0 {
            return HeckeElem::standard(&WeylElem::translation(lambda));
        }
        let delta: Vec<i64> = (0..k as i64).rev().collect();
        let lambda_minus: Vec<i64> = delta.iter().map(|d| c * d).collect();
        let lambda_plus: Vec<i64> = lambda
            .iter()
            .zip(&lambda_minus)
            .map(|(a, b)| a + b)
            .collect();
        debug_assert!(weyl::is_dominant(&lambda_plus));
        let minus: Vec<i64> = lambda_minus.iter().map(|a| -a).collect();
        HeckeElem::standard(&WeylElem::translation(&lambda_plus))
            .he_mul(&HeckeElem::costandard(&WeylElem::translation(&minus)))
            .unwrap()
    }

    /// The Bernstein-basis element `wakimoto(lambda) * standard(tau)`.
    pub fn bernstein_basis(lambda: &[i64], tau: &Perm) -> HeckeElem {
        HeckeElem::wakimoto(lambda)
            .he_mul(&HeckeElem::standard(&WeylElem::finite(tau)))
            .unwrap()
    }

    /// Expands `self` in the Bernstein basis. The expansion always exists
    /// and is unique; it is computed by eliminating the support element of
    /// maximal length (the basis is unitriangular for the length order).
    pub fn bernstein_decompose(&self) -> Vec<BernsteinTerm> {
        let mut rem = self.clone();
        let mut out = Vec::new();
        while !rem.is_zero() {
            let w = rem
                .terms
                .keys()
                .max_by_key(|w| (w.length(), (*w).clone()))
                .unwrap()
                .clone();
            let (lambda, tau) = w.to_pair();
            let basis = HeckeElem::bernstein_basis(&lambda, &tau);
            for (u, _) in basis.terms() {
                assert!(
                    *u == w || u.length() < w.length(),
                    "Bernstein basis element for {w:?} is not length-triangular"
                );
            }
            let (lead_exp, lead_sign) = basis
                .coeff(&w)
                .as_unit_monomial()
                .expect("Bernstein leading coefficient must be a unit");
            let ratio = rem
                .coeff(&w)
                .div_monomial(lead_exp, &BigInt::from(lead_sign))
                .unwrap();
            rem = rem.sub(&basis.scale(&ratio));
            assert!(rem.coeff(&w).is_zero());
            out.push(BernsteinTerm {
                lambda,
                tau,
                coeff: ratio,
            });
        }
        out.sort_by_key(|a| (a.lambda.clone(), a.tau.one_line()));
        out
    }

    pub fn bernstein_recompose(k: usize, terms: &[BernsteinTerm]) -> HeckeElem {
        let mut out = HeckeElem::zero(k);
        for t in terms {
            out.add_assign(&HeckeElem::bernstein_basis(&t.lambda, &t.tau).scale(&t.coeff));
        }
        out
    }

    /// Writes `self = sum_{tau'} m_{tau'} T_{tau'}` over the minimal coset
    /// representatives of `W_M \ W_H` for the block Levi `(n, m-n)`, with
    /// every `m_{tau'}` in the parabolic subalgebra `H_M` (generated by the
    /// finite block permutations and all Wakimoto elements).
    pub fn parabolic_decompose(&self, n: usize) -> BTreeMap<Perm, HeckeElem> {
        let m = self.k;
        assert!(n >= 1 && n <= m);
        let mut out: BTreeMap<Perm, HeckeElem> = BTreeMap::new();
        for term in self.bernstein_decompose() {
            let subset: Vec<usize> = (1..=m).filter(|&j| term.tau.apply(j) <= n).collect();
            let rep = weyl::rep_for_subset(&subset, n, m);
            let tau2 = term.tau.compose(&rep.inverse());
            debug_assert!(block_preserving(&tau2, n));
            debug_assert_eq!(
                term.tau.num_inversions(),
                tau2.num_inversions() + rep.num_inversions(),
                "coset factorization must be length-additive"
            );
            let factor = HeckeElem::bernstein_basis(&term.lambda, &tau2)
                .scale(&(&term.coeff * &LaurentPoly::v(-(rep.num_inversions() as i64))));
            out.entry(rep)
                .and_modify(|h| h.add_assign(&factor))
                .or_insert(factor);
        }
        out.retain(|_, h| !h.is_zero());
        out
    }

    /// Recomposes a parabolic decomposition: `sum m_{tau'} T_{tau'}`.
    pub fn parabolic_recompose(k: usize, parts: &BTreeMap<Perm, HeckeElem>) -> HeckeElem {
        let mut out = HeckeElem::zero(k);
        for (rep, coeff) in parts {
            let t_rep = HeckeElem::t_basis(&WeylElem::finite(rep));
            out.add_assign(&coeff.he_mul(&t_rep).unwrap());
        }
        out
    }

    /// The anti-automorphism `T_w -> T_{w^{-1}}`.
    pub fn star_sharp(&self) -> HeckeElem {
        let mut out = HeckeElem::zero(self.k);
        for (w, c) in self.terms() {
            out.add_term(&w.inverse(), c);
        }
        out
    }

    /// The algebra automorphism induced by the length-preserving group
    /// automorphism `w -> w_0 bar(w)^{-1} w_0`. On the Bernstein basis it
    /// sends `wakimoto(lambda) * standard(tau)` to
    /// `wakimoto(-w_0 lambda) * standard(w_0 tau w_0)`.
    pub fn sigma_tilde_alg(&self) -> HeckeElem {
        let mut out = HeckeElem::zero(self.k);
        for (w, c) in self.terms() {
            out.add_term(&w.sigma_tilde(), c);
        }
        out
    }

    /// The anti-automorphism `sigma = sigma_tilde . star_sharp`, sending
    /// `T_w` to `T_{w_0 bar(w) w_0}`.
    pub fn sigma_alg(&self) -> HeckeElem {
        self.star_sharp().sigma_tilde_alg()
    }

    /// Splits into graded components by `pi_1`-degree.
    pub fn pi1_split(&self) -> BTreeMap<i64, HeckeElem> {
        let mut out: BTreeMap<i64, HeckeElem> = BTreeMap::new();
        for (w, c) in self.terms() {
            out.entry(w.pi1_degree())
                .or_insert_with(|| HeckeElem::zero(self.k))
                .add_term(w, c);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "terms": self
                .terms()
                .map(|(w, c)| serde_json::json!({ "w": w.window(), "c": c.to_json() }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Option<HeckeElem> {
        let k = value.get("k")?.as_u64()? as usize;
        let mut out = HeckeElem::zero(k);
        for term in value.get("terms")?.as_array()? {
            let window: Vec<i64> = term
                .get("w")?
                .as_array()?
                .iter()
                .map(|v| v.as_i64())
                .collect::<Option<_>>()?;
            let w = WeylElem::from_window(window).ok()?;
            if w.rank() != k {
                return None;
            }
            let c = LaurentPoly::from_json(term.get("c")?)?;
            out.add_term(&w, &c);
        }
        Some(out)
    }
}

fn block_preserving(tau: &Perm, n: usize) -> bool {
    (1..=tau.rank()).all(|j| (tau.apply(j) <= n) == (j <= n))
}

/// Restricts a block-preserving permutation of `{1..m}` to its two blocks.
pub fn split_block_perm(tau: &Perm, n: usize) -> Option<(Perm, Perm)> {
    let m = tau.rank();
    if !block_preserving(tau, n) {
        return None;
    }
    let first = Perm::from_images(&(1..=n).map(|j| tau.apply(j)).collect::<Vec<_>>()).ok()?;
    let second =
        Perm::from_images(&(n + 1..=m).map(|j| tau.apply(j) - n).collect::<Vec<_>>()).ok()?;
    Some((first, second))
}
