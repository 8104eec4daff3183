//! Iwahori subgroups of truncated loop groups and double-coset
//! enumeration in the affine flag variety.
//!
//! A coset `xI` is canonicalized by the chain of lattices
//! `x Lambda_0 subset ... subset x Lambda_{k-1}` recorded as row-reduced
//! subspaces of the finite window `t^{-(s2+1)}M / t^{s1+1}M`; the Iwahori
//! subgroup is exactly the stabilizer of the standard chain, so the key is
//! a faithful coset invariant whenever the window bounds `t^{s1}M subset
//! xM subset t^{-s2}M` hold.

use std::collections::HashMap;

use theta_core::weyl::WeylElem;
use thiserror::Error;

use crate::trunc::{inv_mod, neg_mod, rref, LMat, LPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("truncation depth {0} too small; need at least {1}")]
    DepthTooSmall(i64, i64),
    #[error("enumeration budget exceeded: {0} points")]
    BudgetExceeded(u64),
    #[error("coset enumeration did not stay within the expected bound")]
    CosetOverflow,
    #[error("window has insufficient slack for this convolution")]
    InsufficientSlack,
    #[error("point-count family does not interpolate a polynomial")]
    NonPolynomialFit,
    #[error("unsupported index type for a linear closure")]
    UnsupportedIndex,
    #[error("coset does not lie in the parabolic flag variety")]
    NotInParabolic,
    #[error("two admissible indices landed in one orbit: {0}")]
    IndexCollision(String),
}

/// Generators of the depth-`d` Iwahori subgroup of `GL_k(F_q[[t]])`:
/// elementary unipotents `e_{ij}(t^a)` (with `a >= 1` below the diagonal)
/// and diagonal unit scalings, together with their inverses.
pub fn iwahori_gens(k: usize, d: i64, q: u64) -> Vec<(LMat, LMat)> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let lo = if i > j { 1 } else { 0 };
            for a in lo..d {
                let mut g = LMat::identity(k);
                g.set(i, j, LPoly::monomial(a, 1, q));
                let mut ginv = LMat::identity(k);
                ginv.set(i, j, LPoly::monomial(a, neg_mod(1, q), q));
                out.push((g, ginv));
            }
        }
    }
    for i in 0..k {
        for c in 2..q {
            let mut g = LMat::identity(k);
            g.set(i, i, LPoly::monomial(0, c, q));
            let mut ginv = LMat::identity(k);
            ginv.set(i, i, LPoly::monomial(0, inv_mod(c, q), q));
            out.push((g, ginv));
        }
        // deeper units 1 + c t^a with their geometric-series inverses
        for a in 1..d {
            for c in 1..q {
                let unit = LPoly::monomial(0, 1, q).add(&LPoly::monomial(a, c, q), q);
                let mut inv = LPoly::monomial(0, 1, q);
                let mut power = LPoly::monomial(0, 1, q);
                let neg = LPoly::monomial(a, neg_mod(c, q), q);
                while power.valuation().is_some_and(|v| v + a < 2 * d + 4) {
                    power = power.mul_trunc(&neg, q, 2 * d + 4);
                    inv = inv.add(&power, q);
                }
                let mut g = LMat::identity(k);
                g.set(i, i, unit);
                let mut ginv = LMat::identity(k);
                ginv.set(i, i, inv);
                out.push((g, ginv));
            }
        }
    }
    out
}

/// Window bounds of `w = t^lambda tau`: `t^{s1}M subset wM subset t^{-s2}M`.
pub fn window_bounds(w: &WeylElem) -> (i64, i64) {
    let (lambda, _) = w.to_pair();
    let s1 = lambda.iter().copied().max().unwrap_or(0).max(0);
    let s2 = (-lambda.iter().copied().min().unwrap_or(0)).max(0);
    (s1, s2)
}

pub fn weyl_matrix(w: &WeylElem) -> LMat {
    let (lambda, tau) = w.to_pair();
    LMat::weyl_lift(&lambda, &tau.one_line())
}

/// Canonical key of the coset `xI`: the reduced lattice chain in the
/// window `[lo_w, hi_w)` of t-levels.
fn coset_key(x: &LMat, q: u64, s1: i64, s2: i64) -> Vec<u8> {
    let k = x.k;
    let lo_w = -(s2 + 1);
    let hi_w = s1 + 1;
    let height = (hi_w - lo_w) as usize;
    let dim = k * height;
    let mut key = Vec::new();
    for chain in 0..k {
        // x Lambda_chain is spanned over O by t^{-1} col_j (j < chain)
        // and col_j (j >= chain); take all t-shifts inside the window.
        let mut rows = Vec::new();
        for j in 0..k {
            let base = if j < chain { -1 } else { 0 };
            for b in base..(hi_w - lo_w) {
                let mut vec = vec![0u64; dim];
                let mut nonzero = false;
                for row in 0..k {
                    let poly = x.at(row, j);
                    for level in lo_w..hi_w {
                        let c = poly.coeff(level - b) % q;
                        if c != 0 {
                            vec[row * height + (level - lo_w) as usize] = c;
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    rows.push(vec);
                }
            }
        }
        let basis = rref(rows, q);
        key.push(basis.len() as u8);
        for row in &basis {
            key.extend(row.iter().map(|&c| c as u8));
        }
    }
    key
}

/// Enumerates `IwI / I` and returns one representative per coset together
/// with its exact inverse. The count is `q^{l(w)}`.
pub fn coset_reps(
    w: &WeylElem,
    d: i64,
    q: u64,
    cut: i64,
) -> Result<Vec<(LMat, LMat)>, OracleError> {
    let (s1, s2) = window_bounds(w);
    if s1 + s2 + 1 > d {
        return Err(OracleError::DepthTooSmall(d, s1 + s2 + 1));
    }
    let lift = weyl_matrix(w);
    let lift_inv = weyl_matrix(&w.inverse());
    let gens = iwahori_gens(w.rank(), d, q);
    let bound = q.pow(w.length() as u32);

    let mut reps: Vec<(LMat, LMat)> = Vec::new();
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    seen.insert(coset_key(&lift, q, s1, s2), 0);
    reps.push((lift, lift_inv));
    let mut frontier = vec![0usize];
    while let Some(at) = frontier.pop() {
        let (x, xinv) = reps[at].clone();
        for (g, ginv) in &gens {
            let nx = g.mul(&x, q, cut);
            let key = coset_key(&nx, q, s1, s2);
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
                if reps.len() as u64 >= bound.saturating_mul(2) {
                    return Err(OracleError::CosetOverflow);
                }
                let nxinv = xinv.mul(ginv, q, cut);
                slot.insert(reps.len());
                frontier.push(reps.len());
                reps.push((nx, nxinv));
            }
        }
    }
    Ok(reps)
}
