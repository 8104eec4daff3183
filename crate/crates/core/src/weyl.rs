//! Extended affine Weyl groups of `GL_k` as periodic permutations of `Z`.
//!
//! An element is stored by its window `[w(1), ..., w(k)]`; the unique
//! extension with `w(i + k) = w(i) + k` recovers the bijection of `Z`.
//! The pair form `t^lambda tau` (translation times finite permutation) is a
//! derived view. The embedding is fixed by two requirements:
//!
//! * `l(t^lambda) = sum_{i<j} |lambda_i - lambda_j|`, and
//! * the affine simple reflection `s_0` is `t^(-1,0,...,0,1) (1 k)`,
//!
//! which forces `window[i] = tau^{-1}(i) + k * lambda_i`. Under this
//! encoding the group product `u * w` corresponds to composing windows as
//! `i -> w(u(i))`.

use std::fmt;

use crate::laurent::LaurentPoly;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("window {0:?} is not a bijection mod {1}")]
    NotBijective(Vec<i64>, usize),
    #[error("length mismatch: lambda has {0} entries, rank is {1}")]
    BadLambda(usize, usize),
    #[error("not a permutation of 1..={0}")]
    BadPermutation(usize),
}

/// A permutation of `{1, ..., k}`, stored 0-based: `images[i] = p(i+1) - 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(k: usize) -> Perm {
        Perm {
            images: (0..k).collect(),
        }
    }

    /// Builds from 1-based images `[p(1), ..., p(k)]`.
    pub fn from_images(images: &[usize]) -> Result<Perm, WeylError> {
        let k = images.len();
        let mut seen = vec![false; k];
        let mut out = Vec::with_capacity(k);
        for &v in images {
            if v == 0 || v > k || seen[v - 1] {
                return Err(WeylError::BadPermutation(k));
            }
            seen[v - 1] = true;
            out.push(v - 1);
        }
        Ok(Perm { images: out })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// 1-based application.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.rank()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    /// `self * other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.rank(), other.rank());
        Perm {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// The longest element `i -> k + 1 - i`.
    pub fn longest(k: usize) -> Perm {
        Perm {
            images: (0..k).rev().collect(),
        }
    }

    /// The transposition `(i, i+1)`, 1-based.
    pub fn transposition(k: usize, i: usize) -> Perm {
        assert!(i >= 1 && i < k);
        let mut p = Perm::identity(k);
        p.images.swap(i - 1, i);
        p
    }

    pub fn num_inversions(&self) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if self.images[i] > self.images[j] {
                    out += 1;
                }
            }
        }
        out
    }

    /// Permutation action on coordinate vectors: `(p . v)_i = v_{p^{-1}(i)}`.
    pub fn act_on_vector(&self, v: &[i64]) -> Vec<i64> {
        let inv = self.inverse();
        (1..=self.rank()).map(|i| v[inv.apply(i) - 1]).collect()
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

/// Element of the extended affine Weyl group of `GL_k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElem {
    k: usize,
    window: Vec<i64>,
}

impl WeylElem {
    pub fn identity(k: usize) -> WeylElem {
        assert!(k >= 1);
        WeylElem {
            k,
            window: (1..=k as i64).collect(),
        }
    }

    pub fn from_window(window: Vec<i64>) -> Result<WeylElem, WeylError> {
        let k = window.len();
        if k == 0 {
            return Err(WeylError::NotBijective(window, 0));
        }
        let mut seen = vec![false; k];
        for &w in &window {
            let r = (w - 1).rem_euclid(k as i64) as usize;
            if seen[r] {
                return Err(WeylError::NotBijective(window, k));
            }
            seen[r] = true;
        }
        Ok(WeylElem { k, window })
    }

    /// `t^lambda tau`.
    pub fn from_pair(lambda: &[i64], tau: &Perm) -> Result<WeylElem, WeylError> {
        let k = tau.rank();
        if lambda.len() != k {
            return Err(WeylError::BadLambda(lambda.len(), k));
        }
        let tau_inv = tau.inverse();
        let window = (1..=k)
            .map(|i| tau_inv.apply(i) as i64 + k as i64 * lambda[i - 1])
            .collect();
        Ok(WeylElem { k, window })
    }

    pub fn translation(lambda: &[i64]) -> WeylElem {
        WeylElem::from_pair(lambda, &Perm::identity(lambda.len())).unwrap()
    }

    pub fn finite(tau: &Perm) -> WeylElem {
        WeylElem::from_pair(&vec![0; tau.rank()], tau).unwrap()
    }

    /// Inverse of `from_pair`: recovers `(lambda, tau)` with `w = t^lambda tau`.
    pub fn to_pair(&self) -> (Vec<i64>, Perm) {
        let k = self.k as i64;
        let mut tau_inv = Vec::with_capacity(self.k);
        let mut lambda = Vec::with_capacity(self.k);
        for (i0, &w) in self.window.iter().enumerate() {
            let res = (w - 1).rem_euclid(k) + 1;
            tau_inv.push(res as usize);
            debug_assert_eq!((w - res) % k, 0);
            lambda.push((w - res) / k);
            let _ = i0;
        }
        let tau = Perm::from_images(&tau_inv).unwrap().inverse();
        (lambda, tau)
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// The underlying bijection of `Z`.
    pub fn apply(&self, j: i64) -> i64 {
        let k = self.k as i64;
        let r = (j - 1).rem_euclid(k);
        let c = (j - 1 - r) / k;
        self.window[r as usize] + c * k
    }

    /// Group product `self * other`.
    pub fn mul(&self, other: &WeylElem) -> Result<WeylElem, WeylError> {
        if self.k != other.k {
            return Err(WeylError::RankMismatch(self.k, other.k));
        }
        let window = (1..=self.k as i64)
            .map(|i| other.apply(self.apply(i)))
            .collect();
        Ok(WeylElem { k: self.k, window })
    }

    pub fn inverse(&self) -> WeylElem {
        let k = self.k as i64;
        let mut window = vec![0; self.k];
        for i in 1..=k {
            let w = self.apply(i);
            let r = (w - 1).rem_euclid(k);
            let c = (w - 1 - r) / k;
            window[r as usize] = i - c * k;
        }
        WeylElem { k: self.k, window }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &w)| w == i as i64 + 1)
    }

    /// The simple reflection `s_i`; `i = 0` is the affine one (rank >= 2).
    pub fn simple(k: usize, i: usize) -> WeylElem {
        assert!(k >= 2, "GL_1 has no simple reflections");
        assert!(i < k);
        if i == 0 {
            let mut window: Vec<i64> = (1..=k as i64).collect();
            window[0] = 0;
            window[k - 1] = k as i64 + 1;
            WeylElem { k, window }
        } else {
            WeylElem::finite(&Perm::transposition(k, i))
        }
    }

    /// The length-zero rotation `i -> i + e`.
    pub fn rotation(k: usize, e: i64) -> WeylElem {
        WeylElem {
            k,
            window: (1..=k as i64).map(|i| i + e).collect(),
        }
    }

    /// Number of inversions `#{(i, j) : 1 <= i <= k, i < j, w(i) > w(j)}`.
    pub fn length(&self) -> u64 {
        fn ceil_div(x: i64, k: i64) -> i64 {
            -((-x).div_euclid(k))
        }
        let k = self.k as i64;
        let mut len = 0i64;
        for i in 0..self.k {
            for j in i + 1..self.k {
                let d = self.window[i] - self.window[j];
                // pairs (i, j + ck) with c >= 0, then (j, i + ck) with c >= 1
                len += ceil_div(d, k).max(0);
                len += (ceil_div(-d, k) - 1).max(0);
            }
        }
        len as u64
    }

    /// Degree in `pi_1(GL_k) = Z`: `(sum_i w(i) - i) / k`. A group
    /// homomorphism; translations map to `sum_i lambda_i`.
    pub fn pi1_degree(&self) -> i64 {
        let k = self.k as i64;
        let total: i64 = self
            .window
            .iter()
            .enumerate()
            .map(|(i, &w)| w - (i as i64 + 1))
            .sum();
        debug_assert_eq!(total % k, 0);
        total / k
    }

    /// A reduced word: `self = s_{i_1} ... s_{i_l} rotation(e)` with
    /// `l = length(self)`.
    pub fn reduced_word(&self) -> (Vec<usize>, i64) {
        let mut word = Vec::new();
        let mut w = self.clone();
        let mut len = w.length();
        while len > 0 {
            let mut found = false;
            for i in 0..self.k {
                let s = WeylElem::simple(self.k, i);
                let sw = s.mul(&w).unwrap();
                let slen = sw.length();
                if slen < len {
                    word.push(i);
                    w = sw;
                    len = slen;
                    found = true;
                    break;
                }
            }
            assert!(found, "no left descent on an element of positive length");
        }
        let e = w.pi1_degree();
        debug_assert_eq!(w, WeylElem::rotation(self.k, e));
        (word, e)
    }

    /// The map `t^lambda tau -> t^{tau^-1 lambda} tau^-1`, an
    /// anti-automorphism (group-level transpose). Fixes `w_0`.
    pub fn bar(&self) -> WeylElem {
        let (lambda, tau) = self.to_pair();
        let moved = tau.inverse().act_on_vector(&lambda);
        WeylElem::from_pair(&moved, &tau.inverse()).unwrap()
    }

    /// `w -> w_0 bar(w)^-1 w_0`, a length-preserving automorphism.
    pub fn sigma_tilde(&self) -> WeylElem {
        let w0 = WeylElem::finite(&Perm::longest(self.k));
        w0.mul(&self.bar().inverse()).unwrap().mul(&w0).unwrap()
    }

    /// `w -> w_0 bar(w) w_0`, the anti-automorphism underlying the
    /// transpose equivalence.
    pub fn sigma(&self) -> WeylElem {
        let w0 = WeylElem::finite(&Perm::longest(self.k));
        w0.mul(&self.bar()).unwrap().mul(&w0).unwrap()
    }

    /// Is this `s_i` for some `i`?
    pub fn as_simple(&self) -> Option<usize> {
        (0..self.k).find(|&i| *self == WeylElem::simple(self.k, i))
    }

    /// Is this a rotation? Returns its exponent.
    pub fn as_rotation(&self) -> Option<i64> {
        let e = self.window[0] - 1;
        if self.window.iter().enumerate().all(|(i, &w)| w == i as i64 + 1 + e) {
            Some(e)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "k": self.k, "window": self.window })
    }

    pub fn from_json(value: &serde_json::Value) -> Option<WeylElem> {
        let k = value.get("k")?.as_u64()? as usize;
        let window: Vec<i64> = value
            .get("window")?
            .as_array()?
            .iter()
            .map(|v| v.as_i64())
            .collect::<Option<_>>()?;
        if window.len() != k {
            return None;
        }
        WeylElem::from_window(window).ok()
    }
}

impl fmt::Debug for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.window)
    }
}

/// Pairings of a cocharacter against `2 rho`, `omega_k`, and `omega_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairings {
    /// `<lambda, 2 rho> = sum_{i<j} (lambda_i - lambda_j)`.
    pub two_rho: i64,
    /// `<lambda, omega_k> = sum_i lambda_i`.
    pub omega: i64,
    /// The coordinates themselves (`<., omega_1>` along the Weyl orbit).
    pub per_coordinate: Vec<i64>,
}

pub fn pairings(lambda: &[i64]) -> Pairings {
    let mut two_rho = 0;
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            two_rho += lambda[i] - lambda[j];
        }
    }
    Pairings {
        two_rho,
        omega: lambda.iter().sum(),
        per_coordinate: lambda.to_vec(),
    }
}

/// `sum_{i<j} (lambda_i - lambda_j)` over a coordinate block `range`.
pub fn two_rho_pairing(lambda: &[i64]) -> i64 {
    pairings(lambda).two_rho
}

/// Whether `lambda_1 >= lambda_2 >= ...` (upper-triangular Borel).
pub fn is_dominant(lambda: &[i64]) -> bool {
    lambda.windows(2).all(|w| w[0] >= w[1])
}

/// Index of an `I_H x I_G`-orbit: a cocharacter of `T_G` plus a bijection
/// from an `n`-element subset of `{1..m}` onto `{1..n}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitIndex {
    /// Cocharacter part, length `n`.
    pub lambda: Vec<i64>,
    /// The subset `I_s` of `{1..m}`, sorted increasingly.
    pub subset: Vec<usize>,
    /// `bij[a] = s(subset[a])`, a bijection onto `{1..n}`.
    pub bij: Vec<usize>,
}

impl OrbitIndex {
    pub fn new(lambda: Vec<i64>, subset: Vec<usize>, bij: Vec<usize>) -> OrbitIndex {
        let n = lambda.len();
        assert_eq!(subset.len(), n);
        assert_eq!(bij.len(), n);
        assert!(subset.windows(2).all(|w| w[0] < w[1]), "subset not sorted");
        let mut seen = vec![false; n];
        for &b in &bij {
            assert!(b >= 1 && b <= n && !seen[b - 1], "bij not a bijection");
            seen[b - 1] = true;
        }
        OrbitIndex { lambda, subset, bij }
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    /// `s(j)` for `j` in the subset.
    pub fn s_of(&self, j: usize) -> Option<usize> {
        let pos = self.subset.iter().position(|&x| x == j)?;
        Some(self.bij[pos])
    }

    /// The unique index with zero cocharacter and strictly decreasing
    /// enumeration on a given subset.
    pub fn decreasing(subset: &[usize]) -> OrbitIndex {
        let n = subset.len();
        // nu(1) = max, ..., nu(n) = min, so s(subset[a]) = n - a.
        let bij = (0..n).map(|a| n - a).collect();
        OrbitIndex::new(vec![0; n], subset.to_vec(), bij)
    }

    /// Whether the lambda part vanishes and the bijection is the
    /// decreasing one.
    pub fn is_decreasing(&self) -> bool {
        self.lambda.iter().all(|&a| a == 0)
            && self.bij.iter().enumerate().all(|(a, &b)| b == self.n() - a)
    }

    /// The `w_0`-type index on `{1..n}`: subset `{1..n}` with the longest
    /// finite element as bijection (which is the decreasing enumeration).
    pub fn w0_index(n: usize) -> OrbitIndex {
        OrbitIndex::decreasing(&(1..=n).collect::<Vec<_>>())
    }

    /// Filtration degree `<lambda, omega_n>`.
    pub fn degree(&self) -> i64 {
        self.lambda.iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lambda": self.lambda,
            "subset": self.subset,
            "bij": self.subset.iter().zip(&self.bij).map(|(j, s)| serde_json::json!([j, s])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Option<OrbitIndex> {
        let lambda: Vec<i64> = value
            .get("lambda")?
            .as_array()?
            .iter()
            .map(|v| v.as_i64())
            .collect::<Option<_>>()?;
        let subset: Vec<usize> = value
            .get("subset")?
            .as_array()?
            .iter()
            .map(|v| v.as_u64().map(|x| x as usize))
            .collect::<Option<_>>()?;
        let mut bij = vec![0usize; subset.len()];
        for pair in value.get("bij")?.as_array()? {
            let pair = pair.as_array()?;
            if pair.len() != 2 {
                return None;
            }
            let j = pair[0].as_u64()? as usize;
            let s = pair[1].as_u64()? as usize;
            let pos = subset.iter().position(|&x| x == j)?;
            bij[pos] = s;
        }
        // validate instead of panicking on malformed input
        let n = lambda.len();
        if subset.len() != n
            || !subset.windows(2).all(|w| w[0] < w[1])
            || !is_bijection(&bij, n)
        {
            return None;
        }
        Some(OrbitIndex::new(lambda, subset, bij))
    }
}

fn is_bijection(values: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    values.iter().all(|&b| {
        if b >= 1 && b <= n && !seen[b - 1] {
            seen[b - 1] = true;
            true
        } else {
            false
        }
    })
}

impl fmt::Debug for OrbitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?}->{:?})", self.lambda, self.subset, self.bij)
    }
}

/// Left action of `w = t^lambda1 tau1` on an orbit index:
/// `(lambda, s) -> (lambda1 + tau1(lambda), tau1 s)`.
pub fn action_on_orbit(w: &WeylElem, x: &OrbitIndex) -> OrbitIndex {
    assert_eq!(w.rank(), x.n(), "rank mismatch in orbit action");
    let (lambda1, tau1) = w.to_pair();
    let moved = tau1.act_on_vector(&x.lambda);
    let lambda = lambda1
        .iter()
        .zip(&moved)
        .map(|(a, b)| a + b)
        .collect();
    let bij = x.bij.iter().map(|&b| tau1.apply(b)).collect();
    OrbitIndex::new(lambda, x.subset.clone(), bij)
}

/// Factors `x = w . mu` with `mu` the decreasing index on the same subset;
/// `w` is unique.
pub fn orbit_factorize(x: &OrbitIndex) -> (WeylElem, OrbitIndex) {
    let n = x.n();
    let mu = OrbitIndex::decreasing(&x.subset);
    // tau(c) = s(nu(c)) where nu enumerates the subset decreasingly.
    let mut tau_images = vec![0usize; n];
    for c in 1..=n {
        let elem = x.subset[n - c]; // nu(c)
        tau_images[c - 1] = x.s_of(elem).unwrap();
    }
    let tau = Perm::from_images(&tau_images).unwrap();
    let w = WeylElem::from_pair(&x.lambda, &tau).unwrap();
    debug_assert_eq!(action_on_orbit(&w, &mu), *x);
    (w, mu)
}

/// Minimal-length representatives of `W_M \ W_H` for the block Levi
/// `(n, m-n)`: the permutations whose inverse is strictly increasing on
/// `{1..n}` and on `{n+1..m}`. There are `C(m, n)` of them, one per
/// `n`-subset `I = tau^{-1}({1..n})`.
pub fn minimal_coset_reps(n: usize, m: usize) -> Vec<Perm> {
    assert!(n >= 1 && n <= m);
    let mut out = Vec::new();
    for subset in subsets(m, n) {
        out.push(rep_for_subset(&subset, n, m));
    }
    out
}

/// The minimal representative with `tau^{-1}({1..n}) = subset`.
pub fn rep_for_subset(subset: &[usize], n: usize, m: usize) -> Perm {
    let mut images = vec![0usize; m];
    for (a, &j) in subset.iter().enumerate() {
        images[j - 1] = a + 1;
    }
    let mut next = n + 1;
    for j in 1..=m {
        if !subset.contains(&j) {
            images[j - 1] = next;
            next += 1;
        }
    }
    Perm::from_images(&images).unwrap()
}

/// All sorted `n`-subsets of `{1..m}`.
pub fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, m: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for j in start..=m {
            current.push(j);
            rec(j + 1, m, n, current, out);
            current.pop();
        }
    }
    rec(1, m, n, &mut current, &mut out);
    out
}

/// Evaluates `l(t^lambda) = sum_{i<j} |lambda_i - lambda_j|` directly.
pub fn translation_length(lambda: &[i64]) -> u64 {
    let mut out = 0;
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            out += (lambda[i] - lambda[j]).unsigned_abs();
        }
    }
    out
}

/// Shorthand used by callers that need `q^{l(w)}`-style coefficients.
pub fn v_power_of_length(w: &WeylElem) -> LaurentPoly {
    LaurentPoly::v(w.length() as i64)
}
