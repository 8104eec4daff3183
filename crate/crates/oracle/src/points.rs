//! Point grids `Pi_{N,r} = t^{-N} Pi / t^r Pi` over `F_q`, the
//! `I_H x I_G` orbit census by generator closure, expected orbit tables,
//! and characteristic functions of the explicit linear closures.

use std::collections::{BTreeMap, HashMap, HashSet};

use theta_core::weyl::OrbitIndex;

use crate::flag::OracleError;
use crate::trunc::{inv_mod, LPoly};

/// A truncation window for the pair `(GL_n, GL_m)` over `F_q`: points are
/// `n x m` matrices of t-expansions with levels in `[-N, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub n: usize,
    pub m: usize,
    pub big_n: i64,
    pub r: i64,
    pub q: u64,
}

impl Window {
    pub fn new(n: usize, m: usize, big_n: i64, r: i64, q: u64) -> Window {
        assert!(big_n + r > 0, "window must have positive depth");
        Window { n, m, big_n, r, q }
    }

    pub fn depth(&self) -> usize {
        (self.big_n + self.r) as usize
    }

    pub fn digits(&self) -> usize {
        self.n * self.m * self.depth()
    }

    pub fn num_points(&self) -> Option<u64> {
        let mut out: u64 = 1;
        for _ in 0..self.digits() {
            out = out.checked_mul(self.q)?;
        }
        Some(out)
    }

    fn slot(&self, row: usize, col: usize, level: i64) -> usize {
        debug_assert!(level >= -self.big_n && level < self.r);
        (row * self.m + col) * self.depth() + (level + self.big_n) as usize
    }

    pub fn decode(&self, mut index: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.digits()];
        for d in digits.iter_mut() {
            *d = index % self.q;
            index /= self.q;
        }
        digits
    }

    pub fn encode(&self, digits: &[u64]) -> u64 {
        let mut out = 0u64;
        for &d in digits.iter().rev() {
            out = out * self.q + d % self.q;
        }
        out
    }

    /// The matrix entry `(row, col)` of a digit vector as a polynomial.
    pub fn entry(&self, digits: &[u64], row: usize, col: usize) -> LPoly {
        let mut coeffs = Vec::with_capacity(self.depth());
        for level in -self.big_n..self.r {
            coeffs.push(digits[self.slot(row, col, level)]);
        }
        let mut poly = LPoly {
            lo: -self.big_n,
            coeffs,
        };
        while poly.coeffs.last() == Some(&0) {
            poly.coeffs.pop();
        }
        poly
    }

    /// Writes a polynomial entry back, reducing modulo `t^r` and requiring
    /// that nothing falls below the window.
    pub fn set_entry(&self, digits: &mut [u64], row: usize, col: usize, poly: &LPoly) {
        for level in -self.big_n..self.r {
            digits[self.slot(row, col, level)] = 0;
        }
        for (i, &c) in poly.coeffs.iter().enumerate() {
            let level = poly.lo + i as i64;
            if c % self.q == 0 {
                continue;
            }
            if level >= self.r {
                continue; // reduction mod t^r
            }
            assert!(
                level >= -self.big_n,
                "entry falls below the window: level {level}, N {}",
                self.big_n
            );
            digits[self.slot(row, col, level)] = c % self.q;
        }
    }
}

/// One elementary move of the Iwahori pair on a point grid.
#[derive(Clone, Debug)]
pub enum Move {
    /// `row_dst += c t^e row_src` (left action of `e_{dst,src}(c t^e)`).
    RowAdd { dst: usize, src: usize, exp: i64, c: u64 },
    /// `row *= c`.
    RowScale { row: usize, c: u64 },
    /// `row *= 1 + c t^e` with `e >= 1`.
    RowUnit { row: usize, exp: i64, c: u64 },
    /// `col_dst += c t^e col_src` (dual action of `e_{dst,src}(c t^e)` in `I_H`).
    ColAdd { dst: usize, src: usize, exp: i64, c: u64 },
    /// `col *= c`.
    ColScale { col: usize, c: u64 },
    /// `col *= 1 + c t^e` with `e >= 1`.
    ColUnit { col: usize, exp: i64, c: u64 },
}

impl Move {
    /// Applies the move while maintaining the base-q index of the point,
    /// so orbit closures never re-encode whole digit vectors.
    pub fn apply_tracked(&self, win: &Window, digits: &mut [u64], pows: &[u64], index: &mut u64) {
        let q = win.q;
        let mut write = |digits: &mut [u64], slot: usize, value: u64| {
            let old = digits[slot];
            if old != value {
                *index -= old * pows[slot];
                *index += value * pows[slot];
                digits[slot] = value;
            }
        };
        match *self {
            Move::RowAdd { dst, src, exp, c } => {
                for col in 0..win.m {
                    for level in -win.big_n..(win.r - exp) {
                        let from = digits[win.slot(src, col, level)];
                        if from != 0 {
                            let slot = win.slot(dst, col, level + exp);
                            write(digits, slot, (digits[slot] + c * from) % q);
                        }
                    }
                }
            }
            Move::RowScale { row, c } => {
                for col in 0..win.m {
                    for level in -win.big_n..win.r {
                        let slot = win.slot(row, col, level);
                        write(digits, slot, digits[slot] * c % q);
                    }
                }
            }
            Move::RowUnit { row, exp, c } => {
                for col in 0..win.m {
                    for level in (-win.big_n..win.r).rev() {
                        if level - exp < -win.big_n {
                            break;
                        }
                        let from = digits[win.slot(row, col, level - exp)];
                        if from != 0 {
                            let slot = win.slot(row, col, level);
                            write(digits, slot, (digits[slot] + c * from) % q);
                        }
                    }
                }
            }
            Move::ColAdd { dst, src, exp, c } => {
                for row in 0..win.n {
                    for level in -win.big_n..(win.r - exp) {
                        let from = digits[win.slot(row, src, level)];
                        if from != 0 {
                            let slot = win.slot(row, dst, level + exp);
                            write(digits, slot, (digits[slot] + c * from) % q);
                        }
                    }
                }
            }
            Move::ColScale { col, c } => {
                for row in 0..win.n {
                    for level in -win.big_n..win.r {
                        let slot = win.slot(row, col, level);
                        write(digits, slot, digits[slot] * c % q);
                    }
                }
            }
            Move::ColUnit { col, exp, c } => {
                for row in 0..win.n {
                    for level in (-win.big_n..win.r).rev() {
                        if level - exp < -win.big_n {
                            break;
                        }
                        let from = digits[win.slot(row, col, level - exp)];
                        if from != 0 {
                            let slot = win.slot(row, col, level);
                            write(digits, slot, (digits[slot] + c * from) % q);
                        }
                    }
                }
            }
        }
    }

    pub fn apply(&self, win: &Window, digits: &mut [u64]) {
        let d = win.depth();
        let q = win.q;
        match *self {
            Move::RowAdd { dst, src, exp, c } => {
                for col in 0..win.m {
                    for level in -win.big_n..(win.r - exp) {
                        let from = digits[win.slot(src, col, level)];
                        if from != 0 {
                            let slot = win.slot(dst, col, level + exp);
                            digits[slot] = (digits[slot] + c * from) % q;
                        }
                    }
                }
                let _ = d;
            }
            Move::RowScale { row, c } => {
                for col in 0..win.m {
                    for level in -win.big_n..win.r {
                        let slot = win.slot(row, col, level);
                        digits[slot] = digits[slot] * c % q;
                    }
                }
            }
            Move::RowUnit { row, exp, c } => {
                debug_assert!(exp >= 1);
                for col in 0..win.m {
                    for level in (-win.big_n..win.r).rev() {
                        if level - exp < -win.big_n {
                            break;
                        }
                        let from = digits[win.slot(row, col, level - exp)];
                        if from != 0 {
                            let slot = win.slot(row, col, level);
                            digits[slot] = (digits[slot] + c * from) % q;
                        }
                    }
                }
            }
            Move::ColAdd { dst, src, exp, c } => {
                for row in 0..win.n {
                    for level in -win.big_n..(win.r - exp) {
                        let from = digits[win.slot(row, src, level)];
                        if from != 0 {
                            let slot = win.slot(row, dst, level + exp);
                            digits[slot] = (digits[slot] + c * from) % q;
                        }
                    }
                }
            }
            Move::ColScale { col, c } => {
                for row in 0..win.n {
                    for level in -win.big_n..win.r {
                        let slot = win.slot(row, col, level);
                        digits[slot] = digits[slot] * c % q;
                    }
                }
            }
            Move::ColUnit { col, exp, c } => {
                debug_assert!(exp >= 1);
                for row in 0..win.n {
                    for level in (-win.big_n..win.r).rev() {
                        if level - exp < -win.big_n {
                            break;
                        }
                        let from = digits[win.slot(row, col, level - exp)];
                        if from != 0 {
                            let slot = win.slot(row, col, level);
                            digits[slot] = (digits[slot] + c * from) % q;
                        }
                    }
                }
            }
        }
    }
}

/// The generator moves of `I_G x I_H` on a window: row operations from the
/// `GL_n` Iwahori on the left, column operations from the dual `GL_m`
/// Iwahori action `v -> v . h^t`, both with inverses included.
pub fn orbit_moves(win: &Window) -> Vec<Move> {
    let mut out = Vec::new();
    let d = win.depth() as i64;
    let q = win.q;
    // G side: e_{il}(t^a) with a >= 1 when i > l
    for i in 0..win.n {
        for l in 0..win.n {
            if i == l {
                continue;
            }
            let lo = if i > l { 1 } else { 0 };
            for a in lo..d {
                for c in [1, q - 1] {
                    out.push(Move::RowAdd { dst: i, src: l, exp: a, c });
                }
            }
        }
    }
    for i in 0..win.n {
        for c in 2..q {
            out.push(Move::RowScale { row: i, c });
        }
        for a in 1..d {
            for c in 1..q {
                out.push(Move::RowUnit { row: i, exp: a, c });
            }
        }
    }
    // H side: the dual action of e_{jl}(t^a) adds t^a col_l into col_j
    for j in 0..win.m {
        for l in 0..win.m {
            if j == l {
                continue;
            }
            let lo = if j > l { 1 } else { 0 };
            for a in lo..d {
                for c in [1, q - 1] {
                    out.push(Move::ColAdd { dst: j, src: l, exp: a, c });
                }
            }
        }
    }
    for j in 0..win.m {
        for c in 2..q {
            out.push(Move::ColScale { col: j, c });
        }
        for a in 1..d {
            for c in 1..q {
                out.push(Move::ColUnit { col: j, exp: a, c });
            }
        }
    }
    out
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(size: usize) -> UnionFind {
        UnionFind {
            parent: (0..size as u32).collect(),
        }
    }

    fn find(&mut self, a: u32) -> u32 {
        let mut root = a;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut at = a;
        while self.parent[at as usize] != root {
            let next = self.parent[at as usize];
            self.parent[at as usize] = root;
            at = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so output is canonical
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// The full orbit partition of a window.
pub struct Census {
    pub win: Window,
    /// Orbit sizes keyed by the minimal point index of each orbit.
    pub orbit_sizes: BTreeMap<u64, u64>,
    /// Root point of every grid point.
    roots: Vec<u32>,
}

impl Census {
    pub fn root_of(&self, point: u64) -> u64 {
        self.roots[point as usize] as u64
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit_sizes.len()
    }
}

/// Enumerates all `I_H x I_G`-orbits on the window by generator closure.
pub fn enumerate_orbits(win: &Window, budget: u64) -> Result<Census, OracleError> {
    let total = win.num_points().ok_or(OracleError::BudgetExceeded(u64::MAX))?;
    if total > budget {
        return Err(OracleError::BudgetExceeded(total));
    }
    let moves = orbit_moves(win);
    let pows = index_powers(win);
    let mut uf = UnionFind::new(total as usize);
    let mut scratch = vec![0u64; win.digits()];
    for point in 0..total {
        let digits = win.decode(point);
        for mv in &moves {
            scratch.copy_from_slice(&digits);
            let mut image = point;
            mv.apply_tracked(win, &mut scratch, &pows, &mut image);
            if image != point {
                uf.union(point as u32, image as u32);
            }
        }
    }
    let mut orbit_sizes = BTreeMap::new();
    let mut roots = vec![0u32; total as usize];
    for point in 0..total {
        let root = uf.find(point as u32);
        roots[point as usize] = root;
        *orbit_sizes.entry(root as u64).or_insert(0) += 1;
    }
    Ok(Census {
        win: *win,
        orbit_sizes,
        roots,
    })
}

/// The closure of a single orbit through one point, by breadth-first
/// generator closure (no full-grid enumeration).
pub fn orbit_of(win: &Window, point: u64) -> HashSet<u64> {
    let moves = orbit_moves(win);
    let pows = index_powers(win);
    let mut seen = HashSet::new();
    seen.insert(point);
    let mut frontier = vec![point];
    let mut scratch = vec![0u64; win.digits()];
    while let Some(at) = frontier.pop() {
        let digits = win.decode(at);
        for mv in &moves {
            scratch.copy_from_slice(&digits);
            let mut image = at;
            mv.apply_tracked(win, &mut scratch, &pows, &mut image);
            if seen.insert(image) {
                frontier.push(image);
            }
        }
    }
    seen
}

fn index_powers(win: &Window) -> Vec<u64> {
    let mut pows = Vec::with_capacity(win.digits());
    let mut p = 1u64;
    for _ in 0..win.digits() {
        pows.push(p);
        p = p.saturating_mul(win.q);
    }
    pows
}

/// All orbit indices admissible at the window (`-N <= a_i < r`), with the
/// standard representative point `v(u*_j) = t^{a_{s(j)}} e_{s(j)}`.
pub fn expected_orbit_table(win: &Window) -> Vec<(OrbitIndex, u64)> {
    let n = win.n;
    let mut lambdas: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for l in &lambdas {
            for a in -win.big_n..win.r {
                let mut l2 = l.clone();
                l2.push(a);
                next.push(l2);
            }
        }
        lambdas = next;
    }
    let mut out = Vec::new();
    for subset in theta_core::weyl::subsets(win.m, n) {
        for perm in permutations(n) {
            for lambda in &lambdas {
                let bij: Vec<usize> = perm.clone();
                let index = OrbitIndex::new(lambda.clone(), subset.clone(), bij);
                out.push((index.clone(), representative(win, &index)));
            }
        }
    }
    out
}

/// The standard representative point of an orbit index.
pub fn representative(win: &Window, index: &OrbitIndex) -> u64 {
    let mut digits = vec![0u64; win.digits()];
    for (pos, &col) in index.subset.iter().enumerate() {
        let row = index.bij[pos];
        let a = index.lambda[row - 1];
        assert!(a >= -win.big_n && a < win.r, "index not admissible here");
        digits[win.slot(row - 1, col - 1, a)] = 1;
    }
    win.encode(&digits)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n);
            out.push(p);
        }
    }
    out
}

/// Matching of the expected orbit table against a census: every expected
/// representative must land in a distinct orbit; the remainder is reported
/// as leftover orbits (strata outside the admissibility window, e.g. the
/// zero map).
pub struct Matching {
    pub matched: Vec<(OrbitIndex, u64, u64)>, // index, orbit root, size
    pub leftovers: Vec<(u64, u64)>,           // root, size
}

pub fn match_census(census: &Census) -> Result<Matching, OracleError> {
    let table = expected_orbit_table(&census.win);
    let mut by_root: HashMap<u64, OrbitIndex> = HashMap::new();
    let mut matched = Vec::new();
    for (index, rep) in table {
        let root = census.root_of(rep);
        if let Some(previous) = by_root.get(&root) {
            return Err(OracleError::IndexCollision(format!(
                "{previous:?} and {index:?}"
            )));
        }
        let size = census.orbit_sizes[&root];
        by_root.insert(root, index.clone());
        matched.push((index, root, size));
    }
    let leftovers = census
        .orbit_sizes
        .iter()
        .filter(|(root, _)| !by_root.contains_key(root))
        .map(|(&root, &size)| (root, size))
        .collect();
    Ok(Matching { matched, leftovers })
}

/// Characteristic function of the explicit linear closure of a decreasing
/// orbit index: column `c` lies in `L_{g(c)}(O)` where `g(c)` counts the
/// subset elements `>= c`.
pub fn closure_char(win: &Window, index: &OrbitIndex) -> Result<Vec<i64>, OracleError> {
    if !index.is_decreasing() {
        return Err(OracleError::UnsupportedIndex);
    }
    let total = win.num_points().ok_or(OracleError::BudgetExceeded(u64::MAX))?;
    let mut out = vec![0i64; total as usize];
    'point: for point in 0..total {
        let digits = win.decode(point);
        for col in 0..win.m {
            let g = index.subset.iter().filter(|&&j| j > col).count();
            for row in 0..win.n {
                let poly = win.entry(&digits, row, col);
                let bound = if row < g { 0 } else { win.r };
                if poly.coeffs.iter().enumerate().any(|(i, &c)| {
                    c != 0 && poly.lo + (i as i64) < bound
                }) {
                    continue 'point;
                }
            }
        }
        out[point as usize] = 1;
    }
    Ok(out)
}

/// Inverse of a block scalar used by the Jacquet check.
pub fn unit_inverse(c: u64, q: u64) -> u64 {
    inv_mod(c, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_one_by_one() {
        // n = m = 1, N = r = 1, q = 2: orbits of sizes 2, 1 and the zero map
        let win = Window::new(1, 1, 1, 1, 2);
        let census = enumerate_orbits(&win, 1 << 20).unwrap();
        let matching = match_census(&census).unwrap();
        assert_eq!(matching.matched.len(), 2);
        let mut sizes: Vec<u64> = matching.matched.iter().map(|(_, _, s)| *s).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);
        assert_eq!(matching.leftovers, vec![(0, 1)]); // the zero point
    }

    #[test]
    fn census_one_by_two() {
        // n=1, m=2, N=0, r=1: indices (0,{1}) and (0,{2}) plus zero
        let win = Window::new(1, 2, 0, 1, 2);
        let census = enumerate_orbits(&win, 1 << 20).unwrap();
        let matching = match_census(&census).unwrap();
        assert_eq!(matching.matched.len(), 2);
        assert_eq!(matching.leftovers.len(), 1);
        let total: u64 = matching.matched.iter().map(|(_, _, s)| s).sum::<u64>()
            + matching.leftovers[0].1;
        assert_eq!(total, 4);
    }

    #[test]
    fn orbit_sizes_at_multiple_q() {
        // n=m=1, N=1, r=1, a=-1 stratum has q^2 - q points
        for q in [2u64, 3, 5] {
            let win = Window::new(1, 1, 1, 1, q);
            let census = enumerate_orbits(&win, 1 << 22).unwrap();
            let matching = match_census(&census).unwrap();
            let minus_one = matching
                .matched
                .iter()
                .find(|(idx, _, _)| idx.lambda == vec![-1])
                .unwrap();
            assert_eq!(minus_one.2, q * q - q);
            let zero = matching
                .matched
                .iter()
                .find(|(idx, _, _)| idx.lambda == vec![0])
                .unwrap();
            assert_eq!(zero.2, q - 1);
        }
    }

    #[test]
    fn census_is_deterministic() {
        let win = Window::new(1, 2, 1, 1, 3);
        let a = enumerate_orbits(&win, 1 << 22).unwrap();
        let b = enumerate_orbits(&win, 1 << 22).unwrap();
        assert_eq!(a.orbit_sizes, b.orbit_sizes);
        assert_eq!(a.roots, b.roots);
    }

    #[test]
    fn closure_description() {
        // n=1, m=2, mu = (0,{1}): closure is {column 2 = 0}
        let win = Window::new(1, 2, 0, 1, 3);
        let mu = OrbitIndex::decreasing(&[1]);
        let f = closure_char(&win, &mu).unwrap();
        let total = win.num_points().unwrap();
        for point in 0..total {
            let digits = win.decode(point);
            let col2_zero = (0..win.n).all(|row| win.entry(&digits, row, 1).is_zero());
            assert_eq!(f[point as usize] == 1, col2_zero);
        }
    }
}
