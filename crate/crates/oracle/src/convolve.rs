//! Function-level Hecke convolution on truncated windows:
//! `(T_w f)(v) = sum over cosets x in IwI/I of f(x^{-1} . v)`, with the
//! `G` factor acting by left matrix multiplication on the `L`-side and the
//! `H` factor through the transpose action on the `U`-side.

use theta_core::hecke::HeckeElem;
use theta_core::weyl::WeylElem;

use crate::flag::{coset_reps, window_bounds, OracleError};
use crate::points::Window;
use crate::trunc::{LMat, LPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    G,
    H,
}

/// An integer-valued function on a window.
#[derive(Clone, Debug)]
pub struct Func {
    pub win: Window,
    pub values: Vec<i64>,
}

impl Func {
    pub fn characteristic(win: &Window, predicate: impl Fn(u64) -> bool) -> Func {
        let total = win.num_points().unwrap();
        Func {
            win: *win,
            values: (0..total).map(|p| i64::from(predicate(p))).collect(),
        }
    }

    pub fn from_values(win: &Window, values: Vec<i64>) -> Func {
        assert_eq!(values.len() as u64, win.num_points().unwrap());
        Func { win: *win, values }
    }

    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }
}

/// The output window of a `T_w` convolution: evaluation points shrink by
/// the upper window bound of `w` and deepen by the same amount, keeping
/// the total depth.
pub fn output_window(win: &Window, w: &WeylElem) -> Window {
    let (s1, _) = window_bounds(w);
    Window::new(win.n, win.m, win.big_n - s1, win.r + s1, win.q)
}

fn point_matrix(win: &Window, point: u64) -> Vec<LPoly> {
    let digits = win.decode(point);
    let mut out = Vec::with_capacity(win.n * win.m);
    for row in 0..win.n {
        for col in 0..win.m {
            out.push(win.entry(&digits, row, col));
        }
    }
    out
}

/// Applies `x^{-1}` to a point and reads it in the `f` window; the window
/// slack guarantees nothing falls below, and levels at `r` and above
/// reduce away.
fn transform(
    side: Side,
    xinv: &LMat,
    mat: &[LPoly],
    out_win: &Window,
    f_win: &Window,
) -> u64 {
    let q = f_win.q;
    let cut = f_win.r;
    let (n, m) = (out_win.n, out_win.m);
    let mut digits = vec![0u64; f_win.digits()];
    for row in 0..n {
        for col in 0..m {
            let mut acc = LPoly::zero();
            match side {
                Side::G => {
                    // y = xinv . v
                    for l in 0..n {
                        acc = acc.add(&xinv.at(row, l).mul_trunc(&mat[l * m + col], q, cut), q);
                    }
                }
                Side::H => {
                    // y = v . (xinv)^t
                    for l in 0..m {
                        acc = acc.add(&mat[row * m + l].mul_trunc(xinv.at(col, l), q, cut), q);
                    }
                }
            }
            f_win.set_entry(&mut digits, row, col, &acc);
        }
    }
    f_win.encode(&digits)
}

/// `T_w . f` evaluated on `out_win` (any window at least as deep as the
/// canonical output window).
pub fn convolve_at(
    side: Side,
    w: &WeylElem,
    f: &Func,
    out_win: &Window,
) -> Result<Func, OracleError> {
    let rank = match side {
        Side::G => f.win.n,
        Side::H => f.win.m,
    };
    assert_eq!(w.rank(), rank, "acting element has the wrong rank");
    let (s1, s2) = window_bounds(w);
    if out_win.big_n + s1 > f.win.big_n || out_win.r - s1 < f.win.r {
        return Err(OracleError::InsufficientSlack);
    }
    let depth = (s1 + s2 + 1).max(f.win.depth() as i64);
    let cut = f.win.r + out_win.big_n + s1 + 2;
    let reps = coset_reps(w, depth, f.win.q, cut)?;
    let total = out_win.num_points().unwrap();
    let mut values = vec![0i64; total as usize];
    for point in 0..total {
        let mat = point_matrix(out_win, point);
        let mut acc = 0i64;
        for (_, xinv) in &reps {
            let image = transform(side, xinv, &mat, out_win, &f.win);
            acc += f.values[image as usize];
        }
        values[point as usize] = acc;
    }
    Ok(Func {
        win: *out_win,
        values,
    })
}

pub fn convolve(side: Side, w: &WeylElem, f: &Func) -> Result<(Func, Window), OracleError> {
    let out_win = output_window(&f.win, w);
    let g = convolve_at(side, w, f, &out_win)?;
    Ok((g, out_win))
}

/// Convolution by a symbolic Hecke element whose coefficients specialize
/// to integers at `v^2 = q` (all exponents even).
pub fn convolve_elem(
    side: Side,
    h: &HeckeElem,
    f: &Func,
    out_win: &Window,
) -> Result<Func, OracleError> {
    let total = out_win.num_points().unwrap();
    let mut values = vec![0i64; total as usize];
    for (w, c) in h.terms() {
        let (even, odd) = c.specialize(f.win.q);
        assert!(odd == num_rational::BigRational::from_integer(0.into()));
        assert!(even.is_integer(), "coefficient does not specialize integrally");
        let scalar: i64 = i64::try_from(even.to_integer()).expect("coefficient overflow");
        let part = convolve_at(side, w, f, out_win)?;
        for (slot, v) in values.iter_mut().zip(&part.values) {
            *slot += scalar * v;
        }
    }
    Ok(Func {
        win: *out_win,
        values,
    })
}

/// Outcome of comparing two functions on the same window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    /// `fa = q^e fb` with a single integer exponent.
    Ratio { exponent: i64 },
    BothZero,
    Fail { reason: String },
}

pub fn compare(fa: &Func, fb: &Func) -> Comparison {
    assert_eq!(fa.win, fb.win);
    let q = fa.win.q as i64;
    let mut ratio: Option<(i64, i64)> = None; // reduced (num, den)
    for (a, b) in fa.values.iter().zip(&fb.values) {
        match (*a != 0, *b != 0) {
            (false, false) => continue,
            (true, false) | (false, true) => {
                return Comparison::Fail {
                    reason: "supports differ".into(),
                }
            }
            (true, true) => {
                let g = gcd(a.abs(), b.abs());
                let current = (a / g, b / g);
                match ratio {
                    None => ratio = Some(current),
                    Some(previous) if previous == current => {}
                    Some(previous) => {
                        return Comparison::Fail {
                            reason: format!(
                                "inconsistent constants {previous:?} vs {current:?}"
                            ),
                        }
                    }
                }
            }
        }
    }
    let Some((num, den)) = ratio else {
        return Comparison::BothZero;
    };
    // must be a power of q one way or the other
    let as_power = |mut x: i64| -> Option<i64> {
        let mut e = 0;
        while x > 1 {
            if x % q != 0 {
                return None;
            }
            x /= q;
            e += 1;
        }
        Some(e)
    };
    match (num, den) {
        (n, 1) if n > 0 => match as_power(n) {
            Some(e) => Comparison::Ratio { exponent: e },
            None => Comparison::Fail {
                reason: format!("ratio {n} is not a power of q"),
            },
        },
        (1, d) if d > 0 => match as_power(d) {
            Some(e) => Comparison::Ratio { exponent: -e },
            None => Comparison::Fail {
                reason: format!("ratio 1/{d} is not a power of q"),
            },
        },
        _ => Comparison::Fail {
            reason: format!("ratio {num}/{den} is not a power of q"),
        },
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::{orbit_of, representative, Window};
    use theta_core::weyl::OrbitIndex;

    fn orbit_char(win: &Window, index: &OrbitIndex) -> Func {
        let orbit = orbit_of(win, representative(win, index));
        Func::characteristic(win, |p| orbit.contains(&p))
    }

    #[test]
    fn identity_convolution() {
        let win = Window::new(1, 2, 0, 1, 2);
        let f = orbit_char(&win, &OrbitIndex::decreasing(&[1]));
        let (g, out) = convolve(Side::G, &WeylElem::identity(1), &f).unwrap();
        assert_eq!(out, win);
        assert_eq!(g.values, f.values);
    }

    #[test]
    fn translation_moves_the_orbit() {
        // n = m = 1: T_{t^1} carries the level-0 orbit to level 1
        let win = Window::new(1, 1, 0, 2, 3);
        let f = orbit_char(&win, &OrbitIndex::new(vec![0], vec![1], vec![1]));
        let (g, out) = convolve(Side::G, &WeylElem::translation(&[1]), &f).unwrap();
        let target = orbit_char(&out, &OrbitIndex::new(vec![1], vec![1], vec![1]));
        assert_eq!(compare(&g, &target), Comparison::Ratio { exponent: 0 });
    }

    #[test]
    fn reflection_support() {
        // n=1, m=2: T_{tau_1} applied to the (0,{1}) orbit is supported on
        // the (0,{2}) orbit with constant 1
        let win = Window::new(1, 2, 0, 1, 3);
        let f = orbit_char(&win, &OrbitIndex::decreasing(&[1]));
        let (g, out) = convolve(Side::H, &WeylElem::simple(2, 1), &f).unwrap();
        assert_eq!(out, win);
        let target = orbit_char(&win, &OrbitIndex::decreasing(&[2]));
        assert_eq!(compare(&g, &target), Comparison::Ratio { exponent: 0 });
    }

    #[test]
    fn compare_detects_scalar() {
        let win = Window::new(1, 1, 0, 1, 2);
        let f = Func::characteristic(&win, |p| p == 1);
        let g = Func::from_values(&win, f.values.iter().map(|v| 2 * v).collect());
        assert_eq!(compare(&g, &f), Comparison::Ratio { exponent: 1 });
        assert_eq!(compare(&f, &g), Comparison::Ratio { exponent: -1 });
        let h = Func::characteristic(&win, |p| p == 0);
        assert!(matches!(compare(&f, &h), Comparison::Fail { .. }));
    }
}
