//! End-to-end oracle checks on small windows: censuses, coset counts,
//! dimension fits, the convolution identity suite, the intersection
//! cohomology cases, and the Jacquet commutation.

use theta_core::weyl::{self, OrbitIndex, Perm, WeylElem};
use theta_oracle::checks::{
    census_check, square_ic_check, coset_count_check, dimension_fit, standard_action_check,
    ic_cases_check, jacquet_check, block_costandard_check, block_translation_check, levi_translation_check,
    orbit_count_check, orbit_dimension, dominant_shift_check, finite_action_check,
};
use theta_oracle::points::Window;

fn assert_all(checks: &[theta_oracle::Check]) {
    for c in checks {
        assert!(
            c.ok,
            "{} failed: measured {:?}, predicted {:?}, {}",
            c.name, c.measured, c.predicted, c.note
        );
    }
}

#[test]
fn censuses_small() {
    let budget = 1 << 22;
    for (n, m, big_n, r) in [(1, 1, 1, 1), (1, 2, 0, 1), (1, 2, 1, 1), (2, 2, 0, 1)] {
        for q in [2u64, 3] {
            let win = Window::new(n, m, big_n, r, q);
            let checks = census_check(&win, budget).unwrap();
            assert_all(&checks);
        }
    }
}

#[test]
fn coset_counts_small() {
    for q in [2u64, 3] {
        for k in 2..=3usize {
            let mut elems = vec![
                WeylElem::identity(k),
                WeylElem::simple(k, 0),
                WeylElem::simple(k, 1),
            ];
            elems.push(WeylElem::simple(k, 1).mul(&WeylElem::simple(k, 0)).unwrap());
            for w in elems {
                let (s1, s2) = theta_oracle::flag::window_bounds(&w);
                let check = coset_count_check(&w, (s1 + s2 + 1).max(3), q).unwrap();
                assert!(check.ok, "{}: {:?} vs {:?}", check.name, check.measured, check.predicted);
            }
        }
    }
}

#[test]
fn dimension_fits() {
    // the a = -1 orbit for n = m = 1 at (1,1) has q^2 - q points: degree 2
    let idx = OrbitIndex::new(vec![-1], vec![1], vec![1]);
    let deg = orbit_dimension(1, 1, 1, 1, &idx, &[2, 3, 5, 7], 2).unwrap();
    assert_eq!(deg, 2);
    // w_0 orbit at (0, r): degree (r-1) m n + n(n+1)/2
    for (n, m, r) in [(1usize, 1usize, 1i64), (1, 2, 1), (2, 2, 1), (1, 1, 2), (1, 2, 2)] {
        let expect = ((r - 1) as usize) * m * n + n * (n + 1) / 2;
        let deg = orbit_dimension(n, m, 0, r, &OrbitIndex::w0_index(n), &[2, 3, 5, 7, 11, 13], expect)
            .unwrap();
        assert_eq!(deg, expect, "w0 orbit at n={n} m={m} r={r}");
    }
    // the shifted orbit (-w0 lambda1, w0): dimension
    // nm(r-1) + m<l1,omega> + n(n+1)/2 + <l1,2rho_G>, checked through the
    // exact cell count (q-1)^n q^{dim-n} at each prime
    for (n, m, lambda1, big_n, r) in [
        (1usize, 2usize, vec![1i64], 1i64, 2i64),
        (2, 2, vec![1, 0], 1, 2),
        (1, 2, vec![2], 2, 2),
        (2, 3, vec![1, 1], 1, 2),
    ] {
        let neg_w0: Vec<i64> = Perm::longest(n)
            .act_on_vector(&lambda1)
            .iter()
            .map(|a| -a)
            .collect();
        let idx = weyl::action_on_orbit(
            &WeylElem::translation(&neg_w0),
            &OrbitIndex::w0_index(n),
        );
        let dim = n * m * ((r - 1) as usize)
            + m * lambda1.iter().sum::<i64>() as usize
            + n * (n + 1) / 2
            + weyl::two_rho_pairing(&lambda1) as usize;
        // keep the orbit enumeration within budget: (q-1)^n q^{dim-n} points
        for q in [2u64, 3] {
            if (q - 1).pow(n as u32) * q.pow((dim - n) as u32) > (1 << 20) {
                continue;
            }
            let check = orbit_count_check(n, m, big_n, r, &idx, dim, q);
            assert!(check.ok, "{}: {:?}", check.name, check);
        }
    }
    // the zero orbit is a point at every q: degree 0
    let zero_sizes: Vec<(u64, u64)> = [2u64, 3, 5]
        .iter()
        .map(|&q| {
            let win = Window::new(1, 1, 0, 1, q);
            (q, theta_oracle::points::orbit_of(&win, 0).len() as u64)
        })
        .collect();
    assert_eq!(dimension_fit(&zero_sizes, 0).unwrap(), 0);
    // a non-polynomial family is rejected
    assert!(dimension_fit(&[(2, 1), (3, 2), (5, 4), (7, 9)], 1).is_err());
}

#[test]
fn convolution_identities() {
    for q in [2u64, 3] {
        // standard-class action on both shapes
        for (n, m) in [(1usize, 2usize), (2, 2)] {
            let win = Window::new(n, m, 1, 2, q);
            let mu = OrbitIndex::decreasing(&(1..=n).collect::<Vec<_>>());
            let mut elems = vec![WeylElem::translation(
                &(0..n).map(|i| i64::from(i == 0)).collect::<Vec<_>>(),
            )];
            if n >= 2 {
                elems.push(WeylElem::simple(n, 1));
            }
            for w in elems {
                let check = standard_action_check(&win, &w, &mu).unwrap();
                assert!(check.ok, "{}: {:?}", check.name, check);
            }
        }
        // finite Weyl action for every tau at (1,2) and (1,3)
        for (n, m) in [(1usize, 2usize), (1, 3)] {
            let win = Window::new(n, m, 0, 1, q);
            for tau in all_perms(m) {
                let check = finite_action_check(&win, &tau).unwrap();
                assert!(check.ok, "{}: {:?}", check.name, check);
            }
        }
        // the M2 translation identities at (1,2) and the Levi shifts
        let win = Window::new(1, 2, 1, 1, q);
        for a in 0..=1i64 {
            let check = block_translation_check(&win, &[a], &Perm::identity(1)).unwrap();
            assert!(check.ok, "{}: {:?}", check.name, check);
            let check = block_costandard_check(&win, &[a]).unwrap();
            assert!(check.ok, "{}: {:?}", check.name, check);
        }
        for a in -1..=0i64 {
            let check = levi_translation_check(&win, &[a]).unwrap();
            assert!(check.ok, "{}: {:?}", check.name, check);
        }
        for lambda in [[1i64, 0], [1, 1]] {
            let check = dominant_shift_check(&win, &lambda).unwrap();
            assert!(check.ok, "{}: {:?}", check.name, check);
        }
    }
}

fn all_perms(m: usize) -> Vec<Perm> {
    fn rec(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for mut tail in rec(rest) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }
    rec((1..=m).collect())
        .into_iter()
        .map(|images| Perm::from_images(&images).unwrap())
        .collect()
}

#[test]
fn ic_cases_small() {
    for q in [2u64, 3] {
        assert_all(&ic_cases_check(1, 2, q).unwrap());
        assert_all(&ic_cases_check(1, 3, q).unwrap());
        assert_all(&square_ic_check(2, q).unwrap());
    }
}

#[test]
fn jacquet_small() {
    for q in [2u64, 3] {
        for lambda in [[1i64, 0], [1, 1]] {
            let check = jacquet_check(2, 1, 1, &lambda, q).unwrap();
            assert!(check.ok, "{}: {:?}", check.name, check);
        }
    }
}
