//! Property and invariant tests for the symbolic core: ring axioms,
//! length vs. shortest-word agreement, (anti-)automorphism laws, the
//! bimodule's module axioms, and the exact shift identities.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use theta_core::bimodule::{self, act_left, act_right, from_induced, to_induced, ThetaElem};
use theta_core::hecke::HeckeElem;
use theta_core::laurent::LaurentPoly;
use theta_core::weyl::{
    self, action_on_orbit, orbit_factorize, OrbitIndex, Perm, WeylElem,
};

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -9i64..=9), 0..5).prop_map(|terms| {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_monomial(e, &BigInt::from(c));
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn specialize_is_multiplicative(a in arb_laurent(), b in arb_laurent()) {
        for q0 in [2u64, 3, 5] {
            let (pe, po) = (&a * &b).specialize(q0);
            let (ae, ao) = a.specialize(q0);
            let (be, bo) = b.specialize(q0);
            // (ae + ao v)(be + bo v) with v^2 = q0
            let q = num_rational::BigRational::from_integer(BigInt::from(q0));
            prop_assert_eq!(pe, &ae * &be + &(&ao * &bo) * &q);
            prop_assert_eq!(po, &ae * &bo + &ao * &be);
        }
    }

    #[test]
    fn laurent_json_round_trip(a in arb_laurent()) {
        prop_assert_eq!(LaurentPoly::from_json(&a.to_json()).unwrap(), a);
    }
}

#[test]
fn emitted_json_parses_back() {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let w = rng_weyl(&mut rng, k, 3);
        assert_eq!(WeylElem::from_json(&w.to_json()).unwrap(), w);
        let h = rng_hecke(&mut rng, k, 3, 2);
        assert_eq!(HeckeElem::from_json(&h.to_json()).unwrap(), h);
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(n..=3);
        let x = rng_theta(&mut rng, n, m, 3);
        assert_eq!(ThetaElem::from_json(&x.to_json()).unwrap(), x);
    }
}

/// All elements of shortest-word length <= `depth` in the non-extended
/// affine group, with their BFS distances.
fn bfs_lengths(k: usize, depth: u64) -> BTreeMap<WeylElem, u64> {
    let mut dist = BTreeMap::new();
    let mut frontier = vec![WeylElem::identity(k)];
    dist.insert(WeylElem::identity(k), 0u64);
    for d in 1..=depth {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..k {
                let sw = WeylElem::simple(k, i).mul(w).unwrap();
                if !dist.contains_key(&sw) {
                    dist.insert(sw.clone(), d);
                    next.push(sw);
                }
            }
        }
        frontier = next;
    }
    dist
}

#[test]
fn length_equals_bfs_distance() {
    for k in 2..=3 {
        for (w, d) in bfs_lengths(k, 5) {
            assert_eq!(w.length(), d, "k={k} w={w:?}");
            // rotation twists do not change the length
            for e in [-2i64, 1] {
                let tw = WeylElem::rotation(k, e).mul(&w).unwrap();
                assert_eq!(tw.length(), d);
            }
        }
    }
}

fn rng_weyl(rng: &mut StdRng, k: usize, spread: i64) -> WeylElem {
    let lambda: Vec<i64> = (0..k).map(|_| rng.gen_range(-spread..=spread)).collect();
    let mut images: Vec<usize> = (1..=k).collect();
    for i in (1..k).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    WeylElem::from_pair(&lambda, &Perm::from_images(&images).unwrap()).unwrap()
}

#[test]
fn length_additive_pairs_concatenate_words() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 60 && attempts < 10_000 {
        attempts += 1;
        let k = rng.gen_range(2..=3);
        let u = rng_weyl(&mut rng, k, 1);
        let w = rng_weyl(&mut rng, k, 1);
        let uw = u.mul(&w).unwrap();
        if uw.length() != u.length() + w.length() {
            continue;
        }
        checked += 1;
        let (wu, eu) = u.reduced_word();
        let (ww, ew) = w.reduced_word();
        // the concatenated expression has minimal total letter count
        assert_eq!(uw.length() as usize, wu.len() + ww.len());
        let mut prod = WeylElem::identity(k);
        for &i in &wu {
            prod = prod.mul(&WeylElem::simple(k, i)).unwrap();
        }
        prod = prod.mul(&WeylElem::rotation(k, eu)).unwrap();
        for &i in &ww {
            prod = prod.mul(&WeylElem::simple(k, i)).unwrap();
        }
        prod = prod.mul(&WeylElem::rotation(k, ew)).unwrap();
        assert_eq!(prod, uw);
    }
}

#[test]
fn bar_and_sigma_tilde_laws() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..500 {
        let k = rng.gen_range(2..=4);
        let u = rng_weyl(&mut rng, k, 2);
        let w = rng_weyl(&mut rng, k, 2);
        assert_eq!(u.bar().bar(), u);
        assert_eq!(u.sigma_tilde().sigma_tilde(), u);
        let uw = u.mul(&w).unwrap();
        assert_eq!(uw.bar(), w.bar().mul(&u.bar()).unwrap());
        assert_eq!(
            uw.sigma_tilde(),
            u.sigma_tilde().mul(&w.sigma_tilde()).unwrap()
        );
        assert_eq!(u.sigma_tilde().length(), u.length());
    }
}

#[test]
fn pi1_degree_is_a_homomorphism() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..300 {
        let k = rng.gen_range(1..=3);
        let u = rng_weyl(&mut rng, k, 3);
        let w = rng_weyl(&mut rng, k, 3);
        assert_eq!(
            u.mul(&w).unwrap().pi1_degree(),
            u.pi1_degree() + w.pi1_degree()
        );
        let (lambda, _) = u.to_pair();
        assert_eq!(u.pi1_degree(), lambda.iter().sum::<i64>());
    }
}

fn all_indices(n: usize, m: usize, spread: i64) -> Vec<OrbitIndex> {
    let mut out = Vec::new();
    for subset in weyl::subsets(m, n) {
        let base = OrbitIndex::decreasing(&subset);
        let mut lambdas = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for l in &lambdas {
                for a in -spread..=spread {
                    let mut l2: Vec<i64> = l.clone();
                    l2.push(a);
                    next.push(l2);
                }
            }
            lambdas = next;
        }
        let mut perms = vec![Perm::identity(n)];
        if n >= 2 {
            for i in 1..n {
                perms.push(Perm::transposition(n, i));
            }
        }
        for lambda in &lambdas {
            for p in &perms {
                let w = WeylElem::from_pair(lambda, p).unwrap();
                out.push(action_on_orbit(&w, &base));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn orbit_action_is_a_left_action() {
    // exhaustive over generator pairs acting on small indices
    for (n, m) in [(1usize, 2usize), (2, 3), (3, 4)] {
        let mut gens = vec![WeylElem::rotation(n, 1)];
        if n >= 2 {
            for i in 0..n {
                gens.push(WeylElem::simple(n, i));
            }
        }
        gens.push(WeylElem::translation(
            &(0..n).map(|i| if i == 0 { 2 } else { -1 }).collect::<Vec<_>>(),
        ));
        for x in all_indices(n, m, 1) {
            for u in &gens {
                for w in &gens {
                    let lhs = action_on_orbit(&u.mul(w).unwrap(), &x);
                    let rhs = action_on_orbit(u, &action_on_orbit(w, &x));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn factorization_round_trip() {
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..300 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(n..=4);
        let subsets = weyl::subsets(m, n);
        let subset = &subsets[rng.gen_range(0..subsets.len())];
        let mu = OrbitIndex::decreasing(subset);
        let w = rng_weyl(&mut rng, n, 2);
        let x = action_on_orbit(&w, &mu);
        let (w2, mu2) = orbit_factorize(&x);
        assert_eq!((w2, mu2), (w, mu.clone()));
    }
}

fn rng_hecke(rng: &mut StdRng, k: usize, terms: usize, spread: i64) -> HeckeElem {
    let mut out = HeckeElem::zero(k);
    for _ in 0..terms {
        let w = rng_weyl(rng, k, spread);
        let e = rng.gen_range(-3..=3);
        let c = rng.gen_range(-4..=4i64);
        out.add_term(&w, &LaurentPoly::monomial(e, c));
    }
    out
}

#[test]
fn hecke_braid_relations() {
    for k in 2..=4usize {
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let ti = HeckeElem::t_basis(&WeylElem::simple(k, i));
                let tj = HeckeElem::t_basis(&WeylElem::simple(k, j));
                let adjacent = (i + 1) % k == j || (j + 1) % k == i;
                if k == 2 {
                    // infinite bond in affine rank two: no braid relation
                    continue;
                }
                if adjacent {
                    let lhs = ti.he_mul(&tj).unwrap().he_mul(&ti).unwrap();
                    let rhs = tj.he_mul(&ti).unwrap().he_mul(&tj).unwrap();
                    assert_eq!(lhs, rhs, "braid k={k} i={i} j={j}");
                } else {
                    let lhs = ti.he_mul(&tj).unwrap();
                    let rhs = tj.he_mul(&ti).unwrap();
                    assert_eq!(lhs, rhs, "commute k={k} i={i} j={j}");
                }
            }
        }
    }
}

#[test]
fn hecke_associativity_random() {
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..300 {
        let k = rng.gen_range(1..=3);
        let a = rng_hecke(&mut rng, k, 2, 1);
        let b = rng_hecke(&mut rng, k, 2, 1);
        let c = rng_hecke(&mut rng, k, 2, 1);
        let lhs = a.he_mul(&b).unwrap().he_mul(&c).unwrap();
        let rhs = a.he_mul(&b.he_mul(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn wakimoto_well_defined_and_multiplicative() {
    // every decomposition lambda = lambda1 - lambda2 into dominant pieces
    // gives the same element
    let mut rng = StdRng::seed_from_u64(16);
    for _ in 0..120 {
        let k = rng.gen_range(1..=3);
        let lambda: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
        let expect = HeckeElem::wakimoto(&lambda);
        for _ in 0..2 {
            // random dominant lambda2, then lambda1 = lambda + lambda2
            let mut l2: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=2)).collect();
            l2.sort_unstable_by(|a, b| b.cmp(a));
            // bump until lambda1 is dominant too
            let mut c = 0;
            loop {
                let shift: Vec<i64> = (0..k as i64).rev().map(|d| c * d).collect();
                let l2s: Vec<i64> = l2.iter().zip(&shift).map(|(a, b)| a + b).collect();
                let l1: Vec<i64> = lambda.iter().zip(&l2s).map(|(a, b)| a + b).collect();
                if weyl::is_dominant(&l1) && weyl::is_dominant(&l2s) {
                    let got = HeckeElem::standard(&WeylElem::translation(&l1))
                        .he_mul(&HeckeElem::costandard(&WeylElem::translation(
                            &l2s.iter().map(|a| -a).collect::<Vec<_>>(),
                        )))
                        .unwrap();
                    assert_eq!(got, expect, "lambda={lambda:?} split={l1:?}-{l2s:?}");
                    break;
                }
                c += 1;
            }
        }
    }
    // exhaustive homomorphism check in rank two
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                for d in -2..=2 {
                    let lhs = HeckeElem::wakimoto(&[a, b])
                        .he_mul(&HeckeElem::wakimoto(&[c, d]))
                        .unwrap();
                    assert_eq!(lhs, HeckeElem::wakimoto(&[a + c, b + d]));
                }
            }
        }
    }
    // and in rank three over the unit cube
    let cube = vectors(3, &[-1, 0, 1]);
    for a in &cube {
        for b in &cube {
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let lhs = HeckeElem::wakimoto(a)
                .he_mul(&HeckeElem::wakimoto(b))
                .unwrap();
            assert_eq!(lhs, HeckeElem::wakimoto(&sum), "{a:?} + {b:?}");
        }
    }
}

#[test]
fn bernstein_round_trip_random() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..300 {
        let k = rng.gen_range(1..=3);
        let h = rng_hecke(&mut rng, k, 3, 1);
        let terms = h.bernstein_decompose();
        assert_eq!(HeckeElem::bernstein_recompose(k, &terms), h);
    }
}

#[test]
fn parabolic_round_trip_random() {
    let mut rng = StdRng::seed_from_u64(18);
    for _ in 0..150 {
        let m = rng.gen_range(2..=3);
        let n = rng.gen_range(1..m);
        let h = rng_hecke(&mut rng, m, 3, 1);
        let parts = h.parabolic_decompose(n);
        assert!(parts.len() <= binomial(m, n));
        let reps: BTreeSet<_> = weyl::minimal_coset_reps(n, m).into_iter().collect();
        assert!(parts.keys().all(|r| reps.contains(r)));
        assert_eq!(HeckeElem::parabolic_recompose(m, &parts), h);
    }
}

fn binomial(m: usize, n: usize) -> usize {
    let mut out = 1usize;
    for i in 0..n {
        out = out * (m - i) / (i + 1);
    }
    out
}

#[test]
fn sigma_maps_are_morphisms() {
    let mut rng = StdRng::seed_from_u64(19);
    for _ in 0..200 {
        let k = rng.gen_range(2..=3);
        let a = rng_hecke(&mut rng, k, 2, 1);
        let b = rng_hecke(&mut rng, k, 2, 1);
        let ab = a.he_mul(&b).unwrap();
        // sigma_tilde is an algebra automorphism
        assert_eq!(
            ab.sigma_tilde_alg(),
            a.sigma_tilde_alg().he_mul(&b.sigma_tilde_alg()).unwrap()
        );
        // sigma and star_sharp are anti-automorphisms
        assert_eq!(
            ab.sigma_alg(),
            b.sigma_alg().he_mul(&a.sigma_alg()).unwrap()
        );
        assert_eq!(
            ab.star_sharp(),
            b.star_sharp().he_mul(&a.star_sharp()).unwrap()
        );
    }
}

#[test]
fn pi1_split_is_graded() {
    let mut rng = StdRng::seed_from_u64(20);
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let a = rng_hecke(&mut rng, k, 2, 2);
        let b = rng_hecke(&mut rng, k, 2, 2);
        let prod = a.he_mul(&b).unwrap();
        let mut graded: BTreeMap<i64, HeckeElem> = BTreeMap::new();
        for (da, ha) in a.pi1_split() {
            for (db, hb) in b.pi1_split() {
                graded
                    .entry(da + db)
                    .or_insert_with(|| HeckeElem::zero(k))
                    .add_assign(&ha.he_mul(&hb).unwrap());
            }
        }
        graded.retain(|_, h| !h.is_zero());
        assert_eq!(prod.pi1_split(), graded);
    }
}

fn rng_theta(rng: &mut StdRng, n: usize, m: usize, terms: usize) -> ThetaElem {
    let mut out = ThetaElem::zero(n, m);
    let subsets = weyl::subsets(m, n);
    for _ in 0..terms {
        let subset = &subsets[rng.gen_range(0..subsets.len())];
        let mu = OrbitIndex::decreasing(subset);
        let w = rng_weyl(rng, n, 1);
        let idx = action_on_orbit(&w, &mu);
        out.add_term(&idx, &LaurentPoly::monomial(rng.gen_range(-2..=2), rng.gen_range(-3..=3i64)));
    }
    out
}

#[test]
fn induced_round_trip_random() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..100 {
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(n..=3);
        let x = rng_theta(&mut rng, n, m, 3);
        assert_eq!(from_induced(&to_induced(&x)), x);
    }
}

#[test]
fn right_action_is_a_right_module() {
    // x . (h1 h2) = (x . h1) . h2
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..150 {
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(n..=3);
        let h1 = rng_hecke(&mut rng, m, 2, 1);
        let h2 = rng_hecke(&mut rng, m, 1, 1);
        let x = rng_theta(&mut rng, n, m, 2);
        let lhs = act_right(&h1.he_mul(&h2).unwrap(), &x).unwrap();
        let rhs = act_right(&h2, &act_right(&h1, &x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn left_and_right_actions_commute() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..200 {
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(n..=3);
        let h = rng_hecke(&mut rng, n, 2, 1);
        let hp = rng_hecke(&mut rng, m, 1, 1);
        let x = rng_theta(&mut rng, n, m, 2);
        let lhs = act_left(&h, &act_right(&hp, &x).unwrap()).unwrap();
        let rhs = act_right(&hp, &act_left(&h, &x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn left_action_respects_filtration_grading() {
    // homogeneous generators shift the filtration degree by their
    // pi_1-degree, exactly
    for (n, m) in [(1usize, 2usize), (2, 2), (2, 3)] {
        let mut gens = vec![
            HeckeElem::t_basis(&WeylElem::rotation(n, 1)),
            HeckeElem::wakimoto(&(0..n).map(|i| i64::from(i == 0)).collect::<Vec<_>>()),
        ];
        if n >= 2 {
            for i in 0..n {
                gens.push(HeckeElem::t_basis(&WeylElem::simple(n, i)));
            }
        }
        for subset in weyl::subsets(m, n) {
            let mu = OrbitIndex::decreasing(&subset);
            for g in &gens {
                let split = g.pi1_split();
                assert_eq!(split.len(), 1);
                let (&deg, _) = split.iter().next().unwrap();
                let out = act_left(g, &ThetaElem::unit(n, m, &mu)).unwrap();
                for (idx, _) in out.terms() {
                    assert_eq!(idx.degree(), mu.degree() + deg);
                }
            }
        }
    }
}

fn bfs_ball(k: usize, depth: u64) -> Vec<WeylElem> {
    let mut out: Vec<WeylElem> = bfs_lengths(k, depth).into_keys().collect();
    out.sort();
    out
}

#[test]
fn nm_case_free_of_rank_one() {
    let n = 2;
    let w0 = OrbitIndex::w0_index(n);
    let x = ThetaElem::unit(n, n, &w0);
    let mut seen = BTreeSet::new();
    for w in bfs_ball(n, 4) {
        let got = act_left(&HeckeElem::standard(&w), &x).unwrap();
        assert_eq!(got.num_terms(), 1);
        let (idx, c) = got.terms().next().unwrap();
        assert!(c.is_one());
        assert!(seen.insert(idx.clone()), "collision at {w:?}");
        // sigma-intertwining between the two actions
        let rhs = act_right(&HeckeElem::standard(&w.sigma_tilde()), &x).unwrap();
        assert_eq!(got, rhs);
    }
}

#[test]
fn appendix_b_case_table_matches_induced_action() {
    for (n, m) in [(1usize, 2usize), (1, 3), (2, 2), (2, 3)] {
        let mut gens = vec![WeylElem::rotation(m, 1), WeylElem::rotation(m, -1)];
        for i in 0..m {
            gens.push(WeylElem::simple(m, i));
        }
        for subset in weyl::subsets(m, n) {
            let mu = OrbitIndex::decreasing(&subset);
            for gen in &gens {
                let expected = bimodule::act_right_table(gen, &mu).unwrap();
                let class = if gen.as_rotation().is_some() {
                    HeckeElem::t_basis(gen)
                } else {
                    HeckeElem::kl_simple(gen).unwrap()
                };
                let got = act_right(&class, &ThetaElem::unit(n, m, &mu)).unwrap();
                assert_eq!(got, expected, "n={n} m={m} gen={gen:?} mu={mu:?}");
            }
        }
    }
}

/// The exact shift identities on the w_0 line, checked through the right
/// action: the coefficients are single powers of `v` with the announced
/// exponents.
#[test]
fn shift_identity_suite() {
    for (n, m) in [(1usize, 2usize), (2, 3)] {
        let w0 = OrbitIndex::w0_index(n);
        let subset: Vec<usize> = (1..=n).collect();
        let x = ThetaElem::unit(n, m, &OrbitIndex::decreasing(&subset));
        let spreads: Vec<i64> = (-2..=2).collect();

        // M2-supported translations with nonnegative entries (tau = id):
        // coefficient v^{l(w) - n <lambda, omega_m>} on the same index
        for lambda2 in vectors(m - n, &[0, 1, 2]) {
            let mut lambda = vec![0i64; n];
            lambda.extend(&lambda2);
            let w = WeylElem::translation(&lambda);
            let e = w.length() as i64 - (n as i64) * lambda.iter().sum::<i64>();
            let got = act_right(&HeckeElem::standard(&w.inverse()), &x).unwrap();
            assert_single(&got, &action_on_orbit(&WeylElem::identity(n), &OrbitIndex::decreasing(&subset)), e, "block translation");
        }

        // M1-supported antidominant translations: target (w0 lambda1, w0).
        // The correspondence here is an isomorphism (its fibre dimension
        // vanishes identically on this family), so the coefficient is 1;
        // the finite-field oracle confirms the measured exponent is zero.
        for lambda1 in vectors(n, &[-2, -1, 0]) {
            if !weyl::is_dominant(&lambda1.iter().map(|a| -a).collect::<Vec<_>>()) {
                continue; // need antidominant in the block
            }
            let mut lambda = lambda1.clone();
            lambda.extend(vec![0i64; m - n]);
            let w = WeylElem::translation(&lambda);
            let mut target_lambda = Perm::longest(n).act_on_vector(&lambda1);
            let target = action_on_orbit(
                &WeylElem::translation(&std::mem::take(&mut target_lambda)),
                &OrbitIndex::w0_index(n),
            );
            let got = act_right(&HeckeElem::standard(&w.inverse()), &x).unwrap();
            assert_single(&got, &target, 0, "levi translation");
        }

        // dominant lambda split over the Levi blocks
        for lambda in vectors(m, &spreads) {
            if !weyl::is_dominant(&lambda) {
                continue;
            }
            let lambda1 = &lambda[..n];
            let lambda2 = &lambda[n..];
            let _ = lambda2;
            let two_rho_g = weyl::two_rho_pairing(lambda1);
            let two_rho_h = weyl::two_rho_pairing(&lambda);
            let omega = lambda.iter().sum::<i64>();
            let omega1 = lambda1.iter().sum::<i64>();
            let d = two_rho_g - two_rho_h + (m as i64) * omega1 - (n as i64) * omega;
            let neg_w0_l1: Vec<i64> = Perm::longest(n)
                .act_on_vector(lambda1)
                .iter()
                .map(|a| -a)
                .collect();
            let target = action_on_orbit(
                &WeylElem::translation(&neg_w0_l1),
                &OrbitIndex::w0_index(n),
            );
            // right action by standard(t^lambda): star_sharp gives the
            // left action of the inverse translation
            let got = act_right(
                &HeckeElem::standard(&WeylElem::translation(&lambda)),
                &x,
            )
            .unwrap();
            assert_single(&got, &target, -d, "dominant shift");
        }

        // Costandard M2 translations act on the w_0 line by
        // v^{-<lambda2, 2 rho_M2>}: the exponent inverse to the standard
        // case above, so the two compose to the identity as the
        // invertibility isomorphism requires.
        for lambda2 in vectors(m - n, &[0, 1, 2]) {
            let mut sorted = lambda2.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let mut lambda = vec![0i64; n];
            lambda.extend(&sorted);
            let d = weyl::two_rho_pairing(&sorted);
            let neg: Vec<i64> = lambda.iter().map(|a| -a).collect();
            let h = HeckeElem::costandard(&WeylElem::translation(&neg)).star_sharp();
            let got = act_right(&h, &x).unwrap();
            assert_single(&got, &OrbitIndex::decreasing(&subset), -d, "block costandard");
        }
        let _ = w0;
    }
}

fn vectors(len: usize, choices: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            for &c in choices {
                let mut v2 = v.clone();
                v2.push(c);
                next.push(v2);
            }
        }
        out = next;
    }
    out
}

fn assert_single(got: &ThetaElem, index: &OrbitIndex, exp: i64, label: &str) {
    assert_eq!(got.num_terms(), 1, "{label}: {got:?}");
    let (idx, c) = got.terms().next().unwrap();
    assert_eq!(idx, index, "{label}: wrong index");
    assert_eq!(
        c.as_unit_monomial(),
        Some((exp, 1)),
        "{label}: coefficient {c} expected v^{exp}"
    );
}
