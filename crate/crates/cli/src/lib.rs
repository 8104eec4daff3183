//! Named verification suites covering the acceptance criteria, shared by
//! the command-line frontend and the acceptance test target.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use theta_core::bimodule::{self, act_left, act_right, from_induced, to_induced, ThetaElem};
use theta_core::hecke::HeckeElem;
use theta_core::laurent::LaurentPoly;
use theta_core::weyl::{self, action_on_orbit, OrbitIndex, Perm, WeylElem};
use theta_oracle::checks::{
    self, census_check, square_ic_check, coset_count_check, standard_action_check, ic_cases_check,
    jacquet_check, block_costandard_check, block_translation_check, levi_translation_check, orbit_count_check,
    orbit_dimension, dominant_shift_check, finite_action_check, Check,
};
use theta_oracle::points::Window;

pub struct SuiteOptions {
    pub seed: u64,
    pub small: bool,
    pub budget: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 1,
            small: false,
            budget: checks::DEFAULT_BUDGET,
        }
    }
}

pub const SUITES: &[&str] = &[
    "weyl-length",
    "algebra",
    "theta-rank",
    "appendix-b",
    "sigma",
    "shifts",
    "orbit-census",
    "jacquet",
];

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Vec<Check>, String> {
    match name {
        "weyl-length" => Ok(weyl_length_suite(opts)),
        "algebra" => Ok(algebra_suite(opts)),
        "theta-rank" => Ok(theta_rank_suite(opts)),
        "appendix-b" => Ok(appendix_b_suite(opts)),
        "sigma" => Ok(sigma_suite(opts)),
        "shifts" => Ok(shifts_suite(opts)),
        "orbit-census" => Ok(orbit_census_suite(opts)),
        "jacquet" => Ok(jacquet_suite(opts)),
        "all" => {
            let mut out = Vec::new();
            for suite in SUITES {
                out.extend(run_suite(suite, opts)?);
            }
            Ok(out)
        }
        other => Err(format!("unknown suite '{other}'")),
    }
}

fn named(name: &str, ok: bool, note: String) -> Check {
    if ok {
        Check::pass(name).with_note(note)
    } else {
        Check::fail(name, note)
    }
}

/// All elements of shortest-word length at most `depth`, with distances.
pub fn bfs_ball(k: usize, depth: u64) -> Vec<(WeylElem, u64)> {
    let mut dist = std::collections::BTreeMap::new();
    dist.insert(WeylElem::identity(k), 0u64);
    let mut frontier = vec![WeylElem::identity(k)];
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
    dist.into_iter().collect()
}

// ---------------------------------------------------------------- criterion 1

fn weyl_length_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let depth = if opts.small { 4 } else { 5 };
    for k in 2..=3usize {
        let mut ok = true;
        let mut note = String::new();
        for (w, d) in bfs_ball(k, depth) {
            if w.length() != d {
                ok = false;
                note = format!("{w:?}: inversion length {} != word length {d}", w.length());
                break;
            }
            for e in [-2i64, 1, 3] {
                let tw = WeylElem::rotation(k, e).mul(&w).unwrap();
                if tw.length() != d {
                    ok = false;
                    note = format!("rotation twist of {w:?} changed the length");
                    break;
                }
            }
        }
        out.push(named(
            &format!("length = shortest word, rank {k}, depth {depth}"),
            ok,
            note,
        ));
    }
    // |IwI/I| = q^{l(w)} in the finite-field oracle
    let max_len = if opts.small { 2 } else { 3 };
    for k in 2..=3usize {
        for q in [2u64, 3] {
            let mut checked = 0;
            let mut ok = true;
            let mut note = String::new();
            for (w, _) in bfs_ball(k, max_len) {
                for e in [-1i64, 0, 1] {
                    let tw = WeylElem::rotation(k, e).mul(&w).unwrap();
                    let (s1, s2) = theta_oracle::flag::window_bounds(&tw);
                    let check = coset_count_check(&tw, (s1 + s2 + 1).max(2), q).unwrap();
                    checked += 1;
                    if !check.ok {
                        ok = false;
                        note = format!(
                            "{}: {:?} vs {:?}",
                            check.name, check.measured, check.predicted
                        );
                    }
                }
            }
            out.push(named(
                &format!("coset counts q^l, rank {k}, q {q}"),
                ok,
                format!(
                    "{checked} elements{}{note}",
                    if note.is_empty() { "" } else { ": " }
                ),
            ));
        }
    }
    out
}

// ---------------------------------------------------------------- criterion 2

fn rng_weyl(rng: &mut StdRng, k: usize, spread: i64) -> WeylElem {
    let lambda: Vec<i64> = (0..k).map(|_| rng.gen_range(-spread..=spread)).collect();
    let mut images: Vec<usize> = (1..=k).collect();
    for i in (1..k).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    WeylElem::from_pair(&lambda, &Perm::from_images(&images).unwrap()).unwrap()
}

fn rng_hecke(rng: &mut StdRng, k: usize, terms: usize, spread: i64) -> HeckeElem {
    let mut out = HeckeElem::zero(k);
    for _ in 0..terms {
        let w = rng_weyl(rng, k, spread);
        out.add_term(
            &w,
            &LaurentPoly::monomial(rng.gen_range(-3..=3), rng.gen_range(-4..=4i64)),
        );
    }
    out
}

fn rng_theta(rng: &mut StdRng, n: usize, m: usize, terms: usize) -> ThetaElem {
    let mut out = ThetaElem::zero(n, m);
    let subsets = weyl::subsets(m, n);
    for _ in 0..terms {
        let subset = &subsets[rng.gen_range(0..subsets.len())];
        let w = rng_weyl(rng, n, 1);
        let idx = action_on_orbit(&w, &OrbitIndex::decreasing(subset));
        out.add_term(
            &idx,
            &LaurentPoly::monomial(rng.gen_range(-2..=2), rng.gen_range(-3..=3i64)),
        );
    }
    out
}

fn algebra_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut out = Vec::new();

    // quadratic and braid relations, exhaustive over generators, k <= 4
    let mut ok = true;
    let mut note = String::new();
    'gen: for k in 2..=4usize {
        for i in 0..k {
            let ti = HeckeElem::t_basis(&WeylElem::simple(k, i));
            let mut quad = ti.scale(&LaurentPoly::q_minus_one());
            quad.add_assign(&HeckeElem::one(k).scale(&LaurentPoly::q()));
            if ti.he_mul(&ti).unwrap() != quad {
                ok = false;
                note = format!("quadratic relation fails at k={k} i={i}");
                break 'gen;
            }
            for j in 0..k {
                if i == j || k == 2 {
                    continue;
                }
                let tj = HeckeElem::t_basis(&WeylElem::simple(k, j));
                let adjacent = (i + 1) % k == j || (j + 1) % k == i;
                let (lhs, rhs) = if adjacent {
                    (
                        ti.he_mul(&tj).unwrap().he_mul(&ti).unwrap(),
                        tj.he_mul(&ti).unwrap().he_mul(&tj).unwrap(),
                    )
                } else {
                    (ti.he_mul(&tj).unwrap(), tj.he_mul(&ti).unwrap())
                };
                if lhs != rhs {
                    ok = false;
                    note = format!("braid relation fails at k={k} ({i},{j})");
                    break 'gen;
                }
            }
        }
    }
    out.push(named("quadratic and braid relations (k <= 4)", ok, note));

    // invertibility and length-additive products on random elements
    let mut ok = true;
    let mut note = String::new();
    let cases = if opts.small { 120 } else { 500 };
    for _ in 0..cases {
        let k = rng.gen_range(2..=3);
        let u = rng_weyl(&mut rng, k, 1);
        let w = rng_weyl(&mut rng, k, 1);
        let prod = HeckeElem::standard(&u)
            .he_mul(&HeckeElem::costandard(&u.inverse()))
            .unwrap();
        if prod != HeckeElem::one(k) {
            ok = false;
            note = format!("standard/costandard invertibility fails at {u:?}");
            break;
        }
        let uw = u.mul(&w).unwrap();
        if uw.length() == u.length() + w.length()
            && HeckeElem::standard(&u)
                .he_mul(&HeckeElem::standard(&w))
                .unwrap()
                != HeckeElem::standard(&uw)
        {
            ok = false;
            note = format!("length-additive product fails at {u:?} {w:?}");
            break;
        }
    }
    out.push(named("invertibility and additive products", ok, note));

    // Wakimoto homomorphism on random pairs
    let mut ok = true;
    let mut note = String::new();
    for _ in 0..cases {
        let k = rng.gen_range(1..=3);
        let a: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
        let b: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = HeckeElem::wakimoto(&a)
            .he_mul(&HeckeElem::wakimoto(&b))
            .unwrap();
        if lhs != HeckeElem::wakimoto(&sum) {
            ok = false;
            note = format!("wakimoto({a:?}) * wakimoto({b:?}) != wakimoto(sum)");
            break;
        }
    }
    out.push(named("wakimoto is a lattice homomorphism", ok, note));

    // Bernstein and parabolic round trips
    let mut ok = true;
    let mut note = String::new();
    for _ in 0..cases {
        let m = rng.gen_range(1..=3);
        let h = rng_hecke(&mut rng, m, 3, 1);
        if HeckeElem::bernstein_recompose(m, &h.bernstein_decompose()) != h {
            ok = false;
            note = "Bernstein round trip failed".into();
            break;
        }
        if m >= 2 {
            let n = rng.gen_range(1..m);
            let parts = h.parabolic_decompose(n);
            if parts.len() > weyl::subsets(m, n).len()
                || HeckeElem::parabolic_recompose(m, &parts) != h
            {
                ok = false;
                note = "parabolic round trip failed".into();
                break;
            }
        }
    }
    out.push(named("Bernstein and parabolic round trips", ok, note));

    // bimodule commutation (criterion 4)
    let mut ok = true;
    let mut note = String::new();
    let comm_cases = if opts.small { 60 } else { 200 };
    for _ in 0..comm_cases {
        let n = rng.gen_range(1..=2);
        let m = rng.gen_range(n..=3);
        let h = rng_hecke(&mut rng, n, 2, 1);
        let hp = rng_hecke(&mut rng, m, 1, 1);
        let x = rng_theta(&mut rng, n, m, 2);
        let lhs = act_left(&h, &act_right(&hp, &x).unwrap()).unwrap();
        let rhs = act_right(&hp, &act_left(&h, &x).unwrap()).unwrap();
        if lhs != rhs {
            ok = false;
            note = format!("actions do not commute on {x:?}");
            break;
        }
    }
    out.push(named("left and right actions commute", ok, note));

    // grading exactness (criterion 4)
    let mut ok = true;
    let mut note = String::new();
    'grading: for (n, m) in [(1usize, 2usize), (2, 2), (2, 3)] {
        let mut gens = vec![
            HeckeElem::t_basis(&WeylElem::rotation(n, 1)),
            HeckeElem::t_basis(&WeylElem::rotation(n, -1)),
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
                let (&deg, _) = split.iter().next().unwrap();
                let acted = act_left(g, &ThetaElem::unit(n, m, &mu)).unwrap();
                for (idx, _) in acted.terms() {
                    if idx.degree() != mu.degree() + deg {
                        ok = false;
                        note = format!("degree shift wrong at n={n} m={m} {idx:?}");
                        break 'grading;
                    }
                }
            }
        }
    }
    out.push(named("filtration grading is exact on generators", ok, note));
    out
}

// ---------------------------------------------------------------- criterion 3

fn theta_rank_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(opts.seed ^ 0x7e7a);
    let mut out = Vec::new();
    for (n, m) in [(1usize, 2usize), (1, 3), (2, 2), (2, 3)] {
        let rank = weyl::subsets(m, n).len();
        let mut seen = BTreeSet::new();
        let mut ok = true;
        let mut note = String::new();
        for rep in weyl::minimal_coset_reps(n, m) {
            let mu = bimodule::rep_to_mu(&rep, n);
            let x = ThetaElem::unit(n, m, &mu);
            let induced = to_induced(&x);
            if induced.num_coords() != 1 {
                ok = false;
                note = format!("unit at {mu:?} is not a single coordinate");
                break;
            }
            let (coset, coeff) = induced.coords().next().unwrap();
            if coset != &rep || coeff != &HeckeElem::one(n) {
                ok = false;
                note = format!("dictionary mismatch at {rep:?}");
                break;
            }
            seen.insert(mu);
        }
        if seen.len() != rank {
            ok = false;
            note = format!("found {} basis coordinates, expected {rank}", seen.len());
        }
        out.push(named(
            &format!("induced rank C({m},{n}) = {rank}"),
            ok,
            note,
        ));

        let cases = if opts.small { 40 } else { 100 };
        let mut ok = true;
        let mut note = String::new();
        for _ in 0..cases {
            let x = rng_theta(&mut rng, n, m, 3);
            if from_induced(&to_induced(&x)) != x {
                ok = false;
                note = format!("round trip failed at {x:?}");
                break;
            }
        }
        out.push(named(
            &format!("to/from induced inverse at (n,m)=({n},{m})"),
            ok,
            note,
        ));
    }
    out
}

// ---------------------------------------------------------------- criterion 5

fn appendix_b_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for (n, m) in [(1usize, 2usize), (1, 3), (2, 2), (2, 3)] {
        let mut ok = true;
        let mut note = String::new();
        let mut cases = 0;
        'outer: for subset in weyl::subsets(m, n) {
            let mu = OrbitIndex::decreasing(&subset);
            for i in 0..m {
                let gen = WeylElem::simple(m, i);
                let expected = bimodule::act_right_table(&gen, &mu).unwrap();
                let class = HeckeElem::kl_simple(&gen).unwrap();
                let got = act_right(&class, &ThetaElem::unit(n, m, &mu)).unwrap();
                cases += 1;
                if got != expected {
                    ok = false;
                    note = format!("mismatch at gen s_{i}, mu {mu:?}");
                    break 'outer;
                }
            }
            for e in [-1i64, 1] {
                let gen = WeylElem::rotation(m, e);
                let expected = bimodule::act_right_table(&gen, &mu).unwrap();
                let got =
                    act_right(&HeckeElem::t_basis(&gen), &ThetaElem::unit(n, m, &mu)).unwrap();
                cases += 1;
                if got != expected {
                    ok = false;
                    note = format!("rotation mismatch at e={e}, mu {mu:?}");
                    break 'outer;
                }
            }
        }
        out.push(named(
            &format!("case table vs induced action at (n,m)=({n},{m})"),
            ok,
            format!(
                "{cases} generator cases{}{note}",
                if note.is_empty() { "" } else { ": " }
            ),
        ));
    }
    // intersection cohomology cases over the oracle (criterion 8)
    if !opts.small {
        for q in [2u64, 3] {
            for (n, m) in [(1usize, 2usize), (1, 3), (2, 3)] {
                match ic_cases_check(n, m, q) {
                    Ok(checks) => out.extend(checks),
                    Err(e) => out.push(Check::fail(
                        format!("ic cases n={n} m={m} q={q}"),
                        e.to_string(),
                    )),
                }
            }
            for n in [2usize, 3] {
                match square_ic_check(n, q) {
                    Ok(checks) => out.extend(checks),
                    Err(e) => {
                        out.push(Check::fail(format!("ic square n={n} q={q}"), e.to_string()))
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- criterion 6

fn sigma_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(opts.seed ^ 0x51f1);
    let mut out = Vec::new();
    let n = 2;
    let depth = if opts.small { 3 } else { 4 };
    let w0 = OrbitIndex::w0_index(n);
    let x = ThetaElem::unit(n, n, &w0);
    let mut seen = BTreeSet::new();
    let mut ok = true;
    let mut note = String::new();
    for (word_elem, _) in bfs_ball(n, depth) {
        for e in [-1i64, 0, 1] {
            let w = WeylElem::rotation(n, e).mul(&word_elem).unwrap();
            let got = act_left(&HeckeElem::standard(&w), &x).unwrap();
            if got.num_terms() != 1 {
                ok = false;
                note = format!("not single-term at {w:?}");
                break;
            }
            let (idx, c) = got.terms().next().unwrap();
            if !c.is_one() || !seen.insert(idx.clone()) {
                ok = false;
                note = format!("freeness failure at {w:?}");
                break;
            }
            let rhs = act_right(&HeckeElem::standard(&w.sigma_tilde()), &x).unwrap();
            if got != rhs {
                ok = false;
                note = format!("sigma intertwining fails at {w:?}");
                break;
            }
        }
    }
    out.push(named(
        &format!("free rank one and sigma intertwining (l <= {depth})"),
        ok,
        note,
    ));

    let cases = if opts.small { 80 } else { 200 };
    let mut ok = true;
    let mut note = String::new();
    for _ in 0..cases {
        let k = rng.gen_range(2..=3);
        let a = rng_hecke(&mut rng, k, 2, 1);
        let b = rng_hecke(&mut rng, k, 2, 1);
        let lhs = a.he_mul(&b).unwrap().sigma_alg();
        let rhs = b.sigma_alg().he_mul(&a.sigma_alg()).unwrap();
        if lhs != rhs {
            ok = false;
            note = "sigma is not anti-multiplicative".into();
            break;
        }
        let lhs = a.he_mul(&b).unwrap().sigma_tilde_alg();
        let rhs = a.sigma_tilde_alg().he_mul(&b.sigma_tilde_alg()).unwrap();
        if lhs != rhs {
            ok = false;
            note = "sigma_tilde is not multiplicative".into();
            break;
        }
    }
    out.push(named(
        "sigma anti-multiplicative, sigma_tilde multiplicative",
        ok,
        note,
    ));
    out
}

// ---------------------------------------------------------------- criterion 7

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

fn shifts_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();

    // symbolic side: exact coefficient monomials on the w_0 line
    for (n, m) in [(1usize, 2usize), (2, 3)] {
        let subset: Vec<usize> = (1..=n).collect();
        let x = ThetaElem::unit(n, m, &OrbitIndex::decreasing(&subset));
        let mut ok = true;
        let mut note = String::new();
        let spread: Vec<i64> = if opts.small { vec![0, 1] } else { vec![0, 1, 2] };
        'sym: for lambda2 in vectors(m - n, &spread) {
            let mut lambda = vec![0i64; n];
            lambda.extend(&lambda2);
            let w = WeylElem::translation(&lambda);
            let e = w.length() as i64 - (n as i64) * lambda.iter().sum::<i64>();
            let got = act_right(&HeckeElem::standard(&w.inverse()), &x).unwrap();
            if got.num_terms() != 1
                || got.terms().next().unwrap().1.as_unit_monomial() != Some((e, 1))
            {
                ok = false;
                note = format!("block translation symbolic coefficient wrong at {lambda:?}");
                break 'sym;
            }
            let mut sorted = lambda2.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let mut dom = vec![0i64; n];
            dom.extend(&sorted);
            let d = weyl::two_rho_pairing(&sorted);
            let neg: Vec<i64> = dom.iter().map(|a| -a).collect();
            let h = HeckeElem::costandard(&WeylElem::translation(&neg)).star_sharp();
            let got = act_right(&h, &x).unwrap();
            if got.num_terms() != 1
                || got.terms().next().unwrap().1.as_unit_monomial() != Some((-d, 1))
            {
                ok = false;
                note = format!("block costandard symbolic coefficient wrong at {dom:?}");
                break 'sym;
            }
        }
        out.push(named(
            &format!("symbolic shift coefficients (n,m)=({n},{m})"),
            ok,
            note,
        ));
    }

    // oracle side: measured exponents, each instance on a window deep
    // enough for its source and target indices
    let qs: &[u64] = if opts.small { &[2] } else { &[2, 3] };
    for &q in qs {
        for (n, m) in [(1usize, 2usize), (2, 2)] {
            let mu = OrbitIndex::decreasing(&(1..=n).collect::<Vec<_>>());
            let mut elems = vec![WeylElem::translation(
                &(0..n).map(|i| i64::from(i == 0)).collect::<Vec<_>>(),
            )];
            if n >= 2 {
                elems.push(WeylElem::simple(n, 1));
                elems.push(WeylElem::simple(n, 0));
            }
            for w in elems {
                let (s1, _) = theta_oracle::flag::window_bounds(&w);
                let win = Window::new(n, m, s1 + 1, 1, q);
                out.push(
                    standard_action_check(&win, &w, &mu)
                        .unwrap_or_else(|e| Check::fail("standard action", e.to_string())),
                );
            }
        }
        for (n, m) in [(1usize, 2usize), (1, 3), (2, 3)] {
            let win = Window::new(n, m, 0, 1, q);
            for tau in all_perms(m) {
                out.push(
                    finite_action_check(&win, &tau)
                        .unwrap_or_else(|e| Check::fail("finite action", e.to_string())),
                );
            }
        }
        for a in 0..=2i64 {
            let win = Window::new(1, 2, a + 1, 1, q);
            out.push(
                block_translation_check(&win, &[a], &Perm::identity(1))
                    .unwrap_or_else(|e| Check::fail("block translation", e.to_string())),
            );
            out.push(
                block_costandard_check(&win, &[a])
                    .unwrap_or_else(|e| Check::fail("block costandard", e.to_string())),
            );
        }
        for a in -2..=0i64 {
            let win = Window::new(1, 2, (-a).max(1), 1, q);
            out.push(
                levi_translation_check(&win, &[a])
                    .unwrap_or_else(|e| Check::fail("levi translation", e.to_string())),
            );
        }
        for lambda in [[1i64, 0], [1, 1], [2, 1]] {
            let win = Window::new(1, 2, lambda[0].max(1), 1, q);
            out.push(
                dominant_shift_check(&win, &lambda)
                    .unwrap_or_else(|e| Check::fail("dominant shift", e.to_string())),
            );
        }
        // function-level associativity cross-validates he_mul
        for (side, n, m, pairs) in [
            (
                theta_oracle::Side::H,
                1usize,
                2usize,
                vec![
                    (WeylElem::simple(2, 1), WeylElem::simple(2, 1)),
                    (WeylElem::simple(2, 1), WeylElem::simple(2, 0)),
                    (WeylElem::translation(&[0, 1]), WeylElem::simple(2, 1)),
                ],
            ),
            (
                theta_oracle::Side::G,
                2,
                2,
                vec![
                    (WeylElem::simple(2, 1), WeylElem::simple(2, 1)),
                    (WeylElem::simple(2, 0), WeylElem::simple(2, 1)),
                ],
            ),
        ] {
            for (u, w) in pairs {
                let s_total = theta_oracle::flag::window_bounds(&u).0
                    + theta_oracle::flag::window_bounds(&w).0;
                let win = Window::new(n, m, s_total + 1, 1, q);
                let mu = OrbitIndex::decreasing(&(1..=n).collect::<Vec<_>>());
                let orbit = theta_oracle::points::orbit_of(
                    &win,
                    theta_oracle::points::representative(&win, &mu),
                );
                let f = theta_oracle::Func::characteristic(&win, |p| orbit.contains(&p));
                out.push(
                    theta_oracle::checks::function_associativity_check(&win, side, &u, &w, &f)
                        .unwrap_or_else(|e| Check::fail("function associativity", e.to_string())),
                );
            }
        }
        if q == 2 && !opts.small {
            // one deeper slice of the Levi (2, 1) inside GL_3
            out.push(
                block_translation_check(&Window::new(2, 3, 2, 1, q), &[1], &Perm::identity(1))
                    .unwrap_or_else(|e| Check::fail("block translation", e.to_string())),
            );
            out.push(
                levi_translation_check(&Window::new(2, 3, 1, 1, q), &[-1, 0])
                    .unwrap_or_else(|e| Check::fail("levi translation", e.to_string())),
            );
            out.push(
                dominant_shift_check(&Window::new(2, 3, 1, 1, q), &[1, 0, 0])
                    .unwrap_or_else(|e| Check::fail("dominant shift", e.to_string())),
            );
            out.push(
                dominant_shift_check(&Window::new(2, 3, 1, 1, q), &[1, 1, 0])
                    .unwrap_or_else(|e| Check::fail("dominant shift", e.to_string())),
            );
        }
    }
    out
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

fn orbit_census_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let pairs: &[(usize, usize)] = &[(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)];
    let windows: &[(i64, i64)] = if opts.small {
        &[(0, 1), (1, 1), (0, 2)]
    } else {
        &[(0, 1), (1, 1), (0, 2), (2, 1), (1, 2), (0, 3)]
    };
    for &(n, m) in pairs {
        for &(big_n, r) in windows {
            for q in [2u64, 3] {
                let win = Window::new(n, m, big_n, r, q);
                let Some(points) = win.num_points() else { continue };
                let cap = if opts.small { 1 << 18 } else { 1 << 21 };
                if points > cap {
                    continue;
                }
                match census_check(&win, opts.budget) {
                    Ok(checks) => out.extend(checks),
                    Err(e) => out.push(Check::fail(
                        format!("census n={n} m={m} N={big_n} r={r} q={q}"),
                        e.to_string(),
                    )),
                }
            }
        }
    }
    // w_0 orbit dimensions by polynomial fit: (r-1)mn + n(n+1)/2
    for (n, m, r) in [
        (1usize, 1usize, 1i64),
        (1, 2, 1),
        (2, 2, 1),
        (1, 1, 2),
        (1, 2, 2),
    ] {
        let expect = ((r - 1) as usize) * m * n + n * (n + 1) / 2;
        let name = format!("w0 orbit dimension n={n} m={m} r={r}");
        match orbit_dimension(
            n,
            m,
            0,
            r,
            &OrbitIndex::w0_index(n),
            &[2, 3, 5, 7, 11, 13],
            expect,
        ) {
            Ok(deg) => out.push(Check::exponent(name, deg as i64, expect as i64)),
            Err(e) => out.push(Check::fail(name, e.to_string())),
        }
    }
    // larger shapes through the exact cell count at q in {2, 3}
    for (n, m, lambda1, big_n, r) in [
        (2usize, 3usize, vec![0i64, 0], 0i64, 1i64),
        (2, 3, vec![1, 0], 1, 1),
        (1, 2, vec![1], 1, 2),
        (2, 2, vec![1, 0], 1, 2),
    ] {
        let neg_w0: Vec<i64> = Perm::longest(n)
            .act_on_vector(&lambda1)
            .iter()
            .map(|a| -a)
            .collect();
        let idx = action_on_orbit(&WeylElem::translation(&neg_w0), &OrbitIndex::w0_index(n));
        let dim = n * m * ((r - 1) as usize)
            + m * lambda1.iter().sum::<i64>() as usize
            + n * (n + 1) / 2
            + weyl::two_rho_pairing(&lambda1) as usize;
        for q in [2u64, 3] {
            if (q - 1).pow(n as u32) * q.pow((dim - n) as u32) > (1 << 20) {
                continue;
            }
            out.push(orbit_count_check(n, m, big_n, r, &idx, dim, q));
        }
    }
    // the dimension-two example: sizes q^2 - q
    match orbit_dimension(
        1,
        1,
        1,
        1,
        &OrbitIndex::new(vec![-1], vec![1], vec![1]),
        &[2, 3, 5, 7],
        2,
    ) {
        Ok(deg) => out.push(Check::exponent("a=-1 orbit dimension", deg as i64, 2)),
        Err(e) => out.push(Check::fail("a=-1 orbit dimension", e.to_string())),
    }
    out
}

// ---------------------------------------------------------------- criterion 9

fn jacquet_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let qs: &[u64] = if opts.small { &[2] } else { &[2, 3] };
    for &q in qs {
        for lambda in [[0i64, 0], [1, 0], [1, 1], [2, 1]] {
            out.push(
                jacquet_check(2, 1, 1, &lambda, q)
                    .unwrap_or_else(|e| Check::fail("jacquet", e.to_string())),
            );
        }
        // a two-column instance exercises the U-side of V
        out.push(
            jacquet_check(2, 1, 2, &[1, 0], q)
                .unwrap_or_else(|e| Check::fail("jacquet", e.to_string())),
        );
    }
    out
}
