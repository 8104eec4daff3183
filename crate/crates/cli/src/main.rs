//! Batch command-line frontend: Weyl, Hecke, and theta-module operations,
//! oracle censuses and convolutions, and the named verification suites.

use clap::{Args, Parser, Subcommand, ValueEnum};
use theta_cli::{run_suite, SuiteOptions, SUITES};
use theta_core::bimodule::{self, ThetaElem};
use theta_core::hecke::HeckeElem;
use theta_core::weyl::{self, OrbitIndex, Perm, WeylElem};
use theta_oracle::points::{enumerate_orbits, expected_orbit_table, match_census, Window};
use theta_oracle::{checks, convolve};

#[derive(Parser)]
#[command(name = "theta", about = "Iwahori-Hecke bimodule calculator and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Extended affine Weyl group operations
    Weyl {
        #[command(subcommand)]
        op: WeylOp,
    },
    /// Affine Hecke algebra operations
    Hecke {
        #[command(subcommand)]
        op: HeckeOp,
    },
    /// Theta bimodule operations
    Theta {
        #[command(subcommand)]
        op: ThetaOp,
    },
    /// Finite-field oracle runs
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Run a named verification suite (or "all")
    Verify {
        suite: String,
        /// Reduced ranges for a fast pass
        #[arg(long)]
        small: bool,
        /// Seed for randomized property sampling
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Point-enumeration budget
        #[arg(long, default_value_t = checks::DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Args)]
struct ElemArg {
    /// Rank of the group
    #[arg(long)]
    k: usize,
    /// Element as `"[lambda];(cycles)"`
    #[arg(long)]
    pair: Option<String>,
    /// Element as a window "[w1,...,wk]"
    #[arg(long)]
    window: Option<String>,
    /// Element shorthand: `e`, `s0`, `s1`, ..., `pi`, `pi^e`, `t[...]`
    #[arg(long)]
    elem: Option<String>,
}

impl ElemArg {
    fn parse(&self) -> Result<WeylElem, String> {
        if let Some(pair) = &self.pair {
            return parse_pair(self.k, pair);
        }
        if let Some(window) = &self.window {
            let w: Vec<i64> = parse_int_list(window)?;
            return WeylElem::from_window(w).map_err(|e| e.to_string());
        }
        if let Some(elem) = &self.elem {
            return parse_weyl(self.k, elem);
        }
        Err("need one of --pair, --window, --elem".into())
    }
}

#[derive(Subcommand)]
enum WeylOp {
    /// Product of two elements
    Mul {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Length of an element
    Len(ElemArg),
    /// The bar anti-automorphism
    Bar(ElemArg),
    /// The sigma-tilde automorphism
    Sigma(ElemArg),
}

#[derive(Subcommand)]
enum HeckeOp {
    Mul {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Inverse of a T basis element
    Inv {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        w: String,
    },
    /// Bernstein decomposition
    Bernstein {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: String,
    },
    /// Parabolic decomposition over the Levi (n, k-n)
    Parabolic {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: String,
    },
}

#[derive(Subcommand)]
enum ThetaOp {
    ActLeft {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        h: String,
        #[arg(long)]
        x: String,
    },
    ActRight {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        h: String,
        #[arg(long)]
        x: String,
    },
    Factorize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        index: String,
    },
    Filt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        x: String,
    },
}

#[derive(Subcommand)]
enum OracleOp {
    /// Orbit census on a window
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "bign", alias = "N")]
        big_n: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = checks::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Convolve the characteristic function of an orbit
    Convolve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "bign")]
        big_n: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        q: u64,
        /// G or H
        #[arg(long)]
        side: String,
        /// Acting Weyl element (shorthand)
        #[arg(long)]
        w: String,
        /// Source orbit index: `"mu:[subset]"`, `"w0"`, or JSON
        #[arg(long)]
        index: String,
    },
    /// |IwI/I| in the truncated flag variety
    CosetCount {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        w: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: i64,
    },
    /// The Jacquet commutation exponent
    Jacquet {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        q: u64,
    },
}

fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("expected a bracketed list, got '{s}'"))?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| e.to_string()))
        .collect()
}

fn parse_cycles(k: usize, s: &str) -> Result<Perm, String> {
    let s = s.trim();
    if s == "id" || s == "e" || s.is_empty() {
        return Ok(Perm::identity(k));
    }
    let mut perm: Vec<usize> = (1..=k).collect();
    for cycle in s.split(')') {
        let cycle = cycle.trim();
        if cycle.is_empty() {
            continue;
        }
        let cycle = cycle
            .strip_prefix('(')
            .ok_or_else(|| format!("bad cycle notation '{s}'"))?;
        let entries: Vec<usize> = if cycle.contains(' ') || cycle.contains(',') {
            cycle
                .split([' ', ','])
                .filter(|p| !p.is_empty())
                .map(|p| p.parse::<usize>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?
        } else {
            cycle
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| format!("bad cycle digit '{c}'"))
                })
                .collect::<Result<_, _>>()?
        };
        if entries.iter().any(|&x| x == 0 || x > k) {
            return Err(format!("cycle entry out of range in '{s}'"));
        }
        for i in 0..entries.len() {
            let from = entries[i];
            let to = entries[(i + 1) % entries.len()];
            perm[from - 1] = to;
        }
    }
    Perm::from_images(&perm).map_err(|e| e.to_string())
}

fn parse_pair(k: usize, s: &str) -> Result<WeylElem, String> {
    let (lambda_part, tau_part) = s
        .split_once(';')
        .ok_or_else(|| format!("expected '[lambda];(cycles)', got '{s}'"))?;
    let lambda = parse_int_list(lambda_part)?;
    if lambda.len() != k {
        return Err(format!("lambda has {} entries, expected {k}", lambda.len()));
    }
    let tau = parse_cycles(k, tau_part)?;
    WeylElem::from_pair(&lambda, &tau).map_err(|e| e.to_string())
}

fn parse_weyl(k: usize, s: &str) -> Result<WeylElem, String> {
    let s = s.trim();
    if s == "e" || s == "id" {
        return Ok(WeylElem::identity(k));
    }
    if let Some(rest) = s.strip_prefix('s') {
        if let Ok(i) = rest.parse::<usize>() {
            if i < k {
                return Ok(WeylElem::simple(k, i));
            }
            return Err(format!("s{i} out of range for rank {k}"));
        }
    }
    if s == "pi" {
        return Ok(WeylElem::rotation(k, 1));
    }
    if let Some(rest) = s.strip_prefix("pi^") {
        let e: i64 = rest.parse().map_err(|e| format!("{e}"))?;
        return Ok(WeylElem::rotation(k, e));
    }
    if let Some(rest) = s.strip_prefix('t') {
        let lambda = parse_int_list(rest)?;
        if lambda.len() != k {
            return Err(format!("t-vector has {} entries, expected {k}", lambda.len()));
        }
        return Ok(WeylElem::translation(&lambda));
    }
    if s.contains(';') {
        return parse_pair(k, s);
    }
    if s.starts_with('[') {
        let w = parse_int_list(s)?;
        return WeylElem::from_window(w).map_err(|e| e.to_string());
    }
    Err(format!("cannot parse Weyl element '{s}'"))
}

fn parse_hecke(k: usize, s: &str) -> Result<HeckeElem, String> {
    let s = s.trim();
    if s == "one" {
        return Ok(HeckeElem::one(k));
    }
    if let Some(rest) = s.strip_prefix("T:") {
        return Ok(HeckeElem::t_basis(&parse_weyl(k, rest)?));
    }
    if let Some(rest) = s.strip_prefix("std:") {
        return Ok(HeckeElem::standard(&parse_weyl(k, rest)?));
    }
    if let Some(rest) = s.strip_prefix("cost:") {
        return Ok(HeckeElem::costandard(&parse_weyl(k, rest)?));
    }
    if let Some(rest) = s.strip_prefix("kl:") {
        return HeckeElem::kl_simple(&parse_weyl(k, rest)?).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix("wak:") {
        let lambda = parse_int_list(rest)?;
        if lambda.len() != k {
            return Err(format!("wak-vector has {} entries, expected {k}", lambda.len()));
        }
        return Ok(HeckeElem::wakimoto(&lambda));
    }
    let value: serde_json::Value = serde_json::from_str(s).map_err(|e| e.to_string())?;
    HeckeElem::from_json(&value).ok_or_else(|| "malformed Hecke JSON".into())
}

fn parse_orbit_index(n: usize, s: &str) -> Result<OrbitIndex, String> {
    let s = s.trim();
    if s == "w0" {
        return Ok(OrbitIndex::w0_index(n));
    }
    if let Some(rest) = s.strip_prefix("mu:") {
        let subset: Vec<i64> = parse_int_list(rest)?;
        let subset: Vec<usize> = subset.iter().map(|&x| x as usize).collect();
        if subset.len() != n {
            return Err(format!("subset has {} entries, expected {n}", subset.len()));
        }
        return Ok(OrbitIndex::decreasing(&subset));
    }
    let value: serde_json::Value = serde_json::from_str(s).map_err(|e| e.to_string())?;
    OrbitIndex::from_json(&value).ok_or_else(|| "malformed orbit index JSON".into())
}

fn parse_theta(n: usize, m: usize, s: &str) -> Result<ThetaElem, String> {
    let s = s.trim();
    if s == "w0" || s.starts_with("mu:") {
        return Ok(ThetaElem::unit(n, m, &parse_orbit_index(n, s)?));
    }
    if let Some(rest) = s.strip_prefix("unit:") {
        return Ok(ThetaElem::unit(n, m, &parse_orbit_index(n, rest)?));
    }
    let value: serde_json::Value = serde_json::from_str(s).map_err(|e| e.to_string())?;
    ThetaElem::from_json(&value).ok_or_else(|| "malformed theta JSON".into())
}

fn emit(format: Format, value: serde_json::Value, table: impl Fn() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
        Format::Table => println!("{}", table()),
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let format = cli.format;
    match cli.command {
        Command::Weyl { op } => run_weyl(op, format),
        Command::Hecke { op } => run_hecke(op, format),
        Command::Theta { op } => run_theta(op, format),
        Command::Oracle { op } => run_oracle(op, format),
        Command::Verify {
            suite,
            small,
            seed,
            budget,
        } => {
            let opts = SuiteOptions { seed, small, budget };
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                return Err(format!(
                    "unknown suite '{suite}'; available: {}, all",
                    SUITES.join(", ")
                ));
            }
            let checks = run_suite(&suite, &opts)?;
            let all_ok = checks.iter().all(|c| c.ok);
            match format {
                Format::Json => {
                    let value = serde_json::json!({
                        "suite": suite,
                        "status": if all_ok { "ok" } else { "fail" },
                        "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                Format::Table => {
                    for c in &checks {
                        let status = if c.ok { "ok  " } else { "FAIL" };
                        let mut line = format!("{status} {}", c.name);
                        if let (Some(m), Some(p)) = (c.measured, c.predicted) {
                            line.push_str(&format!("  measured {m}, predicted {p}"));
                        }
                        if !c.note.is_empty() {
                            line.push_str(&format!("  ({})", c.note));
                        }
                        println!("{line}");
                    }
                    println!(
                        "{}: {} checks, {}",
                        suite,
                        checks.len(),
                        if all_ok { "all ok" } else { "FAILURES" }
                    );
                }
            }
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn run_weyl(op: WeylOp, format: Format) -> Result<i32, String> {
    match op {
        WeylOp::Mul { k, a, b } => {
            let a = parse_weyl(k, &a)?;
            let b = parse_weyl(k, &b)?;
            let prod = a.mul(&b).map_err(|e| e.to_string())?;
            emit(format, prod.to_json(), || format!("{prod:?}"));
        }
        WeylOp::Len(arg) => {
            let w = arg.parse()?;
            let len = w.length();
            emit(
                format,
                serde_json::json!({ "length": len }),
                || len.to_string(),
            );
        }
        WeylOp::Bar(arg) => {
            let w = arg.parse()?.bar();
            emit(format, w.to_json(), || format!("{w:?}"));
        }
        WeylOp::Sigma(arg) => {
            let w = arg.parse()?.sigma_tilde();
            emit(format, w.to_json(), || format!("{w:?}"));
        }
    }
    Ok(0)
}

fn run_hecke(op: HeckeOp, format: Format) -> Result<i32, String> {
    match op {
        HeckeOp::Mul { k, a, b } => {
            let a = parse_hecke(k, &a)?;
            let b = parse_hecke(k, &b)?;
            let prod = a.he_mul(&b).map_err(|e| e.to_string())?;
            emit(format, prod.to_json(), || format!("{prod:?}"));
        }
        HeckeOp::Inv { k, w } => {
            let inv = HeckeElem::t_inverse(&parse_weyl(k, &w)?);
            emit(format, inv.to_json(), || format!("{inv:?}"));
        }
        HeckeOp::Bernstein { k, h } => {
            let h = parse_hecke(k, &h)?;
            let terms = h.bernstein_decompose();
            let value = serde_json::json!(terms
                .iter()
                .map(|t| serde_json::json!({
                    "lambda": t.lambda,
                    "tau": t.tau.one_line(),
                    "coeff": t.coeff.to_json(),
                }))
                .collect::<Vec<_>>());
            emit(format, value, || format!("{} Bernstein terms", terms.len()));
        }
        HeckeOp::Parabolic { k, n, h } => {
            let h = parse_hecke(k, &h)?;
            let parts = h.parabolic_decompose(n);
            let value = serde_json::json!(parts
                .iter()
                .map(|(rep, coeff)| serde_json::json!({
                    "coset": rep.one_line(),
                    "coeff": coeff.to_json(),
                }))
                .collect::<Vec<_>>());
            emit(format, value, || format!("{} coset coordinates", parts.len()));
        }
    }
    Ok(0)
}

fn run_theta(op: ThetaOp, format: Format) -> Result<i32, String> {
    match op {
        ThetaOp::ActLeft { n, m, h, x } => {
            let h = parse_hecke(n, &h)?;
            let x = parse_theta(n, m, &x)?;
            let out = bimodule::act_left(&h, &x).map_err(|e| e.to_string())?;
            emit(format, out.to_json(), || format!("{out:?}"));
        }
        ThetaOp::ActRight { n, m, h, x } => {
            let h = parse_hecke(m, &h)?;
            let x = parse_theta(n, m, &x)?;
            let out = bimodule::act_right(&h, &x).map_err(|e| e.to_string())?;
            emit(format, out.to_json(), || format!("{out:?}"));
        }
        ThetaOp::Factorize { n, m, index } => {
            let idx = parse_orbit_index(n, &index)?;
            let _ = m;
            let (w, mu) = weyl::orbit_factorize(&idx);
            emit(
                format,
                serde_json::json!({ "w": w.to_json(), "mu": mu.to_json() }),
                || format!("w = {w:?}, mu = {mu:?}"),
            );
        }
        ThetaOp::Filt { n, m, x } => {
            let x = parse_theta(n, m, &x)?;
            let split = x.filt_degree();
            let value = serde_json::json!(split
                .iter()
                .map(|(d, part)| serde_json::json!({ "degree": d, "part": part.to_json() }))
                .collect::<Vec<_>>());
            emit(format, value, || format!("{} graded parts", split.len()));
        }
    }
    Ok(0)
}

fn run_oracle(op: OracleOp, format: Format) -> Result<i32, String> {
    match op {
        OracleOp::Orbits {
            n,
            m,
            big_n,
            r,
            q,
            budget,
        } => {
            let win = Window::new(n, m, big_n, r, q);
            let census = enumerate_orbits(&win, budget).map_err(|e| e.to_string())?;
            let matching = match_census(&census).map_err(|e| e.to_string())?;
            let mut orbits = Vec::new();
            for (index, root, size) in &matching.matched {
                orbits.push(serde_json::json!({
                    "index": index.to_json(),
                    "size": size,
                    "rep": point_json(&win, *root),
                }));
            }
            for (root, size) in &matching.leftovers {
                orbits.push(serde_json::json!({
                    "index": "unmatched",
                    "size": size,
                    "rep": point_json(&win, *root),
                }));
            }
            let expected = expected_orbit_table(&win).len();
            let value = serde_json::json!({
                "orbits": orbits,
                "checks": [serde_json::json!({
                    "name": "census bijection",
                    "status": if matching.matched.len() == expected { "ok" } else { "fail" },
                    "measured_exponent": matching.matched.len(),
                    "predicted": expected,
                })],
            });
            emit(format, value, || {
                format!(
                    "{} matched orbits, {} leftover",
                    matching.matched.len(),
                    matching.leftovers.len()
                )
            });
            Ok(0)
        }
        OracleOp::Convolve {
            n,
            m,
            big_n,
            r,
            q,
            side,
            w,
            index,
        } => {
            let win = Window::new(n, m, big_n, r, q);
            let side = match side.as_str() {
                "G" | "g" => convolve::Side::G,
                "H" | "h" => convolve::Side::H,
                other => return Err(format!("side must be G or H, got '{other}'")),
            };
            let rank = match side {
                convolve::Side::G => n,
                convolve::Side::H => m,
            };
            let w = parse_weyl(rank, &w)?;
            let idx = parse_orbit_index(n, &index)?;
            let orbit = theta_oracle::points::orbit_of(
                &win,
                theta_oracle::points::representative(&win, &idx),
            );
            let f = convolve::Func::characteristic(&win, |p| orbit.contains(&p));
            let (g, out_win) = convolve::convolve(side, &w, &f).map_err(|e| e.to_string())?;
            // summarize against the admissible orbits of the output window
            let mut constants = Vec::new();
            for (target, rep) in expected_orbit_table(&out_win) {
                if g.values[rep as usize] != 0 {
                    let target_orbit = theta_oracle::points::orbit_of(&out_win, rep);
                    let target_f =
                        convolve::Func::characteristic(&out_win, |p| target_orbit.contains(&p));
                    let constant = match convolve::compare(&g, &target_f) {
                        convolve::Comparison::Ratio { exponent } => {
                            serde_json::json!({ "ratio_exponent": exponent })
                        }
                        _ => serde_json::json!({ "value": g.values[rep as usize] }),
                    };
                    constants.push(serde_json::json!({
                        "index": target.to_json(),
                        "constant": constant,
                    }));
                }
            }
            let value = serde_json::json!({
                "out_window": { "n": n, "m": m, "N": out_win.big_n, "r": out_win.r, "q": q },
                "support_size": g.support_size(),
                "per_orbit_constants": constants,
            });
            emit(format, value, || {
                format!("support {} points over {} orbits", g.support_size(), constants.len())
            });
            Ok(0)
        }
        OracleOp::CosetCount { k, w, q, d } => {
            let w = parse_weyl(k, &w)?;
            let reps = theta_oracle::coset_reps(&w, d, q, d + 4).map_err(|e| e.to_string())?;
            emit(
                format,
                serde_json::json!({ "count": reps.len(), "length": w.length() }),
                || reps.len().to_string(),
            );
            Ok(0)
        }
        OracleOp::Jacquet { n, j, m, lambda, q } => {
            let lambda = parse_int_list(&lambda)?;
            let check =
                checks::jacquet_check(n, j, m, &lambda, q).map_err(|e| e.to_string())?;
            let ok = check.ok;
            emit(format, check.to_json(), || {
                format!(
                    "{}: measured {:?}, predicted {:?}",
                    if ok { "ok" } else { "FAIL" },
                    check.measured,
                    check.predicted
                )
            });
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn point_json(win: &Window, point: u64) -> serde_json::Value {
    let digits = win.decode(point);
    let mut rows = Vec::new();
    for row in 0..win.n {
        let mut cols = Vec::new();
        for col in 0..win.m {
            cols.push(format!("{:?}", win.entry(&digits, row, col)));
        }
        rows.push(serde_json::json!(cols));
    }
    serde_json::json!(rows)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}
