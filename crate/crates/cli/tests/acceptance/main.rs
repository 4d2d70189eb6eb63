//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod oracle;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use contractio::batch::{check_batch, CheckOptions, GroupChecks};
use contractio::finitegroup::{
    composition_series_finite, is_simple_finite, make_catalog_group, CatalogKind, FiniteGroup,
};
use contractio::groupmodel::{
    contractivity_oracle, default_k_max, lattice_index_oracle, module_delta, Block, Component,
    ContractionGroup, GroupElement,
};
use contractio::padic::{hensel_lift, is_contractive_poly, FpPoly, IntPoly, PAdicPoly, RatPoly};
use contractio::random::{random_group, random_matrix, random_rational};
use contractio::series::{jordan_holder_verify, FactorClass, SeriesEngine, SeriesMode};
use contractio::theorems::{classify_simple, rational_normal_form};
use contractio::tiebreak::TieBreak;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 200;
const CORPUS_SEED: u64 = 2024;
const JH_TIME_LIMIT_S: f64 = 60.0;
const ORACLE_MATRICES: usize = 500;
const HENSEL_CASES: usize = 100;
const HENSEL_PRECISION: u32 = 32;
const STRUCTURE_SAMPLES: usize = 100;
const MAX_ROOT: u64 = 50;
const ROUND_TRIP_POLYS: usize = 50;

struct Outcome {
    ok: bool,
    detail: String,
}

fn report(results: &mut Vec<bool>, id: u32, name: &str, o: Outcome) {
    println!(
        "[{}] criterion {id}: {name}: {}",
        if o.ok { "PASS" } else { "FAIL" },
        o.detail
    );
    results.push(o.ok);
}

fn corpus() -> Vec<ContractionGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE).map(|_| random_group(&mut rng, 5)).collect()
}

fn jordan_holder(groups: &[ContractionGroup]) -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut pairs = 0;
    let mut distinct = 0;
    for (i, g) in groups.iter().enumerate() {
        let engine = SeriesEngine::new(g).expect("generated groups are analysable");
        for mode in [SeriesMode::Alpha, SeriesMode::AlphaNormal] {
            let a = engine
                .composition_series(mode, &mut TieBreak::seeded(2 * i as u64 + 1))
                .expect("certified");
            let b = engine
                .composition_series(mode, &mut TieBreak::seeded(2 * i as u64 + 2))
                .expect("certified");
            pairs += 1;
            distinct += (a.terms != b.terms) as usize;
            let jh = jordan_holder_verify(&a, &b, engine.precision());
            if !jh.equal || a.sorted_factors() != b.sorted_factors() {
                mismatches += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        ok: mismatches == 0 && secs < JH_TIME_LIMIT_S,
        detail: format!(
            "{} groups, {pairs} series pairs ({distinct} with different chains), {mismatches} multiset mismatches, {secs:.1} s (limit {JH_TIME_LIMIT_S} s)",
            groups.len()
        ),
    }
}

fn module_laws(checks: &[GroupChecks]) -> Outcome {
    let bad_factor = checks.iter().filter(|c| !c.factor_modules).count();
    let bad_mult = checks.iter().filter(|c| !c.multiplicativity).count();
    let bad_len = checks.iter().filter(|c| !c.length_bound).count();
    Outcome {
        ok: bad_factor + bad_mult + bad_len == 0,
        detail: format!(
            "{} groups; violations: factor module < 2: {bad_factor}, product of factor modules: {bad_mult}, length bound: {bad_len}",
            checks.len()
        ),
    }
}

fn dual_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let primes = [2u64, 3, 5];
    let (mut agree, mut disagree, mut inconclusive, mut contractive) = (0, 0, 0, 0);
    let mut n = 0;
    while n < ORACLE_MATRICES {
        let p = primes[n % 3];
        let d = rng.gen_range(1..=4);
        // every other matrix is p times a lower-height one, so both answers occur
        let a = if n % 2 == 0 {
            random_matrix(&mut rng, d, 100)
        } else {
            let pr = BigRational::from_integer(BigInt::from(p));
            random_matrix(&mut rng, d, (100 / p) as i64).scale(&pr)
        };
        if a.det().is_zero() {
            continue;
        }
        n += 1;
        let f = PAdicPoly::new(a.charpoly()).expect("char poly is monic");
        let newton = is_contractive_poly(&f, p);
        contractive += newton as usize;
        match contractivity_oracle(&a, p, default_k_max(&f, p)) {
            Ok(v) if v == newton => agree += 1,
            Ok(_) => disagree += 1,
            Err(_) => inconclusive += 1,
        }
    }
    Outcome {
        ok: disagree == 0 && inconclusive == 0,
        detail: format!(
            "{n} matrices ({contractive} contractive): {agree} agree, {disagree} disagree, inconclusive rate {inconclusive}/{n}"
        ),
    }
}

/// Schoolbook product of integer coefficient vectors.
fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn hensel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let primes = [2u64, 3, 5, 7];
    let mut failures = 0;
    let mut n = 0;
    while n < HENSEL_CASES {
        let p = primes[rng.gen_range(0..4)];
        let monic = |rng: &mut ChaCha8Rng, d: usize| {
            let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
            c.push(1);
            FpPoly::new(p, c)
        };
        let (dg, dh) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let g0 = monic(&mut rng, dg);
        let h0 = monic(&mut rng, dh);
        if g0.gcd(&h0).degree() != Some(0) {
            continue;
        }
        n += 1;
        let base = g0.mul(&h0);
        let deg = base.degree().unwrap();
        let mut coeffs: Vec<BigInt> = (0..=deg)
            .map(|i| BigInt::from(base.coeff(i)))
            .collect();
        for c in coeffs.iter_mut().take(deg) {
            *c += BigInt::from(p) * BigInt::from(rng.gen_range(-50..=50i64));
        }
        let f = IntPoly::new(coeffs.clone());
        let Ok((g, h)) = hensel_lift(&f, &g0, &h0, p, HENSEL_PRECISION) else {
            failures += 1;
            continue;
        };
        let gc: Vec<BigInt> = (0..=g.degree().unwrap()).map(|i| g.coeff(i)).collect();
        let hc: Vec<BigInt> = (0..=h.degree().unwrap()).map(|i| h.coeff(i)).collect();
        let prod = int_mul(&gc, &hc);
        let modulus = BigInt::from(p).pow(HENSEL_PRECISION);
        let residual_ok = prod.len() == coeffs.len()
            && coeffs
                .iter()
                .zip(&prod)
                .all(|(a, b)| ((a - b) % &modulus).is_zero());
        let lifts_ok = g.to_fp(p) == g0 && h.to_fp(p) == h0;
        if !(residual_ok && lifts_ok) {
            failures += 1;
        }
    }
    Outcome {
        ok: failures == 0,
        detail: format!("{n} coprime splits lifted to p^{HENSEL_PRECISION}, {failures} with f - g*h nonzero mod p^{HENSEL_PRECISION}"),
    }
}

fn finite_exponent(g: &FiniteGroup) -> u64 {
    let e = (0..g.order())
        .find(|&e| (0..g.order()).all(|x| g.mul(e, x) == x))
        .unwrap();
    (0..g.order()).fold(1u64, |acc, x| {
        let mut k = 1u64;
        let mut y = x;
        while y != e {
            y = g.mul(y, x);
            k += 1;
        }
        num_integer::lcm(acc, k)
    })
}

fn theorem_b(groups: &[ContractionGroup], checks: &[GroupChecks]) -> Outcome {
    let mut failures = 0;
    for (g, c) in groups.iter().zip(checks) {
        let r = &c.structure_report;
        // independent recomputation of T, t_α and exp(T) from the blocks
        let shift: Vec<usize> = (0..g.len()).filter(|&i| matches!(g.block(i), Block::Shift(_))).collect();
        let t: BigInt = shift
            .iter()
            .map(|&i| match g.block(i) {
                Block::Shift(s) => BigInt::from(s.group().order()),
                _ => unreachable!(),
            })
            .product();
        let exp = shift.iter().fold(1u64, |acc, &i| match g.block(i) {
            Block::Shift(s) => num_integer::lcm(acc, finite_exponent(s.group())),
            _ => unreachable!(),
        });
        let primes_ok = r.divisible.windows(2).all(|w| w[0].0 < w[1].0);
        let ok = r.torsion_blocks == shift
            && r.t_alpha == t
            && r.exponent == exp
            && (&t % BigInt::from(exp)).is_zero()
            && primes_ok
            && r.samples == STRUCTURE_SAMPLES
            && r.max_root == MAX_ROOT
            && r.all_ok();
        failures += (!ok) as usize;
    }
    Outcome {
        ok: failures == 0,
        detail: format!(
            "{} groups x {STRUCTURE_SAMPLES} samples, roots n = 1..{MAX_ROOT}: {failures} failures",
            groups.len()
        ),
    }
}

fn heisenberg() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut problems = Vec::new();
    let mut cases = 0;
    for p in [2u64, 3, 5, 7] {
        for a in 1..=3i64 {
            for b in 1..=3i64 {
                cases += 1;
                let g = ContractionGroup::new(vec![Block::heisenberg(p, a, b).unwrap()]);
                let x = [0, 1, 2].map(|_| random_rational(&mut rng, 30));
                let xe = GroupElement::new(vec![Component::Heisenberg(x.clone())]);
                // repeated multiplication against the library power and the closed form
                let mut acc = g.identity();
                for n in 0..=20i64 {
                    let nn = BigRational::from_integer(BigInt::from(n));
                    let c2 = BigRational::from_integer(BigInt::from(n * (n - 1) / 2));
                    let closed = [&x[0] * &nn, &x[1] * &nn, &x[2] * &nn + c2 * &x[0] * &x[1]];
                    let closed = GroupElement::new(vec![Component::Heisenberg(closed)]);
                    if g.power(&xe, n) != acc || closed != acc {
                        problems.push(format!("power p={p} a={a} b={b} n={n}"));
                    }
                    acc = g.multiply(&acc, &xe);
                }
                let engine = SeriesEngine::new(&g).unwrap();
                let canon = engine.canonical_series();
                let terms: Vec<String> = canon.terms.iter().map(|t| engine.describe(t)).collect();
                if terms != ["1", "Z", "H"] {
                    problems.push(format!("canonical {terms:?}"));
                }
                let series = engine
                    .composition_series(SeriesMode::Alpha, &mut TieBreak::Canonical)
                    .unwrap();
                let mut got: Vec<String> = series.factors().unwrap().iter().map(|f| f.to_string()).collect();
                got.sort();
                let pw = |e: i64| BigInt::from(p).pow(e as u32);
                let mut want: Vec<String> = [pw(a), pw(b), pw(a + b)]
                    .iter()
                    .map(|c| {
                        let f = RatPoly::new(vec![BigRational::from_integer(-c.clone()), BigRational::one()]);
                        format!("PadicSimple({p}, {})", PAdicPoly::new(f).unwrap())
                    })
                    .collect();
                want.sort();
                if got != want {
                    problems.push(format!("factors {got:?} != {want:?}"));
                }
                let delta = pw(2 * (a + b));
                if module_delta(&g) != delta || lattice_index_oracle(g.block(0)) != delta {
                    problems.push(format!("delta p={p} a={a} b={b}"));
                }
            }
        }
    }
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{cases} blocks: power formula n <= 20, canonical 1 < Z < H, factors and delta all exact")
        } else {
            format!("{cases} blocks, problems: {}", problems.join(", "))
        },
    }
}

fn classification(groups: &[ContractionGroup]) -> Outcome {
    let mut both_or_neither = 0;
    let mut factors = 0;
    for g in groups {
        let engine = SeriesEngine::new(g).unwrap();
        for mode in [SeriesMode::Alpha, SeriesMode::AlphaNormal] {
            let s = engine.composition_series(mode, &mut TieBreak::Canonical).unwrap();
            for f in s.factors().unwrap() {
                factors += 1;
                if f.is_torsion() == f.is_torsion_free() {
                    both_or_neither += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut round_trip_fail = 0;
    for i in 0..ROUND_TRIP_POLYS {
        let p = [2u64, 3, 5, 7][i % 4];
        let pi = p as i64;
        let unit = |rng: &mut ChaCha8Rng| loop {
            let u = rng.gen_range(-6..=6i64);
            if u % pi != 0 {
                return u;
            }
        };
        let f = if i % 2 == 0 {
            PAdicPoly::from_ints(&[-pi * unit(&mut rng).signum() * rng.gen_range(1..=6i64), 1])
        } else {
            PAdicPoly::from_ints(&[pi * unit(&mut rng), pi * rng.gen_range(-6..=6i64), 1])
        };
        let g = ContractionGroup::new(vec![Block::companion(p, f.clone()).unwrap()]);
        match classify_simple(&g) {
            Ok(l) => {
                let ok = matches!(&l.class, FactorClass::PadicSimple { p: q, f: h, .. } if *q == p && *h == f)
                    && l.companion.as_ref() == Some(&rational_normal_form(&f))
                    && l.is_torsion_free()
                    && !l.is_torsion();
                round_trip_fail += (!ok) as usize;
            }
            Err(_) => round_trip_fail += 1,
        }
    }
    Outcome {
        ok: both_or_neither == 0 && round_trip_fail == 0,
        detail: format!(
            "{factors} corpus factors, {both_or_neither} not exclusively torsion or torsion-free; \
             {ROUND_TRIP_POLYS} companion round trips, {round_trip_fail} failures"
        ),
    }
}

fn table_of(g: &FiniteGroup) -> oracle::Table {
    oracle::Table {
        n: g.order(),
        mul: g.table_rows(),
    }
}

fn finite_layer() -> Outcome {
    let s4 = make_catalog_group(CatalogKind::Symmetric(4)).unwrap();
    let a5 = make_catalog_group(CatalogKind::Alternating(5)).unwrap();
    let lib = composition_series_finite(&s4, &mut TieBreak::Canonical).unwrap();
    let mut lib_names: Vec<String> = lib.factors.iter().map(|l| l.to_string()).collect();
    lib_names.sort();
    let mut lib_orders: Vec<usize> = lib.factors.iter().map(|l| l.order).collect();
    lib_orders.sort_unstable();
    let brute_s4 = table_of(&s4).composition_factor_orders();
    let s4_ok = lib_names == ["C2", "C2", "C2", "C3"] && lib_orders == brute_s4 && brute_s4 == [2, 2, 2, 3];

    let mut brute_a5 = table_of(&a5).normal_subgroup_orders();
    brute_a5.sort_unstable();
    let a5_ok = is_simple_finite(&a5) && brute_a5 == [1, 60];
    Outcome {
        ok: s4_ok && a5_ok,
        detail: format!(
            "S4 factors {lib_names:?} (brute force orders {brute_s4:?}); A5 simple = {}, brute-force normal subgroup orders {brute_a5:?}",
            is_simple_finite(&a5)
        ),
    }
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn corpus_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(manifest_dir().join("examples"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "cg"))
        .collect();
    v.sort();
    v
}

fn run_cli(args: &[&str], file: &Path) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_contractio"))
        .args(args)
        .arg(file)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn cli() -> Outcome {
    let mut problems = Vec::new();
    let files = corpus_files();
    for f in &files {
        let src = std::fs::read_to_string(f).unwrap();
        let d1 = contractio_cli::parse(&src).unwrap();
        let printed = d1.to_string();
        let d2 = contractio_cli::parse(&printed).unwrap();
        if d1 != d2 || d2.to_string() != printed {
            problems.push(format!("round trip {}", f.display()));
        }
    }

    let golden = manifest_dir().join("tests").join("golden");
    let mut compared = 0;
    for f in &files {
        let stem = f.file_stem().unwrap().to_string_lossy().to_string();
        for cmd in ["analyze", "classify", "structure", "verify"] {
            let (c1, o1) = run_cli(&[cmd, "--seed", "7"], f);
            let (c2, o2) = run_cli(&[cmd, "--seed", "7"], f);
            let expected = std::fs::read_to_string(golden.join(format!("{stem}.{cmd}.txt"))).unwrap_or_default();
            compared += 1;
            if c1 != c2 || o1 != o2 || o1 != expected {
                problems.push(format!("golden {stem}.{cmd}"));
            }
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let faults = [
        ("check", vec![], write("bad.cg", "group H = linear(p=3, matrix=[[1,0],[0,3]])\n"), 1),
        ("analyze", vec![], write("singular.cg", "group H = linear(p=3, matrix=[[3,3],[3,3]])\n"), 1),
        ("check", vec![], write("syntax.cg", "group H = shift(C2) +\n"), 1),
        ("classify", vec![], write("nonsimple.cg", "group F = shift(S4)\n"), 2),
        ("classify", vec!["--strict"], write("uncert.cg", "group U = companion(p=3, poly=X^4+9)\n"), 3),
        ("classify", vec![], write("uncert2.cg", "group U = companion(p=3, poly=X^4+9)\n"), 0),
    ];
    for (cmd, extra, path, want) in &faults {
        let mut args = vec![*cmd];
        args.extend(extra.iter().copied());
        let (code, _) = run_cli(&args, path);
        if code != *want {
            problems.push(format!("{cmd} {} exited {code}, expected {want}", path.display()));
        }
    }
    for f in &files {
        let (code, _) = run_cli(&["verify", "--seed", "7"], f);
        if code != 0 {
            problems.push(format!("verify {} exited {code}", f.display()));
        }
    }
    Outcome {
        ok: problems.is_empty(),
        detail: format!(
            "{} corpus files round-trip, {compared} golden reports stable over two runs, {} fault injections; problems: {}",
            files.len(),
            faults.len(),
            if problems.is_empty() { "none".to_string() } else { problems.join(", ") }
        ),
    }
}

fn main() {
    let groups = corpus();
    let mut results = Vec::new();
    report(&mut results, 1, "Jordan-Hoelder invariance", jordan_holder(&groups));

    let checks: Vec<GroupChecks> = check_batch(
        &groups,
        CheckOptions {
            seed: 99,
            samples: STRUCTURE_SAMPLES,
            max_root: MAX_ROOT,
            ..Default::default()
        },
    )
    .into_iter()
    .map(|r| r.expect("generated groups are analysable"))
    .collect();
    report(&mut results, 2, "module laws", module_laws(&checks));
    report(&mut results, 3, "contractivity dual oracle", dual_oracle());
    report(&mut results, 4, "Hensel lifting", hensel());
    report(&mut results, 5, "torsion x divisible structure", theorem_b(&groups, &checks));
    report(&mut results, 6, "Heisenberg block", heisenberg());
    report(&mut results, 7, "classification dichotomy and round trip", classification(&groups));
    report(&mut results, 8, "finite layer vs brute force", finite_layer());
    report(&mut results, 9, "CLI round trip, golden reports, exit codes", cli());

    let passed = results.iter().filter(|&&b| b).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
