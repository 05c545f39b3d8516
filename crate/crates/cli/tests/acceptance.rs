//! Acceptance suite: one PASS/FAIL line per criterion with its time, and a
//! nonzero exit if any criterion fails or exceeds its time budget.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use novikov_core::complexes::{betti_numbers, OneCocycle};
use novikov_core::equivariant::{
    borel_complex, descend_free_quotient, equivariant_dims, join_resolution, EquivariantData, FiniteGroup,
    JoinResolution,
};
use novikov_core::exactalg::{
    frac, rank_engine, rank_engine_names, rat, ExactRational, LaurentPolynomial, RationalFunctionMatrix,
};
use novikov_core::samples;
use novikov_core::symplectic::{fixed_point_counts, perfectness_check, FixedPointData, Stabilization};
use novikov_core::Config;

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn join_acyclicity() -> Outcome {
    let z2 = FiniteGroup::cyclic(2);
    for m in 2..=5 {
        let betti = betti_numbers(&JoinResolution::new(z2.clone(), m).complex());
        // Reduced Betti numbers of the (m-1)-sphere.
        let mut expected = vec![0; m];
        expected[m - 1] = 1;
        let mut reduced = betti.clone();
        reduced[0] -= 1;
        ensure(reduced == expected, || format!("m = {m}: reduced Betti {reduced:?}"))?;
    }
    Ok("m = 2..5 give spheres S^1..S^4".into())
}

fn classifying_space() -> Outcome {
    let config = Config::default();
    let trivial = equivariant_dims(&samples::z2_point(false), 2, &config).map_err(|e| e.to_string())?;
    let sign = equivariant_dims(&samples::z2_point(true), 2, &config).map_err(|e| e.to_string())?;
    ensure(trivial == vec![1, 0, 0], || format!("trivial fiber: {trivial:?}"))?;
    ensure(sign == vec![0, 0, 0], || format!("sign fiber: {sign:?}"))?;
    Ok("(1, 0, 0) and (0, 0, 0)".into())
}

fn free_descent() -> Outcome {
    let config = Config::default();
    let engine = config.engine.clone();
    let mut seen = Vec::new();
    for (mobius, twisted) in [(false, false), (true, false), (false, true), (true, true)] {
        let data = samples::antipodal_circle(mobius, twisted);
        let borel = equivariant_dims(&data, 1, &config).map_err(|e| e.to_string())?;
        let mut quotient = descend_free_quotient(&data)
            .and_then(|q| q.novikov_numbers(engine.as_ref()))
            .map_err(|e| e.to_string())?;
        quotient.resize(2, 0);
        ensure(borel == quotient, || {
            format!("mobius = {mobius}, twisted = {twisted}: Borel {borel:?}, quotient {quotient:?}")
        })?;
        seen.push(borel);
    }
    ensure(seen[1] == vec![0, 0], || format!("Möbius case gives {:?}", seen[1]))?;
    Ok(format!("Borel = quotient on 4 variants, Möbius {:?}", seen[1]))
}

fn stability() -> Outcome {
    let config = Config::default();
    let engine = config.engine.as_ref();
    let mut checked = 0;
    for (name, data) in samples::equivariant_corpus() {
        for n in 2..=3 {
            let low = borel_complex(&join_resolution(data.group(), n), &data, config.dimension_limit)
                .map_err(|e| format!("{name}: {e}"))?
                .complex()
                .betti_numbers(engine);
            let high = borel_complex(&join_resolution(data.group(), n + 1), &data, config.dimension_limit)
                .map_err(|e| format!("{name}: {e}"))?
                .complex()
                .betti_numbers(engine);
            ensure(low[..n] == high[..n], || {
                format!("{name}: acyclicity {n} gives {:?}, {} gives {:?}", &low[..n], n + 1, &high[..n])
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} comparisons across the corpus"))
}

fn twisted_circle() -> Outcome {
    let data = samples::triangle_circle(3);
    let complex = data.twisted();
    let betti = complex.betti_numbers(Config::default().engine.as_ref());
    ensure(betti == vec![0, 0], || format!("β = {betti:?}"))?;
    let jumps = complex.all_jumps();
    for (degree, j) in jumps.iter().enumerate() {
        ensure(j.jumps.len() == 1, || format!("degree {degree}: {} jumps", j.jumps.len()))?;
        let jump = &j.jumps[0];
        ensure(jump.exact == Some(rat(1)) && jump.dimension == 1, || {
            format!("degree {degree}: jump {jump:?}")
        })?;
    }
    // Direct evaluation at t = 0, away from the function field.
    let at_zero = complex.dims_at(&rat(1)).map_err(|e| e.to_string())?;
    ensure(at_zero == vec![1, 1], || format!("dims at t = 0: {at_zero:?}"))?;
    let alternating = betti[0] as i64 - betti[1] as i64;
    ensure(alternating == data.complex().euler_characteristic(), || "Euler characteristic".into())?;
    Ok("β = (0, 0), single jump at t = 0 with dims (1, 1)".into())
}

fn verdict_of(fixture: &str) -> Result<serde_json::Value, String> {
    let path = common::fixtures().join(fixture);
    let out = novikov_lab::run(
        ["novikov-lab", "verify", path.to_str().unwrap(), "--pmax", "4", "--json"],
        None,
    );
    ensure(out.code == 0, || format!("{fixture}: exit {} {}", out.code, out.stderr))?;
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn inequalities() -> Outcome {
    for fixture in ["verify_circle_height.json", "verify_nowhere_zero.json"] {
        let r = verdict_of(fixture)?;
        let zero = r["remainder"]["coefficients"]
            .as_array()
            .is_some_and(|c| c.len() == 5 && c.iter().all(|x| x == "0"));
        ensure(r["verdict"]["status"] == "perfect" && zero, || format!("{fixture}: {}", r["verdict"]))?;
    }
    let r = verdict_of("verify_inconsistent.json")?;
    let negative = r["remainder"]["coefficients"]
        .as_array()
        .is_some_and(|c| c.iter().any(|x| x.as_str().is_some_and(|s| s.starts_with('-'))));
    ensure(r["verdict"]["status"] == "fails" && negative, || format!("inconsistent: {}", r["verdict"]))?;
    Ok(format!("two perfect, inconsistent fails at p = {}", r["verdict"]["degree"]))
}

fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentPolynomial {
    if rng.gen_bool(0.35) {
        return LaurentPolynomial::zero();
    }
    let terms = rng.gen_range(1..=2);
    LaurentPolynomial::from_terms((0..terms).map(|_| (rng.gen_range(-3..=3), rat(rng.gen_range(-3..=3)))))
}

fn in_range(p: &LaurentPolynomial) -> bool {
    p.terms().all(|(e, _)| (-3..=3).contains(&e))
}

/// Random matrix, with some rows replaced by combinations of earlier rows
/// so that rank deficiency occurs. Exponents stay within [-3, 3].
fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<LaurentPolynomial>> {
    let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
    let mut rows: Vec<Vec<LaurentPolynomial>> = (0..r).map(|_| (0..c).map(|_| random_laurent(rng)).collect()).collect();
    for i in 1..r {
        if rng.gen_bool(0.4) {
            let (a, b) = (rng.gen_range(0..i), rng.gen_range(0..i));
            let shift = rng.gen_range(-1..=1);
            let ca = LaurentPolynomial::monomial(rat(rng.gen_range(1..=3)), shift);
            let cb = LaurentPolynomial::constant(rat(rng.gen_range(-2..=2)));
            let combo: Vec<LaurentPolynomial> = (0..c).map(|j| &(&ca * &rows[a][j]) + &(&cb * &rows[b][j])).collect();
            if combo.iter().all(in_range) {
                rows[i] = combo;
            }
        }
    }
    rows
}

fn evaluate(p: &LaurentPolynomial, s: &ExactRational) -> ExactRational {
    p.terms().fold(rat(0), |acc, (e, c)| {
        let power = if e >= 0 {
            num_traits::pow::pow(s.clone(), e as usize)
        } else {
            num_traits::pow::pow(s.recip(), (-e) as usize)
        };
        acc + c * power
    })
}

/// Plain Gaussian elimination over Q.
fn rational_rank(mut m: Vec<Vec<ExactRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != rat(0)) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && m[r][col] != rat(0) {
                let f = &m[r][col] / &pivot;
                for k in col..cols {
                    let d = &f * &m[rank][k];
                    m[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let engines: Vec<_> = rank_engine_names().into_iter().map(|n| rank_engine(n).unwrap()).collect();
    let mut deficient = 0;
    for trial in 0..200 {
        let rows = random_matrix(&mut rng);
        let m = RationalFunctionMatrix::from_rows(rows.clone()).map_err(|e| e.to_string())?;
        let ranks: Vec<usize> = engines.iter().map(|e| e.generic_rank(&m)).collect();
        ensure(ranks.windows(2).all(|w| w[0] == w[1]), || format!("trial {trial}: engines give {ranks:?}"))?;
        let points: Vec<ExactRational> = (0..5).map(|_| frac(rng.gen_range(1..=50), rng.gen_range(1..=20))).collect();
        let special: Vec<usize> = points
            .iter()
            .map(|s| rational_rank(rows.iter().map(|r| r.iter().map(|p| evaluate(p, s)).collect()).collect()))
            .collect();
        let generic = ranks[0];
        ensure(special.iter().all(|&k| k <= generic), || {
            format!("trial {trial}: specialization exceeds generic rank {generic}: {special:?}")
        })?;
        ensure(special.iter().max() == Some(&generic), || {
            format!("trial {trial}: generic rank {generic}, specializations {special:?}")
        })?;
        if generic < m.rows().min(m.cols()) {
            deficient += 1;
        }
    }
    Ok(format!("200 matrices, {deficient} rank-deficient, {} engines agree", engines.len()))
}

fn symplectic_identities() -> Outcome {
    let data = FixedPointData::isolated(2, 1, &[0, 2], 1).map_err(|e| e.to_string())?;
    // (1 + λ^2) / (1 - λ^2) = 1 + 2λ^2 + 2λ^4 + ...
    let expansion: Vec<i64> = (0..=4).map(|i| if i == 0 { 1 } else if i % 2 == 0 { 2 } else { 0 }).collect();
    let novikov = novikov_core::exactalg::CountingSeries::from_i64(&expansion, 4);
    let report = perfectness_check(&data, &novikov, 4).map_err(|e| e.to_string())?;
    ensure(report.holds(), || format!("localized side {}", report.localized))?;
    let counts = fixed_point_counts(&novikov, 1, 2, 4, Some(2)).map_err(|e| e.to_string())?;
    ensure(counts.counts == vec![rat(1), rat(0), rat(1)], || format!("m = {:?}", counts.counts))?;
    ensure(counts.symmetry_checked && counts.counts[0] == counts.counts[2], || "symmetry".into())?;
    ensure(counts.total == rat(2), || format!("total {}", counts.total))?;
    ensure(counts.stabilization == Stabilization::Verified(rat(2)), || "stabilization".into())?;
    ensure(counts.euler_checked == Some(true) && counts.violations.is_empty(), || {
        format!("violations {:?}", counts.violations)
    })?;
    Ok("identity through λ^4, m = (1, 0, 1), total 2 = χ, stable 2 = d·χ".into())
}

/// Integer values constant on vertex orbits.
fn invariant_function(data: &EquivariantData, rng: &mut ChaCha8Rng) -> Vec<ExactRational> {
    let n = data.complex().vertex_count();
    let mut f: Vec<Option<ExactRational>> = vec![None; n];
    for v in 0..n {
        if f[v].is_none() {
            let value = rat(rng.gen_range(-3..=3));
            for g in 0..data.group().order() {
                f[data.action().apply(g, v)] = Some(value.clone());
            }
        }
    }
    f.into_iter().map(Option::unwrap).collect()
}

fn invariance() -> Outcome {
    let config = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7a_0009);
    let mut checked = 0;
    for (name, data) in samples::equivariant_corpus() {
        let base = equivariant_dims(&data, 2, &config).map_err(|e| format!("{name}: {e}"))?;
        let flipped = data.with_cocycle(data.cocycle().negate()).map_err(|e| format!("{name}: {e}"))?;
        let flipped = equivariant_dims(&flipped, 2, &config).map_err(|e| format!("{name}: {e}"))?;
        ensure(base == flipped, || format!("{name}: θ gives {base:?}, -θ gives {flipped:?}"))?;
        let f = invariant_function(&data, &mut rng);
        let shifted = data.cocycle().add(&OneCocycle::coboundary(data.complex(), &f));
        let shifted = data.with_cocycle(shifted).map_err(|e| format!("{name}: {e}"))?;
        let shifted = equivariant_dims(&shifted, 2, &config).map_err(|e| format!("{name}: {e}"))?;
        ensure(base == shifted, || format!("{name}: θ gives {base:?}, θ + δf gives {shifted:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} corpus inputs, degrees 0..2"))
}

fn golden() -> Outcome {
    let failures = common::check_all();
    ensure(failures.is_empty(), || failures.join("\n"))?;
    Ok(format!("{} reports byte-identical", common::cases().len()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("join acyclicity", Duration::from_secs(5), join_acyclicity),
        ("classifying-space dims", Duration::from_secs(1), classifying_space),
        ("free-action descent", Duration::from_secs(5), free_descent),
        ("stability", Duration::from_secs(60), stability),
        ("Novikov vanishing and jump", Duration::from_secs(1), twisted_circle),
        ("inequalities end to end", Duration::from_secs(3), inequalities),
        ("function-field rank oracle", Duration::from_secs(60), rank_oracle),
        ("symplectic identities", Duration::from_secs(1), symplectic_identities),
        ("invariance battery", Duration::from_secs(60), invariance),
        ("golden CLI reports", Duration::from_secs(120), golden),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = elapsed > *budget;
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over budget {budget:?}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{:>2}] {name} ({:.3} s, budget {} s): {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
