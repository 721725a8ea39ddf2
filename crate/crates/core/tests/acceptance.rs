//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{permutations, theta_kn_product, word_of};
use sfdc_core::algebra::{q, RatFunN};
use sfdc_core::conjecture::{diagonal_closures, verify_conjectures_with, SystemIndex, VerifyOptions};
use sfdc_core::linking::tau_sigma;
use sfdc_core::oracle::{
    commutation_check_all_frames, contract_volume, contract_word, engine_value, sphere_points, DerivativeTower,
};
use sfdc_core::{
    enumerate_words, leading_part, link, make_eigenfunction, parse_expr, reduce, solve_coefficients, target_polynomial,
    tau, verify_conjectures, DiagramPoly, LinkedWord, Mode, ReduceOptions, Reducer, Schedule, Word,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn poly(s: &str) -> DiagramPoly {
    s.parse().unwrap()
}

fn golden_k2() -> Check {
    let x = solve_coefficients(2).map_err(|e| e.to_string())?;
    ensure(x.len() == 1 && x[0].1 == parse_expr("-θ/n").unwrap(), format!("x = {x:?}"))?;
    let t = target_polynomial(2).map_err(|e| e.to_string())?;
    let expected = theta_kn_product(&[0, 1]).scalar_mul(&(&RatFunN::n_plus(-1) / &RatFunN::n()));
    ensure(t == expected, format!("target {t}"))?;
    Ok(format!("x12 = {}, target = {t}", x[0].1))
}

fn golden_k3() -> Check {
    let x = solve_coefficients(3).map_err(|e| e.to_string())?;
    let want = ["(2*K-θ)/(n+2)", "(-K*n-θ)/(n+2)", "(-K*n-θ)/(n+2)"];
    for ((spec, value), (label, w)) in x.iter().zip(["1:2", "1:3", "2:3"].iter().zip(want)) {
        ensure(spec.label() == *label && *value == parse_expr(w).unwrap(), format!("x[{spec}] = {value}"))?;
    }
    let t = target_polynomial(3).map_err(|e| e.to_string())?;
    let product = &theta_kn_product(&[0, 1]) * &poly("θ + (2*n+2)*K");
    let expected = product.scalar_mul(&(&RatFunN::n_plus(-1) / &RatFunN::n_plus(2)));
    ensure(t == expected, format!("target {t}"))?;
    Ok(format!("target = {t}"))
}

fn conjecture_k4() -> Check {
    let opts = VerifyOptions { mode: Mode::Numeric, n_samples: vec![2, 3, 5, 7, 11], ..Default::default() };
    let numeric = verify_conjectures_with(4, &opts).map_err(|e| e.to_string())?;
    let mut cs = Vec::new();
    for s in &numeric.samples {
        ensure(s.residuals_zero, format!("n={}: nonzero residuals", s.n))?;
        ensure(s.conj2_pass, format!("n={}: target is not C·∏(θ+Kp(n+p−1))", s.n))?;
        cs.push(format!("n={} C={}", s.n, s.extracted_c.as_ref().map_or("-".into(), |c| c.to_string())));
    }
    let symbolic = verify_conjectures(4, Mode::Symbolic).map_err(|e| e.to_string())?;
    let verdict = |b: bool| if b { "pass" } else { "fail" };
    Ok(format!(
        "{}; symbolic: conj1 {}, conj2 {}, C {} ({})",
        cs.join(", "),
        verdict(symbolic.conj1_pass),
        verdict(symbolic.conj2_pass),
        verdict(symbolic.c_pass),
        symbolic.c_constant.map_or("none".to_string(), |c| c.to_string())
    ))
}

fn reduction_goldens() -> Check {
    let cases = [("aa", "θ"), ("aabb", "θ^2"), ("abab", "θ^2 + K(n-1)θ"), ("abba", "θ^2 + K(n-1)θ")];
    for (w, p) in cases {
        let got = reduce(&w.parse().unwrap());
        ensure(got == poly(p), format!("|{w}⟩ = {got}"))?;
    }
    Ok("aa, aabb, abab, abba".into())
}

fn property_suite() -> Check {
    let words: Vec<Word> = (0..=4).flat_map(|k| enumerate_words(k).unwrap()).collect();
    ensure(words.len() == 1 + 1 + 3 + 15 + 105, "word count")?;
    let others: Vec<Reducer> = [
        ReduceOptions { skip_paired_tail: false, schedule: Schedule::LeftmostDefect },
        ReduceOptions { skip_paired_tail: false, schedule: Schedule::RightmostDefect },
        ReduceOptions { skip_paired_tail: true, schedule: Schedule::RightmostDefect },
    ]
    .into_iter()
    .map(Reducer::new)
    .collect();
    for w in &words {
        let p = reduce(w);
        let k = w.half_len() as u32;
        ensure(reduce(&w.reverse()) == p, format!("reversal {w}"))?;
        ensure(p.homogeneous_degree() == Some(k) && p.coeff(k, 0).is_one(), format!("homogeneity {w}"))?;
        ensure(p.without_k() == DiagramPoly::theta_pow(k), format!("K=0 collapse {w}"))?;
        for r in &others {
            ensure(r.reduce(w) == p, format!("schedule/skip {w} {:?}", r.options()))?;
        }
    }
    let small: Vec<&Word> = words.iter().filter(|w| w.half_len() <= 2).collect();
    for u in &small {
        for v in &small {
            ensure(reduce(&u.concat(v)) == &reduce(u) * &reduce(v), format!("multiplicativity {u} {v}"))?;
        }
    }
    let mut sigmas = 0;
    for k in 1..=4 {
        let expected = theta_kn_product(&(0..k as i64).collect::<Vec<_>>());
        for sigma in permutations(k) {
            let w = tau_sigma(&sigma).unwrap();
            ensure(leading_part(&reduce(&w), k).ok() == Some(expected.clone()), format!("dominant component {w}"))?;
            sigmas += 1;
        }
    }
    let mut nested = 0;
    for k in 1..=5 {
        for i in 0..k {
            let mut letters: Vec<usize> = (1..k).collect();
            letters.extend((i + 1..k).rev());
            letters.extend([k, k]);
            letters.extend((1..=i).rev());
            let w = word_of(&letters);
            let mut m: Vec<i64> = (0..k as i64 - 1).collect();
            m.push(i as i64);
            ensure(leading_part(&reduce(&w), k).ok() == Some(theta_kn_product(&m)), format!("nested {w} i={i}"))?;
            nested += 1;
        }
    }
    Ok(format!("{} words, {} products, {sigmas} permutations, {nested} nested words", words.len(), small.len().pow(2)))
}

fn linking_goldens() -> Check {
    let w: Word = "aabccb".parse().unwrap();
    let abba: Word = "abba".parse().unwrap();
    ensure(link(&w, 1, 2).unwrap() == LinkedWord { circles: 1, word: abba.clone() }, "L(1;2) aabccb")?;
    ensure(link(&w, 1, 3).unwrap() == LinkedWord { circles: 0, word: abba }, "L(1;3) aabccb")?;
    let mut count = 0;
    for k in 1..=4 {
        for c in diagonal_closures(k).unwrap() {
            ensure(
                c.circles == c.spec.len() && c.word == tau(k - 2 * c.spec.len()),
                format!("closure k={k} {}", c.spec),
            )?;
            count += 1;
        }
        ensure(SystemIndex::new(k).len() == diagonal_closures(k).unwrap().len(), "closure count")?;
    }
    let report = verify_conjectures(3, Mode::Symbolic).unwrap();
    let flagged = report.diagnostics.iter().any(|d| d.contains("n^l") && d.contains("n^3"));
    ensure(flagged, "n^l vs n^k discrepancy not flagged")?;
    Ok(format!("{count} closures, one circle per pair; n^l vs n^k flagged"))
}

fn enumeration_counts() -> Check {
    let counts: Vec<usize> = (1..=6).map(|k| enumerate_words(k).unwrap().len()).collect();
    ensure(counts == [1, 3, 15, 105, 945, 10395], format!("{counts:?}"))?;
    Ok(format!("{counts:?}"))
}

fn oracle_agreement() -> Check {
    let mut checked = 0;
    for n in [2usize, 3] {
        for p in [1usize, 2] {
            let words: Vec<Word> = (0..=3).flat_map(|k| enumerate_words(k).unwrap()).collect();
            let expected: Vec<_> = words.iter().map(|w| engine_value(w, n, p).unwrap()).collect();
            for index in 0..2 {
                let f = make_eigenfunction(n, p, index).map_err(|e| e.to_string())?;
                let mut tower = DerivativeTower::new(f.reduced);
                let mut points = Vec::new();
                for pt in sphere_points(n, 8) {
                    if points.len() < 2 && contract_word(&mut tower, &Word::empty(), &pt).is_ok() {
                        points.push(pt);
                    }
                }
                ensure(points.len() == 2, format!("no base points for n={n} p={p} f{index}"))?;
                for pt in &points {
                    for (w, e) in words.iter().zip(&expected) {
                        let got = contract_word(&mut tower, w, pt).map_err(|e| e.to_string())?;
                        ensure(got == *e, format!("n={n} p={p} f{index} {w}: sphere {got}, engine {e}"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} exact contractions"))
}

fn volume_annihilation() -> Check {
    let mut checked = 0;
    for (n, k) in [(2, 0), (2, 1), (3, 0)] {
        for p in [1, 2] {
            for seed in [11u64, 23, 37] {
                let v = contract_volume(n, p, k, seed).map_err(|e| e.to_string())?;
                ensure(v == q(0), format!("n={n} k={k} p={p} seed={seed}: {v}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} contractions vanish"))
}

fn commutation() -> Check {
    let mut checked = 0;
    for n in [2usize, 3] {
        for p in [1usize, 2] {
            let mut tower = DerivativeTower::new(make_eigenfunction(n, p, 0).map_err(|e| e.to_string())?.reduced);
            for pt in sphere_points(n, 2) {
                for m in [3, 4] {
                    for i in 1..m {
                        let ok = commutation_check_all_frames(&mut tower, m, i, &pt).map_err(|e| e.to_string())?;
                        ensure(ok, format!("n={n} p={p} m={m} i={i}"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} (n, p, m, i, point) cases over all frames"))
}

type Criterion = (&'static str, Duration, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden k=2 pipeline", Duration::from_secs(1), golden_k2),
        ("golden k=3 pipeline", Duration::from_secs(5), golden_k3),
        ("k=4 conjecture at n = 2, 3, 5, 7, 11", Duration::from_secs(300), conjecture_k4),
        ("reduction golden values", Duration::from_secs(1), reduction_goldens),
        ("property suite, exhaustive for k <= 4", Duration::from_secs(120), property_suite),
        ("linking goldens and diagonal closure", Duration::from_secs(10), linking_goldens),
        ("enumeration counts for k <= 6", Duration::from_secs(30), enumeration_counts),
        ("sphere oracle agreement for k <= 3", Duration::from_secs(600), oracle_agreement),
        ("volume form annihilation", Duration::from_secs(300), volume_annihilation),
        ("commutation identity", Duration::from_secs(300), commutation),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("over budget {budget:?}; {detail}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {:>9.3}s  {name}: {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
