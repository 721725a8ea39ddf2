mod common;

use common::permutations;
use sfdc_core::algebra::{q, solve_linear_naive, spectral_product, JsonTerm, RatFunN, Q};
use sfdc_core::conjecture::{
    build_system_sigma, c_reading_a, c_reading_b, extract_constant, system_size, verify_conjectures_with, VerifyOptions,
};
use sfdc_core::linking::{tau_sigma, tau_sigma_linked};
use sfdc_core::reduction::global_reducer;
use sfdc_core::{
    build_system, conjectured_product, parse_expr, solve_coefficients, solve_linear, target_polynomial,
    verify_conjectures, DiagramPoly, Error, FieldElem, LinkSpec, Mode,
};

fn spec(s: &str) -> LinkSpec {
    LinkSpec::parse(s).unwrap()
}

fn expr(s: &str) -> FieldElem {
    parse_expr(s).unwrap()
}

#[test]
fn k2_golden() {
    let x = solve_coefficients(2).unwrap();
    assert_eq!(x, vec![(spec("1:2"), expr("-θ/n"))]);
    let expected = spectral_product(2).scalar_mul(&(&RatFunN::n_plus(-1) / &RatFunN::n()));
    assert_eq!(target_polynomial(2).unwrap(), expected);
    assert_eq!(target_polynomial(2).unwrap(), "((n-1)/n)*θ^2 + (n-1)*K*θ".parse::<DiagramPoly>().unwrap());
}

#[test]
fn k3_golden() {
    let x = solve_coefficients(3).unwrap();
    assert_eq!(
        x,
        vec![
            (spec("1:2"), expr("(2*K-θ)/(n+2)")),
            (spec("1:3"), expr("(-K*n-θ)/(n+2)")),
            (spec("2:3"), expr("(-K*n-θ)/(n+2)")),
        ]
    );
    let (product, c) = conjectured_product(3);
    assert_eq!(c, &RatFunN::n_plus(-1) / &RatFunN::n_plus(2));
    assert_eq!(target_polynomial(3).unwrap(), product);
}

#[test]
fn system_sizes() {
    for (k, size) in [(1, 0), (2, 1), (3, 3), (4, 9), (5, 25), (6, 75)] {
        assert_eq!(system_size(k), size);
        assert_eq!(sfdc_core::SystemIndex::new(k).len(), size);
    }
    assert!(matches!(build_system(7), Err(Error::SizeLimit { requested: 7, .. })));
}

#[test]
fn closed_forms_for_c() {
    assert_eq!(c_reading_a(2), &RatFunN::n_plus(-1) / &RatFunN::n());
    assert_eq!(c_reading_a(3), &RatFunN::n_plus(-1) / &RatFunN::n_plus(2));
    assert_eq!(c_reading_b(2), &RatFunN::n_plus(-1) / &RatFunN::n_plus(2));
    for k in 2..=3 {
        assert_eq!(extract_constant(&target_polynomial(k).unwrap(), k), Some(c_reading_a(k)));
    }
}

fn relabel(spec: &LinkSpec, pi: &[usize]) -> LinkSpec {
    LinkSpec::new(spec.pairs().iter().map(|&(a, b)| (pi[a - 1], pi[b - 1]))).unwrap()
}

/// The target built from `a₁⋯a_k a_{σ(1)}⋯a_{σ(k)}` and its own solution.
fn sigma_target(sigma: &[usize], specs: &[LinkSpec], x: &[FieldElem]) -> DiagramPoly {
    let value = |w: &sfdc_core::Word| global_reducer().reduce(w).to_field();
    let mut acc = value(&tau_sigma(sigma).unwrap());
    for (spec, xi) in specs.iter().zip(x) {
        acc = &acc + &(xi * &value(&tau_sigma_linked(sigma, spec).unwrap()));
    }
    DiagramPoly::from_field(&acc).unwrap()
}

#[test]
fn starting_word_robustness() {
    for k in 2..=4 {
        let reference = build_system(k).unwrap();
        let specs = &reference.index.specs;
        let x = solve_linear(&reference.system).unwrap();
        let target = target_polynomial(k).unwrap();
        for sigma in permutations(k) {
            let sys = build_system_sigma(&sigma, global_reducer()).unwrap();
            assert_eq!(sys.index, reference.index);
            // the same system once the letters are renamed
            let pi = permutations(k)
                .into_iter()
                .find(|pi| {
                    let pos: Vec<usize> =
                        specs.iter().map(|s| specs.iter().position(|t| *t == relabel(s, pi)).unwrap()).collect();
                    (0..specs.len()).all(|r| {
                        sys.system.rhs[r] == reference.system.rhs[pos[r]]
                            && (0..specs.len())
                                .all(|c| sys.system.matrix[r][c] == reference.system.matrix[pos[r]][pos[c]])
                    })
                })
                .unwrap_or_else(|| panic!("no relabelling for {sigma:?}"));
            let xs = solve_linear(&sys.system).unwrap();
            for (i, s) in specs.iter().enumerate() {
                let j = specs.iter().position(|t| *t == relabel(s, &pi)).unwrap();
                assert_eq!(xs[i], x[j], "{sigma:?} {s}");
            }
            assert_eq!(sigma_target(&sigma, specs, &xs), target, "{sigma:?}");
        }
    }
}

#[test]
fn bareiss_matches_naive_on_conjecture_systems() {
    for k in 2..=4 {
        let sys = build_system(k).unwrap();
        let x = solve_linear(&sys.system).unwrap();
        assert_eq!(solve_linear_naive(&sys.system).unwrap(), x, "k={k}");
        assert!(sys.system.residuals(&x).iter().all(FieldElem::is_zero));
    }
}

#[test]
fn target_vanishes_at_spectral_values() {
    let samples: [(i64, i64); 5] = [(2, 1), (3, -2), (5, 3), (7, 1), (4, 5)];
    for k in 2..=4 {
        let target = target_polynomial(k).unwrap();
        for (n, kk) in samples {
            for p in 0..k as i64 {
                let theta = q(-kk * p * (n + p - 1));
                assert_eq!(
                    target.substitute(&theta, &q(kk), n).unwrap(),
                    Q::from_integer(0.into()),
                    "k={k} n={n} K={kk} p={p}"
                );
            }
        }
    }
}

#[test]
fn numeric_and_symbolic_agree() {
    for k in 2..=3 {
        let sys = build_system(k).unwrap();
        let x = solve_linear(&sys.system).unwrap();
        for n in [3i64, 5, 7, 11] {
            let numeric = sys.system.map_entries(|e| e.substitute_n(n)).unwrap();
            let xn = solve_linear(&numeric).unwrap();
            let symbolic_at_n: Vec<FieldElem> = x.iter().map(|e| e.substitute_n(n).unwrap()).collect();
            assert_eq!(xn, symbolic_at_n, "k={k} n={n}");
        }
    }
}

#[test]
fn reports() {
    for k in 1..=3 {
        let r = verify_conjectures(k, Mode::Symbolic).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
    let r =
        verify_conjectures_with(3, &VerifyOptions { mode: Mode::Numeric, n_samples: vec![2, 4], ..Default::default() })
            .unwrap();
    assert!(r.passed(), "{}", r.summary());
    assert_eq!(r.samples.len(), 2);
    assert!(matches!(verify_conjectures(0, Mode::Symbolic), Err(Error::Index { .. })));
}

#[test]
fn report_json_round_trip() {
    let r = verify_conjectures(3, Mode::Symbolic).unwrap();
    let value = r.to_json_value();
    let text = serde_json::to_string_pretty(&value).unwrap();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(back, value);
    assert_eq!(value["k"], 3);
    let terms: Vec<JsonTerm> = serde_json::from_value(value["target"]["terms"].clone()).unwrap();
    assert_eq!(DiagramPoly::from_json_terms(&terms).unwrap(), conjectured_product(3).0);
    let text_form: DiagramPoly = value["target"]["text"].as_str().unwrap().parse().unwrap();
    assert_eq!(text_form, conjectured_product(3).0);
    assert!(value["diagnostics"].as_array().unwrap().iter().any(|d| d.as_str().unwrap().contains("n^l")));
}
