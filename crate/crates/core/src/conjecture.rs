//! The vanishing system for the nested word `τ`, its solution, and the
//! product formula for the resulting target polynomial.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::mpoly::VAR_THETA;
use crate::algebra::{solve_affine, solve_linear, spectral_product, DiagramPoly, FieldElem, LinearSystem, RatFunN, Q};
use crate::error::{Error, Result};
use crate::linking::{multi_link, tau, tau_sigma, tau_sigma_linked, LinkSpec, LinkedWord};
use crate::reduction::{global_reducer, Reducer};
use crate::word::Word;

/// Largest half-length accepted by [`build_system`] unless overridden.
pub const DEFAULT_CONJECTURE_CAP: usize = 6;

/// Integer samples used by the numeric mode when none are given.
pub const DEFAULT_N_SAMPLES: [i64; 5] = [2, 3, 5, 7, 11];

/// All link specs over the letters `1..=k` with `1..=⌊k/2⌋` pairs, by pair count then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemIndex {
    pub k: usize,
    pub specs: Vec<LinkSpec>,
}

impl SystemIndex {
    pub fn new(k: usize) -> Self {
        let mut specs = Vec::new();
        let mut current = Vec::new();
        partial_matchings(1, k, &mut current, &mut specs);
        specs.retain(|s| !s.is_empty());
        specs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        SystemIndex { k, specs }
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }
}

fn partial_matchings(next: usize, k: usize, current: &mut Vec<(usize, usize)>, out: &mut Vec<LinkSpec>) {
    if next > k {
        out.push(LinkSpec::new(current.iter().copied()).expect("disjoint by construction"));
        return;
    }
    let used = |i: usize, cur: &[(usize, usize)]| cur.iter().any(|&(a, b)| a == i || b == i);
    if used(next, current) {
        return partial_matchings(next + 1, k, current, out);
    }
    // `next` left unmatched
    partial_matchings(next + 1, k, current, out);
    for j in next + 1..=k {
        if !used(j, current) {
            current.push((next, j));
            partial_matchings(next + 1, k, current, out);
            current.pop();
        }
    }
}

/// `Σ_{l=1}^{⌊k/2⌋} C(k, 2l)·(2l−1)!!`.
pub fn system_size(k: usize) -> usize {
    (1..=k / 2).map(|l| binomial(k, 2 * l) * crate::word::double_factorial_odd(l) as usize).sum()
}

fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The vanishing system together with its index.
#[derive(Clone, Debug)]
pub struct ConjectureSystem {
    pub index: SystemIndex,
    pub system: LinearSystem,
}

fn linked_value(reducer: &Reducer, lw: &LinkedWord) -> DiagramPoly {
    lw.value(reducer)
}

fn check_cap(k: usize, cap: usize) -> Result<()> {
    if k > cap {
        return Err(Error::SizeLimit { requested: k, cap });
    }
    Ok(())
}

/// Builds the system from the nested word `τ(k)`.
pub fn build_system(k: usize) -> Result<ConjectureSystem> {
    check_cap(k, DEFAULT_CONJECTURE_CAP)?;
    let sigma: Vec<usize> = (1..=k).rev().collect();
    build_system_sigma(&sigma, global_reducer())
}

/// Builds the system from `a₁⋯a_k a_{σ(1)}⋯a_{σ(k)}`.
///
/// Row `J`, column `I`: `n^c |w⟩` where `L_J` (left half) applied to the word
/// linked by `I` on the right half gives `c` circles and `w`. The right-hand
/// side is minus the same quantity for the unlinked start word.
pub fn build_system_sigma(sigma: &[usize], reducer: &Reducer) -> Result<ConjectureSystem> {
    let k = sigma.len();
    let index = SystemIndex::new(k);
    let start = tau_sigma(sigma)?;
    let columns: Vec<Word> = index.specs.iter().map(|i| tau_sigma_linked(sigma, i)).collect::<Result<_>>()?;
    let mut matrix = Vec::with_capacity(index.len());
    let mut rhs = Vec::with_capacity(index.len());
    for j in &index.specs {
        let row = columns
            .iter()
            .map(|w| Ok(linked_value(reducer, &multi_link(w, j)?).to_field()))
            .collect::<Result<Vec<_>>>()?;
        matrix.push(row);
        rhs.push(-&linked_value(reducer, &multi_link(&start, j)?).to_field());
    }
    Ok(ConjectureSystem { index, system: LinearSystem::new(matrix, rhs) })
}

/// Solved coefficients `x_I` in index order.
pub fn solve_coefficients(k: usize) -> Result<Vec<(LinkSpec, FieldElem)>> {
    let sys = build_system(k)?;
    let x = solve_linear(&sys.system)?;
    Ok(sys.index.specs.into_iter().zip(x).collect())
}

/// `|τ⟩ + Σ_I x_I |τ_I⟩` as a field element.
fn target_field(
    k: usize,
    specs: &[LinkSpec],
    x: &[FieldElem],
    value: impl Fn(&Word) -> Result<FieldElem>,
) -> Result<FieldElem> {
    let mut acc = value(&tau(k))?;
    for (spec, xi) in specs.iter().zip(x) {
        let w = crate::linking::tau_linked(k, spec)?;
        acc = &acc + &(xi * &value(&w)?);
    }
    Ok(acc)
}

/// The target polynomial `|τ⟩ + Σ_I x_I |τ_I⟩`.
pub fn target_polynomial(k: usize) -> Result<DiagramPoly> {
    let solved = solve_coefficients(k)?;
    let (specs, x): (Vec<LinkSpec>, Vec<FieldElem>) = solved.into_iter().unzip();
    let t = target_field(k, &specs, &x, |w| Ok(global_reducer().reduce(w).to_field()))?;
    DiagramPoly::from_field(&t)
}

/// The closed form for `C` read so that it matches the worked examples:
/// `(n−1)n⋯(n+k−3) / n(n+2)⋯(n+2k−4)`, with `k − 1` factors in each.
pub fn c_reading_a(k: usize) -> RatFunN {
    let m = k.saturating_sub(1) as i64;
    let num = (0..m).fold(RatFunN::one(), |acc, i| &acc * &RatFunN::n_plus(i - 1));
    let den = (0..m).fold(RatFunN::one(), |acc, i| &acc * &RatFunN::n_plus(2 * i));
    &num / &den
}

/// The closed form for `C` taken literally with `k` factors: `(n−1)n⋯(n+k−2) / n(n+2)⋯(n+2k−2)`.
pub fn c_reading_b(k: usize) -> RatFunN {
    let m = k as i64;
    let num = (0..m).fold(RatFunN::one(), |acc, i| &acc * &RatFunN::n_plus(i - 1));
    let den = (0..m).fold(RatFunN::one(), |acc, i| &acc * &RatFunN::n_plus(2 * i));
    &num / &den
}

/// `C·∏_{p=0}^{k−1}(θ + K p(n+p−1))` with `C` from [`c_reading_a`], and `C`.
pub fn conjectured_product(k: usize) -> (DiagramPoly, RatFunN) {
    let c = c_reading_a(k);
    (spectral_product(k).scalar_mul(&c), c)
}

/// `target / ∏(θ + K p(n+p−1))` when that ratio is free of `θ` and `K`.
pub fn extract_constant(target: &DiagramPoly, k: usize) -> Option<RatFunN> {
    let ratio = &target.to_field() / &spectral_product(k).to_field();
    if !ratio.is_free_of_theta_k() {
        return None;
    }
    DiagramPoly::from_field(&ratio).ok().map(|p| p.coeff(0, 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Symbolic => "symbolic",
            Mode::Numeric => "numeric",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "numeric" => Ok(Mode::Numeric),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// Verdict for one coefficient `x_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient {
    pub spec: LinkSpec,
    pub value: FieldElem,
    /// θ-degree of the numerator, `None` for zero.
    pub theta_degree: Option<u32>,
    pub theta_free_denominator: bool,
}

impl Coefficient {
    fn new(spec: LinkSpec, value: FieldElem) -> Self {
        let theta_degree = value.num().degree_in(VAR_THETA);
        let theta_free_denominator = !value.den().involves(VAR_THETA);
        Coefficient { spec, value, theta_degree, theta_free_denominator }
    }

    fn conj1(&self) -> Conj1 {
        let l = self.spec.len() as u32;
        match self.theta_degree {
            _ if !self.theta_free_denominator => Conj1::Fail,
            Some(d) if d == l => Conj1::Exact,
            Some(d) if d > l => Conj1::Fail,
            _ => Conj1::Lower,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Conj1 {
    Exact,
    Lower,
    Fail,
}

/// One circle-count observation: left-linking a right-linked `τ(k)` by the same spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub spec: LinkSpec,
    pub circles: usize,
    pub word: Word,
    /// The remaining word is `τ(k − 2l)`.
    pub nested_rest: bool,
}

/// Closes every spec of the index against itself.
pub fn diagonal_closures(k: usize) -> Result<Vec<Closure>> {
    SystemIndex::new(k)
        .specs
        .into_iter()
        .map(|spec| {
            let linked = multi_link(&crate::linking::tau_linked(k, &spec)?, &spec)?;
            let nested_rest = linked.word == tau(k - 2 * spec.len());
            Ok(Closure { spec, circles: linked.circles, word: linked.word, nested_rest })
        })
        .collect()
}

/// Results at one integer value of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericSample {
    pub n: i64,
    /// One solution; unique only when `free_unknowns` is zero.
    pub x: Vec<FieldElem>,
    pub free_unknowns: usize,
    pub target: DiagramPoly,
    pub extracted_c: Option<Q>,
    pub c_reading_a: Q,
    pub conj1_pass: bool,
    pub conj2_pass: bool,
    pub c_pass: bool,
    pub residuals_zero: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub k: usize,
    pub mode: Mode,
    pub index: Vec<LinkSpec>,
    /// Symbolic coefficients; empty in numeric mode.
    pub x: Vec<Coefficient>,
    /// Symbolic target; `None` in numeric mode.
    pub target: Option<DiagramPoly>,
    /// `C·∏(θ + K p(n+p−1))` with `C` from the reading that matches the worked examples.
    pub product: DiagramPoly,
    /// `C` extracted from the target, when the target is a multiple of the product.
    pub c_constant: Option<RatFunN>,
    pub c_reading_a: RatFunN,
    pub c_reading_b: RatFunN,
    pub samples: Vec<NumericSample>,
    pub residuals_zero: bool,
    pub conj1_pass: bool,
    pub conj2_pass: bool,
    pub c_pass: bool,
    pub closures: Vec<Closure>,
    pub diagnostics: Vec<String>,
}

impl ConjectureReport {
    /// Every verification passed.
    pub fn passed(&self) -> bool {
        self.residuals_zero && self.conj1_pass && self.conj2_pass && self.c_pass
    }

    pub fn to_json_value(&self) -> Value {
        let poly_json = |p: &DiagramPoly| json!({ "text": p.to_canonical_string(), "terms": p.to_json_terms() });
        json!({
            "k": self.k,
            "mode": self.mode.to_string(),
            "index": self.index.iter().map(|s| s.label()).collect::<Vec<_>>(),
            "x": self.x.iter().map(|c| json!({
                "spec": c.spec.label(),
                "l": c.spec.len(),
                "value": c.value.to_string(),
                "theta_degree": c.theta_degree,
                "theta_free_denominator": c.theta_free_denominator,
            })).collect::<Vec<_>>(),
            "target": self.target.as_ref().map(poly_json),
            "product": poly_json(&self.product),
            "c_constant": self.c_constant.as_ref().map(|c| c.to_string()),
            "c_reading_a": self.c_reading_a.to_string(),
            "c_reading_b": self.c_reading_b.to_string(),
            "c_matches_reading_b": self.c_constant.as_ref() == Some(&self.c_reading_b),
            "samples": self.samples.iter().map(|s| json!({
                "n": s.n,
                "free_unknowns": s.free_unknowns,
                "x": s.x.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "target": poly_json(&s.target),
                "extracted_c": s.extracted_c.as_ref().map(|c| c.to_string()),
                "c_reading_a": s.c_reading_a.to_string(),
                "conj1_pass": s.conj1_pass,
                "conj2_pass": s.conj2_pass,
                "c_pass": s.c_pass,
                "residuals_zero": s.residuals_zero,
            })).collect::<Vec<_>>(),
            "closures": self.closures.iter().map(|c| json!({
                "spec": c.spec.label(),
                "l": c.spec.len(),
                "circles": c.circles,
                "word": c.word.to_string(),
                "nested_rest": c.nested_rest,
            })).collect::<Vec<_>>(),
            "residuals_zero": self.residuals_zero,
            "conj1_pass": self.conj1_pass,
            "conj2_pass": self.conj2_pass,
            "c_pass": self.c_pass,
            "diagnostics": self.diagnostics,
        })
    }

    /// Plain-text summary table.
    pub fn summary(&self) -> String {
        let mut out = format!("k = {} ({} mode, {} unknowns)\n", self.k, self.mode, self.index.len());
        for c in &self.x {
            let deg = c.theta_degree.map_or("-".to_string(), |d| d.to_string());
            out.push_str(&format!("  x[{}]  l={}  θ-deg={}  {}\n", c.spec, c.spec.len(), deg, c.value));
        }
        if let Some(t) = &self.target {
            out.push_str(&format!("  target   {}\n", t.to_canonical_string()));
        }
        for s in &self.samples {
            let c = s.extracted_c.as_ref().map_or("none".to_string(), |c| c.to_string());
            out.push_str(&format!(
                "  n={:<3} C={:<12} closed form={:<12} degrees={} product={} C={}\n",
                s.n,
                c,
                s.c_reading_a.to_string(),
                verdict(s.conj1_pass),
                verdict(s.conj2_pass),
                verdict(s.c_pass)
            ));
        }
        if self.mode == Mode::Symbolic {
            let c = self.c_constant.as_ref().map_or("none".to_string(), |c| c.to_string());
            out.push_str(&format!("  C extracted {c}\n"));
        }
        out.push_str(&format!(
            "  closed form for C: {} (k-1 factors), {} (k factors)\n",
            self.c_reading_a, self.c_reading_b
        ));
        out.push_str(&format!(
            "  residuals {}  coefficient degrees {}  product form {}  C {}\n",
            verdict(self.residuals_zero),
            verdict(self.conj1_pass),
            verdict(self.conj2_pass),
            verdict(self.c_pass)
        ));
        for d in &self.diagnostics {
            out.push_str(&format!("  note: {d}\n"));
        }
        out
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn closure_diagnostics(k: usize, closures: &[Closure]) -> Vec<String> {
    let mut out = Vec::new();
    let per_pair = closures.iter().all(|c| c.circles == c.spec.len() && c.nested_rest);
    if closures.is_empty() {
        return out;
    }
    if per_pair {
        out.push(format!(
            "diagonal closure gives one circle per linked pair (factor n^l, l = 1..{}); a factor n^{k} holds only for l = k",
            k / 2
        ));
    } else {
        out.push("diagonal closure does not give one circle per linked pair".to_string());
    }
    out
}

/// Options for [`verify_conjectures_with`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub n_samples: Vec<i64>,
    pub cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: Mode::Symbolic, n_samples: DEFAULT_N_SAMPLES.to_vec(), cap: DEFAULT_CONJECTURE_CAP }
    }
}

pub fn verify_conjectures(k: usize, mode: Mode) -> Result<ConjectureReport> {
    verify_conjectures_with(k, &VerifyOptions { mode, ..VerifyOptions::default() })
}

pub fn verify_conjectures_with(k: usize, opts: &VerifyOptions) -> Result<ConjectureReport> {
    check_cap(k, opts.cap)?;
    if k == 0 {
        return Err(Error::Index { index: 0, max: opts.cap });
    }
    let reducer = global_reducer();
    let sigma: Vec<usize> = (1..=k).rev().collect();
    let sys = build_system_sigma(&sigma, reducer)?;
    let (product, c_a) = conjectured_product(k);
    let closures = diagonal_closures(k)?;
    let mut diagnostics = closure_diagnostics(k, &closures);
    let specs = sys.index.specs.clone();

    let mut report = ConjectureReport {
        k,
        mode: opts.mode,
        index: specs.clone(),
        x: Vec::new(),
        target: None,
        product,
        c_constant: None,
        c_reading_a: c_a.clone(),
        c_reading_b: c_reading_b(k),
        samples: Vec::new(),
        residuals_zero: true,
        conj1_pass: true,
        conj2_pass: true,
        c_pass: true,
        closures,
        diagnostics: Vec::new(),
    };

    match opts.mode {
        Mode::Symbolic => {
            let x = solve_linear(&sys.system)?;
            report.residuals_zero = sys.system.residuals(&x).iter().all(FieldElem::is_zero);
            let coeffs: Vec<Coefficient> =
                specs.iter().cloned().zip(x.iter().cloned()).map(|(s, v)| Coefficient::new(s, v)).collect();
            let (pass, notes) = conj1_verdict(&coeffs);
            report.conj1_pass = pass;
            diagnostics.extend(notes);
            report.x = coeffs;
            let t = target_field(k, &specs, &x, |w| Ok(reducer.reduce(w).to_field()))?;
            match DiagramPoly::from_field(&t) {
                Ok(target) => {
                    report.c_constant = extract_constant(&target, k);
                    report.conj2_pass = report.c_constant.is_some();
                    report.c_pass = report.c_constant.as_ref() == Some(&c_a);
                    if let Some(c) = &report.c_constant {
                        if *c == report.c_reading_b && *c != c_a {
                            diagnostics.push("extracted C matches the literal k-factor closed form".into());
                        } else if *c != c_a {
                            diagnostics.push(format!("extracted C = {c} differs from both closed forms"));
                        }
                    } else {
                        diagnostics.push("target is not a multiple of ∏(θ + K p(n+p−1))".into());
                    }
                    report.target = Some(target);
                }
                Err(_) => {
                    report.conj2_pass = false;
                    report.c_pass = false;
                    diagnostics.push(format!("target has θ or K in its denominator: {t}"));
                }
            }
        }
        Mode::Numeric => {
            for &n in &opts.n_samples {
                let sample = numeric_sample(k, n, &sys, reducer)?;
                report.residuals_zero &= sample.residuals_zero;
                report.conj1_pass &= sample.conj1_pass;
                report.conj2_pass &= sample.conj2_pass;
                report.c_pass &= sample.c_pass;
                diagnostics.extend(sample.notes.iter().cloned());
                report.samples.push(sample);
            }
        }
    }
    report.diagnostics = diagnostics;
    Ok(report)
}

fn conj1_verdict(coeffs: &[Coefficient]) -> (bool, Vec<String>) {
    let mut pass = true;
    let mut notes = Vec::new();
    for c in coeffs {
        match c.conj1() {
            Conj1::Exact => {}
            Conj1::Lower => notes.push(format!(
                "x[{}] has θ-degree {} below l = {}",
                c.spec,
                c.theta_degree.map_or("-∞".to_string(), |d| d.to_string()),
                c.spec.len()
            )),
            Conj1::Fail => pass = false,
        }
    }
    (pass, notes)
}

fn numeric_sample(k: usize, n: i64, sys: &ConjectureSystem, reducer: &Reducer) -> Result<NumericSample> {
    let numeric = sys.system.map_entries(|e| e.substitute_n(n))?;
    let value = |w: &Word| -> Result<FieldElem> { Ok(reducer.reduce(w).substitute_n(n)?.to_field()) };
    let (x, kernel) = match solve_linear(&numeric) {
        Ok(x) => (x, Vec::new()),
        Err(Error::SingularSystem { .. }) => {
            let affine = solve_affine(&numeric)?;
            (affine.particular, affine.kernel)
        }
        Err(e) => return Err(e),
    };
    let residuals_zero = numeric.residuals(&x).iter().all(FieldElem::is_zero);
    let mut notes = Vec::new();
    // a free direction v leaves the target unchanged iff Σ v_I |τ_I⟩ = 0
    let mut target_determined = true;
    for v in &kernel {
        let shift = target_field(k, &sys.index.specs, v, value)?;
        let base = value(&tau(k))?;
        if !(&shift - &base).is_zero() {
            target_determined = false;
        }
    }
    let conj1_pass = if kernel.is_empty() {
        let coeffs: Vec<Coefficient> =
            sys.index.specs.iter().cloned().zip(x.iter().cloned()).map(|(s, v)| Coefficient::new(s, v)).collect();
        conj1_verdict(&coeffs).0
    } else {
        notes.push(format!(
            "n={n}: system has {} free unknown(s); the coefficients are not determined here, the target {}",
            kernel.len(),
            if target_determined { "is the same for every solution" } else { "depends on the choice of solution" }
        ));
        true
    };
    let t = target_field(k, &sys.index.specs, &x, value)?;
    let target = DiagramPoly::from_field(&t)?;
    let product = spectral_product(k).substitute_n(n)?;
    let ratio = &target.to_field() / &product.to_field();
    let extracted_c = match ratio.is_free_of_theta_k() && target_determined {
        true => Some(DiagramPoly::from_field(&ratio)?.coeff(0, 0).eval_int(0)?),
        false => None,
    };
    let c_a = c_reading_a(k).eval_int(n)?;
    Ok(NumericSample {
        n,
        x,
        free_unknowns: kernel.len(),
        target,
        conj2_pass: extracted_c.is_some(),
        c_pass: extracted_c.as_ref() == Some(&c_a),
        extracted_c,
        c_reading_a: c_a,
        conj1_pass,
        residuals_zero,
        notes,
    })
}
