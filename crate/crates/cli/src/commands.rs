use std::io::Write;

use serde_json::{json, Value};
use sfdc_core::algebra::q;
use sfdc_core::conjecture::{verify_conjectures_with, VerifyOptions};
use sfdc_core::oracle::{
    contract_word, eigenspace_dim, engine_value, seeded_permutation, sphere_points, DerivativeTower,
};
use sfdc_core::reduction::global_reducer;
use sfdc_core::{
    contract_volume, enumerate_words, make_eigenfunction, multi_link, parse_word, reduce, render, DiagramPoly, Error,
    LinkSpec, Mode, RenderFormat, Word,
};

use crate::{Command, Failure, ModeArg, TableFormat};

/// Largest half-length accepted by `table`.
pub const TABLE_CAP: usize = 5;
/// Largest half-length accepted by `oracle-check`.
pub const ORACLE_CAP: usize = 4;

pub fn dispatch(command: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Words { k, count, .. } => words(*k, *count, out),
        Command::Reduce { word, json } => reduce_word(word, *json, out),
        Command::Link { word, pairs } => link(word, pairs, out),
        Command::Conjecture { k, mode, n_samples, json } => conjecture(*k, *mode, n_samples, *json, out),
        Command::OracleCheck { n, p, max_k, word, points, eigenfunctions, rng_seed } => oracle_check(
            &OracleArgs {
                n: *n,
                p: *p,
                max_k: *max_k,
                word: word.as_deref(),
                points: *points,
                eigenfunctions: *eigenfunctions,
                seed: *rng_seed,
            },
            out,
        ),
        Command::Table { max_k, format } => table(*max_k, *format, out),
    }
}

fn poly_json(p: &DiagramPoly) -> Value {
    json!({ "text": p.to_canonical_string(), "terms": p.to_json_terms() })
}

fn words(k: usize, count: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let all = enumerate_words(k)?;
    if count {
        writeln!(out, "{}", all.len())?;
    } else {
        for w in &all {
            writeln!(out, "{w}")?;
        }
    }
    Ok(())
}

fn reduce_word(word: &str, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let w = parse_word(word)?;
    let p = reduce(&w);
    if as_json {
        let v = json!({ "word": w.to_string(), "canonical": w.canonical().to_string(), "polynomial": poly_json(&p) });
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json value"))?;
    } else {
        writeln!(out, "{}", p.to_canonical_string())?;
    }
    Ok(())
}

fn link(word: &str, pairs: &str, out: &mut dyn Write) -> Result<(), Failure> {
    let w = parse_word(word)?;
    let spec = LinkSpec::parse(pairs)?;
    let linked = multi_link(&w, &spec)?;
    writeln!(out, "circles: {}", linked.circles)?;
    writeln!(out, "word: {}", linked.word)?;
    writeln!(out, "value: {}", linked.value(global_reducer()).to_canonical_string())?;
    Ok(())
}

fn conjecture(k: usize, mode: ModeArg, n_samples: &[i64], as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let mode = match mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Numeric => Mode::Numeric,
    };
    let mut opts = VerifyOptions { mode, ..VerifyOptions::default() };
    if !n_samples.is_empty() {
        if let Some(&bad) = n_samples.iter().find(|&&n| n < 1) {
            return Err(Failure::Usage(format!("n sample {bad} must be positive")));
        }
        opts.n_samples = n_samples.to_vec();
    }
    let report = verify_conjectures_with(k, &opts)?;
    if as_json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json_value()).expect("json value"))?;
    } else {
        write!(out, "{}", report.summary())?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify(format!("conjecture check at k = {k} ({mode} mode)")))
    }
}

struct OracleArgs<'a> {
    n: usize,
    p: usize,
    max_k: usize,
    word: Option<&'a str>,
    points: usize,
    eigenfunctions: usize,
    seed: u64,
}

fn oracle_check(args: &OracleArgs<'_>, out: &mut dyn Write) -> Result<(), Failure> {
    let OracleArgs { n, p, max_k, .. } = *args;
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    if args.points == 0 || args.eigenfunctions == 0 {
        return Err(Failure::Usage("--points and --eigenfunctions must be positive".into()));
    }
    let words: Vec<Word> = match args.word {
        Some(text) => vec![parse_word(text)?],
        None => {
            if max_k > ORACLE_CAP {
                return Err(Error::SizeLimit { requested: max_k, cap: ORACLE_CAP }.into());
            }
            let mut all = Vec::new();
            for k in 1..=max_k {
                all.extend(enumerate_words(k)?);
            }
            all
        }
    };
    if let Some(w) = words.iter().find(|w| w.half_len() > ORACLE_CAP) {
        return Err(Error::SizeLimit { requested: w.half_len(), cap: ORACLE_CAP }.into());
    }

    // one derivative tower per eigenfunction, each with the points where it does not vanish
    let mut setups = Vec::new();
    for index in 0..args.eigenfunctions.min(eigenspace_dim(n, p)) {
        let f = make_eigenfunction(n, p, index)?;
        let mut tower = DerivativeTower::new(f.reduced);
        let mut pts = Vec::new();
        for pt in sphere_points(n, args.points + 8) {
            if pts.len() == args.points {
                break;
            }
            let value = tower.get(0)?.eval(&pt).values[0].clone();
            if value != q(0) {
                pts.push(pt);
            }
        }
        setups.push((tower, pts));
    }

    writeln!(out, "sphere S^{n}, degree p = {p}, θ = {}, K = 1", -((p * (p + n - 1)) as i64))?;
    writeln!(out, "{:<14} {:<14} {:<14} agree", "word", "engine", "oracle")?;
    let mut failures = 0;
    let mut checks = 0;
    for w in &words {
        let expected = engine_value(w, n, p)?;
        let mut seen = Vec::new();
        let mut ok = true;
        for (tower, pts) in setups.iter_mut() {
            for pt in pts.iter() {
                let got = contract_word(tower, w, pt)?;
                checks += 1;
                ok &= got == expected;
                if !seen.contains(&got) {
                    seen.push(got);
                }
            }
        }
        if !ok {
            failures += 1;
        }
        let oracle = seen.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(
            out,
            "{:<14} {:<14} {:<14} {}",
            w.to_string(),
            expected.to_string(),
            oracle,
            if ok { "yes" } else { "NO" }
        )?;
    }

    for k in 0..=1usize {
        if 2 * k + n > 2 * max_k.max(1) {
            break;
        }
        let seed = args.seed.wrapping_add(k as u64);
        let value = contract_volume(n, p, k, seed)?;
        checks += 1;
        let ok = value == q(0);
        if !ok {
            failures += 1;
        }
        let sigma: Vec<String> = seeded_permutation(2 * k + n, seed).iter().map(|s| (s + 1).to_string()).collect();
        writeln!(out, "volume k={k} σ=[{}]: {value} {}", sigma.join(" "), if ok { "yes" } else { "NO" })?;
    }

    let verdict = if failures == 0 { "PASS" } else { "FAIL" };
    writeln!(out, "verdict: {verdict} ({} words, {checks} exact checks, {failures} mismatches)", words.len())?;
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Verify(format!("{failures} oracle mismatch(es) on S^{n} at p = {p}")))
    }
}

struct Row {
    k: usize,
    word: Word,
    diagram: String,
    poly: DiagramPoly,
}

fn table(max_k: usize, format: TableFormat, out: &mut dyn Write) -> Result<(), Failure> {
    if max_k > TABLE_CAP {
        return Err(Error::SizeLimit { requested: max_k, cap: TABLE_CAP }.into());
    }
    let mut rows = Vec::new();
    for k in 1..=max_k {
        for word in enumerate_words(k)? {
            let diagram = render(&word, RenderFormat::AsciiArc).text;
            let poly = reduce(&word);
            rows.push(Row { k, word, diagram, poly });
        }
    }
    match format {
        TableFormat::Md => {
            writeln!(out, "| word | diagram | polynomial |")?;
            writeln!(out, "|---|---|---|")?;
            for r in &rows {
                let diagram: Vec<String> = r.diagram.lines().map(|l| format!("`{}`", l.replace('|', "\\|"))).collect();
                writeln!(out, "| {} | {} | {} |", r.word, diagram.join("<br>"), r.poly.to_canonical_string())?;
            }
        }
        TableFormat::Csv => {
            let mut csv = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Failure::Io(e.to_string());
            csv.write_record(["word", "diagram", "polynomial"]).map_err(csv_err)?;
            for r in &rows {
                csv.write_record([r.word.to_string(), r.diagram.clone(), r.poly.to_ascii_string()]).map_err(csv_err)?;
            }
            let bytes = csv.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
            out.write_all(&bytes)?;
        }
        TableFormat::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "k": r.k, "word": r.word.to_string(), "diagram": r.diagram, "polynomial": poly_json(&r.poly) }))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json value"))?;
        }
    }
    Ok(())
}
