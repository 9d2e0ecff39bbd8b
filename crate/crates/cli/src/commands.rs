use std::fmt::Write;
use std::path::Path;

use partstat::asymptotics::{
    dim_moment_asym, exact_summary, int_moment_asym, log_bell_asym, log_bell_exact,
};
use partstat::exactnum::{bell_mod_sequence, bell_numbers, format_rational};
use partstat::recursions::{dim_distribution, dim_moments, int_distribution, int_moments};
use partstat::shifted_bell::{
    default_sample_range, fit_function, profile_dim, profile_generic, profile_int,
    ShiftedBellPolynomial,
};
use partstat::statistics::{builtin, parse_pattern_document, Builtin, Statistic};
use partstat::{Integer, Rational, SetPartition};

use crate::error::{CliError, CliResult};
use crate::{FitArgs, StatisticSource, Target};

/// Largest `n` enumerated without `--force`.
pub const GUARD: usize = 14;

fn guard(n: usize, force: bool) -> CliResult<()> {
    if n > GUARD && !force {
        return Err(CliError::Guard { n, guard: GUARD });
    }
    Ok(())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_statistic(pattern: Option<&Path>, name: Option<&str>) -> CliResult<Statistic> {
    match (pattern, name) {
        (Some(path), _) => Ok(parse_pattern_document(&read(path)?)?),
        (None, Some(name)) => Ok(name.parse::<Builtin>()?.statistic()?),
        (None, None) => Err(CliError::Usage(
            "give --pattern FILE or --builtin NAME".into(),
        )),
    }
}

fn source_statistic(source: &StatisticSource) -> CliResult<Statistic> {
    load_statistic(source.pattern.as_deref(), source.builtin.as_deref())
}

pub fn bell(max: usize, modulus: Option<u64>) -> CliResult<String> {
    let mut out = String::from("n,value\n");
    match modulus {
        Some(0) => return Err(CliError::Usage("--mod must be positive".into())),
        Some(m) => {
            for (n, v) in bell_mod_sequence(max + 1, m).iter().enumerate() {
                writeln!(out, "{n},{v}").unwrap();
            }
        }
        None => {
            for (n, v) in bell_numbers(max).iter().enumerate() {
                writeln!(out, "{n},{v}").unwrap();
            }
        }
    }
    Ok(out)
}

fn histogram_csv(rows: impl IntoIterator<Item = (String, String)>) -> String {
    let mut out = String::from("value,count\n");
    for (v, c) in rows {
        writeln!(out, "{v},{c}").unwrap();
    }
    out
}

pub fn dist(target: Target, n: usize, brute: bool, force: bool) -> CliResult<String> {
    if brute {
        guard(n, force)?;
        let name = match target {
            Target::Dim => "dimension",
            Target::Int => "intertwining",
        };
        let hist = builtin(name, None)?.distribution(n);
        return Ok(histogram_csv(
            hist.into_iter()
                .map(|(v, c)| (format_rational(&v), c.to_string())),
        ));
    }
    let counts = match target {
        Target::Dim => dim_distribution(n),
        Target::Int => int_distribution(n),
    };
    Ok(histogram_csv(
        counts
            .into_iter()
            .enumerate()
            .filter(|(_, c)| c != &Integer::from(0))
            .map(|(b, c)| (b.to_string(), c.to_string())),
    ))
}

pub fn moments(target: Target, n: usize, k: usize) -> String {
    let values = match target {
        Target::Dim => dim_moments(k, n),
        Target::Int => int_moments(k, n),
    };
    let mut out = String::from("k,sum\n");
    for (j, v) in values.iter().enumerate() {
        writeln!(out, "{j},{v}").unwrap();
    }
    out
}

pub fn eval(source: &StatisticSource, partition: &str) -> CliResult<String> {
    let stat = source_statistic(source)?;
    let lambda: SetPartition = partition.parse()?;
    Ok(format!("{}\n", format_rational(&stat.eval(&lambda))))
}

pub fn aggregate(source: &StatisticSource, n: usize, force: bool) -> CliResult<String> {
    guard(n, force)?;
    let stat = source_statistic(source)?;
    Ok(format!("{}\n", format_rational(&stat.aggregate(n))))
}

fn render_fit(r: &ShiftedBellPolynomial) -> String {
    format!("{}\n{}{}\n", r.canonical_text(), r.to_lines(), r.to_json())
}

pub fn fit(args: &FitArgs) -> CliResult<String> {
    if let Some(target) = args.target {
        let k = args
            .k
            .ok_or_else(|| CliError::Usage("--target needs --k".into()))?;
        let profile = match target {
            Target::Dim => profile_dim(k),
            Target::Int => profile_int(k),
        };
        let range = default_sample_range(&profile, args.holdout);
        let series = match target {
            Target::Dim => partstat::recursions::dim_moment_series(k, *range.end() as usize),
            Target::Int => partstat::recursions::int_moment_series(k, *range.end() as usize),
        };
        let r = fit_function(&profile, args.holdout, |n| {
            Ok(Rational::from_integer(series[n as usize][k].clone()))
        })?;
        return Ok(render_fit(&r));
    }
    let stat = load_statistic(args.pattern.as_deref(), args.builtin.as_deref())?;
    let (Some(degree), Some(k)) = (args.profile_degree, args.profile_k) else {
        return Err(CliError::Usage(
            "fitting a statistic needs --profile-degree and --profile-k".into(),
        ));
    };
    let profile = profile_generic(degree, k);
    let range = default_sample_range(&profile, args.holdout);
    guard(*range.end() as usize, args.force)?;
    let r = fit_function(&profile, args.holdout, |n| Ok(stat.aggregate(n as usize)))?;
    Ok(render_fit(&r))
}

fn exact_moments(target: Target, n: u64) -> CliResult<Vec<Integer>> {
    let mut out = vec![partstat::exactnum::bell(n as usize)];
    for k in 1..=3 {
        let profile = match target {
            Target::Dim => profile_dim(k),
            Target::Int => profile_int(k),
        };
        let end = *default_sample_range(&profile, 3).end() as usize;
        let series = match target {
            Target::Dim => partstat::recursions::dim_moment_series(k, end),
            Target::Int => partstat::recursions::int_moment_series(k, end),
        };
        let r = fit_function(&profile, 3, |m| {
            Ok(Rational::from_integer(series[m as usize][k].clone()))
        })?;
        out.push(r.evaluate_integer(n)?);
    }
    Ok(out)
}

pub fn asym(target: Target, n: u64) -> CliResult<String> {
    if n < 2 {
        return Err(CliError::Usage("asym needs n >= 2".into()));
    }
    let mut out = String::from("quantity,exact,estimate,relative_error,error_order\n");
    let exact_log = log_bell_exact(n as usize);
    for t in 0..=2 {
        let est = log_bell_asym(n, 0, t)?;
        writeln!(
            out,
            "ln B_n (T={t}),{exact_log:.10e},{:.10e},{:.6e},(alpha/n)^{}",
            est.log_value,
            (est.log_value - exact_log).exp_m1(),
            t + 1
        )
        .unwrap();
    }
    let (mean, s2, s3) = exact_summary(&exact_moments(target, n)?);
    let est = match target {
        Target::Dim => dim_moment_asym(n),
        Target::Int => int_moment_asym(n),
    };
    for (name, exact, term) in [
        ("mean", mean, est.mean),
        ("S2", s2, est.s2),
        ("S3", s3, est.s3),
    ] {
        writeln!(
            out,
            "{name},{exact:.10e},{:.10e},{:.6e},{}",
            term.value,
            term.value / exact - 1.0,
            term.error_order
        )
        .unwrap();
    }
    Ok(out)
}

pub fn plot(input: &Path, out: Option<&Path>) -> CliResult<String> {
    let text = read(input)?;
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("value,count") {
        return Err(CliError::Usage(format!(
            "{}: expected a `value,count` header",
            input.display()
        )));
    }
    let mut values = Vec::new();
    let mut counts = Vec::new();
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let bad = || CliError::Usage(format!("{}: bad row {}: `{line}`", input.display(), i + 2));
        let (v, c) = line.split_once(',').ok_or_else(bad)?;
        let v: Rational = partstat::exactnum::parse_rational(v).ok_or_else(bad)?;
        let c: Integer = c.trim().parse().map_err(|_| bad())?;
        values.push(format_rational(&v));
        counts.push(c.to_string());
    }
    let image = out
        .unwrap_or(input)
        .with_extension("png")
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "histogram.png".into());
    let title = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(format!(
        r##"#!/usr/bin/env python3
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

values = [float(Fraction(v)) for v in [{values}]]
counts = [float(c) for c in [{counts}]]

fig, ax = plt.subplots(figsize=(8, 4.5))
ax.bar(values, counts, width=0.9, color="#4c72b0")
ax.set_xlabel("value")
ax.set_ylabel("count")
ax.set_title({title:?})
fig.tight_layout()
fig.savefig({image:?}, dpi=150)
"##,
        values = values
            .iter()
            .map(|v| format!("\"{v}\""))
            .collect::<Vec<_>>()
            .join(", "),
        counts = counts.join(", "),
    ))
}
