use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use graphchi_analysis::asymptotics::{
    asym_value, cos_lower_bound_scan, ratio_csv, ratio_table, AsymptoticsError,
};
use graphchi_analysis::quadrature::{
    jres_csv, jres_scan, q_integral, stirling_identity_check, ComplexScalar, QuadError, DEFAULT_PREC,
};
use graphchi_core::euler_series::{
    chi_disconnected, chi_table, euler_product_roundtrip, ComplexKind, EulerError, EulerTable, Parity, TableKind,
};
use graphchi_core::exactnum::{parse_rational, BigInt, BigRational};
use graphchi_graphs::chain_homology::{betti_numbers, build_complex, verify_chi, verify_d_squared, ChainError};
use graphchi_graphs::graph_enum::{
    check_connected_cap, chi_oracle, chi_oracle_direct, GraphError, OracleMode, MAX_CONNECTED_RANK, MAX_DISCONNECTED_DEGREE,
};
use rug::Float;
use thiserror::Error;

use crate::cache::{write_atomic, CacheError, ResultCache};
use crate::{Command, QuadCommand, RunConfig, EXIT_USAGE, EXIT_VERIFY};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Euler(#[from] EulerError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Asymptotics(#[from] AsymptoticsError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Verification(_) | CommandError::Cache(_) | CommandError::Io(_) => EXIT_VERIFY,
            CommandError::Chain(ChainError::DSquared { .. } | ChainError::Mismatch { .. }) => EXIT_VERIFY,
            CommandError::Quadrature(QuadError::NoConvergence { .. }) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        }
    }
}

type Result<T> = std::result::Result<T, CommandError>;

fn usage(msg: impl Into<String>) -> CommandError {
    CommandError::Usage(msg.into())
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Accepts `p/q`, integers, decimals and scientific notation such as `1e6`.
pub(crate) fn parse_number(s: &str) -> Result<BigRational> {
    let bad = || usage(format!("cannot parse number {s:?}"));
    if let Ok(q) = parse_rational(s) {
        return Ok(q);
    }
    let t = s.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let int_digits = int_part.strip_prefix(['-', '+']).unwrap_or(int_part);
    let digits = format!("{int_digits}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = BigRational::from(digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from(10);
    let scale = BigRational::from(rug::ops::Pow::pow(&ten, shift.unsigned_abs()));
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

fn cache_for(config: &RunConfig) -> Option<ResultCache> {
    if config.no_cache {
        return None;
    }
    ResultCache::locate(config.cache_dir.as_deref())
}

fn connected_table(config: &RunConfig, kind: ComplexKind, gmax: u32) -> Result<(EulerTable, bool)> {
    match cache_for(config) {
        Some(c) => Ok(c.get_or_compute(TableKind::Connected(kind), gmax, || chi_table(kind, gmax))?),
        None => Ok((chi_table(kind, gmax)?, false)),
    }
}

fn disconnected_table(config: &RunConfig, parity: Parity, nmax: u32) -> Result<(EulerTable, bool)> {
    match cache_for(config) {
        Some(c) => Ok(c.get_or_compute(TableKind::Disconnected(parity), nmax, || chi_disconnected(parity, nmax))?),
        None => Ok((chi_disconnected(parity, nmax)?, false)),
    }
}

fn table_csv(table: &EulerTable, index: &str) -> String {
    let mut s = format!("{index},chi,method\n");
    for (i, v) in table.iter() {
        let _ = writeln!(s, "{i},{v},{}", table.method);
    }
    s
}

pub(crate) fn dispatch(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &config.command {
        Command::Chi { kind, gmax, verify, out: o } => {
            let kind = ComplexKind::from(*kind);
            if *gmax < 2 {
                return Err(usage(format!("--gmax must be at least 2, got {gmax}")));
            }
            if *verify && kind == ComplexKind::Agc {
                return Err(usage("--verify has no enumeration oracle for agc"));
            }
            let (table, _) = connected_table(config, kind, *gmax)?;
            if *verify {
                let top = (*gmax as usize).min(MAX_CONNECTED_RANK);
                for g in 2..=top {
                    let brute = chi_oracle(kind.parity(), OracleMode::Connected(g))?;
                    let series = table.get(g as u32).expect("table covers the range");
                    if &brute != series {
                        return Err(CommandError::Verification(format!("rank {g}: series {series}, enumeration {brute}")));
                    }
                }
                writeln!(err, "verified ranks 2..={top} against enumeration")?;
            }
            emit(o.out.as_deref(), &table_csv(&table, "g"), out)
        }
        Command::ChiDisconnected { parity, nmax, verify, out: o } => {
            let parity = Parity::from(*parity);
            let (table, _) = disconnected_table(config, parity, *nmax)?;
            if *verify {
                let report = euler_product_roundtrip(parity, *nmax)?;
                if let Some(c) = report.checks.iter().find(|c| !c.agrees()) {
                    return Err(CommandError::Verification(format!(
                        "degree {}: generating function {}, Euler product {}",
                        c.n, c.generating_function, c.euler_product
                    )));
                }
                let top = (*nmax as usize).min(MAX_DISCONNECTED_DEGREE);
                for n in 0..=top {
                    let brute = chi_oracle(parity, OracleMode::Disconnected(n))?;
                    let series = table.get(n as u32).expect("table covers the range");
                    if &brute != series {
                        return Err(CommandError::Verification(format!("degree {n}: series {series}, enumeration {brute}")));
                    }
                }
                writeln!(err, "verified Euler product to {nmax} and enumeration to {top}")?;
            }
            emit(o.out.as_deref(), &table_csv(&table, "n"), out)
        }
        Command::Oracle { parity, connected, disconnected, g, n } => {
            let parity = Parity::from(*parity);
            let (mode, index, series) = match (connected, disconnected, g, n) {
                (true, false, Some(g), None) => {
                    if *g < 2 {
                        return Err(usage(format!("--g must be at least 2, got {g}")));
                    }
                    check_connected_cap(*g)?;
                    let (t, _) = connected_table(config, ComplexKind::from_parity(parity), *g as u32)?;
                    (OracleMode::Connected(*g), format!("g={g}"), t.get(*g as u32).cloned())
                }
                (false, true, None, Some(n)) => {
                    let (t, _) = disconnected_table(config, parity, *n as u32)?;
                    (OracleMode::Disconnected(*n), format!("n={n}"), t.get(*n as u32).cloned())
                }
                _ => return Err(usage("give exactly one of --connected --g <G> or --disconnected --n <N>")),
            };
            let brute = chi_oracle(parity, mode)?;
            if let OracleMode::Disconnected(n) = mode {
                let direct = chi_oracle_direct(parity, n)?;
                if direct != brute {
                    return Err(CommandError::Verification(format!("{index}: component assembly {brute}, direct union {direct}")));
                }
            }
            let series = series.expect("table covers the index");
            writeln!(out, "parity={parity} {index} chi={brute} series={series}")?;
            if brute != series {
                return Err(CommandError::Verification(format!("{index}: enumeration {brute}, series {series}")));
            }
            Ok(())
        }
        Command::Homology { parity, g, dump, out: o } => {
            let parity = Parity::from(*parity);
            let complex = build_complex(*g, parity)?;
            if !verify_d_squared(&complex) {
                return Err(CommandError::Verification("∂∘∂ is not zero".into()));
            }
            let betti = betti_numbers(&complex)?;
            let ranks = complex.ranks();
            if let Some((k, r)) = ranks.iter().find(|(_, r)| r.modular.iter().any(|&m| m != r.exact)) {
                writeln!(err, "note: rank of ∂_{k} drops modulo a check prime: {:?} vs {}", r.modular, r.exact)?;
            }
            let (table, _) = connected_table(config, ComplexKind::from_parity(parity), *g as u32)?;
            let expected = table.get(*g as u32).expect("table covers the rank").clone();
            let chi = verify_chi(&complex, &expected)?;
            let mut s = String::from("degree,dim,rank_boundary,betti\n");
            for (&k, &b) in &betti {
                let r = ranks.get(&k).map_or(0, |x| x.exact);
                let _ = writeln!(s, "{k},{},{r},{b}", complex.dimension(k));
            }
            let _ = writeln!(s, "# parity={parity} g={g} chi={chi}");
            if let Some(k) = dump {
                let text = complex.matrix_dump(*k).ok_or_else(|| usage(format!("no boundary map out of degree {k}")))?;
                let _ = writeln!(s, "# boundary out of degree {k}");
                s.push_str(&text);
                if !text.ends_with('\n') && !text.is_empty() {
                    s.push('\n');
                }
            }
            emit(o.out.as_deref(), &s, out)
        }
        Command::Asym { kind, gmax, ratio, out: o } => {
            let kind = ComplexKind::from(*kind);
            if *gmax < 2 {
                return Err(usage(format!("--gmax must be at least 2, got {gmax}")));
            }
            let text = if *ratio {
                let (table, _) = connected_table(config, kind, *gmax)?;
                ratio_csv(&ratio_table(kind, &table)?)
            } else {
                let mut s = String::from("g,asym_sign,asym_log10\n");
                for g in 2..=*gmax as u64 {
                    let v = asym_value(g, kind)?;
                    let _ = writeln!(s, "{g},{},{:.12}", v.sign, v.log10());
                }
                s
            };
            emit(o.out.as_deref(), &text, out)
        }
        Command::CosBound { gmax, mu_star, out: o } => {
            let r = cos_lower_bound_scan(*gmax, *mu_star)?;
            let mut s = String::from("g,abs_cos,bound\n");
            for v in &r.violations {
                let _ = writeln!(s, "{},{:e},{:e}", v.g, v.cosine, v.bound);
            }
            let _ = writeln!(s, "# mu_star={} gmax={} checked={} violations={} clean_from={}", r.mu_star, r.gmax, r.checked, r.violations.len(), r.clean_from);
            emit(o.out.as_deref(), &s, out)
        }
        Command::Quad { which } => quad(which, out),
    }
}

fn float_from(s: &str, prec: u32) -> Result<Float> {
    Ok(Float::with_val(prec, &parse_number(s)?))
}

fn quad(which: &QuadCommand, out: &mut dyn Write) -> Result<()> {
    match which {
        QuadCommand::Stirling { z, tol } => {
            if !(*tol > 0.0) {
                return Err(usage("--tol must be positive"));
            }
            writeln!(out, "z,cutoff,integral,gamma_side,difference,agrees")?;
            let mut failed = Vec::new();
            for text in z {
                let zf = float_from(text, DEFAULT_PREC)?;
                let r = stirling_identity_check(&zf, *tol)?;
                writeln!(
                    out,
                    "{text},{},{:.20e},{:.20e},{:e},{}",
                    r.cutoff,
                    r.integral.value.re,
                    r.gamma_side,
                    r.difference,
                    r.agrees()
                )?;
                if !r.agrees() {
                    failed.push(text.clone());
                }
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CommandError::Verification(format!("difference above {tol} at z = {}", failed.join(", "))))
            }
        }
        QuadCommand::Q { sign, z, eps, xi, u_re, u_im, tol } => {
            let sign = Parity::from(*sign);
            let zf = float_from(z, DEFAULT_PREC)?;
            let eps = match (eps, xi) {
                (Some(e), None) => float_from(e, DEFAULT_PREC)?,
                (None, Some(x)) => {
                    let scale = Float::with_val(DEFAULT_PREC, zf.clone().ln() * Float::with_val(DEFAULT_PREC, -5) / 12u32).exp();
                    Float::with_val(DEFAULT_PREC, scale * *x)
                }
                _ => return Err(usage("give one of --eps or --xi")),
            };
            let u = ComplexScalar::new(float_from(u_re, DEFAULT_PREC)?, float_from(u_im, DEFAULT_PREC)?);
            let r = q_integral(sign, &zf, &eps, &u, *tol)?;
            writeln!(out, "re,im,abs_error_estimate,evaluations")?;
            writeln!(out, "{:.30e},{:.30e},{:e},{}", r.value.re, r.value.im, r.abs_error_estimate, r.evaluations)?;
            Ok(())
        }
        QuadCommand::Jres { parity, n, z_grid, prec, out: o } => {
            let grid = z_grid.iter().map(|s| parse_number(s)).collect::<Result<Vec<_>>>()?;
            if grid.iter().any(|z| z.cmp0() != std::cmp::Ordering::Greater) {
                return Err(usage("z grid values must be positive"));
            }
            let rows = jres_scan(Parity::from(*parity), *n, &grid, *prec)?;
            emit(o.out.as_deref(), &jres_csv(&rows), out)
        }
    }
}
