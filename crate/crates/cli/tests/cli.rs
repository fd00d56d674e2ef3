use std::path::Path;
use std::process::{Command, Output};

use graphchi_cli::cache::{cache_roundtrip, table_to_json, ResultCache, CACHE_DIR_ENV};
use graphchi_core::euler_series::{chi_disconnected, chi_table, ComplexKind, EulerTable, Parity, TableKind};
use graphchi_core::exactnum::{BigInt, BigRational};
use proptest::prelude::*;

fn graphchi(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphchi"))
        .args(args)
        .env(CACHE_DIR_ENV, cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const EVEN: [i64; 20] = [0, 1, 0, 1, -1, 1, 0, 0, -2, 1, 0, 0, -2, 0, -4, -3, -1, 8, 12, 27];

#[test]
fn chi_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("chi.csv");
    let o = graphchi(dir.path(), &["chi", "--kind", "gc-even", "--gmax", "60", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "g,chi,method");
    assert_eq!(lines.len(), 60);
    for (i, v) in EVEN.iter().enumerate() {
        assert_eq!(lines[i + 1], format!("{},{v},generating-function", i + 2));
    }
    assert!(dir.path().join("gc-even.v1.json").exists());
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["chi", "--gmax", "1"],
        vec!["chi", "--gmax", "5", "--frobnicate"],
        vec!["chi", "--kind", "agc", "--gmax", "5", "--verify"],
        vec!["oracle", "--parity", "even", "--connected", "--g", "9"],
        vec!["oracle", "--parity", "even", "--connected"],
        vec!["homology", "--parity", "odd", "--g", "6"],
        vec!["cos-bound", "--gmax", "100", "--mu-star", "7"],
        vec!["quad", "jres", "--parity", "odd", "--z-grid", "10,5"],
        vec!["quad", "q", "--sign", "plus", "--z", "10"],
        vec!["nonsense"],
    ] {
        let o = graphchi(dir.path(), &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = graphchi(dir.path(), &["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cos-bound"));
}

#[test]
fn oracle_matches_series() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphchi(dir.path(), &["oracle", "--parity", "odd", "--connected", "--g", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "parity=odd g=3 chi=1 series=1\n");
    let o = graphchi(dir.path(), &["oracle", "--parity", "even", "--disconnected", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("chi=1 series=1"));
}

#[test]
fn verify_flags() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphchi(dir.path(), &["chi", "--kind", "gc-odd", "--gmax", "10", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = graphchi(dir.path(), &["chi-disconnected", "--parity", "even", "--nmax", "8", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n,chi,method\n0,1,"));
}

#[test]
fn corrupted_cache_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    // a checksummed table with a wrong value at rank 3 looks valid to the cache
    let mut bad = EulerTable::new(TableKind::Connected(ComplexKind::GcEven), "generating-function");
    for (g, v) in chi_table(ComplexKind::GcEven, 8).unwrap().iter() {
        let v = if g == 3 { BigInt::from(7) } else { v.clone() };
        bad.push(g, &BigRational::from(v)).unwrap();
    }
    ResultCache::new(dir.path()).store(&bad).unwrap();
    let o = graphchi(dir.path(), &["chi", "--gmax", "8", "--verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank 3"));
    // bypassing the cache recomputes correctly
    let o = graphchi(dir.path(), &["chi", "--gmax", "8", "--verify", "--no-cache"]);
    assert_eq!(o.status.code(), Some(0));
    // a tampered file fails its checksum and is recomputed
    let path = ResultCache::new(dir.path()).path(TableKind::Connected(ComplexKind::GcEven));
    let text = std::fs::read_to_string(&path).unwrap().replace("\"2\":\"0\"", "\"2\":\"5\"");
    std::fs::write(&path, text).unwrap();
    let o = graphchi(dir.path(), &["chi", "--gmax", "8", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cache_hits_are_identical_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["chi", "--kind", "agc", "--gmax", "40"];
    let cold = stdout(&graphchi(dir.path(), &args));
    let warm = stdout(&graphchi(dir.path(), &args));
    let serial = stdout(&graphchi(dir.path(), &["chi", "--kind", "agc", "--gmax", "40", "--threads", "1", "--no-cache"]));
    assert_eq!(cold, warm);
    assert_eq!(cold, serial);
    // a smaller request is served from the larger cached table
    let small = stdout(&graphchi(dir.path(), &["chi", "--kind", "agc", "--gmax", "10"]));
    assert_eq!(small.lines().count(), 10);
    assert!(cold.starts_with(&small));
    let cached = ResultCache::new(dir.path()).load(TableKind::Connected(ComplexKind::Agc)).unwrap().unwrap();
    assert_eq!(cached, chi_table(ComplexKind::Agc, 40).unwrap());
}

#[test]
fn homology_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphchi(dir.path(), &["homology", "--parity", "odd", "--g", "3", "--dump", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("degree,dim,rank_boundary,betti\n"));
    assert!(text.contains("# parity=odd g=3 chi=1"));
    assert!(text.contains("# boundary out of degree 3"));
    let betti: i64 = text
        .lines()
        .skip(1)
        .take_while(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<i64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            if f[0] % 2 == 0 { f[3] } else { -f[3] }
        })
        .sum();
    assert_eq!(betti, 1);
}

#[test]
fn asym_and_cosine_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphchi(dir.path(), &["asym", "--kind", "gc-odd", "--gmax", "20", "--ratio"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("g,chi_exact,asym_sign,asym_log10,ratio_minus_1"));
    assert_eq!(text.lines().count(), 20);
    let o = graphchi(dir.path(), &["asym", "--gmax", "5"]);
    assert_eq!(stdout(&o).lines().next(), Some("g,asym_sign,asym_log10"));
    let o = graphchi(dir.path(), &["cos-bound", "--gmax", "1000", "--mu-star", "7.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g,abs_cos,bound\n# mu_star=7.5 gmax=1000 checked=499 violations=0 clean_from=3\n");
}

#[test]
fn quadrature_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = graphchi(dir.path(), &["quad", "stirling", "--z", "1,5.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(",true")).count(), 2);
    let o = graphchi(dir.path(), &["quad", "stirling", "--z", "1", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = graphchi(dir.path(), &["quad", "q", "--sign", "minus", "--z", "100", "--xi", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let re: f64 = line.split(',').next().unwrap().parse().unwrap();
    assert!((re - 1.000_833_677_872_012_2).abs() < 1e-15);
    let out = dir.path().join("jres.csv");
    let o = graphchi(dir.path(), &["quad", "jres", "--parity", "odd", "--n", "12", "--z-grid", "1e3,1e4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "z,J_real,J_imag,partial_sum,delta,delta_normalized");
    assert!(lines[1].starts_with("1000,"));
    assert!(lines[1].contains(",1001/1000,"));
}

#[test]
fn library_entry_point_matches_binary() {
    let dir = tempfile::tempdir().unwrap();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let dir_arg = dir.path().to_str().unwrap();
    let code = graphchi_cli::run_with(["graphchi", "--cache-dir", dir_arg, "chi", "--kind", "gc-odd", "--gmax", "12"], &mut out, &mut err);
    assert_eq!(code, 0);
    let bin = graphchi(dir.path(), &["chi", "--kind", "gc-odd", "--gmax", "12", "--no-cache"]);
    assert_eq!(String::from_utf8(out).unwrap(), stdout(&bin));
    assert!(dir.path().join("gc-odd.v1.json").exists());
}

fn table_strategy() -> impl Strategy<Value = EulerTable> {
    let kinds = prop_oneof![
        Just(TableKind::Connected(ComplexKind::GcEven)),
        Just(TableKind::Connected(ComplexKind::Agc)),
        Just(TableKind::Disconnected(Parity::Odd)),
    ];
    (kinds, prop::collection::vec(any::<i128>(), 0..30), 0u32..200).prop_map(|(kind, values, shift)| {
        let mut t = EulerTable::new(kind, "random");
        for (i, v) in values.into_iter().enumerate() {
            let big = BigInt::from(v) * BigInt::from(BigInt::u_pow_u(10, shift));
            t.push(kind.first_index() + i as u32, &BigRational::from(big)).unwrap();
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cache_roundtrip_is_identity(t in table_strategy()) {
        prop_assert_eq!(cache_roundtrip(&t).unwrap(), t);
    }

    #[test]
    fn stored_tables_reload_identically(t in table_strategy()) {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path());
        cache.store(&t).unwrap();
        prop_assert_eq!(cache.load(t.kind).unwrap(), Some(t.clone()));
        prop_assert_eq!(std::fs::read_to_string(cache.path(t.kind)).unwrap(), table_to_json(&t));
    }
}

#[test]
fn real_tables_roundtrip() {
    let t = chi_table(ComplexKind::GcEven, 60).unwrap();
    assert_eq!(cache_roundtrip(&t).unwrap(), t);
    let d = chi_disconnected(Parity::Even, 30).unwrap();
    assert_eq!(cache_roundtrip(&d).unwrap(), d);
}
