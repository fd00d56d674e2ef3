use graphchi_analysis::asymptotics::*;
use graphchi_core::euler_series::{chi_table, ComplexKind, Parity};
use graphchi_core::exactnum::BigInt;
use proptest::prelude::*;

const LN_10: f64 = std::f64::consts::LN_10;

// (sign, log10 |value|) of the even-rank GC_even formula, from mpmath at 40 digits
const EVEN_ORACLE: [(u64, i8, f64); 3] = [
    (10, -1, -3.124_623_572_770_63),
    (30, -1, 5.823_845_181_512_412),
    (60, 1, 30.773_507_061_604_178),
];

// (g, sign, log10 |value|, cosine factor) of the odd-rank formula, from mpmath
const ODD_ORACLE: [(u64, i8, f64, f64); 3] = [
    (11, 1, -0.673_231_941_173_582_8, 0.981_930_766_820_970_8),
    (31, 1, 4.575_753_997_634_042, 0.576_642_219_650_930_1),
    (59, -1, 17.002_339_970_868_803, -0.608_401_106_638_576_6),
];

#[test]
fn formula_matches_independent_evaluation() {
    for (g, sign, log10) in EVEN_ORACLE {
        let v = asym_value(g, ComplexKind::GcEven).unwrap();
        assert_eq!(v.sign, sign, "g={g}");
        assert!((v.log10() - log10).abs() < 1e-14, "g={g}: {}", v.log10());
    }
    for (g, sign, log10, cosine) in ODD_ORACLE {
        let v = asym_value(g, ComplexKind::GcEven).unwrap();
        assert_eq!(v.sign, sign, "g={g}");
        assert!((v.log10() - log10).abs() < 1e-14, "g={g}");
        assert!((odd_cosine(g, 128).to_f64() - cosine).abs() < 1e-15, "g={g}");
    }
}

#[test]
fn rank_forty_examples() {
    let v = asym_value(40, ComplexKind::GcEven).unwrap();
    assert_eq!(v.sign, 1);
    // ½ ln(8π) − (3/2) ln 40 + 40 (ln 40 − ln 2π − 1)
    let expect = 0.5 * (8.0 * std::f64::consts::PI).ln() - 1.5 * 40f64.ln()
        + 40.0 * (40f64.ln() - (2.0 * std::f64::consts::PI).ln() - 1.0);
    assert!((v.log_magnitude.to_f64() - expect).abs() < 1e-11);
    let w = asym_value(41, ComplexKind::GcEven).unwrap();
    let c = odd_cosine(41, 128).to_f64();
    assert_eq!(w.sign as f64, c.signum());
}

#[test]
fn odd_and_associative_are_negated() {
    for g in 2..=200u64 {
        let e = asym_value(g, ComplexKind::GcEven).unwrap();
        for k in [ComplexKind::GcOdd, ComplexKind::Agc] {
            let o = asym_value(g, k).unwrap();
            assert_eq!(o.sign, -e.sign);
            assert_eq!(o.log_magnitude, e.log_magnitude);
        }
    }
    assert!(asym_value(1, ComplexKind::GcEven).is_err());
}

#[test]
fn even_subsequence_converges_over_the_doubled_range() {
    let table = chi_table(ComplexKind::GcEven, 120).unwrap();
    let rows = ratio_table(ComplexKind::GcEven, &table).unwrap();
    let at = |g: u32| rows.iter().find(|r| r.g == g).unwrap().ratio_minus_one().unwrap();
    assert!(at(120) <= at(60) / 2.0, "{} vs {}", at(120), at(60));
    // monotone decay once past the last near-crossing
    for g in (34..120).step_by(2) {
        assert!(at(g + 2) < at(g), "g={g}");
    }
    assert_eq!(even_sign_threshold(&table), Some(26));
}

#[test]
fn sign_flip_agreement_at_the_top() {
    let even = ratio_table(ComplexKind::GcEven, &chi_table(ComplexKind::GcEven, 60).unwrap()).unwrap();
    for kind in [ComplexKind::GcOdd, ComplexKind::Agc] {
        let rows = ratio_table(kind, &chi_table(kind, 60).unwrap()).unwrap();
        for g in 50..=60 {
            let r = rows[(g - 2) as usize].ratio.unwrap();
            let e = even[(g - 2) as usize].ratio.unwrap();
            assert!((r - 1.0).abs() < 0.25, "{kind:?} g={g}: {r}");
            assert!((r / e - 1.0).abs() < 0.01, "{kind:?} g={g}");
        }
    }
}

#[test]
fn csv_columns() {
    let table = chi_table(ComplexKind::GcOdd, 8).unwrap();
    let csv = ratio_csv(&ratio_table(ComplexKind::GcOdd, &table).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "g,chi_exact,asym_sign,asym_log10,ratio_minus_1");
    assert_eq!(lines.len(), 8);
    assert!(lines[1].starts_with("2,1,"));
}

#[test]
fn cosine_scans() {
    let r = cos_lower_bound_scan(100_000, 7.5).unwrap();
    assert_eq!(r.checked, 49_999);
    assert!(r.violations.is_empty());
    assert_eq!(r.clean_from, 3);
    assert!(cos_lower_bound_scan(100_000, 42.0).unwrap().violations.is_empty());
    assert!(cos_lower_bound_scan(100, 7.0).is_err());
    // g = 3: |cos| ≈ 0.35
    assert!((odd_cosine(3, 128).to_f64() - 0.349_364_534_559_134).abs() < 1e-14);
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

#[test]
fn xi22_trend() {
    for parity in [Parity::Even, Parity::Odd] {
        let entries = xi22_asym_check(parity, 10..=40).unwrap();
        // isolated spikes sit at near-zeros of the cosine, so compare medians
        let dev = |lo: u32, hi: u32| median(entries.iter().filter(|e| (lo..=hi).contains(&e.n)).map(|e| (e.ratio.unwrap() - 1.0).abs()).collect());
        assert!(dev(30, 40) < dev(10, 15), "{parity}");
        let n20 = &entries[10];
        assert_eq!(n20.n, 20);
        assert_eq!(n20.ratio.unwrap().signum(), 1.0);
    }
    // formula at n = 20, "+" case, from mpmath: sign −1, log10 8.22600735139375612
    let v = xi22_asym(20, Parity::Even, 128);
    assert_eq!(v.sign, -1);
    assert!((v.log10() - 8.226_007_351_393_756).abs() < 1e-13);
    assert_eq!(xi22_asym(20, Parity::Odd, 128).sign, 1);
}

#[test]
fn homology_bound_report() {
    let table = chi_table(ComplexKind::GcEven, 60).unwrap();
    let r = hgc_bound_report(&table, 0.05).unwrap();
    assert_eq!(r.failures, vec![2, 4, 8, 9, 12, 13, 15, 24]);
    assert_eq!(r.holds_from, Some(25));
    let tiny = hgc_lower_bound(4, 1e-3).unwrap();
    assert!(tiny.log_magnitude < 0);
    assert!(hgc_lower_bound(10, 0.06).is_err());
    assert!(hgc_lower_bound(10, 0.0).is_err());
    // odd ranks use exponent g/2
    let odd = hgc_lower_bound(11, 0.05).unwrap().log_magnitude.to_f64();
    assert!((odd - 5.5 * (0.55f64).ln()).abs() < 1e-12);
}

proptest! {
    #[test]
    fn log_arithmetic_matches_integers(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        let x = SignedLogValue::from_integer(&BigInt::from(a), 128);
        let y = SignedLogValue::from_integer(&BigInt::from(b), 128);
        let p = x.mul(&y);
        prop_assert_eq!(p.sign as i64, (a * b).signum());
        if a * b != 0 {
            prop_assert!((p.to_f64() - (a * b) as f64).abs() <= 1e-9 * ((a * b) as f64).abs());
            let q = p.div(&y);
            prop_assert!((q.to_f64() - a as f64).abs() < 1e-9 * (a as f64).abs());
        }
    }

    #[test]
    fn huge_integers_keep_their_logarithm(e in 1u32..5_000, m in 1u32..1_000_000) {
        let x = BigInt::from(BigInt::u_pow_u(10, e)) * m;
        let v = SignedLogValue::from_integer(&x, 128);
        let expect = e as f64 * LN_10 + (m as f64).ln();
        prop_assert!((v.log_magnitude.to_f64() - expect).abs() < 1e-9 * expect.max(1.0));
    }

    #[test]
    fn ratio_against_itself_is_one(g in 2u64..500) {
        let v = asym_value(g, ComplexKind::GcEven).unwrap();
        prop_assume!(v.sign != 0);
        prop_assert!((v.div(&v).to_f64() - 1.0).abs() < 1e-30);
    }
}
