//! The ten acceptance criteria of the workspace as runnable checks.

use std::time::Duration;

use graphchi_analysis::asymptotics::{cos_lower_bound_scan, ratio_table};
use graphchi_analysis::quadrature::{jres_scan, q_residual, stirling_identity_check, z_value, DEFAULT_PREC};
use graphchi_core::euler_series::{
    chi_disconnected, chi_table, euler_product, euler_product_roundtrip, psi_series, xi_table, ComplexKind, Parity,
    Variant,
};
use graphchi_core::exactnum::{BigInt, BigRational};
use graphchi_graphs::chain_homology::{betti_numbers, build_complex, verify_chi, verify_d_squared};
use graphchi_graphs::graph_enum::{chi_oracle, chi_oracle_direct, orientable_counts, partition_count_table, OracleMode};
use rug::Float;

const PARITIES: [Parity; 2] = [Parity::Even, Parity::Odd];

/// A passing summary line or the reason for failure.
pub type Outcome = Result<String, String>;

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    pub run: fn() -> Outcome,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

/// B_0..=B_n by the Akiyama–Tanigawa recurrence, B_1 = +1/2.
fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::from((1, m as i64 + 1)));
        for j in (1..=m).rev() {
            let d = BigRational::from(&a[j - 1] - &a[j]);
            a[j - 1] = d * BigRational::from(j as i64);
        }
        out.push(a[0].clone());
    }
    out
}

fn criterion_1() -> Outcome {
    for p in PARITIES {
        let series = chi_disconnected(p, 3).map_err(|e| e.to_string())?;
        let roundtrip = euler_product_roundtrip(p, 3).map_err(|e| e.to_string())?;
        check(roundtrip.all_equal(), || format!("{p}: Euler product disagrees with the generating function"))?;
        let connected = chi_table(ComplexKind::from_parity(p), 4).map_err(|e| e.to_string())?;
        let product = euler_product(&connected, 3).map_err(|e| e.to_string())?;
        for n in 0..=3u32 {
            let a = series.get(n).unwrap();
            let direct = chi_oracle_direct(p, n as usize).map_err(|e| e.to_string())?;
            check(&product[n as usize] == a && &direct == a, || {
                format!("{p} n={n}: series {a}, product {}, enumeration {direct}", product[n as usize])
            })?;
        }
    }
    Ok("χ_n^± for n ≤ 3 equal on all three routes".into())
}

fn criterion_2() -> Outcome {
    let anchors = [(Parity::Even, 2, 0), (Parity::Odd, 2, 1), (Parity::Even, 3, 1)];
    for (p, g, v) in anchors {
        let brute = chi_oracle(p, OracleMode::Connected(g)).map_err(|e| e.to_string())?;
        check(brute == v, || format!("anchor {p} g={g}: enumeration gives {brute}, expected {v}"))?;
    }
    for p in PARITIES {
        let table = chi_table(ComplexKind::from_parity(p), 4).map_err(|e| e.to_string())?;
        for g in 2..=4u32 {
            let brute = chi_oracle(p, OracleMode::Connected(g as usize)).map_err(|e| e.to_string())?;
            let series = table.get(g).unwrap();
            check(&brute == series, || format!("{p} g={g}: series {series}, enumeration {brute}"))?;
        }
    }
    Ok("connected χ for g ∈ {2,3,4} agree; anchors 0, 1, 1 confirmed".into())
}

fn criterion_3() -> Outcome {
    let mut cells = 0;
    for p in PARITIES {
        let table = partition_count_table(5, p).map_err(|e| e.to_string())?;
        for s in 0..=5 {
            let counts = orientable_counts(s, p);
            for (r, count) in &counts {
                let oracle = table.get(&(s, *r)).cloned().unwrap_or_default();
                check(&oracle == count, || format!("{p} s={s} r={r}: cycle index {oracle}, enumeration {count}"))?;
                cells += 1;
            }
            for ((s2, r), v) in &table {
                if *s2 == s && !counts.iter().any(|c| c.0 == *r) {
                    check(*v == 0, || format!("{p} s={s} r={r}: cycle index {v}, no orientable class"))?;
                }
            }
        }
    }
    Ok(format!("{cells} (s, r) cells with s ≤ 5 agree"))
}

fn criterion_4() -> Outcome {
    let b = bernoulli_numbers(51);
    for p in PARITIES {
        let xi = xi_table(1, p, 50).map_err(|e| e.to_string())?;
        for n in 1..=50usize {
            let mut expect = &b[n + 1] / BigRational::from((n * (n + 1)) as i64);
            if p == Parity::Even {
                expect = -expect;
            }
            check(xi[&(n as u32)] == expect, || format!("{p} n={n}: {} vs {expect}", xi[&(n as u32)]))?;
            if n % 2 == 0 {
                check(xi[&(n as u32)] == 0, || format!("{p} n={n}: even index does not vanish"))?;
            }
        }
    }
    Ok("ξ_{n,1}^± = ∓B_{n+1}/(n(n+1)) for n ≤ 50, even n vanish".into())
}

fn criterion_5() -> Outcome {
    let mut summary = Vec::new();
    for p in PARITIES {
        let table = chi_table(ComplexKind::from_parity(p), 4).map_err(|e| e.to_string())?;
        for g in 2..=4usize {
            let c = build_complex(g, p).map_err(|e| e.to_string())?;
            check(verify_d_squared(&c), || format!("{p} g={g}: ∂² ≠ 0"))?;
            let chi = verify_chi(&c, table.get(g as u32).unwrap()).map_err(|e| format!("{p} g={g}: {e}"))?;
            let (lo, hi) = match p {
                Parity::Even => (2 * g, 3 * g - 3),
                Parity::Odd => (1, 2 * g - 2),
            };
            for (k, b) in betti_numbers(&c).map_err(|e| e.to_string())? {
                check(b == 0 || (lo..=hi).contains(&k), || format!("{p} g={g}: b_{k} = {b} outside [{lo}, {hi}]"))?;
            }
            summary.push(format!("{p}{g}:{chi}"));
        }
    }
    Ok(format!("∂² = 0, Betti sums match χ, support in range ({})", summary.join(" ")))
}

fn criterion_6() -> Outcome {
    const GMAX: u32 = 60;
    let n = GMAX as i64 - 1;
    // Ψ_k starts at u^⌈k/6⌉, so larger k cannot reach u^n
    let kmax = 6 * n as u32;
    let mut checked = 0;
    for (parity, variant) in [(Parity::Even, Variant::Moebius), (Parity::Odd, Variant::Moebius), (Parity::Odd, Variant::Totient)] {
        for k in 1..=kmax {
            let psi = psi_series(k, parity, n, variant).map_err(|e| format!("{parity} {variant:?} k={k}: {e}"))?;
            let floor = (k as i64 + 5) / 6;
            if let Some(v) = psi.valuation() {
                check(v >= floor, || format!("{parity} {variant:?} k={k}: exponent {v} below {floor}"))?;
            }
            checked += 1;
        }
    }
    for kind in ComplexKind::ALL {
        let t = chi_table(kind, GMAX).map_err(|e| format!("{kind:?}: {e}"))?;
        check(t.len() == GMAX as usize - 1, || format!("{kind:?}: {} entries", t.len()))?;
    }
    Ok(format!("{checked} series with k ≤ {kmax} respect ⌈k/6⌉; all three tables to 60 are integral"))
}

fn criterion_7() -> Outcome {
    let even = ratio_table(ComplexKind::GcEven, &chi_table(ComplexKind::GcEven, 60).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let dev = |g: u32| even[(g - 2) as usize].ratio_minus_one().unwrap();
    let (d30, d60) = (dev(30), dev(60));
    let mut flip = Vec::new();
    for kind in [ComplexKind::GcOdd, ComplexKind::Agc] {
        let rows = ratio_table(kind, &chi_table(kind, 60).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        for g in 50..=60u32 {
            let r = rows[(g - 2) as usize].ratio.unwrap();
            let e = even[(g - 2) as usize].ratio.unwrap();
            check((r / e - 1.0).abs() < 0.01, || format!("{kind:?} g={g}: ratio {r} vs even {e}"))?;
        }
        flip.push(format!("{}={:.4}", kind.slug(), rows[58].ratio.unwrap()));
    }
    check(d60 <= d30 / 2.0, || {
        format!("even |ratio−1| = {d30:.3e} at g=30, {d60:.3e} at g=60; sign flip agrees ({})", flip.join(", "))
    })?;
    Ok(format!("even |ratio−1|: {d30:.3e} → {d60:.3e}; {}", flip.join(", ")))
}

fn criterion_8() -> Outcome {
    let r = cos_lower_bound_scan(100_000, 7.5).map_err(|e| e.to_string())?;
    check(r.clean_from < 100, || format!("clean only from g₁ = {}", r.clean_from))?;
    Ok(format!("{} odd g checked, {} violations, g₁ = {}", r.checked, r.violations.len(), r.clean_from))
}

fn criterion_9() -> Outcome {
    for z in [1.0, 5.5, 20.0, 50.0] {
        let r = stirling_identity_check(&Float::with_val(DEFAULT_PREC, z), 1e-8).map_err(|e| e.to_string())?;
        check(r.agrees(), || format!("Stirling at z={z}: difference {:e}", r.difference))?;
    }
    let res: Vec<f64> = [50.0, 100.0, 200.0, 400.0]
        .iter()
        .map(|&z| q_residual(Parity::Odd, &Float::with_val(DEFAULT_PREC, z), 8.0, 1e-25).map(|r| r.0.to_f64()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let factors: Vec<f64> = res.windows(2).map(|w| w[0] / w[1]).collect();
    check(factors.iter().all(|&f| f >= 8.0), || format!("Q⁻ residual factors {factors:?}"))?;
    Ok(format!("Stirling within 1e-8; Q⁻ residual factors {:?}", factors.iter().map(|f| format!("{f:.1}")).collect::<Vec<_>>()))
}

fn criterion_10() -> Outcome {
    let grid: Vec<BigRational> = [1_000u64, 10_000, 100_000, 1_000_000].iter().map(|&z| z_value(z)).collect();
    let mut notes = Vec::new();
    for p in PARITIES {
        let rows = jres_scan(p, 12, &grid, 256).map_err(|e| e.to_string())?;
        let chi = chi_disconnected(p, 1).map_err(|e| e.to_string())?;
        for r in &rows {
            let expect = BigRational::from(chi.get(0).unwrap().clone())
                + BigRational::from((chi.get(1).unwrap().clone(), BigInt::from(r.z.numer())));
            check(r.partial_sum == expect, || format!("{p} z={}: partial sum {}", r.z, r.partial_sum))?;
        }
        let deltas: Vec<f64> = rows.iter().map(|r| r.delta.to_f64()).collect();
        check(rows.windows(2).all(|w| w[1].delta < w[0].delta), || format!("{p}: Δ = {deltas:?}"))?;
        notes.push(format!("{p}: |J| at 10³, 10⁶ = {:.2e}, {:.2e}", rows[0].j.value.abs().to_f64(), rows[3].j.value.abs().to_f64()));
    }
    Ok(format!("Δ strictly decreasing for both parities ({})", notes.join(", ")))
}

/// All criteria in order, with their runtime limits.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "three-way χ_n^± agreement", limit: Duration::from_secs(300), run: criterion_1 },
        Criterion { id: 2, name: "connected χ vs enumeration", limit: Duration::from_secs(600), run: criterion_2 },
        Criterion { id: 3, name: "cycle-index oracle", limit: Duration::from_secs(600), run: criterion_3 },
        Criterion { id: 4, name: "ξ_{n,1} Bernoulli identity", limit: Duration::from_secs(60), run: criterion_4 },
        Criterion { id: 5, name: "homology suite", limit: Duration::from_secs(900), run: criterion_5 },
        Criterion { id: 6, name: "vanishing order and integrality", limit: Duration::from_secs(120), run: criterion_6 },
        Criterion { id: 7, name: "asymptotic trend", limit: Duration::from_secs(300), run: criterion_7 },
        Criterion { id: 8, name: "cosine bound scan", limit: Duration::from_secs(60), run: criterion_8 },
        Criterion { id: 9, name: "Stirling and Q⁻ residual", limit: Duration::from_secs(600), run: criterion_9 },
        Criterion { id: 10, name: "jres trend at n = 12", limit: Duration::from_secs(600), run: criterion_10 },
    ]
}
