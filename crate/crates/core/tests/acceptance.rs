//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p pdrqa --test acceptance`.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use pdrqa::oracle::{self, DetClass};
use pdrqa::pdseq::{pd_prefix_substitution, pd_prefix_toeplitz, pd_prefix_valuation};
use pdrqa::rplines::{self, StartPoint};
use pdrqa::rqa;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn f(q: &BigRational) -> f64 {
    q.to_f64().expect("finite")
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn report_at(n: u64, m: u64, l_min: u64) -> rqa::RqaReport {
    let x = pd_prefix_substitution((n + m) as usize);
    rqa::quantify(&rplines::diagonal_histogram(&x, n, m).unwrap(), l_min).unwrap()
}

/// Criterion 1: line starts from the arithmetic sets agree with a brute-force scan.
fn line_start_sets() -> Verdict {
    const GRID: u64 = 512;
    const PREFIX: u64 = 1200;
    let t = Instant::now();
    let x = pd_prefix_substitution(PREFIX as usize);
    // lines starting inside the grid with length <= GRID end before row PREFIX,
    // so the finite scan sees them at their true length
    let found: HashMap<(u64, u64), u64> = rplines::reference_scan(&x, PREFIX, 1)
        .unwrap()
        .into_iter()
        .filter(|p| p.i <= GRID && p.j <= GRID)
        .map(|p| ((p.i, p.j), p.length))
        .collect();
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    for i in 1..=GRID {
        for j in (1..=GRID).filter(|&j| j != i) {
            let actual = found.get(&(i, j)).copied();
            for len in 1..=GRID {
                checked += 1;
                if oracle::is_line_start(i, j, len).unwrap() != (actual == Some(len)) {
                    mismatches.push((i, j, len));
                }
            }
        }
    }
    let elapsed = t.elapsed();
    let detail = format!("{checked} triples, {} mismatches, {:.2?}", mismatches.len(), elapsed);
    if mismatches.is_empty() && elapsed < Duration::from_secs(60) {
        Ok(detail)
    } else {
        Err(format!("{detail}; first: {:?}", mismatches.first()))
    }
}

/// Criterion 2: every interior line length at n = 2^13 is 2^{k+1} - 1 or 3 * 2^k - 1.
fn allowed_lengths() -> Verdict {
    let n = 1u64 << 13;
    let x = pd_prefix_substitution(n as usize);
    let mut interior = 0u64;
    let mut bad: Vec<StartPoint> = Vec::new();
    rplines::for_each_diagonal_line(&x, n, 1, |p| {
        if p.is_interior(n) {
            interior += 2;
            if !oracle::is_allowed_length(p.length) {
                bad.push(p);
            }
        }
    })
    .unwrap();
    let detail = format!("{interior} interior lines, {} exceptions", 2 * bad.len());
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; first {:?}", bad[0]))
    }
}

/// Criterion 3: dENS_l(2^13) within 3 % of the asymptotic density; error for l = 1
/// smaller at 2^13 than at 2^9.
fn densities() -> Verdict {
    let lengths = [1u64, 2, 3, 5, 7, 11, 15, 23];
    let err_at = |r: &rqa::RqaReport, l: u64| {
        let got = r.dens.get(&l).map(f).unwrap_or(0.0);
        rel_err(got, f(&oracle::dens_asymptotic(l)))
    };
    let last = report_at(1 << 13, 1, 1);
    let worst = lengths.iter().map(|&l| (l, err_at(&last, l))).fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let series: Vec<f64> = (9..=13).map(|e| err_at(&report_at(1 << e, 1, 1), 1)).collect();
    let detail = format!(
        "worst l = {} at {:.3}%; l = 1 error over n = 2^9..2^13: {}",
        worst.0,
        100.0 * worst.1,
        series.iter().map(|e| format!("{:.3}%", 100.0 * e)).collect::<Vec<_>>().join(", ")
    );
    if worst.1 < 0.03 && series[4] < series[0] {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Criterion 4: rR^1_1(2^13) within 1 % of 5/9.
fn recurrence_rate() -> Verdict {
    let target = oracle::rr(1, 1);
    assert_eq!(target, frac(5, 9));
    let got = f(&report_at(1 << 13, 1, 1).rr);
    let e = rel_err(got, f(&target));
    let detail = format!("RR = {got:.6} vs 5/9, rel err {:.4}%", 100.0 * e);
    if e < 0.01 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Criterion 5: lAVG^1_1(2^13) within 1 % of 5/2; oracle LAVG inside its linear bounds.
fn average_length() -> Verdict {
    let got = f(report_at(1 << 13, 1, 1).lavg.as_ref().unwrap());
    let e = rel_err(got, 2.5);
    let mut violations = 0u64;
    let mut checked = 0u64;
    for lp in 2..=1u64 << 16 {
        let lower = frac(5 * lp as i64 + 2, 3);
        let upper = frac(5 * lp as i64 - 2, 2);
        let half = lp.div_ceil(2);
        for (m, len) in [(1, lp), (lp, 1), (half, lp + 1 - half)] {
            checked += 1;
            let v = oracle::lavg(m, len);
            if !(lower <= v && v <= upper) {
                violations += 1;
            }
        }
    }
    let exact = oracle::lavg(1, 1) == frac(5, 2);
    let detail = format!(
        "LAVG = {got:.6}, rel err {:.4}%; oracle LAVG^1_1 = 5/2: {exact}; sandwich: {checked} checks, {violations} violations",
        100.0 * e
    );
    if e < 0.01 && violations == 0 && exact {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Criterion 6: eNTR^1_1(2^13) within 0.03 nats of 2 log 2; closed-form entropy sums
/// reproduce 2 log 2 for l <= 64.
fn entropy() -> Verdict {
    let target = 2.0 * std::f64::consts::LN_2;
    let got = report_at(1 << 13, 1, 1).entr.unwrap();
    let worst = (1..=64u64)
        .map(|l| {
            let denss = f(&oracle::denss_asymptotic(l));
            (denss.ln() + oracle::entropy_sum(l) / denss - target).abs()
        })
        .fold(0.0f64, f64::max);
    let detail = format!("ENTR = {got:.6} (|diff| {:.5}); closed-form max |diff| {worst:.2e}", (got - target).abs());
    if (got - target).abs() < 0.03 && worst < 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Criterion 7: dET^m_2 limits along the A1 / A2 / A3 classes, m <= 2^16.
fn determinism_limits() -> Verdict {
    const M_MAX: u64 = 1 << 16;
    let len = 2;
    let (mut a1, mut a1_bad) = (0u64, 0u64);
    let (mut last_a2, mut last_a3) = (None, None);
    let mut b_members = 0u64;
    for m in 1..=M_MAX {
        match oracle::det_class(m, len).unwrap() {
            DetClass::A1 => {
                a1 += 1;
                if oracle::det(m, len) != BigRational::one() {
                    a1_bad += 1;
                }
            }
            DetClass::A2 => last_a2 = Some(m),
            DetClass::A3 if oracle::in_a3_tilde(m, len) => last_a3 = Some(m),
            DetClass::A3 => b_members += 1,
        }
    }
    let (m2, m3) = (last_a2.unwrap(), last_a3.unwrap());
    let d2 = f(&oracle::det(m2, len));
    let d3 = f(&oracle::det(m3, len));
    let density = a1 as f64 / M_MAX as f64;
    let detail = format!(
        "A1: {a1} members, density {density:.5}, {a1_bad} with DET != 1; A2 max m = {m2}, DET = {d2:.7}; A3~ max m = {m3}, DET = {d3:.7}; finite remainder: {b_members}"
    );
    let ok = a1_bad == 0 && density > 0.95 && (d2 - 5.0 / 7.0).abs() < 1e-3 && (d3 - 0.7).abs() < 1e-3;
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Criterion 8: vertical lines at n = 2^12: lengths in {1, 3} for m = 1, all 1 for m = 3.
fn vertical_lines() -> Verdict {
    let n = 1u64 << 12;
    let x = pd_prefix_substitution(n as usize + 4);
    let keys = |m| rplines::vertical_histogram(&x, n, m).unwrap().lengths().collect::<Vec<_>>();
    let (k1, k3) = (keys(1), keys(3));
    let split = rplines::vertical_split(&x, n, 1).unwrap();
    let closed: Vec<u64> = split.closed.lengths().collect();
    let edge: Vec<(u64, u64)> = split.bottom_edge.iter().collect();
    let detail = format!(
        "m = 1 lengths {k1:?} (runs ending above row n: {closed:?}; runs cut by row n: {edge:?}); m = 3 lengths {k3:?}"
    );
    if k1.iter().all(|&l| l == 1 || l == 3) && k3 == [1] {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Criterion 9: the three generators agree on 2^20 letters in under 5 s.
fn generator_agreement() -> Verdict {
    let n = 1usize << 20;
    let t = Instant::now();
    let v = pd_prefix_valuation(n);
    let s = pd_prefix_substitution(n);
    let tz = pd_prefix_toeplitz(n);
    let elapsed = t.elapsed();
    let detail = format!("n = {n}, {:.2?}", elapsed);
    if v == s && s == tz && elapsed < Duration::from_secs(5) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Criterion 10: no line of length l starts with both coordinates <= l + 1; one starts
/// with max coordinate l + 2.
fn nonempty_threshold() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for len in [1u64, 2, 3, 5, 7, 11, 23] {
        // long enough that every line starting near the corner is closed
        let n = 4 * len + 16;
        let x = pd_prefix_substitution(n as usize);
        let starts: Vec<StartPoint> = rplines::reference_scan(&x, n, 1)
            .unwrap()
            .into_iter()
            .filter(|p| p.length == len && p.is_closed(n))
            .collect();
        let min_max = starts.iter().map(|p| p.i.max(p.j)).min();
        ok &= min_max == Some(len + 2)
            && !oracle::nonempty_threshold(len, len + 1)
            && oracle::nonempty_threshold(len, len + 2);
        notes.push(format!("l={len}: first at max coord {:?}", min_max));
    }
    let detail = notes.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 line-start sets vs brute force", line_start_sets),
        ("2 allowed interior lengths", allowed_lengths),
        ("3 densities DENS_l(2^13)", densities),
        ("4 recurrence rate", recurrence_rate),
        ("5 average line length", average_length),
        ("6 entropy of line lengths", entropy),
        ("7 determinism limits", determinism_limits),
        ("8 vertical lines", vertical_lines),
        ("9 generator agreement", generator_agreement),
        ("10 nonemptiness threshold", nonempty_threshold),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
