//! Acceptance gate: ten numbered checks, each printing one PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::brute_f;
use vknots::codes::parse_gauss_code;
use vknots::cover::{double_cover, lk_n};
use vknots::cutfind::find_small_cut_system;
use vknots::cuts::{is_cut_system, is_normal, knot_parity_criterion, CutSystem};
use vknots::gen::{random_knot, random_link, random_two_cut_systems};
use vknots::invariants::{f_polynomial, odd_writhe, DEFAULT_STATE_LIMIT};
use vknots::verify::{run_suite, Suite, SuiteConfig};

fn report(n: u32, label: &str, outcome: &Result<String, String>) {
    match outcome {
        Ok(detail) => println!("criterion {n:02} PASS {label} ({detail})"),
        Err(detail) => println!("criterion {n:02} FAIL {label} ({detail})"),
    }
    if let Err(detail) = outcome {
        panic!("criterion {n:02} {label}: {detail}");
    }
}

fn suite_outcome(
    suite: Suite,
    config: &SuiteConfig,
    budget: Duration,
) -> Result<String, String> {
    let r = run_suite(suite, config);
    if !r.passed() {
        return Err(format!(
            "{} of {} trials failed; first: {:?}",
            r.failures.len(),
            r.trials,
            r.failures[0]
        ));
    }
    if r.elapsed > budget {
        return Err(format!("{} trials took {:.2?}, budget {budget:?}", r.trials, r.elapsed));
    }
    Ok(format!("{} trials in {:.2?}", r.trials, r.elapsed))
}

#[test]
fn criterion_01_lk_n_equals_odd_writhe_on_random_pairs() {
    let config = SuiteConfig { trials: 200, seed: 0xC1, max_chords: 8 };
    let outcome = suite_outcome(Suite::LkEqualsOddWrithe, &config, Duration::from_secs(10));
    report(1, "lk_N equals odd writhe on random diagram/cut pairs", &outcome);
}

#[test]
fn criterion_02_lk_n_survives_random_walks() {
    let config = SuiteConfig { trials: 100, seed: 0xC2, max_chords: 8 };
    let outcome = suite_outcome(Suite::CoverInvariance, &config, Duration::from_secs(30));
    report(2, "lk_N agrees across move-related presentations", &outcome);
}

#[test]
fn criterion_03_cover_f_survives_random_walks() {
    let config = SuiteConfig { trials: 50, seed: 0xC3, max_chords: 8 };
    let outcome = suite_outcome(Suite::CoverInvariance, &config, Duration::from_secs(300));
    report(3, "f of the cover agrees across move-related presentations", &outcome);
}

#[test]
fn criterion_04_invariants_ignore_the_choice_of_cut_system() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let outcome = (|| {
        for case in 0..50 {
            let g = random_knot(&mut rng, 6);
            let budget = 2 * g.chord_count() as u32 + 2;
            let (p, q) = random_two_cut_systems(&mut rng, &g, budget)
                .ok_or_else(|| format!("case {case}: no two cut systems within {budget}"))?;
            let err = |what: &str| format!("case {case}: {what}");
            let (c1, c2) = (
                double_cover(&g, &p).map_err(|e| err(&e.to_string()))?,
                double_cover(&g, &q).map_err(|e| err(&e.to_string()))?,
            );
            if !is_normal(&c1.diagram) || !is_normal(&c2.diagram) {
                return Err(err("cover not normal"));
            }
            let f1 = f_polynomial(&c1.diagram, DEFAULT_STATE_LIMIT).map_err(|e| err(&e.to_string()))?;
            let f2 = f_polynomial(&c2.diagram, DEFAULT_STATE_LIMIT).map_err(|e| err(&e.to_string()))?;
            if f1 != f2 {
                return Err(err(&format!("cover f differs: {f1} vs {f2}")));
            }
            let l1 = lk_n(&g, &p).map_err(|e| err(&e.to_string()))?;
            let l2 = lk_n(&g, &q).map_err(|e| err(&e.to_string()))?;
            if l1 != l2 {
                return Err(err(&format!("lk_N differs: {l1} vs {l2}")));
            }
        }
        Ok(format!("50 diagrams, two systems each, in {:.2?}", start.elapsed()))
    })();
    report(4, "cover invariants ignore the choice of cut system", &outcome);
}

#[test]
fn criterion_05_double_covers_are_normal() {
    let config = SuiteConfig { trials: 100, seed: 0xC5, max_chords: 8 };
    let outcome = suite_outcome(Suite::CoverNormal, &config, Duration::from_secs(30))
        .map(|d| format!("{d}; also asserted inline by criteria 1-4"));
    report(5, "double covers along cut systems are normal", &outcome);
}

#[test]
fn criterion_06_canonical_cuts_use_two_points_per_virtual_crossing() {
    let config = SuiteConfig { trials: 100, seed: 0xC6, max_chords: 6 };
    let outcome = suite_outcome(Suite::CanonicalEven, &config, Duration::from_secs(30));
    report(6, "canonical cut systems are valid with two points per virtual", &outcome);
}

#[test]
fn criterion_07_cut_move_paths_are_found() {
    let config = SuiteConfig { trials: 100, seed: 0xC7, max_chords: 8 };
    let outcome = suite_outcome(Suite::CutPath, &config, Duration::from_secs(60));
    report(7, "move paths between drifted cut systems are found", &outcome);
}

#[test]
fn criterion_08_trefoil_family_values_are_frozen() {
    let outcome = (|| {
        let check = |code: &str, ow: i64, lk: i64, f_json: &str| -> Result<(), String> {
            let g = parse_gauss_code(code).map_err(|e| e.to_string())?;
            let got_ow = odd_writhe(&g).ok_or("not a knot")?;
            if got_ow != ow {
                return Err(format!("{code}: odd writhe {got_ow}, expected {ow}"));
            }
            let cuts = find_small_cut_system(&g).ok_or("no cut system")?;
            let got_lk = lk_n(&g, &cuts).map_err(|e| e.to_string())?;
            if got_lk != lk {
                return Err(format!("{code}: lk_N {got_lk}, expected {lk}"));
            }
            let f = f_polynomial(&g, DEFAULT_STATE_LIMIT).map_err(|e| e.to_string())?;
            let got_f = serde_json::to_string(&f).map_err(|e| e.to_string())?;
            if got_f != f_json {
                return Err(format!("{code}: f {got_f}, expected {f_json}"));
            }
            Ok(())
        };
        check("O1+U2+O3+U1+O2+U3+", 0, 0, "[[-4,1],[-12,1],[-16,-1]]")?;
        check("O1+O2+U1+U2+", 2, 2, "[[-4,1],[-6,1],[-10,-1]]")?;
        check("U1-U2-O1-O2-", -2, -2, "[[10,-1],[6,1],[4,1]]")?;
        check("O1-O2-U1-U2-", -2, -2, "[[10,-1],[6,1],[4,1]]")?;
        Ok("classical, virtual, switched, mirrored".to_string())
    })();
    report(8, "trefoil family invariants match their frozen values", &outcome);
}

#[test]
fn criterion_09_independent_oracles_agree() {
    let start = Instant::now();
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC9);
        for case in 0..500 {
            let g = random_link(&mut rng, 6, 3);
            let fast = f_polynomial(&g, DEFAULT_STATE_LIMIT)
                .map_err(|e| format!("f case {case}: {e}"))?;
            let brute = brute_f(&g);
            if fast != brute {
                return Err(format!("f case {case}: {fast} vs brute {brute}"));
            }
        }
        for case in 0..500 {
            let g = random_knot(&mut rng, 6);
            let cuts = CutSystem::from_triples(
                (0..g.gap_count(0)).map(|gap| (0, gap, rng.gen_range(0..=2u32))),
            );
            if knot_parity_criterion(&g, &cuts) != Some(is_cut_system(&g, &cuts)) {
                return Err(format!("parity case {case}: criterion and solver disagree"));
            }
        }
        Ok(format!("500 bracket + 500 parity cases in {:.2?}", start.elapsed()))
    })();
    report(9, "state-sum and parity oracles agree with the library", &outcome);
}

#[test]
fn criterion_10_reports_are_byte_identical_for_equal_seeds() {
    let outcome = (|| {
        for (suite, trials) in [(Suite::LkEqualsOddWrithe, 50), (Suite::CutPath, 25)] {
            let config = SuiteConfig { trials, seed: 0x10, max_chords: 6 };
            let a = serde_json::to_string(&run_suite(suite, &config)).unwrap();
            let b = serde_json::to_string(&run_suite(suite, &config)).unwrap();
            if a != b {
                return Err(format!("{} reports differ across runs", suite.name()));
            }
        }
        Ok("two suites, two runs each".to_string())
    })();
    report(10, "equal seeds give byte-identical reports", &outcome);
}
