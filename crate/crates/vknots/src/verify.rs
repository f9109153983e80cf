//! Randomized checking suites for the covering construction and its
//! invariants. Each suite replays a claim on seeded random inputs and reports
//! any counterexample with enough detail to replay it.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::emit_gauss_code;
use crate::cover::{double_cover, lk_n};
use crate::cutfind::random_cut_system;
use crate::cutpath::find_move_path;
use crate::cuts::{apply_cut_move, is_cut_system, is_normal, neighbors};
use crate::diagram::{ChordId, GaussDiagram};
use crate::gen::{random_knot, random_link, random_valid_knot_pair};
use crate::invariants::{f_polynomial, odd_writhe, DEFAULT_STATE_LIMIT};
use crate::moves::{bounded_random_walk, k_flype};
use crate::pd::{canonical_cut_system, parse_pd, PdEntry};
use crate::pdgen::{random_planar_classical_knot, random_planar_pd};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    LkEqualsOddWrithe,
    CoverInvariance,
    CutPath,
    CanonicalEven,
    CoverNormal,
    NormalZero,
    FlypeF,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::LkEqualsOddWrithe,
        Suite::CoverInvariance,
        Suite::CutPath,
        Suite::CanonicalEven,
        Suite::CoverNormal,
        Suite::NormalZero,
        Suite::FlypeF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LkEqualsOddWrithe => "thm-lkN-equals-odd-writhe",
            Suite::CoverInvariance => "thm-cover-invariance",
            Suite::CutPath => "thm-cutpath",
            Suite::CanonicalEven => "cor-even",
            Suite::CoverNormal => "prop-cover-normal",
            Suite::NormalZero => "cor-normal-zero",
            Suite::FlypeF => "remark-flype-f",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|s| s.name() == name)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub trials: u32,
    pub seed: u64,
    pub max_chords: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { trials: 100, seed: 0, max_chords: 8 }
    }
}

type Details = BTreeMap<String, String>;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub trial: u32,
    pub seed: u64,
    pub details: Details,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: &'static str,
    pub trials: u32,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn trial_seed(seed: u64, trial: u32) -> u64 {
    splitmix64(seed.wrapping_add((trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let failures: Vec<Failure> = (0..config.trials)
        .into_par_iter()
        .filter_map(|trial| {
            let seed = trial_seed(config.seed, trial);
            run_trial(suite, seed, config.max_chords)
                .err()
                .map(|details| Failure { trial, seed, details })
        })
        .collect();
    VerificationReport {
        suite: suite.name(),
        trials: config.trials,
        failures,
        elapsed: start.elapsed(),
    }
}

fn run_trial(suite: Suite, seed: u64, max_chords: usize) -> Result<(), Details> {
    match suite {
        Suite::LkEqualsOddWrithe => trial_lk_equals_odd_writhe(seed, max_chords),
        Suite::CoverInvariance => trial_cover_invariance(seed, max_chords),
        Suite::CutPath => trial_cut_path(seed, max_chords),
        Suite::CanonicalEven => trial_canonical_even(seed, max_chords),
        Suite::CoverNormal => trial_cover_normal(seed, max_chords),
        Suite::NormalZero => trial_normal_zero(seed, max_chords),
        Suite::FlypeF => trial_flype_f(seed, max_chords),
    }
}

fn note(pairs: &[(&str, String)]) -> Details {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn cuts_json(cuts: &crate::cuts::CutSystem) -> String {
    serde_json::to_string(cuts).expect("cut systems serialize")
}

fn check_cover_normal(
    g: &GaussDiagram,
    cuts: &crate::cuts::CutSystem,
) -> Result<GaussDiagram, Details> {
    let cover = double_cover(g, cuts).map_err(|e| {
        note(&[
            ("diagram", emit_gauss_code(g)),
            ("cuts", cuts_json(cuts)),
            ("error", e.to_string()),
        ])
    })?;
    if !is_normal(&cover.diagram) {
        return Err(note(&[
            ("claim", "cover is normal".into()),
            ("diagram", emit_gauss_code(g)),
            ("cuts", cuts_json(cuts)),
            ("cover", emit_gauss_code(&cover.diagram)),
        ]));
    }
    Ok(cover.diagram)
}

fn trial_lk_equals_odd_writhe(seed: u64, max_chords: usize) -> Result<(), Details> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (g, p) = random_valid_knot_pair(&mut rng, max_chords, 6);
    check_cover_normal(&g, &p)?;
    let lk = lk_n(&g, &p).map_err(|e| {
        note(&[("diagram", emit_gauss_code(&g)), ("cuts", cuts_json(&p)), ("error", e.to_string())])
    })?;
    let ow = odd_writhe(&g).expect("generated knots have one circle");
    if lk != ow {
        return Err(note(&[
            ("claim", "lkN equals odd writhe".into()),
            ("diagram", emit_gauss_code(&g)),
            ("cuts", cuts_json(&p)),
            ("lkN", lk.to_string()),
            ("oddWrithe", ow.to_string()),
        ]));
    }
    Ok(())
}

fn trial_cover_invariance(seed: u64, max_chords: usize) -> Result<(), Details> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (g1, p1) = random_valid_knot_pair(&mut rng, max_chords.min(6), 6);
    let steps = rng.gen_range(1..=12u32);
    let (g2, _) = bounded_random_walk(&g1, steps, rng.gen(), false, 7);
    let p2 = random_cut_system(&g2, 2 * g2.chord_count() as u32 + 2, &mut rng)
        .expect("every knot admits a cut system within twice its gap count");
    let c1 = check_cover_normal(&g1, &p1)?;
    let c2 = check_cover_normal(&g2, &p2)?;
    let ctx = || {
        vec![
            ("before", emit_gauss_code(&g1)),
            ("after", emit_gauss_code(&g2)),
            ("cutsBefore", cuts_json(&p1)),
            ("cutsAfter", cuts_json(&p2)),
        ]
    };
    let lk1 = lk_n(&g1, &p1).map_err(|e| note(&[("error", e.to_string())]))?;
    let lk2 = lk_n(&g2, &p2).map_err(|e| note(&[("error", e.to_string())]))?;
    if lk1 != lk2 {
        let mut pairs = ctx();
        pairs.push(("claim", "lkN is move invariant".into()));
        pairs.push(("lkNBefore", lk1.to_string()));
        pairs.push(("lkNAfter", lk2.to_string()));
        return Err(note(&pairs));
    }
    let f1 = f_polynomial(&c1, DEFAULT_STATE_LIMIT).map_err(|e| note(&[("error", e.to_string())]))?;
    let f2 = f_polynomial(&c2, DEFAULT_STATE_LIMIT).map_err(|e| note(&[("error", e.to_string())]))?;
    if f1 != f2 {
        let mut pairs = ctx();
        pairs.push(("claim", "cover f is move invariant".into()));
        pairs.push(("fBefore", f1.to_string()));
        pairs.push(("fAfter", f2.to_string()));
        return Err(note(&pairs));
    }
    Ok(())
}

fn trial_cut_path(seed: u64, max_chords: usize) -> Result<(), Details> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (g, p) = random_valid_knot_pair(&mut rng, max_chords, 6);
    check_cover_normal(&g, &p)?;
    let cap = p.max_count().max(4);
    let k = rng.gen_range(1..=6u32);
    let mut q = p.clone();
    for _ in 0..k {
        match neighbors(&g, &q, cap).choose(&mut rng) {
            Some((_, next)) => q = next.clone(),
            None => break,
        }
    }
    let ctx = |extra: &str| {
        note(&[
            ("claim", "cut systems are connected by moves".into()),
            ("diagram", emit_gauss_code(&g)),
            ("from", cuts_json(&p)),
            ("to", cuts_json(&q)),
            ("error", extra.to_string()),
        ])
    };
    let path = find_move_path(&g, &p, &q, 6, cap).map_err(|e| ctx(&e.to_string()))?;
    let mut state = p.clone();
    for &mv in &path {
        state = apply_cut_move(&g, &state, mv).map_err(|e| ctx(&e.to_string()))?;
        if !is_cut_system(&g, &state) {
            return Err(ctx(&format!("{mv} left the valid systems")));
        }
    }
    if state != q {
        return Err(ctx("path does not end at the target"));
    }
    Ok(())
}

fn trial_canonical_even(seed: u64, max_chords: usize) -> Result<(), Details> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pd_text = random_planar_pd(&mut rng, max_chords.clamp(1, 6), 4);
    let code = parse_pd(&pd_text).expect("generated codes parse");
    let (traced, cuts) = canonical_cut_system(&code).map_err(|e| {
        note(&[("pd", pd_text.clone()), ("error", e.to_string())])
    })?;
    if !is_cut_system(&traced.diagram, &cuts) {
        return Err(note(&[
            ("claim", "canonical cuts are a cut system".into()),
            ("pd", pd_text),
            ("cuts", cuts_json(&cuts)),
        ]));
    }
    let virtuals = code
        .entries
        .iter()
        .filter(|e| matches!(e, PdEntry::Virtual { .. }))
        .count() as u32;
    if cuts.total() != 2 * virtuals {
        return Err(note(&[
            ("claim", "canonical cuts use two points per virtual crossing".into()),
            ("pd", pd_text),
            ("cuts", cuts_json(&cuts)),
            ("virtuals", virtuals.to_string()),
        ]));
    }
    check_cover_normal(&traced.diagram, &cuts)?;
    Ok(())
}

fn trial_cover_normal(seed: u64, max_chords: usize) -> Result<(), Details> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_link(&mut rng, max_chords, 3);
    let budget = 2 * g.chord_count() as u32 + g.circle_count() as u32 + 2;
    let p = random_cut_system(&g, budget, &mut rng)
        .expect("every diagram admits a cut system within its gap count");
    check_cover_normal(&g, &p)?;
    Ok(())
}

fn trial_normal_zero(seed: u64, max_chords: usize) -> Result<(), Details> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pd_text = random_planar_classical_knot(&mut rng, max_chords.clamp(1, 7));
    let traced = parse_pd(&pd_text)
        .map_err(|e| e.to_string())
        .and_then(|code| crate::pd::trace_pd(&code).map_err(|e| e.to_string()))
        .map_err(|e| note(&[("pd", pd_text.clone()), ("error", e)]))?;
    let g = traced.diagram;
    if !is_normal(&g) {
        return Err(note(&[
            ("claim", "planar classical knots are normal".into()),
            ("pd", pd_text),
            ("diagram", emit_gauss_code(&g)),
        ]));
    }
    let ow = odd_writhe(&g).expect("traced knots have one circle");
    let p = random_cut_system(&g, 2 * g.chord_count() as u32 + 2, &mut rng)
        .expect("every knot admits a cut system within twice its gap count");
    let lk = lk_n(&g, &p).map_err(|e| {
        note(&[("pd", pd_text.clone()), ("cuts", cuts_json(&p)), ("error", e.to_string())])
    })?;
    if ow != 0 || lk != 0 {
        return Err(note(&[
            ("claim", "normal knots have zero odd writhe and lkN".into()),
            ("pd", pd_text),
            ("diagram", emit_gauss_code(&g)),
            ("cuts", cuts_json(&p)),
            ("oddWrithe", ow.to_string()),
            ("lkN", lk.to_string()),
        ]));
    }
    Ok(())
}

fn trial_flype_f(seed: u64, max_chords: usize) -> Result<(), Details> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_knot(&mut rng, max_chords.min(8));
    let ids: Vec<ChordId> = g.signs().keys().copied().collect();
    let &chord = ids.choose(&mut rng).expect("generated knots have chords");
    let flyped = k_flype(&g, chord).expect("existing chords flype");
    let f1 = f_polynomial(&g, DEFAULT_STATE_LIMIT).map_err(|e| note(&[("error", e.to_string())]))?;
    let f2 =
        f_polynomial(&flyped, DEFAULT_STATE_LIMIT).map_err(|e| note(&[("error", e.to_string())]))?;
    if f1 != f2 {
        return Err(note(&[
            ("claim", "flypes preserve f".into()),
            ("diagram", emit_gauss_code(&g)),
            ("chord", chord.to_string()),
            ("flyped", emit_gauss_code(&flyped)),
            ("fBefore", f1.to_string()),
            ("fAfter", f2.to_string()),
        ]));
    }
    Ok(())
}
