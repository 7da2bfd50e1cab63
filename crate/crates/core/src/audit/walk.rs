use std::time::Instant;

use num_traits::ToPrimitive;
use rand::Rng;

use super::{elapsed_ms, rng, AuditKind, AuditReport, Details, HalfInt, Mode, Sampling, Witness, REPORT_SCHEMA_VERSION};
use crate::conway::{a2, conway_via_matrix, SkeinEngine, SkeinLimits, DEFAULT_MAX_CROSSINGS};
use crate::diagram::{BraidWord, MoveSite, Sign};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkLimits {
    /// The walk stops, with a truncated report, before the word would grow
    /// past this many letters.
    pub max_letters: usize,
    /// Words up to this length are also evaluated by skein resolution, and
    /// the two values must agree.
    pub cross_check_crossings: usize,
}

impl Default for WalkLimits {
    fn default() -> Self {
        Self { max_letters: 4096, cross_check_crossings: DEFAULT_MAX_CROSSINGS }
    }
}

fn a2_of(w: &BraidWord) -> Result<i64> {
    let p = conway_via_matrix(w)?;
    a2(&p)?.to_i64().ok_or_else(|| Error::InvalidAudit("a2 does not fit in 64 bits".into()))
}

/// A seeded random walk of Delta-moves from `start`. Each step inserts the
/// move at a site drawn uniformly from all sites of the current word and
/// records `a2` of the closure, which must change by exactly one.
///
/// `a2` comes from the Burau route, since words outgrow the skein cap
/// quickly; short words are cross-checked by skein resolution.
pub fn audit_okada_walk(start: &BraidWord, steps: u64, seed: u64, limits: &WalkLimits) -> Result<AuditReport> {
    let clock = Instant::now();
    if !start.closes_to_knot() {
        return Err(Error::NotAKnot { components: start.closure_components() });
    }
    if steps > 0 && start.strands() < 3 {
        return Err(Error::InvalidMoveSite(format!(
            "no Delta-move site: a Delta-move needs 3 strands, the word has {}",
            start.strands()
        )));
    }
    let mut engine = SkeinEngine::new(SkeinLimits { max_crossings: limits.cross_check_crossings, ..SkeinLimits::default() });
    let mut cross_checks = 0u64;
    let mut check = |w: &BraidWord, value: i64| -> Result<()> {
        if w.len() > limits.cross_check_crossings {
            return Ok(());
        }
        match engine.conway(&w.closure()) {
            Ok(p) => {
                if a2(&p)? != value.into() {
                    return Err(Error::Normalization(format!("skein and Burau disagree on {w}")));
                }
                cross_checks += 1;
                Ok(())
            }
            Err(Error::ResourceLimit { .. }) => Ok(()),
            Err(e) => Err(e),
        }
    };

    let mut r = rng(seed);
    let mut word = start.clone();
    let mut value = a2_of(&word)?;
    check(&word, value)?;
    let mut trace = vec![value];
    let mut bad_steps = 0u64;
    let mut witness = None;
    let mut truncation_reason = None;
    let per_position = 2 * (word.strands() - 2).max(1) as usize;
    for step in 1..=steps {
        if word.len() + 6 > limits.max_letters {
            truncation_reason = Some(format!("word length would exceed {} letters", limits.max_letters));
            break;
        }
        let k = r.random_range(0..(word.len() + 1) * per_position);
        let site = MoveSite {
            position: k / per_position,
            strand_index: (k % per_position / 2) as u32 + 1,
            sign: if k % 2 == 0 { Sign::Positive } else { Sign::Negative },
        };
        let next = word.apply_delta_move(&site)?;
        let next_value = a2_of(&next)?;
        check(&next, next_value)?;
        if next_value.abs_diff(value) != 1 {
            bad_steps += 1;
            if witness.is_none() {
                witness = Some(Witness::Step { index: step, before: value, after: next_value, word: next.to_string() });
            }
        }
        trace.push(next_value);
        word = next;
        value = next_value;
    }
    let steps_done = trace.len() as u64 - 1;
    Ok(AuditReport {
        schema_version: REPORT_SCHEMA_VERSION,
        kind: AuditKind::OkadaWalk,
        universe: None,
        mode: Mode::Sampled,
        sampling: Some(Sampling::new(seed, steps)),
        bound: HalfInt::from_int(0),
        measured: HalfInt::from_int(bad_steps),
        pass: bad_steps == 0,
        configurations: steps_done,
        witness,
        details: Details::OkadaWalk {
            start: start.to_string(),
            steps_requested: steps,
            steps_done,
            truncated: truncation_reason.is_some(),
            truncation_reason,
            trace,
            skein_cross_checks: cross_checks,
            final_word_length: word.len() as u64,
        },
        duration_ms: elapsed_ms(clock),
    })
}
