//! Norm continuity diagnostics across base-space refinements.
//!
//! A field element s ↦ f_s is norm-continuous when s ↦ ‖f_s‖ is continuous
//! on the base. With only certified brackets available, the computable
//! surrogate is the *bracket gap* across adjacency edges: if two fibers sit
//! at adjacent samples and their norm brackets do not overlap, the norm
//! function provably jumps by at least that gap between them. On a sequence
//! of nested refinements of the same base the worst adjacent gap should
//! shrink toward zero for a continuous field, and samples present at two
//! consecutive levels must receive consistent (overlapping) brackets.

use std::collections::BTreeMap;

use serde::Serialize;

use super::error::FieldError;
use super::types::{CovariantFieldSpec, FiberNormProfile};

/// Per-level summary of a refinement sequence.
#[derive(Debug, Clone, Serialize)]
pub struct LevelStats {
    /// Number of base samples at this level.
    pub sample_count: usize,
    /// Widest norm bracket over the fibers.
    pub max_bracket_width: f64,
    /// Largest certified norm jump across an adjacency edge: the maximal
    /// gap between the brackets of adjacent samples (zero when every
    /// adjacent pair of brackets overlaps).
    pub max_adjacent_jump: f64,
    /// The edge attaining `max_adjacent_jump`, when any edge exists.
    pub jump_edge: Option<(String, String)>,
}

/// Diagnostics for a nested refinement sequence.
#[derive(Debug, Clone, Serialize)]
pub struct ContinuityReport {
    /// Per-level statistics, coarse to fine.
    pub levels: Vec<LevelStats>,
    /// Worst bracket gap between the two brackets a coordinate-matched
    /// sample receives at consecutive levels. Zero when every re-sampled
    /// point gets consistent brackets.
    pub matched_excess: f64,
    /// True when the worst adjacent jump shrinks at every refinement step
    /// (a level whose jump is already zero counts as shrunk).
    pub jumps_strictly_decreasing: bool,
}

fn coord_key(coords: &[f64]) -> Vec<u64> {
    coords.iter().map(|c| c.to_bits()).collect()
}

fn level_stats(
    spec: &CovariantFieldSpec,
    profile: &FiberNormProfile,
    level: usize,
) -> Result<LevelStats, FieldError> {
    let spec_ids: std::collections::BTreeSet<String> =
        spec.sample_ids().iter().map(|s| s.to_string()).collect();
    if profile.ids() != spec_ids {
        return Err(FieldError::SampleSetMismatch {
            detail: format!(
                "level {}: profile ids {:?} differ from base ids {:?}",
                level,
                profile.ids(),
                spec_ids
            ),
        });
    }
    let max_bracket_width = profile
        .iter()
        .map(|(_, b)| b.width())
        .fold(0.0f64, f64::max);
    let mut max_adjacent_jump = 0.0f64;
    let mut jump_edge = None;
    for (a, b, _dist) in spec.edges() {
        let ba = profile.bracket(&a).expect("profile covers base");
        let bb = profile.bracket(&b).expect("profile covers base");
        let gap = ba.gap(bb);
        if jump_edge.is_none() || gap > max_adjacent_jump {
            max_adjacent_jump = gap;
            jump_edge = Some((a, b));
        }
    }
    Ok(LevelStats {
        sample_count: spec.samples().len(),
        max_bracket_width,
        max_adjacent_jump,
        jump_edge,
    })
}

/// Summarizes norm continuity over a nested refinement sequence.
///
/// `levels` lists (base, profile) pairs from coarse to fine. Every sample of
/// a coarser level must reappear — with bitwise-identical coordinates — in
/// the next level, so that the levels genuinely refine one another; a
/// missing coordinate is a refinement mismatch.
pub fn continuity_report(
    levels: &[(&CovariantFieldSpec, &FiberNormProfile)],
) -> Result<ContinuityReport, FieldError> {
    if levels.is_empty() {
        return Err(FieldError::InvalidParameter {
            name: "levels",
            reason: "at least one refinement level is required".into(),
        });
    }
    let mut stats = Vec::with_capacity(levels.len());
    for (i, (spec, profile)) in levels.iter().enumerate() {
        stats.push(level_stats(spec, profile, i)?);
    }

    let mut matched_excess = 0.0f64;
    for i in 1..levels.len() {
        let (coarse, coarse_profile) = levels[i - 1];
        let (fine, fine_profile) = levels[i];
        if coarse.base_dim() != fine.base_dim() {
            return Err(FieldError::RefinementMismatch {
                level: i,
                level_minus_one: i - 1,
                detail: format!(
                    "base dimension changes from {} to {}",
                    coarse.base_dim(),
                    fine.base_dim()
                ),
            });
        }
        let fine_by_coord: BTreeMap<Vec<u64>, &str> = fine
            .samples()
            .iter()
            .map(|s| (coord_key(&s.coords), s.id.as_str()))
            .collect();
        for s in coarse.samples() {
            let Some(fine_id) = fine_by_coord.get(&coord_key(&s.coords)) else {
                return Err(FieldError::RefinementMismatch {
                    level: i,
                    level_minus_one: i - 1,
                    detail: format!(
                        "sample {:?} at {:?} has no coordinate match in the finer level",
                        s.id, s.coords
                    ),
                });
            };
            let cb = coarse_profile.bracket(&s.id).expect("profile covers base");
            let fb = fine_profile.bracket(fine_id).expect("profile covers base");
            matched_excess = matched_excess.max(cb.gap(fb));
        }
    }

    let jumps_strictly_decreasing = stats.windows(2).all(|w| {
        w[1].max_adjacent_jump < w[0].max_adjacent_jump || w[1].max_adjacent_jump == 0.0
    });

    Ok(ContinuityReport {
        levels: stats,
        matched_excess,
        jumps_strictly_decreasing,
    })
}
