//! Grid-search envelope for mediator scenarios.
//!
//! The feasible set is a product of two polytopes: the `(M(0), M(1))`
//! joints with the observed mediator margins (one free parameter, the
//! diagonal cell `m00`), and the `(Y*(0), Y*(1))` joints with the
//! observed outcome-given-mediator margins (a transportation polytope
//! with `T*T` free cells once the last row and column are eliminated).
//! The searcher enumerates an exhaustive grid over the free parameters,
//! keeps only feasible points, and then polishes the best point of each
//! direction with exact line steps (the objective is linear in `m00` and
//! in every margin-preserving rectangle transfer of the star table).
//!
//! Cost grows like `(1/resolution)^(T*T)`; at desk scale (`T <= 2`,
//! resolution 0.01–0.02) a search finishes in well under a second.

use crate::error::{Error, Result};
use crate::model::{CounterfactualJoint, JointKind, Scenario};

use super::{Envelope, EnvelopeMethod, EnvelopeWitness};

/// Slack for feasibility tests at polytope boundaries.
const FEAS_TOL: f64 = 1e-9;

/// Minimum objective improvement a refinement move must deliver; below
/// this the move is float noise, not progress.
const MIN_GAIN: f64 = 1e-14;

/// Cap on refinement sweeps; each sweep strictly improves, so this only
/// guards against float-level dithering.
const MAX_SWEEPS: usize = 200;

#[derive(Clone, Copy)]
enum Direction {
    Min,
    Max,
}

struct SearchContext {
    n: usize,
    t: usize,
    /// Distribution of `M(0)` (= `P(M|D=0)`).
    m_row: [f64; 2],
    /// Distribution of `M(1)` (= `P(M|D=1)`).
    m_col: [f64; 2],
    /// Distribution of `Y*(0)` (= `P(Y|M=0)`).
    star_row: Vec<f64>,
    /// Distribution of `Y*(1)` (= `P(Y|M=1)`).
    star_col: Vec<f64>,
    /// `P(Y > t | D = 1)`, fixed by the margins.
    denominator: f64,
    resolution: f64,
    m00_lo: f64,
    m00_hi: f64,
    /// The free block's total mass must be at least this for the
    /// bottom-right dependent cell to stay nonnegative.
    corner_needed: f64,
}

impl SearchContext {
    /// Quadrant masses of a star table: `(benefit, harm)` where benefit
    /// collects cells with `Y*(0) <= t < Y*(1)` and harm the transposed
    /// quadrant.
    fn quadrants(&self, star: &[Vec<f64>]) -> (f64, f64) {
        let mut benefit = 0.0;
        let mut harm = 0.0;
        for l in 0..=self.t {
            for k in self.t + 1..self.n {
                benefit += star[l][k];
                harm += star[k][l];
            }
        }
        (benefit, harm)
    }

    fn pc_from_quadrants(&self, m00: f64, benefit: f64, harm: f64) -> f64 {
        let m01 = self.m_row[0] - m00;
        let m10 = self.m_col[0] - m00;
        (m01 * benefit + m10 * harm) / self.denominator
    }

    fn pc(&self, m00: f64, star: &[Vec<f64>]) -> f64 {
        let (benefit, harm) = self.quadrants(star);
        self.pc_from_quadrants(m00, benefit, harm)
    }

    fn mediator_joint(&self, m00: f64) -> Result<CounterfactualJoint> {
        let m01 = self.m_row[0] - m00;
        let m10 = self.m_col[0] - m00;
        let m11 = self.m_row[1] - m10;
        CounterfactualJoint::new(
            JointKind::MediatorPairs,
            vec![vec![m00, m01], vec![m10, m11]],
        )
    }
}

#[derive(Clone)]
struct Candidate {
    pc: f64,
    m00: f64,
    star: Vec<Vec<f64>>,
}

struct GridSearch<'a> {
    ctx: &'a SearchContext,
    free_dim: usize,
    free: Vec<f64>,
    sum_free: f64,
    row_slack: Vec<f64>,
    col_slack: Vec<f64>,
    m00_values: Vec<f64>,
    best_min: Option<Candidate>,
    best_max: Option<Candidate>,
}

impl GridSearch<'_> {
    fn recurse(&mut self, idx: usize) {
        if idx == self.free.len() {
            self.visit_leaf();
            return;
        }
        // Prune branches that can no longer supply the free mass the
        // bottom-right corner cell needs.
        let needed = self.ctx.corner_needed - self.sum_free;
        if needed > FEAS_TOL {
            let capacity: f64 = (idx..self.free.len())
                .map(|j| {
                    let (l, k) = (j / self.free_dim, j % self.free_dim);
                    self.row_slack[l].min(self.col_slack[k])
                })
                .sum();
            if capacity < needed - FEAS_TOL {
                return;
            }
        }
        let (l, k) = (idx / self.free_dim, idx % self.free_dim);
        let hi = self.row_slack[l].min(self.col_slack[k]);
        let mut v = 0.0;
        loop {
            // Snap the final step onto the boundary so Fréchet corners
            // are always part of the grid.
            let value = if v > hi - 1e-12 { hi } else { v };
            self.free[idx] = value;
            self.row_slack[l] -= value;
            self.col_slack[k] -= value;
            self.sum_free += value;
            self.recurse(idx + 1);
            self.row_slack[l] += value;
            self.col_slack[k] += value;
            self.sum_free -= value;
            if value >= hi {
                break;
            }
            v += self.ctx.resolution;
        }
        self.free[idx] = 0.0;
    }

    fn visit_leaf(&mut self) {
        let n = self.ctx.n;
        let corner = self.ctx.star_row[n - 1] + self.ctx.star_col[n - 1] - 1.0 + self.sum_free;
        if corner < -FEAS_TOL {
            return;
        }
        let mut star = vec![vec![0.0; n]; n];
        for l in 0..n - 1 {
            for k in 0..n - 1 {
                star[l][k] = self.free[l * self.free_dim + k];
            }
            star[l][n - 1] = self.row_slack[l];
        }
        for k in 0..n - 1 {
            star[n - 1][k] = self.col_slack[k];
        }
        star[n - 1][n - 1] = corner.max(0.0);
        let (benefit, harm) = self.ctx.quadrants(&star);
        for &m00 in &self.m00_values {
            let pc = self.ctx.pc_from_quadrants(m00, benefit, harm);
            // Strict comparisons keep the first (lexicographically
            // smallest) parameter vector on ties.
            if self.best_min.as_ref().map_or(true, |b| pc < b.pc) {
                self.best_min = Some(Candidate {
                    pc,
                    m00,
                    star: star.clone(),
                });
            }
            if self.best_max.as_ref().map_or(true, |b| pc > b.pc) {
                self.best_max = Some(Candidate {
                    pc,
                    m00,
                    star: star.clone(),
                });
            }
        }
    }
}

/// Grid points from `lo` to `hi` inclusive at the given step.
fn grid_values(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut values = Vec::new();
    let mut x = lo;
    while x < hi - 1e-12 {
        values.push(x);
        x += step;
    }
    values.push(hi);
    values
}

/// Polishes a grid candidate with exact line steps: the objective is
/// linear in `m00` for a fixed star table, and linear along every
/// margin-preserving rectangle transfer of the star table, so each move
/// goes straight to the feasible endpoint.
fn refine(ctx: &SearchContext, dir: Direction, candidate: &mut Candidate) {
    let is_better = |new: f64, old: f64| match dir {
        Direction::Max => new > old + MIN_GAIN,
        Direction::Min => new < old - MIN_GAIN,
    };
    for _ in 0..MAX_SWEEPS {
        let mut improved = false;

        let (benefit, harm) = ctx.quadrants(&candidate.star);
        let current = ctx.pc_from_quadrants(candidate.m00, benefit, harm);
        // The slope in m00 is -(benefit + harm)/denominator <= 0; jump to
        // whichever box end helps.
        let target = match dir {
            Direction::Max => ctx.m00_lo,
            Direction::Min => ctx.m00_hi,
        };
        if is_better(ctx.pc_from_quadrants(target, benefit, harm), current) {
            candidate.m00 = target;
            improved = true;
        }

        let m01 = ctx.m_row[0] - candidate.m00;
        let m10 = ctx.m_col[0] - candidate.m00;
        let weight = |l: usize, k: usize| {
            if l <= ctx.t && k > ctx.t {
                m01
            } else if k <= ctx.t && l > ctx.t {
                m10
            } else {
                0.0
            }
        };
        for a in 0..ctx.n {
            for a2 in a + 1..ctx.n {
                for b in 0..ctx.n {
                    for b2 in b + 1..ctx.n {
                        let gain = (weight(a, b) + weight(a2, b2)
                            - weight(a, b2)
                            - weight(a2, b))
                            / ctx.denominator;
                        if gain.abs() < MIN_GAIN {
                            continue;
                        }
                        // Positive delta moves mass onto (a,b) and
                        // (a2,b2), off the other two corners.
                        let pos_limit = candidate.star[a][b2].min(candidate.star[a2][b]);
                        let neg_limit = -candidate.star[a][b].min(candidate.star[a2][b2]);
                        let delta = match dir {
                            Direction::Max => {
                                if gain > 0.0 {
                                    pos_limit
                                } else {
                                    neg_limit
                                }
                            }
                            Direction::Min => {
                                if gain > 0.0 {
                                    neg_limit
                                } else {
                                    pos_limit
                                }
                            }
                        };
                        if (gain * delta).abs() < MIN_GAIN {
                            continue;
                        }
                        candidate.star[a][b] += delta;
                        candidate.star[a2][b2] += delta;
                        candidate.star[a][b2] -= delta;
                        candidate.star[a2][b] -= delta;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    candidate.pc = ctx.pc(candidate.m00, &candidate.star).clamp(0.0, 1.0);
}

/// Attainable PC range for a mediator scenario, by exhaustive grid over
/// the free joint parameters plus local refinement.
///
/// Every reported endpoint is attained by the exhibited witness joints,
/// so the result is an inner approximation of the true envelope: it can
/// only under-cover, never over-cover, which is the safe direction for
/// validating the closed forms that must contain it.
pub fn envelope_mediator(scenario: &Scenario, resolution: f64) -> Result<Envelope> {
    if !(resolution > 0.0 && resolution <= 0.1) {
        return Err(Error::ResolutionOutOfRange { resolution });
    }
    let Some((m_given_d, y_given_m)) = scenario.mediator_tables() else {
        return Err(Error::ScenarioKindMismatch {
            context: "mediator envelope",
            expected: "mediator",
            found: "simple",
        });
    };
    let scale = scenario.scale();
    let n = scale.n_levels();
    let t = scale.threshold;
    let star_row = y_given_m.row(0).to_vec();
    let star_col = y_given_m.row(1).to_vec();
    let m_row = [m_given_d.entry(0, 0), m_given_d.entry(0, 1)];
    let m_col = [m_given_d.entry(1, 0), m_given_d.entry(1, 1)];
    let denominator: f64 = (t + 1..n)
        .map(|k| m_col[0] * star_row[k] + m_col[1] * star_col[k])
        .sum();
    if denominator <= 0.0 {
        return Err(Error::UndefinedPc { threshold: t });
    }
    let ctx = SearchContext {
        n,
        t,
        m_row,
        m_col,
        denominator,
        resolution,
        m00_lo: (m_row[0] + m_col[0] - 1.0).max(0.0),
        m00_hi: m_row[0].min(m_col[0]),
        corner_needed: 1.0 - star_row[n - 1] - star_col[n - 1],
        star_row,
        star_col,
    };
    let free_dim = n - 1;
    let mut search = GridSearch {
        free_dim,
        free: vec![0.0; free_dim * free_dim],
        sum_free: 0.0,
        row_slack: ctx.star_row[..free_dim].to_vec(),
        col_slack: ctx.star_col[..free_dim].to_vec(),
        m00_values: grid_values(ctx.m00_lo, ctx.m00_hi, resolution),
        best_min: None,
        best_max: None,
        ctx: &ctx,
    };
    search.recurse(0);
    let (Some(mut lo), Some(mut hi)) = (search.best_min, search.best_max) else {
        return Err(Error::InfeasibleResolution { resolution });
    };
    refine(&ctx, Direction::Min, &mut lo);
    refine(&ctx, Direction::Max, &mut hi);
    let witness = |c: &Candidate| -> Result<EnvelopeWitness> {
        Ok(EnvelopeWitness::Mediation {
            mediator: ctx.mediator_joint(c.m00)?,
            star: CounterfactualJoint::new(JointKind::StarPairs, c.star.clone())?,
        })
    };
    Ok(Envelope {
        min_pc: lo.pc,
        max_pc: hi.pc,
        at_min: witness(&lo)?,
        at_max: witness(&hi)?,
        method: EnvelopeMethod::GridSearch,
        resolution: Some(resolution),
    })
}
