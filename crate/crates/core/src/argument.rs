//! Argument jumps of quasi-periodic functions on coarse lattices.
//!
//! For a quasi-periodic `G` that does not vanish, any `K × N` lattice of
//! points `(x + i/K, y + j/N)` contains an adjacent pair whose arguments (in
//! revolutions) differ by more than `1/8` modulo 1. The search here works on
//! principal arguments: the mod-1 distance does not depend on the branch.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::zak::ZakGrid;

pub const DEFAULT_MODULUS_FLOOR: f64 = 1e-6;

/// Threshold of the jump condition, in revolutions.
pub const JUMP_THRESHOLD: f64 = 0.125;

/// `min_n |a - n|`, in `[0, 1/2]`.
pub fn mod1_dist(a: f64) -> f64 {
    (a - a.round()).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StepDirection {
    XStep,
    YStep,
}

impl StepDirection {
    pub fn name(&self) -> &'static str {
        match self {
            StepDirection::XStep => "x_step",
            StepDirection::YStep => "y_step",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpWitness {
    pub i: usize,
    pub j: usize,
    pub direction: StepDirection,
    /// Mod-1 distance of the argument difference, in `(1/8, 1/2]`.
    pub jump: f64,
}

/// Argument samples `h[i][j]` for `0 ≤ i ≤ K`, `0 ≤ j ≤ N`, in revolutions.
#[derive(Debug, Clone)]
pub struct ArgumentSamples {
    pub k: usize,
    pub n: usize,
    pub h: Vec<Vec<f64>>,
}

impl ArgumentSamples {
    /// Every adjacent pair `(i, j) → (i+1, j)` and `(i, j) → (i, j+1)` with
    /// `0 ≤ i < K`, `0 ≤ j < N`, with its mod-1 jump.
    pub fn pairs(&self) -> impl Iterator<Item = JumpWitness> + '_ {
        let dirs = [StepDirection::XStep, StepDirection::YStep];
        dirs.into_iter().flat_map(move |direction| {
            (0..self.k).flat_map(move |i| {
                (0..self.n).map(move |j| {
                    let next = match direction {
                        StepDirection::XStep => self.h[i + 1][j],
                        StepDirection::YStep => self.h[i][j + 1],
                    };
                    JumpWitness {
                        i,
                        j,
                        direction,
                        jump: mod1_dist(next - self.h[i][j]),
                    }
                })
            })
        })
    }

    /// Largest jump above `1/8`; ties go to the first pair in
    /// `(direction, i, j)` order.
    pub fn witness(&self) -> Option<JumpWitness> {
        let mut best: Option<JumpWitness> = None;
        for w in self.pairs() {
            if w.jump > JUMP_THRESHOLD && best.map_or(true, |b| w.jump > b.jump) {
                best = Some(w);
            }
        }
        best
    }
}

fn lattice_step(size: usize, parts: usize, axis: &str) -> Result<i64> {
    if parts < 8 {
        return Err(Error::invalid(format!("{axis} lattice count must be ≥ 8, got {parts}")));
    }
    if size % parts != 0 {
        return Err(Error::Misaligned(format!(
            "{axis}: grid size {size} is not a multiple of {parts}"
        )));
    }
    Ok((size / parts) as i64)
}

fn base_node(coord: f64, size: usize, parts: usize, axis: &str) -> Result<i64> {
    let u = coord * size as f64;
    let r = u.round();
    if (u - r).abs() > 1e-9 {
        return Err(Error::Misaligned(format!("base {axis} = {coord} is not a grid node")));
    }
    if !(0.0..1.0 / parts as f64).contains(&coord) {
        return Err(Error::invalid(format!(
            "base {axis} = {coord} must lie in [0, 1/{parts})"
        )));
    }
    Ok(r as i64)
}

/// Samples `(1/2π) arg Z(base + (i/K, j/N))` for `0 ≤ i ≤ K`, `0 ≤ j ≤ N`.
pub fn argument_samples(
    grid: &ZakGrid,
    base: (f64, f64),
    k: usize,
    n: usize,
    modulus_floor: f64,
) -> Result<ArgumentSamples> {
    let sx = lattice_step(grid.m_x(), k, "K")?;
    let sy = lattice_step(grid.n_y(), n, "N")?;
    let bx = base_node(base.0, grid.m_x(), k, "x")?;
    let by = base_node(base.1, grid.n_y(), n, "y")?;
    let mut h = vec![vec![0.0; n + 1]; k + 1];
    for (i, row) in h.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let z = grid.at(bx + i as i64 * sx, by + j as i64 * sy);
            if z.norm() < modulus_floor {
                return Err(Error::Hypothesis(format!(
                    "|Z| = {:.3e} below floor {modulus_floor:.1e} at lattice point ({i}, {j})",
                    z.norm()
                )));
            }
            *slot = z.arg() / (2.0 * PI);
        }
    }
    Ok(ArgumentSamples { k, n, h })
}

/// Searches the `K × N` lattice through `base` for an argument jump above `1/8`.
pub fn find_jump(grid: &ZakGrid, base: (f64, f64), k: usize, n: usize) -> Result<JumpWitness> {
    find_jump_with_floor(grid, base, k, n, DEFAULT_MODULUS_FLOOR)
}

pub fn find_jump_with_floor(
    grid: &ZakGrid,
    base: (f64, f64),
    k: usize,
    n: usize,
    modulus_floor: f64,
) -> Result<JumpWitness> {
    argument_samples(grid, base, k, n, modulus_floor)?
        .witness()
        .ok_or(Error::NotQuasiPeriodic)
}

/// Per-node `max(|G(x+1/K, y) - G(x, y)|, |G(x, y+1/N) - G(x, y)|)`.
fn node_differences(grid: &ZakGrid, k: usize, n: usize) -> Result<Vec<f64>> {
    if k == 0 || n == 0 {
        return Err(Error::invalid("K and N must be positive"));
    }
    if grid.m_x() % k != 0 || grid.n_y() % n != 0 {
        return Err(Error::Misaligned(format!(
            "grid {}x{} is not refined by K={k}, N={n}",
            grid.m_x(),
            grid.n_y()
        )));
    }
    let sx = (grid.m_x() / k) as i64;
    let sy = (grid.n_y() / n) as i64;
    let mut out = Vec::with_capacity(grid.m_x() * grid.n_y());
    for m in 0..grid.m_x() as i64 {
        for l in 0..grid.n_y() as i64 {
            let here = grid.at(m, l);
            let dx = (grid.at(m + sx, l) - here).norm();
            let dy = (grid.at(m, l + sy) - here).norm();
            out.push(dx.max(dy));
        }
    }
    Ok(out)
}

/// Node-counting estimate of the measure of
/// `{|G(x+1/K, y) - G| ≥ δ or |G(x, y+1/N) - G| ≥ δ}` in the unit square.
pub fn jump_set_measure(grid: &ZakGrid, k: usize, n: usize, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::invalid(format!("delta must be positive, got {delta}")));
    }
    let diffs = node_differences(grid, k, n)?;
    let hits = diffs.iter().filter(|&&d| d >= delta).count();
    Ok(hits as f64 / diffs.len() as f64)
}

/// Largest `δ` for which the jump-set measure is still at least `target`.
pub fn largest_delta(grid: &ZakGrid, k: usize, n: usize, target: f64) -> Result<f64> {
    let mut diffs = node_differences(grid, k, n)?;
    let total = diffs.len();
    let need = (target * total as f64).ceil().max(1.0) as usize;
    if need > total {
        return Err(Error::invalid(format!("target measure {target} exceeds 1")));
    }
    diffs.sort_by(|a, b| b.total_cmp(a));
    Ok(diffs[need - 1])
}
