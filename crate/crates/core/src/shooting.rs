//! Numerov shooting for the step and smoothed wells.
//!
//! The equation `psi'' = (V - E) psi` is integrated left to right on a
//! uniform grid from `psi(-a) = 0`, `psi'(-a) = 1`; eigenvalues are the
//! energies at which the solution also vanishes at `x = b`.
//!
//! For the discontinuous step, plain Numerov loses two orders at the jump.
//! When `x = 0` falls on a grid node, the step across that node instead uses
//! the exact propagator of the piecewise-constant equation, and the
//! neighbouring Numerov steps see the one-sided potential limits. That keeps
//! the scheme fourth order. Off-node steps fall back to sampling `v0/2` at the
//! origin.

use serde::Serialize;

use crate::error::{Result, WellError};
use crate::potential::WellSpec;
use crate::roots;
use crate::spectrum::{sinc, sinhc};

pub const DEFAULT_GRID: usize = 4000;

const RESCALE_CAP: f64 = 1e100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSolution {
    pub spec: WellSpec,
    pub n: usize,
    pub energy: f64,
    pub grid: Vec<f64>,
    /// `psi(x_i)`, unit norm under Simpson quadrature, positive initial slope.
    pub values: Vec<f64>,
    pub step: f64,
    /// Index of the node at `x = 0`, when there is one.
    #[serde(skip)]
    pub origin: Option<usize>,
}

/// Grid, sampled potential and jump bookkeeping for one well.
#[derive(Debug, Clone)]
struct Lattice {
    spec: WellSpec,
    n: usize,
    h: f64,
    potential: Vec<f64>,
    /// Node of the step discontinuity, with the one-sided floor values there.
    jump: Option<(usize, f64, f64)>,
}

fn origin_node(spec: &WellSpec, n: usize, h: f64) -> Option<usize> {
    let j = (spec.a / h).round();
    if j > 0.0 && (j as usize) < n && (spec.a - j * h).abs() <= 1e-9 * h {
        Some(j as usize)
    } else {
        None
    }
}

impl Lattice {
    fn new(spec: &WellSpec, n: usize) -> Result<Self> {
        spec.validate()?;
        if n < 100 || !n.is_multiple_of(2) {
            return Err(WellError::InvalidArgument(format!(
                "grid size must be even and at least 100, got {n}"
            )));
        }
        let h = spec.width() / n as f64;
        let potential = (0..=n).map(|i| spec.floor(node(spec, h, n, i))).collect();
        let jump = if spec.smoothing.is_step() && spec.v0 > 0.0 {
            origin_node(spec, n, h).map(|j| (j, 0.0, spec.v0))
        } else {
            None
        };
        Ok(Lattice {
            spec: *spec,
            n,
            h,
            potential,
            jump,
        })
    }

    /// `V - E` at node `i` as seen by a stencil centred on node `centre`.
    fn f(&self, i: usize, centre: usize, energy: f64) -> f64 {
        match self.jump {
            Some((j, left, right)) if i == j => {
                if centre < j {
                    left - energy
                } else {
                    right - energy
                }
            }
            _ => self.potential[i] - energy,
        }
    }

    fn weight(&self, i: usize, centre: usize, energy: f64) -> f64 {
        1.0 - self.h * self.h / 12.0 * self.f(i, centre, energy)
    }

    /// Integrates from the left wall; returns `psi(b)` up to a positive factor.
    ///
    /// Numerov in summed form: with `y_i = (1 - h^2 f_i / 12) psi_i`, the first
    /// difference `d_i = y_{i+1} - y_i` accumulates `h^2 f_i psi_i`. This keeps
    /// roundoff from swamping the fourth-order truncation error on fine grids.
    fn integrate(&self, energy: f64, mut store: Option<&mut Vec<f64>>) -> f64 {
        let h2 = self.h * self.h;
        let mut prev = 0.0;
        let mut cur = self.h;
        let mut y_cur = self.weight(1, 1, energy) * cur;
        let mut diff = y_cur - self.weight(0, 1, energy) * prev;
        if let Some(out) = store.as_deref_mut() {
            out.clear();
            out.push(prev);
            out.push(cur);
        }
        for i in 1..self.n {
            let next = match self.jump {
                Some((j, left, right)) if i == j => {
                    let next = exact_step(prev, cur, left - energy, right - energy, self.h);
                    // restart the summed form for stencils right of the jump
                    let y_next = self.weight(i + 1, i + 1, energy) * next;
                    diff = y_next - self.weight(i, i + 1, energy) * cur;
                    y_cur = y_next;
                    next
                }
                _ => {
                    diff += h2 * self.f(i, i, energy) * cur;
                    y_cur += diff;
                    y_cur / self.weight(i + 1, i, energy)
                }
            };
            prev = cur;
            cur = next;
            if cur.abs() > RESCALE_CAP {
                prev /= RESCALE_CAP;
                cur /= RESCALE_CAP;
                y_cur /= RESCALE_CAP;
                diff /= RESCALE_CAP;
                if let Some(out) = store.as_deref_mut() {
                    out.iter_mut().for_each(|v| *v /= RESCALE_CAP);
                }
            }
            if let Some(out) = store.as_deref_mut() {
                out.push(cur);
            }
        }
        cur
    }
}

fn node(spec: &WellSpec, h: f64, n: usize, i: usize) -> f64 {
    if i == n {
        spec.b
    } else {
        -spec.a + h * i as f64
    }
}

/// Propagator of `psi'' = f psi` over one step `h` with constant `f`: (cosine-like, sine-like).
fn local_propagator(f: f64, h: f64) -> (f64, f64) {
    if f > 0.0 {
        let t = f.sqrt() * h;
        (t.cosh(), h * sinhc(t))
    } else if f < 0.0 {
        let t = (-f).sqrt() * h;
        (t.cos(), h * sinc(t))
    } else {
        (1.0, h)
    }
}

/// `psi(h)` from `psi(-h)`, `psi(0)` when `f` is `f_left` on `[-h, 0)` and `f_right` on `(0, h]`.
fn exact_step(prev: f64, cur: f64, f_left: f64, f_right: f64, h: f64) -> f64 {
    let (c_l, s_l) = local_propagator(f_left, h);
    let (c_r, s_r) = local_propagator(f_right, h);
    let slope = (cur * c_l - prev) / s_l;
    cur * c_r + slope * s_r
}

/// Shooting mismatch `psi(b)` for a trial energy.
///
/// Only the sign and the zeros are meaningful: the running solution is
/// rescaled whenever it grows past a large cap.
pub fn shoot(spec: &WellSpec, energy: f64, n_grid: usize) -> Result<f64> {
    if !energy.is_finite() {
        return Err(WellError::InvalidArgument(format!(
            "energy must be finite, got {energy}"
        )));
    }
    Ok(Lattice::new(spec, n_grid)?.integrate(energy, None))
}

/// Composite Simpson over uniformly spaced samples; an odd number of
/// intervals closes with the 3/8 rule, a single interval with the trapezoid.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let intervals = values.len().saturating_sub(1);
    match intervals {
        0 => 0.0,
        1 => 0.5 * h * (values[0] + values[1]),
        _ => {
            let (even_part, tail) = if intervals.is_multiple_of(2) {
                (intervals, 0)
            } else {
                (intervals - 3, 3)
            };
            let mut sum = 0.0;
            if even_part > 0 {
                let ys = &values[..=even_part];
                let mut s = ys[0] + ys[even_part];
                for (i, y) in ys.iter().enumerate().take(even_part).skip(1) {
                    s += if i % 2 == 1 { 4.0 * y } else { 2.0 * y };
                }
                sum += s * h / 3.0;
            }
            if tail == 3 {
                let ys = &values[even_part..];
                sum += 3.0 * h / 8.0 * (ys[0] + 3.0 * ys[1] + 3.0 * ys[2] + ys[3]);
            }
            sum
        }
    }
}

impl GridSolution {
    fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v * v).collect()
    }

    /// Simpson norm, split at the origin node when the grid has one.
    pub fn norm(&self) -> f64 {
        let d = self.density();
        match self.origin {
            Some(j) => simpson(&d[..=j], self.step) + simpson(&d[j..], self.step),
            None => simpson(&d, self.step),
        }
    }

    /// Sign changes of the interior samples. Values below `1e-7` of the peak
    /// are ignored: in an evanescent tail the residual of the shooting
    /// boundary condition can flip their sign without a physical node.
    pub fn interior_nodes(&self) -> usize {
        let last = self.values.len() - 1;
        let peak = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let floor = 1e-7 * peak;
        roots::count_sign_changes(self.values[1..last].iter().map(|&v| {
            if v.abs() < floor {
                0.0
            } else {
                v
            }
        }))
    }
}

fn solution_at(lattice: &Lattice, n: usize, energy: f64) -> GridSolution {
    let mut values = Vec::with_capacity(lattice.n + 1);
    lattice.integrate(energy, Some(&mut values));
    // The boundary condition holds exactly for an eigenstate.
    values[lattice.n] = 0.0;
    let grid = (0..=lattice.n)
        .map(|i| node(&lattice.spec, lattice.h, lattice.n, i))
        .collect();
    let mut sol = GridSolution {
        spec: lattice.spec,
        n,
        energy,
        grid,
        values,
        step: lattice.h,
        origin: origin_node(&lattice.spec, lattice.n, lattice.h),
    };
    let scale = sol.norm().sqrt();
    sol.values.iter_mut().for_each(|v| *v /= scale);
    sol
}

/// Every eigenstate with energy in `(0, e_max]` of any well family.
pub fn find_spectrum_numeric(
    spec: &WellSpec,
    e_max: f64,
    n_grid: usize,
) -> Result<Vec<GridSolution>> {
    let lattice = Lattice::new(spec, n_grid)?;
    if !(e_max.is_finite() && e_max > 0.0) {
        return Err(WellError::InvalidArgument(format!(
            "e_max must be positive, got {e_max}"
        )));
    }
    let start = roots::scan_start(spec);
    if e_max <= start {
        return Ok(Vec::new());
    }
    let mismatch = |e: f64| lattice.integrate(e, None);
    let base_step = roots::scan_step(spec);

    let mut failure = None;
    'refine: for refinement in 0..6 {
        let step = base_step / f64::from(1u32 << refinement);
        let mut out = Vec::new();
        let mut prev = start;
        for (i, (lo, hi)) in roots::bracket(mismatch, start, e_max, step)
            .into_iter()
            .enumerate()
        {
            let energy = roots::bisect(mismatch, lo, hi, 0.0);
            let sol = solution_at(&lattice, i + 1, energy);
            let found = sol.interior_nodes();
            if found != i {
                failure = Some(WellError::NodeCount {
                    n: i + 1,
                    found,
                    expected: i,
                    lo: prev,
                    hi: energy,
                });
                continue 'refine;
            }
            prev = energy;
            out.push(sol);
        }
        return Ok(out);
    }
    Err(failure.expect("at least one scan was attempted"))
}

/// The lowest `n_max` numeric states.
pub fn lowest_states_numeric(
    spec: &WellSpec,
    n_max: usize,
    n_grid: usize,
) -> Result<Vec<GridSolution>> {
    let l = spec.width();
    let e_cap = (n_max as f64 * std::f64::consts::PI / l).powi(2) + spec.v0 + 1.0;
    let mut states = find_spectrum_numeric(spec, e_cap, n_grid)?;
    states.truncate(n_max);
    Ok(states)
}

/// Probability of the left half, `int_{-a}^0 |psi|^2`, by Simpson quadrature.
///
/// If the origin falls between nodes, the straddling interval is split and
/// `|psi|^2` interpolated linearly up to `x = 0`.
pub fn side_probability_numeric(sol: &GridSolution) -> f64 {
    let d = sol.density();
    if let Some(j) = sol.origin {
        return simpson(&d[..=j], sol.step);
    }
    // last node strictly left of the origin
    let m = sol.grid.iter().rposition(|&x| x < 0.0).unwrap_or(0);
    let head = simpson(&d[..=m], sol.step);
    let (x0, x1) = (sol.grid[m], sol.grid[m + 1]);
    let t = -x0 / (x1 - x0);
    let at_origin = d[m] + t * (d[m + 1] - d[m]);
    head + 0.5 * (-x0) * (d[m] + at_origin)
}
