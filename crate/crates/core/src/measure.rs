//! Monte Carlo experiments on the pushforward of Haar measure to `D` and on
//! the fibers of the commutator trace.
//!
//! All sampling is split into fixed-size chunks; chunk `k` draws from stream
//! `k` of the seed, so results depend only on `(seed, sample_count)` and not
//! on the number of worker threads.

use rand::Rng;
use rayon::prelude::*;

use crate::dynamics::{apply_move, fiber_image_interval, Interval, Move};
use crate::error::{Error, Result};
use crate::geometry::{construct_pair_from_traces, pi_map, MEMBERSHIP_TOL};
use crate::su2::{haar_pair, haar_sample, Pair, Streams};

/// Samples per random stream.
pub const CHUNK_SIZE: u64 = 1 << 14;

const RANGE_LO: f64 = -2.0;
const RANGE_HI: f64 = 2.0;

fn bin_index(v: f64, bins: usize) -> usize {
    let u = (v - RANGE_LO) / (RANGE_HI - RANGE_LO);
    ((u * bins as f64).floor().max(0.0) as usize).min(bins - 1)
}

fn chunks(sample_count: u64) -> impl ParallelIterator<Item = (u64, u64)> {
    let n_chunks = sample_count.div_ceil(CHUNK_SIZE);
    (0..n_chunks).into_par_iter().map(move |k| {
        let len = CHUNK_SIZE.min(sample_count - k * CHUNK_SIZE);
        (k, len)
    })
}

/// Counts of `(x, t)` over `[-2,2]^2`. Cell `(row, col)` covers the `row`-th
/// slice in `x` and the `col`-th slice in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram2D {
    pub bins: usize,
    pub counts: Vec<u64>,
    pub total: u64,
    pub seed: u64,
}

impl Histogram2D {
    pub fn new(bins: usize, seed: u64) -> Self {
        Histogram2D {
            bins,
            counts: vec![0; bins * bins],
            total: 0,
            seed,
        }
    }

    pub fn add(&mut self, x: f64, t: f64) {
        let idx = bin_index(x, self.bins) * self.bins + bin_index(t, self.bins);
        self.counts[idx] += 1;
        self.total += 1;
    }

    fn merge(mut self, other: &Histogram2D) -> Self {
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        self.total += other.total;
        self
    }

    pub fn count(&self, row: usize, col: usize) -> u64 {
        self.counts[row * self.bins + col]
    }

    pub fn cell_width(&self) -> f64 {
        (RANGE_HI - RANGE_LO) / self.bins as f64
    }

    /// `([x_lo, x_hi], [t_lo, t_hi])` of a cell.
    pub fn cell_bounds(&self, row: usize, col: usize) -> (Interval, Interval) {
        let w = self.cell_width();
        let span = |k: usize| Interval {
            lo: RANGE_LO + k as f64 * w,
            hi: RANGE_LO + (k + 1) as f64 * w,
        };
        (span(row), span(col))
    }

    pub fn cell_center(&self, row: usize, col: usize) -> (f64, f64) {
        let (xs, ts) = self.cell_bounds(row, col);
        ((xs.lo + xs.hi) / 2.0, (ts.lo + ts.hi) / 2.0)
    }

    /// Whether the closed cell meets `D`.
    pub fn cell_meets_domain(&self, row: usize, col: usize) -> bool {
        let (xs, ts) = self.cell_bounds(row, col);
        let min_sq = if xs.lo <= 0.0 && xs.hi >= 0.0 {
            0.0
        } else {
            xs.lo.abs().min(xs.hi.abs()).powi(2)
        };
        min_sq - 2.0 <= ts.hi
    }

    pub fn iter_cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.bins).flat_map(move |r| (0..self.bins).map(move |c| (r, c, self.count(r, c))))
    }
}

/// Haar pairs pushed through `(a, b) -> (tr a, tr [a,b])` and binned.
pub fn pushforward_histogram(sample_count: u64, bins: usize, seed: u64) -> Result<Histogram2D> {
    if sample_count < 1 || bins < 2 {
        return Err(Error::domain("need sample_count >= 1 and bins >= 2"));
    }
    let streams = Streams::new(seed);
    let hist = chunks(sample_count)
        .map(|(k, len)| {
            let mut rng = streams.stream(k);
            let mut h = Histogram2D::new(bins, seed);
            for _ in 0..len {
                let c = pi_map(&haar_pair(&mut rng));
                h.add(c.x, c.t);
            }
            h
        })
        .reduce(|| Histogram2D::new(bins, seed), |a, b| a.merge(&b));
    Ok(hist)
}

/// Pushforward samples themselves, in stream order.
pub fn pushforward_samples(sample_count: u64, seed: u64) -> Vec<(f64, f64)> {
    let streams = Streams::new(seed);
    chunks(sample_count)
        .flat_map_iter(|(k, len)| {
            let mut rng = streams.stream(k);
            (0..len)
                .map(|_| {
                    let c = pi_map(&haar_pair(&mut rng));
                    (c.x, c.t)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Real roots of `u^3 + p u + q = 0`.
fn depressed_cubic_roots(p: f64, q: f64) -> Vec<f64> {
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    if disc > 0.0 {
        let s = disc.sqrt();
        vec![(-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt()]
    } else if p == 0.0 {
        vec![0.0]
    } else {
        // three real roots, trigonometric form
        let r = (-p / 3.0).sqrt();
        let arg = (3.0 * q / (2.0 * p) / r).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| 2.0 * r * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos())
            .collect()
    }
}

/// Euclidean distance from `(x, t)` to the arc `{(u, u^2 - 2) : |u| <= 2}`.
pub fn distance_to_parabola(x: f64, t: f64) -> f64 {
    // stationary points of (u - x)^2 + (u^2 - 2 - t)^2 solve
    // u^3 - ((3 + 2t)/2) u - x/2 = 0
    let mut best = f64::INFINITY;
    let mut consider = |u: f64| {
        let u = u.clamp(-2.0, 2.0);
        best = best.min((u - x).hypot(u * u - 2.0 - t));
    };
    for u in depressed_cubic_roots(-(3.0 + 2.0 * t) / 2.0, -x / 2.0) {
        consider(u);
    }
    consider(-2.0);
    consider(2.0);
    best
}

/// Distance to `{t = x^2 - 2} ∪ {|x| = 2} ∪ {t = ±2}`.
pub fn distance_to_boundary(x: f64, t: f64) -> f64 {
    distance_to_parabola(x, t)
        .min(2.0 - x.abs())
        .min((t - 2.0).abs())
        .min((t + 2.0).abs())
}

/// Fraction of pushforward samples within `delta` of the boundary of `D`.
pub fn boundary_mass(sample_count: u64, delta: f64, seed: u64) -> Result<f64> {
    if !(delta > 0.0) || sample_count < 1 {
        return Err(Error::domain("need delta > 0 and sample_count >= 1"));
    }
    let streams = Streams::new(seed);
    let near: u64 = chunks(sample_count)
        .map(|(k, len)| {
            let mut rng = streams.stream(k);
            (0..len)
                .filter(|_| {
                    let c = pi_map(&haar_pair(&mut rng));
                    distance_to_boundary(c.x, c.t) <= delta
                })
                .count() as u64
        })
        .sum();
    Ok(near as f64 / sample_count as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberSample {
    pub t: f64,
    pub pairs: Vec<Pair>,
    /// Set when `t = -2`; the fiber is then a single conjugacy class and the
    /// pairs are conjugates of one construction.
    pub degenerate: bool,
}

/// Below this distance from `-2` a fiber is treated as degenerate.
pub const DEGENERATE_FIBER_TOL: f64 = 1e-9;

/// Pairs with commutator trace `t`.
///
/// `(x, y)` is drawn uniformly from `[-2,2]^2` and `z` solves
/// `z^2 - xyz + (x^2 + y^2 - 2 - t) = 0`; every real root in `[-2, 2]` is
/// kept. Each triple is realized by [`construct_pair_from_traces`] and then
/// conjugated by an independent Haar element. The result is supported on
/// the whole fiber but is not the disintegrated Haar measure.
pub fn sample_fiber(t: f64, count: usize, seed: u64) -> Result<FiberSample> {
    if !(t.abs() <= 2.0 + MEMBERSHIP_TOL) {
        return Err(Error::domain(format!("t = {t} is outside [-2, 2]")));
    }
    let t = t.clamp(-2.0, 2.0);
    let mut rng = Streams::new(seed).stream(0);
    let mut pairs = Vec::with_capacity(count);

    if t + 2.0 <= DEGENERATE_FIBER_TOL {
        let base = construct_pair_from_traces(0.0, 0.0, 0.0)?;
        for _ in 0..count {
            pairs.push(base.conjugated_by(&haar_sample(&mut rng)));
        }
        return Ok(FiberSample {
            t,
            pairs,
            degenerate: true,
        });
    }

    let budget = 1_000_000usize.max(count.saturating_mul(1000));
    let mut attempts = 0;
    while pairs.len() < count {
        attempts += 1;
        if attempts > budget {
            return Err(Error::SamplingBudget(format!(
                "fiber t = {t}: {} of {count} pairs after {budget} attempts",
                pairs.len()
            )));
        }
        let x: f64 = rng.random_range(-2.0..=2.0);
        let y: f64 = rng.random_range(-2.0..=2.0);
        let c = x * x + y * y - 2.0 - t;
        let disc = x * x * y * y - 4.0 * c;
        if disc < 0.0 {
            continue;
        }
        let s = disc.sqrt();
        let roots = if s == 0.0 {
            vec![x * y / 2.0]
        } else {
            vec![(x * y - s) / 2.0, (x * y + s) / 2.0]
        };
        for z in roots {
            if z.abs() > 2.0 || pairs.len() >= count {
                continue;
            }
            let base = construct_pair_from_traces(x, y, z)?;
            pairs.push(base.conjugated_by(&haar_sample(&mut rng)));
        }
    }
    Ok(FiberSample {
        t,
        pairs,
        degenerate: false,
    })
}

/// Commutator traces after squaring the first generator, over a fiber sample.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportHistogram {
    pub t: f64,
    pub expected: Interval,
    pub min: f64,
    pub max: f64,
    pub bins: usize,
    pub counts: Vec<u64>,
    pub total: u64,
    pub seed: u64,
}

impl TransportHistogram {
    pub fn bin_bounds(&self, k: usize) -> Interval {
        let w = (RANGE_HI - RANGE_LO) / self.bins as f64;
        Interval {
            lo: RANGE_LO + k as f64 * w,
            hi: RANGE_LO + (k + 1) as f64 * w,
        }
    }
}

pub fn transported_values(t: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
    let fiber = sample_fiber(t, count, seed)?;
    Ok(fiber
        .pairs
        .iter()
        .map(|p| apply_move(p, Move::SquareFirst).commutator().trace())
        .collect())
}

/// Histogram of [`transported_values`] over `[-2, 2]`; values fill
/// `[t^2 - 2, 2]`.
pub fn fiber_transport_demo(t: f64, count: usize, bins: usize, seed: u64) -> Result<TransportHistogram> {
    if bins < 1 {
        return Err(Error::domain("bins must be at least 1"));
    }
    let values = transported_values(t, count, seed)?;
    let mut counts = vec![0; bins];
    for &v in &values {
        counts[bin_index(v, bins)] += 1;
    }
    Ok(TransportHistogram {
        t,
        expected: fiber_image_interval(t),
        min: values.iter().copied().fold(f64::INFINITY, f64::min),
        max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        bins,
        counts,
        total: values.len() as u64,
        seed,
    })
}
