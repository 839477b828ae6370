//! Dynamics of the plane map on `D` and word-map orbits of pairs.
//!
//! Squaring the first generator sends the fiber over `t` (a horizontal
//! segment of `D`) onto a segment whose commutator traces fill
//! `[t^2 - 2, 2]`. Iterating the left endpoint `t -> t^2 - 2` eventually goes
//! negative for every `t < 2`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::geometry::{phi, pi_map, FrickeCoord, TraceTriple};
use crate::su2::{Pair, Word};

pub const DEFAULT_MAX_STEPS: usize = 64;

/// Resolution used to deduplicate orbit points.
pub const ORBIT_DEDUP_GRID: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct EscapeRecord {
    pub t0: f64,
    /// `orbit[0] = t0`, `orbit[k+1] = orbit[k]^2 - 2`; ends at the first
    /// negative value or after `max_steps` iterations.
    pub orbit: Vec<f64>,
    /// First index `k` with `orbit[k] < 0`, or `None` if not reached.
    pub steps_to_negative: Option<usize>,
}

/// Iterates `t -> t^2 - 2` from `t0` until the value is strictly negative.
pub fn iterate_phi_endpoint(t0: f64, max_steps: usize) -> EscapeRecord {
    let mut orbit = vec![t0];
    let mut t = t0;
    let mut steps_to_negative = None;
    for k in 0..=max_steps {
        if t < 0.0 {
            steps_to_negative = Some(k);
            break;
        }
        if k == max_steps {
            break;
        }
        t = t * t - 2.0;
        orbit.push(t);
    }
    EscapeRecord {
        t0,
        orbit,
        steps_to_negative,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, v: f64, tol: f64) -> bool {
        v >= self.lo - tol && v <= self.hi + tol
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Commutator traces reached by squaring the first generator over the fiber at `t`.
pub fn fiber_image_interval(t: f64) -> Interval {
    Interval {
        lo: t * t - 2.0,
        hi: 2.0,
    }
}

/// Grid evaluation of [`phi`] over the fiber `{(x, t) : x^2 <= t + 2}`,
/// returning the range of the second coordinate.
pub fn fiber_image_numeric(t: f64, grid_points: usize) -> Interval {
    let grid_points = grid_points.max(2);
    let x_max = (t + 2.0).max(0.0).sqrt();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..grid_points {
        let x = -x_max + 2.0 * x_max * k as f64 / (grid_points - 1) as f64;
        let v = phi(FrickeCoord::new(x, t)).t;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Interval { lo, hi }
}

/// Elementary word maps on pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    /// `(a, b) -> (a^2, b)`
    SquareFirst,
    /// `(a, b) -> (b, a)`
    SwapGenerators,
    /// `(a, b) -> (a^-1, b)`
    InvertFirst,
    /// `(a, b) -> (ab, b)`
    MultiplyFirstBySecond,
}

impl Move {
    pub const ALL: [Move; 4] = [
        Move::SquareFirst,
        Move::SwapGenerators,
        Move::InvertFirst,
        Move::MultiplyFirstBySecond,
    ];

    pub fn label(self) -> char {
        match self {
            Move::SquareFirst => 'S',
            Move::SwapGenerators => 'W',
            Move::InvertFirst => 'I',
            Move::MultiplyFirstBySecond => 'M',
        }
    }

    /// Applies the move to a pair of words; [`apply_move`] on the evaluated
    /// pair agrees with evaluating the result.
    pub fn apply_to_words(self, (u, v): (&Word, &Word)) -> (Word, Word) {
        match self {
            Move::SquareFirst => (u.concat(u), v.clone()),
            Move::SwapGenerators => (v.clone(), u.clone()),
            Move::InvertFirst => (u.inverse(), v.clone()),
            Move::MultiplyFirstBySecond => (u.concat(v), v.clone()),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

pub fn apply_move(p: &Pair, m: Move) -> Pair {
    match m {
        Move::SquareFirst => Pair::new(p.a * p.a, p.b),
        Move::SwapGenerators => Pair::new(p.b, p.a),
        Move::InvertFirst => Pair::new(p.a.inverse(), p.b),
        Move::MultiplyFirstBySecond => Pair::new(p.a * p.b, p.b),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitPoint {
    pub pair: Pair,
    pub coord: FrickeCoord,
    pub path: Vec<Move>,
    /// Words in the original generators that evaluate to `pair`.
    pub words: (Word, Word),
}

impl OrbitPoint {
    pub fn path_label(&self) -> String {
        if self.path.is_empty() {
            "-".to_string()
        } else {
            self.path.iter().map(|m| m.label()).collect()
        }
    }
}

fn dedup_key(p: &Pair) -> (i64, i64, i64) {
    let tr = TraceTriple::of_pair(p);
    let q = |v: f64| (v / ORBIT_DEDUP_GRID).round() as i64;
    (q(tr.x), q(tr.y), q(tr.z))
}

/// Breadth-first closure of `p` under the four moves, up to `depth` moves and
/// at most `max_points` points.
///
/// Points are deduplicated on the rounded trace triple, which determines a
/// pair up to simultaneous conjugation; conjugate pairs have conjugate orbits,
/// so no reachable Fricke coordinate is lost. The output order is the BFS
/// order, so a smaller `depth` or `max_points` always yields a prefix.
pub fn wordmap_orbit(p: &Pair, depth: usize, max_points: usize) -> Vec<OrbitPoint> {
    let mut out = Vec::new();
    if max_points == 0 {
        return out;
    }
    let mut seen = HashSet::new();
    let root = OrbitPoint {
        pair: *p,
        coord: pi_map(p),
        path: Vec::new(),
        words: (Word::generator_a(), Word::generator_b()),
    };
    seen.insert(dedup_key(p));
    let mut frontier = VecDeque::from([root]);
    'levels: for level in 0..=depth {
        let mut next = VecDeque::new();
        while let Some(pt) = frontier.pop_front() {
            if level < depth {
                for m in Move::ALL {
                    let pair = apply_move(&pt.pair, m);
                    let pair = Pair::new(pair.a.renormalized(), pair.b.renormalized());
                    if !seen.insert(dedup_key(&pair)) {
                        continue;
                    }
                    let mut path = pt.path.clone();
                    path.push(m);
                    next.push_back(OrbitPoint {
                        coord: pi_map(&pair),
                        words: m.apply_to_words((&pt.words.0, &pt.words.1)),
                        pair,
                        path,
                    });
                }
            }
            out.push(pt);
            if out.len() >= max_points {
                break 'levels;
            }
        }
        frontier = next;
    }
    out
}

/// Largest distance from a probe point of `D` to the nearest orbit coordinate.
/// Probes are the points of a `resolution x resolution` grid lying in `D`.
pub fn covering_radius(points: &[FrickeCoord], resolution: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..resolution {
        for j in 0..resolution {
            let x = -2.0 + 4.0 * (i as f64 + 0.5) / resolution as f64;
            let t = -2.0 + 4.0 * (j as f64 + 0.5) / resolution as f64;
            if x * x - 2.0 > t {
                continue;
            }
            let nearest = points
                .iter()
                .map(|c| (c.x - x).hypot(c.t - t))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
    }
    worst
}
