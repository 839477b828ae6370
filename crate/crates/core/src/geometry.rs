//! Fricke trace coordinates.
//!
//! A pair `(a, b)` projects to `(x, t) = (tr a, tr [a,b])`, which always lies
//! in the region `D = {(x,t) in [-2,2]^2 : x^2 - 2 <= t}`. The classical trace
//! triple `(tr a, tr b, tr ab)` ranges over the region `Omega` cut out by
//! `x^2 + y^2 + z^2 - xyz - 4 <= 0`. Both projections have explicit sections,
//! implemented here as [`construct_pair_from_fricke`] and
//! [`construct_pair_from_traces`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::su2::{commutator, Pair, SU2Element};

/// One-sided slack for region membership.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Tolerance for trace identities checked against matrix arithmetic.
pub const IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrickeCoord {
    pub x: f64,
    pub t: f64,
}

impl FrickeCoord {
    pub fn new(x: f64, t: f64) -> Self {
        FrickeCoord { x, t }
    }

    pub fn in_domain(&self) -> bool {
        in_domain_d(self.x, self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceTriple {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TraceTriple {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        TraceTriple { x, y, z }
    }

    pub fn of_pair(p: &Pair) -> Self {
        TraceTriple {
            x: p.a.trace(),
            y: p.b.trace(),
            z: (p.a * p.b).trace(),
        }
    }

    pub fn in_omega(&self) -> bool {
        in_omega(self.x, self.y, self.z)
    }

    /// The polynomial `x^2 + y^2 + z^2 - xyz - 4`; nonpositive exactly on `Omega`.
    pub fn markoff_defect(&self) -> f64 {
        let TraceTriple { x, y, z } = *self;
        x * x + y * y + z * z - x * y * z - 4.0
    }
}

/// `(tr a, tr [a,b])`.
pub fn pi_map(p: &Pair) -> FrickeCoord {
    FrickeCoord {
        x: p.a.trace(),
        t: commutator(&p.a, &p.b).trace(),
    }
}

/// `tr(a^2)` as a function of `x = tr a`.
pub fn trace_of_square(x: f64) -> f64 {
    x * x - 2.0
}

/// `tr([a^2, b])` as a function of `x = tr a` and `t = tr [a,b]`.
pub fn commutator_trace_of_square(x: f64, t: f64) -> f64 {
    x * x * (t - 2.0) + 2.0
}

/// The plane map induced by `(a, b) -> (a^2, b)`.
pub fn phi(c: FrickeCoord) -> FrickeCoord {
    FrickeCoord {
        x: trace_of_square(c.x),
        t: commutator_trace_of_square(c.x, c.t),
    }
}

/// Fricke–Vogt: `tr [a,b] = x^2 + y^2 + z^2 - xyz - 2`.
pub fn fricke_commutator_trace(tr: TraceTriple) -> f64 {
    tr.markoff_defect() + 2.0
}

fn in_square(v: f64) -> bool {
    v.abs() <= 2.0 + MEMBERSHIP_TOL
}

pub fn in_domain_d(x: f64, t: f64) -> bool {
    in_square(x) && in_square(t) && x * x - 2.0 <= t + MEMBERSHIP_TOL
}

pub fn in_omega(x: f64, y: f64, z: f64) -> bool {
    in_square(x)
        && in_square(y)
        && in_square(z)
        && TraceTriple { x, y, z }.markoff_defect() <= MEMBERSHIP_TOL
}

fn clamp_unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Explicit section of [`pi_map`] over `D`.
///
/// For `|x| < 2` this is `a = diag(e^{i alpha}, e^{-i alpha})` with
/// `x = 2 cos alpha`, `alpha in [0, pi]`, and the real rotation
/// `b = [[sqrt(1-s), -sqrt(s)], [sqrt(s), sqrt(1-s)]]` with
/// `s = (2 - t) / (4 - x^2)`. When `|x| = 2` the only point of `D` over it is
/// `t = 2`, realized by `(±I, I)`.
pub fn construct_pair_from_fricke(x: f64, t: f64) -> Result<Pair> {
    if !x.is_finite() || !t.is_finite() || !in_domain_d(x, t) {
        return Err(Error::domain(format!("({x}, {t}) is not in D")));
    }
    let four_minus = 4.0 - x * x;
    if four_minus <= 0.0 {
        let a = if x > 0.0 {
            SU2Element::IDENTITY
        } else {
            SU2Element::IDENTITY.neg()
        };
        return Ok(Pair::new(a, SU2Element::IDENTITY));
    }
    let alpha = (x / 2.0).clamp(-1.0, 1.0).acos();
    let s = clamp_unit((2.0 - t) / four_minus);
    let a = SU2Element::diagonal(alpha);
    let b = SU2Element::new_unchecked(
        Complex64::new((1.0 - s).sqrt(), 0.0),
        Complex64::new(-s.sqrt(), 0.0),
    );
    Ok(Pair::new(a, b))
}

/// Explicit section of the trace map `(a, b) -> (tr a, tr b, tr ab)` over `Omega`.
///
/// `a` is diagonal as in [`construct_pair_from_fricke`]. Writing `p` for the
/// (1,1) entry of `b`, the conditions `tr b = y` and `tr ab = z` are real
/// linear in `p`: `Re p = y/2` and `cos(alpha) Re p - sin(alpha) Im p = z/2`.
/// The off-diagonal entry is then real and nonnegative. At `|x| = 2`, `a = ±I`
/// forces `z = ±y` and `b` is taken to be a real rotation.
pub fn construct_pair_from_traces(x: f64, y: f64, z: f64) -> Result<Pair> {
    if ![x, y, z].iter().all(|v| v.is_finite()) || !in_omega(x, y, z) {
        return Err(Error::domain(format!("({x}, {y}, {z}) is not in Omega")));
    }
    let half_y = (y / 2.0).clamp(-1.0, 1.0);
    let sin_alpha_sq = 1.0 - x * x / 4.0;
    if sin_alpha_sq <= 0.0 {
        let sign = if x > 0.0 { 1.0 } else { -1.0 };
        if (z - sign * y).abs() > IDENTITY_TOL {
            return Err(Error::domain(format!(
                "tr(a) = {x} forces tr(ab) = {}, got {z}",
                sign * y
            )));
        }
        let a = if sign > 0.0 {
            SU2Element::IDENTITY
        } else {
            SU2Element::IDENTITY.neg()
        };
        let b = SU2Element::new_unchecked(
            Complex64::new(half_y, 0.0),
            Complex64::new((1.0 - half_y * half_y).max(0.0).sqrt(), 0.0),
        );
        return Ok(Pair::new(a, b));
    }
    let alpha = (x / 2.0).clamp(-1.0, 1.0).acos();
    let (sin_a, cos_a) = alpha.sin_cos();
    let re_p = half_y;
    let im_p = (cos_a * re_p - z / 2.0) / sin_a;
    let p = Complex64::new(re_p, im_p);
    let q = (1.0 - p.norm_sqr()).max(0.0).sqrt();
    let b = SU2Element::new_unchecked(p, Complex64::new(q, 0.0)).renormalized();
    Ok(Pair::new(SU2Element::diagonal(alpha), b))
}
