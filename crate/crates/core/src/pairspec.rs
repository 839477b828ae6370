//! Text records describing a pair, in one of three forms:
//!
//! ```json
//! {"type": "matrix", "a": [re_alpha, im_alpha, re_beta, im_beta], "b": [...]}
//! {"type": "fricke", "x": 0.5, "t": 1.0}
//! {"type": "traces", "x": 0.1, "y": 0.2, "z": 0.3}
//! ```
//!
//! Unknown fields are ignored, so records emitted with extra metadata (such as
//! a `schema` field) read back unchanged.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{construct_pair_from_fricke, construct_pair_from_traces};
use crate::su2::{Pair, SU2Element};

/// Allowed deviation of `|alpha|^2 + |beta|^2` from 1 in matrix records.
pub const MATRIX_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PairSpec {
    Matrix { a: [f64; 4], b: [f64; 4] },
    Fricke { x: f64, t: f64 },
    Traces { x: f64, y: f64, z: f64 },
}

fn element_components(g: &SU2Element) -> [f64; 4] {
    [g.alpha.re, g.alpha.im, g.beta.re, g.beta.im]
}

fn element_from(c: [f64; 4]) -> Result<SU2Element> {
    SU2Element::try_new(
        Complex64::new(c[0], c[1]),
        Complex64::new(c[2], c[3]),
        MATRIX_NORM_TOL,
    )
}

impl PairSpec {
    pub fn matrix(p: &Pair) -> Self {
        PairSpec::Matrix {
            a: element_components(&p.a),
            b: element_components(&p.b),
        }
    }

    pub fn to_pair(&self) -> Result<Pair> {
        match *self {
            PairSpec::Matrix { a, b } => Ok(Pair::new(element_from(a)?, element_from(b)?)),
            PairSpec::Fricke { x, t } => construct_pair_from_fricke(x, t),
            PairSpec::Traces { x, y, z } => construct_pair_from_traces(x, y, z),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::PairSpec(e.to_string()))
    }
}
