//! Truncated spectral-gap estimation.
//!
//! `L^2(SU(2))` splits into the irreducible representations `pi_n` of
//! dimension `n + 1`, each with multiplicity `n + 1`. On the block of level
//! `n` the averaging operator of a pair is
//!
//! ```text
//!   A_n = (pi_n(a) + pi_n(a)^† + pi_n(b) + pi_n(b)^†) / 4
//! ```
//!
//! and `1 - lambda_max(A_n)` is the gap of that block. A pair has a spectral
//! gap exactly when these block gaps are bounded away from zero over all
//! `n >= 1`. Anything computed here looks at finitely many levels, so every
//! number it produces is evidence about the gap, never a certificate.
//!
//! With `M_n = (I - pi_n(a))^†(I - pi_n(a)) + (I - pi_n(b))^†(I - pi_n(b))` one
//! has `M_n = 4 (I - A_n)`, so the block gap is `lambda_min(M_n) / 4` and for a
//! unit vector `v` the Rayleigh quotient `v^† M_n v` equals
//! `|pi_n(a) v - v|^2 + |pi_n(b) v - v|^2`. Quotients are always evaluated in
//! that displacement form, which stays accurate when the gap is tiny.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::su2::{evaluate_word, Letter, Pair, SU2Element, Streams, Word};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const DEFAULT_N_MAX: usize = 50;
pub const POWER_ITERATION_BUDGET: usize = 10_000;
pub const POWER_ITERATION_TOL: f64 = 1e-12;

/// Seed of the restart vectors used by the eigenvalue iterations.
const RESTART_SEED: u64 = 0x5EED_CAFE;

/// Irreducible representation of dimension `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLevel(pub usize);

impl IrrepLevel {
    pub fn dim(self) -> usize {
        self.0 + 1
    }
}

fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0; n + 1];
    for k in 1..n {
        row[k] = row[k - 1] * (n + 1 - k) as f64 / k as f64;
        row[k] = row[k].round();
    }
    row
}

fn powers(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        out.push(acc);
        acc *= z;
    }
    out
}

/// Matrix of `g` on homogeneous polynomials of degree `n`.
///
/// Basis vector `j` is `sqrt(C(n, j)) x^(n-j) y^j`, orthonormal for the
/// invariant inner product. `g` acts by `f(x, y) -> f((x, y) g)`, i.e.
/// `x -> alpha x - conj(beta) y` and `y -> beta x + conj(alpha) y`, which is a
/// homomorphism and reproduces `g` itself at `n = 1`.
pub fn irrep_matrix(g: &SU2Element, level: IrrepLevel) -> CMatrix {
    let n = level.0;
    let (alpha, beta) = (g.alpha, g.beta);
    let pa = powers(alpha, n);
    let pac = powers(alpha.conj(), n);
    let pb = powers(beta, n);
    let pbc = powers(-beta.conj(), n);
    let binoms: Vec<Vec<f64>> = (0..=n).map(binomial_row).collect();
    let norms: Vec<f64> = binoms[n].iter().map(|c| c.sqrt()).collect();

    let mut m = CMatrix::zeros(n + 1, n + 1);
    for j in 0..=n {
        let r = n - j;
        // (alpha x - conj(beta) y)^r, coefficients indexed by the power of x
        let first: Vec<Complex64> = (0..=r).map(|p| pa[p] * pbc[r - p] * binoms[r][p]).collect();
        // (beta x + conj(alpha) y)^j
        let second: Vec<Complex64> = (0..=j).map(|q| pb[q] * pac[j - q] * binoms[j][q]).collect();
        for (p, u) in first.iter().enumerate() {
            for (q, w) in second.iter().enumerate() {
                // x^(p+q) y^(n-p-q) is basis index n - p - q
                let i = n - p - q;
                m[(i, j)] += u * w;
            }
        }
        for i in 0..=n {
            m[(i, j)] *= norms[j] / norms[i];
        }
    }
    m
}

/// `(pi_n(a) + pi_n(a)^† + pi_n(b) + pi_n(b)^†) / 4`.
pub fn averaging_operator(p: &Pair, level: IrrepLevel) -> CMatrix {
    let ra = irrep_matrix(&p.a, level);
    let rb = irrep_matrix(&p.b, level);
    (&ra + ra.adjoint() + &rb + rb.adjoint()) * Complex64::new(0.25, 0.0)
}

/// `(I - pi_n(a))^†(I - pi_n(a)) + (I - pi_n(b))^†(I - pi_n(b))`.
pub fn defect_operator(p: &Pair, level: IrrepLevel) -> CMatrix {
    let id = CMatrix::identity(level.dim(), level.dim());
    let da = &id - irrep_matrix(&p.a, level);
    let db = &id - irrep_matrix(&p.b, level);
    da.adjoint() * &da + db.adjoint() * &db
}

/// Both representation matrices of a pair at one level.
struct LevelReps {
    ra: CMatrix,
    rb: CMatrix,
}

impl LevelReps {
    fn new(p: &Pair, level: IrrepLevel) -> Self {
        LevelReps {
            ra: irrep_matrix(&p.a, level),
            rb: irrep_matrix(&p.b, level),
        }
    }

    /// `|pi(a) v - v|^2 + |pi(b) v - v|^2` for unit `v`.
    fn displacement_energy(&self, v: &CVector) -> f64 {
        (&self.ra * v - v).norm_squared() + (&self.rb * v - v).norm_squared()
    }
}

fn normalized(v: CVector) -> CVector {
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

fn start_vectors(dim: usize, level: IrrepLevel) -> [CVector; 2] {
    let ones = normalized(CVector::from_element(dim, Complex64::new(1.0, 0.0)));
    let mut rng = Streams::new(RESTART_SEED).stream(level.0 as u64);
    [ones, random_unit_vector(&mut rng, dim)]
}

/// Power iteration for the dominant eigenvector of a positive semidefinite
/// matrix, run on the powers `B^(2^k)` obtained by repeated squaring.
///
/// Step `k` looks at `B^(2^k) start`, so near-degenerate top eigenvalues
/// (common at high levels) separate after a few dozen steps instead of
/// millions. Convergence is judged on `energy` of the normalized iterate,
/// which must be the quantity the caller wants. Returns `None` if the
/// relative change did not drop below `tol` within `budget` steps.
fn power_iterate(
    b: &CMatrix,
    energy: impl Fn(&CVector) -> f64,
    start: &CVector,
    budget: usize,
    tol: f64,
) -> Option<f64> {
    let scale = b.norm();
    if scale == 0.0 {
        // every vector is dominant
        return Some(energy(start));
    }
    let mut power = b / Complex64::new(scale, 0.0);
    let mut prev = energy(start);
    for _ in 0..budget {
        let w = &power * start;
        let n = w.norm();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        let cur = energy(&(w / Complex64::new(n, 0.0)));
        if (cur - prev).abs() <= tol * cur.max(tol) {
            return Some(cur);
        }
        prev = cur;
        let sq = &power * &power;
        let sq_norm = sq.norm();
        if sq_norm == 0.0 {
            return None;
        }
        power = sq / Complex64::new(sq_norm, 0.0);
    }
    None
}

fn min_displacement_energy(reps: &LevelReps, level: IrrepLevel, shifted: &CMatrix) -> Result<f64> {
    let mut best = f64::INFINITY;
    for start in start_vectors(level.dim(), level) {
        let e = power_iterate(
            shifted,
            |v| reps.displacement_energy(v),
            &start,
            POWER_ITERATION_BUDGET,
            POWER_ITERATION_TOL,
        )
        .ok_or(Error::Convergence {
            level: level.0,
            iterations: POWER_ITERATION_BUDGET,
        })?;
        best = best.min(e);
    }
    Ok(best)
}

/// `1 - lambda_max(A_n)`, by power iteration on `A_n + I`.
pub fn level_gap(p: &Pair, level: IrrepLevel) -> Result<f64> {
    let reps = LevelReps::new(p, level);
    let shifted = averaging_operator(p, level) + CMatrix::identity(level.dim(), level.dim());
    let e = min_displacement_energy(&reps, level, &shifted)?;
    Ok((e / 4.0).clamp(0.0, 2.0))
}

/// `sqrt(lambda_min(M_n))`, by power iteration on `c I - M_n` with `c` the
/// max-column-sum bound on `|M_n|`.
///
/// This bounds `min_v |pi(a) v - v| + |pi(b) v - v|` over unit `v` from
/// below, and is within a factor `sqrt 2` of it.
pub fn min_defect_level(p: &Pair, level: IrrepLevel) -> Result<f64> {
    let reps = LevelReps::new(p, level);
    let m = defect_operator(p, level);
    let c = (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let shifted = CMatrix::identity(level.dim(), level.dim()) * Complex64::new(c, 0.0) - m;
    let e = min_displacement_energy(&reps, level, &shifted)?;
    Ok(e.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelGap {
    pub n: usize,
    pub dim: usize,
    pub gap: f64,
}

/// Gaps of levels `1..=n_max`. `min_gap` is evidence about the spectral
/// gap of the pair, not a certificate of it.
#[derive(Debug, Clone, PartialEq)]
pub struct GapProfile {
    pub levels: Vec<LevelGap>,
    pub min_gap: f64,
    pub argmin_level: usize,
    pub n_max: usize,
}

pub fn gap_profile(p: &Pair, n_max: usize) -> Result<GapProfile> {
    if n_max < 1 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    let levels = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            level_gap(p, IrrepLevel(n)).map(|gap| LevelGap {
                n,
                dim: n + 1,
                gap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (argmin_level, min_gap) = levels
        .iter()
        .map(|l| (l.n, l.gap))
        .fold((0, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
    Ok(GapProfile {
        levels,
        min_gap,
        argmin_level,
        n_max,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectCheck {
    /// `|pi_n(w(a,b)) v - v|`
    pub lhs: f64,
    /// `len(w) * max_s |pi_n(s) v - v|` over `s in {a, a^-1, b, b^-1}`
    pub rhs: f64,
}

impl DefectCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }
}

/// Evaluates both sides of the word-length displacement bound for one vector.
pub fn word_defect_check(p: &Pair, w: &Word, level: IrrepLevel, v: &CVector) -> Result<DefectCheck> {
    if v.len() != level.dim() {
        return Err(Error::domain(format!(
            "vector has dimension {}, level {} needs {}",
            v.len(),
            level.0,
            level.dim()
        )));
    }
    let g = evaluate_word(w, p);
    let lhs = (irrep_matrix(&g, level) * v - v).norm();
    let max_step = Letter::ALL
        .iter()
        .map(|l| (irrep_matrix(&l.evaluate(p), level) * v - v).norm())
        .fold(0.0, f64::max);
    Ok(DefectCheck {
        lhs,
        rhs: w.len() as f64 * max_step,
    })
}

/// Uniform unit vector in `C^dim`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    let v = CVector::from_fn(dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    normalized(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::haar_pair;
    use std::f64::consts::PI;

    #[test]
    fn low_levels() {
        let mut rng = Streams::new(1).stream(0);
        let g = crate::su2::haar_sample(&mut rng);
        let m0 = irrep_matrix(&g, IrrepLevel(0));
        assert_eq!(m0.shape(), (1, 1));
        assert!((m0[(0, 0)] - 1.0).norm() < 1e-15);

        let m1 = irrep_matrix(&g, IrrepLevel(1));
        let e = g.matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert!((m1[(i, j)] - e[i][j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn identity_pair_has_zero_gap_and_defect() {
        for n in [1, 2, 7, 30] {
            assert_eq!(level_gap(&Pair::IDENTITY, IrrepLevel(n)).unwrap(), 0.0);
            assert_eq!(min_defect_level(&Pair::IDENTITY, IrrepLevel(n)).unwrap(), 0.0);
            let a = averaging_operator(&Pair::IDENTITY, IrrepLevel(n));
            assert_eq!(a, CMatrix::identity(n + 1, n + 1));
        }
    }

    #[test]
    fn center_acts_trivially_on_even_levels() {
        let minus = Pair::new(SU2Element::IDENTITY.neg(), SU2Element::IDENTITY.neg());
        assert!(level_gap(&minus, IrrepLevel(2)).unwrap() < 1e-15);
        assert!((level_gap(&minus, IrrepLevel(1)).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn averaging_operator_is_hermitian() {
        let mut rng = Streams::new(3).stream(0);
        for n in 1..12 {
            let p = haar_pair(&mut rng);
            let a = averaging_operator(&p, IrrepLevel(n));
            assert!((&a - a.adjoint()).norm() < 1e-12);
        }
    }

    #[test]
    fn gap_profile_summary() {
        let prof = gap_profile(&Pair::IDENTITY, 10).unwrap();
        assert_eq!(prof.levels.len(), 10);
        assert_eq!(prof.min_gap, 0.0);
        assert!(gap_profile(&Pair::IDENTITY, 0).is_err());

        // (diag(i,-i), I): every even level has a weight-zero vector fixed by a
        let p = Pair::new(SU2Element::diagonal(PI / 2.0), SU2Element::IDENTITY);
        let prof = gap_profile(&p, 20).unwrap();
        assert!(prof.min_gap < 1e-12);
        assert!(prof.levels[3].gap < 1e-12, "level 4: {}", prof.levels[3].gap);
        assert!(prof.levels[0].gap > 0.1);
    }

    #[test]
    fn defect_check_edge_cases() {
        let mut rng = Streams::new(5).stream(0);
        let p = haar_pair(&mut rng);
        let v = random_unit_vector(&mut rng, 4);
        let c = word_defect_check(&p, &Word::empty(), IrrepLevel(3), &v).unwrap();
        assert!(c.lhs < 1e-14);
        assert_eq!(c.rhs, 0.0);
        assert!(word_defect_check(&p, &Word::empty(), IrrepLevel(2), &v).is_err());
    }
}
