//! Elements of SU(2), pairs of elements, and words in the free group on two
//! generators.
//!
//! An element is stored by the first row `(alpha, beta)` of its matrix
//!
//! ```text
//!   [  alpha        beta      ]
//!   [ -conj(beta)   conj(alpha) ]
//! ```
//!
//! with `|alpha|^2 + |beta|^2 = 1`. Products are exact 2x2 complex arithmetic;
//! long products are renormalized periodically to keep the unit-norm invariant
//! from drifting.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Componentwise tolerance used by [`SU2Element::approx_eq`].
pub const ELEMENT_TOL: f64 = 1e-10;

/// Number of multiplications between renormalizations in long products.
pub const RENORMALIZE_EVERY: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Element {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl SU2Element {
    pub const IDENTITY: SU2Element = SU2Element {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    /// Builds an element without checking the unit-norm invariant.
    pub const fn new_unchecked(alpha: Complex64, beta: Complex64) -> Self {
        SU2Element { alpha, beta }
    }

    /// Builds an element, rejecting inputs whose norm is off by more than `tol`.
    /// Accepted inputs are renormalized.
    pub fn try_new(alpha: Complex64, beta: Complex64, tol: f64) -> Result<Self> {
        let n2 = alpha.norm_sqr() + beta.norm_sqr();
        if !n2.is_finite() || (n2 - 1.0).abs() > tol {
            return Err(Error::domain(format!(
                "|alpha|^2 + |beta|^2 = {n2}, expected 1"
            )));
        }
        Ok(SU2Element { alpha, beta }.renormalized())
    }

    /// Unit quaternion `w + xi + yj + zk`, mapped to `alpha = w + xi`, `beta = y + zi`.
    pub fn from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Self {
        SU2Element {
            alpha: Complex64::new(w, x),
            beta: Complex64::new(y, z),
        }
        .renormalized()
    }

    /// `diag(e^{i angle}, e^{-i angle})`.
    pub fn diagonal(angle: f64) -> Self {
        SU2Element {
            alpha: Complex64::from_polar(1.0, angle),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// Real rotation `[[cos angle, -sin angle], [sin angle, cos angle]]`.
    pub fn rotation(angle: f64) -> Self {
        SU2Element {
            alpha: Complex64::new(angle.cos(), 0.0),
            beta: Complex64::new(-angle.sin(), 0.0),
        }
    }

    pub fn neg(&self) -> Self {
        SU2Element {
            alpha: -self.alpha,
            beta: -self.beta,
        }
    }

    /// Conjugate transpose, which is the group inverse.
    pub fn inverse(&self) -> Self {
        SU2Element {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.alpha.re
    }

    pub fn det(&self) -> Complex64 {
        self.alpha * self.alpha.conj() + self.beta * self.beta.conj()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }

    pub fn renormalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        SU2Element {
            alpha: self.alpha / n,
            beta: self.beta / n,
        }
    }

    /// Full 2x2 matrix in row-major order.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [self.alpha, self.beta],
            [-self.beta.conj(), self.alpha.conj()],
        ]
    }

    /// Largest entrywise difference of the two matrices.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.alpha - other.alpha)
            .norm()
            .max((self.beta - other.beta).norm())
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.distance(other) <= ELEMENT_TOL
    }

    /// Frobenius norm of `g^† g - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let m = self.matrix();
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    s += m[k][i].conj() * m[k][j];
                }
                if i == j {
                    s -= 1.0;
                }
                acc += s.norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = SU2Element::IDENTITY;
        for k in 0..exp {
            acc = acc * *self;
            if (k as usize + 1) % RENORMALIZE_EVERY == 0 {
                acc = acc.renormalized();
            }
        }
        acc
    }
}

impl Default for SU2Element {
    fn default() -> Self {
        SU2Element::IDENTITY
    }
}

/// First row `[alpha, beta]`, honoring a float precision if given.
impl fmt::Display for SU2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(4);
        let z = |c: Complex64| format!("{:.p$}{:+.p$}i", c.re, c.im);
        write!(f, "[{}, {}]", z(self.alpha), z(self.beta))
    }
}

impl Mul for SU2Element {
    type Output = SU2Element;

    fn mul(self, rhs: SU2Element) -> SU2Element {
        // Only the first row is needed; the second follows from the SU(2) form.
        SU2Element {
            alpha: self.alpha * rhs.alpha - self.beta * rhs.beta.conj(),
            beta: self.alpha * rhs.beta + self.beta * rhs.alpha.conj(),
        }
    }
}

pub fn multiply(g: &SU2Element, h: &SU2Element) -> SU2Element {
    *g * *h
}

/// `a b a^{-1} b^{-1}`.
pub fn commutator(a: &SU2Element, b: &SU2Element) -> SU2Element {
    *a * *b * a.inverse() * b.inverse()
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Pair {
    pub a: SU2Element,
    pub b: SU2Element,
}

impl Pair {
    pub const IDENTITY: Pair = Pair {
        a: SU2Element::IDENTITY,
        b: SU2Element::IDENTITY,
    };

    pub fn new(a: SU2Element, b: SU2Element) -> Self {
        Pair { a, b }
    }

    pub fn commutator(&self) -> SU2Element {
        commutator(&self.a, &self.b)
    }

    /// Componentwise conjugation `k p k^{-1}`.
    pub fn conjugated_by(&self, k: &SU2Element) -> Pair {
        let ki = k.inverse();
        Pair {
            a: *k * self.a * ki,
            b: *k * self.b * ki,
        }
    }

    pub fn approx_eq(&self, other: &Pair) -> bool {
        self.a.approx_eq(&other.a) && self.b.approx_eq(&other.b)
    }

    pub fn distance(&self, other: &Pair) -> f64 {
        self.a.distance(&other.a).max(self.b.distance(&other.b))
    }
}

/// Normalized Haar sample: a uniform point on the unit 3-sphere of `(alpha, beta)`.
pub fn haar_sample<R: Rng + ?Sized>(rng: &mut R) -> SU2Element {
    loop {
        let q: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n2: f64 = q.iter().map(|v| v * v).sum();
        if n2 > 1e-300 {
            let n = n2.sqrt();
            return SU2Element {
                alpha: Complex64::new(q[0] / n, q[1] / n),
                beta: Complex64::new(q[2] / n, q[3] / n),
            };
        }
    }
}

pub fn haar_pair<R: Rng + ?Sized>(rng: &mut R) -> Pair {
    let a = haar_sample(rng);
    let b = haar_sample(rng);
    Pair { a, b }
}

/// Independent random streams keyed by one 64-bit seed.
///
/// Stream `k` is ChaCha8 seeded from `seed` with stream id `k`, so the output
/// of a stream never depends on how many other streams were drawn or on
/// which thread draws it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Streams {
    seed: u64,
}

impl Streams {
    pub fn new(seed: u64) -> Self {
        Streams { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// One letter of a word over `{A, A^-1, B, B^-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn evaluate(self, p: &Pair) -> SU2Element {
        match self {
            Letter::A => p.a,
            Letter::AInv => p.a.inverse(),
            Letter::B => p.b,
            Letter::BInv => p.b.inverse(),
        }
    }

    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];
}

/// A freely reduced word. Uppercase letters are generators, lowercase their
/// inverses: `"ABab"` is the commutator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn generator_a() -> Self {
        Word {
            letters: vec![Letter::A],
        }
    }

    pub fn generator_b() -> Self {
        Word {
            letters: vec![Letter::B],
        }
    }

    pub fn commutator() -> Self {
        Word::new([Letter::A, Letter::B, Letter::AInv, Letter::BInv])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Uniformly random reduced word of exactly `len` letters.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Word {
        let mut letters = Vec::with_capacity(len);
        while letters.len() < len {
            let l = Letter::ALL[rng.random_range(0..4)];
            if letters.last().map(|p: &Letter| p.inverse()) != Some(l) {
                letters.push(l);
            }
        }
        Word { letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            let c = match l {
                Letter::A => 'A',
                Letter::AInv => 'a',
                Letter::B => 'B',
                Letter::BInv => 'b',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `A`, `B`, their lowercase inverses, and `A^-1` / `A⁻¹` /
    /// `A'` suffix forms; whitespace is ignored.
    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let mut l = match c {
                'A' => Letter::A,
                'a' => Letter::AInv,
                'B' => Letter::B,
                'b' => Letter::BInv,
                c if c.is_whitespace() || c == '*' || c == '.' => continue,
                other => {
                    return Err(Error::domain(format!(
                        "unexpected character {other:?} in word {s:?}"
                    )))
                }
            };
            match chars.peek() {
                Some('\'') => {
                    chars.next();
                    l = l.inverse();
                }
                Some('⁻') => {
                    chars.next();
                    if chars.next() != Some('¹') {
                        return Err(Error::domain(format!("malformed inverse in {s:?}")));
                    }
                    l = l.inverse();
                }
                Some('^') => {
                    chars.next();
                    let (m, one) = (chars.next(), chars.next());
                    if m != Some('-') || one != Some('1') {
                        return Err(Error::domain(format!("malformed inverse in {s:?}")));
                    }
                    l = l.inverse();
                }
                _ => {}
            }
            letters.push(l);
        }
        Ok(Word::new(letters))
    }
}

/// Substitutes `a` for `A` and `b` for `B` and multiplies left to right.
pub fn evaluate_word(w: &Word, p: &Pair) -> SU2Element {
    let mut acc = SU2Element::IDENTITY;
    for (k, l) in w.letters().iter().enumerate() {
        acc = acc * l.evaluate(p);
        if (k + 1) % RENORMALIZE_EVERY == 0 {
            acc = acc.renormalized();
        }
    }
    acc
}
