//! Closed-form algebra of 2×2 symmetric operators.
//!
//! A symmetric operator is stored as its half-trace split:
//!
//! ```text
//! [[t/2 + p,  q     ],
//!  [q,        t/2 - p]]
//! ```
//!
//! so that the traceless part is the pair `(p, q)`, identified with the complex
//! number `p + iq`. Under the metric `(A, B) = tr(AB)/2` the traceless norm is
//! `|p + iq|`, and the eigenvalues are `t/2 ∓ |p + iq|`.
//!
//! Linear symbols `(R²)* → S₀²R²` are 2×2 real matrices `M` mapping a covector
//! `ξ` to `(p, q) = Mξ`. They also have a complex form [`ComplexRep`] in which
//! the frame-rotation action is diagonal: the first component turns with
//! `e^{iθ}` and the second with `e^{3iθ}`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduce an angle to the line-angle range `[0, π)`.
pub fn normalize_line_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(PI);
    // rem_euclid can round up to exactly PI for tiny negative inputs
    if r >= PI {
        0.0
    } else {
        r
    }
}

/// Difference `b - a` of two line angles, reduced to `(-π/2, π/2]`.
pub fn line_angle_delta(a: f64, b: f64) -> f64 {
    let d = (b - a).rem_euclid(PI);
    if d > FRAC_PI_2 {
        d - PI
    } else {
        d
    }
}

/// A symmetric 2×2 operator in trace / traceless coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sym2Value {
    /// Full trace.
    pub t: f64,
    pub p: f64,
    pub q: f64,
}

impl Sym2Value {
    pub const fn new(t: f64, p: f64, q: f64) -> Self {
        Self { t, p, q }
    }

    pub const fn traceless(p: f64, q: f64) -> Self {
        Self { t: 0.0, p, q }
    }

    /// Build from the entries of `[[a, b], [b, c]]`.
    pub fn from_matrix(a: f64, b: f64, c: f64) -> Self {
        Self {
            t: a + c,
            p: 0.5 * (a - c),
            q: b,
        }
    }

    /// Row-major entries of the full matrix.
    pub fn to_matrix(&self) -> [[f64; 2]; 2] {
        let h = 0.5 * self.t;
        [[h + self.p, self.q], [self.q, h - self.p]]
    }

    /// Half the trace, the scalar part `s_R`.
    pub fn half_trace(&self) -> f64 {
        0.5 * self.t
    }

    /// The traceless part.
    pub fn traceless_part(&self) -> Sym2Value {
        Sym2Value::traceless(self.p, self.q)
    }

    /// `‖σ₀‖ = √(p² + q²)`.
    pub fn traceless_norm(&self) -> f64 {
        self.p.hypot(self.q)
    }

    /// `(A, B) = tr(AB)/2`.
    pub fn metric(&self, other: &Sym2Value) -> f64 {
        self.p * other.p + self.q * other.q + 0.25 * self.t * other.t
    }

    /// The traceless part as the complex number `p + iq`.
    pub fn traceless_complex(&self) -> Complex64 {
        Complex64::new(self.p, self.q)
    }

    /// Whether the two eigenvalues coincide exactly.
    pub fn is_multiple(&self) -> bool {
        self.p == 0.0 && self.q == 0.0
    }

    /// Eigenvalues `(λ₁, λ₂)` with `λ₁ ≤ λ₂`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let h = 0.5 * self.t;
        let r = self.traceless_norm();
        (h - r, h + r)
    }

    /// Line angles in `[0, π)` of the eigenvectors for `λ₁` and `λ₂`.
    ///
    /// The `λ₂` line sits at `arg(p + iq)/2`; the `λ₁` line is perpendicular.
    pub fn eigenline_angles(&self) -> Result<(f64, f64)> {
        if self.is_multiple() {
            return Err(Error::MultiplePoint);
        }
        let theta2 = normalize_line_angle(0.5 * self.q.atan2(self.p));
        let theta1 = normalize_line_angle(theta2 + FRAC_PI_2);
        Ok((theta1, theta2))
    }

    /// `R_θ S R_θᵀ`: keeps the trace and turns `(p, q)` by `2θ`.
    pub fn rotate_conjugate(&self, theta: f64) -> Sym2Value {
        let (s, c) = (2.0 * theta).sin_cos();
        Sym2Value {
            t: self.t,
            p: c * self.p - s * self.q,
            q: s * self.p + c * self.q,
        }
    }

    /// Matrix-vector product with the full matrix.
    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let m = self.to_matrix();
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }
}

/// A linear symbol `ξ ↦ (p, q) = Mξ` stored as the matrix
/// `[[m11, m12], [m21, m22]]` with rows `(a₁, b₁)` and `(a₂, b₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearSymbol2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl LinearSymbol2 {
    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub const fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    /// Traceless value `σ(ξ)`.
    pub fn eval(&self, xi: [f64; 2]) -> Sym2Value {
        Sym2Value::traceless(self.m11 * xi[0] + self.m12 * xi[1], self.m21 * xi[0] + self.m22 * xi[1])
    }

    /// `f = a₁b₂ − a₂b₁`.
    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m21 * self.m12
    }

    pub fn frobenius_norm(&self) -> f64 {
        (self.m11 * self.m11 + self.m12 * self.m12 + self.m21 * self.m21 + self.m22 * self.m22).sqrt()
    }

    /// Unit covector of least singular value, as a line angle in `[0, π)`.
    ///
    /// This is the right singular direction of the smallest singular value,
    /// obtained in closed form from the eigenlines of `MᵀM`.
    pub fn least_singular_angle(&self) -> Result<f64> {
        let norm = self.frobenius_norm();
        if norm <= f64::MIN_POSITIVE.sqrt() {
            return Err(Error::RankZero);
        }
        let (a, b, c, d) = (self.m11 / norm, self.m12 / norm, self.m21 / norm, self.m22 / norm);
        let gram = Sym2Value::from_matrix(a * a + c * c, a * b + c * d, b * b + d * d);
        match gram.eigenline_angles() {
            Ok((theta1, _)) => Ok(theta1),
            // MᵀM is scalar: M is a multiple of an orthogonal matrix, no kernel direction
            Err(_) => Ok(0.0),
        }
    }

    /// Complex form of this symbol.
    pub fn to_rep(&self) -> ComplexRep {
        // columns: ξ₁ ↦ p + iq, ξ₂ ↦ r + is
        let col1 = Complex64::new(self.m11, self.m21);
        let col2 = Complex64::new(self.m12, self.m22);
        let i = Complex64::i();
        ComplexRep {
            u: (col1 - i * col2) * FRAC_1_SQRT_2,
            w: (col1 + i * col2) * FRAC_1_SQRT_2,
        }
    }

    /// `R σ(Rᵀ ξ) Rᵀ`: the symbol pushed forward by a rotation of angle `θ`.
    pub fn rotate(&self, theta: f64) -> LinearSymbol2 {
        let (s, c) = theta.sin_cos();
        // Rᵀ e₁ = (c, −s), Rᵀ e₂ = (s, c)
        let col1 = self.eval([c, -s]).rotate_conjugate(theta);
        let col2 = self.eval([s, c]).rotate_conjugate(theta);
        LinearSymbol2::new(col1.p, col2.p, col1.q, col2.q)
    }
}

/// Complex coordinates `(u, w)` of a linear symbol: `u` is the component
/// turning like a vector, `w` the component turning like a triple tensor
/// product.
///
/// The symbol acts on `ζ = ξ₁ + iξ₂` by `p + iq = (uζ + w ζ̄)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexRep {
    pub u: Complex64,
    pub w: Complex64,
}

/// Invertibility verdict of a linear symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invertibility {
    pub invertible: bool,
    /// `|u|² − |w|²`; the coefficient matrix has determinant `margin / 2`.
    pub margin: f64,
}

impl ComplexRep {
    pub const fn new(u: Complex64, w: Complex64) -> Self {
        Self { u, w }
    }

    /// Coefficient matrix: column `ξ₁` is `(u + w)/√2`, column `ξ₂` is
    /// `i(u − w)/√2`, read as `p + iq` and `r + is`.
    pub fn to_matrix(&self) -> LinearSymbol2 {
        let col1 = (self.u + self.w) * FRAC_1_SQRT_2;
        let col2 = Complex64::i() * (self.u - self.w) * FRAC_1_SQRT_2;
        LinearSymbol2::new(col1.re, col2.re, col1.im, col2.im)
    }

    /// Frame-rotation action `(e^{iθ}u, e^{3iθ}w)`.
    pub fn rotate(&self, theta: f64) -> ComplexRep {
        ComplexRep {
            u: self.u * Complex64::from_polar(1.0, theta),
            w: self.w * Complex64::from_polar(1.0, 3.0 * theta),
        }
    }

    /// Value `p + iq` at the covector `ζ = ξ₁ + iξ₂`.
    pub fn eval(&self, zeta: Complex64) -> Complex64 {
        (self.u * zeta + self.w * zeta.conj()) * FRAC_1_SQRT_2
    }

    /// The symbol is invertible iff `|u|² ≠ |w|²`. The comparison is made up
    /// to a relative `1e-14` so that unit-modulus inputs land on the
    /// degenerate side.
    pub fn invertibility(&self) -> Invertibility {
        let nu = self.u.norm_sqr();
        let nw = self.w.norm_sqr();
        let margin = nu - nw;
        Invertibility {
            invertible: margin.abs() > 1e-14 * (nu + nw),
            margin,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.invertibility().invertible
    }
}
