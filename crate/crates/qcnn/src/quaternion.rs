//! Quaternion arithmetic over `f64`.
//!
//! A quaternion `q = q_R + q_I i + q_J j + q_K k` follows the Hamilton
//! multiplication rules `i² = j² = k² = −1`, `ij = k`, `jk = i`, `ki = j`.
//! Multiplication is associative and non-commutative (`ji = −k`).

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub r: f64,
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(r: f64, i: f64, j: f64, k: f64) -> Self {
        Self { r, i, j, k }
    }

    /// Embeds a real scalar as a pure-real quaternion.
    #[inline]
    pub const fn from_real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    /// Conjugate: negates the imaginary components.
    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.r, -self.i, -self.j, -self.k)
    }

    /// Componentwise scaling by a real factor.
    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.r * s, self.i * s, self.j * s, self.k * s)
    }

    /// Euclidean norm of the 4-vector.
    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.r * self.r + self.i * self.i + self.j * self.j + self.k * self.k
    }

    /// Plain 4-component dot product.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.r * other.r + self.i * other.i + self.j * other.j + self.k * other.k
    }

    /// Phase angle in `[0, π]`: the two-argument arctangent of the imaginary
    /// magnitude against the real part. The zero quaternion maps to `π`, so
    /// phase-gated activations treat it as blocked.
    #[inline]
    pub fn phase(self) -> f64 {
        let imag = (self.i * self.i + self.j * self.j + self.k * self.k).sqrt();
        if imag == 0.0 && self.r == 0.0 {
            return std::f64::consts::PI;
        }
        imag.atan2(self.r)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.r.is_finite() && self.i.is_finite() && self.j.is_finite() && self.k.is_finite()
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.r + rhs.r, self.i + rhs.i, self.j + rhs.j, self.k + rhs.k)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        self.r += rhs.r;
        self.i += rhs.i;
        self.j += rhs.j;
        self.k += rhs.k;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.r - rhs.r, self.i - rhs.i, self.j - rhs.j, self.k - rhs.k)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        self.r -= rhs.r;
        self.i -= rhs.i;
        self.j -= rhs.j;
        self.k -= rhs.k;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.r, -self.i, -self.j, -self.k)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (a, b, c, d) = (self.r, self.i, self.j, self.k);
        let (e, f, g, h) = (rhs.r, rhs.i, rhs.j, rhs.k);
        Self::new(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn q(r: f64, i: f64, j: f64, k: f64) -> Quaternion {
        Quaternion::new(r, i, j, k)
    }

    /// Left-multiplication matrix of `w`: `L(w) · vec(q) = vec(w q)`.
    fn left_matrix(w: Quaternion) -> [[f64; 4]; 4] {
        [
            [w.r, -w.i, -w.j, -w.k],
            [w.i, w.r, -w.k, w.j],
            [w.j, w.k, w.r, -w.i],
            [w.k, -w.j, w.i, w.r],
        ]
    }

    fn apply(m: &[[f64; 4]; 4], v: Quaternion) -> Quaternion {
        let x = [v.r, v.i, v.j, v.k];
        let mut out = [0.0; 4];
        for (row, o) in m.iter().zip(out.iter_mut()) {
            *o = row.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        }
        q(out[0], out[1], out[2], out[3])
    }

    fn rand_q(state: &mut u64) -> Quaternion {
        let mut next = || {
            *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((*state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        q(next(), next(), next(), next())
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::K, Quaternion::I);
        assert_eq!(Quaternion::K * Quaternion::I, Quaternion::J);
        assert_eq!(Quaternion::J * Quaternion::I, -Quaternion::K);
        assert_eq!(Quaternion::I * Quaternion::I, -Quaternion::ONE);
        assert_eq!(Quaternion::J * Quaternion::J, -Quaternion::ONE);
        assert_eq!(Quaternion::K * Quaternion::K, -Quaternion::ONE);
    }

    #[test]
    fn identity_is_neutral() {
        let a = q(0.3, -1.2, 2.5, 0.7);
        assert_eq!(a * Quaternion::ONE, a);
        assert_eq!(Quaternion::ONE * a, a);
    }

    #[test]
    fn conjugate_definition_and_involution() {
        assert_eq!(q(1.0, 2.0, 3.0, 4.0).conj(), q(1.0, -2.0, -3.0, -4.0));
        assert_eq!(q(5.0, 0.0, 0.0, 0.0).conj(), q(5.0, 0.0, 0.0, 0.0));
        let a = q(1.0, -1.0, 2.0, -2.0);
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn q_times_conj_is_norm_squared() {
        let mut state = 0xfeed;
        for _ in 0..100 {
            let a = rand_q(&mut state);
            let p = a * a.conj();
            assert!((p.r - a.norm_sq()).abs() < 1e-12);
            assert!(p.i.abs() < 1e-12 && p.j.abs() < 1e-12 && p.k.abs() < 1e-12);
        }
    }

    #[test]
    fn associativity_on_random_triples() {
        let mut state = 0xabcdef;
        for _ in 0..500 {
            let (a, b, c) = (rand_q(&mut state), rand_q(&mut state), rand_q(&mut state));
            let lhs = (a * b) * c;
            let rhs = a * (b * c);
            let d = lhs - rhs;
            assert!(d.norm() < 1e-12, "assoc violated: {d:?}");
        }
    }

    #[test]
    fn product_matches_left_matrix_representation() {
        let mut state = 0x1234;
        for _ in 0..200 {
            let (a, b) = (rand_q(&mut state), rand_q(&mut state));
            let direct = a * b;
            let via_matrix = apply(&left_matrix(a), b);
            assert!((direct - via_matrix).norm() < 1e-12);
        }
    }

    #[test]
    fn norm_is_multiplicative() {
        let mut state = 0x777;
        for _ in 0..200 {
            let (a, b) = (rand_q(&mut state), rand_q(&mut state));
            assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-10);
        }
    }

    #[test]
    fn add_scale_norm_basics() {
        assert_eq!(q(1.0, 2.0, 3.0, 4.0) + q(4.0, 3.0, 2.0, 1.0), q(5.0, 5.0, 5.0, 5.0));
        assert_eq!(q(1.0, -1.0, 1.0, -1.0).scale(2.0), q(2.0, -2.0, 2.0, -2.0));
        assert_eq!(q(1.0, 1.0, 1.0, 1.0).norm(), 2.0);
    }

    #[test]
    fn phase_known_values() {
        assert!((q(1.0, 1.0, 1.0, 1.0).phase() - PI / 3.0).abs() < 1e-15);
        assert_eq!(q(1.0, 0.0, 0.0, 0.0).phase(), 0.0);
        assert!((q(-1.0, 0.0, 0.0, 0.0).phase() - PI).abs() < 1e-15);
        assert_eq!(Quaternion::ZERO.phase(), PI);
        // pure imaginary sits exactly on the π/2 boundary
        assert!((q(0.0, 0.0, 3.0, 0.0).phase() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn phase_stays_in_range() {
        let mut state = 0x31337;
        for _ in 0..500 {
            let p = rand_q(&mut state).phase();
            assert!((0.0..=PI).contains(&p), "phase {p} out of range");
        }
    }
}
