use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A point or displacement in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Radial unit vector `e_r(θ) = (cos θ, sin θ)`.
    #[inline]
    pub fn radial(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, s)
    }

    /// Angular unit vector `e_θ(θ) = (−sin θ, cos θ)`.
    #[inline]
    pub fn angular(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(-s, c)
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// The bracket `[self, other]`: determinant of the matrix with columns `self`, `other`.
    #[inline]
    pub fn bracket(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self * rhs.x, self * rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_is_positively_oriented() {
        for &t in &[0.0, 0.3, 2.0, -1.1] {
            let b = Vec2::radial(t).bracket(Vec2::angular(t));
            assert!((b - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let a = Vec2::new(1.5, -2.0);
        let b = Vec2::new(0.25, 3.0);
        assert_eq!(a.bracket(b), -b.bracket(a));
        assert_eq!(a.bracket(a), 0.0);
    }
}
