//! Fixed-size 2x2 / 3x3 matrices and vectors.
//!
//! Matrices are plain value types stored row-major. Rotation and symmetry
//! are runtime-checked predicates rather than distinct types, because the
//! solvers construct matrices whose properties are the thing under test.

use std::ops::{Add, Mul, Neg, Sub};

/// Default relative tolerance for the predicates in this crate.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        Vec3 {
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3 {
            x: self.x * s,
            y: self.y * s,
            z: self.z * s,
        }
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

/// 2x2 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub m: [[f64; 2]; 2],
}

/// 3x3 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3 {
    pub m: [[f64; 3]; 3],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        m: [[1.0, 0.0], [0.0, 1.0]],
    };
    pub const ZERO: Mat2 = Mat2 { m: [[0.0; 2]; 2] };

    pub fn new(m: [[f64; 2]; 2]) -> Self {
        Mat2 { m }
    }

    pub fn diag(a: f64, b: f64) -> Self {
        Mat2::new([[a, 0.0], [0.0, b]])
    }

    /// Counterclockwise rotation by `theta` radians.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Mat2::new([[c, -s], [s, c]])
    }

    pub fn outer(a: Vec2, b: Vec2) -> Self {
        Mat2::new([[a.x * b.x, a.x * b.y], [a.y * b.x, a.y * b.y]])
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new([[self.m[0][0], self.m[1][0]], [self.m[0][1], self.m[1][1]]])
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        let mut r = *self;
        for row in r.m.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        r
    }

    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, e| acc.max(e.abs()))
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }

    /// True iff `m^T m = I` and `det(m) = 1`, each within `tol` scaled by the
    /// matrix magnitude.
    pub fn is_rotation(&self, tol: f64) -> bool {
        let s = tol * (1.0 + self.max_abs());
        let g = self.transpose() * *self;
        let mut defect = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let id = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((g.m[i][j] - id).abs());
            }
        }
        defect <= s && (self.det() - 1.0).abs() <= s
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.m[0][1] - self.m[1][0]).abs() <= tol * (1.0 + self.max_abs())
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|e| e.is_finite())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let mut r = Mat2::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                r.m[i][j] = self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j];
            }
        }
        r
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let mut r = self;
        for i in 0..2 {
            for j in 0..2 {
                r.m[i][j] += o.m[i][j];
            }
        }
        r
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        let mut r = self;
        for i in 0..2 {
            for j in 0..2 {
                r.m[i][j] -= o.m[i][j];
            }
        }
        r
    }
}

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3 {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };
    pub const ZERO: Mat3 = Mat3 { m: [[0.0; 3]; 3] };

    pub fn new(m: [[f64; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub fn diag(a: f64, b: f64, c: f64) -> Self {
        Mat3::new([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    pub fn outer(a: Vec3, b: Vec3) -> Self {
        Mat3::new([
            [a.x * b.x, a.x * b.y, a.x * b.z],
            [a.y * b.x, a.y * b.y, a.y * b.z],
            [a.z * b.x, a.z * b.y, a.z * b.z],
        ])
    }

    pub fn from_columns(c0: Vec3, c1: Vec3, c2: Vec3) -> Self {
        Mat3::new([[c0.x, c1.x, c2.x], [c0.y, c1.y, c2.y], [c0.z, c1.z, c2.z]])
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.m;
        Mat3::new([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn scale(&self, s: f64) -> Mat3 {
        let mut r = *self;
        for row in r.m.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        r
    }

    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, e| acc.max(e.abs()))
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    /// Solve `self * x = b` by Cramer's rule. Returns `None` when the
    /// determinant vanishes.
    pub fn solve(&self, b: Vec3) -> Option<Vec3> {
        let d = self.det();
        if d == 0.0 {
            return None;
        }
        let col = |j: usize, r: Vec3| {
            let mut m = *self;
            m.m[0][j] = r.x;
            m.m[1][j] = r.y;
            m.m[2][j] = r.z;
            m.det()
        };
        Some(Vec3::new(col(0, b) / d, col(1, b) / d, col(2, b) / d))
    }

    /// True iff `m^T m = I` and `det(m) = 1`, each within `tol` scaled by the
    /// matrix magnitude.
    pub fn is_rotation(&self, tol: f64) -> bool {
        let s = tol * (1.0 + self.max_abs());
        let g = self.transpose() * *self;
        let mut defect = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((g.m[i][j] - id).abs());
            }
        }
        defect <= s && (self.det() - 1.0).abs() <= s
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.symmetry_defect() <= tol * (1.0 + self.max_abs())
    }

    /// Largest `|m_ij - m_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let m = &self.m;
        (m[0][1] - m[1][0])
            .abs()
            .max((m[0][2] - m[2][0]).abs())
            .max((m[1][2] - m[2][1]).abs())
    }

    /// `(m + m^T) / 2`.
    pub fn symmetrized(&self) -> Mat3 {
        (*self + self.transpose()).scale(0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|e| e.is_finite())
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        let mut r = Mat3::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] =
                    self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j] + self.m[i][2] * o.m[2][j];
            }
        }
        r
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, o: Mat3) -> Mat3 {
        let mut r = self;
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] += o.m[i][j];
            }
        }
        r
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, o: Mat3) -> Mat3 {
        let mut r = self;
        for i in 0..3 {
            for j in 0..3 {
                r.m[i][j] -= o.m[i][j];
            }
        }
        r
    }
}

impl Neg for Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_m() -> Mat3 {
        // the worked nonsymmetric example used throughout the crate tests
        Mat3::new([[-2.0, -1.0, 0.0], [-1.0, -2.0, -1.0], [0.0, 1.0, 2.0]])
    }

    #[test]
    fn trace_cases() {
        assert_eq!(Mat3::IDENTITY.trace(), 3.0);
        assert_eq!(sample_m().trace(), -2.0);
        assert_eq!(Mat3::ZERO.trace(), 0.0);
    }

    #[test]
    fn rotation_predicate() {
        assert!(Mat3::IDENTITY.is_rotation(DEFAULT_TOL));
        assert!(Mat3::diag(-1.0, -1.0, 1.0).is_rotation(DEFAULT_TOL));
        // reflection: det = -1
        assert!(!Mat3::diag(1.0, 1.0, -1.0).is_rotation(DEFAULT_TOL));
    }

    #[test]
    fn symmetry_predicate() {
        assert!(Mat2::IDENTITY.is_symmetric(DEFAULT_TOL));
        assert!(!Mat2::new([[0.0, 1.0], [-1.0, 0.0]]).is_symmetric(DEFAULT_TOL));
        let um = Mat3::new([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]]);
        assert!(um.is_symmetric(DEFAULT_TOL));
        assert!(!sample_m().is_symmetric(DEFAULT_TOL));
    }

    #[test]
    fn cross_and_det() {
        let c = Vec3::new(1.0, 0.0, 0.0).cross(Vec3::new(0.0, 1.0, 0.0));
        assert_eq!(c, Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(Mat3::diag(2.0, 3.0, 4.0).det(), 24.0);
    }

    #[test]
    fn cramer_solve() {
        let a = Mat3::new([[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]]);
        let b = Vec3::new(1.0, 2.0, 3.0);
        let x = a.solve(b).unwrap();
        let r = a.mul_vec(x) - b;
        assert!(r.norm() < 1e-12);
    }
}
