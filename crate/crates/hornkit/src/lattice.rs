//! Scalars, plane lattice vectors and the small combinatorial primitives
//! shared by every other module.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{HornError, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Wire form `p/q`, or bare `p` for integers.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

/// `Some(n)` when `r` is an integer that fits in `i64`.
pub fn as_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer()).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec {
    pub a: i64,
    pub b: i64,
}

impl LatticeVec {
    pub const fn new(a: i64, b: i64) -> Self {
        LatticeVec { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn neg(self) -> Self {
        LatticeVec::new(-self.a, -self.b)
    }

    pub fn add(self, o: Self) -> Self {
        LatticeVec::new(self.a + o.a, self.b + o.b)
    }

    pub fn scale(self, k: i64) -> Self {
        LatticeVec::new(self.a * k, self.b * k)
    }

    /// `det(self, o)`, positive when `o` is counterclockwise of `self`.
    pub fn cross(self, o: Self) -> i64 {
        self.a * o.b - self.b * o.a
    }

    pub fn dot(self, o: Self) -> i64 {
        self.a * o.a + self.b * o.b
    }

    /// Component along axis `j` (0 or 1).
    pub fn get(self, j: usize) -> i64 {
        if j == 0 {
            self.a
        } else {
            self.b
        }
    }

    /// `<self, s>` for a rational point.
    pub fn pair(self, s: &RatVec2) -> Rat {
        &s.x1 * Int::from(self.a) + &s.x2 * Int::from(self.b)
    }

    /// Rotation by +90 degrees.
    pub fn rot90(self) -> Self {
        LatticeVec::new(-self.b, self.a)
    }
}

impl From<(i64, i64)> for LatticeVec {
    fn from((a, b): (i64, i64)) -> Self {
        LatticeVec::new(a, b)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A point with rational coordinates, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec2 {
    pub x1: Rat,
    pub x2: Rat,
}

impl RatVec2 {
    pub fn new(x1: Rat, x2: Rat) -> Self {
        RatVec2 { x1, x2 }
    }

    pub fn ints(a: i64, b: i64) -> Self {
        RatVec2::new(int(a), int(b))
    }

    pub fn zero() -> Self {
        RatVec2::ints(0, 0)
    }

    pub fn get(&self, j: usize) -> &Rat {
        if j == 0 {
            &self.x1
        } else {
            &self.x2
        }
    }

    pub fn add(&self, o: &RatVec2) -> RatVec2 {
        RatVec2::new(&self.x1 + &o.x1, &self.x2 + &o.x2)
    }

    pub fn sub(&self, o: &RatVec2) -> RatVec2 {
        RatVec2::new(&self.x1 - &o.x1, &self.x2 - &o.x2)
    }

    pub fn neg(&self) -> RatVec2 {
        RatVec2::new(-&self.x1, -&self.x2)
    }

    pub fn scale(&self, k: &Rat) -> RatVec2 {
        RatVec2::new(&self.x1 * k, &self.x2 * k)
    }

    /// Shift by an integer offset.
    pub fn offset(&self, da: i64, db: i64) -> RatVec2 {
        RatVec2::new(&self.x1 + int(da), &self.x2 + int(db))
    }

    /// Shift by `d * e_j`.
    pub fn step(&self, j: usize, d: i64) -> RatVec2 {
        if j == 0 {
            self.offset(d, 0)
        } else {
            self.offset(0, d)
        }
    }

    pub fn is_integral(&self) -> bool {
        self.x1.is_integer() && self.x2.is_integer()
    }

    /// Representative of the class mod Z^2, in `[0,1)^2`.
    pub fn frac(&self) -> RatVec2 {
        RatVec2::new(frac(&self.x1), frac(&self.x2))
    }

    /// `Some(self - o)` when the difference is integral.
    pub fn int_offset(&self, o: &RatVec2) -> Option<(i64, i64)> {
        let d = self.sub(o);
        Some((as_i64(&d.x1)?, as_i64(&d.x2)?))
    }
}

impl fmt::Display for RatVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", fmt_rat(&self.x1), fmt_rat(&self.x2))
    }
}

/// A 2x2 integer matrix stored by rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub r1: LatticeVec,
    pub r2: LatticeVec,
}

impl Mat2 {
    pub fn new(r1: LatticeVec, r2: LatticeVec) -> Self {
        Mat2 { r1, r2 }
    }

    pub fn identity() -> Self {
        Mat2::new(LatticeVec::new(1, 0), LatticeVec::new(0, 1))
    }

    pub fn det(&self) -> i64 {
        self.r1.cross(self.r2)
    }

    pub fn row(&self, i: usize) -> LatticeVec {
        if i == 0 {
            self.r1
        } else {
            self.r2
        }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let c1 = LatticeVec::new(o.r1.a, o.r2.a);
        let c2 = LatticeVec::new(o.r1.b, o.r2.b);
        Mat2::new(LatticeVec::new(self.r1.dot(c1), self.r1.dot(c2)), LatticeVec::new(self.r2.dot(c1), self.r2.dot(c2)))
    }

    /// `self * v` for an integer column vector.
    pub fn apply(&self, v: LatticeVec) -> LatticeVec {
        LatticeVec::new(self.r1.dot(v), self.r2.dot(v))
    }

    /// `self^{-1} * v` over the rationals.
    pub fn solve(&self, v: &RatVec2) -> Result<RatVec2> {
        let d = self.det();
        if d == 0 {
            return Err(HornError::Singular);
        }
        let d = int(d);
        let (a, b, c, e) = (int(self.r1.a), int(self.r1.b), int(self.r2.a), int(self.r2.b));
        let x1 = (&e * &v.x1 - &b * &v.x2) / &d;
        let x2 = (&a * &v.x2 - &c * &v.x1) / &d;
        Ok(RatVec2::new(x1, x2))
    }

    /// Columns of `self^{-1}`.
    pub fn inverse_columns(&self) -> Result<[RatVec2; 2]> {
        Ok([self.solve(&RatVec2::ints(1, 0))?, self.solve(&RatVec2::ints(0, 1))?])
    }
}

/// Primitive direction and lattice length: `v = g * d`.
pub fn primitive(v: LatticeVec) -> Result<(LatticeVec, i64)> {
    if v.is_zero() {
        return Err(HornError::ZeroVector);
    }
    let g = v.a.gcd(&v.b);
    Ok((LatticeVec::new(v.a / g, v.b / g), g))
}

pub fn opposite_open_quadrants(u: LatticeVec, v: LatticeVec) -> bool {
    u.a != 0 && u.b != 0 && v.a != 0 && v.b != 0 && u.a.signum() == -v.a.signum() && u.b.signum() == -v.b.signum()
}

/// The index `nu(u, v)`.
pub fn index_nu(u: LatticeVec, v: LatticeVec) -> i64 {
    if !opposite_open_quadrants(u, v) {
        return 0;
    }
    (u.a * v.b).abs().min((u.b * v.a).abs())
}

fn upper_half(v: LatticeVec) -> bool {
    v.b > 0 || (v.b == 0 && v.a > 0)
}

/// Compare polar angles in `[0, 2pi)` measured from the positive x1-axis.
pub fn cmp_angle(u: LatticeVec, v: LatticeVec) -> Ordering {
    match (upper_half(u), upper_half(v)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => 0.cmp(&u.cross(v)),
    }
}

/// Counterclockwise order of the inputs, as indices.
pub fn ccw_sort(vs: &[LatticeVec]) -> Result<Vec<usize>> {
    for (i, v) in vs.iter().enumerate() {
        if v.is_zero() {
            return Err(HornError::ZeroVector);
        }
        for (j, w) in vs.iter().enumerate().skip(i + 1) {
            if v.cross(*w) == 0 && v.dot(*w) > 0 {
                return Err(HornError::DuplicateDirection(i, j));
            }
        }
    }
    let mut idx: Vec<usize> = (0..vs.len()).collect();
    idx.sort_by(|&i, &j| cmp_angle(vs[i], vs[j]));
    Ok(idx)
}

/// Smith normal form `u * m * v = diag(d1, d2)` with `d1 | d2` and `d1, d2 >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Mat2,
    pub v: Mat2,
    pub d1: i64,
    pub d2: i64,
}

pub fn smith_2x2(m: Mat2) -> Smith {
    let mut a = [[m.r1.a, m.r1.b], [m.r2.a, m.r2.b]];
    let mut u = [[1i64, 0], [0, 1]];
    let mut v = [[1i64, 0], [0, 1]];
    let swap_rows = |x: &mut [[i64; 2]; 2]| x.swap(0, 1);
    let swap_cols = |x: &mut [[i64; 2]; 2]| {
        for r in x.iter_mut() {
            r.swap(0, 1);
        }
    };
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..2 {
            for j in 0..2 {
                if a[i][j] != 0 && best.is_none_or(|(p, q)| a[i][j].abs() < a[p][q].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi == 1 {
            swap_rows(&mut a);
            swap_rows(&mut u);
        }
        if pj == 1 {
            swap_cols(&mut a);
            swap_cols(&mut v);
        }
        let p = a[0][0];
        let q = Integer::div_floor(&a[1][0], &p);
        for c in 0..2 {
            a[1][c] -= q * a[0][c];
            u[1][c] -= q * u[0][c];
        }
        let q = Integer::div_floor(&a[0][1], &p);
        for r in 0..2 {
            a[r][1] -= q * a[r][0];
            v[r][1] -= q * v[r][0];
        }
        if a[1][0] != 0 || a[0][1] != 0 {
            continue;
        }
        if a[1][1] % p != 0 {
            for c in 0..2 {
                a[0][c] += a[1][c];
                u[0][c] += u[1][c];
            }
            continue;
        }
        break;
    }
    for r in 0..2 {
        if a[r][r] < 0 {
            for c in 0..2 {
                a[r][c] = -a[r][c];
                u[r][c] = -u[r][c];
            }
        }
    }
    let to = |x: [[i64; 2]; 2]| Mat2::new(LatticeVec::new(x[0][0], x[0][1]), LatticeVec::new(x[1][0], x[1][1]));
    Smith { u: to(u), v: to(v), d1: a[0][0], d2: a[1][1] }
}

impl Smith {
    /// Index in `0..d1*d2` of the class of `k` in `Z^2 / m Z^2`.
    pub fn class_of(&self, k: LatticeVec) -> usize {
        let w = self.u.apply(k);
        let r1 = if self.d1 == 0 { w.a } else { w.a.rem_euclid(self.d1) };
        let r2 = if self.d2 == 0 { w.b } else { w.b.rem_euclid(self.d2) };
        (r1 * self.d2.max(1) + r2) as usize
    }
}
