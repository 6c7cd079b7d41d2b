use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::framework::Point;
use crate::scalar::Scalar;

/// The affine function `(x, y) ↦ a·x + b·y + c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineFunction<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> AffineFunction<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        AffineFunction { a, b, c }
    }

    pub fn zero() -> Self {
        AffineFunction::new(T::zero(), T::zero(), T::zero())
    }

    pub fn constant(c: T) -> Self {
        AffineFunction::new(T::zero(), T::zero(), c)
    }

    /// `x ↦ det(p - q, p - x)`, which vanishes exactly on the line `pq`.
    pub fn edge_function(p: &Point<T>, q: &Point<T>) -> Self {
        let u = p.sub(q);
        AffineFunction::new(u.y.clone(), -u.x.clone(), u.det(p))
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.a.clone() * x.clone() + self.b.clone() * y.clone() + self.c.clone()
    }

    pub fn eval_at(&self, p: &Point<T>) -> T {
        self.eval(&p.x, &p.y)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_negligible() && self.b.is_negligible() && self.c.is_negligible()
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_negligible() && self.b.is_negligible()
    }

    pub fn scale(&self, k: &T) -> Self {
        AffineFunction::new(
            self.a.clone() * k.clone(),
            self.b.clone() * k.clone(),
            self.c.clone() * k.clone(),
        )
    }

    pub fn coefficients(&self) -> [T; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    /// Whether the function vanishes at both `p` and `q` (hence on their line).
    pub fn vanishes_on_segment(&self, p: &Point<T>, q: &Point<T>) -> bool {
        self.eval_at(p).is_negligible() && self.eval_at(q).is_negligible()
    }

    /// If `self = k · edge_function(p, q)` for some `k`, returns `k`.
    /// `p` and `q` must be distinct.
    pub fn edge_multiple(&self, p: &Point<T>, q: &Point<T>) -> Option<T> {
        let e = AffineFunction::edge_function(p, q);
        let k = if !e.a.is_negligible() {
            self.a.clone() / e.a.clone()
        } else {
            self.b.clone() / e.b.clone()
        };
        (self.clone() - e.scale(&k)).is_zero().then_some(k)
    }
}

impl<T: Scalar> Add for AffineFunction<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        AffineFunction::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }
}

impl<T: Scalar> Sub for AffineFunction<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        AffineFunction::new(self.a - o.a, self.b - o.b, self.c - o.c)
    }
}

impl<T: Scalar> Neg for AffineFunction<T> {
    type Output = Self;
    fn neg(self) -> Self {
        AffineFunction::new(-self.a, -self.b, -self.c)
    }
}

/// `a b c`, space separated.
impl<T: Scalar> fmt::Display for AffineFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}
