use std::ops::{Add, Div, Mul, Neg, Sub};

/// Second-order Taylor jet: a value with its first and second derivative
/// along one spatial coordinate.
///
/// Used to push the closed-form derivatives of the material profile through
/// the coefficient algebra without numerical differencing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(v: f64, d1: f64, d2: f64) -> Self {
        Self { v, d1, d2 }
    }

    pub const fn constant(v: f64) -> Self {
        Self { v, d1: 0.0, d2: 0.0 }
    }

    /// Derivative of the jet. The top order is unknown afterwards and is set
    /// to NaN so that any use of it shows up downstream.
    pub fn derivative(self) -> Self {
        Self { v: self.d1, d1: self.d2, d2: f64::NAN }
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        let d1 = self.d1 / (2.0 * s);
        // (f^{1/2})'' = f''/(2 s) - f'^2 / (4 s^3)
        let d2 = self.d2 / (2.0 * s) - self.d1 * self.d1 / (4.0 * s * s * s);
        Self { v: s, d1, d2 }
    }

    pub fn scale(self, k: f64) -> Self {
        Self { v: k * self.v, d1: k * self.d1, d2: k * self.d2 }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.v, -self.d1, -self.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let q = self.v / o.v;
        let d1 = (self.d1 - q * o.d1) / o.v;
        let d2 = (self.d2 - 2.0 * d1 * o.d1 - q * o.d2) / o.v;
        Jet::new(q, d1, d2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // f(x) = x^2 + 1 at x = 2, g(x) = sin x at x = 2
    fn f() -> Jet {
        Jet::new(5.0, 4.0, 2.0)
    }
    fn g() -> Jet {
        let x: f64 = 2.0;
        Jet::new(x.sin(), x.cos(), -x.sin())
    }

    fn close(a: Jet, b: (f64, f64, f64)) {
        assert!((a.v - b.0).abs() < 1e-13, "{a:?} vs {b:?}");
        assert!((a.d1 - b.1).abs() < 1e-13, "{a:?} vs {b:?}");
        assert!((a.d2 - b.2).abs() < 1e-13, "{a:?} vs {b:?}");
    }

    #[test]
    fn quotient_matches_hand_derivative() {
        // h = sin x / (x^2 + 1)
        let x: f64 = 2.0;
        let (s, c) = (x.sin(), x.cos());
        let den = x * x + 1.0;
        let h1 = (c * den - s * 2.0 * x) / (den * den);
        // second derivative by symbolic expansion
        let h2 = (-s * den - 2.0 * s) / (den * den)
            - 2.0 * (c * den - 2.0 * x * s) * 2.0 * x / (den * den * den);
        close(g() / f(), (s / den, h1, h2));
    }

    #[test]
    fn sqrt_and_product() {
        let x: f64 = 2.0;
        let r = f().sqrt();
        let s = (x * x + 1.0).sqrt();
        close(r, (s, x / s, 1.0 / s - x * x / (s * s * s)));
        let p = f() * g();
        close(
            p,
            (5.0 * x.sin(), 4.0 * x.sin() + 5.0 * x.cos(), 2.0 * x.sin() + 8.0 * x.cos() - 5.0 * x.sin()),
        );
    }

    #[test]
    fn derivative_shifts_orders() {
        let d = f().derivative();
        assert_eq!((d.v, d.d1), (4.0, 2.0));
        assert!(d.d2.is_nan());
    }
}
