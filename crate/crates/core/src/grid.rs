/// Uniform cell-centred grid on `[0, length]`.
///
/// Point `i` sits at `(i + 1/2)·dx` with `dx = length / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    length: f64,
}

impl Grid {
    pub fn new(n: usize, length: f64) -> crate::Result<Self> {
        if n == 0 || !(length.is_finite() && length > 0.0) {
            return Err(crate::Error::NonUniformGrid);
        }
        Ok(Self { n, length })
    }

    /// Unit interval with `n` cells.
    pub fn unit(n: usize) -> Self {
        Self { n, length: 1.0 }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.x(i)).collect()
    }
}
