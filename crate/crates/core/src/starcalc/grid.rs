use num_complex::Complex64;

use super::StarError;

/// Uniform periodic grid: `x_i = x0 + i (x1 - x0)/nx`, `i < nx` (end point
/// excluded), likewise in p.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct PhaseGrid {
    pub x0: f64,
    pub x1: f64,
    pub nx: usize,
    pub p0: f64,
    pub p1: f64,
    pub np: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    P,
}

impl PhaseGrid {
    pub fn new(x: (f64, f64), nx: usize, p: (f64, f64), np: usize) -> Result<Self, StarError> {
        for n in [nx, np] {
            if !n.is_power_of_two() || n < 64 {
                return Err(StarError::BadGrid(format!("size {n} is not a power of two >= 64")));
            }
        }
        if !(x.1 > x.0) || !(p.1 > p.0) {
            return Err(StarError::BadGrid("empty range".into()));
        }
        Ok(PhaseGrid {
            x0: x.0,
            x1: x.1,
            nx,
            p0: p.0,
            p1: p.1,
            np,
        })
    }

    /// [-8, 8]^2 at 256^2.
    pub fn default_square() -> Self {
        PhaseGrid::new((-8.0, 8.0), 256, (-8.0, 8.0), 256).expect("valid")
    }

    pub fn dx(&self) -> f64 {
        (self.x1 - self.x0) / self.nx as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p1 - self.p0) / self.np as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx()
    }

    pub fn p(&self, j: usize) -> f64 {
        self.p0 + j as f64 * self.dp()
    }

    pub fn len(&self) -> usize {
        self.nx * self.np
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n(&self, axis: Axis) -> usize {
        match axis {
            Axis::X => self.nx,
            Axis::P => self.np,
        }
    }

    pub fn spacing(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.dx(),
            Axis::P => self.dp(),
        }
    }
}

/// Signed angular wavenumber of FFT bin `j` on an axis of `n` points spacing `h`.
pub fn wavenumber(j: usize, n: usize, h: f64) -> f64 {
    let s = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
    2.0 * std::f64::consts::PI * s / (n as f64 * h)
}

/// Complex samples on a [`PhaseGrid`], row-major with x as the slow index.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseField {
    pub grid: PhaseGrid,
    pub data: Vec<Complex64>,
}

impl PhaseField {
    pub fn zeros(grid: PhaseGrid) -> Self {
        PhaseField {
            grid,
            data: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_fn<F: Fn(f64, f64) -> Complex64>(grid: PhaseGrid, f: F) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for i in 0..grid.nx {
            let x = grid.x(i);
            for j in 0..grid.np {
                data.push(f(x, grid.p(j)));
            }
        }
        PhaseField { grid, data }
    }

    pub fn from_real_fn<F: Fn(f64, f64) -> f64>(grid: PhaseGrid, f: F) -> Self {
        Self::from_fn(grid, |x, p| Complex64::new(f(x, p), 0.0))
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.grid.np + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest |value| over grid points with x in `[xa, xb]` and p in `[pa, pb]`.
    pub fn max_abs_in(&self, xr: (f64, f64), pr: (f64, f64)) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.grid.nx {
            let x = self.grid.x(i);
            if x < xr.0 || x > xr.1 {
                continue;
            }
            for j in 0..self.grid.np {
                let p = self.grid.p(j);
                if p >= pr.0 && p <= pr.1 {
                    m = m.max(self.at(i, j).norm());
                }
            }
        }
        m
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Self {
        PhaseField {
            grid: self.grid,
            data: self.data.iter().map(|v| f(*v)).collect(),
        }
    }

    /// Pointwise `f(x, p, value)`.
    pub fn map_xp<F: Fn(f64, f64, Complex64) -> Complex64>(&self, f: F) -> Self {
        let g = self.grid;
        let mut data = Vec::with_capacity(g.len());
        for i in 0..g.nx {
            let x = g.x(i);
            for j in 0..g.np {
                data.push(f(x, g.p(j), self.data[i * g.np + j]));
            }
        }
        PhaseField { grid: g, data }
    }

    fn zip<F: Fn(Complex64, Complex64) -> Complex64>(&self, o: &Self, f: F) -> Self {
        assert_eq!(self.grid, o.grid, "grid mismatch");
        PhaseField {
            grid: self.grid,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a * b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|v| v * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }

    pub fn re(&self) -> Self {
        self.map(|v| Complex64::new(v.re, 0.0))
    }

    pub fn im(&self) -> Self {
        self.map(|v| Complex64::new(v.im, 0.0))
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.sub(o).max_abs()
    }

    /// Largest |value| on the two edges of `axis`, relative to the global max.
    pub fn edge_ratio(&self, axis: Axis) -> f64 {
        let g = self.grid;
        let max = self.max_abs();
        if max == 0.0 {
            return 0.0;
        }
        let mut e: f64 = 0.0;
        match axis {
            Axis::X => {
                for j in 0..g.np {
                    e = e.max(self.at(0, j).norm()).max(self.at(g.nx - 1, j).norm());
                }
            }
            Axis::P => {
                for i in 0..g.nx {
                    e = e.max(self.at(i, 0).norm()).max(self.at(i, g.np - 1).norm());
                }
            }
        }
        e / max
    }

    /// True when every sample is the same along `axis`.
    pub fn constant_along(&self, axis: Axis) -> bool {
        let g = self.grid;
        match axis {
            Axis::X => (1..g.nx).all(|i| (0..g.np).all(|j| self.at(i, j) == self.at(0, j))),
            Axis::P => (0..g.nx).all(|i| (1..g.np).all(|j| self.at(i, j) == self.at(i, 0))),
        }
    }

    /// Boundary-decay flag: edges below `1e-12` of the maximum in both directions.
    pub fn decays(&self) -> bool {
        self.edge_ratio(Axis::X) <= 1e-12 && self.edge_ratio(Axis::P) <= 1e-12
    }

    /// Trapezoid (= rectangle, periodic) integral over the grid.
    pub fn integral(&self) -> Complex64 {
        self.data.iter().sum::<Complex64>() * self.grid.dx() * self.grid.dp()
    }
}
