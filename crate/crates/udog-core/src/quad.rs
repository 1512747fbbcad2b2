//! Small quadrature helpers: Gauss–Legendre nodes, cumulative Simpson
//! accumulation, and a numerically stable oscillatory primitive.

use num_complex::Complex64 as C64;

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n(x) and P_n'(x) by recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Gauss–Legendre rule mapped to [a, b].
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        Self { nodes, weights }
    }

    /// Integrate `f` over [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    /// Integrate a vector-valued `f` over [a, b].
    pub fn integrate_vec3<F: FnMut(f64) -> [f64; 3]>(&self, a: f64, b: f64, mut f: F) -> [f64; 3] {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = [0.0; 3];
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x);
            for i in 0..3 {
                acc[i] += w * v[i];
            }
        }
        for a in &mut acc {
            *a *= half;
        }
        acc
    }
}

/// Cumulative Simpson integration over a uniformly spaced sample array.
///
/// Returns the running integral at every even sample index (panel
/// boundaries) as (index, value) pairs; the sample count must be odd so the
/// panels tile the range exactly.
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<(usize, f64)> {
    assert!(
        values.len() >= 3 && values.len() % 2 == 1,
        "need an odd sample count"
    );
    let mut out = Vec::with_capacity(values.len() / 2 + 1);
    let mut acc = 0.0;
    out.push((0, 0.0));
    let mut k = 0;
    while k + 2 < values.len() {
        acc += h / 3.0 * (values[k] + 4.0 * values[k + 1] + values[k + 2]);
        out.push((k + 2, acc));
        k += 2;
    }
    out
}

/// ∫₀^dt e^{i x τ} dτ, stable for small |x·dt| via the sinc form.
pub fn cis_integral(x: f64, dt: f64) -> C64 {
    let half = 0.5 * x * dt;
    let sinc = if half.abs() < 1e-6 {
        1.0 - half * half / 6.0
    } else {
        half.sin() / half
    };
    C64::from_polar(1.0, half) * (dt * sinc)
}

pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}
