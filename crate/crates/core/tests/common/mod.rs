//! Shared test oracles, independent of the library's evaluation paths.

/// Radial shooting oracle for the l = 0 interacting equation.
///
/// In the dimensionless variable `u = a r` the equation for `w(u) = u R(u)`
/// is `w'' + (lambda + u^2) w = 0`. A short Maclaurin start (exact
/// recurrence) hands over to a classical fourth-order Runge-Kutta march
/// with step 1e-4, completely independent of the hypergeometric series.
pub struct ShootingOracle {
    pub lambda: f64,
    pub branch: u8,
}

impl ShootingOracle {
    /// `R(u)` with the same normalisation as the library branches:
    /// branch 1 has `R(0) = 1`, branch 2 has `u R -> 1` as `u -> 0`.
    pub fn eval(&self, u_target: f64) -> f64 {
        assert!(u_target > 0.0);
        let u0 = 0.25f64.min(u_target / 2.0);
        let (mut w, mut wp) = self.series_start(u0);
        let h = 1e-4;
        let mut u = u0;
        let f = |u: f64, w: f64| -(self.lambda + u * u) * w;
        while u + h <= u_target {
            let (k1w, k1p) = (wp, f(u, w));
            let (k2w, k2p) = (wp + 0.5 * h * k1p, f(u + 0.5 * h, w + 0.5 * h * k1w));
            let (k3w, k3p) = (wp + 0.5 * h * k2p, f(u + 0.5 * h, w + 0.5 * h * k2w));
            let (k4w, k4p) = (wp + h * k3p, f(u + h, w + h * k3w));
            w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
            wp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            u += h;
        }
        // last fractional step; the final slope wp is not needed
        let h = u_target - u;
        if h > 0.0 {
            let (k1w, k1p) = (wp, f(u, w));
            let (k2w, k2p) = (wp + 0.5 * h * k1p, f(u + 0.5 * h, w + 0.5 * h * k1w));
            let (k3w, k3p) = (wp + 0.5 * h * k2p, f(u + 0.5 * h, w + 0.5 * h * k2w));
            let k4w = wp + h * k3p;
            w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        }
        w / u_target
    }

    /// Maclaurin start from the recurrence
    /// `n (n-1) b_n + lambda b_{n-2} + b_{n-4} = 0`,
    /// odd powers for branch 1 (`b_1 = 1`), even for branch 2 (`b_0 = 1`).
    fn series_start(&self, u0: f64) -> (f64, f64) {
        let start: usize = match self.branch {
            1 => 1,
            2 => 0,
            b => panic!("branch must be 1 or 2, got {b}"),
        };
        let mut b = vec![0.0f64; 60];
        b[start] = 1.0;
        for n in (start + 2..60).step_by(2) {
            let prev2 = b[n - 2];
            let prev4 = if n >= 4 { b[n - 4] } else { 0.0 };
            b[n] = -(self.lambda * prev2 + prev4) / ((n * (n - 1)) as f64);
        }
        let mut w = 0.0;
        let mut wp = 0.0;
        for (n, &bn) in b.iter().enumerate() {
            if bn != 0.0 {
                w += bn * u0.powi(n as i32);
                wp += bn * n as f64 * u0.powi(n as i32 - 1);
            }
        }
        (w, wp)
    }
}
