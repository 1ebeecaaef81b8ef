//! Finite-difference stencils: fourth-order central rules for callables and
//! Fornberg-weight stencils for sampled grids (uniform or not).

/// Fourth-order central first derivative, `O(h^4)` truncation.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Companion fourth-order central second derivative.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

/// Finite-difference weights for derivatives `0..=max_order` at `x0` from
/// arbitrary distinct nodes (Fornberg's recursion).
///
/// Row `m` of the result holds the weights of the `m`-th derivative.
pub fn fornberg_weights(nodes: &[f64], x0: f64, max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    assert!(n > max_order, "need more nodes than derivative order");
    // delta[m][j]: weight of node j for the m-th derivative, built up one
    // node at a time
    let mut delta = vec![vec![0.0; n]; max_order + 1];
    delta[0][0] = 1.0;
    let mut c1 = 1.0;
    for nu in 1..n {
        let mut c2 = 1.0;
        let mut next = vec![vec![0.0; n]; max_order + 1];
        for j in 0..nu {
            let c3 = nodes[nu] - nodes[j];
            c2 *= c3;
            for m in 0..=max_order.min(nu) {
                let dm1 = if m > 0 { delta[m - 1][j] } else { 0.0 };
                next[m][j] = ((nodes[nu] - x0) * delta[m][j] - m as f64 * dm1) / c3;
            }
        }
        for m in 0..=max_order.min(nu) {
            let dm1 = if m > 0 { delta[m - 1][nu - 1] } else { 0.0 };
            next[m][nu] = c1 / c2 * (m as f64 * dm1 - (nodes[nu - 1] - x0) * delta[m][nu - 1]);
        }
        delta = next;
        c1 = c2;
    }
    delta
}

/// First derivative of sampled values using moving 5-point Fornberg stencils
/// (one-sided at the edges). `grid` must be strictly increasing.
pub fn grid_derivative(grid: &[f64], values: &[f64]) -> Vec<f64> {
    grid_deriv_order(grid, values, 1)
}

/// Second derivative of sampled values, same stencil layout.
pub fn grid_second_derivative(grid: &[f64], values: &[f64]) -> Vec<f64> {
    grid_deriv_order(grid, values, 2)
}

fn grid_deriv_order(grid: &[f64], values: &[f64], order: usize) -> Vec<f64> {
    let n = grid.len();
    assert_eq!(n, values.len(), "grid/value length mismatch");
    assert!(n >= 5, "need at least 5 samples for the 5-point stencil");
    let mut out = vec![0.0; n];
    for i in 0..n {
        let lo = i.saturating_sub(2).min(n - 5);
        let w = fornberg_weights(&grid[lo..lo + 5], grid[i], order);
        out[i] = (0..5).map(|k| w[order][k] * values[lo + k]).sum();
    }
    out
}

/// Index range on which a centred 5-point stencil fits; boundary points
/// outside this range rely on one-sided stencils.
pub fn central_valid_range(n: usize) -> std::ops::Range<usize> {
    if n < 5 {
        0..0
    } else {
        2..n - 2
    }
}
