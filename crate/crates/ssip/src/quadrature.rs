//! Gauss–Legendre quadrature: single rules, segmented element rules, and
//! geometrically graded partitions for the verification oracles.
//!
//! # Design
//!
//! Nodes and weights are computed at runtime by Newton iteration on the
//! Legendre three-term recurrence (no hardcoded tables), then symmetrized so
//! that the node set is exactly antisymmetric and the weights exactly
//! mirrored. An `n`-point rule integrates polynomials up to degree `2n - 1`
//! exactly; the unit tests verify this together with `sum(w) = 2`.
//!
//! Element quadrature uses [`QuadratureRule`]: the reference domain [-1, 1]
//! split into `n_segments` equal segments with an `n_points` Gauss rule on
//! each. Splitting a fixed-order rule into segments is how the centerline
//! integrals resolve sharply peaked short-range integrands without going to
//! very high polynomial order.
//!
//! The oracles additionally need 1D rules over arbitrary intervals whose
//! integrands blow up (integrably) toward one endpoint; [`graded_rule`]
//! builds a geometrically refined composite rule for that purpose.

use crate::{Error, Result};

// =============================================================================
// Plain Gauss–Legendre rules on [-1, 1]
// =============================================================================

/// Maximum supported Gauss order for a single rule/segment.
pub const MAX_GAUSS_POINTS: usize = 64;

/// An `n`-point Gauss–Legendre rule on the interval [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    /// Nodes in strictly increasing order, antisymmetric about 0.
    pub nodes: Vec<f64>,
    /// Positive weights; `weights[i]` pairs with `nodes[i]`, sum equals 2.
    pub weights: Vec<f64>,
}

/// Evaluate the Legendre polynomial `P_n` and its derivative at `x`.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0; // P_0
    let mut p = x; // P_1
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Build the `n`-point Gauss–Legendre rule on [-1, 1].
///
/// # Errors
///
/// `n` must lie in `1..=MAX_GAUSS_POINTS`.
pub fn gauss_legendre(n: usize) -> Result<GaussRule> {
    if n == 0 || n > MAX_GAUSS_POINTS {
        return Err(Error::parameter(
            "n_points",
            format!("Gauss order must be in 1..={MAX_GAUSS_POINTS}, got {n}"),
        ));
    }
    if n == 1 {
        return Ok(GaussRule {
            nodes: vec![0.0],
            weights: vec![2.0],
        });
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Solve for the roots in the negative half; mirror for exact symmetry.
    let half = n / 2;
    for i in 0..half {
        // Classic initial guess for the i-th root (counting from x = -1).
        let mut x = -(std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        weights[i] = w;
        nodes[n - 1 - i] = -x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // Center node is exactly 0 by symmetry.
        let (_, dp) = legendre_and_derivative(n, 0.0);
        nodes[half] = 0.0;
        weights[half] = 2.0 / (dp * dp);
    }
    Ok(GaussRule { nodes, weights })
}

// =============================================================================
// Segmented rules over [-1, 1] (element quadrature)
// =============================================================================

/// A single quadrature point: reference coordinate and weight.
#[derive(Debug, Clone, Copy)]
pub struct QuadPoint {
    /// Coordinate in the element reference domain [-1, 1].
    pub xi: f64,
    /// Weight; the weights of a full [`QuadratureRule`] sum to 2.
    pub w: f64,
}

/// Composite rule on [-1, 1]: `n_segments` equal segments, each carrying an
/// `n_points` Gauss–Legendre rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    /// Number of equal segments the reference domain is split into.
    pub n_segments: usize,
    /// Gauss order per segment.
    pub n_points: usize,
    points: Vec<QuadPoint>,
}

impl QuadratureRule {
    /// Build a segmented rule.
    ///
    /// # Errors
    ///
    /// `n_segments >= 1` and `1 <= n_points <= MAX_GAUSS_POINTS` are required.
    pub fn new(n_segments: usize, n_points: usize) -> Result<Self> {
        if n_segments == 0 {
            return Err(Error::parameter(
                "n_segments",
                "segment count must be at least 1".to_string(),
            ));
        }
        let base = gauss_legendre(n_points)?;
        let width = 2.0 / n_segments as f64;
        let mut points = Vec::with_capacity(n_segments * n_points);
        for s in 0..n_segments {
            let a = -1.0 + s as f64 * width;
            let mid = a + 0.5 * width;
            for (&t, &w) in base.nodes.iter().zip(&base.weights) {
                points.push(QuadPoint {
                    xi: mid + 0.5 * width * t,
                    w: 0.5 * width * w,
                });
            }
        }
        Ok(QuadratureRule {
            n_segments,
            n_points,
            points,
        })
    }

    /// All quadrature points of the composite rule, in ascending `xi` order.
    pub fn points(&self) -> &[QuadPoint] {
        &self.points
    }

    /// Total number of points (`n_segments * n_points`).
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True when the rule holds no points (never happens for a built rule).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

// =============================================================================
// Graded composite rules over arbitrary intervals (oracle quadrature)
// =============================================================================

/// Split `[a, b]` into `n_segments` whose widths form a geometric progression
/// with the given `ratio >= 1`, the narrowest segment sitting at the `a` end
/// when `refine_toward_start` and at the `b` end otherwise.
///
/// Returns the segment bounds `(lo, hi)` in ascending order. Used to resolve
/// integrands that spike (integrably) at one interval endpoint, e.g. the
/// near-rim contributions of nearly touching cross-sections.
pub fn geometric_partition(
    a: f64,
    b: f64,
    n_segments: usize,
    ratio: f64,
    refine_toward_start: bool,
) -> Result<Vec<(f64, f64)>> {
    if !(b > a) {
        return Err(Error::parameter(
            "interval",
            format!("need a < b, got [{a}, {b}]"),
        ));
    }
    if n_segments == 0 {
        return Err(Error::parameter("n_segments", "must be at least 1"));
    }
    if !(ratio >= 1.0) || !ratio.is_finite() {
        return Err(Error::parameter(
            "ratio",
            format!("grading ratio must be finite and >= 1, got {ratio}"),
        ));
    }
    let n = n_segments;
    let total = b - a;
    // Widths w0 * ratio^i, i = 0..n, with w0 the narrowest.
    let denom: f64 = if (ratio - 1.0).abs() < 1e-14 {
        n as f64
    } else {
        (ratio.powi(n as i32) - 1.0) / (ratio - 1.0)
    };
    let w0 = total / denom;
    let mut bounds = Vec::with_capacity(n);
    let mut lo = a;
    for i in 0..n {
        let idx = if refine_toward_start { i } else { n - 1 - i } as i32;
        let w = w0 * ratio.powi(idx);
        let hi = if i + 1 == n { b } else { lo + w };
        bounds.push((lo, hi));
        lo = hi;
    }
    Ok(bounds)
}

/// A 1D composite rule over an arbitrary interval, stored as flat point and
/// weight arrays (structure-of-arrays, friendly to the oracle hot loops).
#[derive(Debug, Clone)]
pub struct LineRule {
    /// Quadrature abscissae.
    pub x: Vec<f64>,
    /// Matching weights; sums to the interval length.
    pub w: Vec<f64>,
}

impl LineRule {
    /// Map a base Gauss rule onto each of the given segments.
    pub fn from_segments(segments: &[(f64, f64)], base: &GaussRule) -> Self {
        let n = segments.len() * base.nodes.len();
        let mut x = Vec::with_capacity(n);
        let mut w = Vec::with_capacity(n);
        for &(lo, hi) in segments {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            for (&t, &wt) in base.nodes.iter().zip(&base.weights) {
                x.push(mid + half * t);
                w.push(half * wt);
            }
        }
        LineRule { x, w }
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.x.len()
    }

    /// True when the rule holds no points.
    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Convenience: geometrically graded composite Gauss rule on `[a, b]`.
pub fn graded_rule(
    a: f64,
    b: f64,
    n_segments: usize,
    n_points: usize,
    ratio: f64,
    refine_toward_start: bool,
) -> Result<LineRule> {
    let segs = geometric_partition(a, b, n_segments, ratio, refine_toward_start)?;
    let base = gauss_legendre(n_points)?;
    Ok(LineRule::from_segments(&segs, &base))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exact integral of x^k over [-1, 1].
    fn monomial_integral(k: u32) -> f64 {
        if k % 2 == 1 {
            0.0
        } else {
            2.0 / (k as f64 + 1.0)
        }
    }

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        for n in 1..=MAX_GAUSS_POINTS {
            let rule = gauss_legendre(n).unwrap();
            let sum: f64 = rule.weights.iter().sum();
            assert!((sum - 2.0).abs() < 1e-13, "order {n}: sum(w) = {sum}");
            for i in 0..n {
                assert_eq!(
                    rule.nodes[i], -rule.nodes[n - 1 - i],
                    "order {n}: node symmetry"
                );
                assert!(rule.weights[i] > 0.0);
            }
            for i in 1..n {
                assert!(rule.nodes[i] > rule.nodes[i - 1], "order {n}: ordering");
            }
        }
    }

    #[test]
    fn integrates_polynomials_exactly_up_to_degree_2n_minus_1() {
        for n in [1_usize, 2, 3, 5, 8, 13, 21, 32, 64] {
            let rule = gauss_legendre(n).unwrap();
            let max_deg = (2 * n - 1).min(40) as u32;
            for k in 0..=max_deg {
                let approx: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(&x, &w)| w * x.powi(k as i32))
                    .sum();
                let exact = monomial_integral(k);
                assert!(
                    (approx - exact).abs() < 2e-14,
                    "order {n}, degree {k}: got {approx}, want {exact}"
                );
            }
        }
    }

    #[test]
    fn high_order_rule_still_exact_at_top_degree() {
        // Degree 127 with the 64-point rule: odd, integral is 0; degree 126
        // integrates to 2/127.
        let rule = gauss_legendre(64).unwrap();
        let i127: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| w * x.powi(127))
            .sum();
        assert!(i127.abs() < 1e-15);
        let i126: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| w * x.powi(126))
            .sum();
        let exact = 2.0 / 127.0;
        assert!(
            (i126 - exact).abs() / exact < 1e-12,
            "got {i126}, want {exact}"
        );
    }

    #[test]
    fn rejects_out_of_range_orders() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(MAX_GAUSS_POINTS + 1).is_err());
    }

    #[test]
    fn segmented_rule_matches_single_rule_on_smooth_integrand() {
        // integral of exp(x) over [-1,1] = e - 1/e.
        let exact = std::f64::consts::E - (-1.0_f64).exp();
        for (n_seg, n_gp) in [(1, 12), (2, 10), (4, 6), (8, 5)] {
            let rule = QuadratureRule::new(n_seg, n_gp).unwrap();
            let total_w: f64 = rule.points().iter().map(|p| p.w).sum();
            assert!((total_w - 2.0).abs() < 1e-13);
            let approx: f64 = rule.points().iter().map(|p| p.w * p.xi.exp()).sum();
            assert!(
                (approx - exact).abs() < 1e-12,
                "({n_seg},{n_gp}): {approx} vs {exact}"
            );
        }
    }

    #[test]
    fn geometric_partition_covers_interval_with_graded_widths() {
        let segs = geometric_partition(0.0, 1.0, 5, 2.0, true).unwrap();
        assert_eq!(segs.len(), 5);
        assert_eq!(segs[0].0, 0.0);
        assert_eq!(segs[4].1, 1.0);
        // Contiguity.
        for i in 1..5 {
            assert_eq!(segs[i].0, segs[i - 1].1);
        }
        // Widths double away from the refined (start) end: 1/31, 2/31, ...
        let w0 = segs[0].1 - segs[0].0;
        assert!((w0 - 1.0 / 31.0).abs() < 1e-14);
        let w4 = segs[4].1 - segs[4].0;
        assert!((w4 - 16.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn graded_rule_resolves_integrable_endpoint_singularity() {
        // integral of x^(-1/2) over (0, 1] = 2; a uniform rule of the same
        // budget is far less accurate than the graded one.
        let graded = graded_rule(1e-12, 1.0, 40, 16, 2.0, true).unwrap();
        let approx: f64 = graded
            .x
            .iter()
            .zip(&graded.w)
            .map(|(&x, &w)| w / x.sqrt())
            .sum();
        assert!((approx - 2.0).abs() < 1e-5, "got {approx}");
    }
}
