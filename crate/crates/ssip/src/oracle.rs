//! Brute-force reference integrators.
//!
//! These oracles evaluate the section–section and cylinder–cylinder
//! interaction integrals directly from the *point-pair* law, with no
//! closed-form reduction, so the section laws and the pair quadrature can be
//! validated against them:
//!
//! - [`disk_disk_4d`]: full 4D Gauss quadrature over two circular
//!   cross-sections in polar coordinates, with per-dimension sector
//!   subdivision (equal angular sectors, geometrically rim-refined radial
//!   sectors whose grading strengthens as the gap closes). The workhorse
//!   reference for van der Waals disk laws down to gaps of a few `1e-3`
//!   disk radii, below which the affordable point budget stops converging.
//! - [`langbein_reduced_2d`]: the exact reduction of the same 4D integral to
//!   two dimensions using circle–circle intersection arcs; converges to
//!   arbitrarily small gaps and provides the cross-check where the 4D
//!   quadrature fails.
//! - [`ring_ring_2d`]: double circumference integral for surface-charged
//!   sections (the electrostatic reference).
//! - [`rigid_cylinder_sweep`]: potential between two rigid straight
//!   cylinders (parallel per unit length, perpendicular total), computed
//!   either from a section law via the 2D double integral or by nesting a
//!   ring oracle per section pair over the *same* outer grid, so comparing
//!   the two isolates the section-law error.

use crate::potentials::{
    analytic_reference, powe, CrossSectionPair, PointPairLaw, ReferenceCase, SsipLaw,
};
use crate::quadrature::{gauss_legendre, geometric_partition, LineRule, QuadratureRule};
use crate::{Error, Result};

// =============================================================================
// Point-law fast dispatch
// =============================================================================

/// Pre-resolved point-law evaluator so oracle hot loops avoid per-point
/// `Result` handling and enum matching.
#[derive(Debug, Clone, Copy)]
enum Phi {
    Power { k: f64, m: f64 },
    Lj { k12: f64, k6: f64 },
    Exp { c: f64, inv_rc: f64 },
    Zero,
}

impl Phi {
    fn of(law: &PointPairLaw) -> Phi {
        match *law {
            PointPairLaw::Power { k, m } => Phi::Power { k, m },
            PointPairLaw::LennardJones { phi_eq, r_eq } => {
                let (k12, k6) = PointPairLaw::lj_coefficients(phi_eq, r_eq);
                Phi::Lj { k12, k6 }
            }
            PointPairLaw::Exponential { c, r_c } => Phi::Exp {
                c,
                inv_rc: 1.0 / r_c,
            },
            PointPairLaw::HardSphere => Phi::Zero,
        }
    }
}

/// Weighted point cloud (structure-of-arrays for streaming access).
struct Cloud {
    x: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
    w: Vec<f64>,
}

impl Cloud {
    fn with_capacity(n: usize) -> Cloud {
        Cloud {
            x: Vec::with_capacity(n),
            y: Vec::with_capacity(n),
            z: Vec::with_capacity(n),
            w: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, p: [f64; 3], w: f64) {
        self.x.push(p[0]);
        self.y.push(p[1]);
        self.z.push(p[2]);
        self.w.push(w);
    }

    fn len(&self) -> usize {
        self.x.len()
    }
}

#[inline]
fn pair_sum_with<F: Fn(f64) -> f64>(c1: &Cloud, c2: &Cloud, f: F) -> f64 {
    let mut total = 0.0;
    for i in 0..c1.len() {
        let (xi, yi, zi, wi) = (c1.x[i], c1.y[i], c1.z[i], c1.w[i]);
        let mut acc = 0.0;
        for j in 0..c2.len() {
            let dx = xi - c2.x[j];
            let dy = yi - c2.y[j];
            let dz = zi - c2.z[j];
            let r = (dx * dx + dy * dy + dz * dz).sqrt();
            acc += c2.w[j] * f(r);
        }
        total += wi * acc;
    }
    total
}

fn cloud_pair_sum(c1: &Cloud, c2: &Cloud, phi: Phi) -> f64 {
    match phi {
        Phi::Power { k, m } => pair_sum_with(c1, c2, |r| k * powe(r, -m)),
        Phi::Lj { k12, k6 } => pair_sum_with(c1, c2, |r| {
            let r6 = (1.0 / r).powi(6);
            k12 * r6 * r6 + k6 * r6
        }),
        Phi::Exp { c, inv_rc } => pair_sum_with(c1, c2, |r| c * (-r * inv_rc).exp()),
        Phi::Zero => 0.0,
    }
}

// =============================================================================
// Disk–disk 4D oracle
// =============================================================================

/// Sector subdivision of one quadrature dimension: `n_segments` intervals
/// with `n_points` Gauss points each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorSpec {
    /// Number of sectors (`>= 1`).
    pub n_segments: usize,
    /// Gauss points per sector (`1..=64`).
    pub n_points: usize,
}

impl SectorSpec {
    /// Convenience constructor.
    pub fn new(n_segments: usize, n_points: usize) -> SectorSpec {
        SectorSpec {
            n_segments,
            n_points,
        }
    }
}

/// Configuration of the 4D disk–disk reference integration.
///
/// Disk 1 is centered at the origin with normal along +y (its fiber's axis);
/// disk 2 is centered a centroid distance `g + r1 + r2` along +x, its normal
/// rotated about the x axis by the mutual angle `alpha` (`0` = parallel
/// fibers, `pi/2` = perpendicular). The surface gap between the two disks is
/// exactly `gap` for every `alpha`.
#[derive(Debug, Clone, Copy)]
pub struct DiskConfig {
    /// Radius of disk 1 (`> 0`).
    pub r1: f64,
    /// Radius of disk 2 (`> 0`).
    pub r2: f64,
    /// Surface gap (`> 0`).
    pub gap: f64,
    /// Mutual angle of the disk normals (radians).
    pub alpha: f64,
    /// Product of volume densities carried into the result.
    pub rho_product: f64,
    /// Radial subdivision (geometrically refined toward the rim, where the
    /// near-contact region concentrates the integrand).
    pub radial: SectorSpec,
    /// Angular subdivision into equal sectors; with an even count the near
    /// points (`theta = 0` on disk 1, `theta = pi` on disk 2) fall on sector
    /// boundaries where Gauss nodes cluster.
    pub angular: SectorSpec,
    /// Exploit the joint reflection symmetry `(theta1, theta2) ->
    /// (-theta1, -theta2)` to halve the work (exact for even angular sector
    /// counts; ignored otherwise).
    pub use_symmetry: bool,
}

/// Base growth ratio of successive radial sector widths (widest at the
/// center, narrowest at the rim).
const RADIAL_SECTOR_RATIO: f64 = 2.0;

/// Strongest permitted radial grading; caps the rim refinement at extreme
/// gap-to-radius ratios where the fixed point budget cannot converge anyway.
const RADIAL_SECTOR_RATIO_MAX: f64 = 8.0;

/// Growth ratio for the radial partition of a disk of radius `radius` facing
/// a surface gap `gap`: graded so the rim-adjacent sector is about half the
/// gap wide (the integrand's boundary-layer scale for rapidly decaying
/// laws), and never weaker than the base ratio, which keeps the partition
/// for moderate and large gaps identical to the ungraded-design one.
fn adaptive_radial_ratio(radius: f64, gap: f64, n_segments: usize) -> f64 {
    if n_segments < 2 {
        return RADIAL_SECTOR_RATIO;
    }
    let target = 0.5 * gap;
    let finest =
        |ratio: f64| radius * (ratio - 1.0) / (ratio.powi(n_segments as i32) - 1.0);
    if finest(RADIAL_SECTOR_RATIO) <= target {
        return RADIAL_SECTOR_RATIO;
    }
    if finest(RADIAL_SECTOR_RATIO_MAX) >= target {
        return RADIAL_SECTOR_RATIO_MAX;
    }
    let (mut lo, mut hi) = (RADIAL_SECTOR_RATIO, RADIAL_SECTOR_RATIO_MAX);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if finest(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Strongest permitted angular grading per half-domain.
const ANGULAR_SECTOR_RATIO_MAX: f64 = 8.0;

/// Growth ratio for one angular half-domain of `n_half` sectors between a
/// disk's near point and its far point. For rapidly decaying laws the
/// integrand concentrates along the thin ridge where points of the two rims
/// face each other; its angular cross-width scales like `gap / radius`, so
/// the sector adjacent to the near point targets a width of four times
/// that (Gauss nodes inside each sector then sample well below the ridge
/// width). At moderate and large gaps the target exceeds the uniform width
/// and the partition degrades gracefully to the uniform one (`ratio = 1`).
fn adaptive_angular_ratio(radius: f64, gap: f64, n_half: usize) -> f64 {
    if n_half < 2 {
        return 1.0;
    }
    let uniform = std::f64::consts::PI / n_half as f64;
    let target = (4.0 * gap / radius).min(uniform);
    let finest = |ratio: f64| {
        if (ratio - 1.0).abs() < 1e-12 {
            uniform
        } else {
            std::f64::consts::PI * (ratio - 1.0) / (ratio.powi(n_half as i32) - 1.0)
        }
    };
    if finest(ANGULAR_SECTOR_RATIO_MAX) >= target {
        return ANGULAR_SECTOR_RATIO_MAX;
    }
    let (mut lo, mut hi) = (1.0, ANGULAR_SECTOR_RATIO_MAX);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if finest(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl DiskConfig {
    /// Config with an explicit budget.
    pub fn new(
        r1: f64,
        r2: f64,
        gap: f64,
        alpha: f64,
        rho_product: f64,
        radial: SectorSpec,
        angular: SectorSpec,
    ) -> Result<DiskConfig> {
        if !(r1 > 0.0) || !(r2 > 0.0) {
            return Err(Error::parameter(
                "radius",
                format!("disk radii must be positive, got ({r1}, {r2})"),
            ));
        }
        if !(gap > 0.0) {
            return Err(Error::parameter(
                "gap",
                format!("disk gap must be positive, got {gap}"),
            ));
        }
        if radial.n_segments == 0 || angular.n_segments == 0 {
            return Err(Error::parameter("n_segments", "sector counts must be >= 1"));
        }
        Ok(DiskConfig {
            r1,
            r2,
            gap,
            alpha,
            rho_product,
            radial,
            angular,
            use_symmetry: true,
        })
    }

    /// The reference budget: 8 sectors x 32 Gauss points in each of the four
    /// dimensions (the largest budget the reference computation uses; it
    /// converges down to gaps of a few `1e-3` disk radii).
    pub fn reference(r1: f64, r2: f64, gap: f64, alpha: f64, rho_product: f64) -> Result<DiskConfig> {
        DiskConfig::new(
            r1,
            r2,
            gap,
            alpha,
            rho_product,
            SectorSpec::new(8, 32),
            SectorSpec::new(8, 32),
        )
    }

    /// Centroid distance `gap + r1 + r2`.
    pub fn centroid_distance(&self) -> f64 {
        self.gap + self.r1 + self.r2
    }
}

/// Polar quadrature grid over one disk. `half` restricts the angular range
/// to `(0, pi)` with doubled weights (the symmetry half-domain). The
/// angular partition consists of two mirrored half-domains graded toward
/// the disk's near point (`theta = 0` when `near_at_zero`, else
/// `theta = +-pi`), so the half-domain variant integrates exactly one half
/// of the full-domain rule. Odd angular sector counts are rounded up to the
/// next even count. The weight includes the polar Jacobian `r`.
fn disk_cloud(
    radius: f64,
    radial: SectorSpec,
    radial_ratio: f64,
    angular: SectorSpec,
    angular_ratio: f64,
    near_at_zero: bool,
    half: bool,
    place: impl Fn(f64, f64) -> [f64; 3],
) -> Result<Cloud> {
    let g_rad = gauss_legendre(radial.n_points)?;
    let g_ang = gauss_legendre(angular.n_points)?;
    let rad_segs = geometric_partition(0.0, radius, radial.n_segments, radial_ratio, false)?;
    let radial_rule = LineRule::from_segments(&rad_segs, &g_rad);

    let n_half = angular.n_segments.div_ceil(2).max(1);
    // [0, pi] graded toward the near point: toward 0 when the near point is
    // at theta = 0, toward pi when it is at theta = +-pi.
    let upper = geometric_partition(0.0, std::f64::consts::PI, n_half, angular_ratio, near_at_zero)?;
    let (ang_segs, w_scale) = if half {
        (upper, 2.0)
    } else {
        let mut segs: Vec<(f64, f64)> = upper.iter().map(|&(a, b)| (-b, -a)).collect();
        segs.extend_from_slice(&upper);
        (segs, 1.0)
    };
    let angular_rule = LineRule::from_segments(&ang_segs, &g_ang);

    let mut cloud = Cloud::with_capacity(radial_rule.x.len() * angular_rule.x.len());
    for (&r, &wr) in radial_rule.x.iter().zip(&radial_rule.w) {
        for (&th, &wt) in angular_rule.x.iter().zip(&angular_rule.w) {
            cloud.push(place(r, th), w_scale * wr * wt * r);
        }
    }
    Ok(cloud)
}

/// 4D polar Gauss quadrature of the point law over both disk areas:
///
/// ```text
/// pi(gap) = rho1 rho2 * integral over disk1 integral over disk2 of
///           Phi(|x1 - x2|)  dA2 dA1        (energy / length^2)
/// ```
///
/// Sector subdivision per [`DiskConfig`]; the joint angular reflection
/// symmetry halves the work when enabled.
pub fn disk_disk_4d(law: &PointPairLaw, cfg: &DiskConfig) -> Result<f64> {
    let phi = Phi::of(law);
    let d = cfg.centroid_distance();
    let (sin_a, cos_a) = cfg.alpha.sin_cos();

    let symmetric = cfg.use_symmetry && cfg.angular.n_segments.is_multiple_of(2);
    let n_half = cfg.angular.n_segments.div_ceil(2).max(1);
    let ratio1 = adaptive_radial_ratio(cfg.r1, cfg.gap, cfg.radial.n_segments);
    let ratio2 = adaptive_radial_ratio(cfg.r2, cfg.gap, cfg.radial.n_segments);
    let ang_ratio1 = adaptive_angular_ratio(cfg.r1, cfg.gap, n_half);
    let ang_ratio2 = adaptive_angular_ratio(cfg.r2, cfg.gap, n_half);
    // Disk 1 faces disk 2 at theta1 = 0; disk 2 faces disk 1 at theta2 = pi.
    let cloud1 = disk_cloud(
        cfg.r1,
        cfg.radial,
        ratio1,
        cfg.angular,
        ang_ratio1,
        true,
        symmetric,
        |r, th| {
            let (s, c) = th.sin_cos();
            [r * c, 0.0, r * s]
        },
    )?;
    let cloud2 = disk_cloud(
        cfg.r2,
        cfg.radial,
        ratio2,
        cfg.angular,
        ang_ratio2,
        false,
        false,
        |r, th| {
            let (s, c) = th.sin_cos();
            [d + r * c, -r * s * sin_a, r * s * cos_a]
        },
    )?;
    Ok(cfg.rho_product * cloud_pair_sum(&cloud1, &cloud2, phi))
}

// =============================================================================
// Langbein 2D reduction
// =============================================================================

/// Quadrature budget for the two variables of [`langbein_reduced_2d`], each
/// geometrically refined toward its lower endpoint (where the integrand's
/// near-contact contribution concentrates for rapidly decaying laws).
#[derive(Debug, Clone, Copy)]
pub struct LangbeinBudget {
    /// Budget of the outer variable (distance of a disk-2 point from the
    /// disk-1 center).
    pub outer: SectorSpec,
    /// Budget of the inner variable (distance between the two points).
    pub inner: SectorSpec,
}

impl Default for LangbeinBudget {
    fn default() -> Self {
        LangbeinBudget {
            outer: SectorSpec::new(16, 24),
            inner: SectorSpec::new(16, 24),
        }
    }
}

/// Exact reduction of the parallel disk–disk 4D integral to 2D.
///
/// With `t` the distance of a disk-2 point from the disk-1 center and `p`
/// the point–point distance, the locus of disk-1 points at distance `p` is
/// an arc of length `2 p phi(p, t)` and the locus of disk-2 points at
/// distance `t` an arc of length `2 t psi(t)`:
///
/// ```text
/// pi(gap) = rho1 rho2 * int_{d-R2}^{d+R2} 2 t psi(t)
///             int_{t-R1}^{t+R1} Phi(p) 2 p phi(p, t) dp dt
/// cos phi = (p^2 + t^2 - R1^2) / (2 p t)
/// cos psi = (t^2 + d^2 - R2^2) / (2 t d),     d = gap + R1 + R2
/// ```
///
/// The integrand vanishes at every interval endpoint (square-root arcs), so
/// graded Gauss segments converge for arbitrarily small gaps — this is the
/// reference of choice below gaps of about `5e-3` disk radii where the 4D
/// quadrature budget runs out.
pub fn langbein_reduced_2d(
    law: &PointPairLaw,
    r1: f64,
    r2: f64,
    gap: f64,
    rho_product: f64,
    budget: &LangbeinBudget,
) -> Result<f64> {
    if !(r1 > 0.0) || !(r2 > 0.0) || !(gap > 0.0) {
        return Err(Error::parameter(
            "geometry",
            format!("need positive radii and gap, got ({r1}, {r2}, {gap})"),
        ));
    }
    let phi = Phi::of(law);
    let eval = |r: f64| -> f64 {
        match phi {
            Phi::Power { k, m } => k * powe(r, -m),
            Phi::Lj { k12, k6 } => {
                let r6 = (1.0 / r).powi(6);
                k12 * r6 * r6 + k6 * r6
            }
            Phi::Exp { c, inv_rc } => c * (-r * inv_rc).exp(),
            Phi::Zero => 0.0,
        }
    };
    let d = gap + r1 + r2;
    let g_outer = gauss_legendre(budget.outer.n_points)?;
    let g_inner = gauss_legendre(budget.inner.n_points)?;
    let t_segs = geometric_partition(d - r2, d + r2, budget.outer.n_segments, 2.0, true)?;
    let t_rule = LineRule::from_segments(&t_segs, &g_outer);

    let clamp_acos = |c: f64| c.clamp(-1.0, 1.0).acos();
    let mut total = 0.0;
    for (&t, &wt) in t_rule.x.iter().zip(&t_rule.w) {
        let psi = clamp_acos((t * t + d * d - r2 * r2) / (2.0 * t * d));
        let p_segs = geometric_partition(t - r1, t + r1, budget.inner.n_segments, 2.0, true)?;
        let p_rule = LineRule::from_segments(&p_segs, &g_inner);
        let mut inner = 0.0;
        for (&p, &wp) in p_rule.x.iter().zip(&p_rule.w) {
            let arc = clamp_acos((p * p + t * t - r1 * r1) / (2.0 * p * t));
            inner += wp * eval(p) * 2.0 * p * arc;
        }
        total += wt * 2.0 * t * psi * inner;
    }
    Ok(rho_product * total)
}

// =============================================================================
// Ring–ring 2D oracle
// =============================================================================

/// One ring's circumference quadrature: points `center + R cos(theta) e_a +
/// R sin(theta) e_b`, weights `lambda_w * R * w_theta` over equal angular
/// sectors.
fn ring_cloud(
    center: [f64; 3],
    e_a: [f64; 3],
    e_b: [f64; 3],
    radius: f64,
    lambda_w: f64,
    spec: SectorSpec,
) -> Result<Cloud> {
    let rule = gauss_legendre(spec.n_points)?;
    let n = spec.n_segments.max(1);
    let segs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let w = 2.0 * std::f64::consts::PI / n as f64;
            (-std::f64::consts::PI + i as f64 * w, -std::f64::consts::PI + (i + 1) as f64 * w)
        })
        .collect();
    let line = LineRule::from_segments(&segs, &rule);
    let mut cloud = Cloud::with_capacity(line.x.len());
    for (&th, &w) in line.x.iter().zip(&line.w) {
        let (s, c) = th.sin_cos();
        cloud.push(
            [
                center[0] + radius * (c * e_a[0] + s * e_b[0]),
                center[1] + radius * (c * e_a[1] + s * e_b[1]),
                center[2] + radius * (c * e_a[2] + s * e_b[2]),
            ],
            lambda_w * radius * w,
        );
    }
    Ok(cloud)
}

/// Double circumference integral between two arbitrarily placed rings
/// (internal general form; `sigma1 sigma2` folded into the weights).
#[allow(clippy::too_many_arguments)]
fn ring_ring_general(
    law: &PointPairLaw,
    r1: f64,
    r2: f64,
    center2: [f64; 3],
    basis2: ([f64; 3], [f64; 3]),
    sigma1: f64,
    sigma2: f64,
    spec: SectorSpec,
) -> Result<f64> {
    let c1 = ring_cloud([0.0; 3], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], r1, sigma1, spec)?;
    let c2 = ring_cloud(center2, basis2.0, basis2.1, r2, sigma2, spec)?;
    Ok(cloud_pair_sum(&c1, &c2, Phi::of(law)))
}

/// Double circumference integral of the point law over two surface-charged
/// rings (the electrostatic section reference):
///
/// ```text
/// pi(gap) = sigma1 sigma2 R1 R2 * closed int closed int
///           Phi(|x1 - x2|) dtheta2 dtheta1     (energy / length^2)
/// ```
///
/// Ring 1 sits at the origin with normal +y; ring 2 is centered a distance
/// `gap + r1 + r2` along +x with its normal rotated about x by `alpha`
/// (same placement as [`DiskConfig`]).
#[allow(clippy::too_many_arguments)]
pub fn ring_ring_2d(
    law: &PointPairLaw,
    r1: f64,
    r2: f64,
    gap: f64,
    alpha: f64,
    sigma1: f64,
    sigma2: f64,
    spec: SectorSpec,
) -> Result<f64> {
    if !(r1 > 0.0) || !(r2 > 0.0) || !(gap > 0.0) {
        return Err(Error::parameter(
            "geometry",
            format!("need positive radii and gap, got ({r1}, {r2}, {gap})"),
        ));
    }
    let d = gap + r1 + r2;
    let (sin_a, cos_a) = alpha.sin_cos();
    ring_ring_general(
        law,
        r1,
        r2,
        [d, 0.0, 0.0],
        ([1.0, 0.0, 0.0], [0.0, -sin_a, cos_a]),
        sigma1,
        sigma2,
        spec,
    )
}

// =============================================================================
// Rigid cylinder sweeps
// =============================================================================

/// Relative arrangement of the two rigid cylinders and the reported
/// quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepGeometry {
    /// Axes parallel; reports energy per unit length of cylinder 1, with its
    /// reference section at midspan (the natural quantity for short-range
    /// laws, where end effects vanish at midspan).
    ParallelPerLength,
    /// Axes parallel; reports the total interaction energy of both finite
    /// cylinders (the natural quantity for long-range laws).
    ParallelTotal,
    /// Axes perpendicular (closest approach between the axes = centroid
    /// distance); reports the total interaction energy.
    Perpendicular,
}

/// What to integrate per cross-section pair in a cylinder sweep.
#[derive(Debug, Clone, Copy)]
pub enum SweepIntegrand<'a> {
    /// A closed-form section law (gap- or distance-based per
    /// [`SsipLaw::uses_gap`]).
    Ssip(&'a SsipLaw),
    /// Nested brute-force ring–ring oracle per section pair, sharing the
    /// sweep's outer grid, so SSIP-vs-oracle comparisons cancel the outer
    /// quadrature error.
    RingNested {
        /// Point-pair law between surface elements.
        law: &'a PointPairLaw,
        /// Surface charge density of cylinder 1.
        sigma1: f64,
        /// Surface charge density of cylinder 2.
        sigma2: f64,
        /// Angular budget per ring.
        spec: SectorSpec,
    },
    /// The far-field parallel-disk van der Waals asymptote evaluated at the
    /// section centroid distance (only meaningful for well-separated
    /// cylinders; the pair must carry a Hamaker constant).
    FarFieldDisk(&'a CrossSectionPair),
}

/// Potential between two rigid straight cylinders of slenderness
/// `zeta = L / R` for each gap in `gaps`.
///
/// Parallel: cylinder 1's mid-section is fixed and the integral runs along
/// cylinder 2 (length `zeta * r2`), yielding energy per unit length of
/// cylinder 1. Perpendicular: the double integral runs along both lengths,
/// yielding total energy. `rule` maps its points onto each axis; the same
/// grid serves every integrand variant.
pub fn rigid_cylinder_sweep(
    integrand: &SweepIntegrand<'_>,
    geometry: SweepGeometry,
    r1: f64,
    r2: f64,
    zeta: f64,
    gaps: &[f64],
    rule: &QuadratureRule,
) -> Result<Vec<(f64, f64)>> {
    if !(r1 > 0.0) || !(r2 > 0.0) || !(zeta > 0.0) {
        return Err(Error::parameter(
            "geometry",
            format!("need positive radii and slenderness, got ({r1}, {r2}, {zeta})"),
        ));
    }
    let half1 = 0.5 * zeta * r1;
    let half2 = 0.5 * zeta * r2;
    let mut out = Vec::with_capacity(gaps.len());
    for &gap in gaps {
        if !(gap > 0.0) {
            return Err(Error::parameter(
                "gap",
                format!("sweep gaps must be positive, got {gap}"),
            ));
        }
        let d_perp = gap + r1 + r2;
        let value = match geometry {
            SweepGeometry::ParallelPerLength => {
                let mut acc = 0.0;
                for q in rule.points() {
                    let s = q.xi * half2;
                    let dist = (d_perp * d_perp + s * s).sqrt();
                    acc += q.w * half2 * section_value(integrand, r1, r2, dist, [d_perp, s, 0.0], true)?;
                }
                acc
            }
            SweepGeometry::ParallelTotal => {
                let mut acc = 0.0;
                for q1 in rule.points() {
                    let s1 = q1.xi * half1;
                    for q2 in rule.points() {
                        let s2 = q2.xi * half2;
                        let ds = s2 - s1;
                        let dist = (d_perp * d_perp + ds * ds).sqrt();
                        acc += q1.w * half1
                            * q2.w
                            * half2
                            * section_value(integrand, r1, r2, dist, [d_perp, ds, 0.0], true)?;
                    }
                }
                acc
            }
            SweepGeometry::Perpendicular => {
                let mut acc = 0.0;
                for q1 in rule.points() {
                    let s1 = q1.xi * half1;
                    for q2 in rule.points() {
                        let s2 = q2.xi * half2;
                        let dist = (d_perp * d_perp + s1 * s1 + s2 * s2).sqrt();
                        acc += q1.w * half1
                            * q2.w
                            * half2
                            * section_value(integrand, r1, r2, dist, [d_perp, -s1, s2], false)?;
                    }
                }
                acc
            }
        };
        out.push((gap, value));
    }
    Ok(out)
}

/// One section-pair contribution of the sweep. `offset` is the center of
/// ring 2 relative to ring 1; `parallel` selects the second ring's basis.
fn section_value(
    integrand: &SweepIntegrand<'_>,
    r1: f64,
    r2: f64,
    dist: f64,
    offset: [f64; 3],
    parallel: bool,
) -> Result<f64> {
    match *integrand {
        SweepIntegrand::Ssip(law) => {
            let arg = if law.uses_gap() { dist - r1 - r2 } else { dist };
            let (value, _) = crate::potentials::ssip_eval(law, arg)?;
            Ok(value)
        }
        SweepIntegrand::RingNested {
            law,
            sigma1,
            sigma2,
            spec,
        } => {
            let basis2 = if parallel {
                // Both normals +y: in-plane basis (x, z).
                ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0])
            } else {
                // Ring 2 normal +z: in-plane basis (x, y).
                ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
            };
            ring_ring_general(law, r1, r2, offset, basis2, sigma1, sigma2, spec)
        }
        SweepIntegrand::FarFieldDisk(pair) => {
            analytic_reference(ReferenceCase::DiskParLs, pair, dist)
        }
    }
}
