//! Interaction laws: point-pair potentials, closed-form section–section laws,
//! Lennard-Jones characteristics, regularization, and analytic reference
//! curves for parallel disks and cylinders.
//!
//! # Layers
//!
//! 1. **Point-pair laws** ([`PointPairLaw`], [`point_pair`]): the molecular
//!    potential `Phi(r)` between two points — power laws (Coulomb `m = 1`,
//!    van der Waals `m = 6`, steric repulsion with a large exponent),
//!    Lennard-Jones, exponential, and a hard-sphere placeholder.
//! 2. **Section–section laws** ([`SsipLaw`], [`ssip_eval`]): the two
//!    transverse dimensions of both fibers integrated out in closed form,
//!    leaving `pi(g)` — an interaction potential per unit length of each
//!    fiber. Two asymptotic families exist:
//!    - *short-range* (`m > 7/2`): nearly touching circular sections,
//!      `pi = c_ss * g^(7/2 - m)` with the gap `g`; the coefficient `c_ss`
//!      comes from Langbein's classic evaluation of the off-center
//!      circle–circle integral:
//!      `c_ss = k_m rho1 rho2 * 2 pi/(m-2)^2 * sqrt(2 R1 R2/(R1+R2)) *
//!       Gamma(m-7/2) Gamma((m-1)/2) / (Gamma(m-2) Gamma(m/2-1))`;
//!    - *long-range monopole* (`m <= 3`): each section acts as a point
//!      charge at its centroid, `pi = c_pref * d^(-m)` with the centroid
//!      distance `d` (surface variant `c_pref = k lambda1 lambda2`, volume
//!      variant `c_pref = k rho1 rho2 A1 A2`).
//!    - the *Lennard-Jones composite* superposes the `m = 6` and `m = 12`
//!      short-range laws; its C1 regularization replaces the force below a
//!      regularization gap `g_reg` by a linear extrapolation so Newton
//!      solvers survive transient (near-)contact states.
//! 3. **Characteristics and references**: equilibrium gaps, force minima
//!    (pull-off forces) for point/disk/cylinder LJ laws, and the closed-form
//!    van der Waals curves for parallel/perpendicular cylinders and parallel
//!    disks used by the verification drivers.
//!
//! # Sign conventions
//!
//! Adhesive contributions carry negative prefactors (`k6 = -C_vdw < 0`,
//! `Phi_eq < 0`), repulsive ones positive (`k12 > 0`), so superposition is
//! plain addition. Forces are negative gradients (`f = -dPhi/dr`); negative
//! force values mean attraction.

use crate::special::gamma;
use crate::{Error, Result};

// =============================================================================
// Power evaluation helper
// =============================================================================

/// `x^e` with a fast path for half-integer exponents (`2e` integral, |2e| <=
/// 64), which covers every closed-form section law in this crate. The fast
/// path reduces to `powi` and one `sqrt`, an order of magnitude cheaper than
/// `powf`, and the section-law evaluations sit in the innermost loops of both
/// the solver and the cost benchmarks.
#[inline]
pub(crate) fn powe(x: f64, e: f64) -> f64 {
    let two_e = 2.0 * e;
    if two_e.fract() == 0.0 && two_e.abs() <= 64.0 {
        let n = two_e as i32;
        if n % 2 == 0 {
            x.powi(n / 2)
        } else {
            // x^(n/2) = x^((n-1)/2) * sqrt(x); exact integer arithmetic since
            // (n-1) is even, and Rust's integer division truncates toward
            // zero on the (odd - 1) even operand without remainder.
            x.powi((n - 1) / 2) * x.sqrt()
        }
    } else {
        x.powf(e)
    }
}

// =============================================================================
// Point-pair laws
// =============================================================================

/// A molecular interaction potential between two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointPairLaw {
    /// `Phi(r) = k * r^(-m)`: Coulomb for `m = 1` (`k` carrying the charge
    /// product and medium constant), van der Waals attraction for
    /// `(k, m) = (-C_vdw, 6)`, steep steric repulsion for large positive
    /// exponents with `k > 0`.
    Power {
        /// Prefactor with units energy·lengthᵐ; sign selects attraction (< 0)
        /// vs repulsion (> 0).
        k: f64,
        /// Positive exponent.
        m: f64,
    },
    /// Lennard-Jones `Phi(r) = k12 r^-12 + k6 r^-6` parameterized by its well:
    /// `k6 = 2 Phi_eq r_eq^6`, `k12 = -Phi_eq r_eq^12` with `Phi_eq < 0` the
    /// potential at the equilibrium spacing `r_eq` (where the force is zero).
    LennardJones {
        /// Well depth (negative energy) at the equilibrium spacing.
        phi_eq: f64,
        /// Equilibrium spacing (`> 0`).
        r_eq: f64,
    },
    /// `Phi(r) = c * exp(-r / r_c)`: short-ranged exponential decay.
    Exponential {
        /// Energy prefactor.
        c: f64,
        /// Decay length (`> 0`).
        r_c: f64,
    },
    /// Idealized hard-sphere exclusion. `Phi = 0` for `r > 0`; no smooth
    /// section–section reduction exists, so only [`point_pair`] supports it.
    HardSphere,
}

impl PointPairLaw {
    /// Coulomb-type law `Phi = k / r`.
    pub fn coulomb(k: f64) -> Self {
        PointPairLaw::Power { k, m: 1.0 }
    }

    /// Van der Waals attraction `Phi = -c_vdw * r^-6` (`c_vdw > 0`).
    pub fn van_der_waals(c_vdw: f64) -> Self {
        PointPairLaw::Power {
            k: -c_vdw,
            m: 6.0,
        }
    }

    /// Validated Lennard-Jones constructor (`phi_eq < 0`, `r_eq > 0`).
    pub fn lennard_jones(phi_eq: f64, r_eq: f64) -> Result<Self> {
        if !(phi_eq < 0.0) {
            return Err(Error::parameter(
                "phi_eq",
                format!("LJ well depth must be negative, got {phi_eq}"),
            ));
        }
        if !(r_eq > 0.0) {
            return Err(Error::parameter(
                "r_eq",
                format!("LJ equilibrium spacing must be positive, got {r_eq}"),
            ));
        }
        Ok(PointPairLaw::LennardJones { phi_eq, r_eq })
    }

    /// The `(k12, k6)` decomposition of a Lennard-Jones law.
    pub fn lj_coefficients(phi_eq: f64, r_eq: f64) -> (f64, f64) {
        let r6 = r_eq.powi(6);
        (-phi_eq * r6 * r6, 2.0 * phi_eq * r6)
    }
}

/// Evaluate a point-pair law: `(phi, dphi_dr)`. The force magnitude is
/// `f = -dphi_dr`; negative `f` means attraction.
///
/// # Errors
///
/// `r <= 0` is rejected for all laws except [`PointPairLaw::HardSphere`],
/// which accepts `r >= 0` (returning an infinite potential at `r = 0`).
pub fn point_pair(law: &PointPairLaw, r: f64) -> Result<(f64, f64)> {
    match *law {
        PointPairLaw::HardSphere => {
            if r < 0.0 || r.is_nan() {
                Err(Error::law(format!("hard-sphere law needs r >= 0, got {r}")))
            } else if r == 0.0 {
                Ok((f64::INFINITY, f64::NEG_INFINITY))
            } else {
                Ok((0.0, 0.0))
            }
        }
        _ if !(r > 0.0) => Err(Error::law(format!(
            "point-pair law needs r > 0, got {r}"
        ))),
        PointPairLaw::Power { k, m } => {
            let phi = k * powe(r, -m);
            Ok((phi, -m * phi / r))
        }
        PointPairLaw::LennardJones { phi_eq, r_eq } => {
            let (k12, k6) = PointPairLaw::lj_coefficients(phi_eq, r_eq);
            let inv = 1.0 / r;
            let r6 = inv.powi(6);
            let a12 = k12 * r6 * r6;
            let a6 = k6 * r6;
            Ok((a12 + a6, (-12.0 * a12 - 6.0 * a6) * inv))
        }
        PointPairLaw::Exponential { c, r_c } => {
            let phi = c * (-r / r_c).exp();
            Ok((phi, -phi / r_c))
        }
    }
}

/// Point-law Lennard-Jones characteristics: the pull-off distance
/// `r_fmin = (13/7)^(1/6) r_eq` and the pull-off force
/// `f_min = (72/13)(7/13)^(7/6) Phi_eq / r_eq` (negative: adhesive).
pub fn lj_point_characteristics(phi_eq: f64, r_eq: f64) -> Result<(f64, f64)> {
    // Validation shared with the law constructor.
    PointPairLaw::lennard_jones(phi_eq, r_eq)?;
    let r_fmin = (13.0_f64 / 7.0).powf(1.0 / 6.0) * r_eq;
    let f_min = 72.0 / 13.0 * (7.0_f64 / 13.0).powf(7.0 / 6.0) * phi_eq / r_eq;
    Ok((r_fmin, f_min))
}

// =============================================================================
// Cross-section pair data
// =============================================================================

/// Geometric and density data of a pair of circular cross-sections.
///
/// Volume-type laws (van der Waals, LJ, steric) need the product of the two
/// volume densities `rho1 * rho2`; surface-type monopole laws need the line
/// charge densities `lambda_j = 2 pi R_j sigma_j`. Exactly the fields a given
/// law needs must be present; law constructors check this.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSectionPair {
    /// Radius of the first fiber (`> 0`).
    pub r1: f64,
    /// Radius of the second fiber (`> 0`).
    pub r2: f64,
    /// Product of volume densities `rho1 * rho2` (for volume laws).
    pub rho_product: Option<f64>,
    /// Line charge density of the first fiber, `lambda1 = 2 pi R1 sigma1`.
    pub lambda1: Option<f64>,
    /// Line charge density of the second fiber.
    pub lambda2: Option<f64>,
    /// Hamaker constant `A = pi^2 rho1 rho2 C_vdw` for van der Waals
    /// reference curves; set via [`CrossSectionPair::with_vdw_constant`].
    pub hamaker: Option<f64>,
}

impl CrossSectionPair {
    fn check_radii(r1: f64, r2: f64) -> Result<()> {
        if !(r1 > 0.0) || !(r2 > 0.0) || !r1.is_finite() || !r2.is_finite() {
            return Err(Error::parameter(
                "radius",
                format!("cross-section radii must be positive and finite, got ({r1}, {r2})"),
            ));
        }
        Ok(())
    }

    /// Pair for volume-density laws.
    pub fn volume(r1: f64, r2: f64, rho_product: f64) -> Result<Self> {
        Self::check_radii(r1, r2)?;
        if !(rho_product > 0.0) {
            return Err(Error::parameter(
                "rho_product",
                format!("volume density product must be positive, got {rho_product}"),
            ));
        }
        Ok(CrossSectionPair {
            r1,
            r2,
            rho_product: Some(rho_product),
            lambda1: None,
            lambda2: None,
            hamaker: None,
        })
    }

    /// Pair for surface-charge monopole laws, from surface charge densities;
    /// the line densities are `lambda_j = 2 pi R_j sigma_j` (signed).
    pub fn surface(r1: f64, r2: f64, sigma1: f64, sigma2: f64) -> Result<Self> {
        Self::check_radii(r1, r2)?;
        let two_pi = 2.0 * std::f64::consts::PI;
        Ok(CrossSectionPair {
            r1,
            r2,
            rho_product: None,
            lambda1: Some(two_pi * r1 * sigma1),
            lambda2: Some(two_pi * r2 * sigma2),
            hamaker: None,
        })
    }

    /// Attach the van der Waals constant `c_vdw > 0`, deriving the Hamaker
    /// constant `A = pi^2 rho1 rho2 c_vdw` used by the reference curves.
    pub fn with_vdw_constant(mut self, c_vdw: f64) -> Result<Self> {
        let rho = self.rho_product.ok_or_else(|| {
            Error::law("Hamaker constant requires a volume-density pair".to_string())
        })?;
        if !(c_vdw > 0.0) {
            return Err(Error::parameter(
                "c_vdw",
                format!("van der Waals constant must be positive, got {c_vdw}"),
            ));
        }
        self.hamaker = Some(std::f64::consts::PI.powi(2) * rho * c_vdw);
        Ok(self)
    }

    /// `sqrt(2 R1 R2 / (R1 + R2))`: the effective-radius factor every
    /// small-separation coefficient carries.
    pub fn effective_radius_factor(&self) -> f64 {
        (2.0 * self.r1 * self.r2 / (self.r1 + self.r2)).sqrt()
    }

    fn rho_product_required(&self) -> Result<f64> {
        self.rho_product
            .ok_or_else(|| Error::law("this law requires rho_product on the cross-section pair"))
    }

    fn lambdas_required(&self) -> Result<(f64, f64)> {
        match (self.lambda1, self.lambda2) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::law(
                "this law requires line charge densities (lambda1, lambda2) on the pair",
            )),
        }
    }

    fn hamaker_required(&self) -> Result<f64> {
        self.hamaker.ok_or_else(|| {
            Error::law("this reference curve requires the Hamaker constant (with_vdw_constant)")
        })
    }
}

// =============================================================================
// Closed-form coefficients
// =============================================================================

/// Langbein's dimensionless small-separation factor
/// `2 pi/(m-2)^2 * Gamma(m-7/2) Gamma((m-1)/2) / (Gamma(m-2) Gamma(m/2-1))`.
///
/// Requires `m > 7/2`; at `m = 6` it equals `3 pi^2 / 256`.
pub fn langbein_factor(m: f64) -> Result<f64> {
    if !(m > 3.5) {
        return Err(Error::parameter(
            "m",
            format!("short-range reduction requires m > 7/2, got {m}"),
        ));
    }
    let num = gamma(m - 3.5) * gamma(0.5 * (m - 1.0));
    let den = gamma(m - 2.0) * gamma(0.5 * m - 1.0);
    Ok(2.0 * std::f64::consts::PI / ((m - 2.0) * (m - 2.0)) * num / den)
}

/// Small-separation disk–disk coefficient `c_ss` for a power-`m` point law
/// with prefactor `k_m`:
///
/// ```text
/// c_ss = k_m rho1 rho2 sqrt(2 R1 R2/(R1+R2)) * langbein_factor(m)
/// pi(g) = c_ss * g^(7/2 - m)     (energy per unit length of each fiber)
/// ```
///
/// # Errors
///
/// `m <= 7/2` (outside the validity of the reduction) or a pair without
/// volume densities.
pub fn c_small_sep(m: f64, k_m: f64, pair: &CrossSectionPair) -> Result<f64> {
    let rho = pair.rho_product_required()?;
    Ok(k_m * rho * pair.effective_radius_factor() * langbein_factor(m)?)
}

/// Small-separation *parallel cylinder* coefficient for a power-`m` point
/// law: the disk–disk law integrated along the second fiber's axis,
///
/// ```text
/// c_cyl = k_m rho1 rho2 sqrt(2 R1 R2/(R1+R2))
///         * sqrt(pi) Gamma((m-1)/2)/Gamma(m/2) * langbein_factor(m - 1)
/// pi(g) = c_cyl * g^(9/2 - m)    (energy per unit length of one fiber)
/// ```
///
/// The lateral line integral contributes the general factor
/// `sqrt(pi) Gamma((m-1)/2) / Gamma(m/2)` (which is `3 pi/8` at `m = 6`).
///
/// # Errors
///
/// Requires `m > 9/2` so the reduced exponent stays in the short-range
/// family, and a pair with volume densities.
pub fn c_small_sep_cylinder(m: f64, k_m: f64, pair: &CrossSectionPair) -> Result<f64> {
    if !(m > 4.5) {
        return Err(Error::parameter(
            "m",
            format!("parallel-cylinder reduction requires m > 9/2, got {m}"),
        ));
    }
    let rho = pair.rho_product_required()?;
    let line = std::f64::consts::PI.sqrt() * gamma(0.5 * (m - 1.0)) / gamma(0.5 * m);
    Ok(k_m * rho * pair.effective_radius_factor() * line * langbein_factor(m - 1.0)?)
}

// =============================================================================
// Section–section laws
// =============================================================================

/// A closed-form section–section interaction law `pi(g)` (energy per unit
/// length of each of the two fibers).
///
/// Short-range variants are functions of the surface gap `g`; the long-range
/// monopole is a function of the centroid distance `d`. Which argument a law
/// expects is exposed by [`SsipLaw::uses_gap`]; the quadrature kernel feeds
/// the right one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SsipLaw {
    /// `pi(g) = c_ss * g^(7/2 - m)`, valid for `m > 7/2` and small gaps.
    ShortRangeSmallSep {
        /// Coefficient from [`c_small_sep`].
        c_ss: f64,
        /// Point-law exponent (`> 7/2`).
        m: f64,
    },
    /// `pi(d) = c_pref * d^(-m)`, valid for `m <= 3` (distant sections
    /// dominate, each acting as a point source at its centroid).
    LongRangeMonopole {
        /// Prefactor (`k lambda1 lambda2` or `k rho1 rho2 A1 A2`).
        c_pref: f64,
        /// Point-law exponent (`<= 3`).
        m: f64,
    },
    /// Lennard-Jones composite `pi(g) = c6 g^(-5/2) + c12 g^(-17/2)` with
    /// `c6 < 0 < c12`.
    LjComposite {
        /// Adhesive coefficient, `c_small_sep(6, 2 Phi_eq r_eq^6, pair)`.
        c6: f64,
        /// Repulsive coefficient, `c_small_sep(12, -Phi_eq r_eq^12, pair)`.
        c12: f64,
    },
    /// [`SsipLaw::LjComposite`] with the force integrand replaced below
    /// `g_reg` by the linear extrapolation `f(g) = a g + b`, chosen C1 at
    /// `g_reg`. Accepts any gap, including overlaps (`g <= 0`).
    RegularizedLj {
        /// Adhesive coefficient of the inner composite.
        c6: f64,
        /// Repulsive coefficient of the inner composite.
        c12: f64,
        /// Regularization gap (`> 0`).
        g_reg: f64,
        /// Linear force slope below `g_reg` (`a = f'(g_reg)`).
        a: f64,
        /// Linear force offset (`b = f(g_reg) - a g_reg`).
        b: f64,
        /// Potential value of the inner law at `g_reg` (continuity constant).
        pi_reg: f64,
    },
}

/// Value and first two derivatives of a section law at one argument.
#[derive(Debug, Clone, Copy)]
pub struct SsipDerivs {
    /// `pi` (energy/length^2).
    pub value: f64,
    /// `dpi/dg` or `dpi/dd` (energy/length^3).
    pub d1: f64,
    /// Second derivative (energy/length^4).
    pub d2: f64,
}

impl SsipLaw {
    /// Short-range law for a power-`m` point potential (`m > 7/2`).
    pub fn short_range_small_sep(m: f64, k_m: f64, pair: &CrossSectionPair) -> Result<Self> {
        Ok(SsipLaw::ShortRangeSmallSep {
            c_ss: c_small_sep(m, k_m, pair)?,
            m,
        })
    }

    /// Long-range monopole for surface charges: `c_pref = k lambda1 lambda2`.
    pub fn long_range_monopole_surface(m: f64, k: f64, pair: &CrossSectionPair) -> Result<Self> {
        if !(m <= 3.0) || !(m > 0.0) {
            return Err(Error::parameter(
                "m",
                format!("monopole reduction requires 0 < m <= 3, got {m}"),
            ));
        }
        let (l1, l2) = pair.lambdas_required()?;
        Ok(SsipLaw::LongRangeMonopole {
            c_pref: k * l1 * l2,
            m,
        })
    }

    /// Long-range monopole for volume densities:
    /// `c_pref = k rho1 rho2 (pi R1^2)(pi R2^2)`.
    pub fn long_range_monopole_volume(m: f64, k: f64, pair: &CrossSectionPair) -> Result<Self> {
        if !(m <= 3.0) || !(m > 0.0) {
            return Err(Error::parameter(
                "m",
                format!("monopole reduction requires 0 < m <= 3, got {m}"),
            ));
        }
        let rho = pair.rho_product_required()?;
        let a1 = std::f64::consts::PI * pair.r1 * pair.r1;
        let a2 = std::f64::consts::PI * pair.r2 * pair.r2;
        Ok(SsipLaw::LongRangeMonopole {
            c_pref: k * rho * a1 * a2,
            m,
        })
    }

    /// Lennard-Jones composite section law from the point-law well
    /// (`phi_eq < 0`, `r_eq > 0`).
    pub fn lj_composite(phi_eq: f64, r_eq: f64, pair: &CrossSectionPair) -> Result<Self> {
        let (k12, k6) = PointPairLaw::lj_coefficients(phi_eq, r_eq);
        PointPairLaw::lennard_jones(phi_eq, r_eq)?;
        Ok(SsipLaw::LjComposite {
            c6: c_small_sep(6.0, k6, pair)?,
            c12: c_small_sep(12.0, k12, pair)?,
        })
    }

    /// Map a point-pair law to its short-range section law, when one exists.
    ///
    /// # Errors
    ///
    /// Hard-sphere has no smooth reduction; exponential has no closed form
    /// here; power laws need `m > 7/2` (use the monopole constructors for
    /// `m <= 3`).
    pub fn from_point_law(law: &PointPairLaw, pair: &CrossSectionPair) -> Result<Self> {
        match *law {
            PointPairLaw::HardSphere => Err(Error::HardSphereNotSmooth),
            PointPairLaw::Exponential { .. } => Err(Error::law(
                "no closed-form section law for the exponential point law",
            )),
            PointPairLaw::Power { k, m } => SsipLaw::short_range_small_sep(m, k, pair),
            PointPairLaw::LennardJones { phi_eq, r_eq } => {
                SsipLaw::lj_composite(phi_eq, r_eq, pair)
            }
        }
    }

    /// True when the law's argument is the surface gap `g`; false when it is
    /// the centroid distance `d`.
    pub fn uses_gap(&self) -> bool {
        !matches!(self, SsipLaw::LongRangeMonopole { .. })
    }

    /// True when the law diverges for a nonpositive argument (every variant
    /// except the regularized composite).
    pub fn singular_at_zero(&self) -> bool {
        !matches!(self, SsipLaw::RegularizedLj { .. })
    }

    /// The law with all prefactors multiplied by `factor` (used by load
    /// stepping to ramp interaction strength; every variant is linear in its
    /// prefactors, including the regularized branch constants).
    pub fn scaled(&self, factor: f64) -> SsipLaw {
        match *self {
            SsipLaw::ShortRangeSmallSep { c_ss, m } => SsipLaw::ShortRangeSmallSep {
                c_ss: factor * c_ss,
                m,
            },
            SsipLaw::LongRangeMonopole { c_pref, m } => SsipLaw::LongRangeMonopole {
                c_pref: factor * c_pref,
                m,
            },
            SsipLaw::LjComposite { c6, c12 } => SsipLaw::LjComposite {
                c6: factor * c6,
                c12: factor * c12,
            },
            SsipLaw::RegularizedLj {
                c6,
                c12,
                g_reg,
                a,
                b,
                pi_reg,
            } => SsipLaw::RegularizedLj {
                c6: factor * c6,
                c12: factor * c12,
                g_reg,
                a: factor * a,
                b: factor * b,
                pi_reg: factor * pi_reg,
            },
        }
    }
}

#[inline]
fn lj_composite_derivs(c6: f64, c12: f64, g: f64) -> SsipDerivs {
    let ig = 1.0 / g;
    let g52 = ig * ig / g.sqrt(); // g^(-5/2)
    let g172 = g52 * ig.powi(6); // g^(-17/2)
    let t6 = c6 * g52;
    let t12 = c12 * g172;
    SsipDerivs {
        value: t6 + t12,
        d1: (-2.5 * t6 - 8.5 * t12) * ig,
        d2: (8.75 * t6 + 80.75 * t12) * (ig * ig),
    }
}

/// Value and first two derivatives of a section law.
///
/// # Errors
///
/// Nonpositive argument on any unregularized law (all of which are singular
/// at zero separation).
pub fn ssip_eval2(law: &SsipLaw, g_or_d: f64) -> Result<SsipDerivs> {
    match *law {
        SsipLaw::ShortRangeSmallSep { c_ss, m } => {
            if !(g_or_d > 0.0) {
                return Err(Error::law(format!(
                    "short-range law needs gap > 0, got {g_or_d}"
                )));
            }
            let e = 3.5 - m;
            let value = c_ss * powe(g_or_d, e);
            let d1 = value * e / g_or_d;
            Ok(SsipDerivs {
                value,
                d1,
                d2: d1 * (e - 1.0) / g_or_d,
            })
        }
        SsipLaw::LongRangeMonopole { c_pref, m } => {
            if !(g_or_d > 0.0) {
                return Err(Error::law(format!(
                    "monopole law needs centroid distance > 0, got {g_or_d}"
                )));
            }
            let value = c_pref * powe(g_or_d, -m);
            let d1 = -m * value / g_or_d;
            Ok(SsipDerivs {
                value,
                d1,
                d2: -(m + 1.0) * d1 / g_or_d,
            })
        }
        SsipLaw::LjComposite { c6, c12 } => {
            if !(g_or_d > 0.0) {
                return Err(Error::law(format!(
                    "Lennard-Jones composite needs gap > 0, got {g_or_d}"
                )));
            }
            Ok(lj_composite_derivs(c6, c12, g_or_d))
        }
        SsipLaw::RegularizedLj {
            c6,
            c12,
            g_reg,
            a,
            b,
            pi_reg,
        } => {
            if g_or_d >= g_reg {
                Ok(lj_composite_derivs(c6, c12, g_or_d))
            } else {
                let g = g_or_d;
                // Force integrand f = a g + b, so pi' = -(a g + b), and
                // pi integrates the linear branch down from pi(g_reg).
                Ok(SsipDerivs {
                    value: pi_reg - (0.5 * a * (g * g - g_reg * g_reg) + b * (g - g_reg)),
                    d1: -(a * g + b),
                    d2: -a,
                })
            }
        }
    }
}

/// Value and first derivative of a section law: `(pi, dpi)`.
///
/// Short-range variants are evaluated at the surface gap `g`, the long-range
/// monopole at the centroid distance `d` (see [`SsipLaw::uses_gap`]).
pub fn ssip_eval(law: &SsipLaw, g_or_d: f64) -> Result<(f64, f64)> {
    let d = ssip_eval2(law, g_or_d)?;
    Ok((d.value, d.d1))
}

/// Replace the force integrand of a Lennard-Jones composite below `g_reg` by
/// its linear extrapolation (C1 matching at `g_reg`), producing a law that is
/// finite and smooth for every gap, overlaps included.
///
/// # Errors
///
/// `inner` must be an [`SsipLaw::LjComposite`] and `g_reg > 0`.
pub fn regularize_lj(inner: &SsipLaw, g_reg: f64) -> Result<SsipLaw> {
    let (c6, c12) = match *inner {
        SsipLaw::LjComposite { c6, c12 } => (c6, c12),
        _ => {
            return Err(Error::law(
                "regularize_lj expects a Lennard-Jones composite law",
            ))
        }
    };
    if !(g_reg > 0.0) || !g_reg.is_finite() {
        return Err(Error::parameter(
            "g_reg",
            format!("regularization gap must be positive and finite, got {g_reg}"),
        ));
    }
    let at = lj_composite_derivs(c6, c12, g_reg);
    let f = -at.d1; // force integrand at g_reg
    let fp = -at.d2; // its slope
    Ok(SsipLaw::RegularizedLj {
        c6,
        c12,
        g_reg,
        a: fp,
        b: f - fp * g_reg,
        pi_reg: at.value,
    })
}

// =============================================================================
// Lennard-Jones characteristics
// =============================================================================

/// Equilibrium gap, force-minimum gap, and force minimum (pull-off) of a
/// Lennard-Jones section law. For the point law the distances play the role
/// of the gaps.
#[derive(Debug, Clone, Copy)]
pub struct LjCharacteristics {
    /// Gap where the force vanishes (potential minimum).
    pub g_eq: f64,
    /// Gap of the force minimum (pull-off distance).
    pub g_fmin: f64,
    /// Force minimum (negative: maximum adhesive force). Units: force/length²
    /// for disks, force/length for parallel cylinders.
    pub f_min: f64,
}

/// Characteristics of the disk–disk LJ law `pi(g) = c6 g^(-5/2) + c12 g^(-17/2)`:
///
/// ```text
/// g_eq   = (-17/5 c12/c6)^(1/6)          (≈ 0.653513 r_eq)
/// g_fmin = (-323/35 c12/c6)^(1/6)        (≈ 0.771845 r_eq)
/// f_min  = 5/2 c6 g^(-7/2) + 17/2 c12 g^(-19/2) at g_fmin
///          (≈ 0.904115 rho1 rho2 sqrt(2R1R2/(R1+R2)) r_eq^(5/2) Phi_eq)
/// ```
pub fn lj_disk_characteristics(
    phi_eq: f64,
    r_eq: f64,
    pair: &CrossSectionPair,
) -> Result<LjCharacteristics> {
    let (c6, c12) = match SsipLaw::lj_composite(phi_eq, r_eq, pair)? {
        SsipLaw::LjComposite { c6, c12 } => (c6, c12),
        _ => unreachable!(),
    };
    let ratio = -c12 / c6; // positive: c6 < 0 < c12
    let g_eq = (17.0 / 5.0 * ratio).powf(1.0 / 6.0);
    let g_fmin = (323.0 / 35.0 * ratio).powf(1.0 / 6.0);
    let force = |g: f64| 2.5 * c6 * powe(g, -3.5) + 8.5 * c12 * powe(g, -9.5);
    Ok(LjCharacteristics {
        g_eq,
        g_fmin,
        f_min: force(g_fmin),
    })
}

/// Characteristics of the parallel-cylinder LJ law (per unit length)
/// `pi(g) = c6 g^(-3/2) + c12 g^(-15/2)`:
///
/// ```text
/// g_eq   = (-5 c12/c6)^(1/6)             (≈ 0.571693 r_eq)
/// g_fmin = (-17 c12/c6)^(1/6)            (≈ 0.701040 r_eq)
/// f_min  = 3/2 c6 g^(-5/2) + 15/2 c12 g^(-17/2) at g_fmin
///          (≈ 2.116342 rho1 rho2 sqrt(2R1R2/(R1+R2)) r_eq^(7/2) Phi_eq)
/// ```
pub fn lj_cylinder_characteristics(
    phi_eq: f64,
    r_eq: f64,
    pair: &CrossSectionPair,
) -> Result<LjCharacteristics> {
    PointPairLaw::lennard_jones(phi_eq, r_eq)?;
    let (k12, k6) = PointPairLaw::lj_coefficients(phi_eq, r_eq);
    let c6 = c_small_sep_cylinder(6.0, k6, pair)?;
    let c12 = c_small_sep_cylinder(12.0, k12, pair)?;
    let ratio = -c12 / c6;
    let g_eq = (5.0 * ratio).powf(1.0 / 6.0);
    let g_fmin = (17.0 * ratio).powf(1.0 / 6.0);
    let force = |g: f64| 1.5 * c6 * powe(g, -2.5) + 7.5 * c12 * powe(g, -8.5);
    Ok(LjCharacteristics {
        g_eq,
        g_fmin,
        f_min: force(g_fmin),
    })
}

/// Default regularization gap for a Lennard-Jones law: the parallel-cylinder
/// equilibrium gap, which sits below any converged equilibrium spacing of
/// slender fibers interacting through the disk-based composite.
pub fn default_regularization_gap(
    phi_eq: f64,
    r_eq: f64,
    pair: &CrossSectionPair,
) -> Result<f64> {
    Ok(lj_cylinder_characteristics(phi_eq, r_eq, pair)?.g_eq)
}

// =============================================================================
// Analytic reference curves (van der Waals)
// =============================================================================

/// The closed-form van der Waals reference cases for two parallel or
/// perpendicular cylinders and two parallel disks, in their small-separation
/// (`*Ss`, argument = surface gap `g`) and large-separation (`*Ls`, argument
/// = centroid/axis distance `d`) asymptotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceCase {
    /// Parallel cylinders, small separation: `-A/24 sqrt(2R1R2/(R1+R2)) g^(-3/2)`
    /// (energy per unit length).
    CylParSs,
    /// Parallel cylinders, large separation: `-3 pi/8 A R1^2 R2^2 d^(-5)`
    /// (energy per unit length).
    CylParLs,
    /// Perpendicular cylinders, small separation: `-A/6 sqrt(R1 R2) g^(-1)`
    /// (energy).
    CylPerpSs,
    /// Perpendicular cylinders, large separation: `-pi/2 A R1^2 R2^2 d^(-4)`
    /// (energy).
    CylPerpLs,
    /// Parallel disks, small separation: `-3A/256 sqrt(2R1R2/(R1+R2)) g^(-5/2)`
    /// (energy per unit length squared).
    DiskParSs,
    /// Parallel disks, large separation: `-A R1^2 R2^2 d^(-6)`
    /// (energy per unit length squared).
    DiskParLs,
}

impl ReferenceCase {
    /// The power-law exponent of the case (`value ∝ sep^exponent`).
    pub fn exponent(&self) -> f64 {
        match self {
            ReferenceCase::CylParSs => -1.5,
            ReferenceCase::CylParLs => -5.0,
            ReferenceCase::CylPerpSs => -1.0,
            ReferenceCase::CylPerpLs => -4.0,
            ReferenceCase::DiskParSs => -2.5,
            ReferenceCase::DiskParLs => -6.0,
        }
    }

    /// True when `sep` is a surface gap; false when a centroid distance.
    pub fn uses_gap(&self) -> bool {
        matches!(
            self,
            ReferenceCase::CylParSs | ReferenceCase::CylPerpSs | ReferenceCase::DiskParSs
        )
    }
}

/// Evaluate a closed-form van der Waals reference curve at separation `sep`
/// (surface gap for `*Ss` cases, centroid/axis distance for `*Ls` cases).
///
/// # Errors
///
/// The pair must carry a Hamaker constant, and `sep > 0`.
pub fn analytic_reference(case: ReferenceCase, pair: &CrossSectionPair, sep: f64) -> Result<f64> {
    let a_ham = pair.hamaker_required()?;
    if !(sep > 0.0) {
        return Err(Error::parameter(
            "sep",
            format!("separation must be positive, got {sep}"),
        ));
    }
    let pi = std::f64::consts::PI;
    let r1 = pair.r1;
    let r2 = pair.r2;
    let rr = r1 * r1 * r2 * r2;
    let value = match case {
        ReferenceCase::CylParSs => {
            -a_ham / 24.0 * pair.effective_radius_factor() * powe(sep, -1.5)
        }
        ReferenceCase::CylParLs => -3.0 * pi / 8.0 * a_ham * rr * powe(sep, -5.0),
        ReferenceCase::CylPerpSs => -a_ham / 6.0 * (r1 * r2).sqrt() / sep,
        ReferenceCase::CylPerpLs => -0.5 * pi * a_ham * rr * powe(sep, -4.0),
        ReferenceCase::DiskParSs => {
            -3.0 * a_ham / 256.0 * pair.effective_radius_factor() * powe(sep, -2.5)
        }
        ReferenceCase::DiskParLs => -a_ham * rr * powe(sep, -6.0),
    };
    Ok(value)
}
