//! Element-pair interaction: potential, residual blocks, and consistent
//! stiffness blocks via two nested 1D Gauss loops.
//!
//! For two beam elements with centerlines `r1(xi1)`, `r2(xi2)` and a section
//! law `pi(arg)` (argument = surface gap or centroid distance, see
//! [`SsipLaw::uses_gap`]), the pair potential is
//!
//! ```text
//! Pi = int int pi(arg(xi1, xi2)) J1 J2 dxi2 dxi1
//! ```
//!
//! with reference-configuration Jacobians `J`. Writing `d = |r1 - r2|`,
//! `u = (r1 - r2)/d`, and `H` for the 3x12 Hermite interpolation matrix of
//! an element, the exact first and second derivatives with respect to the
//! two elements' DOF vectors are
//!
//! ```text
//! res1 =  int int  pi' * H1^T u          k11 =  int int H1^T M H1
//! res2 = -int int  pi' * H2^T u          k12 = -int int H1^T M H2 = k21^T
//!                                        k22 =  int int H2^T M H2
//! M = (pi'/d)(I - u u^T) + pi'' u u^T
//! ```
//!
//! (quadrature weights and Jacobians omitted). The residual blocks are the
//! potential's gradient — they enter a Newton residual directly; interaction
//! *forces* are their negatives. All blocks share one kernel so the
//! gap-vs-distance distinction lives entirely in the law.

use crate::geometry::{gap_state, hermite_basis, jacobian, BeamElement};
use crate::potentials::{ssip_eval2, SsipLaw};
use crate::quadrature::QuadratureRule;
use crate::{Error, Result};
use nalgebra::{Matrix3, SMatrix, SVector, Vector3};

/// One element's quadrature-point data for the pair loops.
struct GpData {
    r: Vector3<f64>,
    h: [f64; 4],
    /// Quadrature weight times reference Jacobian.
    wj: f64,
    xi: f64,
}

fn element_table(e: &BeamElement, rule: &QuadratureRule) -> Result<Vec<GpData>> {
    let mut table = Vec::with_capacity(rule.len());
    for q in rule.points() {
        let he = hermite_basis(q.xi, e.ref_length)?;
        let r = he.position(&e.node_a, &e.node_b);
        let j = jacobian(e, q.xi)?;
        table.push(GpData {
            r,
            h: he.h,
            wj: q.w * j,
            xi: q.xi,
        });
    }
    Ok(table)
}

/// Everything a pair contributes to an equilibrium iteration: the potential,
/// the two 12-DOF residual blocks (gradient of the potential), and the four
/// consistent stiffness blocks (Jacobian of the residuals). DOF order per
/// element: `[pos_a, tan_a, pos_b, tan_b]` (three components each).
#[derive(Debug, Clone)]
pub struct PairContribution {
    /// Interaction potential of the element pair.
    pub potential: f64,
    /// Gradient w.r.t. element 1 DOFs.
    pub res1: SVector<f64, 12>,
    /// Gradient w.r.t. element 2 DOFs.
    pub res2: SVector<f64, 12>,
    /// d res1 / d q1.
    pub k11: SMatrix<f64, 12, 12>,
    /// d res1 / d q2.
    pub k12: SMatrix<f64, 12, 12>,
    /// d res2 / d q1 (equals `k12` transposed).
    pub k21: SMatrix<f64, 12, 12>,
    /// d res2 / d q2.
    pub k22: SMatrix<f64, 12, 12>,
}

impl PairContribution {
    fn zero() -> PairContribution {
        PairContribution {
            potential: 0.0,
            res1: SVector::zeros(),
            res2: SVector::zeros(),
            k11: SMatrix::zeros(),
            k12: SMatrix::zeros(),
            k21: SMatrix::zeros(),
            k22: SMatrix::zeros(),
        }
    }
}

/// How much of the contribution a kernel pass computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Depth {
    Potential,
    Residual,
    Full,
}

fn kernel(
    e1: &BeamElement,
    e2: &BeamElement,
    law: &SsipLaw,
    rule: &QuadratureRule,
    depth: Depth,
) -> Result<PairContribution> {
    let t1 = element_table(e1, rule)?;
    let t2 = element_table(e2, rule)?;
    let uses_gap = law.uses_gap();
    let offset = e1.radius + e2.radius;
    let mut out = PairContribution::zero();

    for p1 in &t1 {
        for p2 in &t2 {
            let gs = gap_state(&p1.r, &p2.r, e1.radius, e2.radius).map_err(|_| {
                Error::SingularGap {
                    g: -offset,
                    xi1: p1.xi,
                    xi2: p2.xi,
                }
            })?;
            let arg = if uses_gap { gs.g } else { gs.d };
            let ev = ssip_eval2(law, arg).map_err(|e| match e {
                Error::LawDomain { .. } => Error::SingularGap {
                    g: gs.g,
                    xi1: p1.xi,
                    xi2: p2.xi,
                },
                other => other,
            })?;
            let w = p1.wj * p2.wj;
            out.potential += w * ev.value;
            if depth == Depth::Potential {
                continue;
            }

            // res1 += w pi' H1^T u ; res2 -= w pi' H2^T u
            let fu = (w * ev.d1) * gs.u;
            for i in 0..4 {
                let a1 = p1.h[i];
                let a2 = p2.h[i];
                for c in 0..3 {
                    out.res1[3 * i + c] += a1 * fu[c];
                    out.res2[3 * i + c] -= a2 * fu[c];
                }
            }
            if depth != Depth::Full {
                continue;
            }

            // M = (pi'/d)(I - u u^T) + pi'' u u^T, scaled by the weight.
            let t = ev.d1 / gs.d;
            let uu = gs.u * gs.u.transpose();
            let m: Matrix3<f64> =
                (w * t) * Matrix3::identity() + (w * (ev.d2 - t)) * uu;
            for i in 0..4 {
                for j in 0..4 {
                    let c11 = p1.h[i] * p1.h[j];
                    let c12 = p1.h[i] * p2.h[j];
                    let c22 = p2.h[i] * p2.h[j];
                    for a in 0..3 {
                        for b in 0..3 {
                            let mab = m[(a, b)];
                            out.k11[(3 * i + a, 3 * j + b)] += c11 * mab;
                            out.k12[(3 * i + a, 3 * j + b)] -= c12 * mab;
                            out.k22[(3 * i + a, 3 * j + b)] += c22 * mab;
                        }
                    }
                }
            }
        }
    }
    if depth == Depth::Full {
        out.k21 = out.k12.transpose();
    }
    Ok(out)
}

/// Interaction potential of an element pair.
///
/// # Errors
///
/// A nonpositive gap (or coincident centerline points) at any quadrature
/// point pair of an unregularized law is reported as
/// [`Error::SingularGap`] with the offending `(xi1, xi2)`.
pub fn pair_potential(
    e1: &BeamElement,
    e2: &BeamElement,
    law: &SsipLaw,
    rule: &QuadratureRule,
) -> Result<f64> {
    Ok(kernel(e1, e2, law, rule, Depth::Potential)?.potential)
}

/// Residual blocks (potential gradient) of an element pair.
pub fn pair_residual(
    e1: &BeamElement,
    e2: &BeamElement,
    law: &SsipLaw,
    rule: &QuadratureRule,
) -> Result<(SVector<f64, 12>, SVector<f64, 12>)> {
    let c = kernel(e1, e2, law, rule, Depth::Residual)?;
    Ok((c.res1, c.res2))
}

/// Consistent stiffness blocks `(k11, k12, k21, k22)` of an element pair.
#[allow(clippy::type_complexity)]
pub fn pair_stiffness(
    e1: &BeamElement,
    e2: &BeamElement,
    law: &SsipLaw,
    rule: &QuadratureRule,
) -> Result<(
    SMatrix<f64, 12, 12>,
    SMatrix<f64, 12, 12>,
    SMatrix<f64, 12, 12>,
    SMatrix<f64, 12, 12>,
)> {
    let c = kernel(e1, e2, law, rule, Depth::Full)?;
    Ok((c.k11, c.k12, c.k21, c.k22))
}

/// Potential, residuals, and stiffness blocks in one pass (what assembly
/// consumes).
pub fn pair_contribution(
    e1: &BeamElement,
    e2: &BeamElement,
    law: &SsipLaw,
    rule: &QuadratureRule,
) -> Result<PairContribution> {
    kernel(e1, e2, law, rule, Depth::Full)
}

/// Interaction line load this pair exerts at each element's quadrature
/// points: the distributed force per unit reference length,
/// `f_1(xi1) = -int pi'(arg) u J2 dxi2` on element 1 (and with opposite
/// sign of `u` on element 2). Accumulating over all partner elements gives
/// the total vectorial line load on a fiber.
///
/// Returns one `(xi, load)` list per element, ordered like the rule.
#[allow(clippy::type_complexity)]
pub fn pair_line_loads(
    e1: &BeamElement,
    e2: &BeamElement,
    law: &SsipLaw,
    rule: &QuadratureRule,
) -> Result<(Vec<(f64, Vector3<f64>)>, Vec<(f64, Vector3<f64>)>)> {
    let t1 = element_table(e1, rule)?;
    let t2 = element_table(e2, rule)?;
    let uses_gap = law.uses_gap();
    let mut l1: Vec<(f64, Vector3<f64>)> = t1.iter().map(|p| (p.xi, Vector3::zeros())).collect();
    let mut l2: Vec<(f64, Vector3<f64>)> = t2.iter().map(|p| (p.xi, Vector3::zeros())).collect();
    for (i1, p1) in t1.iter().enumerate() {
        for (i2, p2) in t2.iter().enumerate() {
            let gs = gap_state(&p1.r, &p2.r, e1.radius, e2.radius).map_err(|_| {
                Error::SingularGap {
                    g: -(e1.radius + e2.radius),
                    xi1: p1.xi,
                    xi2: p2.xi,
                }
            })?;
            let arg = if uses_gap { gs.g } else { gs.d };
            let ev = ssip_eval2(law, arg).map_err(|e| match e {
                Error::LawDomain { .. } => Error::SingularGap {
                    g: gs.g,
                    xi1: p1.xi,
                    xi2: p2.xi,
                },
                other => other,
            })?;
            l1[i1].1 -= (p2.wj * ev.d1) * gs.u;
            l2[i2].1 += (p1.wj * ev.d1) * gs.u;
        }
    }
    Ok((l1, l2))
}

/// Worst-case relative deviation of the analytic residual from central
/// differences of the potential, and of the analytic stiffness from central
/// differences of the residual, over all 24 DOFs of the pair.
///
/// The per-DOF step is `h * max(1, |dof|)`; errors are normalized by the
/// largest analytic entry of the respective block, so the result is a
/// diagnostic that grows with `h` (truncation) or shrinks toward the
/// round-off floor.
pub fn fd_verify(
    e1: &BeamElement,
    e2: &BeamElement,
    law: &SsipLaw,
    rule: &QuadratureRule,
    h: f64,
) -> Result<(f64, f64)> {
    if !(h > 0.0) {
        return Err(Error::parameter(
            "h",
            format!("finite-difference step must be positive, got {h}"),
        ));
    }
    let c = kernel(e1, e2, law, rule, Depth::Full)?;
    let res_scale = c.res1.amax().max(c.res2.amax()).max(1e-300);
    let k_scale = c
        .k11
        .amax()
        .max(c.k12.amax())
        .max(c.k22.amax())
        .max(1e-300);

    let mut err_res: f64 = 0.0;
    let mut err_stiff: f64 = 0.0;
    let perturbed = |which: usize, dof: usize, delta: f64| -> (BeamElement, BeamElement) {
        let mut p1 = e1.clone();
        let mut p2 = e2.clone();
        let target = if which == 0 { &mut p1 } else { &mut p2 };
        let mut q = target.dofs();
        q[dof] += delta;
        target.set_dofs(&q);
        (p1, p2)
    };

    for which in 0..2 {
        let base = if which == 0 { e1.dofs() } else { e2.dofs() };
        for dof in 0..12 {
            let step = h * base[dof].abs().max(1.0);
            let (a1, a2) = perturbed(which, dof, step);
            let (b1, b2) = perturbed(which, dof, -step);
            let plus = kernel(&a1, &a2, law, rule, Depth::Residual)?;
            let minus = kernel(&b1, &b2, law, rule, Depth::Residual)?;
            let inv = 1.0 / (2.0 * step);

            // Residual check: d potential / d dof.
            let fd_pot = (plus.potential - minus.potential) * inv;
            let analytic = if which == 0 {
                c.res1[dof]
            } else {
                c.res2[dof]
            };
            err_res = err_res.max((fd_pot - analytic).abs() / res_scale);

            // Stiffness check: d res / d dof fills one column of two blocks.
            let dres1 = (plus.res1 - minus.res1) * inv;
            let dres2 = (plus.res2 - minus.res2) * inv;
            for row in 0..12 {
                let (an1, an2) = if which == 0 {
                    (c.k11[(row, dof)], c.k21[(row, dof)])
                } else {
                    (c.k12[(row, dof)], c.k22[(row, dof)])
                };
                err_stiff = err_stiff.max((dres1[row] - an1).abs() / k_scale);
                err_stiff = err_stiff.max((dres2[row] - an2).abs() / k_scale);
            }
        }
    }
    Ok((err_res, err_stiff))
}
