//! Centerline elastic model: axial stretch plus bending on the cubic
//! Hermite centerline (no shear, no torsion).
//!
//! The internal potential of one element is
//!
//! ```text
//! E = int [ 1/2 EA eps^2 + 1/2 EI kappa^2 ] J0 dxi
//! eps   = |r'| / |r0'| - 1            (axial Green-like stretch measure)
//! kappa = |r' x r''| / |r'|^3         (spatial curvature)
//! ```
//!
//! with `'` denoting d/dxi and `J0 = |r0'|` the reference Jacobian, so both
//! measures vanish in the reference configuration of a straight element and
//! are objective under rigid-body motion. Residual (exact gradient) and
//! stiffness (exact Hessian) are derived in closed form; the curvature term
//! is formulated through `n2 = |r' x r''|^2`, a polynomial in the DOFs, so
//! every quantity stays smooth where the element is momentarily straight.

use crate::geometry::{hermite_basis, jacobian, BeamElement};
use crate::quadrature::QuadratureRule;
use crate::{Error, Result};
use nalgebra::{Matrix3, SMatrix, SVector, Vector3};

/// Section stiffness constants of the centerline model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticParams {
    /// Axial stiffness `EA` (force).
    pub ea: f64,
    /// Bending stiffness `EI` (force * length^2).
    pub ei: f64,
}

impl ElasticParams {
    /// Validate and build from explicit stiffnesses.
    pub fn new(ea: f64, ei: f64) -> Result<ElasticParams> {
        if !(ea > 0.0) || !ea.is_finite() {
            return Err(Error::parameter(
                "ea",
                format!("axial stiffness must be positive and finite, got {ea}"),
            ));
        }
        if !(ei > 0.0) || !ei.is_finite() {
            return Err(Error::parameter(
                "ei",
                format!("bending stiffness must be positive and finite, got {ei}"),
            ));
        }
        Ok(ElasticParams { ea, ei })
    }

    /// Circular-section constants from a Young's modulus and radius:
    /// `EA = E pi R^2`, `EI = E pi R^4 / 4`.
    pub fn circular_section(young: f64, radius: f64) -> Result<ElasticParams> {
        if !(young > 0.0) || !young.is_finite() {
            return Err(Error::parameter(
                "young",
                format!("Young's modulus must be positive and finite, got {young}"),
            ));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::parameter(
                "radius",
                format!("section radius must be positive and finite, got {radius}"),
            ));
        }
        let area = std::f64::consts::PI * radius * radius;
        let inertia = area * radius * radius / 4.0;
        ElasticParams::new(young * area, young * inertia)
    }
}

/// Energy, residual (gradient), and stiffness (Hessian) contributions of one
/// quadrature point's energy density with respect to `v = r'` and `w = r''`.
struct DensityDerivs {
    e: f64,
    de_dv: Vector3<f64>,
    de_dw: Vector3<f64>,
    d2_vv: Matrix3<f64>,
    d2_vw: Matrix3<f64>,
    d2_ww: Matrix3<f64>,
}

fn density(
    v: &Vector3<f64>,
    w: &Vector3<f64>,
    j0: f64,
    p: &ElasticParams,
) -> Result<DensityDerivs> {
    let s2 = v.norm_squared();
    let s = s2.sqrt();
    if !(s > 0.0) {
        return Err(Error::parameter(
            "element",
            "degenerate configuration: vanishing centerline tangent".to_string(),
        ));
    }
    let vhat = v / s;
    let eye = Matrix3::identity();

    // Axial: E_a = 1/2 EA eps^2 J0, eps = s/J0 - 1.
    let eps = s / j0 - 1.0;
    let de_deps = p.ea * eps * j0;
    // d eps/dv = vhat / J0 ; d2 eps/dv2 = (I - vhat vhat^T)/(s J0).
    let proj = eye - vhat * vhat.transpose();
    let mut e = 0.5 * p.ea * eps * eps * j0;
    let mut de_dv = (de_deps / j0) * vhat;
    let mut d2_vv: Matrix3<f64> =
        (p.ea / j0) * vhat * vhat.transpose() + (de_deps / (s * j0)) * proj;

    // Bending: E_b = alpha n2 t with alpha = 1/2 EI J0, n2 = |v x w|^2,
    // t = s^-6. n2 = s2 |w|^2 - (v.w)^2 keeps everything polynomial in
    // (v, w); t carries the arc-length normalization.
    let alpha = 0.5 * p.ei * j0;
    let wn2 = w.norm_squared();
    let vw = v.dot(w);
    let n2 = (s2 * wn2 - vw * vw).max(0.0);
    let t = 1.0 / (s2 * s2 * s2);
    let dt_dv = (-6.0 * t / s2) * v;
    let dn2_dv = 2.0 * (wn2 * v - vw * w);
    let dn2_dw = 2.0 * (s2 * w - vw * v);

    e += alpha * n2 * t;
    de_dv += alpha * (t * dn2_dv + n2 * dt_dv);
    let de_dw = (alpha * t) * dn2_dw;

    // Second derivatives.
    let d2n2_vv = 2.0 * wn2 * eye - 2.0 * w * w.transpose();
    let d2n2_ww = 2.0 * s2 * eye - 2.0 * v * v.transpose();
    // d/dw of dn2/dv.
    let d2n2_vw = 4.0 * v * w.transpose() - 2.0 * w * v.transpose() - 2.0 * vw * eye;
    let d2t_vv = (-6.0 * t / s2) * eye + (48.0 * t / (s2 * s2)) * v * v.transpose();

    d2_vv += alpha
        * (t * d2n2_vv
            + dn2_dv * dt_dv.transpose()
            + dt_dv * dn2_dv.transpose()
            + n2 * d2t_vv);
    let d2_vw = alpha * (t * d2n2_vw + dt_dv * dn2_dw.transpose());
    let d2_ww = (alpha * t) * d2n2_ww;

    Ok(DensityDerivs {
        e,
        de_dv,
        de_dw,
        d2_vv,
        d2_vw,
        d2_ww,
    })
}

/// Elastic energy, its exact gradient, and its exact Hessian with respect to
/// the element's 12 DOFs (`[pos_a, tan_a, pos_b, tan_b]`), integrated with a
/// single-segment Gauss rule of the given order.
///
/// # Errors
///
/// Rejects non-positive quadrature order, degenerate reference geometry
/// (non-positive Jacobian), and configurations with a vanishing tangent.
pub fn elastic_energy_residual_stiffness(
    elem: &BeamElement,
    p: &ElasticParams,
    gauss_order: usize,
) -> Result<(f64, SVector<f64, 12>, SMatrix<f64, 12, 12>)> {
    let rule = QuadratureRule::new(1, gauss_order)?;
    let mut energy = 0.0;
    let mut res = SVector::<f64, 12>::zeros();
    let mut k = SMatrix::<f64, 12, 12>::zeros();

    for q in rule.points() {
        let he = hermite_basis(q.xi, elem.ref_length)?;
        let v = he.first_derivative(&elem.node_a, &elem.node_b);
        let w = he.second_derivative(&elem.node_a, &elem.node_b);
        let j0 = jacobian(elem, q.xi)?;
        let d = density(&v, &w, j0, p)?;

        energy += q.w * d.e;
        for i in 0..4 {
            let (ai, bi) = (he.dh[i], he.d2h[i]);
            for a in 0..3 {
                res[3 * i + a] += q.w * (ai * d.de_dv[a] + bi * d.de_dw[a]);
            }
            for j in 0..4 {
                let (aj, bj) = (he.dh[j], he.d2h[j]);
                for a in 0..3 {
                    for b in 0..3 {
                        k[(3 * i + a, 3 * j + b)] += q.w
                            * (ai * aj * d.d2_vv[(a, b)]
                                + ai * bj * d.d2_vw[(a, b)]
                                + bi * aj * d.d2_vw[(b, a)]
                                + bi * bj * d.d2_ww[(a, b)]);
                    }
                }
            }
        }
    }
    Ok((energy, res, k))
}

/// Default Gauss order for elastic terms.
pub const ELASTIC_GAUSS_ORDER: usize = 4;
