//! Centerline geometry: cubic Hermite elements, kinematics, and gap states.
//!
//! A fiber centerline element interpolates positions and tangents of its two
//! end nodes with cubic Hermite polynomials on the reference coordinate
//! `xi in [-1, 1]`:
//!
//! ```text
//! r(xi) = H_d1 p_a + (l/2) H_t1 t_a + H_d2 p_b + (l/2) H_t2 t_b
//! ```
//!
//! with the standard shape functions
//!
//! ```text
//! H_d1 = (2 - 3 xi + xi^3)/4        H_d2 = (2 + 3 xi - xi^3)/4
//! H_t1 = (1 - xi - xi^2 + xi^3)/4   H_t2 = (-1 - xi + xi^2 + xi^3)/4
//! ```
//!
//! The tangent functions are premultiplied by `l/2` (half the element
//! reference length) so that, for unit nodal tangents, `dr/ds` at the nodes
//! equals the nodal tangent: `H_t1' = 1` at `xi = -1` and the affine map
//! `s = (l/2)(xi + 1)` absorbs the scaling. A straight element with unit
//! nodal tangents reproduces the straight line exactly and has a constant
//! Jacobian `l/2`.
//!
//! Degrees of freedom per element are ordered
//! `[pos_a (3), tan_a (3), pos_b (3), tan_b (3)]`, matching the entry order
//! of [`HermiteEval::h`].

use nalgebra::{SVector, Vector3};

use crate::{Error, Result};

// =============================================================================
// Nodes and elements
// =============================================================================

/// The six degrees of freedom of a centerline node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeDof {
    /// Nodal position.
    pub pos: Vector3<f64>,
    /// Nodal tangent (not required to be unit length away from the reference
    /// configuration; the reference tangents of meshed straight fibers are
    /// unit vectors).
    pub tan: Vector3<f64>,
}

impl NodeDof {
    /// Construct from position and tangent.
    pub fn new(pos: Vector3<f64>, tan: Vector3<f64>) -> Self {
        NodeDof { pos, tan }
    }
}

/// A two-node cubic Hermite centerline element of a circular fiber.
///
/// Carries both the current nodal data (`node_a`, `node_b`) and the reference
/// nodal data (`node_a0`, `node_b0`); the reference configuration defines the
/// arclength Jacobian for all integrals.
#[derive(Debug, Clone)]
pub struct BeamElement {
    /// Current state of the first node (`xi = -1`).
    pub node_a: NodeDof,
    /// Current state of the second node (`xi = +1`).
    pub node_b: NodeDof,
    /// Reference state of the first node.
    pub node_a0: NodeDof,
    /// Reference state of the second node.
    pub node_b0: NodeDof,
    /// Cross-section radius (`> 0`).
    pub radius: f64,
    /// Reference element length used for the `l/2` tangent scaling (`> 0`).
    pub ref_length: f64,
    /// Index into the material table of the owning model.
    pub material_id: usize,
}

impl BeamElement {
    /// Create an element whose current state coincides with the reference.
    pub fn new(
        node_a0: NodeDof,
        node_b0: NodeDof,
        radius: f64,
        ref_length: f64,
        material_id: usize,
    ) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::parameter(
                "radius",
                format!("must be positive and finite, got {radius}"),
            ));
        }
        if !(ref_length > 0.0) || !ref_length.is_finite() {
            return Err(Error::parameter(
                "ref_length",
                format!("must be positive and finite, got {ref_length}"),
            ));
        }
        Ok(BeamElement {
            node_a: node_a0,
            node_b: node_b0,
            node_a0,
            node_b0,
            radius,
            ref_length,
            material_id,
        })
    }

    /// Straight element between two points with unit tangents along the
    /// connecting line; reference length is the point distance.
    pub fn straight(p0: Vector3<f64>, p1: Vector3<f64>, radius: f64, material_id: usize) -> Result<Self> {
        let chord = p1 - p0;
        let l = chord.norm();
        if l == 0.0 {
            return Err(Error::DegenerateElement {
                detail: "straight element endpoints coincide".to_string(),
            });
        }
        let t = chord / l;
        BeamElement::new(
            NodeDof::new(p0, t),
            NodeDof::new(p1, t),
            radius,
            l,
            material_id,
        )
    }

    /// Current DOFs as one 12-vector `[pos_a, tan_a, pos_b, tan_b]`.
    pub fn dofs(&self) -> SVector<f64, 12> {
        let mut q = SVector::<f64, 12>::zeros();
        q.fixed_rows_mut::<3>(0).copy_from(&self.node_a.pos);
        q.fixed_rows_mut::<3>(3).copy_from(&self.node_a.tan);
        q.fixed_rows_mut::<3>(6).copy_from(&self.node_b.pos);
        q.fixed_rows_mut::<3>(9).copy_from(&self.node_b.tan);
        q
    }

    /// Overwrite the current DOFs from a 12-vector.
    pub fn set_dofs(&mut self, q: &SVector<f64, 12>) {
        self.node_a.pos = q.fixed_rows::<3>(0).into();
        self.node_a.tan = q.fixed_rows::<3>(3).into();
        self.node_b.pos = q.fixed_rows::<3>(6).into();
        self.node_b.tan = q.fixed_rows::<3>(9).into();
    }
}

// =============================================================================
// Hermite basis
// =============================================================================

/// Hermite shape functions and their first and second `xi`-derivatives at one
/// point, with the tangent functions already scaled by `l/2`.
///
/// Entry order matches the element DOF blocks:
/// `[H_d1, (l/2) H_t1, H_d2, (l/2) H_t2]`.
#[derive(Debug, Clone, Copy)]
pub struct HermiteEval {
    /// Shape function values.
    pub h: [f64; 4],
    /// First derivatives with respect to `xi`.
    pub dh: [f64; 4],
    /// Second derivatives with respect to `xi`.
    pub d2h: [f64; 4],
}

/// Evaluate the cubic Hermite basis at `xi in [-1, 1]` for an element of
/// reference length `l`.
///
/// # Errors
///
/// `xi` outside [-1, 1] or a nonpositive `l` is rejected.
pub fn hermite_basis(xi: f64, l: f64) -> Result<HermiteEval> {
    if !(-1.0..=1.0).contains(&xi) {
        return Err(Error::XiOutOfRange { xi });
    }
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::parameter(
            "l",
            format!("element length must be positive and finite, got {l}"),
        ));
    }
    let s = 0.5 * l;
    let xi2 = xi * xi;
    let xi3 = xi2 * xi;
    let h = [
        0.25 * (2.0 - 3.0 * xi + xi3),
        s * 0.25 * (1.0 - xi - xi2 + xi3),
        0.25 * (2.0 + 3.0 * xi - xi3),
        s * 0.25 * (-1.0 - xi + xi2 + xi3),
    ];
    let dh = [
        0.25 * (-3.0 + 3.0 * xi2),
        s * 0.25 * (-1.0 - 2.0 * xi + 3.0 * xi2),
        0.25 * (3.0 - 3.0 * xi2),
        s * 0.25 * (-1.0 + 2.0 * xi + 3.0 * xi2),
    ];
    let d2h = [
        1.5 * xi,
        s * 0.5 * (3.0 * xi - 1.0),
        -1.5 * xi,
        s * 0.5 * (3.0 * xi + 1.0),
    ];
    Ok(HermiteEval { h, dh, d2h })
}

impl HermiteEval {
    /// Combine the four 3-vector DOF blocks with the given coefficient row.
    #[inline]
    fn combine(
        coef: &[f64; 4],
        pa: &Vector3<f64>,
        ta: &Vector3<f64>,
        pb: &Vector3<f64>,
        tb: &Vector3<f64>,
    ) -> Vector3<f64> {
        coef[0] * pa + coef[1] * ta + coef[2] * pb + coef[3] * tb
    }

    /// Interpolated position for the given nodal data.
    #[inline]
    pub fn position(&self, a: &NodeDof, b: &NodeDof) -> Vector3<f64> {
        Self::combine(&self.h, &a.pos, &a.tan, &b.pos, &b.tan)
    }

    /// Interpolated first `xi`-derivative for the given nodal data.
    #[inline]
    pub fn first_derivative(&self, a: &NodeDof, b: &NodeDof) -> Vector3<f64> {
        Self::combine(&self.dh, &a.pos, &a.tan, &b.pos, &b.tan)
    }

    /// Interpolated second `xi`-derivative for the given nodal data.
    #[inline]
    pub fn second_derivative(&self, a: &NodeDof, b: &NodeDof) -> Vector3<f64> {
        Self::combine(&self.d2h, &a.pos, &a.tan, &b.pos, &b.tan)
    }
}

// =============================================================================
// Centerline kinematics
// =============================================================================

/// Evaluate the current centerline at `xi`: position, first and second
/// `xi`-derivatives.
pub fn eval_centerline(
    elem: &BeamElement,
    xi: f64,
) -> Result<(Vector3<f64>, Vector3<f64>, Vector3<f64>)> {
    let basis = hermite_basis(xi, elem.ref_length)?;
    Ok((
        basis.position(&elem.node_a, &elem.node_b),
        basis.first_derivative(&elem.node_a, &elem.node_b),
        basis.second_derivative(&elem.node_a, &elem.node_b),
    ))
}

/// Evaluate the *reference* centerline at `xi`: position, first and second
/// `xi`-derivatives.
pub fn eval_centerline_ref(
    elem: &BeamElement,
    xi: f64,
) -> Result<(Vector3<f64>, Vector3<f64>, Vector3<f64>)> {
    let basis = hermite_basis(xi, elem.ref_length)?;
    Ok((
        basis.position(&elem.node_a0, &elem.node_b0),
        basis.first_derivative(&elem.node_a0, &elem.node_b0),
        basis.second_derivative(&elem.node_a0, &elem.node_b0),
    ))
}

/// Arclength Jacobian `J(xi) = |dr0/dxi|` of the reference configuration.
///
/// For a straight element with unit nodal tangents this is exactly `l/2`.
///
/// # Errors
///
/// A Jacobian at or below `1e-12 * ref_length` marks a degenerate element.
pub fn jacobian(elem: &BeamElement, xi: f64) -> Result<f64> {
    let basis = hermite_basis(xi, elem.ref_length)?;
    let j = basis
        .first_derivative(&elem.node_a0, &elem.node_b0)
        .norm();
    if j <= 1e-12 * elem.ref_length {
        return Err(Error::DegenerateElement {
            detail: format!("reference Jacobian {j:.3e} at xi = {xi} is (near) zero"),
        });
    }
    Ok(j)
}

// =============================================================================
// Gap state between two cross-sections
// =============================================================================

/// Relative kinematics of two circular cross-sections: centroid distance,
/// surface gap, and the unit separation direction.
#[derive(Debug, Clone, Copy)]
pub struct GapState {
    /// Centroid distance `d = |r1 - r2|`.
    pub d: f64,
    /// Surface gap `g = d - R1 - R2` (negative means overlap).
    pub g: f64,
    /// Unit vector from the second centroid toward the first:
    /// `u = (r1 - r2)/d`.
    pub u: Vector3<f64>,
}

/// Compute the [`GapState`] of two cross-section centroids with radii
/// `r1_radius`, `r2_radius`.
///
/// # Errors
///
/// Fails when the centroids (nearly) coincide — distance below
/// `1e-12 * max(R1, R2)` or exactly zero — since the separation direction is
/// then undefined. Overlapping surfaces (`g <= 0`) are *not* an error here;
/// singular laws reject them at evaluation time instead.
pub fn gap_state(
    r1: &Vector3<f64>,
    r2: &Vector3<f64>,
    r1_radius: f64,
    r2_radius: f64,
) -> Result<GapState> {
    debug_assert!(r1_radius > 0.0 && r2_radius > 0.0, "radii must be positive");
    let delta = r1 - r2;
    let d = delta.norm();
    if d == 0.0 || d < 1e-12 * r1_radius.max(r2_radius) {
        return Err(Error::CoincidentCentroids { d });
    }
    Ok(GapState {
        d,
        g: d - r1_radius - r2_radius,
        u: delta / d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn basis_values_at_element_midpoint() {
        // l = 2 so the tangent scaling factor is 1.
        let e = hermite_basis(0.0, 2.0).unwrap();
        assert_eq!(e.h, [0.5, 0.25, 0.5, -0.25]);
    }

    #[test]
    fn basis_interpolates_nodal_values_and_tangents() {
        let l = 3.7;
        let at_a = hermite_basis(-1.0, l).unwrap();
        assert_relative_eq!(at_a.h[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(at_a.h[1], 0.0, epsilon = 1e-15);
        assert_relative_eq!(at_a.h[2], 0.0, epsilon = 1e-15);
        assert_relative_eq!(at_a.h[3], 0.0, epsilon = 1e-15);
        // d/dxi of position at node a picks out the scaled tangent: the
        // tangent shape derivative is exactly l/2 there, the rest vanish.
        assert_relative_eq!(at_a.dh[0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(at_a.dh[1], 0.5 * l, epsilon = 1e-15);
        assert_relative_eq!(at_a.dh[2], 0.0, epsilon = 1e-15);
        assert_relative_eq!(at_a.dh[3], 0.0, epsilon = 1e-15);

        let at_b = hermite_basis(1.0, l).unwrap();
        assert_relative_eq!(at_b.h[2], 1.0, epsilon = 1e-15);
        assert_relative_eq!(at_b.dh[3], 0.5 * l, epsilon = 1e-15);
    }

    #[test]
    fn partition_of_unity_and_linear_completeness() {
        for i in 0..=20 {
            let xi = -1.0 + 0.1 * i as f64;
            let e = hermite_basis(xi, 1.3).unwrap();
            assert_relative_eq!(e.h[0] + e.h[2], 1.0, epsilon = 1e-14);
            assert_relative_eq!(e.dh[0] + e.dh[2], 0.0, epsilon = 1e-14);
            assert_relative_eq!(e.d2h[0] + e.d2h[2], 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn straight_element_is_reproduced_exactly() {
        let p0 = Vector3::new(1.0, -2.0, 0.5);
        let p1 = Vector3::new(4.0, 2.0, 0.5);
        let elem = BeamElement::straight(p0, p1, 0.1, 0).unwrap();
        let l = (p1 - p0).norm();
        assert_relative_eq!(elem.ref_length, 5.0, epsilon = 1e-15);
        for i in 0..=10 {
            let xi = -1.0 + 0.2 * i as f64;
            let (r, dr, ddr) = eval_centerline(&elem, xi).unwrap();
            let expect = p0 + (p1 - p0) * (0.5 * (xi + 1.0));
            assert_relative_eq!((r - expect).norm(), 0.0, epsilon = 1e-13);
            // Constant first derivative of magnitude l/2, zero curvature.
            assert_relative_eq!(dr.norm(), 0.5 * l, epsilon = 1e-13);
            assert_relative_eq!(ddr.norm(), 0.0, epsilon = 1e-13);
            assert_relative_eq!(jacobian(&elem, xi).unwrap(), 0.5 * l, epsilon = 1e-13);
        }
    }

    #[test]
    fn derivatives_match_finite_differences_on_curved_element() {
        // A genuinely curved element: bent tangents, non-colinear nodes.
        let a = NodeDof::new(Vector3::new(0.0, 0.0, 0.0), Vector3::new(1.0, 0.5, 0.0));
        let b = NodeDof::new(Vector3::new(2.0, 1.0, 0.3), Vector3::new(0.8, -0.2, 0.4));
        let elem = BeamElement::new(a, b, 0.05, 2.3, 0).unwrap();
        let h = 1e-6;
        for xi in [-0.8, -0.3, 0.1, 0.6, 0.9] {
            let (_, dr, ddr) = eval_centerline(&elem, xi).unwrap();
            let (rp, drp, _) = eval_centerline(&elem, xi + h).unwrap();
            let (rm, drm, _) = eval_centerline(&elem, xi - h).unwrap();
            let fd1 = (rp - rm) / (2.0 * h);
            let fd2 = (drp - drm) / (2.0 * h);
            assert!((fd1 - dr).norm() < 1e-9 * dr.norm().max(1.0));
            assert!((fd2 - ddr).norm() < 1e-9 * ddr.norm().max(1.0));
        }
    }

    #[test]
    fn rejects_out_of_domain_coordinates_and_bad_lengths() {
        assert!(hermite_basis(-1.0001, 1.0).is_err());
        assert!(hermite_basis(1.0001, 1.0).is_err());
        assert!(hermite_basis(f64::NAN, 1.0).is_err());
        assert!(hermite_basis(0.0, 0.0).is_err());
        assert!(hermite_basis(0.0, -1.0).is_err());
        assert!(BeamElement::straight(Vector3::zeros(), Vector3::zeros(), 0.1, 0).is_err());
    }

    #[test]
    fn gap_state_reports_distance_gap_and_direction() {
        let r1 = Vector3::new(0.0, 0.0, 0.0);
        let r2 = Vector3::new(3.0, 0.0, 0.0);
        let gs = gap_state(&r1, &r2, 1.0, 1.0).unwrap();
        assert_relative_eq!(gs.d, 3.0);
        assert_relative_eq!(gs.g, 1.0);
        assert_relative_eq!((gs.u - Vector3::new(-1.0, 0.0, 0.0)).norm(), 0.0);

        // Overlap is representable (negative gap), not an error.
        let gs2 = gap_state(&r1, &Vector3::new(1.5, 0.0, 0.0), 1.0, 1.0).unwrap();
        assert_relative_eq!(gs2.g, -0.5);

        // Coincident centroids are rejected.
        assert!(gap_state(&r1, &r1, 1.0, 1.0).is_err());
    }

    #[test]
    fn dof_roundtrip() {
        let a = NodeDof::new(Vector3::new(0.1, 0.2, 0.3), Vector3::new(1.0, 0.0, 0.0));
        let b = NodeDof::new(Vector3::new(1.1, 1.2, 1.3), Vector3::new(0.0, 1.0, 0.0));
        let mut elem = BeamElement::new(a, b, 0.2, 1.0, 3).unwrap();
        let q = elem.dofs();
        let mut q2 = q;
        q2[4] += 0.25;
        elem.set_dofs(&q2);
        assert_eq!(elem.node_a.tan.y, 0.25);
        assert_eq!(elem.dofs(), q2);
        // Reference nodes stay untouched.
        assert_eq!(elem.node_a0.pos, a.pos);
    }
}
