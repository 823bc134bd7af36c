//! Global assembly: elastic terms per element, interaction terms per
//! broad-phase pair, external loads scaled by the load factor.
//!
//! The assembled residual is the gradient of the total potential,
//!
//! ```text
//! R(u, lambda) = R_int(u) - lambda * R_ext + R_ia(u, lambda)
//! ```
//!
//! where the interaction part optionally scales with the load factor (the
//! charged-beams family of studies ramps interaction strength and external
//! load together). The tangent `K` is assembled from the same element and
//! pair kernels, so it is the exact Jacobian of `R`.

use crate::broadphase::{candidate_pairs, AdjacencyPolicy, BucketGrid};
use crate::elastic::{elastic_energy_residual_stiffness, ELASTIC_GAUSS_ORDER};
use crate::model::Model;
use crate::pair::pair_contribution;
use crate::potentials::SsipLaw;
use crate::quadrature::QuadratureRule;
use crate::Result;
use nalgebra::{DMatrix, DVector};

/// One interaction channel: a section law applied to broad-phase pairs.
#[derive(Debug, Clone)]
pub struct Interaction {
    /// Section-section law.
    pub law: SsipLaw,
    /// Per-element quadrature rule for pair integrals.
    pub rule: QuadratureRule,
    /// Broad-phase cutoff distance (`f64::INFINITY` = no cutoff).
    pub cutoff: f64,
    /// Same-fiber neighbor exclusion policy.
    pub policy: AdjacencyPolicy,
    /// Scale the law linearly with the load factor.
    pub scale_with_load_factor: bool,
    /// Bucket-grid cell size override (default: the cutoff, or four times
    /// the largest element radius when the cutoff is infinite).
    pub cell_size: Option<f64>,
}

impl Interaction {
    /// Interaction with default broad-phase settings and no load scaling.
    pub fn new(law: SsipLaw, rule: QuadratureRule) -> Interaction {
        Interaction {
            law,
            rule,
            cutoff: f64::INFINITY,
            policy: AdjacencyPolicy::ExcludeSharedNode,
            scale_with_load_factor: false,
            cell_size: None,
        }
    }
}

/// Result of one assembly pass.
#[derive(Debug, Clone)]
pub struct Assembled {
    /// Global residual (gradient of the total potential).
    pub residual: DVector<f64>,
    /// Exact tangent, if requested.
    pub stiffness: Option<DMatrix<f64>>,
    /// Elastic strain energy.
    pub elastic_energy: f64,
    /// Interaction potential (including any load-factor scaling).
    pub interaction_energy: f64,
    /// Per-axis sums of assembled interaction forces on position DOFs
    /// (zero for an exactly momentum-balanced discretization).
    pub interaction_force_sum: [f64; 3],
    /// Largest interaction force norm over nodes, for normalizing the sums.
    pub interaction_force_max: f64,
}

/// Assemble residual (and optionally the tangent) at the model's current
/// displacements and the given load factor.
pub fn assemble(
    model: &Model,
    interactions: &[Interaction],
    load_factor: f64,
    want_stiffness: bool,
) -> Result<Assembled> {
    let n = model.n_dofs();
    let mut residual = DVector::<f64>::zeros(n);
    let mut stiffness = want_stiffness.then(|| DMatrix::<f64>::zeros(n, n));
    let mut elastic_energy = 0.0;

    // Elastic terms.
    for (e_id, elem) in model.elements().iter().enumerate() {
        let p = model.material_of(e_id);
        let (energy, res, k) =
            elastic_energy_residual_stiffness(elem, p, ELASTIC_GAUSS_ORDER)?;
        elastic_energy += energy;
        let map = model.element_dof_map(e_id);
        for (a, &ga) in map.iter().enumerate() {
            residual[ga] += res[a];
        }
        if let Some(kg) = stiffness.as_mut() {
            for (a, &ga) in map.iter().enumerate() {
                for (b, &gb) in map.iter().enumerate() {
                    kg[(ga, gb)] += k[(a, b)];
                }
            }
        }
    }

    // External loads.
    residual.axpy(-load_factor, model.external_load(), 1.0);

    // Interaction terms.
    let mut interaction_energy = 0.0;
    let mut ia_residual = DVector::<f64>::zeros(n);
    let sites = model.sites();
    for ia in interactions {
        let law = if ia.scale_with_load_factor {
            ia.law.scaled(load_factor)
        } else {
            ia.law
        };
        let cell = ia.cell_size.unwrap_or_else(|| {
            if ia.cutoff.is_finite() && ia.cutoff > 0.0 {
                ia.cutoff
            } else {
                4.0 * model
                    .elements()
                    .iter()
                    .map(|e| e.radius)
                    .fold(0.0, f64::max)
                    .max(f64::MIN_POSITIVE)
            }
        });
        let grid = BucketGrid::build(sites.clone(), cell)?;
        let pairs = candidate_pairs(&grid, ia.cutoff, ia.policy)?;
        for (i, j) in pairs {
            let (i, j) = (i as usize, j as usize);
            let c = pair_contribution(
                &model.elements()[i],
                &model.elements()[j],
                &law,
                &ia.rule,
            )?;
            interaction_energy += c.potential;
            let map1 = model.element_dof_map(i);
            let map2 = model.element_dof_map(j);
            for (a, &ga) in map1.iter().enumerate() {
                ia_residual[ga] += c.res1[a];
            }
            for (a, &ga) in map2.iter().enumerate() {
                ia_residual[ga] += c.res2[a];
            }
            if let Some(kg) = stiffness.as_mut() {
                for a in 0..12 {
                    for b in 0..12 {
                        kg[(map1[a], map1[b])] += c.k11[(a, b)];
                        kg[(map1[a], map2[b])] += c.k12[(a, b)];
                        kg[(map2[a], map1[b])] += c.k21[(a, b)];
                        kg[(map2[a], map2[b])] += c.k22[(a, b)];
                    }
                }
            }
        }
    }

    // Momentum diagnostics over position DOFs (interaction forces are the
    // negatives of the assembled gradient entries; sums are sign-symmetric).
    let mut interaction_force_sum = [0.0; 3];
    let mut interaction_force_max: f64 = 0.0;
    for node in 0..model.n_nodes() {
        let mut norm2 = 0.0;
        for c in 0..3 {
            let v = ia_residual[6 * node + c];
            interaction_force_sum[c] += v;
            norm2 += v * v;
        }
        interaction_force_max = interaction_force_max.max(norm2.sqrt());
    }

    residual += &ia_residual;
    Ok(Assembled {
        residual,
        stiffness,
        elastic_energy,
        interaction_energy,
        interaction_force_sum,
        interaction_force_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elastic::ElasticParams;
    use crate::pair::pair_residual;
    use crate::potentials::CrossSectionPair;
    use approx::assert_relative_eq;
    use nalgebra::Vector3;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn coulomb_interaction(scale: bool) -> Interaction {
        let pair = CrossSectionPair::surface(0.02, 0.02, 1.0, -1.0).unwrap();
        let law = SsipLaw::long_range_monopole_surface(1.0, 1.0, &pair).unwrap();
        Interaction {
            law,
            rule: QuadratureRule::new(2, 5).unwrap(),
            cutoff: f64::INFINITY,
            policy: AdjacencyPolicy::ExcludeSameFiber,
            scale_with_load_factor: scale,
            cell_size: None,
        }
    }

    fn two_parallel_fibers(n_el: usize) -> Model {
        let mut m = Model::new();
        let mat = m.add_material(ElasticParams::new(100.0, 0.5).unwrap());
        m.add_fiber(Vector3::zeros(), Vector3::new(0.0, 5.0, 0.0), n_el, 0.02, mat)
            .unwrap();
        m.add_fiber(
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(1.0, 5.0, 0.0),
            n_el,
            0.02,
            mat,
        )
        .unwrap();
        m
    }

    #[test]
    fn reference_state_without_loads_is_equilibrated() {
        let m = two_parallel_fibers(3);
        let a = assemble(&m, &[], 0.0, true).unwrap();
        assert_eq!(a.residual.amax(), 0.0);
        assert_eq!(a.elastic_energy, 0.0);
        assert_eq!(a.interaction_energy, 0.0);
        // The elastic tangent is still nonzero (the structure resists).
        assert!(a.stiffness.unwrap().amax() > 0.0);
    }

    #[test]
    fn single_pair_scatters_pair_residual_exactly() {
        let mut m = Model::new();
        let mat = m.add_material(ElasticParams::new(100.0, 0.5).unwrap());
        m.add_fiber(Vector3::zeros(), Vector3::new(0.0, 1.0, 0.0), 1, 0.02, mat)
            .unwrap();
        m.add_fiber(
            Vector3::new(0.8, 0.0, 0.0),
            Vector3::new(0.8, 1.0, 0.0),
            1,
            0.02,
            mat,
        )
        .unwrap();
        let ia = coulomb_interaction(false);
        let a = assemble(&m, &[ia.clone()], 0.0, false).unwrap();
        let (r1, r2) = pair_residual(
            &m.elements()[0],
            &m.elements()[1],
            &ia.law,
            &ia.rule,
        )
        .unwrap();
        // Reference state: elastic part vanishes, so the global residual
        // restricted to the two elements' DOFs is exactly the pair output.
        let map1 = m.element_dof_map(0);
        let map2 = m.element_dof_map(1);
        for (a_loc, &g) in map1.iter().enumerate() {
            assert_eq!(a.residual[g], r1[a_loc]);
        }
        for (a_loc, &g) in map2.iter().enumerate() {
            assert_eq!(a.residual[g], r2[a_loc]);
        }
    }

    #[test]
    fn tangent_matches_finite_differences_of_residual() {
        let mut rng = StdRng::seed_from_u64(99);
        let mut m = two_parallel_fibers(2);
        m.apply_point_load(2, Vector3::new(0.1, 0.0, 0.05));
        let ias = [coulomb_interaction(false)];
        // Random admissible perturbation around the reference.
        let mut u = DVector::zeros(m.n_dofs());
        for k in 0..u.len() {
            u[k] = 0.02 * (rng.gen::<f64>() - 0.5);
        }
        m.set_displacements(&u).unwrap();
        let base = assemble(&m, &ias, 0.7, true).unwrap();
        let k = base.stiffness.unwrap();
        let scale = k.amax();
        let h = 1e-6;
        for trial in 0..10 {
            let dof = (trial * 7 + 3) % m.n_dofs();
            let mut up = u.clone();
            up[dof] += h;
            m.set_displacements(&up).unwrap();
            let rp = assemble(&m, &ias, 0.7, false).unwrap().residual;
            let mut um = u.clone();
            um[dof] -= h;
            m.set_displacements(&um).unwrap();
            let rm = assemble(&m, &ias, 0.7, false).unwrap().residual;
            for row in 0..m.n_dofs() {
                let fd = (rp[row] - rm[row]) / (2.0 * h);
                assert!(
                    (fd - k[(row, dof)]).abs() <= 1e-6 * scale,
                    "K[{row},{dof}]: fd {fd} vs {}",
                    k[(row, dof)]
                );
            }
        }
    }

    #[test]
    fn external_load_and_interaction_scale_with_load_factor() {
        let mut m = two_parallel_fibers(2);
        m.apply_point_load(1, Vector3::new(0.0, 0.0, 1.0));
        let ia = coulomb_interaction(true);
        let a_half = assemble(&m, &[ia.clone()], 0.5, false).unwrap();
        let a_full = assemble(&m, &[ia], 1.0, false).unwrap();
        // At the reference state the residual is linear in lambda.
        for d in 0..m.n_dofs() {
            assert_relative_eq!(
                2.0 * a_half.residual[d],
                a_full.residual[d],
                epsilon = 1e-14 * a_full.residual.amax()
            );
        }
        assert_relative_eq!(
            2.0 * a_half.interaction_energy,
            a_full.interaction_energy,
            epsilon = 1e-14 * a_full.interaction_energy.abs()
        );
    }

    #[test]
    fn interaction_forces_balance_globally() {
        let mut rng = StdRng::seed_from_u64(301);
        let mut m = two_parallel_fibers(4);
        let mut u = DVector::zeros(m.n_dofs());
        for k in 0..u.len() {
            u[k] = 0.05 * (rng.gen::<f64>() - 0.5);
        }
        m.set_displacements(&u).unwrap();
        let a = assemble(&m, &[coulomb_interaction(false)], 0.0, false).unwrap();
        assert!(a.interaction_force_max > 0.0);
        for c in 0..3 {
            assert!(
                a.interaction_force_sum[c].abs() <= 1e-10 * a.interaction_force_max,
                "axis {c}: sum {} vs max force {}",
                a.interaction_force_sum[c],
                a.interaction_force_max
            );
        }
    }

    #[test]
    fn assembly_is_independent_of_fiber_insertion_order() {
        let build = |swap: bool| -> (Model, DVector<f64>) {
            let mut m = Model::new();
            let mat = m.add_material(ElasticParams::new(100.0, 0.5).unwrap());
            let (a0, a1) = (Vector3::zeros(), Vector3::new(0.0, 5.0, 0.0));
            let (b0, b1) = (Vector3::new(1.0, 0.0, 0.0), Vector3::new(1.0, 5.0, 0.0));
            if swap {
                m.add_fiber(b0, b1, 3, 0.02, mat).unwrap();
                m.add_fiber(a0, a1, 3, 0.02, mat).unwrap();
            } else {
                m.add_fiber(a0, a1, 3, 0.02, mat).unwrap();
                m.add_fiber(b0, b1, 3, 0.02, mat).unwrap();
            }
            let a = assemble(&m, &[coulomb_interaction(false)], 0.0, false).unwrap();
            (m, a.residual)
        };
        let (m1, r1) = build(false);
        let (_, r2) = build(true);
        // Fiber 0 of the first model is fiber 1 of the second; quadrature
        // sums run in a different nesting order, so agreement is to
        // round-off, not bitwise.
        let half = m1.n_dofs() / 2;
        let scale = r1.amax();
        for d in 0..half {
            assert!((r1[d] - r2[half + d]).abs() <= 1e-13 * scale);
            assert!((r1[half + d] - r2[d]).abs() <= 1e-13 * scale);
        }
    }
}
