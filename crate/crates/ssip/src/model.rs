//! Global model: fibers discretized into Hermite beam elements, a global
//! DOF vector (6 per node: position and tangent), Dirichlet flags, and
//! reference external loads.
//!
//! Node `n` owns DOFs `6n .. 6n+6` in the order `[pos_x, pos_y, pos_z,
//! tan_x, tan_y, tan_z]`; an element with nodes `(a, b)` maps its local
//! 12-vector `[pos_a, tan_a, pos_b, tan_b]` onto `[6a..6a+6, 6b..6b+6]`.
//! The displacement vector is the single source of truth: every update
//! flows through [`Model::set_displacements`], which rewrites the elements'
//! nodal data, so element state and global state cannot drift apart.

use crate::broadphase::{element_site, ElementSite};
use crate::elastic::ElasticParams;
use crate::geometry::BeamElement;
use crate::{Error, Result};
use nalgebra::{DVector, Vector3};

/// Per-element connectivity: owning fiber and global node ids.
#[derive(Debug, Clone, Copy)]
pub struct ElementConn {
    /// Fiber (chain) index.
    pub fiber: usize,
    /// Global ids of the two end nodes.
    pub nodes: (usize, usize),
}

/// Ids created by [`Model::add_fiber`].
#[derive(Debug, Clone)]
pub struct FiberIds {
    /// Fiber index.
    pub fiber: usize,
    /// Global node ids, end to end.
    pub nodes: std::ops::Range<usize>,
    /// Element ids, end to end.
    pub elements: std::ops::Range<usize>,
}

/// Discretized multi-fiber model with global DOF management.
#[derive(Debug, Clone)]
pub struct Model {
    elements: Vec<BeamElement>,
    conn: Vec<ElementConn>,
    materials: Vec<ElasticParams>,
    n_nodes: usize,
    n_fibers: usize,
    reference: DVector<f64>,
    displacement: DVector<f64>,
    fixed: Vec<bool>,
    external: DVector<f64>,
}

impl Model {
    /// Empty model.
    pub fn new() -> Model {
        Model {
            elements: Vec::new(),
            conn: Vec::new(),
            materials: Vec::new(),
            n_nodes: 0,
            n_fibers: 0,
            reference: DVector::zeros(0),
            displacement: DVector::zeros(0),
            fixed: Vec::new(),
            external: DVector::zeros(0),
        }
    }

    /// Register a material; returns its id.
    pub fn add_material(&mut self, p: ElasticParams) -> usize {
        self.materials.push(p);
        self.materials.len() - 1
    }

    /// Append a straight fiber from `p0` to `p1` split into `n_elements`
    /// equal Hermite elements with unit reference tangents.
    pub fn add_fiber(
        &mut self,
        p0: Vector3<f64>,
        p1: Vector3<f64>,
        n_elements: usize,
        radius: f64,
        material: usize,
    ) -> Result<FiberIds> {
        if n_elements == 0 {
            return Err(Error::parameter(
                "n_elements",
                "a fiber needs at least one element",
            ));
        }
        if material >= self.materials.len() {
            return Err(Error::parameter(
                "material",
                format!(
                    "material id {material} out of range ({} registered)",
                    self.materials.len()
                ),
            ));
        }
        let chord = p1 - p0;
        let length = chord.norm();
        if !(length > 0.0) || !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::DegenerateElement {
                detail: "fiber endpoints coincide or radius is not positive".to_string(),
            });
        }
        let tangent = chord / length;

        let first_node = self.n_nodes;
        let first_element = self.elements.len();
        let fiber = self.n_fibers;
        self.n_fibers += 1;
        let n_nodes_new = n_elements + 1;
        self.n_nodes += n_nodes_new;

        let mut extend = DVector::zeros(6 * n_nodes_new);
        for k in 0..n_nodes_new {
            let p = p0 + (k as f64 / n_elements as f64) * chord;
            for c in 0..3 {
                extend[6 * k + c] = p[c];
                extend[6 * k + 3 + c] = tangent[c];
            }
        }
        let old = self.reference.len();
        self.reference = self.reference.clone().resize_vertically(old + extend.len(), 0.0);
        self.reference.rows_mut(old, extend.len()).copy_from(&extend);
        self.displacement = self
            .displacement
            .clone()
            .resize_vertically(old + extend.len(), 0.0);
        self.external = self.external.clone().resize_vertically(old + extend.len(), 0.0);
        self.fixed.resize(old + extend.len(), false);

        for k in 0..n_elements {
            let a = p0 + (k as f64 / n_elements as f64) * chord;
            let b = p0 + ((k + 1) as f64 / n_elements as f64) * chord;
            let elem = BeamElement::straight(a, b, radius, material)?;
            self.elements.push(elem);
            self.conn.push(ElementConn {
                fiber,
                nodes: (first_node + k, first_node + k + 1),
            });
        }
        Ok(FiberIds {
            fiber,
            nodes: first_node..first_node + n_nodes_new,
            elements: first_element..first_element + n_elements,
        })
    }

    /// Number of global DOFs (6 per node).
    pub fn n_dofs(&self) -> usize {
        6 * self.n_nodes
    }

    /// Number of nodes.
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Number of fibers.
    pub fn n_fibers(&self) -> usize {
        self.n_fibers
    }

    /// Elements in their current configuration.
    pub fn elements(&self) -> &[BeamElement] {
        &self.elements
    }

    /// Per-element connectivity.
    pub fn connectivity(&self) -> &[ElementConn] {
        &self.conn
    }

    /// Material of an element.
    pub fn material_of(&self, element: usize) -> &ElasticParams {
        &self.materials[self.elements[element].material_id]
    }

    /// Global DOF index of a node component (0-2 position, 3-5 tangent).
    pub fn dof(&self, node: usize, comp: usize) -> usize {
        debug_assert!(node < self.n_nodes && comp < 6);
        6 * node + comp
    }

    /// Mark one DOF as Dirichlet-fixed at its reference value.
    pub fn fix(&mut self, node: usize, comp: usize) {
        let d = self.dof(node, comp);
        self.fixed[d] = true;
    }

    /// Fix all six DOFs of a node (clamp).
    pub fn fix_node(&mut self, node: usize) {
        for c in 0..6 {
            self.fix(node, c);
        }
    }

    /// Fix the three position DOFs of a node (pin).
    pub fn fix_position(&mut self, node: usize) {
        for c in 0..3 {
            self.fix(node, c);
        }
    }

    /// Dirichlet flags per DOF.
    pub fn fixed(&self) -> &[bool] {
        &self.fixed
    }

    /// Indices of free DOFs, ascending.
    pub fn free_dofs(&self) -> Vec<usize> {
        (0..self.n_dofs()).filter(|&d| !self.fixed[d]).collect()
    }

    /// Indices of fixed DOFs, ascending.
    pub fn fixed_dofs(&self) -> Vec<usize> {
        (0..self.n_dofs()).filter(|&d| self.fixed[d]).collect()
    }

    /// Add a point force on a node's position DOFs (reference magnitude;
    /// the solver scales it by the load factor).
    pub fn apply_point_load(&mut self, node: usize, force: Vector3<f64>) {
        for c in 0..3 {
            let d = self.dof(node, c);
            self.external[d] += force[c];
        }
    }

    /// Reference external load vector (load factor 1).
    pub fn external_load(&self) -> &DVector<f64> {
        &self.external
    }

    /// Current displacement vector.
    pub fn displacements(&self) -> &DVector<f64> {
        &self.displacement
    }

    /// Reference DOF values.
    pub fn reference(&self) -> &DVector<f64> {
        &self.reference
    }

    /// Overwrite the displacement vector and push the resulting nodal data
    /// into every element.
    ///
    /// # Errors
    ///
    /// Rejects a vector of the wrong length or displacements on fixed DOFs
    /// (which must stay at zero).
    pub fn set_displacements(&mut self, u: &DVector<f64>) -> Result<()> {
        if u.len() != self.n_dofs() {
            return Err(Error::parameter(
                "u",
                format!("expected {} DOFs, got {}", self.n_dofs(), u.len()),
            ));
        }
        for (d, &is_fixed) in self.fixed.iter().enumerate() {
            if is_fixed && u[d] != 0.0 {
                return Err(Error::parameter(
                    "u",
                    format!("nonzero displacement {} on fixed DOF {d}", u[d]),
                ));
            }
        }
        self.displacement.copy_from(u);
        self.sync_elements();
        Ok(())
    }

    /// Current DOF values (reference + displacement).
    pub fn current(&self) -> DVector<f64> {
        &self.reference + &self.displacement
    }

    /// Current position of a node.
    pub fn node_position(&self, node: usize) -> Vector3<f64> {
        let d = self.dof(node, 0);
        Vector3::new(
            self.reference[d] + self.displacement[d],
            self.reference[d + 1] + self.displacement[d + 1],
            self.reference[d + 2] + self.displacement[d + 2],
        )
    }

    /// Current tangent of a node.
    pub fn node_tangent(&self, node: usize) -> Vector3<f64> {
        let d = self.dof(node, 3);
        Vector3::new(
            self.reference[d] + self.displacement[d],
            self.reference[d + 1] + self.displacement[d + 1],
            self.reference[d + 2] + self.displacement[d + 2],
        )
    }

    fn sync_elements(&mut self) {
        for (e, conn) in self.elements.iter_mut().zip(&self.conn) {
            let mut q = nalgebra::SVector::<f64, 12>::zeros();
            let (a, b) = conn.nodes;
            for c in 0..6 {
                let da = 6 * a + c;
                let db = 6 * b + c;
                q[c] = self.reference[da] + self.displacement[da];
                q[6 + c] = self.reference[db] + self.displacement[db];
            }
            e.set_dofs(&q);
        }
    }

    /// Broad-phase descriptors of all elements in the current configuration.
    pub fn sites(&self) -> Vec<ElementSite> {
        self.elements
            .iter()
            .zip(&self.conn)
            .map(|(e, c)| element_site(e, c.fiber, c.nodes))
            .collect()
    }

    /// Global DOF indices of an element's 12 local DOFs.
    pub fn element_dof_map(&self, element: usize) -> [usize; 12] {
        let (a, b) = self.conn[element].nodes;
        std::array::from_fn(|i| if i < 6 { 6 * a + i } else { 6 * b + (i - 6) })
    }
}

impl Default for Model {
    fn default() -> Self {
        Model::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn two_fiber_model() -> Model {
        let mut m = Model::new();
        let mat = m.add_material(ElasticParams::new(100.0, 1.0).unwrap());
        m.add_fiber(
            Vector3::zeros(),
            Vector3::new(0.0, 5.0, 0.0),
            5,
            0.02,
            mat,
        )
        .unwrap();
        m.add_fiber(
            Vector3::new(5.0, 0.0, 0.0),
            Vector3::new(5.0, 5.0, 0.0),
            5,
            0.02,
            mat,
        )
        .unwrap();
        m
    }

    #[test]
    fn fiber_discretization_produces_consistent_chains() {
        let m = two_fiber_model();
        assert_eq!(m.n_nodes(), 12);
        assert_eq!(m.elements().len(), 10);
        assert_eq!(m.n_dofs(), 72);
        assert_eq!(m.n_fibers(), 2);
        // Chained connectivity within each fiber, no sharing across fibers.
        for (i, c) in m.connectivity().iter().enumerate() {
            assert_eq!(c.fiber, i / 5);
            assert_eq!(c.nodes.1, c.nodes.0 + 1);
        }
        assert_eq!(m.connectivity()[4].nodes.1, 5);
        assert_eq!(m.connectivity()[5].nodes.0, 6);
        // Reference nodes sit on the straight chords with unit tangents.
        assert_relative_eq!(m.node_position(3)[1], 3.0, epsilon = 1e-15);
        assert_relative_eq!(m.node_tangent(3)[1], 1.0, epsilon = 1e-15);
        assert_relative_eq!(m.node_position(8)[0], 5.0, epsilon = 1e-15);
    }

    #[test]
    fn construction_validates_inputs() {
        let mut m = Model::new();
        let mat = m.add_material(ElasticParams::new(1.0, 1.0).unwrap());
        assert!(m
            .add_fiber(Vector3::zeros(), Vector3::zeros(), 2, 0.1, mat)
            .is_err());
        assert!(m
            .add_fiber(Vector3::zeros(), Vector3::x(), 0, 0.1, mat)
            .is_err());
        assert!(m
            .add_fiber(Vector3::zeros(), Vector3::x(), 2, 0.1, mat + 1)
            .is_err());
    }

    #[test]
    fn displacements_flow_into_elements_and_back() {
        let mut m = two_fiber_model();
        let mut u = DVector::zeros(m.n_dofs());
        u[m.dof(1, 0)] = 0.25; // node 1 pos_x
        u[m.dof(1, 4)] = -0.1; // node 1 tan_y
        m.set_displacements(&u).unwrap();
        let e0 = &m.elements()[0];
        let e1 = &m.elements()[1];
        assert_relative_eq!(e0.node_b.pos[0], 0.25, epsilon = 1e-15);
        assert_relative_eq!(e1.node_a.pos[0], 0.25, epsilon = 1e-15);
        assert_relative_eq!(e0.node_b.tan[1], 0.9, epsilon = 1e-15);
        assert_relative_eq!(m.node_position(1)[0], 0.25, epsilon = 1e-15);
        // Wrong length and fixed-DOF violations are rejected.
        assert!(m.set_displacements(&DVector::zeros(3)).is_err());
        m.fix(0, 0);
        let mut bad = DVector::zeros(m.n_dofs());
        bad[0] = 1.0;
        assert!(m.set_displacements(&bad).is_err());
    }

    #[test]
    fn dirichlet_bookkeeping_partitions_dofs() {
        let mut m = two_fiber_model();
        m.fix_node(0);
        m.fix_position(5);
        assert_eq!(m.fixed_dofs().len(), 9);
        assert_eq!(m.free_dofs().len(), m.n_dofs() - 9);
        let fixed = m.fixed_dofs();
        assert!(fixed.contains(&0) && fixed.contains(&5) && fixed.contains(&32));
    }

    #[test]
    fn point_loads_accumulate_on_position_dofs() {
        let mut m = two_fiber_model();
        m.apply_point_load(2, Vector3::new(1.0, 0.0, -2.0));
        m.apply_point_load(2, Vector3::new(0.5, 0.0, 0.0));
        assert_relative_eq!(m.external_load()[m.dof(2, 0)], 1.5, epsilon = 1e-15);
        assert_relative_eq!(m.external_load()[m.dof(2, 2)], -2.0, epsilon = 1e-15);
        assert_eq!(m.external_load()[m.dof(2, 3)], 0.0);
    }

    #[test]
    fn element_dof_map_matches_node_layout() {
        let m = two_fiber_model();
        let map = m.element_dof_map(5);
        let (a, b) = m.connectivity()[5].nodes;
        assert_eq!(map[0], 6 * a);
        assert_eq!(map[5], 6 * a + 5);
        assert_eq!(map[6], 6 * b);
        assert_eq!(map[11], 6 * b + 5);
    }

    #[test]
    fn sites_reflect_current_configuration() {
        let mut m = two_fiber_model();
        let before = m.sites();
        let mut u = DVector::zeros(m.n_dofs());
        u[m.dof(0, 0)] = 3.0;
        m.set_displacements(&u).unwrap();
        let after = m.sites();
        assert!(after[0].max[0] > before[0].max[0] + 2.0);
        assert_eq!(after[0].fiber, 0);
        assert_eq!(after[5].fiber, 1);
        assert_eq!(after[5].nodes, (6, 7));
    }
}
