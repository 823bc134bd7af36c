//! Scenario configuration and end-to-end quasi-static runs.
//!
//! A scenario is one JSON document describing fibers, a material model, one
//! interaction law, quadrature and solver settings, boundary conditions, and
//! point loads. [`ScenarioConfig::build`] turns it into a [`Model`] plus an
//! [`Interaction`] and a [`SolverConfig`]; [`run_scenario`] marches the load
//! factor through the configured targets and collects everything a
//! post-processing step needs: per-step energies and reactions, sampled
//! equilibrium centerlines, and the interaction line load (force per unit
//! reference length) at every quadrature point.
//!
//! # Configuration format
//!
//! Keys carry their dimension as a suffix (`_len`, `_force`, `_energy`,
//! `_pressure`, compound forms like `_force_len2`); suffix-free keys are
//! dimensionless or counts. All quantities are in one consistent unit system
//! of the user's choice. Unknown keys anywhere in the document are rejected.
//!
//! ```json
//! {
//!   "name": "charged-beams",
//!   "fibers": [
//!     { "start_len": [0, 0, 0], "end_len": [0, 5, 0],
//!       "n_elements": 5, "radius_len": 0.02, "material": 0 }
//!   ],
//!   "materials": [ { "young_pressure": 1e5, "poisson": 0.3 } ],
//!   "law": { "coulomb": { "constant_energy_len_per_charge2": 1.0,
//!                         "sigma1_charge_per_len2": 1.0,
//!                         "sigma2_charge_per_len2": -1.0 } },
//!   "interaction": { "scope": "inter_fiber", "cutoff_len": "inf",
//!                    "n_segments": 2, "n_gauss": 10,
//!                    "scale_with_load_factor": true },
//!   "solver": { "load_targets": [0.4] },
//!   "boundary_conditions": [
//!     { "nodes": "ends", "fix": ["pos_x", "pos_y", "pos_z"] },
//!     { "nodes": "all",  "fix": ["pos_z", "tan_z"] }
//!   ]
//! }
//! ```
//!
//! The law object is keyed by its kind (`coulomb`, `power_law`,
//! `lennard_jones`); the interaction-law radii are taken from the fibers, so
//! either the scene has exactly two fibers and an `inter_fiber` scope (the
//! two radii may then differ) or all fibers must share one radius. The law's
//! density/charge pair applies to *every* admissible element pair, so scopes
//! that allow intra-fiber pairs only make sense when both densities are the
//! same.

use crate::assembly::{assemble, Interaction};
use crate::broadphase::{candidate_pairs, AdjacencyPolicy, BucketGrid};
use crate::elastic::ElasticParams;
use crate::geometry::hermite_basis;
use crate::model::{FiberIds, Model};
use crate::pair::pair_line_loads;
use crate::potentials::{default_regularization_gap, regularize_lj, CrossSectionPair, SsipLaw};
use crate::quadrature::QuadratureRule;
use crate::solver::{adaptive_load_stepping, SolverConfig, StepRecord};
use crate::{Error, Result};
use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Configuration schema
// ---------------------------------------------------------------------------

/// One straight fiber of the initial geometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberConfig {
    /// Start point (length units).
    pub start_len: [f64; 3],
    /// End point (length units).
    pub end_len: [f64; 3],
    /// Number of equal Hermite elements along the fiber.
    pub n_elements: usize,
    /// Cross-section radius (length units).
    pub radius_len: f64,
    /// Index into `materials`.
    #[serde(default)]
    pub material: usize,
}

/// Material of a circular cross-section, given either as Young's modulus
/// (section constants derived from the fiber radius) or directly as axial
/// and bending rigidities. Exactly one of the two forms must be present.
/// Poisson's ratio is accepted for completeness but unused: the element
/// carries extension and bending only.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    /// Young's modulus (pressure units).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub young_pressure: Option<f64>,
    /// Poisson's ratio (dimensionless; accepted, unused).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poisson: Option<f64>,
    /// Axial rigidity `EA` (force units).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ea_force: Option<f64>,
    /// Bending rigidity `EI` (force x length^2 units).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ei_force_len2: Option<f64>,
}

impl MaterialConfig {
    fn build(&self, radius: f64) -> Result<ElasticParams> {
        match (self.young_pressure, self.ea_force, self.ei_force_len2) {
            (Some(e), None, None) => ElasticParams::circular_section(e, radius),
            (None, Some(ea), Some(ei)) => ElasticParams::new(ea, ei),
            _ => Err(Error::Config(
                "material needs either young_pressure or both ea_force and ei_force_len2"
                    .to_string(),
            )),
        }
    }
}

/// Coulomb monopole law between surface-charged fibers: the section pair
/// potential is `k lambda1 lambda2 / d` with line charge densities
/// `lambda_j = 2 pi R_j sigma_j` and centroid distance `d`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoulombLawConfig {
    /// Coulomb constant `k` (energy x length / charge^2 units).
    pub constant_energy_len_per_charge2: f64,
    /// Surface charge density of the first pair radius (charge / length^2).
    pub sigma1_charge_per_len2: f64,
    /// Surface charge density of the second pair radius (charge / length^2).
    pub sigma2_charge_per_len2: f64,
}

/// Short-range power law from a point potential `Phi = k / r^m` (`m > 7/2`)
/// between volume densities; `k < 0` is attraction (e.g. van der Waals with
/// `m = 6`), `k > 0` repulsion (e.g. a steric `m = 12` core).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerLawConfig {
    /// Point-law exponent `m`.
    pub exponent: f64,
    /// Point-law prefactor `k` (energy x length^exponent units).
    pub prefactor_energy_lenm: f64,
    /// Volume particle density of the first pair radius (1 / length^3).
    pub rho1_per_len3: f64,
    /// Volume particle density of the second pair radius (1 / length^3).
    pub rho2_per_len3: f64,
}

/// Explicit regularization gap (length units).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularizationGap {
    /// Linearize the section law below this surface gap.
    pub gap_len: f64,
}

/// Regularization of a Lennard-Jones section law: `"off"` (none), `"auto"`
/// (linearize below the section-law equilibrium gap), or an explicit
/// `{ "gap_len": x }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RegularizationSpec {
    /// `"auto"` or `"off"`.
    Keyword(String),
    /// Explicit gap.
    Gap(RegularizationGap),
}

impl Default for RegularizationSpec {
    fn default() -> Self {
        RegularizationSpec::Keyword("off".to_string())
    }
}

/// Lennard-Jones law from the point-pair well: equilibrium distance `r_eq`
/// and potential `phi_eq < 0` there, between volume densities.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LennardJonesLawConfig {
    /// Point-pair potential at its minimum (energy units, negative).
    pub phi_eq_energy: f64,
    /// Point-pair equilibrium distance (length units).
    pub r_eq_len: f64,
    /// Volume particle density of the first pair radius (1 / length^3).
    pub rho1_per_len3: f64,
    /// Volume particle density of the second pair radius (1 / length^3).
    pub rho2_per_len3: f64,
    /// Small-gap regularization (default off).
    #[serde(default)]
    pub regularization: RegularizationSpec,
}

/// The interaction law, keyed by kind.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawConfig {
    /// Long-range Coulomb monopole (argument: centroid distance).
    Coulomb(CoulombLawConfig),
    /// Short-range power law (argument: surface gap).
    PowerLaw(PowerLawConfig),
    /// Lennard-Jones composite (argument: surface gap).
    LennardJones(LennardJonesLawConfig),
}

impl LawConfig {
    fn build(&self, r1: f64, r2: f64) -> Result<SsipLaw> {
        match self {
            LawConfig::Coulomb(c) => {
                let pair = CrossSectionPair::surface(
                    r1,
                    r2,
                    c.sigma1_charge_per_len2,
                    c.sigma2_charge_per_len2,
                )?;
                SsipLaw::long_range_monopole_surface(
                    1.0,
                    c.constant_energy_len_per_charge2,
                    &pair,
                )
            }
            LawConfig::PowerLaw(c) => {
                let pair =
                    CrossSectionPair::volume(r1, r2, c.rho1_per_len3 * c.rho2_per_len3)?;
                SsipLaw::short_range_small_sep(c.exponent, c.prefactor_energy_lenm, &pair)
            }
            LawConfig::LennardJones(c) => {
                let pair =
                    CrossSectionPair::volume(r1, r2, c.rho1_per_len3 * c.rho2_per_len3)?;
                let inner = SsipLaw::lj_composite(c.phi_eq_energy, c.r_eq_len, &pair)?;
                let gap = match &c.regularization {
                    RegularizationSpec::Keyword(w) if w == "off" => return Ok(inner),
                    RegularizationSpec::Keyword(w) if w == "auto" => {
                        default_regularization_gap(c.phi_eq_energy, c.r_eq_len, &pair)?
                    }
                    RegularizationSpec::Keyword(w) => {
                        return Err(Error::Config(format!(
                            "regularization must be \"auto\", \"off\", or {{\"gap_len\": x}}, got \"{w}\""
                        )))
                    }
                    RegularizationSpec::Gap(g) => g.gap_len,
                };
                regularize_lj(&inner, gap)
            }
        }
    }
}

/// Which element pairs interact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InteractionScope {
    /// Only elements of different fibers.
    InterFiber,
    /// All pairs except those sharing a node.
    ExcludeSharedNode,
    /// All pairs except shared-node and next-nearest same-fiber neighbors.
    ExcludeNextNearest,
}

impl InteractionScope {
    fn policy(self) -> AdjacencyPolicy {
        match self {
            InteractionScope::InterFiber => AdjacencyPolicy::ExcludeSameFiber,
            InteractionScope::ExcludeSharedNode => AdjacencyPolicy::ExcludeSharedNode,
            InteractionScope::ExcludeNextNearest => {
                AdjacencyPolicy::ExcludeSharedNodeAndNextNearest
            }
        }
    }
}

/// A length-type value that may be `"inf"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CutoffSpec {
    /// Finite cutoff (length units).
    Value(f64),
    /// `"inf"`: no cutoff.
    Keyword(String),
}

impl CutoffSpec {
    fn resolve(&self) -> Result<f64> {
        match self {
            CutoffSpec::Value(x) => Ok(*x),
            CutoffSpec::Keyword(w) if w == "inf" => Ok(f64::INFINITY),
            CutoffSpec::Keyword(w) => Err(Error::Config(format!(
                "cutoff_len must be a positive number or \"inf\", got \"{w}\""
            ))),
        }
    }
}

/// Quadrature and pair-selection settings for the interaction law.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InteractionConfig {
    /// Which pairs interact.
    pub scope: InteractionScope,
    /// Broad-phase cutoff distance between element boxes (length or "inf").
    pub cutoff_len: CutoffSpec,
    /// Gauss segments per element for pair integrals.
    pub n_segments: usize,
    /// Gauss points per segment.
    pub n_gauss: usize,
    /// Ramp the law's prefactor with the load factor.
    pub scale_with_load_factor: bool,
    /// Broad-phase grid cell size override (length units).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell_size_len: Option<f64>,
}

impl Default for InteractionConfig {
    fn default() -> Self {
        InteractionConfig {
            scope: InteractionScope::ExcludeSharedNode,
            cutoff_len: CutoffSpec::Keyword("inf".to_string()),
            n_segments: 2,
            n_gauss: 10,
            scale_with_load_factor: false,
            cell_size_len: None,
        }
    }
}

/// A length-type value that may be `"auto"` or `"off"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CapSpec {
    /// Explicit cap (length units).
    Value(f64),
    /// `"auto"` (half the smallest fiber radius) or `"off"`.
    Keyword(String),
}

impl CapSpec {
    fn resolve(&self, min_radius: f64) -> Result<Option<f64>> {
        match self {
            CapSpec::Value(x) if *x > 0.0 => Ok(Some(*x)),
            CapSpec::Value(x) => Err(Error::Config(format!(
                "increment_cap_len must be positive, got {x}"
            ))),
            CapSpec::Keyword(w) if w == "auto" => Ok(Some(0.5 * min_radius)),
            CapSpec::Keyword(w) if w == "off" => Ok(None),
            CapSpec::Keyword(w) => Err(Error::Config(format!(
                "increment_cap_len must be a number, \"auto\", or \"off\", got \"{w}\""
            ))),
        }
    }
}

/// Newton and load-stepping settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    /// Residual-norm tolerance (force units).
    pub tol_residual_force: f64,
    /// Increment-norm tolerance (length units).
    pub tol_increment_len: f64,
    /// Newton iteration budget per step.
    pub max_iterations: usize,
    /// Cap on the largest nodal position move per iteration.
    pub increment_cap_len: CapSpec,
    /// Initial load-factor step.
    pub step_initial: f64,
    /// Smallest allowed step before aborting.
    pub step_min: f64,
    /// Consecutive successes at a reduced step before doubling.
    pub double_after: usize,
    /// Load factors to pass through, ascending (each becomes a record).
    pub load_targets: Vec<f64>,
}

impl Default for SolverSection {
    fn default() -> Self {
        SolverSection {
            tol_residual_force: 1e-10,
            tol_increment_len: 1e-8,
            max_iterations: 25,
            increment_cap_len: CapSpec::Keyword("auto".to_string()),
            step_initial: 1.0,
            step_min: 1.0 / 64.0,
            double_after: 4,
            load_targets: vec![1.0],
        }
    }
}

/// Node selector for boundary conditions: `"all"`, `"ends"` (first and last
/// node of every fiber), or an explicit list of global node indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeSelector {
    /// `"all"` or `"ends"`.
    Keyword(String),
    /// Explicit global node indices.
    List(Vec<usize>),
}

/// One nodal degree of freedom by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DofName {
    /// Position x.
    PosX,
    /// Position y.
    PosY,
    /// Position z.
    PosZ,
    /// Tangent x.
    TanX,
    /// Tangent y.
    TanY,
    /// Tangent z.
    TanZ,
}

impl DofName {
    fn comp(self) -> usize {
        match self {
            DofName::PosX => 0,
            DofName::PosY => 1,
            DofName::PosZ => 2,
            DofName::TanX => 3,
            DofName::TanY => 4,
            DofName::TanZ => 5,
        }
    }
}

/// Fix the named DOFs of the selected nodes at their reference values.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcConfig {
    /// Nodes the constraint applies to.
    pub nodes: NodeSelector,
    /// DOFs to fix.
    pub fix: Vec<DofName>,
}

/// Constant point load on one node (scaled by the load factor).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadConfig {
    /// Global node index.
    pub node: usize,
    /// Force vector (force units).
    pub force: [f64; 3],
}

/// Post-processing settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    /// Centerline sample intervals per element (samples = intervals + 1).
    pub centerline_samples_per_element: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            centerline_samples_per_element: 10,
        }
    }
}

/// A complete scenario document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Scenario name (used in output file names).
    pub name: String,
    /// Free-text description.
    #[serde(default)]
    pub description: String,
    /// Initial fiber geometry.
    pub fibers: Vec<FiberConfig>,
    /// Material table referenced by the fibers.
    pub materials: Vec<MaterialConfig>,
    /// The interaction law.
    pub law: LawConfig,
    /// Pair selection and quadrature.
    #[serde(default)]
    pub interaction: InteractionConfig,
    /// Newton and load stepping.
    #[serde(default)]
    pub solver: SolverSection,
    /// Dirichlet constraints.
    #[serde(default)]
    pub boundary_conditions: Vec<BcConfig>,
    /// Point loads (scaled by the load factor).
    #[serde(default)]
    pub point_loads: Vec<LoadConfig>,
    /// Post-processing settings.
    #[serde(default)]
    pub output: OutputSection,
}

// ---------------------------------------------------------------------------
// Building and running
// ---------------------------------------------------------------------------

/// A scenario lowered to solver inputs.
#[derive(Debug)]
pub struct BuiltScenario {
    /// Assembled model with constraints and loads applied.
    pub model: Model,
    /// The single configured interaction channel.
    pub interactions: Vec<Interaction>,
    /// Newton settings.
    pub solver: SolverConfig,
    /// Ascending load targets.
    pub load_targets: Vec<f64>,
    /// Node/element id ranges per fiber.
    pub fiber_ids: Vec<FiberIds>,
    /// Centerline sample intervals per element.
    pub samples_per_element: usize,
}

impl ScenarioConfig {
    /// Parse a JSON scenario document (strict: unknown keys are errors).
    pub fn from_json(text: &str) -> Result<ScenarioConfig> {
        Ok(serde_json::from_str(text)?)
    }

    /// Serialize back to pretty JSON (round-trips through [`Self::from_json`]).
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The two cross-section radii the law applies to: with exactly two
    /// fibers and an `inter_fiber` scope they are the fibers' radii (in
    /// order); any other configuration must use one uniform radius.
    fn law_radii(&self) -> Result<(f64, f64)> {
        if self.fibers.is_empty() {
            return Err(Error::Config("at least one fiber is required".to_string()));
        }
        if self.fibers.len() == 2 && self.interaction.scope == InteractionScope::InterFiber {
            return Ok((self.fibers[0].radius_len, self.fibers[1].radius_len));
        }
        let r = self.fibers[0].radius_len;
        if self.fibers.iter().any(|f| f.radius_len != r) {
            return Err(Error::Config(
                "fibers must share one radius (a single section law applies to all pairs); \
                 distinct radii are only supported for two fibers with scope \"inter_fiber\""
                    .to_string(),
            ));
        }
        Ok((r, r))
    }

    /// Validate and lower the document to a model, interaction, and solver
    /// configuration.
    pub fn build(&self) -> Result<BuiltScenario> {
        if self.materials.is_empty() {
            return Err(Error::Config("at least one material is required".to_string()));
        }
        let (r1, r2) = self.law_radii()?;
        let law = self.law.build(r1, r2)?;
        let rule = QuadratureRule::new(self.interaction.n_segments, self.interaction.n_gauss)?;
        let interaction = Interaction {
            law,
            rule,
            cutoff: self.interaction.cutoff_len.resolve()?,
            policy: self.interaction.scope.policy(),
            scale_with_load_factor: self.interaction.scale_with_load_factor,
            cell_size: self.interaction.cell_size_len,
        };

        let mut model = Model::new();
        let mut fiber_ids = Vec::with_capacity(self.fibers.len());
        for f in &self.fibers {
            let mc = self.materials.get(f.material).ok_or_else(|| {
                Error::Config(format!(
                    "fiber references material {} but only {} are defined",
                    f.material,
                    self.materials.len()
                ))
            })?;
            let material = model.add_material(mc.build(f.radius_len)?);
            fiber_ids.push(model.add_fiber(
                Vector3::from(f.start_len),
                Vector3::from(f.end_len),
                f.n_elements,
                f.radius_len,
                material,
            )?);
        }

        for bc in &self.boundary_conditions {
            let nodes: Vec<usize> = match &bc.nodes {
                NodeSelector::Keyword(w) if w == "all" => (0..model.n_nodes()).collect(),
                NodeSelector::Keyword(w) if w == "ends" => fiber_ids
                    .iter()
                    .flat_map(|ids| [ids.nodes.start, ids.nodes.end - 1])
                    .collect(),
                NodeSelector::Keyword(w) => {
                    return Err(Error::Config(format!(
                        "nodes must be \"all\", \"ends\", or an index list, got \"{w}\""
                    )))
                }
                NodeSelector::List(list) => {
                    if let Some(&bad) = list.iter().find(|&&n| n >= model.n_nodes()) {
                        return Err(Error::Config(format!(
                            "boundary condition on node {bad}, but the model has {} nodes",
                            model.n_nodes()
                        )));
                    }
                    list.clone()
                }
            };
            for &node in &nodes {
                for dof in &bc.fix {
                    model.fix(node, dof.comp());
                }
            }
        }

        for load in &self.point_loads {
            if load.node >= model.n_nodes() {
                return Err(Error::Config(format!(
                    "point load on node {}, but the model has {} nodes",
                    load.node,
                    model.n_nodes()
                )));
            }
            model.apply_point_load(load.node, Vector3::from(load.force));
        }

        let min_radius = self
            .fibers
            .iter()
            .map(|f| f.radius_len)
            .fold(f64::INFINITY, f64::min);
        let solver = SolverConfig {
            tol_residual: self.solver.tol_residual_force,
            tol_increment: self.solver.tol_increment_len,
            max_iters: self.solver.max_iterations,
            increment_cap: self.solver.increment_cap_len.resolve(min_radius)?,
            step_initial: self.solver.step_initial,
            step_min: self.solver.step_min,
            double_after: self.solver.double_after,
        };
        solver.validate()?;
        if self.solver.load_targets.is_empty() {
            return Err(Error::Config(
                "solver.load_targets must not be empty".to_string(),
            ));
        }
        if self.output.centerline_samples_per_element == 0 {
            return Err(Error::Config(
                "output.centerline_samples_per_element must be positive".to_string(),
            ));
        }

        Ok(BuiltScenario {
            model,
            interactions: vec![interaction],
            solver,
            load_targets: self.solver.load_targets.clone(),
            fiber_ids,
            samples_per_element: self.output.centerline_samples_per_element,
        })
    }
}

/// One fiber's sampled centerline.
#[derive(Debug, Clone, Serialize)]
pub struct Centerline {
    /// Fiber index.
    pub fiber: usize,
    /// Sampled positions, end to end.
    pub points: Vec<[f64; 3]>,
}

/// Interaction line load at one quadrature point of one element.
#[derive(Debug, Clone, Serialize)]
pub struct LineLoadRecord {
    /// Fiber index.
    pub fiber: usize,
    /// Global element index.
    pub element: usize,
    /// Element coordinate of the quadrature point.
    pub xi: f64,
    /// Current position of the quadrature point.
    pub position: [f64; 3],
    /// Force per unit reference length at the point.
    pub load: [f64; 3],
}

/// Everything a finished run reports.
#[derive(Debug)]
pub struct ScenarioOutcome {
    /// One record per converged load step.
    pub steps: Vec<StepRecord>,
    /// Newton iterations summed over every attempt, failed ones included.
    pub total_newton_iterations: usize,
    /// Step attempts that did not converge (each halved the step).
    pub failed_attempts: usize,
    /// Sampled equilibrium centerlines, one per fiber.
    pub centerlines: Vec<Centerline>,
    /// Interaction line loads at the final state, one row per element
    /// quadrature point holding a nonzero accumulation grid.
    pub line_loads: Vec<LineLoadRecord>,
    /// Work done by the point loads along the equilibrium path
    /// (trapezoidal in the load factor).
    pub external_work: f64,
    /// Per-axis sums of assembled interaction forces at the final state.
    pub interaction_force_sum: [f64; 3],
    /// Largest nodal interaction force norm at the final state.
    pub interaction_force_max: f64,
    /// The model in its final equilibrium state.
    pub model: Model,
}

/// Sample every element of every fiber at equally spaced coordinates
/// (`samples` intervals per element, shared interior nodes not repeated).
pub fn sample_centerlines(
    model: &Model,
    fiber_ids: &[FiberIds],
    samples: usize,
) -> Result<Vec<Centerline>> {
    if samples == 0 {
        return Err(Error::parameter("samples", "need at least one interval"));
    }
    let mut out = Vec::with_capacity(fiber_ids.len());
    for ids in fiber_ids {
        let mut points = Vec::new();
        for (pos, e_id) in ids.elements.clone().enumerate() {
            let e = &model.elements()[e_id];
            let first = if pos == 0 { 0 } else { 1 };
            for k in first..=samples {
                let xi = -1.0 + 2.0 * (k as f64) / (samples as f64);
                let he = hermite_basis(xi.clamp(-1.0, 1.0), e.ref_length)?;
                let p = he.position(&e.node_a, &e.node_b);
                points.push([p[0], p[1], p[2]]);
            }
        }
        out.push(Centerline {
            fiber: ids.fiber,
            points,
        });
    }
    Ok(out)
}

/// Accumulate the interaction line load over all admissible pairs at the
/// model's current state and the given load factor. One row per quadrature
/// point of every element that participates in at least one pair.
pub fn interaction_line_loads(
    model: &Model,
    interactions: &[Interaction],
    load_factor: f64,
) -> Result<Vec<LineLoadRecord>> {
    // Per element: accumulated load per quadrature point (grids are per
    // interaction channel; a single channel is the common case, and mixing
    // channels with different rules would need separate rows anyway).
    let mut rows: Vec<LineLoadRecord> = Vec::new();
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
        let n_gp = ia.rule.len();
        let mut acc: std::collections::BTreeMap<usize, Vec<Vector3<f64>>> =
            std::collections::BTreeMap::new();
        for (i, j) in pairs {
            let (i, j) = (i as usize, j as usize);
            let (l1, l2) =
                pair_line_loads(&model.elements()[i], &model.elements()[j], &law, &ia.rule)?;
            let a1 = acc.entry(i).or_insert_with(|| vec![Vector3::zeros(); n_gp]);
            for (k, (_, f)) in l1.iter().enumerate() {
                a1[k] += f;
            }
            let a2 = acc.entry(j).or_insert_with(|| vec![Vector3::zeros(); n_gp]);
            for (k, (_, f)) in l2.iter().enumerate() {
                a2[k] += f;
            }
        }
        for (e_id, loads) in acc {
            let e = &model.elements()[e_id];
            let fiber = model.connectivity()[e_id].fiber;
            for (q, f) in ia.rule.points().iter().zip(loads) {
                let he = hermite_basis(q.xi, e.ref_length)?;
                let p = he.position(&e.node_a, &e.node_b);
                rows.push(LineLoadRecord {
                    fiber,
                    element: e_id,
                    xi: q.xi,
                    position: [p[0], p[1], p[2]],
                    load: [f[0], f[1], f[2]],
                });
            }
        }
    }
    Ok(rows)
}

/// Work done by the configured point loads along the recorded equilibrium
/// path, integrated trapezoidally in the load factor (the applied force at
/// factor `lambda` is `lambda` times the configured loads).
pub fn external_work(model: &Model, steps: &[StepRecord]) -> f64 {
    let f = model.external_load();
    let mut work = 0.0;
    let mut prev_lambda = 0.0;
    let mut prev_u: Option<&nalgebra::DVector<f64>> = None;
    for s in steps {
        let mean = 0.5 * (prev_lambda + s.load_factor);
        let du_dot_f = match prev_u {
            Some(u0) => f.dot(&(&s.displacements - u0)),
            None => f.dot(&s.displacements),
        };
        work += mean * du_dot_f;
        prev_lambda = s.load_factor;
        prev_u = Some(&s.displacements);
    }
    work
}

/// Build and run a scenario: march the load factor through every target,
/// then sample centerlines and interaction line loads at the final state.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioOutcome> {
    let mut built = config.build()?;
    let traj = adaptive_load_stepping(
        &mut built.model,
        &built.interactions,
        &built.solver,
        &built.load_targets,
    )?;
    let final_lambda = traj.steps.last().map_or(0.0, |s| s.load_factor);
    let centerlines =
        sample_centerlines(&built.model, &built.fiber_ids, built.samples_per_element)?;
    let line_loads = interaction_line_loads(&built.model, &built.interactions, final_lambda)?;
    let work = external_work(&built.model, &traj.steps);
    let asm = assemble(&built.model, &built.interactions, final_lambda, false)?;
    Ok(ScenarioOutcome {
        steps: traj.steps,
        total_newton_iterations: traj.total_iterations,
        failed_attempts: traj.failed_attempts,
        centerlines,
        line_loads,
        external_work: work,
        interaction_force_sum: asm.interaction_force_sum,
        interaction_force_max: asm.interaction_force_max,
        model: built.model,
    })
}

// ---------------------------------------------------------------------------
// Built-in scenarios
// ---------------------------------------------------------------------------

/// Two oppositely charged parallel fibers, simply supported, deforming in
/// the plane they span: length and axis distance 5, radius 0.02, Young's
/// modulus 1e5, surface charge densities +1 and -1, five elements per fiber.
/// The Coulomb prefactor ramps with the load factor, so each entry of
/// `targets` is one interaction-strength level `k`.
pub fn charged_beams_config(targets: &[f64], n_segments: usize, n_gauss: usize) -> ScenarioConfig {
    ScenarioConfig {
        name: "charged-beams".to_string(),
        description: "Two oppositely charged simply supported fibers bowing toward each \
                      other under a ramped Coulomb interaction."
            .to_string(),
        fibers: vec![
            FiberConfig {
                start_len: [0.0, 0.0, 0.0],
                end_len: [0.0, 5.0, 0.0],
                n_elements: 5,
                radius_len: 0.02,
                material: 0,
            },
            FiberConfig {
                start_len: [5.0, 0.0, 0.0],
                end_len: [5.0, 5.0, 0.0],
                n_elements: 5,
                radius_len: 0.02,
                material: 0,
            },
        ],
        materials: vec![MaterialConfig {
            young_pressure: Some(1e5),
            poisson: Some(0.3),
            ea_force: None,
            ei_force_len2: None,
        }],
        law: LawConfig::Coulomb(CoulombLawConfig {
            constant_energy_len_per_charge2: 1.0,
            sigma1_charge_per_len2: 1.0,
            sigma2_charge_per_len2: -1.0,
        }),
        interaction: InteractionConfig {
            scope: InteractionScope::InterFiber,
            cutoff_len: CutoffSpec::Keyword("inf".to_string()),
            n_segments,
            n_gauss,
            scale_with_load_factor: true,
            cell_size_len: None,
        },
        solver: SolverSection {
            load_targets: targets.to_vec(),
            ..SolverSection::default()
        },
        boundary_conditions: vec![
            BcConfig {
                nodes: NodeSelector::Keyword("ends".to_string()),
                fix: vec![DofName::PosX, DofName::PosY, DofName::PosZ],
            },
            BcConfig {
                nodes: NodeSelector::Keyword("all".to_string()),
                fix: vec![DofName::PosZ, DofName::TanZ],
            },
        ],
        point_loads: Vec::new(),
        output: OutputSection::default(),
    }
}

/// A simply supported fiber pressed by a midspan point load against a fully
/// fixed straight fiber lying underneath it, with a steric `m = 12` power
/// law keeping the surfaces separated.
///
/// This is a deliberately simple pressed-contact geometry: the obstacle is a
/// rigid *straight* fiber (every node clamped), long enough that the
/// deformable span never reaches its ends, so the contact patch grows
/// symmetrically around midspan as the load ramps. The reported states are
/// checked for non-penetration, symmetry of the interaction line-load
/// distribution about midspan, and per-axis interaction-force balance — not
/// for specific trajectory values.
pub fn repulsive_contact_config() -> ScenarioConfig {
    ScenarioConfig {
        name: "repulsive-contact".to_string(),
        description: "A simply supported fiber pressed against a rigid straight fiber; \
                      a steric power law keeps the surfaces apart."
            .to_string(),
        fibers: vec![
            FiberConfig {
                start_len: [0.0, 0.09, 0.0],
                end_len: [1.0, 0.09, 0.0],
                n_elements: 8,
                radius_len: 0.02,
                material: 0,
            },
            FiberConfig {
                start_len: [-0.2, 0.0, 0.0],
                end_len: [1.2, 0.0, 0.0],
                n_elements: 8,
                radius_len: 0.02,
                material: 0,
            },
        ],
        materials: vec![MaterialConfig {
            young_pressure: Some(1e4),
            poisson: Some(0.3),
            ea_force: None,
            ei_force_len2: None,
        }],
        law: LawConfig::PowerLaw(PowerLawConfig {
            exponent: 12.0,
            prefactor_energy_lenm: 2.0e-15,
            rho1_per_len3: 1.0,
            rho2_per_len3: 1.0,
        }),
        interaction: InteractionConfig {
            scope: InteractionScope::InterFiber,
            cutoff_len: CutoffSpec::Value(0.25),
            n_segments: 2,
            n_gauss: 8,
            scale_with_load_factor: false,
            cell_size_len: None,
        },
        solver: SolverSection {
            load_targets: vec![0.25, 0.5, 0.75, 1.0],
            ..SolverSection::default()
        },
        boundary_conditions: vec![
            // Deformable fiber: ends pinned.
            BcConfig {
                nodes: NodeSelector::List(vec![0, 8]),
                fix: vec![DofName::PosX, DofName::PosY, DofName::PosZ],
            },
            // Obstacle fiber: every node clamped.
            BcConfig {
                nodes: NodeSelector::List((9..=17).collect()),
                fix: vec![
                    DofName::PosX,
                    DofName::PosY,
                    DofName::PosZ,
                    DofName::TanX,
                    DofName::TanY,
                    DofName::TanZ,
                ],
            },
            // Planar problem.
            BcConfig {
                nodes: NodeSelector::Keyword("all".to_string()),
                fix: vec![DofName::PosZ, DofName::TanZ],
            },
        ],
        point_loads: vec![LoadConfig {
            node: 4,
            force: [0.0, -5.0e-3, 0.0],
        }],
        output: OutputSection::default(),
    }
}

/// Two parallel simply supported fibers that snap into adhesive contact
/// under a Lennard-Jones law whose strength ramps with the load factor.
///
/// The well depth is balanced against the bending stiffness so the converged
/// surface gaps all sit on the stable branch clearly above the automatic
/// regularization gap: a regularized and an unregularized run then share the
/// same equilibrium. Newton increments are deliberately uncapped, so the
/// pull-in prediction genuinely overshoots into the repulsive core: the
/// unregularized law aborts such attempts on nonpositive trial gaps (cutting
/// the load step), while the regularized law rides its linear core branch
/// back out — that difference is what the iteration-count comparison
/// measures. Solver tolerances are set tight so both runs polish the root
/// far beyond the comparison threshold.
pub fn adhesive_contact_config(regularization: RegularizationSpec) -> ScenarioConfig {
    ScenarioConfig {
        name: "adhesive-contact".to_string(),
        description: "Two parallel simply supported fibers snapping into adhesive \
                      contact under a ramped Lennard-Jones law."
            .to_string(),
        fibers: vec![
            FiberConfig {
                start_len: [0.0, 0.0, 0.0],
                end_len: [1.0, 0.0, 0.0],
                n_elements: 8,
                radius_len: 0.02,
                material: 0,
            },
            FiberConfig {
                start_len: [0.0, 0.1, 0.0],
                end_len: [1.0, 0.1, 0.0],
                n_elements: 8,
                radius_len: 0.02,
                material: 0,
            },
        ],
        materials: vec![MaterialConfig {
            young_pressure: Some(1e4),
            poisson: Some(0.3),
            ea_force: None,
            ei_force_len2: None,
        }],
        law: LawConfig::LennardJones(LennardJonesLawConfig {
            phi_eq_energy: -400.0,
            r_eq_len: 0.05,
            rho1_per_len3: 1.0,
            rho2_per_len3: 1.0,
            regularization,
        }),
        interaction: InteractionConfig {
            scope: InteractionScope::InterFiber,
            cutoff_len: CutoffSpec::Value(0.5),
            n_segments: 2,
            n_gauss: 8,
            scale_with_load_factor: true,
            cell_size_len: None,
        },
        solver: SolverSection {
            tol_residual_force: 1e-12,
            tol_increment_len: 1e-10,
            max_iterations: 40,
            increment_cap_len: CapSpec::Keyword("off".to_string()),
            step_min: 1.0 / 256.0,
            load_targets: vec![1.0],
            ..SolverSection::default()
        },
        boundary_conditions: vec![
            BcConfig {
                nodes: NodeSelector::Keyword("ends".to_string()),
                fix: vec![DofName::PosX, DofName::PosY, DofName::PosZ],
            },
            BcConfig {
                nodes: NodeSelector::Keyword("all".to_string()),
                fix: vec![DofName::PosZ, DofName::TanZ],
            },
        ],
        point_loads: Vec::new(),
        output: OutputSection::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Node positions mirrored across the mid-plane between the two fibers
    /// must coincide: node `k` of fiber 0 against node `k` of fiber 1 with
    /// the x component reflected about x = d/2.
    fn mirror_asymmetry(model: &Model, d: f64, n_per_fiber: usize) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..n_per_fiber {
            let a = model.node_position(k);
            let b = model.node_position(n_per_fiber + k);
            worst = worst
                .max(((d - b[0]) - a[0]).abs())
                .max((b[1] - a[1]).abs())
                .max((b[2] - a[2]).abs());
        }
        worst
    }

    #[test]
    fn config_round_trips_through_json() {
        let config = charged_beams_config(&[0.4], 2, 10);
        let text = config.to_json().unwrap();
        let back = ScenarioConfig::from_json(&text).unwrap();
        assert_eq!(back.fibers.len(), 2);
        assert_eq!(back.interaction.n_gauss, 10);
        assert!(back.interaction.scale_with_load_factor);
        back.build().unwrap();
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let config = charged_beams_config(&[0.4], 2, 10);
        let mut v: serde_json::Value = serde_json::from_str(&config.to_json().unwrap()).unwrap();

        // Top level.
        let mut top = v.clone();
        top["frobnicate"] = serde_json::json!(1);
        assert!(serde_json::from_value::<ScenarioConfig>(top).is_err());

        // Inside a section.
        let mut sec = v.clone();
        sec["solver"]["tol_residual"] = serde_json::json!(1e-10); // missing unit suffix
        assert!(serde_json::from_value::<ScenarioConfig>(sec).is_err());

        // Inside the law object.
        let mut law = v.clone();
        law["law"]["coulomb"]["sigma3_charge_per_len2"] = serde_json::json!(0.0);
        assert!(serde_json::from_value::<ScenarioConfig>(law).is_err());

        // Unknown law kind.
        v["law"] = serde_json::json!({ "gravity": {} });
        assert!(serde_json::from_value::<ScenarioConfig>(v).is_err());
    }

    #[test]
    fn invalid_values_are_reported() {
        let mut config = charged_beams_config(&[0.4], 2, 10);
        config.solver.load_targets.clear();
        assert!(config.build().is_err());

        let mut config = charged_beams_config(&[0.4], 2, 10);
        config.interaction.cutoff_len = CutoffSpec::Keyword("unbounded".to_string());
        assert!(config.build().is_err());

        let mut config = charged_beams_config(&[0.4], 2, 10);
        config.boundary_conditions[0].nodes = NodeSelector::List(vec![99]);
        assert!(config.build().is_err());

        let mut config = charged_beams_config(&[0.4], 2, 10);
        config.materials[0].ea_force = Some(1.0); // both forms at once
        assert!(config.build().is_err());

        let mut config = charged_beams_config(&[0.4], 2, 10);
        config.fibers[0].radius_len = 0.03; // distinct radii are fine inter-fiber...
        config.build().unwrap();
        config.interaction.scope = InteractionScope::ExcludeSharedNode; // ...but not globally
        assert!(config.build().is_err());
    }

    #[test]
    fn charged_beams_converge_in_one_step_and_are_symmetric() {
        let config = charged_beams_config(&[0.4], 2, 10);
        let outcome = run_scenario(&config).unwrap();

        // One target, reached in a single load step without halving.
        assert_eq!(outcome.steps.len(), 1);
        let step = &outcome.steps[0];
        assert_eq!(step.load_factor, 0.4);
        assert!(step.residual_norm < 1e-10, "residual {}", step.residual_norm);
        assert!(step.increment_norm < 1e-8, "increment {}", step.increment_norm);

        // The fibers bow toward each other: midspan x of fiber 0 moves right.
        let mid0 = outcome.model.node_position(2);
        assert!(mid0[0] > 1e-3, "expected attraction, midspan at {}", mid0[0]);

        // Mirror symmetry about x = d/2.
        assert!(mirror_asymmetry(&outcome.model, 5.0, 6) <= 1e-8);

        // Out-of-plane reactions vanish.
        for &(dof, r) in &step.reactions {
            if dof % 6 == 2 {
                assert!(r.abs() <= 1e-9, "z reaction {r} at dof {dof}");
            }
        }

        // Momentum balance of the assembled interaction forces.
        let max = outcome.interaction_force_max.max(f64::MIN_POSITIVE);
        for c in 0..3 {
            assert!(outcome.interaction_force_sum[c].abs() <= 1e-10 * max);
        }
    }

    #[test]
    fn charged_beams_line_loads_are_antisymmetric() {
        let config = charged_beams_config(&[0.4], 2, 10);
        let outcome = run_scenario(&config).unwrap();

        // 2 fibers x 5 elements x 20 quadrature points.
        assert_eq!(outcome.line_loads.len(), 2 * 5 * 20);
        // Rows come out grouped by element in ascending order; the mirror
        // counterpart of (element e, point q) is (element e + 5, point q).
        let rows = &outcome.line_loads;
        let scale = rows
            .iter()
            .map(|r| Vector3::from(r.load).norm())
            .fold(0.0, f64::max);
        assert!(scale > 0.0);
        for k in 0..100 {
            let a = &rows[k];
            let b = &rows[k + 100];
            assert_eq!(a.element + 5, b.element);
            assert_eq!(a.xi, b.xi);
            // Equal and opposite x components, equal y components.
            assert!((a.load[0] + b.load[0]).abs() <= 1e-8 * scale);
            assert!((a.load[1] - b.load[1]).abs() <= 1e-8 * scale);
            assert!(a.load[2].abs() <= 1e-12 * scale);
            // Attraction: fiber 0 is pulled toward +x everywhere.
            assert!(a.load[0] > 0.0);
        }

        // Centerlines: shared interior nodes not duplicated.
        assert_eq!(outcome.centerlines.len(), 2);
        assert_eq!(outcome.centerlines[0].points.len(), 5 * 10 + 1);
    }

    #[test]
    fn uncharged_beams_stay_straight() {
        let mut config = charged_beams_config(&[1.0], 2, 10);
        if let LawConfig::Coulomb(c) = &mut config.law {
            c.sigma1_charge_per_len2 = 0.0;
            c.sigma2_charge_per_len2 = 0.0;
        }
        let outcome = run_scenario(&config).unwrap();
        let step = outcome.steps.last().unwrap();
        assert_eq!(step.interaction_energy, 0.0);
        assert_eq!(step.elastic_energy, 0.0);
        assert_eq!(outcome.external_work, 0.0);
        assert!(outcome.model.displacements().amax() == 0.0);
    }

    #[test]
    fn quadrature_refinement_leaves_solution_unchanged() {
        // Midspan position difference between a 2x10 and a 2x32 rule stays
        // below the discretization-independence threshold.
        let coarse = run_scenario(&charged_beams_config(&[0.4], 2, 10)).unwrap();
        let fine = run_scenario(&charged_beams_config(&[0.4], 2, 32)).unwrap();
        // Midspan of fiber 0 is the midpoint of element 2 (sample index 25
        // of the 51-point polyline).
        let a = Vector3::from(coarse.centerlines[0].points[25]);
        let b = Vector3::from(fine.centerlines[0].points[25]);
        assert!((a - b).norm() <= 1e-8, "midpoint moved by {}", (a - b).norm());
    }

    #[test]
    fn repulsive_contact_stays_separated_and_balanced() {
        let config = repulsive_contact_config();
        let outcome = run_scenario(&config).unwrap();
        let last = outcome.steps.last().expect("converged steps");
        assert_eq!(last.load_factor, 1.0);

        // Non-penetration: the deformable centerline clears the obstacle's
        // surface everywhere (the obstacle centerline is the x-axis), yet
        // the load visibly presses it below its free-flight height.
        let clearance = outcome.centerlines[0]
            .points
            .iter()
            .map(|p| p[1] - 0.04)
            .fold(f64::INFINITY, f64::min);
        assert!(clearance > 0.0, "surfaces interpenetrate: {clearance}");
        assert!(clearance < 0.04, "load never engaged the obstacle: {clearance}");

        // Deformed shape is symmetric about midspan x = 0.5.
        let model = &outcome.model;
        for k in 0..=8usize {
            let a = model.node_position(k);
            let b = model.node_position(8 - k);
            assert!(((1.0 - b[0]) - a[0]).abs() <= 1e-8);
            assert!((b[1] - a[1]).abs() <= 1e-8);
        }

        // The interaction line-load distribution on the deformable fiber
        // mirrors about midspan: same lift, opposite axial component.
        let rows: Vec<&LineLoadRecord> =
            outcome.line_loads.iter().filter(|r| r.fiber == 0).collect();
        let n_gp = 16;
        assert_eq!(rows.len(), 8 * n_gp, "all elements should engage");
        let scale = rows.iter().map(|r| r.load[1].abs()).fold(0.0, f64::max);
        assert!(scale > 0.0);
        for e in 0..8 {
            for q in 0..n_gp {
                let a = rows[e * n_gp + q];
                let b = rows[(7 - e) * n_gp + (n_gp - 1 - q)];
                assert_eq!(a.element, e);
                assert!(((1.0 - b.position[0]) - a.position[0]).abs() <= 1e-8);
                assert!((a.load[1] - b.load[1]).abs() <= 1e-8 * scale);
                assert!((a.load[0] + b.load[0]).abs() <= 1e-8 * scale);
                assert!(a.load[2].abs() <= 1e-15 * scale);
            }
        }
        // Near midspan the obstacle pushes the fiber up (+y).
        let mid = rows[3 * n_gp + n_gp - 1];
        assert!(mid.load[1] > 0.0, "midspan lift {}", mid.load[1]);

        // Interaction forces balance per axis in every converged state.
        let built = config.build().unwrap();
        let mut m2 = built.model;
        for s in &outcome.steps {
            m2.set_displacements(&s.displacements).unwrap();
            let asm = assemble(&m2, &built.interactions, s.load_factor, false).unwrap();
            assert!(asm.interaction_force_max > 0.0);
            for c in 0..3 {
                assert!(
                    asm.interaction_force_sum[c].abs() <= 1e-10 * asm.interaction_force_max,
                    "axis {c} unbalanced at load {}: {} vs max {}",
                    s.load_factor,
                    asm.interaction_force_sum[c],
                    asm.interaction_force_max
                );
            }
        }
    }

    /// Smallest surface gap between the two sampled centerlines.
    fn min_surface_gap(outcome: &ScenarioOutcome) -> f64 {
        let mut min = f64::INFINITY;
        for p in &outcome.centerlines[0].points {
            for q in &outcome.centerlines[1].points {
                let d = (Vector3::from(*p) - Vector3::from(*q)).norm();
                min = min.min(d - 0.04);
            }
        }
        min
    }

    #[test]
    fn regularization_preserves_the_equilibrium_with_fewer_iterations() {
        let full = run_scenario(&adhesive_contact_config(RegularizationSpec::Keyword(
            "off".to_string(),
        )))
        .unwrap();
        let reg = run_scenario(&adhesive_contact_config(RegularizationSpec::Keyword(
            "auto".to_string(),
        )))
        .unwrap();
        assert_eq!(full.steps.last().unwrap().load_factor, 1.0);
        assert_eq!(reg.steps.last().unwrap().load_factor, 1.0);

        // Both laws agree above the regularization gap, so once every
        // converged gap sits above it the two equilibria are the same
        // stationary point.
        let g_reg = {
            let pair = CrossSectionPair::volume(0.02, 0.02, 1.0).unwrap();
            default_regularization_gap(-400.0, 0.05, &pair).unwrap()
        };
        let min_gap = min_surface_gap(&reg);
        assert!(
            min_gap > g_reg + 1e-3,
            "converged gap {min_gap} too close to the regularized band {g_reg}"
        );
        let worst = (full.model.displacements() - reg.model.displacements()).amax();
        assert!(worst <= 1e-12, "equilibria differ by {worst}");

        // Fibers actually snapped in: the midspan gap closed substantially.
        assert!(min_gap < 0.05, "no snap-in happened: {min_gap}");

        // The full-law run pays for overshooting into the singular core at
        // least once; the regularized path must be strictly cheaper overall.
        assert!(
            full.failed_attempts >= 1,
            "the unregularized run never hit the core"
        );
        assert!(
            reg.total_newton_iterations < full.total_newton_iterations,
            "regularized {} vs full {} iterations",
            reg.total_newton_iterations,
            full.total_newton_iterations
        );
    }
}
