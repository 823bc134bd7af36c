//! Quasi-static equilibrium: dense LU linear solves, Newton iteration with
//! a displacement-increment cap, Dirichlet elimination with reaction
//! recovery, and adaptive load stepping (halve on failure, double back
//! after four consecutive successes).

use crate::assembly::{assemble, Interaction};
use crate::model::Model;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Newton and load-stepping parameters.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Convergence threshold on the free-DOF residual norm.
    pub tol_residual: f64,
    /// Convergence threshold on the Newton increment norm.
    pub tol_increment: f64,
    /// Iteration budget per Newton solve.
    pub max_iters: usize,
    /// Cap on the per-node position increment per iteration (`None` = off).
    pub increment_cap: Option<f64>,
    /// Initial load-step size (in load-factor units).
    pub step_initial: f64,
    /// Smallest admissible step before aborting.
    pub step_min: f64,
    /// Consecutive converged steps at reduced size before doubling.
    pub double_after: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol_residual: 1e-10,
            tol_increment: 1e-8,
            max_iters: 25,
            increment_cap: None,
            step_initial: 1.0,
            step_min: 1.0 / 64.0,
            double_after: 4,
        }
    }
}

impl SolverConfig {
    /// Reject nonpositive tolerances, caps, or step sizes.
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_residual > 0.0) || !(self.tol_increment > 0.0) {
            return Err(Error::parameter(
                "tolerances",
                "residual and increment tolerances must be positive",
            ));
        }
        if self.max_iters == 0 {
            return Err(Error::parameter("max_iters", "need at least one iteration"));
        }
        if let Some(cap) = self.increment_cap {
            if !(cap > 0.0) {
                return Err(Error::parameter("increment_cap", "cap must be positive"));
            }
        }
        if !(self.step_initial > 0.0)
            || !(self.step_min > 0.0)
            || self.step_min > self.step_initial
        {
            return Err(Error::parameter(
                "stepping",
                "need 0 < step_min <= step_initial",
            ));
        }
        Ok(())
    }
}

/// Dense LU solve with a post-solve accuracy check.
///
/// Returns `dx` with `K dx = r`; fails with [`Error::SingularMatrix`] when
/// factorization breaks down and [`Error::LinearSolveCheck`] when the
/// verified relative residual of the solve exceeds `1e-10`.
pub fn linear_solve(k: &DMatrix<f64>, r: &DVector<f64>) -> Result<DVector<f64>> {
    if k.nrows() != k.ncols() || k.nrows() != r.len() {
        return Err(Error::parameter(
            "k",
            format!(
                "shape mismatch: K is {}x{}, r has length {}",
                k.nrows(),
                k.ncols(),
                r.len()
            ),
        ));
    }
    let r_norm = r.norm();
    if r_norm == 0.0 {
        return Ok(DVector::zeros(r.len()));
    }
    let lu = k.clone().lu();
    let dx = lu.solve(r).ok_or(Error::SingularMatrix)?;
    if !dx.iter().all(|v| v.is_finite()) {
        return Err(Error::SingularMatrix);
    }
    let rel = (k * &dx - r).norm() / r_norm;
    if rel >= 1e-10 {
        return Err(Error::LinearSolveCheck { rel });
    }
    Ok(dx)
}

/// Norms of one Newton iteration.
#[derive(Debug, Clone, Copy)]
pub struct IterationNorms {
    /// Free-DOF residual norm after the update.
    pub residual: f64,
    /// Norm of the applied increment (after capping).
    pub increment: f64,
}

/// Outcome of a Newton solve.
#[derive(Debug, Clone)]
pub struct NewtonReport {
    /// Both tolerance checks passed.
    pub converged: bool,
    /// Iterations performed.
    pub iterations: usize,
    /// Per-iteration norms.
    pub history: Vec<IterationNorms>,
}

fn gather(v: &DVector<f64>, idx: &[usize]) -> DVector<f64> {
    DVector::from_iterator(idx.len(), idx.iter().map(|&d| v[d]))
}

/// `true` for failures caused by the state being evaluated — a trial
/// configuration that left the admissible region of the interaction laws or
/// produced an unsolvable linearization — which a smaller load step can
/// avoid. Structural errors (bad parameters, shape mismatches) stay fatal.
fn state_dependent(e: &Error) -> bool {
    matches!(
        e,
        Error::SingularGap { .. }
            | Error::CoincidentCentroids { .. }
            | Error::DegenerateElement { .. }
            | Error::SingularMatrix
            | Error::LinearSolveCheck { .. }
    )
}

/// Largest per-node position-increment norm of a free-DOF update.
fn max_nodal_position_increment(model: &Model, free: &[usize], dx: &DVector<f64>) -> f64 {
    let mut per_node = vec![0.0f64; model.n_nodes()];
    for (k, &d) in free.iter().enumerate() {
        let node = d / 6;
        let comp = d % 6;
        if comp < 3 {
            per_node[node] += dx[k] * dx[k];
        }
    }
    per_node.iter().fold(0.0f64, |m, &s| m.max(s)).sqrt()
}

/// Newton iteration at a fixed load factor, starting from (and updating)
/// the model's current displacements.
///
/// Each iteration solves the free-DOF system, optionally rescales the
/// increment so no node's position moves farther than the cap, applies the
/// update, and re-assembles. Convergence requires both the residual and
/// the increment norm below their tolerances.
///
/// A report with `converged: false` is returned as `Ok` — so load stepping
/// can cut the step — when the iteration budget is exhausted, when a trial
/// state generated by the iteration leaves the admissible region of the
/// interaction laws (nonpositive gap, coincident centroids), when its
/// linearization cannot be solved, or when the residual overflows. Failures
/// at the state the caller committed — the entry state of the first
/// iteration — are errors instead: they indicate an inadmissible initial
/// configuration or missing constraints, which no step size can repair.
pub fn newton_solve(
    model: &mut Model,
    interactions: &[Interaction],
    load_factor: f64,
    config: &SolverConfig,
) -> Result<NewtonReport> {
    config.validate()?;
    let free = model.free_dofs();
    let mut history: Vec<IterationNorms> = Vec::new();

    for iter in 1..=config.max_iters {
        let asm = match assemble(model, interactions, load_factor, true) {
            Ok(asm) => asm,
            Err(e) if iter > 1 && state_dependent(&e) => {
                return Ok(NewtonReport {
                    converged: false,
                    iterations: iter - 1,
                    history,
                });
            }
            Err(e) => return Err(e),
        };
        let r_free = gather(&asm.residual, &free);
        let k_full = asm.stiffness.expect("stiffness requested");
        let mut k_free = DMatrix::<f64>::zeros(free.len(), free.len());
        for (a, &ga) in free.iter().enumerate() {
            for (b, &gb) in free.iter().enumerate() {
                k_free[(a, b)] = k_full[(ga, gb)];
            }
        }
        let mut dx = match linear_solve(&k_free, &(-&r_free)) {
            Ok(dx) => dx,
            Err(e) if iter > 1 && state_dependent(&e) => {
                return Ok(NewtonReport {
                    converged: false,
                    iterations: iter,
                    history,
                });
            }
            Err(e) => return Err(e),
        };

        if let Some(cap) = config.increment_cap {
            let max_move = max_nodal_position_increment(model, &free, &dx);
            if max_move > cap {
                dx *= cap / max_move;
            }
        }

        let mut u = model.displacements().clone();
        for (k, &d) in free.iter().enumerate() {
            u[d] += dx[k];
        }
        model.set_displacements(&u)?;

        let after = match assemble(model, interactions, load_factor, false) {
            Ok(asm) => asm,
            Err(e) if state_dependent(&e) => {
                return Ok(NewtonReport {
                    converged: false,
                    iterations: iter,
                    history,
                });
            }
            Err(e) => return Err(e),
        };
        let res_norm = gather(&after.residual, &free).norm();
        let inc_norm = dx.norm();
        history.push(IterationNorms {
            residual: res_norm,
            increment: inc_norm,
        });
        if !res_norm.is_finite() {
            return Ok(NewtonReport {
                converged: false,
                iterations: iter,
                history,
            });
        }
        if res_norm < config.tol_residual && inc_norm < config.tol_increment {
            return Ok(NewtonReport {
                converged: true,
                iterations: iter,
                history,
            });
        }
    }
    Ok(NewtonReport {
        converged: false,
        iterations: config.max_iters,
        history,
    })
}

/// Reaction forces at the Dirichlet DOFs: the assembled residual rows at
/// fixed DOFs, i.e. the generalized forces the supports exert on the
/// structure at equilibrium. Returns `(dof index, value)` pairs.
pub fn reactions(
    model: &Model,
    interactions: &[Interaction],
    load_factor: f64,
) -> Result<Vec<(usize, f64)>> {
    let asm = assemble(model, interactions, load_factor, false)?;
    Ok(model
        .fixed_dofs()
        .into_iter()
        .map(|d| (d, asm.residual[d]))
        .collect())
}

/// Pure step-size controller implementing halve-on-failure /
/// double-after-`n`-successes to restore the initial size.
#[derive(Debug, Clone)]
pub struct StepController {
    initial: f64,
    min: f64,
    double_after: usize,
    step: f64,
    consecutive: usize,
}

impl StepController {
    /// Controller starting at the initial step.
    pub fn new(initial: f64, min: f64, double_after: usize) -> Result<StepController> {
        if !(initial > 0.0) || !(min > 0.0) || min > initial {
            return Err(Error::parameter(
                "stepping",
                "need 0 < step_min <= step_initial",
            ));
        }
        Ok(StepController {
            initial,
            min,
            double_after,
            step: initial,
            consecutive: 0,
        })
    }

    /// Step size to attempt next.
    pub fn step(&self) -> f64 {
        self.step
    }

    /// Record a converged step; doubles back toward the initial size after
    /// the configured run of successes at a reduced size.
    pub fn on_success(&mut self) {
        if self.step >= self.initial {
            return;
        }
        self.consecutive += 1;
        if self.consecutive >= self.double_after {
            self.step = (2.0 * self.step).min(self.initial);
            self.consecutive = 0;
        }
    }

    /// Record a failed step; halves the size or reports underflow at the
    /// given load factor.
    pub fn on_failure(&mut self, load_factor: f64) -> Result<()> {
        let next = 0.5 * self.step;
        self.consecutive = 0;
        if next < self.min {
            return Err(Error::StepUnderflow {
                load_factor,
                step: next,
                min_step: self.min,
            });
        }
        self.step = next;
        Ok(())
    }
}

/// One converged load step of a trajectory.
#[derive(Debug, Clone)]
pub struct StepRecord {
    /// Load factor reached.
    pub load_factor: f64,
    /// Newton iterations used.
    pub iterations: usize,
    /// Final residual norm.
    pub residual_norm: f64,
    /// Final increment norm.
    pub increment_norm: f64,
    /// Elastic strain energy at equilibrium.
    pub elastic_energy: f64,
    /// Interaction potential at equilibrium.
    pub interaction_energy: f64,
    /// Reactions at fixed DOFs, `(dof, value)`.
    pub reactions: Vec<(usize, f64)>,
    /// Full displacement vector at equilibrium (for work integrals and
    /// post-processing of intermediate states).
    pub displacements: DVector<f64>,
}

/// Converged load steps plus the aggregate Newton cost of reaching them.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Converged load steps, ascending in load factor.
    pub steps: Vec<StepRecord>,
    /// Newton iterations summed over every attempt, failed attempts
    /// included (an attempt cut short by an inadmissible trial state
    /// contributes the iterations it completed before the abort).
    pub total_iterations: usize,
    /// Attempts that ended without convergence; each one halved the step.
    pub failed_attempts: usize,
}

/// March the load factor from 0 through each target (ascending, final
/// typically 1), adapting the step size on Newton failures. The model is
/// left at the last converged state; after a failed attempt the
/// displacements are restored to the last converged checkpoint before the
/// halved retry.
pub fn adaptive_load_stepping(
    model: &mut Model,
    interactions: &[Interaction],
    config: &SolverConfig,
    targets: &[f64],
) -> Result<Trajectory> {
    config.validate()?;
    if targets.is_empty() {
        return Err(Error::parameter("targets", "need at least one load target"));
    }
    let mut sorted = targets.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted[0] <= 0.0 || sorted.iter().any(|t| !t.is_finite()) {
        return Err(Error::parameter(
            "targets",
            "load targets must be positive and finite",
        ));
    }

    let mut controller =
        StepController::new(config.step_initial, config.step_min, config.double_after)?;
    let mut steps = Vec::new();
    let mut total_iterations = 0usize;
    let mut failed_attempts = 0usize;
    let mut lambda = 0.0f64;
    let mut checkpoint = model.displacements().clone();

    for &target in &sorted {
        while lambda < target - 1e-14 {
            let next = (lambda + controller.step()).min(target);
            let report = newton_solve(model, interactions, next, config)?;
            total_iterations += report.iterations;
            if report.converged {
                lambda = next;
                checkpoint = model.displacements().clone();
                controller.on_success();
                let asm = assemble(model, interactions, lambda, false)?;
                let last = report.history.last().expect("at least one iteration");
                steps.push(StepRecord {
                    load_factor: lambda,
                    iterations: report.iterations,
                    residual_norm: last.residual,
                    increment_norm: last.increment,
                    elastic_energy: asm.elastic_energy,
                    interaction_energy: asm.interaction_energy,
                    reactions: reactions(model, interactions, lambda)?,
                    displacements: model.displacements().clone(),
                });
            } else {
                failed_attempts += 1;
                model.set_displacements(&checkpoint)?;
                controller.on_failure(lambda)?;
            }
        }
    }
    Ok(Trajectory {
        steps,
        total_iterations,
        failed_attempts,
    })
}
