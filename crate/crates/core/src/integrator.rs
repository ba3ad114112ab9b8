//! Fixed-step fourth-order Runge-Kutta with a bit-exact evaluation-order
//! contract.
//!
//! Both pseudo-orbits go through this one integrator verbatim; they differ
//! only in which right-hand side they evaluate. Every stage combination is
//! written out per component in a fixed left-to-right grouping so the result
//! is reproducible across runs and platforms.

use thiserror::Error;

use crate::chua::{ChuaParams, ChuaState, StateDerivative};

/// Which natural interval extension drives the simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsChoice {
    ExtensionA,
    ExtensionB,
}

impl RhsChoice {
    pub fn eval(self, s: &ChuaState, p: &ChuaParams) -> StateDerivative {
        match self {
            RhsChoice::ExtensionA => crate::chua::rhs_extension_a(s, p),
            RhsChoice::ExtensionB => crate::chua::rhs_extension_b(s, p),
        }
    }
}

/// A fixed-step simulation request.
#[derive(Debug, Clone, Copy)]
pub struct SimulationPlan {
    /// Step size (seconds), positive and finite.
    pub h: f64,
    pub n_steps: usize,
    pub rhs_choice: RhsChoice,
}

/// The computed pseudo-orbit, initial state included at index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<ChuaState>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntegrationError {
    #[error("state became non-finite at step {step}")]
    NonFiniteState { step: usize },
}

fn advance(s: &ChuaState, k: &StateDerivative, c: f64) -> ChuaState {
    ChuaState {
        v_c1: s.v_c1 + c * k.dv_c1,
        v_c2: s.v_c2 + c * k.dv_c2,
        i_l: s.i_l + c * k.di_l,
    }
}

/// One classical RK4 step. The weighted sum is accumulated left to right
/// per component: `s + (h/6) * (k1 + 2*k2 + 2*k3 + k4)`.
pub fn rk4_step<F>(rhs: F, s: &ChuaState, p: &ChuaParams, h: f64) -> Result<ChuaState, IntegrationError>
where
    F: Fn(&ChuaState, &ChuaParams) -> StateDerivative,
{
    let k1 = rhs(s, p);
    let k2 = rhs(&advance(s, &k1, h / 2.0), p);
    let k3 = rhs(&advance(s, &k2, h / 2.0), p);
    let k4 = rhs(&advance(s, &k3, h), p);
    let next = ChuaState {
        v_c1: s.v_c1 + (h / 6.0) * (k1.dv_c1 + 2.0 * k2.dv_c1 + 2.0 * k3.dv_c1 + k4.dv_c1),
        v_c2: s.v_c2 + (h / 6.0) * (k1.dv_c2 + 2.0 * k2.dv_c2 + 2.0 * k3.dv_c2 + k4.dv_c2),
        i_l: s.i_l + (h / 6.0) * (k1.di_l + 2.0 * k2.di_l + 2.0 * k3.di_l + k4.di_l),
    };
    if !next.is_finite() {
        return Err(IntegrationError::NonFiniteState { step: 0 });
    }
    Ok(next)
}

/// Iterates [`rk4_step`] `n_steps` times. Deterministic: identical inputs
/// yield bit-identical trajectories.
pub fn simulate(
    plan: &SimulationPlan,
    s0: &ChuaState,
    p: &ChuaParams,
) -> Result<Trajectory, IntegrationError> {
    let mut states = Vec::with_capacity(plan.n_steps + 1);
    states.push(*s0);
    let mut current = *s0;
    for step in 0..plan.n_steps {
        current = rk4_step(|s, p| plan.rhs_choice.eval(s, p), &current, p, plan.h)
            .map_err(|_| IntegrationError::NonFiniteState { step: step + 1 })?;
        states.push(current);
    }
    Ok(Trajectory { states })
}
