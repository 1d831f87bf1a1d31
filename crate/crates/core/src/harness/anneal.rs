//! Simulated annealing over integer vertex displacements, minimizing the
//! knotted-cycle count of a K₈ embedding.
//!
//! The search explores the open question of how few knotted Hamiltonian
//! cycles an embedding can have. It records the best census seen and
//! never claims optimality.

use super::{random_embedding, ExperimentConfig, SplitMix64};
use crate::diagram::ProjectedEmbedding;
use crate::geometry::{rat, Embedding, Point3};
use crate::graph::{complete_graph, hamiltonian_cycles, CycleFamily};
use crate::invariant::knotted_census_count;
use crate::{Error, Result};

/// Geometric cooling from `t_initial` down to `t_final`.
#[derive(Debug, Clone, Copy)]
pub struct Schedule {
    pub t_initial: f64,
    pub t_final: f64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            t_initial: 10.0,
            t_final: 0.05,
        }
    }
}

impl Schedule {
    fn temperature(&self, iteration: usize, iters: usize) -> f64 {
        if iters <= 1 {
            return self.t_initial;
        }
        let frac = iteration as f64 / (iters - 1) as f64;
        self.t_initial * (self.t_final / self.t_initial).powf(frac)
    }
}

/// Annealing trajectory state; `best_objective` is non-increasing over
/// the run.
#[derive(Debug, Clone)]
pub struct SearchState {
    pub current: Embedding,
    pub current_objective: usize,
    pub temperature: f64,
    pub iteration: usize,
    pub best: Embedding,
    pub best_objective: usize,
    pub accepted_moves: usize,
    pub invalid_moves: usize,
}

fn objective(embedding: &Embedding, family: &CycleFamily) -> Result<usize> {
    let pe = ProjectedEmbedding::new(embedding.clone())?;
    knotted_census_count(&pe, family)
}

/// Minimizes the knotted-cycle count of K₈ embeddings by displacing one
/// vertex at a time by a uniform integer offset in [−δ, δ]³ with
/// δ = max(1, coord_range/100). Moves that break general position are
/// rejected outright. Deterministic in (config, iters, schedule).
pub fn anneal_min_knotted(
    config: &ExperimentConfig,
    iters: usize,
    schedule: &Schedule,
) -> Result<SearchState> {
    if config.n != 8 {
        return Err(Error::InvalidConfig(format!(
            "annealing targets K8; got n = {}",
            config.n
        )));
    }
    let graph = complete_graph(config.n)?;
    let family = hamiltonian_cycles(&graph);
    let mut rng = SplitMix64::new(config.seed);
    let init_seed = rng.next_u64();
    let sampled = random_embedding(config.n, init_seed, config.coord_range)?;
    let current = sampled.embedding;
    let current_objective = objective(&current, &family)?;

    let mut state = SearchState {
        best: current.clone(),
        best_objective: current_objective,
        current,
        current_objective,
        temperature: schedule.t_initial,
        iteration: 0,
        accepted_moves: 0,
        invalid_moves: 0,
    };
    let delta = (config.coord_range / 100).max(1);

    for iteration in 0..iters {
        state.iteration = iteration + 1;
        state.temperature = schedule.temperature(iteration, iters);
        let v = rng.next_below(config.n as u64) as usize;
        let (dx, dy, dz) = (
            rng.next_int_in(-delta, delta),
            rng.next_int_in(-delta, delta),
            rng.next_int_in(-delta, delta),
        );
        let old = state.current.point(v);
        let moved = Point3::new(&old.x + rat(dx), &old.y + rat(dy), &old.z + rat(dz));
        let candidate = state.current.with_point(v, moved)?;
        let candidate_objective = match objective(&candidate, &family) {
            Ok(obj) => obj,
            Err(_) => {
                state.invalid_moves += 1;
                continue;
            }
        };
        let diff = candidate_objective as f64 - state.current_objective as f64;
        let accept = diff <= 0.0 || rng.next_unit() < (-diff / state.temperature).exp();
        if accept {
            state.current = candidate;
            state.current_objective = candidate_objective;
            state.accepted_moves += 1;
            if candidate_objective < state.best_objective {
                state.best_objective = candidate_objective;
                state.best = state.current.clone();
            }
        }
    }
    Ok(state)
}
