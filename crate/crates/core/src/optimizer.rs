//! Classical parameter optimisation: a bounded Nelder–Mead simplex search,
//! the seeded multi-restart variational loop, and the depth-one beta sweep.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::brute_force_optimum;
use crate::problem::Problem;
use crate::simulator::{
    expectation, init_state, probabilities, run_ansatz, AnsatzParams, InitialState, MixerEngine,
    StateVector,
};

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadConfig {
    pub max_evaluations: usize,
    /// Stop once every vertex is within this infinity-norm distance of the best.
    pub x_tolerance: f64,
    /// Stop once all vertex values are within this of the best value.
    pub f_tolerance: f64,
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        Self {
            max_evaluations: 2000,
            x_tolerance: 1e-8,
            f_tolerance: 1e-8,
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            initial_step: 0.25,
        }
    }
}

impl NelderMeadConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidOptimizer(msg.to_string()));
        if self.max_evaluations == 0 {
            return bad("max_evaluations must be positive");
        }
        if !(self.x_tolerance > 0.0 && self.f_tolerance > 0.0) {
            return bad("tolerances must be positive");
        }
        if !(self.reflection > 0.0) {
            return bad("reflection coefficient must be > 0");
        }
        if !(self.expansion > 1.0) {
            return bad("expansion coefficient must be > 1");
        }
        if !(self.contraction > 0.0 && self.contraction < 1.0) {
            return bad("contraction coefficient must be in (0, 1)");
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return bad("shrink coefficient must be in (0, 1)");
        }
        if !(self.initial_step > 0.0) {
            return bad("initial_step must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

fn clamp_into(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *v = v.clamp(lo, hi);
    }
}

/// Minimises `objective` inside the box `bounds`. Proposals leaving the box
/// are clamped coordinate-wise before evaluation.
pub fn nelder_mead<F>(
    mut objective: F,
    x0: &[f64],
    bounds: &[(f64, f64)],
    cfg: &NelderMeadConfig,
) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> f64,
{
    cfg.validate()?;
    let dim = x0.len();
    if dim == 0 {
        return Err(Error::InvalidOptimizer("empty parameter vector".into()));
    }
    if bounds.len() != dim {
        return Err(Error::InvalidOptimizer(format!("{} bounds for {dim} parameters", bounds.len())));
    }
    for (i, (&v, &(lo, hi))) in x0.iter().zip(bounds).enumerate() {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidOptimizer(format!("invalid bounds [{lo}, {hi}] on coordinate {i}")));
        }
        if !(lo..=hi).contains(&v) {
            return Err(Error::InvalidOptimizer(format!("x0[{i}] = {v} outside [{lo}, {hi}]")));
        }
    }

    let evaluations = std::cell::Cell::new(0usize);
    let mut eval = |x: &[f64]| {
        evaluations.set(evaluations.get() + 1);
        objective(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), eval(x0)));
    for i in 0..dim {
        let mut x = x0.to_vec();
        let (lo, hi) = bounds[i];
        x[i] = if x[i] + cfg.initial_step <= hi { x[i] + cfg.initial_step } else { x[i] - cfg.initial_step };
        x[i] = x[i].clamp(lo, hi);
        let f = eval(&x);
        simplex.push((x, f));
    }

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        let f_spread = worst - best;
        let x_spread = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_spread <= cfg.f_tolerance || x_spread <= cfg.x_tolerance || evaluations.get() >= cfg.max_evaluations {
            break;
        }

        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / dim as f64;
            }
        }
        let toward = |from: &[f64], coef: f64| -> Vec<f64> {
            let mut p: Vec<f64> =
                centroid.iter().zip(from).map(|(c, f)| c + coef * (f - c)).collect();
            clamp_into(&mut p, bounds);
            p
        };

        let xr = toward(&simplex[dim].0, -cfg.reflection);
        let fr = eval(&xr);
        if fr < best {
            let xe = toward(&xr, cfg.expansion);
            let fe = eval(&xe);
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let xc = toward(&xr, cfg.contraction);
            let fc = eval(&xc);
            (xc, fc)
        } else {
            let xc = toward(&simplex[dim].0, cfg.contraction);
            let fc = eval(&xc);
            (xc, fc)
        };
        if fc < fr.min(worst) {
            simplex[dim] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let mut x: Vec<f64> =
                anchor.iter().zip(&vertex.0).map(|(a, v)| a + cfg.shrink * (v - a)).collect();
            clamp_into(&mut x, bounds);
            let f = eval(&x);
            *vertex = (x, f);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Ok(Minimum { x, value, evaluations: evaluations.get() })
}

/// Settings for [`vqe_optimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct VqeRunConfig {
    pub p: usize,
    pub restarts: usize,
    pub seed: u64,
    /// `None` picks the problem default (plus for Max-Cut, empty set for MIS).
    pub initial_state: Option<InitialState>,
    pub nelder_mead: NelderMeadConfig,
    /// When set, restart 0 starts from these angles (zero-padded to depth p)
    /// instead of a random point.
    pub warm_start: Option<AnsatzParams>,
    /// Upper bound on worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl VqeRunConfig {
    pub fn new(p: usize, restarts: usize, seed: u64) -> Self {
        Self {
            p,
            restarts,
            seed,
            initial_state: None,
            nelder_mead: NelderMeadConfig::default(),
            warm_start: None,
            threads: None,
        }
    }

    pub fn with_initial_state(mut self, init: InitialState) -> Self {
        self.initial_state = Some(init);
        self
    }

    pub fn with_warm_start(mut self, params: AnsatzParams) -> Self {
        self.warm_start = Some(params);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }
}

/// Optimum reached by a single restart.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartResult {
    pub params: AnsatzParams,
    pub expectation: f64,
    pub evaluations: usize,
    pub distribution: Vec<f64>,
}

/// Everything produced by [`vqe_optimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct VqeOutcome {
    pub problem: Problem,
    pub p: usize,
    pub seed: u64,
    pub initial_state: InitialState,
    pub c_max: f64,
    /// Restart-index order.
    pub restarts: Vec<RestartResult>,
    /// Index into `restarts` of the best expectation (first on ties).
    pub best_index: usize,
    /// Arithmetic mean of the restarts' final distributions.
    pub averaged_distribution: Vec<f64>,
    /// Probability mass of `averaged_distribution` outside the feasible set.
    pub feasibility_leakage: f64,
}

impl VqeOutcome {
    pub fn best(&self) -> &RestartResult {
        &self.restarts[self.best_index]
    }

    pub fn approximation_ratio(&self) -> f64 {
        self.best().expectation / self.c_max
    }
}

/// Compiled problem instance: cost diagonal, mixer engine and initial state.
#[derive(Debug, Clone)]
pub struct Instance {
    pub problem: Problem,
    pub cost_diag: Vec<f64>,
    pub engine: MixerEngine,
    pub initial_state: InitialState,
    pub initial: StateVector,
    pub c_max: f64,
    pub feasible: Vec<bool>,
}

impl Instance {
    pub fn new(problem: Problem, g: &Graph, init: Option<InitialState>) -> Result<Self> {
        let init = init.unwrap_or_else(|| problem.default_initial_state(g.num_nodes()));
        problem.check_initial_state(g, &init)?;
        let cost_diag = problem.cost(g).diagonal_values()?;
        let engine = MixerEngine::new(&problem.mixer(g))?;
        let initial = init_state(g.num_nodes(), &init)?;
        let c_max = brute_force_optimum(problem, g)?.optimal_value;
        let mut feasible = vec![problem == Problem::MaxCut; cost_diag.len()];
        if problem == Problem::Mis {
            for s in g.enumerate_feasible()? {
                feasible[s.index() as usize] = true;
            }
        }
        Ok(Self { problem, cost_diag, engine, initial_state: init, initial, c_max, feasible })
    }

    pub fn evolve(&self, params: &AnsatzParams) -> Result<StateVector> {
        run_ansatz(&self.cost_diag, &self.engine, params, &self.initial)
    }

    /// `F_p` at the given angles.
    pub fn expectation(&self, params: &AnsatzParams) -> Result<f64> {
        expectation(&self.evolve(params)?, &self.cost_diag)
    }

    pub fn leakage(&self, distribution: &[f64]) -> f64 {
        distribution.iter().zip(&self.feasible).filter(|(_, f)| !**f).map(|(p, _)| p).sum()
    }
}

/// Random generator for one restart: the run seed selects the ChaCha key and
/// the restart index selects the stream, so restarts never share randomness
/// and results do not depend on scheduling.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

fn random_start(rng: &mut ChaCha8Rng, p: usize) -> Vec<f64> {
    let mut x: Vec<f64> = (0..p).map(|_| rng.gen_range(0.0..=AnsatzParams::GAMMA_MAX)).collect();
    x.extend((0..p).map(|_| rng.gen_range(0.0..=AnsatzParams::BETA_MAX)));
    x
}

fn optimize_restart(inst: &Instance, cfg: &VqeRunConfig, index: usize) -> Result<RestartResult> {
    let x0 = match (&cfg.warm_start, index) {
        (Some(w), 0) => w.padded(cfg.p).to_flat(),
        _ => random_start(&mut restart_rng(cfg.seed, index), cfg.p),
    };
    let bounds = AnsatzParams::bounds(cfg.p);
    let objective = |x: &[f64]| {
        let params = AnsatzParams { gammas: x[..cfg.p].to_vec(), betas: x[cfg.p..].to_vec() };
        -inst.expectation(&params).expect("dimensions fixed by the instance")
    };
    let min = nelder_mead(objective, &x0, &bounds, &cfg.nelder_mead)?;
    let params = AnsatzParams::from_flat(&min.x)?;
    let state = inst.evolve(&params)?;
    Ok(RestartResult {
        expectation: expectation(&state, &inst.cost_diag)?,
        params,
        evaluations: min.evaluations,
        distribution: probabilities(&state),
    })
}

/// Runs `cfg.restarts` independent Nelder–Mead maximisations of `F_p` and
/// aggregates them in restart order.
pub fn vqe_optimize(problem: Problem, g: &Graph, cfg: &VqeRunConfig) -> Result<VqeOutcome> {
    if cfg.p == 0 {
        return Err(Error::InvalidParams("depth p must be at least 1".into()));
    }
    if cfg.restarts == 0 {
        return Err(Error::InvalidParams("restarts must be at least 1".into()));
    }
    if let Some(w) = &cfg.warm_start {
        if w.depth() > cfg.p {
            return Err(Error::InvalidParams(format!("warm start depth {} exceeds p = {}", w.depth(), cfg.p)));
        }
    }
    let inst = Instance::new(problem, g, cfg.initial_state)?;

    let run_all = || -> Result<Vec<RestartResult>> {
        (0..cfg.restarts).into_par_iter().map(|i| optimize_restart(&inst, cfg, i)).collect()
    };
    let restarts = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?
            .install(run_all)?,
        None => run_all()?,
    };

    let dim = inst.cost_diag.len();
    let mut averaged = vec![0.0; dim];
    for r in &restarts {
        for (a, p) in averaged.iter_mut().zip(&r.distribution) {
            *a += p;
        }
    }
    averaged.iter_mut().for_each(|a| *a /= restarts.len() as f64);

    let mut best_index = 0;
    for (i, r) in restarts.iter().enumerate() {
        if r.expectation > restarts[best_index].expectation {
            best_index = i;
        }
    }

    Ok(VqeOutcome {
        problem,
        p: cfg.p,
        seed: cfg.seed,
        initial_state: inst.initial_state,
        c_max: inst.c_max,
        feasibility_leakage: inst.leakage(&averaged),
        restarts,
        best_index,
        averaged_distribution: averaged,
    })
}

/// `n` evenly spaced points on `[0, pi]`.
pub fn beta_grid(n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.0],
        _ => (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Depth-one expectation normalised by `c_max` at each beta, with
/// `gamma_1 = 0` (it has no effect on a basis-state input).
pub fn sweep_p1(
    cost_diag: &[f64],
    engine: &MixerEngine,
    initial: &StateVector,
    c_max: f64,
    betas: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if betas.is_empty() {
        return Err(Error::InvalidParams("empty beta grid".into()));
    }
    if !(c_max > 0.0) {
        return Err(Error::InvalidParams(format!("c_max must be positive, got {c_max}")));
    }
    betas
        .iter()
        .map(|&beta| {
            let params = AnsatzParams { gammas: vec![0.0], betas: vec![beta] };
            let state = run_ansatz(cost_diag, engine, &params, initial)?;
            Ok((beta, expectation(&state, cost_diag)? / c_max))
        })
        .collect()
}
