//! The experiment pipelines: each wires core-kernel calls into a
//! [`Report`], with rayon fan-out only over order-preserving index maps so
//! results are byte-identical at any worker count.

mod kernels;
mod measures;
mod packets;
mod radial;
mod spectral;

use crate::config::{Config, Experiment, PrecisionChoice, Schema};
use crate::error::LabResult;
use crate::report::Report;

/// Shared run parameters handed to every pipeline.
#[derive(Debug, Clone, Copy)]
pub struct RunParams {
    pub seed: u64,
    pub threads: usize,
    pub precision: PrecisionChoice,
}

/// The full schema of an experiment (used for validation and docs).
pub fn schema(experiment: Experiment) -> Schema {
    match experiment {
        Experiment::Convergence => spectral::convergence_schema(),
        Experiment::Counterexample => packets::counterexample_schema(),
        Experiment::KernelDecay => kernels::kernel_decay_schema(),
        Experiment::Vdc => kernels::vdc_schema(),
        Experiment::MeasureMaximal => measures::measure_maximal_schema(),
        Experiment::LowerBound => measures::lower_bound_schema(),
        Experiment::Bessel => radial::bessel_schema(),
        Experiment::RadialSharpness => radial::sharpness_schema(),
    }
}

/// Validate `config` for `experiment` and run the pipeline inside a rayon
/// pool of `params.threads` workers.
pub fn run_experiment(
    experiment: Experiment,
    config: &Config,
    params: RunParams,
) -> LabResult<Report> {
    let resolved = schema(experiment).resolve(config)?;
    let mut report = Report::new(
        experiment,
        resolved.echo(),
        params.seed,
        params.threads,
        params.precision,
    );
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(params.threads.max(1))
        .build()
        .map_err(|e| crate::error::LabError::Config(format!("thread pool: {e}")))?;
    pool.install(|| match experiment {
        Experiment::Convergence => spectral::run_convergence(&resolved, params, &mut report),
        Experiment::Counterexample => packets::run_counterexample(&resolved, params, &mut report),
        Experiment::KernelDecay => kernels::run_kernel_decay(&resolved, params, &mut report),
        Experiment::Vdc => kernels::run_vdc(&resolved, params, &mut report),
        Experiment::MeasureMaximal => measures::run_measure_maximal(&resolved, params, &mut report),
        Experiment::LowerBound => measures::run_lower_bound(&resolved, params, &mut report),
        Experiment::Bessel => radial::run_bessel(&resolved, params, &mut report),
        Experiment::RadialSharpness => radial::run_sharpness(&resolved, params, &mut report),
    })?;
    Ok(report)
}
