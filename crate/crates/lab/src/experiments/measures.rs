//! `measure-maximal`: fractal-measure statistics, the dyadic energy
//! majorant, and saturation of the μ-weighted maximal ratio over random
//! data. `lower-bound`: the focusing-construction scaling scan.

use bsq_core::measures::{
    cantor_alpha, cantor_measure, dyadic_energy_bound, lower_bound_scan, measure_stats,
    mu_maximal_ratio, DiscreteMeasure,
};
use bsq_core::rng::CounterRng;
use bsq_core::symbol::DispersionSymbol;

use rayon::prelude::*;

use crate::config::{Experiment, Resolved, Schema};
use crate::error::{LabError, LabResult};
use crate::report::{Report, Table};

use super::spectral::random_band_spectrum;
use super::RunParams;

pub fn measure_maximal_schema() -> Schema {
    Schema::new(Experiment::MeasureMaximal)
        .f64("ratio", 1.0 / 3.0)
        .usize("depth", 8)
        .f64("s", 0.25)
        .usize("f_count", 30)
        .f64("half_width", 8.0)
        .usize("grid_len", 1024)
        .f64("band", 4.0)
        .usize("uniform_atoms", 16384)
}

pub fn run_measure_maximal(cfg: &Resolved, params: RunParams, report: &mut Report) -> LabResult<()> {
    let ratio = cfg.f64("ratio");
    let depth = cfg.usize("depth");
    let s = cfg.f64("s");
    let f_count = cfg.usize("f_count");
    let half_width = cfg.f64("half_width");
    let grid_len = cfg.usize("grid_len");
    let band = cfg.f64("band");
    let uniform_atoms = cfg.usize("uniform_atoms");
    cfg.ensure(ratio > 0.0 && ratio <= 0.5, "ratio", "must lie in (0, 1/2]")?;
    cfg.ensure(depth >= 1 && depth <= 14, "depth", "must lie in 1..=14")?;
    cfg.ensure((0.25..0.5).contains(&s), "s", "must lie in [1/4, 1/2)")?;
    cfg.ensure(f_count >= 1, "f_count", "must be at least 1")?;
    cfg.ensure(uniform_atoms >= 256, "uniform_atoms", "must be at least 256")?;

    // Uniform-measure half-energy against the continuum closed form.
    let uniform = DiscreteMeasure::uniform(uniform_atoms)
        .map_err(LabError::numeric("uniform measure"))?;
    let ustats = measure_stats(&uniform, 0.5, 0.01)
        .map_err(LabError::numeric("uniform measure statistics"))?;
    let target = 4.0 * core::f64::consts::SQRT_2 / 3.0;
    report.scalar("uniform_i_half", ustats.i_alpha);
    report.check(
        "uniform-half-energy",
        (ustats.i_alpha - target).abs() <= 0.01 * target,
        format!("I_1/2 = {:.6} vs 4√2/3 = {target:.6}", ustats.i_alpha),
    );

    // Cantor measure statistics and the dyadic energy majorant.
    let mu = cantor_measure(ratio, depth as u32).map_err(LabError::numeric("Cantor measure"))?;
    let alpha = cantor_alpha(ratio);
    let stats = measure_stats(&mu, alpha, mu.min_pair_distance())
        .map_err(LabError::numeric("measure statistics"))?;
    report.scalar("alpha", alpha);
    report.scalar("c_alpha", stats.c_alpha);
    report.scalar("i_alpha", stats.i_alpha);
    for (name, m) in [("cantor", &mu), ("uniform", &uniform)] {
        let e = dyadic_energy_bound(m, s, if name == "cantor" { alpha } else { 1.0 })
            .map_err(LabError::numeric("dyadic energy bound"))?;
        report.check(
            &format!("dyadic-majorant-{name}"),
            e.direct <= e.majorant,
            format!("direct {:.5} <= majorant {:.5}", e.direct, e.majorant),
        );
    }

    // Maximal-ratio saturation over random band-limited data. The sup runs
    // over the dyadic set {(t, N) = (2^{-k}, 2^j)}; doubling the index
    // ranges extends toward t → 0 (where B_t f → f) and N → ∞ (where the
    // truncation opens fully), so a finite maximal value must stop growing.
    let sym = DispersionSymbol::BOUSSINESQ;
    let t_base: Vec<f64> = (1..=8).map(|k| 2f64.powi(-k)).collect();
    let t_doubled: Vec<f64> = (1..=16).map(|k| 2f64.powi(-k)).collect();
    let n_base: Vec<f64> = (1..=5).map(|j| 2f64.powi(j)).collect();
    let n_doubled: Vec<f64> = (1..=10).map(|j| 2f64.powi(j)).collect();

    let ratios: Vec<LabResult<(f64, f64)>> = (0..f_count)
        .into_par_iter()
        .map(|i| {
            let rng = CounterRng::new(params.seed).substream(100 + i as u64);
            let f = random_band_spectrum(half_width, grid_len, band, &rng)?;
            let base = mu_maximal_ratio(&f, &mu, &stats, &sym, &t_base, &n_base, s)
                .map_err(LabError::numeric("maximal ratio"))?;
            let doubled = mu_maximal_ratio(&f, &mu, &stats, &sym, &t_doubled, &n_doubled, s)
                .map_err(LabError::numeric("maximal ratio (doubled sets)"))?;
            Ok((base, doubled))
        })
        .collect();

    let mut table = Table::new("ratios", &["f_index", "base", "doubled"]);
    let mut all_finite = true;
    let mut saturated = true;
    let mut worst_growth = 0.0_f64;
    for (i, r) in ratios.into_iter().enumerate() {
        let (base, doubled) = r?;
        all_finite &= base.is_finite() && doubled.is_finite();
        let growth = doubled / base - 1.0;
        worst_growth = worst_growth.max(growth);
        saturated &= growth <= 0.05;
        table.push(vec![i as f64, base, doubled]);
    }
    report.tables.push(table);
    report.scalar("worst_set_growth", worst_growth);
    report.check(
        "maximal-ratio-saturates",
        all_finite && saturated,
        format!("worst growth {worst_growth:.4} when doubling the (t, N) set"),
    );
    Ok(())
}

pub fn lower_bound_schema() -> Schema {
    Schema::new(Experiment::LowerBound)
        .f64("alpha", 0.5)
        .f64("s", 0.3)
        .list_f64("n_list", &[16.0, 32.0, 64.0, 128.0, 256.0, 512.0])
        .f64("half_width", 16.0)
        .usize("grid_len", 8192)
        .usize("atoms", 32)
}

pub fn run_lower_bound(cfg: &Resolved, _params: RunParams, report: &mut Report) -> LabResult<()> {
    let alpha = cfg.f64("alpha");
    let s = cfg.f64("s");
    let n_list = cfg.list_f64("n_list");
    let half_width = cfg.f64("half_width");
    let grid_len = cfg.usize("grid_len");
    let atoms = cfg.usize("atoms");
    cfg.ensure(alpha > 0.0 && alpha <= 1.0, "alpha", "must lie in (0, 1]")?;
    cfg.ensure(s > 0.0 && s < 0.5, "s", "must lie in (0, 1/2)")?;
    cfg.ensure(n_list.len() >= 4, "n_list", "needs at least 4 levels")?;

    let scan = lower_bound_scan(&n_list, alpha, s, half_width, grid_len, atoms)
        .map_err(LabError::numeric("lower-bound scan"))?;
    let mut table = Table::new("scan", &["n", "lhs", "rhs"]);
    for row in &scan.rows {
        table.push(vec![row.n, row.lhs, row.rhs]);
    }
    report.tables.push(table);
    report.scalar("lhs_slope", scan.lhs_fit.slope);
    report.scalar("rhs_slope", scan.rhs_fit.slope);
    report.scalar("norm_slope", scan.norm_fit.slope);
    report.check(
        "lhs-grows-linearly",
        scan.lhs_fit.slope >= 0.9,
        format!("LHS log-slope {:.4} (want >= 0.9)", scan.lhs_fit.slope),
    );
    report.check(
        "norm-slope-matches",
        (scan.norm_fit.slope - (s + 0.5)).abs() <= 0.05,
        format!("‖f‖ log-slope {:.4} vs s + 1/2 = {:.2}", scan.norm_fit.slope, s + 0.5),
    );
    let rhs_cap = alpha / 2.0 + s + 0.5 + 0.1;
    report.check(
        "rhs-slope-bounded",
        scan.rhs_fit.slope <= rhs_cap,
        format!("RHS log-slope {:.4} vs cap {rhs_cap:.2}", scan.rhs_fit.slope),
    );
    Ok(())
}
