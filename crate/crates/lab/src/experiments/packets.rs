//! `counterexample`: the focusing wave-packet engine — mass constant,
//! focusing floor, dispersive/arrival constants with refinement stability,
//! cascade summability certificate, and the divergence witness.

use bsq_core::symbol::DispersionSymbol;
use bsq_core::wavepacket::{
    build_cascade, calibrate_delta, divergence_witness, make_bump, packet_bound_suite,
    packet_evolve, CascadeSpec, PacketQuad,
};

use rayon::prelude::*;

use crate::config::{Experiment, Resolved, Schema};
use crate::error::{LabError, LabResult};
use crate::report::{Report, Table};

use super::RunParams;

pub fn counterexample_schema() -> Schema {
    Schema::new(Experiment::Counterexample)
        .f64("s", 0.2)
        .usize("depth", 2)
        .usize("x_count", 4)
        .f64("tol", 1e-6)
}

pub fn run_counterexample(cfg: &Resolved, params: RunParams, report: &mut Report) -> LabResult<()> {
    let s = cfg.f64("s");
    let depth = cfg.usize("depth");
    let x_count = cfg.usize("x_count");
    cfg.ensure(s > 0.0 && s < 0.25, "s", "must lie in (0, 1/4)")?;
    cfg.ensure((1..=4).contains(&depth), "depth", "must lie in 1..=4")?;
    cfg.ensure(x_count >= 1, "x_count", "must be at least 1")?;

    let quad = PacketQuad {
        precision: params.precision.to_core(),
        tol: cfg.f64("tol"),
    };
    let sym = DispersionSymbol::BOUSSINESQ;
    let bump = make_bump();

    // Mass constant: c₀ = |∫g| / 4 by construction; the check verifies the
    // tabulated transform integral against the exact 2π/e of the profile.
    let mass_ref = 2.0 * core::f64::consts::PI / core::f64::consts::E;
    let mass_err = (bump.integral.abs() - mass_ref).abs();
    report.check(
        "transform-mass",
        mass_err <= bump.tail_bound + 1e-8,
        format!("|∫g| = {:.8}, closed form {mass_ref:.8}", bump.integral.abs()),
    );
    report.scalar("c0", bump.c0);
    report.scalar("v0", bump.v0);
    report.scalar("focusing_floor", bump.focusing_floor());

    let delta = calibrate_delta(&bump, &quad).map_err(LabError::numeric("delta calibration"))?;
    report.scalar("delta", delta);
    report.check(
        "offset-ceiling",
        delta >= 1.0 / 16.0,
        format!("calibrated dyadic delta = {delta}"),
    );

    // Focusing floor on a (v, x) grid: |B_{t(x)} f_v(x)| ≥ c₀/(2π).
    let floor = bump.focusing_floor();
    let mut floor_cases = Vec::new();
    for j in 1..=3 {
        let v = bump.v0 * libm::pow(2.0, -(j as f64));
        for i in 1..=5 {
            floor_cases.push((v, delta * i as f64 / 6.0));
        }
    }
    let floor_vals: Vec<LabResult<f64>> = floor_cases
        .par_iter()
        .map(|&(v, x)| {
            let t = sym
                .focusing_time(x, v)
                .map_err(LabError::numeric("focusing time"))?;
            Ok(packet_evolve(&bump, v, x, t, &quad)
                .map_err(LabError::numeric("packet evolution"))?
                .norm())
        })
        .collect();
    let mut floor_table = Table::new("floor", &["v", "x", "value", "floor"]);
    let mut floor_min = f64::INFINITY;
    for ((v, x), val) in floor_cases.iter().zip(floor_vals) {
        let val = val?;
        floor_min = floor_min.min(val);
        floor_table.push(vec![*v, *x, val, floor]);
    }
    report.tables.push(floor_table);
    report.check(
        "focusing-floor",
        floor_min >= floor,
        format!("min |B| = {floor_min:.5} vs floor {floor:.5}"),
    );

    // Dispersive-decay and arrival constants, with one refinement doubling.
    let grids = |density: usize| {
        let v: Vec<f64> = (1..=density)
            .map(|j| bump.v0 * libm::pow(2.0, -(j as f64)))
            .collect();
        let t: Vec<f64> = (0..2 * density)
            .map(|j| libm::pow(10.0, -3.0 + 3.0 * j as f64 / (2 * density) as f64))
            .collect();
        let x: Vec<f64> = (1..=density)
            .map(|j| delta * j as f64 / (density + 1) as f64)
            .collect();
        (v, t, x)
    };
    let (v1, t1, x1) = grids(3);
    let coarse = packet_bound_suite(&bump, s, delta, &v1, &t1, &x1, &quad)
        .map_err(LabError::numeric("packet bound suite"))?;
    let (v2, t2, x2) = grids(6);
    let fine = packet_bound_suite(&bump, s, delta, &v2, &t2, &x2, &quad)
        .map_err(LabError::numeric("packet bound suite (refined)"))?;
    report.scalar("dispersion_constant", fine.dispersion);
    report.scalar("arrival_constant", fine.arrival);
    report.scalar("hs_ratio", fine.hs_ratio);
    let disp_ratio = fine.dispersion / coarse.dispersion;
    let arr_ratio = fine.arrival / coarse.arrival;
    report.check(
        "dispersion-constant-stable",
        fine.dispersion.is_finite() && disp_ratio <= 2.0,
        format!("sup |B|√t/v = {:.4e} (refinement ratio {disp_ratio:.3})", fine.dispersion),
    );
    report.check(
        "arrival-constant-stable",
        fine.arrival.is_finite() && arr_ratio <= 2.0,
        format!("sup |B|v⁴/t = {:.4e} (refinement ratio {arr_ratio:.3})", fine.arrival),
    );

    // Cascade summability certificate.
    let cascade = build_cascade(
        &bump,
        CascadeSpec {
            s,
            v1: bump.v0 / 2.0,
            depth,
            delta,
        },
    )
    .map_err(LabError::numeric("cascade construction"))?;
    let mut cascade_table = Table::new("cascade", &["k", "v", "hs_norm"]);
    for (k, (v, n)) in cascade.v.iter().zip(&cascade.norms).enumerate() {
        cascade_table.push(vec![(k + 1) as f64, *v, *n]);
    }
    report.tables.push(cascade_table);
    report.scalar("total_hs_norm", cascade.total_norm);
    report.scalar("cert_bound", cascade.cert_bound);
    report.check(
        "summability-certificate",
        cascade.total_norm.is_finite() && cascade.cert_bound.is_finite(),
        format!(
            "Σ‖f‖ = {:.4e}, geometric ceiling {:.4e}",
            cascade.total_norm, cascade.cert_bound
        ),
    );

    // Divergence witness: every focusing level stays above c₀/(4π).
    let witness = divergence_witness(&bump, &cascade, x_count, &quad)
        .map_err(LabError::numeric("divergence witness"))?;
    let mut wit_table = Table::new("witness", &["k", "min_value", "early_max", "late_max", "pass"]);
    for row in &witness.rows {
        wit_table.push(vec![
            row.k as f64,
            row.min_value,
            row.early_max,
            row.late_max,
            if row.pass { 1.0 } else { 0.0 },
        ]);
        report.check(
            &format!("witness-level-{}", row.k),
            row.pass,
            format!(
                "min |Σ B f| = {:.5} vs floor {:.5} (spillover {:.2e}/{:.2e})",
                row.min_value, witness.floor, row.early_max, row.late_max
            ),
        );
    }
    report.tables.push(wit_table);
    report.scalar("witness_floor", witness.floor);
    Ok(())
}
