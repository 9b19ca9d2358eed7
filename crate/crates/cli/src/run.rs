//! Experiment execution: turn a validated [`RunConfig`] into a finished
//! [`TimeSeries64`] with a complete metadata echo.

use crate::config::{
    FrequencyScanConfig, GapScanConfig, HarmonicEvolveConfig, MasterSolveConfig, RunConfig,
    SpinEvolveConfig,
};
use gapchannel_core::spin_mps::{
    classify_spin_regime, evolve_tebd, ground_state_chain, prepare_initial, EvolveOptions,
    GroundStateOptions,
};
use gapchannel_core::timeseries::TimeSeries;
use gapchannel_core::{harmonic_gaussian, master_analytics, oracles, Result, TimeSeries64};
use std::collections::BTreeMap;

/// Shrink a run request to desk scale in place, returning a note describing
/// the change (or `None` if the request was already desk-sized).
///
/// Spin runs are capped at 60 sites and `t_max = 100` with the ancilla
/// separation preserved and recentered; harmonic runs are capped at 400
/// oscillators the same way. The analytic kinds are already cheap.
pub fn desk_scale(config: &mut RunConfig) -> Option<String> {
    let mut notes = Vec::new();
    match config {
        RunConfig::SpinEvolve(c) => {
            let p = &mut c.params;
            if p.n > 60 {
                let d = p.site_r - p.site_s;
                notes.push(format!(
                    "n={} m_s={} m_r={} reduced to n=60 with separation kept",
                    p.n, p.site_s, p.site_r
                ));
                p.n = 60;
                p.site_s = (60usize.saturating_sub(d)) / 2 + 1;
                p.site_r = p.site_s + d;
            }
            if c.t_max > 100.0 {
                notes.push(format!("t_max={} reduced to 100", c.t_max));
                c.t_max = 100.0;
            }
        }
        RunConfig::HarmonicEvolve(c) => {
            let p = &mut c.params;
            if p.n > 400 {
                let d = p.site_r - p.site_s;
                notes.push(format!(
                    "n={} site_s={} site_r={} reduced to n=400 with separation kept",
                    p.n, p.site_s, p.site_r
                ));
                p.n = 400;
                p.site_s = (400usize.saturating_sub(d)) / 2;
                p.site_r = p.site_s + d;
            }
        }
        RunConfig::MasterSolve(_) | RunConfig::FrequencyScan(_) | RunConfig::GapScan(_) => {}
    }
    if notes.is_empty() {
        None
    } else {
        Some(notes.join("; "))
    }
}

/// Label of the first CSV column for each experiment kind.
pub fn axis_label(config: &RunConfig) -> &'static str {
    match config {
        RunConfig::SpinEvolve(_)
        | RunConfig::HarmonicEvolve(_)
        | RunConfig::MasterSolve(_) => "t",
        RunConfig::FrequencyScan(_) => "pinning",
        RunConfig::GapScan(_) => "n",
    }
}

/// Execute a run and return its sampled series.
///
/// `extra_metadata` is merged in after the run's own echo, so preset notes
/// (desk-scale deviations and the like) always survive.
pub fn execute(
    config: &RunConfig,
    extra_metadata: &BTreeMap<String, String>,
) -> Result<TimeSeries64> {
    let mut series = match config {
        RunConfig::SpinEvolve(c) => run_spin(c)?,
        RunConfig::HarmonicEvolve(c) => run_harmonic(c)?,
        RunConfig::MasterSolve(c) => run_master(c)?,
        RunConfig::FrequencyScan(c) => run_frequency_scan(c)?,
        RunConfig::GapScan(c) => run_gap_scan(c)?,
    };
    series
        .metadata
        .insert("kind".into(), config.kind().name().into());
    for (key, value) in extra_metadata {
        series.metadata.insert(key.clone(), value.clone());
    }
    Ok(series)
}

fn put(series: &mut TimeSeries64, key: &str, value: impl ToString) {
    series.metadata.insert(key.into(), value.to_string());
}

/// Evenly spaced samples from 0 to `t_max` inclusive.
fn sample_grid(t_max: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    (0..n)
        .map(|i| t_max * i as f64 / (n - 1) as f64)
        .collect()
}

fn run_spin(c: &SpinEvolveConfig) -> Result<TimeSeries64> {
    let ground_options = GroundStateOptions {
        chi: c.chi.max(10),
        ..GroundStateOptions::default()
    };
    let (ground, ground_energy) = ground_state_chain(&c.params, &ground_options)?;
    let state = prepare_initial(&ground, &c.params)?;
    let options = EvolveOptions::new(c.dt, c.t_max, c.sample_every, c.chi);
    let (mut series, _) = evolve_tebd(state, &c.params, &options)?;

    let regime = classify_spin_regime(&c.params)?;
    put(&mut series, "n", c.params.n);
    put(&mut series, "b", c.params.field);
    put(&mut series, "jx", c.params.jx);
    put(&mut series, "jy", c.params.jy);
    put(&mut series, "jz", c.params.jz);
    put(&mut series, "ba", c.params.ancilla_field);
    put(&mut series, "ja", c.params.ancilla_coupling);
    put(&mut series, "m_s", c.params.site_s);
    put(&mut series, "m_r", c.params.site_r);
    put(&mut series, "t_max", c.t_max);
    put(&mut series, "sample_every", c.sample_every);
    put(&mut series, "ground_energy", ground_energy);
    put(&mut series, "regime", format!("{:?}", regime.regime).to_lowercase());
    put(&mut series, "gap", regime.gap);
    put(&mut series, "gap_uncertainty", regime.gap_uncertainty);
    Ok(series)
}

fn run_harmonic(c: &HarmonicEvolveConfig) -> Result<TimeSeries64> {
    let times = sample_grid(c.t_max, c.samples);
    let mut series = harmonic_gaussian::simulate_occupations(&c.params, c.ns0, &times)?;
    let model = master_analytics::ChainAncillaModel::from(&c.params);
    put(&mut series, "n", c.params.n);
    put(&mut series, "coupling", c.params.coupling);
    put(&mut series, "pinning", c.params.pinning);
    put(&mut series, "ancilla_freq", c.params.ancilla_freq);
    put(&mut series, "ja", c.params.ancilla_coupling);
    put(&mut series, "m_s", c.params.site_s);
    put(&mut series, "m_r", c.params.site_r);
    put(&mut series, "ns0", c.ns0);
    put(&mut series, "t_max", c.t_max);
    put(&mut series, "samples", c.samples);
    put(
        &mut series,
        "regime",
        master_analytics::classify_harmonic_regime(&model),
    );
    Ok(series)
}

fn run_master(c: &MasterSolveConfig) -> Result<TimeSeries64> {
    let coeffs = master_analytics::asymptotic_coefficients(&c.model)?;
    let mut series = TimeSeries::new(&["n_s", "n_r"]);
    for t in sample_grid(c.t_max, c.samples) {
        let (ns, nr) =
            master_analytics::occupations_analytic(&coeffs, c.ja, c.ns0, c.nr0, t);
        series.push(t, &[ns, nr])?;
    }
    put(&mut series, "coupling", c.model.coupling);
    put(&mut series, "pinning", c.model.pinning);
    put(&mut series, "ancilla_freq", c.model.ancilla_freq);
    put(&mut series, "separation", c.model.separation);
    put(&mut series, "ja", c.ja);
    put(&mut series, "ns0", c.ns0);
    put(&mut series, "nr0", c.nr0);
    put(&mut series, "t_max", c.t_max);
    put(&mut series, "samples", c.samples);
    put(&mut series, "x0", coeffs.x0);
    put(&mut series, "x1", coeffs.x1);
    put(&mut series, "y0", coeffs.y0);
    put(&mut series, "y1", coeffs.y1);
    put(&mut series, "regime", coeffs.regime);
    if coeffs.regime == master_analytics::HarmonicRegime::Virtual {
        let t_star = master_analytics::full_transfer_times(&coeffs, c.ja, 1)?[0];
        put(&mut series, "first_transfer_time", t_star);
    }
    Ok(series)
}

fn run_frequency_scan(c: &FrequencyScanConfig) -> Result<TimeSeries64> {
    let mut series = TimeSeries::new(&["freq_quadrature", "freq_residue"]);
    let mut branches: Vec<String> = Vec::new();
    for i in 0..c.pinning_steps {
        let pinning = c.pinning_min
            + (c.pinning_max - c.pinning_min) * i as f64 / (c.pinning_steps - 1) as f64;
        let model = master_analytics::ChainAncillaModel {
            coupling: c.coupling,
            pinning,
            ancilla_freq: c.ancilla_freq,
            separation: c.separation,
        };
        let quadrature = master_analytics::oscillation_frequency_quadrature(&model, c.ja)?;
        let (residue, branch) = master_analytics::oscillation_frequency_residue(&model, c.ja)?;
        let branch = branch.to_string();
        if !branches.contains(&branch) {
            branches.push(branch);
        }
        series.push(pinning, &[quadrature, residue])?;
    }
    put(&mut series, "coupling", c.coupling);
    put(&mut series, "ancilla_freq", c.ancilla_freq);
    put(&mut series, "ja", c.ja);
    put(&mut series, "separation", c.separation);
    put(&mut series, "pinning_min", c.pinning_min);
    put(&mut series, "pinning_max", c.pinning_max);
    put(&mut series, "pinning_steps", c.pinning_steps);
    put(&mut series, "residue_branch", branches.join("+"));
    Ok(series)
}

fn run_gap_scan(c: &GapScanConfig) -> Result<TimeSeries64> {
    let estimate = oracles::finite_chain_gap(&c.params, &c.sizes)?;
    let mut series = TimeSeries::new(&["gap"]);
    for &(n, gap) in &estimate.per_size {
        series.push(n as f64, &[gap])?;
    }
    let regime = classify_spin_regime(&c.params)?;
    put(&mut series, "b", c.params.field);
    put(&mut series, "jx", c.params.jx);
    put(&mut series, "jy", c.params.jy);
    put(&mut series, "jz", c.params.jz);
    put(&mut series, "ba", c.params.ancilla_field);
    put(&mut series, "ja", c.params.ancilla_coupling);
    put(
        &mut series,
        "sizes",
        c.sizes
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    put(&mut series, "gap_extrapolated", estimate.gap);
    put(&mut series, "gap_uncertainty", estimate.uncertainty);
    put(&mut series, "splitting", regime.splitting);
    put(&mut series, "resolution", regime.resolution);
    put(&mut series, "regime", format!("{:?}", regime.regime).to_lowercase());
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn master_solve_echoes_coefficients_and_transfer_time() {
        let text = "kind = master-solve\ncoupling = 1\npinning = 0.8\n\
                    ancilla_freq = 0.5\nseparation = 3\nja = 0.05\nt_max = 100\nsamples = 5\n";
        let config = parse_config(text).unwrap();
        let series = execute(&config, &BTreeMap::new()).unwrap();
        assert_eq!(series.len(), 5);
        assert_eq!(series.metadata["kind"], "master-solve");
        assert_eq!(series.metadata["regime"], "virtual");
        assert!(series.metadata.contains_key("y1"));
        assert!(series.metadata.contains_key("first_transfer_time"));
        let ns = series.column("n_s").unwrap();
        assert!((ns[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frequency_scan_produces_matching_columns() {
        let text = "kind = frequency-scan\ncoupling = 1\nancilla_freq = 0.5\n\
                    ja = 0.05\nseparation = 3\npinning_min = 0.6\npinning_max = 0.9\n\
                    pinning_steps = 4\n";
        let config = parse_config(text).unwrap();
        let series = execute(&config, &BTreeMap::new()).unwrap();
        let quad = series.column("freq_quadrature").unwrap();
        let residue = series.column("freq_residue").unwrap();
        for (q, r) in quad.iter().zip(residue) {
            assert!(((q - r) / q).abs() < 1e-6);
        }
        assert!(series.metadata.contains_key("residue_branch"));
    }

    #[test]
    fn gap_scan_classifies_the_transverse_ising_chain() {
        let text = "kind = gap-scan\nb = 1\njx = 0.3\nba = 0.64\nja = 0.05\n";
        let config = parse_config(text).unwrap();
        let series = execute(&config, &BTreeMap::new()).unwrap();
        assert_eq!(series.metadata["regime"], "virtual");
        assert_eq!(series.len(), 3);
        let gap: f64 = series.metadata["gap_extrapolated"].parse().unwrap();
        assert!((gap - 1.4).abs() < 0.1, "gap {gap}");
    }

    #[test]
    fn spin_run_samples_probabilities_and_energy() {
        let text = "kind = spin-evolve\nn = 8\nb = 1\njx = 0.3\nba = 0.64\nja = 0.05\n\
                    m_s = 3\nm_r = 6\nt_max = 2\ndt = 0.05\nsample_every = 10\nchi = 16\n";
        let config = parse_config(text).unwrap();
        let series = execute(&config, &BTreeMap::new()).unwrap();
        assert_eq!(series.metadata["regime"], "virtual");
        let ud = series.column("p_ud").unwrap();
        assert!((ud[0] - 1.0).abs() < 1e-10);
        assert!(series.column("energy").is_some());
    }

    #[test]
    fn harmonic_run_tracks_occupations() {
        let text = "kind = harmonic-evolve\nn = 40\ncoupling = 1\npinning = 0.8\n\
                    ancilla_freq = 0.5\nja = 0.05\nm_s = 10\nm_r = 13\nt_max = 10\nsamples = 6\n";
        let config = parse_config(text).unwrap();
        let series = execute(&config, &BTreeMap::new()).unwrap();
        let ns = series.column("n_s").unwrap();
        assert!((ns[0] - 1.0).abs() < 1e-10);
        assert_eq!(series.metadata["regime"], "virtual");
    }
}
