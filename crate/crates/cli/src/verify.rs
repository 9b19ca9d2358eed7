//! Cross-module verification: every acceptance criterion of the suite as an
//! executable check with pinned tolerances.
//!
//! Each criterion produces one report with a machine-readable line
//! (criterion id, per-check measured value, bound, pass flag). The checks
//! here are the authority on what the suite promises; the integration test
//! target and the `verify` subcommand both run exactly this code.

use gapchannel_core::harmonic_gaussian::{
    self, symplectic_propagator, HarmonicModelParams,
};
use gapchannel_core::master_analytics::{
    asymptotic_coefficients, occupations_analytic, oscillation_frequency_quadrature,
    oscillation_frequency_residue, ChainAncillaModel,
};
use gapchannel_core::spin_mps::{
    build_hamiltonian_terms, classify_spin_regime, evolve_tebd, ground_state_chain,
    prepare_initial, EvolveOptions, GroundStateOptions, SpinRegime,
};
use gapchannel_core::{oracles, HarmonicModelParams64, Result, SpinModelParams64, TimeSeries64};
use nalgebra::DMatrix;

/// One measured quantity with its pinned bound.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    /// Pass when `measured <= bound`.
    fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            bound,
            pass: measured <= bound,
        }
    }

    /// Pass when `measured >= bound`.
    fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            bound,
            pass: measured >= bound,
        }
    }

    /// Pass when `measured` lies within `[lo, hi]`; the bound column records
    /// the center of the window.
    fn within(name: impl Into<String>, measured: f64, lo: f64, hi: f64) -> Self {
        Check {
            name: format!("{}[{lo}..{hi}]", name.into()),
            measured,
            bound: (lo + hi) / 2.0,
            pass: (lo..=hi).contains(&measured),
        }
    }
}

/// Result of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// One line per criterion: id, verdict, and each check's numbers.
    pub fn line(&self) -> String {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let details: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                format!(
                    "{}={:.6e} (bound {:.3e}, {})",
                    c.name,
                    c.measured,
                    c.bound,
                    if c.pass { "ok" } else { "violated" }
                )
            })
            .collect();
        format!(
            "criterion {:2} {verdict} {}: {}",
            self.id,
            self.title,
            details.join("; ")
        )
    }
}

/// Harmonic model of the resonant benchmark (ancilla frequency in the band).
fn resonant_harmonic() -> HarmonicModelParams64 {
    HarmonicModelParams {
        n: 400,
        coupling: 1.0,
        pinning: 0.2,
        ancilla_freq: 0.5,
        ancilla_coupling: 0.05,
        site_s: 200,
        site_r: 209,
    }
}

/// Harmonic model of the coherent-transfer benchmark (below the band).
fn virtual_harmonic() -> HarmonicModelParams64 {
    HarmonicModelParams {
        n: 400,
        coupling: 1.0,
        pinning: 0.8,
        ancilla_freq: 0.5,
        ancilla_coupling: 0.05,
        site_s: 200,
        site_r: 203,
    }
}

fn spin_chain(n: usize, jx: f64, jy: f64, jz: f64, ba: f64, ja: f64, m_s: usize, m_r: usize)
    -> SpinModelParams64 {
    SpinModelParams64 {
        n,
        field: 1.0,
        jx,
        jy,
        jz,
        ancilla_field: ba,
        ancilla_coupling: ja,
        site_s: m_s,
        site_r: m_r,
    }
}

/// Ground state preparation plus real-time TEBD with sampled observables.
fn spin_run(
    params: &SpinModelParams64,
    dt: f64,
    t_max: f64,
    sample_every: usize,
    chi: usize,
) -> Result<TimeSeries64> {
    let ground_options = GroundStateOptions {
        chi: chi.max(16),
        ..GroundStateOptions::default()
    };
    let (ground, _) = ground_state_chain(params, &ground_options)?;
    let state = prepare_initial(&ground, params)?;
    let options = EvolveOptions::new(dt, t_max, sample_every, chi);
    let (series, _) = evolve_tebd(state, params, &options)?;
    Ok(series)
}

fn column_max(series: &TimeSeries64, name: &str) -> f64 {
    series
        .column(name)
        .expect("column exists")
        .iter()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b))
}

/// Relative energy drift `max |E(t) - E(0)| / |E(0)|` of a sampled run.
fn energy_drift(series: &TimeSeries64) -> f64 {
    let energy = series.column("energy").expect("energy column");
    let e0 = energy[0];
    energy
        .iter()
        .map(|e| (e - e0).abs())
        .fold(0.0, f64::max)
        / e0.abs()
}

/// Time at which radiation emitted by the ancillas can first return after
/// reflecting off a chain boundary: round trip to the nearest edge at the
/// maximum group velocity of the dispersion.
fn recurrence_time(params: &HarmonicModelParams64) -> f64 {
    let mut vg_max = 0.0f64;
    for i in 1..2000 {
        let k = std::f64::consts::PI * i as f64 / 2000.0;
        let w = harmonic_gaussian::dispersion(params.coupling, params.pinning, k);
        vg_max = vg_max.max(params.coupling * params.coupling * k.sin() / w);
    }
    let edge_distance = params
        .site_s
        .min(params.n - 1 - params.site_r)
        .min(params.site_r.min(params.n - 1 - params.site_s)) as f64;
    2.0 * edge_distance / vg_max
}

/// Criterion 1: analytic occupations within 5% of the exact Gaussian
/// dynamics on the resonant benchmark.
///
/// The full-window checks are held over `t` up to 2000 even though at
/// `N = 400` the radiation reflected off the chain boundary returns to the
/// ancillas near `t = 450` and ruins the comparison from then on; the
/// recurrence-guarded check restricts to times before that first return,
/// where the master solution is genuinely predictive.
pub fn criterion_1() -> Result<CriterionReport> {
    let params = resonant_harmonic();
    let times: Vec<f64> = (0..=200).map(|i| i as f64 * 10.0).collect();
    let gauss = harmonic_gaussian::simulate_occupations(&params, 1.0, &times)?;
    let coeffs = asymptotic_coefficients(&ChainAncillaModel::from(&params))?;
    // Dispersive precursors run ahead of the ballistic packet; keep a 10%
    // margin below the round-trip estimate.
    let t_guard = 0.9 * recurrence_time(&params);
    let ns_g = gauss.column("n_s").unwrap();
    let nr_g = gauss.column("n_r").unwrap();
    let scale_in = |col: &[f64], t_max: f64| {
        col.iter()
            .zip(gauss.times())
            .filter(|&(_, &t)| t <= t_max)
            .fold(0.0f64, |a, (&b, _)| a.max(b))
    };
    let ns_scale = scale_in(ns_g, f64::INFINITY);
    let nr_scale = scale_in(nr_g, f64::INFINITY);
    let ns_scale_guarded = scale_in(ns_g, t_guard);
    let nr_scale_guarded = scale_in(nr_g, t_guard);
    let mut dev_s = 0.0f64;
    let mut dev_r = 0.0f64;
    let mut dev_guarded = 0.0f64;
    for (i, &t) in gauss.times().iter().enumerate() {
        let (ns_a, nr_a) = occupations_analytic(&coeffs, params.ancilla_coupling, 1.0, 0.0, t);
        let ds = (ns_a - ns_g[i]).abs();
        let dr = (nr_a - nr_g[i]).abs();
        dev_s = dev_s.max(ds / ns_scale);
        dev_r = dev_r.max(dr / nr_scale);
        if t < t_guard {
            dev_guarded = dev_guarded.max((ds / ns_scale_guarded).max(dr / nr_scale_guarded));
        }
    }
    Ok(CriterionReport {
        id: 1,
        title: "master-vs-gaussian",
        checks: vec![
            Check::at_most("n_s_rel_dev", dev_s, 0.05),
            Check::at_most("n_r_rel_dev", dev_r, 0.05),
            Check::at_most("rel_dev_before_recurrence", dev_guarded, 0.05),
        ],
    })
}

/// Criterion 2: complete transfer at the predicted time in the
/// coherent-transfer regime, with the total occupation conserved.
pub fn criterion_2() -> Result<CriterionReport> {
    let params = virtual_harmonic();
    let model = ChainAncillaModel::from(&params);
    let freq = oscillation_frequency_quadrature(&model, params.ancilla_coupling)?;
    let t_star = std::f64::consts::PI / freq.abs();
    let times: Vec<f64> = (0..=8).map(|i| t_star * i as f64 / 8.0).collect();
    let sim = harmonic_gaussian::simulate_occupations(&params, 1.0, &times)?;
    let ns = sim.column("n_s").unwrap();
    let nr = sim.column("n_r").unwrap();
    let n_r_final = nr[nr.len() - 1];
    let conservation = ns
        .iter()
        .zip(nr)
        .map(|(s, r)| (s + r - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(CriterionReport {
        id: 2,
        title: "virtual-full-transfer",
        checks: vec![
            Check::at_least("n_r_at_t_star", n_r_final, 0.98),
            Check::at_most("occupation_conservation", conservation, 0.02),
        ],
    })
}

/// Criterion 3: residue closed form against quadrature, monotonicity in the
/// pinning frequency, and exponential decay with separation.
pub fn criterion_3() -> Result<CriterionReport> {
    let pinnings = [0.6, 0.7, 0.8, 0.9];
    let freqs = [0.35, 0.5];
    let ja = 0.05;
    let mut max_rel = 0.0f64;
    let mut max_monotone_violation = f64::NEG_INFINITY;
    let mut max_ratio_spread = 0.0f64;
    for &w in &freqs {
        for &pinning in &pinnings {
            let mut magnitudes = Vec::new();
            for d in 1..=10 {
                let model: ChainAncillaModel<f64> = ChainAncillaModel {
                    coupling: 1.0,
                    pinning,
                    ancilla_freq: w,
                    separation: d,
                };
                let quad = oscillation_frequency_quadrature(&model, ja)?;
                let (residue, _branch) = oscillation_frequency_residue(&model, ja)?;
                max_rel = max_rel.max(((residue - quad) / quad).abs());
                magnitudes.push(quad.abs());
            }
            let ratios: Vec<f64> = magnitudes.windows(2).map(|w| w[1] / w[0]).collect();
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            for r in &ratios {
                max_ratio_spread = max_ratio_spread.max((r - mean).abs() / mean);
            }
        }
        for d in [1usize, 5, 9] {
            let freq_of = |pinning: f64| -> Result<f64> {
                let model: ChainAncillaModel<f64> = ChainAncillaModel {
                    coupling: 1.0,
                    pinning,
                    ancilla_freq: w,
                    separation: d,
                };
                Ok(oscillation_frequency_quadrature(&model, ja)?.abs())
            };
            let mut prev = freq_of(pinnings[0])?;
            for &pinning in &pinnings[1..] {
                let next = freq_of(pinning)?;
                max_monotone_violation = max_monotone_violation.max(next - prev);
                prev = next;
            }
        }
    }
    Ok(CriterionReport {
        id: 3,
        title: "frequency-closed-form",
        checks: vec![
            Check::at_most("residue_vs_quadrature_rel", max_rel, 1e-6),
            Check::at_most("monotone_increase_in_pinning", max_monotone_violation, 0.0),
            Check::at_most("separation_ratio_spread", max_ratio_spread, 0.01),
        ],
    })
}

/// Criterion 4: resonant-regime damping of the spin ancillas.
pub fn criterion_4() -> Result<(CriterionReport, TimeSeries64)> {
    let params = spin_chain(100, 0.3, 0.0, 0.0, 0.8, 0.05, 45, 55);
    let series = spin_run(&params, 0.05, 1000.0, 20, 10)?;
    let p_ud = series.column("p_ud").unwrap();
    let report = CriterionReport {
        id: 4,
        title: "spin-resonant-damping",
        checks: vec![
            Check::at_most("final_p_ud", p_ud[p_ud.len() - 1], 0.2),
            Check::at_most("peak_p_du", column_max(&series, "p_du"), 0.5),
            Check::at_most("max_p_uu", column_max(&series, "p_uu"), 1e-4),
        ],
    };
    Ok((report, series))
}

/// Criterion 5: early-time coherent onset in the gapped regime.
pub fn criterion_5() -> Result<(CriterionReport, TimeSeries64)> {
    let params = spin_chain(60, 0.3, 0.0, 0.0, 0.64, 0.1, 28, 32);
    let series = spin_run(&params, 0.05, 160.0, 10, 10)?;
    let times = series.times();
    let p_du = series.column("p_du").unwrap();
    // Secular growth is quadratic: window means over [40, 80] and [80, 160]
    // have mean-square times in ratio 4, so their p_du means do too. The
    // windows average over the fast virtual-dressing oscillation.
    let window_mean = |lo: f64, hi: f64| -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for (i, &t) in times.iter().enumerate() {
            if t > lo && t <= hi {
                sum += p_du[i];
                count += 1;
            }
        }
        sum / count as f64
    };
    let growth_ratio = window_mean(80.0, 160.0) / window_mean(40.0, 80.0);
    let regime = classify_spin_regime(&params)?;
    let report = CriterionReport {
        id: 5,
        title: "spin-virtual-onset",
        checks: vec![
            Check::at_most("max_p_uu", column_max(&series, "p_uu"), 1e-4),
            Check::within("p_du_quadratic_growth_ratio", growth_ratio, 2.5, 6.0),
            Check::at_least(
                "classified_virtual",
                f64::from(regime.regime == SpinRegime::Virtual),
                1.0,
            ),
        ],
    };
    Ok((report, series))
}

/// Coupling sets for the oracle-equivalence runs: transverse Ising plus the
/// two anisotropic points of the published captions.
const ORACLE_SETS: [(f64, f64, f64, f64); 3] = [
    (0.3, 0.0, 0.0, 0.64),
    (0.5, 0.2, 0.1, 0.04),
    (0.3, 0.2, 0.1, 0.2),
];

/// Criterion 6: TEBD against dense statevector propagation on 10 chain spins.
pub fn criterion_6() -> Result<(CriterionReport, Vec<TimeSeries64>)> {
    let mut checks = Vec::new();
    let mut runs = Vec::new();
    for (i, &(jx, jy, jz, ba)) in ORACLE_SETS.iter().enumerate() {
        let params = spin_chain(10, jx, jy, jz, ba, 0.05, 4, 6);
        let (mut ground, _) = ground_state_chain(
            &params,
            &GroundStateOptions {
                chi: 64,
                ..GroundStateOptions::default()
            },
        )?;
        let state = prepare_initial(&ground, &params)?;
        let options = EvolveOptions::new(0.05, 50.0, 20, 64);
        let (series, _) = evolve_tebd(state, &params, &options)?;

        ground.move_center_to(0);
        ground.normalize();
        let full0 = oracles::embed_with_ancillas(&ground.to_dense(), &params)?;
        let terms = build_hamiltonian_terms(&params)?;
        let ordering = params.ordering();
        let mut max_dev = 0.0f64;
        for (k, &t) in series.times().iter().enumerate() {
            let psi = oracles::ed_spin_evolve(&terms, &ordering, &full0, t)?;
            let exact = oracles::dense_ancilla_probs(&psi, &params);
            for (name, value) in [
                ("p_uu", exact.p_uu),
                ("p_ud", exact.p_ud),
                ("p_du", exact.p_du),
                ("p_dd", exact.p_dd),
            ] {
                max_dev = max_dev.max((series.column(name).unwrap()[k] - value).abs());
            }
        }
        checks.push(Check::at_most(format!("set{}_max_dev", i + 1), max_dev, 1e-3));
        runs.push(series);
    }
    Ok((
        CriterionReport {
            id: 6,
            title: "mps-vs-ed",
            checks,
        },
        runs,
    ))
}

/// Criterion 7: energy conservation on the TEBD runs and the second-order
/// step-halving signature.
pub fn criterion_7(spin_series: &[&TimeSeries64]) -> Result<CriterionReport> {
    let mut checks = Vec::new();
    let mut worst = 0.0f64;
    for series in spin_series {
        worst = worst.max(energy_drift(series));
    }
    checks.push(Check::at_most("max_energy_drift", worst, 1e-3));

    let params = spin_chain(10, 0.3, 0.0, 0.0, 0.64, 0.05, 4, 6);
    let drift_at = |dt: f64| -> Result<f64> {
        let series = spin_run(&params, dt, 10.0, (1.0 / dt) as usize, 64)?;
        Ok(energy_drift(&series))
    };
    // Stay in the asymptotic regime: at dt = 0.1 the dt^4 correction already
    // distorts the second-order ratio.
    let ratio = drift_at(0.05)? / drift_at(0.025)?;
    checks.push(Check::within("dt_halving_drift_ratio", ratio, 2.5, 6.0));
    Ok(CriterionReport {
        id: 7,
        title: "energy-conservation",
        checks,
    })
}

/// Criterion 8: the initial energy spread equals `sqrt(2) Ja` exactly.
pub fn criterion_8() -> Result<CriterionReport> {
    let mut worst = 0.0f64;
    for ja in [0.01, 0.05, 0.1] {
        let params = spin_chain(8, 0.3, 0.0, 0.0, 0.64, ja, 3, 6);
        let chain_terms = gapchannel_core::spin_mps::chain_only_terms(&params)?;
        let chain_ordering = gapchannel_core::spin_mps::SiteOrdering::new_chain_only(params.n);
        let h_chain = oracles::dense_hamiltonian(&chain_terms, &chain_ordering)?;
        let (_, chain_ground) = oracles::dense_ground_state(&h_chain);
        let full = oracles::embed_with_ancillas(&chain_ground, &params)?;
        let terms = build_hamiltonian_terms(&params)?;
        let (_, variance) = oracles::energy_moments(&terms, &params.ordering(), &full);
        worst = worst.max((variance.sqrt() - 2.0f64.sqrt() * ja).abs());
    }
    Ok(CriterionReport {
        id: 8,
        title: "variance-identity",
        checks: vec![Check::at_most("max_spread_deviation", worst, 1e-10)],
    })
}

/// Criterion 9: regime classification of the four published parameter sets.
pub fn criterion_9() -> Result<CriterionReport> {
    let cases = [
        ("fig1_virtual", 0.3, 0.0, 0.0, 0.64, SpinRegime::Virtual),
        ("fig2_resonant", 0.3, 0.0, 0.0, 0.8, SpinRegime::Resonant),
        ("fig3_virtual", 0.5, 0.2, 0.1, 0.04, SpinRegime::Virtual),
        ("fig4_resonant", 0.3, 0.2, 0.1, 0.2, SpinRegime::Resonant),
    ];
    let mut checks = Vec::new();
    for (name, jx, jy, jz, ba, expected) in cases {
        let params = spin_chain(100, jx, jy, jz, ba, 0.05, 45, 55);
        let report = classify_spin_regime(&params)?;
        checks.push(Check::at_least(
            name.to_string(),
            f64::from(report.regime == expected),
            1.0,
        ));
    }
    Ok(CriterionReport {
        id: 9,
        title: "gap-regime-consistency",
        checks,
    })
}

/// Criterion 10: Gaussian-engine invariants on both harmonic benchmarks.
pub fn criterion_10() -> Result<CriterionReport> {
    let mut sympl_dev = 0.0f64;
    let mut purity_dev = 0.0f64;
    let mut occupation_floor = 0.0f64;
    for params in [resonant_harmonic(), virtual_harmonic()] {
        let h = harmonic_gaussian::potential_matrix(&params)?;
        let modes = h.normal_modes();
        let m = params.coords();
        let form = {
            let mut j = DMatrix::<f64>::zeros(2 * m, 2 * m);
            for i in 0..m {
                j[(i, m + i)] = 1.0;
                j[(m + i, i)] = -1.0;
            }
            j
        };
        let state0 = harmonic_gaussian::initial_gaussian(&params, 1.0)?;
        for t in [0.0, 0.7, 13.0, 400.0, 2000.0] {
            let s = symplectic_propagator(&modes, t);
            sympl_dev = sympl_dev.max((&s * &form * s.transpose() - &form).abs().max());
            let evolved = harmonic_gaussian::evolve_gaussian(&state0, &modes, t);
            for nu in evolved.symplectic_eigenvalues() {
                purity_dev = purity_dev.max((nu - 0.5).abs());
            }
            for (coord, freq) in [
                (params.index_s(), params.ancilla_freq),
                (params.index_r(), params.ancilla_freq),
            ] {
                let occ = harmonic_gaussian::mode_occupation(&evolved, coord, freq);
                occupation_floor = occupation_floor.max(-occ);
            }
        }
    }
    Ok(CriterionReport {
        id: 10,
        title: "gaussian-invariants",
        checks: vec![
            Check::at_most("symplecticity", sympl_dev, 1e-10),
            Check::at_most("purity", purity_dev, 1e-8),
            Check::at_most("occupation_negativity", occupation_floor, 1e-10),
        ],
    })
}

/// Run every acceptance criterion in order.
///
/// The TEBD-heavy criteria dominate the runtime (tens of minutes); their
/// series are reused by the energy-conservation criterion.
pub fn run_all() -> Result<Vec<CriterionReport>> {
    let mut reports = Vec::new();
    reports.push(criterion_1()?);
    reports.push(criterion_2()?);
    reports.push(criterion_3()?);
    let (r4, s4) = criterion_4()?;
    reports.push(r4);
    let (r5, s5) = criterion_5()?;
    reports.push(r5);
    let (r6, s6) = criterion_6()?;
    reports.push(r6);
    let mut drift_sources: Vec<&TimeSeries64> = vec![&s4, &s5];
    drift_sources.extend(s6.iter());
    reports.push(criterion_7(&drift_sources)?);
    reports.push(criterion_8()?);
    reports.push(criterion_9()?);
    reports.push(criterion_10()?);
    Ok(reports)
}
