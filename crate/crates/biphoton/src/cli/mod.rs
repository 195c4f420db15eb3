//! Scenario-driven front end: parse a declarative TOML config, run the
//! requested interferometer simulation, and emit the data file plus a run
//! manifest.
//!
//! Data files are deterministic (byte-identical across runs of the same
//! config); the manifest carries the only timestamp, along with the
//! library version, wall time, the derived quantities, and a verbatim echo
//! of the config.

mod config;

pub use config::{
    parse_raw, resolve, ExperimentConfig, FockConfig, FourfoldMethodConfig, FransonDelays,
    OutputConfig, OutputFormat, Quantity, RawConfig, ScanConfig, ScenarioConfig, SourceConfig,
    UnitarySpec, Violation,
};

use crate::fockspace::{
    delayed_pair_distribution, evolve, standard_unitary, ModeOccupation, StandardUnitary,
};
use crate::fourfold::{fourfold_pattern, FourfoldMethod, SourcePair};
use crate::numerics::{Axis, Grid2};
use crate::spectra::{
    comb_jsa_along, gaussian_jsa, load_jsa, schmidt_analysis, GridSpec, JointSpectralAmplitude,
    MarginalKind,
};
use crate::twofold::{
    franson_pattern, hom_pattern, hom_pattern_temporal, noon_pattern, pattern_to_marginal,
    spectrally_resolved_hom, FransonMode, InterferencePattern, PatternKind,
};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

/// Paths produced by a successful run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub data_path: PathBuf,
    pub manifest_path: PathBuf,
}

/// Full static validation without computation; every violation is listed.
pub fn validate_file(config_path: &Path) -> Vec<Violation> {
    let text = match std::fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            return vec![Violation {
                key: "config".into(),
                message: format!("cannot read '{}': {e}", config_path.display()),
            }]
        }
    };
    let raw = match parse_raw(&text) {
        Ok(r) => r,
        Err(e) => {
            return vec![Violation {
                key: "config".into(),
                message: e.to_string(),
            }]
        }
    };
    match resolve(&raw) {
        Ok(_) => Vec::new(),
        Err(v) => v,
    }
}

/// Run one scenario: validate, compute, write the data file and manifest.
pub fn run(config_path: &Path, out_dir: Option<&Path>) -> Result<RunOutput> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| Error::Config(format!("cannot read '{}': {e}", config_path.display())))?;
    let raw = parse_raw(&text)?;
    let scenario = resolve(&raw).map_err(|violations| {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Error::Config(lines.join("; "))
    })?;

    let started = Instant::now();
    let mut derived: BTreeMap<String, f64> = BTreeMap::new();
    let data = compute(&scenario, &mut derived)?;

    let data_path = match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            dir.join(
                scenario
                    .output
                    .path
                    .file_name()
                    .ok_or_else(|| Error::Config("output.path has no file name".into()))?,
            )
        }
        None => {
            if let Some(parent) = scenario.output.path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            scenario.output.path.clone()
        }
    };
    std::fs::write(&data_path, &data)?;

    let manifest_path = data_path.with_extension("manifest.toml");
    let manifest = Manifest {
        run: ManifestRun {
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix_s: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            wall_time_s: started.elapsed().as_secs_f64(),
            data_path: data_path.display().to_string(),
        },
        derived,
        config: ManifestConfig { text },
    };
    let manifest_text =
        toml::to_string(&manifest).map_err(|e| Error::Config(format!("manifest: {e}")))?;
    std::fs::write(&manifest_path, manifest_text)?;

    Ok(RunOutput {
        data_path,
        manifest_path,
    })
}

#[derive(Serialize)]
struct Manifest {
    run: ManifestRun,
    derived: BTreeMap<String, f64>,
    config: ManifestConfig,
}

#[derive(Serialize)]
struct ManifestRun {
    library_version: String,
    timestamp_unix_s: u64,
    wall_time_s: f64,
    data_path: String,
}

#[derive(Serialize)]
struct ManifestConfig {
    text: String,
}

/// Apply the QWKT inversion to a pattern CSV (the `qwkt` subcommand).
pub fn invert_pattern(
    pattern_path: &Path,
    kind: PatternKind,
    out_path: &Path,
) -> Result<()> {
    let file = std::fs::File::open(pattern_path)?;
    let mut pattern = InterferencePattern::read_csv(std::io::BufReader::new(file))?;
    if pattern.kind() != kind {
        // The caller's flag wins over the stored header.
        pattern =
            InterferencePattern::from_values(pattern.axis(), pattern.values().to_vec(), kind)?;
    }
    let marg = pattern_to_marginal(&pattern)?;
    let mut out = Vec::new();
    let label = match marg.kind {
        MarginalKind::SumFrequency => "sum_frequency",
        MarginalKind::DifferenceFrequency => "difference_frequency",
    };
    writeln!(&mut out, "# kind={label}")?;
    writeln!(&mut out, "omega,density")?;
    for (i, d) in marg.density.iter().enumerate() {
        writeln!(&mut out, "{:.15e},{:.15e}", marg.axis.value(i), d)?;
    }
    std::fs::write(out_path, out)?;
    Ok(())
}

fn compute(scenario: &ScenarioConfig, derived: &mut BTreeMap<String, f64>) -> Result<Vec<u8>> {
    match &scenario.experiment {
        ExperimentConfig::Fock(fock) => compute_fock(fock, scenario.scan.as_ref(), derived),
        experiment => {
            let source = scenario
                .source
                .as_ref()
                .expect("validated: non-fock experiments carry a source");
            let jsa = build_jsa(source, derived)?;
            derived.insert("purity".into(), schmidt_analysis(&jsa)?.purity);
            match experiment {
                ExperimentConfig::HomSpectral { tau } => {
                    let grid = spectrally_resolved_hom(&jsa, *tau)?;
                    Ok(grid_csv(&grid, *tau))
                }
                _ => {
                    let scan = scenario
                        .scan
                        .expect("validated: scan experiments carry a scan");
                    let axis = Axis::linspace(scan.start, scan.stop, scan.points)?;
                    let pattern = match experiment {
                        ExperimentConfig::Hom => hom_pattern(&jsa, &axis)?,
                        ExperimentConfig::HomTemporal => {
                            hom_pattern_temporal(&jsa.to_temporal()?, &axis)?
                        }
                        ExperimentConfig::Noon => noon_pattern(&jsa, &axis)?,
                        ExperimentConfig::Franson(delays) => {
                            let mode = match *delays {
                                FransonDelays::Common { base_delay } => {
                                    FransonMode::CommonDelay { base_delay }
                                }
                                FransonDelays::Independent {
                                    base_delay_1,
                                    delay_2,
                                } => FransonMode::Independent {
                                    base_delay_1,
                                    delay_2,
                                },
                            };
                            franson_pattern(&jsa, &axis, mode)?
                        }
                        ExperimentConfig::Fourfold { source2, method } => {
                            let jsa2 = build_jsa(source2, derived)?;
                            derived.insert("purity_source2".into(), schmidt_analysis(&jsa2)?.purity);
                            let pair = SourcePair::new(jsa, jsa2)?;
                            let method = match *method {
                                FourfoldMethodConfig::Direct => FourfoldMethod::Direct,
                                FourfoldMethodConfig::Schmidt { rank } => {
                                    FourfoldMethod::Schmidt { rank }
                                }
                            };
                            let run = fourfold_pattern(&pair, &axis, method)?;
                            if let Some(w) = run.truncation_weight {
                                derived.insert("schmidt_truncation_weight".into(), w);
                            }
                            run.pattern
                        }
                        ExperimentConfig::HomSpectral { .. } | ExperimentConfig::Fock(_) => {
                            unreachable!("handled above")
                        }
                    };
                    derived.insert("baseline".into(), pattern.baseline());
                    derived.insert("visibility".into(), pattern.visibility());
                    let mut out = Vec::new();
                    pattern.write_csv(&mut out)?;
                    Ok(out)
                }
            }
        }
    }
}

fn compute_fock(
    fock: &FockConfig,
    scan: Option<&ScanConfig>,
    derived: &mut BTreeMap<String, f64>,
) -> Result<Vec<u8>> {
    let unitary = standard_unitary(match fock.unitary {
        UnitarySpec::Bs50 => StandardUnitary::Bs50,
        UnitarySpec::Fourier(m) => StandardUnitary::Fourier(m),
    })?;
    match (&fock.observable, scan) {
        (Some(observable), Some(scan)) => {
            let axis = Axis::linspace(scan.start, scan.stop, scan.points)?;
            for i in axis.values() {
                if !(0.0..=1.0).contains(&i) {
                    return Err(Error::Config(format!(
                        "scan: indistinguishability {i} is outside [0, 1]"
                    )));
                }
            }
            let key = ModeOccupation::new(observable.clone());
            let values: Result<Vec<f64>> = axis
                .values()
                .map(|i| {
                    Ok(delayed_pair_distribution(fock.input[0], i, &unitary)?.probability(&key))
                })
                .collect();
            let pattern = InterferencePattern::from_values(axis, values?, PatternKind::FockScan)?;
            derived.insert("baseline".into(), pattern.baseline());
            derived.insert("visibility".into(), pattern.visibility());
            let mut out = Vec::new();
            pattern.write_csv(&mut out)?;
            Ok(out)
        }
        _ => {
            let distribution = match fock.indistinguishability {
                Some(i) => delayed_pair_distribution(fock.input[0], i, &unitary)?,
                None => evolve(&ModeOccupation::new(fock.input.clone()), &unitary)?,
            };
            derived.insert("total_probability".into(), distribution.total());
            let mut out = Vec::new();
            distribution.write_csv(&mut out)?;
            Ok(out)
        }
    }
}

fn build_jsa(
    source: &SourceConfig,
    derived: &mut BTreeMap<String, f64>,
) -> Result<JointSpectralAmplitude> {
    match source {
        SourceConfig::Gaussian {
            sigma_plus,
            sigma_minus,
            center_s,
            center_i,
            grid_count,
            grid_half_width,
        } => {
            let spec = match grid_half_width {
                Some(hw) => GridSpec::new(*grid_count, *hw),
                None => GridSpec::auto(*grid_count, *sigma_plus, *sigma_minus),
            };
            gaussian_jsa(*sigma_plus, *sigma_minus, (*center_s, *center_i), &spec)
        }
        SourceConfig::Comb {
            base,
            mode_count,
            mode_spacing,
            sum_axis,
        } => {
            let base = build_jsa(base, derived)?;
            let axis = if *sum_axis {
                MarginalKind::SumFrequency
            } else {
                MarginalKind::DifferenceFrequency
            };
            let comb = comb_jsa_along(&base, *mode_count, *mode_spacing, axis)?;
            derived.insert("comb_mode_overlap".into(), comb.adjacent_overlap);
            derived.insert("comb_realized_spacing".into(), comb.realized_spacing);
            Ok(comb.jsa)
        }
        SourceConfig::Custom { path } => {
            let loaded = load_jsa(path)?;
            derived.insert("renormalization".into(), loaded.renormalization);
            Ok(loaded.jsa)
        }
    }
}

fn grid_csv(grid: &Grid2, tau: f64) -> Vec<u8> {
    let mut out = Vec::new();
    writeln!(&mut out, "# kind=hom_spectral tau={tau:.15e}").expect("memory write");
    writeln!(&mut out, "omega_s,omega_i,density").expect("memory write");
    for ((i, j), v) in grid.values().indexed_iter() {
        writeln!(
            &mut out,
            "{:.15e},{:.15e},{:.15e}",
            grid.axis_row().value(i),
            grid.axis_col().value(j),
            v.re
        )
        .expect("memory write");
    }
    out
}
