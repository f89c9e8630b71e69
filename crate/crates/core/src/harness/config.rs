use std::path::Path;

use serde::Deserialize;

use crate::channel::{AttackModel, ChannelKind, FadingChannel};
use crate::error::{Error, Result};
use crate::geometry::{grid_shape, Rect, SensorField};
use crate::localization::{Decoding, MleOptions, Scheme, SchemeConfig};
use crate::signal::{CoincidentRule, NoiseModel, PropagationModel};

/// Parameter varied across sweep points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    #[default]
    Alpha,
    N,
    Sigma,
    SigmaF,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Alpha => "alpha",
            SweepAxis::N => "n",
            SweepAxis::Sigma => "sigma",
            SweepAxis::SigmaF => "sigma_f",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    pub fn values(&self) -> Vec<f64> {
        match self {
            OneOrMany::One(x) => vec![*x],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// Flat experiment description, loadable from TOML. Every key is optional and
/// falls back to the desk-scale defaults (512 sensors on a 16 x 32 grid over
/// an 8 x 8 field, P0 = 200, sigma = 3, M = 4).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub rows: usize,
    pub cols: usize,
    /// Overrides `rows` and `cols` with the most square grid of this size.
    pub n: Option<usize>,
    /// `[x_min, x_max, y_min, y_max]`.
    pub roi: [f64; 4],
    pub p0: f64,
    pub d0: f64,
    pub path_loss_exponent: f64,
    pub sigma: f64,
    pub scheme: Scheme,
    pub m: usize,
    pub k_stop: usize,
    pub decoding: Decoding,
    pub coincident: CoincidentRule,
    pub alpha: OneOrMany,
    pub flip_prob: f64,
    pub channel: ChannelKind,
    pub e_b: f64,
    pub sigma_f: f64,
    pub mean_h2: f64,
    pub trials: usize,
    pub seed: u64,
    pub baseline_mle: bool,
    pub mle_grid: usize,
    pub workers: Option<usize>,
    pub sweep: SweepAxis,
    /// Sweep values; empty means the `alpha` list when sweeping alpha, and the
    /// single configured value otherwise.
    pub sweep_values: Vec<f64>,
    /// Keep per-trial records in the report.
    pub detail: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            rows: 16,
            cols: 32,
            n: None,
            roi: [0.0, 8.0, 0.0, 8.0],
            p0: 200.0,
            d0: 1.0,
            path_loss_exponent: 2.0,
            sigma: 3.0,
            scheme: Scheme::Basic,
            m: 4,
            k_stop: 2,
            decoding: Decoding::Hard,
            coincident: CoincidentRule::default(),
            alpha: OneOrMany::One(0.0),
            flip_prob: 1.0,
            channel: ChannelKind::Ideal,
            e_b: 1.0,
            sigma_f: 3.0,
            mean_h2: 1.0,
            trials: 1000,
            seed: 1,
            baseline_mle: false,
            mle_grid: 64,
            workers: None,
            sweep: SweepAxis::Alpha,
            sweep_values: Vec::new(),
            detail: false,
        }
    }
}

/// Fully resolved parameters of one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSetup {
    pub sweep_value: f64,
    pub field: SensorField,
    pub scheme: SchemeConfig,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn sweep_points(&self) -> Vec<f64> {
        if !self.sweep_values.is_empty() {
            return self.sweep_values.clone();
        }
        match self.sweep {
            SweepAxis::Alpha => self.alpha.values(),
            SweepAxis::N => vec![self.sensor_count() as f64],
            SweepAxis::Sigma => vec![self.sigma],
            SweepAxis::SigmaF => vec![self.sigma_f],
        }
    }

    fn sensor_count(&self) -> usize {
        self.n.unwrap_or(self.rows * self.cols)
    }

    fn base_alpha(&self) -> f64 {
        self.alpha.values().first().copied().unwrap_or(0.0)
    }

    pub fn roi_rect(&self) -> Result<Rect> {
        let [x0, x1, y0, y1] = self.roi;
        Rect::new(x0, x1, y0, y1).map_err(|e| Error::config("roi", e.to_string()))
    }

    /// Resolves one sweep value into a field and scheme configuration.
    pub fn point(&self, sweep_value: f64) -> Result<PointSetup> {
        let mut alpha = self.base_alpha();
        let mut sigma = self.sigma;
        let mut sigma_f = self.sigma_f;
        let mut n = self.sensor_count();
        match self.sweep {
            SweepAxis::Alpha => alpha = sweep_value,
            SweepAxis::Sigma => sigma = sweep_value,
            SweepAxis::SigmaF => sigma_f = sweep_value,
            SweepAxis::N => {
                if sweep_value < 1.0 || sweep_value.fract() != 0.0 {
                    return Err(Error::config(
                        "sweep_values",
                        format!("{sweep_value} is not a sensor count"),
                    ));
                }
                n = sweep_value as usize;
            }
        }
        let roi = self.roi_rect()?;
        let (rows, cols) = if self.n.is_some() || self.sweep == SweepAxis::N {
            grid_shape(n)
        } else {
            (self.rows, self.cols)
        };
        let field = crate::geometry::deploy_grid(rows, cols, roi).map_err(|e| Error::config("rows", e.to_string()))?;
        let propagation = PropagationModel::new(self.p0, self.d0, self.path_loss_exponent)
            .map_err(|e| Error::config("p0", e.to_string()))?;
        let noise = NoiseModel::gaussian(sigma).map_err(|e| Error::config("sigma", e.to_string()))?;
        let attack = AttackModel::new(alpha, self.flip_prob)?;
        let channel = match self.channel {
            ChannelKind::Ideal => FadingChannel::ideal(),
            ChannelKind::Rayleigh => FadingChannel::rayleigh(self.e_b, sigma_f, self.mean_h2)?,
        };
        let scheme = SchemeConfig {
            scheme: self.scheme,
            m: self.m,
            k_stop: self.k_stop,
            decoding: self.decoding,
            channel,
            attack,
            propagation,
            noise,
            coincident: self.coincident,
        };
        scheme.validate(field.len())?;
        Ok(PointSetup {
            sweep_value,
            field,
            scheme,
        })
    }

    pub fn mle_options(&self) -> MleOptions {
        MleOptions {
            grid: self.mle_grid,
            ..MleOptions::default()
        }
    }

    /// Checks every sweep point and the run-level settings.
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        if self.workers == Some(0) {
            return Err(Error::config("workers", "must be at least 1"));
        }
        if self.baseline_mle && self.mle_grid == 0 {
            return Err(Error::config("mle_grid", "must be at least 1"));
        }
        for v in self.sweep_points() {
            self.point(v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        let p = cfg.point(0.0).unwrap();
        assert_eq!(p.field.len(), 512);
    }

    #[test]
    fn parses_flat_toml() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
            scheme = "exclusion"
            k_stop = 4
            alpha = [0.0, 0.125, 0.25]
            channel = "rayleigh"
            decoding = "soft"
            coincident = "never_fire"
            trials = 20
            seed = 9
            "#,
        )
        .unwrap();
        assert_eq!(cfg.scheme, Scheme::Exclusion);
        assert_eq!(cfg.sweep_points(), vec![0.0, 0.125, 0.25]);
        assert_eq!(cfg.coincident, CoincidentRule::NeverFire);
        let p = cfg.point(0.25).unwrap();
        assert_eq!(p.scheme.attack.alpha, 0.25);
        assert_eq!(p.scheme.channel.kind, ChannelKind::Rayleigh);
    }

    #[test]
    fn scalar_alpha_and_n_sweep() {
        let cfg = ExperimentConfig::from_toml_str("alpha = 0.1\nsweep = \"n\"\nsweep_values = [64, 4096]").unwrap();
        assert_eq!(cfg.point(64.0).unwrap().field.rows(), 8);
        assert_eq!(cfg.point(4096.0).unwrap().field.cols(), 64);
        assert_eq!(cfg.point(64.0).unwrap().scheme.attack.alpha, 0.1);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = ExperimentConfig::from_toml_str("trials = 0").unwrap();
        assert!(matches!(bad.validate(), Err(Error::Config { field, .. }) if field == "trials"));
        let bad = ExperimentConfig::from_toml_str("k_stop = 9").unwrap();
        assert!(matches!(bad.validate(), Err(Error::Config { field, .. }) if field == "k_stop"));
        assert!(ExperimentConfig::from_toml_str("bogus = 1").is_err());
        let bad = ExperimentConfig::from_toml_str("alpha = 1.5").unwrap();
        assert!(matches!(bad.validate(), Err(Error::Config { field, .. }) if field == "alpha"));
    }
}
