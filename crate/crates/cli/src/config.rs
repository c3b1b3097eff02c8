use std::path::{Path, PathBuf};

use kgscat_core::{Boundary, FieldOperators64, Grid, Grid64, LatticeFunction, LatticeFunction64, PotentialSpec};
use kgscat_dynamics::{QuadratureSpec, SourceSpec64, TemporalProfile64, VectorQuadrature64};
use kgscat_scattering::{BandSpec, ScatteringConfig};
use serde::Deserialize;

use crate::CliError;

/// Everything a run needs; every field has a default so an empty file is a valid config.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub mass: f64,
    pub seed: u64,
    pub grid: GridConfig,
    pub potential: PotentialConfig,
    pub source: SourceConfig,
    pub pipeline: PipelineConfig,
    pub trace: TraceConfig,
    pub fock: FockConfig,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mass: 1.0,
            seed: 7,
            grid: GridConfig::default(),
            potential: PotentialConfig::default(),
            source: SourceConfig {
                j: Some(ProfileConfig::Gaussian { a: 1.0 }),
                rho: Some(RhoConfig::Gaussian { width: 1.0, center: 0.0 }),
                delta: None,
            },
            pipeline: PipelineConfig::default(),
            trace: TraceConfig::default(),
            fock: FockConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub n: usize,
    /// Half-width: the box is `[-L, L)`.
    #[serde(rename = "L")]
    pub half_width: f64,
    pub dimension: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { n: 256, half_width: 20.0, dimension: 1 }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    Zero,
    Gaussian { amplitude: f64, width: f64 },
    Barrier { height: f64, half_width: f64 },
}

impl Default for PotentialConfig {
    fn default() -> Self {
        Self::Gaussian { amplitude: 0.5, width: 1.0 }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileConfig {
    /// `e^{-a t²}`
    Gaussian { a: f64 },
    /// `e^{-rate |t|}`
    ExpDecay { rate: f64 },
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RhoConfig {
    /// `exp(-(x - center)² / (2 width²))`
    Gaussian {
        width: f64,
        #[serde(default)]
        center: f64,
    },
}

/// A `[source]` section is taken literally: a function it leaves out is absent.
/// Without the section the default Gaussian pair is used.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct SourceConfig {
    pub j: Option<ProfileConfig>,
    pub rho: Option<RhoConfig>,
    pub delta: Option<f64>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    #[serde(rename = "T_max")]
    pub t_max: f64,
    /// Empty: dyadic scales down to the one at which χ covers the box.
    pub lambdas: Vec<f64>,
    pub band_momenta: Vec<f64>,
    pub band_width: f64,
    /// `|k| ≤ band_k_max` for the z-limit and the inverse band.
    pub band_k_max: f64,
    pub cook_tolerance: f64,
    pub g_infinity_tolerance: f64,
    pub dual_path_tolerance: f64,
    pub z_limit_tolerance: f64,
    pub unitarity_tolerance: f64,
    pub transfer_tolerance: f64,
    pub s_intertwining_tolerance: f64,
    pub fractional_tolerance: f64,
    pub refinement_tolerance: f64,
    pub hs_epsilon: f64,
    pub mask_threshold: f64,
    pub rho_tolerance: f64,
    pub j_tolerance: f64,
    pub remainder_tolerance: f64,
    pub taylor_order: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            t_max: 30.0,
            lambdas: vec![],
            // the packets whose wave-operator limit has settled at T = 30
            band_momenta: vec![1.5, 2.0, 2.5, 3.0],
            band_width: 2.0,
            band_k_max: 3.0,
            cook_tolerance: 1e-3,
            g_infinity_tolerance: 1e-2,
            dual_path_tolerance: 1e-5,
            z_limit_tolerance: 1e-2,
            unitarity_tolerance: 1e-3,
            transfer_tolerance: 1e-2,
            s_intertwining_tolerance: 1e-4,
            fractional_tolerance: 1e-8,
            refinement_tolerance: 0.1,
            hs_epsilon: 0.25,
            mask_threshold: 1e-8,
            rho_tolerance: 1e-2,
            j_tolerance: 1e-3,
            remainder_tolerance: 1e-6,
            taylor_order: 12,
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct TraceConfig {
    /// Test function of the `F(t, f)` trace: a packet at the origin with this momentum.
    pub k0: f64,
    pub width: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub t_step: f64,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self { k0: 1.5, width: 2.0, t_start: 0.0, t_end: 10.0, t_step: 0.25 }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct FockConfig {
    pub modes: usize,
    pub n_max: usize,
    pub tolerance: f64,
}

impl Default for FockConfig {
    fn default() -> Self {
        Self { modes: 2, n_max: 6, tolerance: 1e-12 }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: PathBuf::from("out") }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| invalid(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let g = &self.grid;
        if g.dimension != 1 {
            return Err(invalid(format!("dimension = {} is not supported (only 1)", g.dimension)));
        }
        if g.n < 8 || g.n % 2 != 0 {
            return Err(invalid(format!("grid.n = {} must be even and at least 8", g.n)));
        }
        if !(g.half_width > 0.0) {
            return Err(invalid("grid.L must be positive"));
        }
        if !(self.mass > 0.0) {
            return Err(invalid(format!("mass = {} must be positive", self.mass)));
        }
        let p = &self.pipeline;
        if !(p.t_max > 0.0) {
            return Err(invalid("pipeline.T_max must be positive"));
        }
        let tolerances = [
            ("cook_tolerance", p.cook_tolerance),
            ("g_infinity_tolerance", p.g_infinity_tolerance),
            ("dual_path_tolerance", p.dual_path_tolerance),
            ("z_limit_tolerance", p.z_limit_tolerance),
            ("unitarity_tolerance", p.unitarity_tolerance),
            ("transfer_tolerance", p.transfer_tolerance),
            ("s_intertwining_tolerance", p.s_intertwining_tolerance),
            ("fractional_tolerance", p.fractional_tolerance),
            ("refinement_tolerance", p.refinement_tolerance),
            ("mask_threshold", p.mask_threshold),
            ("rho_tolerance", p.rho_tolerance),
            ("j_tolerance", p.j_tolerance),
            ("remainder_tolerance", p.remainder_tolerance),
            ("hs_epsilon", p.hs_epsilon),
            ("band_width", p.band_width),
            ("fock.tolerance", self.fock.tolerance),
        ];
        if let Some((name, v)) = tolerances.iter().find(|(_, v)| !(*v > 0.0)) {
            return Err(invalid(format!("{name} = {v} must be positive")));
        }
        let nyquist = std::f64::consts::PI / (2.0 * g.half_width / g.n as f64);
        if let Some(k) = p.band_momenta.iter().chain(std::iter::once(&p.band_k_max)).find(|k| !(k.abs() < nyquist)) {
            return Err(invalid(format!("band momentum {k} is beyond the lattice Nyquist limit {nyquist:.4}")));
        }
        if p.band_momenta.is_empty() {
            return Err(invalid("pipeline.band_momenta is empty"));
        }
        if p.lambdas.iter().any(|l| !(*l > 0.0)) {
            return Err(invalid("pipeline.lambdas must be positive"));
        }
        let t = &self.trace;
        if !(t.t_step > 0.0) || t.t_end < t.t_start || !(t.width > 0.0) {
            return Err(invalid("trace needs t_step > 0, t_end ≥ t_start and width > 0"));
        }
        if let Some(d) = self.source.delta {
            if !(d > 0.0) {
                return Err(invalid(format!("source.delta = {d} must be positive")));
            }
        }
        match &self.potential {
            PotentialConfig::Gaussian { width, .. } if !(*width > 0.0) => {
                return Err(invalid("potential width must be positive"));
            }
            _ => {}
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid64, CliError> {
        Ok(Grid::new(self.grid.n, self.grid.half_width, Boundary::Periodic)?)
    }

    pub fn potential_spec(&self) -> PotentialSpec<f64> {
        match self.potential {
            PotentialConfig::Zero => PotentialSpec::Zero,
            PotentialConfig::Gaussian { amplitude, width } => PotentialSpec::gaussian(amplitude, width),
            PotentialConfig::Barrier { height, half_width } => PotentialSpec::Barrier { height, half_width },
        }
    }

    pub fn operators(&self) -> Result<FieldOperators64, CliError> {
        Ok(FieldOperators64::new(self.grid()?, &self.potential_spec(), self.mass)?)
    }

    pub fn profile(&self) -> Option<TemporalProfile64> {
        self.source.j.as_ref().map(|j| match *j {
            ProfileConfig::Gaussian { a } => TemporalProfile64::Gaussian { a },
            ProfileConfig::ExpDecay { rate } => TemporalProfile64::ExpDecay { rate },
        })
    }

    pub fn rho(&self, grid: &Grid64) -> Option<LatticeFunction64> {
        self.source.rho.as_ref().map(|r| match *r {
            RhoConfig::Gaussian { width, center } => {
                LatticeFunction::from_real(grid, |x| (-(x - center) * (x - center) / (2.0 * width * width)).exp())
            }
        })
    }

    /// Full source; both `j` and `ρ` must be present.
    pub fn source(&self, grid: &Grid64) -> Result<SourceSpec64, CliError> {
        let profile = self.profile().ok_or_else(|| invalid("source.j is required"))?;
        let rho = self.rho(grid).ok_or_else(|| invalid("source.rho is required"))?;
        SourceSpec64::new(grid, profile, rho, self.source.delta).map_err(|e| invalid(e.to_string()))
    }

    pub fn band(&self) -> BandSpec {
        BandSpec { momenta: self.pipeline.band_momenta.clone(), width: self.pipeline.band_width }
    }

    pub fn scattering(&self) -> ScatteringConfig {
        ScatteringConfig {
            t_max: self.pipeline.t_max,
            band: self.band(),
            cook_threshold: self.pipeline.cook_tolerance,
            g_infinity_threshold: self.pipeline.g_infinity_tolerance,
            strict: false,
        }
    }

    pub fn quadrature(&self) -> VectorQuadrature64 {
        VectorQuadrature64::new(QuadratureSpec::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_the_default() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn shipped_configs_validate() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
        let mut seen = 0;
        for e in std::fs::read_dir(&dir).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "toml") {
                RunConfig::load(&p).unwrap().validate().unwrap_or_else(|e| panic!("{}: {e}", p.display()));
                seen += 1;
            }
        }
        assert!(seen >= 3);
    }

    #[test]
    fn section_leaves_out_missing_functions() {
        let c = RunConfig::from_toml("[source]\ndelta = 1.0\n").unwrap();
        assert!(c.source.j.is_none() && c.source.rho.is_none());
        assert_eq!(c.source.delta, Some(1.0));
        assert!(RunConfig::default().source.j.is_some());
    }

    #[test]
    fn nyquist_bound() {
        let mut c = RunConfig::default();
        c.grid.n = 32;
        // a = 1.25, π/a ≈ 2.51 < 3
        assert!(matches!(c.validate(), Err(CliError::Config(m)) if m.contains("Nyquist")));
    }
}
