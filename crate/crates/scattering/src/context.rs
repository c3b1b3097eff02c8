use kgscat_core::{CMat, FieldOperators64, LatticeFourier64, LatticeFunction64};
use kgscat_dynamics::{BlockOperator64, SourceSpec64, VectorQuadrature64};

use crate::{
    band_packets, build_w_blocks, g_infinity, g_pm, s_matrix, wave_operator, BandSpec, Direction, GInfinity,
    GeneralizedFourier, ScatteringError, WaveOperator,
};

/// Settings of the forward pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringConfig {
    /// Horizon `T` of `e^{±iTω}e^{∓iTω₀}`.
    pub t_max: f64,
    pub band: BandSpec,
    /// Per-packet Cook residual bound.
    pub cook_threshold: f64,
    /// Relative bound on the two `g_∞` formulas.
    pub g_infinity_threshold: f64,
    /// Turn threshold violations into errors instead of logging them.
    pub strict: bool,
}

impl Default for ScatteringConfig {
    fn default() -> Self {
        Self {
            t_max: 30.0,
            band: BandSpec::default(),
            cook_threshold: 1e-3,
            g_infinity_threshold: 1e-6,
            strict: false,
        }
    }
}

/// Source asymptotics carried by the context when a source is given.
#[derive(Clone, Debug)]
pub struct SourceAsymptotics {
    pub g_plus: LatticeFunction64,
    pub g_minus: LatticeFunction64,
    pub g_infinity: GInfinity,
}

/// Threshold violations seen while building a context in non-strict mode.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvergenceLog {
    pub warnings: Vec<String>,
}

/// Everything the forward pipeline produces for one potential.
#[derive(Clone, Debug)]
pub struct ScatteringContext {
    pub config: ScatteringConfig,
    pub w_plus: WaveOperator,
    pub w_minus: WaveOperator,
    pub s: CMat<f64>,
    pub w_blocks_plus: BlockOperator64,
    pub w_blocks_minus: BlockOperator64,
    pub f_plus: GeneralizedFourier,
    pub f_minus: GeneralizedFourier,
    pub fourier: LatticeFourier64,
    pub source: Option<SourceAsymptotics>,
    pub log: ConvergenceLog,
}

impl ScatteringContext {
    pub fn build(
        ops: &FieldOperators64,
        source: Option<&SourceSpec64>,
        config: &ScatteringConfig,
        quad: &VectorQuadrature64,
    ) -> Result<Self, ScatteringError> {
        let grid = ops.grid();
        let mass = ops.mass();
        let mut log = ConvergenceLog::default();
        let mut wave = |d: Direction| -> Result<WaveOperator, ScatteringError> {
            let packets = band_packets(grid, &config.band, mass, config.t_max, d);
            let w = wave_operator(ops, d, config.t_max, &packets);
            if let Err(e) = w.check(config.cook_threshold) {
                if config.strict {
                    return Err(e);
                }
                log.warnings.push(e.to_string());
            }
            Ok(w)
        };
        let w_plus = wave(Direction::Plus)?;
        let w_minus = wave(Direction::Minus)?;
        let s = s_matrix(&w_plus.matrix, &w_minus.matrix);
        let fourier = LatticeFourier64::new(grid);
        let source = match source {
            Some(src) => Some(source_asymptotics(ops, &w_plus.matrix, &w_minus.matrix, src, config, quad, &mut log)?),
            None => None,
        };
        Ok(Self {
            config: config.clone(),
            w_blocks_plus: build_w_blocks(ops, &w_plus.matrix),
            w_blocks_minus: build_w_blocks(ops, &w_minus.matrix),
            f_plus: GeneralizedFourier::new(&fourier, &w_plus.matrix, Direction::Plus),
            f_minus: GeneralizedFourier::new(&fourier, &w_minus.matrix, Direction::Minus),
            w_plus,
            w_minus,
            s,
            fourier,
            source,
            log,
        })
    }

    /// Same potential, new source: the wave operators are reused.
    pub fn with_source(
        &self,
        ops: &FieldOperators64,
        source: &SourceSpec64,
        quad: &VectorQuadrature64,
    ) -> Result<Self, ScatteringError> {
        let mut out = self.clone();
        out.source =
            Some(source_asymptotics(ops, &self.w_plus.matrix, &self.w_minus.matrix, source, &self.config, quad, &mut out.log)?);
        Ok(out)
    }

    pub fn wave(&self, d: Direction) -> &WaveOperator {
        match d {
            Direction::Plus => &self.w_plus,
            Direction::Minus => &self.w_minus,
        }
    }

    /// `g_∞` used downstream: the wave-operator-free formula.
    pub fn g_infinity(&self) -> Option<&LatticeFunction64> {
        self.source.as_ref().map(|s| &s.g_infinity.direct)
    }
}

fn source_asymptotics(
    ops: &FieldOperators64,
    w_plus: &CMat<f64>,
    w_minus: &CMat<f64>,
    src: &SourceSpec64,
    config: &ScatteringConfig,
    quad: &VectorQuadrature64,
    log: &mut ConvergenceLog,
) -> Result<SourceAsymptotics, ScatteringError> {
    let g_plus = g_pm(ops, w_plus, src, Direction::Plus, quad)?;
    let g_minus = g_pm(ops, w_minus, src, Direction::Minus, quad)?;
    let gi = g_infinity(ops, w_plus, w_minus, &g_plus, &g_minus, src, quad)?;
    if let Err(e) = gi.check(config.g_infinity_threshold) {
        if config.strict {
            return Err(e);
        }
        log.warnings.push(e.to_string());
    }
    Ok(SourceAsymptotics { g_plus, g_minus, g_infinity: gi })
}
