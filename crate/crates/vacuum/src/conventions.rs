use kgscat_scattering::Direction;

/// Normalisation of the map `(V, j, ρ) ↦ z`.
///
/// With `ĵ(τ) = (2π)^{-1/2}∫e^{-iτt}j(t)dt` the forward datum factorises as
/// `z(k) = κ · ĵ(ε(k)) · ε(k)^{p} · (ℱ_dir ρ)(k)`. The values below are the ones
/// the free-field oracle and the inverse round trip pin down.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Conventions {
    pub kappa: f64,
    /// Sign in the exponent of the temporal transform `ĵ`.
    pub fourier_sign: f64,
    /// Power `p` of `ε(k)`.
    pub omega_power: f64,
    /// Which generalized transform `ℱ± = ℱ₀w±*` carries `ρ`.
    pub transform: Direction,
    /// `z_λ(k) = λ_prefactor · Z[χ_k^λ]`.
    pub lambda_prefactor: f64,
}

pub const CONVENTIONS: Conventions = Conventions {
    kappa: 2.506_628_274_631_000_5, // √(2π)
    fourier_sign: -1.0,
    omega_power: -0.5,
    transform: Direction::Plus,
    // −√2 (2π)^{-1/2}, the d = 1 form
    lambda_prefactor: -0.564_189_583_547_756_3,
};

impl Conventions {
    /// `κ ε^{p}`: the factor multiplying `ĵ(ε)·ℱρ`.
    pub fn weight(&self, epsilon: f64) -> f64 {
        self.kappa * epsilon.powf(self.omega_power)
    }

    pub fn rows(&self) -> Vec<(&'static str, String)> {
        vec![
            ("kappa", format!("{:.16}", self.kappa)),
            ("fourier_sign", format!("{}", self.fourier_sign)),
            ("omega_power", format!("{}", self.omega_power)),
            ("transform", format!("F{}", self.transform.symbol())),
            ("lambda_prefactor", format!("{:.16}", self.lambda_prefactor)),
        ]
    }
}
