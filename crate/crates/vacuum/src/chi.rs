/// Cutoff `χ(λx)`: one on `|x| ≤ 1`, zero on `|x| ≥ 2`, quintic smoothstep between.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffChi {
    pub lambda: f64,
}

impl CutoffChi {
    pub fn new(lambda: f64) -> Self {
        assert!(lambda > 0.0, "cutoff scale must be positive");
        Self { lambda }
    }

    /// The profile `χ(u)`.
    pub fn profile(u: f64) -> f64 {
        let s = (2.0 - u.abs()).clamp(0.0, 1.0);
        s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)
    }

    pub fn eval(&self, x: f64) -> f64 {
        Self::profile(self.lambda * x)
    }
}
