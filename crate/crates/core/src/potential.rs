use crate::{lit, CoreError, Grid, Real};

/// Non-negative, decaying external potential.
#[derive(Clone, Debug, PartialEq)]
pub enum PotentialSpec<T> {
    Zero,
    /// `amplitude · exp(-(x/width)²)`.
    Gaussian { amplitude: T, width: T },
    /// `height` on `|x| ≤ half_width`, zero outside.
    Barrier { height: T, half_width: T },
    /// One value per lattice point.
    Sampled(Vec<T>),
}

impl<T: Real> PotentialSpec<T> {
    pub fn gaussian(amplitude: T, width: T) -> Self {
        Self::Gaussian { amplitude, width }
    }

    /// Lattice samples, validated: every value `≥ 0`, and the outer 10% of
    /// points carry at most `1e-8` of the peak.
    pub fn samples(&self, grid: &Grid<T>) -> Result<Vec<T>, CoreError> {
        let v: Vec<T> = match self {
            Self::Zero => vec![T::zero(); grid.n()],
            Self::Gaussian { amplitude, width } => {
                if !(*width > T::zero()) {
                    return Err(CoreError::InvalidPotential("gaussian width must be positive".into()));
                }
                grid.points()
                    .iter()
                    .map(|&x| {
                        let u = x / *width;
                        *amplitude * (-u * u).exp()
                    })
                    .collect()
            }
            Self::Barrier { height, half_width } => grid
                .points()
                .iter()
                .map(|&x| if x.abs() <= *half_width { *height } else { T::zero() })
                .collect(),
            Self::Sampled(s) => {
                if s.len() != grid.n() {
                    return Err(CoreError::Dimension { expected: grid.n(), got: s.len() });
                }
                s.clone()
            }
        };
        validate(&v)?;
        Ok(v)
    }
}

fn validate<T: Real>(v: &[T]) -> Result<(), CoreError> {
    if let Some((i, x)) = v.iter().enumerate().find(|(_, x)| !x.is_finite() || **x < T::zero()) {
        return Err(CoreError::InvalidPotential(format!("V[{i}] = {x} is negative or not finite")));
    }
    let peak = v.iter().fold(T::zero(), |m, &x| m.max(x));
    if peak == T::zero() {
        return Ok(());
    }
    let n = v.len();
    let edge = (n / 20).max(1);
    let outer = v[..edge].iter().chain(v[n - edge..].iter()).fold(T::zero(), |m, &x| m.max(x));
    if outer > lit::<T>(1e-8) * peak {
        return Err(CoreError::InvalidPotential(format!(
            "V does not decay: {outer} at the edges against peak {peak}"
        )));
    }
    Ok(())
}
