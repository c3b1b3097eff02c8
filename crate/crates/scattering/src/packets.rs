use kgscat_core::{Grid64, LatticeFunction64};
use num_complex::Complex;

/// Time direction of a wave operator: `w₊` is the `t → +∞` limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Self::Plus => '+',
            Self::Minus => '-',
        }
    }

    pub fn both() -> [Direction; 2] {
        [Self::Plus, Self::Minus]
    }
}

/// Normalised `exp(-(x-x₀)²/4σ²) e^{ik₀x}` (position spread σ, momentum spread 1/2σ).
pub fn gaussian_packet(grid: &Grid64, center: f64, k0: f64, width: f64) -> LatticeFunction64 {
    LatticeFunction64::from_complex(grid, |x| {
        let d = x - center;
        let env = (-d * d / (4.0 * width * width)).exp();
        Complex::new(env * (k0 * x).cos(), env * (k0 * x).sin())
    })
    .normalized()
}

/// Free Klein-Gordon group velocity `k/√(k²+m²)`.
pub fn group_velocity(k: f64, mass: f64) -> f64 {
    k / (k * k + mass * mass).sqrt()
}

/// Centre of a `w₊` test packet on the ring: it starts right of the potential and
/// travels three quarters of its free path before crossing the antipode, so the
/// free orbit up to `t_max` never re-enters the scattering region.
/// `w₋` packets use the mirrored centre and the same momentum.
pub fn kinematic_center(grid: &Grid64, k0: f64, mass: f64, t_max: f64, direction: Direction) -> f64 {
    let l = grid.half_width();
    let travel = 0.75 * group_velocity(k0, mass) * t_max;
    let x0 = (2.0 * l - travel).rem_euclid(2.0 * l) - l;
    direction.sign() * x0
}

/// Momentum centres and width of the packet band.
#[derive(Clone, Debug, PartialEq)]
pub struct BandSpec {
    pub momenta: Vec<f64>,
    pub width: f64,
}

impl Default for BandSpec {
    fn default() -> Self {
        Self { momenta: vec![0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0], width: 2.0 }
    }
}

#[derive(Clone, Debug)]
pub struct Packet {
    pub k0: f64,
    pub center: f64,
    pub f: LatticeFunction64,
}

/// Kinematically placed packets for `w±` at horizon `t_max`.
pub fn band_packets(grid: &Grid64, band: &BandSpec, mass: f64, t_max: f64, direction: Direction) -> Vec<Packet> {
    band.momenta
        .iter()
        .map(|&k0| {
            let center = kinematic_center(grid, k0, mass, t_max, direction);
            Packet { k0, center, f: gaussian_packet(grid, center, k0, band.width) }
        })
        .collect()
}

/// Packets centred on the potential, for checks of `S` and of identities on the band.
pub fn origin_packets(grid: &Grid64, band: &BandSpec) -> Vec<Packet> {
    band.momenta
        .iter()
        .map(|&k0| Packet { k0, center: 0.0, f: gaussian_packet(grid, 0.0, k0, band.width) })
        .collect()
}

/// Packet for the Riemann–Lebesgue probe `t ↦ (g, e^{itω₀}f)`: under `e^{itω₀}` it moves left
/// with speed `v = L/(t₁ − t₀)`, sitting on the origin at `t₀` and at the antipode at `t₁`,
/// so the decay measured at `t₁` is not masked by wrap-around on the ring.
pub fn riemann_lebesgue_packet(grid: &Grid64, mass: f64, t0: f64, t1: f64, width: f64) -> Packet {
    let v = (grid.half_width() / (t1 - t0)).min(0.99);
    let k0 = v * mass / (1.0 - v * v).sqrt();
    let center = v * t0;
    Packet { k0, center, f: gaussian_packet(grid, center, k0, width) }
}
