use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("Fock space with d = {d}, N_max = {n_max} is outside d ≤ 8, N_max ≤ 12")]
    TooLarge { d: usize, n_max: usize },
    #[error("one-particle vector has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("operator norm {norm:.6} exceeds 1: Γ(A) needs a contraction")]
    NotContraction { norm: f64 },
    #[error("block operator violates the symplectic relation by {defect:.3e} (tolerance {tolerance:.1e})")]
    NotSymplectic { defect: f64, tolerance: f64 },
}
