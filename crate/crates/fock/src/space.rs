use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use crate::FockError;

pub const MAX_MODES: usize = 8;
pub const MAX_PARTICLES: usize = 12;

/// Occupation-number basis `|n₁ … n_d⟩`, `Σnᵢ ≤ N_max`, ordered by particle number.
#[derive(Debug)]
pub struct FockSpace {
    d: usize,
    n_max: usize,
    basis: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    sectors: Vec<Range<usize>>,
    /// `raise[i][k]`: index of `|n + eᵢ⟩`, `None` past the cutoff.
    raise: Vec<Vec<Option<usize>>>,
    /// `lower[i][k]`: index of `|n − eᵢ⟩`, `None` when `nᵢ = 0`.
    lower: Vec<Vec<Option<usize>>>,
}

fn compositions(d: usize, n: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if prefix.len() + 1 == d {
        prefix.push(n as u8);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in (0..=n).rev() {
        prefix.push(k as u8);
        compositions(d, n - k, prefix, out);
        prefix.pop();
    }
}

impl FockSpace {
    pub fn new(d: usize, n_max: usize) -> Result<Arc<Self>, FockError> {
        if d == 0 || d > MAX_MODES || n_max > MAX_PARTICLES {
            return Err(FockError::TooLarge { d, n_max });
        }
        let mut basis = Vec::new();
        let mut sectors = Vec::new();
        for n in 0..=n_max {
            let start = basis.len();
            compositions(d, n, &mut Vec::new(), &mut basis);
            sectors.push(start..basis.len());
        }
        let index: HashMap<Vec<u8>, usize> = basis.iter().enumerate().map(|(k, o)| (o.clone(), k)).collect();
        let step = |i: usize, up: bool| -> Vec<Option<usize>> {
            basis
                .iter()
                .map(|o| {
                    let mut m = o.clone();
                    if up {
                        m[i] += 1;
                    } else if m[i] == 0 {
                        return None;
                    } else {
                        m[i] -= 1;
                    }
                    index.get(&m).copied()
                })
                .collect()
        };
        let raise = (0..d).map(|i| step(i, true)).collect();
        let lower = (0..d).map(|i| step(i, false)).collect();
        Ok(Arc::new(Self { d, n_max, basis, index, sectors, raise, lower }))
    }

    pub fn modes(&self) -> usize {
        self.d
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn sector(&self, n: usize) -> Range<usize> {
        self.sectors[n].clone()
    }

    pub fn occupation(&self, k: usize) -> &[u8] {
        &self.basis[k]
    }

    pub fn particles(&self, k: usize) -> usize {
        self.basis[k].iter().map(|&x| x as usize).sum()
    }

    pub fn index_of(&self, occupation: &[u8]) -> Option<usize> {
        self.index.get(occupation).copied()
    }

    pub(crate) fn raised(&self, mode: usize, k: usize) -> Option<usize> {
        self.raise[mode][k]
    }

    pub(crate) fn lowered(&self, mode: usize, k: usize) -> Option<usize> {
        self.lower[mode][k]
    }
}
