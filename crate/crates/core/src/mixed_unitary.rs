//! Extremality via the Choi criterion, and the even-d decomposition of the
//! channel into a uniform mixture of unitaries.
//!
//! For even d the pairs {1..d} admit a 1-factorization: d-1 rounds of d/2
//! disjoint pairs covering every pair exactly once (round-robin schedule).
//! Within a round, the generators J_p of its pairs have orthogonal supports,
//! so the discrete-Fourier combinations
//! `K_t = (1/sqrt(d/2)) sum_s w^{ts} J_{p_s}` with `w = exp(2 pi i/(d/2))`
//! satisfy `K_t^dag K_t = (2/d) I`; rescaled by sqrt(d/2) they are unitary,
//! and the per-round Fourier matrix is unitary so the channel is unchanged.

use crate::channel::KrausSet;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// Partition of all index pairs of {1..d} into d-1 rounds of d/2 disjoint
/// pairs. Pairs are 0-based internally.
#[derive(Debug, Clone)]
pub struct OneFactorization {
    pub d: usize,
    pub rounds: Vec<Vec<(usize, usize)>>,
}

impl OneFactorization {
    /// Check the defining invariants: every label appears exactly once per
    /// round and every unordered pair exactly once across rounds.
    pub fn is_valid(&self) -> bool {
        let d = self.d;
        if self.rounds.len() != d - 1 {
            return false;
        }
        let mut seen_pairs = std::collections::HashSet::new();
        for round in &self.rounds {
            if round.len() != d / 2 {
                return false;
            }
            let mut seen_labels = vec![false; d];
            for &(a, b) in round {
                if a >= d || b >= d || a == b || seen_labels[a] || seen_labels[b] {
                    return false;
                }
                seen_labels[a] = true;
                seen_labels[b] = true;
                if !seen_pairs.insert((a.min(b), a.max(b))) {
                    return false;
                }
            }
        }
        seen_pairs.len() == d * (d - 1) / 2
    }
}

/// Round-robin 1-factorization: round r pairs the pivot d-1 with r, plus
/// {(r+k) mod (d-1), (r-k) mod (d-1)} for k = 1..d/2-1.
pub fn one_factorization(d: usize) -> Result<OneFactorization> {
    if d % 2 != 0 || d < 2 {
        return Err(Error::OddDimension { d });
    }
    let m = d - 1;
    let canonical = |a: usize, b: usize| (a.min(b), a.max(b));
    let rounds = (0..m)
        .map(|r| {
            let mut pairs = vec![canonical(d - 1, r)];
            for k in 1..d / 2 {
                let (a, b) = ((r + k) % m, (r + m - k) % m);
                pairs.push(canonical(a, b));
            }
            pairs
        })
        .collect();
    Ok(OneFactorization { d, rounds })
}

/// Mixture of unitaries with per-entry weights; `sum_i w_i U_i rho U_i^dag`
/// reproduces the channel the decomposition was built for.
#[derive(Debug, Clone)]
pub struct MixedUnitaryDecomposition {
    pub weights: Vec<f64>,
    pub unitaries: Vec<ComplexMatrix>,
}

impl MixedUnitaryDecomposition {
    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let d = rho.rows;
        self.weights
            .iter()
            .zip(&self.unitaries)
            .fold(ComplexMatrix::zeros(d, d), |acc, (&w, u)| {
                acc.add(&u.matmul(rho).matmul(&u.adjoint()).scale_re(w))
            })
    }

    /// Worst unitarity defect across all members.
    pub fn max_unitarity_defect(&self) -> f64 {
        self.unitaries
            .iter()
            .map(|u| u.unitarity_defect())
            .fold(0.0, f64::max)
    }
}

/// The d(d-1)/2 unitaries of the pure channel, uniform weight 2/(d(d-1)).
pub fn unitary_kraus(d: usize) -> Result<MixedUnitaryDecomposition> {
    let fact = one_factorization(d)?;
    let w = d / 2;
    let omega = C64::new(0.0, 2.0 * std::f64::consts::PI / w as f64).exp();
    let mut unitaries = Vec::with_capacity(d * (d - 1) / 2);
    for round in &fact.rounds {
        let gens: Vec<ComplexMatrix> = round
            .iter()
            .map(|&(a, b)| crate::algebra::rotation_generator(d, a, b))
            .collect();
        for t in 0..w {
            let mut u = ComplexMatrix::zeros(d, d);
            for (s, g) in gens.iter().enumerate() {
                u = u.add(&g.scale(omega.powu((t * s) as u32)));
            }
            unitaries.push(u);
        }
    }
    let weight = 2.0 / (d * (d - 1)) as f64;
    Ok(MixedUnitaryDecomposition {
        weights: vec![weight; unitaries.len()],
        unitaries,
    })
}

/// Mixed-unitary form of the noisy channel: identity with weight 1-x plus the
/// pure-channel unitaries with weights 2x/(d(d-1)). Zero-weight members are
/// dropped, so x = 0 returns the single identity and x = 1 the pure mixture.
pub fn noisy_mixed_unitary(d: usize, x: f64) -> Result<MixedUnitaryDecomposition> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidSpec {
            reason: format!("noise x must lie in [0,1], got {x}"),
        });
    }
    let pure = unitary_kraus(d)?;
    let mut weights = Vec::with_capacity(pure.len() + 1);
    let mut unitaries = Vec::with_capacity(pure.len() + 1);
    if 1.0 - x > 0.0 {
        weights.push(1.0 - x);
        unitaries.push(ComplexMatrix::identity(d));
    }
    if x > 0.0 {
        let w = 2.0 * x / (d * (d - 1)) as f64;
        for u in pure.unitaries {
            weights.push(w);
            unitaries.push(u);
        }
    }
    Ok(MixedUnitaryDecomposition { weights, unitaries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalityReport {
    pub extremal: bool,
    pub rank: usize,
    pub max_rank: usize,
}

/// Choi extremality criterion: a channel with Kraus operators {A_m} is
/// extremal iff {A_m^dag A_n} is linearly independent. The K^2 products are
/// vectorized into rows and the numerical rank is taken with singular values
/// above 1e-9 of the largest.
pub fn extremality_test(k: &KrausSet) -> Result<ExtremalityReport> {
    if k.is_empty() {
        return Err(Error::EmptyKrausSet);
    }
    let d = k.operators[0].rows;
    for a in &k.operators {
        if a.rows != d || a.cols != d {
            return Err(Error::NotSquare {
                rows: a.rows,
                cols: a.cols,
            });
        }
    }
    let kk = k.len() * k.len();
    let mut rows = ComplexMatrix::zeros(kk, d * d);
    for (i, a) in k.operators.iter().enumerate() {
        for (j, b) in k.operators.iter().enumerate() {
            let prod = a.adjoint().matmul(b).vectorize();
            for c in 0..d * d {
                rows.set(i * k.len() + j, c, prod.get(c, 0));
            }
        }
    }
    let sv = rows.to_na().singular_values();
    let largest = sv.iter().fold(0.0f64, |m, &s| m.max(s));
    let rank = if largest == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > 1e-9 * largest).count()
    };
    Ok(ExtremalityReport {
        extremal: rank == kk,
        rank,
        max_rank: kk,
    })
}
