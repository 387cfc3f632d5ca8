//! Complementary channel of the noisy family, from the Kraus-row recipe and
//! in closed block form.
//!
//! The environment space has dimension d^2 + 1 with basis
//! `{|0>} U {|m,n>, m,n = 1..d}`; the |m,n> block is ordered exactly like
//! [`ComplexMatrix::vectorize`], and the Kraus index runs A_0 first, then all
//! ordered pairs (m,n) lexicographically *including* m = n (those operators
//! vanish, J_mm = 0, but they pad the index space to d^2 + 1 rows).
//!
//! Output block layout for input rho:
//!
//! ```text
//! [ (1-x) tr(rho)      i c w^T          ]      c = sqrt(x(1-x)/(2(d-1)))
//! [ i c w              x/(2(d-1)) B     ]      w = (I - S)|rho>
//! ```                                          B = (I - S)(I (x) rho + rho (x) I)
//!
//! Both off-diagonal blocks carry the same components
//! `i c (rho_mn - rho_nm)`; that is what the trace formula
//! `tr(A_alpha rho A_gamma^dag)` gives, and it is Hermitian-consistent for
//! Hermitian input.

use crate::channel::{ChannelSpec, KrausLabel, KrausSet};
use crate::error::{Error, Result};
use crate::matrix::{swap_operator, ComplexMatrix, Spectrum, C64};

/// Output of the complementary channel with its 1 + d^2 block split.
#[derive(Debug, Clone)]
pub struct ComplementOutput {
    pub matrix: ComplexMatrix,
    /// Input dimension d; the environment splits as 1 + d^2.
    pub d: usize,
}

impl ComplementOutput {
    pub fn corner(&self) -> C64 {
        self.matrix.get(0, 0)
    }

    /// The d^2 x d^2 lower block over the |m,n> basis.
    pub fn pair_block(&self) -> ComplexMatrix {
        let n = self.d * self.d;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.matrix.get(1 + i, 1 + j));
            }
        }
        out
    }

    /// Max-entry norm over the two off-diagonal blocks.
    pub fn off_block_max(&self) -> f64 {
        let n = self.d * self.d;
        let mut worst = 0.0f64;
        for k in 0..n {
            worst = worst.max(self.matrix.get(0, 1 + k).norm());
            worst = worst.max(self.matrix.get(1 + k, 0).norm());
        }
        worst
    }
}

fn require_noisy(spec: &ChannelSpec) -> Result<(usize, f64)> {
    match *spec {
        ChannelSpec::NoisySoLs { d, x } => {
            spec.validate()?;
            Ok((d, x))
        }
        _ => Err(Error::UnsupportedFamily {
            family: spec.family_name(),
        }),
    }
}

/// Kraus operators of the complement: d operators R_i of shape (d^2+1) x d
/// with `(R_i)_{alpha, j} = (A_alpha)_{i, j}`.
pub fn complement_kraus(spec: &ChannelSpec) -> Result<KrausSet> {
    let (d, x) = require_noisy(spec)?;
    let env = d * d + 1;
    // padded Kraus list: A_0, then A_mn over all ordered (m,n) incl. m = n
    let weight = (x / (2.0 * (d - 1) as f64)).sqrt();
    let a0 = ComplexMatrix::identity(d).scale_re((1.0 - x).sqrt());
    let mut operators = Vec::with_capacity(d);
    let mut labels = Vec::with_capacity(d);
    for i in 0..d {
        let mut r = ComplexMatrix::zeros(env, d);
        for j in 0..d {
            r.set(0, j, a0.get(i, j));
        }
        for m in 0..d {
            for n in 0..d {
                if m == n {
                    continue; // J_mm = 0 leaves the row zero
                }
                let alpha = 1 + m * d + n;
                // (A_mn)_{i,j} = -i w (d_im d_nj - d_in d_mj)
                if i == m {
                    r.set(alpha, n, C64::new(0.0, -weight));
                }
                if i == n {
                    r.set(alpha, m, C64::new(0.0, weight));
                }
            }
        }
        operators.push(r);
        labels.push(KrausLabel::Row(i));
    }
    Ok(KrausSet { operators, labels })
}

/// Closed block-form complement output.
pub fn complement_apply(spec: &ChannelSpec, rho: &ComplexMatrix) -> Result<ComplementOutput> {
    let (d, x) = require_noisy(spec)?;
    if rho.rows != d || rho.cols != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: rho.rows,
        });
    }
    let env = d * d + 1;
    let mut out = ComplexMatrix::zeros(env, env);
    out.set(0, 0, rho.trace().scale(1.0 - x));

    let c = (x * (1.0 - x) / (2.0 * (d - 1) as f64)).max(0.0).sqrt();
    let id2 = ComplexMatrix::identity(d * d);
    let proj = id2.sub(&swap_operator(d));
    let w = proj.matmul(&rho.vectorize());
    for k in 0..d * d {
        let v = w.get(k, 0) * C64::new(0.0, c);
        out.set(0, 1 + k, v);
        out.set(1 + k, 0, v);
    }

    let identity = ComplexMatrix::identity(d);
    let b = proj
        .matmul(&identity.kron(rho).add(&rho.kron(&identity)))
        .scale_re(x / (2.0 * (d - 1) as f64));
    for i in 0..d * d {
        for j in 0..d * d {
            out.set(1 + i, 1 + j, b.get(i, j));
        }
    }
    Ok(ComplementOutput { matrix: out, d })
}

/// Kraus-recipe evaluation `sum R_i rho R_i^dag`; the oracle route against
/// [`complement_apply`].
pub fn complement_apply_kraus(spec: &ChannelSpec, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (d, _) = require_noisy(spec)?;
    if rho.rows != d || rho.cols != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: rho.rows,
        });
    }
    Ok(complement_kraus(spec)?.apply(rho))
}

/// Closed-form spectrum of the complement at the maximally mixed input:
/// `{1-x: 1, 0: d(d+1)/2, 2x/(d(d-1)): d(d-1)/2}`.
pub fn complement_spectrum_maximally_mixed(spec: &ChannelSpec) -> Result<Spectrum> {
    let (d, x) = require_noisy(spec)?;
    let df = d as f64;
    Ok(Spectrum::from_pairs(&[
        (1.0 - x, 1),
        (0.0, d * (d + 1) / 2),
        (2.0 * x / (df * (df - 1.0)), d * (d - 1) / 2),
    ]))
}
