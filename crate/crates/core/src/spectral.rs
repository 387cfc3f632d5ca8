//! Superoperator of the noisy channel, its spectrum on the X/Y/Z/I operator
//! basis, the closed-form determinant and the infinitesimal-divisibility
//! verdict.
//!
//! Eigenoperators of Phi_x (strict i < j for the X class; the diagonal
//! differences Z_i share the X eigenvalue):
//!
//! ```text
//! X_ij = E_ij + E_ji   eigenvalue 1 - x d/(d-1)      multiplicity d(d-1)/2
//! Y_ij = E_ij - E_ji   eigenvalue 1 - x (d-2)/(d-1)  multiplicity d(d-1)/2
//! Z_i  = E_ii - E_i+1,i+1  eigenvalue 1 - x d/(d-1)  multiplicity d-1
//! I                        eigenvalue 1              multiplicity 1
//! ```
//!
//! A negative determinant rules out infinitesimal divisibility, which happens
//! exactly for x > (d-1)/d with (d+2)(d-1)/2 odd.

use serde::Serialize;

use crate::channel::{apply, ChannelSpec};
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigenvalues_raw, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BasisClass {
    X,
    Y,
    Z,
    Ident,
}

impl std::fmt::Display for BasisClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisClass::X => write!(f, "X"),
            BasisClass::Y => write!(f, "Y"),
            BasisClass::Z => write!(f, "Z"),
            BasisClass::Ident => write!(f, "I"),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumLine {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub class: BasisClass,
}

/// Channel eigenvalues grouped by operator-basis class; total multiplicity is
/// d^2 and the identity class always carries eigenvalue 1.
#[derive(Debug, Clone, Serialize)]
pub struct ChannelSpectrum {
    pub d: usize,
    pub entries: Vec<SpectrumLine>,
}

impl ChannelSpectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Full eigenvalue multiset, descending.
    pub fn expand(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat(e.eigenvalue).take(e.multiplicity))
            .collect();
        out.sort_by(|a, b| b.partial_cmp(a).unwrap());
        out
    }

    /// Product of all eigenvalues with multiplicity.
    pub fn eigenvalue_product(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.eigenvalue.powi(e.multiplicity as i32))
            .product()
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DivisibilityVerdict {
    pub determinant: f64,
    pub not_infinitesimally_divisible: bool,
    /// Noise threshold (d-1)/d beyond which the X/Z eigenvalue is negative.
    pub condition_x: f64,
    /// Whether the X/Z exponent (d+2)(d-1)/2 is odd.
    pub condition_dimension: bool,
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

/// The d^2 x d^2 matrix L with `L vec(rho) = vec(Phi(rho))` (row-stacking),
/// built column-by-column from the matrix units.
pub fn superoperator(spec: &ChannelSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let d = spec.dim();
    let mut l = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let col = apply(spec, &ComplexMatrix::basis(d, i, j))?.vectorize();
            for row in 0..d * d {
                l.set(row, i * d + j, col.get(row, 0));
            }
        }
    }
    Ok(l)
}

/// Closed-form channel spectrum on the X/Y/Z/I basis, with each class
/// spot-checked against an actual channel application.
pub fn channel_spectrum(spec: &ChannelSpec) -> Result<ChannelSpectrum> {
    let (d, x) = require_noisy(spec)?;
    let df = d as f64;
    let lam_x = 1.0 - x * df / (df - 1.0);
    let lam_y = 1.0 - x * (df - 2.0) / (df - 1.0);
    let entries = vec![
        SpectrumLine {
            eigenvalue: lam_x,
            multiplicity: d * (d - 1) / 2,
            class: BasisClass::X,
        },
        SpectrumLine {
            eigenvalue: lam_y,
            multiplicity: d * (d - 1) / 2,
            class: BasisClass::Y,
        },
        SpectrumLine {
            eigenvalue: lam_x,
            multiplicity: d - 1,
            class: BasisClass::Z,
        },
        SpectrumLine {
            eigenvalue: 1.0,
            multiplicity: 1,
            class: BasisClass::Ident,
        },
    ];
    // spot-check each class on a representative basis operator
    let reps: [(BasisClass, ComplexMatrix, f64); 4] = [
        (
            BasisClass::X,
            ComplexMatrix::basis(d, 0, 1).add(&ComplexMatrix::basis(d, 1, 0)),
            lam_x,
        ),
        (
            BasisClass::Y,
            ComplexMatrix::basis(d, 0, 1).sub(&ComplexMatrix::basis(d, 1, 0)),
            lam_y,
        ),
        (
            BasisClass::Z,
            ComplexMatrix::basis(d, 0, 0).sub(&ComplexMatrix::basis(d, 1, 1)),
            lam_x,
        ),
        (BasisClass::Ident, ComplexMatrix::identity(d), 1.0),
    ];
    for (class, op, lam) in reps {
        let defect = apply(spec, &op)?.max_abs_diff(&op.scale_re(lam));
        debug_assert!(defect < 1e-10, "class {class} eigen-equation defect {defect}");
    }
    Ok(ChannelSpectrum { d, entries })
}

/// Closed-form determinant and the divisibility verdict.
pub fn determinant(spec: &ChannelSpec) -> Result<DivisibilityVerdict> {
    let (d, x) = require_noisy(spec)?;
    let df = d as f64;
    let lam_x = 1.0 - x * df / (df - 1.0);
    let lam_y = 1.0 - x * (df - 2.0) / (df - 1.0);
    let exp_x = (d + 2) * (d - 1) / 2;
    let exp_y = d * (d - 1) / 2;
    let det = lam_x.powi(exp_x as i32) * lam_y.powi(exp_y as i32);
    Ok(DivisibilityVerdict {
        determinant: det,
        not_infinitesimally_divisible: det < 0.0,
        condition_x: (df - 1.0) / df,
        condition_dimension: exp_x % 2 == 1,
    })
}

/// Numerical determinant of the superoperator via its eigenvalue product.
/// The superoperator of every family here is real symmetric, so the product
/// of its (real) eigenvalues is the determinant without LU sign bookkeeping.
pub fn superoperator_determinant_numeric(spec: &ChannelSpec) -> Result<f64> {
    let l = superoperator(spec)?;
    let values = hermitian_eigenvalues_raw(&l)?;
    Ok(values.iter().product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Spectrum;

    fn noisy(d: usize, x: f64) -> ChannelSpec {
        ChannelSpec::NoisySoLs { d, x }
    }

    #[test]
    fn superoperator_identity_at_x0() {
        let l = superoperator(&noisy(3, 0.0)).unwrap();
        assert_eq!(l.max_abs_diff(&ComplexMatrix::identity(9)), 0.0);
    }

    #[test]
    fn superoperator_represents_the_channel() {
        let mut rng = crate::sampling::rng_from_seed(12);
        for (d, x) in [(2, 1.0), (3, 0.4), (5, 0.8)] {
            let spec = noisy(d, x);
            let l = superoperator(&spec).unwrap();
            for _ in 0..10 {
                let rho = crate::sampling::random_density(d, &mut rng);
                let lhs = l.matmul(&rho.vectorize());
                let rhs = apply(&spec, &rho).unwrap().vectorize();
                assert!(lhs.max_abs_diff(&rhs) < 1e-12);
            }
        }
    }

    #[test]
    fn d2_x1_superoperator_is_sigma_y_conjugation() {
        // conjugation by sigma_y has determinant 1
        let spec = noisy(2, 1.0);
        let l = superoperator(&spec).unwrap();
        let det = superoperator_determinant_numeric(&spec).unwrap();
        assert!((det - 1.0).abs() < 1e-10);
        // explicit 4x4: vec-form of rho -> sigma_y rho sigma_y
        let sy = ComplexMatrix::new(
            2,
            2,
            vec![
                crate::matrix::C64::new(0.0, 0.0),
                crate::matrix::C64::new(0.0, -1.0),
                crate::matrix::C64::new(0.0, 1.0),
                crate::matrix::C64::new(0.0, 0.0),
            ],
        );
        let expected = sy.kron(&sy.conj());
        assert!(l.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn closed_form_spectrum_examples() {
        // x = 0: all eigenvalues 1
        let s = channel_spectrum(&noisy(4, 0.0)).unwrap();
        assert!(s.expand().iter().all(|&v| v == 1.0));
        assert_eq!(s.total_multiplicity(), 16);

        // d=3, x=1: X/Z eigenvalue -1/2, Y eigenvalue 1/2
        let s = channel_spectrum(&noisy(3, 1.0)).unwrap();
        assert_eq!(s.entries[0].eigenvalue, -0.5);
        assert_eq!(s.entries[0].multiplicity, 3);
        assert_eq!(s.entries[1].eigenvalue, 0.5);
        assert_eq!(s.entries[1].multiplicity, 3);
        assert_eq!(s.entries[2].eigenvalue, -0.5);
        assert_eq!(s.entries[2].multiplicity, 2);
        assert_eq!(s.entries[3].eigenvalue, 1.0);

        // d=4, x=0.5: X/Z 1/3, Y 2/3
        let s = channel_spectrum(&noisy(4, 0.5)).unwrap();
        assert!((s.entries[0].eigenvalue - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.entries[1].eigenvalue - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_spectrum_matches_superoperator_eigenvalues() {
        for (d, x) in [(3, 1.0), (4, 0.5), (6, 0.25)] {
            let spec = noisy(d, x);
            let closed = Spectrum::from_values(&channel_spectrum(&spec).unwrap().expand(), 1e-12);
            let l = superoperator(&spec).unwrap();
            let numeric =
                Spectrum::from_values(&hermitian_eigenvalues_raw(&l).unwrap(), 1e-9);
            assert!(closed.max_multiset_diff(&numeric) < 1e-10, "d={d} x={x}");
        }
    }

    #[test]
    fn determinant_examples() {
        // x = 0 gives determinant 1, divisible
        let v = determinant(&noisy(7, 0.0)).unwrap();
        assert_eq!(v.determinant, 1.0);
        assert!(!v.not_infinitesimally_divisible);

        // d=3, x=1: (-1/2)^5 (1/2)^3 = -1/256
        let v = determinant(&noisy(3, 1.0)).unwrap();
        assert!((v.determinant - (-1.0 / 256.0)).abs() < 1e-15);
        assert!(v.not_infinitesimally_divisible);
        assert!(v.condition_dimension);
        assert!((v.condition_x - 2.0 / 3.0).abs() < 1e-15);

        // d=5, x=1: exponent 14 is even, determinant non-negative
        let v = determinant(&noisy(5, 1.0)).unwrap();
        assert!(v.determinant >= 0.0);
        assert!(!v.not_infinitesimally_divisible);
        assert!(!v.condition_dimension);
    }

    #[test]
    fn verdict_iff_negative_determinant() {
        for d in 2..=10 {
            for x in [0.0, 0.25, 0.5, 0.75, 0.9, 1.0] {
                let v = determinant(&noisy(d, x)).unwrap();
                assert_eq!(v.not_infinitesimally_divisible, v.determinant < 0.0);
                // sign computed independently from the two conditions
                let threshold = (d as f64 - 1.0) / d as f64;
                let expected_negative = x > threshold && v.condition_dimension;
                assert_eq!(
                    v.determinant < 0.0,
                    expected_negative,
                    "d={d} x={x} det={}",
                    v.determinant
                );
            }
        }
    }

    #[test]
    fn dimension_parity_set() {
        let odd: Vec<usize> = (3..=12)
            .filter(|&d| ((d + 2) * (d - 1) / 2) % 2 == 1)
            .collect();
        assert_eq!(odd, vec![3, 4, 7, 8, 11, 12]);
    }

    #[test]
    fn eigenvalue_product_equals_closed_determinant() {
        for d in 2..=10 {
            for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let spec = noisy(d, x);
                let prod = channel_spectrum(&spec).unwrap().eigenvalue_product();
                let det = determinant(&spec).unwrap().determinant;
                let scale = det.abs().max(prod.abs()).max(1e-300);
                assert!(
                    (prod - det).abs() / scale < 1e-10,
                    "d={d} x={x}: {prod} vs {det}"
                );
            }
        }
    }

    #[test]
    fn numeric_determinant_matches_closed_form() {
        for d in 3..=8 {
            for x in [0.25, 0.5, 0.75, 1.0] {
                let spec = noisy(d, x);
                let num = superoperator_determinant_numeric(&spec).unwrap();
                let closed = determinant(&spec).unwrap().determinant;
                let tol = 1e-8 * num.abs().max(closed.abs()) + 1e-13;
                assert!((num - closed).abs() <= tol, "d={d} x={x}: {num} vs {closed}");
            }
        }
    }

    #[test]
    fn unsupported_family() {
        assert!(matches!(
            channel_spectrum(&ChannelSpec::SoLs { d: 3 }),
            Err(Error::UnsupportedFamily { .. })
        ));
        assert!(matches!(
            determinant(&ChannelSpec::UPlus { d: 3 }),
            Err(Error::UnsupportedFamily { .. })
        ));
    }
}
