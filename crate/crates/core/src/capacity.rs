//! One-shot classical capacity, entanglement-assisted capacity, the
//! coherent-information lower bound on diagonal inputs, and the critical
//! noise threshold below which the quantum capacity is provably positive.
//!
//! All quantities are in bits. Closed forms:
//!
//! ```text
//! C1(d,x)  = log2 d + (d-2) g(x/(d-1)) + g(1 - x + x/(d-1))      g(p) = p log2 p
//! Cea(d,x) = 2 log2 d + g(1-x) + x log2(2x/(d(d-1)))
//! J(r)     = -sum_i g(l_i) + g(1-x) + sum_{i<j} g(x(r_i+r_j)/(d-1))
//!            with l_i = (1-x) r_i + x(1-r_i)/(d-1)
//! f(d,x)   = J at the uniform vector
//!          = (1-x) log2(d(1-x)) + x(1 + log2(x/(d-1)))
//! ```
//!
//! `critical_x` bisects f on [1e-6, 1-1e-6]; the sign change is checked, not
//! assumed (at d = 2, f = 1 - H(x) >= 0 and no root is bracketed).

use serde::Serialize;



use crate::error::{Error, Result};
use crate::matrix::{xlog2, Spectrum};

/// Minimum-output-entropy input reported by the closed-form analysis: the
/// two-real-parameter reduction (theta, phi) of a pure state under the
/// orthogonal covariance group, minimized at theta = pi/4, phi = pi/2, i.e.
/// the state (i, 1, 0, ..., 0)/sqrt(2).
#[derive(Debug, Clone, Serialize)]
pub struct MinOutputState {
    pub theta: f64,
    pub phi: f64,
    pub output_spectrum: Spectrum,
}

impl MinOutputState {
    /// The minimizing pure state `(cos(theta) e^{i phi}, sin(theta), 0, ...)`
    /// as a d x 1 column.
    pub fn state_vector(&self, d: usize) -> crate::matrix::ComplexMatrix {
        let mut v = crate::matrix::ComplexMatrix::zeros(d, 1);
        let c = self.theta.cos();
        v.set(
            0,
            0,
            crate::matrix::C64::new(c * self.phi.cos(), c * self.phi.sin()),
        );
        v.set(1, 0, crate::matrix::C64::new(self.theta.sin(), 0.0));
        v
    }
}

/// Closed-form minimum output entropy spectrum
/// `{x/(d-1): d-2} U {0, 1 - x + x/(d-1)}` and its minimizer.
pub fn min_output_entropy_state(d: usize, x: f64) -> MinOutputState {
    let df = d as f64;
    let spectrum = Spectrum::from_pairs(&[
        (x / (df - 1.0), d - 2),
        (0.0, 1),
        (1.0 - x + x / (df - 1.0), 1),
    ]);
    MinOutputState {
        theta: std::f64::consts::FRAC_PI_4,
        phi: std::f64::consts::FRAC_PI_2,
        output_spectrum: spectrum,
    }
}

/// Entropy in bits of the minimum-output-entropy spectrum.
pub fn min_output_entropy(d: usize, x: f64) -> f64 {
    min_output_entropy_state(d, x).output_spectrum.entropy_bits()
}

/// One-shot classical capacity: maximal output entropy log2 d minus the
/// minimal output entropy.
pub fn classical_capacity_one_shot(d: usize, x: f64) -> f64 {
    let df = d as f64;
    df.log2() + (df - 2.0) * xlog2(x / (df - 1.0)) + xlog2(1.0 - x + x / (df - 1.0))
}

/// Mutual information of the classical channel induced at x = 1 by sending
/// basis states: joint distribution P(i,j) = (1 - delta_ij)/(d(d-1)) with
/// uniform marginals, giving log2 d - log2(d-1).
pub fn classical_mutual_information_check(d: usize) -> f64 {
    let df = d as f64;
    let joint = 1.0 / (df * (df - 1.0));
    let marginal = 1.0 / df;
    let mut total = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue; // joint probability zero
            }
            total += joint * (joint / (marginal * marginal)).log2();
        }
    }
    total
}

/// Entanglement-assisted classical capacity
/// `2 log2 d + (1-x) log2(1-x) + x log2(2x/(d(d-1)))`.
pub fn entanglement_assisted_capacity(d: usize, x: f64) -> f64 {
    let df = d as f64;
    2.0 * df.log2() + xlog2(1.0 - x) + if x > 0.0 {
        x * (2.0 * x / (df * (df - 1.0))).log2()
    } else {
        0.0
    }
}

/// Coherent information S(Phi(rho)) - S(Phi^c(rho)) of a diagonal input with
/// entries r, in closed form.
pub fn coherent_information_diagonal(d: usize, x: f64, r: &[f64]) -> Result<f64> {
    if r.len() != d {
        return Err(Error::NotAProbabilityVector {
            reason: format!("expected {d} entries, got {}", r.len()),
        });
    }
    if let Some(&bad) = r.iter().find(|&&v| v < -1e-12 || !v.is_finite()) {
        return Err(Error::NotAProbabilityVector {
            reason: format!("negative or non-finite entry {bad}"),
        });
    }
    let total: f64 = r.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::NotAProbabilityVector {
            reason: format!("entries sum to {total}"),
        });
    }
    let df = d as f64;
    let mut j = 0.0;
    for &ri in r {
        let lambda = (1.0 - x) * ri + x * (1.0 - ri) / (df - 1.0);
        j -= xlog2(lambda);
    }
    j += xlog2(1.0 - x);
    for i in 0..d {
        for k in (i + 1)..d {
            j += xlog2(x * (r[i] + r[k]) / (df - 1.0));
        }
    }
    Ok(j)
}

/// The coherent information of the maximally mixed input,
/// `f(x) = (1-x) log2(d(1-x)) + x (1 + log2(x/(d-1)))`; positive f certifies
/// positive quantum capacity at that noise level.
pub fn critical_objective(d: usize, x: f64) -> f64 {
    let df = d as f64;
    let first = if x < 1.0 {
        (1.0 - x) * (df * (1.0 - x)).log2()
    } else {
        0.0
    };
    let second = if x > 0.0 {
        x * (1.0 + (x / (df - 1.0)).log2())
    } else {
        0.0
    };
    first + second
}

const CRITICAL_BRACKET_LO: f64 = 1e-6;
const CRITICAL_BRACKET_HI: f64 = 1.0 - 1e-6;

/// Bisection root of the critical objective on [1e-6, 1-1e-6] to 1e-9.
///
/// Fails with [`Error::NoSignChange`] when the bracket endpoints have the
/// same sign; this genuinely happens at d = 2 where f = 1 - H(x) touches
/// zero at x = 1/2 without crossing.
pub fn critical_x(d: usize) -> Result<f64> {
    let f = |x: f64| critical_objective(d, x);
    let (mut lo, mut hi) = (CRITICAL_BRACKET_LO, CRITICAL_BRACKET_HI);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if (f_lo <= 0.0) == (f_hi <= 0.0) {
        return Err(Error::NoSignChange {
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    let mut f_lo = f_lo;
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if (f_lo <= 0.0) == (f_mid <= 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Capacity bundle for a (d, x) point. `x0` is per-dimension and independent
/// of x; building the report fails with `NoSignChange` where no threshold
/// exists (d = 2).
#[derive(Debug, Clone, Serialize)]
pub struct CapacityReport {
    pub d: usize,
    pub x: f64,
    pub c1: f64,
    pub c_ea: f64,
    pub j_coherent_mixed: f64,
    pub x0: f64,
}

pub fn capacity_report(d: usize, x: f64) -> Result<CapacityReport> {
    let uniform = vec![1.0 / d as f64; d];
    Ok(CapacityReport {
        d,
        x,
        c1: classical_capacity_one_shot(d, x),
        c_ea: entanglement_assisted_capacity(d, x),
        j_coherent_mixed: coherent_information_diagonal(d, x, &uniform)?,
        x0: critical_x(d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{apply, ChannelSpec};
    use crate::complement::{complement_apply, complement_spectrum_maximally_mixed};
    use crate::matrix::{entropy_of_eigenvalues, hermitian_eigenvalues_raw, ComplexMatrix, C64};

    const LOG2_3: f64 = 1.584_962_500_721_156_1;

    #[test]
    fn min_output_state_and_spectrum() {
        // x = 0: identity channel leaves the pure state pure
        let s = min_output_entropy_state(4, 0.0);
        assert_eq!(s.output_spectrum.expand(), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(min_output_entropy(4, 0.0), 0.0);

        // d=3, x=1: spectrum {1/2, 1/2, 0}, one bit
        let s = min_output_entropy_state(3, 1.0);
        assert!(s
            .output_spectrum
            .max_multiset_diff(&Spectrum::from_pairs(&[(0.5, 2), (0.0, 1)]))
            < 1e-15);
        assert!((min_output_entropy(3, 1.0) - 1.0).abs() < 1e-12);

        // frozen closed-form entropies
        assert!((min_output_entropy(3, 0.6) - 0.8812908992306927).abs() < 1e-12);
        assert!((min_output_entropy(4, 0.6) - 1.3709505944546685).abs() < 1e-12);
    }

    #[test]
    fn min_output_state_achieves_its_spectrum() {
        // the reduced-state minimizer (i, 1, 0...)/sqrt(2) actually produces
        // the claimed output spectrum, and the 2x2 block has the claimed
        // trace with vanishing determinant
        for (d, x) in [(3usize, 0.6), (4, 0.3), (5, 0.85)] {
            let s = min_output_entropy_state(d, x);
            let psi = s.state_vector(d);
            let rho = crate::sampling::pure_density(&psi);
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            let out = apply(&ChannelSpec::NoisySoLs { d, x }, &rho).unwrap();
            let numeric = crate::matrix::hermitian_eigenvalues(&out).unwrap();
            assert!(
                numeric.max_multiset_diff(&s.output_spectrum) < 1e-10,
                "d={d} x={x}"
            );
            let tr_m = out.get(0, 0).re + out.get(1, 1).re;
            assert!((tr_m - (1.0 - x + x / (d as f64 - 1.0))).abs() < 1e-12);
            let det_m = (out.get(0, 0) * out.get(1, 1) - out.get(0, 1) * out.get(1, 0)).norm();
            assert!(det_m < 1e-12);
        }
    }

    #[test]
    fn grid_search_finds_nothing_below_closed_form() {
        // 50 x 50 grid over (theta, phi) at d=4, x=0.6
        let (d, x) = (4usize, 0.6);
        let closed = min_output_entropy(d, x);
        let spec = ChannelSpec::NoisySoLs { d, x };
        let mut best = f64::INFINITY;
        for a in 0..50 {
            for b in 0..50 {
                let theta = std::f64::consts::FRAC_PI_2 * a as f64 / 49.0;
                let phi = std::f64::consts::PI * b as f64 / 49.0;
                let mut v = ComplexMatrix::zeros(d, 1);
                v.set(0, 0, C64::new(phi.cos(), phi.sin()).scale(theta.cos()));
                v.set(1, 0, C64::new(theta.sin(), 0.0));
                let out = apply(&spec, &crate::sampling::pure_density(&v)).unwrap();
                let e = entropy_of_eigenvalues(&hermitian_eigenvalues_raw(&out).unwrap());
                best = best.min(e);
            }
        }
        assert!(best >= closed - 1e-9, "grid found {best} < closed {closed}");
    }

    #[test]
    fn c1_endpoints_and_values() {
        assert_eq!(classical_capacity_one_shot(3, 0.0), LOG2_3);
        assert!((classical_capacity_one_shot(3, 1.0) - (LOG2_3 - 1.0)).abs() < 1e-12);
        assert!((classical_capacity_one_shot(2, 1.0) - 1.0).abs() < 1e-12);
        // frozen midpoint value
        assert!((classical_capacity_one_shot(3, 0.5) - 0.7736843762620232).abs() < 1e-12);
        // C1 = log2 d - S_min everywhere
        for d in 2..=6 {
            for x in [0.0, 0.3, 0.7, 1.0] {
                let lhs = classical_capacity_one_shot(d, x);
                let rhs = (d as f64).log2() - min_output_entropy(d, x);
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mutual_information_matches_x1_capacity() {
        assert!((classical_mutual_information_check(2) - 1.0).abs() < 1e-12);
        assert!((classical_mutual_information_check(3) - (LOG2_3 - 1.0)).abs() < 1e-12);
        for d in 2..=10 {
            let i = classical_mutual_information_check(d);
            let c1 = classical_capacity_one_shot(d, 1.0);
            assert!((i - c1).abs() < 1e-12, "d={d}");
            let direct = (d as f64).log2() - ((d - 1) as f64).log2();
            assert!((i - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn cea_endpoints_and_oracle() {
        for d in 2..=8 {
            let df = d as f64;
            assert_eq!(entanglement_assisted_capacity(d, 0.0), 2.0 * df.log2());
            let at_one = entanglement_assisted_capacity(d, 1.0);
            assert!((at_one - (1.0 + df.log2() - (df - 1.0).log2())).abs() < 1e-12);
        }
        assert!((entanglement_assisted_capacity(2, 1.0) - 2.0).abs() < 1e-12);
        assert!((entanglement_assisted_capacity(3, 0.5) - 1.3774437510817341).abs() < 1e-12);

        // formula equals 2 log2 d - S(Phi^c(I/d)) via the complement module
        for d in 2..=6 {
            for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let spec = ChannelSpec::NoisySoLs { d, x };
                let rho = ComplexMatrix::identity(d).scale_re(1.0 / d as f64);
                let env = complement_apply(&spec, &rho).unwrap().matrix;
                let s_env = entropy_of_eigenvalues(&hermitian_eigenvalues_raw(&env).unwrap());
                let oracle = 2.0 * (d as f64).log2() - s_env;
                let formula = entanglement_assisted_capacity(d, x);
                assert!((oracle - formula).abs() < 1e-9, "d={d} x={x}");
            }
        }
    }

    #[test]
    fn cea_closed_form_matches_complement_spectrum() {
        for d in 2..=8 {
            for x in [0.1, 0.6, 1.0] {
                let spec = ChannelSpec::NoisySoLs { d, x };
                let s = complement_spectrum_maximally_mixed(&spec).unwrap().entropy_bits();
                let formula = entanglement_assisted_capacity(d, x);
                assert!((formula - (2.0 * (d as f64).log2() - s)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coherent_information_examples() {
        // pure input gives exactly zero for every d, x
        for d in 2..=6 {
            for x in [0.0, 0.4, 1.0] {
                let mut r = vec![0.0; d];
                r[0] = 1.0;
                let j = coherent_information_diagonal(d, x, &r).unwrap();
                assert!(j.abs() < 1e-12, "d={d} x={x}: {j}");
            }
        }
        // x = 0 uniform gives log2 d
        for d in 2..=6 {
            let r = vec![1.0 / d as f64; d];
            let j = coherent_information_diagonal(d, 0.0, &r).unwrap();
            assert!((j - (d as f64).log2()).abs() < 1e-12);
        }
        // frozen value at d=3, x=0.5, uniform
        let j = coherent_information_diagonal(3, 0.5, &[1.0 / 3.0; 3]).unwrap();
        assert!((j - (-0.2075187496394219)).abs() < 1e-12);
    }

    #[test]
    fn coherent_information_matches_entropy_oracle() {
        let mut rng = crate::sampling::rng_from_seed(55);
        for d in [2usize, 3, 5] {
            for x in [0.1, 0.5, 0.9] {
                for _ in 0..5 {
                    let r = crate::sampling::random_probability_vector(d, &mut rng);
                    let rho = ComplexMatrix::diagonal(
                        &r.iter().map(|&v| C64::new(v, 0.0)).collect::<Vec<_>>(),
                    );
                    let spec = ChannelSpec::NoisySoLs { d, x };
                    let out = apply(&spec, &rho).unwrap();
                    let env = complement_apply(&spec, &rho).unwrap().matrix;
                    let oracle = entropy_of_eigenvalues(&hermitian_eigenvalues_raw(&out).unwrap())
                        - entropy_of_eigenvalues(&hermitian_eigenvalues_raw(&env).unwrap());
                    let formula = coherent_information_diagonal(d, x, &r).unwrap();
                    assert!(
                        (oracle - formula).abs() < 1e-9,
                        "d={d} x={x}: {oracle} vs {formula}"
                    );
                }
            }
        }
    }

    #[test]
    fn coherent_information_rejects_bad_vectors() {
        assert!(matches!(
            coherent_information_diagonal(3, 0.5, &[0.5, 0.5]),
            Err(Error::NotAProbabilityVector { .. })
        ));
        assert!(matches!(
            coherent_information_diagonal(3, 0.5, &[0.7, 0.6, -0.3]),
            Err(Error::NotAProbabilityVector { .. })
        ));
        assert!(matches!(
            coherent_information_diagonal(3, 0.5, &[0.5, 0.3, 0.1]),
            Err(Error::NotAProbabilityVector { .. })
        ));
    }

    #[test]
    fn critical_objective_is_uniform_coherent_information() {
        for d in [3usize, 6, 10] {
            for x in [0.05, 0.4, 0.95] {
                let f = critical_objective(d, x);
                let j =
                    coherent_information_diagonal(d, x, &vec![1.0 / d as f64; d]).unwrap();
                assert!((f - j).abs() < 1e-12, "d={d} x={x}");
            }
        }
        // endpoint: f(0) = log2 d > 0
        assert_eq!(critical_objective(5, 0.0), 5f64.log2());
    }

    #[test]
    fn critical_x_frozen_roots() {
        // bisection oracle values, 1e-9 tolerance
        let expected = [
            (3, 0.390910232),
            (4, 0.398445286),
            (5, 0.405708905),
            (6, 0.411499010),
            (7, 0.416124362),
            (8, 0.419897036),
            (9, 0.423039602),
            (10, 0.425705764),
        ];
        for (d, x0) in expected {
            let root = critical_x(d).unwrap();
            assert!((root - x0).abs() < 1e-7, "d={d}: {root} vs {x0}");
            // sign structure around the root
            assert!(critical_objective(d, root - 0.01) > 0.0);
            assert!(critical_objective(d, root + 0.01) < 0.0);
        }
        // d=3 lands inside the expected window
        let r3 = critical_x(3).unwrap();
        assert!(r3 > 0.38 && r3 < 0.42);
    }

    #[test]
    fn critical_x_no_sign_change_at_d2() {
        // f(x) = 1 - H(x) >= 0: no bracket, by construction of the objective
        match critical_x(2) {
            Err(Error::NoSignChange { f_lo, f_hi, .. }) => {
                assert!(f_lo > 0.0 && f_hi > 0.0);
            }
            other => panic!("expected NoSignChange, got {other:?}"),
        }
    }

    #[test]
    fn capacity_report_bundle() {
        let r = capacity_report(3, 0.25).unwrap();
        assert!(r.c1 <= r.c_ea);
        assert!(r.c1 >= 0.0 && r.c1 <= LOG2_3);
        assert!(r.c_ea <= 2.0 * LOG2_3 + 1e-12);
        assert!((r.x0 - 0.390910232).abs() < 1e-7);
        assert!(matches!(
            capacity_report(2, 0.5),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn c1_below_cea_on_grid() {
        for d in 2..=8 {
            for k in 0..=10 {
                let x = k as f64 / 10.0;
                assert!(
                    classical_capacity_one_shot(d, x)
                        <= entanglement_assisted_capacity(d, x) + 1e-12,
                    "d={d} x={x}"
                );
            }
        }
    }

    #[test]
    fn randomized_search_respects_minimum() {
        let mut rng = crate::sampling::rng_from_seed(77);
        for d in [3usize, 4] {
            for x in [0.3, 1.0] {
                let closed = min_output_entropy(d, x);
                let spec = ChannelSpec::NoisySoLs { d, x };
                for _ in 0..200 {
                    let psi = crate::sampling::random_pure_state(d, &mut rng);
                    let out = apply(&spec, &crate::sampling::pure_density(&psi)).unwrap();
                    let e = entropy_of_eigenvalues(&hermitian_eigenvalues_raw(&out).unwrap());
                    assert!(e >= closed - 1e-9, "d={d} x={x}: found {e} < {closed}");
                }
            }
        }
    }
}
