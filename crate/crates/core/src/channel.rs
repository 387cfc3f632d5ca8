//! The channel families and their Kraus / closed-form / Choi representations.
//!
//! Families:
//! - `so_ls`: Phi(rho) = (tr rho I - rho^T)/(d-1), Kraus operators J_mn/sqrt(d-1);
//! - `noisy_so_ls`: Phi_x = (1-x) id + x Phi, the noise interpolation;
//! - `spin_j_ls`: Lambda_j(rho) = (J_x rho J_x + J_y rho J_y + J_z rho J_z)/(j(j+1));
//! - `u_plus`: Phi+(rho) = (tr rho I + rho^T)/(d+1) from the symmetric K_mn;
//! - `wh_eta`: the convex family (1-eta)/2 Phi + (1+eta)/2 Phi+, equal to
//!   [(d-eta) tr rho I + (eta d - 1) rho^T]/(d^2-1).
//!
//! `apply` always evaluates the closed form; the Kraus path exists as an
//! independent cross-check.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{build_so_generators, build_spin_generators, build_u_completion, rotation_generator};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::sampling;

/// Symbolic channel description from which every representation is derived.
///
/// JSON form: `{"family": "...", "d": int, "x": float?, "eta": float?, "j": float?}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ChannelSpec {
    SoLs { d: usize },
    NoisySoLs { d: usize, x: f64 },
    SpinJLs { j: f64 },
    UPlus { d: usize },
    WhEta { d: usize, eta: f64 },
}

impl ChannelSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            ChannelSpec::SoLs { .. } => "so_ls",
            ChannelSpec::NoisySoLs { .. } => "noisy_so_ls",
            ChannelSpec::SpinJLs { .. } => "spin_j_ls",
            ChannelSpec::UPlus { .. } => "u_plus",
            ChannelSpec::WhEta { .. } => "wh_eta",
        }
    }

    /// Hilbert-space dimension the channel acts on.
    pub fn dim(&self) -> usize {
        match *self {
            ChannelSpec::SoLs { d }
            | ChannelSpec::NoisySoLs { d, .. }
            | ChannelSpec::UPlus { d }
            | ChannelSpec::WhEta { d, .. } => d,
            ChannelSpec::SpinJLs { j } => (2.0 * j).round() as usize + 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check_d = |d: usize| {
            if d < 2 {
                Err(Error::InvalidSpec {
                    reason: format!("dimension must be >= 2, got {d}"),
                })
            } else {
                Ok(())
            }
        };
        match *self {
            ChannelSpec::SoLs { d } | ChannelSpec::UPlus { d } => check_d(d),
            ChannelSpec::NoisySoLs { d, x } => {
                check_d(d)?;
                if !(0.0..=1.0).contains(&x) || !x.is_finite() {
                    return Err(Error::InvalidSpec {
                        reason: format!("noise x must lie in [0,1], got {x}"),
                    });
                }
                Ok(())
            }
            ChannelSpec::WhEta { d, eta } => {
                check_d(d)?;
                if !(-1.0..=1.0).contains(&eta) || !eta.is_finite() {
                    return Err(Error::InvalidSpec {
                        reason: format!("eta must lie in [-1,1], got {eta}"),
                    });
                }
                Ok(())
            }
            ChannelSpec::SpinJLs { j } => {
                let two_j = 2.0 * j;
                if j <= 0.0 || !j.is_finite() || (two_j - two_j.round()).abs() > 1e-9 {
                    return Err(Error::InvalidSpec {
                        reason: format!("j must be a positive half-integer, got {j}"),
                    });
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KrausLabel {
    /// The sqrt(1-x) identity term of the noisy channel.
    Identity,
    /// 0-based index pair (m, n).
    Pair(usize, usize),
    Axis(char),
    /// 0-based input-row index of a complement operator R_i.
    Row(usize),
}

impl std::fmt::Display for KrausLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KrausLabel::Identity => write!(f, "0"),
            KrausLabel::Pair(m, n) => write!(f, "({},{})", m + 1, n + 1),
            KrausLabel::Axis(a) => write!(f, "{a}"),
            KrausLabel::Row(i) => write!(f, "R{}", i + 1),
        }
    }
}

/// Ordered Kraus operators with trace-preservation invariant
/// `sum A^dag A = I` (within 1e-10).
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub operators: Vec<ComplexMatrix>,
    pub labels: Vec<KrausLabel>,
}

impl KrausSet {
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Max-entry norm of `sum A^dag A - I`.
    pub fn completeness_defect(&self) -> f64 {
        if self.operators.is_empty() {
            return f64::INFINITY;
        }
        let din = self.operators[0].cols;
        let sum = self
            .operators
            .iter()
            .fold(ComplexMatrix::zeros(din, din), |acc, a| {
                acc.add(&a.adjoint().matmul(a))
            });
        sum.max_abs_diff(&ComplexMatrix::identity(din))
    }

    /// Evaluate `sum A rho A^dag`.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let dout = self.operators[0].rows;
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(dout, dout), |acc, a| {
                acc.add(&a.matmul(rho).matmul(&a.adjoint()))
            })
    }
}

/// Kraus representation of a channel spec.
///
/// For `noisy_so_ls` this is the symmetrized double-index convention:
/// `A_0 = sqrt(1-x) I` plus `A_mn = sqrt(x/(2(d-1))) J_mn` over all ordered
/// pairs m != n, giving 1 + d(d-1) operators. The complement module relies on
/// this ordering.
pub fn kraus_of(spec: &ChannelSpec) -> Result<KrausSet> {
    spec.validate()?;
    match *spec {
        ChannelSpec::SoLs { d } => {
            let g = build_so_generators(d)?;
            let w = 1.0 / ((d - 1) as f64).sqrt();
            Ok(KrausSet {
                operators: g.operators.iter().map(|j| j.scale_re(w)).collect(),
                labels: g
                    .labels
                    .iter()
                    .map(|l| match l {
                        crate::algebra::GeneratorLabel::Pair(m, n) => KrausLabel::Pair(*m, *n),
                        crate::algebra::GeneratorLabel::Axis(a) => KrausLabel::Axis(*a),
                    })
                    .collect(),
            })
        }
        ChannelSpec::NoisySoLs { d, x } => {
            let mut operators = vec![ComplexMatrix::identity(d).scale_re((1.0 - x).sqrt())];
            let mut labels = vec![KrausLabel::Identity];
            let w = (x / (2.0 * (d - 1) as f64)).sqrt();
            for m in 0..d {
                for n in 0..d {
                    if m == n {
                        continue;
                    }
                    operators.push(rotation_generator(d, m, n).scale_re(w));
                    labels.push(KrausLabel::Pair(m, n));
                }
            }
            Ok(KrausSet { operators, labels })
        }
        ChannelSpec::SpinJLs { j } => {
            let g = build_spin_generators(j)?;
            let w = 1.0 / (j * (j + 1.0)).sqrt();
            Ok(KrausSet {
                operators: g.operators.iter().map(|m| m.scale_re(w)).collect(),
                labels: vec![
                    KrausLabel::Axis('x'),
                    KrausLabel::Axis('y'),
                    KrausLabel::Axis('z'),
                ],
            })
        }
        ChannelSpec::UPlus { d } => {
            // Phi+ = 1/(2(d+1)) sum over all ordered (m,n); with unordered
            // enumeration the off-diagonal K_mn pick up weight sqrt(1/(d+1))
            // and the diagonal K_mm weight sqrt(1/(2(d+1))).
            let g = build_u_completion(d)?;
            let mut operators = Vec::with_capacity(g.len());
            let mut labels = Vec::with_capacity(g.len());
            for (op, label) in g.operators.iter().zip(&g.labels) {
                let crate::algebra::GeneratorLabel::Pair(m, n) = *label else {
                    unreachable!()
                };
                let w = if m == n {
                    (1.0 / (2.0 * (d + 1) as f64)).sqrt()
                } else {
                    (1.0 / (d + 1) as f64).sqrt()
                };
                operators.push(op.scale_re(w));
                labels.push(KrausLabel::Pair(m, n));
            }
            Ok(KrausSet { operators, labels })
        }
        ChannelSpec::WhEta { d, eta } => {
            let minus = kraus_of(&ChannelSpec::SoLs { d })?;
            let plus = kraus_of(&ChannelSpec::UPlus { d })?;
            let wm = ((1.0 - eta) / 2.0).sqrt();
            let wp = ((1.0 + eta) / 2.0).sqrt();
            let mut operators: Vec<ComplexMatrix> =
                minus.operators.iter().map(|a| a.scale_re(wm)).collect();
            operators.extend(plus.operators.iter().map(|a| a.scale_re(wp)));
            let mut labels = minus.labels;
            labels.extend(plus.labels);
            Ok(KrausSet { operators, labels })
        }
    }
}

/// Closed-form channel application.
pub fn apply(spec: &ChannelSpec, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    spec.validate()?;
    let d = spec.dim();
    if rho.rows != d || rho.cols != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: rho.rows,
        });
    }
    let wh_minus = |rho: &ComplexMatrix| {
        let t = rho.trace();
        ComplexMatrix::identity(d)
            .scale(t)
            .sub(&rho.transpose())
            .scale_re(1.0 / (d - 1) as f64)
    };
    let wh_plus = |rho: &ComplexMatrix| {
        let t = rho.trace();
        ComplexMatrix::identity(d)
            .scale(t)
            .add(&rho.transpose())
            .scale_re(1.0 / (d + 1) as f64)
    };
    Ok(match *spec {
        ChannelSpec::SoLs { .. } => wh_minus(rho),
        ChannelSpec::NoisySoLs { x, .. } => rho.scale_re(1.0 - x).add(&wh_minus(rho).scale_re(x)),
        ChannelSpec::UPlus { .. } => wh_plus(rho),
        ChannelSpec::WhEta { eta, .. } => wh_minus(rho)
            .scale_re((1.0 - eta) / 2.0)
            .add(&wh_plus(rho).scale_re((1.0 + eta) / 2.0)),
        ChannelSpec::SpinJLs { j } => {
            let g = build_spin_generators(j)?;
            let sum = g
                .operators
                .iter()
                .fold(ComplexMatrix::zeros(d, d), |acc, jop| {
                    acc.add(&jop.matmul(rho).matmul(&jop.adjoint()))
                });
            sum.scale_re(1.0 / (j * (j + 1.0)))
        }
    })
}

/// Kraus-sum evaluation; the oracle route against [`apply`].
pub fn apply_kraus(spec: &ChannelSpec, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = spec.dim();
    if rho.rows != d || rho.cols != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: rho.rows,
        });
    }
    Ok(kraus_of(spec)?.apply(rho))
}

/// Choi matrix `(id (x) Phi)` applied to the unnormalized maximally entangled
/// state `sum_{ij} |i,i><j,j|`; a d^2 x d^2 matrix of trace d.
pub fn choi_matrix(spec: &ChannelSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let d = spec.dim();
    let mut choi = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let block = apply(spec, &ComplexMatrix::basis(d, i, j))?;
            for k in 0..d {
                for l in 0..d {
                    choi.set(i * d + k, j * d + l, block.get(k, l));
                }
            }
        }
    }
    Ok(choi)
}

/// Randomized covariance check.
///
/// For the transpose-covariant families (`so_ls`, `u_plus`, `wh_eta`) the
/// identity is `Phi(U rho U^dag) = U* Phi(rho) U^T` for Haar-random U(d).
/// For `noisy_so_ls` the group shrinks to real orthogonal U with
/// `Phi(U rho U^dag) = U Phi(rho) U^dag`. For `spin_j_ls` the rotations
/// `exp(i theta n.J)` commute with the channel action in the same conjugated
/// sense.
pub fn check_covariance(spec: &ChannelSpec, trials: usize, seed: u64) -> Result<bool> {
    spec.validate()?;
    let d = spec.dim();
    let mut rng = sampling::rng_from_seed(seed);
    for _ in 0..trials.max(1) {
        let rho = sampling::random_density(d, &mut rng);
        let defect = match *spec {
            ChannelSpec::SoLs { .. } | ChannelSpec::UPlus { .. } | ChannelSpec::WhEta { .. } => {
                let u = sampling::random_unitary(d, &mut rng);
                let lhs = apply(spec, &u.matmul(&rho).matmul(&u.adjoint()))?;
                let rhs = u.conj().matmul(&apply(spec, &rho)?).matmul(&u.transpose());
                lhs.max_abs_diff(&rhs)
            }
            ChannelSpec::NoisySoLs { .. } => {
                let o = sampling::random_orthogonal(d, &mut rng);
                let lhs = apply(spec, &o.matmul(&rho).matmul(&o.adjoint()))?;
                let rhs = o.matmul(&apply(spec, &rho)?).matmul(&o.adjoint());
                lhs.max_abs_diff(&rhs)
            }
            ChannelSpec::SpinJLs { j } => {
                let g = build_spin_generators(j)?;
                let (a, b, c): (f64, f64, f64) =
                    (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let h = g.operators[0]
                    .scale_re(a)
                    .add(&g.operators[1].scale_re(b))
                    .add(&g.operators[2].scale_re(c));
                let u = crate::matrix::hermitian_exp_i(&h, 1.0)?;
                let lhs = apply(spec, &u.matmul(&rho).matmul(&u.adjoint()))?;
                let rhs = u.matmul(&apply(spec, &rho)?).matmul(&u.adjoint());
                lhs.max_abs_diff(&rhs)
            }
        };
        if defect > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{hermitian_eigenvalues_raw, C64};

    fn max_mixed(d: usize) -> ComplexMatrix {
        ComplexMatrix::identity(d).scale_re(1.0 / d as f64)
    }

    #[test]
    fn spec_validation() {
        assert!(ChannelSpec::NoisySoLs { d: 3, x: 0.5 }.validate().is_ok());
        assert!(ChannelSpec::NoisySoLs { d: 3, x: 1.5 }.validate().is_err());
        assert!(ChannelSpec::NoisySoLs { d: 1, x: 0.5 }.validate().is_err());
        assert!(ChannelSpec::WhEta { d: 3, eta: -2.0 }.validate().is_err());
        assert!(ChannelSpec::SpinJLs { j: 0.75 }.validate().is_err());
        assert!(ChannelSpec::SpinJLs { j: 1.5 }.validate().is_ok());
        assert_eq!(ChannelSpec::SpinJLs { j: 1.5 }.dim(), 4);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = ChannelSpec::NoisySoLs { d: 3, x: 0.25 };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"family":"noisy_so_ls","d":3,"x":0.25}"#);
        let back: ChannelSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(spec, back);
    }

    #[test]
    fn noisy_kraus_counts_and_weights() {
        // x = 0: identity dominates, J terms carry zero weight
        let k = kraus_of(&ChannelSpec::NoisySoLs { d: 3, x: 0.0 }).unwrap();
        assert_eq!(k.len(), 1 + 3 * 2);
        assert!(k.operators[0].max_abs_diff(&ComplexMatrix::identity(3)) == 0.0);
        assert!(k.operators[1..].iter().all(|a| a.max_abs() == 0.0));
        assert!(k.completeness_defect() < 1e-12);

        // x = 1: six operators of weight 1/2 each (ordered pairs)
        let k = kraus_of(&ChannelSpec::NoisySoLs { d: 3, x: 1.0 }).unwrap();
        let nonzero: Vec<_> = k.operators.iter().filter(|a| a.max_abs() > 0.0).collect();
        assert_eq!(nonzero.len(), 6);
        for a in nonzero {
            assert!((a.max_abs() - 0.5).abs() < 1e-15);
        }
        assert!(k.completeness_defect() < 1e-12);

        // pure so_ls at d=4: 6 operators J_mn/sqrt(3)
        let k = kraus_of(&ChannelSpec::SoLs { d: 4 }).unwrap();
        assert_eq!(k.len(), 6);
        let w = 1.0 / 3f64.sqrt();
        assert!(k.operators.iter().all(|a| (a.max_abs() - w).abs() < 1e-15));
    }

    #[test]
    fn kraus_completeness_all_families() {
        let specs = [
            ChannelSpec::SoLs { d: 5 },
            ChannelSpec::NoisySoLs { d: 4, x: 0.3 },
            ChannelSpec::SpinJLs { j: 1.5 },
            ChannelSpec::UPlus { d: 4 },
            ChannelSpec::WhEta { d: 3, eta: 0.4 },
        ];
        for spec in &specs {
            assert!(
                kraus_of(spec).unwrap().completeness_defect() < 1e-12,
                "{}",
                spec.family_name()
            );
        }
    }

    #[test]
    fn closed_form_examples() {
        // unitality for every x
        for x in [0.0, 0.3, 1.0] {
            let spec = ChannelSpec::NoisySoLs { d: 4, x };
            let out = apply(&spec, &max_mixed(4)).unwrap();
            assert_eq!(out.max_abs_diff(&max_mixed(4)), 0.0);
        }

        // Phi_1(|1><1|) = diag(0, 1/2, 1/2) at d=3
        let out = apply(
            &ChannelSpec::NoisySoLs { d: 3, x: 1.0 },
            &ComplexMatrix::basis(3, 0, 0),
        )
        .unwrap();
        let expected = ComplexMatrix::diagonal(&[
            C64::new(0.0, 0.0),
            C64::new(0.5, 0.0),
            C64::new(0.5, 0.0),
        ]);
        assert!(out.max_abs_diff(&expected) < 1e-15);

        // Phi+(|1><1|) = diag(1/2, 1/4, 1/4) at d=3
        let out = apply(&ChannelSpec::UPlus { d: 3 }, &ComplexMatrix::basis(3, 0, 0)).unwrap();
        let expected = ComplexMatrix::diagonal(&[
            C64::new(0.5, 0.0),
            C64::new(0.25, 0.0),
            C64::new(0.25, 0.0),
        ]);
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn kraus_and_closed_form_agree() {
        let mut rng = crate::sampling::rng_from_seed(21);
        let specs = [
            ChannelSpec::SoLs { d: 3 },
            ChannelSpec::SoLs { d: 6 },
            ChannelSpec::NoisySoLs { d: 2, x: 0.7 },
            ChannelSpec::NoisySoLs { d: 5, x: 0.25 },
            ChannelSpec::UPlus { d: 3 },
            ChannelSpec::WhEta { d: 4, eta: -0.5 },
            ChannelSpec::SpinJLs { j: 2.0 },
        ];
        for spec in &specs {
            let d = spec.dim();
            for _ in 0..20 {
                let rho = crate::sampling::random_density(d, &mut rng);
                let a = apply(spec, &rho).unwrap();
                let b = apply_kraus(spec, &rho).unwrap();
                assert!(
                    a.max_abs_diff(&b) < 1e-12,
                    "{} d={d}",
                    spec.family_name()
                );
                // trace preserved, hermiticity preserved
                assert!((a.trace().re - 1.0).abs() < 1e-12);
                assert!(a.hermiticity_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn output_positivity_on_pure_inputs() {
        let mut rng = crate::sampling::rng_from_seed(33);
        let spec = ChannelSpec::NoisySoLs { d: 4, x: 0.6 };
        for _ in 0..100 {
            let psi = crate::sampling::random_pure_state(4, &mut rng);
            let out = apply(&spec, &crate::sampling::pure_density(&psi)).unwrap();
            let evs = hermitian_eigenvalues_raw(&out).unwrap();
            assert!(evs.iter().all(|&v| v >= -1e-10));
        }
    }

    #[test]
    fn spin1_channel_is_unital_and_trace_preserving() {
        let spec = ChannelSpec::SpinJLs { j: 1.0 };
        let out = apply(&spec, &max_mixed(3)).unwrap();
        assert!(out.max_abs_diff(&max_mixed(3)) < 1e-15);
    }

    #[test]
    fn wh_eta_is_convex_combination() {
        let mut rng = crate::sampling::rng_from_seed(8);
        for eta in [-1.0, -0.3, 0.0, 0.8, 1.0] {
            let d = 4;
            let rho = crate::sampling::random_density(d, &mut rng);
            let lhs = apply(&ChannelSpec::WhEta { d, eta }, &rho).unwrap();
            let rhs = apply(&ChannelSpec::SoLs { d }, &rho)
                .unwrap()
                .scale_re((1.0 - eta) / 2.0)
                .add(
                    &apply(&ChannelSpec::UPlus { d }, &rho)
                        .unwrap()
                        .scale_re((1.0 + eta) / 2.0),
                );
            assert!(lhs.max_abs_diff(&rhs) < 1e-15);

            // observed closed form: [(d-eta) tr rho I + (eta d - 1) rho^T]/(d^2-1)
            let dd = d as f64;
            let direct = ComplexMatrix::identity(d)
                .scale(rho.trace().scale(dd - eta))
                .add(&rho.transpose().scale_re(eta * dd - 1.0))
                .scale_re(1.0 / (dd * dd - 1.0));
            assert!(lhs.max_abs_diff(&direct) < 1e-14, "eta={eta}");
        }
    }

    #[test]
    fn wh_eta_at_minus_one_is_so_ls() {
        let mut rng = crate::sampling::rng_from_seed(14);
        let rho = crate::sampling::random_density(3, &mut rng);
        let lhs = apply(&ChannelSpec::WhEta { d: 3, eta: -1.0 }, &rho).unwrap();
        let rhs = apply(&ChannelSpec::SoLs { d: 3 }, &rho).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
    }

    #[test]
    fn choi_properties() {
        // x = 0: rank-1 Choi of trace d
        let choi = choi_matrix(&ChannelSpec::NoisySoLs { d: 3, x: 0.0 }).unwrap();
        assert!((choi.trace().re - 3.0).abs() < 1e-12);
        let evs = hermitian_eigenvalues_raw(&choi).unwrap();
        assert!((evs[0] - 3.0).abs() < 1e-10);
        assert!(evs[1].abs() < 1e-10);

        for spec in [
            ChannelSpec::SoLs { d: 3 },
            ChannelSpec::NoisySoLs { d: 4, x: 0.35 },
            ChannelSpec::UPlus { d: 3 },
        ] {
            let d = spec.dim();
            let choi = choi_matrix(&spec).unwrap();
            assert!((choi.trace().re - d as f64).abs() < 1e-10);
            // PSD (complete positivity)
            let evs = hermitian_eigenvalues_raw(&choi).unwrap();
            assert!(evs.iter().all(|&v| v >= -1e-10), "{}", spec.family_name());
            // partial trace over the output factor is I (trace preservation)
            let pt = choi.partial_trace_second(d);
            assert!(pt.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-12);
        }
    }

    #[test]
    fn choi_partial_transpose_facts() {
        // Phi+ has a PPT (indeed separable) Choi state; the antisymmetric
        // so_ls point does not: its partial transpose has eigenvalue -1.
        let plus = choi_matrix(&ChannelSpec::UPlus { d: 3 }).unwrap();
        let evs = hermitian_eigenvalues_raw(&plus.partial_transpose_second(3)).unwrap();
        assert!(evs.iter().all(|&v| v >= -1e-10));

        let minus = choi_matrix(&ChannelSpec::SoLs { d: 3 }).unwrap();
        let evs = hermitian_eigenvalues_raw(&minus.partial_transpose_second(3)).unwrap();
        let min = evs.last().copied().unwrap();
        assert!((min - (-1.0)).abs() < 1e-10, "min PT eigenvalue {min}");
    }

    #[test]
    fn covariance_checks() {
        assert!(check_covariance(&ChannelSpec::SoLs { d: 4 }, 10, 17).unwrap());
        assert!(check_covariance(&ChannelSpec::NoisySoLs { d: 4, x: 0.5 }, 10, 18).unwrap());
        assert!(check_covariance(&ChannelSpec::UPlus { d: 3 }, 10, 19).unwrap());
        assert!(check_covariance(&ChannelSpec::SpinJLs { j: 1.5 }, 5, 20).unwrap());
    }

    #[test]
    fn noisy_channel_loses_full_unitary_covariance() {
        // a complex (non-real) unitary breaks both the U(d)-transpose form
        // and plain conjugation covariance of the noisy channel
        let spec = ChannelSpec::NoisySoLs { d: 3, x: 0.5 };
        let mut u = ComplexMatrix::identity(3);
        u.set(1, 1, C64::new(0.0, 1.0)); // diag(1, i, 1)
        let mut rng = crate::sampling::rng_from_seed(40);
        let rho = crate::sampling::random_density(3, &mut rng);
        let lhs = apply(&spec, &u.matmul(&rho).matmul(&u.adjoint())).unwrap();
        let transpose_form = u
            .conj()
            .matmul(&apply(&spec, &rho).unwrap())
            .matmul(&u.transpose());
        let conjugation_form = u.matmul(&apply(&spec, &rho).unwrap()).matmul(&u.adjoint());
        assert!(lhs.max_abs_diff(&transpose_form) > 1e-3);
        assert!(lhs.max_abs_diff(&conjugation_form) > 1e-3);
    }
}
