//! The `verify` subcommand: every module's invariants run over the
//! configured grid, one PASS/FAIL/SKIP line per check and scope.
//!
//! Matrix-identity checks compare against the `algebra` tolerance, capacity
//! and entropy comparisons against the `capacity` tolerance. Non-positive
//! tolerances poison every check, by design: a zero tolerance is a
//! misconfiguration, not a stricter test.

use lswh::algebra::{build_so_generators, build_spin_generators, check_commutators, GeneratorLabel};
use lswh::capacity::{
    classical_capacity_one_shot, classical_mutual_information_check, coherent_information_diagonal,
    critical_objective, critical_x, entanglement_assisted_capacity, min_output_entropy,
};
use lswh::channel::{apply, apply_kraus, check_covariance, choi_matrix, kraus_of, ChannelSpec};
use lswh::complement::{
    complement_apply, complement_apply_kraus, complement_spectrum_maximally_mixed,
};
use lswh::matrix::{
    entropy_of_eigenvalues, hermitian_eigenvalues, hermitian_eigenvalues_raw, ComplexMatrix, C64,
};
use lswh::mixed_unitary::{extremality_test, noisy_mixed_unitary, one_factorization, unitary_kraus};
use lswh::sampling;
use lswh::spectral::{channel_spectrum, determinant, superoperator_determinant_numeric};
use lswh::Error;

use crate::config::SweepConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
            Status::Skip => write!(f, "SKIP"),
        }
    }
}

pub struct CheckOutcome {
    pub name: &'static str,
    pub scope: String,
    pub status: Status,
    pub detail: String,
}

fn pass(name: &'static str, scope: String, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        scope,
        status: Status::Pass,
        detail,
    }
}

fn fail(name: &'static str, scope: String, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        scope,
        status: Status::Fail,
        detail,
    }
}

fn skip(name: &'static str, scope: String, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        scope,
        status: Status::Skip,
        detail,
    }
}

fn gate(name: &'static str, scope: String, defect: f64, tol: f64) -> CheckOutcome {
    if defect <= tol {
        pass(name, scope, format!("defect {defect:.2e} <= {tol:.1e}"))
    } else {
        fail(name, scope, format!("defect {defect:.2e} > {tol:.1e}"))
    }
}

pub fn run_all(cfg: &SweepConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let tol_a = cfg.tolerances.algebra;
    let tol_c = cfg.tolerances.capacity;
    let xs = cfg.x_grid.values();

    if tol_a <= 0.0 || tol_c <= 0.0 {
        for name in [
            "algebra_completeness",
            "algebra_commutators",
            "algebra_disjoint_products",
            "spin_casimir",
            "channel_routes",
            "channel_unitality",
            "channel_d3_equivalence",
            "wh_eta_convexity",
            "covariance",
            "choi_cp_tp",
            "complement_routes",
            "complement_mixed_spectrum",
            "complement_diagonal",
            "spectral_det_oracle",
            "spectral_product",
            "spectral_parity_set",
            "mixed_unitary",
            "extremality",
            "capacity_oracles",
            "capacity_endpoints",
            "capacity_order",
            "min_output_search",
            "critical_x",
        ] {
            out.push(fail(
                name,
                "-".into(),
                "non-positive tolerance in config".into(),
            ));
        }
        return out;
    }

    // --- algebra ---
    {
        let worst = (2..=16)
            .map(|d| build_so_generators(d).unwrap().completeness_defect())
            .fold(0.0, f64::max);
        out.push(gate("algebra_completeness", "d=2..16".into(), worst, tol_a));
    }
    for &d in &cfg.d_values {
        let g = build_so_generators(d).unwrap();
        let ok = check_commutators(&g).unwrap();
        out.push(if ok {
            pass("algebra_commutators", format!("d={d}"), "all pairs match".into())
        } else {
            fail("algebra_commutators", format!("d={d}"), "structure constants mismatch".into())
        });

        let mut worst = 0.0f64;
        let mut ok = true;
        for (a, &la) in g.operators.iter().zip(&g.labels) {
            let GeneratorLabel::Pair(m, n) = la else { continue };
            for (b, &lb) in g.operators.iter().zip(&g.labels) {
                let GeneratorLabel::Pair(p, q) = lb else { continue };
                let disjoint = m != p && m != q && n != p && n != q;
                let prod = a.matmul(b).max_abs();
                if disjoint {
                    worst = worst.max(prod);
                } else if prod < 0.5 {
                    ok = false;
                }
            }
        }
        out.push(if ok && worst <= tol_a {
            pass(
                "algebra_disjoint_products",
                format!("d={d}"),
                format!("disjoint products vanish ({worst:.2e})"),
            )
        } else {
            fail(
                "algebra_disjoint_products",
                format!("d={d}"),
                format!("worst disjoint product {worst:.2e}"),
            )
        });
    }
    {
        let worst = (1..=8)
            .map(|two_j| {
                build_spin_generators(two_j as f64 / 2.0)
                    .unwrap()
                    .completeness_defect()
            })
            .fold(0.0, f64::max);
        out.push(gate("spin_casimir", "2j=1..8".into(), worst, tol_a));
    }

    // --- channel ---
    for &d in &cfg.d_values {
        let mut rng = sampling::rng_from_seed(cfg.seed);
        let mut worst = 0.0f64;
        for &x in &xs {
            let spec = ChannelSpec::NoisySoLs { d, x };
            for _ in 0..10 {
                let rho = sampling::random_density(d, &mut rng);
                let diff = apply(&spec, &rho)
                    .unwrap()
                    .max_abs_diff(&apply_kraus(&spec, &rho).unwrap());
                worst = worst.max(diff);
            }
        }
        out.push(gate("channel_routes", format!("d={d}"), worst, tol_a));

        let mixed = ComplexMatrix::identity(d).scale_re(1.0 / d as f64);
        let worst = xs
            .iter()
            .map(|&x| {
                apply(&ChannelSpec::NoisySoLs { d, x }, &mixed)
                    .unwrap()
                    .max_abs_diff(&mixed)
            })
            .fold(0.0, f64::max);
        out.push(gate("channel_unitality", format!("d={d}"), worst, tol_a));
    }
    {
        // explicit Cartesian spin-1 route vs the closed form at d=3
        let m = |rows: [[f64; 3]; 3]| {
            let data = rows
                .iter()
                .flat_map(|r| r.iter().map(|&v| C64::new(0.0, -v)))
                .collect();
            ComplexMatrix::new(3, 3, data)
        };
        let trio = [
            m([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]]),
            m([[0.0, 0.0, -1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]),
            m([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
        ];
        let mut rng = sampling::rng_from_seed(cfg.seed ^ 0x5a);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let rho = sampling::random_density(3, &mut rng);
            let spin = trio
                .iter()
                .fold(ComplexMatrix::zeros(3, 3), |acc, j| {
                    acc.add(&j.matmul(&rho).matmul(&j.adjoint()))
                })
                .scale_re(0.5);
            worst = worst.max(spin.max_abs_diff(&apply(&ChannelSpec::SoLs { d: 3 }, &rho).unwrap()));
        }
        out.push(gate("channel_d3_equivalence", "d=3".into(), worst, tol_a));
    }
    for &d in &cfg.d_values {
        let mut rng = sampling::rng_from_seed(cfg.seed ^ 0xe7a);
        let mut worst = 0.0f64;
        for eta in [-1.0, -0.25, 0.5, 1.0] {
            let rho = sampling::random_density(d, &mut rng);
            let lhs = apply(&ChannelSpec::WhEta { d, eta }, &rho).unwrap();
            let rhs = apply(&ChannelSpec::SoLs { d }, &rho)
                .unwrap()
                .scale_re((1.0 - eta) / 2.0)
                .add(
                    &apply(&ChannelSpec::UPlus { d }, &rho)
                        .unwrap()
                        .scale_re((1.0 + eta) / 2.0),
                );
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        out.push(gate("wh_eta_convexity", format!("d={d}"), worst, tol_a));

        let pure_ok = check_covariance(&ChannelSpec::SoLs { d }, 5, cfg.seed).unwrap();
        let noisy_ok =
            check_covariance(&ChannelSpec::NoisySoLs { d, x: 0.5 }, 5, cfg.seed).unwrap();
        out.push(if pure_ok && noisy_ok {
            pass(
                "covariance",
                format!("d={d}"),
                "U(d) transpose form and O(d) conjugation hold".into(),
            )
        } else {
            fail(
                "covariance",
                format!("d={d}"),
                format!("pure={pure_ok} noisy={noisy_ok}"),
            )
        });

        let mut worst_neg = 0.0f64;
        let mut worst_tp = 0.0f64;
        for &x in &xs {
            let choi = choi_matrix(&ChannelSpec::NoisySoLs { d, x }).unwrap();
            let evs = hermitian_eigenvalues_raw(&choi).unwrap();
            worst_neg = worst_neg.max(-evs.last().copied().unwrap_or(0.0));
            worst_tp = worst_tp.max(
                choi.partial_trace_second(d)
                    .max_abs_diff(&ComplexMatrix::identity(d)),
            );
        }
        out.push(gate(
            "choi_cp_tp",
            format!("d={d}"),
            worst_neg.max(worst_tp),
            tol_a,
        ));
    }

    // --- complement ---
    for &d in &cfg.d_values {
        let mut rng = sampling::rng_from_seed(cfg.seed ^ 0xc0);
        let mut worst_route = 0.0f64;
        let mut worst_trace = 0.0f64;
        let mut worst_herm = 0.0f64;
        let mut worst_spec = 0.0f64;
        let mut worst_diag = 0.0f64;
        for &x in &xs {
            let spec = ChannelSpec::NoisySoLs { d, x };
            for _ in 0..5 {
                let rho = sampling::random_density(d, &mut rng);
                let block = complement_apply(&spec, &rho).unwrap().matrix;
                let kraus = complement_apply_kraus(&spec, &rho).unwrap();
                worst_route = worst_route.max(block.max_abs_diff(&kraus));
                worst_trace = worst_trace.max((block.trace().re - 1.0).abs());
                worst_herm = worst_herm.max(block.hermiticity_defect());
            }
            let mixed = ComplexMatrix::identity(d).scale_re(1.0 / d as f64);
            let numeric =
                hermitian_eigenvalues(&complement_apply(&spec, &mixed).unwrap().matrix).unwrap();
            let closed = complement_spectrum_maximally_mixed(&spec).unwrap();
            worst_spec = worst_spec.max(closed.max_multiset_diff(&numeric));

            let r = sampling::random_probability_vector(d, &mut rng);
            let rho =
                ComplexMatrix::diagonal(&r.iter().map(|&v| C64::new(v, 0.0)).collect::<Vec<_>>());
            worst_diag =
                worst_diag.max(complement_apply(&spec, &rho).unwrap().off_block_max());
        }
        out.push(gate(
            "complement_routes",
            format!("d={d}"),
            worst_route.max(worst_trace).max(worst_herm),
            tol_a,
        ));
        out.push(gate(
            "complement_mixed_spectrum",
            format!("d={d}"),
            worst_spec,
            tol_a,
        ));
        out.push(gate(
            "complement_diagonal",
            format!("d={d}"),
            worst_diag,
            tol_a,
        ));
    }

    // --- spectral ---
    for &d in &cfg.d_values {
        if d > 8 {
            out.push(skip(
                "spectral_det_oracle",
                format!("d={d}"),
                "numerical determinant oracle capped at d=8".into(),
            ));
        } else {
            let mut worst = 0.0f64;
            for &x in &xs {
                let spec = ChannelSpec::NoisySoLs { d, x };
                let closed = determinant(&spec).unwrap().determinant;
                let numeric = superoperator_determinant_numeric(&spec).unwrap();
                let scale = closed.abs().max(numeric.abs());
                let err = if scale > 1e-12 {
                    (closed - numeric).abs() / scale
                } else {
                    (closed - numeric).abs()
                };
                worst = worst.max(err);
            }
            out.push(gate("spectral_det_oracle", format!("d={d}"), worst, tol_a));
        }

        let mut worst = 0.0f64;
        for &x in &xs {
            let spec = ChannelSpec::NoisySoLs { d, x };
            let prod = channel_spectrum(&spec).unwrap().eigenvalue_product();
            let det = determinant(&spec).unwrap().determinant;
            let scale = det.abs().max(prod.abs());
            let err = if scale > 1e-12 {
                (prod - det).abs() / scale
            } else {
                (prod - det).abs()
            };
            worst = worst.max(err);
        }
        out.push(gate("spectral_product", format!("d={d}"), worst, tol_a));
    }
    {
        let set: Vec<usize> = (3..=12)
            .filter(|&d| ((d + 2) * (d - 1) / 2) % 2 == 1)
            .collect();
        out.push(if set == vec![3, 4, 7, 8, 11, 12] {
            pass(
                "spectral_parity_set",
                "d=3..12".into(),
                format!("{set:?}"),
            )
        } else {
            fail(
                "spectral_parity_set",
                "d=3..12".into(),
                format!("got {set:?}"),
            )
        });
    }

    // --- mixed unitary ---
    for &d in &cfg.d_values {
        if d % 2 == 1 {
            out.push(skip(
                "mixed_unitary",
                format!("d={d}"),
                "odd dimension: the pair partitions cannot be found".into(),
            ));
            continue;
        }
        let fact = one_factorization(d).unwrap();
        if !fact.is_valid() {
            out.push(fail(
                "mixed_unitary",
                format!("d={d}"),
                "invalid 1-factorization".into(),
            ));
            continue;
        }
        let dec = unitary_kraus(d).unwrap();
        let mut worst = dec.max_unitarity_defect();
        let mut rng = sampling::rng_from_seed(cfg.seed ^ 0xdec);
        for _ in 0..5 {
            let rho = sampling::random_density(d, &mut rng);
            worst = worst.max(
                dec.apply(&rho)
                    .max_abs_diff(&apply(&ChannelSpec::SoLs { d }, &rho).unwrap()),
            );
        }
        let noisy = noisy_mixed_unitary(d, 0.3).unwrap();
        let rho = sampling::random_density(d, &mut rng);
        worst = worst.max(
            noisy
                .apply(&rho)
                .max_abs_diff(&apply(&ChannelSpec::NoisySoLs { d, x: 0.3 }, &rho).unwrap()),
        );
        out.push(gate("mixed_unitary", format!("d={d}"), worst, tol_a));
    }
    {
        let e3 = extremality_test(&kraus_of(&ChannelSpec::SoLs { d: 3 }).unwrap()).unwrap();
        let e4 = extremality_test(&kraus_of(&ChannelSpec::SoLs { d: 4 }).unwrap()).unwrap();
        out.push(if e3.extremal && !e4.extremal {
            pass(
                "extremality",
                "d=3,4".into(),
                format!("ranks {}/{} and {}/{}", e3.rank, e3.max_rank, e4.rank, e4.max_rank),
            )
        } else {
            fail(
                "extremality",
                "d=3,4".into(),
                format!("extremal d3={} d4={}", e3.extremal, e4.extremal),
            )
        });
    }

    // --- capacity ---
    for &d in &cfg.d_values {
        let mut rng = sampling::rng_from_seed(cfg.seed ^ 0xca);
        let mut worst = 0.0f64;
        for &x in &xs {
            let spec = ChannelSpec::NoisySoLs { d, x };
            let mixed = ComplexMatrix::identity(d).scale_re(1.0 / d as f64);
            let env = complement_apply(&spec, &mixed).unwrap().matrix;
            let s_env = entropy_of_eigenvalues(&hermitian_eigenvalues_raw(&env).unwrap());
            worst = worst.max(
                (2.0 * (d as f64).log2() - s_env - entanglement_assisted_capacity(d, x)).abs(),
            );
            for _ in 0..3 {
                let r = sampling::random_probability_vector(d, &mut rng);
                let rho = ComplexMatrix::diagonal(
                    &r.iter().map(|&v| C64::new(v, 0.0)).collect::<Vec<_>>(),
                );
                let out_state = apply(&spec, &rho).unwrap();
                let env = complement_apply(&spec, &rho).unwrap().matrix;
                let oracle = entropy_of_eigenvalues(&hermitian_eigenvalues_raw(&out_state).unwrap())
                    - entropy_of_eigenvalues(&hermitian_eigenvalues_raw(&env).unwrap());
                worst =
                    worst.max((oracle - coherent_information_diagonal(d, x, &r).unwrap()).abs());
            }
        }
        out.push(gate("capacity_oracles", format!("d={d}"), worst, tol_c));

        let df = d as f64;
        let worst = [
            (classical_capacity_one_shot(d, 0.0) - df.log2()).abs(),
            (classical_capacity_one_shot(d, 1.0) - (df.log2() - (df - 1.0).log2())).abs(),
            (entanglement_assisted_capacity(d, 0.0) - 2.0 * df.log2()).abs(),
            (classical_mutual_information_check(d) - classical_capacity_one_shot(d, 1.0)).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        out.push(gate("capacity_endpoints", format!("d={d}"), worst, tol_c));

        let ordered = xs
            .iter()
            .all(|&x| classical_capacity_one_shot(d, x) <= entanglement_assisted_capacity(d, x) + tol_c);
        out.push(if ordered {
            pass("capacity_order", format!("d={d}"), "C1 <= Cea on the grid".into())
        } else {
            fail("capacity_order", format!("d={d}"), "C1 > Cea somewhere".into())
        });

        let mut rng = sampling::rng_from_seed(cfg.seed ^ 0x3e);
        let mut worst_gap = f64::INFINITY;
        for &x in &xs {
            let spec = ChannelSpec::NoisySoLs { d, x };
            let closed = min_output_entropy(d, x);
            for _ in 0..100 {
                let psi = sampling::random_pure_state(d, &mut rng);
                let out_state = apply(&spec, &sampling::pure_density(&psi)).unwrap();
                let e = entropy_of_eigenvalues(&hermitian_eigenvalues_raw(&out_state).unwrap());
                worst_gap = worst_gap.min(e - closed);
            }
        }
        out.push(if worst_gap >= -tol_c {
            pass(
                "min_output_search",
                format!("d={d}"),
                format!("no state below closed form (gap {worst_gap:.2e})"),
            )
        } else {
            fail(
                "min_output_search",
                format!("d={d}"),
                format!("found entropy {worst_gap:.2e} below closed form"),
            )
        });

        out.push(match critical_x(d) {
            Ok(x0) => {
                let sign_ok = critical_objective(d, (x0 - 0.01).max(0.0)) > 0.0
                    && critical_objective(d, (x0 + 0.01).min(1.0)) < 0.0;
                if sign_ok {
                    pass(
                        "critical_x",
                        format!("d={d}"),
                        format!("x0 = {x0:.9}, signs flip around the root"),
                    )
                } else {
                    fail("critical_x", format!("d={d}"), format!("x0 = {x0:.9}, bad sign structure"))
                }
            }
            Err(Error::NoSignChange { f_lo, f_hi, .. }) => skip(
                "critical_x",
                format!("d={d}"),
                format!("no sign change (f_lo={f_lo:.3e}, f_hi={f_hi:.3e}): objective never goes negative"),
            ),
            Err(e) => fail("critical_x", format!("d={d}"), e.to_string()),
        });
    }

    out
}

/// Print the matrix and return the process exit code (0 all-pass, 1 with the
/// first failure named).
pub fn print_and_code(outcomes: &[CheckOutcome]) -> i32 {
    for o in outcomes {
        println!("{} {:<26} {:<8} {}", o.status, o.name, o.scope, o.detail);
    }
    let passed = outcomes.iter().filter(|o| o.status == Status::Pass).count();
    let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
    let skipped = outcomes.iter().filter(|o| o.status == Status::Skip).count();
    println!("verify: {passed} passed, {failed} failed, {skipped} skipped");
    if let Some(first) = outcomes.iter().find(|o| o.status == Status::Fail) {
        eprintln!(
            "verify failed: {} [{}] {}",
            first.name, first.scope, first.detail
        );
        1
    } else {
        0
    }
}
