//! Generator families: the antisymmetric rotation generators J_mn spanning
//! so(d), the symmetric completion K_mn (together they span u(d)), and the
//! spin-j angular-momentum triple.
//!
//! Ordering is frozen: pair labels are lexicographic on (m, n). Downstream
//! modules (complement rows, mixed-unitary rounds) rely on this.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// J_mn = -i(|m><n| - |n><m|), m < n: d(d-1)/2 Hermitian generators.
    SoAntisym,
    /// K_mn = |m><n| + |n><m| (m < n) and K_mm = 2|m><m|: d(d+1)/2 operators.
    USym,
    /// Spin-j triple {J_x, J_y, J_z} in dimension 2j+1.
    Spin,
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::SoAntisym => "so_antisym",
            GeneratorKind::USym => "u_sym",
            GeneratorKind::Spin => "spin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorLabel {
    /// 0-based index pair (m, n).
    Pair(usize, usize),
    Axis(char),
}

impl std::fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            // displays are 1-based to match conventional tables
            GeneratorLabel::Pair(m, n) => write!(f, "({},{})", m + 1, n + 1),
            GeneratorLabel::Axis(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub kind: GeneratorKind,
    /// Matrix dimension the generators act on.
    pub dim: usize,
    pub operators: Vec<ComplexMatrix>,
    pub labels: Vec<GeneratorLabel>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Find an operator by its 0-based pair label.
    pub fn by_pair(&self, m: usize, n: usize) -> Option<&ComplexMatrix> {
        self.labels
            .iter()
            .position(|&l| l == GeneratorLabel::Pair(m, n))
            .map(|k| &self.operators[k])
    }

    /// Max-entry defect of the kind's completeness identity:
    /// - so(d): sum J^dag J = (d-1) I over m < n,
    /// - u(d) completion: (1/2) sum K^dag K over all ordered (m,n) = (d+1) I
    ///   (off-diagonal labels counted twice since K_mn = K_nm),
    /// - spin: J_x^2 + J_y^2 + J_z^2 = j(j+1) I.
    pub fn completeness_defect(&self) -> f64 {
        let d = self.dim;
        let mut sum = ComplexMatrix::zeros(d, d);
        for (op, label) in self.operators.iter().zip(&self.labels) {
            let sq = op.adjoint().matmul(op);
            let weight = match (self.kind, label) {
                (GeneratorKind::USym, GeneratorLabel::Pair(m, n)) if m != n => 1.0,
                (GeneratorKind::USym, _) => 0.5,
                _ => 1.0,
            };
            sum = sum.add(&sq.scale_re(weight));
        }
        let target = match self.kind {
            GeneratorKind::SoAntisym => (d - 1) as f64,
            GeneratorKind::USym => (d + 1) as f64,
            GeneratorKind::Spin => {
                let j = (d as f64 - 1.0) / 2.0;
                j * (j + 1.0)
            }
        };
        sum.max_abs_diff(&ComplexMatrix::identity(d).scale_re(target))
    }
}

/// Rotation generator J_mn = -i(|m><n| - |n><m|), 0-based indices.
pub fn rotation_generator(d: usize, m: usize, n: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(d, d);
    out.set(m, n, C64::new(0.0, -1.0));
    out.set(n, m, C64::new(0.0, 1.0));
    out
}

/// The d(d-1)/2 generators J_mn with m < n, lexicographic.
pub fn build_so_generators(d: usize) -> Result<GeneratorSet> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d });
    }
    let mut operators = Vec::with_capacity(d * (d - 1) / 2);
    let mut labels = Vec::with_capacity(d * (d - 1) / 2);
    for m in 0..d {
        for n in (m + 1)..d {
            operators.push(rotation_generator(d, m, n));
            labels.push(GeneratorLabel::Pair(m, n));
        }
    }
    Ok(GeneratorSet {
        kind: GeneratorKind::SoAntisym,
        dim: d,
        operators,
        labels,
    })
}

/// The d(d+1)/2 symmetric operators K_mn (m <= n), lexicographic; K_mm is
/// 2|m><m|.
pub fn build_u_completion(d: usize) -> Result<GeneratorSet> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d });
    }
    let mut operators = Vec::with_capacity(d * (d + 1) / 2);
    let mut labels = Vec::with_capacity(d * (d + 1) / 2);
    for m in 0..d {
        for n in m..d {
            let mut op = ComplexMatrix::zeros(d, d);
            if m == n {
                op.set(m, m, C64::new(2.0, 0.0));
            } else {
                op.set(m, n, C64::new(1.0, 0.0));
                op.set(n, m, C64::new(1.0, 0.0));
            }
            operators.push(op);
            labels.push(GeneratorLabel::Pair(m, n));
        }
    }
    Ok(GeneratorSet {
        kind: GeneratorKind::USym,
        dim: d,
        operators,
        labels,
    })
}

/// Spin-j triple {J_x, J_y, J_z} in the ladder basis ordered m = j down to
/// m = -j, so J_z is diagonal with descending entries.
pub fn build_spin_generators(j: f64) -> Result<GeneratorSet> {
    let two_j = 2.0 * j;
    if j <= 0.0 || (two_j - two_j.round()).abs() > 1e-9 {
        return Err(Error::InvalidSpin { j });
    }
    let dim = (two_j.round() as usize) + 1;
    let m_of = |k: usize| j - k as f64; // basis index k holds |j, m=j-k>

    let mut jz = ComplexMatrix::zeros(dim, dim);
    for k in 0..dim {
        jz.set(k, k, C64::new(m_of(k), 0.0));
    }
    // J_+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; raising moves k -> k-1
    let mut jplus = ComplexMatrix::zeros(dim, dim);
    for k in 1..dim {
        let m = m_of(k);
        let amp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        jplus.set(k - 1, k, C64::new(amp, 0.0));
    }
    let jminus = jplus.adjoint();
    let jx = jplus.add(&jminus).scale_re(0.5);
    let jy = jplus.sub(&jminus).scale(C64::new(0.0, -0.5));

    Ok(GeneratorSet {
        kind: GeneratorKind::Spin,
        dim,
        operators: vec![jx, jy, jz],
        labels: vec![
            GeneratorLabel::Axis('x'),
            GeneratorLabel::Axis('y'),
            GeneratorLabel::Axis('z'),
        ],
    })
}

/// Verify every commutator of an so(d) set against the structure-constant
/// expansion
/// `[J_kl, J_mn] = i (d_km J_ln + d_ln J_km - d_lm J_kn - d_kn J_lm)`
/// within 1e-10 max-entry norm.
pub fn check_commutators(g: &GeneratorSet) -> Result<bool> {
    if g.kind != GeneratorKind::SoAntisym {
        return Err(Error::WrongKind {
            expected: GeneratorKind::SoAntisym.name(),
            got: g.kind.name(),
        });
    }
    let d = g.dim;
    // signed lookup: J_nm = -J_mn, J_mm = 0
    let gen = |m: usize, n: usize| -> ComplexMatrix {
        use std::cmp::Ordering;
        match m.cmp(&n) {
            Ordering::Less => g.by_pair(m, n).expect("label present").clone(),
            Ordering::Greater => g.by_pair(n, m).expect("label present").scale_re(-1.0),
            Ordering::Equal => ComplexMatrix::zeros(d, d),
        }
    };
    for (a, &la) in g.operators.iter().zip(&g.labels) {
        let GeneratorLabel::Pair(k, l) = la else { unreachable!() };
        for (b, &lb) in g.operators.iter().zip(&g.labels) {
            let GeneratorLabel::Pair(m, n) = lb else { unreachable!() };
            let comm = a.matmul(b).sub(&b.matmul(a));
            let mut expected = ComplexMatrix::zeros(d, d);
            if k == m {
                expected = expected.add(&gen(l, n));
            }
            if l == n {
                expected = expected.add(&gen(k, m));
            }
            if l == m {
                expected = expected.sub(&gen(k, n));
            }
            if k == n {
                expected = expected.sub(&gen(l, m));
            }
            let expected = expected.scale(C64::new(0.0, 1.0));
            if comm.max_abs_diff(&expected) > 1e-10 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
