//! The plug-in construction `H = Σ A_k ⊗ B_k`.
//!
//! `A_1 … A_n` is a transversal of canonical basis matrices of `R_{m,m}`:
//! monomial matrices of order `n = 2^m` with disjoint supports whose sum is a
//! full `±1` matrix. They satisfy `A_j A_kᵀ + λ_{j,k} A_k A_jᵀ = 0` for some
//! pattern `λ`. If `B_1 … B_n` are `±1` matrices of order `b` with
//! `B_j B_kᵀ − λ_{j,k} B_k B_jᵀ = 0` and `Σ B_k B_kᵀ = n b I`, then `H` is a
//! Hadamard matrix of order `n b`. The `B_k` are taken as `D_k S` where the
//! `D_k` come from the solver and `S` is a Sylvester matrix.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::Sign;
use crate::error::{Error, Result};
use crate::monomat::{
    lambda_of_dense_pair, lambda_of_pair, reflection, swap, sylvester, Convention, DenseSignMatrix,
    MonomialMatrix,
};
use crate::solver::{solve, LambdaPattern, SolveConfig};

/// Default cap on the order `n b` of the assembled matrix.
pub const DEFAULT_MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagChoice {
    I,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OffDiagChoice {
    /// The swap `[[0, 1], [1, 0]]`.
    X,
    /// `Z X = [[0, 1], [-1, 0]]`.
    Y,
}

impl DiagChoice {
    pub fn matrix(self) -> MonomialMatrix {
        match self {
            DiagChoice::I => MonomialMatrix::identity(2),
            DiagChoice::Z => reflection(),
        }
    }
}

impl OffDiagChoice {
    pub fn matrix(self) -> MonomialMatrix {
        match self {
            OffDiagChoice::X => swap(),
            OffDiagChoice::Y => reflection().mul(&swap()).expect("order 2"),
        }
    }
}

/// Chooses, per tensor factor, the diagonal and off-diagonal basis matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecRecord", into = "SpecRecord")]
pub struct TransversalSpec {
    diag: Vec<DiagChoice>,
    offdiag: Vec<OffDiagChoice>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecRecord {
    m: usize,
    diag: Vec<DiagChoice>,
    offdiag: Vec<OffDiagChoice>,
}

impl TryFrom<SpecRecord> for TransversalSpec {
    type Error = Error;

    fn try_from(r: SpecRecord) -> Result<Self> {
        for len in [r.diag.len(), r.offdiag.len()] {
            if len != r.m {
                return Err(Error::LengthMismatch { expected: r.m, found: len });
            }
        }
        TransversalSpec::new(r.diag, r.offdiag)
    }
}

impl From<TransversalSpec> for SpecRecord {
    fn from(s: TransversalSpec) -> Self {
        SpecRecord {
            m: s.m(),
            diag: s.diag,
            offdiag: s.offdiag,
        }
    }
}

impl TransversalSpec {
    pub fn new(diag: Vec<DiagChoice>, offdiag: Vec<OffDiagChoice>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidTransversal("tensor depth m must be positive".into()));
        }
        if diag.len() != offdiag.len() {
            return Err(Error::LengthMismatch {
                expected: diag.len(),
                found: offdiag.len(),
            });
        }
        if diag.len() >= usize::BITS as usize {
            return Err(Error::ResourceCap {
                what: "tensor depth m",
                value: diag.len(),
                cap: usize::BITS as usize - 1,
            });
        }
        Ok(TransversalSpec { diag, offdiag })
    }

    /// All `I` and all `X`.
    pub fn default_for(m: usize) -> Result<Self> {
        Self::new(vec![DiagChoice::I; m], vec![OffDiagChoice::X; m])
    }

    /// Parses choice strings such as `"IZI"` and `"XXY"`.
    pub fn parse(diag: &str, offdiag: &str) -> Result<Self> {
        let diag = diag
            .chars()
            .map(|c| match c {
                'I' => Ok(DiagChoice::I),
                'Z' => Ok(DiagChoice::Z),
                c => Err(Error::Parse(format!("diagonal choice must be I or Z, got {c:?}"))),
            })
            .collect::<Result<_>>()?;
        let offdiag = offdiag
            .chars()
            .map(|c| match c {
                'X' => Ok(OffDiagChoice::X),
                'Y' => Ok(OffDiagChoice::Y),
                c => Err(Error::Parse(format!("off-diagonal choice must be X or Y, got {c:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::new(diag, offdiag)
    }

    pub fn m(&self) -> usize {
        self.diag.len()
    }

    pub fn n(&self) -> usize {
        1 << self.m()
    }

    pub fn diag(&self) -> &[DiagChoice] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[OffDiagChoice] {
        &self.offdiag
    }
}

/// `A_k = ⊗_i (bit_i(k) ? offdiag_i : diag_i)`, with factor 1 read from the
/// most significant bit of `k`.
pub fn transversal(spec: &TransversalSpec) -> Vec<MonomialMatrix> {
    let m = spec.m();
    (0..spec.n())
        .map(|k| {
            (0..m).fold(MonomialMatrix::identity(1), |acc, i| {
                let factor = if k >> (m - 1 - i) & 1 == 1 {
                    spec.offdiag[i].matrix()
                } else {
                    spec.diag[i].matrix()
                };
                acc.tensor(&factor)
            })
        })
        .collect()
}

fn check_family_order(mut orders: impl Iterator<Item = usize>, what: &str) -> Result<usize> {
    let first = orders
        .next()
        .ok_or_else(|| Error::InvalidMatrix(format!("{what} is empty")))?;
    for o in orders {
        if o != first {
            return Err(Error::OrderMismatch { left: first, right: o });
        }
    }
    Ok(first)
}

/// The pattern `λ` with `A_j A_kᵀ + λ_{j,k} A_k A_jᵀ = 0`.
pub fn lambda_of_transversal(a: &[MonomialMatrix]) -> Result<LambdaPattern> {
    check_family_order(a.iter().map(|x| x.order()), "transversal")?;
    for j in 0..a.len() {
        for k in j + 1..a.len() {
            if !a[j].supports_disjoint(&a[k])? {
                return Err(Error::InvalidTransversal(format!(
                    "A_{} and A_{} have overlapping supports",
                    j + 1,
                    k + 1
                )));
            }
        }
    }
    LambdaPattern::of_family(a, Convention::ASide)
        .map_err(|e| Error::InvalidTransversal(e.to_string()))
}

/// `Σ A_k ⊗ B_k`, which must be a full `±1` matrix.
pub fn plug_in(a: &[MonomialMatrix], b: &[DenseSignMatrix]) -> Result<DenseSignMatrix> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let n = check_family_order(a.iter().map(|x| x.order()), "A family")?;
    let bo = check_family_order(b.iter().map(|x| x.order()), "B family")?;
    let mut filled = vec![false; n * n];
    let mut h = DenseSignMatrix::zeros(n * bo);
    for (ak, bk) in a.iter().zip(b) {
        for (i, (&c, &s)) in ak.perm().iter().zip(ak.signs()).enumerate() {
            if std::mem::replace(&mut filled[i * n + c], true) {
                return Err(Error::InvalidTransversal(format!("block ({i}, {c}) is covered twice")));
            }
            let v = s.to_i8();
            for r in 0..bo {
                let dst = &mut h.row_mut(i * bo + r)[c * bo..(c + 1) * bo];
                for (o, &x) in dst.iter_mut().zip(bk.row(r)) {
                    *o = v * x;
                }
            }
        }
    }
    if let Some(k) = filled.iter().position(|&f| !f) {
        return Err(Error::InvalidTransversal(format!(
            "block ({}, {}) is not covered",
            k / n,
            k % n
        )));
    }
    if !h.is_sign_matrix() {
        return Err(Error::InvalidMatrix("assembled matrix has zero entries".into()));
    }
    Ok(h)
}

/// Outcome of every check on a bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HadamardReport {
    /// `A_j ∗ A_k = 0` for `j ≠ k`.
    pub a_disjoint: bool,
    /// `Σ A_k` has every entry `±1`.
    pub a_sum_full: bool,
    /// `A_j A_kᵀ + λ A_k A_jᵀ = 0`.
    pub a_amicability: bool,
    /// `B_j B_kᵀ − λ B_k B_jᵀ = 0`.
    pub b_amicability: bool,
    /// `Σ B_k B_kᵀ = n b I`.
    pub b_gram_sum: bool,
    /// `D_j D_kᵀ − λ D_k D_jᵀ = 0`.
    pub d_amicability: bool,
    /// `B_k = D_k S`, `S Sᵀ = b I` and `H = Σ A_k ⊗ B_k`.
    pub consistent: bool,
    /// `H Hᵀ = n b I`.
    pub hadamard: bool,
    pub pass: bool,
}

impl HadamardReport {
    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.a_disjoint, "a_disjoint"),
            (self.a_sum_full, "a_sum_full"),
            (self.a_amicability, "a_amicability"),
            (self.b_amicability, "b_amicability"),
            (self.b_gram_sum, "b_gram_sum"),
            (self.d_amicability, "d_amicability"),
            (self.consistent, "consistent"),
            (self.hadamard, "hadamard"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HadamardBundle {
    pub spec: TransversalSpec,
    pub n: usize,
    pub b: usize,
    pub a: Vec<MonomialMatrix>,
    pub lambda: LambdaPattern,
    pub kappa: Vec<Sign>,
    pub d: Vec<MonomialMatrix>,
    pub s: DenseSignMatrix,
    pub b_matrices: Vec<DenseSignMatrix>,
    /// Rows of `+`/`-`.
    #[serde(serialize_with = "pm_rows_ser", deserialize_with = "pm_rows_de")]
    pub h: DenseSignMatrix,
    pub report: HadamardReport,
}

fn pm_rows_ser<S: Serializer>(h: &DenseSignMatrix, ser: S) -> Result<S::Ok, S::Error> {
    let text = h.to_pm_text().map_err(serde::ser::Error::custom)?;
    ser.collect_seq(text.lines())
}

fn pm_rows_de<'de, D: Deserializer<'de>>(de: D) -> Result<DenseSignMatrix, D::Error> {
    let rows: Vec<String> = Vec::deserialize(de)?;
    DenseSignMatrix::from_pm_text(&rows.join("\n")).map_err(serde::de::Error::custom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HadamardOptions {
    pub solve: SolveConfig,
    pub max_order: usize,
}

impl Default for HadamardOptions {
    fn default() -> Self {
        HadamardOptions {
            solve: SolveConfig::default(),
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// Runs the whole pipeline and verifies the result.
pub fn complete(spec: &TransversalSpec, options: &HadamardOptions) -> Result<HadamardBundle> {
    let a = transversal(spec);
    let n = a.len();
    let lambda = lambda_of_transversal(&a)?;
    let solved = solve(&lambda, &options.solve)?;
    let (kappa, d, b) = (solved.kappa, solved.d, solved.b);
    if n * b > options.max_order {
        return Err(Error::ResourceCap {
            what: "Hadamard order n*b",
            value: n * b,
            cap: options.max_order,
        });
    }
    let s = sylvester(b)?;
    let b_matrices = d.iter().map(|dk| dk.mul_dense(&s)).collect::<Result<Vec<_>>>()?;
    let h = plug_in(&a, &b_matrices)?;
    let mut bundle = HadamardBundle {
        spec: spec.clone(),
        n,
        b,
        a,
        lambda,
        kappa,
        d,
        s,
        b_matrices,
        h,
        report: HadamardReport {
            a_disjoint: false,
            a_sum_full: false,
            a_amicability: false,
            b_amicability: false,
            b_gram_sum: false,
            d_amicability: false,
            consistent: false,
            hadamard: false,
            pass: false,
        },
    };
    bundle.report = verify_bundle(&bundle)?;
    if !bundle.report.pass {
        return Err(Error::Verification(format!(
            "bundle checks failed: {}",
            bundle.report.failures().join(", ")
        )));
    }
    Ok(bundle)
}

/// Recomputes every check from the stored matrices, ignoring the stored
/// report. Shape problems are errors; failed identities are reported.
pub fn verify_bundle(bundle: &HadamardBundle) -> Result<HadamardReport> {
    let (n, b) = (bundle.n, bundle.b);
    let lens = [
        bundle.a.len(),
        bundle.d.len(),
        bundle.b_matrices.len(),
        bundle.lambda.n(),
        bundle.kappa.len(),
    ];
    if let Some(&bad) = lens.iter().find(|&&l| l != n) {
        return Err(Error::LengthMismatch { expected: n, found: bad });
    }
    if bundle.spec.n() != n {
        return Err(Error::LengthMismatch {
            expected: bundle.spec.n(),
            found: n,
        });
    }
    let shapes_ok = bundle.a.iter().all(|x| x.order() == n)
        && bundle.d.iter().all(|x| x.order() == b)
        && bundle.b_matrices.iter().all(|x| x.order() == b)
        && bundle.s.order() == b
        && bundle.h.order() == n * b;
    if !shapes_ok {
        return Err(Error::InvalidMatrix("bundle matrices have inconsistent orders".into()));
    }
    let nb = (n * b) as i64;
    let lambda = &bundle.lambda;
    let pairs: Vec<(usize, usize)> = lambda.pairs().collect();

    let a = &bundle.a;
    let mut cover = vec![0u32; n * n];
    for ak in a {
        for (i, &c) in ak.perm().iter().enumerate() {
            cover[i * n + c] += 1;
        }
    }
    let mut a_disjoint = true;
    for &(j, k) in &pairs {
        a_disjoint &= a[j].supports_disjoint(&a[k])?;
    }
    let a_sum_full = a_disjoint && cover.iter().all(|&c| c == 1);
    let mut a_amicability = true;
    let mut d_amicability = true;
    let mut b_amicability = true;
    for &(j, k) in &pairs {
        let l = Some(lambda.get(j, k));
        a_amicability &= lambda_of_pair(&a[j], &a[k], Convention::ASide)? == l;
        d_amicability &= lambda_of_pair(&bundle.d[j], &bundle.d[k], Convention::BSide)? == l;
        b_amicability &= lambda_of_dense_pair(&bundle.b_matrices[j], &bundle.b_matrices[k], Convention::BSide)? == l;
    }

    let mut gram_sum = bundle.b_matrices[0].gram()?;
    for bk in &bundle.b_matrices[1..] {
        gram_sum = gram_sum.add(&bk.gram()?)?;
    }
    let b_gram_sum = gram_sum.is_scalar(nb);

    let mut consistent = bundle.s.gram()?.is_scalar(b as i64);
    for (dk, bk) in bundle.d.iter().zip(&bundle.b_matrices) {
        consistent &= dk.mul_dense(&bundle.s)? == *bk;
    }
    consistent &= match plug_in(a, &bundle.b_matrices) {
        Ok(h) => h == bundle.h,
        Err(_) => false,
    };

    let hadamard = bundle.h.is_sign_matrix() && bundle.h.gram()?.is_scalar(nb);
    let pass = a_disjoint
        && a_sum_full
        && a_amicability
        && b_amicability
        && b_gram_sum
        && d_amicability
        && consistent
        && hadamard;
    Ok(HadamardReport {
        a_disjoint,
        a_sum_full,
        a_amicability,
        b_amicability,
        b_gram_sum,
        d_amicability,
        consistent,
        hadamard,
        pass,
    })
}
