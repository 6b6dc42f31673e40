//! Realizing an amicability pattern with monomial matrices of minimal order.
//!
//! Monomial `D_j` with `D_j² = κ_j I` are orthogonal, so `D_jᵀ = κ_j D_j` and
//! `D_j D_kᵀ = λ_{j,k} D_k D_jᵀ` becomes `D_j D_k = λ_{j,k} κ_j κ_k D_k D_j`.
//! Every choice of `κ` therefore yields a presentation whose irreducible
//! monomial representations realize `λ`; the search keeps the `κ` with the
//! smallest irreducible order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, Sign, MAX_GENERATORS};
use crate::error::{Error, Result};
use crate::monomat::{lambda_of_pair, Convention, MonomialMatrix};
use crate::repbuild::{character_len, irrep_of_generators};
use crate::structure::{classify, WedderburnType};
use crate::symplectic::decompose;

/// Default largest `n` searched exhaustively over all `κ`.
pub const DEFAULT_MAX_EXHAUSTIVE_N: usize = 16;

/// A symmetric `n × n` table of `±1` with an unused diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LambdaRecord", into = "LambdaRecord")]
pub struct LambdaPattern {
    n: usize,
    values: Vec<Sign>,
}

/// `{n, entries: [[j, k, ±1], …]}` with 1-based indices. Each unordered pair
/// must appear; `(k, j)` may repeat `(j, k)` only with the same value.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaRecord {
    pub n: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl TryFrom<LambdaRecord> for LambdaPattern {
    type Error = Error;

    fn try_from(rec: LambdaRecord) -> Result<Self> {
        let n = rec.n;
        if n == 0 {
            return Err(Error::InvalidPattern("n must be positive".into()));
        }
        let mut table: Vec<Option<Sign>> = vec![None; n * n];
        for &(j, k, v) in &rec.entries {
            if j == 0 || k == 0 || j > n || k > n || j == k {
                return Err(Error::InvalidPattern(format!(
                    "entry ({j}, {k}) is not a pair of distinct indices in 1..={n}"
                )));
            }
            let s = Sign::try_from(v)
                .map_err(|_| Error::InvalidPattern(format!("entry ({j}, {k}) has value {v}, expected ±1")))?;
            for idx in [(j - 1) * n + (k - 1), (k - 1) * n + (j - 1)] {
                match table[idx] {
                    Some(prev) if prev != s => {
                        return Err(Error::InvalidPattern(format!(
                            "entries for pair ({j}, {k}) disagree"
                        )))
                    }
                    _ => table[idx] = Some(s),
                }
            }
        }
        let mut values = vec![Sign::Plus; n * n];
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    continue;
                }
                values[j * n + k] = table[j * n + k].ok_or_else(|| {
                    Error::InvalidPattern(format!("pair ({}, {}) is missing", j.min(k) + 1, j.max(k) + 1))
                })?;
            }
        }
        Ok(LambdaPattern { n, values })
    }
}

impl From<LambdaPattern> for LambdaRecord {
    fn from(l: LambdaPattern) -> Self {
        let entries = l.pairs().map(|(j, k)| (j + 1, k + 1, i64::from(l.get(j, k)))).collect();
        LambdaRecord { n: l.n, entries }
    }
}

impl LambdaPattern {
    /// Builds a pattern from `value(j, k)` for `j < k` (0-based).
    pub fn from_fn(n: usize, value: impl Fn(usize, usize) -> Sign) -> Self {
        let mut values = vec![Sign::Plus; n * n];
        for j in 0..n {
            for k in j + 1..n {
                let v = value(j, k);
                values[j * n + k] = v;
                values[k * n + j] = v;
            }
        }
        LambdaPattern { n, values }
    }

    /// Every pair gets the same value.
    pub fn uniform(n: usize, value: Sign) -> Self {
        Self::from_fn(n, |_, _| value)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> Sign {
        assert!(j != k, "the diagonal of an amicability pattern is undefined");
        self.values[j * self.n + k]
    }

    /// Pairs `(j, k)`, `j < k`, 0-based.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |j| (j + 1..n).map(move |k| (j, k)))
    }

    /// Reads the pattern of a family of matrices in the given convention.
    pub fn of_family(family: &[MonomialMatrix], convention: Convention) -> Result<Self> {
        let n = family.len();
        let mut values = vec![Sign::Plus; n * n];
        for j in 0..n {
            for k in j + 1..n {
                let v = lambda_of_pair(&family[j], &family[k], convention)?.ok_or_else(|| {
                    Error::InvalidPattern(format!(
                        "matrices {} and {} are neither amicable nor anti-amicable",
                        j + 1,
                        k + 1
                    ))
                })?;
                values[j * n + k] = v;
                values[k * n + j] = v;
            }
        }
        Ok(LambdaPattern { n, values })
    }
}

/// The presentation whose generators, represented by orthogonal monomial
/// matrices with squares `κ`, satisfy `D_j D_kᵀ = λ_{j,k} D_k D_jᵀ`:
/// `δ_{j,k} = 1` iff `λ_{j,k} κ_j κ_k = -1`.
pub fn presentation_from(lambda: &LambdaPattern, kappa: &[Sign]) -> Result<AlgebraPresentation> {
    if kappa.len() != lambda.n() {
        return Err(Error::LengthMismatch {
            expected: lambda.n(),
            found: kappa.len(),
        });
    }
    AlgebraPresentation::from_fn(kappa.to_vec(), |j, k| {
        (lambda.get(j, k) * kappa[j] * kappa[k]).is_minus()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum SearchMode {
    /// Every `κ ∈ {±1}^n`. Negating all of `κ` keeps `δ` but not the
    /// squares, so both halves are searched.
    Exhaustive,
    /// `κ = (+1, …, +1)` plus `samples` seeded random `κ`.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub mode: SearchMode,
    pub max_exhaustive_n: usize,
    pub parallel: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: SearchMode::Exhaustive,
            max_exhaustive_n: DEFAULT_MAX_EXHAUSTIVE_N,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub kappa: Vec<Sign>,
    pub presentation: AlgebraPresentation,
    pub wedderburn: WedderburnType,
    /// The common order of the `D` matrices.
    pub b: usize,
    pub d: Vec<MonomialMatrix>,
    /// Number of `κ` vectors evaluated.
    pub candidates: u64,
    /// Whether the minimum is over every `κ`.
    pub exhaustive: bool,
}

/// `κ` from a mask, bit `i` set meaning `κ_{i+1} = -1`.
fn kappa_from_mask(n: usize, mask: u64) -> Vec<Sign> {
    (0..n).map(|i| Sign::from_bool_minus(mask >> i & 1 == 1)).collect()
}

/// Sort key realizing lexicographic order with `+1 < -1`.
fn lex_key(kappa: &[Sign]) -> u64 {
    kappa.iter().fold(0, |acc, s| acc << 1 | s.is_minus() as u64)
}

/// Irreducible order for the presentation induced by `λ` and `κ`.
pub fn irrep_order_for(lambda: &LambdaPattern, kappa: &[Sign]) -> Result<u64> {
    Ok(classify(&decompose(&presentation_from(lambda, kappa)?)).irrep_order)
}

pub fn solve(lambda: &LambdaPattern, config: &SolveConfig) -> Result<SolveResult> {
    let n = lambda.n();
    if n < 2 {
        return Err(Error::InvalidPattern(format!("need at least 2 matrices, got {n}")));
    }
    if n > MAX_GENERATORS {
        return Err(Error::ResourceCap {
            what: "pattern size n",
            value: n,
            cap: MAX_GENERATORS,
        });
    }

    let masks: Vec<u64> = match config.mode {
        SearchMode::Exhaustive => {
            if n > config.max_exhaustive_n {
                return Err(Error::ResourceCap {
                    what: "exhaustive search n",
                    value: n,
                    cap: config.max_exhaustive_n,
                });
            }
            (0..1u64 << n).collect()
        }
        SearchMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut masks = vec![0];
            masks.extend((0..samples).map(|_| rng.random::<u64>() & ((1u64 << n) - 1)));
            masks
        }
    };

    let evaluate = |&mask: &u64| -> Result<(u64, u64)> {
        let kappa = kappa_from_mask(n, mask);
        Ok((irrep_order_for(lambda, &kappa)?, lex_key(&kappa)))
    };
    let best = if config.parallel {
        masks
            .par_iter()
            .map(|m| evaluate(m).map(|(b, key)| (b, key, *m)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
    } else {
        masks
            .iter()
            .map(|m| evaluate(m).map(|(b, key)| (b, key, *m)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
    };
    let (_, _, mask) = best.expect("at least one candidate");

    let kappa = kappa_from_mask(n, mask);
    let presentation = presentation_from(lambda, &kappa)?;
    let decomposition = decompose(&presentation);
    let wedderburn = classify(&decomposition);
    let rep = irrep_of_generators(&decomposition, &vec![false; character_len(&decomposition)])?;

    for (j, k) in lambda.pairs() {
        let got = lambda_of_pair(&rep.images[j], &rep.images[k], Convention::BSide)?;
        if got != Some(lambda.get(j, k)) {
            return Err(Error::Verification(format!(
                "D_{} D_{}ᵀ - λ D_{} D_{}ᵀ != 0",
                j + 1,
                k + 1,
                k + 1,
                j + 1
            )));
        }
    }

    Ok(SolveResult {
        kappa,
        presentation,
        b: rep.order,
        wedderburn,
        d: rep.images,
        candidates: masks.len() as u64,
        exhaustive: config.mode == SearchMode::Exhaustive,
    })
}

/// The Hurwitz–Radon function: `ρ(2^{4d+c} · odd) = 2^c + 8d`, `0 <= c < 4`.
pub fn rho(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let k = n.trailing_zeros() as u64;
    let (d, c) = (k / 4, k % 4);
    Ok((1 << c) + 8 * d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzRadonReport {
    pub size: usize,
    pub order: usize,
    pub rho: u64,
    /// Every pair satisfies `X Yᵀ = -Y Xᵀ`.
    pub mutually_anti_amicable: bool,
    pub within_bound: bool,
    pub pass: bool,
}

/// Checks that a family is mutually anti-amicable and no larger than `ρ(N)`.
pub fn check_hr_bound(family: &[MonomialMatrix]) -> Result<HurwitzRadonReport> {
    let order = family
        .first()
        .ok_or_else(|| Error::InvalidMatrix("empty family".into()))?
        .order();
    if let Some(m) = family.iter().find(|m| m.order() != order) {
        return Err(Error::OrderMismatch {
            left: order,
            right: m.order(),
        });
    }
    let mut anti = true;
    'outer: for (j, x) in family.iter().enumerate() {
        for y in &family[j + 1..] {
            if lambda_of_pair(x, y, Convention::BSide)? != Some(Sign::Minus) {
                anti = false;
                break 'outer;
            }
        }
    }
    let rho = rho(order as u64)?;
    let within = family.len() as u64 <= rho;
    Ok(HurwitzRadonReport {
        size: family.len(),
        order,
        rho,
        mutually_anti_amicable: anti,
        within_bound: within,
        pass: anti && within,
    })
}

/// Greedily keeps each candidate that is anti-amicable with everything kept
/// so far.
pub fn greedy_anti_amicable_family(
    candidates: impl IntoIterator<Item = MonomialMatrix>,
) -> Result<Vec<MonomialMatrix>> {
    let mut family: Vec<MonomialMatrix> = Vec::new();
    for c in candidates {
        let mut ok = true;
        for f in &family {
            if lambda_of_pair(f, &c, Convention::BSide)? != Some(Sign::Minus) {
                ok = false;
                break;
            }
        }
        if ok {
            family.push(c);
        }
    }
    Ok(family)
}
