//! Splitting a presentation into central generators and hyperbolic pairs.
//!
//! The commutation pattern of basis monomials is an alternating bilinear form
//! over GF(2) on exponent vectors. A symplectic Gram–Schmidt pass over the
//! unit vectors produces a new generating set: a basis of the radical (these
//! monomials span the centre) and pairs `(γ, δ)` that anticommute with each
//! other and commute with every other new generator. In the new generators
//! the algebra is the tensor product `[β_1] ⊗ … ⊗ [β_r] ⊗ [γ_1, δ_1] ⊗ … ⊗ [γ_s, δ_s]`.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, Sign, SignedMonomial};
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// A central new generator `β` with `β² = square`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralGenerator {
    pub monomial: SignedMonomial,
    pub square: Sign,
}

/// An anticommuting pair `(γ, δ)` commuting with all other new generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicPair {
    pub gamma: SignedMonomial,
    pub gamma_square: Sign,
    pub delta: SignedMonomial,
    pub delta_square: Sign,
}

impl HyperbolicPair {
    /// `γ² = δ² = -1`: this factor is the quaternions.
    pub fn is_quaternionic(&self) -> bool {
        self.gamma_square.is_minus() && self.delta_square.is_minus()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub presentation: AlgebraPresentation,
    pub centrals: Vec<CentralGenerator>,
    pub pairs: Vec<HyperbolicPair>,
    /// Rows are the exponent vectors of `β_1 … β_r, γ_1, δ_1, … γ_s, δ_s`.
    pub basis_change: Gf2Matrix,
}

/// The `m × m` matrix of the commutation form on the generators.
pub fn form_matrix(p: &AlgebraPresentation) -> Gf2Matrix {
    let m = p.m();
    let rows = (0..m).map(|i| p.anticommuting_mask(i)).collect();
    Gf2Matrix::from_rows(m, rows).expect("m is bounded by MAX_GENERATORS")
}

/// Dimension of the radical of the commutation form; the centre has
/// dimension `2^r`.
pub fn radical_dimension(p: &AlgebraPresentation) -> usize {
    form_matrix(p).nullity()
}

/// Symplectic Gram–Schmidt with lowest-index pivots.
pub fn decompose(p: &AlgebraPresentation) -> Decomposition {
    let m = p.m();
    let mut remaining: Vec<u64> = (0..m).map(|i| 1u64 << i).collect();
    let mut central_vecs = Vec::new();
    let mut pair_vecs = Vec::new();

    while !remaining.is_empty() {
        let u = remaining.remove(0);
        match remaining.iter().position(|&v| p.form(u, v) == 1) {
            Some(pos) => {
                let v = remaining.remove(pos);
                for w in remaining.iter_mut() {
                    let (with_v, with_u) = (p.form(*w, v), p.form(*w, u));
                    if with_v == 1 {
                        *w ^= u;
                    }
                    if with_u == 1 {
                        *w ^= v;
                    }
                }
                pair_vecs.push((u, v));
            }
            None => central_vecs.push(u),
        }
    }

    let mono = |exps: u64| p.monomial(exps).expect("exponents stay within m bits");
    let square = |x: &SignedMonomial| p.square(x).expect("same presentation");

    let centrals: Vec<_> = central_vecs
        .iter()
        .map(|&e| {
            let monomial = mono(e);
            CentralGenerator {
                monomial,
                square: square(&monomial),
            }
        })
        .collect();
    let pairs: Vec<_> = pair_vecs
        .iter()
        .map(|&(g, d)| {
            let (gamma, delta) = (mono(g), mono(d));
            HyperbolicPair {
                gamma,
                gamma_square: square(&gamma),
                delta,
                delta_square: square(&delta),
            }
        })
        .collect();
    let rows = central_vecs
        .iter()
        .copied()
        .chain(pair_vecs.iter().flat_map(|&(g, d)| [g, d]))
        .collect();

    Decomposition {
        presentation: p.clone(),
        centrals,
        pairs,
        basis_change: Gf2Matrix::from_rows(m, rows).expect("m is bounded by MAX_GENERATORS"),
    }
}

impl Decomposition {
    pub fn r(&self) -> usize {
        self.centrals.len()
    }

    pub fn s(&self) -> usize {
        self.pairs.len()
    }

    /// New generators in `basis_change` row order with their squares.
    pub fn new_generators(&self) -> Vec<(SignedMonomial, Sign)> {
        self.centrals
            .iter()
            .map(|c| (c.monomial, c.square))
            .chain(
                self.pairs
                    .iter()
                    .flat_map(|pr| [(pr.gamma, pr.gamma_square), (pr.delta, pr.delta_square)]),
            )
            .collect()
    }

    /// The presentation on the new generators that the decomposition claims:
    /// the squares `b, c, d` and a single anticommuting bit per hyperbolic pair.
    pub fn normal_form(&self) -> AlgebraPresentation {
        let r = self.r();
        let kappa = self.new_generators().into_iter().map(|(_, sq)| sq).collect();
        let pairs = (0..self.s()).map(|k| (r + 2 * k, r + 2 * k + 1));
        AlgebraPresentation::new(kappa, pairs).expect("r + 2s = m generators")
    }

    /// The presentation actually satisfied by the new generators, recomputed
    /// from the source presentation's arithmetic.
    pub fn induced_presentation(&self) -> Result<AlgebraPresentation> {
        let p = &self.presentation;
        let gens = self.new_generators();
        let mut kappa = Vec::with_capacity(gens.len());
        for (g, _) in &gens {
            kappa.push(p.square(g)?);
        }
        let mut anti = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if p.commute_sign(&gens[i].0, &gens[j].0)?.is_minus() {
                    anti.push((i, j));
                }
            }
        }
        AlgebraPresentation::new(kappa, anti)
    }

    /// Checks every structural invariant of the decomposition.
    pub fn validate(&self) -> Result<()> {
        let m = self.presentation.m();
        let fail = |msg: String| Err(Error::Verification(msg));
        if self.r() + 2 * self.s() != m {
            return fail(format!("r + 2s = {} != m = {m}", self.r() + 2 * self.s()));
        }
        if self.basis_change.nrows() != m || self.basis_change.ncols() != m {
            return fail("basis change is not m x m".into());
        }
        if self.basis_change.inverse().is_none() {
            return fail("basis change is singular over GF(2)".into());
        }
        for (k, (g, sq)) in self.new_generators().iter().enumerate() {
            if g.exps() != self.basis_change.row(k) {
                return fail(format!("generator {k} disagrees with basis change row"));
            }
            if self.presentation.square(g)? != *sq {
                return fail(format!("recorded square of generator {k} is wrong"));
            }
        }
        if self.induced_presentation()? != self.normal_form() {
            return fail("new generators do not satisfy the normal-form relations".into());
        }
        Ok(())
    }
}
