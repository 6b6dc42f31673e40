//! Irreducible monomial representations.
//!
//! Each tensor factor of a decomposition gets a small monomial block:
//! `[β]` with `β² = 1` acts as a sign, `[β]` with `β² = -1` as the rotation
//! `J`, and `[γ, δ]` as a pair of anticommuting 2×2 matrices unless it is
//! quaternionic. Quaternionic pairs are fused two at a time into left and
//! right quaternion multiplications on `R^4` (`H ⊗ H = R(4)`), and a leftover
//! one absorbs a complex central factor when there is one (`C ⊗ H = C(2)`).
//! The images of the original generators are then recovered as signed
//! products of the new-generator images.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, Sign, SignedMonomial};
use crate::error::{Error, Result};
use crate::monomat::{reflection, rotation, swap, MonomialMatrix};
use crate::structure::{classify, StructureCase};
use crate::symplectic::Decomposition;

/// The building blocks of an irreducible representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// `[β]` with `β² = 1`, acting as the given sign.
    CPlus(Sign),
    /// `[β]` with `β² = -1`.
    CMinus,
    /// `[γ, δ]` with the given squares; `(-1, -1)` is the quaternion block.
    Q(Sign, Sign),
    /// Two quaternionic pairs: `[L_i, L_j, R_i, R_j]`.
    HH,
    /// A complex central generator with one quaternionic pair: `[R_i, L_i, L_j]`.
    CH,
}

impl BlockKind {
    /// The relations the block images must satisfy.
    pub fn presentation(self) -> AlgebraPresentation {
        use Sign::*;
        let (kappa, anti): (Vec<Sign>, Vec<(usize, usize)>) = match self {
            BlockKind::CPlus(_) => (vec![Plus], vec![]),
            BlockKind::CMinus => (vec![Minus], vec![]),
            BlockKind::Q(c, d) => (vec![c, d], vec![(0, 1)]),
            BlockKind::HH => (vec![Minus; 4], vec![(0, 1), (2, 3)]),
            BlockKind::CH => (vec![Minus; 3], vec![(1, 2)]),
        };
        AlgebraPresentation::new(kappa, anti).expect("block presentations are well-formed")
    }
}

/// Quaternion multiplication on the carrier basis `(1, i, j, k)`.
pub mod quaternion {
    use super::*;

    fn from_images(images: [(usize, i8); 4]) -> MonomialMatrix {
        let images = images.map(|(r, s)| (r, Sign::try_from(s as i64).unwrap()));
        MonomialMatrix::from_column_images(&images).unwrap()
    }

    /// `v ↦ i v`: `(1, i, j, k) ↦ (i, -1, k, -j)`.
    pub fn left_i() -> MonomialMatrix {
        from_images([(1, 1), (0, -1), (3, 1), (2, -1)])
    }

    /// `v ↦ j v`: `(1, i, j, k) ↦ (j, -k, -1, i)`.
    pub fn left_j() -> MonomialMatrix {
        from_images([(2, 1), (3, -1), (0, -1), (1, 1)])
    }

    /// `v ↦ v i`: `(1, i, j, k) ↦ (i, -1, -k, j)`.
    pub fn right_i() -> MonomialMatrix {
        from_images([(1, 1), (0, -1), (3, -1), (2, 1)])
    }

    /// `v ↦ v j`: `(1, i, j, k) ↦ (j, k, -1, -i)`.
    pub fn right_j() -> MonomialMatrix {
        from_images([(2, 1), (3, 1), (0, -1), (1, -1)])
    }
}

/// Block images, checked against [`BlockKind::presentation`].
pub fn factor_block(kind: BlockKind) -> Result<Vec<MonomialMatrix>> {
    use quaternion::*;
    use Sign::*;
    let images = match kind {
        BlockKind::CPlus(s) => vec![MonomialMatrix::diagonal(vec![s])],
        BlockKind::CMinus => vec![rotation()],
        BlockKind::Q(Plus, Plus) => vec![reflection(), swap()],
        BlockKind::Q(Minus, Plus) => vec![rotation(), swap()],
        BlockKind::Q(Plus, Minus) => vec![reflection(), rotation()],
        BlockKind::Q(Minus, Minus) => vec![left_i(), left_j()],
        BlockKind::HH => vec![left_i(), left_j(), right_i(), right_j()],
        BlockKind::CH => vec![right_i(), left_i(), left_j()],
    };
    check_relations(&kind.presentation(), &images)?;
    Ok(images)
}

/// Verifies that `images` satisfy every defining relation of `p` exactly:
/// `X_i² = κ_i I`, `X_j X_i = (-1)^{δ_{i,j}} X_i X_j`, and `X_iᵀ = κ_i X_i`.
pub fn check_relations(p: &AlgebraPresentation, images: &[MonomialMatrix]) -> Result<()> {
    if images.len() != p.m() {
        return Err(Error::LengthMismatch {
            expected: p.m(),
            found: images.len(),
        });
    }
    let fail = |msg: String| Err(Error::Verification(msg));
    let n = images[0].order();
    for (i, x) in images.iter().enumerate() {
        if x.order() != n {
            return Err(Error::OrderMismatch {
                left: n,
                right: x.order(),
            });
        }
        let k = p.kappa_at(i);
        if x.mul(x)?.scalar() != Some(k) {
            return fail(format!("image of generator {} does not square to {k}", i + 1));
        }
        if x.transpose() != x.scaled(k) {
            return fail(format!("image of generator {} violates the transpose law", i + 1));
        }
        for (j, y) in images.iter().enumerate().skip(i + 1) {
            let expected = Sign::from_bool_minus(p.delta(i, j));
            if y.commutation_sign(x)? != Some(expected) {
                return fail(format!(
                    "images of generators {} and {} violate their commutation relation",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    Ok(())
}

/// Which generating set the images of a representation belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorSet {
    /// `β_1 … β_r, γ_1, δ_1, …` of the decomposition.
    Decomposed,
    /// `α_1 … α_m` of the source presentation.
    Original,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub order: usize,
    pub images: Vec<MonomialMatrix>,
    pub character: Vec<bool>,
    pub generators: GeneratorSet,
    pub decomposition: Decomposition,
}

/// The serialized form `{order, images, character}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationRecord {
    pub order: usize,
    pub images: Vec<MonomialMatrix>,
    pub character: Vec<u8>,
}

impl Representation {
    pub fn to_record(&self) -> RepresentationRecord {
        RepresentationRecord {
            order: self.order,
            images: self.images.clone(),
            character: self.character.iter().map(|&b| b as u8).collect(),
        }
    }

    /// `ρ ⊗ I_k`, a non-irreducible representation of order `k · order`.
    pub fn inflate(&self, k: usize) -> Representation {
        let id = MonomialMatrix::identity(k);
        Representation {
            order: self.order * k,
            images: self.images.iter().map(|x| x.tensor(&id)).collect(),
            ..self.clone()
        }
    }

    /// The presentation these images realize.
    pub fn presentation(&self) -> AlgebraPresentation {
        match self.generators {
            GeneratorSet::Decomposed => self.decomposition.normal_form(),
            GeneratorSet::Original => self.decomposition.presentation.clone(),
        }
    }
}

/// Number of free sign choices selecting an irreducible representation: one
/// per central generator, except the first `-1`-square central when the
/// centre is complex.
pub fn character_len(d: &Decomposition) -> usize {
    match classify(d).case {
        StructureCase::Complex => d.r() - 1,
        _ => d.r(),
    }
}

/// All characters, in binary counting order.
pub fn characters(d: &Decomposition) -> impl Iterator<Item = Vec<bool>> {
    let len = character_len(d);
    (0u64..1 << len).map(move |c| (0..len).map(|i| c >> i & 1 == 1).collect())
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Block { block: usize, index: usize },
    Scalar(Sign),
    /// Sign times the image of the first `-1`-square central generator.
    WithComplexUnit(Sign),
}

/// Builds the irreducible representation selected by `character` on the
/// new generators of `d`.
///
/// Character bits run over the central generators in order, skipping the
/// first `-1`-square one when present. For a `+1`-square central `β` the bit
/// gives `ρ(β) = (-1)^bit`. For any other `-1`-square central `β` it gives
/// the value `(-1)^bit` of the central element `β · β_f`, where `β_f` is the
/// first `-1`-square central.
pub fn build_irrep(d: &Decomposition, character: &[bool]) -> Result<Representation> {
    let expected = character_len(d);
    if character.len() != expected {
        return Err(Error::CharacterLength {
            expected,
            found: character.len(),
        });
    }
    let wedderburn = classify(d);
    let r = d.r();
    let m = r + 2 * d.s();
    let pair_slot = |k: usize, second: bool| r + 2 * k + second as usize;

    let first_minus = d.centrals.iter().position(|c| c.square == Sign::Minus);
    let quaternionic: Vec<usize> = (0..d.s()).filter(|&k| d.pairs[k].is_quaternionic()).collect();

    let mut slots: Vec<Option<Slot>> = vec![None; m];
    // each block: (kind, generator indices in image order)
    let mut blocks: Vec<(BlockKind, Vec<usize>)> = Vec::new();

    let mut chunks = quaternionic.chunks_exact(2);
    for chunk in chunks.by_ref() {
        let (a, b) = (chunk[0], chunk[1]);
        blocks.push((
            BlockKind::HH,
            vec![pair_slot(a, false), pair_slot(a, true), pair_slot(b, false), pair_slot(b, true)],
        ));
    }
    let mut complex_unit_used = false;
    if let [k] = chunks.remainder() {
        match first_minus {
            Some(f) => {
                blocks.push((BlockKind::CH, vec![f, pair_slot(*k, false), pair_slot(*k, true)]));
                complex_unit_used = true;
            }
            None => blocks.push((
                BlockKind::Q(Sign::Minus, Sign::Minus),
                vec![pair_slot(*k, false), pair_slot(*k, true)],
            )),
        }
    }
    if let (Some(f), false) = (first_minus, complex_unit_used) {
        blocks.push((BlockKind::CMinus, vec![f]));
    }
    for (k, pr) in d.pairs.iter().enumerate() {
        if !pr.is_quaternionic() {
            blocks.push((
                BlockKind::Q(pr.gamma_square, pr.delta_square),
                vec![pair_slot(k, false), pair_slot(k, true)],
            ));
        }
    }
    blocks.sort_by_key(|(_, gens)| gens.iter().copied().min());

    for (b, (_, gens)) in blocks.iter().enumerate() {
        for (index, &g) in gens.iter().enumerate() {
            slots[g] = Some(Slot::Block { block: b, index });
        }
    }
    let mut bits = character.iter().copied();
    for (i, c) in d.centrals.iter().enumerate() {
        if Some(i) == first_minus {
            continue;
        }
        let chi = Sign::from_bool_minus(bits.next().expect("length checked above"));
        slots[i] = Some(match c.square {
            Sign::Plus => Slot::Scalar(chi),
            // ρ(β) ρ(β_f) = χ and ρ(β_f)² = -1, so ρ(β) = -χ ρ(β_f)
            Sign::Minus => Slot::WithComplexUnit(-chi),
        });
    }

    let block_images: Vec<Vec<MonomialMatrix>> = blocks
        .iter()
        .map(|(kind, _)| factor_block(*kind))
        .collect::<Result<_>>()?;
    let orders: Vec<usize> = block_images.iter().map(|imgs| imgs[0].order()).collect();
    let order: usize = orders.iter().product();

    let embedded = |block: usize, index: usize| {
        let left: usize = orders[..block].iter().product();
        let right: usize = orders[block + 1..].iter().product();
        block_images[block][index].embed(left, right)
    };
    let complex_unit = first_minus.map(|f| match slots[f] {
        Some(Slot::Block { block, index }) => embedded(block, index),
        _ => unreachable!("the first -1-square central always sits in a block"),
    });

    let images = slots
        .iter()
        .map(|slot| match slot.expect("every generator is assigned") {
            Slot::Block { block, index } => embedded(block, index),
            Slot::Scalar(s) => MonomialMatrix::identity(order).scaled(s),
            Slot::WithComplexUnit(s) => complex_unit.as_ref().expect("complex centre").scaled(s),
        })
        .collect::<Vec<_>>();

    if order as u64 != wedderburn.irrep_order {
        return Err(Error::Verification(format!(
            "built order {order}, expected irreducible order {}",
            wedderburn.irrep_order
        )));
    }
    check_relations(&d.normal_form(), &images)?;

    Ok(Representation {
        order,
        images,
        character: character.to_vec(),
        generators: GeneratorSet::Decomposed,
        decomposition: d.clone(),
    })
}

/// Expresses each original generator `α_i` as a signed product of new
/// generators and maps it through the representation.
pub fn pushforward(rep: &Representation) -> Result<Representation> {
    if rep.generators == GeneratorSet::Original {
        return Ok(rep.clone());
    }
    let d = &rep.decomposition;
    let p = &d.presentation;
    let inverse = d
        .basis_change
        .inverse()
        .ok_or_else(|| Error::Verification("basis change is singular".into()))?;
    let new_gens = d.new_generators();

    let mut images = Vec::with_capacity(p.m());
    for i in 0..p.m() {
        let combo = inverse.row(i);
        let mut mono = p.identity();
        let mut image = MonomialMatrix::identity(rep.order);
        for (k, (g, _)) in new_gens.iter().enumerate() {
            if combo >> k & 1 == 1 {
                mono = p.mul(&mono, g)?;
                image = image.mul(&rep.images[k])?;
            }
        }
        // the product of new generators equals sign · α_i
        if mono.exps() != p.generator(i).exps() {
            return Err(Error::Verification(format!(
                "basis change inverse does not recover generator {}",
                i + 1
            )));
        }
        images.push(image.scaled(mono.sign));
    }
    check_relations(p, &images)?;

    Ok(Representation {
        order: rep.order,
        images,
        character: rep.character.clone(),
        generators: GeneratorSet::Original,
        decomposition: d.clone(),
    })
}

/// `pushforward(build_irrep(d, character))`.
pub fn irrep_of_generators(d: &Decomposition, character: &[bool]) -> Result<Representation> {
    pushforward(&build_irrep(d, character)?)
}

/// Evaluates a signed monomial of the source presentation in a
/// representation on the original generators.
pub fn evaluate(rep: &Representation, x: &SignedMonomial) -> Result<MonomialMatrix> {
    if rep.generators != GeneratorSet::Original {
        return Err(Error::InvalidPresentation(
            "evaluation needs images of the original generators".into(),
        ));
    }
    let mut out = MonomialMatrix::identity(rep.order);
    for i in x.support() {
        out = out.mul(&rep.images[i])?;
    }
    Ok(out.scaled(x.sign))
}
