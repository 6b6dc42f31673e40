//! Presentations of real special quasi-Clifford algebras and exact arithmetic
//! on their signed monomial basis.
//!
//! A presentation fixes `m` generators `α_1 … α_m`, the square `κ_i = ±1` of
//! each one, and for every pair `i < j` a bit saying whether `α_i` and `α_j`
//! commute (0) or anticommute (1). Basis monomials are kept in increasing
//! generator order, so a monomial is a sign plus an exponent bit-vector and
//! products only need to count the transpositions needed to restore that
//! order.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of generators; exponent vectors live in a `u64`.
pub const MAX_GENERATORS: usize = 63;

/// Default cap on `m` for [`AlgebraPresentation::basis`].
pub const DEFAULT_BASIS_CAP: usize = 20;

/// A sign in `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^parity`.
    pub fn from_parity(parity: u32) -> Sign {
        if parity & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_bool_minus(minus: bool) -> Sign {
        if minus {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = Error;

    fn try_from(value: i64) -> Result<Self> {
        match value {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            v => Err(Error::InvalidSign(v)),
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.to_i8() as i64
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bool_minus(self.is_minus() != rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        Sign::from_bool_minus(!self.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A basis element `±α_1^{ε_1} … α_m^{ε_m}`.
///
/// Bit `i` of `exps` (least significant first) is `ε_{i+1}`. Serialized as
/// `{"sign": ±1, "exps": [ε_1, …, ε_m]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MonomialRecord", into = "MonomialRecord")]
pub struct SignedMonomial {
    pub sign: Sign,
    exps: u64,
    len: usize,
}

impl SignedMonomial {
    pub fn new(sign: Sign, exps: u64, len: usize) -> Result<Self> {
        if len > MAX_GENERATORS {
            return Err(Error::ResourceCap {
                what: "generators",
                value: len,
                cap: MAX_GENERATORS,
            });
        }
        if exps >> len != 0 {
            return Err(Error::LengthMismatch {
                expected: len,
                found: 64 - exps.leading_zeros() as usize,
            });
        }
        Ok(SignedMonomial { sign, exps, len })
    }

    pub fn identity(len: usize) -> Self {
        SignedMonomial {
            sign: Sign::Plus,
            exps: 0,
            len,
        }
    }

    pub fn exps(&self) -> u64 {
        self.exps
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn has(&self, i: usize) -> bool {
        self.exps >> i & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        self.exps == 0
    }

    /// Indices (0-based) of the generators occurring in the monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.has(i))
    }

    pub fn with_sign(self, sign: Sign) -> Self {
        SignedMonomial { sign, ..self }
    }
}

impl Neg for SignedMonomial {
    type Output = SignedMonomial;

    fn neg(self) -> SignedMonomial {
        SignedMonomial {
            sign: -self.sign,
            ..self
        }
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_minus() {
            f.write_str("-")?;
        }
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        for i in self.support() {
            if !first {
                f.write_str("*")?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialRecord {
    sign: Sign,
    exps: Vec<u8>,
}

impl TryFrom<MonomialRecord> for SignedMonomial {
    type Error = Error;

    fn try_from(rec: MonomialRecord) -> Result<Self> {
        let mut exps = 0u64;
        for (i, &e) in rec.exps.iter().enumerate() {
            match e {
                0 => {}
                1 if i < 64 => exps |= 1 << i,
                _ => return Err(Error::Parse(format!("exponent bits must be 0 or 1, got {e}"))),
            }
        }
        SignedMonomial::new(rec.sign, exps, rec.exps.len())
    }
}

impl From<SignedMonomial> for MonomialRecord {
    fn from(x: SignedMonomial) -> Self {
        MonomialRecord {
            sign: x.sign,
            exps: (0..x.len).map(|i| x.has(i) as u8).collect(),
        }
    }
}

/// The presentation `(m, κ, δ)` of a real special quasi-Clifford algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PresentationRecord", into = "PresentationRecord")]
pub struct AlgebraPresentation {
    kappa: Vec<Sign>,
    /// Strictly upper triangular commutation table: bit `j` of `upper[i]`
    /// (only for `j > i`) is `δ_{i,j}`.
    upper: Vec<u64>,
}

impl AlgebraPresentation {
    /// Builds a presentation from the generator squares and the list of
    /// anticommuting pairs (0-based, any order within a pair).
    pub fn new<I>(kappa: Vec<Sign>, anticommuting: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let m = kappa.len();
        if m == 0 {
            return Err(Error::EmptyPresentation);
        }
        if m > MAX_GENERATORS {
            return Err(Error::ResourceCap {
                what: "generators",
                value: m,
                cap: MAX_GENERATORS,
            });
        }
        let mut upper = vec![0u64; m];
        for (a, b) in anticommuting {
            let (i, j) = (a.min(b), a.max(b));
            if i == j || j >= m {
                return Err(Error::InvalidPresentation(format!(
                    "pair ({}, {}) is not a pair of distinct generators in 1..={m}",
                    a + 1,
                    b + 1
                )));
            }
            upper[i] |= 1 << j;
        }
        Ok(AlgebraPresentation { kappa, upper })
    }

    /// Builds a presentation whose commutation bit for `i < j` is `anti(i, j)`.
    pub fn from_fn(kappa: Vec<Sign>, anti: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let m = kappa.len();
        let pairs: Vec<_> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| anti(i, j))
            .collect();
        Self::new(kappa, pairs)
    }

    /// The Clifford algebra `R_{p,q}`: `p` generators squaring to +1 followed
    /// by `q` squaring to -1, all pairwise anticommuting.
    pub fn clifford(p: usize, q: usize) -> Result<Self> {
        let kappa = std::iter::repeat_n(Sign::Plus, p)
            .chain(std::iter::repeat_n(Sign::Minus, q))
            .collect();
        Self::from_fn(kappa, |_, _| true)
    }

    pub fn m(&self) -> usize {
        self.kappa.len()
    }

    pub fn kappa(&self) -> &[Sign] {
        &self.kappa
    }

    pub fn kappa_at(&self, i: usize) -> Sign {
        self.kappa[i]
    }

    /// `δ_{i,j}` as a bool, symmetric in its arguments; `false` on the diagonal.
    pub fn delta(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        i != j && self.upper[i] >> j & 1 == 1
    }

    /// Mask of all generators anticommuting with `α_i`.
    pub fn anticommuting_mask(&self, i: usize) -> u64 {
        let mut mask = self.upper[i];
        for (k, row) in self.upper[..i].iter().enumerate() {
            mask |= (row >> i & 1) << k;
        }
        mask
    }

    /// Anticommuting pairs `(i, j)`, `i < j`, 0-based, in lexicographic order.
    pub fn anticommuting_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.m();
        (0..m).flat_map(move |i| (i + 1..m).filter(move |&j| self.delta(i, j)).map(move |j| (i, j)))
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.m()) - 1
    }

    pub fn identity(&self) -> SignedMonomial {
        SignedMonomial::identity(self.m())
    }

    /// The generator `α_{i+1}`.
    pub fn generator(&self, i: usize) -> SignedMonomial {
        assert!(i < self.m(), "generator index {i} out of range");
        SignedMonomial {
            sign: Sign::Plus,
            exps: 1 << i,
            len: self.m(),
        }
    }

    /// The positive basis monomial with the given exponent bits.
    pub fn monomial(&self, exps: u64) -> Result<SignedMonomial> {
        SignedMonomial::new(Sign::Plus, exps, self.m())
    }

    fn check(&self, x: &SignedMonomial) -> Result<()> {
        if x.len != self.m() {
            return Err(Error::LengthMismatch {
                expected: self.m(),
                found: x.len,
            });
        }
        Ok(())
    }

    /// Parity of `Σ_{i<j, u_i = 1, v_j = 1} δ_{i,j}`.
    fn ordered_pairs_parity(&self, u: u64, v: u64) -> u32 {
        let mut parity = 0;
        let mut bits = u;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            parity ^= (self.upper[i] & v).count_ones();
        }
        parity & 1
    }

    fn kappa_parity(&self, u: u64) -> u32 {
        let mut parity = 0;
        let mut bits = u;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            parity ^= self.kappa[i].is_minus() as u32;
        }
        parity
    }

    /// Product of two signed monomials.
    ///
    /// Moving each generator of `y` left past the larger-index generators of
    /// `x` costs `(-1)^{δ}` per transposition; each repeated generator then
    /// contributes its square.
    pub fn mul(&self, x: &SignedMonomial, y: &SignedMonomial) -> Result<SignedMonomial> {
        self.check(x)?;
        self.check(y)?;
        let swaps = self.ordered_pairs_parity(y.exps, x.exps);
        let squares = self.kappa_parity(x.exps & y.exps);
        Ok(SignedMonomial {
            sign: x.sign * y.sign * Sign::from_parity(swaps ^ squares),
            exps: x.exps ^ y.exps,
            len: self.m(),
        })
    }

    /// Sign of `x²`, independent of the sign of `x`.
    pub fn square(&self, x: &SignedMonomial) -> Result<Sign> {
        self.check(x)?;
        let u = x.exps;
        Ok(Sign::from_parity(
            self.ordered_pairs_parity(u, u) ^ self.kappa_parity(u),
        ))
    }

    /// `(-1)^{B(x, y)}` where `xy = (-1)^{B(x, y)} yx`.
    pub fn commute_sign(&self, x: &SignedMonomial, y: &SignedMonomial) -> Result<Sign> {
        self.check(x)?;
        self.check(y)?;
        Ok(Sign::from_parity(self.form(x.exps, y.exps)))
    }

    /// The alternating GF(2) commutation form on exponent vectors.
    pub fn form(&self, u: u64, v: u64) -> u32 {
        self.ordered_pairs_parity(u, v) ^ self.ordered_pairs_parity(v, u)
    }

    /// All `2^m` positive basis monomials, ordered by exponent bits read as an
    /// integer with `α_1` least significant. Fails if `m > cap`.
    pub fn basis(&self, cap: usize) -> Result<Vec<SignedMonomial>> {
        let m = self.m();
        if m > cap {
            return Err(Error::ResourceCap {
                what: "basis enumeration m",
                value: m,
                cap,
            });
        }
        Ok((0..=self.full_mask())
            .map(|exps| SignedMonomial {
                sign: Sign::Plus,
                exps,
                len: m,
            })
            .collect())
    }
}

/// Every presentation on exactly `m` generators: all `2^m` square vectors
/// times all `2^{m(m-1)/2}` commutation patterns.
pub fn all_presentations(m: usize) -> impl Iterator<Item = AlgebraPresentation> {
    assert!((1..=8).contains(&m), "exhaustive enumeration only for 1 <= m <= 8");
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let np = pairs.len();
    (0u64..1 << m).flat_map(move |k| {
        let pairs = pairs.clone();
        (0u64..1 << np).map(move |d| {
            let kappa = (0..m).map(|i| Sign::from_parity((k >> i) as u32)).collect();
            let anti = pairs
                .iter()
                .enumerate()
                .filter(|(n, _)| d >> n & 1 == 1)
                .map(|(_, &pr)| pr);
            AlgebraPresentation::new(kappa, anti).expect("well-formed by construction")
        })
    })
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} kappa=(", self.m())?;
        for (i, k) in self.kappa.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", k.to_i8())?;
        }
        f.write_str(") anticommuting={")?;
        for (n, (i, j)) in self.anticommuting_pairs().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}{}", i + 1, j + 1)?;
        }
        f.write_str("}")
    }
}

/// On-disk form of a presentation: 1-based `(i, j, bit)` triples with
/// `i < j`; omitted pairs commute. Serialization lists only the set bits, in
/// lexicographic order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationRecord {
    pub m: usize,
    pub kappa: Vec<i64>,
    #[serde(default)]
    pub delta: Vec<(usize, usize, u8)>,
}

impl TryFrom<PresentationRecord> for AlgebraPresentation {
    type Error = Error;

    fn try_from(rec: PresentationRecord) -> Result<Self> {
        if rec.kappa.len() != rec.m {
            return Err(Error::InvalidPresentation(format!(
                "m = {} but kappa has {} entries",
                rec.m,
                rec.kappa.len()
            )));
        }
        let kappa = rec
            .kappa
            .iter()
            .map(|&k| Sign::try_from(k).map_err(|_| Error::InvalidSquare(k)))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = std::collections::HashSet::new();
        let mut pairs = Vec::new();
        for &(i, j, bit) in &rec.delta {
            if !(1 <= i && i < j && j <= rec.m) {
                return Err(Error::InvalidPresentation(format!(
                    "delta triple ({i}, {j}, {bit}) needs 1 <= i < j <= {}",
                    rec.m
                )));
            }
            if bit > 1 {
                return Err(Error::InvalidPresentation(format!(
                    "delta bit for ({i}, {j}) must be 0 or 1, got {bit}"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidPresentation(format!(
                    "delta pair ({i}, {j}) listed twice"
                )));
            }
            if bit == 1 {
                pairs.push((i - 1, j - 1));
            }
        }
        AlgebraPresentation::new(kappa, pairs)
    }
}

impl From<AlgebraPresentation> for PresentationRecord {
    fn from(p: AlgebraPresentation) -> Self {
        PresentationRecord {
            m: p.m(),
            kappa: p.kappa.iter().map(|&k| i64::from(k)).collect(),
            delta: p
                .anticommuting_pairs()
                .map(|(i, j)| (i + 1, j + 1, 1))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quaternions() -> AlgebraPresentation {
        AlgebraPresentation::new(vec![Sign::Minus, Sign::Minus], [(0, 1)]).unwrap()
    }

    /// Multiplies generator words by literally applying the defining relations:
    /// bubble-sort the word, flipping the sign on each anticommuting swap, and
    /// cancel adjacent equal generators into their square.
    fn expand_word(p: &AlgebraPresentation, word: &[usize]) -> (Sign, u64) {
        let mut w = word.to_vec();
        let mut sign = Sign::Plus;
        loop {
            let mut changed = false;
            let mut k = 0;
            while k + 1 < w.len() {
                if w[k] > w[k + 1] {
                    if p.delta(w[k], w[k + 1]) {
                        sign = -sign;
                    }
                    w.swap(k, k + 1);
                    changed = true;
                } else if w[k] == w[k + 1] {
                    sign = sign * p.kappa_at(w[k]);
                    w.drain(k..k + 2);
                    changed = true;
                    continue;
                }
                k += 1;
            }
            if !changed {
                break;
            }
        }
        (sign, w.iter().fold(0, |acc, &i| acc | 1 << i))
    }

    fn word_of(x: &SignedMonomial) -> Vec<usize> {
        x.support().collect()
    }

    #[test]
    fn quaternion_products() {
        let p = quaternions();
        let (a1, a2) = (p.generator(0), p.generator(1));
        let a12 = p.mul(&a1, &a2).unwrap();
        assert_eq!((a12.sign, a12.exps()), (Sign::Plus, 0b11));
        let a21 = p.mul(&a2, &a1).unwrap();
        assert_eq!((a21.sign, a21.exps()), (Sign::Minus, 0b11));
        let sq = p.mul(&a12, &a12).unwrap();
        assert_eq!((sq.sign, sq.exps()), (Sign::Minus, 0));
        // independent expansion of (a1 a2)(a1 a2)
        assert_eq!(expand_word(&p, &[0, 1, 0, 1]), (Sign::Minus, 0));
    }

    #[test]
    fn squares() {
        let q = quaternions();
        assert_eq!(q.square(&q.identity()).unwrap(), Sign::Plus);
        assert_eq!(q.square(&q.monomial(0b11).unwrap()).unwrap(), Sign::Minus);

        let r30 = AlgebraPresentation::clifford(3, 0).unwrap();
        let e123 = r30.monomial(0b111).unwrap();
        assert_eq!(expand_word(&r30, &[0, 1, 2, 0, 1, 2]), (Sign::Minus, 0));
        assert_eq!(r30.square(&e123).unwrap(), Sign::Minus);
        assert_eq!(r30.square(&-e123).unwrap(), Sign::Minus);
    }

    #[test]
    fn commutation_signs() {
        let q = quaternions();
        let (a1, a2) = (q.generator(0), q.generator(1));
        assert_eq!(q.commute_sign(&a1, &a1).unwrap(), Sign::Plus);
        assert_eq!(q.commute_sign(&a1, &a2).unwrap(), Sign::Minus);

        let r30 = AlgebraPresentation::clifford(3, 0).unwrap();
        let e123 = r30.monomial(0b111).unwrap();
        for i in 0..3 {
            let g = r30.generator(i);
            assert_eq!(r30.commute_sign(&e123, &g).unwrap(), Sign::Plus);
            let mut w = word_of(&e123);
            w.push(i);
            let mut v = vec![i];
            v.extend(word_of(&e123));
            assert_eq!(expand_word(&r30, &w), expand_word(&r30, &v));
        }
    }

    #[test]
    fn basis_enumeration() {
        let p = AlgebraPresentation::clifford(1, 0).unwrap();
        let b = p.basis(DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(b.iter().map(|x| x.exps()).collect::<Vec<_>>(), vec![0, 1]);

        let q = quaternions();
        let b = q.basis(DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(
            b.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            vec!["1", "a1", "a2", "a1*a2"]
        );

        let r = AlgebraPresentation::clifford(2, 1).unwrap();
        let b = r.basis(DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(b.len(), 8);
        let distinct: std::collections::HashSet<_> = b.iter().map(|x| x.exps()).collect();
        assert_eq!(distinct.len(), 8);
        assert!(b.iter().all(|x| x.sign == Sign::Plus));
    }

    #[test]
    fn basis_cap_is_enforced() {
        let p = AlgebraPresentation::clifford(21, 0).unwrap();
        assert!(matches!(p.basis(DEFAULT_BASIS_CAP), Err(Error::ResourceCap { .. })));
        assert!(p.mul(&p.generator(20), &p.generator(3)).is_ok());
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let q = quaternions();
        let r = AlgebraPresentation::clifford(3, 0).unwrap();
        let x = r.generator(2);
        assert!(matches!(q.mul(&x, &q.generator(0)), Err(Error::LengthMismatch { .. })));
        assert!(q.square(&x).is_err());
        assert!(q.commute_sign(&q.generator(0), &x).is_err());
    }

    #[test]
    fn delta_is_symmetric() {
        let p = AlgebraPresentation::new(vec![Sign::Plus; 4], [(2, 0), (1, 3)]).unwrap();
        assert!(p.delta(0, 2) && p.delta(2, 0));
        assert!(p.delta(3, 1));
        assert!(!p.delta(0, 1) && !p.delta(1, 1));
        assert_eq!(p.anticommuting_mask(2), 0b0001);
        assert_eq!(p.anticommuting_mask(1), 0b1000);
    }

    #[test]
    fn record_validation() {
        let ok: AlgebraPresentation =
            serde_json::from_str(r#"{"m":2,"kappa":[-1,-1],"delta":[[1,2,1]]}"#).unwrap();
        assert_eq!(ok, quaternions());
        for bad in [
            r#"{"m":2,"kappa":[2,-1],"delta":[]}"#,
            r#"{"m":2,"kappa":[1],"delta":[]}"#,
            r#"{"m":2,"kappa":[1,1],"delta":[[2,1,1]]}"#,
            r#"{"m":2,"kappa":[1,1],"delta":[[1,2,2]]}"#,
            r#"{"m":2,"kappa":[1,1],"delta":[[1,2,1],[1,2,0]]}"#,
            r#"{"m":2,"kappa":[1,1],"extra":0}"#,
            r#"{"m":0,"kappa":[]}"#,
        ] {
            assert!(serde_json::from_str::<AlgebraPresentation>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn record_roundtrip_is_bit_exact() {
        let text = r#"{"m":3,"kappa":[1,-1,1],"delta":[[1,3,1],[2,3,1]]}"#;
        let p: AlgebraPresentation = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), text);
        // explicit zero bits are accepted and dropped on output
        let q: AlgebraPresentation =
            serde_json::from_str(r#"{"m":3,"kappa":[1,-1,1],"delta":[[1,2,0],[2,3,1],[1,3,1]]}"#)
                .unwrap();
        assert_eq!(serde_json::to_string(&q).unwrap(), text);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn presentation(max_m: usize) -> impl Strategy<Value = AlgebraPresentation> {
            (1..=max_m).prop_flat_map(|m| {
                (
                    proptest::collection::vec(any::<bool>(), m),
                    proptest::collection::vec(any::<bool>(), m * (m - 1) / 2),
                )
                    .prop_map(move |(k, d)| {
                        let kappa = k.into_iter().map(Sign::from_bool_minus).collect();
                        let mut bits = d.into_iter();
                        let mut pairs = Vec::new();
                        for i in 0..m {
                            for j in i + 1..m {
                                if bits.next().unwrap() {
                                    pairs.push((i, j));
                                }
                            }
                        }
                        AlgebraPresentation::new(kappa, pairs).unwrap()
                    })
            })
        }

        fn with_monomials(
            max_m: usize,
        ) -> impl Strategy<Value = (AlgebraPresentation, [SignedMonomial; 3])> {
            presentation(max_m).prop_flat_map(|p| {
                let m = p.m();
                let mono = (any::<bool>(), 0u64..(1 << m)).prop_map(move |(s, e)| {
                    SignedMonomial::new(Sign::from_bool_minus(s), e, m).unwrap()
                });
                (Just(p), [mono.clone(), mono.clone(), mono])
            })
        }

        proptest! {
            #[test]
            fn associative((p, [x, y, z]) in with_monomials(6)) {
                let lhs = p.mul(&p.mul(&x, &y).unwrap(), &z).unwrap();
                let rhs = p.mul(&x, &p.mul(&y, &z).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn product_laws((p, [x, y, _z]) in with_monomials(6)) {
                let xy = p.mul(&x, &y).unwrap();
                let yx = p.mul(&y, &x).unwrap();
                prop_assert_eq!(xy.exps(), x.exps() ^ y.exps());
                prop_assert_eq!(xy.sign, p.commute_sign(&x, &y).unwrap() * yx.sign);
                prop_assert_eq!(p.square(&x).unwrap(), p.mul(&x, &x).unwrap().sign);
                let one = p.identity();
                prop_assert_eq!(p.mul(&one, &x).unwrap(), x);
                prop_assert_eq!(p.mul(&x, &one).unwrap(), x);
            }

            #[test]
            fn product_matches_word_expansion((p, [x, y, _z]) in with_monomials(5)) {
                let mut word = word_of(&x);
                word.extend(word_of(&y));
                let (sign, exps) = expand_word(&p, &word);
                let xy = p.mul(&x.with_sign(Sign::Plus), &y.with_sign(Sign::Plus)).unwrap();
                prop_assert_eq!((xy.sign, xy.exps()), (sign, exps));
            }

            #[test]
            fn record_roundtrip(p in presentation(8)) {
                let text = serde_json::to_string(&p).unwrap();
                let back: AlgebraPresentation = serde_json::from_str(&text).unwrap();
                prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
                prop_assert_eq!(back, p);
            }
        }
    }
}
