//! Wedderburn structure of a decomposed algebra and the counts and orders of
//! its irreducible representations.
//!
//! With the centre split off, the algebra is a tensor product of central
//! factors `[β]` (`²R` when `β² = 1`, `C` when `β² = -1`) and pair factors
//! `[γ, δ]` (`H` when both square to -1, `R(2)` otherwise). Two complex factors
//! give `²C`, a complex factor absorbs `H` into `C(2)`, and `H ⊗ H = R(4)`, so
//! the result is fixed by whether some central square is -1 and by the parity
//! of the number of quaternionic pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, Sign};
use crate::error::{Error, Result};
use crate::symplectic::{decompose, Decomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StructureCase {
    /// `^{2^r} R(2^s)`
    Real,
    /// `^{2^{r-1}} C(2^s)`
    Complex,
    /// `^{2^r} H(2^{s-1})`
    Quaternion,
}

impl StructureCase {
    pub fn letter(self) -> char {
        match self {
            StructureCase::Real => 'R',
            StructureCase::Complex => 'C',
            StructureCase::Quaternion => 'H',
        }
    }

    /// Real dimension of the division algebra.
    pub fn division_dim(self) -> u32 {
        match self {
            StructureCase::Real => 1,
            StructureCase::Complex => 2,
            StructureCase::Quaternion => 4,
        }
    }
}

impl fmt::Display for StructureCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureCase::Real => "REAL",
            StructureCase::Complex => "COMPLEX",
            StructureCase::Quaternion => "QUATERNION",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WedderburnType {
    pub case: StructureCase,
    pub r: usize,
    pub s: usize,
    /// Number of simple components, equal to the number of inequivalent irreps.
    pub num_irreps: u64,
    /// Real dimension of each irreducible representation.
    pub irrep_order: u64,
    pub label: String,
}

impl WedderburnType {
    fn new(case: StructureCase, r: usize, s: usize) -> Self {
        let (num_irreps, irrep_order) = match case {
            StructureCase::Real => (1u64 << r, 1u64 << s),
            StructureCase::Complex => (1u64 << (r - 1), 1u64 << (s + 1)),
            StructureCase::Quaternion => (1u64 << r, 1u64 << (s + 1)),
        };
        let mut w = WedderburnType {
            case,
            r,
            s,
            num_irreps,
            irrep_order,
            label: String::new(),
        };
        w.label = format!("^{} {}({})", w.num_irreps, case.letter(), w.matrix_size());
        w
    }

    /// Size `N` of the matrix algebra `D(N)` in each simple component.
    pub fn matrix_size(&self) -> u64 {
        match self.case {
            StructureCase::Real | StructureCase::Complex => 1 << self.s,
            StructureCase::Quaternion => 1 << (self.s - 1),
        }
    }

    /// Sum of the real dimensions of the simple components.
    pub fn total_dimension(&self) -> u128 {
        let n = self.matrix_size() as u128;
        self.num_irreps as u128 * self.case.division_dim() as u128 * n * n
    }

    /// The label in table typography, see [`normalize_label`].
    pub fn table_label(&self) -> String {
        normalize_label(&self.label).expect("labels produced here are well-formed")
    }
}

impl fmt::Display for WedderburnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} r={} s={} irreps={} order={}",
            self.label, self.r, self.s, self.num_irreps, self.irrep_order
        )
    }
}

pub fn classify(d: &Decomposition) -> WedderburnType {
    let (r, s) = (d.r(), d.s());
    let complex_centre = d.centrals.iter().any(|c| c.square == Sign::Minus);
    let quaternionic = d.pairs.iter().filter(|p| p.is_quaternionic()).count();
    let case = if complex_centre {
        StructureCase::Complex
    } else if quaternionic % 2 == 1 {
        StructureCase::Quaternion
    } else {
        StructureCase::Real
    };
    WedderburnType::new(case, r, s)
}

/// Presentation of `R_{p,0} ⊗ R_{0,q}`: generators with equal squares
/// anticommute, generators with opposite squares commute.
pub fn tensor_presentation(p: usize, q: usize) -> Result<AlgebraPresentation> {
    let kappa: Vec<Sign> = std::iter::repeat_n(Sign::Plus, p)
        .chain(std::iter::repeat_n(Sign::Minus, q))
        .collect();
    let k = kappa.clone();
    AlgebraPresentation::from_fn(kappa, move |i, j| k[i] == k[j])
}

/// Structure label and irreducible order of `R_{p,0} ⊗ R_{0,q}`.
pub fn table_entry(p: usize, q: usize) -> Result<(String, u64)> {
    let w = classify(&decompose(&tensor_presentation(p, q)?));
    Ok((w.label, w.irrep_order))
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

/// Rewrites an API label `"^k D(N)"` into table typography: the multiplicity
/// becomes a superscript prefix, and `k = 1` or `N = 1` are dropped.
/// `"^2 C(1)"` becomes `"²C"`, `"^1 R(16)"` becomes `"R(16)"`.
pub fn normalize_label(label: &str) -> Result<String> {
    let bad = || Error::Parse(format!("malformed structure label {label:?}"));
    let rest = label.strip_prefix('^').ok_or_else(bad)?;
    let (count, rest) = rest.split_once(' ').ok_or_else(bad)?;
    let mut chars = rest.chars();
    let letter = chars.next().filter(|c| "RCH".contains(*c)).ok_or_else(bad)?;
    let size = chars
        .as_str()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let count: u64 = count.parse().map_err(|_| bad())?;
    let size: u64 = size.parse().map_err(|_| bad())?;

    let mut out = String::new();
    if count != 1 {
        out.extend(
            count
                .to_string()
                .bytes()
                .map(|b| SUPERSCRIPTS[(b - b'0') as usize]),
        );
    }
    out.push(letter);
    if size != 1 {
        out.push_str(&format!("({size})"));
    }
    Ok(out)
}

/// Table-typography label for `R_{p,0} ⊗ R_{0,q}`; `(0, 0)` is the scalar
/// algebra `R`.
pub fn grid_label(p: usize, q: usize) -> Result<String> {
    if p + q == 0 {
        return Ok("R".to_string());
    }
    normalize_label(&table_entry(p, q)?.0)
}

/// The `(max+1) × (max+1)` grid of table labels, rows `p`, columns `q`,
/// tab-separated, one row per line.
pub fn render_grid(max: usize) -> Result<String> {
    let mut out = String::new();
    for p in 0..=max {
        let row = (0..=max)
            .map(|q| grid_label(p, q))
            .collect::<Result<Vec<_>>>()?;
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    Ok(out)
}

/// Sums `p + q` covered by the irreducible-dimension tables.
pub const IRREP_TABLE_SUMS: [usize; 3] = [2, 4, 8];

/// For each total, a `# p+q=<n>` header then `p  q  label  order` rows with
/// `p` descending.
pub fn render_irrep_tables(sums: &[usize]) -> Result<String> {
    let mut out = String::new();
    for &n in sums {
        out.push_str(&format!("# p+q={n}\n"));
        for p in (0..=n).rev() {
            let (label, order) = table_entry(p, n - p)?;
            out.push_str(&format!("{p}\t{}\t{}\t{order}\n", n - p, normalize_label(&label)?));
        }
    }
    Ok(out)
}
