//! Integral bilinear lattices presented by symmetric Gram matrices.
//!
//! A lattice here is a free abelian group on a fixed generator list together
//! with the integer matrix of pairwise products. Everything in this module is
//! exact: pairings are evaluated in arbitrary precision integers and
//! definiteness is decided by rational symmetric elimination. No floating
//! point is used anywhere.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integral lattice given by a symmetric Gram matrix on a generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGramLattice")]
pub struct GramLattice {
    rank: usize,
    gram: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// Wire form of the lattice file format. Validation happens in `TryFrom`.
#[derive(Deserialize)]
struct RawGramLattice {
    rank: usize,
    gram: Vec<Vec<i64>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl TryFrom<RawGramLattice> for GramLattice {
    type Error = Error;

    fn try_from(raw: RawGramLattice) -> Result<Self> {
        let lattice = match raw.labels {
            Some(labels) => GramLattice::with_labels(raw.gram, labels)?,
            None => GramLattice::new(raw.gram)?,
        };
        if lattice.rank != raw.rank {
            return Err(Error::invalid_input(format!(
                "rank field is {} but gram is {}x{}",
                raw.rank,
                lattice.rank,
                lattice.rank
            )));
        }
        Ok(lattice)
    }
}

impl GramLattice {
    /// Builds a lattice from a square symmetric integer matrix.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        Self::build(gram, None)
    }

    /// Same as [`GramLattice::new`] with display names for the generators.
    pub fn with_labels(gram: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self> {
        Self::build(gram, Some(labels))
    }

    fn build(gram: Vec<Vec<i64>>, labels: Option<Vec<String>>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::invalid_input("rank must be positive"));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::invalid_input(format!(
                    "gram row {} has length {}, expected {}",
                    i,
                    row.len(),
                    rank
                )));
            }
        }
        for i in 0..rank {
            for j in (i + 1)..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::invalid_input(format!(
                        "gram is not symmetric at ({i},{j}): {} vs {}",
                        gram[i][j], gram[j][i]
                    )));
                }
            }
        }
        if let Some(ref labels) = labels {
            if labels.len() != rank {
                return Err(Error::invalid_input(format!(
                    "{} labels for rank {}",
                    labels.len(),
                    rank
                )));
            }
        }
        Ok(GramLattice { rank, gram, labels })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    pub fn diagonal_entry(&self, i: usize) -> i64 {
        self.gram[i][i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of generator `i`, falling back to `g{i+1}`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => format!("g{}", i + 1),
        }
    }

    /// Evaluates the bilinear form, `u^T gram v`, exactly.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> Result<BigInt> {
        if u.len() != self.rank || v.len() != self.rank {
            return Err(Error::dimension_mismatch(format!(
                "pairing expects vectors of length {}, got {} and {}",
                self.rank,
                u.len(),
                v.len()
            )));
        }
        let mut total = BigInt::zero();
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let mut row = BigInt::zero();
            for (j, &vj) in v.iter().enumerate() {
                if vj != 0 && self.gram[i][j] != 0 {
                    row += BigInt::from(self.gram[i][j] as i128 * vj as i128);
                }
            }
            total += BigInt::from(ui) * row;
        }
        Ok(total)
    }

    /// Block-diagonal sum of two lattices.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let rank = self.rank + other.rank;
        let mut gram = vec![vec![0i64; rank]; rank];
        for i in 0..self.rank {
            gram[i][..self.rank].copy_from_slice(&self.gram[i]);
        }
        for i in 0..other.rank {
            gram[self.rank + i][self.rank..].copy_from_slice(&other.gram[i]);
        }
        let labels = if self.labels.is_some() || other.labels.is_some() {
            let mut all: Vec<String> = (0..self.rank).map(|i| self.label(i)).collect();
            all.extend((0..other.rank).map(|i| other.label(i)));
            Some(all)
        } else {
            None
        };
        GramLattice { rank, gram, labels }
    }

    /// Exact definiteness classification of the form.
    ///
    /// The negated Gram matrix is run through symmetric rational elimination.
    /// A negative pivot, or a zero pivot with a nonzero residual row, shows
    /// some vector has positive square and the class is `Other`. Otherwise the
    /// form is negative semidefinite, and it is negative definite exactly when
    /// no zero pivot occurred. In the degenerate case a nonzero integer kernel
    /// vector of the Gram matrix is produced as a certificate.
    pub fn classify_definiteness(&self) -> DefinitenessClass {
        let n = self.rank;
        // p = -gram over the rationals
        let mut p: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(BigInt::from(-self.gram[i][j])))
                    .collect()
            })
            .collect();
        let mut degenerate = false;
        for k in 0..n {
            if p[k][k].is_negative() {
                return DefinitenessClass::Other;
            }
            if p[k][k].is_zero() {
                if ((k + 1)..n).any(|j| !p[k][j].is_zero()) {
                    // a 2x2 principal block [[0, b], [b, *]] with b != 0
                    return DefinitenessClass::Other;
                }
                degenerate = true;
                continue;
            }
            let pivot = p[k][k].clone();
            for r in (k + 1)..n {
                if p[r][k].is_zero() {
                    continue;
                }
                let f = &p[r][k] / &pivot;
                for c in k..n {
                    let sub = &f * &p[k][c];
                    p[r][c] = &p[r][c] - &sub;
                }
            }
        }
        if degenerate {
            let kernel = self
                .integer_kernel_vector()
                .expect("degenerate form has a nonzero kernel vector");
            DefinitenessClass::NegativeSemidefiniteDegenerate { kernel }
        } else {
            DefinitenessClass::NegativeDefinite
        }
    }

    /// A nonzero primitive integer vector `v` with `gram v = 0`, if any.
    ///
    /// The leading nonzero coordinate is normalized to be positive.
    pub fn integer_kernel_vector(&self) -> Option<Vec<BigInt>> {
        let n = self.rank;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(BigInt::from(self.gram[i][j])))
                    .collect()
            })
            .collect();
        // reduced row echelon form
        let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; n];
        let mut row = 0usize;
        for col in 0..n {
            let Some(pr) = (row..n).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, pr);
            let inv = a[row][col].clone();
            for c in col..n {
                a[row][c] = &a[row][c] / &inv;
            }
            for r in 0..n {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..n {
                        let sub = &f * &a[row][c];
                        a[r][c] = &a[r][c] - &sub;
                    }
                }
            }
            pivot_row_of_col[col] = Some(row);
            row += 1;
            if row == n {
                break;
            }
        }
        let free_col = (0..n).find(|&c| pivot_row_of_col[c].is_none())?;
        let mut x = vec![BigRational::zero(); n];
        x[free_col] = BigRational::one();
        for c in 0..n {
            if let Some(pr) = pivot_row_of_col[c] {
                x[c] = -a[pr][free_col].clone();
            }
        }
        // clear denominators and divide by the content
        let lcm = x
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut v: Vec<BigInt> = x.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
        let gcd = v.iter().fold(BigInt::zero(), |acc, t| acc.gcd(t));
        if !gcd.is_zero() && !gcd.is_one() {
            for t in v.iter_mut() {
                *t = &*t / &gcd;
            }
        }
        if let Some(first) = v.iter().find(|t| !t.is_zero()) {
            if first.is_negative() {
                for t in v.iter_mut() {
                    *t = -t.clone();
                }
            }
        }
        Some(v)
    }

    /// Checks the defining condition of a Gram representation: for all i, j
    /// the dot product of image rows i and j equals `-gram[i][j]`, so the
    /// pairing in the diagonal target matches the source pairing.
    pub fn verify_representation(&self, rep: &GramRepresentation) -> Result<bool> {
        if rep.source_rank() != self.rank {
            return Err(Error::dimension_mismatch(format!(
                "representation has {} rows for a rank {} lattice",
                rep.source_rank(),
                self.rank
            )));
        }
        let images = rep.images();
        for i in 0..self.rank {
            for j in i..self.rank {
                let mut dot = BigInt::zero();
                for k in 0..rep.target_m() {
                    let prod = images[i][k] as i128 * images[j][k] as i128;
                    if prod != 0 {
                        dot += BigInt::from(prod);
                    }
                }
                if dot != -BigInt::from(self.gram[i][j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .gram
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.gram {
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// The standard negative definite diagonal lattice of rank `m`: generators
/// `e_1, ..., e_m` with `e_i . e_j = -delta_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalTarget {
    m: usize,
}

impl DiagonalTarget {
    pub fn new(m: usize) -> Self {
        DiagonalTarget { m }
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

impl fmt::Display for DiagonalTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{}", self.m)
    }
}

/// An assignment of an integer coordinate vector in a diagonal target to each
/// source generator. Row `i` holds the coordinates of the image of generator
/// `i`; the assignment is valid for a lattice when the target pairing of rows
/// reproduces the Gram matrix (see [`GramLattice::verify_representation`]).
/// Injectivity of the induced map is a separate condition, tracked by the
/// search layer, not by this type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRepresentation")]
pub struct GramRepresentation {
    source_rank: usize,
    target_m: usize,
    images: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawRepresentation {
    source_rank: usize,
    target_m: usize,
    images: Vec<Vec<i64>>,
}

impl TryFrom<RawRepresentation> for GramRepresentation {
    type Error = Error;

    fn try_from(raw: RawRepresentation) -> Result<Self> {
        let rep = GramRepresentation::new(raw.images, raw.target_m)?;
        if rep.source_rank != raw.source_rank {
            return Err(Error::invalid_input(format!(
                "source_rank field is {} but images has {} rows",
                raw.source_rank, rep.source_rank
            )));
        }
        Ok(rep)
    }
}

impl GramRepresentation {
    pub fn new(images: Vec<Vec<i64>>, target_m: usize) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::invalid_input("representation needs at least one row"));
        }
        for (i, row) in images.iter().enumerate() {
            if row.len() != target_m {
                return Err(Error::invalid_input(format!(
                    "image row {} has length {}, expected {}",
                    i,
                    row.len(),
                    target_m
                )));
            }
        }
        Ok(GramRepresentation {
            source_rank: images.len(),
            target_m,
            images,
        })
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_m(&self) -> usize {
        self.target_m
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    /// The same assignment viewed in a larger diagonal target, with `extra`
    /// zero coordinates appended to every image. All pairings are unchanged.
    pub fn zero_padded(&self, extra: usize) -> GramRepresentation {
        let images = self
            .images
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.extend(std::iter::repeat_n(0, extra));
                r
            })
            .collect();
        GramRepresentation {
            source_rank: self.source_rank,
            target_m: self.target_m + extra,
            images,
        }
    }
}

/// Exact definiteness class of a Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefinitenessClass {
    NegativeDefinite,
    /// Negative semidefinite with nontrivial radical; carries a nonzero
    /// integer kernel vector of the Gram matrix as a certificate.
    NegativeSemidefiniteDegenerate { kernel: Vec<BigInt> },
    /// Not negative semidefinite: some integer vector has positive square.
    Other,
}

impl DefinitenessClass {
    pub fn is_other(&self) -> bool {
        matches!(self, DefinitenessClass::Other)
    }

    pub fn is_negative_definite(&self) -> bool {
        matches!(self, DefinitenessClass::NegativeDefinite)
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, DefinitenessClass::NegativeSemidefiniteDegenerate { .. })
    }
}

impl fmt::Display for DefinitenessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefinitenessClass::NegativeDefinite => write!(f, "negative definite"),
            DefinitenessClass::NegativeSemidefiniteDegenerate { kernel } => {
                let coords: Vec<String> = kernel.iter().map(|x| x.to_string()).collect();
                write!(
                    f,
                    "negative semidefinite, degenerate; kernel ({})",
                    coords.join(",")
                )
            }
            DefinitenessClass::Other => write!(f, "not negative semidefinite"),
        }
    }
}

/// Wire form: `{"class": "...", "kernel": ["1","2",...]?}`. Kernel entries
/// are decimal strings since they are arbitrary precision integers.
#[derive(Serialize, Deserialize, Clone)]
struct DefinitenessRepr {
    class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kernel: Option<Vec<String>>,
}

impl From<DefinitenessClass> for DefinitenessRepr {
    fn from(c: DefinitenessClass) -> Self {
        match c {
            DefinitenessClass::NegativeDefinite => DefinitenessRepr {
                class: "negative_definite".into(),
                kernel: None,
            },
            DefinitenessClass::NegativeSemidefiniteDegenerate { kernel } => DefinitenessRepr {
                class: "negative_semidefinite_degenerate".into(),
                kernel: Some(kernel.iter().map(|x| x.to_string()).collect()),
            },
            DefinitenessClass::Other => DefinitenessRepr {
                class: "other".into(),
                kernel: None,
            },
        }
    }
}

impl TryFrom<DefinitenessRepr> for DefinitenessClass {
    type Error = Error;

    fn try_from(repr: DefinitenessRepr) -> Result<Self> {
        match repr.class.as_str() {
            "negative_definite" => Ok(DefinitenessClass::NegativeDefinite),
            "other" => Ok(DefinitenessClass::Other),
            "negative_semidefinite_degenerate" => {
                let kernel = repr
                    .kernel
                    .ok_or_else(|| Error::invalid_input("degenerate class without kernel"))?
                    .iter()
                    .map(|s| {
                        s.parse::<BigInt>()
                            .map_err(|_| Error::invalid_input(format!("bad kernel entry {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(DefinitenessClass::NegativeSemidefiniteDegenerate { kernel })
            }
            other => Err(Error::invalid_input(format!(
                "unknown definiteness class {other:?}"
            ))),
        }
    }
}

impl Serialize for DefinitenessClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DefinitenessRepr::from(self.clone()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DefinitenessClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = DefinitenessRepr::deserialize(deserializer)?;
        DefinitenessClass::try_from(repr).map_err(serde::de::Error::custom)
    }
}
