//! Concrete lattices from blown-up projective planes and the cap parameter
//! arithmetic.
//!
//! Homology classes in the k-fold blow-up are written in the basis
//! `h, e_1, ..., e_k` with `h.h = 1`, `e_i.e_j = -delta_ij` and `h.e_i = 0`.
//! The lattice fed to the embedding search is spanned by the chain
//! `e_1-e_2, ..., e_{2d-1}-e_{2d}` together with `h-e_1-...-e_d`, and the
//! cap over a circle bundle with parameters (g, n) removes a neighborhood of
//! the handle-augmented proper transform of a degree d+2 plane curve through
//! the k blown-up points, where k = (d+2)^2 - n.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::GramLattice;

/// A homology class `a.h + sum_i c_i.e_i` in the k-fold blow-up. The ambient
/// pairing has signature (1, k): `x.y = a a' - sum_i c_i c_i'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupClass {
    h: i64,
    e: Vec<i64>,
}

impl BlowupClass {
    pub fn new(h: i64, e: Vec<i64>) -> Self {
        BlowupClass { h, e }
    }

    pub fn h_coefficient(&self) -> i64 {
        self.h
    }

    pub fn e_coefficients(&self) -> &[i64] {
        &self.e
    }

    /// Number of exceptional coordinates the class is written in.
    pub fn k(&self) -> usize {
        self.e.len()
    }

    /// Signature (1, k) pairing with another class on the same blow-up.
    pub fn pairing(&self, other: &BlowupClass) -> Result<i64> {
        if self.k() != other.k() {
            return Err(Error::dimension_mismatch(format!(
                "classes live on blow-ups at {} and {} points",
                self.k(),
                other.k()
            )));
        }
        let mut acc = self.h as i128 * other.h as i128;
        for (a, b) in self.e.iter().zip(&other.e) {
            acc -= *a as i128 * *b as i128;
        }
        i64::try_from(acc)
            .map_err(|_| Error::invalid_input("pairing value exceeds 64 bits".to_string()))
    }

    pub fn self_pairing(&self) -> Result<i64> {
        self.pairing(self)
    }
}

impl fmt::Display for BlowupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        let mut term = |f: &mut fmt::Formatter<'_>, coeff: i64, name: String| -> fmt::Result {
            if coeff == 0 {
                return Ok(());
            }
            if wrote {
                write!(f, "{}", if coeff < 0 { "-" } else { "+" })?;
            } else if coeff < 0 {
                write!(f, "-")?;
            }
            if coeff.abs() != 1 {
                write!(f, "{}", coeff.abs())?;
            }
            write!(f, "{name}")?;
            wrote = true;
            Ok(())
        };
        term(f, self.h, "h".to_string())?;
        for (i, &c) in self.e.iter().enumerate() {
            term(f, c, format!("e{}", i + 1))?;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Cap parameters for a circle bundle boundary: the blow-up count, curve
/// degree and handle bookkeeping determined by (g, n) and the chosen d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapData {
    pub g: i64,
    pub n: i64,
    pub d: i64,
    /// Number of blown-up points, `(d+2)^2 - n`.
    pub k: i64,
    /// Handles added on top of the curve genus: `g - d(d+1)/2`.
    pub fake_handles: i64,
    pub curve_degree: i64,
    /// Self-pairing of the proper transform, equal to n by construction.
    pub proper_transform_square: i64,
}

impl CapData {
    fn new(g: i64, n: i64, d: i64) -> Self {
        let curve_degree = d + 2;
        let k = curve_degree * curve_degree - n;
        let fake_handles = g - plane_curve_genus(curve_degree);
        let data = CapData {
            g,
            n,
            d,
            k,
            fake_handles,
            curve_degree,
            proper_transform_square: curve_degree * curve_degree - k,
        };
        debug_assert!(data.k >= 2 * data.d);
        debug_assert!(data.fake_handles >= 0);
        debug_assert_eq!(data.proper_transform_square, n);
        data
    }
}

/// Genus of a smooth plane curve of the given degree, (deg-1)(deg-2)/2.
fn plane_curve_genus(degree: i64) -> i64 {
    (degree - 1) * (degree - 2) / 2
}

/// Intersection form of the projective plane blown up at k points:
/// diag(1, -1, ..., -1) on the basis `h, e_1, ..., e_k`.
pub fn blowup_lattice(k: usize) -> GramLattice {
    let rank = k + 1;
    let mut gram = vec![vec![0i64; rank]; rank];
    gram[0][0] = 1;
    for i in 1..rank {
        gram[i][i] = -1;
    }
    let mut labels = vec!["h".to_string()];
    labels.extend((1..=k).map(|i| format!("e{i}")));
    GramLattice::with_labels(gram, labels).expect("diagonal matrix is a valid Gram matrix")
}

/// Gram matrix of the span of the given classes inside the signature (1, k)
/// blow-up form. Every class must be written with k exceptional coordinates.
pub fn sublattice_from_classes(k: usize, classes: &[BlowupClass]) -> Result<GramLattice> {
    if classes.is_empty() {
        return Err(Error::invalid_input("need at least one class"));
    }
    for (i, c) in classes.iter().enumerate() {
        if c.k() != k {
            return Err(Error::dimension_mismatch(format!(
                "class {} has {} exceptional coordinates, expected {k}",
                i,
                c.k()
            )));
        }
    }
    let rank = classes.len();
    let mut gram = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            gram[i][j] = classes[i].pairing(&classes[j])?;
        }
    }
    let labels = classes.iter().map(|c| c.to_string()).collect();
    GramLattice::with_labels(gram, labels)
}

/// The generator classes of the search lattice on the blow-up at k points:
/// the chain `e_1-e_2, ..., e_{2d-1}-e_{2d}` followed by `h-e_1-...-e_d`.
/// Requires `d >= 1` and `k >= 2d`.
pub fn ld_generator_classes(d: usize, k: usize) -> Vec<BlowupClass> {
    assert!(d >= 1, "d must be positive");
    assert!(k >= 2 * d, "need k >= 2d, got k={k}, d={d}");
    let mut classes = Vec::with_capacity(2 * d);
    for i in 0..(2 * d - 1) {
        let mut e = vec![0i64; k];
        e[i] = 1;
        e[i + 1] = -1;
        classes.push(BlowupClass::new(0, e));
    }
    let mut e = vec![0i64; k];
    for coeff in e.iter_mut().take(d) {
        *coeff = -1;
    }
    classes.push(BlowupClass::new(1, e));
    classes
}

/// The rank 2d lattice the obstruction search runs on: a chain of 2d-1
/// generators of square -2 with consecutive pairings 1, plus one generator
/// of square -(d-1) pairing 1 with the d-th chain generator. Built directly
/// from its Gram matrix; agrees with [`sublattice_from_classes`] on the
/// generator classes.
pub fn ld_lattice(d: usize) -> GramLattice {
    assert!(d >= 1, "d must be positive");
    let rank = 2 * d;
    let mut gram = vec![vec![0i64; rank]; rank];
    for i in 0..(rank - 1) {
        gram[i][i] = -2;
    }
    gram[rank - 1][rank - 1] = -(d as i64 - 1);
    for i in 0..(rank - 2) {
        gram[i][i + 1] = 1;
        gram[i + 1][i] = 1;
    }
    gram[d - 1][rank - 1] = 1;
    gram[rank - 1][d - 1] = 1;
    let labels = ld_generator_classes(d, 2 * d)
        .iter()
        .map(|c| c.to_string())
        .collect();
    GramLattice::with_labels(gram, labels).expect("constructed matrix is symmetric")
}

/// Proper transform of a degree d+2 plane curve through the k blown-up
/// points: `(d+2)h - e_1 - ... - e_k`, of self-pairing `(d+2)^2 - k`.
pub fn proper_transform_class(d: usize, k: usize) -> BlowupClass {
    assert!(d >= 1, "d must be positive");
    BlowupClass::new(d as i64 + 2, vec![-1; k])
}

/// Cap parameters for the pair (g, n): the smallest positive d with
/// `d(d+1) <= 2g` and `n <= (d+1)^2 + 3`, provided `2g <= n`. Any n in that
/// window is realized by `k = (d+2)^2 - n >= 2d` blown-up points. `None`
/// means the pair is outside the covered range.
pub fn cap_parameters(g: i64, n: i64) -> Option<CapData> {
    if g < 1 || n < 2 * g {
        return None;
    }
    let mut d = 1i64;
    while d * (d + 1) <= 2 * g {
        if n <= (d + 1) * (d + 1) + 3 {
            return Some(CapData::new(g, n, d));
        }
        d += 1;
    }
    None
}

/// Pairing of each generator class with the proper transform class, as
/// (label, value) rows. The chain generators always pair 0. The h-type
/// generator pairs (d+2) - d = 2 for every d and k >= 2d; whether that is
/// compatible with representing all generators by surfaces in the curve
/// complement is an open question the pipeline surfaces verbatim.
pub fn orthogonality_report(d: usize, k: usize) -> Vec<(String, i64)> {
    assert!(d >= 1, "d must be positive");
    assert!(k >= 2 * d, "need k >= 2d, got k={k}, d={d}");
    let transform = proper_transform_class(d, k);
    ld_generator_classes(d, k)
        .iter()
        .map(|class| {
            let value = class
                .pairing(&transform)
                .expect("classes share the same blow-up");
            (class.to_string(), value)
        })
        .collect()
}
