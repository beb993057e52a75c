//! Spin and spin-c arithmetic on disk and circle bundles over surfaces.
//!
//! For the circle bundle with base genus g and Euler number n >= 1, the
//! torsion part of H^2 is Z/n generated by F, the Poincare dual of a fiber.
//! The torsion spin-c structures are t_0, ..., t_{n-1} with
//! `c1(t_e) = 2(1-g+e) F`, and `t_{e+n} = t_e` is built into the residue
//! representation. Only the torsion summand is modeled; every formula here
//! lives there. The two distinguished tight contact structures, written
//! xi_0 and xi_1 and defined once n >= 2g, induce t_{n-1} and t_{2g-1}
//! and carry Euler class -2gF and +2gF respectively.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oriented circle bundle over the closed surface of genus `g >= 1` with
/// Euler number `n`. Operations on torsion classes require `n >= 1`; the
/// contact structures require `n >= 2g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleBundle {
    g: i64,
    n: i64,
}

impl CircleBundle {
    pub fn new(g: i64, n: i64) -> Result<Self> {
        if g < 1 {
            return Err(Error::invalid_input(format!("genus must be >= 1, got {g}")));
        }
        Ok(CircleBundle { g, n })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    fn require_torsion(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::out_of_domain(format!(
                "torsion classes need Euler number >= 1, got {}",
                self.n
            )));
        }
        Ok(())
    }

    fn require_contact(&self) -> Result<()> {
        self.require_torsion()?;
        if self.n < 2 * self.g {
            return Err(Error::out_of_domain(format!(
                "contact structures are defined for n >= 2g, got g={}, n={}",
                self.g, self.n
            )));
        }
        Ok(())
    }
}

/// One of the two distinguished tight contact structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContactStructure {
    Xi0,
    Xi1,
}

impl ContactStructure {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            0 => Ok(ContactStructure::Xi0),
            1 => Ok(ContactStructure::Xi1),
            other => Err(Error::invalid_input(format!("contact index must be 0 or 1, got {other}"))),
        }
    }

    pub fn index(self) -> i64 {
        match self {
            ContactStructure::Xi0 => 0,
            ContactStructure::Xi1 => 1,
        }
    }

    /// (-1)^i
    fn sign(self) -> i64 {
        match self {
            ContactStructure::Xi0 => 1,
            ContactStructure::Xi1 => -1,
        }
    }
}

impl fmt::Display for ContactStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xi_{}", self.index())
    }
}

/// Torsion spin-c structure t_e on a circle bundle, indexed by e modulo n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsionSpinc {
    bundle: CircleBundle,
    e: i64,
}

impl TorsionSpinc {
    /// Accepts any integer index and reduces it modulo n.
    pub fn new(bundle: CircleBundle, e: i64) -> Result<Self> {
        bundle.require_torsion()?;
        Ok(TorsionSpinc {
            bundle,
            e: e.rem_euclid(bundle.n),
        })
    }

    pub fn bundle(&self) -> CircleBundle {
        self.bundle
    }

    pub fn e(&self) -> i64 {
        self.e
    }
}

impl fmt::Display for TorsionSpinc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{}", self.e)
    }
}

/// A torsion class written as a multiple of F, the Poincare dual of the
/// fiber; the coefficient is a residue modulo n since nF = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FMultiple {
    bundle: CircleBundle,
    coefficient: i64,
}

impl FMultiple {
    pub fn new(bundle: CircleBundle, coefficient: i64) -> Result<Self> {
        bundle.require_torsion()?;
        Ok(FMultiple {
            bundle,
            coefficient: coefficient.rem_euclid(bundle.n),
        })
    }

    pub fn coefficient(&self) -> i64 {
        self.coefficient
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient == 0
    }
}

impl fmt::Display for FMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*F", self.coefficient)
    }
}

/// Spin-c structure on the disk bundle over the genus g surface with Euler
/// number n, indexed by an unreduced integer e since H^2 is free there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiskSpinc {
    pub g: i64,
    pub n: i64,
    pub e: i64,
}

/// First Chern class of t_e: `2(1-g+e) F`.
pub fn c1_circle(t: &TorsionSpinc) -> FMultiple {
    let b = t.bundle;
    let raw = 2 * ((1 - b.g + t.e) as i128);
    FMultiple {
        bundle: b,
        coefficient: raw.rem_euclid(b.n as i128) as i64,
    }
}

/// First Chern class on the disk bundle: `2(1-g+e) + n`.
pub fn c1_disk(s: &DiskSpinc) -> i64 {
    let raw = 2 * ((1 - s.g + s.e) as i128) + s.n as i128;
    i64::try_from(raw).expect("c1 within 64 bits")
}

/// The torsion spin-c structures induced by spin structures, that is the
/// solutions of `2(1-g+e) = 0 mod n`: `t_{g-1}` alone for odd n, joined by
/// `t_{g+n/2-1}` for even n. Sorted by residue.
pub fn spin_structures_circle(b: &CircleBundle) -> Result<Vec<TorsionSpinc>> {
    b.require_torsion()?;
    let mut out = vec![TorsionSpinc::new(*b, b.g - 1)?];
    if b.n % 2 == 0 {
        out.push(TorsionSpinc::new(*b, b.g + b.n / 2 - 1)?);
    }
    out.sort_by_key(|t| t.e);
    out.dedup();
    Ok(out)
}

/// Spin-c structure induced by the contact structure: `t_{n-1}` for xi_0 and
/// `t_{2g-1}` for xi_1. The two coincide exactly when n = 2g.
pub fn contact_spinc(b: &CircleBundle, i: ContactStructure) -> Result<TorsionSpinc> {
    b.require_contact()?;
    let e = match i {
        ContactStructure::Xi0 => b.n - 1,
        ContactStructure::Xi1 => 2 * b.g - 1,
    };
    TorsionSpinc::new(*b, e)
}

/// Euler class of the contact structure as an oriented plane field:
/// `(-1)^{i+1} 2g F`.
pub fn euler_class_xi(b: &CircleBundle, i: ContactStructure) -> Result<FMultiple> {
    b.require_contact()?;
    FMultiple::new(*b, -i.sign() * 2 * b.g)
}

/// Poincare dual of the vanishing locus of the distinguished section of
/// xi_i, defined for even n: `(-1)^i (n/2 - g) F`.
pub fn vanishing_locus_pd(b: &CircleBundle, i: ContactStructure) -> Result<FMultiple> {
    b.require_contact()?;
    if b.n % 2 != 0 {
        return Err(Error::out_of_domain(format!(
            "the vanishing locus formula needs even n, got {}",
            b.n
        )));
    }
    FMultiple::new(*b, i.sign() * (b.n / 2 - b.g))
}

/// Consistency identity relating the contact spin-c structure to the spin
/// structure `t_v = t_{g+n/2-1}` and the vanishing locus: checks
/// `(g + n/2 - 1) + (-1)^i (n/2 - g) = e(xi_i) mod n`. Defined for even n.
pub fn spincform_check(b: &CircleBundle, i: ContactStructure) -> Result<bool> {
    b.require_contact()?;
    if b.n % 2 != 0 {
        return Err(Error::out_of_domain(format!(
            "the spin structure t_v needs even n, got {}",
            b.n
        )));
    }
    let t_v = b.g + b.n / 2 - 1;
    let shifted = (t_v + i.sign() * (b.n / 2 - b.g)).rem_euclid(b.n);
    Ok(shifted == contact_spinc(b, i)?.e())
}
