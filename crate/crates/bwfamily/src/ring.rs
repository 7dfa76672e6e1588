//! Arithmetic in `Q[x]/(r(x))` for irreducible `r`.
//!
//! The Brezing-Weng construction works inside a number field presented as a
//! quotient ring: the subgroup-order polynomial `r(x)` is irreducible, the
//! quotient is a field, and the image of a primitive `k`-th root of unity in
//! it drives everything else. [`ResidueRing::new`] verifies irreducibility up
//! front, so inversion by the extended Euclidean algorithm can never meet a
//! zero divisor.
//!
//! Elements are reduced representatives of degree below `deg r`. Two rings
//! are the same ring when their monic moduli are equal; identity is by value,
//! not by handle.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cyclo::cyclotomic;
use crate::irred::{check_irreducible, Inconclusive, Irreducibility};
use crate::poly::QPoly;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("modulus must be nonconstant")]
    ConstantModulus,
    #[error("modulus is reducible; a nontrivial factor is {factor}")]
    ReducibleModulus { factor: QPoly },
    #[error(transparent)]
    IrreducibilityInconclusive(#[from] Inconclusive),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("zero element has no inverse")]
    ZeroInverse,
    #[error("{z} is not a primitive {k}-th root of unity: Phi_{k}(z) = {value} != 0")]
    NotPrimitiveRoot { k: u64, z: QPoly, value: QPoly },
}

struct RingRepr {
    modulus: QPoly,
    monic: QPoly,
    degree: usize,
}

/// The field `Q[x]/(r(x))`.
#[derive(Clone)]
pub struct ResidueRing {
    repr: Arc<RingRepr>,
}

impl PartialEq for ResidueRing {
    fn eq(&self, other: &Self) -> bool {
        self.repr.monic == other.repr.monic
    }
}

impl Eq for ResidueRing {}

impl fmt::Debug for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueRing(Q[x]/({}))", self.repr.modulus)
    }
}

impl ResidueRing {
    /// Builds the quotient ring, verifying that the modulus is nonconstant
    /// and irreducible over `Q`.
    pub fn new(modulus: QPoly) -> Result<Self, RingError> {
        if modulus.degree().unwrap_or(0) < 1 {
            return Err(RingError::ConstantModulus);
        }
        match check_irreducible(&modulus)? {
            Irreducibility::Irreducible => {}
            Irreducibility::Reducible(factor) => {
                return Err(RingError::ReducibleModulus { factor });
            }
        }
        let monic = modulus.monic();
        let degree = modulus.degree().unwrap();
        Ok(ResidueRing {
            repr: Arc::new(RingRepr {
                modulus,
                monic,
                degree,
            }),
        })
    }

    /// The modulus as supplied (not necessarily monic).
    pub fn modulus(&self) -> &QPoly {
        &self.repr.modulus
    }

    /// The monic normalization of the modulus, used for reduction.
    pub fn monic_modulus(&self) -> &QPoly {
        &self.repr.monic
    }

    pub fn degree(&self) -> usize {
        self.repr.degree
    }

    /// The residue of an arbitrary polynomial.
    pub fn element(&self, p: &QPoly) -> ResidueElement {
        let rep = p.rem(&self.repr.monic).expect("modulus is nonzero");
        ResidueElement {
            ring: self.clone(),
            rep,
        }
    }

    pub fn zero(&self) -> ResidueElement {
        self.element(&QPoly::zero())
    }

    pub fn one(&self) -> ResidueElement {
        self.element(&QPoly::one())
    }

    /// The image of `x`, the ring's generator.
    pub fn generator(&self) -> ResidueElement {
        self.element(&QPoly::x())
    }
}

/// A reduced representative in a [`ResidueRing`].
#[derive(Clone, PartialEq, Eq)]
pub struct ResidueElement {
    ring: ResidueRing,
    rep: QPoly,
}

impl fmt::Debug for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueElement({})", self.rep)
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl ResidueElement {
    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    /// The representative polynomial, of degree below `deg r`.
    pub fn representative(&self) -> &QPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn check_ring(&self, other: &Self) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        Ok(self.ring.element(&(&self.rep + &other.rep)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        Ok(self.ring.element(&(&self.rep - &other.rep)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        Ok(self.ring.element(&(&self.rep * &other.rep)))
    }

    pub fn neg(&self) -> Self {
        self.ring.element(&-&self.rep)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.ring.element(&self.rep.scale(c))
    }

    /// Multiplicative inverse. The ring is a field, so only zero fails.
    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroInverse);
        }
        let (g, u, _) = self.rep.extended_gcd(&self.ring.repr.monic);
        debug_assert!(g.is_one(), "modulus is irreducible, gcd must be 1");
        Ok(self.ring.element(&u))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Evaluates an arbitrary polynomial at this element (Horner in the
    /// ring).
    pub fn substitute_into(&self, f: &QPoly) -> Self {
        let mut acc = self.ring.zero();
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same ring");
            acc = self.ring.element(&(&acc.rep + &QPoly::constant(c.clone())));
        }
        acc
    }

    /// Flips the sign if the representative's leading coefficient is
    /// negative.
    pub fn normalize_sign(&self) -> Self {
        self.ring.element(&self.rep.normalize_sign())
    }
}

/// A validated image of a primitive `k`-th root of unity in a residue ring.
///
/// In a field of characteristic zero, `Phi_k(z) = 0` holds exactly for the
/// primitive `k`-th roots, so construction checks that single identity
/// rather than enumerating orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaImage {
    k: u64,
    z: ResidueElement,
}

impl ZetaImage {
    pub fn new(k: u64, z: ResidueElement) -> Result<Self, RingError> {
        assert!(k >= 1, "roots of unity are indexed from 1");
        let phi = cyclotomic(k);
        let value = z.substitute_into(&phi);
        if !value.is_zero() {
            return Err(RingError::NotPrimitiveRoot {
                k,
                z: z.rep.clone(),
                value: value.rep.clone(),
            });
        }
        Ok(ZetaImage { k, z })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn element(&self) -> &ResidueElement {
        &self.z
    }

    pub fn ring(&self) -> &ResidueRing {
        self.z.ring()
    }
}
