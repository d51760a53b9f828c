//! The degree-one cohomology classes driving the quantization count: the
//! Kähler (Manton–Nasir) class, the quantum line bundle class, the first
//! Chern class of the tangent bundle and the canonical class, together
//! with the integrality / positivity / vanishing predicates.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingParams};

/// Physical parameters: genus g, vortex number N and the area quanta
/// k = A/4π (the surface area is A = 4πk). k is stored as a rational so
/// bad input can be diagnosed instead of rejected at parse time;
/// integrality is the separate predicate [`ModuliParams::is_integral`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliParams {
    genus: u32,
    vortices: u32,
    area_quanta: BigRational,
}

impl ModuliParams {
    pub fn new(genus: u32, vortices: u32, area_quanta: BigRational) -> Result<Self> {
        if vortices == 0 {
            return Err(Error::InvalidParams(
                "number of vortices must be at least 1".into(),
            ));
        }
        if !area_quanta.is_positive() {
            return Err(Error::InvalidParams(format!(
                "area quanta must be positive, got {area_quanta}"
            )));
        }
        Ok(Self {
            genus,
            vortices,
            area_quanta,
        })
    }

    pub fn from_integers(genus: u32, vortices: u32, area_quanta: u64) -> Result<Self> {
        Self::new(genus, vortices, BigRational::from(BigInt::from(area_quanta)))
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn vortices(&self) -> u32 {
        self.vortices
    }

    pub fn area_quanta(&self) -> &BigRational {
        &self.area_quanta
    }

    pub fn ring_params(&self) -> Result<RingParams> {
        RingParams::new(self.genus, self.vortices)
    }

    /// True iff k is a positive integer, which is exactly when the
    /// Kähler class is integral and a quantum line bundle exists.
    pub fn is_integral(&self) -> bool {
        is_positive_integer(&self.area_quanta)
    }

    /// True iff k is a positive integer with k > max(N, g−1): the regime
    /// in which higher cohomology vanishes, so the Euler characteristic
    /// really is the Hilbert-space dimension.
    pub fn vanishing_guaranteed(&self) -> bool {
        let threshold = i64::from(self.vortices).max(i64::from(self.genus) - 1);
        self.is_integral() && self.area_quanta > BigRational::from(BigInt::from(threshold))
    }
}

pub(crate) fn is_positive_integer(k: &BigRational) -> bool {
    k.is_integer() && k.is_positive()
}

/// Which geometric object a class describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassRole {
    Kahler,
    QuantumLine,
    TangentChern,
    Canonical,
    Custom,
}

/// A complex-degree-1 class a·η + Σ_i b_i·σ_i with exact rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    eta_coeff: BigRational,
    sigma_coeffs: Vec<BigRational>,
    role: ClassRole,
}

impl CohomologyClass {
    pub fn custom(eta_coeff: BigRational, sigma_coeffs: Vec<BigRational>) -> Self {
        Self {
            eta_coeff,
            sigma_coeffs,
            role: ClassRole::Custom,
        }
    }

    pub fn eta_coeff(&self) -> &BigRational {
        &self.eta_coeff
    }

    pub fn sigma_coeffs(&self) -> &[BigRational] {
        &self.sigma_coeffs
    }

    pub fn role(&self) -> ClassRole {
        self.role
    }

    pub fn genus(&self) -> u32 {
        self.sigma_coeffs.len() as u32
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.sigma_coeffs.len() != other.sigma_coeffs.len() {
            return Err(Error::InvalidParams(format!(
                "classes live on surfaces of different genus: {} vs {}",
                self.sigma_coeffs.len(),
                other.sigma_coeffs.len()
            )));
        }
        Ok(Self {
            eta_coeff: &self.eta_coeff + &other.eta_coeff,
            sigma_coeffs: self
                .sigma_coeffs
                .iter()
                .zip(&other.sigma_coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            role: ClassRole::Custom,
        })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            eta_coeff: &self.eta_coeff * factor,
            sigma_coeffs: self.sigma_coeffs.iter().map(|c| c * factor).collect(),
            role: ClassRole::Custom,
        }
    }

    /// The class as an element of the reduced ring of `params`.
    pub fn to_ring_element(&self, params: RingParams) -> Result<RingElement> {
        if params.genus() != self.genus() {
            return Err(Error::InvalidParams(format!(
                "class of genus {} cannot live in a ring of genus {}",
                self.genus(),
                params.genus()
            )));
        }
        let mut el = RingElement::eta(params).scale(&self.eta_coeff);
        for (i, b) in self.sigma_coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let sigma = RingElement::sigma(params, i as u32 + 1)?;
            el = el.add(&sigma.scale(b))?;
        }
        Ok(el)
    }

    /// True iff every σ coefficient vanishes and the η coefficient is
    /// positive. A class that is not a pure η multiple gets `false`: its
    /// positivity is simply not decided by this coefficient check.
    pub fn is_positive_eta_multiple(&self) -> bool {
        self.sigma_coeffs.iter().all(Zero::is_zero) && self.eta_coeff.is_positive()
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(BigRational, String)> = Vec::new();
        if !self.eta_coeff.is_zero() {
            terms.push((self.eta_coeff.clone(), "eta".into()));
        }
        for (i, b) in self.sigma_coeffs.iter().enumerate() {
            if !b.is_zero() {
                terms.push((b.clone(), format!("sigma_{}", i + 1)));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (coeff, name)) in terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{abs}*{name}")?;
            }
        }
        Ok(())
    }
}

/// The Kähler class over 4π: (k−N)·η + σ_1 + … + σ_g.
pub fn kahler_class(p: &ModuliParams) -> CohomologyClass {
    CohomologyClass {
        eta_coeff: p.area_quanta() - BigRational::from(BigInt::from(p.vortices())),
        sigma_coeffs: vec![BigRational::one(); p.genus() as usize],
        role: ClassRole::Kahler,
    }
}

/// c_1(L) = (k−N)·η + σ_1 + … + σ_g — the same coefficients as the
/// Kähler class, tagged as the quantum bundle.
pub fn quantum_line_class(p: &ModuliParams) -> CohomologyClass {
    CohomologyClass {
        role: ClassRole::QuantumLine,
        ..kahler_class(p)
    }
}

/// c_1(TX) = (N−g+1)·η − σ_1 − … − σ_g.
pub fn tangent_chern(p: &ModuliParams) -> CohomologyClass {
    let n = i64::from(p.vortices());
    let g = i64::from(p.genus());
    CohomologyClass {
        eta_coeff: BigRational::from(BigInt::from(n - g + 1)),
        sigma_coeffs: vec![-BigRational::one(); p.genus() as usize],
        role: ClassRole::TangentChern,
    }
}

/// K = −c_1(TX) = (g−N−1)·η + σ_1 + … + σ_g.
pub fn canonical_class(p: &ModuliParams) -> CohomologyClass {
    CohomologyClass {
        role: ClassRole::Canonical,
        ..tangent_chern(p).scale(&-BigRational::one())
    }
}

/// Checks the identity kahler + tangent = (k−g+1)·η with all σ
/// coefficients exactly zero.
pub fn sum_identity_check(p: &ModuliParams) -> bool {
    let sum = kahler_class(p)
        .add(&tangent_chern(p))
        .expect("classes of the same parameters share a genus");
    let expected = p.area_quanta() - BigRational::from(BigInt::from(p.genus())) + BigRational::one();
    sum.sigma_coeffs.iter().all(Zero::is_zero) && sum.eta_coeff == expected
}
