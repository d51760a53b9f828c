//! Brute-force ground truth: the full anticommutative ring H*(Σ)^{⊗N}
//! built directly from the generator relations, with the S_N-invariant
//! lifts of η and σ_i. It exists to validate the reduced ring's products
//! and the κ_N substitution rule at small (g, N); the size guard keeps it
//! a test fixture rather than a production path.
//!
//! Per surface factor the basis is {1, α_1, …, α_{2g}, β} with degrees
//! {0, 1, 2}, α_i·α_{i+g} = β = −α_{i+g}·α_i, all other α-products zero,
//! and β killing anything of positive degree. Slots combine with the
//! Koszul sign: moving an odd factor past an odd factor flips the sign.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Monomial, RingElement, RingParams, MAX_SIGMA_INDEX};

/// Guard on the tensor basis size (2g+2)^N.
pub const ORACLE_SIZE_BOUND: u128 = 1_000_000;

/// Basis label of one surface factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotLabel {
    One,
    /// α_i, 1-based, 1 ≤ i ≤ 2g.
    Alpha(u32),
    Beta,
}

impl SlotLabel {
    fn degree(self) -> u32 {
        match self {
            SlotLabel::One => 0,
            SlotLabel::Alpha(_) => 1,
            SlotLabel::Beta => 2,
        }
    }

    fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }
}

impl fmt::Display for SlotLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlotLabel::One => write!(f, "1"),
            SlotLabel::Alpha(i) => write!(f, "a{i}"),
            SlotLabel::Beta => write!(f, "b"),
        }
    }
}

/// In-slot product on H*(Σ); `None` is zero. The sign accompanies the
/// α_i·α_{i+g} = β = −α_{i+g}·α_i relation.
fn slot_mul(genus: u32, lhs: SlotLabel, rhs: SlotLabel) -> Option<(SlotLabel, i8)> {
    match (lhs, rhs) {
        (SlotLabel::One, x) | (x, SlotLabel::One) => Some((x, 1)),
        (SlotLabel::Alpha(i), SlotLabel::Alpha(j)) => {
            if j == i + genus {
                Some((SlotLabel::Beta, 1))
            } else if i == j + genus {
                Some((SlotLabel::Beta, -1))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// (−1)^{Σ_{k<l} |v_k|·|u_l|}: the sign from interleaving the slots of
/// u⊗ and v⊗ back into slot order.
fn koszul_sign(u: &[SlotLabel], v: &[SlotLabel]) -> i8 {
    let mut parity = 0u32;
    let mut odd_after = 0u32;
    for k in (0..u.len()).rev() {
        if v[k].is_odd() {
            parity += odd_after;
        }
        if u[k].is_odd() {
            odd_after += 1;
        }
    }
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An element of H*(Σ)^{⊗N}: a sparse map from basis tuples to exact
/// rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    params: RingParams,
    terms: BTreeMap<Vec<SlotLabel>, BigRational>,
}

impl TensorElement {
    pub fn zero(params: RingParams) -> Self {
        Self {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(params: RingParams) -> Self {
        Self::basis(params, vec![SlotLabel::One; params.points() as usize], BigRational::one())
    }

    pub fn basis(params: RingParams, tuple: Vec<SlotLabel>, coeff: BigRational) -> Self {
        assert_eq!(tuple.len(), params.points() as usize, "one label per slot");
        let mut el = Self::zero(params);
        el.accumulate(tuple, coeff);
        el
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<SlotLabel>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, tuple: &[SlotLabel]) -> BigRational {
        self.terms.get(tuple).cloned().unwrap_or_else(BigRational::zero)
    }

    fn accumulate(&mut self, tuple: Vec<SlotLabel>, coeff: BigRational) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(self.mismatch(other));
        }
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.accumulate(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero(self.params);
        if factor.is_zero() {
            return out;
        }
        for (t, c) in &self.terms {
            out.terms.insert(t.clone(), c * factor);
        }
        out
    }

    /// Slotwise products with the global Koszul sign.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(self.mismatch(other));
        }
        let genus = self.params.genus();
        let slots = self.params.points() as usize;
        let mut out = Self::zero(self.params);
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let mut sign = i32::from(koszul_sign(u, v));
                let mut tuple = Vec::with_capacity(slots);
                let mut vanished = false;
                for k in 0..slots {
                    match slot_mul(genus, u[k], v[k]) {
                        Some((label, s)) => {
                            tuple.push(label);
                            sign *= i32::from(s);
                        }
                        None => {
                            vanished = true;
                            break;
                        }
                    }
                }
                if !vanished {
                    out.accumulate(tuple, cu * cv * BigRational::from(BigInt::from(sign)));
                }
            }
        }
        Ok(out)
    }

    /// Total degree if the element is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self
            .terms
            .keys()
            .map(|t| t.iter().map(|l| l.degree()).sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::DistinctRings {
            lhs_genus: self.params.genus(),
            lhs_points: self.params.points(),
            rhs_genus: other.params.genus(),
            rhs_points: other.params.points(),
        }
    }
}

/// η = β_1 + … + β_N.
pub fn eta_lift(params: RingParams) -> TensorElement {
    let slots = params.points() as usize;
    let mut out = TensorElement::zero(params);
    for k in 0..slots {
        let mut tuple = vec![SlotLabel::One; slots];
        tuple[k] = SlotLabel::Beta;
        out.accumulate(tuple, BigRational::one());
    }
    out
}

/// ζ_i = α_{i,1} + … + α_{i,N}.
fn zeta_lift(params: RingParams, index: u32) -> TensorElement {
    let slots = params.points() as usize;
    let mut out = TensorElement::zero(params);
    for k in 0..slots {
        let mut tuple = vec![SlotLabel::One; slots];
        tuple[k] = SlotLabel::Alpha(index);
        out.accumulate(tuple, BigRational::one());
    }
    out
}

/// σ_i = ζ_i·ζ_{i+g}.
pub fn sigma_lift(params: RingParams, index: u32) -> Result<TensorElement> {
    if index == 0 || index > params.genus() {
        return Err(Error::SigmaIndex {
            index,
            genus: params.genus(),
            max: params.genus().min(MAX_SIGMA_INDEX),
        });
    }
    zeta_lift(params, index).mul(&zeta_lift(params, index + params.genus()))
}

/// Replaces every monomial η^q·σ_S of a reduced-ring element by its
/// defining expression in the tensor ring.
pub fn lift(x: &RingElement) -> Result<TensorElement> {
    let params = x.params();
    let eta = eta_lift(params);
    let mut out = TensorElement::zero(params);
    for (monomial, coeff) in x.terms() {
        let mut acc = TensorElement::unit(params).scale(coeff);
        for _ in 0..monomial.eta_power() {
            acc = acc.mul(&eta)?;
        }
        for i in monomial.sigma_indices() {
            acc = acc.mul(&sigma_lift(params, i)?)?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

fn factorial(n: u32) -> BigInt {
    (1..=u64::from(n)).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The coefficient of β⊗…⊗β divided by N!; the division encodes the
/// degree of the quotient map Σ^N → Sym^N, so this equals κ_N on lifts.
pub fn oracle_integrate(t: &TensorElement) -> BigRational {
    let top = vec![SlotLabel::Beta; t.params.points() as usize];
    t.coefficient(&top) / BigRational::from(factorial(t.params.points()))
}

/// One disagreement between the reduced ring and the tensor oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub lhs: Monomial,
    pub rhs: Monomial,
    pub reduced: BigRational,
    pub oracle: BigRational,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kappa({} * {}) = {} in the reduced ring but {} in the tensor ring",
            self.lhs, self.rhs, self.reduced, self.oracle
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub genus: u32,
    pub points: u32,
    pub pairs_checked: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// All σ-index masks over `genus` generators with at most `max_size` bits,
/// built along ascending index chains so each subset appears once.
fn sigma_subsets(genus: u32, max_size: u32) -> Vec<u64> {
    fn extend(genus: u32, remaining: u32, first: u32, current: u64, out: &mut Vec<u64>) {
        out.push(current);
        if remaining == 0 {
            return;
        }
        for i in first..genus {
            extend(genus, remaining - 1, i + 1, current | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    extend(genus, max_size, 0, 0, &mut out);
    out
}

struct VerifyContext {
    params: RingParams,
    monomials: Vec<Monomial>,
    lifts: Vec<TensorElement>,
}

impl VerifyContext {
    fn new(genus: u32, points: u32) -> Result<Self> {
        let params = RingParams::new(genus, points)?;
        if genus > MAX_SIGMA_INDEX {
            return Err(Error::InvalidParams(format!(
                "oracle verification supports at most {MAX_SIGMA_INDEX} sigma generators, got genus {genus}"
            )));
        }
        let base = u128::from(2 * genus + 2);
        let size = base
            .checked_pow(points)
            .ok_or(Error::OracleSizeBound {
                genus,
                points,
                size: u128::MAX,
                bound: ORACLE_SIZE_BOUND,
            })?;
        if size > ORACLE_SIZE_BOUND {
            return Err(Error::OracleSizeBound {
                genus,
                points,
                size,
                bound: ORACLE_SIZE_BOUND,
            });
        }

        let mut monomials = Vec::new();
        for q in 0..=points {
            for mask in sigma_subsets(genus, points - q) {
                monomials.push(Monomial::new(q, mask));
            }
        }
        let lifts = monomials
            .iter()
            .map(|m| {
                lift(&RingElement::from_terms(
                    params,
                    [(*m, BigRational::one())],
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params,
            monomials,
            lifts,
        })
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.monomials.len();
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect()
    }

    fn check_pair(&self, (i, j): (usize, usize)) -> Option<Discrepancy> {
        let lhs = self.monomials[i];
        let rhs = self.monomials[j];
        let reduced = RingElement::from_terms(self.params, [(lhs, BigRational::one())])
            .mul(&RingElement::from_terms(self.params, [(rhs, BigRational::one())]))
            .expect("monomials share the ring")
            .integrate();
        let oracle = oracle_integrate(
            &self.lifts[i]
                .mul(&self.lifts[j])
                .expect("lifts share the ring"),
        );
        (reduced != oracle).then_some(Discrepancy {
            lhs,
            rhs,
            reduced,
            oracle,
        })
    }
}

/// Checks κ_N(m₁·m₂) against (1/N!)·∫_{Σ^N} lift(m₁)·lift(m₂) for every
/// unordered pair of reduced-ring monomials. Pairs are shard across
/// worker threads when the `parallel` feature is enabled.
pub fn verify_reduced_ring(genus: u32, points: u32) -> Result<VerificationReport> {
    let ctx = VerifyContext::new(genus, points)?;
    let pairs = ctx.pairs();

    #[cfg(feature = "parallel")]
    let discrepancies: Vec<Discrepancy> = {
        use rayon::prelude::*;
        pairs.par_iter().filter_map(|&p| ctx.check_pair(p)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let discrepancies: Vec<Discrepancy> =
        pairs.iter().filter_map(|&p| ctx.check_pair(p)).collect();

    Ok(VerificationReport {
        genus,
        points,
        pairs_checked: pairs.len(),
        discrepancies,
    })
}

/// Single-threaded variant of [`verify_reduced_ring`], kept public so the
/// benchmark suite can compare the two.
pub fn verify_reduced_ring_seq(genus: u32, points: u32) -> Result<VerificationReport> {
    let ctx = VerifyContext::new(genus, points)?;
    let pairs = ctx.pairs();
    let discrepancies = pairs.iter().filter_map(|&p| ctx.check_pair(p)).collect();
    Ok(VerificationReport {
        genus,
        points,
        pairs_checked: pairs.len(),
        discrepancies,
    })
}
