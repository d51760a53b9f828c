//! Exact arithmetic in the reduced invariant model of H*(Sym^N Σ_g).
//!
//! Elements are rational linear combinations of monomials η^q·σ_S where
//! S ⊆ {1,…,g} with each index used at most once (σ_i² = 0) and the total
//! complex degree q + |S| is at most N; anything of higher degree is
//! identically zero because dim_C Sym^N(Σ) = N. Both η and each σ_i carry
//! complex degree 1 (real degree 2), so the ring is honestly commutative.
//!
//! The integration functional κ_N extracts the top degree: on a monomial
//! with q + |S| = N it returns the coefficient (the substitution σ_i ↦ η
//! sends every top-degree monomial to η^N, normalized by κ_N(η^N) = 1),
//! and it kills everything of lower degree. The tensor-ring oracle in
//! [`crate::oracle`] validates these values against the honest integral
//! over Σ^N divided by N!.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Width of the σ-index bitmask; genus beyond this only limits elements
/// that explicitly mention σ generators.
pub const MAX_SIGMA_INDEX: u32 = 64;

/// Ambient data of the reduced ring: the genus g of the surface and the
/// number of vortices N (the complex dimension of Sym^N Σ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingParams {
    genus: u32,
    points: u32,
}

impl RingParams {
    pub fn new(genus: u32, points: u32) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidParams(
                "number of vortices must be at least 1".into(),
            ));
        }
        Ok(Self { genus, points })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points(&self) -> u32 {
        self.points
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::DistinctRings {
            lhs_genus: self.genus,
            lhs_points: self.points,
            rhs_genus: other.genus,
            rhs_points: other.points,
        }
    }
}

/// A basis monomial η^q·σ_S, with S stored as a bitmask (bit i−1 ⇔ σ_i).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    eta_power: u32,
    sigma_set: u64,
}

impl Monomial {
    pub fn new(eta_power: u32, sigma_set: u64) -> Self {
        Self {
            eta_power,
            sigma_set,
        }
    }

    pub const fn unit() -> Self {
        Self {
            eta_power: 0,
            sigma_set: 0,
        }
    }

    pub fn eta_power(&self) -> u32 {
        self.eta_power
    }

    pub fn sigma_set(&self) -> u64 {
        self.sigma_set
    }

    /// Complex degree q + |S|.
    pub fn degree(&self) -> u32 {
        self.eta_power + self.sigma_set.count_ones()
    }

    /// Ascending σ indices (1-based).
    pub fn sigma_indices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..MAX_SIGMA_INDEX).filter(move |i| self.sigma_set & (1 << i) != 0).map(|i| i + 1)
    }
}

// Order by (eta power, then σ indices lexicographically) so that printed
// elements and iteration order are deterministic.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.eta_power
            .cmp(&other.eta_power)
            .then_with(|| self.sigma_indices().cmp(other.sigma_indices()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.eta_power {
            0 => {}
            1 => parts.push("eta".to_string()),
            q => parts.push(format!("eta^{q}")),
        }
        for i in self.sigma_indices() {
            parts.push(format!("sigma_{i}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// An element of the reduced ring: a canonical (zero-free) map from
/// monomials to exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    params: RingParams,
    terms: BTreeMap<Monomial, BigRational>,
}

impl RingElement {
    pub fn zero(params: RingParams) -> Self {
        Self {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: RingParams) -> Self {
        Self::scalar(params, BigRational::one())
    }

    pub fn scalar(params: RingParams, value: BigRational) -> Self {
        let mut el = Self::zero(params);
        el.accumulate(Monomial::unit(), value);
        el
    }

    /// The generator η (complex degree 1).
    pub fn eta(params: RingParams) -> Self {
        let mut el = Self::zero(params);
        el.accumulate(Monomial::new(1, 0), BigRational::one());
        el
    }

    /// The generator σ_i, 1-based.
    pub fn sigma(params: RingParams, index: u32) -> Result<Self> {
        if index == 0 || index > params.genus || index > MAX_SIGMA_INDEX {
            return Err(Error::SigmaIndex {
                index,
                genus: params.genus,
                max: MAX_SIGMA_INDEX.min(params.genus),
            });
        }
        let mut el = Self::zero(params);
        el.accumulate(Monomial::new(0, 1 << (index - 1)), BigRational::one());
        Ok(el)
    }

    pub fn from_terms<I>(params: RingParams, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut el = Self::zero(params);
        for (m, c) in terms {
            if params.genus < MAX_SIGMA_INDEX {
                assert!(
                    m.sigma_set >> params.genus == 0,
                    "monomial {m} uses a sigma index beyond genus {}",
                    params.genus
                );
            }
            el.accumulate(m, c);
        }
        el
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigRational {
        self.terms.get(monomial).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::unit())
    }

    /// Adds `coeff`·`monomial`, dropping anything above the truncation
    /// degree and keeping the stored map zero-free.
    fn accumulate(&mut self, monomial: Monomial, coeff: BigRational) {
        if coeff.is_zero() || monomial.degree() > self.params.points {
            return;
        }
        let entry = self.terms.entry(monomial).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(self.params.mismatch(&other.params));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.params);
        for (m, c) in &self.terms {
            out.terms.insert(*m, -c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero(self.params);
        if factor.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(*m, c * factor);
        }
        out
    }

    /// Distributive product. Monomial products with a repeated σ index
    /// vanish (σ_i² = 0); those above degree N are truncated away.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(self.params.mismatch(&other.params));
        }
        let mut out = Self::zero(self.params);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.sigma_set & m2.sigma_set != 0 {
                    continue;
                }
                let m = Monomial::new(m1.eta_power + m2.eta_power, m1.sigma_set | m2.sigma_set);
                out.accumulate(m, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one(self.params);
        for _ in 0..exponent {
            // params always match, so the unwrap cannot fire
            out = out.mul(self).expect("pow multiplies within one ring");
        }
        out
    }

    /// exp(x) = Σ_{m=0..N} x^m/m!, exact; terminates because any element
    /// with zero constant term is nilpotent of order ≤ N+1.
    pub fn exp(&self) -> Result<Self> {
        let constant = self.constant_term();
        if !constant.is_zero() {
            return Err(Error::NonNilpotent(constant));
        }
        let mut out = Self::one(self.params);
        let mut power = Self::one(self.params);
        for m in 1..=self.params.points {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            power = power.scale(&BigRational::new(1.into(), m.into()));
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// The integration functional κ_N: sums the coefficients of monomials
    /// of degree exactly N (each such monomial integrates to 1 after the
    /// substitution σ_i ↦ η, with κ_N(η^N) = 1).
    pub fn integrate(&self) -> BigRational {
        let top = self.params.points;
        self.terms
            .iter()
            .filter(|(m, _)| m.degree() == top)
            .fold(BigRational::zero(), |acc, (_, c)| acc + c)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negative = c < &BigRational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_unit_mono = *m == Monomial::unit();
            if abs.is_one() && !is_unit_mono {
                write!(f, "{m}")?;
            } else if is_unit_mono {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn ratq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = RingParams::new(1, 2).unwrap();
        let eta = RingElement::eta(p);
        let sum = eta.add(&eta.neg()).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn add_disjoint_monomials() {
        let p = RingParams::new(1, 2).unwrap();
        let a = RingElement::eta(p).scale(&rat(2));
        let b = RingElement::sigma(p, 1).unwrap().scale(&rat(3));
        let sum = a.add(&b).unwrap();
        assert_eq!(sum.coefficient(&Monomial::new(1, 0)), rat(2));
        assert_eq!(sum.coefficient(&Monomial::new(0, 1)), rat(3));
        assert_eq!(sum.to_string(), "3*sigma_1 + 2*eta");
    }

    #[test]
    fn add_like_terms() {
        let p = RingParams::new(0, 2).unwrap();
        let eta_sq = RingElement::eta(p).pow(2);
        let sum = eta_sq.add(&eta_sq).unwrap();
        assert_eq!(sum.coefficient(&Monomial::new(2, 0)), rat(2));
    }

    #[test]
    fn add_rejects_distinct_rings() {
        let a = RingElement::eta(RingParams::new(1, 2).unwrap());
        let b = RingElement::eta(RingParams::new(2, 2).unwrap());
        assert!(matches!(a.add(&b), Err(Error::DistinctRings { .. })));
    }

    #[test]
    fn sigma_squares_vanish() {
        for genus in 1..4 {
            let p = RingParams::new(genus, 3).unwrap();
            let s = RingElement::sigma(p, 1).unwrap();
            assert!(s.mul(&s).unwrap().is_zero());
        }
    }

    #[test]
    fn eta_truncates_above_dimension() {
        let p = RingParams::new(0, 3).unwrap();
        let eta = RingElement::eta(p);
        assert!(eta.mul(&eta.pow(3)).unwrap().is_zero());
    }

    #[test]
    fn mul_expands_binomials() {
        // (η + σ_1)(η + σ_2) = η² + ησ_1 + ησ_2 + σ_1σ_2 for g=2, N=2
        let p = RingParams::new(2, 2).unwrap();
        let a = RingElement::eta(p).add(&RingElement::sigma(p, 1).unwrap()).unwrap();
        let b = RingElement::eta(p).add(&RingElement::sigma(p, 2).unwrap()).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.coefficient(&Monomial::new(2, 0)), rat(1));
        assert_eq!(prod.coefficient(&Monomial::new(1, 0b01)), rat(1));
        assert_eq!(prod.coefficient(&Monomial::new(1, 0b10)), rat(1));
        assert_eq!(prod.coefficient(&Monomial::new(0, 0b11)), rat(1));
        assert_eq!(prod.terms.len(), 4);
    }

    #[test]
    fn exp_of_zero_is_one() {
        let p = RingParams::new(2, 3).unwrap();
        let e = RingElement::zero(p).exp().unwrap();
        assert_eq!(e, RingElement::one(p));
    }

    #[test]
    fn exp_mixed_exponent() {
        // exp(aη + σ_1) at g=1, N=2 with a=3:
        // 1 + 3η + σ_1 + (9/2)η² + 3ησ_1
        let p = RingParams::new(1, 2).unwrap();
        let x = RingElement::eta(p)
            .scale(&rat(3))
            .add(&RingElement::sigma(p, 1).unwrap())
            .unwrap();
        let e = x.exp().unwrap();
        assert_eq!(e.coefficient(&Monomial::unit()), rat(1));
        assert_eq!(e.coefficient(&Monomial::new(1, 0)), rat(3));
        assert_eq!(e.coefficient(&Monomial::new(0, 1)), rat(1));
        assert_eq!(e.coefficient(&Monomial::new(2, 0)), ratq(9, 2));
        assert_eq!(e.coefficient(&Monomial::new(1, 1)), rat(3));
        assert_eq!(e.terms.len(), 5);
    }

    #[test]
    fn exp_of_sigma_sum_is_multilinear() {
        // exp(σ_1 + σ_2) = 1 + σ_1 + σ_2 + σ_1σ_2 at g=2, N=2
        let p = RingParams::new(2, 2).unwrap();
        let x = RingElement::sigma(p, 1)
            .unwrap()
            .add(&RingElement::sigma(p, 2).unwrap())
            .unwrap();
        let e = x.exp().unwrap();
        assert_eq!(e.coefficient(&Monomial::unit()), rat(1));
        assert_eq!(e.coefficient(&Monomial::new(0, 0b01)), rat(1));
        assert_eq!(e.coefficient(&Monomial::new(0, 0b10)), rat(1));
        assert_eq!(e.coefficient(&Monomial::new(0, 0b11)), rat(1));
        assert_eq!(e.terms.len(), 4);
        assert_eq!(e.integrate(), rat(1));
    }

    #[test]
    fn exp_rejects_constant_term() {
        let p = RingParams::new(0, 2).unwrap();
        let x = RingElement::one(p);
        assert!(matches!(x.exp(), Err(Error::NonNilpotent(_))));
    }

    #[test]
    fn integrate_examples() {
        let p = RingParams::new(1, 2).unwrap();
        let eta = RingElement::eta(p);
        let sigma = RingElement::sigma(p, 1).unwrap();
        assert_eq!(eta.pow(2).integrate(), rat(1));
        assert_eq!(eta.mul(&sigma).unwrap().integrate(), rat(1));
        assert_eq!(eta.integrate(), rat(0));

        let p2 = RingParams::new(2, 2).unwrap();
        let s1s2 = RingElement::sigma(p2, 1)
            .unwrap()
            .mul(&RingElement::sigma(p2, 2).unwrap())
            .unwrap();
        assert_eq!(s1s2.integrate(), rat(1));
    }

    #[test]
    fn sigma_index_bounds() {
        let p = RingParams::new(2, 2).unwrap();
        assert!(RingElement::sigma(p, 0).is_err());
        assert!(RingElement::sigma(p, 3).is_err());
        assert!(RingElement::sigma(p, 2).is_ok());
        let wide = RingParams::new(100, 2).unwrap();
        assert!(RingElement::sigma(wide, 65).is_err());
    }

    #[test]
    fn params_require_positive_points() {
        assert!(RingParams::new(2, 0).is_err());
    }

    #[test]
    fn display_is_deterministic() {
        let p = RingParams::new(2, 3).unwrap();
        let x = RingElement::eta(p)
            .pow(2)
            .add(&RingElement::sigma(p, 2).unwrap().neg())
            .unwrap()
            .add(&RingElement::scalar(p, ratq(1, 2)))
            .unwrap();
        assert_eq!(x.to_string(), "1/2 - sigma_2 + eta^2");
    }

    // -- property tests -----------------------------------------------------

    fn arb_params() -> impl Strategy<Value = RingParams> {
        (0u32..=3, 1u32..=4).prop_map(|(g, n)| RingParams::new(g, n).unwrap())
    }

    fn arb_element(params: RingParams) -> impl Strategy<Value = RingElement> {
        let g = params.genus();
        let n = params.points();
        let monomial = (0..=n, 0u64..(1 << g)).prop_map(|(q, s)| Monomial::new(q, s));
        let coeff = (-5i64..=5, 1i64..=3).prop_map(|(num, den)| ratq(num, den));
        proptest::collection::vec((monomial, coeff), 0..6)
            .prop_map(move |terms| RingElement::from_terms(params, terms))
    }

    fn arb_elements<const K: usize>() -> impl Strategy<Value = [RingElement; K]> {
        arb_params().prop_flat_map(|p| {
            proptest::collection::vec(arb_element(p), K)
                .prop_map(|v| <[RingElement; K]>::try_from(v).unwrap())
        })
    }

    fn without_constant(x: &RingElement) -> RingElement {
        x.sub(&RingElement::scalar(x.params(), x.constant_term()))
            .unwrap()
    }

    proptest! {
        #[test]
        fn mul_commutes([a, b] in arb_elements::<2>()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn mul_associates([a, b, c] in arb_elements::<3>()) {
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mul_distributes([a, b, c] in arb_elements::<3>()) {
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn nilpotency_above_dimension([a] in arb_elements::<1>()) {
            let x = without_constant(&a);
            prop_assert!(x.pow(x.params().points() + 1).is_zero());
        }

        #[test]
        fn exp_is_homomorphism([a, b] in arb_elements::<2>()) {
            let x = without_constant(&a);
            let y = without_constant(&b);
            let lhs = x.add(&y).unwrap().exp().unwrap();
            let rhs = x.exp().unwrap().mul(&y.exp().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integration_is_linear([a, b] in arb_elements::<2>(), n in -4i64..=4, d in 1i64..=3) {
            let c = ratq(n, d);
            let lhs = a.scale(&c).add(&b).unwrap().integrate();
            let rhs = c * a.integrate() + b.integrate();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn integration_extracts_top_degree(q in 0u32..=4, mask in 0u64..8, g in 0u32..=3, n in 1u32..=4) {
            let p = RingParams::new(g, n).unwrap();
            let mask = mask & ((1 << g) - 1);
            let m = Monomial::new(q, mask);
            prop_assume!(m.degree() <= n);
            let el = RingElement::from_terms(p, [(m, ratq(1, 1))]);
            let expected = if m.degree() == n { ratq(1, 1) } else { ratq(0, 1) };
            prop_assert_eq!(el.integrate(), expected);
        }
    }
}
