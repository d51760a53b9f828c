//! The holomorphic-Euler-characteristic evaluator on Sym^N(Σ_g), the
//! closed-form binomial count, and the top-level vortex-dimension
//! computation that cross-checks the two.
//!
//! For a line bundle with Chern root c the ring route evaluates
//! χ = κ_N( exp(ĉ·η) · exp(−g·η) · T(η)^{N+1} ),
//! where T is t/(1−e^{−t}) and ĉ is the root's exponent after the
//! substitution σ_i ↦ η (see `collapsed_eta_coefficient`). The closed
//! form is the exact binomial C(k, N); the residue route expands
//! (1−ε)^{−K₀−1} term by term as an independent check on that binomial.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::classes::{quantum_line_class, CohomologyClass, ModuliParams};
use crate::error::{Error, Result};
use crate::ring::{Monomial, RingElement, RingParams};
use crate::series::TruncatedSeries;

/// Which route produced a reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    HrrRing,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::HrrRing => write!(f, "hrr_ring"),
            Method::ClosedForm => write!(f, "closed_form"),
        }
    }
}

/// Result record of a dimension query. `dimension` is populated only when
/// the vanishing hypothesis holds; otherwise only the Euler characteristic
/// is claimed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub params: ModuliParams,
    pub euler_characteristic: BigInt,
    pub dimension: Option<BigInt>,
    pub vanishing_guaranteed: bool,
    pub method: Method,
    pub notes: Vec<String>,
}

/// The exponent of a Chern root after Macdonald's substitution σ_i ↦ η:
/// a·η + Σ b_i·σ_i exponentiates as exp((a + Σ b_i)·η). The substitution
/// is applied inside the exponent, before expansion; applied to the
/// nilpotent expansion instead it would drop the σ_i powers ≥ 2 that the
/// top-degree count relies on.
fn collapsed_eta_coefficient(class: &CohomologyClass) -> BigRational {
    class
        .sigma_coeffs()
        .iter()
        .fold(class.eta_coeff().clone(), |acc, b| acc + b)
}

/// T(η) = Σ_m [t^m](t/(1−e^{−t}))·η^m in the reduced ring.
fn todd_at_eta(ring: RingParams) -> RingElement {
    let order = ring.points();
    let todd = TruncatedSeries::todd(order);
    RingElement::from_terms(ring, (0..=order).map(|m| (Monomial::new(m, 0), todd.coeff(m))))
}

/// Holomorphic Euler characteristic of a line bundle with Chern root `c`.
pub fn euler_characteristic(c: &CohomologyClass, p: &ModuliParams) -> Result<BigRational> {
    euler_characteristic_bundle(std::slice::from_ref(c), p)
}

/// Holomorphic Euler characteristic of a bundle given by its Chern roots:
/// κ_N( (Σ_i exp(δ̂_i·η)) · exp(−g·η) · T(η)^{N+1} ).
pub fn euler_characteristic_bundle(
    roots: &[CohomologyClass],
    p: &ModuliParams,
) -> Result<BigRational> {
    for root in roots {
        if root.genus() != p.genus() {
            return Err(Error::InvalidParams(format!(
                "class of genus {} does not live in the ring of genus {}",
                root.genus(),
                p.genus()
            )));
        }
    }
    let ring = RingParams::new(p.genus(), p.vortices())?;
    let eta = RingElement::eta(ring);

    let mut chern_sum = RingElement::zero(ring);
    for root in roots {
        let exponent = eta.scale(&collapsed_eta_coefficient(root));
        chern_sum = chern_sum.add(&exponent.exp()?)?;
    }

    let genus_factor = eta
        .scale(&-BigRational::from(BigInt::from(p.genus())))
        .exp()?;
    let todd_power = todd_at_eta(ring).pow(p.vortices() + 1);

    Ok(chern_sum.mul(&genus_factor)?.mul(&todd_power)?.integrate())
}

/// Exact binomial coefficient C(n, r) for a (possibly huge) integer n ≥ 0.
pub fn binomial(n: &BigInt, r: u32) -> BigInt {
    let mut result = BigInt::one();
    for i in 0..u64::from(r) {
        result = result * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    result
}

/// C(k, N), valid for integral k; errors otherwise.
pub fn closed_form_dimension(p: &ModuliParams) -> Result<BigInt> {
    if !p.is_integral() {
        return Err(Error::NonIntegralArea(p.area_quanta().clone()));
    }
    Ok(binomial(&p.area_quanta().to_integer(), p.vortices()))
}

/// Coefficient of ε^N in (1−ε)^{−K₀−1}, computed by raw truncated series
/// multiplication rather than the binomial identity it verifies.
pub fn residue_coefficient(k0: i64, n: u32) -> BigInt {
    let len = n as usize + 1;
    let mut result = vec![BigInt::zero(); len];
    result[0] = BigInt::one();
    let multiply = |acc: &[BigInt], factor: &[BigInt]| {
        let mut out = vec![BigInt::zero(); len];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in factor.iter().take(len - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    if k0 >= 0 {
        // (1−ε)^{−1} = 1 + ε + ε² + …, raised to the power K₀+1
        let geometric = vec![BigInt::one(); len];
        for _ in 0..=k0 {
            result = multiply(&result, &geometric);
        }
    } else {
        // nonnegative exponent: the polynomial (1−ε)^{−K₀−1}
        let linear: Vec<BigInt> = [BigInt::one(), -BigInt::one()]
            .into_iter()
            .take(len)
            .collect();
        for _ in 0..(-k0 - 1) {
            result = multiply(&result, &linear);
        }
    }
    result.pop().expect("series keeps n+1 coefficients")
}

/// Computes the vortex dimension along the requested route(s). With
/// `method = None` both the ring evaluation and the closed form run and
/// must agree exactly; a mismatch is a hard error.
pub fn vortex_dimension_via(p: &ModuliParams, method: Option<Method>) -> Result<DimensionReport> {
    if !p.is_integral() {
        return Err(Error::NonIntegralArea(p.area_quanta().clone()));
    }
    let mut notes = Vec::new();

    let ring_value = match method {
        None | Some(Method::HrrRing) => {
            Some(euler_characteristic(&quantum_line_class(p), p)?)
        }
        Some(Method::ClosedForm) => None,
    };
    let closed_value = match method {
        None | Some(Method::ClosedForm) => Some(closed_form_dimension(p)?),
        Some(Method::HrrRing) => None,
    };

    let mismatch = |ring: &BigRational, closed: String| {
        Error::CrossCheckMismatch(Box::new(crate::error::CrossCheckMismatch {
            genus: p.genus(),
            points: p.vortices(),
            area_quanta: p.area_quanta().clone(),
            ring_value: ring.clone(),
            closed_form: closed,
        }))
    };

    let euler = match (&ring_value, &closed_value) {
        (Some(ring), Some(closed)) => {
            if ring != &BigRational::from(closed.clone()) {
                return Err(mismatch(ring, closed.to_string()));
            }
            notes.push(format!(
                "closed-form cross-check passed: C({}, {}) = {}",
                p.area_quanta(),
                p.vortices(),
                closed
            ));
            closed.clone()
        }
        (Some(ring), None) => {
            if !ring.is_integer() {
                return Err(mismatch(ring, "an integer".into()));
            }
            notes.push("closed-form cross-check skipped (method override)".into());
            ring.to_integer()
        }
        (None, Some(closed)) => {
            notes.push("ring evaluation skipped (method override)".into());
            closed.clone()
        }
        (None, None) => unreachable!("at least one route always runs"),
    };

    let vanishing_guaranteed = p.vanishing_guaranteed();
    if !vanishing_guaranteed {
        let threshold = i64::from(p.vortices()).max(i64::from(p.genus()) - 1);
        notes.push(format!(
            "vanishing not guaranteed: requires integral k > max(N, g-1) = {threshold}; \
             the Euler characteristic is reported without a dimension claim"
        ));
    }

    Ok(DimensionReport {
        params: p.clone(),
        dimension: vanishing_guaranteed.then(|| euler.clone()),
        euler_characteristic: euler,
        vanishing_guaranteed,
        method: method.unwrap_or(Method::HrrRing),
        notes,
    })
}

/// Default dimension query: both routes, cross-checked.
pub fn vortex_dimension(p: &ModuliParams) -> Result<DimensionReport> {
    vortex_dimension_via(p, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::tangent_chern;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn ratq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn params(g: u32, n: u32, k: i64) -> ModuliParams {
        ModuliParams::new(g, n, rat(k)).unwrap()
    }

    #[test]
    fn euler_on_projective_line() {
        // degree-3 bundle on Sym^1(sphere) = the projective line: h⁰ = 4
        let p = params(0, 1, 4);
        let chi = euler_characteristic(&quantum_line_class(&p), &p).unwrap();
        assert_eq!(chi, rat(4));
    }

    #[test]
    fn euler_on_genus_two_three_vortices() {
        let p = params(2, 3, 5);
        let chi = euler_characteristic(&quantum_line_class(&p), &p).unwrap();
        assert_eq!(chi, rat(10));
    }

    #[test]
    fn euler_on_elliptic_curve() {
        // degree-3 bundle on a genus-1 curve: h⁰ = 3
        let p = params(1, 1, 3);
        let chi = euler_characteristic(&quantum_line_class(&p), &p).unwrap();
        assert_eq!(chi, rat(3));
    }

    #[test]
    fn euler_of_tensor_power_on_elliptic_curve() {
        // χ(L^⊗μ) on a genus-1 curve equals deg(L^⊗μ) = μ·k
        let p = params(1, 1, 2);
        let mu = rat(3);
        let root = quantum_line_class(&p).scale(&mu);
        let chi = euler_characteristic(&root, &p).unwrap();
        assert_eq!(chi, rat(6));
    }

    #[test]
    fn euler_rejects_genus_mismatch() {
        let p = params(2, 3, 5);
        let other = quantum_line_class(&params(3, 3, 5));
        assert!(euler_characteristic(&other, &p).is_err());
    }

    #[test]
    fn euler_accepts_rank_two_root_lists() {
        // χ(E ⊕ F) = χ(E) + χ(F): additivity of the root-sum form
        let p = params(1, 2, 4);
        let a = quantum_line_class(&p);
        let b = tangent_chern(&p);
        let sum = euler_characteristic_bundle(&[a.clone(), b.clone()], &p).unwrap();
        let separate =
            euler_characteristic(&a, &p).unwrap() + euler_characteristic(&b, &p).unwrap();
        assert_eq!(sum, separate);
    }

    #[test]
    fn genus_independence_of_the_value() {
        for (n, k) in [(2u32, 9i64), (3, 7), (5, 11)] {
            let baseline =
                euler_characteristic(&quantum_line_class(&params(0, n, k)), &params(0, n, k))
                    .unwrap();
            for g in 1..=4 {
                let p = params(g, n, k);
                let chi = euler_characteristic(&quantum_line_class(&p), &p).unwrap();
                assert_eq!(chi, baseline, "g={g}, N={n}, k={k}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_dimension(&params(2, 3, 5)).unwrap(), BigInt::from(10));
        assert_eq!(closed_form_dimension(&params(1, 4, 4)).unwrap(), BigInt::from(1));
        assert_eq!(closed_form_dimension(&params(0, 2, 7)).unwrap(), BigInt::from(21));
    }

    #[test]
    fn closed_form_rejects_non_integral_k() {
        let p = ModuliParams::new(1, 2, ratq(7, 2)).unwrap();
        assert!(matches!(
            closed_form_dimension(&p),
            Err(Error::NonIntegralArea(_))
        ));
    }

    #[test]
    fn binomial_handles_small_and_large_inputs() {
        assert_eq!(binomial(&BigInt::from(5), 3), BigInt::from(10));
        assert_eq!(binomial(&BigInt::from(2), 3), BigInt::from(0));
        assert_eq!(binomial(&BigInt::from(0), 0), BigInt::from(1));
        // C(100, 50) has 30 digits
        assert_eq!(
            binomial(&BigInt::from(100), 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue_coefficient(2, 3), BigInt::from(10));
        for n in 0..6 {
            assert_eq!(residue_coefficient(0, n), BigInt::from(1));
        }
        // (1−ε)^{−4} = 1 + 4ε + 10ε² + …
        assert_eq!(residue_coefficient(3, 2), BigInt::from(10));
        // negative K₀ gives a polynomial of low degree
        assert_eq!(residue_coefficient(-1, 0), BigInt::from(1));
        assert_eq!(residue_coefficient(-1, 2), BigInt::from(0));
        assert_eq!(residue_coefficient(-2, 1), BigInt::from(-1));
    }

    #[test]
    fn vortex_dimension_flagship() {
        let report = vortex_dimension(&params(2, 3, 5)).unwrap();
        assert_eq!(report.euler_characteristic, BigInt::from(10));
        assert_eq!(report.dimension, Some(BigInt::from(10)));
        assert!(report.vanishing_guaranteed);
        assert_eq!(report.method, Method::HrrRing);
    }

    #[test]
    fn vortex_dimension_boundary_keeps_euler_only() {
        let report = vortex_dimension(&params(2, 3, 3)).unwrap();
        assert_eq!(report.euler_characteristic, BigInt::from(1));
        assert_eq!(report.dimension, None);
        assert!(!report.vanishing_guaranteed);
        assert!(report.notes.iter().any(|n| n.contains("vanishing not guaranteed")));

        // k = g − 1 boundary
        let report = vortex_dimension(&params(4, 1, 3)).unwrap();
        assert_eq!(report.euler_characteristic, BigInt::from(3));
        assert_eq!(report.dimension, None);
        assert!(!report.vanishing_guaranteed);
    }

    #[test]
    fn vortex_dimension_sphere_matches_projective_space_count() {
        // genus 0: C(N+l, l) with l = k − N
        let report = vortex_dimension(&params(0, 5, 7)).unwrap();
        assert_eq!(report.dimension, Some(BigInt::from(21)));
    }

    #[test]
    fn vortex_dimension_rejects_non_integral_k() {
        let p = ModuliParams::new(1, 2, ratq(7, 2)).unwrap();
        assert!(matches!(
            vortex_dimension(&p),
            Err(Error::NonIntegralArea(_))
        ));
    }

    #[test]
    fn method_overrides_select_single_routes() {
        let p = params(2, 3, 5);
        let ring_only = vortex_dimension_via(&p, Some(Method::HrrRing)).unwrap();
        assert_eq!(ring_only.method, Method::HrrRing);
        assert!(ring_only.notes.iter().any(|n| n.contains("skipped")));
        let closed_only = vortex_dimension_via(&p, Some(Method::ClosedForm)).unwrap();
        assert_eq!(closed_only.method, Method::ClosedForm);
        assert_eq!(ring_only.euler_characteristic, closed_only.euler_characteristic);
    }

    proptest! {
        // Agreement of all three routes on a randomized sub-grid; the
        // acceptance suite sweeps the full grid.
        #[test]
        fn routes_agree(g in 0u32..=3, n in 1u32..=4, extra in 0i64..=6) {
            let k = i64::from(n) + extra;
            let p = params(g, n, k);
            let chi = euler_characteristic(&quantum_line_class(&p), &p).unwrap();
            let closed = closed_form_dimension(&p).unwrap();
            let residue = residue_coefficient(k - i64::from(n), n);
            prop_assert_eq!(&chi, &BigRational::from(closed.clone()));
            prop_assert_eq!(closed, residue);
        }

        #[test]
        fn euler_is_integral_for_integral_k(g in 0u32..=3, n in 1u32..=4, k in 1i64..=12) {
            let p = params(g, n, k);
            let chi = euler_characteristic(&quantum_line_class(&p), &p).unwrap();
            prop_assert!(chi.is_integer());
        }

        #[test]
        fn closed_form_is_monotonic_in_k(n in 1u32..=6, k in 1i64..=20) {
            prop_assume!(k >= i64::from(n));
            let smaller = binomial(&BigInt::from(k), n);
            let larger = binomial(&BigInt::from(k + 1), n);
            prop_assert!(larger > smaller);
        }
    }
}
