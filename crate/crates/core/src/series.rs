//! Generating functions for the minimal models and their interpolations.
//!
//! `λ(q,t)` counts rooted trees of nested subspaces and is obtained from its
//! functional equation order by order. All other series are built from it
//! by exact truncated arithmetic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::qpoly::{binomial, factorial, pow2, QPoly, TruncatedSeries};

pub const DEFAULT_ORDER: usize = 12;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > 40 {
        return Err(Error::Range(format!("series order {n} outside 1..=40")));
    }
    Ok(())
}

/// `(e^{qL} - q e^{L})/(q-1)` for a series `L` without constant term.
fn bracket(l: &TruncatedSeries) -> Result<TruncatedSeries> {
    let eql = l.scale(&QPoly::q()).exp()?;
    let el = l.exp()?.scale(&QPoly::q());
    eql.sub(&el)?.try_map(|c| c.exact_div_qminus1())
}

fn psi(l: &TruncatedSeries) -> Result<TruncatedSeries> {
    // (e^{qλ} - q e^{λ} + q - 1)/(q - 1) = bracket + 1
    bracket(l)?.add(&TruncatedSeries::one(l.order()))
}

fn compute_lambda(n: usize) -> Result<TruncatedSeries> {
    let mut lam = TruncatedSeries::t(n);
    // each pass fixes one more order of λ
    for _ in 0..n {
        let p = psi(&lam)?;
        let lp = TruncatedSeries::one(n).sub(&p)?.reciprocal()?;
        lam = lp.integrate_t();
    }
    Ok(lam)
}

fn lambda_cache() -> &'static Mutex<HashMap<usize, Arc<TruncatedSeries>>> {
    static C: OnceLock<Mutex<HashMap<usize, Arc<TruncatedSeries>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `λ(q,t)`, the solution of `λ' = 1 + λ' ψ(λ)` with `λ = t + O(t²)`.
pub fn lambda_series(n: usize) -> Result<TruncatedSeries> {
    check_order(n)?;
    if let Some(s) = lambda_cache().lock().unwrap_or_else(|e| e.into_inner()).get(&n) {
        return Ok((**s).clone());
    }
    let s = compute_lambda(n)?;
    lambda_cache().lock().unwrap_or_else(|e| e.into_inner()).insert(n, Arc::new(s.clone()));
    Ok(s)
}

/// `λ' - 1 - λ' ψ(λ)` truncated to the orders where `λ'` is known.
pub fn lambda_residual(n: usize) -> Result<TruncatedSeries> {
    let lam = lambda_series(n)?;
    let lp = lam.derivative_t();
    let r = lp.sub(&TruncatedSeries::one(n))?.sub(&lp.mul(&psi(&lam)?)?)?;
    Ok(r.truncate(n - 1))
}

/// `Φ(q,t,y) = e^{yλ} - 1`; the power of `y` counts the trees.
pub fn phi_y(n: usize) -> Result<TruncatedSeries> {
    lambda_series(n)?.shift_y().exp()?.sub(&TruncatedSeries::one(n))
}

/// `Φ(q,t) = e^{λ} - 1`.
pub fn phi(n: usize) -> Result<TruncatedSeries> {
    lambda_series(n)?.exp()?.sub(&TruncatedSeries::one(n))
}

/// The B-type series.
#[derive(Clone, Debug)]
pub struct BSeries {
    pub lambda_b: TruncatedSeries,
    pub gamma_b: TruncatedSeries,
    pub mu_b: TruncatedSeries,
    /// `e^{yλ_B}(μ_B + 1) - 1`: `y` counts the weak trees only.
    pub phi_b_y: TruncatedSeries,
    /// `e^{yλ_B}(yμ_B + 1) - 1`: `y` also marks the strong tree. Agrees
    /// with `phi_b_y` at `y = 1` but not as an interpolation weight.
    pub phi_b_y_strong_marked: TruncatedSeries,
}

pub fn b_series(n: usize) -> Result<BSeries> {
    let one = TruncatedSeries::one(n);
    let lambda_b = lambda_series(n)?.scale_rat(&rat(1, 2));
    let gamma_b = bracket(&lambda_b)?.add(&one)?;
    let mu_b = one.sub(&gamma_b)?.reciprocal()?.sub(&one)?;
    let e = lambda_b.shift_y().exp()?;
    let phi_b_y = e.mul(&mu_b.add(&one)?)?.sub(&one)?;
    let phi_b_y_strong_marked = e.mul(&mu_b.shift_y().add(&one)?)?.sub(&one)?;
    Ok(BSeries { lambda_b, gamma_b, mu_b, phi_b_y, phi_b_y_strong_marked })
}

/// Readings of the D-type series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum DReading {
    /// Printed `γ_D`, `μ_D` with `λ` in the exponential, weights `2^{n-1} n!`.
    PrintedLambdaA,
    /// Printed `γ_D`, `μ_D` with `λ_B` in the exponential, weights `2^{n-1} n!`.
    PrintedLambdaB,
    /// B trees without strong pairs, weights `2^n n!`, plus the correction
    /// series `Ψ_D` for free leaves (see `formulas::poincare_regular_d`).
    #[default]
    Derived,
}

impl DReading {
    pub const ALL: [DReading; 3] = [DReading::PrintedLambdaA, DReading::PrintedLambdaB, DReading::Derived];

    /// Coefficient weight `2^k n!` used when extracting polynomials.
    pub fn weight(self, n: usize) -> BigRational {
        let p = match self {
            DReading::Derived => n,
            _ => n.saturating_sub(1),
        };
        BigRational::from_integer((pow2(p) * factorial(n)).into())
    }
}

impl std::fmt::Display for DReading {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            DReading::PrintedLambdaA => "printed-lambda-a",
            DReading::PrintedLambdaB => "printed-lambda-b",
            DReading::Derived => "derived",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for DReading {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed-lambda-a" => Ok(DReading::PrintedLambdaA),
            "printed-lambda-b" => Ok(DReading::PrintedLambdaB),
            "derived" => Ok(DReading::Derived),
            _ => Err(Error::Parse(format!("unknown D reading '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DSeries {
    pub gamma_d: TruncatedSeries,
    pub mu_d: TruncatedSeries,
    pub phi_d_y: TruncatedSeries,
    /// Free-leaf weights; zero for the printed readings.
    pub psi_d_y: TruncatedSeries,
}

/// The printed strong-tree correction:
/// `q t²/(2!2²) + (4q+q²) t³/(3!2³) + q Σ_{m>=4} C(m,2) t^m/(m!2^m)`.
fn printed_correction(n: usize) -> TruncatedSeries {
    let mut c = TruncatedSeries::zero(n);
    c.set(2, 0, QPoly::q().scale(&rat(1, 8)));
    c.set(3, 0, QPoly::from_ints(&[0, 4, 1]).scale(&rat(1, 48)));
    for m in 4..=n {
        let w = BigRational::new(binomial(m, 2).into(), (factorial(m) * pow2(m)).into());
        c.set(m, 0, QPoly::q().scale(&w));
    }
    c
}

pub fn d_series(n: usize, reading: DReading) -> Result<DSeries> {
    let one = TruncatedSeries::one(n);
    let b = b_series(n)?;
    match reading {
        DReading::PrintedLambdaA | DReading::PrintedLambdaB => {
            let gamma_d = b.gamma_b.sub(&printed_correction(n))?.scale_rat(&rat(2, 1));
            let mu_d = one.sub(&gamma_d)?.reciprocal()?.sub(&one)?;
            let l = if reading == DReading::PrintedLambdaA { lambda_series(n)? } else { b.lambda_b.clone() };
            let phi_d_y = l.shift_y().exp()?.mul(&mu_d.shift_y().add(&one)?)?.sub(&one)?;
            Ok(DSeries { gamma_d, mu_d, phi_d_y, psi_d_y: TruncatedSeries::zero(n) })
        }
        DReading::Derived => {
            // a strong root may not be a bare pair
            let mut pair = TruncatedSeries::zero(n);
            pair.set(2, 0, QPoly::q().scale(&rat(1, 8)));
            let gamma_d = b.gamma_b.sub(&pair)?;
            let mu_d = gamma_d.mul(&one.sub(&b.gamma_b)?.reciprocal()?)?;
            let e = b.lambda_b.shift_y().exp()?;
            let phi_d_y = e.mul(&mu_d.add(&one)?)?.sub(&one)?;
            let half_yt = TruncatedSeries::t(n).shift_y().scale_rat(&rat(1, 2));
            let psi_d_y = half_yt.mul(&e)?;
            Ok(DSeries { gamma_d, mu_d, phi_d_y, psi_d_y })
        }
    }
}

/// `n!` times the `t^n` coefficient of `Φ` at `y = 1`: the minimal A model
/// on `n` points.
pub fn minimal_a_from_series(n: usize, order: usize) -> Result<QPoly> {
    if n > order {
        return Err(Error::Range(format!("t^{n} is beyond order {order}")));
    }
    Ok(phi(order)?.coeff_t(n).scale(&BigRational::from_integer(factorial(n).into())))
}

/// `2^n n!` times the `t^n` coefficient of `Φ_B` at `y = 1`.
pub fn minimal_b_from_series(n: usize, order: usize) -> Result<QPoly> {
    if n > order {
        return Err(Error::Range(format!("t^{n} is beyond order {order}")));
    }
    let w = BigRational::from_integer((pow2(n) * factorial(n)).into());
    Ok(b_series(order)?.phi_b_y.coeff_t(n).scale(&w))
}

/// Table rows `(t-degree, y-degree, weighted coefficient)` for display.
pub fn weighted_table(s: &TruncatedSeries, weight: impl Fn(usize) -> BigRational) -> Vec<(usize, usize, QPoly)> {
    s.terms().into_iter().map(|(n, j, c)| (n, j, c.scale(&weight(n)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn lambda_low_orders() {
        let l = lambda_series(6).unwrap();
        assert_eq!(l.coeff(1, 0), QPoly::one());
        assert!(lambda_residual(6).unwrap().terms().is_empty());
    }

    #[test]
    fn phi_values() {
        let e = phi(6).unwrap();
        let w = |n: usize| BigRational::from_integer(factorial(n).into());
        assert_eq!(e.coeff_t(3).scale(&w(3)), p("q+1"));
        assert_eq!(e.coeff_t(5).scale(&w(5)), p("q^3+16*q^2+16*q+1"));
        let py = phi_y(6).unwrap();
        assert_eq!(py.eval_y(&rat(1, 1)), e);
        let l = lambda_series(6).unwrap();
        for n in 1..=6 {
            assert_eq!(py.coeff(n, 1), l.coeff(n, 0));
        }
    }

    #[test]
    fn b_basics() {
        let b = b_series(6).unwrap();
        assert!(b.gamma_b.coeff(0, 0).is_zero());
        assert_eq!(b.phi_b_y.eval_y(&rat(1, 1)), b.phi_b_y_strong_marked.eval_y(&rat(1, 1)));
        assert_eq!(minimal_b_from_series(2, 6).unwrap(), p("q+1"));
    }

    #[test]
    fn d_basics() {
        for r in DReading::ALL {
            let d = d_series(6, r).unwrap();
            assert!(d.gamma_d.coeff(0, 0).is_zero());
            assert!(d.gamma_d.coeff(1, 0).is_zero());
        }
        // removing the pair correction gives back the B recipe
        let b = b_series(6).unwrap();
        let one = TruncatedSeries::one(6);
        let mu = b.gamma_b.mul(&one.sub(&b.gamma_b).unwrap().reciprocal().unwrap()).unwrap();
        assert_eq!(mu, b.mu_b);
    }
}
