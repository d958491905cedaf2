//! Poincaré polynomials from the closed, inductive and interpolation
//! formulas, the generic blow-up induction, and Euler characteristics.
//!
//! Conventions: `n` is the number of coordinates (so `A_{n-1}` has `n`
//! points), `s` the regularity parameter. Public entry points validate their
//! range; the `*_unchecked` helpers are used inside recursions where the
//! arguments leave the published range but the formulas still make sense.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arrangements::{self, quotient_building, BuildingSet};
use crate::error::{Error, Result};
use crate::qpoly::{
    big, exact_div, f_poly, factorial, ftilde_poly, h_poly, jk_lists, jk_tilde_lists, pow2, stirling2, to_int,
    QPoly, TildeBound,
};
use crate::series::{self, DReading};

fn memo<K: Hash + Eq + Clone, V: Clone>(
    cache: &'static OnceLock<Mutex<HashMap<K, V>>>,
    key: K,
    f: impl FnOnce() -> V,
) -> V {
    let m = cache.get_or_init(Default::default);
    if let Some(v) = m.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return v.clone();
    }
    let v = f();
    m.lock().unwrap_or_else(|e| e.into_inner()).insert(key, v.clone());
    v
}

fn range(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Range(what()))
    }
}

fn f(n: usize, j: usize) -> QPoly {
    f_poly(n, j).expect("indices checked by the index sets")
}

fn h(n: usize, j: usize) -> QPoly {
    h_poly(n, j).expect("indices checked by the index sets")
}

fn int(c: &BigUint) -> BigRational {
    big(c)
}

fn series_order(n: usize) -> usize {
    n.max(series::DEFAULT_ORDER)
}

// ---------------------------------------------------------------------------
// blow-up induction

static BLOWUP: OnceLock<Mutex<HashMap<String, QPoly>>> = OnceLock::new();

fn fingerprint(g: &BuildingSet) -> String {
    let mut s = format!("{}:{}:", g.kind(), g.ambient());
    for m in g.members() {
        s.push_str(&m.to_string());
        s.push(';');
    }
    s
}

fn blowup(g: &BuildingSet) -> Result<QPoly> {
    if g.is_empty() {
        return Ok(QPoly::one());
    }
    let key = fingerprint(g);
    if let Some(p) = BLOWUP.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(p.clone());
    }
    // members are sorted by dimension, so the first one is minimal
    let g0 = g.members()[0].clone();
    let rest = g.filter(|m| m != &g0);
    let quotient = quotient_building(g, &g0)?;
    let p = blowup(&rest)? + QPoly::geometric(g0.dim()) * blowup(&quotient)?;
    BLOWUP.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner()).insert(key, p.clone());
    Ok(p)
}

/// `P(Y_G) = P(Y_{G - G0}) + ((q^{dim G0} - q)/(q - 1)) P(Y_{Ḡ})`, removing a
/// minimal member at each step until the family is empty.
pub fn poincare_blowup_induction(g: &BuildingSet) -> Result<QPoly> {
    if !arrangements::is_building(g) {
        return Err(Error::Precondition("the family is not building".into()));
    }
    blowup(g)
}

// ---------------------------------------------------------------------------
// type A

static MAX_A: OnceLock<Mutex<HashMap<usize, QPoly>>> = OnceLock::new();

/// Maximal model on `n` points by induction over the form of the first
/// blown-up subspace.
pub fn poincare_max_a_inductive(n: usize) -> Result<QPoly> {
    range(n >= 1, || "the maximal A model needs n >= 1".into())?;
    Ok(max_a_ind(n))
}

fn max_a_ind(n: usize) -> QPoly {
    if n <= 2 {
        return QPoly::one();
    }
    memo(&MAX_A, n, || {
        let mut acc = QPoly::one();
        for j in 1..=n - 2 {
            acc += &(QPoly::geometric(n - j).scale(&int(&stirling2(n, j))) * max_a_ind(j));
        }
        acc
    })
}

/// `1 + Σ_k Σ_{J_k(m)} f_{j_2,j_1} ⋯ f_{n,j_k}`.
fn chain_sum_f(n: usize, m: usize) -> QPoly {
    let mut acc = QPoly::one();
    for k in 1..=m {
        for t in jk_lists(k, m) {
            let mut p = f(n, t[k - 1]);
            for i in 1..k {
                p = p * f(t[i], t[i - 1]);
            }
            acc += &p;
        }
    }
    acc
}

/// Maximal model on `n` points, closed form over `J_k(n-2)`.
pub fn poincare_max_a_closed(n: usize) -> Result<QPoly> {
    range(n >= 1, || "the maximal A model needs n >= 1".into())?;
    Ok(if n <= 2 { QPoly::one() } else { chain_sum_f(n, n - 2) })
}

pub fn poincare_max_a(n: usize) -> Result<QPoly> {
    poincare_max_a_closed(n)
}

/// `P(Y_{G̃_s(A_{n-1})})` for `n >= 3`, `1 <= s <= n - 2`.
pub fn poincare_tilde_a(n: usize, s: usize) -> Result<QPoly> {
    range(n >= 3 && s >= 1 && s + 2 <= n, || format!("tilde A needs n >= 3 and 1 <= s <= n-2 (n={n}, s={s})"))?;
    Ok(chain_sum_f(n, s))
}

/// Tilde A on `j` points with `s` clamped to the top of its range; one
/// point or two give the trivial model.
fn tilde_a_base(j: usize, s: usize) -> QPoly {
    if j <= 2 {
        QPoly::one()
    } else {
        chain_sum_f(j, s.min(j - 2))
    }
}

/// `P(Y_{G_s(A_{n-1})})` by interpolation between the tilde families.
pub fn poincare_regular_a(n: usize, s: usize) -> Result<QPoly> {
    range(n >= 3 && s >= 1 && s + 2 <= n, || format!("regular A needs n >= 3 and 1 <= s <= n-2 (n={n}, s={s})"))?;
    let phi = series::phi_y(series_order(n))?;
    let w = int(&factorial(n));
    let mut acc = chain_sum_f(n, s);
    for j in s + 1..=n - 2 {
        acc += &(phi.coeff(n, j).scale(&w) * tilde_a_base(j, s));
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// type B

static TILDE_B: OnceLock<Mutex<HashMap<(usize, usize), QPoly>>> = OnceLock::new();

/// Tilde B by induction on the first blown-up stratum:
/// `P(n,s) = 1 + Σ_{j=1}^{min(s+1,n)} h_{n,j} P(j-1,s)`, `P(0,s) = 1`.
pub(crate) fn tilde_b_unchecked(n: usize, s: usize) -> QPoly {
    if n == 0 {
        return QPoly::one();
    }
    memo(&TILDE_B, (n, s), || {
        let mut acc = QPoly::one();
        for j in 1..=(s + 1).min(n) {
            acc += &(h(n, j) * tilde_b_unchecked(j - 1, s));
        }
        acc
    })
}

fn check_b(n: usize, s: usize) -> Result<()> {
    range(n >= 2 && s + 2 <= n, || format!("B formulas need n >= 2 and 0 <= s <= n-2 (n={n}, s={s})"))
}

pub fn poincare_tilde_b_inductive(n: usize, s: usize) -> Result<QPoly> {
    check_b(n, s)?;
    Ok(tilde_b_unchecked(n, s))
}

/// Closed tilde B over `J_k(s+1)` with the chain
/// `h_{j_2-1,j_1} ⋯ h_{j_k-1,j_{k-1}} h_{n,j_k}`.
pub fn poincare_tilde_b_closed(n: usize, s: usize) -> Result<QPoly> {
    check_b(n, s)?;
    Ok(tilde_b_chain(n, s, 1))
}

/// The chain read without the index shift, `h_{j_2,j_1} ⋯ h_{n,j_k}`.
/// Kept to document that it disagrees with the models.
pub fn poincare_tilde_b_unshifted(n: usize, s: usize) -> Result<QPoly> {
    check_b(n, s)?;
    Ok(tilde_b_chain(n, s, 0))
}

fn tilde_b_chain(n: usize, s: usize, shift: usize) -> QPoly {
    let mut acc = QPoly::one();
    for k in 1..=s + 1 {
        for t in jk_lists(k, s + 1) {
            let mut p = h(n, t[k - 1]);
            for i in 1..k {
                p = p * h(t[i] - shift, t[i - 1]);
            }
            acc += &p;
        }
    }
    acc
}

pub fn poincare_tilde_b(n: usize, s: usize) -> Result<QPoly> {
    poincare_tilde_b_closed(n, s)
}

pub fn poincare_max_b(n: usize) -> Result<QPoly> {
    poincare_tilde_b(n, n.saturating_sub(2))
}

/// `P(Y_{G_s(B_n)})` by interpolation with `Φ_B`.
pub fn poincare_regular_b(n: usize, s: usize) -> Result<QPoly> {
    check_b(n, s)?;
    let phi = series::b_series(series_order(n))?.phi_b_y;
    let w = int(&(pow2(n) * factorial(n)));
    let mut acc = tilde_b_unchecked(n, s);
    for j in s + 1..=n - 2 {
        acc += &(phi.coeff(n, j).scale(&w) * tilde_b_unchecked(j, s));
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// type D

/// `Γ/n`: the monomials of the B model whose support has a strong
/// singleton, grouped by the chain of weak subspaces below it.
/// `bound = None` is the maximal model.
fn gamma_inner(n: usize, bound: Option<usize>) -> QPoly {
    let mut acc = QPoly::zero();
    let tb = bound.map_or(TildeBound::None, TildeBound::Geometric);
    for k in 1..n {
        for t in jk_tilde_lists(k, n, tb) {
            let j1 = t[0];
            let mut p = ftilde_poly(t[1], j1).expect("j_2 > j_1").scale(&int(&pow2(n - 1 - j1)));
            for i in 2..=k {
                p = p * f(t[i], t[i - 1]);
            }
            let s = bound.unwrap_or(j1.saturating_sub(2));
            acc += &(p * tilde_b_unchecked(j1, s));
        }
    }
    acc
}

/// The printed `Γ`: printed `J̃` bound and no colourings of the weak blocks
/// below the strong singleton. Kept to document the disagreement.
pub fn gamma_d_printed(n: usize, s: Option<usize>) -> Result<QPoly> {
    range(n >= 4, || "D formulas need n >= 4".into())?;
    let mut acc = QPoly::zero();
    let tb = s.map_or(TildeBound::None, TildeBound::Printed);
    for k in 1..n {
        for t in jk_tilde_lists(k, n, tb) {
            let j1 = t[0];
            let mut p = ftilde_poly(t[1], j1).expect("j_2 > j_1");
            for i in 2..=k {
                p = p * f(t[i], t[i - 1]);
            }
            acc += &(p * tilde_b_unchecked(j1, s.unwrap_or(j1.saturating_sub(2))));
        }
    }
    Ok(acc.scale(&BigRational::from_integer(n.into())))
}

pub fn gamma_max_d(n: usize) -> Result<QPoly> {
    range(n >= 4, || "D formulas need n >= 4".into())?;
    Ok(gamma_inner(n, None).scale(&BigRational::from_integer(n.into())))
}

pub fn gamma_s_d(n: usize, s: usize) -> Result<QPoly> {
    range(n >= 4 && s + 2 <= n, || format!("D formulas need n >= 4 and 0 <= s <= n-2 (n={n}, s={s})"))?;
    Ok(gamma_inner(n, Some(s)).scale(&BigRational::from_integer(n.into())))
}

/// Tabulated small cases `P(Y_{G̃_s(D_n)})` for `n = 2, 3`.
pub fn d_base_table(n: usize, s: usize) -> Result<QPoly> {
    match (n, s) {
        (2, 0 | 1) => Ok(QPoly::from_ints(&[1, 1])),
        (3, 0) => Ok(QPoly::from_ints(&[1, 1, 1])),
        (3, 1 | 2) => Ok(QPoly::from_ints(&[1, 7, 1])),
        _ => Err(Error::Range(format!("no tabulated D value for n={n}, s={s}"))),
    }
}

pub fn poincare_max_d(n: usize) -> Result<QPoly> {
    if n < 4 {
        return d_base_table(n, n.saturating_sub(2));
    }
    Ok(tilde_b_unchecked(n, n - 2) - gamma_max_d(n)?)
}

fn tilde_d_unchecked(n: usize, s: usize) -> QPoly {
    tilde_b_unchecked(n, s) - gamma_inner(n, Some(s)).scale(&BigRational::from_integer(n.into()))
}

/// `P(Y_{G̃_s(D_n)}) = P(Y_{G̃_s(B_n)}) - Γ_s^n`; `n = 2, 3` come from the table.
pub fn poincare_tilde_d(n: usize, s: usize) -> Result<QPoly> {
    if n < 4 {
        return d_base_table(n, s);
    }
    range(s + 2 <= n, || format!("D formulas need 0 <= s <= n-2 (n={n}, s={s})"))?;
    Ok(tilde_d_unchecked(n, s))
}

/// `P(Y_{G_s(D_n)})` by interpolation, with the chosen series reading.
pub fn poincare_regular_d(n: usize, s: usize, reading: DReading) -> Result<QPoly> {
    range(n >= 4 && s + 2 <= n, || format!("regular D needs n >= 4 and 0 <= s <= n-2 (n={n}, s={s})"))?;
    let d = series::d_series(series_order(n), reading)?;
    let w = reading.weight(n);
    let mut acc = tilde_d_unchecked(n, s);
    for j in s + 1..=n - 2 {
        let c = d.phi_d_y.coeff(n, j).scale(&w);
        match reading {
            DReading::Derived => {
                // a weak-only stratum leaves a quotient whose free leaves
                // cannot turn strong on their own
                let c2 = d.psi_d_y.coeff(n, j).scale(&w);
                acc += &(c * tilde_b_unchecked(j, s));
                acc = acc - c2 * gamma_inner(j, Some(s));
            }
            _ => {
                let base = match j {
                    0 | 1 => QPoly::one(),
                    2 | 3 => d_base_table(j, s)?,
                    _ => tilde_d_unchecked(j, s),
                };
                acc += &(c * base);
            }
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Euler characteristics

/// `p(-1)`.
pub fn euler_from_poincare(p: &QPoly) -> Result<BigInt> {
    to_int(&p.eval_int(-1))
}

fn signed(i: usize, x: BigInt) -> BigInt {
    if i % 2 == 0 {
        x
    } else {
        -x
    }
}

/// Face count of the `n!` glued permutohedra `P_{n-2}`:
/// `Σ_i (-1)^i S(n-1, n-1-i)/2^{n-i-1} (n-i-1)! n!`.
pub fn euler_permutohedron_a(n: usize) -> Result<BigInt> {
    range(n >= 2, || "needs n >= 2".into())?;
    let mut acc = BigInt::zero();
    for i in 0..=n - 2 {
        let num: BigInt = (stirling2(n - 1, n - 1 - i) * factorial(n - i - 1) * factorial(n)).into();
        acc += signed(i, exact_div(&num, &pow2(n - i - 1).into())?);
    }
    Ok(acc)
}

/// The closed maximal-A formula at `q = -1`: chains `j_1 < ⋯ < j_k <= n-2`
/// of the parity of `n`, weighted by `(-1)^k S(j_2,j_1) ⋯ S(n,j_k)`.
pub fn euler_closed_a(n: usize) -> Result<BigInt> {
    range(n >= 2, || "needs n >= 2".into())?;
    let mut acc = BigInt::one();
    if n < 3 {
        return Ok(acc);
    }
    for k in 1..=(n - 1) / 2 {
        for t in jk_lists(k, n - 2) {
            if t.iter().any(|&j| (n - j) % 2 != 0) {
                continue;
            }
            let mut p = stirling2(n, t[k - 1]);
            for i in 1..k {
                p *= stirling2(t[i], t[i - 1]);
            }
            acc += signed(k, p.into());
        }
    }
    Ok(acc)
}

/// Face count of the `2^n n!` glued permutohedra `P_{n-1}`.
pub fn euler_permutohedron_b(n: usize) -> Result<BigInt> {
    range(n >= 2, || "needs n >= 2".into())?;
    let mut acc = BigInt::zero();
    for i in 0..n {
        let num: BigInt = (stirling2(n, n - i) * factorial(n - i) * pow2(n) * factorial(n)).into();
        acc += signed(i, exact_div(&num, &pow2(n - i).into())?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    #[test]
    fn maximal_a() {
        assert_eq!(poincare_max_a(2).unwrap(), QPoly::one());
        assert_eq!(poincare_max_a(3).unwrap(), p("q+1"));
        assert_eq!(poincare_max_a(4).unwrap(), p("q^2+8*q+1"));
        assert_eq!(poincare_max_a(7).unwrap(), p("q^5+855*q^4+9556*q^3+9556*q^2+855*q+1"));
        for n in 1..=9 {
            assert_eq!(poincare_max_a_inductive(n).unwrap(), poincare_max_a_closed(n).unwrap());
        }
    }

    #[test]
    fn tilde_a() {
        for n in 3..=7 {
            assert_eq!(poincare_tilde_a(n, 1).unwrap(), QPoly::geometric(n - 1) + QPoly::one());
            assert_eq!(poincare_tilde_a(n, n - 2).unwrap(), poincare_max_a(n).unwrap());
        }
        assert!(poincare_tilde_a(5, 0).is_err());
    }

    #[test]
    fn regular_a() {
        assert_eq!(poincare_regular_a(5, 1).unwrap(), p("q^3+16*q^2+16*q+1"));
        assert_eq!(poincare_regular_a(5, 2).unwrap(), p("q^3+26*q^2+26*q+1"));
        assert_eq!(poincare_regular_a(5, 3).unwrap(), p("q^3+41*q^2+41*q+1"));
        assert_eq!(poincare_regular_a(6, 2).unwrap(), p("q^4+67*q^3+222*q^2+67*q+1"));
        assert_eq!(poincare_regular_a(6, 4).unwrap(), p("q^4+187*q^3+732*q^2+187*q+1"));
    }

    #[test]
    fn tilde_b() {
        for n in 2..=6 {
            for s in 0..=n - 2 {
                assert_eq!(poincare_tilde_b_closed(n, s).unwrap(), poincare_tilde_b_inductive(n, s).unwrap());
            }
            assert_eq!(poincare_tilde_b(n, 0).unwrap(), h(n, 1) + QPoly::one());
        }
        assert!(!poincare_tilde_b_unshifted(4, 2).unwrap().is_palindromic());
    }

    #[test]
    fn d_values() {
        assert_eq!(poincare_max_d(4).unwrap(), p("q^3+59*q^2+59*q+1"));
        assert_eq!(poincare_max_d(5).unwrap(), p("q^4+382*q^3+1722*q^2+382*q+1"));
        assert_eq!(poincare_tilde_d(5, 2).unwrap(), p("q^4+272*q^3+462*q^2+272*q+1"));
        assert_eq!(poincare_regular_d(5, 0, DReading::Derived).unwrap(), p("q^4+112*q^3+402*q^2+112*q+1"));
        assert_eq!(poincare_tilde_d(2, 0).unwrap(), p("q+1"));
        assert_eq!(poincare_tilde_d(3, 1).unwrap(), p("q^2+7*q+1"));
    }

    #[test]
    fn euler() {
        assert_eq!(euler_from_poincare(&poincare_max_a(6).unwrap()).unwrap(), BigInt::from(360));
        assert_eq!(euler_permutohedron_a(6).unwrap(), BigInt::from(360));
        assert_eq!(euler_closed_a(6).unwrap(), BigInt::from(360));
        assert_eq!(euler_from_poincare(&QPoly::one()).unwrap(), BigInt::one());
        assert_eq!(euler_closed_a(7).unwrap(), BigInt::zero());
    }
}
