//! Exact polynomials in `q`, truncated bivariate series in `t` and `y`,
//! and the combinatorial building blocks used by the Poincaré formulas
//! (Stirling numbers, the `f`, `f̃`, `h` polynomials and the index sets `J_k`).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial in `q` with exact rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut v = vec![BigRational::zero(); deg + 1];
        v[deg] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints<T: Into<BigInt> + Clone>(cs: &[T]) -> Self {
        Self::from_coeffs(
            cs.iter()
                .map(|c| BigRational::from_integer(c.clone().into()))
                .collect(),
        )
    }

    /// `q + q^2 + ... + q^(a-1)`, i.e. `(q^a - q)/(q - 1)`; zero for `a <= 1`.
    pub fn geometric(a: usize) -> Self {
        if a <= 1 {
            return Self::zero();
        }
        let mut v = vec![BigRational::one(); a];
        v[0] = BigRational::zero();
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> BigRational {
        self.coeffs.get(deg).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// Exact division by `q - 1`. Fails when `p(1) != 0`.
    pub fn exact_div_qminus1(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // synthetic division by (q - 1), highest degree first
        let d = self.coeffs.len() - 1;
        let mut out = vec![BigRational::zero(); d];
        let mut carry = BigRational::zero();
        for i in (1..=d).rev() {
            carry = &carry + &self.coeffs[i];
            out[i - 1] = carry.clone();
        }
        let rem = carry + &self.coeffs[0];
        if !rem.is_zero() {
            return Err(Error::InexactDivision(self.to_string()));
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Integer, nonnegative coefficients and constant term one.
    pub fn is_poincare_like(&self) -> bool {
        self.is_integral()
            && self.coeffs.iter().all(|c| !c.is_negative())
            && self.coeff(0).is_one()
    }

    /// Coefficients as integers, if all are integral.
    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// JSON array of coefficients in ascending degree. Integers that fit in
    /// `i64` are numbers, everything else a string.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| match c.is_integer().then(|| c.to_integer().to_i64()).flatten() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(rat_text(c)),
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected a coefficient array".into()))?;
        let mut out = Vec::with_capacity(arr.len());
        for x in arr {
            let c = match x {
                serde_json::Value::Number(n) => {
                    let i = n
                        .as_i64()
                        .ok_or_else(|| Error::Parse(format!("non-integer number {n}")))?;
                    BigRational::from_integer(i.into())
                }
                serde_json::Value::String(s) => parse_rat(s)?,
                _ => return Err(Error::Parse(format!("bad coefficient {x}"))),
            };
            out.push(c);
        }
        Ok(Self::from_coeffs(out))
    }
}

fn rat_text(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Text form, highest degree first: `q^3+16*q^2+16*q+1`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            let var = match deg {
                0 => String::new(),
                1 => "q".to_string(),
                d => format!("q^{d}"),
            };
            if deg == 0 {
                write!(f, "{}", rat_text(&a))?;
            } else if a.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", rat_text(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl FromStr for QPoly {
    type Err = Error;

    /// Parses the text form produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = QPoly::zero();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (coef, var) = match body.find('q') {
                None => (body, ""),
                Some(p) => {
                    let c = body[..p].trim_end_matches('*');
                    (if c.is_empty() { "1" } else { c }, &body[p..])
                }
            };
            let deg = if var.is_empty() {
                0
            } else if var == "q" {
                1
            } else {
                var.strip_prefix("q^")
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad term '{t}'")))?
            };
            let mut c = parse_rat(coef)?;
            if neg {
                c = -c;
            }
            acc = acc + QPoly::monomial(c, deg);
        }
        Ok(acc)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        &self - &rhs
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(v)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

// ---------------------------------------------------------------------------
// truncated series in t (order N) and y (polynomial)

/// Power series in `t` truncated above `t^N`, polynomial in `y`, with
/// `QPoly` coefficients. Zero coefficients are not stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: HashMap<(usize, usize), QPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { order, coeffs: HashMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, QPoly::one())
    }

    pub fn constant(order: usize, c: QPoly) -> Self {
        let mut s = Self::zero(order);
        s.set(0, 0, c);
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.set(1, 0, QPoly::one());
        s
    }

    /// The series `y`.
    pub fn y(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.set(0, 1, QPoly::one());
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn set(&mut self, tdeg: usize, ydeg: usize, c: QPoly) {
        if tdeg > self.order {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&(tdeg, ydeg));
        } else {
            self.coeffs.insert((tdeg, ydeg), c);
        }
    }

    fn add_to(&mut self, tdeg: usize, ydeg: usize, c: &QPoly) {
        if tdeg > self.order || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((tdeg, ydeg)).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(tdeg, ydeg));
        }
    }

    /// Coefficient of `t^n y^j`.
    pub fn coeff(&self, n: usize, j: usize) -> QPoly {
        self.coeffs.get(&(n, j)).cloned().unwrap_or_default()
    }

    /// Coefficient of `t^n` with `y = 1`.
    pub fn coeff_t(&self, n: usize) -> QPoly {
        let mut acc = QPoly::zero();
        for ((tn, _), c) in &self.coeffs {
            if *tn == n {
                acc += c;
            }
        }
        acc
    }

    /// Largest `y`-degree present at `t^n`.
    pub fn max_y_degree(&self, n: usize) -> Option<usize> {
        self.coeffs.keys().filter(|(tn, _)| *tn == n).map(|(_, j)| *j).max()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::Precondition(format!(
                "series orders differ ({} vs {})",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for ((n, j), c) in &other.coeffs {
            out.add_to(*n, *j, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &QPoly) -> Self {
        let mut out = Self::zero(self.order);
        for ((n, j), x) in &self.coeffs {
            out.set(*n, *j, x * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        self.scale(&QPoly::constant(c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for ((n1, j1), a) in &self.coeffs {
            for ((n2, j2), b) in &other.coeffs {
                if n1 + n2 <= self.order {
                    out.add_to(n1 + n2, j1 + j2, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Multiply by `y`.
    pub fn shift_y(&self) -> Self {
        let mut out = Self::zero(self.order);
        for ((n, j), c) in &self.coeffs {
            out.set(*n, j + 1, c.clone());
        }
        out
    }

    fn has_constant_term(&self) -> bool {
        self.coeffs.keys().any(|(n, _)| *n == 0)
    }

    /// `exp(s)`; requires no `t^0` terms.
    pub fn exp(&self) -> Result<Self> {
        if self.has_constant_term() {
            return Err(Error::Precondition("exp needs a series without t^0 terms".into()));
        }
        let mut res = Self::one(self.order);
        let mut term = Self::one(self.order);
        for k in 1..=self.order {
            let inv = BigRational::new(BigInt::one(), BigInt::from(k));
            term = term.mul(self)?.scale_rat(&inv);
            res = res.add(&term)?;
        }
        Ok(res)
    }

    /// `1/s`; requires the `t^0` part to be exactly `1`.
    pub fn reciprocal(&self) -> Result<Self> {
        let mut c0 = Self::zero(self.order);
        for ((n, j), c) in &self.coeffs {
            if *n == 0 {
                c0.set(0, *j, c.clone());
            }
        }
        if c0 != Self::one(self.order) {
            return Err(Error::Precondition("reciprocal needs constant term 1".into()));
        }
        // 1/(1 - a) with a = 1 - s
        let a = Self::one(self.order).sub(self)?;
        let mut res = Self::one(self.order);
        let mut p = Self::one(self.order);
        for _ in 1..=self.order {
            p = p.mul(&a)?;
            res = res.add(&p)?;
        }
        Ok(res)
    }

    /// Term-wise antiderivative in `t`; the top order is dropped.
    pub fn integrate_t(&self) -> Self {
        let mut out = Self::zero(self.order);
        for ((n, j), c) in &self.coeffs {
            let inv = BigRational::new(BigInt::one(), BigInt::from(n + 1));
            out.set(n + 1, *j, c.scale(&inv));
        }
        out
    }

    pub fn derivative_t(&self) -> Self {
        let mut out = Self::zero(self.order);
        for ((n, j), c) in &self.coeffs {
            if *n > 0 {
                out.set(n - 1, *j, c.scale(&BigRational::from_integer(BigInt::from(*n))));
            }
        }
        out
    }

    /// Substitute a rational value for `y`.
    pub fn eval_y(&self, y: &BigRational) -> Self {
        let mut out = Self::zero(self.order);
        for ((n, j), c) in &self.coeffs {
            let mut f = BigRational::one();
            for _ in 0..*j {
                f *= y;
            }
            out.add_to(*n, 0, &c.scale(&f));
        }
        out
    }

    /// Substitute a rational value for `q`; coefficients become constants.
    pub fn eval_q(&self, q: &BigRational) -> Self {
        let mut out = Self::zero(self.order);
        for ((n, j), c) in &self.coeffs {
            out.set(*n, *j, QPoly::constant(c.eval(q)));
        }
        out
    }

    /// Apply a fallible map to every coefficient.
    pub fn try_map(&self, f: impl Fn(&QPoly) -> Result<QPoly>) -> Result<Self> {
        let mut out = Self::zero(self.order);
        for ((n, j), c) in &self.coeffs {
            out.set(*n, *j, f(c)?);
        }
        Ok(out)
    }

    /// Drop every term of `t`-degree above `n`.
    pub fn truncate(&self, n: usize) -> Self {
        let mut out = Self::zero(self.order);
        for ((tn, j), c) in &self.coeffs {
            if *tn <= n {
                out.set(*tn, *j, c.clone());
            }
        }
        out
    }

    /// Sorted `(t-degree, y-degree, coefficient)` triples.
    pub fn terms(&self) -> Vec<(usize, usize, QPoly)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|((n, j), c)| (*n, *j, c.clone())).collect();
        v.sort_by_key(|(n, j, _)| (*n, *j));
        v
    }
}

// ---------------------------------------------------------------------------
// combinatorial numbers

fn stirling_table() -> &'static Mutex<Vec<Vec<BigUint>>> {
    static T: OnceLock<Mutex<Vec<Vec<BigUint>>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(vec![vec![BigUint::one()]]))
}

/// Stirling number of the second kind `S(n, j)`.
pub fn stirling2(n: usize, j: usize) -> BigUint {
    if j > n {
        return BigUint::zero();
    }
    let mut rows = stirling_table().lock().unwrap_or_else(|e| e.into_inner());
    while rows.len() <= n {
        let prev = rows.last().unwrap().clone();
        let m = prev.len();
        let mut row = vec![BigUint::zero(); m + 1];
        for k in 1..=m {
            let carry = if k < m { &prev[k] * BigUint::from(k) } else { BigUint::zero() };
            row[k] = carry + &prev[k - 1];
        }
        rows.push(row);
    }
    rows[n][j].clone()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

pub(crate) fn big(u: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(u.clone()))
}

/// `f_{n,j}(q) = S(n,j) (q^{n-j} - q)/(q - 1)`, for `n > j >= 1`.
pub fn f_poly(n: usize, j: usize) -> Result<QPoly> {
    if !(j >= 1 && n > j) {
        return Err(Error::Range(format!("f_poly({n},{j}) needs n > j >= 1")));
    }
    Ok(QPoly::geometric(n - j).scale(&big(&stirling2(n, j))))
}

/// `f̃(n,m) = S(n,m) (q^{n-m+1} - q)/(q - 1)`, for `n > m`.
pub fn ftilde_poly(n: usize, m: usize) -> Result<QPoly> {
    if n <= m {
        return Err(Error::Range(format!("ftilde_poly({n},{m}) needs n > m")));
    }
    Ok(QPoly::geometric(n - m + 1).scale(&big(&stirling2(n, m))))
}

/// The count multiplying `h_{n,j}`:
/// `sum_{k=1}^{n+1-(j-1)} C(n,k-1) S(n+1-k, j-1) 2^{n+1-(j-1)-k}`.
pub fn h_count(n: usize, j: usize) -> BigUint {
    if j == 0 {
        return BigUint::zero();
    }
    let mut acc = BigUint::zero();
    for k in 1..=(n + 2).saturating_sub(j) {
        acc += binomial(n, k - 1) * stirling2(n + 1 - k, j - 1) * pow2(n + 2 - j - k);
    }
    acc
}

/// `h_{n,j}(q) = h_count(n,j) (q^{n+1-j} - q)/(q - 1)`, for `n >= j >= 1`.
pub fn h_poly(n: usize, j: usize) -> Result<QPoly> {
    if !(j >= 1 && n >= j) {
        return Err(Error::Range(format!("h_poly({n},{j}) needs n >= j >= 1")));
    }
    Ok(QPoly::geometric(n + 1 - j).scale(&big(&h_count(n, j))))
}

/// `J_k(m)`: increasing `k`-tuples in `1..=m` whose consecutive entries
/// differ by at least two.
pub fn jk_lists(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            cur.push(v);
            rec(k, m, v + 2, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 {
        rec(k, m, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Upper bound applied to `J̃_{k,s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TildeBound {
    /// No bound (the maximal case).
    None,
    /// `j_k <= s` for every `k`.
    Printed(usize),
    /// `j_1 <= s` when `k = 1`, `j_k <= s - 1` when `k >= 2`: the lowest
    /// weak subspace has `j_k + 1` blocks counting the strong singleton.
    Geometric(usize),
}

/// `J̃_k(n-1)`: tuples `(j_1, ..., j_k, j_{k+1} = n-1)` with
/// `j_2 - j_1 >= 1` and `j_i - j_{i-1} >= 2` for `i >= 3`, optionally bounded.
pub fn jk_tilde_lists(k: usize, n: usize, bound: TildeBound) -> Vec<Vec<usize>> {
    let top = match n.checked_sub(1) {
        Some(t) if t >= 1 && k >= 1 => t,
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(k: usize, top: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            let last = *cur.last().unwrap();
            let gap = if k == 1 { 1 } else { 2 };
            if top >= last + gap {
                let mut t = cur.clone();
                t.push(top);
                out.push(t);
            }
            return;
        }
        let start = match cur.len() {
            0 => 1,
            1 => cur[0] + 1,
            _ => cur.last().unwrap() + 2,
        };
        for v in start..top {
            cur.push(v);
            rec(k, top, cur, out);
            cur.pop();
        }
    }
    rec(k, top, &mut cur, &mut out);
    out.retain(|t| match bound {
        TildeBound::None => true,
        TildeBound::Printed(s) => t[k - 1] <= s,
        TildeBound::Geometric(s) => {
            if k == 1 {
                t[0] <= s
            } else {
                t[k - 1] + 1 <= s
            }
        }
    });
    out
}

/// Integer part of a rational known to be integral.
pub(crate) fn to_int(c: &BigRational) -> Result<BigInt> {
    if c.is_integer() {
        Ok(c.to_integer())
    } else {
        Err(Error::NonIntegral(rat_text(c)))
    }
}

/// Exact quotient `a / b` of big integers.
pub(crate) fn exact_div(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    let (qt, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::InexactDivision(format!("{a}/{b}")));
    }
    Ok(qt)
}
