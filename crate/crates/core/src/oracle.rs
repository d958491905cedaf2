//! Brute-force ground truth: nested sets and admissible monomials.
//!
//! The cohomology of a wonderful model has a basis of monomials
//! `∏ c_A^{f(A)}` whose support is nested and whose exponents satisfy
//! `1 <= f(A) < d(A)`, where `d(A) = dim A - dim(sum of the support strictly
//! below A)`. Everything here is computed from that description and from
//! subspace sums, without any of the formulas.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arrangements::{BuildingSet, Subspace};
use crate::error::{Error, Result};
use crate::QPoly;

/// `d_{H,B} = dim B - dim(sum of H)`; every member of `h` must lie strictly
/// inside `b`.
pub fn d_h_b(h: &[Subspace], b: &Subspace) -> Result<i64> {
    for a in h {
        if !b.contains(a)? || a == b {
            return Err(Error::Precondition(format!("{a} is not strictly contained in {b}")));
        }
    }
    let s = Subspace::sum_all(b.kind(), b.ambient(), h);
    Ok(b.dim() as i64 - s.dim() as i64)
}

/// Pairwise inclusion table over the canonical member order.
struct Table<'a> {
    g: &'a BuildingSet,
    /// `below[j][i]`: member `i` is strictly inside member `j`.
    below: Vec<Vec<bool>>,
}

impl<'a> Table<'a> {
    fn new(g: &'a BuildingSet) -> Self {
        let m = g.members();
        let below = m
            .iter()
            .enumerate()
            .map(|(j, b)| {
                m.iter().enumerate().map(|(i, a)| i != j && a.dim() < b.dim() && b.contains_unchecked(a)).collect()
            })
            .collect();
        Table { g, below }
    }

    fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.below[i][j] || self.below[j][i]
    }

    /// Can `x` join the nested set `s`? Checks every antichain through `x`.
    fn extends(&self, s: &[usize], x: usize) -> bool {
        let cand: Vec<usize> = s.iter().copied().filter(|&y| !self.comparable(x, y)).collect();
        let m = self.g.members();
        // depth-first over antichains of `cand`, carrying their sum with `x`
        fn rec(t: &Table, cand: &[usize], start: usize, chosen: &mut Vec<usize>, acc: &Subspace) -> bool {
            for k in start..cand.len() {
                let y = cand[k];
                if chosen.iter().any(|&c| t.comparable(c, y)) {
                    continue;
                }
                let sum = acc.sum_unchecked(&t.g.members()[y]);
                if t.g.has(&sum) {
                    return false;
                }
                chosen.push(y);
                let ok = rec(t, cand, k + 1, chosen, &sum);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        rec(self, &cand, 0, &mut Vec::new(), &m[x])
    }

    /// `d` of `x` relative to the members of `s` strictly below it.
    fn d(&self, s: &[usize], x: usize) -> usize {
        let m = self.g.members();
        let below = s.iter().filter(|&&y| self.below[x][y]).map(|&y| &m[y]);
        m[x].dim() - Subspace::sum_all(self.g.kind(), self.g.ambient(), below).dim()
    }
}

/// Every nested subset of `g` as sorted member indices, the empty set
/// first, in depth-first order.
pub fn enumerate_nested_sets(g: &BuildingSet) -> Vec<Vec<usize>> {
    let t = Table::new(g);
    let mut out = Vec::new();
    fn rec(t: &Table, start: usize, s: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(s.clone());
        for x in start..t.g.len() {
            if t.extends(s, x) {
                s.push(x);
                rec(t, x + 1, s, out);
                s.pop();
            }
        }
    }
    rec(&t, 0, &mut Vec::new(), &mut out);
    out
}

fn mul_geometric(p: &[u128], d: usize) -> Vec<u128> {
    // p * (q + q^2 + ... + q^{d-1})
    let mut out = vec![0u128; p.len() + d - 1];
    for (i, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for e in 1..d {
            out[i + e] += c;
        }
    }
    out
}

/// Poincaré polynomial from the admissible-monomial basis.
pub fn poincare_oracle(g: &BuildingSet) -> QPoly {
    let t = Table::new(g);
    let mut total: Vec<u128> = vec![0];
    fn rec(t: &Table, start: usize, s: &mut Vec<usize>, cur: &[u128], total: &mut Vec<u128>) {
        if total.len() < cur.len() {
            total.resize(cur.len(), 0);
        }
        for (i, &c) in cur.iter().enumerate() {
            total[i] += c;
        }
        for x in start..t.g.len() {
            // members are sorted by dimension, so later members never sit
            // below earlier ones and d(x) is final once x is added
            let d = t.d(s, x);
            if d <= 1 || !t.extends(s, x) {
                continue;
            }
            let next = mul_geometric(cur, d);
            s.push(x);
            rec(t, x + 1, s, &next, total);
            s.pop();
        }
    }
    rec(&t, 0, &mut Vec::new(), &[1], &mut total);
    let coeffs: Vec<num_bigint::BigInt> = total.into_iter().map(num_bigint::BigInt::from).collect();
    QPoly::from_ints(&coeffs)
}

/// Total number of admissible monomials, counted directly from the nested
/// sets with `d` recomputed through subspace sums.
pub fn betti_total(g: &BuildingSet) -> BigUint {
    let m = g.members();
    let mut total = BigUint::zero();
    for s in enumerate_nested_sets(g) {
        let mut count = BigUint::one();
        for &a in &s {
            let h: Vec<Subspace> = s
                .iter()
                .filter(|&&b| b != a && m[a].contains_unchecked(&m[b]))
                .map(|&b| m[b].clone())
                .collect();
            let d = d_h_b(&h, &m[a]).expect("members below are strictly contained");
            if d <= 1 {
                count = BigUint::zero();
                break;
            }
            count *= BigUint::from((d - 1) as u64);
        }
        total += count;
    }
    total
}

/// An admissible function: member indices with exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleFunction {
    pub assignments: Vec<(usize, usize)>,
}

impl AdmissibleFunction {
    pub fn degree(&self) -> usize {
        self.assignments.iter().map(|(_, e)| e).sum()
    }

    /// `c_{{1,2}}^1 * c_{{1,2,3}}^2 : degree 3`, with `1` for the empty monomial.
    pub fn render(&self, g: &BuildingSet) -> String {
        let body = if self.assignments.is_empty() {
            "1".to_string()
        } else {
            self.assignments
                .iter()
                .map(|&(i, e)| format!("c_{{{}}}^{e}", g.members()[i]))
                .collect::<Vec<_>>()
                .join(" * ")
        };
        format!("{body} : degree {}", self.degree())
    }
}

/// Every admissible function, up to `limit` of them.
pub fn admissible_functions(g: &BuildingSet, limit: usize) -> Vec<AdmissibleFunction> {
    let t = Table::new(g);
    let mut out = Vec::new();
    for s in enumerate_nested_sets(g) {
        let ds: Vec<usize> = s.iter().map(|&x| t.d(&s, x)).collect();
        if ds.iter().any(|&d| d <= 1) {
            continue;
        }
        let mut exps = vec![1usize; s.len()];
        loop {
            if out.len() >= limit {
                return out;
            }
            out.push(AdmissibleFunction { assignments: s.iter().copied().zip(exps.iter().copied()).collect() });
            // odometer over 1..d-1
            let mut k = 0;
            while k < exps.len() {
                exps[k] += 1;
                if exps[k] < ds[k] {
                    break;
                }
                exps[k] = 1;
                k += 1;
            }
            if k == exps.len() {
                break;
            }
        }
    }
    out
}

/// `[a]` followed by the members `b` of `g` outside `t` in which `a` is
/// maximal among the members of `t` contained in `b`.
pub fn restriction_image(t: &BuildingSet, g: &BuildingSet, a: &Subspace) -> Result<Vec<Subspace>> {
    if !t.is_subset_of(g) {
        return Err(Error::Precondition("t is not contained in g".into()));
    }
    if !t.has(a) {
        return Err(Error::Precondition(format!("{a} is not a member of t")));
    }
    let mut out = vec![a.clone()];
    for b in g.members() {
        if t.has(b) || !b.contains_unchecked(a) {
            continue;
        }
        let bigger = t
            .members()
            .iter()
            .any(|c| c != a && c.dim() > a.dim() && b.contains_unchecked(c) && c.contains_unchecked(a));
        if !bigger {
            out.push(b.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::{irreducibles, maximal_building, regular};
    use crate::Kind;

    fn a(n: usize, blocks: &[&[usize]]) -> Subspace {
        Subspace::a_type(n, blocks).unwrap()
    }

    #[test]
    fn d_values() {
        let b = a(3, &[&[1, 2, 3]]);
        assert_eq!(d_h_b(&[], &b).unwrap(), 2);
        assert_eq!(d_h_b(&[a(3, &[&[1, 2]])], &b).unwrap(), 1);
        let u = a(5, &[&[1, 2], &[4, 5]]);
        assert!(d_h_b(&[a(5, &[&[1, 2]]), a(5, &[&[4, 5]]), u.clone()], &u).is_err());
    }

    #[test]
    fn chains_in_maximal_families() {
        let g = maximal_building(Kind::A, 4).unwrap();
        let t = Table::new(&g);
        for s in enumerate_nested_sets(&g) {
            for (i, &x) in s.iter().enumerate() {
                for &y in &s[i + 1..] {
                    assert!(t.comparable(x, y));
                }
            }
        }
        let g3 = maximal_building(Kind::A, 3).unwrap();
        // a chain of length k has 2^k subsets; here the chains are
        // {ij} < {123} plus the singletons
        assert_eq!(enumerate_nested_sets(&g3).len(), 1 + 4 + 3);
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(poincare_oracle(&maximal_building(Kind::A, 3).unwrap()), "q+1".parse().unwrap());
        assert_eq!(poincare_oracle(&maximal_building(Kind::A, 4).unwrap()), "q^2+8*q+1".parse().unwrap());
        assert_eq!(poincare_oracle(&regular(Kind::A, 5, 1).unwrap()), "q^3+16*q^2+16*q+1".parse().unwrap());
        assert_eq!(poincare_oracle(&regular(Kind::A, 5, 3).unwrap()), "q^3+41*q^2+41*q+1".parse().unwrap());
        assert_eq!(poincare_oracle(&BuildingSet::empty(Kind::A, 3)), QPoly::one());
    }

    #[test]
    fn betti_counts() {
        assert_eq!(betti_total(&maximal_building(Kind::A, 3).unwrap()), BigUint::from(2u32));
        let f = irreducibles(Kind::A, 4).unwrap();
        assert_eq!(
            poincare_oracle(&f).eval_int(1),
            num_rational::BigRational::from_integer(betti_total(&f).into())
        );
        assert_eq!(betti_total(&BuildingSet::empty(Kind::A, 3)), BigUint::one());
    }

    #[test]
    fn monomial_listing() {
        let g = maximal_building(Kind::A, 4).unwrap();
        let fs = admissible_functions(&g, usize::MAX);
        assert_eq!(fs.len(), 10);
        let line = fs[1].render(&g);
        assert!(line.starts_with("c_{") && line.contains(": degree"));
    }

    #[test]
    fn restriction() {
        let t = irreducibles(Kind::A, 6).unwrap();
        let g = maximal_building(Kind::A, 6).unwrap();
        let img = restriction_image(&t, &g, &a(6, &[&[1, 2, 3]])).unwrap();
        let text: Vec<String> = img.iter().map(|s| s.to_string()).collect();
        assert_eq!(text, ["{1,2,3}", "{1,2,3}{4,5}", "{1,2,3}{4,6}", "{1,2,3}{5,6}", "{1,2,3}{4,5,6}"]);
        assert_eq!(restriction_image(&g, &g, &a(6, &[&[1, 2, 3]])).unwrap().len(), 1);
    }
}
