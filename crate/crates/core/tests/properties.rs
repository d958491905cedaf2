use proptest::prelude::*;
use wonderful::arrangements::{is_building, quotient_building, regular, regular_tilde, Subspace};
use wonderful::formulas::*;
use wonderful::oracle::poincare_oracle;
use wonderful::{linalg, Kind, QPoly};

/// A random set partition of `1..=n`, given as a block label per coordinate.
fn labels(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..n, n)
}

fn blocks(n: usize, lab: &[usize]) -> Vec<Vec<usize>> {
    (0..n).map(|b| (1..=n).filter(|&i| lab[i - 1] == b).collect()).filter(|v: &Vec<usize>| !v.is_empty()).collect()
}

fn a_sub(n: usize, lab: &[usize]) -> Subspace {
    let bl = blocks(n, lab);
    let refs: Vec<&[usize]> = bl.iter().map(|b| b.as_slice()).collect();
    Subspace::a_type(n, &refs).unwrap()
}

/// Label 0 marks the strong set; signs pick the minus coordinates.
fn signed_sub(kind: Kind, n: usize, lab: &[usize], signs: &[bool]) -> Subspace {
    let mut strong: Vec<usize> = (1..=n).filter(|&i| lab[i - 1] == 0).collect();
    if kind == Kind::D && strong.len() == 1 {
        strong.clear();
    }
    let weak: Vec<(Vec<usize>, Vec<usize>)> = (1..n)
        .map(|b| (1..=n).filter(|&i| lab[i - 1] == b).collect::<Vec<_>>())
        .filter(|v| !v.is_empty())
        .map(|v| {
            let minus = v.iter().copied().filter(|&i| signs[i - 1]).collect();
            (v, minus)
        })
        .collect();
    let refs: Vec<(&[usize], &[usize])> = weak.iter().map(|(a, b)| (a.as_slice(), b.as_slice())).collect();
    Subspace::signed(kind, n, &strong, &refs).unwrap()
}

fn check_pair(x: &Subspace, y: &Subspace) -> Result<(), TestCaseError> {
    let mut rows = x.generators();
    rows.extend(y.generators());
    let s = x.sum(y).unwrap();
    prop_assert_eq!(linalg::rank(&x.generators()), x.dim());
    prop_assert_eq!(linalg::rank(&rows), s.dim());
    prop_assert!(linalg::row_space_contains(&s.generators(), &rows));
    prop_assert_eq!(s.clone(), y.sum(x).unwrap());
    prop_assert!(s.contains(x).unwrap() && s.contains(y).unwrap());
    prop_assert_eq!(x.contains(y).unwrap(), linalg::row_space_contains(&x.generators(), &y.generators()));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn a_sums_match_linear_algebra(n in 2usize..8, l1 in labels(7), l2 in labels(7)) {
        let l1: Vec<usize> = l1[..n].iter().map(|x| x % n).collect();
        let l2: Vec<usize> = l2[..n].iter().map(|x| x % n).collect();
        check_pair(&a_sub(n, &l1), &a_sub(n, &l2))?;
    }

    #[test]
    fn signed_sums_match_linear_algebra(
        n in 2usize..7,
        l1 in labels(6), l2 in labels(6),
        s1 in proptest::collection::vec(any::<bool>(), 6),
        s2 in proptest::collection::vec(any::<bool>(), 6),
        d in any::<bool>(),
    ) {
        let kind = if d { Kind::D } else { Kind::B };
        let l1: Vec<usize> = l1[..n].iter().map(|x| x % n).collect();
        let l2: Vec<usize> = l2[..n].iter().map(|x| x % n).collect();
        let x = signed_sub(kind, n, &l1, &s1);
        let y = signed_sub(kind, n, &l2, &s2);
        check_pair(&x, &y)?;
    }

    #[test]
    fn sums_are_associative(n in 3usize..7, l in proptest::collection::vec(labels(6), 3)) {
        let xs: Vec<Subspace> = l.iter().map(|v| {
            let v: Vec<usize> = v[..n].iter().map(|x| x % n).collect();
            a_sub(n, &v)
        }).collect();
        let left = xs[0].sum(&xs[1]).unwrap().sum(&xs[2]).unwrap();
        let right = xs[0].sum(&xs[1].sum(&xs[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn permutation_preserves_dimension(n in 2usize..7, l in labels(6), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let v: Vec<usize> = l[..n].iter().map(|x| x % n).collect();
        let x = a_sub(n, &v);
        let p: Vec<usize> = perm.into_iter().filter(|&i| i < n).collect();
        let y = x.permute(&p);
        prop_assert_eq!(x.dim(), y.dim());
        prop_assert_eq!(x.form().unwrap(), y.form().unwrap());
    }

    #[test]
    fn regular_a_is_palindromic(n in 3usize..10, s in 1usize..8) {
        prop_assume!(s <= n - 2);
        for q in [poincare_regular_a(n, s).unwrap(), poincare_tilde_a(n, s).unwrap()] {
            prop_assert!(q.is_palindromic() && q.is_poincare_like());
            prop_assert_eq!(q.degree(), Some(n - 2));
        }
    }

    #[test]
    fn regular_b_is_palindromic(n in 2usize..9, s in 0usize..7) {
        prop_assume!(s + 2 <= n);
        for q in [poincare_regular_b(n, s).unwrap(), poincare_tilde_b(n, s).unwrap()] {
            prop_assert!(q.is_palindromic() && q.is_poincare_like());
            prop_assert_eq!(q.degree(), Some(n - 1));
        }
    }

    #[test]
    fn qpoly_ring_laws(a in proptest::collection::vec(-20i64..20, 0..6),
                       b in proptest::collection::vec(-20i64..20, 0..6),
                       c in proptest::collection::vec(-20i64..20, 0..6)) {
        let (a, b, c) = (QPoly::from_ints(&a), QPoly::from_ints(&b), QPoly::from_ints(&c));
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        let back: QPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

/// Removing a minimal member `G0` and adding `[dim G0] * P(G/G0)` gives the
/// same polynomial, for every minimal member of some small families.
#[test]
fn blowup_is_consistent_for_every_minimal_member() {
    let mut fams = Vec::new();
    for s in 1..=3 {
        fams.push(regular(Kind::A, 5, s).unwrap());
        fams.push(regular_tilde(Kind::A, 5, s).unwrap());
    }
    for s in 0..=2 {
        fams.push(regular(Kind::B, 4, s).unwrap());
    }
    fams.push(regular(Kind::D, 4, 1).unwrap());
    fams.push(regular(Kind::Boolean, 4, 2).unwrap());
    for g in fams {
        assert!(is_building(&g));
        let whole = poincare_oracle(&g);
        let m = g.members();
        for g0 in m.iter().filter(|a| !m.iter().any(|b| b != *a && a.contains(b).unwrap())) {
            let rest = g.filter(|x| x != g0);
            let quot = quotient_building(&g, g0).unwrap();
            assert!(is_building(&quot), "quotient by {g0} is not building");
            let rhs = poincare_oracle(&rest) + QPoly::geometric(g0.dim()) * poincare_oracle(&quot);
            assert_eq!(rhs, whole, "blow-up of {g0}");
        }
    }
}
