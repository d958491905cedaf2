//! Cross-validation tiers. Output is one line per check, in a fixed order,
//! with no timings, so repeated runs print identical bytes.

use wonderful::arrangements::{
    classify, exhaustive_invariant_families, irreducibles, is_building, is_invariant, maximal_building, regular,
    regular_tilde,
};
use wonderful::formulas::*;
use wonderful::oracle::poincare_oracle;
use wonderful::series::{self, DReading};
use wonderful::{Kind, QPoly};

use crate::Tier;

type Check = Result<(), String>;

fn eq(what: &str, got: wonderful::Result<QPoly>, want: &QPoly) -> Check {
    match got {
        Ok(g) if &g == want => Ok(()),
        Ok(g) => Err(format!("{what}: got {g}, expected {want}")),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

fn p(s: &str) -> QPoly {
    s.parse().expect("literal polynomial")
}

fn golden() -> Check {
    let a4 = ["q^3+16*q^2+16*q+1", "q^3+26*q^2+26*q+1", "q^3+41*q^2+41*q+1"];
    for (s, want) in (1..).zip(a4) {
        eq(&format!("G_{s}(A_4)"), poincare_regular_a(5, s), &p(want))?;
    }
    let a5 = [
        "q^4+42*q^3+127*q^2+42*q+1",
        "q^4+67*q^3+222*q^2+67*q+1",
        "q^4+142*q^3+372*q^2+142*q+1",
        "q^4+187*q^3+732*q^2+187*q+1",
    ];
    for (s, want) in (1..).zip(a5) {
        eq(&format!("G_{s}(A_5)"), poincare_regular_a(6, s), &p(want))?;
    }
    eq("G_5(A_6)", poincare_regular_a(7, 5), &p("q^5+855*q^4+9556*q^3+9556*q^2+855*q+1"))?;
    eq("Ymax,2", poincare_max_a(2), &p("1"))?;
    eq("Ymax,3", poincare_max_a(3), &p("q+1"))?;
    eq("G~_0(D_2)", poincare_tilde_d(2, 0), &p("q+1"))?;
    eq("G~_0(D_3)", poincare_tilde_d(3, 0), &p("q^2+q+1"))?;
    eq("G~_1(D_3)", poincare_tilde_d(3, 1), &p("q^2+7*q+1"))?;
    eq("G~_2(D_3)", poincare_tilde_d(3, 2), &p("q^2+7*q+1"))
}

fn oracle_a(n: usize) -> Check {
    for s in 1..=n - 2 {
        eq(&format!("G_{s} A n={n}"), poincare_regular_a(n, s), &poincare_oracle(&regular(Kind::A, n, s as i64).map_err(|e| e.to_string())?))?;
        eq(&format!("G~_{s} A n={n}"), poincare_tilde_a(n, s), &poincare_oracle(&regular_tilde(Kind::A, n, s as i64).map_err(|e| e.to_string())?))?;
    }
    eq(&format!("max A n={n}"), poincare_max_a(n), &poincare_oracle(&maximal_building(Kind::A, n).map_err(|e| e.to_string())?))
}

fn oracle_b(n: usize) -> Check {
    for s in 0..=n - 2 {
        eq(&format!("G_{s} B n={n}"), poincare_regular_b(n, s), &poincare_oracle(&regular(Kind::B, n, s as i64).map_err(|e| e.to_string())?))?;
        eq(&format!("G~_{s} B n={n}"), poincare_tilde_b(n, s), &poincare_oracle(&regular_tilde(Kind::B, n, s as i64).map_err(|e| e.to_string())?))?;
    }
    eq(&format!("max B n={n}"), poincare_max_b(n), &poincare_oracle(&maximal_building(Kind::B, n).map_err(|e| e.to_string())?))
}

fn oracle_d4() -> Check {
    for s in 0..=2 {
        eq(&format!("G_{s} D n=4"), poincare_regular_d(4, s, DReading::default()), &poincare_oracle(&regular(Kind::D, 4, s as i64).map_err(|e| e.to_string())?))?;
        eq(&format!("G~_{s} D n=4"), poincare_tilde_d(4, s), &poincare_oracle(&regular_tilde(Kind::D, 4, s as i64).map_err(|e| e.to_string())?))?;
    }
    eq("max D n=4", poincare_max_d(4), &poincare_oracle(&maximal_building(Kind::D, 4).map_err(|e| e.to_string())?))
}

fn boolean() -> Check {
    for n in 2..=5usize {
        for s in -1..=(n as i64 - 1) {
            let g = regular(Kind::Boolean, n, s).map_err(|e| e.to_string())?;
            eq(&format!("boolean n={n} s={s}"), poincare_blowup_induction(&g), &poincare_oracle(&g))?;
        }
    }
    Ok(())
}

fn dual_a() -> Check {
    for n in 1..=12 {
        let closed = poincare_max_a_closed(n).map_err(|e| e.to_string())?;
        eq(&format!("max A n={n}"), poincare_max_a_inductive(n), &closed)?;
    }
    Ok(())
}

fn dual_b() -> Check {
    for n in 2..=8 {
        for s in 0..=n - 2 {
            let ind = poincare_tilde_b_inductive(n, s).map_err(|e| e.to_string())?;
            eq(&format!("tilde B n={n} s={s}"), poincare_tilde_b_closed(n, s), &ind)?;
        }
    }
    Ok(())
}

fn euler_a() -> Check {
    for n in 2..=10 {
        let e = euler_from_poincare(&poincare_max_a(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let perm = euler_permutohedron_a(n).map_err(|e| e.to_string())?;
        let closed = euler_closed_a(n).map_err(|e| e.to_string())?;
        if e != perm || e != closed {
            return Err(format!("n={n}: {e} / {perm} / {closed}"));
        }
    }
    Ok(())
}

fn euler_b() -> Check {
    for n in 2..=6 {
        let e = euler_from_poincare(&poincare_max_b(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let perm = euler_permutohedron_b(n).map_err(|e| e.to_string())?;
        if e != perm {
            return Err(format!("n={n}: {e} / {perm}"));
        }
    }
    Ok(())
}

fn classification(kind: Kind, n: usize) -> Check {
    let err = |e: wonderful::Error| e.to_string();
    let indexed = classify(kind, n).map_err(err)?;
    let found = exhaustive_invariant_families(kind, n).map_err(err)?;
    if indexed.len() != found.len() {
        return Err(format!("{} antichains, {} families found", indexed.len(), found.len()));
    }
    for (s, g) in &indexed {
        if !found.contains(g) || !is_building(g) || !is_invariant(g) {
            return Err(format!("antichain {s:?}"));
        }
    }
    Ok(())
}

fn series_check() -> Check {
    let order = series::DEFAULT_ORDER;
    for n in 2..=6 {
        let o = poincare_oracle(&irreducibles(Kind::A, n).map_err(|e| e.to_string())?);
        eq(&format!("minimal A n={n}"), series::minimal_a_from_series(n, order), &o)?;
    }
    for n in 2..=4 {
        let o = poincare_oracle(&irreducibles(Kind::B, n).map_err(|e| e.to_string())?);
        eq(&format!("minimal B n={n}"), series::minimal_b_from_series(n, order), &o)?;
    }
    Ok(())
}

fn d_reading() -> Check {
    let mut oracles = Vec::new();
    for s in 0..=2 {
        oracles.push(poincare_oracle(&regular(Kind::D, 4, s).map_err(|e| e.to_string())?));
    }
    let ok: Vec<DReading> = DReading::ALL
        .into_iter()
        .filter(|&r| (0..=2).all(|s| poincare_regular_d(4, s, r).ok().as_ref() == Some(&oracles[s])))
        .collect();
    if ok == [DReading::default()] {
        Ok(())
    } else {
        Err(format!("consistent readings {ok:?}"))
    }
}

/// Runs a tier and returns the report and whether every check passed.
pub fn run(tier: Tier) -> (String, bool) {
    let mut checks: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("printed polynomials", Box::new(golden)),
        ("oracle A n=4", Box::new(|| oracle_a(4))),
        ("oracle A n=5", Box::new(|| oracle_a(5))),
        ("max A inductive = closed, n<=12", Box::new(dual_a)),
        ("Euler A n<=10", Box::new(euler_a)),
        ("classification A n<=5", Box::new(|| (2..=5).try_for_each(|n| classification(Kind::A, n)))),
    ];
    if tier != Tier::Quick {
        checks.extend::<Vec<(&str, Box<dyn Fn() -> Check>)>>(vec![
            ("oracle B n=3,4", Box::new(|| oracle_b(3).and(oracle_b(4)))),
            ("oracle D n=4", Box::new(oracle_d4)),
            ("boolean blow-up n<=5", Box::new(boolean)),
            ("tilde B closed = inductive, n<=8", Box::new(dual_b)),
            ("Euler B n<=6", Box::new(euler_b)),
            ("classification B n<=4, D n=4", Box::new(|| {
                (2..=4).try_for_each(|n| classification(Kind::B, n)).and(classification(Kind::D, 4))
            })),
            ("series concordance", Box::new(series_check)),
            ("D reading", Box::new(d_reading)),
        ]);
    }
    if tier == Tier::Nightly {
        checks.push(("oracle A n=6", Box::new(|| oracle_a(6))));
    }
    let mut report = Vec::new();
    let mut failed = 0;
    for (name, f) in &checks {
        match f() {
            Ok(()) => report.push(format!("ok   {name}")),
            Err(e) => {
                failed += 1;
                report.push(format!("FAIL {name}: {e}"));
            }
        }
    }
    report.push(format!("{} checks, {failed} failed", checks.len()));
    (report.join("\n"), failed == 0)
}
