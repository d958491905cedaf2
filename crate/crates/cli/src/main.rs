//! `wonderful`: posets, classification and Poincaré polynomials of wonderful
//! models for invariant building sets of types A, B and D.

mod verify;

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use wonderful::arrangements::{
    classify, g_of_antichain, irreducibles, maximal_building, regular, regular_tilde,
};
use wonderful::formulas::*;
use wonderful::oracle::{admissible_functions, poincare_oracle};
use wonderful::partitions::{building_poset, hasse_dot, Form};
use wonderful::series::{self, DReading};
use wonderful::{BuildingSet, Kind, QPoly, TruncatedSeries};

#[derive(Parser)]
#[command(name = "wonderful", version, about = "Invariant building sets and Poincaré polynomials of wonderful models")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// irreducibles plus every subspace of dimension >= n - s
    Regular,
    /// every subspace of dimension >= n - s
    Tilde,
    Max,
    Minimal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tier {
    Quick,
    Full,
    Nightly,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Lambda,
    Phi,
    LambdaB,
    GammaB,
    MuB,
    PhiB,
    GammaD,
    MuD,
    PhiD,
    PsiD,
}

#[derive(clap::Args)]
struct Target {
    /// A, B, D or boolean
    #[arg(long)]
    kind: Kind,
    /// number of coordinates
    #[arg(long)]
    n: usize,
}

#[derive(clap::Args)]
struct FamilyArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
    /// defaults to regular when --s is given, max otherwise
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// comma separated antichain of building forms, e.g. "(2,2,1)" or "(2|1,1)"
    #[arg(long, conflicts_with_all = ["s", "family"])]
    lambda: Option<String>,
    /// reading of the D-type series
    #[arg(long, default_value = "derived")]
    reading: DReading,
}

#[derive(Subcommand)]
enum Cmd {
    /// Building partitions and their Hasse diagram
    Poset {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Invariant building sets containing the irreducibles, one per antichain
    Classify {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Poincaré polynomial of a family
    Poincare {
        #[command(flatten)]
        fam: FamilyArgs,
        /// also run the brute-force oracle and fail on disagreement
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Coefficient table of a generating series
    Series {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = series::DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value = "derived")]
        reading: DReading,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Brute-force count of admissible monomials, compared with the formulas
    Oracle {
        #[command(flatten)]
        fam: FamilyArgs,
        /// print up to this many admissible monomials
        #[arg(long, default_value_t = 0)]
        list: usize,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Euler characteristic identities
    Euler {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Cross-validation suite
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        tier: Tier,
    },
}

enum Fail {
    Usage(String),
    Mismatch(String),
}

impl From<wonderful::Error> for Fail {
    fn from(e: wonderful::Error) -> Self {
        match e {
            wonderful::Error::Mismatch(m) => Fail::Mismatch(m),
            e => Fail::Usage(e.to_string()),
        }
    }
}

type Out = Result<String, Fail>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Fail> {
    Err(Fail::Usage(msg.into()))
}

fn reject_dot(o: Output) -> Result<(), Fail> {
    if o == Output::Dot {
        return usage("--output dot is only available for poset");
    }
    Ok(())
}

fn parse_antichain(kind: Kind, s: &str) -> Result<Vec<Form>, Fail> {
    // split on commas outside parentheses
    let (mut parts, mut depth, mut cur) = (Vec::new(), 0, String::new());
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    parts.push(cur);
    Ok(parts
        .iter()
        .map(|p| Form::parse(kind, p.trim()))
        .collect::<wonderful::Result<Vec<_>>>()?)
}

fn family(f: &FamilyArgs) -> Result<(String, BuildingSet), Fail> {
    let Target { kind, n } = f.target;
    if let Some(l) = &f.lambda {
        let forms = parse_antichain(kind, l)?;
        return Ok((format!("G_{l}"), g_of_antichain(&forms, kind, n)?));
    }
    let fam = f.family.unwrap_or(if f.s.is_some() { Family::Regular } else { Family::Max });
    Ok(match (fam, f.s) {
        (Family::Max, None) => ("max".into(), maximal_building(kind, n)?),
        (Family::Minimal, None) => ("minimal".into(), irreducibles(kind, n)?),
        (Family::Regular, Some(s)) => (format!("G_{s}"), regular(kind, n, s)?),
        (Family::Tilde, Some(s)) => (format!("G~_{s}"), regular_tilde(kind, n, s)?),
        (Family::Max | Family::Minimal, Some(_)) => return usage("--s does not apply to max or minimal"),
        (Family::Regular | Family::Tilde, None) => return usage("--s is required for regular and tilde"),
    })
}

fn nonneg(s: i64) -> Result<usize, Fail> {
    usize::try_from(s).map_err(|_| Fail::Usage(format!("s = {s} has no closed formula")))
}

/// The formula path, when one exists for the requested family.
fn formula(f: &FamilyArgs) -> Result<Option<QPoly>, Fail> {
    if f.lambda.is_some() {
        return Ok(None);
    }
    let Target { kind, n } = f.target;
    let fam = f.family.unwrap_or(if f.s.is_some() { Family::Regular } else { Family::Max });
    let q = match (kind, fam) {
        (Kind::A, Family::Max) => poincare_max_a(n)?,
        (Kind::A, Family::Regular) => poincare_regular_a(n, nonneg(f.s.unwrap_or(0))?)?,
        (Kind::A, Family::Tilde) => poincare_tilde_a(n, nonneg(f.s.unwrap_or(0))?)?,
        (Kind::A, Family::Minimal) => series::minimal_a_from_series(n, n.max(series::DEFAULT_ORDER))?,
        (Kind::B, Family::Max) => poincare_max_b(n)?,
        (Kind::B, Family::Regular) => poincare_regular_b(n, nonneg(f.s.unwrap_or(0))?)?,
        (Kind::B, Family::Tilde) => poincare_tilde_b(n, nonneg(f.s.unwrap_or(0))?)?,
        (Kind::B, Family::Minimal) => series::minimal_b_from_series(n, n.max(series::DEFAULT_ORDER))?,
        (Kind::D, Family::Max) => poincare_max_d(n)?,
        (Kind::D, Family::Regular) => poincare_regular_d(n, nonneg(f.s.unwrap_or(0))?, f.reading)?,
        (Kind::D, Family::Tilde) => poincare_tilde_d(n, nonneg(f.s.unwrap_or(0))?)?,
        _ => return Ok(None),
    };
    Ok(Some(q))
}

fn poly_out(q: &QPoly, output: Output, extra: serde_json::Value) -> String {
    match output {
        Output::Json => {
            let mut v = json!({ "poincare": q.to_json(), "text": q.to_string() });
            if let (Some(m), Some(e)) = (v.as_object_mut(), extra.as_object()) {
                m.extend(e.clone());
            }
            v.to_string()
        }
        _ => q.to_string(),
    }
}

fn cmd_poincare(fam: &FamilyArgs, oracle: bool, output: Output) -> Out {
    reject_dot(output)?;
    let by_formula = formula(fam)?;
    let q = match (&by_formula, oracle) {
        (Some(q), false) => q.clone(),
        _ => {
            let (name, g) = family(fam)?;
            let o = poincare_oracle(&g);
            if let Some(q) = &by_formula {
                if *q != o {
                    return Err(Fail::Mismatch(format!("{name}: formula {q}, oracle {o}")));
                }
            }
            o
        }
    };
    Ok(poly_out(&q, output, json!({})))
}

fn cmd_oracle(fam: &FamilyArgs, list: usize, output: Output) -> Out {
    reject_dot(output)?;
    let (name, g) = family(fam)?;
    let o = poincare_oracle(&g);
    let by_formula = formula(fam)?.unwrap_or_else(|| {
        // families without a closed formula fall back to the blow-up induction
        poincare_blowup_induction(&g).unwrap_or_else(|_| o.clone())
    });
    let monomials: Vec<String> =
        if list > 0 { admissible_functions(&g, list).iter().map(|f| f.render(&g)).collect() } else { Vec::new() };
    let agree = by_formula == o;
    let text = match output {
        Output::Json => json!({
            "family": name,
            "members": g.len(),
            "oracle": o.to_json(),
            "formula": by_formula.to_json(),
            "agree": agree,
            "monomials": monomials,
        })
        .to_string(),
        _ => {
            let mut s = format!("{name} of {} n={}: {} members\noracle  {o}\nformula {by_formula}", g.kind(), g.ambient(), g.len());
            for m in &monomials {
                s.push('\n');
                s.push_str(m);
            }
            s
        }
    };
    if agree {
        Ok(text)
    } else {
        emit(&text);
        Err(Fail::Mismatch(format!("{name}: oracle and formula differ")))
    }
}

fn cmd_poset(t: &Target, output: Output) -> Out {
    let poset = building_poset(t.kind, t.n)?;
    Ok(match output {
        Output::Dot => hasse_dot(&poset).trim_end().to_string(),
        Output::Json => serde_json::to_string(&json!({
            "kind": t.kind.to_string(),
            "n": t.n,
            "elements": poset.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "covers": poset.covers,
        }))
        .unwrap(),
        Output::Text => {
            let mut s = format!("{} building partitions", poset.elements.len());
            for (i, e) in poset.elements.iter().enumerate() {
                let up: Vec<String> =
                    poset.covers.iter().filter(|c| c.0 == i).map(|c| poset.elements[c.1].to_string()).collect();
                write!(s, "\n{e} < {}", if up.is_empty() { "-".to_string() } else { up.join(" ") }).unwrap();
            }
            s
        }
    })
}

fn cmd_classify(t: &Target, output: Output) -> Out {
    reject_dot(output)?;
    let fams = classify(t.kind, t.n)?;
    let label = |s: &[Form]| s.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ");
    Ok(match output {
        Output::Json => json!({
            "count": fams.len(),
            "families": fams.iter().map(|(s, g)| json!({
                "antichain": s.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "members": g.len(),
            })).collect::<Vec<_>>(),
        })
        .to_string(),
        _ => {
            let mut s = format!("{} invariant building sets", fams.len());
            for (a, g) in &fams {
                write!(s, "\n{{{}}}: {} members", label(a), g.len()).unwrap();
            }
            s
        }
    })
}

fn pick_series(which: Which, order: usize, reading: DReading) -> wonderful::Result<(TruncatedSeries, Box<dyn Fn(usize) -> num_rational::BigRational>)> {
    use num_rational::BigRational;
    let fact = |n: usize| (1..=n).fold(BigRational::from_integer(1.into()), |a, k| a * BigRational::from_integer(k.into()));
    let a_weight: Box<dyn Fn(usize) -> BigRational> = Box::new(fact);
    let b_weight: Box<dyn Fn(usize) -> BigRational> =
        Box::new(move |n| fact(n) * BigRational::from_integer(num_bigint::BigInt::from(2u8).pow(n as u32)));
    Ok(match which {
        Which::Lambda => (series::lambda_series(order)?, a_weight),
        Which::Phi => (series::phi_y(order)?, a_weight),
        Which::LambdaB => (series::b_series(order)?.lambda_b, b_weight),
        Which::GammaB => (series::b_series(order)?.gamma_b, b_weight),
        Which::MuB => (series::b_series(order)?.mu_b, b_weight),
        Which::PhiB => (series::b_series(order)?.phi_b_y, b_weight),
        Which::GammaD | Which::MuD | Which::PhiD | Which::PsiD => {
            let d = series::d_series(order, reading)?;
            let s = match which {
                Which::GammaD => d.gamma_d,
                Which::MuD => d.mu_d,
                Which::PhiD => d.phi_d_y,
                _ => d.psi_d_y,
            };
            (s, Box::new(move |n| reading.weight(n)))
        }
    })
}

fn cmd_series(which: Which, order: usize, reading: DReading, output: Output) -> Out {
    reject_dot(output)?;
    let (s, weight) = pick_series(which, order, reading)?;
    let table = series::weighted_table(&s, weight);
    Ok(match output {
        Output::Json => json!(table
            .iter()
            .map(|(n, j, c)| json!({ "n": n, "j": j, "coeff": c.to_json() }))
            .collect::<Vec<_>>())
        .to_string(),
        _ => {
            let mut out = format!("{:>3} {:>3}  coefficient times weight", "n", "j");
            for (n, j, c) in &table {
                write!(out, "\n{n:>3} {j:>3}  {c}").unwrap();
            }
            out
        }
    })
}

fn cmd_euler(t: &Target, output: Output) -> Out {
    reject_dot(output)?;
    let n = t.n;
    let (poly, rows): (QPoly, Vec<(&str, num_bigint::BigInt)>) = match t.kind {
        Kind::A => {
            let q = poincare_max_a(n)?;
            let e = euler_from_poincare(&q)?;
            (q, vec![("polynomial at q=-1", e), ("permutohedra", euler_permutohedron_a(n)?), ("closed sum", euler_closed_a(n)?)])
        }
        Kind::B => {
            let q = poincare_max_b(n)?;
            let e = euler_from_poincare(&q)?;
            (q, vec![("polynomial at q=-1", e), ("permutohedra", euler_permutohedron_b(n)?)])
        }
        k => return usage(format!("euler supports kinds A and B, not {k}")),
    };
    let agree = rows.iter().all(|r| r.1 == rows[0].1);
    let text = match output {
        Output::Json => json!({
            "poincare": poly.to_json(),
            "values": rows.iter().map(|(k, v)| json!({ "method": k, "value": v.to_string() })).collect::<Vec<_>>(),
            "agree": agree,
        })
        .to_string(),
        _ => {
            let mut s = format!("Euler characteristic of the maximal model, {} n={n}", t.kind);
            for (k, v) in &rows {
                write!(s, "\n{k:<20} {v}").unwrap();
            }
            write!(s, "\n{}", if agree { "all methods agree" } else { "METHODS DISAGREE" }).unwrap();
            s
        }
    };
    if agree {
        Ok(text)
    } else {
        emit(&text);
        Err(Fail::Mismatch("Euler characteristics differ".into()))
    }
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Poset { target, output } => cmd_poset(&target, output),
        Cmd::Classify { target, output } => cmd_classify(&target, output),
        Cmd::Poincare { fam, oracle, output } => cmd_poincare(&fam, oracle, output),
        Cmd::Series { which, order, reading, output } => cmd_series(which, order, reading, output),
        Cmd::Oracle { fam, list, output } => cmd_oracle(&fam, list, output),
        Cmd::Euler { target, output } => cmd_euler(&target, output),
        Cmd::Verify { tier } => {
            let (report, ok) = verify::run(tier);
            if ok {
                Ok(report)
            } else {
                emit(&report);
                Err(Fail::Mismatch("verification failed".into()))
            }
        }
    }
}

/// Prints to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(s) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Err(Fail::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
