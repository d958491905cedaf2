//! Integer partitions, singular (coloured) partitions, the admissible-move
//! orders and the posets of building partitions.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Kind;

/// A partition, parts weakly decreasing. The empty partition is only used
/// as the weak part of a singular partition with `r = n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Precondition("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Sorts without validation; parts are known to be positive.
    fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn all_ones(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    fn big_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p >= 2).count()
    }

    fn ones(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }

    fn without(&self, i: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.remove(i);
        v
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "(0)");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_parts(body: &str) -> Result<Vec<usize>> {
    let body = body.trim();
    if body.is_empty() || body == "0" {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad part '{x}'")))
        })
        .collect()
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (a,b,...), got '{s}'")))?;
        Partition::new(parse_parts(body)?)
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Sign {
    None,
    Plus,
    Minus,
}

impl Sign {
    pub fn code(self) -> i8 {
        match self {
            Sign::None => 0,
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `(r, λ)`: a coloured row of `r` boxes and a weak partition `λ` of `n - r`,
/// with an optional sign for the doubled D-type vertices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularPartition {
    pub r: usize,
    pub lambda: Partition,
    pub sign: Sign,
}

impl SingularPartition {
    pub fn new(r: usize, lambda: Vec<usize>) -> Result<Self> {
        Ok(SingularPartition { r, lambda: Partition::new(lambda)?, sign: Sign::None })
    }

    pub fn signed(r: usize, lambda: Vec<usize>, sign: Sign) -> Result<Self> {
        let sp = SingularPartition { r, lambda: Partition::new(lambda)?, sign };
        if sign != Sign::None && !sp.signable() {
            return Err(Error::Precondition(format!("{sp} cannot carry a sign")));
        }
        Ok(sp)
    }

    fn raw(r: usize, lambda: Vec<usize>, sign: Sign) -> Self {
        SingularPartition { r, lambda: Partition::from_parts(lambda), sign }
    }

    pub fn n(&self) -> usize {
        self.r + self.lambda.n()
    }

    /// `r = 0`, even `n`, all weak parts even: the D-type vertex splits.
    pub fn signable(&self) -> bool {
        self.r == 0 && self.n() % 2 == 0 && self.lambda.parts.iter().all(|p| p % 2 == 0)
    }

    fn key(&self) -> (usize, &[usize], i8) {
        (self.r, &self.lambda.parts, self.sign.code())
    }
}

impl PartialOrd for SingularPartition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SingularPartition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for SingularPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = if self.lambda.is_empty() {
            "0".to_string()
        } else {
            self.lambda.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        };
        let sign = match self.sign {
            Sign::None => "",
            Sign::Plus => "+",
            Sign::Minus => "-",
        };
        write!(f, "({}|{}){}", self.r, parts, sign)
    }
}

impl fmt::Debug for SingularPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SingularPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, sign) = if let Some(b) = s.strip_suffix('+') {
            (b, Sign::Plus)
        } else if let Some(b) = s.strip_suffix('-') {
            (b, Sign::Minus)
        } else {
            (s, Sign::None)
        };
        let inner = body
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (r|a,b,...), got '{s}'")))?;
        let (r, parts) = inner
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing '|' in '{s}'")))?;
        let r = r.trim().parse().map_err(|_| Error::Parse(format!("bad r in '{s}'")))?;
        SingularPartition::signed(r, parse_parts(parts)?, sign)
    }
}

/// A form of a subspace, and an element of one of the partition posets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Form {
    A(Partition),
    S(SingularPartition),
}

impl Form {
    pub fn n(&self) -> usize {
        match self {
            Form::A(p) => p.n(),
            Form::S(s) => s.n(),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::A(p) => write!(f, "{p}"),
            Form::S(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Form {
    /// Parses `(a,b,...)` for type A and `(r|a,...)±` for B/D.
    pub fn parse(kind: Kind, s: &str) -> Result<Form> {
        match kind {
            Kind::A => Ok(Form::A(s.parse()?)),
            Kind::B | Kind::D => Ok(Form::S(s.parse()?)),
            k => Err(Error::Unsupported(format!("forms of kind {k}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// moves

/// Single admissible moves on a partition.
pub fn admissible_moves_a(p: &Partition) -> BTreeSet<Partition> {
    let mut out = BTreeSet::new();
    let parts = &p.parts;
    // move a: a whole row onto another row with at least two boxes
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            if i != j && parts[j] >= 2 {
                let mut v = parts.clone();
                v[j] += v[i];
                v.remove(i);
                out.insert(Partition::from_parts(v));
            }
        }
    }
    // move b: k >= 2 single boxes into a new row, k at least the smallest row > 1
    if let Some(&smallest) = parts.iter().filter(|&&x| x >= 2).min() {
        let ones = p.ones();
        for k in smallest.max(2)..=ones {
            let mut v: Vec<usize> = parts.iter().copied().filter(|&x| x >= 2).collect();
            v.push(k);
            v.extend(std::iter::repeat(1).take(ones - k));
            out.insert(Partition::from_parts(v));
        }
    }
    out
}

/// Single admissible moves on an unsigned singular partition.
///
/// Boxes may be deposited on the coloured row. When `r = 0` only a row with
/// at least two boxes can be deposited, which creates the coloured row: a
/// single weak box is the zero subspace and cannot become strong.
pub fn admissible_moves_b(sp: &SingularPartition) -> BTreeSet<SingularPartition> {
    let mut out = BTreeSet::new();
    let (r, lam) = (sp.r, &sp.lambda);
    for a in admissible_moves_a(lam) {
        out.insert(SingularPartition { r, lambda: a, sign: Sign::None });
    }
    for i in 0..lam.len() {
        let row = lam.parts[i];
        if r >= 1 || row >= 2 {
            out.insert(SingularPartition::raw(r + row, lam.without(i), Sign::None));
        }
    }
    // move c
    if r == 0 && lam.len() == 1 {
        out.insert(SingularPartition::raw(lam.parts[0], Vec::new(), Sign::None));
    }
    out
}

/// Single moves in the D-type order: the B moves away from `r = 1`, with
/// all-even weak results split into both signs, and weak merges of a signed
/// vertex keeping its sign.
pub fn admissible_moves_d(sp: &SingularPartition) -> BTreeSet<SingularPartition> {
    let base = SingularPartition { sign: Sign::None, ..sp.clone() };
    let mut out = BTreeSet::new();
    for m in admissible_moves_b(&base) {
        if m.r == 1 {
            continue;
        }
        if m.signable() {
            if sp.sign != Sign::None {
                out.insert(SingularPartition { sign: sp.sign, ..m });
            } else {
                out.insert(SingularPartition { sign: Sign::Plus, ..m.clone() });
                out.insert(SingularPartition { sign: Sign::Minus, ..m });
            }
        } else {
            out.insert(m);
        }
    }
    out
}

/// `(n)` or at least two parts of size at least two.
pub fn is_building_partition(p: &Partition) -> bool {
    p.len() == 1 || p.big_parts() >= 2
}

pub fn is_singular_building(kind: Kind, sp: &SingularPartition) -> bool {
    let n = sp.n();
    if kind == Kind::D && sp.r == 1 {
        return false;
    }
    if !sp.lambda.is_empty() && sp.lambda.all_ones() {
        return false;
    }
    if sp.r == 0 {
        if !(is_building_partition(&sp.lambda) && sp.lambda.len() >= 2) {
            return false;
        }
    }
    if kind == Kind::D {
        let should_sign = n % 2 == 0 && sp.signable();
        if should_sign != (sp.sign != Sign::None) {
            return false;
        }
    } else if sp.sign != Sign::None {
        return false;
    }
    true
}

fn moves(kind: Kind, f: &Form) -> Vec<Form> {
    match (kind, f) {
        (Kind::A, Form::A(p)) => admissible_moves_a(p).into_iter().map(Form::A).collect(),
        (Kind::B, Form::S(s)) => admissible_moves_b(s).into_iter().map(Form::S).collect(),
        (Kind::D, Form::S(s)) => admissible_moves_d(s).into_iter().map(Form::S).collect(),
        _ => Vec::new(),
    }
}

type ReachCache = Mutex<HashMap<(Kind, Form), Arc<BTreeSet<Form>>>>;

fn reach_cache() -> &'static ReachCache {
    static C: OnceLock<ReachCache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Every form reachable from `f` by a sequence of moves, `f` included.
pub fn reachable(kind: Kind, f: &Form) -> Arc<BTreeSet<Form>> {
    let key = (kind, f.clone());
    if let Some(r) = reach_cache().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return r.clone();
    }
    let mut seen = BTreeSet::new();
    seen.insert(f.clone());
    let mut queue = VecDeque::from([f.clone()]);
    while let Some(x) = queue.pop_front() {
        for y in moves(kind, &x) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let arc = Arc::new(seen);
    reach_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(key, arc.clone());
    arc
}

fn check_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Mismatch(format!("partitions of {a} and {b}")));
    }
    Ok(())
}

/// `mu <= lambda`: `lambda` is reachable from `mu` by admissible moves.
pub fn leq_a(mu: &Partition, lambda: &Partition) -> Result<bool> {
    check_n(mu.n(), lambda.n())?;
    Ok(reachable(Kind::A, &Form::A(mu.clone())).contains(&Form::A(lambda.clone())))
}

/// Dominance order on partitions of the same integer.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    check_n(mu.n(), lambda.n())?;
    let (mut a, mut b) = (0, 0);
    for i in 0..mu.len().max(lambda.len()) {
        a += mu.parts.get(i).copied().unwrap_or(0);
        b += lambda.parts.get(i).copied().unwrap_or(0);
        if b < a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x <= y` in the B or D order of singular partitions.
pub fn leq_singular(x: &SingularPartition, y: &SingularPartition, kind: Kind) -> Result<bool> {
    check_n(x.n(), y.n())?;
    match kind {
        Kind::B => {
            if x.sign != Sign::None || y.sign != Sign::None {
                return Err(Error::Precondition("B-type partitions carry no sign".into()));
            }
        }
        Kind::D => {
            if x.r == 1 || y.r == 1 {
                return Err(Error::Precondition("D-type partitions have r != 1".into()));
            }
            for z in [x, y] {
                if (z.sign != Sign::None) != z.signable() {
                    return Err(Error::Precondition(format!("sign of {z} does not fit D")));
                }
            }
        }
        k => return Err(Error::Unsupported(format!("singular order of kind {k}"))),
    }
    Ok(reachable(kind, &Form::S(x.clone())).contains(&Form::S(y.clone())))
}

/// `x <= y` for forms of a poset kind.
pub fn leq(kind: Kind, x: &Form, y: &Form) -> Result<bool> {
    match (x, y) {
        (Form::A(a), Form::A(b)) if kind == Kind::A => leq_a(a, b),
        (Form::S(a), Form::S(b)) => leq_singular(a, b, kind),
        _ => Err(Error::Mismatch(format!("{x} and {y} for kind {kind}"))),
    }
}

/// All singular partitions of `n`; for D the `r = 1` ones are dropped and
/// signable ones appear with both signs.
pub fn all_singular(kind: Kind, n: usize) -> Vec<SingularPartition> {
    let mut out = Vec::new();
    for r in 0..=n {
        if kind == Kind::D && r == 1 {
            continue;
        }
        let lams = if r == n { vec![Partition::empty()] } else { all_partitions(n - r) };
        for l in lams {
            let sp = SingularPartition { r, lambda: l, sign: Sign::None };
            if kind == Kind::D && sp.signable() {
                out.push(SingularPartition { sign: Sign::Plus, ..sp.clone() });
                out.push(SingularPartition { sign: Sign::Minus, ..sp });
            } else {
                out.push(sp);
            }
        }
    }
    out.sort();
    out
}

/// The building partitions of a kind, canonically ordered.
pub fn building_elements(kind: Kind, n: usize) -> Result<Vec<Form>> {
    let min = if kind == Kind::D { 4 } else { 2 };
    if n < min {
        return Err(Error::Range(format!("building poset of kind {kind} needs n >= {min}")));
    }
    let mut v: Vec<Form> = match kind {
        Kind::A => all_partitions(n)
            .into_iter()
            .filter(is_building_partition)
            .map(Form::A)
            .collect(),
        Kind::B | Kind::D => all_singular(kind, n)
            .into_iter()
            .filter(|s| is_singular_building(kind, s))
            .map(Form::S)
            .collect(),
        k => return Err(Error::Unsupported(format!("poset of kind {k}"))),
    };
    v.sort();
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPoset {
    pub kind: Kind,
    pub n: usize,
    pub elements: Vec<Form>,
    /// Cover relations `(lower, upper)` as indices into `elements`.
    pub covers: Vec<(usize, usize)>,
}

impl PartitionPoset {
    /// `elements[i] <= elements[j]`.
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        reachable(self.kind, &self.elements[i]).contains(&self.elements[j])
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq_idx(i, j) || self.leq_idx(j, i)
    }

    pub fn index_of(&self, f: &Form) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    /// Minimal elements among the common upper bounds of `a` and `b`.
    pub fn minimal_upper_bounds(&self, a: &Form, b: &Form) -> Vec<Form> {
        let ups: Vec<usize> = (0..self.elements.len())
            .filter(|&k| {
                reachable(self.kind, a).contains(&self.elements[k])
                    && reachable(self.kind, b).contains(&self.elements[k])
            })
            .collect();
        ups.iter()
            .filter(|&&k| !ups.iter().any(|&m| m != k && self.leq_idx(m, k)))
            .map(|&k| self.elements[k].clone())
            .collect()
    }
}

/// The poset of building partitions with its Hasse diagram.
pub fn building_poset(kind: Kind, n: usize) -> Result<PartitionPoset> {
    let elements = building_elements(kind, n)?;
    let m = elements.len();
    let reach: Vec<Arc<BTreeSet<Form>>> = elements.iter().map(|e| reachable(kind, e)).collect();
    let less = |i: usize, j: usize| i != j && reach[i].contains(&elements[j]);
    let mut covers = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if less(i, j) && !(0..m).any(|k| less(i, k) && less(k, j)) {
                covers.push((i, j));
            }
        }
    }
    Ok(PartitionPoset { kind, n, elements, covers })
}

/// Every nonempty antichain, as index lists in lexicographic order.
pub fn antichains(poset: &PartitionPoset) -> Vec<Vec<usize>> {
    let m = poset.elements.len();
    let comp: Vec<Vec<bool>> =
        (0..m).map(|i| (0..m).map(|j| i == j || poset.comparable(i, j)).collect()).collect();
    let mut out = Vec::new();
    fn rec(start: usize, cur: &mut Vec<usize>, comp: &[Vec<bool>], out: &mut Vec<Vec<usize>>) {
        for k in start..comp.len() {
            if cur.iter().all(|&c| !comp[c][k]) {
                cur.push(k);
                out.push(cur.clone());
                rec(k + 1, cur, comp, out);
                cur.pop();
            }
        }
    }
    rec(0, &mut Vec::new(), &comp, &mut out);
    out
}

/// DOT digraph with edges from each element to its covers.
pub fn hasse_dot(poset: &PartitionPoset) -> String {
    let mut s = format!("digraph building_{}_{} {{\n", poset.kind, poset.n);
    for e in &poset.elements {
        s.push_str(&format!("  \"{e}\";\n"));
    }
    for (a, b) in &poset.covers {
        s.push_str(&format!("  \"{}\" -> \"{}\";\n", poset.elements[*a], poset.elements[*b]));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn sp(r: usize, v: &[usize]) -> SingularPartition {
        SingularPartition::new(r, v.to_vec()).unwrap()
    }

    #[test]
    fn moves_a_examples() {
        assert!(admissible_moves_a(&p(&[1, 1, 1, 1])).is_empty());
        assert_eq!(admissible_moves_a(&p(&[2, 2])), BTreeSet::from([p(&[4])]));
        assert_eq!(admissible_moves_a(&p(&[3, 2, 2])), BTreeSet::from([p(&[5, 2]), p(&[4, 3])]));
        // a single box may be moved onto a longer row
        assert!(admissible_moves_a(&p(&[3, 1])).contains(&p(&[4])));
        // k = 2 < 3, so bundling two boxes is not allowed here
        assert!(!admissible_moves_a(&p(&[3, 1, 1])).contains(&p(&[3, 2])));
        assert!(admissible_moves_a(&p(&[3, 1, 1, 1])).contains(&p(&[3, 3])));
    }

    #[test]
    fn leq_a_examples() {
        assert!(leq_a(&p(&[4, 3, 2, 2, 1, 1, 1]), &p(&[7, 4, 2, 1])).unwrap());
        assert!(leq_a(&p(&[5]), &p(&[5])).unwrap());
        assert!(!leq_a(&p(&[4, 3]), &p(&[5, 2])).unwrap());
        assert!(!leq_a(&p(&[5, 2]), &p(&[4, 3])).unwrap());
        assert!(leq_a(&p(&[4]), &p(&[2, 2, 1])).is_err());
        assert!(dominance_leq(&p(&[4, 3]), &p(&[5, 2])).unwrap());
    }

    #[test]
    fn building_partitions() {
        assert!(is_building_partition(&p(&[6])));
        assert!(is_building_partition(&p(&[2, 2, 1])));
        assert!(!is_building_partition(&p(&[3, 1, 1])));
    }

    #[test]
    fn moves_b_examples() {
        assert!(admissible_moves_b(&sp(0, &[1, 1, 1, 1])).is_empty());
        assert_eq!(admissible_moves_b(&sp(0, &[5])), BTreeSet::from([sp(5, &[])]));
        let m = admissible_moves_b(&sp(2, &[4, 3, 1, 1, 1]));
        assert!(m.contains(&sp(6, &[3, 1, 1, 1])));
        assert!(m.contains(&sp(2, &[7, 1, 1, 1])));
        // a lone weak box cannot start the coloured row
        assert!(!admissible_moves_b(&sp(0, &[2, 1])).contains(&sp(1, &[2])));
        assert!(admissible_moves_b(&sp(0, &[2, 2])).contains(&sp(2, &[2])));
    }

    #[test]
    fn leq_singular_examples() {
        assert!(leq_singular(&sp(1, &[2]), &sp(1, &[2]), Kind::B).unwrap());
        assert!(!leq_singular(&sp(0, &[2, 1]), &sp(1, &[2]), Kind::B).unwrap());
        let plus = SingularPartition::signed(0, vec![2, 2], Sign::Plus).unwrap();
        let minus = SingularPartition::signed(0, vec![2, 2], Sign::Minus).unwrap();
        assert!(!leq_singular(&plus, &minus, Kind::D).unwrap());
        assert!(!leq_singular(&minus, &plus, Kind::D).unwrap());
        assert!(leq_singular(&plus, &sp(2, &[2]), Kind::D).unwrap());
        assert!(leq_singular(&sp(1, &[3]), &sp(4, &[]), Kind::D).is_err());
    }

    #[test]
    fn small_posets() {
        let a4 = building_poset(Kind::A, 4).unwrap();
        assert_eq!(a4.elements, vec![Form::A(p(&[2, 2])), Form::A(p(&[4]))]);
        assert_eq!(a4.covers, vec![(0, 1)]);
        assert_eq!(antichains(&a4).len(), 2);
        let a3 = building_poset(Kind::A, 3).unwrap();
        assert_eq!(a3.elements.len(), 1);
        assert_eq!(antichains(&a3).len(), 1);
        let b3 = building_poset(Kind::B, 3).unwrap();
        assert_eq!(b3.elements, vec![Form::S(sp(1, &[2])), Form::S(sp(3, &[]))]);
        assert_eq!(antichains(&b3).len(), 2);
        let d4 = building_poset(Kind::D, 4).unwrap();
        assert_eq!(d4.elements.len(), 4);
        assert_eq!(antichains(&d4).len(), 5);
        assert!(building_poset(Kind::D, 3).is_err());
    }

    #[test]
    fn a6_has_the_non_lambda_union() {
        let a6 = building_poset(Kind::A, 6).unwrap();
        let i = a6.index_of(&Form::A(p(&[4, 2]))).unwrap();
        let j = a6.index_of(&Form::A(p(&[3, 3]))).unwrap();
        let mut pair = vec![i, j];
        pair.sort();
        assert!(antichains(&a6).contains(&pair));
    }

    #[test]
    fn a8_poset() {
        let a8 = building_poset(Kind::A, 8).unwrap();
        // (8) and the fourteen partitions with at least two parts >= 2
        assert_eq!(a8.elements.len(), 15);
        let i = a8.index_of(&Form::A(p(&[2, 2, 1, 1, 1, 1]))).unwrap();
        assert!(!a8.covers.iter().any(|&(_, up)| up == i));
    }

    #[test]
    fn dot_output() {
        let d = hasse_dot(&building_poset(Kind::A, 4).unwrap());
        assert_eq!(d.matches("->").count(), 1);
        assert!(d.contains("\"(2,2)\" -> \"(4)\""));
        let d3 = hasse_dot(&building_poset(Kind::A, 3).unwrap());
        assert_eq!(d3.matches("->").count(), 0);
    }

    #[test]
    fn text_forms_round_trip() {
        for s in ["(2|4,3,1,1,1)", "(0|2,2)+", "(4|0)", "(0|2,2)-"] {
            let x: SingularPartition = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("(3,2,2,1)".parse::<Partition>().unwrap().to_string(), "(3,2,2,1)");
    }
}
