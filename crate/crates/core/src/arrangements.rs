//! Subspaces of the dual space and building sets.
//!
//! A subspace is stored in canonical combinatorial form and its generators
//! are produced on demand. Linear algebra is the definition: every
//! combinatorial operation (sum, containment, dimension) is checked against
//! exact rank computations in the tests, and in debug builds each new
//! subspace has its dimension formula compared with the rank of its
//! generators.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::partitions::{self, Form, Partition, Sign, SingularPartition};
use crate::qpoly::{binomial, factorial, pow2};
use crate::Kind;

/// Canonical combinatorial data. Bit `i` of a mask is coordinate `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Comb {
    /// Blocks of size at least two, sorted by least element.
    A { blocks: Vec<u32> },
    /// Strong coordinates and weak `(block, minus)` pairs; the least
    /// element of each block is positive.
    Signed { strong: u32, weak: Vec<(u32, u32)> },
    Boolean { set: u32 },
    /// Reduced row echelon form.
    Generic { rref: RatMatrix },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    kind: Kind,
    n: usize,
    comb: Comb,
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

fn low(mask: u32) -> u32 {
    mask.trailing_zeros()
}

fn full(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn mask_of(n: usize, elems: &[usize]) -> Result<u32> {
    let mut m = 0u32;
    for &e in elems {
        if e == 0 || e > n {
            return Err(Error::Range(format!("coordinate {e} outside 1..={n}")));
        }
        if m >> (e - 1) & 1 == 1 {
            return Err(Error::Precondition(format!("coordinate {e} repeated")));
        }
        m |= 1 << (e - 1);
    }
    Ok(m)
}

/// Union-find with parity, used for sums of signed subspaces.
struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
    strong: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu { parent: (0..n).collect(), parity: vec![false; n], strong: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let p = self.parent[x];
        let (r, pp) = self.find(p);
        self.parent[x] = r;
        self.parity[x] ^= pp;
        (r, self.parity[x])
    }

    /// Relates `a` and `b` with relative sign `odd`.
    fn union(&mut self, a: usize, b: usize, odd: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != odd {
                self.strong[ra] = true;
            }
            return;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ odd;
        self.strong[ra] |= self.strong[rb];
    }

    fn mark_strong(&mut self, a: usize) {
        let (r, _) = self.find(a);
        self.strong[r] = true;
    }
}

fn signed_merge(n: usize, strong: u32, weak: &[(u32, u32)]) -> (u32, Vec<(u32, u32)>) {
    let mut dsu = ParityDsu::new(n);
    for &(blk, minus) in weak {
        let f = low(blk) as usize;
        let sf = minus >> f & 1 == 1;
        for e in bits(blk).skip(1) {
            dsu.union(f, e, sf != (minus >> e & 1 == 1));
        }
    }
    for i in bits(strong) {
        dsu.mark_strong(i);
    }
    let mut s = 0u32;
    let mut groups: HashMap<usize, Vec<(usize, bool)>> = HashMap::new();
    for i in 0..n {
        let (r, p) = dsu.find(i);
        if dsu.strong[r] {
            s |= 1 << i;
        } else {
            groups.entry(r).or_default().push((i, p));
        }
    }
    let mut w: Vec<(u32, u32)> = groups
        .into_values()
        .filter(|g| g.len() >= 2)
        .map(|g| {
            let p0 = g[0].1;
            let blk = g.iter().fold(0u32, |m, (i, _)| m | 1 << i);
            let minus = g.iter().filter(|(_, p)| *p != p0).fold(0u32, |m, (i, _)| m | 1 << i);
            (blk, minus)
        })
        .collect();
    w.sort_by_key(|(b, _)| low(*b));
    (s, w)
}

fn a_merge(n: usize, blocks: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for b in blocks {
        let f = low(b) as usize;
        for e in bits(b).skip(1) {
            let (ra, rb) = (find(&mut parent, f), find(&mut parent, e));
            if ra != rb {
                parent[rb] = ra;
            }
        }
    }
    let mut groups: HashMap<usize, u32> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        *groups.entry(r).or_default() |= 1 << i;
    }
    let mut v: Vec<u32> = groups.into_values().filter(|m| m.count_ones() >= 2).collect();
    v.sort_by_key(|m| low(*m));
    v
}

impl Subspace {
    fn build(kind: Kind, n: usize, comb: Comb) -> Self {
        let s = Subspace { kind, n, comb };
        #[cfg(debug_assertions)]
        {
            if !matches!(s.comb, Comb::Generic { .. }) {
                debug_assert_eq!(
                    s.dim(),
                    linalg::rank_small(&s.int_generators()),
                    "dimension formula disagrees with rank for {s}"
                );
            }
        }
        s
    }

    /// A-type subspace from blocks of coordinates (1-based). Singleton
    /// blocks are dropped.
    pub fn a_type(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let mut used = 0u32;
        let mut bl = Vec::new();
        for b in blocks {
            let m = mask_of(n, b)?;
            if m & used != 0 {
                return Err(Error::Precondition("blocks overlap".into()));
            }
            used |= m;
            if m.count_ones() >= 2 {
                bl.push(m);
            }
        }
        bl.sort_by_key(|m| low(*m));
        Ok(Self::build(Kind::A, n, Comb::A { blocks: bl }))
    }

    /// B- or D-type subspace: a strong set and weak blocks, each weak block
    /// given with the coordinates that carry a minus sign.
    pub fn signed(kind: Kind, n: usize, strong: &[usize], weak: &[(&[usize], &[usize])]) -> Result<Self> {
        if !matches!(kind, Kind::B | Kind::D) {
            return Err(Error::Unsupported(format!("signed subspace of kind {kind}")));
        }
        let s = mask_of(n, strong)?;
        if kind == Kind::D && s.count_ones() == 1 {
            return Err(Error::Precondition("D-type strong sets have at least two elements".into()));
        }
        let mut used = s;
        let mut w = Vec::new();
        for (b, minus) in weak {
            let m = mask_of(n, b)?;
            let mi = mask_of(n, minus)?;
            if m & used != 0 || mi & !m != 0 {
                return Err(Error::Precondition("bad weak block".into()));
            }
            used |= m;
            if m.count_ones() >= 2 {
                let mi = if mi >> low(m) & 1 == 1 { m & !mi } else { mi };
                w.push((m, mi));
            }
        }
        w.sort_by_key(|(b, _)| low(*b));
        Ok(Self::build(kind, n, Comb::Signed { strong: s, weak: w }))
    }

    pub fn boolean(n: usize, set: &[usize]) -> Result<Self> {
        Ok(Self::build(Kind::Boolean, n, Comb::Boolean { set: mask_of(n, set)? }))
    }

    /// Row space of a rational matrix with `n` columns.
    pub fn generic(n: usize, rows: &[Vec<BigRational>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition(format!("rows must have {n} entries")));
        }
        Ok(Subspace { kind: Kind::Generic, n, comb: Comb::Generic { rref: linalg::rref(rows) } })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn comb(&self) -> &Comb {
        &self.comb
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Dimension from the combinatorial formula.
    pub fn dim(&self) -> usize {
        match &self.comb {
            Comb::A { blocks } => blocks.iter().map(|b| b.count_ones() as usize - 1).sum(),
            Comb::Signed { strong, weak } => {
                strong.count_ones() as usize
                    + weak.iter().map(|(b, _)| b.count_ones() as usize - 1).sum::<usize>()
            }
            Comb::Boolean { set } => set.count_ones() as usize,
            Comb::Generic { rref } => rref.len(),
        }
    }

    /// Generators as rows of an exact matrix.
    pub fn generators(&self) -> RatMatrix {
        match &self.comb {
            Comb::Generic { rref } => rref.clone(),
            _ => self.int_generators().iter().map(|r| linalg::int_row(r)).collect(),
        }
    }

    /// Integer generators of a combinatorial subspace; empty for quotients.
    pub fn int_generators(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let unit = |i: usize, c: i64| {
            let mut r = vec![0i64; n];
            r[i] = c;
            r
        };
        match &self.comb {
            Comb::A { blocks } => {
                for &b in blocks {
                    let f = low(b) as usize;
                    for e in bits(b).skip(1) {
                        let mut r = unit(f, 1);
                        r[e] = -1;
                        rows.push(r);
                    }
                }
            }
            Comb::Signed { strong, weak } => {
                for i in bits(*strong) {
                    rows.push(unit(i, 1));
                }
                for &(b, minus) in weak {
                    let sg = |i: usize| if minus >> i & 1 == 1 { -1 } else { 1 };
                    let f = low(b) as usize;
                    for e in bits(b).skip(1) {
                        let mut r = unit(f, sg(f));
                        r[e] = -sg(e);
                        rows.push(r);
                    }
                }
            }
            Comb::Boolean { set } => {
                for i in bits(*set) {
                    rows.push(unit(i, 1));
                }
            }
            Comb::Generic { .. } => {}
        }
        rows
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind || self.n != other.n {
            return Err(Error::Mismatch(format!(
                "{} subspace in {} and {} subspace in {}",
                self.kind, self.n, other.kind, other.n
            )));
        }
        Ok(())
    }

    /// The sum of two subspaces.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let comb = match (&self.comb, &other.comb) {
            (Comb::A { blocks: a }, Comb::A { blocks: b }) => {
                Comb::A { blocks: a_merge(n, a.iter().chain(b.iter()).copied()) }
            }
            (Comb::Signed { strong: s1, weak: w1 }, Comb::Signed { strong: s2, weak: w2 }) => {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                let (strong, weak) = signed_merge(n, s1 | s2, &w);
                Comb::Signed { strong, weak }
            }
            (Comb::Boolean { set: a }, Comb::Boolean { set: b }) => Comb::Boolean { set: a | b },
            (Comb::Generic { rref: a }, Comb::Generic { rref: b }) => {
                let mut rows = a.clone();
                rows.extend_from_slice(b);
                Comb::Generic { rref: linalg::rref(&rows) }
            }
            _ => unreachable!("compatibility checked by callers"),
        };
        Self::build(self.kind, n, comb)
    }

    /// Sum of a family; the zero subspace of the given kind when empty.
    pub fn sum_all<'a>(kind: Kind, n: usize, it: impl IntoIterator<Item = &'a Subspace>) -> Self {
        let mut acc = Self::zero(kind, n);
        for s in it {
            acc = acc.sum_unchecked(s);
        }
        acc
    }

    pub fn zero(kind: Kind, n: usize) -> Self {
        let comb = match kind {
            Kind::A => Comb::A { blocks: Vec::new() },
            Kind::B | Kind::D => Comb::Signed { strong: 0, weak: Vec::new() },
            Kind::Boolean => Comb::Boolean { set: 0 },
            Kind::Generic => Comb::Generic { rref: Vec::new() },
        };
        Subspace { kind, n, comb }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.contains_unchecked(other))
    }

    pub(crate) fn contains_unchecked(&self, other: &Self) -> bool {
        if other.dim() > self.dim() {
            return false;
        }
        match (&self.comb, &other.comb) {
            (Comb::Boolean { set: a }, Comb::Boolean { set: b }) => b & !a == 0,
            (Comb::A { blocks: a }, Comb::A { blocks: b }) => {
                b.iter().all(|bb| a.iter().any(|aa| bb & !aa == 0))
            }
            _ => &self.sum_unchecked(other) == self,
        }
    }

    /// Apply a permutation of coordinates (`perm[i]` is the image of `i`, 0-based).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let pm = |m: u32| bits(m).fold(0u32, |acc, i| acc | 1 << perm[i]);
        let comb = match &self.comb {
            Comb::A { blocks } => {
                let mut v: Vec<u32> = blocks.iter().map(|&b| pm(b)).collect();
                v.sort_by_key(|m| low(*m));
                Comb::A { blocks: v }
            }
            Comb::Signed { strong, weak } => {
                let w: Vec<(u32, u32)> = weak.iter().map(|&(b, mi)| (pm(b), pm(mi))).collect();
                let (s, w) = signed_merge(self.n, pm(*strong), &w);
                Comb::Signed { strong: s, weak: w }
            }
            Comb::Boolean { set } => Comb::Boolean { set: pm(*set) },
            Comb::Generic { rref } => {
                let rows: RatMatrix = rref
                    .iter()
                    .map(|r| {
                        let mut out = vec![BigRational::zero(); self.n];
                        for (i, x) in r.iter().enumerate() {
                            out[perm[i]] = x.clone();
                        }
                        out
                    })
                    .collect();
                Comb::Generic { rref: linalg::rref(&rows) }
            }
        };
        Subspace { kind: self.kind, n: self.n, comb }
    }

    /// Change the sign of the coordinates in `mask`.
    pub fn flip_signs(&self, mask: u32) -> Self {
        match &self.comb {
            Comb::Signed { strong, weak } => {
                let w: Vec<(u32, u32)> = weak.iter().map(|&(b, mi)| (b, mi ^ (mask & b))).collect();
                let (s, w) = signed_merge(self.n, *strong, &w);
                Subspace { kind: self.kind, n: self.n, comb: Comb::Signed { strong: s, weak: w } }
            }
            _ => self.clone(),
        }
    }

    /// The form of an A, B or D subspace.
    pub fn form(&self) -> Result<Form> {
        let n = self.n;
        match &self.comb {
            Comb::A { blocks } => {
                let covered: u32 = blocks.iter().fold(0, |a, b| a | b);
                let mut parts: Vec<usize> = blocks.iter().map(|b| b.count_ones() as usize).collect();
                parts.extend(std::iter::repeat(1).take(n - covered.count_ones() as usize));
                Ok(Form::A(Partition::new(parts)?))
            }
            Comb::Signed { strong, weak } => {
                let covered: u32 = weak.iter().fold(*strong, |a, (b, _)| a | b);
                let mut parts: Vec<usize> = weak.iter().map(|(b, _)| b.count_ones() as usize).collect();
                parts.extend(std::iter::repeat(1).take(n - covered.count_ones() as usize));
                let mut sp = SingularPartition::new(strong.count_ones() as usize, parts)?;
                if self.kind == Kind::D && sp.signable() {
                    let minus: u32 = weak.iter().map(|(_, m)| m.count_ones()).sum();
                    sp.sign = if minus % 2 == 0 { Sign::Plus } else { Sign::Minus };
                }
                Ok(Form::S(sp))
            }
            _ => Err(Error::Unsupported(format!("form of a {} subspace", self.kind))),
        }
    }

    fn json(&self) -> Result<serde_json::Value> {
        let el = |m: u32| bits(m).map(|i| i + 1).collect::<Vec<_>>();
        match &self.comb {
            Comb::A { blocks } => Ok(json!({
                "blocks": blocks.iter().map(|&b| el(b)).collect::<Vec<_>>(),
                "strong": Vec::<usize>::new(),
                "colors": blocks.iter().map(|&b| vec![1; b.count_ones() as usize]).collect::<Vec<_>>(),
            })),
            Comb::Signed { strong, weak } => Ok(json!({
                "blocks": weak.iter().map(|&(b, _)| el(b)).collect::<Vec<_>>(),
                "strong": el(*strong),
                "colors": weak
                    .iter()
                    .map(|&(b, mi)| bits(b).map(|i| if mi >> i & 1 == 1 { -1 } else { 1 }).collect::<Vec<i32>>())
                    .collect::<Vec<_>>(),
            })),
            Comb::Boolean { set } => Ok(json!({
                "blocks": Vec::<Vec<usize>>::new(),
                "strong": el(*set),
                "colors": Vec::<Vec<i32>>::new(),
            })),
            Comb::Generic { .. } => Err(Error::Unsupported("JSON for quotient subspaces".into())),
        }
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let el = |m: u32| bits(m).map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        match &self.comb {
            Comb::A { blocks } => {
                if blocks.is_empty() {
                    return write!(f, "0");
                }
                for &b in blocks {
                    write!(f, "{{{}}}", el(b))?;
                }
                Ok(())
            }
            Comb::Signed { strong, weak } => {
                if *strong == 0 && weak.is_empty() {
                    return write!(f, "0");
                }
                if *strong != 0 {
                    write!(f, "[{}]", el(*strong))?;
                }
                for &(b, mi) in weak {
                    let s: Vec<String> = bits(b)
                        .map(|i| if mi >> i & 1 == 1 { format!("-{}", i + 1) } else { (i + 1).to_string() })
                        .collect();
                    write!(f, "{{{}}}", s.join(","))?;
                }
                Ok(())
            }
            Comb::Boolean { set } => write!(f, "[{}]", el(*set)),
            Comb::Generic { rref } => {
                let rows: Vec<String> = rref
                    .iter()
                    .map(|r| {
                        let v: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", v.join(","))
                    })
                    .collect();
                write!(f, "<{}>", rows.join(""))
            }
        }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// building sets

/// A duplicate-free family of subspaces of one kind, in canonical order.
#[derive(Clone, Debug)]
pub struct BuildingSet {
    kind: Kind,
    n: usize,
    members: Vec<Subspace>,
    index: HashMap<Comb, usize>,
}

impl PartialEq for BuildingSet {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.n == other.n && self.members == other.members
    }
}

impl Eq for BuildingSet {}

fn sort_key(s: &Subspace) -> (usize, String) {
    (s.dim(), s.to_string())
}

impl BuildingSet {
    pub fn new(kind: Kind, n: usize, members: impl IntoIterator<Item = Subspace>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut v = Vec::new();
        for m in members {
            if m.kind != kind || m.n != n {
                return Err(Error::Mismatch(format!("member {m} does not live in {kind} {n}")));
            }
            if m.is_zero() {
                return Err(Error::Precondition("the zero subspace cannot be a member".into()));
            }
            if seen.insert(m.comb.clone()) {
                v.push(m);
            }
        }
        v.sort_by_cached_key(sort_key);
        let index = v.iter().enumerate().map(|(i, m)| (m.comb.clone(), i)).collect();
        Ok(BuildingSet { kind, n, members: v, index })
    }

    pub fn empty(kind: Kind, n: usize) -> Self {
        BuildingSet { kind, n, members: Vec::new(), index: HashMap::new() }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(&s.comb).copied()
    }

    pub fn has(&self, s: &Subspace) -> bool {
        self.index.contains_key(&s.comb)
    }

    pub fn is_subset_of(&self, other: &BuildingSet) -> bool {
        self.members.iter().all(|m| other.has(m))
    }

    pub fn union(&self, other: &BuildingSet) -> Result<BuildingSet> {
        BuildingSet::new(self.kind, self.n, self.members.iter().chain(other.members.iter()).cloned())
    }

    pub fn filter(&self, keep: impl Fn(&Subspace) -> bool) -> BuildingSet {
        let v: Vec<Subspace> = self.members.iter().filter(|m| keep(m)).cloned().collect();
        BuildingSet::new(self.kind, self.n, v).expect("subset of a valid family")
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let members: Result<Vec<_>> = self.members.iter().map(|m| m.json()).collect();
        Ok(json!({ "kind": self.kind.to_string(), "n": self.n, "members": members? }))
    }
}

// ---------------------------------------------------------------------------
// enumeration

/// Set partitions of `mask` into blocks, listing only blocks of size >= 2.
fn block_structures(mask: u32) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let f = low(mask);
    let rest = mask & !(1 << f);
    let mut out = Vec::new();
    // every subset of `rest` joins the least element
    let mut sub = rest;
    loop {
        let blk = sub | 1 << f;
        for mut tail in block_structures(rest & !sub) {
            if blk.count_ones() >= 2 {
                tail.push(blk);
            }
            out.push(tail);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

/// Colourings of a block with its least element positive.
fn colourings(blk: u32) -> Vec<u32> {
    let rest = blk & !(1 << low(blk));
    let mut out = Vec::new();
    let mut sub = rest;
    loop {
        out.push(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

fn weak_structures(mask: u32) -> Vec<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for blocks in block_structures(mask) {
        let mut acc: Vec<Vec<(u32, u32)>> = vec![Vec::new()];
        for &b in &blocks {
            let mut next = Vec::new();
            for partial in &acc {
                for c in colourings(b) {
                    let mut p = partial.clone();
                    p.push((b, c));
                    next.push(p);
                }
            }
            acc = next;
        }
        out.extend(acc);
    }
    out
}

fn subsets(mask: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut sub = mask;
    loop {
        out.push(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    out
}

fn signed_sub(kind: Kind, n: usize, strong: u32, mut weak: Vec<(u32, u32)>) -> Subspace {
    weak.sort_by_key(|(b, _)| low(*b));
    Subspace::build(kind, n, Comb::Signed { strong, weak })
}

fn min_n(kind: Kind) -> usize {
    match kind {
        Kind::D => 4,
        _ => 2,
    }
}

fn check_range(kind: Kind, n: usize) -> Result<()> {
    if kind == Kind::Generic {
        return Err(Error::Unsupported("generic families are only built as quotients".into()));
    }
    if n < min_n(kind) || n > 20 {
        return Err(Error::Range(format!("{kind} arrangements need {} <= n <= 20", min_n(kind))));
    }
    Ok(())
}

/// The irreducible subspaces. For D the strong sets have at least three
/// elements: a strong pair is the direct sum of its two weak pairs.
pub fn irreducibles(kind: Kind, n: usize) -> Result<BuildingSet> {
    check_range(kind, n)?;
    irreducibles_unchecked(kind, n)
}

fn irreducibles_unchecked(kind: Kind, n: usize) -> Result<BuildingSet> {
    let all = full(n);
    let mut v = Vec::new();
    match kind {
        Kind::A => {
            for s in subsets(all) {
                if s.count_ones() >= 2 {
                    v.push(Subspace::build(kind, n, Comb::A { blocks: vec![s] }));
                }
            }
        }
        Kind::B | Kind::D => {
            let min_strong = if kind == Kind::B { 1 } else { 3 };
            for s in subsets(all) {
                if s.count_ones() >= min_strong {
                    v.push(signed_sub(kind, n, s, Vec::new()));
                }
                if s.count_ones() >= 2 {
                    for c in colourings(s) {
                        v.push(signed_sub(kind, n, 0, vec![(s, c)]));
                    }
                }
            }
        }
        Kind::Boolean => {
            for i in 0..n {
                v.push(Subspace::build(kind, n, Comb::Boolean { set: 1 << i }));
            }
        }
        Kind::Generic => unreachable!(),
    }
    BuildingSet::new(kind, n, v)
}

/// The minimal family of the classification: the irreducibles, plus the
/// strong pairs for type D.
pub fn classification_base(kind: Kind, n: usize) -> Result<BuildingSet> {
    let irr = irreducibles(kind, n)?;
    if kind != Kind::D {
        return Ok(irr);
    }
    let pairs = subsets(full(n))
        .into_iter()
        .filter(|s| s.count_ones() == 2)
        .map(|s| signed_sub(kind, n, s, Vec::new()));
    BuildingSet::new(kind, n, irr.members.iter().cloned().chain(pairs))
}

/// Every nonzero subspace of the arrangement's intersection lattice.
pub fn maximal_building(kind: Kind, n: usize) -> Result<BuildingSet> {
    check_range(kind, n)?;
    let all = full(n);
    let mut v = Vec::new();
    match kind {
        Kind::A => {
            for blocks in block_structures(all) {
                if !blocks.is_empty() {
                    let mut b = blocks;
                    b.sort_by_key(|m| low(*m));
                    v.push(Subspace::build(kind, n, Comb::A { blocks: b }));
                }
            }
        }
        Kind::B | Kind::D => {
            for s in subsets(all) {
                if kind == Kind::D && s.count_ones() == 1 {
                    continue;
                }
                for w in weak_structures(all & !s) {
                    if s != 0 || !w.is_empty() {
                        v.push(signed_sub(kind, n, s, w));
                    }
                }
            }
        }
        Kind::Boolean => {
            for s in subsets(all) {
                if s != 0 {
                    v.push(Subspace::build(kind, n, Comb::Boolean { set: s }));
                }
            }
        }
        Kind::Generic => unreachable!(),
    }
    BuildingSet::new(kind, n, v)
}

/// Closure of a family under sums.
pub fn sum_closure(g: &BuildingSet) -> BuildingSet {
    let mut list: Vec<Subspace> = g.members.clone();
    let mut seen: HashSet<Comb> = list.iter().map(|m| m.comb.clone()).collect();
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let s = list[i].sum_unchecked(&list[j]);
            if seen.insert(s.comb.clone()) {
                list.push(s);
            }
        }
        i += 1;
    }
    BuildingSet::new(g.kind, g.n, list).expect("sums stay in the lattice")
}

/// Maximal members of `g` contained in `c`.
fn maximal_inside<'a>(c: &Subspace, g: &'a BuildingSet) -> Vec<&'a Subspace> {
    let inside: Vec<&Subspace> = g.members.iter().filter(|m| c.contains_unchecked(m)).collect();
    inside
        .iter()
        .filter(|m| !inside.iter().any(|o| o.dim() > m.dim() && o.contains_unchecked(m)))
        .copied()
        .collect()
}

fn is_direct_decomposition(c: &Subspace, parts: &[&Subspace]) -> bool {
    let d: usize = parts.iter().map(|p| p.dim()).sum();
    d == c.dim() && &Subspace::sum_all(c.kind, c.n, parts.iter().copied()) == c
}

/// Building-set axiom: every element of the sum closure is the direct sum
/// of the maximal members it contains.
pub fn is_building(g: &BuildingSet) -> bool {
    let closure = sum_closure(g);
    closure.members.iter().all(|c| is_direct_decomposition(c, &maximal_inside(c, g)))
}

/// Decomposition of `u` into the maximal members of `g` inside it.
pub fn decompose(u: &Subspace, g: &BuildingSet) -> Result<Vec<Subspace>> {
    if u.kind != g.kind || u.n != g.n {
        return Err(Error::Mismatch("subspace and family live in different spaces".into()));
    }
    let parts = maximal_inside(u, g);
    if parts.is_empty() || !is_direct_decomposition(u, &parts) {
        return Err(Error::Precondition(format!("{u} is not in the closure of the family")));
    }
    Ok(parts.into_iter().cloned().collect())
}

pub fn form_of(s: &Subspace) -> Result<Form> {
    s.form()
}

/// `t_λ`: set partitions of `λ.n()` elements with block sizes `λ`.
pub fn t_lambda(l: &Partition) -> BigUint {
    let mut den = BigUint::one();
    let mut mult: HashMap<usize, usize> = HashMap::new();
    for &p in l.parts() {
        den *= factorial(p);
        *mult.entry(p).or_default() += 1;
    }
    for m in mult.values() {
        den *= factorial(*m);
    }
    factorial(l.n()) / den
}

/// Number of subspaces of the given form.
pub fn count_of_form(kind: Kind, n: usize, form: &Form) -> Result<BigUint> {
    if form.n() != n {
        return Err(Error::Mismatch(format!("form {form} is not a form in n = {n}")));
    }
    match (kind, form) {
        (Kind::A, Form::A(l)) => Ok(t_lambda(l)),
        (Kind::B | Kind::D, Form::S(sp)) => {
            if kind == Kind::B && sp.sign != Sign::None {
                return Err(Error::Precondition("B forms carry no sign".into()));
            }
            if kind == Kind::D {
                if sp.r == 1 {
                    return Err(Error::Precondition("D forms have r != 1".into()));
                }
                if (sp.sign != Sign::None) != sp.signable() {
                    return Err(Error::Precondition(format!("sign of {sp} does not fit D")));
                }
            }
            let l = &sp.lambda;
            let c = binomial(n, sp.r) * pow2(n - sp.r - l.len()) * t_lambda(l);
            Ok(if sp.sign != Sign::None { c / 2u32 } else { c })
        }
        _ => Err(Error::Mismatch(format!("form {form} for kind {kind}"))),
    }
}

fn family_of_form(kind: Kind, n: usize, x: &Form) -> Result<BuildingSet> {
    let base = classification_base(kind, n)?;
    let reach = partitions::reachable(kind, x);
    let max = maximal_building(kind, n)?;
    let extra = max.members.into_iter().filter(|m| {
        m.form().map(|f| reach.contains(&f)).unwrap_or(false)
    });
    BuildingSet::new(kind, n, base.members.into_iter().chain(extra))
}

/// `G_λ`: irreducibles together with every subspace of form `γ >= λ`.
pub fn g_lambda(lambda: &Partition) -> Result<BuildingSet> {
    if !partitions::is_building_partition(lambda) {
        return Err(Error::Precondition(format!("{lambda} is not a building partition")));
    }
    family_of_form(Kind::A, lambda.n(), &Form::A(lambda.clone()))
}

/// The B- or D-type family of a singular building partition.
pub fn g_singular(sp: &SingularPartition, kind: Kind) -> Result<BuildingSet> {
    if !matches!(kind, Kind::B | Kind::D) || !partitions::is_singular_building(kind, sp) {
        return Err(Error::Precondition(format!("{sp} is not a singular building partition of {kind}")));
    }
    family_of_form(kind, sp.n(), &Form::S(sp.clone()))
}

/// `G_S`: the union of the families of the elements of an antichain.
pub fn g_of_antichain(s: &[Form], kind: Kind, n: usize) -> Result<BuildingSet> {
    if s.is_empty() {
        return Err(Error::Precondition("empty antichain".into()));
    }
    let elems = partitions::building_elements(kind, n)?;
    for (i, x) in s.iter().enumerate() {
        if !elems.contains(x) {
            return Err(Error::Precondition(format!("{x} is not a building partition of {kind} {n}")));
        }
        for y in &s[i + 1..] {
            if x == y || partitions::leq(kind, x, y)? || partitions::leq(kind, y, x)? {
                return Err(Error::Precondition(format!("{x} and {y} are comparable")));
            }
        }
    }
    let mut acc = BuildingSet::empty(kind, n);
    for x in s {
        acc = acc.union(&family_of_form(kind, n, x)?)?;
    }
    Ok(acc)
}

fn dims_at_least(kind: Kind, n: usize, s: i64) -> Result<BuildingSet> {
    let max = maximal_building(kind, n)?;
    let threshold = n as i64 - s;
    Ok(max.filter(|m| m.dim() as i64 >= threshold))
}

/// `G_s`: irreducibles plus every subspace of dimension at least `n - s`.
/// Values of `s` past the top of the range give the maximal family.
pub fn regular(kind: Kind, n: usize, s: i64) -> Result<BuildingSet> {
    irreducibles(kind, n)?.union(&dims_at_least(kind, n, s)?)
}

/// `G̃_s`: every subspace of dimension at least `n - s`.
pub fn regular_tilde(kind: Kind, n: usize, s: i64) -> Result<BuildingSet> {
    dims_at_least(kind, n, s)
}

/// Nestedness: no antichain of at least two members sums to a member.
pub fn is_nested(s: &[Subspace], g: &BuildingSet) -> Result<bool> {
    for m in s {
        if !g.has(m) {
            return Err(Error::Precondition(format!("{m} is not a member")));
        }
    }
    let k = s.len();
    if k > 24 {
        return Err(Error::Range("nested candidate too large".into()));
    }
    for bitsel in 1u32..(1 << k) {
        if bitsel.count_ones() < 2 {
            continue;
        }
        let pick: Vec<&Subspace> = (0..k).filter(|i| bitsel >> i & 1 == 1).map(|i| &s[i]).collect();
        let antichain = pick.iter().enumerate().all(|(i, a)| {
            pick.iter().skip(i + 1).all(|b| !a.contains_unchecked(b) && !b.contains_unchecked(a))
        });
        if antichain && g.has(&Subspace::sum_all(g.kind, g.n, pick.iter().copied())) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators of the Weyl group acting on coordinates: adjacent
/// transpositions, plus one sign change for B or a double one for D.
fn group_images(s: &Subspace) -> Vec<Subspace> {
    let n = s.n;
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        out.push(s.permute(&perm));
    }
    match s.kind {
        Kind::B => out.push(s.flip_signs(1)),
        Kind::D => out.push(s.flip_signs(0b11)),
        _ => {}
    }
    out
}

/// Closed under the group generated by the kind's generators.
pub fn is_invariant(g: &BuildingSet) -> bool {
    if g.kind == Kind::Generic {
        return false;
    }
    g.members.iter().all(|m| group_images(m).iter().all(|x| g.has(x)))
}

/// Orbit of a subspace under the kind's Weyl group.
pub fn orbit(s: &Subspace) -> Vec<Subspace> {
    let mut seen: HashSet<Comb> = HashSet::from([s.comb.clone()]);
    let mut out = vec![s.clone()];
    let mut i = 0;
    while i < out.len() {
        for x in group_images(&out[i]) {
            if seen.insert(x.comb.clone()) {
                out.push(x);
            }
        }
        i += 1;
    }
    out
}

/// The family `{(A + G0)/G0 : A in g, A != G0}` in the quotient space,
/// in coordinates complementary to the pivots of `G0`.
pub fn quotient_building(g: &BuildingSet, g0: &Subspace) -> Result<BuildingSet> {
    if !g.has(g0) {
        return Err(Error::Precondition(format!("{g0} is not a member")));
    }
    if g.members.iter().any(|m| m != g0 && g0.contains_unchecked(m)) {
        return Err(Error::Precondition(format!("{g0} is not minimal")));
    }
    let r = linalg::rref(&g0.generators());
    let qn = g.n - r.len();
    let mut out = Vec::new();
    for m in &g.members {
        if m == g0 {
            continue;
        }
        let rows: RatMatrix = m.generators().iter().map(|v| linalg::quotient_coords(&r, v)).collect();
        let s = Subspace::generic(qn, &rows)?;
        if !s.is_zero() {
            out.push(s);
        }
    }
    BuildingSet::new(Kind::Generic, qn, out)
}

/// Forms present in a family.
pub fn forms_of(g: &BuildingSet) -> Result<BTreeSet<Form>> {
    g.members.iter().map(|m| m.form()).collect()
}

/// The invariant building sets indexed by antichains of the building
/// poset, in antichain order.
pub fn classify(kind: Kind, n: usize) -> Result<Vec<(Vec<Form>, BuildingSet)>> {
    let poset = partitions::building_poset(kind, n)?;
    partitions::antichains(&poset)
        .into_iter()
        .map(|ac| {
            let forms: Vec<Form> = ac.iter().map(|&i| poset.elements[i].clone()).collect();
            let g = g_of_antichain(&forms, kind, n)?;
            Ok((forms, g))
        })
        .collect()
}

/// Every building set that contains the classification base and is a
/// union of group orbits, found by trying all unions of the remaining
/// orbits of the maximal family.
pub fn exhaustive_invariant_families(kind: Kind, n: usize) -> Result<Vec<BuildingSet>> {
    let base = classification_base(kind, n)?;
    let max = maximal_building(kind, n)?;
    let mut orbits: Vec<Vec<Subspace>> = Vec::new();
    let mut seen: HashSet<Comb> = HashSet::new();
    for m in max.members() {
        if base.has(m) || seen.contains(&m.comb) {
            continue;
        }
        let o = orbit(m);
        seen.extend(o.iter().map(|x| x.comb.clone()));
        orbits.push(o);
    }
    if orbits.len() > 20 {
        return Err(Error::Range(format!("{} orbits is too many to search exhaustively", orbits.len())));
    }
    let mut out = Vec::new();
    for pick in 0u32..(1 << orbits.len()) {
        let extra = (0..orbits.len()).filter(|i| pick >> i & 1 == 1).flat_map(|i| orbits[i].iter().cloned());
        let g = BuildingSet::new(kind, n, base.members().iter().cloned().chain(extra))?;
        if is_building(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize, blocks: &[&[usize]]) -> Subspace {
        Subspace::a_type(n, blocks).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(a(8, &[&[1, 2, 3], &[7, 8]]).dim(), 3);
        assert_eq!(a(8, &[&[1, 3, 4], &[2, 5], &[7, 8]]).dim(), 4);
        let s = Subspace::signed(Kind::B, 5, &[1, 2, 3, 4, 5], &[]).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(linalg::rank(&s.generators()), 5);
    }

    #[test]
    fn sums() {
        let x = a(4, &[&[1, 2], &[3, 4]]);
        let y = a(4, &[&[1, 3], &[2, 4]]);
        assert_eq!(x.sum(&y).unwrap(), a(4, &[&[1, 2, 3, 4]]));
        assert_eq!(x.sum(&x).unwrap(), x);
        let c = a(11, &[&[1, 2, 3, 4], &[5, 6, 7]]);
        let d = a(11, &[&[1, 2, 3, 4], &[8, 9, 10]]);
        assert_eq!(c.sum(&d).unwrap(), a(11, &[&[1, 2, 3, 4], &[5, 6, 7], &[8, 9, 10]]));
        // opposite weak pairs sum to a strong pair
        let p = Subspace::signed(Kind::B, 2, &[], &[(&[1, 2], &[])]).unwrap();
        let m = Subspace::signed(Kind::B, 2, &[], &[(&[1, 2], &[2])]).unwrap();
        assert_eq!(p.sum(&m).unwrap(), Subspace::signed(Kind::B, 2, &[1, 2], &[]).unwrap());
    }

    #[test]
    fn containment() {
        assert!(a(3, &[&[1, 2, 3]]).contains(&a(3, &[&[1, 2]])).unwrap());
        assert!(!a(4, &[&[1, 2], &[3, 4]]).contains(&a(4, &[&[1, 3]])).unwrap());
        assert!(a(3, &[&[1, 2]]).contains(&Subspace::boolean(3, &[1]).unwrap()).is_err());
    }

    #[test]
    fn family_sizes() {
        assert_eq!(irreducibles(Kind::A, 4).unwrap().len(), 11);
        assert_eq!(irreducibles(Kind::B, 2).unwrap().len(), 5);
        assert_eq!(irreducibles(Kind::Boolean, 3).unwrap().len(), 3);
        assert_eq!(maximal_building(Kind::A, 4).unwrap().len(), 14);
        assert_eq!(maximal_building(Kind::Boolean, 3).unwrap().len(), 7);
        assert_eq!(maximal_building(Kind::A, 3).unwrap(), irreducibles(Kind::A, 3).unwrap());
        assert!(irreducibles(Kind::D, 3).is_err());
    }

    #[test]
    fn building_axiom() {
        for n in 2..=5 {
            assert!(is_building(&irreducibles(Kind::A, n).unwrap()));
            assert!(is_building(&maximal_building(Kind::A, n).unwrap()));
        }
        let full4 = a(4, &[&[1, 2, 3, 4]]);
        let g = irreducibles(Kind::A, 4).unwrap().filter(|m| m != &full4);
        assert!(!is_building(&g));
    }

    #[test]
    fn decompositions() {
        let f = irreducibles(Kind::A, 4).unwrap();
        let u = a(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(decompose(&u, &f).unwrap(), vec![a(4, &[&[1, 2]]), a(4, &[&[3, 4]])]);
        let v = a(4, &[&[1, 2, 3]]);
        assert_eq!(decompose(&v, &f).unwrap(), vec![v.clone()]);
        let fb = irreducibles(Kind::B, 4).unwrap();
        let w = Subspace::signed(Kind::B, 4, &[1, 2], &[(&[3, 4], &[])]).unwrap();
        assert_eq!(decompose(&w, &fb).unwrap().len(), 2);
    }

    #[test]
    fn forms() {
        let s = a(8, &[&[1, 3, 4], &[2, 5], &[7, 8]]);
        assert_eq!(s.form().unwrap(), Form::A(Partition::new(vec![3, 2, 2, 1]).unwrap()));
        let d = Subspace::signed(Kind::D, 4, &[], &[(&[1, 2], &[]), (&[3, 4], &[])]).unwrap();
        assert_eq!(d.form().unwrap().to_string(), "(0|2,2)+");
        let d2 = Subspace::signed(Kind::D, 4, &[], &[(&[1, 2], &[2]), (&[3, 4], &[])]).unwrap();
        assert_eq!(d2.form().unwrap().to_string(), "(0|2,2)-");
        let st = Subspace::signed(Kind::B, 4, &[1, 2, 3, 4], &[]).unwrap();
        assert_eq!(st.form().unwrap().to_string(), "(4|0)");
    }

    #[test]
    fn counts() {
        let l22 = Form::A(Partition::new(vec![2, 2]).unwrap());
        assert_eq!(count_of_form(Kind::A, 4, &l22).unwrap(), BigUint::from(3u32));
        let ln = Form::A(Partition::new(vec![6]).unwrap());
        assert_eq!(count_of_form(Kind::A, 6, &ln).unwrap(), BigUint::one());
    }

    #[test]
    fn regular_families() {
        for n in 3..=6 {
            assert_eq!(regular(Kind::A, n, 1).unwrap(), irreducibles(Kind::A, n).unwrap());
            assert_eq!(
                regular_tilde(Kind::A, n, n as i64 - 1).unwrap(),
                maximal_building(Kind::A, n).unwrap()
            );
            let t1 = regular_tilde(Kind::A, n, 1).unwrap();
            assert_eq!(t1.len(), 1);
            assert_eq!(t1.members()[0].dim(), n - 1);
        }
        assert_eq!(regular(Kind::Boolean, 3, -1).unwrap(), irreducibles(Kind::Boolean, 3).unwrap());
        assert_eq!(regular(Kind::Boolean, 3, 1).unwrap(), maximal_building(Kind::Boolean, 3).unwrap());
    }

    #[test]
    fn nestedness() {
        let f = irreducibles(Kind::A, 4).unwrap();
        let c = maximal_building(Kind::A, 4).unwrap();
        let pair = [a(4, &[&[1, 2]]), a(4, &[&[3, 4]])];
        assert!(is_nested(&pair, &f).unwrap());
        assert!(!is_nested(&pair, &c).unwrap());
        let chain = [a(4, &[&[1, 2]]), a(4, &[&[1, 2, 3]]), a(4, &[&[1, 2, 3, 4]])];
        assert!(is_nested(&chain, &c).unwrap());
    }

    #[test]
    fn invariance() {
        assert!(is_invariant(&maximal_building(Kind::A, 5).unwrap()));
        let f = irreducibles(Kind::A, 4).unwrap();
        let g = BuildingSet::new(
            Kind::A,
            4,
            f.members().iter().cloned().chain([a(4, &[&[1, 2], &[3, 4]])]),
        )
        .unwrap();
        assert!(!is_invariant(&g));
        assert_eq!(orbit(&a(4, &[&[1, 2], &[3, 4]])).len(), 3);
    }

    #[test]
    fn quotients() {
        let g = BuildingSet::new(Kind::A, 3, [a(3, &[&[1, 2]])]).unwrap();
        assert!(quotient_building(&g, &a(3, &[&[1, 2]])).unwrap().is_empty());
        let max = maximal_building(Kind::A, 5).unwrap();
        let g0 = a(5, &[&[1, 2]]);
        let q = quotient_building(&max, &g0).unwrap();
        // the quotient is the maximal family on 4 points
        assert_eq!(q.len(), maximal_building(Kind::A, 4).unwrap().len());
        assert!(quotient_building(&max, &a(5, &[&[1, 2, 3]])).is_err());
    }
}
