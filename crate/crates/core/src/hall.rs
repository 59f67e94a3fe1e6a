//! Lie triple Hall elements, the Lie-Yamaguti basis, and graded enumeration
//! of magmas and of both Hall-type sets.
//!
//! Membership is decided by recursive predicates. Enumeration is bottom-up:
//! degree-`n` basis elements are assembled from the memoized lower-degree
//! sets and filtered by the node-level conditions, never by scanning the whole
//! degree-`n` magma.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::terms::{compare_flattened, Term};

/// Default bound on the number of terms any single enumeration may produce.
pub const DEFAULT_CAP: u128 = 200_000;

/// Which operations the magma has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    /// binary `*` and ternary bracket
    Full,
    /// ternary bracket only
    TernaryOnly,
}

/// All elements of one degree, strictly increasing under the term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSet {
    pub degree: usize,
    pub elements: Vec<Term>,
}

impl GradedSet {
    fn new(degree: usize, mut elements: Vec<Term>) -> Self {
        elements.sort();
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        GradedSet { degree, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Term> {
        self.elements.iter()
    }
}

/// Number of unlabelled tree shapes of size `n`, saturating.
pub fn shape_count(n: usize, signature: Signature) -> u128 {
    let mut counts = vec![0u128; n + 1];
    if n == 0 {
        return 0;
    }
    counts[1] = 1;
    for m in 2..=n {
        let mut total = 0u128;
        if signature == Signature::Full {
            for i in 1..m {
                total = total.saturating_add(counts[i].saturating_mul(counts[m - i]));
            }
        }
        for i in 1..m {
            for j in 1..m - i {
                let l = m - i - j;
                let prod = counts[i]
                    .saturating_mul(counts[j])
                    .saturating_mul(counts[l]);
                total = total.saturating_add(prod);
            }
        }
        counts[m] = total;
    }
    counts[n]
}

/// Number of magma terms of size `n` over `k` generators, saturating.
pub fn magma_count(k: usize, n: usize, signature: Signature) -> u128 {
    let labels = (0..n).fold(1u128, |acc, _| acc.saturating_mul(k as u128));
    shape_count(n, signature).saturating_mul(labels)
}

/// Lie triple Hall element over the non-bracket letters: letters (generators
/// and star-rooted terms) qualify outright; brackets must satisfy the
/// ordering conditions at every level.
pub fn is_lts_hall(t: &Term) -> bool {
    match t.as_bracket() {
        None => true,
        Some((y, z, w)) => {
            is_lts_hall(y) && is_lts_hall(z) && is_lts_hall(w) && lts_hall_node(y, z, w)
        }
    }
}

/// Top-level Hall conditions for `[y,z,w]`, the children assumed Hall.
pub fn lts_hall_node(y: &Term, z: &Term, w: &Term) -> bool {
    if compare_flattened(y, z) != Ordering::Greater || compare_flattened(z, w) == Ordering::Greater
    {
        return false;
    }
    match y.as_bracket() {
        None => true,
        Some((_, _, r)) => compare_flattened(z, r) != Ordering::Less,
    }
}

/// Membership in the Lie-Yamaguti basis.
pub fn is_basis_element(t: &Term) -> bool {
    match t.kind() {
        crate::terms::TermKind::Generator(_) => true,
        crate::terms::TermKind::Star(u, v) => {
            is_basis_element(u) && is_basis_element(v) && basis_star_node(u, v)
        }
        crate::terms::TermKind::Bracket(y, z, w) => {
            is_basis_element(y)
                && is_basis_element(z)
                && is_basis_element(w)
                && basis_bracket_node(y, z, w)
        }
    }
}

/// `u*v` with `u, v` basis elements is a basis element iff `f(u) > f(v)`.
pub fn basis_star_node(u: &Term, v: &Term) -> bool {
    compare_flattened(u, v) == Ordering::Greater
}

/// Top-level basis conditions for `[y,z,w]`, the children assumed to be basis
/// elements.
pub fn basis_bracket_node(y: &Term, z: &Term, w: &Term) -> bool {
    if !lts_hall_node(y, z, w) || w.is_star() {
        return false;
    }
    if let Some((_, v)) = y.as_star() {
        match (v.as_generator(), z.as_generator()) {
            (Some(v), Some(z)) if v <= z => {}
            _ => return false,
        }
    }
    if let Some((u, v)) = z.as_star() {
        match y.as_bracket() {
            Some((p, q, c)) if p == u && q == v && c.is_generator() => {}
            _ => return false,
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Family {
    Magma(Signature),
    Basis,
    LtsHall,
}

/// Memoized graded enumeration over a fixed number of generators.
///
/// Cached degrees are immutable snapshots shared behind `Arc`; lookups take a
/// read lock and only insertion takes the write lock.
pub struct Enumerator {
    gens: usize,
    cap: u128,
    cache: RwLock<HashMap<(Family, usize), Arc<GradedSet>>>,
}

impl Enumerator {
    pub fn new(gens: usize) -> Self {
        Self::with_cap(gens, DEFAULT_CAP)
    }

    pub fn with_cap(gens: usize, cap: u128) -> Self {
        Enumerator {
            gens,
            cap,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    fn cached(&self, key: (Family, usize)) -> Option<Arc<GradedSet>> {
        self.cache.read().unwrap().get(&key).cloned()
    }

    fn store(&self, key: (Family, usize), set: GradedSet) -> Arc<GradedSet> {
        self.cache
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::new(set))
            .clone()
    }

    fn check_cap(&self, what: &str, requested: u128) -> Result<()> {
        if requested > self.cap {
            return Err(Error::ResourceCap {
                what: what.to_string(),
                requested,
                cap: self.cap,
            });
        }
        Ok(())
    }

    fn leaves(&self) -> Vec<Term> {
        (0..self.gens as u32).map(Term::generator).collect()
    }

    /// All magma terms of size exactly `n`.
    pub fn magma(&self, n: usize, signature: Signature) -> Result<Arc<GradedSet>> {
        if n == 0 {
            return Err(Error::InvalidDegree(n));
        }
        let key = (Family::Magma(signature), n);
        if let Some(hit) = self.cached(key) {
            return Ok(hit);
        }
        self.check_cap(
            &format!("magma of degree {n} on {} generators", self.gens),
            magma_count(self.gens, n, signature),
        )?;
        if n == 1 {
            return Ok(self.store(key, GradedSet::new(1, self.leaves())));
        }
        let mut out = Vec::new();
        if signature == Signature::Full {
            for i in 1..n {
                let (left, right) = (self.magma(i, signature)?, self.magma(n - i, signature)?);
                for u in left.iter() {
                    for v in right.iter() {
                        out.push(Term::star(u.clone(), v.clone()));
                    }
                }
            }
        }
        for (i, j, l) in compositions3(n) {
            let xs = self.magma(i, signature)?;
            let ys = self.magma(j, signature)?;
            let zs = self.magma(l, signature)?;
            for x in xs.iter() {
                for y in ys.iter() {
                    for z in zs.iter() {
                        out.push(Term::bracket(x.clone(), y.clone(), z.clone()));
                    }
                }
            }
        }
        Ok(self.store(key, GradedSet::new(n, out)))
    }

    /// Lie-Yamaguti basis elements of size `n`.
    pub fn basis(&self, n: usize) -> Result<Arc<GradedSet>> {
        if n == 0 {
            return Err(Error::InvalidDegree(n));
        }
        let key = (Family::Basis, n);
        if let Some(hit) = self.cached(key) {
            return Ok(hit);
        }
        if n == 1 {
            return Ok(self.store(key, GradedSet::new(1, self.leaves())));
        }
        let lower: Vec<Arc<GradedSet>> = (1..n).map(|d| self.basis(d)).collect::<Result<_>>()?;
        let at = |d: usize| &lower[d - 1];

        let mut candidates = 0u128;
        for i in 1..n {
            candidates += (at(i).len() * at(n - i).len()) as u128;
        }
        for (i, j, l) in compositions3(n) {
            candidates += (at(i).len() * at(j).len() * at(l).len()) as u128;
        }
        self.check_cap(&format!("basis candidates of degree {n}"), candidates)?;

        let mut out = Vec::new();
        for i in 1..n {
            for u in at(i).iter() {
                for v in at(n - i).iter() {
                    if basis_star_node(u, v) {
                        out.push(Term::star(u.clone(), v.clone()));
                    }
                }
            }
        }
        for (i, j, l) in compositions3(n) {
            for w in at(l).iter().filter(|w| !w.is_star()) {
                for z in at(j).iter() {
                    if compare_flattened(z, w) == Ordering::Greater {
                        continue;
                    }
                    for y in at(i).iter() {
                        if basis_bracket_node(y, z, w) {
                            out.push(Term::bracket(y.clone(), z.clone(), w.clone()));
                        }
                    }
                }
            }
        }
        Ok(self.store(key, GradedSet::new(n, out)))
    }

    /// Lie triple Hall elements of size `n` in the bracket-only magma on the
    /// generators.
    pub fn lts_hall(&self, n: usize) -> Result<Arc<GradedSet>> {
        if n == 0 {
            return Err(Error::InvalidDegree(n));
        }
        let key = (Family::LtsHall, n);
        if let Some(hit) = self.cached(key) {
            return Ok(hit);
        }
        if n == 1 {
            return Ok(self.store(key, GradedSet::new(1, self.leaves())));
        }
        let mut out = Vec::new();
        for (i, j, l) in compositions3(n) {
            let (ys, zs, ws) = (self.lts_hall(i)?, self.lts_hall(j)?, self.lts_hall(l)?);
            self.check_cap(
                &format!("Lie triple Hall candidates of degree {n}"),
                (ys.len() * zs.len() * ws.len()) as u128,
            )?;
            for y in ys.iter() {
                for z in zs.iter() {
                    for w in ws.iter() {
                        if lts_hall_node(y, z, w) {
                            out.push(Term::bracket(y.clone(), z.clone(), w.clone()));
                        }
                    }
                }
            }
        }
        Ok(self.store(key, GradedSet::new(n, out)))
    }
}

/// Ordered triples of positive integers summing to `n`.
pub(crate) fn compositions3(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (1..n).flat_map(move |i| {
        (1..n - i).filter_map(move |j| {
            let l = n - i - j;
            (l >= 1).then_some((i, j, l))
        })
    })
}

pub fn enumerate_magma(gens: usize, degree: usize, signature: Signature) -> Result<GradedSet> {
    Ok((*Enumerator::new(gens).magma(degree, signature)?).clone())
}

pub fn enumerate_basis(gens: usize, degree: usize) -> Result<GradedSet> {
    Ok((*Enumerator::new(gens).basis(degree)?).clone())
}

pub fn enumerate_lts_hall(gens: usize, degree: usize) -> Result<GradedSet> {
    Ok((*Enumerator::new(gens).lts_hall(degree)?).clone())
}

/// `(degree, |B_degree|)` for degrees `1..=max_degree`.
pub fn dimension_table(gens: usize, max_degree: usize) -> Result<Vec<(usize, usize)>> {
    if max_degree == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let en = Enumerator::new(gens);
    (1..=max_degree)
        .map(|n| Ok((n, en.basis(n)?.len())))
        .collect()
}

pub fn dimension_csv(table: &[(usize, usize)]) -> String {
    let mut out = String::from("degree,count\n");
    for (d, c) in table {
        writeln!(out, "{d},{c}").unwrap();
    }
    out
}
