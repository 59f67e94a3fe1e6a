//! Brute-force ground truth for the free algebra.
//!
//! The degree-`n` slice of the ideal of relations is spanned by all
//! instances of the defining identities placed inside one-hole contexts.
//! Its rank, computed by exact elimination, gives the dimension of the
//! degree-`n` part of the free algebra, and reduction against it decides
//! ideal membership.
//!
//! Two constructions of the same span are available. [`Strategy::Contexts`]
//! enumerates every context and every instance literally. [`Strategy::Layered`]
//! uses the fact that a non-trivial context is one operation applied to a
//! smaller context: the degree-`n` slice is the span of the top-level
//! instances together with one-operation extensions of an echelon basis of
//! each lower slice. The layered form is much smaller and is the default.

pub mod relations;
pub mod sparse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hall::{Enumerator, GradedSet, Signature, DEFAULT_CAP};
use crate::lincomb::{LinComb, Rational};
use crate::terms::Term;

pub use relations::{Axiom, RelationConfig};
pub use sparse::{Echelon, SparseRow};

/// Environment variable overriding the ambient-dimension cap.
pub const MAX_AMBIENT_ENV: &str = "LYHALL_MAX_AMBIENT";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Layered,
    Contexts,
}

/// Order in which rows are fed to the elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOrder {
    ShortestFirst,
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub signature: Signature,
    pub relations: RelationConfig,
    pub strategy: Strategy,
    pub row_order: RowOrder,
    /// Largest ambient dimension (number of magma terms of one degree).
    pub max_ambient: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            signature: Signature::Full,
            relations: RelationConfig::default(),
            strategy: Strategy::Layered,
            row_order: RowOrder::ShortestFirst,
            max_ambient: DEFAULT_CAP,
        }
    }
}

impl OracleConfig {
    pub fn lts() -> Self {
        OracleConfig {
            signature: Signature::TernaryOnly,
            ..OracleConfig::default()
        }
    }

    /// Default configuration with the cap taken from `LYHALL_MAX_AMBIENT`
    /// when it is set.
    pub fn from_env() -> Result<Self> {
        let mut config = OracleConfig::default();
        if let Ok(raw) = std::env::var(MAX_AMBIENT_ENV) {
            config.max_ambient = raw.trim().parse().map_err(|_| {
                Error::Config(format!("{MAX_AMBIENT_ENV} must be an integer, got {raw:?}"))
            })?;
        }
        Ok(config)
    }
}

/// The degree-`n` slice of the ideal, in echelon form over the ambient
/// magma terms of that degree.
pub struct RelationSpan {
    pub degree: usize,
    pub signature: Signature,
    ambient: Arc<GradedSet>,
    index: HashMap<Term, usize>,
    echelon: Echelon,
}

impl RelationSpan {
    fn new(degree: usize, signature: Signature, ambient: Arc<GradedSet>) -> Self {
        let index = ambient
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        RelationSpan {
            degree,
            signature,
            ambient,
            index,
            echelon: Echelon::new(),
        }
    }

    /// The magma terms of this degree; column `i` is `ambient()[i]`.
    pub fn ambient(&self) -> &[Term] {
        &self.ambient.elements
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_dimension(&self) -> usize {
        self.ambient.len() - self.rank()
    }

    /// Echelon rows spanning the slice.
    pub fn rows(&self) -> &[SparseRow] {
        self.echelon.rows()
    }

    pub fn column(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinates of a homogeneous combination of this degree.
    pub fn vector(&self, x: &LinComb) -> Result<SparseRow> {
        let mut row = Vec::with_capacity(x.len());
        for (t, c) in x.iter() {
            if t.size() != self.degree {
                return Err(Error::DegreeMismatch {
                    expected: self.degree,
                    found: t.size(),
                });
            }
            let col = self.column(t).ok_or_else(|| {
                Error::Config(format!("{t:?} is not a term of the ambient magma"))
            })?;
            row.push((col, c.clone()));
        }
        row.sort_unstable_by_key(|(c, _)| *c);
        Ok(row)
    }

    pub fn contains(&self, x: &LinComb) -> Result<bool> {
        Ok(self.echelon.contains(&self.vector(x)?))
    }

    /// What is left of `x` after eliminating the ideal: zero iff `x` lies in
    /// the span.
    pub fn residual(&self, x: &LinComb) -> Result<LinComb> {
        let reduced = self.echelon.reduce(&self.vector(x)?);
        Ok(reduced
            .into_iter()
            .map(|(c, v)| (self.ambient.elements[c].clone(), v))
            .collect())
    }

    fn sparse_of(&self, x: &LinComb) -> SparseRow {
        self.vector(x).expect("generated rows lie in the ambient space")
    }
}

/// Membership of `x` in the span.
pub fn contains(span: &RelationSpan, x: &LinComb) -> Result<bool> {
    span.contains(x)
}

/// Outcome of comparing the basis count with the quotient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub gens: usize,
    pub degree: usize,
    pub signature: Signature,
    /// Size of the candidate basis at this degree.
    pub expected: usize,
    /// Quotient dimension.
    pub got: usize,
    /// The candidate basis stays linearly independent modulo the ideal.
    pub independent: bool,
    /// The candidate basis spans the quotient.
    pub spanning: bool,
    /// Rank of the candidate basis modulo the ideal.
    pub rank: usize,
}

impl FreenessReport {
    pub fn passed(&self) -> bool {
        self.independent && self.spanning
    }

    pub const CSV_HEADER: &'static str = "gens,degree,expected,got,independent,spanning,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.gens,
            self.degree,
            self.expected,
            self.got,
            self.independent,
            self.spanning,
            self.passed()
        )
    }
}

impl fmt::Display for FreenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "{:<13}{}", "generators:", self.gens)?;
        writeln!(f, "{:<13}{}", "degree:", self.degree)?;
        writeln!(f, "{:<13}{}", "expected:", self.expected)?;
        writeln!(f, "{:<13}{}", "got:", self.got)?;
        writeln!(f, "{:<13}{}", "independent:", yes(self.independent))?;
        writeln!(f, "{:<13}{}", "spanning:", yes(self.spanning))?;
        write!(
            f,
            "{:<13}{}",
            "result:",
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

/// Builds and caches relation spans for a fixed number of generators.
pub struct Oracle {
    gens: usize,
    config: OracleConfig,
    magma: Enumerator,
    spans: RwLock<HashMap<usize, Arc<RelationSpan>>>,
}

impl Oracle {
    pub fn new(gens: usize) -> Self {
        Oracle::with_config(gens, OracleConfig::default())
    }

    pub fn lts(gens: usize) -> Self {
        Oracle::with_config(gens, OracleConfig::lts())
    }

    pub fn with_config(gens: usize, config: OracleConfig) -> Self {
        Oracle {
            gens,
            config,
            magma: Enumerator::with_cap(gens, config.max_ambient),
            spans: RwLock::new(HashMap::new()),
        }
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    pub fn enumerator(&self) -> &Enumerator {
        &self.magma
    }

    pub fn relation_span(&self, degree: usize) -> Result<Arc<RelationSpan>> {
        if degree == 0 {
            return Err(Error::InvalidDegree(0));
        }
        if let Some(hit) = self.spans.read().unwrap().get(&degree) {
            return Ok(hit.clone());
        }
        let span = match self.config.strategy {
            Strategy::Layered => self.build_layered(degree)?,
            Strategy::Contexts => self.build_contexts(degree)?,
        };
        Ok(self
            .spans
            .write()
            .unwrap()
            .entry(degree)
            .or_insert_with(|| Arc::new(span))
            .clone())
    }

    pub fn quotient_dimension(&self, degree: usize) -> Result<usize> {
        Ok(self.relation_span(degree)?.quotient_dimension())
    }

    /// Checks that the candidate basis of this degree (the Lie-Yamaguti basis,
    /// or the Lie triple Hall set for the bracket-only signature) maps to a
    /// basis of the quotient.
    pub fn verify_basis_freeness(&self, degree: usize) -> Result<FreenessReport> {
        let span = self.relation_span(degree)?;
        let candidates = match self.config.signature {
            Signature::Full => self.magma.basis(degree)?,
            Signature::TernaryOnly => self.magma.lts_hall(degree)?,
        };
        let mut images = Echelon::new();
        for b in candidates.iter() {
            let residual = span.echelon.reduce(&span.sparse_of(&LinComb::term(b.clone())));
            images.insert(&residual);
        }
        let got = span.quotient_dimension();
        Ok(FreenessReport {
            gens: self.gens,
            degree,
            signature: self.config.signature,
            expected: candidates.len(),
            got,
            independent: images.rank() == candidates.len(),
            spanning: images.rank() == got,
            rank: images.rank(),
        })
    }

    /// Linear combinations of candidate basis elements that lie in the ideal,
    /// one per missing rank; empty exactly when the candidates are independent.
    pub fn basis_dependencies(&self, degree: usize) -> Result<Vec<LinComb>> {
        let span = self.relation_span(degree)?;
        let candidates = match self.config.signature {
            Signature::Full => self.magma.basis(degree)?,
            Signature::TernaryOnly => self.magma.lts_hall(degree)?,
        };
        // Gauss-Jordan on the residuals, tracking which candidates were combined.
        let mut pivots: Vec<(usize, Coords, Coords)> = Vec::new();
        let mut out = Vec::new();
        for (i, b) in candidates.iter().enumerate() {
            let residual = span.echelon.reduce(&span.sparse_of(&LinComb::term(b.clone())));
            let mut row: Coords = residual.into_iter().collect();
            let mut combo = BTreeMap::from([(i, Rational::one())]);
            for (col, prow, pcombo) in &pivots {
                let Some(f) = row.get(col).cloned() else { continue };
                axpy(&mut row, &f, prow);
                axpy(&mut combo, &f, pcombo);
            }
            match row.iter().next().map(|(c, v)| (*c, v.clone())) {
                None => out.push(
                    combo
                        .into_iter()
                        .map(|(j, v)| (candidates.elements[j].clone(), v))
                        .collect(),
                ),
                Some((col, lead)) => {
                    let inv = lead.recip();
                    row.values_mut().for_each(|v| *v *= &inv);
                    combo.values_mut().for_each(|v| *v *= &inv);
                    for (_, prow, pcombo) in pivots.iter_mut() {
                        if let Some(f) = prow.get(&col).cloned() {
                            axpy(prow, &f, &row);
                            axpy(pcombo, &f, &combo);
                        }
                    }
                    pivots.push((col, row, combo));
                }
            }
        }
        Ok(out)
    }

    fn ambient(&self, degree: usize) -> Result<Arc<GradedSet>> {
        self.magma.magma(degree, self.config.signature)
    }

    fn top_level_instances(&self, degree: usize) -> Result<Vec<LinComb>> {
        let mut out = Vec::new();
        for &axiom in Axiom::for_signature(self.config.signature) {
            out.extend(relations::instances(
                axiom,
                &self.magma,
                self.config.signature,
                degree,
                self.config.relations,
            )?);
        }
        Ok(out)
    }

    fn eliminate(&self, span: &mut RelationSpan, mut rows: Vec<SparseRow>) {
        match self.config.row_order {
            RowOrder::ShortestFirst => rows.sort_by_key(|r| r.len()),
            RowOrder::Shuffled(seed) => {
                rows.shuffle(&mut StdRng::seed_from_u64(seed ^ span.degree as u64))
            }
        }
        for row in &rows {
            span.echelon.insert(row);
        }
    }

    fn build_layered(&self, degree: usize) -> Result<RelationSpan> {
        let signature = self.config.signature;
        let mut span = RelationSpan::new(degree, signature, self.ambient(degree)?);
        let mut rows: Vec<SparseRow> = self
            .top_level_instances(degree)?
            .iter()
            .map(|x| span.sparse_of(x))
            .collect();

        for d in 1..degree {
            let lower = self.relation_span(d)?;
            if lower.rank() == 0 {
                continue;
            }
            let rest = degree - d;
            let hole = || Box::new(Context::Hole);
            let mut wraps = Vec::new();
            if signature == Signature::Full {
                for t in self.ambient(rest)?.iter() {
                    wraps.push(Context::StarLeft(hole(), t.clone()));
                    wraps.push(Context::StarRight(t.clone(), hole()));
                }
            }
            for i in 1..rest {
                let (left, right) = (self.ambient(i)?, self.ambient(rest - i)?);
                for p in left.iter() {
                    for q in right.iter() {
                        for slot in 0..3 {
                            wraps.push(Context::Bracket(slot, hole(), p.clone(), q.clone()));
                        }
                    }
                }
            }
            let lower_ambient = lower.ambient();
            let span_ref = &span;
            let extended: Vec<SparseRow> = wraps
                .par_iter()
                .flat_map_iter(|wrap| {
                    lower.rows().iter().map(move |row| {
                        let mut out: SparseRow = row
                            .iter()
                            .map(|(c, v)| {
                                let t = wrap.fill(&lower_ambient[*c]);
                                (span_ref.column(&t).expect("ambient term"), v.clone())
                            })
                            .collect();
                        out.sort_unstable_by_key(|(c, _)| *c);
                        out
                    })
                })
                .collect();
            rows.extend(extended);
        }
        self.eliminate(&mut span, rows);
        Ok(span)
    }

    fn build_contexts(&self, degree: usize) -> Result<RelationSpan> {
        let signature = self.config.signature;
        let mut span = RelationSpan::new(degree, signature, self.ambient(degree)?);
        let mut rows = Vec::new();
        for d in 1..=degree {
            let instances = self.top_level_instances(d)?;
            if instances.is_empty() {
                continue;
            }
            for ctx in self.contexts(degree - d)? {
                for x in &instances {
                    let filled: LinComb = x.iter().map(|(t, c)| (ctx.fill(t), c.clone())).collect();
                    if !filled.is_zero() {
                        rows.push(span.sparse_of(&filled));
                    }
                }
            }
        }
        self.eliminate(&mut span, rows);
        Ok(span)
    }

    /// All one-hole contexts whose non-hole leaves number `outer`.
    pub fn contexts(&self, outer: usize) -> Result<Vec<Context>> {
        let mut memo: Vec<Vec<Context>> = vec![vec![Context::Hole]];
        for m in 1..=outer {
            let mut here = Vec::new();
            if self.config.signature == Signature::Full {
                for k in 1..=m {
                    for t in self.ambient(k)?.iter() {
                        for c in &memo[m - k] {
                            here.push(Context::StarLeft(Box::new(c.clone()), t.clone()));
                            here.push(Context::StarRight(t.clone(), Box::new(c.clone())));
                        }
                    }
                }
            }
            for k in 2..=m {
                for i in 1..k {
                    let (left, right) = (self.ambient(i)?, self.ambient(k - i)?);
                    for p in left.iter() {
                        for q in right.iter() {
                            for c in &memo[m - k] {
                                let c = Box::new(c.clone());
                                here.push(Context::Bracket(0, c.clone(), p.clone(), q.clone()));
                                here.push(Context::Bracket(1, c.clone(), p.clone(), q.clone()));
                                here.push(Context::Bracket(2, c, p.clone(), q.clone()));
                            }
                        }
                    }
                }
            }
            memo.push(here);
        }
        Ok(memo.swap_remove(outer))
    }
}

/// A magma term with one hole.
#[derive(Clone, Debug)]
pub enum Context {
    Hole,
    StarLeft(Box<Context>, Term),
    StarRight(Term, Box<Context>),
    /// the hole's slot, the inner context, then the other two slots in order
    Bracket(u8, Box<Context>, Term, Term),
}

impl Context {
    pub fn fill(&self, t: &Term) -> Term {
        match self {
            Context::Hole => t.clone(),
            Context::StarLeft(c, r) => Term::star(c.fill(t), r.clone()),
            Context::StarRight(l, c) => Term::star(l.clone(), c.fill(t)),
            Context::Bracket(slot, c, p, q) => {
                let inner = c.fill(t);
                match slot {
                    0 => Term::bracket(inner, p.clone(), q.clone()),
                    1 => Term::bracket(p.clone(), inner, q.clone()),
                    _ => Term::bracket(p.clone(), q.clone(), inner),
                }
            }
        }
    }
}

pub fn relation_span(gens: usize, degree: usize) -> Result<Arc<RelationSpan>> {
    Oracle::new(gens).relation_span(degree)
}

pub fn quotient_dimension(gens: usize, degree: usize) -> Result<usize> {
    Oracle::new(gens).quotient_dimension(degree)
}

pub fn verify_basis_freeness(gens: usize, degree: usize) -> Result<FreenessReport> {
    Oracle::new(gens).verify_basis_freeness(degree)
}

pub fn lts_relation_span(gens: usize, degree: usize) -> Result<Arc<RelationSpan>> {
    Oracle::lts(gens).relation_span(degree)
}

pub fn lts_quotient_dimension(gens: usize, degree: usize) -> Result<usize> {
    Oracle::lts(gens).quotient_dimension(degree)
}

type Coords = BTreeMap<usize, Rational>;

/// `target -= f * source`, dropping zeros.
fn axpy(target: &mut Coords, f: &Rational, source: &Coords) {
    for (c, v) in source {
        let slot = target.entry(*c).or_insert_with(Rational::zero);
        *slot -= f * v;
        if slot.is_zero() {
            target.remove(c);
        }
    }
}
