//! Terms of the free two-operator magma, their size, the three orders, and the
//! forgetting map onto words over non-bracket letters.
//!
//! A [`Term`] is an immutable, reference-counted tree. Its size, a structural
//! hash, and the length of its flattened word are cached at construction, so
//! equality, hashing and the length part of the word order are cheap.
//!
//! The total order on terms is implemented as [`Ord`]: size first, then
//! generator rank for leaves, then bracket above star at equal size, then a
//! left-to-right lexicographic comparison of the children.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A generator of the free algebra: a name plus its position in the
/// generator order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub rank: u32,
}

/// The ordered generator set of a session. The order in which names are
/// given defines the generator order, and every other order derives from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Config("at least one generator is required".into()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (rank, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Config(format!("invalid generator name {name:?}")));
            }
            if index.insert(name.clone(), rank as u32).is_some() {
                return Err(Error::Config(format!("duplicate generator name {name:?}")));
            }
        }
        Ok(Alphabet { names, index })
    }

    /// `k` generators named `a`, `b`, `c`, ... (then `g26`, `g27`, ... past `z`).
    pub fn with_count(k: usize) -> Result<Self> {
        Alphabet::new((0..k).map(default_name))
    }

    /// Accepts either a generator count (`"3"`) or a comma-separated name list
    /// (`"a,b,c"`).
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Ok(k) = spec.parse::<usize>() {
            return Alphabet::with_count(k);
        }
        Alphabet::new(spec.split(',').map(|s| s.trim().to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, rank: u32) -> &str {
        &self.names[rank as usize]
    }

    pub fn generator(&self, rank: u32) -> Generator {
        Generator {
            name: self.names[rank as usize].clone(),
            rank,
        }
    }

    pub fn rank_of(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    /// The generators as leaf terms, in generator order.
    pub fn leaves(&self) -> impl Iterator<Item = Term> + '_ {
        (0..self.names.len() as u32).map(Term::generator)
    }
}

fn default_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

/// The shape of a term node.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TermKind {
    Generator(u32),
    Star(Term, Term),
    Bracket(Term, Term, Term),
}

struct Node {
    size: u32,
    letters: u32,
    hash: u64,
    kind: TermKind,
}

/// A node of the free magma on one binary operation `*` and one ternary
/// operation `[_,_,_]`.
#[derive(Clone)]
pub struct Term(Arc<Node>);

impl Term {
    fn from_kind(kind: TermKind) -> Term {
        let (size, letters) = match &kind {
            TermKind::Generator(_) => (1, 1),
            TermKind::Star(u, v) => (u.size() + v.size(), 1),
            TermKind::Bracket(x, y, z) => (
                x.size() + y.size() + z.size(),
                x.word_len() + y.word_len() + z.word_len(),
            ),
        };
        let mut h = DefaultHasher::new();
        match &kind {
            TermKind::Generator(r) => (0u8, *r).hash(&mut h),
            TermKind::Star(u, v) => (1u8, u.0.hash, v.0.hash).hash(&mut h),
            TermKind::Bracket(x, y, z) => (2u8, x.0.hash, y.0.hash, z.0.hash).hash(&mut h),
        }
        Term(Arc::new(Node {
            size: size as u32,
            letters: letters as u32,
            hash: h.finish(),
            kind,
        }))
    }

    pub fn generator(rank: u32) -> Term {
        Term::from_kind(TermKind::Generator(rank))
    }

    pub fn star(left: Term, right: Term) -> Term {
        Term::from_kind(TermKind::Star(left, right))
    }

    pub fn bracket(first: Term, second: Term, third: Term) -> Term {
        Term::from_kind(TermKind::Bracket(first, second, third))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    /// Number of generator leaves.
    pub fn size(&self) -> usize {
        self.0.size as usize
    }

    /// Length of `self.flatten()`, without building the word.
    pub fn word_len(&self) -> usize {
        self.0.letters as usize
    }

    pub fn is_generator(&self) -> bool {
        matches!(self.0.kind, TermKind::Generator(_))
    }

    pub fn is_star(&self) -> bool {
        matches!(self.0.kind, TermKind::Star(..))
    }

    pub fn is_bracket(&self) -> bool {
        matches!(self.0.kind, TermKind::Bracket(..))
    }

    /// Generators and star-rooted terms: the letters brackets are built over.
    pub fn is_letter(&self) -> bool {
        !self.is_bracket()
    }

    pub fn as_generator(&self) -> Option<u32> {
        match self.0.kind {
            TermKind::Generator(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_star(&self) -> Option<(&Term, &Term)> {
        match &self.0.kind {
            TermKind::Star(u, v) => Some((u, v)),
            _ => None,
        }
    }

    pub fn as_bracket(&self) -> Option<(&Term, &Term, &Term)> {
        match &self.0.kind {
            TermKind::Bracket(x, y, z) => Some((x, y, z)),
            _ => None,
        }
    }

    /// The forgetting map: strips every bracket, recursively, leaving the
    /// sequence of letters in left-to-right order.
    pub fn flatten(&self) -> Word {
        let mut letters = Vec::with_capacity(self.word_len());
        self.letters_into(&mut letters);
        Word(letters)
    }

    fn letters_into(&self, out: &mut Vec<Term>) {
        match &self.0.kind {
            TermKind::Bracket(x, y, z) => {
                x.letters_into(out);
                y.letters_into(out);
                z.letters_into(out);
            }
            _ => out.push(self.clone()),
        }
    }

    /// Largest generator rank occurring in the term.
    pub fn max_rank(&self) -> u32 {
        match &self.0.kind {
            TermKind::Generator(r) => *r,
            TermKind::Star(u, v) => u.max_rank().max(v.max_rank()),
            TermKind::Bracket(x, y, z) => x.max_rank().max(y.max_rank()).max(z.max_rank()),
        }
    }

    /// Whether every node is a generator or a bracket.
    pub fn is_ternary_only(&self) -> bool {
        match &self.0.kind {
            TermKind::Generator(_) => true,
            TermKind::Star(..) => false,
            TermKind::Bracket(x, y, z) => {
                x.is_ternary_only() && y.is_ternary_only() && z.is_ternary_only()
            }
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayTerm<'a> {
        DisplayTerm {
            term: self,
            alphabet,
        }
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(u32) -> String) -> fmt::Result {
        match &self.0.kind {
            TermKind::Generator(r) => f.write_str(&name(*r)),
            TermKind::Star(u, v) => {
                f.write_str("(")?;
                u.write_with(f, name)?;
                f.write_str("*")?;
                v.write_with(f, name)?;
                f.write_str(")")
            }
            TermKind::Bracket(x, y, z) => {
                f.write_str("[")?;
                x.write_with(f, name)?;
                f.write_str(",")?;
                y.write_with(f, name)?;
                f.write_str(",")?;
                z.write_with(f, name)?;
                f.write_str("]")
            }
        }
    }
}

/// Fully parenthesized rendering of a term against an alphabet.
pub struct DisplayTerm<'a> {
    term: &'a Term,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayTerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.term
            .write_with(f, &|r| self.alphabet.name(r).to_string())
    }
}

// Debug uses the default names a, b, c, ... so that test failures are readable
// without an alphabet at hand.
impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, &|r| default_name(r as usize))
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.size == other.0.size
                && self.0.kind == other.0.kind)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.size.cmp(&other.0.size).then_with(|| {
            use TermKind::*;
            match (&self.0.kind, &other.0.kind) {
                (Generator(a), Generator(b)) => a.cmp(b),
                (Bracket(..), Star(..)) => Ordering::Greater,
                (Star(..), Bracket(..)) => Ordering::Less,
                (Star(x1, x2), Star(y1, y2)) => x1.cmp(y1).then_with(|| x2.cmp(y2)),
                (Bracket(x1, x2, x3), Bracket(y1, y2, y3)) => x1
                    .cmp(y1)
                    .then_with(|| x2.cmp(y2))
                    .then_with(|| x3.cmp(y3)),
                // a leaf has size 1 and every composite has size at least 2
                _ => unreachable!("leaf compared with a composite of equal size"),
            }
        })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The total order on terms.
pub fn compare_terms(x: &Term, y: &Term) -> Ordering {
    x.cmp(y)
}

/// A word over non-bracket letters; the image of [`Term::flatten`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Term>);

impl Word {
    pub fn new(letters: Vec<Term>) -> Result<Word> {
        if let Some(bad) = letters.iter().find(|t| t.is_bracket()) {
            return Err(Error::Config(format!(
                "bracket-rooted term {bad:?} cannot be a letter"
            )));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Term] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Length first, then the first differing letter under the term order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn compare_words(x: &Word, y: &Word) -> Ordering {
    x.cmp(y)
}

/// Compares `x.flatten()` with `y.flatten()` without allocating either word.
pub fn compare_flattened(x: &Term, y: &Term) -> Ordering {
    match x.word_len().cmp(&y.word_len()) {
        Ordering::Equal => {}
        other => return other,
    }
    let mut left = LetterIter::new(x);
    let mut right = LetterIter::new(y);
    loop {
        match (left.next(), right.next()) {
            (Some(a), Some(b)) => match a.cmp(b) {
                Ordering::Equal => continue,
                other => return other,
            },
            _ => return Ordering::Equal,
        }
    }
}

/// Left-to-right iterator over the letters of a term's flattened word.
pub struct LetterIter<'a> {
    stack: Vec<&'a Term>,
}

impl<'a> LetterIter<'a> {
    pub fn new(t: &'a Term) -> Self {
        LetterIter { stack: vec![t] }
    }
}

impl<'a> Iterator for LetterIter<'a> {
    type Item = &'a Term;

    fn next(&mut self) -> Option<&'a Term> {
        while let Some(t) = self.stack.pop() {
            match t.kind() {
                TermKind::Bracket(x, y, z) => {
                    self.stack.push(z);
                    self.stack.push(y);
                    self.stack.push(x);
                }
                _ => return Some(t),
            }
        }
        None
    }
}
