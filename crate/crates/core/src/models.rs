//! Concrete Lie-Yamaguti algebras induced from reductive splittings of
//! finite-dimensional Lie algebras, with exact axiom checking and evaluation
//! of free-algebra terms.
//!
//! For `g = m ⊕ h` with `[h,h] ⊆ h` and `[h,m] ⊆ m`, the algebra on `m` is
//! `x*y = [x,y]_m` and `[x,y,z] = [[x,y]_h, z]`. Only splittings aligned with
//! the chosen basis of `g` are supported.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::hall::Signature;
use crate::lincomb::{LinComb, Rational};
use crate::oracle::relations::{self, Axiom};
use crate::terms::{is_identifier, Term, TermKind};

/// Largest model dimension `check_axioms` accepts; identity 6 alone visits
/// `dim^5` tuples.
pub const MAX_CHECK_DIM: usize = 12;

/// Dense coordinates in a fixed basis.
pub type Vector = Vec<Rational>;

pub fn zero_vector(dim: usize) -> Vector {
    vec![Rational::zero(); dim]
}

pub fn unit_vector(dim: usize, i: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[i] = Rational::one();
    v
}

fn add_scaled(acc: &mut [Rational], v: &[Rational], c: &Rational) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Writes `v` as a combination of `names`, e.g. `L2`, `-L1`, `1/2 L1 + L2`.
pub fn format_vector(v: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            out.push_str(&format!("{magnitude} "));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Structure constants of a Lie algebra in a named basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraData {
    names: Vec<String>,
    /// `[e_i, e_j]` for `i < j`, row-major over pairs.
    table: Vec<Vector>,
}

impl LieAlgebraData {
    /// `entries` lists `[e_i, e_j]` for `i < j`; omitted pairs are zero.
    pub fn new(names: Vec<String>, entries: Vec<((usize, usize), Vector)>) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::Model("the basis is empty".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Model(format!("basis name {n:?} is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::Model(format!("basis name {n:?} is repeated")));
            }
        }
        let mut table = vec![zero_vector(dim); dim * dim];
        for ((i, j), v) in entries {
            if i >= j || j >= dim {
                return Err(Error::Model(format!(
                    "bracket entries must be given for basis pairs i < j, got ({i}, {j})"
                )));
            }
            if v.len() != dim {
                return Err(Error::Model(format!(
                    "bracket vector has length {}, expected {dim}",
                    v.len()
                )));
            }
            table[i * dim + j] = v;
        }
        Ok(LieAlgebraData { names, table })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `[e_i, e_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vector {
        let d = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.table[i * d + j].clone(),
            std::cmp::Ordering::Equal => zero_vector(d),
            std::cmp::Ordering::Greater => self.table[j * d + i].iter().map(|c| -c).collect(),
        }
    }

    pub fn bracket_vectors(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let d = self.dim();
        let mut out = zero_vector(d);
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| j != i && !y[j].is_zero()) {
                add_scaled(&mut out, &self.bracket(i, j), &(&x[i] * &y[j]));
            }
        }
        out
    }

    /// First basis triple violating the Jacobi identity.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let e = |n| unit_vector(d, n);
                    let mut sum = zero_vector(d);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket(b, c);
                        add_scaled(&mut sum, &self.bracket_vectors(&e(a), &inner), &Rational::one());
                    }
                    if sum.iter().any(|c| !c.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// True iff the Jacobi identity holds on all basis triples.
pub fn check_jacobi(algebra: &LieAlgebraData) -> bool {
    algebra.jacobi_witness().is_none()
}

/// A basis-aligned splitting `g = m ⊕ h`, stored as basis indices in basis
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductivePair {
    pub m: Vec<usize>,
    pub h: Vec<usize>,
}

impl ReductivePair {
    pub fn new<S: AsRef<str>>(algebra: &LieAlgebraData, m: &[S], h: &[S]) -> Result<Self> {
        let lookup = |names: &[S]| -> Result<Vec<usize>> {
            let mut out = Vec::new();
            for n in names {
                let n = n.as_ref();
                let i = algebra.index_of(n).ok_or_else(|| {
                    Error::Model(format!(
                        "unsupported splitting: {n:?} is not a basis vector (splittings must be basis-aligned)"
                    ))
                })?;
                out.push(i);
            }
            out.sort_unstable();
            Ok(out)
        };
        let (m, h) = (lookup(m)?, lookup(h)?);
        let mut seen = vec![0u8; algebra.dim()];
        for &i in m.iter().chain(&h) {
            seen[i] += 1;
        }
        if let Some(i) = seen.iter().position(|&c| c != 1) {
            return Err(Error::Model(format!(
                "m and h must partition the basis; {} appears {} times",
                algebra.names[i], seen[i]
            )));
        }
        if m.is_empty() {
            return Err(Error::Model("m is empty".into()));
        }
        Ok(ReductivePair { m, h })
    }

    fn in_h(&self, i: usize) -> bool {
        self.h.binary_search(&i).is_ok()
    }

    /// First basis pair violating `[h,h] ⊆ h` or `[h,m] ⊆ m`.
    pub fn violation(&self, algebra: &LieAlgebraData) -> Option<(usize, usize)> {
        for &i in &self.h {
            for j in 0..algebra.dim() {
                let target_h = self.in_h(j);
                let v = algebra.bracket(i, j);
                let leaks = v
                    .iter()
                    .enumerate()
                    .any(|(k, c)| !c.is_zero() && self.in_h(k) != target_h);
                if leaks {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// True iff `[h,h] ⊆ h` and `[h,m] ⊆ m`.
pub fn check_reductive(algebra: &LieAlgebraData, split: &ReductivePair) -> bool {
    split.violation(algebra).is_none()
}

/// A finite-dimensional Lie-Yamaguti algebra given by its operation tables.
#[derive(Clone, Debug, PartialEq)]
pub struct LYModel {
    names: Vec<String>,
    star: Vec<Vector>,
    bracket: Vec<Vector>,
}

impl LYModel {
    /// The model with both operations identically zero.
    pub fn zero(names: Vec<String>) -> Self {
        let d = names.len();
        LYModel {
            star: vec![zero_vector(d); d * d],
            bracket: vec![zero_vector(d); d * d * d],
            names,
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn star(&self, i: usize, j: usize) -> &Vector {
        &self.star[i * self.dim() + j]
    }

    pub fn bracket(&self, i: usize, j: usize, k: usize) -> &Vector {
        let d = self.dim();
        &self.bracket[(i * d + j) * d + k]
    }

    pub fn set_star(&mut self, i: usize, j: usize, v: Vector) {
        let d = self.dim();
        self.star[i * d + j] = v;
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: Vector) {
        let d = self.dim();
        self.bracket[(i * d + j) * d + k] = v;
    }

    /// The same model with `*` replaced by its negative.
    pub fn negate_star(&self) -> LYModel {
        let mut out = self.clone();
        for v in &mut out.star {
            v.iter_mut().for_each(|c| *c = -&*c);
        }
        out
    }

    /// The same model with the bracket replaced by its negative.
    pub fn negate_bracket(&self) -> LYModel {
        let mut out = self.clone();
        for v in &mut out.bracket {
            v.iter_mut().for_each(|c| *c = -&*c);
        }
        out
    }

    pub fn star_is_zero(&self) -> bool {
        self.star.iter().flatten().all(Zero::is_zero)
    }

    pub fn bracket_is_zero(&self) -> bool {
        self.bracket.iter().flatten().all(Zero::is_zero)
    }

    pub fn star_vectors(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let d = self.dim();
        let mut out = zero_vector(d);
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                add_scaled(&mut out, self.star(i, j), &(&x[i] * &y[j]));
            }
        }
        out
    }

    pub fn bracket_vectors(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        let d = self.dim();
        let mut out = zero_vector(d);
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let xy = &x[i] * &y[j];
                for k in (0..d).filter(|&k| !z[k].is_zero()) {
                    add_scaled(&mut out, self.bracket(i, j, k), &(&xy * &z[k]));
                }
            }
        }
        out
    }

    /// Parses a vector written as a basis name, optionally negated.
    pub fn parse_vector(&self, text: &str) -> Result<Vector> {
        let text = text.trim();
        let (sign, name) = match text.strip_prefix('-') {
            Some(rest) => (-Rational::one(), rest.trim()),
            None => (Rational::one(), text),
        };
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::Config(format!("{name:?} is not a basis vector of m")))?;
        let mut v = zero_vector(self.dim());
        v[i] = sign;
        Ok(v)
    }

    pub fn format_vector(&self, v: &[Rational]) -> String {
        format_vector(v, &self.names)
    }
}

/// Builds the algebra on `m` from the Lie bracket of `g`.
pub fn induce_ly(algebra: &LieAlgebraData, split: &ReductivePair) -> Result<LYModel> {
    if let Some((i, j, k)) = algebra.jacobi_witness() {
        return Err(jacobi_error(algebra, (i, j, k)));
    }
    if let Some((i, j)) = split.violation(algebra) {
        return Err(Error::ModelCheck(format!(
            "the splitting is not reductive: [{}, {}] leaves its component",
            algebra.names[i], algebra.names[j]
        )));
    }
    let names = split.m.iter().map(|&i| algebra.names[i].clone()).collect();
    let mut model = LYModel::zero(names);
    let project = |v: &Vector, part: &[usize]| -> Vector { part.iter().map(|&k| v[k].clone()).collect() };
    let d = algebra.dim();
    for (a, &i) in split.m.iter().enumerate() {
        for (b, &j) in split.m.iter().enumerate() {
            let full = algebra.bracket(i, j);
            model.set_star(a, b, project(&full, &split.m));
            let mut h_part = zero_vector(d);
            for &k in &split.h {
                h_part[k] = full[k].clone();
            }
            for (c, &k) in split.m.iter().enumerate() {
                let outer = algebra.bracket_vectors(&h_part, &unit_vector(d, k));
                model.set_bracket(a, b, c, project(&outer, &split.m));
            }
        }
    }
    Ok(model)
}

fn jacobi_error(algebra: &LieAlgebraData, (i, j, k): (usize, usize, usize)) -> Error {
    Error::ModelCheck(format!(
        "Jacobi identity fails at ({}, {}, {})",
        algebra.names[i], algebra.names[j], algebra.names[k]
    ))
}

/// Outcome of checking one defining identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    /// Basis indices of the first failing tuple.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub names: Vec<String>,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn witness_names(&self, check: &AxiomCheck) -> Option<Vec<String>> {
        check
            .witness
            .as_ref()
            .map(|w| w.iter().map(|&i| self.names[i].clone()).collect())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            match self.witness_names(check) {
                None => writeln!(f, "axiom {}: pass", check.axiom.number())?,
                Some(w) => writeln!(f, "axiom {}: FAIL at ({})", check.axiom.number(), w.join(", "))?,
            }
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Exact check of the six defining identities on all tuples of basis
/// vectors. Identities 1 and 2 are checked both on the diagonal and in
/// polarized form, which together give alternation on all of `m`.
pub fn check_axioms(model: &LYModel) -> Result<AxiomReport> {
    let d = model.dim();
    if d > MAX_CHECK_DIM {
        return Err(Error::ResourceCap {
            what: format!("axiom check on a model of dimension {d}"),
            requested: d as u128,
            cap: MAX_CHECK_DIM as u128,
        });
    }
    let mut checks = Vec::new();
    for axiom in Axiom::ALL {
        let arity = axiom.arity();
        let vars: Vec<Term> = (0..arity as u32).map(Term::generator).collect();
        let polarized = relations::instance(axiom, &vars, Signature::Full);
        let diagonal = relations::diagonal_instance(axiom, &vars);
        let mut witness = None;
        let mut tuple = vec![0usize; arity];
        'tuples: loop {
            let assignment: Vec<Vector> = tuple.iter().map(|&i| unit_vector(d, i)).collect();
            for identity in std::iter::once(&polarized).chain(diagonal.as_ref()) {
                if eval_lincomb(model, identity, &assignment)?.iter().any(|c| !c.is_zero()) {
                    witness = Some(tuple.clone());
                    break 'tuples;
                }
            }
            let mut k = arity;
            loop {
                if k == 0 {
                    break 'tuples;
                }
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < d {
                    break;
                }
                tuple[k] = 0;
            }
        }
        checks.push(AxiomCheck { axiom, witness });
    }
    Ok(AxiomReport {
        names: model.names.clone(),
        checks,
    })
}

/// Evaluates a term with generator of rank `r` sent to `assignment[r]`.
pub fn eval_term(model: &LYModel, t: &Term, assignment: &[Vector]) -> Result<Vector> {
    let mut memo = HashMap::new();
    eval_memo(model, t, assignment, &mut memo)
}

fn eval_memo(
    model: &LYModel,
    t: &Term,
    assignment: &[Vector],
    memo: &mut HashMap<Term, Vector>,
) -> Result<Vector> {
    if let Some(v) = memo.get(t) {
        return Ok(v.clone());
    }
    let v = match t.kind() {
        TermKind::Generator(r) => assignment
            .get(*r as usize)
            .cloned()
            .ok_or_else(|| Error::UnassignedGenerator(format!("{t:?}")))?,
        TermKind::Star(u, v) => {
            let (x, y) = (eval_memo(model, u, assignment, memo)?, eval_memo(model, v, assignment, memo)?);
            model.star_vectors(&x, &y)
        }
        TermKind::Bracket(x, y, z) => {
            let x = eval_memo(model, x, assignment, memo)?;
            let y = eval_memo(model, y, assignment, memo)?;
            let z = eval_memo(model, z, assignment, memo)?;
            model.bracket_vectors(&x, &y, &z)
        }
    };
    memo.insert(t.clone(), v.clone());
    Ok(v)
}

/// Linear extension of [`eval_term`].
pub fn eval_lincomb(model: &LYModel, x: &LinComb, assignment: &[Vector]) -> Result<Vector> {
    let mut memo = HashMap::new();
    let mut out = zero_vector(model.dim());
    for (t, c) in x.iter() {
        add_scaled(&mut out, &eval_memo(model, t, assignment, &mut memo)?, c);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    basis: Vec<String>,
    #[serde(default)]
    brackets: BTreeMap<String, BTreeMap<String, String>>,
    h: Vec<String>,
    m: Vec<String>,
}

/// A Lie algebra together with a splitting, as read from a model file.
#[derive(Clone, Debug)]
pub struct ModelSource {
    pub algebra: LieAlgebraData,
    pub split: ReductivePair,
}

impl ModelSource {
    /// Parses the JSON model format:
    /// `{"basis": [...], "brackets": {"L1,L2": {"L3": "1"}}, "h": [...], "m": [...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)?;
        let names = file.basis.clone();
        let dim = names.len();
        let index = |n: &str| {
            names
                .iter()
                .position(|x| x == n.trim())
                .ok_or_else(|| Error::Model(format!("{n:?} is not a basis name")))
        };
        let mut entries = Vec::new();
        for (key, value) in &file.brackets {
            let (left, right) = key
                .split_once(',')
                .ok_or_else(|| Error::Model(format!("bracket key {key:?} is not of the form \"i,j\"")))?;
            let (i, j) = (index(left)?, index(right)?);
            if i >= j {
                return Err(Error::Model(format!(
                    "bracket key {key:?} must list basis vectors in basis order"
                )));
            }
            let mut v = zero_vector(dim);
            for (name, coeff) in value {
                v[index(name)?] = coeff.trim().parse::<Rational>().map_err(|_| {
                    Error::Model(format!("{coeff:?} is not a rational number"))
                })?;
            }
            entries.push(((i, j), v));
        }
        let algebra = LieAlgebraData::new(names, entries)?;
        let split = ReductivePair::new(&algebra, &file.m, &file.h)?;
        Ok(ModelSource { algebra, split })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        ModelSource::from_json(&std::fs::read_to_string(path)?)
    }

    /// Checks Jacobi and the splitting, then induces the model.
    pub fn induce(&self) -> Result<LYModel> {
        induce_ly(&self.algebra, &self.split)
    }
}

/// Loads, induces and fully checks a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<LYModel> {
    let model = ModelSource::load(path)?.induce()?;
    let report = check_axioms(&model)?;
    if !report.passed() {
        return Err(Error::ModelCheck(report.to_string()));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::rational;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    fn vector(v: &[i64]) -> Vector {
        v.iter().map(|&c| rational(c)).collect()
    }

    fn so3() -> LieAlgebraData {
        LieAlgebraData::new(
            names(&["L1", "L2", "L3"]),
            vec![
                ((0, 1), vector(&[0, 0, 1])),
                ((1, 2), vector(&[1, 0, 0])),
                ((0, 2), vector(&[0, -1, 0])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn jacobi() {
        assert!(check_jacobi(&so3()));
        let heisenberg =
            LieAlgebraData::new(names(&["x", "y", "z"]), vec![((0, 1), vector(&[0, 0, 1]))]).unwrap();
        assert!(check_jacobi(&heisenberg));
        let broken = LieAlgebraData::new(
            names(&["x", "y", "z"]),
            vec![((0, 1), vector(&[1, 0, 0])), ((0, 2), vector(&[0, 1, 0]))],
        )
        .unwrap();
        assert_eq!(broken.jacobi_witness(), Some((0, 1, 2)));
        assert!(LieAlgebraData::new(names(&["x", "y"]), vec![((1, 0), vector(&[1, 0]))]).is_err());
        assert!(LieAlgebraData::new(names(&["x", "y"]), vec![((0, 0), vector(&[1, 0]))]).is_err());
    }

    #[test]
    fn reductive_splittings() {
        let g = so3();
        let split = ReductivePair::new(&g, &["L1", "L2"], &["L3"]).unwrap();
        assert!(check_reductive(&g, &split));
        assert!(ReductivePair::new(&g, &["L1", "L2+L3"], &["L3"]).is_err());
        assert!(ReductivePair::new(&g, &["L1"], &["L3"]).is_err());
        let lie = ReductivePair::new(&g, &["L1", "L2", "L3"], &[] as &[&str]).unwrap();
        assert!(check_reductive(&g, &lie));
        // [L1,L2] = L3 leaves h = {L1, L2}
        let bad = ReductivePair::new(&g, &["L3"], &["L1", "L2"]).unwrap();
        assert!(!check_reductive(&g, &bad));
    }

    #[test]
    fn symmetric_so3() {
        let g = so3();
        let model = induce_ly(&g, &ReductivePair::new(&g, &["L1", "L2"], &["L3"]).unwrap()).unwrap();
        assert!(model.star_is_zero());
        assert_eq!(model.bracket(0, 1, 0), &vector(&[0, 1]));
        assert!(check_axioms(&model).unwrap().passed());
        let (a, b) = (Term::generator(0), Term::generator(1));
        let assignment = vec![vector(&[1, 0]), vector(&[0, 1])];
        let v = eval_term(&model, &Term::star(a.clone(), b.clone()), &assignment).unwrap();
        assert_eq!(model.format_vector(&v), "0");
        let v = eval_term(&model, &Term::bracket(a.clone(), b.clone(), a.clone()), &assignment).unwrap();
        assert_eq!(model.format_vector(&v), "L2");
        assert!(matches!(
            eval_term(&model, &Term::generator(2), &assignment),
            Err(Error::UnassignedGenerator(_))
        ));
    }

    #[test]
    fn lie_specialization() {
        let g = so3();
        let split = ReductivePair::new(&g, &["L1", "L2", "L3"], &[] as &[&str]).unwrap();
        let model = induce_ly(&g, &split).unwrap();
        assert!(model.bracket_is_zero());
        assert_eq!(model.star(0, 1), &vector(&[0, 0, 1]));
        assert!(check_axioms(&model).unwrap().passed());
    }

    #[test]
    fn engineered_failures() {
        let mut model = LYModel::zero(names(&["L1", "L2"]));
        assert!(check_axioms(&model).unwrap().passed());
        model.set_star(0, 0, vector(&[0, 1]));
        let report = check_axioms(&model).unwrap();
        assert_eq!(report.checks[0].witness, Some(vec![0, 0]));
        assert!(report.to_string().starts_with("axiom 1: FAIL at (L1, L1)"));
        assert!(check_axioms(&LYModel::zero((0..13).map(|i| format!("e{i}")).collect())).is_err());
    }

    #[test]
    fn vector_formatting() {
        let ns = names(&["L1", "L2"]);
        let half = "1/2".parse::<Rational>().unwrap();
        assert_eq!(format_vector(&[half, rational(1)], &ns), "1/2 L1 + L2");
        assert_eq!(format_vector(&vector(&[-1, -3]), &ns), "-L1 - 3 L2");
    }

    #[test]
    fn json_format() {
        let text = r#"{"basis": ["L1","L2","L3"],
            "brackets": {"L1,L2": {"L3": "1"}, "L2,L3": {"L1": "1"}, "L1,L3": {"L2": "-1"}},
            "h": ["L3"], "m": ["L1","L2"]}"#;
        let src = ModelSource::from_json(text).unwrap();
        assert_eq!(src.algebra, so3());
        let reversed = text.replace("\"L1,L3\"", "\"L3,L1\"");
        assert!(matches!(ModelSource::from_json(&reversed), Err(Error::Model(_))));
        let bad_rational = text.replace("\"-1\"", "\"x\"");
        assert!(ModelSource::from_json(&bad_rational).is_err());
    }
}
