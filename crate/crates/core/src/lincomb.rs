//! Finite formal sums of terms with exact rational coefficients.

use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::terms::{Alphabet, Term};

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A linear combination of terms. Zero coefficients are never stored, so the
/// empty map is the zero vector. Entries are kept sorted by the term order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LinComb {
    entries: BTreeMap<Term, Rational>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn term(t: Term) -> Self {
        Self::monomial(t, Rational::one())
    }

    pub fn monomial(t: Term, c: Rational) -> Self {
        let mut out = LinComb::zero();
        out.add_term(t, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Term, i64)>>(items: I) -> Self {
        let mut out = LinComb::zero();
        for (t, c) in items {
            out.add_term(t, rational(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> Rational {
        self.entries.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    /// Entries in increasing term order.
    pub fn iter(&self) -> btree_map::Iter<'_, Term, Rational> {
        self.entries.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.entries.keys()
    }

    pub fn add_term(&mut self, t: Term, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LinComb, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (t, v) in &other.entries {
            self.add_term(t.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> LinComb {
        if c.is_zero() {
            return LinComb::zero();
        }
        LinComb {
            entries: self
                .entries
                .iter()
                .map(|(t, v)| (t.clone(), v * c))
                .collect(),
        }
    }

    /// `Some(d)` when every term has size `d`; `None` for zero or mixed sizes.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut sizes = self.entries.keys().map(Term::size);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayLinComb<'a> {
        DisplayLinComb {
            comb: self,
            alphabet,
        }
    }
}

impl FromIterator<(Term, Rational)> for LinComb {
    fn from_iter<I: IntoIterator<Item = (Term, Rational)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (t, c) in iter {
            out.add_term(t, c);
        }
        out
    }
}

impl Add for &LinComb {
    type Output = LinComb;
    fn add(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &LinComb {
    type Output = LinComb;
    fn sub(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &LinComb {
    type Output = LinComb;
    fn neg(self) -> LinComb {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.entries.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} {t:?}")?;
        }
        Ok(())
    }
}

/// Renders `c1 t1 + c2 t2 - c3 t3`, leading term (largest under the term
/// order) first, every coefficient written out; zero renders as `0`.
pub struct DisplayLinComb<'a> {
    comb: &'a LinComb,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayLinComb<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comb.is_zero() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.comb.entries.iter().rev().enumerate() {
            if i == 0 {
                write!(f, "{c} ")?;
            } else if c.is_negative() {
                write!(f, " - {} ", -c)?;
            } else {
                write!(f, " + {c} ")?;
            }
            write!(f, "{}", t.display(self.alphabet))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_vanish() {
        let a = Term::generator(0);
        let mut x = LinComb::term(a.clone());
        x.add_term(a.clone(), rational(-1));
        assert!(x.is_zero());
        assert_eq!(x.len(), 0);
        x.add_term(a, rational(0));
        assert!(x.is_zero());
    }

    #[test]
    fn display_leading_term_first() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let (a, b) = (Term::generator(0), Term::generator(1));
        let baa = Term::bracket(b.clone(), a.clone(), a.clone());
        let ba_a = Term::star(Term::star(b, a.clone()), a);
        let mut x = LinComb::zero();
        x.add_term(baa, Rational::new(BigInt::from(-1), BigInt::from(2)));
        x.add_term(ba_a.clone(), rational(1));
        assert_eq!(x.display(&al).to_string(), "-1/2 [b,a,a] + 1 ((b*a)*a)");
        x.add_term(ba_a, rational(-3));
        assert_eq!(x.display(&al).to_string(), "-1/2 [b,a,a] - 2 ((b*a)*a)");
        assert_eq!(LinComb::zero().display(&al).to_string(), "0");
    }

    #[test]
    fn homogeneity() {
        let (a, b) = (Term::generator(0), Term::generator(1));
        let x = LinComb::from_terms([(a.clone(), 1), (b.clone(), 2)]);
        assert_eq!(x.homogeneous_degree(), Some(1));
        let y = LinComb::from_terms([(a.clone(), 1), (Term::star(a, b), 2)]);
        assert_eq!(y.homogeneous_degree(), None);
    }
}
