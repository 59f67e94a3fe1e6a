//! Instances of the six defining identities with magma terms as arguments.

use crate::error::Result;
use crate::hall::{Enumerator, Signature};
use crate::lincomb::LinComb;
use crate::terms::Term;

/// The defining identities, numbered as usual:
///
/// 1. `x*x = 0`
/// 2. `[x,x,y] = 0`
/// 3. `[x,y,z] + [y,z,x] + [z,x,y] + (x*y)*z + (y*z)*x + (z*x)*y = 0`
/// 4. `[x*y,z,w] + [y*z,x,w] + [z*x,y,w] = 0`
/// 5. `[x,y,z*w] = z*[x,y,w] + [x,y,z]*w`
/// 6. `[x,y,[u,v,w]] = [[x,y,u],v,w] + [u,[x,y,v],w] + [u,v,[x,y,w]]`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Ly1,
    Ly2,
    Ly3,
    Ly4,
    Ly5,
    Ly6,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Ly1,
        Axiom::Ly2,
        Axiom::Ly3,
        Axiom::Ly4,
        Axiom::Ly5,
        Axiom::Ly6,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    /// Arguments of the multilinear (polarized) form.
    pub fn arity(self) -> usize {
        match self {
            Axiom::Ly1 => 2,
            Axiom::Ly2 | Axiom::Ly3 => 3,
            Axiom::Ly4 | Axiom::Ly5 => 4,
            Axiom::Ly6 => 5,
        }
    }

    /// Identities that survive when the star product is absent.
    pub fn for_signature(signature: Signature) -> &'static [Axiom] {
        match signature {
            Signature::Full => &Axiom::ALL,
            Signature::TernaryOnly => &[Axiom::Ly2, Axiom::Ly3, Axiom::Ly6],
        }
    }
}

/// Which forms of the two alternating identities to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationConfig {
    /// `x*x` and `[x,x,y]`
    pub diagonal: bool,
    /// `x*y + y*x` and `[x,y,z] + [y,x,z]`
    pub polarized: bool,
}

impl Default for RelationConfig {
    fn default() -> Self {
        RelationConfig {
            diagonal: true,
            polarized: true,
        }
    }
}

fn s(u: &Term, v: &Term) -> Term {
    Term::star(u.clone(), v.clone())
}

fn br(x: &Term, y: &Term, z: &Term) -> Term {
    Term::bracket(x.clone(), y.clone(), z.clone())
}

/// The polarized instance of `axiom` at `args` (length `axiom.arity()`).
/// Under [`Signature::TernaryOnly`] the cyclic identity drops its star terms.
pub fn instance(axiom: Axiom, args: &[Term], signature: Signature) -> LinComb {
    assert_eq!(args.len(), axiom.arity(), "wrong number of arguments");
    match axiom {
        Axiom::Ly1 => {
            let (x, y) = (&args[0], &args[1]);
            LinComb::from_terms([(s(x, y), 1), (s(y, x), 1)])
        }
        Axiom::Ly2 => {
            let (x, y, z) = (&args[0], &args[1], &args[2]);
            LinComb::from_terms([(br(x, y, z), 1), (br(y, x, z), 1)])
        }
        Axiom::Ly3 => {
            let (x, y, z) = (&args[0], &args[1], &args[2]);
            let mut out = LinComb::from_terms([(br(x, y, z), 1), (br(y, z, x), 1), (br(z, x, y), 1)]);
            if signature == Signature::Full {
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    out.add_term(s(&s(a, b), c), crate::lincomb::rational(1));
                }
            }
            out
        }
        Axiom::Ly4 => {
            let (x, y, z, w) = (&args[0], &args[1], &args[2], &args[3]);
            LinComb::from_terms([
                (br(&s(x, y), z, w), 1),
                (br(&s(y, z), x, w), 1),
                (br(&s(z, x), y, w), 1),
            ])
        }
        Axiom::Ly5 => {
            let (x, y, z, w) = (&args[0], &args[1], &args[2], &args[3]);
            LinComb::from_terms([
                (br(x, y, &s(z, w)), 1),
                (s(z, &br(x, y, w)), -1),
                (s(&br(x, y, z), w), -1),
            ])
        }
        Axiom::Ly6 => {
            let (x, y, u, v, w) = (&args[0], &args[1], &args[2], &args[3], &args[4]);
            LinComb::from_terms([
                (br(x, y, &br(u, v, w)), 1),
                (br(&br(x, y, u), v, w), -1),
                (br(u, &br(x, y, v), w), -1),
                (br(u, v, &br(x, y, w)), -1),
            ])
        }
    }
}

/// Diagonal instance of identity 1 (`x*x`, one argument) or 2 (`[x,x,y]`,
/// two arguments).
pub fn diagonal_instance(axiom: Axiom, args: &[Term]) -> Option<LinComb> {
    match axiom {
        Axiom::Ly1 => Some(LinComb::term(s(&args[0], &args[0]))),
        Axiom::Ly2 => Some(LinComb::term(br(&args[0], &args[0], &args[1]))),
        _ => None,
    }
}

/// Every tuple of `parts` magma terms whose sizes sum to `total`.
pub fn argument_tuples(
    magma: &Enumerator,
    signature: Signature,
    parts: usize,
    total: usize,
) -> Result<Vec<Vec<Term>>> {
    let mut out = Vec::new();
    if parts == 0 || total < parts {
        return Ok(out);
    }
    let mut sizes = vec![1usize; parts];
    compositions(total, parts, 0, &mut sizes, &mut |sizes| {
        let sets: Vec<_> = sizes
            .iter()
            .map(|&n| magma.magma(n, signature))
            .collect::<Result<_>>()?;
        if sets.iter().any(|s| s.is_empty()) {
            return Ok(());
        }
        let mut idx = vec![0usize; parts];
        loop {
            out.push(idx.iter().zip(&sets).map(|(&i, s)| s.elements[i].clone()).collect());
            let mut k = parts;
            loop {
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < sets[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    })?;
    Ok(out)
}

fn compositions(
    remaining: usize,
    parts: usize,
    pos: usize,
    sizes: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if pos + 1 == parts {
        sizes[pos] = remaining;
        return visit(sizes);
    }
    let left_after = parts - pos - 1;
    for first in 1..=remaining.saturating_sub(left_after) {
        sizes[pos] = first;
        compositions(remaining - first, parts, pos + 1, sizes, visit)?;
    }
    Ok(())
}

/// All instances of `axiom` of total size `degree`, in the forms selected by
/// `config`. Alternating identities are emitted once per unordered pair of
/// swapped arguments.
pub fn instances(
    axiom: Axiom,
    magma: &Enumerator,
    signature: Signature,
    degree: usize,
    config: RelationConfig,
) -> Result<Vec<LinComb>> {
    let mut out = Vec::new();
    let alternating = matches!(axiom, Axiom::Ly1 | Axiom::Ly2);
    if !alternating || config.polarized {
        for args in argument_tuples(magma, signature, axiom.arity(), degree)? {
            if alternating && args[0] > args[1] {
                continue;
            }
            out.push(instance(axiom, &args, signature));
        }
    }
    if alternating && config.diagonal {
        match axiom {
            Axiom::Ly1 if degree.is_multiple_of(2) => {
                for x in magma.magma(degree / 2, signature)?.iter() {
                    out.push(LinComb::term(s(x, x)));
                }
            }
            Axiom::Ly2 => {
                for args in argument_tuples(magma, signature, 2, degree)? {
                    if 2 * args[0].size() + args[1].size() == degree {
                        out.push(diagonal_instance(axiom, &args).expect("alternating"));
                    }
                }
            }
            _ => {}
        }
    }
    out.retain(|x| !x.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_tuple_counts() {
        let en = Enumerator::new(2);
        // (1,1,1): 8 tuples
        assert_eq!(argument_tuples(&en, Signature::Full, 3, 3).unwrap().len(), 8);
        // (1,2) and (2,1): 2*4 + 4*2
        assert_eq!(argument_tuples(&en, Signature::Full, 2, 3).unwrap().len(), 16);
        assert!(argument_tuples(&en, Signature::Full, 4, 3).unwrap().is_empty());
        assert!(argument_tuples(&en, Signature::TernaryOnly, 2, 3)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn degree_two_star_relations() {
        let en = Enumerator::new(2);
        let rows = instances(Axiom::Ly1, &en, Signature::Full, 2, RelationConfig::default()).unwrap();
        // polarized a*a, a*b+b*a, b*b doubled; diagonal a*a, b*b
        assert_eq!(rows.len(), 5);
    }

    #[test]
    fn ternary_cyclic_has_no_stars() {
        let g = |r| Term::generator(r);
        let x = instance(Axiom::Ly3, &[g(0), g(1), g(2)], Signature::TernaryOnly);
        assert_eq!(x.len(), 3);
        assert!(x.terms().all(|t| t.is_ternary_only()));
        assert_eq!(instance(Axiom::Ly3, &[g(0), g(1), g(2)], Signature::Full).len(), 6);
    }
}
