//! Uniform random magma terms.
//!
//! A term of size `n` is drawn uniformly among all terms of that size by
//! choosing the root shape with probability proportional to the number of
//! terms it admits, then recursing into the children.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hall::{magma_count, Signature};
use crate::terms::Term;

/// Uniform term of size exactly `size` over `gens` generators.
pub fn random_term<R: Rng + ?Sized>(
    rng: &mut R,
    gens: usize,
    size: usize,
    signature: Signature,
) -> Result<Term> {
    if gens == 0 {
        return Err(Error::Config("at least one generator is required".into()));
    }
    let total = magma_count(gens, size, signature);
    if size == 0 || total == 0 {
        return Err(Error::InvalidDegree(size));
    }
    if total == u128::MAX {
        return Err(Error::ResourceCap {
            what: format!("sampling terms of size {size}"),
            requested: total,
            cap: u128::MAX - 1,
        });
    }
    Ok(draw(rng, gens, size, signature))
}

fn draw<R: Rng + ?Sized>(rng: &mut R, gens: usize, size: usize, signature: Signature) -> Term {
    if size == 1 {
        return Term::generator(rng.random_range(0..gens as u32));
    }
    let count = |n: usize| magma_count(gens, n, signature);
    let mut pick = rng.random_range(0..count(size));
    if signature == Signature::Full {
        for i in 1..size {
            let weight = count(i) * count(size - i);
            if pick < weight {
                let u = draw(rng, gens, i, signature);
                let v = draw(rng, gens, size - i, signature);
                return Term::star(u, v);
            }
            pick -= weight;
        }
    }
    for (i, j, l) in crate::hall::compositions3(size) {
        let weight = count(i) * count(j) * count(l);
        if pick < weight {
            let x = draw(rng, gens, i, signature);
            let y = draw(rng, gens, j, signature);
            let z = draw(rng, gens, l, signature);
            return Term::bracket(x, y, z);
        }
        pick -= weight;
    }
    unreachable!("weights sum to the term count")
}

/// A term whose size is uniform in `1..=max_size` (among sizes that admit
/// terms), uniform among terms of that size.
pub fn random_term_up_to<R: Rng + ?Sized>(
    rng: &mut R,
    gens: usize,
    max_size: usize,
    signature: Signature,
) -> Result<Term> {
    let sizes: Vec<usize> = (1..=max_size)
        .filter(|&n| magma_count(gens, n, signature) > 0)
        .collect();
    if sizes.is_empty() {
        return Err(Error::InvalidDegree(max_size));
    }
    let size = sizes[rng.random_range(0..sizes.len())];
    random_term(rng, gens, size, signature)
}
