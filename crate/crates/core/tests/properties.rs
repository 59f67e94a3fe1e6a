use std::cmp::Ordering;

use proptest::prelude::*;

use lyhall::hall::is_basis_element;
use lyhall::rewrite::normalize;
use lyhall::terms::{compare_flattened, compare_terms};
use lyhall::{syntax, Alphabet, LinComb, Rational, Term};

fn term(gens: u32, depth: u32) -> impl Strategy<Value = Term> {
    let leaf = (0..gens).prop_map(Term::generator);
    leaf.prop_recursive(depth, 16, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(u, v)| Term::star(u, v)),
            (inner.clone(), inner.clone(), inner).prop_map(|(x, y, z)| Term::bracket(x, y, z)),
        ]
    })
}

fn small_term() -> impl Strategy<Value = Term> {
    term(2, 3).prop_filter("size at most 6", |t| t.size() <= 6)
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

proptest! {
    #[test]
    fn order_is_total_and_antisymmetric(x in term(3, 4), y in term(3, 4)) {
        let xy = compare_terms(&x, &y);
        prop_assert_eq!(xy, compare_terms(&y, &x).reverse());
        prop_assert_eq!(xy == Ordering::Equal, x == y);
    }

    #[test]
    fn order_is_transitive(x in term(2, 3), y in term(2, 3), z in term(2, 3)) {
        let mut v = [x, y, z];
        v.sort();
        prop_assert!(v[0] <= v[2]);
        prop_assert!(v[0] <= v[1] && v[1] <= v[2]);
    }

    #[test]
    fn size_dominates_the_order(x in term(3, 4), y in term(3, 4)) {
        if x.size() < y.size() {
            prop_assert!(x < y);
        }
    }

    #[test]
    fn flatten_length_law(t in term(3, 4)) {
        let expected = match t.as_bracket() {
            Some((p, q, r)) => p.flatten().len() + q.flatten().len() + r.flatten().len(),
            None => 1,
        };
        prop_assert_eq!(t.flatten().len(), expected);
        prop_assert!(t.flatten().letters().iter().all(|l| !l.is_bracket()));
        prop_assert_eq!(t.flatten().letters().iter().map(Term::size).sum::<usize>(), t.size());
    }

    #[test]
    fn compare_flattened_agrees_with_words(x in term(2, 3), y in term(2, 3)) {
        prop_assert_eq!(compare_flattened(&x, &y), x.flatten().cmp(&y.flatten()));
    }

    #[test]
    fn print_parse_round_trip(t in term(3, 5)) {
        let alphabet = Alphabet::parse_spec("x,y,z").unwrap();
        let text = syntax::print(&t, &alphabet);
        prop_assert_eq!(syntax::parse(&text, &alphabet).unwrap(), t);
    }

    #[test]
    fn normal_forms_are_basis_combinations(t in small_term()) {
        let nf = normalize(&LinComb::term(t.clone())).unwrap().value;
        prop_assert!(nf.terms().all(is_basis_element));
        prop_assert!(nf.terms().all(|b| b.size() == t.size()));
    }

    #[test]
    fn normalize_is_idempotent(t in small_term()) {
        let once = normalize(&LinComb::term(t)).unwrap().value;
        prop_assert_eq!(normalize(&once).unwrap().value, once);
    }

    #[test]
    fn normalize_is_linear(s in small_term(), t in small_term(), a in coefficient(), b in coefficient()) {
        let mut combo = LinComb::monomial(s.clone(), a.clone());
        combo.add_term(t.clone(), b.clone());
        let ns = normalize(&LinComb::term(s)).unwrap().value;
        let nt = normalize(&LinComb::term(t)).unwrap().value;
        prop_assert_eq!(normalize(&combo).unwrap().value, &ns.scale(&a) + &nt.scale(&b));
    }
}
