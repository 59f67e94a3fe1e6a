use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lyhall::hall::Signature;
use lyhall::models::{
    check_axioms, eval_lincomb, eval_term, load_model, LYModel, ModelSource, Vector,
};
use lyhall::rewrite::normalize;
use lyhall::sample::random_term_up_to;
use lyhall::{Error, LinComb, Rational};

fn shipped(name: &str) -> LYModel {
    let path = format!("{}/models/{name}.json", env!("CARGO_MANIFEST_DIR"));
    ModelSource::load(path).unwrap().induce().unwrap()
}

fn v(model: &LYModel, text: &str) -> Vector {
    model.parse_vector(text).unwrap()
}

#[test]
fn shipped_models_pass_and_specialize() {
    let sym = shipped("so3_sym");
    assert!(sym.star_is_zero() && !sym.bracket_is_zero());
    let lie = shipped("so3_lie");
    assert!(lie.bracket_is_zero() && !lie.star_is_zero());
    let center = shipped("so3_center");
    assert!(!center.star_is_zero() && !center.bracket_is_zero());
    for m in [&sym, &lie, &center] {
        assert!(check_axioms(m).unwrap().passed());
    }
}

#[test]
fn center_model_tables() {
    let m = shipped("so3_center");
    assert_eq!(m.names(), ["L1", "L2", "c"]);
    let (l1, l2) = (v(&m, "L1"), v(&m, "L2"));
    assert_eq!(m.format_vector(&m.star_vectors(&l1, &l2)), "-c");
    assert_eq!(m.format_vector(&m.bracket_vectors(&l1, &l2, &l1)), "L2");
}

#[test]
fn sign_flips_keep_the_identities() {
    for name in ["so3_sym", "so3_lie", "so3_center"] {
        let m = shipped(name);
        for flipped in [m.negate_star(), m.negate_bracket(), m.negate_star().negate_bracket()] {
            assert!(check_axioms(&flipped).unwrap().passed(), "{name}");
        }
    }
}

#[test]
fn evaluation_respects_normal_forms() {
    let mut rng = StdRng::seed_from_u64(17);
    for name in ["so3_sym", "so3_lie", "so3_center"] {
        let m = shipped(name);
        for _ in 0..4 {
            let assignment: Vec<Vector> = (0..3)
                .map(|_| {
                    (0..m.dim())
                        .map(|_| Rational::new(rng.random_range(-4..=4).into(), rng.random_range(1..=3).into()))
                        .collect()
                })
                .collect();
            for _ in 0..150 {
                let t = random_term_up_to(&mut rng, 3, 7, Signature::Full).unwrap();
                let nf = normalize(&LinComb::term(t.clone())).unwrap().value;
                assert_eq!(
                    eval_term(&m, &t, &assignment).unwrap(),
                    eval_lincomb(&m, &nf, &assignment).unwrap(),
                    "{name}: {t:?}"
                );
            }
        }
    }
}

#[test]
fn broken_and_unsupported_files() {
    let bad = format!("{}/tests/data/bad.json", env!("CARGO_MANIFEST_DIR"));
    assert!(matches!(load_model(&bad), Err(Error::ModelCheck(_))));
    let skew = r#"{"basis": ["L1","L2","L3"], "brackets": {"L1,L2": {"L3": "1"}},
                   "h": ["L3"], "m": ["L1", "L2+L3"]}"#;
    assert!(matches!(ModelSource::from_json(skew), Err(Error::Model(_))));
    let overlap = r#"{"basis": ["x","y"], "h": ["x"], "m": ["x","y"]}"#;
    assert!(matches!(ModelSource::from_json(overlap), Err(Error::Model(_))));
}
