//! Drives the library end to end the way an application would: build a
//! model, test its units, adjoin a root, grade the result, extend the
//! grading, and tensor graded modules over the extension.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use surd::abelian::{pushout, FgAbGroup, GroupHom};
use surd::extensions::radical_cocycle;
use surd::gradings::{
    extended_pic, grading_extension_obstruction, is_symmetric, strict_grading_obstruction,
    tau_extensions,
};
use surd::matrix::IntMatrix;
use surd::models::{local_ring_pic_model, local_truncated_sphere_model, sphere_unit_element};
use surd::radicals::{adjoin_root, formal_root_lifts, strict_unit_obstruction};
use surd::twisted_tensor::{
    check_associativity, check_symmetry, sign_form_from_parity, twisted_tensor, GradedModule,
};
use surd::Error;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn square_roots_over_the_truncated_sphere() {
    let model = local_truncated_sphere_model(&[big(3), big(5)]).unwrap();
    assert_eq!(model.units.to_string(), "Z/2 ⊕ Z^2");

    let one = BigInt::one();
    let five = sphere_unit_element(&model, &big(5), &one).unwrap();
    let three = sphere_unit_element(&model, &big(3), &one).unwrap();
    let inverse_of_minus_fifteen = sphere_unit_element(&model, &big(-1), &big(15)).unwrap();

    assert!(strict_unit_obstruction(&model, &five).unwrap().vanishes);
    assert!(!strict_unit_obstruction(&model, &three).unwrap().vanishes);
    assert!(strict_unit_obstruction(&model, &inverse_of_minus_fifteen).unwrap().vanishes);

    let algebra = adjoin_root(&model, &five, &big(2)).unwrap();
    assert_eq!(algebra.dimension(), 2);
    let rendered: Vec<String> =
        algebra.product_table().iter().map(|p| algebra.render_product(p)).collect();
    assert!(rendered.contains(&"x·x = 5".to_string()), "{rendered:?}");

    match adjoin_root(&model, &three, &big(2)) {
        Err(Error::Obstructed(report)) => {
            assert!(!report.vanishes);
            assert_eq!(report.lift_count, Some(BigInt::zero()));
        }
        _ => panic!("adjoining √3 must be refused"),
    }

    // The two character extensions over U₀(√5) differ by where they send x.
    let lifts = formal_root_lifts(&model, &five, &big(2)).unwrap();
    assert_eq!(lifts.lifts.len(), 2);
    assert_ne!(lifts.lifts[0].root_value, lifts.lifts[1].root_value);
}

#[test]
fn grading_and_extending_a_residue_line() {
    let units = FgAbGroup::cyclic(2).with_labels(vec!["-1".into()]).unwrap();
    let twisted = local_ring_pic_model(&units, &units.generator(0)).unwrap();

    let sigma = twisted.pic.generator(0);
    assert!(!is_symmetric(&twisted, &sigma));
    assert!(is_symmetric(&twisted, &twisted.pic.smul(&big(2), &sigma)));

    let z = FgAbGroup::free(1);
    let odd = GroupHom::new(
        z.clone(),
        twisted.pic.clone(),
        IntMatrix::from_i64_rows(&[vec![1]]),
    )
    .unwrap();
    assert!(!strict_grading_obstruction(&twisted, &odd).unwrap().vanishes);

    let even = GroupHom::new(
        z.clone(),
        twisted.pic.clone(),
        IntMatrix::from_i64_rows(&[vec![2]]),
    )
    .unwrap();
    let report = strict_grading_obstruction(&twisted, &even).unwrap();
    assert!(report.vanishes);
    assert_eq!(report.lift_count, Some(BigInt::one()));

    // Adjoining a square root of the suspension asks for a half-integer
    // grading; over the twisted line that extension is obstructed.
    let gamma = radical_cocycle(&twisted.pic, &sigma, &big(2));
    let half = extended_pic(&twisted, &gamma).unwrap();
    assert_eq!(half.group, FgAbGroup::free(1));
    assert!(!grading_extension_obstruction(&twisted, &gamma).unwrap().vanishes);
    assert!(tau_extensions(&twisted, &gamma).unwrap().homs.is_empty());

    // Switching the twist off makes the same problem solvable in exactly
    // |Hom(Z/2, P₁[2])| = 2 ways.
    let untwisted = local_ring_pic_model(&units, &units.zero()).unwrap();
    let gamma0 = radical_cocycle(&untwisted.pic, &untwisted.pic.generator(0), &big(2));
    assert!(grading_extension_obstruction(&untwisted, &gamma0).unwrap().vanishes);
    assert_eq!(tau_extensions(&untwisted, &gamma0).unwrap().homs.len(), 2);
}

#[test]
fn tensor_squares_and_pushouts() {
    let b = FgAbGroup::cyclic(2);
    let fiber = FgAbGroup::free(1).with_labels(vec!["ω".into()]).unwrap();
    let c = radical_cocycle(&fiber, &fiber.generator(0), &big(2));
    let eps = sign_form_from_parity(GroupHom::identity(b.clone())).unwrap();

    let line = GradedModule::new(
        b.clone(),
        vec![
            (b.element_from_i64(&[0]).unwrap(), 1, "L0".into()),
            (b.element_from_i64(&[1]).unwrap(), 1, "L1".into()),
        ],
    )
    .unwrap();

    let square = twisted_tensor(&line, &line, &c, &eps).unwrap();
    assert_eq!(square.summands.len(), 4);
    let twisted: Vec<&str> = square
        .summands
        .iter()
        .filter(|s| !fiber.is_zero_element(&s.twist))
        .map(|s| s.label.as_str())
        .collect();
    assert_eq!(twisted, ["ω·L1⊗L1"]);
    assert!(check_associativity(&c, &eps).unwrap().is_valid());
    assert!(check_symmetry(&c, &eps, None).unwrap().is_valid());

    let z = FgAbGroup::free(1);
    let double =
        GroupHom::new(z.clone(), z.clone(), IntMatrix::from_i64_rows(&[vec![2]])).unwrap();
    let sextuple =
        GroupHom::new(z.clone(), z.clone(), IntMatrix::from_i64_rows(&[vec![6]])).unwrap();
    let p = pushout(&double, &sextuple).unwrap();
    assert_eq!(p.group.to_string(), "Z/2 ⊕ Z");
    let left = double.then(&p.from_left).unwrap();
    let right = sextuple.then(&p.from_right).unwrap();
    assert_eq!(left.image_of_generator(0), right.image_of_generator(0));
}
