//! End-to-end use of the public API across modules.

use weightlab::hitangent::{degree_via_q, q_model, QDegree};
use weightlab::liealg::{
    check_im_weighting, check_jacobi, da_check, graded_normal_algebroid,
    rees_deformation_algebroid, PoissonModel,
};
use weightlab::linweight::{section_degree, SectionElement, WeightedBundleChart};
use weightlab::suites::examples::{contact_algebroid, contact_chart, plane13, sl2_borel};
use weightlab::weighting::{
    filtration_degree, homogeneous_approximation, rees_interpolation, weighted_path_valuation,
};
use weightlab::{parse, Degree};

#[test]
fn three_degree_notions_agree_on_the_example_chart() {
    let chart = plane13();
    let q = q_model(&chart, 4).unwrap();
    for (text, d) in [("x^4 + x*y", 4), ("x^2 + y", 2), ("y", 3), ("x^3*y - 7", 0)] {
        let f = parse(text).unwrap();
        assert_eq!(filtration_degree(&chart, &f).unwrap(), Degree::Finite(d), "{text}");
        assert_eq!(weighted_path_valuation(&chart, &f).unwrap(), Degree::Finite(d), "{text}");
        assert_eq!(degree_via_q(&q, &f).unwrap(), QDegree::Exact(d), "{text}");
    }
    let f = parse("y^2").unwrap();
    assert_eq!(degree_via_q(&q, &f).unwrap(), QDegree::AtLeast(5));
}

#[test]
fn rees_interpolation_specializes_to_the_approximation() {
    let chart = plane13();
    let f = parse("x^4 + x*y + y^2 + x^5").unwrap();
    let rees = rees_interpolation(&chart, &f, 4).unwrap();
    let at_zero = rees.restrict_zero(&["_t"]);
    assert_eq!(at_zero, homogeneous_approximation(&chart, &f, 4).unwrap());
    assert_eq!(at_zero.to_string(), "x_bar^4 + x_bar*y_bar");
}

#[test]
fn contact_algebroid_is_im_and_its_limits_are_algebroids() {
    let a = contact_algebroid();
    assert!(check_jacobi(&a).is_none());
    assert!(check_im_weighting(&a).unwrap().holds());
    assert!(da_check(&a).unwrap().holds());
    assert!(PoissonModel::new(&a).unwrap().degree_check().unwrap().holds());
    assert!(check_jacobi(&graded_normal_algebroid(&a).unwrap()).is_none());
    assert!(check_jacobi(&rees_deformation_algebroid(&a).unwrap()).is_none());
}

#[test]
fn borel_deformation_brackets() {
    let rees = rees_deformation_algebroid(&sl2_borel()).unwrap();
    let ef = rees.frame_bracket(1, 2);
    assert_eq!(ef[0].to_string(), "_t");
    let gr = graded_normal_algebroid(&sl2_borel()).unwrap();
    assert!(gr.frame_bracket(1, 2).iter().all(|c| c.is_zero()));
}

#[test]
fn section_degrees_on_the_contact_chart() {
    let bundle = WeightedBundleChart::new(contact_chart(), &["s", "t"], vec![0, -2]).unwrap();
    let s = SectionElement::new(bundle, vec![parse("z").unwrap(), parse("x").unwrap()]).unwrap();
    assert_eq!(section_degree(&s).unwrap(), Degree::Finite(-1));
}
