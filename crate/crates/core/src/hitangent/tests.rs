use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::liealg::{check_im_weighting, check_jacobi, AlgebroidData, StructureEntry};
use crate::linweight::{section_degree, SectionElement, WeightedBundleChart};
use crate::poly::parse;
use crate::suites::random::*;
use crate::weighting::{filtration_degree, vector_field_degree};

fn p(s: &str) -> Polynomial {
    parse(s).unwrap()
}

fn plane13() -> WeightedChart {
    WeightedChart::from_pairs(&[("x", 1), ("y", 3)]).unwrap()
}

fn field(chart: &WeightedChart, cs: &[&str]) -> PolyVectorField {
    PolyVectorField::new(chart.clone(), cs.iter().map(|c| p(c)).collect()).unwrap()
}

#[test]
fn lift_function_examples() {
    assert_eq!(lift_function(&p("x*y"), 1, 1).unwrap(), p("x__0*y__1 + x__1*y__0"));
    assert_eq!(lift_function(&p("x^2 + 3*y"), 0, 2).unwrap(), p("x__0^2 + 3*y__0"));
    assert_eq!(lift_function(&p("x^2"), 2, 2).unwrap(), p("x__1^2 + 2*x__0*x__2"));
    assert!(lift_function(&p("x"), 3, 2).is_err());
    assert_eq!(lift_function(&p("5"), 1, 2).unwrap(), p("0"));
}

#[test]
fn lift_map_examples() {
    let line_u = WeightedChart::from_pairs(&[("u", 0)]).unwrap();
    let line_v = WeightedChart::from_pairs(&[("v", 0)]).unwrap();
    let line_w = WeightedChart::from_pairs(&[("w", 0)]).unwrap();
    let id = PolynomialMap::identity(&line_u);
    assert_eq!(lift_map(&id, 2).unwrap(), PolynomialMap::identity(&jet_chart(&line_u, 2)));
    let square = PolynomialMap::new(line_u.clone(), line_v.clone(), vec![p("u^2")]).unwrap();
    let lifted = lift_map(&square, 1).unwrap();
    assert_eq!(lifted.components(), &[p("u__0^2"), p("2*u__0*u__1")]);
    let shift = PolynomialMap::new(line_v, line_w.clone(), vec![p("v + 1")]).unwrap();
    let composite = PolynomialMap::new(line_u, line_w, vec![p("u^2 + 1")]).unwrap();
    assert_eq!(
        lift_map(&square, 3).unwrap().then(&lift_map(&shift, 3).unwrap()).unwrap(),
        lift_map(&composite, 3).unwrap()
    );
}

#[test]
fn lift_vector_field_examples() {
    let line = WeightedChart::from_pairs(&[("x", 0)]).unwrap();
    let dx = field(&line, &["1"]);
    let lifted = lift_vector_field(&dx, 1, 2).unwrap();
    assert_eq!(lifted.coefficients(), &[p("0"), p("1"), p("0")]);
    let lifted0 = lift_vector_field(&dx, 0, 2).unwrap();
    assert_eq!(lifted0.coefficients(), &[p("1"), p("0"), p("0")]);
    let f2 = lift_function(&p("x^2"), 2, 2).unwrap();
    assert_eq!(lifted.apply(&f2), p("2*x__1"));
    assert_eq!(lift_function(&dx.apply(&p("x^2")), 1, 2).unwrap(), p("2*x__1"));
    assert!(lift_vector_field(&dx, 3, 2).is_err());
}

#[test]
fn q_model_examples() {
    let q = q_model(&plane13(), 3).unwrap();
    assert_eq!(q.cut_out(), &["x__0", "y__0", "y__1", "y__2"]);
    assert_eq!(q.free(), &["x__1", "x__2", "x__3", "y__3"]);
    let flat = WeightedChart::from_pairs(&[("x", 0), ("y", 0)]).unwrap();
    assert!(q_model(&flat, 2).unwrap().cut_out().is_empty());
    let normal = WeightedChart::from_pairs(&[("x", 1), ("y", 1)]).unwrap();
    assert_eq!(q_model(&normal, 1).unwrap().cut_out(), &["x__0", "y__0"]);
    assert!(q_model(&plane13(), 2).is_err());
}

#[test]
fn degree_via_q_examples() {
    let q = q_model(&plane13(), 3).unwrap();
    assert_eq!(degree_via_q(&q, &p("x^2 + y")).unwrap(), QDegree::Exact(2));
    assert_eq!(degree_via_q(&q, &p("0")).unwrap(), QDegree::AtLeast(4));
    assert_eq!(degree_via_q(&q, &p("y")).unwrap(), QDegree::Exact(3));
    assert_eq!(degree_via_q(&q, &p("x*y")).unwrap(), QDegree::AtLeast(4));
    assert_eq!(degree_via_q(&q, &p("1 + x")).unwrap(), QDegree::Exact(0));
}

#[test]
fn tangency_examples() {
    let c = plane13();
    let q = q_model(&c, 3).unwrap();
    let x_dy = field(&c, &["0", "x"]);
    assert!(tangency_check(&q, &x_dy, 2).unwrap().holds());
    assert!(!tangency_check(&q, &x_dy, 1).unwrap().holds());
    assert!(tangency_check(&q, &field(&c, &["1", "0"]), 1).unwrap().holds());
    assert!(!tangency_check(&q, &field(&c, &["1", "0"]), 0).unwrap().holds());
    for i in 0..=3 {
        assert!(tangency_check(&q, &field(&c, &["0", "0"]), i).unwrap().holds());
    }
}

#[test]
fn section_membership_examples() {
    let base = WeightedChart::from_pairs(&[("x", 1)]).unwrap();
    let b = WeightedBundleChart::new(base, &["sigma1"], vec![-1]).unwrap();
    let sigma = SectionElement::new(b.clone(), vec![p("1")]).unwrap();
    assert!(section_lift_membership(&sigma, -1, 2).unwrap().holds());
    let report = section_lift_membership(&sigma, 0, 2).unwrap();
    assert_eq!(report.failure, Some(("p1__0".to_string(), p("1"))));
    let zero = SectionElement::zero(&b);
    for i in -2..=0 {
        assert!(section_lift_membership(&zero, i, 2).unwrap().holds());
    }
    let x_sigma = SectionElement::new(b, vec![p("x")]).unwrap();
    assert!(section_lift_membership(&x_sigma, 0, 2).unwrap().holds());
    assert!(section_lift_membership(&x_sigma, 1, 2).is_err());
}

fn heisenberg(v: Vec<i64>) -> AlgebroidData {
    AlgebroidData::lie_algebra(
        &["e1", "e2", "e3"],
        v,
        vec![StructureEntry {
            a: 0,
            b: 1,
            c: 2,
            value: p("1"),
        }],
    )
    .unwrap()
}

#[test]
fn lifted_algebroid_examples() {
    assert!(lifted_algebroid_check(&heisenberg(vec![-1, -1, -2]), 2).unwrap().holds());
    let report = lifted_algebroid_check(&heisenberg(vec![0, 0, -1]), 1).unwrap();
    assert!(!report.holds());
    assert!(matches!(report.failures[0], LiftedWitness::Bracket { .. }));
    let abelian = AlgebroidData::lie_algebra(&["a", "b"], vec![-1, 0], vec![]).unwrap();
    assert!(lifted_algebroid_check(&abelian, 1).unwrap().holds());
    assert!(lifted_algebroid_check(&heisenberg(vec![1, 0, 0]), 2).is_err());
}

#[test]
fn lifted_algebroids_are_algebroids() {
    let tangent = AlgebroidData::tangent(&plane13()).unwrap();
    let t = vec![vec![p("1"), p("x^2")], vec![p("0"), p("1")]];
    let inv = vec![vec![p("1"), p("-x^2")], vec![p("0"), p("1")]];
    let changed = tangent.change_frame(&t, &inv).unwrap();
    let lifted = lift_algebroid(&changed, 2).unwrap();
    assert_eq!(check_jacobi(&lifted), None);
    assert!(lifted_algebroid_check(&changed, 3).unwrap().holds());
    let mutated = changed.reweighted(vec![0, -3]).unwrap();
    assert!(!check_im_weighting(&mutated).unwrap().holds());
    assert!(!lifted_algebroid_check(&mutated, 3).unwrap().holds());
}

#[test]
fn weighted_morphisms_preserve_q() {
    let c = plane13();
    let cubic = PolynomialMap::new(c.clone(), c.clone(), vec![p("x"), p("y + x^3")]).unwrap();
    assert_eq!(lift_preserves_q(&cubic, 3).unwrap(), None);
    let parabola = PolynomialMap::new(c.clone(), c.clone(), vec![p("x"), p("x^2")]).unwrap();
    assert!(lift_preserves_q(&parabola, 3).unwrap().is_some());
}

fn small_chart(rng: &mut SuiteRng) -> (WeightedChart, usize) {
    let dim = rng.gen_range(1..=2);
    let chart = random_chart(rng, dim, 2);
    let r = chart.order() as usize + rng.gen_range(0..=1);
    (chart, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn product_rule(seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 1);
        let (chart, r) = small_chart(&mut rng);
        let f = random_polynomial(&mut rng, chart.names(), 3, 2);
        let g = random_polynomial(&mut rng, chart.names(), 3, 2);
        let (lf, lg, lfg) = (lift_all(&f, r), lift_all(&g, r), lift_all(&(&f * &g), r));
        for i in 0..=r {
            let rhs: Polynomial = (0..=i).map(|j| &lf[j] * &lg[i - j]).sum();
            prop_assert_eq!(&lfg[i], &rhs);
        }
    }

    #[test]
    fn derivation_and_bracket_rules(seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 2);
        let (chart, r) = small_chart(&mut rng);
        let names = chart.names().to_vec();
        let vf = |rng: &mut SuiteRng| {
            let cs = (0..chart.dim()).map(|_| random_polynomial(rng, &names, 2, 2)).collect();
            PolyVectorField::new(chart.clone(), cs).unwrap()
        };
        let (x, y) = (vf(&mut rng), vf(&mut rng));
        let f = random_polynomial(&mut rng, &names, 3, 2);
        let i = rng.gen_range(0..=r);
        let j = rng.gen_range(0..=r - i);
        let xi = lift_vector_field(&x, i, r).unwrap();
        let xf = lift_all(&x.apply(&f), r);
        for (level, lf) in lift_all(&f, r).iter().enumerate() {
            let expected = if level >= i { xf[level - i].clone() } else { Polynomial::zero() };
            prop_assert_eq!(xi.apply(lf), expected);
        }
        let yj = lift_vector_field(&y, j, r).unwrap();
        prop_assert_eq!(
            xi.bracket(&yj).unwrap(),
            lift_vector_field(&x.bracket(&y).unwrap(), i + j, r).unwrap()
        );
        let fx = lift_vector_field(&x.scale(&f), i, r).unwrap();
        let lf = lift_all(&f, r);
        let mut expected = PolyVectorField::zero(fx.chart());
        for k in i..=r {
            expected = expected.add(&lift_vector_field(&x, k, r).unwrap().scale(&lf[k - i])).unwrap();
        }
        prop_assert_eq!(fx, expected);
    }

    #[test]
    fn q_recovers_the_weighting(seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 3);
        let (chart, r) = small_chart(&mut rng);
        let q = q_model(&chart, r).unwrap();
        let target = rng.gen_range(0..=r as i64 + 1);
        let f = random_polynomial_of_degree(&mut rng, &chart, target, 3, 2);
        let expected = match filtration_degree(&chart, &f).unwrap().finite() {
            Some(d) => d.min(r as i64 + 1),
            None => r as i64 + 1,
        };
        prop_assert_eq!(degree_via_q(&q, &f).unwrap().value(), expected);
        let x = PolyVectorField::new(
            chart.clone(),
            (0..chart.dim()).map(|_| random_polynomial(&mut rng, chart.names(), 2, 2)).collect(),
        )
        .unwrap();
        for i in 0..=r {
            prop_assert_eq!(
                tangency_check(&q, &x, i).unwrap().holds(),
                vector_field_degree(&x).unwrap().at_least(-(i as i64))
            );
        }
    }

    #[test]
    fn section_membership_matches_degree(seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 4);
        let (chart, _) = small_chart(&mut rng);
        let rank = rng.gen_range(1..=2);
        let vertical: Vec<i64> = (0..rank).map(|_| -rng.gen_range(0..=2)).collect();
        let frame: Vec<String> = (1..=rank).map(|b| format!("s{b}")).collect();
        let bundle = WeightedBundleChart::new(chart.clone(), &frame, vertical).unwrap();
        let r = (chart.order() as usize).max(2) + rng.gen_range(0..=1);
        let target = rng.gen_range(-(r as i64)..=0);
        let sigma = random_section_of_degree(&mut rng, &bundle, target, 3, 2);
        for i in -(r as i64)..=0 {
            prop_assert_eq!(
                section_lift_membership(&sigma, i, r).unwrap().holds(),
                section_degree(&sigma).unwrap().at_least(i)
            );
        }
    }
}
