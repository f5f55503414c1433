use super::*;
use crate::poly::{int, parse, rat};

fn p(s: &str) -> Polynomial {
    parse(s).unwrap()
}

fn heisenberg(v: Vec<i64>) -> AlgebroidData {
    AlgebroidData::lie_algebra(&["e1", "e2", "e3"], v, vec![entry(0, 1, 2, p("1"))]).unwrap()
}

/// Frame `(h, e, f)` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
fn sl2(v: Vec<i64>) -> AlgebroidData {
    AlgebroidData::lie_algebra(
        &["h", "e", "f"],
        v,
        vec![
            entry(0, 1, 1, p("2")),
            entry(0, 2, 2, p("-2")),
            entry(1, 2, 0, p("1")),
        ],
    )
    .unwrap()
}

fn plane13() -> WeightedChart {
    WeightedChart::from_pairs(&[("x", 1), ("y", 3)]).unwrap()
}

fn consts(v: &[i64]) -> Vec<Polynomial> {
    v.iter().map(|&c| Polynomial::integer(c)).collect()
}

#[test]
fn construction_antisymmetrizes() {
    let g = AlgebroidData::lie_algebra(&["a", "b"], vec![-1, -1], vec![entry(1, 0, 0, p("3"))])
        .unwrap();
    assert_eq!(g.gamma(0, 1, 0), p("-3"));
    assert_eq!(g.gamma(1, 0, 0), p("3"));
    assert!(AlgebroidData::lie_algebra(
        &["a", "b"],
        vec![0, 0],
        vec![entry(0, 1, 0, p("1")), entry(1, 0, 0, p("1"))]
    )
    .is_err());
    assert!(AlgebroidData::lie_algebra(&["a"], vec![0], vec![entry(0, 0, 0, p("1"))]).is_err());
}

#[test]
fn jacobi_examples() {
    let abelian = AlgebroidData::lie_algebra(&["a", "b", "c"], vec![0; 3], vec![]).unwrap();
    assert_eq!(check_jacobi(&abelian), None);
    assert_eq!(check_jacobi(&heisenberg(vec![-1, -1, -2])), None);
    assert_eq!(check_jacobi(&sl2(vec![0, 0, -1])), None);
    let mutated = AlgebroidData::lie_algebra(
        &["e1", "e2", "e3"],
        vec![0; 3],
        vec![entry(0, 1, 2, p("1")), entry(0, 2, 0, p("1"))],
    )
    .unwrap();
    match check_jacobi(&mutated) {
        Some(JacobiWitness::Jacobiator { triple, .. }) => assert_eq!(triple, (0, 1, 2)),
        other => panic!("{other:?}"),
    }
    assert_eq!(check_jacobi(&AlgebroidData::tangent(&plane13()).unwrap()), None);
}

#[test]
fn anchor_must_preserve_brackets() {
    let base = WeightedChart::from_pairs(&[("x", 0)]).unwrap();
    let bundle = WeightedBundleChart::new(base, &["a", "b"], vec![0, 0]).unwrap();
    let bad = AlgebroidData::new(bundle, vec![vec![p("1")], vec![p("x")]], vec![]).unwrap();
    assert!(matches!(check_jacobi(&bad), Some(JacobiWitness::Anchor { .. })));
}

#[test]
fn frame_change_preserves_jacobi() {
    let tangent = AlgebroidData::tangent(&plane13()).unwrap();
    let t = vec![vec![p("1"), p("x^2")], vec![p("0"), p("1")]];
    let inv = vec![vec![p("1"), p("-x^2")], vec![p("0"), p("1")]];
    let changed = tangent.change_frame(&t, &inv).unwrap();
    assert_eq!(check_jacobi(&changed), None);
    assert_eq!(changed.gamma(0, 1, 0), p("2*x"));
}

#[test]
fn im_examples() {
    assert!(check_im_weighting(&heisenberg(vec![-1, -1, -2])).unwrap().holds());
    let report = check_im_weighting(&heisenberg(vec![0, 0, -1])).unwrap();
    assert_eq!(
        report.failures,
        vec![ImWitness::Structure {
            a: 0,
            b: 1,
            c: 2,
            required: 1,
            found: Degree::Finite(0)
        }]
    );
    assert_eq!(report.failures[0].to_string(), "Γ^3_12: degree 0 < 1");
    assert!(check_im_weighting(&sl2(vec![0, 0, -1])).unwrap().holds());
    assert!(check_im_weighting(&AlgebroidData::tangent(&plane13()).unwrap()).unwrap().holds());
    let positive = heisenberg(vec![1, 1, 2]);
    let report = check_im_weighting(&positive).unwrap();
    assert!(report.holds());
    assert_eq!(report.positive_weights, vec![0, 1, 2]);
}

#[test]
fn da_examples() {
    let abelian = AlgebroidData::lie_algebra(&["a", "b"], vec![0, 0], vec![]).unwrap();
    assert!(da_check(&abelian).unwrap().holds());
    let tangent = AlgebroidData::tangent(&plane13()).unwrap();
    let dx = da_function(&tangent, &p("x"));
    assert_eq!(dx, crate::linweight::FormElement::dual_frame(tangent.bundle(), 0));
    assert_eq!(crate::linweight::form_degree(&dx).unwrap(), Degree::Finite(1));
    assert!(da_check(&tangent).unwrap().holds());
    let h = heisenberg(vec![0, 0, -1]);
    let d3 = da_dual_frame(&h, 2);
    assert_eq!(d3.coefficient(&[0, 1]), p("-1"));
    let report = da_check(&h).unwrap();
    assert_eq!(
        report.failures,
        vec![DaWitness::DualFrame {
            c: 2,
            required: 1,
            found: Degree::Finite(0)
        }]
    );
    assert!(da_check(&heisenberg(vec![-1, -1, -2])).unwrap().holds());
}

#[test]
fn da_squares_to_zero_on_two_forms() {
    let g = sl2(vec![0, 0, -1]);
    let tau = |a| crate::linweight::FormElement::dual_frame(g.bundle(), a);
    let w = tau(0).wedge(&tau(1)).unwrap();
    assert!(da_apply(&g, &da_apply(&g, &w).unwrap()).unwrap().is_zero());
    let tangent = AlgebroidData::tangent(&plane13()).unwrap();
    let f = crate::linweight::FormElement::function(tangent.bundle(), p("x^2*y + y^3"));
    let ddf = da_apply(&tangent, &da_apply(&tangent, &f).unwrap()).unwrap();
    assert!(ddf.is_zero());
}

#[test]
fn poisson_examples() {
    let tangent = AlgebroidData::tangent(&plane13()).unwrap();
    let model = PoissonModel::new(&tangent).unwrap();
    assert_eq!(model.bracket(&p("p_x"), &p("x")), p("1"));
    assert_eq!(model.bracket(&p("x"), &p("y")), p("0"));
    assert_eq!(model.bracket(&p("p_x*p_y"), &p("x*y")), p("p_x*x + p_y*y"));
    assert!(model.degree_check().unwrap().holds());
    assert_eq!(model.jacobi_failure(), None);

    let base = WeightedChart::from_pairs(&[("x", 1)]).unwrap();
    let bundle = WeightedBundleChart::with_fibre(base, &["s"], &["p_s"], vec![0]).unwrap();
    let bad = AlgebroidData::new(bundle, vec![vec![p("1")]], vec![]).unwrap();
    let report = PoissonModel::new(&bad).unwrap().degree_check().unwrap();
    assert_eq!(report.failures.len(), 1);
    assert_eq!(report.failures[0].to_string(), "{x, p_s}: degree 0 < 1");

    let h = heisenberg(vec![-1, -1, -2]);
    let model = PoissonModel::new(&h).unwrap();
    assert_eq!(model.bracket(&p("p1"), &p("p2")), p("p3"));
    assert_eq!(model.jacobi_failure(), None);
    assert!(model.degree_check().unwrap().holds());
    assert!(!PoissonModel::new(&heisenberg(vec![0, 0, -1]))
        .unwrap()
        .degree_check()
        .unwrap()
        .holds());
}

#[test]
fn graded_examples() {
    let g = sl2(vec![0, 0, -1]);
    let gr = graded_normal_algebroid(&g).unwrap();
    assert_eq!(gr.gamma(1, 2, 0), p("0"));
    assert_eq!(gr.gamma(0, 1, 1), p("2"));
    assert_eq!(gr.gamma(0, 2, 2), p("-2"));
    assert_eq!(check_jacobi(&gr), None);
    let h = heisenberg(vec![-1, -1, -2]);
    let gr = graded_normal_algebroid(&h).unwrap();
    assert_eq!(gr.relabel(h.bundle()).unwrap(), h);
    assert!(matches!(
        graded_normal_algebroid(&heisenberg(vec![0, 0, -1])),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn rees_examples() {
    let g = sl2(vec![-2, -2, -2]);
    let rees = rees_deformation_algebroid(&g).unwrap();
    assert_eq!(rees.gamma(0, 1, 1), p("2*_t^2"));
    assert_eq!(rees.gamma(1, 2, 0), p("_t^2"));
    assert_eq!(check_jacobi(&rees), None);

    let borel = sl2(vec![0, 0, -1]);
    let rees = rees_deformation_algebroid(&borel).unwrap();
    assert_eq!(rees.gamma(1, 2, 0), p("_t"));
    assert_eq!(rees.gamma(0, 1, 1), p("2"));
    assert_eq!(check_jacobi(&rees), None);
    assert_eq!(rees.specialize_t(1).relabel(borel.bundle()).unwrap(), borel);
    assert_eq!(rees.specialize_t(0), graded_normal_algebroid(&borel).unwrap());

    let h = heisenberg(vec![-1, -1, -2]);
    let rees = rees_deformation_algebroid(&h).unwrap();
    assert!(rees.structure_entries().iter().all(|e| !e.value.has_var(T_VAR)));
}

#[test]
fn rees_of_tangent_algebroid() {
    let base = plane13();
    let tangent = AlgebroidData::tangent(&base).unwrap();
    let t = vec![vec![p("1"), p("x^2 + y")], vec![p("0"), p("1")]];
    let inv = vec![vec![p("1"), p("-x^2 - y")], vec![p("0"), p("1")]];
    let changed = tangent.change_frame(&t, &inv).unwrap();
    assert!(check_im_weighting(&changed).unwrap().holds());
    let rees = rees_deformation_algebroid(&changed).unwrap();
    assert_eq!(check_jacobi(&rees), None);
    assert_eq!(rees.specialize_t(1).relabel(changed.bundle()).unwrap(), changed);
    let gr = graded_normal_algebroid(&changed).unwrap();
    assert_eq!(rees.specialize_t(0), gr);
    assert_eq!(check_jacobi(&gr), None);
}

#[test]
fn lower_central_series_examples() {
    assert_eq!(lower_central_series(&heisenberg(vec![-1, -1, -2])).unwrap(), vec![3, 1, 0]);
    let abelian = AlgebroidData::lie_algebra(&["a", "b", "c", "d"], vec![0; 4], vec![]).unwrap();
    assert_eq!(lower_central_series(&abelian).unwrap(), vec![4, 0]);
    assert_eq!(lower_central_series(&sl2(vec![0, 0, -1])).unwrap(), vec![3]);
    let tangent = AlgebroidData::tangent(&plane13()).unwrap();
    assert!(lower_central_series(&tangent).is_err());
}

#[test]
fn graded_fibres_are_nilpotent() {
    let gr = graded_normal_algebroid(&sl2(vec![-1, -1, -2])).unwrap();
    let lcs = lower_central_series(&gr).unwrap();
    assert_eq!(lcs.last(), Some(&0));
    assert!(lcs.len() - 1 <= 2);
}

#[test]
fn bch_examples() {
    let g = GradedNilpotentLie::new(heisenberg(vec![-1, -1, -2])).unwrap();
    assert_eq!(g.step(), 2);
    let xy = bch_product(&g, &consts(&[1, 0, 0]), &consts(&[0, 1, 0])).unwrap();
    assert_eq!(xy, vec![p("1"), p("1"), p("1/2")]);
    let x = vec![p("a"), p("b"), p("c")];
    assert_eq!(bch_product(&g, &x, &consts(&[0, 0, 0])).unwrap(), x);
    let minus: Vec<Polynomial> = x.iter().map(|c| -c.clone()).collect();
    assert_eq!(bch_product(&g, &x, &minus).unwrap(), consts(&[0, 0, 0]));
    assert!(matches!(
        GradedNilpotentLie::new(sl2(vec![-1, -1, -1])),
        Err(Error::NotNilpotent(_))
    ));
    assert!(GradedNilpotentLie::new(heisenberg(vec![0, -1, -1])).is_err());
}

/// Free 2-step-3 nilpotent algebra: e1, e2 (weight −1), e3 = [e1,e2]
/// (weight −2), e4 = [e1,e3], e5 = [e2,e3] (weight −3).
fn engel_like() -> AlgebroidData {
    AlgebroidData::lie_algebra(
        &["e1", "e2", "e3", "e4", "e5"],
        vec![-1, -1, -2, -3, -3],
        vec![
            entry(0, 1, 2, p("1")),
            entry(0, 2, 3, p("1")),
            entry(1, 2, 4, p("1")),
        ],
    )
    .unwrap()
}

#[test]
fn bch_is_associative_symbolically() {
    let g = GradedNilpotentLie::new(engel_like()).unwrap();
    assert_eq!(g.step(), 3);
    let sym = |s: &str| (1..=5).map(|a| p(&format!("{s}{a}"))).collect::<Vec<_>>();
    let (x, y, z) = (sym("x"), sym("y"), sym("z"));
    let left = bch_product(&g, &bch_product(&g, &x, &y).unwrap(), &z).unwrap();
    let right = bch_product(&g, &x, &bch_product(&g, &y, &z).unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn bch_third_order_term() {
    // X·Y = X + Y + ½[X,Y] + 1/12([X,[X,Y]] − [Y,[X,Y]]).
    let g = GradedNilpotentLie::new(engel_like()).unwrap();
    let xy = bch_product(&g, &consts(&[1, 0, 0, 0, 0]), &consts(&[0, 1, 0, 0, 0])).unwrap();
    let expected: Vec<Polynomial> = [int(1), int(1), rat(1, 2), rat(1, 12), rat(-1, 12)]
        .into_iter()
        .map(Polynomial::constant)
        .collect();
    assert_eq!(xy, expected);
}

#[test]
fn dilation_examples() {
    let g = GradedNilpotentLie::new(heisenberg(vec![-1, -1, -2])).unwrap();
    let lambda = p("_lam");
    let d = dilation(&g, &lambda, &[p("1"), p("1"), p("1/2")]).unwrap();
    assert_eq!(d, vec![p("_lam"), p("_lam"), p("1/2*_lam^2")]);
    let x = vec![p("a"), p("b"), p("c")];
    assert_eq!(dilation(&g, &p("1"), &x).unwrap(), x);
    assert!(dilation_check(&g).unwrap().holds());
    assert!(dilation_check(&GradedNilpotentLie::new(engel_like()).unwrap()).unwrap().holds());
    let ungraded = GradedNilpotentLie::new(heisenberg(vec![-1, -1, -3])).unwrap();
    assert!(!dilation_check(&ungraded).unwrap().holds());
}

#[test]
fn wide_examples() {
    let g = sl2(vec![0, 0, -1]);
    let full = vec![vec![0, 1, 2]];
    let report = check_wide_integration_hypotheses(&g, &full, &[], &[vec![]]).unwrap();
    assert!(report.holds());
    assert_eq!(report.dimensions, vec![vec![3]]);
    let borel = vec![consts(&[1, 0, 0]), consts(&[0, 1, 0])];
    let report = check_wide_integration_hypotheses(&g, &full, &borel, &[vec![]]).unwrap();
    assert!(report.bracket_condition());
    assert_eq!(report.dimensions, vec![vec![3]]);

    let h = heisenberg(vec![-1, -1, -2]);
    let report =
        check_wide_integration_hypotheses(&h, &[vec![1]], &[consts(&[1, 0, 0])], &[vec![]])
            .unwrap();
    assert!(!report.bracket_condition());
    assert_eq!(report.bracket_failures[0].component, 2);
    assert_eq!(filtration_levels(&h), vec![vec![0, 1], vec![0, 1, 2]]);
}

#[test]
fn wide_rank_condition_at_points() {
    let base = WeightedChart::from_pairs(&[("x", 0)]).unwrap();
    let tangent = AlgebroidData::tangent(&base).unwrap();
    let rescaled = tangent.reweighted(vec![-1]).unwrap();
    let b = vec![vec![p("x")]];
    let report = check_wide_integration_hypotheses(
        &rescaled,
        &[vec![]],
        &b,
        &[vec![int(0)], vec![int(1)]],
    )
    .unwrap();
    assert_eq!(report.dimensions, vec![vec![0, 1]]);
    assert!(!report.constant_rank_condition());
}

#[test]
fn isotropy_of_graded_tangent() {
    let gr = graded_normal_algebroid(&AlgebroidData::tangent(&plane13()).unwrap()).unwrap();
    assert!(isotropy_algebra(&gr, &[int(0), int(0)]).is_err());
    let g = isotropy_algebra(&graded_normal_algebroid(&sl2(vec![-1, -1, -2])).unwrap(), &[])
        .unwrap();
    assert_eq!(lower_central_series(&g).unwrap().last(), Some(&0));
}
