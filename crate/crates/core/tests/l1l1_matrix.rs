use heckeprod::l1l1::{
    build_c0, build_t0, c0_col, c0_row, e_lower_c, e_upper_c, hilbert, t21, verify_comparison,
    verify_weights_grading_nilpotence, Status,
};
use heckeprod::matrix_alg::{tensor_over, Elem, Entry, GradedFreeComponent, LeftModule, MatError};
use heckeprod::poly::pair;
use heckeprod::{with_mutation, Mutation};

fn w() -> heckeprod::Polynomial {
    pair::omega()
}

#[test]
fn graded_dimensions_of_components() {
    assert_eq!(hilbert("Q2", 6).unwrap(), vec![(0, 1), (2, 3), (4, 5), (6, 7)]);
    assert_eq!(hilbert("R", 2).unwrap(), vec![(0, 1), (2, 3)]);
    // C0 is P2 + wP2 + P2 + Q1 degree by degree.
    let c0 = hilbert("C0", 4).unwrap();
    assert_eq!(c0, vec![(0, 3), (2, 8), (4, 13)]);
    // The shifted piece of T0 starts in degree 2.
    assert_eq!(hilbert("T0", 2).unwrap(), vec![(0, 3), (2, 8)]);
    assert!(hilbert("q1", 4).is_err());
}

#[test]
fn c0_products() {
    let c0 = build_c0();
    let one = c0.one();
    let x = c0.single((1, 2), vec![w() * pair::y1()]);
    assert_eq!(c0.mat_mul(&one, &x).unwrap(), x);
    assert_eq!(c0.mat_mul(&x, &one).unwrap(), x);
    // 21 times 12 lands in Q1 as (0, ab).
    let lower = c0.single((2, 1), vec![pair::y2()]);
    let upper = c0.single((1, 2), vec![w()]);
    let prod = c0.mat_mul(&lower, &upper).unwrap();
    assert_eq!(prod.entry((2, 2)), &vec![pair::zero(), w() * pair::y2()]);
    assert!(GradedFreeComponent::is_zero(prod.entry((1, 1))));
    assert!(c0.check_associativity(4).is_ok());
    assert!(build_t0().check_associativity(4).is_ok());
}

#[test]
fn divided_endomorphism_of_q2() {
    let v = vec![pair::y1() * pair::y1(), pair::y2() * pair::y2()];
    // (y1^2 - y2^2) / (y1 - y2) = y1 + y2.
    let s = pair::y1() + pair::y2();
    assert_eq!(t21(&v).unwrap(), vec![s.clone(), s]);
    assert!(t21(&vec![pair::y1(), pair::zero()]).is_err());
}

#[test]
fn tensor_with_rows_and_columns_recovers_entries() {
    let c0 = build_c0();
    for i in 1..=2 {
        for j in 1..=2 {
            let t = tensor_over(&c0, &c0_row(i), &c0_col(j), 6).unwrap();
            let entry = c0.comp((i, j));
            let expected: Vec<(u32, usize)> = (0..=6).step_by(2).map(|d| (d, entry.dim(d))).collect();
            assert_eq!(t.graded_dims(), expected, "row {i} with column {j}");
        }
    }
}

#[test]
fn tensor_with_zero_module_vanishes() {
    fn act(_: Entry, _: &Elem, m: &Elem) -> Elem {
        m.clone()
    }
    let zero = LeftModule {
        name: "0",
        comps: [GradedFreeComponent::zero_module(), GradedFreeComponent::zero_module()],
        act,
    };
    let t = tensor_over(&build_c0(), &e_upper_c(), &zero, 4).unwrap();
    assert!(t.graded_dims().iter().all(|&(_, d)| d == 0));
    assert_eq!(tensor_over(&build_c0(), &e_upper_c(), &e_lower_c(), 3).unwrap_err(), MatError::OddBound(3));
}

#[test]
fn comparison_passes_at_moderate_degree() {
    for bound in [0, 8] {
        for r in verify_comparison(bound) {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
    }
}

#[test]
fn forgetting_the_q2_swap_is_detected() {
    let reports = with_mutation(Some(Mutation::FlipQ2Action), || verify_comparison(6));
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.check.as_str()).collect();
    assert!(failed.contains(&"hecke-relation-q2"), "{failed:?}");
}

#[test]
fn weights_grading_and_nilpotence() {
    let reports = verify_weights_grading_nilpotence(8);
    let names: Vec<&str> = reports.iter().map(|r| r.check.as_str()).collect();
    for expected in ["weight-idempotents", "weight-blocks", "grading", "nilpotence"] {
        assert!(names.contains(&expected), "{names:?}");
    }
    assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
}
