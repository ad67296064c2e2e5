use minorforge::graph::{named, Graph};
use minorforge::harness::{
    check_reimitation, solve_pis, structured_deletion_search, verify_equivalence, Outcome, ResidualChecker, Verdict,
};
use minorforge::reductions::{build_enhanced_framework, embed_solution, lift_solution, PisInstance};
use minorforge::{Error, Relation, SearchLimits};

/// Both permutations of a 2×2 grid are blocked.
fn no_instance() -> PisInstance {
    PisInstance::from_edges(2, [((0, 0), (1, 1)), ((0, 1), (1, 0))]).unwrap().normalize()
}

fn yes_instance() -> PisInstance {
    PisInstance::from_edges(2, [((0, 0), (1, 1))]).unwrap().normalize()
}

fn run(fam: &[Graph], inst: &PisInstance, rel: Relation) -> minorforge::harness::EquivalenceReport {
    verify_equivalence(fam, inst, rel, &SearchLimits::default()).unwrap()
}

#[test]
fn clique_family_on_a_yes_instance() {
    let report = run(&[named::complete(4)], &yes_instance(), Relation::Minor);
    assert_eq!(report.verdict, Verdict::Pass, "{}", report.to_text(false));
    assert_eq!(report.pis_answer, Some(vec![1, 0]));
    assert_eq!(report.forward, Some(Outcome::Pass));
    assert_eq!(report.round_trip, Some(Outcome::Pass));
    assert!(report.to_text(false).contains("verdict=pass"));
}

#[test]
fn star_family_on_a_no_instance() {
    let report = run(&[named::star(4)], &no_instance(), Relation::Minor);
    assert_eq!(report.verdict, Verdict::Pass, "{}", report.to_text(false));
    assert_eq!(report.pis_answer, None);
    assert_eq!(report.structured, Ok(None));
    assert_eq!(report.forward, None);
}

#[test]
fn cricket_family_on_yes_instances() {
    for rel in [Relation::Minor, Relation::TopologicalMinor] {
        let report = run(&[named::cricket()], &PisInstance::random_with_edges(2, 3, 5).unwrap(), rel);
        assert_eq!(report.verdict, Verdict::Pass, "{}", report.to_text(false));
    }
}

#[test]
fn clique_topological_no_instance() {
    let report = run(&[named::complete(4)], &no_instance(), Relation::TopologicalMinor);
    assert_eq!(report.verdict, Verdict::Pass, "{}", report.to_text(true));
    assert!(report.witness_checks.iter().all(|w| w.outcome == Outcome::Pass));
    assert_eq!(report.witness_checks.len(), report.m * 2 * 2);
}

#[test]
fn out_of_scope_family_is_an_error() {
    let err = verify_equivalence(&[named::chair()], &yes_instance(), Relation::Minor, &SearchLimits::default());
    assert!(matches!(err, Err(Error::NotInScope(_))));
}

#[test]
fn tight_limits_make_the_report_inconclusive() {
    let limits = SearchLimits { max_nodes: 1, ..SearchLimits::default() };
    let report = verify_equivalence(&[named::complete(4)], &yes_instance(), Relation::Minor, &limits).unwrap();
    assert_eq!(report.verdict, Verdict::Inconclusive, "{}", report.to_text(false));
    assert_eq!(Verdict::Inconclusive.exit_code(), 2);
}

#[test]
fn structured_solutions_lift_and_have_the_right_shape() {
    let limits = SearchLimits::default();
    for seed in 0..8 {
        let inst = PisInstance::random_with_edges(2, 4, seed).unwrap();
        let fw = build_enhanced_framework(&[named::path(5)], &inst, Relation::Minor).unwrap();
        let found = structured_deletion_search(&fw, &limits).unwrap();
        let answer = solve_pis(&fw.instance).unwrap();
        assert_eq!(found.is_some(), answer.is_some());
        if let Some(s) = found {
            assert_eq!(s.len(), fw.params.ell);
            let lifted = lift_solution(&fw, &s);
            assert!(lifted.consistent);
            assert!(fw.instance.is_solution(lifted.permutation.as_ref().unwrap()));
            assert!(check_reimitation(&fw, &s).ok);
            let mut checker = ResidualChecker::new(&fw, limits);
            assert_eq!(checker.offending_component(&s).unwrap(), None);
        }
    }
}

#[test]
fn reimitation_rejects_malformed_sets() {
    let fw = build_enhanced_framework(&[named::complete(4)], &yes_instance(), Relation::Minor).unwrap();
    let s = embed_solution(&fw, &[1, 0]).unwrap();
    assert!(check_reimitation(&fw, &s).ok);
    // the permutation keeps cells (1,2) and (2,1); clip one kept gadget
    let mut extra = s.clone();
    extra.insert(fw.a(0, 0, 1));
    assert!(!check_reimitation(&fw, &extra).ok);
    // restoring a deleted gadget leaves two survivors in its column
    let mut dropped = s.clone();
    for &v in fw.b_gadget(0, 0, 0) {
        dropped.remove(v);
    }
    let report = check_reimitation(&fw, &dropped);
    assert!(!report.ok);
    assert!(!report.problems.is_empty());
    // the residual of a too-small deletion still contains K4
    let mut checker = ResidualChecker::new(&fw, SearchLimits::default());
    assert!(checker.offending_component(&dropped).unwrap().is_some());
}
