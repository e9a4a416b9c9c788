use hornkit::lattice::{int, rat};
use hornkit::{
    build_polygon, check_constructive, classify, collect_polynomials, detect_resonance, holonomic_rank, is_solution,
    persistent_dim, persistent_solutions, HornError, HornSystem, PolygonKind,
};

fn zonotope() -> HornSystem {
    let rows = [(1, 2), (-1, -2), (-1, 1), (1, -1), (-3, -2), (3, 2), (2, -1), (-2, 1)];
    let params = [3, -5, -2, 1, -2, -1, -1, -1].into_iter().map(int).collect();
    HornSystem::from_pairs(&rows, params).unwrap()
}

#[test]
fn zonotope_end_to_end() {
    let s = zonotope();
    assert_eq!(classify(&build_polygon(&s).unwrap()).kind, PolygonKind::Zonotope);
    assert_eq!(holonomic_rank(&s).unwrap(), 31);
    assert_eq!(persistent_solutions(&s).len() as i64, persistent_dim(&s).unwrap());
    let basis = collect_polynomials(&s, 24).unwrap();
    assert_eq!(basis.basis.len(), 31);
    assert!(basis.basis.iter().all(|f| is_solution(f, &s).unwrap()));
    assert!(check_constructive(&s, 24).unwrap().rank_attained);
}

#[test]
fn generic_parameters_leave_only_persistent_polynomials() {
    let params = vec![rat(1, 2), rat(-1, 3), rat(1, 5), rat(2, 7), rat(-3, 11), rat(5, 13), rat(1, 17), rat(-2, 19)];
    let s = zonotope().with_params(params).unwrap();
    assert!(!detect_resonance(&s).is_resonant);
    let r = check_constructive(&s, 24).unwrap();
    assert_eq!(r.found, 6);
    assert!(!r.rank_attained);
}

#[test]
fn confluent_input_is_rejected() {
    let s = HornSystem::from_pairs(&[(3, 2), (-4, -3)], vec![int(0), int(0)]).unwrap();
    assert_eq!(holonomic_rank(&s), Err(HornError::Confluent));
}
