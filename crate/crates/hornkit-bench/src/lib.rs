//! Systems shared by the benchmarks.

use hornkit::lattice::{int, rat};
use hornkit::HornSystem;

pub fn zonotope() -> HornSystem {
    let rows = [(1, 2), (-1, -2), (-1, 1), (1, -1), (-3, -2), (3, 2), (2, -1), (-2, 1)];
    let params = [3, -5, -2, 1, -2, -1, -1, -1].into_iter().map(int).collect();
    HornSystem::from_pairs(&rows, params).unwrap()
}

pub fn triangle_sides() -> HornSystem {
    let rows = [(2, -1), (2, -1), (-2, 1), (-1, 3), (-1, 3), (1, -3), (1, 2), (-1, -2), (-1, -2)];
    let params = [-1, -6, 3, -2, -10, 5, 3, -1, -6].into_iter().map(int).collect();
    HornSystem::from_pairs(&rows, params).unwrap()
}

pub fn simplex() -> HornSystem {
    HornSystem::from_pairs(&[(1, 1), (1, -2), (-2, 1)], vec![rat(1, 3), rat(1, 5), int(0)]).unwrap()
}
