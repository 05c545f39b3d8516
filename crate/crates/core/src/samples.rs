//! Small standard inputs: spheres, circles with free and trivial actions,
//! and the twisted circle.

use crate::complexes::{LocalSystem, OneCocycle, SimplicialComplex};
use crate::equivariant::{EquivariantData, EquivariantLocalSystem, FiniteGroup, SimplicialAction};
use crate::exactalg::{rat, ExactRational};

/// `Z/2` acting trivially on a point; with `sign` the fiber map is `-1`.
pub fn z2_point(sign: bool) -> EquivariantData {
    let k = SimplicialComplex::point();
    let g = FiniteGroup::cyclic(2);
    let action = SimplicialAction::trivial(&g, 1);
    let chi = [rat(1), rat(if sign { -1 } else { 1 })];
    let system = EquivariantLocalSystem::scalar_action(LocalSystem::trivial(&k, 1), &chi, 1);
    EquivariantData::new(k.clone(), g, action, system, OneCocycle::zero(&k)).expect("valid sample")
}

/// Two points swapped by `Z/2`.
pub fn swapped_points() -> EquivariantData {
    let k = SimplicialComplex::from_facets(2, vec![]).expect("two points");
    let g = FiniteGroup::cyclic(2);
    let action = SimplicialAction::new(vec![vec![0, 1], vec![1, 0]]);
    let system = EquivariantLocalSystem::trivial_action(LocalSystem::trivial(&k, 1), &g, 2);
    EquivariantData::new(k.clone(), g, action, system, OneCocycle::zero(&k)).expect("valid sample")
}

/// The 4-vertex circle with the antipodal `Z/2` action `v -> v + 2`.
/// `mobius` makes the generator act by `-1` on the fiber; `twisted` uses the
/// invariant cocycle `θ[01] = θ[23] = 1`, `θ[12] = θ[03] = 0` (loop sum 2).
pub fn antipodal_circle(mobius: bool, twisted: bool) -> EquivariantData {
    let k = SimplicialComplex::cycle(4);
    let g = FiniteGroup::cyclic(2);
    let action = SimplicialAction::new(vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]]);
    let chi = [rat(1), rat(if mobius { -1 } else { 1 })];
    let system = EquivariantLocalSystem::scalar_action(LocalSystem::trivial(&k, 1), &chi, 4);
    let theta = if twisted {
        OneCocycle::from_edges(&k, &[(0, 1, rat(1)), (2, 3, rat(1))]).expect("edges exist")
    } else {
        OneCocycle::zero(&k)
    };
    EquivariantData::new(k, g, action, system, theta).expect("valid sample")
}

/// The 6-vertex circle with `Z/3` rotating by two steps, and `θ = value`
/// along each edge `i -> i + 1`.
pub fn hexagon_rotation(value: ExactRational) -> EquivariantData {
    let k = SimplicialComplex::cycle(6);
    let g = FiniteGroup::cyclic(3);
    let perms = (0..3).map(|j| (0..6).map(|v| (v + 2 * j) % 6).collect()).collect();
    let action = SimplicialAction::new(perms);
    let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6, value.clone())).collect();
    let theta = OneCocycle::from_edges(&k, &edges).expect("edges exist");
    let system = EquivariantLocalSystem::trivial_action(LocalSystem::trivial(&k, 1), &g, 6);
    EquivariantData::new(k, g, action, system, theta).expect("valid sample")
}

/// The 3-vertex circle, trivial group, with `θ` summing to `loop_sum`
/// around the loop `0 -> 1 -> 2 -> 0`.
pub fn triangle_circle(loop_sum: i64) -> EquivariantData {
    let k = SimplicialComplex::cycle(3);
    let g = FiniteGroup::trivial();
    let action = SimplicialAction::trivial(&g, 3);
    let theta = OneCocycle::from_edges(&k, &[(0, 1, rat(loop_sum))]).expect("edge exists");
    let system = EquivariantLocalSystem::trivial_action(LocalSystem::trivial(&k, 1), &g, 3);
    EquivariantData::new(k, g, action, system, theta).expect("valid sample")
}

/// The 2-sphere as the boundary of a tetrahedron with `Z/2` swapping two
/// pairs of vertices, `(01)(23)`. Not free: no vertex is fixed, but the
/// edges `[01]` and `[23]` are flipped, so the action is not admissible.
pub fn flipped_tetrahedron() -> (SimplicialComplex, FiniteGroup, SimplicialAction) {
    let k = SimplicialComplex::sphere(2);
    let g = FiniteGroup::cyclic(2);
    let action = SimplicialAction::new(vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]]);
    (k, g, action)
}

/// All equivariant samples with a short label.
pub fn equivariant_corpus() -> Vec<(&'static str, EquivariantData)> {
    vec![
        ("z2-point", z2_point(false)),
        ("z2-point-sign", z2_point(true)),
        ("swapped-points", swapped_points()),
        ("antipodal-circle", antipodal_circle(false, false)),
        ("antipodal-circle-mobius", antipodal_circle(true, false)),
        ("antipodal-circle-twisted", antipodal_circle(false, true)),
        ("antipodal-circle-mobius-twisted", antipodal_circle(true, true)),
        ("hexagon-rotation", hexagon_rotation(rat(1))),
        ("triangle-circle", triangle_circle(3)),
    ]
}
