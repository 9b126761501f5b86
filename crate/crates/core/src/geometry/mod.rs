//! Extremal geometry: points, lines, generalized polygons, Moufang sets and root groups.

mod incidence;
mod orbit;
mod pairs;

pub use incidence::{
    points_on, polygon_stats, GeometryExport, IncidenceGeometry, IncidenceGraph, PolygonStats, Vertex,
};
pub use orbit::{
    basic_generators, enumerate_orbit, lines_from_inner_pairs, lines_from_strong_pairs,
    strongly_commuting_adjacency, Orbit,
};
pub use pairs::{classify_pair, strongly_commuting, PairClass};

mod rootgroups;
mod triangle;

pub use rootgroups::{verify_root_group, verify_root_groups, RootGroup, RootGroupFamily, VertexAction};
pub use triangle::{
    build_triangle, check_distance_dictionary, check_projective_plane, check_unique_common_neighbour,
    dual_double_extract, projective_plane_oracle, triangle_distance_dictionary, triangle_root_groups,
    ProjectivePlane, TriangleGeometry,
};

mod hexagon;

pub use hexagon::{
    build_hexagon, check_algebra_inner_ideals, check_commutator_relations, check_cycle_transitivity,
    check_extremal_set, check_lines_through_splus, check_maximality, check_one_dim_root_groups,
    check_parametrization, check_psi_independence, check_u1_relations, decompose_e_minus, hexagon_root_groups,
    HexagonContext, HexagonOptions, LineStrategy, RelationsOptions,
};

mod moufang;

pub use moufang::{jordan_moufang_set, parametrized_ideal, skew_moufang_set, JordanMoufangSet};
