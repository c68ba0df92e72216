#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "slicelab/jacobi.hpp"
#include "slicelab/polytope.hpp"
#include "slicelab/slice.hpp"
#include "slicelab/toda.hpp"

namespace slicelab::io {

using nlohmann::json;

/// {"n": n, "data": [n*n reals, row-major]}
json matrix_to_json(const Matrix& m);
/// Rejects missing fields, non-numeric or non-finite entries, and wrong lengths.
Matrix matrix_from_json(const json& j);

/// {"lambda": [...], "w": [...]}
json moser_to_json(const MoserCoordinates& mc);
MoserCoordinates moser_from_json(const json& j);

/// {"x": [...], "y": [...]}
json toda_state_to_json(const TodaState& st);
TodaState toda_state_from_json(const json& j);

/// {"lambda": [...], "vertices": [{"pi": [...], "point": [...]}], "affine_dim": d, "near_threshold": [[...]]}
json vertex_set_to_json(const VertexSet& vs);
VertexSet vertex_set_from_json(const json& j);

/// {"converged", "steps", "final_offdiag", "diagonal_order", "order", "broken_bonds"}
json diagnostics_to_json(const DiagnosticsReport& rep);

json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::string& path, const json& j);

/// Real printed with 17 significant digits.
std::string format_real(double v);

/// Header "t,a11,a12,...,ann".
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// Header "t,x1..xn,y1..yn,H".
void write_particle_csv(std::ostream& os, const ParticleTrajectory& traj);
/// Header "pi,c1,...,c{n-1}": vertices in the Helmert basis of the sum-zero hyperplane.
void write_projection_csv(std::ostream& os, const VertexSet& vs);

}  // namespace slicelab::io
