#pragma once

#include <array>

#include "purikit/map.hpp"

namespace purikit {

// Sixteen-dimensional states live in the computational basis with qubit
// order (A1, B1, A2, B2), qubit 0 most significant.

Mat4 kron(const Mat2& a, const Mat2& b);
Mat16 kron(const Mat4& a, const Mat4& b);

// perm[i] = new position of qubit i.
Mat16 permute_qubits(const Mat16& s, const std::array<int, 4>& perm);

// Reduced 4x4 matrix over qubit positions (keep_a, keep_b), keep_a < keep_b.
Mat4 partial_trace(const Mat16& s, int keep_a, int keep_b);

// Rank-two projector onto span{|Psi->, |Phi->} of one qubit pair,
// computational basis.
const Mat4& pair_projector();

// pair_projector on (A1, A2) tensor pair_projector on (B1, B2), expressed
// in the (A1, B1, A2, B2) qubit order.
const Mat16& protocol_projector();

// Local correction V_0 = diag(i, 1), V_1 = V_0 X; branch (j, k) applies
// V_j on one side and V_{k+1 mod 2} on the other.
Mat2 correction_gate(int j);

struct OracleResult {
  Mat4 bell_matrix;  // raw Bell-basis output; off-pattern entries carry rounding noise
  double success_probability;
};

// Full 16-dimensional simulation of one purification round: project both
// pairs, measure one pair in the computational basis, apply the
// branch-conditioned corrections to the kept pair, sum the branches.
// measure_first_pair selects (A1, B1) as the measured pair instead of
// (A2, B2).
OracleResult run_protocol_raw(const BellDensityMatrix& rho,
                              bool measure_first_pair = false);

// run_protocol_raw with the X pattern enforced: off-pattern residues above
// 1e-12 raise ValidationError, below that they are zeroed exactly.
MapOutcome run_protocol(const BellDensityMatrix& rho,
                        bool measure_first_pair = false);

}  // namespace purikit
