#include "purikit/oracle.hpp"

#include <cmath>

namespace purikit {

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

Mat16 kron(const Mat4& a, const Mat4& b) {
  Mat16 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cxd aij = a(i, j);
      if (aij == cxd{}) continue;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) r(4 * i + k, 4 * j + l) = aij * b(k, l);
    }
  return r;
}

namespace {

// Index bit for qubit q (qubit 0 most significant of four).
inline int bit_of(int index, int q) { return (index >> (3 - q)) & 1; }

}  // namespace

Mat16 permute_qubits(const Mat16& s, const std::array<int, 4>& perm) {
  std::array<int, 16> map{};
  for (int idx = 0; idx < 16; ++idx) {
    int out = 0;
    for (int q = 0; q < 4; ++q) out |= bit_of(idx, q) << (3 - perm[q]);
    map[idx] = out;
  }
  Mat16 r;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) r(map[i], map[j]) = s(i, j);
  return r;
}

Mat4 partial_trace(const Mat16& s, int keep_a, int keep_b) {
  int traced[2], t = 0;
  for (int q = 0; q < 4; ++q)
    if (q != keep_a && q != keep_b) traced[t++] = q;

  const auto compose = [&](int kept, int rest) {
    int idx = 0;
    idx |= ((kept >> 1) & 1) << (3 - keep_a);
    idx |= (kept & 1) << (3 - keep_b);
    idx |= ((rest >> 1) & 1) << (3 - traced[0]);
    idx |= (rest & 1) << (3 - traced[1]);
    return idx;
  };

  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cxd sum = 0;
      for (int rest = 0; rest < 4; ++rest)
        sum += s(compose(i, rest), compose(j, rest));
      r(i, j) = sum;
    }
  return r;
}

const Mat4& pair_projector() {
  // |Psi-><Psi-| + |Phi-><Phi-| = 1/2 [[1,0,0,-1],[0,1,-1,0],[0,-1,1,0],[-1,0,0,1]]
  static const Mat4 m = [] {
    Mat4 p;
    p(0, 0) = 0.5;
    p(0, 3) = -0.5;
    p(1, 1) = 0.5;
    p(1, 2) = -0.5;
    p(2, 1) = -0.5;
    p(2, 2) = 0.5;
    p(3, 0) = -0.5;
    p(3, 3) = 0.5;
    return p;
  }();
  return m;
}

const Mat16& protocol_projector() {
  static const Mat16 m = [] {
    // kron acts on (A1, A2, B1, B2); bring A2 <-> B1 to reach (A1, B1, A2, B2).
    const Mat16 raw = kron(pair_projector(), pair_projector());
    return permute_qubits(raw, {0, 2, 1, 3});
  }();
  return m;
}

Mat2 correction_gate(int j) {
  Mat2 v;
  if ((j & 1) == 0) {
    v(0, 0) = cxd{0.0, 1.0};
    v(1, 1) = 1.0;
  } else {
    v(0, 1) = cxd{0.0, 1.0};
    v(1, 0) = 1.0;
  }
  return v;
}

OracleResult run_protocol_raw(const BellDensityMatrix& rho,
                              bool measure_first_pair) {
  const Mat4 rho_comp = bell_to_computational(rho.matrix());
  const Mat16 joint = kron(rho_comp, rho_comp);  // (A1, B1) x (A2, B2)
  const Mat16& proj = protocol_projector();

  const double p = (proj.adjoint() * (proj * joint)).trace().real();
  if (p <= kDegenerateTol) throw DegenerateNormalization(p, -1);
  const Mat16 post = proj * joint * proj.adjoint();

  const int keep_a = measure_first_pair ? 2 : 0;
  const int keep_b = measure_first_pair ? 3 : 1;

  Mat4 out;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      Mat4 sel;  // |jk><jk| on the measured pair
      sel(2 * j + k, 2 * j + k) = 1.0;
      const Mat16 measured = measure_first_pair
                                 ? kron(sel, Mat4::identity())
                                 : kron(Mat4::identity(), sel);
      const Mat4 branch = partial_trace(measured * post, keep_a, keep_b);
      const Mat4 g = kron(correction_gate(j), correction_gate(k + 1));
      out = out + g * branch * g.adjoint();
    }

  out *= 1.0 / out.trace().real();
  return OracleResult{computational_to_bell(out), p};
}

MapOutcome run_protocol(const BellDensityMatrix& rho, bool measure_first_pair) {
  const OracleResult raw = run_protocol_raw(rho, measure_first_pair);
  const Mat4 h = raw.bell_matrix.hermitized();

  const int off[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  for (const auto& ij : off)
    if (std::abs(h(ij[0], ij[1])) > kXPatternTol)
      throw ValidationError("protocol output violates the X pattern");

  const XState x = XState::validated(
      h(0, 0).real(), h(1, 1).real(), h(2, 2).real(), h(3, 3).real(),
      h(0, 3), h(1, 2));
  return MapOutcome{x, x.embed(), 2.0 * raw.success_probability,
                    raw.success_probability};
}

}  // namespace purikit
