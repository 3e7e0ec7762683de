// Copyright 2026 The qacp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qacp/quantum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qacp/error.hpp"

namespace qacp {
namespace {

/// Index bookkeeping for a subsystem of a register list.
struct SubsystemLayout {
  std::size_t total = 1;
  std::size_t sub_dim = 1;
  std::vector<std::size_t> sub;     // full index -> subsystem index
  std::vector<std::size_t> base;    // full index with subsystem digits zeroed
  std::vector<std::size_t> offset;  // subsystem index -> full-index contribution
};

SubsystemLayout make_layout(const std::vector<Register>& registers,
                            const std::vector<std::size_t>& positions) {
  SubsystemLayout layout;
  const std::size_t n = registers.size();
  std::vector<std::size_t> strides(n, 1);
  for (std::size_t k = n; k-- > 0;) {
    strides[k] = layout.total;
    layout.total *= registers[k].dim;
  }
  std::vector<std::size_t> sub_strides(positions.size(), 1);
  for (std::size_t t = positions.size(); t-- > 0;) {
    sub_strides[t] = layout.sub_dim;
    layout.sub_dim *= registers[positions[t]].dim;
  }
  layout.sub.resize(layout.total);
  layout.base.resize(layout.total);
  for (std::size_t i = 0; i < layout.total; ++i) {
    std::size_t s = 0;
    std::size_t b = i;
    for (std::size_t t = 0; t < positions.size(); ++t) {
      const std::size_t p = positions[t];
      const std::size_t digit = (i / strides[p]) % registers[p].dim;
      s += digit * sub_strides[t];
      b -= digit * strides[p];
    }
    layout.sub[i] = s;
    layout.base[i] = b;
  }
  layout.offset.resize(layout.sub_dim);
  for (std::size_t s = 0; s < layout.sub_dim; ++s) {
    std::size_t off = 0;
    for (std::size_t t = 0; t < positions.size(); ++t) {
      const std::size_t p = positions[t];
      const std::size_t digit = (s / sub_strides[t]) % registers[p].dim;
      off += digit * strides[p];
    }
    layout.offset[s] = off;
  }
  return layout;
}

std::vector<std::size_t> resolve_positions(const std::vector<Register>& registers,
                                           const std::vector<std::string>& names) {
  std::vector<std::size_t> positions;
  for (const auto& name : names) {
    auto it = std::find_if(registers.begin(), registers.end(),
                           [&](const Register& r) { return r.name == name; });
    if (it == registers.end()) {
      throw Error(ErrorKind::RegisterMismatch, "unknown register '" + name + "'");
    }
    const auto p = static_cast<std::size_t>(it - registers.begin());
    if (std::find(positions.begin(), positions.end(), p) != positions.end()) {
      throw Error(ErrorKind::RegisterMismatch, "register '" + name + "' listed twice");
    }
    positions.push_back(p);
  }
  return positions;
}

long long round_to_grain(double x) {
  const long long v = std::llround(x / kKeyGrain);
  return v == 0 ? 0 : v;
}

template <typename F>
void for_each_rounded(const QuantumState& s, F&& f) {
  const Matrix& m = s.matrix();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      f(round_to_grain(m(i, j).real()), round_to_grain(m(i, j).imag()));
    }
  }
}

Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

std::size_t total_dimension(const std::vector<Register>& registers) {
  std::size_t d = 1;
  for (const auto& r : registers) d *= r.dim;
  return d;
}

QuantumState::QuantumState(std::vector<Register> registers, Matrix matrix)
    : registers_(std::move(registers)), matrix_(std::move(matrix)) {
  const std::size_t d = total_dimension(registers_);
  if (matrix_.rows() != matrix_.cols() || static_cast<std::size_t>(matrix_.rows()) != d) {
    throw Error(ErrorKind::RegisterMismatch,
                "state matrix is " + std::to_string(matrix_.rows()) + "x" +
                    std::to_string(matrix_.cols()) + " but registers span dimension " +
                    std::to_string(d));
  }
}

QuantumState QuantumState::basis(std::vector<Register> registers,
                                 const std::vector<std::size_t>& digits) {
  if (digits.size() != registers.size()) {
    throw Error(ErrorKind::RegisterMismatch, "one basis digit per register required");
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < registers.size(); ++k) {
    if (digits[k] >= registers[k].dim) {
      throw Error(ErrorKind::RegisterMismatch,
                  "basis digit out of range for register '" + registers[k].name + "'");
    }
    index = index * registers[k].dim + digits[k];
  }
  const auto d = static_cast<Eigen::Index>(total_dimension(registers));
  Matrix m = Matrix::Zero(d, d);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return QuantumState(std::move(registers), std::move(m));
}

std::optional<std::size_t> QuantumState::register_index(const std::string& name) const {
  for (std::size_t k = 0; k < registers_.size(); ++k) {
    if (registers_[k].name == name) return k;
  }
  return std::nullopt;
}

std::vector<std::string> QuantumState::public_registers() const {
  std::vector<std::string> out;
  for (const auto& r : registers_) {
    if (r.is_public) out.push_back(r.name);
  }
  return out;
}

StateReport check_state(const QuantumState& state) {
  StateReport report;
  const Matrix& m = state.matrix();
  report.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
  report.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  const Matrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();
  return report;
}

KrausReport validate_kraus(const KrausSet& op) {
  KrausReport report;
  if (op.operators.empty()) {
    report.message = "empty Kraus set";
    report.declared_mismatch = op.trace_preserving;
    return report;
  }
  const Eigen::Index n = op.operators.front().rows();
  for (const auto& k : op.operators) {
    if (k.rows() != k.cols() || k.rows() != n) {
      report.message = "Kraus operators must be square and of equal dimension";
      report.declared_mismatch = op.trace_preserving;
      return report;
    }
  }
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& k : op.operators) sum += k.adjoint() * k;
  report.deviation = (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  const Matrix herm = 0.5 * (sum + sum.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  report.max_eigenvalue = solver.eigenvalues().maxCoeff();
  if (report.deviation <= kPhysicalTolerance) {
    report.classification = KrausClass::TracePreserving;
  } else if (report.max_eigenvalue <= 1.0 + kPhysicalTolerance) {
    report.classification = KrausClass::TraceNonIncreasing;
  } else {
    report.classification = KrausClass::Invalid;
    report.message = "sum of K^dagger K exceeds the identity";
  }
  report.declared_mismatch =
      op.trace_preserving && report.classification != KrausClass::TracePreserving;
  if (report.declared_mismatch && report.message.empty()) {
    report.message = "declared trace-preserving but sum of K^dagger K differs from I";
  }
  return report;
}

QuantumState apply_operation(const QuantumState& state, const KrausSet& op) {
  const auto positions = resolve_positions(state.registers(), op.acts_on);
  const SubsystemLayout layout = make_layout(state.registers(), positions);
  const auto sub_dim = static_cast<Eigen::Index>(layout.sub_dim);
  for (const auto& k : op.operators) {
    if (k.rows() != sub_dim || k.cols() != sub_dim) {
      throw Error(ErrorKind::RegisterMismatch,
                  "Kraus operator dimension " + std::to_string(k.rows()) +
                      " does not match registers of dimension " + std::to_string(sub_dim));
    }
  }
  const Matrix& rho = state.matrix();
  const auto d = static_cast<Eigen::Index>(layout.total);
  Matrix out = Matrix::Zero(d, d);
  Matrix left(d, d);
  for (const auto& k : op.operators) {
    // left = K_emb * rho
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) {
        const auto si = static_cast<Eigen::Index>(layout.sub[i]);
        const std::size_t bi = layout.base[i];
        Complex acc = 0.0;
        for (Eigen::Index s = 0; s < sub_dim; ++s) {
          const Complex kv = k(si, s);
          if (kv == Complex(0.0, 0.0)) continue;
          acc += kv * rho(static_cast<Eigen::Index>(bi + layout.offset[s]), j);
        }
        left(i, j) = acc;
      }
    }
    // out += left * K_emb^dagger
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto sj = static_cast<Eigen::Index>(layout.sub[j]);
      const std::size_t bj = layout.base[j];
      for (Eigen::Index s = 0; s < sub_dim; ++s) {
        const Complex kc = std::conj(k(sj, s));
        if (kc == Complex(0.0, 0.0)) continue;
        const auto col = static_cast<Eigen::Index>(bj + layout.offset[s]);
        out.col(j) += kc * left.col(col);
      }
    }
  }
  const double trace_dev = std::abs(out.trace() - Complex(1.0, 0.0));
  if (trace_dev > kTraceLossTolerance) {
    throw Error(ErrorKind::NonPhysicalResult,
                "output trace deviates from 1 by " + std::to_string(trace_dev));
  }
  return QuantumState(state.registers(), std::move(out));
}

QuantumState apply_operation(const QuantumState& state, const QuantumOperation& op) {
  QuantumState cur = state;
  for (const auto& stage : op.stages) cur = apply_operation(cur, stage);
  return cur;
}

double trace_distance(const QuantumState& a, const QuantumState& b) {
  if (a.registers() != b.registers()) {
    throw Error(ErrorKind::RegisterMismatch, "trace distance needs identical register lists");
  }
  const Matrix diff = a.matrix() - b.matrix();
  const Matrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

QuantumState partial_trace(const QuantumState& state, const std::vector<std::string>& keep) {
  auto positions = resolve_positions(state.registers(), keep);
  std::sort(positions.begin(), positions.end());
  std::vector<Register> kept;
  for (auto p : positions) kept.push_back(state.registers()[p]);
  if (positions.size() == state.registers().size()) return QuantumState(kept, state.matrix());

  std::vector<std::size_t> traced;
  for (std::size_t p = 0; p < state.registers().size(); ++p) {
    if (!std::binary_search(positions.begin(), positions.end(), p)) traced.push_back(p);
  }
  const SubsystemLayout keep_layout = make_layout(state.registers(), positions);
  const SubsystemLayout trace_layout = make_layout(state.registers(), traced);
  const auto dk = static_cast<Eigen::Index>(keep_layout.sub_dim);
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = state.matrix();
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < trace_layout.sub_dim; ++r) {
        const auto row = static_cast<Eigen::Index>(keep_layout.offset[a] + trace_layout.offset[r]);
        const auto col = static_cast<Eigen::Index>(keep_layout.offset[b] + trace_layout.offset[r]);
        acc += m(row, col);
      }
      out(a, b) = acc;
    }
  }
  return QuantumState(std::move(kept), std::move(out));
}

QuantumState public_part(const QuantumState& state) {
  return partial_trace(state, state.public_registers());
}

std::string state_key(const QuantumState& state) {
  std::string key;
  key.reserve(16 + state.dimension() * state.dimension() * 16);
  auto put = [&key](long long v) {
    for (int b = 0; b < 8; ++b) key.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
  };
  put(static_cast<long long>(state.dimension()));
  for_each_rounded(state, [&](long long re, long long im) {
    put(re);
    put(im);
  });
  return key;
}

StateDigest state_digest(const QuantumState& state) {
  std::uint64_t h1 = 1469598103934665603ULL;
  std::uint64_t h2 = 0x84222325cbf29ce4ULL;
  auto feed = [&](long long v) {
    const auto u = static_cast<std::uint64_t>(v);
    h1 = (h1 ^ u) * 1099511628211ULL;
    h2 = (h2 ^ (u * 0x9e3779b97f4a7c15ULL)) * 0xff51afd7ed558ccdULL;
    h2 ^= h2 >> 29;
  };
  feed(static_cast<long long>(state.dimension()));
  for_each_rounded(state, [&](long long re, long long im) {
    feed(re);
    feed(im);
  });
  return StateDigest{h1, h2};
}

bool same_key(const QuantumState& a, const QuantumState& b) {
  if (a.dimension() != b.dimension()) return false;
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (round_to_grain(x(i, j).real()) != round_to_grain(y(i, j).real()) ||
          round_to_grain(x(i, j).imag()) != round_to_grain(y(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

Matrix embed(const Matrix& op, const std::vector<std::string>& acts_on,
             const std::vector<Register>& registers) {
  const auto positions = resolve_positions(registers, acts_on);
  const SubsystemLayout layout = make_layout(registers, positions);
  if (op.rows() != static_cast<Eigen::Index>(layout.sub_dim) || op.cols() != op.rows()) {
    throw Error(ErrorKind::RegisterMismatch, "operator dimension does not match registers");
  }
  const auto d = static_cast<Eigen::Index>(layout.total);
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (std::size_t s = 0; s < layout.sub_dim; ++s) {
      const auto j = static_cast<Eigen::Index>(layout.base[i] + layout.offset[s]);
      out(i, j) = op(static_cast<Eigen::Index>(layout.sub[i]), static_cast<Eigen::Index>(s));
    }
  }
  return out;
}

KrausSet compose(const KrausSet& first, const KrausSet& second,
                 const std::vector<Register>& registers) {
  KrausSet out;
  out.acts_on = first.acts_on;
  for (const auto& r : second.acts_on) {
    if (std::find(out.acts_on.begin(), out.acts_on.end(), r) == out.acts_on.end()) {
      out.acts_on.push_back(r);
    }
  }
  std::vector<Register> local;
  for (const auto& name : out.acts_on) {
    auto it = std::find_if(registers.begin(), registers.end(),
                           [&](const Register& r) { return r.name == name; });
    if (it == registers.end()) throw Error(ErrorKind::RegisterMismatch, "unknown register " + name);
    local.push_back(*it);
  }
  for (const auto& b : second.operators) {
    const Matrix be = embed(b, second.acts_on, local);
    for (const auto& a : first.operators) out.operators.push_back(be * embed(a, first.acts_on, local));
  }
  out.trace_preserving = first.trace_preserving && second.trace_preserving;
  return out;
}

std::vector<std::string> builtin_names() {
  return {"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "CZ", "CH", "SWAP",
          "measure", "reset", "randomize"};
}

std::optional<KrausSet> builtin_kraus(const std::string& name, std::size_t dimension) {
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  const auto d = static_cast<Eigen::Index>(dimension);
  KrausSet out;
  out.origin = name;
  auto single = [&](Matrix m) -> std::optional<KrausSet> {
    if (m.rows() != d) return std::nullopt;
    out.operators.push_back(std::move(m));
    return out;
  };
  if (name == "I") return single(Matrix::Identity(2, 2));
  if (name == "X") return single(mat({{0, 1}, {1, 0}}));
  if (name == "Y") return single(mat({{0, -i}, {i, 0}}));
  if (name == "Z") return single(mat({{1, 0}, {0, -1}}));
  if (name == "H") return single(mat({{r, r}, {r, -r}}));
  if (name == "S") return single(mat({{1, 0}, {0, i}}));
  if (name == "T") return single(mat({{1, 0}, {0, std::polar(1.0, M_PI / 4)}}));
  if (name == "CNOT") {
    return single(mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
  }
  if (name == "CZ") {
    return single(mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}));
  }
  if (name == "CH") {
    return single(mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, r, r}, {0, 0, r, -r}}));
  }
  if (name == "SWAP") {
    return single(mat({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
  }
  if (name == "measure") {
    for (Eigen::Index k = 0; k < d; ++k) {
      Matrix p = Matrix::Zero(d, d);
      p(k, k) = 1.0;
      out.operators.push_back(std::move(p));
    }
    return out;
  }
  if (name == "reset") {
    for (Eigen::Index k = 0; k < d; ++k) {
      Matrix p = Matrix::Zero(d, d);
      p(0, k) = 1.0;
      out.operators.push_back(std::move(p));
    }
    return out;
  }
  if (name == "randomize") {
    const double w = 1.0 / std::sqrt(static_cast<double>(dimension));
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        Matrix p = Matrix::Zero(d, d);
        p(a, b) = w;
        out.operators.push_back(std::move(p));
      }
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace qacp
