// Copyright 2026 The Quingo Toolchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quingo/quantum_state.hpp"

#include <cmath>

#include "quingo/error.hpp"

namespace quingo {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

QuantumState::QuantumState(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 0 || num_qubits > 12)
    throw Error(Errc::TooManyQubits, "state vector limited to 12 qubits, asked for " + std::to_string(num_qubits));
  amp_.assign(size_t{1} << n_, 0.0);
  amp_[0] = 1.0;
}

void QuantumState::set_zero() {
  std::fill(amp_.begin(), amp_.end(), Complex(0));
  amp_[0] = 1.0;
}

void QuantumState::set_random_product(uint64_t seed) {
  std::vector<Complex> a0(n_), a1(n_);
  for (int q = 0; q < n_; ++q) {
    uint64_t h1 = splitmix64(seed ^ splitmix64(0x51ed2701ULL + static_cast<uint64_t>(q)));
    uint64_t h2 = splitmix64(h1);
    double u1 = static_cast<double>(h1 >> 11) * 0x1.0p-53;
    double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
    // Haar-random single-qubit state.
    double theta = std::acos(1.0 - 2.0 * u1);
    double phi = 2.0 * M_PI * u2;
    a0[q] = std::cos(theta / 2);
    a1[q] = std::polar(std::sin(theta / 2), phi);
  }
  for (size_t i = 0; i < amp_.size(); ++i) {
    Complex v = 1.0;
    for (int q = 0; q < n_; ++q) v *= (i >> q) & 1 ? a1[q] : a0[q];
    amp_[i] = v;
  }
}

void QuantumState::apply(const Matrix& u, const std::vector<int>& targets, const std::vector<int>& controls) {
  const int k = static_cast<int>(targets.size());
  const size_t dim = size_t{1} << k;
  size_t tmask = 0, cmask = 0;
  for (int t : targets) tmask |= size_t{1} << t;
  for (int c : controls) cmask |= size_t{1} << c;
  std::vector<size_t> offs(dim);
  for (size_t s = 0; s < dim; ++s) {
    size_t o = 0;
    for (int j = 0; j < k; ++j)
      if ((s >> (k - 1 - j)) & 1) o |= size_t{1} << targets[j];
    offs[s] = o;
  }
  std::vector<Complex> in(dim);
  for (size_t base = 0; base < amp_.size(); ++base) {
    if (base & tmask) continue;
    if ((base & cmask) != cmask) continue;
    for (size_t s = 0; s < dim; ++s) in[s] = amp_[base | offs[s]];
    for (size_t r = 0; r < dim; ++r) {
      Complex acc = 0;
      for (size_t c = 0; c < dim; ++c) acc += u(static_cast<int>(r), static_cast<int>(c)) * in[c];
      amp_[base | offs[r]] = acc;
    }
  }
}

double QuantumState::prob_one(int q) const {
  double p = 0;
  for (size_t i = 0; i < amp_.size(); ++i)
    if ((i >> q) & 1) p += std::norm(amp_[i]);
  return p;
}

int QuantumState::measure(int q, double u) {
  double p1 = prob_one(q);
  int outcome = u < p1 ? 1 : 0;
  double keep = outcome ? p1 : 1.0 - p1;
  double scale = keep > 0 ? 1.0 / std::sqrt(keep) : 0.0;
  for (size_t i = 0; i < amp_.size(); ++i) {
    if (static_cast<int>((i >> q) & 1) == outcome) {
      amp_[i] *= scale;
    } else {
      amp_[i] = 0;
    }
  }
  return outcome;
}

double QuantumState::norm() const {
  double s = 0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

// ---- executor ----

QuantumExecutor::QuantumExecutor(int num_qubits, uint64_t seed, bool zero_init)
    : state_(num_qubits), rng_(seed), last_(static_cast<size_t>(num_qubits)) {
  if (zero_init) {
    state_.set_zero();
  } else {
    state_.set_random_product(seed);
  }
}

void QuantumExecutor::check_qubit(int q) const {
  if (q < 0 || q >= state_.num_qubits())
    throw Error(Errc::IllegalInstruction, "qubit q" + std::to_string(q) + " outside the " +
                                              std::to_string(state_.num_qubits()) + "-qubit register");
}

void QuantumExecutor::apply_op(const OpDef& op, const std::vector<int>& qubits, const std::vector<Value>& params,
                               const std::vector<int>& controls, bool inverted) {
  for (int q : qubits) check_qubit(q);
  for (int c : controls) {
    check_qubit(c);
    for (int q : qubits)
      if (q == c) throw Error(Errc::ModifierError, "qubit q" + std::to_string(c) + " is both control and target");
  }
  switch (op.semantics.kind) {
    case SemKind::Measure:
    case SemKind::Reset:
      if (!controls.empty() || inverted)
        throw Error(Errc::ModifierError, "'" + op.name + "' cannot be controlled or inverted");
      if (op.semantics.kind == SemKind::Measure) {
        measure(qubits.at(0));
      } else {
        reset(qubits.at(0));
      }
      return;
    case SemKind::Pulse:
      if (strict_pulse) throw Error(Errc::IllegalInstruction, "pulse '" + op.name + "' has no defined semantics");
      return;
    default: {
      Matrix u = semantics_unitary(op, params);
      if (inverted) u = u.adjoint();
      state_.apply(u, qubits, controls);
    }
  }
}

int QuantumExecutor::measure(int q) {
  check_qubit(q);
  int r = state_.measure(q, rng_.uniform());
  last_[q] = r;
  trace_.push_back({q, r});
  return r;
}

void QuantumExecutor::reset(int q) {
  check_qubit(q);
  int r = state_.measure(q, rng_.uniform());
  if (r) {
    Matrix x;
    x.dim = 2;
    x.a = {0.0, 1.0, 1.0, 0.0};
    state_.apply(x, {q});
  }
}

std::optional<int> QuantumExecutor::last_outcome(int q) const {
  if (q < 0 || q >= static_cast<int>(last_.size())) return std::nullopt;
  return last_[q];
}

}  // namespace quingo
