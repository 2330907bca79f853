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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "quingo/platform_config.hpp"

namespace quingo {

uint64_t splitmix64(uint64_t x);

/// Uniform doubles in [0, 1) from mt19937_64, 53 bits per draw.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(splitmix64(seed)) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

/// State vector over n qubits; qubit q is bit q of the basis index.
class QuantumState {
 public:
  explicit QuantumState(int num_qubits);

  int num_qubits() const { return n_; }
  const std::vector<Complex>& amplitudes() const { return amp_; }
  std::vector<Complex>& amplitudes() { return amp_; }

  void set_zero();
  /// Product state whose per-qubit factor depends only on (seed, qubit).
  void set_random_product(uint64_t seed);

  /// Applies `u` to `targets` (targets[0] is the most significant bit of
  /// the matrix index) when every control qubit is 1.
  void apply(const Matrix& u, const std::vector<int>& targets, const std::vector<int>& controls = {});

  double prob_one(int q) const;
  /// Samples with `u` in [0,1): outcome 1 iff u < P(1). Collapses.
  int measure(int q, double u);
  double norm() const;

 private:
  int n_;
  std::vector<Complex> amp_;
};

struct MeasureEvent {
  int qubit = 0;
  int outcome = 0;
  bool operator==(const MeasureEvent&) const = default;
};

/// Quantum side shared by the VM and the reference interpreter, so both
/// draw random numbers identically.
class QuantumExecutor {
 public:
  QuantumExecutor(int num_qubits, uint64_t seed, bool zero_init);

  /// Unitary operation; pulses are identity unless `strict_pulse`.
  void apply_op(const OpDef& op, const std::vector<int>& qubits, const std::vector<Value>& params,
                const std::vector<int>& controls, bool inverted);
  int measure(int q);
  /// Stochastic reset: sample, collapse, flip to |0>.
  void reset(int q);

  std::optional<int> last_outcome(int q) const;
  const std::vector<MeasureEvent>& trace() const { return trace_; }
  QuantumState& state() { return state_; }
  const QuantumState& state() const { return state_; }
  bool strict_pulse = false;

 private:
  void check_qubit(int q) const;

  QuantumState state_;
  Rng rng_;
  std::vector<std::optional<int>> last_;
  std::vector<MeasureEvent> trace_;
};

}  // namespace quingo
