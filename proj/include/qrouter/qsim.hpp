// Copyright 2026 The qrouter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qrouter {

using Amplitude = std::complex<double>;

/// Opaque reference to one qubit of a QuantumRegister. Ids are handed out in
/// allocation order and never reused within a register.
struct QubitId {
    std::uint64_t value = 0;

    friend auto operator<=>(const QubitId &, const QubitId &) = default;
};

enum class QubitStatus { Live, Measured, Released, Unknown };

/// One term of a peeked joint state. `label` is the ket bit string, first
/// listed qubit leftmost.
struct BasisTerm {
    std::string label;
    Amplitude amplitude;
};

/// Tolerances used by the register.
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kFactorTolerance = 1e-9;
inline constexpr std::size_t kMaxQubits = 24;

/// Global state-vector simulator shared by every node of a network.
///
/// Qubit slot 0 is the most significant bit of the amplitude index. Measured
/// and released qubits are traced out of the vector immediately, so the
/// vector always spans exactly the live qubits. After every renormalization
/// (allocation, measurement, release) the first non-negligible amplitude is
/// rotated to be real and non-negative.
class QuantumRegister {
  public:
    explicit QuantumRegister(std::uint64_t seed = 0);

    /// Adds a qubit in state alpha|0> + beta|1>. The pair is renormalized;
    /// only a zero or non-finite vector is rejected.
    QubitId alloc_qubit(Amplitude alpha, Amplitude beta);

    void apply_h(QubitId q);
    void apply_x(QubitId q);
    void apply_z(QubitId q);
    void apply_cnot(QubitId control, QubitId target);

    /// Born-rule measurement in the computational basis using the register RNG.
    int measure(QubitId q);

    /// Projects onto `bit` without consuming randomness. Throws
    /// ImpossibleOutcome when the branch has negligible probability.
    int measure_forced(QubitId q, int bit);

    /// Probability that measuring `q` yields 1. Read-only.
    double probability_one(QubitId q) const;

    /// Traces out a live qubit that is unentangled with the rest.
    void release(QubitId q);

    /// Joint amplitudes of `qs` in ket order (first listed qubit leftmost),
    /// all 2^k terms. Throws Entangled unless the subset factorizes.
    std::vector<BasisTerm> peek_joint_state(std::span<const QubitId> qs) const;

    /// Like peek_joint_state but returns nullopt instead of throwing Entangled.
    std::optional<std::vector<BasisTerm>> try_peek_joint_state(std::span<const QubitId> qs) const;

    /// |<target|q>|^2 for a qubit unentangled with every other qubit.
    double fidelity(QubitId q, Amplitude alpha, Amplitude beta) const;

    /// Throws UnknownQubit or QubitMeasured unless `q` is live.
    void require_live(QubitId q) const { live_slot(q); }

    QubitStatus status(QubitId q) const;
    std::optional<int> measured_bit(QubitId q) const;
    bool is_live(QubitId q) const { return status(q) == QubitStatus::Live; }

    std::size_t num_qubits() const { return order_.size(); }
    std::span<const QubitId> live_qubits() const { return order_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    double norm_squared() const;

    /// Number of gates and measurements applied so far.
    std::uint64_t op_count() const { return op_count_; }

    /// When enabled, the norm is recomputed after every gate and measurement
    /// and the largest deviation from 1 is kept.
    void set_norm_audit(bool enabled) { audit_ = enabled; }
    double max_norm_deviation() const { return max_norm_dev_; }

  private:
    std::size_t slot_of(QubitId q) const;
    std::size_t live_slot(QubitId q) const;
    std::size_t mask_of(std::size_t slot) const { return std::size_t{1} << (order_.size() - 1 - slot); }
    int collapse(std::size_t slot, int bit, double prob);
    void remove_slot(std::size_t slot, std::vector<Amplitude> remaining);
    void fix_global_phase();
    void after_op();
    // Phase-canonical amplitudes of the qubits at `slots`, or nullopt when
    // they are entangled with the rest.
    std::optional<std::vector<Amplitude>> factor_out(std::span<const std::size_t> slots) const;

    std::vector<Amplitude> amps_;
    std::vector<QubitId> order_;
    std::map<QubitId, int> measured_;
    std::map<QubitId, bool> released_;
    std::uint64_t next_id_ = 0;
    std::mt19937_64 rng_;
    std::uint64_t op_count_ = 0;
    bool audit_ = false;
    double max_norm_dev_ = 0.0;
};

/// Rotates `amps` so the first amplitude with modulus above `threshold` is
/// real and non-negative.
void canonicalize_phase(std::span<Amplitude> amps, double threshold = 1e-9);

/// Formats one amplitude: "0.4091", "-0.7071", "0.5000+0.5000i", "0.7071i".
std::string format_amplitude(Amplitude a);

/// Formats a state as "(0.4091)|0> + (0.9125)|1>". Terms with modulus below
/// 5e-5 are omitted.
std::string format_state(std::span<const BasisTerm> terms);

}  // namespace qrouter
