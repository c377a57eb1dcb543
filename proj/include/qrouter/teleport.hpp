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

#include <cstdint>
#include <optional>
#include <utility>

#include "qrouter/qsim.hpp"

namespace qrouter {

/// Two-bit outcome of a Bell State Measurement, value = 2*m_source + m_epr.
class BsmResult {
  public:
    BsmResult() = default;
    explicit BsmResult(int value);

    static BsmResult from_bits(int m_source, int m_epr);

    int value() const { return value_; }
    int m_source() const { return value_ >> 1; }
    int m_epr() const { return value_ & 1; }

    friend bool operator==(const BsmResult &, const BsmResult &) = default;

  private:
    int value_ = 0;
};

/// Allocates two fresh qubits in (|00> + |11>)/sqrt(2).
std::pair<QubitId, QubitId> make_bell_pair(QuantumRegister &reg);

/// CNOT(source -> epr_half), H(source), then measures source and epr_half.
/// With `forced`, both measurements are projected onto the given branch.
BsmResult bell_state_measurement(QuantumRegister &reg, QubitId source, QubitId epr_half,
                                 std::optional<BsmResult> forced = std::nullopt);

/// Applies X iff m_epr = 1, then Z iff m_source = 1.
void quantum_state_recovery(QuantumRegister &reg, QubitId q, BsmResult r);

/// Full protocol over an existing pair: BSM on (source, near) then recovery
/// on `far`. Returns the BSM outcome.
BsmResult teleport(QuantumRegister &reg, QubitId source, QubitId near, QubitId far,
                   std::optional<BsmResult> forced = std::nullopt);

}  // namespace qrouter
