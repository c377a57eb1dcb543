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

#include "qrouter/teleport.hpp"

#include <string>

#include "qrouter/error.hpp"

namespace qrouter {

BsmResult::BsmResult(int value) : value_(value) {
    if (value < 0 || value > 3) {
        throw Error(Errc::InvalidBsmResult, "bsmResult must be in 0..3, got " + std::to_string(value));
    }
}

BsmResult BsmResult::from_bits(int m_source, int m_epr) {
    if ((m_source != 0 && m_source != 1) || (m_epr != 0 && m_epr != 1)) {
        throw Error(Errc::InvalidBsmResult, "measurement bits must be 0 or 1");
    }
    return BsmResult(2 * m_source + m_epr);
}

std::pair<QubitId, QubitId> make_bell_pair(QuantumRegister &reg) {
    if (reg.num_qubits() + 2 > kMaxQubits) {
        throw Error(Errc::CapacityExceeded, "no room for a Bell pair in the register");
    }
    const QubitId a = reg.alloc_qubit({1.0, 0.0}, {0.0, 0.0});
    const QubitId b = reg.alloc_qubit({1.0, 0.0}, {0.0, 0.0});
    reg.apply_h(a);
    reg.apply_cnot(a, b);
    return {a, b};
}

BsmResult bell_state_measurement(QuantumRegister &reg, QubitId source, QubitId epr_half,
                                 std::optional<BsmResult> forced) {
    if (source == epr_half) {
        throw Error(Errc::SameQubit, "BSM operands must be distinct qubits");
    }
    reg.require_live(source);
    reg.require_live(epr_half);
    reg.apply_cnot(source, epr_half);
    reg.apply_h(source);
    int m_source = 0;
    int m_epr = 0;
    if (forced) {
        m_source = reg.measure_forced(source, forced->m_source());
        m_epr = reg.measure_forced(epr_half, forced->m_epr());
    } else {
        m_source = reg.measure(source);
        m_epr = reg.measure(epr_half);
    }
    return BsmResult::from_bits(m_source, m_epr);
}

void quantum_state_recovery(QuantumRegister &reg, QubitId q, BsmResult r) {
    reg.require_live(q);
    if (r.m_epr() == 1) {
        reg.apply_x(q);
    }
    if (r.m_source() == 1) {
        reg.apply_z(q);
    }
}

BsmResult teleport(QuantumRegister &reg, QubitId source, QubitId near, QubitId far,
                   std::optional<BsmResult> forced) {
    const BsmResult r = bell_state_measurement(reg, source, near, forced);
    quantum_state_recovery(reg, far, r);
    return r;
}

}  // namespace qrouter
