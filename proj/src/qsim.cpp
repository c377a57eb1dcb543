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

#include "qrouter/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qrouter/error.hpp"

namespace qrouter {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kPrintCutoff = 5e-5;
constexpr double kImpossibleBranch = 1e-12;

double uniform01(std::mt19937_64 &rng) {
    // 53 high bits; portable across standard libraries unlike the distributions.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string bits_label(std::size_t index, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t j = 0; j < width; ++j) {
        if (index & (std::size_t{1} << (width - 1 - j))) {
            s[j] = '1';
        }
    }
    return s;
}

std::string id_str(QubitId q) { return "qubit " + std::to_string(q.value); }

}  // namespace

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::NonNormalizable: return "non-normalizable";
        case Errc::CapacityExceeded: return "capacity-exceeded";
        case Errc::UnknownQubit: return "unknown-qubit";
        case Errc::QubitMeasured: return "qubit-measured";
        case Errc::SameQubit: return "same-qubit";
        case Errc::Entangled: return "entangled";
        case Errc::ImpossibleOutcome: return "impossible-outcome";
        case Errc::InvalidBsmResult: return "invalid-bsm-result";
        case Errc::UnknownNode: return "unknown-node";
        case Errc::SameNode: return "same-node";
        case Errc::UnknownEpr: return "unknown-epr";
        case Errc::NotEndpoint: return "not-endpoint";
        case Errc::PairNotConsumed: return "pair-not-consumed";
        case Errc::ForeignQubit: return "foreign-qubit";
        case Errc::Unroutable: return "unroutable";
        case Errc::InvalidTopology: return "invalid-topology";
        case Errc::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

void canonicalize_phase(std::span<Amplitude> amps, double threshold) {
    for (const Amplitude &a : amps) {
        const double mag = std::abs(a);
        if (mag > threshold) {
            const Amplitude rot = std::conj(a) / mag;
            for (Amplitude &b : amps) {
                b *= rot;
            }
            return;
        }
    }
}

QuantumRegister::QuantumRegister(std::uint64_t seed) : amps_{Amplitude{1.0, 0.0}}, rng_(seed) {}

QubitId QuantumRegister::alloc_qubit(Amplitude alpha, Amplitude beta) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(beta.real()) ||
        !std::isfinite(beta.imag())) {
        throw Error(Errc::NonNormalizable, "qubit amplitudes must be finite");
    }
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (norm < 1e-150) {
        throw Error(Errc::NonNormalizable, "qubit amplitudes form a zero vector");
    }
    if (order_.size() >= kMaxQubits) {
        throw Error(Errc::CapacityExceeded,
                    "register is full (" + std::to_string(kMaxQubits) + " live qubits)");
    }
    alpha /= norm;
    beta /= norm;

    std::vector<Amplitude> next(amps_.size() * 2);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        next[2 * i] = amps_[i] * alpha;
        next[2 * i + 1] = amps_[i] * beta;
    }
    amps_ = std::move(next);
    QubitId id{next_id_++};
    order_.push_back(id);
    fix_global_phase();
    return id;
}

std::size_t QuantumRegister::slot_of(QubitId q) const {
    auto it = std::find(order_.begin(), order_.end(), q);
    return it == order_.end() ? order_.size() : static_cast<std::size_t>(it - order_.begin());
}

std::size_t QuantumRegister::live_slot(QubitId q) const {
    const std::size_t slot = slot_of(q);
    if (slot < order_.size()) {
        return slot;
    }
    if (measured_.count(q) != 0) {
        throw Error(Errc::QubitMeasured, id_str(q) + " has been measured");
    }
    throw Error(Errc::UnknownQubit, id_str(q) + " is not live in this register");
}

void QuantumRegister::apply_h(QubitId q) {
    const std::size_t mask = mask_of(live_slot(q));
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == 0) {
            const Amplitude a0 = amps_[i];
            const Amplitude a1 = amps_[i | mask];
            amps_[i] = (a0 + a1) * kInvSqrt2;
            amps_[i | mask] = (a0 - a1) * kInvSqrt2;
        }
    }
    after_op();
}

void QuantumRegister::apply_x(QubitId q) {
    const std::size_t mask = mask_of(live_slot(q));
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == 0) {
            std::swap(amps_[i], amps_[i | mask]);
        }
    }
    after_op();
}

void QuantumRegister::apply_z(QubitId q) {
    const std::size_t mask = mask_of(live_slot(q));
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) {
            amps_[i] = -amps_[i];
        }
    }
    after_op();
}

void QuantumRegister::apply_cnot(QubitId control, QubitId target) {
    if (control == target) {
        throw Error(Errc::SameQubit, "CNOT control and target are both " + id_str(control));
    }
    const std::size_t cmask = mask_of(live_slot(control));
    const std::size_t tmask = mask_of(live_slot(target));
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
    after_op();
}

double QuantumRegister::probability_one(QubitId q) const {
    const std::size_t mask = mask_of(live_slot(q));
    double p1 = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) {
            p1 += std::norm(amps_[i]);
        }
    }
    return p1;
}

int QuantumRegister::measure(QubitId q) {
    const std::size_t slot = live_slot(q);
    const double p1 = probability_one(q);
    const double p0 = 1.0 - p1;
    const int bit = uniform01(rng_) < p0 ? 0 : 1;
    return collapse(slot, bit, bit == 0 ? p0 : p1);
}

int QuantumRegister::measure_forced(QubitId q, int bit) {
    if (bit != 0 && bit != 1) {
        throw Error(Errc::InvalidArgument, "forced outcome must be 0 or 1");
    }
    const std::size_t slot = live_slot(q);
    const double p1 = probability_one(q);
    const double prob = bit == 1 ? p1 : 1.0 - p1;
    if (prob < kImpossibleBranch) {
        throw Error(Errc::ImpossibleOutcome,
                    "outcome " + std::to_string(bit) + " of " + id_str(q) + " has probability 0");
    }
    return collapse(slot, bit, prob);
}

int QuantumRegister::collapse(std::size_t slot, int bit, double prob) {
    const QubitId q = order_[slot];
    const std::size_t mask = mask_of(slot);
    const double scale = 1.0 / std::sqrt(prob);
    std::vector<Amplitude> remaining;
    remaining.reserve(amps_.size() / 2);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (((i & mask) != 0) == (bit == 1)) {
            remaining.push_back(amps_[i] * scale);
        }
    }
    remove_slot(slot, std::move(remaining));
    measured_[q] = bit;
    after_op();
    return bit;
}

void QuantumRegister::remove_slot(std::size_t slot, std::vector<Amplitude> remaining) {
    order_.erase(order_.begin() + static_cast<std::ptrdiff_t>(slot));
    amps_ = std::move(remaining);
    fix_global_phase();
}

void QuantumRegister::release(QubitId q) {
    const std::size_t slot = live_slot(q);
    const std::size_t slots[] = {slot};
    auto sub = factor_out(slots);
    if (!sub) {
        throw Error(Errc::Entangled, id_str(q) + " is entangled and cannot be released");
    }
    const std::size_t mask = mask_of(slot);
    std::vector<Amplitude> remaining;
    remaining.reserve(amps_.size() / 2);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == 0) {
            remaining.push_back(std::conj((*sub)[0]) * amps_[i] + std::conj((*sub)[1]) * amps_[i | mask]);
        }
    }
    double norm = 0.0;
    for (const Amplitude &a : remaining) {
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (Amplitude &a : remaining) {
        a /= norm;
    }
    remove_slot(slot, std::move(remaining));
    released_[q] = true;
}

std::optional<std::vector<Amplitude>> QuantumRegister::factor_out(std::span<const std::size_t> slots) const {
    const std::size_t n = order_.size();
    const std::size_t k = slots.size();
    const std::size_t sub_dim = std::size_t{1} << k;
    const std::size_t rest_dim = std::size_t{1} << (n - k);

    std::vector<bool> in_subset(n, false);
    for (std::size_t s : slots) {
        in_subset[s] = true;
    }
    // matrix[sub * rest_dim + rest]
    std::vector<Amplitude> matrix(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        std::size_t sub = 0;
        for (std::size_t j = 0; j < k; ++j) {
            sub = (sub << 1) | ((i & mask_of(slots[j])) ? 1u : 0u);
        }
        std::size_t rest = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if (!in_subset[s]) {
                rest = (rest << 1) | ((i & mask_of(s)) ? 1u : 0u);
            }
        }
        matrix[sub * rest_dim + rest] = amps_[i];
    }

    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t r = 0; r < rest_dim; ++r) {
        double col = 0.0;
        for (std::size_t s = 0; s < sub_dim; ++s) {
            col += std::norm(matrix[s * rest_dim + r]);
        }
        if (col > best_norm) {
            best_norm = col;
            best = r;
        }
    }
    std::vector<Amplitude> psi(sub_dim);
    const double scale = 1.0 / std::sqrt(best_norm);
    for (std::size_t s = 0; s < sub_dim; ++s) {
        psi[s] = matrix[s * rest_dim + best] * scale;
    }

    double residual = 0.0;
    for (std::size_t r = 0; r < rest_dim; ++r) {
        Amplitude overlap{0.0, 0.0};
        for (std::size_t s = 0; s < sub_dim; ++s) {
            overlap += std::conj(psi[s]) * matrix[s * rest_dim + r];
        }
        for (std::size_t s = 0; s < sub_dim; ++s) {
            residual += std::norm(matrix[s * rest_dim + r] - psi[s] * overlap);
        }
    }
    if (std::sqrt(residual) > kFactorTolerance) {
        return std::nullopt;
    }
    canonicalize_phase(psi);
    return psi;
}

std::optional<std::vector<BasisTerm>> QuantumRegister::try_peek_joint_state(std::span<const QubitId> qs) const {
    std::vector<std::size_t> slots;
    slots.reserve(qs.size());
    for (QubitId q : qs) {
        const std::size_t slot = live_slot(q);
        if (std::find(slots.begin(), slots.end(), slot) != slots.end()) {
            throw Error(Errc::SameQubit, id_str(q) + " listed twice");
        }
        slots.push_back(slot);
    }
    auto psi = factor_out(slots);
    if (!psi) {
        return std::nullopt;
    }
    std::vector<BasisTerm> terms;
    terms.reserve(psi->size());
    for (std::size_t s = 0; s < psi->size(); ++s) {
        terms.push_back({bits_label(s, qs.size()), (*psi)[s]});
    }
    return terms;
}

std::vector<BasisTerm> QuantumRegister::peek_joint_state(std::span<const QubitId> qs) const {
    auto terms = try_peek_joint_state(qs);
    if (!terms) {
        throw Error(Errc::Entangled, "requested qubits are entangled with qubits outside the list");
    }
    return std::move(*terms);
}

double QuantumRegister::fidelity(QubitId q, Amplitude alpha, Amplitude beta) const {
    const QubitId qs[] = {q};
    const auto terms = peek_joint_state(qs);
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (!(norm > 1e-150) || !std::isfinite(norm)) {
        throw Error(Errc::NonNormalizable, "fidelity target is not normalizable");
    }
    const Amplitude overlap = std::conj(alpha / norm) * terms[0].amplitude + std::conj(beta / norm) * terms[1].amplitude;
    return std::min(1.0, std::norm(overlap));
}

QubitStatus QuantumRegister::status(QubitId q) const {
    if (slot_of(q) < order_.size()) {
        return QubitStatus::Live;
    }
    if (measured_.count(q) != 0) {
        return QubitStatus::Measured;
    }
    if (released_.count(q) != 0) {
        return QubitStatus::Released;
    }
    return QubitStatus::Unknown;
}

std::optional<int> QuantumRegister::measured_bit(QubitId q) const {
    auto it = measured_.find(q);
    if (it == measured_.end()) {
        return std::nullopt;
    }
    return it->second;
}

double QuantumRegister::norm_squared() const {
    double total = 0.0;
    for (const Amplitude &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

void QuantumRegister::fix_global_phase() { canonicalize_phase(amps_); }

void QuantumRegister::after_op() {
    ++op_count_;
    if (audit_) {
        max_norm_dev_ = std::max(max_norm_dev_, std::abs(norm_squared() - 1.0));
    }
}

std::string format_amplitude(Amplitude a) {
    const double re = std::abs(a.real()) < kPrintCutoff ? 0.0 : a.real();
    const double im = std::abs(a.imag()) < kPrintCutoff ? 0.0 : a.imag();
    char buf[64];
    if (im == 0.0) {
        std::snprintf(buf, sizeof buf, "%.4f", re);
    } else if (re == 0.0) {
        std::snprintf(buf, sizeof buf, "%.4fi", im);
    } else {
        std::snprintf(buf, sizeof buf, "%.4f%+.4fi", re, im);
    }
    return buf;
}

std::string format_state(std::span<const BasisTerm> terms) {
    std::string out;
    for (const BasisTerm &t : terms) {
        if (std::abs(t.amplitude) < kPrintCutoff) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        out += "(" + format_amplitude(t.amplitude) + ")|" + t.label + ">";
    }
    return out;
}

}  // namespace qrouter
