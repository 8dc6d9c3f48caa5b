// Copyright 2026 The qradon Authors
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

/**
 * @file
 * Reversible modular arithmetic on basis states.
 *
 * A ReversibleCircuit is a list of permutation gates over numbered wires.
 * Each gate reads its wires as a little-endian integer, maps it through a
 * bijection and writes it back. Multipliers act on an a-register at wires
 * [0, k) and a b-register at wires [k, 2k).
 */

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qradon/error.hpp"
#include "qradon/modular.hpp"
#include "qradon/statevector.hpp"

namespace qradon {

enum class GateKind { multiplier, adder };

struct ReversibleGate {
    GateKind kind = GateKind::adder;
    std::vector<unsigned> wires;
    std::function<std::uint64_t(std::uint64_t)> forward;
    std::function<std::uint64_t(std::uint64_t)> backward;
};

class ReversibleCircuit {
  public:
    explicit ReversibleCircuit(unsigned num_wires) : num_wires_(num_wires) {}

    unsigned num_wires() const noexcept { return num_wires_; }
    const std::vector<ReversibleGate> &gates() const noexcept { return gates_; }

    ReversibleCircuit &add(ReversibleGate g) {
        for (unsigned w : g.wires) {
            if (w >= num_wires_) {
                throw PreconditionError("gate wire " + std::to_string(w) + " outside a " +
                                        std::to_string(num_wires_) + "-wire circuit");
            }
        }
        gates_.push_back(std::move(g));
        return *this;
    }

    /// Appends `sub` with its wire w connected to wire_map[w] of this circuit.
    ReversibleCircuit &append(const ReversibleCircuit &sub, const std::vector<unsigned> &wire_map) {
        if (wire_map.size() != sub.num_wires()) {
            throw DimensionError("wire map has " + std::to_string(wire_map.size()) + " entries for a " +
                                 std::to_string(sub.num_wires()) + "-wire circuit");
        }
        for (const ReversibleGate &g : sub.gates_) {
            ReversibleGate h = g;
            for (unsigned &w : h.wires) {
                w = wire_map[w];
            }
            add(std::move(h));
        }
        return *this;
    }

    /// Image of a basis value under the whole circuit.
    std::uint64_t map(std::uint64_t value) const {
        for (const ReversibleGate &g : gates_) {
            value = apply_gate(g, value, g.forward);
        }
        return value;
    }

    std::uint64_t unmap(std::uint64_t value) const {
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            value = apply_gate(*it, value, it->backward);
        }
        return value;
    }

    ReversibleCircuit inverse() const {
        ReversibleCircuit inv(num_wires_);
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            inv.gates_.push_back(ReversibleGate{it->kind, it->wires, it->backward, it->forward});
        }
        return inv;
    }

    std::size_t adder_count() const noexcept {
        std::size_t c = 0;
        for (const ReversibleGate &g : gates_) {
            c += g.kind == GateKind::adder ? 1 : 0;
        }
        return c;
    }

    /// Runs the circuit on `state` with wire w on qubit qubit_of_wire[w].
    void apply(StateVector &state, const std::vector<unsigned> &qubit_of_wire) const {
        if (qubit_of_wire.size() != num_wires_) {
            throw DimensionError("qubit map has " + std::to_string(qubit_of_wire.size()) + " entries for " +
                                 std::to_string(num_wires_) + " wires");
        }
        for (const ReversibleGate &g : gates_) {
            std::vector<unsigned> qubits;
            qubits.reserve(g.wires.size());
            for (unsigned w : g.wires) {
                if (qubit_of_wire[w] >= state.num_qubits()) {
                    throw PreconditionError("wire " + std::to_string(w) + " mapped outside the state");
                }
                qubits.push_back(qubit_of_wire[w]);
            }
            state.permute([&](std::uint64_t idx) { return apply_on_bits(qubits, idx, g.forward); });
        }
    }

  private:
    static std::uint64_t apply_on_bits(const std::vector<unsigned> &bits, std::uint64_t value,
                                       const std::function<std::uint64_t(std::uint64_t)> &fn) {
        std::uint64_t local = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            local |= ((value >> bits[i]) & 1U) << i;
        }
        const std::uint64_t out = fn(local);
        for (std::size_t i = 0; i < bits.size(); ++i) {
            const std::uint64_t mask = std::uint64_t{1} << bits[i];
            value = (value & ~mask) | (((out >> i) & 1U) << bits[i]);
        }
        return value;
    }

    static std::uint64_t apply_gate(const ReversibleGate &g, std::uint64_t value,
                                    const std::function<std::uint64_t(std::uint64_t)> &fn) {
        return apply_on_bits(g.wires, value, fn);
    }

    unsigned num_wires_;
    std::vector<ReversibleGate> gates_;
};

namespace detail {

inline void check_arith_width(unsigned k) {
    if (k < 1 || k > 12) {
        throw PreconditionError("arithmetic width must be in [1, 12], got " + std::to_string(k));
    }
}

inline std::vector<unsigned> iota_wires(unsigned first, unsigned count) {
    std::vector<unsigned> w(count);
    for (unsigned i = 0; i < count; ++i) {
        w[i] = first + i;
    }
    return w;
}

} // namespace detail

/// (a, b, c) -> (a, b + c a mod 2^k, c) with a at wires [0, k), b at [k, 2k), c at 2k.
inline ReversibleCircuit controlled_add(unsigned k) {
    detail::check_arith_width(k);
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    auto step = [k, mask](std::uint64_t v, bool subtract) {
        const std::uint64_t a = v & mask;
        const std::uint64_t b = (v >> k) & mask;
        const std::uint64_t c = (v >> (2 * k)) & 1U;
        if (c == 0) {
            return v;
        }
        const std::uint64_t nb = (subtract ? b - a : b + a) & mask;
        return a | (nb << k) | (c << (2 * k));
    };
    ReversibleCircuit circ(2 * k + 1);
    circ.add(ReversibleGate{GateKind::adder, detail::iota_wires(0, 2 * k + 1),
                            [step](std::uint64_t v) { return step(v, false); },
                            [step](std::uint64_t v) { return step(v, true); }});
    return circ;
}

/// (a, b) -> (a, a b mod 2^k) for odd a; b untouched when a is even.
inline ReversibleCircuit mul_direct(unsigned k) {
    detail::check_arith_width(k);
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    auto step = [k, mask](std::uint64_t v, bool undo) {
        const std::uint64_t a = v & mask;
        const std::uint64_t b = (v >> k) & mask;
        if ((a & 1U) == 0) {
            return v;
        }
        const std::uint64_t factor = undo ? inverse_mod_pow2(a, k) : a;
        return a | (((factor * b) & mask) << k);
    };
    ReversibleCircuit circ(2 * k);
    circ.add(ReversibleGate{GateKind::multiplier, detail::iota_wires(0, 2 * k),
                            [step](std::uint64_t v) { return step(v, false); },
                            [step](std::uint64_t v) { return step(v, true); }});
    return circ;
}

/// Multiplier assembled from controlled adders.
///
/// With b = b_0 + 2 b' and a odd, a b mod 2^{k+1} has low bit b_0 and upper
/// bits (a mod 2^k) b' + b_0 (a >> 1) mod 2^k. So M_{k+1} is M_k on
/// (a bits [0,k), b bits [1,k+1)) followed by adding a bits [1,k+1) into
/// b bits [1,k+1) controlled on b_0. M_1 is the identity.
inline ReversibleCircuit mul_recursive(unsigned k) {
    detail::check_arith_width(k);
    ReversibleCircuit circ(2 * k);
    if (k == 1) {
        return circ;
    }
    const unsigned j = k - 1;
    std::vector<unsigned> sub_map;
    for (unsigned i = 0; i < j; ++i) {
        sub_map.push_back(i);
    }
    for (unsigned i = 0; i < j; ++i) {
        sub_map.push_back(k + 1 + i);
    }
    circ.append(mul_recursive(j), sub_map);

    std::vector<unsigned> add_map;
    for (unsigned i = 0; i < j; ++i) {
        add_map.push_back(1 + i);
    }
    for (unsigned i = 0; i < j; ++i) {
        add_map.push_back(k + 1 + i);
    }
    add_map.push_back(k);
    circ.append(controlled_add(j), add_map);
    return circ;
}

} // namespace qradon
