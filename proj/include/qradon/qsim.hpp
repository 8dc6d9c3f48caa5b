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
 * Gate-level quantum Radon transform and the state-preparation subroutines.
 *
 * For an n x n image with n = 2^m the circuit uses two (m+1)-qubit registers:
 * `i` at qubits [0, m+1) and `j` at [m+1, 2m+2). Pixel (x, y) lives at
 * i = 2x + 1, j = 2y + 1. After the circuit the amplitude at (i = l, j = k)
 * is QR(l, k).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "qradon/grid.hpp"
#include "qradon/qrt.hpp"
#include "qradon/reversible.hpp"
#include "qradon/statevector.hpp"

namespace qradon {

enum class MultiplierKind { direct, recursive };

struct Algorithm1Layout {
    unsigned m = 0;
    Register i;
    Register j;

    unsigned num_qubits() const noexcept { return 2 * (m + 1); }
    std::uint64_t index(std::uint64_t iv, std::uint64_t jv) const noexcept { return i.write(j.write(0, jv), iv); }
    /// The m bits above the pinned low qubit.
    Register i_high() const { return Register{"i_high", i.offset + 1, m}; }
    Register j_high() const { return Register{"j_high", j.offset + 1, m}; }
};

inline Algorithm1Layout algorithm1_layout(std::size_t n) {
    if (!is_power_of_two(n) || n < 2) {
        throw SizeError("image side must be a power of two >= 2, got " + std::to_string(n));
    }
    const unsigned m = log2_exact(n);
    if (2 * (m + 1) > StateVector::kMaxQubits) {
        throw SizeError("n = " + std::to_string(n) + " needs " + std::to_string(2 * (m + 1)) +
                        " qubits; the simulator cap is " + std::to_string(StateVector::kMaxQubits));
    }
    RegisterLayout layout;
    Algorithm1Layout a;
    a.m = m;
    a.i = layout.add("i", m + 1);
    a.j = layout.add("j", m + 1);
    return a;
}

/// Step 1: amplitude f(x, y) at (i, j) = (2x + 1, 2y + 1).
inline StateVector from_image(const QuantumImage &f) {
    const std::size_t n = f.size();
    const Algorithm1Layout lay = algorithm1_layout(n);
    std::vector<Complex> amps(std::size_t{1} << lay.num_qubits());
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            amps[lay.index(2 * x + 1, 2 * y + 1)] = f(x, y);
        }
    }
    return StateVector::from_amplitudes(std::move(amps));
}

/// Amplitudes at the odd-odd positions, read back as an image (real parts).
inline Image embedded_image(const StateVector &s, std::size_t n) {
    const Algorithm1Layout lay = algorithm1_layout(n);
    if (s.num_qubits() != lay.num_qubits()) {
        throw DimensionError("state has " + std::to_string(s.num_qubits()) + " qubits, expected " +
                             std::to_string(lay.num_qubits()));
    }
    Image f(n);
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            f(x, y) = s.amplitude(lay.index(2 * x + 1, 2 * y + 1)).real();
        }
    }
    return f;
}

/// Step 2: e^{-2 pi i (x + y) / 2n} as one single-qubit phase per high bit.
inline StateVector &apply_cond_phase(StateVector &s, std::size_t n, bool adjoint = false) {
    const Algorithm1Layout lay = algorithm1_layout(n);
    const double sign = adjoint ? 1.0 : -1.0;
    for (unsigned b = 0; b < lay.m; ++b) {
        const double theta = sign * std::numbers::pi * static_cast<double>(std::uint64_t{1} << b) /
                              static_cast<double>(n);
        s.phase(lay.i.qubit(b + 1), theta);
        s.phase(lay.j.qubit(b + 1), theta);
    }
    return s;
}

namespace detail {

inline ReversibleCircuit multiplier(unsigned bits, MultiplierKind kind) {
    return kind == MultiplierKind::direct ? mul_direct(bits) : mul_recursive(bits);
}

inline std::vector<unsigned> multiplier_wires(const Algorithm1Layout &lay) {
    std::vector<unsigned> w;
    for (unsigned b = 0; b <= lay.m; ++b) {
        w.push_back(lay.i.qubit(b));
    }
    for (unsigned b = 0; b <= lay.m; ++b) {
        w.push_back(lay.j.qubit(b));
    }
    return w;
}

} // namespace detail

/// Steps 2-5 on a state prepared by from_image.
inline StateVector &apply_algorithm1(StateVector &s, std::size_t n, MultiplierKind kind = MultiplierKind::direct) {
    const Algorithm1Layout lay = algorithm1_layout(n);
    apply_cond_phase(s, n);
    apply_qft(s, lay.i_high(), QftDirection::negative_phase);
    apply_qft(s, lay.j_high(), QftDirection::negative_phase);
    detail::multiplier(lay.m + 1, kind).inverse().apply(s, detail::multiplier_wires(lay));
    apply_qft(s, lay.i, QftDirection::positive_phase);
    return s;
}

/// Adjoint of apply_algorithm1.
inline StateVector &reverse_algorithm1(StateVector &s, std::size_t n, MultiplierKind kind = MultiplierKind::direct) {
    const Algorithm1Layout lay = algorithm1_layout(n);
    apply_qft(s, lay.i, QftDirection::negative_phase);
    detail::multiplier(lay.m + 1, kind).apply(s, detail::multiplier_wires(lay));
    apply_qft(s, lay.j_high(), QftDirection::positive_phase);
    apply_qft(s, lay.i_high(), QftDirection::positive_phase);
    apply_cond_phase(s, n, true);
    return s;
}

inline StateVector run_algorithm1(const QuantumImage &f, MultiplierKind kind = MultiplierKind::direct) {
    StateVector s = from_image(f);
    apply_algorithm1(s, f.size(), kind);
    return s;
}

/// Amplitude at (i = l, j = k) stored as table(k, l); imaginary parts are dropped.
inline QrtTable algorithm1_table(const StateVector &s, std::size_t n) {
    const Algorithm1Layout lay = algorithm1_layout(n);
    if (s.num_qubits() != lay.num_qubits()) {
        throw DimensionError("state has " + std::to_string(s.num_qubits()) + " qubits, expected " +
                             std::to_string(lay.num_qubits()));
    }
    QrtTable qr(n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
        for (std::size_t l = 0; l < 2 * n; ++l) {
            qr(k, l) = s.amplitude(lay.index(l, k)).real();
        }
    }
    return qr;
}

/// Inverse of algorithm1_table for tables of unit norm.
inline StateVector state_from_table(const QrtTable &qr) {
    const std::size_t n = qr.n();
    const Algorithm1Layout lay = algorithm1_layout(n);
    std::vector<Complex> amps(std::size_t{1} << lay.num_qubits());
    for (std::size_t k = 0; k < 2 * n; ++k) {
        for (std::size_t l = 0; l < 2 * n; ++l) {
            amps[lay.index(l, k)] = qr(k, l);
        }
    }
    return StateVector::from_amplitudes(std::move(amps));
}

/// Rotates `target` to a|0> + sqrt(1 - a^2)|1> where a is the fixed-point
/// value held in `source` (target assumed |0>; general inputs get the full rotation).
inline StateVector &conditional_rotation(StateVector &s, const Register &source, unsigned target) {
    if (source.offset + source.width > s.num_qubits()) {
        throw PreconditionError("source register '" + source.name + "' exceeds the state");
    }
    if (target >= source.offset && target < source.offset + source.width) {
        throw PreconditionError("target qubit lies inside the source register");
    }
    return s.rotate_conditioned(target, [&](std::uint64_t idx) {
        return FixedPoint(source.width, source.read(idx)).value();
    });
}

struct AmplitudeEncoding {
    /// Postselected state sum_i a_i / ||a|| |i> over ceil(log2 N) qubits.
    StateVector state;
    double success_probability = 0.0;
    double kappa = 0.0;
};

/// Simulates the conditional-rotation preparation of sum_i a_i |i> / ||a||.
///
/// A uniform superposition over |i> drives an ancilla rotation by a_i / a_max;
/// outcome 0 on the ancilla leaves the target state. With `precision_bits`
/// the ratios |a_i| / a_max are first rounded down to that many fraction bits
/// and loaded into a data register, which is uncomputed afterwards.
inline AmplitudeEncoding amplitude_encode_sim(const std::vector<double> &values,
                                              std::optional<unsigned> precision_bits = std::nullopt) {
    const std::size_t count = values.size();
    if (count == 0 || (count & (count - 1)) != 0) {
        throw DimensionError("vector length must be a power of two, got " + std::to_string(count));
    }
    double a_max = 0.0;
    double a_min = std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw PreconditionError("vector has a non-finite entry");
        }
        a_max = std::max(a_max, std::abs(v));
        a_min = std::min(a_min, std::abs(v));
    }
    if (a_max == 0.0) {
        throw NormalizationError("cannot encode an all-zero vector");
    }

    unsigned index_bits = 0;
    while ((std::size_t{1} << index_bits) < count) {
        ++index_bits;
    }
    const unsigned data_bits = precision_bits.value_or(0);
    if (precision_bits && (data_bits == 0 || data_bits > 16)) {
        throw PreconditionError("precision bits must be in [1, 16]");
    }
    RegisterLayout layout;
    const Register index = index_bits > 0 ? layout.add("index", index_bits) : Register{"index", 0, 0};
    const Register data = precision_bits ? layout.add("data", data_bits) : Register{};
    const Register anc = layout.add("ancilla", 1);
    StateVector s(layout.total_qubits());

    for (unsigned b = 0; b < index_bits; ++b) {
        s.hadamard(index.qubit(b));
    }
    s.diagonal([&](std::uint64_t idx) { return values[index.read(idx)] < 0.0 ? Complex{-1.0} : Complex{1.0}; });

    std::vector<double> ratio(count);
    if (precision_bits) {
        const double scale = std::ldexp(1.0, static_cast<int>(data_bits));
        std::vector<std::uint64_t> raw(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double r = std::abs(values[i]) / a_max;
            raw[i] = std::min(static_cast<std::uint64_t>(std::floor(r * scale)),
                              (std::uint64_t{1} << data_bits) - 1);
            ratio[i] = FixedPoint(data_bits, raw[i]).value();
        }
        // Loading and unloading are both XOR of raw[i] into the data register.
        auto load = [&](std::uint64_t idx) { return data.write(idx, data.read(idx) ^ raw[index.read(idx)]); };
        s.permute(load);
        conditional_rotation(s, data, anc.qubit(0));
        s.permute(load);
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            ratio[i] = std::abs(values[i]) / a_max;
        }
        s.rotate_conditioned(anc.qubit(0), [&](std::uint64_t idx) { return ratio[index.read(idx)]; });
    }

    const Measurement meas = s.measure(anc.qubit(0));
    if (!meas.branch[0]) {
        throw NormalizationError("all entries rounded to zero at the requested precision");
    }
    std::vector<Complex> out(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        out[i] = (*meas.branch[0])[index_bits > 0 ? index.write(0, i) : 0];
    }

    double expected = 0.0;
    for (double r : ratio) {
        expected += r * r;
    }
    expected /= static_cast<double>(count);
    const double kappa = a_min / a_max;
    if (std::abs(meas.probability[0] - expected) > 1e-9 ||
        (!precision_bits && std::sqrt(meas.probability[0]) < kappa - 1e-12)) {
        throw ConsistencyError("postselection probability " + format_double(meas.probability[0]) +
                               " disagrees with the closed form " + format_double(expected));
    }
    return AmplitudeEncoding{StateVector::from_amplitudes(std::move(out)), meas.probability[0], kappa};
}

} // namespace qradon
