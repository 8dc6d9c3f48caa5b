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
 * Dense statevector, elementary gates, registers and measurement.
 *
 * Qubit q is bit q of the basis index, so a register occupying qubits
 * [offset, offset + width) holds the value (index >> offset) & (2^width - 1)
 * with its least-significant bit at `offset`.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qradon/error.hpp"
#include "qradon/fourier.hpp"
#include "qradon/report.hpp"
#include "qradon/rng.hpp"

namespace qradon {

/// Contiguous run of qubits interpreted as an unsigned integer, LSB first.
struct Register {
    std::string name;
    unsigned offset = 0;
    unsigned width = 0;

    std::uint64_t mask() const noexcept { return ((std::uint64_t{1} << width) - 1) << offset; }
    std::uint64_t read(std::uint64_t index) const noexcept {
        return (index >> offset) & ((std::uint64_t{1} << width) - 1);
    }
    std::uint64_t write(std::uint64_t index, std::uint64_t value) const noexcept {
        return (index & ~mask()) | ((value << offset) & mask());
    }
    unsigned qubit(unsigned bit) const noexcept { return offset + bit; }
};

/// Named registers laid out back to back from qubit 0.
class RegisterLayout {
  public:
    const Register &add(std::string name, unsigned width) {
        if (width == 0) {
            throw PreconditionError("register '" + name + "' must have at least one qubit");
        }
        for (const auto &r : registers_) {
            if (r.name == name) {
                throw PreconditionError("duplicate register name '" + name + "'");
            }
        }
        registers_.push_back(Register{std::move(name), total_, width});
        total_ += width;
        return registers_.back();
    }

    const Register &get(const std::string &name) const {
        for (const auto &r : registers_) {
            if (r.name == name) {
                return r;
            }
        }
        throw PreconditionError("no register named '" + name + "'");
    }

    unsigned total_qubits() const noexcept { return total_; }
    const std::vector<Register> &registers() const noexcept { return registers_; }

  private:
    std::vector<Register> registers_;
    unsigned total_ = 0;
};

/// Fixed-point fraction a = sum_i 2^{-i-1} a_i held in `bits` qubits.
///
/// As a register value v the leading fraction bit a_0 is the most significant
/// bit, so a = v / 2^bits.
class FixedPoint {
  public:
    FixedPoint(unsigned bits, std::uint64_t raw) : bits_(bits), raw_(raw) {
        if (bits == 0 || bits > 52) {
            throw PreconditionError("fixed-point width must be in [1, 52], got " + std::to_string(bits));
        }
        if (raw >> bits != 0) {
            throw PreconditionError("raw value does not fit in " + std::to_string(bits) + " bits");
        }
    }

    /// Exact representation of `a`; throws if `a` is outside [0, 1) or needs more bits.
    static FixedPoint from_value(double a, unsigned bits) {
        if (!(a >= 0.0 && a < 1.0)) {
            throw PreconditionError("fixed-point value must lie in [0, 1), got " + format_double(a));
        }
        const double scaled = std::ldexp(a, static_cast<int>(bits));
        if (scaled != std::floor(scaled)) {
            throw PreconditionError(format_double(a) + " is not representable with " +
                                    std::to_string(bits) + " bits");
        }
        return FixedPoint(bits, static_cast<std::uint64_t>(scaled));
    }

    static FixedPoint from_bits(const std::vector<bool> &fraction_bits) {
        std::uint64_t raw = 0;
        for (bool b : fraction_bits) {
            raw = (raw << 1) | (b ? 1U : 0U);
        }
        return FixedPoint(static_cast<unsigned>(fraction_bits.size()), raw);
    }

    unsigned bits() const noexcept { return bits_; }
    std::uint64_t raw() const noexcept { return raw_; }
    double value() const noexcept { return std::ldexp(static_cast<double>(raw_), -static_cast<int>(bits_)); }
    /// Fraction bit a_i, weight 2^{-i-1}.
    bool bit(unsigned i) const noexcept { return ((raw_ >> (bits_ - 1 - i)) & 1U) != 0; }

  private:
    unsigned bits_;
    std::uint64_t raw_;
};

class StateVector;

/// Both branches of a single-qubit measurement.
struct Measurement {
    unsigned qubit = 0;
    std::array<double, 2> probability{};
    /// Normalized post-measurement state; empty when the branch has zero probability.
    std::array<std::optional<std::vector<Complex>>, 2> branch;
};

class StateVector {
  public:
    static constexpr unsigned kMaxQubits = 24;
    static constexpr double kNormTolerance = 1e-10;

    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(unsigned num_qubits) : num_qubits_(num_qubits) {
        check_size(num_qubits);
        amps_.assign(std::size_t{1} << num_qubits, Complex{});
        amps_[0] = 1.0;
    }

    static StateVector basis(unsigned num_qubits, std::uint64_t index) {
        StateVector s(num_qubits);
        if (index >= s.dimension()) {
            throw PreconditionError("basis index " + std::to_string(index) + " out of range");
        }
        s.amps_[0] = 0.0;
        s.amps_[index] = 1.0;
        return s;
    }

    static StateVector from_amplitudes(std::vector<Complex> amps) {
        const std::size_t dim = amps.size();
        if (dim == 0 || (dim & (dim - 1)) != 0) {
            throw DimensionError("amplitude count " + std::to_string(dim) + " is not a power of two");
        }
        unsigned q = 0;
        while ((std::size_t{1} << q) < dim) {
            ++q;
        }
        check_size(q);
        StateVector s(q);
        s.amps_ = std::move(amps);
        for (const Complex &c : s.amps_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw NormalizationError("state has a non-finite amplitude");
            }
        }
        if (std::abs(s.norm() - 1.0) > kNormTolerance) {
            throw NormalizationError("state norm is " + format_double(s.norm()) + ", expected 1");
        }
        return s;
    }

    unsigned num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    Complex amplitude(std::uint64_t index) const { return amps_.at(index); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }

    double norm() const noexcept {
        double s = 0.0;
        for (const Complex &c : amps_) {
            s += std::norm(c);
        }
        return std::sqrt(s);
    }

    /// Applies [[m00, m01], [m10, m11]] to `qubit`.
    StateVector &apply_single(unsigned qubit, Complex m00, Complex m01, Complex m10, Complex m11) {
        check_qubit(qubit);
        const std::size_t bit = std::size_t{1} << qubit;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & bit) == 0) {
                const Complex a = amps_[i];
                const Complex b = amps_[i | bit];
                amps_[i] = m00 * a + m01 * b;
                amps_[i | bit] = m10 * a + m11 * b;
            }
        }
        return *this;
    }

    StateVector &hadamard(unsigned qubit) {
        const double r = std::numbers::sqrt2 / 2.0;
        return apply_single(qubit, r, r, r, -r);
    }

    StateVector &pauli_x(unsigned qubit) { return apply_single(qubit, 0.0, 1.0, 1.0, 0.0); }

    /// diag(1, e^{i theta}).
    StateVector &phase(unsigned qubit, double theta) {
        check_qubit(qubit);
        const std::size_t bit = std::size_t{1} << qubit;
        const Complex w = std::polar(1.0, theta);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & bit) != 0) {
                amps_[i] *= w;
            }
        }
        return *this;
    }

    StateVector &controlled_phase(unsigned control, unsigned target, double theta) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) {
            throw PreconditionError("control and target must differ");
        }
        const std::size_t both = (std::size_t{1} << control) | (std::size_t{1} << target);
        const Complex w = std::polar(1.0, theta);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & both) == both) {
                amps_[i] *= w;
            }
        }
        return *this;
    }

    StateVector &swap(unsigned a, unsigned b) {
        check_qubit(a);
        check_qubit(b);
        if (a == b) {
            return *this;
        }
        const std::size_t ba = std::size_t{1} << a;
        const std::size_t bb = std::size_t{1} << b;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & ba) != 0 && (i & bb) == 0) {
                std::swap(amps_[i], amps_[(i & ~ba) | bb]);
            }
        }
        return *this;
    }

    /// Basis permutation |i> -> |perm(i)>. Throws if `perm` is not a bijection.
    template <class Perm> StateVector &permute(Perm &&perm) {
        std::vector<Complex> out(amps_.size());
        std::vector<bool> hit(amps_.size(), false);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            const std::uint64_t j = perm(static_cast<std::uint64_t>(i));
            if (j >= amps_.size() || hit[j]) {
                throw ConsistencyError("basis map is not a permutation (index " + std::to_string(i) + ")");
            }
            hit[j] = true;
            out[j] = amps_[i];
        }
        amps_ = std::move(out);
        return *this;
    }

    /// Multiplies each amplitude by phase_of(index), which must have modulus 1.
    template <class PhaseFn> StateVector &diagonal(PhaseFn &&phase_of) {
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            amps_[i] *= phase_of(static_cast<std::uint64_t>(i));
        }
        return *this;
    }

    /// Applies a real rotation to `target` whose angle depends on the other qubits:
    /// |0> -> c|0> + s|1>, |1> -> -s|0> + c|1> with c = cos_of(index), s = sqrt(1 - c^2).
    template <class CosFn> StateVector &rotate_conditioned(unsigned target, CosFn &&cos_of) {
        check_qubit(target);
        const std::size_t bit = std::size_t{1} << target;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & bit) == 0) {
                const double c = cos_of(static_cast<std::uint64_t>(i));
                if (!(c >= -1.0 && c <= 1.0)) {
                    throw PreconditionError("rotation cosine " + format_double(c) + " outside [-1, 1]");
                }
                const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
                const Complex a = amps_[i];
                const Complex b = amps_[i | bit];
                amps_[i] = c * a - s * b;
                amps_[i | bit] = s * a + c * b;
            }
        }
        return *this;
    }

    Measurement measure(unsigned qubit) const {
        check_qubit(qubit);
        const std::size_t bit = std::size_t{1} << qubit;
        Measurement m;
        m.qubit = qubit;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            m.probability[(i & bit) != 0 ? 1 : 0] += std::norm(amps_[i]);
        }
        for (int outcome = 0; outcome < 2; ++outcome) {
            if (m.probability[outcome] == 0.0) {
                continue;
            }
            const double scale = 1.0 / std::sqrt(m.probability[outcome]);
            std::vector<Complex> v(amps_.size());
            for (std::size_t i = 0; i < amps_.size(); ++i) {
                if (((i & bit) != 0) == (outcome == 1)) {
                    v[i] = amps_[i] * scale;
                }
            }
            m.branch[outcome] = std::move(v);
        }
        return m;
    }

  private:
    static void check_size(unsigned q) {
        if (q > kMaxQubits) {
            throw SizeError("state needs " + std::to_string(q) + " qubits (2^" + std::to_string(q) +
                            " amplitudes); the simulator cap is " + std::to_string(kMaxQubits));
        }
    }

    void check_qubit(unsigned q) const {
        if (q >= num_qubits_) {
            throw PreconditionError("qubit " + std::to_string(q) + " out of range for a " +
                                    std::to_string(num_qubits_) + "-qubit state");
        }
    }

    unsigned num_qubits_;
    std::vector<Complex> amps_;
};

/// Collapsed state for `outcome`; throws if that branch has zero probability.
inline StateVector collapse(const Measurement &m, int outcome) {
    const auto &b = m.branch.at(static_cast<std::size_t>(outcome));
    if (!b) {
        throw PreconditionError("measurement outcome " + std::to_string(outcome) + " has probability 0");
    }
    return StateVector::from_amplitudes(*b);
}

/// Seeded draw of an outcome.
inline int sample_outcome(const Measurement &m, Rng &rng) {
    return rng.uniform(0.0, 1.0) < m.probability[0] ? 0 : 1;
}

enum class QftDirection {
    /// Kernel M^{-1/2} e^{-2 pi i j k / M}; the adjoint of the textbook QFT.
    negative_phase,
    /// Kernel M^{-1/2} e^{+2 pi i j k / M}.
    positive_phase,
};

/// Gate-level QFT on `reg`: Hadamards and controlled phases from the most
/// significant qubit down, then a bit-reversal of the register.
inline StateVector &apply_qft(StateVector &s, const Register &reg, QftDirection dir) {
    const double sign = dir == QftDirection::negative_phase ? -1.0 : 1.0;
    const unsigned w = reg.width;
    if (reg.offset + w > s.num_qubits()) {
        throw PreconditionError("register '" + reg.name + "' exceeds the state");
    }
    if (dir == QftDirection::positive_phase) {
        for (unsigned t = w; t-- > 0;) {
            s.hadamard(reg.qubit(t));
            for (unsigned c = t; c-- > 0;) {
                s.controlled_phase(reg.qubit(c), reg.qubit(t),
                                   sign * 2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << (t - c + 1)));
            }
        }
        for (unsigned t = 0; t < w / 2; ++t) {
            s.swap(reg.qubit(t), reg.qubit(w - 1 - t));
        }
    } else {
        // Adjoint of the circuit above, gates in reverse order.
        for (unsigned t = 0; t < w / 2; ++t) {
            s.swap(reg.qubit(t), reg.qubit(w - 1 - t));
        }
        for (unsigned t = 0; t < w; ++t) {
            for (unsigned c = 0; c < t; ++c) {
                s.controlled_phase(reg.qubit(c), reg.qubit(t),
                                   sign * 2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << (t - c + 1)));
            }
            s.hadamard(reg.qubit(t));
        }
    }
    return s;
}

/// One `index,real,imag` line per basis state.
inline std::string to_csv(const StateVector &s) {
    std::ostringstream out;
    out << "index,real,imag\n";
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        const Complex c = s.amplitude(i);
        out << i << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
    }
    return out.str();
}

} // namespace qradon
