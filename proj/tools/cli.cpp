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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "qradon/bench.hpp"
#include "qradon/check.hpp"
#include "qradon/denoise.hpp"
#include "qradon/grid.hpp"
#include "qradon/image_io.hpp"
#include "qradon/pdrt.hpp"
#include "qradon/qrt.hpp"
#include "qradon/qsim.hpp"
#include "qradon/radon_table.hpp"
#include "qradon/report.hpp"
#include "qradon/sidrt.hpp"

namespace qradon::cli {

namespace {

constexpr const char *kSynthPrefix = "synth:";

struct Options {
    std::string in;
    std::string out;
    std::string method = "fft";
    std::string multiplier = "direct";
    std::string denoiser = "qrt";
    std::string noisy_out;
    std::string report;
    std::uint64_t seed = 0;
    double sigma = 0.0;
    double epsilon = 1.0;
    std::optional<double> detect_epsilon;
    std::string threshold;
    std::size_t n = 0;
    std::size_t trials = 1;
    std::size_t repeats = 5;
    std::vector<std::string> transforms{"pdrt_naive", "pdrt_fft", "qrt_direct", "qrt_fft"};
    std::vector<std::size_t> sizes{32, 64, 128, 256};
    bool normalize_input = false;
    bool cross_check = false;
};

/// Pipeline failure attributed to one module.
class StageFailure : public std::runtime_error {
  public:
    StageFailure(std::string module, const std::string &what)
        : std::runtime_error(what), module_(std::move(module)) {}
    const std::string &module() const noexcept { return module_; }

  private:
    std::string module_;
};

class Run {
  public:
    explicit Run(std::string command) : start_(clock::now()) { report_.add("command", std::move(command)); }

    KeyValueBlock &report() { return report_; }

    template <class F> auto stage(const std::string &module, const std::string &name, F &&fn) {
        const auto t0 = clock::now();
        try {
            if constexpr (std::is_void_v<decltype(fn())>) {
                fn();
                record(name, elapsed_ms(t0));
            } else {
                auto result = fn();
                record(name, elapsed_ms(t0));
                return result;
            }
        } catch (const StageFailure &) {
            throw;
        } catch (const std::exception &e) {
            throw StageFailure(module, e.what());
        }
    }

    KeyValueBlock finish() {
        KeyValueBlock b = report_;
        for (const auto &[name, ms] : timings_) {
            b.add("timing." + name + "_ms", ms);
        }
        b.add("timing.total_ms", elapsed_ms(start_));
        return b;
    }

  private:
    using clock = std::chrono::steady_clock;

    /// Repeated stages accumulate under one key.
    void record(const std::string &name, double ms) {
        for (auto &[key, total] : timings_) {
            if (key == name) {
                total += ms;
                return;
            }
        }
        timings_.emplace_back(name, ms);
    }

    static double elapsed_ms(clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    }

    KeyValueBlock report_;
    std::vector<std::pair<std::string, double>> timings_;
    clock::time_point start_;
};

double parse_threshold(const std::string &text) {
    if (text == "inf" || text == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) {
        throw std::invalid_argument(text);
    }
    return v;
}

const std::map<std::string, TestImageKind> &synth_kinds() {
    static const std::map<std::string, TestImageKind> kinds{{"half_plane", TestImageKind::half_plane_gaussian},
                                                            {"line", TestImageKind::line_segment},
                                                            {"random", TestImageKind::random_uniform},
                                                            {"solids", TestImageKind::solids}};
    return kinds;
}

Image load_input(Run &run, const Options &o) {
    return run.stage("grid-core", "load", [&] {
        if (!is_synthetic(o.in)) {
            return load_image(o.in);
        }
        const std::string kind = o.in.substr(std::string(kSynthPrefix).size());
        const auto it = synth_kinds().find(kind);
        if (it == synth_kinds().end()) {
            throw PreconditionError("unknown synthetic image '" + kind + "'");
        }
        const std::size_t n = o.n == 0 ? 256 : o.n;
        return make_test_image(it->second, n, {}, o.seed);
    });
}

void record_input(Run &run, const Options &o, const Image &f) {
    run.report().add("input", o.in).add("n", static_cast<std::uint64_t>(f.size()));
    if (o.in == std::string(kSynthPrefix) + "random") {
        run.report().add("input_seed", o.seed);
    }
}

template <class Layout> void write_table(Run &run, const std::string &module, const RadonTable<Layout> &t,
                                         const std::string &path) {
    if (path.empty()) {
        return;
    }
    run.stage(module, "write", [&] { save_table(t, path); });
    run.report().add("output", path);
}

void write_image(Run &run, const Image &img, const std::string &path, const std::string &key = "output") {
    if (path.empty()) {
        return;
    }
    const bool rescaled = run.stage("grid-core", "write_" + key, [&] { return save_image(img, path); });
    run.report().add(key, path);
    if (rescaled) {
        run.report().add(key + "_sidecar", sidecar_path(path));
    }
}

MultiplierKind multiplier_kind(const Options &o) {
    return o.multiplier == "recursive" ? MultiplierKind::recursive : MultiplierKind::direct;
}

void cmd_pdrt(Run &run, const Options &o) {
    const Image f = load_input(run, o);
    record_input(run, o, f);
    const PdrtTable r = run.stage("pdrt", "transform", [&] {
        if (o.method == "sim") {
            throw PreconditionError("the PDRT has no simulated variant; use naive or fft");
        }
        return o.method == "naive" ? pdrt_naive(f) : pdrt_fft(f);
    });
    run.report().add("method", o.method).add("slopes", static_cast<std::uint64_t>(r.slope_count()));
    run.report().add("table_energy", r.sum_squares());
    write_table(run, "pdrt", r, o.out);
}

void cmd_qrt(Run &run, const Options &o) {
    const Image f = load_input(run, o);
    record_input(run, o, f);
    const QrtTable qr = run.stage(o.method == "sim" ? "qsim" : "qrt", "transform", [&] {
        if (o.method == "naive") {
            return qrt_direct(f);
        }
        if (o.method == "fft") {
            return qrt_fft(f);
        }
        const double norm = f.norm();
        if (norm == 0.0) {
            return QrtTable(f.size());
        }
        const StateVector s = run_algorithm1(normalize(f), multiplier_kind(o));
        return algorithm1_table(s, f.size()).scaled(norm);
    });
    run.report().add("method", o.method);
    if (o.method == "sim") {
        run.report().add("multiplier", o.multiplier);
    }
    run.report().add("table_energy", qr.sum_squares()).add("even_slope_energy", even_slope_energy(qr));
    write_table(run, "qrt", qr, o.out);
}

void cmd_iqrt(Run &run, const Options &o) {
    const QrtTable qr = run.stage("qrt", "load", [&] { return load_table<QrtLayout>(o.in); });
    run.report().add("input", o.in).add("n", static_cast<std::uint64_t>(qr.n()));
    const Image f = run.stage("qrt", "inverse", [&] { return qrt_inverse(qr); });
    run.report().add("image_norm", f.norm());
    write_image(run, f, o.out);
}

void cmd_sidrt(Run &run, const Options &o) {
    const Image f = load_input(run, o);
    record_input(run, o, f);
    const SidrtTable t = run.stage("sidrt", "transform", [&] { return sidrt(f, o.normalize_input); });
    run.report().add("normalized", o.normalize_input).add("table_energy", t.sum_squares());
    write_table(run, "sidrt", t, o.out);
}

void cmd_simulate(Run &run, const Options &o) {
    const Image f = load_input(run, o);
    record_input(run, o, f);
    const QuantumImage q = run.stage("grid-core", "normalize", [&] { return normalize(f); });
    const MultiplierKind kind = multiplier_kind(o);
    StateVector s = run.stage("qsim", "forward", [&] { return run_algorithm1(q, kind); });
    const QrtTable qr = algorithm1_table(s, f.size());
    const double forward_error = run.stage("qrt", "reference", [&] { return max_abs_diff(qr, qrt_direct(q.amplitudes())); });
    if (!o.out.empty()) {
        run.stage("qsim", "write", [&] { detail::write_file(o.out, to_csv(s)); });
        run.report().add("output", o.out);
    }
    run.stage("qsim", "reverse", [&] { reverse_algorithm1(s, f.size(), kind); });
    const double reverse_error = max_abs_diff(embedded_image(s, f.size()), q.amplitudes());
    run.report()
        .add("multiplier", o.multiplier)
        .add("qubits", static_cast<std::uint64_t>(s.num_qubits()))
        .add("max_error_vs_direct", forward_error)
        .add("reverse_error", reverse_error);
}

void cmd_denoise(Run &run, const Options &o) {
    const Image clean = load_input(run, o);
    record_input(run, o, clean);
    const bool noisy = o.sigma > 0.0;
    const double t = o.threshold.empty()
                         ? (noisy && o.denoiser != "qrt" ? 3.0 * o.sigma : std::numeric_limits<double>::infinity())
                         : parse_threshold(o.threshold);
    const Rng root(o.seed);
    double gain_sum = 0.0;
    double prob_sum = 0.0;
    DenoiseReport last;
    std::optional<double> cross_check;
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
        const std::uint64_t seed = o.trials == 1 ? o.seed : root.split(trial).seed();
        const std::optional<NoiseSpec> spec =
            noisy ? std::optional<NoiseSpec>(NoiseSpec{o.sigma, o.epsilon, seed}) : std::nullopt;
        const Image h = run.stage("grid-core", "noise", [&] { return spec ? add_gaussian_noise(clean, *spec) : clean; });
        DenoiseReport rep;
        rep.method = o.denoiser;
        rep.threshold = o.denoiser == "qrt" ? std::numeric_limits<double>::infinity() : t;
        rep.noise = spec;
        const Image out = run.stage("denoise", "denoise", [&] {
            if (o.denoiser == "qrt") {
                const QrtDenoiseResult r = qrt_denoise(h, o.cross_check);
                rep.success_probability = r.success_probability;
                if (r.cross_check_error) {
                    cross_check = std::max(cross_check.value_or(0.0), *r.cross_check_error);
                    if (!(*r.cross_check_error < 1e-9)) {
                        throw ConsistencyError("gate-level pipeline disagrees with the table pipeline");
                    }
                }
                return r.image;
            }
            if (o.denoiser == "pdrt") {
                return pdrt_denoise_padded(h, t);
            }
            return dwt_denoise_2d(h, t);
        });
        if (noisy) {
            rep.snr_before = snr(h, clean);
            rep.snr_after = snr(out, clean);
            gain_sum += rep.snr_after->decibels() - rep.snr_before->decibels();
        }
        prob_sum += rep.success_probability.value_or(0.0);
        if (trial + 1 == o.trials) {
            write_image(run, h, o.noisy_out, "noisy_output");
            write_image(run, out, o.out);
        }
        last = std::move(rep);
    }
    if (cross_check) {
        run.report().add("cross_check_error", *cross_check);
    }
    if (o.trials == 1) {
        run.report().append(last.to_report());
    } else {
        // Trial t draws noise with seed Rng(seed).split(t).seed().
        run.report().add("seed", o.seed).add("trials", static_cast<std::uint64_t>(o.trials));
        run.report().append(last.to_report(), "last_trial.");
        if (noisy) {
            run.report().add("mean_snr_gain_db", gain_sum / static_cast<double>(o.trials));
        }
        if (o.denoiser == "qrt") {
            run.report().add("mean_success_probability", prob_sum / static_cast<double>(o.trials));
        }
    }
}

void cmd_detect(Run &run, const Options &o) {
    const Image f = load_input(run, o);
    record_input(run, o, f);
    const LineDetection d = run.stage("sidrt", "detect", [&] { return detect_line(f, o.detect_epsilon, o.seed); });
    if (o.detect_epsilon) {
        run.report().add("epsilon", *o.detect_epsilon).add("seed", o.seed);
    }
    run.report().append(d.to_report());
}

void cmd_bench(Run &run, const Options &o) {
    std::map<std::string, double> at_max;
    for (const std::string &name : o.transforms) {
        const BenchResult r = run.stage("cli", "bench_" + name, [&] {
            return bench(parse_bench_transform(name), o.sizes, o.repeats, o.seed);
        });
        run.report().append(r.to_report());
        at_max[name] = r.median_seconds.back();
    }
    if (at_max.count("pdrt_naive") != 0 && at_max.count("pdrt_fft") != 0) {
        run.report().add("pdrt_fft_faster_at_max_size", at_max["pdrt_fft"] < at_max["pdrt_naive"]);
    }
}

void cmd_check(Run &run, const Options &o) {
    const std::size_t n = o.n == 0 ? 8 : o.n;
    const CheckSuite suite = run.stage("cli", "check", [&] { return run_checks(n, o.seed); });
    run.report().append(suite.to_report());
    if (!suite.all_passed()) {
        for (const CheckItem &c : suite.items) {
            if (!c.passed()) {
                throw StageFailure("check", "cross-check '" + c.name + "' failed with error " + format_double(c.error));
            }
        }
    }
}

CLI::Option *add_input(CLI::App *sub, Options &o, bool required = true) {
    CLI::Option *opt = sub->add_option("--in", o.in, "Input image (.pgm or .csv) or synth:<half_plane|line|random|solids>");
    if (required) {
        opt->required();
    }
    return opt;
}

} // namespace

bool is_synthetic(const std::string &spec) { return spec.rfind(kSynthPrefix, 0) == 0; }

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Discrete, quantum and interpolated Radon transforms", "qradon"};
    app.require_subcommand(1, 1);
    app.option_defaults()->always_capture_default();

    const auto threshold_check = CLI::Validator(
        [](std::string &s) -> std::string {
            try {
                const double v = parse_threshold(s);
                return v >= 0.0 ? std::string() : std::string("threshold must be >= 0");
            } catch (const std::exception &) {
                return "threshold must be a number or inf";
            }
        },
        "NUMBER|inf");
    const auto methods = CLI::IsMember({"naive", "fft", "sim"});
    const auto multipliers = CLI::IsMember({"direct", "recursive"});

    auto add_common = [&](CLI::App *sub, const char *n_help = "Side of synth: inputs; 0 means 256") {
        sub->add_option("--report", o.report, "Also write the key=value report to this path");
        sub->add_option("--seed", o.seed, "Seed for every stochastic stage");
        sub->add_option("--n", o.n, n_help);
    };

    CLI::App *pdrt_cmd = app.add_subcommand("pdrt", "Periodic discrete Radon transform of an image");
    add_input(pdrt_cmd, o);
    pdrt_cmd->add_option("--out", o.out, "Table CSV");
    pdrt_cmd->add_option("--method", o.method, "naive or fft")->check(methods);
    add_common(pdrt_cmd);

    CLI::App *qrt_cmd = app.add_subcommand("qrt", "Quantum Radon transform table of an image");
    add_input(qrt_cmd, o);
    qrt_cmd->add_option("--out", o.out, "Table CSV");
    qrt_cmd->add_option("--method", o.method, "naive, fft or sim (state-vector circuit)")->check(methods);
    qrt_cmd->add_option("--multiplier", o.multiplier, "Multiplier construction for sim")->check(multipliers);
    add_common(qrt_cmd);

    CLI::App *iqrt_cmd = app.add_subcommand("iqrt", "Inverse quantum Radon transform of a table");
    iqrt_cmd->add_option("--in", o.in, "QRT table CSV")->required();
    iqrt_cmd->add_option("--out", o.out, "Output image (.pgm or .csv)");
    add_common(iqrt_cmd);

    CLI::App *sidrt_cmd = app.add_subcommand("sidrt", "Interpolated discrete Radon transform");
    add_input(sidrt_cmd, o);
    sidrt_cmd->add_option("--out", o.out, "Table CSV");
    sidrt_cmd->add_flag("--normalize", o.normalize_input, "Normalize the image to unit norm first");
    add_common(sidrt_cmd);

    CLI::App *sim_cmd = app.add_subcommand("simulate", "Run the QRT circuit on a state-vector simulator");
    add_input(sim_cmd, o);
    sim_cmd->add_option("--out", o.out, "State CSV (index,real,imag)");
    sim_cmd->add_option("--multiplier", o.multiplier, "Multiplier construction")->check(multipliers);
    add_common(sim_cmd);

    CLI::App *denoise_cmd = app.add_subcommand("denoise", "Add Gaussian noise to an image and denoise it");
    add_input(denoise_cmd, o);
    denoise_cmd->add_option("--out", o.out, "Denoised image");
    denoise_cmd->add_option("--noisy-out", o.noisy_out, "Noisy image");
    denoise_cmd->add_option("--denoiser", o.denoiser, "qrt, pdrt or dwt")->check(CLI::IsMember({"qrt", "pdrt", "dwt"}));
    denoise_cmd->add_option("--sigma", o.sigma, "Noise standard deviation; 0 denoises the input as is")
        ->check(CLI::NonNegativeNumber);
    denoise_cmd->add_option("--epsilon", o.epsilon, "Noise amplitude factor: h = f + epsilon * e")
        ->check(CLI::NonNegativeNumber);
    denoise_cmd->add_option("--threshold", o.threshold, "Hard threshold for pdrt and dwt (default 3 sigma, or inf)")
        ->check(threshold_check);
    denoise_cmd->add_option("--trials", o.trials, "Independent noise draws")->check(CLI::PositiveNumber);
    denoise_cmd->add_flag("--cross-check", o.cross_check, "Also run the gate-level qrt pipeline and compare");
    add_common(denoise_cmd);

    CLI::App *detect_cmd = app.add_subcommand("detect", "Detect the dominant straight line");
    add_input(detect_cmd, o);
    detect_cmd->add_option("--epsilon", o.detect_epsilon, "Per-estimate error bound of the overlap estimates")
        ->check(CLI::NonNegativeNumber);
    add_common(detect_cmd);

    CLI::App *bench_cmd = app.add_subcommand("bench", "Time the transforms and fit log-log slopes");
    bench_cmd->add_option("--transform", o.transforms, "pdrt_naive, pdrt_fft, qrt_direct, qrt_fft")
        ->check(CLI::IsMember({"pdrt_naive", "pdrt_fft", "qrt_direct", "qrt_fft"}));
    bench_cmd->add_option("--sizes", o.sizes, "Strictly increasing image sides")->delimiter(',');
    bench_cmd->add_option("--repeats", o.repeats, "Timed repeats per size (>= 5)");
    add_common(bench_cmd);

    CLI::App *check_cmd = app.add_subcommand("check", "Cross-verify the implementations on a random image");
    add_common(check_cmd, "Image side, a power of two in [2, 64]; 0 means 8");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    CLI::App *chosen = app.get_subcommands().front();
    Run run(chosen->get_name());
    try {
        const std::string &name = chosen->get_name();
        if (name == "pdrt") {
            cmd_pdrt(run, o);
        } else if (name == "qrt") {
            cmd_qrt(run, o);
        } else if (name == "iqrt") {
            cmd_iqrt(run, o);
        } else if (name == "sidrt") {
            cmd_sidrt(run, o);
        } else if (name == "simulate") {
            cmd_simulate(run, o);
        } else if (name == "denoise") {
            cmd_denoise(run, o);
        } else if (name == "detect") {
            cmd_detect(run, o);
        } else if (name == "bench") {
            cmd_bench(run, o);
        } else {
            cmd_check(run, o);
        }
    } catch (const StageFailure &e) {
        err << "qradon: " << e.module() << ": " << e.what() << '\n';
        return 1;
    }

    const KeyValueBlock report = run.finish();
    out << report.to_string();
    if (!o.report.empty()) {
        try {
            report.write(o.report);
        } catch (const Error &e) {
            err << "qradon: cli: " << e.what() << '\n';
            return 1;
        }
    }
    return 0;
}

} // namespace qradon::cli
