// Copyright 2026 The mzi-phase Authors
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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mzi/cli/state_spec.hpp"
#include "mzi/core/phase_grid.hpp"
#include "mzi/engine.hpp"
#include "mzi/interferometer.hpp"
#include "mzi/metrics.hpp"
#include "mzi/pipeline.hpp"

namespace mzi::cli {

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonConvergence = 3;

enum class Format { kCsv, kJson };

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    std::vector<double> points() const { return linspace(start, stop, count); }
};

struct RunConfig {
    std::vector<std::string> states;
    std::optional<std::string> prep;
    double r_x = 0.0;
    double r_y = 0.0;
    std::optional<GridSpec> rx_grid;
    std::optional<GridSpec> ry_grid;
    bool equal_loss = false;
    GridSpec phi_grid{-kPi, kPi, 9};
    std::string transfer = "lossy";
    std::string detect;
    std::string prior = "uniform";
    double tol = kDefaultFidelityTolerance;
    std::string outcome;
    std::size_t grid_size = 128;
    std::string metric = "fidelity";
    std::string out;
    Format format = Format::kCsv;
};

// ---------------------------------------------------------------------------
// Option value parsing

/// A number, or a multiple or fraction of pi: "0.5", "pi", "-pi/2", "2pi", "0.25*pi".
inline double parse_angle(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    auto to_double = [&](std::string_view t) {
        double v = 0.0;
        auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || ec != std::errc{} || end != t.data() + t.size()) {
            throw ConfigError("invalid angle '" + std::string(text) + "'");
        }
        return v;
    };
    const auto pi_at = s.find("pi");
    if (pi_at == std::string::npos) return to_double(s);

    std::string coeff = s.substr(0, pi_at);
    std::string tail = s.substr(pi_at + 2);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    double factor = 1.0;
    if (coeff == "-") {
        factor = -1.0;
    } else if (coeff == "+" || coeff.empty()) {
        factor = 1.0;
    } else {
        factor = to_double(coeff);
    }
    if (!tail.empty()) {
        if (tail.front() != '/') throw ConfigError("invalid angle '" + std::string(text) + "'");
        const double divisor = to_double(std::string_view(tail).substr(1));
        if (divisor == 0.0) throw ConfigError("invalid angle '" + std::string(text) + "'");
        factor /= divisor;
    }
    return factor * kPi;
}

inline GridSpec parse_grid(std::string_view text) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    if (parts.size() != 3) throw ConfigError("grid must be start:stop:count, got '" + std::string(text) + "'");
    GridSpec g;
    g.start = parse_angle(parts[0]);
    g.stop = parse_angle(parts[1]);
    long long count = 0;
    auto [end, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc{} || end != parts[2].data() + parts[2].size() || count < 1) {
        throw ConfigError("grid count must be a positive integer, got '" + parts[2] + "'");
    }
    g.count = static_cast<std::size_t>(count);
    if (!std::isfinite(g.start) || !std::isfinite(g.stop)) throw ConfigError("grid bounds must be finite");
    return g;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

namespace detail {

inline Label json_label(const nlohmann::json& j) {
    if (j.is_string() && j.get<std::string>() == "inconclusive") return Label::make_inconclusive();
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        return Label::counts(j[0].get<int>(), j[1].get<int>());
    }
    throw ConfigError("detection document: a label is [n, m] or \"inconclusive\"");
}

}  // namespace detail

/// "ideal" (or empty), "inconclusive", "flip:px=<p>", or a path to a JSON
/// document {"rows": [{"true": [n, m], "reported": [{"label": [n, m] | "inconclusive", "p": x}]}]}.
inline DetectionModel parse_detection(const std::string& text) {
    if (text.empty() || text == "ideal") return DetectionModel::identity();
    if (text == "inconclusive") return DetectionModel::vacuum_inconclusive();
    if (text.rfind("flip:", 0) == 0) {
        const std::string rest = text.substr(5);
        if (rest.rfind("px=", 0) != 0) throw ConfigError("detection spec must look like flip:px=0.2");
        double px = 0.0;
        const std::string value = rest.substr(3);
        auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), px);
        if (value.empty() || ec != std::errc{} || end != value.data() + value.size()) {
            throw ConfigError("invalid flip probability '" + value + "'");
        }
        if (!(px >= 0.0 && px <= 1.0)) throw ConfigError("flip probability must lie in [0, 1]");
        return binary_flip_detection(px);
    }
    if (!file_exists(text)) throw ConfigError("unknown detection spec '" + text + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(text));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("detection document '" + text + "': " + e.what());
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
        throw ConfigError("detection document must be an object with a \"rows\" array");
    }
    std::map<Outcome, DetectionModel::Row> rows;
    for (const auto& row : doc["rows"]) {
        if (!row.contains("true") || !row.contains("reported") || !row["reported"].is_array()) {
            throw ConfigError("detection row needs \"true\" and \"reported\"");
        }
        const Label truth = detail::json_label(row["true"]);
        if (truth.inconclusive) throw ConfigError("detection row: true outcome must be [n, m]");
        DetectionModel::Row r;
        for (const auto& entry : row["reported"]) {
            if (!entry.contains("label") || !entry.contains("p") || !entry["p"].is_number()) {
                throw ConfigError("detection entry needs \"label\" and numeric \"p\"");
            }
            r[detail::json_label(entry["label"])] += entry["p"].get<double>();
        }
        if (!rows.emplace(Outcome{truth.n, truth.m}, std::move(r)).second) {
            throw ConfigError("detection document: duplicate row");
        }
    }
    try {
        return DetectionModel(std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

/// "uniform" or a path to a two-column CSV of (phi, weight). Weights are
/// renormalized; a warning goes to `warn` when they were off by more than 1e-6.
inline PhasePrior parse_prior(const std::string& text, std::ostream& warn) {
    if (text.empty() || text == "uniform") return PhasePrior::uniform();
    std::istringstream in(read_file(text));
    std::vector<std::pair<double, double>> points;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ConfigError(text + ":" + std::to_string(line_no) + ": expected phi,weight");
        auto field = [&](std::string s) {
            s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
            double v = 0.0;
            auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) return std::optional<double>{};
            return std::optional<double>{v};
        };
        const auto phi = field(line.substr(0, comma));
        const auto weight = field(line.substr(comma + 1));
        if (!phi || !weight) {
            if (points.empty() && line_no == 1) continue;  // header
            throw ConfigError(text + ":" + std::to_string(line_no) + ": expected numeric phi,weight");
        }
        points.emplace_back(*phi, *weight);
    }
    double raw = 1.0;
    PhasePrior prior;
    try {
        prior = PhasePrior::tabulated(std::move(points), &raw);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(text + ": " + e.what());
    }
    if (std::abs(raw - 1.0) > 1e-6) {
        warn << "warning: prior '" << text << "' integrates to " << raw << "; renormalized\n";
    }
    return prior;
}

/// "n,m" or "inconclusive" / "i".
inline Label parse_label(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s == "i" || s == "inconclusive") return Label::make_inconclusive();
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ConfigError("outcome must be n,m or inconclusive");
    int n = 0, m = 0;
    auto parse_int = [&](std::string_view t, int& v) {
        auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        return !t.empty() && ec == std::errc{} && end == t.data() + t.size() && v >= 0;
    };
    if (!parse_int(std::string_view(s).substr(0, comma), n) ||
        !parse_int(std::string_view(s).substr(comma + 1), m)) {
        throw ConfigError("outcome must be n,m with non-negative integers");
    }
    return Label::counts(n, m);
}

inline Format parse_format(const std::string& text) {
    if (text == "csv") return Format::kCsv;
    if (text == "json") return Format::kJson;
    throw ConfigError("format must be csv or json");
}

// ---------------------------------------------------------------------------
// Worker pool

/// Worker count: hardware concurrency, capped by MZI_THREADS when set.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MZI_THREADS"); env && *env) {
        const std::string_view s(env);
        unsigned cap = 0;
        auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
        if (ec != std::errc{} || end != s.data() + s.size() || cap == 0) {
            throw ConfigError("MZI_THREADS must be a positive integer");
        }
        n = std::min(n, cap);
    }
    return n;
}

/// Runs task(i) for i in [0, count) on up to `threads` workers. If tasks
/// throw, the exception of the lowest index is rethrown.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::string, double, long long>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void write_csv(const Table& t, std::ostream& out) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::string>) {
                        out << csv_field(v);
                    } else if constexpr (std::is_same_v<T, double>) {
                        out << format_double(v);
                    } else {
                        out << v;
                    }
                },
                row[c]);
        }
        out << "\n";
    }
}

/// Array of records keyed by column; non-finite numbers become "inf" / "-inf" / "nan".
inline void write_json(const Table& t, std::ostream& out) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        if (std::isfinite(v)) {
                            rec[t.columns[c]] = v;
                        } else {
                            rec[t.columns[c]] = format_double(v);
                        }
                    } else {
                        rec[t.columns[c]] = v;
                    }
                },
                row[c]);
        }
        doc.push_back(std::move(rec));
    }
    out << doc.dump(2) << "\n";
}

inline void write_table(const Table& t, Format format, std::ostream& out) {
    if (format == Format::kJson) {
        write_json(t, out);
    } else {
        write_csv(t, out);
    }
}

// ---------------------------------------------------------------------------
// Model assembly

struct LossPoint {
    double r_x = 0.0;
    double r_y = 0.0;
};

/// Validated inputs shared by every subcommand.
struct Resolved {
    std::vector<StateSpec> states;
    std::vector<LossPoint> losses;
    std::vector<double> phases;
    DetectionModel detect;
    PhasePrior prior;
};

inline Resolved resolve(const RunConfig& cfg, std::ostream& warn, bool needs_state = true) {
    Resolved r;
    std::vector<std::string> specs = cfg.states;
    if (cfg.prep) {
        if (!specs.empty()) throw ConfigError("--prep and --state are mutually exclusive");
        specs.push_back(*cfg.prep);
    }
    if (needs_state && specs.empty()) throw ConfigError("--state is required");
    for (const auto& text : specs) {
        try {
            r.states.push_back(parse_state_spec(text));
        } catch (const SpecError& e) {
            throw ConfigError(e.what());
        }
    }
    if (cfg.transfer != "lossy" && cfg.transfer != "lossless-2x2" && cfg.transfer != "sin2") {
        throw ConfigError("transfer must be lossy, lossless-2x2 or sin2");
    }

    const std::vector<double> rx =
        cfg.rx_grid ? cfg.rx_grid->points() : std::vector<double>{cfg.r_x};
    const std::vector<double> ry =
        cfg.ry_grid ? cfg.ry_grid->points() : std::vector<double>{cfg.r_y};
    for (double x : rx) {
        if (cfg.equal_loss) {
            r.losses.push_back({x, x});
            continue;
        }
        for (double y : ry) r.losses.push_back({x, y});
    }
    for (const auto& l : r.losses) {
        if (!(l.r_x >= 0.0 && l.r_x <= 1.0 && l.r_y >= 0.0 && l.r_y <= 1.0)) {
            throw ConfigError("loss amplitudes must lie in [0, 1]");
        }
        if (cfg.transfer != "lossy" && (l.r_x != 0.0 || l.r_y != 0.0)) {
            throw ConfigError("transfer '" + cfg.transfer + "' is lossless; --rx and --ry must be 0");
        }
    }
    r.phases = cfg.phi_grid.points();
    if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
    r.detect = parse_detection(cfg.detect);
    r.prior = parse_prior(cfg.prior, warn);
    return r;
}

inline LabelDistribution label_distribution(const StateSpec& spec, const LossPoint& loss,
                                            const RunConfig& cfg, const DetectionModel& detect) {
    if (cfg.transfer == "lossless-2x2") {
        return pipeline_distribution(MeasurementModel<2>{spec.build<2>(),
                                                         scattering_transfer(build_lossless_mz_2x2()), detect});
    }
    if (cfg.transfer == "sin2") {
        return pipeline_distribution(MeasurementModel<4>{spec.build<4>(), sin_squared_transfer<4>(), detect});
    }
    LossParameters params;
    params.r_x = loss.r_x;
    params.r_y = loss.r_y;
    return pipeline_distribution(
        MeasurementModel<4>{spec.build<4>(), scattering_transfer(build_lossy_mz(params)), detect});
}

inline Cell label_cell(const Label& l, bool first) {
    if (l.inconclusive) return std::string("i");
    return static_cast<long long>(first ? l.n : l.m);
}

// ---------------------------------------------------------------------------
// Subcommands

namespace detail {

/// Evaluates `rows_for(state, loss)` for every (state, loss) pair in parallel
/// and concatenates the results in state-major, then loss, order.
template <class RowsFor>
Table sweep_points(std::vector<std::string> columns, const Resolved& r, RowsFor rows_for) {
    const std::size_t count = r.states.size() * r.losses.size();
    std::vector<std::vector<std::vector<Cell>>> chunks(count);
    parallel_for(count, worker_count(), [&](std::size_t i) {
        const StateSpec& state = r.states[i / r.losses.size()];
        const LossPoint& loss = r.losses[i % r.losses.size()];
        chunks[i] = rows_for(state, loss);
    });
    Table t{std::move(columns), {}};
    for (auto& chunk : chunks) {
        for (auto& row : chunk) t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace detail

inline Table cmd_probs(const RunConfig& cfg, const Resolved& r) {
    return detail::sweep_points(
        {"state", "r_x", "r_y", "phi", "outcome_n", "outcome_m", "probability"}, r,
        [&](const StateSpec& state, const LossPoint& loss) {
            const LabelDistribution dist = label_distribution(state, loss, cfg, r.detect);
            std::vector<std::vector<Cell>> rows;
            for (double phi : r.phases) {
                for (const auto& [label, p] : dist) {
                    rows.push_back({state.render(), loss.r_x, loss.r_y, phi, label_cell(label, true),
                                    label_cell(label, false), p.evaluate(phi)});
                }
            }
            return rows;
        });
}

inline Table cmd_fisher(const RunConfig& cfg, const Resolved& r, std::ostream& warn) {
    std::mutex warn_mutex;
    std::vector<std::string> diagnostics;
    Table t = detail::sweep_points(
        {"state", "r_x", "r_y", "phi", "fisher", "crb"}, r,
        [&](const StateSpec& state, const LossPoint& loss) {
            const LabelDistribution dist = label_distribution(state, loss, cfg, r.detect);
            std::vector<std::vector<Cell>> rows;
            for (double phi : r.phases) {
                const FisherReport f = fisher_information(dist, phi);
                if (!f.diagnostic.empty()) {
                    std::lock_guard lock(warn_mutex);
                    diagnostics.push_back(state.render() + ": " + f.diagnostic);
                }
                rows.push_back({state.render(), loss.r_x, loss.r_y, phi, f.fisher, f.cramer_rao_bound});
            }
            return rows;
        });
    std::sort(diagnostics.begin(), diagnostics.end());
    for (const auto& d : diagnostics) warn << "warning: " << d << "\n";
    return t;
}

inline Table cmd_fidelity(const RunConfig& cfg, const Resolved& r) {
    return detail::sweep_points(
        {"state", "r_x", "r_y", "fidelity_bits", "quadrature_nodes"}, r,
        [&](const StateSpec& state, const LossPoint& loss) {
            const LabelDistribution dist = label_distribution(state, loss, cfg, r.detect);
            const FidelityResult h = fidelity(dist, r.prior, cfg.tol);
            return std::vector<std::vector<Cell>>{
                {state.render(), loss.r_x, loss.r_y, h.bits, static_cast<long long>(h.nodes)}};
        });
}

inline Table cmd_posterior(const RunConfig& cfg, const Resolved& r) {
    if (cfg.outcome.empty()) throw ConfigError("--outcome is required");
    const Label outcome = parse_label(cfg.outcome);
    if (cfg.grid_size < kMinPosteriorGrid) throw ConfigError("--grid-size must be at least 16");
    return detail::sweep_points(
        {"state", "r_x", "r_y", "outcome_n", "outcome_m", "phi", "density"}, r,
        [&](const StateSpec& state, const LossPoint& loss) {
            const LabelDistribution dist = label_distribution(state, loss, cfg, r.detect);
            const TabulatedDensity post = posterior(dist, outcome, r.prior, cfg.grid_size);
            std::vector<std::vector<Cell>> rows;
            for (std::size_t j = 0; j < post.phi.size(); ++j) {
                rows.push_back({state.render(), loss.r_x, loss.r_y, label_cell(outcome, true),
                                label_cell(outcome, false), post.phi[j], post.density[j]});
            }
            return rows;
        });
}

inline Table cmd_sweep(const RunConfig& cfg, const Resolved& r, std::ostream& warn) {
    if (cfg.metric == "fidelity") return cmd_fidelity(cfg, r);
    if (cfg.metric == "fisher") return cmd_fisher(cfg, r, warn);
    if (cfg.metric == "probs") return cmd_probs(cfg, r);
    throw ConfigError("--metric must be fidelity, fisher or probs");
}

/// Scattering-matrix entries on the phase grid, with the largest entry of
/// |S^dagger S - I| at each phase.
inline Table cmd_smatrix(const RunConfig& cfg, const Resolved& r) {
    if (cfg.transfer == "sin2") throw ConfigError("the sin2 transfer has no scattering matrix");
    Table t{{"r_x", "r_y", "phi", "row", "col", "re", "im", "unitarity_defect"}, {}};
    auto emit = [&](const auto& s, const LossPoint& loss) {
        for (double phi : r.phases) {
            const auto m = s.evaluate(phi);
            const double phase[] = {phi};
            const double defect = unitarity_defect(s, std::span<const double>(phase));
            for (std::size_t i = 0; i < m.size(); ++i) {
                for (std::size_t j = 0; j < m.size(); ++j) {
                    t.rows.push_back({loss.r_x, loss.r_y, phi, static_cast<long long>(i + 1),
                                      static_cast<long long>(j + 1), m[i][j].real(), m[i][j].imag(), defect});
                }
            }
        }
    };
    for (const auto& loss : r.losses) {
        if (cfg.transfer == "lossless-2x2") {
            emit(build_lossless_mz_2x2(), loss);
        } else {
            LossParameters params;
            params.r_x = loss.r_x;
            params.r_y = loss.r_y;
            emit(build_lossy_mz(params), loss);
        }
    }
    return t;
}

/// Runs one subcommand and writes its table. Returns the process exit code:
/// 0 on success, 2 on a configuration error, 3 on quadrature non-convergence.
inline int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out,
                       std::ostream& err) {
    try {
        const bool needs_state = command != "smatrix";
        const Resolved r = resolve(cfg, err, needs_state);
        Table t;
        if (command == "probs") {
            t = cmd_probs(cfg, r);
        } else if (command == "fisher") {
            t = cmd_fisher(cfg, r, err);
        } else if (command == "fidelity") {
            t = cmd_fidelity(cfg, r);
        } else if (command == "posterior") {
            t = cmd_posterior(cfg, r);
        } else if (command == "sweep") {
            t = cmd_sweep(cfg, r, err);
        } else if (command == "smatrix") {
            t = cmd_smatrix(cfg, r);
        } else {
            throw ConfigError("unknown command '" + command + "'");
        }
        if (cfg.out.empty()) {
            write_table(t, cfg.format, out);
        } else {
            std::ofstream file(cfg.out);
            if (!file) throw ConfigError("cannot write '" + cfg.out + "'");
            write_table(t, cfg.format, file);
        }
        return kExitOk;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UnreachableOutcome& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace mzi::cli
