#include "revlw/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

using namespace revlw;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kCheckFailure = 1,
    kUsage = 2,
    kInput = 3,
    kBudgetRefusal = 4,
};

/** Flag-level misuse detected after CLI11 parsing (bad ranges, bad combos). */
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

Rational flag_rational(const std::string& text, const char* flag) {
    try {
        return parse_rational(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

int default_threads() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/** Shared emission settings; timings are opt-in to keep reruns byte-identical. */
struct EmitOptions {
    std::string out = "human";
    bool timings = false;
};

void add_emit_flags(CLI::App* cmd, EmitOptions* emit, bool csv_allowed) {
    cmd->add_option("--out", emit->out, "Output format")
        ->check(CLI::IsMember(csv_allowed ? std::vector<std::string>{"human", "json", "csv"}
                                          : std::vector<std::string>{"human", "json"}));
    cmd->add_flag("--timings", emit->timings, "Include wall-clock timings in the output");
}

/** Every emission embeds this reproducibility record. */
struct Manifest {
    std::string command;
    std::string input;
    Json config = Json::object();  // echo of semantic flags; thread count excluded

    Json to_json() const {
        Json j;
        j["command"] = command;
        j["input"] = input;
        j["version"] = kVersion;
        j["config"] = config;
        return j;
    }

    void print_human(std::ostream& os) const {
        os << "revlw " << kVersion << " | " << command << " | " << input << "\n";
        if (!config.empty()) {
            os << "config:";
            for (const auto& [key, value] : config.items()) {
                os << ' ' << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
            }
            os << "\n";
        }
    }

    void print_csv_comment(std::ostream& os) const {
        os << "# revlw " << kVersion << " " << command << " " << input << "\n";
        for (const auto& [key, value] : config.items()) {
            os << "# " << key << '='
               << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
};

void print_kv(std::ostream& os, const std::string& key, const std::string& value) {
    os << "  " << std::left << std::setw(18) << key << value << "\n";
}

std::string rational_cell(const Rational& x) {
    return format_rational(x) + " (" + format_double(to_double(x)) + ")";
}

std::string rational_row(const VecQ& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_rational(v(i));
    }
    return s + "]";
}

std::string double_row(const VecD& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v(i));
    }
    return s + "]";
}

void emit_json(const Manifest& manifest, const char* key, Json result, const EmitOptions& emit,
               std::int64_t wall_ms) {
    Json j;
    j["manifest"] = manifest.to_json();
    if (emit.timings) j["manifest"]["wall_ms"] = wall_ms;
    j[key] = std::move(result);
    std::cout << j.dump(2) << "\n";
}

class Stopwatch {
  public:
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------
// info

int run_info(const std::string& path, const EmitOptions& emit) {
    const Stopwatch watch;
    const AnyPolytope any = load_polytope(path);
    const HPolytope p = as_h(any);
    const PolytopeSummary s = summarize(p);
    const Eigen::Index vertices = h_to_v(p).V.cols();

    Manifest manifest{"info", path, Json::object()};
    Json result;
    result["n"] = p.n;
    result["kind"] = std::holds_alternative<HPolytope>(any) ? "H" : "V";
    result["facets"] = static_cast<std::int64_t>(p.A.rows());
    result["vertices"] = static_cast<std::int64_t>(vertices);
    result["volume"] = format_rational(s.volume);
    result["surface_lo"] = format_rational(s.surface.lo);
    result["surface_hi"] = format_rational(s.surface.hi);
    result["iso_nu"] = format_rational(s.iso_nu);

    if (emit.out == "json") {
        emit_json(manifest, "summary", std::move(result), emit, watch.ms());
        return kOk;
    }
    manifest.print_human(std::cout);
    print_kv(std::cout, "n", std::to_string(p.n));
    print_kv(std::cout, "kind", result["kind"].get<std::string>());
    print_kv(std::cout, "facets", std::to_string(p.A.rows()));
    print_kv(std::cout, "vertices", std::to_string(vertices));
    print_kv(std::cout, "volume", rational_cell(s.volume));
    print_kv(std::cout, "surface_lo", rational_cell(s.surface.lo));
    print_kv(std::cout, "surface_hi", rational_cell(s.surface.hi));
    print_kv(std::cout, "iso_nu", rational_cell(s.iso_nu));
    if (emit.timings) print_kv(std::cout, "wall_ms", std::to_string(watch.ms()));
    return kOk;
}

// ---------------------------------------------------------------------------
// lw2d

int run_lw2d(const std::string& path, const EmitOptions& emit) {
    const Stopwatch watch;
    const HPolytope p = as_h(load_polytope(path));
    const Planar2dResult r = lw_exact_2d(p);

    Manifest manifest{"lw2d", path, Json::object()};
    Json result;
    result["lambda"] = format_rational(r.lambda);
    result["min_rect_area"] = format_rational(r.min_rect_area);
    result["edge_index"] = r.edge_index;
    Json dir = Json::array();
    for (Eigen::Index i = 0; i < r.direction.size(); ++i) {
        dir.push_back(format_rational(r.direction(i)));
    }
    result["direction"] = std::move(dir);

    if (emit.out == "json") {
        emit_json(manifest, "planar", std::move(result), emit, watch.ms());
        return kOk;
    }
    manifest.print_human(std::cout);
    print_kv(std::cout, "lambda", rational_cell(r.lambda));
    print_kv(std::cout, "min_rect_area", rational_cell(r.min_rect_area));
    print_kv(std::cout, "edge_index", std::to_string(r.edge_index));
    print_kv(std::cout, "direction", rational_row(r.direction));
    if (emit.timings) print_kv(std::cout, "wall_ms", std::to_string(watch.ms()));
    return kOk;
}

// ---------------------------------------------------------------------------
// search

struct SearchFlags {
    std::string mode = "certified";
    std::string tau;
    std::string delta = "1/2";
    std::string nu = "0";
    bool tau_given = false;
    bool delta_given = false;
    bool nu_given = false;
    bool budget_given = false;
    SearchConfig config;
    EmitOptions emit;
};

int run_search(const std::string& path, SearchFlags flags) {
    const Stopwatch watch;
    if (!flags.budget_given) {
        if (const char* env = std::getenv("REVLW_BUDGET")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0' || v == 0) {
                throw UsageError("REVLW_BUDGET: expected a positive integer");
            }
            flags.config.budget = v;
        }
    }

    Manifest manifest{"search", path, Json::object()};
    manifest.config["mode"] = flags.mode;
    SearchResult result;
    if (flags.mode == "heuristic") {
        if (flags.tau_given || flags.delta_given || flags.nu_given) {
            throw UsageError("--tau/--delta/--nu apply to certified mode only");
        }
        manifest.config["restarts"] = flags.config.restarts;
        manifest.config["seed"] = flags.config.seed;
        const HPolytope p = as_h(load_polytope(path));
        result = heuristic_search(p, flags.config);
    } else if (flags.tau_given) {
        if (flags.delta_given || flags.nu_given) {
            throw UsageError("--tau fixes the additive window; it excludes --delta/--nu");
        }
        const Rational tau = flag_rational(flags.tau, "--tau");
        if (tau <= 0 || tau > 1) throw UsageError("--tau: expected a rational in (0, 1]");
        manifest.config["tau"] = format_rational(tau);
        manifest.config["budget"] = flags.config.budget;
        const HPolytope p = as_h(load_polytope(path));
        const auto [sigma, scaled] = scale_to_unit_surface(p);
        result = structured_search(scaled, tau, flags.config);
        result.sigma = sigma;
    } else {
        const Rational delta = flag_rational(flags.delta, "--delta");
        if (delta <= 0 || delta >= 1) throw UsageError("--delta: expected a rational in (0, 1)");
        const Rational nu = flag_rational(flags.nu, "--nu");
        if (nu < 0) throw UsageError("--nu: expected a nonnegative rational");
        manifest.config["delta"] = format_rational(delta);
        manifest.config["nu"] = format_rational(nu);
        manifest.config["budget"] = flags.config.budget;
        const HPolytope p = as_h(load_polytope(path));
        result = lw_approx(p, delta, nu, flags.config);
    }

    if (flags.emit.out == "json") {
        Json j = search_result_to_json(result, flags.emit.timings);
        j["sigma"] = format_rational(result.sigma);
        j["delta"] = format_rational(result.delta);
        j["certificate_valid"] = result.certificate_valid;
        emit_json(manifest, "search", std::move(j), flags.emit, watch.ms());
        return kOk;
    }
    manifest.print_human(std::cout);
    print_kv(std::cout, "mode", result.mode);
    print_kv(std::cout, "psi", rational_cell(result.psi));
    print_kv(std::cout, "lambda_lower", rational_cell(result.lambda_lower));
    print_kv(std::cout, "tau", rational_cell(result.tau));
    print_kv(std::cout, "sigma", rational_cell(result.sigma));
    if (result.mode == "certified") {
        print_kv(std::cout, "delta", rational_cell(result.delta));
        print_kv(std::cout, "certificate_valid", result.certificate_valid ? "true" : "false");
    }
    for (Eigen::Index c = 0; c < result.frame.cols(); ++c) {
        print_kv(std::cout, "w" + std::to_string(c + 1), rational_row(result.frame.col(c)));
    }
    if (!result.r_choice.empty()) {
        std::string branch;
        for (const int idx : result.r_choice) {
            if (!branch.empty()) branch += ",";
            branch += std::to_string(idx);
        }
        print_kv(std::cout, "r_choice", "[" + branch + "]");
    }
    print_kv(std::cout, "evaluations", std::to_string(result.evaluations));
    if (flags.emit.timings) print_kv(std::cout, "wall_ms", std::to_string(watch.ms()));
    return kOk;
}

// ---------------------------------------------------------------------------
// minbox

int run_minbox(const std::string& path, const std::string& target, const SearchConfig& config,
               const EmitOptions& emit) {
    const Stopwatch watch;
    Manifest manifest{"minbox", path, Json::object()};
    manifest.config["target"] = target;
    manifest.config["restarts"] = config.restarts;
    manifest.config["seed"] = config.seed;

    const HPolytope p = as_h(load_polytope(path));
    const BoxMode mode = target == "body" ? BoxMode::Body : BoxMode::ProjectionBody;
    const MinBoxResult r = min_box(p, mode, config);

    Json result;
    result["target"] = target;
    result["box_volume"] = format_double(r.box_volume);
    if (mode == BoxMode::Body) {
        result["phi"] = format_double(r.phi);
    } else {
        result["psi"] = format_double(r.psi);
    }
    result["exact"] = r.exact;
    if (r.exact) {
        result["box_volume_exact"] = format_rational(r.box_volume_exact);
        Json dir = Json::array();
        for (Eigen::Index i = 0; i < r.direction_exact.size(); ++i) {
            dir.push_back(format_rational(r.direction_exact(i)));
        }
        result["direction_exact"] = std::move(dir);
    }
    Json frame = Json::array();
    for (Eigen::Index c = 0; c < r.frame.cols(); ++c) {
        Json column = Json::array();
        for (Eigen::Index i = 0; i < r.frame.rows(); ++i) {
            column.push_back(format_double(r.frame(i, c)));
        }
        frame.push_back(std::move(column));
    }
    result["frame"] = std::move(frame);

    if (emit.out == "json") {
        emit_json(manifest, "minbox", std::move(result), emit, watch.ms());
        return kOk;
    }
    manifest.print_human(std::cout);
    print_kv(std::cout, "target", target);
    print_kv(std::cout, "box_volume", format_double(r.box_volume));
    if (mode == BoxMode::Body) {
        print_kv(std::cout, "phi", format_double(r.phi));
    } else {
        print_kv(std::cout, "psi", format_double(r.psi));
    }
    if (r.exact) {
        print_kv(std::cout, "box_volume_exact", rational_cell(r.box_volume_exact));
        print_kv(std::cout, "direction_exact", rational_row(r.direction_exact));
    }
    for (Eigen::Index c = 0; c < r.frame.cols(); ++c) {
        print_kv(std::cout, "w" + std::to_string(c + 1), double_row(r.frame.col(c)));
    }
    if (emit.timings) print_kv(std::cout, "wall_ms", std::to_string(watch.ms()));
    return kOk;
}

// ---------------------------------------------------------------------------
// projbody

int run_projbody(const std::string& path, const EmitOptions& emit) {
    const Stopwatch watch;
    const HPolytope p = as_h(load_polytope(path));
    const Zonotope z = projection_body(p);

    Manifest manifest{"projbody", path, Json::object()};
    if (emit.out == "json") {
        emit_json(manifest, "zonotope", zonotope_to_json(z), emit, watch.ms());
        return kOk;
    }
    manifest.print_human(std::cout);
    print_kv(std::cout, "n", std::to_string(z.n));
    print_kv(std::cout, "generators", std::to_string(z.G.cols()));
    for (Eigen::Index c = 0; c < z.G.cols(); ++c) {
        print_kv(std::cout, "g" + std::to_string(c + 1), rational_row(z.G.col(c)));
    }
    if (emit.timings) print_kv(std::cout, "wall_ms", std::to_string(watch.ms()));
    return kOk;
}

// ---------------------------------------------------------------------------
// bounds / zhang

void print_entries_human(const std::vector<BoundsEntry>& entries) {
    std::cout << "  " << std::left << std::setw(22) << "check" << std::setw(4) << "rel"
              << std::setw(26) << "lhs" << std::setw(26) << "rhs" << std::setw(14) << "verdict"
              << "equality\n";
    for (const BoundsEntry& e : entries) {
        std::cout << "  " << std::left << std::setw(22) << e.name << std::setw(4) << e.relation
                  << std::setw(26) << format_double(e.lhs) << std::setw(26)
                  << format_double(e.rhs) << std::setw(14) << verdict_name(e.verdict)
                  << (e.equality ? "yes" : "no") << "\n";
    }
}

int entries_exit_code(const std::vector<BoundsEntry>& entries) {
    for (const BoundsEntry& e : entries) {
        if (e.verdict == Verdict::Violated) return kCheckFailure;
    }
    return kOk;
}

int run_bounds(const std::string& path, const BatteryConfig& config, const EmitOptions& emit) {
    const Stopwatch watch;
    Manifest manifest{"bounds", path, Json::object()};
    manifest.config["frames"] = config.frames;
    manifest.config["samples"] = static_cast<std::int64_t>(config.samples);
    manifest.config["restarts"] = config.restarts;
    manifest.config["seed"] = config.seed;

    const HPolytope p = as_h(load_polytope(path));
    const BoundsReport report = run_bounds_battery(p, config);

    if (emit.out == "json") {
        emit_json(manifest, "report", bounds_report_to_json(report), emit, watch.ms());
    } else if (emit.out == "csv") {
        manifest.print_csv_comment(std::cout);
        std::cout << bounds_report_to_csv(report);
    } else {
        manifest.print_human(std::cout);
        print_entries_human(report.entries);
        if (emit.timings) print_kv(std::cout, "wall_ms", std::to_string(watch.ms()));
    }
    return entries_exit_code(report.entries);
}

int run_zhang(const std::string& path, std::size_t samples, std::uint64_t seed, int threads,
              const EmitOptions& emit) {
    const Stopwatch watch;
    Manifest manifest{"zhang", path, Json::object()};
    manifest.config["samples"] = static_cast<std::int64_t>(samples);
    manifest.config["seed"] = seed;

    const HPolytope p = as_h(load_polytope(path));
    const ZhangReport mc = zhang_check(p, samples, seed, threads);
    const BoundsEntry entry = zhang_entry(mc);
    BoundsReport report;
    report.entries.push_back(entry);

    if (emit.out == "json") {
        Json result = bounds_report_to_json(report);
        result["ratio"] = format_double(mc.ratio);
        result["ratio_ci95"] = format_double(mc.ratio_ci95);
        emit_json(manifest, "report", std::move(result), emit, watch.ms());
    } else if (emit.out == "csv") {
        manifest.print_csv_comment(std::cout);
        std::cout << "# ratio=" << format_double(mc.ratio)
                  << " ratio_ci95=" << format_double(mc.ratio_ci95) << "\n";
        std::cout << bounds_report_to_csv(report);
    } else {
        manifest.print_human(std::cout);
        print_entries_human(report.entries);
        print_kv(std::cout, "ratio", format_double(mc.ratio));
        print_kv(std::cout, "ratio_ci95", format_double(mc.ratio_ci95));
        if (emit.timings) print_kv(std::cout, "wall_ms", std::to_string(watch.ms()));
    }
    return entries_exit_code(report.entries);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reverse Loomis-Whitney toolkit: exact planar constants, certified and "
                 "heuristic frame search, projection-body zonotopes, and inequality checks "
                 "for rational convex polytopes."};
    app.require_subcommand(1);

    std::string path;
    EmitOptions emit;
    SearchFlags search_flags;
    std::string minbox_target = "projection";
    BatteryConfig battery;
    std::size_t zhang_samples = 1000000;
    std::uint64_t zhang_seed = 1;
    int threads = default_threads();

    CLI::App* info = app.add_subcommand("info", "Volume, facet data, surface enclosure, iso bound");
    info->add_option("path", path, "Polytope JSON file")->required();
    add_emit_flags(info, &emit, false);

    CLI::App* lw2d = app.add_subcommand("lw2d", "Exact planar constant via edge enumeration");
    lw2d->add_option("path", path, "Polygon JSON file")->required();
    add_emit_flags(lw2d, &emit, false);

    CLI::App* search = app.add_subcommand("search", "Certified or heuristic best-frame search");
    search->add_option("path", path, "Polytope JSON file")->required();
    search->add_option("--mode", search_flags.mode, "certified | heuristic")
        ->check(CLI::IsMember({"certified", "heuristic"}));
    search->add_option("--tau", search_flags.tau, "Additive window for the scaled body (certified)");
    search->add_option("--delta", search_flags.delta, "Multiplicative guarantee (certified)");
    search->add_option("--nu", search_flags.nu, "Isoperimetric lower bound; 0 = derive from the body");
    search->add_option("--restarts", search_flags.config.restarts, "Heuristic restarts")
        ->check(CLI::PositiveNumber);
    search->add_option("--seed", search_flags.config.seed, "Heuristic RNG seed");
    search->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    search->add_option("--budget", search_flags.config.budget, "Evaluation budget (certified)")
        ->check(CLI::PositiveNumber);
    add_emit_flags(search, &emit, false);

    CLI::App* minbox = app.add_subcommand("minbox", "Minimal enclosing box of the body or its "
                                                    "projection body");
    minbox->add_option("path", path, "Polytope JSON file")->required();
    minbox->add_option("--target", minbox_target, "body | projection")
        ->check(CLI::IsMember({"body", "projection"}));
    minbox->add_option("--restarts", search_flags.config.restarts, "Sweep restarts")
        ->check(CLI::PositiveNumber);
    minbox->add_option("--seed", search_flags.config.seed, "Sweep RNG seed");
    minbox->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    add_emit_flags(minbox, &emit, false);

    CLI::App* projbody = app.add_subcommand("projbody", "Projection-body zonotope generators");
    projbody->add_option("path", path, "Polytope JSON file")->required();
    add_emit_flags(projbody, &emit, false);

    CLI::App* bounds = app.add_subcommand("bounds", "Run the inequality battery");
    bounds->add_option("path", path, "Polytope JSON file")->required();
    bounds->add_option("--frames", battery.frames, "Random frames for the upper-bound sweep")
        ->check(CLI::PositiveNumber);
    bounds->add_option("--samples", battery.samples, "MC samples for the volume inequality")
        ->check(CLI::PositiveNumber);
    bounds->add_option("--restarts", battery.restarts, "Heuristic restarts")
        ->check(CLI::PositiveNumber);
    bounds->add_option("--seed", battery.seed, "RNG seed");
    bounds->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    add_emit_flags(bounds, &emit, true);

    CLI::App* zhang = app.add_subcommand("zhang", "MC check of the volume inequality");
    zhang->add_option("path", path, "Polytope JSON file")->required();
    zhang->add_option("--samples", zhang_samples, "MC samples")->check(CLI::PositiveNumber);
    zhang->add_option("--seed", zhang_seed, "RNG seed");
    zhang->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    add_emit_flags(zhang, &emit, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (info->parsed()) return run_info(path, emit);
        if (lw2d->parsed()) return run_lw2d(path, emit);
        if (search->parsed()) {
            search_flags.tau_given = search->count("--tau") > 0;
            search_flags.delta_given = search->count("--delta") > 0;
            search_flags.nu_given = search->count("--nu") > 0;
            search_flags.budget_given = search->count("--budget") > 0;
            search_flags.config.threads = threads;
            search_flags.emit = emit;
            return run_search(path, search_flags);
        }
        if (minbox->parsed()) {
            search_flags.config.threads = threads;
            return run_minbox(path, minbox_target, search_flags.config, emit);
        }
        if (projbody->parsed()) return run_projbody(path, emit);
        if (bounds->parsed()) {
            battery.threads = threads;
            return run_bounds(path, battery, emit);
        }
        if (zhang->parsed()) return run_zhang(path, zhang_samples, zhang_seed, threads, emit);
        std::cerr << "error: no subcommand\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        std::cerr << "minimal feasible tau at this budget: "
                  << format_rational(e.minimal_feasible_tau) << " ("
                  << format_double(to_double(e.minimal_feasible_tau)) << ")\n";
        return kBudgetRefusal;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailure;
    }
}
