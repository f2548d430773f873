#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cli/output.hpp"
#include "cli/verification.hpp"
#include "json.hpp"
#include "rho/classical.hpp"
#include "rho/errors.hpp"
#include "rho/quantum_numeric.hpp"
#include "rho/spectrum.hpp"

namespace rho::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kUnitsNote =
    "All quantities are in natural units (hbar = c = 1); omega sets the scale.";

struct ModelFlags {
    double lambda = 0.0;
    double omega = 1.0;
    double mass = 1.0;

    ModelParameters parameters() const { return ModelParameters(lambda, omega, mass); }
};

struct OutputFlags {
    std::string format = "json";
    std::string path;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
    cmd->add_option("--lambda", flags.lambda, "Deformation parameter lambda")->capture_default_str();
    cmd->add_option("--omega", flags.omega, "Oscillator frequency omega > 0")->capture_default_str();
    cmd->add_option("--mass", flags.mass, "Particle mass m > 0")->capture_default_str();
}

void add_output_flags(CLI::App* cmd, OutputFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", flags.path, "Write to this file instead of standard output");
}

void emit(const OutputFlags& flags, const std::string& text, std::ostream& out) {
    if (flags.path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(flags.path, std::ios::binary);
    if (!file) {
        throw InvalidArgument("cannot open output file '" + flags.path + "'");
    }
    file << text;
    if (!file) {
        throw Error("failed writing output file '" + flags.path + "'");
    }
}

std::string dump(const json& document) { return document.dump(2) + "\n"; }

std::string optional_cell(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string();
}

std::string finite_cell(double value) {
    return std::isfinite(value) ? format_number(value) : std::string();
}

json model_json(std::string_view command, const ModelParameters& params) {
    return json{{"command", command},
                {"lambda", json_number(params.lambda())},
                {"omega", json_number(params.omega())},
                {"mass", json_number(params.mass())}};
}

void model_metadata(CsvTable& table, const ModelParameters& params) {
    table.add_metadata("lambda", format_number(params.lambda()));
    table.add_metadata("omega", format_number(params.omega()));
    table.add_metadata("mass", format_number(params.mass()));
}

// ---------------------------------------------------------------- spectrum

struct SpectrumFlags {
    ModelFlags model;
    OutputFlags output;
    int levels = 5;
    bool verify = false;
    int grid = 1024;
    double tolerance = 1e-6;
};

int cmd_spectrum(const SpectrumFlags& flags, bool levels_given, std::ostream& out,
                 std::ostream& err) {
    const ModelParameters params = flags.model.parameters();
    DiscreteSpectrum spectrum = discrete_spectrum(params, flags.levels);
    if (levels_given && static_cast<int>(spectrum.levels.size()) > flags.levels) {
        spectrum.levels.resize(static_cast<std::size_t>(flags.levels));
    }
    const int k = static_cast<int>(spectrum.levels.size());

    std::vector<std::optional<double>> numeric(spectrum.levels.size());
    bool agree = true;
    if (flags.verify) {
        try {
            const numeric::NumericalSpectrum result = numeric::sturm_liouville_eigen(
                params, k, numeric::default_grid(params, flags.grid), {flags.tolerance, false, true});
            for (int i = 0; i < k; ++i) {
                numeric[i] = result.energies[i];
                const double e = spectrum.levels[i].energy;
                agree = agree && std::abs(result.energies[i] - e) <= flags.tolerance * e;
            }
        } catch (const ConvergenceError& e) {
            err << "error: numerical oracle failed: " << e.what() << '\n';
            return kVerificationFailure;
        } catch (const InvalidArgument& e) {
            err << "error: numerical oracle failed: " << e.what() << '\n';
            return kVerificationFailure;
        }
    }

    std::string text;
    if (flags.output.format == "json") {
        json doc = model_json("spectrum", params);
        json levels = json::array();
        for (int i = 0; i < k; ++i) {
            const QuantumLevel& level = spectrum.levels[i];
            json entry{{"n", level.n},
                       {"s", json_number(level.s)},
                       {"nprime", level.nprime},
                       {"p", json_number(level.p)},
                       {"E", json_number(level.energy)}};
            if (flags.verify) {
                entry["E_numeric"] = json_number(numeric[i]);
                entry["abs_diff"] = json_number(std::abs(*numeric[i] - level.energy));
            }
            levels.push_back(std::move(entry));
        }
        doc["levels"] = std::move(levels);
        if (spectrum.n_max) {
            doc["n_max"] = *spectrum.n_max;
        }
        if (spectrum.continuum_threshold) {
            doc["continuum_threshold"] = json_number(*spectrum.continuum_threshold);
        }
        if (flags.verify) {
            doc["verified"] = agree;
        }
        text = dump(doc);
    } else {
        CsvTable table({"n", "s", "nprime", "p", "E", "E_numeric", "abs_diff"});
        model_metadata(table, params);
        if (spectrum.n_max) {
            table.add_metadata("n_max", std::to_string(*spectrum.n_max));
        }
        if (spectrum.continuum_threshold) {
            table.add_metadata("continuum_threshold", format_number(*spectrum.continuum_threshold));
        }
        for (int i = 0; i < k; ++i) {
            const QuantumLevel& level = spectrum.levels[i];
            std::optional<double> diff;
            if (numeric[i]) {
                diff = std::abs(*numeric[i] - level.energy);
            }
            table.add_row({std::to_string(level.n), format_number(level.s),
                           std::to_string(level.nprime), finite_cell(level.p),
                           format_number(level.energy), optional_cell(numeric[i]),
                           optional_cell(diff)});
        }
        std::ostringstream s;
        table.write(s);
        text = s.str();
    }
    emit(flags.output, text, out);
    if (!agree) {
        err << "error: analytic and numerical energies differ beyond tolerance " << flags.tolerance
            << '\n';
        return kVerificationFailure;
    }
    return kSuccess;
}

// -------------------------------------------------------------- trajectory

struct TrajectoryFlags {
    ModelFlags model;
    OutputFlags output{"csv", {}};
    double energy = 0.0;
    double t_max = 10.0;
    double dt = 0.01;
};

int cmd_trajectory(const TrajectoryFlags& flags, std::ostream& out, std::ostream& err) {
    const ModelParameters params = flags.model.parameters();
    if (!(flags.t_max > 0.0) || !(flags.dt > 0.0)) {
        throw InvalidArgument("--t-max and --dt must be positive");
    }
    const MotionClass motion = classify_motion(params, flags.energy);
    std::optional<ClassicalOrbit> orbit;
    if (motion == MotionClass::oscillatory) {
        orbit = orbit_from_energy(params, flags.energy);
    } else {
        err << "warning: " << to_string(motion) << " motion (E = " << format_number(flags.energy)
            << " is not below the threshold " << format_number(*continuum_threshold(params))
            << "); analytic columns are left empty\n";
    }
    const double ratio = params.mass() / flags.energy;
    const double v0 = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    const GeodesicPath path = integrate_geodesic(params, 0.0, v0, flags.t_max, flags.dt);

    struct Row {
        double t;
        std::optional<double> analytic;
        double numeric;
        std::optional<double> diff;
        double drift;
    };
    std::vector<Row> rows;
    rows.reserve(path.samples.size());
    for (const PathSample& sample : path.samples) {
        Row row{sample.t, std::nullopt, sample.x, std::nullopt, 0.0};
        if (orbit) {
            row.analytic = trajectory_position(*orbit, sample.t);
            row.diff = std::abs(sample.x - *row.analytic);
        }
        row.drift = std::abs(energy_from_state(params, sample.x, sample.v) - path.energy) / path.energy;
        rows.push_back(row);
    }

    std::string text;
    if (flags.output.format == "json") {
        json doc = model_json("trajectory", params);
        doc["energy"] = json_number(flags.energy);
        doc["motion"] = std::string(to_string(motion));
        doc["omega_eff"] = orbit ? json_number(orbit->omega_eff) : json(nullptr);
        doc["amplitude"] = orbit ? json_number(orbit->amplitude) : json(nullptr);
        json samples = json::array();
        for (const Row& row : rows) {
            samples.push_back({{"t", json_number(row.t)},
                               {"x_analytic", json_number(row.analytic)},
                               {"x_numeric", json_number(row.numeric)},
                               {"abs_diff", json_number(row.diff)},
                               {"energy_drift", json_number(row.drift)}});
        }
        doc["samples"] = std::move(samples);
        text = dump(doc);
    } else {
        CsvTable table({"t", "x_analytic", "x_numeric", "abs_diff", "energy_drift"});
        model_metadata(table, params);
        table.add_metadata("energy", format_number(flags.energy));
        table.add_metadata("motion", std::string(to_string(motion)));
        if (orbit) {
            table.add_metadata("omega_eff", format_number(orbit->omega_eff));
            table.add_metadata("amplitude", format_number(orbit->amplitude));
        }
        for (const Row& row : rows) {
            table.add_row({format_number(row.t), optional_cell(row.analytic),
                           format_number(row.numeric), optional_cell(row.diff),
                           format_number(row.drift)});
        }
        std::ostringstream s;
        table.write(s);
        text = s.str();
    }
    emit(flags.output, text, out);
    return kSuccess;
}

// ------------------------------------------------------------ wavefunction

struct WavefunctionFlags {
    ModelFlags model;
    OutputFlags output{"csv", {}};
    int n = 0;
    int points = 513;
    double extent = 0.0;
};

double default_extent(const ModelParameters& params, const QuantumLevel& level) {
    if (params.lambda() < 0.0) {
        return horizon_radius(params);
    }
    const double length = 1.0 / std::sqrt(params.mass() * params.omega());
    const double turning = level.energy > params.mass() ? amplitude(params, level.energy) : 0.0;
    return 4.0 * (turning + length);
}

int cmd_wavefunction(const WavefunctionFlags& flags, std::ostream& out) {
    const ModelParameters params = flags.model.parameters();
    const QuantumLevel level = energy_level(params, flags.n);
    if (flags.points < 2) {
        throw InvalidArgument("--grid needs at least 2 points");
    }
    if (flags.extent < 0.0 || (params.lambda() < 0.0 && flags.extent > horizon_radius(params))) {
        throw InvalidArgument("--extent must be positive and inside the horizon");
    }
    const double extent = flags.extent > 0.0 ? flags.extent : default_extent(params, level);
    const numeric::NormalizedMode mode =
        numeric::normalize(params, level, numeric::default_grid(params));

    // cell midpoints: never on the lambda < 0 horizon
    std::vector<double> xs(static_cast<std::size_t>(flags.points));
    std::vector<double> values(xs.size());
    const double width = 2.0 * extent / flags.points;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = -extent + (static_cast<double>(i) + 0.5) * width;
        values[i] = mode(xs[i]);
    }
    const int nodes = numeric::sign_changes(values);

    std::string text;
    if (flags.output.format == "json") {
        json doc = model_json("wavefunction", params);
        doc["n"] = level.n;
        doc["E"] = json_number(level.energy);
        doc["norm_factor"] = json_number(mode.norm_factor);
        doc["node_count"] = nodes;
        json samples = json::array();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            samples.push_back({{"x", json_number(xs[i])}, {"U_normalized", json_number(values[i])}});
        }
        doc["samples"] = std::move(samples);
        text = dump(doc);
    } else {
        CsvTable table({"x", "U_normalized"});
        model_metadata(table, params);
        table.add_metadata("n", std::to_string(level.n));
        table.add_metadata("E", format_number(level.energy));
        table.add_metadata("norm_factor", format_number(mode.norm_factor));
        table.add_metadata("node_count", std::to_string(nodes));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            table.add_row({format_number(xs[i]), format_number(values[i])});
        }
        std::ostringstream s;
        table.write(s);
        text = s.str();
    }
    emit(flags.output, text, out);
    return kSuccess;
}

// ------------------------------------------------------------------ verify

struct VerifyFlags {
    OutputFlags output;
    std::string suite = "all";
    std::string lambda_set = "-1,-0.5,0,0.5,1";
    double mass = 2.0;
    double omega = 1.0;
    int grid = 1024;
};

std::vector<double> parse_number_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw InvalidArgument(flag + " contains an empty entry");
        }
        item = item.substr(first, last - first + 1);
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size() || !std::isfinite(v)) {
            throw InvalidArgument(flag + ": '" + item + "' is not a finite number");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw InvalidArgument(flag + " is empty");
    }
    return values;
}

int cmd_verify(const VerifyFlags& flags, std::ostream& out, std::ostream& err) {
    VerifyConfig config;
    config.lambda_set = parse_number_list(flags.lambda_set, "--lambda-set");
    config.mass = flags.mass;
    config.omega = flags.omega;
    config.grid = flags.grid;
    for (double lambda : config.lambda_set) {
        (void)validate(lambda, config.omega, config.mass);
    }
    const std::vector<CheckResult> results = run_suite(flags.suite, config);
    const bool all_passed =
        std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });

    std::string text;
    if (flags.output.format == "json") {
        json checks = json::array();
        for (const CheckResult& r : results) {
            checks.push_back({{"suite", r.suite},
                              {"name", r.name},
                              {"measured", json_number(r.measured)},
                              {"tolerance", json_number(r.tolerance)},
                              {"passed", r.passed},
                              {"detail", r.detail}});
        }
        json lambdas = json::array();
        for (double lambda : config.lambda_set) {
            lambdas.push_back(json_number(lambda));
        }
        json doc{{"command", "verify"},
                 {"suite", flags.suite},
                 {"lambda_set", std::move(lambdas)},
                 {"omega", json_number(config.omega)},
                 {"mass", json_number(config.mass)},
                 {"checks", std::move(checks)},
                 {"passed", all_passed}};
        text = dump(doc);
    } else {
        CsvTable table({"suite", "name", "measured", "tolerance", "passed"});
        table.add_metadata("omega", format_number(config.omega));
        table.add_metadata("mass", format_number(config.mass));
        for (const CheckResult& r : results) {
            table.add_row({r.suite, r.name, finite_cell(r.measured), format_number(r.tolerance),
                           r.passed ? "true" : "false"});
        }
        std::ostringstream s;
        table.write(s);
        text = s.str();
    }
    emit(flags.output, text, out);
    for (const CheckResult& r : results) {
        if (!r.passed) {
            err << "FAIL " << r.suite << '/' << r.name << ": measured " << format_number(r.measured)
                << " > " << format_number(r.tolerance) << " (" << r.detail << ")\n";
        }
    }
    return all_passed ? kSuccess : kVerificationFailure;
}

// -------------------------------------------------------------------- scan

struct ScanFlags {
    OutputFlags output;
    std::string parameter = "lambda";
    ScanConfig config;
};

int cmd_scan(const ScanFlags& flags, std::ostream& out) {
    const ScanConfig& config = flags.config;
    const std::vector<ScanRow> rows = compute_scan(config, scan_thread_limit());

    std::string text;
    if (flags.output.format == "json") {
        json entries = json::array();
        for (const ScanRow& row : rows) {
            std::optional<double> gap;
            if (row.energy) {
                gap = (*row.energy - row.mass) / row.omega;
            }
            entries.push_back({{"value", json_number(row.value)},
                               {"lambda", json_number(row.lambda)},
                               {"omega", json_number(row.omega)},
                               {"mass", json_number(row.mass)},
                               {"n", row.n},
                               {"E", json_number(row.energy)},
                               {"gap_over_omega", json_number(gap)}});
        }
        json doc{{"command", "scan"},
                 {"param", flags.parameter},
                 {"log", config.logarithmic},
                 {"rows", std::move(entries)}};
        text = dump(doc);
    } else {
        CsvTable table({"value", "lambda", "omega", "mass", "n", "E", "gap_over_omega"});
        table.add_metadata("param", flags.parameter);
        for (const ScanRow& row : rows) {
            std::optional<double> gap;
            if (row.energy) {
                gap = (*row.energy - row.mass) / row.omega;
            }
            table.add_row({format_number(row.value), format_number(row.lambda),
                           format_number(row.omega), format_number(row.mass), std::to_string(row.n),
                           optional_cell(row.energy), optional_cell(gap)});
        }
        std::ostringstream s;
        table.write(s);
        text = s.str();
    }
    emit(flags.output, text, out);
    return kSuccess;
}

}  // namespace

std::vector<double> scan_points(const ScanConfig& config) {
    if (config.steps < 1) {
        throw InvalidArgument("--steps must be at least 1");
    }
    if (!std::isfinite(config.from) || !std::isfinite(config.to)) {
        throw InvalidArgument("scan range must be finite");
    }
    if (config.logarithmic && (config.from <= 0.0 || config.to <= 0.0)) {
        throw InvalidArgument("a logarithmic scan needs a positive range");
    }
    if (config.parameter == ScanParameter::mass_ratio && std::min(config.from, config.to) <= 0.0) {
        throw InvalidArgument("mass ratio must be positive");
    }
    if (config.levels.empty()) {
        throw InvalidArgument("--n needs at least one level");
    }
    for (int n : config.levels) {
        if (n < 0) {
            throw InvalidArgument("--n entries must be non-negative");
        }
    }
    std::vector<double> points(static_cast<std::size_t>(config.steps));
    for (int i = 0; i < config.steps; ++i) {
        if (config.steps == 1) {
            points[0] = config.from;
            break;
        }
        const double f = static_cast<double>(i) / (config.steps - 1);
        points[i] = config.logarithmic
                        ? std::exp(std::log(config.from) + f * (std::log(config.to) - std::log(config.from)))
                        : config.from + f * (config.to - config.from);
    }
    points.front() = config.from;
    points.back() = config.steps == 1 ? config.from : config.to;
    return points;
}

std::vector<ScanRow> compute_scan(const ScanConfig& config, int threads) {
    const std::vector<double> points = scan_points(config);
    const std::size_t per_point = config.levels.size();
    std::vector<ScanRow> rows(points.size() * per_point);
    std::vector<std::exception_ptr> errors(points.size());

    auto evaluate = [&](std::size_t i) {
        try {
            const double value = points[i];
            const double lambda = config.parameter == ScanParameter::lambda ? value : config.lambda;
            const double mass =
                config.parameter == ScanParameter::mass_ratio ? value * config.omega : config.mass;
            const ModelParameters params(lambda, config.omega, mass);
            const std::optional<int> n_max = max_principal_number(params);
            for (std::size_t j = 0; j < per_point; ++j) {
                const int n = config.levels[j];
                std::optional<double> energy;
                if (!n_max || n <= *n_max) {
                    energy = energy_level(params, n).energy;
                }
                rows[i * per_point + j] = {value, lambda, config.omega, mass, n, energy};
            }
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t workers =
        std::min(points.size(), static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            evaluate(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < points.size(); i = next++) {
                    evaluate(i);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

int scan_thread_limit() {
    if (const char* env = std::getenv("RHO_NUM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<int>(std::min(v, 1024L));
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Relativistic harmonic oscillator models: spectra, trajectories, wavefunctions, "
                 "verification and scans.",
                 "rho"};
    app.footer(kUnitsNote);
    app.require_subcommand(1);

    SpectrumFlags spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Analytic energy levels");
    add_model_flags(spectrum_cmd, spectrum.model);
    auto* levels_opt = spectrum_cmd
                           ->add_option("--levels", spectrum.levels,
                                        "Number of levels (lambda > 0: at most n_max + 1; all "
                                        "bound levels when omitted)")
                           ->check(CLI::PositiveNumber)
                           ->capture_default_str();
    spectrum_cmd->add_flag("--verify", spectrum.verify,
                           "Compare against the finite-difference eigensolver");
    spectrum_cmd->add_option("--grid", spectrum.grid, "Eigensolver base intervals")
        ->check(CLI::Range(16, 1 << 20))
        ->capture_default_str();
    spectrum_cmd->add_option("--tolerance", spectrum.tolerance, "Relative agreement tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(spectrum_cmd, spectrum.output);

    TrajectoryFlags trajectory;
    auto* trajectory_cmd = app.add_subcommand("trajectory", "Classical geodesic from x = 0");
    add_model_flags(trajectory_cmd, trajectory.model);
    trajectory_cmd->add_option("--energy", trajectory.energy, "Conserved energy E >= m")->required();
    trajectory_cmd->add_option("--t-max", trajectory.t_max, "Final coordinate time")
        ->capture_default_str();
    trajectory_cmd->add_option("--dt", trajectory.dt, "Sampling interval")->capture_default_str();
    add_output_flags(trajectory_cmd, trajectory.output);

    WavefunctionFlags wavefunction;
    auto* wavefunction_cmd = app.add_subcommand("wavefunction", "Normalized bound-state mode");
    add_model_flags(wavefunction_cmd, wavefunction.model);
    wavefunction_cmd->add_option("--n", wavefunction.n, "Principal number")
        ->required()
        ->check(CLI::NonNegativeNumber);
    wavefunction_cmd->add_option("--grid", wavefunction.points, "Number of sample points")
        ->capture_default_str();
    wavefunction_cmd->add_option("--extent", wavefunction.extent,
                                 "Half-width of the sampled interval (default: horizon for "
                                 "lambda < 0, a few classical amplitudes otherwise)");
    add_output_flags(wavefunction_cmd, wavefunction.output);

    VerifyFlags verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites against numerical oracles");
    verify_cmd->add_option("--suite", verify.suite, "Suite to run")
        ->check(CLI::IsMember({"classical", "quantum", "limits", "special", "all"}))
        ->capture_default_str();
    verify_cmd->add_option("--lambda-set", verify.lambda_set, "Comma-separated lambda values")
        ->capture_default_str();
    verify_cmd->add_option("--mass", verify.mass, "Particle mass")->capture_default_str();
    verify_cmd->add_option("--omega", verify.omega, "Oscillator frequency")->capture_default_str();
    verify_cmd->add_option("--grid", verify.grid, "Eigensolver base intervals")
        ->check(CLI::Range(16, 1 << 20))
        ->capture_default_str();
    add_output_flags(verify_cmd, verify.output);

    ScanFlags scan;
    auto* scan_cmd = app.add_subcommand("scan", "Energy levels over a lambda or mass-ratio range");
    scan_cmd->add_option("--param", scan.parameter, "Scanned parameter")
        ->check(CLI::IsMember({"lambda", "mass-ratio"}))
        ->capture_default_str();
    scan_cmd->add_option("--from", scan.config.from, "First value")->required();
    scan_cmd->add_option("--to", scan.config.to, "Last value")->capture_default_str();
    scan_cmd->add_option("--steps", scan.config.steps, "Number of points")->capture_default_str();
    scan_cmd->add_flag("--log", scan.config.logarithmic, "Geometric spacing");
    scan_cmd->add_option("--n", scan.config.levels, "Comma-separated principal numbers")
        ->delimiter(',');
    scan_cmd->add_option("--lambda", scan.config.lambda, "Fixed lambda for a mass-ratio scan")
        ->capture_default_str();
    scan_cmd->add_option("--omega", scan.config.omega, "Oscillator frequency")->capture_default_str();
    scan_cmd->add_option("--mass", scan.config.mass, "Fixed mass for a lambda scan")
        ->capture_default_str();
    add_output_flags(scan_cmd, scan.output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (spectrum_cmd->parsed()) {
            return cmd_spectrum(spectrum, levels_opt->count() > 0, out, err);
        }
        if (trajectory_cmd->parsed()) {
            return cmd_trajectory(trajectory, out, err);
        }
        if (wavefunction_cmd->parsed()) {
            return cmd_wavefunction(wavefunction, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(verify, out, err);
        }
        if (scan_cmd->parsed()) {
            scan.config.parameter =
                scan.parameter == "lambda" ? ScanParameter::lambda : ScanParameter::mass_ratio;
            return cmd_scan(scan, out);
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const OutsideDomain& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ForbiddenEnergy& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const NotNormalizable& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    err << "error: no subcommand\n";
    return kUsageError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

}  // namespace rho::cli
