#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rho::cli {

enum ExitCode : int {
    kSuccess = 0,
    kRuntimeFailure = 1,
    kUsageError = 2,
    kVerificationFailure = 3,
};

/// Parses and executes one command line. `args` excludes the program name.
/// Never throws; every failure maps to an exit code with a message on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

enum class ScanParameter { lambda, mass_ratio };

struct ScanConfig {
    ScanParameter parameter = ScanParameter::lambda;
    double from = -1.0;
    double to = 1.0;
    int steps = 11;
    bool logarithmic = false;
    std::vector<int> levels{0};
    double lambda = 0.0;  // fixed value when scanning the mass ratio
    double omega = 1.0;
    double mass = 1.0;    // fixed value when scanning lambda
};

/// One (point, n) entry; `energy` is empty when n is not a bound level.
struct ScanRow {
    double value;
    double lambda;
    double omega;
    double mass;
    int n;
    std::optional<double> energy;
};

/// Parameter values of the scan in order. Throws InvalidArgument for a
/// malformed range.
std::vector<double> scan_points(const ScanConfig& config);

/// Evaluates the scan on up to `threads` workers; rows come back in point
/// order, then in the order of config.levels.
std::vector<ScanRow> compute_scan(const ScanConfig& config, int threads);

/// RHO_NUM_THREADS if set to a positive integer, else the hardware count.
int scan_thread_limit();

}  // namespace rho::cli
