#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rho::cli {

/// One invariant: passes when `measured` is at most `tolerance`.
struct CheckResult {
    std::string suite;
    std::string name;
    double measured;
    double tolerance;
    bool passed;
    std::string detail;
};

struct VerifyConfig {
    std::vector<double> lambda_set{-1.0, -0.5, 0.0, 0.5, 1.0};
    double mass = 2.0;
    double omega = 1.0;
    int grid = 1024;
    std::uint64_t seed = 20240601;
};

inline constexpr std::string_view kSuites[] = {"classical", "quantum", "limits", "special"};

/// Runs one suite by name, or every suite for "all".
/// Throws InvalidArgument for an unknown suite name.
std::vector<CheckResult> run_suite(std::string_view suite, const VerifyConfig& config);

std::vector<CheckResult> classical_suite(const VerifyConfig& config);
std::vector<CheckResult> quantum_suite(const VerifyConfig& config);
std::vector<CheckResult> limits_suite(const VerifyConfig& config);
std::vector<CheckResult> special_suite(const VerifyConfig& config);

}  // namespace rho::cli
