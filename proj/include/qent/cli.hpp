#pragma once

// Command implementations behind the `qent` executable. Each returns the
// process exit code: 0 success/pass, 1 verified failure or non-convergence,
// 2 input error. Diagnostics go to `err`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace qent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

struct MeasureOptions {
    std::string input;
    std::string output = "-";  // "-" writes to `out`
    std::string format = "json";
};

struct VerifyOptions {
    std::string checks;              // comma-separated check names, or "all"
    std::optional<std::string> dims; // per-check defaults when absent
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    std::optional<double> tolerance;
    std::string output = "-";
    std::string format = "json";
};

struct RoofOptions {
    std::string input;
    std::string measure = "concurrence";
    int restarts = 16;
    std::uint64_t seed = 0;
    std::size_t ensemble_size = 0;
    int max_iterations = 500;
    std::string output = "-";
};

struct SampleOptions {
    std::string kind = "pure";
    std::string dims = "2";
    std::size_t rank = 0;  // 0 selects full rank
    std::size_t count = 1;
    std::uint64_t seed = 0;
    std::string output_dir = ".";
};

int cmd_measure(const MeasureOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_roof(const RoofOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err);

// Sets the OpenMP worker count; values < 1 leave the runtime default.
void set_thread_count(int threads);

}  // namespace qent::cli
