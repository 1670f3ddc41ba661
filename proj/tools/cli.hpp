#pragma once

#include "manifest.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ksharp::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_args = 2,
    exit_blow_up = 3,
    exit_io = 4,
};

/// Environment variable that relocates relative output paths.
inline constexpr const char* output_dir_env = "KSHARP_OUTPUT_DIR";

/// Entry point shared by the executable and the tests; args exclude argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Initial field described by a manifest, plus the L-infinity change made by
/// the optional mollifier (0 when none is applied).
struct InitialField {
    State state;
    double mollification_linf = 0.0;
};
InitialField make_initial(const RunManifest& manifest);

std::string resolve_output(const std::string& path);

} // namespace ksharp::cli
