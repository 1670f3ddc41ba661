#pragma once

#include "ksharp/model.hpp"
#include "ksharp/simulate.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksharp {

/// Raised for unreadable or malformed data files.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fields stored at a sequence of times on one grid.
///
/// CSV layout: header `t,x,u`, one row per grid point and time, times in
/// increasing order, x_j = j h.
/// JSON layout: {"grid": {"length", "npoints"}, "params": {"n", "m"},
///               "times": [...], "fields": [[...], ...]}.
struct SnapshotSeries {
    Grid grid{1.0, 16};
    HierarchyParams params;
    std::vector<double> times;
    std::vector<std::vector<double>> fields;

    void append(const State& s);

    void write_csv(std::ostream& os) const;
    std::string to_json() const;

    /// Accepts either layout; JSON is recognized by a leading '{'. CSV files
    /// carry no exponents, so `params` keeps its default for them.
    static SnapshotSeries parse(const std::string& text);
    static SnapshotSeries load(const std::string& path);
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace ksharp
