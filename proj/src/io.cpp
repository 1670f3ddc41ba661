#include "ksharp/io.hpp"

#include "ksharp/format.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ksharp {

namespace {

double parse_double(std::string_view field, std::size_t line)
{
    while (!field.empty() && (field.front() == ' ' || field.front() == '"')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '"' || field.back() == '\r')) field.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw FormatError("line " + std::to_string(line) + ": '" + std::string(field) + "' is not a number");
    }
    return v;
}

SnapshotSeries parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty snapshot file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,x,u") throw FormatError("snapshot CSV must start with the header 't,x,u'");

    std::vector<double> times;
    std::vector<std::vector<double>> fields;
    std::vector<double> xs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
            throw FormatError("line " + std::to_string(lineno) + ": expected three fields");
        }
        const std::string_view view(line);
        const double t = parse_double(view.substr(0, c1), lineno);
        const double x = parse_double(view.substr(c1 + 1, c2 - c1 - 1), lineno);
        const double u = parse_double(view.substr(c2 + 1), lineno);
        if (times.empty() || t != times.back()) {
            if (!times.empty() && t < times.back()) throw FormatError("snapshot times must be increasing");
            times.push_back(t);
            fields.emplace_back();
        }
        if (times.size() == 1) xs.push_back(x);
        else if (fields.back().size() >= xs.size() || xs[fields.back().size()] != x) {
            throw FormatError("line " + std::to_string(lineno) + ": grid differs between snapshots");
        }
        fields.back().push_back(u);
    }
    if (times.empty()) throw FormatError("snapshot file holds no data");
    for (const auto& f : fields) {
        if (f.size() != xs.size()) throw FormatError("snapshot with a truncated field");
    }
    if (xs.size() < 2 || xs[0] != 0.0) throw FormatError("snapshot grid must start at x = 0");
    const double h = xs[1];
    SnapshotSeries s;
    try {
        s.grid = Grid(h * static_cast<double>(xs.size()), xs.size());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("invalid snapshot grid: ") + e.what());
    }
    s.times = std::move(times);
    s.fields = std::move(fields);
    return s;
}

SnapshotSeries parse_json(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        SnapshotSeries s;
        s.grid = Grid(j.at("grid").at("length").get<double>(), j.at("grid").at("npoints").get<std::size_t>());
        s.params = HierarchyParams(j.at("params").at("n").get<int>(), j.at("params").at("m").get<int>());
        s.times = j.at("times").get<std::vector<double>>();
        s.fields = j.at("fields").get<std::vector<std::vector<double>>>();
        if (s.times.size() != s.fields.size()) throw FormatError("times and fields differ in length");
        for (const auto& f : s.fields) {
            if (f.size() != s.grid.npoints()) throw FormatError("field length differs from grid npoints");
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed snapshot JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("invalid snapshot JSON: ") + e.what());
    }
}

} // namespace

void SnapshotSeries::append(const State& s)
{
    times.push_back(s.time);
    fields.push_back(s.values);
}

void SnapshotSeries::write_csv(std::ostream& os) const
{
    os << "t,x,u\r\n";
    for (std::size_t r = 0; r < times.size(); ++r) {
        const std::string t = fmt_double(times[r]);
        for (std::size_t j = 0; j < fields[r].size(); ++j) {
            os << t << ',' << fmt_double(grid.x(j)) << ',' << fmt_double(fields[r][j]) << "\r\n";
        }
    }
}

std::string SnapshotSeries::to_json() const
{
    nlohmann::ordered_json j;
    j["grid"] = {{"length", grid.length()}, {"npoints", grid.npoints()}};
    j["params"] = {{"n", params.n}, {"m", params.m}};
    j["times"] = times;
    j["fields"] = fields;
    return j.dump();
}

SnapshotSeries SnapshotSeries::parse(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text);
    return parse_csv(text);
}

SnapshotSeries SnapshotSeries::load(const std::string& path) { return parse(read_file(path)); }

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw std::ios_base::failure("failed writing '" + path + "'");
}

} // namespace ksharp
