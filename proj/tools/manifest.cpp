#include "manifest.hpp"

#include "ksharp/format.hpp"

#include "json.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ksharp::cli {

std::string to_string(InitialData d)
{
    switch (d) {
    case InitialData::zero: return "zero";
    case InitialData::kdv_soliton: return "kdv_soliton";
    case InitialData::peakompacton: return "peakompacton";
    case InitialData::gaussian: return "gaussian";
    }
    return "zero";
}

InitialData initial_data_from_string(const std::string& s)
{
    if (s == "zero") return InitialData::zero;
    if (s == "kdv_soliton") return InitialData::kdv_soliton;
    if (s == "peakompacton") return InitialData::peakompacton;
    if (s == "gaussian") return InitialData::gaussian;
    throw std::invalid_argument("unknown initial data '" + s + "'");
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw std::invalid_argument("manifest key '" + key + "': '" + v + "' is not a number");
    }
    return out;
}

long long to_integer(const std::string& key, const std::string& v)
{
    long long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
        throw std::invalid_argument("manifest key '" + key + "': '" + v + "' is not an integer");
    }
    return out;
}

std::size_t to_count(const std::string& key, const std::string& v)
{
    const long long x = to_integer(key, v);
    if (x < 0) throw std::invalid_argument("manifest key '" + key + "' must be non-negative");
    return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("manifest key '" + key + "': '" + v + "' is not a boolean");
}

std::vector<int> to_int_list(const std::string& key, const std::string& v)
{
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(static_cast<int>(to_integer(key, item)));
    }
    return out;
}

using Setter = std::function<void(RunManifest&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"n", [](RunManifest& r, const auto& k, const auto& v) { r.n = static_cast<int>(to_integer(k, v)); }},
        {"m", [](RunManifest& r, const auto& k, const auto& v) { r.m = static_cast<int>(to_integer(k, v)); }},
        {"c", [](RunManifest& r, const auto& k, const auto& v) { r.c = to_double(k, v); }},
        {"initial", [](RunManifest& r, const auto&, const auto& v) { r.initial = initial_data_from_string(v); }},
        {"x0", [](RunManifest& r, const auto& k, const auto& v) { r.x0 = to_double(k, v); }},
        {"amplitude", [](RunManifest& r, const auto& k, const auto& v) { r.amplitude = to_double(k, v); }},
        {"width", [](RunManifest& r, const auto& k, const auto& v) { r.width = to_double(k, v); }},
        {"mollify", [](RunManifest& r, const auto& k, const auto& v) { r.mollify = to_double(k, v); }},
        {"length", [](RunManifest& r, const auto& k, const auto& v) { r.length = to_double(k, v); }},
        {"npoints", [](RunManifest& r, const auto& k, const auto& v) { r.npoints = to_count(k, v); }},
        {"dt", [](RunManifest& r, const auto& k, const auto& v) { r.dt = to_double(k, v); }},
        {"t_end", [](RunManifest& r, const auto& k, const auto& v) { r.t_end = to_double(k, v); }},
        {"scheme", [](RunManifest& r, const auto&, const auto& v) { r.scheme = scheme_from_string(v); }},
        {"dealias", [](RunManifest& r, const auto& k, const auto& v) { r.dealias = to_bool(k, v); }},
        {"nu", [](RunManifest& r, const auto& k, const auto& v) { r.nu = to_double(k, v); }},
        {"flux_form", [](RunManifest& r, const auto&, const auto& v) { r.form = flux_form_from_string(v); }},
        {"signed_power", [](RunManifest& r, const auto& k, const auto& v) { r.signed_power = to_bool(k, v); }},
        {"cfl", [](RunManifest& r, const auto& k, const auto& v) { r.cfl = to_double(k, v); }},
        {"ik", [](RunManifest& r, const auto& k, const auto& v) { r.ik = to_int_list(k, v); }},
        {"diagnostics_every", [](RunManifest& r, const auto& k, const auto& v) { r.diagnostics_every = to_count(k, v); }},
        {"snapshot_every", [](RunManifest& r, const auto& k, const auto& v) { r.snapshot_every = to_count(k, v); }},
        {"snapshots", [](RunManifest& r, const auto&, const auto& v) { r.snapshots = v; }},
        {"snapshot_format", [](RunManifest& r, const auto&, const auto& v) { r.snapshot_format = v; }},
        {"diagnostics", [](RunManifest& r, const auto&, const auto& v) { r.diagnostics = v; }},
        {"diagnostics_format", [](RunManifest& r, const auto&, const auto& v) { r.diagnostics_format = v; }},
        {"deterministic", [](RunManifest& r, const auto& k, const auto& v) { r.deterministic = to_bool(k, v); }},
    };
    return table;
}

void apply(RunManifest& r, const std::string& key, const std::string& value)
{
    const auto it = setters().find(key);
    if (it == setters().end()) throw std::invalid_argument("unknown manifest key '" + key + "'");
    it->second(r, key, value);
}

std::string join(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

} // namespace

RunManifest RunManifest::parse_key_value(const std::string& text)
{
    RunManifest r;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("manifest line " + std::to_string(lineno) + ": expected key = value");
        }
        apply(r, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    r.validate();
    return r;
}

RunManifest RunManifest::parse_json(const std::string& text)
{
    RunManifest r;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed manifest JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("manifest JSON must be an object");
    for (const auto& [key, value] : j.items()) {
        std::string text_value;
        if (value.is_string()) text_value = value.get<std::string>();
        else if (value.is_boolean()) text_value = value.get<bool>() ? "true" : "false";
        else if (value.is_number_integer()) text_value = std::to_string(value.get<long long>());
        else if (value.is_number()) text_value = fmt_double(value.get<double>());
        else if (value.is_array()) {
            std::vector<int> items;
            for (const auto& x : value) {
                if (!x.is_number_integer()) throw std::invalid_argument("manifest key '" + key + "' must list integers");
                items.push_back(x.get<int>());
            }
            text_value = join(items);
        } else {
            throw std::invalid_argument("manifest key '" + key + "' has an unsupported type");
        }
        apply(r, key, text_value);
    }
    r.validate();
    return r;
}

RunManifest RunManifest::parse(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text);
    return parse_key_value(text);
}

std::string RunManifest::to_key_value() const
{
    std::ostringstream os;
    os << "n = " << n << "\nm = " << m << "\nc = " << fmt_double(c) << "\ninitial = " << to_string(initial)
       << "\nx0 = " << fmt_double(x0) << "\namplitude = " << fmt_double(amplitude) << "\nwidth = " << fmt_double(width)
       << "\nmollify = " << fmt_double(mollify) << "\nlength = " << fmt_double(length) << "\nnpoints = " << npoints
       << "\ndt = " << fmt_double(dt) << "\nt_end = " << fmt_double(t_end) << "\nscheme = " << ksharp::to_string(scheme)
       << "\ndealias = " << (dealias ? "true" : "false") << "\nnu = " << fmt_double(nu)
       << "\nflux_form = " << ksharp::to_string(form) << "\nsigned_power = " << (signed_power ? "true" : "false")
       << "\ncfl = " << fmt_double(cfl) << "\nik = " << join(ik) << "\ndiagnostics_every = " << diagnostics_every
       << "\nsnapshot_every = " << snapshot_every << "\nsnapshots = " << snapshots
       << "\nsnapshot_format = " << snapshot_format << "\ndiagnostics = " << diagnostics
       << "\ndiagnostics_format = " << diagnostics_format << "\ndeterministic = " << (deterministic ? "true" : "false")
       << "\n";
    return os.str();
}

std::string RunManifest::to_json() const
{
    nlohmann::ordered_json j;
    j["n"] = n;
    j["m"] = m;
    j["c"] = c;
    j["initial"] = to_string(initial);
    j["x0"] = x0;
    j["amplitude"] = amplitude;
    j["width"] = width;
    j["mollify"] = mollify;
    j["length"] = length;
    j["npoints"] = npoints;
    j["dt"] = dt;
    j["t_end"] = t_end;
    j["scheme"] = ksharp::to_string(scheme);
    j["dealias"] = dealias;
    j["nu"] = nu;
    j["flux_form"] = ksharp::to_string(form);
    j["signed_power"] = signed_power;
    j["cfl"] = cfl;
    j["ik"] = ik;
    j["diagnostics_every"] = diagnostics_every;
    j["snapshot_every"] = snapshot_every;
    j["snapshots"] = snapshots;
    j["snapshot_format"] = snapshot_format;
    j["diagnostics"] = diagnostics;
    j["diagnostics_format"] = diagnostics_format;
    j["deterministic"] = deterministic;
    return j.dump(2);
}

void RunManifest::validate() const
{
    (void)params();
    (void)grid();
    if (!(c > 0.0)) throw std::invalid_argument("wave speed c must be positive");
    if (initial == InitialData::peakompacton && m < 2) {
        throw std::invalid_argument("peakompacton initial data requires m >= 2");
    }
    if (initial == InitialData::gaussian && !(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    if (!(dt >= 0.0)) throw std::invalid_argument("dt must be >= 0 (0 selects an automatic step)");
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (!(nu >= 0.0)) throw std::invalid_argument("nu must be >= 0");
    if (!(cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
    for (int k : ik) {
        if (k < 1) throw std::invalid_argument("ik orders must be >= 1");
    }
    for (const auto* f : {&snapshot_format, &diagnostics_format}) {
        if (*f != "csv" && *f != "json") throw std::invalid_argument("output formats must be csv or json");
    }
    if (snapshots.empty() || diagnostics.empty()) throw std::invalid_argument("output paths must not be empty");
}

SolverConfig RunManifest::solver() const
{
    SolverConfig s;
    s.dt = dt;
    s.scheme = scheme;
    s.dealias = dealias;
    s.smoothing = nu;
    s.form = form;
    s.signed_power = signed_power;
    s.cfl = cfl;
    return s;
}

} // namespace ksharp::cli
