#include "doctest.h"

#include "cli.hpp"
#include "manifest.hpp"
#include "schema_check.hpp"

#include "ksharp/diagnostics.hpp"
#include "ksharp/format.hpp"
#include "ksharp/io.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using namespace ksharp;
using namespace ksharp::cli;
namespace fs = std::filesystem;

namespace {
struct Outcome {
    int code;
    std::string out, err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    return {code, o.str(), e.str()};
}

// Scratch directory exported through the output-directory variable.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / name)
    {
        fs::remove_all(dir);
        fs::create_directories(dir);
        setenv(output_dir_env, dir.c_str(), 1);
    }
    ~Scratch()
    {
        unsetenv(output_dir_env);
        fs::remove_all(dir);
    }
    std::string operator/(const std::string& f) const { return (dir / f).string(); }
};

std::vector<std::string> split_lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

schema::json load_schema(const std::string& name) { return schema::load(std::string(KSHARP_SOURCE_DIR) + "/schemas/" + name); }

std::string write_manifest(const Scratch& s, const std::string& name, const std::string& body)
{
    write_file(s / name, body);
    return s / name;
}
} // namespace

TEST_SUITE("cli")
{
TEST_CASE("manifest key=value round trip")
{
    RunManifest m;
    m.n = 2;
    m.m = 4;
    m.c = 0.5;
    m.initial = InitialData::peakompacton;
    m.scheme = Scheme::centered_fd4;
    m.ik = {3, 5};
    m.nu = 1e-7;
    m.form = FluxForm::literal;
    const auto back = RunManifest::parse(m.to_key_value());
    CHECK(back.to_key_value() == m.to_key_value());
    CHECK(back.to_json() == m.to_json());
    const auto back_json = RunManifest::parse(m.to_json());
    CHECK(back_json.to_key_value() == m.to_key_value());
}

TEST_CASE("manifest parsing rejects junk")
{
    CHECK_THROWS(RunManifest::parse("bogus = 1\n"));
    CHECK_THROWS(RunManifest::parse("n = one\n"));
    CHECK_THROWS(RunManifest::parse("scheme = upwind\n"));
    CHECK_THROWS(RunManifest::parse("{\"n\": \"x\"}"));
    const auto m = RunManifest::parse("# comment\n  n = 3  \nm=2\n\n");
    CHECK(m.n == 3);
    CHECK(m.m == 2);
}

TEST_CASE("manifest json validates against the schema")
{
    RunManifest m;
    const auto errors = schema::validate(schema::json::parse(m.to_json()), load_schema("manifest.schema.json"));
    CHECK(errors.empty());
}

TEST_CASE("profile header values")
{
    Scratch s("ksharp_cli_profile");
    auto r = call({"profile", "--n", "1", "--m", "3", "--c", "0.75"});
    REQUIRE(r.code == exit_ok);
    auto h = schema::json::parse(r.out);
    CHECK(h["u_max"].get<double>() == 2.25);
    CHECK(schema::validate(h, load_schema("profile_header.schema.json")).empty());
    CHECK(fs::exists(s / "profile.csv"));

    r = call({"profile", "--n", "2", "--m", "3", "--c", "0.75"});
    REQUIRE(r.code == exit_ok);
    CHECK(std::abs(schema::json::parse(r.out)["u_max"].get<double>() - std::sqrt(4.5)) <= 1e-12);
}

TEST_CASE("profile with two samples hits the flat endpoints")
{
    Scratch s("ksharp_cli_profile2");
    const auto r = call({"profile", "--n", "1", "--m", "3", "--c", "0.75", "--samples", "2"});
    REQUIRE(r.code == exit_ok);
    const auto lines = split_lines(read_file(s / "profile.csv"));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "xi,u");
    const double xi0 = schema::json::parse(r.out)["xi0"].get<double>();
    CHECK(lines[1] == fmt_double(-1.2 * xi0) + ",0");
    CHECK(lines[2] == fmt_double(1.2 * xi0) + ",0");
}

TEST_CASE("profile json document")
{
    Scratch s("ksharp_cli_profile3");
    const auto r = call({"profile", "--m", "4", "--samples", "11", "--out", "p.json"});
    REQUIRE(r.code == exit_ok);
    const auto doc = schema::json::parse(read_file(s / "p.json"));
    CHECK(schema::validate(doc, load_schema("profile.schema.json")).empty());
    CHECK(doc["xi"].size() == 11);
    CHECK(doc["u"][5].get<double>() == doc["header"]["u_max"].get<double>());
}

TEST_CASE("profile rejects invalid parameters")
{
    Scratch s("ksharp_cli_profile4");
    CHECK(call({"profile", "--m", "1"}).code == exit_invalid_args);
    CHECK(call({"profile", "--c", "-1"}).code == exit_invalid_args);
    CHECK(call({"profile", "--n", "0"}).code == exit_invalid_args);
    CHECK(call({"profile", "--samples", "1"}).code == exit_invalid_args);
    CHECK(call({"profile", "--format", "xml"}).code == exit_invalid_args);
    CHECK(call({"profile", "--c", "fast"}).code == exit_invalid_args);
    CHECK(call({}).code == exit_invalid_args);
    CHECK(call({"frobnicate"}).code == exit_invalid_args);
}

TEST_CASE("scale subcommand")
{
    auto r = call({"scale", "--epsilon", "1", "--delta", "1"});
    REQUIRE(r.code == exit_ok);
    auto lines = split_lines(r.out);
    CHECK(lines[0] == "ell = 1");
    CHECK(lines[1] == "tau = 1");
    r = call({"scale", "--epsilon", "6", "--delta", "1", "--n", "1", "--m", "1", "--V", "1"});
    REQUIRE(r.code == exit_ok);
    lines = split_lines(r.out);
    CHECK(std::stod(lines[0].substr(6)) == doctest::Approx(std::pow(6.0, -0.5)).epsilon(1e-14));
    CHECK(std::stod(lines[1].substr(6)) == doctest::Approx(std::pow(6.0, -1.5)).epsilon(1e-14));
    for (const char* v : {"0.3", "1", "7"}) {
        r = call({"scale", "--epsilon", "2.5", "--delta", "0.01", "--n", "3", "--m", "5", "--V", v});
        REQUIRE(r.code == exit_ok);
        const auto last = split_lines(r.out).back();
        CHECK(std::stod(last.substr(last.rfind('=') + 1)) <= 1e-12);
    }
    CHECK(call({"scale", "--epsilon", "0", "--delta", "1"}).code == exit_invalid_args);
    CHECK(call({"scale", "--epsilon", "1", "--delta", "-1"}).code == exit_invalid_args);
    CHECK(call({"scale", "--epsilon", "1"}).code == exit_invalid_args);
}

TEST_CASE("simulate zero data")
{
    Scratch s("ksharp_cli_zero");
    const auto path = write_manifest(s, "zero.cfg", "initial = zero\nn = 2\nm = 3\nnpoints = 64\nt_end = 0.1\ndt = 1e-3\n");
    const auto r = call({"simulate", "--manifest", path});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.find("drift mass = 0 momentum = 0 energy = 0 I3 = 0") != std::string::npos);
    const auto lines = split_lines(read_file(s / "diagnostics.csv"));
    CHECK(lines[0] == "t,mass,momentum,energy,peak_location,peak_height,I3");
    for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].substr(lines[i].find(',')) == ",0,0,0,0,0,0");
}

TEST_CASE("simulate kdv soliton reports tight drifts")
{
    Scratch s("ksharp_cli_kdv");
    const auto path = write_manifest(s, "kdv.cfg", "initial = kdv_soliton\nc = 0.75\nlength = 40\nnpoints = 512\nt_end = 2\n");
    const auto r = call({"simulate", "--manifest", path});
    REQUIRE(r.code == exit_ok);
    const auto rec = split_lines(read_file(s / "diagnostics.csv"));
    // recompute the drifts from the file
    std::vector<double> m, p;
    for (std::size_t i = 1; i < rec.size(); ++i) {
        std::istringstream row(rec[i]);
        std::string f;
        std::getline(row, f, ',');
        std::getline(row, f, ',');
        m.push_back(std::stod(f));
        std::getline(row, f, ',');
        p.push_back(std::stod(f));
    }
    CHECK(relative_drift(m) <= 1e-8);
    CHECK(relative_drift(p) <= 1e-8);
}

TEST_CASE("simulate reports blow-up and keeps partial output")
{
    Scratch s("ksharp_cli_blowup");
    const auto path = write_manifest(s, "bad.cfg", "initial = kdv_soliton\nnpoints = 128\ndt = 0.2\nt_end = 50\n");
    const auto r = call({"simulate", "--manifest", path});
    CHECK(r.code == exit_blow_up);
    CHECK(r.err.find("blow-up") != std::string::npos);
    CHECK(fs::exists(s / "diagnostics.csv"));
    CHECK(fs::exists(s / "snapshots.csv"));
}

TEST_CASE("simulate error codes")
{
    Scratch s("ksharp_cli_errors");
    CHECK(call({"simulate", "--manifest", s / "missing.cfg"}).code == exit_io);
    CHECK(call({"simulate", "--manifest", write_manifest(s, "a.cfg", "npoints = 15\n")}).code == exit_invalid_args);
    CHECK(call({"simulate", "--manifest", write_manifest(s, "b.cfg", "colour = red\n")}).code == exit_invalid_args);
    CHECK(call({"simulate", "--manifest", write_manifest(s, "c.cfg", "initial = peakompacton\nm = 1\n")}).code ==
          exit_invalid_args);
    const auto unwritable = write_manifest(s, "d.cfg", "initial = zero\nnpoints = 32\nt_end = 0.01\ndt = 1e-3\nsnapshots = nodir/s.csv\n");
    CHECK(call({"simulate", "--manifest", unwritable}).code == exit_io);
}

TEST_CASE("identical manifests give identical bytes")
{
    Scratch s("ksharp_cli_det");
    const std::string body = "initial = peakompacton\nn = 1\nm = 3\nnpoints = 128\nt_end = 0.05\n"
                             "snapshot_every = 100\nsnapshot_format = json\ndiagnostics_format = json\n"
                             "snapshots = s.json\ndiagnostics = d.json\n";
    const auto path = write_manifest(s, "run.cfg", body);
    const auto a = call({"simulate", "--manifest", path});
    REQUIRE(a.code == exit_ok);
    const auto s1 = read_file(s / "s.json"), d1 = read_file(s / "d.json");
    const auto b = call({"simulate", "--manifest", path});
    REQUIRE(b.code == exit_ok);
    CHECK(a.out == b.out);
    CHECK(read_file(s / "s.json") == s1);
    CHECK(read_file(s / "d.json") == d1);
    CHECK(schema::validate(schema::json::parse(s1), load_schema("snapshots.schema.json")).empty());
    CHECK(schema::validate(schema::json::parse(d1), load_schema("diagnostics.schema.json")).empty());
    CHECK(a.out.find("mollification_linf") != std::string::npos);
}

TEST_CASE("invariants of a stored soliton match direct calls")
{
    Scratch s("ksharp_cli_inv");
    const Grid g(40.0, 256);
    SnapshotSeries series;
    series.grid = g;
    series.params = HierarchyParams(1, 1);
    State st;
    for (std::size_t j = 0; j < 256; ++j) st.values.push_back(3 * 0.75 / std::pow(std::cosh(0.5 * std::sqrt(0.75) * (g.x(j) - 20)), 2));
    series.append(st);
    write_file(s / "one.json", series.to_json());
    const auto r = call({"invariants", "--snapshots", s / "one.json", "--k", "1,2,3"});
    REQUIRE(r.code == exit_ok);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "t,mass,momentum,energy,I1,I2,I3");
    const std::string want = "0," + fmt_double(mass(st, g)) + "," + fmt_double(momentum(st, g)) + "," +
                             fmt_double(energy(st, g, {1, 1}, Scheme::fourier_collocation)) + "," +
                             fmt_double(ik(st, g, 1)) + "," + fmt_double(ik(st, g, 2)) + "," + fmt_double(ik(st, g, 3));
    CHECK(lines[1] == want);
}

TEST_CASE("invariants of zero and malformed snapshots")
{
    Scratch s("ksharp_cli_inv2");
    SnapshotSeries z;
    z.grid = Grid(10.0, 16);
    z.append(State{0.0, std::vector<double>(16, 0.0)});
    z.append(State{1.0, std::vector<double>(16, 0.0)});
    std::ostringstream os;
    z.write_csv(os);
    write_file(s / "z.csv", os.str());
    const auto r = call({"invariants", "--snapshots", s / "z.csv", "--out", "inv.csv"});
    REQUIRE(r.code == exit_ok);
    const auto lines = split_lines(read_file(s / "inv.csv"));
    CHECK(lines[1] == "0,0,0,0,0,0,0");
    CHECK(lines[2] == "1,0,0,0,0,0,0");
    write_file(s / "bad.csv", "t,x,u\r\n0,0,zz\r\n");
    CHECK(call({"invariants", "--snapshots", s / "bad.csv"}).code == exit_io);
    CHECK(call({"invariants", "--snapshots", s / "nothing.csv"}).code == exit_io);
    CHECK(call({"invariants", "--snapshots", s / "z.csv", "--k", "0"}).code == exit_invalid_args);
}

TEST_CASE("multi-time (1,3) run shows I3 drifting")
{
    Scratch s("ksharp_cli_inv3");
    const auto path = write_manifest(s, "p.cfg", "initial = peakompacton\nn = 1\nm = 3\nnpoints = 256\nt_end = 1\n"
                                                 "snapshot_every = 500\nsnapshots = s.json\nsnapshot_format = json\n");
    REQUIRE(call({"simulate", "--manifest", path}).code == exit_ok);
    const auto r = call({"invariants", "--snapshots", s / "s.json"});
    REQUIRE(r.code == exit_ok);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() >= 3);
    std::vector<double> m, p, i3;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<double> cols;
        std::istringstream row(lines[i]);
        for (std::string f; std::getline(row, f, ',');) cols.push_back(std::stod(f));
        m.push_back(cols[1]);
        p.push_back(cols[2]);
        i3.push_back(cols[6]);
    }
    CHECK(relative_drift(m) <= 1e-10);
    CHECK(relative_drift(p) <= 1e-6);
    CHECK(relative_drift(i3) > 1e-4);
}

TEST_CASE("output directory variable only relocates relative paths")
{
    unsetenv(output_dir_env);
    CHECK(resolve_output("a.csv") == "a.csv");
    setenv(output_dir_env, "/tmp/x", 1);
    CHECK(resolve_output("a.csv") == "/tmp/x/a.csv");
    CHECK(resolve_output("/abs/a.csv") == "/abs/a.csv");
    unsetenv(output_dir_env);
}
}
