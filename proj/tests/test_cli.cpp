#include "mrspec/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using mrspec::cli::run;
using nlohmann::json;

namespace {

struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> const& args)
{
    std::ostringstream out;
    std::ostringstream err;
    int const code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> table_args(std::vector<std::string> extra)
{
    std::vector<std::string> args{"--inv-b", "0.025", "--alpha", "0.75"};
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

} // namespace

TEST_CASE("spectrum text output")
{
    auto const r = invoke(table_args({"--dim", "2", "--states", "2p", "spectrum"}));
    CHECK(r.code == 0);
    CHECK(r.out.find("-0.241087728") != std::string::npos);
    CHECK(r.out.find("bound") != std::string::npos);

    auto const r4 = invoke({"--inv-b", "0.1", "--A-over-b", "2", "--alpha", "1.5", "--dim", "4", "--states", "3p", "spectrum"});
    CHECK(r4.code == 0);
    CHECK(r4.out.find("-0.004801908") != std::string::npos);

    auto const p3 = invoke(table_args({"--dim", "2", "--states", "2p", "--precision", "3", "spectrum"}));
    CHECK(p3.out.find("-0.241 ") != std::string::npos);
}

TEST_CASE("spectrum json and csv")
{
    auto const r = invoke(table_args({"--dim", "2", "--states", "2p,3d", "--format", "json", "spectrum"}));
    REQUIRE(r.code == 0);
    auto const j = json::parse(r.out);
    CHECK(j["parameters"]["A"] == 80.0);
    CHECK(j["parameters"]["b"] == 40.0);
    REQUIRE(j["states"].size() == 2);
    CHECK(j["states"][0]["label"] == "2p");
    CHECK(j["states"][0]["energy"].get<double>() == doctest::Approx(-0.2410877275673217).epsilon(1e-15));
    CHECK(j["states"][1]["status"] == "bound");
    CHECK(json::parse(j.dump()) == j);

    auto const c = invoke(table_args({"--dim", "2", "--states", "2p,3d", "--format", "csv", "spectrum"}));
    REQUIRE(c.code == 0);
    std::istringstream lines(c.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "label,n,l,D,energy,epsilon,eta,status");
    std::string row;
    std::getline(lines, row);
    CHECK(row.rfind("2p,0,1,2,-0.24108772756732169,", 0) == 0);
}

TEST_CASE("range enumeration lists bound states")
{
    auto const r = invoke(table_args({"--dim", "2", "--l", "1..2", "--format", "json", "spectrum"}));
    REQUIRE(r.code == 0);
    auto const j = json::parse(r.out);
    CHECK(j["states"].size() > 4);
    for (auto const& s : j["states"]) {
        CHECK(s["energy"].get<double>() < 0.0);
    }
}

TEST_CASE("usage errors")
{
    CHECK(invoke(table_args({"--states", "1x", "spectrum"})).code == mrspec::cli::exit_usage);
    CHECK(invoke({"--b", "2", "--inv-b", "0.5", "spectrum"}).code == mrspec::cli::exit_usage);
    CHECK(invoke({"--A", "2", "--A-over-b", "0.5", "spectrum"}).code == mrspec::cli::exit_usage);
    CHECK(invoke(table_args({"--l", "3..1", "spectrum"})).code == mrspec::cli::exit_usage);
    CHECK(invoke(table_args({"--precision", "18", "spectrum"})).code == mrspec::cli::exit_usage);
    CHECK(invoke(table_args({"--precision", "0", "spectrum"})).code == mrspec::cli::exit_usage);
    CHECK(invoke(table_args({"--jobs", "0", "spectrum"})).code == mrspec::cli::exit_usage);
    CHECK(invoke(table_args({"--format", "yaml", "spectrum"})).code == mrspec::cli::exit_usage);
    CHECK(invoke({"--no-such-flag"}).code == mrspec::cli::exit_usage);
    CHECK(invoke(table_args({"--states", "2p", "wavefunction", "--samples", "1"})).code ==
          mrspec::cli::exit_usage);
    auto const bad = invoke(table_args({"--states", "1x", "spectrum"}));
    CHECK(!bad.err.empty());
    CHECK(invoke({"--help"}).code == mrspec::cli::exit_ok);

    mrspec::cli::RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.precision = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.precision = 9;
    cfg.jobs = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("unbound state exit code")
{
    auto const r = invoke({"--A", "0.1", "--states", "1s", "wavefunction"});
    CHECK(r.code == mrspec::cli::exit_unbound);
    CHECK(!r.err.empty());
}

TEST_CASE("table command")
{
    auto const t = invoke({"table"});
    CHECK(t.code == 0);
    CHECK(t.out.find("168 cells, 4 suspected errata") != std::string::npos);

    auto const j = json::parse(invoke({"--format", "json", "table"}).out);
    CHECK(j["suspected_errata"].size() == 4);
    CHECK(j["tolerance"] == 5e-9);
    CHECK(j["cells"]["2p"]["0.025"]["0.75"]["2"]["computed"].get<double>() ==
          doctest::Approx(-0.241087728).epsilon(1e-9));
}

TEST_CASE("wavefunction csv")
{
    auto const r = invoke(table_args({"--dim", "2", "--states", "2p", "--format", "csv", "wavefunction", "--samples", "50"}));
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "r,z,g,g2");
    int data = 0;
    double norm = 0.0;
    int nodes = -1;
    while (std::getline(lines, line)) {
        if (line.rfind("# norm=", 0) == 0) {
            norm = std::stod(line.substr(7));
        }
        else if (line.rfind("# node_count=", 0) == 0) {
            nodes = std::stoi(line.substr(13));
        }
        else if (line[0] != '#') {
            ++data;
        }
    }
    CHECK(data == 50);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(nodes == 0);

    auto const d4 = invoke(table_args({"--dim", "2", "--states", "4d", "--format", "csv", "wavefunction", "--samples", "10"}));
    CHECK(d4.out.find("# node_count=1") != std::string::npos);

    auto const path = std::filesystem::temp_directory_path() / "mrspec_cli_wave.csv";
    auto const f = invoke(table_args({"--dim", "2", "--states", "2p", "--format", "csv", "wavefunction",
                                      "--samples", "50", "--out", path.string()}));
    CHECK(f.code == 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == r.out);
    std::filesystem::remove(path);
}

TEST_CASE("oracle command")
{
    auto const r = invoke({"--inv-b", "0.1", "--alpha", "0.75", "--dim", "2", "--states", "2p", "--format",
                           "json", "oracle"});
    REQUIRE(r.code == 0);
    auto const j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 1);
    auto const& row = j["rows"][0];
    CHECK(row["e_exact"].get<double>() == doctest::Approx(-0.202458252813).epsilon(1e-9));
    CHECK(row["rel_error_approx"].get<double>() < 1e-7);

    auto const sweep = invoke({"--alpha", "0.75", "--A-over-b", "2", "--dim", "2", "--states", "2p",
                               "--format", "json", "--jobs", "4", "oracle", "--sweep-inv-b",
                               "0.025,0.05,0.075,0.1"});
    REQUIRE(sweep.code == 0);
    auto const js = json::parse(sweep.out);
    REQUIRE(js["rows"].size() == 4);
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(js["rows"][i]["rel_error_exact"].get<double>() > js["rows"][i - 1]["rel_error_exact"].get<double>());
    }

    auto const serial = invoke({"--alpha", "0.75", "--A-over-b", "2", "--dim", "2", "--states", "2p",
                                "--format", "json", "oracle", "--sweep-inv-b", "0.025,0.05,0.075,0.1"});
    CHECK(serial.out == sweep.out);
}

TEST_CASE("degeneracy and critical coupling")
{
    auto const d = invoke(table_args({"--dim", "2", "--states", "5g", "--format", "json", "degeneracy",
                                      "--dmin", "2", "--dmax", "8"}));
    REQUIRE(d.code == 0);
    auto const j = json::parse(d.out);
    CHECK(j["partners"].size() == 4);
    CHECK(j["spread"] == 0.0);

    auto const c = json::parse(invoke({"--states", "1s", "--format", "json", "critical-coupling"}).out);
    CHECK(c["states"][0]["A_c"] == 1.0);
    auto const c3 = json::parse(invoke({"--states", "3s", "--format", "json", "critical-coupling"}).out);
    CHECK(c3["states"][0]["A_c"] == 9.0);
}

TEST_CASE("config file and determinism")
{
    auto const path = std::filesystem::temp_directory_path() / "mrspec_cli_test.cfg";
    {
        std::ofstream cfg(path);
        cfg << "inv-b=0.025\nalpha=0.75\ndim=2\nstates=2p\n";
    }
    auto const via_file = invoke({"--config", path.string(), "--format", "csv", "spectrum"});
    auto const direct = invoke(table_args({"--dim", "2", "--states", "2p", "--format", "csv", "spectrum"}));
    CHECK(via_file.code == 0);
    CHECK(via_file.out == direct.out);
    auto const override_dim = invoke({"--config", path.string(), "--dim", "4", "--states", "1s", "--format", "csv", "spectrum"});
    CHECK(override_dim.out == invoke(table_args({"--dim", "4", "--states", "1s", "--format", "csv", "spectrum"})).out);
    std::filesystem::remove(path);

    for (auto fmt : {"text", "csv", "json"}) {
        auto const a = invoke({"--format", fmt, "table"});
        auto const b = invoke({"--format", fmt, "table"});
        CHECK(a.out == b.out);
    }
}
