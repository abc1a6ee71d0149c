#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_runner.hpp"
#include "ptcross/core.hpp"
#include "ptcross/run.hpp"
#include "ptcross/table.hpp"

using namespace ptcross;

namespace {

// One valid invocation per subcommand.
const char* const kInvocations[] = {
    "spectrum --A 1 --B 1",
    "spectrum --alpha 0.3 --beta -0.2",
    "metric --alpha 0.3 --beta 0.2",
    "metric --alpha 0.3 --beta 0.2 --diagonal --t1 2",
    "metric --alpha 0.3 --beta 0.2 --closed --t1 1 --t2 0.1 --t3 0.2 --t4 0.3",
    "metric --A 0.5 --B 0.5 --spectral --kappa 1,2,3,4",
    "scan --A-from -1 --A-to 1 --B-from -1 --B-to 1 --nA 6 --nB 5",
    "sweep --fix A=0.02 --vary B --from -0.02 --to 0.02 --steps 9",
    "unfold --alpha 0.3",
    "ho --alpha 0.5 --n-max 4",
    "ep-find --fix A=0.02 --vary B --from -0.02 --to 0",
};

} // namespace

TEST_CASE("every subcommand succeeds and parses back") {
    for (const char* args : kInvocations) {
        CAPTURE(args);
        for (const char* fmt : {"csv", "json"}) {
            const auto r = cli::run(std::string(args) + " --format " + fmt);
            REQUIRE(r.exit_code == 0);
            const Table t = read_table(r.out);
            CHECK(t.meta_value("tool") == "ptcross");
            CHECK(t.meta_value("command_line").rfind("ptcross ", 0) == 0);
            CHECK_FALSE(t.rows.empty());
            for (const auto& row : t.rows) {
                CHECK(row.size() == t.columns.size());
            }
        }
    }
}

TEST_CASE("output is deterministic") {
    for (const char* args : kInvocations) {
        CAPTURE(args);
        const auto a = cli::run(args);
        const auto b = cli::run(args);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("CSV and JSON carry the same table") {
    const auto csv = cli::run("sweep --vary diagonal --from 0 --to 1 --steps 5 --format csv");
    const auto json = cli::run("sweep --vary diagonal --from 0 --to 1 --steps 5 --format json");
    const Table a = read_table(csv.out);
    Table b = read_table(json.out);
    CHECK(a.columns == b.columns);
    CHECK(a.rows == b.rows);
}

TEST_CASE("spectrum values") {
    const Table t = read_table(cli::run("spectrum --A 1 --B 1").out);
    REQUIRE(t.rows.size() == 4);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(t.number(0, "re") == doctest::Approx(-phi));
    CHECK(t.number(3, "re") == doctest::Approx(phi));
    CHECK(t.number(1, "numeric_re") == doctest::Approx(1.0 - phi));
    CHECK(t.meta_value("reality") == "AllReal");
}

TEST_CASE("ep-find value") {
    const Table t = read_table(cli::run("ep-find --fix A=0.02 --vary B --from -0.02 --to 0 --format json").out);
    CHECK(std::abs(t.number(0, "parameter") + 0.005) < 1e-6);
    CHECK(std::abs(t.number(0, "C")) < 1e-6);
}

TEST_CASE("metric signature metadata") {
    const Table fam = read_table(cli::run("metric --alpha 0.3 --beta 0.2").out);
    CHECK(fam.meta_value("family_dim") == "4");
    const Table diag = read_table(cli::run("metric --alpha 0.3 --beta 0.2 --diagonal").out);
    CHECK(diag.meta_value("positive_definite") == "true");
    CHECK(diag.meta_value("n_plus") == "4");
}

TEST_CASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "ptcross_cli_test.csv";
    std::filesystem::remove(path);
    const auto r = cli::run("ho --alpha 0.5 -o '" + path.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    // Identical apart from the echoed command line.
    const Table from_file = read_table(ss.str());
    const Table from_stdout = read_table(cli::run("ho --alpha 0.5").out);
    CHECK(from_file.rows == from_stdout.rows);
    CHECK(from_file.meta.size() == from_stdout.meta.size());
    std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
    CHECK(cli::run("--help").exit_code == 0);
    CHECK(cli::run("").exit_code == 2);
    CHECK(cli::run("frobnicate").exit_code == 2);
    CHECK(cli::run("spectrum --A 1 --B 1 --bogus 3").exit_code == 2);
    CHECK(cli::run("spectrum --A 1 --alpha 0.3").exit_code == 2);
    CHECK(cli::run("spectrum --A 1").exit_code == 2);
    CHECK(cli::run("spectrum --A one --B 1").exit_code == 2);
    CHECK(cli::run("spectrum --A 1 --B 1 --format xml").exit_code == 2);
    CHECK(cli::run("metric --alpha 0.3 --beta 0.2 --diagonal --closed").exit_code == 2);
    CHECK(cli::run("scan --A-from 0 --A-to 1 --B-from 0 --B-to 1 --nA 1 --nB 4").exit_code == 2);
    // Valid syntax, invalid point.
    CHECK(cli::run("metric --alpha -1 --beta 0.2 --closed --t1 1 --t2 0 --t3 0 --t4 0").exit_code == 1);
    CHECK(cli::run("ep-find --fix A=0.5 --vary B --from 0.2 --to 0.4").exit_code == 1);
    CHECK(cli::run("unfold --alpha 1.5").exit_code == 1);
}

TEST_CASE("library entry point") {
    RunConfig cfg;
    cfg.command = Command::HO;
    cfg.parameters = {{"alpha", "0.5"}, {"n-max", "2"}};
    std::ostringstream out, err;
    CHECK(run_and_emit(cfg, out, err) == 0);
    CHECK(read_table(out.str()).rows.size() == 6);

    cfg.parameters["bogus"] = "1";
    std::ostringstream out2, err2;
    CHECK(run_and_emit(cfg, out2, err2) == 2);
    CHECK_FALSE(err2.str().empty());

    for (Command c : all_commands()) {
        CHECK(command_from_string(to_string(c)) == c);
    }
    CHECK_THROWS_AS(command_from_string("nope"), UsageError);
}
