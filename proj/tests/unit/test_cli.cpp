#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "oracles.hpp"
#include "rebalance/cli.hpp"
#include "rebalance/synthgen.hpp"

using namespace rebalance;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rebalance-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST_CASE("smote end to end with a balanced report") {
    TempDir dir;
    write_dataset(gen_imbc({1000, 2}), dir / "imbc.csv");
    auto r = call({"smote", "--in", dir / "imbc.csv", "--target", "Class", "--dist", "heom", "--c-perc", "balance",
                   "--seed", "7", "--out", dir / "new.csv", "--report", dir / "report.json"});
    CHECK(r.code == 0);
    auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["strategy"] == "smote");
    CHECK(report["seed"] == 7);
    auto out = read_dataset(dir / "new.csv", "Class");
    CHECK(report["rows_after"] == out.n_rows());
    for (const auto& [label, n] : oracle::recount(out)) CHECK(report["after"][label] == n);
    const std::size_t lo = report["after"]["rare1"], hi = report["after"]["normal"];
    CHECK(hi - lo <= 1);
    CHECK(report["parameters"]["dist"] == "HEOM");
}

TEST_CASE("Tomek on link-free data warns and succeeds") {
    TempDir dir;
    {
        std::ofstream f(dir / "sep.csv");
        f << "X,Y\n0,a\n0.5,a\n1,a\n100,b\n100.5,b\n";
    }
    auto r = call({"tomek", "--in", dir / "sep.csv", "--target", "Y", "--out", dir / "o.csv"});
    CHECK(r.code == 0);
    CHECK(r.err.find("TomekClassif found no examples to remove!") != std::string::npos);
    CHECK(slurp(dir / "o.csv") == slurp(dir / "sep.csv"));
}

TEST_CASE("exit codes") {
    TempDir dir;
    write_dataset(gen_imbc({100, 2}), dir / "c.csv");
    CHECK(call({"smote", "--in", dir / "c.csv", "--target", "Class", "--out", dir / "o.csv", "--bogus"}).code == 2);
    CHECK(call({"nosuch"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"--help"}).code == 0);
    // euclidean cannot handle the nominal X2
    auto bad = call({"smote", "--in", dir / "c.csv", "--target", "Class", "--out", dir / "o.csv"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("error:") == 0);
    CHECK(call({"randunder", "--in", dir / "missing.csv", "--target", "Class", "--out", dir / "o.csv"}).code == 1);
    CHECK(call({"randunder", "--in", dir / "c.csv", "--target", "Class", "--out", dir / "o.csv", "--c-perc", "zebra=1"}).code == 1);
    CHECK(call({"impsamp-r", "--in", dir / "c.csv", "--target", "Class", "--out", dir / "o.csv"}).code == 1);

    write_dataset(gen_imbr({200, 2}), dir / "r.csv");
    CHECK(call({"impsamp-r", "--in", dir / "r.csv", "--target", "Tgt", "--out", dir / "o.csv", "--u", "0.5", "--thr-rel", "0.7"})
              .code == 2);
    CHECK(call({"impsamp-r", "--in", dir / "r.csv", "--target", "Tgt", "--out", dir / "o.csv", "--u", "1.5"}).code == 2);
    CHECK(call({"randover-r", "--in", dir / "r.csv", "--target", "Tgt", "--out", dir / "o.csv", "--rel", "auto:sideways"}).code == 2);
}

TEST_CASE("regression report lists bumps") {
    TempDir dir;
    write_dataset(gen_imbr({1000, 3}), dir / "r.csv");
    auto r = call({"smote-r", "--in", dir / "r.csv", "--target", "Tgt", "--thr-rel", "0.8", "--c-perc", "0.1,8", "--out",
                   dir / "o.csv", "--report", dir / "rep.json"});
    CHECK(r.code == 0);
    auto rep = nlohmann::json::parse(slurp(dir / "rep.json"));
    REQUIRE(rep["bumps"].size() == 2);
    CHECK(rep["bumps"][0]["kind"] == "normal");
    CHECK(rep["bumps"][1]["kind"] == "rare");
    std::size_t total = 0;
    for (const auto& b : rep["bumps"]) total += b["after"].get<std::size_t>();
    CHECK(total == rep["rows_after"].get<std::size_t>());
    CHECK(rep["bumps"][1]["after"] == 8 * rep["bumps"][1]["before"].get<std::size_t>());

    {
        std::ofstream f(dir / "pts.csv");
        f << "y,phi,dphi\n10,0,0\n15,1,0\n";
    }
    auto p = call({"randover-r", "--in", dir / "r.csv", "--target", "Tgt", "--rel-points", dir / "pts.csv", "--c-perc", "2",
                   "--out", dir / "o2.csv", "--report", dir / "rep2.json"});
    CHECK(p.code == 0);
    auto rep2 = nlohmann::json::parse(slurp(dir / "rep2.json"));
    CHECK(rep2["relevance"].size() == 2);
}

TEST_CASE("same arguments give byte-identical output") {
    TempDir dir;
    write_dataset(gen_imbc({500, 9}), dir / "c.csv");
    for (const auto* strategy : {"randunder", "randover", "impsamp", "gaussnoise", "cnn", "ncl", "oss"}) {
        std::vector<std::string> base{strategy, "--in", dir / "c.csv", "--target", "Class", "--seed", "42"};
        if (std::string(strategy) == "cnn" || std::string(strategy) == "ncl" || std::string(strategy) == "oss") {
            base.insert(base.end(), {"--dist", "heom"});
        }
        auto a = base, b = base;
        a.insert(a.end(), {"--out", dir / "a.csv"});
        b.insert(b.end(), {"--out", dir / "b.csv"});
        REQUIRE(call(a).code == 0);
        REQUIRE(call(b).code == 0);
        CHECK_MESSAGE(slurp(dir / "a.csv") == slurp(dir / "b.csv"), strategy);
    }
}

TEST_CASE("gen writes the requested generator") {
    TempDir dir;
    CHECK(call({"gen", "imbc", "--n", "300", "--seed", "4", "--out", dir / "g.csv"}).code == 0);
    CHECK(read_dataset(dir / "g.csv", "Class") == gen_imbc({300, 4}));
    CHECK(call({"gen", "imbx", "--out", dir / "g.csv"}).code == 2);
    CHECK(call({"gen", "imbr", "--n", "3", "--out", dir / "g.csv"}).code == 1);
}
