#include "clusterbench/records.hpp"
#include "clusterbench/table.hpp"

#include "cli_helpers.hpp"
#include "doctest.h"

#include <cstdlib>

using namespace clusterbench;
using cli_test::run;
using cli_test::slurp;
using cli_test::spit;
using cli_test::TempDir;

namespace {

std::size_t data_rows(const std::string& csv)
{
    return static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
}

struct EnvGuard {
    explicit EnvGuard(const char* value)
    {
        if (value) {
            setenv("CLUSTERBENCH_SEED", value, 1);
        } else {
            unsetenv("CLUSTERBENCH_SEED");
        }
    }
    ~EnvGuard() { unsetenv("CLUSTERBENCH_SEED"); }
};

} // namespace

TEST_CASE("generate: defaults, single node and determinism")
{
    TempDir tmp;
    auto r = run({"generate", "--seed", "3", "--out", tmp / "a"});
    REQUIRE(r.code == 0);
    const auto a = slurp(tmp.path() / "a" / "nodes.csv");
    CHECK(a.rfind("node_id,x,y,energy\n", 0) == 0);
    CHECK(data_rows(a) == 25);
    CHECK(std::filesystem::exists(tmp.path() / "a" / "manifest.json"));

    REQUIRE(run({"generate", "--seed", "3", "--out", tmp / "b"}).code == 0);
    CHECK(slurp(tmp.path() / "b" / "nodes.csv") == a);

    spit(tmp.path() / "one.json", R"({"node_count": 1})");
    REQUIRE(run({"generate", "--config", tmp / "one.json", "--out", tmp / "c"}).code == 0);
    CHECK(data_rows(slurp(tmp.path() / "c" / "nodes.csv")) == 1);
}

TEST_CASE("generate: node table round-trips exactly")
{
    TempDir tmp;
    REQUIRE(run({"generate", "--seed", "8", "--out", tmp.path().string()}).code == 0);
    const auto nodes = records::nodes_from_table(read_table(tmp.path() / "nodes.csv"));
    ScenarioConfig c;
    c.seed = 8;
    CHECK(nodes == generate_scenario(c));
}

TEST_CASE("manifest records what is needed to reproduce the run")
{
    TempDir tmp;
    REQUIRE(run({"generate", "--seed", "77", "--comparator", "at-or-above", "--out", tmp.path().string()}).code == 0);
    const auto m = nlohmann::json::parse(slurp(tmp.path() / "manifest.json"));
    CHECK(m["seed"] == 77);
    CHECK(m["rng"] == std::string(kRngName));
    CHECK(m["comparator"] == "at_or_above");
    CHECK(m["config"]["seed"] == 77);
    CHECK(m["version"] == std::string(kToolVersion));
    CHECK(m.contains("timestamp"));
}

TEST_CASE("seed precedence: flag > config > environment > default")
{
    TempDir tmp;
    spit(tmp.path() / "noseed.json", R"({"node_count": 5})");
    spit(tmp.path() / "seeded.json", R"({"node_count": 5, "seed": 11})");
    auto seed_of = [&](std::vector<std::string> args) {
        args.insert(args.begin(), "generate");
        args.push_back("--out");
        args.push_back(tmp / "o");
        REQUIRE(run(args).code == 0);
        return nlohmann::json::parse(slurp(tmp.path() / "o" / "manifest.json"))["seed"].get<std::uint64_t>();
    };
    {
        EnvGuard env("12345");
        CHECK(seed_of({"--config", tmp / "noseed.json"}) == 12345);
        CHECK(seed_of({"--config", tmp / "seeded.json"}) == 11);
        CHECK(seed_of({"--config", tmp / "seeded.json", "--seed", "5"}) == 5);
    }
    {
        EnvGuard env(nullptr);
        CHECK(seed_of({"--config", tmp / "noseed.json"}) == ScenarioConfig{}.seed);
    }
    {
        EnvGuard env("not-a-number");
        CHECK(run({"generate", "--out", tmp / "o"}).code == kExitConfig);
    }
}

TEST_CASE("exit codes")
{
    TempDir tmp;
    spit(tmp.path() / "unknown.json", R"({"node_count": 5, "radius": 3})");
    auto r = run({"simulate", "--config", tmp / "unknown.json", "--out", tmp / "x"});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("radius") != std::string::npos);

    spit(tmp.path() / "invalid.json", R"({"tx_range": 0})");
    r = run({"generate", "--config", tmp / "invalid.json", "--out", tmp / "x"});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("tx_range") != std::string::npos);

    CHECK(run({"generate", "--config", tmp / "missing.json"}).code == kExitConfig);
    CHECK(run({"generate", "--format", "xml"}).code == kExitConfig);
    CHECK(run({"frobnicate"}).code == kExitConfig);
    CHECK(run({"--help"}).code == kExitOk);

    spit(tmp.path() / "bad_nodes.csv", "node_id,x,y,energy\n0,1,2,oops\n");
    CHECK(run({"cluster", "--nodes", tmp / "bad_nodes.csv", "--out", tmp / "x"}).code == kExitInput);
    spit(tmp.path() / "ragged.csv", "node_id,x,y,energy\n0,1,2\n");
    CHECK(run({"cluster", "--nodes", tmp / "ragged.csv", "--out", tmp / "x"}).code == kExitInput);
    CHECK(run({"cluster", "--nodes", tmp / "nope.csv", "--out", tmp / "x"}).code == kExitInput);
    CHECK(run({"validate", "--clusters", tmp / "nope.csv"}).code == kExitInput);
}

TEST_CASE("cluster: per-cluster energy files with the head at the maximum")
{
    TempDir tmp;
    REQUIRE(run({"generate", "--seed", "25", "--out", tmp.path().string()}).code == 0);
    REQUIRE(run({"cluster", "--nodes", tmp / "nodes.csv", "--out", tmp / "c"}).code == 0);

    const auto clusters = records::clusters_from_table(read_table(tmp.path() / "c" / "clusters.csv"));
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(tmp.path() / "c" / "energy_graph")) {
        ++files;
        const Table t = read_table(e.path());
        CHECK(t.columns == std::vector<std::string>{"cluster_id", "node_id", "is_head", "energy"});
        double head_energy = -1;
        double max_energy = -1;
        for (const auto& row : t.rows) {
            const double energy = cell_number(row[3], "energy");
            max_energy = std::max(max_energy, energy);
            if (cell_bool(row[2], "is_head")) {
                head_energy = energy;
            }
        }
        CHECK(head_energy == max_energy);
    }
    CHECK(files == clusters.clusters.size());
    CHECK(data_rows(slurp(tmp.path() / "c" / "addresses.csv")) == 25);
    CHECK(std::filesystem::exists(tmp.path() / "c" / "trace.csv"));
    CHECK(std::filesystem::exists(tmp.path() / "c" / "report.csv"));
}

TEST_CASE("cluster: singleton network")
{
    TempDir tmp;
    spit(tmp.path() / "one.csv", "node_id,x,y,energy\n0,10,10,700\n");
    REQUIRE(run({"cluster", "--nodes", tmp / "one.csv", "--out", tmp / "c"}).code == 0);
    const auto graph = slurp(tmp.path() / "c" / "energy_graph" / "cluster_0.csv");
    CHECK(graph == "cluster_id,node_id,is_head,energy\n0,0,true,700\n");
    CHECK_FALSE(std::filesystem::exists(tmp.path() / "c" / "report.csv"));
    CHECK(slurp(tmp.path() / "c" / "trace.csv") == "seq,from,to,kind,payload\n");
}

TEST_CASE("cluster: JSON output feeds back into validate")
{
    TempDir tmp;
    REQUIRE(run({"generate", "--seed", "4", "--format", "json", "--out", tmp.path().string()}).code == 0);
    REQUIRE(run({"cluster", "--nodes", tmp / "nodes.json", "--format", "json", "--out", tmp / "c"}).code == 0);
    const auto r = run({"validate", "--clusters", (tmp.path() / "c" / "clusters.json").string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("num_nodes,dunn_index,separation,overlap,compact,classification,recommend_recluster\n25,", 0) ==
          0);
}

TEST_CASE("validate: table row for a 0.52 index")
{
    TempDir tmp;
    // two clusters of 12 and 13 nodes on a line: max diameter 25, closest gap 13
    std::string csv = "cluster_id,node_id,is_head,exempt,energy,x,y\n";
    for (int i = 0; i < 12; ++i) {
        csv += "0," + std::to_string(i) + "," + (i == 0 ? "true" : "false") + ",false,600," +
               format_number(25.0 * i / 11) + ",0\n";
    }
    for (int i = 0; i < 13; ++i) {
        csv += "1," + std::to_string(12 + i) + "," + (i == 0 ? "true" : "false") + ",false,600," +
               std::to_string(38 + i) + ",0\n";
    }
    spit(tmp.path() / "clusters.csv", csv);
    const auto r = run({"validate", "--clusters", tmp / "clusters.csv", "--out", tmp / "v"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\n25,0.52,52%,48%,High,CompactWellSeparated,false\n") != std::string::npos);
    CHECK(std::filesystem::exists(tmp.path() / "v" / "report.csv"));
}

TEST_CASE("validate: degenerate, undefined and strict mode")
{
    TempDir tmp;
    spit(tmp.path() / "two.csv",
         "cluster_id,node_id,is_head,energy,x,y\n0,0,true,600,0,0\n1,1,true,600,5,0\n");
    auto r = run({"validate", "--clusters", tmp / "two.csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n2,inf,100%,0%,High,Degenerate,false\n") != std::string::npos);

    spit(tmp.path() / "one.csv", "cluster_id,node_id,is_head,energy,x,y\n0,0,true,600,0,0\n0,1,false,500,5,0\n");
    r = run({"validate", "--clusters", tmp / "one.csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("2,UNDEFINED_INDEX") != std::string::npos);
    r = run({"validate", "--clusters", tmp / "one.csv", "--strict"});
    CHECK(r.code == kExitDomain);

    spit(tmp.path() / "dup.csv", "cluster_id,node_id,is_head,energy,x,y\n0,0,true,600,1,1\n1,1,true,600,1,1\n");
    CHECK(run({"validate", "--clusters", tmp / "dup.csv", "--strict"}).code == kExitDomain);

    spit(tmp.path() / "headless.csv", "cluster_id,node_id,is_head,energy,x,y\n0,0,false,600,1,1\n");
    CHECK(run({"validate", "--clusters", tmp / "headless.csv"}).code == kExitInput);
}

TEST_CASE("simulate: outputs, replay and thread independence")
{
    TempDir tmp;
    REQUIRE(run({"simulate", "--seed", "21", "--out", tmp / "a"}).code == 0);
    for (const char* f : {"nodes.csv", "timeline.csv", "reports.csv", "events.csv", "trace.csv", "addresses.csv",
                          "manifest.json"}) {
        CHECK(std::filesystem::exists(tmp.path() / "a" / f));
    }
    const auto timeline = read_table(tmp.path() / "a" / "timeline.csv");
    CHECK(timeline.rows.size() == 6 * 25);
    CHECK(data_rows(slurp(tmp.path() / "a" / "reports.csv")) == 6);

    REQUIRE(run({"simulate", "--manifest", (tmp.path() / "a" / "manifest.json").string(), "--threads", "4", "--out",
                 tmp / "b"})
                .code == 0);
    CHECK(cli_test::data_files(tmp.path() / "a") == cli_test::data_files(tmp.path() / "b"));

    auto ma = nlohmann::json::parse(slurp(tmp.path() / "a" / "manifest.json"));
    auto mb = nlohmann::json::parse(slurp(tmp.path() / "b" / "manifest.json"));
    ma.erase("timestamp");
    mb.erase("timestamp");
    CHECK(ma == mb);
}

TEST_CASE("sweep: plot data for each node count")
{
    TempDir tmp;
    const auto r = run({"sweep", "--node-counts", "25,50", "--seeds", "3", "--seed", "100", "--out", tmp.path().string()});
    REQUIRE(r.code == 0);
    const auto fig7 = slurp(tmp.path() / "fig7_dunn_index.dat");
    CHECK(fig7.rfind("# num_nodes median_dunn_index\n25 ", 0) == 0);
    CHECK(fig7.find("\n50 ") != std::string::npos);
    CHECK(data_rows(slurp(tmp.path() / "sweep_runs.csv")) == 6);
    CHECK(std::filesystem::exists(tmp.path() / "fig8_separation_overlap.dat"));
    CHECK(std::filesystem::exists(tmp.path() / "fig9_compactness.dat"));

    const auto m = nlohmann::json::parse(slurp(tmp.path() / "manifest.json"));
    CHECK(m["sweep"]["seeds"] == 3);

    REQUIRE(run({"sweep", "--manifest", (tmp.path() / "manifest.json").string(), "--out", tmp / "replay"}).code == 0);
    CHECK(slurp(tmp.path() / "replay" / "sweep_runs.csv") == slurp(tmp.path() / "sweep_runs.csv"));
}

TEST_CASE("median")
{
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK(std::isinf(median({1, INFINITY})));
    CHECK(std::isnan(median({})));
}

TEST_CASE("csv parsing handles quotes and CRLF")
{
    const auto t = parse_csv("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\r\n");
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == "x,1");
    CHECK(t.rows[0][1] == "say \"hi\"");
    CHECK_THROWS_AS(parse_csv("a\n\"open"), Error);
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-INFINITY) == "-inf");
}
