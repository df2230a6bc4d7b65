// End-to-end command-line contract: output schemas, exit codes, the run
// manifest, environment overrides, and the fault-injection build that must
// turn verification red.

#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs `env cmd args` through the shell, capturing stdout.
RunResult run(const std::string& command) {
    RunResult res;
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int status = ::pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

const std::string kCli = JACKSTEIN_CLI_PATH;
const std::string kFaulty = JACKSTEIN_FAULTY_CLI_PATH;

std::string temp_path(const std::string& stem) {
    return std::string("/tmp/jackstein_test_") + stem + "_" + std::to_string(::getpid());
}

std::size_t line_count(const std::string& path) {
    std::ifstream in(path);
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++n;
    return n;
}

}  // namespace

TEST_CASE("measure: row count, mass, and exact JSON round-trip", "[cli]") {
    const auto csv = run(kCli + " measure --n 6 --alpha 2 --format csv 2>/dev/null");
    REQUIRE(csv.exit_code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    REQUIRE(line == "partition,prob_num,prob_den,prob_float,w_value");
    unsigned rows = 0;
    double mass = 0.0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        // third numeric field is the float probability
        const auto q2 = line.rfind(',');
        const auto q1 = line.rfind(',', q2 - 1);
        mass += std::stod(line.substr(q1 + 1, q2 - q1 - 1));
    }
    REQUIRE(rows == 11);  // partitions of 6
    REQUIRE(mass == Catch::Approx(1.0).margin(1e-9));

    const auto js = run(kCli + " measure --n 6 --alpha 5/3 2>/dev/null");
    REQUIRE(js.exit_code == 0);
    const json law = json::parse(js.out);
    REQUIRE(law.at("n") == 6);
    REQUIRE(law.at("alpha") == "5/3");
    REQUIRE(law.at("entries").size() == 11);
    // Exact rational strings survive the trip.
    bool saw_staircase = false;
    for (const auto& e : law.at("entries"))
        if (e.at("partition") == "[3,2,1]") {
            saw_staircase = true;
            REQUIRE(e.at("prob").get<std::string>().find('/') != std::string::npos);
        }
    REQUIRE(saw_staircase);
}

TEST_CASE("enumerate agrees with the measure row count", "[cli]") {
    const auto res = run(kCli + " enumerate --n 7 --format json 2>/dev/null");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    REQUIRE(j.at("count") == 15);
    REQUIRE(j.at("partitions")[0] == "[7]");
    REQUIRE(j.at("partitions").back() == "[1,1,1,1,1,1,1]");
}

TEST_CASE("bounds: uniform rate anchor and csv shape", "[cli]") {
    const std::string manifest = temp_path("manifest_bounds");
    const auto res = run(kCli + " bounds --n 100 --alpha 1 --manifest " + manifest +
                         " 2>/dev/null");
    REQUIRE(res.exit_code == 0);
    const json arr = json::parse(res.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr[0].at("name") == "uniform-ks-main");
    REQUIRE(arr[0].at("rhs").get<double>() == Catch::Approx(0.82).margin(1e-12));
    REQUIRE(arr[0].at("lhs").is_null());  // informational: no exact lhs at n=100

    const auto csv = run(kCli + " bounds --n 10 --alpha 100 --exact --format csv --manifest " +
                         manifest + " 2>/dev/null");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(csv.out.rfind("name,lhs,rhs,verdict,context", 0) == 0);
    REQUIRE(csv.out.find("uniform-ks-large-alpha") != std::string::npos);
    REQUIRE(csv.out.find("7.8,pass") != std::string::npos);
    std::remove(manifest.c_str());
}

TEST_CASE("ks: exact distance of the size-3 statistic", "[cli]") {
    const auto res = run(kCli + " ks --n 3 --alpha 1 2>/dev/null");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    REQUIRE(j.at("distance").get<double>() == Catch::Approx(1.0 / 3.0).margin(1e-12));
    REQUIRE(j.at("witness_x").get<double>() == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(j.at("method") == "exact-discrete");

    const auto star = run(kCli + " ks --n 3 --alpha 1 --target w-star 2>/dev/null");
    REQUIRE(star.exit_code == 0);
    REQUIRE(json::parse(star.out).at("method") == "exact-piecewise");
}

TEST_CASE("zerobias: transform output and checks from a JSON law", "[cli]") {
    const std::string law_path = temp_path("law.json");
    {
        std::ofstream os(law_path);
        os << R"({"atoms": ["-1", "1", "3"], "masses": ["5/8", "1/4", "1/8"]})";
    }
    const auto res = run(kCli + " zerobias --law " + law_path + " 2>/dev/null");
    REQUIRE(res.exit_code == 0);
    const json zb = json::parse(res.out);
    REQUIRE(zb.at("breakpoints") == json::array({"-1", "1", "3"}));
    REQUIRE(zb.at("density_levels") == json::array({"5/16", "3/16"}));
    REQUIRE(zb.at("sigma2") == "2");

    const auto ident = run(kCli + " zerobias --law " + law_path + " --check identity 2>/dev/null");
    REQUIRE(ident.exit_code == 0);
    for (const auto& r : json::parse(ident.out)) REQUIRE(r.at("verdict") == "pass");

    const auto ros = run(kCli + " zerobias --law rademacher --check rosenthal --p-int 4 --m 4"
                                " 2>/dev/null");
    REQUIRE(ros.exit_code == 0);
    const json rr = json::parse(ros.out);
    REQUIRE(rr[0].at("name") == "rosenthal-coupling");
    REQUIRE(rr[0].at("lhs").get<double>() == Catch::Approx(40.0).margin(1e-9));
    std::remove(law_path.c_str());
}

TEST_CASE("verify appends exactly one manifest line per run", "[cli]") {
    const std::string manifest = temp_path("manifest_verify");
    std::remove(manifest.c_str());
    const auto r1 = run(kCli + " verify --suite growth --n-max 6 --manifest " + manifest +
                        " 2>/dev/null");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(line_count(manifest) == 1);
    const auto r2 = run(kCli + " verify --suite measure --n-max 6 --manifest " + manifest +
                        " 2>/dev/null");
    REQUIRE(r2.exit_code == 0);
    REQUIRE(line_count(manifest) == 2);

    std::ifstream in(manifest);
    std::string line;
    while (std::getline(in, line)) {
        const json entry = json::parse(line);
        REQUIRE(entry.at("subcommand") == "verify");
        REQUIRE(entry.at("verdict") == "pass");
        REQUIRE(entry.at("version") == "1.0.0");
        REQUIRE(entry.at("timestamp").get<std::string>().find('T') != std::string::npos);
    }

    const auto rep = run(kCli + " report --manifest " + manifest + " 2>/dev/null");
    REQUIRE(rep.exit_code == 0);
    REQUIRE(json::parse(rep.out).at("runs") == 2);
    std::remove(manifest.c_str());
}

TEST_CASE("exit codes: usage errors are 2, verification failures are 1", "[cli]") {
    REQUIRE(run(kCli + " measure --n abc 2>/dev/null").exit_code == 2);
    REQUIRE(run(kCli + " nosuchcommand 2>/dev/null").exit_code == 2);
    REQUIRE(run(kCli + " measure --n 5 --alpha -3 2>/dev/null").exit_code == 2);
    REQUIRE(run(kCli + " zerobias --check kappa --p 7 2>/dev/null").exit_code == 2);
    REQUIRE(run(kCli + " --help >/dev/null 2>&1").exit_code == 0);
    REQUIRE(run("JACKSTEIN_MAX_N=5 " + kCli + " measure --n 6 --alpha 1 2>/dev/null").exit_code ==
            2);
    REQUIRE(run("JACKSTEIN_MAX_N=12 " + kCli + " measure --n 12 --alpha 1 >/dev/null 2>&1")
                .exit_code == 0);
}

TEST_CASE("fault injection flips verification to failure", "[cli]") {
    const std::string manifest = temp_path("manifest_fault");
    // The hardened binary ignores the fault switch entirely.
    const auto clean = run("JACKSTEIN_FAULT=kernel " + kCli + " verify --suite growth --n-max 6" +
                           " --manifest " + manifest + " 2>/dev/null");
    REQUIRE(clean.exit_code == 0);
    // The fault build perturbs one kernel entry; coherence must catch it.
    const auto faulty = run("JACKSTEIN_FAULT=kernel " + kFaulty +
                            " verify --suite growth --n-max 6 --manifest " + manifest +
                            " 2>/dev/null");
    REQUIRE(faulty.exit_code == 1);
    const json detail = json::parse(faulty.out);
    REQUIRE(detail.at("failures").get<unsigned>() > 0);
    REQUIRE(std::string(detail.at("detail")[0].at("name")).rfind("growth-", 0) == 0);
    // Without the switch the fault build behaves normally.
    const auto idle = run(kFaulty + " verify --suite growth --n-max 6 --manifest " + manifest +
                          " 2>/dev/null");
    REQUIRE(idle.exit_code == 0);
    std::remove(manifest.c_str());
}

TEST_CASE("sample: reproducible csv stream", "[cli]") {
    const auto a = run(kCli + " sample --n 20 --alpha 1 --num 5 --seed 4 --format csv"
                              " 2>/dev/null");
    const auto b = run(kCli + " sample --n 20 --alpha 1 --num 5 --seed 4 --format csv"
                              " 2>/dev/null");
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out.rfind("w_value\n", 0) == 0);
    const auto c = run(kCli + " sample --n 20 --alpha 1 --num 5 --seed 5 --format csv"
                              " 2>/dev/null");
    REQUIRE(a.out != c.out);
}

TEST_CASE("mcks: compact statistical run emits a full report", "[cli]") {
    const auto res = run(kCli + " mcks --n 30 --alpha 2 --num 5000 --seed 1 2>/dev/null");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    REQUIRE(j.at("ks").at("method") == "empirical");
    REQUIRE(j.at("ks").at("dkw_margin").get<double>() > 0.0);
    REQUIRE(j.at("config").at("num_samples") == 5000);
    REQUIRE(j.at("moments").contains("var"));
    REQUIRE(j.at("bounds").size() == 3);
    for (const auto& b : j.at("bounds")) REQUIRE(b.at("verdict") == "pass");
}
