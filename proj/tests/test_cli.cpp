#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "bongle/bongle.hpp"
#include "bongle/optimizer.hpp"
#include "cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::initializer_list<std::string> args) {
    std::ostringstream out, err;
    const int code = bongle::cli::run(std::vector<std::string>(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classify human output") {
    const Run r = cli({"classify", "O0 I1 O0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("alternating:  no") != std::string::npos);
    CHECK(r.out.find("NonAlternatingTypeIII") != std::string::npos);
    CHECK(r.out.find("hyperbolic:   no") != std::string::npos);

    const Run wh = cli({"classify", "O0 O0"});
    CHECK(wh.code == 0);
    CHECK(wh.out.find("Whitehead") != std::string::npos);
    CHECK(wh.out.find("3.663862377") != std::string::npos);

    const Run bal = cli({"classify", "O0 I0 O0 I0"});
    CHECK(bal.out.find("balanced:     yes") != std::string::npos);
    CHECK(bal.out.find("central 6, exterior 6") != std::string::npos);
}

TEST_CASE("classify json round trips the bongle") {
    const Run r = cli({"--format", "json", "classify", "O0 I1 O1 I0"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const bongle::Bongle back = bongle::bongle_from_json(j["bongle"].dump());
    CHECK(back == bongle::parse_bongle("O0 I1 O1 I0"));
    CHECK(j["verdict"]["reason"] == "NonAlternatingTypeII");
}

TEST_CASE("exit codes") {
    CHECK(cli({"classify", "O0 XX"}).code == 2);
    CHECK(cli({"volume", "O0 O1"}).code == 3);
    CHECK(cli({"volume", "bogus"}).code == 2);
    CHECK(cli({"nonsense"}).code == 1);
    CHECK(cli({"enumerate", "99"}).code == 1);  // cap exceeded
    CHECK(cli({"volume", "O0 O1 O0"}).code == 3);
}

TEST_CASE("volume command") {
    const Run wh = cli({"volume", "O0 O0"});
    CHECK(wh.code == 0);
    CHECK(wh.out.find("3.663862377") != std::string::npos);
    CHECK(wh.out.find("KnownLink") != std::string::npos);

    const Run bal = cli({"--format", "json", "volume", "O0 I0 O0 I0", "--verify"});
    CHECK(bal.code == 0);
    const auto j = nlohmann::json::parse(bal.out);
    CHECK(j["method"] == "BalancedClosedForm");
    CHECK(j.contains("cross_check_volume"));
    CHECK(std::abs(j["volume"].get<double>() - j["cross_check_volume"].get<double>()) < 1e-6);
}

TEST_CASE("volume json report round trips through the library parser") {
    const Run r = cli({"--format", "json", "volume", "O0 O0 O0"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    j.erase("bongle");
    j.erase("spec");
    const auto rep = bongle::volume_report_from_json(j.dump());
    CHECK(rep.method == bongle::VolumeMethod::Optimizer);
    CHECK(rep.volume > 12.0);
}

TEST_CASE("dump triangulation flag") {
    const Run r = cli({"volume", "O0 O0 O0", "--dump-triangulation"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ideal_classes") != std::string::npos);
}

TEST_CASE("enumerate") {
    const Run r = cli({"--format", "json", "enumerate", "8", "--filter", "balanced"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["count"] == 7);

    const Run h = cli({"enumerate", "3", "--filter", "alternating"});
    CHECK(h.out.find("2 classes") != std::string::npos);
}

TEST_CASE("table csv is deterministic and collapses balanced duplicates") {
    const Run a = cli({"--format", "csv", "table", "3", "4"});
    const Run b = cli({"--format", "csv", "table", "3", "4"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);  // byte identical
    CHECK(a.out.rfind("n,k,bongle,volume,method,convention,note\n", 0) == 0);
    CHECK(a.out.find("same volume as") != std::string::npos);
    CHECK(a.out.find("BalancedClosedForm") != std::string::npos);
    CHECK(a.out.find("\r") == std::string::npos);  // LF endings

    // row count per n matches the enumeration
    int lines = -1;  // skip header
    for (char c : a.out)
        if (c == '\n') ++lines;
    const auto n3 = bongle::enumerate_bongles(3, bongle::BongleFilter::Alternating);
    const auto n4 = bongle::enumerate_bongles(4, bongle::BongleFilter::Alternating);
    CHECK(lines == static_cast<int>(n3.size() + n4.size()));
}

TEST_CASE("bounds and scans") {
    const Run b = cli({"--format", "csv", "bounds", "3", "11"});
    CHECK(b.code == 0);
    CHECK(b.out.find("inequality_holds") != std::string::npos);
    // all rows hold the inequality: no ",0\n" terminator in the last column
    std::istringstream lines(b.out);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) CHECK(line.substr(line.size() - 2) == ",1");

    const Run lim = cli({"scan", "limit", "2", "50"});
    CHECK(lim.code == 0);
    CHECK(lim.out.rfind("n,v_n_b_over_n,gap\n", 0) == 0);

    const Run mono = cli({"scan", "monotonic", "2", "30"});
    CHECK(mono.code == 0);
    CHECK(mono.out.find("combined_decreased") != std::string::npos);

    const Run ko = cli({"--format", "json", "scan", "korder", "4"});
    CHECK(ko.code == 0);
    const auto j = nlohmann::json::parse(ko.out);
    CHECK(j["observed_monotone"] == true);
    CHECK(j["rows"].size() == 4);

    // csv starts with the header row, no comment lines
    const Run kc = cli({"--format", "csv", "scan", "korder", "4"});
    CHECK(kc.code == 0);
    CHECK(kc.out.rfind("k,bongle,volume,method,matches_closed_form\n", 0) == 0);
}

TEST_CASE("options json merges with explicit flags winning") {
    const Run r = cli({"--format", "json", "volume", "O0 O0 O0", "--options-json",
                       R"({"restarts": 1, "tol": 1e-7})"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("restart_spread"));  // restarts came from the JSON object
    CHECK(cli({"volume", "O0 O0", "--options-json", "{bad"}).code == 1);
}
