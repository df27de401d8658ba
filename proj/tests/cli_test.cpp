// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "expiring/cli.hpp"

using namespace expiring;
using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string text;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "expiring");
    std::vector<char const*> argv;
    for (auto const& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    int const code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out);
    return {code, out.str()};
}

}  // namespace

TEST_CASE("flux as json")
{
    auto const r = invoke({"flux", "--n", "3", "--M", "3", "--format", "json"});
    CHECK(r.code == cli::kOk);
    auto const doc = json::parse(r.text);
    CHECK(doc["exact"] == "4/27");
    CHECK(doc["log"].get<double>() == doctest::Approx(-1.909542504884439).epsilon(1e-14));
    CHECK(r.text.find("-1.90954250488444") != std::string::npos);
}

TEST_CASE("mass as csv")
{
    auto const r = invoke({"mass", "--n", "2", "--M", "2", "--format", "csv"});
    CHECK(r.code == cli::kOk);
    CHECK(r.text == "n,M,exact,log\n2,2,1/2,-0.693147180559945\n");
}

TEST_CASE("simulate with one type")
{
    auto const r = invoke({"simulate", "--n", "1", "--M", "1", "--trials", "10", "--samples"});
    REQUIRE(r.code == cli::kOk);
    auto const doc = json::parse(r.text);
    CHECK(doc["samples"] == json::array({1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
    CHECK(doc["gof"].is_null());
}

TEST_CASE("window selectors")
{
    cli::RunConfig config;
    config.alpha = 0.7;
    CHECK(cli::resolve_window(config, 1000) == 4835);
    config.alpha.reset();
    config.linear = 2.0;
    CHECK(cli::resolve_window(config, 200) == 400);
    config.linear.reset();
    config.offset = 0.0;
    CHECK(cli::resolve_window(config, 2000) == 15202);

    auto const none = invoke({"flux", "--n", "3"});
    CHECK(none.code == cli::kUsage);
    auto const two = invoke({"flux", "--n", "3", "--M", "5", "--a", "2"});
    CHECK(two.code == cli::kUsage);
    CHECK(json::parse(two.text)["error"]["kind"] == "usage");
}

TEST_CASE("error codes")
{
    auto const domain = invoke({"flux", "--n", "3", "--M", "2"});
    CHECK(domain.code == cli::kDomain);
    CHECK(json::parse(domain.text)["error"]["kind"] == "domain");

    auto const budget = invoke({"oracle", "--n", "30", "--M", "60"});
    CHECK(budget.code == cli::kOk);
    CHECK(json::parse(budget.text)["mass"].is_null());

    auto const truncated = invoke({"simulate", "--n", "30", "--M", "30", "--trials", "5", "--step-cap", "30"});
    CHECK(truncated.code == cli::kBudget);

    auto const usage = invoke({"nonsense"});
    CHECK(usage.code == cli::kUsage);
    auto const bad_format = invoke({"flux", "--n", "3", "--M", "3", "--format", "xml"});
    CHECK(bad_format.code == cli::kUsage);
}

TEST_CASE("every command produces parseable output")
{
    std::vector<std::vector<std::string>> const calls{
        {"flux", "--n", "6", "--M", "8"},
        {"mass", "--n", "5", "--a", "3"},
        {"simulate", "--n", "4", "--M", "6", "--trials", "200"},
        {"scan", "--n", "3", "--M", "4", "--horizon", "20000"},
        {"theta", "--n", "3", "--M", "4", "--trials", "500"},
        {"oracle", "--n", "3", "--M", "4"},
        {"ztp", "--N", "20", "--m", "40"},
        {"rate", "--n", "50", "100", "--a", "2"},
        {"regimes", "--n", "100", "--c", "0.5"},
    };
    for (auto const& args : calls) {
        CAPTURE(args.front());
        auto const r = invoke(args);
        REQUIRE(r.code == cli::kOk);
        CHECK(json::accept(r.text));
        auto csv_args = args;
        csv_args.insert(csv_args.end(), {"--format", "csv"});
        auto const c = invoke(csv_args);
        REQUIRE(c.code == cli::kOk);
        auto const header_end = c.text.find('\n');
        REQUIRE(header_end != std::string::npos);
        auto const columns = std::count(c.text.begin(), c.text.begin() + header_end, ',');
        std::istringstream lines(c.text.substr(header_end + 1));
        for (std::string line; std::getline(lines, line);) {
            CHECK(std::count(line.begin(), line.end(), ',') == columns);
        }
    }
}

TEST_CASE("oracle output")
{
    auto const doc = json::parse(invoke({"oracle", "--n", "3", "--M", "4"}).text);
    CHECK(doc["mass"] == "4/9");
    CHECK(doc["flux"] == "4/27");
    CHECK(doc["expected_T"] == "47/8");
    CHECK(doc["theta"] == "1/3");
}

TEST_CASE("identical flags give identical bytes")
{
    std::vector<std::string> const args{"simulate", "--n", "5", "--M", "7", "--trials", "2000", "--seed", "9"};
    CHECK(invoke(args).text == invoke(args).text);
    std::vector<std::string> const theta{"theta", "--n", "5", "--M", "7", "--trials", "2000"};
    CHECK(invoke(theta).text == invoke(theta).text);
}

TEST_CASE("csv columns do not depend on the parameters")
{
    auto header = [](std::string const& text) { return text.substr(0, text.find('\n')); };
    CHECK(header(invoke({"regimes", "--n", "1", "--M", "4", "--format", "csv"}).text) ==
          header(invoke({"regimes", "--n", "100", "--alpha", "0.7", "--format", "csv"}).text));
    CHECK(header(invoke({"simulate", "--n", "1", "--M", "1", "--trials", "3", "--format", "csv"}).text) ==
          header(invoke({"simulate", "--n", "3", "--M", "4", "--trials", "30", "--format", "csv"}).text));
}
