#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "vi/mochizuki.hpp"
#include "vi/report.hpp"
#include "vi/serialize.hpp"

using namespace vi;

namespace {

// run the CLI binary (ctest working directory is the build tree)
int run_cli(const std::string& args, std::string* output = nullptr) {
    std::string cmd = "./vi " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int rc = pclose(p);
    if (output) *output = out;
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("series command prints exact expansions; unknown name exits 2") {
    std::string out;
    CHECK(run_cli("series --name delta --order 5", &out) == 0);
    CHECK(out.find("\"-24\"") != std::string::npos);
    CHECK(out.find("252") != std::string::npos);
    CHECK(run_cli("series --name not-a-series --order 5") == 2);
}

TEST_CASE("universal command is idempotent and byte-identical") {
    setenv("VI_CACHE_DIR", "./test-cache", 1);
    std::system("rm -rf ./test-cache");
    std::string a, b;
    CHECK(run_cli("universal --invariant euler --order 2", &a) == 0);
    CHECK(run_cli("universal --invariant euler --order 2", &b) == 0);
    CHECK(a == b);
    CHECK(a.find("\"order\": 2") != std::string::npos);
    unsetenv("VI_CACHE_DIR");
}

TEST_CASE("universal --order 0 gives all A_i = 1") {
    auto uni = moc::extract_universal(moc::InsertionKind::Euler, 1, hilb::default_dir());
    for (auto& a : uni.A) {
        CHECK(a.coeff_int(0) == RatFunc::one());
    }
}

TEST_CASE("verify exit codes: pass is 0, usage/config error is 2") {
    CHECK(run_cli("verify --conjecture gn-identity --max-order 4") == 0);
    CHECK(run_cli("verify --conjecture euler-rk2 --surface no-such-surface") == 2);
    CHECK(run_cli("nonsense") != 0);
}

TEST_CASE("verify euler-rk2 on K3 runs the expansion oracle") {
    std::string out;
    CHECK(run_cli("verify --conjecture euler-rk2 --surface K3 --max-vd 12", &out) == 0);
    CHECK(out.find("\"status\": \"pass\"") != std::string::npos);
    CHECK(out.find("\"324\"") != std::string::npos);  // e(K3^[2])
}

TEST_CASE("report --suite fast passes and embeds the assumption ledger") {
    std::string out;
    CHECK(run_cli("report --suite fast", &out) == 0);
    CHECK(out.find("assumptions") != std::string::npos);
    CHECK(out.find("FAIL") == std::string::npos);
    CHECK(run_cli("report --suite bogus") == 2);
    CHECK(run_cli("report") == 2);
}

TEST_CASE("cache files round-trip through the documented schema") {
    auto uni = moc::extract_universal(moc::InsertionKind::Euler, 2, hilb::default_dir());
    auto text = moc::universal_to_json(uni);
    auto back = moc::universal_from_json(text);
    CHECK(moc::universal_to_json(back) == text);
}
