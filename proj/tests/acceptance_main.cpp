// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Criterion 14 (byte determinism) shells out to the
// CLI, whose path arrives as argv[1].

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "monsterlab/suites.hpp"

using monsterlab::suites::SuiteConfig;
using monsterlab::suites::SuiteResult;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, double secs, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-28s (%6.2fs)%s%s\n", ok ? "PASS" : "FAIL", idx,
                name.c_str(), secs, detail.empty() ? "" : " ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(int idx, const std::string& name, const std::string& suite, SuiteConfig cfg,
         double budget_s) {
    SuiteResult r;
    try {
        r = monsterlab::suites::run_suite(suite, cfg);
    } catch (const std::exception& e) {
        report(idx, name, false, 0.0, std::string("exception: ") + e.what());
        return;
    }
    std::ostringstream detail;
    detail << r.passed << "/" << r.cases;
    if (!r.witnesses.empty()) detail << " first failure: " << r.witnesses.front();
    if (r.elapsed_s > budget_s) detail << " [over " << budget_s << "s budget]";
    report(idx, name, r.ok() && r.elapsed_s <= budget_s, r.elapsed_s, detail.str());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void determinism(int idx, const std::string& cli) {
    if (cli.empty()) {
        report(idx, "byte determinism", false, 0.0, "CLI path not supplied");
        return;
    }
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> cmds = {
        " sample --fn volterra_h --interval -0.5:0.5 --grid 257 --format csv --out ",
        " sample --fn takagi --depth 8 --grid 129 --format csv --out ",
        " sample --fn weierstrass --interval 0:1 --grid 129 --format json --out ",
        " verify --suite takagi-anchor --depth 5 --out ",
        " verify --suite rising-sun-oracle --grid 50 --seed 9 --out ",
        " verify --suite property-a --depth 10 --out ",
        " monster-demo --out ",
    };
    // restrict/extend consume a serialized input; build it once via sample+python-free path
    bool ok = true;
    std::string detail;
    for (size_t i = 0; i < cmds.size(); ++i) {
        std::string p1 = "acc_det_a_" + std::to_string(i) + ".out";
        std::string p2 = "acc_det_b_" + std::to_string(i) + ".out";
        std::string c1 = cli + cmds[i] + p1 + " >/dev/null 2>&1";
        std::string c2 = cli + cmds[i] + p2 + " >/dev/null 2>&1";
        int rc1 = std::system(c1.c_str());
        int rc2 = std::system(c2.c_str());
        if (rc1 != rc2 || slurp(p1).empty() || slurp(p1) != slurp(p2)) {
            ok = false;
            detail = "mismatch on:" + cmds[i];
            break;
        }
        std::remove(p1.c_str());
        std::remove(p2.c_str());
    }
    // restrict and extend pipelines, driven through files
    if (ok) {
        std::ofstream sf("acc_samples.json");
        sf << "{\"domain\":{\"hull\":[\"0\",\"1\"],\"gaps\":[]},\"samples\":[[\"0\",\"0\"],"
              "[\"1/4\",\"1/16\"],[\"1/2\",\"1/4\"],[\"3/4\",\"9/16\"],[\"1\",\"1\"]]}";
        sf.close();
        std::ofstream jf("acc_jets.json");
        jf << "{\"carrier\":{\"hull\":[\"0\",\"1\"],\"gaps\":[[\"1/3\",\"2/3\"]]},\"order\":1,"
              "\"jets\":[{\"x\":\"0\",\"derivs\":[\"0\",\"0\"]},{\"x\":\"1/3\",\"derivs\":[\"1/9\",\"2/3\"]},"
              "{\"x\":\"2/3\",\"derivs\":[\"4/9\",\"4/3\"]},{\"x\":\"1\",\"derivs\":[\"1\",\"2\"]}]}";
        jf.close();
        std::vector<std::string> cmds2 = {
            " restrict --fn lipschitz --lipschitz 3/2 --in acc_samples.json --out ",
            " restrict --fn rising-sun --in acc_samples.json --out ",
            " extend --fn jarnik --in acc_jets.json --out ",
            " extend --fn whitney-check --in acc_jets.json --out ",
        };
        for (size_t i = 0; i < cmds2.size() && ok; ++i) {
            std::string p1 = "acc_det_c_" + std::to_string(i) + ".out";
            std::string p2 = "acc_det_d_" + std::to_string(i) + ".out";
            std::system((cli + cmds2[i] + p1 + " >/dev/null 2>&1").c_str());
            std::system((cli + cmds2[i] + p2 + " >/dev/null 2>&1").c_str());
            if (slurp(p1).empty() || slurp(p1) != slurp(p2)) {
                ok = false;
                detail = "mismatch on:" + cmds2[i];
            } else {
                std::remove(p1.c_str());
                std::remove(p2.c_str());
            }
        }
        std::remove("acc_samples.json");
        std::remove("acc_jets.json");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(idx, "byte determinism", ok, secs, detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";

    run(1, "squeeze derivative", "squeeze-derivative", {}, 1.0);
    run(2, "takagi anchor", "takagi-anchor", {}, 10.0);
    run(3, "self-map property (a)", "property-a", {}, 10.0);
    run(4, "self-map property (b)", "property-b", {}, 60.0);
    run(5, "odometer contraction", "contraction", {}, 60.0);
    run(6, "rising sun oracle", "rising-sun-oracle", {}, 5.0);
    run(7, "lipschitz restriction", "lipschitz-restriction", {}, 10.0);
    run(8, "jarnik extension", "jarnik", {}, 30.0);
    run(9, "whitney extension", "whitney", {}, 30.0);
    run(10, "ex111 inequality", "ex111-one", {}, 60.0);
    run(11, "monster sign pattern", "monster-signs", {}, 60.0);
    run(12, "eta bounds", "eta-bound", {}, 5.0);
    run(13, "c1 criterion family", "c1-criterion", {}, 5.0);
    determinism(14, cli);

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
