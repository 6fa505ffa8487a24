#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "monsterlab/config.hpp"
#include "monsterlab/extend.hpp"
#include "monsterlab/monsters.hpp"
#include "monsterlab/perfectsets.hpp"
#include "monsterlab/restrict.hpp"
#include "monsterlab/suites.hpp"

using namespace monsterlab;

namespace {

struct Options {
    std::string fn;
    std::string suite;
    std::string out;
    std::string in;
    std::string format = "csv";
    std::string interval = "-1:1";
    int depth = -1;
    long grid = 1001;
    double tol = -1;
    std::uint64_t seed = 1;
    Rational lipschitz_L = Rational(2);
};

void write_file(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::fwrite(data.data(), 1, data.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<double, double> parse_interval(const std::string& s) {
    auto colon = s.find(':', 1);  // allow a leading minus sign
    if (colon == std::string::npos) throw std::runtime_error("interval must be a:b");
    double a = std::stod(s.substr(0, colon));
    double b = std::stod(s.substr(colon + 1));
    if (!(a < b)) throw std::runtime_error("interval must satisfy a < b");
    return {a, b};
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

BallFn lookup_fn(const std::string& name) {
    if (name == "volterra_h") return [](double x) { return monsters::volterra_h(x); };
    if (name == "volterra_h_prime") return [](double x) { return monsters::volterra_h_prime(x); };
    if (name == "psi") return [](double x) { return monsters::psi(x); };
    if (name == "phi") return [](double x) { return monsters::phi(x); };
    if (name == "eta") return [](double x) { return monsters::eta(x); };
    if (name == "eta_prime") return [](double x) { return monsters::eta_prime(x); };
    if (name == "weierstrass") {
        return [](double x) { return monsters::weierstrass_W(x, 30); };
    }
    if (name == "pompeiu_g") {
        auto spec = std::make_shared<monsters::PompeiuSpec>(monsters::PompeiuSpec::standard());
        return [spec](double x) { return monsters::pompeiu_g(*spec, x); };
    }
    if (name == "pompeiu_h") {
        auto spec = std::make_shared<monsters::PompeiuSpec>(monsters::PompeiuSpec::standard());
        return [spec](double y) { return monsters::pompeiu_h_ball(*spec, y, 1e-12); };
    }
    if (name == "monster") {
        auto spec = std::make_shared<monsters::MonsterSpec>(monsters::make_monster_spec(
            monsters::PompeiuSpec::standard(), 0.6180339887498949, 8));
        return [spec](double x) { return monsters::monster(*spec, x); };
    }
    if (name == "andy_gamma") return [](double x) { return monsters::andy_gamma(x); };
    if (name == "andy_psi") {
        auto spec = std::make_shared<monsters::AndySpec>(monsters::AndySpec::standard());
        return [spec](double x) { return monsters::andy_psi(*spec, x); };
    }
    throw std::runtime_error("unknown function id: " + name);
}

int cmd_sample(const Options& opt) {
    std::ostringstream out;
    auto [a, b] = parse_interval(opt.interval);
    long n = opt.grid;
    if (n < 2) throw std::runtime_error("grid must be >= 2");

    // exact-rational paths render their own rows
    if (opt.fn == "takagi" || opt.fn == "ex111") {
        std::vector<std::array<std::string, 3>> rows;
        if (opt.fn == "takagi") {
            monsters::TakagiSpec spec{opt.depth > 0 ? opt.depth : 8};
            for (long i = 0; i < n; ++i) {
                Rational x(i, n - 1);
                auto v = monsters::takagi(spec, x);
                rows.push_back({rat_str(x), rat_str(v.partial), rat_str(v.tail)});
            }
        } else {
            auto ex = extend_ops::ex111_build(opt.depth > 0 ? opt.depth : 8);
            for (long i = 0; i < n; ++i) {
                Rational x(i * 2 * 3, n - 1);  // spread over [0,1] in sixths times grid
                x = Rational(i, n - 1);
                auto v = ex.f.eval_exact(x);
                rows.push_back({rat_str(x), rat_str(v.c), rat_str(v.r)});
            }
        }
        if (opt.format == "json") {
            nlohmann::json j;
            j["fn"] = opt.fn;
            auto arr = nlohmann::json::array();
            for (auto& r : rows) arr.push_back({r[0], r[1], r[2]});
            j["rows"] = arr;
            write_file(opt.out, j.dump(2) + "\n");
        } else {
            out << "# fn: " << opt.fn << "\n# precision: exact rationals rendered as decimals (%.17g)\n";
            out << "x,value,radius\n";
            for (auto& r : rows)
                out << num(rat_to_double(rat_parse(r[0]))) << ','
                    << num(rat_to_double(rat_parse(r[1]))) << ','
                    << num(rat_to_double(rat_parse(r[2]))) << '\n';
            write_file(opt.out, out.str());
        }
        return 0;
    }

    BallFn f = lookup_fn(opt.fn);
    if (opt.format == "json") {
        nlohmann::json j;
        j["fn"] = opt.fn;
        auto arr = nlohmann::json::array();
        for (long i = 0; i < n; ++i) {
            double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
            Ball v = f(x);
            arr.push_back({x, v.c, v.r});
        }
        j["rows"] = arr;
        write_file(opt.out, j.dump(2) + "\n");
    } else {
        out << "# fn: " << opt.fn << "\n# precision: binary64, %.17g\n";
        out << "x,value,radius\n";
        for (long i = 0; i < n; ++i) {
            double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
            Ball v = f(x);
            out << num(x) << ',' << num(v.c) << ',' << num(v.r) << '\n';
        }
        write_file(opt.out, out.str());
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    suites::SuiteConfig cfg;
    cfg.depth = opt.depth;
    cfg.grid = opt.grid == 1001 ? -1 : opt.grid;  // default grid means suite default
    cfg.tol = opt.tol;
    cfg.seed = opt.seed;
    auto res = suites::run_suite(opt.suite, cfg);
    write_file(opt.out, suites::suite_result_to_json(res));
    if (opt.out != "" && opt.out != "-")
        std::fprintf(stderr, "%s: %ld/%ld passed (%.2fs)\n", res.suite.c_str(), res.passed,
                     res.cases, res.elapsed_s);
    return res.failed == 0 ? 0 : 1;
}

int cmd_restrict(const Options& opt) {
    SampledFunction f = sampled_from_json(read_file(opt.in));
    Rational a = f.samples.front().first, b = f.samples.back().first;
    nlohmann::json j;
    if (opt.fn == "rising-sun") {
        auto sun = restrict_ops::rising_sun(f, a, b);
        auto arr = nlohmann::json::array();
        for (auto& [c, d] : sun.components) arr.push_back({rat_str(c), rat_str(d)});
        j["components"] = arr;
        j["includes_a"] = sun.includes_a;
        j["note"] = "components open in [a,b); a component starting at a contains a";
    } else if (opt.fn == "lipschitz") {
        auto cert = restrict_ops::lipschitz_restriction(f, a, b, opt.lipschitz_L);
        j = nlohmann::json::parse(restrict_ops::lipschitz_certificate_to_json(cert));
    } else if (opt.fn == "monotone") {
        auto r = restrict_ops::monotone_restriction(f, f.domain, opt.depth > 0 ? opt.depth : 4);
        j["Q"] = nlohmann::json::parse(gapset_to_json(r.Q));
        j["branch"] = r.branch;
        auto arr = nlohmann::json::array();
        for (auto& [x, v] : r.points) arr.push_back({rat_str(x), rat_str(v)});
        j["points"] = arr;
    } else if (opt.fn == "differentiable") {
        restrict_ops::DiffOptions dopt;
        if (opt.tol > 0) dopt.tol = opt.tol;
        auto r = restrict_ops::differentiable_restriction(f, a, b, dopt);
        j["Q"] = nlohmann::json::parse(gapset_to_json(r.Q));
        j["branch"] = r.branch;
        j["refined"] = r.refined;
        j["max_abs_q"] = r.modulus.max_abs_q;
        auto arr = nlohmann::json::array();
        for (auto& [x, d] : r.derivative_table) arr.push_back({rat_str(x), d});
        j["derivative_table"] = arr;
    } else {
        throw std::runtime_error(
            "unknown restrict pipeline (use rising-sun, lipschitz, monotone, differentiable)");
    }
    write_file(opt.out, j.dump(2) + "\n");
    return 0;
}

int cmd_extend(const Options& opt) {
    nlohmann::json j;
    if (opt.fn == "ex111") {
        auto ex = extend_ops::ex111_build(opt.depth > 0 ? opt.depth : 8);
        j = nlohmann::json::parse(piecewise_to_json(ex.f));
        write_file(opt.out, j.dump(2) + "\n");
        return 0;
    }
    SetFunction f = setfunction_from_json(read_file(opt.in));
    if (opt.fn == "jarnik") {
        auto ext = extend_ops::jarnik_extend(f);
        j = nlohmann::json::parse(piecewise_to_json(ext.F));
        auto adj = nlohmann::json::array();
        for (auto& a : ext.adjustors) {
            nlohmann::json aj;
            aj["index"] = a.index;
            aj["gap"] = {rat_str(a.a), rat_str(a.b)};
            aj["eps"] = rat_str(a.eps);
            aj["s"] = rat_str(a.s);
            aj["t"] = rat_str(a.t);
            aj["A"] = rat_str(a.A);
            aj["B"] = rat_str(a.B);
            aj["spike_heights"] = {rat_str(a.h_a), rat_str(a.h_b)};
            adj.push_back(aj);
        }
        j["adjustors"] = adj;
    } else if (opt.fn == "linear") {
        j = nlohmann::json::parse(piecewise_to_json(extend_ops::linear_interpolate(f)));
    } else if (opt.fn == "whitney") {
        j = nlohmann::json::parse(piecewise_to_json(extend_ops::whitney_extend(f)));
    } else if (opt.fn == "whitney-check") {
        auto rep = extend_ops::whitney_check(f, opt.tol > 0 ? opt.tol : 1e-3);
        j["divergent"] = rep.divergent;
        auto lv = nlohmann::json::array();
        for (auto& l : rep.levels) {
            nlohmann::json lj;
            lj["i"] = l.i;
            lj["divergent"] = l.divergent;
            auto ms = nlohmann::json::array();
            for (auto& [s, m] : l.max_by_scale) ms.push_back({s, m});
            lj["max_by_scale"] = ms;
            lv.push_back(lj);
        }
        j["levels"] = lv;
    } else if (opt.fn == "c1") {
        auto rep = extend_ops::c1_criterion(f, opt.tol > 0 ? opt.tol : 0.05);
        j["admits_c1_extension"] = rep.ok;
        j["worst_discrepancy"] = rep.worst;
        if (rep.witness) j["witness"] = rat_str(*rep.witness);
    } else if (opt.fn == "twisted") {
        auto spec = std::make_shared<monsters::MonsterSpec>(monsters::make_monster_spec(
            monsters::PompeiuSpec::standard(), 0.6180339887498949, 4));
        auto tw = extend_ops::twisted_extend(
            f, [spec](double x) { return monsters::monster(*spec, x); },
            opt.depth > 0 ? opt.depth : 5);
        j["nowhere_monotone_at_resolution"] = tw.report().ok;
        j["amplitude_retries"] = tw.report().amplitude_retries;
        j["failures"] = tw.report().failures;
        // sample rows for plotting
        auto arr = nlohmann::json::array();
        double a = rat_to_double(f.carrier.lo), b = rat_to_double(f.carrier.hi);
        for (long i = 0; i <= 512; ++i) {
            double x = a + (b - a) * static_cast<double>(i) / 512.0;
            Ball v = tw.eval(x);
            arr.push_back({x, v.c, v.r});
        }
        j["rows"] = arr;
    } else {
        throw std::runtime_error(
            "unknown extend pipeline (use jarnik, linear, whitney, whitney-check, c1, twisted, ex111)");
    }
    write_file(opt.out, j.dump(2) + "\n");
    return 0;
}

int cmd_monster_demo(const Options& opt) {
    auto spec = monsters::make_monster_spec(monsters::PompeiuSpec::standard(),
                                            0.6180339887498949, 8);
    nlohmann::json j;
    j["t"] = spec.t;
    j["r"] = spec.pompeiu.r;
    j["truncation"] = spec.pompeiu.truncation;
    j["evidence_tier"] =
        "sign claims are numerical evidence; certified content is each partial-sum lower bound on g'";
    auto arr = nlohmann::json::array();
    for (auto& w : spec.witnesses) {
        nlohmann::json wj;
        wj["d"] = w.d;
        wj["h_prime_d"] = w.h_prime_d;
        wj["h_prime_t_plus_d"] = w.h_prime_t_plus_d;
        wj["h_prime_d_minus_t"] = w.h_prime_d_minus_t;
        wj["z_plus"] = w.z_plus;
        wj["z_minus"] = w.z_minus;
        wj["nearest_q_plus"] = w.nearest_q_plus;
        wj["nearest_q_minus"] = w.nearest_q_minus;
        wj["dist_q_plus"] = w.dist_q_plus;
        wj["dist_q_minus"] = w.dist_q_minus;
        wj["gprime_lower_plus"] = w.gprime_lower_plus;
        wj["gprime_lower_minus"] = w.gprime_lower_minus;
        arr.push_back(wj);
    }
    j["witnesses"] = arr;
    write_file(opt.out, j.dump(2) + "\n");
    return spec.witnesses.size() >= 8 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monsterlab: certified constructions and verification suites"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--fn", opt.fn, "function or pipeline id");
        sub->add_option("--suite", opt.suite, "verification suite name");
        sub->add_option("--depth", opt.depth, "depth / resolution knob");
        sub->add_option("--grid", opt.grid, "grid size or case count");
        sub->add_option("--interval", opt.interval, "interval a:b");
        sub->add_option("--out", opt.out, "output path (default stdout)");
        sub->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", opt.seed, "seed for randomized sweeps");
        sub->add_option("--tol", opt.tol, "tolerance knob");
        sub->add_option("--in", opt.in, "input file (SampledFunction/SetFunction JSON)");
        sub->add_option("--lipschitz", [&](const std::vector<std::string>& v) {
            opt.lipschitz_L = rat_parse(v.at(0));
            return true;
        }, "Lipschitz constant L as p/q");
    };

    auto* sample = app.add_subcommand("sample", "sample a function to CSV/JSON");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    auto* restr = app.add_subcommand("restrict", "run a restriction pipeline on samples");
    auto* extend = app.add_subcommand("extend", "run an extension pipeline on jets");
    auto* demo = app.add_subcommand("monster-demo", "build the monster witness certificates");
    for (auto* sub : {sample, verify, restr, extend, demo}) add_common(sub);

    CLI11_PARSE(app, argc, argv);
    (void)precision_bits();

    try {
        if (sample->parsed()) {
            if (opt.fn.empty()) throw std::runtime_error("sample requires --fn");
            return cmd_sample(opt);
        }
        if (verify->parsed()) {
            if (!suites::has_suite(opt.suite))
                throw std::runtime_error("unknown suite: \"" + opt.suite + "\" (see README)");
            return cmd_verify(opt);
        }
        if (restr->parsed()) return cmd_restrict(opt);
        if (extend->parsed()) return cmd_extend(opt);
        if (demo->parsed()) return cmd_monster_demo(opt);
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "schema error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
