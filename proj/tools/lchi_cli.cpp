// Command-line front end: modulus/character profiles, verification sweeps,
// lemma property suites, and proof replay inspection.
//
// Exit codes: 0 all checks pass, 1 usage or precondition error, 2 at least
// one verified inequality violated.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lchi/bounds.hpp"
#include "lchi/harness.hpp"

namespace {

int cmd_profile(std::int64_t q) {
    using namespace lchi;
    const DirichletGroup G(q);
    const ModulusProfile& mp = G.profile();
    std::printf("q = %lld", static_cast<long long>(q));
    if (!mp.factorization.empty()) {
        std::printf(" =");
        for (std::size_t i = 0; i < mp.factorization.size(); ++i)
            std::printf("%s %lld^%d", i ? " *" : "", static_cast<long long>(mp.factorization[i].p),
                        mp.factorization[i].a);
    }
    std::printf("\nC1=%lld D1=%lld C=%lld D=%lld Lambda(D)=%lld tau=%lld omega=%d\n",
                static_cast<long long>(mp.C1), static_cast<long long>(mp.D1),
                static_cast<long long>(mp.C), static_cast<long long>(mp.D),
                static_cast<long long>(mp.lambda_D), static_cast<long long>(mp.tau), mp.omega);
    std::printf("sqf=%.12g cbf=%.12g spf=%.12g\n", mp.sqf.value(), mp.cbf.value(), mp.spf.value());

    std::int64_t primitive = 0;
    std::string rows;
    for (std::int64_t i = 0; i < G.size(); ++i) {
        const DirichletCharacter chi = G.character(i);
        const PostnikovData pd = postnikov_data(chi);
        if (chi.is_primitive()) ++primitive;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%8lld %8lld %4s %6lld %8lld %5lld %8lld %8lld %5lld %3s %4s\n",
                      static_cast<long long>(i), static_cast<long long>(chi.conductor()),
                      chi.is_primitive() ? "yes" : "no", static_cast<long long>(chi.order()),
                      static_cast<long long>(pd.Ltilde), static_cast<long long>(pd.B1),
                      static_cast<long long>(pd.L0), static_cast<long long>(pd.L),
                      static_cast<long long>(pd.B), pd.verified_linear ? "ok" : "BAD",
                      pd.verified_quadratic ? "ok" : "BAD");
        rows += buf;
    }
    std::printf("characters: %lld (primitive %lld)\n", static_cast<long long>(G.size()),
                static_cast<long long>(primitive));
    std::printf("%8s %8s %4s %6s %8s %5s %8s %8s %5s %3s %4s\n", "index", "cond", "prim", "order",
                "Ltilde", "B1", "L0", "L", "B", "lin", "quad");
    std::fputs(rows.c_str(), stdout);
    return 0;
}

int cmd_verify(const lchi::SweepConfig& cfg) {
    const lchi::SweepResult res = lchi::run_sweep(cfg);
    std::printf("cells: %zu  violations: %d  errors: %d\n", res.rows.size(), res.violations,
                res.errors);
    for (const auto& [name, margin] : res.summary.at("min_margin").items())
        std::printf("min margin %-10s %.6g\n", name.c_str(), margin.get<double>());
    std::printf("%s\n", res.exit_code == 0 ? "PASS" : "FAIL");
    return res.exit_code;
}

int cmd_lemmas(std::uint64_t seed, int trials, const std::string& json_path) {
    const auto suites = lchi::run_lemma_suites(seed, trials);
    int violations = 0;
    nlohmann::json js = nlohmann::json::array();
    for (const auto& s : suites) {
        std::printf("%-24s trials=%-6d violations=%-4d worst margin=%.6g\n", s.name.c_str(),
                    s.trials, s.violations, s.worst_margin);
        violations += s.violations;
        js.push_back({{"name", s.name},
                      {"trials", s.trials},
                      {"violations", s.violations},
                      {"worst_margin", s.worst_margin}});
    }
    if (!json_path.empty()) {
        std::ofstream f(json_path, std::ios::binary);
        f << js.dump(2) << '\n';
    }
    std::printf("%s\n", violations == 0 ? "PASS" : "FAIL");
    return violations == 0 ? 0 : 2;
}

int cmd_replay(std::int64_t q, std::int64_t chi_index, double t, double eps,
               const std::string& json_path) {
    using namespace lchi;
    const DirichletGroup G(q);
    if (chi_index < 0 || chi_index >= G.size())
        throw PreconditionError("replay: character index out of range");
    const DirichletCharacter chi = G.character(chi_index);
    const BoundBreakdown bd = proof_replay(chi, t);
    const LValue lv = l_direct(chi, t, eps);

    std::printf("q=%lld chi=%lld t=%.17g\n", static_cast<long long>(q),
                static_cast<long long>(chi_index), t);
    std::printf("|L|         = %.17g  (err %.3g)\n", std::abs(lv.value), lv.err);
    std::printf("initial     = %.17g\n", bd.initial);
    std::printf("region1     = %.17g\n", bd.region1);
    std::printf("region2     = %.17g\n", bd.region2);
    std::printf("region3     = %.17g\n", bd.region3);
    std::printf("total       = %.17g\n", bd.total);
    std::printf("closed form = %.17g\n", bd.closed_form_zw);
    if (!bd.within_closed_form)
        std::printf("FINDING: replay total exceeds the closed form at this instance\n");
    if (!json_path.empty()) {
        nlohmann::json js = {{"q", q},
                             {"chi_index", chi_index},
                             {"t", t},
                             {"l_abs", std::abs(lv.value)},
                             {"l_err", lv.err},
                             {"initial", bd.initial},
                             {"region1", bd.region1},
                             {"region2", bd.region2},
                             {"region3", bd.region3},
                             {"total", bd.total},
                             {"closed_form_zw", bd.closed_form_zw},
                             {"within_closed_form", bd.within_closed_form}};
        std::ofstream f(json_path, std::ios::binary);
        f << js.dump(2) << '\n';
    }
    const bool sound = std::abs(lv.value) + lv.err <= bd.total;
    std::printf("%s\n", sound ? "PASS" : "FAIL");
    return sound ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit hybrid bounds for Dirichlet L-functions on the critical line"};
    app.require_subcommand(1);

    auto* profile = app.add_subcommand("profile", "modulus invariants and per-character table");
    std::int64_t profile_q = 1;
    profile->add_option("q", profile_q, "modulus")->required();

    auto* verify = app.add_subcommand("verify", "sweep |L| against every applicable bound");
    lchi::SweepConfig cfg;
    cfg.t_min = 200.0;
    cfg.t_max = 2000.0;
    cfg.t_count = 5;
    std::string config_path;
    std::string moduli_str, chars_str = "all", bounds_str = "all", spacing_str = "linear";
    double tmin = 200.0, tmax = 2000.0;
    int tcount = 5, threads = 0;
    double eps = 1e-6;
    std::uint64_t seed = 1;
    std::string out_csv, out_json;
    std::int64_t sixth_max = 0;
    verify->add_option("--config", config_path, "key=value config file (flags win)");
    verify->add_option("--moduli", moduli_str, "comma-separated moduli");
    verify->add_option("--sixth-powers-max", sixth_max, "add all sixth powers up to this cap");
    verify->add_option("--tmin", tmin, "smallest t");
    verify->add_option("--tmax", tmax, "largest t");
    verify->add_option("--tcount", tcount, "number of t points");
    verify->add_option("--tspacing", spacing_str, "linear|log");
    verify->add_option("--chars", chars_str, "all|primitive|principal");
    verify->add_option("--bounds", bounds_str, "all or comma list of bound names");
    verify->add_option("--eps", eps, "l_direct error radius");
    verify->add_option("--threads", threads, "worker threads (0 = auto)");
    verify->add_option("--seed", seed, "seed echoed into reports");
    verify->add_option("--out", out_csv, "CSV output path");
    verify->add_option("--json", out_json, "JSON summary path");

    auto* lemmas = app.add_subcommand("lemmas", "randomized dominance suites for the lemmas");
    std::uint64_t lem_seed = 1;
    int lem_trials = 1000;
    std::string lem_json;
    lemmas->add_option("--seed", lem_seed, "random seed");
    lemmas->add_option("--trials", lem_trials, "trials per suite");
    lemmas->add_option("--json", lem_json, "JSON output path");

    auto* replay = app.add_subcommand("replay", "numeric replay of the dyadic proof pipeline");
    std::int64_t rq = 729, rchi = 1;
    double rt = 200.0, reps = 1e-6;
    std::string replay_json;
    replay->add_option("q", rq, "modulus")->required();
    replay->add_option("chi_index", rchi, "character index")->required();
    replay->add_option("t", rt, "height t")->required();
    replay->add_option("--eps", reps, "l_direct error radius");
    replay->add_option("--json", replay_json, "JSON output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (profile->parsed()) return cmd_profile(profile_q);
        if (verify->parsed()) {
            if (!config_path.empty()) {
                std::ifstream f(config_path);
                if (!f) throw lchi::PreconditionError("cannot open config file: " + config_path);
                cfg = lchi::parse_config_file(f, cfg);
            }
            // flags win over the file
            std::stringstream override_stream;
            if (!moduli_str.empty()) override_stream << "moduli=" << moduli_str << '\n';
            if (sixth_max > 0) override_stream << "sixth_powers_max=" << sixth_max << '\n';
            if (verify->count("--tmin")) override_stream << "tmin=" << tmin << '\n';
            if (verify->count("--tmax")) override_stream << "tmax=" << tmax << '\n';
            if (verify->count("--tcount")) override_stream << "tcount=" << tcount << '\n';
            if (verify->count("--tspacing")) override_stream << "tspacing=" << spacing_str << '\n';
            if (verify->count("--chars")) override_stream << "chars=" << chars_str << '\n';
            if (verify->count("--bounds")) override_stream << "bounds=" << bounds_str << '\n';
            if (verify->count("--eps")) override_stream << "eps=" << eps << '\n';
            if (verify->count("--threads")) override_stream << "threads=" << threads << '\n';
            if (verify->count("--seed")) override_stream << "seed=" << seed << '\n';
            if (verify->count("--out")) override_stream << "out=" << out_csv << '\n';
            if (verify->count("--json")) override_stream << "json=" << out_json << '\n';
            cfg = lchi::parse_config_file(override_stream, cfg);
            return cmd_verify(cfg);
        }
        if (lemmas->parsed()) return cmd_lemmas(lem_seed, lem_trials, lem_json);
        if (replay->parsed()) return cmd_replay(rq, rchi, rt, reps, replay_json);
    } catch (const lchi::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
