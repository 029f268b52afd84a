#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stopping/adaptive.hpp"
#include "stopping/checks.hpp"
#include "stopping/errors.hpp"
#include "stopping/exact.hpp"
#include "stopping/instances.hpp"
#include "stopping/montecarlo.hpp"
#include "stopping/schedule.hpp"

namespace {

using nlohmann::ordered_json;
using namespace stopping;

std::string num(double x, int prec = 17) {
    std::ostringstream os;
    os << std::setprecision(prec) << x;
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ValidationError("cannot write --out file: " + out_path);
    f << text;
    if (!f) throw ValidationError("write failed: " + out_path);
}

// --schedule mini-language: theorem1 | uniform:<t> | two:<t1>,<t2> |
// list:<t1>,...,<tn> | secretary
struct ScheduleSpec {
    enum class Kind { theorem1, uniform, two, list, secretary } kind;
    std::vector<double> args;
};

double parse_double_token(const std::string& tok, const std::string& what) {
    const char* p = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (tok.empty() || end == p || *end != '\0')
        throw ValidationError(what + ": '" + tok + "' is not a number");
    return v;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_double_token(tok, what));
    if (out.empty()) throw ValidationError(what + ": empty list");
    return out;
}

ScheduleSpec parse_schedule_spec(const std::string& s) {
    if (s == "theorem1") return {ScheduleSpec::Kind::theorem1, {}};
    if (s == "secretary") return {ScheduleSpec::Kind::secretary, {}};
    const auto with_prefix = [&s](const char* prefix) -> bool {
        return s.rfind(prefix, 0) == 0;
    };
    if (with_prefix("uniform:")) {
        return {ScheduleSpec::Kind::uniform,
                {parse_double_token(s.substr(8), "--schedule uniform")}};
    }
    if (with_prefix("two:")) {
        auto args = parse_double_list(s.substr(4), "--schedule two");
        if (args.size() != 2)
            throw ValidationError("--schedule two: expected exactly 2 thresholds, got " +
                                  std::to_string(args.size()));
        return {ScheduleSpec::Kind::two, std::move(args)};
    }
    if (with_prefix("list:")) {
        return {ScheduleSpec::Kind::list, parse_double_list(s.substr(5), "--schedule list")};
    }
    throw ValidationError("bad --schedule '" + s +
                          "': expected theorem1, uniform:<t>, two:<t1>,<t2>, "
                          "list:<t1>,...,<tn>, or secretary");
}

ThresholdSchedule make_schedule(const ScheduleSpec& spec, const Instance& inst) {
    const int n = int(inst.n());
    switch (spec.kind) {
        case ScheduleSpec::Kind::theorem1:
            return alpha_schedule(n, expected_max(inst.distributions));
        case ScheduleSpec::Kind::uniform:
            return uniform_schedule(n, spec.args[0]);
        case ScheduleSpec::Kind::two:
            return two_phase_schedule(n, spec.args[0], spec.args[1]);
        case ScheduleSpec::Kind::list:
            if (int(spec.args.size()) != n)
                throw ValidationError("--schedule list: " + std::to_string(spec.args.size()) +
                                      " thresholds for " + std::to_string(n) + " distributions");
            return ThresholdSchedule(spec.args);
        case ScheduleSpec::Kind::secretary:
            throw ValidationError(
                "--schedule secretary is observation-dependent; only --method mc supports it");
    }
    throw ValidationError("unreachable schedule kind");
}

int cmd_alphas(int n, const std::string& format, const std::string& out) {
    if (n < 1) throw ValidationError("alphas: --n must be >= 1");
    const std::vector<double> a = alpha_factors(n);
    const double gap = std::abs(a[0] - (1.0 - std::exp(-1.0)));
    std::ostringstream os;
    if (format == "json") {
        ordered_json j;
        j["n"] = n;
        j["alphas"] = a;
        j["alpha1_gap_to_limit"] = gap;  // limit is 1 - 1/e
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << "k,alpha\n";
        for (int k = 1; k <= n; ++k) os << k << ',' << num(a[std::size_t(k - 1)]) << '\n';
    } else {
        os << "alpha factors, n = " << n << '\n';
        for (int k = 1; k <= n; ++k)
            os << "  alpha_" << std::left << std::setw(6) << k << ' '
               << num(a[std::size_t(k - 1)], 12) << '\n';
        os << "alpha_1 gap to 1 - 1/e: " << num(gap, 6) << '\n';
    }
    emit(os.str(), out);
    return 0;
}

void render_exact_report(const std::string& method, const Instance& inst,
                         const ThresholdSchedule& sched, const ExactReport& r,
                         const std::string& format, std::ostringstream& os) {
    const int n = int(inst.n());
    if (format == "json") {
        ordered_json j;
        j["method"] = method;
        j["instance"] = inst.name;
        j["n"] = n;
        j["schedule"] = sched.thresholds();
        j["alg_value"] = r.alg_value;
        j["opt_value"] = r.opt_value;
        j["ratio"] = r.ratio;
        j["per_step_value"] = r.per_step_value;
        j["theta"] = r.pass.theta;
        j["q_minus"] = r.pass.q_minus;
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << "field,i,k,value\n";
        os << "alg_value,,," << num(r.alg_value) << '\n';
        os << "opt_value,,," << num(r.opt_value) << '\n';
        os << "ratio,,," << num(r.ratio) << '\n';
        for (int k = 1; k <= n; ++k)
            os << "per_step_value,," << k << ',' << num(r.per_step_value[std::size_t(k - 1)])
               << '\n';
        for (int k = 1; k <= n; ++k)
            os << "theta,," << k << ',' << num(r.pass.theta[std::size_t(k - 1)]) << '\n';
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= n - 1; ++k)
                os << "q_minus," << i << ',' << k << ','
                   << num(r.pass.q_minus[std::size_t(i - 1)][std::size_t(k - 1)]) << '\n';
    } else {
        os << "instance " << inst.name << " (n = " << n << "), method " << method << '\n';
        os << "  schedule  ";
        for (int k = 1; k <= n; ++k) os << (k > 1 ? " " : "") << num(sched.at(std::size_t(k)), 10);
        os << '\n';
        os << "  alg_value " << num(r.alg_value, 12) << '\n';
        os << "  opt_value " << num(r.opt_value, 12) << '\n';
        os << "  ratio     " << num(r.ratio, 12) << '\n';
        os << "  theta     ";
        for (double t : r.pass.theta) os << num(t, 8) << ' ';
        os << '\n';
    }
}

int cmd_eval(const std::string& instance_path, const std::string& schedule_spec,
             const std::string& method, std::uint64_t trials, bool seed_given, std::uint64_t seed,
             const std::string& format, const std::string& out) {
    const Instance inst = load_instance(instance_path);
    const ScheduleSpec spec = parse_schedule_spec(schedule_spec);
    std::ostringstream os;

    if (method == "mc") {
        if (!seed_given) throw ValidationError("--method mc requires --seed");
        MCReport mc;
        if (spec.kind == ScheduleSpec::Kind::secretary) {
            mc = estimate_secretary(inst, trials, seed);
        } else {
            mc = estimate(inst, make_schedule(spec, inst), trials, seed);
        }
        if (format == "json") {
            ordered_json j;
            j["method"] = "mc";
            j["instance"] = inst.name;
            j["n"] = inst.n();
            if (spec.kind == ScheduleSpec::Kind::secretary)
                j["schedule"] = "secretary";
            else
                j["schedule"] = make_schedule(spec, inst).thresholds();
            j["mean"] = mc.mean;
            j["half_width_95"] = mc.half_width_95;
            j["trials"] = mc.trials;
            j["seed"] = mc.seed;
            os << j.dump(2) << '\n';
        } else if (format == "csv") {
            os << "mean,half_width_95,trials,seed\n";
            os << num(mc.mean) << ',' << num(mc.half_width_95) << ',' << mc.trials << ','
               << mc.seed << '\n';
        } else {
            os << "instance " << inst.name << " (n = " << inst.n() << "), method mc\n";
            os << "  mean          " << num(mc.mean, 12) << '\n';
            os << "  half_width_95 " << num(mc.half_width_95, 12) << '\n';
            os << "  trials        " << mc.trials << '\n';
            os << "  seed          " << mc.seed << '\n';
        }
        emit(os.str(), out);
        return 0;
    }

    const ThresholdSchedule sched = make_schedule(spec, inst);
    const ExactReport r =
        method == "brute" ? evaluate_bruteforce(inst, sched) : evaluate_exact(inst, sched);
    render_exact_report(method, inst, sched, r, format, os);
    emit(os.str(), out);
    return 0;
}

int cmd_sweep(const std::string& instance_path, const std::string& format,
              const std::string& out) {
    const Instance inst = load_instance(instance_path);
    const SweepResult res = sweep_single_threshold(inst, default_threshold_candidates(inst));
    std::ostringstream os;
    if (format == "json") {
        ordered_json j;
        j["instance"] = inst.name;
        j["n"] = inst.n();
        j["best_threshold"] = res.best_threshold;
        j["best_ratio"] = res.best_ratio;
        ordered_json pts = ordered_json::array();
        for (const SweepPoint& p : res.points)
            pts.push_back(ordered_json{
                {"threshold", p.threshold}, {"alg_value", p.alg_value}, {"ratio", p.ratio}});
        j["points"] = std::move(pts);
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << "threshold,alg_value,ratio\n";
        for (const SweepPoint& p : res.points)
            os << num(p.threshold) << ',' << num(p.alg_value) << ',' << num(p.ratio) << '\n';
    } else {
        os << "instance " << inst.name << " (n = " << inst.n() << ")\n";
        os << "  best threshold " << num(res.best_threshold, 12) << ", best ratio "
           << num(res.best_ratio, 12) << '\n';
        for (const SweepPoint& p : res.points)
            os << "  t = " << std::left << std::setw(22) << num(p.threshold, 10)
               << " value = " << std::setw(22) << num(p.alg_value, 10)
               << " ratio = " << num(p.ratio, 10) << '\n';
    }
    emit(os.str(), out);
    return 0;
}

int cmd_bench(const std::string& instance_path, const std::string& format,
              const std::string& out) {
    const Instance inst = load_instance(instance_path);
    const int n = int(inst.n());
    std::vector<std::pair<std::string, double>> rows;
    const double offline = offline_value(inst);
    rows.emplace_back("offline_value", offline);

    if (inst.objective == Objective::maximize) {
        const double rnd = optimal_online_max(inst, ArrivalOrder::random).value;
        const double fix = optimal_online_max(inst, ArrivalOrder::fixed).value;
        rows.emplace_back("online_optimal_random", rnd);
        rows.emplace_back("online_optimal_random_ratio", rnd / offline);
        rows.emplace_back("online_optimal_fixed", fix);
        rows.emplace_back("online_optimal_fixed_ratio", fix / offline);
        const ExactReport r = evaluate_exact(inst, alpha_schedule(n, offline));
        rows.emplace_back("factor_schedule_value", r.alg_value);
        rows.emplace_back("factor_schedule_ratio", r.ratio);
    } else {
        const double rnd = optimal_online_min(inst, ArrivalOrder::random).value;
        const double fix = optimal_online_min(inst, ArrivalOrder::fixed).value;
        rows.emplace_back("online_optimal_random", rnd);
        rows.emplace_back("online_optimal_random_ratio", rnd / offline);
        rows.emplace_back("online_optimal_fixed", fix);
        rows.emplace_back("online_optimal_fixed_ratio", fix / offline);
        try {
            const double xr = optimal_online_min_one_exchange(inst, ArrivalOrder::random).value;
            const double xf = optimal_online_min_one_exchange(inst, ArrivalOrder::fixed).value;
            rows.emplace_back("one_exchange_random", xr);
            rows.emplace_back("one_exchange_random_ratio", xr / offline);
            rows.emplace_back("one_exchange_fixed", xf);
            rows.emplace_back("one_exchange_fixed_ratio", xf / offline);
        } catch (const BudgetError&) {
            // exchange DP is optional in the benchmark when over budget
        }
    }

    std::ostringstream os;
    if (format == "json") {
        ordered_json j;
        j["instance"] = inst.name;
        j["objective"] = inst.objective == Objective::maximize ? "max" : "min";
        j["n"] = n;
        for (const auto& [k, v] : rows) j[k] = v;
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        os << "metric,value\n";
        for (const auto& [k, v] : rows) os << k << ',' << num(v) << '\n';
    } else {
        os << "instance " << inst.name << " ("
           << (inst.objective == Objective::maximize ? "maximize" : "minimize") << ", n = " << n
           << ")\n";
        for (const auto& [k, v] : rows)
            os << "  " << std::left << std::setw(30) << k << ' ' << num(v, 12) << '\n';
    }
    emit(os.str(), out);
    return 0;
}

int cmd_gen(const std::string& family, bool eps_given, double eps, bool n_given, int n,
            const std::string& out) {
    Instance inst;
    const auto need_eps = [&]() {
        if (!eps_given) throw ValidationError("gen: family '" + family + "' requires --eps");
    };
    const auto need_n = [&]() {
        if (!n_given) throw ValidationError("gen: family '" + family + "' requires --n");
    };
    if (family == "prophet-hard") {
        need_eps();
        inst = gen_prophet_hard(eps);
    } else if (family == "one-threshold-hard") {
        need_n();
        inst = gen_one_threshold_hard(n);
    } else if (family == "075-hard") {
        need_eps();
        inst = gen_075_hard(eps);
    } else if (family == "min-iid-hard") {
        need_n();
        inst = gen_min_iid_hard(n);
    } else if (family == "min-exchange-hard") {
        need_eps();
        inst = gen_min_exchange_hard(eps);
    } else {
        throw ValidationError("gen: unknown family '" + family +
                              "'; valid: prophet-hard, one-threshold-hard, 075-hard, "
                              "min-iid-hard, min-exchange-hard");
    }
    if (out.empty())
        std::cout << instance_to_json(inst) << '\n';
    else
        save_instance(inst, out);
    return 0;
}

int cmd_repro(const std::string& claim_id) {
    const CheckResult r = run_claim(claim_id);
    std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << claim_id << " [criterion " << r.criterion
              << ": " << r.name << "] " << r.detail << '\n';
    return r.pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stopsim: threshold stopping strategies, exact and sampled"};
    app.require_subcommand(1);
    const auto format_check = CLI::IsMember({"table", "json", "csv"});

    auto* alphas = app.add_subcommand("alphas", "print the threshold factor table");
    int alphas_n = 0;
    std::string alphas_format = "table", alphas_out;
    alphas->add_option("--n", alphas_n, "number of steps")->required();
    alphas->add_option("--format", alphas_format, "table, json, or csv")->check(format_check);
    alphas->add_option("--out", alphas_out, "write to this file instead of stdout");

    auto* eval = app.add_subcommand("eval", "evaluate a schedule on an instance");
    std::string eval_instance, eval_schedule, eval_method = "exact";
    std::string eval_format = "table", eval_out;
    std::uint64_t eval_trials = 100000, eval_seed = 0;
    eval->add_option("--instance", eval_instance, "instance JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    eval->add_option("--schedule", eval_schedule,
                     "theorem1 | uniform:<t> | two:<t1>,<t2> | list:<t1>,...,<tn> | secretary")
        ->required();
    eval->add_option("--method", eval_method, "exact, brute, or mc")
        ->check(CLI::IsMember({"exact", "brute", "mc"}));
    eval->add_option("--trials", eval_trials, "mc trials (default 100000)");
    auto* eval_seed_opt = eval->add_option("--seed", eval_seed, "mc seed (required for mc)");
    eval->add_option("--format", eval_format, "table, json, or csv")->check(format_check);
    eval->add_option("--out", eval_out, "write to this file instead of stdout");

    auto* sweep = app.add_subcommand("sweep", "sweep single uniform thresholds");
    std::string sweep_instance, sweep_format = "table", sweep_out;
    sweep->add_option("--instance", sweep_instance, "instance JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep->add_option("--format", sweep_format, "table, json, or csv")->check(format_check);
    sweep->add_option("--out", sweep_out, "write to this file instead of stdout");

    auto* bench = app.add_subcommand("bench", "offline and adaptive online benchmarks");
    std::string bench_instance, bench_format = "table", bench_out;
    bench->add_option("--instance", bench_instance, "instance JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    bench->add_option("--format", bench_format, "table, json, or csv")->check(format_check);
    bench->add_option("--out", bench_out, "write to this file instead of stdout");

    auto* gen = app.add_subcommand("gen", "generate a named hard instance");
    std::string gen_family, gen_out;
    double gen_eps = 0.0;
    int gen_n = 0;
    gen->add_option("--family", gen_family,
                    "prophet-hard, one-threshold-hard, 075-hard, min-iid-hard, min-exchange-hard")
        ->required();
    auto* gen_eps_opt = gen->add_option("--eps", gen_eps, "eps parameter");
    auto* gen_n_opt = gen->add_option("--n", gen_n, "n parameter");
    gen->add_option("--out", gen_out, "write instance file here (default stdout)");

    auto* repro = app.add_subcommand("repro", "re-run a named verification experiment");
    std::string repro_claim;
    repro->add_option("claim", repro_claim, "claim id (unknown id lists the valid ones)")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*alphas) return cmd_alphas(alphas_n, alphas_format, alphas_out);
        if (*eval)
            return cmd_eval(eval_instance, eval_schedule, eval_method, eval_trials,
                            eval_seed_opt->count() > 0, eval_seed, eval_format, eval_out);
        if (*sweep) return cmd_sweep(sweep_instance, sweep_format, sweep_out);
        if (*bench) return cmd_bench(bench_instance, bench_format, bench_out);
        if (*gen)
            return cmd_gen(gen_family, gen_eps_opt->count() > 0, gen_eps, gen_n_opt->count() > 0,
                           gen_n, gen_out);
        if (*repro) return cmd_repro(repro_claim);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
