#include "stopping/instances.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stopping/errors.hpp"

namespace stopping {

void validate(const Instance& inst) {
    if (inst.distributions.empty())
        throw ValidationError("instance has no distributions");
}

double offline_value(const Instance& inst) {
    validate(inst);
    return inst.objective == Objective::maximize ? expected_max(inst.distributions)
                                                 : expected_min(inst.distributions);
}

namespace {

void require_eps(double eps, double lo, double hi, bool hi_closed, const char* who) {
    const bool ok = std::isfinite(eps) && eps > lo && (hi_closed ? eps <= hi : eps < hi);
    if (!ok) {
        std::ostringstream os;
        os << who << ": eps = " << eps << " outside (" << lo << ", " << hi
           << (hi_closed ? "]" : ")");
        throw ValidationError(os.str());
    }
}

}  // namespace

Instance gen_prophet_hard(double eps) {
    require_eps(eps, 0.0, 1.0, false, "gen_prophet_hard");
    Instance inst;
    inst.objective = Objective::maximize;
    std::ostringstream nm;
    nm << "prophet-hard-eps" << eps;
    inst.name = nm.str();
    inst.distributions.emplace_back(std::vector<Atom>{{1.0, 1.0}});
    inst.distributions.emplace_back(std::vector<Atom>{{0.0, 1.0 - eps}, {1.0 / eps, eps}});
    return inst;
}

Instance gen_one_threshold_hard(int n) {
    if (n < 2) {
        std::ostringstream os;
        os << "gen_one_threshold_hard: n = " << n << " must be >= 2";
        throw ValidationError(os.str());
    }
    Instance inst;
    inst.objective = Objective::maximize;
    std::ostringstream nm;
    nm << "one-threshold-hard-n" << n;
    inst.name = nm.str();
    const double c = double(n) / (double(n) - 1.0);
    for (int i = 0; i < n; ++i) inst.distributions.emplace_back(std::vector<Atom>{{c, 1.0}});
    inst.distributions.emplace_back(
        std::vector<Atom>{{0.0, 1.0 - 1.0 / double(n)}, {double(n), 1.0 / double(n)}});
    return inst;
}

Instance gen_075_hard(double eps) {
    require_eps(eps, 0.0, 1.0, false, "gen_075_hard");
    Instance inst;
    inst.objective = Objective::maximize;
    std::ostringstream nm;
    nm << "075-hard-eps" << eps;
    inst.name = nm.str();
    inst.distributions.emplace_back(std::vector<Atom>{{1.0, 1.0}});
    inst.distributions.emplace_back(std::vector<Atom>{{0.0, 1.0 - eps}, {1.0 / eps, eps}});
    return inst;
}

Instance gen_min_iid_hard(int n) {
    if (n < 1 || n > 50) {
        std::ostringstream os;
        os << "gen_min_iid_hard: n = " << n << " outside [1, 50]";
        throw ValidationError(os.str());
    }
    Instance inst;
    inst.objective = Objective::minimize;
    std::ostringstream nm;
    nm << "min-iid-hard-n" << n;
    inst.name = nm.str();
    const double big = std::ldexp(1.0, n);
    const double third = 1.0 / 3.0;
    for (int i = 0; i < n; ++i)
        inst.distributions.emplace_back(
            std::vector<Atom>{{0.0, third}, {1.0, third}, {big, third}});
    return inst;
}

Instance gen_min_exchange_hard(double eps) {
    require_eps(eps, 0.0, 0.5, true, "gen_min_exchange_hard");
    Instance inst;
    inst.objective = Objective::minimize;
    std::ostringstream nm;
    nm << "min-exchange-hard-eps" << eps;
    inst.name = nm.str();
    inst.distributions.emplace_back(std::vector<Atom>{{1.0, 1.0}});
    inst.distributions.emplace_back(
        std::vector<Atom>{{eps / (1.0 - eps), 1.0 - eps}, {1.0 / eps, eps}});
    inst.distributions.emplace_back(std::vector<Atom>{{0.0, 1.0 - eps}, {1.0 / eps, eps}});
    return inst;
}

namespace {

using ojson = nlohmann::ordered_json;

double parse_number_field(const ojson& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const char* p = s.c_str();
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(p, &end);
        if (end == p || *end != '\0')
            throw ValidationError(where + " is not a decimal string: \"" + s + "\"");
        return v;
    }
    throw ValidationError(where + " must be a number or a decimal string");
}

}  // namespace

Instance instance_from_json(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("instance JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("instance JSON: top level must be an object");

    Instance inst;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw ValidationError("instance JSON: name must be a string");
        inst.name = j["name"].get<std::string>();
    }
    if (!j.contains("objective") || !j["objective"].is_string())
        throw ValidationError("instance JSON: objective must be \"max\" or \"min\"");
    const std::string obj = j["objective"].get<std::string>();
    if (obj == "max")
        inst.objective = Objective::maximize;
    else if (obj == "min")
        inst.objective = Objective::minimize;
    else
        throw ValidationError("instance JSON: objective must be \"max\" or \"min\", got \"" + obj +
                              "\"");
    if (!j.contains("distributions") || !j["distributions"].is_array() ||
        j["distributions"].empty())
        throw ValidationError("instance JSON: distributions must be a non-empty array");

    std::size_t di = 0;
    for (const auto& dj : j["distributions"]) {
        std::ostringstream wh;
        wh << "instance JSON: distributions[" << di << "]";
        const std::string where = wh.str();
        if (!dj.is_object() || !dj.contains("support") || !dj["support"].is_array() ||
            dj["support"].empty())
            throw ValidationError(where + ".support must be a non-empty array");

        std::vector<Atom> atoms;
        std::size_t ai = 0;
        for (const auto& aj : dj["support"]) {
            std::ostringstream aw;
            aw << where << ".support[" << ai << "]";
            if (!aj.is_object())
                throw ValidationError(aw.str() + " must be an object");
            if (!aj.contains("value"))
                throw ValidationError(aw.str() + ".value is missing");
            if (!aj.contains("prob"))
                throw ValidationError(aw.str() + ".prob is missing");
            atoms.push_back({parse_number_field(aj["value"], aw.str() + ".value"),
                             parse_number_field(aj["prob"], aw.str() + ".prob")});
            ++ai;
        }

        double sum = 0.0;
        for (const Atom& a : atoms) sum += a.prob;
        if (!(std::abs(sum - 1.0) <= 1e-9)) {
            std::ostringstream os;
            os << where << ".support probabilities sum to " << sum << ", not 1 (tolerance 1e-9)";
            throw ValidationError(os.str());
        }
        // Within the file tolerance; rescale so construction sees an exact-sum
        // distribution regardless of serialization round-off.
        for (Atom& a : atoms) a.prob /= sum;

        try {
            inst.distributions.emplace_back(std::move(atoms));
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
        ++di;
    }
    validate(inst);
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    validate(inst);
    ojson j;
    j["name"] = inst.name;
    j["objective"] = inst.objective == Objective::maximize ? "max" : "min";
    ojson arr = ojson::array();
    for (const auto& d : inst.distributions) {
        ojson sup = ojson::array();
        for (const Atom& a : d.atoms()) sup.push_back(ojson{{"value", a.value}, {"prob", a.prob}});
        arr.push_back(ojson{{"support", std::move(sup)}});
    }
    j["distributions"] = std::move(arr);
    return j.dump(2);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return instance_from_json(buf.str());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write instance file: " + path);
    out << instance_to_json(inst) << '\n';
    if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace stopping
