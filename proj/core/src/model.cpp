#include "lobmr/model.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lobmr {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("model spec: unknown field '" + it.key() + "' in " +
                                        where);
}

DurationDistribution duration_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument("model spec: " + where + " must be object");
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "exponential") {
        reject_unknown(j, {"family", "scale_ms"}, where);
        return DurationDistribution::exponential(j.at("scale_ms").get<double>());
    }
    if (fam == "weibull" || fam == "gamma") {
        reject_unknown(j, {"family", "shape", "scale_ms"}, where);
        const double k = j.at("shape").get<double>();
        const double th = j.at("scale_ms").get<double>();
        return fam == "weibull" ? DurationDistribution::weibull(k, th)
                                : DurationDistribution::gamma(k, th);
    }
    if (fam == "deterministic") {
        reject_unknown(j, {"family", "at_ms"}, where);
        return DurationDistribution::deterministic(j.at("at_ms").get<double>());
    }
    if (fam == "empirical") {
        reject_unknown(j, {"family", "points"}, where);
        std::vector<double> t, m;
        for (const auto& p : j.at("points")) {
            reject_unknown(p, {"t_ms", "mass"}, where + ".points[]");
            t.push_back(p.at("t_ms").get<double>());
            m.push_back(p.at("mass").get<double>());
        }
        return DurationDistribution::empirical_steps(std::move(t), std::move(m));
    }
    throw std::invalid_argument("model spec: unknown duration family '" + fam + "' in " + where);
}

json duration_to_json(const DurationDistribution& d) {
    json j;
    j["family"] = to_string(d.family());
    switch (d.family()) {
        case DurationFamily::Exponential:
            j["scale_ms"] = d.scale();
            break;
        case DurationFamily::Weibull:
        case DurationFamily::Gamma:
            j["shape"] = d.shape();
            j["scale_ms"] = d.scale();
            break;
        case DurationFamily::Deterministic:
            j["at_ms"] = d.scale();
            break;
        case DurationFamily::EmpiricalStep: {
            json pts = json::array();
            for (std::size_t i = 0; i < d.support().size(); ++i)
                pts.push_back({{"t_ms", d.support()[i]}, {"mass", d.masses()[i]}});
            j["points"] = std::move(pts);
            break;
        }
    }
    return j;
}

MarkovRenewalKernelSide side_from_json(const json& j, const std::string& where) {
    reject_unknown(j, {"P", "H", "v0_up"}, where);
    MarkovRenewalKernelSide k;
    const auto& P = j.at("P");
    if (!P.is_array() || P.size() != 2 || P[0].size() != 2 || P[1].size() != 2)
        throw std::invalid_argument("model spec: " + where + ".P must be a 2x2 matrix");
    for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 2; ++c) k.P[i][c] = P[i][c].get<double>();
    const auto& H = j.at("H");
    reject_unknown(H, {"pp", "pm", "mp", "mm"}, where + ".H");
    static const char* key[2][2] = {{"pp", "pm"}, {"mp", "mm"}};
    for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 2; ++c)
            k.H[i][c] = duration_from_json(H.at(key[i][c]),
                                           where + ".H." + key[i][c]);
    k.v0_up = j.at("v0_up").get<double>();
    return k;
}

json side_to_json(const MarkovRenewalKernelSide& k) {
    json j;
    j["P"] = {{k.P[0][0], k.P[0][1]}, {k.P[1][0], k.P[1][1]}};
    static const char* key[2][2] = {{"pp", "pm"}, {"mp", "mm"}};
    json H;
    for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 2; ++c) H[key[i][c]] = duration_to_json(k.H[i][c]);
    j["H"] = std::move(H);
    j["v0_up"] = k.v0_up;
    return j;
}

ReinitDistribution reinit_from_json(const json& j, int n_max, const std::string& where) {
    std::vector<ReinitDistribution::Entry> entries;
    for (const auto& e : j) {
        reject_unknown(e, {"n_bid", "n_ask", "mass"}, where + "[]");
        entries.push_back(
            {e.at("n_bid").get<int>(), e.at("n_ask").get<int>(), e.at("mass").get<double>()});
    }
    try {
        return ReinitDistribution(std::move(entries), n_max);
    } catch (const std::exception& ex) {
        throw std::invalid_argument("model spec: " + where + ": " + ex.what());
    }
}

json reinit_to_json(const ReinitDistribution& r) {
    json a = json::array();
    for (const auto& e : r.entries())
        a.push_back({{"n_bid", e.n_bid}, {"n_ask", e.n_ask}, {"mass", e.mass}});
    return a;
}

} // namespace

ValidationReport ModelSpec::validate() const {
    ValidationReport rep = validate_side(bid);
    for (auto& i : rep.issues) i.message = "bid: " + i.message;
    ValidationReport ra = validate_side(ask);
    for (auto& i : ra.issues) rep.issues.push_back({i.code, "ask: " + i.message, i.hard});
    if (!(tick > 0.0)) rep.issues.push_back({"tick", "tick size must be > 0", false});
    return rep;
}

ModelSpec model_from_json_text(const std::string& text) {
    json j = json::parse(text);
    reject_unknown(j,
                   {"schema_version", "tick", "bid", "ask", "reinit_up", "reinit_down",
                    "reinit_initial", "n_max"},
                   "top level");
    const int ver = j.at("schema_version").get<int>();
    if (ver != kModelSchemaVersion) {
        std::ostringstream os;
        os << "model spec: unsupported schema_version " << ver << " (expected "
           << kModelSchemaVersion << ")";
        throw std::invalid_argument(os.str());
    }
    const int n_max = j.value("n_max", ReinitDistribution::kDefaultNMax);
    ModelSpec m{
        side_from_json(j.at("bid"), "bid"),
        side_from_json(j.at("ask"), "ask"),
        reinit_from_json(j.at("reinit_up"), n_max, "reinit_up"),
        reinit_from_json(j.at("reinit_down"), n_max, "reinit_down"),
        std::nullopt,
        j.at("tick").get<double>(),
    };
    if (j.contains("reinit_initial"))
        m.reinit_initial = reinit_from_json(j.at("reinit_initial"), n_max, "reinit_initial");
    return m;
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model spec: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_text(buf.str());
}

std::string model_to_json_text(const ModelSpec& m) {
    json j;
    j["schema_version"] = kModelSchemaVersion;
    j["tick"] = m.tick;
    j["bid"] = side_to_json(m.bid);
    j["ask"] = side_to_json(m.ask);
    j["reinit_up"] = reinit_to_json(m.reinit_up);
    j["reinit_down"] = reinit_to_json(m.reinit_down);
    if (m.reinit_initial) j["reinit_initial"] = reinit_to_json(*m.reinit_initial);
    int n_max = std::max(m.reinit_up.n_max(), m.reinit_down.n_max());
    j["n_max"] = n_max;
    return j.dump(2) + "\n";
}

void save_model(const ModelSpec& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model spec: " + path);
    out << model_to_json_text(m);
}

} // namespace lobmr
