#include "majorize/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "majorize/errors.hpp"

namespace majorize {

Experiment experiment_from_json(const json& j) {
    if (!j.is_object() || !j.contains("columns")) throw DimensionError("experiment JSON needs a \"columns\" array");
    std::vector<std::vector<double>> cols;
    try {
        cols = j.at("columns").get<std::vector<std::vector<double>>>();
    } catch (const json::exception& e) {
        throw DomainError(std::string("experiment columns must be numeric arrays: ") + e.what());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return Experiment::from_columns(cols, std::move(labels));
}

json experiment_to_json(const Experiment& P) {
    return json{{"labels", P.labels()}, {"columns", P.columns()}};
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw DomainError("not a number: '" + s + "'");
    return v;
}

}  // namespace

Experiment experiment_from_csv(const std::string& text) {
    std::stringstream in(text);
    std::string line;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split_commas(line);
        if (labels.empty()) {
            labels = std::move(cells);
            continue;
        }
        if (cells.size() != labels.size()) throw DimensionError("CSV row width differs from the header");
        std::vector<double> r;
        for (const auto& c : cells) r.push_back(parse_number(c));
        rows.push_back(std::move(r));
    }
    if (labels.empty()) throw DimensionError("CSV has no header row");
    return Experiment::from_rows(labels.size(), rows, labels);
}

std::string experiment_to_csv(const Experiment& P) {
    std::string out;
    for (std::size_t k = 0; k < P.cols(); ++k) out += (k ? "," : "") + P.labels()[k];
    out += "\n";
    for (std::size_t i = 0; i < P.rows(); ++i) {
        for (std::size_t k = 0; k < P.cols(); ++k) out += (k ? "," : "") + format_double(P(i, k));
        out += "\n";
    }
    return out;
}

std::string read_text(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw DimensionError("cannot open '" + path + "'");
    ss << f.rdbuf();
    return ss.str();
}

Experiment load_experiment(const std::string& path) {
    const std::string text = read_text(path);
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return experiment_from_csv(text);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError("'" + path + "' is not valid JSON: " + e.what());
    }
    return experiment_from_json(j);
}

std::string format_double(double x) {
    if (std::isnan(x)) throw DomainError("NaN cannot be serialized");
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json number_or_inf(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double parse_extended(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
        if (s == "-inf") return -kInf;
        return parse_number(s);
    }
    throw DomainError("expected a number");
}

namespace {

void dump_into(const json& j, int indent, int depth, std::string& out) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{";
            out += nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += std::string(",") + nl;
                first = false;
                out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
                dump_into(it.value(), indent, depth + 1, out);
            }
            out += nl + close_pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[";
            out += nl;
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += std::string(",") + nl;
                first = false;
                out += pad;
                dump_into(v, indent, depth + 1, out);
            }
            out += nl + close_pad + "]";
            return;
        }
        case json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isinf(x) ? "\"" + format_double(x) + "\"" : format_double(x);
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string stable_dump(const json& j, int indent) {
    std::string out;
    dump_into(j, indent, 0, out);
    return out;
}

json to_json(const GridSpec& g) {
    return json{{"simplex_resolution", g.simplex_resolution},
                {"alpha_max", g.alpha_max},
                {"include_infinity", g.include_infinity},
                {"tie_tol", g.tie_tol}};
}

json to_json(const Check& c) {
    json alpha = json::array();
    for (double a : c.alpha) alpha.push_back(number_or_inf(a));
    json j{{"functional", to_string(c.functional)},
           {"alpha", alpha},
           {"C", c.C},
           {"P", number_or_inf(c.value_p)},
           {"Q", number_or_inf(c.value_q)},
           {"margin", number_or_inf(c.margin)},
           {"strict", c.strict}};
    if (!c.condition.empty()) j["condition"] = c.condition;
    return j;
}

json to_json(const CertReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    json j{{"certifier", r.certifier},
           {"regime", to_string(r.regime)},
           {"verdict", to_string(r.verdict)},
           {"asymptotic", r.asymptotic},
           {"certification", "grid"},
           {"log_base", "natural"},
           {"grid", to_json(r.grid)},
           {"checks", checks}};
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

namespace {

json witness_json(const StochasticMap& T, std::size_t max_dense) {
    if (T.rows() * T.cols() <= max_dense) return T.dense(max_dense);
    return json{{"rows", T.rows()}, {"cols", T.cols()}, {"core_rows", T.core_rows()}, {"core_cols", T.core_cols()},
                {"omitted", "dense form too large"}};
}

}  // namespace

json to_json(const FeasibilityResult& r, std::size_t max_dense) {
    json j{{"status", to_string(r.status)},
           {"residual", r.residual},
           {"variables", r.variables},
           {"pivots", r.pivots}};
    if (!r.message.empty()) j["message"] = r.message;
    j["witness"] = r.witness ? witness_json(*r.witness, max_dense) : json(nullptr);
    return j;
}

json to_json(const CatalystSearchResult& r, std::size_t max_dense) {
    json j{{"kind", to_string(r.kind)},
           {"checked_up_to", r.checked_up_to},
           {"residual", r.residual},
           {"n_found", r.n_found ? json(*r.n_found) : json(nullptr)}};
    if (!r.notice.empty()) j["notice"] = r.notice;
    j["witness"] = r.witness ? witness_json(*r.witness, max_dense) : json(nullptr);
    return j;
}

json to_json(const PowerUniversalReport& r) {
    json pairs = json::array();
    for (const auto& e : r.witness_pairs)
        pairs.push_back(json{{"k", e.k},
                             {"k2", e.k2},
                             {"row", e.row == kNoRow ? json(nullptr) : json(e.row)},
                             {"satisfied", e.satisfied}});
    return json{{"is_power_universal", r.is_power_universal}, {"regime", to_string(r.regime)}, {"witness_pairs", pairs}};
}

json to_json(const ThermalVerdict& v) {
    json margins = json::array();
    for (const auto& m : v.margins) {
        json e{{"alpha", number_or_inf(m.alpha)}, {"forward", number_or_inf(m.forward)}};
        if (m.backward) e["backward"] = number_or_inf(*m.backward);
        margins.push_back(e);
    }
    json j{{"answer", to_string(v.answer)},
           {"case", to_string(v.kind)},
           {"energy_shift", v.energy_shift},
           {"margins", margins},
           {"report", v.report ? to_json(*v.report) : json(nullptr)}};
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

}  // namespace majorize
