#include "zetabessel/report.hpp"

#include <fstream>
#include <sstream>

namespace zb {

namespace {

std::string dec(const hp& v, unsigned digits) { return to_decimal(v, digits); }

ordered_json complex_json(const hpc& z, unsigned digits) {
    ordered_json j;
    j["re"] = dec(z.re, digits);
    j["im"] = dec(z.im, digits);
    return j;
}

}  // namespace

ordered_json report_json(const VerificationReport& r) {
    const unsigned d = r.digits ? r.digits : 30;
    ordered_json j;
    j["id"] = r.case_.id;
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : r.case_.params) p[k] = v;
    j["params"] = p;
    if (!r.case_.notes.empty()) j["notes"] = r.case_.notes;
    j["lhs"] = complex_json(r.lhs, d);
    j["rhs"] = complex_json(r.rhs, d);
    j["abs_residual"] = dec(r.abs_residual, 6);
    j["rel_residual"] = dec(r.rel_residual, 6);
    j["lhs_tail"] = {{"bound", dec(r.lhs_tail.bound, 6)}, {"terms_used", std::to_string(r.lhs_tail.terms_used)}};
    j["rhs_tail"] = {{"bound", dec(r.rhs_tail.bound, 6)}, {"terms_used", std::to_string(r.rhs_tail.terms_used)}};
    j["tolerance"] = dec(r.tolerance, 6);
    j["near_zero"] = r.near_zero;
    j["pass"] = r.passed;
    j["runtime_ms"] = std::to_string(r.runtime_ms);
    j["digits"] = std::to_string(r.digits);
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

std::string csv_header() { return "id,rel_residual,pass"; }

std::string csv_row(const VerificationReport& r) {
    return r.case_.id + "," + dec(r.rel_residual, 6) + "," + (r.passed ? "true" : "false");
}

std::vector<IdentityCase> parse_grid(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("grid: ") + e.what());
    }
    if (!j.is_array()) throw DomainError("grid: expected a JSON array of parameter objects");
    std::vector<IdentityCase> out;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("id") || !item["id"].is_string())
            throw DomainError("grid: every entry needs a string \"id\"");
        IdentityCase c;
        c.id = item["id"].get<std::string>();
        for (const auto& [k, v] : item.items()) {
            if (k == "id") continue;
            if (k == "notes") {
                c.notes = v.is_string() ? v.get<std::string>() : v.dump();
                continue;
            }
            if (v.is_string()) c.params[k] = v.get<std::string>();
            else if (v.is_number()) c.params[k] = v.dump();
            else throw DomainError("grid: parameter '" + k + "' must be a string or number");
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<IdentityCase> load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("grid: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_grid(ss.str());
}

}  // namespace zb
