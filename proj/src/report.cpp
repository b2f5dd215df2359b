#include "szabolab/report.hpp"

#include <chrono>
#include <sstream>

#include "szabolab/verification.hpp"

namespace szabolab {

std::optional<Command> command_from_string(const std::string& name) {
    if (name == "check-cyclic") return Command::check_cyclic;
    if (name == "check-szabo") return Command::check_szabo;
    if (name == "extend") return Command::extend;
    if (name == "verify-paper") return Command::verify_paper;
    if (name == "full") return Command::full;
    return std::nullopt;
}

std::string to_string(Command cmd) {
    switch (cmd) {
        case Command::check_cyclic: return "check-cyclic";
        case Command::check_szabo: return "check-szabo";
        case Command::extend: return "extend";
        case Command::verify_paper: return "verify-paper";
        case Command::full: return "full";
    }
    return "?";
}

nlohmann::json connection_spec_to_json(const ConnectionSpec& spec) {
    nlohmann::json j;
    j["dim"] = spec.dim;
    j["variables"] = spec.variables;
    nlohmann::json funcs = nlohmann::json::array();
    for (const auto& f : spec.functions) funcs.push_back({{"name", f.name}, {"arg", f.arg}});
    j["functions"] = funcs;
    j["torsion_free"] = spec.torsion_free_declared;
    if (spec.declared_family) j["family"] = to_string(*spec.declared_family);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : spec.christoffels)
        entries.push_back({{"i", e.i}, {"j", e.j}, {"k", e.k}, {"expr", e.value.to_string()}});
    j["gamma"] = entries;
    return j;
}

nlohmann::json connection_to_json(const Connection& c) {
    nlohmann::json j;
    j["dim"] = c.dim();
    j["variables"] = c.chart().names;
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 1; i <= c.dim(); ++i)
        for (int jj = 1; jj <= c.dim(); ++jj)
            for (int k = 1; k <= c.dim(); ++k)
                if (!c.gamma(i, jj, k).is_zero())
                    entries.push_back(
                        {{"i", i}, {"j", jj}, {"k", k}, {"expr", c.gamma(i, jj, k).to_string()}});
    j["gamma"] = entries;
    return j;
}

nlohmann::json metric_to_json(const NeutralMetric& g) {
    nlohmann::json j;
    j["dim"] = g.dim();
    nlohmann::json entries = nlohmann::json::array();
    for (int a = 1; a <= g.dim(); ++a)
        for (int b = a; b <= g.dim(); ++b)
            if (!g.at(a, b).is_zero())
                entries.push_back({{"i", a}, {"j", b}, {"expr", g.at(a, b).to_string()}});
    j["g"] = entries;
    return j;
}

nlohmann::json szabo_verdict_to_json(const SzaboVerdict& v, std::optional<bool> trace_identity_ok) {
    nlohmann::json j;
    j["is_szabo"] = v.is_szabo;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Expr& c : v.poly.coeff) coeffs.push_back(c.to_string());
    j["char_poly"] = coeffs;
    if (v.failing_degree) {
        j["failing_coefficient"] = {{"degree", *v.failing_degree},
                                    {"expr", v.failing_coefficient.to_string()}};
    }
    j["notes"] = v.notes;
    if (trace_identity_ok) j["trace_identity_ok"] = *trace_identity_ok;
    return j;
}

nlohmann::json cyclic_verdict_to_json(const CyclicVerdict& v) {
    nlohmann::json j;
    j["verdict"] = v.cyclic_parallel;
    if (v.witness_indices) {
        j["witness"] = {{"i", (*v.witness_indices)[0]},
                        {"j", (*v.witness_indices)[1]},
                        {"k", (*v.witness_indices)[2]},
                        {"expr", v.witness.to_string()}};
    }
    return j;
}

namespace {

constexpr int kMaxCliDim = 4;

void add_cyclic_section(nlohmann::json& body, const Connection& conn) {
    body["cyclic_parallel"] = cyclic_verdict_to_json(is_cyclic_parallel(conn));
}

void add_szabo_section(nlohmann::json& body, const Connection& conn) {
    const SzaboMatrix s = szabo_operator(conn);
    const SzaboVerdict v = verdict_from(char_poly(s));
    const bool trace_ok = s.trace() == cyclic_cubic(conn);
    body["szabo"] = szabo_verdict_to_json(v, trace_ok);
}

void add_extension_section(nlohmann::json& body, const Connection& conn, bool& failure) {
    const NeutralMetric g = riemannian_extension(conn);
    nlohmann::json ext;
    ext["metric"] = metric_to_json(g);

    const Connection koszul = levi_civita_koszul(g);
    const Connection closed = levi_civita_closed_form(conn);
    bool routes_agree = true;
    for (int a = 1; a <= g.dim() && routes_agree; ++a)
        for (int b = 1; b <= g.dim() && routes_agree; ++b)
            for (int c = 1; c <= g.dim(); ++c)
                if (!(koszul.gamma(a, b, c) == closed.gamma(a, b, c))) {
                    routes_agree = false;
                    break;
                }
    const bool compatible = is_metric_compatible(koszul, g);
    const bool curvature_ok = check_extension_curvature_identities(conn).ok();
    const BlockReport block = check_block_structure(conn);
    ext["levi_civita_routes_agree"] = routes_agree;
    ext["metric_compatible"] = compatible;
    ext["curvature_identities_ok"] = curvature_ok;
    ext["block"] = {{"upper_right_zero", block.upper_right_zero},
                    {"base_block_matches", block.base_block_matches},
                    {"transpose_block_matches", block.transpose_block_matches},
                    {"factorization_holds", block.factorization_holds}};
    ext["szabo"] = szabo_verdict_to_json(is_affine_szabo(koszul), std::nullopt);
    body["extension"] = ext;
    if (!routes_agree || !compatible || !curvature_ok || !block.ok()) failure = true;
}

Report run_verify_paper(const Options& opt) {
    Report report;
    report.body["command"] = to_string(Command::verify_paper);
    report.body["seed"] = opt.seed;
    report.body["samples"] = opt.samples;
    nlohmann::json checks = nlohmann::json::array();
    int failures = 0;
    for (const CheckResult& r : run_verification_suite(opt.seed, opt.samples)) {
        nlohmann::json c;
        c["name"] = r.name;
        c["pass"] = r.pass;
        if (!r.detail.empty()) c["detail"] = r.detail;
        if (opt.include_timings) c["seconds"] = r.seconds;
        checks.push_back(c);
        if (!r.pass) ++failures;
    }
    report.body["checks"] = checks;
    nlohmann::json info = nlohmann::json::array();
    for (const EntryCrosscheck& c : reference_entry_crosscheck())
        info.push_back({{"entry", c.label}, {"matches_reference_table", c.matches}});
    report.body["informational"] = info;
    report.body["failures"] = failures;
    report.body["ok"] = failures == 0;
    report.any_failure = failures != 0;
    return report;
}

}  // namespace

Report run(Command cmd, const std::optional<ConnectionSpec>& spec, const Options& opt) {
    if (cmd == Command::verify_paper) return run_verify_paper(opt);

    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.body["command"] = to_string(cmd);
    if (!spec) {
        report.body["error"] = "this command needs a connection file";
        report.any_failure = true;
        return report;
    }
    report.body["input"] = connection_spec_to_json(*spec);
    try {
        if (spec->dim > kMaxCliDim)
            throw Error("chart dimension is capped at " + std::to_string(kMaxCliDim) +
                        " on the command line");
        const Connection conn = spec->to_connection();
        report.body["connection"] = connection_to_json(conn);
        const bool torsion_free = is_torsion_free(conn);
        report.body["torsion_free"] = torsion_free;

        if (cmd == Command::check_cyclic || cmd == Command::check_szabo || cmd == Command::full)
            add_cyclic_section(report.body, conn);
        if (cmd == Command::check_szabo || cmd == Command::full)
            add_szabo_section(report.body, conn);
        if (cmd == Command::extend || cmd == Command::full)
            add_extension_section(report.body, conn, report.any_failure);
    } catch (const std::exception& e) {
        report.body["error"] = e.what();
        report.any_failure = true;
    }
    if (opt.include_timings) {
        report.body["seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return report;
}

std::string json_string(const Report& report) { return report.body.dump(2) + "\n"; }

namespace {

void render(const nlohmann::json& j, const std::string& indent, std::ostringstream& out) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const nlohmann::json& v = it.value();
        if (v.is_object()) {
            out << indent << it.key() << ":\n";
            render(v, indent + "  ", out);
        } else if (v.is_array()) {
            out << indent << it.key() << ":";
            bool scalars = true;
            for (const auto& e : v)
                if (e.is_object() || e.is_array()) scalars = false;
            if (scalars) {
                for (const auto& e : v) out << " " << (e.is_string() ? e.get<std::string>() : e.dump());
                out << "\n";
            } else {
                out << "\n";
                for (const auto& e : v) {
                    out << indent << "  -\n";
                    render(e, indent + "    ", out);
                }
            }
        } else if (v.is_string()) {
            out << indent << it.key() << ": " << v.get<std::string>() << "\n";
        } else {
            out << indent << it.key() << ": " << v.dump() << "\n";
        }
    }
}

}  // namespace

std::string text_string(const Report& report) {
    std::ostringstream out;
    render(report.body, "", out);
    return out.str();
}

}  // namespace szabolab
