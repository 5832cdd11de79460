/**
 * @file cli.hpp
 * @brief Command-line front end: parse, resolve, split, build the bimodule
 * resolution and report verdicts.
 *
 * Exit codes: 0 success, 1 a check failed or the algebra is not Koszul (the
 * JSON report then carries the witness), 2 bad input or flags, 3 resource
 * limit reached.
 */
#pragma once

#include "bimodule.hpp"
#include "comult.hpp"
#include "presentation.hpp"
#include "report.hpp"
#include "resolution.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace koszul::cli {

enum ExitCode : int { ok = 0, check_failed = 1, bad_input = 2, resource_limit = 3 };

struct RunConfig {
    std::string command;
    std::string input;
    std::size_t levels = 6;
    std::optional<std::size_t> degree;
    std::optional<std::string> field;
    std::string json_out;
    std::vector<std::string> checks;
    std::size_t max_dimension = Limits{}.max_dimension;

    std::size_t degree_bound() const { return degree.value_or(levels + 2); }
    bool wants(const std::string& check) const {
        for (const auto& c : checks)
            if (c == check || c == "all") return true;
        return false;
    }
};

inline FieldSpec parse_field_flag(const std::string& s) {
    if (s == "Q") return FieldSpec::rationals();
    static const std::regex gf(R"(GF\((\d{1,10})\))");
    std::smatch m;
    if (!std::regex_match(s, m, gf)) throw std::invalid_argument("unknown field '" + s + "' (expected Q or GF(p))");
    return FieldSpec::prime(std::stoull(m[1].str()));
}

namespace detail {

struct Outcome {
    json report = json::object();
    bool failed = false;
};

inline void record(Outcome& o, const std::string& name, bool pass, const std::string& witness) {
    o.report["verdicts"][name] = check_json(pass, witness);
    o.failed = o.failed || !pass;
}

template <Field K>
json meta(const RunConfig& cfg, const Presentation<K>& p) {
    return {{"command", cfg.command},
            {"levels", cfg.levels},
            {"degree", cfg.degree_bound()},
            {"presentation", to_json(p)}};
}

template <Field K>
void print_betti(std::ostream& out, const ResolutionData<K>& data) {
    out << "betti:";
    for (auto b : data.betti()) out << ' ' << b;
    out << '\n';
}

template <Field K>
void run_comult_checks(Outcome& o, const ComultTable<K>& table, const ResolutionData<K>& data, std::ostream& out) {
    auto recon = reconstruction_failures(table, data);
    auto support = support_violations(table, data);
    auto identity = verify_h_identity(table, data);
    auto key_text = [](const ComultKey& k) {
        return "(n=" + std::to_string(k.n) + ", i=" + std::to_string(k.i) + ", r=" + std::to_string(k.r) + ")";
    };
    record(o, "comult_reconstruction", recon.empty(), recon.empty() ? "" : "entry " + key_text(recon.front()));
    record(o, "comult_support", support.empty(), support.empty() ? "" : "entry " + key_text(support.front()));
    std::string id_witness;
    if (!identity.holds) {
        const auto& f = identity.failures.front();
        id_witness = "h mismatch at (n=" + std::to_string(f[0]) + ", i=" + std::to_string(f[1]) +
                     ", j=" + std::to_string(f[2]) + ")";
    }
    record(o, "h_identity", identity.holds, id_witness);
    out << "comult: " << table.entries.size() << " entries, reconstruction " << (recon.empty() ? "ok" : "FAILED")
        << ", h identity " << (identity.holds ? "ok" : "FAILED") << " (" << identity.checked << " entries)\n";
}

template <Field K>
void run_bimodule_checks(Outcome& o, const RunConfig& cfg, const Presentation<K>& p, const ResolutionData<K>& data,
                         const ComultTable<K>& table, const Limits& limits, std::ostream& out) {
    const std::size_t N = cfg.levels, D = cfg.degree_bound();
    auto res = build_bimodule_resolution(table, data, N);
    o.report["bimodule"] = to_json(res);

    auto lin = check_linear_over_enveloping(res);
    record(o, "linear_over_enveloping", lin.linear, lin.witness);
    out << "bimodule: linear over the enveloping algebra: " << (lin.linear ? "yes" : "no") << '\n';
    if (cfg.wants("square")) {
        auto sq = verify_delta_squared(res, p);
        record(o, "delta_squared", sq.holds, sq.witness);
        out << "bimodule: delta^2 = 0 through level " << N << ": " << (sq.holds ? "ok" : "FAILED " + sq.witness) << '\n';
    }
    if (cfg.wants("tensor")) {
        auto right = check_tensor_down_right(res, data);
        auto left = check_tensor_down_left(res, build_left_resolution(table, data));
        auto signs = [](const std::vector<int>& s) {
            json j = json::array();
            for (std::size_t n = 1; n < s.size(); ++n) j.push_back(s[n]);
            return j;
        };
        record(o, "tensor_down_right", right.holds, right.witness);
        record(o, "tensor_down_left", left.holds, left.witness);
        o.report["verdicts"]["tensor_down_right"]["signs"] = signs(right.signs);
        o.report["verdicts"]["tensor_down_left"]["signs"] = signs(left.signs);
        out << "bimodule: tensor-down right " << (right.holds ? "ok" : "FAILED") << ", left "
            << (left.holds ? "ok" : "FAILED") << '\n';
    }
    if (cfg.wants("left")) {
        auto lv = verify_left_resolution(p, N, D, limits);
        record(o, "left_resolution", lv.pass, lv.witness);
        out << "left resolution: " << (lv.pass ? "agrees with the right side" : "FAILED " + lv.witness) << '\n';
    }
    if (cfg.wants("exact")) {
        auto big = build_bimodule_resolution(table, data, N + 1);
        GradedQuotient<K> quot(p, D, limits);
        auto h = bimodule_homology(quot, big, N, D);
        std::string witness;
        if (auto bad = h.first_nonzero())
            witness = "homology of dimension " + std::to_string(bad->second) + " at (n=" +
                      std::to_string(bad->first.first) + ", d=" + std::to_string(bad->first.second) + ")";
        record(o, "bimodule_exact", h.all_zero(), witness);
        out << "bimodule: exact up to (" << N << "," << D << "): " << (h.all_zero() ? "yes" : "no " + witness) << '\n';
    }
}

template <Field K>
Outcome execute(const RunConfig& cfg, const Presentation<K>& p, const Limits& limits, std::ostream& out) {
    Outcome o;
    const std::size_t N = cfg.levels, D = cfg.degree_bound();
    o.report["meta"] = meta(cfg, p);
    for (const auto& d : validate_presentation(p))
        out << (d.severity == Diagnostic::Severity::warning ? "warning: " : "info: ") << d.message << '\n';

    auto [reduced, nonquadratic] = minimal_relations(p, limits);
    if (nonquadratic) {
        auto v = certify_koszul_up_to(p, N, D, limits);
        o.report["verdicts"]["koszul"] = to_json(v);
        o.failed = true;
        out << v.describe() << '\n';
        return o;
    }

    auto data = compute_resolution(reduced, N + 1, limits);
    auto shown = data;
    shown.levels.resize(N + 1);

    if (cfg.command == "resolve" || cfg.command == "report") {
        o.report["levels"] = levels_to_json(shown);
        o.report["verdicts"]["betti"] = shown.betti();
        print_betti(out, shown);
    }
    if (cfg.command == "comult" || cfg.command == "report") {
        auto table = comult_table(shown, N);
        o.report["comult"] = comult_entries_to_json(p.field, table);
        run_comult_checks(o, table, shown, out);
    }
    if (cfg.command == "bimodule" || cfg.command == "report") {
        auto table = comult_table(data, N + 1);
        run_bimodule_checks(o, cfg, reduced, data, table, limits, out);
    }
    if (cfg.command == "check-koszul" || cfg.command == "report") {
        auto v = certify_koszul_up_to(reduced, N, D, limits);
        o.report["verdicts"]["koszul"] = to_json(v);
        o.report["verdicts"]["homology"] = to_json(homology_dimensions(data, N, D, limits));
        o.failed = o.failed || !v.koszul();
        out << v.describe() << '\n';
    }
    return o;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_report(const std::string& path, const json& report, std::ostream& out) {
    if (path.empty()) return;
    if (path == "-") {
        out << dump(report);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + path);
    f << dump(report);
}

}  // namespace detail

/// Runs with already-parsed options.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.levels < 2) throw std::invalid_argument("--levels must be at least 2");
        if (cfg.degree_bound() < cfg.levels) throw std::invalid_argument("--degree must be at least --levels");
        static const std::set<std::string> known{"square", "tensor", "exact", "left", "all"};
        for (const auto& c : cfg.checks)
            if (!known.count(c)) throw std::invalid_argument("unknown check '" + c + "'");
        Limits limits;
        limits.max_dimension = cfg.max_dimension;
        if (cfg.levels + 1 > limits.max_level)
            throw resource_limit_error("--levels " + std::to_string(cfg.levels) + " exceeds the level limit");

        auto raw = parse_raw_presentation(detail::read_file(cfg.input));
        const FieldSpec spec = cfg.field ? parse_field_flag(*cfg.field) : raw.field;
        // With the report on stdout, the human-readable summary moves to stderr.
        std::ostream& summary = cfg.json_out == "-" ? err : out;
        auto outcome = visit_field(spec, [&](const auto& field) {
            return detail::execute(cfg, instantiate(raw, field), limits, summary);
        });
        detail::write_report(cfg.json_out, outcome.report, out);
        return outcome.failed ? check_failed : ok;
    } catch (const resource_limit_error& e) {
        err << "resource limit: " << e.what() << '\n';
        return resource_limit;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    }
}

/// argv-style entry point; args[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Resolutions and Koszulity checks for quadratic path algebras"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.checks = {"square", "tensor", "left"};
    std::vector<std::string> checks;
    std::size_t degree = 0;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"resolve", "minimal linear resolution of the vertex simples and its Betti numbers"},
        {"comult", "comultiplicative constants and the differential identity"},
        {"bimodule", "bimodule resolution with the selected checks"},
        {"check-koszul", "bounded Koszulity verdict with a witness on failure"},
        {"report", "everything above in one JSON report"}};
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", cfg.input, "presentation file")->required();
        sub->add_option("--levels,-N", cfg.levels, "highest homological level")->capture_default_str();
        sub->add_option("--degree,-D", degree, "internal degree bound (default levels+2)");
        sub->add_option("--field", cfg.field, "override the field: Q or GF(p)");
        sub->add_option("--json", cfg.json_out, "write the JSON report here ('-' for stdout)");
        sub->add_option("--checks", checks, "square, tensor, exact, left or all")->delimiter(',');
        sub->add_option("--max-dim", cfg.max_dimension, "largest coordinate space per step")->capture_default_str();
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (degree > 0) cfg.degree = degree;
    if (!checks.empty()) cfg.checks = checks;
    return run(cfg, out, err);
}

inline int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace koszul::cli
